//! Command bodies. Each returns its output as a string so the caller decides
//! where it goes; all floating-point output uses fixed precision so repeated
//! runs are byte-identical.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use mlcap_core::baa::{baa_capacity, BaaReport};
use mlcap_core::bounds::{
    bdc_dup_bound_n, bdc_ml_bound_from_table, bec_bound, bec_finite_n_check, bsc_bound, bsc_finite_n_check,
    explicit_approx, explicit_approx_in_regime, reference_golden_bound, trivial_bound, typical_output_length,
    BoundKind, BoundPoint, DGrid,
};
use mlcap_core::mdm::{hypothesis_report, mdm_table, mdm_table_checkpointed, DupEstimate, MdmTable};
use mlcap_core::{count_deletion_patterns, count_deletion_patterns_oracle, Approach, BinarySequence};

use crate::error::{CliError, CliResult};

pub const MDM_HEADER: &str = "y,x_star,max_count,x_dup,dup_count,ratio";
pub const BOUNDS_HEADER: &str = "d,kind,n,value";
pub const HYPOTHESES_HEADER: &str =
    "n,factor,minimizer,gamma,log_gamma_per_symbol,minimizer_is_alternating,flip_attains_min,stirling_lower_bound,stirling_holds";

fn parse_seq(name: &str, s: &str) -> CliResult<BinarySequence> {
    s.parse()
        .map_err(|e| CliError::Usage(format!("{name}: {e}")))
}

/// `#(x, y)`, plus the oracle value when `verify` is set.
pub fn count(x: &str, y: &str, verify: bool) -> CliResult<String> {
    let x = parse_seq("x", x)?;
    let y = parse_seq("y", y)?;
    let c = count_deletion_patterns(x, y)?;
    let mut out = format!("{c}\n");
    if verify {
        let o = count_deletion_patterns_oracle(x, y)?;
        let verdict = if o == c { "agrees" } else { "disagrees" };
        writeln!(out, "oracle {o} {verdict}").unwrap();
    }
    Ok(out)
}

fn dup_columns(dup: &DupEstimate) -> (String, String) {
    match dup {
        DupEstimate::Sequence { x_dup, count } => (x_dup.to_string(), count.to_string()),
        DupEstimate::Gamma(v) => (String::new(), format!("{v:.6}")),
    }
}

/// CSV rows for every `y`, sorted by numeral.
pub fn mdm_table_csv(table: &MdmTable) -> CliResult<String> {
    let mut out = String::with_capacity(64 << table.m);
    out.push_str(MDM_HEADER);
    out.push('\n');
    for r in table.expanded()? {
        let (x_dup, dup_count) = dup_columns(&r.dup);
        writeln!(
            out,
            "{},{},{},{},{},{:.5}",
            r.y, r.x_star, r.max_count, x_dup, dup_count, r.ratio
        )
        .unwrap();
    }
    Ok(out)
}

pub fn mdm_table_command(n: usize, m: usize, approach: Approach, checkpoint: Option<&Path>) -> CliResult<String> {
    let table = match checkpoint {
        Some(path) => mdm_table_checkpointed(n, m, approach, path)?,
        None => mdm_table(n, m, true, approach)?,
    };
    mdm_table_csv(&table)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Channel {
    Bec,
    Bsc,
    Bdc,
}

impl std::str::FromStr for Channel {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "bec" => Ok(Channel::Bec),
            "bsc" => Ok(Channel::Bsc),
            "bdc" => Ok(Channel::Bdc),
            _ => Err(format!("unknown channel {s:?}; expected bec, bsc or bdc")),
        }
    }
}

/// Kinds emitted for the deletion channel when none are requested.
pub fn default_bdc_kinds() -> Vec<BoundKind> {
    vec![
        BoundKind::BdcMlRaw,
        BoundKind::BdcMlAdjusted,
        BoundKind::BdcDupApprox(Approach::AssignToLast),
        BoundKind::BdcDupApprox(Approach::AssignByLength),
        BoundKind::BdcDupApprox(Approach::GammaFunction),
        BoundKind::ExplicitApprox,
        BoundKind::TrivialOneMinusD,
        BoundKind::ReferenceGolden,
    ]
}

pub fn parse_kinds(list: &str) -> CliResult<Vec<BoundKind>> {
    list.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<BoundKind>().map_err(CliError::from))
        .collect()
}

/// Settings for the Blahut-Arimoto kinds in a bounds run.
#[derive(Debug, Clone, Copy)]
pub struct BaaSettings {
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for BaaSettings {
    fn default() -> Self {
        BaaSettings {
            tol: 1e-9,
            max_iter: 100_000,
        }
    }
}

/// Evaluated bound points for one channel, in `(d, kind)` order, and any
/// warnings produced along the way.
pub fn bound_points(
    channel: Channel,
    n: usize,
    grid: &DGrid,
    kinds: &[BoundKind],
    baa: BaaSettings,
) -> CliResult<(Vec<BoundPoint>, Vec<String>)> {
    let mut points = Vec::new();
    let mut warnings = Vec::new();
    let ds = grid.points();
    match channel {
        Channel::Bec | Channel::Bsc => {
            let kind = if channel == Channel::Bec {
                BoundKind::BecClosed
            } else {
                BoundKind::BscClosed
            };
            for &d in &ds {
                let value = match (channel, n) {
                    (Channel::Bec, 0) => bec_bound(d)?,
                    (Channel::Bec, _) => bec_finite_n_check(n, d)?,
                    (_, 0) => bsc_bound(d)?,
                    _ => bsc_finite_n_check(n, d)?,
                };
                points.push(BoundPoint { d, n, value, kind });
            }
        }
        Channel::Bdc => {
            let needs_n = kinds.iter().any(|k| {
                matches!(
                    k,
                    BoundKind::BdcMlRaw
                        | BoundKind::BdcMlAdjusted
                        | BoundKind::BdcDupApprox(_)
                        | BoundKind::BaaProxy
                        | BoundKind::DobrushinLower
                )
            });
            if needs_n && n == 0 {
                return Err(CliError::Usage("finite-n deletion bounds need --n".into()));
            }
            let mut tables: BTreeMap<usize, MdmTable> = BTreeMap::new();
            let mut baa_runs: BTreeMap<u64, BaaReport> = BTreeMap::new();
            for &d in &ds {
                for &kind in kinds {
                    let (value, at_n) = match kind {
                        BoundKind::BdcMlRaw | BoundKind::BdcMlAdjusted => {
                            let m = typical_output_length(n, d);
                            if m == 0 {
                                return Err(mlcap_core::Error::DegenerateLength { n, d }.into());
                            }
                            if let std::collections::btree_map::Entry::Vacant(e) = tables.entry(m) {
                                e.insert(mdm_table(n, m, true, Approach::default())?);
                            }
                            let b = bdc_ml_bound_from_table(&tables[&m], d)?;
                            let v = if kind == BoundKind::BdcMlRaw { b.raw } else { b.adjusted };
                            (v, n)
                        }
                        BoundKind::BdcDupApprox(a) => (bdc_dup_bound_n(n, d, a)?, n),
                        BoundKind::ExplicitApprox => {
                            if !explicit_approx_in_regime(d) {
                                warnings.push(format!(
                                    "explicit approximation evaluated at d = {d} outside [0.5, 1)"
                                ));
                            }
                            (explicit_approx(d)?, 0)
                        }
                        BoundKind::ReferenceGolden => (reference_golden_bound(d)?, 0),
                        BoundKind::TrivialOneMinusD => (trivial_bound(d)?, 0),
                        BoundKind::BaaProxy | BoundKind::DobrushinLower => {
                            let key = d.to_bits();
                            if let std::collections::btree_map::Entry::Vacant(e) = baa_runs.entry(key) {
                                let r = baa_capacity(n, d, baa.tol, baa.max_iter)?;
                                if !r.converged {
                                    warnings.push(format!(
                                        "Blahut-Arimoto at n = {n}, d = {d} stopped after {} iterations with gap {:.3e}",
                                        r.iterations,
                                        r.upper_estimate - r.capacity_proxy
                                    ));
                                }
                                e.insert(r);
                            }
                            let r = &baa_runs[&key];
                            let v = if kind == BoundKind::BaaProxy {
                                r.sandwich.1
                            } else {
                                r.sandwich.0
                            };
                            (v, n)
                        }
                        BoundKind::BecClosed => (bec_bound(d)?, 0),
                        BoundKind::BscClosed => (bsc_bound(d)?, 0),
                    };
                    points.push(BoundPoint {
                        d,
                        n: at_n,
                        value,
                        kind,
                    });
                }
            }
            if kinds.contains(&BoundKind::ExplicitApprox) {
                warnings.push(
                    "explicit values are conditional on the duplication-ratio tightness conjecture".into(),
                );
            }
        }
    }
    Ok((points, warnings))
}

pub fn bounds_csv(points: &[BoundPoint]) -> String {
    let mut out = String::new();
    out.push_str(BOUNDS_HEADER);
    out.push('\n');
    for p in points {
        writeln!(out, "{:.6},{},{},{:.6}", p.d, p.kind, p.n, p.value).unwrap();
    }
    out
}

/// A gnuplot script that plots every kind found in `points` from `csv_path`.
pub fn gnuplot_script(csv_path: &str, points: &[BoundPoint]) -> String {
    let mut kinds: Vec<String> = Vec::new();
    for p in points {
        let k = p.kind.to_string();
        if !kinds.contains(&k) {
            kinds.push(k);
        }
    }
    let mut out = String::new();
    out.push_str("set datafile separator ','\n");
    out.push_str("set key outside right\n");
    out.push_str("set xlabel 'd'\n");
    out.push_str("set ylabel 'bits per symbol'\n");
    out.push_str("set yrange [0:*]\n");
    let series: Vec<String> = kinds
        .iter()
        .map(|k| {
            format!(
                "'{csv_path}' every ::1 using 1:(strcol(2) eq '{k}' ? $4 : 1/0) with linespoints title '{k}'"
            )
        })
        .collect();
    writeln!(out, "plot {}", series.join(", \\\n     ")).unwrap();
    out
}

/// Human-readable Blahut-Arimoto summary.
pub fn baa_text(r: &BaaReport) -> String {
    let mut out = String::new();
    writeln!(out, "n: {}", r.n).unwrap();
    writeln!(out, "d: {}", r.d).unwrap();
    writeln!(out, "capacity proxy: {:.5} bits/symbol", r.capacity_proxy).unwrap();
    writeln!(out, "upper estimate: {:.5} bits/symbol", r.upper_estimate).unwrap();
    writeln!(out, "iterations: {}", r.iterations).unwrap();
    writeln!(out, "converged: {}", if r.converged { "yes" } else { "no" }).unwrap();
    writeln!(out, "kkt residual: {:.3e}", r.kkt_residual).unwrap();
    writeln!(out, "sandwich: ({:.5}, {:.5})", r.sandwich.0, r.sandwich.1).unwrap();
    if r.sandwich.0 < 0.0 {
        out.push_str("note: the lower end of the sandwich is negative at this block length\n");
    }
    let drop = r.history.windows(2).map(|w| w[0] - w[1]).fold(0.0f64, f64::max);
    writeln!(out, "largest history decrease: {drop:.1e}").unwrap();
    out
}

pub fn baa_history_csv(r: &BaaReport) -> String {
    let mut out = String::from("iteration,mutual_information\n");
    for (i, v) in r.history.iter().enumerate() {
        writeln!(out, "{i},{v:.15}").unwrap();
    }
    out
}

pub fn hypotheses_csv(ns: &[usize], factor: usize) -> CliResult<String> {
    let mut out = String::new();
    out.push_str(HYPOTHESES_HEADER);
    out.push('\n');
    for &n in ns {
        let r = hypothesis_report(n, factor)?;
        writeln!(
            out,
            "{},{},{},{:.5},{:.6},{},{},{:.6},{}",
            r.n,
            r.factor,
            r.minimizer,
            r.gamma,
            r.log_gamma_per_symbol,
            r.minimizer_is_alternating,
            r.flip_attains_min,
            r.stirling_lower_bound,
            r.stirling_holds
        )
        .unwrap();
    }
    Ok(out)
}
