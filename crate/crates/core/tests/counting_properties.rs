use mlcap_core::combin::binomial;
use mlcap_core::patcount::{pattern_weight, transition_probability};
use mlcap_core::{count_deletion_patterns as count, count_deletion_patterns_oracle as oracle, BinarySequence};
use proptest::prelude::*;

fn seq(max_len: usize) -> impl Strategy<Value = BinarySequence> {
    (0..=max_len).prop_flat_map(|len| {
        let mask = if len == 0 { 0 } else { u64::MAX >> (64 - len) };
        (0..=mask).prop_map(move |bits| BinarySequence::new(bits, len).unwrap())
    })
}

fn pair(max_len: usize) -> impl Strategy<Value = (BinarySequence, BinarySequence)> {
    (seq(max_len), seq(max_len)).prop_map(|(a, b)| if a.len() >= b.len() { (a, b) } else { (b, a) })
}

proptest! {
    #[test]
    fn dp_matches_oracle((x, y) in pair(18)) {
        prop_assert_eq!(count(x, y).unwrap(), oracle(x, y).unwrap());
    }

    #[test]
    fn symmetric_under_complement_and_reversal((x, y) in pair(20)) {
        let c = count(x, y).unwrap();
        prop_assert_eq!(count(x.complement(), y.complement()).unwrap(), c);
        prop_assert_eq!(count(x.reverse(), y.reverse()).unwrap(), c);
    }

    #[test]
    fn bounded_by_binomial((x, y) in pair(40)) {
        let c = count(x, y).unwrap().value();
        prop_assert!(c <= binomial(x.len() as u64, y.len() as u64).unwrap());
    }

    #[test]
    fn appending_a_symbol_never_loses_embeddings((x, y) in pair(30), bit in any::<bool>()) {
        prop_assume!(x.len() < 63);
        let longer = BinarySequence::from_runs(&[(bit, 1)]).unwrap();
        let xs = format!("{x}{longer}").parse::<BinarySequence>().unwrap();
        prop_assert!(count(xs, y).unwrap() >= count(x, y).unwrap());
    }

    #[test]
    fn outputs_of_each_length_account_for_every_pattern(x in seq(12)) {
        let n = x.len();
        for m in 0..=n {
            let total: u64 = BinarySequence::all_of_length(m)
                .unwrap()
                .map(|y| count(x, y).unwrap().value())
                .sum();
            prop_assert_eq!(total, binomial(n as u64, m as u64).unwrap());
        }
    }

    #[test]
    fn transition_probabilities_sum_to_one(x in seq(10), d in 0.01f64..0.99) {
        let n = x.len();
        let mut total = 0.0;
        for m in 0..=n {
            for y in BinarySequence::all_of_length(m).unwrap() {
                total += transition_probability(x, y, d).unwrap();
            }
        }
        prop_assert!((total - 1.0).abs() < 1e-12);
    }
}

#[test]
fn oracle_agrees_on_every_pair_up_to_length_seven() {
    for n in 0..=7 {
        for x in BinarySequence::all_of_length(n).unwrap() {
            for m in 0..=n {
                for y in BinarySequence::all_of_length(m).unwrap() {
                    assert_eq!(count(x, y).unwrap(), oracle(x, y).unwrap(), "{x} / {y}");
                }
            }
        }
    }
}

#[test]
fn pattern_weight_edges() {
    assert_eq!(pattern_weight(5, 5, 0.0), 1.0);
    assert_eq!(pattern_weight(5, 0, 1.0), 1.0);
    assert!((pattern_weight(3, 1, 0.5) - 0.125).abs() < 1e-15);
}
