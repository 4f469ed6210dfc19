use thiserror::Error;

/// Errors raised by the sequence, counting, search and bound routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("output length {output} exceeds input length {input}")]
    LengthViolation { input: usize, output: usize },

    #[error("{what} = {value} exceeds the supported maximum of {max}")]
    CapExceeded {
        what: &'static str,
        value: usize,
        max: usize,
    },

    #[error("{name} = {value} is outside the domain {domain}")]
    Domain {
        name: &'static str,
        value: f64,
        domain: &'static str,
    },

    #[error("invalid binary string {0:?}: expected only '0' and '1'")]
    Parse(String),

    #[error("exact integer overflow while computing {0}")]
    Overflow(&'static str),

    #[error("typical output length is zero for n = {n}, d = {d}")]
    DegenerateLength { n: usize, d: f64 },

    #[error("{0}")]
    Invalid(String),

    #[error("{0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_probability(name: &'static str, value: f64) -> Result<()> {
    if (0.0..=1.0).contains(&value) {
        Ok(())
    } else {
        Err(Error::Domain {
            name,
            value,
            domain: "[0, 1]",
        })
    }
}

pub(crate) fn check_open_probability(name: &'static str, value: f64) -> Result<()> {
    if value > 0.0 && value < 1.0 {
        Ok(())
    } else {
        Err(Error::Domain {
            name,
            value,
            domain: "(0, 1)",
        })
    }
}
