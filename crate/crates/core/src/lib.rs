//! Maximum-likelihood upper bounds on the capacity of binary channels, with
//! exact deletion-pattern counting and a Blahut-Arimoto baseline for the
//! binary deletion channel.

pub mod baa;
pub mod bitseq;
pub mod bounds;
pub mod combin;
pub mod error;
pub mod mdm;
pub mod patcount;

pub use bitseq::{BinarySequence, RunLengthProfile};
pub use error::{Error, Result};
pub use mdm::{Approach, MdmResult, MdmTable};
pub use patcount::{count_deletion_patterns, count_deletion_patterns_oracle, PatternCount};
