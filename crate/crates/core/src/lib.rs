//! Codes over the alphabet `{0, ..., q-1}` against asymmetric and
//! unidirectional errors of limited magnitude `ell`: every symbol moves by at
//! most `ell`, all upward (asymmetric) or all in one direction
//! (unidirectional).
//!
//! - [`aec`]: optimal codes correcting asymmetric errors.
//! - [`uec`]: constructions correcting unidirectional errors.
//! - [`vt`]: codes defined by one integer linear equation, with exact counts.
//! - [`ued`]: codes detecting unidirectional errors.
//! - [`oracle`]: exhaustive ground truth for small parameters.

pub mod aec;
pub mod channel;
pub mod code;
pub mod distance;
pub mod error;
pub mod format;
pub mod oracle;
pub mod poly;
pub mod uec;
pub mod ued;
pub mod vt;

pub use channel::{ChannelMode, Direction, ErrorVector};
pub use code::{AllWords, CodeMode, CodeParams, Codebook, Symbol, Word};
pub use error::{Error, Result};
pub use poly::CountTable;
