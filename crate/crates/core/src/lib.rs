//! Exact enumeration of simultaneous `(n, n+1)`-core partitions whose
//! smallest part and consecutive part differences lie in a set `M`.
//!
//! * [`partitions`]: partitions, hook lengths, generic core predicates.
//! * [`abacus`]: the abacus-function bijection and what can be read off it.
//! * [`diffset`]: the restriction sets `M` and their text form.
//! * [`series`]: truncated power series with exact coefficients.
//! * [`counting`]: recurrence, generating functions, closed forms, totals and
//!   the brute-force oracle.
//! * [`oddeven`]: all-odd versus all-even cores.
//! * [`oeis`]: matching count prefixes against known sequences.
//! * [`verify`]: named cross-check suites.

pub mod abacus;
pub mod counting;
pub mod diffset;
pub mod error;
pub mod oddeven;
pub mod oeis;
pub mod partitions;
pub mod series;
pub mod verify;

pub use abacus::{AbacusFunction, Statistics, Variant};
pub use counting::{CountReport, Method, Totals};
pub use diffset::DiffSet;
pub use error::{AbacusError, CountError, DiffSetError, OddEvenError, OeisError, PartitionError, SeriesError};
pub use partitions::Partition;
pub use series::PowerSeries;
