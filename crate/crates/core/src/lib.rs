//! Exact verification of R-matrix identities, RTT algebra relations,
//! similarity transformations and singular limits for hybrid
//! `(q,h)`-deformations of `GL(2)` and `GL(1|1)`.

pub mod catalog;
pub mod error;
pub mod field;
pub mod freealg;
pub mod limits;
pub mod linalg;
pub mod repcheck;
pub mod suite;
pub mod ybe;

pub use error::{Error, Result};
pub use field::{parse_expr, Polynomial, RatFunc, Symbol};
pub use freealg::{GenOrder, NCPoly, Word};
pub use limits::LimitPath;
pub use linalg::{MatRF, MatrixJson, Orientation};
pub use suite::{CheckResult, Status, SuiteConfig};
pub use ybe::GaugeReport;
