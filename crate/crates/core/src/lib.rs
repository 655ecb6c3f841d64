//! Finite-model verification for frame-valued topology: finite frames,
//! stratified L-topologies, open filters and their monad, L-orders, the
//! L-valued Scott topology and L-continuous lattices.

pub mod algebra;
pub mod caps;
pub mod error;
pub mod filter;
pub mod frame;
pub mod instance;
pub mod lorder;
pub mod lset;
pub mod monadlaws;
pub mod mutations;
pub mod oracle;
pub mod ltop;
pub mod registry;
pub mod report;
pub mod scott;
pub mod suite;

pub use caps::Caps;
pub use error::{Error, Result};
pub use frame::{Elem, Frame};
pub use lorder::LOrder;
pub use lset::{CarrierMap, LSubset};
pub use ltop::LTopSpace;
pub use report::{CheckEntry, Mode, Report, Verdict};
