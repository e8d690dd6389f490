pub mod cli;
pub mod compile;
pub mod dot;
pub mod fuzz;
pub mod kind;
pub mod manager;
pub mod node;
pub mod ops;
pub mod oracle;
pub mod rules;
pub mod stats;
pub mod vtree;

pub use kind::{DiagramKind, Padding, RuleSystem};
pub use manager::{Dd, DdError, Manager, NodeId};
pub use node::{Body, Esdd, Terminal};
pub use ops::SetOp;
pub use rules::{Normalized, Rule};
pub use stats::Stats;
pub use vtree::{Var, Vtree, VtreeId};
