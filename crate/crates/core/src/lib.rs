//! Multiple-unicast network coding on unit-capacity DAGs.

pub mod field;
pub mod flow;
pub mod graph;
pub mod netcode;
pub mod oracle;
pub mod random;
pub mod transform;

pub use field::{CodingVector, FieldElement, FieldError, PrimeField};
pub use flow::{ConnectivityVector, CutWitness, FlowError, PathSet};
pub use graph::{Dag, EdgeId, NodeId, Path, Session, UnicastInstance};
pub use netcode::{GlobalCodeTable, NetworkCode};
pub use transform::{OverlapSegment, StructuredInstance};
