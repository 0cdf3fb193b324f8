//! Combinatorial maps on orientable surfaces: duals and their cut structure,
//! face-size thresholds for dual connectivity, map surgery, and exhaustive
//! isomorph-free search.

pub mod bounds;
pub mod canon;
pub mod cli;
pub mod connectivity;
pub mod corpus;
pub mod dual;
pub mod families;
pub mod map;
pub mod rot;
pub mod search;
pub mod surgery;

pub use canon::{canonical_code, CanonicalCode};
pub use map::{Dart, EdgeId, Face, FaceId, Map, MapError, VertexId};
