//! Exact lattice-point counting, volumes, and Ehrhart polynomials for
//! network-flow and transportation polytopes, computed as sums of residues
//! at the points at infinity indexed by proper maximal nested sets.
//!
//! ```
//! use polyflow_core::{Engine, VectorConfig};
//!
//! let a2 = VectorConfig::new(3, vec![vec![1, -1, 0], vec![0, 1, -1], vec![1, 0, -1]]).unwrap();
//! let engine = Engine::for_config(a2).unwrap();
//! assert_eq!(engine.count(&[1, 0, -1]).unwrap().total, 2.into());
//! assert_eq!(engine.ehrhart(&[1, 0, -1]).unwrap().polynomial.to_string(), "t + 1");
//! ```

pub mod arrangement;
pub mod cells;
pub mod chamber;
pub mod config;
pub mod error;
pub mod graph;
pub mod linalg;
pub mod magic;
pub mod nested;
pub mod par;
pub mod residue;
pub mod series;
pub mod subset;

pub use arrangement::{NbcBasis, NestedSet, ProperFlag};
pub use cells::{BigCell, Signature};
pub use chamber::{ChamberCertificate, ChamberPolicy};
pub use config::VectorConfig;
pub use error::{Error, Result};
pub use graph::{OrientedGraph, VertexWeighting};
pub use linalg::Rational;
pub use magic::MagicConfig;
pub use nested::{Backend, EnumerationRequest};
pub use residue::{CountResult, EhrhartResult, Engine, Selection, VolumeResult};
pub use series::Poly;
pub use subset::SubsetIdx;
