//! Algorithmic discrete gradient fields on ordered simplicial complexes,
//! Morse (co)chain complexes built from them, and cup products computed at
//! the Morse level, with a detailed model of the configuration space of two
//! ordered points on a complete graph.

pub mod complex;
pub mod conf2;
pub mod error;
pub mod fixtures;
pub mod gradient;
pub mod linalg;
pub mod morse;
pub mod cup;

pub use complex::{ChainExpr, OrderedComplex, Simplex, Vertex};
pub use error::{Error, Result};
pub use gradient::{build_field_a, build_field_fast, verify_acyclic, verify_maximality, GradientField, Pairing, Role};
pub use morse::{BettiProfile, MorseComplex, MorseContext};
pub use conf2::{complete_graph, munkres_conf2, tc_report, ConfKm, ConfMorse, TcReport};
pub use cup::{class_in_basis, morse_cup, simplicial_cup, CupTable, GradedRing, TensorClass};
