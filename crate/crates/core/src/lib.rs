//! Detection, resynthesis and pairwise reduction of Pauli gadgets, with a
//! peephole pass library and a dense-unitary oracle for checking rewrites.

pub mod bench;
pub mod circuit;
pub mod clifford;
pub mod error;
pub mod euler;
pub mod gen;
pub mod pauli;
pub mod peephole;
pub mod pipeline;
pub mod qasm;
pub mod reduce;
pub mod rules;
pub mod sim;
pub mod synth;

pub use circuit::{Axis, Circuit, Gate};
pub use error::{Error, Result};
pub use pauli::{Pauli, PauliGadget, PauliString};
