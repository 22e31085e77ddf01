//! Exact computations with Bowen-Franks groups of digraphs, voltage covers and
//! their relation to Stickelberger elements and minus class numbers of prime
//! cyclotomic fields.

pub mod arith;
pub mod bowen_franks;
pub mod character;
pub mod cyclotomic;
pub mod digraph;
pub mod error;
pub mod fp_poly;
pub mod group;
pub mod group_ring;
pub mod isotypic;
pub mod json;
pub mod lattice;
pub mod matrix;
pub mod padic;
pub mod poly;
pub mod ring;
pub mod snf;
pub mod stickelberger;
pub mod voltage;

pub use error::{Error, Result};
pub use lattice::{kernel_and_image_saturation, lattice_index, Lattice};
pub use matrix::IntMatrix;
pub use poly::{taylor_at_one, IntPoly, TaylorAtOne};
pub use snf::{invariant_factors, smith_normal_form, SNFResult};
