//! Finite fields, dense polynomials, matrices and linear algebra over `k[x]`.

pub mod bipoly;
pub mod ffroots;
pub mod field;
pub mod hermite;
pub mod linalg;
pub mod matrix;
pub mod parse;
pub mod poly;
pub mod ring;

pub use bipoly::BiPoly;
pub use field::{Field, FieldSpec, Fq};
pub use matrix::{Matrix, PolyMatrix};
pub use poly::{poly_arith, DensePoly, PolyOp, PolyOutput};
pub use ring::{PolyRing, Ring};
