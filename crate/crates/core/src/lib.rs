//! Exact algebra for logarithmic connections in characteristic `p` on an
//! affine curve chart: finite fields and polynomial linear algebra, Witt
//! vectors and divided powers, p-curvature, residues, flat sections with
//! their parabolic filtrations, Frobenius descent, the logarithmic Weyl
//! algebra, and Higgs/spectral correspondences.

pub mod algebra;
pub mod dweyl;
pub mod error;
pub mod logconn;
pub mod parabolic;
pub mod spectral;
pub mod verify;
pub mod witt;

pub use error::{Error, Result};
