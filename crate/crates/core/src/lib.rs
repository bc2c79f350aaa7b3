//! Finite groupoids, affine congruences, semi-inner products and groupoid
//! norms, computed exactly over the rationals and Gaussian rationals.

pub mod congruence;
pub mod families;
pub mod groupoid;
pub mod hom;
pub mod norm;
pub mod scalar;
pub mod sip;
pub mod random;
pub mod doc;
pub mod cli;
pub mod report;
