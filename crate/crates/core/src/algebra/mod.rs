//! Exact scalar, matrix and polynomial arithmetic.

pub mod gauss;
pub mod matrix;
pub mod multipoly;
pub mod polymat;
pub mod rational;
pub mod snf;
pub mod unipoly;

pub use gauss::{gauss_rank, GaussianRational};
pub use matrix::{Ldl, RatMatrix, Rref};
pub use multipoly::{Monomial, MultiPoly};
pub use polymat::{laplace_det, multilinear_det, DetRing, FloatPoly, PolyMatrix, VarSet};
pub use rational::{binom, int, parse_rational, rat, rational_sqrt, to_pq, to_short};
pub use snf::{cokernel_order, smith_normal_form, IntMatrix};
pub use unipoly::{sturm_real_roots, sylvester_resultant, BinaryForm, UniPoly};
