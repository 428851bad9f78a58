//! Exact integer/rational scalars, polynomials, matrices and real roots.

pub mod factor;
pub mod interval;
pub mod matrix;
pub mod poly;
pub mod rational;
pub mod roots;

pub use factor::{irreducible_over_q, Irreducibility, DEFAULT_DEGREE_CAP};
pub use interval::Interval;
pub use matrix::RatMatrix;
pub use poly::{compose_symmetric, IntPoly, RatPoly};
pub use rational::Rational;
pub use roots::{isolate_real_roots, RootInterval};
