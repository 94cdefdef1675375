//! Exact arithmetic over `Z[v, v^-1]` and `Q(v)`.

mod int;
mod laurent;
mod matrix;
mod ratfunc;

pub use int::Int;
pub use laurent::LaurentPoly;
pub use matrix::{rank, solve_exact, solve_exact_multi, ExactMatrix, Solution};
pub use ratfunc::{poly_gcd, RatFunc};
