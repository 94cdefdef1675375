//! Fixtures shared by the benchmarks.

use sl3canon::tensorspace::Params;
use sl3canon::udot::FamilyParams;
use sl3canon::{Int, LaurentPoly};

/// A dense Laurent polynomial with `n` terms centred on `v^0`.
pub fn dense_poly(n: i32, seed: i64) -> LaurentPoly {
    LaurentPoly::from_terms((0..n).map(|i| (i - n / 2, Int::from((i as i64 * 7 + seed) % 11 - 5))))
}

/// Tensor spaces of increasing size.
pub const SPACES: [Params; 3] = [
    Params::new(1, 0, 1, 0),
    Params::new(1, 1, 1, 1),
    Params::new(2, 1, 1, 2),
];

/// A family-2 member with a two-term sum that is nonzero on the window.
pub fn family_two() -> FamilyParams {
    FamilyParams::new([0, 2, 1, 1, 2, 0], -2, -1)
}
