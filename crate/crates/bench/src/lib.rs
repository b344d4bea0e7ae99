//! Fixture monoids shared by the criterion benches.

use molekul::NumericalSemigroup;

/// The semigroups drawn in the molecule strip chart plus the Betti example.
pub fn showcase() -> Vec<NumericalSemigroup> {
    [&[2u64, 21][..], &[6, 9, 20], &[5, 6, 7, 8, 9], &[2, 3], &[14, 16, 18, 21, 45]]
        .iter()
        .map(|g| NumericalSemigroup::from_generators(g).expect("valid generators"))
        .collect()
}
