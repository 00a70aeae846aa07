//! The 2x2 Hadamard arithmetic on real rail amplitudes.
//!
//! A differential rail pair (+V, -V) maps to the common-mode amplitude pair
//! (0, +sqrt(2)V) and back; the transform is an involution and preserves the
//! Euclidean norm. Generic over the float type, with `f64` as the default
//! alias at the crate root.

use num_traits::Float;

use super::Rail;

/// Applies (1/sqrt(2)) [[1, 1], [1, -1]] to an amplitude pair.
pub fn hadamard2<F: Float>(v: [F; 2]) -> [F; 2] {
    let s = F::one() / F::from(2.0).unwrap().sqrt();
    [(v[0] + v[1]) * s, (v[0] - v[1]) * s]
}

/// Amplitudes of a rail pair at supply voltage `volts`.
pub fn pair_amplitudes<F: Float>(pair: (Rail, Rail), volts: F) -> [F; 2] {
    let amp = |r: Rail| match r {
        Rail::Plus => volts,
        Rail::Minus => -volts,
    };
    [amp(pair.0), amp(pair.1)]
}
