//! Lower-bound reductions as instance transformers, and characteristic
//! polynomials of constraint languages.

mod cross_compose;
mod csp;
mod erbds;
mod lift;

pub use cross_compose::{
    pad_to_power, rbds_cross_compose, rbds_cross_compose_with, CompositionLayout, ComposedInstance, Padding,
    WeightVector,
};
pub use csp::{characteristic_polynomial, hyperclique_to_csp, language_degree};
pub use erbds::{erbds_to_subset_sum, pad_isolated_reds};
pub use lift::{hyperclique_lift, lift_layout_size};

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CompositionError {
    #[error("no input instances")]
    Empty,
    #[error("{count} inputs is not a perfect {power}-th power; pad first")]
    NotPerfectPower { count: usize, power: u32 },
    #[error("input {index} has shape {found}, expected {expected}")]
    ShapeMismatch { index: usize, found: String, expected: String },
    #[error("input {index}: {reason}")]
    Unsupported { index: usize, reason: String },
    #[error("invalid input {index}: {violation}")]
    Invalid { index: usize, violation: crate::instances::Violation },
}

/// Integer k with k^power = count, if any.
pub fn exact_root(count: usize, power: u32) -> Option<usize> {
    if power == 0 {
        return None;
    }
    let guess = (count as f64).powf(1.0 / power as f64).round() as usize;
    (guess.saturating_sub(1)..=guess + 1).find(|&k| k.checked_pow(power) == Some(count))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roots() {
        assert_eq!(exact_root(8, 3), Some(2));
        assert_eq!(exact_root(1, 3), Some(1));
        assert_eq!(exact_root(27, 3), Some(3));
        assert_eq!(exact_root(9, 3), None);
        assert_eq!(exact_root(0, 3), Some(0));
        assert_eq!(exact_root(4, 1), Some(4));
    }
}
