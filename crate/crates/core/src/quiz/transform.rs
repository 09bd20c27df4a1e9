//! Data transforms used to derive chart variants: reorder, jitter, rescale.

use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TransformError {
    #[error("permutation of length {len} does not match series of length {expected}")]
    LengthMismatch { len: usize, expected: usize },
    #[error("permutation is not a bijection (index {0} repeated or out of range)")]
    NotBijection(usize),
    #[error("noise amplitude must be finite and >= 0, got {0}")]
    NegativeAmplitude(f64),
    #[error("magnitude factor must be finite and nonzero, got {0}")]
    ZeroFactor(f64),
}

/// `out[i] = series[permutation[i]]`.
pub fn transform_permute(
    series: &[f64],
    permutation: &[usize],
) -> Result<Vec<f64>, TransformError> {
    if permutation.len() != series.len() {
        return Err(TransformError::LengthMismatch {
            len: permutation.len(),
            expected: series.len(),
        });
    }
    let mut seen = vec![false; series.len()];
    for &p in permutation {
        if p >= series.len() || seen[p] {
            return Err(TransformError::NotBijection(p));
        }
        seen[p] = true;
    }
    Ok(permutation.iter().map(|&p| series[p]).collect())
}

/// Inverse of a valid permutation.
pub fn inverse_permutation(permutation: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; permutation.len()];
    for (i, &p) in permutation.iter().enumerate() {
        inv[p] = i;
    }
    inv
}

/// Adds an independent uniform draw from `[-amplitude, amplitude]` to every
/// value. The same seed always yields the same output.
pub fn transform_noise(
    series: &[f64],
    amplitude: f64,
    seed: u64,
) -> Result<Vec<f64>, TransformError> {
    if !(amplitude >= 0.0 && amplitude.is_finite()) {
        return Err(TransformError::NegativeAmplitude(amplitude));
    }
    if amplitude == 0.0 {
        return Ok(series.to_vec());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(series
        .iter()
        .map(|v| v + rng.random_range(-amplitude..=amplitude))
        .collect())
}

/// Multiplies every value by `k`.
pub fn transform_magnitude(series: &[f64], k: f64) -> Result<Vec<f64>, TransformError> {
    if k == 0.0 || !k.is_finite() {
        return Err(TransformError::ZeroFactor(k));
    }
    Ok(series.iter().map(|v| v * k).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn permute_reorders() {
        assert_eq!(
            transform_permute(&[1.0, 2.0, 3.0], &[2, 0, 1]).unwrap(),
            vec![3.0, 1.0, 2.0]
        );
        assert_eq!(
            transform_permute(&[1.0, 2.0, 3.0], &[0, 1, 2]).unwrap(),
            vec![1.0, 2.0, 3.0]
        );
    }

    #[test]
    fn permute_then_inverse_restores() {
        let s = [5.0, -1.0, 7.5, 2.0];
        let p = [3, 0, 2, 1];
        let there = transform_permute(&s, &p).unwrap();
        assert_eq!(
            transform_permute(&there, &inverse_permutation(&p)).unwrap(),
            s.to_vec()
        );
    }

    #[test]
    fn invalid_permutations_are_rejected() {
        assert_eq!(
            transform_permute(&[1.0, 2.0], &[0, 0]),
            Err(TransformError::NotBijection(0))
        );
        assert_eq!(
            transform_permute(&[1.0, 2.0], &[0, 2]),
            Err(TransformError::NotBijection(2))
        );
        assert!(matches!(
            transform_permute(&[1.0, 2.0], &[0]),
            Err(TransformError::LengthMismatch { .. })
        ));
    }

    #[test]
    fn zero_noise_is_identity_and_seed_is_deterministic() {
        let s = [1.0, 2.0, 3.0];
        assert_eq!(transform_noise(&s, 0.0, 9).unwrap(), s.to_vec());
        assert_eq!(
            transform_noise(&s, 0.5, 9).unwrap(),
            transform_noise(&s, 0.5, 9).unwrap()
        );
        assert_ne!(
            transform_noise(&s, 0.5, 9).unwrap(),
            transform_noise(&s, 0.5, 10).unwrap()
        );
        assert!(transform_noise(&s, -0.1, 9).is_err());
    }

    #[test]
    fn magnitude_scales() {
        assert_eq!(
            transform_magnitude(&[1.0, 2.0, 3.0], 10.0).unwrap(),
            vec![10.0, 20.0, 30.0]
        );
        assert_eq!(
            transform_magnitude(&[1.0, 2.0], 1.0).unwrap(),
            vec![1.0, 2.0]
        );
        assert_eq!(
            transform_magnitude(&[1.0], 0.0),
            Err(TransformError::ZeroFactor(0.0))
        );
    }
}
