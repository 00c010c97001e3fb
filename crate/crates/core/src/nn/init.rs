use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::Normal;

use crate::{Error, Result, Tensor2D};

/// He-normal initialisation: i.i.d. `N(0, 2 / fan_in)` entries.
pub fn he_normal(rows: usize, cols: usize, fan_in: usize, seed: u64) -> Result<Tensor2D> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    he_normal_with(&mut rng, rows, cols, fan_in)
}

/// Same as [`he_normal`] but draws from a caller-owned generator.
pub fn he_normal_with<R: Rng + ?Sized>(
    rng: &mut R,
    rows: usize,
    cols: usize,
    fan_in: usize,
) -> Result<Tensor2D> {
    if fan_in == 0 {
        return Err(Error::invalid("he_normal: fan_in must be at least 1"));
    }
    let std = (2.0 / fan_in as f64).sqrt();
    let normal = Normal::new(0.0, std).expect("std is finite and positive");
    let data = (0..rows * cols).map(|_| rng.sample(normal)).collect();
    Tensor2D::from_vec(rows, cols, data)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample_std(t: &Tensor2D) -> f64 {
        let n = t.len() as f64;
        let mean = t.as_slice().iter().sum::<f64>() / n;
        (t.as_slice().iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0)).sqrt()
    }

    #[test]
    fn std_matches_fan_in() {
        let t = he_normal(1000, 1, 48, 7).unwrap();
        let target = (2.0f64 / 48.0).sqrt();
        let s = sample_std(&t);
        assert!(
            s >= 0.85 * target && s <= 1.15 * target,
            "std {s} vs {target}"
        );
    }

    #[test]
    fn fan_in_two_gives_unit_std() {
        let t = he_normal(20_000, 1, 2, 3).unwrap();
        assert!((sample_std(&t) - 1.0).abs() < 0.03);
    }

    #[test]
    fn deterministic_per_seed() {
        assert_eq!(
            he_normal(4, 5, 10, 42).unwrap(),
            he_normal(4, 5, 10, 42).unwrap()
        );
        assert_ne!(
            he_normal(4, 5, 10, 42).unwrap(),
            he_normal(4, 5, 10, 43).unwrap()
        );
    }

    #[test]
    fn zero_fan_in_rejected() {
        assert!(matches!(
            he_normal(2, 2, 0, 1),
            Err(Error::InvalidArgument(_))
        ));
    }
}
