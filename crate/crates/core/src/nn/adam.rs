use crate::{Error, Result};

/// Adam moment estimates and hyper-parameters for one parameter array.
#[derive(Debug, Clone, PartialEq)]
pub struct AdamState {
    pub step: u64,
    pub m: Vec<f64>,
    pub v: Vec<f64>,
    pub lr: f64,
    pub beta1: f64,
    pub beta2: f64,
    pub eps: f64,
}

impl AdamState {
    /// Fresh state with the usual defaults (lr 0.001, betas 0.9/0.999, eps 1e-8).
    pub fn new(len: usize) -> Self {
        Self::with_lr(len, 0.001)
    }

    pub fn with_lr(len: usize, lr: f64) -> Self {
        AdamState {
            step: 0,
            m: vec![0.0; len],
            v: vec![0.0; len],
            lr,
            beta1: 0.9,
            beta2: 0.999,
            eps: 1e-8,
        }
    }
}

/// One bias-corrected Adam update of `params` in place.
pub fn adam_step(params: &mut [f64], grads: &[f64], state: &mut AdamState) -> Result<()> {
    if params.len() != grads.len()
        || params.len() != state.m.len()
        || state.v.len() != state.m.len()
    {
        return Err(Error::shape(format!(
            "adam: {} params, {} grads, state tracks {}",
            params.len(),
            grads.len(),
            state.m.len()
        )));
    }
    state.step += 1;
    let t = state.step as i32;
    let (b1, b2) = (state.beta1, state.beta2);
    let bc1 = 1.0 - b1.powi(t);
    let bc2 = 1.0 - b2.powi(t);
    for (((p, &g), m), v) in params
        .iter_mut()
        .zip(grads)
        .zip(&mut state.m)
        .zip(&mut state.v)
    {
        *m = b1 * *m + (1.0 - b1) * g;
        *v = b2 * *v + (1.0 - b2) * g * g;
        let m_hat = *m / bc1;
        let v_hat = *v / bc2;
        *p -= state.lr * m_hat / (v_hat.sqrt() + state.eps);
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_gradient_is_fixed_point() {
        let mut p = vec![0.5, -1.25, 3.0];
        let mut s = AdamState::new(3);
        for _ in 0..5 {
            adam_step(&mut p, &[0.0; 3], &mut s).unwrap();
        }
        assert_eq!(p, vec![0.5, -1.25, 3.0]);
    }

    #[test]
    fn first_step_closed_form() {
        // m_hat = g and v_hat = g^2 after one step.
        let mut p = vec![0.0];
        let mut s = AdamState::new(1);
        adam_step(&mut p, &[0.5], &mut s).unwrap();
        let expected = -0.001 * 0.5 / (0.5 + 1e-8);
        assert!((p[0] - expected).abs() < 1e-15);
        assert!((p[0] + 0.00099999998).abs() < 1e-14);
    }

    #[test]
    fn two_steps_hand_unrolled() {
        let g = 0.3;
        let mut p = vec![1.0];
        let mut s = AdamState::new(1);
        adam_step(&mut p, &[g], &mut s).unwrap();
        adam_step(&mut p, &[g], &mut s).unwrap();

        let m1 = 0.1 * g;
        let v1 = 0.001 * g * g;
        let p1 = 1.0 - 0.001 * (m1 / 0.1) / ((v1 / 0.001).sqrt() + 1e-8);
        let m2 = 0.9 * m1 + 0.1 * g;
        let v2 = 0.999 * v1 + 0.001 * g * g;
        let p2 = p1 - 0.001 * (m2 / (1.0 - 0.81)) / ((v2 / (1.0 - 0.998001)).sqrt() + 1e-8);
        assert!((p[0] - p2).abs() < 1e-12);
    }

    #[test]
    fn shape_mismatch() {
        let mut s = AdamState::new(2);
        assert!(matches!(
            adam_step(&mut [0.0; 3], &[0.0; 3], &mut s),
            Err(Error::Shape(_))
        ));
        assert!(matches!(
            adam_step(&mut [0.0; 2], &[0.0; 3], &mut s),
            Err(Error::Shape(_))
        ));
    }

    #[test]
    fn second_moment_nonnegative() {
        let mut p = vec![0.0; 4];
        let mut s = AdamState::new(4);
        for k in 0..10 {
            let g: Vec<f64> = (0..4).map(|i| ((i + k) as f64).sin()).collect();
            adam_step(&mut p, &g, &mut s).unwrap();
        }
        assert!(s.v.iter().all(|&v| v >= 0.0));
    }
}
