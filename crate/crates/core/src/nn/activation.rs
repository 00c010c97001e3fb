use crate::{Result, Tensor2D};

pub fn relu(input: &Tensor2D) -> Tensor2D {
    input.map(|x| x.max(0.0))
}

/// Passes `grad_out` where `input > 0`. The subgradient at exactly zero is 0.
pub fn relu_backward(input: &Tensor2D, grad_out: &Tensor2D) -> Result<Tensor2D> {
    grad_out.ensure_shape(input.shape(), "relu_backward")?;
    let data = relu_backward_slice(input.as_slice(), grad_out.as_slice());
    Tensor2D::from_vec(input.rows(), input.cols(), data)
}

pub fn relu_slice(input: &[f64]) -> Vec<f64> {
    input.iter().map(|&x| x.max(0.0)).collect()
}

pub fn relu_backward_slice(input: &[f64], grad_out: &[f64]) -> Vec<f64> {
    debug_assert_eq!(input.len(), grad_out.len());
    input
        .iter()
        .zip(grad_out)
        .map(|(&x, &g)| if x > 0.0 { g } else { 0.0 })
        .collect()
}
