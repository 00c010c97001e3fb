use crate::{Error, Result, Tensor2D};

/// 1-D convolution over the length axis with "same" zero padding.
///
/// `weights` is `out_channels x (in_channels * kernel_size)`; the tap for
/// output map `c`, input channel `ch` and offset `j` lives at
/// `(c, ch * kernel_size + j)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvLayer {
    pub in_channels: usize,
    pub out_channels: usize,
    pub kernel_size: usize,
    pub weights: Tensor2D,
    pub bias: Vec<f64>,
    pub l2_coeff: f64,
}

impl ConvLayer {
    /// A layer with zero weights and bias.
    pub fn zeros(
        in_channels: usize,
        out_channels: usize,
        kernel_size: usize,
        l2_coeff: f64,
    ) -> Result<Self> {
        Self::new(
            Tensor2D::zeros(out_channels, in_channels * kernel_size),
            vec![0.0; out_channels],
            kernel_size,
            l2_coeff,
        )
    }

    /// Wraps existing parameters; `in_channels` is inferred from the
    /// weight width.
    pub fn new(
        weights: Tensor2D,
        bias: Vec<f64>,
        kernel_size: usize,
        l2_coeff: f64,
    ) -> Result<Self> {
        if kernel_size == 0 || kernel_size.is_multiple_of(2) {
            return Err(Error::invalid(format!(
                "kernel size must be odd, got {kernel_size}"
            )));
        }
        if !(l2_coeff >= 0.0) {
            return Err(Error::invalid(format!(
                "l2 coefficient must be >= 0, got {l2_coeff}"
            )));
        }
        if !weights.cols().is_multiple_of(kernel_size) || weights.cols() == 0 {
            return Err(Error::shape(format!(
                "conv weight width {} is not a positive multiple of kernel size {kernel_size}",
                weights.cols()
            )));
        }
        if bias.len() != weights.rows() {
            return Err(Error::shape(format!(
                "conv bias has {} entries for {} feature maps",
                bias.len(),
                weights.rows()
            )));
        }
        Ok(ConvLayer {
            in_channels: weights.cols() / kernel_size,
            out_channels: weights.rows(),
            kernel_size,
            weights,
            bias,
            l2_coeff,
        })
    }

    #[inline]
    pub fn weight(&self, out: usize, ch: usize, tap: usize) -> f64 {
        self.weights.get(out, ch * self.kernel_size + tap)
    }

    fn check_input(&self, input: &Tensor2D) -> Result<()> {
        if input.rows() != self.in_channels {
            return Err(Error::shape(format!(
                "conv expects {} input channels, got {}",
                self.in_channels,
                input.rows()
            )));
        }
        Ok(())
    }
}

/// Output index range `lo..hi` for which `i + shift` stays inside `0..len`.
#[inline]
fn valid_range(len: usize, shift: isize) -> (usize, usize) {
    let lo = (-shift).max(0) as usize;
    let hi = (len as isize - shift).clamp(0, len as isize) as usize;
    (lo, hi)
}

/// Cross-correlation with same padding:
/// `out[c][i] = bias[c] + sum_ch sum_j w[c][ch][j] * x[ch][i + j - K/2]`,
/// out-of-range positions reading as zero.
pub fn conv1d_forward(input: &Tensor2D, layer: &ConvLayer) -> Result<Tensor2D> {
    layer.check_input(input)?;
    let len = input.cols();
    let half = (layer.kernel_size / 2) as isize;
    let mut out = Tensor2D::zeros(layer.out_channels, len);
    for c in 0..layer.out_channels {
        let row = out.row_mut(c);
        row.fill(layer.bias[c]);
        for ch in 0..layer.in_channels {
            let x = input.row(ch);
            for j in 0..layer.kernel_size {
                let w = layer.weight(c, ch, j);
                let shift = j as isize - half;
                let (lo, hi) = valid_range(len, shift);
                if lo >= hi {
                    continue;
                }
                let src = &x[(lo as isize + shift) as usize..(hi as isize + shift) as usize];
                for (o, &xv) in row[lo..hi].iter_mut().zip(src) {
                    *o += w * xv;
                }
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone)]
pub struct ConvGrads {
    pub input: Tensor2D,
    pub weights: Tensor2D,
    pub bias: Vec<f64>,
}

/// Gradients of `sum(grad_out * conv1d_forward(input, layer))`, with the
/// L2 term `2 * l2_coeff * weights` added to the weight gradient.
pub fn conv1d_backward(
    input: &Tensor2D,
    layer: &ConvLayer,
    grad_out: &Tensor2D,
) -> Result<ConvGrads> {
    layer.check_input(input)?;
    let len = input.cols();
    grad_out.ensure_shape((layer.out_channels, len), "conv1d_backward grad_out")?;
    let half = (layer.kernel_size / 2) as isize;

    let mut grad_input = Tensor2D::zeros(layer.in_channels, len);
    let mut grad_weights = layer.weights.clone();
    grad_weights.scale(2.0 * layer.l2_coeff);
    let grad_bias: Vec<f64> = (0..layer.out_channels)
        .map(|c| grad_out.row(c).iter().sum())
        .collect();

    for c in 0..layer.out_channels {
        let g = grad_out.row(c);
        for ch in 0..layer.in_channels {
            let x = input.row(ch);
            for j in 0..layer.kernel_size {
                let shift = j as isize - half;
                let (lo, hi) = valid_range(len, shift);
                if lo >= hi {
                    continue;
                }
                let (slo, shi) = (
                    (lo as isize + shift) as usize,
                    (hi as isize + shift) as usize,
                );
                let gw: f64 = g[lo..hi].iter().zip(&x[slo..shi]).map(|(a, b)| a * b).sum();
                let col = ch * layer.kernel_size + j;
                grad_weights.set(c, col, grad_weights.get(c, col) + gw);

                let w = layer.weight(c, ch, j);
                let gx = &mut grad_input.row_mut(ch)[slo..shi];
                for (dst, &gv) in gx.iter_mut().zip(&g[lo..hi]) {
                    *dst += w * gv;
                }
            }
        }
    }

    Ok(ConvGrads {
        input: grad_input,
        weights: grad_weights,
        bias: grad_bias,
    })
}
