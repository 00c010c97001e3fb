use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::ModelConfig;
use crate::encoding::EmbeddingTable;
use crate::nn::{he_normal_with, ConvLayer, DenseLayer};
use crate::{Error, Result, Tensor2D};

/// Trainable arrays of the network. The last dense layer is the output layer.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelParams {
    pub embedding: EmbeddingTable,
    pub convs: Vec<ConvLayer>,
    pub denses: Vec<DenseLayer>,
}

/// Read-only view of one parameter array in canonical order.
#[derive(Debug, Clone, Copy)]
pub struct ParamArray<'a> {
    pub name: &'a str,
    pub rows: usize,
    pub cols: usize,
    pub data: &'a [f64],
}

/// Input widths of the dense layers, in order.
fn dense_dims(config: &ModelConfig) -> Vec<(usize, usize)> {
    let mut dims = Vec::new();
    let mut width = config.feature_maps;
    for _ in 1..config.fc_layers {
        dims.push((width, config.fc_hidden));
        width = config.fc_hidden;
    }
    dims.push((width, config.num_classes));
    dims
}

/// He-normal weights, zero biases, deterministic per seed.
pub fn build(config: &ModelConfig, seed: u64) -> Result<ModelParams> {
    config.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let embedding = EmbeddingTable::he_normal(&mut rng, config.alphabet_size, config.embed_dim)?;

    let mut convs = Vec::with_capacity(config.conv_layers);
    let mut channels = config.embed_dim;
    for _ in 0..config.conv_layers {
        let fan_in = channels * config.kernel_size;
        let weights = he_normal_with(&mut rng, config.feature_maps, fan_in, fan_in)?;
        convs.push(ConvLayer::new(
            weights,
            vec![0.0; config.feature_maps],
            config.kernel_size,
            config.l2_coeff,
        )?);
        channels = config.feature_maps;
    }

    let denses = dense_dims(config)
        .into_iter()
        .map(|(inp, out)| {
            DenseLayer::new(
                he_normal_with(&mut rng, inp, out, inp)?,
                vec![0.0; out],
                config.l2_coeff,
            )
        })
        .collect::<Result<_>>()?;

    Ok(ModelParams {
        embedding,
        convs,
        denses,
    })
}

impl ModelParams {
    /// Canonical array names: `embedding`, `conv{i}.weight`, `conv{i}.bias`,
    /// `dense{i}.weight`, `dense{i}.bias`.
    pub fn array_names(config: &ModelConfig) -> Vec<String> {
        let mut names = vec!["embedding".to_string()];
        for i in 0..config.conv_layers {
            names.push(format!("conv{i}.weight"));
            names.push(format!("conv{i}.bias"));
        }
        for i in 0..config.fc_layers {
            names.push(format!("dense{i}.weight"));
            names.push(format!("dense{i}.bias"));
        }
        names
    }

    /// `(rows, cols)` of every array in canonical order.
    pub fn array_shapes(config: &ModelConfig) -> Vec<(usize, usize)> {
        let mut shapes = vec![(config.alphabet_size + 1, config.embed_dim)];
        let mut channels = config.embed_dim;
        for _ in 0..config.conv_layers {
            shapes.push((config.feature_maps, channels * config.kernel_size));
            shapes.push((1, config.feature_maps));
            channels = config.feature_maps;
        }
        for (inp, out) in dense_dims(config) {
            shapes.push((inp, out));
            shapes.push((1, out));
        }
        shapes
    }

    fn slices(&self) -> Vec<(usize, usize, &[f64])> {
        let emb = self.embedding.weights();
        let mut out = vec![(emb.rows(), emb.cols(), emb.as_slice())];
        for c in &self.convs {
            out.push((c.weights.rows(), c.weights.cols(), c.weights.as_slice()));
            out.push((1, c.bias.len(), &c.bias[..]));
        }
        for d in &self.denses {
            out.push((d.weights.rows(), d.weights.cols(), d.weights.as_slice()));
            out.push((1, d.bias.len(), &d.bias[..]));
        }
        out
    }

    /// Visits every array in canonical order with its name.
    pub fn for_each_array(&self, mut f: impl FnMut(ParamArray<'_>)) {
        let names = self.names();
        for (name, (rows, cols, data)) in names.iter().zip(self.slices()) {
            f(ParamArray {
                name,
                rows,
                cols,
                data,
            });
        }
    }

    fn names(&self) -> Vec<String> {
        let mut names = vec!["embedding".to_string()];
        for i in 0..self.convs.len() {
            names.push(format!("conv{i}.weight"));
            names.push(format!("conv{i}.bias"));
        }
        for i in 0..self.denses.len() {
            names.push(format!("dense{i}.weight"));
            names.push(format!("dense{i}.bias"));
        }
        names
    }

    /// Mutable slices of every array in canonical order.
    pub fn arrays_mut(&mut self) -> Vec<&mut [f64]> {
        let mut out: Vec<&mut [f64]> = vec![self.embedding.weights_mut().as_mut_slice()];
        for c in &mut self.convs {
            out.push(c.weights.as_mut_slice());
            out.push(&mut c.bias[..]);
        }
        for d in &mut self.denses {
            out.push(d.weights.as_mut_slice());
            out.push(&mut d.bias[..]);
        }
        out
    }

    pub fn array_lens(&self) -> Vec<usize> {
        self.slices().iter().map(|(_, _, d)| d.len()).collect()
    }

    /// Copy with every value rounded to `f32`, the precision checkpoints keep.
    pub fn rounded_to_f32(&self) -> ModelParams {
        let mut out = self.clone();
        for arr in out.arrays_mut() {
            arr.iter_mut().for_each(|v| *v = *v as f32 as f64);
        }
        out
    }

    /// `sum ||W||^2` over conv and dense weights, scaled by each layer's
    /// L2 coefficient.
    pub fn l2_penalty(&self) -> f64 {
        let conv: f64 = self
            .convs
            .iter()
            .map(|c| c.l2_coeff * c.weights.sum_squares())
            .sum();
        let dense: f64 = self
            .denses
            .iter()
            .map(|d| d.l2_coeff * d.weights.sum_squares())
            .sum();
        conv + dense
    }

    /// Rebuilds parameters from canonical-order arrays, checking them
    /// against the config's shapes.
    pub fn from_arrays(config: &ModelConfig, arrays: Vec<Tensor2D>) -> Result<Self> {
        let shapes = Self::array_shapes(config);
        if arrays.len() != shapes.len() {
            return Err(Error::shape(format!(
                "expected {} arrays, got {}",
                shapes.len(),
                arrays.len()
            )));
        }
        for (i, (a, &s)) in arrays.iter().zip(&shapes).enumerate() {
            a.ensure_shape(s, &format!("array {i}"))?;
        }
        let mut it = arrays.into_iter();
        let embedding = EmbeddingTable::from_weights(it.next().expect("length checked"))?;
        let mut convs = Vec::new();
        for _ in 0..config.conv_layers {
            let w = it.next().expect("length checked");
            let b = it.next().expect("length checked").into_vec();
            convs.push(ConvLayer::new(w, b, config.kernel_size, config.l2_coeff)?);
        }
        let mut denses = Vec::new();
        for _ in 0..config.fc_layers {
            let w = it.next().expect("length checked");
            let b = it.next().expect("length checked").into_vec();
            denses.push(DenseLayer::new(w, b, config.l2_coeff)?);
        }
        Ok(ModelParams {
            embedding,
            convs,
            denses,
        })
    }
}

/// Gradients for every parameter array, flat, in canonical order.
#[derive(Debug, Clone, PartialEq)]
pub struct Gradients {
    pub arrays: Vec<Vec<f64>>,
}

impl Gradients {
    pub fn zeros_like(params: &ModelParams) -> Self {
        Gradients {
            arrays: params
                .array_lens()
                .into_iter()
                .map(|n| vec![0.0; n])
                .collect(),
        }
    }

    pub fn fill_zero(&mut self) {
        self.arrays.iter_mut().for_each(|a| a.fill(0.0));
    }

    pub fn scale(&mut self, factor: f64) {
        self.arrays.iter_mut().flatten().for_each(|g| *g *= factor);
    }

    /// All gradient values flattened in canonical order.
    pub fn flatten(&self) -> Vec<f64> {
        self.arrays.concat()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Layout;

    fn tiny() -> ModelConfig {
        let mut cfg = ModelConfig::new(Layout::new(1, 1), 5, 10);
        cfg.embed_dim = 2;
        cfg.feature_maps = 3;
        cfg.num_classes = 2;
        cfg
    }

    #[test]
    fn tiny_shapes() {
        let p = build(&tiny(), 1).unwrap();
        let mut shapes = Vec::new();
        p.for_each_array(|a| shapes.push((a.name.to_string(), a.rows, a.cols)));
        assert_eq!(
            shapes,
            vec![
                ("embedding".to_string(), 6, 2),
                ("conv0.weight".to_string(), 3, 6),
                ("conv0.bias".to_string(), 1, 3),
                ("dense0.weight".to_string(), 3, 2),
                ("dense0.bias".to_string(), 1, 2),
            ]
        );
        assert_eq!(
            ModelParams::array_shapes(&tiny()),
            shapes.iter().map(|s| (s.1, s.2)).collect::<Vec<_>>()
        );
    }

    #[test]
    fn deterministic_build() {
        assert_eq!(build(&tiny(), 7).unwrap(), build(&tiny(), 7).unwrap());
        assert_ne!(build(&tiny(), 7).unwrap(), build(&tiny(), 8).unwrap());
    }

    #[test]
    fn zero_conv_layers_rejected() {
        let mut cfg = tiny();
        cfg.conv_layers = 0;
        assert!(matches!(
            build(&cfg, 1),
            Err(Error::Config {
                field: "conv_layers",
                ..
            })
        ));
    }

    #[test]
    fn biases_zero_and_padding_zero() {
        let p = build(&ModelConfig::new(Layout::new(3, 2), 42, 50), 3).unwrap();
        assert!(p.convs.iter().all(|c| c.bias.iter().all(|&b| b == 0.0)));
        assert!(p.denses.iter().all(|d| d.bias.iter().all(|&b| b == 0.0)));
        assert!(p.embedding.weights().row(0).iter().all(|&v| v == 0.0));
        assert_eq!(p.denses[0].in_dim, 128);
        assert_eq!(p.denses[0].out_dim, 100);
        assert_eq!(p.denses[1].out_dim, 5);
    }

    #[test]
    fn from_arrays_round_trip() {
        let cfg = ModelConfig::new(Layout::new(2, 2), 9, 20);
        let p = build(&cfg, 4).unwrap();
        let mut arrays = Vec::new();
        p.for_each_array(|a| {
            arrays.push(Tensor2D::from_vec(a.rows, a.cols, a.data.to_vec()).unwrap())
        });
        assert_eq!(ModelParams::from_arrays(&cfg, arrays).unwrap(), p);
    }
}
