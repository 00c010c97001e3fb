use super::{ModelConfig, ModelParams};
use crate::Result;

/// Scalar counts per parameter array.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParamCount {
    pub arrays: Vec<(String, usize)>,
    /// Every stored scalar, the embedding padding row included.
    pub total: usize,
    /// Scalars of the embedding padding row, which never train.
    pub padding: usize,
}

impl ParamCount {
    /// Scalars that an optimiser step can change.
    pub fn trainable(&self) -> usize {
        self.total - self.padding
    }
}

pub fn count_params(config: &ModelConfig) -> Result<ParamCount> {
    config.validate()?;
    let arrays: Vec<(String, usize)> = ModelParams::array_names(config)
        .into_iter()
        .zip(ModelParams::array_shapes(config))
        .map(|(name, (r, c))| (name, r * c))
        .collect();
    Ok(ParamCount {
        total: arrays.iter().map(|(_, n)| n).sum(),
        padding: config.embed_dim,
        arrays,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Layout;

    #[test]
    fn tiny_hand_count() {
        // embedding 6x2 = 12, conv 3x(2*3)+3 = 21, output 3x2+2 = 8
        let mut cfg = ModelConfig::new(Layout::new(1, 1), 5, 10);
        cfg.embed_dim = 2;
        cfg.feature_maps = 3;
        cfg.num_classes = 2;
        let c = count_params(&cfg).unwrap();
        assert_eq!(c.total, 41);
        assert_eq!(c.padding, 2);
        assert_eq!(c.trainable(), 39);
    }

    #[test]
    fn pinyin_embedding() {
        let c = count_params(&ModelConfig::new(Layout::new(1, 1), 42, 1000)).unwrap();
        assert_eq!(c.arrays[0], ("embedding".to_string(), 688));
    }

    #[test]
    fn full_cnn3_fc2() {
        // 688 + (6144+128) + 2*(49152+128) + (12800+100) + (500+5)
        let c = count_params(&ModelConfig::new(Layout::new(3, 2), 42, 1000)).unwrap();
        assert_eq!(c.total, 118_925);
    }
}
