use std::fmt;
use std::str::FromStr;

use crate::nn::DEFAULT_L2;
use crate::{Error, Result};

/// Number of conv and dense layers, written `CNN{n}-FC{m}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Layout {
    pub conv_layers: usize,
    pub fc_layers: usize,
}

/// The experimental grid; these are the names accepted by [`Layout::from_str`].
pub const NAMED_LAYOUTS: [&str; 5] = ["CNN1-FC1", "CNN2-FC1", "CNN2-FC2", "CNN3-FC1", "CNN3-FC2"];

impl Layout {
    pub const fn new(conv_layers: usize, fc_layers: usize) -> Self {
        Layout {
            conv_layers,
            fc_layers,
        }
    }
}

impl fmt::Display for Layout {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CNN{}-FC{}", self.conv_layers, self.fc_layers)
    }
}

impl FromStr for Layout {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parsed = s
            .strip_prefix("CNN")
            .and_then(|r| r.split_once("-FC"))
            .and_then(|(n, m)| Some(Layout::new(n.parse().ok()?, m.parse().ok()?)));
        match parsed {
            Some(layout) if NAMED_LAYOUTS.contains(&s) => Ok(layout),
            _ => Err(Error::invalid(format!(
                "unknown layout {s:?}; valid layouts: {}",
                NAMED_LAYOUTS.join(", ")
            ))),
        }
    }
}

/// Architecture hyper-parameters. Parameter shapes follow from these alone.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelConfig {
    /// Alphabet size `S`, blank included, padding excluded.
    pub alphabet_size: usize,
    pub embed_dim: usize,
    pub max_length: usize,
    /// Whether inputs are encoded back-to-front.
    pub reverse: bool,
    pub conv_layers: usize,
    pub feature_maps: usize,
    pub kernel_size: usize,
    pub fc_layers: usize,
    pub fc_hidden: usize,
    pub num_classes: usize,
    pub dropout_rate: f64,
    pub l2_coeff: f64,
}

impl ModelConfig {
    /// Defaults: embedding 16, 128 feature maps, kernel 3, hidden width 100,
    /// 5 classes, dropout 0.1, L2 1e-4.
    pub fn new(layout: Layout, alphabet_size: usize, max_length: usize) -> Self {
        ModelConfig {
            alphabet_size,
            embed_dim: 16,
            max_length,
            reverse: true,
            conv_layers: layout.conv_layers,
            feature_maps: 128,
            kernel_size: 3,
            fc_layers: layout.fc_layers,
            fc_hidden: 100,
            num_classes: 5,
            dropout_rate: 0.1,
            l2_coeff: DEFAULT_L2,
        }
    }

    pub fn layout(&self) -> Layout {
        Layout::new(self.conv_layers, self.fc_layers)
    }

    pub fn layout_name(&self) -> String {
        self.layout().to_string()
    }

    pub fn validate(&self) -> Result<()> {
        fn bad(field: &'static str, reason: impl Into<String>) -> Result<()> {
            Err(Error::Config {
                field,
                reason: reason.into(),
            })
        }
        if self.alphabet_size == 0 {
            return bad("alphabet_size", "must be at least 1");
        }
        if self.embed_dim == 0 {
            return bad("embed_dim", "must be at least 1");
        }
        if self.max_length == 0 {
            return bad("max_length", "must be at least 1");
        }
        if !(1..=3).contains(&self.conv_layers) {
            return bad(
                "conv_layers",
                format!("must be 1..=3, got {}", self.conv_layers),
            );
        }
        if self.feature_maps == 0 {
            return bad("feature_maps", "must be at least 1");
        }
        if self.kernel_size.is_multiple_of(2) {
            return bad(
                "kernel_size",
                format!("must be odd, got {}", self.kernel_size),
            );
        }
        if !(1..=2).contains(&self.fc_layers) {
            return bad(
                "fc_layers",
                format!("must be 1..=2, got {}", self.fc_layers),
            );
        }
        if self.fc_layers == 2 && self.fc_hidden == 0 {
            return bad("fc_hidden", "must be at least 1");
        }
        if self.num_classes < 2 {
            return bad(
                "num_classes",
                format!("must be at least 2, got {}", self.num_classes),
            );
        }
        if !(0.0..1.0).contains(&self.dropout_rate) {
            return bad(
                "dropout_rate",
                format!("must be in [0, 1), got {}", self.dropout_rate),
            );
        }
        if !(self.l2_coeff >= 0.0 && self.l2_coeff.is_finite()) {
            return bad(
                "l2_coeff",
                format!("must be a finite value >= 0, got {}", self.l2_coeff),
            );
        }
        Ok(())
    }

    /// `key=value` lines in a fixed order. Floats use the shortest
    /// representation that parses back exactly.
    pub fn to_text(&self) -> String {
        format!(
            "layout={}\nalphabet_size={}\nembed_dim={}\nmax_length={}\nreverse={}\nconv_layers={}\n\
             feature_maps={}\nkernel_size={}\nfc_layers={}\nfc_hidden={}\nnum_classes={}\n\
             dropout_rate={}\nl2_coeff={}\n",
            self.layout_name(),
            self.alphabet_size,
            self.embed_dim,
            self.max_length,
            self.reverse,
            self.conv_layers,
            self.feature_maps,
            self.kernel_size,
            self.fc_layers,
            self.fc_hidden,
            self.num_classes,
            self.dropout_rate,
            self.l2_coeff,
        )
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut cfg = ModelConfig::new(Layout::new(1, 1), 1, 1);
        let mut seen = Vec::new();
        for (i, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::parse(i + 1, format!("expected key=value, got {line:?}")))?;
            cfg.set(key.trim(), value.trim())
                .map_err(|e| Error::parse(i + 1, e.to_string()))?;
            seen.push(key.trim().to_owned());
        }
        for key in Self::KEYS {
            if !seen.iter().any(|k| k == key) {
                return Err(Error::parse(0, format!("config is missing `{key}`")));
            }
        }
        cfg.validate()?;
        Ok(cfg)
    }

    const KEYS: [&'static str; 12] = [
        "alphabet_size",
        "embed_dim",
        "max_length",
        "reverse",
        "conv_layers",
        "feature_maps",
        "kernel_size",
        "fc_layers",
        "fc_hidden",
        "num_classes",
        "dropout_rate",
        "l2_coeff",
    ];

    /// Sets one field by name. `layout` sets both layer counts; dashes in
    /// keys are accepted in place of underscores.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        fn parse<T: FromStr>(key: &str, value: &str) -> Result<T> {
            value
                .parse()
                .map_err(|_| Error::invalid(format!("bad value {value:?} for `{key}`")))
        }
        match key.replace('-', "_").as_str() {
            "layout" => {
                let layout: Layout = value.parse()?;
                self.conv_layers = layout.conv_layers;
                self.fc_layers = layout.fc_layers;
            }
            "alphabet_size" => self.alphabet_size = parse(key, value)?,
            "embed_dim" => self.embed_dim = parse(key, value)?,
            "max_length" | "max_len" => self.max_length = parse(key, value)?,
            "reverse" => self.reverse = parse(key, value)?,
            "conv_layers" => self.conv_layers = parse(key, value)?,
            "feature_maps" => self.feature_maps = parse(key, value)?,
            "kernel_size" => self.kernel_size = parse(key, value)?,
            "fc_layers" => self.fc_layers = parse(key, value)?,
            "fc_hidden" => self.fc_hidden = parse(key, value)?,
            "num_classes" => self.num_classes = parse(key, value)?,
            "dropout_rate" | "dropout" => self.dropout_rate = parse(key, value)?,
            "l2_coeff" | "l2" => self.l2_coeff = parse(key, value)?,
            _ => return Err(Error::invalid(format!("unknown model config key `{key}`"))),
        }
        Ok(())
    }
}

/// Optimisation settings.
#[derive(Debug, Clone, PartialEq)]
pub struct TrainConfig {
    pub batch_size: usize,
    pub epochs: usize,
    pub seed: u64,
    pub learning_rate: f64,
    pub shuffle: bool,
}

impl Default for TrainConfig {
    fn default() -> Self {
        TrainConfig {
            batch_size: 128,
            epochs: 10,
            seed: 0,
            learning_rate: 0.001,
            shuffle: true,
        }
    }
}

impl TrainConfig {
    pub fn validate(&self) -> Result<()> {
        if self.batch_size == 0 {
            return Err(Error::Config {
                field: "batch_size",
                reason: "must be at least 1".into(),
            });
        }
        if !(self.learning_rate >= 0.0 && self.learning_rate.is_finite()) {
            return Err(Error::Config {
                field: "learning_rate",
                reason: format!("must be a finite value >= 0, got {}", self.learning_rate),
            });
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn layout_names() {
        for name in NAMED_LAYOUTS {
            assert_eq!(name.parse::<Layout>().unwrap().to_string(), name);
        }
        let err = "CNN4-FC1".parse::<Layout>().unwrap_err().to_string();
        assert!(err.contains("CNN3-FC2"), "{err}");
        assert!("CNN1-FC2".parse::<Layout>().is_err());
        assert!("cnn1-fc1".parse::<Layout>().is_err());
    }

    #[test]
    fn text_round_trip() {
        let mut cfg = ModelConfig::new(Layout::new(3, 2), 6653, 250);
        cfg.l2_coeff = 3.7e-5;
        cfg.dropout_rate = 0.125;
        cfg.reverse = false;
        assert_eq!(ModelConfig::from_text(&cfg.to_text()).unwrap(), cfg);
    }

    #[test]
    fn missing_key_rejected() {
        let cfg = ModelConfig::new(Layout::new(1, 1), 42, 1000);
        let text: String = cfg
            .to_text()
            .lines()
            .filter(|l| !l.starts_with("fc_hidden"))
            .map(|l| format!("{l}\n"))
            .collect();
        assert!(ModelConfig::from_text(&text).is_err());
    }

    #[test]
    fn validation_names_field() {
        let mut cfg = ModelConfig::new(Layout::new(1, 1), 42, 1000);
        cfg.conv_layers = 0;
        match cfg.validate() {
            Err(Error::Config { field, .. }) => assert_eq!(field, "conv_layers"),
            other => panic!("unexpected {other:?}"),
        }
        let mut cfg = ModelConfig::new(Layout::new(1, 1), 42, 1000);
        cfg.kernel_size = 4;
        assert!(matches!(
            cfg.validate(),
            Err(Error::Config {
                field: "kernel_size",
                ..
            })
        ));
    }

    #[test]
    fn set_by_key() {
        let mut cfg = ModelConfig::new(Layout::new(1, 1), 42, 1000);
        cfg.set("feature-maps", "350").unwrap();
        cfg.set("layout", "CNN3-FC2").unwrap();
        cfg.set("max-len", "64").unwrap();
        assert_eq!(
            (
                cfg.feature_maps,
                cfg.conv_layers,
                cfg.fc_layers,
                cfg.max_length
            ),
            (350, 3, 2, 64)
        );
        assert!(cfg.set("bogus", "1").is_err());
        assert!(cfg.set("embed_dim", "x").is_err());
    }
}
