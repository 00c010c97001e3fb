use std::fs::File;
use std::io::BufReader;
use std::path::PathBuf;

use charcnn_core::encoding::{build_pinyin_alphabet, CHINESE_MAX_LENGTH, PINYIN_MAX_LENGTH};
use charcnn_core::model::NAMED_LAYOUTS;
use charcnn_core::{Alphabet, Layout, ModelConfig, TrainConfig};

use crate::args::{ModelArgs, TrainArgs};
use crate::error::{CliError, CliResult};
use crate::io::require_file;

/// Where the alphabet comes from.
#[derive(Debug, Clone, PartialEq)]
pub enum AlphabetSource {
    Pinyin,
    File(PathBuf),
}

impl std::str::FromStr for AlphabetSource {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s == "pinyin" {
            Ok(AlphabetSource::Pinyin)
        } else if let Some(path) = s.strip_prefix("file:") {
            Ok(AlphabetSource::File(PathBuf::from(path)))
        } else {
            Err(format!("expected `pinyin` or `file:PATH`, got {s:?}"))
        }
    }
}

impl AlphabetSource {
    pub fn validate(&self) -> CliResult<()> {
        match self {
            AlphabetSource::Pinyin => Ok(()),
            AlphabetSource::File(p) => require_file(p),
        }
    }

    pub fn load(&self) -> CliResult<Alphabet> {
        match self {
            AlphabetSource::Pinyin => Ok(build_pinyin_alphabet()),
            AlphabetSource::File(p) => {
                let f = File::open(p).map_err(|e| CliError::at(p, e))?;
                Alphabet::read_from(BufReader::new(f)).map_err(|e| CliError::at(p, e))
            }
        }
    }

    /// Pinyin text is quantised to 1000 characters, Chinese text to 250.
    pub fn default_max_length(&self) -> usize {
        match self {
            AlphabetSource::Pinyin => PINYIN_MAX_LENGTH,
            AlphabetSource::File(_) => CHINESE_MAX_LENGTH,
        }
    }
}

pub fn parse_layout(name: &str) -> CliResult<Layout> {
    name.parse().map_err(|_: charcnn_core::Error| {
        CliError::input(format!(
            "unknown layout {name:?}; valid layouts: {}",
            NAMED_LAYOUTS.join(", ")
        ))
    })
}

const TRAIN_KEYS: [&str; 7] = [
    "lr",
    "learning_rate",
    "batch",
    "batch_size",
    "epochs",
    "seed",
    "shuffle",
];

fn normalize(key: &str) -> String {
    key.trim().replace('-', "_")
}

fn split_override(raw: &str) -> CliResult<(String, &str)> {
    raw.split_once('=')
        .map(|(k, v)| (normalize(k), v.trim()))
        .ok_or_else(|| CliError::input(format!("--set expects key=value, got {raw:?}")))
}

fn parse_value<T: std::str::FromStr>(key: &str, value: &str) -> CliResult<T> {
    value
        .parse()
        .map_err(|_| CliError::input(format!("invalid value {value:?} for {key}")))
}

/// Model configuration from flags, then `--set` overrides, in that order.
/// Returns whether the class count was given explicitly.
pub fn model_config(args: &ModelArgs, alphabet_size: usize) -> CliResult<(ModelConfig, bool)> {
    let layout = parse_layout(&args.layout)?;
    let max_len = args
        .max_len
        .unwrap_or_else(|| args.alphabet.default_max_length());
    let mut cfg = ModelConfig::new(layout, alphabet_size, max_len);
    if let Some(v) = args.embed_dim {
        cfg.embed_dim = v;
    }
    if let Some(v) = args.feature_maps {
        cfg.feature_maps = v;
    }
    if let Some(v) = args.fc_hidden {
        cfg.fc_hidden = v;
    }
    if let Some(v) = args.dropout {
        cfg.dropout_rate = v;
    }
    if let Some(v) = args.l2 {
        cfg.l2_coeff = v;
    }
    let mut explicit_classes = false;
    for raw in &args.set {
        let (key, value) = split_override(raw)?;
        if TRAIN_KEYS.contains(&key.as_str()) {
            continue;
        }
        if key == "layout" {
            let l = parse_layout(value)?;
            cfg.conv_layers = l.conv_layers;
            cfg.fc_layers = l.fc_layers;
            continue;
        }
        explicit_classes |= key == "num_classes" || key == "classes";
        cfg.set(&key, value)?;
    }
    cfg.validate()?;
    Ok((cfg, explicit_classes))
}

pub fn train_config(args: &TrainArgs, overrides: &[String]) -> CliResult<TrainConfig> {
    let mut tc = TrainConfig {
        batch_size: args.batch,
        epochs: args.epochs,
        seed: args.seed,
        learning_rate: args.lr,
        shuffle: true,
    };
    for raw in overrides {
        let (key, value) = split_override(raw)?;
        match key.as_str() {
            "lr" | "learning_rate" => tc.learning_rate = parse_value(&key, value)?,
            "batch" | "batch_size" => tc.batch_size = parse_value(&key, value)?,
            "epochs" => tc.epochs = parse_value(&key, value)?,
            "seed" => tc.seed = parse_value(&key, value)?,
            "shuffle" => tc.shuffle = parse_value(&key, value)?,
            _ => {}
        }
    }
    tc.validate()?;
    Ok(tc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn model_args(set: &[&str]) -> ModelArgs {
        ModelArgs {
            layout: "CNN2-FC1".into(),
            alphabet: AlphabetSource::Pinyin,
            max_len: None,
            embed_dim: Some(8),
            feature_maps: None,
            fc_hidden: None,
            dropout: None,
            l2: None,
            set: set.iter().map(|s| s.to_string()).collect(),
        }
    }

    #[test]
    fn alphabet_source() {
        assert_eq!("pinyin".parse::<AlphabetSource>().unwrap(), AlphabetSource::Pinyin);
        assert_eq!(
            "file:a/b.txt".parse::<AlphabetSource>().unwrap(),
            AlphabetSource::File("a/b.txt".into())
        );
        assert!("latin".parse::<AlphabetSource>().is_err());
    }

    #[test]
    fn overrides_follow_flags() {
        let (cfg, explicit) = model_config(&model_args(&["embed-dim=4", "num_classes=3", "lr=0.5"]), 42).unwrap();
        assert_eq!((cfg.embed_dim, cfg.num_classes, cfg.max_length), (4, 3, 1000));
        assert!(explicit);
        let tc = train_config(
            &TrainArgs {
                lr: 0.001,
                batch: 128,
                epochs: 10,
                seed: 0,
            },
            &["lr=0.5".to_string(), "batch=7".to_string()],
        )
        .unwrap();
        assert_eq!((tc.learning_rate, tc.batch_size), (0.5, 7));
    }

    #[test]
    fn bad_overrides_are_input_errors() {
        for set in ["nonsense", "colour=blue", "feature_maps=many", "layout=CNN7-FC1"] {
            let err = model_config(&model_args(&[set]), 42).unwrap_err();
            assert_eq!(err.exit_code(), 2, "{set}");
        }
    }
}
