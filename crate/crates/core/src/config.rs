use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::orient::OrientConfig;
use crate::preprocess::PreprocessConfig;
use crate::segmentation::SegmentationConfig;

/// Every tunable of the pipeline. Deserializes from TOML with one table
/// per stage; missing keys take their defaults.
///
/// ```toml
/// # debug_dir = "stages"
///
/// [preprocess]
/// dark_fraction_threshold = 0.325
/// dark_gray_lo = 95
/// dark_gray_hi = 125
/// grayscale_spread = 20
/// white_lo = 200
/// black_hi = 40
/// paint_color = [77, 153, 77]
///
/// [segmentation]
/// min_area = 1500
/// se_radius = 3
/// histogram_bins = 256
///
/// [orient]
/// frame_count = 15
/// min_detected_frames = 8
/// round_eccentricity_threshold = 0.6
/// ```
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PipelineConfig {
    pub preprocess: PreprocessConfig,
    pub segmentation: SegmentationConfig,
    pub orient: OrientConfig,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub debug_dir: Option<PathBuf>,
}

impl PipelineConfig {
    pub fn validate(&self) -> Result<()> {
        self.preprocess.validate()?;
        self.segmentation.validate()?;
        self.orient.validate()
    }

    pub fn from_toml_str(text: &str) -> Result<Self> {
        let cfg: Self = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_toml_str(&text).map_err(|e| match e {
            Error::Config(msg) => Error::Config(format!("{}: {msg}", path.display())),
            other => other,
        })
    }

    /// The default configuration rendered as TOML.
    pub fn default_toml() -> String {
        toml::to_string_pretty(&Self::default()).expect("default config serializes")
    }
}
