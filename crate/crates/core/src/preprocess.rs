//! Grayscale repainting ahead of HSV thresholding.
//!
//! Achromatic pixels have zero saturation and would never survive the
//! saturation threshold, so they are repainted with a fixed chromatic color.
//! When dark pixels dominate the frame only near-white pixels are repainted,
//! otherwise a dark background would itself turn into a detectable object.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::image::{Rgb, RgbImage};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PreprocessConfig {
    /// Fraction of the frame that must be dark to switch to white-only painting.
    pub dark_fraction_threshold: f64,
    pub dark_gray_lo: u8,
    pub dark_gray_hi: u8,
    /// Maximum channel spread (max - min) for a pixel to count as grayscale.
    pub grayscale_spread: u8,
    pub white_lo: u8,
    pub black_hi: u8,
    pub paint_color: Rgb,
}

impl Default for PreprocessConfig {
    fn default() -> Self {
        Self {
            dark_fraction_threshold: 0.325,
            dark_gray_lo: 95,
            dark_gray_hi: 125,
            grayscale_spread: 20,
            white_lo: 200,
            black_hi: 40,
            paint_color: [77, 153, 77],
        }
    }
}

impl PreprocessConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.dark_fraction_threshold > 0.0 && self.dark_fraction_threshold < 1.0) {
            return Err(Error::Config(format!(
                "preprocess.dark_fraction_threshold must be in (0, 1), got {}",
                self.dark_fraction_threshold
            )));
        }
        if self.dark_gray_lo > self.dark_gray_hi {
            return Err(Error::Config(format!(
                "preprocess.dark_gray_lo ({}) exceeds dark_gray_hi ({})",
                self.dark_gray_lo, self.dark_gray_hi
            )));
        }
        if self.black_hi >= self.white_lo {
            return Err(Error::Config(format!(
                "preprocess.black_hi ({}) must be below white_lo ({})",
                self.black_hi, self.white_lo
            )));
        }
        if spread(self.paint_color) <= self.grayscale_spread {
            return Err(Error::Config(format!(
                "preprocess.paint_color {:?} is not chromatic (spread <= {})",
                self.paint_color, self.grayscale_spread
            )));
        }
        Ok(())
    }

    fn is_dark(&self, p: Rgb) -> bool {
        p == [0, 0, 0] || p.iter().all(|&c| (self.dark_gray_lo..=self.dark_gray_hi).contains(&c))
    }

    fn is_grayscale(&self, p: Rgb) -> bool {
        spread(p) <= self.grayscale_spread
    }

    fn is_white(&self, p: Rgb) -> bool {
        self.is_grayscale(p) && p.iter().all(|&c| c >= self.white_lo)
    }
}

fn spread(p: Rgb) -> u8 {
    let max = p[0].max(p[1]).max(p[2]);
    let min = p[0].min(p[1]).min(p[2]);
    max - min
}

/// Which repainting rule was applied to a frame.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PaintBranch {
    /// Every grayscale pixel was repainted.
    Normal,
    /// Dark pixels dominated; only white pixels were repainted.
    DarkDominant,
}

/// Output of [`paint_grayscale_traced`]: the repainted image and what happened.
#[derive(Clone, Debug)]
pub struct Painted {
    pub image: RgbImage,
    pub branch: PaintBranch,
    pub dark_pixels: usize,
    /// Per-pixel flag, `true` where the pixel was repainted.
    pub repainted: Vec<bool>,
}

impl Painted {
    pub fn repainted_count(&self) -> usize {
        self.repainted.iter().filter(|&&b| b).count()
    }
}

/// Pixels that are exactly black or have every channel in the dark-gray band.
pub fn count_dark_pixels(img: &RgbImage, cfg: &PreprocessConfig) -> usize {
    img.pixels().iter().filter(|&&p| cfg.is_dark(p)).count()
}

pub fn paint_grayscale(img: &RgbImage, cfg: &PreprocessConfig) -> RgbImage {
    paint_grayscale_traced(img, cfg).image
}

pub fn paint_grayscale_traced(img: &RgbImage, cfg: &PreprocessConfig) -> Painted {
    let dark_pixels = count_dark_pixels(img, cfg);
    let area = img.len() as f64;
    let branch = if dark_pixels as f64 > cfg.dark_fraction_threshold * area {
        PaintBranch::DarkDominant
    } else {
        PaintBranch::Normal
    };

    let mut out = img.clone();
    let mut repainted = vec![false; img.len()];
    for (p, flag) in out.pixels_mut().iter_mut().zip(repainted.iter_mut()) {
        let paint = match branch {
            PaintBranch::Normal => cfg.is_grayscale(*p),
            PaintBranch::DarkDominant => cfg.is_white(*p),
        };
        if paint {
            *p = cfg.paint_color;
            *flag = true;
        }
    }
    Painted {
        image: out,
        branch,
        dark_pixels,
        repainted,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> PreprocessConfig {
        PreprocessConfig::default()
    }

    #[test]
    fn all_black_vga_is_all_dark() {
        let img = RgbImage::new(640, 480, [0, 0, 0]).unwrap();
        assert_eq!(count_dark_pixels(&img, &cfg()), 307_200);
    }

    #[test]
    fn dark_gray_band_counts() {
        let img = RgbImage::new(7, 5, [110, 110, 110]).unwrap();
        assert_eq!(count_dark_pixels(&img, &cfg()), 35);
        let edge = RgbImage::new(2, 2, [95, 125, 95]).unwrap();
        assert_eq!(count_dark_pixels(&edge, &cfg()), 4);
        let just_out = RgbImage::new(2, 2, [94, 110, 110]).unwrap();
        assert_eq!(count_dark_pixels(&just_out, &cfg()), 0);
    }

    #[test]
    fn mid_dark_gray_is_not_counted() {
        let img = RgbImage::new(4, 4, [50, 50, 50]).unwrap();
        assert_eq!(count_dark_pixels(&img, &cfg()), 0);
    }

    #[test]
    fn normal_branch_paints_black() {
        let mut img = RgbImage::new(10, 10, [200, 30, 30]).unwrap();
        img.put_pixel(3, 3, [0, 0, 0]);
        let out = paint_grayscale_traced(&img, &cfg());
        assert_eq!(out.branch, PaintBranch::Normal);
        assert_eq!(out.image.pixel(3, 3), [77, 153, 77]);
        assert_eq!(out.image.pixel(0, 0), [200, 30, 30]);
        assert_eq!(out.repainted_count(), 1);
    }

    #[test]
    fn dark_dominant_branch_paints_only_white() {
        let mut img = RgbImage::new(640, 480, [0, 0, 0]).unwrap();
        img.put_pixel(100, 100, [255, 255, 255]);
        img.put_pixel(101, 100, [200, 30, 30]);
        let out = paint_grayscale_traced(&img, &cfg());
        assert_eq!(out.branch, PaintBranch::DarkDominant);
        assert_eq!(out.image.pixel(0, 0), [0, 0, 0]);
        assert_eq!(out.image.pixel(100, 100), [77, 153, 77]);
        assert_eq!(out.image.pixel(101, 100), [200, 30, 30]);
        assert_eq!(out.repainted_count(), 1);
    }

    #[test]
    fn branch_boundary_is_strict() {
        // exactly 32.5% dark stays on the normal branch
        let img = RgbImage::from_fn(40, 10, |x, y| if y * 40 + x < 130 { [0, 0, 0] } else { [90, 10, 200] }).unwrap();
        assert_eq!(count_dark_pixels(&img, &cfg()), 130);
        assert_eq!(paint_grayscale_traced(&img, &cfg()).branch, PaintBranch::Normal);
        let img = RgbImage::from_fn(40, 10, |x, y| if y * 40 + x < 131 { [0, 0, 0] } else { [90, 10, 200] }).unwrap();
        assert_eq!(paint_grayscale_traced(&img, &cfg()).branch, PaintBranch::DarkDominant);
    }

    #[test]
    fn validation_catches_each_invariant() {
        assert!(cfg().validate().is_ok());
        let bad = [
            PreprocessConfig { dark_fraction_threshold: 1.0, ..cfg() },
            PreprocessConfig { dark_fraction_threshold: 0.0, ..cfg() },
            PreprocessConfig { dark_gray_lo: 130, ..cfg() },
            PreprocessConfig { black_hi: 200, ..cfg() },
            PreprocessConfig { paint_color: [100, 110, 105], ..cfg() },
        ];
        for c in bad {
            assert!(matches!(c.validate(), Err(Error::Config(_))), "{c:?}");
        }
    }
}
