//! Saturation/value Otsu binarization and mask cleanup.

mod morphology;
mod otsu;

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

pub use morphology::{dilate, disk_offsets, erode, morph_close, morph_open};
pub use otsu::{otsu_threshold, unit_bin, unit_histogram, BINS};

use crate::error::{Error, Result};
use crate::image::{BinaryMask, HsvImage};
use crate::regions::label_components;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SegmentationConfig {
    /// Components smaller than this many pixels are discarded.
    pub min_area: usize,
    /// Disk radius for opening and closing.
    pub se_radius: usize,
    /// Fixed at 256; present so config files can state it.
    pub histogram_bins: usize,
}

impl Default for SegmentationConfig {
    fn default() -> Self {
        Self {
            min_area: 1500,
            se_radius: 3,
            histogram_bins: BINS,
        }
    }
}

impl SegmentationConfig {
    pub fn validate(&self) -> Result<()> {
        if self.min_area < 1 {
            return Err(Error::Config("segmentation.min_area must be >= 1".into()));
        }
        if self.se_radius < 1 {
            return Err(Error::Config("segmentation.se_radius must be >= 1".into()));
        }
        if self.histogram_bins != BINS {
            return Err(Error::Config(format!(
                "segmentation.histogram_bins is fixed at {BINS}, got {}",
                self.histogram_bins
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct Binarized {
    pub mask: BinaryMask,
    pub saturation_threshold: u8,
    pub value_threshold: u8,
}

/// Foreground iff both the saturation bin and the value bin lie strictly
/// above their Otsu thresholds. Hue is ignored.
///
/// A channel whose histogram occupies a single bin has no split at all;
/// such a frame is all background.
pub fn binarize(hsv: &HsvImage) -> BinaryMask {
    binarize_traced(hsv).mask
}

pub fn binarize_traced(hsv: &HsvImage) -> Binarized {
    let s_hist = unit_histogram(hsv.pixels().iter().map(|p| p.s));
    let v_hist = unit_histogram(hsv.pixels().iter().map(|p| p.v));
    // an HsvImage always has at least one pixel
    let ts = otsu_threshold(&s_hist).expect("non-empty histogram");
    let tv = otsu_threshold(&v_hist).expect("non-empty histogram");
    let splittable = |h: &[u64]| h.iter().filter(|&&c| c > 0).count() > 1;
    let bits = if splittable(&s_hist) && splittable(&v_hist) {
        hsv.pixels()
            .iter()
            .map(|p| unit_bin(p.s) > ts as usize && unit_bin(p.v) > tv as usize)
            .collect()
    } else {
        vec![false; hsv.pixels().len()]
    };
    Binarized {
        mask: BinaryMask::from_bits(hsv.width(), hsv.height(), bits).expect("same dimensions"),
        saturation_threshold: ts,
        value_threshold: tv,
    }
}

/// Clears every 8-connected component with fewer than `min_area` pixels.
pub fn remove_small_areas(mask: &BinaryMask, min_area: usize) -> BinaryMask {
    let labels = label_components(mask);
    let areas = labels.areas();
    let bits = labels
        .labels()
        .iter()
        .map(|&l| l != 0 && areas[l as usize] >= min_area)
        .collect();
    BinaryMask::from_bits(mask.width(), mask.height(), bits).expect("same dimensions")
}

/// Background not 4-connected to the border through background becomes
/// foreground.
pub fn fill_holes(mask: &BinaryMask) -> BinaryMask {
    let (w, h) = mask.dimensions();
    let bits = mask.bits();
    let mut reached = vec![false; w * h];
    let mut queue = VecDeque::new();
    let seed = |i: usize, reached: &mut Vec<bool>, queue: &mut VecDeque<usize>| {
        if !bits[i] && !reached[i] {
            reached[i] = true;
            queue.push_back(i);
        }
    };
    for x in 0..w {
        seed(x, &mut reached, &mut queue);
        seed((h - 1) * w + x, &mut reached, &mut queue);
    }
    for y in 0..h {
        seed(y * w, &mut reached, &mut queue);
        seed(y * w + w - 1, &mut reached, &mut queue);
    }
    while let Some(i) = queue.pop_front() {
        let (x, y) = (i % w, i / w);
        if x > 0 {
            seed(i - 1, &mut reached, &mut queue);
        }
        if x + 1 < w {
            seed(i + 1, &mut reached, &mut queue);
        }
        if y > 0 {
            seed(i - w, &mut reached, &mut queue);
        }
        if y + 1 < h {
            seed(i + w, &mut reached, &mut queue);
        }
    }
    let out = reached.iter().map(|&r| !r).collect();
    BinaryMask::from_bits(w, h, out).expect("same dimensions")
}

/// remove_small_areas, fill_holes, open, close; in that order.
pub fn refine_mask(mask: &BinaryMask, cfg: &SegmentationConfig) -> BinaryMask {
    let m = remove_small_areas(mask, cfg.min_area);
    let m = fill_holes(&m);
    let m = morph_open(&m, cfg.se_radius);
    morph_close(&m, cfg.se_radius)
}
