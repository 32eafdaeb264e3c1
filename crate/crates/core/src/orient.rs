//! Target selection and axial-angle arithmetic.
//!
//! Object axes are 180-degree periodic, so every comparison here goes
//! through [`axial_distance`] instead of plain subtraction.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::regions::{distance_to_point, normalize_axial, Region};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OrientConfig {
    pub frame_count: usize,
    /// Quorum of frames that must detect a target.
    pub min_detected_frames: usize,
    /// Regions below this eccentricity are flagged round.
    pub round_eccentricity_threshold: f64,
}

impl Default for OrientConfig {
    fn default() -> Self {
        Self {
            frame_count: 15,
            min_detected_frames: 8,
            round_eccentricity_threshold: 0.6,
        }
    }
}

impl OrientConfig {
    pub fn validate(&self) -> Result<()> {
        if self.min_detected_frames < 1 || self.min_detected_frames > self.frame_count {
            return Err(Error::Config(format!(
                "orient.min_detected_frames must be in [1, frame_count={}], got {}",
                self.frame_count, self.min_detected_frames
            )));
        }
        if !(0.0..=1.0).contains(&self.round_eccentricity_threshold) {
            return Err(Error::Config(format!(
                "orient.round_eccentricity_threshold must be in [0, 1], got {}",
                self.round_eccentricity_threshold
            )));
        }
        Ok(())
    }

    /// Config for a shorter sequence of `n` frames, with the quorum lowered
    /// proportionally: `ceil(min_detected_frames * n / frame_count)`.
    pub fn scaled_to(&self, n: usize) -> Self {
        let quorum = (self.min_detected_frames * n).div_ceil(self.frame_count).clamp(1, n.max(1));
        Self {
            frame_count: n,
            min_detected_frames: quorum,
            ..self.clone()
        }
    }
}

/// The region whose centroid is nearest `center`. Ties go to the larger
/// area, then the smaller label.
pub fn select_target(regions: &[Region], center: (f64, f64)) -> Option<&Region> {
    regions.iter().min_by(|a, b| {
        distance_to_point(a, center)
            .total_cmp(&distance_to_point(b, center))
            .then(b.area.cmp(&a.area))
            .then(a.label.cmp(&b.label))
    })
}

/// Separation of two axes in degrees, in `[0, 90]`.
pub fn axial_distance(a: f64, b: f64) -> f64 {
    let d = (a - b).abs().rem_euclid(180.0);
    d.min(180.0 - d)
}

/// Signed axial difference `a - b` mapped to `(-90, 90]`.
pub fn axial_difference(a: f64, b: f64) -> f64 {
    normalize_axial(a - b)
}

/// Axial medoid: the sample minimizing the summed axial distance to all
/// samples; ties go to the smallest angle value.
pub fn median_orientation(angles: &[f64]) -> Result<f64> {
    if angles.is_empty() {
        return Err(Error::EmptyAngles);
    }
    // sorting first makes the float sums independent of input order
    let mut sorted = angles.to_vec();
    sorted.sort_by(f64::total_cmp);
    let mut best = sorted[0];
    let mut best_cost = f64::INFINITY;
    for &candidate in &sorted {
        let cost: f64 = sorted.iter().map(|&a| axial_distance(candidate, a)).sum();
        if cost < best_cost {
            best_cost = cost;
            best = candidate;
        }
    }
    Ok(best)
}

/// The gripper closing direction: perpendicular to the object axis.
pub fn gripper_angle(object_angle: f64) -> f64 {
    // a single +-90 step keeps the difference to the input exactly 90
    let a = normalize_axial(object_angle);
    if a > 0.0 {
        a - 90.0
    } else {
        a + 90.0
    }
}
