//! Detection categories by IoU and a 2D parallel-jaw feasibility proxy.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::image::BinaryMask;

pub const COMPLETE_IOU: f64 = 0.90;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DetectionCategory {
    Complete,
    Partial,
    None,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DetectionVerdict {
    pub category: DetectionCategory,
    pub iou: f64,
}

pub fn iou(a: &BinaryMask, b: &BinaryMask) -> Result<f64> {
    if a.dimensions() != b.dimensions() {
        return Err(Error::DimensionMismatch {
            left: a.dimensions(),
            right: b.dimensions(),
        });
    }
    let (mut inter, mut union) = (0usize, 0usize);
    for (&p, &q) in a.bits().iter().zip(b.bits()) {
        inter += (p && q) as usize;
        union += (p || q) as usize;
    }
    Ok(if union == 0 { 1.0 } else { inter as f64 / union as f64 })
}

/// Scores the selected region against the truth with the default cutoff.
pub fn score_detection(detected: Option<&BinaryMask>, truth: &BinaryMask) -> Result<DetectionVerdict> {
    score_detection_with(detected, truth, COMPLETE_IOU)
}

pub fn score_detection_with(
    detected: Option<&BinaryMask>,
    truth: &BinaryMask,
    complete_iou: f64,
) -> Result<DetectionVerdict> {
    let Some(mask) = detected else {
        return Ok(DetectionVerdict {
            category: DetectionCategory::None,
            iou: 0.0,
        });
    };
    let iou = iou(mask, truth)?;
    let category = if iou >= complete_iou {
        DetectionCategory::Complete
    } else {
        DetectionCategory::Partial
    };
    Ok(DetectionVerdict { category, iou })
}

/// Width of `mask` measured along the direction at `angle_deg` (y-up):
/// max minus min of pixel-center projections.
pub fn projected_extent(mask: &BinaryMask, angle_deg: f64) -> Result<f64> {
    let (sin, cos) = angle_deg.to_radians().sin_cos();
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for (x, y) in mask.foreground() {
        let p = x as f64 * cos - y as f64 * sin;
        lo = lo.min(p);
        hi = hi.max(p);
    }
    if lo > hi {
        return Err(Error::EmptyMask);
    }
    Ok(hi - lo)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GraspCheck {
    pub feasible: bool,
    pub extent: f64,
}

/// Closing the jaws along `gripper_angle_deg` fits if the object's extent
/// in that direction is within the aperture.
pub fn grasp_feasible(truth: &BinaryMask, gripper_angle_deg: f64, aperture: f64) -> Result<GraspCheck> {
    let extent = projected_extent(truth, gripper_angle_deg)?;
    Ok(GraspCheck {
        feasible: extent <= aperture,
        extent,
    })
}

/// Smallest extent over the integer angles 0..179 and the angle giving it.
pub fn min_extent_sweep(mask: &BinaryMask) -> Result<(f64, f64)> {
    let mut best = (0.0, f64::INFINITY);
    for a in 0..180 {
        let e = projected_extent(mask, a as f64)?;
        if e < best.1 {
            best = (a as f64, e);
        }
    }
    Ok(best)
}
