//! Per-frame detection and the multi-frame grasp computation.
//!
//! A frame goes through: grayscale painting, HSV projection, S/V Otsu
//! binarization, mask refinement, labeling, region features and target
//! selection. A sequence of frames is reduced to one axis by the axial
//! medoid of the per-frame angles, and the gripper is set perpendicular.

use rayon::prelude::*;
use serde::Serialize;

use crate::colorspace::rgb_to_hsv;
use crate::config::PipelineConfig;
use crate::error::{Error, Result};
use crate::image::{BinaryMask, HsvImage, RgbImage};
use crate::orient::{gripper_angle, median_orientation, select_target, OrientConfig};
use crate::preprocess::{paint_grayscale_traced, PaintBranch};
use crate::regions::{label_components, region_props, LabelMap, Region};
use crate::segmentation::{binarize_traced, refine_mask};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FrameStatus {
    Detected,
    NoTarget,
}

/// Diagnostics gathered while processing one frame.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FrameTrace {
    pub paint_branch: PaintBranch,
    pub dark_pixels: usize,
    pub repainted_pixels: usize,
    pub saturation_threshold: u8,
    pub value_threshold: u8,
    pub regions_found: usize,
    /// Share of the selected region's pixels that had been repainted.
    pub target_painted_fraction: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FrameResult {
    pub frame_index: usize,
    pub status: FrameStatus,
    pub region: Option<Region>,
    pub object_angle_deg: Option<f64>,
    pub round_flag: bool,
    pub trace: FrameTrace,
}

/// Intermediate rasters of one frame, for debug dumps and scoring.
#[derive(Clone, Debug)]
pub struct FrameStages {
    pub painted: RgbImage,
    pub hsv: HsvImage,
    pub binary: BinaryMask,
    pub refined: BinaryMask,
    pub labels: LabelMap,
}

impl FrameStages {
    /// Pixels of the selected region, if any.
    pub fn target_mask(&self, result: &FrameResult) -> Option<BinaryMask> {
        result.region.as_ref().map(|r| self.labels.mask_of(r.label))
    }
}

pub fn process_frame(img: &RgbImage, cfg: &PipelineConfig, frame_index: usize) -> FrameResult {
    process_frame_staged(img, cfg, frame_index).0
}

pub fn process_frame_staged(
    img: &RgbImage,
    cfg: &PipelineConfig,
    frame_index: usize,
) -> (FrameResult, FrameStages) {
    let painted = paint_grayscale_traced(img, &cfg.preprocess);
    let hsv = rgb_to_hsv(&painted.image);
    let binarized = binarize_traced(&hsv);
    let refined = refine_mask(&binarized.mask, &cfg.segmentation);
    let labels = label_components(&refined);
    let regions = region_props(&labels);
    let target = select_target(&regions, img.center()).cloned();

    let target_painted_fraction = target.as_ref().map(|r| {
        let hits = labels
            .labels()
            .iter()
            .zip(&painted.repainted)
            .filter(|(&l, &p)| l == r.label && p)
            .count();
        hits as f64 / r.area as f64
    });
    let trace = FrameTrace {
        paint_branch: painted.branch,
        dark_pixels: painted.dark_pixels,
        repainted_pixels: painted.repainted_count(),
        saturation_threshold: binarized.saturation_threshold,
        value_threshold: binarized.value_threshold,
        regions_found: regions.len(),
        target_painted_fraction,
    };
    let result = FrameResult {
        frame_index,
        status: if target.is_some() {
            FrameStatus::Detected
        } else {
            FrameStatus::NoTarget
        },
        object_angle_deg: target.as_ref().map(|r| r.orientation_deg),
        round_flag: target
            .as_ref()
            .is_some_and(|r| r.eccentricity < cfg.orient.round_eccentricity_threshold),
        region: target,
        trace,
    };
    let stages = FrameStages {
        painted: painted.image,
        hsv,
        binary: binarized.mask,
        refined,
        labels,
    };
    (result, stages)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GraspStatus {
    Ok,
    NoTarget,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GraspCommand {
    pub status: GraspStatus,
    pub median_object_angle_deg: Option<f64>,
    pub gripper_angle_deg: Option<f64>,
    pub round_object: bool,
    pub frames: Vec<FrameResult>,
}

impl GraspCommand {
    pub fn detected_frames(&self) -> usize {
        self.frames.iter().filter(|f| f.status == FrameStatus::Detected).count()
    }
}

/// Processes a burst of exactly `cfg.orient.frame_count` frames.
pub fn run_pipeline(frames: &[RgbImage], cfg: &PipelineConfig) -> Result<GraspCommand> {
    if frames.is_empty() {
        return Err(Error::EmptySequence);
    }
    if frames.len() != cfg.orient.frame_count {
        return Err(Error::FrameCount {
            expected: cfg.orient.frame_count,
            actual: frames.len(),
        });
    }
    let results: Vec<FrameResult> = frames
        .par_iter()
        .enumerate()
        .map(|(i, f)| process_frame(f, cfg, i))
        .collect();
    Ok(aggregate_frames(results, &cfg.orient))
}

/// Reduces per-frame results (in frame order) to a grasp command.
pub fn aggregate_frames(frames: Vec<FrameResult>, cfg: &OrientConfig) -> GraspCommand {
    let angles: Vec<f64> = frames.iter().filter_map(|f| f.object_angle_deg).collect();
    if angles.is_empty() || angles.len() < cfg.min_detected_frames {
        return GraspCommand {
            status: GraspStatus::NoTarget,
            median_object_angle_deg: None,
            gripper_angle_deg: None,
            round_object: false,
            frames,
        };
    }
    let median = median_orientation(&angles).expect("non-empty");
    let round = frames
        .iter()
        .filter(|f| f.status == FrameStatus::Detected && f.round_flag)
        .count();
    GraspCommand {
        status: GraspStatus::Ok,
        median_object_angle_deg: Some(median),
        gripper_angle_deg: Some(gripper_angle(median)),
        round_object: 2 * round > angles.len(),
        frames,
    }
}
