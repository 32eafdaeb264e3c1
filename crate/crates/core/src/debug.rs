//! Per-frame stage dumps: input, painted, value channel, binary, refined,
//! and an overlay with the object axis (blue) and gripper line (yellow).

use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::image::{save_image, Rgb, RgbImage};
use crate::orient::gripper_angle;
use crate::pipeline::{FrameResult, FrameStages};

pub const AXIS_COLOR: Rgb = [0, 0, 255];
pub const GRIPPER_COLOR: Rgb = [255, 255, 0];

pub fn stage_path(dir: &Path, frame_index: usize, stage: usize) -> PathBuf {
    dir.join(format!("frame{frame_index}_stage{stage}.png"))
}

/// Writes the six stage images for one frame into `dir`.
pub fn dump_debug_stages(
    dir: &Path,
    input: &RgbImage,
    stages: &FrameStages,
    result: &FrameResult,
) -> Result<()> {
    std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let k = result.frame_index;
    save_image(input, stage_path(dir, k, 1))?;
    save_image(&stages.painted, stage_path(dir, k, 2))?;
    save_image(&stages.hsv.value_as_gray(), stage_path(dir, k, 3))?;
    save_image(&stages.binary, stage_path(dir, k, 4))?;
    save_image(&stages.refined, stage_path(dir, k, 5))?;
    save_image(&overlay(input, result), stage_path(dir, k, 6))
}

/// Input with the detected axis and the perpendicular gripper line drawn
/// through the target centroid. Unchanged copy when nothing was detected.
pub fn overlay(input: &RgbImage, result: &FrameResult) -> RgbImage {
    let mut out = input.clone();
    if let (Some(region), Some(angle)) = (&result.region, result.object_angle_deg) {
        let half_major = (region.major_axis_length / 2.0).max(10.0);
        let half_minor = (region.minor_axis_length / 2.0).max(10.0);
        draw_axis_line(&mut out, region.centroid, gripper_angle(angle), half_minor, GRIPPER_COLOR);
        draw_axis_line(&mut out, region.centroid, angle, half_major, AXIS_COLOR);
    }
    out
}

/// Draws a 1-px segment of half-length `half_len` through `center` at
/// `angle_deg` (counterclockwise, y-up).
pub fn draw_axis_line(img: &mut RgbImage, center: (f64, f64), angle_deg: f64, half_len: f64, color: Rgb) {
    let (ux, uy) = (angle_deg.to_radians().cos(), -angle_deg.to_radians().sin());
    let steps = (half_len * 4.0).ceil() as i64;
    for i in -steps..=steps {
        let t = i as f64 / 4.0;
        let x = (center.0 + t * ux).round();
        let y = (center.1 + t * uy).round();
        if x >= 0.0 && y >= 0.0 && (x as usize) < img.width() && (y as usize) < img.height() {
            img.put_pixel(x as usize, y as usize, color);
        }
    }
}
