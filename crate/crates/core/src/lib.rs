//! Grasp orientation from a burst of wrist-camera frames.
//!
//! Each frame goes through grayscale repainting, HSV conversion, Otsu
//! binarization on saturation and value, mask cleanup (small-area removal,
//! hole filling, disk opening and closing), 8-connected labeling and
//! moment-based region properties. The region nearest the image center is
//! the target; its long-axis angle is collected per frame, the axial median
//! over the burst is taken and the gripper is turned perpendicular to it.
//!
//! ```no_run
//! use fastorient::{load_image, run_pipeline, PipelineConfig};
//!
//! let cfg = PipelineConfig::default();
//! let frames = (0..15)
//!     .map(|i| load_image(format!("scene/reach_{i:02}.png")))
//!     .collect::<Result<Vec<_>, _>>()?;
//! let cmd = run_pipeline(&frames, &cfg)?;
//! println!("{:?}", cmd.gripper_angle_deg);
//! # Ok::<(), fastorient::Error>(())
//! ```
//!
//! The `examples/` directory has one runnable program per stage:
//! `paint_grayscale`, `otsu_binarize`, `refine_mask`, `region_props`,
//! `median_orientation`, `detect_orientation`, `grasp_check`,
//! `render_scenes` and the `fastorient-eval` grid runner.
//!
//! Angles are degrees, counterclockwise from the +x axis with y pointing up,
//! always normalized to `(-90, 90]`.

pub mod cli;
pub mod colorspace;
pub mod config;
pub mod debug;
pub mod error;
pub mod image;
pub mod orient;
pub mod pipeline;
pub mod preprocess;
pub mod regions;
pub mod report;
pub mod segmentation;
pub mod synth;

pub use colorspace::{pixel_to_hsv, rgb_to_hsv};
pub use config::PipelineConfig;
pub use error::{Error, Result};
pub use image::{load_image, save_image, BinaryMask, Hsv, HsvImage, Rgb, RgbImage};
pub use orient::{axial_distance, gripper_angle, median_orientation, select_target, OrientConfig};
pub use pipeline::{
    aggregate_frames, process_frame, process_frame_staged, run_pipeline, FrameResult, FrameStatus, GraspCommand,
    GraspStatus,
};
pub use preprocess::{paint_grayscale, PaintBranch, PreprocessConfig};
pub use regions::{label_components, mask_props, region_props, LabelMap, Region};
pub use report::OutputDocument;
pub use segmentation::{binarize, fill_holes, otsu_threshold, refine_mask, remove_small_areas, SegmentationConfig};
