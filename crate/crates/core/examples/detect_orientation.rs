//! Full burst: frames in, grasp command out.
//!
//! ```text
//! cargo run --example detect_orientation                     # rendered burst
//! cargo run --example detect_orientation -- scene/reach_*.png
//! ```

use fastorient::orient::OrientConfig;
use fastorient::synth::scene::{render_scene, Background, SceneSpec, Shape};
use fastorient::{load_image, run_pipeline, OutputDocument, PipelineConfig};

fn main() -> fastorient::Result<()> {
    let paths: Vec<String> = std::env::args().skip(1).collect();
    let frames = if paths.is_empty() {
        let mut spec = SceneSpec::new(Background::OpenLab, Shape::BananaArc);
        spec.true_angle_deg = -55.0;
        spec.noise_sigma = 8.0;
        spec.jitter_px = 5;
        render_scene(&spec, 15, 1).frames
    } else {
        paths.iter().map(load_image).collect::<Result<_, _>>()?
    };

    let cfg = PipelineConfig {
        orient: OrientConfig::default().scaled_to(frames.len()),
        ..Default::default()
    };
    let cmd = run_pipeline(&frames, &cfg)?;
    print!("{}", OutputDocument::from(&cmd).to_json());
    Ok(())
}
