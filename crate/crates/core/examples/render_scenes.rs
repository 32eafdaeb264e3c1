//! Writes a 15-frame reach sequence plus its truth mask, ready for the CLI:
//!
//! ```text
//! cargo run --example render_scenes -- scenes
//! fastorient --input 'scenes/reach_*.png'
//! ```

use std::path::PathBuf;

use fastorient::save_image;
use fastorient::synth::scene::{render_scene, Background, SceneSpec, Shape};

fn main() -> fastorient::Result<()> {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "scenes".into()));
    std::fs::create_dir_all(&dir).map_err(|e| fastorient::Error::Io { path: dir.clone(), source: e })?;

    let mut spec = SceneSpec::new(Background::DeskClutter, Shape::Bar);
    spec.true_angle_deg = 40.0;
    spec.noise_sigma = 8.0;
    spec.jitter_px = 5;
    let scene = render_scene(&spec, 15, 2018);
    for (i, frame) in scene.frames.iter().enumerate() {
        save_image(frame, dir.join(format!("reach_{i:02}.png")))?;
    }
    save_image(&scene.truth_mask, dir.join("truth.png"))?;
    println!(
        "wrote 15 frames to {} (true angle {} deg, expected gripper {} deg)",
        dir.display(),
        scene.true_angle_deg,
        fastorient::gripper_angle(scene.true_angle_deg)
    );
    Ok(())
}
