//! Grayscale repainting on the two branches: a gray tool on a wooden desk
//! (every gray pixel repainted) and a white part on a dark gray bench (only
//! near-white pixels repainted).

use fastorient::preprocess::{paint_grayscale_traced, PreprocessConfig};
use fastorient::synth::scene::{render_scene, Background, SceneSpec, Shape};

fn main() {
    let cfg = PreprocessConfig::default();
    let mut desk = SceneSpec::new(Background::DeskClutter, Shape::LTool);
    desk.object_color = [140, 140, 142];
    let bench = SceneSpec::new(Background::Dark, Shape::Bar);

    for (name, spec) in [("gray tool on desk", desk), ("white bar on dark bench", bench)] {
        let frame = &render_scene(&spec, 1, 0).frames[0];
        let painted = paint_grayscale_traced(frame, &cfg);
        println!(
            "{name}: branch {:?}, {} dark pixels ({:.1}%), {} repainted",
            painted.branch,
            painted.dark_pixels,
            100.0 * painted.dark_pixels as f64 / frame.len() as f64,
            painted.repainted_count()
        );
    }
}
