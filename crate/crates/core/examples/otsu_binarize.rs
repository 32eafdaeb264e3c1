//! Otsu thresholds on saturation and value. The cast shadow shares the
//! table's chromaticity, so it fails the saturation test even though it is
//! darker than everything else.

use fastorient::segmentation::binarize_traced;
use fastorient::synth::scene::{rasterize, render_scene, Background, SceneSpec, Shape};
use fastorient::{rgb_to_hsv, synth::score::iou};

fn main() {
    let mut spec = SceneSpec::new(Background::Beige, Shape::Ellipse);
    spec.true_angle_deg = 20.0;
    spec.shadow = true;
    let frame = &render_scene(&spec, 1, 0).frames[0];

    let b = binarize_traced(&rgb_to_hsv(frame));
    let truth = rasterize(&spec, spec.position);
    println!("T_S = {} / 255, T_V = {} / 255", b.saturation_threshold, b.value_threshold);
    println!(
        "{} foreground pixels, object has {}, IoU {:.4}",
        b.mask.count(),
        truth.count(),
        iou(&b.mask, &truth).unwrap()
    );
}
