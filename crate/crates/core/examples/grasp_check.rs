//! Jaw-width check: how wide the object is along the gripper's closing
//! direction compared with the narrowest direction found by brute force.

use fastorient::synth::scene::{render_scene, Background, SceneSpec, Shape};
use fastorient::synth::score::{grasp_feasible, min_extent_sweep};
use fastorient::{mask_props, run_pipeline, PipelineConfig};

fn main() {
    for shape in [Shape::Bar, Shape::BananaArc, Shape::LTool, Shape::Disk] {
        let mut spec = SceneSpec::new(Background::White, shape);
        spec.true_angle_deg = 50.0;
        spec.noise_sigma = 8.0;
        let scene = render_scene(&spec, 15, 2);
        let cmd = run_pipeline(&scene.frames, &PipelineConfig::default()).unwrap();
        let Some(gripper) = cmd.gripper_angle_deg else {
            println!("{}: no target", shape.name());
            continue;
        };
        let aperture = 1.5 * mask_props(&scene.truth_mask).unwrap().minor_axis_length;
        let check = grasp_feasible(&scene.truth_mask, gripper, aperture).unwrap();
        let (best_angle, best) = min_extent_sweep(&scene.truth_mask).unwrap();
        println!(
            "{:>10}: gripper {gripper:6.2} deg, extent {:.1} px (narrowest {best:.1} px at {best_angle} deg), aperture {aperture:.1} px, {}",
            shape.name(),
            check.extent,
            if check.feasible { "fits" } else { "does not fit" }
        );
    }
}
