mod common;

use std::path::Path;
use std::process::{Command, Output};

use fastorient::debug::{stage_path, AXIS_COLOR};
use fastorient::orient::axial_distance;
use fastorient::synth::scene::render_scene;
use fastorient::{load_image, mask_props, save_image, BinaryMask, RgbImage};
use serde_json::Value;

fn fastorient(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fastorient")).args(args).output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

fn bar_fixtures(dir: &Path, angle: f64, n: usize) -> String {
    let mut spec = common::bar_scene(angle);
    spec.noise_sigma = 6.0;
    spec.jitter_px = 4;
    common::write_frames(dir, &render_scene(&spec, n, 42).frames, "png");
    format!("{}/reach_*.png", dir.display())
}

#[test]
fn burst_of_fifteen_frames() {
    let dir = tempfile::tempdir().unwrap();
    let pattern = bar_fixtures(dir.path(), 40.0, 15);
    let out = fastorient(&["--input", &pattern]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let doc = json(&out);
    common::validate_output_schema(&doc).unwrap();
    assert_eq!(doc["status"], "ok");
    assert_eq!(doc["frames"].as_array().unwrap().len(), 15);
    let g = doc["gripper_angle_deg"].as_f64().unwrap();
    assert!((g - -50.0).abs() <= 2.0, "{g}");
    assert!(out.stdout.ends_with(b"\n"));
    assert!(!out.stderr.is_empty());
}

#[test]
fn output_is_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let pattern = bar_fixtures(dir.path(), -65.0, 15);
    let a = fastorient(&["--input", &pattern, "--quiet"]);
    let b = fastorient(&["--input", &pattern, "--quiet"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert!(a.stderr.is_empty());
}

#[test]
fn numbers_have_four_decimals() {
    let dir = tempfile::tempdir().unwrap();
    let pattern = bar_fixtures(dir.path(), 12.0, 15);
    let text = String::from_utf8(fastorient(&["--input", &pattern]).stdout).unwrap();
    let line = text.lines().find(|l| l.contains("\"gripper_angle_deg\"")).unwrap();
    let value = line.split(':').nth(1).unwrap().trim().trim_end_matches(',');
    assert_eq!(value.split('.').nth(1).map(str::len), Some(4), "{line}");
}

#[test]
fn blank_single_frame_is_no_target() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("blank.png");
    save_image(&RgbImage::new(64, 48, [230, 230, 230]).unwrap(), &path).unwrap();
    let out = fastorient(&["--input", path.to_str().unwrap(), "--frames", "1"]);
    assert_eq!(out.status.code(), Some(2));
    let doc = json(&out);
    common::validate_output_schema(&doc).unwrap();
    assert_eq!(doc["status"], "no_target");
    assert!(doc["gripper_angle_deg"].is_null());
    assert_eq!(doc["frames"][0]["status"], "no_target");
}

#[test]
fn negative_min_area_is_a_config_error() {
    let dir = tempfile::tempdir().unwrap();
    let pattern = bar_fixtures(dir.path(), 0.0, 2);
    let cfg = dir.path().join("bad.toml");
    std::fs::write(&cfg, "[segmentation]\nmin_area = -5\n").unwrap();
    let out = fastorient(&["--input", &pattern, "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).contains("error"));
}

#[test]
fn io_and_usage_errors_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("nope.png");
    assert_eq!(fastorient(&["--input", missing.to_str().unwrap()]).status.code(), Some(1));
    let empty_glob = format!("{}/*.png", dir.path().display());
    assert_eq!(fastorient(&["--input", &empty_glob]).status.code(), Some(1));
    let garbage = dir.path().join("garbage.png");
    std::fs::write(&garbage, b"not an image").unwrap();
    assert_eq!(fastorient(&["--input", garbage.to_str().unwrap()]).status.code(), Some(1));
    assert_eq!(fastorient(&["--input", garbage.to_str().unwrap(), "--frames", "0"]).status.code(), Some(1));
    assert_eq!(fastorient(&["--bogus"]).status.code(), Some(1));
    assert_eq!(fastorient(&[]).status.code(), Some(1));
}

#[test]
fn short_burst_lowers_the_quorum() {
    let dir = tempfile::tempdir().unwrap();
    let pattern = bar_fixtures(dir.path(), 70.0, 5);
    let out = fastorient(&["--input", &pattern]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(doc["frames"].as_array().unwrap().len(), 5);
    assert!(axial_distance(doc["median_object_angle_deg"].as_f64().unwrap(), 70.0) <= 2.0);
}

#[test]
fn extra_frames_are_ignored_and_order_is_lexicographic() {
    let dir = tempfile::tempdir().unwrap();
    let pattern = bar_fixtures(dir.path(), -20.0, 17);
    let doc = json(&fastorient(&["--input", &pattern]));
    assert_eq!(doc["frames"].as_array().unwrap().len(), 15);
    let listed = json(&fastorient(&[
        "--input",
        dir.path().join("reach_01.png").to_str().unwrap(),
        dir.path().join("reach_00.png").to_str().unwrap(),
        "--frames",
        "2",
    ]));
    assert_eq!(listed["frames"][0], doc["frames"][0]);
}

#[test]
fn ppm_frames_are_accepted() {
    let dir = tempfile::tempdir().unwrap();
    let frames = render_scene(&common::bar_scene(33.0), 3, 1).frames;
    common::write_frames(dir.path(), &frames, "ppm");
    let pattern = format!("{}/reach_*.ppm", dir.path().display());
    let out = fastorient(&["--input", &pattern, "--frames", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(axial_distance(json(&out)["median_object_angle_deg"].as_f64().unwrap(), 33.0) <= 2.0);
}

#[test]
fn debug_dir_gets_six_stage_images() {
    let dir = tempfile::tempdir().unwrap();
    let frames = render_scene(&common::bar_scene(-28.0), 1, 3).frames;
    let paths = common::write_frames(dir.path(), &frames, "png");
    let debug = dir.path().join("debug");
    let out = fastorient(&[
        "--input",
        paths[0].to_str().unwrap(),
        "--frames",
        "1",
        "--debug-dir",
        debug.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let mut names: Vec<String> = std::fs::read_dir(&debug)
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .collect();
    names.sort();
    let expected: Vec<String> = (1..=6).map(|j| format!("frame0_stage{j}.png")).collect();
    assert_eq!(names, expected);
    assert_eq!(load_image(stage_path(&debug, 0, 1)).unwrap(), frames[0]);

    // re-measure the drawn axis: principal direction of the blue pixels
    let overlay = load_image(stage_path(&debug, 0, 6)).unwrap();
    let blue = BinaryMask::from_fn(overlay.width(), overlay.height(), |x, y| overlay.pixel(x, y) == AXIS_COLOR);
    let drawn = mask_props(&blue).unwrap().orientation_deg;
    let reported = json(&out)["frames"][0]["object_angle_deg"].as_f64().unwrap();
    assert!(axial_distance(drawn, reported) < 1.0, "drawn {drawn} reported {reported}");
}

#[test]
fn no_debug_dir_writes_nothing() {
    let dir = tempfile::tempdir().unwrap();
    let frames = render_scene(&common::bar_scene(5.0), 1, 3).frames;
    let paths = common::write_frames(dir.path(), &frames, "png");
    let out = fastorient(&["--input", paths[0].to_str().unwrap(), "--frames", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
}

#[test]
fn config_file_is_honored() {
    let dir = tempfile::tempdir().unwrap();
    let pattern = bar_fixtures(dir.path(), 0.0, 3);
    // a minimum area above the bar's size leaves nothing to detect
    let cfg = dir.path().join("big.toml");
    std::fs::write(&cfg, "[segmentation]\nmin_area = 100000\n").unwrap();
    let out = fastorient(&["--input", &pattern, "--frames", "3", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}
