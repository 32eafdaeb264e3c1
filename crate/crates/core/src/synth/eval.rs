//! Background × shape evaluation grid with seeded repetitions.
//!
//! Every repetition renders a burst, runs the full pipeline and is scored
//! against ground truth: detection category by IoU, signed axial error of
//! the median angle, and jaw-aperture feasibility of the gripper angle.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::Parser;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::PipelineConfig;
use crate::error::{Error, Result};
use crate::image::save_image;
use crate::orient::axial_difference;
use crate::pipeline::{aggregate_frames, process_frame_staged, GraspStatus};
use crate::preprocess::PaintBranch;
use crate::regions::{mask_props, normalize_axial};
use crate::synth::scene::{render_scene, Background, SceneSpec, Shape};
use crate::synth::score::{grasp_feasible, min_extent_sweep, score_detection_with, DetectionCategory};

/// Grid description, usually read from TOML.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GridSpec {
    pub backgrounds: Vec<Background>,
    pub shapes: Vec<Shape>,
    pub repetitions: usize,
    pub frame_count: usize,
    pub noise_sigma: f64,
    pub jitter_px: usize,
    pub scale: f64,
    pub complete_iou: f64,
    /// Jaw aperture as a multiple of the true minor-axis length.
    pub aperture_factor: f64,
    /// Allowed ratio between the extent at the reported gripper angle and
    /// the brute-force minimum.
    pub extent_tolerance: f64,
}

impl Default for GridSpec {
    fn default() -> Self {
        Self {
            backgrounds: Background::ALL.to_vec(),
            shapes: Shape::ALL.to_vec(),
            repetitions: 10,
            frame_count: 15,
            noise_sigma: 8.0,
            jitter_px: 5,
            scale: 200.0,
            complete_iou: 0.90,
            aperture_factor: 1.5,
            extent_tolerance: 1.1,
        }
    }
}

impl GridSpec {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        let spec: GridSpec = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        spec.validate()?;
        Ok(spec)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_toml_str(&text)
    }

    // negated comparisons so NaN fails too
    #[allow(clippy::neg_cmp_op_on_partial_ord)]
    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::Config(m.into()));
        if self.backgrounds.is_empty() || self.shapes.is_empty() {
            return bad("grid needs at least one background and one shape");
        }
        if self.repetitions == 0 || self.frame_count == 0 {
            return bad("repetitions and frame_count must be positive");
        }
        if !(self.noise_sigma >= 0.0) || !(self.scale > 0.0) {
            return bad("noise_sigma must be >= 0 and scale > 0");
        }
        if !(self.complete_iou > 0.0 && self.complete_iou <= 1.0) {
            return bad("complete_iou must lie in (0, 1]");
        }
        if !(self.aperture_factor > 0.0) || !(self.extent_tolerance >= 1.0) {
            return bad("aperture_factor must be > 0 and extent_tolerance >= 1");
        }
        for cell in self.cells() {
            if !cell.fits() {
                return bad(&format!(
                    "{} {} does not fit the frame",
                    cell.background.name(),
                    cell.object_shape.name()
                ));
            }
        }
        Ok(())
    }

    /// Scene specs in grid order (background-major).
    pub fn cells(&self) -> Vec<SceneSpec> {
        let mut out = Vec::new();
        for &bg in &self.backgrounds {
            for &shape in &self.shapes {
                let k = out.len();
                let mut spec = SceneSpec::new(bg, shape);
                spec.true_angle_deg = cell_angle(k);
                spec.position = (319.5 + ((k * 7) % 21) as f64 - 10.0, 239.5 + ((k * 11) % 21) as f64 - 10.0);
                spec.scale = self.scale;
                spec.noise_sigma = self.noise_sigma;
                spec.jitter_px = self.jitter_px;
                out.push(spec);
            }
        }
        out
    }
}

/// Spreads the cell angles over the axial circle.
fn cell_angle(k: usize) -> f64 {
    normalize_axial(-83.0 + 37.0 * k as f64)
}

/// Seed for one repetition, mixed so neighbouring cells get unrelated streams.
pub fn repetition_seed(seed: u64, cell: usize, rep: usize) -> u64 {
    let mut z = seed ^ ((cell as u64) << 32 | rep as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RowRecord {
    pub cell: usize,
    pub background: Background,
    pub shape: Shape,
    pub repetition: usize,
    pub seed: u64,
    pub status: GraspStatus,
    pub category: DetectionCategory,
    /// Median per-frame IoU over detected frames.
    pub iou: f64,
    pub detected_frames: usize,
    pub true_angle_deg: f64,
    pub reported_angle_deg: Option<f64>,
    pub gripper_angle_deg: Option<f64>,
    pub signed_error_deg: Option<f64>,
    pub angle_error_deg: Option<f64>,
    pub round_truth: bool,
    pub round_reported: bool,
    pub aperture: f64,
    pub extent: Option<f64>,
    pub min_extent: f64,
    pub min_extent_angle_deg: f64,
    pub extent_ratio: Option<f64>,
    pub feasible: bool,
    /// Frames where the dark-dominant painting branch ran.
    pub dark_dominant_frames: usize,
    /// Mean fraction of target pixels that came from grayscale repainting.
    pub painted_fraction: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoxStats {
    pub min: f64,
    pub q1: f64,
    pub median: f64,
    pub q3: f64,
    pub max: f64,
}

impl BoxStats {
    /// Quartiles by linear interpolation between order statistics.
    pub fn from_samples(samples: &[f64]) -> Option<Self> {
        if samples.is_empty() {
            return None;
        }
        let mut s = samples.to_vec();
        s.sort_by(f64::total_cmp);
        let q = |p: f64| {
            let pos = p * (s.len() - 1) as f64;
            let (lo, hi) = (pos.floor() as usize, pos.ceil() as usize);
            s[lo] + (s[hi] - s[lo]) * (pos - lo as f64)
        };
        Some(Self {
            min: s[0],
            q1: q(0.25),
            median: q(0.5),
            q3: q(0.75),
            max: s[s.len() - 1],
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CellRecord {
    pub cell: usize,
    pub background: Background,
    pub shape: Shape,
    pub true_angle_deg: f64,
    pub achromatic: bool,
    pub shadow: bool,
    pub gradient: bool,
    pub clutter: bool,
    pub round: bool,
    pub complete: usize,
    pub partial: usize,
    pub none: usize,
    pub detected: bool,
    pub median_iou: f64,
    /// Signed axial error statistics over repetitions.
    pub error_stats: Option<BoxStats>,
    /// Max minus min of the signed errors.
    pub spread_deg: Option<f64>,
    pub worst_extent_ratio: Option<f64>,
    pub feasible_rate: f64,
    /// Every repetition's target came mostly from grayscale repainting.
    pub painted_target: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Aggregate {
    pub rows: usize,
    pub cells: usize,
    pub complete_rate: f64,
    pub partial_rate: f64,
    pub none_rate: f64,
    pub detected_cell_rate: f64,
    /// Median absolute angle error over non-round rows.
    pub median_angle_error_deg: Option<f64>,
    pub max_spread_deg: Option<f64>,
    pub spread_within_4deg_rate: f64,
    pub extent_ratio_ok_rate: f64,
    pub feasibility_rate: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EvaluationReport {
    pub seed: u64,
    pub grid: GridSpec,
    pub rows: Vec<RowRecord>,
    pub cells: Vec<CellRecord>,
    pub aggregate: Aggregate,
}

impl EvaluationReport {
    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("report serializes");
        text.push('\n');
        text
    }
}

struct CellTruth {
    aperture: f64,
    min_extent: (f64, f64),
}

fn cell_truth(spec: &SceneSpec, grid: &GridSpec) -> Result<CellTruth> {
    let truth = crate::synth::scene::rasterize(spec, spec.position);
    let props = mask_props(&truth).ok_or(Error::EmptyMask)?;
    Ok(CellTruth {
        aperture: grid.aperture_factor * props.minor_axis_length,
        min_extent: min_extent_sweep(&truth)?,
    })
}

fn run_repetition(
    k: usize,
    spec: &SceneSpec,
    truth: &CellTruth,
    rep: usize,
    seed: u64,
    grid: &GridSpec,
    cfg: &PipelineConfig,
) -> Result<RowRecord> {
    let scene = render_scene(spec, grid.frame_count, seed);
    let mut results = Vec::with_capacity(grid.frame_count);
    let mut ious = Vec::new();
    for (i, frame) in scene.frames.iter().enumerate() {
        let (result, stages) = process_frame_staged(frame, cfg, i);
        if let Some(mask) = stages.target_mask(&result) {
            let v = score_detection_with(Some(&mask), &scene.frame_truth(i), grid.complete_iou)?;
            ious.push(v.iou);
        }
        results.push(result);
    }
    let cmd = aggregate_frames(results, &cfg.orient);

    let iou = BoxStats::from_samples(&ious).map_or(0.0, |b| b.median);
    let category = match cmd.status {
        GraspStatus::NoTarget => DetectionCategory::None,
        GraspStatus::Ok if iou >= grid.complete_iou => DetectionCategory::Complete,
        GraspStatus::Ok => DetectionCategory::Partial,
    };
    let signed = cmd.median_object_angle_deg.map(|a| axial_difference(a, scene.true_angle_deg));
    let check = match cmd.gripper_angle_deg {
        Some(g) => Some(grasp_feasible(&scene.truth_mask, g, truth.aperture)?),
        None => None,
    };
    let fractions: Vec<f64> = cmd.frames.iter().filter_map(|f| f.trace.target_painted_fraction).collect();
    Ok(RowRecord {
        cell: k,
        background: spec.background,
        shape: spec.object_shape,
        repetition: rep,
        seed,
        status: cmd.status,
        category,
        iou,
        detected_frames: cmd.detected_frames(),
        true_angle_deg: scene.true_angle_deg,
        reported_angle_deg: cmd.median_object_angle_deg,
        gripper_angle_deg: cmd.gripper_angle_deg,
        signed_error_deg: signed,
        angle_error_deg: signed.map(f64::abs),
        round_truth: scene.round,
        round_reported: cmd.round_object,
        aperture: truth.aperture,
        extent: check.map(|c| c.extent),
        min_extent: truth.min_extent.1,
        min_extent_angle_deg: truth.min_extent.0,
        extent_ratio: check.map(|c| c.extent / truth.min_extent.1),
        feasible: check.is_some_and(|c| c.feasible),
        dark_dominant_frames: cmd
            .frames
            .iter()
            .filter(|f| f.trace.paint_branch == PaintBranch::DarkDominant)
            .count(),
        painted_fraction: (!fractions.is_empty()).then(|| fractions.iter().sum::<f64>() / fractions.len() as f64),
    })
}

fn summarize_cell(k: usize, spec: &SceneSpec, rows: &[RowRecord], grid: &GridSpec) -> CellRecord {
    let count = |c| rows.iter().filter(|r| r.category == c).count();
    let signed: Vec<f64> = rows.iter().filter_map(|r| r.signed_error_deg).collect();
    let stats = BoxStats::from_samples(&signed);
    let ious: Vec<f64> = rows.iter().map(|r| r.iou).collect();
    let ratios: Vec<f64> = rows.iter().filter_map(|r| r.extent_ratio).collect();
    let none = count(DetectionCategory::None);
    CellRecord {
        cell: k,
        background: spec.background,
        shape: spec.object_shape,
        true_angle_deg: rows.first().map_or(spec.true_angle_deg, |r| r.true_angle_deg),
        achromatic: spec.is_achromatic(),
        shadow: spec.shadow,
        gradient: spec.background == Background::OpenLab,
        clutter: spec.background == Background::DeskClutter,
        round: spec.object_shape.is_round(),
        complete: count(DetectionCategory::Complete),
        partial: count(DetectionCategory::Partial),
        none,
        detected: none == 0,
        median_iou: BoxStats::from_samples(&ious).map_or(0.0, |b| b.median),
        spread_deg: stats.as_ref().map(|s| s.max - s.min),
        error_stats: stats,
        worst_extent_ratio: (ratios.len() == rows.len()).then(|| ratios.iter().copied().fold(0.0, f64::max)),
        feasible_rate: rows.iter().filter(|r| r.feasible).count() as f64 / grid.repetitions as f64,
        painted_target: rows.iter().all(|r| r.painted_fraction.is_some_and(|p| p > 0.5)),
    }
}

fn aggregate(rows: &[RowRecord], cells: &[CellRecord], grid: &GridSpec) -> Aggregate {
    let n = rows.len() as f64;
    let rate = |c| rows.iter().filter(|r| r.category == c).count() as f64 / n;
    let eccentric: Vec<&CellRecord> = cells.iter().filter(|c| !c.round).collect();
    let errors: Vec<f64> = rows
        .iter()
        .filter(|r| !r.round_truth)
        .filter_map(|r| r.angle_error_deg)
        .collect();
    let spreads: Vec<f64> = eccentric.iter().filter_map(|c| c.spread_deg).collect();
    let frac = |hits: usize, of: usize| if of == 0 { 1.0 } else { hits as f64 / of as f64 };
    Aggregate {
        rows: rows.len(),
        cells: cells.len(),
        complete_rate: rate(DetectionCategory::Complete),
        partial_rate: rate(DetectionCategory::Partial),
        none_rate: rate(DetectionCategory::None),
        detected_cell_rate: frac(cells.iter().filter(|c| c.detected).count(), cells.len()),
        median_angle_error_deg: BoxStats::from_samples(&errors).map(|b| b.median),
        max_spread_deg: spreads.iter().copied().reduce(f64::max),
        spread_within_4deg_rate: frac(
            eccentric.iter().filter(|c| c.spread_deg.is_some_and(|s| s <= 4.0)).count(),
            eccentric.len(),
        ),
        extent_ratio_ok_rate: frac(
            eccentric
                .iter()
                .filter(|c| c.worst_extent_ratio.is_some_and(|r| r <= grid.extent_tolerance))
                .count(),
            eccentric.len(),
        ),
        feasibility_rate: rows.iter().filter(|r| r.feasible).count() as f64 / n,
    }
}

/// Runs every cell and repetition. Work is spread over threads; the report
/// is assembled in grid order, so it only depends on `seed`.
pub fn run_evaluation(grid: &GridSpec, cfg: &PipelineConfig, seed: u64) -> Result<EvaluationReport> {
    grid.validate()?;
    let mut cfg = cfg.clone();
    if cfg.orient.frame_count != grid.frame_count {
        cfg.orient = cfg.orient.scaled_to(grid.frame_count);
    }
    let specs = grid.cells();
    let truths = specs
        .par_iter()
        .map(|s| cell_truth(s, grid))
        .collect::<Result<Vec<_>>>()?;
    let jobs: Vec<(usize, usize)> = (0..specs.len())
        .flat_map(|k| (0..grid.repetitions).map(move |r| (k, r)))
        .collect();
    let rows = jobs
        .par_iter()
        .map(|&(k, r)| run_repetition(k, &specs[k], &truths[k], r, repetition_seed(seed, k, r), grid, &cfg))
        .collect::<Result<Vec<_>>>()?;
    let cells: Vec<CellRecord> = specs
        .iter()
        .enumerate()
        .map(|(k, s)| summarize_cell(k, s, &rows[k * grid.repetitions..(k + 1) * grid.repetitions], grid))
        .collect();
    let aggregate = aggregate(&rows, &cells, grid);
    Ok(EvaluationReport {
        seed,
        grid: grid.clone(),
        rows,
        cells,
        aggregate,
    })
}

/// Saves repetition 0 of every cell as `<dir>/<background>_<shape>/reach_NN.png`
/// next to `truth.png` and a `truth.json` holding the true angle.
pub fn write_fixtures(grid: &GridSpec, seed: u64, dir: &Path) -> Result<Vec<PathBuf>> {
    let mut written = Vec::new();
    for (k, spec) in grid.cells().iter().enumerate() {
        let scene = render_scene(spec, grid.frame_count, repetition_seed(seed, k, 0));
        let cell_dir = dir.join(format!("{}_{}", spec.background.name(), spec.object_shape.name()));
        std::fs::create_dir_all(&cell_dir).map_err(|e| Error::io(&cell_dir, e))?;
        for (i, frame) in scene.frames.iter().enumerate() {
            save_image(frame, cell_dir.join(format!("reach_{i:02}.png")))?;
        }
        save_image(&scene.truth_mask, cell_dir.join("truth.png"))?;
        let meta = serde_json::json!({
            "true_angle_deg": scene.true_angle_deg,
            "round": scene.round,
            "offsets": scene.offsets,
        });
        let meta_path = cell_dir.join("truth.json");
        std::fs::write(&meta_path, format!("{meta:#}\n")).map_err(|e| Error::io(&meta_path, e))?;
        written.push(cell_dir);
    }
    Ok(written)
}

#[derive(Debug, Clone, Parser)]
#[command(name = "fastorient-eval", version, about = "Scores the pipeline on a synthetic scene grid")]
pub struct EvalArgs {
    /// TOML grid description; the full 5 × 5 grid when omitted.
    #[arg(long)]
    pub grid: Option<PathBuf>,

    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    /// Report path; standard output when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,

    /// Also save the rendered repetition-0 frames here.
    #[arg(long)]
    pub fixtures_dir: Option<PathBuf>,

    /// TOML pipeline configuration.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

fn execute_eval(args: &EvalArgs, out: &mut impl Write) -> Result<EvaluationReport> {
    let grid = match &args.grid {
        Some(p) => GridSpec::load(p)?,
        None => GridSpec::default(),
    };
    let cfg = match &args.config {
        Some(p) => PipelineConfig::load(p)?,
        None => PipelineConfig::default(),
    };
    if let Some(dir) = &args.fixtures_dir {
        write_fixtures(&grid, args.seed, dir)?;
    }
    let report = run_evaluation(&grid, &cfg, args.seed)?;
    let text = report.to_json();
    match &args.out {
        Some(p) => std::fs::write(p, text).map_err(|e| Error::io(p, e))?,
        None => out.write_all(text.as_bytes()).map_err(|e| Error::io("<stdout>", e))?,
    }
    Ok(report)
}

/// Entry point of `fastorient-eval`; returns the process exit code.
pub fn run_eval(args: &EvalArgs, out: &mut impl Write, err: &mut impl Write) -> i32 {
    match execute_eval(args, out) {
        Ok(report) => {
            let a = &report.aggregate;
            let _ = writeln!(
                err,
                "fastorient-eval: {} rows, detected cells {:.1}%, feasible {:.1}%, max spread {}",
                a.rows,
                100.0 * a.detected_cell_rate,
                100.0 * a.feasibility_rate,
                a.max_spread_deg.map_or("n/a".into(), |s| format!("{s:.2} deg")),
            );
            0
        }
        Err(e) => {
            let _ = writeln!(err, "fastorient-eval: error: {e}");
            1
        }
    }
}
