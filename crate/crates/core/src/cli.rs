//! `fastorient` command line: files in, one JSON grasp document out.
//!
//! Exit status is 0 when a grasp angle was produced, 2 when no target met
//! the detection quorum and 1 on any I/O or configuration error.

use std::io::Write;
use std::path::PathBuf;

use clap::Parser;
use rayon::prelude::*;

use crate::config::PipelineConfig;
use crate::debug::dump_debug_stages;
use crate::error::{Error, Result};
use crate::image::load_image;
use crate::pipeline::{aggregate_frames, process_frame_staged, FrameResult, GraspCommand, GraspStatus};
use crate::report::{Fixed4, OutputDocument};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_NO_TARGET: i32 = 2;

#[derive(Debug, Clone, Parser)]
#[command(name = "fastorient", version, about = "Gripper rotation angle from a burst of wrist-camera frames")]
pub struct Args {
    /// Frame files or glob patterns; matches are sorted lexicographically.
    #[arg(long, required = true, num_args = 1..)]
    pub input: Vec<String>,

    /// Frames per burst; overrides the config and scales the detection quorum.
    #[arg(long)]
    pub frames: Option<usize>,

    /// TOML pipeline configuration.
    #[arg(long)]
    pub config: Option<PathBuf>,

    /// Write per-frame stage images here.
    #[arg(long)]
    pub debug_dir: Option<PathBuf>,

    /// No diagnostics on stderr.
    #[arg(long)]
    pub quiet: bool,
}

/// Resolves paths and glob patterns into a sorted, de-duplicated file list.
pub fn expand_inputs(patterns: &[String]) -> Result<Vec<PathBuf>> {
    let mut files = Vec::new();
    for pattern in patterns {
        if pattern.contains(['*', '?', '[']) {
            let paths = glob::glob(pattern).map_err(|e| Error::Config(format!("bad glob {pattern}: {e}")))?;
            for entry in paths {
                let path = entry.map_err(|e| Error::io(e.path().to_path_buf(), e.into()))?;
                if path.is_file() {
                    files.push(path);
                }
            }
        } else {
            files.push(PathBuf::from(pattern));
        }
    }
    files.sort();
    files.dedup();
    if files.is_empty() {
        return Err(Error::NoInput(patterns.join(" ")));
    }
    Ok(files)
}

/// Effective configuration: file (or defaults), then CLI overrides.
pub fn resolve_config(args: &Args) -> Result<PipelineConfig> {
    let mut cfg = match &args.config {
        Some(path) => PipelineConfig::load(path)?,
        None => PipelineConfig::default(),
    };
    if let Some(n) = args.frames {
        if n == 0 {
            return Err(Error::Config("--frames must be at least 1".into()));
        }
        cfg.orient = cfg.orient.scaled_to(n);
    }
    if args.debug_dir.is_some() {
        cfg.debug_dir = args.debug_dir.clone();
    }
    cfg.validate()?;
    Ok(cfg)
}

/// Runs the whole command and returns the grasp command.
pub fn execute(args: &Args) -> Result<GraspCommand> {
    let mut cfg = resolve_config(args)?;
    let mut files = expand_inputs(&args.input)?;
    files.truncate(cfg.orient.frame_count);
    if files.len() < cfg.orient.frame_count {
        cfg.orient = cfg.orient.scaled_to(files.len());
    }

    let results = files
        .par_iter()
        .enumerate()
        .map(|(i, path)| -> Result<FrameResult> {
            let img = load_image(path)?;
            let (result, stages) = process_frame_staged(&img, &cfg, i);
            if let Some(dir) = &cfg.debug_dir {
                dump_debug_stages(dir, &img, &stages, &result)?;
            }
            Ok(result)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(aggregate_frames(results, &cfg.orient))
}

/// Entry point shared by the binary and the tests.
pub fn run(args: &Args, out: &mut impl Write, err: &mut impl Write) -> i32 {
    match execute(args) {
        Ok(cmd) => {
            let doc = OutputDocument::from(&cmd).to_json();
            if out.write_all(doc.as_bytes()).and_then(|_| out.flush()).is_err() {
                return EXIT_ERROR;
            }
            if !args.quiet {
                let _ = match cmd.gripper_angle_deg {
                    Some(g) => writeln!(
                        err,
                        "fastorient: ok, gripper {} deg ({}/{} frames detected)",
                        Fixed4(g).text(),
                        cmd.detected_frames(),
                        cmd.frames.len()
                    ),
                    None => writeln!(
                        err,
                        "fastorient: no target ({}/{} frames detected)",
                        cmd.detected_frames(),
                        cmd.frames.len()
                    ),
                };
            }
            match cmd.status {
                GraspStatus::Ok => EXIT_OK,
                GraspStatus::NoTarget => EXIT_NO_TARGET,
            }
        }
        Err(e) => {
            let _ = writeln!(err, "fastorient: error: {e}");
            EXIT_ERROR
        }
    }
}
