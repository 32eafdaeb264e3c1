//! Runs the synthetic background × shape grid and writes a JSON report.
//!
//! ```text
//! cargo run --release --example fastorient-eval -- --seed 7 --out report.json
//! ```

use clap::Parser;
use fastorient::synth::eval::{run_eval, EvalArgs};

fn main() {
    let args = EvalArgs::parse();
    let code = run_eval(&args, &mut std::io::stdout().lock(), &mut std::io::stderr().lock());
    std::process::exit(code);
}
