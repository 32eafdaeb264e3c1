use clap::Parser;
use fastorient::cli::{run, Args, EXIT_ERROR};

fn main() {
    // clap's own usage errors exit with 2, which is reserved for "no target"
    let args = match Args::try_parse() {
        Ok(args) => args,
        Err(e) if !e.use_stderr() => e.exit(),
        Err(e) => {
            let _ = e.print();
            std::process::exit(EXIT_ERROR);
        }
    };
    let code = run(&args, &mut std::io::stdout().lock(), &mut std::io::stderr().lock());
    std::process::exit(code);
}
