use std::time::Instant;

use clap::Parser;

use bfv_cli::{execute, Cli};

fn main() {
    let cli = Cli::parse();
    let start = Instant::now();
    let code = execute(&cli);
    // Wall time stays out of the report so reruns are byte-identical.
    eprintln!(
        "bfv: {} finished in {:.3}s",
        cli.command.name(),
        start.elapsed().as_secs_f64()
    );
    std::process::exit(code);
}
