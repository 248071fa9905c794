use clap::Parser;
use quasigroup_cipher::cli::{run, Cli};

fn main() {
    let code = run(Cli::parse(), &mut std::io::stdout(), &mut std::io::stderr());
    std::process::exit(code);
}
