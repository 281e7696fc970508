use clap::Parser;
use lieposet_core::cli::{render, run, Cli};

fn main() {
    let cli = Cli::parse();
    let outcome = run(&cli);
    println!("{}", render(&outcome.report, cli.pretty));
    std::process::exit(outcome.code);
}
