use clap::Parser;
use nk_elb::cli::{run, Cli};

fn main() {
    std::process::exit(run(Cli::parse()));
}
