use clap::Parser;

use renyi_thermo::cli::{run, RunConfig};

fn main() {
    let config = RunConfig::parse();
    match run(config) {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(1);
        }
    }
}
