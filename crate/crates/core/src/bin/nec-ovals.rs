use clap::Parser;
use nec_ovals::cli::{run, CliConfig};

fn main() {
    let config = CliConfig::parse();
    let code = run(
        &config,
        &mut std::io::stdout().lock(),
        &mut std::io::stderr().lock(),
    );
    std::process::exit(code);
}
