use clap::Parser;
use hca_cli::args::Cli;

fn main() {
    let cli = Cli::parse();
    if let Err(err) = hca_cli::commands::run(cli) {
        eprintln!("error: {err}");
        std::process::exit(err.exit_code());
    }
}
