use clap::Parser;

fn main() {
    std::process::exit(stablecat::cli::run(stablecat::cli::Cli::parse()));
}
