use clap::Parser;

fn main() {
    let cli = burnloops::cli::Cli::parse();
    std::process::exit(burnloops::cli::run(&cli));
}
