use clap::Parser;

fn main() {
    let cli = shlie::cli::Cli::parse();
    std::process::exit(shlie::cli::run(cli));
}
