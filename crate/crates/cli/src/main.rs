use clap::Parser;
use gable_cli::args::Cli;

fn main() {
    let cli = Cli::parse();
    let (text, code) = gable_cli::run(&cli);
    println!("{text}");
    std::process::exit(code);
}
