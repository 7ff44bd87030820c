use clap::Parser;

fn main() {
    let cli = cliffgauge_cli::Cli::parse();
    std::process::exit(cliffgauge_cli::run(&cli));
}
