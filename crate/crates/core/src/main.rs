use clap::Parser;

fn main() {
    let cli = germkit::cli::Cli::parse();
    std::process::exit(germkit::cli::main_with(cli));
}
