use clap::Parser;

fn main() {
    let cli = catfrac_cli::Cli::parse();
    std::process::exit(catfrac_cli::run(cli));
}
