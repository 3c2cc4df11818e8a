use clap::Parser;

fn main() {
    let cli = skewfit::cli::Cli::parse();
    if let Err(err) = skewfit::run(cli) {
        eprintln!("error: {err}");
        std::process::exit(err.exit_code());
    }
}
