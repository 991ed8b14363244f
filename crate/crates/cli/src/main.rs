use clap::Parser;

fn main() {
    let cli = lgi_cli::Cli::parse();
    if let Err(e) = lgi_cli::run(cli) {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}
