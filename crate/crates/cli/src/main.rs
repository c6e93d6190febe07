use clap::Parser;

use rivalcast_cli::args::Cli;

fn main() {
    let cli = Cli::parse();
    match rivalcast_cli::run(&cli) {
        Ok(code) => std::process::exit(code),
        Err(err) => {
            eprintln!("error: {err}");
            std::process::exit(err.exit_code());
        }
    }
}
