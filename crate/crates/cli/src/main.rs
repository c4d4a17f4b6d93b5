mod commands;
mod config;

use clap::Parser;

use config::Cli;

fn main() {
    let cli = Cli::parse();
    let (kind, flags) = cli.command.split();
    let flags = match flags.merge_config() {
        Ok(f) => f,
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(2);
        }
    };
    if let Err(f) = commands::run(kind, flags) {
        eprintln!("error: {}", f.message);
        std::process::exit(f.code);
    }
}
