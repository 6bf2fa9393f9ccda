use clap::Parser;
use foxbarnes_cli::commands::{run, Cli};
use foxbarnes_cli::CliError;

fn main() {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(text) => print!("{text}"),
        Err(e) => {
            // The classification report travels in the error and is still printed.
            if let CliError::Eval(foxbarnes::Error::NoConvergentContour(report)) = &e {
                println!("{report}");
            }
            eprintln!("error: {e}");
            std::process::exit(e.exit_code());
        }
    }
}
