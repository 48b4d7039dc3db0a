use clap::Parser;
use vqls_cli::{run, Cli, Outcome};

fn main() {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Outcome::Validated(path)) => println!("{}: valid", path.display()),
        Ok(Outcome::Ran(report)) => {
            print!("{}", report.summary);
            for g in &report.gate_failures {
                eprintln!("gate: {g}");
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(e.exit_code());
        }
    }
}
