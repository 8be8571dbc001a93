//! `bicrossed` command-line front end. Exit codes: 0 ok, 1 contract
//! violation, 2 input error.

mod commands;
mod session;

use std::process::ExitCode;

use clap::{Args, FromArgMatches};

use session::{Flags, Session};

const EXIT_VIOLATION: u8 = 1;
const EXIT_INPUT: u8 = 2;

fn cli() -> clap::Command {
    let mut app = clap::Command::new("bicrossed")
        .about("Finite bicrossed-product quantum groups from a matched pair (Γ, G)")
        .version(env!("CARGO_PKG_VERSION"))
        .subcommand_required(true)
        .arg_required_else_help(true);
    for c in commands::registry() {
        app = app.subcommand(Flags::augment_args(clap::Command::new(c.name()).about(c.about())));
    }
    app
}

fn main() -> ExitCode {
    let matches = match cli().try_get_matches() {
        Ok(m) => m,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_INPUT) } else { ExitCode::SUCCESS };
        }
    };
    let (name, sub) = matches.subcommand().expect("subcommand is required");
    let registry = commands::registry();
    let command = registry.iter().find(|c| c.name() == name).expect("registered");
    let flags = match Flags::from_arg_matches(sub) {
        Ok(f) => f,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(EXIT_INPUT);
        }
    };
    let out = flags.out.clone();
    let result = Session::new(flags).and_then(|s| command.run(&s));
    match result {
        Ok(report) => {
            let mut text = serde_json::to_string_pretty(&report.body).expect("JSON values serialize");
            text.push('\n');
            let written = match &out {
                Some(path) => std::fs::write(path, &text),
                None => {
                    print!("{text}");
                    Ok(())
                }
            };
            if let Err(e) = written {
                eprintln!("error: cannot write output: {e}");
                return ExitCode::from(EXIT_INPUT);
            }
            if report.ok {
                ExitCode::SUCCESS
            } else {
                eprintln!("{name}: check failed");
                ExitCode::from(EXIT_VIOLATION)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_input_error() { EXIT_INPUT } else { EXIT_VIOLATION })
        }
    }
}
