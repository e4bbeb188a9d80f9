use std::io::Write;

use clap::Parser;
use formanifold_cli::report::render_text;
use formanifold_cli::{run, Cli};

fn main() {
    let cli = Cli::parse();
    let (report, code) = run(&cli);
    // write errors such as a closed pipe are ignored; the exit code still reports the outcome
    let _ = if cli.json {
        writeln!(std::io::stdout(), "{}", report.to_json())
    } else {
        let text = render_text(&report);
        if code == 0 {
            write!(std::io::stdout(), "{text}")
        } else {
            write!(std::io::stderr(), "{text}")
        }
    };
    std::process::exit(code);
}
