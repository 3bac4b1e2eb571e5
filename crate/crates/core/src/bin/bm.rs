use brauer_manin::bmcli::{emit, run, Cli};
use clap::error::ErrorKind;
use clap::Parser;
use std::process::ExitCode;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            let ok = matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            return ExitCode::from(if ok { 0 } else { 1 });
        }
    };
    let outcome = run(&cli).and_then(|(doc, cfg)| emit(&doc, &cfg).map(|_| doc.status.exit_code()));
    match outcome {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("bm: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
