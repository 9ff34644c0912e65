// SPDX-License-Identifier: Apache-2.0

use clap::error::ErrorKind;
use clap::Parser;
use minorantlab_cli::spec::Cli;

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            std::process::exit(code);
        }
    };
    match minorantlab_cli::run(&cli, &args) {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("minorantlab: {e}");
            std::process::exit(1);
        }
    }
}
