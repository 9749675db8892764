use std::io;
use std::process::ExitCode;

fn main() -> ExitCode {
    let code = tsmix_cli::cli_main(
        std::env::args_os(),
        &mut io::stdout().lock(),
        &mut io::stderr(),
    );
    ExitCode::from(code)
}
