use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let out = cobord_cli::run_command(std::env::args().skip(1));
    print!("{}", out.stdout);
    let _ = std::io::stdout().flush();
    eprint!("{}", out.stderr);
    ExitCode::from(out.status.clamp(0, 255) as u8)
}
