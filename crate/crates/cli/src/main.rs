use std::process::ExitCode;

fn main() -> ExitCode {
    let inv = stokes_cli::run(std::env::args_os());
    print!("{}", inv.stdout);
    eprint!("{}", inv.stderr);
    ExitCode::from(inv.code as u8)
}
