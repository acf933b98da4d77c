use std::io;
use std::process::ExitCode;

fn main() -> ExitCode {
    let seed = std::env::var("AVOIDANCE_SEED").ok();
    let code = holoavoid::cli::run(
        std::env::args_os(),
        seed,
        &mut io::stdout(),
        &mut io::stderr(),
    );
    ExitCode::from(code as u8)
}
