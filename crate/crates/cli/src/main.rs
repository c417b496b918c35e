use std::process::ExitCode;

use ordlab_cli::{run, threads_from_env};

fn main() -> ExitCode {
    let env = std::env::var("ORDLAB_THREADS").ok();
    let threads = match threads_from_env(env.as_deref()) {
        Ok(n) => n,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    let code = run(
        std::env::args_os(),
        threads,
        &mut std::io::stdout().lock(),
        &mut std::io::stderr().lock(),
    );
    ExitCode::from(code as u8)
}
