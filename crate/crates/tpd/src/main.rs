use std::io::Write;
use std::panic;
use std::process::ExitCode;

fn main() -> ExitCode {
    let outcome = panic::catch_unwind(|| {
        let stdout = std::io::stdout();
        let stderr = std::io::stderr();
        let mut out = stdout.lock();
        let mut err = stderr.lock();
        let code = tpd::run(std::env::args_os(), &|k| std::env::var(k).ok(), &mut out, &mut err);
        let _ = out.flush();
        code
    });
    // The default hook has already printed the panic message.
    let code = outcome.unwrap_or(tpd::EXIT_FAILURE);
    ExitCode::from(code as u8)
}
