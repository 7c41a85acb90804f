use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let threads = std::env::var("WORDLAB_THREADS").ok();
    let done = wordlab::run(std::env::args_os().skip(1), threads.as_deref());
    let _ = std::io::stdout().write_all(&done.stdout);
    let _ = std::io::stderr().write_all(&done.stderr);
    ExitCode::from(done.code as u8)
}
