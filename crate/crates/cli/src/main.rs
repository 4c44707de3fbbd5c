use std::io::Write;
use std::process::ExitCode;

use scroll_rees_cli::document::FIELD_ENV;

fn main() -> ExitCode {
    let env_field = std::env::var(FIELD_ENV).ok();
    let out = scroll_rees_cli::run(std::env::args_os(), &mut std::io::stdin(), env_field.as_deref());
    let _ = std::io::stdout().write_all(out.stdout.as_bytes());
    let _ = std::io::stderr().write_all(out.stderr.as_bytes());
    ExitCode::from(out.code as u8)
}
