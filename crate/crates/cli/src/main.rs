use std::io::{IsTerminal, Write};

fn main() {
    let color = nahm_cli::color_from_env() && std::io::stdout().is_terminal();
    let out = nahm_cli::run_args(std::env::args_os(), nahm_cli::Style { color });
    let _ = std::io::stdout().write_all(out.stdout.as_bytes());
    let _ = std::io::stderr().write_all(out.stderr.as_bytes());
    std::process::exit(out.code);
}
