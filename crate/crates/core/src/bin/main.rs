use std::io::Write;

fn main() {
    let (code, text, to_stderr) = inertia_lab::cli::main_with_args(std::env::args_os());
    let written = if to_stderr {
        std::io::stderr().write_all(text.as_bytes())
    } else {
        std::io::stdout().write_all(text.as_bytes())
    };
    if written.is_err() {
        std::process::exit(inertia_lab::cli::EXIT_INTERNAL);
    }
    std::process::exit(code);
}
