use std::io::Write;

fn main() {
    let (code, out) = mtensor::cli::run(std::env::args_os());
    // a closed pipe (e.g. `| head`) is not an error worth a panic
    let _ = writeln!(std::io::stdout().lock(), "{out}");
    std::process::exit(code);
}
