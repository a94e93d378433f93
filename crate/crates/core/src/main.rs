use std::io::Write;

fn main() {
    let (code, text) = nilcube::cli::run(std::env::args_os());
    if code == nilcube::cli::EXIT_USAGE {
        eprint!("{text}");
    } else {
        let mut out = std::io::stdout().lock();
        let _ = out.write_all(text.as_bytes());
    }
    std::process::exit(code);
}
