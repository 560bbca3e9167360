use std::io::{self, Write};

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let stdout = io::stdout();
    let stderr = io::stderr();
    let code = earslice::cli::run(&args, &mut stdout.lock(), &mut stderr.lock());
    io::stdout().flush().ok();
    std::process::exit(code);
}
