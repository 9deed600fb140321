use clap::Parser;
use commuting_k0::cli::{execute, Args};

fn main() {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    let (text, code) = execute(&args);
    if code == 1 {
        eprintln!("{text}");
    } else {
        println!("{text}");
    }
    std::process::exit(code);
}
