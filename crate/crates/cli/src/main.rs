use std::io::Write;

fn main() {
    let out = nmsize_cli::run_from(std::env::args_os());
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    let _ = std::io::stdout().flush();
    std::process::exit(out.code);
}
