use std::io;

fn main() {
    let code = homkit_cli::run_cli(std::env::args_os(), &mut io::stdin().lock(), &mut io::stdout().lock(), &mut io::stderr().lock());
    std::process::exit(code);
}
