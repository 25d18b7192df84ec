use std::io::Write;

fn main() {
    let report = wickrot_cli::run_command(std::env::args_os());
    print!("{}", report.stdout);
    eprint!("{}", report.stderr);
    let _ = std::io::stdout().flush();
    std::process::exit(report.exit_code());
}
