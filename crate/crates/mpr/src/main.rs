use mpr::cli;

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let result = cli::run(&args);
    print!("{}", result.stdout);
    eprint!("{}", result.stderr);
    std::process::exit(result.exit_code);
}
