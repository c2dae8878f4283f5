fn main() {
    let code = stableperm::cli::run_with(std::env::args_os(), &mut std::io::stdout().lock());
    std::process::exit(code);
}
