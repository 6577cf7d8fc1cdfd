fn main() {
    std::process::exit(ffdiophantine::cli::main_with(std::env::args_os()));
}
