fn main() {
    std::process::exit(motzkin_rainbow::cli::run(std::env::args_os()));
}
