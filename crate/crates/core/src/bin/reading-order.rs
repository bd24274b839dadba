fn main() {
    std::process::exit(reading_order::cli::run(std::env::args_os()));
}
