fn main() {
    std::process::exit(choquet_lab::cli::run(std::env::args_os()));
}
