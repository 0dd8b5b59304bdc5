fn main() {
    std::process::exit(cropkit::cli::main_from_env());
}
