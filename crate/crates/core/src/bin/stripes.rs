fn main() {
    std::process::exit(dipolar_stripes::cli::run(std::env::args_os()));
}
