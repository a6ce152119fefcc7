fn main() {
    std::process::exit(metatheta_core::cli::run(std::env::args_os().skip(1)));
}
