fn main() {
    std::process::exit(torus_spectra::cli::run(std::env::args_os()));
}
