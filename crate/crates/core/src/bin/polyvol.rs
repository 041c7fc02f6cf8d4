fn main() {
    std::process::exit(polyvol::cli::run(std::env::args_os()));
}
