fn main() {
    std::process::exit(afmsync_cli::run(std::env::args_os()));
}
