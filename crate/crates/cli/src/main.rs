fn main() {
    std::process::exit(healthmine_cli::run(std::env::args_os()));
}
