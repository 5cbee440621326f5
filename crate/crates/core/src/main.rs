fn main() {
    std::process::exit(ihall::cli::run());
}
