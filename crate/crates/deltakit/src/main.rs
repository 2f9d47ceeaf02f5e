fn main() {
    std::process::exit(deltakit::run_cli());
}
