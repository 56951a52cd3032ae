fn main() {
    std::process::exit(hilb::run(std::env::args_os()));
}
