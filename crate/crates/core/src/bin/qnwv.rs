fn main() {
    std::process::exit(qnwv::cli::main());
}
