fn main() {
    std::process::exit(golayset::cli::main());
}
