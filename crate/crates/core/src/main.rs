fn main() {
    std::process::exit(permtab::cli::main());
}
