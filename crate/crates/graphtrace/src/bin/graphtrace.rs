fn main() {
    std::process::exit(graphtrace::cli::main());
}
