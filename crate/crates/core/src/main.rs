fn main() {
    std::process::exit(shikit::cli::main_entry());
}
