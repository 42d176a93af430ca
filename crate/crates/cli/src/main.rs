fn main() {
    std::process::exit(cvp_cli::main_entry());
}
