fn main() {
    std::process::exit(serrewt::cli::main());
}
