fn main() {
    std::process::exit(treestack::cli::main());
}
