fn main() {
    std::process::exit(qdouble::main_with_args(std::env::args_os()));
}
