fn main() {
    std::process::exit(xdisc::run(std::env::args_os()));
}
