fn main() {
    let code = nalink::run(std::env::args_os());
    std::process::exit(code as i32);
}
