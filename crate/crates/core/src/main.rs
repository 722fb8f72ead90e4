fn main() {
    // Die quietly on a closed pipe (e.g. `struct-seek query ... | head`)
    // instead of panicking on EPIPE.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    std::process::exit(struct_seek::cli::run(std::env::args()));
}
