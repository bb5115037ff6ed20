use clap::Parser;
use updraw_cli::commands::{init_threads, run, Cli};

fn main() {
    // Die quietly when a downstream pipe closes, as filters expect.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    init_threads();
    if let Err(e) = run(cli) {
        eprintln!("error: {e}");
        std::process::exit(e.code());
    }
}
