//! Parses a run configuration, prints its canonical form, and runs `solve`
//! and `sweep` into a scratch directory.

use tpms::cli::{cmd_solve, cmd_sweep, RunConfig};

const CONFIG: &str = "
# L4 on its default slice, then a coarse sweep of X
family = L4
sweep_re = 0.1 2.0 20
sweep_im = -2 0.5 6
tol.solve = 1e-12
";

fn main() {
    let mut cfg = match RunConfig::parse(CONFIG) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("{e}");
            std::process::exit(2);
        }
    };
    cfg.output = std::env::temp_dir().join("tpms-run-config");
    print!("canonical form:\n{cfg}\n");
    for (name, result) in [("solve", cmd_solve(&cfg)), ("sweep", cmd_sweep(&cfg))] {
        match result {
            Ok(o) => print!("[{name}]\n{}", o.summary),
            Err(e) => println!("[{name}] error (exit {}): {e}", e.exit_code()),
        }
    }
    match RunConfig::parse("family = C2\nresolution = 32\nsmoothing = 3\n") {
        Err(e) => println!("rejected: {e}"),
        Ok(_) => unreachable!("unknown keys are rejected"),
    }
}
