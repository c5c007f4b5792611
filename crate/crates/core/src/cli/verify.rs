use crate::operator::fault;
use crate::verify::{run_suite, Mode};

use super::{Fault, EXIT_OK, EXIT_VERIFY};

#[derive(Debug, clap::Args)]
pub struct Args {
    /// Coarser grids, for a quick check
    #[arg(long)]
    fast: bool,
    /// Deliberately break the operator to confirm the suite notices
    #[arg(long, value_enum, hide = true)]
    inject_fault: Option<Fault>,
}

pub fn run(a: &Args) -> i32 {
    if a.inject_fault == Some(Fault::K3Sign) {
        fault::set_k3_sign_flip(true);
    }
    let mode = if a.fast { Mode::Fast } else { Mode::Full };
    let report = run_suite(mode);
    for o in &report.outcomes {
        let tag = match (o.passed, o.blocking) {
            (true, _) => "PASS",
            (false, true) => "FAIL",
            (false, false) => "NOTE",
        };
        println!("{tag} {} ({:.2?}): {}", o.name, o.elapsed, o.detail);
    }
    let failed = report.outcomes.iter().filter(|o| !o.passed && o.blocking).count();
    println!(
        "{} checks, {failed} failed, {:.2?}",
        report.outcomes.len(),
        report.elapsed
    );
    if report.passed() {
        EXIT_OK
    } else {
        EXIT_VERIFY
    }
}
