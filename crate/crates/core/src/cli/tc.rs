use std::fmt::Write;
use std::path::PathBuf;

use crate::tc_solver::{tc_converged, TcReport, TcStatus};
use crate::Result;

use super::format::{lambda_sub, sig12};

#[derive(Debug, clap::Args)]
pub struct Args {
    /// Measure file (JSON)
    measure: PathBuf,
    /// Electron-phonon coupling lambda > 0
    #[arg(long, short = 'l')]
    coupling: f64,
    /// Invert a single truncation order
    #[arg(long, short = 'n', conflicts_with = "converge")]
    n: Option<usize>,
    /// Run the ladder until consecutive orders agree to this relative tolerance [default: 1e-6]
    #[arg(long)]
    converge: Option<f64>,
    /// Print the report as JSON
    #[arg(long)]
    json: bool,
}

pub fn run(a: &Args) -> Result<String> {
    let m = super::load_measure(&a.measure)?;
    let report = match a.n {
        Some(n) => TcReport::for_order(&m, a.coupling, n)?,
        None => tc_converged(&m, a.coupling, a.converge.unwrap_or(1e-6))?,
    };
    if a.json {
        let mut s = serde_json::to_string_pretty(&report).map_err(crate::Error::numerical)?;
        s.push('\n');
        return Ok(s);
    }
    Ok(render(&report))
}

fn render(r: &TcReport) -> String {
    let mut out = String::new();
    let w2 = r.measure.moment(2);
    writeln!(out, "# {}", super::describe(&r.measure)).unwrap();
    writeln!(out, "λ = {}", sig12(r.lambda)).unwrap();
    writeln!(out, "T_c^(N), lower bounds on T_c:").unwrap();
    for e in &r.tc_ladder {
        let cell = match e.value {
            Some(v) => format!("{:<20} {}", sig12(v), e.status.as_str()),
            None => format!("undefined (λ ≤ {} = {})", lambda_sub(e.n), sig12(e.lambda_floor)),
        };
        writeln!(out, "  N = {:<5} {cell}", e.n).unwrap();
    }
    let flat = match r.tc_flat {
        Some(v) => format!("{:<20} lower bound  proven", sig12(v)),
        None => format!(
            "undefined (λ ≤ Ω̄²/⟨ω²⟩ = {})",
            sig12(r.measure.omega_bar().powi(2) / w2)
        ),
    };
    writeln!(out, "T_c♭        {flat}").unwrap();
    writeln!(out, "T_c♯        {:<20} upper bound  proven", sig12(r.tc_sharp)).unwrap();
    writeln!(out, "T_c~        {:<20} upper bound  conjectured", sig12(r.tc_tilde)).unwrap();
    if let Some(tol) = r.tolerance {
        match (r.converged_tc, r.converged_n, r.converged_status) {
            (Some(v), Some(n), Some(status)) => {
                let label = if status == TcStatus::Proven { "proven" } else { "heuristic" };
                writeln!(
                    out,
                    "T_c         {:<20} estimate     {label}, ladder settled to {} at N = {n}",
                    sig12(v),
                    sig12(tol)
                )
                .unwrap();
            }
            _ => {
                let last = r.tc_ladder.last().map_or(0, |e| e.n);
                writeln!(out, "T_c         not settled to {} by N = {last}", sig12(tol)).unwrap();
            }
        }
    }
    writeln!(out, "T_*         {}", sig12(r.t_star)).unwrap();
    writeln!(
        out,
        "λ_*         ≤ {} (1/k^(4) at T_*)  proven; (3/2)Ω̄²/⟨ω²⟩ = {}",
        sig12(r.lambda_star_bound.strong),
        sig12(r.lambda_star_bound.easy)
    )
    .unwrap();
    out
}
