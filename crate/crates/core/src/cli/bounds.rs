use std::fmt::Write;
use std::path::PathBuf;

use crate::bounds::{k_sharp, k_star, mean_varpi_sq};
use crate::operator::{k_closed_form, k_numeric};
use crate::Result;

use super::format::sig12;

#[derive(Debug, clap::Args)]
pub struct Args {
    /// Measure file (JSON)
    measure: PathBuf,
    /// Temperature T > 0, in the units of the measure's frequencies
    #[arg(long, short = 't')]
    temperature: f64,
    /// Order of the numeric truncation
    #[arg(long, default_value_t = 64)]
    max_n: usize,
}

struct Row {
    name: String,
    value: f64,
    role: &'static str,
    note: &'static str,
}

pub fn run(a: &Args) -> Result<String> {
    let m = super::load_measure(&a.measure)?;
    let t = a.temperature;
    let mut rows = Vec::new();
    let mut ks = Vec::new();
    for n in 1..=4 {
        let k = k_closed_form(&m, t, n)?.k_value;
        ks.push((n, k, "closed form"));
    }
    let big = k_numeric(&m, t, a.max_n)?.k_value;
    ks.push((a.max_n, big, "eigensolver"));
    let star = k_star(&m, t)?;
    let sharp = k_sharp(&m, t)?;

    for &(n, k, note) in &ks {
        rows.push(Row {
            name: format!("k^({n})"),
            value: k,
            role: "lower bound on k",
            note,
        });
    }
    rows.push(Row { name: "k*".into(), value: star, role: "upper bound on k", note: "" });
    rows.push(Row { name: "k♯".into(), value: sharp, role: "upper bound on k", note: "" });
    for &(n, k, note) in &ks {
        rows.push(Row {
            name: format!("Λ^({n})"),
            value: 1.0 / k,
            role: "upper bound on Λ",
            note,
        });
    }
    rows.push(Row { name: "1/k*".into(), value: 1.0 / star, role: "lower bound on Λ", note: "" });
    rows.push(Row { name: "1/k♯".into(), value: 1.0 / sharp, role: "lower bound on Λ", note: "" });

    let mut out = String::new();
    writeln!(out, "# {}", super::describe(&m)).unwrap();
    writeln!(out, "# T = {}, ⟨ϖ²⟩ = {}", sig12(t), sig12(mean_varpi_sq(&m, t)?)).unwrap();
    writeln!(out, "{:<10} {:<20} {:<18} {:<8} note", "quantity", "value", "role", "status").unwrap();
    for r in rows {
        let line = format!("{:<10} {:<20} {:<18} {:<8} {}", r.name, sig12(r.value), r.role, "proven", r.note);
        writeln!(out, "{}", line.trim_end()).unwrap();
    }
    Ok(out)
}
