use std::f64::consts::PI;
use std::fmt::Write;

use crate::gamma_model::{asymptotic_coefficients, g_top};
use crate::Result;

use super::format::sig12;

#[derive(Debug, clap::Args)]
pub struct Args {
    /// Exponent gamma > 0
    #[arg(long)]
    gamma: f64,
    /// Truncation order
    #[arg(long, short = 'n', default_value_t = 256)]
    n: usize,
}

pub fn run(a: &Args) -> Result<String> {
    let g = g_top(a.gamma, a.n)?.value;
    let mut out = String::new();
    writeln!(out, "g^({})({}) = {}", a.n, sig12(a.gamma), sig12(g)).unwrap();
    writeln!(out, "(1/2π) g^(1/γ) = {}", sig12(g.powf(1.0 / a.gamma) / (2.0 * PI))).unwrap();
    if a.gamma == 2.0 {
        let (_, g4) = asymptotic_coefficients(a.n)?;
        writeln!(out, "⟨G^({})(4)⟩₂ = {}", a.n, sig12(g4)).unwrap();
    }
    Ok(out)
}
