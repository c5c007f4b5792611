use std::path::PathBuf;

use rayon::prelude::*;

use crate::bounds::{tc_flat, tc_sharp, tc_tilde};
use crate::error::{Error, Result};
use crate::measure::SpectralMeasure;
use crate::tc_solver::{tc_converged, tc_n};

use super::format::sig12;

pub const SCHEMA: &str = "eliashberg-tc v1";
const COLUMNS: [&str; 6] = ["lambda", "tc_flat", "tc_sharp", "tc_tilde", "tc_n4", "tc_converged"];

#[derive(Debug, clap::Args)]
pub struct Args {
    /// Measure file (JSON)
    measure: PathBuf,
    #[arg(long)]
    lambda_min: f64,
    #[arg(long)]
    lambda_max: f64,
    /// Number of grid points, spaced logarithmically
    #[arg(long, default_value_t = 50)]
    points: usize,
    /// Output CSV path
    #[arg(long, short = 'o')]
    out: PathBuf,
    /// Divide temperature columns by √⟨ω²⟩
    #[arg(long)]
    normalized: bool,
    /// Also emit 1/√λ and y = T/(√⟨ω²⟩√λ) for each curve
    #[arg(long)]
    inverse_sqrt_x: bool,
    /// Relative tolerance for the converged ladder
    #[arg(long, default_value_t = 1e-6)]
    tol: f64,
}

/// One λ of the sweep; temperatures are unnormalized.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub lambda: f64,
    pub tc_flat: Option<f64>,
    pub tc_sharp: f64,
    pub tc_tilde: f64,
    pub tc_n4: Option<f64>,
    pub tc_converged: Option<f64>,
}

impl SweepRow {
    pub fn compute(m: &SpectralMeasure, lambda: f64, tol: f64) -> Result<Self> {
        Ok(Self {
            lambda,
            tc_flat: tc_flat(m, lambda),
            tc_sharp: tc_sharp(m, lambda)?,
            tc_tilde: tc_tilde(m, lambda)?,
            tc_n4: tc_n(m, lambda, 4)?.value,
            tc_converged: tc_converged(m, lambda, tol)?.converged_tc,
        })
    }

    fn temperatures(&self) -> [Option<f64>; 5] {
        [
            self.tc_flat,
            Some(self.tc_sharp),
            Some(self.tc_tilde),
            self.tc_n4,
            self.tc_converged,
        ]
    }
}

/// λ_min·(λ_max/λ_min)^{i/(points−1)}, with both ends exact.
pub fn log_grid(lambda_min: f64, lambda_max: f64, points: usize) -> Result<Vec<f64>> {
    if !(lambda_min > 0.0 && lambda_min < lambda_max && lambda_max.is_finite()) {
        return Err(Error::Input(format!(
            "need 0 < lambda-min < lambda-max, got {lambda_min} and {lambda_max}"
        )));
    }
    if points < 2 {
        return Err(Error::Input(format!("need at least 2 points, got {points}")));
    }
    let (a, b) = (lambda_min.ln(), lambda_max.ln());
    let last = points - 1;
    Ok((0..points)
        .map(|i| match i {
            0 => lambda_min,
            i if i == last => lambda_max,
            i => (a + (b - a) * i as f64 / last as f64).exp(),
        })
        .collect())
}

fn cell(v: Option<f64>) -> String {
    v.map(sig12).unwrap_or_default()
}

/// The CSV document for a sweep, schema comment first.
pub fn render(m: &SpectralMeasure, rows: &[SweepRow], normalized: bool, inverse_sqrt_x: bool) -> Result<Vec<u8>> {
    let root_w2 = m.moment(2).sqrt();
    let scale = if normalized { 1.0 / root_w2 } else { 1.0 };
    let mut header: Vec<&str> = COLUMNS.to_vec();
    if inverse_sqrt_x {
        header.extend(["inv_sqrt_lambda", "y_flat", "y_sharp", "y_tilde", "y_n4", "y_converged"]);
    }
    let mut buf = format!(
        "# {SCHEMA}, columns: {}; normalized = {normalized}\n",
        header.join(",")
    )
    .into_bytes();
    {
        let mut w = csv::Writer::from_writer(&mut buf);
        let io = |e: csv::Error| Error::numerical(format!("CSV encoding: {e}"));
        w.write_record(&header).map_err(io)?;
        for r in rows {
            let temps = r.temperatures();
            let mut rec = vec![sig12(r.lambda)];
            rec.extend(temps.iter().map(|t| cell(t.map(|t| t * scale))));
            if inverse_sqrt_x {
                let s = r.lambda.sqrt();
                rec.push(sig12(1.0 / s));
                rec.extend(temps.iter().map(|t| cell(t.map(|t| t / (root_w2 * s)))));
            }
            w.write_record(&rec).map_err(io)?;
        }
        w.flush().map_err(|e| Error::numerical(format!("CSV encoding: {e}")))?;
    }
    Ok(buf)
}

pub fn run(a: &Args) -> Result<String> {
    let m = super::load_measure(&a.measure)?;
    let grid = log_grid(a.lambda_min, a.lambda_max, a.points)?;
    let rows = grid
        .par_iter()
        .map(|&l| SweepRow::compute(&m, l, a.tol))
        .collect::<Result<Vec<_>>>()?;
    let bytes = render(&m, &rows, a.normalized, a.inverse_sqrt_x)?;
    std::fs::write(&a.out, bytes).map_err(|source| Error::Io {
        path: a.out.display().to_string(),
        source,
    })?;
    Ok(format!("wrote {} rows to {}\n", rows.len(), a.out.display()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_ends_are_exact() {
        let g = log_grid(1.0, 100.0, 3).unwrap();
        assert_eq!(g[0], 1.0);
        assert_eq!(g[2], 100.0);
        assert!((g[1] - 10.0).abs() < 1e-12);
        assert!(log_grid(1.0, 1.0, 3).is_err());
        assert!(log_grid(1.0, 2.0, 1).is_err());
    }
}
