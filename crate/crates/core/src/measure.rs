//! Normalized phonon spectral measures and their Matsubara kernel averages.

use std::f64::consts::PI;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::integrate_adaptive;

/// Largest relative mass defect that is silently renormalized.
pub const MASS_TOLERANCE: f64 = 1e-3;

const QUAD_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Atom {
    pub weight: f64,
    pub omega: f64,
}

/// Measure as written in a measure file, before validation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum RawMeasure {
    Einstein { omega: f64 },
    Discrete { atoms: Vec<Atom> },
    /// `(omega, density)` pairs; the density is interpolated linearly and vanishes outside.
    Tabulated { nodes: Vec<[f64; 2]> },
}

impl RawMeasure {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Input(format!("malformed measure: {e}")))
    }

    pub fn validate(self) -> Result<SpectralMeasure> {
        SpectralMeasure::new(self)
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Shape {
    Atoms(Vec<Atom>),
    Density(Vec<(f64, f64)>),
}

/// A validated probability measure on (0, Ω̄].
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralMeasure {
    shape: Shape,
    einstein: bool,
    omega_bar: f64,
    warnings: Vec<String>,
}

impl SpectralMeasure {
    pub fn new(raw: RawMeasure) -> Result<Self> {
        match raw {
            RawMeasure::Einstein { omega } => {
                if !(omega > 0.0 && omega.is_finite()) {
                    return Err(Error::Validation(vec![format!(
                        "einstein omega must be positive and finite, got {omega}"
                    )]));
                }
                Ok(Self {
                    shape: Shape::Atoms(vec![Atom { weight: 1.0, omega }]),
                    einstein: true,
                    omega_bar: omega,
                    warnings: Vec::new(),
                })
            }
            RawMeasure::Discrete { atoms } => Self::discrete(atoms),
            RawMeasure::Tabulated { nodes } => Self::tabulated(nodes),
        }
    }

    pub fn einstein(omega: f64) -> Result<Self> {
        Self::new(RawMeasure::Einstein { omega })
    }

    /// Builds a discrete measure from `(weight, omega)` pairs.
    pub fn from_atoms(atoms: &[(f64, f64)]) -> Result<Self> {
        Self::new(RawMeasure::Discrete {
            atoms: atoms.iter().map(|&(weight, omega)| Atom { weight, omega }).collect(),
        })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        RawMeasure::from_json(text)?.validate()
    }

    pub fn from_file(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_json(&text)
    }

    fn discrete(atoms: Vec<Atom>) -> Result<Self> {
        let mut problems = Vec::new();
        if atoms.is_empty() {
            problems.push("discrete measure has no atoms".to_string());
        }
        for (i, a) in atoms.iter().enumerate() {
            if !(a.omega > 0.0 && a.omega.is_finite()) {
                problems.push(format!("atom {i}: omega must be positive and finite, got {}", a.omega));
            }
            if !(a.weight >= 0.0 && a.weight.is_finite()) {
                problems.push(format!("atom {i}: weight must be nonnegative, got {}", a.weight));
            }
        }
        let mass: f64 = atoms.iter().map(|a| a.weight).sum();
        check_mass(mass, &mut problems);
        if !problems.is_empty() {
            return Err(Error::Validation(problems));
        }
        let atoms: Vec<Atom> = atoms
            .into_iter()
            .filter(|a| a.weight > 0.0)
            .map(|a| Atom {
                weight: a.weight / mass,
                omega: a.omega,
            })
            .collect();
        let omega_bar = atoms.iter().map(|a| a.omega).fold(0.0, f64::max);
        Ok(Self {
            shape: Shape::Atoms(atoms),
            einstein: false,
            omega_bar,
            warnings: Vec::new(),
        })
    }

    fn tabulated(nodes: Vec<[f64; 2]>) -> Result<Self> {
        let mut problems = Vec::new();
        if nodes.len() < 2 {
            problems.push(format!("tabulated measure needs at least 2 nodes, got {}", nodes.len()));
        }
        for (i, &[omega, density]) in nodes.iter().enumerate() {
            if !(omega >= 0.0 && omega.is_finite()) {
                problems.push(format!("node {i}: omega must be nonnegative and finite, got {omega}"));
            }
            if !(density >= 0.0 && density.is_finite()) {
                problems.push(format!("node {i}: density must be nonnegative, got {density}"));
            }
            if i > 0 && !(omega > nodes[i - 1][0]) {
                problems.push(format!("node {i}: omega {omega} does not increase"));
            }
        }
        let mass: f64 = nodes
            .windows(2)
            .map(|w| 0.5 * (w[1][0] - w[0][0]) * (w[0][1] + w[1][1]))
            .sum();
        check_mass(mass, &mut problems);
        if !problems.is_empty() {
            return Err(Error::Validation(problems));
        }

        let mut nodes: Vec<(f64, f64)> = nodes.iter().map(|&[w, d]| (w, d / mass)).collect();
        // Trim zero-density tails so Ω̄ is the edge of the support.
        while nodes.len() > 2 && nodes[nodes.len() - 1].1 == 0.0 && nodes[nodes.len() - 2].1 == 0.0 {
            nodes.pop();
        }
        while nodes.len() > 2 && nodes[0].1 == 0.0 && nodes[1].1 == 0.0 {
            nodes.remove(0);
        }
        let omega_bar = nodes[nodes.len() - 1].0;

        let mut warnings = Vec::new();
        let max_density = nodes.iter().map(|n| n.1).fold(0.0, f64::max);
        let slope_bound = 1e3 * max_density / omega_bar;
        let (w0, d0) = nodes[0];
        if d0 > slope_bound * w0 {
            warnings.push(format!(
                "density {d0} at the first node omega = {w0} does not vanish linearly at small omega"
            ));
        }
        Ok(Self {
            shape: Shape::Density(nodes),
            einstein: false,
            omega_bar,
            warnings,
        })
    }

    /// Ω̄: the upper edge of the support.
    pub fn omega_bar(&self) -> f64 {
        self.omega_bar
    }

    /// Smallest positive frequency carrying weight (atom or tabulation node).
    pub fn omega_min(&self) -> f64 {
        match &self.shape {
            Shape::Atoms(atoms) => atoms.iter().map(|a| a.omega).fold(f64::INFINITY, f64::min),
            Shape::Density(nodes) => nodes
                .iter()
                .map(|n| n.0)
                .find(|&w| w > 0.0)
                .unwrap_or(self.omega_bar),
        }
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    /// True for a measure concentrated on one frequency.
    pub fn is_single_atom(&self) -> bool {
        matches!(&self.shape, Shape::Atoms(a) if a.len() == 1)
    }

    pub fn atoms(&self) -> Option<&[Atom]> {
        match &self.shape {
            Shape::Atoms(a) => Some(a),
            Shape::Density(_) => None,
        }
    }

    /// The normalized measure in file form.
    pub fn to_raw(&self) -> RawMeasure {
        match &self.shape {
            Shape::Atoms(a) if self.einstein => RawMeasure::Einstein { omega: a[0].omega },
            Shape::Atoms(a) => RawMeasure::Discrete { atoms: a.clone() },
            Shape::Density(n) => RawMeasure::Tabulated {
                nodes: n.iter().map(|&(w, d)| [w, d]).collect(),
            },
        }
    }

    /// Pushforward under ω ↦ s·ω.
    pub fn scaled(&self, s: f64) -> Result<Self> {
        if !(s > 0.0 && s.is_finite()) {
            return Err(Error::Domain {
                what: "frequency scale",
                requirement: "s > 0",
                value: s,
            });
        }
        let shape = match &self.shape {
            Shape::Atoms(a) => Shape::Atoms(
                a.iter()
                    .map(|a| Atom {
                        weight: a.weight,
                        omega: s * a.omega,
                    })
                    .collect(),
            ),
            Shape::Density(n) => Shape::Density(n.iter().map(|&(w, d)| (s * w, d / s)).collect()),
        };
        Ok(Self {
            shape,
            einstein: self.einstein,
            omega_bar: s * self.omega_bar,
            warnings: self.warnings.clone(),
        })
    }

    /// ∫ g dP.
    pub fn expect(&self, g: impl Fn(f64) -> f64) -> Result<f64> {
        match &self.shape {
            Shape::Atoms(atoms) => Ok(atoms.iter().map(|a| a.weight * g(a.omega)).sum()),
            Shape::Density(nodes) => {
                let mut total = 0.0;
                for w in nodes.windows(2) {
                    let ((a, da), (b, db)) = (w[0], w[1]);
                    if da == 0.0 && db == 0.0 {
                        continue;
                    }
                    let slope = (db - da) / (b - a);
                    total += integrate_adaptive(|x| (da + slope * (x - a)) * g(x), a, b, QUAD_TOL)?;
                }
                Ok(total)
            }
        }
    }

    /// ⟨ω^k⟩.
    pub fn moment(&self, k: u32) -> f64 {
        let k = k as i32;
        match &self.shape {
            Shape::Atoms(atoms) if self.einstein => atoms[0].omega.powi(k),
            _ => self
                .expect(|w| w.powi(k))
                .expect("polynomial integrands on bounded segments always converge"),
        }
    }

    /// ⟦n⟧ = ⟨ω²/(ω² + (2nπT)²)⟩.
    pub fn kernel_average(&self, n: u32, t: f64) -> Result<f64> {
        check_temperature(t)?;
        if n == 0 {
            return Err(Error::Input("kernel index n must be at least 1".into()));
        }
        let c2 = (2.0 * PI * n as f64 * t).powi(2);
        self.expect(|w| {
            let w2 = w * w;
            w2 / (w2 + c2)
        })
    }

    /// ⟦1⟧, …, ⟦count⟧ at one temperature.
    pub fn kernel_averages(&self, count: usize, t: f64) -> Result<Vec<f64>> {
        check_temperature(t)?;
        match &self.shape {
            Shape::Atoms(atoms) => Ok((1..=count)
                .map(|n| {
                    let c2 = (2.0 * PI * n as f64 * t).powi(2);
                    atoms
                        .iter()
                        .map(|a| {
                            let w2 = a.omega * a.omega;
                            a.weight * w2 / (w2 + c2)
                        })
                        .sum()
                })
                .collect()),
            Shape::Density(_) => (1..=count as u32).map(|n| self.kernel_average(n, t)).collect(),
        }
    }
}

impl Serialize for SpectralMeasure {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_raw().serialize(s)
    }
}

fn check_mass(mass: f64, problems: &mut Vec<String>) {
    if !((mass - 1.0).abs() <= MASS_TOLERANCE) {
        problems.push(format!("total mass {mass} deviates from 1 by more than {MASS_TOLERANCE}"));
    }
}

pub(crate) fn check_temperature(t: f64) -> Result<()> {
    if t > 0.0 && t.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain {
            what: "temperature",
            requirement: "T > 0",
            value: t,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_all_three_shapes() {
        let e = SpectralMeasure::from_json(r#"{"type":"einstein","omega":1.0}"#).unwrap();
        assert_eq!(e.omega_bar(), 1.0);
        let d = SpectralMeasure::from_json(
            r#"{"type":"discrete","atoms":[{"weight":0.5,"omega":0.8},{"weight":0.5,"omega":1.2}]}"#,
        )
        .unwrap();
        assert_eq!(d.omega_bar(), 1.2);
        let t = SpectralMeasure::from_json(r#"{"type":"tabulated","nodes":[[0.0,0.0],[0.5,2.0],[1.0,0.0]]}"#)
            .unwrap();
        assert_eq!(t.omega_bar(), 1.0);
        assert!(t.warnings().is_empty());
    }

    #[test]
    fn rejects_bad_mass_and_lists_offenders() {
        let err = SpectralMeasure::from_atoms(&[(0.7, 1.0), (0.7, 2.0)]).unwrap_err();
        assert!(matches!(err, Error::Validation(ref v) if v.len() == 1 && v[0].contains("1.4")));
        let err = SpectralMeasure::from_atoms(&[(-0.5, 1.0), (1.5, 0.0)]).unwrap_err();
        match err {
            Error::Validation(v) => assert_eq!(v.len(), 2),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn renormalizes_small_defects() {
        let m = SpectralMeasure::from_atoms(&[(0.5004, 1.0), (0.5, 3.0)]).unwrap();
        let total: f64 = m.atoms().unwrap().iter().map(|a| a.weight).sum();
        assert!((total - 1.0).abs() < 1e-15);
    }

    #[test]
    fn malformed_json_is_input_error() {
        assert!(matches!(SpectralMeasure::from_json("{\"type\":\"einstein\"}"), Err(Error::Input(_))));
        assert!(matches!(SpectralMeasure::from_json("not json"), Err(Error::Input(_))));
    }

    #[test]
    fn moments() {
        assert_eq!(SpectralMeasure::einstein(2.0).unwrap().moment(2), 4.0);
        assert_eq!(SpectralMeasure::from_atoms(&[(0.5, 1.0), (0.5, 3.0)]).unwrap().moment(2), 5.0);
        let tri = SpectralMeasure::from_json(r#"{"type":"tabulated","nodes":[[0.0,0.0],[1.0,2.0]]}"#).unwrap();
        assert!((tri.moment(2) - 0.5).abs() < 1e-14);
    }

    #[test]
    fn kernel_average_at_unit_varpi() {
        let t = 0.37;
        let m = SpectralMeasure::einstein(2.0 * PI * t).unwrap();
        assert!((m.kernel_average(1, t).unwrap() - 0.5).abs() < 1e-15);
        assert!((m.kernel_average(2, t).unwrap() - 0.2).abs() < 1e-15);
        assert!(matches!(m.kernel_average(1, 0.0), Err(Error::Domain { .. })));
    }

    #[test]
    fn tabulated_kernel_average_matches_closed_form() {
        // p(ω) = 2ω on [0,1], c = 1: ∫ 2ω·ω²/(ω²+1) = 1 − ln 2
        let tri = SpectralMeasure::from_json(r#"{"type":"tabulated","nodes":[[0.0,0.0],[1.0,2.0]]}"#).unwrap();
        let v = tri.kernel_average(1, 1.0 / (2.0 * PI)).unwrap();
        assert!((v - (1.0 - std::f64::consts::LN_2)).abs() < 1e-12);
    }

    #[test]
    fn nonvanishing_density_at_zero_warns() {
        let m = SpectralMeasure::from_json(r#"{"type":"tabulated","nodes":[[0.0,1.0],[1.0,1.0]]}"#).unwrap();
        assert_eq!(m.warnings().len(), 1);
    }
}
