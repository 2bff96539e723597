//! Exact polynomial interpolation of component counts along one-parameter families.
//!
//! Every formula produced here is conjectural: it interpolates finitely many values and
//! is only ever confirmed or refuted by further data points.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::arith::fmt_rational;
use crate::error::{Error, Result};
use crate::sweep::KTableRow;

/// The quantity that varies along a family with fixed degrees.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilyVariable {
    Iota,
    TorusDim,
    Ambient,
}

impl FamilyVariable {
    pub fn name(self) -> &'static str {
        match self {
            FamilyVariable::Iota => "iota",
            FamilyVariable::TorusDim => "n",
            FamilyVariable::Ambient => "N",
        }
    }

    fn of(self, row: &KTableRow) -> i64 {
        match self {
            FamilyVariable::Iota => row.iota as i64,
            FamilyVariable::TorusDim => row.n as i64,
            FamilyVariable::Ambient => row.ambient as i64,
        }
    }
}

/// `(x, k)` for every row with the given degrees and a component count, sorted by `x`.
pub fn family_points(rows: &[KTableRow], degrees: &[u32], variable: FamilyVariable) -> Vec<(i64, BigInt)> {
    let mut pts: Vec<(i64, BigInt)> = rows
        .iter()
        .filter(|r| r.degrees == degrees)
        .filter_map(|r| r.k.map(|k| (variable.of(r), BigInt::from(k))))
        .collect();
    pts.sort();
    pts.dedup();
    pts
}

/// Power-basis coefficients of the Lagrange interpolant through `points`.
pub fn interpolate(points: &[(i64, BigInt)]) -> Vec<BigRational> {
    let mut coeffs = vec![BigRational::zero(); points.len().max(1)];
    for (i, (xi, yi)) in points.iter().enumerate() {
        // basis polynomial ∏_{j≠i} (x − x_j)/(x_i − x_j)
        let mut basis = vec![BigRational::one()];
        let mut denom = BigRational::one();
        for (j, (xj, _)) in points.iter().enumerate() {
            if i == j {
                continue;
            }
            let mut next = vec![BigRational::zero(); basis.len() + 1];
            for (d, c) in basis.iter().enumerate() {
                next[d + 1] += c;
                next[d] -= c * BigRational::from_integer(BigInt::from(*xj));
            }
            basis = next;
            denom *= BigRational::from_integer(BigInt::from(xi - xj));
        }
        let scale = BigRational::from_integer(yi.clone()) / denom;
        for (d, c) in basis.into_iter().enumerate() {
            coeffs[d] += c * &scale;
        }
    }
    while coeffs.len() > 1 && coeffs.last().is_some_and(|c| c.is_zero()) {
        coeffs.pop();
    }
    coeffs
}

pub fn evaluate(coeffs: &[BigRational], x: i64) -> BigRational {
    let x = BigRational::from_integer(BigInt::from(x));
    coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * &x + c)
}

/// Renders `Σ c_d·var^d` with the highest power first, e.g. `9/2*n^2 - 1/2*n + 1`.
pub fn render(coeffs: &[BigRational], var: &str) -> String {
    let mut out = String::new();
    for (d, c) in coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let sign = if c.is_negative() { "-" } else { "+" };
        if out.is_empty() {
            if c.is_negative() {
                out.push('-');
            }
        } else {
            out.push_str(&format!(" {sign} "));
        }
        let a = c.abs();
        let mono = match d {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{d}"),
        };
        if mono.is_empty() {
            out.push_str(&fmt_rational(&a));
        } else if a.is_one() {
            out.push_str(&mono);
        } else {
            out.push_str(&format!("{}*{mono}", fmt_rational(&a)));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FitStatus {
    /// every point beyond the interpolation nodes agrees
    Confirmed,
    /// no point beyond the interpolation nodes
    Unconfirmed,
    /// some point beyond the nodes disagrees
    Refuted,
}

impl FitStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            FitStatus::Confirmed => "confirmed",
            FitStatus::Unconfirmed => "unconfirmed",
            FitStatus::Refuted => "refuted",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Extrapolation {
    pub x: i64,
    pub predicted: BigRational,
    pub actual: BigInt,
}

impl Extrapolation {
    pub fn agrees(&self) -> bool {
        self.predicted == BigRational::from_integer(self.actual.clone())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FitReport {
    pub variable: FamilyVariable,
    /// degree bound used for the fit (the interpolant may have lower actual degree)
    pub degree: usize,
    pub coefficients: Vec<BigRational>,
    pub nodes: Vec<(i64, BigInt)>,
    pub checks: Vec<Extrapolation>,
    pub status: FitStatus,
}

impl FitReport {
    pub fn formula(&self) -> String {
        render(&self.coefficients, self.variable.name())
    }

    pub fn to_json(&self) -> Value {
        json!({
            "label": "CONJECTURAL",
            "variable": self.variable.name(),
            "degree": self.degree,
            "formula": self.formula(),
            "coefficients": self.coefficients.iter().map(fmt_rational).collect::<Vec<_>>(),
            "nodes": self.nodes.iter().map(|(x, y)| json!([x, y.to_string()])).collect::<Vec<_>>(),
            "checks": self.checks.iter().map(|c| json!({
                "x": c.x,
                "predicted": fmt_rational(&c.predicted),
                "actual": c.actual.to_string(),
                "agrees": c.agrees(),
            })).collect::<Vec<_>>(),
            "status": self.status.as_str(),
        })
    }
}

impl std::fmt::Display for FitReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "CONJECTURAL k = {}  (degree ≤ {}, {})", self.formula(), self.degree, self.status.as_str())?;
        for (x, y) in &self.nodes {
            writeln!(f, "  node {}={x}: k={y}", self.variable.name())?;
        }
        for c in &self.checks {
            writeln!(
                f,
                "  check {}={}: predicted {}, actual {} ({})",
                self.variable.name(),
                c.x,
                fmt_rational(&c.predicted),
                c.actual,
                if c.agrees() { "agrees" } else { "disagrees" }
            )?;
        }
        Ok(())
    }
}

fn fit_with_degree(points: &[(i64, BigInt)], degree: usize, variable: FamilyVariable) -> FitReport {
    let nodes = points[..=degree].to_vec();
    let coefficients = interpolate(&nodes);
    let checks: Vec<Extrapolation> = points[degree + 1..]
        .iter()
        .map(|(x, y)| Extrapolation {
            x: *x,
            predicted: evaluate(&coefficients, *x),
            actual: y.clone(),
        })
        .collect();
    let status = if checks.is_empty() {
        FitStatus::Unconfirmed
    } else if checks.iter().all(Extrapolation::agrees) {
        FitStatus::Confirmed
    } else {
        FitStatus::Refuted
    };
    FitReport {
        variable,
        degree,
        coefficients,
        nodes,
        checks,
        status,
    }
}

/// Interpolates the family through its first `degree + 1` points (sorted by `x`) and
/// checks the rest. Without a degree, the least degree whose interpolant is confirmed by
/// at least one further point is chosen; failing that, the full interpolant is returned.
pub fn fit(points: &[(i64, BigInt)], degree: Option<usize>, variable: FamilyVariable) -> Result<FitReport> {
    match degree {
        Some(m) => {
            if points.len() < m + 1 {
                return Err(Error::InsufficientPoints {
                    needed: m + 1,
                    have: points.len(),
                });
            }
            Ok(fit_with_degree(points, m, variable))
        }
        None => {
            if points.is_empty() {
                return Err(Error::InsufficientPoints { needed: 1, have: 0 });
            }
            Ok((0..points.len())
                .map(|m| fit_with_degree(points, m, variable))
                .find(|r| r.status != FitStatus::Refuted)
                .expect("the full interpolant is never refuted"))
        }
    }
}
