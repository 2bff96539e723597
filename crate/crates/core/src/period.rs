//! Main periods of Laurent polynomials and the closed-form regularized I-series
//! of complete intersections.

use num_bigint::BigInt;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::arith::factorial;
use crate::laurent::{standard_polynomial, LaurentPolynomial, ModelSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PeriodSource {
    ConstantTerm,
    ClosedForm,
}

/// Coefficients `c_0, …, c_maxOrder` of a period series.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodSequence {
    pub coefficients: Vec<BigInt>,
    pub source: PeriodSource,
}

impl PeriodSequence {
    pub fn max_order(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.coefficients.iter().map(|c| c.to_string()).collect()
    }
}

/// `[φ[f^j]]` for `j = 0..=max_order`, each entry computed independently.
pub fn main_period_coefficients(f: &LaurentPolynomial, max_order: u32) -> PeriodSequence {
    let coefficients = (0..=max_order)
        .into_par_iter()
        .map(|j| f.power_constant_term(j))
        .collect();
    PeriodSequence {
        coefficients,
        source: PeriodSource::ConstantTerm,
    }
}

/// The coefficient at `j = ι·l` is `(ι l)! ∏ (d_i l)! / (l!)^{N+1}`; all others vanish.
pub fn iseries_coefficients(spec: &ModelSpec, max_order: u32) -> PeriodSequence {
    let iota = spec.index();
    let coefficients = (0..=max_order)
        .map(|j| {
            if j % iota != 0 {
                return BigInt::from(0);
            }
            let l = (j / iota) as u64;
            let num = spec
                .degrees()
                .iter()
                .fold(factorial(j as u64), |acc, &d| acc * factorial(d as u64 * l));
            num / factorial(l).pow(spec.ambient() + 1)
        })
        .collect();
    PeriodSequence {
        coefficients,
        source: PeriodSource::ClosedForm,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodReport {
    pub spec: ModelSpec,
    pub max_order: u32,
    pub matches: bool,
    pub first_mismatch: Option<usize>,
    pub constant_terms: PeriodSequence,
    pub closed_form: PeriodSequence,
}

impl PeriodReport {
    pub fn to_json(&self) -> Value {
        json!({
            "spec": self.spec.to_json(),
            "maxOrder": self.max_order,
            "matches": self.matches,
            "firstMismatch": self.first_mismatch,
            "series": self.constant_terms.to_strings(),
            "closedForm": self.closed_form.to_strings(),
        })
    }
}

/// Default order `3ι`: three nontrivial coefficients.
pub fn default_order(spec: &ModelSpec) -> u32 {
    3 * spec.index()
}

pub fn check_period_condition(spec: &ModelSpec, max_order: u32) -> PeriodReport {
    let f = standard_polynomial(spec);
    let constant_terms = main_period_coefficients(&f, max_order);
    let closed_form = iseries_coefficients(spec, max_order);
    let first_mismatch = constant_terms
        .coefficients
        .iter()
        .zip(&closed_form.coefficients)
        .position(|(a, b)| a != b);
    PeriodReport {
        spec: spec.clone(),
        max_order,
        matches: first_mismatch.is_none(),
        first_mismatch,
        constant_terms,
        closed_form,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(d: &[u32], n: u32) -> ModelSpec {
        ModelSpec::new(d.to_vec(), n).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn central_binomials() {
        let f = LaurentPolynomial::from_terms(1, [(vec![1], BigInt::from(1)), (vec![-1], BigInt::from(1))]).unwrap();
        assert_eq!(main_period_coefficients(&f, 6).coefficients, ints(&[1, 0, 2, 0, 6, 0, 20]));
    }

    #[test]
    fn standard_model_periods() {
        let f = standard_polynomial(&spec(&[3], 4));
        assert_eq!(main_period_coefficients(&f, 4).coefficients, ints(&[1, 0, 12, 0, 540]));
        let g = standard_polynomial(&spec(&[2], 4));
        assert_eq!(main_period_coefficients(&g, 3).coefficients, ints(&[1, 0, 0, 12]));
    }

    #[test]
    fn closed_form_values() {
        let s = spec(&[3], 4);
        assert_eq!(iseries_coefficients(&s, 2).coefficients, ints(&[1, 0, 12]));
        let q = spec(&[2], 4);
        assert_eq!(iseries_coefficients(&q, 6).coefficients[6], BigInt::from(540));
        assert_eq!(iseries_coefficients(&q, 0).coefficients, ints(&[1]));
    }

    #[test]
    fn period_condition_reports() {
        for s in [spec(&[3], 4), spec(&[2], 4)] {
            let r = check_period_condition(&s, 6);
            assert!(r.matches, "{s}");
            assert_eq!(r.first_mismatch, None);
        }
        let r = check_period_condition(&spec(&[2, 2], 5), 4);
        assert!(r.matches);
        assert_eq!(r.constant_terms.coefficients[2], BigInt::from(8));
        assert_eq!(r.to_json()["series"][2], "8");
    }
}
