//! Sparse Laurent polynomials with arbitrary-precision integer coefficients,
//! the standard polynomials of complete intersections, and face restrictions.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::Range;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::arith;
use crate::error::{Error, Result};
use crate::geometry::{self, Face, Polytope, RationalPoint};

pub type Exponent = Vec<i64>;

/// Degrees `(d_1,…,d_k)` of a complete intersection in `P^N`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ModelSpec {
    degrees: Vec<u32>,
    ambient: u32,
}

impl ModelSpec {
    pub fn new(degrees: Vec<u32>, ambient: u32) -> Result<Self> {
        if ambient < 1 {
            return Err(Error::InvalidSpec("ambient dimension must be at least 1".into()));
        }
        if let Some(d) = degrees.iter().find(|&&d| d < 2) {
            return Err(Error::InvalidSpec(format!("degree {d} is below 2")));
        }
        let total: i64 = degrees.iter().map(|&d| d as i64).sum();
        if ambient as i64 + 1 - total < 1 {
            return Err(Error::InvalidSpec("index must be positive".into()));
        }
        if (ambient as i64) - (degrees.len() as i64) < 1 {
            return Err(Error::InvalidSpec("torus dimension must be positive".into()));
        }
        Ok(Self { degrees, ambient })
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    /// `N`
    pub fn ambient(&self) -> u32 {
        self.ambient
    }

    /// Number of hypersurfaces `k`.
    pub fn codim(&self) -> usize {
        self.degrees.len()
    }

    /// `ι = N + 1 − Σ d_i`
    pub fn index(&self) -> u32 {
        self.ambient + 1 - self.degrees.iter().sum::<u32>()
    }

    /// `n = N − k`
    pub fn torus_dim(&self) -> usize {
        self.ambient as usize - self.degrees.len()
    }

    pub fn layout(&self) -> VariableLayout {
        let mut start = 0;
        let blocks = self
            .degrees
            .iter()
            .map(|&d| {
                let r = start..start + d as usize - 1;
                start = r.end;
                r
            })
            .collect();
        let tail = start..start + self.index() as usize - 1;
        VariableLayout { blocks, tail }
    }

    /// Every valid spec with torus dimension `n` (a finite set, since `n = Σ(d_i − 1) + ι − 1`),
    /// degrees nondecreasing, ordered by `N` then degrees.
    pub fn with_torus_dim(n: usize) -> Vec<ModelSpec> {
        fn partitions(budget: u32, min: u32, acc: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
            out.push(acc.clone());
            for d in min..=budget + 1 {
                if d - 1 > budget {
                    break;
                }
                acc.push(d);
                partitions(budget - (d - 1), d, acc, out);
                acc.pop();
            }
        }
        let mut tuples = Vec::new();
        partitions(n as u32, 2, &mut Vec::new(), &mut tuples);
        let mut specs: Vec<ModelSpec> = tuples
            .into_iter()
            .filter_map(|t| {
                let ambient = n as u32 + t.len() as u32;
                ModelSpec::new(t, ambient).ok()
            })
            .collect();
        specs.sort_by(|a, b| a.ambient.cmp(&b.ambient).then_with(|| a.degrees.cmp(&b.degrees)));
        specs
    }

    /// `(3;2)`-style label; an empty degree list renders as `-`.
    pub fn label(&self) -> String {
        let ds = if self.degrees.is_empty() {
            "-".to_string()
        } else {
            self.degrees.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(",")
        };
        format!("({ds};{})", self.index())
    }

    pub fn to_json(&self) -> Value {
        json!({
            "degrees": self.degrees,
            "ambient": self.ambient,
            "index": self.index(),
            "torusDim": self.torus_dim(),
        })
    }
}

impl fmt::Display for ModelSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// Block variables `x_{i,j}` first, in block order, then tail variables `y_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VariableLayout {
    pub blocks: Vec<Range<usize>>,
    pub tail: Range<usize>,
}

impl VariableLayout {
    pub fn dim(&self) -> usize {
        self.tail.end
    }

    pub fn names(&self) -> Vec<String> {
        let mut names = Vec::with_capacity(self.dim());
        for (i, b) in self.blocks.iter().enumerate() {
            names.extend((1..=b.len()).map(|j| format!("x{}_{}", i + 1, j)));
        }
        names.extend((1..=self.tail.len()).map(|j| format!("y{j}")));
        names
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentPolynomial {
    dim: usize,
    terms: BTreeMap<Exponent, BigInt>,
}

impl LaurentPolynomial {
    pub fn zero(dim: usize) -> Self {
        Self {
            dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(dim: usize, c: impl Into<BigInt>) -> Self {
        Self::monomial(vec![0; dim], c)
    }

    pub fn monomial(exp: Exponent, c: impl Into<BigInt>) -> Self {
        let mut p = Self::zero(exp.len());
        let c = c.into();
        if !c.is_zero() {
            p.terms.insert(exp, c);
        }
        p
    }

    /// Builds a polynomial, merging repeated exponents and dropping zero coefficients.
    pub fn from_terms(dim: usize, terms: impl IntoIterator<Item = (Exponent, BigInt)>) -> Result<Self> {
        let mut p = Self::zero(dim);
        for (e, c) in terms {
            if e.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: e.len(),
                });
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    fn add_term(&mut self, e: Exponent, c: BigInt) {
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                if !c.is_zero() {
                    v.insert(c);
                }
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exp: &[i64]) -> BigInt {
        self.terms.get(exp).cloned().unwrap_or_default()
    }

    pub fn constant_term(&self) -> BigInt {
        self.coefficient(&vec![0; self.dim])
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        Ok(self.product_filtered(other, |_| true))
    }

    fn product_filtered(&self, other: &Self, keep: impl Fn(&[i64]) -> bool) -> Self {
        let mut acc: HashMap<Exponent, BigInt> = HashMap::with_capacity(self.len() * other.len());
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Exponent = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                if let Some(c) = acc.get_mut(&e) {
                    *c += ca * cb;
                } else if keep(&e) {
                    acc.insert(e, ca * cb);
                }
            }
        }
        Self {
            dim: self.dim,
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        Ok(())
    }

    /// Multiplies every exponent by a monomial `x^shift`.
    pub fn shift(&self, shift: &[i64]) -> Self {
        Self {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().zip(shift).map(|(a, b)| a + b).collect(), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, j: u32) -> Self {
        let mut out = Self::constant(self.dim, 1);
        for _ in 0..j {
            out = self.product_filtered(&out, |_| true);
        }
        out
    }

    pub fn newton_polytope(&self) -> Result<Polytope> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let pts: Vec<RationalPoint> = self.terms.keys().map(|e| RationalPoint::from_i64(e)).collect();
        geometry::convex_hull(&pts)
    }

    /// Constant term of `f^j` by plain repeated multiplication.
    pub fn power_constant_term_naive(&self, j: u32) -> BigInt {
        self.pow(j).constant_term()
    }

    /// Constant term of `f^j`.
    ///
    /// Computes `f^i` incrementally and, with `r = j − i` factors left, keeps a
    /// monomial `x^a` only if `−a ∈ r·N(f)`; any other monomial cannot reach the
    /// zero exponent.
    pub fn power_constant_term(&self, j: u32) -> BigInt {
        if j == 0 {
            return BigInt::one();
        }
        if self.is_zero() {
            return BigInt::zero();
        }
        let Some(filter) = ReachFilter::new(self) else {
            return self.power_constant_term_naive(j);
        };
        let mut g = Self::constant(self.dim, 1);
        for step in 1..=j {
            let remaining = (j - step) as i64;
            g = g.product_filtered(self, |a| filter.reaches_origin(a, remaining));
            if g.is_zero() {
                return BigInt::zero();
            }
        }
        g.constant_term()
    }

    /// Terms whose exponents lie on the face `q` of this polynomial's Newton polytope.
    pub fn restrict_to_face(&self, q: &Face<'_>) -> Result<Self> {
        let newton = self.newton_polytope()?;
        if *q.parent() != newton {
            return Err(Error::NotAFace);
        }
        let terms = self
            .terms
            .iter()
            .filter(|(e, _)| {
                let x: Vec<BigInt> = e.iter().map(|&v| BigInt::from(v)).collect();
                q.contains_int(&x)
            })
            .map(|(e, c)| (e.clone(), c.clone()))
            .collect();
        Ok(Self { dim: self.dim, terms })
    }

    pub fn render(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let mono: Vec<String> = e
                .iter()
                .zip(names)
                .filter(|(p, _)| **p != 0)
                .map(|(p, n)| if *p == 1 { n.clone() } else { format!("{n}^{p}") })
                .collect();
            let mag = c.abs();
            let body = match (mono.is_empty(), mag.is_one()) {
                (true, _) => mag.to_string(),
                (false, true) => mono.join("*"),
                (false, false) => format!("{mag}*{}", mono.join("*")),
            };
            match (i, c.is_negative()) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            out.push_str(&body);
        }
        out
    }

    pub fn default_names(&self) -> Vec<String> {
        (1..=self.dim).map(|i| format!("x{i}")).collect()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "dim": self.dim,
            "terms": self
                .terms
                .iter()
                .map(|(e, c)| json!({"exp": e, "coeff": c.to_string()}))
                .collect::<Vec<_>>(),
        })
    }
}

impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(&self.default_names()))
    }
}

/// Membership test `−a ∈ r·N(f)` against the exact H-representation of `N(f)`.
struct ReachFilter {
    equations: Vec<(Vec<i64>, i64)>,
    inequalities: Vec<(Vec<i64>, i64)>,
}

impl ReachFilter {
    fn new(f: &LaurentPolynomial) -> Option<Self> {
        let p = f.newton_polytope().ok()?;
        let convert = |hs: &[geometry::HalfSpace]| -> Option<Vec<(Vec<i64>, i64)>> {
            hs.iter()
                .map(|h| {
                    let n: Option<Vec<i64>> = h.normal.iter().map(|x| x.to_i64()).collect();
                    let o = h.offset.is_integer().then(|| h.offset.to_integer().to_i64()).flatten();
                    Some((n?, o?))
                })
                .collect()
        };
        Some(Self {
            equations: convert(p.equations())?,
            inequalities: convert(p.relative_facets())?,
        })
    }

    fn reaches_origin(&self, a: &[i64], remaining: i64) -> bool {
        if remaining == 0 {
            return a.iter().all(|&x| x == 0);
        }
        let neg_dot = |n: &[i64]| -> i64 { -n.iter().zip(a).map(|(x, y)| x * y).sum::<i64>() };
        self.equations.iter().all(|(n, c)| neg_dot(n) == remaining * c)
            && self.inequalities.iter().all(|(n, b)| neg_dot(n) >= remaining * b)
    }
}

/// `∏_i (x_{i,1}+…+x_{i,d_i−1}+1)^{d_i} / (∏ x_{i,j} ∏ y_j) + y_1 + … + y_{ι−1}`.
pub fn standard_polynomial(spec: &ModelSpec) -> LaurentPolynomial {
    let layout = spec.layout();
    let n = layout.dim();
    let mut body = LaurentPolynomial::constant(n, 1);
    for (block, &d) in layout.blocks.iter().zip(spec.degrees()) {
        let mut linear = LaurentPolynomial::constant(n, 1);
        for pos in block.clone() {
            let mut e = vec![0; n];
            e[pos] = 1;
            linear.add_term(e, BigInt::one());
        }
        body = body.product_filtered(&linear.pow(d), |_| true);
    }
    let mut f = body.shift(&vec![-1; n]);
    for pos in layout.tail.clone() {
        let mut e = vec![0; n];
        e[pos] = 1;
        f.add_term(e, BigInt::one());
    }
    f
}

/// An affine lattice isomorphism from the affine lattice spanned by a Newton polytope
/// onto `Z^m`: the exponent `origin + Σ c_i·basis_i` is sent to `matrix·c + translation`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeEquivalence {
    pub origin: Vec<i64>,
    pub basis: Vec<Vec<i64>>,
    pub matrix: Vec<Vec<i64>>,
    pub translation: Vec<i64>,
}

impl LatticeEquivalence {
    pub fn apply(&self, exponent: &[i64]) -> Option<Vec<i64>> {
        let c = lattice_coordinates(&self.origin, &self.basis, exponent)?;
        Some(
            self.matrix
                .iter()
                .zip(&self.translation)
                .map(|(row, t)| row.iter().zip(&c).map(|(a, b)| a * b).sum::<i64>() + t)
                .collect(),
        )
    }

    pub fn to_json(&self) -> Value {
        json!({
            "origin": self.origin,
            "basis": self.basis,
            "matrix": self.matrix,
            "translation": self.translation,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StandardMatch {
    pub spec: ModelSpec,
    pub map: LatticeEquivalence,
}

/// Largest vertex count for which the bijection search is attempted.
pub const MAX_EQUIVALENCE_VERTICES: usize = 12;

// coordinates c with origin + Σ c_i basis_i = e, or None if e is off the lattice
fn lattice_coordinates(origin: &[i64], basis: &[Vec<i64>], e: &[i64]) -> Option<Vec<i64>> {
    let m = basis.len();
    let n = origin.len();
    // n × (m+1) augmented system
    let mut rows: Vec<Vec<BigRational>> = (0..n)
        .map(|r| {
            let mut row: Vec<BigRational> = basis.iter().map(|b| arith::rat(b[r])).collect();
            row.push(arith::rat(e[r] - origin[r]));
            row
        })
        .collect();
    let pivots = arith::rref(&mut rows);
    if pivots.contains(&m) {
        return None;
    }
    let mut c = vec![0i64; m];
    for (r, &p) in pivots.iter().enumerate() {
        let v = &rows[r][m];
        if !v.is_integer() {
            return None;
        }
        c[p] = v.to_integer().to_i64()?;
    }
    Some(c)
}

/// Searches for an affine lattice isomorphism carrying `f` term-by-term onto the
/// standard polynomial of one of `candidates`; the first match in candidate order wins.
pub fn is_standard_equivalent(f: &LaurentPolynomial, candidates: &[ModelSpec]) -> Option<StandardMatch> {
    let newton = f.newton_polytope().ok()?;
    let m = newton.affine_dim();
    if newton.vertices().len() > MAX_EQUIVALENCE_VERTICES {
        return None;
    }
    let origin: Vec<i64> = newton.vertices()[0].to_lattice()?.to_i64()?;
    let eq_rows: Vec<Vec<BigInt>> = newton.equations().iter().map(|h| h.normal.clone()).collect();
    let basis: Vec<Vec<i64>> = arith::integer_kernel(&eq_rows, f.dim())
        .into_iter()
        .map(|v| v.iter().map(|x| x.to_i64()).collect::<Option<Vec<_>>>())
        .collect::<Option<_>>()?;
    debug_assert_eq!(basis.len(), m);

    let mut source: BTreeMap<Vec<i64>, BigInt> = BTreeMap::new();
    for (e, c) in f.terms() {
        source.insert(lattice_coordinates(&origin, &basis, e)?, c.clone());
    }
    let src_vertices: Vec<Vec<i64>> = newton
        .vertices()
        .iter()
        .map(|v| lattice_coordinates(&origin, &basis, &v.to_lattice()?.to_i64()?))
        .collect::<Option<_>>()?;

    // affinely independent frame among the source vertices
    let mut frame: Vec<usize> = vec![0];
    for i in 1..src_vertices.len() {
        if frame.len() == m + 1 {
            break;
        }
        let mut trial: Vec<Vec<BigRational>> = frame[1..]
            .iter()
            .chain(std::iter::once(&i))
            .map(|&k| diff_rat(&src_vertices[k], &src_vertices[frame[0]]))
            .collect();
        if arith::rref(&mut trial).len() == frame.len() {
            frame.push(i);
        }
    }
    if frame.len() != m + 1 {
        return None;
    }
    let base = &src_vertices[frame[0]];
    // columns are frame edge vectors
    let edges: Vec<Vec<BigRational>> = (0..m)
        .map(|r| frame[1..].iter().map(|&k| arith::rat(src_vertices[k][r] - base[r])).collect())
        .collect();
    let edges_inv = if m == 0 { Vec::new() } else { arith::inverse(&edges)? };

    for spec in candidates {
        if spec.torus_dim() != m {
            continue;
        }
        let g = standard_polynomial(spec);
        if g.len() != f.len() {
            continue;
        }
        let Ok(target_poly) = g.newton_polytope() else { continue };
        let targets: Vec<Vec<i64>> = target_poly
            .vertices()
            .iter()
            .filter_map(|v| v.to_lattice()?.to_i64())
            .collect();
        if targets.len() != src_vertices.len() {
            continue;
        }
        let mut chosen = Vec::with_capacity(m + 1);
        let found = search_frames(&targets, m + 1, &mut chosen, &mut |assignment| {
            let map = solve_frame_map(base, &edges_inv, assignment, &targets, m)?;
            let (matrix, translation) = map;
            let ok = source.iter().all(|(c, coeff)| {
                let img: Vec<i64> = matrix
                    .iter()
                    .zip(&translation)
                    .map(|(row, t)| row.iter().zip(c).map(|(a, b)| a * b).sum::<i64>() + t)
                    .collect();
                g.coefficient(&img) == *coeff
            });
            ok.then(|| LatticeEquivalence {
                origin: origin.clone(),
                basis: basis.clone(),
                matrix,
                translation,
            })
        });
        if let Some(map) = found {
            return Some(StandardMatch {
                spec: spec.clone(),
                map,
            });
        }
    }
    None
}

fn diff_rat(a: &[i64], b: &[i64]) -> Vec<BigRational> {
    a.iter().zip(b).map(|(x, y)| arith::rat(x - y)).collect()
}

fn search_frames<T>(
    targets: &[Vec<i64>],
    size: usize,
    chosen: &mut Vec<usize>,
    visit: &mut impl FnMut(&[usize]) -> Option<T>,
) -> Option<T> {
    if chosen.len() == size {
        return visit(chosen);
    }
    for t in 0..targets.len() {
        if chosen.contains(&t) {
            continue;
        }
        chosen.push(t);
        let r = search_frames(targets, size, chosen, visit);
        chosen.pop();
        if r.is_some() {
            return r;
        }
    }
    None
}

// matrix A = W·E⁻¹ with W the target frame edges; requires A integral and unimodular
fn solve_frame_map(
    base: &[i64],
    edges_inv: &[Vec<BigRational>],
    assignment: &[usize],
    targets: &[Vec<i64>],
    m: usize,
) -> Option<(Vec<Vec<i64>>, Vec<i64>)> {
    let t0 = &targets[assignment[0]];
    let w: Vec<Vec<BigRational>> = (0..m)
        .map(|r| assignment[1..].iter().map(|&k| arith::rat(targets[k][r] - t0[r])).collect())
        .collect();
    let mut matrix = vec![vec![0i64; m]; m];
    for r in 0..m {
        for c in 0..m {
            let v: BigRational = (0..m).map(|k| &w[r][k] * &edges_inv[k][c]).sum();
            if !v.is_integer() {
                return None;
            }
            matrix[r][c] = v.to_integer().to_i64()?;
        }
    }
    let det = arith::determinant(
        &matrix
            .iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect::<Vec<_>>(),
    );
    if !det.abs().is_one() {
        return None;
    }
    let translation: Vec<i64> = (0..m)
        .map(|r| t0[r] - matrix[r].iter().zip(base).map(|(a, b)| a * b).sum::<i64>())
        .collect();
    Some((matrix, translation))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(d: &[u32], n: u32) -> ModelSpec {
        ModelSpec::new(d.to_vec(), n).unwrap()
    }

    fn poly(dim: usize, terms: &[(&[i64], i64)]) -> LaurentPolynomial {
        LaurentPolynomial::from_terms(dim, terms.iter().map(|(e, c)| (e.to_vec(), BigInt::from(*c)))).unwrap()
    }

    #[test]
    fn spec_invariants() {
        let s = spec(&[3], 4);
        assert_eq!((s.index(), s.torus_dim(), s.codim()), (2, 3, 1));
        assert!(matches!(ModelSpec::new(vec![5], 4), Err(Error::InvalidSpec(m)) if m.contains("index must be positive")));
        assert!(ModelSpec::new(vec![1, 2], 4).is_err());
        let layout = spec(&[3, 2], 6).layout();
        assert_eq!(layout.blocks, vec![0..2, 2..3]);
        assert_eq!(layout.tail, 3..4);
        assert_eq!(layout.names(), ["x1_1", "x1_2", "x2_1", "y1"]);
    }

    #[test]
    fn specs_by_torus_dim() {
        let two: Vec<String> = ModelSpec::with_torus_dim(2).iter().map(|s| s.label()).collect();
        assert_eq!(two, ["(-;3)", "(2;2)", "(3;1)", "(2,2;1)"]);
        assert!(ModelSpec::with_torus_dim(3).iter().all(|s| s.torus_dim() == 3));
    }

    #[test]
    fn standard_cubic_threefold_model() {
        let f = standard_polynomial(&spec(&[3], 4));
        assert_eq!(f.len(), 11);
        assert_eq!(f.coefficient(&[0, 0, -1]), BigInt::from(6));
        assert_eq!(f.coefficient(&[0, 0, 1]), BigInt::one());
        assert!(f.terms().all(|(_, c)| c.is_positive()));
    }

    #[test]
    fn standard_quadric_threefold_model() {
        let f = standard_polynomial(&spec(&[2], 4));
        let expected = poly(
            3,
            &[(&[1, -1, -1], 1), (&[0, -1, -1], 2), (&[-1, -1, -1], 1), (&[0, 1, 0], 1), (&[0, 0, 1], 1)],
        );
        assert_eq!(f, expected);
    }

    #[test]
    fn standard_projective_plane_model() {
        let f = standard_polynomial(&spec(&[], 2));
        assert_eq!(f, poly(2, &[(&[1, 0], 1), (&[0, 1], 1), (&[-1, -1], 1)]));
    }

    #[test]
    fn multiplication() {
        let a = poly(1, &[(&[1], 1), (&[0], 1)]);
        let b = poly(1, &[(&[1], 1), (&[0], -1)]);
        assert_eq!(a.multiply(&b).unwrap(), poly(1, &[(&[2], 1), (&[0], -1)]));
        assert!(a.multiply(&LaurentPolynomial::zero(1)).unwrap().is_zero());
        let c = poly(1, &[(&[1], 1), (&[-1], 1)]);
        assert_eq!(c.multiply(&c).unwrap(), poly(1, &[(&[2], 1), (&[0], 2), (&[-2], 1)]));
        assert!(a.multiply(&LaurentPolynomial::zero(2)).is_err());
    }

    #[test]
    fn newton_polytopes() {
        let p = LaurentPolynomial::constant(2, 5).newton_polytope().unwrap();
        assert_eq!(p.affine_dim(), 0);
        assert_eq!(p.vertices(), [RationalPoint::from_i64(&[0, 0])]);
        let seg = poly(1, &[(&[1], 1), (&[-1], 1)]).newton_polytope().unwrap();
        assert_eq!(seg.vertices().len(), 2);
        assert!(matches!(LaurentPolynomial::zero(2).newton_polytope(), Err(Error::ZeroPolynomial)));
    }

    #[test]
    fn constant_terms() {
        let c = poly(1, &[(&[1], 1), (&[-1], 1)]);
        assert_eq!(c.power_constant_term(0), BigInt::one());
        assert_eq!(c.power_constant_term(2), BigInt::from(2));
        let f = standard_polynomial(&spec(&[3], 4));
        assert_eq!(f.power_constant_term(2), BigInt::from(12));
        assert_eq!(f.power_constant_term_naive(2), BigInt::from(12));
        assert!(LaurentPolynomial::zero(2).power_constant_term(3).is_zero());
    }

    #[test]
    fn restriction_to_vertex_and_facets() {
        let f = standard_polynomial(&spec(&[3], 4));
        let n = f.newton_polytope().unwrap();

        let apex = n.faces(0).unwrap().into_iter().find(|q| q.vertices().any(|v| *v == RationalPoint::from_i64(&[0, 0, 1]))).unwrap();
        assert_eq!(f.restrict_to_face(&apex).unwrap(), poly(3, &[(&[0, 0, 1], 1)]));

        let base = n.faces(2).unwrap().into_iter().find(|q| !q.vertices().any(|v| *v == RationalPoint::from_i64(&[0, 0, 1]))).unwrap();
        let r = f.restrict_to_face(&base).unwrap();
        assert_eq!(r.len(), 10);
        assert!(r.terms().all(|(e, _)| e[2] == -1));

        let edge = n
            .faces(1)
            .unwrap()
            .into_iter()
            .find(|q| {
                let vs: Vec<_> = q.vertices().cloned().collect();
                vs.contains(&RationalPoint::from_i64(&[2, -1, -1])) && vs.contains(&RationalPoint::from_i64(&[-1, 2, -1]))
            })
            .unwrap();
        let r = f.restrict_to_face(&edge).unwrap();
        let coeffs: Vec<BigInt> = r.terms().map(|(_, c)| c.clone()).collect();
        assert_eq!(coeffs, [1, 3, 3, 1].map(BigInt::from));
    }

    #[test]
    fn restriction_rejects_foreign_face() {
        let f = standard_polynomial(&spec(&[3], 4));
        let other = standard_polynomial(&spec(&[2], 4)).newton_polytope().unwrap();
        let q = other.faces(0).unwrap().remove(0);
        assert!(matches!(f.restrict_to_face(&q), Err(Error::NotAFace)));
    }

    #[test]
    fn equivalence_identity_and_failure() {
        let s = spec(&[3], 3);
        let f = standard_polynomial(&s);
        let m = is_standard_equivalent(&f, std::slice::from_ref(&s)).unwrap();
        assert_eq!(m.spec, s);
        for (e, _) in f.terms() {
            assert_eq!(f.coefficient(&m.map.apply(e).unwrap()), f.coefficient(e));
        }
        let generic = poly(2, &[(&[1, 0], 1), (&[0, 1], 1)]);
        assert!(is_standard_equivalent(&generic, &ModelSpec::with_torus_dim(1)).is_none());
    }

    #[test]
    fn base_facet_of_cubic_threefold_is_cubic_surface_model() {
        let f = standard_polynomial(&spec(&[3], 4));
        let n = f.newton_polytope().unwrap();
        let base = n.faces(2).unwrap().into_iter().find(|q| !q.vertices().any(|v| *v == RationalPoint::from_i64(&[0, 0, 1]))).unwrap();
        let r = f.restrict_to_face(&base).unwrap();
        // dropping the y-coordinate after translating by (0,0,1) gives the (3;1) polynomial itself
        let dropped = LaurentPolynomial::from_terms(2, r.shift(&[0, 0, 1]).terms().map(|(e, c)| (e[..2].to_vec(), c.clone()))).unwrap();
        assert_eq!(dropped, standard_polynomial(&spec(&[3], 3)));
        let m = is_standard_equivalent(&r, &ModelSpec::with_torus_dim(2)).unwrap();
        assert_eq!(m.spec, spec(&[3], 3));
    }

    #[test]
    fn rendering() {
        let f = standard_polynomial(&spec(&[], 2));
        assert_eq!(f.render(&spec(&[], 2).layout().names()), "y1^-1*y2^-1 + y2 + y1");
        let g = poly(1, &[(&[2], 1), (&[0], -3)]);
        assert_eq!(g.to_string(), "-3 + x1^2");
        assert_eq!(f.to_json()["terms"][0]["coeff"], "1");
    }
}
