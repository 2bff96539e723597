//! Exact convex geometry over the integers and rationals.
//!
//! Hulls are computed with the double description method on the homogenized
//! point set, so every predicate is an exact sign test. Polytopes that are not
//! full-dimensional are handled in a coordinate chart of their affine hull; their
//! facet inequalities are valid on that hull and are paired with the hull's
//! defining equations.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::arith::{self, dot, dot_rat};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LatticePoint(Vec<BigInt>);

impl LatticePoint {
    pub fn new(coords: Vec<BigInt>) -> Self {
        Self(coords)
    }

    pub fn from_i64(coords: &[i64]) -> Self {
        Self(coords.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// gcd of the coordinates is 1.
    pub fn is_primitive(&self) -> bool {
        arith::gcd_all(self.0.iter()).is_one()
    }

    pub fn to_rational(&self) -> RationalPoint {
        RationalPoint(self.0.iter().cloned().map(BigRational::from_integer).collect())
    }

    pub fn to_i64(&self) -> Option<Vec<i64>> {
        self.0.iter().map(|c| c.to_i64()).collect()
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.0.iter().map(int_json).collect())
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RationalPoint(Vec<BigRational>);

impl RationalPoint {
    pub fn new(coords: Vec<BigRational>) -> Self {
        Self(coords)
    }

    pub fn from_i64(coords: &[i64]) -> Self {
        LatticePoint::from_i64(coords).to_rational()
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|c| c.is_integer())
    }

    pub fn to_lattice(&self) -> Option<LatticePoint> {
        self.is_integral()
            .then(|| LatticePoint(self.0.iter().map(|c| c.to_integer()).collect()))
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.0.iter().map(rational_json).collect())
    }
}

impl fmt::Display for RationalPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", arith::fmt_rational(c))?;
        }
        write!(f, ")")
    }
}

/// `{x : ⟨normal, x⟩ ≥ offset}` with a primitive integer normal.
///
/// The offset is an integer whenever the polytope it bounds has integral vertices.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfSpace {
    pub normal: Vec<BigInt>,
    pub offset: BigRational,
}

impl HalfSpace {
    /// `⟨normal, x⟩ − offset`: positive strictly inside, zero on the hyperplane.
    pub fn slack(&self, x: &[BigRational]) -> BigRational {
        dot_rat(&self.normal, x) - &self.offset
    }

    pub fn slack_int(&self, x: &[BigInt]) -> BigRational {
        BigRational::from_integer(dot(&self.normal, x)) - &self.offset
    }

    pub fn to_json(&self) -> Value {
        json!({
            "normal": self.normal.iter().map(int_json).collect::<Vec<_>>(),
            "offset": rational_json(&self.offset),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Containment {
    Interior,
    Boundary,
    Outside,
}

/// A convex polytope in vertex representation with a write-once cached facet system.
#[derive(Debug)]
pub struct Polytope {
    dim: usize,
    affine_dim: usize,
    vertices: Vec<RationalPoint>,
    equations: Vec<HalfSpace>,
    facets: OnceLock<Vec<HalfSpace>>,
}

impl Clone for Polytope {
    fn clone(&self) -> Self {
        let facets = OnceLock::new();
        if let Some(f) = self.facets.get() {
            let _ = facets.set(f.clone());
        }
        Self {
            dim: self.dim,
            affine_dim: self.affine_dim,
            vertices: self.vertices.clone(),
            equations: self.equations.clone(),
            facets,
        }
    }
}

impl PartialEq for Polytope {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.vertices == other.vertices
    }
}

impl Eq for Polytope {}

/// A face of a polytope, identified by the indices of the parent vertices it contains.
#[derive(Clone, Debug)]
pub struct Face<'a> {
    parent: &'a Polytope,
    vertex_indices: Vec<usize>,
    facet_indices: Vec<usize>,
    dim: usize,
}

impl<'a> Face<'a> {
    pub fn parent(&self) -> &'a Polytope {
        self.parent
    }

    pub fn vertex_indices(&self) -> &[usize] {
        &self.vertex_indices
    }

    /// Indices (into the parent's facet list) of the facets containing this face.
    pub fn facet_indices(&self) -> &[usize] {
        &self.facet_indices
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> impl Iterator<Item = &'a RationalPoint> + '_ {
        self.vertex_indices.iter().map(|&i| &self.parent.vertices[i])
    }

    /// Whether `x` lies on this face: inside the parent and tight on every facet containing the face.
    pub fn contains(&self, x: &[BigRational]) -> bool {
        if self.parent.containment(x) == Containment::Outside {
            return false;
        }
        let facets = self.parent.relative_facets();
        self.facet_indices.iter().all(|&f| facets[f].slack(x).is_zero())
    }

    pub fn contains_int(&self, x: &[BigInt]) -> bool {
        let q: Vec<BigRational> = x.iter().cloned().map(BigRational::from_integer).collect();
        self.contains(&q)
    }
}

/// Convex hull of a finite point set; the result keeps only the extreme points,
/// sorted lexicographically.
pub fn convex_hull(points: &[RationalPoint]) -> Result<Polytope> {
    let first = points.first().ok_or(Error::EmptyInput)?;
    let dim = first.dim();
    if let Some(bad) = points.iter().find(|p| p.dim() != dim) {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: bad.dim(),
        });
    }
    let pts: Vec<RationalPoint> = points
        .iter()
        .cloned()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let hull = compute_hull(&pts, dim);
    let facets = OnceLock::new();
    let _ = facets.set(hull.facets);
    Ok(Polytope {
        dim,
        affine_dim: hull.affine_dim,
        vertices: hull.vertices,
        equations: hull.equations,
        facets,
    })
}

pub fn convex_hull_lattice(points: &[LatticePoint]) -> Result<Polytope> {
    let pts: Vec<RationalPoint> = points.iter().map(|p| p.to_rational()).collect();
    convex_hull(&pts)
}

struct Hull {
    affine_dim: usize,
    vertices: Vec<RationalPoint>,
    equations: Vec<HalfSpace>,
    facets: Vec<HalfSpace>,
}

// `pts` sorted and deduplicated, nonempty.
fn compute_hull(pts: &[RationalPoint], dim: usize) -> Hull {
    let base = pts[0].coords();
    let diffs: Vec<Vec<BigRational>> = pts[1..]
        .iter()
        .map(|p| p.coords().iter().zip(base).map(|(a, b)| a - b).collect())
        .collect();
    let mut echelon = diffs.clone();
    let chart = arith::rref(&mut echelon);
    let affine_dim = chart.len();

    let equations: Vec<HalfSpace> = if diffs.is_empty() {
        (0..dim)
            .map(|i| {
                let mut normal = vec![BigInt::zero(); dim];
                normal[i] = BigInt::one();
                HalfSpace {
                    normal,
                    offset: base[i].clone(),
                }
            })
            .collect()
    } else {
        arith::nullspace(&diffs, dim)
            .into_iter()
            .map(|normal| {
                let offset = dot_rat(&normal, base);
                HalfSpace { normal, offset }
            })
            .collect()
    };

    if affine_dim == 0 {
        return Hull {
            affine_dim,
            vertices: pts.to_vec(),
            equations,
            facets: Vec::new(),
        };
    }

    // homogenized constraint (den, den·p) for each point, in chart coordinates
    let constraints: Vec<Vec<BigInt>> = pts
        .iter()
        .map(|p| {
            let mut v = vec![BigRational::one()];
            v.extend(chart.iter().map(|&c| p.coords()[c].clone()));
            let den = arith::lcm_all(v.iter().map(|x| x.denom()));
            v.iter().map(|x| (x * &den).to_integer()).collect()
        })
        .collect();
    let rays = double_description(&constraints, affine_dim + 1);

    let mut facets: Vec<HalfSpace> = rays
        .into_iter()
        .map(|ray| {
            let mut normal = vec![BigInt::zero(); dim];
            for (k, &c) in chart.iter().enumerate() {
                normal[c] = ray[k + 1].clone();
            }
            let g = arith::gcd_all(normal.iter());
            let offset = BigRational::new(-ray[0].clone(), g.clone());
            for x in normal.iter_mut() {
                *x /= &g;
            }
            HalfSpace { normal, offset }
        })
        .collect();
    facets.sort();

    let vertices: Vec<RationalPoint> = pts
        .iter()
        .filter(|p| {
            let tight: Vec<Vec<BigRational>> = facets
                .iter()
                .filter(|h| h.slack(p.coords()).is_zero())
                .map(|h| chart.iter().map(|&c| BigRational::from_integer(h.normal[c].clone())).collect())
                .collect();
            arith::rank(&tight) == affine_dim
        })
        .cloned()
        .collect();

    Hull {
        affine_dim,
        vertices,
        equations,
        facets,
    }
}

#[derive(Clone)]
struct BitSet(Vec<u64>);

impl BitSet {
    fn new(n: usize) -> Self {
        Self(vec![0; n.div_ceil(64)])
    }
    fn insert(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }
    fn and(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }
    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }
    fn is_subset(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & !b == 0)
    }
}

/// Extreme rays of the pointed cone `{h : ⟨c, h⟩ ≥ 0 for all constraints c}` in dimension `d`.
fn double_description(constraints: &[Vec<BigInt>], d: usize) -> Vec<Vec<BigInt>> {
    let m = constraints.len();
    let mut basis: Vec<usize> = Vec::new();
    let mut rows: Vec<Vec<BigRational>> = Vec::new();
    for (i, c) in constraints.iter().enumerate() {
        let mut trial = rows.clone();
        trial.push(c.iter().cloned().map(BigRational::from_integer).collect());
        if arith::rank(&trial) > rows.len() {
            rows = trial;
            basis.push(i);
            if basis.len() == d {
                break;
            }
        }
    }
    debug_assert_eq!(basis.len(), d);
    let inv = arith::inverse(&rows).expect("independent constraint basis");

    let mut rays: Vec<(Vec<BigInt>, BitSet)> = (0..d)
        .map(|j| {
            let col: Vec<BigRational> = inv.iter().map(|r| r[j].clone()).collect();
            let v = arith::primitive_integer(&col);
            let mut zeros = BitSet::new(m);
            for (k, &b) in basis.iter().enumerate() {
                if k != j {
                    zeros.insert(b);
                }
            }
            (v, zeros)
        })
        .collect();

    for (i, c) in constraints.iter().enumerate() {
        if basis.contains(&i) {
            continue;
        }
        let values: Vec<BigInt> = rays.iter().map(|(v, _)| dot(c, v)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&r| values[r].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&r| values[r].is_negative()).collect();
        if neg.is_empty() {
            for (r, (_, zeros)) in rays.iter_mut().enumerate() {
                if values[r].is_zero() {
                    zeros.insert(i);
                }
            }
            continue;
        }
        let mut next: Vec<(Vec<BigInt>, BitSet)> = Vec::new();
        for &p in &pos {
            for &q in &neg {
                let common = rays[p].1.and(&rays[q].1);
                if common.count() + 2 < d {
                    continue;
                }
                let adjacent = (0..rays.len())
                    .all(|t| t == p || t == q || !common.is_subset(&rays[t].1));
                if !adjacent {
                    continue;
                }
                let mut v: Vec<BigInt> = rays[q]
                    .0
                    .iter()
                    .zip(&rays[p].0)
                    .map(|(a, b)| &values[p] * a - &values[q] * b)
                    .collect();
                arith::make_primitive(&mut v);
                let mut zeros = common;
                zeros.insert(i);
                next.push((v, zeros));
            }
        }
        for (r, (v, zeros)) in rays.iter().enumerate() {
            if values[r].is_negative() {
                continue;
            }
            let mut zeros = zeros.clone();
            if values[r].is_zero() {
                zeros.insert(i);
            }
            next.push((v.clone(), zeros));
        }
        rays = next;
    }
    rays.into_iter().map(|(v, _)| v).collect()
}

impl Polytope {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn affine_dim(&self) -> usize {
        self.affine_dim
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.affine_dim == self.dim
    }

    pub fn vertices(&self) -> &[RationalPoint] {
        &self.vertices
    }

    /// Vertices as lattice points, or an error if any vertex is not integral.
    pub fn lattice_vertices(&self) -> Result<Vec<LatticePoint>> {
        self.vertices
            .iter()
            .map(|v| v.to_lattice().ok_or(Error::NonIntegral))
            .collect()
    }

    pub fn is_integral(&self) -> bool {
        self.vertices.iter().all(|v| v.is_integral())
    }

    /// Equations of the affine hull (empty for full-dimensional polytopes).
    pub fn equations(&self) -> &[HalfSpace] {
        &self.equations
    }

    /// Facet inequalities relative to the affine hull.
    pub fn relative_facets(&self) -> &[HalfSpace] {
        self.facets.get_or_init(|| compute_hull(&self.vertices, self.dim).facets)
    }

    /// Irredundant facet system with primitive normals, sorted.
    pub fn facets(&self) -> Result<&[HalfSpace]> {
        if !self.is_full_dimensional() {
            return Err(Error::NotFullDimensional {
                dim: self.dim,
                affine_dim: self.affine_dim,
            });
        }
        Ok(self.relative_facets())
    }

    pub fn containment(&self, x: &[BigRational]) -> Containment {
        if self.equations.iter().any(|e| !e.slack(x).is_zero()) {
            return Containment::Outside;
        }
        let mut strict = true;
        for h in self.relative_facets() {
            let s = h.slack(x);
            if s.is_negative() {
                return Containment::Outside;
            }
            if s.is_zero() {
                strict = false;
            }
        }
        if strict && self.is_full_dimensional() {
            Containment::Interior
        } else {
            Containment::Boundary
        }
    }

    pub fn contains(&self, x: &RationalPoint) -> Result<Containment> {
        if x.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: x.dim(),
            });
        }
        Ok(self.containment(x.coords()))
    }

    fn containment_int(&self, x: &[BigInt]) -> Containment {
        if self.equations.iter().any(|e| !e.slack_int(x).is_zero()) {
            return Containment::Outside;
        }
        let mut strict = true;
        for h in self.relative_facets() {
            let s = h.slack_int(x);
            if s.is_negative() {
                return Containment::Outside;
            }
            if s.is_zero() {
                strict = false;
            }
        }
        if strict && self.is_full_dimensional() {
            Containment::Interior
        } else {
            Containment::Boundary
        }
    }

    /// All integer points, in lexicographic order (bounding-box scan with facet filter).
    pub fn lattice_points(&self) -> Vec<LatticePoint> {
        self.scan_lattice(|c| c != Containment::Outside)
    }

    /// Integer points that are not strictly interior.
    pub fn boundary_lattice_points(&self) -> Vec<LatticePoint> {
        self.scan_lattice(|c| c == Containment::Boundary)
    }

    pub fn interior_lattice_points(&self) -> Vec<LatticePoint> {
        self.scan_lattice(|c| c == Containment::Interior)
    }

    fn scan_lattice(&self, keep: impl Fn(Containment) -> bool) -> Vec<LatticePoint> {
        let (lo, hi) = self.bounding_box();
        let mut out = Vec::new();
        if lo.iter().zip(&hi).any(|(a, b)| a > b) {
            return out;
        }
        let mut cur = lo.clone();
        loop {
            if keep(self.containment_int(&cur)) {
                out.push(LatticePoint(cur.clone()));
            }
            // odometer, last coordinate fastest → lexicographic order
            let mut i = self.dim;
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                if cur[i] < hi[i] {
                    cur[i] += 1;
                    break;
                }
                cur[i] = lo[i].clone();
            }
        }
    }

    fn bounding_box(&self) -> (Vec<BigInt>, Vec<BigInt>) {
        let lo = (0..self.dim)
            .map(|i| self.vertices.iter().map(|v| v.coords()[i].ceil()).min().unwrap().to_integer())
            .collect();
        let hi = (0..self.dim)
            .map(|i| self.vertices.iter().map(|v| v.coords()[i].floor()).max().unwrap().to_integer())
            .collect();
        (lo, hi)
    }

    /// For each facet, the sorted indices of the vertices lying on it.
    pub fn facet_vertex_sets(&self) -> Vec<Vec<usize>> {
        self.relative_facets()
            .iter()
            .map(|h| {
                (0..self.vertices.len())
                    .filter(|&i| h.slack(self.vertices[i].coords()).is_zero())
                    .collect()
            })
            .collect()
    }

    /// Every nonempty proper face, obtained by closing the facet vertex sets under intersection.
    pub fn all_faces(&self) -> Vec<Face<'_>> {
        let facet_sets = self.facet_vertex_sets();
        let mut seen: BTreeSet<Vec<usize>> = facet_sets.iter().cloned().collect();
        let mut frontier: Vec<Vec<usize>> = seen.iter().cloned().collect();
        while let Some(a) = frontier.pop() {
            for f in &facet_sets {
                let c: Vec<usize> = a.iter().copied().filter(|i| f.binary_search(i).is_ok()).collect();
                if !c.is_empty() && seen.insert(c.clone()) {
                    frontier.push(c);
                }
            }
        }
        let mut faces: Vec<Face<'_>> = seen
            .into_iter()
            .map(|vs| {
                let coords: Vec<&[BigRational]> = vs.iter().map(|&i| self.vertices[i].coords()).collect();
                let dim = arith::affine_rank(&coords);
                let facet_indices = facet_sets
                    .iter()
                    .enumerate()
                    .filter(|(_, f)| vs.iter().all(|i| f.binary_search(i).is_ok()))
                    .map(|(k, _)| k)
                    .collect();
                Face {
                    parent: self,
                    vertex_indices: vs,
                    facet_indices,
                    dim,
                }
            })
            .collect();
        faces.sort_by(|a, b| a.dim.cmp(&b.dim).then_with(|| a.vertex_indices.cmp(&b.vertex_indices)));
        faces
    }

    /// All faces of dimension `d`, `0 ≤ d < affine_dim`.
    pub fn faces(&self, d: usize) -> Result<Vec<Face<'_>>> {
        if d + 1 > self.affine_dim {
            return Err(Error::FaceDimension {
                requested: d,
                max: self.affine_dim as isize - 1,
            });
        }
        Ok(self.all_faces().into_iter().filter(|f| f.dim == d).collect())
    }

    /// The face cut out by facet `index`.
    pub fn facet_face(&self, index: usize) -> Face<'_> {
        let vs = self.facet_vertex_sets().swap_remove(index);
        Face {
            parent: self,
            vertex_indices: vs,
            facet_indices: vec![index],
            dim: self.affine_dim - 1,
        }
    }

    /// `{x : ⟨x, y⟩ ≥ −1 for all y ∈ P}`.
    pub fn polar_dual(&self) -> Result<Polytope> {
        let facets = self.facets()?;
        if facets.iter().any(|h| !h.offset.is_negative()) {
            return Err(Error::OriginNotInterior);
        }
        let mut vertices: Vec<RationalPoint> = facets
            .iter()
            .map(|h| {
                let scale = -h.offset.recip();
                RationalPoint(h.normal.iter().map(|c| &scale * c).collect())
            })
            .collect();
        vertices.sort();
        let mut dual_facets: Vec<HalfSpace> = self
            .vertices
            .iter()
            .map(|v| {
                let normal = arith::primitive_integer(v.coords());
                let k = (0..self.dim).find(|&i| !normal[i].is_zero()).expect("vertex is nonzero");
                // normal = c·v with c > 0, so ⟨x, v⟩ ≥ −1 becomes ⟨x, normal⟩ ≥ −c
                let c = BigRational::from_integer(normal[k].clone()) / &v.coords()[k];
                HalfSpace { normal, offset: -c }
            })
            .collect();
        dual_facets.sort();
        let cached = OnceLock::new();
        let _ = cached.set(dual_facets);
        Ok(Polytope {
            dim: self.dim,
            affine_dim: self.dim,
            vertices,
            equations: Vec::new(),
            facets: cached,
        })
    }

    /// Integral polytope whose polar dual is integral.
    pub fn is_reflexive(&self) -> Result<bool> {
        if !self.is_integral() {
            return Err(Error::NonIntegral);
        }
        Ok(self.polar_dual()?.is_integral())
    }

    /// `{"dim", "vertices", "facets"}`; facets are omitted for lower-dimensional polytopes.
    pub fn to_json(&self) -> Value {
        let mut obj = json!({
            "dim": self.dim,
            "vertices": self.vertices.iter().map(|v| v.to_json()).collect::<Vec<_>>(),
        });
        if self.is_full_dimensional() {
            obj["facets"] = Value::Array(self.relative_facets().iter().map(|h| h.to_json()).collect());
        } else {
            obj["affineDim"] = json!(self.affine_dim);
        }
        obj
    }
}

const JSON_SAFE: i64 = 1 << 53;

/// Integers below 2^53 in magnitude as JSON numbers, larger ones as decimal strings.
pub fn int_json(v: &BigInt) -> Value {
    match v.to_i64() {
        Some(x) if x.abs() < JSON_SAFE => json!(x),
        _ => Value::String(v.to_string()),
    }
}

pub fn rational_json(v: &BigRational) -> Value {
    if v.is_integer() {
        int_json(&v.to_integer())
    } else {
        Value::String(arith::fmt_rational(v))
    }
}
