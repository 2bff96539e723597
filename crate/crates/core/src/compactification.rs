//! Combinatorics of the compactified model: the polytopes Δ = N(f) and its polar ∇,
//! the component count of the fiber over infinity, boundary divisor types, and a
//! unimodular triangulation of the boundary of ∇ that uses every boundary lattice point.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::ops::Range;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::arith;
use crate::error::{Error, Result};
use crate::geometry::{convex_hull_lattice, int_json, LatticePoint, Polytope};
use crate::laurent::{is_standard_equivalent, standard_polynomial, LaurentPolynomial, ModelSpec, StandardMatch};

/// Vertices of Δ: every `u` (each block either all −1 or `d_i − 1` in one slot and −1
/// elsewhere, tail all −1) and every tail unit vector `v`. Sorted lexicographically.
pub fn delta_vertices(spec: &ModelSpec) -> Vec<LatticePoint> {
    let layout = spec.layout();
    let n = layout.dim();
    let mut us: Vec<Vec<i64>> = vec![vec![-1; n]];
    for (block, &d) in layout.blocks.iter().zip(spec.degrees()) {
        let mut next = Vec::with_capacity(us.len() * d as usize);
        for u in &us {
            next.push(u.clone());
            for pos in block.clone() {
                let mut w = u.clone();
                w[pos] = d as i64 - 1;
                next.push(w);
            }
        }
        us = next;
    }
    let mut out: BTreeSet<LatticePoint> = us.iter().map(|u| LatticePoint::from_i64(u)).collect();
    for pos in layout.tail.clone() {
        let mut v = vec![0; n];
        v[pos] = 1;
        out.insert(LatticePoint::from_i64(&v));
    }
    out.into_iter().collect()
}

/// Rows of the matrix whose convex hull is ∇, with the row ranges of each degree block
/// and of the tail block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NablaMatrix {
    pub rows: Vec<LatticePoint>,
    pub blocks: Vec<Range<usize>>,
    pub tail: Range<usize>,
}

pub fn nabla_rows(spec: &ModelSpec) -> NablaMatrix {
    let layout = spec.layout();
    let n = layout.dim();
    let iota = spec.index() as i64;
    let mut rows = Vec::new();
    let mut blocks = Vec::new();
    let with_tail = |mut r: Vec<i64>| {
        for pos in layout.tail.clone() {
            r[pos] = -1;
        }
        r
    };
    for block in &layout.blocks {
        let start = rows.len();
        for pos in block.clone() {
            let mut r = vec![0; n];
            r[pos] = iota;
            rows.push(LatticePoint::from_i64(&with_tail(r)));
        }
        let mut r = vec![0; n];
        for pos in block.clone() {
            r[pos] = -iota;
        }
        rows.push(LatticePoint::from_i64(&with_tail(r)));
        blocks.push(start..rows.len());
    }
    let start = rows.len();
    if iota >= 2 {
        for pos in layout.tail.clone() {
            let mut r = with_tail(vec![0; n]);
            r[pos] = iota - 1;
            rows.push(LatticePoint::from_i64(&r));
        }
        rows.push(LatticePoint::from_i64(&with_tail(vec![0; n])));
    }
    let tail = start..rows.len();
    NablaMatrix { rows, blocks, tail }
}

pub fn delta(spec: &ModelSpec) -> Result<Polytope> {
    convex_hull_lattice(&delta_vertices(spec))
}

/// ∇ computed as the polar dual of Δ.
pub fn nabla(spec: &ModelSpec) -> Result<Polytope> {
    delta(spec)?.polar_dual()
}

/// Hull of the matrix rows and the polar dual of Δ have identical facet systems.
pub fn verify_duality(spec: &ModelSpec) -> Result<bool> {
    let from_rows = convex_hull_lattice(&nabla_rows(spec).rows)?;
    let dual = nabla(spec)?;
    Ok(from_rows.facets()? == dual.facets()? && from_rows.vertices() == dual.vertices())
}

/// `k = |∇ ∩ Z^n| − 1`, cross-checked against a facet-by-facet boundary enumeration.
pub fn component_count(spec: &ModelSpec) -> Result<usize> {
    let nabla = nabla(spec)?;
    if !nabla.is_integral() {
        return Err(Error::NonIntegral);
    }
    let total = nabla.lattice_points().len();
    let boundary = facetwise_boundary_points(&nabla).len();
    if total != boundary + 1 {
        return Err(Error::CountMismatch { total, boundary });
    }
    Ok(boundary)
}

/// Union over facets of the lattice points on each facet.
pub fn facetwise_boundary_points(p: &Polytope) -> BTreeSet<LatticePoint> {
    let mut out = BTreeSet::new();
    for (f, vs) in p.facet_vertex_sets().into_iter().enumerate() {
        let face = p.facet_face(f);
        debug_assert_eq!(face.vertex_indices(), vs.as_slice());
        let verts: Vec<LatticePoint> = vs.iter().filter_map(|&i| p.vertices()[i].to_lattice()).collect();
        let lo: Vec<BigInt> = (0..p.dim()).map(|i| verts.iter().map(|v| v.coords()[i].clone()).min().unwrap()).collect();
        let hi: Vec<BigInt> = (0..p.dim()).map(|i| verts.iter().map(|v| v.coords()[i].clone()).max().unwrap()).collect();
        let mut cur = lo.clone();
        'scan: loop {
            if face.contains_int(&cur) {
                out.insert(LatticePoint::new(cur.clone()));
            }
            let mut i = p.dim();
            loop {
                if i == 0 {
                    break 'scan;
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
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FacetType {
    I,
    II,
}

impl FacetType {
    pub fn as_str(self) -> &'static str {
        match self {
            FacetType::I => "I",
            FacetType::II => "II",
        }
    }
}

/// Type I iff the facet `{v ∈ Δ : ⟨w, v⟩ = −1}` dual to the ∇-vertex `w` contains a tail vertex.
pub fn classify_facets(spec: &ModelSpec) -> Result<BTreeMap<LatticePoint, FacetType>> {
    let tail = spec.layout().tail;
    let deltas = delta_vertices(spec);
    let is_tail = |v: &LatticePoint| {
        tail.clone().any(|pos| {
            v.coords().iter().enumerate().all(|(i, c)| if i == pos { c.is_one() } else { c.is_zero() })
        })
    };
    let minus_one = -BigInt::one();
    let mut out = BTreeMap::new();
    for w in nabla(spec)?.lattice_vertices()? {
        let type_i = deltas
            .iter()
            .any(|v| is_tail(v) && arith::dot(w.coords(), v.coords()) == minus_one);
        out.insert(w, if type_i { FacetType::I } else { FacetType::II });
    }
    Ok(out)
}

/// Restriction of the standard polynomial to one facet of Δ and the standard model it
/// is equivalent to, if any was found.
#[derive(Clone, Debug)]
pub struct FacetRestriction {
    pub normal: Vec<BigInt>,
    /// every vertex of the facet is a `u` vector (no tail unit vector)
    pub all_u: bool,
    pub restricted: LaurentPolynomial,
    pub matched: Option<StandardMatch>,
}

impl FacetRestriction {
    pub fn to_json(&self) -> Value {
        json!({
            "normal": self.normal.iter().map(int_json).collect::<Vec<_>>(),
            "allU": self.all_u,
            "terms": self.restricted.len(),
            "status": if self.matched.is_some() { "matched" } else { "unresolved" },
            "match": self.matched.as_ref().map(|m| json!({"spec": m.spec.to_json(), "map": m.map.to_json()})),
        })
    }
}

/// Restricts `f_spec` to every facet of its Newton polytope and searches for an
/// equivalence with a standard polynomial of torus dimension `n − 1`.
pub fn facet_restrictions(spec: &ModelSpec) -> Result<Vec<FacetRestriction>> {
    let f = standard_polynomial(spec);
    let newton = f.newton_polytope()?;
    let candidates = ModelSpec::with_torus_dim(spec.torus_dim().saturating_sub(1));
    let tail = spec.layout().tail;
    let is_tail_unit = |v: &[BigInt]| {
        tail.clone().any(|q| v[q].is_one()) && v.iter().filter(|x| !x.is_zero()).count() == 1
    };
    let verts = newton.lattice_vertices()?;
    let mut out = Vec::new();
    for (i, h) in newton.facets()?.iter().enumerate() {
        let face = newton.facet_face(i);
        let restricted = f.restrict_to_face(&face)?;
        let all_u = face.vertex_indices().iter().all(|&v| !is_tail_unit(verts[v].coords()));
        let matched = is_standard_equivalent(&restricted, &candidates);
        out.push(FacetRestriction {
            normal: h.normal.clone(),
            all_u,
            restricted,
            matched,
        });
    }
    Ok(out)
}

/// Simplicial complex on the boundary lattice points of a reflexive polytope.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triangulation {
    pub points: Vec<LatticePoint>,
    /// Maximal simplices as sorted index sets of size `n`.
    pub simplices: Vec<Vec<usize>>,
    pub method: TriangulationMethod,
}

impl Triangulation {
    pub fn all_unimodular(&self) -> bool {
        let coords: Vec<Vec<i64>> = match small(&self.points) {
            Ok(c) => c,
            Err(_) => return false,
        };
        self.simplices.iter().all(|s| {
            let rows: Vec<&[i64]> = s.iter().map(|&i| coords[i].as_slice()).collect();
            det_small(&rows).abs().is_one()
        })
    }
}

/// `|det|` of the simplex vertices, i.e. the normalized volume of the cone over the simplex.
pub fn simplex_volume(vertices: &[LatticePoint]) -> Result<BigInt> {
    let n = vertices.first().map(|v| v.dim()).ok_or(Error::NotSpanning)?;
    if vertices.len() != n || vertices.iter().any(|v| v.dim() != n) {
        return Err(Error::NotSpanning);
    }
    let rows: Vec<Vec<BigInt>> = vertices.iter().map(|v| v.coords().to_vec()).collect();
    let det = arith::determinant(&rows);
    if det.is_zero() {
        return Err(Error::NotSpanning);
    }
    Ok(det.abs())
}

/// The `n` points form a lattice basis (the cone over the simplex is smooth).
pub fn is_unimodular(vertices: &[LatticePoint]) -> Result<bool> {
    Ok(simplex_volume(vertices)?.is_one())
}

// Small-integer coordinates for the inner loops; triangulated polytopes have tiny entries.
fn small(points: &[LatticePoint]) -> Result<Vec<Vec<i64>>> {
    points
        .iter()
        .map(|p| p.to_i64().ok_or_else(|| Error::InvalidArgument("coordinates exceed 64 bits".into())))
        .collect()
}

fn det_i128(m: &[Vec<i128>]) -> Option<i128> {
    let n = m.len();
    let mut a = m.to_vec();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n.saturating_sub(1) {
        if a[k][k] == 0 {
            let i = (k + 1..n).find(|&i| a[i][k] != 0)?;
            a.swap(i, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = a[i][j].checked_mul(a[k][k])?.checked_sub(a[i][k].checked_mul(a[k][j])?)?;
                a[i][j] = v / prev;
            }
        }
        prev = a[k][k];
    }
    Some(sign * a[n - 1][n - 1])
}

fn det_small(rows: &[&[i64]]) -> BigInt {
    let m: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    match det_i128(&m) {
        Some(d) => BigInt::from(d),
        None => arith::determinant(
            &rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect::<Vec<_>>(),
        ),
    }
}

/// How the boundary of ∇ was triangulated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TriangulationMethod {
    /// Pulling on every facet, then stellar insertion of the unused boundary points.
    PullingStellar,
    /// Regular subdivision for the alcove height, cells refined by pulling.
    RegularAlcove,
}

impl TriangulationMethod {
    pub const ALL: [TriangulationMethod; 2] = [TriangulationMethod::PullingStellar, TriangulationMethod::RegularAlcove];

    pub fn as_str(self) -> &'static str {
        match self {
            TriangulationMethod::PullingStellar => "pulling-stellar",
            TriangulationMethod::RegularAlcove => "regular-alcove",
        }
    }
}

/// Face lattice of a polytope expressed on global point indices.
struct FaceLattice {
    /// vertex index sets (global) of each face, by face id
    vertex_sets: Vec<Vec<usize>>,
    dims: Vec<usize>,
    /// facets of each face (face ids)
    subfaces: Vec<Vec<usize>>,
}

impl FaceLattice {
    /// Proper faces of `p`, plus `p` itself as the last face when `with_top` is set.
    fn new(p: &Polytope, index: &HashMap<LatticePoint, usize>, with_top: bool) -> Self {
        let verts = p.lattice_vertices().expect("integral polytope");
        let faces = p.all_faces();
        let mut vertex_sets: Vec<Vec<usize>> = faces
            .iter()
            .map(|f| {
                let mut s: Vec<usize> = f.vertex_indices().iter().map(|&i| index[&verts[i]]).collect();
                s.sort_unstable();
                s
            })
            .collect();
        let mut dims: Vec<usize> = faces.iter().map(|f| f.dim()).collect();
        if with_top {
            let mut all: Vec<usize> = verts.iter().map(|v| index[v]).collect();
            all.sort_unstable();
            vertex_sets.push(all);
            dims.push(p.affine_dim());
        }
        let subfaces = (0..vertex_sets.len())
            .map(|a| {
                (0..vertex_sets.len())
                    .filter(|&b| {
                        dims[b] + 1 == dims[a]
                            && vertex_sets[b].iter().all(|x| vertex_sets[a].binary_search(x).is_ok())
                    })
                    .collect()
            })
            .collect();
        Self {
            vertex_sets,
            dims,
            subfaces,
        }
    }

    fn ids_of_dim(&self, d: usize) -> Vec<usize> {
        (0..self.dims.len()).filter(|&f| self.dims[f] == d).collect()
    }

    /// Pulling triangulation of face `id` on its vertices, pulling the least vertex
    /// first at every level.
    fn pull(&self, id: usize, memo: &mut HashMap<usize, Vec<Vec<usize>>>) -> Vec<Vec<usize>> {
        if let Some(s) = memo.get(&id) {
            return s.clone();
        }
        let apex = self.vertex_sets[id][0];
        let out = if self.dims[id] == 0 {
            vec![vec![apex]]
        } else {
            let mut out = Vec::new();
            for &g in &self.subfaces[id] {
                if self.vertex_sets[g].binary_search(&apex).is_ok() {
                    continue;
                }
                for mut s in self.pull(g, memo) {
                    s.push(apex);
                    s.sort_unstable();
                    out.push(s);
                }
            }
            out
        };
        memo.insert(id, out.clone());
        out
    }
}

/// `Σ_{0≤j<i≤n} (b_i − b_j)²` with `b_0 = 0` and `b_i = w_1 + … + w_i`. Its Delaunay
/// subdivision of `Z^n` is the alcove triangulation cut out by the hyperplanes
/// `w_a + … + w_b ∈ Z`.
fn alcove_height(w: &[i64]) -> i64 {
    let mut b = Vec::with_capacity(w.len() + 1);
    b.push(0i64);
    for x in w {
        b.push(b.last().unwrap() + x);
    }
    let mut h = 0;
    for i in 0..b.len() {
        for j in 0..i {
            h += (b[i] - b[j]) * (b[i] - b[j]);
        }
    }
    h
}

/// Maximal cells of the regular subdivision of `members` (points on one facet) for
/// `height`, each refined by pulling.
fn regular_facet(
    members: &[usize],
    points: &[LatticePoint],
    coords: &[Vec<i64>],
    index: &HashMap<LatticePoint, usize>,
    height: &dyn Fn(&[i64]) -> i64,
) -> Result<Vec<Vec<usize>>> {
    let n = coords[members[0]].len();
    let lifted: Vec<LatticePoint> = members
        .iter()
        .map(|&i| {
            let mut c = coords[i].clone();
            c.push(height(&coords[i]));
            LatticePoint::from_i64(&c)
        })
        .collect();
    let lift = convex_hull_lattice(&lifted)?;
    let m = n - 1;
    let cells: Vec<Vec<usize>> = if lift.affine_dim() == m {
        vec![members.to_vec()]
    } else {
        lift.relative_facets()
            .iter()
            .filter(|h| h.normal[n].is_positive())
            .map(|h| {
                members
                    .iter()
                    .zip(&lifted)
                    .filter(|(_, l)| h.slack_int(l.coords()).is_zero())
                    .map(|(&i, _)| i)
                    .collect()
            })
            .collect()
    };
    let mut out = Vec::new();
    for cell in cells {
        if cell.len() == m + 1 {
            out.push(cell);
            continue;
        }
        let pts: Vec<LatticePoint> = cell.iter().map(|&i| points[i].clone()).collect();
        let hull = convex_hull_lattice(&pts)?;
        let lattice = FaceLattice::new(&hull, index, true);
        let top = lattice.vertex_sets.len() - 1;
        out.extend(lattice.pull(top, &mut HashMap::new()));
    }
    Ok(out)
}

/// Triangulation of the boundary of a reflexive polytope on all of its boundary lattice
/// points, with every simplex unimodular whenever one of the available methods achieves it.
///
/// The methods are tried in the order of [`TriangulationMethod::ALL`]; the first result
/// whose simplices are all unimodular is returned, otherwise the first result.
pub fn boundary_triangulation(nabla: &Polytope) -> Result<Triangulation> {
    let mut first = None;
    for method in TriangulationMethod::ALL {
        let t = boundary_triangulation_with(nabla, method)?;
        if t.all_unimodular() {
            return Ok(t);
        }
        first.get_or_insert(t);
    }
    Ok(first.expect("at least one method"))
}

/// Triangulation of the boundary of a reflexive polytope on all of its boundary lattice
/// points using one method.
///
/// Coverage is certified per facet by comparing the summed simplex volumes with the
/// volume of the facet's pulling triangulation, and every boundary point must be a vertex.
pub fn boundary_triangulation_with(nabla: &Polytope, method: TriangulationMethod) -> Result<Triangulation> {
    let facets = nabla.facets()?;
    if facets.iter().any(|h| h.offset != -num_rational::BigRational::one()) || !nabla.is_integral() {
        return Err(Error::InvalidArgument("boundary triangulation needs a reflexive polytope".into()));
    }
    let points = nabla.boundary_lattice_points();
    let coords = small(&points)?;
    let index: HashMap<LatticePoint, usize> = points.iter().cloned().enumerate().map(|(i, q)| (q, i)).collect();
    let faces = FaceLattice::new(nabla, &index, false);

    // facet membership of each point, keyed by position in `facets`
    let normals: Vec<Vec<i64>> = facets
        .iter()
        .map(|h| h.normal.iter().map(|x| x.to_i64().expect("small normal")).collect())
        .collect();
    let on_facet = |pt: &[i64], f: usize| normals[f].iter().zip(pt).map(|(a, b)| a * b).sum::<i64>() == -1;
    let volume = |s: &[usize]| {
        let rows: Vec<&[i64]> = s.iter().map(|&i| coords[i].as_slice()).collect();
        det_small(&rows).abs()
    };

    let mut memo = HashMap::new();
    let mut pulled: Vec<Vec<usize>> = Vec::new();
    let mut facet_volume: Vec<BigInt> = vec![BigInt::zero(); facets.len()];
    for fid in faces.ids_of_dim(nabla.dim() - 1) {
        let part = faces.pull(fid, &mut memo);
        let f = (0..facets.len())
            .find(|&f| faces.vertex_sets[fid].iter().all(|&v| on_facet(&coords[v], f)))
            .expect("facet face has a supporting facet");
        for s in &part {
            facet_volume[f] += volume(s);
        }
        pulled.extend(part);
    }

    let mut simplices = match method {
        TriangulationMethod::PullingStellar => {
            let mut simplices = pulled;
            let used: BTreeSet<usize> = simplices.iter().flatten().copied().collect();
            for q in 0..points.len() {
                if !used.contains(&q) {
                    stellar_insert(&mut simplices, &coords, q)?;
                }
            }
            simplices
        }
        TriangulationMethod::RegularAlcove => {
            let mut simplices = Vec::new();
            for f in 0..facets.len() {
                let members: Vec<usize> = (0..points.len()).filter(|&i| on_facet(&coords[i], f)).collect();
                simplices.extend(regular_facet(&members, &points, &coords, &index, &alcove_height)?);
            }
            simplices
        }
    };
    for s in simplices.iter_mut() {
        s.sort_unstable();
    }
    simplices.sort();
    simplices.dedup();

    let mut covered: Vec<BigInt> = vec![BigInt::zero(); facets.len()];
    for s in &simplices {
        let f = (0..facets.len())
            .find(|&f| s.iter().all(|&v| on_facet(&coords[v], f)))
            .ok_or_else(|| Error::Coverage("simplex not contained in a facet".into()))?;
        covered[f] += volume(s);
    }
    if covered != facet_volume {
        return Err(Error::Coverage("facet volumes differ from simplex volumes".into()));
    }
    let used: BTreeSet<usize> = simplices.iter().flatten().copied().collect();
    if used.len() != points.len() {
        return Err(Error::Coverage(format!("{} of {} boundary points unused", points.len() - used.len(), points.len())));
    }
    Ok(Triangulation {
        points,
        simplices,
        method,
    })
}

/// Stellar subdivision at point `q`: every simplex containing the carrier face `τ` of `q`
/// is replaced by the simplices `(σ ∖ {v}) ∪ {q}` for `v ∈ τ`.
fn stellar_insert(simplices: &mut Vec<Vec<usize>>, coords: &[Vec<i64>], q: usize) -> Result<()> {
    let target = &coords[q];
    let mut carrier: Option<Vec<usize>> = None;
    for s in simplices.iter() {
        let rows: Vec<&[i64]> = s.iter().map(|&i| coords[i].as_slice()).collect();
        let det = det_small(&rows);
        // barycentric weight of vertex k: det with row k replaced by q, over det
        let mut support = Vec::new();
        let mut inside = true;
        for k in 0..s.len() {
            let mut r = rows.clone();
            r[k] = target;
            let w = det_small(&r);
            if w.is_zero() {
                continue;
            }
            if w.sign() != det.sign() {
                inside = false;
                break;
            }
            support.push(s[k]);
        }
        if inside {
            carrier = Some(support);
            break;
        }
    }
    let tau = carrier.ok_or_else(|| Error::Coverage(format!("point {q} not covered by any simplex")))?;
    let mut next = Vec::with_capacity(simplices.len() + tau.len());
    for s in simplices.drain(..) {
        if tau.iter().all(|v| s.contains(v)) {
            for v in &tau {
                let mut t: Vec<usize> = s.iter().copied().filter(|x| x != v).collect();
                t.push(q);
                t.sort_unstable();
                next.push(t);
            }
        } else {
            next.push(s);
        }
    }
    *simplices = next;
    Ok(())
}

/// Combinatorial summary of the fiber over infinity.
#[derive(Clone, Debug)]
pub struct FiberReport {
    pub spec: ModelSpec,
    pub k: usize,
    pub triangulation: Triangulation,
    pub f_vector: Vec<usize>,
    pub euler_characteristic: i64,
    pub is_pseudomanifold: bool,
    pub is_connected: bool,
    pub all_simplices_unimodular: bool,
    pub all_vertices_primitive: bool,
    pub uses_all_boundary_points: bool,
    pub facet_types: BTreeMap<LatticePoint, FacetType>,
}

impl FiberReport {
    /// `χ(S^{n−1}) = 1 + (−1)^{n−1}`
    pub fn expected_euler(&self) -> i64 {
        let n = self.spec.torus_dim() as i64;
        1 + if (n - 1) % 2 == 0 { 1 } else { -1 }
    }

    pub fn is_sphere(&self) -> bool {
        self.is_pseudomanifold && self.is_connected && self.euler_characteristic == self.expected_euler()
    }

    /// All combinatorial claims hold: sphere, unimodular, reduced, one vertex per component.
    pub fn certified(&self) -> bool {
        self.is_sphere()
            && self.all_simplices_unimodular
            && self.all_vertices_primitive
            && self.uses_all_boundary_points
            && self.f_vector.first() == Some(&self.k)
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut e: BTreeSet<(usize, usize)> = BTreeSet::new();
        for s in &self.triangulation.simplices {
            for a in 0..s.len() {
                for b in a + 1..s.len() {
                    e.insert((s[a], s[b]));
                }
            }
        }
        e.into_iter().collect()
    }

    pub fn to_json(&self) -> Value {
        let facet_types: serde_json::Map<String, Value> = self
            .facet_types
            .iter()
            .map(|(w, t)| (w.to_string(), json!(t.as_str())))
            .collect();
        json!({
            "spec": self.spec.to_json(),
            "k": self.k,
            "fVector": self.f_vector,
            "euler": self.euler_characteristic,
            "sphere": self.is_sphere(),
            "unimodular": self.all_simplices_unimodular,
            "pseudomanifold": self.is_pseudomanifold,
            "connected": self.is_connected,
            "primitive": self.all_vertices_primitive,
            "certified": self.certified(),
            "method": self.triangulation.method.as_str(),
            "facetTypes": facet_types,
            "points": self.triangulation.points.iter().map(|p| p.to_json()).collect::<Vec<_>>(),
            "simplices": self.triangulation.simplices,
        })
    }
}

pub fn infinity_fiber_report(spec: &ModelSpec) -> Result<FiberReport> {
    let k = component_count(spec)?;
    let nabla = nabla(spec)?;
    let triangulation = boundary_triangulation(&nabla)?;
    let n = spec.torus_dim();

    let mut all_faces: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut ridges: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
    for (si, s) in triangulation.simplices.iter().enumerate() {
        for mask in 1u32..(1 << s.len()) {
            let sub: Vec<usize> = (0..s.len()).filter(|b| mask & (1 << b) != 0).map(|b| s[b]).collect();
            all_faces.insert(sub);
        }
        for skip in 0..s.len() {
            let ridge: Vec<usize> = s.iter().enumerate().filter(|(i, _)| *i != skip).map(|(_, &v)| v).collect();
            ridges.entry(ridge).or_default().push(si);
        }
    }
    let mut f_vector = vec![0usize; n];
    for f in &all_faces {
        f_vector[f.len() - 1] += 1;
    }
    let euler_characteristic = f_vector
        .iter()
        .enumerate()
        .map(|(i, &c)| if i % 2 == 0 { c as i64 } else { -(c as i64) })
        .sum();
    let is_pseudomanifold = ridges.values().all(|v| v.len() == 2);

    // strong connectivity: maximal simplices glued along ridges
    let m = triangulation.simplices.len();
    let mut parent: Vec<usize> = (0..m).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut c = x;
        while p[c] != r {
            let next = p[c];
            p[c] = r;
            c = next;
        }
        r
    }
    for owners in ridges.values() {
        for w in owners.windows(2) {
            let (a, b) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
            parent[a] = b;
        }
    }
    let roots: BTreeSet<usize> = (0..m).map(|i| find(&mut parent, i)).collect();
    let is_connected = roots.len() == 1;

    let mut all_simplices_unimodular = true;
    for s in &triangulation.simplices {
        let verts: Vec<LatticePoint> = s.iter().map(|&i| triangulation.points[i].clone()).collect();
        if !is_unimodular(&verts)? {
            all_simplices_unimodular = false;
            break;
        }
    }
    let all_vertices_primitive = triangulation.points.iter().all(|p| p.is_primitive());
    let used: BTreeSet<usize> = triangulation.simplices.iter().flatten().copied().collect();
    let uses_all_boundary_points = used.len() == triangulation.points.len();

    Ok(FiberReport {
        spec: spec.clone(),
        k,
        f_vector,
        euler_characteristic,
        is_pseudomanifold,
        is_connected,
        all_simplices_unimodular,
        all_vertices_primitive,
        uses_all_boundary_points,
        facet_types: classify_facets(spec)?,
        triangulation,
    })
}
