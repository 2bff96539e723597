//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

use std::collections::HashMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use toriclg::compactification::{
    component_count, delta, delta_vertices, facet_restrictions, facetwise_boundary_points, infinity_fiber_report,
    nabla, nabla_rows,
};
use toriclg::geometry::{convex_hull_lattice, LatticePoint};
use toriclg::laurent::{standard_polynomial, LaurentPolynomial, ModelSpec};
use toriclg::period::main_period_coefficients;

type Terms = HashMap<Vec<i64>, BigInt>;

fn spec(d: &[u32], n: u32) -> ModelSpec {
    ModelSpec::new(d.to_vec(), n).unwrap()
}

fn terms_of(f: &LaurentPolynomial) -> Terms {
    f.terms().map(|(e, c)| (e.clone(), c.clone())).collect()
}

// Constant term of f^j by full expansion, without any pruning.
fn naive_constant_term(f: &Terms, dim: usize, j: u32) -> BigInt {
    let mut acc: Terms = HashMap::from([(vec![0; dim], BigInt::one())]);
    for _ in 0..j {
        let mut next: Terms = HashMap::new();
        for (a, ca) in &acc {
            for (b, cb) in f {
                let e: Vec<i64> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                *next.entry(e).or_insert_with(BigInt::zero) += ca * cb;
            }
        }
        acc = next;
    }
    acc.get(&vec![0; dim]).cloned().unwrap_or_default()
}

fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |a, k| a * k)
}

// (ι l)! ∏ (d_i l)! / (l!)^{N+1} at j = ι l, zero elsewhere
fn closed_form(s: &ModelSpec, j: u32) -> BigInt {
    let iota = s.index();
    if !j.is_multiple_of(iota) {
        return BigInt::zero();
    }
    let l = (j / iota) as u64;
    let num = s.degrees().iter().fold(factorial(j as u64), |a, &d| a * factorial(d as u64 * l));
    num / factorial(l).pow(s.ambient() + 1)
}

// Lattice points w of t·∇ = {⟨w, u⟩ ≥ −t for every vertex u of Δ}, by scanning a box.
fn dilate_count(verts: &[Vec<i64>], n: usize, radius: i64, t: i64) -> u64 {
    let r = radius * t;
    let mut w = vec![-r; n];
    let mut count = 0;
    loop {
        if verts.iter().all(|u| u.iter().zip(&w).map(|(a, b)| a * b).sum::<i64>() >= -t) {
            count += 1;
        }
        let mut i = 0;
        while i < n && w[i] == r {
            w[i] = -r;
            i += 1;
        }
        if i == n {
            return count;
        }
        w[i] += 1;
    }
}

fn delta_verts_i64(s: &ModelSpec) -> Vec<Vec<i64>> {
    delta_vertices(s).iter().map(|v| v.to_i64().unwrap()).collect()
}

fn binomial(n: u64, k: u64) -> i128 {
    (0..k).fold(1i128, |a, i| a * (n - i) as i128 / (i + 1) as i128)
}

// n-th finite difference of the Ehrhart polynomial of ∇: its normalized volume.
fn normalized_volume(s: &ModelSpec) -> i128 {
    let n = s.torus_dim();
    let verts = delta_verts_i64(s);
    let radius = s.index() as i64;
    (0..=n as u64)
        .map(|i| {
            let sign = if (n as u64 - i).is_multiple_of(2) { 1 } else { -1 };
            sign * binomial(n as u64, i) * dilate_count(&verts, n, radius, i as i64) as i128
        })
        .sum()
}

fn det_i128(rows: &[Vec<i64>]) -> i128 {
    let n = rows.len();
    if n == 1 {
        return rows[0][0] as i128;
    }
    (0..n)
        .map(|c| {
            let minor: Vec<Vec<i64>> = rows[1..]
                .iter()
                .map(|r| r.iter().enumerate().filter(|(k, _)| *k != c).map(|(_, &x)| x).collect())
                .collect();
            let sign = if c % 2 == 0 { 1 } else { -1 };
            sign * rows[0][c] as i128 * det_i128(&minor)
        })
        .sum()
}

fn range_specs(n_min: usize, n_max: usize, max_ambient: u32) -> Vec<ModelSpec> {
    (n_min..=n_max)
        .flat_map(ModelSpec::with_torus_dim)
        .filter(|s| s.ambient() <= max_ambient)
        .collect()
}

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn within(limit: Duration, start: Instant) -> Result<(), String> {
    let t = start.elapsed();
    if t > limit {
        Err(format!("took {t:?}, limit {limit:?}"))
    } else {
        Ok(())
    }
}

fn period_condition() -> Outcome {
    let start = Instant::now();
    let specs = [spec(&[3], 4), spec(&[2], 4), spec(&[2, 2], 5), spec(&[4], 4), spec(&[2, 3], 5)];
    // the closed form is first validated against plain expansion for l ≤ 2
    for s in &specs {
        let f = standard_polynomial(s);
        let t = terms_of(&f);
        for l in 0..=2 {
            let j = s.index() * l;
            let naive = naive_constant_term(&t, f.dim(), j);
            if naive != closed_form(s, j) {
                return Err(format!("{s}: closed form {} vs expansion {naive} at j={j}", closed_form(s, j)));
            }
        }
    }
    let mut checked = 0;
    for s in &specs {
        let order = 3 * s.index();
        let series = main_period_coefficients(&standard_polynomial(s), order);
        for j in 0..=order {
            let c = &series.coefficients[j as usize];
            if *c != closed_form(s, j) {
                return Err(format!("{s}: φ[f^{j}] = {c}, closed form {}", closed_form(s, j)));
            }
            checked += 1;
        }
    }
    let cubic = main_period_coefficients(&standard_polynomial(&specs[0]), 4);
    if cubic.coefficients[2] != BigInt::from(12) || cubic.coefficients[4] != BigInt::from(540) {
        return Err("(3;2) spot values differ from 12, 540".into());
    }
    within(Duration::from_secs(120), start)?;
    Ok(format!("{} specs, {checked} coefficients exact; (3;2) φ[f²]=12, φ[f⁴]=540", specs.len()))
}

fn duality_cross_check() -> Outcome {
    let start = Instant::now();
    let specs = range_specs(2, 4, 7);
    for s in &specs {
        let rows = convex_hull_lattice(&nabla_rows(s).rows).map_err(|e| e.to_string())?;
        let dual = convex_hull_lattice(&delta_vertices(s)).and_then(|d| d.polar_dual()).map_err(|e| e.to_string())?;
        let same = rows.facets().map_err(|e| e.to_string())? == dual.facets().map_err(|e| e.to_string())?
            && rows.vertices() == dual.vertices();
        if !same {
            return Err(format!("{s}: hull of matrix rows differs from polar dual"));
        }
    }
    within(Duration::from_secs(60), start)?;
    Ok(format!("{} specs with 2 ≤ n ≤ 4, N ≤ 7 agree facet-by-facet", specs.len()))
}

fn reflexivity() -> Outcome {
    let specs = range_specs(2, 4, 7);
    for s in &specs {
        let d = delta(s).map_err(|e| e.to_string())?;
        if !d.is_reflexive().map_err(|e| e.to_string())? {
            return Err(format!("{s}: Δ is not reflexive"));
        }
        if d.interior_lattice_points() != vec![LatticePoint::from_i64(&vec![0; s.torus_dim()])] {
            return Err(format!("{s}: Δ has interior points besides the origin"));
        }
    }
    Ok(format!("{} specs reflexive", specs.len()))
}

fn component_counts() -> Outcome {
    let cases = [(spec(&[3], 3), 3), (spec(&[2], 3), 8), (spec(&[], 2), 9), (spec(&[3], 4), 14)];
    let mut seen = Vec::new();
    for (s, expected) in &cases {
        let k = component_count(s).map_err(|e| e.to_string())?;
        let facetwise = facetwise_boundary_points(&nabla(s).map_err(|e| e.to_string())?).len();
        let brute = dilate_count(&delta_verts_i64(s), s.torus_dim(), s.index() as i64, 1) as usize - 1;
        if k != *expected || facetwise != *expected || brute != *expected {
            return Err(format!("{s}: expected {expected}, got {k} / {facetwise} / {brute}"));
        }
        seen.push(format!("k{s}={k}"));
    }
    Ok(seen.join(", "))
}

fn fiber_certificate() -> Outcome {
    let start = Instant::now();
    let specs = range_specs(1, 4, 7);
    for s in &specs {
        let r = infinity_fiber_report(s).map_err(|e| format!("{s}: {e}"))?;
        if !r.certified() {
            return Err(format!(
                "{s}: not certified (unimodular {}, pseudomanifold {}, connected {}, χ {}, primitive {}, all points {})",
                r.all_simplices_unimodular,
                r.is_pseudomanifold,
                r.is_connected,
                r.euler_characteristic,
                r.all_vertices_primitive,
                r.uses_all_boundary_points
            ));
        }
        let pts: Vec<Vec<i64>> = r.triangulation.points.iter().map(|p| p.to_i64().unwrap()).collect();
        for simplex in &r.triangulation.simplices {
            let rows: Vec<Vec<i64>> = simplex.iter().map(|&i| pts[i].clone()).collect();
            if det_i128(&rows).abs() != 1 {
                return Err(format!("{s}: simplex {simplex:?} is not unimodular"));
            }
        }
        let k = dilate_count(&delta_verts_i64(s), s.torus_dim(), s.index() as i64, 1) as usize - 1;
        if r.f_vector[0] != k || r.k != k {
            return Err(format!("{s}: {} vertices, {k} boundary points", r.f_vector[0]));
        }
        let volume = normalized_volume(s);
        if volume != r.triangulation.simplices.len() as i128 {
            return Err(format!("{s}: {} simplices, normalized volume {volume}", r.triangulation.simplices.len()));
        }
        let chi = 1 + if s.torus_dim() % 2 == 1 { 1 } else { -1 };
        if r.euler_characteristic != chi {
            return Err(format!("{s}: χ = {}", r.euler_characteristic));
        }
    }
    within(Duration::from_secs(300), start)?;
    Ok(format!("{} specs with n ≤ 4, N ≤ 7 certified; simplex counts equal Ehrhart volumes", specs.len()))
}

fn face_restriction() -> Outcome {
    let mut lines = Vec::new();
    for s in [spec(&[3], 4), spec(&[2], 4), spec(&[2, 2], 5)] {
        let mut matched = 0;
        let mut unresolved = 0;
        for r in facet_restrictions(&s).map_err(|e| e.to_string())? {
            match &r.matched {
                Some(m) => {
                    let target = terms_of(&standard_polynomial(&m.spec));
                    let image: Option<Terms> = r
                        .restricted
                        .terms()
                        .map(|(e, c)| m.map.apply(e).map(|img| (img, c.clone())))
                        .collect();
                    if image.as_ref() != Some(&target) {
                        return Err(format!("{s}: claimed match with {} does not map terms onto it", m.spec));
                    }
                    matched += 1;
                }
                None if r.all_u => return Err(format!("{s}: all-u facet {:?} unresolved", r.normal)),
                None => unresolved += 1,
            }
        }
        lines.push(format!("{s}: {matched} matched, {unresolved} unresolved"));
    }
    Ok(lines.join("; "))
}

fn oracle_equivalence() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut compared = 0;
    for _ in 0..200 {
        let dim = rng.gen_range(1..=3);
        let count = rng.gen_range(1..=8);
        let terms: Vec<(Vec<i64>, BigInt)> = (0..count)
            .map(|_| ((0..dim).map(|_| rng.gen_range(-2..=2)).collect(), BigInt::from(rng.gen_range(1..=5))))
            .collect();
        let f = LaurentPolynomial::from_terms(dim, terms).map_err(|e| e.to_string())?;
        let t = terms_of(&f);
        for j in 0..=4 {
            let pruned = f.power_constant_term(j);
            let naive = naive_constant_term(&t, dim, j);
            if pruned != naive {
                return Err(format!("{f}: j={j} pruned {pruned} vs naive {naive}"));
            }
            compared += 1;
        }
    }
    within(Duration::from_secs(60), start)?;
    Ok(format!("200 random polynomials, {compared} constant terms equal"))
}

fn determinism() -> Outcome {
    let run = |jobs: &str| {
        let o = Command::new(env!("CARGO_BIN_EXE_toriclg"))
            .args(["sweep", "--max-ambient", "7", "--min-torus-dim", "1", "--max-torus-dim", "4", "--periods"])
            .args(["--jobs", jobs])
            .env_remove("TORICLG_OUT_DIR")
            .output()
            .map_err(|e| e.to_string())?;
        if !o.status.success() {
            return Err(format!("sweep exited with {:?}", o.status.code()));
        }
        Ok(o.stdout)
    };
    let a = run("1")?;
    let b = run("4")?;
    if a != b {
        return Err("outputs differ between --jobs 1 and --jobs 4".into());
    }
    Ok(format!("--jobs 1 and --jobs 4 byte-identical ({} bytes, {} rows)", a.len(), a.iter().filter(|&&c| c == b'\n').count() - 1))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("period condition", period_condition),
        ("duality cross-check", duality_cross_check),
        ("reflexivity", reflexivity),
        ("component counts", component_counts),
        ("fiber certificate", fiber_certificate),
        ("face restriction", face_restriction),
        ("oracle equivalence", oracle_equivalence),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        let t = start.elapsed();
        match outcome {
            Ok(detail) => println!("criterion {} ({name}): PASS [{t:.2?}] {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {} ({name}): FAIL [{t:.2?}] {detail}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
