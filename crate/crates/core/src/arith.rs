//! Exact integer and rational linear algebra used by the geometry code.

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub fn int(v: i64) -> BigInt {
    BigInt::from(v)
}

pub fn rat(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

pub fn gcd_all<'a>(values: impl IntoIterator<Item = &'a BigInt>) -> BigInt {
    let mut g = BigInt::zero();
    for v in values {
        g = g.gcd(v);
        if g.is_one() {
            break;
        }
    }
    g
}

pub fn lcm_all<'a>(values: impl IntoIterator<Item = &'a BigInt>) -> BigInt {
    values.into_iter().fold(BigInt::one(), |acc, v| acc.lcm(v))
}

/// Divides a nonzero vector by the gcd of its entries. The zero vector is returned unchanged.
pub fn make_primitive(v: &mut [BigInt]) {
    let g = gcd_all(v.iter());
    if !g.is_zero() && !g.is_one() {
        for x in v.iter_mut() {
            *x /= &g;
        }
    }
}

/// Scales a rational vector by a positive factor so it becomes a primitive integer vector.
pub fn primitive_integer(v: &[BigRational]) -> Vec<BigInt> {
    let den = lcm_all(v.iter().map(|x| x.denom()));
    let mut out: Vec<BigInt> = v.iter().map(|x| (x * &den).to_integer()).collect();
    make_primitive(&mut out);
    out
}

pub fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn dot_rat(a: &[BigInt], b: &[BigRational]) -> BigRational {
    let mut acc = BigRational::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() {
            acc += y * x;
        }
    }
    acc
}

/// Fraction-free (Bareiss) determinant of a square integer matrix.
pub fn determinant(rows: &[Vec<BigInt>]) -> BigInt {
    let n = rows.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut m: Vec<Vec<BigInt>> = rows.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(i, k);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(m: &mut [Vec<BigRational>]) -> Vec<usize> {
    let rows = m.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = m[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let factor = m[i][c].clone();
                let pivot_row = m[r].clone();
                for (x, p) in m[i].iter_mut().zip(&pivot_row) {
                    *x -= p * &factor;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(rows: &[Vec<BigRational>]) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m).len()
}

pub fn rank_int(rows: &[Vec<BigInt>]) -> usize {
    let m: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|r| r.iter().cloned().map(BigRational::from_integer).collect())
        .collect();
    rank(&m)
}

/// Affine rank (dimension of the affine hull) of a nonempty point set.
pub fn affine_rank(points: &[&[BigRational]]) -> usize {
    if points.len() <= 1 {
        return 0;
    }
    let base = points[0];
    let diffs: Vec<Vec<BigRational>> = points[1..]
        .iter()
        .map(|p| p.iter().zip(base).map(|(a, b)| a - b).collect())
        .collect();
    rank(&diffs)
}

/// Basis of the rational null space {x : rows·x = 0}, each vector scaled to a primitive integer vector.
pub fn nullspace(rows: &[Vec<BigRational>], cols: usize) -> Vec<Vec<BigInt>> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![BigRational::zero(); cols];
            v[f] = BigRational::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -m[r][f].clone();
            }
            primitive_integer(&v)
        })
        .collect()
}

/// Solves the square system `a·x = b` exactly. Returns `None` when `a` is singular.
pub fn solve(a: &[Vec<BigRational>], b: &[BigRational]) -> Option<Vec<BigRational>> {
    let n = a.len();
    let mut m: Vec<Vec<BigRational>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = rref(&mut m);
    if pivots.len() < n || pivots.iter().any(|&p| p >= n) {
        return None;
    }
    Some(m.into_iter().map(|r| r[n].clone()).collect())
}

/// Exact inverse of a square rational matrix.
pub fn inverse(a: &[Vec<BigRational>]) -> Option<Vec<Vec<BigRational>>> {
    let n = a.len();
    let mut m: Vec<Vec<BigRational>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }));
            r
        })
        .collect();
    let pivots = rref(&mut m);
    if pivots.len() < n || pivots[n - 1] >= n {
        return None;
    }
    Some(m.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Basis of the saturated integer kernel {x ∈ Zⁿ : rows·x = 0}.
///
/// Column-style unimodular reduction: the columns of the accumulated transform
/// that end up paired with zero columns span the kernel lattice.
pub fn integer_kernel(rows: &[Vec<BigInt>], cols: usize) -> Vec<Vec<BigInt>> {
    let mut a: Vec<Vec<BigInt>> = rows.to_vec();
    // u is cols×cols, stored column-major: u[j] is column j
    let mut u: Vec<Vec<BigInt>> = (0..cols)
        .map(|j| (0..cols).map(|i| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect();
    let mut pivot_col = 0;
    for row in 0..a.len() {
        if pivot_col == cols {
            break;
        }
        loop {
            // pick the column ≥ pivot_col with smallest nonzero |a[row][c]|
            let best = (pivot_col..cols)
                .filter(|&c| !a[row][c].is_zero())
                .min_by(|&x, &y| a[row][x].abs().cmp(&a[row][y].abs()));
            let Some(best) = best else { break };
            swap_cols(&mut a, &mut u, pivot_col, best);
            let mut done = true;
            for c in pivot_col + 1..cols {
                if a[row][c].is_zero() {
                    continue;
                }
                let q = a[row][c].div_floor(&a[row][pivot_col]);
                sub_col(&mut a, &mut u, c, pivot_col, &q);
                if !a[row][c].is_zero() {
                    done = false;
                }
            }
            if done {
                pivot_col += 1;
                break;
            }
        }
    }
    (pivot_col..cols).map(|j| u[j].clone()).collect()
}

fn swap_cols(a: &mut [Vec<BigInt>], u: &mut [Vec<BigInt>], x: usize, y: usize) {
    if x == y {
        return;
    }
    for r in a.iter_mut() {
        r.swap(x, y);
    }
    u.swap(x, y);
}

// column c -= q * column p
fn sub_col(a: &mut [Vec<BigInt>], u: &mut [Vec<BigInt>], c: usize, p: usize, q: &BigInt) {
    for r in a.iter_mut() {
        let d = &r[p] * q;
        r[c] -= d;
    }
    let col_p = u[p].clone();
    for (x, y) in u[c].iter_mut().zip(col_p) {
        *x -= y * q;
    }
}

pub fn factorial(n: u64) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, i| acc * i)
}

/// Multinomial coefficient `(Σ parts)! / ∏ parts!`.
pub fn multinomial(parts: &[u64]) -> BigInt {
    let total: u64 = parts.iter().sum();
    parts.iter().fold(factorial(total), |acc, &p| acc / factorial(p))
}

/// Formats a rational as `p` or `p/q`.
pub fn fmt_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect()
    }

    #[test]
    fn bareiss_matches_cofactor_expansion() {
        let a = m(&[&[2, 0, -1], &[1, 1, -1], &[1, 0, 0]]);
        assert_eq!(determinant(&a), int(1));
        let b = m(&[&[0, 2, 1], &[3, 0, 4], &[1, 1, 1]]);
        // 0*(0-4) - 2*(3-4) + 1*(3-0) = 5
        assert_eq!(determinant(&b), int(5));
        assert_eq!(determinant(&m(&[&[1, 2], &[2, 4]])), int(0));
    }

    #[test]
    fn integer_kernel_is_saturated() {
        // x + 2y + 3z = 0 has kernel lattice of index 1 in the plane
        let k = integer_kernel(&m(&[&[1, 2, 3]]), 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert_eq!(dot(v, &[int(1), int(2), int(3)]), int(0));
        }
        // the 2x2 minors of the kernel basis have gcd 1 iff the lattice is saturated
        let minors = [
            &k[0][0] * &k[1][1] - &k[0][1] * &k[1][0],
            &k[0][0] * &k[1][2] - &k[0][2] * &k[1][0],
            &k[0][1] * &k[1][2] - &k[0][2] * &k[1][1],
        ];
        assert_eq!(gcd_all(minors.iter()), int(1));
    }

    #[test]
    fn multinomials() {
        assert_eq!(multinomial(&[1, 1, 1]), int(6));
        assert_eq!(multinomial(&[2, 0]), int(1));
        assert_eq!(factorial(6), int(720));
    }

    #[test]
    fn nullspace_of_plane() {
        let rows = vec![vec![rat(1), rat(1), rat(0)]];
        let ns = nullspace(&rows, 3);
        assert_eq!(ns.len(), 2);
    }
}
