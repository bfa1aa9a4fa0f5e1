//! Exact integer linear algebra: Hermite and Smith normal forms, sublattice
//! membership and unimodular completion.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Matrix = Vec<Vec<BigInt>>;

pub fn to_big(rows: &[Vec<i64>]) -> Matrix {
    rows.iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect()
}

pub fn identity(n: usize) -> Matrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BigInt::one()
                    } else {
                        BigInt::zero()
                    }
                })
                .collect()
        })
        .collect()
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    row.iter()
                        .zip(b.iter())
                        .fold(BigInt::zero(), |acc, (x, brow)| acc + x * &brow[j])
                })
                .collect()
        })
        .collect()
}

fn row_axpy(m: &mut Matrix, target: usize, src: usize, q: &BigInt) {
    // row[target] -= q * row[src]
    if q.is_zero() {
        return;
    }
    let src_row = m[src].clone();
    for (t, s) in m[target].iter_mut().zip(src_row.iter()) {
        *t -= q * s;
    }
}

fn col_axpy(m: &mut Matrix, target: usize, src: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    for row in m.iter_mut() {
        let s = row[src].clone();
        row[target] -= q * s;
    }
}

fn col_swap(m: &mut Matrix, a: usize, b: usize) {
    for row in m.iter_mut() {
        row.swap(a, b);
    }
}

/// Row-style Hermite normal form of the row span. Zero rows are dropped; pivots
/// are positive and the entries above each pivot lie in `[0, pivot)`.
pub fn hermite_normal_form(rows: &Matrix) -> Matrix {
    let mut m: Matrix = rows
        .iter()
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .cloned()
        .collect();
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut r = 0;
    let mut pivots = Vec::new();
    for c in 0..ncols {
        if r >= m.len() {
            break;
        }
        loop {
            let best = (r..m.len())
                .filter(|&i| !m[i][c].is_zero())
                .min_by(|&i, &j| m[i][c].abs().cmp(&m[j][c].abs()));
            let Some(p) = best else { break };
            m.swap(r, p);
            let mut done = true;
            for i in r + 1..m.len() {
                if !m[i][c].is_zero() {
                    let q = m[i][c].div_floor(&m[r][c]);
                    row_axpy(&mut m, i, r, &q);
                    if !m[i][c].is_zero() {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if m[r][c].is_zero() {
            continue;
        }
        if m[r][c].is_negative() {
            for x in m[r].iter_mut() {
                *x = -x.clone();
            }
        }
        for i in 0..r {
            let q = m[i][c].div_floor(&m[r][c]);
            row_axpy(&mut m, i, r, &q);
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    m
}

/// A sublattice of `Z^dim` stored by its Hermite basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    dim: usize,
    hnf: Matrix,
}

impl Lattice {
    pub fn zero(dim: usize) -> Self {
        Lattice {
            dim,
            hnf: Vec::new(),
        }
    }

    pub fn from_generators(dim: usize, gens: &Matrix) -> Self {
        debug_assert!(gens.iter().all(|g| g.len() == dim));
        Lattice {
            dim,
            hnf: hermite_normal_form(gens),
        }
    }

    pub fn from_i64(dim: usize, gens: &[Vec<i64>]) -> Self {
        Self::from_generators(dim, &to_big(gens))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.hnf.len()
    }

    pub fn basis(&self) -> &Matrix {
        &self.hnf
    }

    pub fn basis_i64(&self) -> Option<Vec<Vec<i64>>> {
        self.hnf
            .iter()
            .map(|r| r.iter().map(|x| x.to_i64()).collect())
            .collect()
    }

    /// Canonical representative of `v` modulo the lattice.
    pub fn reduce(&self, v: &[BigInt]) -> Vec<BigInt> {
        let mut w = v.to_vec();
        for row in &self.hnf {
            let c = row
                .iter()
                .position(|x| !x.is_zero())
                .expect("hnf row is nonzero");
            let q = w[c].div_floor(&row[c]);
            if !q.is_zero() {
                for (x, y) in w.iter_mut().zip(row.iter()) {
                    *x -= &q * y;
                }
            }
        }
        w
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        self.reduce(v).iter().all(|x| x.is_zero())
    }

    pub fn contains_i64(&self, v: &[i64]) -> bool {
        let b: Vec<BigInt> = v.iter().map(|&x| BigInt::from(x)).collect();
        self.contains(&b)
    }

    pub fn insert(&mut self, v: Vec<BigInt>) -> bool {
        if self.contains(&v) {
            return false;
        }
        let mut gens = self.hnf.clone();
        gens.push(v);
        self.hnf = hermite_normal_form(&gens);
        true
    }

    pub fn is_sublattice_of(&self, other: &Lattice) -> bool {
        self.hnf.iter().all(|r| other.contains(r))
    }
}

/// `u * m * v == d` with `d` diagonal, each diagonal entry dividing the next.
#[derive(Clone, Debug)]
pub struct Smith {
    pub diagonal: Vec<BigInt>,
    pub u: Matrix,
    pub v: Matrix,
}

pub fn smith_normal_form(m: &Matrix) -> Smith {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut a = m.clone();
    let mut u = identity(rows);
    let mut v = identity(cols);
    let mut diagonal = Vec::new();
    for t in 0..rows.min(cols) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if !a[i][j].is_zero()
                        && best.map_or(true, |(bi, bj)| a[i][j].abs() < a[bi][bj].abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return finish_smith(a, u, v, diagonal, rows.min(cols));
            };
            a.swap(t, pi);
            u.swap(t, pi);
            col_swap(&mut a, t, pj);
            col_swap(&mut v, t, pj);
            let mut clean = true;
            for i in t + 1..rows {
                let q = a[i][t].div_floor(&a[t][t]);
                row_axpy(&mut a, i, t, &q);
                row_axpy(&mut u, i, t, &q);
                if !a[i][t].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..cols {
                let q = a[t][j].div_floor(&a[t][t]);
                col_axpy(&mut a, j, t, &q);
                col_axpy(&mut v, j, t, &q);
                if !a[t][j].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            let bad =
                (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !(&a[i][j] % &a[t][t]).is_zero()));
            match bad {
                Some(i) => {
                    let neg = -BigInt::one();
                    row_axpy(&mut a, t, i, &neg);
                    row_axpy(&mut u, t, i, &neg);
                }
                None => break,
            }
        }
        if a[t][t].is_negative() {
            for x in a[t].iter_mut() {
                *x = -x.clone();
            }
            for x in u[t].iter_mut() {
                *x = -x.clone();
            }
        }
        diagonal.push(a[t][t].clone());
    }
    Smith { diagonal, u, v }
}

fn finish_smith(_a: Matrix, u: Matrix, v: Matrix, mut diagonal: Vec<BigInt>, len: usize) -> Smith {
    while diagonal.len() < len {
        diagonal.push(BigInt::zero());
    }
    Smith { diagonal, u, v }
}

/// Fraction-free Bareiss determinant.
pub fn determinant(m: &Matrix) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let val = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = val / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * a[n - 1][n - 1].clone()
}

/// Inverse of a unimodular matrix, or `None` if `m` is not unimodular.
pub fn unimodular_inverse(m: &Matrix) -> Option<Matrix> {
    let n = m.len();
    if m.iter().any(|r| r.len() != n) {
        return None;
    }
    let s = smith_normal_form(m);
    if s.diagonal.len() != n || s.diagonal.iter().any(|d| !d.is_one()) {
        return None;
    }
    // u m v = I  =>  m^-1 = v u
    Some(mat_mul(&s.v, &s.u))
}

/// Extends the rows of `m` to a basis of `Z^n`, if they span a saturated
/// sublattice. The given rows come first, unchanged.
pub fn complete_to_basis(m: &Matrix, n: usize) -> Option<Matrix> {
    let k = m.len();
    if k == 0 {
        return Some(identity(n));
    }
    let s = smith_normal_form(m);
    if s.diagonal.len() < k || s.diagonal.iter().take(k).any(|d| !d.is_one()) {
        return None;
    }
    // u m v = [I 0], so the last n-k rows of v^-1 complete m.
    let vinv = unimodular_inverse(&s.v)?;
    let mut out = m.clone();
    out.extend(vinv.into_iter().skip(k));
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn big(rows: &[&[i64]]) -> Matrix {
        rows.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    #[test]
    fn hnf_of_simple_lattice() {
        let h = hermite_normal_form(&big(&[&[2, 4], &[3, 5]]));
        assert_eq!(h, big(&[&[1, 1], &[0, 2]]));
    }

    #[test]
    fn membership_and_reduction() {
        let l = Lattice::from_i64(3, &[vec![1, 1, 0], vec![0, 2, 2]]);
        assert!(l.contains_i64(&[1, 3, 2]));
        assert!(!l.contains_i64(&[0, 1, 1]));
        assert_eq!(l.rank(), 2);
    }

    #[test]
    fn smith_of_known_matrix() {
        let m = big(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
        let s = smith_normal_form(&m);
        assert_eq!(
            s.diagonal,
            vec![BigInt::from(2), BigInt::from(6), BigInt::from(12)]
        );
    }

    #[test]
    fn completion_of_primitive_vector() {
        let b = complete_to_basis(&big(&[&[1, 1, 1]]), 3).unwrap();
        assert_eq!(determinant(&b).abs(), BigInt::one());
        assert!(complete_to_basis(&big(&[&[2, 0, 0]]), 3).is_none());
    }

    fn small_matrix(r: usize, c: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
        proptest::collection::vec(proptest::collection::vec(-6i64..=6, c), r)
    }

    proptest! {
        #[test]
        fn smith_transforms_are_consistent(m in small_matrix(3, 4)) {
            let mb = to_big(&m);
            let s = smith_normal_form(&mb);
            let d = mat_mul(&mat_mul(&s.u, &mb), &s.v);
            for (i, row) in d.iter().enumerate() {
                for (j, x) in row.iter().enumerate() {
                    if i == j { prop_assert_eq!(x, &s.diagonal[i]); } else { prop_assert!(x.is_zero()); }
                }
            }
            for w in s.diagonal.windows(2) {
                if !w[1].is_zero() { prop_assert!((&w[1] % &w[0]).is_zero()); }
            }
            prop_assert_eq!(determinant(&s.u).abs(), BigInt::one());
            prop_assert_eq!(determinant(&s.v).abs(), BigInt::one());
        }

        #[test]
        fn determinant_matches_smith(m in small_matrix(3, 3)) {
            let mb = to_big(&m);
            let s = smith_normal_form(&mb);
            let prod = s.diagonal.iter().fold(BigInt::one(), |a, d| a * d);
            prop_assert_eq!(determinant(&mb).abs(), prod);
        }

        #[test]
        fn hnf_preserves_span(m in small_matrix(3, 3)) {
            let mb = to_big(&m);
            let l = Lattice::from_generators(3, &mb);
            for r in &mb { prop_assert!(l.contains(r)); }
            let back = Lattice::from_generators(3, l.basis());
            prop_assert_eq!(back, l);
        }
    }
}
