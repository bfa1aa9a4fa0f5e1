//! Exact feasibility of `A v = b, v >= 0` over the rationals (phase one of
//! the simplex method with Bland's rule).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

type Q = BigRational;

/// Returns a feasible point if one exists.
pub fn feasible(a: &[Vec<Q>], b: &[Q]) -> Option<Vec<Q>> {
    let m = a.len();
    let n = a.first().map_or(0, |r| r.len());
    // Tableau over n original + m artificial columns, then rhs.
    let mut t: Vec<Vec<Q>> = Vec::with_capacity(m);
    for i in 0..m {
        let flip = b[i].is_negative();
        let sgn = |x: &Q| if flip { -x.clone() } else { x.clone() };
        let mut row: Vec<Q> = a[i].iter().map(sgn).collect();
        row.extend((0..m).map(|j| if i == j { Q::one() } else { Q::zero() }));
        row.push(sgn(&b[i]));
        t.push(row);
    }
    let width = n + m;
    let mut basis: Vec<usize> = (n..n + m).collect();
    // Objective: minimize the sum of artificials; reduced costs below.
    loop {
        let mut cost = vec![Q::zero(); width + 1];
        for j in n..width {
            cost[j] = Q::one();
        }
        for (i, &bj) in basis.iter().enumerate() {
            let c = cost[bj].clone();
            if !c.is_zero() {
                for j in 0..=width {
                    cost[j] = &cost[j] - &c * &t[i][j];
                }
            }
        }
        let Some(enter) = (0..width).find(|&j| cost[j].is_negative()) else {
            break;
        };
        let mut leave: Option<(usize, Q)> = None;
        for i in 0..m {
            if t[i][enter].is_positive() {
                let ratio = &t[i][width] / &t[i][enter];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let (r, _) = leave?;
        let piv = t[r][enter].clone();
        for x in t[r].iter_mut() {
            *x = &*x / &piv;
        }
        let prow = t[r].clone();
        for (i, row) in t.iter_mut().enumerate() {
            if i != r && !row[enter].is_zero() {
                let f = row[enter].clone();
                for j in 0..=width {
                    row[j] = &row[j] - &f * &prow[j];
                }
            }
        }
        basis[r] = enter;
    }
    let mut x = vec![Q::zero(); width];
    for (i, &bj) in basis.iter().enumerate() {
        x[bj] = t[i][width].clone();
    }
    if x[n..].iter().any(|v| !v.is_zero()) {
        return None;
    }
    x.truncate(n);
    Some(x)
}

/// Coordinates `k` such that the rational span of `rows` holds a vector that
/// is nonnegative on every coordinate and positive at `k`.
pub fn nonnegative_support(rows: &[Vec<BigInt>], dim: usize) -> Vec<usize> {
    if rows.is_empty() {
        return Vec::new();
    }
    // v = sum c_i rows_i with c free: write c = c+ - c-.
    let r = rows.len();
    let q = |x: &BigInt| Q::from_integer(x.clone());
    let mut found = vec![false; dim];
    for k in 0..dim {
        if found[k] {
            continue;
        }
        // Variables: c+ (r), c- (r), slack s (dim) with v_j - s_j = 0, plus
        // normalization v_k - s_k = 1 folded into the k-th row.
        let mut a: Vec<Vec<Q>> = Vec::with_capacity(dim);
        let mut b: Vec<Q> = Vec::with_capacity(dim);
        for j in 0..dim {
            let mut row = Vec::with_capacity(2 * r + dim);
            row.extend(rows.iter().map(|g| q(&g[j])));
            row.extend(rows.iter().map(|g| -q(&g[j])));
            row.extend((0..dim).map(|l| if l == j { -Q::one() } else { Q::zero() }));
            a.push(row);
            b.push(if j == k { Q::one() } else { Q::zero() });
        }
        if let Some(sol) = feasible(&a, &b) {
            for j in 0..dim {
                let v: Q = (0..r)
                    .map(|i| q(&rows[i][j]) * (&sol[i] - &sol[r + i]))
                    .sum();
                if v.is_positive() {
                    found[j] = true;
                }
            }
        }
    }
    (0..dim).filter(|&k| found[k]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    #[test]
    fn support_of_mixed_span() {
        // (1,-1,0) and (0,1,1): (1,0,1) is nonnegative, x2 never positive alone.
        let s = nonnegative_support(&big(&[&[1, -1, 0], &[0, 1, 1]]), 3);
        assert_eq!(s, vec![0, 1, 2]);
        let s = nonnegative_support(&big(&[&[1, -1, 0]]), 3);
        assert!(s.is_empty());
        let s = nonnegative_support(&big(&[&[2, -1, 0], &[0, 0, 3]]), 3);
        assert_eq!(s, vec![2]);
    }

    #[test]
    fn infeasible_system() {
        let one = Q::one();
        let a = vec![vec![one.clone(), one.clone()]];
        assert!(feasible(&a, &[-one]).is_none());
    }
}
