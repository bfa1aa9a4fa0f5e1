//! Brute-force diagram of a lattice ideal, used to cross-check the
//! standard-basis engine. Shares no code with it.
//!
//! `x^a - x^b y^c` lies in the ideal iff `(a - b, -c)` is in the lattice `L`,
//! so some `c` exists iff `a - b` lies in the projection `L_x`. Grouping the
//! monomials of degree at most `bound` by their class modulo `L_x`, every
//! monomial that is not the largest of its class is an initial exponent.

use crate::binomial::BinomialIdeal;
use crate::error::{Error, Result};
use std::collections::BTreeMap;

pub const MAX_BOUND: usize = 24;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleDiagram {
    /// Minimal initial exponents found within the bound, sorted.
    pub vertices: Vec<Vec<i64>>,
    /// The constant monomial is an initial exponent: the distinguished point
    /// is not on the variety.
    pub unit: bool,
}

fn hnf(mut rows: Vec<Vec<i128>>, ncols: usize) -> Vec<Vec<i128>> {
    let mut r = 0;
    for c in 0..ncols {
        loop {
            let piv = (r..rows.len()).filter(|&i| rows[i][c] != 0).min_by_key(|&i| rows[i][c].abs());
            let Some(p) = piv else { break };
            rows.swap(r, p);
            let mut clean = true;
            for i in r + 1..rows.len() {
                let q = rows[i][c].div_euclid(rows[r][c]);
                for j in 0..ncols {
                    rows[i][j] -= q * rows[r][j];
                }
                clean &= rows[i][c] == 0;
            }
            if clean {
                break;
            }
        }
        if r < rows.len() && rows[r][c] != 0 {
            if rows[r][c] < 0 {
                rows[r].iter_mut().for_each(|x| *x = -*x);
            }
            r += 1;
        }
    }
    rows.truncate(r);
    rows
}

fn residue(basis: &[Vec<i128>], v: &[i64]) -> Vec<i128> {
    let mut w: Vec<i128> = v.iter().map(|&x| x as i128).collect();
    for row in basis {
        let c = row.iter().position(|x| *x != 0).unwrap();
        let q = w[c].div_euclid(row[c]);
        for j in 0..w.len() {
            w[j] -= q * row[j];
        }
    }
    w
}

fn monomials(n: usize, bound: usize) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|m: Vec<i64>| {
                let used: i64 = m.iter().sum();
                (0..=(bound as i64 - used)).map(move |k| {
                    let mut m2 = m.clone();
                    m2.push(k);
                    m2
                })
            })
            .collect();
    }
    out
}

fn local_less(a: &[i64], b: &[i64]) -> bool {
    let (da, db): (i64, i64) = (a.iter().sum(), b.iter().sum());
    (da, a) < (db, b)
}

pub fn oracle_lattice_ideal(ideal: &BinomialIdeal, bound: usize) -> Result<OracleDiagram> {
    if bound > MAX_BOUND || ideal.num_x > 4 {
        return Err(Error::invalid("oracle instance too large"));
    }
    let nx = ideal.num_x;
    let rows: Vec<Vec<i128>> = ideal
        .generators
        .iter()
        .map(|g| g.alpha.iter().zip(&g.beta).map(|(a, b)| (a - b) as i128).collect())
        .collect();
    let basis = hnf(rows, nx);
    let mut classes: BTreeMap<Vec<i128>, Vec<Vec<i64>>> = BTreeMap::new();
    for m in monomials(nx, bound) {
        classes.entry(residue(&basis, &m)).or_default().push(m);
    }
    let mut initial: Vec<Vec<i64>> = Vec::new();
    for members in classes.values() {
        let top = members.iter().fold(&members[0], |best, m| if local_less(best, m) { m } else { best });
        initial.extend(members.iter().filter(|m| *m != top).cloned());
    }
    let unit = initial.iter().any(|m| m.iter().all(|x| *x == 0));
    let mut vertices: Vec<Vec<i64>> = initial
        .iter()
        .filter(|a| !initial.iter().any(|b| b != *a && b.iter().zip(a.iter()).all(|(x, y)| x <= y)))
        .cloned()
        .collect();
    vertices.sort_by(|a, b| {
        let (da, db): (i64, i64) = (a.iter().sum(), b.iter().sum());
        (da, a).cmp(&(db, b))
    });
    Ok(OracleDiagram { vertices, unit })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::binomial::Binomial;

    #[test]
    fn cusp_vertex() {
        let ideal = BinomialIdeal::new(2, 0, vec![Binomial::new(vec![3, 0], vec![0, 2], vec![])]).unwrap();
        let o = oracle_lattice_ideal(&ideal, 6).unwrap();
        assert_eq!(o.vertices, vec![vec![0, 2]]);
        assert!(!o.unit);
    }

    #[test]
    fn substitution_pair_vertex() {
        let ideal = BinomialIdeal::new(
            2,
            2,
            vec![Binomial::new(vec![1, 0], vec![0, 1], vec![1, 0]), Binomial::new(vec![0, 1], vec![1, 0], vec![0, 1])],
        )
        .unwrap();
        let o = oracle_lattice_ideal(&ideal, 4).unwrap();
        assert_eq!(o.vertices, vec![vec![0, 1]]);
    }

    #[test]
    fn refuses_large_bounds() {
        let ideal = BinomialIdeal::new(1, 0, vec![]).unwrap();
        assert!(oracle_lattice_ideal(&ideal, 100).is_err());
    }
}
