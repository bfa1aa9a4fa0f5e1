//! Generators of a lattice ideal `I_L = (x^{v+} - x^{v-} : v in L)`.
//!
//! Starting from a lattice basis `B`, `I_L` is the saturation of `I_B` by the
//! product of all variables. It is computed by eliminating `t` from
//! `I_B + (t x_1 ... x_n - 1)` with a binomial Buchberger run. Every
//! element stays a difference of two monomials, so normal forms of
//! monomials are monomials and an S-binomial reduces to zero exactly when
//! both of its terms have the same normal form. Common monomial factors are
//! cancelled along the way; this is harmless because the target ideal is
//! saturated.

use crate::error::{Error, Result};
use std::cmp::Ordering;
use std::collections::VecDeque;

/// A binomial `x^plus - x^minus` over all variables.
pub type RawBinomial = (Vec<i64>, Vec<i64>);

#[derive(Clone, Debug)]
struct Element {
    lead: Vec<i64>,
    tail: Vec<i64>,
}

/// `t`-degree first, then graded reverse lexicographic on the rest.
fn elim_cmp(a: &[i64], b: &[i64]) -> Ordering {
    let t = a.len() - 1;
    a[t].cmp(&b[t]).then_with(|| {
        let da: i64 = a[..t].iter().sum();
        let db: i64 = b[..t].iter().sum();
        da.cmp(&db).then_with(|| {
            for i in (0..t).rev() {
                if a[i] != b[i] {
                    return b[i].cmp(&a[i]);
                }
            }
            Ordering::Equal
        })
    })
}

fn divides(a: &[i64], b: &[i64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn make(mut a: Vec<i64>, mut b: Vec<i64>) -> Option<Element> {
    for i in 0..a.len() {
        let c = a[i].min(b[i]);
        a[i] -= c;
        b[i] -= c;
    }
    match elim_cmp(&a, &b) {
        Ordering::Equal => None,
        Ordering::Greater => Some(Element { lead: a, tail: b }),
        Ordering::Less => Some(Element { lead: b, tail: a }),
    }
}

struct Run {
    elems: Vec<Element>,
    steps: usize,
    budget: usize,
}

impl Run {
    fn tick(&mut self) -> Result<()> {
        self.steps += 1;
        if self.steps > self.budget {
            return Err(Error::budget(
                "lattice ideal saturation exceeded its step budget",
            ));
        }
        Ok(())
    }

    fn normal_form(&mut self, mut m: Vec<i64>) -> Result<Vec<i64>> {
        loop {
            let Some(g) = self.elems.iter().find(|g| divides(&g.lead, &m)) else {
                return Ok(m);
            };
            for i in 0..m.len() {
                m[i] += g.tail[i] - g.lead[i];
            }
            self.tick()?;
        }
    }
}

/// Generators of `I_L` where `L` is spanned by `basis`.
pub fn lattice_ideal_generators(basis: &[Vec<i64>], budget: usize) -> Result<Vec<RawBinomial>> {
    let Some(n) = basis.first().map(|v| v.len()) else {
        return Ok(Vec::new());
    };
    let mut run = Run {
        elems: Vec::new(),
        steps: 0,
        budget,
    };
    let mut pending: VecDeque<Element> = VecDeque::new();
    for v in basis {
        let mut plus: Vec<i64> = v.iter().map(|&x| x.max(0)).collect();
        let mut minus: Vec<i64> = v.iter().map(|&x| (-x).max(0)).collect();
        plus.push(0);
        minus.push(0);
        pending.extend(make(plus, minus));
    }
    pending.push_back(Element {
        lead: vec![1; n + 1],
        tail: vec![0; n + 1],
    });

    let mut pairs: VecDeque<(usize, usize)> = VecDeque::new();
    loop {
        if let Some(cand) = pending.pop_front() {
            let a = run.normal_form(cand.lead)?;
            let b = run.normal_form(cand.tail)?;
            if let Some(e) = make(a, b) {
                let k = run.elems.len();
                run.elems.push(e);
                pairs.extend((0..k).map(|i| (i, k)));
            }
            continue;
        }
        let Some((i, j)) = pairs.pop_front() else {
            break;
        };
        run.tick()?;
        let (gi, gj) = (&run.elems[i], &run.elems[j]);
        if gi
            .lead
            .iter()
            .zip(&gj.lead)
            .all(|(a, b)| *a == 0 || *b == 0)
        {
            continue;
        }
        let lcm: Vec<i64> = gi
            .lead
            .iter()
            .zip(&gj.lead)
            .map(|(a, b)| *a.max(b))
            .collect();
        let m1: Vec<i64> = (0..=n).map(|k| lcm[k] - gi.lead[k] + gi.tail[k]).collect();
        let m2: Vec<i64> = (0..=n).map(|k| lcm[k] - gj.lead[k] + gj.tail[k]).collect();
        let r1 = run.normal_form(m1)?;
        let r2 = run.normal_form(m2)?;
        if let Some(e) = make(r1, r2) {
            pending.push_back(e);
        }
    }

    let mut out: Vec<RawBinomial> = run
        .elems
        .iter()
        .filter(|e| e.lead[n] == 0 && e.tail[n] == 0)
        .map(|e| (e.lead[..n].to_vec(), e.tail[..n].to_vec()))
        .collect();
    let leads: Vec<Vec<i64>> = out.iter().map(|e| e.0.clone()).collect();
    out = out
        .into_iter()
        .enumerate()
        .filter(|(k, e)| {
            !leads
                .iter()
                .enumerate()
                .any(|(j, l)| j != *k && divides(l, &e.0) && (l != &e.0 || j < *k))
        })
        .map(|(_, e)| e)
        .collect();
    out.sort();
    Ok(out)
}
