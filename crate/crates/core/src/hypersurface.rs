//! Combinatorial resolution of a toric hypersurface `x^{g+} = x^{g-}` given by
//! a linear form on the fan lattice.

use crate::error::{Error, Result};
use crate::fan::{Cone, Fan, LinearForm};
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;
use std::cmp::Ordering;

/// Order data of a cone: the positive and negative parts of the form summed
/// over the vertices, `d = min` and `omega = max` of the two.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderData {
    pub gamma_plus: BigInt,
    pub gamma_minus: BigInt,
    pub d: BigInt,
    pub omega: BigInt,
}

pub fn cone_order_data(lambda: &LinearForm, cone: &Cone) -> OrderData {
    let mut plus = BigInt::zero();
    let mut minus = BigInt::zero();
    for v in cone.vertices() {
        let g = lambda.eval(v);
        if g.is_positive() {
            plus += g;
        } else {
            minus -= g;
        }
    }
    let (d, omega) = if plus <= minus {
        (plus.clone(), minus.clone())
    } else {
        (minus.clone(), plus.clone())
    };
    OrderData {
        gamma_plus: plus,
        gamma_minus: minus,
        d,
        omega,
    }
}

/// Maximal order of the hypersurface over all orbits of the fan.
pub fn fan_max_order(lambda: &LinearForm, fan: &Fan) -> BigInt {
    fan.faces()
        .iter()
        .map(|f| cone_order_data(lambda, f).d)
        .max()
        .unwrap_or_default()
}

/// Faces of maximal order all of whose facets have smaller order. These are
/// the components of the maximal-order locus.
pub fn minimal_cones(lambda: &LinearForm, fan: &Fan) -> Vec<Cone> {
    let d = fan_max_order(lambda, fan);
    let mut out: Vec<Cone> = fan
        .faces()
        .into_iter()
        .filter(|f| cone_order_data(lambda, f).d == d)
        .filter(|f| {
            f.faces()
                .iter()
                .filter(|g| g.dim() + 1 == f.dim())
                .all(|g| cone_order_data(lambda, g).d < d)
        })
        .collect();
    out.sort();
    out
}

/// Components of the maximal-order locus of `x^{g+} = x^{g-}` on affine
/// space: subsets `D` containing every negative index with
/// `0 <= g_D < g_i` for every nonnegative `i` in `D`. The sign of `g` is
/// normalized first so that the negative part is the smaller one.
pub fn equimultiple_components(gamma: &[i64]) -> Vec<Vec<usize>> {
    let plus: i64 = gamma.iter().filter(|g| **g > 0).sum();
    let minus: i64 = -gamma.iter().filter(|g| **g < 0).sum::<i64>();
    let g: Vec<i64> = if minus <= plus {
        gamma.to_vec()
    } else {
        gamma.iter().map(|x| -x).collect()
    };
    if g.iter().all(|x| *x >= 0) {
        return Vec::new();
    }
    let neg: Vec<usize> = (0..g.len()).filter(|&i| g[i] < 0).collect();
    let nonneg: Vec<usize> = (0..g.len()).filter(|&i| g[i] >= 0).collect();
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << nonneg.len()) {
        let mut delta = neg.clone();
        delta.extend(
            (0..nonneg.len())
                .filter(|k| mask & (1 << k) != 0)
                .map(|k| nonneg[k]),
        );
        delta.sort_unstable();
        let sum: i64 = delta.iter().map(|&i| g[i]).sum();
        if sum >= 0 && delta.iter().filter(|&&i| g[i] >= 0).all(|&i| sum < g[i]) {
            out.push(delta);
        }
    }
    out.sort();
    out
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum TieBreak {
    /// Smallest `omega`, then lexicographically smallest vertex list.
    #[default]
    Omega,
    Lex,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HypersurfaceStep {
    pub d_after: i64,
    pub d_before: i64,
    pub delta_vertices: Vec<Vec<i64>>,
    pub num_maximal_cones: usize,
    pub step: usize,
}

#[derive(Clone, Debug)]
pub struct HypersurfaceResolution {
    pub fan: Fan,
    pub trace: Vec<HypersurfaceStep>,
}

fn choose_centre(lambda: &LinearForm, cands: &[Cone], tie: TieBreak) -> Cone {
    let key = |c: &Cone| cone_order_data(lambda, c).omega;
    cands
        .iter()
        .min_by(|a, b| match tie {
            TieBreak::Omega => key(a).cmp(&key(b)).then_with(|| a.cmp(b)),
            TieBreak::Lex => a.cmp(b),
        })
        .expect("nonempty candidates")
        .clone()
}

fn to_i64(x: &BigInt) -> Result<i64> {
    x.to_i64()
        .ok_or_else(|| Error::invalid("order exceeds 64 bits"))
}

pub fn default_budget(lambda: &LinearForm, fan: &Fan) -> usize {
    let worst = fan
        .maximal_cones()
        .iter()
        .map(|c| {
            let o = cone_order_data(lambda, c);
            (o.gamma_plus + o.gamma_minus)
                .to_usize()
                .unwrap_or(usize::MAX / 64)
        })
        .max()
        .unwrap_or(0);
    10 * fan.rank().max(1) * worst.max(1)
}

/// Repeatedly blows up a minimal cone of maximal order until the order is at
/// most one everywhere.
pub fn resolve_hypersurface(
    fan: &Fan,
    lambda: &LinearForm,
    tie: TieBreak,
    budget: Option<usize>,
) -> Result<HypersurfaceResolution> {
    if lambda.0.len() != fan.rank() {
        return Err(Error::invalid("linear form has wrong rank"));
    }
    if lambda.0.iter().all(|x| x.is_zero()) {
        return Err(Error::invalid("linear form is zero"));
    }
    let budget = budget.unwrap_or_else(|| default_budget(lambda, fan));
    let mut fan = fan.clone();
    let mut trace = Vec::new();
    loop {
        let d = fan_max_order(lambda, &fan);
        if d <= BigInt::from(1) {
            break;
        }
        if trace.len() >= budget {
            return Err(Error::budget(format!(
                "hypersurface resolution exceeded {budget} steps"
            )));
        }
        let cands = minimal_cones(lambda, &fan);
        let delta = choose_centre(lambda, &cands, tie);
        let next = fan.star_subdivision(&delta)?;
        check_strict_decrease(lambda, &fan, &next, &delta)?;
        let d_after = fan_max_order(lambda, &next);
        trace.push(HypersurfaceStep {
            d_after: to_i64(&d_after)?,
            d_before: to_i64(&d)?,
            delta_vertices: delta
                .vertices()
                .iter()
                .map(|v| {
                    v.to_i64()
                        .ok_or_else(|| Error::invalid("vertex exceeds 64 bits"))
                })
                .collect::<Result<_>>()?,
            num_maximal_cones: next.maximal_cones().len(),
            step: trace.len() + 1,
        });
        fan = next;
    }
    Ok(HypersurfaceResolution { fan, trace })
}

/// Every cone created inside a parent `s` has `(d, omega)` lexicographically
/// smaller than the parent.
fn check_strict_decrease(
    lambda: &LinearForm,
    before: &Fan,
    after: &Fan,
    delta: &Cone,
) -> Result<()> {
    let e = delta.barycentre();
    for sigma in before
        .maximal_cones()
        .iter()
        .filter(|s| s.contains_face(delta))
    {
        let parent = cone_order_data(lambda, sigma);
        for child in after
            .maximal_cones()
            .iter()
            .filter(|c| c.vertices().contains(&e))
        {
            let shares = child
                .vertices()
                .iter()
                .filter(|v| **v != e)
                .all(|v| sigma.vertices().contains(v));
            if !shares {
                continue;
            }
            let c = cone_order_data(lambda, child);
            let ord = c.d.cmp(&parent.d).then_with(|| c.omega.cmp(&parent.omega));
            if ord != Ordering::Less {
                return Err(Error::assertion(format!(
                    "order data of {child} did not drop below its parent {sigma}"
                )));
            }
        }
    }
    Ok(())
}
