//! Orders and equimultiple loci of binomials, Hilbert-Samuel functions from
//! diagrams, maximal Samuel strata and chart-level blowups.

use crate::binomial::{self, degree, pth_power_test, Binomial, BinomialIdeal, Diagram, Exponent, StandardBasis};
use crate::error::{Error, Result};
use crate::lattice::Lattice;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;

/// Minimal subsets of `0..n` whose weight, by every one of the given
/// exponent vectors, reaches the matching threshold.
pub fn minimal_covering_sets(candidates: &[usize], rows: &[(Exponent, i64)], fixed: &[usize]) -> Vec<Vec<usize>> {
    let k = candidates.len();
    let weight = |set: &[usize], e: &Exponent| set.iter().map(|&j| e[j]).sum::<i64>();
    let mut ok: Vec<u64> = Vec::new();
    for mask in 0u64..(1u64 << k) {
        let mut set: Vec<usize> = fixed.to_vec();
        set.extend((0..k).filter(|b| mask & (1 << b) != 0).map(|b| candidates[b]));
        if rows.iter().all(|(e, t)| weight(&set, e) >= *t) {
            ok.push(mask);
        }
    }
    let mut out: Vec<Vec<usize>> = ok
        .iter()
        .filter(|&&m| !ok.iter().any(|&s| s != m && s & m == s))
        .map(|&m| {
            let mut set: Vec<usize> = fixed.to_vec();
            set.extend((0..k).filter(|b| m & (1 << b) != 0).map(|b| candidates[b]));
            set.sort_unstable();
            set
        })
        .collect();
    out.sort();
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Locus {
    /// Components as sets of variable positions.
    Components(Vec<Vec<usize>>),
    /// The binomial is a `p^s`-th power of order `p^s`; its equimultiple locus
    /// is not contained in `{u = 0}`.
    NotApplicable { witness: String },
}

/// Equimultiple locus of `u^alpha - v^beta y^gamma` (supports of `alpha` and
/// `beta` disjoint, order `d = |alpha| <= |beta|`): `{u = 0}` together with
/// the minimal `v`-sets on which `beta` has weight at least `d`.
pub fn equimultiple_locus(b: &Binomial, characteristic: u64) -> Result<Locus> {
    if characteristic != 0 && !binomial::is_prime(characteristic) {
        return Err(Error::invalid("characteristic must be 0 or a prime"));
    }
    let b = match binomial::normalize(b, &Lattice::zero(b.num_y())) {
        binomial::Normalized::Binomial(n) => n,
        _ => return Err(Error::invalid("binomial is constant")),
    };
    let d = b.order();
    if d < 2 {
        return Err(Error::invalid("order below 2: the locus is handled by solved variables"));
    }
    if characteristic != 0 && pth_power_test(&b, characteristic, d as u64) {
        return Ok(Locus::NotApplicable {
            witness: format!(
                "order {d} binomial is a power of exponent {d} in characteristic {characteristic}; its equimultiple locus is not contained in {{u = 0}}"
            ),
        });
    }
    let u: Vec<usize> = (0..b.num_x()).filter(|&j| b.alpha[j] > 0).collect();
    let v: Vec<usize> = (0..b.num_x()).filter(|&j| b.beta[j] > 0).collect();
    Ok(Locus::Components(minimal_covering_sets(&v, &[(b.beta.clone(), d)], &u)))
}

fn binom(n: i64, k: usize) -> BigInt {
    if n < k as i64 || n < 0 {
        return BigInt::zero();
    }
    let mut r = BigInt::one();
    for i in 0..k {
        r = r * BigInt::from(n - i as i64) / BigInt::from(i as i64 + 1);
    }
    r
}

/// Hilbert-Samuel function of a monomial diagram in `embedding_dim`
/// variables: `l` maps to the number of exponents of degree at most `l`
/// outside the staircase.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertSamuel {
    pub embedding_dim: usize,
    pub diagram: Diagram,
}

impl HilbertSamuel {
    pub fn new(embedding_dim: usize, diagram: Diagram) -> Self {
        debug_assert!(diagram.vertices().iter().all(|v| v.len() == embedding_dim));
        HilbertSamuel { embedding_dim, diagram }
    }

    /// At the distinguished point of a standard basis: the `x` diagram padded
    /// by the `y` directions not cut out by the torus lattice.
    pub fn from_basis(sb: &StandardBasis) -> Self {
        let free = sb.num_y() - sb.torus.rank();
        let d = sb.diagram().padded(free, 0);
        HilbertSamuel::new(sb.num_x() + free, d)
    }

    /// Degree of the lcm of all vertices: past it the function is a
    /// polynomial in `l`.
    pub fn stable_from(&self) -> i64 {
        let q = self.embedding_dim;
        (0..q)
            .map(|j| self.diagram.vertices().iter().map(|v| v[j]).max().unwrap_or(0))
            .sum()
    }

    /// Inclusion-exclusion over subsets of vertices.
    pub fn eval(&self, l: i64) -> BigInt {
        let q = self.embedding_dim;
        let vs = self.diagram.vertices();
        let mut total = BigInt::zero();
        let mut stack: Vec<(usize, Exponent, bool)> = vec![(0, vec![0; q], false)];
        while let Some((start, lcm, odd)) = stack.pop() {
            let term = binom(q as i64 + l - degree(&lcm), q);
            if odd {
                total -= term;
            } else {
                total += term;
            }
            for (i, v) in vs.iter().enumerate().skip(start) {
                let next: Exponent = lcm.iter().zip(v).map(|(a, b)| *a.max(b)).collect();
                if degree(&next) <= l {
                    stack.push((i + 1, next, !odd));
                }
            }
        }
        total
    }
}

/// Values of `h1 - h2` at `l` in `0..=until`.
fn differences(h1: &HilbertSamuel, h2: &HilbertSamuel, until: i64) -> Vec<BigInt> {
    (0..=until).map(|l| h1.eval(l) - h2.eval(l)).collect()
}

/// Coefficients (constant first) of the polynomial through `values` at
/// `start, start+1, ...`.
fn interpolate(start: i64, values: &[BigInt]) -> Vec<BigRational> {
    let n = values.len();
    // Newton forward differences, then expand in powers of l.
    let mut diffs: Vec<BigRational> = values.iter().map(|v| BigRational::from_integer(v.clone())).collect();
    let mut newton = Vec::with_capacity(n);
    for k in 0..n {
        newton.push(diffs[0].clone());
        diffs = diffs.windows(2).map(|w| &w[1] - &w[0]).collect();
        let _ = k;
    }
    // p(l) = sum_k newton[k] * C(l - start, k)
    let mut coeffs = vec![BigRational::zero(); n];
    let mut basis = vec![BigRational::one()]; // coefficients of prod_{i<k} (l - start - i)
    let mut fact = BigRational::one();
    for (k, c) in newton.iter().enumerate() {
        if k > 0 {
            fact *= BigRational::from_integer(BigInt::from(k as i64));
            let shift = BigRational::from_integer(BigInt::from(start + k as i64 - 1));
            let mut next = vec![BigRational::zero(); basis.len() + 1];
            for (i, b) in basis.iter().enumerate() {
                next[i + 1] += b;
                next[i] -= b * &shift;
            }
            basis = next;
        }
        for (i, b) in basis.iter().enumerate() {
            coeffs[i] += c * b / &fact;
        }
    }
    while coeffs.len() > 1 && coeffs.last().is_some_and(|c| c.is_zero()) {
        coeffs.pop();
    }
    coeffs
}

/// Exact pointwise comparison. `None` means incomparable.
///
/// Past the larger of the two lcm degrees both functions are polynomials of
/// degree at most `q`, so their difference is determined by `q + 1` values
/// there. Beyond the Cauchy bound on its roots the difference has the sign
/// of its leading coefficient, so checking values up to that bound decides
/// the comparison for every `l`.
pub fn hs_compare(h1: &HilbertSamuel, h2: &HilbertSamuel) -> Option<Ordering> {
    let q = h1.embedding_dim.max(h2.embedding_dim) as i64;
    let start = h1.stable_from().max(h2.stable_from());
    let tail: Vec<BigInt> = (start..=start + q).map(|l| h1.eval(l) - h2.eval(l)).collect();
    let coeffs = interpolate(start, &tail);
    let lead = coeffs.last().cloned().unwrap_or_else(BigRational::zero);
    let mut until = start + q;
    if !lead.is_zero() {
        let bound = coeffs[..coeffs.len() - 1]
            .iter()
            .map(|c| (c / &lead).abs())
            .fold(BigRational::zero(), |a, b| if b > a { b } else { a });
        let cauchy = (bound + BigRational::one()).ceil().to_integer().to_i64().unwrap_or(i64::MAX / 2);
        until = until.max(cauchy + 1);
    }
    let mut vals = differences(h1, h2, until);
    vals.push(if lead.is_positive() {
        BigInt::one()
    } else if lead.is_negative() {
        -BigInt::one()
    } else {
        BigInt::zero()
    });
    let any_pos = vals.iter().any(|v| v.is_positive());
    let any_neg = vals.iter().any(|v| v.is_negative());
    match (any_pos, any_neg) {
        (false, false) => Some(Ordering::Equal),
        (true, false) => Some(Ordering::Greater),
        (false, true) => Some(Ordering::Less),
        (true, true) => None,
    }
}

/// Total order refining [`hs_compare`]: lexicographic on the value
/// sequence. Two functions equal on `0..=start+q` are equal everywhere.
pub fn hs_total_cmp(h1: &HilbertSamuel, h2: &HilbertSamuel) -> Ordering {
    let q = h1.embedding_dim.max(h2.embedding_dim) as i64;
    let until = h1.stable_from().max(h2.stable_from()) + q;
    for l in 0..=until {
        match h1.eval(l).cmp(&h2.eval(l)) {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    Ordering::Equal
}

/// Role of a chart variable at the distinguished point.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Role {
    /// Occurs in an initial exponent of order at least two.
    Essential,
    /// Initial exponent of an order-one element; eliminated on the smooth
    /// subvariety `N`.
    Solved,
    /// Remaining coordinate of `N` vanishing at the point.
    Free,
    /// Vanishes nowhere on `X`.
    Unit,
}

/// A chart of an affine toric variety: the lattice of relations among the
/// chart variables and the standard basis at the distinguished point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChartPresentation {
    pub names: Vec<String>,
    pub lattice: Lattice,
    pub basis: StandardBasis,
    /// Role of each chart variable.
    pub roles: Vec<Role>,
    /// Exceptional chart variables in order of birth.
    pub exceptional: Vec<usize>,
}

impl ChartPresentation {
    /// `x_vars` are the variables that may vanish at the point; the rest are
    /// units.
    pub fn from_lattice(names: Vec<String>, lattice: Lattice, x_vars: &[usize]) -> Result<Self> {
        let basis = binomial::standard_basis_of_lattice(&lattice, x_vars, binomial::DEFAULT_BUDGET)?;
        Ok(Self::from_basis(names, lattice, basis, Vec::new()))
    }

    pub fn from_ideal(ideal: &BinomialIdeal) -> Result<Self> {
        let xs: Vec<usize> = (0..ideal.num_x).collect();
        Self::from_lattice(ideal.variable_names(), ideal.relation_lattice(), &xs)
    }

    fn from_basis(names: Vec<String>, lattice: Lattice, basis: StandardBasis, exceptional: Vec<usize>) -> Self {
        let mut roles = vec![Role::Unit; lattice.dim()];
        for &v in &basis.x_vars {
            roles[v] = Role::Free;
        }
        for f in &basis.elements {
            let touched: Vec<usize> = (0..f.num_x()).filter(|&k| f.alpha[k] > 0).collect();
            if f.order() == 1 {
                roles[basis.x_vars[touched[0]]] = Role::Solved;
            } else {
                for k in touched {
                    roles[basis.x_vars[k]] = Role::Essential;
                }
            }
        }
        ChartPresentation { names, lattice, basis, roles, exceptional }
    }

    pub fn num_vars(&self) -> usize {
        self.lattice.dim()
    }

    pub fn vars_with(&self, role: Role) -> Vec<usize> {
        (0..self.num_vars()).filter(|&v| self.roles[v] == role).collect()
    }

    pub fn is_smooth(&self) -> bool {
        self.basis.is_smooth()
    }

    pub fn hilbert_samuel(&self) -> HilbertSamuel {
        HilbertSamuel::from_basis(&self.basis)
    }

    /// Position of a chart variable among the basis x-variables.
    pub fn x_pos(&self, v: usize) -> Option<usize> {
        self.basis.x_vars.iter().position(|&x| x == v)
    }

    /// Exponent of `e` (over basis x-positions) spread to chart variables.
    pub fn spread(&self, e: &[i64]) -> Exponent {
        let mut out = vec![0; self.num_vars()];
        for (k, &v) in self.basis.x_vars.iter().enumerate() {
            out[v] = e[k];
        }
        out
    }

    /// Elements of order at least two, with `alpha` and `beta` over chart
    /// variables.
    pub fn singular_elements(&self) -> Vec<(Exponent, Exponent)> {
        self.basis
            .elements
            .iter()
            .filter(|f| f.order() >= 2)
            .map(|f| (self.spread(&f.alpha), self.spread(&f.beta)))
            .collect()
    }

    /// For each solved variable, the tail `beta` of its element over chart
    /// variables.
    pub fn solved_tails(&self) -> Vec<(usize, Exponent)> {
        self.basis
            .elements
            .iter()
            .filter(|f| f.order() == 1)
            .map(|f| {
                let a = self.spread(&f.alpha);
                let v = a.iter().position(|&x| x == 1).expect("order one");
                (v, self.spread(&f.beta))
            })
            .collect()
    }

    /// Smallest coordinate subspace whose trace on `X` is `{x_delta = 0} ∩ N`:
    /// `delta` plus every solved variable whose tail meets `delta`.
    pub fn orbit_closure(&self, delta: &[usize]) -> Vec<usize> {
        let mut out: Vec<usize> = delta.to_vec();
        for (v, tail) in self.solved_tails() {
            if delta.iter().any(|&j| tail[j] > 0) && !out.contains(&v) {
                out.push(v);
            }
        }
        out.sort_unstable();
        out
    }

    /// Components of the maximal Samuel stratum, as sets of chart variables
    /// of `N` (essential and free): minimal sets containing every essential
    /// variable on which every singular tail has weight at least the order.
    pub fn samuel_stratum_components(&self) -> Vec<Vec<usize>> {
        let rows: Vec<(Exponent, i64)> = self
            .singular_elements()
            .into_iter()
            .map(|(a, b)| (b, degree(&a)))
            .collect();
        minimal_covering_sets(&self.vars_with(Role::Free), &rows, &self.vars_with(Role::Essential))
    }
}

/// Exponent map of the chart-`i` substitution `x_j -> x_i x_j` for `j` in
/// `delta`: the `i`-th coordinate becomes the `delta`-degree.
pub fn substitute(e: &[i64], delta: &[usize], i: usize) -> Exponent {
    let mut out = e.to_vec();
    out[i] = delta.iter().map(|&j| e[j]).sum();
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChartBlowup {
    pub chart: ChartPresentation,
    /// Substituted elements divided by the exceptional variable to their
    /// order along the centre, over chart variables (`alpha`, `beta`,
    /// full-variable tail exponent).
    pub predicted: Vec<(Exponent, Exponent)>,
    /// The predicted elements are exactly the recomputed standard basis.
    pub basis_transformed: bool,
}

/// Blows up the centre `delta` (chart variables) and keeps chart `i`.
pub fn chart_blowup(cp: &ChartPresentation, delta: &[usize], i: usize) -> Result<ChartBlowup> {
    let mut delta: Vec<usize> = delta.to_vec();
    delta.sort_unstable();
    delta.dedup();
    if !delta.contains(&i) {
        return Err(Error::invalid("chart index is not in the centre"));
    }
    if delta.iter().any(|&v| v >= cp.num_vars() || cp.roles[v] == Role::Unit) {
        return Err(Error::invalid("centre contains a unit variable"));
    }
    let on_n: Vec<usize> = delta.iter().copied().filter(|&v| cp.roles[v] != Role::Solved).collect();
    if cp.orbit_closure(&on_n) != delta {
        return Err(Error::invalid("centre is not the smallest orbit closure of its trace on N"));
    }
    if !cp.samuel_stratum_components().iter().any(|c| c.iter().all(|v| on_n.contains(v))) {
        return Err(Error::invalid("centre is not inside the maximal Samuel stratum"));
    }
    let rows: Vec<Vec<i64>> = cp
        .lattice
        .basis_i64()
        .ok_or_else(|| Error::invalid("exponent exceeds 64 bits"))?
        .iter()
        .map(|r| substitute(r, &delta, i))
        .collect();
    let lattice = Lattice::from_i64(cp.num_vars(), &rows);
    let candidates: Vec<usize> = cp.basis.x_vars.clone();
    let basis = binomial::standard_basis_of_lattice(&lattice, &candidates, binomial::DEFAULT_BUDGET)?;
    let mut exceptional: Vec<usize> = cp.exceptional.iter().copied().filter(|&v| v != i).collect();
    exceptional.push(i);
    let chart = ChartPresentation::from_basis(cp.names.clone(), lattice, basis, exceptional);

    let mut predicted = Vec::new();
    for f in &cp.basis.elements {
        let a = substitute(&cp.spread(&f.alpha), &delta, i);
        let b = substitute(&cp.spread(&f.beta), &delta, i);
        let m = a[i].min(b[i]);
        let mut a = a;
        let mut b = b;
        a[i] -= m;
        b[i] -= m;
        predicted.push((a, b));
    }
    let recomputed: Vec<(Exponent, Exponent)> = chart
        .basis
        .elements
        .iter()
        .map(|f| (chart.spread(&f.alpha), chart.spread(&f.beta)))
        .collect();
    let mut p_sorted = predicted.clone();
    p_sorted.sort();
    let mut r_sorted = recomputed;
    r_sorted.sort();
    let basis_transformed = chart.basis.x_vars == cp.basis.x_vars && p_sorted == r_sorted;
    Ok(ChartBlowup { chart, predicted, basis_transformed })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BlowupVerdict {
    Decreased,
    EqualWithTransformedBasis,
}

/// The Hilbert-Samuel function never increases along a permissible blowup,
/// and when it stays equal the transformed basis is the new standard basis
/// with the same orders.
pub fn hs_after_blowup_check(before: &ChartPresentation, after: &ChartBlowup) -> Result<BlowupVerdict> {
    let h0 = before.hilbert_samuel();
    let h1 = after.chart.hilbert_samuel();
    match hs_compare(&h1, &h0) {
        Some(Ordering::Less) => Ok(BlowupVerdict::Decreased),
        Some(Ordering::Equal) => {
            let orders_before: Vec<i64> = before.basis.elements.iter().map(|f| f.order()).collect();
            let mut ob = orders_before;
            ob.sort_unstable();
            let mut oa: Vec<i64> = after.chart.basis.elements.iter().map(|f| f.order()).collect();
            oa.sort_unstable();
            if ob != oa || !after.basis_transformed {
                return Err(Error::assertion(
                    "Hilbert-Samuel function unchanged but the transformed basis is not the new standard basis",
                ));
            }
            Ok(BlowupVerdict::EqualWithTransformedBasis)
        }
        _ => Err(Error::assertion("Hilbert-Samuel function increased along a blowup")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn b(alpha: &[i64], beta: &[i64]) -> Binomial {
        Binomial::new(alpha.to_vec(), beta.to_vec(), vec![])
    }

    fn hs(q: usize, vs: &[&[i64]]) -> HilbertSamuel {
        HilbertSamuel::new(q, Diagram::from_exponents(q, vs.iter().map(|v| v.to_vec())))
    }

    #[test]
    fn equimultiple_examples() {
        // u1 u2 - v1^3
        let l = equimultiple_locus(&b(&[1, 1, 0], &[0, 0, 3]), 0).unwrap();
        assert_eq!(l, Locus::Components(vec![vec![0, 1, 2]]));
        // u^2 - v^4 in characteristic 2
        assert!(matches!(equimultiple_locus(&b(&[2, 0], &[0, 4]), 2).unwrap(), Locus::NotApplicable { .. }));
        // u^2 - v1 v2
        let l = equimultiple_locus(&b(&[2, 0, 0], &[0, 1, 1]), 0).unwrap();
        assert_eq!(l, Locus::Components(vec![vec![0, 1, 2]]));
        assert!(equimultiple_locus(&b(&[1, 0], &[0, 2]), 0).is_err());
    }

    #[test]
    fn evaluation_examples() {
        assert_eq!(hs(2, &[]).eval(3), BigInt::from(10));
        let p = hs(2, &[&[0, 2]]);
        assert_eq!(p.eval(1), BigInt::from(3));
        assert_eq!(p.eval(2), BigInt::from(5));
        assert_eq!(p.eval(3), BigInt::from(7));
    }

    #[test]
    fn comparison_examples() {
        let a = hs(2, &[&[2, 0]]);
        assert_eq!(hs_compare(&a, &a), Some(Ordering::Equal));
        assert_eq!(hs_compare(&hs(2, &[]), &a), Some(Ordering::Greater));
        assert_eq!(hs_compare(&a, &hs(2, &[&[0, 2]])), Some(Ordering::Equal));
        // Two coordinate lines versus a double point: incomparable pattern is
        // possible only across dimensions; a line is below the plane.
        assert_eq!(hs_compare(&hs(2, &[&[1, 0]]), &hs(2, &[])), Some(Ordering::Less));
    }

    fn brute(q: usize, vs: &[Exponent], l: i64) -> i64 {
        fn rec(q: usize, left: i64, cur: &mut Vec<i64>, vs: &[Exponent], out: &mut i64) {
            if cur.len() == q {
                if !vs.iter().any(|v| v.iter().zip(cur.iter()).all(|(a, b)| a <= b)) {
                    *out += 1;
                }
                return;
            }
            for k in 0..=left {
                cur.push(k);
                rec(q, left - k, cur, vs, out);
                cur.pop();
            }
        }
        let mut out = 0;
        rec(q, l, &mut Vec::new(), vs, &mut out);
        out
    }

    fn diagram_strategy() -> impl Strategy<Value = (usize, Vec<Exponent>)> {
        (1usize..=3).prop_flat_map(|q| (Just(q), proptest::collection::vec(proptest::collection::vec(0i64..=4, q), 0..4)))
    }

    proptest! {
        #[test]
        fn evaluation_matches_brute_force((q, vs) in diagram_strategy(), l in 0i64..12) {
            let h = HilbertSamuel::new(q, Diagram::from_exponents(q, vs.clone()));
            prop_assert_eq!(h.eval(l), BigInt::from(brute(q, h.diagram.vertices(), l)));
        }

        #[test]
        fn comparison_matches_long_scan((q, v1) in diagram_strategy(), v2 in proptest::collection::vec(proptest::collection::vec(0i64..=4, 3), 0..4)) {
            let v2: Vec<Exponent> = v2.into_iter().map(|v| v[..q].to_vec()).collect();
            let h1 = HilbertSamuel::new(q, Diagram::from_exponents(q, v1));
            let h2 = HilbertSamuel::new(q, Diagram::from_exponents(q, v2));
            let vals: Vec<BigInt> = (0..=50).map(|l| h1.eval(l) - h2.eval(l)).collect();
            let pos = vals.iter().any(|v| v.is_positive());
            let neg = vals.iter().any(|v| v.is_negative());
            let scan = match (pos, neg) {
                (false, false) => Some(Ordering::Equal),
                (true, false) => Some(Ordering::Greater),
                (false, true) => Some(Ordering::Less),
                _ => None,
            };
            prop_assert_eq!(hs_compare(&h1, &h2), scan);
            if let Some(o) = scan {
                prop_assert_eq!(hs_total_cmp(&h1, &h2), o);
            }
        }

        #[test]
        fn stratum_components_are_an_antichain(e in proptest::collection::vec(0i64..=3, 4), d in 2i64..=3) {
            // x1^d - x2^e2 x3^e3 x4^e4 style singular element
            let mut beta = e.clone();
            beta[0] = 0;
            prop_assume!(beta.iter().sum::<i64>() > d);
            let ideal = BinomialIdeal::new(4, 0, vec![Binomial::new(vec![d, 0, 0, 0], beta.clone(), vec![])]).unwrap();
            let cp = ChartPresentation::from_ideal(&ideal).unwrap();
            let comps = cp.samuel_stratum_components();
            for (i, a) in comps.iter().enumerate() {
                for (j, c) in comps.iter().enumerate() {
                    if i != j { prop_assert!(!a.iter().all(|v| c.contains(v))); }
                }
            }
        }
    }

    fn example_1_5() -> ChartPresentation {
        // variables u, v, w, x, y, z: w^2 - u v, z - x y
        let mut ideal = BinomialIdeal::new(
            6,
            0,
            vec![b(&[0, 0, 2, 0, 0, 0], &[1, 1, 0, 0, 0, 0]), b(&[0, 0, 0, 0, 0, 1], &[0, 0, 0, 1, 1, 0])],
        )
        .unwrap();
        ideal.x_names = Some(["u", "v", "w", "x", "y", "z"].iter().map(|s| s.to_string()).collect());
        ChartPresentation::from_ideal(&ideal).unwrap()
    }

    #[test]
    fn roles_and_stratum_of_two_binomials() {
        let cp = example_1_5();
        assert_eq!(cp.vars_with(Role::Essential), vec![2]);
        assert_eq!(cp.vars_with(Role::Solved), vec![5]);
        assert_eq!(cp.samuel_stratum_components(), vec![vec![0, 1, 2]]);
        assert_eq!(cp.orbit_closure(&[0, 1, 2]), vec![0, 1, 2]);
        assert_eq!(cp.orbit_closure(&[3]), vec![3, 5]);
    }

    #[test]
    fn single_blowup_of_two_binomials_is_smooth() {
        let cp = example_1_5();
        for i in [0, 1, 2] {
            let up = chart_blowup(&cp, &[0, 1, 2], i).unwrap();
            assert!(up.chart.is_smooth(), "chart {i}");
            assert_eq!(hs_after_blowup_check(&cp, &up).unwrap(), BlowupVerdict::Decreased);
        }
        assert!(chart_blowup(&cp, &[0, 1], 0).is_err());
    }

    #[test]
    fn smooth_chart_has_one_full_component() {
        let ideal = BinomialIdeal::new(3, 0, vec![b(&[0, 0, 1], &[1, 1, 0])]).unwrap();
        let cp = ChartPresentation::from_ideal(&ideal).unwrap();
        assert_eq!(cp.samuel_stratum_components(), vec![Vec::<usize>::new()]);
    }
}
