//! Marked monomial ideals `(H, e)` on a maximal contact subspace `P`, the
//! resolution invariant and the local choice of centre.
//!
//! Generators are exponent vectors over chart variables and never involve
//! the variables defining `P`. A marked ideal and its scaling `(H^k, ke)`
//! (every generator raised to `k`) have the same supports, transforms,
//! companions and invariant ratios, so marked ideals are kept reduced by the
//! gcd of all exponents and the mark.

use crate::binomial::{degree, Exponent};
use crate::error::{Error, Result};
use crate::samuel::{minimal_covering_sets, ChartPresentation, HilbertSamuel, Role};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use std::cmp::Ordering;
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MarkedIdeal {
    pub num_vars: usize,
    /// Variables whose vanishing defines `P` inside `N`, sorted.
    pub p_vars: Vec<usize>,
    /// `None` is the zero ideal.
    pub generators: Option<Vec<Exponent>>,
    pub mark: i64,
}

fn overflow() -> Error {
    Error::budget("marked ideal exponent overflow")
}

fn scale(g: &[i64], k: i64) -> Result<Exponent> {
    g.iter().map(|&x| x.checked_mul(k).ok_or_else(overflow)).collect()
}

impl MarkedIdeal {
    pub fn new(num_vars: usize, p_vars: Vec<usize>, generators: Vec<Exponent>, mark: i64) -> Result<Self> {
        if mark < 1 {
            return Err(Error::invalid("mark must be positive"));
        }
        let mut p_vars = p_vars;
        p_vars.sort_unstable();
        p_vars.dedup();
        for g in &generators {
            if g.len() != num_vars || g.iter().any(|&x| x < 0) {
                return Err(Error::invalid("generator is not an exponent vector"));
            }
            if p_vars.iter().any(|&p| g[p] != 0) {
                return Err(Error::invalid("generator involves a variable defining P"));
            }
        }
        if generators.is_empty() {
            return Err(Error::invalid("empty generator list; use the zero ideal"));
        }
        Ok(Self::reduced(num_vars, p_vars, Some(generators), mark))
    }

    pub fn zero(num_vars: usize, mut p_vars: Vec<usize>) -> Self {
        p_vars.sort_unstable();
        p_vars.dedup();
        MarkedIdeal { num_vars, p_vars, generators: None, mark: 1 }
    }

    fn reduced(num_vars: usize, p_vars: Vec<usize>, generators: Option<Vec<Exponent>>, mark: i64) -> Self {
        let Some(gens) = generators else {
            return Self::zero(num_vars, p_vars);
        };
        let mut gens: Vec<Exponent> = gens;
        gens.sort();
        gens.dedup();
        let minimal: Vec<Exponent> = gens
            .iter()
            .filter(|g| !gens.iter().any(|h| h != *g && h.iter().zip(g.iter()).all(|(a, b)| a <= b)))
            .cloned()
            .collect();
        let g = minimal.iter().flatten().fold(mark, |acc, &x| acc.gcd(&x));
        let (minimal, mark) = if g > 1 {
            (minimal.iter().map(|v| v.iter().map(|x| x / g).collect()).collect(), mark / g)
        } else {
            (minimal, mark)
        };
        MarkedIdeal { num_vars, p_vars, generators: Some(minimal), mark }
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_none()
    }

    /// Order at the distinguished point: least generator degree.
    pub fn order(&self) -> Option<i64> {
        self.generators.as_ref().map(|g| g.iter().map(|v| degree(v)).min().unwrap_or(0))
    }

    pub fn has_maximal_order(&self) -> bool {
        self.order() == Some(self.mark)
    }

    /// Minimal variable sets (joined with `P`'s variables) on which every
    /// generator has weight at least the mark. The zero ideal is supported
    /// on all of `P`.
    pub fn support_components(&self) -> Vec<Vec<usize>> {
        let Some(gens) = &self.generators else {
            return vec![self.p_vars.clone()];
        };
        let mut cand: Vec<usize> = (0..self.num_vars).filter(|&j| gens.iter().any(|g| g[j] > 0)).collect();
        cand.retain(|j| !self.p_vars.contains(j));
        let rows: Vec<(Exponent, i64)> = gens.iter().map(|g| (g.clone(), self.mark)).collect();
        minimal_covering_sets(&cand, &rows, &self.p_vars)
    }

    /// Transform by the blowup with centre `delta` in chart `i`: substitute
    /// `x_j -> x_i x_j` for `j` in `delta` and divide by `x_i^e`.
    pub fn transform(&self, delta: &[usize], i: usize) -> Result<MarkedIdeal> {
        if !delta.contains(&i) {
            return Err(Error::invalid("chart index is not in the centre"));
        }
        if self.p_vars.contains(&i) {
            return Err(Error::invalid("P does not meet this chart"));
        }
        if !self.p_vars.iter().all(|p| delta.contains(p)) {
            return Err(Error::invalid("centre is not inside P"));
        }
        let Some(gens) = &self.generators else {
            return Ok(self.clone());
        };
        let mut out = Vec::with_capacity(gens.len());
        for g in gens {
            let mut h = g.clone();
            h[i] = delta.iter().map(|&j| g[j]).sum::<i64>() - self.mark;
            if h[i] < 0 {
                return Err(Error::invalid("centre is not permissible: negative exponent after transform"));
            }
            out.push(h);
        }
        Ok(Self::reduced(self.num_vars, self.p_vars.clone(), Some(out), self.mark))
    }

    /// `(H1^{e2} + H2^{e1}, e1 e2)`. A sum involving the zero ideal is the
    /// zero ideal.
    pub fn sum(&self, other: &MarkedIdeal) -> Result<MarkedIdeal> {
        if self.num_vars != other.num_vars || self.p_vars != other.p_vars {
            return Err(Error::invalid("marked ideals live on different subspaces"));
        }
        let (Some(g1), Some(g2)) = (&self.generators, &other.generators) else {
            return Ok(Self::zero(self.num_vars, self.p_vars.clone()));
        };
        let mut gens = Vec::with_capacity(g1.len() + g2.len());
        for g in g1 {
            gens.push(scale(g, other.mark)?);
        }
        for g in g2 {
            gens.push(scale(g, self.mark)?);
        }
        let mark = self.mark.checked_mul(other.mark).ok_or_else(overflow)?;
        Ok(Self::reduced(self.num_vars, self.p_vars.clone(), Some(gens), mark))
    }
}

impl fmt::Display for MarkedIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.generators {
            None => write!(f, "(0; P={:?})", self.p_vars),
            Some(g) => write!(f, "({:?}, {}; P={:?})", g, self.mark, self.p_vars),
        }
    }
}

/// What the recursion needs to know about the chart: which variables are
/// solved on `N` (and by what monomial) and which variables are members of
/// the ordered set of divisors `E` used for `D(H)` and `J`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChartContext {
    pub num_vars: usize,
    pub solved_tails: Vec<(usize, Exponent)>,
    /// Position in `E` of the divisor `{x_v = 0}`, if it is one.
    pub e_ids: Vec<Option<usize>>,
}

impl ChartContext {
    /// Affine space with no solved variables.
    pub fn plain(e_ids: Vec<Option<usize>>) -> Self {
        ChartContext { num_vars: e_ids.len(), solved_tails: Vec::new(), e_ids }
    }

    pub fn from_chart(cp: &ChartPresentation, e_ids: Vec<Option<usize>>) -> Self {
        ChartContext { num_vars: cp.num_vars(), solved_tails: cp.solved_tails(), e_ids }
    }

    /// Smallest orbit closure cutting `{x_vars = 0}` out of `N`.
    pub fn closure(&self, vars: &[usize]) -> Vec<usize> {
        let mut out = vars.to_vec();
        for (v, tail) in &self.solved_tails {
            if vars.iter().any(|&j| tail[j] > 0) && !out.contains(v) {
                out.push(*v);
            }
        }
        out.sort_unstable();
        out
    }

    /// Members of `E` containing the orbit closure of `vars`.
    pub fn e_set(&self, vars: &[usize]) -> Vec<usize> {
        let mut out: Vec<usize> = self.closure(vars).iter().filter_map(|&v| self.e_ids[v]).collect();
        out.sort_unstable();
        out
    }
}

/// Order on subsets of `E`: compare the indicator sequences
/// lexicographically, so the set holding the first differing member wins.
pub fn cmp_e_sets(a: &[usize], b: &[usize]) -> Ordering {
    let first = a.iter().filter(|x| !b.contains(x)).chain(b.iter().filter(|x| !a.contains(x))).min();
    match first {
        None => Ordering::Equal,
        Some(k) if a.contains(k) => Ordering::Greater,
        Some(_) => Ordering::Less,
    }
}

/// `H = D(H) Q(H)`: `D` is the gcd of the generators restricted to members
/// of `E`; `nu` is the order of `Q` at the distinguished point.
pub fn factor_dq(h: &MarkedIdeal, ctx: &ChartContext) -> Result<(Exponent, MarkedIdeal, i64)> {
    let gens = h.generators.as_ref().ok_or_else(|| Error::invalid("zero ideal has no factorization"))?;
    let d: Exponent = (0..h.num_vars)
        .map(|j| if ctx.e_ids[j].is_some() { gens.iter().map(|g| g[j]).min().unwrap_or(0) } else { 0 })
        .collect();
    let q: Vec<Exponent> = gens.iter().map(|g| g.iter().zip(&d).map(|(a, b)| a - b).collect()).collect();
    let nu = q.iter().map(|g| degree(g)).min().unwrap_or(0);
    let qm = MarkedIdeal::reduced(h.num_vars, h.p_vars.clone(), Some(q), nu.max(1));
    Ok((d, qm, nu))
}

/// Companion ideal: `(Q, nu) + (D, e - nu)` if `nu < e`, else `(Q, nu)`.
pub fn companion(h: &MarkedIdeal, ctx: &ChartContext) -> Result<MarkedIdeal> {
    let (d, q, nu) = factor_dq(h, ctx)?;
    if nu == 0 {
        return Err(Error::invalid("monomial case has no companion ideal"));
    }
    let g = if nu >= h.mark {
        q
    } else {
        let dm = MarkedIdeal::reduced(h.num_vars, h.p_vars.clone(), Some(vec![d]), h.mark - nu);
        q.sum(&dm)?
    };
    if !g.has_maximal_order() {
        return Err(Error::assertion(format!("companion {g} of {h} is not of maximal order")));
    }
    Ok(g)
}

/// Passage to the maximal contact subspace `Q = P ∩ {z' = 0}`, `z'` the
/// variables of generators of degree `e`. Terms whose mark `e - |eta|` is
/// not positive impose no condition and are dropped; if all drop the result
/// is the zero ideal on `Q`.
pub fn descent(h: &MarkedIdeal) -> Result<MarkedIdeal> {
    if !h.has_maximal_order() {
        return Err(Error::invalid("descent needs a marked ideal of maximal order"));
    }
    let gens = h.generators.as_ref().expect("maximal order implies nonzero");
    let z: Vec<usize> = (0..h.num_vars)
        .filter(|&j| gens.iter().any(|g| degree(g) == h.mark && g[j] > 0))
        .collect();
    descent_along(h, &z)
}

/// Coefficient ideal of `h` on `P ∩ {z = 0}`.
pub fn descent_along(h: &MarkedIdeal, z: &[usize]) -> Result<MarkedIdeal> {
    let gens = h.generators.as_ref().ok_or_else(|| Error::invalid("zero ideal has no coefficient ideal"))?;
    if z.is_empty() || z.iter().any(|v| h.p_vars.contains(v)) {
        return Err(Error::invalid("maximal contact variables must be new coordinates of P"));
    }
    let e = h.mark;
    let mut q_vars = h.p_vars.clone();
    q_vars.extend(z);
    q_vars.sort_unstable();
    let mut acc: Option<MarkedIdeal> = None;
    for g in gens {
        let eta: i64 = z.iter().map(|&j| g[j]).sum();
        let m = e - eta;
        if m <= 0 {
            continue;
        }
        let mut zeta = g.clone();
        for &j in z {
            zeta[j] = 0;
        }
        let term = MarkedIdeal::reduced(h.num_vars, q_vars.clone(), Some(vec![zeta]), m);
        acc = Some(match acc {
            None => term,
            Some(a) => a.sum(&term)?,
        });
    }
    Ok(acc.unwrap_or_else(|| MarkedIdeal::zero(h.num_vars, q_vars)))
}

/// One entry after the head of the invariant.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum InvEntry {
    Zero,
    Rat(BigRational),
    Infinity,
}

impl InvEntry {
    pub fn ratio(a: i64, b: i64) -> Self {
        InvEntry::Rat(BigRational::new(BigInt::from(a), BigInt::from(b)))
    }

    pub fn one() -> Self {
        Self::ratio(1, 1)
    }
}

impl fmt::Display for InvEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InvEntry::Zero => write!(f, "0"),
            InvEntry::Infinity => write!(f, "inf"),
            InvEntry::Rat(r) => write!(f, "{r}"),
        }
    }
}

/// Invariant of a marked ideal at the distinguished point with the centre
/// it prescribes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalData {
    pub tail: Vec<InvEntry>,
    /// Defined when the tail ends in `0`.
    pub mu: Option<BigRational>,
    /// Sorted positions in `E`.
    pub j_set: Vec<usize>,
    /// Chart variables cutting out the centre.
    pub centre: Vec<usize>,
}

/// Recursion on the dimension of `P`. The zero ideal gives `inf`, the
/// monomial case `0` with `mu = ord/e`. Otherwise the entry `nu/e` is
/// followed by the invariant of the coefficient ideal of the companion
/// ideal on one maximal contact hypersurface `{x_v = 0}`, `x_v` a variable of
/// an order-`nu` generator of `Q(H)`. Variables with a pure power among those
/// generators come first, then variables outside `E`, then `E` by position.
/// Descending one hypersurface at a time
/// lets every intermediate level be checked for the monomial case; when none
/// is monomial and every `D` is trivial the entries are the `1`s of a
/// codimension-`c` descent.
pub fn analyze(h: &MarkedIdeal, ctx: &ChartContext) -> Result<LocalData> {
    let Some(_) = &h.generators else {
        return Ok(LocalData { tail: vec![InvEntry::Infinity], mu: None, j_set: Vec::new(), centre: ctx.closure(&h.p_vars) });
    };
    let order = h.order().expect("nonzero");
    if order < h.mark {
        return Err(Error::invalid(format!("distinguished point is outside the support of {h}")));
    }
    let (_, q, nu) = factor_dq(h, ctx)?;
    if nu == 0 {
        let best = h
            .support_components()
            .into_iter()
            .map(|c| (ctx.e_set(&c), c))
            .max_by(|a, b| cmp_e_sets(&a.0, &b.0))
            .expect("support is nonempty");
        return Ok(LocalData {
            tail: vec![InvEntry::Zero],
            mu: Some(BigRational::new(BigInt::from(order), BigInt::from(h.mark))),
            j_set: best.0,
            centre: ctx.closure(&best.1),
        });
    }
    let g = companion(h, ctx)?;
    let qg = q.generators.as_ref().expect("nonzero");
    let q_order = q.order().expect("nonzero");
    let mut cands: Vec<usize> = (0..h.num_vars).filter(|&j| qg.iter().any(|v| degree(v) == q_order && v[j] > 0)).collect();
    // A variable whose pure power is a generator keeps being a maximal contact
    // coordinate after blowing up, so it goes first.
    let pure = |j: usize| qg.iter().any(|v| v[j] == q_order);
    cands.sort_by_key(|&j| (!pure(j), ctx.e_ids[j].is_some(), ctx.e_ids[j], j));
    let c = descent_along(&g, &[cands[0]])?;
    let mut inner = analyze(&c, ctx)?;
    inner.tail.insert(0, InvEntry::ratio(nu, h.mark));
    Ok(inner)
}

/// The marked ideal presenting the maximal Samuel stratum at the chart's
/// distinguished point: `P = {z = 0}`, one term `(u^eta_i, e_i)` per
/// singular basis element with `e_i = |alpha_i| - |xi_i|`. Terms with
/// `e_i <= 0` impose no condition and are dropped. `None` when the chart is
/// smooth.
pub fn build_marked(cp: &ChartPresentation) -> Result<Option<MarkedIdeal>> {
    let sing = cp.singular_elements();
    if sing.is_empty() {
        return Ok(None);
    }
    let n = cp.num_vars();
    let z = cp.vars_with(Role::Essential);
    let mut acc: Option<MarkedIdeal> = None;
    for (alpha, beta) in sing {
        let xi: i64 = z.iter().map(|&j| beta[j]).sum();
        let e = degree(&alpha) - xi;
        if e <= 0 {
            continue;
        }
        let mut eta = beta.clone();
        for &j in &z {
            eta[j] = 0;
        }
        let term = MarkedIdeal::reduced(n, z.clone(), Some(vec![eta]), e);
        acc = Some(match acc {
            None => term,
            Some(a) => a.sum(&term)?,
        });
    }
    Ok(Some(acc.unwrap_or_else(|| MarkedIdeal::zero(n, z))))
}

/// Marked ideal with mark 1 on `P = N` generated by the equations on `N` of
/// the given hypersurfaces `{x_v = 0}` through the distinguished point: `u_v`
/// for a free variable, the tail monomial for a solved one. Units miss the
/// point and are skipped. `None` when no hypersurface passes through it.
pub fn build_incidence(cp: &ChartPresentation, hypersurfaces: &[usize]) -> Result<Option<MarkedIdeal>> {
    let n = cp.num_vars();
    let tails = cp.solved_tails();
    let mut gens = Vec::new();
    for &v in hypersurfaces {
        match cp.roles[v] {
            Role::Unit => {}
            Role::Free => {
                let mut g = vec![0; n];
                g[v] = 1;
                gens.push(g);
            }
            Role::Solved => {
                gens.push(tails.iter().find(|(s, _)| *s == v).expect("solved variable has a tail").1.clone());
            }
            Role::Essential => return Err(Error::invalid("incidence ideal needs a smooth chart")),
        }
    }
    if gens.is_empty() {
        return Ok(None);
    }
    Ok(Some(MarkedIdeal::reduced(n, Vec::new(), Some(gens), 1)))
}

/// Leading part of the resolution invariant: the Hilbert-Samuel function
/// while singular, the number of selected hypersurfaces through the point
/// during the normal crossings pass.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Head {
    Samuel(HilbertSamuel),
    Incidence(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Invariant {
    pub head: Head,
    pub tail: Vec<InvEntry>,
    pub mu: Option<BigRational>,
    pub j_set: Vec<usize>,
}

impl Invariant {
    /// `inv` itself, without `mu` or `J`.
    pub fn cmp_inv(&self, other: &Invariant) -> Ordering {
        let head = match (&self.head, &other.head) {
            (Head::Samuel(a), Head::Samuel(b)) => crate::samuel::hs_total_cmp(a, b),
            (Head::Incidence(a), Head::Incidence(b)) => a.cmp(b),
            (Head::Samuel(_), Head::Incidence(_)) => Ordering::Greater,
            (Head::Incidence(_), Head::Samuel(_)) => Ordering::Less,
        };
        head.then_with(|| self.tail.cmp(&other.tail))
    }

    /// `(inv, J)`: the key for choosing the global centre.
    pub fn cmp_centre_key(&self, other: &Invariant) -> Ordering {
        self.cmp_inv(other).then_with(|| cmp_e_sets(&self.j_set, &other.j_set))
    }

    /// `(inv, mu)`: the key that strictly drops along every blowup.
    pub fn cmp_progress(&self, other: &Invariant) -> Ordering {
        self.cmp_inv(other).then_with(|| match (&self.mu, &other.mu) {
            (Some(a), Some(b)) => a.cmp(b),
            _ => Ordering::Equal,
        })
    }

    pub fn strings(&self) -> Vec<String> {
        let mut out = vec![match &self.head {
            Head::Samuel(h) => {
                let until = h.stable_from() + h.embedding_dim as i64;
                let vals: Vec<String> = (0..=until).map(|l| h.eval(l).to_string()).collect();
                format!("H({})", vals.join(","))
            }
            Head::Incidence(s) => format!("s={s}"),
        }];
        out.extend(self.tail.iter().map(|e| e.to_string()));
        out
    }
}

/// Full invariant of a chart in the singular phase, with its centre.
pub fn chart_invariant(cp: &ChartPresentation, ctx: &ChartContext) -> Result<Option<(Invariant, Vec<usize>)>> {
    let Some(h) = build_marked(cp)? else {
        return Ok(None);
    };
    let data = analyze(&h, ctx)?;
    let ones = h.p_vars.len().saturating_sub(1);
    let mut tail = vec![InvEntry::one(); ones];
    tail.extend(data.tail);
    Ok(Some((
        Invariant { head: Head::Samuel(cp.hilbert_samuel()), tail, mu: data.mu, j_set: data.j_set },
        data.centre,
    )))
}

/// Invariant of a smooth chart in the normal crossings pass.
pub fn incidence_invariant(
    cp: &ChartPresentation,
    ctx: &ChartContext,
    hypersurfaces: &[usize],
) -> Result<Option<(Invariant, Vec<usize>)>> {
    let Some(h) = build_incidence(cp, hypersurfaces)? else {
        return Ok(None);
    };
    let s = hypersurfaces.iter().filter(|&&v| cp.roles[v] != Role::Unit).count();
    let data = analyze(&h, ctx)?;
    Ok(Some((Invariant { head: Head::Incidence(s), tail: data.tail, mu: data.mu, j_set: data.j_set }, data.centre)))
}

/// One blowup of a local resolution: the chart path taken to reach it and
/// the centre.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalStep {
    pub path: Vec<usize>,
    pub centre: Vec<usize>,
}

/// Resolves a marked ideal on affine space chart by chart. Every chart
/// variable starts as a member of `E` in index order unless `canonical`;
/// each blowup appends its exceptional divisor.
pub fn resolve_marked(h: &MarkedIdeal, canonical: bool, budget: usize) -> Result<Vec<LocalStep>> {
    let n = h.num_vars;
    let ids: Vec<Option<usize>> = (0..n).map(|v| if canonical { None } else { Some(v) }).collect();
    let mut steps = Vec::new();
    let mut next_id = n;
    let mut stack = vec![(h.clone(), ids, Vec::new(), None::<(Invariant, String)>)];
    while let Some((h, ids, path, parent)) = stack.pop() {
        if h.order().is_some_and(|o| o < h.mark) {
            continue;
        }
        let ctx = ChartContext::plain(ids.clone());
        let data = analyze(&h, &ctx)?;
        let inv = Invariant { head: Head::Incidence(0), tail: data.tail, mu: data.mu, j_set: data.j_set };
        if let Some((p, above)) = &parent {
            if inv.cmp_progress(p) != Ordering::Less {
                return Err(Error::assertion(format!(
                    "invariant did not drop at chart path {path:?}: {above} {:?} mu={:?} -> {h} {:?} mu={:?}",
                    p.strings(),
                    p.mu,
                    inv.strings(),
                    inv.mu
                )));
            }
        }
        steps.push(LocalStep { path: path.clone(), centre: data.centre.clone() });
        if steps.len() > budget {
            return Err(Error::budget("local marked resolution exceeded its step budget"));
        }
        let id = next_id;
        next_id += 1;
        for &i in data.centre.iter().rev() {
            if h.p_vars.contains(&i) {
                continue;
            }
            let t = h.transform(&data.centre, i)?;
            let mut ids2 = ids.clone();
            ids2[i] = Some(id);
            let mut path2 = path.clone();
            path2.push(i);
            stack.push((t, ids2, path2, Some((inv.clone(), format!("{h} ids={ids:?}")))));
        }
    }
    Ok(steps)
}

/// Blowups of the monomial case for `(x^omega, e)` along one branch of
/// charts: each step blows up the support component that is largest in the
/// order of `E` (initial variables by index, then exceptional divisors by
/// birth) and follows every chart. Returns the deepest branch length and
/// the total number of chart-local blowups.
pub fn resolve_monomial_case(omega: &[i64], e: i64) -> Result<(usize, usize)> {
    if e < 1 {
        return Err(Error::invalid("mark must be positive"));
    }
    let n = omega.len();
    let mut deepest = 0;
    let mut total = 0;
    let mut stack: Vec<(Exponent, Vec<usize>, usize)> = vec![(omega.to_vec(), (0..n).collect(), 0)];
    while let Some((w, ids, depth)) = stack.pop() {
        deepest = deepest.max(depth);
        if degree(&w) < e {
            continue;
        }
        let h = MarkedIdeal { num_vars: n, p_vars: Vec::new(), generators: Some(vec![w.clone()]), mark: e };
        let ctx = ChartContext::plain(ids.iter().map(|&i| Some(i)).collect());
        let data = analyze(&h, &ctx)?;
        if data.tail != vec![InvEntry::Zero] {
            return Err(Error::assertion("single monomial left the monomial case"));
        }
        total += 1;
        let born = n + total;
        for &i in &data.centre {
            let mut w2 = w.clone();
            w2[i] = data.centre.iter().map(|&j| w[j]).sum::<i64>() - e;
            let mut ids2 = ids.clone();
            ids2[i] = born;
            stack.push((w2, ids2, depth + 1));
        }
    }
    Ok((deepest, total))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::binomial::{Binomial, BinomialIdeal};
    use proptest::prelude::*;

    fn mi(n: usize, p: &[usize], gens: &[&[i64]], e: i64) -> MarkedIdeal {
        MarkedIdeal::new(n, p.to_vec(), gens.iter().map(|g| g.to_vec()).collect(), e).unwrap()
    }

    fn toric(n: usize) -> ChartContext {
        ChartContext::plain((0..n).map(Some).collect())
    }

    fn canonical(n: usize) -> ChartContext {
        ChartContext::plain(vec![None; n])
    }

    #[test]
    fn support_examples() {
        // variables u, v, w with P = {w = 0}
        assert_eq!(mi(3, &[2], &[&[1, 1, 0]], 2).support_components(), vec![vec![0, 1, 2]]);
        assert_eq!(mi(1, &[], &[&[3]], 2).support_components(), vec![vec![0]]);
        assert_eq!(mi(2, &[], &[&[2, 0], &[0, 2]], 2).support_components(), vec![vec![0, 1]]);
        assert_eq!(MarkedIdeal::zero(3, vec![1]).support_components(), vec![vec![1]]);
    }

    #[test]
    fn transform_examples() {
        let h = mi(3, &[2], &[&[1, 1, 0]], 2);
        let t = h.transform(&[0, 1, 2], 0).unwrap();
        assert_eq!(t.generators, Some(vec![vec![0, 1, 0]]));
        assert_eq!(t.mark, 2);
        let h = mi(1, &[], &[&[3]], 2);
        assert_eq!(h.transform(&[0], 0).unwrap().generators, Some(vec![vec![1]]));
        let z = MarkedIdeal::zero(2, vec![0]);
        assert_eq!(z.transform(&[0, 1], 1).unwrap(), z);
    }

    #[test]
    fn sum_examples() {
        let s = mi(2, &[], &[&[1, 0]], 1).sum(&mi(2, &[], &[&[0, 1]], 1)).unwrap();
        assert_eq!((s.generators, s.mark), (Some(vec![vec![0, 1], vec![1, 0]]), 1));
        let s = mi(2, &[], &[&[1, 0]], 2).sum(&mi(2, &[], &[&[0, 1]], 3)).unwrap();
        assert_eq!((s.generators, s.mark), (Some(vec![vec![0, 2], vec![3, 0]]), 6));
        let z = MarkedIdeal::zero(2, vec![]);
        assert!(mi(2, &[], &[&[1, 0]], 2).sum(&z).unwrap().is_zero());
    }

    #[test]
    fn factor_examples() {
        let h = mi(3, &[], &[&[2, 1, 0], &[2, 0, 1]], 2);
        let (d, q, nu) = factor_dq(&h, &toric(3)).unwrap();
        assert_eq!(d, vec![2, 0, 0]);
        assert_eq!(q.generators, Some(vec![vec![0, 0, 1], vec![0, 1, 0]]));
        assert_eq!(nu, 1);
        let (d, _, nu) = factor_dq(&h, &canonical(3)).unwrap();
        assert_eq!(d, vec![0, 0, 0]);
        assert_eq!(nu, 3);
    }

    #[test]
    fn companion_examples() {
        // nu >= e: companion is (Q, nu)
        let h = mi(2, &[], &[&[3, 0], &[0, 3]], 2);
        let g = companion(&h, &toric(2)).unwrap();
        assert_eq!((g.generators.clone(), g.mark), (Some(vec![vec![0, 1], vec![1, 0]]), 1));
        // u^2 v and u^2 w with e = 4: D = u^2, Q = (v, w), nu = 1
        let h = mi(3, &[], &[&[2, 1, 0], &[2, 0, 1]], 3);
        let g = companion(&h, &toric(3)).unwrap();
        assert!(g.has_maximal_order());
        // (v^2, w^2, u^2; 2) reduces to (u, v, w; 1)
        assert_eq!((g.generators, g.mark), (Some(vec![vec![0, 0, 1], vec![0, 1, 0], vec![1, 0, 0]]), 1));
    }

    #[test]
    fn descent_examples() {
        let c = descent(&mi(3, &[2], &[&[1, 1, 0]], 2)).unwrap();
        assert!(c.is_zero());
        assert_eq!(c.p_vars, vec![0, 1, 2]);
        assert!(descent(&mi(2, &[], &[&[2, 1]], 3)).unwrap().is_zero());
        let c = descent(&mi(2, &[], &[&[2, 0], &[0, 3]], 2)).unwrap();
        assert_eq!((c.generators.clone(), c.mark, c.p_vars.clone()), (Some(vec![vec![0, 3]]), 2, vec![0]));
    }

    #[test]
    fn invariant_examples() {
        let z = MarkedIdeal::zero(2, vec![0]);
        let d = analyze(&z, &toric(2)).unwrap();
        assert_eq!(d.tail, vec![InvEntry::Infinity]);
        assert!(d.j_set.is_empty());
        let d = analyze(&mi(1, &[], &[&[3]], 2), &toric(1)).unwrap();
        assert_eq!(d.tail, vec![InvEntry::Zero]);
        assert_eq!(d.mu, Some(BigRational::new(3.into(), 2.into())));
    }

    fn two_binomials() -> ChartPresentation {
        let b = |a: &[i64], c: &[i64]| Binomial::new(a.to_vec(), c.to_vec(), vec![]);
        let ideal = BinomialIdeal::new(
            6,
            0,
            vec![b(&[0, 0, 2, 0, 0, 0], &[1, 1, 0, 0, 0, 0]), b(&[0, 0, 0, 0, 0, 1], &[0, 0, 0, 1, 1, 0])],
        )
        .unwrap();
        ChartPresentation::from_ideal(&ideal).unwrap()
    }

    #[test]
    fn two_binomials_marked_ideal_and_centre() {
        let cp = two_binomials();
        let h = build_marked(&cp).unwrap().unwrap();
        assert_eq!(h.generators, Some(vec![vec![1, 1, 0, 0, 0, 0]]));
        assert_eq!((h.mark, h.p_vars.clone()), (2, vec![2]));
        let ctx = ChartContext::from_chart(&cp, (0..6).map(Some).collect());
        let (inv, centre) = chart_invariant(&cp, &ctx).unwrap().unwrap();
        assert_eq!(centre, vec![0, 1, 2]);
        assert_eq!(inv.tail, vec![InvEntry::Zero]);
        let ctx = ChartContext::from_chart(&cp, vec![None; 6]);
        let (inv, centre) = chart_invariant(&cp, &ctx).unwrap().unwrap();
        assert_eq!(centre, vec![0, 1, 2]);
        // nu/e = 2/2, then (v, 1) on {u = w = 0} and the zero ideal.
        assert_eq!(inv.tail, vec![InvEntry::one(), InvEntry::one(), InvEntry::Infinity]);
        let steps = resolve_marked(&h, false, 100).unwrap();
        assert_eq!(steps.len(), 1);
        assert_eq!(steps[0].centre, vec![0, 1, 2]);
    }

    #[test]
    fn six_variable_marked_ideal() {
        for d in [2i64, 3] {
            // u, v, w, x, y, z
            let b = |a: [i64; 6], c: [i64; 6]| Binomial::new(a.to_vec(), c.to_vec(), vec![]);
            let ideal = BinomialIdeal::new(
                6,
                0,
                vec![
                    b([d, 0, 0, 0, 0, 0], [0, 0, 0, d - 1, d, d + 1]),
                    b([0, d, 0, 0, 0, 0], [0, 0, 0, d, d + 1, d - 1]),
                    b([0, 0, d, 0, 0, 0], [0, 0, 0, d + 1, d - 1, d]),
                ],
            )
            .unwrap();
            let cp = ChartPresentation::from_ideal(&ideal).unwrap();
            let h = build_marked(&cp).unwrap().unwrap();
            // (x^{d-1} y^d z^{d+1})^{d^2}, ..., mark d^3, reduced by d^2.
            assert_eq!(h.mark, d);
            assert_eq!(h.generators.as_ref().unwrap().len(), 3);
            assert!(h.generators.as_ref().unwrap().contains(&vec![0, 0, 0, d - 1, d, d + 1]));
        }
    }

    #[test]
    fn incidence_examples() {
        // x1 - u1 with the hypersurface {u1 = 0}
        let ideal = BinomialIdeal::new(2, 0, vec![Binomial::new(vec![1, 0], vec![0, 1], vec![])]).unwrap();
        let cp = ChartPresentation::from_ideal(&ideal).unwrap();
        let solved = cp.vars_with(Role::Solved)[0];
        let free = 1 - solved;
        let h = build_incidence(&cp, &[free]).unwrap().unwrap();
        let steps = resolve_marked(&h, false, 10).unwrap();
        assert_eq!(steps.len(), 1);
        assert!(build_incidence(&cp, &[]).unwrap().is_none());
    }

    #[test]
    fn monomial_case_examples() {
        assert_eq!(resolve_monomial_case(&[3], 2).unwrap().0, 1);
        assert_eq!(resolve_monomial_case(&[1, 1], 2).unwrap().0, 1);
        assert_eq!(resolve_monomial_case(&[2, 0, 1], 3).unwrap().0, 1);
    }

    #[test]
    fn e_set_order() {
        assert_eq!(cmp_e_sets(&[0], &[1, 2]), Ordering::Greater);
        assert_eq!(cmp_e_sets(&[], &[3]), Ordering::Less);
        assert_eq!(cmp_e_sets(&[1, 2], &[1, 2]), Ordering::Equal);
    }

    proptest! {
        #[test]
        fn monomial_case_depth_bound(omega in proptest::collection::vec(0i64..=4, 1..=3), seed in 0i64..64) {
            let w: i64 = omega.iter().sum();
            prop_assume!(w >= 1);
            let e = 1 + seed % w;
            let (deepest, _) = resolve_monomial_case(&omega, e).unwrap();
            prop_assert!(deepest as i64 <= w - e + 1);
        }

        #[test]
        fn sum_support_is_intersection(
            g1 in proptest::collection::vec(proptest::collection::vec(0i64..=3, 3), 1..3), e1 in 1i64..=3,
            g2 in proptest::collection::vec(proptest::collection::vec(0i64..=3, 3), 1..3), e2 in 1i64..=3,
        ) {
            let h1 = MarkedIdeal::new(3, vec![], g1, e1).unwrap();
            let h2 = MarkedIdeal::new(3, vec![], g2, e2).unwrap();
            let s = h1.sum(&h2).unwrap();
            // Points: coordinate subspaces {x_S = 0}; the order there is the
            // least S-weight of a generator.
            let in_supp = |h: &MarkedIdeal, set: &[usize]| {
                h.generators.as_ref().unwrap().iter().map(|g| set.iter().map(|&j| g[j]).sum::<i64>()).min().unwrap() >= h.mark
            };
            for mask in 0..8usize {
                let set: Vec<usize> = (0..3).filter(|b| mask & (1 << b) != 0).collect();
                prop_assert_eq!(in_supp(&s, &set), in_supp(&h1, &set) && in_supp(&h2, &set));
            }
        }

        #[test]
        fn transform_commutes_with_sum(
            g1 in proptest::collection::vec(proptest::collection::vec(1i64..=3, 3), 1..3),
            g2 in proptest::collection::vec(proptest::collection::vec(1i64..=3, 3), 1..3),
            e1 in 1i64..=2, e2 in 1i64..=2, i in 0usize..3,
        ) {
            let h1 = MarkedIdeal::new(3, vec![], g1, e1).unwrap();
            let h2 = MarkedIdeal::new(3, vec![], g2, e2).unwrap();
            let delta = [0, 1, 2];
            let a = h1.sum(&h2).unwrap().transform(&delta, i).unwrap();
            let b = h1.transform(&delta, i).unwrap().sum(&h2.transform(&delta, i).unwrap()).unwrap();
            prop_assert_eq!(a, b);
        }

        #[test]
        fn companion_has_maximal_order(gens in proptest::collection::vec(proptest::collection::vec(0i64..=4, 3), 2..4), seed in 0i64..64) {
            let order = gens.iter().map(|g| degree(g)).min().unwrap();
            prop_assume!(order >= 1);
            let h = MarkedIdeal::new(3, vec![], gens, 1 + seed % order).unwrap();
            let (_, _, nu) = factor_dq(&h, &toric(3)).unwrap();
            if nu > 0 {
                prop_assert!(companion(&h, &toric(3)).unwrap().has_maximal_order());
            }
        }

        #[test]
        fn centre_lies_in_support(
            gens in proptest::collection::vec(proptest::collection::vec(0i64..=3, 4), 1..4), e in 1i64..=3,
            ids in proptest::collection::vec(proptest::option::of(0usize..6), 4),
        ) {
            let h = MarkedIdeal::new(4, vec![], gens, e).unwrap();
            prop_assume!(h.order().unwrap() >= h.mark);
            let ctx = ChartContext::plain(ids);
            let data = analyze(&h, &ctx).unwrap();
            let g = h.generators.as_ref().unwrap();
            let weight = g.iter().map(|v| data.centre.iter().map(|&j| v[j]).sum::<i64>()).min().unwrap();
            prop_assert!(weight >= h.mark, "{} centre {:?}", h, data.centre);
        }

        #[test]
        fn local_resolution_terminates_with_dropping_invariant(
            gens in proptest::collection::vec(proptest::collection::vec(0i64..=3, 3), 1..3), e in 1i64..=3, canon in any::<bool>(),
        ) {
            let h = MarkedIdeal::new(3, vec![], gens, e).unwrap();
            prop_assume!(h.order().unwrap() >= h.mark);
            resolve_marked(&h, canon, 5_000).unwrap();
        }
    }
}
