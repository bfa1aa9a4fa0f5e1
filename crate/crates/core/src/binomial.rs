//! Binomial ideals in split variables `(x; y^{±1})`: the local order on
//! exponents, division, standard bases and the diagram of initial exponents.
//!
//! A binomial `x^alpha - x^beta y^gamma` is stored with `alpha` the smaller
//! exponent. An ideal is read as the lattice ideal of the integer span of
//! its generators' exponent differences.

use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::lattice_ideal;
use crate::simplex;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::collections::VecDeque;

pub type Exponent = Vec<i64>;

pub const DEFAULT_BUDGET: usize = 10_000;

pub fn degree(a: &[i64]) -> i64 {
    a.iter().sum()
}

/// Total degree first, then lexicographic in `a_1, ..., a_q`.
pub fn exponent_cmp(a: &[i64], b: &[i64]) -> Ordering {
    debug_assert_eq!(a.len(), b.len());
    degree(a).cmp(&degree(b)).then_with(|| a.cmp(b))
}

/// `a <= b` componentwise.
pub fn le(a: &[i64], b: &[i64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn sub(a: &[i64], b: &[i64]) -> Exponent {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn add(a: &[i64], b: &[i64]) -> Exponent {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// `x^alpha - x^beta y^gamma`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Binomial {
    pub alpha: Exponent,
    pub beta: Exponent,
    pub gamma: Exponent,
}

impl Binomial {
    pub fn new(alpha: Exponent, beta: Exponent, gamma: Exponent) -> Self {
        Binomial { alpha, beta, gamma }
    }

    pub fn num_x(&self) -> usize {
        self.alpha.len()
    }

    pub fn num_y(&self) -> usize {
        self.gamma.len()
    }

    /// Order at the distinguished point of a normalized binomial.
    pub fn order(&self) -> i64 {
        degree(&self.alpha)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Normalized {
    Binomial(Binomial),
    /// `1 - y^gamma` with `gamma` not yet in the torus lattice.
    PureTorus(Exponent),
    Zero,
}

/// Cancels the common x-monomial factor and orients the binomial so that
/// `alpha` is the smaller exponent.
pub fn normalize(b: &Binomial, torus: &Lattice) -> Normalized {
    let c: Exponent = b
        .alpha
        .iter()
        .zip(&b.beta)
        .map(|(x, y)| *x.min(y))
        .collect();
    let a = sub(&b.alpha, &c);
    let t = sub(&b.beta, &c);
    match exponent_cmp(&a, &t) {
        Ordering::Equal => {
            if b.gamma.iter().all(|g| *g == 0) || torus.contains_i64(&b.gamma) {
                Normalized::Zero
            } else {
                Normalized::PureTorus(b.gamma.clone())
            }
        }
        Ordering::Less => Normalized::Binomial(Binomial::new(a, t, b.gamma.clone())),
        Ordering::Greater => {
            Normalized::Binomial(Binomial::new(t, a, b.gamma.iter().map(|g| -g).collect()))
        }
    }
}

/// Power test: `d` is a power of `p` and every exponent of `b`
/// is divisible by `d`.
pub fn pth_power_test(b: &Binomial, p: u64, d: u64) -> bool {
    if p < 2 || d < 2 {
        return false;
    }
    let mut q = d;
    while q % p == 0 {
        q /= p;
    }
    if q != 1 {
        return false;
    }
    let d = d as i64;
    b.alpha
        .iter()
        .chain(&b.beta)
        .chain(&b.gamma)
        .all(|e| e % d == 0)
}

/// Minimal exponents of a monomial ideal, sorted by [`exponent_cmp`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagram {
    vertices: Vec<Exponent>,
}

impl Diagram {
    pub fn from_exponents(num_vars: usize, exps: impl IntoIterator<Item = Exponent>) -> Self {
        let mut all: Vec<Exponent> = exps.into_iter().collect();
        debug_assert!(all.iter().all(|e| e.len() == num_vars));
        all.sort_by(|a, b| exponent_cmp(a, b));
        all.dedup();
        let mut vertices: Vec<Exponent> = Vec::new();
        for e in all {
            if !vertices.iter().any(|v| le(v, &e)) {
                vertices.retain(|v| !le(&e, v));
                vertices.push(e);
            }
        }
        vertices.sort_by(|a, b| exponent_cmp(a, b));
        Diagram { vertices }
    }

    pub fn vertices(&self) -> &[Exponent] {
        &self.vertices
    }

    pub fn contains(&self, e: &[i64]) -> bool {
        self.vertices.iter().any(|v| le(v, e))
    }

    pub fn max_degree(&self) -> i64 {
        self.vertices.iter().map(|v| degree(v)).max().unwrap_or(0)
    }

    /// Pads every vertex with `extra` zero coordinates and adds unit vertices
    /// for the first `units` of them.
    pub fn padded(&self, extra: usize, units: usize) -> Diagram {
        let n = self.vertices.first().map_or(0, |v| v.len());
        let mut vs: Vec<Exponent> = self
            .vertices
            .iter()
            .map(|v| {
                let mut w = v.clone();
                w.extend(std::iter::repeat(0).take(extra));
                w
            })
            .collect();
        for k in 0..units.min(extra) {
            let mut w = vec![0; n + extra];
            w[n + k] = 1;
            vs.push(w);
        }
        Diagram::from_exponents(n + extra, vs)
    }
}

/// One step of division: `x^{delta - alpha^i} y^h` is added to `Q_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientTerm {
    pub element: usize,
    pub x: Exponent,
    pub y: Exponent,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Division {
    pub quotient: Vec<QuotientTerm>,
    pub remainder_x: Exponent,
    pub remainder_y: Exponent,
}

/// Standard basis of a binomial ideal at the distinguished point. Variables
/// are split into `x` (vanishing at the point) and `y` (units); both lists
/// hold indices into the variables of the input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StandardBasis {
    pub x_vars: Vec<usize>,
    pub y_vars: Vec<usize>,
    pub elements: Vec<Binomial>,
    pub torus: Lattice,
}

fn reduce_with(elements: &[Binomial], delta: &[i64], h: &[i64], budget: usize) -> Result<Division> {
    let mut d = delta.to_vec();
    let mut y = h.to_vec();
    let mut quotient = Vec::new();
    for _ in 0..=budget {
        let Some(i) = elements.iter().position(|f| le(&f.alpha, &d)) else {
            return Ok(Division {
                quotient,
                remainder_x: d,
                remainder_y: y,
            });
        };
        let f = &elements[i];
        let q = sub(&d, &f.alpha);
        quotient.push(QuotientTerm {
            element: i,
            x: q.clone(),
            y: y.clone(),
        });
        d = add(&q, &f.beta);
        y = add(&y, &f.gamma);
    }
    Err(Error::budget(
        "division did not terminate: binomial-ideal axioms violated or budget too small",
    ))
}

impl StandardBasis {
    pub fn num_x(&self) -> usize {
        self.x_vars.len()
    }

    pub fn num_y(&self) -> usize {
        self.y_vars.len()
    }

    pub fn diagram(&self) -> Diagram {
        Diagram::from_exponents(self.num_x(), self.elements.iter().map(|f| f.alpha.clone()))
    }

    /// Divides `x^delta y^h`. Each step rewrites by the first element whose
    /// initial exponent divides the current monomial.
    pub fn divide(&self, delta: &[i64], h: &[i64]) -> Result<Division> {
        reduce_with(&self.elements, delta, h, DEFAULT_BUDGET)
    }

    /// Both terms have equal remainders modulo the torus lattice.
    pub fn membership(&self, f: &Binomial) -> Result<bool> {
        let zero = vec![0; self.num_y()];
        let l = self.divide(&f.alpha, &zero)?;
        let r = self.divide(&f.beta, &f.gamma)?;
        if l.remainder_x != r.remainder_x {
            return Ok(false);
        }
        Ok(self
            .torus
            .contains_i64(&sub(&l.remainder_y, &r.remainder_y)))
    }

    /// Initial exponents form the diagram's antichain, each tail lies outside
    /// the staircase and above its initial exponent.
    pub fn check_contract(&self) -> Result<()> {
        let diag = self.diagram();
        if diag.vertices().len() != self.elements.len() {
            return Err(Error::assertion("initial exponents are not an antichain"));
        }
        for f in &self.elements {
            if exponent_cmp(&f.alpha, &f.beta) != Ordering::Less {
                return Err(Error::assertion("initial exponent is not below the tail"));
            }
            if diag.contains(&f.beta) {
                return Err(Error::assertion("tail lies in the staircase"));
            }
        }
        Ok(())
    }

    /// Every element has order one, so `X` is smooth at the point.
    pub fn is_smooth(&self) -> bool {
        self.elements.iter().all(|f| f.order() == 1)
    }
}

enum Completion {
    Done(Vec<Binomial>),
    Units(Vec<usize>),
}

/// S-binomial completion at the distinguished point. Returns the x-positions
/// of variables that turn out to be units if some element has `alpha = 0`.
fn complete(gens: Vec<Binomial>, torus: &mut Lattice, budget: usize) -> Result<Completion> {
    let num_x = gens.first().map_or(0, |g| g.num_x());
    let mut basis: Vec<Binomial> = Vec::new();
    let mut pending: VecDeque<Binomial> = gens.into();
    let mut pairs: VecDeque<(usize, usize)> = VecDeque::new();
    let mut rounds = 0usize;
    let pair_budget = budget.saturating_mul(10);
    loop {
        let cand = if let Some(c) = pending.pop_front() {
            c
        } else if let Some((i, j)) = pairs.pop_front() {
            rounds += 1;
            if rounds > pair_budget {
                return Err(Error::budget(
                    "standard basis completion exceeded its budget",
                ));
            }
            let (fi, fj) = (&basis[i], &basis[j]);
            let delta: Exponent = fi
                .alpha
                .iter()
                .zip(&fj.alpha)
                .map(|(a, b)| *a.max(b))
                .collect();
            let left = add(&sub(&delta, &fi.alpha), &fi.beta);
            let right = add(&sub(&delta, &fj.alpha), &fj.beta);
            let g = sub(&fj.gamma, &fi.gamma);
            // x^left y^gamma_i - x^right y^gamma_j, divided by y^gamma_i
            Binomial::new(left, right, g)
        } else {
            break;
        };
        let zero = vec![0; cand.num_y()];
        let l = reduce_with(&basis, &cand.alpha, &zero, budget)?;
        let r = reduce_with(&basis, &cand.beta, &cand.gamma, budget)?;
        let reduced = Binomial::new(
            l.remainder_x,
            r.remainder_x,
            sub(&r.remainder_y, &l.remainder_y),
        );
        match normalize(&reduced, torus) {
            Normalized::Zero => {}
            Normalized::PureTorus(g) => {
                torus.insert(g.iter().map(|&x| x.into()).collect());
            }
            Normalized::Binomial(b) => {
                if b.alpha.iter().all(|a| *a == 0) {
                    let units = (0..num_x).filter(|&k| b.beta[k] > 0).collect();
                    return Ok(Completion::Units(units));
                }
                let k = basis.len();
                basis.push(b);
                pairs.extend((0..k).map(|i| (i, k)));
            }
        }
    }
    Ok(Completion::Done(basis))
}

/// Minimal initial exponents, tails reduced outside the staircase, `y`
/// exponents in canonical form modulo the torus lattice.
fn finalize(mut basis: Vec<Binomial>, torus: &Lattice, budget: usize) -> Result<Vec<Binomial>> {
    basis.sort_by(|a, b| exponent_cmp(&a.alpha, &b.alpha).then_with(|| a.cmp(b)));
    let mut kept: Vec<Binomial> = Vec::new();
    for f in basis {
        if !kept.iter().any(|g| le(&g.alpha, &f.alpha)) {
            kept.push(f);
        }
    }
    let mut out = Vec::with_capacity(kept.len());
    for f in &kept {
        let r = reduce_with(&kept, &f.beta, &f.gamma, budget)?;
        let gamma: Exponent = torus
            .reduce(&r.remainder_y.iter().map(|&x| x.into()).collect::<Vec<_>>())
            .iter()
            .map(|x| {
                x.to_i64()
                    .ok_or_else(|| Error::invalid("exponent exceeds 64 bits"))
            })
            .collect::<Result<_>>()?;
        out.push(Binomial::new(f.alpha.clone(), r.remainder_x, gamma));
    }
    Ok(out)
}

/// Lattice `L ∩ (0 x Z^ys)`, expressed in the `ys` coordinates.
fn torus_part(lat: &Lattice, xs: &[usize], ys: &[usize]) -> Lattice {
    let order: Vec<usize> = xs.iter().chain(ys).copied().collect();
    let permuted: Vec<Vec<_>> = lat
        .basis()
        .iter()
        .map(|row| order.iter().map(|&k| row[k].clone()).collect())
        .collect();
    let h = Lattice::from_generators(order.len(), &permuted);
    let rows: Vec<Vec<_>> = h
        .basis()
        .iter()
        .filter(|row| row[..xs.len()].iter().all(|v| v == &0.into()))
        .map(|row| row[xs.len()..].to_vec())
        .collect();
    Lattice::from_generators(ys.len(), &rows)
}

/// Drops from `x_vars` every variable that vanishes nowhere on `X`: `x_k` is
/// a unit exactly when some `v` in `L` is nonnegative on the remaining
/// x-coordinates and positive at `k`. Repeats until stable, since units
/// found in one round relax the sign conditions of the next.
fn unit_free(lat: &Lattice, x_vars: &[usize]) -> Vec<usize> {
    let mut xs = x_vars.to_vec();
    loop {
        let rows: Vec<Vec<_>> = lat
            .basis()
            .iter()
            .map(|r| xs.iter().map(|&k| r[k].clone()).collect())
            .collect();
        let units = simplex::nonnegative_support(&rows, xs.len());
        if units.is_empty() {
            return xs;
        }
        let drop: Vec<usize> = units.iter().map(|&k| xs[k]).collect();
        xs.retain(|k| !drop.contains(k));
    }
}

/// Standard basis of the lattice ideal of `lat` at the distinguished point.
/// `x_vars` lists the variables assumed to vanish there; any that turn out
/// to be units are moved to the `y` side.
pub fn standard_basis_of_lattice(
    lat: &Lattice,
    x_vars: &[usize],
    budget: usize,
) -> Result<StandardBasis> {
    let n = lat.dim();
    let rows = lat
        .basis_i64()
        .ok_or_else(|| Error::invalid("exponent exceeds 64 bits"))?;
    let raw = lattice_ideal::lattice_ideal_generators(&rows, budget.saturating_mul(100))?;
    let xs = unit_free(lat, x_vars);
    let ys: Vec<usize> = (0..n).filter(|k| !xs.contains(k)).collect();
    let mut torus = torus_part(lat, &xs, &ys);
    let known = torus.clone();
    let gens: Vec<Binomial> = raw
        .iter()
        .map(|(p, m)| {
            Binomial::new(
                xs.iter().map(|&k| p[k]).collect(),
                xs.iter().map(|&k| m[k]).collect(),
                ys.iter().map(|&k| m[k] - p[k]).collect(),
            )
        })
        .collect();
    if xs.is_empty() {
        return Ok(StandardBasis {
            x_vars: xs,
            y_vars: ys,
            elements: Vec::new(),
            torus,
        });
    }
    match complete(gens, &mut torus, budget)? {
        Completion::Units(units) => Err(Error::assertion(format!(
            "completion found units {units:?} missed by the lattice test"
        ))),
        Completion::Done(basis) => {
            if torus != known {
                return Err(Error::assertion(
                    "completion found a torus relation outside the lattice",
                ));
            }
            let elements = finalize(basis, &torus, budget)?;
            let sb = StandardBasis {
                x_vars: xs,
                y_vars: ys,
                elements,
                torus,
            };
            sb.check_contract()?;
            Ok(sb)
        }
    }
}

/// `{"alpha","beta","gamma"}` as stored in ideal files.
#[derive(Clone, Debug, Serialize, Deserialize)]
struct GeneratorJson {
    alpha: Vec<i64>,
    beta: Vec<i64>,
    #[serde(default)]
    gamma: Vec<i64>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct IdealJson {
    #[serde(rename = "char", default)]
    characteristic: u64,
    generators: Vec<GeneratorJson>,
    num_x: usize,
    #[serde(default)]
    num_y: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    x_names: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    y_names: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinomialIdeal {
    pub num_x: usize,
    pub num_y: usize,
    pub characteristic: u64,
    pub generators: Vec<Binomial>,
    pub x_names: Option<Vec<String>>,
    pub y_names: Option<Vec<String>>,
}

pub(crate) fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|k| k * k <= p).all(|k| p % k != 0)
}

impl BinomialIdeal {
    pub fn new(num_x: usize, num_y: usize, generators: Vec<Binomial>) -> Result<Self> {
        let ideal = BinomialIdeal {
            num_x,
            num_y,
            characteristic: 0,
            generators,
            x_names: None,
            y_names: None,
        };
        ideal.validate()?;
        Ok(ideal)
    }

    pub fn with_characteristic(mut self, p: u64) -> Result<Self> {
        self.characteristic = p;
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        if self.characteristic != 0 && !is_prime(self.characteristic) {
            return Err(Error::invalid("characteristic must be 0 or a prime"));
        }
        for g in &self.generators {
            if g.alpha.len() != self.num_x
                || g.beta.len() != self.num_x
                || g.gamma.len() != self.num_y
            {
                return Err(Error::invalid("generator has wrong number of exponents"));
            }
            if g.alpha.iter().chain(&g.beta).any(|e| *e < 0) {
                return Err(Error::invalid("x exponents must be nonnegative"));
            }
        }
        if let Some(n) = &self.x_names {
            if n.len() != self.num_x {
                return Err(Error::invalid("x_names has wrong length"));
            }
        }
        if let Some(n) = &self.y_names {
            if n.len() != self.num_y {
                return Err(Error::invalid("y_names has wrong length"));
            }
        }
        Ok(())
    }

    pub fn num_vars(&self) -> usize {
        self.num_x + self.num_y
    }

    /// Exponent differences `(alpha - beta, -gamma)` of the generators.
    pub fn differences(&self) -> Vec<Vec<i64>> {
        self.generators
            .iter()
            .map(|g| {
                let mut v = sub(&g.alpha, &g.beta);
                v.extend(g.gamma.iter().map(|c| -c));
                v
            })
            .collect()
    }

    pub fn relation_lattice(&self) -> Lattice {
        Lattice::from_i64(self.num_vars(), &self.differences())
    }

    /// Largest total degree of a generator term.
    pub fn max_degree(&self) -> i64 {
        self.generators
            .iter()
            .map(|g| degree(&g.alpha).max(degree(&g.beta)))
            .max()
            .unwrap_or(0)
    }

    pub fn variable_names(&self) -> Vec<String> {
        let xs = self
            .x_names
            .clone()
            .unwrap_or_else(|| (1..=self.num_x).map(|i| format!("x{i}")).collect());
        let ys = self
            .y_names
            .clone()
            .unwrap_or_else(|| (1..=self.num_y).map(|i| format!("y{i}")).collect());
        xs.into_iter().chain(ys).collect()
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: IdealJson =
            serde_json::from_str(text).map_err(|e| Error::invalid(format!("ideal json: {e}")))?;
        let ideal = BinomialIdeal {
            num_x: raw.num_x,
            num_y: raw.num_y,
            characteristic: raw.characteristic,
            generators: raw
                .generators
                .into_iter()
                .map(|g| Binomial::new(g.alpha, g.beta, g.gamma))
                .collect(),
            x_names: raw.x_names,
            y_names: raw.y_names,
        };
        ideal.validate()?;
        Ok(ideal)
    }

    pub fn to_json(&self) -> String {
        let raw = IdealJson {
            characteristic: self.characteristic,
            generators: self
                .generators
                .iter()
                .map(|g| GeneratorJson {
                    alpha: g.alpha.clone(),
                    beta: g.beta.clone(),
                    gamma: g.gamma.clone(),
                })
                .collect(),
            num_x: self.num_x,
            num_y: self.num_y,
            x_names: self.x_names.clone(),
            y_names: self.y_names.clone(),
        };
        crate::json::canonical(&raw)
    }
}

/// Standard basis of `I` at its distinguished point.
pub fn standard_basis(ideal: &BinomialIdeal) -> Result<StandardBasis> {
    standard_basis_with_budget(ideal, DEFAULT_BUDGET)
}

pub fn standard_basis_with_budget(ideal: &BinomialIdeal, budget: usize) -> Result<StandardBasis> {
    ideal.validate()?;
    let xs: Vec<usize> = (0..ideal.num_x).collect();
    standard_basis_of_lattice(&ideal.relation_lattice(), &xs, budget)
}
