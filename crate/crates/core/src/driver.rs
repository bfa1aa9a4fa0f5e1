//! Global resolution of a binomial subvariety of a smooth toric variety.
//!
//! Every chart of the fan carries the strict transform as the lattice ideal
//! of the transformed relation lattice. Each step evaluates the invariant at
//! the distinguished point of every chart, blows up the centres of the
//! charts where `(inv, J)` is largest, and checks that `(inv, mu)` dropped
//! at every new point over them. Once every chart is smooth, a second pass
//! separates the exceptional divisors until they cross normally.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use serde::Serialize;

use crate::binomial::{degree, BinomialIdeal};
use crate::fan::{Cone, Fan, LatticeVector};
use crate::lattice::Lattice;
use crate::marked::{chart_invariant, incidence_invariant, ChartContext, Invariant};
use crate::par::{self, Strategy};
use crate::samuel::{ChartPresentation, Role};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    /// `E` starts with the coordinate hyperplanes in index order.
    Toric,
    CanonicalToric,
    CanonicalBinomial,
}

impl Mode {
    pub fn is_canonical(self) -> bool {
        !matches!(self, Mode::Toric)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Toric => "toric",
            Mode::CanonicalToric => "canonical-toric",
            Mode::CanonicalBinomial => "canonical-binomial",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "toric" => Ok(Mode::Toric),
            "canonical-toric" => Ok(Mode::CanonicalToric),
            "canonical-binomial" => Ok(Mode::CanonicalBinomial),
            other => Err(Error::invalid(format!("unknown mode {other:?}"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Problem {
    pub ideal: BinomialIdeal,
    pub mode: Mode,
    /// Ambient fan in `N = Z^(num_x + num_y)`. Defaults to the cone over the
    /// first `num_x` basis vectors, so the `y` variables are torus
    /// coordinates.
    pub ambient: Fan,
    pub budget: Option<usize>,
    pub strategy: Strategy,
}

impl Problem {
    pub fn new(ideal: BinomialIdeal, mode: Mode) -> Self {
        let ambient = Self::affine_fan(&ideal, &(0..ideal.num_x).collect::<Vec<_>>());
        Problem { ideal, mode, ambient, budget: None, strategy: Strategy::default() }
    }

    /// The open subset where the `x` variables outside `keep` are invertible.
    pub fn affine_fan(ideal: &BinomialIdeal, keep: &[usize]) -> Fan {
        let n = ideal.num_vars();
        let cone = Cone::new(n, keep.iter().map(|&i| LatticeVector::unit(n, i)).collect())
            .expect("coordinate cones are regular");
        Fan::new(n, vec![cone]).expect("single cone")
    }

    pub fn with_ambient(mut self, ambient: Fan) -> Self {
        self.ambient = ambient;
        self
    }

    pub fn with_strategy(mut self, strategy: Strategy) -> Self {
        self.strategy = strategy;
        self
    }

    pub fn with_budget(mut self, budget: usize) -> Self {
        self.budget = Some(budget);
        self
    }

    /// `10 * (sum of generator degrees) * n`.
    pub fn default_budget(&self) -> usize {
        let total: i64 = self
            .ideal
            .generators
            .iter()
            .map(|g| degree(&g.alpha).max(degree(&g.beta) + degree(&g.gamma)))
            .sum();
        10 * (total.max(1) as usize) * self.ideal.num_vars().max(1)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Phase {
    /// Lowering the Hilbert-Samuel function until every chart is smooth.
    Singular,
    /// Separating exceptional divisors on the smooth strict transform.
    NormalCrossings,
}

/// One line of the step trace.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraceRecord {
    pub centre_vars: Vec<String>,
    pub chart: usize,
    pub inv: Vec<String>,
    pub j_set: Vec<usize>,
    pub mode: String,
    pub mu: Option<String>,
    pub step: usize,
}

#[derive(Clone, Debug)]
pub struct Step {
    pub phase: Phase,
    /// Pairwise disjoint faces blown up together.
    pub centres: Vec<Cone>,
    pub invariant: Invariant,
    /// Largest order of a standard basis element over all charts, after the
    /// step.
    pub max_order_after: i64,
}

#[derive(Clone, Debug)]
pub struct Resolution {
    pub fan: Fan,
    pub steps: Vec<Step>,
    pub trace: Vec<TraceRecord>,
    /// Rays of `E` in order; ids in traces index this list.
    pub exceptional: Vec<LatticeVector>,
    /// Number of initial members of `exceptional` that are not exceptional
    /// divisors (the coordinate hyperplanes in toric mode).
    pub initial_divisors: usize,
    pub initial_max_order: i64,
    pub charts: Vec<FinalChart>,
}

impl Resolution {
    pub fn singular_steps(&self) -> usize {
        self.steps.iter().filter(|s| s.phase == Phase::Singular).count()
    }

    /// Steps until the largest order drops below `d`, if it does.
    pub fn steps_until_order_below(&self, d: i64) -> Option<usize> {
        if self.initial_max_order < d {
            return Some(0);
        }
        self.steps.iter().position(|s| s.max_order_after < d).map(|k| k + 1)
    }

    pub fn trace_jsonl(&self) -> String {
        self.trace.iter().map(|r| crate::json::canonical(r) + "\n").collect()
    }
}

/// A chart of the final fan with the verdict of the normal crossings check.
#[derive(Clone, Debug)]
pub struct FinalChart {
    pub cone: Cone,
    pub presentation: Arc<ChartPresentation>,
    pub smooth: bool,
    pub normal_crossings: bool,
}

/// Strict transform in the chart of a cone.
pub fn chart_presentation(ideal: &BinomialIdeal, cone: &Cone, names: &dyn Fn(&LatticeVector) -> String) -> Result<ChartPresentation> {
    let n = ideal.num_vars();
    let basis = cone.chart_basis(n);
    let rel = ideal.relation_lattice();
    let rows: Vec<Vec<BigInt>> = rel
        .basis()
        .iter()
        .map(|l| basis.iter().map(|b| b.0.iter().zip(l).map(|(x, y)| x * y).sum()).collect())
        .collect();
    let lattice = Lattice::from_generators(n, &rows);
    let labels: Vec<String> = basis
        .iter()
        .enumerate()
        .map(|(k, b)| if k < cone.dim() { names(b) } else { format!("t{}", k + 1) })
        .collect();
    let x_vars: Vec<usize> = (0..cone.dim()).collect();
    ChartPresentation::from_lattice(labels, lattice, &x_vars)
}

struct Charts {
    ideal: BinomialIdeal,
    names: BTreeMap<LatticeVector, String>,
    cache: BTreeMap<Cone, Arc<ChartPresentation>>,
}

impl Charts {
    fn get_all(&mut self, cones: &[Cone], strategy: Strategy) -> Result<Vec<Arc<ChartPresentation>>> {
        let missing: Vec<Cone> = cones.iter().filter(|c| !self.cache.contains_key(*c)).cloned().collect();
        let names = &self.names;
        let ideal = &self.ideal;
        let label = |v: &LatticeVector| names.get(v).cloned().unwrap_or_else(|| v.to_string());
        let built = par::map(strategy, &missing, |c| chart_presentation(ideal, c, &label));
        for (c, p) in missing.into_iter().zip(built) {
            self.cache.insert(c, Arc::new(p?));
        }
        Ok(cones.iter().map(|c| self.cache[c].clone()).collect())
    }
}

fn e_ids(cone: &Cone, cp: &ChartPresentation, record: &[LatticeVector]) -> Vec<Option<usize>> {
    (0..cp.num_vars())
        .map(|k| cone.vertices().get(k).and_then(|v| record.iter().position(|r| r == v)))
        .collect()
}

fn face_of(cone: &Cone, vars: &[usize]) -> Cone {
    Cone::new(
        cone.vertices()[0].rank(),
        vars.iter().map(|&k| cone.vertices()[k].clone()).collect(),
    )
    .expect("faces of regular cones are regular")
}

fn max_order(cp: &ChartPresentation) -> i64 {
    cp.basis.elements.iter().map(|f| f.order()).max().unwrap_or(1)
}

/// Exceptional divisors (chart variables) that fail to cross the smooth
/// strict transform normally in this chart: a divisor restricting to a
/// non-reduced or reducible monomial hypersurface of `N`, or two divisors
/// with the same restriction.
pub fn bad_divisors(cp: &ChartPresentation, exceptional: &[usize]) -> Result<Vec<usize>> {
    let mut restriction: Vec<(usize, Vec<i64>)> = Vec::new();
    let tails = cp.solved_tails();
    let mut bad = Vec::new();
    for &k in exceptional {
        match cp.roles[k] {
            Role::Unit => {}
            Role::Essential => return Err(Error::invalid("normal crossings check on a singular chart")),
            Role::Free => {
                let mut e = vec![0; cp.num_vars()];
                e[k] = 1;
                restriction.push((k, e));
            }
            Role::Solved => {
                let tail = &tails.iter().find(|(v, _)| *v == k).expect("solved variable has a tail").1;
                match degree(tail) {
                    0 => {}
                    1 => restriction.push((k, tail.clone())),
                    _ => bad.push(k),
                }
            }
        }
    }
    for (i, (a, ea)) in restriction.iter().enumerate() {
        if restriction.iter().enumerate().any(|(j, (_, eb))| i != j && ea == eb) {
            bad.push(*a);
        }
    }
    bad.sort_unstable();
    bad.dedup();
    Ok(bad)
}

struct Evaluated {
    chart: usize,
    /// Cone of the orbit through the distinguished point.
    point: Cone,
    invariant: Invariant,
    centre: Cone,
}

fn point_of(cone: &Cone, cp: &ChartPresentation) -> Cone {
    face_of(cone, &cp.basis.x_vars)
}

/// Resolves the problem: blowups until every chart is smooth, then until
/// the exceptional divisors cross the strict transform normally.
pub fn resolve(problem: &Problem) -> Result<Resolution> {
    let ideal = &problem.ideal;
    let n = ideal.num_vars();
    if problem.ambient.rank() != n {
        return Err(Error::invalid("ambient fan rank differs from the number of variables"));
    }
    ideal.validate()?;
    let budget = problem.budget.unwrap_or_else(|| problem.default_budget());
    let mut names = BTreeMap::new();
    for (i, name) in ideal.variable_names().into_iter().enumerate() {
        names.insert(LatticeVector::unit(n, i), name);
    }
    let mut charts = Charts { ideal: ideal.clone(), names, cache: BTreeMap::new() };
    let mut fan = problem.ambient.clone();
    let mut record: Vec<LatticeVector> = Vec::new();
    if !problem.mode.is_canonical() {
        let rays = fan.rays();
        for i in 0..ideal.num_x {
            let v = LatticeVector::unit(n, i);
            if rays.contains(&v) {
                record.push(v);
            }
        }
    }
    let initial_divisors = record.len();
    let mut births = 0usize;
    let mut steps: Vec<Step> = Vec::new();
    let mut trace = Vec::new();
    let mut frozen: Option<Vec<LatticeVector>> = None;

    let first = charts.get_all(fan.maximal_cones(), problem.strategy)?;
    let initial_max_order = first.iter().map(|c| max_order(c)).max().unwrap_or(1);

    loop {
        let cones: Vec<Cone> = fan.maximal_cones().to_vec();
        let cps = charts.get_all(&cones, problem.strategy)?;
        let singular = cps.iter().any(|c| !c.is_smooth());
        // Theta stays fixed for one pass (only strict transforms are
        // followed) until the strict transform misses all of it.
        if singular {
            frozen = None;
        } else if let Some(t) = &frozen {
            let meets = par::map_range(problem.strategy, cones.len(), |k| evaluate(&cones[k], &cps[k], &record, t, false));
            let mut any = false;
            for m in meets {
                any |= m?.is_some();
            }
            if !any {
                frozen = None;
            }
        }
        if !singular && frozen.is_none() {
            let per_chart = par::map_range(problem.strategy, cones.len(), |k| {
                let ex = exceptional_vars(&cones[k], &cps[k], &record[initial_divisors..]);
                bad_divisors(&cps[k], &ex).map(|b| b.into_iter().map(|v| cones[k].vertices()[v].clone()).collect::<Vec<_>>())
            });
            let mut all = Vec::new();
            for b in per_chart {
                all.extend(b?);
            }
            all.sort();
            all.dedup();
            if all.is_empty() {
                break;
            }
            frozen = Some(all);
        }
        let theta: Vec<LatticeVector> = frozen.clone().unwrap_or_default();
        if steps.len() >= budget {
            return Err(Error::budget(format!("resolution exceeded {budget} steps; stuck at {}", stuck(&steps))));
        }
        let phase = if singular { Phase::Singular } else { Phase::NormalCrossings };
        let evals = par::map_range(problem.strategy, cones.len(), |k| evaluate(&cones[k], &cps[k], &record, &theta, singular));
        let mut found: Vec<Evaluated> = Vec::new();
        for (k, e) in evals.into_iter().enumerate() {
            if let Some((invariant, centre)) = e? {
                found.push(Evaluated { chart: k, point: point_of(&cones[k], &cps[k]), invariant, centre });
            }
        }
        let best = found
            .iter()
            .max_by(|a, b| a.invariant.cmp_centre_key(&b.invariant))
            .ok_or_else(|| Error::assertion("no chart carries the invariant"))?
            .invariant
            .clone();
        let mut centres: Vec<(Cone, &Evaluated)> = Vec::new();
        for ev in found.iter().filter(|e| e.invariant.cmp_centre_key(&best) == Ordering::Equal) {
            if !centres.iter().any(|(c, _)| *c == ev.centre) {
                centres.push((ev.centre.clone(), ev));
            }
        }
        centres.sort_by(|a, b| a.0.cmp(&b.0));
        for (i, (a, _)) in centres.iter().enumerate() {
            for (b, _) in &centres[i + 1..] {
                let joined: Vec<LatticeVector> = a.vertices().iter().chain(b.vertices()).cloned().collect();
                if fan.maximal_cones().iter().any(|s| joined.iter().all(|v| s.vertices().contains(v))) {
                    return Err(Error::assertion(format!("centres {a} and {b} of the maximal invariant meet")));
                }
            }
        }
        let step_no = steps.len() + 1;
        for (c, ev) in &centres {
            let cone = &cones[ev.chart];
            let cp = &cps[ev.chart];
            let vars: Vec<String> = c
                .vertices()
                .iter()
                .map(|v| cp.names[cone.vertices().iter().position(|w| w == v).expect("centre is a face")].clone())
                .collect();
            trace.push(TraceRecord {
                centre_vars: vars,
                chart: ev.chart,
                inv: ev.invariant.strings(),
                j_set: ev.invariant.j_set.clone(),
                mode: problem.mode.as_str().to_string(),
                mu: ev.invariant.mu.as_ref().map(|m| m.to_string()),
                step: step_no,
            });
        }
        let mut new_rays = Vec::new();
        for (c, _) in &centres {
            if c.dim() < 2 && phase == Phase::Singular {
                return Err(Error::assertion(format!("centre {c} is a divisor of the ambient space")));
            }
            fan = fan.star_subdivision(c)?;
            if c.dim() >= 2 {
                new_rays.push((c.barycentre(), c.clone()));
            }
        }
        for (r, _) in &new_rays {
            births += 1;
            charts.names.insert(r.clone(), format!("e{births}"));
            record.push(r.clone());
        }

        // Every new point over a centre carries a smaller (inv, mu) than the
        // point below it.
        let touched: Vec<Cone> = fan
            .maximal_cones()
            .iter()
            .filter(|s| new_rays.iter().any(|(r, _)| s.vertices().contains(r)))
            .cloned()
            .collect();
        let touched_cps = charts.get_all(&touched, problem.strategy)?;
        let checks = par::map_range(problem.strategy, touched.len(), |k| -> Result<()> {
            let cone = &touched[k];
            let cp = &touched_cps[k];
            let point = point_of(cone, cp);
            let mut below: Vec<LatticeVector> = Vec::new();
            let mut over = false;
            for v in point.vertices() {
                match new_rays.iter().find(|(r, _)| r == v) {
                    Some((_, c)) => {
                        over = true;
                        below.extend(c.vertices().iter().cloned());
                    }
                    None => below.push(v.clone()),
                }
            }
            if !over {
                return Ok(());
            }
            below.sort();
            below.dedup();
            let below = Cone::new(n, below).map_err(|_| Error::assertion(format!("point of {cone} maps to no orbit")))?;
            // Semicontinuity: the least value over evaluated specializations
            // bounds the value at the point below, and equals it when that
            // point is itself distinguished.
            let parent = found
                .iter()
                .filter(|e| e.point.contains_face(&below))
                .map(|e| &e.invariant)
                .min_by(|a, b| a.cmp_progress(b))
                .ok_or_else(|| Error::assertion(format!("no evaluated point specializes {below}")))?;
            if let Some((inv, _)) = evaluate(cone, cp, &record, &theta, singular)? {
                if inv.cmp_progress(parent) != Ordering::Less {
                    return Err(Error::assertion(format!(
                        "invariant did not drop at {cone}: {:?} mu={:?} over {:?} mu={:?}",
                        inv.strings(),
                        inv.mu,
                        parent.strings(),
                        parent.mu
                    )));
                }
            }
            Ok(())
        });
        for c in checks {
            c?;
        }
        let all = charts.get_all(fan.maximal_cones(), problem.strategy)?;
        let max_order_after = all.iter().map(|c| max_order(c)).max().unwrap_or(1);
        steps.push(Step { phase, centres: centres.into_iter().map(|(c, _)| c).collect(), invariant: best, max_order_after });
    }

    let cones: Vec<Cone> = fan.maximal_cones().to_vec();
    let cps = charts.get_all(&cones, problem.strategy)?;
    let mut finals = Vec::new();
    for (cone, cp) in cones.into_iter().zip(cps) {
        let ex = exceptional_vars(&cone, &cp, &record[initial_divisors..]);
        let smooth = cp.is_smooth();
        let normal_crossings = smooth && bad_divisors(&cp, &ex)?.is_empty();
        finals.push(FinalChart { cone, presentation: cp, smooth, normal_crossings });
    }
    Ok(Resolution { fan, steps, trace, exceptional: record, initial_divisors, initial_max_order, charts: finals })
}

/// Invariant and centre at the distinguished point of one chart.
fn evaluate(
    cone: &Cone,
    cp: &ChartPresentation,
    record: &[LatticeVector],
    theta: &[LatticeVector],
    singular: bool,
) -> Result<Option<(Invariant, Cone)>> {
    let ctx = ChartContext::from_chart(cp, e_ids(cone, cp, record));
    let found = if singular {
        chart_invariant(cp, &ctx)?
    } else {
        let hyps: Vec<usize> = (0..cone.dim()).filter(|&k| theta.contains(&cone.vertices()[k])).collect();
        incidence_invariant(cp, &ctx, &hyps)?
    };
    Ok(found.map(|(inv, centre)| (inv, face_of(cone, &centre))))
}

fn exceptional_vars(cone: &Cone, cp: &ChartPresentation, births: &[LatticeVector]) -> Vec<usize> {
    (0..cone.dim().min(cp.num_vars())).filter(|&k| births.contains(&cone.vertices()[k])).collect()
}

fn stuck(steps: &[Step]) -> String {
    steps.last().map_or_else(|| "the start".to_string(), |s| format!("{:?} mu={:?}", s.invariant.strings(), s.invariant.mu))
}

/// The resolution is canonical: resolving the open subset given by the
/// coordinate face `keep` yields the tower of the whole space with the
/// steps away from the subset dropped.
pub fn open_restriction_check(problem: &Problem, keep: &[usize]) -> Result<bool> {
    if !problem.mode.is_canonical() {
        return Err(Error::invalid("open restriction check needs a canonical mode"));
    }
    let n = problem.ideal.num_vars();
    if keep.iter().any(|&k| k >= problem.ideal.num_x) {
        return Err(Error::invalid("subfan must be a face of the coordinate cone"));
    }
    let full = resolve(problem)?;
    let sub_problem = problem.clone().with_ambient(Problem::affine_fan(&problem.ideal, keep));
    let sub = resolve(&sub_problem)?;
    let inside = |c: &Cone| c.vertices().iter().all(|v| (0..n).all(|j| keep.contains(&j) || v.0[j] == BigInt::from(0)));
    let restricted: Vec<Vec<Cone>> = full
        .steps
        .iter()
        .map(|s| s.centres.iter().filter(|c| inside(c)).cloned().collect::<Vec<_>>())
        .filter(|cs| !cs.is_empty())
        .collect();
    let direct: Vec<Vec<Cone>> = sub.steps.iter().map(|s| s.centres.clone()).collect();
    Ok(restricted == direct)
}
