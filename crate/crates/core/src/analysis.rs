//! Numeric utilities and empirical lemma checkers.
//!
//! The closed-form side (φ, `c_{a,b}`, the β/γ roots and the expansion-lemma
//! conditions) is deterministic. The empirical side measures, on generated
//! graphs, the quantities the asymptotic statements are about.

use std::f64::consts::E;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::generate::{generate, project, GenParams};
use crate::graph::{neighbourhood_size_masked, simple_view, AttachGraph, Model, SimpleView, Vertex};
use crate::rng::{derive_seed, rng_from_seed};

/// `φ(x) = (1+x) log(1+x) − x`, with `φ(−1) = 1`.
pub fn phi(x: f64) -> Result<f64> {
    if x.is_nan() || x < -1.0 {
        return Err(Error::param(format!("phi is defined for x >= -1, got {x}")));
    }
    if x == -1.0 {
        return Ok(1.0);
    }
    Ok((1.0 + x) * x.ln_1p() - x)
}

/// Neumaier-compensated running sum.
#[derive(Debug, Default, Clone, Copy)]
struct CompensatedSum {
    sum: f64,
    carry: f64,
}

impl CompensatedSum {
    fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.carry += (self.sum - t) + v;
        } else {
            self.carry += (v - t) + self.sum;
        }
        self.sum = t;
    }

    fn value(self) -> f64 {
        self.sum + self.carry
    }
}

/// `c_{a,b} = ∏_{i=a+1}^{b} (2i−1)/(2i)`, accumulated in log space.
pub fn c_product(a: u64, b: u64) -> Result<f64> {
    if a > b {
        return Err(Error::param(format!("c_product needs a <= b, got {a} > {b}")));
    }
    let mut acc = CompensatedSum::default();
    for i in a + 1..=b {
        acc.add((-0.5 / i as f64).ln_1p());
    }
    Ok(acc.value().exp())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Root {
    pub value: f64,
    pub residual: f64,
    /// Sign changes seen while bracketing; more than one means the largest
    /// root was taken.
    pub sign_changes: usize,
}

fn largest_root(f: impl Fn(f64) -> f64, lo: f64, hi: f64) -> Root {
    const GRID: usize = 4000;
    let ratio = (hi / lo).ln();
    let point = |i: usize| lo * (ratio * i as f64 / GRID as f64).exp();
    let mut bracket = None;
    let mut changes = 0;
    let mut prev = (lo, f(lo));
    for i in 1..=GRID {
        let x = if i == GRID { hi } else { point(i) };
        let fx = f(x);
        if (prev.1 < 0.0) != (fx < 0.0) {
            changes += 1;
            bracket = Some((prev.0, x));
        }
        prev = (x, fx);
    }
    let (mut a, mut b) = bracket.unwrap_or((lo, hi));
    let fa_neg = f(a) < 0.0;
    while b - a > 1e-13 {
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            break;
        }
        if (f(mid) < 0.0) == fa_neg {
            a = mid;
        } else {
            b = mid;
        }
    }
    // finish to floating-point convergence
    loop {
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            break;
        }
        if (f(mid) < 0.0) == fa_neg {
            a = mid;
        } else {
            b = mid;
        }
    }
    let value = if f(a).abs() <= f(b).abs() { a } else { b };
    Root {
        value,
        residual: f(value),
        sign_changes: changes,
    }
}

fn xlogx(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        x * x.ln()
    }
}

pub fn beta_equation(b: f64, m: f64) -> f64 {
    2.0 * xlogx(b) + xlogx(1.0 - 2.0 * b) + b * b * m / 4.0
}

pub fn gamma_equation(g: f64, m: f64) -> f64 {
    xlogx(g) + xlogx(1.0 - g) + g * g * m / 2.0
}

pub fn beta_root(m: u32) -> Result<Root> {
    if m < 12 {
        return Err(Error::param(format!("beta(m) needs m >= 12, got {m}")));
    }
    let m = m as f64;
    Ok(largest_root(|b| beta_equation(b, m), 1e-9, 0.5 - 1e-9))
}

pub fn gamma_root(m: u32) -> Result<Root> {
    if m < 1 {
        return Err(Error::param("gamma(m) needs m >= 1"));
    }
    let m = m as f64;
    Ok(largest_root(|g| gamma_equation(g, m), 1e-9, 1.0 - 1e-9))
}

/// Root in `(0, 1/2)` of `2β log β + (1−2β) log(1−2β) + β²m/4 = 0`.
pub fn beta_of_m(m: u32) -> Result<f64> {
    beta_root(m).map(|r| r.value)
}

/// Root in `(0, 1)` of `γ log γ + (1−γ) log(1−γ) + γ²m/2 = 0`.
pub fn gamma_of_m(m: u32) -> Result<f64> {
    gamma_root(m).map(|r| r.value)
}

/// Parameters of the expansion lemma.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConstantSet {
    pub m: u32,
    pub ell: u8,
    pub alpha: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
    pub d: f64,
    /// Use the strengthened third and fourth α-bounds (needed for the
    /// preferential-attachment projection).
    #[serde(default)]
    pub primed: bool,
}

impl ConstantSet {
    /// The four published sets, labelled `a`–`d`.
    pub fn published(label: char) -> Option<ConstantSet> {
        let c = |m, ell, alpha, x, y, z, d, primed| ConstantSet {
            m,
            ell,
            alpha,
            x,
            y,
            z,
            d,
            primed,
        };
        Some(match label {
            'a' => c(120, 1, 0.0538, 0.22791, 0.020063, 0.851649, 0.387967, false),
            'b' => c(2900, 2, 0.032003, 0.048929, 0.003625, 0.965269, 0.353628, false),
            'c' => c(500, 1, 0.016801, 0.149159, 0.008856, 0.905885, 0.649188, true),
            'd' => c(14000, 2, 0.008874, 0.026228, 0.001272, 0.980855, 0.551906, true),
            _ => return None,
        })
    }

    pub fn validate(&self) -> Result<()> {
        if self.m == 0 {
            return Err(Error::param("m must be at least 1"));
        }
        if !matches!(self.ell, 1 | 2) {
            return Err(Error::param("ell must be 1 or 2"));
        }
        for (name, v) in [
            ("alpha", self.alpha),
            ("x", self.x),
            ("y", self.y),
            ("z", self.z),
            ("d", self.d),
        ] {
            if !(v > 0.0 && v < 1.0) {
                return Err(Error::param(format!("{name} must lie in (0, 1), got {v}")));
            }
        }
        Ok(())
    }

    /// `w = √(8/m) · log(e(1 + 1/((ℓ+1)α^d)))`.
    pub fn w(&self) -> f64 {
        let l1 = self.ell as f64 + 1.0;
        (8.0 / self.m as f64).sqrt() * (E * (1.0 + 1.0 / (l1 * self.alpha.powf(self.d)))).ln()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Condition {
    pub name: String,
    pub lhs: f64,
    pub rhs: f64,
    /// `"<"` or `">"`.
    pub relation: String,
    pub satisfied: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConditionReport {
    pub set: ConstantSet,
    pub conditions: Vec<Condition>,
    pub w: Option<f64>,
    pub overall: bool,
}

impl ConditionReport {
    pub fn failing(&self) -> impl Iterator<Item = &Condition> {
        self.conditions.iter().filter(|c| !c.satisfied)
    }
}

fn less(name: &str, lhs: f64, rhs: f64) -> Condition {
    Condition {
        name: name.to_string(),
        lhs,
        rhs,
        relation: "<".into(),
        satisfied: lhs < rhs,
    }
}

/// Evaluates every hypothesis of the expansion lemma for `c`.
pub fn check_conditions(c: &ConstantSet) -> Result<ConditionReport> {
    c.validate()?;
    let m = c.m as f64;
    let l = c.ell as f64;
    let l1 = l + 1.0;
    let l_log_l = l * l.ln();
    let phim = (1.0 - c.d) * phi(-c.x)? * m - c.d;
    let dzm = c.d * (1.0 - c.z) * m;

    let mut conditions = vec![
        less("zrange_lower", c.y, c.z),
        less("zrange_upper", c.z, 1.0 - l1 / (c.d * m)),
        Condition {
            name: "dphim".into(),
            lhs: phim,
            rhs: 0.0,
            relation: ">".into(),
            satisfied: phim > 0.0,
        },
        less(
            "alphabound1",
            c.alpha,
            if phim > 0.0 {
                (0.99 * c.y / E).powf(1.0 / phim)
            } else {
                f64::NAN
            },
        ),
        less(
            "alphabound2",
            c.alpha,
            (-(l1 - c.z) / ((1.0 - c.x) * (1.0 - c.d) * (c.z - c.y))).exp(),
        ),
    ];
    let w = c.primed.then(|| c.w());
    let (num3, log4, suffix) = match w {
        Some(w) => (8.0 / 3.0, ((2.0 + w).powi(2) * l1).ln(), "'"),
        None => (1.0, l1.ln(), ""),
    };
    conditions.push(less(
        &format!("alphabound3{suffix}"),
        c.alpha,
        1.0 / l1 - num3 / dzm,
    ));
    let denom4 = dzm - l1;
    conditions.push(less(
        &format!("alphabound4{suffix}"),
        c.alpha,
        if denom4 > 0.0 {
            (-((1.0 - c.z) * m * log4 + l1 - l_log_l) / denom4).exp()
        } else {
            f64::NAN
        },
    ));
    let overall = conditions.iter().all(|c| c.satisfied);
    Ok(ConditionReport {
        set: *c,
        conditions,
        w,
        overall,
    })
}

fn require_model(g: &AttachGraph, model: Model) -> Result<()> {
    if g.model() != model {
        return Err(Error::ModelMismatch {
            expected: model.tag(),
            found: g.model().tag(),
        });
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Trajectory {
    /// Size of the old set `[⌊cn⌋]`.
    pub k: usize,
    /// `values[i]` is `Y_t` at `t = k + i`.
    pub values: Vec<u64>,
    /// `2mn √(ct/n)` at the same times.
    pub reference: Vec<f64>,
}

impl Trajectory {
    pub fn final_ratio(&self) -> f64 {
        self.values.last().copied().unwrap_or(0) as f64 / self.reference.last().copied().unwrap_or(1.0)
    }
}

/// `Y_t = Σ_{w ≤ cn} deg(w, t)` for `t` from `⌊cn⌋` to `n`.
pub fn degree_sum_trajectory(g: &AttachGraph, c: f64) -> Result<Trajectory> {
    require_model(g, Model::Preferential)?;
    if !(c > 0.0 && c < 1.0) {
        return Err(Error::param(format!("c must lie in (0, 1), got {c}")));
    }
    let n = g.n() as usize;
    let m = g.m() as u64;
    let k = ((c * n as f64).floor() as usize).max(1);
    let mut y = 2 * m * k as u64;
    let mut values = Vec::with_capacity(n - k + 1);
    values.push(y);
    for t in k + 1..=n {
        y += g
            .stems_of(t as Vertex)
            .iter()
            .filter(|&&s| (s as usize) <= k)
            .count() as u64;
        values.push(y);
    }
    let scale = 2.0 * m as f64 * n as f64;
    let reference = (k..=n)
        .map(|t| scale * (c * t as f64 / n as f64).sqrt())
        .collect();
    Ok(Trajectory {
        k,
        values,
        reference,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DegreeViolation {
    pub k: usize,
    pub t: usize,
    pub sum: u64,
    pub bound: f64,
    pub ratio: f64,
    /// `true` for the oldest-`k` set, `false` for a sampled set.
    pub oldest: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RatioBucket {
    pub k: usize,
    pub decile: usize,
    pub max_ratio: f64,
    pub mean_ratio: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DegreeBoundReport {
    pub a: f64,
    pub omega: usize,
    pub checked: u64,
    pub violations: Vec<DegreeViolation>,
    pub buckets: Vec<RatioBucket>,
}

/// Right-hand side of the total-degree bound for a `k`-set at time `t`.
pub fn degree_sum_bound(m: u32, k: usize, t: usize, a: f64, omega: usize) -> f64 {
    let (m, kf, tf) = (m as f64, k as f64, t as f64);
    if t >= omega {
        (1.0 + a / (m * kf + 1.0))
            * (2.0 * m * (kf * tf).sqrt() + (8.0 * m * kf * tf).sqrt() * (E * tf / kf).ln())
    } else {
        2.0 * m * omega as f64
    }
}

/// Checks the total-degree bound for the oldest-`k` sets at every `t ≥ k`,
/// plus `random_sets` sampled sets per `k`.
pub fn oldest_degree_bound_check(
    g: &AttachGraph,
    a: f64,
    omega: usize,
    ks: &[usize],
    random_sets: usize,
    seed: u64,
) -> Result<DegreeBoundReport> {
    require_model(g, Model::Preferential)?;
    let n = g.n() as usize;
    let m = g.m();
    let mut rng = rng_from_seed(seed);
    let mut report = DegreeBoundReport {
        a,
        omega,
        checked: 0,
        violations: Vec::new(),
        buckets: Vec::new(),
    };
    let mut member = vec![false; n + 1];
    for &k in ks {
        if k == 0 || k > n {
            return Err(Error::param(format!("set size {k} outside 1..={n}")));
        }
        let mut ratios: Vec<(usize, f64)> = Vec::new();
        let mut sets: Vec<(Vec<Vertex>, bool)> = vec![((1..=k as Vertex).collect(), true)];
        for _ in 0..random_sets {
            let top = rng.gen_range(k..=n);
            let mut pool: Vec<Vertex> = (1..=top as Vertex).collect();
            pool.shuffle(&mut rng);
            pool.truncate(k);
            sets.push((pool, false));
        }
        for (set, oldest) in sets {
            let start = *set.iter().max().unwrap() as usize;
            for &v in &set {
                member[v as usize] = true;
            }
            let deg = g.degrees_at(start as Vertex);
            let mut sum: u64 = set.iter().map(|&v| deg[v as usize]).sum();
            for t in start..=n {
                if t > start {
                    sum += g
                        .stems_of(t as Vertex)
                        .iter()
                        .filter(|&&s| member[s as usize])
                        .count() as u64;
                }
                let bound = degree_sum_bound(m, k, t, a, omega);
                let ratio = sum as f64 / bound;
                report.checked += 1;
                ratios.push((t, ratio));
                if sum as f64 > bound {
                    report.violations.push(DegreeViolation {
                        k,
                        t,
                        sum,
                        bound,
                        ratio,
                        oldest,
                    });
                }
            }
            for &v in &set {
                member[v as usize] = false;
            }
        }
        let span = (n - k + 1) as f64;
        let mut acc = vec![(0.0f64, 0.0f64, 0usize); 10];
        for (t, r) in ratios {
            let dec = (((t - k) as f64 / span) * 10.0).floor() as usize;
            let b = &mut acc[dec.min(9)];
            b.0 = b.0.max(r);
            b.1 += r;
            b.2 += 1;
        }
        for (decile, (max, total, count)) in acc.into_iter().enumerate() {
            if count > 0 {
                report.buckets.push(RatioBucket {
                    k,
                    decile,
                    max_ratio: max,
                    mean_ratio: total / count as f64,
                });
            }
        }
    }
    Ok(report)
}

/// Searches for `K` with `1 ≤ |K| ≤ αn` and `|N(K)| < ℓ|K|`.
///
/// Every `K` with `|K| ≤ min(⌊αn⌋, k_max)` is tested; since each member of a
/// violator has degree at most `(ℓ+1)|K| − 2`, only such vertices are
/// combined. Then `random_budget` greedy low-degree clusters grown from random
/// seeds are tested at every size up to `⌊αn⌋`.
pub fn expansion_check(
    g: &SimpleView,
    alpha: f64,
    ell: u8,
    k_max: usize,
    random_budget: usize,
    seed: u64,
) -> Option<Vec<Vertex>> {
    let n = g.n();
    let ell = ell as usize;
    let limit = ((alpha * n as f64).floor() as usize).min(n);
    let mut in_k = vec![false; n + 1];
    let violates = |set: &[Vertex], in_k: &[bool]| {
        neighbourhood_size_masked(g, set, in_k) < ell * set.len()
    };

    for k in 1..=limit.min(k_max) {
        let cap = (ell + 1) * k;
        let cands: Vec<Vertex> = g
            .vertices()
            .filter(|&v| g.degree(v) + 2 <= cap)
            .collect();
        if cands.len() < k {
            continue;
        }
        let mut idx: Vec<usize> = (0..k).collect();
        let mut set = vec![0; k];
        loop {
            for (s, &i) in set.iter_mut().zip(&idx) {
                *s = cands[i];
                in_k[*s as usize] = true;
            }
            let bad = violates(&set, &in_k);
            for &s in &set {
                in_k[s as usize] = false;
            }
            if bad {
                return Some(set);
            }
            // next combination
            let mut i = k;
            while i > 0 && idx[i - 1] == cands.len() - k + i - 1 {
                i -= 1;
            }
            if i == 0 {
                break;
            }
            idx[i - 1] += 1;
            for j in i..k {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }

    let mut rng = rng_from_seed(seed);
    for _ in 0..random_budget {
        if limit == 0 {
            break;
        }
        let mut set = vec![rng.gen_range(1..=n as Vertex)];
        in_k[set[0] as usize] = true;
        let mut found = false;
        while set.len() <= limit {
            if violates(&set, &in_k) {
                found = true;
                break;
            }
            let frontier: Vec<Vertex> = set
                .iter()
                .flat_map(|&v| g.neighbours(v).iter().copied())
                .filter(|&w| !in_k[w as usize])
                .collect();
            let Some(&next) = frontier.iter().min_by_key(|&&w| (g.degree(w), rng.gen::<u32>())) else {
                break;
            };
            in_k[next as usize] = true;
            set.push(next);
        }
        for &v in &set {
            in_k[v as usize] = false;
        }
        if found {
            set.sort_unstable();
            return Some(set);
        }
    }
    None
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GoodVerticesReport {
    pub k: usize,
    pub j: usize,
    pub threshold: f64,
    pub count: usize,
}

/// Counts vertices of `[j]`, `j = ⌊k(n/k)^d⌋`, with fewer than
/// `(1−x)·m·log(n/j)` neighbours in `[n] ∖ [j]`.
///
/// For preferential graphs the lemma concerns the blue projection of a
/// `2m`-per-vertex graph, so `m` is taken as half the graph's out-degree.
pub fn good_vertices_check(g: &AttachGraph, x: f64, d: f64, k: usize) -> Result<GoodVerticesReport> {
    let n = g.n() as usize;
    if k == 0 || k > n {
        return Err(Error::param(format!("k must lie in 1..={n}, got {k}")));
    }
    let m_eff = match g.model() {
        Model::Uniform => g.m() as f64,
        Model::Preferential => g.m() as f64 / 2.0,
    };
    let j = ((k as f64 * (n as f64 / k as f64).powf(d)).floor() as usize).clamp(1, n);
    let threshold = (1.0 - x) * m_eff * (n as f64 / j as f64).ln();
    let view = simple_view(g);
    let count = (1..=j as Vertex)
        .filter(|&v| {
            let later = view.neighbours(v).iter().filter(|&&w| w as usize > j).count();
            (later as f64) < threshold
        })
        .count();
    Ok(GoodVerticesReport {
        k,
        j,
        threshold,
        count,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EdgeAbsenceReport {
    pub trials: usize,
    pub frequency: f64,
    /// Binomial standard error at the observed frequency.
    pub std_err: f64,
    /// `(1 − |W|/(v−1))^{m_σ}`: exact for uniform attachment.
    pub exact_uniform: f64,
    /// `(1 − |W|/(2n))^{m_σ}`.
    pub bound_future: f64,
    /// `(1 − |W|/(2v))^{m_σ}`.
    pub bound_past: f64,
}

/// Frequency over `trials` graphs of "no edge between `v` and `W`" in the
/// projection `σ` (or the whole graph when `params` is uncoloured).
pub fn edge_absence_freq(
    params: &GenParams,
    v: Vertex,
    w: &[Vertex],
    sigma: u8,
    trials: usize,
) -> Result<EdgeAbsenceReport> {
    if trials == 0 {
        return Err(Error::param("trials must be at least 1"));
    }
    if v == 0 || v > params.n {
        return Err(Error::VertexOutOfRange {
            vertex: v as u64,
            n: params.n as u64,
        });
    }
    if let Some(&bad) = w.iter().find(|&&u| u == 0 || u >= v) {
        return Err(Error::param(format!("W must lie in [v-1]; {bad} does not")));
    }
    let m_sigma = match (params.coloured, sigma) {
        (false, 1) => params.m1,
        (true, 1) => params.m1,
        (true, 2) => params.m2,
        _ => return Err(Error::param(format!("projection index must be 1 or 2, got {sigma}"))),
    };
    let mut in_w = vec![false; v as usize];
    for &u in w {
        in_w[u as usize] = true;
    }
    let mut absent = 0usize;
    for i in 0..trials {
        let p = params.with_seed(derive_seed(params.seed, &[i as u64]));
        let g = generate(&p)?;
        let g = if params.coloured { project(&g, sigma)? } else { g };
        if !g.stems_of(v).iter().any(|&t| t < v && in_w[t as usize]) {
            absent += 1;
        }
    }
    let freq = absent as f64 / trials as f64;
    let size = {
        let mut ws = w.to_vec();
        ws.sort_unstable();
        ws.dedup();
        ws.len() as f64
    };
    let ms = m_sigma as i32;
    let exact_uniform = if v > 1 {
        (1.0 - size / (v as f64 - 1.0)).powi(ms)
    } else {
        1.0
    };
    Ok(EdgeAbsenceReport {
        trials,
        frequency: freq,
        std_err: (freq * (1.0 - freq) / trials as f64).sqrt(),
        exact_uniform,
        bound_future: (1.0 - size / (2.0 * params.n as f64)).powi(ms),
        bound_past: (1.0 - size / (2.0 * v as f64)).powi(ms),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NeighboursInQReport {
    pub trials: usize,
    pub frequency: f64,
    pub bound: f64,
    pub c: f64,
}

/// Report-only companion of the "all neighbours in `Q`" bound: samples
/// `R ⊆ [n] ∖ [j]` of size `r` and `Q ⊆ [n]` of size `q` per trial and
/// measures how often every neighbour of every `v ∈ R` (in projection `σ`)
/// lies in `Q`. The bound drops the `o(1)` term.
#[allow(clippy::too_many_arguments)]
pub fn neighbours_in_q_freq(
    params: &GenParams,
    j: usize,
    r: usize,
    q: usize,
    sigma: u8,
    c: f64,
    trials: usize,
) -> Result<NeighboursInQReport> {
    let n = params.n as usize;
    if trials == 0 || j >= n || r == 0 || r > n - j || q == 0 || q > n {
        return Err(Error::param("need trials >= 1, j < n, 1 <= r <= n-j, 1 <= q <= n"));
    }
    if !params.coloured && sigma != 1 || !matches!(sigma, 1 | 2) {
        return Err(Error::param(format!("invalid projection index {sigma}")));
    }
    let m_sigma = if sigma == 1 { params.m1 } else { params.m2 };
    let mut rng = rng_from_seed(derive_seed(params.seed, &[u64::MAX]));
    let mut hits = 0;
    for i in 0..trials {
        let p = params.with_seed(derive_seed(params.seed, &[i as u64]));
        let g = generate(&p)?;
        let g = if params.coloured { project(&g, sigma)? } else { g };
        let view = simple_view(&g);
        let mut young: Vec<Vertex> = (j as Vertex + 1..=n as Vertex).collect();
        young.shuffle(&mut rng);
        let mut all: Vec<Vertex> = (1..=n as Vertex).collect();
        all.shuffle(&mut rng);
        let mut in_q = vec![false; n + 1];
        for &u in &all[..q] {
            in_q[u as usize] = true;
        }
        if young[..r]
            .iter()
            .all(|&v| view.neighbours(v).iter().all(|&w| in_q[w as usize]))
        {
            hits += 1;
        }
    }
    let (qf, jf, m) = (q as f64, j as f64, params.m() as f64);
    let base = (1.0 + c / qf)
        * (2.0 * (qf / jf).sqrt() + (8.0 * qf / (m * jf)).sqrt() * (E * (1.0 + jf / qf)).ln());
    Ok(NeighboursInQReport {
        trials,
        frequency: hits as f64 / trials as f64,
        bound: base.powf(m_sigma as f64 * r as f64),
        c,
    })
}
