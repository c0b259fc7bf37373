//! The two attachment processes and the blue/red two-round colouring.
//!
//! Both generators consume randomness in record order `(stem, ordinal)`, so a
//! graph is a pure function of its [`GenParams`].

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{AttachGraph, Colour, Model, Vertex};
use crate::rng::rng_from_seed;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenParams {
    pub model: Model,
    pub n: u32,
    pub m1: u32,
    pub m2: u32,
    pub seed: u64,
    /// Records are coloured blue/red by ordinal; otherwise plain (requires `m2 = 0`).
    pub coloured: bool,
}

impl GenParams {
    pub fn new(model: Model, n: u32, m: u32, seed: u64) -> Self {
        GenParams {
            model,
            n,
            m1: m,
            m2: 0,
            seed,
            coloured: false,
        }
    }

    pub fn coloured(model: Model, n: u32, m1: u32, m2: u32, seed: u64) -> Self {
        GenParams {
            model,
            n,
            m1,
            m2,
            seed,
            coloured: true,
        }
    }

    pub fn m(&self) -> u32 {
        self.m1 + self.m2
    }

    pub fn with_seed(self, seed: u64) -> Self {
        GenParams { seed, ..self }
    }

    fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::param("n must be at least 1"));
        }
        if !self.coloured && self.m2 != 0 {
            return Err(Error::param("m2 > 0 requires a coloured graph"));
        }
        if (self.n as u64) * (self.m() as u64) > u32::MAX as u64 / 2 {
            return Err(Error::param("n * m too large"));
        }
        Ok(())
    }
}

/// Dispatches on `p.model`.
pub fn generate(p: &GenParams) -> Result<AttachGraph> {
    match p.model {
        Model::Uniform => gen_uniform(p),
        Model::Preferential => gen_preferential(p),
    }
}

/// Uniform attachment: vertex 1 carries `m` loops, every later vertex `v`
/// picks `m` independent uniform targets in `[v-1]`.
pub fn gen_uniform(p: &GenParams) -> Result<AttachGraph> {
    if p.model != Model::Uniform {
        return Err(Error::ModelMismatch {
            expected: "ua",
            found: p.model.tag(),
        });
    }
    p.validate()?;
    let m = p.m() as usize;
    let mut rng = rng_from_seed(p.seed);
    let mut targets = Vec::with_capacity(p.n as usize * m);
    targets.extend(std::iter::repeat_n(1 as Vertex, m));
    for v in 2..=p.n {
        for _ in 0..m {
            targets.push(rng.gen_range(1..v));
        }
    }
    Ok(AttachGraph::from_parts_unchecked(
        Model::Uniform,
        p.n,
        p.m1,
        p.m2,
        p.coloured,
        p.seed,
        targets,
    ))
}

/// Preferential attachment via the `G_1^{mn}` process with blocks of `m`
/// consecutive vertices identified.
///
/// `slots` holds one entry per half-edge created so far, labelled with the
/// identified vertex it belongs to. At `G_1` time `t` there are `2(t-1)`
/// slots; the new half-edge is slot `2t-1`. Drawing `r` uniformly in
/// `1..=2t-1` and copying slot `r` (or looping when `r = 2t-1`) selects `s`
/// with probability `deg(s, t-1) / (2t-1)`.
pub fn gen_preferential(p: &GenParams) -> Result<AttachGraph> {
    if p.model != Model::Preferential {
        return Err(Error::ModelMismatch {
            expected: "pa",
            found: p.model.tag(),
        });
    }
    p.validate()?;
    let m = p.m() as usize;
    let total = p.n as usize * m;
    let mut rng = rng_from_seed(p.seed);
    let mut targets = Vec::with_capacity(total);
    let mut slots: Vec<Vertex> = Vec::with_capacity(2 * total);
    for step in 0..total {
        let stem = (step / m + 1) as Vertex;
        let last = 2 * step as u32 + 1; // 2t - 1 with t = step + 1
        let r = rng.gen_range(1..=last);
        let target = if r == last { stem } else { slots[r as usize - 1] };
        slots.push(stem);
        slots.push(target);
        targets.push(target);
    }
    Ok(AttachGraph::from_parts_unchecked(
        Model::Preferential,
        p.n,
        p.m1,
        p.m2,
        p.coloured,
        p.seed,
        targets,
    ))
}

/// `π_σ`: keeps the blue (`σ = 1`) or red (`σ = 2`) records.
///
/// The result is an uncoloured `m_σ`-per-vertex graph on the same vertex set.
pub fn project(g: &AttachGraph, sigma: u8) -> Result<AttachGraph> {
    let keep = match sigma {
        1 => 1..=g.m1(),
        2 => g.m1() + 1..=g.m(),
        _ => return Err(Error::param(format!("projection index must be 1 or 2, got {sigma}"))),
    };
    let m_sigma = if sigma == 1 { g.m1() } else { g.m2() };
    let targets: Vec<Vertex> = g
        .records()
        .filter(|r| keep.contains(&r.ordinal))
        .map(|r| {
            debug_assert!(r.colour == Colour::Plain || (r.colour == Colour::Blue) == (sigma == 1));
            r.target
        })
        .collect();
    Ok(AttachGraph::from_parts_unchecked(
        g.model(),
        g.n(),
        m_sigma,
        0,
        false,
        g.seed(),
        targets,
    ))
}
