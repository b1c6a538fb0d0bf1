use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::dataset::{AutomorphicDatum, Dataset};
use crate::diagram::{Factor, LocalComponent};
use crate::error::{Error, Result};
use crate::ledger::GlobalContext;
use crate::torsion::TorsionProfile;
use crate::zelevinsky::{Cuspidal, Wildcard};

/// Constraints for [`generate_dataset`].
#[derive(Clone, Debug)]
pub struct Shape {
    /// The `r` at which the contributions are placed.
    pub r: u32,
    pub levels: Vec<u32>,
    /// Number of contributing data is drawn from `1..=max_pairs`.
    pub max_pairs: usize,
    /// Counts `m`, `d_ξ`, invariant dimension are drawn from `1..=max_count`.
    pub max_count: u64,
    pub torsion: bool,
    /// Exact shapes `(s, t)` to realize, one datum each.
    pub target: Option<Vec<(u32, u32)>>,
    /// A base not inertially equivalent to the context's, used as filler.
    pub foreign: Option<Cuspidal>,
    /// Add data over `π` contributing only at smaller `r`.
    pub decoys: bool,
}

impl Shape {
    pub fn new(r: u32) -> Self {
        Shape {
            r,
            levels: vec![1, 2, 3],
            max_pairs: 6,
            max_count: 5,
            torsion: false,
            target: None,
            foreign: None,
            decoys: false,
        }
    }
}

fn feasible(ctx: &GlobalContext, s: u32, t: u32) -> bool {
    s as u64 * t as u64 * ctx.g() as u64 <= ctx.d() as u64
}

/// `Speh_s(St_t(π)) × [foreign] × ?` of degree exactly `d`.
fn component(rng: &mut ChaCha8Rng, ctx: &GlobalContext, shape: &Shape, s: u32, t: u32) -> LocalComponent {
    let mut factors = vec![Factor {
        t,
        base: ctx.pi().clone(),
    }];
    let mut slack = ctx.d() as u64 - s as u64 * t as u64 * ctx.g() as u64;
    if let Some(f) = &shape.foreign {
        let unit = s as u64 * f.g() as u64;
        if slack >= unit && rng.gen_bool(0.5) {
            let tf = rng.gen_range(1..=slack / unit) as u32;
            factors.push(Factor {
                t: tf,
                base: f.clone(),
            });
            slack -= unit * tf as u64;
        }
    }
    factors.shuffle(rng);
    let wildcard = (slack > 0).then(|| Wildcard::new("?", slack as u32));
    LocalComponent::new(s, factors, wildcard).expect("s, t >= 1")
}

/// A deterministic pseudo-random dataset whose contributions for the
/// context's `π` at `shape.r` are one datum per drawn (or targeted) shape.
pub fn generate_dataset(seed: u64, ctx: &GlobalContext, shape: &Shape) -> Result<Dataset> {
    let r = shape.r;
    if r == 0 || shape.levels.is_empty() || shape.max_count == 0 {
        return Err(Error::Unsatisfiable("need r >= 1, a level and max_count >= 1".into()));
    }
    let options: Vec<u32> = (1..=r).filter(|&s| feasible(ctx, s, r - s + 1)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pairs: Vec<(u32, u32)> = match &shape.target {
        Some(target) => {
            for &(s, t) in target {
                if s == 0 || t == 0 || s + t - 1 != r || !feasible(ctx, s, t) {
                    return Err(Error::Unsatisfiable(format!(
                        "shape ({s},{t}) cannot appear at r = {r} with d = {}, g = {}",
                        ctx.d(),
                        ctx.g()
                    )));
                }
            }
            target.clone()
        }
        None => {
            if options.is_empty() || shape.max_pairs == 0 {
                return Err(Error::Unsatisfiable(format!(
                    "no shape fits at r = {r} with d = {}, g = {}",
                    ctx.d(),
                    ctx.g()
                )));
            }
            let n = rng.gen_range(1..=shape.max_pairs);
            (0..n)
                .map(|_| {
                    let s = *options.choose(&mut rng).expect("non-empty");
                    (s, r - s + 1)
                })
                .collect()
        }
    };

    let mut data = Vec::new();
    let counts = |rng: &mut ChaCha8Rng| {
        (
            rng.gen_range(1..=shape.max_count),
            rng.gen_range(1..=shape.max_count),
            rng.gen_range(1..=shape.max_count),
        )
    };
    for (j, &(s, t)) in pairs.iter().enumerate() {
        let local = component(&mut rng, ctx, shape, s, t);
        let (m, d_xi, inv_dim) = counts(&mut rng);
        data.push(AutomorphicDatum {
            id: format!("A{j}"),
            local,
            m,
            d_xi,
            inv_dim,
            satake: format!("m~{seed}.{j}"),
        });
    }
    if shape.decoys && r > 1 {
        let lower: Vec<(u32, u32)> = (1..r)
            .flat_map(|rr| (1..=rr).map(move |s| (s, rr - s + 1)))
            .filter(|&(s, t)| feasible(ctx, s, t))
            .collect();
        for j in 0..rng.gen_range(0..=2usize) {
            if let Some(&(s, t)) = lower.choose(&mut rng) {
                let local = component(&mut rng, ctx, shape, s, t);
                let (m, d_xi, inv_dim) = counts(&mut rng);
                data.push(AutomorphicDatum {
                    id: format!("D{j}"),
                    local,
                    m,
                    d_xi,
                    inv_dim,
                    satake: format!("m~{seed}.d{j}"),
                });
            }
        }
    }
    data.shuffle(&mut rng);

    let torsion = if shape.torsion {
        let t0 = rng.gen_range(1..=ctx.s_g());
        let tau = shape.levels.iter().map(|_| rng.gen_range(0..=4)).collect();
        TorsionProfile::new(Some(t0), tau)?
    } else {
        TorsionProfile::free()
    };
    let ds = Dataset::new(ctx.clone(), data, torsion, shape.levels.clone());
    ds.validate()?;
    Ok(ds)
}
