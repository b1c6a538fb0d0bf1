use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::dataset::{members, AutomorphicDatum, Dataset};
use super::oracle::DimensionOracle;
use crate::diagram::{constituent, ConstituentLabel, DiagramPoint};
use crate::error::{invalid, Error, Result};
use crate::torsion::{torsion_dimension, TorsionProfile};
use crate::zelevinsky::Cuspidal;

/// `d_{k,n}` for `k = 0..r-1`; `rows[k][j]` is the entry at `levels[j]`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct DTable {
    pub r: u32,
    pub levels: Vec<u32>,
    pub rows: Vec<Vec<u64>>,
}

impl DTable {
    pub fn zero(r: u32, levels: &[u32]) -> Self {
        DTable {
            r,
            levels: levels.to_vec(),
            rows: vec![vec![0; levels.len()]; r as usize],
        }
    }

    pub fn get(&self, k: u32, level_index: usize) -> u64 {
        self.rows[k as usize][level_index]
    }

    fn add_below(&mut self, s: u32, weights: &[u64]) {
        for row in self.rows.iter_mut().take(s as usize) {
            for (x, w) in row.iter_mut().zip(weights) {
                *x += w;
            }
        }
    }
}

impl std::ops::Add for &DTable {
    type Output = DTable;
    fn add(self, rhs: &DTable) -> DTable {
        assert_eq!((self.r, &self.levels), (rhs.r, &rhs.levels), "incompatible tables");
        DTable {
            r: self.r,
            levels: self.levels.clone(),
            rows: self
                .rows
                .iter()
                .zip(&rhs.rows)
                .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect())
                .collect(),
        }
    }
}

impl fmt::Display for DTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "k\\n")?;
        for n in &self.levels {
            write!(f, "\t{n}")?;
        }
        for (k, row) in self.rows.iter().enumerate() {
            write!(f, "\n{k}")?;
            for x in row {
                write!(f, "\t{x}")?;
            }
        }
        Ok(())
    }
}

/// Mod-ℓ reduction of the constituent of factor `k` at `(r, 0)`.
pub fn reduced_class(datum: &AutomorphicDatum, r: u32, k: usize) -> ConstituentLabel {
    constituent(&datum.local, DiagramPoint::new(r as i64, 0), k)
        .expect("(s + t_k - 1, 0) carries factor k")
        .reduce_mod_l()
}

/// Per-level weights of one datum at `r`, summed over its factors there.
fn datum_weights(
    datum: &AutomorphicDatum,
    pi: &Cuspidal,
    r: u32,
    levels: &[u32],
    oracle: &dyn DimensionOracle,
) -> Vec<u64> {
    let mut w = vec![0; levels.len()];
    for k in datum.factors_at(pi, r) {
        let class = reduced_class(datum, r, k);
        for (x, &n) in w.iter_mut().zip(levels) {
            *x += datum.weight() * oracle.dim(&class, n);
        }
    }
    w
}

/// The table `d_{k,n}` at `r`: every member with `s` rows adds its weight to
/// `k = 0..s-1`, and the torsion profile adds `τ_n` to the rows `k >= 1` it
/// covers.
pub fn d_sequence(ds: &Dataset, pi: &Cuspidal, r: u32, oracle: &dyn DimensionOracle) -> Result<DTable> {
    if r == 0 {
        return Err(invalid("d_sequence needs r >= 1"));
    }
    let mut table = DTable::zero(r, &ds.levels);
    for s in 1..=r {
        for datum in members(ds, pi, r, s) {
            table.add_below(s, &datum_weights(datum, pi, r, &ds.levels, oracle));
        }
    }
    for k in 1..r {
        for j in 0..ds.levels.len() {
            table.rows[k as usize][j] += torsion_dimension(&ds.torsion, k, j);
        }
    }
    Ok(table)
}

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Contribution {
    pub weights: Vec<u64>,
    pub witnesses: BTreeSet<String>,
}

/// `ℬ(π_v)` at a fixed `r`: pairs `(s, t)` with `s + t - 1 = r` and their
/// weights per level.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ContributionSet {
    pub r: u32,
    pub pairs: BTreeMap<(u32, u32), Contribution>,
}

impl ContributionSet {
    pub fn new(r: u32) -> Self {
        ContributionSet {
            r,
            pairs: BTreeMap::new(),
        }
    }

    pub fn insert(&mut self, s: u32, weights: Vec<u64>, witness: Option<&str>) {
        assert!(s >= 1 && s <= self.r, "s = {s} outside 1..={}", self.r);
        let entry = self.pairs.entry((s, self.r - s + 1)).or_default();
        if entry.weights.is_empty() {
            entry.weights = vec![0; weights.len()];
        }
        for (x, w) in entry.weights.iter_mut().zip(&weights) {
            *x += w;
        }
        entry.witnesses.extend(witness.map(str::to_string));
    }

    pub fn weights(&self) -> BTreeMap<(u32, u32), Vec<u64>> {
        self.pairs.iter().map(|(k, v)| (*k, v.weights.clone())).collect()
    }

    pub fn shapes(&self) -> BTreeSet<(u32, u32)> {
        self.pairs.keys().copied().collect()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct PairJson<'a> {
            s: u32,
            t: u32,
            weights: &'a [u64],
            witnesses: &'a BTreeSet<String>,
        }
        #[derive(Serialize)]
        struct SetJson<'a> {
            r: u32,
            pairs: Vec<PairJson<'a>>,
        }
        serde_json::to_value(SetJson {
            r: self.r,
            pairs: self
                .pairs
                .iter()
                .map(|(&(s, t), c)| PairJson {
                    s,
                    t,
                    weights: &c.weights,
                    witnesses: &c.witnesses,
                })
                .collect(),
        })
        .expect("contribution serialization is infallible")
    }
}

impl fmt::Display for ContributionSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .pairs
            .iter()
            .map(|((s, t), c)| format!("({s},{t}):{:?}", c.weights))
            .collect();
        write!(f, "r={} {{{}}}", self.r, parts.join(", "))
    }
}

/// `ℬ(π_v)` at `r` read directly off the data, with witness ids.
pub fn contributions(ds: &Dataset, pi: &Cuspidal, r: u32, oracle: &dyn DimensionOracle) -> ContributionSet {
    let mut out = ContributionSet::new(r);
    for s in 1..=r {
        for datum in members(ds, pi, r, s) {
            out.insert(s, datum_weights(datum, pi, r, &ds.levels, oracle), Some(&datum.id));
        }
    }
    out
}

/// Recovers `ℬ(π_v)` from `d_{k,n}`: remove the torsion, then for `s = r`
/// down to `1` the drop `d_{s-1,n} - d_{s,n}` is the weight of `(s, r-s+1)`.
pub fn infer_b(table: &DTable, torsion: &TorsionProfile) -> Result<ContributionSet> {
    torsion.validate()?;
    let r = table.r;
    if table.rows.len() != r as usize {
        return Err(Error::InconsistentTable(format!(
            "table has {} rows for r = {r}",
            table.rows.len()
        )));
    }
    let width = table.levels.len();
    let mut free = vec![vec![0u64; width]; r as usize + 1];
    for k in 0..r {
        if table.rows[k as usize].len() != width {
            return Err(Error::InconsistentTable(format!("row {k} has the wrong length")));
        }
        for (j, (cell, &d)) in free[k as usize].iter_mut().zip(&table.rows[k as usize]).enumerate() {
            let tor = torsion_dimension(torsion, k, j);
            *cell = d.checked_sub(tor).ok_or_else(|| {
                Error::InconsistentTable(format!(
                    "d_{{{k},{}}} = {d} is below the torsion contribution {tor}",
                    table.levels[j]
                ))
            })?;
        }
    }
    let mut out = ContributionSet::new(r);
    for s in (1..=r).rev() {
        let mut weights = Vec::with_capacity(width);
        for (j, (&above, &below)) in free[s as usize].iter().zip(&free[s as usize - 1]).enumerate() {
            weights.push(below.checked_sub(above).ok_or_else(|| {
                Error::InconsistentTable(format!(
                    "d_{{{},{n}}} < d_{{{s},{n}}} after removing torsion",
                    s - 1,
                    n = table.levels[j]
                ))
            })?);
        }
        if weights.iter().any(|&w| w != 0) {
            out.insert(s, weights, None);
        }
    }
    Ok(out)
}

/// Runs the single-`r` peel for every `r` from the maximal one down to 1.
///
/// Each `r` only sees the data whose factors reach exactly `r`, so nothing
/// learned at larger `r` needs to be carried down.
pub fn infer_all(
    ds: &Dataset,
    pi: &Cuspidal,
    oracle: &dyn DimensionOracle,
) -> Result<Vec<ContributionSet>> {
    let Some(top) = ds.max_r(pi) else {
        return Ok(Vec::new());
    };
    (1..=top)
        .rev()
        .map(|r| infer_b(&d_sequence(ds, pi, r, oracle)?, &ds.torsion))
        .collect()
}
