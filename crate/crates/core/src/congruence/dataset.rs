use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::diagram::LocalComponent;
use crate::error::{invalid, Error, Result};
use crate::ledger::GlobalContext;
use crate::torsion::TorsionProfile;
use crate::zelevinsky::Cuspidal;

pub const DATASET_SCHEMA_VERSION: u32 = 1;

/// An automorphic representation `Π`, reduced to what the counting needs.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct AutomorphicDatum {
    pub id: String,
    /// `Π_v`
    pub local: LocalComponent,
    /// `m(Π)`
    pub m: u64,
    /// `d_ξ(Π_∞)`
    pub d_xi: u64,
    /// `dim (Π^{∞,v})^{I^v}`
    pub inv_dim: u64,
    /// Label of the lift `𝔪̃ ⊂ 𝔪`; never inspected.
    pub satake: String,
}

impl AutomorphicDatum {
    pub fn weight(&self) -> u64 {
        self.m * self.d_xi * self.inv_dim
    }

    /// 1-based factors `k` over a base inertially equivalent to `pi` with
    /// `s + t_k - 1 = r`.
    pub fn factors_at<'a>(&'a self, pi: &'a Cuspidal, r: u32) -> impl Iterator<Item = usize> + 'a {
        let s = self.local.s();
        self.local
            .matching_factors(pi)
            .filter(move |&k| s + self.local.factor(k).expect("valid index").t - 1 == r)
    }

    /// Largest `s + t_k - 1` over factors inertially equivalent to `pi`.
    pub fn top_r(&self, pi: &Cuspidal) -> Option<u32> {
        let s = self.local.s();
        self.local
            .matching_factors(pi)
            .map(|k| s + self.local.factor(k).expect("valid index").t - 1)
            .max()
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Dataset {
    pub schema_version: u32,
    pub context: GlobalContext,
    pub data: Vec<AutomorphicDatum>,
    #[serde(default)]
    pub torsion: TorsionProfile,
    /// The levels `n` of the tower `K_v(n)`.
    pub levels: Vec<u32>,
}

impl Dataset {
    pub fn new(
        context: GlobalContext,
        data: Vec<AutomorphicDatum>,
        torsion: TorsionProfile,
        levels: Vec<u32>,
    ) -> Self {
        Dataset {
            schema_version: DATASET_SCHEMA_VERSION,
            context,
            data,
            torsion,
            levels,
        }
    }

    /// Structural problems are `InvalidArgument`; data that parse but cannot
    /// come from a consistent cohomology are `InconsistentTable`.
    pub fn validate(&self) -> Result<()> {
        if self.schema_version != DATASET_SCHEMA_VERSION {
            return Err(invalid(format!(
                "schema_version: unsupported dataset schema_version {}",
                self.schema_version
            )));
        }
        if self.levels.is_empty() {
            return Err(invalid("levels: at least one level is required"));
        }
        let mut seen = BTreeSet::new();
        for (j, n) in self.levels.iter().enumerate() {
            if !seen.insert(n) {
                return Err(invalid(format!("levels[{j}]: duplicate level {n}")));
            }
        }
        let mut ids = BTreeSet::new();
        for (j, datum) in self.data.iter().enumerate() {
            for (field, v) in [("m", datum.m), ("d_xi", datum.d_xi), ("inv_dim", datum.inv_dim)] {
                if v == 0 {
                    return Err(invalid(format!("data[{j}].{field}: must be positive")));
                }
            }
            if !ids.insert(datum.id.as_str()) {
                return Err(invalid(format!("data[{j}].id: duplicate id {}", datum.id)));
            }
            if datum.local.degree() != self.context.d() as u64 {
                return Err(Error::InconsistentTable(format!(
                    "data[{j}]: local component {} has degree {}, expected d = {}",
                    datum.local,
                    datum.local.degree(),
                    self.context.d()
                )));
            }
        }
        self.torsion.validate()?;
        if let Some(t0) = self.torsion.t0 {
            if t0 > self.context.s_g() {
                return Err(Error::InconsistentTable(format!(
                    "torsion.t0 = {t0} exceeds s_g = {}",
                    self.context.s_g()
                )));
            }
            if self.torsion.tau.len() != self.levels.len() {
                return Err(Error::InconsistentTable(format!(
                    "torsion.tau has {} entries for {} levels",
                    self.torsion.tau.len(),
                    self.levels.len()
                )));
            }
        }
        Ok(())
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let ds: Dataset = serde_json::from_str(s).map_err(|e| invalid(format!("dataset json: {e}")))?;
        ds.validate()?;
        Ok(ds)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("dataset serialization is infallible")
    }

    /// Every base inertially equivalent to `from` replaced by `to`,
    /// including the context's.
    pub fn substitute(&self, from: &Cuspidal, to: &Cuspidal) -> Result<Dataset> {
        let pi = if self.context.pi().inertially_equivalent(from) {
            to.clone()
        } else {
            self.context.pi().clone()
        };
        Ok(Dataset {
            schema_version: self.schema_version,
            context: GlobalContext::with_kappa(self.context.d(), pi, self.context.kappa())?,
            data: self
                .data
                .iter()
                .map(|d| AutomorphicDatum {
                    local: d.local.substitute(from, to),
                    ..d.clone()
                })
                .collect(),
            torsion: self.torsion.clone(),
            levels: self.levels.clone(),
        })
    }

    /// Largest `r` at which some datum contributes for `pi`.
    pub fn max_r(&self, pi: &Cuspidal) -> Option<u32> {
        self.data.iter().filter_map(|d| d.top_r(pi)).max()
    }
}

/// `𝒜_{ξ,π}(r, s)`: data with `s` rows and a factor over `π` with `s + t - 1 = r`.
pub fn members<'a>(ds: &'a Dataset, pi: &Cuspidal, r: u32, s: u32) -> Vec<&'a AutomorphicDatum> {
    ds.data
        .iter()
        .filter(|d| d.local.s() == s && d.factors_at(pi, r).next().is_some())
        .collect()
}
