use std::collections::BTreeMap;

use serde::Serialize;

use super::dataset::{members, Dataset};
use super::oracle::DimensionProfileSymbol;
use super::peel::reduced_class;
use crate::error::{invalid, Error, Result};
use crate::zelevinsky::Cuspidal;

pub const VERDICT_SCHEMA_VERSION: u32 = 1;

/// `Σ_{Π ∈ 𝒜(r,s)} m(Π) d_ξ(Π_∞) dim(Π^{∞,v})^{I^v} · [r_ℓ(R_π(s,t)(r,0)(Π_v)), n]`
pub type FormalSum = BTreeMap<DimensionProfileSymbol, u64>;

pub fn formal_side(ds: &Dataset, pi: &Cuspidal, r: u32, s: u32) -> FormalSum {
    let mut sum = FormalSum::new();
    for datum in members(ds, pi, r, s) {
        for k in datum.factors_at(pi, r) {
            let class = reduced_class(datum, r, k);
            for &level in &ds.levels {
                *sum.entry(DimensionProfileSymbol {
                    class: class.clone(),
                    level,
                })
                .or_default() += datum.weight();
            }
        }
    }
    sum
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Equal,
    Unequal,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TermDiff {
    pub symbol: DimensionProfileSymbol,
    pub left: u64,
    pub right: u64,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Verdict {
    pub r: u32,
    pub s: u32,
    pub outcome: Outcome,
    pub diffs: Vec<TermDiff>,
    pub warnings: Vec<String>,
}

#[derive(Serialize)]
struct DiffJson {
    class: String,
    level: u32,
    left: u64,
    right: u64,
}

#[derive(Serialize)]
struct VerdictJson {
    schema_version: u32,
    verdict: Outcome,
    r: u32,
    s: u32,
    diffs: Vec<DiffJson>,
    warnings: Vec<String>,
}

impl Verdict {
    pub fn is_equal(&self) -> bool {
        self.outcome == Outcome::Equal
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&VerdictJson {
            schema_version: VERDICT_SCHEMA_VERSION,
            verdict: self.outcome,
            r: self.r,
            s: self.s,
            diffs: self
                .diffs
                .iter()
                .map(|d| DiffJson {
                    class: d.symbol.class_string(),
                    level: d.symbol.level,
                    left: d.left,
                    right: d.right,
                })
                .collect(),
            warnings: self.warnings.clone(),
        })
        .expect("verdict serialization is infallible")
    }

    pub fn report(&self) -> String {
        let mut out = format!(
            "r={} s={}: {}\n",
            self.r,
            self.s,
            match self.outcome {
                Outcome::Equal => "equal",
                Outcome::Unequal => "unequal",
            }
        );
        for w in &self.warnings {
            out.push_str(&format!("warning: {w}\n"));
        }
        for d in &self.diffs {
            out.push_str(&format!("  {}: {} vs {}\n", d.symbol, d.left, d.right));
        }
        out
    }
}

/// Compares both sides of the congruence identity at `(r, s)` as formal
/// combinations of mod-ℓ dimension symbols.
pub fn theorem_check(
    ds_a: &Dataset,
    pi_a: &Cuspidal,
    ds_b: &Dataset,
    pi_b: &Cuspidal,
    r: u32,
    s: u32,
) -> Result<Verdict> {
    if !pi_a.same_mod_l(pi_b) {
        return Err(invalid(format!(
            "{pi_a} and {pi_b} have different mod-ℓ classes ({} vs {})",
            pi_a.modl_class(),
            pi_b.modl_class()
        )));
    }
    if ds_a.context.d() != ds_b.context.d() {
        return Err(Error::InconsistentTable(format!(
            "datasets live on different d ({} vs {})",
            ds_a.context.d(),
            ds_b.context.d()
        )));
    }
    if s == 0 || s > r {
        return Err(invalid(format!("need 1 <= s <= r, got r={r} s={s}")));
    }
    let mut warnings = Vec::new();
    for (name, ds, pi) in [("A", ds_a, pi_a), ("B", ds_b, pi_b)] {
        if let Some(top) = ds.max_r(pi) {
            if top > r {
                warnings.push(format!("r = {r} is not maximal in dataset {name} (maximal r = {top})"));
            }
        }
    }
    let left = formal_side(ds_a, pi_a, r, s);
    let right = formal_side(ds_b, pi_b, r, s);
    let mut diffs = Vec::new();
    let symbols: std::collections::BTreeSet<_> = left.keys().chain(right.keys()).collect();
    for sym in symbols {
        let (l, rr) = (left.get(sym).copied().unwrap_or(0), right.get(sym).copied().unwrap_or(0));
        if l != rr {
            diffs.push(TermDiff {
                symbol: sym.clone(),
                left: l,
                right: rr,
            });
        }
    }
    Ok(Verdict {
        r,
        s,
        outcome: if diffs.is_empty() {
            Outcome::Equal
        } else {
            Outcome::Unequal
        },
        diffs,
        warnings,
    })
}

/// Every single-field change of a member of `𝒜(r,s)`: `m`, `d_ξ`, the
/// invariant dimension, `s`, and for each contributing factor its `t` and
/// the mod-ℓ class of its base. Degrees are not rebalanced.
pub fn single_field_mutations(ds: &Dataset, pi: &Cuspidal, r: u32, s: u32) -> Vec<(String, Dataset)> {
    let mut out = Vec::new();
    for (j, datum) in ds.data.iter().enumerate() {
        if datum.local.s() != s || datum.factors_at(pi, r).next().is_none() {
            continue;
        }
        let mut push = |what: String, f: &dyn Fn(&mut Dataset)| {
            let mut m = ds.clone();
            f(&mut m);
            out.push((format!("data[{j}].{what}"), m));
        };
        push("m".into(), &|m| m.data[j].m += 1);
        push("d_xi".into(), &|m| m.data[j].d_xi += 1);
        push("inv_dim".into(), &|m| m.data[j].inv_dim += 1);
        push("s".into(), &|m| {
            let local = &m.data[j].local;
            m.data[j].local = crate::diagram::LocalComponent::new(
                local.s() + 1,
                local.factors().to_vec(),
                local.wildcard().cloned(),
            )
            .expect("s + 1 >= 1");
        });
        for k in datum.factors_at(pi, r).collect::<Vec<_>>() {
            push(format!("local.factors[{}].t", k - 1), &|m| {
                let local = &m.data[j].local;
                let mut factors = local.factors().to_vec();
                factors[k - 1].t += 1;
                m.data[j].local =
                    crate::diagram::LocalComponent::new(local.s(), factors, local.wildcard().cloned())
                        .expect("t + 1 >= 1");
            });
            push(format!("local.factors[{}].base.modl_class", k - 1), &|m| {
                let local = &m.data[j].local;
                let mut factors = local.factors().to_vec();
                let b = &factors[k - 1].base;
                factors[k - 1].base = Cuspidal::new(b.id(), b.g(), b.e_pi(), format!("{}'", b.modl_class()))
                    .expect("valid cuspidal");
                m.data[j].local =
                    crate::diagram::LocalComponent::new(local.s(), factors, local.wildcard().cloned())
                        .expect("unchanged shape");
            });
        }
    }
    out
}
