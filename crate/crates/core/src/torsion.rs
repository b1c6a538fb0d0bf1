//! Torsion profiles and the index `i(h)` of the first cohomological degree
//! with non-trivial torsion on stratum `h`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ledger::{check_infinitesimal, Expr, GlobalContext, Infinitesimal, LedgerTerm, TermKind};
use crate::zelevinsky::HalfInt;

/// `t0` is the largest stratum carrying torsion; `tau[j]` is the torsion
/// dimension at the `j`-th level of the tower.
#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize, Deserialize)]
pub struct TorsionProfile {
    pub t0: Option<u32>,
    #[serde(default)]
    pub tau: Vec<u64>,
}

impl TorsionProfile {
    pub fn free() -> Self {
        TorsionProfile::default()
    }

    pub fn new(t0: Option<u32>, tau: Vec<u64>) -> Result<Self> {
        let p = TorsionProfile { t0, tau };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        match self.t0 {
            Some(0) => Err(Error::InconsistentTable("torsion t0 must be positive".into())),
            None if self.tau.iter().any(|&x| x != 0) => Err(Error::InconsistentTable(
                "torsion profile has no t0 but non-zero tau".into(),
            )),
            _ => Ok(()),
        }
    }

    pub fn is_free(&self) -> bool {
        self.t0.is_none()
    }

    pub fn tau(&self, level: usize) -> u64 {
        self.tau.get(level).copied().unwrap_or(0)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum TorsionIndex {
    Finite(i64),
    Infinite,
}

impl fmt::Display for TorsionIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TorsionIndex::Finite(i) => write!(f, "{i}"),
            TorsionIndex::Infinite => f.write_str("+∞"),
        }
    }
}

/// `i(t) = t - t0` for `t <= t0`, `+∞` otherwise.
pub fn i_of_t(profile: &TorsionProfile, t: u32) -> TorsionIndex {
    match profile.t0 {
        Some(t0) if t <= t0 => TorsionIndex::Finite(t as i64 - t0 as i64),
        _ => TorsionIndex::Infinite,
    }
}

/// The term at stratum `t0` whose torsion agrees mod ℓ with the degree-`i(t)`
/// torsion at stratum `t`:
/// `p j_!*^{=t0} HT(π, Π_t{(t0-t)/2} × Speh_{t0-t}(π){t/2}) ⊗ Ξ^{(t-t0)/2}`.
pub fn torsion_transfer_label(
    ctx: &GlobalContext,
    profile: &TorsionProfile,
    t: u32,
    inf: &Infinitesimal,
) -> Result<LedgerTerm> {
    check_infinitesimal(ctx, t, inf)?;
    let t0 = match profile.t0 {
        None => {
            return Err(Error::NoTorsion {
                t,
                reason: "the profile is torsion-free".into(),
            })
        }
        Some(t0) if t > t0 => {
            return Err(Error::NoTorsion {
                t,
                reason: format!("t exceeds t0 = {t0}"),
            })
        }
        Some(t0) => t0,
    };
    let gap = t0 - t;
    let label = inf
        .expr()
        .twist(HalfInt::half(gap as i64))
        .times(Expr::speh(gap, Expr::cusp(ctx.pi())).twist(HalfInt::half(t as i64)));
    LedgerTerm::build(
        ctx,
        TermKind::Intermediate,
        t0,
        label,
        &inf.value,
        HalfInt::half(t as i64 - t0 as i64),
        HalfInt::ZERO,
        1,
    )
}

/// Torsion contribution to `d_{k,n}` at the `level`-th level: `τ_n` for
/// `1 <= k <= t0`, zero for `k = 0` and beyond `t0`.
pub fn torsion_dimension(profile: &TorsionProfile, k: u32, level: usize) -> u64 {
    match profile.t0 {
        Some(t0) if k >= 1 && k <= t0 => profile.tau(level),
        _ => 0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zelevinsky::Cuspidal;

    fn ctx(d: u32, g: u32) -> GlobalContext {
        GlobalContext::new(d, Cuspidal::new("π", g, 1, "ρ").unwrap()).unwrap()
    }

    #[test]
    fn index_examples() {
        let p = TorsionProfile::new(Some(3), vec![1]).unwrap();
        assert_eq!(i_of_t(&p, 3), TorsionIndex::Finite(0));
        assert_eq!(i_of_t(&p, 1), TorsionIndex::Finite(-2));
        assert_eq!(i_of_t(&p, 4), TorsionIndex::Infinite);
        assert_eq!(i_of_t(&TorsionProfile::free(), 1), TorsionIndex::Infinite);
        assert_eq!(TorsionIndex::Infinite.to_string(), "+∞");
    }

    #[test]
    fn profile_validation() {
        assert!(TorsionProfile::new(None, vec![0, 0]).is_ok());
        assert!(matches!(
            TorsionProfile::new(None, vec![0, 2]),
            Err(Error::InconsistentTable(_))
        ));
        assert!(TorsionProfile::new(Some(0), vec![]).is_err());
    }

    #[test]
    fn transfer_label_at_t0_has_no_extra_factor() {
        let c = ctx(6, 2);
        let p = TorsionProfile::new(Some(2), vec![1]).unwrap();
        let term = torsion_transfer_label(&c, &p, 2, &Infinitesimal::opaque(&c, 2)).unwrap();
        assert_eq!(term.line(), "+ p j_!*^{=2} HT(π, Π_2)");
    }

    #[test]
    fn transfer_label_one_step() {
        let c = ctx(3, 1);
        let p = TorsionProfile::new(Some(3), vec![1]).unwrap();
        let term = torsion_transfer_label(&c, &p, 2, &Infinitesimal::opaque(&c, 2)).unwrap();
        assert_eq!(term.label.to_string(), "Π_2{1/2} × π{1}");
        assert_eq!(term.xi, HalfInt::half(-1));
        assert_eq!(term.stratum, 3);
    }

    #[test]
    fn transfer_label_errors() {
        let c = ctx(4, 1);
        let inf = Infinitesimal::opaque(&c, 3);
        let p = TorsionProfile::new(Some(2), vec![1]).unwrap();
        assert!(matches!(
            torsion_transfer_label(&c, &p, 3, &inf),
            Err(Error::NoTorsion { t: 3, .. })
        ));
        assert!(matches!(
            torsion_transfer_label(&c, &TorsionProfile::free(), 3, &inf),
            Err(Error::NoTorsion { .. })
        ));
    }

    #[test]
    fn transfer_label_degree_sweep() {
        for d in 1..=30u32 {
            for g in (1..=d).filter(|g| d % g == 0) {
                let c = ctx(d, g);
                for t0 in 1..=c.s_g() {
                    let p = TorsionProfile::new(Some(t0), vec![1]).unwrap();
                    for t in 1..=t0 {
                        let term = torsion_transfer_label(&c, &p, t, &Infinitesimal::opaque(&c, t)).unwrap();
                        assert_eq!(term.infinitesimal.degree(), (t0 * g) as u64);
                    }
                }
            }
        }
    }

    #[test]
    fn dimension_is_uniform_in_k() {
        let p = TorsionProfile::new(Some(4), vec![2, 5]).unwrap();
        assert_eq!(torsion_dimension(&p, 0, 1), 0);
        for k in 1..=4 {
            assert_eq!(torsion_dimension(&p, k, 0), 2);
            assert_eq!(torsion_dimension(&p, k, 1), 5);
        }
        assert_eq!(torsion_dimension(&p, 5, 1), 0);
        assert_eq!(torsion_dimension(&TorsionProfile::free(), 2, 0), 0);
    }
}
