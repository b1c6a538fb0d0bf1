use std::fmt;

use crate::diagram::ConstituentLabel;

/// `[ψ, n]`: the formal symbol standing for `dim_{F̄_ℓ} ψ^{K_v(n)}` where `ψ`
/// is a mod-ℓ reduced constituent.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct DimensionProfileSymbol {
    pub class: ConstituentLabel,
    pub level: u32,
}

impl DimensionProfileSymbol {
    pub fn class_string(&self) -> String {
        format!("{} ⊗ ({})", self.class, self.class.marker())
    }
}

impl fmt::Display for DimensionProfileSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, n={}]", self.class_string(), self.level)
    }
}

/// Integer model of `dim_{F̄_ℓ,n}`. Callers always pass the mod-ℓ reduced
/// label, so any implementation only sees congruence classes.
pub trait DimensionOracle {
    fn dim(&self, class: &ConstituentLabel, level: u32) -> u64;
}

/// Every invariant space has dimension one.
#[derive(Clone, Copy, Debug, Default)]
pub struct UnitOracle;

impl DimensionOracle for UnitOracle {
    fn dim(&self, _: &ConstituentLabel, _: u32) -> u64 {
        1
    }
}

/// A deterministic dimension in `1..=modulus` derived from the label text and
/// the level, stable across platforms and builds.
#[derive(Clone, Copy, Debug)]
pub struct HashOracle {
    pub modulus: u64,
}

impl Default for HashOracle {
    fn default() -> Self {
        HashOracle { modulus: 16 }
    }
}

impl DimensionOracle for HashOracle {
    fn dim(&self, class: &ConstituentLabel, level: u32) -> u64 {
        // FNV-1a
        let text = format!("{class}|{}|{level}", class.marker());
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        for b in text.bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(0x0000_0100_0000_01b3);
        }
        1 + h % self.modulus.max(1)
    }
}
