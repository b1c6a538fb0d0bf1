use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use super::LedgerTerm;
use crate::diagram::ConstituentLabel;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum GrothSymbol {
    Sheaf(LedgerTerm),
    Constituent(ConstituentLabel),
}

impl fmt::Display for GrothSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GrothSymbol::Sheaf(t) => write!(f, "{t}"),
            GrothSymbol::Constituent(c) => write!(f, "{c} ⊗ ({})", c.marker()),
        }
    }
}

/// A formal ℤ-linear combination of symbols. Zero coefficients are dropped,
/// so the zero element is the empty map.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct GrothSum {
    terms: BTreeMap<GrothSymbol, i64>,
}

impl GrothSum {
    pub fn zero() -> Self {
        GrothSum::default()
    }

    pub fn add(&mut self, coeff: i64, symbol: GrothSymbol) {
        if coeff == 0 {
            return;
        }
        let c = self.terms.entry(symbol.clone()).or_insert(0);
        *c += coeff;
        if *c == 0 {
            self.terms.remove(&symbol);
        }
    }

    /// Adds `coeff · sign(term) · [term]`; the stored key has sign `+1`.
    pub fn add_term(&mut self, coeff: i64, term: &LedgerTerm) {
        let sign = term.sign as i64;
        self.add(coeff * sign, GrothSymbol::Sheaf(term.unsigned()));
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, symbol: &GrothSymbol) -> i64 {
        self.terms.get(symbol).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&GrothSymbol, i64)> {
        self.terms.iter().map(|(s, c)| (s, *c))
    }

    pub fn coefficient_sum(&self) -> i64 {
        self.terms.values().sum()
    }

    /// Splits sheaf terms by stratum; constituent labels go under their `r`.
    pub fn group_by_stratum(&self) -> BTreeMap<u32, GrothSum> {
        let mut out: BTreeMap<u32, GrothSum> = BTreeMap::new();
        for (sym, c) in &self.terms {
            let h = match sym {
                GrothSymbol::Sheaf(t) => t.stratum,
                GrothSymbol::Constituent(l) => l.point.r as u32,
            };
            out.entry(h).or_default().add(*c, sym.clone());
        }
        out
    }
}

impl Add for GrothSum {
    type Output = GrothSum;
    fn add(mut self, rhs: GrothSum) -> GrothSum {
        for (s, c) in rhs.terms {
            GrothSum::add(&mut self, c, s);
        }
        self
    }
}

impl Neg for GrothSum {
    type Output = GrothSum;
    fn neg(self) -> GrothSum {
        GrothSum {
            terms: self.terms.into_iter().map(|(s, c)| (s, -c)).collect(),
        }
    }
}

impl Sub for GrothSum {
    type Output = GrothSum;
    fn sub(self, rhs: GrothSum) -> GrothSum {
        self + (-rhs)
    }
}

impl fmt::Display for GrothSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (n, (s, c)) in self.terms.iter().enumerate() {
            let sign = if *c < 0 { "-" } else if n == 0 { "" } else { "+" };
            let abs = c.abs();
            if n > 0 {
                f.write_str(" ")?;
            }
            if abs == 1 {
                write!(f, "{sign}[{s}]")?;
            } else {
                write!(f, "{sign}{abs}[{s}]")?;
            }
        }
        Ok(())
    }
}
