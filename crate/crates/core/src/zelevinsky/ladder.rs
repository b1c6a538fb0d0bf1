use std::fmt;

use super::{Cuspidal, HalfInt, Multisegment, Segment};
use crate::error::{invalid, Result};

/// The shape of `Speh_s(St_t(π))`: `s` rows of length `t`, row `j` centered
/// at `center + (1-s)/2 + j`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct LadderShape {
    pub base: Cuspidal,
    pub s: u32,
    pub t: u32,
    pub center: HalfInt,
}

impl LadderShape {
    pub fn new(base: Cuspidal, s: u32, t: u32, center: HalfInt) -> Result<Self> {
        if s == 0 || t == 0 {
            return Err(invalid(format!("ladder needs s, t >= 1 (got s={s}, t={t})")));
        }
        Ok(LadderShape { base, s, t, center })
    }

    pub fn degree(&self) -> u64 {
        self.s as u64 * self.t as u64 * self.base.g() as u64
    }

    pub fn row_center(&self, j: u32) -> HalfInt {
        self.center + HalfInt::half(1 - self.s as i64 + 2 * j as i64)
    }

    /// Row `j` as a segment, `j = 0` being the lowest twist.
    pub fn row(&self, j: u32) -> Segment {
        Segment {
            base: self.base.clone(),
            start: self.row_center(j) - HalfInt::half(self.t as i64 - 1),
            length: self.t,
        }
    }

    pub fn rows(&self) -> impl Iterator<Item = Segment> + '_ {
        (0..self.s).map(|j| self.row(j))
    }

    pub fn to_multisegment(&self) -> Multisegment {
        Multisegment::from_segments(self.rows())
    }

    pub fn twisted(&self, by: HalfInt) -> LadderShape {
        LadderShape {
            center: self.center + by,
            ..self.clone()
        }
    }

    pub fn is_steinberg(&self) -> bool {
        self.s == 1
    }
}

impl From<&Cuspidal> for LadderShape {
    fn from(pi: &Cuspidal) -> Self {
        LadderShape {
            base: pi.clone(),
            s: 1,
            t: 1,
            center: HalfInt::ZERO,
        }
    }
}

impl fmt::Display for LadderShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let inner = match self.t {
            1 => self.base.to_string(),
            t => format!("St_{t}({})", self.base),
        };
        let body = match self.s {
            1 => inner,
            s => format!("Speh_{s}({inner})"),
        };
        if self.center.is_zero() {
            f.write_str(&body)
        } else {
            write!(f, "{body}{{{}}}", self.center)
        }
    }
}
