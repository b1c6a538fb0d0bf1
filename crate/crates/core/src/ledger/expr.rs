use std::fmt;

use crate::error::{invalid, Result};
use crate::zelevinsky::{Cuspidal, HalfInt, LadderShape, Multisegment, Segment};

/// A formal label for the infinitesimal part of a Harris-Taylor local system,
/// kept symbolically for display and evaluated to a [`Multisegment`] for
/// bookkeeping.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Expr {
    /// The trivial representation of `GL_0`.
    One,
    /// The infinitesimal part supplied by the caller (`Π_t`).
    Inf(String),
    Cusp(Cuspidal),
    Twist(Box<Expr>, HalfInt),
    Speh(u32, Box<Expr>),
    St(u32, Box<Expr>),
    Product(Box<Expr>, Box<Expr>),
    /// The ordered product `×→` of the filtration graded parts.
    Ordered(Box<Expr>, Box<Expr>),
}

impl Expr {
    pub fn inf(name: impl Into<String>) -> Expr {
        Expr::Inf(name.into())
    }

    pub fn cusp(pi: &Cuspidal) -> Expr {
        Expr::Cusp(pi.clone())
    }

    pub fn twist(self, by: HalfInt) -> Expr {
        match self {
            _ if by.is_zero() => self,
            Expr::One => Expr::One,
            Expr::Twist(inner, n) => inner.twist(n + by),
            e => Expr::Twist(Box::new(e), by),
        }
    }

    pub fn speh(n: u32, e: Expr) -> Expr {
        match n {
            0 => Expr::One,
            1 => e,
            _ => Expr::Speh(n, Box::new(e)),
        }
    }

    pub fn st(n: u32, e: Expr) -> Expr {
        match n {
            0 => Expr::One,
            1 => e,
            _ => Expr::St(n, Box::new(e)),
        }
    }

    pub fn times(self, rhs: Expr) -> Expr {
        match (self, rhs) {
            (Expr::One, e) | (e, Expr::One) => e,
            (a, b) => Expr::Product(Box::new(a), Box::new(b)),
        }
    }

    pub fn times_ordered(self, rhs: Expr) -> Expr {
        match (self, rhs) {
            (Expr::One, e) | (e, Expr::One) => e,
            (a, b) => Expr::Ordered(Box::new(a), Box::new(b)),
        }
    }

    /// Evaluate with `inf` standing for every [`Expr::Inf`].
    pub fn eval(&self, inf: &Multisegment) -> Result<Multisegment> {
        Ok(match self {
            Expr::One => Multisegment::empty(),
            Expr::Inf(_) => inf.clone(),
            Expr::Cusp(pi) => Multisegment::cuspidal(pi),
            Expr::Twist(e, n) => e.eval(inf)?.twisted(*n),
            Expr::Speh(n, e) => {
                let row = single_segment(&e.eval(inf)?, "Speh")?;
                LadderShape::new(row.base.clone(), *n, row.length, row.center())?.to_multisegment()
            }
            Expr::St(n, e) => {
                let cell = single_segment(&e.eval(inf)?, "St")?;
                if cell.length != 1 {
                    return Err(invalid(format!("St_{n} expects a cuspidal, got {cell}")));
                }
                LadderShape::new(cell.base.clone(), 1, *n, cell.start)?.to_multisegment()
            }
            Expr::Product(a, b) | Expr::Ordered(a, b) => a.eval(inf)?.union(&b.eval(inf)?),
        })
    }

    fn is_atomic(&self) -> bool {
        !matches!(self, Expr::Product(..) | Expr::Ordered(..))
    }
}

fn single_segment(m: &Multisegment, what: &str) -> Result<Segment> {
    match (m.segments(), m.wildcards()) {
        ([seg], []) => Ok(seg.clone()),
        _ => Err(invalid(format!("{what} expects a single segment, got {m}"))),
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::One => f.write_str("1"),
            Expr::Inf(name) => f.write_str(name),
            Expr::Cusp(pi) => write!(f, "{pi}"),
            Expr::Twist(e, n) if e.is_atomic() => write!(f, "{e}{{{n}}}"),
            Expr::Twist(e, n) => write!(f, "({e}){{{n}}}"),
            Expr::Speh(n, e) => write!(f, "Speh_{n}({e})"),
            Expr::St(n, e) => write!(f, "St_{n}({e})"),
            Expr::Product(a, b) => write!(f, "{a} × {b}"),
            Expr::Ordered(a, b) => write!(f, "{a} ×→ {b}"),
        }
    }
}
