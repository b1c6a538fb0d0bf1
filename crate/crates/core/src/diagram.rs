//! The `(r, i)` cohomology diagrams `m_{s,t}(r, i)` of a Speh-Steinberg
//! ladder, their superposition over the factors of a local component, and
//! the labels of the constituents sitting at each point.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::zelevinsky::{
    make_speh, make_steinberg, mod_l_reduce, Cuspidal, HalfInt, Multisegment, Wildcard,
};

pub const DIAGRAM_SCHEMA_VERSION: u32 = 1;
pub const COMPONENT_SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct DiagramPoint {
    pub r: i64,
    pub i: i64,
}

impl DiagramPoint {
    pub const fn new(r: i64, i: i64) -> Self {
        DiagramPoint { r, i }
    }
}

impl fmt::Display for DiagramPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.r, self.i)
    }
}

/// `m_{s,t}(r, i) ∈ {0, 1}`.
pub fn m_indicator(s: u32, t: u32, r: i64, i: i64) -> Result<bool> {
    if s == 0 || t == 0 {
        return Err(invalid(format!("m_indicator needs s, t >= 1 (got s={s}, t={t})")));
    }
    let (s, t) = (s as i64, t as i64);
    let top = s + t - 1;
    let bottom = 1.max(top - 2 * (s - 1));
    if r < bottom || r > top {
        return Ok(false);
    }
    if r >= t {
        let bound = top - r;
        if i.abs() > bound || (i - bound).rem_euclid(2) != 0 {
            return Ok(false);
        }
    }
    if r <= t {
        let bound = s - 1 - (t - r);
        if i.abs() > bound || (i - (s - t - 1 + r)).rem_euclid(2) != 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Points of a diagram, each annotated with the (1-based) indices of the
/// factors contributing there.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Diagram {
    annotations: BTreeMap<DiagramPoint, Vec<usize>>,
}

impl Diagram {
    fn insert(&mut self, p: DiagramPoint, k: usize) {
        let ks = self.annotations.entry(p).or_default();
        if !ks.contains(&k) {
            ks.push(k);
            ks.sort_unstable();
        }
    }

    pub fn len(&self) -> usize {
        self.annotations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.annotations.is_empty()
    }

    pub fn contains(&self, p: DiagramPoint) -> bool {
        self.annotations.contains_key(&p)
    }

    pub fn points(&self) -> impl Iterator<Item = DiagramPoint> + '_ {
        self.annotations.keys().copied()
    }

    pub fn factors_at(&self, p: DiagramPoint) -> &[usize] {
        self.annotations.get(&p).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn iter(&self) -> impl Iterator<Item = (DiagramPoint, &[usize])> {
        self.annotations.iter().map(|(p, ks)| (*p, ks.as_slice()))
    }

    pub fn r_range(&self) -> Option<(i64, i64)> {
        let min = self.annotations.keys().map(|p| p.r).min()?;
        let max = self.annotations.keys().map(|p| p.r).max()?;
        Some((min, max))
    }

    pub fn max_abs_i(&self) -> i64 {
        self.annotations.keys().map(|p| p.i.abs()).max().unwrap_or(0)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&DiagramJson::from(self)).expect("diagram serialization is infallible")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let raw: DiagramJson =
            serde_json::from_str(s).map_err(|e| invalid(format!("diagram json: {e}")))?;
        if raw.schema_version != DIAGRAM_SCHEMA_VERSION {
            return Err(invalid(format!(
                "unsupported diagram schema_version {}",
                raw.schema_version
            )));
        }
        let mut d = Diagram::default();
        for p in raw.points {
            if p.factors.is_empty() {
                return Err(invalid(format!("point ({},{}) has no factors", p.r, p.i)));
            }
            for k in p.factors {
                d.insert(DiagramPoint::new(p.r, p.i), k);
            }
        }
        Ok(d)
    }
}

#[derive(Serialize, Deserialize)]
struct DiagramJson {
    schema_version: u32,
    points: Vec<PointJson>,
}

#[derive(Serialize, Deserialize)]
struct PointJson {
    r: i64,
    i: i64,
    factors: Vec<usize>,
}

impl From<&Diagram> for DiagramJson {
    fn from(d: &Diagram) -> Self {
        DiagramJson {
            schema_version: DIAGRAM_SCHEMA_VERSION,
            points: d
                .iter()
                .map(|(p, ks)| PointJson {
                    r: p.r,
                    i: p.i,
                    factors: ks.to_vec(),
                })
                .collect(),
        }
    }
}

fn add_factor_diagram(d: &mut Diagram, s: u32, t: u32, k: usize) -> Result<()> {
    let top = (s + t - 1) as i64;
    for r in 1..=top {
        for i in -top..=top {
            if m_indicator(s, t, r, i)? {
                d.insert(DiagramPoint::new(r, i), k);
            }
        }
    }
    Ok(())
}

/// All `(r, i)` with `m_{s,t}(r, i) = 1`, annotated with factor 1.
pub fn diagram(s: u32, t: u32) -> Result<Diagram> {
    if s == 0 || t == 0 {
        return Err(invalid(format!("diagram needs s, t >= 1 (got s={s}, t={t})")));
    }
    let mut d = Diagram::default();
    add_factor_diagram(&mut d, s, t, 1)?;
    Ok(d)
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct Factor {
    pub t: u32,
    pub base: Cuspidal,
}

/// `Speh_s(St_{t_1}(π_1) × ... × St_{t_u}(π_u))`, optionally times an
/// unspecified factor.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
#[serde(try_from = "ComponentJson", into = "ComponentJson")]
pub struct LocalComponent {
    s: u32,
    factors: Vec<Factor>,
    wildcard: Option<Wildcard>,
}

#[derive(Serialize, Deserialize)]
struct ComponentJson {
    schema_version: u32,
    s: u32,
    factors: Vec<Factor>,
    #[serde(default)]
    wildcard: Option<Wildcard>,
}

impl TryFrom<ComponentJson> for LocalComponent {
    type Error = Error;
    fn try_from(c: ComponentJson) -> Result<Self> {
        if c.schema_version != COMPONENT_SCHEMA_VERSION {
            return Err(invalid(format!(
                "unsupported local component schema_version {}",
                c.schema_version
            )));
        }
        LocalComponent::new(c.s, c.factors, c.wildcard)
    }
}

impl From<LocalComponent> for ComponentJson {
    fn from(c: LocalComponent) -> Self {
        ComponentJson {
            schema_version: COMPONENT_SCHEMA_VERSION,
            s: c.s,
            factors: c.factors,
            wildcard: c.wildcard,
        }
    }
}

impl LocalComponent {
    pub fn new(s: u32, factors: Vec<Factor>, wildcard: Option<Wildcard>) -> Result<Self> {
        if s == 0 {
            return Err(invalid("local component needs s >= 1"));
        }
        if let Some(f) = factors.iter().find(|f| f.t == 0) {
            return Err(invalid(format!("factor over {} has t = 0", f.base)));
        }
        Ok(LocalComponent {
            s,
            factors,
            wildcard,
        })
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    /// Factor `k`, 1-based.
    pub fn factor(&self, k: usize) -> Option<&Factor> {
        k.checked_sub(1).and_then(|i| self.factors.get(i))
    }

    pub fn wildcard(&self) -> Option<&Wildcard> {
        self.wildcard.as_ref()
    }

    pub fn degree(&self) -> u64 {
        self.factors
            .iter()
            .map(|f| self.s as u64 * f.t as u64 * f.base.g() as u64)
            .sum::<u64>()
            + self.wildcard.as_ref().map_or(0, |w| w.degree as u64)
    }

    pub fn to_multisegment(&self) -> Multisegment {
        let mut m = Multisegment::empty();
        for f in &self.factors {
            let ladder = make_speh(make_steinberg(&f.base, f.t).expect("t >= 1"), self.s)
                .expect("s >= 1");
            m = m.union(&ladder.to_multisegment());
        }
        if let Some(w) = &self.wildcard {
            m = m.union(&Multisegment::wildcard(w.clone()));
        }
        m
    }

    /// 1-based indices `k` with `π_k` inertially equivalent to `pi`.
    pub fn matching_factors<'a>(&'a self, pi: &'a Cuspidal) -> impl Iterator<Item = usize> + 'a {
        self.factors
            .iter()
            .enumerate()
            .filter(move |(_, f)| f.base.inertially_equivalent(pi))
            .map(|(j, _)| j + 1)
    }

    pub fn substitute(&self, from: &Cuspidal, to: &Cuspidal) -> LocalComponent {
        LocalComponent {
            s: self.s,
            factors: self
                .factors
                .iter()
                .map(|f| Factor {
                    t: f.t,
                    base: if f.base.id() == from.id() {
                        to.clone()
                    } else {
                        f.base.clone()
                    },
                })
                .collect(),
            wildcard: self.wildcard.clone(),
        }
    }

    pub fn map_bases(&self, f: impl Fn(&Cuspidal) -> Cuspidal) -> LocalComponent {
        LocalComponent {
            s: self.s,
            factors: self
                .factors
                .iter()
                .map(|x| Factor {
                    t: x.t,
                    base: f(&x.base),
                })
                .collect(),
            wildcard: self.wildcard.clone(),
        }
    }
}

fn ladder_label(s: u32, t: u32, base: &Cuspidal) -> String {
    let inner = if t == 1 {
        base.to_string()
    } else {
        format!("St_{t}({base})")
    };
    if s == 1 {
        inner
    } else {
        format!("Speh_{s}({inner})")
    }
}

impl fmt::Display for LocalComponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self
            .factors
            .iter()
            .map(|x| ladder_label(self.s, x.t, &x.base))
            .collect();
        if let Some(w) = &self.wildcard {
            parts.push(w.to_string());
        }
        f.write_str(&parts.join(" × "))
    }
}

/// Superposition of the diagrams of all factors of `c`.
pub fn superpose(c: &LocalComponent) -> Diagram {
    let mut d = Diagram::default();
    for (j, f) in c.factors.iter().enumerate() {
        add_factor_diagram(&mut d, c.s, f.t, j + 1).expect("component invariants hold");
    }
    d
}

fn annotated_factor(c: &LocalComponent, p: DiagramPoint, k: usize) -> Result<&Factor> {
    let f = c
        .factor(k)
        .ok_or_else(|| invalid(format!("factor index {k} out of range 1..={}", c.factors.len())))?;
    if !m_indicator(c.s, f.t, p.r, p.i)? {
        return Err(invalid(format!("factor {k} does not annotate {p}")));
    }
    Ok(f)
}

/// The `(s + t_k - 1, 0)` point the factor-`k` constituent at `p` comes from,
/// or `None` when `p` is already that vertex.
pub fn trace_back(c: &LocalComponent, p: DiagramPoint, k: usize) -> Result<Option<DiagramPoint>> {
    let f = annotated_factor(c, p, k)?;
    let top = (c.s + f.t - 1) as i64;
    Ok((top > p.r).then_some(DiagramPoint::new(top, 0)))
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum ConstituentPart {
    Speh { s: u32, t: u32, base: Cuspidal },
    /// The opaque `R_π(s, t)(r, i)`, a representation of `GL_{(st - r)g}`.
    R { s: u32, t: u32, r: i64, i: i64, base: Cuspidal },
}

impl ConstituentPart {
    fn infinitesimal_degree(&self) -> u64 {
        match self {
            ConstituentPart::Speh { s, t, base } => (*s as u64) * (*t as u64) * base.g() as u64,
            ConstituentPart::R { s, t, r, base, .. } => {
                ((*s as i64 * *t as i64 - r) * base.g() as i64) as u64
            }
        }
    }

    fn map_base(&self, f: &impl Fn(&Cuspidal) -> Cuspidal) -> ConstituentPart {
        match self {
            ConstituentPart::Speh { s, t, base } => ConstituentPart::Speh {
                s: *s,
                t: *t,
                base: f(base),
            },
            ConstituentPart::R { s, t, r, i, base } => ConstituentPart::R {
                s: *s,
                t: *t,
                r: *r,
                i: *i,
                base: f(base),
            },
        }
    }
}

impl fmt::Display for ConstituentPart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConstituentPart::Speh { s, t, base } => f.write_str(&ladder_label(*s, *t, base)),
            ConstituentPart::R { s, t, r, i, base } => write!(f, "R_{base}({s},{t})({r},{i})"),
        }
    }
}

/// `R_π(s, t_k)(r, i)(Π_v, k) ⊗ (ξ_k ⊗ Ξ^{i/2})`: the factor-`k` constituent
/// of the superposed diagram at `(r, i)`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct ConstituentLabel {
    pub point: DiagramPoint,
    pub k: usize,
    pub parts: Vec<ConstituentPart>,
    pub wildcard: Option<Wildcard>,
    /// The base `π_k`; the character `ξ_k` is `π_k ⊗ π^{-1}`.
    pub xi: Cuspidal,
    pub xi_power: HalfInt,
}

impl ConstituentLabel {
    /// Degree of the `GL_{d - rg}` part.
    pub fn infinitesimal_degree(&self) -> u64 {
        self.parts.iter().map(ConstituentPart::infinitesimal_degree).sum::<u64>()
            + self.wildcard.as_ref().map_or(0, |w| w.degree as u64)
    }

    /// `r·g_k`, the stratum carrying the constituent.
    pub fn stratum_degree(&self) -> u64 {
        self.point.r as u64 * self.xi.g() as u64
    }

    pub fn degree(&self) -> u64 {
        self.infinitesimal_degree() + self.stratum_degree()
    }

    pub fn map_bases(&self, f: impl Fn(&Cuspidal) -> Cuspidal) -> ConstituentLabel {
        ConstituentLabel {
            point: self.point,
            k: self.k,
            parts: self.parts.iter().map(|p| p.map_base(&f)).collect(),
            wildcard: self.wildcard.clone(),
            xi: f(&self.xi),
            xi_power: self.xi_power,
        }
    }

    pub fn substitute(&self, from: &Cuspidal, to: &Cuspidal) -> ConstituentLabel {
        self.map_bases(|b| if b.id() == from.id() { to.clone() } else { b.clone() })
    }

    pub fn reduce_mod_l(&self) -> ConstituentLabel {
        self.map_bases(Cuspidal::reduce_mod_l)
    }

    pub fn marker(&self) -> String {
        format!("ξ_{} ⊗ Ξ^{{{}}}", self.k, self.xi_power)
    }

    /// Multisegment of the factors left untouched (all `j ≠ k`), mod ℓ.
    pub fn untouched_mod_l(&self) -> Multisegment {
        let mut m = Multisegment::empty();
        for p in &self.parts {
            if let ConstituentPart::Speh { s, t, base } = p {
                let ladder = make_speh(make_steinberg(base, *t).expect("t >= 1"), *s)
                    .expect("s >= 1");
                m = m.union(&ladder.to_multisegment());
            }
        }
        mod_l_reduce(&m)
    }
}

impl fmt::Display for ConstituentLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.parts.iter().map(ToString::to_string).collect();
        if let Some(w) = &self.wildcard {
            parts.push(w.to_string());
        }
        f.write_str(&parts.join(" × "))
    }
}

pub fn constituent(c: &LocalComponent, p: DiagramPoint, k: usize) -> Result<ConstituentLabel> {
    let fk = annotated_factor(c, p, k)?;
    let parts = c
        .factors
        .iter()
        .enumerate()
        .map(|(j, f)| {
            if j + 1 == k {
                ConstituentPart::R {
                    s: c.s,
                    t: f.t,
                    r: p.r,
                    i: p.i,
                    base: f.base.clone(),
                }
            } else {
                ConstituentPart::Speh {
                    s: c.s,
                    t: f.t,
                    base: f.base.clone(),
                }
            }
        })
        .collect();
    Ok(ConstituentLabel {
        point: p,
        k,
        parts,
        wildcard: c.wildcard.clone(),
        xi: fk.base.clone(),
        xi_power: HalfInt::half(p.i),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn pi() -> Cuspidal {
        Cuspidal::new("π", 1, 1, "ρ").unwrap()
    }

    fn three_ladders() -> LocalComponent {
        LocalComponent::new(
            4,
            [1, 3, 5].iter().map(|&t| Factor { t, base: pi() }).collect(),
            None,
        )
        .unwrap()
    }

    #[test]
    fn steinberg_indicator() {
        for t in 1..=10u32 {
            assert!(m_indicator(1, t, t as i64, 0).unwrap());
            for r in -2..=15i64 {
                for i in -5..=5 {
                    if r != t as i64 || i != 0 {
                        assert!(!m_indicator(1, t, r, i).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn parity_excludes_center_of_speh_two() {
        assert!(!m_indicator(2, 1, 1, 0).unwrap());
        assert!(m_indicator(2, 1, 1, 1).unwrap());
        assert!(m_indicator(2, 1, 2, 0).unwrap());
    }

    #[test]
    fn speh_four_steinberg_five_at_r_four() {
        let hits: Vec<i64> = (-6..=6).filter(|&i| m_indicator(4, 5, 4, i).unwrap()).collect();
        assert_eq!(hits, vec![-2, 0, 2]);
    }

    #[test]
    fn invalid_shapes() {
        assert!(m_indicator(0, 1, 1, 0).is_err());
        assert!(m_indicator(1, 0, 1, 0).is_err());
        assert!(diagram(0, 3).is_err());
    }

    #[test]
    fn steinberg_diagram_is_a_point() {
        for t in 1..=12 {
            let d = diagram(1, t).unwrap();
            assert_eq!(d.points().collect::<Vec<_>>(), vec![DiagramPoint::new(t as i64, 0)]);
        }
    }

    #[test]
    fn diagram_is_symmetric_and_arithmetic() {
        for s in 1..=9u32 {
            for t in 1..=9u32 {
                let d = diagram(s, t).unwrap();
                for p in d.points() {
                    assert!(d.contains(DiagramPoint::new(p.r, -p.i)));
                }
                // for each r, i values form a step-2 progression symmetric about 0
                let mut by_r: BTreeMap<i64, Vec<i64>> = BTreeMap::new();
                for p in d.points() {
                    by_r.entry(p.r).or_default().push(p.i);
                }
                for is in by_r.values() {
                    assert!(is.windows(2).all(|w| w[1] - w[0] == 2));
                    assert_eq!(is[0], -is[is.len() - 1]);
                }
            }
        }
    }

    #[test]
    fn three_ladder_superposition() {
        let d = superpose(&three_ladders());
        assert_eq!(d.factors_at(DiagramPoint::new(4, 0)), &[1, 2, 3]);
        for (k, t) in [(1usize, 1i64), (2, 3), (3, 5)] {
            assert!(d.factors_at(DiagramPoint::new(4 + t - 1, 0)).contains(&k));
        }
    }

    #[test]
    fn superpose_of_single_factor_is_the_diagram() {
        for s in 1..=5 {
            for t in 1..=5 {
                let c = LocalComponent::new(s, vec![Factor { t, base: pi() }], None).unwrap();
                assert_eq!(superpose(&c), diagram(s, t).unwrap());
            }
        }
    }

    #[test]
    fn trace_back_three_ladders() {
        let c = three_ladders();
        let p = DiagramPoint::new(4, 0);
        assert_eq!(trace_back(&c, p, 3).unwrap(), Some(DiagramPoint::new(8, 0)));
        assert_eq!(trace_back(&c, p, 2).unwrap(), Some(DiagramPoint::new(6, 0)));
        assert_eq!(trace_back(&c, p, 1).unwrap(), None);
        assert!(trace_back(&c, DiagramPoint::new(4, 1), 1).is_err());
        assert!(trace_back(&c, p, 4).is_err());
    }

    #[test]
    fn constituent_labels_three_ladders() {
        let c = three_ladders();
        let p = DiagramPoint::new(4, 0);
        let labels: Vec<String> = (1..=3).map(|k| constituent(&c, p, k).unwrap().to_string()).collect();
        assert_eq!(
            labels,
            vec![
                "R_π(4,1)(4,0) × Speh_4(St_3(π)) × Speh_4(St_5(π))",
                "Speh_4(π) × R_π(4,3)(4,0) × Speh_4(St_5(π))",
                "Speh_4(π) × Speh_4(St_3(π)) × R_π(4,5)(4,0)",
            ]
        );
        let l = constituent(&c, DiagramPoint::new(4, 2), 3).unwrap();
        assert_eq!(l.marker(), "ξ_3 ⊗ Ξ^{1}");
        for k in 1..=3 {
            assert_eq!(constituent(&c, p, k).unwrap().degree(), c.degree());
        }
    }

    #[test]
    fn constituent_commutes_with_substitution() {
        let c = three_ladders();
        let pi2 = Cuspidal::new("π'", 1, 3, "ρ").unwrap();
        let d = superpose(&c);
        for (p, ks) in d.iter() {
            for &k in ks {
                let a = constituent(&c.substitute(&pi(), &pi2), p, k).unwrap();
                let b = constituent(&c, p, k).unwrap().substitute(&pi(), &pi2);
                assert_eq!(a, b);
                assert_eq!(a.reduce_mod_l(), constituent(&c, p, k).unwrap().reduce_mod_l());
            }
        }
    }

    #[test]
    fn superpose_is_monotone() {
        let base = LocalComponent::new(3, vec![Factor { t: 2, base: pi() }], None).unwrap();
        let bigger = LocalComponent::new(
            3,
            vec![Factor { t: 2, base: pi() }, Factor { t: 4, base: pi() }],
            None,
        )
        .unwrap();
        let (a, b) = (superpose(&base), superpose(&bigger));
        for (p, ks) in a.iter() {
            let later: BTreeSet<_> = b.factors_at(p).iter().collect();
            assert!(ks.iter().all(|k| later.contains(k)));
        }
    }

    #[test]
    fn diagram_json_roundtrip() {
        let d = superpose(&three_ladders());
        let json = d.to_json();
        assert!(json.starts_with(r#"{"schema_version":1,"points":[{"r":1,"i":-3,"factors":[1]}"#));
        assert_eq!(Diagram::from_json(&json).unwrap(), d);
    }

    #[test]
    fn component_json_roundtrip() {
        let c = three_ladders();
        let json = serde_json::to_string(&c).unwrap();
        let back: LocalComponent = serde_json::from_str(&json).unwrap();
        assert_eq!(back, c);
        let bad = json.replace("\"s\":4", "\"s\":0");
        assert!(serde_json::from_str::<LocalComponent>(&bad).is_err());
    }
}
