//! Formal terms of the resolution of `p j_!*^{=t} HT(π, Π_t)` by extensions
//! by zero, of the filtration of `j_!^{=t} HT(π, Π_t)` by intermediate
//! extensions, and of the adjunction maps between consecutive terms.
//!
//! Every [`LedgerTerm`] is checked on construction: its infinitesimal part is
//! a representation of `GL_{hg}` where `h` is the stratum, and `h <= s_g`.

mod expr;
mod groth;

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

pub use expr::Expr;
pub use groth::{GrothSum, GrothSymbol};

use crate::error::{invalid, violation, Result};
use crate::zelevinsky::{Cuspidal, HalfInt, Multisegment, Wildcard};

pub const LEDGER_SCHEMA_VERSION: u32 = 1;

/// A positive rational, used for the prefactor `e_π · #Ker¹(ℚ, G) / d`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct Kappa {
    pub num: u64,
    pub den: u64,
}

impl Kappa {
    pub fn new(num: u64, den: u64) -> Result<Self> {
        if num == 0 || den == 0 {
            return Err(invalid(format!("kappa must be a positive rational, got {num}/{den}")));
        }
        Ok(Kappa { num, den })
    }
}

impl fmt::Display for Kappa {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(try_from = "RawContext")]
pub struct GlobalContext {
    d: u32,
    pi: Cuspidal,
    kappa: Kappa,
}

#[derive(Deserialize)]
struct RawContext {
    d: u32,
    pi: Cuspidal,
    kappa: Option<Kappa>,
}

impl TryFrom<RawContext> for GlobalContext {
    type Error = crate::Error;
    fn try_from(raw: RawContext) -> Result<Self> {
        match raw.kappa {
            Some(k) => GlobalContext::with_kappa(raw.d, raw.pi, Kappa::new(k.num, k.den)?),
            None => GlobalContext::new(raw.d, raw.pi),
        }
    }
}

impl GlobalContext {
    /// Context with `kappa = e_π / d`, i.e. `#Ker¹(ℚ, G) = 1`.
    pub fn new(d: u32, pi: Cuspidal) -> Result<Self> {
        let kappa = Kappa::new(pi.e_pi() as u64, d.max(1) as u64)?;
        GlobalContext::with_kappa(d, pi, kappa)
    }

    pub fn with_kappa(d: u32, pi: Cuspidal, kappa: Kappa) -> Result<Self> {
        if d == 0 || pi.g() > d {
            return Err(invalid(format!("context needs d >= g >= 1 (d={d}, g={})", pi.g())));
        }
        Ok(GlobalContext { d, pi, kappa })
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn g(&self) -> u32 {
        self.pi.g()
    }

    pub fn pi(&self) -> &Cuspidal {
        &self.pi
    }

    pub fn kappa(&self) -> Kappa {
        self.kappa
    }

    /// `⌊d/g⌋`.
    pub fn s_g(&self) -> u32 {
        self.d / self.pi.g()
    }

    fn check_stratum(&self, t: u32) -> Result<()> {
        if t == 0 || t > self.s_g() {
            return Err(invalid(format!("stratum {t} outside 1..={}", self.s_g())));
        }
        Ok(())
    }
}

/// The infinitesimal part `Π_t`: a display name and its multisegment.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Infinitesimal {
    pub name: String,
    pub value: Multisegment,
}

impl Infinitesimal {
    pub fn new(name: impl Into<String>, value: Multisegment) -> Self {
        Infinitesimal {
            name: name.into(),
            value,
        }
    }

    /// `Π_t` as an opaque representation of `GL_{tg}`.
    pub fn opaque(ctx: &GlobalContext, t: u32) -> Self {
        let name = format!("Π_{t}");
        let value = Multisegment::wildcard(Wildcard::new(name.clone(), t * ctx.g()));
        Infinitesimal { name, value }
    }

    pub(crate) fn expr(&self) -> Expr {
        Expr::inf(self.name.clone())
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TermKind {
    /// `j_!^{=h}`
    Shriek,
    /// `p j_!*^{=h}`
    Intermediate,
}

/// One labeled sheaf symbol. Equality and order ignore the display label.
#[derive(Clone, Debug)]
pub struct LedgerTerm {
    pub kind: TermKind,
    /// Id of the cuspidal `π` the local system is built on.
    pub pi: String,
    pub stratum: u32,
    pub label: Expr,
    pub infinitesimal: Multisegment,
    pub xi: HalfInt,
    pub tate: HalfInt,
    pub sign: i8,
}

impl LedgerTerm {
    #[allow(clippy::too_many_arguments)]
    pub(crate) fn build(
        ctx: &GlobalContext,
        kind: TermKind,
        stratum: u32,
        label: Expr,
        inf: &Multisegment,
        xi: HalfInt,
        tate: HalfInt,
        sign: i8,
    ) -> Result<Self> {
        ctx.check_stratum(stratum)?;
        let infinitesimal = label.eval(inf)?;
        let term = LedgerTerm {
            kind,
            pi: ctx.pi().id().to_string(),
            stratum,
            label,
            infinitesimal,
            xi,
            tate,
            sign,
        };
        term.check(ctx)?;
        Ok(term)
    }

    /// The stratum/degree invariant: `deg(infinitesimal) = stratum · g`.
    pub fn check(&self, ctx: &GlobalContext) -> Result<()> {
        let expected = self.stratum as u64 * ctx.g() as u64;
        if self.infinitesimal.degree() != expected {
            return Err(violation(format!(
                "term {self}: infinitesimal degree {} but stratum {} needs {expected}",
                self.infinitesimal.degree(),
                self.stratum
            )));
        }
        if self.stratum as u64 * ctx.g() as u64 > ctx.d() as u64 {
            return Err(violation(format!("term {self}: stratum beyond d")));
        }
        Ok(())
    }

    pub fn unsigned(&self) -> LedgerTerm {
        LedgerTerm {
            sign: 1,
            ..self.clone()
        }
    }

    /// `"+ <term>"` or `"- <term>"`.
    pub fn line(&self) -> String {
        let s = if self.sign < 0 { '-' } else { '+' };
        format!("{s} {self}")
    }

    fn key(&self) -> (TermKind, u32, &str, &Multisegment, HalfInt, HalfInt, i8) {
        (self.kind, self.stratum, &self.pi, &self.infinitesimal, self.xi, self.tate, self.sign)
    }

    pub fn to_record(&self) -> LedgerRecord {
        LedgerRecord {
            kind: self.kind,
            stratum: self.stratum,
            sign: self.sign,
            xi_twice: self.xi.twice(),
            tate_twice: self.tate.twice(),
            label: self.label.to_string(),
            infinitesimal: self.infinitesimal.clone(),
        }
    }
}

impl PartialEq for LedgerTerm {
    fn eq(&self, other: &Self) -> bool {
        self.key() == other.key()
    }
}

impl Eq for LedgerTerm {}

impl PartialOrd for LedgerTerm {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for LedgerTerm {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

impl fmt::Display for LedgerTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pi_label = &self.pi;
        match self.kind {
            TermKind::Shriek => write!(f, "j_!^{{={}}} HT({pi_label}, {})", self.stratum, self.label)?,
            TermKind::Intermediate => {
                write!(f, "p j_!*^{{={}}} HT({pi_label}, {})", self.stratum, self.label)?
            }
        }
        if !self.tate.is_zero() {
            write!(f, "({})", self.tate)?;
        }
        if !self.xi.is_zero() {
            write!(f, " ⊗ Ξ^{{{}}}", self.xi)?;
        }
        Ok(())
    }
}

/// The JSON model of a ledger term.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct LedgerRecord {
    pub kind: TermKind,
    pub stratum: u32,
    pub sign: i8,
    pub xi_twice: i64,
    pub tate_twice: i64,
    pub label: String,
    pub infinitesimal: Multisegment,
}

#[derive(Serialize, Deserialize)]
struct LedgerJson {
    schema_version: u32,
    terms: Vec<LedgerRecord>,
}

pub fn ledger_to_json(terms: &[LedgerTerm]) -> String {
    records_to_json(terms.iter().map(LedgerTerm::to_record).collect())
}

pub fn records_to_json(terms: Vec<LedgerRecord>) -> String {
    serde_json::to_string(&LedgerJson {
        schema_version: LEDGER_SCHEMA_VERSION,
        terms,
    })
    .expect("ledger serialization is infallible")
}

/// Parses ledger JSON and re-checks every record against `ctx`.
pub fn ledger_from_json(s: &str, ctx: &GlobalContext) -> Result<Vec<LedgerRecord>> {
    let raw: LedgerJson = serde_json::from_str(s).map_err(|e| invalid(format!("ledger json: {e}")))?;
    if raw.schema_version != LEDGER_SCHEMA_VERSION {
        return Err(invalid(format!("unsupported ledger schema_version {}", raw.schema_version)));
    }
    for (n, r) in raw.terms.iter().enumerate() {
        if r.sign != 1 && r.sign != -1 {
            return Err(invalid(format!("terms[{n}].sign must be ±1")));
        }
        if r.infinitesimal.degree() != r.stratum as u64 * ctx.g() as u64 {
            return Err(violation(format!("terms[{n}]: degree does not match stratum")));
        }
    }
    Ok(raw.terms)
}

pub(crate) fn check_infinitesimal(ctx: &GlobalContext, t: u32, inf: &Infinitesimal) -> Result<()> {
    ctx.check_stratum(t)?;
    let expected = t as u64 * ctx.g() as u64;
    if inf.value.degree() != expected {
        return Err(violation(format!(
            "infinitesimal part {} has degree {} but stratum {t} needs {expected}",
            inf.name,
            inf.value.degree()
        )));
    }
    Ok(())
}

/// The terms of the resolution
/// `0 → j_!^{=s_g}(…) → … → j_!^{=t+1}(Π_t{-1/2} × π{t/2}) ⊗ Ξ^{1/2} → j_!^{=t}(Π_t) → p j_!*^{=t}(Π_t) → 0`,
/// listed for `h = t..=s_g` followed by the augmentation target.
pub fn resolution_terms(ctx: &GlobalContext, t: u32, inf: &Infinitesimal) -> Result<Vec<LedgerTerm>> {
    check_infinitesimal(ctx, t, inf)?;
    let pi = Expr::cusp(ctx.pi());
    let mut out = Vec::new();
    for delta in 0..=(ctx.s_g() - t) {
        let label = inf
            .expr()
            .twist(HalfInt::half(-(delta as i64)))
            .times(Expr::speh(delta, pi.clone().twist(HalfInt::half(t as i64))));
        out.push(LedgerTerm::build(
            ctx,
            TermKind::Shriek,
            t + delta,
            label,
            &inf.value,
            HalfInt::half(delta as i64),
            HalfInt::ZERO,
            if delta % 2 == 0 { 1 } else { -1 },
        )?);
    }
    out.push(LedgerTerm::build(
        ctx,
        TermKind::Intermediate,
        t,
        inf.expr(),
        &inf.value,
        HalfInt::ZERO,
        HalfInt::ZERO,
        1,
    )?);
    Ok(out)
}

fn graded_parts(
    ctx: &GlobalContext,
    stratum: u32,
    label: &Expr,
    value: &Multisegment,
    xi: HalfInt,
    tate: HalfInt,
    sign: i8,
) -> Result<Vec<LedgerTerm>> {
    let pi = Expr::cusp(ctx.pi());
    (0..=(ctx.s_g() - stratum))
        .map(|delta| {
            LedgerTerm::build(
                ctx,
                TermKind::Intermediate,
                stratum + delta,
                label.clone().times_ordered(Expr::st(delta, pi.clone())),
                value,
                xi,
                tate + HalfInt::half(delta as i64),
                sign,
            )
        })
        .collect()
}

/// Graded parts `gr^{-δ} = p j_!*^{=t+δ} HT(π, Π_t ×→ St_δ(π))(δ/2)` of the
/// filtration of `j_!^{=t} HT(π, Π_t)`, for `δ = 0..=s_g - t`.
pub fn filtration_graded(ctx: &GlobalContext, t: u32, inf: &Infinitesimal) -> Result<Vec<LedgerTerm>> {
    check_infinitesimal(ctx, t, inf)?;
    graded_parts(ctx, t, &inf.expr(), &inf.value, HalfInt::ZERO, HalfInt::ZERO, 1)
}

/// `[j_!^{=t} HT(π, Π_t)]` as the sum of its graded parts.
pub fn expand_shriek(ctx: &GlobalContext, t: u32, inf: &Infinitesimal) -> Result<GrothSum> {
    let mut sum = GrothSum::zero();
    for term in filtration_graded(ctx, t, inf)? {
        sum.add_term(1, &term);
    }
    Ok(sum)
}

/// Expands an arbitrary shriek term through the filtration, carrying its
/// sign and Ξ-power.
pub fn expand_shriek_term(ctx: &GlobalContext, term: &LedgerTerm, inf: &Multisegment) -> Result<GrothSum> {
    if term.kind != TermKind::Shriek {
        return Err(invalid(format!("expand_shriek_term expects a shriek term, got {term}")));
    }
    let mut sum = GrothSum::zero();
    for part in graded_parts(ctx, term.stratum, &term.label, inf, term.xi, term.tate, term.sign)? {
        sum.add_term(1, &part);
    }
    Ok(sum)
}

/// Every shriek term of the resolution replaced by its graded parts.
///
/// No cancellation is attempted: identifying the resulting classes needs the
/// decomposition of `Speh × St` products, which is not modeled. Group the
/// result by stratum to inspect it.
pub fn expand_resolution(ctx: &GlobalContext, t: u32, inf: &Infinitesimal) -> Result<GrothSum> {
    let mut sum = GrothSum::zero();
    for term in resolution_terms(ctx, t, inf)? {
        if term.kind == TermKind::Shriek {
            sum = sum + expand_shriek_term(ctx, &term, &inf.value)?;
        }
    }
    Ok(sum)
}

/// The label of the local system induced by adjunction on the `δ`-th arrow of
/// the resolution:
/// `HT(π, Π_t{(1-δ)/2} × (Speh_{δ-1}(π{-1/2}) × π{(δ-1)/2}){t/2}) ⊗ Ξ^{δ/2}`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct InducedLabel {
    pub stratum: u32,
    pub label: Expr,
    pub infinitesimal: Multisegment,
    /// `Speh_{δ-1}(π{-1/2}) × π{(δ-1)/2}`, the part that does not involve `Π_t`.
    pub core_label: Expr,
    pub core: Multisegment,
    pub center: HalfInt,
    pub inf_twist: HalfInt,
    pub xi: HalfInt,
}

impl InducedLabel {
    /// The label with the infinitesimal part forgotten.
    pub fn stripped(&self) -> (&Multisegment, HalfInt) {
        (&self.core, self.xi)
    }

    /// Recovers the core from the evaluated label by removing `Π_t{(1-δ)/2}`
    /// and undoing the `{t/2}` centering.
    pub fn strip_from(&self, inf: &Multisegment) -> Option<Multisegment> {
        self.infinitesimal
            .difference(&inf.twisted(self.inf_twist))
            .map(|rest| rest.twisted(-self.center))
    }
}

impl fmt::Display for InducedLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HT(π, {}) ⊗ Ξ^{{{}}}", self.label, self.xi)
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AdjunctionLabel {
    pub source: LedgerTerm,
    pub target: LedgerTerm,
    pub induced: InducedLabel,
}

pub fn adjunction_label(
    ctx: &GlobalContext,
    t: u32,
    delta: u32,
    inf: &Infinitesimal,
) -> Result<AdjunctionLabel> {
    check_infinitesimal(ctx, t, inf)?;
    if delta == 0 || delta > ctx.s_g() - t {
        return Err(invalid(format!(
            "arrow index δ={delta} outside 1..={} for t={t}",
            ctx.s_g() - t
        )));
    }
    let terms = resolution_terms(ctx, t, inf)?;
    let source = terms[delta as usize].clone();
    let target = terms[delta as usize - 1].clone();

    let pi = Expr::cusp(ctx.pi());
    let core_label = Expr::speh(delta - 1, pi.clone().twist(HalfInt::half(-1)))
        .times(pi.twist(HalfInt::half(delta as i64 - 1)));
    let core = core_label.eval(&inf.value)?;
    let center = HalfInt::half(t as i64);
    let inf_twist = HalfInt::half(1 - delta as i64);
    let label = inf.expr().twist(inf_twist).times(core_label.clone().twist(center));
    let infinitesimal = label.eval(&inf.value)?;
    let stratum = t + delta;
    if infinitesimal.degree() != stratum as u64 * ctx.g() as u64 {
        return Err(violation(format!("induced label {label} has the wrong degree")));
    }
    Ok(AdjunctionLabel {
        source,
        target,
        induced: InducedLabel {
            stratum,
            label,
            infinitesimal,
            core_label,
            core,
            center,
            inf_twist,
            xi: HalfInt::half(delta as i64),
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zelevinsky::{make_speh, twist};

    fn ctx(d: u32, g: u32) -> GlobalContext {
        GlobalContext::new(d, Cuspidal::new("π", g, 1, "ρ").unwrap()).unwrap()
    }

    fn lines(terms: &[LedgerTerm]) -> Vec<String> {
        terms.iter().map(LedgerTerm::line).collect()
    }

    #[test]
    fn resolution_at_top_stratum() {
        let c = ctx(6, 2);
        let terms = resolution_terms(&c, 3, &Infinitesimal::opaque(&c, 3)).unwrap();
        assert_eq!(
            lines(&terms),
            vec!["+ j_!^{=3} HT(π, Π_3)", "+ p j_!*^{=3} HT(π, Π_3)"]
        );
    }

    #[test]
    fn resolution_length_and_signs() {
        for d in 1..=12u32 {
            for g in (1..=d).filter(|g| d % g == 0) {
                let c = ctx(d, g);
                for t in 1..=c.s_g() {
                    let terms = resolution_terms(&c, t, &Infinitesimal::opaque(&c, t)).unwrap();
                    assert_eq!(terms.len() as u32, c.s_g() - t + 2);
                    for (delta, term) in terms.iter().take(terms.len() - 1).enumerate() {
                        assert_eq!(term.sign, if delta % 2 == 0 { 1 } else { -1 });
                    }
                }
            }
        }
    }

    #[test]
    fn resolution_d4_g1_t2() {
        let c = ctx(4, 1);
        let terms = resolution_terms(&c, 2, &Infinitesimal::opaque(&c, 2)).unwrap();
        assert_eq!(terms[1].label.to_string(), "Π_2{-1/2} × π{1}");
        assert_eq!(terms[1].xi, HalfInt::half(1));
        assert_eq!(terms[2].label.to_string(), "Π_2{-1} × Speh_2(π{1})");
        assert_eq!(terms[2].xi, HalfInt::int(1));
        let speh = twist(&make_speh(c.pi().clone(), 2).unwrap().to_multisegment(), HalfInt::int(1));
        assert_eq!(terms[2].infinitesimal.difference(&speh).unwrap().wildcards()[0].twist, HalfInt::int(-1));
    }

    #[test]
    fn wrong_degree_is_an_invariant_violation() {
        let c = ctx(4, 1);
        let inf = Infinitesimal::opaque(&c, 1);
        assert!(matches!(
            resolution_terms(&c, 2, &inf),
            Err(crate::Error::InvariantViolation(_))
        ));
        assert!(matches!(
            resolution_terms(&c, 5, &Infinitesimal::opaque(&c, 5)),
            Err(crate::Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn filtration_counts_and_first_part() {
        let c = ctx(12, 3);
        let inf = Infinitesimal::opaque(&c, 1);
        let parts = filtration_graded(&c, 1, &inf).unwrap();
        assert_eq!(parts.len(), 4);
        assert_eq!(parts[0].line(), "+ p j_!*^{=1} HT(π, Π_1)");
        assert_eq!(parts[3].line(), "+ p j_!*^{=4} HT(π, Π_1 ×→ St_3(π))(3/2)");
    }

    #[test]
    fn adjunction_first_arrow() {
        let c = ctx(5, 1);
        for t in 1..=4 {
            let inf = Infinitesimal::opaque(&c, t);
            let a = adjunction_label(&c, t, 1, &inf).unwrap();
            assert_eq!(a.induced.label.to_string(), format!("Π_{t} × π{{{}}}", HalfInt::half(t as i64)));
            assert_eq!(a.induced.xi, HalfInt::half(1));
            assert_eq!(a.source.stratum, t + 1);
            assert_eq!(a.target.stratum, t);
        }
        assert!(adjunction_label(&c, 2, 0, &Infinitesimal::opaque(&c, 2)).is_err());
        assert!(adjunction_label(&c, 2, 4, &Infinitesimal::opaque(&c, 2)).is_err());
    }

    #[test]
    fn adjunction_core_is_the_support_of_speh() {
        let c = ctx(9, 1);
        for delta in 1..=8 {
            let a = adjunction_label(&c, 1, delta, &Infinitesimal::opaque(&c, 1)).unwrap();
            assert_eq!(a.induced.core, make_speh(c.pi().clone(), delta).unwrap().to_multisegment());
        }
    }

    #[test]
    fn expand_shriek_at_top_is_one_term() {
        let c = ctx(6, 2);
        let sum = expand_shriek(&c, 3, &Infinitesimal::opaque(&c, 3)).unwrap();
        assert_eq!(sum.len(), 1);
        assert_eq!(sum.to_string(), "[p j_!*^{=3} HT(π, Π_3)]");
    }

    #[test]
    fn expanded_resolution_groups_by_stratum() {
        let c = ctx(7, 1);
        for t in 1..=7 {
            let sum = expand_resolution(&c, t, &Infinitesimal::opaque(&c, t)).unwrap();
            let groups = sum.group_by_stratum();
            for (h, group) in &groups {
                let m = h - t;
                // Σ_{δ=0..m} (-1)^δ
                assert_eq!(group.coefficient_sum(), if m % 2 == 0 { 1 } else { 0 }, "t={t} h={h}");
            }
        }
    }

    #[test]
    fn ledger_json_roundtrip() {
        let c = ctx(4, 1);
        let terms = resolution_terms(&c, 2, &Infinitesimal::opaque(&c, 2)).unwrap();
        let json = ledger_to_json(&terms);
        let records = ledger_from_json(&json, &c).unwrap();
        assert_eq!(records.len(), terms.len());
        assert_eq!(records[2].label, "Π_2{-1} × Speh_2(π{1})");
        assert_eq!(records_to_json(records), json);
        assert!(ledger_from_json(&json, &ctx(4, 2)).is_err());
    }
}
