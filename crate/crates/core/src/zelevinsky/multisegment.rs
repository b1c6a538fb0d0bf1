use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::HalfInt;
use crate::error::{invalid, violation, Error, Result};

pub const MULTISEGMENT_SCHEMA_VERSION: u32 = 1;

/// Label of an inertial class of irreducible cuspidal representations of `GL_g`.
///
/// Twists are never folded into the label: they live on the segments, so two
/// cuspidals with the same `id` are inertially equivalent by construction.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
#[serde(try_from = "RawCuspidal")]
pub struct Cuspidal {
    id: String,
    g: u32,
    e_pi: u32,
    modl_class: String,
}

#[derive(Deserialize)]
struct RawCuspidal {
    id: String,
    g: u32,
    e_pi: u32,
    modl_class: String,
}

impl TryFrom<RawCuspidal> for Cuspidal {
    type Error = Error;
    fn try_from(raw: RawCuspidal) -> Result<Self> {
        Cuspidal::new(raw.id, raw.g, raw.e_pi, raw.modl_class)
    }
}

impl Cuspidal {
    pub fn new(
        id: impl Into<String>,
        g: u32,
        e_pi: u32,
        modl_class: impl Into<String>,
    ) -> Result<Self> {
        let id = id.into();
        if id.is_empty() {
            return Err(invalid("cuspidal id must be non-empty"));
        }
        if g == 0 {
            return Err(invalid(format!("cuspidal {id}: g must be positive")));
        }
        if e_pi == 0 {
            return Err(invalid(format!("cuspidal {id}: e_pi must be positive")));
        }
        Ok(Cuspidal {
            id,
            g,
            e_pi,
            modl_class: modl_class.into(),
        })
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn g(&self) -> u32 {
        self.g
    }

    pub fn e_pi(&self) -> u32 {
        self.e_pi
    }

    pub fn modl_class(&self) -> &str {
        &self.modl_class
    }

    pub fn inertially_equivalent(&self, other: &Cuspidal) -> bool {
        self.id == other.id
    }

    pub fn same_mod_l(&self, other: &Cuspidal) -> bool {
        self.modl_class == other.modl_class
    }

    /// The label of the mod-ℓ reduction. The self-twist count of a reduction
    /// is not part of the data, so reduced labels carry `e_pi = 1`.
    pub fn reduce_mod_l(&self) -> Cuspidal {
        Cuspidal {
            id: self.modl_class.clone(),
            g: self.g,
            e_pi: 1,
            modl_class: self.modl_class.clone(),
        }
    }
}

impl fmt::Display for Cuspidal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.id)
    }
}

/// The segment `[start, start + length - 1]` on the Zelevinsky line of `base`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Segment {
    pub base: Cuspidal,
    pub start: HalfInt,
    pub length: u32,
}

impl Segment {
    pub fn new(base: Cuspidal, start: HalfInt, length: u32) -> Result<Self> {
        if length == 0 {
            return Err(invalid("segment length must be positive"));
        }
        Ok(Segment {
            base,
            start,
            length,
        })
    }

    pub fn end(&self) -> HalfInt {
        self.start + HalfInt::int(self.length as i64 - 1)
    }

    pub fn center(&self) -> HalfInt {
        self.start + HalfInt::half(self.length as i64 - 1)
    }

    pub fn degree(&self) -> u64 {
        self.length as u64 * self.base.g as u64
    }

    fn shifted(&self, by: HalfInt) -> Segment {
        Segment {
            base: self.base.clone(),
            start: self.start + by,
            length: self.length,
        }
    }
}

impl fmt::Display for Segment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]_{}", self.start, self.end(), self.base)
    }
}

/// An unspecified factor of declared degree (the "?" of a local component).
/// Equality is by identifier, degree and twist.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct Wildcard {
    pub id: String,
    pub degree: u32,
    #[serde(rename = "twist_twice", default)]
    pub twist: HalfInt,
}

impl Wildcard {
    pub fn new(id: impl Into<String>, degree: u32) -> Self {
        Wildcard {
            id: id.into(),
            degree,
            twist: HalfInt::ZERO,
        }
    }
}

impl fmt::Display for Wildcard {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.twist.is_zero() {
            f.write_str(&self.id)
        } else {
            write!(f, "{}{{{}}}", self.id, self.twist)
        }
    }
}

/// A multiset of segments, kept in canonical (sorted) order so that derived
/// equality is multiset equality.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default, Serialize, Deserialize)]
#[serde(into = "CanonicalMultisegment", try_from = "CanonicalMultisegment")]
pub struct Multisegment {
    segments: Vec<Segment>,
    wildcards: Vec<Wildcard>,
    tate: HalfInt,
}

impl Multisegment {
    pub fn empty() -> Self {
        Multisegment::default()
    }

    pub fn new(segments: Vec<Segment>, wildcards: Vec<Wildcard>, tate: HalfInt) -> Self {
        let mut m = Multisegment {
            segments,
            wildcards,
            tate,
        };
        m.normalize();
        m
    }

    pub fn from_segments(segments: impl IntoIterator<Item = Segment>) -> Self {
        Multisegment::new(segments.into_iter().collect(), Vec::new(), HalfInt::ZERO)
    }

    pub fn cuspidal(base: &Cuspidal) -> Self {
        Multisegment::from_segments([Segment {
            base: base.clone(),
            start: HalfInt::ZERO,
            length: 1,
        }])
    }

    pub fn wildcard(w: Wildcard) -> Self {
        Multisegment::new(Vec::new(), vec![w], HalfInt::ZERO)
    }

    fn normalize(&mut self) {
        self.segments.sort();
        self.wildcards.sort();
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn wildcards(&self) -> &[Wildcard] {
        &self.wildcards
    }

    pub fn tate(&self) -> HalfInt {
        self.tate
    }

    pub fn with_tate(mut self, tate: HalfInt) -> Self {
        self.tate = tate;
        self
    }

    pub fn is_empty(&self) -> bool {
        self.segments.is_empty() && self.wildcards.is_empty()
    }

    pub fn degree(&self) -> u64 {
        self.segments.iter().map(Segment::degree).sum::<u64>()
            + self.wildcards.iter().map(|w| w.degree as u64).sum::<u64>()
    }

    pub fn twisted(&self, by: HalfInt) -> Multisegment {
        Multisegment {
            segments: self.segments.iter().map(|s| s.shifted(by)).collect(),
            wildcards: self
                .wildcards
                .iter()
                .map(|w| Wildcard {
                    twist: w.twist + by,
                    ..w.clone()
                })
                .collect(),
            tate: self.tate,
        }
    }

    /// Multiset union; Ξ-markers add.
    pub fn union(&self, other: &Multisegment) -> Multisegment {
        let mut segments = self.segments.clone();
        segments.extend(other.segments.iter().cloned());
        let mut wildcards = self.wildcards.clone();
        wildcards.extend(other.wildcards.iter().cloned());
        Multisegment::new(segments, wildcards, self.tate + other.tate)
    }

    /// Multiset difference; `None` unless `other` is contained in `self`.
    /// Ξ-markers subtract.
    pub fn difference(&self, other: &Multisegment) -> Option<Multisegment> {
        fn remove_all<T: PartialEq + Clone>(from: &[T], items: &[T]) -> Option<Vec<T>> {
            let mut left = from.to_vec();
            for x in items {
                let pos = left.iter().position(|y| y == x)?;
                left.remove(pos);
            }
            Some(left)
        }
        Some(Multisegment::new(
            remove_all(&self.segments, &other.segments)?,
            remove_all(&self.wildcards, &other.wildcards)?,
            self.tate - other.tate,
        ))
    }

    /// Every segment `[a,b]` becomes `[-b,-a]`.
    pub fn reflected(&self) -> Multisegment {
        Multisegment::new(
            self.segments
                .iter()
                .map(|s| Segment {
                    base: s.base.clone(),
                    start: -s.end(),
                    length: s.length,
                })
                .collect(),
            self.wildcards
                .iter()
                .map(|w| Wildcard {
                    twist: -w.twist,
                    ..w.clone()
                })
                .collect(),
            self.tate,
        )
    }

    pub fn map_bases(&self, f: impl Fn(&Cuspidal) -> Cuspidal) -> Multisegment {
        Multisegment::new(
            self.segments
                .iter()
                .map(|s| Segment {
                    base: f(&s.base),
                    start: s.start,
                    length: s.length,
                })
                .collect(),
            self.wildcards.clone(),
            self.tate,
        )
    }

    pub fn bases(&self) -> impl Iterator<Item = &Cuspidal> {
        self.segments.iter().map(|s| &s.base)
    }

    /// Canonical, bit-stable JSON.
    pub fn to_canonical_json(&self) -> String {
        serde_json::to_string(self).expect("multisegment serialization is infallible")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| invalid(format!("multisegment json: {e}")))
    }
}

impl fmt::Display for Multisegment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            f.write_str("∅")?;
        } else {
            let mut first = true;
            for s in &self.segments {
                if !first {
                    f.write_str(" + ")?;
                }
                first = false;
                write!(f, "{s}")?;
            }
            for w in &self.wildcards {
                if !first {
                    f.write_str(" + ")?;
                }
                first = false;
                write!(f, "{w}")?;
            }
        }
        if !self.tate.is_zero() {
            write!(f, " ⊗ Ξ^{{{}}}", self.tate)?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct CanonicalMultisegment {
    schema_version: u32,
    bases: Vec<Cuspidal>,
    segments: Vec<CanonicalSegment>,
    tate_twice: i64,
    wildcards: Vec<Wildcard>,
}

#[derive(Serialize, Deserialize)]
struct CanonicalSegment {
    base_id: String,
    start_twice: i64,
    length: u32,
}

impl From<Multisegment> for CanonicalMultisegment {
    fn from(m: Multisegment) -> Self {
        let mut bases: Vec<Cuspidal> = m.segments.iter().map(|s| s.base.clone()).collect();
        bases.sort();
        bases.dedup();
        CanonicalMultisegment {
            schema_version: MULTISEGMENT_SCHEMA_VERSION,
            bases,
            segments: m
                .segments
                .iter()
                .map(|s| CanonicalSegment {
                    base_id: s.base.id.clone(),
                    start_twice: s.start.twice(),
                    length: s.length,
                })
                .collect(),
            tate_twice: m.tate.twice(),
            wildcards: m.wildcards,
        }
    }
}

impl TryFrom<CanonicalMultisegment> for Multisegment {
    type Error = Error;
    fn try_from(c: CanonicalMultisegment) -> Result<Self> {
        if c.schema_version != MULTISEGMENT_SCHEMA_VERSION {
            return Err(invalid(format!(
                "unsupported multisegment schema_version {}",
                c.schema_version
            )));
        }
        let mut bases: BTreeMap<String, Cuspidal> = BTreeMap::new();
        for b in c.bases {
            if let Some(prev) = bases.get(&b.id) {
                if *prev != b {
                    return Err(violation(format!(
                        "base {} declared twice with different data",
                        b.id
                    )));
                }
            }
            bases.insert(b.id.clone(), b);
        }
        let segments = c
            .segments
            .into_iter()
            .map(|s| {
                let base = bases
                    .get(&s.base_id)
                    .ok_or_else(|| invalid(format!("unknown base_id {}", s.base_id)))?;
                Segment::new(base.clone(), HalfInt::from_twice(s.start_twice), s.length)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Multisegment::new(
            segments,
            c.wildcards,
            HalfInt::from_twice(c.tate_twice),
        ))
    }
}
