//! Segments and multisegments over cuspidal lines: duality, linking, the ordering used to
//! form standard modules, socles of two-segment products, Jacquet modules of segment
//! representations, classification labels, and the double-coset sets `W^{beta,gamma}`.
//!
//! A cuspidal line stands for a weak equivalence class of cuspidal representations, so
//! "weakly precedes" and "weakly linked" are the same as "precedes" and "linked" here.

use crate::heis::{Group, LinChar};
use crate::mtp::{compatible, MtpError};
use itertools::Itertools;
use num_rational::Ratio;
use rand::Rng;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SegError {
    #[error("invalid segment: {0}")]
    Invalid(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("ordering check failed at positions {0} and {1}")]
    Ordering(usize, usize),
    #[error("incompatible central character: {0}")]
    Incompatible(String),
    #[error("composition too large: r = {0} exceeds {1}")]
    TooLarge(usize, usize),
}

/// A cuspidal `rho` of `GL_{r0}` up to weak equivalence, with its reducibility exponent.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CuspidalLine {
    pub id: String,
    /// Whether this is the contragredient line of `id`.
    pub dual: bool,
    pub r0: u32,
    pub s_rho: Ratio<i64>,
}

impl CuspidalLine {
    pub fn new(id: &str, r0: u32, s_rho: Ratio<i64>) -> Result<Self, SegError> {
        if r0 == 0 || s_rho <= Ratio::from_integer(0) || id.is_empty() {
            return Err(SegError::Invalid(format!("line {id:?}: need r0 >= 1 and s_rho > 0")));
        }
        let (id, dual) = match id.strip_suffix("^v") {
            Some(base) => (base.to_string(), true),
            None => (id.to_string(), false),
        };
        Ok(CuspidalLine { id, dual, r0, s_rho })
    }

    pub fn dual(&self) -> Self {
        CuspidalLine { dual: !self.dual, ..self.clone() }
    }

    pub fn name(&self) -> String {
        if self.dual {
            format!("{}^v", self.id)
        } else {
            self.id.clone()
        }
    }
}

/// `[a, b]_rho`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Segment {
    pub line: CuspidalLine,
    pub a: i64,
    pub b: i64,
}

impl fmt::Display for Segment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]_{}", self.a, self.b, self.line.name())
    }
}

impl Segment {
    pub fn new(line: &CuspidalLine, a: i64, b: i64) -> Result<Self, SegError> {
        if a > b {
            return Err(SegError::Invalid(format!("a = {a} > b = {b}")));
        }
        Ok(Segment { line: line.clone(), a, b })
    }

    /// Number of cuspidals `b - a + 1`.
    pub fn length(&self) -> u64 {
        (self.b - self.a + 1) as u64
    }

    pub fn degree(&self) -> u64 {
        self.line.r0 as u64 * self.length()
    }

    pub fn dual(&self) -> Segment {
        Segment { line: self.line.dual(), a: -self.b, b: -self.a }
    }

    pub fn contains(&self, o: &Segment) -> bool {
        self.line == o.line && self.a <= o.a && o.b <= self.b
    }

    /// `(line, exponent)` for every cuspidal in the segment.
    pub fn support(&self) -> Vec<(CuspidalLine, i64)> {
        (self.a..=self.b).map(|e| (self.line.clone(), e)).collect()
    }
}

/// `d1` precedes `d2`: same line, `a2 > a1`, `b2 > b1` and `b1 + 1 >= a2`.
pub fn precedes(d1: &Segment, d2: &Segment) -> bool {
    d1.line == d2.line && d2.a > d1.a && d2.b > d1.b && d1.b + 1 >= d2.a
}

pub fn linked(d1: &Segment, d2: &Segment) -> bool {
    precedes(d1, d2) || precedes(d2, d1)
}

/// Lines are weak classes, so this is [`precedes`].
pub fn weakly_precedes(d1: &Segment, d2: &Segment) -> bool {
    precedes(d1, d2)
}

pub fn weakly_linked(d1: &Segment, d2: &Segment) -> bool {
    linked(d1, d2)
}

/// Union and (possibly empty) intersection of linked segments.
pub fn union_intersection(d1: &Segment, d2: &Segment) -> Result<(Segment, Option<Segment>), SegError> {
    if !linked(d1, d2) {
        return Err(SegError::Precondition(format!("{d1} and {d2} are not linked")));
    }
    let union = Segment { line: d1.line.clone(), a: d1.a.min(d2.a), b: d1.b.max(d2.b) };
    let (lo, hi) = (d1.a.max(d2.a), d1.b.min(d2.b));
    let inter = (lo <= hi).then(|| Segment { line: d1.line.clone(), a: lo, b: hi });
    Ok((union, inter))
}

/// A multiset of segments, stored sorted.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Multisegment {
    segs: Vec<Segment>,
}

impl Multisegment {
    pub fn new(mut segs: Vec<Segment>) -> Self {
        segs.sort();
        Multisegment { segs }
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segs
    }

    pub fn degree(&self) -> u64 {
        self.segs.iter().map(Segment::degree).sum()
    }

    pub fn dual(&self) -> Multisegment {
        Multisegment::new(self.segs.iter().map(Segment::dual).collect())
    }

    /// Cuspidal support as a multiset of `(line, exponent)`.
    pub fn support(&self) -> BTreeMap<(CuspidalLine, i64), usize> {
        let mut out = BTreeMap::new();
        for s in &self.segs {
            for p in s.support() {
                *out.entry(p).or_insert(0) += 1;
            }
        }
        out
    }
}

impl fmt::Display for Multisegment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.segs.iter().map(|s| s.to_string()).join(" + "))
    }
}

/// Whether no earlier segment weakly precedes a later one.
pub fn is_standard_order(segs: &[Segment]) -> Option<(usize, usize)> {
    for i in 0..segs.len() {
        for j in i + 1..segs.len() {
            if weakly_precedes(&segs[i], &segs[j]) {
                return Some((i, j));
            }
        }
    }
    None
}

/// Sorted by `b` descending, then `a` descending, then line; verified afterwards.
pub fn order_multisegment(m: &Multisegment) -> Result<Vec<Segment>, SegError> {
    let mut v = m.segs.clone();
    v.sort_by(|x, y| y.b.cmp(&x.b).then(y.a.cmp(&x.a)).then(x.line.cmp(&y.line)));
    match is_standard_order(&v) {
        Some((i, j)) => Err(SegError::Ordering(i, j)),
        None => Ok(v),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Kind {
    Z,
    L,
}

/// Jacquet module `r_{(s, deg - s)}` of `Z(seg)` or `L(seg)`: `None` when `r0` does not divide
/// `s`, otherwise the two tensor factors (an empty factor is `None`).
pub fn jacquet_segment(seg: &Segment, s: u64, kind: Kind) -> Result<Option<(Option<Segment>, Option<Segment>)>, SegError> {
    if s > seg.degree() {
        return Err(SegError::Precondition(format!("s = {s} exceeds deg = {}", seg.degree())));
    }
    let r0 = seg.line.r0 as u64;
    if s % r0 != 0 {
        return Ok(None);
    }
    let s0 = (s / r0) as i64;
    let part = |a: i64, b: i64| (a <= b).then(|| Segment { line: seg.line.clone(), a, b });
    Ok(Some(match kind {
        Kind::Z => (part(seg.a, seg.a + s0 - 1), part(seg.a + s0, seg.b)),
        Kind::L => (part(seg.b - s0 + 1, seg.b), part(seg.a, seg.b - s0)),
    }))
}

/// Central character data: an opaque token, or a character of a finite cover model.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Omega {
    Token { id: String, inverse: bool },
    /// Exponents of a root of unity of order `modulus` on the listed center elements.
    Character { modulus: u32, values: Vec<(u32, u32)> },
}

impl Omega {
    pub fn token(id: &str) -> Self {
        match id.strip_suffix("^-1") {
            Some(base) => Omega::Token { id: base.to_string(), inverse: true },
            None => Omega::Token { id: id.to_string(), inverse: false },
        }
    }

    pub fn inverse(&self) -> Self {
        match self {
            Omega::Token { id, inverse } => Omega::Token { id: id.clone(), inverse: !inverse },
            Omega::Character { modulus, values } => Omega::Character {
                modulus: *modulus,
                values: values.iter().map(|&(x, v)| (x, (modulus - v) % modulus)).collect(),
            },
        }
    }

    pub fn name(&self) -> String {
        match self {
            Omega::Token { id, inverse: false } => id.clone(),
            Omega::Token { id, inverse: true } => format!("{id}^-1"),
            Omega::Character { modulus, values } => {
                format!("chi/{modulus}[{}]", values.iter().map(|(x, v)| format!("{x}:{v}")).join(","))
            }
        }
    }

    /// Binds a character of a cover model after checking it against the central characters of
    /// the pieces on `mu_n`.
    pub fn bind(parts: &[(&Group, &LinChar)], grp: &Group, omega: &LinChar, center: &[u32]) -> Result<Self, SegError> {
        let ok = compatible(parts, grp, omega).map_err(|e: MtpError| SegError::Incompatible(e.to_string()))?;
        if !ok {
            return Err(SegError::Incompatible("omega differs from the pieces on mu_n".into()));
        }
        let values = center
            .iter()
            .map(|&x| omega.eval(x).map(|v| (x, v)).ok_or_else(|| SegError::Incompatible("omega undefined on the center".into())))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Omega::Character { modulus: grp.ring().order() as u32, values })
    }
}

/// `Z(m)_omega` or `L(m)_omega`, identified by the multiset (lines are weak classes) and `omega`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ClassLabel {
    pub kind: Kind,
    pub m: Multisegment,
    pub omega: Omega,
}

impl fmt::Display for ClassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}({})_{}", self.kind, self.m, self.omega.name())
    }
}

impl ClassLabel {
    /// Contragredient: `Z(m)_omega^v = Z(m^v)_{omega^-1}`, same for `L`.
    pub fn dual(&self) -> ClassLabel {
        ClassLabel { kind: self.kind, m: self.m.dual(), omega: self.omega.inverse() }
    }
}

pub fn label(m: &Multisegment, omega: &Omega, kind: Kind) -> ClassLabel {
    ClassLabel { kind, m: m.clone(), omega: omega.clone() }
}

pub fn label_equal(l1: &ClassLabel, l2: &ClassLabel) -> bool {
    l1 == l2
}

/// The irreducible subquotient singled out in `(Z(d1) x Z(d2))_omega` (socle) or
/// `(L(d1) x L(d2))_omega` (cosocle).
pub fn soc_cos_pair(d1: &Segment, d2: &Segment, omega: &Omega, kind: Kind) -> ClassLabel {
    let m = if weakly_precedes(d1, d2) {
        let (u, i) = union_intersection(d1, d2).expect("preceding segments are linked");
        Multisegment::new(std::iter::once(u).chain(i).collect())
    } else {
        Multisegment::new(vec![d1.clone(), d2.clone()])
    };
    label(&m, omega, kind)
}

/// Partial sums of a composition, excluding the total.
fn cuts(beta: &[usize]) -> Vec<usize> {
    beta.iter().scan(0, |s, &x| {
        *s += x;
        Some(*s)
    }).take(beta.len().saturating_sub(1)).collect()
}

pub const WSETS_CAP: usize = 8;

/// `W^{beta,gamma}`: permutations `w` (as images of `1..r`) increasing on each `beta` block
/// with `w^-1` increasing on each `gamma` block.
pub fn wsets(beta: &[usize], gamma: &[usize]) -> Result<Vec<Vec<usize>>, SegError> {
    let r: usize = beta.iter().sum();
    if gamma.iter().sum::<usize>() != r || beta.contains(&0) || gamma.contains(&0) {
        return Err(SegError::Precondition("beta and gamma must be compositions of the same r".into()));
    }
    if r > WSETS_CAP {
        return Err(SegError::TooLarge(r, WSETS_CAP));
    }
    let (t, u) = (cuts(beta), cuts(gamma));
    let mut out = Vec::new();
    for w in (1..=r).permutations(r) {
        let mut inv = vec![0; r + 1];
        for (i, &x) in w.iter().enumerate() {
            inv[x] = i + 1;
        }
        let rows = (1..r).filter(|i| !t.contains(i)).all(|i| w[i - 1] < w[i]);
        let cols = (1..r).filter(|j| !u.contains(j)).all(|j| inv[j] < inv[j + 1]);
        if rows && cols {
            out.push(w);
        }
    }
    Ok(out)
}

/// Wire format `{"line": "rho1", "r0": 1, "a": 0, "b": 2}` with optional `"s_rho": "1/2"`.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct SegmentJson {
    pub line: String,
    pub r0: u32,
    pub a: i64,
    pub b: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s_rho: Option<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct MultisegmentJson {
    pub segments: Vec<SegmentJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega: Option<String>,
}

impl SegmentJson {
    pub fn parse(&self) -> Result<Segment, SegError> {
        let s = match &self.s_rho {
            Some(t) => t.parse::<Ratio<i64>>().map_err(|e| SegError::Invalid(format!("s_rho {t:?}: {e}")))?,
            None => Ratio::from_integer(1),
        };
        Segment::new(&CuspidalLine::new(&self.line, self.r0, s)?, self.a, self.b)
    }

    pub fn from_segment(s: &Segment) -> Self {
        let one = Ratio::from_integer(1);
        SegmentJson {
            line: s.line.name(),
            r0: s.line.r0,
            a: s.a,
            b: s.b,
            s_rho: (s.line.s_rho != one).then(|| s.line.s_rho.to_string()),
        }
    }
}

impl MultisegmentJson {
    /// Lines sharing an id must agree on `r0` and `s_rho`.
    pub fn parse(&self) -> Result<(Multisegment, Option<Omega>), SegError> {
        let segs = self.segments.iter().map(SegmentJson::parse).collect::<Result<Vec<_>, _>>()?;
        let mut seen: BTreeMap<&str, &CuspidalLine> = BTreeMap::new();
        for s in &segs {
            if let Some(l) = seen.insert(&s.line.id, &s.line) {
                if (l.r0, l.s_rho) != (s.line.r0, s.line.s_rho) {
                    return Err(SegError::Invalid(format!("line {} used with different r0 or s_rho", s.line.id)));
                }
            }
        }
        Ok((Multisegment::new(segs), self.omega.as_deref().map(Omega::token)))
    }

    pub fn from_multisegment(m: &[Segment], omega: Option<&Omega>) -> Self {
        MultisegmentJson { segments: m.iter().map(SegmentJson::from_segment).collect(), omega: omega.map(Omega::name) }
    }
}

/// Random segment on one of `lines`, endpoints in `-range..=range`, length at most `max_len`.
pub fn random_segment(rng: &mut impl Rng, lines: &[CuspidalLine], range: i64, max_len: i64) -> Segment {
    let line = &lines[rng.gen_range(0..lines.len())];
    let a = rng.gen_range(-range..=range);
    let b = a + rng.gen_range(0..max_len.max(1));
    Segment { line: line.clone(), a, b }
}

pub fn random_multisegment(rng: &mut impl Rng, lines: &[CuspidalLine], max_segments: usize) -> Multisegment {
    let k = rng.gen_range(1..=max_segments.max(1));
    Multisegment::new((0..k).map(|_| random_segment(rng, lines, 4, 4)).collect())
}

/// `rho1, ..., rhok` with `r0 = 1, 2, 1, 2, ...` and `s_rho = 1`.
pub fn sample_lines(k: usize) -> Vec<CuspidalLine> {
    (0..k).map(|i| CuspidalLine::new(&format!("rho{}", i + 1), 1 + (i % 2) as u32, Ratio::from_integer(1)).unwrap()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rho() -> CuspidalLine {
        CuspidalLine::new("rho", 1, Ratio::from_integer(1)).unwrap()
    }

    fn seg(a: i64, b: i64) -> Segment {
        Segment::new(&rho(), a, b).unwrap()
    }

    #[test]
    fn duals() {
        assert_eq!(seg(0, 0).dual().a, 0);
        let d = seg(1, 3).dual();
        assert_eq!((d.a, d.b, d.line.name()), (-3, -1, "rho^v".to_string()));
        assert_eq!(d.dual(), seg(1, 3));
    }

    #[test]
    fn linking() {
        assert!(precedes(&seg(0, 1), &seg(1, 2)));
        assert!(linked(&seg(0, 1), &seg(1, 2)));
        assert!(!linked(&seg(0, 2), &seg(1, 1)));
        assert!(precedes(&seg(0, 0), &seg(1, 1)));
        assert!(!linked(&seg(0, 0), &seg(2, 2)));
        let other = Segment::new(&CuspidalLine::new("sigma", 1, Ratio::from_integer(1)).unwrap(), 1, 2).unwrap();
        assert!(!linked(&seg(0, 1), &other));
    }

    #[test]
    fn unions() {
        let (u, i) = union_intersection(&seg(0, 1), &seg(1, 2)).unwrap();
        assert_eq!((u, i), (seg(0, 2), Some(seg(1, 1))));
        let (u, i) = union_intersection(&seg(0, 0), &seg(1, 1)).unwrap();
        assert_eq!((u, i), (seg(0, 1), None));
        assert!(union_intersection(&seg(0, 2), &seg(1, 1)).is_err());
    }

    #[test]
    fn ordering_example() {
        let m = Multisegment::new(vec![seg(0, 1), seg(1, 2)]);
        assert_eq!(order_multisegment(&m).unwrap(), vec![seg(1, 2), seg(0, 1)]);
    }

    #[test]
    fn jacquet_examples() {
        let d = seg(0, 2);
        assert_eq!(jacquet_segment(&d, 1, Kind::Z).unwrap(), Some((Some(seg(0, 0)), Some(seg(1, 2)))));
        assert_eq!(jacquet_segment(&d, 1, Kind::L).unwrap(), Some((Some(seg(2, 2)), Some(seg(0, 1)))));
        assert_eq!(jacquet_segment(&d, 0, Kind::Z).unwrap(), Some((None, Some(d.clone()))));
        assert_eq!(jacquet_segment(&d, 3, Kind::L).unwrap(), Some((Some(d.clone()), None)));
        let wide = Segment::new(&CuspidalLine::new("tau", 2, Ratio::from_integer(1)).unwrap(), 0, 1).unwrap();
        assert_eq!(jacquet_segment(&wide, 1, Kind::Z).unwrap(), None);
        assert!(jacquet_segment(&d, 4, Kind::Z).is_err());
    }

    #[test]
    fn socle_examples() {
        let w = Omega::token("w0");
        let l = soc_cos_pair(&seg(0, 1), &seg(1, 2), &w, Kind::Z);
        assert_eq!(l.m, Multisegment::new(vec![seg(1, 1), seg(0, 2)]));
        let l = soc_cos_pair(&seg(0, 0), &seg(2, 2), &w, Kind::L);
        assert_eq!(l.m, Multisegment::new(vec![seg(0, 0), seg(2, 2)]));
    }

    #[test]
    fn wset_examples() {
        assert_eq!(wsets(&[3], &[3]).unwrap(), vec![vec![1, 2, 3]]);
        assert_eq!(wsets(&[2], &[1, 1]).unwrap().len(), 1);
        assert_eq!(wsets(&[1, 1], &[1, 1]).unwrap().len(), 2);
        assert!(wsets(&[1, 2], &[2]).is_err());
    }

    #[test]
    fn json_roundtrip() {
        let j: MultisegmentJson = serde_json::from_str(
            r#"{"segments":[{"line":"rho1","r0":1,"a":0,"b":2},{"line":"rho2^v","r0":2,"a":-1,"b":-1,"s_rho":"1/2"}],"omega":"w0"}"#,
        )
        .unwrap();
        let (m, w) = j.parse().unwrap();
        assert_eq!(m.degree(), 5);
        assert_eq!(w, Some(Omega::token("w0")));
        let back = MultisegmentJson::from_multisegment(m.segments(), w.as_ref());
        assert_eq!(back.parse().unwrap().0, m);
        let bad: MultisegmentJson = serde_json::from_str(
            r#"{"segments":[{"line":"r","r0":1,"a":0,"b":0},{"line":"r","r0":2,"a":0,"b":0}]}"#,
        )
        .unwrap();
        assert!(bad.parse().is_err());
    }

    fn arb_segment() -> impl Strategy<Value = Segment> {
        (0usize..3, -5i64..5, 0i64..4).prop_map(|(l, a, len)| {
            let line = sample_lines(3)[l].clone();
            Segment { line, a, b: a + len }
        })
    }

    proptest! {
        #[test]
        fn precedes_is_strict(x in arb_segment(), y in arb_segment()) {
            prop_assert!(!precedes(&x, &x));
            prop_assert!(!(precedes(&x, &y) && precedes(&y, &x)));
            prop_assert_eq!(linked(&x, &y), linked(&y, &x));
            prop_assert_eq!(linked(&x, &y), linked(&x.dual(), &y.dual()));
        }

        #[test]
        fn union_degrees(x in arb_segment(), y in arb_segment()) {
            if let Ok((u, i)) = union_intersection(&x, &y) {
                prop_assert_eq!(u.degree() + i.map_or(0, |s| s.degree()), x.degree() + y.degree());
            }
        }

        #[test]
        fn ordering_holds(segs in proptest::collection::vec(arb_segment(), 1..8)) {
            let m = Multisegment::new(segs.clone());
            let o = order_multisegment(&m).unwrap();
            prop_assert_eq!(Multisegment::new(o), m.clone());
            let mut rev = segs;
            rev.reverse();
            prop_assert_eq!(Multisegment::new(rev), m);
        }

        #[test]
        fn label_duality(segs in proptest::collection::vec(arb_segment(), 1..6), inv in any::<bool>()) {
            let m = Multisegment::new(segs);
            let w = Omega::Token { id: "w".into(), inverse: inv };
            for k in [Kind::Z, Kind::L] {
                let l = label(&m, &w, k);
                prop_assert_eq!(l.dual(), label(&m.dual(), &w.inverse(), k));
                prop_assert_eq!(l.dual().dual(), l);
            }
        }
    }
}
