//! Elements of the symmetric inverse semigroups 𝒮ᵏ₁ and 𝒮³₂, and the
//! walk-level structure built on them.
//!
//! An element `x_{a,b}` is a partial bijection sending `a` to `b`; two
//! elements compose as `x_{a,b} ∗ x_{c,d} = δ_{bc} x_{a,d}`. The zero of the
//! semigroup is represented as an absent value (`None`), never as an element,
//! so walk alphabets stay zero-free. 𝒮³₂ elements carry a color `s ∈ {1,2}`
//! on top of 𝒮³₁ indices; colors multiply as Z₂ with `s = 1` the identity.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One semigroup generator `x_{a,b}` (or colored `x^s_{a,b}`).
///
/// Ordered lexicographically by `(k, domain, range, color)` so walks and
/// basis states sort deterministically.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct SisElement {
    /// Alphabet bound: indices run over `1..=k`.
    pub k: u8,
    pub domain: u8,
    pub range: u8,
    /// Color `s ∈ {1,2}`, present only for 𝒮³₂ alphabets. `None` inside an
    /// otherwise colored walk marks a ξ placeholder (a color-erased step).
    pub color: Option<u8>,
}

impl SisElement {
    pub fn new(k: u8, domain: u8, range: u8) -> Result<Self> {
        Self::build(k, domain, range, None)
    }

    pub fn colored(k: u8, color: u8, domain: u8, range: u8) -> Result<Self> {
        Self::build(k, domain, range, Some(color))
    }

    fn build(k: u8, domain: u8, range: u8, color: Option<u8>) -> Result<Self> {
        if !(2..=3).contains(&k) {
            return Err(Error::InvalidElement(format!("alphabet bound k={k}")));
        }
        if domain < 1 || domain > k || range < 1 || range > k {
            return Err(Error::InvalidElement(format!(
                "indices ({domain},{range}) outside 1..={k}"
            )));
        }
        if let Some(s) = color {
            if k != 3 {
                return Err(Error::InvalidElement(format!(
                    "colored element with k={k}; colors only exist for the 𝒮³₂ alphabet"
                )));
            }
            if !(1..=2).contains(&s) {
                return Err(Error::InvalidElement(format!("color s={s} outside {{1,2}}")));
            }
        }
        Ok(Self { k, domain, range, color })
    }

    /// `x_{a,b} ∗ x_{c,d} = δ_{bc} x_{a,d}`; `Ok(None)` is the semigroup zero.
    ///
    /// For colored elements the result color follows the E/Z table: `x¹` acts
    /// as the identity color and `x²·x² = x¹`.
    pub fn compose(&self, other: &SisElement) -> Result<Option<SisElement>> {
        if self.k != other.k || self.color.is_some() != other.color.is_some() {
            return Err(Error::AlphabetMismatch(format!("{self} ∗ {other}")));
        }
        if self.range != other.domain {
            return Ok(None);
        }
        let color = match (self.color, other.color) {
            (Some(s), Some(t)) => Some(if s == t { 1 } else { 2 }),
            _ => None,
        };
        Ok(Some(SisElement {
            k: self.k,
            domain: self.domain,
            range: other.range,
            color,
        }))
    }

    pub fn step_kind(&self) -> StepKind {
        classify_step(self)
    }

    /// Height increment: +1 up, −1 down, 0 flat.
    pub fn delta(&self) -> i64 {
        match self.step_kind() {
            StepKind::Up => 1,
            StepKind::Down => -1,
            StepKind::Flat => 0,
        }
    }

    /// The reversed element `x_{b,a}` (same color).
    pub fn reversed(&self) -> SisElement {
        SisElement {
            k: self.k,
            domain: self.range,
            range: self.domain,
            color: self.color,
        }
    }
}

impl fmt::Display for SisElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.color {
            Some(s) => write!(f, "x^{s}[{},{}]", self.domain, self.range),
            None => write!(f, "x[{},{}]", self.domain, self.range),
        }
    }
}

impl FromStr for SisElement {
    type Err = Error;

    /// Parses the textual syntax `x[a,b]` and `x^s[a,b]`. The alphabet bound
    /// is taken as the smallest consistent one (`max(a,b)` clamped to ≥ 2,
    /// or 3 when a color is present); callers that know the model should
    /// re-validate against its alphabet.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let bad = || Error::Parse(format!("bad element syntax: {s:?}"));
        let rest = t.strip_prefix('x').ok_or_else(bad)?;
        let (color, rest) = match rest.strip_prefix('^') {
            Some(r) => {
                let (c, r2) = r.split_once('[').ok_or_else(bad)?;
                (Some(c.trim().parse::<u8>().map_err(|_| bad())?), r2)
            }
            None => (None, rest.strip_prefix('[').ok_or_else(bad)?),
        };
        let inner = rest.strip_suffix(']').ok_or_else(bad)?;
        let (a, b) = inner.split_once(',').ok_or_else(bad)?;
        let a: u8 = a.trim().parse().map_err(|_| bad())?;
        let b: u8 = b.trim().parse().map_err(|_| bad())?;
        let k = if color.is_some() { 3 } else { a.max(b).max(2) };
        SisElement::build(k, a, b, color)
    }
}

/// Direction of a step: up (`a < b`), down (`a > b`) or flat (`a = b`).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum StepKind {
    Up,
    Down,
    Flat,
}

pub fn classify_step(e: &SisElement) -> StepKind {
    use std::cmp::Ordering::*;
    match e.domain.cmp(&e.range) {
        Less => StepKind::Up,
        Greater => StepKind::Down,
        Equal => StepKind::Flat,
    }
}

/// A pair-notation element `x_{ab,cd}` of 𝒮³₂, with `ab ∈ {12,23,31}` and
/// `cd ∈ {12,23,31,21,32,13}`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct PairElement {
    pub domain_pair: (u8, u8),
    pub range_pair: (u8, u8),
}

const DOMAIN_PAIRS: [(u8, u8); 3] = [(1, 2), (2, 3), (3, 1)];
const REVERSED_PAIRS: [(u8, u8); 3] = [(2, 1), (3, 2), (1, 3)];

impl PairElement {
    pub fn new(domain_pair: (u8, u8), range_pair: (u8, u8)) -> Result<Self> {
        if !DOMAIN_PAIRS.contains(&domain_pair) {
            return Err(Error::InvalidElement(format!(
                "pair domain {domain_pair:?} not in {{12,23,31}}"
            )));
        }
        if !DOMAIN_PAIRS.contains(&range_pair) && !REVERSED_PAIRS.contains(&range_pair) {
            return Err(Error::InvalidElement(format!(
                "pair range {range_pair:?} not in {{12,23,31,21,32,13}}"
            )));
        }
        Ok(Self { domain_pair, range_pair })
    }

    /// All 18 pair-notation elements.
    pub fn all() -> Vec<PairElement> {
        let mut out = Vec::with_capacity(18);
        for &dp in &DOMAIN_PAIRS {
            for &rp in DOMAIN_PAIRS.iter().chain(REVERSED_PAIRS.iter()) {
                out.push(PairElement { domain_pair: dp, range_pair: rp });
            }
        }
        out
    }
}

fn pair_index(p: (u8, u8)) -> Option<u8> {
    DOMAIN_PAIRS.iter().position(|&q| q == p).map(|i| i as u8 + 1)
}

/// Realizes a pair-notation 𝒮³₂ element as a colored element `x^s_{a,b}`:
/// ranges `{12,23,31}` land in the E set (`s = 1`), the reversed ranges
/// `{21,32,13}` in the Z set (`s = 2`).
pub fn ez_realization(e: &PairElement) -> Result<SisElement> {
    let a = pair_index(e.domain_pair)
        .ok_or_else(|| Error::InvalidElement(format!("{:?}", e.domain_pair)))?;
    let (s, b) = if let Some(b) = pair_index(e.range_pair) {
        (1, b)
    } else if let Some(b) = pair_index((e.range_pair.1, e.range_pair.0)) {
        (2, b)
    } else {
        return Err(Error::InvalidElement(format!("{:?}", e.range_pair)));
    };
    SisElement::colored(3, s, a, b)
}

/// Connectivity of a walk: positions `j` (1-based) where the range of step
/// `j` fails to match the domain of step `j+1` are breaks.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Connectivity {
    pub kind: ConnectivityKind,
    pub breaks: Vec<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ConnectivityKind {
    Connected,
    PartiallyConnected,
    Disconnected,
}

/// A finite sequence of semigroup elements read as a lattice walk.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Walk {
    pub steps: Vec<SisElement>,
}

impl Walk {
    pub fn new(steps: Vec<SisElement>) -> Self {
        Self { steps }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Heights `y₀ = 0, y_j = y_{j−1} + Δ(step j)`; length `|steps| + 1`.
    pub fn height_profile(&self) -> Vec<i64> {
        let mut ys = Vec::with_capacity(self.steps.len() + 1);
        ys.push(0);
        let mut y = 0;
        for s in &self.steps {
            y += s.delta();
            ys.push(y);
        }
        ys
    }

    /// True when the walk never dips below the x-axis and ends at height `h`.
    pub fn motzkin_valid(&self, h: i64) -> bool {
        let ys = self.height_profile();
        ys.iter().all(|&y| y >= 0) && *ys.last().unwrap() == h
    }

    pub fn start_index(&self) -> Option<u8> {
        self.steps.first().map(|e| e.domain)
    }

    pub fn end_index(&self) -> Option<u8> {
        self.steps.last().map(|e| e.range)
    }

    pub fn connectivity(&self) -> Connectivity {
        connectivity(self)
    }
}

/// Classifies a walk as connected, partially connected or disconnected.
pub fn connectivity(w: &Walk) -> Connectivity {
    let mut breaks = Vec::new();
    for (j, pair) in w.steps.windows(2).enumerate() {
        if pair[0].range != pair[1].domain {
            breaks.push(j + 1);
        }
    }
    let kind = if breaks.is_empty() {
        ConnectivityKind::Connected
    } else if breaks.len() == w.steps.len().saturating_sub(1) {
        ConnectivityKind::Disconnected
    } else {
        ConnectivityKind::PartiallyConnected
    };
    Connectivity { kind, breaks }
}

impl fmt::Display for Walk {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for s in &self.steps {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "{s}")?;
            first = false;
        }
        Ok(())
    }
}

impl FromStr for Walk {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        // Elements contain a comma themselves (`x[a,b]`), so split at `]`
        // boundaries instead of raw commas.
        let mut out = Vec::new();
        let mut rest = s.trim();
        while !rest.is_empty() {
            let end = rest
                .find(']')
                .ok_or_else(|| Error::Parse(format!("bad walk syntax: {s:?}")))?;
            out.push(rest[..=end].parse::<SisElement>()?);
            rest = rest[end + 1..].trim_start_matches(',').trim();
        }
        Ok(Walk::new(out))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(a: u8, b: u8) -> SisElement {
        SisElement::new(3, a, b).unwrap()
    }

    fn xc(s: u8, a: u8, b: u8) -> SisElement {
        SisElement::colored(3, s, a, b).unwrap()
    }

    #[test]
    fn compose_matches_delta_rule() {
        assert_eq!(x(1, 2).compose(&x(2, 1)).unwrap(), Some(x(1, 1)));
        assert_eq!(x(1, 1).compose(&x(2, 1)).unwrap(), None);
        assert_eq!(
            xc(2, 1, 2).compose(&xc(2, 2, 3)).unwrap(),
            Some(xc(1, 1, 3))
        );
    }

    #[test]
    fn compose_rejects_mixed_alphabets() {
        let a = SisElement::new(2, 1, 2).unwrap();
        assert!(a.compose(&x(2, 1)).is_err());
        assert!(x(1, 2).compose(&xc(1, 2, 1)).is_err());
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify_step(&x(1, 3)), StepKind::Up);
        assert_eq!(classify_step(&x(2, 2)), StepKind::Flat);
        assert_eq!(classify_step(&x(3, 1)), StepKind::Down);
    }

    #[test]
    fn classify_partitions_alphabet() {
        for k in [2u8, 3] {
            let mut ups = 0;
            let mut downs = 0;
            let mut flats = 0;
            for a in 1..=k {
                for b in 1..=k {
                    match classify_step(&SisElement::new(k, a, b).unwrap()) {
                        StepKind::Up => ups += 1,
                        StepKind::Down => downs += 1,
                        StepKind::Flat => flats += 1,
                    }
                }
            }
            let kk = k as usize;
            assert_eq!(ups, kk * (kk - 1) / 2);
            assert_eq!(downs, kk * (kk - 1) / 2);
            assert_eq!(flats, kk);
        }
    }

    #[test]
    fn compose_associative_when_products_nonzero() {
        // Exhaustive over all 9³ triples of 𝒮³₁, zero absorbing.
        let elems: Vec<_> = (1..=3)
            .flat_map(|a| (1..=3).map(move |b| x(a, b)))
            .collect();
        for e1 in &elems {
            for e2 in &elems {
                for e3 in &elems {
                    let left = match e1.compose(e2).unwrap() {
                        Some(p) => p.compose(e3).unwrap(),
                        None => None,
                    };
                    let right = match e2.compose(e3).unwrap() {
                        Some(p) => e1.compose(&p).unwrap(),
                        None => None,
                    };
                    assert_eq!(left, right, "{e1} {e2} {e3}");
                }
            }
        }
    }

    #[test]
    fn ez_realization_table_spots() {
        let e = PairElement::new((1, 2), (2, 3)).unwrap();
        assert_eq!(ez_realization(&e).unwrap(), xc(1, 1, 2));
        let z = PairElement::new((2, 3), (1, 3)).unwrap();
        assert_eq!(ez_realization(&z).unwrap(), xc(2, 2, 3));
        let e31 = PairElement::new((3, 1), (1, 2)).unwrap();
        assert_eq!(ez_realization(&e31).unwrap(), xc(1, 3, 1));
    }

    #[test]
    fn ez_realization_is_a_bijection() {
        let mut images: Vec<_> = PairElement::all()
            .iter()
            .map(|p| ez_realization(p).unwrap())
            .collect();
        images.sort();
        images.dedup();
        assert_eq!(images.len(), 18);
    }

    /// Pair-notation composition, Eq.-(4.1) style:
    /// `x_{ab,cd} ∗ x_{ef,gh} = δ_{ce}δ_{df} x_{ab,gh} + δ_{cf}δ_{de} x_{ab,hg}`.
    /// Independent oracle for the E/Z composition table.
    fn pair_compose(p: &PairElement, q: &PairElement) -> Option<PairElement> {
        let (c, d) = p.range_pair;
        let (e, f) = q.domain_pair;
        let range = if (c, d) == (e, f) {
            q.range_pair
        } else if (c, d) == (f, e) {
            (q.range_pair.1, q.range_pair.0)
        } else {
            return None;
        };
        Some(PairElement { domain_pair: p.domain_pair, range_pair: range })
    }

    #[test]
    fn ez_composition_commutes_with_realization() {
        // Exhaustive over all 18² pairs.
        for p in PairElement::all() {
            for q in PairElement::all() {
                let via_pairs = pair_compose(&p, &q).map(|r| ez_realization(&r).unwrap());
                let via_colors = ez_realization(&p)
                    .unwrap()
                    .compose(&ez_realization(&q).unwrap())
                    .unwrap();
                assert_eq!(via_pairs, via_colors, "{p:?} ∗ {q:?}");
            }
        }
    }

    #[test]
    fn connectivity_examples() {
        let w = Walk::new(vec![x(1, 2), x(2, 3), x(3, 1)]);
        assert_eq!(w.connectivity().kind, ConnectivityKind::Connected);
        assert!(w.connectivity().breaks.is_empty());

        let w = Walk::new(vec![x(1, 2), x(1, 2)]);
        let c = w.connectivity();
        assert_eq!(c.kind, ConnectivityKind::Disconnected);
        assert_eq!(c.breaks, vec![1]);

        let w = Walk::new(vec![x(1, 1), x(1, 2), x(1, 1)]);
        let c = w.connectivity();
        assert_eq!(c.kind, ConnectivityKind::PartiallyConnected);
        assert_eq!(c.breaks, vec![2]);
    }

    #[test]
    fn height_profile_and_validity() {
        let w = Walk::new(vec![x(1, 3), x(3, 2), x(2, 2)]);
        assert_eq!(w.height_profile(), vec![0, 1, 0, 0]);
        assert!(w.motzkin_valid(0));
        assert!(!w.motzkin_valid(1));
        let dip = Walk::new(vec![x(2, 1), x(1, 2)]);
        assert!(!dip.motzkin_valid(0));
    }

    #[test]
    fn element_round_trip_text() {
        for s in ["x[1,2]", "x^2[1,3]", "x[3,3]"] {
            let e: SisElement = s.parse().unwrap();
            assert_eq!(e.to_string(), s);
        }
        let w: Walk = "x[1,3],x[3,2],x[2,2]".parse().unwrap();
        assert_eq!(w.len(), 3);
        assert_eq!(w.to_string(), "x[1,3],x[3,2],x[2,2]");
    }
}
