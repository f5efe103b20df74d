//! Model specification: which semigroup family, which parameter regime,
//! which boundary terms and which chain topology.
//!
//! The single tunable λ of the 𝒮³₁ chain is carried internally as the
//! smooth two-parameter form (λ₁, λ₂): λ₁ weights the second wedge
//! projector, λ₂ the balancing term. The original λ = 0 Hamiltonian is
//! (λ₁ = 1, λ₂ = 0), the λ > 0 one is (λ₁ = 0, λ₂ = λ); λ₁ = λ₂ = 0 is the
//! intermediate phase with size-dependent ground-state degeneracy. Both
//! positive at once breaks frustration-freeness and is rejected.

use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sis::SisElement;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub enum Family {
    S21,
    S31,
    S32Case1,
    S32Case2,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default, Serialize, Deserialize)]
pub enum Boundary {
    Original,
    #[default]
    AddendumCorrected,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default, Serialize, Deserialize)]
pub enum Topology {
    #[default]
    Open,
    /// Ring with the open-chain Hamiltonian carried over verbatim: the two
    /// chain endpoints are identified and the boundary projectors stay at
    /// the seam.
    ClosedSeam,
    /// Ring with bulk terms on every window and no boundary projectors.
    ClosedBulkOnly,
}

/// The two nonnegative wedge/balancing weights of the 𝒮³₁ chain.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LambdaParams {
    pub lambda1: BigRational,
    pub lambda2: BigRational,
}

impl LambdaParams {
    pub fn new(lambda1: BigRational, lambda2: BigRational) -> Result<Self> {
        if lambda1 < BigRational::zero() || lambda2 < BigRational::zero() {
            return Err(Error::InvalidModel("λ₁, λ₂ must be nonnegative".into()));
        }
        if lambda1 > BigRational::zero() && lambda2 > BigRational::zero() {
            return Err(Error::InvalidModel(
                "λ₁ > 0 together with λ₂ > 0 breaks frustration-freeness".into(),
            ));
        }
        Ok(Self { lambda1, lambda2 })
    }
}

/// How walks are counted in a given regime.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CountRegime {
    /// All connected Motzkin-valid walks; any down step may close an
    /// excursion (𝒮³₁ λ = 0, 𝒮²₁, both 𝒮³₂ cases).
    Free,
    /// Each excursion opened by `x_{a,b}` must close with the reflected
    /// step `x_{b,a}` (𝒮³₁ λ > 0).
    Balanced,
}

/// Per-step count weights: colored models count `2^(colored choices)` per
/// index walk. `(w_flat, w_up, w_down)`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct StepWeights {
    pub flat: u8,
    pub up: u8,
    pub down: u8,
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ModelSpec {
    pub family: Family,
    /// 𝒮³₁ only.
    pub lambda: Option<LambdaParams>,
    /// 𝒮³₂ balanced case only.
    pub mu: Option<BigRational>,
    pub boundary: Boundary,
    pub topology: Topology,
}

impl ModelSpec {
    pub fn s21() -> Self {
        Self {
            family: Family::S21,
            lambda: None,
            mu: None,
            boundary: Boundary::default(),
            topology: Topology::default(),
        }
    }

    /// 𝒮³₁ at λ = 0 (the original Hamiltonian with both wedge projectors).
    pub fn s31_lambda0() -> Self {
        Self::s31(BigRational::one(), BigRational::zero()).unwrap()
    }

    /// 𝒮³₁ at λ > 0: the second wedge projector drops, the balancing term
    /// enters with weight λ.
    pub fn s31_lambda_pos(lambda: BigRational) -> Result<Self> {
        if lambda <= BigRational::zero() {
            return Err(Error::InvalidModel("λ must be positive".into()));
        }
        Self::s31(BigRational::zero(), lambda)
    }

    /// 𝒮³₁ with explicit (λ₁, λ₂).
    pub fn s31(lambda1: BigRational, lambda2: BigRational) -> Result<Self> {
        Ok(Self {
            family: Family::S31,
            lambda: Some(LambdaParams::new(lambda1, lambda2)?),
            mu: None,
            boundary: Boundary::default(),
            topology: Topology::default(),
        })
    }

    /// 𝒮³₁ in the intermediate phase λ₁ = λ₂ = 0.
    pub fn s31_phase2() -> Self {
        Self::s31(BigRational::zero(), BigRational::zero()).unwrap()
    }

    pub fn s32_case1() -> Self {
        Self {
            family: Family::S32Case1,
            lambda: None,
            mu: None,
            boundary: Boundary::default(),
            topology: Topology::default(),
        }
    }

    pub fn s32_case2(mu: BigRational) -> Result<Self> {
        if mu < BigRational::zero() {
            return Err(Error::InvalidModel("μ must be nonnegative".into()));
        }
        Ok(Self {
            family: Family::S32Case2,
            lambda: None,
            mu: Some(mu),
            boundary: Boundary::default(),
            topology: Topology::default(),
        })
    }

    pub fn with_boundary(mut self, boundary: Boundary) -> Self {
        self.boundary = boundary;
        self
    }

    pub fn with_topology(mut self, topology: Topology) -> Self {
        self.topology = topology;
        self
    }

    /// Semigroup index bound.
    pub fn k(&self) -> u8 {
        match self.family {
            Family::S21 => 2,
            _ => 3,
        }
    }

    pub fn colored(&self) -> bool {
        matches!(self.family, Family::S32Case1 | Family::S32Case2)
    }

    /// λ₂ > 0 forces reflection-matched excursions; everything else counts
    /// freely. λ₁ = λ₂ = 0 changes the ground classes but not the walk set,
    /// so it counts as Free.
    pub fn count_regime(&self) -> CountRegime {
        match &self.lambda {
            Some(l) if l.lambda2 > BigRational::zero() => CountRegime::Balanced,
            _ => CountRegime::Free,
        }
    }

    /// Multiplicity weights per index-walk step. For the balanced 𝒮³₂ case
    /// these produce the tilde counts (matched pairs and flats carry one
    /// color choice each); the full count is `2^h` times the tilde count.
    pub fn step_weights(&self) -> StepWeights {
        match self.family {
            Family::S21 | Family::S31 => StepWeights { flat: 1, up: 1, down: 1 },
            Family::S32Case1 => StepWeights { flat: 2, up: 2, down: 2 },
            Family::S32Case2 => StepWeights { flat: 2, up: 1, down: 2 },
        }
    }

    /// The walk alphabet, sorted.
    pub fn alphabet(&self) -> Vec<SisElement> {
        let k = self.k();
        let mut out = Vec::new();
        for a in 1..=k {
            for b in 1..=k {
                if self.colored() {
                    for s in 1..=2 {
                        out.push(SisElement::colored(k, s, a, b).unwrap());
                    }
                } else {
                    out.push(SisElement::new(k, a, b).unwrap());
                }
            }
        }
        out.sort();
        out
    }

    pub fn mu_is_zero(&self) -> bool {
        matches!(&self.mu, Some(m) if m.is_zero())
    }

    /// Structural maximum height any length-`n` valid prefix can reach.
    pub fn structural_max_height(&self, n: usize) -> usize {
        if n == 0 {
            return 0;
        }
        match (self.family, self.count_regime()) {
            (Family::S21, _) => 1,
            (_, CountRegime::Balanced) => 2.min(n),
            _ => {
                // ⌊(n−2)/3⌋ + 2, with the small-n floor of a negative
                // argument handled explicitly.
                if n == 1 {
                    1
                } else {
                    (n - 2) / 3 + 2
                }
            }
        }
    }
}

impl fmt::Display for ModelSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let fam = match self.family {
            Family::S21 => "s21",
            Family::S31 => "s31",
            Family::S32Case1 => "s32c1",
            Family::S32Case2 => "s32c2",
        };
        write!(f, "{fam}")?;
        if let Some(l) = &self.lambda {
            write!(f, "[l1={},l2={}]", l.lambda1, l.lambda2)?;
        }
        if let Some(m) = &self.mu {
            write!(f, "[mu={m}]")?;
        }
        let b = match self.boundary {
            Boundary::Original => "orig",
            Boundary::AddendumCorrected => "corr",
        };
        let t = match self.topology {
            Topology::Open => "open",
            Topology::ClosedSeam => "seam",
            Topology::ClosedBulkOnly => "ring",
        };
        write!(f, ":{b}:{t}")
    }
}

impl FromStr for ModelSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad model id: {s:?}"));
        let mut parts = s.split(':');
        let head = parts.next().ok_or_else(bad)?;
        let (fam, params) = match head.find('[') {
            Some(i) => (&head[..i], Some(&head[i..])),
            None => (head, None),
        };
        let parse_rat = |t: &str| -> Result<BigRational> {
            parse_rational(t).ok_or_else(|| Error::Parse(format!("bad rational {t:?} in {s:?}")))
        };
        let mut spec = match fam {
            "s21" => ModelSpec::s21(),
            "s31" => {
                let (mut l1, mut l2) = (BigRational::one(), BigRational::zero());
                if let Some(p) = params {
                    let inner = p
                        .strip_prefix('[')
                        .and_then(|p| p.strip_suffix(']'))
                        .ok_or_else(bad)?;
                    for kv in inner.split(',') {
                        match kv.split_once('=') {
                            Some(("l1", v)) => l1 = parse_rat(v)?,
                            Some(("l2", v)) => l2 = parse_rat(v)?,
                            _ => return Err(bad()),
                        }
                    }
                }
                ModelSpec::s31(l1, l2)?
            }
            "s32c1" => ModelSpec::s32_case1(),
            "s32c2" => {
                let mut mu = BigRational::one();
                if let Some(p) = params {
                    let inner = p
                        .strip_prefix('[')
                        .and_then(|p| p.strip_suffix(']'))
                        .ok_or_else(bad)?;
                    for kv in inner.split(',') {
                        match kv.split_once('=') {
                            Some(("mu", v)) => mu = parse_rat(v)?,
                            _ => return Err(bad()),
                        }
                    }
                }
                ModelSpec::s32_case2(mu)?
            }
            _ => return Err(bad()),
        };
        for part in parts {
            match part {
                "orig" => spec.boundary = Boundary::Original,
                "corr" => spec.boundary = Boundary::AddendumCorrected,
                "open" => spec.topology = Topology::Open,
                "seam" => spec.topology = Topology::ClosedSeam,
                "ring" => spec.topology = Topology::ClosedBulkOnly,
                _ => return Err(bad()),
            }
        }
        Ok(spec)
    }
}

fn parse_rational(t: &str) -> Option<BigRational> {
    let t = t.trim();
    if let Some((n, d)) = t.split_once('/') {
        Some(BigRational::new(n.trim().parse().ok()?, d.trim().parse().ok()?))
    } else {
        Some(BigRational::from_integer(t.parse().ok()?))
    }
}

impl Serialize for ModelSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for ModelSpec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lambda_both_positive_rejected() {
        assert!(ModelSpec::s31(BigRational::one(), BigRational::one()).is_err());
    }

    #[test]
    fn regimes() {
        assert_eq!(ModelSpec::s31_lambda0().count_regime(), CountRegime::Free);
        assert_eq!(
            ModelSpec::s31_lambda_pos(BigRational::one())
                .unwrap()
                .count_regime(),
            CountRegime::Balanced
        );
        assert_eq!(ModelSpec::s31_phase2().count_regime(), CountRegime::Free);
    }

    #[test]
    fn id_round_trip() {
        let specs = [
            ModelSpec::s21(),
            ModelSpec::s31_lambda0(),
            ModelSpec::s31_lambda_pos(BigRational::new(3.into(), 2.into())).unwrap(),
            ModelSpec::s31_phase2().with_boundary(Boundary::Original),
            ModelSpec::s32_case1().with_topology(Topology::ClosedBulkOnly),
            ModelSpec::s32_case2(BigRational::zero()).unwrap(),
        ];
        for spec in specs {
            let id = spec.to_string();
            let back: ModelSpec = id.parse().unwrap();
            assert_eq!(back, spec, "{id}");
        }
    }

    #[test]
    fn structural_heights() {
        let s31 = ModelSpec::s31_lambda0();
        for (n, h) in [(1, 1), (2, 2), (3, 2), (4, 2), (5, 3), (8, 4)] {
            assert_eq!(s31.structural_max_height(n), h, "n={n}");
        }
        assert_eq!(ModelSpec::s21().structural_max_height(8), 1);
        let pos = ModelSpec::s31_lambda_pos(BigRational::one()).unwrap();
        assert_eq!(pos.structural_max_height(8), 2);
    }
}
