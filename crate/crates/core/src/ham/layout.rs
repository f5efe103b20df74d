//! Basis layouts: how chain configurations are encoded as integers.
//!
//! Link representation: one slot per link, radix `k²` (or 18 with colors).
//! Reduced-site representation: one slot per site, radix `k` (or 6 with
//! colors). On the open colored chain the color of link `j` sits on site
//! `j`, leaving site 0 colorless (radix 3): the surplus color of the
//! appendix construction is quotiented away by construction. On closed
//! chains every site carries the color of its incoming link.

use crate::error::{Error, Result};
use crate::model::{ModelSpec, Topology};
use crate::sis::{SisElement, Walk};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Representation {
    Link,
    ReducedSite,
}

#[derive(Clone, Debug)]
pub struct BasisLayout {
    pub model: ModelSpec,
    pub rep: Representation,
    /// Chain length in links.
    pub n: usize,
    pub radix: Vec<u8>,
    strides: Vec<u64>,
    pub dim: u64,
}

impl BasisLayout {
    pub fn new(model: &ModelSpec, n: usize, rep: Representation) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidModel(format!("chain length {n} < 2")));
        }
        let k = model.k();
        let closed = model.topology != Topology::Open;
        let radix: Vec<u8> = match rep {
            Representation::Link => {
                let r = if model.colored() { 18 } else { k * k };
                vec![r; n]
            }
            Representation::ReducedSite => {
                let sites = if closed { n } else { n + 1 };
                if model.colored() {
                    let mut v = vec![6u8; sites];
                    if !closed {
                        v[0] = 3;
                    }
                    v
                } else {
                    vec![k; sites]
                }
            }
        };
        let mut strides = Vec::with_capacity(radix.len());
        let mut dim: u128 = 1;
        for &r in &radix {
            strides.push(dim as u64);
            dim *= r as u128;
            if dim > u64::MAX as u128 {
                return Err(Error::BudgetExceeded { required: dim, budget: u64::MAX as u128 });
            }
        }
        Ok(Self { model: model.clone(), rep, n, radix, strides, dim: dim as u64 })
    }

    pub fn slots(&self) -> usize {
        self.radix.len()
    }

    pub fn encode(&self, values: &[u8]) -> u64 {
        debug_assert_eq!(values.len(), self.slots());
        values
            .iter()
            .zip(&self.strides)
            .map(|(&v, &s)| v as u64 * s)
            .sum()
    }

    pub fn decode(&self, mut state: u64) -> Vec<u8> {
        let mut out = Vec::with_capacity(self.slots());
        for &r in &self.radix {
            out.push((state % r as u64) as u8);
            state /= r as u64;
        }
        out
    }

    pub fn slot_value(&self, state: u64, slot: usize) -> u8 {
        ((state / self.strides[slot]) % self.radix[slot] as u64) as u8
    }

    /// Replaces the values at `slots` with `values`.
    pub fn with_slots(&self, state: u64, slots: &[usize], values: &[u8]) -> u64 {
        let mut s = state;
        for (&slot, &v) in slots.iter().zip(values) {
            let old = self.slot_value(s, slot);
            s = s - old as u64 * self.strides[slot] + v as u64 * self.strides[slot];
        }
        s
    }

    pub fn window_values(&self, state: u64, slots: &[usize]) -> Vec<u8> {
        slots.iter().map(|&i| self.slot_value(state, i)).collect()
    }

    // Local codes.

    pub fn link_code(&self, e: &SisElement) -> u8 {
        let k = self.model.k();
        let base = (e.domain - 1) * k + (e.range - 1);
        match e.color {
            Some(s) => base + 9 * (s - 1),
            None => base,
        }
    }

    pub fn link_from_code(&self, code: u8) -> SisElement {
        let k = self.model.k();
        let (s, base) = if self.model.colored() {
            (Some(code / 9 + 1), code % 9)
        } else {
            (None, code)
        };
        let a = base / k + 1;
        let b = base % k + 1;
        match s {
            Some(s) => SisElement::colored(k, s, a, b).unwrap(),
            None => SisElement::new(k, a, b).unwrap(),
        }
    }

    /// Site code for an index with a color; colorless slots ignore `s`.
    pub fn site_code(&self, slot: usize, a: u8, s: u8) -> u8 {
        if self.radix[slot] <= 3 {
            a - 1
        } else {
            (a - 1) + 3 * (s - 1)
        }
    }

    /// All codes representing index `a` at `slot` (both colors on colored
    /// slots): the "sum over colors" of a witness projector.
    pub fn site_codes_any_color(&self, slot: usize, a: u8) -> Vec<u8> {
        if self.radix[slot] <= 3 {
            vec![a - 1]
        } else {
            vec![a - 1, a - 1 + 3]
        }
    }

    pub fn site_index(&self, code: u8) -> u8 {
        code % 3 + 1
    }

    pub fn site_color(&self, slot: usize, code: u8) -> Option<u8> {
        if self.radix[slot] <= 3 {
            None
        } else {
            Some(code / 3 + 1)
        }
    }

    /// Reads a basis state as a walk (sequence of link elements). In the
    /// reduced representation the elements are reconstructed from adjacent
    /// site indices, with the link color taken from the right-hand site.
    pub fn state_to_walk(&self, state: u64) -> Walk {
        let vals = self.decode(state);
        let k = self.model.k();
        match self.rep {
            Representation::Link => {
                Walk::new(vals.iter().map(|&c| self.link_from_code(c)).collect())
            }
            Representation::ReducedSite => {
                let closed = self.model.topology != Topology::Open;
                let mut steps = Vec::with_capacity(self.n);
                for j in 0..self.n {
                    let from_slot = j;
                    let to_slot = if closed { (j + 1) % self.n } else { j + 1 };
                    let a = self.site_index(vals[from_slot]);
                    let b = self.site_index(vals[to_slot]);
                    let e = match self.site_color(to_slot, vals[to_slot]) {
                        Some(s) => SisElement::colored(k, s, a, b).unwrap(),
                        None => SisElement::new(k, a, b).unwrap(),
                    };
                    steps.push(e);
                }
                Walk::new(steps)
            }
        }
    }

    /// Encodes a connected walk as a reduced-site basis state (open chains).
    pub fn walk_to_state(&self, walk: &Walk) -> Result<u64> {
        match self.rep {
            Representation::Link => {
                let vals: Vec<u8> = walk.steps.iter().map(|e| self.link_code(e)).collect();
                if vals.len() != self.slots() {
                    return Err(Error::InvalidModel("walk length != chain length".into()));
                }
                Ok(self.encode(&vals))
            }
            Representation::ReducedSite => {
                if self.model.topology != Topology::Open {
                    return Err(Error::InvalidModel(
                        "walk_to_state only supports open reduced chains".into(),
                    ));
                }
                if walk.len() != self.n {
                    return Err(Error::InvalidModel("walk length != chain length".into()));
                }
                let mut vals = Vec::with_capacity(self.slots());
                let first = walk.steps.first().unwrap();
                vals.push(self.site_code(0, first.domain, 1));
                for (j, e) in walk.steps.iter().enumerate() {
                    if j + 1 < walk.len() && walk.steps[j + 1].domain != e.range {
                        return Err(Error::InvalidModel("disconnected walk".into()));
                    }
                    vals.push(self.site_code(j + 1, e.range, e.color.unwrap_or(1)));
                }
                Ok(self.encode(&vals))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Boundary;

    #[test]
    fn dims() {
        let s31 = ModelSpec::s31_lambda0();
        assert_eq!(BasisLayout::new(&s31, 4, Representation::Link).unwrap().dim, 9u64.pow(4));
        assert_eq!(
            BasisLayout::new(&s31, 4, Representation::ReducedSite).unwrap().dim,
            3u64.pow(5)
        );
        let s32 = ModelSpec::s32_case1();
        assert_eq!(
            BasisLayout::new(&s32, 4, Representation::ReducedSite).unwrap().dim,
            3 * 6u64.pow(4)
        );
        let ring = ModelSpec::s31_lambda0().with_topology(Topology::ClosedBulkOnly);
        assert_eq!(
            BasisLayout::new(&ring, 5, Representation::ReducedSite).unwrap().dim,
            3u64.pow(5)
        );
    }

    #[test]
    fn encode_decode_round_trip() {
        let m = ModelSpec::s32_case2(num_rational::BigRational::from_integer(1.into()))
            .unwrap()
            .with_boundary(Boundary::Original);
        let layout = BasisLayout::new(&m, 3, Representation::ReducedSite).unwrap();
        for state in 0..layout.dim {
            assert_eq!(layout.encode(&layout.decode(state)), state);
        }
    }

    #[test]
    fn walk_round_trip_reduced() {
        let m = ModelSpec::s31_lambda0();
        let layout = BasisLayout::new(&m, 3, Representation::ReducedSite).unwrap();
        let walk: Walk = "x[1,3],x[3,2],x[2,2]".parse().unwrap();
        let state = layout.walk_to_state(&walk).unwrap();
        assert_eq!(layout.state_to_walk(state), walk);
    }
}
