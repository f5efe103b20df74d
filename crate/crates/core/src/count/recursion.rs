//! First-step recursions with their convolution structure, memoized.
//!
//! An independent route to the same numbers as the transfer DP: decompose a
//! walk by its first step — a flat, an up step whose excursion first
//! returns to the axis after `i` intermediate steps, or an up step that
//! never returns (possible only when the walk ends at positive height).
//! Height-zero walks ending at index 3 are flat-only, so `N_{n,3→3}` equals
//! the flat multiplicity to the `n`-th power and elevated excursions opened
//! into index 3 stay on index 3.
//!
//! Colored families reweight each decomposition term by its number of color
//! choices: flats and unmatched ups carry one color each; a matched
//! up/down pair carries two independent colors in the first 𝒮³₂ case but a
//! single shared color in the balanced case; the all-flat tail behind an
//! `x_{a,3}` up step carries one color per flat step.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::model::{CountRegime, Family, ModelSpec};

/// Per-term multiplicities in the first-step decomposition.
struct Coef {
    flat: u32,
    pair: u32,
    unmatched: u32,
    /// The never-returning `x_{a,3}(x_{3,3})^{n-1}` path contributes
    /// `flat^(n-1) · unmatched` rather than 1 when flats are colored.
    colored_tail: bool,
}

impl Coef {
    fn for_model(model: &ModelSpec) -> Coef {
        match model.family {
            Family::S21 | Family::S31 => {
                Coef { flat: 1, pair: 1, unmatched: 1, colored_tail: false }
            }
            Family::S32Case1 => Coef { flat: 2, pair: 4, unmatched: 2, colored_tail: true },
            Family::S32Case2 => Coef { flat: 2, pair: 2, unmatched: 2, colored_tail: true },
        }
    }
}

pub struct RecursionCounts {
    model: ModelSpec,
    coef: Coef,
    memo0: HashMap<(usize, u8, u8), BigUint>,
    memo_h: HashMap<(usize, usize, u8, u8), BigUint>,
}

impl RecursionCounts {
    pub fn new(model: ModelSpec) -> Self {
        let coef = Coef::for_model(&model);
        Self { model, coef, memo0: HashMap::new(), memo_h: HashMap::new() }
    }

    /// `N^{(h)}_{n,a→b}` via the recursions. For the balanced 𝒮³₂ case this
    /// is the full colored count; tilde values are `N / 2^h`.
    pub fn count(&mut self, n: usize, h: usize, a: u8, b: u8, tilde: bool) -> Result<BigUint> {
        if tilde && self.model.family != Family::S32Case2 {
            return Err(Error::InvalidModel(
                "tilde counts only exist for the balanced 𝒮³₂ case".into(),
            ));
        }
        let full = if h == 0 {
            self.n0(n, a, b)
        } else {
            self.nh(n, h, a, b)
        };
        if tilde {
            let (q, r) = num_integer::div_rem(full, BigUint::one() << h);
            debug_assert!(r.is_zero(), "full count must be divisible by 2^h");
            Ok(q)
        } else {
            Ok(full)
        }
    }

    fn k(&self) -> u8 {
        self.model.k()
    }

    /// Height-zero counts. Only the sectors (1,1), (2,2), (2,1)/(1,2) and
    /// (3,3) are nonzero for k = 3; (1,1) and (2,2) for k = 2.
    fn n0(&mut self, n: usize, a: u8, b: u8) -> BigUint {
        if n == 0 {
            return if a == b { BigUint::one() } else { BigUint::zero() };
        }
        let k = self.k();
        // reversal symmetry: compute the canonical (max, min) sector
        let (a, b) = if a < b { (b, a) } else { (a, b) };
        if a == k && b == k {
            // flats only
            return BigUint::from(self.coef.flat).pow(n as u32);
        }
        if a == k || b == k {
            return BigUint::zero();
        }
        if let Some(v) = self.memo0.get(&(n, a, b)) {
            return v.clone();
        }
        let balanced = self.model.count_regime() == CountRegime::Balanced;
        let flat = BigUint::from(self.coef.flat);
        let pair = BigUint::from(self.coef.pair);
        let mut total = &flat * self.n0(n - 1, a, b);
        if n >= 2 {
            // First step up x_{a,c}; the excursion runs from c back to some
            // index d with a down step x_{d,e} into the remainder.
            for c in a + 1..=k {
                for d in 1..=k {
                    if balanced && d != c {
                        continue;
                    }
                    for e in 1..d {
                        if balanced && e != a {
                            continue;
                        }
                        for i in 0..=n - 2 {
                            let exc = self.n0(i, c, d);
                            if exc.is_zero() {
                                continue;
                            }
                            let rest = self.n0(n - 2 - i, e, b);
                            if rest.is_zero() {
                                continue;
                            }
                            total += &pair * exc * rest;
                        }
                    }
                }
            }
        }
        self.memo0.insert((n, a, b), total.clone());
        total
    }

    /// Positive-height counts, first-step decomposition: flat, up with first
    /// return, or up that never returns (the unmatched term). The up into
    /// index `k` that never returns leaves a flat-only tail, contributing
    /// only when `h = 1` and `b = k`.
    fn nh(&mut self, n: usize, h: usize, a: u8, b: u8) -> BigUint {
        if n == 0 || a == self.k() {
            return BigUint::zero();
        }
        if h > n {
            return BigUint::zero();
        }
        if let Some(v) = self.memo_h.get(&(n, h, a, b)) {
            return v.clone();
        }
        let k = self.k();
        let balanced = self.model.count_regime() == CountRegime::Balanced;
        let flat = BigUint::from(self.coef.flat);
        let pair = BigUint::from(self.coef.pair);
        let unmatched = BigUint::from(self.coef.unmatched);

        let mut total = &flat * self.nh(n - 1, h, a, b);
        // Unmatched first up x_{a,c}, c < k: the rest never touches the
        // axis again, i.e. a height-(h−1) walk from c.
        for c in a + 1..k {
            let rest = if h == 1 { self.n0(n - 1, c, b) } else { self.nh(n - 1, h - 1, c, b) };
            total += &unmatched * rest;
        }
        // Unmatched first up x_{a,k}: from index k only flats remain.
        if h == 1 && b == k {
            let tail = if self.coef.colored_tail {
                BigUint::from(self.coef.flat).pow((n - 1) as u32)
            } else {
                BigUint::one()
            };
            total += &unmatched * tail;
        }
        // First return after an excursion.
        if n >= 2 {
            for c in a + 1..=k {
                for d in 1..=k {
                    if balanced && d != c {
                        continue;
                    }
                    for e in 1..d {
                        if balanced && e != a {
                            continue;
                        }
                        for i in 0..=n - 2 {
                            let exc = self.n0(i, c, d);
                            if exc.is_zero() {
                                continue;
                            }
                            let rest = self.nh(n - 2 - i, h, e, b);
                            if rest.is_zero() {
                                continue;
                            }
                            total += &pair * exc * rest;
                        }
                    }
                }
            }
        }
        self.memo_h.insert((n, h, a, b), total.clone());
        total
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::count::dp;
    use num_rational::BigRational;
    use num_traits::One;

    /// The recursion route must agree with the transfer DP exactly.
    #[test]
    fn recursion_matches_dp_small() {
        let models = [
            ModelSpec::s21(),
            ModelSpec::s31_lambda0(),
            ModelSpec::s31_lambda_pos(BigRational::one()).unwrap(),
            ModelSpec::s32_case1(),
            ModelSpec::s32_case2(BigRational::one()).unwrap(),
        ];
        for m in models {
            let mut rec = RecursionCounts::new(m.clone());
            for n in 0..=9usize {
                for h in 0..=m.structural_max_height(n) {
                    for a in 1..=m.k() {
                        for b in 1..=m.k() {
                            let r = rec.count(n, h, a, b, false).unwrap();
                            let d = dp::count(&m, n, h, a, b, false).unwrap();
                            assert_eq!(r, d, "{m} n={n} h={h} {a}->{b}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn recursion_spot_values() {
        let mut rec = RecursionCounts::new(ModelSpec::s31_lambda0());
        assert_eq!(rec.count(3, 0, 1, 2, false).unwrap(), BigUint::from(3u8));
        assert_eq!(rec.count(3, 1, 1, 2, false).unwrap(), BigUint::from(6u8));
        let mut rec2 = RecursionCounts::new(ModelSpec::s32_case2(BigRational::one()).unwrap());
        assert_eq!(rec2.count(4, 2, 1, 2, false).unwrap(), BigUint::from(8u8));
        assert_eq!(rec2.count(4, 2, 1, 2, true).unwrap(), BigUint::from(2u8));
    }
}
