//! Transfer dynamic programs for exact counts.
//!
//! The free regimes run a layer-by-layer DP over (height, index) with a
//! per-step multiplicity weight: colored models count every coloring of an
//! index walk, so a flat/up/down step contributes its number of admissible
//! color choices. For the balanced 𝒮³₂ case the weights (2, 1, 2) produce
//! the tilde counts — matched up/down pairs and flats carry one free color
//! each while unmatched up steps are color-erased — and the full count is
//! `2^h` times the tilde count.
//!
//! The λ > 0 regime carries a stack of excursion-opening indices instead of
//! a plain height: an excursion opened by `x_{a,c}` only closes via the
//! reflected `x_{c,a}`. The stack depth never exceeds 2, so the automaton
//! stays tiny.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::Result;
use crate::model::{CountRegime, Family, ModelSpec};

/// Counts for every (height, end index) at each requested length, computed
/// in one forward pass from start index `a`. `profile[n][h][b-1]`.
pub fn profile(
    model: &ModelSpec,
    a: u8,
    lengths: &[usize],
) -> BTreeMap<usize, Vec<Vec<BigUint>>> {
    match model.count_regime() {
        CountRegime::Free => free_profile(model, a, lengths),
        CountRegime::Balanced => balanced_profile(model, a, lengths),
    }
}

/// Single exact count. `tilde` is only meaningful for the balanced 𝒮³₂
/// case; for it, the non-tilde count is `2^h` times the tilde DP value.
pub fn count(
    model: &ModelSpec,
    n: usize,
    h: usize,
    a: u8,
    b: u8,
    tilde: bool,
) -> Result<BigUint> {
    let k = model.k();
    if a < 1 || a > k || b < 1 || b > k {
        return Err(crate::error::Error::InvalidModel(format!(
            "sector indices ({a},{b}) outside 1..={k}"
        )));
    }
    if tilde && model.family != Family::S32Case2 {
        return Err(crate::error::Error::InvalidModel(
            "tilde counts only exist for the balanced 𝒮³₂ case".into(),
        ));
    }
    let prof = profile(model, a, &[n]);
    let layer = &prof[&n];
    let mut v = layer
        .get(h)
        .map(|row| row[(b - 1) as usize].clone())
        .unwrap_or_else(BigUint::zero);
    if model.family == Family::S32Case2 && !tilde {
        v <<= h;
    }
    Ok(v)
}

fn free_profile(
    model: &ModelSpec,
    a: u8,
    lengths: &[usize],
) -> BTreeMap<usize, Vec<Vec<BigUint>>> {
    let k = model.k() as usize;
    let n_max = lengths.iter().copied().max().unwrap_or(0);
    let h_max = model.structural_max_height(n_max);
    let w = model.step_weights();
    let wf = BigUint::from(w.flat);
    let wu = BigUint::from(w.up);
    let wd = BigUint::from(w.down);

    // layer[h][b-1]
    let mut layer = vec![vec![BigUint::zero(); k]; h_max + 1];
    layer[0][(a - 1) as usize] = BigUint::one();

    let mut out = BTreeMap::new();
    if lengths.contains(&0) {
        out.insert(0, layer.clone());
    }
    for n in 1..=n_max {
        let mut next = vec![vec![BigUint::zero(); k]; h_max + 1];
        for h in 0..=h_max {
            for b in 0..k {
                let src = &layer[h][b];
                if src.is_zero() {
                    continue;
                }
                // flat b -> b
                next[h][b] += src * &wf;
                // up b -> c for c > b
                if h + 1 <= h_max {
                    for c in b + 1..k {
                        next[h + 1][c] += src * &wu;
                    }
                }
                // down b -> c for c < b
                if h >= 1 {
                    for c in 0..b {
                        next[h - 1][c] += src * &wd;
                    }
                }
            }
        }
        layer = next;
        if lengths.contains(&n) {
            out.insert(n, layer.clone());
        }
    }
    out
}

/// Stack automaton state for the balanced regime: current index plus the
/// excursion-opening indices still awaiting their reflected down step.
type StackState = (u8, Vec<u8>);

fn balanced_profile(
    model: &ModelSpec,
    a: u8,
    lengths: &[usize],
) -> BTreeMap<usize, Vec<Vec<BigUint>>> {
    let k = model.k();
    let n_max = lengths.iter().copied().max().unwrap_or(0);
    let mut layer: BTreeMap<StackState, BigUint> = BTreeMap::new();
    layer.insert((a, Vec::new()), BigUint::one());

    let snapshot = |layer: &BTreeMap<StackState, BigUint>, n: usize| {
        let h_max = model.structural_max_height(n.max(1));
        let mut grid = vec![vec![BigUint::zero(); k as usize]; h_max + 1];
        for ((idx, stack), v) in layer {
            grid[stack.len()][(*idx - 1) as usize] += v;
        }
        grid
    };

    let mut out = BTreeMap::new();
    if lengths.contains(&0) {
        out.insert(0, snapshot(&layer, 0));
    }
    for n in 1..=n_max {
        let mut next: BTreeMap<StackState, BigUint> = BTreeMap::new();
        for ((idx, stack), v) in &layer {
            // flat
            *next.entry((*idx, stack.clone())).or_default() += v;
            // up x_{idx,c}: remember idx for the forced reflected descent
            for c in idx + 1..=k {
                let mut st = stack.clone();
                st.push(*idx);
                *next.entry((c, st)).or_default() += v;
            }
            // down x_{idx,e}: only the reflection of the innermost open up
            if let Some(&ret) = stack.last() {
                let mut st = stack.clone();
                st.pop();
                *next.entry((ret, st)).or_default() += v;
            }
        }
        layer = next;
        if lengths.contains(&n) {
            out.insert(n, snapshot(&layer, n));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;
    use num_traits::One;

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn s31_paper_spot_values() {
        let m = ModelSpec::s31_lambda0();
        assert_eq!(count(&m, 3, 0, 1, 2, false).unwrap(), big(3));
        assert_eq!(count(&m, 3, 1, 1, 2, false).unwrap(), big(6));
        for n in 0..8 {
            assert_eq!(count(&m, n, 0, 3, 3, false).unwrap(), big(1));
            assert_eq!(count(&m, n, 0, 1, 3, false).unwrap(), big(0));
        }
        // N_{2,1→1} = |{x11x11, x12x21, x13x31}|
        assert_eq!(count(&m, 2, 0, 1, 1, false).unwrap(), big(3));
    }

    #[test]
    fn s21_powers_of_two() {
        let m = ModelSpec::s21();
        for n in 1..=12usize {
            assert_eq!(
                count(&m, n, 0, 1, 1, false).unwrap(),
                BigUint::one() << (n - 1)
            );
            assert_eq!(
                count(&m, n, 1, 1, 2, false).unwrap(),
                BigUint::one() << (n - 1)
            );
        }
        assert_eq!(count(&m, 1, 0, 2, 2, false).unwrap(), big(1));
    }

    #[test]
    fn s32_case2_spot_values() {
        let m = ModelSpec::s32_case2(BigRational::one()).unwrap();
        assert_eq!(count(&m, 4, 2, 1, 2, false).unwrap(), big(8));
        assert_eq!(count(&m, 4, 2, 1, 2, true).unwrap(), big(2));
        assert_eq!(count(&m, 3, 0, 1, 1, false).unwrap(), big(32));
        // N_{n,3→3} = 2^n (colored flats)
        assert_eq!(count(&m, 5, 0, 3, 3, false).unwrap(), big(32));
    }

    #[test]
    fn s32_case1_doubles_s31() {
        let c1 = ModelSpec::s32_case1();
        let s31 = ModelSpec::s31_lambda0();
        for n in 0..=8usize {
            for h in 0..=s31.structural_max_height(n) {
                for a in 1..=3 {
                    for b in 1..=3 {
                        let lhs = count(&c1, n, h, a, b, false).unwrap();
                        let rhs = count(&s31, n, h, a, b, false).unwrap() << n;
                        assert_eq!(lhs, rhs, "n={n} h={h} {a}->{b}");
                    }
                }
            }
        }
    }

    #[test]
    fn balanced_lambda_pos_counts() {
        let m = ModelSpec::s31_lambda_pos(BigRational::one()).unwrap();
        // Hand-enumerated: n=3 height-0 walks 1→1 and the h=1 walks 1→2.
        assert_eq!(count(&m, 3, 0, 1, 1, false).unwrap(), big(7));
        assert_eq!(count(&m, 3, 1, 1, 2, false).unwrap(), big(6));
        // {12} sector dies at λ>0.
        for n in 1..=8 {
            assert_eq!(count(&m, n, 0, 1, 2, false).unwrap(), big(0));
        }
        // N_{n,2→2} = 2^{n−1} at λ>0.
        for n in 1..=8usize {
            assert_eq!(
                count(&m, n, 0, 2, 2, false).unwrap(),
                BigUint::one() << (n - 1)
            );
        }
    }

    #[test]
    fn reversal_symmetry_at_height_zero() {
        for m in [
            ModelSpec::s21(),
            ModelSpec::s31_lambda0(),
            ModelSpec::s31_lambda_pos(BigRational::one()).unwrap(),
            ModelSpec::s32_case1(),
            ModelSpec::s32_case2(BigRational::one()).unwrap(),
        ] {
            for n in 0..=7 {
                for a in 1..=m.k() {
                    for b in 1..=m.k() {
                        assert_eq!(
                            count(&m, n, 0, a, b, false).unwrap(),
                            count(&m, n, 0, b, a, false).unwrap(),
                            "{m} n={n} {a}->{b}"
                        );
                    }
                }
            }
        }
    }
}
