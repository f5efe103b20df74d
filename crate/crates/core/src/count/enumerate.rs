//! Brute-force walk enumeration: the oracle.
//!
//! A depth-first search over the literal model alphabet, one step at a time,
//! with nothing shared with the DP, recursion or series routes beyond the
//! step rules themselves. Connectivity is enforced by construction (the next
//! step's domain must equal the current range), heights never dip below
//! zero, and the regime rules are applied step by step:
//!
//! - λ > 0: an excursion opened by `x_{a,c}` closes only via `x_{c,a}`;
//! - balanced 𝒮³₂: a down step closing an excursion must carry the color of
//!   the up step that opened it;
//! - tilde mode erases the colors of unmatched up steps (ξ placeholders),
//!   obtained here by enumerating full colored walks and deduplicating their
//!   color-erased images — the literal definition of the tilde paths.

use std::collections::BTreeSet;

use num_bigint::BigUint;

use crate::config::Caps;
use crate::error::{Error, Result};
use crate::model::{CountRegime, Family, ModelSpec};
use crate::sis::{SisElement, StepKind, Walk};

fn oracle_cap(model: &ModelSpec, caps: &Caps) -> usize {
    if model.colored() {
        caps.oracle_n_colored
    } else {
        caps.oracle_n_uncolored
    }
}

fn check_cap(model: &ModelSpec, n: usize, caps: &Caps) -> Result<()> {
    let cap = oracle_cap(model, caps);
    if n > cap {
        return Err(Error::CapExceeded { what: "oracle length", requested: n, cap });
    }
    Ok(())
}

struct Dfs<F: FnMut(&[SisElement])> {
    n: usize,
    h: i64,
    /// Alphabet bucketed by domain index (slot 0 unused).
    by_domain: Vec<Vec<SisElement>>,
    balanced: bool,
    color_matched: bool,
    steps: Vec<SisElement>,
    /// Open excursions: (index to return to, color of the opening up step).
    stack: Vec<(u8, Option<u8>)>,
    sink: F,
}

impl<F: FnMut(&[SisElement])> Dfs<F> {
    fn run(model: &ModelSpec, n: usize, h: usize, a: u8, sink: F) {
        let mut by_domain = vec![Vec::new(); model.k() as usize + 1];
        for e in model.alphabet() {
            by_domain[e.domain as usize].push(e);
        }
        let mut dfs = Dfs {
            n,
            h: h as i64,
            by_domain,
            balanced: model.count_regime() == CountRegime::Balanced,
            color_matched: model.family == Family::S32Case2,
            steps: Vec::with_capacity(n),
            stack: Vec::new(),
            sink,
        };
        dfs.descend(a, 0);
    }

    fn descend(&mut self, idx: u8, y: i64) {
        if self.steps.len() == self.n {
            if y == self.h {
                let steps = std::mem::take(&mut self.steps);
                (self.sink)(&steps);
                self.steps = steps;
            }
            return;
        }
        let remaining = (self.n - self.steps.len()) as i64;
        if (y - self.h).abs() > remaining {
            return;
        }
        for i in 0..self.by_domain[idx as usize].len() {
            let e = self.by_domain[idx as usize][i];
            let y2 = y + e.delta();
            if y2 < 0 {
                continue;
            }
            match e.step_kind() {
                StepKind::Up => {
                    self.stack.push((idx, e.color));
                    self.steps.push(e);
                    self.descend(e.range, y2);
                    self.steps.pop();
                    self.stack.pop();
                }
                StepKind::Down => {
                    let (ret, col) = *self.stack.last().expect("height > 0 implies open stack");
                    if self.balanced && e.range != ret {
                        continue;
                    }
                    if self.color_matched && e.color != col {
                        continue;
                    }
                    let top = self.stack.pop().unwrap();
                    self.steps.push(e);
                    self.descend(e.range, y2);
                    self.steps.pop();
                    self.stack.push(top);
                }
                StepKind::Flat => {
                    self.steps.push(e);
                    self.descend(e.range, y2);
                    self.steps.pop();
                }
            }
        }
    }
}

/// All connected model walks of length `n` from `(0, a)` to `(n, h)` ending
/// at index `b`, in lexicographic order. With `tilde`, the color-erased
/// walks (balanced 𝒮³₂ only).
pub fn enumerate_walks(
    model: &ModelSpec,
    n: usize,
    h: usize,
    a: u8,
    b: u8,
    tilde: bool,
    caps: &Caps,
) -> Result<Vec<Walk>> {
    check_cap(model, n, caps)?;
    if tilde && model.family != Family::S32Case2 {
        return Err(Error::InvalidModel(
            "tilde walks only exist for the balanced 𝒮³₂ case".into(),
        ));
    }
    if n == 0 {
        return Ok(if h == 0 && a == b { vec![Walk::new(vec![])] } else { vec![] });
    }
    let mut set: BTreeSet<Vec<SisElement>> = BTreeSet::new();
    Dfs::run(model, n, h, a, |steps: &[SisElement]| {
        if steps.last().map(|e| e.range) != Some(b) {
            return;
        }
        if tilde {
            set.insert(erase_unmatched_colors(steps));
        } else {
            set.insert(steps.to_vec());
        }
    });
    Ok(set.into_iter().map(Walk::new).collect())
}

/// Count walks by running the enumerator without materializing them.
pub fn oracle_count(
    model: &ModelSpec,
    n: usize,
    h: usize,
    a: u8,
    b: u8,
    caps: &Caps,
) -> Result<BigUint> {
    check_cap(model, n, caps)?;
    if n == 0 {
        return Ok(BigUint::from(u8::from(h == 0 && a == b)));
    }
    let mut count = 0u64;
    Dfs::run(model, n, h, a, |steps: &[SisElement]| {
        if steps.last().map(|e| e.range) == Some(b) {
            count += 1;
        }
    });
    Ok(BigUint::from(count))
}

/// Tilde-count oracle: enumerate full colored walks, erase the colors of
/// unmatched up steps, count distinct images.
pub fn oracle_count_tilde(
    model: &ModelSpec,
    n: usize,
    h: usize,
    a: u8,
    b: u8,
    caps: &Caps,
) -> Result<BigUint> {
    Ok(BigUint::from(
        enumerate_walks(model, n, h, a, b, true, caps)?.len(),
    ))
}

/// Matching structure of a walk's up/down steps: standard parenthesis
/// matching on the height profile. Returns the positions of unmatched ups.
pub fn unmatched_up_positions(steps: &[SisElement]) -> Vec<usize> {
    let mut open = Vec::new();
    for (j, e) in steps.iter().enumerate() {
        match e.step_kind() {
            StepKind::Up => open.push(j),
            StepKind::Down => {
                open.pop();
            }
            StepKind::Flat => {}
        }
    }
    open
}

fn erase_unmatched_colors(steps: &[SisElement]) -> Vec<SisElement> {
    let mut out = steps.to_vec();
    for j in unmatched_up_positions(steps) {
        out[j].color = None;
    }
    out
}

/// Brute-force maximum height over all valid length-`n` prefixes. Colors
/// never change heights, so colored models search their index walks.
pub fn max_height(model: &ModelSpec, n: usize, caps: &Caps) -> Result<usize> {
    check_cap(model, n, caps)?;
    let balanced = model.count_regime() == CountRegime::Balanced;
    let k = model.k();
    let mut best = 0i64;
    // Prefixes need not return to the axis: plain DFS over all extensions.
    fn go(k: u8, balanced: bool, idx: u8, y: i64, left: usize, stack: &mut Vec<u8>, best: &mut i64) {
        *best = (*best).max(y);
        if left == 0 {
            return;
        }
        // flat
        go(k, balanced, idx, y, left - 1, stack, best);
        // ups
        for c in idx + 1..=k {
            stack.push(idx);
            go(k, balanced, c, y + 1, left - 1, stack, best);
            stack.pop();
        }
        // downs
        if y > 0 {
            if balanced {
                if let Some(&ret) = stack.last() {
                    let top = stack.pop().unwrap();
                    go(k, balanced, ret, y - 1, left - 1, stack, best);
                    stack.push(top);
                }
            } else {
                for c in 1..idx {
                    go(k, balanced, c, y - 1, left - 1, stack, best);
                }
            }
        }
    }
    for a in 1..=k {
        let mut stack = Vec::new();
        go(k, balanced, a, 0, n, &mut stack, &mut best);
    }
    Ok(best as usize)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;
    use num_traits::One;

    fn caps() -> Caps {
        Caps::default()
    }

    #[test]
    fn p3_one_to_two_matches_paper() {
        let m = ModelSpec::s31_lambda0();
        let walks = enumerate_walks(&m, 3, 0, 1, 2, false, &caps()).unwrap();
        let strings: Vec<String> = walks.iter().map(|w| w.to_string()).collect();
        assert_eq!(walks.len(), 3);
        for expect in [
            "x[1,3],x[3,2],x[2,2]",
            "x[1,1],x[1,3],x[3,2]",
            "x[1,3],x[3,3],x[3,2]",
        ] {
            assert!(strings.contains(&expect.to_string()), "{strings:?}");
        }
    }

    #[test]
    fn p1_3_1_to_2_has_six_walks() {
        let m = ModelSpec::s31_lambda0();
        assert_eq!(enumerate_walks(&m, 3, 1, 1, 2, false, &caps()).unwrap().len(), 6);
    }

    #[test]
    fn s32_case2_n4_h2() {
        let m = ModelSpec::s32_case2(BigRational::one()).unwrap();
        let full = enumerate_walks(&m, 4, 2, 1, 2, false, &caps()).unwrap();
        assert_eq!(full.len(), 8);
        let tilde = enumerate_walks(&m, 4, 2, 1, 2, true, &caps()).unwrap();
        assert_eq!(tilde.len(), 2);
        // ξ steps are the color-erased unmatched ups.
        for w in &tilde {
            assert_eq!(w.steps[0].color, None);
            assert_eq!(w.steps[3].color, None);
            assert!(w.steps[1].color.is_some());
        }
    }

    #[test]
    fn max_height_formulas() {
        let s31 = ModelSpec::s31_lambda0();
        for n in 1..=10usize {
            let expect = if n == 1 { 1 } else { (n - 2) / 3 + 2 };
            assert_eq!(max_height(&s31, n, &caps()).unwrap(), expect, "n={n}");
        }
        let s21 = ModelSpec::s21();
        for n in 1..=8 {
            assert_eq!(max_height(&s21, n, &caps()).unwrap(), 1, "n={n}");
        }
        let pos = ModelSpec::s31_lambda_pos(BigRational::one()).unwrap();
        assert_eq!(max_height(&pos, 1, &caps()).unwrap(), 1);
        for n in 2..=8 {
            assert_eq!(max_height(&pos, n, &caps()).unwrap(), 2, "n={n}");
        }
    }

    #[test]
    fn cap_is_enforced() {
        let m = ModelSpec::s31_lambda0();
        assert!(matches!(
            enumerate_walks(&m, 13, 0, 1, 1, false, &caps()),
            Err(Error::CapExceeded { .. })
        ));
    }
}
