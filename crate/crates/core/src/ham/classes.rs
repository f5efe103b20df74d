//! Move-closure equivalence classes and exact zero-energy verification.
//!
//! Basis states are adjacent when some gram row relates them; classes are
//! the connected components of that graph. A class survives iff no touching
//! row has a nonzero coefficient sum — for the uniform superposition over a
//! closed class, a row's inner product is its coefficient sum divided by
//! √|class|, so zero-sum rows (all move rows, including the three-vector
//! flat/wedge row) annihilate it and nonzero-sum rows (the penalty
//! projectors) lift it. Survival is nevertheless double-checked by exact
//! annihilation in [`verify_zero_energy`], which applies every row instance
//! to the superposition in rational arithmetic.

use std::collections::{HashMap, HashSet};

use num_rational::BigRational;
use num_traits::Zero;

use crate::config::Caps;
use crate::error::{Error, Result};
use crate::model::Topology;

use super::layout::{BasisLayout, Representation};
use super::terms::ProjectorTerm;

#[derive(Clone, Debug)]
pub struct GroundClass {
    /// Sorted basis states.
    pub members: Vec<u64>,
    pub survives: bool,
    /// Start/end semigroup indices when the representative is a valid SMW
    /// on an open chain.
    pub sector: Option<(u8, u8)>,
    /// Label of a penalty term that lifts the class.
    pub lifted_by: Option<String>,
}

/// Pre-indexed terms: per term, packed window value → (row, component).
pub struct TermIndex<'a> {
    pub layout: &'a BasisLayout,
    pub terms: &'a [ProjectorTerm],
    lookup: Vec<HashMap<u32, Vec<(u32, u32)>>>,
    penalty_row: Vec<Vec<bool>>,
}

fn pack(window: &[u8]) -> u32 {
    let mut acc = 0u32;
    for &v in window {
        acc = (acc << 5) | v as u32;
    }
    acc | ((window.len() as u32) << 28)
}

impl<'a> TermIndex<'a> {
    pub fn new(layout: &'a BasisLayout, terms: &'a [ProjectorTerm]) -> Self {
        let mut lookup = Vec::with_capacity(terms.len());
        let mut penalty_row = Vec::with_capacity(terms.len());
        for t in terms {
            let mut map: HashMap<u32, Vec<(u32, u32)>> = HashMap::new();
            let mut pens = Vec::with_capacity(t.rows.len());
            for (ri, row) in t.rows.iter().enumerate() {
                pens.push(!row.coeff_sum().is_zero());
                for (ci, (pat, _)) in row.components.iter().enumerate() {
                    map.entry(pack(pat)).or_default().push((ri as u32, ci as u32));
                }
            }
            lookup.push(map);
            penalty_row.push(pens);
        }
        Self { layout, terms, lookup, penalty_row }
    }

    /// Visits move neighbors of `state`; returns the label of a penalty row
    /// touching it, if any.
    pub fn expand(&self, state: u64, mut visit: impl FnMut(u64)) -> Option<&'a str> {
        let mut lifted: Option<&'a str> = None;
        for (ti, term) in self.terms.iter().enumerate() {
            let w = self.layout.window_values(state, &term.support);
            let Some(hits) = self.lookup[ti].get(&pack(&w)) else {
                continue;
            };
            for &(ri, ci) in hits {
                if self.penalty_row[ti][ri as usize] {
                    lifted = Some(&term.label);
                }
                let row = &term.rows[ri as usize];
                for (cj, (pat, _)) in row.components.iter().enumerate() {
                    if cj as u32 != ci {
                        visit(self.layout.with_slots(state, &term.support, pat));
                    }
                }
            }
        }
        lifted
    }
}

/// All move-closure classes over the full basis.
pub fn ground_classes(
    layout: &BasisLayout,
    terms: &[ProjectorTerm],
    caps: &Caps,
) -> Result<Vec<GroundClass>> {
    if layout.dim as u128 > caps.class_states {
        return Err(Error::BudgetExceeded {
            required: layout.dim as u128,
            budget: caps.class_states,
        });
    }
    let index = TermIndex::new(layout, terms);
    let dim = layout.dim as usize;
    let mut visited = vec![false; dim];
    let mut classes = Vec::new();
    for seed in 0..layout.dim {
        if visited[seed as usize] {
            continue;
        }
        visited[seed as usize] = true;
        let class = bfs(&index, seed, |s| {
            let v = &mut visited[s as usize];
            let seen = *v;
            *v = true;
            seen
        });
        classes.push(finish_class(layout, class));
    }
    Ok(classes)
}

/// The single class containing `seed`, for bases too large to enumerate.
pub fn class_from_seed(
    layout: &BasisLayout,
    terms: &[ProjectorTerm],
    seed: u64,
    member_cap: usize,
) -> Result<GroundClass> {
    let index = TermIndex::new(layout, terms);
    let mut visited: HashSet<u64> = HashSet::new();
    visited.insert(seed);
    let class = bfs(&index, seed, |s| !visited.insert(s));
    if class.members.len() > member_cap {
        return Err(Error::CapExceeded {
            what: "class members",
            requested: class.members.len(),
            cap: member_cap,
        });
    }
    Ok(finish_class(layout, class))
}

struct RawClass {
    members: Vec<u64>,
    lifted_by: Option<String>,
}

fn bfs(index: &TermIndex, seed: u64, mut mark: impl FnMut(u64) -> bool) -> RawClass {
    let mut queue = vec![seed];
    let mut members = Vec::new();
    let mut lifted_by = None;
    while let Some(state) = queue.pop() {
        members.push(state);
        let hit = index.expand(state, |next| {
            if !mark(next) {
                queue.push(next);
            }
        });
        if lifted_by.is_none() {
            if let Some(label) = hit {
                lifted_by = Some(label.to_string());
            }
        }
    }
    members.sort_unstable();
    RawClass { members, lifted_by }
}

fn finish_class(layout: &BasisLayout, raw: RawClass) -> GroundClass {
    let sector = if layout.model.topology == Topology::Open {
        let walk = layout.state_to_walk(raw.members[0]);
        if walk.motzkin_valid(0) {
            Some((walk.start_index().unwrap(), walk.end_index().unwrap()))
        } else {
            None
        }
    } else {
        None
    };
    GroundClass {
        survives: raw.lifted_by.is_none(),
        lifted_by: raw.lifted_by,
        members: raw.members,
        sector,
    }
}

/// Exact check that the uniform superposition over `class` is annihilated
/// by every term: each row instance (a row with the context slots frozen)
/// must accumulate a zero amplitude sum.
pub fn verify_zero_energy(
    layout: &BasisLayout,
    terms: &[ProjectorTerm],
    class: &GroundClass,
) -> bool {
    let members: HashSet<u64> = class.members.iter().copied().collect();
    for (ti, term) in terms.iter().enumerate() {
        // instance key: the state with its window frozen to component 0
        let mut sums: HashMap<(usize, usize, u64), BigRational> = HashMap::new();
        for &state in &class.members {
            let w = layout.window_values(state, &term.support);
            for (ri, row) in term.rows.iter().enumerate() {
                for (pat, coeff) in &row.components {
                    if *pat == w {
                        let canon = layout.with_slots(state, &term.support, &row.components[0].0);
                        *sums.entry((ti, ri, canon)).or_insert_with(BigRational::zero) +=
                            coeff;
                    }
                }
            }
        }
        if sums.values().any(|v| !v.is_zero()) {
            return false;
        }
    }
    // A class member carried outside the class by a move would contradict
    // closure; assert it in debug builds.
    debug_assert!({
        let index = TermIndex::new(layout, terms);
        class.members.iter().all(|&m| {
            let mut ok = true;
            index.expand(m, |n| ok &= members.contains(&n));
            ok
        })
    });
    true
}

/// Number of surviving classes (combinatorial GSD).
pub fn surviving_class_count(
    layout: &BasisLayout,
    terms: &[ProjectorTerm],
    caps: &Caps,
) -> Result<u64> {
    Ok(ground_classes(layout, terms, caps)?
        .iter()
        .filter(|c| c.survives)
        .count() as u64)
}

/// Walks of a class, in link-element form.
pub fn class_walks(layout: &BasisLayout, class: &GroundClass) -> Vec<crate::sis::Walk> {
    class.members.iter().map(|&m| layout.state_to_walk(m)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ham::terms::build_terms;
    use num_rational::BigRational;

    fn survivors(classes: &[GroundClass]) -> Vec<&GroundClass> {
        classes.iter().filter(|c| c.survives).collect()
    }

    #[test]
    fn s21_two_classes() {
        let m = crate::model::ModelSpec::s21();
        let (layout, terms) = build_terms(&m, 6, Representation::ReducedSite).unwrap();
        let classes = ground_classes(&layout, &terms, &Caps::default()).unwrap();
        let s = survivors(&classes);
        assert_eq!(s.len(), 2);
        let mut sectors: Vec<_> = s.iter().map(|c| c.sector.unwrap()).collect();
        sectors.sort();
        assert_eq!(sectors, vec![(1, 1), (2, 2)]);
    }

    #[test]
    fn s31_lambda0_five_classes_and_member_counts() {
        let m = crate::model::ModelSpec::s31_lambda0();
        let (layout, terms) = build_terms(&m, 6, Representation::ReducedSite).unwrap();
        let classes = ground_classes(&layout, &terms, &Caps::default()).unwrap();
        let s = survivors(&classes);
        assert_eq!(s.len(), 5);
        for c in &s {
            let (a, b) = c.sector.unwrap();
            let expect = crate::count::count(&m, 6, 0, a, b, false).unwrap();
            assert_eq!(
                num_bigint::BigUint::from(c.members.len()),
                expect,
                "sector {a}{b}"
            );
            assert!(verify_zero_energy(&layout, &terms, c));
        }
    }

    #[test]
    fn s31_lambda_pos_three_classes() {
        let m = crate::model::ModelSpec::s31_lambda_pos(BigRational::from_integer(1.into()))
            .unwrap();
        let (layout, terms) = build_terms(&m, 6, Representation::ReducedSite).unwrap();
        let classes = ground_classes(&layout, &terms, &Caps::default()).unwrap();
        let s = survivors(&classes);
        assert_eq!(s.len(), 3);
        let mut sectors: Vec<_> = s.iter().map(|c| c.sector.unwrap()).collect();
        sectors.sort();
        assert_eq!(sectors, vec![(1, 1), (2, 2), (3, 3)]);
    }

    #[test]
    fn closed_ring_two_classes() {
        let m = crate::model::ModelSpec::s31_lambda0()
            .with_topology(crate::model::Topology::ClosedBulkOnly);
        for n in 5..=7 {
            let (layout, terms) = build_terms(&m, n, Representation::ReducedSite).unwrap();
            let count = surviving_class_count(&layout, &terms, &Caps::default()).unwrap();
            assert_eq!(count, 2, "ring n={n}");
        }
    }

    #[test]
    fn closed_seam_three_classes() {
        let m = crate::model::ModelSpec::s31_lambda0()
            .with_topology(crate::model::Topology::ClosedSeam);
        let (layout, terms) = build_terms(&m, 6, Representation::ReducedSite).unwrap();
        let count = surviving_class_count(&layout, &terms, &Caps::default()).unwrap();
        assert_eq!(count, 3);
    }
}
