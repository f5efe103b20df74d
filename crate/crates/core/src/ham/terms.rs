//! Projector terms for every Hamiltonian variant.
//!
//! A term is a weighted sum of rank-one projectors `|g⟩⟨g|/‖g‖²` over
//! mutually orthogonal (unnormalized) gram vectors `g`, each supported on a
//! small window of slots. The gram vectors are exactly the kernel-defining
//! vectors of the local moves:
//!
//! - two-component rows with coefficients (1, −1) are the up/down/flat/wedge
//!   equivalence moves and the color flips;
//! - the three-component row `(1, −½, −½)` is the flat/wedge vector at
//!   index 1;
//! - single-component rows are penalty projectors (boundary conditions, the
//!   balancing term, the color-mismatch term, the disconnected-pair term).
//!
//! Keeping terms in this shape gives every consumer the same source of
//! truth: matrix assembly takes outer products, the kernel rank works on
//! the rows directly, move-closure reads the row supports as graph edges,
//! and class survival checks row coefficient sums.

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::model::{Boundary, Family, ModelSpec, Topology};

use super::layout::{BasisLayout, Representation};

#[derive(Clone, Debug)]
pub struct GramRow {
    /// (window assignment, coefficient), patterns distinct within a row.
    pub components: Vec<(Vec<u8>, BigRational)>,
}

impl GramRow {
    pub fn norm2(&self) -> BigRational {
        self.components.iter().map(|(_, c)| c * c).sum()
    }

    /// Nonzero iff the row penalizes the uniform superposition over a
    /// move-closed class (all move rows sum to zero by construction).
    pub fn coeff_sum(&self) -> BigRational {
        self.components.iter().map(|(_, c)| c.clone()).sum()
    }
}

#[derive(Clone, Debug)]
pub struct ProjectorTerm {
    pub label: String,
    /// Slot indices; may wrap on closed chains, always distinct.
    pub support: Vec<usize>,
    pub rows: Vec<GramRow>,
    pub weight: BigRational,
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

struct Builder {
    terms: Vec<ProjectorTerm>,
}

impl Builder {
    fn push(&mut self, label: String, support: Vec<usize>, rows: Vec<GramRow>, weight: BigRational) {
        if weight.is_zero() || rows.is_empty() {
            return;
        }
        self.terms.push(ProjectorTerm { label, support, rows, weight });
    }
}

fn row2(p1: Vec<u8>, p2: Vec<u8>) -> GramRow {
    GramRow { components: vec![(p1, rat(1, 1)), (p2, rat(-1, 1))] }
}

fn row1(p: Vec<u8>) -> GramRow {
    GramRow { components: vec![(p, rat(1, 1))] }
}

/// Window slot lists per topology.
struct Windows {
    /// Three-site (reduced) or two-link (link) bulk move windows.
    bulk: Vec<Vec<usize>>,
    /// Single-link / site-pair windows for the color terms.
    color: Vec<Vec<usize>>,
    /// Adjacent link pairs for the disconnected penalty (link rep only).
    disc: Vec<Vec<usize>>,
    left2: Option<Vec<usize>>,
    right2: Option<Vec<usize>>,
    left4: Option<Vec<usize>>,
    right4: Option<Vec<usize>>,
}

fn windows(model: &ModelSpec, n: usize, rep: Representation) -> Result<Windows> {
    let closed = model.topology != Topology::Open;
    if closed && n < 3 {
        return Err(Error::InvalidModel("closed chains need n ≥ 3".into()));
    }
    let ring = model.topology == Topology::ClosedBulkOnly;
    Ok(match rep {
        Representation::ReducedSite => {
            let sites = if closed { n } else { n + 1 };
            let m = |i: usize| i % sites;
            let bulk: Vec<Vec<usize>> = if ring {
                (0..n).map(|i| vec![m(i + n - 1), i, m(i + 1)]).collect()
            } else {
                (1..n).map(|i| vec![i - 1, i, m(i + 1)]).collect()
            };
            let color: Vec<Vec<usize>> = if ring {
                (0..n).map(|i| vec![m(i + n - 1), i]).collect()
            } else {
                (1..=n).map(|i| vec![i - 1, m(i)]).collect()
            };
            let boundary = !ring;
            Windows {
                bulk,
                color,
                disc: vec![],
                left2: boundary.then(|| vec![0, 1]),
                right2: boundary.then(|| vec![n - 1, m(n)]),
                left4: (boundary && n >= 3).then(|| vec![0, 1, 2, 3]),
                right4: (boundary && n >= 3).then(|| vec![n - 3, n - 2, n - 1, m(n)]),
            }
        }
        Representation::Link => {
            let m = |j: usize| j % n;
            let bulk: Vec<Vec<usize>> = if ring {
                (0..n).map(|j| vec![j, m(j + 1)]).collect()
            } else {
                (0..n - 1).map(|j| vec![j, j + 1]).collect()
            };
            let disc: Vec<Vec<usize>> = match model.topology {
                Topology::Open => bulk.clone(),
                // the endpoint identification also joins link n to link 1
                Topology::ClosedSeam | Topology::ClosedBulkOnly => {
                    (0..n).map(|j| vec![j, m(j + 1)]).collect()
                }
            };
            let color: Vec<Vec<usize>> = (0..n).map(|j| vec![j]).collect();
            let boundary = !ring;
            Windows {
                bulk,
                color,
                disc,
                left2: boundary.then(|| vec![0]),
                right2: boundary.then(|| vec![n - 1]),
                left4: (boundary && n >= 3).then(|| vec![0, 1, 2]),
                right4: (boundary && n >= 3).then(|| vec![n - 3, n - 2, n - 1]),
            }
        }
    })
}

/// Builds the full term list for the model on a length-`n` chain.
pub fn build_terms(
    model: &ModelSpec,
    n: usize,
    rep: Representation,
) -> Result<(BasisLayout, Vec<ProjectorTerm>)> {
    let layout = BasisLayout::new(model, n, rep)?;
    let w = windows(model, n, rep)?;
    let mut b = Builder { terms: Vec::new() };
    match rep {
        Representation::ReducedSite => match model.family {
            Family::S21 | Family::S31 => reduced_uncolored(model, &layout, &w, &mut b),
            Family::S32Case1 | Family::S32Case2 => reduced_colored(model, &layout, &w, &mut b),
        },
        Representation::Link => match model.family {
            Family::S21 | Family::S31 => link_uncolored(model, &layout, &w, &mut b),
            Family::S32Case1 | Family::S32Case2 => link_colored(model, &layout, &w, &mut b),
        },
    }
    Ok((layout, b.terms))
}

/// The boundary perturbation `P^{|index⟩}` at site 0 (reduced rep), used to
/// probe the sensitivity of the degeneracy.
pub fn site0_perturbation(layout: &BasisLayout, index: u8) -> ProjectorTerm {
    let rows = layout
        .site_codes_any_color(0, index)
        .into_iter()
        .map(|c| row1(vec![c]))
        .collect();
    ProjectorTerm {
        label: format!("perturb-site0-{index}"),
        support: vec![0],
        rows,
        weight: BigRational::one(),
    }
}

fn reduced_uncolored(model: &ModelSpec, _layout: &BasisLayout, w: &Windows, b: &mut Builder) {
    let k = model.k();
    let v = |a: u8| a - 1;
    for (i, win) in w.bulk.iter().enumerate() {
        let mut u_rows = Vec::new();
        let mut d_rows = Vec::new();
        for a in 1..=k {
            for bb in 1..=k {
                if a < bb {
                    u_rows.push(row2(vec![v(a), v(bb), v(bb)], vec![v(a), v(a), v(bb)]));
                } else if a > bb {
                    d_rows.push(row2(vec![v(a), v(bb), v(bb)], vec![v(a), v(a), v(bb)]));
                }
            }
        }
        b.push(format!("U@{i}"), win.clone(), u_rows, BigRational::one());
        b.push(format!("D@{i}"), win.clone(), d_rows, BigRational::one());
        if k == 2 {
            // S21 flat move: (1,1,1) ~ (1,2,1)
            let f = vec![row2(vec![0, 0, 0], vec![0, 1, 0])];
            b.push(format!("F@{i}"), win.clone(), f, BigRational::one());
        } else {
            let f = vec![
                GramRow {
                    components: vec![
                        (vec![0, 0, 0], rat(1, 1)),
                        (vec![0, 1, 0], rat(-1, 2)),
                        (vec![0, 2, 0], rat(-1, 2)),
                    ],
                },
                row2(vec![1, 1, 1], vec![1, 2, 1]),
            ];
            b.push(format!("F@{i}"), win.clone(), f, BigRational::one());
            let lambda = model.lambda.as_ref().expect("S31 carries λ parameters");
            b.push(
                format!("W1@{i}"),
                win.clone(),
                vec![row2(vec![0, 1, 0], vec![0, 2, 0])],
                BigRational::one(),
            );
            b.push(
                format!("W2@{i}"),
                win.clone(),
                vec![row2(vec![2, 0, 2], vec![2, 1, 2])],
                lambda.lambda1.clone(),
            );
            b.push(
                format!("B@{i}"),
                win.clone(),
                vec![row1(vec![0, 2, 1]), row1(vec![1, 2, 0])],
                lambda.lambda2.clone(),
            );
        }
    }
    // Boundary projectors.
    let penalties: &[(u8, u8)] = if k == 2 { &[(2, 1)] } else { &[(2, 1), (3, 1), (3, 2)] };
    if let Some(win) = &w.left2 {
        let rows = penalties.iter().map(|&(a, c)| row1(vec![v(a), v(c)])).collect();
        b.push("left".into(), win.clone(), rows, BigRational::one());
    }
    if let Some(win) = &w.right2 {
        let rows = penalties.iter().map(|&(a, c)| row1(vec![v(c), v(a)])).collect();
        b.push("right".into(), win.clone(), rows, BigRational::one());
    }
    if k == 3 && model.boundary == Boundary::AddendumCorrected {
        if let Some(win) = &w.left4 {
            b.push(
                "left-corr".into(),
                win.clone(),
                vec![row1(vec![0, 2, 1, 0])],
                BigRational::one(),
            );
        }
        if let Some(win) = &w.right4 {
            b.push(
                "right-corr".into(),
                win.clone(),
                vec![row1(vec![0, 1, 2, 0])],
                BigRational::one(),
            );
        }
    }
}

fn reduced_colored(model: &ModelSpec, layout: &BasisLayout, w: &Windows, b: &mut Builder) {
    let balanced = model.family == Family::S32Case2;
    let any = |slot: usize, a: u8| layout.site_codes_any_color(slot, a);
    let c = |slot: usize, a: u8, s: u8| layout.site_code(slot, a, s);

    // Color flip on flat steps.
    let color_weight = if balanced {
        model.mu.clone().expect("balanced 𝒮³₂ carries μ")
    } else {
        BigRational::one()
    };
    for (i, win) in w.color.iter().enumerate() {
        let (l, m) = (win[0], win[1]);
        let mut rows = Vec::new();
        for a in 1..=3 {
            for wl in any(l, a) {
                rows.push(row2(vec![wl, c(m, a, 1)], vec![wl, c(m, a, 2)]));
            }
        }
        b.push(format!("C@{i}"), win.clone(), rows, color_weight.clone());
    }

    for (i, win) in w.bulk.iter().enumerate() {
        let (l, m, r) = (win[0], win[1], win[2]);
        let mut u_rows = Vec::new();
        let mut d_rows = Vec::new();
        for a in 1..=3u8 {
            for bb in 1..=3u8 {
                if a == bb {
                    continue;
                }
                for t in 1..=2 {
                    for wl in any(l, a) {
                        let row = row2(
                            vec![wl, c(m, bb, t), c(r, bb, t)],
                            vec![wl, c(m, a, t), c(r, bb, t)],
                        );
                        if a < bb {
                            u_rows.push(row);
                        } else {
                            d_rows.push(row);
                        }
                    }
                }
            }
        }
        b.push(format!("U@{i}"), win.clone(), u_rows, BigRational::one());
        b.push(format!("D@{i}"), win.clone(), d_rows, BigRational::one());

        // Flat/wedge terms; the balanced case ties the right color to the
        // moving color.
        let mut f_rows = Vec::new();
        let mut w_rows = Vec::new();
        for t in 1..=2u8 {
            for u in 1..=2u8 {
                if balanced && u != t {
                    continue;
                }
                for wl in any(l, 1) {
                    f_rows.push(GramRow {
                        components: vec![
                            (vec![wl, c(m, 1, t), c(r, 1, u)], rat(1, 1)),
                            (vec![wl, c(m, 2, t), c(r, 1, u)], rat(-1, 2)),
                            (vec![wl, c(m, 3, t), c(r, 1, u)], rat(-1, 2)),
                        ],
                    });
                    w_rows.push(row2(
                        vec![wl, c(m, 2, t), c(r, 1, u)],
                        vec![wl, c(m, 3, t), c(r, 1, u)],
                    ));
                }
                for wl in any(l, 2) {
                    f_rows.push(row2(
                        vec![wl, c(m, 2, t), c(r, 2, u)],
                        vec![wl, c(m, 3, t), c(r, 2, u)],
                    ));
                }
            }
        }
        // Second wedge part: x_{3,1}x_{1,3} ~ x_{3,2}x_{2,3} with free
        // colors in both cases.
        for t in 1..=2u8 {
            for u in 1..=2u8 {
                for wl in any(l, 3) {
                    w_rows.push(row2(
                        vec![wl, c(m, 1, t), c(r, 3, u)],
                        vec![wl, c(m, 2, t), c(r, 3, u)],
                    ));
                }
            }
        }
        b.push(format!("F@{i}"), win.clone(), f_rows, BigRational::one());
        b.push(format!("W@{i}"), win.clone(), w_rows, BigRational::one());

        if balanced {
            // Color-mismatched up/down pairs.
            let mut r_rows = Vec::new();
            for a in 1..=3u8 {
                for bb in 2..=3u8 {
                    if bb <= a {
                        continue;
                    }
                    for cc in 1..bb {
                        for wl in any(l, a) {
                            r_rows.push(row1(vec![wl, c(m, bb, 1), c(r, cc, 2)]));
                            r_rows.push(row1(vec![wl, c(m, bb, 2), c(r, cc, 1)]));
                        }
                    }
                }
            }
            b.push(format!("R@{i}"), win.clone(), r_rows, BigRational::one());
        }
    }

    // Boundaries.
    if let Some(win) = &w.left2 {
        let (p0, p1) = (win[0], win[1]);
        let mut rows = Vec::new();
        for (a, cc) in [(2, 1), (3, 1), (3, 2)] {
            for w0 in any(p0, a) {
                for t in 1..=2 {
                    rows.push(row1(vec![w0, c(p1, cc, t)]));
                }
            }
        }
        b.push("left".into(), win.clone(), rows, BigRational::one());
    }
    if let Some(win) = &w.right2 {
        let (pa, pb) = (win[0], win[1]);
        let mut rows = Vec::new();
        for (a, cc) in [(1, 2), (1, 3), (2, 3)] {
            for wa in any(pa, a) {
                for t in 1..=2 {
                    rows.push(row1(vec![wa, c(pb, cc, t)]));
                }
            }
        }
        b.push("right".into(), win.clone(), rows, BigRational::one());
    }
    if model.boundary == Boundary::AddendumCorrected {
        if let Some(win) = &w.left4 {
            let mut rows = Vec::new();
            for w0 in any(win[0], 1) {
                for t in 1..=2 {
                    for u in 1..=2 {
                        for vcol in 1..=2 {
                            rows.push(row1(vec![
                                w0,
                                c(win[1], 3, t),
                                c(win[2], 2, u),
                                c(win[3], 1, vcol),
                            ]));
                        }
                    }
                }
            }
            b.push("left-corr".into(), win.clone(), rows, BigRational::one());
        }
        if let Some(win) = &w.right4 {
            let mut rows = Vec::new();
            for w0 in any(win[0], 1) {
                for t in 1..=2 {
                    for u in 1..=2 {
                        for vcol in 1..=2 {
                            rows.push(row1(vec![
                                w0,
                                c(win[1], 2, t),
                                c(win[2], 3, u),
                                c(win[3], 1, vcol),
                            ]));
                        }
                    }
                }
            }
            b.push("right-corr".into(), win.clone(), rows, BigRational::one());
        }
    }
}

fn link_uncolored(model: &ModelSpec, layout: &BasisLayout, w: &Windows, b: &mut Builder) {
    let k = model.k();
    let lc = |a: u8, bb: u8| {
        layout.link_code(&crate::sis::SisElement::new(k, a, bb).unwrap())
    };
    for (i, win) in w.bulk.iter().enumerate() {
        let mut u_rows = Vec::new();
        let mut d_rows = Vec::new();
        for a in 1..=k {
            for bb in 1..=k {
                if a == bb {
                    continue;
                }
                let row = row2(vec![lc(a, bb), lc(bb, bb)], vec![lc(a, a), lc(a, bb)]);
                if a < bb {
                    u_rows.push(row);
                } else {
                    d_rows.push(row);
                }
            }
        }
        b.push(format!("U@{i}"), win.clone(), u_rows, BigRational::one());
        b.push(format!("D@{i}"), win.clone(), d_rows, BigRational::one());
        if k == 2 {
            let f = vec![row2(vec![lc(1, 1), lc(1, 1)], vec![lc(1, 2), lc(2, 1)])];
            b.push(format!("F@{i}"), win.clone(), f, BigRational::one());
        } else {
            let f = vec![
                GramRow {
                    components: vec![
                        (vec![lc(1, 1), lc(1, 1)], rat(1, 1)),
                        (vec![lc(1, 2), lc(2, 1)], rat(-1, 2)),
                        (vec![lc(1, 3), lc(3, 1)], rat(-1, 2)),
                    ],
                },
                row2(vec![lc(2, 2), lc(2, 2)], vec![lc(2, 3), lc(3, 2)]),
            ];
            b.push(format!("F@{i}"), win.clone(), f, BigRational::one());
            let lambda = model.lambda.as_ref().expect("S31 carries λ parameters");
            b.push(
                format!("W1@{i}"),
                win.clone(),
                vec![row2(vec![lc(1, 2), lc(2, 1)], vec![lc(1, 3), lc(3, 1)])],
                BigRational::one(),
            );
            b.push(
                format!("W2@{i}"),
                win.clone(),
                vec![row2(vec![lc(3, 1), lc(1, 3)], vec![lc(3, 2), lc(2, 3)])],
                lambda.lambda1.clone(),
            );
            b.push(
                format!("B@{i}"),
                win.clone(),
                vec![
                    row1(vec![lc(1, 3), lc(3, 2)]),
                    row1(vec![lc(2, 3), lc(3, 1)]),
                ],
                lambda.lambda2.clone(),
            );
        }
    }
    // Disconnected penalty: range of one link must match the domain of the
    // next.
    for (i, win) in w.disc.iter().enumerate() {
        let mut rows = Vec::new();
        for a in 1..=k {
            for bb in 1..=k {
                for cc in 1..=k {
                    if bb == cc {
                        continue;
                    }
                    for d in 1..=k {
                        rows.push(row1(vec![lc(a, bb), lc(cc, d)]));
                    }
                }
            }
        }
        b.push(format!("disc@{i}"), win.clone(), rows, BigRational::one());
    }
    let penalties: &[(u8, u8)] = if k == 2 { &[(2, 1)] } else { &[(2, 1), (3, 1), (3, 2)] };
    if let Some(win) = &w.left2 {
        let rows = penalties.iter().map(|&(a, cc)| row1(vec![lc(a, cc)])).collect();
        b.push("left".into(), win.clone(), rows, BigRational::one());
    }
    if let Some(win) = &w.right2 {
        let rows = penalties.iter().map(|&(a, cc)| row1(vec![lc(cc, a)])).collect();
        b.push("right".into(), win.clone(), rows, BigRational::one());
    }
    if k == 3 && model.boundary == Boundary::AddendumCorrected {
        if let Some(win) = &w.left4 {
            b.push(
                "left-corr".into(),
                win.clone(),
                vec![row1(vec![lc(1, 3), lc(3, 2), lc(2, 1)])],
                BigRational::one(),
            );
        }
        if let Some(win) = &w.right4 {
            b.push(
                "right-corr".into(),
                win.clone(),
                vec![row1(vec![lc(1, 2), lc(2, 3), lc(3, 1)])],
                BigRational::one(),
            );
        }
    }
}

fn link_colored(model: &ModelSpec, layout: &BasisLayout, w: &Windows, b: &mut Builder) {
    let balanced = model.family == Family::S32Case2;
    let lc = |s: u8, a: u8, bb: u8| {
        layout.link_code(&crate::sis::SisElement::colored(3, s, a, bb).unwrap())
    };

    let color_weight = if balanced {
        model.mu.clone().expect("balanced 𝒮³₂ carries μ")
    } else {
        BigRational::one()
    };
    for (j, win) in w.color.iter().enumerate() {
        let rows = (1..=3u8)
            .map(|a| row2(vec![lc(1, a, a)], vec![lc(2, a, a)]))
            .collect();
        b.push(format!("C@{j}"), win.clone(), rows, color_weight.clone());
    }

    for (i, win) in w.bulk.iter().enumerate() {
        let mut u_rows = Vec::new();
        let mut d_rows = Vec::new();
        for s in 1..=2u8 {
            for a in 1..=3u8 {
                for bb in 1..=3u8 {
                    if a == bb {
                        continue;
                    }
                    let row = row2(
                        vec![lc(s, a, bb), lc(s, bb, bb)],
                        vec![lc(s, a, a), lc(s, a, bb)],
                    );
                    if a < bb {
                        u_rows.push(row);
                    } else {
                        d_rows.push(row);
                    }
                }
            }
        }
        b.push(format!("U@{i}"), win.clone(), u_rows, BigRational::one());
        b.push(format!("D@{i}"), win.clone(), d_rows, BigRational::one());

        let mut f_rows = Vec::new();
        let mut w_rows = Vec::new();
        for s in 1..=2u8 {
            for s2 in 1..=2u8 {
                if balanced && s2 != s {
                    continue;
                }
                f_rows.push(GramRow {
                    components: vec![
                        (vec![lc(s, 1, 1), lc(s2, 1, 1)], rat(1, 1)),
                        (vec![lc(s, 1, 2), lc(s2, 2, 1)], rat(-1, 2)),
                        (vec![lc(s, 1, 3), lc(s2, 3, 1)], rat(-1, 2)),
                    ],
                });
                f_rows.push(row2(
                    vec![lc(s, 2, 2), lc(s2, 2, 2)],
                    vec![lc(s, 2, 3), lc(s2, 3, 2)],
                ));
                w_rows.push(row2(
                    vec![lc(s, 1, 2), lc(s2, 2, 1)],
                    vec![lc(s, 1, 3), lc(s2, 3, 1)],
                ));
            }
        }
        for s in 1..=2u8 {
            for t in 1..=2u8 {
                w_rows.push(row2(
                    vec![lc(s, 3, 1), lc(t, 1, 3)],
                    vec![lc(s, 3, 2), lc(t, 2, 3)],
                ));
            }
        }
        b.push(format!("F@{i}"), win.clone(), f_rows, BigRational::one());
        b.push(format!("W@{i}"), win.clone(), w_rows, BigRational::one());

        if balanced {
            let mut r_rows = Vec::new();
            for a in 1..=3u8 {
                for bb in 2..=3u8 {
                    if bb <= a {
                        continue;
                    }
                    for cc in 1..bb {
                        r_rows.push(row1(vec![lc(1, a, bb), lc(2, bb, cc)]));
                        r_rows.push(row1(vec![lc(2, a, bb), lc(1, bb, cc)]));
                    }
                }
            }
            b.push(format!("R@{i}"), win.clone(), r_rows, BigRational::one());
        }
    }

    for (i, win) in w.disc.iter().enumerate() {
        let mut rows = Vec::new();
        for s in 1..=2u8 {
            for t in 1..=2u8 {
                for a in 1..=3u8 {
                    for bb in 1..=3u8 {
                        for cc in 1..=3u8 {
                            if bb == cc {
                                continue;
                            }
                            for d in 1..=3u8 {
                                rows.push(row1(vec![lc(s, a, bb), lc(t, cc, d)]));
                            }
                        }
                    }
                }
            }
        }
        b.push(format!("disc@{i}"), win.clone(), rows, BigRational::one());
    }

    if let Some(win) = &w.left2 {
        let mut rows = Vec::new();
        for s in 1..=2 {
            for (a, cc) in [(2, 1), (3, 1), (3, 2)] {
                rows.push(row1(vec![lc(s, a, cc)]));
            }
        }
        b.push("left".into(), win.clone(), rows, BigRational::one());
    }
    if let Some(win) = &w.right2 {
        let mut rows = Vec::new();
        for s in 1..=2 {
            for (a, cc) in [(1, 2), (1, 3), (2, 3)] {
                rows.push(row1(vec![lc(s, a, cc)]));
            }
        }
        b.push("right".into(), win.clone(), rows, BigRational::one());
    }
    if model.boundary == Boundary::AddendumCorrected {
        if let Some(win) = &w.left4 {
            let mut rows = Vec::new();
            for s in 1..=2 {
                for t in 1..=2 {
                    for u in 1..=2 {
                        rows.push(row1(vec![lc(s, 1, 3), lc(t, 3, 2), lc(u, 2, 1)]));
                    }
                }
            }
            b.push("left-corr".into(), win.clone(), rows, BigRational::one());
        }
        if let Some(win) = &w.right4 {
            let mut rows = Vec::new();
            for s in 1..=2 {
                for t in 1..=2 {
                    for u in 1..=2 {
                        rows.push(row1(vec![lc(s, 1, 2), lc(t, 2, 3), lc(u, 3, 1)]));
                    }
                }
            }
            b.push("right-corr".into(), win.clone(), rows, BigRational::one());
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lambda_zero_has_no_balancing_terms() {
        let m = ModelSpec::s31_lambda0();
        let (_, terms) = build_terms(&m, 4, Representation::ReducedSite).unwrap();
        assert!(terms.iter().any(|t| t.label.starts_with("W2@")));
        assert!(!terms.iter().any(|t| t.label.starts_with("B@")));

        let pos = ModelSpec::s31_lambda_pos(rat(2, 1)).unwrap();
        let (_, terms) = build_terms(&pos, 4, Representation::ReducedSite).unwrap();
        assert!(!terms.iter().any(|t| t.label.starts_with("W2@")));
        let b = terms.iter().find(|t| t.label.starts_with("B@")).unwrap();
        assert_eq!(b.weight, rat(2, 1));
    }

    #[test]
    fn move_rows_sum_to_zero_and_penalties_do_not() {
        for (m, rep) in [
            (ModelSpec::s31_lambda0(), Representation::ReducedSite),
            (ModelSpec::s31_lambda0(), Representation::Link),
            (ModelSpec::s21(), Representation::ReducedSite),
            (ModelSpec::s32_case2(rat(1, 1)).unwrap(), Representation::ReducedSite),
        ] {
            let (_, terms) = build_terms(&m, 5, rep).unwrap();
            for t in &terms {
                for row in &t.rows {
                    let penalty = row.components.len() == 1;
                    assert_eq!(
                        row.coeff_sum().is_zero(),
                        !penalty,
                        "{} in {m}",
                        t.label
                    );
                }
            }
        }
    }

    #[test]
    fn rows_within_a_term_are_orthogonal() {
        use std::collections::BTreeMap;
        for (m, rep) in [
            (ModelSpec::s31_lambda0(), Representation::ReducedSite),
            (ModelSpec::s31_lambda_pos(rat(1, 1)).unwrap(), Representation::Link),
            (ModelSpec::s32_case1(), Representation::ReducedSite),
            (ModelSpec::s32_case2(rat(1, 1)).unwrap(), Representation::Link),
            (ModelSpec::s21(), Representation::Link),
        ] {
            let (_, terms) = build_terms(&m, 5, rep).unwrap();
            for t in &terms {
                for (i, r1) in t.rows.iter().enumerate() {
                    for r2 in &t.rows[i + 1..] {
                        let mut dot = BigRational::zero();
                        let map: BTreeMap<_, _> =
                            r1.components.iter().map(|(p, c)| (p.clone(), c.clone())).collect();
                        for (p, c) in &r2.components {
                            if let Some(c1) = map.get(p) {
                                dot += c1 * c;
                            }
                        }
                        assert!(dot.is_zero(), "rows not orthogonal in {} of {m}", t.label);
                    }
                }
            }
        }
    }
}
