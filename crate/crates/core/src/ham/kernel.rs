//! Ground-space dimension: exact null-space rank in rational mode, an
//! iterative eigensolver with an explicit confidence gap in float mode.
//!
//! Exact mode works on the gram rows rather than the realized matrix: for a
//! weighted sum of projectors the kernel is the joint null space of the
//! rows, so `dim ker H = dim − rank(rows)`. Two-component ±1 rows (the vast
//! majority) are equality constraints handled by union-find; the remaining
//! rows are reduced over the quotient by sparse rational elimination.

use std::collections::HashMap;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::config::Caps;
use crate::error::{Error, Result};

use super::sparse::{AssembledHam, SparseMat, SparseOperator};

pub const FLOAT_KERNEL_THRESHOLD: f64 = 1e-10;
pub const FLOAT_REJECT_BAND_HI: f64 = 1e-6;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum KernelMode {
    ExactRational,
    Float,
}

#[derive(Clone, Debug)]
pub struct KernelReport {
    pub dim: u64,
    pub kernel_dim: u64,
    pub mode: KernelMode,
    /// Smallest nonzero Ritz value seen (float mode).
    pub confidence_gap: Option<f64>,
}

pub fn kernel_dimension(ham: &AssembledHam, caps: &Caps) -> Result<KernelReport> {
    match &ham.op {
        SparseOperator::Rational(_) => exact_kernel(ham),
        SparseOperator::Float(mat) => float_kernel(mat, caps),
    }
}

struct UnionFind {
    parent: Vec<u32>,
    merges: u64,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self { parent: (0..n as u32).collect(), merges: 0 }
    }

    fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let up = self.parent[self.parent[x as usize] as usize];
            self.parent[x as usize] = up;
            x = up;
        }
        x
    }

    fn union(&mut self, a: u32, b: u32) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb) as usize] = ra.min(rb);
            self.merges += 1;
        }
    }
}

fn exact_kernel(ham: &AssembledHam) -> Result<KernelReport> {
    let layout = &ham.layout;
    let dim = layout.dim;
    if dim > u32::MAX as u64 {
        return Err(Error::BudgetExceeded { required: dim as u128, budget: u32::MAX as u128 });
    }
    let mut uf = UnionFind::new(dim as usize);
    // Deferred rows, as (state, coefficient) lists.
    let mut deferred: Vec<Vec<(u64, BigRational)>> = Vec::new();

    for term in &ham.terms {
        for row in &term.rows {
            let first = &row.components[0].0;
            let is_eq_pair = row.components.len() == 2
                && (&row.components[0].1 + &row.components[1].1).is_zero();
            for state in 0..dim {
                if layout.window_values(state, &term.support) != *first {
                    continue;
                }
                if is_eq_pair {
                    let other = layout.with_slots(state, &term.support, &row.components[1].0);
                    uf.union(state as u32, other as u32);
                } else {
                    deferred.push(
                        row.components
                            .iter()
                            .map(|(p, c)| (layout.with_slots(state, &term.support, p), c.clone()))
                            .collect(),
                    );
                }
            }
        }
    }

    let rank_eq = uf.merges;

    // Rewrite deferred rows over union-find representatives and eliminate.
    let mut pivots: HashMap<u64, Vec<(u64, BigRational)>> = HashMap::new();
    let mut rank_rest: u64 = 0;
    for row in deferred {
        let mut acc: HashMap<u64, BigRational> = HashMap::new();
        for (state, c) in row {
            let root = uf.find(state as u32) as u64;
            *acc.entry(root).or_insert_with(BigRational::zero) += c;
        }
        let mut vec: Vec<(u64, BigRational)> =
            acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        vec.sort_by_key(|(col, _)| *col);
        if reduce_row(&mut vec, &mut pivots) {
            rank_rest += 1;
        }
    }

    Ok(KernelReport {
        dim,
        kernel_dim: dim - rank_eq - rank_rest,
        mode: KernelMode::ExactRational,
        confidence_gap: None,
    })
}

/// Reduces `row` against the pivot set; inserts it (normalized) as a new
/// pivot when a nonzero remainder survives. Returns true on a new pivot.
fn reduce_row(
    row: &mut Vec<(u64, BigRational)>,
    pivots: &mut HashMap<u64, Vec<(u64, BigRational)>>,
) -> bool {
    loop {
        let Some((lead, coeff)) = row.first().cloned() else {
            return false;
        };
        let Some(p) = pivots.get(&lead) else {
            // normalize to a leading 1
            let inv = BigRational::one() / coeff;
            for (_, c) in row.iter_mut() {
                *c *= &inv;
            }
            pivots.insert(lead, row.clone());
            return true;
        };
        // row -= coeff * pivot (pivot has leading 1)
        let mut merged: Vec<(u64, BigRational)> = Vec::with_capacity(row.len() + p.len());
        let (mut i, mut j) = (0, 0);
        while i < row.len() || j < p.len() {
            match (row.get(i), p.get(j)) {
                (Some((ci, vi)), Some((cj, vj))) => {
                    if ci == cj {
                        let v = vi - &coeff * vj;
                        if !v.is_zero() {
                            merged.push((*ci, v));
                        }
                        i += 1;
                        j += 1;
                    } else if ci < cj {
                        merged.push((*ci, vi.clone()));
                        i += 1;
                    } else {
                        merged.push((*cj, -(&coeff * vj)));
                        j += 1;
                    }
                }
                (Some((ci, vi)), None) => {
                    merged.push((*ci, vi.clone()));
                    i += 1;
                }
                (None, Some((cj, vj))) => {
                    merged.push((*cj, -(&coeff * vj)));
                    j += 1;
                }
                (None, None) => break,
            }
        }
        *row = merged;
    }
}

// ---------------------------------------------------------------------------
// Float mode

fn float_kernel(mat: &SparseMat<f64>, caps: &Caps) -> Result<KernelReport> {
    let dim = mat.dim as usize;
    // Connected components of the sparsity graph.
    let mut uf = UnionFind::new(dim);
    for (i, row) in mat.rows.iter().enumerate() {
        for (j, _) in row {
            uf.union(i as u32, *j as u32);
        }
    }
    let mut comps: HashMap<u32, Vec<u32>> = HashMap::new();
    for i in 0..dim as u32 {
        let r = uf.find(i);
        comps.entry(r).or_default().push(i);
    }

    let mut kernel = 0u64;
    let mut gap = f64::INFINITY;
    for comp in comps.values() {
        let evals = if comp.len() <= caps.dense_block {
            dense_low_spectrum(mat, comp)
        } else {
            lanczos_low_spectrum(mat, comp)
        };
        for ev in evals {
            if ev < FLOAT_KERNEL_THRESHOLD {
                kernel += 1;
            } else {
                gap = gap.min(ev);
            }
        }
    }
    if gap > FLOAT_KERNEL_THRESHOLD && gap < FLOAT_REJECT_BAND_HI {
        return Err(Error::AmbiguousFloatKernel {
            gap,
            lo: FLOAT_KERNEL_THRESHOLD,
            hi: FLOAT_REJECT_BAND_HI,
        });
    }
    Ok(KernelReport {
        dim: mat.dim,
        kernel_dim: kernel,
        mode: KernelMode::Float,
        confidence_gap: gap.is_finite().then_some(gap),
    })
}

fn dense_low_spectrum(mat: &SparseMat<f64>, comp: &[u32]) -> Vec<f64> {
    let n = comp.len();
    let index: HashMap<u32, usize> = comp.iter().enumerate().map(|(i, &s)| (s, i)).collect();
    let mut dense = nalgebra::DMatrix::<f64>::zeros(n, n);
    for (li, &s) in comp.iter().enumerate() {
        for (j, v) in &mat.rows[s as usize] {
            if let Some(&lj) = index.get(&(*j as u32)) {
                dense[(li, lj)] = *v;
            }
        }
    }
    let eig = nalgebra::SymmetricEigen::new(dense);
    eig.eigenvalues.iter().copied().collect()
}

/// Deflated Lanczos for the low end of the spectrum of a PSD component.
/// Deterministic start vectors; full reorthogonalization.
fn lanczos_low_spectrum(mat: &SparseMat<f64>, comp: &[u32]) -> Vec<f64> {
    let n = comp.len();
    let index: HashMap<u32, usize> = comp.iter().enumerate().map(|(i, &s)| (s, i)).collect();
    let local_rows: Vec<Vec<(usize, f64)>> = comp
        .iter()
        .map(|&s| {
            mat.rows[s as usize]
                .iter()
                .filter_map(|(j, v)| index.get(&(*j as u32)).map(|&lj| (lj, *v)))
                .collect()
        })
        .collect();
    let shift = local_rows
        .iter()
        .map(|row| row.iter().map(|(_, v)| v.abs()).sum::<f64>())
        .fold(0.0, f64::max)
        + 1.0;
    // B = shift·I − H has its largest eigenvalues at H's smallest.
    let matvec = |v: &[f64], out: &mut [f64]| {
        for (i, row) in local_rows.iter().enumerate() {
            let mut acc = shift * v[i];
            for (j, h) in row {
                acc -= h * v[*j];
            }
            out[i] = acc;
        }
    };

    let mut found: Vec<Vec<f64>> = Vec::new(); // kernel vectors of H
    let mut low_evals: Vec<f64> = Vec::new();
    for round in 0..16 {
        let m = 160.min(n);
        let mut basis: Vec<Vec<f64>> = Vec::with_capacity(m);
        let mut alphas = Vec::new();
        let mut betas = Vec::new();
        // deterministic pseudo-start, orthogonal to found kernel vectors
        let mut v: Vec<f64> = (0..n)
            .map(|i| {
                let x = (i as u64)
                    .wrapping_mul(2654435761)
                    .wrapping_add(97 + round as u64 * 131071);
                ((x % 1000003) as f64) / 1000003.0 - 0.5
            })
            .collect();
        orthogonalize(&mut v, &found);
        let norm = norm2(&v).sqrt();
        if norm < 1e-12 {
            break;
        }
        scale(&mut v, 1.0 / norm);

        let mut w = vec![0.0; n];
        for _ in 0..m {
            matvec(&v, &mut w);
            orthogonalize(&mut w, &found);
            let alpha = dot(&v, &w);
            for i in 0..n {
                w[i] -= alpha * v[i];
            }
            if let Some(prev) = basis.last() {
                let beta_prev: f64 = *betas.last().unwrap();
                for i in 0..n {
                    w[i] -= beta_prev * prev[i];
                }
            }
            orthogonalize(&mut w, &basis);
            alphas.push(alpha);
            basis.push(v.clone());
            let beta = norm2(&w).sqrt();
            if beta < 1e-13 {
                break;
            }
            betas.push(beta);
            v = w.iter().map(|x| x / beta).collect();
        }
        let mm = alphas.len();
        let mut tri = nalgebra::DMatrix::<f64>::zeros(mm, mm);
        for i in 0..mm {
            tri[(i, i)] = alphas[i];
            if i + 1 < mm {
                tri[(i, i + 1)] = betas[i];
                tri[(i + 1, i)] = betas[i];
            }
        }
        let eig = nalgebra::SymmetricEigen::new(tri);
        // Largest Ritz value of B ↔ smallest of H.
        let mut order: Vec<usize> = (0..mm).collect();
        order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
        let top = order[0];
        let lam_h = shift - eig.eigenvalues[top];
        low_evals.push(lam_h);
        if lam_h < FLOAT_KERNEL_THRESHOLD {
            // deflate the converged kernel vector and look for another
            let mut kv = vec![0.0; n];
            for (bi, bvec) in basis.iter().enumerate() {
                let c = eig.eigenvectors[(bi, top)];
                for i in 0..n {
                    kv[i] += c * bvec[i];
                }
            }
            let nrm = norm2(&kv).sqrt();
            if nrm < 1e-10 {
                break;
            }
            scale(&mut kv, 1.0 / nrm);
            found.push(kv);
        } else {
            break;
        }
    }
    low_evals
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm2(a: &[f64]) -> f64 {
    dot(a, a)
}

fn scale(a: &mut [f64], s: f64) {
    for x in a {
        *x *= s;
    }
}

fn orthogonalize(v: &mut [f64], basis: &[Vec<f64>]) {
    for b in basis {
        let c = dot(v, b);
        if c != 0.0 {
            for i in 0..v.len() {
                v[i] -= c * b[i];
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ham::sparse::assemble;
    use crate::ham::terms::build_terms;
    use crate::ham::Representation;
    use crate::model::ModelSpec;

    #[test]
    fn s21_n2_exact_kernel() {
        let m = ModelSpec::s21();
        let (layout, terms) = build_terms(&m, 2, Representation::ReducedSite).unwrap();
        let ham = assemble(&layout, &terms, true, &Caps::default()).unwrap();
        let report = kernel_dimension(&ham, &Caps::default()).unwrap();
        assert_eq!(report.dim, 8);
        // {111, 121} and {222}
        assert_eq!(report.kernel_dim, 2);
    }

    #[test]
    fn s31_n4_exact_kernel_is_five() {
        let m = ModelSpec::s31_lambda0();
        let (layout, terms) = build_terms(&m, 4, Representation::ReducedSite).unwrap();
        let ham = assemble(&layout, &terms, true, &Caps::default()).unwrap();
        let report = kernel_dimension(&ham, &Caps::default()).unwrap();
        assert_eq!(report.kernel_dim, 5);
    }

    #[test]
    fn float_mode_agrees_with_exact() {
        let m = ModelSpec::s31_lambda0();
        let (layout, terms) = build_terms(&m, 5, Representation::ReducedSite).unwrap();
        let caps = Caps::default();
        let exact = kernel_dimension(&assemble(&layout, &terms, true, &caps).unwrap(), &caps)
            .unwrap();
        let float = kernel_dimension(&assemble(&layout, &terms, false, &caps).unwrap(), &caps)
            .unwrap();
        assert_eq!(exact.kernel_dim, float.kernel_dim);
        assert!(float.confidence_gap.unwrap() > FLOAT_REJECT_BAND_HI);
    }
}
