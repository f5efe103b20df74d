//! Sparse symmetric operators assembled from projector terms.
//!
//! Rational mode keeps every entry exact (all projector entries are
//! rationals like ±1/2, ±1/3, 2/3); float mode is for dimensions where the
//! exact representation is too heavy and feeds the iterative eigensolver.

use std::collections::BTreeMap;
use std::io::Write;

use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::config::Caps;
use crate::error::{Error, Result};

use super::layout::BasisLayout;
use super::terms::ProjectorTerm;

pub enum SparseOperator {
    Rational(SparseMat<BigRational>),
    Float(SparseMat<f64>),
}

pub struct SparseMat<T> {
    pub dim: u64,
    /// Row-major adjacency: `rows[i]` sorted by column, both triangles kept.
    pub rows: Vec<Vec<(u64, T)>>,
}

impl SparseOperator {
    pub fn dim(&self) -> u64 {
        match self {
            SparseOperator::Rational(m) => m.dim,
            SparseOperator::Float(m) => m.dim,
        }
    }

    pub fn nnz(&self) -> usize {
        match self {
            SparseOperator::Rational(m) => m.rows.iter().map(Vec::len).sum(),
            SparseOperator::Float(m) => m.rows.iter().map(Vec::len).sum(),
        }
    }

    /// Coordinate-format text: `row col value` per line, upper triangle,
    /// rationals as `num/den`.
    pub fn export_coo<W: Write>(&self, out: &mut W) -> Result<()> {
        match self {
            SparseOperator::Rational(m) => {
                for (i, row) in m.rows.iter().enumerate() {
                    for (j, v) in row {
                        if *j >= i as u64 {
                            writeln!(out, "{} {} {}/{}", i, j, v.numer(), v.denom())?;
                        }
                    }
                }
            }
            SparseOperator::Float(m) => {
                for (i, row) in m.rows.iter().enumerate() {
                    for (j, v) in row {
                        if *j >= i as u64 {
                            writeln!(out, "{} {} {:.17e}", i, j, v)?;
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// A Hamiltonian with its generating rows kept alongside the realized
/// matrix, so exact kernel ranks can work on the (much sparser) rows.
pub struct AssembledHam {
    pub layout: BasisLayout,
    pub terms: Vec<ProjectorTerm>,
    pub op: SparseOperator,
}

/// Assembles `H = Σ_t w_t Σ_rows |g⟩⟨g|/‖g‖²` over the full basis.
pub fn assemble(
    layout: &BasisLayout,
    terms: &[ProjectorTerm],
    rational: bool,
    caps: &Caps,
) -> Result<AssembledHam> {
    let dim = layout.dim;
    let budget = if rational { caps.exact_kernel_dim } else { caps.operator_dim };
    if dim as u128 > budget {
        return Err(Error::BudgetExceeded { required: dim as u128, budget });
    }
    let op = if rational {
        SparseOperator::Rational(assemble_mat(layout, terms, |r| r.clone()))
    } else {
        SparseOperator::Float(assemble_mat(layout, terms, |r| r.to_f64().unwrap()))
    };
    Ok(AssembledHam { layout: layout.clone(), terms: terms.to_vec(), op })
}

fn assemble_mat<T, F>(layout: &BasisLayout, terms: &[ProjectorTerm], conv: F) -> SparseMat<T>
where
    T: Clone + std::ops::AddAssign + Zero,
    F: Fn(&BigRational) -> T,
{
    let dim = layout.dim as usize;
    let mut rows: Vec<BTreeMap<u64, T>> = vec![BTreeMap::new(); dim];
    for term in terms {
        for grow in &term.rows {
            let norm2 = grow.norm2();
            for state in 0..layout.dim {
                let w = layout.window_values(state, &term.support);
                let Some((_, cj)) = grow.components.iter().find(|(p, _)| *p == w) else {
                    continue;
                };
                for (pl, cl) in &grow.components {
                    let target = layout.with_slots(state, &term.support, pl);
                    let val = &term.weight * cj * cl / &norm2;
                    *rows[state as usize]
                        .entry(target)
                        .or_insert_with(T::zero) += conv(&val);
                }
            }
        }
    }
    SparseMat {
        dim: layout.dim,
        rows: rows
            .into_iter()
            .map(|m| m.into_iter().filter(|(_, v)| !v.is_zero()).collect())
            .collect(),
    }
}

impl SparseMat<BigRational> {
    /// Exact `H·v` for a sparse rational vector.
    pub fn apply_sparse(&self, v: &BTreeMap<u64, BigRational>) -> BTreeMap<u64, BigRational> {
        let mut out: BTreeMap<u64, BigRational> = BTreeMap::new();
        for (&i, amp) in v {
            for (j, h) in &self.rows[i as usize] {
                let e = out.entry(*j).or_insert_with(BigRational::zero);
                *e += h * amp;
            }
        }
        out.retain(|_, v| !v.is_zero());
        out
    }

    pub fn is_symmetric(&self) -> bool {
        for (i, row) in self.rows.iter().enumerate() {
            for (j, v) in row {
                let back = self.rows[*j as usize]
                    .iter()
                    .find(|(jj, _)| *jj == i as u64)
                    .map(|(_, vv)| vv);
                if back != Some(v) {
                    return false;
                }
            }
        }
        true
    }
}

impl SparseMat<f64> {
    pub fn matvec(&self, v: &[f64], out: &mut [f64]) {
        out.fill(0.0);
        for (i, row) in self.rows.iter().enumerate() {
            let mut acc = 0.0;
            for (j, h) in row {
                acc += h * v[*j as usize];
            }
            out[i] = acc;
        }
    }

    /// Row-sum bound on the spectral radius.
    pub fn gershgorin_bound(&self) -> f64 {
        self.rows
            .iter()
            .map(|row| row.iter().map(|(_, v)| v.abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }
}

/// Realizes a term's window operator as a dense rational matrix over the
/// window's local space (for idempotence checks and debugging).
pub fn realize_window(layout: &BasisLayout, term: &ProjectorTerm) -> Vec<Vec<BigRational>> {
    let radices: Vec<u64> = term.support.iter().map(|&s| layout.radix[s] as u64).collect();
    let dim: u64 = radices.iter().product();
    let encode = |vals: &[u8]| -> u64 {
        let mut acc = 0u64;
        let mut stride = 1u64;
        for (v, r) in vals.iter().zip(&radices) {
            acc += *v as u64 * stride;
            stride *= r;
        }
        acc
    };
    let mut mat = vec![vec![BigRational::zero(); dim as usize]; dim as usize];
    for grow in &term.rows {
        let norm2 = grow.norm2();
        for (pj, cj) in &grow.components {
            for (pl, cl) in &grow.components {
                mat[encode(pj) as usize][encode(pl) as usize] += cj * cl / &norm2;
            }
        }
    }
    mat
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ham::terms::build_terms;
    use crate::ham::Representation;
    use crate::model::ModelSpec;
    use num_rational::BigRational;

    fn mat_mul(a: &[Vec<BigRational>], b: &[Vec<BigRational>]) -> Vec<Vec<BigRational>> {
        let n = a.len();
        let mut out = vec![vec![BigRational::zero(); n]; n];
        for i in 0..n {
            for l in 0..n {
                if a[i][l].is_zero() {
                    continue;
                }
                for j in 0..n {
                    if !b[l][j].is_zero() {
                        let add = &a[i][l] * &b[l][j];
                        out[i][j] += add;
                    }
                }
            }
        }
        out
    }

    /// Every unweighted term block is an exact projector: P² = P.
    #[test]
    fn window_blocks_are_projectors() {
        let models = [
            ModelSpec::s21(),
            ModelSpec::s31_lambda0(),
            ModelSpec::s31_lambda_pos(BigRational::from_integer(1.into())).unwrap(),
            ModelSpec::s32_case1(),
            ModelSpec::s32_case2(BigRational::from_integer(1.into())).unwrap(),
        ];
        for m in models {
            for rep in [Representation::ReducedSite, Representation::Link] {
                let (layout, terms) = build_terms(&m, 5, rep).unwrap();
                for t in &terms {
                    let p = realize_window(&layout, t);
                    assert_eq!(mat_mul(&p, &p), p, "term {} of {m} not idempotent", t.label);
                }
            }
        }
    }

    #[test]
    fn assembled_matrix_is_symmetric_rational() {
        let m = ModelSpec::s31_lambda0();
        let (layout, terms) = build_terms(&m, 3, Representation::ReducedSite).unwrap();
        let ham = assemble(&layout, &terms, true, &Caps::default()).unwrap();
        match &ham.op {
            SparseOperator::Rational(mat) => assert!(mat.is_symmetric()),
            _ => unreachable!(),
        }
    }
}
