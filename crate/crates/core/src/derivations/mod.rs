//! Derivations of `L = E_∞`.
//!
//! A homogeneous derivation of degree `α` is stored as a flat `n×n`
//! operator on the ambient basis of `L` (entry `w·n + t` is the coefficient
//! of `e_w` in `d(e_t)`), the same layout as [`EInfty::ad`].

pub mod decomp;
pub mod st;
pub mod theorem;

use num_traits::Zero;
use serde::Serialize;

use crate::einfty::{EInfty, Grade};
use crate::par::{self, Execution};
use crate::parity::Parity;
use crate::solver::{nullspace_of_rows_with, to_dense, SparseVec, Subspace, Q};
use crate::superring::{compact_sparse, GradedSubspace};

/// Vectors of `space` annihilated by the linear map `f`.
pub fn kernel_within<F>(space: &Subspace, exec: Execution, f: F) -> Subspace
where
    F: Fn(&[Q]) -> Vec<Q> + Sync + Send,
{
    let images = par::map(exec, space.basis(), |v| f(v));
    let k = space.dim();
    let out_len = images.first().map_or(0, Vec::len);
    let rows: Vec<SparseVec> = (0..out_len)
        .map(|r| {
            images
                .iter()
                .enumerate()
                .filter(|(_, img)| !img[r].is_zero())
                .map(|(c, img)| (c, img[r]))
                .collect::<SparseVec>()
        })
        .filter(|r| !r.is_empty())
        .collect();
    let kernel = nullspace_of_rows_with(exec, k, &rows);
    Subspace::span(
        space.ambient(),
        kernel.basis().iter().map(|c| space.combine(c)),
    )
}

pub fn graded_kernel_within<F>(space: &GradedSubspace, exec: Execution, f: F) -> GradedSubspace
where
    F: Fn(&[Q]) -> Vec<Q> + Sync + Send,
{
    GradedSubspace::new(Parity::ALL.map(|p| kernel_within(space.part(p), exec, &f)))
}

pub fn graded_sum(a: &GradedSubspace, b: &GradedSubspace) -> GradedSubspace {
    GradedSubspace::new(Parity::ALL.map(|p| a.part(p).sum(b.part(p)).expect("same ambient")))
}

pub fn graded_intersection(a: &GradedSubspace, b: &GradedSubspace) -> GradedSubspace {
    GradedSubspace::new(
        Parity::ALL.map(|p| a.part(p).intersection(b.part(p)).expect("same ambient")),
    )
}

pub fn graded_is_subset(a: &GradedSubspace, b: &GradedSubspace) -> bool {
    Parity::ALL
        .iter()
        .all(|p| a.part(*p).is_subset_of(b.part(*p)).expect("same ambient"))
}

pub fn graded_is_direct(a: &GradedSubspace, b: &GradedSubspace) -> bool {
    graded_sum(a, b).dim() == a.dim() + b.dim()
}

/// Unknown layout for degree-`α` operators on a graded basis: only entries
/// `(w, t)` with `p(w) = p(t) + α` are free.
pub(crate) struct OpUnknowns {
    n: usize,
    slots: Vec<usize>,
    index: Vec<Option<usize>>,
}

impl OpUnknowns {
    pub(crate) fn new(parities: &[Parity], alpha: Parity) -> Self {
        let n = parities.len();
        let mut slots = Vec::new();
        let mut index = vec![None; n * n];
        for w in 0..n {
            for t in 0..n {
                if parities[w] == parities[t] + alpha {
                    index[w * n + t] = Some(slots.len());
                    slots.push(w * n + t);
                }
            }
        }
        OpUnknowns { n, slots, index }
    }

    pub(crate) fn len(&self) -> usize {
        self.slots.len()
    }

    pub(crate) fn slot(&self, j: usize) -> usize {
        self.slots[j]
    }

    pub(crate) fn get(&self, w: usize, t: usize) -> Option<usize> {
        self.index[w * self.n + t]
    }

    pub(crate) fn expand(&self, coords: &[Q]) -> Vec<Q> {
        let mut out = vec![Q::zero(); self.n * self.n];
        for (j, c) in coords.iter().enumerate() {
            out[self.slots[j]] = *c;
        }
        out
    }

    pub(crate) fn expand_space(&self, kernel: &Subspace) -> Subspace {
        Subspace::span(
            self.n * self.n,
            kernel.basis().iter().map(|c| self.expand(c)),
        )
    }
}

fn leibniz_rows(l: &EInfty, unk: &OpUnknowns, alpha: Parity, u: usize, v: usize) -> Vec<SparseVec> {
    let n = l.dim();
    let mut rows: Vec<SparseVec> = vec![Vec::new(); n];
    // d([u,v])_w = Σ_t c_{uv}^t d[w][t]
    for (t, c) in l.bracket_basis(u, v) {
        for (w, row) in rows.iter_mut().enumerate() {
            if let Some(j) = unk.get(w, *t) {
                row.push((j, *c));
            }
        }
    }
    // - [d(u), v]_w = - Σ_t d[t][u] c_{tv}^w
    for t in 0..n {
        if let Some(j) = unk.get(t, u) {
            for (w, c) in l.bracket_basis(t, v) {
                rows[*w].push((j, -*c));
            }
        }
    }
    // - (-1)^{α|u|} [u, d(v)]_w
    let s = alpha.sign(l.parity(u));
    for t in 0..n {
        if let Some(j) = unk.get(t, v) {
            for (w, c) in l.bracket_basis(u, t) {
                rows[*w].push((j, -(s * c)));
            }
        }
    }
    rows.into_iter()
        .map(compact_sparse)
        .filter(|r| !r.is_empty())
        .collect()
}

/// `Der_ℚ L` per degree, as the nullspace of the graded Leibniz rule on
/// basis pairs `u ≤ v` (pairs `v < u` follow by antisymmetry).
pub fn der_space(l: &EInfty, exec: Execution) -> GradedSubspace {
    let n = l.dim();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u..n).map(move |v| (u, v))).collect();
    GradedSubspace::new(Parity::ALL.map(|alpha| {
        let unk = OpUnknowns::new(l.parities(), alpha);
        let rows: Vec<SparseVec> =
            par::map(exec, &pairs, |&(u, v)| leibniz_rows(l, &unk, alpha, u, v))
                .into_iter()
                .flatten()
                .collect();
        unk.expand_space(&nullspace_of_rows_with(exec, unk.len(), &rows))
    }))
}

/// Checks the Leibniz rule for a homogeneous operator on every basis pair.
pub fn is_derivation(l: &EInfty, d: &[Q], alpha: Parity) -> bool {
    let n = l.dim();
    let col = |t: usize| -> SparseVec {
        (0..n)
            .filter(|w| !d[w * n + t].is_zero())
            .map(|w| (w, d[w * n + t]))
            .collect()
    };
    let apply = |v: &SparseVec| -> SparseVec {
        let mut out = Vec::new();
        for (t, c) in v {
            for (w, x) in col(*t) {
                out.push((w, c * x));
            }
        }
        compact_sparse(out)
    };
    (0..n).all(|u| {
        (0..n).all(|v| {
            let lhs = apply(l.bracket_basis(u, v));
            let s = alpha.sign(l.parity(u));
            let mut rhs = Vec::new();
            for (t, c) in col(u) {
                for (w, x) in l.bracket_basis(t, v) {
                    rhs.push((*w, c * x));
                }
            }
            for (t, c) in col(v) {
                for (w, x) in l.bracket_basis(u, t) {
                    rhs.push((*w, s * c * x));
                }
            }
            lhs == compact_sparse(rhs)
        })
    })
}

/// `ad L`, graded by the degree of the generating basis vector.
pub fn ad_space(l: &EInfty) -> GradedSubspace {
    ad_of_indices(l, 0..l.dim())
}

/// `ad L_0`.
pub fn ad_l0(l: &EInfty) -> GradedSubspace {
    ad_of_indices(l, l.grade_indices(Grade::Zero))
}

fn ad_of_indices(l: &EInfty, idx: impl IntoIterator<Item = usize>) -> GradedSubspace {
    let mut parts: [Vec<Vec<Q>>; 2] = [Vec::new(), Vec::new()];
    for u in idx {
        parts[l.parity(u).index()].push(l.ad(u));
    }
    let n2 = l.dim() * l.dim();
    let [even, odd] = parts;
    GradedSubspace::new([Subspace::span(n2, even), Subspace::span(n2, odd)])
}

/// Column `t` of a flat operator.
pub(crate) fn column(n: usize, d: &[Q], t: usize) -> Vec<Q> {
    (0..n).map(|w| d[w * n + t]).collect()
}

/// `(Der L)_0` computed as the derivations preserving the 3-grading.
pub fn der0_by_grading(l: &EInfty, der: &GradedSubspace, exec: Execution) -> GradedSubspace {
    let n = l.dim();
    let off: Vec<usize> = (0..n * n)
        .filter(|idx| l.grade(idx / n) != l.grade(idx % n))
        .collect();
    graded_kernel_within(der, exec, |d| off.iter().map(|i| d[*i]).collect())
}

/// `(Der L)_0` computed as `{d : d(1) ∈ Z(L)}`.
pub fn der0_by_toral(l: &EInfty, der: &GradedSubspace, exec: Execution) -> GradedSubspace {
    let n = l.dim();
    let one = l.module().algebra().unit_index();
    let functionals = l.centre().membership_functionals();
    graded_kernel_within(der, exec, |d| {
        let img = column(n, d, one);
        functionals
            .iter()
            .map(|f| f.iter().map(|(i, c)| c * img[*i]).sum())
            .collect()
    })
}

/// `[d, ad(e_u)] ∈ ad L` for every basis `d` of `der` and every `u`.
pub fn ad_is_ideal(l: &EInfty, der: &GradedSubspace, ad: &GradedSubspace, exec: Execution) -> bool {
    let n = l.dim();
    let ad_total = ad.total();
    let basis = der.homogeneous_basis();
    par::find_first(exec, basis.len(), |i| {
        let (alpha, d) = &basis[i];
        let cols: Vec<Vec<Q>> = (0..n).map(|t| column(n, d, t)).collect();
        (0..n)
            .any(|u| {
                // [d, ad u](v) = d([u,v]) - (-1)^{α|u|} [u, d(v)]
                let s = alpha.sign(l.parity(u));
                let mut out = vec![Q::zero(); n * n];
                for v in 0..n {
                    let mut img = vec![Q::zero(); n];
                    for (t, c) in l.bracket_basis(u, v) {
                        crate::solver::axpy(&mut img, *c, &cols[*t]);
                    }
                    for (t, c) in cols[v].iter().enumerate() {
                        if c.is_zero() {
                            continue;
                        }
                        for (w, x) in l.bracket_basis(u, t) {
                            img[*w] -= s * c * x;
                        }
                    }
                    for (w, x) in img.into_iter().enumerate() {
                        out[w * n + v] = x;
                    }
                }
                !ad_total.contains(&out)
            })
            .then_some(())
    })
    .is_none()
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ToralReport {
    pub der: usize,
    pub ad: usize,
    pub der0: usize,
    pub ad_l0: usize,
    /// `Der = ad + (Der)_0`.
    pub sum: bool,
    /// Both descriptions of `(Der)_0` agree.
    pub der0_routes_agree: bool,
    /// `ad ∩ {d : d(1) = 0} = ad L_0`.
    pub ad_fixing_one: bool,
}

impl ToralReport {
    pub fn all_pass(&self) -> bool {
        self.sum && self.der0_routes_agree && self.ad_fixing_one
    }
}

pub fn check_toral_decomposition(
    l: &EInfty,
    der: &GradedSubspace,
    ad: &GradedSubspace,
    exec: Execution,
) -> (ToralReport, GradedSubspace) {
    let n = l.dim();
    let der0 = der0_by_grading(l, der, exec);
    let der0_t = der0_by_toral(l, der, exec);
    let adl0 = ad_l0(l);
    let one = l.module().algebra().unit_index();
    let ad_fix = graded_kernel_within(ad, exec, |d| column(n, d, one));
    let report = ToralReport {
        der: der.dim(),
        ad: ad.dim(),
        der0: der0.dim(),
        ad_l0: adl0.dim(),
        sum: graded_sum(ad, &der0) == *der,
        der0_routes_agree: der0 == der0_t,
        ad_fixing_one: ad_fix == adl0,
    };
    (report, der0)
}

/// Applies a flat operator on `L` to a vector.
pub fn apply_op(n: usize, d: &[Q], v: &[Q]) -> Vec<Q> {
    crate::osp::op_apply(n, d, v)
}

/// Dense column of the bracket table, for callers outside this module.
pub fn bracket_dense(l: &EInfty, u: usize, v: usize) -> Vec<Q> {
    to_dense(l.bracket_basis(u, v), l.dim())
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::einfty::EChoice;
    use crate::solver::q;
    use crate::supermodule::QuadraticForm;
    use crate::superring::presets;

    fn build(alg: crate::superring::SuperAlgebraTable, entries: &[i128]) -> EInfty {
        let e: Vec<Q> = entries.iter().map(|x| q(*x)).collect();
        let f = Arc::new(QuadraticForm::diagonal(Arc::new(alg), &e).unwrap());
        EInfty::build(f, EChoice::Eosp, Execution::best()).unwrap()
    }

    #[test]
    fn so3_has_only_inner_derivations() {
        let l = build(presets::rationals(), &[1]);
        let der = der_space(&l, Execution::best());
        let ad = ad_space(&l);
        assert_eq!(der.dim(), 3);
        assert_eq!(der, ad);
    }

    #[test]
    fn so5_toral_decomposition() {
        let l = build(presets::rationals(), &[1, 1, 1]);
        let exec = Execution::best();
        let der = der_space(&l, exec);
        let ad = ad_space(&l);
        assert_eq!(der.dim(), 10);
        assert_eq!(der, ad);
        let (rep, der0) = check_toral_decomposition(&l, &der, &ad, exec);
        assert!(rep.all_pass(), "{rep:?}");
        assert_eq!(der0.dim(), 4);
        assert_eq!(der0, ad_l0(&l));
    }

    #[test]
    fn dual_numbers_add_one_outer_derivation() {
        let l = build(presets::dual_numbers(), &[1, 1, 1]);
        let exec = Execution::best();
        let der = der_space(&l, exec);
        let ad = ad_space(&l);
        assert_eq!(l.dim(), 20);
        assert_eq!(der.dim(), ad.dim() + 1);
        assert!(graded_is_subset(&ad, &der));
        assert!(ad_is_ideal(&l, &der, &ad, exec));
        let (rep, _) = check_toral_decomposition(&l, &der, &ad, exec);
        assert!(rep.all_pass(), "{rep:?}");
        for (p, d) in der.homogeneous_basis() {
            assert!(is_derivation(&l, &d, p));
        }
    }

    #[test]
    fn zero_operator_is_a_derivation() {
        let l = build(presets::rationals(), &[1, 1]);
        let n = l.dim();
        assert!(is_derivation(&l, &vec![Q::zero(); n * n], Parity::Even));
        assert!(is_derivation(&l, &vec![Q::zero(); n * n], Parity::Odd));
    }

    #[test]
    fn sequential_and_parallel_agree() {
        let l = build(presets::dual_numbers(), &[1, 1]);
        assert_eq!(
            der_space(&l, Execution::Sequential),
            der_space(&l, Execution::best())
        );
    }
}
