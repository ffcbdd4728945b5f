//! Block structure of a form (`M = N ⊕ P ⊕ R`), the lift `Δ ↦ Δ_M` of
//! algebra derivations, and the decompositions of `S⁽¹⁾∩S⁽²⁾`.

use std::sync::Arc;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::osp::{self, op_bracket, FormOps};
use crate::par::Execution;
use crate::parity::Parity;
use crate::solver::{nullspace_of_rows, SparseVec, Subspace, Q};
use crate::supermodule::QuadraticForm;
use crate::superring::{presets, GradedSubspace};

use super::st::StContext;
use super::{graded_is_direct, graded_is_subset, graded_sum};

/// A partition of the generators: `N` almost diagonalizable (with its
/// pairing `i ↦ i̲`), `R` with identically zero form, `P` the rest.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Blocks {
    pub n: Vec<usize>,
    pub p: Vec<usize>,
    pub r: Vec<usize>,
    /// `(i, i̲)` for each `i ∈ N`.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub pairing: Vec<(usize, usize)>,
}

fn row_support(form: &QuadraticForm, i: usize) -> Vec<usize> {
    (0..form.rank())
        .filter(|j| form.gram_entry(i, *j).iter().any(|x| !x.is_zero()))
        .collect()
}

fn invertible(form: &QuadraticForm, i: usize, j: usize) -> bool {
    let alg = form.algebra();
    alg.element(form.gram_entry(i, j).to_vec())
        .map(|a| alg.is_invertible(&a))
        .unwrap_or(false)
}

impl Blocks {
    /// Reads the blocks off the Gram matrix.
    pub fn detect(form: &QuadraticForm) -> Blocks {
        let rank = form.rank();
        let mut n = Vec::new();
        let mut r = Vec::new();
        let mut p = Vec::new();
        let mut pairing = Vec::new();
        for i in 0..rank {
            let sup = row_support(form, i);
            if sup.is_empty() {
                r.push(i);
                continue;
            }
            let paired = sup.len() == 1 && {
                let j = sup[0];
                invertible(form, i, j) && row_support(form, j) == vec![i]
            };
            if paired {
                n.push(i);
                pairing.push((i, sup[0]));
            } else {
                p.push(i);
            }
        }
        Blocks { n, p, r, pairing }
    }

    /// Validates user-given blocks and fills in the pairing.
    pub fn checked(
        form: &QuadraticForm,
        n: Vec<usize>,
        p: Vec<usize>,
        r: Vec<usize>,
    ) -> Result<Blocks> {
        let rank = form.rank();
        let mut seen = vec![false; rank];
        for i in n.iter().chain(&p).chain(&r) {
            if *i >= rank || seen[*i] {
                return Err(Error::BlockShape(format!(
                    "generator {i} is out of range or repeated"
                )));
            }
            seen[*i] = true;
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::BlockShape(
                "blocks do not cover every generator".into(),
            ));
        }
        for i in &r {
            if !row_support(form, *i).is_empty() {
                return Err(Error::BlockShape(format!(
                    "generator {i} in R pairs nontrivially"
                )));
            }
        }
        let mut pairing = Vec::new();
        for i in &n {
            let sup = row_support(form, *i);
            if sup.len() != 1 || !n.contains(&sup[0]) || !invertible(form, *i, sup[0]) {
                return Err(Error::BlockShape(format!(
                    "generator {i} breaks almost diagonalizability of N"
                )));
            }
            pairing.push((*i, sup[0]));
        }
        for i in &p {
            if row_support(form, *i).iter().any(|j| !p.contains(j)) {
                return Err(Error::BlockShape(format!(
                    "generator {i} in P is not orthogonal to N ⊕ R"
                )));
            }
        }
        Ok(Blocks { n, p, r, pairing })
    }

    pub fn partner(&self, i: usize) -> Option<usize> {
        self.pairing.iter().find(|(a, _)| *a == i).map(|(_, b)| *b)
    }

    /// Generators outside `N`.
    pub fn complement_of_n(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.p.iter().chain(&self.r).copied().collect();
        v.sort_unstable();
        v
    }

    /// Some rank-2 even summand of `N` is invertibly diagonal and there is
    /// at least one more generator.
    pub fn has_invertible_rank_two(&self, form: &QuadraticForm) -> bool {
        let module = form.module();
        let diag = self
            .pairing
            .iter()
            .filter(|(i, j)| i == j && module.generator_degree(*i) == Parity::Even)
            .count();
        diag >= 2 && form.rank() >= 3
    }
}

/// `Δ_M` for a homogeneous derivation `Δ` of `A` (flat `d×d`, entry
/// `m·d + k` the coefficient of `e_m` in `Δ(e_k)`). Requires `P = 0`.
pub fn delta_m_lift(
    form: &QuadraticForm,
    blocks: &Blocks,
    delta: &[Q],
    alpha: Parity,
) -> Result<Vec<Q>> {
    if !blocks.p.is_empty() {
        return Err(Error::BlockShape("Δ_M needs M = N ⊕ R".into()));
    }
    let module = form.module();
    let alg = module.algebra();
    let d = alg.dim();
    if delta.len() != d * d {
        return Err(Error::DimensionMismatch {
            expected: d * d,
            found: delta.len(),
        });
    }
    if !alg.is_derivation(delta, alpha) {
        return Err(Error::NotADerivation);
    }
    let n = module.dim();
    let half = presets::half();
    // c_i = ½ Δ(G_{i i̲}) G_{i i̲}⁻¹
    let mut corr: Vec<Option<Vec<Q>>> = vec![None; module.rank()];
    for (i, j) in &blocks.pairing {
        let g = alg.element(form.gram_entry(*i, *j).to_vec())?;
        let ginv = alg.invert(&g)?;
        let dg = alg.apply_operator(delta, g.coeffs());
        let c: Vec<Q> = alg
            .mul_raw(&dg, ginv.coeffs())
            .iter()
            .map(|x| half * x)
            .collect();
        corr[*i] = Some(c);
    }
    let mut out = vec![Q::zero(); n * n];
    for u in 0..n {
        let (i, k) = module.split(u);
        // b_i e_k = (-1)^{|e_k| β_i} e_k b_i
        let sign = alg.degree(k).sign(module.generator_degree(i));
        let mut a = vec![Q::zero(); d];
        a[k] = sign;
        let mut coeff = alg.apply_operator(delta, &a);
        if let Some(c) = &corr[i] {
            crate::solver::axpy(&mut coeff, Q::one(), &alg.mul_raw(c, &a));
        }
        let img = module.left_mul(&coeff, &module.generator(i));
        for (w, x) in img.into_iter().enumerate() {
            out[w * n + u] = x;
        }
    }
    Ok(out)
}

/// `(Der A)_M` as a graded subspace of `End_ℚ(M)`.
pub fn der_a_lifted(form: &QuadraticForm, blocks: &Blocks) -> Result<GradedSubspace> {
    let n2 = form.module().dim().pow(2);
    let der = form.algebra().derivations();
    let mut parts: [Vec<Vec<Q>>; 2] = [Vec::new(), Vec::new()];
    for (p, delta) in der.homogeneous_basis() {
        parts[p.index()].push(delta_m_lift(form, blocks, &delta, p)?);
    }
    let [even, odd] = parts;
    Ok(GradedSubspace::new([
        Subspace::span(n2, even),
        Subspace::span(n2, odd),
    ]))
}

/// The derivation `Δ = ad_A S` of `A` induced by `S ∈ S⁽¹⁾`, flat `d×d`.
fn ad_a(ctx: &StContext, s: &[Q], alpha: Parity) -> Option<Vec<Q>> {
    let ops = ctx.ops();
    let alg = ops.module().algebra();
    let d = alg.dim();
    let n = ops.n();
    let mut out = vec![Q::zero(); d * d];
    for k in 0..d {
        let br = op_bracket(n, s, alpha, ops.left_basis_op(k), alg.degree(k));
        let a = ctx.as_algebra_element(&br)?;
        for (m, x) in a.into_iter().enumerate() {
            out[m * d + k] = x;
        }
    }
    Some(out)
}

/// Embeds an operator on the submodule of `generators` into `End_ℚ(M)`.
fn embed_block(full: &FormOps, generators: &[usize], op: &[Q]) -> Vec<Q> {
    let module = full.module();
    let d = module.algebra().dim();
    let n = full.n();
    let nb = generators.len() * d;
    let map = |u: usize| module.index(generators[u / d], u % d);
    let mut out = vec![Q::zero(); n * n];
    for w in 0..nb {
        for u in 0..nb {
            let x = op[w * nb + u];
            if !x.is_zero() {
                out[map(w) * n + map(u)] = x;
            }
        }
    }
    out
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct NPlusPReport {
    pub s12: usize,
    pub eosp_np: usize,
    pub s_np: usize,
    /// `S⁽¹⁾∩S⁽²⁾ = eosp(q_N, q_P) + S_N^P`.
    pub equal: bool,
    pub direct: bool,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct SOrthogonalReport {
    pub s12: usize,
    pub osp: usize,
    pub der_m: usize,
    pub end_r: usize,
    /// `S⁽¹⁾∩S⁽²⁾ = osp(q) ⊕ (Der A)_M`.
    pub s12_split: bool,
    /// `osp(q) = eosp(q) ⊕ End_A R`.
    pub osp_split: bool,
    /// `[(Der A)_M, End_A R] ⊆ End_A R`.
    pub normalizes_end_r: bool,
    /// `Δ ↦ Δ_M` is an injective bracket homomorphism.
    pub lift_homomorphism: bool,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct SDecompReport {
    pub blocks: Blocks,
    pub n_plus_p: Option<NPlusPReport>,
    pub s_orthogonal: Option<SOrthogonalReport>,
}

impl SDecompReport {
    /// `None` when no decomposition applies to the block shape.
    pub fn all_pass(&self) -> Option<bool> {
        if self.n_plus_p.is_none() && self.s_orthogonal.is_none() {
            return None;
        }
        let a = self.n_plus_p.as_ref().map_or(true, |r| r.equal && r.direct);
        let b = self.s_orthogonal.as_ref().map_or(true, |r| {
            r.s12_split && r.osp_split && r.normalizes_end_r && r.lift_homomorphism
        });
        Some(a && b)
    }
}

fn restricted_s12(
    form: &QuadraticForm,
    generators: &[usize],
    exec: Execution,
) -> Result<(StContext, GradedSubspace)> {
    let sub = Arc::new(form.restrict(generators)?);
    let ops = Arc::new(FormOps::new(sub));
    let e = ops.eosp_basis();
    let ctx = StContext::new(ops, e)?;
    let s12 = ctx.s12(exec);
    Ok((ctx, s12))
}

/// `S_N^P`: pairs `S_N ⊕ S_P` from the two blocks with `ad_A S_N = ad_A S_P`.
fn s_n_p(full: &FormOps, blocks: &Blocks, exec: Execution) -> Result<GradedSubspace> {
    let rest = blocks.complement_of_n();
    let form = full.form();
    let (ctx_n, sn) = restricted_s12(form, &blocks.n, exec)?;
    let (ctx_p, sp) = restricted_s12(form, &rest, exec)?;
    let n2 = full.n() * full.n();
    let parts = Parity::ALL.map(|alpha| {
        let bn = sn.part(alpha).basis();
        let bp = sp.part(alpha).basis();
        let dn: Vec<Vec<Q>> = bn
            .iter()
            .map(|s| ad_a(&ctx_n, s, alpha).expect("S⁽¹⁾ element"))
            .collect();
        let dp: Vec<Vec<Q>> = bp
            .iter()
            .map(|s| ad_a(&ctx_p, s, alpha).expect("S⁽¹⁾ element"))
            .collect();
        let len = dn.first().or(dp.first()).map_or(0, Vec::len);
        let rows = (0..len).map(|r| {
            let mut row: SparseVec = Vec::new();
            for (c, v) in dn.iter().enumerate() {
                if !v[r].is_zero() {
                    row.push((c, v[r]));
                }
            }
            for (c, v) in dp.iter().enumerate() {
                if !v[r].is_zero() {
                    row.push((bn.len() + c, -v[r]));
                }
            }
            row
        });
        let kernel = nullspace_of_rows(bn.len() + bp.len(), rows);
        Subspace::span(
            n2,
            kernel.basis().iter().map(|c| {
                let mut out = vec![Q::zero(); n2];
                for (ci, s) in c[..bn.len()].iter().zip(bn) {
                    crate::solver::axpy(&mut out, *ci, &embed_block(full, &blocks.n, s));
                }
                for (ci, s) in c[bn.len()..].iter().zip(bp) {
                    crate::solver::axpy(&mut out, *ci, &embed_block(full, &rest, s));
                }
                out
            }),
        )
    });
    Ok(GradedSubspace::new(parts))
}

/// Checks the decompositions of `S⁽¹⁾∩S⁽²⁾` that apply to the block shape.
pub fn verify_s_decompositions(
    ops: &Arc<FormOps>,
    blocks: &Blocks,
    exec: Execution,
) -> Result<SDecompReport> {
    let ctx = StContext::new(Arc::clone(ops), ops.eosp_basis())?;
    let s12 = ctx.s12(exec);
    let form = ops.form();
    let n_plus_p = if !blocks.n.is_empty() && !blocks.complement_of_n().is_empty() {
        let eosp_np = ops.eosp_between(&blocks.n, &blocks.complement_of_n());
        let snp = s_n_p(ops, blocks, exec)?;
        Some(NPlusPReport {
            s12: s12.dim(),
            eosp_np: eosp_np.dim(),
            s_np: snp.dim(),
            equal: graded_sum(&eosp_np, &snp) == s12,
            direct: graded_is_direct(&eosp_np, &snp),
        })
    } else {
        None
    };
    let s_orthogonal = if blocks.p.is_empty() {
        let osp = ops.osp_basis(exec);
        let eosp = ops.eosp_basis();
        let der_m = der_a_lifted(form, blocks)?;
        let end_r = if blocks.r.is_empty() {
            GradedSubspace::new([
                Subspace::zero(ops.n().pow(2)),
                Subspace::zero(ops.n().pow(2)),
            ])
        } else {
            ops.end_a_block(&blocks.r)
        };
        Some(SOrthogonalReport {
            s12: s12.dim(),
            osp: osp.dim(),
            der_m: der_m.dim(),
            end_r: end_r.dim(),
            s12_split: graded_sum(&osp, &der_m) == s12 && graded_is_direct(&osp, &der_m),
            osp_split: graded_sum(&eosp, &end_r) == osp && graded_is_direct(&eosp, &end_r),
            normalizes_end_r: osp::bracket_lands_in(ops.n(), &der_m, &end_r, &end_r, exec),
            lift_homomorphism: lift_is_homomorphism(form, blocks)?
                && graded_is_subset(&der_m, &s12),
        })
    } else {
        None
    };
    Ok(SDecompReport {
        blocks: blocks.clone(),
        n_plus_p,
        s_orthogonal,
    })
}

/// `[Δ, Δ']_M = [Δ_M, Δ'_M]` on a basis of `Der A`, and `Δ ↦ Δ_M` injective.
pub fn lift_is_homomorphism(form: &QuadraticForm, blocks: &Blocks) -> Result<bool> {
    let alg = form.algebra();
    let d = alg.dim();
    let n = form.module().dim();
    let basis = alg.derivations().homogeneous_basis();
    let lifts: Vec<Vec<Q>> = basis
        .iter()
        .map(|(p, delta)| delta_m_lift(form, blocks, delta, *p))
        .collect::<Result<_>>()?;
    if Subspace::span(n * n, lifts.iter().cloned()).dim() != basis.len() {
        return Ok(false);
    }
    for (i, (p, a)) in basis.iter().enumerate() {
        for (j, (p2, b)) in basis.iter().enumerate() {
            let inner = op_bracket(d, a, *p, b, *p2);
            let lhs = delta_m_lift(form, blocks, &inner, *p + *p2)?;
            let rhs = op_bracket(n, &lifts[i], *p, &lifts[j], *p2);
            if lhs != rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Dense helper for tests and reports: `Δ_M` applied to a module vector.
pub fn apply_lift(lift: &[Q], m: &[Q]) -> Vec<Q> {
    osp::op_apply(m.len(), lift, m)
}
