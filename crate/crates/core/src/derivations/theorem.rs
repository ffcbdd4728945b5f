//! The full derivation pipeline for one `E_∞` instance and the structure
//! theorem checks.

use serde::Serialize;

use crate::einfty::{EChoice, EInfty, EInftyReport};
use crate::error::Result;
use crate::osp::op_bracket;
use crate::par::{self, Execution};
use crate::parity::Parity;
use crate::solver::{Subspace, Q};
use crate::superring::GradedSubspace;

use super::decomp::{der_a_lifted, verify_s_decompositions, Blocks, SDecompReport};
use super::st::{
    check_st_properties, d_from_st, d_of_e_and_aid, dm_space, st_bracket, StContext, StPair,
    StPropertyReport, StSpaces,
};
use super::{
    ad_is_ideal, ad_l0, ad_space, check_toral_decomposition, der_space, graded_intersection,
    graded_is_direct, graded_sum, ToralReport,
};

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct DerivationDims {
    pub der: usize,
    pub ad: usize,
    pub der0: usize,
    #[serde(rename = "S")]
    pub s: usize,
    #[serde(rename = "S1")]
    pub s1: usize,
    #[serde(rename = "S2")]
    pub s2: usize,
    #[serde(rename = "S3")]
    pub s3: usize,
    #[serde(rename = "T")]
    pub t: usize,
    #[serde(rename = "T1")]
    pub t1: usize,
    #[serde(rename = "T2")]
    pub t2: usize,
    #[serde(rename = "T3")]
    pub t3: usize,
    #[serde(rename = "DM")]
    pub dm: usize,
    pub outer: usize,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct MainChecks {
    pub main1: bool,
    pub main2: bool,
    pub main3: bool,
    pub main4_split: bool,
    pub toral: bool,
    #[serde(rename = "t_is_AId")]
    pub t_is_aid: bool,
    /// `None` when no decomposition applies to the block shape.
    pub s_decomp: Option<bool>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Splitting {
    pub inner_ideal: bool,
    pub complement_subalgebra: bool,
}

/// Everything the `derive` command reports.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct DerivationReport {
    pub einfty: EInftyReport,
    pub dims: DerivationDims,
    pub checks: MainChecks,
    pub splitting: Splitting,
    /// `T = A·Id` is forced by the block shape.
    pub t_is_aid_expected: bool,
    pub details: Details,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Details {
    pub toral: ToralReport,
    pub st_properties: StPropertyReport,
    pub dm_injective: bool,
    pub st_homomorphism: bool,
    pub s_decompositions: Option<SDecompReport>,
}

impl DerivationReport {
    pub fn all_pass(&self) -> bool {
        let c = &self.checks;
        self.einfty.all_pass()
            && c.main1
            && c.main2
            && c.main3
            && c.main4_split
            && c.toral
            && (c.t_is_aid || !self.t_is_aid_expected)
            && c.s_decomp != Some(false)
            && self.details.st_properties.all_pass()
    }
}

/// All derivation-side spaces of an instance.
pub struct DerivationSpaces {
    pub der: GradedSubspace,
    pub ad: GradedSubspace,
    pub der0: GradedSubspace,
    pub st: StSpaces,
    pub dm: GradedSubspace,
}

fn span_parts(n2: usize, items: impl IntoIterator<Item = (Parity, Vec<Q>)>) -> GradedSubspace {
    crate::osp::graded_span(n2, items)
}

/// `S₀` and `T₀` with `S = E ⊕ S₀`, `T = A·Id ⊕ T₀`, preferring
/// `End_A R` and `(Der A)_M` for `S₀` when the blocks allow it.
fn complements(
    l: &EInfty,
    ctx: &StContext,
    st: &StSpaces,
    blocks: &Blocks,
) -> (Vec<StPair>, Vec<StPair>) {
    let ops = ctx.ops();
    let mut preferred: Vec<(Parity, Vec<Q>)> = Vec::new();
    if !blocks.r.is_empty() {
        preferred.extend(ops.end_a_block(&blocks.r).homogeneous_basis());
    }
    if blocks.p.is_empty() {
        if let Ok(lifted) = der_a_lifted(l.form(), blocks) {
            preferred.extend(lifted.homogeneous_basis());
        }
    }
    let mut s0 = Vec::new();
    let mut t0 = Vec::new();
    for p in Parity::ALL {
        let s_part = st.s.part(p);
        let cands: Vec<Vec<Q>> = preferred
            .iter()
            .filter(|(q, v)| *q == p && s_part.contains(v))
            .map(|(_, v)| v.clone())
            .chain(s_part.basis().iter().cloned())
            .collect();
        s0.extend(
            ctx.e()
                .part(p)
                .greedy_complement(&cands)
                .into_iter()
                .map(|v| StPair::s_only(p, v)),
        );
        let aid = ops.a_id();
        t0.extend(
            aid.part(p)
                .greedy_complement(st.t.part(p).basis())
                .into_iter()
                .map(|v| StPair::t_only(p, v)),
        );
    }
    (s0, t0)
}

fn closed_under_st_bracket(n: usize, gens: &[StPair]) -> bool {
    let len = gens.first().map_or(0, |p| p.as_vector().len());
    let span = Subspace::span(len, gens.iter().map(StPair::as_vector));
    gens.iter().all(|a| {
        gens.iter()
            .all(|b| span.contains(&st_bracket(n, a, b).as_vector()))
    })
}

fn is_subalgebra(n: usize, space: &GradedSubspace, exec: Execution) -> bool {
    crate::osp::bracket_lands_in(n, space, space, space, exec)
}

/// `φ(p ∘ p') = [φ(p), φ(p')]` on generators of `S ⊕ T`.
fn st_homomorphism(l: &EInfty, ctx: &StContext, gens: &[StPair], exec: Execution) -> Result<bool> {
    let n = l.dim();
    let nm = l.module_dim();
    let images: Vec<Vec<Q>> = par::map(exec, gens, |p| d_from_st(l, ctx, p))
        .into_iter()
        .collect::<Result<_>>()?;
    let bad = par::find_first(exec, gens.len(), |i| {
        (0..gens.len()).find_map(|j| {
            let lhs = d_from_st(l, ctx, &st_bracket(nm, &gens[i], &gens[j]));
            let rhs = op_bracket(n, &images[i], gens[i].parity, &images[j], gens[j].parity);
            match lhs {
                Ok(v) if v == rhs => None,
                _ => Some(()),
            }
        })
    });
    Ok(bad.is_none())
}

impl DerivationSpaces {
    pub fn dims(&self) -> DerivationDims {
        let st = &self.st;
        DerivationDims {
            der: self.der.dim(),
            ad: self.ad.dim(),
            der0: self.der0.dim(),
            s: st.s.dim(),
            s1: st.s1.dim(),
            s2: st.s2.dim(),
            s3: st.s3.dim(),
            t: st.t.dim(),
            t1: st.t1.dim(),
            t2: st.t2.dim(),
            t3: st.t3.dim(),
            dm: self.dm.dim(),
            outer: self.der.dim() - self.ad.dim(),
        }
    }
}

pub fn compute_spaces(l: &EInfty, ctx: &StContext, exec: Execution) -> Result<DerivationSpaces> {
    let der = der_space(l, exec);
    let ad = ad_space(l);
    let (_, der0) = check_toral_decomposition(l, &der, &ad, exec);
    let st = ctx.spaces(exec);
    let dm = dm_space(l, ctx, &st, exec)?;
    Ok(DerivationSpaces {
        der,
        ad,
        der0,
        st,
        dm,
    })
}

/// Runs the whole pipeline and checks the structure theorems.
pub fn verify_main_theorem(
    l: &EInfty,
    blocks: Option<Blocks>,
    seed: u64,
    exec: Execution,
) -> Result<DerivationReport> {
    let einfty = l.report(exec);
    let blocks = blocks.unwrap_or_else(|| Blocks::detect(l.form()));
    let ctx = StContext::from_einfty(l)?;
    let n = l.dim();
    let nm = l.module_dim();
    let der = der_space(l, exec);
    let ad = ad_space(l);
    let (toral, der0) = check_toral_decomposition(l, &der, &ad, exec);
    let st = ctx.spaces(exec);
    let dm = dm_space(l, &ctx, &st, exec)?;

    let gens = super::st::st_generators(&st);
    let dm_injective = dm.dim() == st.s.dim() + st.t.dim();
    let st_hom = st_homomorphism(l, &ctx, &gens, exec)?;
    let main1 = dm == der0 && dm_injective && st_hom;
    let main2 = graded_sum(&ad, &dm) == der;
    let inner = d_of_e_and_aid(l, &ctx)?;
    let main3 = graded_intersection(&ad, &dm) == inner && inner == ad_l0(l);

    let (s0, t0) = complements(l, &ctx, &st, &blocks);
    let mut comp_gens = s0.clone();
    comp_gens.extend(t0.iter().cloned());
    let complement_subalgebra = comp_gens.is_empty() || closed_under_st_bracket(nm, &comp_gens);
    let d0_items: Vec<(Parity, Vec<Q>)> = comp_gens
        .iter()
        .map(|p| d_from_st(l, &ctx, p).map(|d| (p.parity, d)))
        .collect::<Result<_>>()?;
    let d0 = span_parts(n * n, d0_items);
    let inner_ideal = ad_is_ideal(l, &der, &ad, exec);
    let main4_split = complement_subalgebra
        && graded_sum(&ad, &d0) == der
        && graded_is_direct(&ad, &d0)
        && is_subalgebra(n, &d0, exec)
        && inner_ideal;

    let a_id = ctx.ops().a_id();
    let t_is_aid = st.t == a_id;
    let t_is_aid_expected = blocks.has_invertible_rank_two(l.form());
    let s_decompositions = if matches!(l.choice(), EChoice::Eosp | EChoice::Osp) {
        Some(verify_s_decompositions(ctx.ops(), &blocks, exec)?)
    } else {
        None
    };
    let s_decomp = s_decompositions.as_ref().and_then(SDecompReport::all_pass);
    let st_properties = check_st_properties(&ctx, &st, 8, seed);
    let dims = DerivationSpaces {
        der,
        ad,
        der0,
        st,
        dm,
    }
    .dims();

    Ok(DerivationReport {
        einfty,
        dims,
        checks: MainChecks {
            main1,
            main2,
            main3,
            main4_split,
            toral: toral.all_pass(),
            t_is_aid,
            s_decomp,
        },
        splitting: Splitting {
            inner_ideal,
            complement_subalgebra,
        },
        t_is_aid_expected,
        details: Details {
            toral,
            st_properties,
            dm_injective,
            st_homomorphism: st_hom,
            s_decompositions,
        },
    })
}
