//! The condition spaces `S = S⁽¹⁾∩S⁽²⁾∩S⁽³⁾` and `T = T⁽¹⁾∩T⁽²⁾∩T⁽³⁾`
//! inside `End_ℚ(M)`, the derivations `d_{S,T}` and the space `D_M`.

use std::sync::Arc;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::einfty::{Components, EInfty};
use crate::error::{Error, Result};
use crate::osp::{op_apply, op_bracket, FormOps};
use crate::par::{self, Execution};
use crate::parity::Parity;
use crate::solver::{nullspace_of_rows_with, FixedBasis, SparseVec, Subspace, Q};
use crate::superring::GradedSubspace;

use super::OpUnknowns;

/// A linear condition on a homogeneous operator, returning a vector that
/// vanishes exactly when the condition holds.
type Condition<'a> = Box<dyn Fn(&[Q], Parity) -> Vec<Q> + Sync + Send + 'a>;

/// Shared data for the (S)/(T) conditions of one pair `(q, E)`.
pub struct StContext {
    ops: Arc<FormOps>,
    e: GradedSubspace,
    e_basis: Vec<(Parity, Vec<Q>)>,
    e_functionals: Vec<SparseVec>,
    a_id_functionals: Vec<SparseVec>,
    // `q(u,v)` for pairs u ≤ v, with its degree and `q(u,v)·Id`
    pairs: Vec<(usize, usize, Parity, Vec<Q>)>,
    a_basis: FixedBasis,
}

fn apply_functionals(fs: &[SparseVec], v: &[Q]) -> Vec<Q> {
    fs.iter()
        .map(|f| f.iter().map(|(i, c)| c * v[*i]).sum())
        .collect()
}

impl StContext {
    pub fn new(ops: Arc<FormOps>, e: GradedSubspace) -> Result<Self> {
        let n = ops.n();
        let module = ops.module();
        let alg = module.algebra();
        let d = alg.dim();
        let e_total = e.total();
        let mut pairs = Vec::new();
        for u in 0..n {
            for v in u..n {
                let a = crate::solver::to_dense(ops.form().eval_basis(u, v), d);
                pairs.push((u, v, module.degree(u) + module.degree(v), ops.left_op(&a)));
            }
        }
        let a_vectors: Vec<Vec<Q>> = (0..d).map(|k| ops.left_basis_op(k).to_vec()).collect();
        let a_basis = FixedBasis::new(n * n, a_vectors)
            .map_err(|_| Error::InvalidPair("A acts unfaithfully on M".into()))?;
        Ok(StContext {
            e_basis: e.homogeneous_basis(),
            e_functionals: e_total.membership_functionals(),
            a_id_functionals: ops.a_id().total().membership_functionals(),
            ops,
            e,
            pairs,
            a_basis,
        })
    }

    pub fn from_einfty(l: &EInfty) -> Result<Self> {
        Self::new(Arc::clone(l.ops()), l.e_space().clone())
    }

    pub fn ops(&self) -> &Arc<FormOps> {
        &self.ops
    }

    pub fn e(&self) -> &GradedSubspace {
        &self.e
    }

    fn n(&self) -> usize {
        self.ops.n()
    }

    fn algebra_degree(&self, k: usize) -> Parity {
        self.ops.module().algebra().degree(k)
    }

    /// `a` with `a·Id = op`, if `op ∈ A·Id`.
    pub fn as_algebra_element(&self, op: &[Q]) -> Option<Vec<Q>> {
        self.a_basis.coordinates(op)
    }

    fn s1(&self) -> Condition<'_> {
        Box::new(move |s, alpha| {
            let n = self.n();
            (0..self.ops.algebra_dim())
                .flat_map(|k| {
                    let br = op_bracket(
                        n,
                        s,
                        alpha,
                        self.ops.left_basis_op(k),
                        self.algebra_degree(k),
                    );
                    apply_functionals(&self.a_id_functionals, &br)
                })
                .collect()
        })
    }

    fn s2(&self) -> Condition<'_> {
        Box::new(move |s, alpha| {
            let n = self.n();
            let module = self.ops.module();
            let form = self.ops.form();
            let mut out = Vec::new();
            for (u, v, p, aid) in &self.pairs {
                let lhs = op_bracket(n, s, alpha, aid, *p);
                let su = op_apply(n, s, &module.basis_vector(*u));
                let sv = op_apply(n, s, &module.basis_vector(*v));
                let sign = module.degree(*u).sign(module.degree(*v));
                let mut a = form.eval(&su, &module.basis_vector(*v));
                crate::solver::axpy(&mut a, sign, &form.eval(&sv, &module.basis_vector(*u)));
                let rhs = self.ops.left_op(&a);
                out.extend(lhs.iter().zip(&rhs).map(|(x, y)| x - y));
            }
            out
        })
    }

    fn s3(&self) -> Condition<'_> {
        Box::new(move |s, alpha| {
            let n = self.n();
            self.e_basis
                .iter()
                .flat_map(|(p, x)| {
                    let br = op_bracket(n, s, alpha, x, *p);
                    apply_functionals(&self.e_functionals, &br)
                })
                .collect()
        })
    }

    fn t1(&self) -> Condition<'_> {
        Box::new(move |t, alpha| {
            let n = self.n();
            (0..self.ops.algebra_dim())
                .flat_map(|k| {
                    let br = op_bracket(
                        n,
                        t,
                        alpha,
                        self.ops.left_basis_op(k),
                        self.algebra_degree(k),
                    );
                    apply_functionals(&self.e_functionals, &br)
                })
                .collect()
        })
    }

    fn t2(&self) -> Condition<'_> {
        Box::new(move |t, alpha| {
            let n = self.n();
            let module = self.ops.module();
            let mut out = Vec::new();
            for (u, v, p, aid) in &self.pairs {
                let lhs = op_bracket(n, t, alpha, aid, *p);
                let bu = module.basis_vector(*u);
                let bv = module.basis_vector(*v);
                let tu = op_apply(n, t, &bu);
                let tv = op_apply(n, t, &bv);
                let sign = module.degree(*u).sign(module.degree(*v));
                let mut rhs = self.ops.make_e(&tu, &bv);
                crate::solver::axpy(&mut rhs, sign, &self.ops.make_e(&tv, &bu));
                out.extend(lhs.iter().zip(&rhs).map(|(x, y)| x - y));
            }
            out
        })
    }

    fn t3(&self) -> Condition<'_> {
        Box::new(move |t, alpha| {
            let n = self.n();
            self.e_basis
                .iter()
                .flat_map(|(p, x)| {
                    let br = op_bracket(n, t, alpha, x, *p);
                    apply_functionals(&self.a_id_functionals, &br)
                })
                .collect()
        })
    }

    /// Degree-`α` operators satisfying every listed condition.
    fn solve(&self, alpha: Parity, conds: &[Condition<'_>], exec: Execution) -> Subspace {
        let n = self.n();
        let module = self.ops.module();
        let parities: Vec<Parity> = (0..n).map(|u| module.degree(u)).collect();
        let unk = OpUnknowns::new(&parities, alpha);
        let columns: Vec<Vec<Q>> = par::map_range(exec, unk.len(), |j| {
            let mut op = vec![Q::zero(); n * n];
            op[unk.slot(j)] = Q::one();
            conds.iter().flat_map(|c| c(&op, alpha)).collect()
        });
        let out_len = columns.first().map_or(0, Vec::len);
        let rows: Vec<SparseVec> = par::map_range(exec, out_len, |r| {
            columns
                .iter()
                .enumerate()
                .filter(|(_, col)| !col[r].is_zero())
                .map(|(j, col)| (j, col[r]))
                .collect::<SparseVec>()
        })
        .into_iter()
        .filter(|r| !r.is_empty())
        .collect();
        unk.expand_space(&nullspace_of_rows_with(exec, unk.len(), &rows))
    }

    fn graded(&self, conds: &[Condition<'_>], exec: Execution) -> GradedSubspace {
        GradedSubspace::new(Parity::ALL.map(|alpha| self.solve(alpha, conds, exec)))
    }

    pub fn spaces(&self, exec: Execution) -> StSpaces {
        StSpaces {
            s1: self.graded(&[self.s1()], exec),
            s2: self.graded(&[self.s2()], exec),
            s3: self.graded(&[self.s3()], exec),
            s: self.graded(&[self.s1(), self.s2(), self.s3()], exec),
            t1: self.graded(&[self.t1()], exec),
            t2: self.graded(&[self.t2()], exec),
            t3: self.graded(&[self.t3()], exec),
            t: self.graded(&[self.t1(), self.t2(), self.t3()], exec),
        }
    }

    /// `S⁽¹⁾ ∩ S⁽²⁾`, solved directly.
    pub fn s12(&self, exec: Execution) -> GradedSubspace {
        self.graded(&[self.s1(), self.s2()], exec)
    }

    /// `T⁽¹⁾ ∩ T⁽²⁾`, solved directly.
    pub fn t12(&self, exec: Execution) -> GradedSubspace {
        self.graded(&[self.t1(), self.t2()], exec)
    }

    pub fn is_in_s(&self, s: &[Q], alpha: Parity) -> bool {
        [self.s1(), self.s2(), self.s3()]
            .iter()
            .all(|c| c(s, alpha).iter().all(Q::is_zero))
    }

    pub fn is_in_t(&self, t: &[Q], alpha: Parity) -> bool {
        [self.t1(), self.t2(), self.t3()]
            .iter()
            .all(|c| c(t, alpha).iter().all(Q::is_zero))
    }
}

#[derive(Clone, Debug)]
pub struct StSpaces {
    pub s1: GradedSubspace,
    pub s2: GradedSubspace,
    pub s3: GradedSubspace,
    pub s: GradedSubspace,
    pub t1: GradedSubspace,
    pub t2: GradedSubspace,
    pub t3: GradedSubspace,
    pub t: GradedSubspace,
}

/// A homogeneous pair `(S, T)` of equal degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StPair {
    pub parity: Parity,
    pub s: Vec<Q>,
    pub t: Vec<Q>,
}

impl StPair {
    pub fn new(parity: Parity, s: Vec<Q>, t: Vec<Q>) -> Self {
        StPair { parity, s, t }
    }

    pub fn s_only(parity: Parity, s: Vec<Q>) -> Self {
        let z = vec![Q::zero(); s.len()];
        StPair { parity, s, t: z }
    }

    pub fn t_only(parity: Parity, t: Vec<Q>) -> Self {
        let z = vec![Q::zero(); t.len()];
        StPair { parity, s: z, t }
    }

    /// Concatenation `S ⊕ T` as one vector.
    pub fn as_vector(&self) -> Vec<Q> {
        self.s.iter().chain(&self.t).copied().collect()
    }
}

/// `[S⊕T, S'⊕T'] = ([S,S'] + [T,T']) ⊕ ([S,T'] + [T,S'])`.
pub fn st_bracket(n: usize, p: &StPair, p2: &StPair) -> StPair {
    let (a, b) = (p.parity, p2.parity);
    let mut s = op_bracket(n, &p.s, a, &p2.s, b);
    crate::solver::axpy(&mut s, Q::one(), &op_bracket(n, &p.t, a, &p2.t, b));
    let mut t = op_bracket(n, &p.s, a, &p2.t, b);
    crate::solver::axpy(&mut t, Q::one(), &op_bracket(n, &p.t, a, &p2.s, b));
    StPair {
        parity: a + b,
        s,
        t,
    }
}

/// `d_{S,T}` as a flat operator on the ambient basis of `L`.
pub fn d_from_st(l: &EInfty, ctx: &StContext, p: &StPair) -> Result<Vec<Q>> {
    let n = l.dim();
    let nm = l.module_dim();
    let alpha = p.parity;
    let mut out = vec![Q::zero(); n * n];
    let zero_a = vec![Q::zero(); l.algebra_dim()];
    let zero_m = vec![Q::zero(); nm];
    let zero_x = vec![Q::zero(); nm * nm];
    let as_a = |op: &[Q]| {
        ctx.as_algebra_element(op)
            .ok_or_else(|| Error::InvalidPair("bracket with S or T leaves A·Id".into()))
    };
    for u in 0..n {
        let c = l.basis_components(u);
        let pu = l.parity(u);
        let image = match l.grade(u) {
            crate::einfty::Grade::Plus => {
                let mut m = op_apply(nm, &p.s, &c.m);
                crate::solver::axpy(&mut m, Q::one(), &op_apply(nm, &p.t, &c.m));
                Components {
                    a: zero_a.clone(),
                    m,
                    n: zero_m.clone(),
                    x: zero_x.clone(),
                }
            }
            crate::einfty::Grade::Minus => {
                let mut m = op_apply(nm, &p.s, &c.n);
                crate::solver::axpy(&mut m, -Q::one(), &op_apply(nm, &p.t, &c.n));
                Components {
                    a: zero_a.clone(),
                    m: zero_m.clone(),
                    n: m,
                    x: zero_x.clone(),
                }
            }
            crate::einfty::Grade::Zero => {
                // ([S,a·Id] + [T,x], 0, 0, [T,a·Id] + [S,x])
                let aid = ctx.ops().left_op(&c.a);
                let mut a_op = op_bracket(nm, &p.s, alpha, &aid, pu);
                crate::solver::axpy(&mut a_op, Q::one(), &op_bracket(nm, &p.t, alpha, &c.x, pu));
                let mut x = op_bracket(nm, &p.t, alpha, &aid, pu);
                crate::solver::axpy(&mut x, Q::one(), &op_bracket(nm, &p.s, alpha, &c.x, pu));
                Components {
                    a: as_a(&a_op)?,
                    m: zero_m.clone(),
                    n: zero_m.clone(),
                    x,
                }
            }
        };
        let v = l
            .from_components(&image)
            .map_err(|_| Error::InvalidPair("bracket with S or T leaves E".into()))?;
        for (w, x) in v.into_iter().enumerate() {
            out[w * n + u] = x;
        }
    }
    Ok(out)
}

/// `D_M`, the image of `S ⊕ T` under `(S,T) ↦ d_{S,T}`.
pub fn dm_space(
    l: &EInfty,
    ctx: &StContext,
    st: &StSpaces,
    exec: Execution,
) -> Result<GradedSubspace> {
    let gens = st_generators(st);
    let images = par::map(exec, &gens, |p| d_from_st(l, ctx, p));
    let n2 = l.dim() * l.dim();
    let mut parts: [Vec<Vec<Q>>; 2] = [Vec::new(), Vec::new()];
    for (p, img) in gens.iter().zip(images) {
        parts[p.parity.index()].push(img?);
    }
    let [even, odd] = parts;
    Ok(GradedSubspace::new([
        Subspace::span(n2, even),
        Subspace::span(n2, odd),
    ]))
}

/// Homogeneous generators `(S_i, 0)` and `(0, T_j)` of `S ⊕ T`.
pub fn st_generators(st: &StSpaces) -> Vec<StPair> {
    let mut gens: Vec<StPair> =
        st.s.homogeneous_basis()
            .into_iter()
            .map(|(p, s)| StPair::s_only(p, s))
            .collect();
    gens.extend(
        st.t.homogeneous_basis()
            .into_iter()
            .map(|(p, t)| StPair::t_only(p, t)),
    );
    gens
}

/// `d_{x,0}` for `x ∈ E` together with `d_{0,a·Id}` for `a ∈ A`.
pub fn d_of_e_and_aid(l: &EInfty, ctx: &StContext) -> Result<GradedSubspace> {
    let n2 = l.dim() * l.dim();
    let mut parts: [Vec<Vec<Q>>; 2] = [Vec::new(), Vec::new()];
    for (p, x) in ctx.e().homogeneous_basis() {
        parts[p.index()].push(d_from_st(l, ctx, &StPair::s_only(p, x))?);
    }
    for (p, t) in ctx.ops().a_id().homogeneous_basis() {
        parts[p.index()].push(d_from_st(l, ctx, &StPair::t_only(p, t))?);
    }
    let [even, odd] = parts;
    Ok(GradedSubspace::new([
        Subspace::span(n2, even),
        Subspace::span(n2, odd),
    ]))
}

/// Identities satisfied by elements of `S⁽²⁾`, `T⁽²⁾` and `T⁽³⁾` on seeded
/// random homogeneous arguments.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct StPropertyReport {
    /// `[S, E_{m,n}] = E_{S(m),n} - (-1)^{|m||n|} E_{S(n),m}` on `S⁽²⁾`.
    pub s_on_e: bool,
    /// `[T, E_{m,n}] = (q(T(m),n) - (-1)^{|m||n|} q(T(n),m))·Id` on `T⁽²⁾`.
    pub t_on_e: bool,
    /// `[E, [T⁽³⁾, A·Id]] = 0`.
    pub e_kills_t3_aid: bool,
    /// `[T⁽³⁾, [E, E]] = 0`.
    pub t3_kills_ee: bool,
}

impl StPropertyReport {
    pub fn all_pass(&self) -> bool {
        self.s_on_e && self.t_on_e && self.e_kills_t3_aid && self.t3_kills_ee
    }
}

pub fn check_st_properties(
    ctx: &StContext,
    st: &StSpaces,
    samples: usize,
    seed: u64,
) -> StPropertyReport {
    let ops = ctx.ops();
    let n = ops.n();
    let form = ops.form();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut s_on_e = true;
    let mut t_on_e = true;
    for _ in 0..samples {
        let pm = if rng.gen_bool(0.5) {
            Parity::Odd
        } else {
            Parity::Even
        };
        let pn = if rng.gen_bool(0.5) {
            Parity::Odd
        } else {
            Parity::Even
        };
        let m = ops.random_vector(&mut rng, pm);
        let nv = ops.random_vector(&mut rng, pn);
        let e = ops.make_e(&m, &nv);
        let sign = pm.sign(pn);
        for (alpha, s) in st.s2.homogeneous_basis() {
            let lhs = op_bracket(n, &s, alpha, &e, pm + pn);
            let mut rhs = ops.make_e(&op_apply(n, &s, &m), &nv);
            crate::solver::axpy(&mut rhs, -sign, &ops.make_e(&op_apply(n, &s, &nv), &m));
            s_on_e &= lhs == rhs;
        }
        for (alpha, t) in st.t2.homogeneous_basis() {
            let lhs = op_bracket(n, &t, alpha, &e, pm + pn);
            let mut a = form.eval(&op_apply(n, &t, &m), &nv);
            crate::solver::axpy(&mut a, -sign, &form.eval(&op_apply(n, &t, &nv), &m));
            t_on_e &= lhs == ops.left_op(&a);
        }
    }
    let e_basis = ctx.e().homogeneous_basis();
    let aid = ops.a_id().homogeneous_basis();
    let t3 = st.t3.homogeneous_basis();
    let e_kills_t3_aid = t3.iter().all(|(pt, t)| {
        aid.iter().all(|(pa, a)| {
            let inner = op_bracket(n, t, *pt, a, *pa);
            e_basis.iter().all(|(px, x)| {
                op_bracket(n, x, *px, &inner, *pt + *pa)
                    .iter()
                    .all(Q::is_zero)
            })
        })
    });
    let t3_kills_ee = t3.iter().all(|(pt, t)| {
        e_basis.iter().all(|(px, x)| {
            e_basis.iter().all(|(py, y)| {
                let inner = op_bracket(n, x, *px, y, *py);
                op_bracket(n, t, *pt, &inner, *px + *py)
                    .iter()
                    .all(Q::is_zero)
            })
        })
    });
    StPropertyReport {
        s_on_e,
        t_on_e,
        e_kills_t3_aid,
        t3_kills_ee,
    }
}

/// `S ⊕ T` graded by degree, in the concatenated ambient `End(M) ⊕ End(M)`.
pub fn st_total(st: &StSpaces) -> GradedSubspace {
    let gens = st_generators(st);
    let n2 = gens.first().map_or(0, |p| p.s.len() * 2);
    let mut parts: [Vec<Vec<Q>>; 2] = [Vec::new(), Vec::new()];
    for p in gens {
        parts[p.parity.index()].push(p.as_vector());
    }
    let [even, odd] = parts;
    GradedSubspace::new([Subspace::span(n2, even), Subspace::span(n2, odd)])
}

/// `S ⊆ S⁽¹⁾∩S⁽²⁾∩S⁽³⁾` and conversely, as computed independently.
pub fn s_is_intersection(st: &StSpaces) -> bool {
    let i = super::graded_intersection(&super::graded_intersection(&st.s1, &st.s2), &st.s3);
    i == st.s
}

pub fn t_is_intersection(st: &StSpaces) -> bool {
    let i = super::graded_intersection(&super::graded_intersection(&st.t1, &st.t2), &st.t3);
    i == st.t
}

/// `E ⊆ S` and `A·Id ⊆ T`.
pub fn standard_inclusions(ctx: &StContext, st: &StSpaces) -> bool {
    super::graded_is_subset(ctx.e(), &st.s) && super::graded_is_subset(&ctx.ops().a_id(), &st.t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::derivations::{ad_l0, ad_space, check_toral_decomposition, der_space};
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
    fn so5_s_and_t() {
        let l = build(presets::rationals(), &[1, 1, 1]);
        let exec = Execution::best();
        let ctx = StContext::from_einfty(&l).unwrap();
        let st = ctx.spaces(exec);
        assert_eq!(st.s.dim(), 3);
        assert_eq!(st.t.dim(), 1);
        assert_eq!(st.s, l.osp().clone());
        assert!(s_is_intersection(&st) && t_is_intersection(&st));
        assert!(standard_inclusions(&ctx, &st));
        let dm = dm_space(&l, &ctx, &st, exec).unwrap();
        assert_eq!(dm.dim(), 4);
        let der = der_space(&l, exec);
        let ad = ad_space(&l);
        let (_, der0) = check_toral_decomposition(&l, &der, &ad, exec);
        assert_eq!(dm, der0);
        assert_eq!(d_of_e_and_aid(&l, &ctx).unwrap(), ad_l0(&l));
    }

    #[test]
    fn d_of_e_and_scalar_is_inner() {
        let l = build(presets::dual_numbers(), &[1, 1]);
        let ctx = StContext::from_einfty(&l).unwrap();
        let (px, x) = ctx.e().homogeneous_basis()[0].clone();
        let a0 = ctx.ops().left_basis_op(1).to_vec();
        // d_{x, a0·Id}: x contributes as an E element, a0 as an A element
        let dx = d_from_st(&l, &ctx, &StPair::s_only(px, x.clone())).unwrap();
        let da = d_from_st(&l, &ctx, &StPair::t_only(Parity::Even, a0)).unwrap();
        let mut v = vec![Q::zero(); l.dim()];
        v[1] = q(1);
        assert_eq!(da, l.ad_of(&v));
        let e = l
            .from_components(&Components {
                a: vec![Q::zero(); 2],
                m: vec![Q::zero(); l.module_dim()],
                n: vec![Q::zero(); l.module_dim()],
                x,
            })
            .unwrap();
        assert_eq!(dx, l.ad_of(&e));
    }

    #[test]
    fn zero_pair_gives_zero_derivation() {
        let l = build(presets::rationals(), &[1, 1]);
        let ctx = StContext::from_einfty(&l).unwrap();
        let z = vec![Q::zero(); l.module_dim() * l.module_dim()];
        let d = d_from_st(&l, &ctx, &StPair::new(Parity::Even, z.clone(), z)).unwrap();
        assert!(d.iter().all(Q::is_zero));
    }

    #[test]
    fn st_bracket_of_scalars_vanishes() {
        let l = build(presets::dual_numbers(), &[1, 1]);
        let ctx = StContext::from_einfty(&l).unwrap();
        let n = l.module_dim();
        let a = StPair::t_only(Parity::Even, ctx.ops().left_basis_op(0).to_vec());
        let b = StPair::t_only(Parity::Even, ctx.ops().left_basis_op(1).to_vec());
        let br = st_bracket(n, &a, &b);
        assert!(br.s.iter().all(Q::is_zero) && br.t.iter().all(Q::is_zero));
    }

    #[test]
    fn property_identities_on_dual_numbers() {
        let l = build(presets::dual_numbers(), &[1, 1, 1]);
        let ctx = StContext::from_einfty(&l).unwrap();
        let st = ctx.spaces(Execution::best());
        assert_eq!(st.s.dim(), 7);
        assert_eq!(st.t.dim(), 2);
        let rep = check_st_properties(&ctx, &st, 8, 7);
        assert!(rep.all_pass(), "{rep:?}");
    }
}
