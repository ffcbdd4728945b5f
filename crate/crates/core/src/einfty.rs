//! The 3-graded Lie superalgebra `L = E_∞` of 4-tuples `(a, m, n, x)`.
//!
//! The ambient ℚ-basis is `A ⊕ M⁺ ⊕ M⁻ ⊕ E`: algebra basis first, then the
//! ℚ-basis of `M` twice, then the echelon basis of the chosen subalgebra
//! `E ⊆ End(M)`. Structure constants are computed once at build time.

use std::sync::Arc;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::osp::{self, op_apply, op_bracket, op_parity, FormOps};
use crate::par::{self, Execution};
use crate::parity::Parity;
use crate::solver::{is_zero_vec, nullspace_of_rows, to_dense, SparseVec, Subspace, Q};
use crate::supermodule::{FreeSuperModule, QuadraticForm};
use crate::superring::{compact_sparse, GradedSubspace};

/// Which subalgebra `eosp(q) ⊆ E ⊆ osp(q)` to use.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EChoice {
    Eosp,
    Osp,
    /// Spanning operators (flat, see [`crate::osp`]).
    Explicit(Vec<Vec<Q>>),
}

/// The four components of an element of `L`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Components {
    pub a: Vec<Q>,
    pub m: Vec<Q>,
    pub n: Vec<Q>,
    /// `x` as a flat operator on `M`.
    pub x: Vec<Q>,
}

/// Component of the 3-grading.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Grade {
    Minus,
    Zero,
    Plus,
}

impl Grade {
    fn value(self) -> i8 {
        match self {
            Grade::Minus => -1,
            Grade::Zero => 0,
            Grade::Plus => 1,
        }
    }
}

#[derive(Debug)]
pub struct EInfty {
    ops: Arc<FormOps>,
    choice: EChoice,
    e_space: GradedSubspace,
    e_total: Subspace,
    eosp: GradedSubspace,
    osp: GradedSubspace,
    parity: Vec<Parity>,
    grade: Vec<Grade>,
    table: Vec<SparseVec>,
}

impl EInfty {
    /// Builds `L` and checks the subalgebra hypotheses on `E`.
    pub fn build(form: Arc<QuadraticForm>, choice: EChoice, exec: Execution) -> Result<Self> {
        let ops = Arc::new(FormOps::new(form));
        Self::build_with_ops(ops, choice, exec)
    }

    pub fn build_with_ops(ops: Arc<FormOps>, choice: EChoice, exec: Execution) -> Result<Self> {
        let nm = ops.n();
        let eosp = ops.eosp_basis();
        let osp = ops.osp_basis(exec);
        let e_space = match &choice {
            EChoice::Eosp => eosp.clone(),
            EChoice::Osp => osp.clone(),
            EChoice::Explicit(span) => explicit_e(&ops, span, &eosp, &osp, exec)?,
        };
        let e_total = e_space.total();
        let module = ops.module();
        let d = module.algebra().dim();
        let mut parity = Vec::new();
        let mut grade = Vec::new();
        for k in 0..d {
            parity.push(module.algebra().degree(k));
            grade.push(Grade::Zero);
        }
        for g in [Grade::Plus, Grade::Minus] {
            for u in 0..nm {
                parity.push(module.degree(u));
                grade.push(g);
            }
        }
        for v in e_total.basis() {
            parity.push(op_parity(module, v).ok_or(Error::NonHomogeneous)?);
            grade.push(Grade::Zero);
        }
        let mut l = EInfty {
            ops,
            choice,
            e_space,
            e_total,
            eosp,
            osp,
            parity,
            grade,
            table: Vec::new(),
        };
        let n = l.dim();
        let rows: Vec<Result<Vec<SparseVec>>> = par::map_range(exec, n, |u| {
            let cu = l.basis_components(u);
            (0..n)
                .map(|v| {
                    let cv = l.basis_components(v);
                    let c = l.bracket_components(&cu, l.parity[u], &cv, l.parity[v])?;
                    Ok(crate::solver::to_sparse(&l.from_components(&c)?))
                })
                .collect()
        });
        let mut table = Vec::with_capacity(n * n);
        for r in rows {
            table.extend(r?);
        }
        l.table = table;
        Ok(l)
    }

    pub fn ops(&self) -> &Arc<FormOps> {
        &self.ops
    }

    pub fn form(&self) -> &Arc<QuadraticForm> {
        self.ops.form()
    }

    pub fn module(&self) -> &FreeSuperModule {
        self.ops.module()
    }

    pub fn choice(&self) -> &EChoice {
        &self.choice
    }

    /// `E` as a graded subspace of `End_ℚ(M)`.
    pub fn e_space(&self) -> &GradedSubspace {
        &self.e_space
    }

    pub fn eosp(&self) -> &GradedSubspace {
        &self.eosp
    }

    pub fn osp(&self) -> &GradedSubspace {
        &self.osp
    }

    /// Echelon basis of `E` in ambient order.
    pub fn e_basis(&self) -> &[Vec<Q>] {
        self.e_total.basis()
    }

    pub fn dim(&self) -> usize {
        self.parity.len()
    }

    pub fn algebra_dim(&self) -> usize {
        self.module().algebra().dim()
    }

    pub fn module_dim(&self) -> usize {
        self.ops.n()
    }

    pub fn e_dim(&self) -> usize {
        self.e_total.dim()
    }

    pub fn parity(&self, u: usize) -> Parity {
        self.parity[u]
    }

    pub fn parities(&self) -> &[Parity] {
        &self.parity
    }

    pub fn grade(&self, u: usize) -> Grade {
        self.grade[u]
    }

    /// Offsets of the four blocks: `A`, `M⁺`, `M⁻`, `E`.
    pub fn offsets(&self) -> [usize; 4] {
        let d = self.algebra_dim();
        let nm = self.module_dim();
        [0, d, d + nm, d + 2 * nm]
    }

    pub fn a_index(&self, k: usize) -> usize {
        k
    }

    pub fn plus_index(&self, u: usize) -> usize {
        self.offsets()[1] + u
    }

    pub fn minus_index(&self, u: usize) -> usize {
        self.offsets()[2] + u
    }

    pub fn e_index(&self, j: usize) -> usize {
        self.offsets()[3] + j
    }

    pub fn basis_vector(&self, u: usize) -> Vec<Q> {
        let mut v = vec![Q::zero(); self.dim()];
        v[u] = Q::one();
        v
    }

    /// The toral element `(1, 0, 0, 0)`.
    pub fn toral(&self) -> Vec<Q> {
        self.basis_vector(self.module().algebra().unit_index())
    }

    pub fn basis_components(&self, u: usize) -> Components {
        self.to_components(&self.basis_vector(u))
    }

    pub fn to_components(&self, v: &[Q]) -> Components {
        let [_, o1, o2, o3] = self.offsets();
        let x = self.e_total.combine(&v[o3..]);
        Components {
            a: v[..o1].to_vec(),
            m: v[o1..o2].to_vec(),
            n: v[o2..o3].to_vec(),
            x,
        }
    }

    /// Fails if the operator part is not in `E`.
    pub fn from_components(&self, c: &Components) -> Result<Vec<Q>> {
        let coords = self.e_total.coordinates(&c.x).ok_or_else(|| {
            Error::InvalidSubalgebra("operator part of a bracket lies outside E".into())
        })?;
        let mut v = Vec::with_capacity(self.dim());
        v.extend_from_slice(&c.a);
        v.extend_from_slice(&c.m);
        v.extend_from_slice(&c.n);
        v.extend(coords);
        Ok(v)
    }

    /// The bracket on homogeneous components of degrees `p` and `p2`.
    pub fn bracket_components(
        &self,
        c: &Components,
        p: Parity,
        c2: &Components,
        p2: Parity,
    ) -> Result<Components> {
        let module = self.module();
        let form = self.form();
        let nm = self.module_dim();
        let s = p.sign(p2);
        // (q(m,n') - q(n,m'), ...)
        let a: Vec<Q> = form
            .eval(&c.m, &c2.n)
            .iter()
            .zip(form.eval(&c.n, &c2.m))
            .map(|(x, y)| x - y)
            .collect();
        // a m' + x m' - m a' - (-1)^{|x'||m|} x' m
        let mut m = module.left_mul(&c.a, &c2.m);
        add_into(&mut m, &op_apply(nm, &c.x, &c2.m), Q::one());
        add_into(&mut m, &module.right_mul(&c.m, &c2.a), -Q::one());
        add_into(&mut m, &op_apply(nm, &c2.x, &c.m), -s);
        // -a n' + x n' + n a' - (-1)^{|x'||n|} x' n
        let mut n = module.left_mul(&c.a, &c2.n);
        for y in n.iter_mut() {
            *y = -*y;
        }
        add_into(&mut n, &op_apply(nm, &c.x, &c2.n), Q::one());
        add_into(&mut n, &module.right_mul(&c.n, &c2.a), Q::one());
        add_into(&mut n, &op_apply(nm, &c2.x, &c.n), -s);
        // E_{m,n'} + E_{n,m'} + [x,x']
        let mut x = self.ops.make_e(&c.m, &c2.n);
        add_into(&mut x, &self.ops.make_e(&c.n, &c2.m), Q::one());
        add_into(&mut x, &op_bracket(nm, &c.x, p, &c2.x, p2), Q::one());
        Ok(Components { a, m, n, x })
    }

    /// `[e_u, e_v]` from the structure constants.
    pub fn bracket_basis(&self, u: usize, v: usize) -> &SparseVec {
        &self.table[u * self.dim() + v]
    }

    /// The bracket, extended bilinearly from the table.
    pub fn bracket(&self, x: &[Q], y: &[Q]) -> Vec<Q> {
        let n = self.dim();
        let mut out = vec![Q::zero(); n];
        for (u, xu) in x.iter().enumerate() {
            if xu.is_zero() {
                continue;
            }
            for (v, yv) in y.iter().enumerate() {
                if yv.is_zero() {
                    continue;
                }
                let c = xu * yv;
                for (w, s) in self.bracket_basis(u, v) {
                    out[*w] += c * s;
                }
            }
        }
        out
    }

    /// `[e_u, y]` for sparse `y`.
    fn bracket_basis_sparse(&self, u: usize, y: &SparseVec) -> SparseVec {
        let mut out: SparseVec = Vec::new();
        for (v, c) in y {
            for (w, s) in self.bracket_basis(u, *v) {
                out.push((*w, c * s));
            }
        }
        compact_sparse(out)
    }

    fn sparse_bracket_basis(&self, y: &SparseVec, v: usize) -> SparseVec {
        let mut out: SparseVec = Vec::new();
        for (u, c) in y {
            for (w, s) in self.bracket_basis(*u, v) {
                out.push((*w, c * s));
            }
        }
        compact_sparse(out)
    }

    /// `ad(e_u)` as a flat `n×n` operator (entry `w·n + v`).
    pub fn ad(&self, u: usize) -> Vec<Q> {
        let n = self.dim();
        let mut out = vec![Q::zero(); n * n];
        for v in 0..n {
            for (w, s) in self.bracket_basis(u, v) {
                out[w * n + v] = *s;
            }
        }
        out
    }

    pub fn ad_of(&self, x: &[Q]) -> Vec<Q> {
        let n = self.dim();
        let mut out = vec![Q::zero(); n * n];
        for (u, c) in x.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for v in 0..n {
                for (w, s) in self.bracket_basis(u, v) {
                    out[w * n + v] += c * s;
                }
            }
        }
        out
    }

    /// First basis pair violating `[u,v] = -(-1)^{|u||v|}[v,u]`.
    pub fn check_antisymmetry(&self) -> Option<(usize, usize)> {
        let n = self.dim();
        for u in 0..n {
            for v in u..n {
                let s = self.parity[u].sign(self.parity[v]);
                let uv = to_dense(self.bracket_basis(u, v), n);
                let vu = to_dense(self.bracket_basis(v, u), n);
                if uv.iter().zip(&vu).any(|(a, b)| *a != -(s * b)) {
                    return Some((u, v));
                }
            }
        }
        None
    }

    /// First basis triple (in lexicographic order) violating
    /// `[[u,v],w] = [u,[v,w]] - (-1)^{|u||v|}[v,[u,w]]`.
    pub fn check_jacobi(&self, exec: Execution) -> Option<(usize, usize, usize)> {
        let n = self.dim();
        par::find_first(exec, n, |u| {
            for v in 0..n {
                let uv = self.bracket_basis(u, v);
                let s = self.parity[u].sign(self.parity[v]);
                for w in 0..n {
                    let lhs = self.sparse_bracket_basis(uv, w);
                    let mut rhs = self.bracket_basis_sparse(u, self.bracket_basis(v, w));
                    for (i, c) in self.bracket_basis_sparse(v, self.bracket_basis(u, w)) {
                        rhs.push((i, -(s * c)));
                    }
                    if lhs != compact_sparse(rhs) {
                        return Some((u, v, w));
                    }
                }
            }
            None
        })
    }

    /// `[L_σ, L_μ] ⊆ L_{σ+μ}` (zero outside `{-1, 0, 1}`) and brackets preserve parity.
    pub fn check_grading(&self) -> Option<(usize, usize)> {
        let n = self.dim();
        for u in 0..n {
            for v in 0..n {
                let target = self.grade[u].value() + self.grade[v].value();
                let p = self.parity[u] + self.parity[v];
                for (w, _) in self.bracket_basis(u, v) {
                    if self.grade[*w].value() != target || self.parity[*w] != p {
                        return Some((u, v));
                    }
                }
            }
        }
        None
    }

    /// `[1, x_σ] = σ x_σ` on every basis vector.
    pub fn check_toral(&self) -> Option<usize> {
        let one = self.module().algebra().unit_index();
        let n = self.dim();
        (0..n).find(|&v| {
            let want = self.basis_vector(v);
            let got = to_dense(self.bracket_basis(one, v), n);
            let sigma = Q::from_integer(self.grade[v].value() as i128);
            got.iter().zip(&want).any(|(g, w)| *g != sigma * w)
        })
    }

    /// `Z(L)` as the common kernel of all `ad(e_v)`.
    pub fn centre(&self) -> Subspace {
        let n = self.dim();
        let mut rows: Vec<SparseVec> = vec![Vec::new(); n * n];
        for u in 0..n {
            for v in 0..n {
                for (w, s) in self.bracket_basis(u, v) {
                    rows[v * n + w].push((u, *s));
                }
            }
        }
        nullspace_of_rows(n, rows)
    }

    /// `(Ann_A M, 0, 0, 0)`, computed directly from the module action.
    pub fn annihilator_centre(&self) -> Subspace {
        let module = self.module();
        let d = self.algebra_dim();
        let mut rows = Vec::new();
        for i in 0..module.rank() {
            let b = module.generator(i);
            let mut per: Vec<SparseVec> = vec![Vec::new(); module.dim()];
            for k in 0..d {
                let img = module.left_mul(module.algebra().basis_element(k).coeffs(), &b);
                for (t, x) in img.into_iter().enumerate() {
                    if !x.is_zero() {
                        per[t].push((k, x));
                    }
                }
            }
            rows.extend(per);
        }
        let ann = nullspace_of_rows(d, rows);
        let n = self.dim();
        Subspace::span(
            n,
            ann.basis().iter().map(|a| {
                let mut v = vec![Q::zero(); n];
                v[..d].clone_from_slice(a);
                v
            }),
        )
    }

    /// Ambient coordinates of a given 3-grading component.
    pub fn grade_indices(&self, g: Grade) -> Vec<usize> {
        (0..self.dim()).filter(|u| self.grade[*u] == g).collect()
    }

    /// Replaces one structure constant (negative controls only).
    pub fn corrupt_structure_constant(&mut self, u: usize, v: usize, w: usize, value: Q) {
        let n = self.dim();
        let mut dense = to_dense(&self.table[u * n + v], n);
        dense[w] = value;
        self.table[u * n + v] = crate::solver::to_sparse(&dense);
    }

    pub fn dims(&self) -> EInftyDims {
        EInftyDims {
            l: self.dim(),
            l0: self.grade_indices(Grade::Zero).len(),
            lplus: self.grade_indices(Grade::Plus).len(),
            lminus: self.grade_indices(Grade::Minus).len(),
            centre: self.centre().dim(),
            e: self.e_dim(),
            eosp: self.eosp.dim(),
            osp: self.osp.dim(),
        }
    }

    /// Summary of dimensions and the build-time invariants.
    pub fn report(&self, exec: Execution) -> EInftyReport {
        let dims = self.dims();
        let centre = self.centre();
        EInftyReport {
            dims,
            antisymmetry: self.check_antisymmetry().is_none(),
            jacobi: self.check_jacobi(exec).is_none(),
            grading: self.check_grading().is_none(),
            toral: self.check_toral().is_none(),
            centre_is_annihilator: centre == self.annihilator_centre(),
        }
    }

    /// The map onto `eosp(q_∞)`, `q_∞ = q_{∞} ⊕ q` on `H({∞}, A) ⊕ M`, and its
    /// verification. Requires `E = eosp(q)`.
    pub fn iso_to_eosp_qinf(&self, exec: Execution) -> Result<IsoReport> {
        if self.e_space != self.eosp {
            return Err(Error::InvalidSubalgebra(
                "the isomorphism onto eosp(q_∞) needs E = eosp(q)".into(),
            ));
        }
        let alg = Arc::clone(self.module().algebra());
        let h = QuadraticForm::hyperbolic(1, alg)?;
        let qinf = Arc::new(h.orthogonal_sum(self.form())?);
        let big = FormOps::new(Arc::clone(&qinf));
        let bm = big.module();
        let d = self.algebra_dim();
        let nm = self.module_dim();
        let bn = big.n();
        let h_plus = bm.generator(0);
        let h_minus = bm.generator(1);
        // M sits after the two hyperbolic generators
        let embed = |m: &[Q]| {
            let mut v = vec![Q::zero(); bn];
            v[2 * d..].clone_from_slice(m);
            v
        };
        let embed_op = |x: &[Q]| {
            let mut out = vec![Q::zero(); bn * bn];
            for w in 0..nm {
                for u in 0..nm {
                    out[(2 * d + w) * bn + (2 * d + u)] = x[w * nm + u];
                }
            }
            out
        };
        let phi = |v: &[Q]| -> Vec<Q> {
            let c = self.to_components(v);
            // a ↦ E_{h_∞ a, h_{-∞}}, m⁺ ↦ E_{h_∞, m}, n⁻ ↦ -E_{h_{-∞}, n}, x ↦ x ⊕ 0
            let ha = bm.right_mul(&h_plus, &c.a);
            let mut out = big.make_e(&ha, &h_minus);
            add_into(&mut out, &big.make_e(&h_plus, &embed(&c.m)), Q::one());
            add_into(&mut out, &big.make_e(&h_minus, &embed(&c.n)), -Q::one());
            add_into(&mut out, &embed_op(&c.x), Q::one());
            out
        };
        let n = self.dim();
        let images: Vec<Vec<Q>> = par::map_range(exec, n, |u| phi(&self.basis_vector(u)));
        let target = big.eosp_basis();
        let target_total = target.total();
        let image_span = Subspace::span(bn * bn, images.iter().cloned());
        let injective = image_span.dim() == n;
        let surjective = image_span == target_total;
        let degree_preserving = images
            .iter()
            .enumerate()
            .all(|(u, img)| is_zero_vec(img) || op_parity(bm, img) == Some(self.parity[u]));
        let offending = par::find_first(exec, n, |u| {
            (0..n).find_map(|v| {
                let lhs = phi(&to_dense(self.bracket_basis(u, v), n));
                let rhs = op_bracket(bn, &images[u], self.parity[u], &images[v], self.parity[v]);
                (lhs != rhs).then_some((u, v))
            })
        });
        Ok(IsoReport {
            dim_l: n,
            dim_target: target.dim(),
            injective,
            surjective,
            degree_preserving,
            homomorphism: offending.is_none(),
            offending_pair: offending,
        })
    }
}

fn add_into(acc: &mut [Q], v: &[Q], c: Q) {
    crate::solver::axpy(acc, c, v);
}

fn explicit_e(
    ops: &FormOps,
    span: &[Vec<Q>],
    eosp: &GradedSubspace,
    osp: &GradedSubspace,
    exec: Execution,
) -> Result<GradedSubspace> {
    let module = ops.module();
    let n2 = ops.n() * ops.n();
    let mut tagged = Vec::new();
    for v in span {
        if v.len() != n2 {
            return Err(Error::DimensionMismatch {
                expected: n2,
                found: v.len(),
            });
        }
        // split into homogeneous parts
        for p in Parity::ALL {
            let part: Vec<Q> = v
                .iter()
                .enumerate()
                .map(|(idx, x)| {
                    let (w, u) = (idx / ops.n(), idx % ops.n());
                    if module.degree(w) == module.degree(u) + p {
                        *x
                    } else {
                        Q::zero()
                    }
                })
                .collect();
            if !is_zero_vec(&part) {
                tagged.push((p, part));
            }
        }
    }
    let mut e = osp::graded_span(n2, tagged);
    // a graded span must contain the homogeneous parts of its vectors
    let given = Subspace::span(n2, span.iter().cloned());
    if given != e.total() {
        return Err(Error::InvalidSubalgebra(
            "E is not a graded subspace".into(),
        ));
    }
    if !eosp.total().is_subset_of(&e.total())? {
        return Err(Error::InvalidSubalgebra(
            "E does not contain eosp(q)".into(),
        ));
    }
    if !e.total().is_subset_of(&osp.total())? {
        return Err(Error::InvalidSubalgebra(
            "E is not contained in osp(q)".into(),
        ));
    }
    if !osp::bracket_lands_in(ops.n(), &e, &e, &e, exec) {
        return Err(Error::InvalidSubalgebra(
            "E is not closed under the bracket".into(),
        ));
    }
    e = GradedSubspace::new([e.part(Parity::Even).clone(), e.part(Parity::Odd).clone()]);
    Ok(e)
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct EInftyDims {
    #[serde(rename = "L")]
    pub l: usize,
    #[serde(rename = "L0")]
    pub l0: usize,
    #[serde(rename = "Lplus")]
    pub lplus: usize,
    #[serde(rename = "Lminus")]
    pub lminus: usize,
    pub centre: usize,
    #[serde(rename = "E")]
    pub e: usize,
    pub eosp: usize,
    pub osp: usize,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct EInftyReport {
    pub dims: EInftyDims,
    pub antisymmetry: bool,
    pub jacobi: bool,
    pub grading: bool,
    pub toral: bool,
    pub centre_is_annihilator: bool,
}

impl EInftyReport {
    pub fn all_pass(&self) -> bool {
        self.antisymmetry && self.jacobi && self.grading && self.toral && self.centre_is_annihilator
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct IsoReport {
    pub dim_l: usize,
    pub dim_target: usize,
    pub injective: bool,
    pub surjective: bool,
    pub degree_preserving: bool,
    pub homomorphism: bool,
    pub offending_pair: Option<(usize, usize)>,
}

impl IsoReport {
    pub fn is_isomorphism(&self) -> bool {
        self.injective && self.surjective && self.degree_preserving && self.homomorphism
    }
}
