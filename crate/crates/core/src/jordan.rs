//! The Jordan superalgebra `J = A ⊕ M` of a quadratic form, its module
//! `X = E ⊕ M`, and the restriction maps from the derivation spaces
//! `Der_*(J)` and `Der_*(J, X)` to operators on `M`.
//!
//! Products are stored as structure constants on ℚ-bases:
//!
//! * `J` has the basis of `A` (indices `0..d`) followed by that of `M`;
//! * `X` has the coordinates of `E` (pivot coordinates of its echelon basis)
//!   followed by those of `M`;
//! * the split null extension `J ⊕ X` stacks the two.

use std::sync::Arc;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use crate::derivations::st::StContext;
use crate::error::{Error, Result};
use crate::osp::{op_bracket, op_compose, FormOps};
use crate::par::{self, Execution};
use crate::parity::Parity;
use crate::solver::{
    format_rational, nullspace_of_rows_with, to_dense, to_sparse, SparseVec, Subspace, Q,
};
use crate::superring::{compact_sparse, GradedSubspace};

/// Ambient dimension above which the quadruple and triple sweeps sample.
pub const EXHAUSTIVE_LIMIT: usize = 12;
/// Number of seeded tuples drawn per axiom in sampling mode.
pub const SAMPLE_COUNT: usize = 2000;

/// Structure constants of a ℤ₂-graded algebra: entry `u·n + v` holds
/// `e_u e_v`.
#[derive(Clone, Debug)]
pub struct ProductTable {
    parities: Vec<Parity>,
    table: Vec<SparseVec>,
}

impl ProductTable {
    pub fn dim(&self) -> usize {
        self.parities.len()
    }

    pub fn parity(&self, u: usize) -> Parity {
        self.parities[u]
    }

    pub fn parities(&self) -> &[Parity] {
        &self.parities
    }

    pub fn basis_product(&self, u: usize, v: usize) -> &SparseVec {
        &self.table[u * self.dim() + v]
    }

    pub fn mul(&self, x: &[Q], y: &[Q]) -> Vec<Q> {
        let n = self.dim();
        let mut out = vec![Q::zero(); n];
        for (u, a) in x.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (v, b) in y.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                let c = a * b;
                for (w, s) in self.basis_product(u, v) {
                    out[*w] += c * s;
                }
            }
        }
        out
    }

    fn mul_sparse(&self, x: &[(usize, Q)], y: &[(usize, Q)]) -> SparseVec {
        let mut out = Vec::new();
        for (u, a) in x {
            for (v, b) in y {
                let c = a * b;
                out.extend(self.basis_product(*u, *v).iter().map(|(w, s)| (*w, c * s)));
            }
        }
        compact_sparse(out)
    }
}

fn unit(u: usize) -> SparseVec {
    vec![(u, Q::one())]
}

fn combine(terms: &[(Q, &SparseVec)]) -> SparseVec {
    compact_sparse(
        terms
            .iter()
            .flat_map(|(c, v)| v.iter().map(move |(i, x)| (*i, c * x)))
            .collect(),
    )
}

/// Outcome of one axiom sweep.
#[derive(Clone, Debug, Serialize)]
pub struct AxiomResult {
    pub axiom: String,
    pub pass: bool,
    pub exhaustive: bool,
    pub checked: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<serde_json::Value>,
}

/// Basis tuples to sweep: all tuples over `0..j`, or, when `x` is set,
/// tuples with exactly one entry from the block `j..j+x`.
#[derive(Clone, Copy)]
struct TupleSpace {
    arity: usize,
    j: usize,
    x: Option<usize>,
}

impl TupleSpace {
    fn count(&self) -> usize {
        let free = self.j.pow(self.arity as u32 - self.x.map_or(0, |_| 1));
        match self.x {
            None => free,
            Some(x) => self.arity * x * free,
        }
    }

    fn decode(&self, mut idx: usize) -> Vec<usize> {
        let mut out = vec![0; self.arity];
        let slot = match self.x {
            None => None,
            Some(x) => {
                let pos = idx % self.arity;
                idx /= self.arity;
                let xi = idx % x;
                idx /= x;
                out[pos] = self.j + xi;
                Some(pos)
            }
        };
        for (p, o) in out.iter_mut().enumerate() {
            if Some(p) != slot {
                *o = idx % self.j;
                idx /= self.j;
            }
        }
        out
    }
}

fn sample_rng(seed: u64, s: usize) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ (s as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

fn sweep<F>(
    name: &str,
    ambient: usize,
    space: TupleSpace,
    seed: u64,
    exec: Execution,
    check: F,
) -> AxiomResult
where
    F: Fn(&[usize]) -> bool + Sync + Send,
{
    let total = space.count();
    let exhaustive = ambient <= EXHAUSTIVE_LIMIT;
    let (checked, witness) = if total == 0 {
        (0, None)
    } else if exhaustive {
        let w = par::find_first(exec, total, |i| {
            let t = space.decode(i);
            (!check(&t)).then_some(t)
        });
        (total, w)
    } else {
        let w = par::find_first(exec, SAMPLE_COUNT, |s| {
            let i = sample_rng(seed, s).gen_range(0..total);
            let t = space.decode(i);
            (!check(&t)).then_some(t)
        });
        (SAMPLE_COUNT, w)
    };
    AxiomResult {
        axiom: name.to_string(),
        pass: witness.is_none(),
        exhaustive,
        checked,
        witness: witness.map(|t| json!({ "basis": t })),
    }
}

/// `ab − (−1)^{|a||b|} ba` vanishes.
fn jsa1(t: &ProductTable, a: usize, b: usize) -> bool {
    let s = t.parity(a).sign(t.parity(b));
    combine(&[
        (Q::one(), t.basis_product(a, b)),
        (-s, t.basis_product(b, a)),
    ])
    .is_empty()
}

fn jsa2(t: &ProductTable, a: usize, b: usize, c: usize, d: usize) -> bool {
    let (pa, pb, pc, pd) = (t.parity(a), t.parity(b), t.parity(c), t.parity(d));
    let m = |x: &SparseVec, y: &SparseVec| t.mul_sparse(x, y);
    let (ea, eb, ec, ed) = (unit(a), unit(b), unit(c), unit(d));
    let ab = m(&ea, &eb);
    let bd = m(&eb, &ed);
    let ad = m(&ea, &ed);
    let ac = m(&ea, &ec);
    let cd = m(&ec, &ed);
    let bc = m(&eb, &ec);
    let l1 = m(&m(&ab, &ec), &ed);
    let l2 = m(&ea, &m(&bd, &ec));
    let l3 = m(&eb, &m(&ad, &ec));
    let r1 = m(&ab, &cd);
    let r2 = m(&ac, &bd);
    let r3 = m(&ad, &bc);
    let one = Q::one();
    combine(&[
        (one, &l1),
        (pd.sign(pc), &l2),
        (pb.sign(pa) * pd.sign(pc), &l3),
        (-one, &r1),
        (-pc.sign(pb), &r2),
        (-pd.sign(pb + pc), &r3),
    ])
    .is_empty()
}

/// `(a²c)a = a²(ca)` for `a` given as a sparse vector.
fn jsa3_vec(t: &ProductTable, a: &SparseVec, c: usize) -> bool {
    let ec = unit(c);
    let a2 = t.mul_sparse(a, a);
    let lhs = t.mul_sparse(&t.mul_sparse(&a2, &ec), a);
    let rhs = t.mul_sparse(&a2, &t.mul_sparse(&ec, a));
    combine(&[(Q::one(), &lhs), (-Q::one(), &rhs)]).is_empty()
}

/// Checks (JSA1), (JSA3) and (JSA2) on `table`, restricting to tuples with
/// exactly one entry of the top block of size `x` when given.
fn algebra_axioms(
    table: &ProductTable,
    j: usize,
    x: Option<usize>,
    suffix: &str,
    seed: u64,
    exec: Execution,
) -> Vec<AxiomResult> {
    let n = table.dim();
    let space = |arity| TupleSpace { arity, j, x };
    let mut out = vec![
        sweep(&format!("JSA1{suffix}"), n, space(2), seed, exec, |t| {
            jsa1(table, t[0], t[1])
        }),
        sweep(&format!("JSA3{suffix}"), n, space(2), seed, exec, |t| {
            jsa3_vec(table, &unit(t[0]), t[1])
        }),
        sweep(&format!("JSA2{suffix}"), n, space(4), seed, exec, |t| {
            jsa2(table, t[0], t[1], t[2], t[3])
        }),
    ];
    if x.is_none() {
        let even: Vec<usize> = (0..j)
            .filter(|u| table.parity(*u) == Parity::Even)
            .collect();
        let witness = par::find_first(exec, SAMPLE_COUNT, |s| {
            let mut rng = sample_rng(seed.wrapping_add(3), s);
            let a: SparseVec = to_sparse(
                &(0..j)
                    .map(|u| {
                        if even.contains(&u) {
                            Q::from_integer(rng.gen_range(-3..=3))
                        } else {
                            Q::zero()
                        }
                    })
                    .collect::<Vec<_>>(),
            );
            let c = rng.gen_range(0..j);
            (!jsa3_vec(table, &a, c)).then(|| json!({ "a": render_sparse(&a, j), "c": c }))
        });
        let r = &mut out[1];
        r.checked += SAMPLE_COUNT;
        if r.witness.is_none() {
            r.pass = witness.is_none();
            r.witness = witness;
        }
    }
    out
}

fn render_sparse(v: &SparseVec, len: usize) -> Vec<String> {
    to_dense(v, len).iter().map(format_rational).collect()
}

/// The Jordan superalgebra `J = A ⊕ M` with
/// `(a⊕m)∘(b⊕n) = (ab + q(m,n)) ⊕ (an + mb)`.
#[derive(Clone, Debug)]
pub struct JordanQF {
    ops: Arc<FormOps>,
    table: ProductTable,
}

impl JordanQF {
    pub fn new(ops: Arc<FormOps>) -> Self {
        let module = ops.module();
        let alg = module.algebra();
        let d = alg.dim();
        let nm = ops.n();
        let n = d + nm;
        let mut parities: Vec<Parity> = alg.degrees().to_vec();
        parities.extend((0..nm).map(|u| module.degree(u)));
        let mut table = Vec::with_capacity(n * n);
        for u in 0..n {
            for v in 0..n {
                let prod: SparseVec = match (u < d, v < d) {
                    (true, true) => alg.product(u, v).clone(),
                    (true, false) => {
                        let m = module
                            .left_mul(alg.basis_element(u).coeffs(), &module.basis_vector(v - d));
                        shift(&to_sparse(&m), d)
                    }
                    (false, true) => {
                        let m = module
                            .right_mul(&module.basis_vector(u - d), alg.basis_element(v).coeffs());
                        shift(&to_sparse(&m), d)
                    }
                    (false, false) => ops.form().eval_basis(u - d, v - d).clone(),
                };
                table.push(prod);
            }
        }
        JordanQF {
            ops,
            table: ProductTable { parities, table },
        }
    }

    pub fn ops(&self) -> &Arc<FormOps> {
        &self.ops
    }

    pub fn table(&self) -> &ProductTable {
        &self.table
    }

    pub fn dim(&self) -> usize {
        self.table.dim()
    }

    pub fn algebra_dim(&self) -> usize {
        self.ops.algebra_dim()
    }

    /// The element `a ⊕ m`.
    pub fn element(&self, a: &[Q], m: &[Q]) -> Result<Vec<Q>> {
        let d = self.algebra_dim();
        if a.len() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: a.len(),
            });
        }
        if m.len() != self.ops.n() {
            return Err(Error::DimensionMismatch {
                expected: self.ops.n(),
                found: m.len(),
            });
        }
        Ok(a.iter().chain(m).copied().collect())
    }

    /// `u ∘ v`.
    pub fn mul(&self, u: &[Q], v: &[Q]) -> Result<Vec<Q>> {
        for x in [u, v] {
            if x.len() != self.dim() {
                return Err(Error::DimensionMismatch {
                    expected: self.dim(),
                    found: x.len(),
                });
            }
        }
        Ok(self.table.mul(u, v))
    }

    /// Overwrites the coefficient of `e_w` in `e_u ∘ e_v` and, consistently
    /// with supercommutativity, in `e_v ∘ e_u`.
    pub fn corrupt_product(&mut self, u: usize, v: usize, w: usize, value: Q) {
        let n = self.dim();
        let s = self.table.parity(u).sign(self.table.parity(v));
        for (idx, val) in [(u * n + v, value), (v * n + u, s * value)] {
            let mut dense = to_dense(&self.table.table[idx], n);
            dense[w] = val;
            self.table.table[idx] = to_sparse(&dense);
        }
    }

    /// (JSA1) and (JSA3) on basis pairs (plus seeded random even `a` for
    /// (JSA3)) and (JSA2) on basis quadruples.
    pub fn verify_axioms(&self, seed: u64, exec: Execution) -> Vec<AxiomResult> {
        algebra_axioms(&self.table, self.dim(), None, "", seed, exec)
    }

    fn is_derivation_flat(&self, op: &[Q], alpha: Parity) -> bool {
        let n = self.dim();
        let apply = |v: &[Q]| crate::osp::op_apply(n, op, v);
        (0..n).all(|u| {
            (0..n).all(|v| {
                let eu = to_dense(&unit(u), n);
                let ev = to_dense(&unit(v), n);
                let lhs = apply(&self.table.mul(&eu, &ev));
                let r1 = self.table.mul(&apply(&eu), &ev);
                let r2 = self.table.mul(&eu, &apply(&ev));
                let s = alpha.sign(self.table.parity(u));
                lhs.iter()
                    .zip(r1.iter().zip(&r2))
                    .all(|(l, (a, b))| *l == a + s * b)
            })
        })
    }
}

fn shift(v: &SparseVec, by: usize) -> SparseVec {
    v.iter().map(|(i, c)| (i + by, *c)).collect()
}

/// The `J`-module `X = E ⊕ M` with right action
/// `(x⊕p)(a⊕m) = (xa + E_{p,m}) ⊕ (x(m) + pa)`.
#[derive(Clone, Debug)]
pub struct JordanModuleX {
    ops: Arc<FormOps>,
    e_total: Subspace,
    j_dim: usize,
    // the split null extension J ⊕ X
    ext: ProductTable,
    // right[d][x]: e_x · e_d in X coordinates
    right: Vec<Vec<SparseVec>>,
}

impl JordanModuleX {
    /// Fails when `E` is not stable under the action, e.g. not an
    /// `A`-submodule.
    pub fn new(j: &JordanQF, e: &GradedSubspace) -> Result<Self> {
        let ops = Arc::clone(j.ops());
        let e_total = e.total();
        let module = ops.module();
        let alg = module.algebra();
        let d = alg.dim();
        let nm = ops.n();
        let ed = e_total.dim();
        let jd = j.dim();
        let xd = ed + nm;
        let mut x_par = Vec::with_capacity(xd);
        for v in e_total.basis() {
            x_par.push(crate::osp::op_parity(module, v).ok_or(Error::NonHomogeneous)?);
        }
        x_par.extend((0..nm).map(|u| module.degree(u)));
        let e_coords = |op: &[Q]| -> Result<SparseVec> {
            e_total
                .coordinates(op)
                .map(|c| to_sparse(&c))
                .ok_or_else(|| {
                    Error::InvalidSubalgebra("E is not stable under the Jordan action".into())
                })
        };
        let mut right = vec![vec![Vec::new(); xd]; jd];
        for (x, xp) in x_par.iter().enumerate() {
            for (jb, row) in right.iter_mut().enumerate() {
                row[x] = match (x < ed, jb < d) {
                    (true, true) => {
                        let op = op_compose(nm, &e_total.basis()[x], ops.left_basis_op(jb));
                        e_coords(&op)?
                    }
                    (true, false) => {
                        let m = crate::osp::op_apply(
                            nm,
                            &e_total.basis()[x],
                            &module.basis_vector(jb - d),
                        );
                        shift(&to_sparse(&m), ed)
                    }
                    (false, true) => {
                        let m = module.right_mul(
                            &module.basis_vector(x - ed),
                            alg.basis_element(jb).coeffs(),
                        );
                        shift(&to_sparse(&m), ed)
                    }
                    (false, false) => {
                        let op = to_dense(ops.e_basis(x - ed, jb - d), nm * nm);
                        e_coords(&op)?
                    }
                };
                let _ = xp;
            }
        }
        let n = jd + xd;
        let mut parities = j.table().parities().to_vec();
        parities.extend_from_slice(&x_par);
        let mut table = vec![Vec::new(); n * n];
        for u in 0..jd {
            for v in 0..jd {
                table[u * n + v] = j.table().basis_product(u, v).clone();
            }
        }
        for x in 0..xd {
            for jb in 0..jd {
                let prod = shift(&right[jb][x], jd);
                let s = x_par[x].sign(parities[jb]);
                table[jb * n + jd + x] = prod.iter().map(|(i, c)| (*i, s * c)).collect();
                table[(jd + x) * n + jb] = prod;
            }
        }
        Ok(JordanModuleX {
            ops,
            e_total,
            j_dim: jd,
            ext: ProductTable { parities, table },
            right,
        })
    }

    pub fn dim(&self) -> usize {
        self.ext.dim() - self.j_dim
    }

    pub fn e_dim(&self) -> usize {
        self.e_total.dim()
    }

    pub fn parity(&self, x: usize) -> Parity {
        self.ext.parity(self.j_dim + x)
    }

    /// The split null extension `J ⊕ X`.
    pub fn null_extension(&self) -> &ProductTable {
        &self.ext
    }

    /// The element `x ⊕ p` of `X` for an operator `x ∈ E` and `p ∈ M`.
    pub fn element(&self, x: &[Q], p: &[Q]) -> Result<Vec<Q>> {
        let nm = self.ops.n();
        if p.len() != nm {
            return Err(Error::DimensionMismatch {
                expected: nm,
                found: p.len(),
            });
        }
        let mut out = self
            .e_total
            .coordinates(x)
            .ok_or_else(|| Error::InvalidSubalgebra("operator lies outside E".into()))?;
        out.extend_from_slice(p);
        Ok(out)
    }

    /// Splits an element of `X` into its operator and module parts.
    pub fn parts(&self, xi: &[Q]) -> (Vec<Q>, Vec<Q>) {
        let ed = self.e_dim();
        (self.e_total.combine(&xi[..ed]), xi[ed..].to_vec())
    }

    /// The right action `ξ · u` of `u ∈ J` on `ξ ∈ X`.
    pub fn act(&self, xi: &[Q], u: &[Q]) -> Result<Vec<Q>> {
        if xi.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: xi.len(),
            });
        }
        if u.len() != self.j_dim {
            return Err(Error::DimensionMismatch {
                expected: self.j_dim,
                found: u.len(),
            });
        }
        let mut out = vec![Q::zero(); self.dim()];
        for (jb, c) in u.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (x, a) in xi.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
                for (w, s) in &self.right[jb][x] {
                    out[*w] += c * a * s;
                }
            }
        }
        Ok(out)
    }

    /// `R_u` applied to a sparse vector of `X`, for `u ∈ J` given sparsely.
    fn apply_r(&self, u: &[(usize, Q)], xi: &[(usize, Q)]) -> SparseVec {
        let mut out = Vec::new();
        for (jb, c) in u {
            for (x, a) in xi {
                let ca = c * a;
                out.extend(self.right[*jb][*x].iter().map(|(w, s)| (*w, ca * s)));
            }
        }
        compact_sparse(out)
    }

    fn jp(&self, u: usize) -> Parity {
        self.ext.parity(u)
    }

    fn jmul(&self, a: &SparseVec, b: &SparseVec) -> SparseVec {
        self.ext.mul_sparse(a, b)
    }

    /// `(−1)^{|b||c|}[R_{ab},R_c] + (−1)^{|a||b|}[R_{ca},R_b] + (−1)^{|a||c|}[R_{bc},R_a] = 0`.
    fn jsam2(&self, a: usize, b: usize, c: usize) -> bool {
        let (pa, pb, pc) = (self.jp(a), self.jp(b), self.jp(c));
        let (ea, eb, ec) = (unit(a), unit(b), unit(c));
        let ab = self.jmul(&ea, &eb);
        let ca = self.jmul(&ec, &ea);
        let bc = self.jmul(&eb, &ec);
        let terms = [
            (pb.sign(pc), ab, pa + pb, ec, pc),
            (pa.sign(pb), ca, pc + pa, eb, pb),
            (pa.sign(pc), bc, pb + pc, ea, pa),
        ];
        (0..self.dim()).all(|x| {
            let ex = unit(x);
            let mut acc = Vec::new();
            for (s, u, pu, v, pv) in &terms {
                let uv = self.apply_r(u, &self.apply_r(v, &ex));
                let vu = self.apply_r(v, &self.apply_r(u, &ex));
                acc.push((*s, uv));
                acc.push((-(*s * pu.sign(*pv)), vu));
            }
            let refs: Vec<(Q, &SparseVec)> = acc.iter().map(|(s, v)| (*s, v)).collect();
            combine(&refs).is_empty()
        })
    }

    /// `R_cR_bR_a + (−1)^{|a||b|+|a||c|+|b||c|}R_aR_bR_c + (−1)^{|b||c|}R_{(ac)b}
    ///  = (−1)^{(|a|+|b|)|c|}R_{ab}R_c + (−1)^{|a||b|}R_{ac}R_b + (−1)^{|b||c|}R_{cb}R_a`.
    fn jsam3(&self, a: usize, b: usize, c: usize) -> bool {
        let (pa, pb, pc) = (self.jp(a), self.jp(b), self.jp(c));
        let (ea, eb, ec) = (unit(a), unit(b), unit(c));
        let ab = self.jmul(&ea, &eb);
        let ac = self.jmul(&ea, &ec);
        let cb = self.jmul(&ec, &eb);
        let acb = self.jmul(&ac, &eb);
        let one = Q::one();
        (0..self.dim()).all(|x| {
            let ex = unit(x);
            let r = |u: &SparseVec, v: &SparseVec| self.apply_r(u, v);
            let cba = r(&ec, &r(&eb, &r(&ea, &ex)));
            let abc = r(&ea, &r(&eb, &r(&ec, &ex)));
            let acb_x = r(&acb, &ex);
            let ab_c = r(&ab, &r(&ec, &ex));
            let ac_b = r(&ac, &r(&eb, &ex));
            let cb_a = r(&cb, &r(&ea, &ex));
            combine(&[
                (one, &cba),
                (pa.sign(pb) * pa.sign(pc) * pb.sign(pc), &abc),
                (pb.sign(pc), &acb_x),
                (-(pa + pb).sign(pc), &ab_c),
                (-pa.sign(pb), &ac_b),
                (-pb.sign(pc), &cb_a),
            ])
            .is_empty()
        })
    }

    /// (JSAM1)–(JSAM3) as operator identities for the right multiplications
    /// `R_d`, followed by (JSA1)–(JSA3) on the split null extension
    /// `J ⊕ X`.
    pub fn verify_axioms(&self, seed: u64, exec: Execution) -> Vec<AxiomResult> {
        let jd = self.j_dim;
        let xd = self.dim();
        let n = self.ext.dim();
        let jsam1 = sweep(
            "JSAM1",
            n,
            TupleSpace {
                arity: 2,
                j: jd,
                x: Some(xd),
            },
            seed,
            exec,
            |t| jsa1(&self.ext, t[0], t[1]),
        );
        let triples = TupleSpace {
            arity: 3,
            j: jd,
            x: None,
        };
        let jsam2 = sweep("JSAM2", jd, triples, seed, exec, |t| {
            self.jsam2(t[0], t[1], t[2])
        });
        let jsam3 = sweep("JSAM3", jd, triples, seed, exec, |t| {
            self.jsam3(t[0], t[1], t[2])
        });
        let mut out = vec![jsam1, jsam2, jsam3];
        out.extend(algebra_axioms(
            &self.ext,
            jd,
            Some(xd),
            " (J ⊕ X)",
            seed,
            exec,
        ));
        out
    }
}

/// Unknown entries of a degree-`α` map between graded bases, restricted by
/// a block pattern.
struct HomUnknowns {
    inp: usize,
    out: usize,
    slots: Vec<usize>,
    index: Vec<Option<usize>>,
}

impl HomUnknowns {
    fn new<F: Fn(usize, usize) -> bool>(
        out_par: &[Parity],
        in_par: &[Parity],
        alpha: Parity,
        allowed: F,
    ) -> Self {
        let (out, inp) = (out_par.len(), in_par.len());
        let mut slots = Vec::new();
        let mut index = vec![None; out * inp];
        for w in 0..out {
            for t in 0..inp {
                if out_par[w] == in_par[t] + alpha && allowed(w, t) {
                    index[w * inp + t] = Some(slots.len());
                    slots.push(w * inp + t);
                }
            }
        }
        HomUnknowns {
            inp,
            out,
            slots,
            index,
        }
    }

    fn get(&self, w: usize, t: usize) -> Option<usize> {
        self.index[w * self.inp + t]
    }

    fn expand(&self, coords: &[Q]) -> Vec<Q> {
        let mut v = vec![Q::zero(); self.out * self.inp];
        for (j, c) in coords.iter().enumerate() {
            v[self.slots[j]] = *c;
        }
        v
    }
}

/// Degree-`α` solutions `D: J → Y` of `D(uv) = D(u)v + (−1)^{α|u|} u D(v)`
/// for a block pattern of allowed entries, as flat `out×in` maps.
fn leibniz_solve<R, L>(
    j: &ProductTable,
    unk: &HomUnknowns,
    alpha: Parity,
    right: R,
    left: L,
    exec: Execution,
) -> Subspace
where
    R: Fn(usize, usize) -> SparseVec + Sync + Send,
    L: Fn(usize, usize) -> SparseVec + Sync + Send,
{
    let n = j.dim();
    let out = unk.out;
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u..n).map(move |v| (u, v))).collect();
    let blocks = par::map(exec, &pairs, |&(u, v)| {
        let mut rows: Vec<SparseVec> = vec![Vec::new(); out];
        for (t, c) in j.basis_product(u, v) {
            for (w, row) in rows.iter_mut().enumerate() {
                if let Some(k) = unk.get(w, *t) {
                    row.push((k, *c));
                }
            }
        }
        for y in 0..out {
            if let Some(k) = unk.get(y, u) {
                for (w, c) in right(y, v) {
                    rows[w].push((k, -c));
                }
            }
        }
        let s = alpha.sign(j.parity(u));
        for y in 0..out {
            if let Some(k) = unk.get(y, v) {
                for (w, c) in left(u, y) {
                    rows[w].push((k, -(s * c)));
                }
            }
        }
        rows.into_iter()
            .map(compact_sparse)
            .filter(|r| !r.is_empty())
            .collect::<Vec<_>>()
    });
    let rows: Vec<SparseVec> = blocks.into_iter().flatten().collect();
    let kernel = nullspace_of_rows_with(exec, unk.slots.len(), &rows);
    Subspace::span(out * unk.inp, kernel.basis().iter().map(|c| unk.expand(c)))
}

/// `Der_*(J)`: derivations of `J` preserving `A` and `M`, as flat
/// `dim J × dim J` operators.
pub fn der_star_j(j: &JordanQF, exec: Execution) -> GradedSubspace {
    let d = j.algebra_dim();
    let t = j.table();
    GradedSubspace::new(Parity::ALL.map(|alpha| {
        let unk = HomUnknowns::new(t.parities(), t.parities(), alpha, |w, s| (w < d) == (s < d));
        leibniz_solve(
            t,
            &unk,
            alpha,
            |y, v| t.basis_product(y, v).clone(),
            |u, y| t.basis_product(u, y).clone(),
            exec,
        )
    }))
}

/// `Der_*(J, X)`: derivations `J → X` sending `A` into `E` and `M` into
/// `M`, as flat `dim X × dim J` maps.
pub fn der_star_jx(j: &JordanQF, x: &JordanModuleX, exec: Execution) -> GradedSubspace {
    let d = j.algebra_dim();
    let ed = x.e_dim();
    let jd = j.dim();
    let ext = x.null_extension();
    let x_par: Vec<Parity> = (0..x.dim()).map(|i| x.parity(i)).collect();
    let back = |v: &SparseVec| v.iter().map(|(i, c)| (i - jd, *c)).collect::<SparseVec>();
    GradedSubspace::new(Parity::ALL.map(|alpha| {
        let unk = HomUnknowns::new(&x_par, j.table().parities(), alpha, |w, s| {
            (w < ed) == (s < d)
        });
        leibniz_solve(
            j.table(),
            &unk,
            alpha,
            |y, v| back(ext.basis_product(jd + y, v)),
            |u, y| back(ext.basis_product(u, jd + y)),
            exec,
        )
    }))
}

/// The `M → M` block of a flat `out×in` map whose `M` coordinates start at
/// `out_off` and `in_off`.
fn restrict_to_m(
    map: &[Q],
    out_len: usize,
    in_len: usize,
    out_off: usize,
    in_off: usize,
) -> Vec<Q> {
    let nm = in_len - in_off;
    debug_assert_eq!(out_len - out_off, nm);
    let mut r = Vec::with_capacity(nm * nm);
    for w in 0..nm {
        for t in 0..nm {
            r.push(map[(out_off + w) * in_len + in_off + t]);
        }
    }
    r
}

/// Restriction-to-`M` checks for one derivation space.
#[derive(Clone, Debug, Serialize)]
pub struct RestrictionReport {
    pub source_dim: usize,
    pub target_dim: usize,
    pub injective: bool,
    pub image_in_target: bool,
    pub target_in_image: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bracket_compatible: Option<bool>,
}

impl RestrictionReport {
    pub fn is_isomorphism(&self) -> bool {
        self.source_dim == self.target_dim
            && self.injective
            && self.image_in_target
            && self.target_in_image
            && self.bracket_compatible != Some(false)
    }
}

fn restriction_report<F>(
    source: &GradedSubspace,
    target: &GradedSubspace,
    nm: usize,
    restrict: F,
) -> RestrictionReport
where
    F: Fn(&[Q]) -> Vec<Q>,
{
    let mut injective = true;
    let mut into = true;
    let mut onto = true;
    for p in Parity::ALL {
        let image = Subspace::span(nm * nm, source.part(p).basis().iter().map(|v| restrict(v)));
        injective &= image.dim() == source.part(p).dim();
        into &= image.is_subset_of(target.part(p)).expect("same ambient");
        onto &= target.part(p).is_subset_of(&image).expect("same ambient");
    }
    RestrictionReport {
        source_dim: source.dim(),
        target_dim: target.dim(),
        injective,
        image_in_target: into,
        target_in_image: onto,
        bracket_compatible: None,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DerStarReport {
    /// `Der_*(J) → S^(1) ∩ S^(2)`.
    pub der_j: RestrictionReport,
    /// `Der_*(J, X) → T^(1) ∩ T^(2)`.
    pub der_jx: RestrictionReport,
}

impl DerStarReport {
    pub fn all_pass(&self) -> bool {
        self.der_j.is_isomorphism() && self.der_jx.is_isomorphism()
    }
}

/// Solves both derivation spaces and checks the restriction maps against
/// the independently solved `S^(1) ∩ S^(2)` and `T^(1) ∩ T^(2)`.
pub fn der_star_isos(
    j: &JordanQF,
    x: &JordanModuleX,
    ctx: &StContext,
    exec: Execution,
) -> DerStarReport {
    let nm = j.ops().n();
    let d = j.algebra_dim();
    let jd = j.dim();
    let xd = x.dim();
    let ed = x.e_dim();
    let dj = der_star_j(j, exec);
    let djx = der_star_jx(j, x, exec);
    let s12 = ctx.s12(exec);
    let t12 = ctx.t12(exec);
    let res_j = |v: &[Q]| restrict_to_m(v, jd, jd, d, d);
    let res_x = |v: &[Q]| restrict_to_m(v, xd, jd, ed, d);
    let mut der_j = restriction_report(&dj, &s12, nm, res_j);
    let basis = dj.homogeneous_basis();
    let total = dj.total();
    let compatible = par::find_first(exec, basis.len(), |i| {
        let (p1, d1) = &basis[i];
        basis[i..].iter().find_map(|(p2, d2)| {
            let br = op_bracket(jd, d1, *p1, d2, *p2);
            let ok = total.contains(&br)
                && j.is_derivation_flat(&br, *p1 + *p2)
                && res_j(&br) == op_bracket(nm, &res_j(d1), *p1, &res_j(d2), *p2);
            (!ok).then_some(())
        })
    });
    der_j.bracket_compatible = Some(compatible.is_none());
    let der_jx = restriction_report(&djx, &t12, nm, res_x);
    DerStarReport { der_j, der_jx }
}

#[derive(Clone, Debug, Serialize)]
pub struct JordanDims {
    #[serde(rename = "J")]
    pub j: usize,
    #[serde(rename = "X")]
    pub x: usize,
    #[serde(rename = "E")]
    pub e: usize,
}

/// The `jordan` report: axioms of `J`, of `X`, and the restriction maps.
#[derive(Clone, Debug, Serialize)]
pub struct JordanReport {
    pub dims: JordanDims,
    pub algebra: Vec<AxiomResult>,
    pub module: Vec<AxiomResult>,
    pub der_star: DerStarReport,
}

impl JordanReport {
    pub fn all_pass(&self) -> bool {
        self.algebra.iter().chain(&self.module).all(|r| r.pass) && self.der_star.all_pass()
    }
}

/// Runs the whole Jordan suite for the pair `(q, E)` held by `ctx`.
pub fn jordan_suite(ctx: &StContext, seed: u64, exec: Execution) -> Result<JordanReport> {
    let j = JordanQF::new(Arc::clone(ctx.ops()));
    let x = JordanModuleX::new(&j, ctx.e())?;
    Ok(JordanReport {
        dims: JordanDims {
            j: j.dim(),
            x: x.dim(),
            e: x.e_dim(),
        },
        algebra: j.verify_axioms(seed, exec),
        module: x.verify_axioms(seed, exec),
        der_star: der_star_isos(&j, &x, ctx, exec),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::q;
    use crate::supermodule::{FreeSuperModule, QuadraticForm};
    use crate::superring::presets;

    fn ops_diag(alg: crate::superring::SuperAlgebraTable, entries: &[i128]) -> Arc<FormOps> {
        let entries: Vec<Q> = entries.iter().map(|e| q(*e)).collect();
        let form = QuadraticForm::diagonal(Arc::new(alg), &entries).unwrap();
        Arc::new(FormOps::new(Arc::new(form)))
    }

    fn eosp_ctx(ops: Arc<FormOps>) -> StContext {
        let e = ops.eosp_basis();
        StContext::new(ops, e).unwrap()
    }

    #[test]
    fn unit_and_form_products() {
        let j = JordanQF::new(ops_diag(presets::rationals(), &[1, 1]));
        let one = j.element(&[q(1)], &[q(0), q(0)]).unwrap();
        let x = j.element(&[q(3)], &[q(-2), q(5)]).unwrap();
        assert_eq!(j.mul(&one, &x).unwrap(), x);
        let m = j.element(&[q(0)], &[q(1), q(2)]).unwrap();
        let n = j.element(&[q(0)], &[q(4), q(-1)]).unwrap();
        // q(m, n) = 1·4 + 2·(−1)
        assert_eq!(j.mul(&m, &n).unwrap(), vec![q(2), q(0), q(0)]);
        assert!(j.mul(&m, &[q(1)]).is_err());
    }

    #[test]
    fn axioms_hold_over_rationals_and_grassmann() {
        for ops in [
            ops_diag(presets::rationals(), &[1, 1]),
            ops_diag(presets::rationals(), &[1, 1, 1]),
        ] {
            let j = JordanQF::new(ops);
            assert!(j
                .verify_axioms(1, Execution::best())
                .iter()
                .all(|r| r.pass && r.exhaustive));
        }
        let alg = Arc::new(presets::grassmann(1));
        let module = FreeSuperModule::new(alg, vec![Parity::Even, Parity::Odd]).unwrap();
        let form = QuadraticForm::zero(module);
        let j = JordanQF::new(Arc::new(FormOps::new(Arc::new(form))));
        assert!(j.verify_axioms(1, Execution::best()).iter().all(|r| r.pass));
    }

    #[test]
    fn corrupted_table_fails_jsa3_with_witness() {
        let mut j = JordanQF::new(ops_diag(presets::rationals(), &[1, 1]));
        // m1 ∘ m1 = 1 + m2
        j.corrupt_product(1, 1, 2, q(1));
        let rep = j.verify_axioms(1, Execution::Sequential);
        let jsa1 = rep.iter().find(|r| r.axiom == "JSA1").unwrap();
        assert!(jsa1.pass);
        let jsa3 = rep.iter().find(|r| r.axiom == "JSA3").unwrap();
        assert!(!jsa3.pass);
        assert!(jsa3.witness.is_some());
    }

    #[test]
    fn module_axioms_for_eosp_over_rationals() {
        let ops = ops_diag(presets::rationals(), &[1, 1]);
        let j = JordanQF::new(Arc::clone(&ops));
        let x = JordanModuleX::new(&j, &ops.eosp_basis()).unwrap();
        let rep = x.verify_axioms(5, Execution::best());
        assert!(rep.iter().all(|r| r.pass), "{rep:?}");
    }

    #[test]
    fn module_axioms_for_zero_form() {
        let alg = Arc::new(presets::rationals());
        let module = FreeSuperModule::new(alg, vec![Parity::Even, Parity::Even]).unwrap();
        let ops = Arc::new(FormOps::new(Arc::new(QuadraticForm::zero(module))));
        let j = JordanQF::new(Arc::clone(&ops));
        let osp = ops.osp_basis(Execution::best());
        let x = JordanModuleX::new(&j, &osp).unwrap();
        assert!(x.verify_axioms(5, Execution::best()).iter().all(|r| r.pass));
    }

    #[test]
    fn action_matches_formula_on_random_inputs() {
        let ops = ops_diag(presets::rationals(), &[1, 2, 1]);
        let j = JordanQF::new(Arc::clone(&ops));
        let e = ops.eosp_basis();
        let x = JordanModuleX::new(&j, &e).unwrap();
        let eb = e.total();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut rnd = |len: usize| -> Vec<Q> {
            (0..len)
                .map(|_| Q::from_integer(rng.gen_range(-3..=3)))
                .collect()
        };
        for _ in 0..20 {
            let xop = eb.combine(&rnd(eb.dim()));
            let p = rnd(3);
            let a = rnd(1);
            let m = rnd(3);
            let xi = x.element(&xop, &p).unwrap();
            let got = x.act(&xi, &j.element(&a, &m).unwrap()).unwrap();
            let (gx, gp) = x.parts(&got);
            let mut want_x = xop.iter().map(|c| c * a[0]).collect::<Vec<_>>();
            for (w, e) in want_x.iter_mut().zip(ops.make_e(&p, &m)) {
                *w += e;
            }
            let want_p: Vec<Q> = crate::osp::op_apply(3, &xop, &m)
                .iter()
                .zip(&p)
                .map(|(xm, pc)| xm + pc * a[0])
                .collect();
            assert_eq!(gx, want_x);
            assert_eq!(gp, want_p);
        }
    }

    #[test]
    fn der_star_matches_s12_for_so5() {
        let ctx = eosp_ctx(ops_diag(presets::rationals(), &[1, 1, 1]));
        let rep = jordan_suite(&ctx, 7, Execution::best()).unwrap();
        assert!(rep.all_pass(), "{rep:?}");
        assert_eq!(rep.der_star.der_j.source_dim, 3);
        assert_eq!(rep.der_star.der_j.target_dim, 3);
    }

    fn ops_gram(
        alg: crate::superring::SuperAlgebraTable,
        degrees: Vec<Parity>,
        gram: Vec<Vec<Vec<i128>>>,
    ) -> Arc<FormOps> {
        let module = FreeSuperModule::new(Arc::new(alg), degrees).unwrap();
        let gram = gram
            .into_iter()
            .map(|r| {
                r.into_iter()
                    .map(|c| c.into_iter().map(q).collect())
                    .collect()
            })
            .collect();
        Arc::new(FormOps::new(Arc::new(
            QuadraticForm::new(module, gram).unwrap(),
        )))
    }

    #[test]
    fn suite_passes_with_odd_generators() {
        use Parity::{Even, Odd};
        let g1 = ops_gram(
            presets::grassmann(1),
            vec![Even, Even, Odd],
            vec![
                vec![vec![1, 0], vec![0, 0], vec![0, 0]],
                vec![vec![0, 0], vec![1, 0], vec![0, 0]],
                vec![vec![0, 0], vec![0, 0], vec![0, 0]],
            ],
        );
        let symplectic = ops_gram(
            presets::rationals(),
            vec![Even, Odd, Odd],
            vec![
                vec![vec![1], vec![0], vec![0]],
                vec![vec![0], vec![0], vec![1]],
                vec![vec![0], vec![-1], vec![0]],
            ],
        );
        let dual = ops_diag(presets::dual_numbers(), &[1, 1, 1]);
        for ops in [g1, symplectic, dual] {
            let rep = jordan_suite(&eosp_ctx(ops), 3, Execution::best()).unwrap();
            assert!(
                rep.all_pass(),
                "{}",
                serde_json::to_string_pretty(&rep).unwrap()
            );
        }
    }

    #[test]
    fn zero_derivation_restricts_to_zero() {
        let z = vec![Q::zero(); 16];
        assert!(restrict_to_m(&z, 4, 4, 1, 1).iter().all(Q::is_zero));
    }
}
