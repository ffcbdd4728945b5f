//! Free supermodules over a table algebra and their quadratic forms.
//!
//! A free module `M = ⊕ b_i A` of rank `r` over an algebra of dimension `d`
//! is handled through its underlying ℚ-space of dimension `r·d`, with basis
//! `b_i e_k` at index `i·d + k` and degree `β_i + δ_k`. Coefficients act on
//! the right; the left action is `a·m = (-1)^{|a||m|} m·a`.

use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::parity::Parity;
use crate::solver::{nullspace_of_rows, RationalMatrix, SparseVec, Subspace, Q};
use crate::superring::{compact_sparse, AlgebraElement, SuperAlgebraTable};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeSuperModule {
    algebra: Arc<SuperAlgebraTable>,
    degrees: Vec<Parity>,
}

impl FreeSuperModule {
    pub fn new(algebra: Arc<SuperAlgebraTable>, degrees: Vec<Parity>) -> Result<Self> {
        if degrees.is_empty() {
            return Err(Error::Shape("module rank must be at least 1".into()));
        }
        Ok(FreeSuperModule { algebra, degrees })
    }

    pub fn algebra(&self) -> &Arc<SuperAlgebraTable> {
        &self.algebra
    }

    pub fn rank(&self) -> usize {
        self.degrees.len()
    }

    pub fn degrees(&self) -> &[Parity] {
        &self.degrees
    }

    pub fn generator_degree(&self, i: usize) -> Parity {
        self.degrees[i]
    }

    /// Dimension of the underlying ℚ-space.
    pub fn dim(&self) -> usize {
        self.rank() * self.algebra.dim()
    }

    pub fn index(&self, i: usize, k: usize) -> usize {
        i * self.algebra.dim() + k
    }

    /// `(generator, algebra basis index)` of a ℚ-basis index.
    pub fn split(&self, u: usize) -> (usize, usize) {
        let d = self.algebra.dim();
        (u / d, u % d)
    }

    pub fn degree(&self, u: usize) -> Parity {
        let (i, k) = self.split(u);
        self.degrees[i] + self.algebra.degree(k)
    }

    pub fn zero(&self) -> Vec<Q> {
        vec![Q::zero(); self.dim()]
    }

    pub fn basis_vector(&self, u: usize) -> Vec<Q> {
        let mut v = self.zero();
        v[u] = Q::one();
        v
    }

    /// The generator `b_i`.
    pub fn generator(&self, i: usize) -> Vec<Q> {
        self.basis_vector(self.index(i, self.algebra.unit_index()))
    }

    /// Builds `Σ b_i a_i` from right coefficients.
    pub fn from_coefficients(&self, coeffs: &[AlgebraElement]) -> Result<Vec<Q>> {
        if coeffs.len() != self.rank() {
            return Err(Error::DimensionMismatch {
                expected: self.rank(),
                found: coeffs.len(),
            });
        }
        let mut v = Vec::with_capacity(self.dim());
        for a in coeffs {
            if a.coeffs().len() != self.algebra.dim() {
                return Err(Error::DimensionMismatch {
                    expected: self.algebra.dim(),
                    found: a.coeffs().len(),
                });
            }
            v.extend_from_slice(a.coeffs());
        }
        Ok(v)
    }

    pub fn coefficients(&self, m: &[Q]) -> Vec<AlgebraElement> {
        m.chunks(self.algebra.dim())
            .map(|c| AlgebraElement::from_coeffs(c.to_vec()))
            .collect()
    }

    pub fn coefficient(&self, m: &[Q], i: usize) -> Vec<Q> {
        let d = self.algebra.dim();
        m[i * d..(i + 1) * d].to_vec()
    }

    pub fn homogeneous_parts(&self, m: &[Q]) -> [Vec<Q>; 2] {
        let mut parts = [self.zero(), self.zero()];
        for (u, c) in m.iter().enumerate() {
            if !c.is_zero() {
                parts[self.degree(u).index()][u] = *c;
            }
        }
        parts
    }

    /// Degree of a homogeneous vector (zero counts as even); `None` if mixed.
    pub fn parity_of(&self, m: &[Q]) -> Option<Parity> {
        let mut seen = [false, false];
        for (u, c) in m.iter().enumerate() {
            if !c.is_zero() {
                seen[self.degree(u).index()] = true;
            }
        }
        match seen {
            [true, true] => None,
            [_, true] => Some(Parity::Odd),
            _ => Some(Parity::Even),
        }
    }

    /// `m · a`
    pub fn right_mul(&self, m: &[Q], a: &[Q]) -> Vec<Q> {
        let d = self.algebra.dim();
        let mut out = Vec::with_capacity(self.dim());
        for chunk in m.chunks(d) {
            out.extend(self.algebra.mul_raw(chunk, a));
        }
        out
    }

    /// `a · m`, evaluated per homogeneous component of `a`.
    pub fn left_mul(&self, a: &[Q], m: &[Q]) -> Vec<Q> {
        let d = self.algebra.dim();
        let mut out = self.zero();
        for (pi, part) in self.split_algebra(a).iter().enumerate() {
            let p = Parity::ALL[pi];
            for (i, chunk) in m.chunks(d).enumerate() {
                let sign = p.sign(self.degrees[i]);
                let prod = self.algebra.mul_raw(part, chunk);
                for (k, x) in prod.into_iter().enumerate() {
                    if !x.is_zero() {
                        out[i * d + k] += sign * x;
                    }
                }
            }
        }
        out
    }

    fn split_algebra(&self, a: &[Q]) -> [Vec<Q>; 2] {
        let d = self.algebra.dim();
        let mut parts = [vec![Q::zero(); d], vec![Q::zero(); d]];
        for (k, c) in a.iter().enumerate() {
            parts[self.algebra.degree(k).index()][k] = *c;
        }
        parts
    }

    /// Matrix of `m ↦ a·m` on the ℚ-basis (column `u` is the image of `u`).
    pub fn left_mul_matrix(&self, a: &[Q]) -> RationalMatrix {
        self.matrix_of(|v| self.left_mul(a, v))
    }

    /// Matrix of `m ↦ m·a`.
    pub fn right_mul_matrix(&self, a: &[Q]) -> RationalMatrix {
        self.matrix_of(|v| self.right_mul(v, a))
    }

    pub fn matrix_of<F: Fn(&[Q]) -> Vec<Q>>(&self, f: F) -> RationalMatrix {
        let n = self.dim();
        let mut m = RationalMatrix::zeros(n, n);
        for u in 0..n {
            let col = f(&self.basis_vector(u));
            for (w, x) in col.into_iter().enumerate() {
                if !x.is_zero() {
                    m.set(w, u, x);
                }
            }
        }
        m
    }

    /// Submodule on a subset of generators, with the same algebra.
    pub fn restrict(&self, generators: &[usize]) -> Result<FreeSuperModule> {
        FreeSuperModule::new(
            Arc::clone(&self.algebra),
            generators.iter().map(|i| self.degrees[*i]).collect(),
        )
    }
}

/// Result of [`QuadraticForm::diagonalizability`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Diagonalizability {
    InvertiblyDiagonalizable,
    /// Pairing `i ↦ i̲` on generator indices.
    AlmostDiagonalizable(Vec<usize>),
    Neither,
}

impl Diagonalizability {
    pub fn pairing(&self, rank: usize) -> Option<Vec<usize>> {
        match self {
            Diagonalizability::InvertiblyDiagonalizable => Some((0..rank).collect()),
            Diagonalizability::AlmostDiagonalizable(p) => Some(p.clone()),
            Diagonalizability::Neither => None,
        }
    }
}

/// An A-valued even bilinear form given by its Gram matrix `G_ij = q(b_i, b_j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticForm {
    module: FreeSuperModule,
    gram: Vec<Vec<Q>>,
    // q(u, v) on ℚ-basis pairs, row-major over the underlying space
    table: Vec<SparseVec>,
}

impl QuadraticForm {
    /// Builds and validates (degree and supersymmetry).
    pub fn new(module: FreeSuperModule, gram: Vec<Vec<Vec<Q>>>) -> Result<Self> {
        let q = Self::new_unchecked(module, gram)?;
        if let Some((axiom, i, j)) = q.violation() {
            return Err(Error::InvalidForm { axiom, i, j });
        }
        Ok(q)
    }

    /// Builds without checking the form axioms (shapes are still checked).
    pub fn new_unchecked(module: FreeSuperModule, gram: Vec<Vec<Vec<Q>>>) -> Result<Self> {
        let r = module.rank();
        let d = module.algebra().dim();
        if gram.len() != r || gram.iter().any(|row| row.len() != r) {
            return Err(Error::Shape(format!("Gram matrix must be {r}x{r}")));
        }
        let mut flat = Vec::with_capacity(r * r);
        for row in gram {
            for entry in row {
                if entry.len() != d {
                    return Err(Error::Shape(format!(
                        "Gram entry has {} coefficients, algebra has dimension {d}",
                        entry.len()
                    )));
                }
                flat.push(entry);
            }
        }
        let mut q = QuadraticForm {
            module,
            gram: flat,
            table: Vec::new(),
        };
        q.table = q.build_table();
        Ok(q)
    }

    pub fn zero(module: FreeSuperModule) -> Self {
        let r = module.rank();
        let d = module.algebra().dim();
        Self::new(module, vec![vec![vec![Q::zero(); d]; r]; r]).expect("zero form is valid")
    }

    /// Diagonal form `diag(c_1, …, c_r)` with scalar entries on even generators.
    pub fn diagonal(algebra: Arc<SuperAlgebraTable>, entries: &[Q]) -> Result<Self> {
        let r = entries.len();
        let module = FreeSuperModule::new(Arc::clone(&algebra), vec![Parity::Even; r])?;
        let gram = (0..r)
            .map(|i| {
                (0..r)
                    .map(|j| {
                        if i == j {
                            algebra.scalar(entries[i]).into_coeffs()
                        } else {
                            algebra.zero().into_coeffs()
                        }
                    })
                    .collect()
            })
            .collect();
        Self::new(module, gram)
    }

    /// The hyperbolic space `H(I, A)` with `|I| = n_pairs`: basis
    /// `h_1, h_{-1}, h_2, h_{-2}, …`, all even, `q(h_{σi}, h_{-μj}) = δ_{σμ} δ_{ij}`.
    pub fn hyperbolic(n_pairs: usize, algebra: Arc<SuperAlgebraTable>) -> Result<Self> {
        if n_pairs == 0 {
            return Err(Error::Shape(
                "hyperbolic space needs at least one pair".into(),
            ));
        }
        let r = 2 * n_pairs;
        let module = FreeSuperModule::new(Arc::clone(&algebra), vec![Parity::Even; r])?;
        let gram = (0..r)
            .map(|i| {
                (0..r)
                    .map(|j| {
                        if i / 2 == j / 2 && i != j {
                            algebra.one().into_coeffs()
                        } else {
                            algebra.zero().into_coeffs()
                        }
                    })
                    .collect()
            })
            .collect();
        Self::new(module, gram)
    }

    fn build_table(&self) -> Vec<SparseVec> {
        let m = &self.module;
        let a = m.algebra();
        let n = m.dim();
        let mut table = Vec::with_capacity(n * n);
        for u in 0..n {
            let (i, k) = m.split(u);
            for v in 0..n {
                let (j, l) = m.split(v);
                let g = self.gram_entry(i, j);
                // q(b_i e_k, b_j e_l) = (-1)^{δ_k β_j} G_ij e_k e_l
                let sign = a.degree(k).sign(m.generator_degree(j));
                let ekl = a.product(k, l);
                let mut out: SparseVec = Vec::new();
                for (s, gs) in g.iter().enumerate() {
                    if gs.is_zero() {
                        continue;
                    }
                    for (t, c) in ekl {
                        for (o, c2) in a.product(s, *t) {
                            out.push((*o, sign * gs * c * c2));
                        }
                    }
                }
                table.push(compact_sparse(out));
            }
        }
        table
    }

    pub fn module(&self) -> &FreeSuperModule {
        &self.module
    }

    pub fn algebra(&self) -> &Arc<SuperAlgebraTable> {
        self.module.algebra()
    }

    pub fn rank(&self) -> usize {
        self.module.rank()
    }

    pub fn gram_entry(&self, i: usize, j: usize) -> &[Q] {
        &self.gram[i * self.rank() + j]
    }

    pub fn gram(&self) -> Vec<Vec<Vec<Q>>> {
        let r = self.rank();
        (0..r)
            .map(|i| (0..r).map(|j| self.gram_entry(i, j).to_vec()).collect())
            .collect()
    }

    /// First violated axiom with its generator pair, if any.
    pub fn violation(&self) -> Option<(&'static str, usize, usize)> {
        let a = self.algebra();
        let r = self.rank();
        for i in 0..r {
            for j in 0..r {
                let g = self.gram_entry(i, j);
                let want = self.module.generator_degree(i) + self.module.generator_degree(j);
                match a.parity_of(g) {
                    Some(p) if p == want || crate::solver::is_zero_vec(g) => {}
                    _ => return Some(("degree", i, j)),
                }
            }
        }
        for i in 0..r {
            for j in i..r {
                let s = self
                    .module
                    .generator_degree(i)
                    .sign(self.module.generator_degree(j));
                let gij = self.gram_entry(i, j);
                let gji = self.gram_entry(j, i);
                if gji.iter().zip(gij).any(|(x, y)| *x != s * y) {
                    return Some(("supersymmetry", i, j));
                }
            }
        }
        None
    }

    /// `q(u, v)` on ℚ-basis indices.
    pub fn eval_basis(&self, u: usize, v: usize) -> &SparseVec {
        &self.table[u * self.module.dim() + v]
    }

    /// `q(m, n)`, bilinear over ℚ.
    pub fn eval(&self, m: &[Q], n: &[Q]) -> Vec<Q> {
        let d = self.algebra().dim();
        let dim = self.module.dim();
        let mut out = vec![Q::zero(); d];
        for (u, mu) in m.iter().enumerate() {
            if mu.is_zero() {
                continue;
            }
            for (v, nv) in n.iter().enumerate() {
                if nv.is_zero() {
                    continue;
                }
                let c = mu * nv;
                for (k, x) in &self.table[u * dim + v] {
                    out[*k] += c * x;
                }
            }
        }
        out
    }

    pub fn eval_checked(&self, m: &[Q], n: &[Q]) -> Result<Vec<Q>> {
        let dim = self.module.dim();
        for v in [m, n] {
            if v.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: v.len(),
                });
            }
        }
        Ok(self.eval(m, n))
    }

    /// Block-diagonal sum on the concatenated generators.
    pub fn orthogonal_sum(&self, other: &QuadraticForm) -> Result<QuadraticForm> {
        if self.algebra() != other.algebra() {
            return Err(Error::Shape(
                "orthogonal sum of forms over different algebras".into(),
            ));
        }
        let (r1, r2) = (self.rank(), other.rank());
        let d = self.algebra().dim();
        let degrees = self
            .module
            .degrees()
            .iter()
            .chain(other.module.degrees())
            .copied()
            .collect();
        let module = FreeSuperModule::new(Arc::clone(self.algebra()), degrees)?;
        let zero = vec![Q::zero(); d];
        let gram = (0..r1 + r2)
            .map(|i| {
                (0..r1 + r2)
                    .map(|j| match (i < r1, j < r1) {
                        (true, true) => self.gram_entry(i, j).to_vec(),
                        (false, false) => other.gram_entry(i - r1, j - r1).to_vec(),
                        _ => zero.clone(),
                    })
                    .collect()
            })
            .collect();
        QuadraticForm::new_unchecked(module, gram)
    }

    /// The form restricted to a subset of generators (in the given order).
    pub fn restrict(&self, generators: &[usize]) -> Result<QuadraticForm> {
        let module = self.module.restrict(generators)?;
        let gram = generators
            .iter()
            .map(|i| {
                generators
                    .iter()
                    .map(|j| self.gram_entry(*i, *j).to_vec())
                    .collect()
            })
            .collect();
        QuadraticForm::new_unchecked(module, gram)
    }

    /// `{m : q(m, n) = 0 for all n}` as a subspace of the underlying ℚ-space.
    pub fn radical(&self) -> Subspace {
        let n = self.module.dim();
        let d = self.algebra().dim();
        let mut rows = Vec::with_capacity(n * d);
        for v in 0..n {
            let mut per_k: Vec<SparseVec> = vec![Vec::new(); d];
            for u in 0..n {
                for (k, x) in self.eval_basis(u, v) {
                    per_k[*k].push((u, *x));
                }
            }
            rows.extend(per_k);
        }
        nullspace_of_rows(n, rows)
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.radical().is_zero()
    }

    /// Checks the presented basis only.
    pub fn diagonalizability(&self) -> Diagonalizability {
        let r = self.rank();
        let a = self.algebra();
        let mut pairing = Vec::with_capacity(r);
        for i in 0..r {
            let nonzero: Vec<usize> = (0..r)
                .filter(|j| !crate::solver::is_zero_vec(self.gram_entry(i, *j)))
                .collect();
            if nonzero.len() != 1 {
                return Diagonalizability::Neither;
            }
            let j = nonzero[0];
            let g = AlgebraElement::from_coeffs(self.gram_entry(i, j).to_vec());
            if !a.is_invertible(&g) {
                return Diagonalizability::Neither;
            }
            pairing.push(j);
        }
        if pairing.iter().enumerate().any(|(i, j)| pairing[*j] != i) {
            return Diagonalizability::Neither;
        }
        if pairing.iter().enumerate().all(|(i, j)| i == *j) {
            Diagonalizability::InvertiblyDiagonalizable
        } else {
            Diagonalizability::AlmostDiagonalizable(pairing)
        }
    }

    /// Whether the generator `i` has a zero row (lies in an A-basis of the radical).
    pub fn is_null_generator(&self, i: usize) -> bool {
        (0..self.rank()).all(|j| crate::solver::is_zero_vec(self.gram_entry(i, j)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::{q, to_dense};
    use crate::superring::presets;

    fn form(
        algebra: SuperAlgebraTable,
        degrees: Vec<Parity>,
        gram: Vec<Vec<Vec<i128>>>,
    ) -> Result<QuadraticForm> {
        let module = FreeSuperModule::new(Arc::new(algebra), degrees)?;
        let gram = gram
            .into_iter()
            .map(|r| {
                r.into_iter()
                    .map(|e| e.into_iter().map(q).collect())
                    .collect()
            })
            .collect();
        QuadraticForm::new(module, gram)
    }

    #[test]
    fn hyperbolic_plane() {
        let h = QuadraticForm::hyperbolic(1, Arc::new(presets::rationals())).unwrap();
        assert_eq!(h.rank(), 2);
        assert_eq!(
            h.gram(),
            vec![vec![vec![q(0)], vec![q(1)]], vec![vec![q(1)], vec![q(0)]]]
        );
        assert!(h.module().degrees().iter().all(|p| *p == Parity::Even));
        let (h1, hm1) = (h.module().generator(0), h.module().generator(1));
        assert_eq!(h.eval(&h1, &hm1), vec![q(1)]);
        assert_eq!(h.eval(&h1, &h1), vec![q(0)]);
        assert!(h.radical().is_zero());
        assert_eq!(
            h.diagonalizability(),
            Diagonalizability::AlmostDiagonalizable(vec![1, 0])
        );
    }

    #[test]
    fn hyperbolic_plane_is_congruent_to_a_diagonal_form() {
        // P^T G P with P = [[1,1],[1,-1]] gives diag(2,-2)
        let g = RationalMatrix::from_rows(vec![vec![q(0), q(1)], vec![q(1), q(0)]]).unwrap();
        let p = RationalMatrix::from_rows(vec![vec![q(1), q(1)], vec![q(1), q(-1)]]).unwrap();
        let c = p.transpose().matmul(&g).matmul(&p);
        assert_eq!(
            c,
            RationalMatrix::from_rows(vec![vec![q(2), q(0)], vec![q(0), q(-2)]]).unwrap()
        );
        let a = Arc::new(presets::rationals());
        let d = QuadraticForm::diagonal(a, &[q(2), q(-2)]).unwrap();
        assert_eq!(
            d.diagonalizability(),
            Diagonalizability::InvertiblyDiagonalizable
        );
    }

    #[test]
    fn zero_argument_gives_zero() {
        let f = form(
            presets::grassmann(1),
            vec![Parity::Even, Parity::Odd],
            vec![vec![vec![1, 0], vec![0, 0]], vec![vec![0, 0], vec![0, 0]]],
        )
        .unwrap();
        let m = vec![q(3), q(1), q(-2), q(5)];
        assert_eq!(f.eval(&m, &f.module().zero()), vec![q(0), q(0)]);
    }

    #[test]
    fn odd_generator_over_g1_pairs_to_zero() {
        let f = form(
            presets::grassmann(1),
            vec![Parity::Odd],
            vec![vec![vec![0, 0]]],
        )
        .unwrap();
        let m = f.module();
        let b1_xi = m.basis_vector(m.index(0, 1));
        let b1 = m.generator(0);
        assert_eq!(f.eval(&b1_xi, &b1), vec![q(0), q(0)]);
        assert!(matches!(
            form(
                presets::grassmann(1),
                vec![Parity::Odd],
                vec![vec![vec![1, 0]]]
            ),
            Err(Error::InvalidForm { .. })
        ));
    }

    #[test]
    fn basis_formula_matches_bilinearity_chains() {
        // q(b_i a, b_j c) expanded two ways: via q(m a, n) = q(m, a n) and
        // right linearity q(m, n c) = q(m, n) c, for homogeneous a, c.
        let g2 = presets::grassmann(2);
        let f = form(
            g2.clone(),
            vec![Parity::Even, Parity::Odd],
            vec![
                vec![vec![1, 0, 0, 2], vec![0, 1, 0, 0]],
                vec![vec![0, 1, 0, 0], vec![0, 0, 0, 0]],
            ],
        )
        .unwrap();
        let m = f.module();
        for u in 0..m.dim() {
            for v in 0..m.dim() {
                let (i, k) = m.split(u);
                let (j, l) = m.split(v);
                let ek = g2.basis_element(k).into_coeffs();
                let el = g2.basis_element(l).into_coeffs();
                // q(b_i e_k, b_j e_l) = q(b_i, e_k (b_j e_l))
                let inner = m.left_mul(&ek, &m.basis_vector(v));
                let lhs = to_dense(f.eval_basis(u, v), g2.dim());
                let mid = f.eval(&m.generator(i), &inner);
                assert_eq!(lhs, mid, "chain 1 at ({u},{v})");
                // q(b_i, b_j e_l) = G_ij e_l
                let right = f.eval(&m.generator(i), &m.basis_vector(v));
                assert_eq!(right, g2.mul_raw(f.gram_entry(i, j), &el));
            }
        }
    }

    #[test]
    fn radicals() {
        let eps = presets::dual_numbers();
        let f = form(eps, vec![Parity::Even], vec![vec![vec![0, 1]]]).unwrap();
        let rad = f.radical();
        assert_eq!(rad.dim(), 1);
        assert!(rad.contains(&[q(0), q(1)]));

        let z = QuadraticForm::zero(
            FreeSuperModule::new(
                Arc::new(presets::grassmann(1)),
                vec![Parity::Even, Parity::Odd],
            )
            .unwrap(),
        );
        assert_eq!(z.radical().dim(), 4);
    }

    #[test]
    fn diagonalizability_classes() {
        let a = Arc::new(presets::rationals());
        let d = QuadraticForm::diagonal(a, &[q(1), q(1), q(1)]).unwrap();
        assert_eq!(
            d.diagonalizability(),
            Diagonalizability::InvertiblyDiagonalizable
        );
        let eps = form(
            presets::dual_numbers(),
            vec![Parity::Even; 2],
            vec![vec![vec![0, 0], vec![0, 1]], vec![vec![0, 1], vec![0, 0]]],
        )
        .unwrap();
        assert_eq!(eps.diagonalizability(), Diagonalizability::Neither);
    }

    #[test]
    fn orthogonal_sum_of_hyperbolic_planes() {
        let a = Arc::new(presets::rationals());
        let h1 = QuadraticForm::hyperbolic(1, Arc::clone(&a)).unwrap();
        let h2 = QuadraticForm::hyperbolic(2, a).unwrap();
        assert_eq!(h1.orthogonal_sum(&h1).unwrap(), h2);
    }

    #[test]
    fn sum_with_zero_form_has_it_in_the_radical() {
        let a = Arc::new(presets::dual_numbers());
        let d = QuadraticForm::diagonal(Arc::clone(&a), &[q(1)]).unwrap();
        let z = QuadraticForm::zero(FreeSuperModule::new(a, vec![Parity::Even]).unwrap());
        let s = d.orthogonal_sum(&z).unwrap();
        let rad = s.radical();
        assert_eq!(rad.dim(), 2);
        assert!(rad.contains(&s.module().generator(1)));
    }

    #[test]
    fn left_and_right_actions_agree_up_to_sign() {
        let g2 = presets::grassmann(2);
        let m =
            FreeSuperModule::new(Arc::new(g2.clone()), vec![Parity::Even, Parity::Odd]).unwrap();
        for k in 0..4 {
            let a = g2.basis_element(k).into_coeffs();
            for u in 0..m.dim() {
                let bu = m.basis_vector(u);
                let s = g2.degree(k).sign(m.degree(u));
                let right: Vec<Q> = m.right_mul(&bu, &a).iter().map(|x| x * s).collect();
                assert_eq!(m.left_mul(&a, &bu), right);
            }
        }
    }
}
