//! Exact linear algebra over ℚ: reduced echelon forms, nullspaces and the
//! subspace calculus every other module is built on.
//!
//! Elimination always pivots on the first nonzero column, and echelon forms
//! are kept fully reduced with unit pivots, so two spanning sets of the same
//! subspace produce identical [`Subspace`] values.

use std::fmt;

use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::par::{self, Execution};

/// Exact rational scalar. Arithmetic overflow panics (overflow checks are on
/// in every build profile) instead of silently producing a wrong answer.
pub type Q = Ratio<i128>;

/// A sparse vector: `(index, value)` pairs with nonzero values.
pub type SparseVec = Vec<(usize, Q)>;

pub fn q(n: i128) -> Q {
    Q::from_integer(n)
}

pub fn qfrac(n: i128, d: i128) -> Q {
    Q::new(n, d)
}

/// Parses `"p/q"`, `"p"` or `"-p/q"`.
pub fn parse_rational(s: &str) -> Result<Q> {
    let t = s.trim();
    let bad = || Error::Parse(format!("invalid rational {s:?}"));
    match t.split_once('/') {
        Some((n, d)) => {
            let n: i128 = n.trim().parse().map_err(|_| bad())?;
            let d: i128 = d.trim().parse().map_err(|_| bad())?;
            if d == 0 {
                return Err(bad());
            }
            Ok(Q::new(n, d))
        }
        None => Ok(q(t.parse().map_err(|_| bad())?)),
    }
}

/// Canonical `"p/q"` rendering (denominator always present).
pub fn format_rational(x: &Q) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

pub fn is_zero_vec(v: &[Q]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn to_sparse(v: &[Q]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, *x))
        .collect()
}

pub fn to_dense(v: &[(usize, Q)], len: usize) -> Vec<Q> {
    let mut out = vec![Q::zero(); len];
    for (i, x) in v {
        out[*i] += x;
    }
    out
}

/// `y += c * x`
pub fn axpy(y: &mut [Q], c: Q, x: &[Q]) {
    if c.is_zero() {
        return;
    }
    for (yi, xi) in y.iter_mut().zip(x) {
        if !xi.is_zero() {
            *yi += c * xi;
        }
    }
}

pub fn scale(v: &[Q], c: Q) -> Vec<Q> {
    v.iter().map(|x| x * c).collect()
}

pub fn add(a: &[Q], b: &[Q]) -> Vec<Q> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[Q], b: &[Q]) -> Vec<Q> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Dense row-major rational matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Q>,
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RationalMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            data: vec![Q::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Q::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Q>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Shape("ragged matrix rows".into()));
        }
        let n = rows.len();
        Ok(RationalMatrix {
            rows: n,
            cols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Reinterprets a row-major vector of length `n*n` as an `n x n` matrix.
    pub fn from_flat(n: usize, data: Vec<Q>) -> Self {
        assert_eq!(data.len(), n * n, "flat matrix has wrong length");
        RationalMatrix {
            rows: n,
            cols: n,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> Q {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Q) {
        self.data[r * self.cols + c] = v;
    }

    pub fn add_to(&mut self, r: usize, c: usize, v: Q) {
        self.data[r * self.cols + c] += v;
    }

    pub fn row(&self, r: usize) -> &[Q] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn as_flat(&self) -> &[Q] {
        &self.data
    }

    pub fn into_flat(self) -> Vec<Q> {
        self.data
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vec(&self.data)
    }

    pub fn column(&self, c: usize) -> Vec<Q> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[Q]) -> Vec<Q> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                let mut acc = Q::zero();
                for (a, b) in self.row(r).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += a * b;
                    }
                }
                acc
            })
            .collect()
    }

    pub fn matmul(&self, other: &RationalMatrix) -> RationalMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if !b.is_zero() {
                        out.add_to(r, c, a * b);
                    }
                }
            }
        }
        out
    }

    pub fn scaled(&self, c: Q) -> RationalMatrix {
        RationalMatrix {
            rows: self.rows,
            cols: self.cols,
            data: scale(&self.data, c),
        }
    }

    pub fn plus(&self, other: &RationalMatrix) -> RationalMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        RationalMatrix {
            rows: self.rows,
            cols: self.cols,
            data: add(&self.data, &other.data),
        }
    }

    pub fn minus(&self, other: &RationalMatrix) -> RationalMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        RationalMatrix {
            rows: self.rows,
            cols: self.cols,
            data: sub(&self.data, &other.data),
        }
    }

    pub fn rank(&self) -> usize {
        let mut ech = Echelon::new(self.cols);
        for r in 0..self.rows {
            ech.insert(self.row(r).to_vec());
        }
        ech.rank()
    }

    /// Basis of `{v : self * v = 0}`.
    pub fn nullspace(&self) -> Subspace {
        let mut ech = Echelon::new(self.cols);
        for r in 0..self.rows {
            ech.insert(self.row(r).to_vec());
        }
        ech.nullspace()
    }
}

/// Incrementally maintained reduced row echelon form.
///
/// Every stored row has a unit pivot at its first nonzero column and zeros in
/// every other row's pivot column.
#[derive(Clone, Debug)]
pub struct Echelon {
    cols: usize,
    rows: Vec<(usize, SparseVec)>,
    pivot_row: Vec<Option<usize>>,
}

impl Echelon {
    pub fn new(cols: usize) -> Self {
        Echelon {
            cols,
            rows: Vec::new(),
            pivot_row: vec![None; cols],
        }
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `row` in place against the current pivots.
    pub fn reduce(&self, row: &mut [Q]) {
        debug_assert_eq!(row.len(), self.cols);
        for (pivot, prow) in &self.rows {
            let c = row[*pivot];
            if c.is_zero() {
                continue;
            }
            for (j, x) in prow {
                row[*j] -= c * x;
            }
        }
    }

    /// Sparse reduction. Because stored rows are fully reduced, one pass over
    /// the pivot entries of `row` suffices.
    pub fn reduce_sparse(&self, row: &[(usize, Q)]) -> SparseVec {
        let mut acc: Vec<(usize, Q)> = Vec::with_capacity(row.len());
        let mut scratch: std::collections::BTreeMap<usize, Q> = std::collections::BTreeMap::new();
        for (j, c) in row {
            if c.is_zero() {
                continue;
            }
            match self.pivot_row[*j] {
                None => *scratch.entry(*j).or_insert_with(Q::zero) += c,
                Some(r) => {
                    for (k, x) in &self.rows[r].1 {
                        if k != j {
                            *scratch.entry(*k).or_insert_with(Q::zero) -= c * x;
                        }
                    }
                }
            }
        }
        acc.extend(scratch.into_iter().filter(|(_, x)| !x.is_zero()));
        acc
    }

    pub fn contains(&self, v: &[Q]) -> bool {
        let mut row = v.to_vec();
        self.reduce(&mut row);
        is_zero_vec(&row)
    }

    /// Adds a row; returns `true` when the rank grew.
    pub fn insert(&mut self, row: Vec<Q>) -> bool {
        assert_eq!(
            row.len(),
            self.cols,
            "row length does not match echelon width"
        );
        self.insert_sparse(&to_sparse(&row))
    }

    pub fn insert_sparse(&mut self, row: &[(usize, Q)]) -> bool {
        let reduced = self.reduce_sparse(row);
        self.insert_reduced(reduced)
    }

    /// Inserts a row already reduced against the current pivots.
    fn insert_reduced(&mut self, reduced: SparseVec) -> bool {
        let Some(&(p, lead)) = reduced.first() else {
            return false;
        };
        let inv = lead.recip();
        let new_row: SparseVec = reduced.into_iter().map(|(j, x)| (j, x * inv)).collect();
        for (_, prow) in self.rows.iter_mut() {
            let Ok(pos) = prow.binary_search_by_key(&p, |(j, _)| *j) else {
                continue;
            };
            let c = prow[pos].1;
            let mut merged: Vec<(usize, Q)> = Vec::with_capacity(prow.len() + new_row.len());
            merge_axpy(prow, -c, &new_row, &mut merged);
            *prow = merged;
        }
        self.pivot_row[p] = Some(self.rows.len());
        self.rows.push((p, new_row));
        true
    }

    /// Inserts many rows. Rows are reduced in parallel batches against a
    /// snapshot, then inserted in order; the resulting echelon form is the
    /// canonical one for the row space, independent of the execution mode.
    pub fn extend_rows(&mut self, exec: Execution, rows: &[SparseVec]) {
        const BATCH: usize = 512;
        for chunk in rows.chunks(BATCH) {
            if self.rank() == self.cols {
                return;
            }
            let reduced = par::map(exec, chunk, |r| self.reduce_sparse(r));
            let base = self.rank();
            for r in reduced {
                if r.is_empty() {
                    continue;
                }
                if self.rank() == base {
                    self.insert_reduced(r);
                } else {
                    let again = self.reduce_sparse(&r);
                    self.insert_reduced(again);
                }
            }
        }
    }

    /// Pivot columns in increasing order.
    pub fn pivots(&self) -> Vec<usize> {
        let mut p: Vec<usize> = self.rows.iter().map(|(c, _)| *c).collect();
        p.sort_unstable();
        p
    }

    /// Rows sorted by pivot column, densified.
    pub fn rref_rows(&self) -> Vec<Vec<Q>> {
        let mut rows: Vec<&(usize, SparseVec)> = self.rows.iter().collect();
        rows.sort_by_key(|(p, _)| *p);
        rows.into_iter()
            .map(|(_, r)| to_dense(r, self.cols))
            .collect()
    }

    pub fn into_subspace(self) -> Subspace {
        Subspace::from_rref(self.cols, self.rref_rows())
    }

    /// Canonical basis of the right nullspace of the stored rows.
    pub fn nullspace(&self) -> Subspace {
        let mut is_pivot = vec![false; self.cols];
        for (p, _) in &self.rows {
            is_pivot[*p] = true;
        }
        let mut basis = Vec::new();
        for f in (0..self.cols).filter(|c| !is_pivot[*c]) {
            let mut v = vec![Q::zero(); self.cols];
            v[f] = Q::one();
            for (p, prow) in &self.rows {
                if let Some((_, x)) = prow.iter().find(|(j, _)| *j == f) {
                    v[*p] = -x;
                }
            }
            basis.push(v);
        }
        Subspace::span(self.cols, basis)
    }
}

fn merge_axpy(a: &[(usize, Q)], c: Q, b: &[(usize, Q)], out: &mut Vec<(usize, Q)>) {
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        match (a.get(i), b.get(j)) {
            (Some((ia, xa)), Some((ib, xb))) if ia == ib => {
                let v = xa + c * xb;
                if !v.is_zero() {
                    out.push((*ia, v));
                }
                i += 1;
                j += 1;
            }
            (Some((ia, xa)), Some((ib, _))) if ia < ib => {
                out.push((*ia, *xa));
                i += 1;
            }
            (Some(_), Some((ib, xb))) => {
                out.push((*ib, c * xb));
                j += 1;
            }
            (Some((ia, xa)), None) => {
                out.push((*ia, *xa));
                i += 1;
            }
            (None, Some((ib, xb))) => {
                out.push((*ib, c * xb));
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
}

/// Nullspace of a system given as sparse rows over `cols` unknowns.
pub fn nullspace_of_rows<I>(cols: usize, rows: I) -> Subspace
where
    I: IntoIterator<Item = SparseVec>,
{
    let mut ech = Echelon::new(cols);
    for row in rows {
        if !row.is_empty() && ech.rank() < cols {
            ech.insert_sparse(&row);
        }
    }
    ech.nullspace()
}

/// [`nullspace_of_rows`] with batched parallel reduction.
pub fn nullspace_of_rows_with(exec: Execution, cols: usize, rows: &[SparseVec]) -> Subspace {
    let mut ech = Echelon::new(cols);
    ech.extend_rows(exec, rows);
    ech.nullspace()
}

/// A subspace of `ℚ^ambient`, stored as its canonical reduced echelon basis.
#[derive(Clone, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vec<Q>>,
    pivots: Vec<usize>,
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(dim {} in ℚ^{})", self.dim(), self.ambient)
    }
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        let basis = (0..ambient)
            .map(|i| {
                let mut v = vec![Q::zero(); ambient];
                v[i] = Q::one();
                v
            })
            .collect();
        Subspace {
            ambient,
            basis,
            pivots: (0..ambient).collect(),
        }
    }

    /// Coordinate subspace spanned by the listed unit vectors.
    pub fn coordinate(ambient: usize, coords: impl IntoIterator<Item = usize>) -> Self {
        let vecs = coords.into_iter().map(|i| {
            let mut v = vec![Q::zero(); ambient];
            v[i] = Q::one();
            v
        });
        Self::span(ambient, vecs)
    }

    pub fn span<I>(ambient: usize, vectors: I) -> Self
    where
        I: IntoIterator<Item = Vec<Q>>,
    {
        let mut ech = Echelon::new(ambient);
        for v in vectors {
            assert_eq!(v.len(), ambient, "spanning vector has wrong length");
            ech.insert(v);
        }
        ech.into_subspace()
    }

    fn from_rref(ambient: usize, basis: Vec<Vec<Q>>) -> Self {
        let pivots = basis
            .iter()
            .map(|r| {
                r.iter()
                    .position(|x| !x.is_zero())
                    .expect("zero row in echelon form")
            })
            .collect();
        Subspace {
            ambient,
            basis,
            pivots,
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[Vec<Q>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn check_ambient(&self, other: &Subspace) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch {
                expected: self.ambient,
                found: other.ambient,
            });
        }
        Ok(())
    }

    /// Residual of `v` after subtracting its projection along the pivots.
    fn residual(&self, v: &[Q]) -> Vec<Q> {
        let mut r = v.to_vec();
        for (p, row) in self.pivots.iter().zip(&self.basis) {
            let c = r[*p];
            if !c.is_zero() {
                axpy(&mut r, -c, row);
            }
        }
        r
    }

    pub fn contains(&self, v: &[Q]) -> bool {
        assert_eq!(v.len(), self.ambient, "vector has wrong length");
        is_zero_vec(&self.residual(v))
    }

    /// Coordinates of `v` in the echelon basis, or `None` if `v` is outside.
    pub fn coordinates(&self, v: &[Q]) -> Option<Vec<Q>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|p| v[*p]).collect())
    }

    pub fn combine(&self, coords: &[Q]) -> Vec<Q> {
        assert_eq!(coords.len(), self.dim());
        let mut out = vec![Q::zero(); self.ambient];
        for (c, row) in coords.iter().zip(&self.basis) {
            axpy(&mut out, *c, row);
        }
        out
    }

    /// Linear functionals (sparse) whose common kernel is exactly this
    /// subspace: one per non-pivot coordinate, `v[j] - Σ_i basis_i[j] v[p_i]`.
    pub fn membership_functionals(&self) -> Vec<SparseVec> {
        let mut is_pivot = vec![false; self.ambient];
        for p in &self.pivots {
            is_pivot[*p] = true;
        }
        (0..self.ambient)
            .filter(|j| !is_pivot[*j])
            .map(|j| {
                let mut f: SparseVec = vec![(j, Q::one())];
                for (p, row) in self.pivots.iter().zip(&self.basis) {
                    if !row[j].is_zero() {
                        f.push((*p, -row[j]));
                    }
                }
                f.sort_by_key(|(i, _)| *i);
                f
            })
            .collect()
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        Ok(Subspace::span(
            self.ambient,
            self.basis.iter().chain(&other.basis).cloned(),
        ))
    }

    /// Intersection via the kernel of the concatenated basis matrix.
    pub fn intersection(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        let (k, l) = (self.dim(), other.dim());
        if k == 0 || l == 0 {
            return Ok(Subspace::zero(self.ambient));
        }
        // columns: self basis then -other basis; rows: ambient coordinates
        let rows = (0..self.ambient).map(|i| {
            let mut row: SparseVec = Vec::new();
            for (c, b) in self.basis.iter().enumerate() {
                if !b[i].is_zero() {
                    row.push((c, b[i]));
                }
            }
            for (c, b) in other.basis.iter().enumerate() {
                if !b[i].is_zero() {
                    row.push((k + c, -b[i]));
                }
            }
            row
        });
        let kernel = nullspace_of_rows(k + l, rows);
        Ok(Subspace::span(
            self.ambient,
            kernel.basis.iter().map(|z| self.combine(&z[..k])),
        ))
    }

    pub fn is_subset_of(&self, other: &Subspace) -> Result<bool> {
        self.check_ambient(other)?;
        Ok(self.basis.iter().all(|v| other.contains(v)))
    }

    /// `dim(U + V) == dim U + dim V`.
    pub fn is_direct_with(&self, other: &Subspace) -> Result<bool> {
        Ok(self.sum(other)?.dim() == self.dim() + other.dim())
    }

    /// Canonical complement coordinates: the non-pivot columns.
    pub fn complement_coords(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient];
        for p in &self.pivots {
            is_pivot[*p] = true;
        }
        (0..self.ambient).filter(|j| !is_pivot[*j]).collect()
    }

    /// Vectors from `candidates` (in order) that extend `self` to
    /// `self + span(candidates)` without redundancy.
    pub fn greedy_complement<'a, I>(&self, candidates: I) -> Vec<Vec<Q>>
    where
        I: IntoIterator<Item = &'a Vec<Q>>,
    {
        let mut ech = Echelon::new(self.ambient);
        for b in &self.basis {
            ech.insert(b.clone());
        }
        let mut chosen = Vec::new();
        for c in candidates {
            if ech.insert(c.clone()) {
                chosen.push(c.clone());
            }
        }
        chosen
    }

    /// Image under a linear map given as a closure on vectors.
    pub fn map<F>(&self, target_ambient: usize, f: F) -> Subspace
    where
        F: Fn(&[Q]) -> Vec<Q>,
    {
        Subspace::span(target_ambient, self.basis.iter().map(|v| f(v)))
    }
}

/// Coordinates with respect to a fixed, user-ordered basis (not the
/// echelon one). Keeps the transform from the echelon basis back to the
/// given vectors.
#[derive(Clone, Debug)]
pub struct FixedBasis {
    vectors: Vec<Vec<Q>>,
    span: Subspace,
    // coords_given = coords_echelon * transform
    transform: Vec<Vec<Q>>,
}

impl FixedBasis {
    pub fn new(ambient: usize, vectors: Vec<Vec<Q>>) -> Result<Self> {
        let k = vectors.len();
        // Row-reduce [B | I]; rows of the result with pivot in the B-part give
        // the echelon basis together with the combination of given vectors.
        let width = ambient + k;
        let mut ech = Echelon::new(width);
        for (i, v) in vectors.iter().enumerate() {
            if v.len() != ambient {
                return Err(Error::DimensionMismatch {
                    expected: ambient,
                    found: v.len(),
                });
            }
            let mut row = v.clone();
            row.extend((0..k).map(|j| if i == j { Q::one() } else { Q::zero() }));
            ech.insert(row);
        }
        let rows = ech.rref_rows();
        let mut echelon_rows = Vec::new();
        let mut transform = Vec::new();
        for r in rows {
            let piv = r.iter().position(|x| !x.is_zero()).unwrap();
            if piv >= ambient {
                return Err(Error::Shape("basis vectors are linearly dependent".into()));
            }
            echelon_rows.push(r[..ambient].to_vec());
            transform.push(r[ambient..].to_vec());
        }
        let span = Subspace::from_rref(ambient, echelon_rows);
        Ok(FixedBasis {
            vectors,
            span,
            transform,
        })
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vectors(&self) -> &[Vec<Q>] {
        &self.vectors
    }

    pub fn span(&self) -> &Subspace {
        &self.span
    }

    /// `c` with `v = Σ c_i vectors[i]`, or `None` if `v` is outside the span.
    pub fn coordinates(&self, v: &[Q]) -> Option<Vec<Q>> {
        let e = self.span.coordinates(v)?;
        let mut out = vec![Q::zero(); self.vectors.len()];
        for (ei, trow) in e.iter().zip(&self.transform) {
            axpy(&mut out, *ei, trow);
        }
        Some(out)
    }

    pub fn combine(&self, coords: &[Q]) -> Vec<Q> {
        let ambient = self.span.ambient();
        let mut out = vec![Q::zero(); ambient];
        for (c, v) in coords.iter().zip(&self.vectors) {
            axpy(&mut out, *c, v);
        }
        out
    }
}

/// Largest absolute numerator or denominator, for diagnostics.
pub fn height(v: &[Q]) -> i128 {
    v.iter()
        .map(|x| x.numer().abs().max(*x.denom()))
        .max()
        .unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i128]]) -> RationalMatrix {
        RationalMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|x| q(*x)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn identity_has_trivial_nullspace() {
        assert_eq!(RationalMatrix::identity(4).nullspace().dim(), 0);
    }

    #[test]
    fn zero_matrix_nullspace_is_everything() {
        let ns = RationalMatrix::zeros(3, 3).nullspace();
        assert_eq!(ns.dim(), 3);
        assert_eq!(ns, Subspace::full(3));
    }

    #[test]
    fn rank_one_nullspace_is_proportional_to_2_minus1() {
        let ns = m(&[&[1, 2], &[2, 4]]).nullspace();
        assert_eq!(ns.dim(), 1);
        let v = &ns.basis()[0];
        // v proportional to (2, -1)
        assert_eq!(v[0] * q(-1), v[1] * q(2));
        assert!(!v[0].is_zero());
    }

    #[test]
    fn nullspace_vectors_are_annihilated() {
        let a = m(&[&[1, 2, 3, 4], &[2, 4, 6, 8], &[0, 1, -1, 2]]);
        let ns = a.nullspace();
        assert_eq!(ns.dim() + a.rank(), 4);
        for v in ns.basis() {
            assert!(is_zero_vec(&a.mul_vec(v)));
        }
    }

    #[test]
    fn parse_and_format_rationals() {
        assert_eq!(parse_rational("3/6").unwrap(), qfrac(1, 2));
        assert_eq!(parse_rational("-4").unwrap(), q(-4));
        assert_eq!(format_rational(&q(-4)), "-4/1");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("0.5").is_err());
    }

    #[test]
    fn equal_subspaces_have_equal_normal_forms() {
        let u = Subspace::span(3, vec![vec![q(1), q(1), q(0)], vec![q(0), q(1), q(1)]]);
        let v = Subspace::span(3, vec![vec![q(1), q(2), q(1)], vec![q(1), q(0), q(-1)]]);
        assert_eq!(u, v);
    }

    #[test]
    fn same_subspace_sum_and_intersection() {
        let u = Subspace::span(3, vec![vec![q(1), q(1), q(0)]]);
        assert_eq!(u.intersection(&u).unwrap(), u);
        assert_eq!(u.sum(&u).unwrap(), u);
    }

    #[test]
    fn coordinate_subspaces_are_direct() {
        let u = Subspace::coordinate(4, [0, 1]);
        let v = Subspace::coordinate(4, [2, 3]);
        assert!(u.is_direct_with(&v).unwrap());
        assert!(u.intersection(&v).unwrap().is_zero());
        assert_eq!(u.sum(&v).unwrap(), Subspace::full(4));
    }

    #[test]
    fn ambient_mismatch_is_an_error() {
        let u = Subspace::zero(2);
        let v = Subspace::zero(3);
        assert!(matches!(u.sum(&v), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn membership_functionals_cut_out_the_subspace() {
        let u = Subspace::span(
            4,
            vec![vec![q(1), q(2), q(0), q(1)], vec![q(0), q(0), q(1), q(3)]],
        );
        let fs = u.membership_functionals();
        assert_eq!(fs.len(), 2);
        let kernel = nullspace_of_rows(4, fs);
        assert_eq!(kernel, u);
    }

    #[test]
    fn fixed_basis_coordinates_round_trip() {
        let vs = vec![vec![q(1), q(1), q(0)], vec![q(0), q(2), q(1)]];
        let fb = FixedBasis::new(3, vs).unwrap();
        let v = vec![q(3), q(-1), q(-2)]; // 3*v0 - 2*v1
        assert_eq!(fb.coordinates(&v).unwrap(), vec![q(3), q(-2)]);
        assert!(fb.coordinates(&[q(0), q(0), q(1)]).is_none());
    }

    #[test]
    fn fixed_basis_rejects_dependent_vectors() {
        let vs = vec![vec![q(1), q(1)], vec![q(2), q(2)]];
        assert!(FixedBasis::new(2, vs).is_err());
    }
}
