//! Finite-dimensional unital supercommutative superalgebras over ℚ, given by
//! structure constants, and their superderivations.

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::parity::Parity;
use crate::solver::{
    axpy, format_rational, is_zero_vec, nullspace_of_rows, parse_rational, q, qfrac, Echelon,
    RationalMatrix, SparseVec, Subspace, Q,
};

/// Structure-constant presentation `e_k · e_l = Σ_m c[k][l][m] e_m`.
#[derive(Clone, PartialEq, Eq)]
pub struct SuperAlgebraTable {
    degrees: Vec<Parity>,
    unit: usize,
    // products[k * dim + l] = sparse coefficients of e_k e_l
    products: Vec<SparseVec>,
    name: Option<String>,
}

impl fmt::Debug for SuperAlgebraTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.name {
            Some(n) => write!(f, "SuperAlgebraTable({n}, dim {})", self.dim()),
            None => write!(f, "SuperAlgebraTable(dim {})", self.dim()),
        }
    }
}

/// One failed axiom with the basis tuple that witnesses it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub axiom: Axiom,
    pub witness: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Axiom {
    Unit,
    Associativity,
    Supercommutativity,
    GradingClosure,
    UnitDegree,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Axiom::Unit => "unit",
            Axiom::Associativity => "associativity",
            Axiom::Supercommutativity => "supercommutativity",
            Axiom::GradingClosure => "grading closure",
            Axiom::UnitDegree => "degree of unit",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn first(&self) -> Option<&Violation> {
        self.violations.first()
    }
}

/// An element of a table algebra, as a dense coefficient vector.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct AlgebraElement {
    coeffs: Vec<Q>,
}

impl fmt::Debug for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| format!("{c}·e{k}"))
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl AlgebraElement {
    pub fn from_coeffs(coeffs: Vec<Q>) -> Self {
        AlgebraElement { coeffs }
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Q> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vec(&self.coeffs)
    }

    pub fn scaled(&self, c: Q) -> Self {
        AlgebraElement {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    pub fn add(&self, other: &AlgebraElement) -> Self {
        AlgebraElement {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &AlgebraElement) -> Self {
        AlgebraElement {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct TableJson {
    dim: usize,
    degrees: Vec<Parity>,
    unit: usize,
    sc: Vec<(usize, usize, usize, String)>,
}

impl SuperAlgebraTable {
    /// Builds a table from dense-or-sparse triplets. Checks shapes only;
    /// call [`SuperAlgebraTable::validate`] for the axioms.
    pub fn from_triplets(
        degrees: Vec<Parity>,
        unit: usize,
        triplets: impl IntoIterator<Item = (usize, usize, usize, Q)>,
    ) -> Result<Self> {
        let dim = degrees.len();
        if dim == 0 {
            return Err(Error::Shape("algebra dimension must be at least 1".into()));
        }
        if unit >= dim {
            return Err(Error::Shape(format!(
                "unit index {unit} out of range for dim {dim}"
            )));
        }
        let mut dense = vec![vec![Q::zero(); dim]; dim * dim];
        for (k, l, m, c) in triplets {
            if k >= dim || l >= dim || m >= dim {
                return Err(Error::Shape(format!(
                    "structure constant index ({k},{l},{m}) out of range for dim {dim}"
                )));
            }
            dense[k * dim + l][m] += c;
        }
        let products = dense.iter().map(|v| crate::solver::to_sparse(v)).collect();
        Ok(SuperAlgebraTable {
            degrees,
            unit,
            products,
            name: None,
        })
    }

    /// Builds and validates; axiom violations become an error.
    pub fn new_validated(
        degrees: Vec<Parity>,
        unit: usize,
        triplets: impl IntoIterator<Item = (usize, usize, usize, Q)>,
    ) -> Result<Self> {
        let t = Self::from_triplets(degrees, unit, triplets)?;
        let report = t.validate();
        if let Some(v) = report.first() {
            return Err(Error::InvalidTable(format!(
                "{} at {:?}",
                v.axiom, v.witness
            )));
        }
        Ok(t)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn dim(&self) -> usize {
        self.degrees.len()
    }

    pub fn degrees(&self) -> &[Parity] {
        &self.degrees
    }

    pub fn degree(&self, k: usize) -> Parity {
        self.degrees[k]
    }

    pub fn unit_index(&self) -> usize {
        self.unit
    }

    /// Sparse coefficients of `e_k e_l`.
    pub fn product(&self, k: usize, l: usize) -> &SparseVec {
        &self.products[k * self.dim() + l]
    }

    pub fn structure_constant(&self, k: usize, l: usize, m: usize) -> Q {
        self.product(k, l)
            .iter()
            .find(|(i, _)| *i == m)
            .map_or(Q::zero(), |(_, c)| *c)
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        let dim = self.dim();
        let mut sc = Vec::new();
        for k in 0..dim {
            for l in 0..dim {
                for (m, c) in self.product(k, l) {
                    sc.push((k, l, *m, format_rational(c)));
                }
            }
        }
        serde_json::to_value(TableJson {
            dim,
            degrees: self.degrees.clone(),
            unit: self.unit,
            sc,
        })
        .expect("table serialises")
    }

    pub fn from_json_value(v: &serde_json::Value) -> Result<Self> {
        let t: TableJson = serde_json::from_value(v.clone())
            .map_err(|e| Error::Parse(format!("algebra table: {e}")))?;
        if t.degrees.len() != t.dim {
            return Err(Error::Shape(format!(
                "table has dim {} but {} degrees",
                t.dim,
                t.degrees.len()
            )));
        }
        let mut trip = Vec::with_capacity(t.sc.len());
        for (k, l, m, c) in t.sc {
            trip.push((k, l, m, parse_rational(&c)?));
        }
        Self::from_triplets(t.degrees, t.unit, trip)
    }

    /// Checks unit, associativity, supercommutativity, grading closure and
    /// the degree of 1, collecting one witness per failed basis tuple.
    pub fn validate(&self) -> ValidationReport {
        let dim = self.dim();
        let mut violations = Vec::new();
        if self.degrees[self.unit] != Parity::Even {
            violations.push(Violation {
                axiom: Axiom::UnitDegree,
                witness: vec![self.unit],
            });
        }
        let basis = |k: usize| self.basis_element(k);
        for k in 0..dim {
            let one = basis(self.unit);
            let ek = basis(k);
            if self.mul_raw(one.coeffs(), ek.coeffs()) != *ek.coeffs()
                || self.mul_raw(ek.coeffs(), one.coeffs()) != *ek.coeffs()
            {
                violations.push(Violation {
                    axiom: Axiom::Unit,
                    witness: vec![k],
                });
            }
        }
        for k in 0..dim {
            for l in 0..dim {
                for (m, _) in self.product(k, l) {
                    if self.degrees[*m] != self.degrees[k] + self.degrees[l] {
                        violations.push(Violation {
                            axiom: Axiom::GradingClosure,
                            witness: vec![k, l, *m],
                        });
                    }
                }
            }
        }
        for k in 0..dim {
            for l in k..dim {
                let s = self.degrees[k].sign(self.degrees[l]);
                let lhs = self.mul_raw(basis(k).coeffs(), basis(l).coeffs());
                let rhs: Vec<Q> = self
                    .mul_raw(basis(l).coeffs(), basis(k).coeffs())
                    .iter()
                    .map(|x| x * s)
                    .collect();
                if lhs != rhs {
                    violations.push(Violation {
                        axiom: Axiom::Supercommutativity,
                        witness: vec![k, l],
                    });
                }
            }
        }
        for k in 0..dim {
            for l in 0..dim {
                let kl = self.mul_raw(basis(k).coeffs(), basis(l).coeffs());
                for m in 0..dim {
                    let lm = self.mul_raw(basis(l).coeffs(), basis(m).coeffs());
                    let left = self.mul_raw(&kl, basis(m).coeffs());
                    let right = self.mul_raw(basis(k).coeffs(), &lm);
                    if left != right {
                        violations.push(Violation {
                            axiom: Axiom::Associativity,
                            witness: vec![k, l, m],
                        });
                    }
                }
            }
        }
        ValidationReport { violations }
    }

    pub fn zero(&self) -> AlgebraElement {
        AlgebraElement {
            coeffs: vec![Q::zero(); self.dim()],
        }
    }

    pub fn one(&self) -> AlgebraElement {
        self.basis_element(self.unit)
    }

    pub fn scalar(&self, c: Q) -> AlgebraElement {
        self.one().scaled(c)
    }

    pub fn basis_element(&self, k: usize) -> AlgebraElement {
        let mut coeffs = vec![Q::zero(); self.dim()];
        coeffs[k] = Q::one();
        AlgebraElement { coeffs }
    }

    pub fn element(&self, coeffs: Vec<Q>) -> Result<AlgebraElement> {
        if coeffs.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: coeffs.len(),
            });
        }
        Ok(AlgebraElement { coeffs })
    }

    fn check(&self, a: &AlgebraElement) -> Result<()> {
        if a.coeffs.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: a.coeffs.len(),
            });
        }
        Ok(())
    }

    /// Bilinear product on raw coefficient slices.
    pub fn mul_raw(&self, a: &[Q], b: &[Q]) -> Vec<Q> {
        let dim = self.dim();
        let mut out = vec![Q::zero(); dim];
        for (k, ak) in a.iter().enumerate() {
            if ak.is_zero() {
                continue;
            }
            for (l, bl) in b.iter().enumerate() {
                if bl.is_zero() {
                    continue;
                }
                let c = ak * bl;
                for (m, s) in self.product(k, l) {
                    out[*m] += c * s;
                }
            }
        }
        out
    }

    pub fn mul(&self, a: &AlgebraElement, b: &AlgebraElement) -> Result<AlgebraElement> {
        self.check(a)?;
        self.check(b)?;
        Ok(AlgebraElement {
            coeffs: self.mul_raw(&a.coeffs, &b.coeffs),
        })
    }

    /// Splits into (even part, odd part).
    pub fn homogeneous_parts(&self, a: &AlgebraElement) -> [AlgebraElement; 2] {
        let mut parts = [self.zero(), self.zero()];
        for (k, c) in a.coeffs.iter().enumerate() {
            parts[self.degrees[k].index()].coeffs[k] = *c;
        }
        parts
    }

    /// Degree of a homogeneous element (zero counts as even); `None` if mixed.
    pub fn parity_of(&self, a: &[Q]) -> Option<Parity> {
        let mut seen = [false, false];
        for (k, c) in a.iter().enumerate() {
            if !c.is_zero() {
                seen[self.degrees[k].index()] = true;
            }
        }
        match seen {
            [true, true] => None,
            [_, true] => Some(Parity::Odd),
            _ => Some(Parity::Even),
        }
    }

    /// Matrix of `x ↦ a·x` (column `l` is `a·e_l`).
    pub fn left_mul_matrix(&self, a: &[Q]) -> RationalMatrix {
        let dim = self.dim();
        let mut m = RationalMatrix::zeros(dim, dim);
        for l in 0..dim {
            let mut el = vec![Q::zero(); dim];
            el[l] = Q::one();
            let col = self.mul_raw(a, &el);
            for (r, v) in col.iter().enumerate() {
                m.set(r, l, *v);
            }
        }
        m
    }

    /// Inverse of a homogeneous element, decided by solving `a·x = 1`.
    pub fn invert(&self, a: &AlgebraElement) -> Result<AlgebraElement> {
        self.check(a)?;
        let parity = self.parity_of(&a.coeffs).ok_or(Error::NonHomogeneous)?;
        if parity == Parity::Odd || a.is_zero() {
            return Err(Error::NotInvertible);
        }
        let x = solve(&self.left_mul_matrix(&a.coeffs), self.one().coeffs())
            .ok_or(Error::NotInvertible)?;
        Ok(AlgebraElement { coeffs: x })
    }

    pub fn is_invertible(&self, a: &AlgebraElement) -> bool {
        self.invert(a).is_ok()
    }

    /// `Der_ℚ A` as a graded subspace of `End_ℚ A` (vectorised row-major:
    /// index `m * dim + k` holds the `e_m` coefficient of `d(e_k)`).
    pub fn derivations(&self) -> GradedSubspace {
        let dim = self.dim();
        let parts = Parity::ALL.map(|alpha| {
            let mask = |m: usize, k: usize| self.degrees[m] == self.degrees[k] + alpha;
            let mut rows: Vec<SparseVec> = Vec::new();
            // zero out entries of the wrong degree
            for m in 0..dim {
                for k in 0..dim {
                    if !mask(m, k) {
                        rows.push(vec![(m * dim + k, Q::one())]);
                    }
                }
            }
            // d(e_k e_l) - d(e_k) e_l - (-1)^{alpha |k|} e_k d(e_l) = 0
            for k in 0..dim {
                for l in 0..dim {
                    let s = alpha.sign(self.degrees[k]);
                    let mut eqs = vec![SparseVec::new(); dim];
                    for (t, c) in self.product(k, l) {
                        for (o, eq) in eqs.iter_mut().enumerate() {
                            eq.push((o * dim + t, *c));
                        }
                    }
                    for t in 0..dim {
                        for (o, c) in self.product(t, l) {
                            eqs[*o].push((t * dim + k, -c));
                        }
                        for (o, c) in self.product(k, t) {
                            eqs[*o].push((t * dim + l, -(s * c)));
                        }
                    }
                    rows.extend(eqs.into_iter().map(compact));
                }
            }
            nullspace_of_rows(dim * dim, rows)
        });
        GradedSubspace::new(parts)
    }

    /// Evaluates an operator on `A` (given as `dim x dim` row-major vector).
    pub fn apply_operator(&self, op: &[Q], a: &[Q]) -> Vec<Q> {
        let dim = self.dim();
        let mut out = vec![Q::zero(); dim];
        for k in 0..dim {
            if a[k].is_zero() {
                continue;
            }
            for m in 0..dim {
                let x = op[m * dim + k];
                if !x.is_zero() {
                    out[m] += x * a[k];
                }
            }
        }
        out
    }

    /// Checks the graded Leibniz rule on all basis pairs for a homogeneous
    /// operator of degree `alpha`.
    pub fn is_derivation(&self, op: &[Q], alpha: Parity) -> bool {
        let dim = self.dim();
        for m in 0..dim {
            for k in 0..dim {
                if !op[m * dim + k].is_zero() && self.degrees[m] != self.degrees[k] + alpha {
                    return false;
                }
            }
        }
        for k in 0..dim {
            for l in 0..dim {
                let ek = self.basis_element(k);
                let el = self.basis_element(l);
                let lhs = self.apply_operator(op, &self.mul_raw(ek.coeffs(), el.coeffs()));
                let mut rhs = self.mul_raw(&self.apply_operator(op, ek.coeffs()), el.coeffs());
                let t = self.mul_raw(ek.coeffs(), &self.apply_operator(op, el.coeffs()));
                axpy(&mut rhs, alpha.sign(self.degrees[k]), &t);
                if lhs != rhs {
                    return false;
                }
            }
        }
        true
    }
}

fn compact(mut v: SparseVec) -> SparseVec {
    v.sort_by_key(|(i, _)| *i);
    let mut out: SparseVec = Vec::with_capacity(v.len());
    for (i, x) in v {
        match out.last_mut() {
            Some((j, y)) if *j == i => *y += x,
            _ => out.push((i, x)),
        }
    }
    out.retain(|(_, x)| !x.is_zero());
    out
}

pub(crate) fn compact_sparse(v: SparseVec) -> SparseVec {
    compact(v)
}

/// Solves `m x = b` exactly; `None` when inconsistent.
pub fn solve(m: &RationalMatrix, b: &[Q]) -> Option<Vec<Q>> {
    let (rows, cols) = (m.rows(), m.cols());
    let mut ech = Echelon::new(cols + 1);
    for r in 0..rows {
        let mut row = m.row(r).to_vec();
        row.push(b[r]);
        ech.insert(row);
    }
    let rref = ech.rref_rows();
    let mut x = vec![Q::zero(); cols];
    for row in rref {
        let p = row.iter().position(|v| !v.is_zero()).unwrap();
        if p == cols {
            return None;
        }
        x[p] = row[cols];
    }
    Some(x)
}

/// A subspace split into its even and odd parts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedSubspace {
    parts: [Subspace; 2],
}

impl GradedSubspace {
    pub fn new(parts: [Subspace; 2]) -> Self {
        assert_eq!(parts[0].ambient(), parts[1].ambient());
        GradedSubspace { parts }
    }

    pub fn part(&self, p: Parity) -> &Subspace {
        &self.parts[p.index()]
    }

    pub fn dim(&self) -> usize {
        self.parts[0].dim() + self.parts[1].dim()
    }

    pub fn ambient(&self) -> usize {
        self.parts[0].ambient()
    }

    pub fn total(&self) -> Subspace {
        self.parts[0]
            .sum(&self.parts[1])
            .expect("parts share an ambient space")
    }

    /// Homogeneous basis vectors tagged with their degree, even part first.
    pub fn homogeneous_basis(&self) -> Vec<(Parity, Vec<Q>)> {
        Parity::ALL
            .iter()
            .flat_map(|p| {
                self.parts[p.index()]
                    .basis()
                    .iter()
                    .map(move |v| (*p, v.clone()))
            })
            .collect()
    }
}

/// Built-in coefficient algebras.
pub mod presets {
    use super::*;

    /// ℚ itself.
    pub fn rationals() -> SuperAlgebraTable {
        SuperAlgebraTable::from_triplets(vec![Parity::Even], 0, [(0, 0, 0, q(1))])
            .expect("valid")
            .with_name("Q")
    }

    /// Dual numbers ℚ[ε]/(ε²), ε even. Basis (1, ε).
    pub fn dual_numbers() -> SuperAlgebraTable {
        SuperAlgebraTable::from_triplets(
            vec![Parity::Even, Parity::Even],
            0,
            [(0, 0, 0, q(1)), (0, 1, 1, q(1)), (1, 0, 1, q(1))],
        )
        .expect("valid")
        .with_name("Geps")
    }

    /// Grassmann algebra on `n` odd generators. Basis indexed by subsets of
    /// generators as bitmasks, ordered by mask value (so index 0 is 1 and
    /// index `1 << i` is ξ_{i+1}).
    pub fn grassmann(n: usize) -> SuperAlgebraTable {
        assert!(n < 8, "Grassmann preset limited to 7 generators");
        let dim = 1usize << n;
        let degrees = (0..dim)
            .map(|mask: usize| {
                if mask.count_ones() % 2 == 1 {
                    Parity::Odd
                } else {
                    Parity::Even
                }
            })
            .collect();
        let mut trip = Vec::new();
        for a in 0..dim {
            for b in 0..dim {
                if a & b != 0 {
                    continue;
                }
                // sign of reordering ξ_A ξ_B into increasing order: count
                // pairs (i in A, j in B) with i > j
                let mut inversions = 0;
                for i in 0..n {
                    if a >> i & 1 == 1 {
                        inversions += (b & ((1 << i) - 1)).count_ones();
                    }
                }
                let sign = if inversions % 2 == 0 { 1 } else { -1 };
                trip.push((a, b, a | b, q(sign)));
            }
        }
        SuperAlgebraTable::from_triplets(degrees, 0, trip)
            .expect("valid")
            .with_name(format!("G{n}"))
    }

    /// ℚ[t]/(t^m - 1), all even. Basis (1, t, …, t^{m-1}).
    pub fn cyclic(m: usize) -> SuperAlgebraTable {
        assert!(m >= 1);
        let mut trip = Vec::new();
        for a in 0..m {
            for b in 0..m {
                trip.push((a, b, (a + b) % m, q(1)));
            }
        }
        SuperAlgebraTable::from_triplets(vec![Parity::Even; m], 0, trip)
            .expect("valid")
            .with_name(format!("QtmodN:{m}"))
    }

    /// 2×2 matrix units (not supercommutative; negative control).
    pub fn matrix_units() -> SuperAlgebraTable {
        // basis e11, e12, e21, e22 ; unit = e11 + e22 is not a basis vector,
        // so present the unit as index 0 of a shifted basis: 1, e12, e21, e11
        // with e22 = 1 - e11.
        let one = 0;
        let (e12, e21, e11) = (1, 2, 3);
        let mut trip = vec![];
        for k in 0..4 {
            trip.push((one, k, k, q(1)));
            if k != one {
                trip.push((k, one, k, q(1)));
            }
        }
        // e12 e21 = e11, e21 e12 = e22 = 1 - e11
        trip.push((e12, e21, e11, q(1)));
        trip.push((e21, e12, one, q(1)));
        trip.push((e21, e12, e11, q(-1)));
        // e11 e12 = e12, e12 e11 = 0, e21 e11 = e21, e11 e21 = 0, e11 e11 = e11
        trip.push((e11, e12, e12, q(1)));
        trip.push((e21, e11, e21, q(1)));
        trip.push((e11, e11, e11, q(1)));
        SuperAlgebraTable::from_triplets(vec![Parity::Even; 4], one, trip)
            .expect("shape ok")
            .with_name("M2")
    }

    pub fn by_name(name: &str) -> Result<SuperAlgebraTable> {
        match name {
            "Q" => Ok(rationals()),
            "Geps" => Ok(dual_numbers()),
            "G1" => Ok(grassmann(1)),
            "G2" => Ok(grassmann(2)),
            other => {
                if let Some(m) = other.strip_prefix("QtmodN:") {
                    let m: usize = m
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad QtmodN order in {other:?}")))?;
                    if m == 0 {
                        return Err(Error::Parse("QtmodN order must be positive".into()));
                    }
                    return Ok(cyclic(m));
                }
                if let Some(n) = other.strip_prefix('G') {
                    if let Ok(n) = n.parse::<usize>() {
                        if n < 8 {
                            return Ok(grassmann(n));
                        }
                    }
                }
                Err(Error::Parse(format!("unknown algebra preset {other:?}")))
            }
        }
    }

    pub fn half() -> Q {
        qfrac(1, 2)
    }
}

#[cfg(test)]
mod tests {
    use super::presets::*;
    use super::*;

    fn el(t: &SuperAlgebraTable, c: &[i128]) -> AlgebraElement {
        t.element(c.iter().map(|x| q(*x)).collect()).unwrap()
    }

    #[test]
    fn presets_validate() {
        for t in [
            rationals(),
            dual_numbers(),
            grassmann(1),
            grassmann(2),
            grassmann(3),
            cyclic(3),
        ] {
            assert!(t.validate().is_ok(), "{t:?}: {:?}", t.validate());
        }
    }

    #[test]
    fn matrix_units_fail_supercommutativity_at_e12_e21() {
        let t = matrix_units();
        let report = t.validate();
        let sc: Vec<_> = report
            .violations
            .iter()
            .filter(|v| v.axiom == Axiom::Supercommutativity)
            .collect();
        assert!(sc.iter().any(|v| v.witness == vec![1, 2]), "{report:?}");
        assert!(!report
            .violations
            .iter()
            .any(|v| v.axiom == Axiom::Associativity));
    }

    #[test]
    fn malformed_shapes_are_structural_errors() {
        assert!(matches!(
            SuperAlgebraTable::from_triplets(vec![Parity::Even], 0, [(0, 1, 0, q(1))]),
            Err(Error::Shape(_))
        ));
        assert!(matches!(
            SuperAlgebraTable::from_triplets(vec![], 0, []),
            Err(Error::Shape(_))
        ));
        assert!(matches!(
            SuperAlgebraTable::from_triplets(vec![Parity::Even], 3, []),
            Err(Error::Shape(_))
        ));
    }

    #[test]
    fn grassmann_products() {
        let g = grassmann(2);
        let (x1, x2) = (g.basis_element(1), g.basis_element(2));
        assert_eq!(g.mul(&x1, &x2).unwrap(), g.basis_element(3));
        assert_eq!(g.mul(&x2, &x1).unwrap(), g.basis_element(3).scaled(q(-1)));
        assert!(g.mul(&x1, &x1).unwrap().is_zero());
        let a = el(&g, &[2, -1, 3, 5]);
        assert_eq!(g.mul(&g.one(), &a).unwrap(), a);
    }

    #[test]
    fn table_mismatch_is_reported() {
        let g = grassmann(1);
        let a = el(&grassmann(2), &[1, 0, 0, 0]);
        assert!(matches!(
            g.mul(&a, &g.one()),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn inversion() {
        let r = rationals();
        assert_eq!(r.invert(&r.scalar(q(2))).unwrap(), r.scalar(qfrac(1, 2)));

        let g = grassmann(2);
        let a = el(&g, &[1, 0, 0, 1]);
        assert_eq!(g.invert(&a).unwrap(), el(&g, &[1, 0, 0, -1]));

        let g1 = grassmann(1);
        assert!(matches!(
            g1.invert(&g1.basis_element(1)),
            Err(Error::NotInvertible)
        ));
        assert!(matches!(
            g1.invert(&el(&g1, &[1, 1])),
            Err(Error::NonHomogeneous)
        ));

        let d = dual_numbers();
        assert!(matches!(
            d.invert(&d.basis_element(1)),
            Err(Error::NotInvertible)
        ));
    }

    #[test]
    fn derivation_dimensions() {
        assert_eq!(rationals().derivations().dim(), 0);
        let d = dual_numbers().derivations();
        assert_eq!(d.dim(), 1);
        // spanned by ε d/dε : e1 -> e1, e0 -> 0
        let v = &d.part(Parity::Even).basis()[0];
        assert_eq!(v, &vec![q(0), q(0), q(0), q(1)]);
        let g1 = grassmann(1).derivations();
        assert_eq!(
            (g1.part(Parity::Even).dim(), g1.part(Parity::Odd).dim()),
            (1, 1)
        );
    }

    #[test]
    fn derivations_satisfy_leibniz_and_kill_the_unit() {
        for t in [dual_numbers(), grassmann(1), grassmann(2), cyclic(3)] {
            let der = t.derivations();
            for (p, v) in der.homogeneous_basis() {
                assert!(t.is_derivation(&v, p));
                assert!(is_zero_vec(&t.apply_operator(&v, t.one().coeffs())));
            }
        }
    }

    #[test]
    fn cyclic_algebra_has_no_derivations() {
        // ℚ[t]/(t^3-1) is étale over ℚ
        assert_eq!(cyclic(3).derivations().dim(), 0);
    }

    #[test]
    fn json_round_trip() {
        let g = grassmann(2);
        let v = g.to_json_value();
        let back = SuperAlgebraTable::from_json_value(&v).unwrap();
        assert_eq!(back.validate(), ValidationReport::default());
        assert_eq!(back.products, g.products);
    }
}
