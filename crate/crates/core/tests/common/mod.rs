//! Helpers shared by the integration tests: corpus loading and oracles that
//! recompute dimensions by plain dense elimination, without the library's
//! solver.

#![allow(dead_code)]

use std::path::PathBuf;

use num_traits::{One, Zero};
use superosp::einfty::EInfty;
use superosp::instance::{Instance, InstanceSpec};
use superosp::par::Execution;
use superosp::superring::SuperAlgebraTable;
use superosp::{Parity, Q};

pub const VALID: &[&str] = &[
    "so5",
    "osp_1_2",
    "q_so2_plus_R1",
    "q_so2_plus_R2",
    "q_so2_plus_R1_osp",
    "zero_form_osp",
    "dualnum_so3",
    "dualnum_so3_plus_R1",
    "dualnum_so2_plus_R2",
    "dualnum_so2_plus_P",
    "g1_osp_2_1",
    "g1_odd_pair",
    "g2_mixed",
    "g2_so3",
    "cyclic2_so3",
];

pub fn corpus_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("corpus")
        .join(format!("{name}.json"))
}

pub fn load(name: &str) -> Instance {
    InstanceSpec::from_path(corpus_path(name))
        .unwrap()
        .build(Execution::best())
        .unwrap()
}

/// Rank by textbook Gaussian elimination over ℚ.
pub fn oracle_rank<I: IntoIterator<Item = Vec<Q>>>(rows: I) -> usize {
    let mut basis: Vec<(usize, Vec<Q>)> = Vec::new();
    for mut r in rows {
        for (p, b) in &basis {
            let c = r[*p];
            if !c.is_zero() {
                for (x, y) in r.iter_mut().zip(b) {
                    if !y.is_zero() {
                        *x -= c * y;
                    }
                }
            }
        }
        if let Some(p) = r.iter().position(|x| !x.is_zero()) {
            let inv = Q::one() / r[p];
            r.iter_mut().for_each(|x| *x *= inv);
            basis.push((p, r));
        }
    }
    basis.len()
}

/// Unknowns of a degree-`α` map on a graded basis: entries `(w, t)` with
/// `p(w) = p(t) + α`.
fn slots(parities: &[Parity], alpha: Parity) -> Vec<Option<usize>> {
    let n = parities.len();
    let mut next = 0;
    let mut out = vec![None; n * n];
    for w in 0..n {
        for t in 0..n {
            if parities[w] == parities[t] + alpha {
                out[w * n + t] = Some(next);
                next += 1;
            }
        }
    }
    out
}

/// `dim Der(L)` from the Leibniz rule on every basis pair.
pub fn oracle_der_dim(l: &EInfty) -> usize {
    let n = l.dim();
    let basis = |u: usize| {
        let mut v = vec![Q::zero(); n];
        v[u] = Q::one();
        v
    };
    let c: Vec<Vec<Q>> = (0..n * n)
        .map(|i| l.bracket(&basis(i / n), &basis(i % n)))
        .collect();
    let par: Vec<Parity> = (0..n).map(|u| l.parity(u)).collect();
    Parity::ALL
        .iter()
        .map(|&alpha| {
            let s = slots(&par, alpha);
            let k = s.iter().flatten().count();
            let mut rows = Vec::new();
            for u in 0..n {
                for v in 0..n {
                    let sign = if alpha.is_odd() && par[u].is_odd() {
                        -Q::one()
                    } else {
                        Q::one()
                    };
                    for w in 0..n {
                        let mut row = vec![Q::zero(); k];
                        // d([u,v])_w
                        for (t, x) in c[u * n + v].iter().enumerate() {
                            if let Some(j) = s[w * n + t] {
                                row[j] += x;
                            }
                        }
                        // [d(u), v]_w and [u, d(v)]_w
                        for t in 0..n {
                            if let Some(j) = s[t * n + u] {
                                row[j] -= c[t * n + v][w];
                            }
                            if let Some(j) = s[t * n + v] {
                                row[j] -= sign * c[u * n + t][w];
                            }
                        }
                        if row.iter().any(|x| !x.is_zero()) {
                            rows.push(row);
                        }
                    }
                }
            }
            k - oracle_rank(rows)
        })
        .sum()
}

/// `dim ad(L)`.
pub fn oracle_ad_dim(l: &EInfty) -> usize {
    oracle_rank((0..l.dim()).map(|u| l.ad(u)))
}

/// `dim Der_ℚ(A)` from the Leibniz rule on the structure constants.
pub fn oracle_der_algebra_dim(alg: &SuperAlgebraTable) -> usize {
    let d = alg.dim();
    let par = alg.degrees().to_vec();
    Parity::ALL
        .iter()
        .map(|&alpha| {
            let s = slots(&par, alpha);
            let k = s.iter().flatten().count();
            let mut rows = Vec::new();
            for a in 0..d {
                for b in 0..d {
                    let sign = if alpha.is_odd() && par[a].is_odd() {
                        -Q::one()
                    } else {
                        Q::one()
                    };
                    for m in 0..d {
                        let mut row = vec![Q::zero(); k];
                        for t in 0..d {
                            if let Some(j) = s[m * d + t] {
                                row[j] += alg.structure_constant(a, b, t);
                            }
                            if let Some(j) = s[t * d + a] {
                                row[j] -= alg.structure_constant(t, b, m);
                            }
                            if let Some(j) = s[t * d + b] {
                                row[j] -= sign * alg.structure_constant(a, t, m);
                            }
                        }
                        if row.iter().any(|x| !x.is_zero()) {
                            rows.push(row);
                        }
                    }
                }
            }
            k - oracle_rank(rows)
        })
        .sum()
}
