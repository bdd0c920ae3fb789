//! Brute-force solvability of the quantum master equation on a finite
//! algebra, written independently of the library's series and homology code.
//! Only the structure constants (product, Q, Delta, degrees) and the chosen
//! class representatives are taken from the library.

#![allow(clippy::needless_range_loop)]

use std::collections::BTreeMap;

use dbv::dbv::{Dbv, DbvAlgebra};
use dbv::series::Scalar;
use num_traits::{One, Zero};

type Dense = Vec<Scalar>;

/// `E` with `E·A` in reduced row echelon form; solves `A x = b` for many `b`.
pub struct DenseSolver {
    transform: Vec<Dense>,
    pivots: Vec<usize>,
    cols: usize,
}

impl DenseSolver {
    pub fn new(a: &[Dense], cols: usize) -> Self {
        let rows = a.len();
        let mut m: Vec<Dense> = a.to_vec();
        let mut e: Vec<Dense> = (0..rows)
            .map(|r| (0..rows).map(|c| if r == c { Scalar::one() } else { Scalar::zero() }).collect())
            .collect();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
            m.swap(r, p);
            e.swap(r, p);
            let inv = m[r][c].recip();
            for x in m[r].iter_mut().chain(e[r].iter_mut()) {
                *x = &*x * &inv;
            }
            for i in 0..rows {
                if i != r && !m[i][c].is_zero() {
                    let f = m[i][c].clone();
                    for k in 0..cols {
                        let d = &f * &m[r][k];
                        m[i][k] -= d;
                    }
                    for k in 0..rows {
                        let d = &f * &e[r][k];
                        e[i][k] -= d;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        Self { transform: e, pivots, cols }
    }

    pub fn solve(&self, b: &[Scalar]) -> Option<Dense> {
        let y: Dense = self
            .transform
            .iter()
            .map(|row| row.iter().zip(b).fold(Scalar::zero(), |acc, (e, x)| acc + e * x))
            .collect();
        if y[self.pivots.len()..].iter().any(|v| !v.is_zero()) {
            return None;
        }
        let mut x = vec![Scalar::zero(); self.cols];
        for (r, &c) in self.pivots.iter().enumerate() {
            x[c] = y[r].clone();
        }
        Some(x)
    }
}

/// Coefficients of `Γ` keyed by (sorted variable word, ħ power).
pub type Gamma = BTreeMap<(Vec<u16>, u32), Dense>;

pub struct Oracle {
    dim: usize,
    odd: Vec<bool>,
    var_odd: Vec<bool>,
    reps: Vec<Dense>,
    q: Vec<Dense>,
    delta: Vec<Dense>,
    bracket: Vec<Vec<Dense>>,
}

fn dense(alg: &DbvAlgebra, v: &dbv::series::Vector) -> Dense {
    let n = dbv_dim(alg);
    let mut out = vec![Scalar::zero(); n];
    for (i, c) in v.iter() {
        out[i] = c.clone();
    }
    out
}

pub fn dbv_dim(alg: &DbvAlgebra) -> usize {
    match alg {
        DbvAlgebra::Finite(f) => f.dim(),
        DbvAlgebra::LandauGinzburg(_) => panic!("oracle needs a finite algebra"),
    }
}

fn sign_of(odd: bool) -> Scalar {
    if odd {
        -Scalar::one()
    } else {
        Scalar::one()
    }
}

impl Oracle {
    pub fn new(alg: &DbvAlgebra, reps: &[dbv::series::Vector]) -> Self {
        let dim = dbv_dim(alg);
        let odd: Vec<bool> = (0..dim).map(|i| alg.degree(i).rem_euclid(2) == 1).collect();
        let mul: Vec<Vec<Dense>> = (0..dim).map(|i| (0..dim).map(|j| dense(alg, &alg.mul_basis(i, j))).collect()).collect();
        let q: Vec<Dense> = (0..dim).map(|i| dense(alg, &alg.q_basis(i))).collect();
        let delta: Vec<Dense> = (0..dim).map(|i| dense(alg, &alg.delta_basis(i))).collect();
        let apply = |m: &[Dense], v: &Dense| -> Dense {
            let mut out = vec![Scalar::zero(); dim];
            for (i, c) in v.iter().enumerate() {
                if !c.is_zero() {
                    for k in 0..dim {
                        out[k] += c * &m[i][k];
                    }
                }
            }
            out
        };
        // [e_i, e_j] = (-1)^{|i|} (Δ(e_i e_j) - Δ(e_i) e_j - (-1)^{|i|} e_i Δ(e_j))
        let mut bracket = vec![vec![vec![Scalar::zero(); dim]; dim]; dim];
        for i in 0..dim {
            for j in 0..dim {
                let mut d = apply(&delta, &mul[i][j]);
                for (a, c) in delta[i].iter().enumerate() {
                    for k in 0..dim {
                        d[k] -= c * &mul[a][j][k];
                    }
                }
                for (b, c) in delta[j].iter().enumerate() {
                    for k in 0..dim {
                        d[k] -= sign_of(odd[i]) * c * &mul[i][b][k];
                    }
                }
                bracket[i][j] = d.into_iter().map(|x| sign_of(odd[i]) * x).collect();
            }
        }
        let reps: Vec<Dense> = reps.iter().map(|r| dense(alg, r)).collect();
        let var_odd = reps
            .iter()
            .map(|r| {
                let i = r.iter().position(|c| !c.is_zero()).expect("zero representative");
                odd[i]
            })
            .collect();
        Self { dim, odd, var_odd, reps, q, delta, bracket }
    }

    pub fn variable_count(&self) -> usize {
        self.reps.len()
    }

    fn word_odd(&self, w: &[u16]) -> bool {
        w.iter().filter(|&&i| self.var_odd[i as usize]).count() % 2 == 1
    }

    /// Sorted product of two words and whether the reordering is odd.
    fn word_mul(&self, a: &[u16], b: &[u16]) -> Option<(Vec<u16>, bool)> {
        let mut w: Vec<u16> = a.iter().chain(b).copied().collect();
        let mut negative = false;
        for i in 1..w.len() {
            let mut k = i;
            while k > 0 && w[k - 1] > w[k] {
                if self.var_odd[w[k - 1] as usize] && self.var_odd[w[k] as usize] {
                    negative = !negative;
                }
                w.swap(k - 1, k);
                k -= 1;
            }
        }
        if w.windows(2).any(|p| p[0] == p[1] && self.var_odd[p[0] as usize]) {
            return None;
        }
        Some((w, negative))
    }

    /// The block matrix of `v ↦ (Q v_0, Q v_1 + Δ v_0, ...)` on `precision`
    /// ħ-powers; columns are the unknowns `v_p[k]`.
    fn k_matrix(&self, precision: usize, first_unknown: usize) -> Vec<Dense> {
        let n = self.dim;
        let cols = n * (precision - first_unknown);
        let mut rows = vec![vec![Scalar::zero(); cols]; n * precision];
        for p in first_unknown..precision {
            for i in 0..n {
                let col = (p - first_unknown) * n + i;
                for k in 0..n {
                    rows[p * n + k][col] += &self.q[i][k];
                    if p + 1 < precision {
                        rows[(p + 1) * n + k][col] += &self.delta[i][k];
                    }
                }
            }
        }
        rows
    }

    /// Largest `P ≤ limit` such that every representative extends to a
    /// K-closed element modulo `ħ^P`.
    pub fn row_one_precision(&self, limit: usize) -> usize {
        (1..=limit).take_while(|&p| self.row_one(p).is_some()).last().unwrap_or(0)
    }

    /// All `γ_i = rep_i + ħ(...)` with `Kγ_i = 0` mod ħ^precision.
    fn row_one(&self, precision: usize) -> Option<Vec<Vec<Dense>>> {
        let n = self.dim;
        let solver = DenseSolver::new(&self.k_matrix(precision, 1), n * (precision - 1));
        let mut out = Vec::new();
        for rep in &self.reps {
            let mut rhs = vec![Scalar::zero(); n * precision];
            for (i, c) in rep.iter().enumerate() {
                for k in 0..n {
                    rhs[k] -= c * &self.q[i][k];
                    if precision > 1 {
                        rhs[n + k] -= c * &self.delta[i][k];
                    }
                }
            }
            let x = solver.solve(&rhs)?;
            let mut parts = vec![rep.clone()];
            parts.extend(x.chunks(n).map(|c| c.to_vec()));
            out.push(parts);
        }
        Some(out)
    }

    /// Greedy order-by-order solution with ħ-precision `top + 2 - m` at
    /// t-order `m`. Returns the solution and the last t-order reached.
    pub fn greedy(&self, top: usize, max_order: usize) -> (Gamma, usize) {
        let n = self.dim;
        let mut gamma = Gamma::new();
        let Some(first) = self.row_one(top + 1) else { return (gamma, 0) };
        for (i, parts) in first.into_iter().enumerate() {
            for (p, v) in parts.into_iter().enumerate() {
                gamma.insert((vec![i as u16], p as u32), v);
            }
        }
        let mut reached = 1;
        for m in 2..=max_order.min(top + 1) {
            let precision = top + 2 - m;
            let forcing = self.half_bracket_at_order(&gamma, m, precision);
            let solver = DenseSolver::new(&self.k_matrix(precision, 0), n * precision);
            let mut solved = Vec::new();
            for (word, rhs) in forcing {
                let neg: Dense = rhs.into_iter().map(|x| -x).collect();
                match solver.solve(&neg) {
                    Some(x) => solved.push((word, x)),
                    None => return (gamma, reached),
                }
            }
            for (word, x) in solved {
                for (p, c) in x.chunks(n).enumerate() {
                    if c.iter().any(|v| !v.is_zero()) {
                        gamma.insert((word.clone(), p as u32), c.to_vec());
                    }
                }
            }
            reached = m;
        }
        (gamma, reached)
    }

    /// `½ Σ [Γ_a, Γ_b]` at t-order `m`, stacked by ħ power below `precision`.
    fn half_bracket_at_order(&self, gamma: &Gamma, m: usize, precision: usize) -> BTreeMap<Vec<u16>, Dense> {
        let n = self.dim;
        let half = Scalar::new(1.into(), 2.into());
        let mut out: BTreeMap<Vec<u16>, Dense> = BTreeMap::new();
        for ((wa, pa), va) in gamma {
            for ((wb, pb), vb) in gamma {
                let p = (pa + pb) as usize;
                if wa.len() + wb.len() != m || p >= precision {
                    continue;
                }
                let Some((w, negative)) = self.word_mul(wa, wb) else { continue };
                let ma_odd = self.word_odd(wa);
                let slot = out.entry(w).or_insert_with(|| vec![Scalar::zero(); n * precision]);
                for (i, ci) in va.iter().enumerate() {
                    if ci.is_zero() {
                        continue;
                    }
                    for (j, cj) in vb.iter().enumerate() {
                        if cj.is_zero() {
                            continue;
                        }
                        // (v m)(w n) -> (-1)^{|m|(|w|+1)} [v,w] mn for the odd bracket
                        let s = sign_of(negative ^ (ma_odd && !self.odd[j]));
                        let c = s * ci * cj * &half;
                        for k in 0..n {
                            slot[p * n + k] += &c * &self.bracket[i][j][k];
                        }
                    }
                }
            }
        }
        out
    }
}

/// Verdict of the oracle on one cell (t-order `n`, modulo ħ^{j+1}).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Vanish,
    Fail,
    Undecided,
}

pub struct OracleGrid {
    /// `verdicts[n-1][j]`.
    pub verdicts: Vec<Vec<Verdict>>,
    /// One greedy solution per `top = j + n - 1`, with the t-order reached.
    pub solutions: BTreeMap<usize, (Gamma, usize)>,
}

pub fn oracle_grid(oracle: &Oracle, t_order: usize, hbar_order: usize) -> OracleGrid {
    let row_one = oracle.row_one_precision(hbar_order + 1);
    let mut solutions = BTreeMap::new();
    let mut verdicts = vec![vec![Verdict::Undecided; hbar_order + 1]; t_order];
    for n in 1..=t_order {
        for j in 0..=hbar_order {
            verdicts[n - 1][j] = if j + 1 > row_one {
                Verdict::Fail
            } else {
                let top = j + n - 1;
                let (_, reached) = solutions.entry(top).or_insert_with(|| oracle.greedy(top, t_order));
                if *reached >= n {
                    Verdict::Vanish
                } else {
                    Verdict::Undecided
                }
            };
        }
    }
    OracleGrid { verdicts, solutions }
}
