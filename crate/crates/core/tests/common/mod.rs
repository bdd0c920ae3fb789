#![allow(dead_code)]

pub mod oracle;

use dbv::dbv::{Dbv, DbvAlgebra, Window};
use dbv::examples::{diamond, landau_ginzburg, random_finite, square_zero};
use dbv::series::scalar::int;
use dbv::series::{Monomial, Series, Variables, Vector};
use std::collections::BTreeSet;

use proptest::prelude::*;
use proptest::sample::Index;

/// Raw material for a random series: per term a basis pick, a monomial pick
/// and a coefficient.
pub type RawTerms = Vec<(Index, Index, i64)>;

pub fn raw_terms(max_terms: usize) -> impl Strategy<Value = RawTerms> {
    prop::collection::vec((any::<Index>(), any::<Index>(), -4i64..=4), 0..=max_terms)
}

/// Every nonzero monomial with `1 ≤ t-order ≤ t_order` and ħ-power
/// `≤ hbar_order`.
pub fn monomials(vars: &Variables, t_order: u32, hbar_order: u32) -> Vec<Monomial> {
    let mut words: Vec<Vec<u16>> = vec![vec![]];
    let mut out = BTreeSet::new();
    for _ in 0..t_order {
        let mut next = Vec::new();
        for w in &words {
            let last = w.last().copied().unwrap_or(0);
            for i in last..vars.len() as u16 {
                let mut w = w.clone();
                w.push(i);
                for h in 0..=hbar_order {
                    if let Some((m, _)) = Monomial::from_word(&w, h, vars).unwrap() {
                        out.insert(m);
                    }
                }
                next.push(w);
            }
        }
        words = next;
    }
    out.into_iter().collect()
}

pub fn algebra_by_index(k: usize) -> DbvAlgebra {
    match k % 5 {
        0 => landau_ginzburg("x^3").unwrap(),
        1 => landau_ginzburg("x^4 - x^2").unwrap(),
        2 => square_zero(),
        3 => diamond(),
        _ => random_finite(6, k as u64).unwrap(),
    }
}

pub fn finite_by_index(k: usize) -> DbvAlgebra {
    match k {
        0 => square_zero(),
        1 => diamond(),
        k => random_finite(4 + k % 5, k as u64).unwrap(),
    }
}

pub fn small_window() -> Window {
    Window { x_degree: 4, ..Window::default() }
}

/// Variables dual to the given basis elements: `deg t_i = -deg b_i`.
pub fn dual_variables(alg: &DbvAlgebra, picks: &[Index]) -> Variables {
    let basis = alg.window_basis(&small_window());
    Variables::new(picks.iter().map(|p| -alg.degree(basis[p.index(basis.len())])).collect())
}

/// Series with every term of total degree `degree`; a term is dropped when
/// no monomial fits its basis element.
pub fn homogeneous_series(
    alg: &DbvAlgebra,
    vars: &Variables,
    raw: &RawTerms,
    degree: i32,
    t_order: u32,
    hbar_order: u32,
) -> Series {
    let basis = alg.window_basis(&small_window());
    let all = monomials(vars, t_order, hbar_order);
    let mut s = Series::zero(vars.clone(), t_order, hbar_order);
    for (pick, mono, c) in raw {
        let e = basis[pick.index(basis.len())];
        let fits: Vec<&Monomial> = all
            .iter()
            .filter(|m| m.degree(vars, alg.hbar_degree()) + alg.degree(e) == degree)
            .collect();
        if fits.is_empty() {
            continue;
        }
        s.add_term(fits[mono.index(fits.len())].clone(), &Vector::term(e, int(*c)));
    }
    s
}

/// Series with arbitrary (possibly inhomogeneous) coefficients.
pub fn any_series(alg: &DbvAlgebra, vars: &Variables, raw: &RawTerms, t_order: u32, hbar_order: u32) -> Series {
    let basis = alg.window_basis(&small_window());
    let all = monomials(vars, t_order, hbar_order);
    let mut s = Series::zero(vars.clone(), t_order, hbar_order);
    for (pick, mono, c) in raw {
        s.add_term(all[mono.index(all.len())].clone(), &Vector::term(basis[pick.index(basis.len())], int(*c)));
    }
    s
}

/// No stored zeros and canonical monomials.
pub fn is_normalised(s: &Series) -> bool {
    s.terms().all(|(m, v)| {
        let sorted = m.vars().windows(2).all(|w| w[0] <= w[1]);
        let no_odd_square = m.vars().windows(2).all(|w| w[0] != w[1] || !s.vars().is_odd(w[0]));
        !v.is_zero() && v.iter().all(|(_, c)| *c != int(0)) && sorted && no_odd_square
    })
}

/// The oracle's `Γ` as a library series over `vars`.
pub fn gamma_to_series(gamma: &oracle::Gamma, vars: &Variables, t_order: u32, hbar_order: u32) -> Series {
    let mut s = Series::zero(vars.clone(), t_order, hbar_order);
    for ((word, p), v) in gamma {
        let Some((m, sign)) = Monomial::from_word(word, *p, vars).unwrap() else { continue };
        if m.t_order() > t_order || *p > hbar_order {
            continue;
        }
        let v = Vector::from_terms(v.iter().cloned().enumerate());
        let v = if sign.is_minus() { v.neg() } else { v };
        s.add_term(m, &v);
    }
    s
}

/// Cell-by-cell agreement between the obstruction grid and the oracle:
/// vanishing cells must be solvable by the oracle, failing cells exactly
/// those where the oracle proves row 1 unsolvable, and cells the grid does
/// not compute may be anything the oracle did not refute.
pub fn compare_grids(
    grid: &dbv::homology::ObstructionReport,
    og: &oracle::OracleGrid,
) -> std::result::Result<(), String> {
    use dbv::homology::CellStatus;
    use oracle::Verdict;
    for (n, row) in og.verdicts.iter().enumerate() {
        for (j, verdict) in row.iter().enumerate() {
            let status = grid.cell(n as u32 + 1, j as u32).status;
            let ok = match status {
                CellStatus::Vanishes => *verdict == Verdict::Vanish,
                CellStatus::Fails => *verdict == Verdict::Fail,
                CellStatus::NotComputed => *verdict != Verdict::Fail,
            };
            if !ok {
                return Err(format!("cell ({}, {}): grid {:?}, oracle {:?}", n + 1, j, status, verdict));
            }
        }
    }
    Ok(())
}
