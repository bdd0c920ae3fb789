//! The inductive construction of a versal solution of `KΓ + ½[Γ,Γ] = 0`.

use serde::Serialize;

use crate::dbv::DbvAlgebra;
use crate::error::{Error, Result};
use crate::homology::{Homology, QuantumSplitting};
use crate::series::scalar::{factorial_inverse, ratio};
use crate::series::{Series, Vector, UNBOUNDED};

use super::{linear_series, residual, variables_for, Flavor, VersalSolution};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub t_order: u32,
    /// Iteration index `k` of `y_{n-k}`, when the identity depends on it.
    pub k: Option<u32>,
    pub identity: &'static str,
    pub holds: bool,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct QuantumTrace {
    pub checks: Vec<IdentityCheck>,
}

impl QuantumTrace {
    fn assert(&mut self, t_order: u32, k: Option<u32>, identity: &'static str, lhs: &Series, rhs: &Series) -> Result<()> {
        let holds = lhs.sub(rhs)?.is_zero();
        self.checks.push(IdentityCheck {
            t_order,
            k,
            identity,
            holds,
        });
        if holds {
            Ok(())
        } else {
            Err(Error::Invariant {
                order: t_order,
                what: match k {
                    Some(k) => format!("{identity} (k = {k})"),
                    None => identity.to_string(),
                },
            })
        }
    }

    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }
}

/// The pieces `Γ_1, …, Γ_n` of t-order exactly `n`, for `n ≤ t_order`
/// and as long as reliability stays nonnegative. Each `Γ_n` is known to ħ-order
/// `H − n + 1`, where `H` is the smaller of `internal_order` and the
/// certified order of β.
///
/// `Γ_1 = Σ β(γᵢ) tⁱ`; then `x = ord_n ½[Γ_{<n}, Γ_{<n}]`,
/// `y = ord_n(ħⁿ e^{Γ_{<n}/ħ})`, `y ← (1 − βα)y / ħ` repeated `n − 1` times
/// and `Γ_n = −y_1`. Every identity the argument relies on is asserted.
pub fn quantum_pieces(
    alg: &DbvAlgebra,
    homology: &Homology,
    beta: &QuantumSplitting,
    t_order: u32,
    internal_order: u32,
) -> Result<(Vec<Series>, QuantumTrace)> {
    let reps: Vec<Vector> = homology.classes().iter().map(|c| c.representative.clone()).collect();
    let vars = variables_for(alg, &reps);
    let lifted = reps.iter().map(|v| beta.apply(alg, v)).collect::<Result<Vec<_>>>()?;
    let reliable = lifted.iter().map(Series::hbar_order).min().unwrap_or(UNBOUNDED).min(internal_order);
    let gamma1 = linear_series(&vars, &lifted, t_order, reliable);
    let h = gamma1.hbar_order();
    let mut trace = QuantumTrace::default();
    let zero = Series::zero(vars.clone(), t_order, h);
    trace.assert(1, None, "K(Γ_1) = 0", &alg.apply_k(&gamma1)?, &zero)?;

    let alpha_beta = |y: &Series| beta.apply_series(alg, &y.set_hbar_zero());
    // pieces[n] = Γ_n; powers[k][m] = ord_m(Γ_{<·}^k) once every piece involved is known.
    let mut pieces = vec![Series::zero(vars.clone(), t_order, h), gamma1];
    let mut powers: Vec<Vec<Series>> = vec![Vec::new(), Vec::new()];
    let n_max = t_order.min(h.saturating_add(1));
    for n in 2..=n_max {
        let nu = n as usize;
        let mut x = Series::zero(vars.clone(), t_order, h);
        for a in 1..nu {
            x = x.add(&alg.series_bracket(&pieces[a], &pieces[nu - a])?)?;
        }
        let x = x.scale(&ratio(1, 2));

        // ord_n(G^k) for k ≥ 2, G = Γ_1 + ⋯ + Γ_{n-1}.
        powers.push(Vec::new());
        let mut y = Series::zero(vars.clone(), t_order, h);
        for k in 2..=nu {
            let mut term = Series::zero(vars.clone(), t_order, h);
            for a in 1..=(nu - k + 1) {
                let rest = if k == 2 { pieces[nu - a].clone() } else { powers[k - 1][nu - a].clone() };
                term = term.add(&alg.series_mul(&pieces[a], &rest)?)?;
            }
            while powers[k].len() <= nu {
                powers[k].push(Series::zero(vars.clone(), t_order, h));
            }
            powers[k][nu] = term.clone();
            y = y.add(&term.scale(&factorial_inverse(k as u32)).mul_hbar(n - k as u32))?;
        }

        trace.assert(n, Some(0), "K(y_n) = ħ^{n-1} x", &alg.apply_k(&y)?, &x.mul_hbar(n - 1))?;
        for k in 1..n {
            let ba = alpha_beta(&y)?;
            let zero = Series::zero(vars.clone(), t_order, ba.hbar_order());
            trace.assert(n, Some(k), "K(βα y) = 0", &alg.apply_k(&ba)?, &zero)?;
            let diff = y.sub(&ba)?;
            let divisible = diff.hbar_part(0).is_zero();
            trace.checks.push(IdentityCheck {
                t_order: n,
                k: Some(k),
                identity: "(1 − βα) y is divisible by ħ",
                holds: divisible,
            });
            y = diff.hbar_divide(1).map_err(|e| Error::Invariant {
                order: n,
                what: format!("(1 − βα) y is not divisible by ħ: {e}"),
            })?;
            trace.assert(n, Some(k), "K(y_{n-k}) = ħ^{n-k-1} x", &alg.apply_k(&y)?, &x.mul_hbar(n - k - 1))?;
        }
        let gamma_n = y.neg();
        trace.assert(n, None, "K(Γ_n) = −x", &alg.apply_k(&gamma_n)?, &x.neg())?;
        pieces.push(gamma_n);
    }
    Ok((pieces.split_off(1), trace))
}

/// A versal solution modulo `(t^{N+1}, ħ^{R+1})`, computed with internal
/// ħ-order `R + N`.
pub fn quantum_solve(
    alg: &DbvAlgebra,
    homology: &Homology,
    beta: &QuantumSplitting,
    t_order: u32,
    hbar_order: u32,
) -> Result<(VersalSolution, QuantumTrace)> {
    if t_order == 0 {
        return Err(Error::Precondition("t-order must be at least 1".into()));
    }
    let internal = hbar_order + t_order;
    if let Some(c) = beta.certified_order() {
        if c < internal {
            return Err(Error::InsufficientOrder { have: c, need: internal });
        }
    }
    let (pieces, trace) = quantum_pieces(alg, homology, beta, t_order, internal)?;
    let reps: Vec<Vector> = homology.classes().iter().map(|c| c.representative.clone()).collect();
    let mut gamma = Series::zero(variables_for(alg, &reps), t_order, hbar_order);
    for p in &pieces {
        gamma = gamma.add(&p.truncate(t_order, hbar_order))?;
    }
    if gamma.hbar_order() < hbar_order {
        return Err(Error::InsufficientOrder {
            have: gamma.hbar_order(),
            need: hbar_order,
        });
    }
    let r = residual(alg, &gamma, Flavor::Quantum)?;
    if !r.is_zero() {
        return Err(Error::Invariant {
            order: r.first_nonzero().map(|c| c.t_order).unwrap_or(0),
            what: "residual of the assembled solution is nonzero".into(),
        });
    }
    Ok((
        VersalSolution {
            gamma,
            flavor: Flavor::Quantum,
            classes: homology.classes().to_vec(),
            t_order,
            hbar_order: Some(hbar_order),
        },
        trace,
    ))
}
