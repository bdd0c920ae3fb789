//! Series with finitely many negative powers of ħ, used only to evaluate
//! `e^{±γ/ħ}`.

use crate::dbv::{Dbv, DbvAlgebra};
use crate::error::{Error, Result};
use crate::series::scalar::{factorial_inverse, ratio};
use crate::series::{Series, UNBOUNDED};

/// `ħ^{-shift} · body`.
#[derive(Clone, Debug)]
pub struct Laurent {
    pub shift: u32,
    pub body: Series,
}

impl Laurent {
    /// `e^{±γ/ħ} = ħ^{-N} Σ_{k≤N} ħ^{N-k} (±γ)^k / k!` for `γ` without
    /// t-constant term, `N` its t-order.
    pub fn exp_over_hbar(alg: &DbvAlgebra, gamma: &Series, negate: bool) -> Result<Self> {
        if !gamma.t_constant_part().is_zero() {
            return Err(Error::Precondition("e^{γ/ħ} needs γ without t-constant term".into()));
        }
        let n = gamma.t_order();
        if n == crate::series::UNBOUNDED {
            return Err(Error::Precondition("e^{γ/ħ} needs a finite t-order".into()));
        }
        let g = if negate { gamma.neg() } else { gamma.clone() };
        let mut power = Series::constant(g.vars().clone(), alg.unit_vector(), g.t_order(), g.hbar_order());
        let mut body = power.mul_hbar(n);
        for k in 1..=n {
            power = alg.series_mul(&power, &g)?;
            body = body.add(&power.scale(&factorial_inverse(k)).mul_hbar(n - k))?;
        }
        Ok(Self { shift: n, body })
    }

    pub fn mul(&self, alg: &DbvAlgebra, other: &Laurent) -> Result<Laurent> {
        Ok(Laurent {
            shift: self.shift + other.shift,
            body: alg.series_mul(&self.body, &other.body)?,
        })
    }

    pub fn apply_k(&self, alg: &DbvAlgebra) -> Result<Laurent> {
        Ok(Laurent {
            shift: self.shift,
            body: alg.apply_k(&self.body)?,
        })
    }

    pub fn mul_hbar(&self, k: u32) -> Laurent {
        let cancel = k.min(self.shift);
        Laurent {
            shift: self.shift - cancel,
            body: self.body.mul_hbar(k - cancel),
        }
    }

    /// The ordinary series, if no negative power survives.
    pub fn into_series(self) -> Result<Series> {
        self.body.hbar_divide(self.shift)
    }

    pub fn has_negative_powers(&self) -> bool {
        self.body.terms().any(|(m, _)| m.hbar_power() < self.shift)
    }
}

/// `e^{−γ/ħ} ħK(e^{γ/ħ}) − (Kγ + ½[γ,γ])`, which vanishes for even `γ`.
pub fn conjugation_defect(alg: &DbvAlgebra, gamma: &Series) -> Result<Series> {
    if !gamma.is_even(|i| alg.is_odd(i)) {
        return Err(Error::Precondition("conjugation identity needs an even γ".into()));
    }
    // Both sides are polynomial in the coefficients of γ, so its stored terms
    // are treated as exact and the result is cut back to γ's ħ-order.
    let exact = gamma.clone().with_orders(gamma.t_order(), UNBOUNDED);
    let plus = Laurent::exp_over_hbar(alg, &exact, false)?;
    let minus = Laurent::exp_over_hbar(alg, &exact, true)?;
    let lhs = minus.mul(alg, &plus.apply_k(alg)?.mul_hbar(1))?.into_series()?;
    let rhs = alg.apply_k(&exact)?.add(&alg.series_bracket(&exact, &exact)?.scale(&ratio(1, 2)))?;
    Ok(lhs.sub(&rhs)?.truncate(gamma.t_order(), gamma.hbar_order()))
}
