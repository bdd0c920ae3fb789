//! The splitting β of `α : (V[[ħ]], K) → (V, Q)`.

use crate::dbv::{Dbv, DbvAlgebra};
use crate::error::{Error, Result};
use crate::series::{Series, Variables, Vector, UNBOUNDED};

use super::{AdaptedDecomposition, Homology, LiftOutcome};

/// β on the adapted basis: lifts on `H_rep`, the identity on `C`, and
/// `β(Qc) = Qc + ħΔc` on `B`, extended linearly.
#[derive(Clone, Debug)]
pub struct QuantumSplitting {
    decomposition: AdaptedDecomposition,
    lifts: Vec<Series>,
    certified: u32,
}

/// Build β from the lifts of every class; refuses when a class is obstructed.
pub fn build_beta(homology: &Homology, lifts: &[LiftOutcome]) -> Result<QuantumSplitting> {
    for (class, lift) in homology.classes().iter().zip(lifts) {
        if let LiftOutcome::Obstructed { stage, .. } = lift {
            return Err(Error::NotDegenerate {
                class: class.name.clone(),
                stage: *stage,
            });
        }
    }
    Ok(QuantumSplitting::from_lifts(homology, lifts))
}

impl QuantumSplitting {
    /// Also accepts partial lifts; `Kβ = βQ` then holds modulo
    /// `ħ^{s+1}` for the smallest obstruction stage `s`.
    pub fn from_lifts(homology: &Homology, lifts: &[LiftOutcome]) -> Self {
        let lifts: Vec<Series> = lifts.iter().map(|l| l.series().clone()).collect();
        let certified = lifts.iter().map(Series::hbar_order).min().unwrap_or(UNBOUNDED);
        Self {
            decomposition: homology.decomposition.clone(),
            lifts,
            certified,
        }
    }

    /// ħ-order to which `Kβ = βQ` holds; `None` when exact.
    pub fn certified_order(&self) -> Option<u32> {
        (self.certified != UNBOUNDED).then_some(self.certified)
    }

    /// `β(v)` as a series in ħ alone.
    pub fn apply(&self, alg: &DbvAlgebra, v: &Vector) -> Result<Series> {
        let split = self.decomposition.decompose(v)?;
        let mut out = Series::zero(Variables::none(), 0, self.certified);
        for (k, c) in split.h.iter() {
            out = out.add(&self.lifts[k].scale(c))?;
        }
        let plain = split.c.add(&split.b);
        let mut classical = Series::constant(Variables::none(), plain, 0, UNBOUNDED);
        let correction = Series::constant(Variables::none(), alg.delta(&split.b_preimage), 0, UNBOUNDED);
        classical = classical.add(&correction.mul_hbar(1))?;
        out.add(&classical)
    }

    /// β applied coefficient-wise to a series; ħ-powers already present
    /// multiply those of the images.
    pub fn apply_series(&self, alg: &DbvAlgebra, s: &Series) -> Result<Series> {
        let mut out = Series::zero(s.vars().clone(), s.t_order(), s.hbar_order().min(self.certified));
        for (m, v) in s.terms() {
            let image = self.apply(alg, v)?;
            for (hm, w) in image.terms() {
                let p = m.hbar_power() + hm.hbar_power();
                if p <= out.hbar_order() {
                    out.add_term(m.with_hbar(p), w);
                }
            }
        }
        Ok(out)
    }
}
