//! Versal solutions of the classical Maurer–Cartan equation and of the
//! quantum master equation `KΓ + ½[Γ,Γ] = 0`, with residuals, verification
//! and observables.

mod file;
mod laurent;
mod observable;
mod quantum;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::dbv::{Dbv, DbvAlgebra, Window};
use crate::error::{Error, Result};
use crate::homology::{compute_homology_for, Differential, HomologyClass};
use crate::series::{Monomial, Series, Variables, Vector, UNBOUNDED};

pub use file::{verify_solution, SolutionFile, VariableRecord, VerifyReport};
pub use laurent::{conjugation_defect, Laurent};
pub use observable::{observable_extend, ObservableOutcome};
pub use quantum::{quantum_pieces, quantum_solve, IdentityCheck, QuantumTrace};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Flavor {
    /// `ΔΓ + ½[Γ,Γ] = 0`.
    ClassicalDelta,
    /// `(Q + Δ)Γ + ½[Γ,Γ] = 0`.
    ClassicalQPlusDelta,
    /// `KΓ + ½[Γ,Γ] = 0` with `K = Q + ħΔ`.
    Quantum,
    /// `QΓ + ½[Γ,Γ] = 0`, the Maurer–Cartan equation of `(V, Q, [,])`.
    ClassicalQ,
}

impl Flavor {
    pub fn name(self) -> &'static str {
        match self {
            Flavor::ClassicalDelta => "classical-delta",
            Flavor::ClassicalQPlusDelta => "classical-q-plus-delta",
            Flavor::Quantum => "quantum",
            Flavor::ClassicalQ => "classical-q",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        [Flavor::ClassicalDelta, Flavor::ClassicalQPlusDelta, Flavor::Quantum, Flavor::ClassicalQ]
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown flavor {s:?}")))
    }

    /// Differential whose homology supplies the linear coefficients.
    pub fn differential(self) -> Differential {
        match self {
            Flavor::ClassicalDelta => Differential::Delta,
            Flavor::ClassicalQPlusDelta => Differential::QPlusDelta,
            Flavor::Quantum | Flavor::ClassicalQ => Differential::Q,
        }
    }

    /// `D` applied coefficient-wise.
    pub fn apply(self, alg: &DbvAlgebra, s: &Series) -> Result<Series> {
        match self {
            Flavor::ClassicalDelta => Ok(alg.series_delta(s)),
            Flavor::ClassicalQPlusDelta => alg.series_q(s).add(&alg.series_delta(s)),
            Flavor::Quantum => alg.apply_k(s),
            Flavor::ClassicalQ => Ok(alg.series_q(s)),
        }
    }
}

/// `deg tⁱ = −deg γᵢ`, so that `Σ γᵢ tⁱ` has total degree 0. An
/// inhomogeneous representative (possible for `Q + Δ`) uses the degree of its
/// leading basis element, which fixes the parity.
pub fn variables_for(alg: &DbvAlgebra, reps: &[Vector]) -> Variables {
    Variables::new(
        reps.iter()
            .map(|v| match v.degree(|i| alg.degree(i)) {
                Some(d) => -d,
                None => v.leading().map(|(i, _)| -alg.degree(i)).unwrap_or(0),
            })
            .collect(),
    )
}

/// `Σ coefficient_i tⁱ`.
pub fn linear_series(vars: &Variables, coefficients: &[Series], t_order: u32, hbar_order: u32) -> Series {
    let mut out = Series::zero(vars.clone(), t_order, hbar_order);
    for (i, c) in coefficients.iter().enumerate() {
        for (m, v) in c.terms() {
            out.add_term(Monomial::var(i as u16).with_hbar(m.hbar_power()), v);
        }
    }
    out
}

#[derive(Clone, Debug)]
pub struct VersalSolution {
    pub gamma: Series,
    pub flavor: Flavor,
    pub classes: Vec<HomologyClass>,
    pub t_order: u32,
    /// ħ-order to which the residual vanishes; `None` for classical flavors.
    pub hbar_order: Option<u32>,
}

/// `Γ = log(1 + Σ γᵢ tⁱ)` for `D`-closed `γᵢ`, `D = Δ` or `Q + Δ`.
pub fn classical_solve_log(
    alg: &DbvAlgebra,
    flavor: Flavor,
    classes: &[HomologyClass],
    t_order: u32,
) -> Result<VersalSolution> {
    if !matches!(flavor, Flavor::ClassicalDelta | Flavor::ClassicalQPlusDelta) {
        return Err(Error::Precondition(format!(
            "the log construction needs flavor classical-delta or classical-q-plus-delta, not {}",
            flavor.name()
        )));
    }
    let diff = flavor.differential();
    for c in classes {
        if !diff.apply(alg, &c.representative).is_zero() {
            return Err(Error::NotClosed(format!(
                "{} is not closed under {}",
                alg.display(&c.representative),
                flavor.name()
            )));
        }
    }
    let reps: Vec<Vector> = classes.iter().map(|c| c.representative.clone()).collect();
    let vars = variables_for(alg, &reps);
    let coeffs: Vec<Series> = reps
        .iter()
        .map(|v| Series::constant(Variables::none(), v.clone(), 0, UNBOUNDED))
        .collect();
    let mut u = linear_series(&vars, &coeffs, t_order, UNBOUNDED);
    u.add_term(Monomial::one(), &alg.unit_vector());
    let gamma = alg.series_log(&u)?;
    Ok(VersalSolution {
        gamma,
        flavor,
        classes: classes.to_vec(),
        t_order,
        hbar_order: None,
    })
}

/// Homology of the flavor's differential followed by [`classical_solve_log`].
pub fn classical_solve(alg: &DbvAlgebra, flavor: Flavor, window: &Window, t_order: u32) -> Result<VersalSolution> {
    let homology = compute_homology_for(alg, window, flavor.differential())?;
    classical_solve_log(alg, flavor, homology.classes(), t_order)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResidualCell {
    pub t_order: u32,
    pub hbar: u32,
    pub zero: bool,
}

#[derive(Clone, Debug)]
pub struct Residual {
    pub value: Series,
    pub flavor: Flavor,
    /// One cell per `(t-order, ħ-power)` inside the checked range.
    pub cells: Vec<ResidualCell>,
}

impl Residual {
    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    pub fn first_nonzero(&self) -> Option<&ResidualCell> {
        self.cells.iter().find(|c| !c.zero)
    }

    /// Nonzero part of the residual per ħ-power, displayed.
    pub fn by_hbar(&self, alg: &DbvAlgebra) -> BTreeMap<u32, Vec<String>> {
        let mut out: BTreeMap<u32, Vec<String>> = BTreeMap::new();
        for (m, v) in self.value.terms() {
            out.entry(m.hbar_power()).or_default().push(format!(
                "({}) t^{:?}",
                alg.display(v),
                m.vars().iter().map(|i| i + 1).collect::<Vec<_>>()
            ));
        }
        out
    }
}

/// `DΓ + ½[Γ,Γ]` to the truncation orders of `Γ`.
pub fn residual(alg: &DbvAlgebra, gamma: &Series, flavor: Flavor) -> Result<Residual> {
    let value = alg.master_expression(gamma, flavor.apply(alg, gamma)?)?;
    let max_t = value.t_order().min(gamma.max_t_power().unwrap_or(0).saturating_mul(2).max(1));
    let max_h = if value.hbar_order() == UNBOUNDED {
        value.max_hbar_power().unwrap_or(0).max(gamma.max_hbar_power().unwrap_or(0) + 1)
    } else {
        value.hbar_order()
    };
    let mut cells = Vec::new();
    for n in 0..=max_t {
        for p in 0..=max_h {
            let zero = value.terms().all(|(m, _)| m.t_order() != n || m.hbar_power() != p);
            cells.push(ResidualCell { t_order: n, hbar: p, zero });
        }
    }
    Ok(Residual { value, flavor, cells })
}
