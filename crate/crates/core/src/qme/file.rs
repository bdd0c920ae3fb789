//! Solution files and their verification.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::dbv::spec_file::algebra_hash;
use crate::dbv::{Dbv, DbvAlgebra, Window};
use crate::error::{Error, Result};
use crate::homology::{compute_homology_for, HomologyClass};
use crate::linalg::Span;
use crate::series::json::{from_records, to_records, TermRecord};
use crate::series::{Monomial, Vector, UNBOUNDED};

use super::{residual, variables_for, Flavor, ResidualCell, VersalSolution};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VariableRecord {
    /// One-based, as in the monomial records.
    pub index: u16,
    pub degree: i32,
    pub class: String,
    pub representative: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolutionFile {
    pub algebra_hash: String,
    pub flavor: Flavor,
    pub t_order: u32,
    /// `null` for classical solutions, which contain no ħ.
    pub hbar_order: Option<u32>,
    pub variables: Vec<VariableRecord>,
    pub gamma: Vec<TermRecord>,
}

impl SolutionFile {
    pub fn from_solution(alg: &DbvAlgebra, sol: &VersalSolution) -> Self {
        let vars = sol.gamma.vars();
        SolutionFile {
            algebra_hash: algebra_hash(alg),
            flavor: sol.flavor,
            t_order: sol.t_order,
            hbar_order: sol.hbar_order,
            variables: sol
                .classes
                .iter()
                .enumerate()
                .map(|(i, c)| VariableRecord {
                    index: i as u16 + 1,
                    degree: vars.degree(i as u16),
                    class: c.name.clone(),
                    representative: c.representative.to_named(|k| alg.name(k)),
                })
                .collect(),
            gamma: to_records(&sol.gamma, |k| alg.name(k)),
        }
    }

    pub fn to_json(&self, pretty: bool) -> String {
        if pretty {
            serde_json::to_string_pretty(self).expect("solution serializes")
        } else {
            serde_json::to_string(self).expect("solution serializes")
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    /// Rebuild the solution against `alg`.
    pub fn to_solution(&self, alg: &DbvAlgebra) -> Result<VersalSolution> {
        let hash = algebra_hash(alg);
        if hash != self.algebra_hash {
            return Err(Error::BasisMismatch(format!(
                "solution was computed for algebra {}, not {hash}",
                self.algebra_hash
            )));
        }
        let mut classes = Vec::new();
        for (k, v) in self.variables.iter().enumerate() {
            if v.index as usize != k + 1 {
                return Err(Error::Parse("variables must be listed with indices 1, 2, …".into()));
            }
            let representative = Vector::from_named(&v.representative, |n| alg.index_of(n))?;
            classes.push(HomologyClass {
                name: v.class.clone(),
                degree: representative.degree(|i| alg.degree(i)).unwrap_or(-v.degree),
                representative,
            });
        }
        let reps: Vec<Vector> = classes.iter().map(|c| c.representative.clone()).collect();
        let vars = variables_for(alg, &reps);
        for (k, v) in self.variables.iter().enumerate() {
            if vars.degree(k as u16) != v.degree {
                return Err(Error::Parse(format!(
                    "variable t{} has degree {} but its representative forces {}",
                    k + 1,
                    v.degree,
                    vars.degree(k as u16)
                )));
            }
        }
        let gamma = from_records(
            &self.gamma,
            vars,
            self.t_order,
            self.hbar_order.unwrap_or(UNBOUNDED),
            |n| alg.index_of(n),
        )?;
        Ok(VersalSolution {
            gamma,
            flavor: self.flavor,
            classes,
            t_order: self.t_order,
            hbar_order: self.hbar_order,
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub accepted: bool,
    pub flavor: Flavor,
    /// Whether ħ was set to zero before a classical check.
    pub projected: bool,
    pub residual_zero: bool,
    pub first_nonzero_cell: Option<ResidualCell>,
    /// The ħ-free linear coefficients are closed and form a basis of homology.
    pub versal: bool,
    /// The ħ-free linear coefficients equal the recorded representatives.
    pub representatives_match: bool,
    /// For quantum checks: whether `Γ|_{ħ=0}` solves `QΓ + ½[Γ,Γ] = 0`.
    pub classical_projection: Option<bool>,
    pub reasons: Vec<String>,
}

/// Recompute the residual of a stored solution under `flavor`, and check the
/// versality initial condition.
pub fn verify_solution(alg: &DbvAlgebra, file: &SolutionFile, flavor: Flavor, window: &Window) -> Result<VerifyReport> {
    let sol = file.to_solution(alg)?;
    let mut reasons = Vec::new();
    let has_hbar = sol.gamma.max_hbar_power().unwrap_or(0) > 0;
    let projected = flavor != Flavor::Quantum && has_hbar;
    let gamma = if flavor == Flavor::Quantum {
        sol.gamma.clone()
    } else {
        sol.gamma.set_hbar_zero().with_orders(sol.t_order, UNBOUNDED)
    };

    let r = residual(alg, &gamma, flavor)?;
    let residual_zero = r.is_zero();
    let first_nonzero_cell = r.first_nonzero().cloned();
    if let Some(c) = &first_nonzero_cell {
        reasons.push(format!("residual is nonzero at t-order {} and ħ^{}", c.t_order, c.hbar));
    }

    let coefficients: Vec<Vector> = (0..sol.classes.len())
        .map(|i| gamma.coefficient(&Monomial::var(i as u16)))
        .collect();
    let representatives_match = coefficients.iter().zip(&sol.classes).all(|(c, k)| c == &k.representative);
    if !representatives_match {
        reasons.push("linear coefficients differ from the recorded representatives".into());
    }
    let homology = compute_homology_for(alg, window, flavor.differential())?;
    let closed = coefficients.iter().all(|c| flavor.differential().apply(alg, c).is_zero());
    let mut span = Span::new();
    let mut independent = true;
    for c in &coefficients {
        if closed {
            independent &= span.push(&homology.decomposition.decompose(c)?.h);
        }
    }
    let versal = closed && independent && coefficients.len() == homology.classes().len();
    if !versal {
        reasons.push("linear coefficients do not form a basis of homology".into());
    }

    let classical_projection = if flavor == Flavor::Quantum {
        let alpha = gamma.set_hbar_zero().with_orders(sol.t_order, UNBOUNDED);
        let ok = residual(alg, &alpha, Flavor::ClassicalQ)?.is_zero();
        if !ok {
            reasons.push("Γ at ħ = 0 does not solve QΓ + ½[Γ,Γ] = 0".into());
        }
        Some(ok)
    } else {
        None
    };
    Ok(VerifyReport {
        accepted: residual_zero && versal && representatives_match && classical_projection != Some(false),
        flavor,
        projected,
        residual_zero,
        first_nonzero_cell,
        versal,
        representatives_match,
        classical_projection,
        reasons,
    })
}

