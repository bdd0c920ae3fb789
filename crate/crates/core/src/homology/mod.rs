//! Homology of `(V, Q)` with an adapted splitting, lifting to `K`-closed
//! series, the splitting β, the obstruction grid and the Q-Δ lemma.

mod beta;
mod decomposition;
mod grid;
mod lift;
mod qdelta;

use std::collections::BTreeMap;

use serde::Serialize;

use crate::dbv::{Dbv, DbvAlgebra, Window};
use crate::error::Result;
use crate::series::Vector;

pub use beta::{build_beta, QuantumSplitting};
pub use decomposition::{AdaptedDecomposition, Differential, HomologyClass, Split};
pub use grid::{obstruction_grid, Cell, CellStatus, ObstructionReport};
pub use lift::{degeneration_check, lift_to_k_closed, ClassLift, DegenerationReport, LiftOutcome, MAX_STAGES};
pub use qdelta::{qdelta_lemma_check, QDeltaReport};

/// Homology of one differential together with its adapted decomposition.
#[derive(Clone, Debug)]
pub struct Homology {
    pub decomposition: AdaptedDecomposition,
}

impl Homology {
    pub fn classes(&self) -> &[HomologyClass] {
        self.decomposition.classes()
    }

    pub fn differential(&self) -> Differential {
        self.decomposition.differential()
    }

    pub fn report(&self, alg: &DbvAlgebra) -> HomologyReport {
        let mut dimensions = BTreeMap::new();
        for c in self.classes() {
            *dimensions.entry(c.degree).or_insert(0usize) += 1;
        }
        HomologyReport {
            differential: self.differential(),
            dimensions,
            classes: self
                .classes()
                .iter()
                .map(|c| ClassEntry {
                    name: c.name.clone(),
                    degree: c.degree,
                    representative: c.representative.to_named(|i| alg.name(i)),
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassEntry {
    pub name: String,
    pub degree: i32,
    pub representative: BTreeMap<String, String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct HomologyReport {
    pub differential: Differential,
    /// Degree (parity for `Q + Δ`) to dimension; degrees without classes are omitted.
    pub dimensions: BTreeMap<i32, usize>,
    pub classes: Vec<ClassEntry>,
}

/// `H(V, Q)`. Finite algebras are eliminated degree by degree; for the
/// Landau–Ginzburg model `H⁰ = k[x]/(W')` and `H⁻¹ = 0` come from division
/// by `W'`.
pub fn compute_homology(alg: &DbvAlgebra, window: &Window) -> Result<Homology> {
    compute_homology_for(alg, window, Differential::Q)
}

pub fn compute_homology_for(alg: &DbvAlgebra, window: &Window, differential: Differential) -> Result<Homology> {
    Ok(Homology {
        decomposition: AdaptedDecomposition::new(alg, window, differential)?,
    })
}

/// Check that a vector's class is nonzero, i.e. it is closed and not exact.
pub fn is_nonzero_class(alg: &DbvAlgebra, homology: &Homology, v: &Vector) -> Result<bool> {
    let split = homology.decomposition.decompose(v)?;
    let closed = homology.differential().apply(alg, v).is_zero();
    Ok(closed && !split.h.is_zero())
}
