//! The array of obstructions: cell `(n, j)` asks whether the master
//! equation can be solved through t-order `n` modulo `ħ^{j+1}`.

use serde::Serialize;

use crate::dbv::DbvAlgebra;
use crate::error::Result;
use crate::qme::quantum_pieces;

use super::{degeneration_check, Homology, LiftOutcome, QuantumSplitting};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CellStatus {
    Vanishes,
    Fails,
    NotComputed,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Cell {
    pub t_order: u32,
    pub hbar: u32,
    pub status: CellStatus,
    /// For failing cells: the obstructed class and the class of `Δγ`.
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ObstructionReport {
    pub t_order: u32,
    pub hbar_order: u32,
    /// Smallest obstruction stage over all classes, if any.
    pub first_obstruction: Option<u32>,
    /// Rows `n = 1..=t_order`, columns `j = 0..=hbar_order`.
    pub rows: Vec<Vec<Cell>>,
}

impl ObstructionReport {
    pub fn cell(&self, n: u32, j: u32) -> &Cell {
        &self.rows[(n - 1) as usize][j as usize]
    }

    pub fn all_vanish(&self) -> bool {
        self.rows.iter().flatten().all(|c| c.status == CellStatus::Vanishes)
    }
}

/// Row 1 comes from lifting every class. If the smallest obstruction stage
/// is `s`, every cell with `j > s` fails. Rows `n ≥ 2` come from the
/// quantum solver run with β certified to `H = min(s, R + N)`; its order-`n`
/// piece is reliable to `ħ^{H−n+1}`, and cells beyond that are not computed.
pub fn obstruction_grid(alg: &DbvAlgebra, homology: &Homology, t_order: u32, hbar_order: u32) -> Result<ObstructionReport> {
    let internal = hbar_order + t_order;
    let (_, lifts) = degeneration_check(alg, homology, Some(internal))?;
    let obstruction = lifts
        .iter()
        .zip(homology.classes())
        .filter_map(|(l, c)| match l {
            LiftOutcome::Obstructed {
                stage,
                witness,
                witness_class,
                ..
            } => Some((
                *stage,
                format!(
                    "{}: Delta gamma^({stage}) = {} has class {}",
                    c.name,
                    alg.display(witness),
                    homology.decomposition.display_class(witness_class)
                ),
            )),
            LiftOutcome::Lifted(_) => None,
        })
        .min_by_key(|(s, _)| *s);
    let h = obstruction.as_ref().map_or(internal, |(s, _)| *s);
    let beta = QuantumSplitting::from_lifts(homology, &lifts);
    let (pieces, _) = quantum_pieces(alg, homology, &beta, t_order, h)?;

    let mut rows = Vec::new();
    for n in 1..=t_order {
        let reliable = pieces.get((n - 1) as usize).map(|p| p.hbar_order().min(h));
        let mut row = Vec::new();
        for j in 0..=hbar_order {
            let (status, witness) = match &obstruction {
                Some((s, w)) if j > *s => (CellStatus::Fails, Some(w.clone())),
                _ => match reliable {
                    Some(r) if j <= r => (CellStatus::Vanishes, None),
                    _ => (CellStatus::NotComputed, None),
                },
            };
            row.push(Cell {
                t_order: n,
                hbar: j,
                status,
                witness,
            });
        }
        rows.push(row);
    }
    Ok(ObstructionReport {
        t_order,
        hbar_order,
        first_obstruction: obstruction.map(|(s, _)| s),
        rows,
    })
}
