//! Extending classical observables (`Q O⁰ = 0`) to quantum ones (`K O = 0`).

use crate::dbv::{Dbv, DbvAlgebra};
use crate::error::{Error, Result};
use crate::homology::{lift_to_k_closed, Homology, LiftOutcome};
use crate::series::{Series, Variables, Vector, UNBOUNDED};

pub type ObservableOutcome = LiftOutcome;

/// `O = O⁰ + ħO⁽¹⁾ + ⋯` with `K O = 0` modulo `ħ^{R+1}` (exactly when
/// `order` is `None`), or the obstruction of the first homogeneous part that
/// fails.
pub fn observable_extend(
    alg: &DbvAlgebra,
    homology: &Homology,
    o0: &Vector,
    order: Option<u32>,
) -> Result<ObservableOutcome> {
    if !alg.q(o0).is_zero() {
        return Err(Error::NotClosed(format!("Q({}) ≠ 0", alg.display(o0))));
    }
    let mut total = Series::zero(Variables::none(), 0, UNBOUNDED);
    for part in o0.homogeneous_parts(|i| alg.degree(i)).into_values() {
        match lift_to_k_closed(alg, &homology.decomposition, &part, order)? {
            LiftOutcome::Lifted(s) => total = total.add(&s)?,
            obstructed => return Ok(obstructed),
        }
    }
    Ok(LiftOutcome::Lifted(total))
}
