//! Lifting classical classes to `K`-closed series and the degeneration
//! verdict for the ħ-filtration.

use serde::Serialize;

use crate::dbv::{Dbv, DbvAlgebra};
use crate::error::{Error, Result};
use crate::linalg::Span;
use crate::series::json::{to_records, TermRecord};
use crate::series::{Monomial, Series, Variables, Vector, UNBOUNDED};

use super::{AdaptedDecomposition, Homology};

/// Upper bound on lifting stages when no ħ-order is requested.
pub const MAX_STAGES: u32 = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LiftOutcome {
    /// `K γ = 0` exactly (`hbar_order` unbounded) or modulo `ħ^{R+1}`.
    Lifted(Series),
    /// No admissible choice makes `Δγ⁽ˢ⁾` exact. `partial` satisfies
    /// `K γ = 0` modulo `ħ^{s+1}`; `witness` is `Δγ⁽ˢ⁾` for it and
    /// `witness_class` the part of its class no choice can cancel.
    Obstructed {
        stage: u32,
        partial: Series,
        witness: Vector,
        witness_class: Vector,
    },
}

impl LiftOutcome {
    pub fn series(&self) -> &Series {
        match self {
            LiftOutcome::Lifted(s) => s,
            LiftOutcome::Obstructed { partial, .. } => partial,
        }
    }

    /// Largest `j` with `K γ = 0` modulo `ħ^{j+1}`; `None` when exact.
    pub fn reliable_order(&self) -> Option<u32> {
        let h = self.series().hbar_order();
        (h != UNBOUNDED).then_some(h)
    }

    pub fn is_obstructed(&self) -> bool {
        matches!(self, LiftOutcome::Obstructed { .. })
    }
}

fn to_series(stages: &[Vector], hbar_order: u32) -> Series {
    let mut s = Series::zero(Variables::none(), 0, hbar_order);
    for (j, v) in stages.iter().enumerate() {
        if j as u32 <= hbar_order {
            s.add_term(Monomial::hbar(j as u32), v);
        }
    }
    s
}

fn axpy(stages: &mut [Vector], l: &[Vector], c: &crate::series::Scalar) {
    for (p, v) in stages.iter_mut().zip(l) {
        p.add_scaled(v, c);
    }
}

/// Search for `γ = v + ħγ⁽¹⁾ + ħ²γ⁽²⁾ + ⋯` with `K γ = 0` modulo
/// `ħ^{R+1}` (exactly when `order` is `None`), up to replacing `v` within its
/// class.
///
/// Every stage keeps the full affine space of admissible prefixes, a
/// particular solution plus a basis of the directions, so an obstruction
/// holds for every choice. The result is normalized so that its ħ-free term
/// is `v` itself.
pub fn lift_to_k_closed(
    alg: &DbvAlgebra,
    dec: &AdaptedDecomposition,
    v: &Vector,
    order: Option<u32>,
) -> Result<LiftOutcome> {
    if !alg.q(v).is_zero() {
        return Err(Error::NotClosed(format!("Q({}) ≠ 0", alg.display(v))));
    }
    if v.is_zero() {
        return Ok(LiftOutcome::Lifted(to_series(&[], UNBOUNDED)));
    }
    let d = v
        .degree(|i| alg.degree(i))
        .ok_or_else(|| Error::Precondition("lifting needs a homogeneous vector".into()))?;
    let step = alg.hbar_degree();
    let kernel_basis = |deg: i32| -> Vec<Vector> {
        let mut out: Vec<Vector> = dec.exact_basis(deg).into_iter().map(|(b, _)| b).collect();
        out.extend(dec.class_indices(deg).into_iter().map(|k| dec.classes()[k].representative.clone()));
        out
    };

    let mut p = vec![v.clone()];
    let mut free: Vec<Vec<Vector>> = dec.exact_basis(d).into_iter().map(|(b, _)| vec![b]).collect();
    let limit = order.unwrap_or(MAX_STAGES);
    let mut j = 0u32;
    loop {
        let ju = j as usize;
        let dp = alg.delta(&p[ju]);
        if dp.is_zero() {
            return Ok(LiftOutcome::Lifted(normalize(alg, dec, v, p, UNBOUNDED)?));
        }
        if j == limit {
            if order.is_none() {
                return Err(Error::Precondition(format!("lift did not terminate within {MAX_STAGES} stages")));
            }
            return Ok(LiftOutcome::Lifted(normalize(alg, dec, v, p, limit)?));
        }
        let split_p = dec.decompose(&dp)?;
        let split_free = free
            .iter()
            .map(|l| dec.decompose(&alg.delta(&l[ju])))
            .collect::<Result<Vec<_>>>()?;
        let span = Span::from_generators(split_free.iter().map(|s| &s.h));
        let Some(lambda) = span.express(&split_p.h.neg()) else {
            let partial = normalize(alg, dec, v, p.clone(), j)?;
            let witness = alg.delta(&partial.coefficient(&Monomial::hbar(j)));
            let witness_class = span.remainder(&dec.decompose(&witness)?.h);
            return Ok(LiftOutcome::Obstructed {
                stage: j,
                partial,
                witness,
                witness_class,
            });
        };
        for (k, c) in lambda.iter() {
            axpy(&mut p, &free[k], c);
        }
        let mut next_free: Vec<Vec<Vector>> = span
            .relations()
            .iter()
            .map(|rel| {
                let mut l = vec![Vector::zero(); ju + 1];
                for (k, c) in rel.iter() {
                    axpy(&mut l, &free[k], c);
                }
                l
            })
            .collect();

        let dp = dec.decompose(&alg.delta(&p[ju]))?;
        if !dp.h.is_zero() || !dp.c.is_zero() {
            return Err(Error::Invariant {
                order: j,
                what: "Δγ is not Q-exact after solving for its class".into(),
            });
        }
        p.push(dp.b_preimage.neg());
        for l in &mut next_free {
            let dl = dec.decompose(&alg.delta(&l[ju]))?;
            l.push(dl.b_preimage.neg());
        }
        let next_degree = d - (j as i32 + 1) * step;
        for z in kernel_basis(next_degree) {
            let mut l = vec![Vector::zero(); ju + 1];
            l.push(z);
            next_free.push(l);
        }
        free = next_free;
        j += 1;
    }
}

/// Subtract `K(c)` so that the ħ-free term becomes exactly `v`.
fn normalize(alg: &DbvAlgebra, dec: &AdaptedDecomposition, v: &Vector, mut p: Vec<Vector>, hbar_order: u32) -> Result<Series> {
    let c0 = dec.decompose(&p[0].sub(v))?.b_preimage;
    if !c0.is_zero() {
        p[0] = p[0].sub(&alg.q(&c0));
        if p.len() < 2 {
            p.push(Vector::zero());
        }
        p[1] = p[1].sub(&alg.delta(&c0));
    }
    debug_assert_eq!(&p[0], v);
    Ok(to_series(&p, hbar_order))
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassLift {
    pub class: String,
    pub degree: i32,
    pub status: &'static str,
    /// ħ-order up to which `K γ = 0` holds; `null` when exact.
    pub reliable_order: Option<u32>,
    pub lift: Vec<TermRecord>,
    pub obstruction_stage: Option<u32>,
    pub witness: Option<String>,
    pub witness_class: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct DegenerationReport {
    pub degenerate: bool,
    /// Whether the verdict holds to all orders (every lift terminated or
    /// was obstructed) rather than only up to `requested_order`.
    pub exact: bool,
    pub requested_order: Option<u32>,
    pub classes: Vec<ClassLift>,
}

/// Lift every homology class; the spectral sequence degenerates at `E_1`
/// (up to the requested order) exactly when every lift succeeds.
pub fn degeneration_check(
    alg: &DbvAlgebra,
    homology: &Homology,
    order: Option<u32>,
) -> Result<(DegenerationReport, Vec<LiftOutcome>)> {
    let dec = &homology.decomposition;
    let mut outcomes = Vec::new();
    let mut classes = Vec::new();
    for class in dec.classes() {
        let outcome = lift_to_k_closed(alg, dec, &class.representative, order)?;
        let name_of = |i: usize| alg.name(i);
        let entry = match &outcome {
            LiftOutcome::Lifted(s) => ClassLift {
                class: class.name.clone(),
                degree: class.degree,
                status: "lifted",
                reliable_order: outcome.reliable_order(),
                lift: to_records(s, name_of),
                obstruction_stage: None,
                witness: None,
                witness_class: None,
            },
            LiftOutcome::Obstructed {
                stage,
                partial,
                witness,
                witness_class,
            } => ClassLift {
                class: class.name.clone(),
                degree: class.degree,
                status: "obstructed",
                reliable_order: Some(*stage),
                lift: to_records(partial, name_of),
                obstruction_stage: Some(*stage),
                witness: Some(alg.display(witness)),
                witness_class: Some(dec.display_class(witness_class)),
            },
        };
        classes.push(entry);
        outcomes.push(outcome);
    }
    let degenerate = outcomes.iter().all(|o| !o.is_obstructed());
    let exact = outcomes.iter().all(|o| o.is_obstructed() || o.reliable_order().is_none());
    Ok((
        DegenerationReport {
            degenerate,
            exact,
            requested_order: order,
            classes,
        },
        outcomes,
    ))
}
