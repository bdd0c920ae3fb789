//! The Q-Δ lemma: `im QΔ = im ΔQ = im Q ∩ ker Δ = im Δ ∩ ker Q`.
//!
//! The last space is also reported in the form `im Δ ∩ ker Δ`, which always
//! equals `im Δ`; the two forms are labelled and compared separately.

use serde::Serialize;

use crate::dbv::{Dbv, DbvAlgebra, Window};
use crate::linalg::Span;
use crate::series::Vector;

#[derive(Clone, Debug, Serialize)]
pub struct Subspace {
    pub name: String,
    pub dimension: usize,
    pub spanning: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Comparison {
    pub left: String,
    pub right: String,
    pub equal: bool,
    /// A vector in one space but not the other.
    pub witness: Option<String>,
    pub witness_degree: Option<i32>,
    pub witness_in: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct QDeltaReport {
    /// The lemma with `im Δ ∩ ker Q` as its last space.
    pub holds: bool,
    /// The chain with `im Δ ∩ ker Δ` as its last space.
    pub literal_holds: bool,
    /// Whether `im Δ ∩ ker Q` and `im Δ ∩ ker Δ` differ.
    pub forms_differ: bool,
    pub window_note: Option<String>,
    pub spaces: Vec<Subspace>,
    pub comparisons: Vec<Comparison>,
    pub literal_comparison: Comparison,
    pub form_comparison: Comparison,
}

struct Space {
    name: &'static str,
    gens: Vec<Vector>,
    span: Span,
}

impl Space {
    fn new(name: &'static str, gens: Vec<Vector>) -> Self {
        let gens: Vec<Vector> = gens.into_iter().filter(|v| !v.is_zero()).collect();
        let span = Span::from_generators(&gens);
        Self { name, gens, span }
    }
}

/// Vectors `Σ λ_k domain_k` with `Σ λ_k images_k = 0`, before reduction.
fn kernel_raw(domain: &[Vector], images: &[Vector]) -> Vec<Vector> {
    Span::from_generators(images)
        .relations()
        .iter()
        .map(|rel| rel.map_linear(|k| domain[k].clone()))
        .collect()
}

fn compare(alg: &DbvAlgebra, a: &Space, b: &Space) -> Comparison {
    let missing = |x: &Space, y: &Space| x.gens.iter().find(|v| !y.span.contains(v)).cloned();
    let (witness, witness_in) = match missing(a, b) {
        Some(w) => (Some(w), Some(a.name.to_string())),
        None => match missing(b, a) {
            Some(w) => (Some(w), Some(b.name.to_string())),
            None => (None, None),
        },
    };
    Comparison {
        left: a.name.into(),
        right: b.name.into(),
        equal: witness.is_none(),
        witness_degree: witness.as_ref().and_then(|w| w.degree(|i| alg.degree(i))),
        witness: witness.map(|w| alg.display(&w)),
        witness_in,
    }
}

/// Compute the four spaces over the window basis and compare them.
pub fn qdelta_lemma_check(alg: &DbvAlgebra, window: &Window) -> QDeltaReport {
    let basis: Vec<Vector> = alg.window_basis(window).into_iter().map(Vector::basis).collect();
    let q: Vec<Vector> = basis.iter().map(|v| alg.q(v)).collect();
    let d: Vec<Vector> = basis.iter().map(|v| alg.delta(v)).collect();
    let dq: Vec<Vector> = q.iter().map(|v| alg.delta(v)).collect();
    let qd: Vec<Vector> = d.iter().map(|v| alg.q(v)).collect();
    let dd: Vec<Vector> = d.iter().map(|v| alg.delta(v)).collect();

    let spaces = [
        Space::new("im(Q Delta)", qd.clone()),
        Space::new("im(Delta Q)", dq.clone()),
        Space::new("im(Q) ∩ ker(Delta)", kernel_raw(&q, &dq)),
        Space::new("im(Delta) ∩ ker(Q)", kernel_raw(&d, &qd)),
    ];
    let literal = Space::new("im(Delta) ∩ ker(Delta)", kernel_raw(&d, &dd));

    let comparisons: Vec<Comparison> = spaces.windows(2).map(|w| compare(alg, &w[0], &w[1])).collect();
    let literal_comparison = compare(alg, &spaces[2], &literal);
    let form_comparison = compare(alg, &spaces[3], &literal);
    let holds = comparisons.iter().all(|c| c.equal);
    let literal_holds = comparisons[..2].iter().all(|c| c.equal) && literal_comparison.equal;
    let window_note = match alg {
        DbvAlgebra::Finite(_) => None,
        DbvAlgebra::LandauGinzburg(_) => Some(format!(
            "spaces spanned by images of x^k, x^k*eta with k <= {}",
            window.x_degree
        )),
    };
    let describe = |s: &Space| Subspace {
        name: s.name.into(),
        dimension: s.span.rank(),
        spanning: s.span.basis().iter().map(|v| alg.display(v)).collect(),
    };
    let mut all: Vec<Subspace> = spaces.iter().map(describe).collect();
    all.push(describe(&literal));
    QDeltaReport {
        holds,
        literal_holds,
        forms_differ: !form_comparison.equal,
        window_note,
        spaces: all,
        comparisons,
        literal_comparison,
        form_comparison,
    }
}
