//! Built-in algebras: Landau–Ginzburg models, small hand-made finite
//! algebras, and a seeded generator of random finite dBV algebras.

use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dbv::{check_axioms, DbvAlgebra, FiniteDimDbv, LandauGinzburgDbv, Poly, Window};
use crate::error::{Error, Result};
use crate::linalg::kernel;
use crate::series::scalar::int;
use crate::series::{BasisElement, GradedBasis, Scalar, Vector};

pub fn landau_ginzburg(potential: &str) -> Result<DbvAlgebra> {
    Ok(DbvAlgebra::LandauGinzburg(LandauGinzburgDbv::new(Poly::parse(potential)?)?))
}

fn basis(elements: &[(&str, i32)]) -> GradedBasis {
    let elements = elements
        .iter()
        .map(|&(name, degree)| BasisElement {
            name: name.to_string(),
            degree,
        })
        .collect();
    GradedBasis::new(elements, "1").expect("hand-written basis is valid")
}

/// Basis `1, a, b` in degrees `0, 0, -1`; every product of non-unit elements
/// vanishes, `Q = 0` and `Δa = b`. The class `[a]` does not lift.
pub fn square_zero() -> DbvAlgebra {
    let mut alg = FiniteDimDbv::new(basis(&[("1", 0), ("a", 0), ("b", -1)]));
    alg.set_delta(1, Vector::basis(2));
    DbvAlgebra::Finite(alg)
}

/// Basis `1, a, b, c, e` in degrees `0, 1, 0, 1, 2` with `Δa = b`, `Qa = e`,
/// `Qb = c`, `Δe = -c` and all non-unit products zero.
///
/// Here `im Δ ∩ ker Q` is spanned by `c` while `im Δ ∩ ker Δ = im Δ` also
/// contains `b`, and the homology is spanned by `[1]`.
pub fn diamond() -> DbvAlgebra {
    let mut alg = FiniteDimDbv::new(basis(&[("1", 0), ("a", 1), ("b", 0), ("c", 1), ("e", 2)]));
    alg.set_delta(1, Vector::basis(2));
    alg.set_q(1, Vector::basis(4));
    alg.set_q(2, Vector::basis(3));
    alg.set_delta(4, Vector::basis(3).neg());
    DbvAlgebra::Finite(alg)
}

/// A random finite dBV algebra of dimension `dim`, reproducible from `seed`.
///
/// The carrier is `k·1 ⊕ N₁ ⊕ Z`. Products are graded-commutative maps
/// `N₁ × N₁ → Z` and `Z` annihilates `N₁ ⊕ Z`, so the product is associative
/// and every operator preserving `N = N₁ ⊕ Z` and `Z` is of order at most two.
/// `Δ` sends a random set of sources into a disjoint set of targets, so
/// `Δ² = 0`. `Q` sends `N₁` into `Z` and `Z` to zero, which makes it a
/// square-zero derivation; it is a random point of the solution space of
/// `QΔ + ΔQ = 0`. Every candidate is re-verified with [`check_axioms`].
pub fn random_finite(dim: usize, seed: u64) -> Result<DbvAlgebra> {
    if !(2..=32).contains(&dim) {
        return Err(Error::Spec(format!("random-finite needs 2 <= dim <= 32, got {dim}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..64 {
        let alg = random_candidate(dim, &mut rng);
        if check_axioms(&alg, &Window::default()).all_passed {
            return Ok(alg);
        }
    }
    Err(Error::Spec("random-finite: no candidate passed the axiom check".into()))
}

fn small(rng: &mut ChaCha8Rng) -> Scalar {
    int(rng.gen_range(-2..=2))
}

fn nonzero_small(rng: &mut ChaCha8Rng) -> Scalar {
    let c: i64 = *[-2, -1, 1, 2].choose(rng).unwrap();
    int(c)
}

fn random_candidate(dim: usize, rng: &mut ChaCha8Rng) -> DbvAlgebra {
    let n1 = if dim >= 4 { rng.gen_range(2..=dim / 2) } else { 1 };
    let mut deg: Vec<i32> = vec![0];
    deg.extend((0..n1).map(|_| rng.gen_range(-1..=1)));
    // Z is filled with product targets `n_a n_b`, each optionally followed by
    // a partner one degree lower that Δ of the target may hit.
    let mut forced: Vec<(usize, usize, usize)> = Vec::new();
    let mut role = vec![2u8; 1];
    role.extend((0..n1).map(|_| u8::from(rng.gen_bool(0.5))));
    while deg.len() < dim {
        let a = rng.gen_range(1..=n1);
        let mut b = rng.gen_range(1..=n1);
        if a == b && deg[a].rem_euclid(2) == 1 && n1 > 1 {
            b = if a == n1 { 1 } else { a + 1 };
        }
        let top = deg.len();
        deg.push(deg[a] + deg[b]);
        if a != b || deg[a].rem_euclid(2) == 0 {
            forced.push((a.min(b), a.max(b), top));
        }
        if deg.len() < dim && rng.gen_bool(0.85) {
            deg.push(deg[top] - 1);
            role.push(0);
            role.push(1);
        } else {
            role.push(u8::from(rng.gen_bool(0.5)));
        }
    }
    let elements: Vec<BasisElement> = (0..dim)
        .map(|k| BasisElement {
            name: match k {
                0 => "1".to_string(),
                k if k <= n1 => format!("n{k}"),
                k => format!("z{}", k - n1),
            },
            degree: deg[k],
        })
        .collect();
    let mut alg = FiniteDimDbv::new(GradedBasis::new(elements, "1").expect("generated names are unique"));
    let n1_range = 1..=n1;
    let z_range = n1 + 1..dim;
    let is_z = |i: usize| i > n1;

    for i in n1_range.clone() {
        for j in i..=n1 {
            if i == j && deg[i].rem_euclid(2) == 1 {
                continue;
            }
            let target = deg[i] + deg[j];
            let mut v = Vector::zero();
            for k in z_range.clone().filter(|&k| deg[k] == target) {
                let wanted = forced.contains(&(i, j, k));
                if wanted || rng.gen_bool(0.4) {
                    v.add_term(k, if wanted { nonzero_small(rng) } else { small(rng) });
                }
            }
            if !v.is_zero() {
                alg.set_product_symmetric(i, j, v);
            }
        }
    }

    // Δ: sources and targets are disjoint, so Δ² = 0.
    for s in 1..dim {
        if role[s] != 0 {
            continue;
        }
        let mut v = Vector::zero();
        for t in 1..dim {
            let allowed = role[t] == 1 && deg[t] == deg[s] - 1 && (!is_z(s) || is_z(t));
            if allowed && rng.gen_bool(0.7) {
                v.add_term(t, nonzero_small(rng));
            }
        }
        alg.set_delta(s, v);
    }

    // Q: unknown coefficient for each admissible pair (n, z) with deg z = deg n + 1.
    let unknowns: Vec<(usize, usize)> = n1_range
        .clone()
        .flat_map(|n| z_range.clone().map(move |z| (n, z)))
        .filter(|&(n, z)| deg[z] == deg[n] + 1)
        .collect();
    if unknowns.is_empty() || rng.gen_bool(0.15) {
        return DbvAlgebra::Finite(alg);
    }
    // Constraint images: (QΔ + ΔQ)(e_n) for Q the elementary map e_n -> e_z,
    // flattened into coordinates (n * dim + component).
    let images: Vec<Vector> = unknowns
        .iter()
        .map(|&(n, z)| {
            let mut out = Vector::zero();
            for src in 0..dim {
                let c = alg.delta_entry(src).get(n);
                if !c.is_zero() {
                    out.add_term(src * dim + z, c);
                }
            }
            for (t, c) in alg.delta_entry(z).iter() {
                out.add_term(n * dim + t, c.clone());
            }
            out
        })
        .collect();
    let domain: Vec<Vector> = (0..unknowns.len()).map(Vector::basis).collect();
    let solutions = kernel(&domain, &images);
    let mut combo = Vector::zero();
    for s in &solutions {
        combo.add_scaled(s, &small(rng));
    }
    for (u, c) in combo.iter() {
        let (n, z) = unknowns[u];
        let mut q = alg.q_entry(n).clone();
        q.add_term(z, c.clone());
        alg.set_q(n, q);
    }
    DbvAlgebra::Finite(alg)
}
