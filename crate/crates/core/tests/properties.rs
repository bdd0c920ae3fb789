mod common;

use common::{algebra_by_index, any_series, finite_by_index, dual_variables, homogeneous_series, is_normalised, raw_terms, small_window};
use dbv::dbv::{Dbv, DbvAlgebra, LandauGinzburgDbv, Poly};
use dbv::examples::{landau_ginzburg, random_finite};
use dbv::homology::{build_beta, compute_homology, degeneration_check};
use dbv::qme::conjugation_defect;
use dbv::series::scalar::int;
use dbv::series::{Monomial, Series, Variables, Vector};
use proptest::prelude::*;
use proptest::sample::Index;

fn cfg(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, ..ProptestConfig::default() }
}

fn picks() -> impl Strategy<Value = Vec<Index>> {
    prop::collection::vec(any::<Index>(), 2..=3)
}

fn monomial(word: &[u16], vars: &Variables) -> Option<Monomial> {
    Monomial::from_word(word, 0, vars).unwrap().map(|(m, _)| m)
}

proptest! {
    #![proptest_config(cfg(1000))]

    #[test]
    fn monomials_commute_up_to_sign(
        degrees in prop::collection::vec(-3i32..=3, 1..=5),
        a in prop::collection::vec(0u16..5, 0..=4),
        b in prop::collection::vec(0u16..5, 0..=4),
    ) {
        let vars = Variables::new(degrees.clone());
        let n = degrees.len() as u16;
        let a: Vec<u16> = a.into_iter().map(|i| i % n).collect();
        let b: Vec<u16> = b.into_iter().map(|i| i % n).collect();
        if let (Some(ma), Some(mb)) = (monomial(&a, &vars), monomial(&b, &vars)) {
            let ab = ma.mul(&mb, &vars);
            let ba = mb.mul(&ma, &vars);
            match (ab, ba) {
                (None, None) => {}
                (Some((m1, s1)), Some((m2, s2))) => {
                    prop_assert_eq!(&m1, &m2);
                    let koszul = ma.is_odd(&vars) && mb.is_odd(&vars);
                    prop_assert_eq!(s1.is_minus() ^ s2.is_minus(), koszul);
                    let sorted = m1.vars().windows(2).all(|w| w[0] <= w[1]);
                    prop_assert!(sorted);
                }
                _ => prop_assert!(false, "one order vanishes and the other does not"),
            }
        }
    }
}

proptest! {
    #![proptest_config(cfg(60))]

    #[test]
    fn series_product_is_associative_and_unital(
        k in 0usize..10,
        p in picks(),
        ra in raw_terms(5),
        rb in raw_terms(5),
        rc in raw_terms(5),
    ) {
        let alg = algebra_by_index(k);
        let vars = dual_variables(&alg, &p);
        let a = any_series(&alg, &vars, &ra, 3, 2);
        let b = any_series(&alg, &vars, &rb, 3, 2);
        let c = any_series(&alg, &vars, &rc, 3, 2);
        let left = alg.series_mul(&alg.series_mul(&a, &b).unwrap(), &c).unwrap();
        let right = alg.series_mul(&a, &alg.series_mul(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(&left, &right);
        prop_assert!(is_normalised(&left));
        let one = Series::constant(vars.clone(), alg.unit_vector(), 3, 2);
        prop_assert_eq!(alg.series_mul(&one, &a).unwrap(), a.clone());
        prop_assert_eq!(alg.series_mul(&a, &one).unwrap(), a);
    }

    #[test]
    fn k_squares_to_zero(k in 0usize..10, p in picks(), ra in raw_terms(6)) {
        let alg = algebra_by_index(k);
        let vars = dual_variables(&alg, &p);
        let a = any_series(&alg, &vars, &ra, 3, 3);
        let kk = alg.apply_k(&alg.apply_k(&a).unwrap()).unwrap();
        prop_assert!(kk.is_zero());
    }
}

proptest! {
    #![proptest_config(cfg(100))]

    #[test]
    fn exp_and_log_are_inverse(k in 0usize..10, p in picks(), ra in raw_terms(5)) {
        let alg = algebra_by_index(k);
        let vars = dual_variables(&alg, &p);
        let g = homogeneous_series(&alg, &vars, &ra, 0, 4, 2);
        let e = alg.series_exp(&g).unwrap();
        prop_assert_eq!(alg.series_log(&e).unwrap(), g.clone());
        let one = Series::constant(vars.clone(), alg.unit_vector(), 4, 2);
        let u = one.add(&g).unwrap();
        prop_assert_eq!(alg.series_exp(&alg.series_log(&u).unwrap()).unwrap(), u);
        prop_assert!(is_normalised(&e));
    }

    #[test]
    fn hbar_multiplication_round_trips(k in 0usize..10, p in picks(), ra in raw_terms(8)) {
        let alg = algebra_by_index(k);
        let vars = dual_variables(&alg, &p);
        let a = any_series(&alg, &vars, &ra, 3, 3);
        let up = a.mul_hbar(1);
        prop_assert_eq!(up.hbar_divide(1).unwrap(), a.clone());
        prop_assert!(up.set_hbar_zero().is_zero());
        prop_assert!(is_normalised(&up));
    }
}

proptest! {
    #![proptest_config(cfg(200))]

    #[test]
    fn delta_of_exponential_on_polynomial_backend(w in 0usize..2, p in picks(), ra in raw_terms(5)) {
        let alg = algebra_by_index(w);
        delta_of_exponential(&alg, &p, &ra)?;
    }

    #[test]
    fn delta_of_exponential_on_finite_backend(k in 0usize..40, p in picks(), ra in raw_terms(6)) {
        let alg = finite_by_index(k);
        delta_of_exponential(&alg, &p, &ra)?;
    }

    #[test]
    fn conjugation_identity(k in 0usize..10, p in picks(), ra in raw_terms(5)) {
        let alg = algebra_by_index(k);
        let vars = dual_variables(&alg, &p);
        let g = homogeneous_series(&alg, &vars, &ra, 0, 3, 3);
        prop_assert!(conjugation_defect(&alg, &g).unwrap().is_zero());
    }
}

/// `Δ(e^γ) = (Δγ + ½[γ,γ]) e^γ`.
fn delta_of_exponential(alg: &DbvAlgebra, p: &[Index], raw: &common::RawTerms) -> Result<(), TestCaseError> {
    let vars = dual_variables(alg, p);
    let g = homogeneous_series(alg, &vars, raw, 0, 5, 2);
    let e = alg.series_exp(&g).unwrap();
    let lhs = alg.series_delta(&e);
    let half = dbv::series::scalar::ratio(1, 2);
    let factor = alg.series_delta(&g).add(&alg.series_bracket(&g, &g).unwrap().scale(&half)).unwrap();
    let rhs = alg.series_mul(&factor, &e).unwrap();
    prop_assert_eq!(lhs, rhs);
    Ok(())
}

fn random_vector(alg: &DbvAlgebra, raw: &[(Index, i64)]) -> Vector {
    let basis = alg.window_basis(&small_window());
    Vector::from_terms(raw.iter().map(|(i, c)| (basis[i.index(basis.len())], int(*c))))
}

proptest! {
    #![proptest_config(cfg(500))]

    #[test]
    fn decomposition_re_sums(k in 0usize..10, raw in prop::collection::vec((any::<Index>(), -5i64..=5), 0..6)) {
        let alg = algebra_by_index(k);
        let h = compute_homology(&alg, &small_window()).unwrap();
        let v = random_vector(&alg, &raw);
        let dec = &h.decomposition;
        let s = dec.decompose(&v).unwrap();
        prop_assert_eq!(s.b.add(&dec.h_vector(&s.h)).add(&s.c), v);
        let d = h.differential();
        prop_assert_eq!(d.apply(&alg, &s.b_preimage), s.b.clone());
        prop_assert!(d.apply(&alg, &s.b).is_zero());
        let dc = dec.decompose(&d.apply(&alg, &s.c)).unwrap();
        prop_assert!(dc.h.is_zero() && dc.c.is_zero());
    }
}

proptest! {
    #![proptest_config(cfg(150))]

    #[test]
    fn beta_splits_alpha_and_is_a_chain_map(
        k in 0usize..12,
        raw in prop::collection::vec((any::<Index>(), -5i64..=5), 0..6),
    ) {
        let alg = match k {
            0 => landau_ginzburg("x^3").unwrap(),
            1 => landau_ginzburg("x^5 - 3x^2").unwrap(),
            _ => random_finite(3 + k % 6, k as u64).unwrap(),
        };
        let h = compute_homology(&alg, &small_window()).unwrap();
        let (_, lifts) = degeneration_check(&alg, &h, None).unwrap();
        let Ok(beta) = build_beta(&h, &lifts) else { return Ok(()) };
        let v = random_vector(&alg, &raw);
        let bv = beta.apply(&alg, &v).unwrap();
        prop_assert_eq!(bv.set_hbar_zero().constant_term(), v.clone());
        let q = Series::constant(Variables::none(), alg.q(&v), 0, dbv::series::UNBOUNDED);
        prop_assert_eq!(alg.apply_k(&bv).unwrap(), beta.apply_series(&alg, &q).unwrap());
    }

    #[test]
    fn polynomial_brackets_have_closed_forms(
        f in prop::collection::vec(-3i64..=3, 0..=5),
        g in prop::collection::vec(-3i64..=3, 0..=4),
    ) {
        let alg = landau_ginzburg("x^4 - x").unwrap();
        let f = Poly::new(f.into_iter().map(int).collect());
        let g = Poly::new(g.into_iter().map(int).collect());
        let pv = |p: &Poly, eta| LandauGinzburgDbv::poly_vector(p, eta);
        prop_assert!(alg.bracket(&pv(&f, false), &pv(&g, false)).is_zero());
        prop_assert_eq!(alg.bracket(&pv(&f, false), &pv(&g, true)), pv(&f.derivative().mul(&g), false));
        let expected = f.derivative().mul(&g).sub(&f.mul(&g.derivative()));
        prop_assert_eq!(alg.bracket(&pv(&f, true), &pv(&g, true)), pv(&expected, true));
    }
}

#[test]
fn k_compatibility_on_basis_pairs() {
    use dbv::series::scalar::sign;
    use dbv::series::UNBOUNDED;
    for k in 0..5 {
        let alg = algebra_by_index(k);
        let basis = alg.window_basis(&small_window());
        let c = |v: Vector| Series::constant(Variables::none(), v, 0, UNBOUNDED);
        for &i in &basis {
            for &j in &basis {
                let (v, w) = (c(Vector::basis(i)), c(Vector::basis(j)));
                let kv = alg.apply_k(&v).unwrap();
                let kw = alg.apply_k(&w).unwrap();
                let lhs = alg
                    .apply_k(&alg.series_mul(&v, &w).unwrap())
                    .unwrap()
                    .sub(&alg.series_mul(&kv, &w).unwrap())
                    .unwrap()
                    .sub(&alg.series_mul(&v, &kw).unwrap().scale(&sign(alg.is_odd(i))))
                    .unwrap();
                assert_eq!(lhs, c(alg.derivation_defect(i, j)).mul_hbar(1), "{} {}", alg.name(i), alg.name(j));
                assert_eq!(alg.bracket_basis(i, j), alg.derivation_defect(i, j).scaled(&sign(alg.is_odd(i))));
            }
        }
    }
}
