//! The Landau–Ginzburg model `k[x] ⊗ Λ[η]` with `Δ = ∂²/∂x∂η` and
//! `Q = [W, ·]` for a potential `W(x)`.
//!
//! Basis element `x^k η^e` has index `2k + e`. With `deg x = 0` and
//! `deg η = −1`, both `Q(gη) = W′g` and `Δ(gη) = g′` raise degree by one.

use crate::error::{Error, Result};
use crate::series::Vector;

use super::poly::Poly;
use super::{Dbv, Window};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LandauGinzburgDbv {
    potential: Poly,
    w_prime: Poly,
}

pub fn index(x_power: usize, eta: bool) -> usize {
    2 * x_power + eta as usize
}

pub fn split_index(i: usize) -> (usize, bool) {
    (i / 2, i % 2 == 1)
}

impl LandauGinzburgDbv {
    pub fn new(potential: Poly) -> Result<Self> {
        match potential.degree() {
            Some(d) if d >= 2 => {}
            _ => {
                return Err(Error::Spec(format!(
                    "Landau-Ginzburg potential must have degree >= 2, got {potential}"
                )))
            }
        }
        let w_prime = potential.derivative();
        Ok(Self { potential, w_prime })
    }

    pub fn potential(&self) -> &Poly {
        &self.potential
    }

    pub fn w_prime(&self) -> &Poly {
        &self.w_prime
    }

    /// `f(x) · η^e` as a vector.
    pub fn poly_vector(p: &Poly, eta: bool) -> Vector {
        Vector::from_terms(p.coeffs().iter().enumerate().map(|(k, c)| (index(k, eta), c.clone())))
    }

    /// The `η^e` part of `v` as a polynomial.
    pub fn vector_poly(v: &Vector, eta: bool) -> Poly {
        let top = v.indices().map(|i| split_index(i).0).max().unwrap_or(0);
        let mut coeffs = vec![crate::series::scalar::zero(); top + 1];
        for (i, c) in v.iter() {
            let (k, e) = split_index(i);
            if e == eta {
                coeffs[k] = c.clone();
            }
        }
        Poly::new(coeffs)
    }
}

impl Dbv for LandauGinzburgDbv {
    fn degree(&self, i: usize) -> i32 {
        -((i % 2) as i32)
    }

    fn name(&self, i: usize) -> String {
        let (k, eta) = split_index(i);
        let x = match k {
            0 => String::new(),
            1 => "x".to_string(),
            _ => format!("x^{k}"),
        };
        match (x.is_empty(), eta) {
            (true, false) => "1".to_string(),
            (true, true) => "eta".to_string(),
            (false, false) => x,
            (false, true) => format!("{x}*eta"),
        }
    }

    fn index_of(&self, name: &str) -> Option<usize> {
        if name == "eta" {
            return Some(index(0, true));
        }
        let (xs, eta) = match name.strip_suffix("*eta") {
            Some(rest) => (rest, true),
            None => (name, false),
        };
        let k = match xs {
            "1" if !eta => 0,
            "x" => 1,
            _ => xs.strip_prefix("x^")?.parse().ok()?,
        };
        Some(index(k, eta))
    }

    fn unit(&self) -> usize {
        0
    }

    fn mul_basis(&self, i: usize, j: usize) -> Vector {
        let (a, ea) = split_index(i);
        let (b, eb) = split_index(j);
        if ea && eb {
            return Vector::zero();
        }
        Vector::basis(index(a + b, ea || eb))
    }

    fn q_basis(&self, i: usize) -> Vector {
        let (k, eta) = split_index(i);
        if !eta {
            return Vector::zero();
        }
        Self::poly_vector(&self.w_prime.mul(&Poly::monomial(k, crate::series::scalar::one())), false)
    }

    fn delta_basis(&self, i: usize) -> Vector {
        let (k, eta) = split_index(i);
        if !eta || k == 0 {
            return Vector::zero();
        }
        Vector::term(index(k - 1, false), crate::series::scalar::int(k as i64))
    }

    fn delta_degree(&self) -> i32 {
        1
    }

    fn window_basis(&self, window: &Window) -> Vec<usize> {
        (0..=window.x_degree as usize)
            .flat_map(|k| [index(k, false), index(k, true)])
            .filter(|&i| window.contains_degree(self.degree(i)))
            .collect()
    }

    fn degree_bounds(&self) -> (i32, i32) {
        (-1, 0)
    }
}
