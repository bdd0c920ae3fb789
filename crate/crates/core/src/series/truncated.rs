use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::monomial::{Monomial, Variables};
use super::scalar::{self, Scalar};
use super::vector::Vector;
use crate::error::{Error, Result};

/// Truncation order meaning "nothing was dropped".
pub const UNBOUNDED: u32 = u32::MAX;

/// A bilinear operation on the carrier, given on basis elements.
///
/// `is_odd` is the parity of the operation itself (the product is even, the
/// bracket odd); it enters the Koszul sign when a monomial moves past the
/// operation and its right argument.
pub trait Bilinear {
    fn apply(&self, i: usize, j: usize) -> Vector;
    fn basis_is_odd(&self, i: usize) -> bool;
    fn is_odd(&self) -> bool {
        false
    }
}

/// An element of `V[[ħ]][[t]]`, stored as `Σ v_m · m` with each vector written
/// to the left of its monomial.
///
/// `t_order` and `hbar_order` record up to which orders the stored terms are
/// reliable; every term beyond them has been dropped.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Series {
    vars: Variables,
    terms: BTreeMap<Monomial, Vector>,
    t_order: u32,
    hbar_order: u32,
}

impl Series {
    pub fn zero(vars: Variables, t_order: u32, hbar_order: u32) -> Self {
        Self {
            vars,
            terms: BTreeMap::new(),
            t_order,
            hbar_order,
        }
    }

    /// `v · 1`, the constant series.
    pub fn constant(vars: Variables, v: Vector, t_order: u32, hbar_order: u32) -> Self {
        let mut s = Self::zero(vars, t_order, hbar_order);
        s.add_term(Monomial::one(), &v);
        s
    }

    pub fn vars(&self) -> &Variables {
        &self.vars
    }

    pub fn t_order(&self) -> u32 {
        self.t_order
    }

    pub fn hbar_order(&self) -> u32 {
        self.hbar_order
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Vector)> + '_ {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Vector {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    fn fits(&self, m: &Monomial) -> bool {
        m.t_order() <= self.t_order && m.hbar_power() <= self.hbar_order
    }

    /// `self += v · m`; silently dropped beyond the truncation orders.
    pub fn add_term(&mut self, m: Monomial, v: &Vector) {
        if v.is_zero() || !self.fits(&m) {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(v.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                e.get_mut().add_scaled(v, &Scalar::one());
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn check_vars(&self, other: &Series) -> Result<()> {
        if self.vars != other.vars {
            return Err(Error::BasisMismatch(format!(
                "series over different variable sets ({:?} vs {:?})",
                self.vars.degrees(),
                other.vars.degrees()
            )));
        }
        Ok(())
    }

    /// Restrict to smaller truncation orders.
    pub fn truncate(&self, t_order: u32, hbar_order: u32) -> Series {
        let t_order = t_order.min(self.t_order);
        let hbar_order = hbar_order.min(self.hbar_order);
        Series {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.t_order() <= t_order && m.hbar_power() <= hbar_order)
                .map(|(m, v)| (m.clone(), v.clone()))
                .collect(),
            t_order,
            hbar_order,
        }
    }

    fn combine(&self, other: &Series, c: &Scalar) -> Result<Series> {
        self.check_vars(other)?;
        let mut out = self.truncate(other.t_order, other.hbar_order);
        for (m, v) in &other.terms {
            out.add_term(m.clone(), &v.scaled(c));
        }
        Ok(out)
    }

    pub fn add(&self, other: &Series) -> Result<Series> {
        self.combine(other, &Scalar::one())
    }

    pub fn sub(&self, other: &Series) -> Result<Series> {
        self.combine(other, &-Scalar::one())
    }

    pub fn neg(&self) -> Series {
        self.scale(&-Scalar::one())
    }

    pub fn scale(&self, c: &Scalar) -> Series {
        let mut out = Series::zero(self.vars.clone(), self.t_order, self.hbar_order);
        if c.is_zero() {
            return out;
        }
        out.terms = self.terms.iter().map(|(m, v)| (m.clone(), v.scaled(c))).collect();
        out
    }

    /// Apply a linear operator on `V` to every coefficient. Operators act from
    /// the left on the vector factor, which sits to the left of the monomial,
    /// so no sign arises.
    pub fn map_vectors(&self, mut f: impl FnMut(&Vector) -> Vector) -> Series {
        let mut out = Series::zero(self.vars.clone(), self.t_order, self.hbar_order);
        for (m, v) in &self.terms {
            out.add_term(m.clone(), &f(v));
        }
        out
    }

    /// Graded bilinear extension of `op` with Koszul signs:
    /// `(v m)(w n) = (-1)^{|m|(|w| + |op|)} op(v, w) · (m n)`.
    pub fn mul_with(&self, other: &Series, op: &impl Bilinear) -> Result<Series> {
        self.check_vars(other)?;
        let t_order = self.t_order.min(other.t_order);
        let hbar_order = self.hbar_order.min(other.hbar_order);
        let mut out = Series::zero(self.vars.clone(), t_order, hbar_order);
        let mut acc: BTreeMap<Monomial, Vector> = BTreeMap::new();
        for (m, v) in &self.terms {
            let m_odd = m.is_odd(&self.vars);
            for (n, w) in &other.terms {
                if m.t_order() + n.t_order() > t_order || m.hbar_power() + n.hbar_power() > hbar_order {
                    continue;
                }
                let Some((mn, s)) = m.mul(n, &self.vars) else {
                    continue;
                };
                let slot = acc.entry(mn).or_default();
                for (i, a) in v.iter() {
                    for (j, b) in w.iter() {
                        let odd = s.is_minus() ^ (m_odd && (op.basis_is_odd(j) ^ op.is_odd()));
                        let c = if odd { -(a * b) } else { a * b };
                        slot.add_scaled(&op.apply(i, j), &c);
                    }
                }
            }
        }
        for (m, v) in acc {
            out.add_term(m, &v);
        }
        Ok(out)
    }

    /// Multiply by ħ^k. The reliable ħ-order rises by `k`.
    pub fn mul_hbar(&self, k: u32) -> Series {
        let hbar_order = if self.hbar_order == UNBOUNDED {
            UNBOUNDED
        } else {
            self.hbar_order.saturating_add(k)
        };
        Series {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (m.with_hbar(m.hbar_power() + k), v.clone()))
                .collect(),
            t_order: self.t_order,
            hbar_order,
        }
    }

    /// Divide by ħ^k; the reliable ħ-order drops by `k`.
    pub fn hbar_divide(&self, k: u32) -> Result<Series> {
        if let Some(m) = self.terms.keys().find(|m| m.hbar_power() < k) {
            return Err(Error::NotDivisible {
                k,
                found: m.hbar_power(),
            });
        }
        if self.hbar_order != UNBOUNDED && self.hbar_order < k {
            return Err(Error::Precondition(format!(
                "cannot divide by hbar^{k}: series is only known to hbar order {}",
                self.hbar_order
            )));
        }
        let hbar_order = if self.hbar_order == UNBOUNDED {
            UNBOUNDED
        } else {
            self.hbar_order - k
        };
        Ok(Series {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (m.with_hbar(m.hbar_power() - k), v.clone()))
                .collect(),
            t_order: self.t_order,
            hbar_order,
        })
    }

    /// α: drop every term carrying a positive power of ħ.
    pub fn set_hbar_zero(&self) -> Series {
        Series {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.hbar_power() == 0)
                .map(|(m, v)| (m.clone(), v.clone()))
                .collect(),
            t_order: self.t_order,
            hbar_order: self.hbar_order,
        }
    }

    /// The part of t-order exactly `n`, all ħ-powers kept.
    pub fn ord(&self, n: u32) -> Series {
        Series {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.t_order() == n)
                .map(|(m, v)| (m.clone(), v.clone()))
                .collect(),
            t_order: self.t_order,
            hbar_order: self.hbar_order,
        }
    }

    /// The part with ħ-power exactly `p`.
    pub fn hbar_part(&self, p: u32) -> Series {
        Series {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.hbar_power() == p)
                .map(|(m, v)| (m.clone(), v.clone()))
                .collect(),
            t_order: self.t_order,
            hbar_order: self.hbar_order,
        }
    }

    /// Coefficient of the t-free, ħ-free monomial.
    pub fn constant_term(&self) -> Vector {
        self.coefficient(&Monomial::one())
    }

    /// Total parity of every term is even (vector parity plus monomial parity).
    pub fn is_even(&self, basis_is_odd: impl Fn(usize) -> bool) -> bool {
        self.terms.iter().all(|(m, v)| {
            let m_odd = m.is_odd(&self.vars);
            v.indices().all(|i| basis_is_odd(i) == m_odd)
        })
    }

    /// The common total degree of all terms, if homogeneous and nonzero.
    pub fn total_degree(&self, degree_of: impl Fn(usize) -> i32, hbar_degree: i32) -> Option<i32> {
        let degree_of = &degree_of;
        let mut it = self.terms.iter().flat_map(|(m, v)| {
            let md = m.degree(&self.vars, hbar_degree);
            v.indices().map(move |i| degree_of(i) + md)
        });
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    /// Truncated exponential `Σ a^n / n!` with respect to `product`.
    pub fn exp(&self, product: &impl Bilinear, unit: usize) -> Result<Series> {
        if !self.constant_term_vanishes() {
            return Err(Error::Precondition("exp needs a series without t-constant term".into()));
        }
        if !self.is_even(|i| product.basis_is_odd(i)) {
            return Err(Error::Precondition("exp needs an even series".into()));
        }
        let mut out = Series::constant(self.vars.clone(), Vector::basis(unit), self.t_order, self.hbar_order);
        if self.t_order == UNBOUNDED {
            return Err(Error::Precondition("exp needs a finite t-order".into()));
        }
        let mut power = out.clone();
        for n in 1..=self.t_order {
            power = power.mul_with(self, product)?;
            if power.is_zero() {
                break;
            }
            out = out.add(&power.scale(&scalar::factorial_inverse(n)))?;
        }
        Ok(out)
    }

    /// Truncated logarithm `Σ (-1)^{n+1} (u - 1)^n / n` of a series whose
    /// t-constant term is the unit.
    pub fn log(&self, product: &impl Bilinear, unit: usize) -> Result<Series> {
        let one = Series::constant(self.vars.clone(), Vector::basis(unit), self.t_order, self.hbar_order);
        let constant_part = self.t_constant_part();
        if constant_part != one.truncate(self.t_order, self.hbar_order) {
            return Err(Error::Precondition("log needs a series whose t-constant term is the unit".into()));
        }
        let a = self.sub(&one)?;
        if !a.is_even(|i| product.basis_is_odd(i)) {
            return Err(Error::Precondition("log needs an even series".into()));
        }
        let mut out = Series::zero(self.vars.clone(), self.t_order, self.hbar_order);
        if self.t_order == UNBOUNDED {
            return Err(Error::Precondition("log needs a finite t-order".into()));
        }
        let mut power = one;
        for n in 1..=self.t_order {
            power = power.mul_with(&a, product)?;
            if power.is_zero() {
                break;
            }
            let c = Scalar::new(if n % 2 == 1 { 1.into() } else { (-1).into() }, n.into());
            out = out.add(&power.scale(&c))?;
        }
        Ok(out)
    }

    /// Terms of t-order zero (any ħ-power).
    pub fn t_constant_part(&self) -> Series {
        self.ord(0)
    }

    fn constant_term_vanishes(&self) -> bool {
        self.terms.keys().all(|m| m.t_order() > 0)
    }


    /// Largest ħ-power actually present.
    pub fn max_hbar_power(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.hbar_power()).max()
    }

    /// Largest t-order actually present.
    pub fn max_t_power(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.t_order()).max()
    }

    pub fn with_orders(mut self, t_order: u32, hbar_order: u32) -> Series {
        self.t_order = t_order;
        self.hbar_order = hbar_order;
        self.terms.retain(|m, _| m.t_order() <= t_order && m.hbar_power() <= hbar_order);
        self
    }
}
