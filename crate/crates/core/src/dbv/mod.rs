//! Differential BV algebras: the two backends, the derived bracket, `K = Q + ħΔ`
//! and axiom verification.

pub mod axioms;
pub mod finite;
pub mod lg;
pub mod poly;
pub mod spec_file;

use crate::error::Result;
use crate::series::scalar::sign;
use crate::series::{Bilinear, Series, Vector};

pub use axioms::{check_axioms, AxiomEntry, AxiomReport};
pub use finite::FiniteDimDbv;
pub use lg::LandauGinzburgDbv;
pub use poly::Poly;

/// Which slice of a possibly infinite carrier to enumerate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Window {
    pub degree_min: i32,
    pub degree_max: i32,
    /// Largest power of `x` for polynomial carriers.
    pub x_degree: u32,
}

impl Default for Window {
    fn default() -> Self {
        Self {
            degree_min: -4,
            degree_max: 4,
            x_degree: 8,
        }
    }
}

impl Window {
    pub fn contains_degree(&self, d: i32) -> bool {
        self.degree_min <= d && d <= self.degree_max
    }
}

/// The contract shared by both backends. Basis elements are addressed by
/// `usize` indices; `Q` has degree `+1` and `Δ` has degree `delta_degree()`
/// (`-1` for finite algebras, `+1` for the Landau–Ginzburg grading where
/// `deg η = -1`). ħ gets the degree that makes `K = Q + ħΔ` homogeneous of
/// degree `+1`.
pub trait Dbv {
    fn degree(&self, i: usize) -> i32;
    fn name(&self, i: usize) -> String;
    fn index_of(&self, name: &str) -> Option<usize>;
    fn unit(&self) -> usize;
    fn mul_basis(&self, i: usize, j: usize) -> Vector;
    fn q_basis(&self, i: usize) -> Vector;
    fn delta_basis(&self, i: usize) -> Vector;
    fn delta_degree(&self) -> i32;
    /// Homogeneous basis elements to enumerate. Finite carriers ignore the
    /// window and return everything.
    fn window_basis(&self, window: &Window) -> Vec<usize>;
    /// Smallest and largest degree occurring in the carrier.
    fn degree_bounds(&self) -> (i32, i32);

    fn is_odd(&self, i: usize) -> bool {
        self.degree(i).rem_euclid(2) == 1
    }

    fn hbar_degree(&self) -> i32 {
        1 - self.delta_degree()
    }

    fn mul(&self, v: &Vector, w: &Vector) -> Vector {
        v.bilinear(w, |i, j| self.mul_basis(i, j))
    }

    fn q(&self, v: &Vector) -> Vector {
        v.map_linear(|i| self.q_basis(i))
    }

    fn delta(&self, v: &Vector) -> Vector {
        v.map_linear(|i| self.delta_basis(i))
    }

    /// `d_v(w) = Δ(vw) − Δ(v)w − (−1)^{|v|} vΔ(w)` on basis elements.
    fn derivation_defect(&self, i: usize, j: usize) -> Vector {
        let vw = self.mul_basis(i, j);
        let mut out = self.delta(&vw);
        out = out.sub(&self.mul(&self.delta_basis(i), &Vector::basis(j)));
        let v_dw = self.mul(&Vector::basis(i), &self.delta_basis(j));
        out.add_scaled(&v_dw, &-sign(self.is_odd(i)));
        out
    }

    /// The BV bracket on basis elements, `[v, w] = (−1)^{|v|} d_v(w)`.
    ///
    /// The prefactor makes the bracket satisfy the odd-Lie symmetry
    /// `[v,w] = −(−1)^{(|v|+1)(|w|+1)}[w,v]` and gives `[x, η] = 1`,
    /// `[η, x] = −1` in the Landau–Ginzburg model; for even `v` it is
    /// `d_v(w)` itself.
    fn bracket_basis(&self, i: usize, j: usize) -> Vector {
        let d = self.derivation_defect(i, j);
        if self.is_odd(i) {
            d.neg()
        } else {
            d
        }
    }

    fn bracket(&self, v: &Vector, w: &Vector) -> Vector {
        v.bilinear(w, |i, j| self.bracket_basis(i, j))
    }

    fn unit_vector(&self) -> Vector {
        Vector::basis(self.unit())
    }
}

/// The algebra product as a [`Bilinear`] map.
pub struct Product<'a, A: ?Sized>(pub &'a A);

/// The BV bracket as an odd [`Bilinear`] map.
pub struct Bracket<'a, A: ?Sized>(pub &'a A);

impl<A: Dbv + ?Sized> Bilinear for Product<'_, A> {
    fn apply(&self, i: usize, j: usize) -> Vector {
        self.0.mul_basis(i, j)
    }
    fn basis_is_odd(&self, i: usize) -> bool {
        self.0.is_odd(i)
    }
}

impl<A: Dbv + ?Sized> Bilinear for Bracket<'_, A> {
    fn apply(&self, i: usize, j: usize) -> Vector {
        self.0.bracket_basis(i, j)
    }
    fn basis_is_odd(&self, i: usize) -> bool {
        self.0.is_odd(i)
    }
    fn is_odd(&self) -> bool {
        true
    }
}

/// A dBV algebra from either backend.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DbvAlgebra {
    Finite(FiniteDimDbv),
    LandauGinzburg(LandauGinzburgDbv),
}

macro_rules! delegate {
    ($self:ident, $a:ident => $e:expr) => {
        match $self {
            DbvAlgebra::Finite($a) => $e,
            DbvAlgebra::LandauGinzburg($a) => $e,
        }
    };
}

impl Dbv for DbvAlgebra {
    fn degree(&self, i: usize) -> i32 {
        delegate!(self, a => a.degree(i))
    }
    fn name(&self, i: usize) -> String {
        delegate!(self, a => a.name(i))
    }
    fn index_of(&self, name: &str) -> Option<usize> {
        delegate!(self, a => a.index_of(name))
    }
    fn unit(&self) -> usize {
        delegate!(self, a => a.unit())
    }
    fn mul_basis(&self, i: usize, j: usize) -> Vector {
        delegate!(self, a => a.mul_basis(i, j))
    }
    fn q_basis(&self, i: usize) -> Vector {
        delegate!(self, a => a.q_basis(i))
    }
    fn delta_basis(&self, i: usize) -> Vector {
        delegate!(self, a => a.delta_basis(i))
    }
    fn delta_degree(&self) -> i32 {
        delegate!(self, a => a.delta_degree())
    }
    fn window_basis(&self, window: &Window) -> Vec<usize> {
        delegate!(self, a => a.window_basis(window))
    }
    fn degree_bounds(&self) -> (i32, i32) {
        delegate!(self, a => a.degree_bounds())
    }
    fn bracket_basis(&self, i: usize, j: usize) -> Vector {
        delegate!(self, a => a.bracket_basis(i, j))
    }
}

impl DbvAlgebra {
    pub fn display(&self, v: &Vector) -> String {
        v.display_with(|i| self.name(i))
    }

    pub fn series_mul(&self, a: &Series, b: &Series) -> Result<Series> {
        a.mul_with(b, &Product(self))
    }

    pub fn series_bracket(&self, a: &Series, b: &Series) -> Result<Series> {
        a.mul_with(b, &Bracket(self))
    }

    pub fn series_q(&self, s: &Series) -> Series {
        s.map_vectors(|v| self.q(v))
    }

    pub fn series_delta(&self, s: &Series) -> Series {
        s.map_vectors(|v| self.delta(v))
    }

    /// `K = Q + ħΔ`, coefficient-wise.
    pub fn apply_k(&self, s: &Series) -> Result<Series> {
        self.series_q(s).add(&self.series_delta(s).mul_hbar(1))
    }

    pub fn series_exp(&self, s: &Series) -> Result<Series> {
        s.exp(&Product(self), self.unit())
    }

    pub fn series_log(&self, s: &Series) -> Result<Series> {
        s.log(&Product(self), self.unit())
    }

    /// `D Γ + ½[Γ, Γ]` for a differential `D` given coefficient-wise.
    pub fn master_expression(&self, gamma: &Series, d_gamma: Series) -> Result<Series> {
        let half = crate::series::scalar::ratio(1, 2);
        d_gamma.add(&self.series_bracket(gamma, gamma)?.scale(&half))
    }
}
