//! Structure-constant backend for finite-dimensional dBV algebras.

use crate::series::{GradedBasis, Vector};

use super::{Dbv, Window};

/// A finite-dimensional dBV algebra given by a product table and the matrices
/// of `Q` (degree +1) and `Δ` (degree −1). Nothing is assumed: the axioms are
/// verified by [`super::check_axioms`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteDimDbv {
    basis: GradedBasis,
    product: Vec<Vec<Vector>>,
    q: Vec<Vector>,
    delta: Vec<Vector>,
}

impl FiniteDimDbv {
    /// All structure maps zero except multiplication by the unit.
    pub fn new(basis: GradedBasis) -> Self {
        let n = basis.len();
        let u = basis.unit();
        let mut product = vec![vec![Vector::zero(); n]; n];
        for (i, row) in product.iter_mut().enumerate() {
            row[u] = Vector::basis(i);
        }
        for (j, slot) in product[u].iter_mut().enumerate() {
            *slot = Vector::basis(j);
        }
        Self {
            basis,
            product,
            q: vec![Vector::zero(); n],
            delta: vec![Vector::zero(); n],
        }
    }

    pub fn basis(&self) -> &GradedBasis {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn set_product(&mut self, i: usize, j: usize, v: Vector) {
        self.product[i][j] = v;
    }

    /// Set `e_i e_j` and the graded-commutative partner `e_j e_i`.
    pub fn set_product_symmetric(&mut self, i: usize, j: usize, v: Vector) {
        let odd = self.is_odd(i) && self.is_odd(j);
        let partner = if odd { v.neg() } else { v.clone() };
        self.product[i][j] = v;
        if i != j {
            self.product[j][i] = partner;
        }
    }

    pub fn set_q(&mut self, i: usize, v: Vector) {
        self.q[i] = v;
    }

    pub fn set_delta(&mut self, i: usize, v: Vector) {
        self.delta[i] = v;
    }

    pub fn product_entry(&self, i: usize, j: usize) -> &Vector {
        &self.product[i][j]
    }

    pub fn q_entry(&self, i: usize) -> &Vector {
        &self.q[i]
    }

    pub fn delta_entry(&self, i: usize) -> &Vector {
        &self.delta[i]
    }
}

impl Dbv for FiniteDimDbv {
    fn degree(&self, i: usize) -> i32 {
        self.basis.degree(i)
    }

    fn name(&self, i: usize) -> String {
        self.basis.name(i).to_string()
    }

    fn index_of(&self, name: &str) -> Option<usize> {
        self.basis.index_of(name)
    }

    fn unit(&self) -> usize {
        self.basis.unit()
    }

    fn mul_basis(&self, i: usize, j: usize) -> Vector {
        self.product[i][j].clone()
    }

    fn q_basis(&self, i: usize) -> Vector {
        self.q[i].clone()
    }

    fn delta_basis(&self, i: usize) -> Vector {
        self.delta[i].clone()
    }

    fn delta_degree(&self) -> i32 {
        -1
    }

    fn window_basis(&self, _window: &Window) -> Vec<usize> {
        (0..self.dim()).collect()
    }

    fn degree_bounds(&self) -> (i32, i32) {
        let degs = self.basis.elements().iter().map(|e| e.degree);
        let lo = degs.clone().min().unwrap_or(0);
        let hi = degs.max().unwrap_or(0);
        (lo, hi)
    }
}
