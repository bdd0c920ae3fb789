//! Exact elimination over sparse rational vectors.
//!
//! [`Span`] keeps a reduced row echelon basis of the span of a list of
//! generators, together with the combination of generators that produced each
//! row. That is enough for rank, membership, solving `Σ λ_k g_k = b`, and
//! kernels (relations among the images of basis vectors).

use num_traits::{One, Zero};

use crate::series::{Scalar, Vector};

#[derive(Clone, Debug)]
struct Row {
    pivot: usize,
    vec: Vector,
    combo: Vector,
}

#[derive(Clone, Debug, Default)]
pub struct Span {
    rows: Vec<Row>,
    generators: usize,
    relations: Vec<Vector>,
}

impl Span {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_generators<'a>(gens: impl IntoIterator<Item = &'a Vector>) -> Self {
        let mut s = Self::new();
        for g in gens {
            s.push(g);
        }
        s
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn generator_count(&self) -> usize {
        self.generators
    }

    /// Reduce `v` against the echelon rows; returns the remainder and the
    /// combination of generators that was subtracted.
    fn reduce(&self, v: &Vector) -> (Vector, Vector) {
        let mut rem = v.clone();
        let mut used = Vector::zero();
        for row in &self.rows {
            let c = rem.get(row.pivot);
            if !c.is_zero() {
                rem.add_scaled(&row.vec, &-c.clone());
                used.add_scaled(&row.combo, &c);
            }
        }
        (rem, used)
    }

    /// Add generator number `generator_count()`. Returns `true` when it was
    /// independent of the previous ones; otherwise a relation is recorded.
    pub fn push(&mut self, g: &Vector) -> bool {
        let k = self.generators;
        self.generators += 1;
        let (rem, used) = self.reduce(g);
        let mut combo = Vector::basis(k);
        combo.add_scaled(&used, &-Scalar::one());
        match rem.leading() {
            None => {
                self.relations.push(combo);
                false
            }
            Some((pivot, lead)) => {
                let inv = lead.recip();
                let vec = rem.scaled(&inv);
                let combo = combo.scaled(&inv);
                for row in &mut self.rows {
                    let c = row.vec.get(pivot);
                    if !c.is_zero() {
                        row.vec.add_scaled(&vec, &-c.clone());
                        row.combo.add_scaled(&combo, &-c);
                    }
                }
                let at = self.rows.partition_point(|r| r.pivot < pivot);
                self.rows.insert(at, Row { pivot, vec, combo });
                true
            }
        }
    }

    pub fn contains(&self, v: &Vector) -> bool {
        self.reduce(v).0.is_zero()
    }

    /// Remainder of `v` modulo the span (reduced against the echelon rows).
    pub fn remainder(&self, v: &Vector) -> Vector {
        self.reduce(v).0
    }

    /// Coefficients `λ` (indexed by generator) with `Σ λ_k g_k = v`, if any.
    pub fn express(&self, v: &Vector) -> Option<Vector> {
        let (rem, used) = self.reduce(v);
        rem.is_zero().then_some(used)
    }

    /// A basis of the linear relations among the generators.
    pub fn relations(&self) -> &[Vector] {
        &self.relations
    }

    /// Reduced echelon basis of the span.
    pub fn basis(&self) -> Vec<Vector> {
        self.rows.iter().map(|r| r.vec.clone()).collect()
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.pivot).collect()
    }
}

/// Kernel of the linear map sending `domain[k]` to `images[k]`, as vectors in
/// the span of `domain`, in reduced echelon form.
pub fn kernel(domain: &[Vector], images: &[Vector]) -> Vec<Vector> {
    let span = Span::from_generators(images);
    let raw: Vec<Vector> = span
        .relations()
        .iter()
        .map(|rel| rel.map_linear(|k| domain[k].clone()))
        .collect();
    Span::from_generators(&raw).basis()
}

/// Basis of `span(a) ∩ span(b)`.
pub fn intersection(a: &[Vector], b: &[Vector]) -> Vec<Vector> {
    let mut gens: Vec<Vector> = a.to_vec();
    gens.extend(b.iter().cloned());
    let span = Span::from_generators(&gens);
    let raw: Vec<Vector> = span
        .relations()
        .iter()
        .map(|rel| rel.filter(|k| k < a.len()).map_linear(|k| a[k].clone()))
        .collect();
    Span::from_generators(&raw).basis()
}
