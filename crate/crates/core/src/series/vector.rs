use std::collections::BTreeMap;
use std::collections::HashMap;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::scalar::Scalar;
use crate::error::{Error, Result};

/// Sparse element of the carrier space, keyed by basis index.
///
/// Zero coefficients are never stored, so structural equality is equality of
/// vectors.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vector {
    terms: BTreeMap<usize, Scalar>,
}

impl Vector {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(index: usize) -> Self {
        Self::term(index, super::scalar::one())
    }

    pub fn term(index: usize, c: Scalar) -> Self {
        let mut v = Self::zero();
        v.add_term(index, c);
        v
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (usize, Scalar)>) -> Self {
        let mut v = Self::zero();
        for (i, c) in terms {
            v.add_term(i, c);
        }
        v
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

    pub fn get(&self, index: usize) -> Scalar {
        self.terms.get(&index).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Scalar)> + '_ {
        self.terms.iter().map(|(i, c)| (*i, c))
    }

    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.terms.keys().copied()
    }

    /// Smallest index carrying a nonzero coefficient.
    pub fn leading(&self) -> Option<(usize, &Scalar)> {
        self.terms.iter().next().map(|(i, c)| (*i, c))
    }

    pub fn add_term(&mut self, index: usize, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(index) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// `self += c * other`
    pub fn add_scaled(&mut self, other: &Vector, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        for (i, a) in other.iter() {
            self.add_term(i, a * c);
        }
    }

    pub fn scaled(&self, c: &Scalar) -> Vector {
        if c.is_zero() {
            return Vector::zero();
        }
        Vector {
            terms: self.terms.iter().map(|(i, a)| (*i, a * c)).collect(),
        }
    }

    pub fn add(&self, other: &Vector) -> Vector {
        let mut out = self.clone();
        out.add_scaled(other, &super::scalar::one());
        out
    }

    pub fn sub(&self, other: &Vector) -> Vector {
        let mut out = self.clone();
        out.add_scaled(other, &-super::scalar::one());
        out
    }

    pub fn neg(&self) -> Vector {
        Vector {
            terms: self.terms.iter().map(|(i, a)| (*i, -a)).collect(),
        }
    }

    /// Linear extension of a map given on basis elements.
    pub fn map_linear(&self, mut f: impl FnMut(usize) -> Vector) -> Vector {
        let mut out = Vector::zero();
        for (i, c) in self.iter() {
            out.add_scaled(&f(i), c);
        }
        out
    }

    /// Bilinear extension of a map given on pairs of basis elements.
    pub fn bilinear(&self, other: &Vector, mut f: impl FnMut(usize, usize) -> Vector) -> Vector {
        let mut out = Vector::zero();
        for (i, a) in self.iter() {
            for (j, b) in other.iter() {
                out.add_scaled(&f(i, j), &(a * b));
            }
        }
        out
    }

    /// Keep only the components for which `keep` holds.
    pub fn filter(&self, mut keep: impl FnMut(usize) -> bool) -> Vector {
        Vector {
            terms: self
                .terms
                .iter()
                .filter(|(i, _)| keep(**i))
                .map(|(i, c)| (*i, c.clone()))
                .collect(),
        }
    }

    /// The common degree of all terms, if the vector is nonzero and homogeneous.
    pub fn degree(&self, degree_of: impl Fn(usize) -> i32) -> Option<i32> {
        let mut it = self.indices().map(degree_of);
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    /// Split into homogeneous components, ordered by degree.
    pub fn homogeneous_parts(&self, degree_of: impl Fn(usize) -> i32) -> BTreeMap<i32, Vector> {
        let mut parts: BTreeMap<i32, Vector> = BTreeMap::new();
        for (i, c) in self.iter() {
            parts.entry(degree_of(i)).or_default().add_term(i, c.clone());
        }
        parts
    }

    pub fn to_named(&self, name_of: impl Fn(usize) -> String) -> BTreeMap<String, String> {
        self.iter()
            .map(|(i, c)| (name_of(i), super::scalar::format_scalar(c)))
            .collect()
    }

    pub fn from_named(
        named: &BTreeMap<String, String>,
        index_of: impl Fn(&str) -> Option<usize>,
    ) -> Result<Vector> {
        let mut v = Vector::zero();
        for (name, c) in named {
            let i = index_of(name)
                .ok_or_else(|| Error::BasisMismatch(format!("unknown basis element {name:?}")))?;
            v.add_term(i, super::scalar::parse_scalar(c)?);
        }
        Ok(v)
    }

    /// Human-readable form such as `3/1*x^2 + -1/2*eta`.
    pub fn display_with(&self, name_of: impl Fn(usize) -> String) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        self.iter()
            .map(|(i, c)| format!("{}*{}", super::scalar::format_scalar(c), name_of(i)))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// An entry of a graded basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisElement {
    pub name: String,
    pub degree: i32,
}

/// Ordered homogeneous basis with a distinguished unit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedBasis {
    elements: Vec<BasisElement>,
    unit: usize,
    by_name: HashMap<String, usize>,
}

impl GradedBasis {
    pub fn new(elements: Vec<BasisElement>, unit: &str) -> Result<Self> {
        let mut by_name = HashMap::new();
        for (i, e) in elements.iter().enumerate() {
            if by_name.insert(e.name.clone(), i).is_some() {
                return Err(Error::Spec(format!("duplicate basis name {:?}", e.name)));
            }
        }
        let unit = *by_name
            .get(unit)
            .ok_or_else(|| Error::Spec(format!("unit {unit:?} is not a basis element")))?;
        if elements[unit].degree != 0 {
            return Err(Error::Spec("the unit must have degree 0".into()));
        }
        Ok(Self {
            elements,
            unit,
            by_name,
        })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn degree(&self, i: usize) -> i32 {
        self.elements[i].degree
    }

    pub fn name(&self, i: usize) -> &str {
        &self.elements[i].name
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.by_name.get(name).copied()
    }

    pub fn elements(&self) -> &[BasisElement] {
        &self.elements
    }
}

#[cfg(test)]
mod tests {
    use super::super::scalar::{int, ratio};
    use super::*;

    #[test]
    fn zero_coefficients_are_dropped() {
        let mut v = Vector::term(3, int(2));
        v.add_term(3, int(-2));
        assert!(v.is_zero());
        let w = Vector::from_terms([(1, int(1)), (2, int(0))]);
        assert_eq!(w.len(), 1);
    }

    #[test]
    fn degree_requires_homogeneity() {
        let deg = |i: usize| i as i32 % 2;
        assert_eq!(Vector::from_terms([(0, int(1)), (2, ratio(1, 2))]).degree(deg), Some(0));
        assert_eq!(Vector::from_terms([(0, int(1)), (1, int(1))]).degree(deg), None);
        assert_eq!(Vector::zero().degree(deg), None);
    }

    #[test]
    fn basis_validation() {
        let e = |n: &str, d| BasisElement {
            name: n.into(),
            degree: d,
        };
        assert!(GradedBasis::new(vec![e("1", 0), e("a", 1)], "1").is_ok());
        assert!(GradedBasis::new(vec![e("1", 0), e("1", 1)], "1").is_err());
        assert!(GradedBasis::new(vec![e("1", 1)], "1").is_err());
        assert!(GradedBasis::new(vec![], "1").is_err());
    }
}
