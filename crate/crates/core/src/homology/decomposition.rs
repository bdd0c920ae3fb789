//! The splitting `V = B ⊕ H_rep ⊕ C` for a differential `D`: `B = im D`,
//! `H_rep` spans chosen homology representatives, `D` maps `C` isomorphically
//! onto `B`.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::Serialize;

use crate::dbv::lg::index as lg_index;
use crate::dbv::{Dbv, DbvAlgebra, LandauGinzburgDbv, Poly, Window};
use crate::error::{Error, Result};
use crate::linalg::{kernel, Span};
use crate::series::scalar::one;
use crate::series::Vector;

/// The differentials whose homology the crate computes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Differential {
    Q,
    Delta,
    /// `Q + Δ`, which only respects the parity of the degree.
    QPlusDelta,
}

impl Differential {
    pub fn apply(self, alg: &DbvAlgebra, v: &Vector) -> Vector {
        match self {
            Differential::Q => alg.q(v),
            Differential::Delta => alg.delta(v),
            Differential::QPlusDelta => alg.q(v).add(&alg.delta(v)),
        }
    }

    /// Grading key of a basis element: the degree, or its parity for `Q + Δ`.
    pub fn key(self, alg: &DbvAlgebra, i: usize) -> i32 {
        match self {
            Differential::QPlusDelta => alg.degree(i).rem_euclid(2),
            _ => alg.degree(i),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyClass {
    pub name: String,
    /// Degree, or parity for the `Q + Δ` homology.
    pub degree: i32,
    pub representative: Vector,
}

/// Coordinates of a vector in the adapted decomposition.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Split {
    pub b: Vector,
    /// An element `c` of `C` with `D c = b`.
    pub b_preimage: Vector,
    /// Coefficients of the homology representatives, indexed by class.
    pub h: Vector,
    pub c: Vector,
}

impl Split {
    fn add(&mut self, other: Split) {
        self.b = self.b.add(&other.b);
        self.b_preimage = self.b_preimage.add(&other.b_preimage);
        self.h = self.h.add(&other.h);
        self.c = self.c.add(&other.c);
    }
}

#[derive(Clone, Debug)]
struct Block {
    b: Vec<Vector>,
    b_preimage: Vec<Vector>,
    /// Indices into the class list.
    h: Vec<usize>,
    c: Vec<Vector>,
    /// Generators `b ++ h representatives ++ c`, a basis of the block.
    span: Span,
}

/// Exact elimination per grading key over a finite list of basis elements.
#[derive(Clone, Debug)]
pub struct FiniteSplit {
    differential: Differential,
    blocks: BTreeMap<i32, Block>,
    classes: Vec<HomologyClass>,
    key_of: BTreeMap<usize, i32>,
}

impl FiniteSplit {
    pub fn new(alg: &DbvAlgebra, elements: &[usize], differential: Differential) -> Result<Self> {
        let mut by_key: BTreeMap<i32, Vec<usize>> = BTreeMap::new();
        for &i in elements {
            by_key.entry(differential.key(alg, i)).or_default().push(i);
        }
        let key_of: BTreeMap<usize, i32> = elements.iter().map(|&i| (i, differential.key(alg, i))).collect();

        // Kernel and complement in every block.
        let mut kernels = BTreeMap::new();
        let mut complements = BTreeMap::new();
        for (&k, idx) in &by_key {
            let domain: Vec<Vector> = idx.iter().map(|&i| Vector::basis(i)).collect();
            let images: Vec<Vector> = idx.iter().map(|&i| differential.apply(alg, &Vector::basis(i))).collect();
            let ker = kernel(&domain, &images);
            let pivots: Vec<usize> = ker.iter().filter_map(|v| v.leading().map(|(p, _)| p)).collect();
            let c: Vec<Vector> = idx.iter().filter(|i| !pivots.contains(i)).map(|&i| Vector::basis(i)).collect();
            kernels.insert(k, ker);
            complements.insert(k, c);
        }

        // B in the target block of each complement.
        let mut exact: BTreeMap<i32, (Vec<Vector>, Vec<Vector>)> = BTreeMap::new();
        for c in complements.values() {
            for v in c {
                let image = differential.apply(alg, v);
                if image.is_zero() {
                    continue;
                }
                let target = image_key(&key_of, &image)?;
                let entry = exact.entry(target).or_default();
                entry.0.push(image);
                entry.1.push(v.clone());
            }
        }

        let mut classes = Vec::new();
        let mut blocks = BTreeMap::new();
        for (&k, ker) in &kernels {
            let (b, b_preimage) = exact.remove(&k).unwrap_or_default();
            let mut span = Span::from_generators(&b);
            if span.rank() != b.len() {
                return Err(Error::Precondition("differential is not injective on the complement".into()));
            }
            let mut h = Vec::new();
            for v in ker {
                if !span.contains(v) {
                    span.push(v);
                    h.push(classes.len());
                    classes.push(HomologyClass {
                        name: format!("[{}]", alg.name(v.leading().expect("kernel vectors are nonzero").0)),
                        degree: k,
                        representative: v.clone(),
                    });
                }
            }
            let c = complements.remove(&k).unwrap_or_default();
            for v in &c {
                span.push(v);
            }
            if span.rank() != by_key[&k].len() {
                return Err(Error::Precondition(format!(
                    "D² ≠ 0: the adapted pieces do not span the block of key {k}"
                )));
            }
            blocks.insert(
                k,
                Block {
                    b,
                    b_preimage,
                    h,
                    c,
                    span,
                },
            );
        }
        if let Some(k) = exact.keys().next() {
            return Err(Error::Precondition(format!("image of D leaves the basis (key {k})")));
        }
        Ok(Self {
            differential,
            blocks,
            classes,
            key_of,
        })
    }

    fn decompose(&self, v: &Vector) -> Result<Split> {
        let mut parts: BTreeMap<i32, Vector> = BTreeMap::new();
        for (i, c) in v.iter() {
            let k = *self
                .key_of
                .get(&i)
                .ok_or_else(|| Error::BasisMismatch(format!("basis index {i} outside the decomposition")))?;
            parts.entry(k).or_default().add_term(i, c.clone());
        }
        let mut out = Split::default();
        for (k, part) in parts {
            let block = &self.blocks[&k];
            let coords = block.span.express(&part).expect("the adapted pieces span each block");
            let nb = block.b.len();
            let nh = block.h.len();
            let mut s = Split::default();
            for (g, c) in coords.iter() {
                if g < nb {
                    s.b.add_scaled(&block.b[g], c);
                    s.b_preimage.add_scaled(&block.b_preimage[g], c);
                } else if g < nb + nh {
                    s.h.add_term(block.h[g - nb], c.clone());
                } else {
                    s.c.add_scaled(&block.c[g - nb - nh], c);
                }
            }
            out.add(s);
        }
        Ok(out)
    }
}

fn image_key(key_of: &BTreeMap<usize, i32>, image: &Vector) -> Result<i32> {
    let mut keys = image.indices().map(|i| key_of.get(&i).copied());
    let first = keys.next().flatten();
    match first {
        Some(k) if keys.all(|x| x == Some(k)) => Ok(k),
        _ => Err(Error::Precondition("image of a basis element is not homogeneous".into())),
    }
}

/// The Landau–Ginzburg splitting computed by polynomial division.
///
/// Every differential in [`Differential`] vanishes on `k[x]` and sends `gη` to
/// `L(g)`, where `L(x^k)` has top term `c_k x^{k+m}`. Reducing from the top
/// splits even elements into `im L ⊕ span{x^j : j < m}`; odd elements `x^kη`
/// are closed exactly when `c_k = 0`.
#[derive(Clone, Debug)]
pub struct JacobianSplit {
    lg: LandauGinzburgDbv,
    differential: Differential,
    shift: i32,
    classes: Vec<HomologyClass>,
    /// Class index of each even class `x^j`, and of each closed odd `x^kη`.
    even_class: Vec<usize>,
    odd_class: BTreeMap<usize, usize>,
    window: Window,
}

impl JacobianSplit {
    pub fn new(lg: &LandauGinzburgDbv, differential: Differential, window: &Window) -> Result<Self> {
        let w_prime = lg.w_prime();
        if w_prime.is_zero() && differential != Differential::Delta {
            return Err(Error::Spec("degenerate potential: W' = 0".into()));
        }
        let shift = match differential {
            Differential::Delta => -1,
            _ => w_prime.degree().expect("W' is nonzero") as i32,
        };
        let mut split = Self {
            lg: lg.clone(),
            differential,
            shift,
            classes: Vec::new(),
            even_class: Vec::new(),
            odd_class: BTreeMap::new(),
            window: *window,
        };
        let key = |deg: i32| match differential {
            Differential::QPlusDelta => deg.rem_euclid(2),
            _ => deg,
        };
        for j in 0..shift.max(0) as usize {
            split.even_class.push(split.classes.len());
            split.classes.push(HomologyClass {
                name: format!("[{}]", lg.name(lg_index(j, false))),
                degree: key(0),
                representative: Vector::basis(lg_index(j, false)),
            });
        }
        // L(x^k) = 0 only for the constant under Δ; otherwise the top term is nonzero.
        if differential == Differential::Delta {
            split.odd_class.insert(0, split.classes.len());
            split.classes.push(HomologyClass {
                name: "[eta]".into(),
                degree: key(-1),
                representative: Vector::basis(lg_index(0, true)),
            });
        }
        Ok(split)
    }

    /// `L(g)` as a polynomial.
    fn apply_l(&self, g: &Poly) -> Poly {
        let v = LandauGinzburgDbv::poly_vector(g, true);
        let img = match self.differential {
            Differential::Q => self.lg.q(&v),
            Differential::Delta => self.lg.delta(&v),
            Differential::QPlusDelta => self.lg.q(&v).add(&self.lg.delta(&v)),
        };
        LandauGinzburgDbv::vector_poly(&img, false)
    }

    fn decompose(&self, v: &Vector) -> Result<Split> {
        let mut f = LandauGinzburgDbv::vector_poly(v, false);
        let g = LandauGinzburgDbv::vector_poly(v, true);
        let mut out = Split::default();

        let mut pre = Poly::zero();
        while let Some(top) = f.degree() {
            let j = top as i32;
            if j < self.shift {
                break;
            }
            let k = (j - self.shift) as usize;
            let l = self.apply_l(&Poly::monomial(k, one()));
            let lead = l.coeff(top);
            if lead.is_zero() || l.degree() != Some(top) {
                return Err(Error::Precondition("unexpected leading term in the Jacobian reduction".into()));
            }
            let c = f.coeff(top) / lead;
            let step = Poly::monomial(k, c);
            f = f.sub(&self.apply_l(&step));
            pre = pre.add(&step);
        }
        let b_poly = self.apply_l(&pre);
        out.b = LandauGinzburgDbv::poly_vector(&b_poly, false);
        out.b_preimage = LandauGinzburgDbv::poly_vector(&pre, true);
        for (j, c) in f.coeffs().iter().enumerate() {
            if !c.is_zero() {
                out.h.add_term(self.even_class[j], c.clone());
            }
        }
        for (k, c) in g.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            match self.odd_class.get(&k) {
                Some(&cls) => out.h.add_term(cls, c.clone()),
                None => out.c.add_term(lg_index(k, true), c.clone()),
            }
        }
        Ok(out)
    }

    fn exact_basis(&self, key: i32) -> Vec<(Vector, Vector)> {
        if key != 0 {
            return Vec::new();
        }
        let top = self.window.x_degree as i32 - self.shift;
        (0..=top.max(-1))
            .filter_map(|k| {
                let k = k as usize;
                if self.odd_class.contains_key(&k) {
                    return None;
                }
                let g = Poly::monomial(k, one());
                Some((
                    LandauGinzburgDbv::poly_vector(&self.apply_l(&g), false),
                    LandauGinzburgDbv::poly_vector(&g, true),
                ))
            })
            .collect()
    }
}

/// `V = B ⊕ H_rep ⊕ C`, from exact elimination or from polynomial division.
#[derive(Clone, Debug)]
pub enum AdaptedDecomposition {
    Finite(FiniteSplit),
    Jacobian(JacobianSplit),
}

impl AdaptedDecomposition {
    pub fn new(alg: &DbvAlgebra, window: &Window, differential: Differential) -> Result<Self> {
        match alg {
            DbvAlgebra::Finite(_) => Ok(Self::Finite(FiniteSplit::new(
                alg,
                &alg.window_basis(window),
                differential,
            )?)),
            DbvAlgebra::LandauGinzburg(lg) => Ok(Self::Jacobian(JacobianSplit::new(lg, differential, window)?)),
        }
    }

    pub fn differential(&self) -> Differential {
        match self {
            Self::Finite(f) => f.differential,
            Self::Jacobian(j) => j.differential,
        }
    }

    pub fn classes(&self) -> &[HomologyClass] {
        match self {
            Self::Finite(f) => &f.classes,
            Self::Jacobian(j) => &j.classes,
        }
    }

    pub fn decompose(&self, v: &Vector) -> Result<Split> {
        match self {
            Self::Finite(f) => f.decompose(v),
            Self::Jacobian(j) => j.decompose(v),
        }
    }

    /// Pairs `(b, c)` with `b = D c` forming a basis of `B` in the block
    /// `key`; for polynomial carriers only the part inside the window.
    pub fn exact_basis(&self, key: i32) -> Vec<(Vector, Vector)> {
        match self {
            Self::Finite(f) => f
                .blocks
                .get(&key)
                .map(|b| b.b.iter().cloned().zip(b.b_preimage.iter().cloned()).collect())
                .unwrap_or_default(),
            Self::Jacobian(j) => j.exact_basis(key),
        }
    }

    /// Representatives of the classes in the block `key`.
    pub fn class_indices(&self, key: i32) -> Vec<usize> {
        self.classes()
            .iter()
            .enumerate()
            .filter(|(_, c)| c.degree == key)
            .map(|(i, _)| i)
            .collect()
    }

    /// `Σ h_k · representative_k`.
    pub fn h_vector(&self, h: &Vector) -> Vector {
        h.map_linear(|k| self.classes()[k].representative.clone())
    }

    /// Display of a class-coordinate vector, e.g. `2/1*[x] + 1/1*[1]`.
    pub fn display_class(&self, h: &Vector) -> String {
        h.display_with(|k| self.classes()[k].name.clone())
    }
}
