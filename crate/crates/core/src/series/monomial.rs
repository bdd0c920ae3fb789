//! Graded deformation coordinates `t^i` and normalized monomials `t^I ħ^p`.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The degrees of the coordinates `t^1 … t^m` (stored zero-based).
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Variables(Arc<[i32]>);

impl Variables {
    pub fn new(degrees: Vec<i32>) -> Self {
        Self(degrees.into())
    }

    pub fn none() -> Self {
        Self::new(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self, i: u16) -> i32 {
        self.0[i as usize]
    }

    pub fn is_odd(&self, i: u16) -> bool {
        self.0[i as usize].rem_euclid(2) == 1
    }

    pub fn degrees(&self) -> &[i32] {
        &self.0
    }
}

/// Sign of a normalization step.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn from_odd(odd: bool) -> Self {
        if odd {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    pub fn is_minus(self) -> bool {
        self == Sign::Minus
    }

    pub fn times(self, other: Sign) -> Sign {
        Sign::from_odd(self.is_minus() != other.is_minus())
    }

    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

/// A canonical monomial: variable indices sorted ascending (odd ones at most
/// once) and a power of ħ. Its normalization sign is returned separately by the
/// constructors, so two equal products always share one key.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    vars: Vec<u16>,
    hbar: u32,
}

impl Monomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn hbar(p: u32) -> Self {
        Self {
            vars: Vec::new(),
            hbar: p,
        }
    }

    pub fn var(i: u16) -> Self {
        Self {
            vars: vec![i],
            hbar: 0,
        }
    }

    /// Normalize an arbitrary word in the variables. Returns `None` if an odd
    /// variable repeats (the monomial vanishes).
    pub fn from_word(word: &[u16], hbar: u32, vars: &Variables) -> Result<Option<(Monomial, Sign)>> {
        if let Some(&bad) = word.iter().find(|&&i| i as usize >= vars.len()) {
            return Err(Error::BasisMismatch(format!(
                "variable index {} out of range (have {})",
                bad as usize + 1,
                vars.len()
            )));
        }
        let mut out = Monomial::hbar(hbar);
        let mut sign = Sign::Plus;
        for &i in word {
            match out.mul(&Monomial::var(i), vars) {
                None => return Ok(None),
                Some((m, s)) => {
                    out = m;
                    sign = sign.times(s);
                }
            }
        }
        Ok(Some((out, sign)))
    }

    pub fn vars(&self) -> &[u16] {
        &self.vars
    }

    pub fn hbar_power(&self) -> u32 {
        self.hbar
    }

    /// Number of `t` factors.
    pub fn t_order(&self) -> u32 {
        self.vars.len() as u32
    }

    pub fn degree(&self, vars: &Variables, hbar_degree: i32) -> i32 {
        self.vars.iter().map(|&i| vars.degree(i)).sum::<i32>() + hbar_degree * self.hbar as i32
    }

    /// Parity of the monomial; ħ is always even.
    pub fn is_odd(&self, vars: &Variables) -> bool {
        self.vars.iter().filter(|&&i| vars.is_odd(i)).count() % 2 == 1
    }

    pub fn with_hbar(&self, hbar: u32) -> Monomial {
        Monomial {
            vars: self.vars.clone(),
            hbar,
        }
    }

    pub fn without_hbar(&self) -> Monomial {
        self.with_hbar(0)
    }

    /// Graded-commutative product. The sign is the Koszul sign of the merge
    /// permutation; `None` when an odd variable would repeat.
    pub fn mul(&self, other: &Monomial, vars: &Variables) -> Option<(Monomial, Sign)> {
        let (a, b) = (&self.vars, &other.vars);
        let mut merged = Vec::with_capacity(a.len() + b.len());
        let mut odd_left_remaining = a.iter().filter(|&&i| vars.is_odd(i)).count();
        let mut flips = 0usize;
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            let take_b = j < b.len() && (i == a.len() || b[j] < a[i]);
            if take_b {
                let x = b[j];
                if vars.is_odd(x) {
                    if i < a.len() && a[i] == x {
                        return None;
                    }
                    flips += odd_left_remaining;
                }
                merged.push(x);
                j += 1;
            } else {
                let x = a[i];
                if vars.is_odd(x) {
                    if j < b.len() && b[j] == x {
                        return None;
                    }
                    odd_left_remaining -= 1;
                }
                merged.push(x);
                i += 1;
            }
        }
        Some((
            Monomial {
                vars: merged,
                hbar: self.hbar + other.hbar,
            },
            Sign::from_odd(flips % 2 == 1),
        ))
    }
}
