//! Canonical JSON form of a [`Series`]: a list of
//! `{monomial: {t, hbar, sign}, vector: {name: "num/den"}}` records in
//! monomial order. Variable indices are one-based on the wire.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::monomial::{Monomial, Variables};
use super::truncated::Series;
use super::vector::Vector;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialRecord {
    pub t: Vec<u16>,
    pub hbar: u32,
    pub sign: i8,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermRecord {
    pub monomial: MonomialRecord,
    pub vector: BTreeMap<String, String>,
}

pub fn to_records(s: &Series, name_of: impl Fn(usize) -> String) -> Vec<TermRecord> {
    s.terms()
        .map(|(m, v)| TermRecord {
            monomial: MonomialRecord {
                t: m.vars().iter().map(|i| i + 1).collect(),
                hbar: m.hbar_power(),
                sign: 1,
            },
            vector: v.to_named(&name_of),
        })
        .collect()
}

/// Rebuild a series; records may carry unsorted variable words and a sign,
/// both of which are normalized here.
pub fn from_records(
    records: &[TermRecord],
    vars: Variables,
    t_order: u32,
    hbar_order: u32,
    index_of: impl Fn(&str) -> Option<usize>,
) -> Result<Series> {
    let mut s = Series::zero(vars.clone(), t_order, hbar_order);
    for r in records {
        if r.monomial.sign != 1 && r.monomial.sign != -1 {
            return Err(Error::Parse(format!("monomial sign must be +1 or -1, got {}", r.monomial.sign)));
        }
        if r.monomial.t.contains(&0) {
            return Err(Error::Parse("variable indices are one-based".into()));
        }
        let word: Vec<u16> = r.monomial.t.iter().map(|i| i - 1).collect();
        let v = Vector::from_named(&r.vector, &index_of)?;
        if let Some((m, sign)) = Monomial::from_word(&word, r.monomial.hbar, &vars)? {
            let flip = sign.is_minus() != (r.monomial.sign == -1);
            let v = if flip { v.neg() } else { v };
            s.add_term(m, &v);
        }
    }
    Ok(s)
}
