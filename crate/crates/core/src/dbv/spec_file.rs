//! JSON description of an algebra.
//!
//! ```json
//! {"kind": "finite",
//!  "basis": [{"name": "1", "degree": 0}, {"name": "a", "degree": 0}],
//!  "unit": "1",
//!  "product": [["a", "a", {}]],
//!  "Q": [],
//!  "Delta": [["a", {"b": "1/1"}]]}
//! {"kind": "landau-ginzburg", "potential": {"3": "1/1"}}
//! ```
//!
//! Omitted entries are zero, except that products with the unit default to
//! the identity and a product given for `(a, b)` only also fixes `(b, a)` by
//! graded commutativity.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::series::scalar::{format_scalar, parse_scalar};
use crate::series::{BasisElement, GradedBasis, Vector};

use super::poly::Poly;
use super::{Dbv, DbvAlgebra, FiniteDimDbv, LandauGinzburgDbv};

type Named = BTreeMap<String, String>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum AlgebraSpec {
    #[serde(rename = "finite")]
    Finite {
        basis: Vec<BasisElement>,
        unit: String,
        #[serde(default)]
        product: Vec<(String, String, Named)>,
        #[serde(rename = "Q", default)]
        q: Vec<(String, Named)>,
        #[serde(rename = "Delta", default)]
        delta: Vec<(String, Named)>,
    },
    #[serde(rename = "landau-ginzburg")]
    LandauGinzburg { potential: Named },
}

impl AlgebraSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("algebra spec serializes")
    }

    pub fn build(&self) -> Result<DbvAlgebra> {
        match self {
            AlgebraSpec::LandauGinzburg { potential } => {
                let mut coeffs = Vec::new();
                for (exp, c) in potential {
                    let k: usize = exp
                        .parse()
                        .map_err(|_| Error::Spec(format!("potential exponent {exp:?} is not a natural number")))?;
                    if coeffs.len() <= k {
                        coeffs.resize(k + 1, crate::series::scalar::zero());
                    }
                    coeffs[k] += parse_scalar(c)?;
                }
                Ok(DbvAlgebra::LandauGinzburg(LandauGinzburgDbv::new(Poly::new(coeffs))?))
            }
            AlgebraSpec::Finite {
                basis,
                unit,
                product,
                q,
                delta,
            } => {
                if basis.is_empty() {
                    return Err(Error::Spec("empty basis: there is no unit".into()));
                }
                let basis = GradedBasis::new(basis.clone(), unit)?;
                let lookup = |name: &str| {
                    basis
                        .index_of(name)
                        .ok_or_else(|| Error::Spec(format!("unknown basis element {name:?}")))
                };
                let vec_of = |named: &Named| Vector::from_named(named, |n| basis.index_of(n));
                let mut alg = FiniteDimDbv::new(basis.clone());
                let mut given = BTreeSet::new();
                for (a, b, _) in product {
                    if !given.insert((lookup(a)?, lookup(b)?)) {
                        return Err(Error::Spec(format!("product ({a}, {b}) given twice")));
                    }
                }
                for (a, b, v) in product {
                    let (i, j) = (lookup(a)?, lookup(b)?);
                    let v = vec_of(v)?;
                    if given.contains(&(j, i)) {
                        alg.set_product(i, j, v);
                    } else {
                        alg.set_product_symmetric(i, j, v);
                    }
                }
                for (a, v) in q {
                    alg.set_q(lookup(a)?, vec_of(v)?);
                }
                for (a, v) in delta {
                    alg.set_delta(lookup(a)?, vec_of(v)?);
                }
                Ok(DbvAlgebra::Finite(alg))
            }
        }
    }

    /// The canonical description of an algebra: every nonzero structure
    /// constant listed explicitly, in basis order.
    pub fn from_algebra(alg: &DbvAlgebra) -> Self {
        match alg {
            DbvAlgebra::LandauGinzburg(lg) => AlgebraSpec::LandauGinzburg {
                potential: lg
                    .potential()
                    .coeffs()
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !num_traits::Zero::is_zero(*c))
                    .map(|(k, c)| (k.to_string(), format_scalar(c)))
                    .collect(),
            },
            DbvAlgebra::Finite(f) => {
                let n = f.dim();
                let named = |v: &Vector| v.to_named(|i| f.name(i));
                let mut product = Vec::new();
                for i in 0..n {
                    for j in 0..n {
                        let p = f.product_entry(i, j);
                        if !p.is_zero() {
                            product.push((f.name(i), f.name(j), named(p)));
                        }
                    }
                }
                let maps = |get: &dyn Fn(usize) -> Vector| {
                    (0..n)
                        .filter(|&i| !get(i).is_zero())
                        .map(|i| (f.name(i), named(&get(i))))
                        .collect()
                };
                AlgebraSpec::Finite {
                    basis: f.basis().elements().to_vec(),
                    unit: f.name(f.unit()),
                    product,
                    q: maps(&|i| f.q_basis(i)),
                    delta: maps(&|i| f.delta_basis(i)),
                }
            }
        }
    }
}

/// SHA-256 of the canonical description, hex encoded.
pub fn algebra_hash(alg: &DbvAlgebra) -> String {
    let digest = Sha256::digest(AlgebraSpec::from_algebra(alg).to_json().as_bytes());
    digest.iter().map(|b| format!("{b:02x}")).collect()
}
