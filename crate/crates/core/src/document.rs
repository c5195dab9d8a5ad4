//! JSON encoding of algebras. Rationals are strings (`"p/q"` or `"p"`), so
//! documents round-trip exactly.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{AlgebraError, ParseRationalError};
use crate::exactlin::{format_rational, parse_rational, Matrix, Rational};
use crate::homsuper::{BracketTensor, GradedSubspace, Parity, Superalgebra};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisEntry {
    pub name: String,
    pub parity: u8,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BracketEntry {
    pub left: usize,
    pub right: usize,
    /// `(target index, coefficient)` pairs.
    pub terms: Vec<(usize, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhiEntry {
    pub source: usize,
    pub target: usize,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraDocument {
    pub field: String,
    pub basis: Vec<BasisEntry>,
    #[serde(default)]
    pub bracket: Vec<BracketEntry>,
    #[serde(default)]
    pub phi: Vec<PhiEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub magsa: Option<Vec<usize>>,
    #[serde(default = "default_regular")]
    pub regular: bool,
}

fn default_regular() -> bool {
    true
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DocumentError {
    #[error("malformed document: {0}")]
    Json(String),
    #[error("unsupported field {0:?}; only \"Q\" is supported")]
    Field(String),
    #[error("basis entry {index} has parity {value}; expected 0 or 1")]
    Parity { index: usize, value: u8 },
    #[error("{what} index {index} out of range for dimension {dim}")]
    IndexOutOfRange { what: &'static str, index: usize, dim: usize },
    #[error("bracket entry ({left}, {right}) lists target {target} twice")]
    RepeatedTarget { left: usize, right: usize, target: usize },
    #[error("phi entry ({from}, {target}) listed twice")]
    RepeatedPhi { from: usize, target: usize },
    #[error(transparent)]
    Rational(#[from] ParseRationalError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// A parsed document: the algebra and, if given, its MAGSA.
#[derive(Clone, Debug)]
pub struct Loaded {
    pub algebra: Superalgebra,
    pub magsa: Option<GradedSubspace>,
}

impl AlgebraDocument {
    pub fn from_json(text: &str) -> Result<Self, DocumentError> {
        serde_json::from_str(text).map_err(|e| DocumentError::Json(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("documents always serialize");
        s.push('\n');
        s
    }

    /// Builds the algebra, completing unlisted mirror pairs by
    /// skew-supersymmetry and rejecting conflicting entries.
    pub fn build(&self) -> Result<Loaded, DocumentError> {
        if self.field != "Q" {
            return Err(DocumentError::Field(self.field.clone()));
        }
        let n = self.basis.len();
        let in_range = |what, index| {
            if index < n {
                Ok(index)
            } else {
                Err(DocumentError::IndexOutOfRange { what, index, dim: n })
            }
        };
        let mut parities = Vec::with_capacity(n);
        for (index, b) in self.basis.iter().enumerate() {
            parities.push(Parity::from_bit(b.parity).ok_or(DocumentError::Parity { index, value: b.parity })?);
        }
        let mut products: BTreeMap<(usize, usize), BTreeMap<usize, Rational>> = BTreeMap::new();
        for e in &self.bracket {
            let (i, j) = (in_range("bracket", e.left)?, in_range("bracket", e.right)?);
            let mut row = BTreeMap::new();
            for (k, c) in &e.terms {
                let k = in_range("bracket target", *k)?;
                let c = parse_rational(c)?;
                if row.insert(k, c).is_some() {
                    return Err(DocumentError::RepeatedTarget { left: i, right: j, target: k });
                }
            }
            row.retain(|_, c: &mut Rational| !c.is_zero());
            match products.get(&(i, j)) {
                Some(existing) if *existing != row => {
                    return Err(AlgebraError::Consistency { left: i.min(j), right: i.max(j) }.into());
                }
                Some(_) => {}
                None => {
                    products.insert((i, j), row);
                }
            }
        }
        let mut tensor = BracketTensor::new(n);
        for ((i, j), row) in products {
            for (k, c) in row {
                tensor.set(i, j, k, c)?;
            }
        }
        tensor.complete_skew(&parities)?;
        let mut twist = Matrix::zeros(n, n);
        let mut seen = BTreeMap::new();
        for e in &self.phi {
            let (s, t) = (in_range("phi", e.source)?, in_range("phi", e.target)?);
            if seen.insert((s, t), ()).is_some() {
                return Err(DocumentError::RepeatedPhi { from: s, target: t });
            }
            twist[(t, s)] = parse_rational(&e.value)?;
        }
        let names = self.basis.iter().map(|b| b.name.clone()).collect();
        let algebra = Superalgebra::new(names, parities, tensor, twist, self.regular)?;
        let magsa = match &self.magsa {
            Some(indices) => {
                for &i in indices {
                    in_range("magsa", i)?;
                }
                Some(GradedSubspace::coordinate(&algebra, indices))
            }
            None => None,
        };
        Ok(Loaded { algebra, magsa })
    }

    /// Encodes an algebra; each bracket pair is written once with `left ≤ right`.
    pub fn from_algebra(alg: &Superalgebra, magsa: Option<&GradedSubspace>) -> Self {
        let n = alg.dim();
        let basis = (0..n).map(|i| BasisEntry { name: alg.name(i).to_string(), parity: alg.parity(i).bit() }).collect();
        let bracket = alg
            .bracket_tensor()
            .pairs()
            .filter(|((i, j), _)| i <= j)
            .map(|((left, right), row)| BracketEntry {
                left,
                right,
                terms: row.iter().map(|(&k, c)| (k, format_rational(c))).collect(),
            })
            .collect();
        let twist = alg.twist();
        let mut phi = Vec::new();
        for source in 0..n {
            for target in 0..n {
                let c = &twist[(target, source)];
                if !c.is_zero() {
                    phi.push(PhiEntry { source, target, value: format_rational(c) });
                }
            }
        }
        AlgebraDocument {
            field: "Q".into(),
            basis,
            bracket,
            phi,
            magsa: magsa.and_then(|h| coordinate_indices(alg, h)),
            regular: alg.is_regular(),
        }
    }
}

/// The basis indices spanning `h`, when `h` is a coordinate subspace.
pub fn coordinate_indices(alg: &Superalgebra, h: &GradedSubspace) -> Option<Vec<usize>> {
    let mut idx: Vec<usize> = h.total().pivots().to_vec();
    idx.sort_unstable();
    (GradedSubspace::coordinate(alg, &idx) == *h).then_some(idx)
}

pub fn parse_document(text: &str) -> Result<Loaded, DocumentError> {
    AlgebraDocument::from_json(text)?.build()
}
