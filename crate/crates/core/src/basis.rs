//! Basis keys for free modules over combinatorial index sets.
//!
//! Every module in the library is free over an explicit countable basis; a
//! [`BasisKey`] names one basis vector.  The derived ordering (variant tag
//! first, then lexicographic content) is the canonical order used for
//! iteration, matrix indexing and rendering everywhere, so results are
//! reproducible across runs.

use crate::error::{AlgebraError, Result};

/// Rendering letter for composition-indexed bases.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CompositionLetter {
    H,
    M,
}

/// Rendering letter for power-of-a-generator bases.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PowerLetter {
    X,
    Z,
}

/// A canonical name for one basis vector.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BasisKey {
    /// Weakly decreasing positive parts; empty for the unit.
    Partition(Vec<u32>),
    /// Positive parts in significant order, rendered with the given letter.
    Composition(CompositionLetter, Vec<u32>),
    /// Strictly increasing positive entries.
    FinSet(Vec<u32>),
    /// Word whose letters are nonempty strictly increasing sets.
    SetWord(Vec<Vec<u32>>),
    /// Integer power of the distinguished generator.
    IntPower(PowerLetter, i64),
    /// Element of a finite monoid, by symbol.
    MonoidElem(String),
    /// Matrix-cell index pair, 1-based.
    MatrixCell(u32, u32),
    /// Named point.
    Point(String),
    /// Ordered tensor pair; longer tensors nest to the right.
    Tensor(Box<BasisKey>, Box<BasisKey>),
    /// Side tag in a direct sum: 0 for the left summand, 1 for the right.
    Summand(u8, Box<BasisKey>),
    /// Index into the stored basis of a quotient.
    Class(usize),
}

impl BasisKey {
    /// Validated partition key: parts weakly decreasing and positive.
    pub fn partition(parts: Vec<u32>) -> Result<BasisKey> {
        if parts.windows(2).any(|w| w[0] < w[1]) || parts.iter().any(|&p| p == 0) {
            return Err(AlgebraError::InvalidKey {
                key: format!("{parts:?}"),
                detail: "partition parts must be positive and weakly decreasing".into(),
            });
        }
        Ok(BasisKey::Partition(parts))
    }

    /// Validated composition key: parts positive.
    pub fn composition(letter: CompositionLetter, parts: Vec<u32>) -> Result<BasisKey> {
        if parts.iter().any(|&p| p == 0) {
            return Err(AlgebraError::InvalidKey {
                key: format!("{parts:?}"),
                detail: "composition parts must be positive".into(),
            });
        }
        Ok(BasisKey::Composition(letter, parts))
    }

    /// Validated finite-set key: entries strictly increasing and positive.
    pub fn finset(elems: Vec<u32>) -> Result<BasisKey> {
        if elems.windows(2).any(|w| w[0] >= w[1]) || elems.iter().any(|&e| e == 0) {
            return Err(AlgebraError::InvalidKey {
                key: format!("{elems:?}"),
                detail: "set entries must be positive and strictly increasing".into(),
            });
        }
        Ok(BasisKey::FinSet(elems))
    }

    /// Validated set-word key: every block nonempty, strictly increasing.
    pub fn set_word(blocks: Vec<Vec<u32>>) -> Result<BasisKey> {
        for b in &blocks {
            if b.is_empty() {
                return Err(AlgebraError::InvalidKey {
                    key: format!("{blocks:?}"),
                    detail: "set-word blocks must be nonempty".into(),
                });
            }
            if b.windows(2).any(|w| w[0] >= w[1]) || b.iter().any(|&e| e == 0) {
                return Err(AlgebraError::InvalidKey {
                    key: format!("{blocks:?}"),
                    detail: "block entries must be positive and strictly increasing".into(),
                });
            }
        }
        Ok(BasisKey::SetWord(blocks))
    }

    pub fn tensor(left: BasisKey, right: BasisKey) -> BasisKey {
        BasisKey::Tensor(Box::new(left), Box::new(right))
    }

    pub fn point(name: impl Into<String>) -> BasisKey {
        BasisKey::Point(name.into())
    }

    pub fn monoid_elem(symbol: impl Into<String>) -> BasisKey {
        BasisKey::MonoidElem(symbol.into())
    }

    /// Splits a top-level tensor key into its two slots.
    pub fn as_tensor(&self) -> Result<(&BasisKey, &BasisKey)> {
        match self {
            BasisKey::Tensor(a, b) => Ok((a, b)),
            other => Err(AlgebraError::InvalidKey {
                key: crate::text::render_key(other),
                detail: "expected a tensor key".into(),
            }),
        }
    }

    /// Flattens the right-nested tensor spine: `t(a, t(b, c))` yields
    /// `[a, b, c]`; a non-tensor key yields itself.
    pub fn flatten_tensor(&self) -> Vec<&BasisKey> {
        let mut out = Vec::new();
        let mut cur = self;
        while let BasisKey::Tensor(a, b) = cur {
            out.push(a.as_ref());
            cur = b.as_ref();
        }
        out.push(cur);
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation_rejects_malformed_keys() {
        assert!(BasisKey::partition(vec![2, 1]).is_ok());
        assert!(BasisKey::partition(vec![1, 2]).is_err());
        assert!(BasisKey::partition(vec![0]).is_err());
        assert!(BasisKey::finset(vec![1, 3]).is_ok());
        assert!(BasisKey::finset(vec![3, 1]).is_err());
        assert!(BasisKey::finset(vec![1, 1]).is_err());
        assert!(BasisKey::set_word(vec![vec![1, 2], vec![3]]).is_ok());
        assert!(BasisKey::set_word(vec![vec![]]).is_err());
        assert!(BasisKey::composition(CompositionLetter::H, vec![2, 0]).is_err());
    }

    #[test]
    fn ordering_is_variant_then_lexicographic() {
        let p1 = BasisKey::partition(vec![1]).unwrap();
        let p2 = BasisKey::partition(vec![2]).unwrap();
        let h = BasisKey::composition(CompositionLetter::H, vec![1]).unwrap();
        assert!(p1 < p2);
        assert!(p2 < h); // partitions sort before compositions
        let shorter = BasisKey::partition(vec![2]).unwrap();
        let longer = BasisKey::partition(vec![2, 1]).unwrap();
        assert!(shorter < longer);
    }

    #[test]
    fn tensor_flattening_follows_the_right_spine() {
        let a = BasisKey::point("a");
        let b = BasisKey::point("b");
        let c = BasisKey::point("c");
        let t = BasisKey::tensor(a.clone(), BasisKey::tensor(b.clone(), c.clone()));
        let flat = t.flatten_tensor();
        assert_eq!(flat, vec![&a, &b, &c]);
        assert_eq!(a.flatten_tensor(), vec![&a]);
    }
}
