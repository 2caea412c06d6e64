//! Formal linear combinations of basis keys.

use std::collections::BTreeMap;

use crate::basis::BasisKey;
use crate::error::Result;
use crate::scalar::Scalar;

/// An element of a free module: a finite formal sum of basis keys with
/// nonzero rational coefficients, stored in canonical key order.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Element {
    terms: BTreeMap<BasisKey, Scalar>,
}

impl Element {
    pub fn zero() -> Self {
        Element {
            terms: BTreeMap::new(),
        }
    }

    /// The basis vector `key` with coefficient 1.
    pub fn single(key: BasisKey) -> Self {
        Element {
            terms: BTreeMap::from([(key, Scalar::one())]),
        }
    }

    /// The basis vector `key` scaled by `coeff`.
    pub fn term(key: BasisKey, coeff: Scalar) -> Self {
        let mut e = Element::zero();
        e.add_term(key, coeff);
        e
    }

    /// Sums an iterator of terms, merging duplicates and dropping zeros.
    pub fn from_terms(terms: impl IntoIterator<Item = (BasisKey, Scalar)>) -> Self {
        let mut e = Element::zero();
        for (k, c) in terms {
            e.add_term(k, c);
        }
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Coefficient of `key` (zero if absent).
    pub fn coeff(&self, key: &BasisKey) -> Scalar {
        self.terms.get(key).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&BasisKey, &Scalar)> {
        self.terms.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &BasisKey> {
        self.terms.keys()
    }

    /// Adds `coeff * key` in place, removing the term if it cancels.
    pub fn add_term(&mut self, key: BasisKey, coeff: Scalar) {
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(key) {
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += &coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_assign(&mut self, other: &Element) {
        for (k, c) in &other.terms {
            self.add_term(k.clone(), c.clone());
        }
    }

    pub fn add_scaled(&mut self, other: &Element, factor: &Scalar) {
        if factor.is_zero() {
            return;
        }
        for (k, c) in &other.terms {
            self.add_term(k.clone(), c * factor);
        }
    }

    pub fn add(&self, other: &Element) -> Element {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn sub(&self, other: &Element) -> Element {
        let mut out = self.clone();
        out.add_scaled(other, &-&Scalar::one());
        out
    }

    pub fn neg(&self) -> Element {
        self.scale(&-&Scalar::one())
    }

    pub fn scale(&self, factor: &Scalar) -> Element {
        if factor.is_zero() {
            return Element::zero();
        }
        Element {
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.clone(), c * factor))
                .collect(),
        }
    }

    /// `Σ cᵢ·xᵢ` over the given coefficient/element pairs.
    pub fn linear_combine(parts: &[(Scalar, Element)]) -> Element {
        let mut out = Element::zero();
        for (c, x) in parts {
            out.add_scaled(x, c);
        }
        out
    }

    /// Tensor product: pairs every key of `self` with every key of `other`.
    pub fn tensor(&self, other: &Element) -> Element {
        let mut out = Element::zero();
        for (k1, c1) in &self.terms {
            for (k2, c2) in &other.terms {
                out.add_term(BasisKey::tensor(k1.clone(), k2.clone()), c1 * c2);
            }
        }
        out
    }

    /// Linear extension of a map defined on basis keys.
    pub fn map_basis(&self, mut f: impl FnMut(&BasisKey) -> Element) -> Element {
        let mut out = Element::zero();
        for (k, c) in &self.terms {
            out.add_scaled(&f(k), c);
        }
        out
    }

    /// Fallible linear extension of a map defined on basis keys.
    pub fn try_map_basis(
        &self,
        mut f: impl FnMut(&BasisKey) -> Result<Element>,
    ) -> Result<Element> {
        let mut out = Element::zero();
        for (k, c) in &self.terms {
            out.add_scaled(&f(k)?, c);
        }
        Ok(out)
    }

    /// Swaps the two slots of every top-level tensor key.
    pub fn swap_tensor_slots(&self) -> Result<Element> {
        self.try_map_basis(|k| {
            let (a, b) = k.as_tensor()?;
            Ok(Element::single(BasisKey::tensor(b.clone(), a.clone())))
        })
    }

    /// Rewrites left-nested tensor triples `t(t(a,b),c)` as the canonical
    /// right-nested form `t(a,t(b,c))`, leaving other keys unchanged.
    pub fn rebracket_right(&self) -> Element {
        self.map_basis(|k| {
            if let BasisKey::Tensor(ab, c) = k {
                if let BasisKey::Tensor(a, b) = ab.as_ref() {
                    return Element::single(BasisKey::tensor(
                        a.as_ref().clone(),
                        BasisKey::tensor(b.as_ref().clone(), c.as_ref().clone()),
                    ));
                }
            }
            Element::single(k.clone())
        })
    }

    /// Coordinate vector with respect to an indexed basis.  Errors on a key
    /// outside the index.
    pub fn coords(&self, index: &BTreeMap<BasisKey, usize>, dim: usize) -> Result<Vec<Scalar>> {
        let mut v = vec![Scalar::zero(); dim];
        for (k, c) in &self.terms {
            let i = index.get(k).ok_or_else(|| crate::error::AlgebraError::UnknownKey {
                key: crate::text::render_key(k),
                context: "coordinate index".into(),
            })?;
            v[*i] = c.clone();
        }
        Ok(v)
    }
}

impl std::fmt::Display for Element {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&crate::text::render_element(self))
    }
}

/// Builds the canonical `key -> position` index for a basis listing.
pub fn basis_index(keys: &[BasisKey]) -> BTreeMap<BasisKey, usize> {
    keys.iter()
        .enumerate()
        .map(|(i, k)| (k.clone(), i))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::CompositionLetter;

    fn p(parts: &[u32]) -> BasisKey {
        BasisKey::partition(parts.to_vec()).unwrap()
    }

    #[test]
    fn terms_cancel_exactly() {
        let mut e = Element::single(p(&[2]));
        e.add_term(p(&[2]), Scalar::from_int(-1));
        assert!(e.is_zero());
        let a = Element::term(p(&[1]), Scalar::new(1, 2));
        let b = Element::term(p(&[1]), Scalar::new(1, 2));
        assert_eq!(a.add(&b), Element::single(p(&[1])));
    }

    #[test]
    fn tensor_distributes_over_sums() {
        let x = Element::single(p(&[1])).add(&Element::single(p(&[2])));
        let y = Element::single(p(&[3]));
        let t = x.tensor(&y);
        assert_eq!(t.num_terms(), 2);
        assert_eq!(
            t.coeff(&BasisKey::tensor(p(&[1]), p(&[3]))),
            Scalar::one()
        );
    }

    #[test]
    fn map_basis_is_linear() {
        let x = Element::from_terms([
            (p(&[1]), Scalar::from_int(2)),
            (p(&[2]), Scalar::from_int(-3)),
        ]);
        let doubled = x.map_basis(|k| Element::term(k.clone(), Scalar::from_int(2)));
        assert_eq!(doubled, x.scale(&Scalar::from_int(2)));
    }

    #[test]
    fn rebracketing_matches_flattened_spine() {
        let t_left = BasisKey::tensor(BasisKey::tensor(p(&[1]), p(&[2])), p(&[3]));
        let e = Element::single(t_left).rebracket_right();
        let expected = BasisKey::tensor(p(&[1]), BasisKey::tensor(p(&[2]), p(&[3])));
        assert_eq!(e, Element::single(expected));
    }

    #[test]
    fn coords_error_names_the_stray_key() {
        let keys = vec![p(&[1])];
        let idx = basis_index(&keys);
        let h = BasisKey::composition(CompositionLetter::H, vec![1]).unwrap();
        let err = Element::single(h).coords(&idx, 1).unwrap_err();
        assert!(err.to_string().contains("H1"));
    }
}
