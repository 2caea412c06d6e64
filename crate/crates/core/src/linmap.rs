//! Linear maps from a coalgebra into a bialgebra, and their convolution
//! algebra.

use std::collections::BTreeMap;

use crate::basis::BasisKey;
use crate::element::Element;
use crate::error::{AlgebraError, Result};
use crate::handle::{BialgebraHandle, CoalgebraHandle};
use crate::scalar::Scalar;

/// A linear map `C → A` materialized as a table on the basis keys of `C`
/// up to `bound` (for finite-type sources the table covers the whole
/// basis and `bound` is informational).
#[derive(Clone)]
pub struct LinMap {
    pub source: CoalgebraHandle,
    pub target: BialgebraHandle,
    pub bound: u32,
    table: BTreeMap<BasisKey, Element>,
}

impl std::fmt::Debug for LinMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("LinMap")
            .field("source", &self.source.name())
            .field("target", &self.target.name())
            .field("bound", &self.bound)
            .field("keys", &self.table.len())
            .finish()
    }
}

impl LinMap {
    pub fn from_table(
        source: CoalgebraHandle,
        target: BialgebraHandle,
        bound: u32,
        table: BTreeMap<BasisKey, Element>,
    ) -> Self {
        LinMap {
            source,
            target,
            bound,
            table,
        }
    }

    /// Materializes `f` on every source key up to `bound`.
    pub fn from_fn(
        source: CoalgebraHandle,
        target: BialgebraHandle,
        bound: u32,
        mut f: impl FnMut(&BasisKey) -> Result<Element>,
    ) -> Result<Self> {
        let mut table = BTreeMap::new();
        for k in source.keys_to_degree(bound) {
            let v = f(&k)?;
            table.insert(k, v);
        }
        Ok(LinMap {
            source,
            target,
            bound,
            table,
        })
    }

    /// The identity of a bialgebra, viewed on its underlying coalgebra.
    pub fn identity(h: &BialgebraHandle, bound: u32) -> Self {
        Self::from_fn(h.as_coalgebra(), h.clone(), bound, |k| {
            Ok(Element::single(k.clone()))
        })
        .expect("identity table")
    }

    /// The convolution unit `k ↦ ε_C(k)·1_A`.
    pub fn convolution_unit(source: CoalgebraHandle, target: &BialgebraHandle, bound: u32) -> Self {
        let src = source.clone();
        Self::from_fn(source, target.clone(), bound, |k| {
            Ok(target.scaled_unit(&src.counit(k)))
        })
        .expect("unit table")
    }

    pub fn keys(&self) -> impl Iterator<Item = &BasisKey> {
        self.table.keys()
    }

    pub fn table(&self) -> &BTreeMap<BasisKey, Element> {
        &self.table
    }

    /// Value on one basis key; errors outside the materialized table.
    pub fn apply_key(&self, key: &BasisKey) -> Result<&Element> {
        self.table.get(key).ok_or_else(|| AlgebraError::UnknownKey {
            key: crate::text::render_key(key),
            context: format!(
                "table of a map out of {} (bound {})",
                self.source.name(),
                self.bound
            ),
        })
    }

    pub fn apply(&self, x: &Element) -> Result<Element> {
        x.try_map_basis(|k| self.apply_key(k).cloned())
    }

    /// Composition `outer ∘ inner`; the inner target must match the outer
    /// source by name (as a coalgebra).
    pub fn compose(outer: &LinMap, inner: &LinMap) -> Result<LinMap> {
        let inner_target = inner.target.as_coalgebra();
        if inner_target.name() != outer.source.name() {
            return Err(AlgebraError::HandleMismatch(format!(
                "cannot compose: inner lands in {}, outer starts at {}",
                inner_target.name(),
                outer.source.name()
            )));
        }
        let mut table = BTreeMap::new();
        for (k, v) in &inner.table {
            table.insert(k.clone(), outer.apply(v)?);
        }
        Ok(LinMap {
            source: inner.source.clone(),
            target: outer.target.clone(),
            bound: inner.bound,
            table,
        })
    }

    /// Pointwise sum with a scalar factor on `other`.
    pub fn add_scaled(&mut self, other: &LinMap, factor: &Scalar) {
        for (k, v) in &other.table {
            self.table
                .entry(k.clone())
                .or_insert_with(Element::zero)
                .add_scaled(v, factor);
        }
    }

    /// Tables agree on every key (keys present in only one side must map
    /// to zero there).
    pub fn equal_to(&self, other: &LinMap) -> bool {
        let keys: std::collections::BTreeSet<&BasisKey> =
            self.table.keys().chain(other.table.keys()).collect();
        keys.into_iter().all(|k| {
            self.table.get(k).cloned().unwrap_or_default()
                == other.table.get(k).cloned().unwrap_or_default()
        })
    }
}

/// Convolution `(f ∗ g)(c) = Σ f(c₁)·g(c₂)` of two maps with the same
/// source and target.
pub fn convolution(f: &LinMap, g: &LinMap) -> Result<LinMap> {
    if f.source.name() != g.source.name() || f.target.name() != g.target.name() {
        return Err(AlgebraError::HandleMismatch(
            "convolution needs matching sources and targets".into(),
        ));
    }
    let bound = f.bound.min(g.bound);
    let mut table = BTreeMap::new();
    for k in f.source.keys_to_degree(bound) {
        let mut acc = Element::zero();
        for (t, c) in f.source.coproduct(&k).iter() {
            let (a, b) = t.as_tensor()?;
            let fa = f.apply_key(a)?;
            if fa.is_zero() {
                continue;
            }
            let gb = g.apply_key(b)?;
            if gb.is_zero() {
                continue;
            }
            let prod = f.target.product_elements(fa, gb)?;
            acc.add_scaled(&prod, c);
        }
        table.insert(k, acc);
    }
    Ok(LinMap {
        source: f.source.clone(),
        target: f.target.clone(),
        bound,
        table,
    })
}

/// The `n`-th convolution power of the identity of `h`.
///
/// `n = 0` gives the convolution unit; negative powers convolve the
/// antipode and error when no antipode is available.
pub fn convolution_power(h: &BialgebraHandle, n: i64, bound: u32) -> Result<LinMap> {
    let source = h.as_coalgebra();
    if n == 0 {
        return Ok(LinMap::convolution_unit(source, h, bound));
    }
    let base = if n > 0 {
        LinMap::identity(h, bound)
    } else {
        crate::antipode::antipode_oracle(h, bound)?
    };
    let mut acc = base.clone();
    for _ in 1..n.abs() {
        acc = convolution(&acc, &base)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::{build_monoid_dual, build_sym, MonoidTable};
    use crate::text::{parse_element, parse_key};

    #[test]
    fn convolution_unit_absorbs_under_convolution() {
        let h = build_sym();
        let id = LinMap::identity(&h, 3);
        let e = LinMap::convolution_unit(h.as_coalgebra(), &h, 3);
        let left = convolution(&e, &id).unwrap();
        let right = convolution(&id, &e).unwrap();
        assert!(left.equal_to(&id));
        assert!(right.equal_to(&id));
    }

    #[test]
    fn convolution_square_of_identity_on_power_sums() {
        let h = build_sym();
        let id = LinMap::identity(&h, 2);
        let sq = convolution(&id, &id).unwrap();
        // (id∗id)(p1) = 2 p1; (id∗id)(p[1,1]) = p[1,1]+2p1²+p[1,1] = 2p[1,1]+2p[1,1] … exact:
        assert_eq!(
            sq.apply_key(&parse_key("p1").unwrap()).unwrap(),
            &parse_element("2*p1").unwrap()
        );
        assert_eq!(
            sq.apply_key(&parse_key("p[1,1]").unwrap()).unwrap(),
            &parse_element("4*p[1,1]").unwrap()
        );
    }

    #[test]
    fn identity_powers_stabilize_on_the_monoid_dual() {
        // On this dual, id∗id = id.
        let t = MonoidTable::right_zero_adjoined();
        let d = build_monoid_dual("monoid-dual", &t);
        let id = LinMap::identity(&d, 0);
        for n in 1..=4 {
            let p = convolution_power(&d, n, 0).unwrap();
            assert!(p.equal_to(&id), "power {n}");
        }
    }
}
