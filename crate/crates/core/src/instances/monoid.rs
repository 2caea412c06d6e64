//! Finite monoids, their bialgebras, group algebras, and duals.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::basis::BasisKey;
use crate::element::Element;
use crate::error::{AlgebraError, Result};
use crate::handle::{BialgebraHandle, CoalgebraHandle, GradedBasis, StructureFlags};
use crate::scalar::Scalar;

/// A finite monoid given by its full multiplication table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonoidTable {
    elements: Vec<String>,
    identity: usize,
    /// `table[i][j]` is the index of `elements[i] * elements[j]`.
    table: Vec<Vec<usize>>,
}

/// JSON shape: element list, identity symbol, and a nested product map
/// `{left: {right: product}}`.
#[derive(Serialize, Deserialize)]
struct MonoidTableJson {
    elements: Vec<String>,
    identity: String,
    table: BTreeMap<String, BTreeMap<String, String>>,
}

impl MonoidTable {
    /// Builds and validates a table from symbols and a product function on
    /// symbol indices.
    pub fn new(
        elements: Vec<String>,
        identity: &str,
        product: impl Fn(usize, usize) -> usize,
    ) -> Result<Self> {
        let n = elements.len();
        let table: Vec<Vec<usize>> = (0..n)
            .map(|i| (0..n).map(|j| product(i, j)).collect())
            .collect();
        let identity = elements
            .iter()
            .position(|e| e == identity)
            .ok_or_else(|| AlgebraError::InvalidTable(format!("unknown identity `{identity}`")))?;
        let t = MonoidTable {
            elements,
            identity,
            table,
        };
        t.validate()?;
        Ok(t)
    }

    fn validate(&self) -> Result<()> {
        let n = self.elements.len();
        if n == 0 {
            return Err(AlgebraError::InvalidTable("no elements".into()));
        }
        let mut seen = std::collections::BTreeSet::new();
        for e in &self.elements {
            if !seen.insert(e) {
                return Err(AlgebraError::InvalidTable(format!("duplicate symbol `{e}`")));
            }
        }
        for row in &self.table {
            if row.len() != n || row.iter().any(|&x| x >= n) {
                return Err(AlgebraError::InvalidTable("product outside the monoid".into()));
            }
        }
        if self.table.len() != n {
            return Err(AlgebraError::InvalidTable("missing rows".into()));
        }
        for i in 0..n {
            if self.table[self.identity][i] != i || self.table[i][self.identity] != i {
                return Err(AlgebraError::InvalidTable(format!(
                    "`{}` is not a two-sided identity at `{}`",
                    self.elements[self.identity], self.elements[i]
                )));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                        return Err(AlgebraError::InvalidTable(format!(
                            "associativity fails on ({}, {}, {})",
                            self.elements[a], self.elements[b], self.elements[c]
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn from_json(src: &str) -> Result<Self> {
        let parsed: MonoidTableJson = serde_json::from_str(src)
            .map_err(|e| AlgebraError::InvalidTable(format!("JSON error: {e}")))?;
        let idx: BTreeMap<&str, usize> = parsed
            .elements
            .iter()
            .enumerate()
            .map(|(i, e)| (e.as_str(), i))
            .collect();
        let n = parsed.elements.len();
        let mut table = vec![vec![usize::MAX; n]; n];
        for (left, row) in &parsed.table {
            let &i = idx.get(left.as_str()).ok_or_else(|| {
                AlgebraError::InvalidTable(format!("unknown symbol `{left}` in table"))
            })?;
            for (right, prod) in row {
                let &j = idx.get(right.as_str()).ok_or_else(|| {
                    AlgebraError::InvalidTable(format!("unknown symbol `{right}` in table"))
                })?;
                let &k = idx.get(prod.as_str()).ok_or_else(|| {
                    AlgebraError::InvalidTable(format!(
                        "product `{prod}` of `{left}`·`{right}` is not an element"
                    ))
                })?;
                table[i][j] = k;
            }
        }
        for i in 0..n {
            for j in 0..n {
                if table[i][j] == usize::MAX {
                    return Err(AlgebraError::InvalidTable(format!(
                        "missing product `{}`·`{}`",
                        parsed.elements[i], parsed.elements[j]
                    )));
                }
            }
        }
        let identity = idx
            .get(parsed.identity.as_str())
            .copied()
            .ok_or_else(|| {
                AlgebraError::InvalidTable(format!("unknown identity `{}`", parsed.identity))
            })?;
        let t = MonoidTable {
            elements: parsed.elements,
            identity,
            table,
        };
        t.validate()?;
        Ok(t)
    }

    pub fn to_json(&self) -> String {
        let table = self
            .elements
            .iter()
            .enumerate()
            .map(|(i, a)| {
                (
                    a.clone(),
                    self.elements
                        .iter()
                        .enumerate()
                        .map(|(j, b)| (b.clone(), self.elements[self.mul(i, j)].clone()))
                        .collect(),
                )
            })
            .collect();
        let json = MonoidTableJson {
            elements: self.elements.clone(),
            identity: self.elements[self.identity].clone(),
            table,
        };
        serde_json::to_string_pretty(&json).expect("serializable")
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn symbols(&self) -> &[String] {
        &self.elements
    }

    pub fn identity_symbol(&self) -> &str {
        &self.elements[self.identity]
    }

    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.table[i][j]
    }

    pub fn index_of(&self, symbol: &str) -> Option<usize> {
        self.elements.iter().position(|e| e == symbol)
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.len();
        (0..n).all(|i| (0..n).all(|j| self.mul(i, j) == self.mul(j, i)))
    }

    /// Two-sided inverse of an element, if it has one.
    pub fn inverse(&self, i: usize) -> Option<usize> {
        (0..self.len())
            .find(|&j| self.mul(i, j) == self.identity && self.mul(j, i) == self.identity)
    }

    pub fn is_group(&self) -> bool {
        (0..self.len()).all(|i| self.inverse(i).is_some())
    }

    /// First element without a two-sided inverse, if any.
    pub fn non_invertible_witness(&self) -> Option<&str> {
        (0..self.len())
            .find(|&i| self.inverse(i).is_none())
            .map(|i| self.elements[i].as_str())
    }

    /// The cyclic group of order `n` with symbols `e, g, g2, …`.
    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1);
        let symbols: Vec<String> = (0..n)
            .map(|i| match i {
                0 => "e".to_string(),
                1 => "g".to_string(),
                _ => format!("g{i}"),
            })
            .collect();
        MonoidTable::new(symbols, "e", |i, j| (i + j) % n).expect("valid group")
    }

    /// The symmetric group on three letters; symbols `e, r, r2, s, sr, sr2`
    /// with `r` a 3-cycle and `s` a transposition.
    pub fn symmetric_3() -> Self {
        // Permutations of (0,1,2) composed left-to-right.
        let perms: [[usize; 3]; 6] = [
            [0, 1, 2], // e
            [1, 2, 0], // r
            [2, 0, 1], // r2
            [1, 0, 2], // s
            [0, 2, 1], // sr
            [2, 1, 0], // sr2
        ];
        let symbols = ["e", "r", "r2", "s", "sr", "sr2"]
            .map(String::from)
            .to_vec();
        MonoidTable::new(symbols, "e", |i, j| {
            let composed = [
                perms[j][perms[i][0]],
                perms[j][perms[i][1]],
                perms[j][perms[i][2]],
            ];
            perms.iter().position(|p| *p == composed).unwrap()
        })
        .expect("valid group")
    }

    /// The Klein four-group `ℤ/2 × ℤ/2`, symbols `e, s, t, st`.
    pub fn klein_four() -> Self {
        let symbols = ["e", "s", "t", "st"].map(String::from).to_vec();
        MonoidTable::new(symbols, "e", |i, j| i ^ j).expect("valid group")
    }

    /// The three-element monoid `{e, a, b}` where the product of any two
    /// non-identity elements is the right factor.
    pub fn right_zero_adjoined() -> Self {
        let symbols = ["e", "a", "b"].map(String::from).to_vec();
        MonoidTable::new(symbols, "e", |i, j| {
            if i == 0 {
                j
            } else if j == 0 {
                i
            } else {
                j
            }
        })
        .expect("valid monoid")
    }
}

fn monoid_flags(t: &MonoidTable) -> StructureFlags {
    StructureFlags {
        graded: false,
        connected: false,
        // Every basis element is grouplike, so the coproduct is symmetric.
        cocommutative: true,
        commutative: t.is_commutative(),
        hopf_claimed: t.is_group(),
        finite_type: true,
    }
}

/// The monoid bialgebra `kM`: basis elements are grouplike, the product is
/// the monoid product.  Hopf exactly when the monoid is a group.
pub fn build_monoid_bialgebra(name: impl Into<String>, t: &MonoidTable) -> BialgebraHandle {
    let keys: Vec<BasisKey> = t
        .symbols()
        .iter()
        .map(|s| BasisKey::monoid_elem(s.clone()))
        .collect();
    let key_set = keys.clone();
    let basis = GradedBasis::new(
        move |k| key_set.contains(k).then_some(0),
        move |n| if n == 0 { keys.clone() } else { Vec::new() },
    );
    let coproduct = Arc::new(|k: &BasisKey| Element::single(BasisKey::tensor(k.clone(), k.clone())));
    let counit = Arc::new(|_: &BasisKey| Scalar::one());
    let coalg = CoalgebraHandle::new(name, basis, coproduct, counit, monoid_flags(t));
    let table = t.clone();
    let product = Arc::new(move |a: &BasisKey, b: &BasisKey| {
        let (BasisKey::MonoidElem(sa), BasisKey::MonoidElem(sb)) = (a, b) else {
            return Err(AlgebraError::UnknownKey {
                key: crate::text::render_key(a),
                context: "monoid product".into(),
            });
        };
        let i = table.index_of(sa).ok_or_else(|| AlgebraError::UnknownKey {
            key: sa.clone(),
            context: "monoid table".into(),
        })?;
        let j = table.index_of(sb).ok_or_else(|| AlgebraError::UnknownKey {
            key: sb.clone(),
            context: "monoid table".into(),
        })?;
        Ok(Element::single(BasisKey::monoid_elem(
            table.symbols()[table.mul(i, j)].clone(),
        )))
    });
    let unit = Element::single(BasisKey::monoid_elem(t.identity_symbol()));
    BialgebraHandle::new(coalg, product, unit)
}

/// The group algebra `kG`; errors with a witness if some element has no
/// two-sided inverse.
pub fn build_group_algebra(name: impl Into<String>, t: &MonoidTable) -> Result<BialgebraHandle> {
    if let Some(w) = t.non_invertible_witness() {
        return Err(AlgebraError::NotAGroup {
            symbol: w.to_string(),
            detail: "no two-sided inverse in the table".into(),
        });
    }
    Ok(build_monoid_bialgebra(name, t))
}

/// The dual `(kM)*` of a monoid bialgebra on the functional basis `x_m`.
///
/// Products are pointwise (`x_i·x_j = δ_{ij} x_j`), the unit is the sum of
/// all functionals, the coproduct dualizes the monoid product and the
/// counit evaluates at the identity.
pub fn build_monoid_dual(name: impl Into<String>, t: &MonoidTable) -> BialgebraHandle {
    let base = build_monoid_bialgebra("base", t);
    let dual = crate::handle::dual_bialgebra(&base).expect("finite type");
    // Re-wrap under the requested name.
    let name = name.into();
    let coalg = dual.coalgebra_handle().renamed(name);
    BialgebraHandle::new(coalg, dual_product_fn(&dual), dual.unit().clone())
}

fn dual_product_fn(dual: &BialgebraHandle) -> crate::handle::ProductFn {
    let d = dual.clone();
    Arc::new(move |a, b| d.product(a, b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::parse_element;

    #[test]
    fn table_validation_catches_broken_structures() {
        // Non-associative magma on two elements.
        let bad = MonoidTable::new(
            vec!["e".into(), "a".into()],
            "e",
            |i, j| if i == 1 && j == 1 { 0 } else { i.max(j) },
        );
        assert!(bad.is_ok()); // x²=e is associative for order 2
        let worse = MonoidTable::new(vec!["e".into(), "a".into()], "q", |i, j| i.max(j));
        assert!(worse.is_err());
    }

    #[test]
    fn right_zero_monoid_multiplies_to_the_right_factor() {
        let t = MonoidTable::right_zero_adjoined();
        let a = t.index_of("a").unwrap();
        let b = t.index_of("b").unwrap();
        assert_eq!(t.mul(a, a), a);
        assert_eq!(t.mul(b, a), a);
        assert_eq!(t.mul(a, b), b);
        assert!(!t.is_group());
        assert_eq!(t.non_invertible_witness(), Some("a"));
        assert!(build_group_algebra("bad", &t).is_err());
    }

    #[test]
    fn group_tables_are_groups() {
        assert!(MonoidTable::cyclic(2).is_group());
        assert!(MonoidTable::symmetric_3().is_group());
        assert!(!MonoidTable::symmetric_3().is_commutative());
        assert!(MonoidTable::klein_four().is_group());
        assert!(MonoidTable::klein_four().is_commutative());
    }

    #[test]
    fn json_round_trips() {
        let t = MonoidTable::right_zero_adjoined();
        let json = t.to_json();
        let back = MonoidTable::from_json(&json).unwrap();
        assert_eq!(t, back);
    }

    #[test]
    fn json_errors_name_the_missing_pair() {
        let src = r#"{
            "elements": ["e", "a"],
            "identity": "e",
            "table": {"e": {"e": "e", "a": "a"}, "a": {"e": "a"}}
        }"#;
        let err = MonoidTable::from_json(src).unwrap_err();
        assert!(err.to_string().contains("`a`·`a`"));
    }

    #[test]
    fn dual_of_right_zero_monoid_has_the_expected_structure() {
        let t = MonoidTable::right_zero_adjoined();
        let d = build_monoid_dual("monoid-dual", &t);
        let xa = BasisKey::monoid_elem("a");
        let xe = BasisKey::monoid_elem("e");
        // Pointwise product.
        assert_eq!(
            d.product(&xa, &xa).unwrap(),
            Element::single(xa.clone())
        );
        assert!(d.product(&xa, &xe).unwrap().is_zero());
        // Unit is the sum of all functionals.
        assert_eq!(d.unit(), &parse_element("g(a) + g(b) + g(e)").unwrap());
        // Coproduct dualizes the product: pairs multiplying to `a` are
        // (e,a), (a,a), (b,a), (a,e).
        let da = d.coproduct(&xa);
        assert_eq!(
            da,
            parse_element("t(g(a),g(a)) + t(g(a),g(e)) + t(g(b),g(a)) + t(g(e),g(a))").unwrap()
        );
        // Counit evaluates at the identity.
        assert_eq!(d.counit(&xe), Scalar::one());
        assert_eq!(d.counit(&xa), Scalar::zero());
        assert!(d.flags().commutative);
        assert!(!d.flags().cocommutative);
        assert!(!d.flags().hopf_claimed);
    }
}
