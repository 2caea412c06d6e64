//! Stand-alone coalgebras: matrix, pointed, and divided-power.

use std::sync::Arc;

use crate::basis::{BasisKey, CompositionLetter};
use crate::element::Element;
use crate::error::{AlgebraError, Result};
use crate::handle::{CoalgebraHandle, GradedBasis, StructureFlags};
use crate::scalar::Scalar;

/// The `n × n` matrix coalgebra: `Δe(i,j) = Σ_k e(i,k) ⊗ e(k,j)`,
/// `ε(e(i,j)) = δ_{ij}`.  Finite type; cocommutative only for `n = 1`.
pub fn build_matrix_coalgebra(n: u32) -> CoalgebraHandle {
    assert!(n >= 1, "matrix coalgebra needs a positive size");
    let keys: Vec<BasisKey> = (1..=n)
        .flat_map(|i| (1..=n).map(move |j| BasisKey::MatrixCell(i, j)))
        .collect();
    let mut sorted = keys.clone();
    sorted.sort();
    let in_range = move |k: &BasisKey| matches!(k, BasisKey::MatrixCell(i, j) if *i >= 1 && *i <= n && *j >= 1 && *j <= n);
    let basis = GradedBasis::new(
        move |k| in_range(k).then_some(0),
        move |d| if d == 0 { sorted.clone() } else { Vec::new() },
    );
    let coproduct = Arc::new(move |k: &BasisKey| {
        let BasisKey::MatrixCell(i, j) = k else {
            return Element::zero();
        };
        Element::from_terms((1..=n).map(|mid| {
            (
                BasisKey::tensor(BasisKey::MatrixCell(*i, mid), BasisKey::MatrixCell(mid, *j)),
                Scalar::one(),
            )
        }))
    });
    let counit = Arc::new(|k: &BasisKey| match k {
        BasisKey::MatrixCell(i, j) if i == j => Scalar::one(),
        _ => Scalar::zero(),
    });
    let flags = StructureFlags {
        graded: false,
        connected: false,
        cocommutative: n == 1,
        commutative: false,
        hopf_claimed: false,
        finite_type: true,
    };
    CoalgebraHandle::new(format!("matrix({n})"), basis, coproduct, counit, flags)
}

/// The pointed coalgebra on named grouplike points: `Δp = p ⊗ p`,
/// `ε(p) = 1`.  Errors on duplicate names.
pub fn build_pointed_coalgebra(name: impl Into<String>, points: &[&str]) -> Result<CoalgebraHandle> {
    let mut seen = std::collections::BTreeSet::new();
    for p in points {
        if !seen.insert(*p) {
            return Err(AlgebraError::InvalidTable(format!(
                "duplicate point name `{p}`"
            )));
        }
    }
    if points.is_empty() {
        return Err(AlgebraError::InvalidTable("no points".into()));
    }
    let mut keys: Vec<BasisKey> = points.iter().map(|p| BasisKey::point(*p)).collect();
    keys.sort();
    let key_set = keys.clone();
    let basis = GradedBasis::new(
        move |k| key_set.contains(k).then_some(0),
        move |d| if d == 0 { keys.clone() } else { Vec::new() },
    );
    let coproduct = Arc::new(|k: &BasisKey| Element::single(BasisKey::tensor(k.clone(), k.clone())));
    let counit = Arc::new(|_: &BasisKey| Scalar::one());
    let flags = StructureFlags {
        graded: false,
        connected: points.len() == 1,
        cocommutative: true,
        commutative: false,
        hopf_claimed: false,
        finite_type: true,
    };
    Ok(CoalgebraHandle::new(name, basis, coproduct, counit, flags))
}

fn h_key(k: u32) -> BasisKey {
    if k == 0 {
        BasisKey::Composition(CompositionLetter::H, vec![])
    } else {
        BasisKey::Composition(CompositionLetter::H, vec![k])
    }
}

/// The divided-power coalgebra: one basis vector `H_n` per degree with
/// `ΔH_n = Σ_{i+j=n} H_i ⊗ H_j` and `ε(H_n) = δ_{n,0}`.
pub fn build_divided_power_coalgebra() -> CoalgebraHandle {
    let basis = GradedBasis::new(
        |k| match k {
            BasisKey::Composition(CompositionLetter::H, parts) if parts.len() <= 1 => {
                Some(parts.first().copied().unwrap_or(0))
            }
            _ => None,
        },
        |n| vec![h_key(n)],
    );
    let coproduct = Arc::new(|k: &BasisKey| {
        let BasisKey::Composition(CompositionLetter::H, parts) = k else {
            return Element::zero();
        };
        let n = parts.first().copied().unwrap_or(0);
        Element::from_terms(
            (0..=n).map(|i| (BasisKey::tensor(h_key(i), h_key(n - i)), Scalar::one())),
        )
    });
    let counit = Arc::new(|k: &BasisKey| match k {
        BasisKey::Composition(CompositionLetter::H, p) if p.is_empty() => Scalar::one(),
        _ => Scalar::zero(),
    });
    let flags = StructureFlags {
        graded: true,
        connected: true,
        cocommutative: true,
        commutative: false,
        hopf_claimed: false,
        finite_type: false,
    };
    CoalgebraHandle::new("divided-powers", basis, coproduct, counit, flags)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::{parse_element, parse_key};

    #[test]
    fn matrix_coproduct_sums_over_middle_indices() {
        let c = build_matrix_coalgebra(2);
        let d = c.coproduct(&parse_key("e(1,2)").unwrap());
        assert_eq!(
            d,
            parse_element("t(e(1,1),e(1,2)) + t(e(1,2),e(2,2))").unwrap()
        );
        assert_eq!(c.counit(&parse_key("e(1,2)").unwrap()), Scalar::zero());
        assert_eq!(c.counit(&parse_key("e(2,2)").unwrap()), Scalar::one());
        assert_eq!(c.keys_to_degree(0).len(), 4);
    }

    #[test]
    fn pointed_coalgebra_rejects_duplicates() {
        assert!(build_pointed_coalgebra("c", &["x", "y"]).is_ok());
        let err = build_pointed_coalgebra("c", &["x", "x"]).unwrap_err();
        assert!(err.to_string().contains("duplicate"));
    }

    #[test]
    fn divided_powers_split_additively() {
        let c = build_divided_power_coalgebra();
        let d = c.coproduct(&parse_key("H2").unwrap());
        assert_eq!(
            d,
            parse_element("t(H[],H2) + t(H1,H1) + t(H2,H[])").unwrap()
        );
        assert_eq!(c.degree(&parse_key("H[]").unwrap()), Some(0));
        assert_eq!(c.degree(&parse_key("H3").unwrap()), Some(3));
        assert_eq!(c.basis_at(4).len(), 1);
    }
}
