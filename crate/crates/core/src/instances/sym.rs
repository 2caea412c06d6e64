//! Symmetric functions in the power-sum basis.

use std::sync::Arc;

use crate::basis::BasisKey;
use crate::combinat::{multiset_splits, partitions};
use crate::element::Element;
use crate::handle::{BialgebraHandle, CoalgebraHandle, GradedBasis, StructureFlags};
use crate::scalar::Scalar;

fn partition_key(parts: Vec<u32>) -> BasisKey {
    BasisKey::Partition(parts)
}

/// Symmetric functions on the power-sum basis `p_λ`.
///
/// The product merges index multisets; the coproduct splits them with
/// binomial multiplicities, e.g. `Δp[1,1] = p[1,1]⊗p[] + 2 p1⊗p1 +
/// p[]⊗p[1,1]`.  Graded by weight `|λ|`, connected, commutative and
/// cocommutative.
pub fn build_sym() -> BialgebraHandle {
    let basis = GradedBasis::new(
        |k| match k {
            BasisKey::Partition(parts) => Some(parts.iter().sum()),
            _ => None,
        },
        |n| partitions(n).into_iter().map(partition_key).collect(),
    );
    let coproduct = Arc::new(|k: &BasisKey| {
        let BasisKey::Partition(parts) = k else {
            return Element::zero();
        };
        Element::from_terms(multiset_splits(parts).into_iter().map(|(l, r, c)| {
            (
                BasisKey::tensor(partition_key(l), partition_key(r)),
                c,
            )
        }))
    });
    let counit = Arc::new(|k: &BasisKey| match k {
        BasisKey::Partition(p) if p.is_empty() => Scalar::one(),
        _ => Scalar::zero(),
    });
    let flags = StructureFlags {
        graded: true,
        connected: true,
        cocommutative: true,
        commutative: true,
        hopf_claimed: true,
        finite_type: false,
    };
    let coalg = CoalgebraHandle::new("sym", basis, coproduct, counit, flags);
    let product = Arc::new(|a: &BasisKey, b: &BasisKey| {
        let (BasisKey::Partition(pa), BasisKey::Partition(pb)) = (a, b) else {
            return Err(crate::error::AlgebraError::UnknownKey {
                key: crate::text::render_key(a),
                context: "power-sum product".into(),
            });
        };
        let mut merged: Vec<u32> = pa.iter().chain(pb.iter()).copied().collect();
        merged.sort_unstable_by(|x, y| y.cmp(x));
        Ok(Element::single(partition_key(merged)))
    });
    BialgebraHandle::new(coalg, product, Element::single(partition_key(vec![])))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::{parse_element, parse_key, render_element};

    #[test]
    fn coproduct_of_p11_has_binomial_middle_term() {
        let h = build_sym();
        let d = h.coproduct(&parse_key("p[1,1]").unwrap());
        assert_eq!(
            render_element(&d),
            "t(p[],p[1,1]) + 2*t(p1,p1) + t(p[1,1],p[])"
        );
    }

    #[test]
    fn product_merges_partitions() {
        let h = build_sym();
        let p = h
            .product(&parse_key("p2").unwrap(), &parse_key("p[3,1]").unwrap())
            .unwrap();
        assert_eq!(p, parse_element("p[3,2,1]").unwrap());
    }

    #[test]
    fn coproduct_is_an_algebra_map_in_low_degrees() {
        let h = build_sym();
        for a in h.keys_to_degree(3) {
            for b in h.keys_to_degree(3) {
                let prod = h.product(&a, &b).unwrap();
                let lhs = h.coproduct_element(&prod);
                let rhs = crate::handle::tensor_square_product(
                    &h,
                    &h.coproduct(&a),
                    &h.coproduct(&b),
                )
                .unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }
}
