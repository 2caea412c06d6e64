//! Noncommutative symmetric functions and quasisymmetric functions.

use std::sync::Arc;

use crate::basis::{BasisKey, CompositionLetter};
use crate::combinat::{compositions, shuffles};
use crate::element::Element;
use crate::handle::{BialgebraHandle, CoalgebraHandle, GradedBasis, StructureFlags};
use crate::scalar::Scalar;

fn comp_key(letter: CompositionLetter, parts: Vec<u32>) -> BasisKey {
    BasisKey::Composition(letter, parts)
}

fn comp_basis(letter: CompositionLetter) -> GradedBasis {
    GradedBasis::new(
        move |k| match k {
            BasisKey::Composition(l, parts) if *l == letter => Some(parts.iter().sum()),
            _ => None,
        },
        move |n| {
            compositions(n)
                .into_iter()
                .map(|c| comp_key(letter, c))
                .collect()
        },
    )
}

/// Noncommutative symmetric functions on the complete basis `H_α`.
///
/// The product concatenates compositions; on generators the coproduct is
/// `ΔH_k = Σ_{i+j=k} H_i ⊗ H_j` and it extends multiplicatively.  Graded,
/// connected, cocommutative, not commutative.
pub fn build_nsym() -> BialgebraHandle {
    let coproduct = Arc::new(|k: &BasisKey| {
        let BasisKey::Composition(CompositionLetter::H, parts) = k else {
            return Element::zero();
        };
        let unit2 = Element::single(BasisKey::tensor(
            comp_key(CompositionLetter::H, vec![]),
            comp_key(CompositionLetter::H, vec![]),
        ));
        parts.iter().fold(unit2, |acc, &k| {
            let factor = Element::from_terms((0..=k).map(|i| {
                (
                    BasisKey::tensor(
                        comp_key(CompositionLetter::H, part_list(i)),
                        comp_key(CompositionLetter::H, part_list(k - i)),
                    ),
                    Scalar::one(),
                )
            }));
            concat_tensor_square(&acc, &factor)
        })
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
        hopf_claimed: true,
        finite_type: false,
    };
    let coalg = CoalgebraHandle::new(
        "nsym",
        comp_basis(CompositionLetter::H),
        coproduct,
        counit,
        flags,
    );
    let product = Arc::new(|a: &BasisKey, b: &BasisKey| {
        let (
            BasisKey::Composition(CompositionLetter::H, pa),
            BasisKey::Composition(CompositionLetter::H, pb),
        ) = (a, b)
        else {
            return Err(crate::error::AlgebraError::UnknownKey {
                key: crate::text::render_key(a),
                context: "complete-basis product".into(),
            });
        };
        let joined: Vec<u32> = pa.iter().chain(pb.iter()).copied().collect();
        Ok(Element::single(comp_key(CompositionLetter::H, joined)))
    });
    BialgebraHandle::new(
        coalg,
        product,
        Element::single(comp_key(CompositionLetter::H, vec![])),
    )
}

fn part_list(k: u32) -> Vec<u32> {
    if k == 0 {
        vec![]
    } else {
        vec![k]
    }
}

/// Componentwise concatenation product on tensor squares of composition
/// keys, used to extend generator coproducts multiplicatively.
fn concat_tensor_square(x: &Element, y: &Element) -> Element {
    let mut out = Element::zero();
    for (kx, cx) in x.iter() {
        let (x1, x2) = kx.as_tensor().expect("tensor key");
        for (ky, cy) in y.iter() {
            let (y1, y2) = ky.as_tensor().expect("tensor key");
            out.add_term(
                BasisKey::tensor(concat_comp(x1, y1), concat_comp(x2, y2)),
                cx * cy,
            );
        }
    }
    out
}

fn concat_comp(a: &BasisKey, b: &BasisKey) -> BasisKey {
    let (
        BasisKey::Composition(l, pa),
        BasisKey::Composition(_, pb),
    ) = (a, b)
    else {
        unreachable!("composition keys expected");
    };
    BasisKey::Composition(*l, pa.iter().chain(pb.iter()).copied().collect())
}

/// Quasisymmetric functions on the monomial basis `M_γ`.
///
/// The product shuffles compositions (`M1·M1 = 2 M[1,1]`,
/// `M1·M2 = M[1,2] + M[2,1]`); the coproduct deconcatenates.  Graded,
/// connected, commutative, not cocommutative.
pub fn build_qsym() -> BialgebraHandle {
    let coproduct = Arc::new(|k: &BasisKey| {
        let BasisKey::Composition(CompositionLetter::M, parts) = k else {
            return Element::zero();
        };
        Element::from_terms((0..=parts.len()).map(|i| {
            (
                BasisKey::tensor(
                    comp_key(CompositionLetter::M, parts[..i].to_vec()),
                    comp_key(CompositionLetter::M, parts[i..].to_vec()),
                ),
                Scalar::one(),
            )
        }))
    });
    let counit = Arc::new(|k: &BasisKey| match k {
        BasisKey::Composition(CompositionLetter::M, p) if p.is_empty() => Scalar::one(),
        _ => Scalar::zero(),
    });
    let flags = StructureFlags {
        graded: true,
        connected: true,
        cocommutative: false,
        commutative: true,
        hopf_claimed: true,
        finite_type: false,
    };
    let coalg = CoalgebraHandle::new(
        "qsym",
        comp_basis(CompositionLetter::M),
        coproduct,
        counit,
        flags,
    );
    let product = Arc::new(|a: &BasisKey, b: &BasisKey| {
        let (
            BasisKey::Composition(CompositionLetter::M, pa),
            BasisKey::Composition(CompositionLetter::M, pb),
        ) = (a, b)
        else {
            return Err(crate::error::AlgebraError::UnknownKey {
                key: crate::text::render_key(a),
                context: "monomial-basis product".into(),
            });
        };
        Ok(Element::from_terms(
            shuffles(pa, pb)
                .into_iter()
                .map(|w| (comp_key(CompositionLetter::M, w), Scalar::one())),
        ))
    });
    BialgebraHandle::new(
        coalg,
        product,
        Element::single(comp_key(CompositionLetter::M, vec![])),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::{parse_element, parse_key, render_element};

    #[test]
    fn generator_coproduct_sums_over_two_part_splits() {
        let h = build_nsym();
        let d = h.coproduct(&parse_key("H2").unwrap());
        assert_eq!(
            render_element(&d),
            "t(H[],H2) + t(H1,H1) + t(H2,H[])"
        );
    }

    #[test]
    fn coproduct_extends_multiplicatively_to_words() {
        let h = build_nsym();
        // ΔH[1,1] = ΔH1 · ΔH1 componentwise.
        let d = h.coproduct(&parse_key("H[1,1]").unwrap());
        let expected = parse_element(
            "t(H[],H[1,1]) + t(H1,H1) + t(H1,H1) + t(H[1,1],H[])",
        )
        .unwrap();
        assert_eq!(d, expected);
        assert_eq!(d.coeff(&parse_key("t(H1,H1)").unwrap()), Scalar::from_int(2));
    }

    #[test]
    fn nsym_product_concatenates() {
        let h = build_nsym();
        let p = h
            .product(&parse_key("H2").unwrap(), &parse_key("H[1,3]").unwrap())
            .unwrap();
        assert_eq!(p, parse_element("H[2,1,3]").unwrap());
        let q = h
            .product(&parse_key("H[1,3]").unwrap(), &parse_key("H2").unwrap())
            .unwrap();
        assert_ne!(p, q); // noncommutative
    }

    #[test]
    fn qsym_products_match_shuffle_values() {
        let h = build_qsym();
        let m1 = parse_key("M1").unwrap();
        let m2 = parse_key("M2").unwrap();
        assert_eq!(
            h.product(&m1, &m1).unwrap(),
            parse_element("2*M[1,1]").unwrap()
        );
        assert_eq!(
            h.product(&m1, &m2).unwrap(),
            parse_element("M[1,2] + M[2,1]").unwrap()
        );
    }

    #[test]
    fn qsym_coproduct_deconcatenates_and_is_not_cocommutative() {
        let h = build_qsym();
        let d = h.coproduct(&parse_key("M[1,2]").unwrap());
        assert_eq!(
            render_element(&d),
            "t(M[],M[1,2]) + t(M1,M2) + t(M[1,2],M[])"
        );
        let flipped = d.swap_tensor_slots().unwrap();
        let defect = d.sub(&flipped);
        assert_eq!(
            defect,
            parse_element("t(M1,M2) - t(M2,M1)").unwrap()
        );
    }
}
