//! The bialgebra of words over nonempty subsets of a finite alphabet.

use std::sync::Arc;

use crate::basis::BasisKey;
use crate::combinat::{set_words, subset_splits};
use crate::element::Element;
use crate::handle::{BialgebraHandle, CoalgebraHandle, GradedBasis, StructureFlags};
use crate::scalar::Scalar;

fn word_key(blocks: Vec<Vec<u32>>) -> BasisKey {
    BasisKey::SetWord(blocks)
}

/// Words over nonempty subsets of `{1, …, m}`, graded by total cardinality.
///
/// The product concatenates words.  On a one-block word the coproduct sums
/// over ordered set splits, `Δ{K} = Σ_{I⊔J=K} {I} ⊗ {J}` (empty sides give
/// the empty word), and extends multiplicatively to longer words.
pub fn build_set_word_bialgebra(m: u32) -> BialgebraHandle {
    assert!(m >= 1, "alphabet must be nonempty");
    let basis = GradedBasis::new(
        move |k| match k {
            BasisKey::SetWord(blocks)
                if blocks
                    .iter()
                    .all(|b| b.iter().all(|&e| e >= 1 && e <= m)) =>
            {
                Some(blocks.iter().map(|b| b.len() as u32).sum())
            }
            _ => None,
        },
        move |n| set_words(m, n).into_iter().map(word_key).collect(),
    );
    let coproduct = Arc::new(|k: &BasisKey| {
        let BasisKey::SetWord(blocks) = k else {
            return Element::zero();
        };
        let unit2 = Element::single(BasisKey::tensor(word_key(vec![]), word_key(vec![])));
        blocks.iter().fold(unit2, |acc, block| {
            let factor = Element::from_terms(subset_splits(block).into_iter().map(|(i, j)| {
                (
                    BasisKey::tensor(word_of(i), word_of(j)),
                    Scalar::one(),
                )
            }));
            concat_tensor_square(&acc, &factor)
        })
    });
    let counit = Arc::new(|k: &BasisKey| match k {
        BasisKey::SetWord(b) if b.is_empty() => Scalar::one(),
        _ => Scalar::zero(),
    });
    let flags = StructureFlags {
        graded: true,
        connected: true,
        cocommutative: true,
        commutative: m == 1,
        hopf_claimed: true,
        finite_type: false,
    };
    let coalg = CoalgebraHandle::new(format!("omp({m})"), basis, coproduct, counit, flags);
    let product = Arc::new(|a: &BasisKey, b: &BasisKey| {
        let (BasisKey::SetWord(wa), BasisKey::SetWord(wb)) = (a, b) else {
            return Err(crate::error::AlgebraError::UnknownKey {
                key: crate::text::render_key(a),
                context: "set-word product".into(),
            });
        };
        let joined: Vec<Vec<u32>> = wa.iter().chain(wb.iter()).cloned().collect();
        Ok(Element::single(word_key(joined)))
    });
    BialgebraHandle::new(coalg, product, Element::single(word_key(vec![])))
}

fn word_of(set: Vec<u32>) -> BasisKey {
    if set.is_empty() {
        word_key(vec![])
    } else {
        word_key(vec![set])
    }
}

fn concat_tensor_square(x: &Element, y: &Element) -> Element {
    let mut out = Element::zero();
    for (kx, cx) in x.iter() {
        let (x1, x2) = kx.as_tensor().expect("tensor key");
        for (ky, cy) in y.iter() {
            let (y1, y2) = ky.as_tensor().expect("tensor key");
            out.add_term(
                BasisKey::tensor(concat_word(x1, y1), concat_word(x2, y2)),
                cx * cy,
            );
        }
    }
    out
}

fn concat_word(a: &BasisKey, b: &BasisKey) -> BasisKey {
    let (BasisKey::SetWord(wa), BasisKey::SetWord(wb)) = (a, b) else {
        unreachable!("set-word keys expected");
    };
    word_key(wa.iter().chain(wb.iter()).cloned().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::{parse_element, parse_key, render_element};

    #[test]
    fn one_block_coproduct_sums_over_ordered_splits() {
        let h = build_set_word_bialgebra(4);
        let d = h.coproduct(&parse_key("w[{1,2}]").unwrap());
        assert_eq!(
            render_element(&d),
            "t(w[],w[{1,2}]) + t(w[{1}],w[{2}]) + t(w[{1,2}],w[]) + t(w[{2}],w[{1}])"
        );
    }

    #[test]
    fn coproduct_of_a_two_block_word_is_multiplicative() {
        let h = build_set_word_bialgebra(3);
        let w = parse_key("w[{1}|{2}]").unwrap();
        let d = h.coproduct(&w);
        // Four splits: each block goes left or right independently.
        assert_eq!(d.num_terms(), 4);
        assert_eq!(
            d.coeff(&parse_key("t(w[{1}],w[{2}])").unwrap()),
            Scalar::one()
        );
        assert_eq!(
            d.coeff(&parse_key("t(w[{2}],w[{1}])").unwrap()),
            Scalar::one()
        );
        assert_eq!(
            d.coeff(&parse_key("t(w[{1}|{2}],w[])").unwrap()),
            Scalar::one()
        );
    }

    #[test]
    fn product_concatenates_words() {
        let h = build_set_word_bialgebra(3);
        let p = h
            .product(
                &parse_key("w[{1,2}]").unwrap(),
                &parse_key("w[{3}|{1}]").unwrap(),
            )
            .unwrap();
        assert_eq!(p, parse_element("w[{1,2}|{3}|{1}]").unwrap());
    }

    #[test]
    fn degree_counts_total_cardinality() {
        let h = build_set_word_bialgebra(4);
        assert_eq!(h.degree(&parse_key("w[{1,2}|{3}]").unwrap()), Some(3));
        assert_eq!(h.basis_at(0).len(), 1);
        assert_eq!(h.degree(&parse_key("w[{5}]").unwrap()), None); // out of alphabet
    }
}
