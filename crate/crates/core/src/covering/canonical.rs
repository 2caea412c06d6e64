//! The canonical covering of a graded connected cocommutative bialgebra by
//! the composition bialgebra, and factorisation of other coverings through
//! it.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::basis::{BasisKey, CompositionLetter};
use crate::covering::morphism::CoveringMorphism;
use crate::covering::{FactorFn, GeneratorsFn, KeyFactorization, PartialCovering, RuleFn};
use crate::element::Element;
use crate::error::{AlgebraError, Result};
use crate::handle::BialgebraHandle;
use crate::instances::{build_divided_power_coalgebra, build_nsym, build_set_word_bialgebra};
use crate::text::render_key;

/// Splits a composition key into its first part and the remaining tail.
fn composition_factor() -> FactorFn {
    Arc::new(|k: &BasisKey| match k {
        BasisKey::Composition(CompositionLetter::H, parts) => {
            if parts.is_empty() {
                return Ok(KeyFactorization::Unit);
            }
            let generator = BasisKey::composition(CompositionLetter::H, vec![parts[0]])?;
            let rest = if parts.len() == 1 {
                None
            } else {
                Some(BasisKey::composition(CompositionLetter::H, parts[1..].to_vec())?)
            };
            Ok(KeyFactorization::Split { generator, rest })
        }
        other => Err(AlgebraError::UnknownKey {
            key: render_key(other),
            context: "factoring a composition into its first part".into(),
        }),
    })
}

fn composition_generators() -> GeneratorsFn {
    Arc::new(|n: u32| {
        (1..=n)
            .map(|k| BasisKey::composition(CompositionLetter::H, vec![k]).expect("positive part"))
            .collect()
    })
}

/// The canonical covering of `a` by the composition bialgebra: the one-part
/// generator of degree `k` acts as the projection onto degree `k`.
///
/// The target must be graded, connected, and cocommutative; without
/// cocommutativity the construction fails to intertwine coproducts.
pub fn canonical_covering(a: &BialgebraHandle, bound: u32) -> Result<PartialCovering> {
    let flags = a.flags();
    if !flags.graded {
        return Err(AlgebraError::NotGraded {
            name: a.name().to_string(),
            operation: "canonical covering".into(),
        });
    }
    if !flags.connected {
        return Err(AlgebraError::NotConnected {
            name: a.name().to_string(),
            operation: "canonical covering".into(),
        });
    }
    if !flags.cocommutative {
        return Err(AlgebraError::NotCocommutative {
            name: a.name().to_string(),
            operation: "canonical covering".into(),
        });
    }
    let b = build_nsym();
    let c = a.as_coalgebra();
    let deg = a.coalgebra_handle().clone();
    let rule: RuleFn = Arc::new(move |g, ck| {
        let k = match g {
            BasisKey::Composition(CompositionLetter::H, parts) if parts.len() == 1 => parts[0],
            other => {
                return Err(AlgebraError::InvalidKey {
                    key: render_key(other),
                    detail: "expected a one-part composition generator".into(),
                })
            }
        };
        match deg.degree(ck) {
            Some(d) if d == k => Ok(Element::single(ck.clone())),
            Some(_) => Ok(Element::zero()),
            None => Err(AlgebraError::UnknownKey {
                key: render_key(ck),
                context: format!("degree lookup in {}", deg.name()),
            }),
        }
    });
    Ok(PartialCovering::decree(
        format!("can({})", a.name()),
        b,
        a.clone(),
        c,
        bound,
        composition_generators(),
        composition_factor(),
        rule,
        true,
    ))
}

/// Splits a set word into its first block and the remaining word.
pub(crate) fn set_word_factor() -> FactorFn {
    Arc::new(|k: &BasisKey| match k {
        BasisKey::SetWord(blocks) => {
            if blocks.is_empty() {
                return Ok(KeyFactorization::Unit);
            }
            let generator = BasisKey::set_word(vec![blocks[0].clone()])?;
            let rest = if blocks.len() == 1 {
                None
            } else {
                Some(BasisKey::set_word(blocks[1..].to_vec())?)
            };
            Ok(KeyFactorization::Split { generator, rest })
        }
        other => Err(AlgebraError::UnknownKey {
            key: render_key(other),
            context: "factoring a set word into its first block".into(),
        }),
    })
}

/// Covering of the composition bialgebra by set words: a one-block word acts
/// on the divided-power basis by block-size match.
pub fn build_set_word_covering(alphabet: u32, bound: u32) -> PartialCovering {
    let b = build_set_word_bialgebra(alphabet);
    let a = build_nsym();
    let c = build_divided_power_coalgebra();
    let factor: FactorFn = set_word_factor();
    let generators: GeneratorsFn = Arc::new(move |n: u32| {
        let mut out = Vec::new();
        let m = alphabet;
        for mask in 1u64..(1u64 << m) {
            let block: Vec<u32> = (0..m).filter(|i| mask >> i & 1 == 1).map(|i| i + 1).collect();
            if block.len() as u32 <= n {
                out.push(BasisKey::set_word(vec![block]).expect("nonempty increasing block"));
            }
        }
        out.sort();
        out
    });
    let rule: RuleFn = Arc::new(|g, ck| {
        let BasisKey::SetWord(blocks) = g else {
            return Err(AlgebraError::InvalidKey {
                key: render_key(g),
                detail: "expected a one-block word generator".into(),
            });
        };
        let BasisKey::Composition(CompositionLetter::H, parts) = ck else {
            return Err(AlgebraError::UnknownKey {
                key: render_key(ck),
                context: "set-word covering values".into(),
            });
        };
        let n = parts.first().copied().unwrap_or(0);
        if blocks.len() == 1 && blocks[0].len() as u32 == n {
            Ok(Element::single(ck.clone()))
        } else {
            Ok(Element::zero())
        }
    });
    PartialCovering::decree(
        "omp-to-nsym",
        b,
        a,
        c,
        bound,
        generators,
        factor,
        rule,
        true,
    )
}

/// Factors `f` through the canonical covering of its target: returns the
/// morphism whose table sends each index key to the sum of the generator
/// values on it.
///
/// The sum runs over generators up to the degree bound; a key whose value on
/// the generator one degree beyond the bound is still nonzero is reported as
/// divergent, since its defining sum cannot have terminated.
pub fn factor_through_canonical(f: &PartialCovering, bound: u32) -> Result<CoveringMorphism> {
    let can = canonical_covering(f.a(), bound)?;
    let mut table: BTreeMap<BasisKey, Element> = BTreeMap::new();
    for ck in f.c().keys_to_degree(bound) {
        let mut image = Element::zero();
        for n in 0..=bound {
            let h = if n == 0 {
                BasisKey::composition(CompositionLetter::H, Vec::new())?
            } else {
                BasisKey::composition(CompositionLetter::H, vec![n])?
            };
            image.add_assign(&f.value(&h, &ck)?);
        }
        let probe = BasisKey::composition(CompositionLetter::H, vec![bound + 1])?;
        if !f.value(&probe, &ck)?.is_zero() {
            return Err(AlgebraError::Divergent {
                key: render_key(&ck),
            });
        }
        table.insert(ck, image);
    }
    let morphism = CoveringMorphism::new(f.clone(), can, table);
    let report = crate::covering::morphism::verify_morphism(&morphism, bound)?;
    if !report.all_ok() {
        return Err(AlgebraError::Unsupported(format!(
            "the candidate factorisation through can({}) fails its checks: {:?}",
            f.a().name(),
            report.witnesses
        )));
    }
    Ok(morphism)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::covering::report::verify_covering;
    use crate::instances::{build_qsym, build_sym};
    use crate::text::parse_key;

    #[test]
    fn canonical_covering_of_symmetric_functions_verifies() {
        let f = canonical_covering(&build_sym(), 4).unwrap();
        let report = verify_covering(&f, 4).unwrap();
        assert!(report.all_ok(), "{report:?}");
    }

    #[test]
    fn canonical_covering_rejects_a_non_cocommutative_target() {
        let err = canonical_covering(&build_qsym(), 3).unwrap_err();
        assert!(matches!(err, AlgebraError::NotCocommutative { .. }));
    }

    #[test]
    fn set_word_covering_matches_block_sizes() {
        let f = build_set_word_covering(3, 3);
        let b = parse_key("w[{1,3}]").unwrap();
        assert_eq!(
            f.value(&b, &parse_key("H2").unwrap()).unwrap(),
            Element::single(parse_key("H2").unwrap())
        );
        assert!(f.value(&b, &parse_key("H3").unwrap()).unwrap().is_zero());
    }

    #[test]
    fn complete_to_symmetric_factors_through_the_canonical_covering() {
        let f = crate::registry::nsym_to_sym(4);
        let m = factor_through_canonical(&f, 4).unwrap();
        // The factoring map is the covering's own value sum: on a partition
        // key it keeps the key exactly once.
        let p = parse_key("p[2,1]").unwrap();
        assert_eq!(m.table[&p], Element::single(p.clone()));
    }

    #[test]
    fn a_never_vanishing_value_family_is_reported_divergent() {
        use crate::instances::build_pointed_coalgebra;
        use crate::scalar::Scalar;
        use std::sync::Arc;

        // Injected divergence: every generator degree contributes p[n], so
        // the factoring sum never terminates.
        let b = build_nsym();
        let a = build_sym();
        let c = build_pointed_coalgebra("one-point", &["pt"]).unwrap();
        let value = Arc::new(|bk: &BasisKey, _ck: &BasisKey| {
            let BasisKey::Composition(CompositionLetter::H, parts) = bk else {
                unreachable!()
            };
            let w: u32 = parts.iter().sum();
            Ok(Element::term(
                BasisKey::partition(if w == 0 { vec![] } else { vec![w] }).unwrap(),
                Scalar::one(),
            ))
        });
        let f = PartialCovering::from_closure("divergent", b, a, c, 3, value, false);
        let err = factor_through_canonical(&f, 3).unwrap_err();
        assert!(matches!(err, AlgebraError::Divergent { ref key } if key == "pt"));
    }
}
