//! Named catalogue of the built-in bialgebras and coverings.
//!
//! Every object the command-line tools can reach lives behind a stable
//! string name resolved here.  Bialgebras are built fresh on each call;
//! coverings come with the degree bound baked into their decree data so
//! memoisation stays within the requested window.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::basis::{BasisKey, CompositionLetter, PowerLetter};
use crate::covering::{
    build_set_word_covering, canonical_covering, identity_covering, FactorFn, GeneratorsFn,
    KeyFactorization, PartialCovering, RuleFn,
};
use crate::element::Element;
use crate::error::{AlgebraError, Result};
use crate::handle::BialgebraHandle;
use crate::instances::{
    build_group_algebra, build_laurent_point, build_monoid_bialgebra, build_monoid_dual,
    build_nsym, build_poly_point, build_poly_primitive, build_qsym, build_set_word_bialgebra,
    build_sym, MonoidTable,
};
use crate::scalar::Scalar;
use crate::text::render_key;

/// Size parameters shared by every registry build.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunParams {
    /// Degree window for graded objects and decree bounds.
    pub degree: u32,
    /// Alphabet size for the set-word bialgebra.
    pub alphabet: u32,
    /// Exponent window for the Laurent-type bialgebra.
    pub window: i64,
}

impl Default for RunParams {
    fn default() -> Self {
        RunParams {
            degree: 6,
            alphabet: 4,
            window: 4,
        }
    }
}

/// Names accepted by [`build_bialgebra`].
pub const BIALGEBRA_NAMES: &[&str] = &[
    "sym",
    "nsym",
    "qsym",
    "omp",
    "kx",
    "kz",
    "laurent",
    "z2-group",
    "z3-group",
    "s3-group",
    "klein-group",
    "monoid-algebra",
    "monoid-dual",
];

/// Names accepted by [`build_covering`]; `identity-<bialgebra>` also works.
pub const COVERING_NAMES: &[&str] = &[
    "nsym-to-sym",
    "poly-to-sym",
    "poly-to-qsym",
    "omp-to-nsym",
    "can-sym",
    "monoid-dual-cover",
    "laurent-to-group",
    "laurent-to-s3",
    "laurent-to-sym",
    "identity-sym",
];

/// Builds the named bialgebra at the given size parameters.
pub fn build_bialgebra(name: &str, params: &RunParams) -> Result<BialgebraHandle> {
    Ok(match name {
        "sym" => build_sym(),
        "nsym" => build_nsym(),
        "qsym" => build_qsym(),
        "omp" => build_set_word_bialgebra(params.alphabet),
        "kx" => build_poly_primitive(),
        "kz" => build_poly_point(),
        "laurent" => build_laurent_point(params.window),
        "z2-group" => build_group_algebra("z2-group", &MonoidTable::cyclic(2))?,
        "z3-group" => build_group_algebra("z3-group", &MonoidTable::cyclic(3))?,
        "s3-group" => build_group_algebra("s3-group", &MonoidTable::symmetric_3())?,
        "klein-group" => build_group_algebra("klein-group", &MonoidTable::klein_four())?,
        "monoid-algebra" => build_monoid_bialgebra("monoid-algebra", &MonoidTable::right_zero_adjoined()),
        "monoid-dual" => build_monoid_dual("monoid-dual", &MonoidTable::right_zero_adjoined()),
        other => {
            return Err(AlgebraError::Unsupported(format!(
                "unknown bialgebra name `{other}`; known names: {}",
                BIALGEBRA_NAMES.join(", ")
            )))
        }
    })
}

/// Builds the named covering at the given size parameters.
pub fn build_covering(name: &str, params: &RunParams) -> Result<PartialCovering> {
    match name {
        "nsym-to-sym" => Ok(nsym_to_sym(params.degree)),
        "poly-to-sym" => Ok(poly_to_sym(params.degree)),
        "poly-to-qsym" => Ok(poly_to_qsym(params.degree)),
        // Source blocks only reach the alphabet size, so grow the alphabet to
        // the degree window when needed; every block within the window then
        // has a representative word.
        "omp-to-nsym" => Ok(build_set_word_covering(
            params.alphabet.max(params.degree),
            params.degree,
        )),
        "can-sym" => canonical_covering(&build_sym(), params.degree),
        "monoid-dual-cover" => Ok(monoid_dual_cover(params.degree)),
        "laurent-to-group" => laurent_to_group(params.window, &MonoidTable::cyclic(2), "z2-group"),
        "laurent-to-s3" => laurent_to_group(params.window, &MonoidTable::symmetric_3(), "s3-group"),
        "laurent-to-sym" => Ok(laurent_to_sym(params.window, params.degree)),
        other => {
            if let Some(base) = other.strip_prefix("identity-") {
                return Ok(identity_covering(&build_bialgebra(base, params)?));
            }
            Err(AlgebraError::Unsupported(format!(
                "unknown covering name `{other}`; known names: {}",
                COVERING_NAMES.join(", ")
            )))
        }
    }
}

/// Splits a composition key into its first part and the remaining tail.
pub(crate) fn composition_factor() -> FactorFn {
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

/// One-part composition generators `H_1 .. H_n`.
fn composition_generators() -> GeneratorsFn {
    Arc::new(|n: u32| {
        (1..=n)
            .map(|k| BasisKey::composition(CompositionLetter::H, vec![k]).expect("positive part"))
            .collect()
    })
}

/// Splits a power key into one step toward the exponent-zero unit.
pub(crate) fn power_factor(letter: PowerLetter, signed: bool) -> FactorFn {
    Arc::new(move |k: &BasisKey| match k {
        BasisKey::IntPower(l, e) if *l == letter => {
            if *e == 0 {
                return Ok(KeyFactorization::Unit);
            }
            if *e < 0 && !signed {
                return Err(AlgebraError::InvalidKey {
                    key: render_key(k),
                    detail: "negative exponents are not part of this source".into(),
                });
            }
            let step: i64 = if *e > 0 { 1 } else { -1 };
            let generator = BasisKey::IntPower(letter, step);
            let rest = if *e == step {
                None
            } else {
                Some(BasisKey::IntPower(letter, e - step))
            };
            Ok(KeyFactorization::Split { generator, rest })
        }
        other => Err(AlgebraError::UnknownKey {
            key: render_key(other),
            context: "factoring a power of the generator".into(),
        }),
    })
}

/// Single-step power generators: the generator and, when signed, its inverse.
fn power_generators(letter: PowerLetter, signed: bool) -> GeneratorsFn {
    Arc::new(move |_| {
        let mut out = vec![BasisKey::IntPower(letter, 1)];
        if signed {
            out.push(BasisKey::IntPower(letter, -1));
        }
        out
    })
}

/// Complete-to-symmetric covering: `H_k` acts on a partition by weight match.
pub fn nsym_to_sym(bound: u32) -> PartialCovering {
    let b = build_nsym();
    let a = build_sym();
    let c = a.as_coalgebra();
    let rule: RuleFn = Arc::new(|g, ck| {
        let k = one_part(g)?;
        match ck {
            BasisKey::Partition(lam) => {
                let weight: u32 = lam.iter().sum();
                if weight == k {
                    Ok(Element::single(ck.clone()))
                } else {
                    Ok(Element::zero())
                }
            }
            other => Err(AlgebraError::UnknownKey {
                key: render_key(other),
                context: "complete-to-symmetric covering values".into(),
            }),
        }
    });
    PartialCovering::decree(
        "nsym-to-sym",
        b,
        a,
        c,
        bound,
        composition_generators(),
        composition_factor(),
        rule,
        true,
    )
}

/// Primitive-polynomial-to-symmetric covering: `x` acts by length-one match.
pub fn poly_to_sym(bound: u32) -> PartialCovering {
    let b = build_poly_primitive();
    let a = build_sym();
    let c = a.as_coalgebra();
    let rule: RuleFn = Arc::new(|_, ck| match ck {
        BasisKey::Partition(lam) => {
            if lam.len() == 1 {
                Ok(Element::single(ck.clone()))
            } else {
                Ok(Element::zero())
            }
        }
        other => Err(AlgebraError::UnknownKey {
            key: render_key(other),
            context: "polynomial-to-symmetric covering values".into(),
        }),
    });
    PartialCovering::decree(
        "poly-to-sym",
        b,
        a,
        c,
        bound,
        power_generators(PowerLetter::X, false),
        power_factor(PowerLetter::X, false),
        rule,
        true,
    )
}

/// Grouplike-polynomial-to-quasishuffle covering: `z` acts by length-one match.
pub fn poly_to_qsym(bound: u32) -> PartialCovering {
    let b = build_poly_point();
    let a = build_qsym();
    let c = a.as_coalgebra();
    let rule: RuleFn = Arc::new(|_, ck| match ck {
        BasisKey::Composition(CompositionLetter::M, parts) => {
            if parts.len() == 1 {
                Ok(Element::single(ck.clone()))
            } else {
                Ok(Element::zero())
            }
        }
        other => Err(AlgebraError::UnknownKey {
            key: render_key(other),
            context: "polynomial-to-quasishuffle covering values".into(),
        }),
    });
    PartialCovering::decree(
        "poly-to-qsym",
        b,
        a,
        c,
        bound,
        power_generators(PowerLetter::Z, false),
        power_factor(PowerLetter::Z, false),
        rule,
        true,
    )
}

/// Grouplike cover of the dual of the adjoined right-zero monoid: `z` acts
/// as the identity, so `z^n` acts as the n-th convolution power of it.
pub fn monoid_dual_cover(bound: u32) -> PartialCovering {
    let b = build_poly_point();
    let a = build_monoid_dual("monoid-dual", &MonoidTable::right_zero_adjoined());
    let c = a.as_coalgebra();
    let rule: RuleFn = Arc::new(|_, ck| Ok(Element::single(ck.clone())));
    PartialCovering::decree(
        "monoid-dual-cover",
        b,
        a,
        c,
        bound,
        power_generators(PowerLetter::Z, false),
        power_factor(PowerLetter::Z, false),
        rule,
        false,
    )
}

/// Laurent cover of a group algebra: `z` acts as the identity and `z^-1`
/// as the group inverse.
pub fn laurent_to_group(
    window: i64,
    table: &MonoidTable,
    group_name: &str,
) -> Result<PartialCovering> {
    if !table.is_group() {
        return Err(AlgebraError::NotAGroup {
            symbol: table.identity_symbol().to_string(),
            detail: "the Laurent cover needs inverses on the target".into(),
        });
    }
    let b = build_laurent_point(window);
    let a = build_group_algebra(group_name, table)?;
    let c = a.as_coalgebra();
    let t = table.clone();
    let rule: RuleFn = Arc::new(move |g, ck| {
        let BasisKey::MonoidElem(sym) = ck else {
            return Err(AlgebraError::UnknownKey {
                key: render_key(ck),
                context: "Laurent-to-group covering values".into(),
            });
        };
        let forward = matches!(g, BasisKey::IntPower(PowerLetter::Z, 1));
        if forward {
            return Ok(Element::single(ck.clone()));
        }
        let i = t.index_of(sym).ok_or_else(|| AlgebraError::UnknownKey {
            key: render_key(ck),
            context: "group element table".into(),
        })?;
        let j = t.inverse(i).expect("group tables have inverses");
        Ok(Element::single(BasisKey::monoid_elem(t.symbols()[j].clone())))
    });
    Ok(PartialCovering::decree(
        format!("laurent-to-{group_name}"),
        b,
        a,
        c,
        bound_from_window(window),
        power_generators(PowerLetter::Z, true),
        power_factor(PowerLetter::Z, true),
        rule,
        false,
    ))
}

/// Laurent cover of the symmetric functions: `z` acts as the identity and
/// `z^-1` as the antipode, which negates each one-part generator.
pub fn laurent_to_sym(window: i64, bound: u32) -> PartialCovering {
    let b = build_laurent_point(window);
    let a = build_sym();
    let c = a.as_coalgebra();
    let rule: RuleFn = Arc::new(|g, ck| {
        let BasisKey::Partition(lam) = ck else {
            return Err(AlgebraError::UnknownKey {
                key: render_key(ck),
                context: "Laurent-to-symmetric covering values".into(),
            });
        };
        let forward = matches!(g, BasisKey::IntPower(PowerLetter::Z, 1));
        let sign = if forward || lam.len() % 2 == 0 { 1 } else { -1 };
        Ok(Element::term(ck.clone(), Scalar::from_int(sign)))
    });
    PartialCovering::decree(
        "laurent-to-sym",
        b,
        a,
        c,
        bound,
        power_generators(PowerLetter::Z, true),
        power_factor(PowerLetter::Z, true),
        rule,
        true,
    )
}

/// Extracts the single part of a one-part composition generator.
fn one_part(g: &BasisKey) -> Result<u32> {
    match g {
        BasisKey::Composition(CompositionLetter::H, parts) if parts.len() == 1 => Ok(parts[0]),
        other => Err(AlgebraError::InvalidKey {
            key: render_key(other),
            detail: "expected a one-part composition generator".into(),
        }),
    }
}

/// Degree bound matching an exponent window.
fn bound_from_window(window: i64) -> u32 {
    u32::try_from(window.unsigned_abs()).unwrap_or(u32::MAX)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::{parse_element, parse_key};

    #[test]
    fn every_catalogue_name_builds() {
        let params = RunParams {
            degree: 3,
            alphabet: 2,
            window: 2,
        };
        for name in BIALGEBRA_NAMES {
            assert!(build_bialgebra(name, &params).is_ok(), "{name}");
        }
        for name in COVERING_NAMES {
            assert!(build_covering(name, &params).is_ok(), "{name}");
        }
        assert!(build_bialgebra("nope", &params).is_err());
        assert!(build_covering("nope", &params).is_err());
        assert!(build_covering("identity-kz", &params).is_ok());
    }

    #[test]
    fn laurent_group_cover_sends_the_inverse_generator_to_inverses() {
        let f = laurent_to_group(2, &MonoidTable::symmetric_3(), "s3-group").unwrap();
        let b = parse_key("z^-1").unwrap();
        let c = parse_key("g(s)").unwrap();
        let v = f.value(&b, &c).unwrap();
        assert_eq!(v, parse_element("g(s)").unwrap());
        let c = parse_key("g(r)").unwrap();
        let v = f.value(&b, &c).unwrap();
        assert_eq!(v, parse_element("g(r2)").unwrap());
    }

    #[test]
    fn laurent_sym_cover_applies_the_antipode_sign() {
        let f = laurent_to_sym(2, 4);
        let b = parse_key("z^-1").unwrap();
        let c = parse_key("p[2,1]").unwrap();
        assert_eq!(f.value(&b, &c).unwrap(), parse_element("p[2,1]").unwrap());
        let c = parse_key("p[3]").unwrap();
        assert_eq!(f.value(&b, &c).unwrap(), parse_element("-p3").unwrap());
    }
}
