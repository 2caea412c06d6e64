//! Index-side identities along a covering: the tensor-swap law a Hopf
//! source forces, cocommutativity of images of cocommutative elements,
//! transport of algebra characters to functionals on the index coalgebra,
//! and a witness search for images of grouplikes escaping the grouplike
//! span.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::basis::BasisKey;
use crate::covering::{overflow_to_none, sample_source_keys, CoveringFailure, PartialCovering};
use crate::element::Element;
use crate::error::{AlgebraError, Result};
use crate::handle::{BialgebraHandle, CoalgebraHandle};
use crate::linalg::SpanBuilder;
use crate::scalar::Scalar;
use crate::text::{render_element, render_key};
use crate::verify::{cocommutative_defect, is_grouplike};

/// Largest number of source keys swept in quadratic (pairwise) checks.
const PAIR_KEY_CAP: usize = 48;

/// Result of sweeping `Σ f(b′,c₂)⊗f(b,c₁) = Σ f(b′,c₁)⊗f(b,c₂)` over key
/// triples.
#[derive(Debug, Clone, Serialize)]
pub struct SwapReport {
    pub covering: String,
    pub checked_degree: u32,
    pub ok: bool,
    /// Lexicographically first failing triple, if any.
    pub witness: Option<CoveringFailure>,
    pub triples_checked: usize,
    pub triples_skipped: usize,
    /// False when the source-key sweep was capped rather than exhaustive.
    pub exhaustive: bool,
}

/// Thins `keys` to at most [`PAIR_KEY_CAP`] entries, keeping canonical order.
fn cap_for_pairs(keys: &[BasisKey]) -> (Vec<BasisKey>, bool) {
    if keys.len() <= PAIR_KEY_CAP {
        return (keys.to_vec(), true);
    }
    let stride = keys.len().div_ceil(PAIR_KEY_CAP);
    (keys.iter().step_by(stride).cloned().collect(), false)
}

/// Checks the swap identity on key triples `(b, b′, c)` up to degree `n`.
///
/// The identity holds whenever the source is Hopf; for other sources the
/// first counterexample triple is reported.
pub fn swap_identity_check(f: &PartialCovering, n: u32) -> Result<SwapReport> {
    let all_b = f.b().keys_to_degree(n);
    let sampled = sample_source_keys(f, n, &all_b);
    let sampled_all = sampled.len() == all_b.len();
    let (b_keys, uncapped) = cap_for_pairs(&sampled);
    let c_keys = f.c().keys_to_degree(n);

    let mut triples_checked = 0;
    let mut triples_skipped = 0;
    let mut witness = None;
    'sweep: for bk in &b_keys {
        for bk2 in &b_keys {
            for ck in &c_keys {
                let split = f.c().coproduct(ck);
                let mut lhs = Element::zero();
                let mut rhs = Element::zero();
                let mut overflowed = false;
                for (tk, coeff) in split.iter() {
                    let (c1, c2) = tk.as_tensor()?;
                    let (Some(v12), Some(v21), Some(v11), Some(v22)) = (
                        overflow_to_none(f.value(bk2, c2))?,
                        overflow_to_none(f.value(bk, c1))?,
                        overflow_to_none(f.value(bk2, c1))?,
                        overflow_to_none(f.value(bk, c2))?,
                    ) else {
                        overflowed = true;
                        break;
                    };
                    lhs.add_scaled(&v12.tensor(&v21), coeff);
                    rhs.add_scaled(&v11.tensor(&v22), coeff);
                }
                if overflowed {
                    triples_skipped += 1;
                    continue;
                }
                triples_checked += 1;
                if lhs != rhs {
                    witness = Some(CoveringFailure {
                        identity: "swap".into(),
                        inputs: vec![render_key(bk), render_key(bk2), render_key(ck)],
                        lhs: render_element(&lhs),
                        rhs: render_element(&rhs),
                    });
                    break 'sweep;
                }
            }
        }
    }
    Ok(SwapReport {
        covering: f.name().to_string(),
        checked_degree: n,
        ok: witness.is_none(),
        witness,
        triples_checked,
        triples_skipped,
        exhaustive: sampled_all && uncapped,
    })
}

/// Result of checking that images of cocommutative source keys stay
/// cocommutative in the target.
#[derive(Debug, Clone, Serialize)]
pub struct CocommutativityReport {
    pub covering: String,
    pub checked_degree: u32,
    /// Whether the source advertises an antipode; violations are expected
    /// precisely when it does not.
    pub source_hopf: bool,
    pub ok: bool,
    pub witnesses: Vec<CoveringFailure>,
    pub values_checked: usize,
}

/// Sweeps images `f(b ⊗ c)` of cocommutative basis keys `b` up to degree
/// `n` and records every non-cocommutative image.
pub fn image_cocommutativity_check(f: &PartialCovering, n: u32) -> Result<CocommutativityReport> {
    let bc = f.b().coalgebra_handle();
    let ac = f.a().as_coalgebra();
    let all_b = f.b().keys_to_degree(n);
    let sampled = sample_source_keys(f, n, &all_b);
    let c_keys = f.c().keys_to_degree(n);

    let mut witnesses = Vec::new();
    let mut values_checked = 0;
    for bk in &sampled {
        let source_defect = cocommutative_defect(bc, &Element::single(bk.clone()));
        if !source_defect.is_zero() {
            continue;
        }
        for ck in &c_keys {
            let Some(v) = overflow_to_none(f.value(bk, ck))? else {
                continue;
            };
            values_checked += 1;
            let defect = cocommutative_defect(&ac, &v);
            if !defect.is_zero() && witnesses.len() < crate::covering::MAX_WITNESSES {
                witnesses.push(CoveringFailure {
                    identity: "image-cocommutativity".into(),
                    inputs: vec![render_key(bk), render_key(ck)],
                    lhs: render_element(&defect),
                    rhs: "0".into(),
                });
            }
        }
    }
    Ok(CocommutativityReport {
        covering: f.name().to_string(),
        checked_degree: n,
        source_hopf: f.b().flags().hopf_claimed,
        ok: witnesses.is_empty(),
        witnesses,
        values_checked,
    })
}

/// Evaluates a character table linearly on an element of its algebra.
fn evaluate_character(chi: &BTreeMap<BasisKey, Scalar>, x: &Element) -> Result<Scalar> {
    let mut acc = Scalar::zero();
    for (k, c) in x.iter() {
        let v = chi.get(k).ok_or_else(|| {
            AlgebraError::MissingEntry(format!("character has no value at `{}`", render_key(k)))
        })?;
        acc += &(v * c);
    }
    Ok(acc)
}

/// The counit of `a` as a character table on its basis keys up to `n`.
pub fn counit_character(a: &BialgebraHandle, n: u32) -> BTreeMap<BasisKey, Scalar> {
    a.keys_to_degree(n)
        .into_iter()
        .map(|k| {
            let v = a.counit(&k);
            (k, v)
        })
        .collect()
}

/// `⟨ξ·η, c⟩ = Σ ⟨ξ,c₁⟩⟨η,c₂⟩`: the product of two functionals on `c`,
/// dual to its coproduct, at one basis key.
fn dual_product_at(c: &CoalgebraHandle, xi: &Element, eta: &Element, ck: &BasisKey) -> Result<Scalar> {
    let mut acc = Scalar::zero();
    for (tk, coeff) in c.coproduct(ck).iter() {
        let (c1, c2) = tk.as_tensor()?;
        let left = xi.coeff(c1);
        if left.is_zero() {
            continue;
        }
        let right = eta.coeff(c2);
        if right.is_zero() {
            continue;
        }
        acc += &(&(&left * &right) * coeff);
    }
    Ok(acc)
}

/// Transports an algebra character of the target to a table of functionals
/// on the index coalgebra: `⟨χ_f(b), c⟩ = χ(f(b ⊗ c))`.
///
/// The character is first verified multiplicative on basis products; the
/// transported table is verified multiplicative for the functional product
/// dual to the index coproduct.
pub fn character_transport(
    f: &PartialCovering,
    chi: &BTreeMap<BasisKey, Scalar>,
    n: u32,
) -> Result<BTreeMap<BasisKey, Element>> {
    let a = f.a();
    if evaluate_character(chi, a.unit())? != Scalar::one() {
        return Err(AlgebraError::NotMultiplicative {
            detail: format!("χ(1) ≠ 1 on {}", a.name()),
        });
    }
    let (a_keys, _) = cap_for_pairs(&a.keys_to_degree(n));
    for x in &a_keys {
        for y in &a_keys {
            let Some(prod) = overflow_to_none(a.product(x, y))? else {
                continue;
            };
            let Ok(lhs) = evaluate_character(chi, &prod) else {
                // Products reaching outside the tabulated range are not
                // decidable here and are skipped.
                continue;
            };
            let rhs = &evaluate_character(chi, &Element::single(x.clone()))?
                * &evaluate_character(chi, &Element::single(y.clone()))?;
            if lhs != rhs {
                return Err(AlgebraError::NotMultiplicative {
                    detail: format!(
                        "χ({}·{}) = {} but χ({})χ({}) = {}",
                        render_key(x),
                        render_key(y),
                        lhs,
                        render_key(x),
                        render_key(y),
                        rhs
                    ),
                });
            }
        }
    }

    let c_keys = f.c().keys_to_degree(n);
    let mut table = BTreeMap::new();
    for bk in f.b().keys_to_degree(n) {
        let mut functional = Element::zero();
        for ck in &c_keys {
            let Some(v) = overflow_to_none(f.value(&bk, ck))? else {
                continue;
            };
            let val = evaluate_character(chi, &v)?;
            if !val.is_zero() {
                functional.add_term(ck.clone(), val);
            }
        }
        table.insert(bk, functional);
    }

    // Multiplicativity of the transport: ⟨χ_f(bb′), c⟩ = ⟨χ_f(b)·χ_f(b′), c⟩.
    let (b_keys, _) = cap_for_pairs(&f.b().keys_to_degree(n));
    for bk in &b_keys {
        for bk2 in &b_keys {
            let Some(prod) = overflow_to_none(f.b().product(bk, bk2))? else {
                continue;
            };
            let mut left = Element::zero();
            let mut out_of_range = false;
            for (k, coeff) in prod.iter() {
                match table.get(k) {
                    Some(func) => left.add_scaled(func, coeff),
                    None => {
                        out_of_range = true;
                        break;
                    }
                }
            }
            if out_of_range {
                continue;
            }
            for ck in &c_keys {
                let lhs = left.coeff(ck);
                let rhs = dual_product_at(f.c(), &table[bk], &table[bk2], ck)?;
                if lhs != rhs {
                    return Err(AlgebraError::Unsupported(format!(
                        "transported character is not multiplicative at ({}, {}, {}): {} ≠ {}",
                        render_key(bk),
                        render_key(bk2),
                        render_key(ck),
                        lhs,
                        rhs
                    )));
                }
            }
        }
    }
    Ok(table)
}

/// Convolution of two transported-character tables: source coproduct on one
/// side, the dual functional product on the other.
pub fn character_convolution(
    b: &BialgebraHandle,
    c: &CoalgebraHandle,
    s: &BTreeMap<BasisKey, Element>,
    t: &BTreeMap<BasisKey, Element>,
    n: u32,
) -> Result<BTreeMap<BasisKey, Element>> {
    let c_keys = c.keys_to_degree(n);
    let mut out = BTreeMap::new();
    for bk in b.keys_to_degree(n) {
        let mut acc = Element::zero();
        for (tk, coeff) in b.coproduct(&bk).iter() {
            let (b1, b2) = tk.as_tensor()?;
            let (Some(xi), Some(eta)) = (s.get(b1), t.get(b2)) else {
                return Err(AlgebraError::MissingEntry(format!(
                    "no functional tabulated for a coproduct term of `{}`",
                    render_key(&bk)
                )));
            };
            for ck in &c_keys {
                let v = dual_product_at(c, xi, eta, ck)?;
                if !v.is_zero() {
                    acc.add_term(ck.clone(), &v * coeff);
                }
            }
        }
        out.insert(bk, acc);
    }
    Ok(out)
}

/// Searches for a grouplike source key whose image leaves the span of the
/// target's grouplike basis keys; returns the first such `(b, c)` pair.
pub fn grouplike_escape_witness(
    f: &PartialCovering,
    n: u32,
) -> Result<Option<(BasisKey, BasisKey)>> {
    let bc = f.b().coalgebra_handle();
    let ac = f.a().as_coalgebra();
    let a_keys = f.a().keys_to_degree(n);
    let dim = a_keys.len();
    let index: BTreeMap<BasisKey, usize> = a_keys
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, k)| (k, i))
        .collect();
    let mut grouplike_span = SpanBuilder::new(dim);
    for k in &a_keys {
        if is_grouplike(&ac, k) {
            let mut v = vec![Scalar::zero(); dim];
            v[index[k]] = Scalar::one();
            grouplike_span.add(v);
        }
    }
    for bk in f.b().keys_to_degree(n) {
        if !is_grouplike(bc, &bk) {
            continue;
        }
        for ck in f.c().keys_to_degree(n) {
            let Some(v) = overflow_to_none(f.value(&bk, &ck))? else {
                continue;
            };
            let Ok(coords) = v.coords(&index, dim) else {
                continue;
            };
            if !grouplike_span.contains(&coords) {
                return Ok(Some((bk, ck)));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::covering::identity_covering;
    use crate::instances::{build_group_algebra, MonoidTable};
    use crate::linmap::LinMap;
    use crate::registry::{laurent_to_group, laurent_to_sym, monoid_dual_cover, nsym_to_sym};
    use crate::text::parse_key;

    #[test]
    fn hopf_source_coverings_pass_the_swap_sweep() {
        let report = swap_identity_check(&nsym_to_sym(5), 4).unwrap();
        assert!(report.ok, "witness: {:?}", report.witness);
        assert!(report.triples_checked > 0);
        assert!(report.exhaustive);
    }

    #[test]
    fn a_polynomial_point_source_breaks_the_swap_law() {
        let report = swap_identity_check(&monoid_dual_cover(6), 3).unwrap();
        assert!(!report.ok);
        let witness = report.witness.unwrap();
        assert_eq!(witness.inputs[0], "z^1");
        assert_eq!(witness.inputs[1], "z^1");
        assert!(witness.inputs[2].contains('a'));
    }

    #[test]
    fn a_one_point_index_always_passes_the_swap_law() {
        let a = build_group_algebra("s3-group", &MonoidTable::symmetric_3()).unwrap();
        let report = swap_identity_check(&identity_covering(&a), 0).unwrap();
        assert!(report.ok);
        assert!(report.exhaustive);
    }

    #[test]
    fn cocommutative_images_survive_a_hopf_source() {
        let report = image_cocommutativity_check(&nsym_to_sym(5), 4).unwrap();
        assert!(report.ok);
        assert!(report.source_hopf);
        assert!(report.values_checked > 0);
    }

    #[test]
    fn group_valued_coverings_have_cocommutative_images() {
        let f = laurent_to_group(2, &MonoidTable::symmetric_3(), "s3-group").unwrap();
        let report = image_cocommutativity_check(&f, 0).unwrap();
        assert!(report.ok);
    }

    #[test]
    fn a_non_hopf_source_can_produce_non_cocommutative_images() {
        let report = image_cocommutativity_check(&monoid_dual_cover(6), 3).unwrap();
        assert!(!report.ok);
        assert!(!report.source_hopf);
        let witness = &report.witnesses[0];
        assert!(witness.inputs[1].contains('a') || witness.inputs[1].contains('b'));
    }

    #[test]
    fn the_counit_transports_to_counit_functionals() {
        let f = nsym_to_sym(5);
        let chi = counit_character(f.a(), 3);
        let table = character_transport(&f, &chi, 3).unwrap();
        for bk in f.b().keys_to_degree(3) {
            let eps = f.b().counit(&bk);
            let expected: Element = Element::from_terms(
                f.c()
                    .keys_to_degree(3)
                    .into_iter()
                    .map(|ck| {
                        let v = &f.c().counit(&ck) * &eps;
                        (ck, v)
                    })
                    .filter(|(_, v)| !v.is_zero()),
            );
            assert_eq!(table[&bk], expected, "at {}", render_key(&bk));
        }
    }

    #[test]
    fn the_sign_character_transport_has_convolution_order_two() {
        let f = laurent_to_group(4, &MonoidTable::cyclic(2), "z2-group").unwrap();
        let mut chi = BTreeMap::new();
        chi.insert(parse_key("g(e)").unwrap(), Scalar::one());
        chi.insert(parse_key("g(g)").unwrap(), Scalar::from_int(-1));
        let table = character_transport(&f, &chi, 0).unwrap();
        // Non-trivial on z^1 …
        assert_eq!(
            table[&parse_key("z^1").unwrap()].coeff(&parse_key("g(g)").unwrap()),
            Scalar::from_int(-1)
        );
        // … but squares to the transported counit character.
        let square = character_convolution(f.b(), f.c(), &table, &table, 0).unwrap();
        let unit_table = character_transport(&f, &counit_character(f.a(), 0), 0).unwrap();
        assert_eq!(square, unit_table);
    }

    #[test]
    fn a_non_multiplicative_table_is_rejected() {
        let f = laurent_to_group(4, &MonoidTable::cyclic(2), "z2-group").unwrap();
        let mut chi = BTreeMap::new();
        chi.insert(parse_key("g(e)").unwrap(), Scalar::one());
        chi.insert(parse_key("g(g)").unwrap(), Scalar::from_int(2));
        let err = character_transport(&f, &chi, 0).unwrap_err();
        assert!(matches!(err, AlgebraError::NotMultiplicative { .. }));
    }

    #[test]
    fn identity_transport_reads_off_the_character() {
        let a = build_group_algebra("z3-group", &MonoidTable::cyclic(3)).unwrap();
        let f = identity_covering(&a);
        let chi = counit_character(&a, 0);
        let table = character_transport(&f, &chi, 0).unwrap();
        let pt = BasisKey::point("pt");
        for (bk, functional) in &table {
            assert_eq!(functional.coeff(&pt), a.counit(bk));
        }
        // Sanity: the identity transport is the identity-like pairing.
        let id = LinMap::identity(&a, 0);
        assert_eq!(id.table().len(), table.len());
    }

    #[test]
    fn convolution_power_images_escape_the_grouplike_span() {
        let f = laurent_to_sym(2, 5);
        let witness = grouplike_escape_witness(&f, 3).unwrap();
        let (_, ck) = witness.expect("an escaping image exists");
        assert_eq!(ck, parse_key("p1").unwrap());
    }

    #[test]
    fn group_valued_images_stay_in_the_grouplike_span() {
        let f = laurent_to_group(2, &MonoidTable::cyclic(2), "z2-group").unwrap();
        assert!(grouplike_escape_witness(&f, 0).unwrap().is_none());
    }
}
