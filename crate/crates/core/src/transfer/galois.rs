//! Galois-map machinery for finite targets: the rank test for
//! `β(a ⊗ a′) = a₁ ⊗ a₂a′` cross-checked against the antipode solve, the
//! surjectivity witness `γ ∘ γ′ = id` on index triples, convolution-inverse
//! point pairs, and matrix-coalgebra point invertibility.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::antipode::{antipode_full_solve, antipode_oracle};
use crate::basis::BasisKey;
use crate::covering::{overflow_to_none, PartialCovering};
use crate::element::Element;
use crate::error::{AlgebraError, Result};
use crate::handle::{BialgebraHandle, CoalgebraHandle};
use crate::linalg::DenseMatrix;
use crate::linmap::{convolution, LinMap};
use crate::text::{render_element, render_key};
use crate::verify::is_grouplike;

/// Rank data for the Galois map of a finite bialgebra, with the optional
/// index-triple verdicts attached by [`gamma_surjectivity`].
#[derive(Debug, Clone, Serialize)]
pub struct GaloisReport {
    pub dimension: usize,
    pub beta_rank: usize,
    /// `beta_rank = dimension²`.
    pub bijective: bool,
    /// Whether the convolution-inverse solve for an antipode succeeds; must
    /// agree with `bijective`.
    pub hopf: bool,
    pub gamma_surjective: Option<bool>,
    pub intertwining_ok: Option<bool>,
    pub triples_checked: usize,
    pub triples_skipped: usize,
}

/// Assembles `β(a ⊗ a′) = a₁ ⊗ a₂a′` as a `dim² × dim²` matrix, computes
/// its rank, and cross-checks bijectivity against the antipode solve.
pub fn galois_check(a: &BialgebraHandle) -> Result<GaloisReport> {
    if !a.flags().finite_type {
        return Err(AlgebraError::NotFiniteType {
            name: a.name().to_string(),
            operation: "Galois-map rank".into(),
        });
    }
    let keys = a.keys_to_degree(0);
    let dim = keys.len();
    let index: BTreeMap<&BasisKey, usize> =
        keys.iter().enumerate().map(|(i, k)| (k, i)).collect();
    let dim2 = dim * dim;
    let mut m = DenseMatrix::zeros(dim2, dim2);
    for (i, ki) in keys.iter().enumerate() {
        let split = a.coproduct(ki);
        for (j, kj) in keys.iter().enumerate() {
            let col = i * dim + j;
            for (tk, coeff) in split.iter() {
                let (k1, k2) = tk.as_tensor()?;
                let r1 = *index.get(k1).ok_or_else(|| AlgebraError::UnknownKey {
                    key: render_key(k1),
                    context: format!("basis of {}", a.name()),
                })?;
                let prod = a.product(k2, kj)?;
                for (pk, pc) in prod.iter() {
                    let r2 = *index.get(pk).ok_or_else(|| AlgebraError::UnknownKey {
                        key: render_key(pk),
                        context: format!("basis of {}", a.name()),
                    })?;
                    let row = r1 * dim + r2;
                    let cur = m.at(row, col).clone();
                    m.set(row, col, &cur + &(coeff * pc));
                }
            }
        }
    }
    let beta_rank = m.rank();
    let bijective = beta_rank == dim2;
    let hopf = antipode_full_solve(a).is_ok();
    if bijective != hopf {
        return Err(AlgebraError::Unsupported(format!(
            "Galois-map bijectivity ({bijective}) disagrees with the antipode solve ({hopf}) on {}",
            a.name()
        )));
    }
    Ok(GaloisReport {
        dimension: dim,
        beta_rank,
        bijective,
        hopf,
        gamma_surjective: None,
        intertwining_ok: None,
        triples_checked: 0,
        triples_skipped: 0,
    })
}

/// `γ(b ⊗ c ⊗ a) = b₁ ⊗ c₁ ⊗ f(b₂,c₂)a` on one basis triple.
fn gamma_on_key(
    f: &PartialCovering,
    bk: &BasisKey,
    ck: &BasisKey,
    ak: &BasisKey,
) -> Result<Element> {
    let mut out = Element::zero();
    for (tb, cb) in f.b().coproduct(bk).iter() {
        let (b1, b2) = tb.as_tensor()?;
        for (tc, cc) in f.c().coproduct(ck).iter() {
            let (c1, c2) = tc.as_tensor()?;
            let v = f.value(b2, c2)?;
            let prod = f.a().product_elements(&v, &Element::single(ak.clone()))?;
            let scale = cb * cc;
            for (pk, pc) in prod.iter() {
                out.add_term(
                    BasisKey::tensor(
                        b1.clone(),
                        BasisKey::tensor(c1.clone(), pk.clone()),
                    ),
                    &scale * pc,
                );
            }
        }
    }
    Ok(out)
}

/// `γ` extended linearly over `B ⊗ C ⊗ A` tensor keys.
fn gamma_linear(f: &PartialCovering, x: &Element) -> Result<Element> {
    let mut out = Element::zero();
    for (k, coeff) in x.iter() {
        let (bk, rest) = k.as_tensor()?;
        let (ck, ak) = rest.as_tensor()?;
        out.add_scaled(&gamma_on_key(f, bk, ck, ak)?, coeff);
    }
    Ok(out)
}

/// `γ′(b ⊗ c ⊗ a) = b₁ ⊗ c₁ ⊗ f(S(b₂),c₂)a` on one basis triple.
fn gamma_prime_on_key(
    f: &PartialCovering,
    s_b: &LinMap,
    bk: &BasisKey,
    ck: &BasisKey,
    ak: &BasisKey,
) -> Result<Element> {
    let mut out = Element::zero();
    for (tb, cb) in f.b().coproduct(bk).iter() {
        let (b1, b2) = tb.as_tensor()?;
        let sb2 = s_b.apply_key(b2)?;
        for (tc, cc) in f.c().coproduct(ck).iter() {
            let (c1, c2) = tc.as_tensor()?;
            let v = f.apply(sb2, &Element::single(c2.clone()))?;
            let prod = f.a().product_elements(&v, &Element::single(ak.clone()))?;
            let scale = cb * cc;
            for (pk, pc) in prod.iter() {
                out.add_term(
                    BasisKey::tensor(
                        b1.clone(),
                        BasisKey::tensor(c1.clone(), pk.clone()),
                    ),
                    &scale * pc,
                );
            }
        }
    }
    Ok(out)
}

/// `β` extended linearly over `A ⊗ A` tensor keys.
fn beta_apply(a: &BialgebraHandle, x: &Element) -> Result<Element> {
    let mut out = Element::zero();
    for (k, coeff) in x.iter() {
        let (u, v) = k.as_tensor()?;
        for (tu, cu) in a.coproduct(u).iter() {
            let (u1, u2) = tu.as_tensor()?;
            let prod = a.product(u2, v)?;
            let scale = coeff * cu;
            for (pk, pc) in prod.iter() {
                out.add_term(BasisKey::tensor(u1.clone(), pk.clone()), &scale * pc);
            }
        }
    }
    Ok(out)
}

/// Both verdicts for one triple: `γ(γ′(b⊗c⊗a)) = b⊗c⊗a` and the
/// intertwining `β((f⊗id)(b⊗c⊗a)) = (f⊗id)(γ(b⊗c⊗a))`.
fn triple_verdicts(
    f: &PartialCovering,
    s_b: &LinMap,
    bk: &BasisKey,
    ck: &BasisKey,
    ak: &BasisKey,
) -> Result<(bool, bool)> {
    let w = gamma_prime_on_key(f, s_b, bk, ck, ak)?;
    let back = gamma_linear(f, &w)?;
    let expected = Element::single(BasisKey::tensor(
        bk.clone(),
        BasisKey::tensor(ck.clone(), ak.clone()),
    ));
    let roundtrip = back == expected;

    let fv = f.value(bk, ck)?;
    let lhs = beta_apply(f.a(), &fv.tensor(&Element::single(ak.clone())))?;
    let mut rhs = Element::zero();
    for (tb, cb) in f.b().coproduct(bk).iter() {
        let (b1, b2) = tb.as_tensor()?;
        for (tc, cc) in f.c().coproduct(ck).iter() {
            let (c1, c2) = tc.as_tensor()?;
            let v1 = f.value(b1, c1)?;
            let v2 = f.value(b2, c2)?;
            let va = f.a().product_elements(&v2, &Element::single(ak.clone()))?;
            rhs.add_scaled(&v1.tensor(&va), &(cb * cc));
        }
    }
    Ok((roundtrip, lhs == rhs))
}

/// Verifies `γ ∘ γ′ = id` (hence `γ` surjective) and the `β`/`γ`
/// intertwining on all basis triples up to `n` on the source and index.
pub fn gamma_surjectivity(f: &PartialCovering, n: u32) -> Result<GaloisReport> {
    let mut report = galois_check(f.a())?;
    let s_b = antipode_oracle(f.b(), n)?;
    let mut gamma_ok = true;
    let mut inter_ok = true;
    let mut checked = 0;
    let mut skipped = 0;
    for bk in f.b().keys_to_degree(n) {
        for ck in f.c().keys_to_degree(n) {
            for ak in f.a().keys_to_degree(0) {
                match overflow_to_none(triple_verdicts(f, &s_b, &bk, &ck, &ak))? {
                    Some((roundtrip, intertwined)) => {
                        checked += 1;
                        gamma_ok &= roundtrip;
                        inter_ok &= intertwined;
                    }
                    None => skipped += 1,
                }
            }
        }
    }
    report.gamma_surjective = Some(gamma_ok);
    report.intertwining_ok = Some(inter_ok);
    report.triples_checked = checked;
    report.triples_skipped = skipped;
    Ok(report)
}

/// First reason `m` fails to be a coalgebra map, if any.
fn coalgebra_map_failure(m: &LinMap) -> Result<Option<String>> {
    for ck in m.source.keys_to_degree(m.bound) {
        let v = m.apply_key(&ck)?;
        if m.target.counit_element(v) != m.source.counit(&ck) {
            return Ok(Some(format!("counit mismatch at `{}`", render_key(&ck))));
        }
        let lhs = m.target.coproduct_element(v);
        let mut rhs = Element::zero();
        for (tk, coeff) in m.source.coproduct(&ck).iter() {
            let (c1, c2) = tk.as_tensor()?;
            let t = m.apply_key(c1)?.tensor(m.apply_key(c2)?);
            rhs.add_scaled(&t, coeff);
        }
        if lhs != rhs {
            return Ok(Some(format!("coproduct mismatch at `{}`", render_key(&ck))));
        }
    }
    Ok(None)
}

/// First key where `s ∗ t` misses the convolution unit, if any.
fn convolution_unit_failure(s: &LinMap, t: &LinMap) -> Result<Option<String>> {
    let conv = convolution(s, t)?;
    for ck in s.source.keys_to_degree(s.bound.min(t.bound)) {
        let expected = s.target.scaled_unit(&s.source.counit(&ck));
        let got = conv.apply_key(&ck)?;
        if *got != expected {
            return Ok(Some(format!(
                "at `{}`: {}",
                render_key(&ck),
                render_element(got)
            )));
        }
    }
    Ok(None)
}

/// The pair `φ = f(z,·), φ̄ = f(z⁻¹,·)` for an invertible grouplike point
/// `z` of the source, verified mutually convolution-inverse coalgebra maps.
pub fn point_convolution_inverse(
    f: &PartialCovering,
    z: &BasisKey,
    n: u32,
) -> Result<(LinMap, LinMap)> {
    let b = f.b();
    if !is_grouplike(b.coalgebra_handle(), z) {
        return Err(AlgebraError::Unsupported(format!(
            "`{}` is not grouplike in {}",
            render_key(z),
            b.name()
        )));
    }
    // Locate an inverse among plausible keys; a candidate whose product is
    // not even defined simply cannot be the inverse.
    let candidates: Vec<BasisKey> = if b.flags().finite_type {
        b.keys_to_degree(0)
    } else if let BasisKey::IntPower(letter, e) = z {
        vec![BasisKey::IntPower(*letter, -e)]
    } else {
        Vec::new()
    };
    let unit = b.unit().clone();
    let mut inverse = None;
    for w in candidates {
        if b.degree(&w).is_none() {
            // the nominal inverse key does not exist in this basis
            continue;
        }
        let left = match b.product(z, &w) {
            Ok(p) => p,
            Err(_) => continue,
        };
        let right = match b.product(&w, z) {
            Ok(p) => p,
            Err(_) => continue,
        };
        if left == unit && right == unit {
            inverse = Some(w);
            break;
        }
    }
    let Some(w) = inverse else {
        return Err(AlgebraError::AntipodeUnavailable {
            name: b.name().to_string(),
            reason: format!("no inverse key for grouplike `{}`", render_key(z)),
        });
    };

    let phi = LinMap::from_fn(f.c().clone(), f.a().clone(), n, |ck| f.value(z, ck))?;
    let phibar = LinMap::from_fn(f.c().clone(), f.a().clone(), n, |ck| f.value(&w, ck))?;
    if let Some(d) = coalgebra_map_failure(&phi)? {
        return Err(AlgebraError::Unsupported(format!(
            "point map at `{}` is not a coalgebra map: {d}",
            render_key(z)
        )));
    }
    if let Some(d) = coalgebra_map_failure(&phibar)? {
        return Err(AlgebraError::Unsupported(format!(
            "point map at `{}` is not a coalgebra map: {d}",
            render_key(&w)
        )));
    }
    for (s, t) in [(&phi, &phibar), (&phibar, &phi)] {
        if let Some(d) = convolution_unit_failure(s, t)? {
            return Err(AlgebraError::Unsupported(format!(
                "point maps are not mutually convolution-inverse: {d}"
            )));
        }
    }
    Ok((phi, phibar))
}

/// Verdicts of the matrix-coalgebra point checks.
#[derive(Debug, Clone, Serialize)]
pub struct PointReport {
    pub matrix_size: u32,
    /// Every diagonal image is two-sided invertible against its partner.
    pub diagonal_invertible: bool,
    /// The first map vanishes on strictly-lower cells.
    pub upper_triangular_normalized: bool,
    /// When normalized: the partner vanishes on strictly-lower cells too.
    pub vanishing_ok: Option<bool>,
    pub witnesses: Vec<String>,
}

/// Checks diagonal invertibility and the triangular vanishing pattern for a
/// mutually convolution-inverse pair of coalgebra maps out of a matrix
/// coalgebra.
pub fn point_invertibility_check(
    phi: &LinMap,
    phibar: &LinMap,
    c: &CoalgebraHandle,
) -> Result<PointReport> {
    let keys = c.keys_to_degree(0);
    let mut size = 0u32;
    for k in &keys {
        let BasisKey::MatrixCell(i, j) = k else {
            return Err(AlgebraError::Unsupported(format!(
                "`{}` is not a matrix-cell key",
                render_key(k)
            )));
        };
        size = size.max(*i).max(*j);
    }
    if keys.len() != (size as usize).pow(2) {
        return Err(AlgebraError::Unsupported(
            "matrix coalgebra basis is incomplete".into(),
        ));
    }
    if phi.source.name() != c.name() || phibar.source.name() != c.name() {
        return Err(AlgebraError::HandleMismatch(format!(
            "point maps must come out of {}",
            c.name()
        )));
    }
    if phi.target.name() != phibar.target.name() {
        return Err(AlgebraError::HandleMismatch(
            "point maps land in different algebras".into(),
        ));
    }
    let a = &phi.target;

    for (label, m) in [("first point map", phi), ("partner point map", phibar)] {
        if let Some(d) = coalgebra_map_failure(m)? {
            return Err(AlgebraError::Unsupported(format!(
                "{label} is not a coalgebra map: {d}"
            )));
        }
    }
    for (s, t) in [(phi, phibar), (phibar, phi)] {
        if let Some(d) = convolution_unit_failure(s, t)? {
            return Err(AlgebraError::Unsupported(format!(
                "point maps are not mutually convolution-inverse: {d}"
            )));
        }
    }
    // Two-sided identity in the reversed coproduct order, `Σ φ(c₂)φ̄(c₁) =
    // ε(c)·1 = Σ φ̄(c₂)φ(c₁)`; forced for coalgebra-map pairs.
    for ck in &keys {
        for (s, t) in [(phi, phibar), (phibar, phi)] {
            let mut acc = Element::zero();
            for (tk, coeff) in c.coproduct(ck).iter() {
                let (c1, c2) = tk.as_tensor()?;
                let prod = a.product_elements(s.apply_key(c2)?, t.apply_key(c1)?)?;
                acc.add_scaled(&prod, coeff);
            }
            if acc != a.scaled_unit(&c.counit(ck)) {
                return Err(AlgebraError::Unsupported(format!(
                    "point maps fail the reversed-order inverse identity at `{}`",
                    render_key(ck)
                )));
            }
        }
    }

    let unit = a.unit();
    let mut witnesses = Vec::new();
    for i in 1..=size {
        let k = BasisKey::MatrixCell(i, i);
        let x = phi.apply_key(&k)?;
        let y = phibar.apply_key(&k)?;
        let left = a.product_elements(x, y)?;
        let right = a.product_elements(y, x)?;
        if left != *unit || right != *unit {
            witnesses.push(format!(
                "diagonal image at `{}` is not invertible: {}·{} = {}",
                render_key(&k),
                render_element(x),
                render_element(y),
                render_element(&left)
            ));
        }
    }

    let mut normalized = true;
    for i in 1..=size {
        for j in 1..i {
            if !phi.apply_key(&BasisKey::MatrixCell(i, j))?.is_zero() {
                normalized = false;
            }
        }
    }
    let vanishing_ok = if normalized {
        let mut ok = true;
        for j in 1..=size {
            for i in 1..j {
                if !phibar.apply_key(&BasisKey::MatrixCell(j, i))?.is_zero() {
                    ok = false;
                }
            }
        }
        Some(ok)
    } else {
        None
    };

    Ok(PointReport {
        matrix_size: size,
        diagonal_invertible: witnesses.is_empty(),
        upper_triangular_normalized: normalized,
        vanishing_ok,
        witnesses,
    })
}

/// Outcome of attempting the structural conclusion for a covering with a
/// Hopf source: the target admits an antipode.
#[derive(Debug, Clone, Serialize)]
pub struct ConclusionReport {
    pub covering: String,
    pub checked_degree: u32,
    /// The source advertises and delivers an antipode.
    pub hypotheses_met: bool,
    pub target_antipode_found: bool,
    pub detail: String,
}

/// Attempts the antipode of the target through degree `n` as an executable
/// witness of the conclusion; for non-Hopf sources reports why the
/// hypotheses fail and cross-examines finite targets via [`galois_check`].
pub fn pointed_cover_conclusion_check(f: &PartialCovering, n: u32) -> ConclusionReport {
    let b = f.b();
    let a = f.a();
    let hypotheses_met = b.flags().hopf_claimed && antipode_oracle(b, n).is_ok();
    let target_antipode_found = antipode_oracle(a, n).is_ok();
    let detail = if hypotheses_met {
        if target_antipode_found {
            format!("antipode of {} computed through degree {n}", a.name())
        } else {
            format!(
                "hypotheses hold for {} but no antipode was found for {}",
                b.name(),
                a.name()
            )
        }
    } else {
        let mut s = format!(
            "hypotheses not satisfied: {} does not provide an antipode",
            b.name()
        );
        if a.flags().finite_type {
            match galois_check(a) {
                Ok(r) if !r.hopf => s.push_str(&format!(
                    "; the target is indeed not Hopf (Galois rank {} of {})",
                    r.beta_rank,
                    r.dimension * r.dimension
                )),
                Ok(_) => s.push_str("; the target is Hopf regardless"),
                Err(e) => s.push_str(&format!("; Galois check unavailable: {e}")),
            }
        }
        s
    };
    ConclusionReport {
        covering: f.name().to_string(),
        checked_degree: n,
        hypotheses_met,
        target_antipode_found,
        detail,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::covering::{build_set_word_covering, compose, identity_covering};
    use crate::instances::{
        build_group_algebra, build_matrix_coalgebra, build_monoid_bialgebra, build_monoid_dual,
        MonoidTable,
    };
    use crate::registry::{laurent_to_group, monoid_dual_cover, nsym_to_sym};
    use crate::text::parse_key;

    fn z2() -> BialgebraHandle {
        build_group_algebra("z2-group", &MonoidTable::cyclic(2)).unwrap()
    }

    fn s3() -> BialgebraHandle {
        build_group_algebra("s3-group", &MonoidTable::symmetric_3()).unwrap()
    }

    #[test]
    fn group_algebras_have_bijective_galois_maps() {
        let r = galois_check(&z2()).unwrap();
        assert_eq!((r.dimension, r.beta_rank), (2, 4));
        assert!(r.bijective && r.hopf);
        let r = galois_check(&s3()).unwrap();
        assert_eq!((r.dimension, r.beta_rank), (6, 36));
        assert!(r.bijective && r.hopf);
    }

    #[test]
    fn proper_monoids_fail_the_galois_rank_test_both_ways() {
        let table = MonoidTable::right_zero_adjoined();
        let dual = build_monoid_dual("monoid-dual", &table);
        let r = galois_check(&dual).unwrap();
        assert_eq!(r.dimension, 3);
        assert!(r.beta_rank < 9 && !r.bijective && !r.hopf);
        let alg = build_monoid_bialgebra("monoid-algebra", &table);
        let r = galois_check(&alg).unwrap();
        assert!(r.beta_rank < 9 && !r.bijective && !r.hopf);
    }

    #[test]
    fn infinite_handles_are_rejected() {
        let err = galois_check(nsym_to_sym(4).a()).unwrap_err();
        assert!(matches!(err, AlgebraError::NotFiniteType { .. }));
    }

    #[test]
    fn gamma_round_trips_on_the_identity_covering() {
        let f = identity_covering(&z2());
        let r = gamma_surjectivity(&f, 0).unwrap();
        assert_eq!(r.gamma_surjective, Some(true));
        assert_eq!(r.intertwining_ok, Some(true));
        assert_eq!(r.triples_checked, 4);
    }

    #[test]
    fn gamma_round_trips_on_a_windowed_group_covering() {
        let f = laurent_to_group(2, &MonoidTable::symmetric_3(), "s3-group").unwrap();
        let r = gamma_surjectivity(&f, 0).unwrap();
        assert_eq!(r.gamma_surjective, Some(true));
        assert_eq!(r.intertwining_ok, Some(true));
        assert_eq!(r.triples_checked, 5 * 6 * 6);
    }

    #[test]
    fn the_point_pair_is_the_identity_and_the_inverse_map() {
        let f = laurent_to_group(2, &MonoidTable::symmetric_3(), "s3-group").unwrap();
        let (phi, phibar) =
            point_convolution_inverse(&f, &parse_key("z^1").unwrap(), 0).unwrap();
        let r = parse_key("g(r)").unwrap();
        assert_eq!(*phi.apply_key(&r).unwrap(), Element::single(r.clone()));
        assert_eq!(
            *phibar.apply_key(&r).unwrap(),
            Element::single(parse_key("g(r2)").unwrap())
        );
    }

    #[test]
    fn the_unit_point_gives_the_convolution_unit_twice() {
        let f = laurent_to_group(2, &MonoidTable::cyclic(2), "z2-group").unwrap();
        let (phi, phibar) =
            point_convolution_inverse(&f, &parse_key("z^0").unwrap(), 0).unwrap();
        let e = LinMap::convolution_unit(f.c().clone(), f.a(), 0);
        assert!(phi.equal_to(&e));
        assert!(phibar.equal_to(&e));
    }

    #[test]
    fn a_point_without_inverse_is_rejected() {
        let f = monoid_dual_cover(4);
        let err =
            point_convolution_inverse(&f, &parse_key("z^1").unwrap(), 0).unwrap_err();
        assert!(matches!(err, AlgebraError::AntipodeUnavailable { .. }));
    }

    #[test]
    fn a_single_cell_grouplike_point_passes() {
        let c = build_matrix_coalgebra(1);
        let a = s3();
        let mut up = BTreeMap::new();
        up.insert(
            BasisKey::MatrixCell(1, 1),
            Element::single(parse_key("g(r)").unwrap()),
        );
        let mut down = BTreeMap::new();
        down.insert(
            BasisKey::MatrixCell(1, 1),
            Element::single(parse_key("g(r2)").unwrap()),
        );
        let phi = LinMap::from_table(c.clone(), a.clone(), 0, up);
        let phibar = LinMap::from_table(c.clone(), a, 0, down);
        let r = point_invertibility_check(&phi, &phibar, &c).unwrap();
        assert_eq!(r.matrix_size, 1);
        assert!(r.diagonal_invertible);
        assert!(r.upper_triangular_normalized);
        assert_eq!(r.vanishing_ok, Some(true));
    }

    #[test]
    fn a_diagonal_pair_of_involutions_passes_at_size_two() {
        let c = build_matrix_coalgebra(2);
        let a = build_group_algebra("klein-group", &MonoidTable::klein_four()).unwrap();
        let mut table = BTreeMap::new();
        table.insert(
            BasisKey::MatrixCell(1, 1),
            Element::single(parse_key("g(s)").unwrap()),
        );
        table.insert(
            BasisKey::MatrixCell(2, 2),
            Element::single(parse_key("g(t)").unwrap()),
        );
        table.insert(BasisKey::MatrixCell(1, 2), Element::zero());
        table.insert(BasisKey::MatrixCell(2, 1), Element::zero());
        let phi = LinMap::from_table(c.clone(), a.clone(), 0, table.clone());
        let phibar = LinMap::from_table(c.clone(), a, 0, table);
        let r = point_invertibility_check(&phi, &phibar, &c).unwrap();
        assert_eq!(r.matrix_size, 2);
        assert!(r.diagonal_invertible);
        assert_eq!(r.vanishing_ok, Some(true));
    }

    #[test]
    fn non_invertible_diagonal_data_fails_the_inverse_precondition() {
        let c = build_matrix_coalgebra(2);
        let a = build_monoid_bialgebra("monoid-algebra", &MonoidTable::right_zero_adjoined());
        let mut table = BTreeMap::new();
        table.insert(
            BasisKey::MatrixCell(1, 1),
            Element::single(parse_key("g(a)").unwrap()),
        );
        table.insert(
            BasisKey::MatrixCell(2, 2),
            Element::single(parse_key("g(b)").unwrap()),
        );
        table.insert(BasisKey::MatrixCell(1, 2), Element::zero());
        table.insert(BasisKey::MatrixCell(2, 1), Element::zero());
        let phi = LinMap::from_table(c.clone(), a.clone(), 0, table.clone());
        let phibar = LinMap::from_table(c.clone(), a, 0, table);
        let err = point_invertibility_check(&phi, &phibar, &c).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("convolution-inverse"), "got: {msg}");
        assert!(msg.contains("e(1,1)"), "got: {msg}");
    }

    #[test]
    fn the_composite_covering_delivers_the_target_antipode() {
        let inner = build_set_word_covering(3, 5);
        let outer = nsym_to_sym(5);
        let f = compose(&outer, &inner).unwrap();
        let r = pointed_cover_conclusion_check(&f, 4);
        assert!(r.hypotheses_met);
        assert!(r.target_antipode_found);
        assert!(r.detail.contains("antipode"));
    }

    #[test]
    fn a_non_hopf_source_reports_unmet_hypotheses() {
        let r = pointed_cover_conclusion_check(&monoid_dual_cover(4), 3);
        assert!(!r.hypotheses_met);
        assert!(!r.target_antipode_found);
        assert!(r.detail.contains("indeed not Hopf"), "got: {}", r.detail);
    }

    #[test]
    fn an_identity_covering_of_a_group_concludes_exactly() {
        let r = pointed_cover_conclusion_check(&identity_covering(&s3()), 0);
        assert!(r.hypotheses_met);
        assert!(r.target_antipode_found);
    }
}
