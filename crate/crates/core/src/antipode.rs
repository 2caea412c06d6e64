//! Antipodes by three independent routes, and the first Eulerian
//! idempotent.
//!
//! * A geometric-series evaluation of convolution inverses for graded
//!   connected handles, per key.
//! * A degree-by-degree recursion for graded connected handles.
//! * A full linear solve of `S ∗ id = uε` for finite-type handles.
//!
//! The routes are implemented separately so each can serve as an oracle
//! for the others.

use std::collections::BTreeMap;

use crate::basis::BasisKey;
use crate::element::{basis_index, Element};
use crate::error::{AlgebraError, Result};
use crate::handle::BialgebraHandle;
use crate::linalg::DenseMatrix;
use crate::linmap::{convolution, LinMap};
use crate::scalar::Scalar;

fn require_graded_connected(h: &BialgebraHandle, operation: &str) -> Result<()> {
    if !h.flags().graded {
        return Err(AlgebraError::NotGraded {
            name: h.name().to_string(),
            operation: operation.into(),
        });
    }
    if !h.flags().connected {
        return Err(AlgebraError::NotConnected {
            name: h.name().to_string(),
            operation: operation.into(),
        });
    }
    Ok(())
}

/// `π = id − uε` applied to one basis key.
fn augmentation_projection(h: &BialgebraHandle, k: &BasisKey) -> Element {
    let mut out = Element::single(k.clone());
    let e = h.counit(k);
    if !e.is_zero() {
        out.add_scaled(h.unit(), &-&e);
    }
    out
}

/// `π^{∗r}(key)`: split into `r` tensor factors, apply `π` to each,
/// multiply back together.
fn projection_power_on_key(h: &BialgebraHandle, key: &BasisKey, r: u32) -> Result<Element> {
    if r == 0 {
        return Ok(h.scaled_unit(&h.counit(key)));
    }
    let split = h.iterated_coproduct(key, r);
    let mut acc = Element::zero();
    for (t, c) in split.iter() {
        let factors = t.flatten_tensor();
        let mut prod = augmentation_projection(h, factors[0]);
        for f in &factors[1..] {
            if prod.is_zero() {
                break;
            }
            prod = h.product_elements(&prod, &augmentation_projection(h, f))?;
        }
        acc.add_scaled(&prod, c);
    }
    Ok(acc)
}

/// Antipode on one key of a graded connected handle via the geometric
/// series `S = Σ_{r≥0} (−1)^r π^{∗r}`, which terminates beyond the key's
/// degree.
pub fn antipode_on_key(h: &BialgebraHandle, key: &BasisKey) -> Result<Element> {
    require_graded_connected(h, "antipode (series)")?;
    let deg = h.degree(key).ok_or_else(|| AlgebraError::UnknownKey {
        key: crate::text::render_key(key),
        context: format!("basis of {}", h.name()),
    })?;
    // r stops at the degree because π^{∗r} kills all keys of degree < r.
    let mut acc = Element::zero();
    let mut sign = Scalar::one();
    for r in 0..=deg {
        acc.add_scaled(&projection_power_on_key(h, key, r)?, &sign);
        sign = -&sign;
    }
    Ok(acc)
}

/// Antipode of a graded connected handle via the terminating geometric
/// series, materialized on all keys of degree ≤ `bound` and verified as a
/// two-sided convolution inverse of the identity.
pub fn takeuchi_antipode(h: &BialgebraHandle, bound: u32) -> Result<LinMap> {
    require_graded_connected(h, "antipode (series)")?;
    let s = LinMap::from_fn(h.as_coalgebra(), h.clone(), bound, |k| {
        antipode_on_key(h, k)
    })?;
    verify_two_sided(h, &s, bound)?;
    Ok(s)
}

fn verify_two_sided(h: &BialgebraHandle, s: &LinMap, bound: u32) -> Result<()> {
    let id = LinMap::identity(h, bound);
    let unit = LinMap::convolution_unit(h.as_coalgebra(), h, bound);
    let left = convolution(s, &id)?;
    if !left.equal_to(&unit) {
        return Err(AlgebraError::NotHopf {
            name: h.name().to_string(),
            detail: "candidate antipode is not a left convolution inverse".into(),
        });
    }
    let right = convolution(&id, s)?;
    if !right.equal_to(&unit) {
        return Err(AlgebraError::NotHopf {
            name: h.name().to_string(),
            detail: "candidate antipode is not a right convolution inverse".into(),
        });
    }
    Ok(())
}

/// Antipode of a graded connected handle by the degreewise recursion
/// `S(x) = −x − Σ S(x′)·x″` over coproduct terms with both slots of
/// positive degree, verified as a two-sided inverse.
pub fn antipode_by_recursion(h: &BialgebraHandle, bound: u32) -> Result<LinMap> {
    require_graded_connected(h, "antipode (recursion)")?;
    let mut table: BTreeMap<BasisKey, Element> = BTreeMap::new();
    for d in 0..=bound {
        for k in h.basis_at(d) {
            if d == 0 {
                // Connected: the degree-0 key is the unit, S(1) = 1.
                table.insert(k.clone(), Element::single(k.clone()));
                continue;
            }
            // Drop the k⊗1 term; among the rest, 1⊗k contributes −k.
            let mut s = Element::zero();
            for (t, c) in h.coproduct(&k).iter() {
                let (a, b) = t.as_tensor()?;
                if h.degree(b).unwrap_or(0) == 0 {
                    continue;
                }
                let sa = table.get(a).ok_or_else(|| AlgebraError::MissingEntry(format!(
                    "antipode of {} needed before its degree",
                    crate::text::render_key(a)
                )))?;
                let prod = h.product_elements(sa, &Element::single(b.clone()))?;
                s.add_scaled(&prod, &-c);
            }
            table.insert(k, s);
        }
    }
    let s = LinMap::from_table(h.as_coalgebra(), h.clone(), bound, table);
    verify_two_sided(h, &s, bound)?;
    Ok(s)
}

/// Antipode of a finite-type handle by solving the linear system
/// `S ∗ id = uε` and checking the other side.
///
/// Unknown coefficients whose defining products overflow a finite window
/// are pinned to zero (their equations cannot hold with a nonzero value),
/// which keeps windowed handles solvable.
pub fn antipode_full_solve(h: &BialgebraHandle) -> Result<LinMap> {
    if !h.flags().finite_type {
        return Err(AlgebraError::NotFiniteType {
            name: h.name().to_string(),
            operation: "antipode (full solve)".into(),
        });
    }
    let keys = h.keys_to_degree(0);
    let dim = keys.len();
    let index = basis_index(&keys);
    // Unknowns: x[(a, m)] = coefficient of m in S(a), flattened a*dim + m.
    let unknown = |a: usize, m: usize| a * dim + m;
    let mut forbidden = vec![false; dim * dim];
    // One equation per (key, output key) pair: the output-key coefficient of
    // Σ_{Δk = Σ c·a⊗b} Σ_m x[a,m] · c · (m·b) must equal that of ε(k)·1.
    let mut entries: Vec<(usize, usize, usize, Scalar)> = Vec::new(); // (key, unknown, output, coeff)
    for (ki, k) in keys.iter().enumerate() {
        for (t, c) in h.coproduct(k).iter() {
            let (a, b) = t.as_tensor()?;
            let ai = *index.get(a).ok_or_else(|| AlgebraError::UnknownKey {
                key: crate::text::render_key(a),
                context: "finite basis".into(),
            })?;
            for (mi, m) in keys.iter().enumerate() {
                match h.product(m, b) {
                    Ok(prod) => {
                        for (out, pc) in prod.iter() {
                            let oi = *index.get(out).ok_or_else(|| AlgebraError::UnknownKey {
                                key: crate::text::render_key(out),
                                context: "finite basis".into(),
                            })?;
                            entries.push((ki, unknown(ai, mi), oi, c * pc));
                        }
                    }
                    Err(AlgebraError::WindowOverflow { .. }) => {
                        // A nonzero coefficient here would leave the window.
                        forbidden[unknown(ai, mi)] = true;
                    }
                    Err(e) => return Err(e),
                }
            }
        }
    }
    // Assemble the dense system over allowed unknowns.
    let allowed: Vec<usize> = (0..dim * dim).filter(|&u| !forbidden[u]).collect();
    let col_of: BTreeMap<usize, usize> = allowed
        .iter()
        .enumerate()
        .map(|(c, &u)| (u, c))
        .collect();
    let nrows = dim * dim;
    let mut m = DenseMatrix::zeros(nrows, allowed.len());
    let mut rhs = vec![Scalar::zero(); nrows];
    for (ki, u, oi, c) in entries {
        if forbidden[u] {
            continue;
        }
        let row = ki * dim + oi;
        let col = col_of[&u];
        let cur = m.at(row, col).clone();
        m.set(row, col, &cur + &c);
    }
    for (ki, k) in keys.iter().enumerate() {
        let target = h.scaled_unit(&h.counit(k));
        for (out, c) in target.iter() {
            let oi = index[out];
            rhs[ki * dim + oi] = c.clone();
        }
    }
    let solution = m.solve(&rhs)?.ok_or_else(|| AlgebraError::NotHopf {
        name: h.name().to_string(),
        detail: "the left-inverse system S ∗ id = uε is inconsistent".into(),
    })?;
    let mut table: BTreeMap<BasisKey, Element> = BTreeMap::new();
    for (ai, a) in keys.iter().enumerate() {
        let mut val = Element::zero();
        for (mi, mkey) in keys.iter().enumerate() {
            let u = unknown(ai, mi);
            if forbidden[u] {
                continue;
            }
            let c = &solution[col_of[&u]];
            if !c.is_zero() {
                val.add_term(mkey.clone(), c.clone());
            }
        }
        table.insert(a.clone(), val);
    }
    let s = LinMap::from_table(h.as_coalgebra(), h.clone(), 0, table);
    verify_two_sided(h, &s, 0)?;
    Ok(s)
}

/// The antipode by the route appropriate to the handle's shape: the
/// terminating series for graded connected handles, the full solve for
/// finite-type handles, an error otherwise.
pub fn antipode_oracle(h: &BialgebraHandle, bound: u32) -> Result<LinMap> {
    let f = h.flags();
    if f.graded && f.connected {
        takeuchi_antipode(h, bound)
    } else if f.finite_type {
        antipode_full_solve(h)
    } else {
        Err(AlgebraError::AntipodeUnavailable {
            name: h.name().to_string(),
            reason: "neither graded connected nor of finite type".into(),
        })
    }
}

/// The first Eulerian idempotent `e₁ = Σ_{r≥1} (−1)^{r+1} π^{∗r} / r` on
/// one basis key of a graded connected handle (the convolution logarithm
/// of the identity; the series terminates beyond the key's degree).
pub fn eulerian_on_key(h: &BialgebraHandle, key: &BasisKey) -> Result<Element> {
    require_graded_connected(h, "Eulerian idempotent")?;
    let deg = h.degree(key).ok_or_else(|| AlgebraError::UnknownKey {
        key: crate::text::render_key(key),
        context: format!("basis of {}", h.name()),
    })?;
    let mut acc = Element::zero();
    for r in 1..=deg {
        let sign = if r % 2 == 1 {
            Scalar::new(1, r as i64)
        } else {
            Scalar::new(-1, r as i64)
        };
        acc.add_scaled(&projection_power_on_key(h, key, r)?, &sign);
    }
    Ok(acc)
}

/// The first Eulerian idempotent materialized on all keys of degree ≤
/// `bound`.
pub fn eulerian_projection(h: &BialgebraHandle, bound: u32) -> Result<LinMap> {
    LinMap::from_fn(h.as_coalgebra(), h.clone(), bound, |k| eulerian_on_key(h, k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::*;
    use crate::text::{parse_element, parse_key};

    #[test]
    fn antipode_on_complete_generators_matches_hand_computation() {
        let h = build_nsym();
        let s = takeuchi_antipode(&h, 3).unwrap();
        assert_eq!(
            s.apply_key(&parse_key("H2").unwrap()).unwrap(),
            &parse_element("H[1,1] - H2").unwrap()
        );
        assert_eq!(
            s.apply_key(&parse_key("H3").unwrap()).unwrap(),
            &parse_element("-H[1,1,1] + H[1,2] + H[2,1] - H3").unwrap()
        );
    }

    #[test]
    fn series_and_recursion_agree_on_three_handles() {
        for (h, n) in [(build_nsym(), 5), (build_sym(), 4), (build_qsym(), 4)] {
            let a = takeuchi_antipode(&h, n).unwrap();
            let b = antipode_by_recursion(&h, n).unwrap();
            assert!(a.equal_to(&b), "{}", h.name());
        }
    }

    #[test]
    fn power_sum_antipode_is_sign_by_length() {
        let h = build_sym();
        let s = takeuchi_antipode(&h, 4).unwrap();
        for k in h.keys_to_degree(4) {
            let BasisKey::Partition(parts) = &k else { panic!() };
            let sign = if parts.len() % 2 == 0 { 1 } else { -1 };
            assert_eq!(
                s.apply_key(&k).unwrap(),
                &Element::term(k.clone(), Scalar::from_int(sign))
            );
        }
    }

    #[test]
    fn full_solve_inverts_grouplikes() {
        let t = MonoidTable::symmetric_3();
        let g = build_group_algebra("s3", &t).unwrap();
        let s = antipode_full_solve(&g).unwrap();
        // S(g) = g⁻¹ on grouplikes.
        for (i, sym) in t.symbols().iter().enumerate() {
            let k = BasisKey::monoid_elem(sym.clone());
            let inv = t.symbols()[t.inverse(i).unwrap()].clone();
            assert_eq!(
                s.apply_key(&k).unwrap(),
                &Element::single(BasisKey::monoid_elem(inv))
            );
        }
    }

    #[test]
    fn full_solve_respects_the_laurent_window() {
        let h = build_laurent_point(3);
        let s = antipode_full_solve(&h).unwrap();
        for e in -3i64..=3 {
            let k = parse_key(&format!("z^{e}")).unwrap();
            let expect = parse_element(&format!("z^{}", -e)).unwrap();
            assert_eq!(s.apply_key(&k).unwrap(), &expect);
        }
    }

    #[test]
    fn non_hopf_handles_are_rejected() {
        let kz = build_poly_point();
        let err = antipode_oracle(&kz, 3).unwrap_err();
        assert!(matches!(err, AlgebraError::AntipodeUnavailable { .. }));
        let t = MonoidTable::right_zero_adjoined();
        let m = build_monoid_bialgebra("monoid-algebra", &t);
        let err = antipode_full_solve(&m).unwrap_err();
        assert!(matches!(err, AlgebraError::NotHopf { .. }));
    }

    #[test]
    fn eulerian_kills_decomposables_and_fixes_primitives() {
        let h = build_sym();
        let e1 = eulerian_projection(&h, 4).unwrap();
        // Products of positive-degree elements vanish.
        assert!(e1
            .apply_key(&parse_key("p[2,1]").unwrap())
            .unwrap()
            .is_zero());
        // Single power sums are primitive and fixed.
        assert_eq!(
            e1.apply_key(&parse_key("p3").unwrap()).unwrap(),
            &parse_element("p3").unwrap()
        );
        // Idempotent on the degree-3 component.
        for k in h.basis_at(3) {
            let v = e1.apply_key(&k).unwrap().clone();
            let again = e1.apply(&v).unwrap();
            assert_eq!(again, v);
        }
    }
}
