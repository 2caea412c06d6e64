//! Axiom verification for partial coverings: the measuring identities, the
//! coalgebra-map law, surjectivity onto the target, nondegeneracy of the
//! index coalgebra, and grading diagnostics.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::basis::BasisKey;
use crate::element::{basis_index, Element};
use crate::error::{AlgebraError, Result};
use crate::handle::split_by_degree;
use crate::linalg::SpanBuilder;
use crate::scalar::Scalar;
use crate::text::{render_element, render_key};

use super::PartialCovering;

pub(crate) const MAX_WITNESSES: usize = 8;

/// Above this many source keys, identity sweeps run on the unit, the
/// declared generators, and a deterministic stride sample instead of every
/// key.
const EXHAUSTIVE_KEY_CAP: usize = 300;

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// A stride that is coprime to `len`, for visiting indices in a scattered
/// but deterministic order.
fn coprime_stride(len: usize) -> usize {
    let mut s = 9973 % len.max(1);
    if s == 0 {
        s = 1;
    }
    while gcd(s, len) != 1 {
        s += 1;
    }
    s
}

/// The unit, the declared generators, and a stride sample, capped; the
/// whole key list when it is small enough.
pub(crate) fn sample_source_keys(f: &PartialCovering, n: u32, all: &[BasisKey]) -> Vec<BasisKey> {
    if all.len() <= EXHAUSTIVE_KEY_CAP {
        return all.to_vec();
    }
    let mut picked: Vec<BasisKey> = Vec::new();
    let mut seen: std::collections::BTreeSet<BasisKey> = std::collections::BTreeSet::new();
    let push = |k: BasisKey, picked: &mut Vec<BasisKey>, seen: &mut std::collections::BTreeSet<BasisKey>| {
        if seen.insert(k.clone()) {
            picked.push(k);
        }
    };
    if let Some(u) = f.b().unit_key() {
        push(u.clone(), &mut picked, &mut seen);
    }
    for g in f.generator_keys(n).unwrap_or_default() {
        push(g, &mut picked, &mut seen);
    }
    let stride = coprime_stride(all.len());
    let mut idx = 0usize;
    while picked.len() < EXHAUSTIVE_KEY_CAP {
        push(all[idx].clone(), &mut picked, &mut seen);
        idx = (idx + stride) % all.len();
    }
    picked
}

/// One violated identity, with its inputs and both sides rendered.
#[derive(Debug, Clone, Serialize)]
pub struct CoveringFailure {
    pub identity: String,
    pub inputs: Vec<String>,
    pub lhs: String,
    pub rhs: String,
}

/// Span of the covering's values against the target, per degree.
#[derive(Debug, Clone, Serialize)]
pub struct DegreeRank {
    pub degree: u32,
    pub achieved: usize,
    pub target: usize,
}

/// Outcome of sweeping the covering axioms up to a degree bound.
#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub covering: String,
    pub checked_degree: u32,
    pub measuring_ok: bool,
    pub coalgebra_map_ok: bool,
    pub surjective_ok: bool,
    pub witnesses: Vec<CoveringFailure>,
    pub surjectivity_ranks: Vec<DegreeRank>,
    pub first_missed: Option<String>,
    /// Identity instances skipped because a product left a finite window.
    pub skipped: usize,
    /// Source keys the identity sweeps ran on; below the total when the
    /// source is too large for an exhaustive sweep.
    pub source_keys_checked: usize,
    pub source_keys_total: usize,
}

impl VerificationReport {
    /// True when every swept identity held and the values span the target.
    pub fn all_ok(&self) -> bool {
        self.measuring_ok && self.coalgebra_map_ok && self.surjective_ok
    }
}

pub(crate) fn overflow_to_none<T>(r: Result<T>) -> Result<Option<T>> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(AlgebraError::WindowOverflow { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

/// Sweeps the defining identities of a covering on all key pairs up to
/// degree `n` and measures per-degree surjectivity onto the target.
pub fn verify_covering(f: &PartialCovering, n: u32) -> Result<VerificationReport> {
    let b = f.b().clone();
    let a = f.a().clone();
    let c = f.c().clone();
    let b_all = b.keys_to_degree(n);
    let b_keys = sample_source_keys(f, n, &b_all);
    let source_keys_total = b_all.len();
    let source_keys_checked = b_keys.len();
    drop(b_all);
    let c_keys = c.keys_to_degree(n);

    let mut witnesses = Vec::new();
    let mut skipped = 0usize;
    let mut measuring_ok = true;
    let mut coalgebra_map_ok = true;

    let record = |witnesses: &mut Vec<CoveringFailure>, w: CoveringFailure| {
        if witnesses.len() < MAX_WITNESSES {
            witnesses.push(w);
        }
    };

    // Unit values: f(1 ⊗ c) = ε(c)·1.
    for ck in &c_keys {
        let lhs = match overflow_to_none(f.apply(b.unit(), &Element::single(ck.clone())))? {
            Some(v) => v,
            None => {
                skipped += 1;
                continue;
            }
        };
        let rhs = a.scaled_unit(&c.counit(ck));
        if lhs != rhs {
            measuring_ok = false;
            record(
                &mut witnesses,
                CoveringFailure {
                    identity: "unit-value".into(),
                    inputs: vec![render_key(ck)],
                    lhs: render_element(&lhs),
                    rhs: render_element(&rhs),
                },
            );
        }
    }

    // Products: f(xy ⊗ c) = Σ f(x⊗c₁) f(y⊗c₂).
    let graded_b = b.flags().graded;
    for x in &b_keys {
        for y in &b_keys {
            if graded_b {
                if let (Some(dx), Some(dy)) = (b.degree(x), b.degree(y)) {
                    if dx + dy > n {
                        continue;
                    }
                }
            }
            let Some(prod) = overflow_to_none(b.product(x, y))? else {
                skipped += 1;
                continue;
            };
            'c_loop: for ck in &c_keys {
                let Some(lhs) = overflow_to_none(f.apply(&prod, &Element::single(ck.clone())))?
                else {
                    skipped += 1;
                    continue;
                };
                let mut rhs = Element::zero();
                for (t, coeff) in c.coproduct(ck).iter() {
                    let (c1, c2) = t.as_tensor()?;
                    let Some(vx) = overflow_to_none(f.value(x, c1))? else {
                        skipped += 1;
                        continue 'c_loop;
                    };
                    if vx.is_zero() {
                        continue;
                    }
                    let Some(vy) = overflow_to_none(f.value(y, c2))? else {
                        skipped += 1;
                        continue 'c_loop;
                    };
                    if vy.is_zero() {
                        continue;
                    }
                    let Some(p) = overflow_to_none(a.product_elements(&vx, &vy))? else {
                        skipped += 1;
                        continue 'c_loop;
                    };
                    rhs.add_scaled(&p, coeff);
                }
                if lhs != rhs {
                    measuring_ok = false;
                    record(
                        &mut witnesses,
                        CoveringFailure {
                            identity: "measuring-product".into(),
                            inputs: vec![render_key(x), render_key(y), render_key(ck)],
                            lhs: render_element(&lhs),
                            rhs: render_element(&rhs),
                        },
                    );
                }
            }
        }
    }

    // Coalgebra map: Δ(f(b⊗c)) = Σ f(b₁⊗c₁) ⊗ f(b₂⊗c₂), and counits match.
    for bk in &b_keys {
        for ck in &c_keys {
            let Some(v) = overflow_to_none(f.value(bk, ck))? else {
                skipped += 1;
                continue;
            };
            let lhs = a.coproduct_element(&v);
            let mut rhs = Element::zero();
            let mut unavailable = false;
            'outer: for (tb, cb) in b.coproduct(bk).iter() {
                let (b1, b2) = tb.as_tensor()?;
                for (tc, cc) in c.coproduct(ck).iter() {
                    let (c1, c2) = tc.as_tensor()?;
                    let Some(v1) = overflow_to_none(f.value(b1, c1))? else {
                        unavailable = true;
                        break 'outer;
                    };
                    if v1.is_zero() {
                        continue;
                    }
                    let Some(v2) = overflow_to_none(f.value(b2, c2))? else {
                        unavailable = true;
                        break 'outer;
                    };
                    rhs.add_scaled(&v1.tensor(&v2), &(cb * cc));
                }
            }
            if unavailable {
                skipped += 1;
                continue;
            }
            if lhs != rhs {
                coalgebra_map_ok = false;
                record(
                    &mut witnesses,
                    CoveringFailure {
                        identity: "coalgebra-map-coproduct".into(),
                        inputs: vec![render_key(bk), render_key(ck)],
                        lhs: render_element(&lhs),
                        rhs: render_element(&rhs),
                    },
                );
            }
            let eps_lhs = a.counit_element(&v);
            let eps_rhs = &b.counit(bk) * &c.counit(ck);
            if eps_lhs != eps_rhs {
                coalgebra_map_ok = false;
                record(
                    &mut witnesses,
                    CoveringFailure {
                        identity: "coalgebra-map-counit".into(),
                        inputs: vec![render_key(bk), render_key(ck)],
                        lhs: eps_lhs.to_string(),
                        rhs: eps_rhs.to_string(),
                    },
                );
            }
        }
    }

    // Surjectivity: the values must span each component of the target.
    let (surjectivity_ranks, first_missed) = surjectivity_sweep(f, n, &c_keys, &mut skipped)?;
    let surjective_ok = surjectivity_ranks
        .iter()
        .all(|r| r.achieved == r.target);

    Ok(VerificationReport {
        covering: f.name().to_string(),
        checked_degree: n,
        measuring_ok,
        coalgebra_map_ok,
        surjective_ok,
        witnesses,
        surjectivity_ranks,
        first_missed,
        skipped,
        source_keys_checked,
        source_keys_total,
    })
}

/// Sweeps every source key against every index key, feeding per-degree
/// span builders; source keys are visited degree by degree in a scattered
/// deterministic order, and the sweep stops as soon as every component is
/// spanned.
fn surjectivity_sweep(
    f: &PartialCovering,
    n: u32,
    c_keys: &[BasisKey],
    skipped: &mut usize,
) -> Result<(Vec<DegreeRank>, Option<String>)> {
    let a = f.a();
    let b = f.b();
    struct Slot {
        builder: SpanBuilder,
        keys: Vec<BasisKey>,
        index: BTreeMap<BasisKey, usize>,
    }
    let degrees: Vec<u32> = if a.flags().graded {
        (0..=n).collect()
    } else {
        vec![0]
    };
    let mut slots: BTreeMap<u32, Slot> = BTreeMap::new();
    for &d in &degrees {
        let keys = if a.flags().graded {
            a.basis_at(d)
        } else {
            a.keys_to_degree(n)
        };
        let index = basis_index(&keys);
        slots.insert(
            d,
            Slot {
                builder: SpanBuilder::new(keys.len()),
                keys,
                index,
            },
        );
    }
    let a_coalg = a.coalgebra_handle();
    let batches: Vec<Vec<BasisKey>> = if b.flags().finite_type {
        vec![b.basis_at(0)]
    } else {
        (0..=n).map(|d| b.basis_at(d)).collect()
    };
    'sweep: for batch in &batches {
        if batch.is_empty() {
            continue;
        }
        let stride = coprime_stride(batch.len());
        let mut idx = 0usize;
        for _ in 0..batch.len() {
            let bk = &batch[idx];
            idx = (idx + stride) % batch.len();
            if slots.values().all(|s| s.builder.is_full()) {
                break 'sweep;
            }
            for ck in c_keys {
                let Some(v) = overflow_to_none(f.value(bk, ck))? else {
                    *skipped += 1;
                    continue;
                };
                if v.is_zero() {
                    continue;
                }
                if a.flags().graded {
                    for (d, comp) in split_by_degree(a_coalg, &v)? {
                        let Some(slot) = slots.get_mut(&d) else {
                            continue;
                        };
                        if slot.builder.is_full() {
                            continue;
                        }
                        let coords = comp.coords(&slot.index, slot.keys.len())?;
                        slot.builder.add(coords);
                    }
                } else {
                    let slot = slots.get_mut(&0).expect("degree-0 slot");
                    if slot.builder.is_full() {
                        continue;
                    }
                    let coords = v.coords(&slot.index, slot.keys.len())?;
                    slot.builder.add(coords);
                }
            }
        }
    }
    let mut ranks = Vec::new();
    let mut first_missed = None;
    for (&d, slot) in &slots {
        ranks.push(DegreeRank {
            degree: d,
            achieved: slot.builder.rank(),
            target: slot.keys.len(),
        });
        if first_missed.is_none() && slot.builder.rank() < slot.keys.len() {
            for (i, key) in slot.keys.iter().enumerate() {
                let mut unit = vec![Scalar::from_int(0); slot.keys.len()];
                unit[i] = Scalar::from_int(1);
                if !slot.builder.contains(&unit) {
                    first_missed = Some(render_key(key));
                    break;
                }
            }
        }
    }
    Ok((ranks, first_missed))
}

/// Kernel of `c ↦ f(-, c)` on the index coalgebra, up to degree `n`.
#[derive(Debug, Clone, Serialize)]
pub struct NondegeneracyReport {
    pub covering: String,
    pub checked_degree: u32,
    pub nondegenerate: bool,
    pub kernel_dimension: usize,
    pub kernel_witnesses: Vec<String>,
}

/// Reports whether distinct index elements give distinct maps `B → A`,
/// within the swept degrees.
///
/// An empty kernel is conclusive for the swept keys; on sources too large
/// to sweep exhaustively, kernel vectors are relative to the sampled keys.
pub fn nondegeneracy_report(f: &PartialCovering, n: u32) -> Result<NondegeneracyReport> {
    let b_all = f.b().keys_to_degree(n);
    let b_keys = sample_source_keys(f, n, &b_all);
    drop(b_all);
    let c_keys = f.c().keys_to_degree(n);
    // Rows are (b key, target key) pairs discovered from the values; each
    // column is one index key.
    let mut row_index: BTreeMap<(BasisKey, BasisKey), usize> = BTreeMap::new();
    let mut columns: Vec<BTreeMap<usize, Scalar>> = Vec::new();
    for ck in &c_keys {
        let mut col = BTreeMap::new();
        for bk in &b_keys {
            let v = match overflow_to_none(f.value(bk, ck))? {
                Some(v) => v,
                None => continue,
            };
            for (ak, coeff) in v.iter() {
                let next = row_index.len();
                let r = *row_index
                    .entry((bk.clone(), ak.clone()))
                    .or_insert(next);
                col.insert(r, coeff.clone());
            }
        }
        columns.push(col);
    }
    let rows = row_index.len();
    let mut mat = crate::linalg::DenseMatrix::zeros(rows.max(1), c_keys.len());
    for (j, col) in columns.iter().enumerate() {
        for (&i, v) in col {
            mat.set(i, j, v.clone());
        }
    }
    let kernel = mat.kernel_basis();
    let mut kernel_witnesses = Vec::new();
    for vec in kernel.iter().take(MAX_WITNESSES) {
        let mut w = Element::zero();
        for (j, coeff) in vec.iter().enumerate() {
            if !coeff.is_zero() {
                w.add_term(c_keys[j].clone(), coeff.clone());
            }
        }
        kernel_witnesses.push(render_element(&w));
    }
    Ok(NondegeneracyReport {
        covering: f.name().to_string(),
        checked_degree: n,
        nondegenerate: kernel.is_empty(),
        kernel_dimension: kernel.len(),
        kernel_witnesses,
    })
}

/// Verdict on local finiteness of a covering within the inspection bound.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum LocalFiniteness {
    /// Certified by the shape of the defining rule.
    Structural,
    /// Every index key kills the whole top swept degree of the source.
    HoldsUpToBound,
    /// Some value survives at the top swept degree.
    FailsAtBound { c: String, b: String },
}

/// Grading diagnostics for a covering.
#[derive(Debug, Clone, Serialize)]
pub struct GradingReport {
    pub covering: String,
    pub checked_degree: u32,
    /// `f(B_n ⊗ C) ⊆ A_n`; absent when source or target is ungraded.
    pub graded: Option<bool>,
    /// `f(B_n ⊗ C_m) = 0` unless `n = m`, landing in `A_n`; absent when a
    /// degree is undefined somewhere.
    pub bigraded: Option<bool>,
    pub locally_finite: Option<LocalFiniteness>,
    pub notes: Vec<String>,
}

/// Sweeps degree behaviour of the values up to degree `n`.
pub fn grading_report(f: &PartialCovering, n: u32) -> Result<GradingReport> {
    let b = f.b().clone();
    let a = f.a().clone();
    let c = f.c().clone();
    let mut notes = Vec::new();
    let b_all = b.keys_to_degree(n);
    let b_keys = sample_source_keys(f, n, &b_all);
    drop(b_all);
    let c_keys = c.keys_to_degree(n);
    let both_graded = a.flags().graded && b.flags().graded;

    let mut graded = None;
    let mut bigraded = None;
    if both_graded {
        let mut graded_ok = true;
        let mut bigraded_ok = true;
        let mut c_degree_known = true;
        let mut mismatch_at_zero = false;
        let a_coalg = a.coalgebra_handle();
        'sweep: for bk in &b_keys {
            let Some(db) = b.degree(bk) else {
                continue;
            };
            for ck in &c_keys {
                let v = match overflow_to_none(f.value(bk, ck))? {
                    Some(v) => v,
                    None => continue,
                };
                if v.is_zero() {
                    continue;
                }
                let parts = split_by_degree(a_coalg, &v)?;
                if parts.len() != 1 || !parts.contains_key(&db) {
                    graded_ok = false;
                    notes.push(format!(
                        "value at ({}, {}) is not concentrated in the source degree {}",
                        render_key(bk),
                        render_key(ck),
                        db
                    ));
                    break 'sweep;
                }
                match c.degree(ck) {
                    None => c_degree_known = false,
                    Some(dc) if dc != db => {
                        if bigraded_ok {
                            bigraded_ok = false;
                            if dc == 0 {
                                mismatch_at_zero = true;
                            }
                            notes.push(format!(
                                "nonzero value at ({}, {}) with source degree {} and index degree {}",
                                render_key(bk),
                                render_key(ck),
                                db,
                                dc
                            ));
                        }
                    }
                    Some(_) => {}
                }
            }
        }
        graded = Some(graded_ok);
        bigraded = if graded_ok && c_degree_known {
            Some(bigraded_ok)
        } else {
            None
        };
        if mismatch_at_zero {
            notes.push(
                "the index coalgebra sits in degree 0, so positive-degree values force the \
                 bigraded check to fail"
                    .into(),
            );
        }
    } else {
        notes.push("source or target is ungraded; degree checks do not apply".into());
    }

    // Local finiteness: fixed index keys must kill high source degrees.
    let locally_finite = if f.locally_finite_structural() {
        Some(LocalFiniteness::Structural)
    } else if b.flags().finite_type {
        notes.push(
            "source basis is finite; local finiteness is not meaningful and is not reported"
                .into(),
        );
        None
    } else {
        let mut top = b.basis_at(n);
        if top.len() > EXHAUSTIVE_KEY_CAP {
            let stride = coprime_stride(top.len());
            let mut picked = Vec::with_capacity(EXHAUSTIVE_KEY_CAP);
            let mut idx = 0usize;
            for _ in 0..EXHAUSTIVE_KEY_CAP {
                picked.push(top[idx].clone());
                idx = (idx + stride) % top.len();
            }
            top = picked;
        }
        if top.is_empty() {
            notes.push(format!("source has no keys at degree {n}; local finiteness unmeasured").into());
            None
        } else {
            let mut verdict = LocalFiniteness::HoldsUpToBound;
            'lf: for ck in &c_keys {
                for bk in &top {
                    let v = match overflow_to_none(f.value(bk, ck))? {
                        Some(v) => v,
                        None => continue,
                    };
                    if !v.is_zero() {
                        verdict = LocalFiniteness::FailsAtBound {
                            c: render_key(ck),
                            b: render_key(bk),
                        };
                        break 'lf;
                    }
                }
            }
            Some(verdict)
        }
    };

    Ok(GradingReport {
        covering: f.name().to_string(),
        checked_degree: n,
        graded,
        bigraded,
        locally_finite,
        notes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::covering::identity_covering;
    use crate::instances::build_sym;
    use crate::registry;

    #[test]
    fn complete_to_symmetric_covering_passes_all_checks() {
        let f = registry::nsym_to_sym(5);
        let rep = verify_covering(&f, 5).unwrap();
        assert!(rep.all_ok(), "witnesses: {:?}", rep.witnesses);
        assert_eq!(rep.skipped, 0);
        for r in &rep.surjectivity_ranks {
            assert_eq!(r.achieved, r.target, "degree {}", r.degree);
        }
        assert!(rep.first_missed.is_none());
    }

    #[test]
    fn grouplike_to_quasishuffle_covering_first_misses_at_degree_three() {
        let f = registry::poly_to_qsym(4);
        let rep = verify_covering(&f, 4).unwrap();
        assert!(rep.measuring_ok);
        // A grouplike generator over a non-cocommutative target measures but
        // is not a coalgebra map: the unit-length value of `z` vanishes, so
        // the convolution side of the coproduct identity collapses.
        assert!(!rep.coalgebra_map_ok);
        assert!(rep
            .witnesses
            .iter()
            .any(|w| w.identity == "coalgebra-map-coproduct" && w.inputs == ["z^1", "M1"]));
        assert!(!rep.surjective_ok);
        // Degrees 0–2 are covered; rank drops first at degree 3.
        let by_degree: BTreeMap<u32, (usize, usize)> = rep
            .surjectivity_ranks
            .iter()
            .map(|r| (r.degree, (r.achieved, r.target)))
            .collect();
        assert_eq!(by_degree[&0], (1, 1));
        assert_eq!(by_degree[&1], (1, 1));
        assert_eq!(by_degree[&2], (2, 2));
        assert_eq!(by_degree[&3], (3, 4));
        assert_eq!(rep.first_missed.as_deref(), Some("M[1,2]"));
    }

    #[test]
    fn identity_covering_is_graded_but_not_bigraded() {
        let f = identity_covering(&build_sym());
        let rep = verify_covering(&f, 4).unwrap();
        assert!(rep.all_ok());
        let g = grading_report(&f, 4).unwrap();
        assert_eq!(g.graded, Some(true));
        assert_eq!(g.bigraded, Some(false));
        assert!(g
            .notes
            .iter()
            .any(|n| n.contains("index coalgebra sits in degree 0")));
        assert!(matches!(
            g.locally_finite,
            Some(LocalFiniteness::FailsAtBound { .. })
        ));
    }

    #[test]
    fn decree_coverings_report_structural_local_finiteness() {
        let f = registry::nsym_to_sym(4);
        let g = grading_report(&f, 4).unwrap();
        assert_eq!(g.graded, Some(true));
        assert_eq!(g.bigraded, Some(true));
        assert_eq!(g.locally_finite, Some(LocalFiniteness::Structural));
    }

    #[test]
    fn nondegeneracy_detects_a_redundant_point() {
        let f = registry::nsym_to_sym(4);
        let rep = nondegeneracy_report(&f, 4).unwrap();
        assert!(rep.nondegenerate);
        assert_eq!(rep.kernel_dimension, 0);

        // Two points carrying the same map: their difference is killed.
        let sym = build_sym();
        let mut table = std::collections::BTreeMap::new();
        for k in sym.keys_to_degree(3) {
            table.insert(k.clone(), Element::single(k));
        }
        let dup = crate::covering::from_morphism_family(
            "dup",
            &sym,
            &sym,
            &[("u".into(), table.clone()), ("v".into(), table)],
            3,
        )
        .unwrap();
        let rep = nondegeneracy_report(&dup, 3).unwrap();
        assert!(!rep.nondegenerate);
        assert_eq!(rep.kernel_dimension, 1);
        assert_eq!(rep.kernel_witnesses, vec!["-u + v".to_string()]);
    }
}
