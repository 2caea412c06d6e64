//! Transfer of structure along a partial covering `f: B ⊗ C → A`: linear
//! sections of `f`, transport of primitives, and the antipode of the target
//! computed as `f ∘ (S_B ⊗ id) ∘ ι` and cross-checked against a direct
//! computation on `A`.
//!
//! Submodules add the index-side identities a Hopf source forces
//! ([`checks`]), and the Galois-map and point-invertibility machinery for
//! finite targets ([`galois`]).

mod checks;
mod galois;

pub use checks::{
    character_convolution, character_transport, counit_character, grouplike_escape_witness,
    image_cocommutativity_check, swap_identity_check, CocommutativityReport, SwapReport,
};
pub use galois::{
    galois_check, gamma_surjectivity, point_convolution_inverse, point_invertibility_check,
    pointed_cover_conclusion_check, ConclusionReport, GaloisReport, PointReport,
};

use std::collections::BTreeMap;

use crate::antipode::antipode_oracle;
use crate::basis::BasisKey;
use crate::covering::PartialCovering;
use crate::element::Element;
use crate::error::{AlgebraError, Result};
use crate::linalg::{DenseMatrix, SpanBuilder};
use crate::linmap::LinMap;
use crate::primitives::primitive_defect;
use crate::scalar::Scalar;
use crate::text::{render_element, render_key};

/// Direction in which the section solver streams candidate `B ⊗ C` pairs;
/// both give valid sections, generally different ones.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveOrder {
    Canonical,
    Reversed,
}

/// A linear right inverse `ι: A → B ⊗ C` of a covering: `f ∘ ι = id` on
/// every basis key of `A` up to `verified_degree`.
#[derive(Debug)]
pub struct LinearSection {
    pub covering: PartialCovering,
    /// Basis key of `A` ↦ element of `B ⊗ C` on tensor keys `t(b, c)`.
    pub table: BTreeMap<BasisKey, Element>,
    pub verified_degree: u32,
}

impl LinearSection {
    /// `ι` applied linearly; errors on keys outside the solved range.
    pub fn apply(&self, x: &Element) -> Result<Element> {
        x.try_map_basis(|k| {
            self.table
                .get(k)
                .cloned()
                .ok_or_else(|| AlgebraError::UnknownKey {
                    key: render_key(k),
                    context: format!(
                        "section of {} (verified through degree {})",
                        self.covering.name(),
                        self.verified_degree
                    ),
                })
        })
    }
}

/// A canonical linear section of `f` through degree `n`, solved in the
/// default streaming order.
pub fn linear_section(f: &PartialCovering, n: u32) -> Result<LinearSection> {
    linear_section_with_order(f, n, SolveOrder::Canonical)
}

/// Like [`linear_section`], but the candidate `B ⊗ C` pairs are streamed in
/// the chosen order, so the two orders exercise genuinely different
/// preimage choices.
pub fn linear_section_with_order(
    f: &PartialCovering,
    n: u32,
    order: SolveOrder,
) -> Result<LinearSection> {
    let a = f.a();
    let a_keys = a.keys_to_degree(n);
    let dim = a_keys.len();
    let index: BTreeMap<BasisKey, usize> = a_keys
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, k)| (k, i))
        .collect();

    // Stream pairs degree-ascending and keep the ones that grow the span of
    // attained values; those columns are enough to solve every preimage.
    let mut b_keys = f.b().keys_to_degree(n);
    let mut c_keys = f.c().keys_to_degree(n);
    if order == SolveOrder::Reversed {
        b_keys.reverse();
        c_keys.reverse();
    }
    let mut span = SpanBuilder::new(dim);
    let mut accepted: Vec<(BasisKey, BasisKey, Vec<Scalar>)> = Vec::new();
    'stream: for bk in &b_keys {
        for ck in &c_keys {
            let Some(v) = crate::covering::overflow_to_none(f.value(bk, ck))? else {
                continue;
            };
            if v.is_zero() {
                continue;
            }
            // Values reaching outside the indexed range cannot enter an
            // exact preimage of an in-range key, so they are skipped.
            let Ok(coords) = v.coords(&index, dim) else {
                continue;
            };
            if span.add(coords.clone()) {
                accepted.push((bk.clone(), ck.clone(), coords));
                if span.is_full() {
                    break 'stream;
                }
            }
        }
    }

    let mut m = DenseMatrix::zeros(dim, accepted.len());
    for (j, (_, _, coords)) in accepted.iter().enumerate() {
        for (i, s) in coords.iter().enumerate() {
            m.set(i, j, s.clone());
        }
    }
    let mut table = BTreeMap::new();
    for ak in &a_keys {
        let mut rhs = vec![Scalar::zero(); dim];
        rhs[index[ak]] = Scalar::one();
        let Some(x) = m.solve(&rhs)? else {
            return Err(AlgebraError::RankDeficit {
                degree: a.degree(ak).unwrap_or(0),
                achieved: span.rank(),
                required: dim,
            });
        };
        let mut preimage = Element::zero();
        for (j, (bk, ck, _)) in accepted.iter().enumerate() {
            if !x[j].is_zero() {
                preimage.add_term(BasisKey::tensor(bk.clone(), ck.clone()), x[j].clone());
            }
        }
        table.insert(ak.clone(), preimage);
    }

    // The solve guarantees f∘ι = id in coordinates; re-check through the
    // public evaluation path.
    for (ak, preimage) in &table {
        let back = f.apply_tensor(preimage)?;
        if back != Element::single(ak.clone()) {
            return Err(AlgebraError::Unsupported(format!(
                "section solve for `{}` does not invert: f(ι) = {}",
                render_key(ak),
                render_element(&back)
            )));
        }
    }
    Ok(LinearSection {
        covering: f.clone(),
        table,
        verified_degree: n,
    })
}

/// Image of a primitive of `B` under `f(·, c)`, checked primitive in `A`.
pub fn transfer_primitive(
    f: &PartialCovering,
    p: &Element,
    c: &BasisKey,
) -> Result<Element> {
    let defect = primitive_defect(f.b(), p);
    if !defect.is_zero() {
        return Err(AlgebraError::NotPrimitive {
            defect: render_element(&defect),
        });
    }
    let v = f.apply(p, &Element::single(c.clone()))?;
    let image_defect = primitive_defect(f.a(), &v);
    if !image_defect.is_zero() {
        return Err(AlgebraError::Unsupported(format!(
            "transferred value {} fails the primitive law in {}: defect {}",
            render_element(&v),
            f.a().name(),
            render_element(&image_defect)
        )));
    }
    Ok(v)
}

/// Antipode of the target computed through the covering: `f ∘ (S_B ⊗ id) ∘ ι`,
/// validated keywise against a direct computation on `A`.
pub fn transfer_antipode(
    f: &PartialCovering,
    section: &LinearSection,
    n: u32,
) -> Result<LinMap> {
    if section.covering.name() != f.name() {
        return Err(AlgebraError::HandleMismatch(format!(
            "section belongs to {}, not {}",
            section.covering.name(),
            f.name()
        )));
    }
    if n > section.verified_degree {
        return Err(AlgebraError::DimensionMismatch(format!(
            "section verified through degree {}, requested {}",
            section.verified_degree, n
        )));
    }
    // The section may route through source keys of any degree, so the
    // source antipode table must reach the largest one used.
    let b = f.b();
    let mut b_bound = n;
    for preimage in section.table.values() {
        for tk in preimage.support() {
            let (bk, _) = tk.as_tensor()?;
            b_bound = b_bound.max(b.degree(bk).unwrap_or(0));
        }
    }
    let s_b = antipode_oracle(b, b_bound)?;

    let mut table = BTreeMap::new();
    for ak in f.a().keys_to_degree(n) {
        let preimage = section.table.get(&ak).ok_or_else(|| {
            AlgebraError::MissingEntry(format!("section has no entry for `{}`", render_key(&ak)))
        })?;
        let mut acc = Element::zero();
        for (tk, coeff) in preimage.iter() {
            let (bk, ck) = tk.as_tensor()?;
            let sb = s_b.apply_key(bk)?;
            let fv = f.apply(sb, &Element::single(ck.clone()))?;
            acc.add_scaled(&fv, coeff);
        }
        table.insert(ak, acc);
    }
    let transferred = LinMap::from_table(f.a().as_coalgebra(), f.a().clone(), n, table);

    let direct = antipode_oracle(f.a(), n)?;
    for k in f.a().keys_to_degree(n) {
        if transferred.apply_key(&k)? != direct.apply_key(&k)? {
            return Err(AlgebraError::Unsupported(format!(
                "transferred antipode disagrees with the direct computation at `{}`",
                render_key(&k)
            )));
        }
    }
    Ok(transferred)
}
