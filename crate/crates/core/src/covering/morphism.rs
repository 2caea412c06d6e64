//! Morphisms between coverings: index-coalgebra maps compatible with the
//! covering values, their composition, and equivalence via a common
//! surjective quotient.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::basis::BasisKey;
use crate::covering::report::{
    overflow_to_none, sample_source_keys, verify_covering, CoveringFailure, MAX_WITNESSES,
};
use crate::covering::{bicat, PartialCovering};
use crate::element::{basis_index, Element};
use crate::error::{AlgebraError, Result};
use crate::linalg::SpanBuilder;
use crate::text::{render_element, render_key};
use crate::verify::is_grouplike;

/// A map between two coverings of the same target by the same source: a
/// table sending each index key of the source covering to an element of the
/// target covering's index coalgebra.
#[derive(Clone, Debug)]
pub struct CoveringMorphism {
    pub source: PartialCovering,
    pub target: PartialCovering,
    pub table: BTreeMap<BasisKey, Element>,
}

impl CoveringMorphism {
    /// Wraps a table as a morphism candidate; call [`verify_morphism`] to
    /// check the axioms.
    pub fn new(
        source: PartialCovering,
        target: PartialCovering,
        table: BTreeMap<BasisKey, Element>,
    ) -> Self {
        CoveringMorphism {
            source,
            target,
            table,
        }
    }

    /// Applies the table linearly to an index element.
    pub fn apply(&self, x: &Element) -> Result<Element> {
        x.try_map_basis(|k| {
            self.table.get(k).cloned().ok_or_else(|| AlgebraError::UnknownKey {
                key: render_key(k),
                context: format!(
                    "morphism table {} -> {}",
                    self.source.name(),
                    self.target.name()
                ),
            })
        })
    }

    /// Applies the table to both slots of a two-fold tensor element.
    fn apply_both_slots(&self, x: &Element) -> Result<Element> {
        x.try_map_basis(|k| {
            let (l, r) = k.as_tensor()?;
            let il = self.apply(&Element::single(l.clone()))?;
            let ir = self.apply(&Element::single(r.clone()))?;
            Ok(il.tensor(&ir))
        })
    }
}

/// Outcome of checking one morphism candidate.
#[derive(Clone, Debug, Serialize)]
pub struct MorphismReport {
    pub source: String,
    pub target: String,
    pub checked_degree: u32,
    /// The table respects coproducts and counits.
    pub coalgebra_map_ok: bool,
    /// Source values factor through target values along the table.
    pub triangle_ok: bool,
    /// The table spans the whole target index coalgebra within the bound.
    pub surjective_ok: bool,
    pub image_rank: usize,
    pub image_dim: usize,
    pub witnesses: Vec<CoveringFailure>,
}

impl MorphismReport {
    /// True when every check passed.
    pub fn all_ok(&self) -> bool {
        self.coalgebra_map_ok && self.triangle_ok && self.surjective_ok
    }
}

/// Checks that the candidate's source and target cover the same target by
/// the same source bialgebra.
fn check_frames(m: &CoveringMorphism) -> Result<()> {
    if m.source.b().name() != m.target.b().name() || m.source.a().name() != m.target.a().name() {
        return Err(AlgebraError::HandleMismatch(format!(
            "morphism endpoints disagree: {} covers {} by {}, {} covers {} by {}",
            m.source.name(),
            m.source.a().name(),
            m.source.b().name(),
            m.target.name(),
            m.target.a().name(),
            m.target.b().name(),
        )))
    } else {
        Ok(())
    }
}

/// Verifies a morphism candidate up to the degree bound: the table must be
/// a coalgebra map, the source values must factor through the target along
/// it, and its image must span the target index coalgebra.
pub fn verify_morphism(m: &CoveringMorphism, n: u32) -> Result<MorphismReport> {
    check_frames(m)?;
    let cf = m.source.c();
    let cg = m.target.c();
    let from_keys = cf.keys_to_degree(n);
    let to_keys = cg.keys_to_degree(n);
    let index = basis_index(&to_keys);
    let mut witnesses = Vec::new();
    let mut coalgebra_map_ok = true;
    let mut triangle_ok = true;

    for x in &from_keys {
        let image = m.apply(&Element::single(x.clone()))?;
        let lhs_counit = cg.counit_element(&image);
        let rhs_counit = cf.counit(x);
        if lhs_counit != rhs_counit {
            coalgebra_map_ok = false;
            if witnesses.len() < MAX_WITNESSES {
                witnesses.push(CoveringFailure {
                    identity: "morphism-counit".into(),
                    inputs: vec![render_key(x)],
                    lhs: lhs_counit.to_string(),
                    rhs: rhs_counit.to_string(),
                });
            }
        }
        let lhs = cg.coproduct_element(&image);
        let rhs = m.apply_both_slots(&cf.coproduct(x))?;
        if lhs != rhs {
            coalgebra_map_ok = false;
            if witnesses.len() < MAX_WITNESSES {
                witnesses.push(CoveringFailure {
                    identity: "morphism-coproduct".into(),
                    inputs: vec![render_key(x)],
                    lhs: render_element(&lhs),
                    rhs: render_element(&rhs),
                });
            }
        }
    }

    let b_keys = sample_source_keys(&m.source, n, &m.source.b().keys_to_degree(n));
    'triangle: for bk in &b_keys {
        for x in &from_keys {
            let Some(lhs) = overflow_to_none(m.source.value(bk, x))? else {
                continue;
            };
            let image = m.apply(&Element::single(x.clone()))?;
            let Some(rhs) =
                overflow_to_none(m.target.apply(&Element::single(bk.clone()), &image))?
            else {
                continue;
            };
            if lhs != rhs {
                triangle_ok = false;
                if witnesses.len() < MAX_WITNESSES {
                    witnesses.push(CoveringFailure {
                        identity: "morphism-triangle".into(),
                        inputs: vec![render_key(bk), render_key(x)],
                        lhs: render_element(&lhs),
                        rhs: render_element(&rhs),
                    });
                } else {
                    break 'triangle;
                }
            }
        }
    }

    let mut builder = SpanBuilder::new(to_keys.len());
    for x in &from_keys {
        let image = m.apply(&Element::single(x.clone()))?;
        builder.add(image.coords(&index, to_keys.len())?);
        if builder.is_full() {
            break;
        }
    }
    let image_rank = builder.rank();
    let image_dim = to_keys.len();

    Ok(MorphismReport {
        source: m.source.name().to_string(),
        target: m.target.name().to_string(),
        checked_degree: n,
        coalgebra_map_ok,
        triangle_ok,
        surjective_ok: image_rank == image_dim,
        image_rank,
        image_dim,
        witnesses,
    })
}

/// The identity morphism on a covering, tabulated up to the degree bound.
pub fn identity_two_cell(f: &PartialCovering, n: u32) -> CoveringMorphism {
    let table = f
        .c()
        .keys_to_degree(n)
        .into_iter()
        .map(|k| (k.clone(), Element::single(k)))
        .collect();
    CoveringMorphism::new(f.clone(), f.clone(), table)
}

/// Composes two morphisms sharing a middle covering: first `s`, then `t`.
pub fn vertical_compose(s: &CoveringMorphism, t: &CoveringMorphism) -> Result<CoveringMorphism> {
    if s.target.name() != t.source.name() {
        return Err(AlgebraError::HandleMismatch(format!(
            "cannot chain a morphism into {} with one out of {}",
            s.target.name(),
            t.source.name()
        )));
    }
    let mut table = BTreeMap::new();
    for (k, v) in &s.table {
        table.insert(k.clone(), t.apply(v)?);
    }
    Ok(CoveringMorphism::new(s.source.clone(), t.target.clone(), table))
}

/// Composes morphisms sideways along covering composition: `outer` between
/// coverings of the final target, `inner` between coverings of the middle
/// bialgebra.  The result maps between the two composite coverings.
pub fn horizontal_compose(
    outer: &CoveringMorphism,
    inner: &CoveringMorphism,
) -> Result<CoveringMorphism> {
    let source = bicat::compose(&outer.source, &inner.source)?;
    let target = bicat::compose(&outer.target, &inner.target)?;
    let mut table = BTreeMap::new();
    for k in source.c().keys_to_degree(source.degree_bound()) {
        let (ci, co) = k.as_tensor()?;
        let ii = inner.apply(&Element::single(ci.clone()))?;
        let io = outer.apply(&Element::single(co.clone()))?;
        table.insert(k.clone(), ii.tensor(&io));
    }
    Ok(CoveringMorphism::new(source, target, table))
}

/// Decides covering equivalence through a shared quotient: both morphisms
/// must verify, be surjective, and all three coverings must have the same
/// image ranks within the bound.
pub fn equivalent_via(
    s: &CoveringMorphism,
    t: &CoveringMorphism,
    n: u32,
) -> Result<bool> {
    if s.target.name() != t.target.name() {
        return Err(AlgebraError::HandleMismatch(format!(
            "equivalence needs a common quotient, got {} and {}",
            s.target.name(),
            t.target.name()
        )));
    }
    let rs = verify_morphism(s, n)?;
    let rt = verify_morphism(t, n)?;
    if !rs.all_ok() || !rt.all_ok() {
        return Ok(false);
    }
    let ranks_s = verify_covering(&s.source, n)?.surjectivity_ranks;
    let ranks_t = verify_covering(&t.source, n)?.surjectivity_ranks;
    let ranks_h = verify_covering(&s.target, n)?.surjectivity_ranks;
    let achieved = |v: &[crate::covering::report::DegreeRank]| -> Vec<(u32, usize)> {
        v.iter().map(|r| (r.degree, r.achieved)).collect()
    };
    Ok(achieved(&ranks_s) == achieved(&ranks_h) && achieved(&ranks_t) == achieved(&ranks_h))
}

/// Enumerates every coalgebra map between two coalgebras whose listed keys
/// are all grouplike; such maps are exactly the assignments of keys to keys.
pub fn coalgebra_maps_between(
    c: &crate::handle::CoalgebraHandle,
    d: &crate::handle::CoalgebraHandle,
    n: u32,
) -> Result<Vec<BTreeMap<BasisKey, Element>>> {
    let from_keys = c.keys_to_degree(n);
    let to_keys = d.keys_to_degree(n);
    for (owner, keys) in [(c, &from_keys), (d, &to_keys)] {
        for k in keys {
            if !is_grouplike(owner, k) {
                return Err(AlgebraError::Unsupported(format!(
                    "map enumeration needs grouplike bases, but {} is not grouplike",
                    render_key(k)
                )));
            }
        }
    }
    let count = to_keys.len().checked_pow(from_keys.len() as u32);
    if count.map_or(true, |c| c > 10_000) {
        return Err(AlgebraError::Unsupported(
            "map enumeration space is too large".into(),
        ));
    }
    let mut out = Vec::new();
    let mut choice = vec![0usize; from_keys.len()];
    loop {
        let table: BTreeMap<BasisKey, Element> = from_keys
            .iter()
            .zip(&choice)
            .map(|(k, &i)| (k.clone(), Element::single(to_keys[i].clone())))
            .collect();
        out.push(table);
        let mut pos = 0;
        loop {
            if pos == choice.len() {
                return Ok(out);
            }
            choice[pos] += 1;
            if choice[pos] < to_keys.len() {
                break;
            }
            choice[pos] = 0;
            pos += 1;
        }
    }
}

/// Searches for a pair of mutually inverse morphisms between two coverings
/// with grouplike index bases; true when an isomorphism of coverings exists.
pub fn invertible_two_cell_exists(
    f: &PartialCovering,
    g: &PartialCovering,
    n: u32,
) -> Result<bool> {
    let forward = coalgebra_maps_between(f.c(), g.c(), n)?;
    let backward = coalgebra_maps_between(g.c(), f.c(), n)?;
    let f_keys = f.c().keys_to_degree(n);
    let g_keys = g.c().keys_to_degree(n);
    for ft in &forward {
        for bt in &backward {
            let round_f = f_keys.iter().all(|k| {
                ft[k]
                    .iter()
                    .all(|(img, _)| bt[img] == Element::single(k.clone()))
            });
            let round_g = g_keys.iter().all(|k| {
                bt[k]
                    .iter()
                    .all(|(img, _)| ft[img] == Element::single(k.clone()))
            });
            if !round_f || !round_g {
                continue;
            }
            let m1 = CoveringMorphism::new(f.clone(), g.clone(), ft.clone());
            let m2 = CoveringMorphism::new(g.clone(), f.clone(), bt.clone());
            let r1 = verify_morphism(&m1, n)?;
            let r2 = verify_morphism(&m2, n)?;
            if r1.coalgebra_map_ok && r1.triangle_ok && r2.coalgebra_map_ok && r2.triangle_ok {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::covering::from_morphism_family;
    use crate::instances::build_group_algebra;
    use crate::instances::MonoidTable;

    /// The one-point and two-point coverings of a group algebra by itself,
    /// both acting through the identity map.
    fn example_pair() -> (PartialCovering, PartialCovering) {
        let b = build_group_algebra("z2-group", &MonoidTable::cyclic(2)).unwrap();
        let id_table: BTreeMap<BasisKey, Element> = b
            .keys_to_degree(0)
            .into_iter()
            .map(|k| (k.clone(), Element::single(k)))
            .collect();
        let f = from_morphism_family(
            "one-point",
            &b,
            &b,
            &[("q".to_string(), id_table.clone())],
            0,
        )
        .unwrap();
        let g = from_morphism_family(
            "two-point",
            &b,
            &b,
            &[("u".to_string(), id_table.clone()), ("v".to_string(), id_table)],
            0,
        )
        .unwrap();
        (f, g)
    }

    fn collapse_table() -> BTreeMap<BasisKey, Element> {
        [
            (BasisKey::point("u"), Element::single(BasisKey::point("q"))),
            (BasisKey::point("v"), Element::single(BasisKey::point("q"))),
        ]
        .into()
    }

    #[test]
    fn collapsing_both_points_gives_a_surjective_morphism() {
        let (f, g) = example_pair();
        let m = CoveringMorphism::new(g.clone(), f.clone(), collapse_table());
        let report = verify_morphism(&m, 0).unwrap();
        assert!(report.all_ok(), "{report:?}");

        let id_f = identity_two_cell(&f, 0);
        assert!(equivalent_via(&m, &id_f, 0).unwrap());
        assert!(!invertible_two_cell_exists(&f, &g, 0).unwrap());
        assert!(invertible_two_cell_exists(&f, &f, 0).unwrap());
    }

    #[test]
    fn a_counit_breaking_assignment_is_rejected() {
        let (f, g) = example_pair();
        let mut table = collapse_table();
        table.insert(BasisKey::point("v"), Element::zero());
        let m = CoveringMorphism::new(g, f, table);
        let report = verify_morphism(&m, 0).unwrap();
        assert!(!report.coalgebra_map_ok);
        assert!(!report.all_ok());
    }

    #[test]
    fn vertical_composition_chains_tables() {
        let (f, g) = example_pair();
        let m = CoveringMorphism::new(g.clone(), f.clone(), collapse_table());
        let chained = vertical_compose(&m, &identity_two_cell(&f, 0)).unwrap();
        assert_eq!(chained.table, m.table);
    }
}
