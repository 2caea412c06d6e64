//! Bicategory structure on coverings: composition along a middle bialgebra,
//! direct sums, and pushouts of morphism spans.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::basis::BasisKey;
use crate::coalgebra_ops::{
    direct_sum_coalgebra, inject_left, inject_right, quotient_coalgebra, tensor_coalgebra,
};
use crate::covering::morphism::{verify_morphism, CoveringMorphism};
use crate::covering::{PartialCovering, ValueFn};
use crate::element::Element;
use crate::error::{AlgebraError, Result};
use crate::text::render_key;

/// Composite covering along a middle bialgebra: the index coalgebra is the
/// tensor of the two index coalgebras, inner factor first, and the value on
/// `t(ci, co)` feeds the inner value through the outer covering.
pub fn compose(outer: &PartialCovering, inner: &PartialCovering) -> Result<PartialCovering> {
    if inner.a().name() != outer.b().name() {
        return Err(AlgebraError::HandleMismatch(format!(
            "{} lands in {}, but {} starts from {}",
            inner.name(),
            inner.a().name(),
            outer.name(),
            outer.b().name()
        )));
    }
    let c = tensor_coalgebra(inner.c(), outer.c());
    let (fi, fo) = (inner.clone(), outer.clone());
    let value: ValueFn = Arc::new(move |bk, ck| {
        let (ci, co) = ck.as_tensor()?;
        let mid = fi.value(bk, ci)?;
        fo.apply(&mid, &Element::single(co.clone()))
    });
    Ok(PartialCovering::from_closure(
        format!("({} after {})", outer.name(), inner.name()),
        inner.b().clone(),
        outer.a().clone(),
        c,
        inner.degree_bound().min(outer.degree_bound()),
        value,
        inner.locally_finite_structural() && outer.locally_finite_structural(),
    ))
}

/// Direct sum of two coverings of the same target by the same source: the
/// index coalgebra is the direct sum and each summand keeps its own values.
pub fn direct_sum(f: &PartialCovering, g: &PartialCovering) -> Result<PartialCovering> {
    if f.b().name() != g.b().name() || f.a().name() != g.a().name() {
        return Err(AlgebraError::HandleMismatch(format!(
            "direct sum needs matching endpoints, got {} and {}",
            f.name(),
            g.name()
        )));
    }
    let c = direct_sum_coalgebra(f.c(), g.c());
    let (vf, vg) = (f.clone(), g.clone());
    let value: ValueFn = Arc::new(move |bk, ck| match ck {
        BasisKey::Summand(0, inner) => vf.value(bk, inner),
        BasisKey::Summand(1, inner) => vg.value(bk, inner),
        other => Err(AlgebraError::UnknownKey {
            key: render_key(other),
            context: "direct-sum covering values".into(),
        }),
    });
    Ok(PartialCovering::from_closure(
        format!("({} (+) {})", f.name(), g.name()),
        f.b().clone(),
        f.a().clone(),
        c,
        f.degree_bound().min(g.degree_bound()),
        value,
        f.locally_finite_structural() && g.locally_finite_structural(),
    ))
}

/// A pushout square: the glued covering together with the two morphisms
/// out of the span's feet.
#[derive(Clone, Debug)]
pub struct Pushout {
    pub covering: PartialCovering,
    pub from_first: CoveringMorphism,
    pub from_second: CoveringMorphism,
    /// Direct-sum key represented by each class key of the gluing.
    pub representatives: Vec<BasisKey>,
}

/// Glues two morphisms out of a common covering: quotients the direct sum
/// of the target index coalgebras by the differences of the two images.
///
/// The quotient classes carry the values of whichever summand represents
/// them; the two returned morphisms embed each foot into the gluing.
pub fn pushout(s: &CoveringMorphism, t: &CoveringMorphism, n: u32) -> Result<Pushout> {
    if s.source.name() != t.source.name() {
        return Err(AlgebraError::HandleMismatch(format!(
            "pushout needs a common span source, got {} and {}",
            s.source.name(),
            t.source.name()
        )));
    }
    let g = &s.target;
    let h = &t.target;
    if g.b().name() != h.b().name() || g.a().name() != h.a().name() {
        return Err(AlgebraError::HandleMismatch(
            "pushout feet must cover the same target by the same source".into(),
        ));
    }
    let sum = direct_sum_coalgebra(g.c(), h.c());
    let mut ideal = Vec::new();
    for x in s.source.c().keys_to_degree(n) {
        let left = inject_left(&s.apply(&Element::single(x.clone()))?);
        let right = inject_right(&t.apply(&Element::single(x.clone()))?);
        ideal.push(left.sub(&right));
    }
    let name = format!("pushout({},{})", g.name(), h.name());
    let q = Arc::new(quotient_coalgebra(&sum, &ideal, n, format!("{name}-index"))?);
    let (vg, vh) = (g.clone(), h.clone());
    let reps = q.clone();
    let value: ValueFn = Arc::new(move |bk, ck| {
        let BasisKey::Class(i) = ck else {
            return Err(AlgebraError::UnknownKey {
                key: render_key(ck),
                context: "pushout covering values".into(),
            });
        };
        match reps.representatives.get(*i) {
            Some(BasisKey::Summand(0, inner)) => vg.value(bk, inner),
            Some(BasisKey::Summand(1, inner)) => vh.value(bk, inner),
            _ => Err(AlgebraError::UnknownKey {
                key: render_key(ck),
                context: "pushout class representatives".into(),
            }),
        }
    });
    let covering = PartialCovering::from_closure(
        name,
        g.b().clone(),
        g.a().clone(),
        q.coalgebra.clone(),
        g.degree_bound().min(h.degree_bound()).min(n),
        value,
        false,
    );
    let mut table_g = BTreeMap::new();
    for k in g.c().keys_to_degree(n) {
        table_g.insert(k.clone(), q.project(&inject_left(&Element::single(k)))?);
    }
    let mut table_h = BTreeMap::new();
    for k in h.c().keys_to_degree(n) {
        table_h.insert(k.clone(), q.project(&inject_right(&Element::single(k)))?);
    }
    Ok(Pushout {
        from_first: CoveringMorphism::new(g.clone(), covering.clone(), table_g),
        from_second: CoveringMorphism::new(h.clone(), covering.clone(), table_h),
        representatives: q.representatives.clone(),
        covering,
    })
}

/// The mediating morphism out of a pushout: two compatible morphisms into a
/// common covering induce a unique map from the gluing, tabulated on class
/// representatives and verified before being returned.
pub fn pushout_mediator(
    p: &Pushout,
    u: &CoveringMorphism,
    v: &CoveringMorphism,
    n: u32,
) -> Result<CoveringMorphism> {
    if u.source.name() != p.from_first.source.name()
        || v.source.name() != p.from_second.source.name()
        || u.target.name() != v.target.name()
    {
        return Err(AlgebraError::HandleMismatch(
            "mediator legs must start at the pushout feet and share a target".into(),
        ));
    }
    let mut table = BTreeMap::new();
    for ck in p.covering.c().keys_to_degree(n) {
        // Each class key is represented by a key of one of the two feet.
        let BasisKey::Class(i) = &ck else {
            return Err(AlgebraError::UnknownKey {
                key: render_key(&ck),
                context: "pushout index coalgebra".into(),
            });
        };
        let image = match p
            .representatives
            .get(*i)
            .ok_or_else(|| AlgebraError::MissingEntry(format!("class {i}")))?
        {
            BasisKey::Summand(0, inner) => u.apply(&Element::single((**inner).clone()))?,
            BasisKey::Summand(1, inner) => v.apply(&Element::single((**inner).clone()))?,
            other => {
                return Err(AlgebraError::UnknownKey {
                    key: render_key(other),
                    context: "pushout class representatives".into(),
                })
            }
        };
        table.insert(ck, image);
    }
    let m = CoveringMorphism::new(p.covering.clone(), u.target.clone(), table);
    let report = verify_morphism(&m, n)?;
    if !report.coalgebra_map_ok || !report.triangle_ok {
        return Err(AlgebraError::Unsupported(format!(
            "mediator candidate fails verification: {:?}",
            report.witnesses
        )));
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::covering::morphism::identity_two_cell;
    use crate::covering::report::verify_covering;
    use crate::covering::{from_morphism_family, identity_covering};
    use crate::instances::{build_group_algebra, build_sym, MonoidTable};
    use crate::registry::nsym_to_sym;
    use crate::text::parse_element;

    #[test]
    fn composing_with_the_identity_covering_keeps_values() {
        let f = nsym_to_sym(4);
        let idb = identity_covering(f.b());
        let h = compose(&f, &idb).unwrap();
        let report = verify_covering(&h, 3).unwrap();
        assert!(report.all_ok(), "{report:?}");
        // value on t(pt, p[2,1]) against H[2,1] matches the original.
        let b = crate::text::parse_key("H[2,1]").unwrap();
        let ck = BasisKey::tensor(
            BasisKey::point("pt"),
            crate::text::parse_key("p[2,1]").unwrap(),
        );
        let got = h.value(&b, &ck).unwrap();
        assert_eq!(got, parse_element("p[2,1]").unwrap());
    }

    #[test]
    fn direct_sum_keeps_each_summand() {
        let f = nsym_to_sym(3);
        let new_name = f.renamed("other");
        let h = direct_sum(&f, &new_name).unwrap();
        let report = verify_covering(&h, 3).unwrap();
        assert!(report.measuring_ok && report.coalgebra_map_ok, "{report:?}");
        let b = crate::text::parse_key("H2").unwrap();
        let p2 = crate::text::parse_key("p2").unwrap();
        let left = BasisKey::Summand(0, Box::new(p2.clone()));
        let right = BasisKey::Summand(1, Box::new(p2));
        assert_eq!(h.value(&b, &left).unwrap(), parse_element("p2").unwrap());
        assert_eq!(h.value(&b, &right).unwrap(), parse_element("p2").unwrap());
    }

    #[test]
    fn pushout_of_the_point_collapse_identifies_all_points() {
        let b = build_group_algebra("z2-group", &MonoidTable::cyclic(2)).unwrap();
        let id_table: std::collections::BTreeMap<BasisKey, Element> = b
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
        let collapse: std::collections::BTreeMap<BasisKey, Element> = [
            (BasisKey::point("u"), Element::single(BasisKey::point("q"))),
            (BasisKey::point("v"), Element::single(BasisKey::point("q"))),
        ]
        .into();
        let s = CoveringMorphism::new(g.clone(), f.clone(), collapse);
        let t = identity_two_cell(&g, 0);
        let p = pushout(&s, &t, 0).unwrap();
        assert_eq!(p.covering.c().keys_to_degree(0).len(), 1);
        let report = verify_covering(&p.covering, 0).unwrap();
        assert!(report.all_ok(), "{report:?}");
        assert!(verify_morphism(&p.from_first, 0).unwrap().all_ok());
        assert!(verify_morphism(&p.from_second, 0).unwrap().all_ok());

        // Universal property: the cocone (id_f, s) into the one-point
        // covering factors through the gluing.
        let m = pushout_mediator(&p, &identity_two_cell(&f, 0), &s, 0).unwrap();
        assert!(verify_morphism(&m, 0).unwrap().all_ok());
    }

    #[test]
    fn composition_respects_the_middle_bialgebra() {
        let f = nsym_to_sym(3);
        let id_sym = identity_covering(&build_sym());
        let err = compose(&f, &id_sym).unwrap_err();
        assert!(matches!(err, AlgebraError::HandleMismatch(_)));
    }
}
