//! Constructions on coalgebra handles: tensor products, direct sums, and
//! quotients by a coideal.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::basis::BasisKey;
use crate::element::{basis_index, Element};
use crate::error::{AlgebraError, Result};
use crate::handle::{CoalgebraHandle, GradedBasis, StructureFlags};
use crate::linalg::DenseMatrix;
use crate::scalar::Scalar;
use crate::text::render_element;

/// The tensor-product coalgebra on keys `t(a, b)`: componentwise coproduct
/// with the middle legs interleaved, product counit, degree the sum of the
/// component degrees.
pub fn tensor_coalgebra(left: &CoalgebraHandle, right: &CoalgebraHandle) -> CoalgebraHandle {
    let name = format!("tensor({},{})", left.name(), right.name());
    let (dl, dr) = (left.clone(), right.clone());
    let (el, er) = (left.clone(), right.clone());
    let basis = GradedBasis::new(
        move |k| {
            let BasisKey::Tensor(a, b) = k else {
                return None;
            };
            Some(dl.degree(a)? + dr.degree(b)?)
        },
        move |n| {
            let mut out = Vec::new();
            for i in 0..=n {
                for a in el.basis_at(i) {
                    for b in er.basis_at(n - i) {
                        out.push(BasisKey::tensor(a.clone(), b));
                    }
                }
            }
            out.sort();
            out
        },
    );
    let (cl, cr) = (left.clone(), right.clone());
    let coproduct = Arc::new(move |k: &BasisKey| {
        let Ok((a, b)) = k.as_tensor() else {
            return Element::zero();
        };
        let mut out = Element::zero();
        for (ta, ca) in cl.coproduct(a).iter() {
            let (a1, a2) = ta.as_tensor().expect("coproduct produces tensor keys");
            for (tb, cb) in cr.coproduct(b).iter() {
                let (b1, b2) = tb.as_tensor().expect("coproduct produces tensor keys");
                out.add_term(
                    BasisKey::tensor(
                        BasisKey::tensor(a1.clone(), b1.clone()),
                        BasisKey::tensor(a2.clone(), b2.clone()),
                    ),
                    ca * cb,
                );
            }
        }
        out
    });
    let (ul, ur) = (left.clone(), right.clone());
    let counit = Arc::new(move |k: &BasisKey| {
        let Ok((a, b)) = k.as_tensor() else {
            return Scalar::zero();
        };
        &ul.counit(a) * &ur.counit(b)
    });
    let (fl, fr) = (left.flags(), right.flags());
    let flags = StructureFlags {
        graded: fl.graded && fr.graded,
        connected: fl.connected && fr.connected,
        cocommutative: fl.cocommutative && fr.cocommutative,
        commutative: fl.commutative && fr.commutative,
        hopf_claimed: false,
        finite_type: fl.finite_type && fr.finite_type,
    };
    CoalgebraHandle::new(name, basis, coproduct, counit, flags)
}

/// Wraps every key of `x` in the left-summand tag.
pub fn inject_left(x: &Element) -> Element {
    x.map_basis(|k| Element::single(BasisKey::Summand(0, Box::new(k.clone()))))
}

/// Wraps every key of `x` in the right-summand tag.
pub fn inject_right(x: &Element) -> Element {
    x.map_basis(|k| Element::single(BasisKey::Summand(1, Box::new(k.clone()))))
}

/// The direct-sum coalgebra on keys `inl(k)` and `inr(k)`: each summand
/// keeps its own coproduct and counit.
pub fn direct_sum_coalgebra(left: &CoalgebraHandle, right: &CoalgebraHandle) -> CoalgebraHandle {
    let name = format!("sum({},{})", left.name(), right.name());
    let (dl, dr) = (left.clone(), right.clone());
    let (el, er) = (left.clone(), right.clone());
    let basis = GradedBasis::new(
        move |k| {
            let BasisKey::Summand(side, inner) = k else {
                return None;
            };
            match side {
                0 => dl.degree(inner),
                1 => dr.degree(inner),
                _ => None,
            }
        },
        move |n| {
            let mut out: Vec<BasisKey> = el
                .basis_at(n)
                .into_iter()
                .map(|k| BasisKey::Summand(0, Box::new(k)))
                .collect();
            out.extend(
                er.basis_at(n)
                    .into_iter()
                    .map(|k| BasisKey::Summand(1, Box::new(k))),
            );
            out
        },
    );
    let (cl, cr) = (left.clone(), right.clone());
    let coproduct = Arc::new(move |k: &BasisKey| {
        let BasisKey::Summand(side, inner) = k else {
            return Element::zero();
        };
        let d = match side {
            0 => cl.coproduct(inner),
            1 => cr.coproduct(inner),
            _ => return Element::zero(),
        };
        let side = *side;
        d.map_basis(|t| {
            let (a, b) = t.as_tensor().expect("coproduct produces tensor keys");
            Element::single(BasisKey::tensor(
                BasisKey::Summand(side, Box::new(a.clone())),
                BasisKey::Summand(side, Box::new(b.clone())),
            ))
        })
    });
    let (ul, ur) = (left.clone(), right.clone());
    let counit = Arc::new(move |k: &BasisKey| {
        let BasisKey::Summand(side, inner) = k else {
            return Scalar::zero();
        };
        match side {
            0 => ul.counit(inner),
            1 => ur.counit(inner),
            _ => Scalar::zero(),
        }
    });
    let (fl, fr) = (left.flags(), right.flags());
    let flags = StructureFlags {
        graded: fl.graded && fr.graded,
        // Degree 0 carries both summands' units, so never connected.
        connected: false,
        cocommutative: fl.cocommutative && fr.cocommutative,
        commutative: false,
        hopf_claimed: false,
        finite_type: fl.finite_type && fr.finite_type,
    };
    CoalgebraHandle::new(name, basis, coproduct, counit, flags)
}

/// A quotient coalgebra together with the data to move elements across it.
#[derive(Debug)]
pub struct QuotientData {
    pub coalgebra: CoalgebraHandle,
    /// Original key represented by `cls(i)`, per index.
    pub representatives: Vec<BasisKey>,
    /// Image of every original key within the bound, on class keys.
    pub projection: BTreeMap<BasisKey, Element>,
}

impl QuotientData {
    /// Projects an element of the original coalgebra onto the quotient.
    pub fn project(&self, x: &Element) -> Result<Element> {
        x.try_map_basis(|k| {
            self.projection
                .get(k)
                .cloned()
                .ok_or_else(|| AlgebraError::UnknownKey {
                    key: crate::text::render_key(k),
                    context: format!("projection onto {}", self.coalgebra.name()),
                })
        })
    }
}

fn homogeneous_degree(c: &CoalgebraHandle, x: &Element) -> Option<u32> {
    let mut deg = None;
    for k in x.support() {
        let d = c.degree(k)?;
        match deg {
            None => deg = Some(d),
            Some(existing) if existing != d => return None,
            _ => {}
        }
    }
    deg
}

/// Quotient of `c` (restricted to keys of degree ≤ `bound`) by the span of
/// `ideal`, which must be a coideal: `ε` vanishes on it and its coproduct
/// lands in `I⊗C + C⊗I`.
///
/// Classes are indexed against the representative keys left after
/// eliminating the ideal's reduced row space; the projection matrix is
/// retained so later compositions through the quotient stay exact.
pub fn quotient_coalgebra(
    c: &CoalgebraHandle,
    ideal: &[Element],
    bound: u32,
    name: impl Into<String>,
) -> Result<QuotientData> {
    let keys = c.keys_to_degree(bound);
    let dim = keys.len();
    let index = basis_index(&keys);
    for w in ideal {
        let e = c.counit_element(w);
        if !e.is_zero() {
            return Err(AlgebraError::NotCoideal {
                detail: format!("counit takes value {} on {}", e, render_element(w)),
            });
        }
    }
    let mut m = DenseMatrix::zeros(ideal.len(), dim);
    for (r, w) in ideal.iter().enumerate() {
        for (k, v) in w.iter() {
            let j = *index.get(k).ok_or_else(|| AlgebraError::UnknownKey {
                key: crate::text::render_key(k),
                context: format!("basis of {} up to degree {}", c.name(), bound),
            })?;
            m.set(r, j, v.clone());
        }
    }
    let (red, pivots) = m.rref();
    let is_pivot = {
        let mut v = vec![false; dim];
        for &p in &pivots {
            v[p] = true;
        }
        v
    };
    let representatives: Vec<BasisKey> = keys
        .iter()
        .enumerate()
        .filter(|(j, _)| !is_pivot[*j])
        .map(|(_, k)| k.clone())
        .collect();
    let class_of: BTreeMap<usize, usize> = keys
        .iter()
        .enumerate()
        .filter(|(j, _)| !is_pivot[*j])
        .enumerate()
        .map(|(i, (j, _))| (j, i))
        .collect();
    // Pivot keys rewrite to minus the free part of their reduced row.
    let mut projection: BTreeMap<BasisKey, Element> = BTreeMap::new();
    for (j, k) in keys.iter().enumerate() {
        if let Some(&i) = class_of.get(&j) {
            projection.insert(k.clone(), Element::single(BasisKey::Class(i)));
        } else {
            let r = pivots.iter().position(|&p| p == j).expect("pivot row");
            let mut e = Element::zero();
            for (&fj, &fi) in &class_of {
                let v = red.at(r, fj);
                if !v.is_zero() {
                    e.add_term(BasisKey::Class(fi), -v);
                }
            }
            projection.insert(k.clone(), e);
        }
    }
    let project = |x: &Element| -> Result<Element> {
        x.try_map_basis(|k| {
            projection
                .get(k)
                .cloned()
                .ok_or_else(|| AlgebraError::UnknownKey {
                    key: crate::text::render_key(k),
                    context: "quotient projection".into(),
                })
        })
    };
    let project_tensor = |x: &Element| -> Result<Element> {
        let mut out = Element::zero();
        for (t, v) in x.iter() {
            let (a, b) = t.as_tensor()?;
            let pa = project(&Element::single(a.clone()))?;
            let pb = project(&Element::single(b.clone()))?;
            out.add_scaled(&pa.tensor(&pb), v);
        }
        Ok(out)
    };
    // Coideal guard: (π⊗π)Δ kills the ideal.
    for w in ideal {
        let image = project_tensor(&c.coproduct_element(w))?;
        if !image.is_zero() {
            return Err(AlgebraError::NotCoideal {
                detail: format!(
                    "coproduct of {} survives projection as {}",
                    render_element(w),
                    render_element(&image)
                ),
            });
        }
    }
    // Induced structure, materialized per class.
    let mut coproducts: BTreeMap<usize, Element> = BTreeMap::new();
    let mut counits: BTreeMap<usize, Scalar> = BTreeMap::new();
    for (i, rep) in representatives.iter().enumerate() {
        coproducts.insert(i, project_tensor(&c.coproduct(rep))?);
        counits.insert(i, c.counit(rep));
    }
    let class_count = representatives.len();
    let graded = c.flags().graded
        && ideal
            .iter()
            .all(|w| w.is_zero() || homogeneous_degree(c, w).is_some());
    let class_degrees: Vec<u32> = if graded {
        representatives
            .iter()
            .map(|k| c.degree(k).expect("representative key has a degree"))
            .collect()
    } else {
        vec![0; class_count]
    };
    let by_degree: BTreeMap<u32, Vec<BasisKey>> = {
        let mut m: BTreeMap<u32, Vec<BasisKey>> = BTreeMap::new();
        for (i, &d) in class_degrees.iter().enumerate() {
            m.entry(d).or_default().push(BasisKey::Class(i));
        }
        m
    };
    let degrees = Arc::new(class_degrees);
    let basis = GradedBasis::new(
        {
            let degrees = degrees.clone();
            move |k: &BasisKey| {
                let BasisKey::Class(i) = k else {
                    return None;
                };
                degrees.get(*i).copied()
            }
        },
        move |n| by_degree.get(&n).cloned().unwrap_or_default(),
    );
    let deg0 = if graded {
        degrees.iter().filter(|&&d| d == 0).count()
    } else {
        class_count
    };
    let flags = StructureFlags {
        graded,
        connected: graded && c.flags().connected && deg0 == 1,
        cocommutative: c.flags().cocommutative,
        commutative: false,
        hopf_claimed: false,
        finite_type: !graded,
    };
    let coproduct = Arc::new(move |k: &BasisKey| {
        let BasisKey::Class(i) = k else {
            return Element::zero();
        };
        coproducts.get(i).cloned().unwrap_or_default()
    });
    let counit = Arc::new(move |k: &BasisKey| {
        let BasisKey::Class(i) = k else {
            return Scalar::zero();
        };
        counits.get(i).cloned().unwrap_or_default()
    });
    let coalgebra = CoalgebraHandle::new(name, basis, coproduct, counit, flags);
    Ok(QuotientData {
        coalgebra,
        representatives,
        projection,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::*;
    use crate::text::{parse_element, render_element};
    use crate::verify::verify_coalgebra;

    #[test]
    fn tensor_square_passes_the_coalgebra_sweep() {
        let c = build_sym().as_coalgebra();
        let t = tensor_coalgebra(&c, &c);
        assert_eq!(t.dim_at(3), 10);
        let report = verify_coalgebra(&t, 3);
        assert!(report.failures.is_empty(), "{:?}", report.failures);
        let d = t.coproduct(&crate::text::parse_key("t(p1,p1)").unwrap());
        assert_eq!(
            render_element(&d),
            "t(t(p[],p[]),t(p1,p1)) + t(t(p[],p1),t(p1,p[])) + t(t(p1,p[]),t(p[],p1)) + t(t(p1,p1),t(p[],p[]))"
        );
    }

    #[test]
    fn direct_sum_keeps_summands_apart() {
        let c = build_sym().as_coalgebra();
        let q = build_qsym().as_coalgebra();
        let s = direct_sum_coalgebra(&c, &q);
        assert_eq!(s.dim_at(2), 2 + 2);
        let report = verify_coalgebra(&s, 3);
        assert!(report.failures.is_empty(), "{:?}", report.failures);
        let d = s.coproduct(&crate::text::parse_key("inl(p1)").unwrap());
        assert_eq!(render_element(&d), "t(inl(p[]),inl(p1)) + t(inl(p1),inl(p[]))");
        assert_eq!(s.counit(&crate::text::parse_key("inr(M[])").unwrap()), Scalar::one());
    }

    #[test]
    fn quotient_by_a_primitive_is_a_coalgebra() {
        let c = build_sym().as_coalgebra();
        let q = quotient_coalgebra(&c, &[parse_element("p2").unwrap()], 2, "sym-mod-p2").unwrap();
        assert_eq!(q.representatives.len(), 3);
        let report = verify_coalgebra(&q.coalgebra, 2);
        assert!(report.failures.is_empty(), "{:?}", report.failures);
        // p[1,1] keeps its coproduct, with p2 erased from the basis.
        let d = q.coalgebra.coproduct(&BasisKey::Class(2));
        assert_eq!(
            render_element(&d),
            "t(cls(0),cls(2)) + 2*t(cls(1),cls(1)) + t(cls(2),cls(0))"
        );
        assert!(q.project(&parse_element("p2").unwrap()).unwrap().is_zero());
    }

    #[test]
    fn identifying_two_points_gives_the_one_point_coalgebra() {
        let c = build_pointed_coalgebra("pts", &["x", "y"]).unwrap();
        let w = parse_element("x - y").unwrap();
        let q = quotient_coalgebra(&c, &[w], 0, "pts-glued").unwrap();
        assert_eq!(q.representatives.len(), 1);
        let cls = BasisKey::Class(0);
        assert_eq!(
            render_element(&q.coalgebra.coproduct(&cls)),
            "t(cls(0),cls(0))"
        );
        assert_eq!(q.coalgebra.counit(&cls), Scalar::one());
        let px = q.project(&parse_element("x").unwrap()).unwrap();
        let py = q.project(&parse_element("y").unwrap()).unwrap();
        assert_eq!(px, py);
    }

    #[test]
    fn non_coideals_are_rejected_with_details() {
        let c = build_sym().as_coalgebra();
        // Nonzero counit.
        let err = quotient_coalgebra(&c, &[parse_element("p[]").unwrap()], 2, "bad").unwrap_err();
        assert!(matches!(err, AlgebraError::NotCoideal { .. }));
        // Counit fine, but the coproduct escapes the ideal.
        let err =
            quotient_coalgebra(&c, &[parse_element("p2 - p[1,1]").unwrap()], 2, "bad").unwrap_err();
        let AlgebraError::NotCoideal { detail } = err else {
            panic!("expected coideal rejection");
        };
        assert!(detail.contains("t(cls(1),cls(1))"), "{detail}");
    }
}
