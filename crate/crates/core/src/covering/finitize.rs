//! Replacing a covering by a locally finite one: tensor the index coalgebra
//! with the divided-power coalgebra and read off homogeneous components.

use std::sync::Arc;

use crate::basis::{BasisKey, CompositionLetter};
use crate::coalgebra_ops::tensor_coalgebra;
use crate::covering::{PartialCovering, ValueFn};
use crate::error::{AlgebraError, Result};
use crate::instances::build_divided_power_coalgebra;
use crate::text::render_key;

/// The locally finite replacement of a covering into a graded target: the
/// index coalgebra gains a divided-power factor whose degree selects one
/// homogeneous component of the original value.
pub fn locally_finitize(f: &PartialCovering) -> Result<PartialCovering> {
    let a = f.a().clone();
    if !a.flags().graded {
        return Err(AlgebraError::NotGraded {
            name: a.name().to_string(),
            operation: "local finitization".into(),
        });
    }
    let c = tensor_coalgebra(f.c(), &build_divided_power_coalgebra());
    let inner = f.clone();
    let grade = a.clone();
    let value: ValueFn = Arc::new(move |bk, ck| {
        let (cf, h) = ck.as_tensor()?;
        let BasisKey::Composition(CompositionLetter::H, parts) = h else {
            return Err(AlgebraError::UnknownKey {
                key: render_key(h),
                context: "divided-power factor of a finitized index".into(),
            });
        };
        let n = parts.first().copied().unwrap_or(0);
        let full = inner.value(bk, cf)?;
        grade.coalgebra_handle().homogeneous_component(&full, n)
    });
    Ok(PartialCovering::from_closure(
        format!("finitize({})", f.name()),
        f.b().clone(),
        a,
        c,
        f.degree_bound(),
        value,
        true,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::covering::report::{grading_report, verify_covering, LocalFiniteness};
    use crate::covering::identity_covering;
    use crate::element::Element;
    use crate::instances::build_sym;
    use crate::text::{parse_element, parse_key};

    #[test]
    fn finitized_identity_selects_homogeneous_components() {
        let f = locally_finitize(&identity_covering(&build_sym())).unwrap();
        let b = parse_key("p2").unwrap();
        let keep = BasisKey::tensor(BasisKey::point("pt"), parse_key("H2").unwrap());
        let drop = BasisKey::tensor(BasisKey::point("pt"), parse_key("H1").unwrap());
        assert_eq!(f.value(&b, &keep).unwrap(), parse_element("p2").unwrap());
        assert_eq!(f.value(&b, &drop).unwrap(), Element::zero());
    }

    #[test]
    fn finitized_identity_is_degree_preserving() {
        let f = locally_finitize(&identity_covering(&build_sym())).unwrap();
        let verification = verify_covering(&f, 4).unwrap();
        assert!(verification.all_ok(), "{verification:?}");
        let grading = grading_report(&f, 4).unwrap();
        assert_eq!(grading.graded, Some(true));
        assert_eq!(grading.bigraded, Some(true));
        assert_eq!(grading.locally_finite, Some(LocalFiniteness::Structural));
    }

    #[test]
    fn ungraded_targets_are_rejected() {
        let f = crate::registry::monoid_dual_cover(3);
        let err = locally_finitize(&f).unwrap_err();
        assert!(matches!(err, AlgebraError::NotGraded { .. }));
    }
}
