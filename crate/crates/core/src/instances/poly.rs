//! Polynomial and Laurent-polynomial bialgebras on one generator.

use std::sync::Arc;

use crate::basis::{BasisKey, PowerLetter};
use crate::combinat::binomial;
use crate::element::Element;
use crate::error::AlgebraError;
use crate::handle::{BialgebraHandle, CoalgebraHandle, GradedBasis, StructureFlags};
use crate::scalar::Scalar;

fn pow(letter: PowerLetter, n: i64) -> BasisKey {
    BasisKey::IntPower(letter, n)
}

/// `k[x]` with `x` primitive: `Δxⁿ = Σ C(n,i) xⁱ ⊗ xⁿ⁻ⁱ`.  Graded by the
/// exponent, connected, commutative, cocommutative, Hopf.
pub fn build_poly_primitive() -> BialgebraHandle {
    let basis = GradedBasis::new(
        |k| match k {
            BasisKey::IntPower(PowerLetter::X, n) if *n >= 0 => Some(*n as u32),
            _ => None,
        },
        |n| vec![pow(PowerLetter::X, n as i64)],
    );
    let coproduct = Arc::new(|k: &BasisKey| {
        let BasisKey::IntPower(PowerLetter::X, n) = k else {
            return Element::zero();
        };
        Element::from_terms((0..=*n).map(|i| {
            (
                BasisKey::tensor(pow(PowerLetter::X, i), pow(PowerLetter::X, n - i)),
                binomial(*n as u32, i as u32),
            )
        }))
    });
    let counit = Arc::new(|k: &BasisKey| match k {
        BasisKey::IntPower(PowerLetter::X, 0) => Scalar::one(),
        _ => Scalar::zero(),
    });
    let flags = StructureFlags {
        graded: true,
        connected: true,
        cocommutative: true,
        commutative: true,
        hopf_claimed: true,
        finite_type: false,
    };
    let coalg = CoalgebraHandle::new("kx", basis, coproduct, counit, flags);
    let product = Arc::new(|a: &BasisKey, b: &BasisKey| {
        let (BasisKey::IntPower(PowerLetter::X, m), BasisKey::IntPower(PowerLetter::X, n)) =
            (a, b)
        else {
            return Err(AlgebraError::UnknownKey {
                key: crate::text::render_key(a),
                context: "polynomial product".into(),
            });
        };
        Ok(Element::single(pow(PowerLetter::X, m + n)))
    });
    BialgebraHandle::new(coalg, product, Element::single(pow(PowerLetter::X, 0)))
}

/// `k[z]` with `z` grouplike: `Δzⁿ = zⁿ ⊗ zⁿ`, `ε(zⁿ) = 1`.
///
/// The exponent serves as a pseudo-degree for sweeps, but the coproduct
/// does not respect it, so the handle is **not** graded (and not
/// connected, and not Hopf: `z` has no convolution inverse).
pub fn build_poly_point() -> BialgebraHandle {
    let basis = GradedBasis::new(
        |k| match k {
            BasisKey::IntPower(PowerLetter::Z, n) if *n >= 0 => Some(*n as u32),
            _ => None,
        },
        |n| vec![pow(PowerLetter::Z, n as i64)],
    );
    let coproduct = Arc::new(|k: &BasisKey| Element::single(BasisKey::tensor(k.clone(), k.clone())));
    let counit = Arc::new(|_: &BasisKey| Scalar::one());
    let flags = StructureFlags {
        graded: false,
        connected: false,
        cocommutative: true,
        commutative: true,
        hopf_claimed: false,
        finite_type: false,
    };
    let coalg = CoalgebraHandle::new("kz", basis, coproduct, counit, flags);
    let product = Arc::new(|a: &BasisKey, b: &BasisKey| {
        let (BasisKey::IntPower(PowerLetter::Z, m), BasisKey::IntPower(PowerLetter::Z, n)) =
            (a, b)
        else {
            return Err(AlgebraError::UnknownKey {
                key: crate::text::render_key(a),
                context: "polynomial product".into(),
            });
        };
        Ok(Element::single(pow(PowerLetter::Z, m + n)))
    });
    BialgebraHandle::new(coalg, product, Element::single(pow(PowerLetter::Z, 0)))
}

/// The Laurent window `span{z⁻ʷ, …, zʷ}` inside `k[z,z⁻¹]`, `z` grouplike.
///
/// Finite type (basis at pseudo-degree 0).  Products whose exponent sum
/// leaves the window report [`AlgebraError::WindowOverflow`]; sweeps count
/// such identities as skipped.  Hopf: `S(zⁿ) = z⁻ⁿ` stays in the window.
pub fn build_laurent_point(window: i64) -> BialgebraHandle {
    assert!(window >= 1, "window must be positive");
    let basis = GradedBasis::new(
        move |k| match k {
            BasisKey::IntPower(PowerLetter::Z, n) if n.abs() <= window => Some(0),
            _ => None,
        },
        move |n| {
            if n == 0 {
                (-window..=window).map(|e| pow(PowerLetter::Z, e)).collect()
            } else {
                Vec::new()
            }
        },
    );
    let coproduct = Arc::new(|k: &BasisKey| Element::single(BasisKey::tensor(k.clone(), k.clone())));
    let counit = Arc::new(|_: &BasisKey| Scalar::one());
    let flags = StructureFlags {
        graded: false,
        connected: false,
        cocommutative: true,
        commutative: true,
        hopf_claimed: true,
        finite_type: true,
    };
    let coalg = CoalgebraHandle::new(
        format!("laurent(window {window})"),
        basis,
        coproduct,
        counit,
        flags,
    );
    let product = Arc::new(move |a: &BasisKey, b: &BasisKey| {
        let (BasisKey::IntPower(PowerLetter::Z, m), BasisKey::IntPower(PowerLetter::Z, n)) =
            (a, b)
        else {
            return Err(AlgebraError::UnknownKey {
                key: crate::text::render_key(a),
                context: "Laurent product".into(),
            });
        };
        let e = m + n;
        if e.abs() > window {
            return Err(AlgebraError::WindowOverflow {
                exponent: e,
                lo: -window,
                hi: window,
            });
        }
        Ok(Element::single(pow(PowerLetter::Z, e)))
    });
    BialgebraHandle::new(coalg, product, Element::single(pow(PowerLetter::Z, 0)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::{parse_element, parse_key};

    #[test]
    fn primitive_generator_has_binomial_coproduct() {
        let h = build_poly_primitive();
        let d = h.coproduct(&parse_key("x^2").unwrap());
        assert_eq!(
            d,
            parse_element("t(x^0,x^2) + 2*t(x^1,x^1) + t(x^2,x^0)").unwrap()
        );
    }

    #[test]
    fn point_generator_is_grouplike() {
        let h = build_poly_point();
        let d = h.coproduct(&parse_key("z^3").unwrap());
        assert_eq!(d, parse_element("t(z^3,z^3)").unwrap());
        assert_eq!(h.counit(&parse_key("z^3").unwrap()), Scalar::one());
        assert!(!h.flags().graded);
    }

    #[test]
    fn laurent_products_respect_the_window() {
        let h = build_laurent_point(4);
        let z3 = parse_key("z^3").unwrap();
        let ok = h.product(&z3, &parse_key("z^-2").unwrap()).unwrap();
        assert_eq!(ok, parse_element("z^1").unwrap());
        let err = h.product(&z3, &z3).unwrap_err();
        assert!(matches!(err, AlgebraError::WindowOverflow { exponent: 6, .. }));
        assert_eq!(h.keys_to_degree(0).len(), 9);
    }
}
