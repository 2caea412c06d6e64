//! Exhaustive verification of coalgebra and bialgebra laws on basis keys.

use serde::Serialize;

use crate::basis::BasisKey;
use crate::element::Element;
use crate::error::AlgebraError;
use crate::handle::{tensor_square_product, BialgebraHandle, CoalgebraHandle};
use crate::scalar::Scalar;
use crate::text::{render_element, render_key};

/// One failed identity: which law, on which keys, with both sides rendered.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct IdentityFailure {
    pub identity: String,
    pub witness: Vec<String>,
    pub lhs: String,
    pub rhs: String,
}

/// Outcome of a law sweep over all basis keys up to a degree bound.
#[derive(Clone, Debug, Serialize)]
pub struct BialgebraReport {
    pub name: String,
    pub degree_bound: u32,
    pub finite_type: bool,
    /// Identity instances evaluated.
    pub checks: u64,
    /// Identity instances skipped because a product left a finite window.
    pub skipped: u64,
    /// Basis keys within the degree bound.
    pub keys_total: usize,
    /// Keys the per-key laws ran on; below the total when the basis is too
    /// large for an exhaustive sweep.
    pub unary_keys_checked: usize,
    /// Keys the pair and triple laws drew from; zero when those laws were
    /// not part of the sweep.
    pub pair_keys_checked: usize,
    pub failures: Vec<IdentityFailure>,
    pub failures_truncated: bool,
}

impl BialgebraReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && !self.failures_truncated
    }
}

const MAX_FAILURES: usize = 50;

struct Sweep {
    checks: u64,
    skipped: u64,
    failures: Vec<IdentityFailure>,
    truncated: bool,
}

impl Sweep {
    fn new() -> Self {
        Sweep {
            checks: 0,
            skipped: 0,
            failures: Vec::new(),
            truncated: false,
        }
    }

    fn record(&mut self, identity: &str, witness: Vec<String>, lhs: &Element, rhs: &Element) {
        self.checks += 1;
        if lhs == rhs {
            return;
        }
        if self.failures.len() == MAX_FAILURES {
            self.truncated = true;
            return;
        }
        self.failures.push(IdentityFailure {
            identity: identity.to_string(),
            witness,
            lhs: render_element(lhs),
            rhs: render_element(rhs),
        });
    }

    /// Runs a fallible two-sided identity, counting window overflows as
    /// skips and recording other errors as failures.
    fn record_result(
        &mut self,
        identity: &str,
        witness: Vec<String>,
        sides: impl FnOnce() -> crate::error::Result<(Element, Element)>,
    ) {
        match sides() {
            Ok((lhs, rhs)) => self.record(identity, witness, &lhs, &rhs),
            Err(AlgebraError::WindowOverflow { .. }) => self.skipped += 1,
            Err(e) => {
                self.checks += 1;
                if self.failures.len() == MAX_FAILURES {
                    self.truncated = true;
                    return;
                }
                self.failures.push(IdentityFailure {
                    identity: identity.to_string(),
                    witness,
                    lhs: format!("error: {e}"),
                    rhs: String::new(),
                });
            }
        }
    }
}

fn counit_scaled(c: &CoalgebraHandle, x: &Element, slot: u8) -> Element {
    // (ε⊗id) or (id⊗ε) applied to an element of C⊗C.
    let mut out = Element::zero();
    for (k, coeff) in x.iter() {
        let (a, b) = k.as_tensor().expect("tensor key");
        let (kept, killed) = if slot == 0 { (b, a) } else { (a, b) };
        let e = c.counit(killed);
        if !e.is_zero() {
            out.add_term(kept.clone(), coeff * &e);
        }
    }
    out
}

fn coalgebra_checks(c: &CoalgebraHandle, keys: &[BasisKey], sweep: &mut Sweep) {
    for k in keys {
        let d = c.coproduct(k);
        let single = Element::single(k.clone());
        // Counit laws.
        sweep.record(
            "counit-left",
            vec![render_key(k)],
            &counit_scaled(c, &d, 0),
            &single,
        );
        sweep.record(
            "counit-right",
            vec![render_key(k)],
            &counit_scaled(c, &d, 1),
            &single,
        );
        // Coassociativity, both sides normalized to right-nested triples.
        let left = d
            .map_basis(|t| {
                let (a, b) = t.as_tensor().expect("tensor key");
                c.coproduct(a).tensor(&Element::single(b.clone()))
            })
            .rebracket_right();
        let right = d.map_basis(|t| {
            let (a, b) = t.as_tensor().expect("tensor key");
            Element::single(a.clone()).tensor(&c.coproduct(b))
        });
        sweep.record("coassociativity", vec![render_key(k)], &left, &right);
    }
}

/// Verifies the counit laws and coassociativity on every basis key of
/// degree at most `n`.
pub fn verify_coalgebra(c: &CoalgebraHandle, n: u32) -> BialgebraReport {
    let mut sweep = Sweep::new();
    let keys = c.keys_to_degree(n);
    coalgebra_checks(c, &keys, &mut sweep);
    BialgebraReport {
        name: c.name().to_string(),
        degree_bound: n,
        finite_type: c.flags().finite_type,
        checks: sweep.checks,
        skipped: sweep.skipped,
        failures: sweep.failures,
        failures_truncated: sweep.truncated,
    }
}

/// Verifies all bialgebra laws on basis keys of degree at most `n`:
/// coalgebra laws per key, unit and counit compatibility, multiplicativity
/// of the coproduct on pairs, and associativity on triples (filtered so
/// products stay within degree `n` on graded handles).
pub fn verify_bialgebra(h: &BialgebraHandle, n: u32) -> BialgebraReport {
    let mut sweep = Sweep::new();
    let keys = h.keys_to_degree(n);
    coalgebra_checks(h.coalgebra_handle(), &keys, &mut sweep);

    // Unit element identities.
    let unit = h.unit().clone();
    sweep.record(
        "unit-coproduct",
        vec![render_element(&unit)],
        &h.coproduct_element(&unit),
        &unit.tensor(&unit),
    );
    sweep.record(
        "unit-counit",
        vec![render_element(&unit)],
        &h.scaled_unit(&h.counit_element(&unit)),
        &unit,
    );
    for k in &keys {
        let single = Element::single(k.clone());
        sweep.record_result("unit-law-left", vec![render_key(k)], || {
            Ok((h.product_elements(&unit, &single)?, single.clone()))
        });
        sweep.record_result("unit-law-right", vec![render_key(k)], || {
            Ok((h.product_elements(&single, &unit)?, single.clone()))
        });
    }

    let degree_of = |k: &BasisKey| h.degree(k).unwrap_or(0);
    let graded = h.flags().graded;
    // Pairs: ε(ab) = ε(a)ε(b) and Δ(ab) = Δ(a)·Δ(b).
    for a in &keys {
        for b in &keys {
            if graded && degree_of(a) + degree_of(b) > n {
                continue;
            }
            sweep.record_result(
                "counit-multiplicative",
                vec![render_key(a), render_key(b)],
                || {
                    let prod = h.product(a, b)?;
                    let lhs = h.scaled_unit(&h.counit_element(&prod));
                    let rhs = h.scaled_unit(&(&h.counit(a) * &h.counit(b)));
                    Ok((lhs, rhs))
                },
            );
            sweep.record_result(
                "coproduct-multiplicative",
                vec![render_key(a), render_key(b)],
                || {
                    let prod = h.product(a, b)?;
                    let lhs = h.coproduct_element(&prod);
                    let rhs = tensor_square_product(h, &h.coproduct(a), &h.coproduct(b))?;
                    Ok((lhs, rhs))
                },
            );
        }
    }
    // Triples: associativity.
    for a in &keys {
        for b in &keys {
            if graded && degree_of(a) + degree_of(b) > n {
                continue;
            }
            for c in &keys {
                if graded && degree_of(a) + degree_of(b) + degree_of(c) > n {
                    continue;
                }
                sweep.record_result(
                    "associativity",
                    vec![render_key(a), render_key(b), render_key(c)],
                    || {
                        let ab = h.product(a, b)?;
                        let bc = h.product(b, c)?;
                        let lhs = h.product_elements(&ab, &Element::single(c.clone()))?;
                        let rhs = h.product_elements(&Element::single(a.clone()), &bc)?;
                        Ok((lhs, rhs))
                    },
                );
            }
        }
    }
    BialgebraReport {
        name: h.name().to_string(),
        degree_bound: n,
        finite_type: h.flags().finite_type,
        checks: sweep.checks,
        skipped: sweep.skipped,
        failures: sweep.failures,
        failures_truncated: sweep.truncated,
    }
}

/// The cocommutativity defect `Δx − τΔx`.
pub fn cocommutative_defect(c: &CoalgebraHandle, x: &Element) -> Element {
    let d = c.coproduct_element(x);
    d.sub(&d.swap_tensor_slots().expect("coproduct produces tensors"))
}

/// Grouplike test: `Δk = k⊗k` and `ε(k) = 1`.
pub fn is_grouplike(c: &CoalgebraHandle, k: &BasisKey) -> bool {
    c.coproduct(k) == Element::single(BasisKey::tensor(k.clone(), k.clone()))
        && c.counit(k) == Scalar::one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::*;
    use std::sync::Arc;

    #[test]
    fn the_built_in_bialgebras_pass_in_low_degree() {
        for (h, n) in [
            (build_sym(), 4),
            (build_nsym(), 4),
            (build_qsym(), 4),
            (build_set_word_bialgebra(2), 3),
            (build_poly_primitive(), 5),
            (build_poly_point(), 4),
        ] {
            let r = verify_bialgebra(&h, n);
            assert!(r.passed(), "{}: {:?}", r.name, r.failures.first());
            assert_eq!(r.skipped, 0);
        }
    }

    #[test]
    fn laurent_window_checks_skip_overflowing_products() {
        let h = build_laurent_point(2);
        let r = verify_bialgebra(&h, 0);
        assert!(r.passed(), "{:?}", r.failures.first());
        assert!(r.skipped > 0);
    }

    #[test]
    fn qsym_is_not_cocommutative_and_sym_is() {
        let qs = build_qsym();
        let m12 = crate::text::parse_key("M[1,2]").unwrap();
        let defect = cocommutative_defect(
            qs.coalgebra_handle(),
            &Element::single(m12),
        );
        assert_eq!(
            crate::text::render_element(&defect),
            "t(M1,M2) - t(M2,M1)"
        );
        let sym = build_sym();
        for k in sym.keys_to_degree(4) {
            assert!(cocommutative_defect(sym.coalgebra_handle(), &Element::single(k)).is_zero());
        }
    }

    #[test]
    fn a_corrupted_coproduct_is_caught_with_a_witness() {
        // Scale one coproduct term of p[1,1] by 2; the counit law catches it.
        let good = build_sym();
        let inner = good.coalgebra_handle();
        let broken_coproduct: crate::handle::CoproductFn = {
            let base = inner.clone();
            Arc::new(move |k: &BasisKey| {
                let d = base.coproduct(k);
                if crate::text::render_key(k) == "p[1,1]" {
                    d.map_basis(|t| {
                        if crate::text::render_key(t) == "t(p[],p[1,1])" {
                            Element::term(t.clone(), crate::scalar::Scalar::from_int(2))
                        } else {
                            Element::single(t.clone())
                        }
                    })
                } else {
                    d
                }
            })
        };
        let broken = CoalgebraHandle::new(
            "broken-sym",
            inner.graded_basis().clone(),
            broken_coproduct,
            Arc::new({
                let base = inner.clone();
                move |k: &BasisKey| base.counit(k)
            }),
            inner.flags(),
        );
        let r = verify_coalgebra(&broken, 3);
        assert!(!r.passed());
        let first = &r.failures[0];
        assert_eq!(first.identity, "counit-left");
        assert_eq!(first.witness, vec!["p[1,1]".to_string()]);
    }

    #[test]
    fn grouplike_detection() {
        let t = MonoidTable::cyclic(2);
        let g = build_monoid_bialgebra("z2", &t);
        for k in g.keys_to_degree(0) {
            assert!(is_grouplike(g.coalgebra_handle(), &k));
        }
        let s = build_sym();
        assert!(is_grouplike(
            s.coalgebra_handle(),
            &crate::text::parse_key("p[]").unwrap()
        ));
        assert!(!is_grouplike(
            s.coalgebra_handle(),
            &crate::text::parse_key("p1").unwrap()
        ));
    }
}
