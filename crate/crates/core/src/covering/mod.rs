//! Measurings and partial coverings: bilinear maps `B ⊗ C → A` that turn
//! the coalgebra `C` into an index of algebra maps out of `B`, built either
//! by decree from generator rules or from explicit tables.
//!
//! Submodules add axiom verification, structure-respecting morphisms and
//! their two-cells, the composition/direct-sum/pushout operations, local
//! finitization, and the canonical covering by the complete-generator
//! bialgebra.

mod bicat;
mod canonical;
mod declfile;
mod finitize;
mod morphism;
mod report;

pub use bicat::{compose, direct_sum, pushout, pushout_mediator, Pushout};
pub use declfile::{
    decl_from_json, decl_to_json, export_covering, import_covering, CoveringDecl, DeclEntry,
    DeclMode, IndexDecl, DECL_SCHEMA_VERSION,
};
pub use canonical::{build_set_word_covering, canonical_covering, factor_through_canonical};
pub use finitize::locally_finitize;
pub use morphism::{
    identity_two_cell,
    coalgebra_maps_between, equivalent_via, horizontal_compose, invertible_two_cell_exists,
    vertical_compose, CoveringMorphism, MorphismReport,
};
pub use report::{
    grading_report, nondegeneracy_report, verify_covering, CoveringFailure, DegreeRank,
    GradingReport, LocalFiniteness, NondegeneracyReport, VerificationReport,
};
pub(crate) use report::{overflow_to_none, sample_source_keys, MAX_WITNESSES};

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, RwLock};

use crate::basis::BasisKey;
use crate::element::Element;
use crate::error::{AlgebraError, Result};
use crate::handle::{BialgebraHandle, CoalgebraHandle};
use crate::instances::build_pointed_coalgebra;

/// How a basis key of `B` decomposes for multiplicative decree evaluation.
#[derive(Debug, Clone)]
pub enum KeyFactorization {
    /// The key spans the image of the unit.
    Unit,
    /// `key = generator · rest`; `rest` is `None` when the key is itself a
    /// generator.
    Split {
        generator: BasisKey,
        rest: Option<BasisKey>,
    },
}

pub type FactorFn = Arc<dyn Fn(&BasisKey) -> Result<KeyFactorization> + Send + Sync>;
pub type RuleFn = Arc<dyn Fn(&BasisKey, &BasisKey) -> Result<Element> + Send + Sync>;
pub type GeneratorsFn = Arc<dyn Fn(u32) -> Vec<BasisKey> + Send + Sync>;
pub type ValueFn = Arc<dyn Fn(&BasisKey, &BasisKey) -> Result<Element> + Send + Sync>;

enum EvalMode {
    /// Values on generator pairs, extended to products of generators by
    /// `f(bb'⊗c) = Σ f(b⊗c₁)f(b'⊗c₂)` and `f(1⊗c) = ε(c)·1`.
    Decree {
        factor: FactorFn,
        rule: RuleFn,
        generators: GeneratorsFn,
    },
    /// Explicit values on every pair within the bound.
    Table(BTreeMap<(BasisKey, BasisKey), Element>),
    /// Values computed on demand (identities, composites, finitizations).
    Closure(ValueFn),
}

struct CoveringInner {
    name: String,
    b: BialgebraHandle,
    a: BialgebraHandle,
    c: CoalgebraHandle,
    degree_bound: u32,
    eval: EvalMode,
    /// Certifies that each fixed `c` kills all `b` of large enough degree,
    /// by the shape of the defining rule rather than by sweep.
    locally_finite_structural: bool,
    memo: RwLock<HashMap<(BasisKey, BasisKey), Element>>,
}

/// A bilinear map `f: B ⊗ C → A`, evaluated lazily and memoized.
///
/// The measuring and coalgebra-map axioms are *checked*, never assumed; see
/// [`verify_covering`].
#[derive(Clone)]
pub struct PartialCovering {
    inner: Arc<CoveringInner>,
}

impl std::fmt::Debug for PartialCovering {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("PartialCovering")
            .field("name", &self.inner.name)
            .field("b", &self.inner.b.name())
            .field("a", &self.inner.a.name())
            .field("c", &self.inner.c.name())
            .field("bound", &self.inner.degree_bound)
            .finish()
    }
}

impl PartialCovering {
    /// A covering defined by decree: values on generator pairs, extended
    /// multiplicatively.
    pub fn decree(
        name: impl Into<String>,
        b: BialgebraHandle,
        a: BialgebraHandle,
        c: CoalgebraHandle,
        degree_bound: u32,
        generators: GeneratorsFn,
        factor: FactorFn,
        rule: RuleFn,
        locally_finite_structural: bool,
    ) -> Self {
        PartialCovering {
            inner: Arc::new(CoveringInner {
                name: name.into(),
                b,
                a,
                c,
                degree_bound,
                eval: EvalMode::Decree {
                    factor,
                    rule,
                    generators,
                },
                locally_finite_structural,
                memo: RwLock::new(HashMap::new()),
            }),
        }
    }

    /// A covering given by an explicit table on every pair within the
    /// bound.
    pub fn from_table(
        name: impl Into<String>,
        b: BialgebraHandle,
        a: BialgebraHandle,
        c: CoalgebraHandle,
        degree_bound: u32,
        table: BTreeMap<(BasisKey, BasisKey), Element>,
    ) -> Self {
        PartialCovering {
            inner: Arc::new(CoveringInner {
                name: name.into(),
                b,
                a,
                c,
                degree_bound,
                eval: EvalMode::Table(table),
                locally_finite_structural: false,
                memo: RwLock::new(HashMap::new()),
            }),
        }
    }

    /// A covering whose values come from a closure (identities, composites).
    pub fn from_closure(
        name: impl Into<String>,
        b: BialgebraHandle,
        a: BialgebraHandle,
        c: CoalgebraHandle,
        degree_bound: u32,
        value: ValueFn,
        locally_finite_structural: bool,
    ) -> Self {
        PartialCovering {
            inner: Arc::new(CoveringInner {
                name: name.into(),
                b,
                a,
                c,
                degree_bound,
                eval: EvalMode::Closure(value),
                locally_finite_structural,
                memo: RwLock::new(HashMap::new()),
            }),
        }
    }

    pub fn name(&self) -> &str {
        &self.inner.name
    }

    pub fn b(&self) -> &BialgebraHandle {
        &self.inner.b
    }

    pub fn a(&self) -> &BialgebraHandle {
        &self.inner.a
    }

    pub fn c(&self) -> &CoalgebraHandle {
        &self.inner.c
    }

    pub fn degree_bound(&self) -> u32 {
        self.inner.degree_bound
    }

    pub fn locally_finite_structural(&self) -> bool {
        self.inner.locally_finite_structural
    }

    /// The declared generator keys of `B`, when the covering is a decree.
    pub fn generator_keys(&self, bound: u32) -> Option<Vec<BasisKey>> {
        match &self.inner.eval {
            EvalMode::Decree { generators, .. } => Some(generators(bound)),
            _ => None,
        }
    }

    /// Pairs stored explicitly, when the covering is a table.
    pub fn table_entries(&self) -> Option<&BTreeMap<(BasisKey, BasisKey), Element>> {
        match &self.inner.eval {
            EvalMode::Table(t) => Some(t),
            _ => None,
        }
    }

    /// A copy sharing all structure under a new name (memo starts fresh).
    pub fn renamed(&self, name: impl Into<String>) -> Self {
        let inner = CoveringInner {
            name: name.into(),
            b: self.inner.b.clone(),
            a: self.inner.a.clone(),
            c: self.inner.c.clone(),
            degree_bound: self.inner.degree_bound,
            eval: match &self.inner.eval {
                EvalMode::Decree {
                    factor,
                    rule,
                    generators,
                } => EvalMode::Decree {
                    factor: factor.clone(),
                    rule: rule.clone(),
                    generators: generators.clone(),
                },
                EvalMode::Table(t) => EvalMode::Table(t.clone()),
                EvalMode::Closure(v) => EvalMode::Closure(v.clone()),
            },
            locally_finite_structural: self.inner.locally_finite_structural,
            memo: RwLock::new(HashMap::new()),
        };
        PartialCovering {
            inner: Arc::new(inner),
        }
    }

    /// `f(b ⊗ c)` on a pair of basis keys.
    pub fn value(&self, b: &BasisKey, c: &BasisKey) -> Result<Element> {
        if let Some(v) = self
            .inner
            .memo
            .read()
            .expect("memo lock")
            .get(&(b.clone(), c.clone()))
        {
            return Ok(v.clone());
        }
        let v = self.compute(b, c)?;
        self.inner
            .memo
            .write()
            .expect("memo lock")
            .insert((b.clone(), c.clone()), v.clone());
        Ok(v)
    }

    fn compute(&self, b: &BasisKey, c: &BasisKey) -> Result<Element> {
        match &self.inner.eval {
            EvalMode::Closure(value) => value(b, c),
            EvalMode::Table(t) => {
                t.get(&(b.clone(), c.clone()))
                    .cloned()
                    .ok_or_else(|| AlgebraError::MissingEntry(format!(
                        "no table value for ({}, {}) in {}",
                        crate::text::render_key(b),
                        crate::text::render_key(c),
                        self.inner.name
                    )))
            }
            EvalMode::Decree { factor, rule, .. } => match factor(b)? {
                KeyFactorization::Unit => {
                    Ok(self.inner.a.scaled_unit(&self.inner.c.counit(c)))
                }
                KeyFactorization::Split {
                    generator,
                    rest: None,
                } => rule(&generator, c),
                KeyFactorization::Split {
                    generator,
                    rest: Some(rest),
                } => {
                    let mut out = Element::zero();
                    for (t, coeff) in self.inner.c.coproduct(c).iter() {
                        let (c1, c2) = t.as_tensor()?;
                        let left = rule(&generator, c1)?;
                        if left.is_zero() {
                            continue;
                        }
                        let right = self.value(&rest, c2)?;
                        if right.is_zero() {
                            continue;
                        }
                        let prod = self.inner.a.product_elements(&left, &right)?;
                        out.add_scaled(&prod, coeff);
                    }
                    Ok(out)
                }
            },
        }
    }

    /// Bilinear extension of [`value`](Self::value) to elements.
    pub fn apply(&self, xb: &Element, xc: &Element) -> Result<Element> {
        let mut out = Element::zero();
        for (kb, cb) in xb.iter() {
            for (kc, cc) in xc.iter() {
                let v = self.value(kb, kc)?;
                out.add_scaled(&v, &(cb * cc));
            }
        }
        Ok(out)
    }

    /// Applies `f` to an element of `B ⊗ C` written on tensor keys.
    pub fn apply_tensor(&self, x: &Element) -> Result<Element> {
        let mut out = Element::zero();
        for (t, coeff) in x.iter() {
            let (b, c) = t.as_tensor()?;
            let v = self.value(b, c)?;
            out.add_scaled(&v, coeff);
        }
        Ok(out)
    }
}

/// The identity covering of `a`: a one-point coalgebra indexing the
/// identity map.
pub fn identity_covering(a: &BialgebraHandle) -> PartialCovering {
    let c = build_pointed_coalgebra(format!("point({})", a.name()), &["pt"])
        .expect("one fresh point");
    let pt = BasisKey::point("pt");
    let value: ValueFn = Arc::new(move |b: &BasisKey, ck: &BasisKey| {
        if *ck == pt {
            Ok(Element::single(b.clone()))
        } else {
            Err(AlgebraError::UnknownKey {
                key: crate::text::render_key(ck),
                context: "one-point coalgebra".into(),
            })
        }
    });
    PartialCovering::from_closure(
        format!("identity({})", a.name()),
        a.clone(),
        a.clone(),
        c,
        u32::MAX,
        value,
        false,
    )
}

/// The covering collecting a named family of bialgebra maps `B → A`: the
/// coalgebra is a point per map and `f(b ⊗ ξ) = ξ(b)`.
///
/// Each table must be a bialgebra map on keys up to `bound`; the first
/// violated identity is reported otherwise.
pub fn from_morphism_family(
    name: impl Into<String>,
    b: &BialgebraHandle,
    a: &BialgebraHandle,
    maps: &[(String, BTreeMap<BasisKey, Element>)],
    bound: u32,
) -> Result<PartialCovering> {
    let name = name.into();
    for (label, table) in maps {
        verify_bialgebra_map(b, a, table, bound).map_err(|e| match e {
            AlgebraError::NotMultiplicative { detail } => AlgebraError::NotMultiplicative {
                detail: format!("map `{label}`: {detail}"),
            },
            other => other,
        })?;
    }
    let labels: Vec<&str> = maps.iter().map(|(l, _)| l.as_str()).collect();
    let c = build_pointed_coalgebra(format!("maps({name})"), &labels)?;
    let mut entries = BTreeMap::new();
    for (label, table) in maps {
        let point = BasisKey::point(label.clone());
        for (k, v) in table {
            entries.insert((k.clone(), point.clone()), v.clone());
        }
    }
    Ok(PartialCovering::from_table(
        name,
        b.clone(),
        a.clone(),
        c,
        bound,
        entries,
    ))
}

/// Checks that a key table `B → A` is a bialgebra map on keys up to
/// `bound`: unit to unit, products to products, coproducts to coproducts,
/// counits matching.
pub fn verify_bialgebra_map(
    b: &BialgebraHandle,
    a: &BialgebraHandle,
    table: &BTreeMap<BasisKey, Element>,
    bound: u32,
) -> Result<()> {
    let phi = |x: &Element| -> Result<Element> {
        x.try_map_basis(|k| {
            table.get(k).cloned().ok_or_else(|| AlgebraError::MissingEntry(format!(
                "no image for {}",
                crate::text::render_key(k)
            )))
        })
    };
    let keys = b.keys_to_degree(bound);
    if phi(b.unit())? != *a.unit() {
        return Err(AlgebraError::NotMultiplicative {
            detail: "unit is not preserved".into(),
        });
    }
    for k in &keys {
        let img = phi(&Element::single(k.clone()))?;
        if b.counit(k) != a.counit_element(&img) {
            return Err(AlgebraError::NotMultiplicative {
                detail: format!("counit differs at {}", crate::text::render_key(k)),
            });
        }
        // (φ⊗φ)Δ = Δφ.
        let mut lhs = Element::zero();
        for (t, coeff) in b.coproduct(k).iter() {
            let (x, y) = t.as_tensor()?;
            let ix = phi(&Element::single(x.clone()))?;
            let iy = phi(&Element::single(y.clone()))?;
            lhs.add_scaled(&ix.tensor(&iy), coeff);
        }
        if lhs != a.coproduct_element(&img) {
            return Err(AlgebraError::NotMultiplicative {
                detail: format!("coproduct differs at {}", crate::text::render_key(k)),
            });
        }
    }
    let graded = b.flags().graded;
    for x in &keys {
        for y in &keys {
            if graded {
                let (Some(dx), Some(dy)) = (b.degree(x), b.degree(y)) else {
                    continue;
                };
                if dx + dy > bound {
                    continue;
                }
            }
            let lhs = phi(&b.product(x, y)?)?;
            let rhs = a.product_elements(
                &phi(&Element::single(x.clone()))?,
                &phi(&Element::single(y.clone()))?,
            )?;
            if lhs != rhs {
                return Err(AlgebraError::NotMultiplicative {
                    detail: format!(
                        "product differs at ({}, {})",
                        crate::text::render_key(x),
                        crate::text::render_key(y)
                    ),
                });
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::*;
    use crate::text::{parse_element, parse_key};

    #[test]
    fn identity_covering_returns_its_input() {
        let f = identity_covering(&build_sym());
        let v = f
            .value(&parse_key("p[2,1]").unwrap(), &parse_key("pt").unwrap())
            .unwrap();
        assert_eq!(v, parse_element("p[2,1]").unwrap());
    }

    #[test]
    fn decree_extends_generator_values_multiplicatively() {
        let f = crate::registry::nsym_to_sym(6);
        // f(H2, p2) = p2: a generator pair straight from the rule.
        assert_eq!(
            f.value(&parse_key("H2").unwrap(), &parse_key("p2").unwrap())
                .unwrap(),
            parse_element("p2").unwrap()
        );
        // f(H2·H1, p[2,1]) expands through the coproduct of p[2,1].
        assert_eq!(
            f.value(&parse_key("H[2,1]").unwrap(), &parse_key("p[2,1]").unwrap())
                .unwrap(),
            parse_element("p[2,1]").unwrap()
        );
        // Unit pairs take the counit value.
        assert_eq!(
            f.value(&parse_key("H[]").unwrap(), &parse_key("p[1,1]").unwrap())
                .unwrap(),
            Element::zero()
        );
        assert_eq!(
            f.value(&parse_key("H[]").unwrap(), &parse_key("p[]").unwrap())
                .unwrap(),
            parse_element("p[]").unwrap()
        );
    }

    #[test]
    fn morphism_families_check_their_tables() {
        let sym = build_sym();
        let mut table = BTreeMap::new();
        for k in sym.keys_to_degree(3) {
            table.insert(k.clone(), Element::single(k));
        }
        let f = from_morphism_family("sym-self", &sym, &sym, &[("id".into(), table.clone())], 3)
            .unwrap();
        assert_eq!(
            f.value(&parse_key("p2").unwrap(), &parse_key("id").unwrap())
                .unwrap(),
            parse_element("p2").unwrap()
        );
        // Corrupt one image: p1 ↦ 2p1 is not even counit-preserving at p1's
        // products, and fails the map check.
        let mut bad = table;
        bad.insert(
            parse_key("p1").unwrap(),
            parse_element("2*p1").unwrap(),
        );
        let err = from_morphism_family("bad", &sym, &sym, &[("x".into(), bad)], 3).unwrap_err();
        assert!(matches!(err, AlgebraError::NotMultiplicative { .. }));
    }
}
