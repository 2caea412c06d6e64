//! Handles describing coalgebras and bialgebras.
//!
//! A handle packages a named basis (graded or finite), the structure maps
//! as closures on basis keys, and declared structural flags.  Handles are
//! cheap to clone (`Arc` underneath) and are identified by name: operations
//! that combine two handles require matching names on the shared side.
//!
//! Graded handles enumerate a finite basis in every degree.  Finite-type
//! handles place their whole (finite) basis at pseudo-degree 0, so the same
//! sweep code covers both shapes.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::basis::BasisKey;
use crate::element::Element;
use crate::error::{AlgebraError, Result};
use crate::scalar::Scalar;

pub type DegreeFn = Arc<dyn Fn(&BasisKey) -> Option<u32> + Send + Sync>;
pub type EnumerateFn = Arc<dyn Fn(u32) -> Vec<BasisKey> + Send + Sync>;
pub type CoproductFn = Arc<dyn Fn(&BasisKey) -> Element + Send + Sync>;
pub type CounitFn = Arc<dyn Fn(&BasisKey) -> Scalar + Send + Sync>;
pub type ProductFn = Arc<dyn Fn(&BasisKey, &BasisKey) -> Result<Element> + Send + Sync>;

/// A graded (or pseudo-graded) basis: a degree function plus an enumerator
/// of the finite basis in each degree.
#[derive(Clone)]
pub struct GradedBasis {
    pub degree: DegreeFn,
    pub enumerate: EnumerateFn,
}

impl GradedBasis {
    pub fn new(
        degree: impl Fn(&BasisKey) -> Option<u32> + Send + Sync + 'static,
        enumerate: impl Fn(u32) -> Vec<BasisKey> + Send + Sync + 'static,
    ) -> Self {
        GradedBasis {
            degree: Arc::new(degree),
            enumerate: Arc::new(enumerate),
        }
    }
}

/// Declared structural properties of a handle.
///
/// `commutative` and `hopf_claimed` concern the algebra side and are
/// ignored on coalgebra-only handles.  `finite_type` marks handles whose
/// whole basis lives at pseudo-degree 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct StructureFlags {
    pub graded: bool,
    pub connected: bool,
    pub cocommutative: bool,
    pub commutative: bool,
    pub hopf_claimed: bool,
    pub finite_type: bool,
}

struct CoalgebraData {
    name: String,
    basis: GradedBasis,
    coproduct: CoproductFn,
    counit: CounitFn,
    flags: StructureFlags,
}

/// A coalgebra presented on an explicit basis.
#[derive(Clone)]
pub struct CoalgebraHandle {
    inner: Arc<CoalgebraData>,
}

impl std::fmt::Debug for CoalgebraHandle {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("CoalgebraHandle")
            .field("name", &self.inner.name)
            .field("flags", &self.inner.flags)
            .finish_non_exhaustive()
    }
}

impl CoalgebraHandle {
    pub fn new(
        name: impl Into<String>,
        basis: GradedBasis,
        coproduct: CoproductFn,
        counit: CounitFn,
        flags: StructureFlags,
    ) -> Self {
        CoalgebraHandle {
            inner: Arc::new(CoalgebraData {
                name: name.into(),
                basis,
                coproduct,
                counit,
                flags,
            }),
        }
    }

    pub fn name(&self) -> &str {
        &self.inner.name
    }

    pub fn flags(&self) -> StructureFlags {
        self.inner.flags
    }

    pub fn graded_basis(&self) -> &GradedBasis {
        &self.inner.basis
    }

    /// Degree of a basis key, `None` if the key does not belong here.
    pub fn degree(&self, key: &BasisKey) -> Option<u32> {
        (self.inner.basis.degree)(key)
    }

    /// The basis of the degree-`n` component, in canonical order.
    pub fn basis_at(&self, n: u32) -> Vec<BasisKey> {
        (self.inner.basis.enumerate)(n)
    }

    pub fn dim_at(&self, n: u32) -> usize {
        self.basis_at(n).len()
    }

    /// All basis keys of degree at most `n`; for finite-type handles this
    /// is the whole basis regardless of `n`.
    pub fn keys_to_degree(&self, n: u32) -> Vec<BasisKey> {
        if self.inner.flags.finite_type {
            self.basis_at(0)
        } else {
            (0..=n).flat_map(|d| self.basis_at(d)).collect()
        }
    }

    pub fn coproduct(&self, key: &BasisKey) -> Element {
        (self.inner.coproduct)(key)
    }

    pub fn coproduct_element(&self, x: &Element) -> Element {
        x.map_basis(|k| self.coproduct(k))
    }

    pub fn counit(&self, key: &BasisKey) -> Scalar {
        (self.inner.counit)(key)
    }

    pub fn counit_element(&self, x: &Element) -> Scalar {
        let mut acc = Scalar::zero();
        for (k, c) in x.iter() {
            let e = self.counit(k);
            if !e.is_zero() {
                acc += &(&e * c);
            }
        }
        acc
    }

    /// The `parts`-fold iterated coproduct, right-nested: `parts = 1` is
    /// the identity, `parts = 2` the coproduct itself.
    pub fn iterated_coproduct(&self, key: &BasisKey, parts: u32) -> Element {
        assert!(parts >= 1, "iterated coproduct needs at least one factor");
        if parts == 1 {
            return Element::single(key.clone());
        }
        self.coproduct(key).map_basis(|k| {
            let (a, b) = k.as_tensor().expect("coproduct produces tensor keys");
            Element::single(a.clone()).tensor(&self.iterated_coproduct(b, parts - 1))
        })
    }

    /// A clone of this handle under a different name.
    pub fn renamed(&self, name: impl Into<String>) -> Self {
        CoalgebraHandle {
            inner: Arc::new(CoalgebraData {
                name: name.into(),
                basis: self.inner.basis.clone(),
                coproduct: self.inner.coproduct.clone(),
                counit: self.inner.counit.clone(),
                flags: self.inner.flags,
            }),
        }
    }

    /// Projection of `x` onto its degree-`n` homogeneous component.
    pub fn homogeneous_component(&self, x: &Element, n: u32) -> Result<Element> {
        let mut out = Element::zero();
        for (k, c) in x.iter() {
            let d = self.degree(k).ok_or_else(|| AlgebraError::UnknownKey {
                key: crate::text::render_key(k),
                context: format!("basis of {}", self.name()),
            })?;
            if d == n {
                out.add_term(k.clone(), c.clone());
            }
        }
        Ok(out)
    }
}

struct AlgebraData {
    product: ProductFn,
    unit: Element,
}

/// A bialgebra: a coalgebra handle together with a compatible product and
/// unit.  The unit is a general element so that duals of monoid algebras
/// (whose unit is a sum of basis functionals) fit the same interface.
#[derive(Clone)]
pub struct BialgebraHandle {
    coalg: CoalgebraHandle,
    alg: Arc<AlgebraData>,
}

impl std::fmt::Debug for BialgebraHandle {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("BialgebraHandle")
            .field("name", &self.coalg.name())
            .field("flags", &self.coalg.flags())
            .finish_non_exhaustive()
    }
}

impl BialgebraHandle {
    pub fn new(coalg: CoalgebraHandle, product: ProductFn, unit: Element) -> Self {
        BialgebraHandle {
            coalg,
            alg: Arc::new(AlgebraData { product, unit }),
        }
    }

    pub fn name(&self) -> &str {
        self.coalg.name()
    }

    pub fn flags(&self) -> StructureFlags {
        self.coalg.flags()
    }

    /// The underlying coalgebra, renamed `coalg(<name>)`.
    pub fn as_coalgebra(&self) -> CoalgebraHandle {
        self.coalg.renamed(format!("coalg({})", self.name()))
    }

    /// The underlying coalgebra handle without renaming.
    pub fn coalgebra_handle(&self) -> &CoalgebraHandle {
        &self.coalg
    }

    pub fn degree(&self, key: &BasisKey) -> Option<u32> {
        self.coalg.degree(key)
    }

    pub fn basis_at(&self, n: u32) -> Vec<BasisKey> {
        self.coalg.basis_at(n)
    }

    pub fn keys_to_degree(&self, n: u32) -> Vec<BasisKey> {
        self.coalg.keys_to_degree(n)
    }

    pub fn coproduct(&self, key: &BasisKey) -> Element {
        self.coalg.coproduct(key)
    }

    pub fn coproduct_element(&self, x: &Element) -> Element {
        self.coalg.coproduct_element(x)
    }

    pub fn counit(&self, key: &BasisKey) -> Scalar {
        self.coalg.counit(key)
    }

    pub fn counit_element(&self, x: &Element) -> Scalar {
        self.coalg.counit_element(x)
    }

    pub fn iterated_coproduct(&self, key: &BasisKey, parts: u32) -> Element {
        self.coalg.iterated_coproduct(key, parts)
    }

    pub fn product(&self, a: &BasisKey, b: &BasisKey) -> Result<Element> {
        (self.alg.product)(a, b)
    }

    /// Bilinear extension of the product.
    pub fn product_elements(&self, x: &Element, y: &Element) -> Result<Element> {
        let mut out = Element::zero();
        for (ka, ca) in x.iter() {
            for (kb, cb) in y.iter() {
                let prod = self.product(ka, kb)?;
                out.add_scaled(&prod, &(ca * cb));
            }
        }
        Ok(out)
    }

    pub fn unit(&self) -> &Element {
        &self.alg.unit
    }

    /// The unit as a single basis key, when it is one with coefficient 1.
    pub fn unit_key(&self) -> Option<&BasisKey> {
        let mut it = self.alg.unit.iter();
        match (it.next(), it.next()) {
            (Some((k, c)), None) if c.is_one() => Some(k),
            _ => None,
        }
    }

    pub fn scaled_unit(&self, c: &Scalar) -> Element {
        self.alg.unit.scale(c)
    }
}

/// Groups keys of an element by degree.
pub fn split_by_degree(h: &CoalgebraHandle, x: &Element) -> Result<BTreeMap<u32, Element>> {
    let mut out: BTreeMap<u32, Element> = BTreeMap::new();
    for (k, c) in x.iter() {
        let d = h.degree(k).ok_or_else(|| AlgebraError::UnknownKey {
            key: crate::text::render_key(k),
            context: format!("basis of {}", h.name()),
        })?;
        out.entry(d).or_default().add_term(k.clone(), c.clone());
    }
    Ok(out)
}

/// Product on the componentwise algebra `A ⊗ A`, extended bilinearly:
/// `(a⊗b)·(c⊗d) = ac ⊗ bd`.
pub fn tensor_square_product(h: &BialgebraHandle, x: &Element, y: &Element) -> Result<Element> {
    let mut out = Element::zero();
    for (kx, cx) in x.iter() {
        let (x1, x2) = kx.as_tensor()?;
        for (ky, cy) in y.iter() {
            let (y1, y2) = ky.as_tensor()?;
            let left = h.product(x1, y1)?;
            if left.is_zero() {
                continue;
            }
            let right = h.product(x2, y2)?;
            out.add_scaled(&left.tensor(&right), &(cx * cy));
        }
    }
    Ok(out)
}

/// The structure-constant dual of a finite-type bialgebra.
///
/// Products dualize the coproduct and vice versa; the declared
/// `commutative`/`cocommutative` flags swap accordingly.
pub fn dual_bialgebra(h: &BialgebraHandle) -> Result<BialgebraHandle> {
    if !h.flags().finite_type {
        return Err(AlgebraError::NotFiniteType {
            name: h.name().to_string(),
            operation: "dual".into(),
        });
    }
    let keys = h.keys_to_degree(0);
    // Dual product: (x_i · x_j)(k) = coefficient of k_i ⊗ k_j in Δk.
    let mut dual_product: BTreeMap<(BasisKey, BasisKey), Element> = BTreeMap::new();
    for k in &keys {
        for (t, c) in h.coproduct(k).iter() {
            let (a, b) = t.as_tensor()?;
            dual_product
                .entry((a.clone(), b.clone()))
                .or_insert_with(Element::zero)
                .add_term(k.clone(), c.clone());
        }
    }
    // Dual coproduct: Δ(x_k) = Σ_{i,j} ⟨k in k_i·k_j⟩ x_i ⊗ x_j.
    let mut dual_coproduct: BTreeMap<BasisKey, Element> = BTreeMap::new();
    for i in &keys {
        for j in &keys {
            for (k, c) in h.product(i, j)?.iter() {
                dual_coproduct
                    .entry(k.clone())
                    .or_insert_with(Element::zero)
                    .add_term(BasisKey::tensor(i.clone(), j.clone()), c.clone());
            }
        }
    }
    let dual_unit = Element::from_terms(keys.iter().map(|k| (k.clone(), h.counit(k))));
    let unit_elem = h.unit().clone();
    let counit_table: BTreeMap<BasisKey, Scalar> = keys
        .iter()
        .map(|k| (k.clone(), unit_elem.coeff(k)))
        .collect();

    let flags = StructureFlags {
        graded: false,
        connected: false,
        cocommutative: h.flags().commutative,
        commutative: h.flags().cocommutative,
        hopf_claimed: h.flags().hopf_claimed,
        finite_type: true,
    };
    let all_keys = keys.clone();
    let basis = GradedBasis::new(
        {
            let keys = keys.clone();
            move |k| keys.contains(k).then_some(0)
        },
        move |n| if n == 0 { all_keys.clone() } else { Vec::new() },
    );
    let coalg = CoalgebraHandle::new(
        format!("dual({})", h.name()),
        basis,
        Arc::new(move |k: &BasisKey| dual_coproduct.get(k).cloned().unwrap_or_default()),
        Arc::new(move |k: &BasisKey| {
            counit_table.get(k).cloned().unwrap_or_else(Scalar::zero)
        }),
        flags,
    );
    Ok(BialgebraHandle::new(
        coalg,
        Arc::new(move |a: &BasisKey, b: &BasisKey| {
            // Pairs appearing in no coproduct multiply to zero.
            Ok(dual_product
                .get(&(a.clone(), b.clone()))
                .cloned()
                .unwrap_or_default())
        }),
        dual_unit,
    ))
}
