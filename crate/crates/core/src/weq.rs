//! Quotient witnesses, weak equivalences and the canonical
//! drop-units / divisibility / factorization decomposition.

use crate::category::{compose, FactorTuple, IndexFunction, Morphism};
use crate::error::{Error, Result};
use crate::monoid::Element;

/// `r_n · x_n = ∏_{f(m)=n} y_m` and `r · ∏x = ∏y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientWitness {
    /// Empty when the codomain is the empty tuple.
    pub per_index: Vec<Element>,
    pub total: Element,
}

pub fn quotient_witnesses(m: &Morphism) -> Result<QuotientWitness> {
    let monoid = m.monoid();
    monoid.require_divisibility("quotient_witnesses")?;
    if m.codomain().is_empty() {
        let p = m.domain().product()?;
        let total = monoid
            .inverse(&p)
            .ok_or_else(|| Error::Internal(format!("{p:?} should be invertible")))?;
        return Ok(QuotientWitness { per_index: Vec::new(), total });
    }
    let fibers = m.fiber_products()?;
    let mut per_index = Vec::with_capacity(fibers.len());
    for (x, y) in m.domain().entries().iter().zip(&fibers) {
        let r = monoid
            .exact_divide(x, y)?
            .ok_or_else(|| Error::Internal("validated morphism fails divisibility".into()))?;
        per_index.push(r);
    }
    let total = monoid.product(&per_index)?;
    Ok(QuotientWitness { per_index, total })
}

/// Total witness `r` alone.
pub fn total_witness(m: &Morphism) -> Result<Element> {
    Ok(quotient_witnesses(m)?.total)
}

pub fn is_weak_equivalence(m: &Morphism) -> Result<bool> {
    let w = quotient_witnesses(m)?;
    Ok(m.codomain().is_empty() || m.monoid().is_invertible(&w.total))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EipDecomposition {
    /// Drops the domain entries outside the image; epic.
    pub epsilon: Morphism,
    /// Identity-indexed `(z_p) -> (a_p z_p)`.
    pub delta: Morphism,
    /// Factorization morphism onto the codomain; monic.
    pub phi: Morphism,
    /// The ratios `a_p`.
    pub factors: Vec<Element>,
    /// Product of the dropped (necessarily invertible) domain entries.
    pub dropped_unit: Element,
}

pub fn decompose_eip(m: &Morphism) -> Result<EipDecomposition> {
    let monoid = m.monoid();
    monoid.require_divisibility("decompose_eip")?;
    if m.domain().is_empty() || m.codomain().is_empty() {
        return Err(Error::Precondition("decomposition needs non-empty tuples".into()));
    }
    let xs = m.domain().entries();
    let image = m.map().image();
    let fibers = m.fiber_products()?;

    let z: Vec<Element> = image.iter().map(|&n| xs[n].clone()).collect();
    let w: Vec<Element> = image.iter().map(|&n| fibers[n].clone()).collect();
    let mut factors = Vec::with_capacity(z.len());
    for (zp, wp) in z.iter().zip(&w) {
        factors.push(
            monoid
                .exact_divide(zp, wp)?
                .ok_or_else(|| Error::Internal("validated morphism fails divisibility".into()))?,
        );
    }
    let dropped: Vec<&Element> =
        (0..xs.len()).filter(|n| image.binary_search(n).is_err()).map(|n| &xs[n]).collect();
    let dropped_unit = monoid.product(dropped)?;

    let mut position = vec![usize::MAX; xs.len()];
    for (p, &n) in image.iter().enumerate() {
        position[n] = p;
    }
    let phi_map: Vec<usize> = m.map().values().iter().map(|&n| position[n]).collect();

    let zt = FactorTuple::new(monoid.clone(), z)?;
    let wt = FactorTuple::new(monoid.clone(), w)?;
    let internal = |what: &str, e: Error| Error::Internal(format!("{what}: {e}"));
    let epsilon = Morphism::new(m.domain().clone(), zt.clone(), IndexFunction::new(image.clone(), xs.len())?)
        .map_err(|e| internal("drop-units part", e))?;
    let delta = Morphism::new(zt, wt.clone(), IndexFunction::identity(image.len()))
        .map_err(|e| internal("divisibility part", e))?;
    let phi = Morphism::new(wt, m.codomain().clone(), IndexFunction::new(phi_map, image.len())?)
        .map_err(|e| internal("factorization part", e))?;

    if compose(&phi, &compose(&delta, &epsilon)?)? != *m {
        return Err(Error::Internal("decomposition does not recompose".into()));
    }
    Ok(EipDecomposition { epsilon, delta, phi, factors, dropped_unit })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DeltaClass {
    WeakEquivalence,
    Proper,
}

/// Weak equivalence exactly when the divisibility part is an isomorphism.
pub fn classify_by_delta(m: &Morphism) -> Result<DeltaClass> {
    let d = decompose_eip(m)?;
    let monoid = m.monoid();
    Ok(if d.factors.iter().all(|a| monoid.is_invertible(a)) {
        DeltaClass::WeakEquivalence
    } else {
        DeltaClass::Proper
    })
}

/// Completes `g` and a weak equivalence `f` with common codomain to a
/// commuting square `f ∘ g' = g ∘ f'` with `f'` a weak equivalence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OreSquare {
    /// `(∏z) -> (z_p)` where `(z_p)` is the domain of `g`.
    pub f_prime: Morphism,
    /// `(∏z) -> (x_n)` where `(x_n)` is the domain of `f`.
    pub g_prime: Morphism,
}

/// The morphism `(∏t) -> t` sending every entry of `t` to the single entry.
fn collapse(apex: &Element, t: &FactorTuple) -> Result<Morphism> {
    let top = FactorTuple::new(t.monoid().clone(), vec![apex.clone()])?;
    Morphism::new(top, t.clone(), IndexFunction::constant(t.len(), 0, 1)?)
}

pub fn ore_square(f: &Morphism, g: &Morphism) -> Result<OreSquare> {
    if !is_weak_equivalence(f)? {
        return Err(Error::Precondition(format!("{f} is not a weak equivalence")));
    }
    if f.codomain() != g.codomain() {
        return Err(Error::ObjectMismatch(format!("{} and {} have different codomains", f, g)));
    }
    let apex = g.domain().product()?;
    let f_prime = collapse(&apex, g.domain())
        .map_err(|e| Error::Internal(format!("apex leg onto the domain of g: {e}")))?;
    let g_prime = collapse(&apex, f.domain())
        .map_err(|e| Error::Internal(format!("apex leg onto the domain of f: {e}")))?;
    if compose(f, &g_prime)? != compose(g, &f_prime)? {
        return Err(Error::Internal("square does not commute".into()));
    }
    if !is_weak_equivalence(&f_prime)? {
        return Err(Error::Internal("apex leg is not a weak equivalence".into()));
    }
    Ok(OreSquare { f_prime, g_prime })
}

/// Given parallel `f, f2` and a weak equivalence `g` with `g∘f = g∘f2`,
/// returns a weak equivalence `h` with `f∘h = f2∘h`.
pub fn right_cancel_witness(f: &Morphism, f2: &Morphism, g: &Morphism) -> Result<Morphism> {
    if f.domain() != f2.domain() || f.codomain() != f2.codomain() {
        return Err(Error::ObjectMismatch("the two morphisms are not parallel".into()));
    }
    if !is_weak_equivalence(g)? {
        return Err(Error::Precondition(format!("{g} is not a weak equivalence")));
    }
    if compose(g, f)? != compose(g, f2)? {
        return Err(Error::Precondition("the composites with g differ".into()));
    }
    let h = collapse(&f.domain().product()?, f.domain())
        .map_err(|e| Error::Internal(format!("collapse onto the domain: {e}")))?;
    if compose(f, &h)? != compose(f2, &h)? {
        return Err(Error::Internal("witness does not equalize".into()));
    }
    if !is_weak_equivalence(&h)? {
        return Err(Error::Internal("witness is not a weak equivalence".into()));
    }
    Ok(h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monoid::Monoid;

    fn z(v: i64) -> Element {
        Element::Int(v)
    }

    fn zt(v: &[i64]) -> FactorTuple {
        FactorTuple::new(Monoid::Integers, v.iter().map(|&x| z(x)).collect()).unwrap()
    }

    fn zm(d: &[i64], c: &[i64], map: &[usize]) -> Morphism {
        Morphism::from_one_based(zt(d), zt(c), map).unwrap()
    }

    #[test]
    fn witnesses() {
        let w = quotient_witnesses(&zm(&[6, 1, 35], &[2, 7, 33, 65], &[1, 3, 1, 3])).unwrap();
        assert_eq!(w.per_index, vec![z(11), z(1), z(13)]);
        assert_eq!(w.total, z(143));
        let id = quotient_witnesses(&Morphism::identity(&zt(&[4, 9]))).unwrap();
        assert_eq!(id.per_index, vec![z(1), z(1)]);
        assert_eq!(id.total, z(1));
        let drop = quotient_witnesses(&zm(&[1, -1], &[], &[])).unwrap();
        assert!(drop.per_index.is_empty());
        assert_eq!(drop.total, z(-1));
    }

    #[test]
    fn weak_equivalences() {
        assert!(is_weak_equivalence(&zm(&[210], &[2, 3, 5, 7], &[1, 1, 1, 1])).unwrap());
        assert!(!is_weak_equivalence(&zm(&[2], &[6], &[1])).unwrap());
        assert!(is_weak_equivalence(&zm(&[6, 1, 1], &[6], &[1])).unwrap());
        let i = FactorTuple::new(Monoid::UnitInterval, vec![]).unwrap();
        assert!(matches!(
            is_weak_equivalence(&Morphism::identity(&i)),
            Err(Error::Capability { .. })
        ));
    }

    #[test]
    fn decomposition() {
        let d = decompose_eip(&zm(&[6, 1, 35], &[2, 7, 33, 65], &[1, 3, 1, 3])).unwrap();
        assert_eq!(d.epsilon, zm(&[6, 1, 35], &[6, 35], &[1, 3]));
        assert_eq!(d.delta, zm(&[6, 35], &[66, 455], &[1, 2]));
        assert_eq!(d.phi, zm(&[66, 455], &[2, 7, 33, 65], &[1, 2, 1, 2]));
        assert_eq!(d.factors, vec![z(11), z(13)]);
        assert_eq!(d.dropped_unit, z(1));

        let id = Morphism::identity(&zt(&[2, 3]));
        let d = decompose_eip(&id).unwrap();
        assert_eq!((&d.epsilon, &d.delta, &d.phi), (&id, &id, &id));

        let div = zm(&[2], &[6], &[1]);
        let d = decompose_eip(&div).unwrap();
        assert!(d.epsilon.is_identity() && d.phi.is_identity());
        assert_eq!(d.delta, div);

        assert!(matches!(decompose_eip(&zm(&[-1], &[], &[])), Err(Error::Precondition(_))));
    }

    #[test]
    fn delta_classes() {
        let c = |m: Morphism| classify_by_delta(&m).unwrap();
        assert_eq!(c(zm(&[6, 1, 35], &[2, 7, 33, 65], &[1, 3, 1, 3])), DeltaClass::Proper);
        assert_eq!(c(zm(&[210], &[2, 3, 5, 7], &[1, 1, 1, 1])), DeltaClass::WeakEquivalence);
        assert_eq!(c(zm(&[2, 3, 1, 1], &[2, 7, 3, 5], &[1, 1, 2, 2])), DeltaClass::Proper);
    }

    #[test]
    fn ore_squares() {
        let f = zm(&[210], &[2, 3, 5, 7], &[1, 1, 1, 1]);
        let g = zm(&[10, 21], &[2, 3, 5, 7], &[1, 2, 1, 2]);
        let sq = ore_square(&f, &g).unwrap();
        assert_eq!(sq.f_prime, zm(&[210], &[10, 21], &[1, 1]));
        assert_eq!(sq.g_prime, zm(&[210], &[210], &[1]));

        let f = zm(&[6], &[2, 3], &[1, 1]);
        let g = zm(&[2], &[2, 3], &[1, 1]);
        let sq = ore_square(&f, &g).unwrap();
        assert_eq!(sq.f_prime, zm(&[2], &[2], &[1]));
        assert_eq!(sq.g_prime, zm(&[2], &[6], &[1]));

        let id = Morphism::identity(&zt(&[5]));
        let sq = ore_square(&id, &id).unwrap();
        assert!(sq.f_prime.is_identity() && sq.g_prime.is_identity());

        let not_weq = zm(&[2], &[6], &[1]);
        assert!(matches!(ore_square(&not_weq, &not_weq), Err(Error::Precondition(_))));
    }

    #[test]
    fn right_cancellation() {
        let f = zm(&[1, 2], &[1, 2], &[1, 2]);
        let f2 = zm(&[1, 2], &[1, 2], &[2, 2]);
        let g = zm(&[1, 2], &[2], &[2]);
        assert_eq!(compose(&g, &f).unwrap(), compose(&g, &f2).unwrap());
        let h = right_cancel_witness(&f, &f2, &g).unwrap();
        assert_eq!(h, zm(&[2], &[1, 2], &[1, 1]));

        let h = right_cancel_witness(&f, &f, &g).unwrap();
        assert_eq!(h.domain(), &zt(&[2]));

        let one = zm(&[6], &[6], &[1]);
        let h = right_cancel_witness(&one, &one, &one).unwrap();
        assert!(h.is_identity());

        let g_bad = zm(&[1, 2], &[1, 2], &[1, 2]);
        assert!(matches!(right_cancel_witness(&f, &f2, &g_bad), Err(Error::Precondition(_))));
    }
}
