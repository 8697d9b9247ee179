//! Concatenation tensor product and its symmetric braiding.

use std::fmt;

use crate::category::{compose, ComposeFn, FactorTuple, IndexFunction, Morphism};
use crate::error::{Error, Result};

fn same_monoid(s: &FactorTuple, t: &FactorTuple) -> Result<()> {
    if s.monoid() != t.monoid() {
        return Err(Error::MonoidMismatch { left: s.monoid().name(), right: t.monoid().name() });
    }
    Ok(())
}

pub fn tensor_objects(s: &FactorTuple, t: &FactorTuple) -> Result<FactorTuple> {
    same_monoid(s, t)?;
    let mut entries = s.entries().to_vec();
    entries.extend_from_slice(t.entries());
    FactorTuple::new(s.monoid().clone(), entries)
}

/// `f ⊗ g`: codomain positions of `g` are shifted past those of `f`, and
/// their values past the domain of `f`.
pub fn tensor_morphisms(f: &Morphism, g: &Morphism) -> Result<Morphism> {
    let domain = tensor_objects(f.domain(), g.domain())?;
    let codomain = tensor_objects(f.codomain(), g.codomain())?;
    let n = f.domain().len();
    let mut values = f.map().values().to_vec();
    values.extend(g.map().values().iter().map(|&p| n + p));
    let map = IndexFunction::new(values, domain.len())?;
    Morphism::new(domain, codomain, map)
        .map_err(|e| Error::Internal(format!("tensor product is not order-constrained: {e}")))
}

/// The symmetry `s ⊗ t -> t ⊗ s`.
pub fn braiding(s: &FactorTuple, t: &FactorTuple) -> Result<Morphism> {
    let domain = tensor_objects(s, t)?;
    let codomain = tensor_objects(t, s)?;
    let n = s.len();
    let m = t.len();
    let values: Vec<usize> = (0..m).map(|i| n + i).chain(0..n).collect();
    let map = IndexFunction::new(values, n + m)?;
    Morphism::new(domain, codomain, map)
        .map_err(|e| Error::Internal(format!("braiding is not order-constrained: {e}")))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LawViolation {
    pub law: &'static str,
    pub detail: String,
}

impl fmt::Display for LawViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.law, self.detail)
    }
}

pub type LawResult = std::result::Result<(), LawViolation>;

/// Checks the monoidal laws using a pluggable composition, so a deliberately
/// broken composition can be fed in to exercise the checks themselves.
#[derive(Clone, Copy)]
pub struct LawChecker {
    compose: ComposeFn,
}

impl Default for LawChecker {
    fn default() -> Self {
        LawChecker { compose }
    }
}

fn lift<T>(law: &'static str, r: Result<T>) -> std::result::Result<T, LawViolation> {
    r.map_err(|e| LawViolation { law, detail: e.to_string() })
}

fn expect_eq(law: &'static str, lhs: &Morphism, rhs: &Morphism) -> LawResult {
    if lhs == rhs {
        Ok(())
    } else {
        Err(LawViolation { law, detail: format!("{lhs} differs from {rhs}") })
    }
}

impl LawChecker {
    pub fn with_compose(compose: ComposeFn) -> Self {
        LawChecker { compose }
    }

    fn c(&self, law: &'static str, g: &Morphism, f: &Morphism) -> std::result::Result<Morphism, LawViolation> {
        lift(law, (self.compose)(g, f))
    }

    /// `(h ⊗ k) ∘ (f ⊗ g) = (h ∘ f) ⊗ (k ∘ g)`.
    pub fn bifunctoriality(&self, f: &Morphism, g: &Morphism, h: &Morphism, k: &Morphism) -> LawResult {
        const LAW: &str = "bifunctoriality";
        let lhs = self.c(LAW, &lift(LAW, tensor_morphisms(h, k))?, &lift(LAW, tensor_morphisms(f, g))?)?;
        let rhs = lift(LAW, tensor_morphisms(&self.c(LAW, h, f)?, &self.c(LAW, k, g)?))?;
        expect_eq(LAW, &lhs, &rhs)?;
        // Identities tensor to identities.
        let ids = lift(LAW, tensor_morphisms(&Morphism::identity(f.domain()), &Morphism::identity(g.domain())))?;
        let id = Morphism::identity(&lift(LAW, tensor_objects(f.domain(), g.domain()))?);
        expect_eq(LAW, &ids, &id)
    }

    /// Strict associativity of the tensor on objects and morphisms.
    pub fn associativity(&self, f: &Morphism, g: &Morphism, h: &Morphism) -> LawResult {
        const LAW: &str = "strict associativity";
        let l = lift(LAW, tensor_morphisms(&lift(LAW, tensor_morphisms(f, g))?, h))?;
        let r = lift(LAW, tensor_morphisms(f, &lift(LAW, tensor_morphisms(g, h))?))?;
        expect_eq(LAW, &l, &r)?;
        let lo = lift(LAW, tensor_objects(&lift(LAW, tensor_objects(f.domain(), g.domain()))?, h.domain()))?;
        let ro = lift(LAW, tensor_objects(f.domain(), &lift(LAW, tensor_objects(g.domain(), h.domain()))?))?;
        if lo != ro {
            return Err(LawViolation { law: LAW, detail: format!("{lo} differs from {ro}") });
        }
        if lo.len() != f.domain().len() + g.domain().len() + h.domain().len() {
            return Err(LawViolation { law: LAW, detail: "length is not additive".into() });
        }
        Ok(())
    }

    /// The empty tuple is a strict two-sided unit.
    pub fn unit(&self, f: &Morphism) -> LawResult {
        const LAW: &str = "unit";
        let e = Morphism::identity(&FactorTuple::empty(f.monoid().clone()));
        expect_eq(LAW, &lift(LAW, tensor_morphisms(f, &e))?, f)?;
        expect_eq(LAW, &lift(LAW, tensor_morphisms(&e, f))?, f)
    }

    /// `B_{t,s} ∘ B_{s,t} = id`.
    pub fn braiding_involution(&self, s: &FactorTuple, t: &FactorTuple) -> LawResult {
        const LAW: &str = "braiding involution";
        let b = lift(LAW, braiding(s, t))?;
        let back = lift(LAW, braiding(t, s))?;
        let round = self.c(LAW, &back, &b)?;
        expect_eq(LAW, &round, &Morphism::identity(b.domain()))
    }

    /// `B_{w,z} ∘ (f ⊗ g) = (g ⊗ f) ∘ B_{x,y}` for `f: x -> w`, `g: y -> z`.
    pub fn braiding_naturality(&self, f: &Morphism, g: &Morphism) -> LawResult {
        const LAW: &str = "braiding naturality";
        let lhs = self.c(LAW, &lift(LAW, braiding(f.codomain(), g.codomain()))?, &lift(LAW, tensor_morphisms(f, g))?)?;
        let rhs = self.c(LAW, &lift(LAW, tensor_morphisms(g, f))?, &lift(LAW, braiding(f.domain(), g.domain()))?)?;
        expect_eq(LAW, &lhs, &rhs)
    }

    /// Both hexagons:
    /// `B_{x,y⊗z} = (id_y ⊗ B_{x,z}) ∘ (B_{x,y} ⊗ id_z)` and
    /// `B_{x⊗y,z} = (B_{x,z} ⊗ id_y) ∘ (id_x ⊗ B_{y,z})`.
    pub fn hexagon(&self, x: &FactorTuple, y: &FactorTuple, z: &FactorTuple) -> LawResult {
        const LAW: &str = "hexagon";
        let id = Morphism::identity;
        let yz = lift(LAW, tensor_objects(y, z))?;
        let lhs = lift(LAW, braiding(x, &yz))?;
        let first = lift(LAW, tensor_morphisms(&lift(LAW, braiding(x, y))?, &id(z)))?;
        let second = lift(LAW, tensor_morphisms(&id(y), &lift(LAW, braiding(x, z))?))?;
        expect_eq(LAW, &lhs, &self.c(LAW, &second, &first)?)?;

        let xy = lift(LAW, tensor_objects(x, y))?;
        let lhs = lift(LAW, braiding(&xy, z))?;
        let first = lift(LAW, tensor_morphisms(&id(x), &lift(LAW, braiding(y, z))?))?;
        let second = lift(LAW, tensor_morphisms(&lift(LAW, braiding(x, z))?, &id(y)))?;
        expect_eq(LAW, &lhs, &self.c(LAW, &second, &first)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monoid::{Element, Monoid};

    fn zt(v: &[i64]) -> FactorTuple {
        FactorTuple::new(Monoid::Integers, v.iter().map(|&x| Element::Int(x)).collect()).unwrap()
    }

    fn zm(d: &[i64], c: &[i64], map: &[usize]) -> Morphism {
        Morphism::from_one_based(zt(d), zt(c), map).unwrap()
    }

    #[test]
    fn tensor_of_objects() {
        assert_eq!(tensor_objects(&zt(&[2, 3]), &zt(&[5])).unwrap(), zt(&[2, 3, 5]));
        assert_eq!(tensor_objects(&zt(&[2, 3]), &zt(&[])).unwrap(), zt(&[2, 3]));
        assert_eq!(tensor_objects(&zt(&[]), &zt(&[])).unwrap(), zt(&[]));
        let nat = FactorTuple::empty(Monoid::Naturals);
        assert!(matches!(tensor_objects(&zt(&[]), &nat), Err(Error::MonoidMismatch { .. })));
    }

    #[test]
    fn tensor_of_morphisms() {
        let t = tensor_morphisms(&zm(&[2], &[6], &[1]), &zm(&[5], &[105], &[1])).unwrap();
        assert_eq!(t, zm(&[2, 5], &[6, 105], &[1, 2]));
        let f = zm(&[6, 35], &[2, 3, 5, 7], &[1, 1, 2, 2]);
        let e = Morphism::identity(&zt(&[]));
        assert_eq!(tensor_morphisms(&f, &e).unwrap(), f);
        assert_eq!(tensor_morphisms(&e, &f).unwrap(), f);
        let ids = tensor_morphisms(&Morphism::identity(&zt(&[2])), &Morphism::identity(&zt(&[3]))).unwrap();
        assert_eq!(ids, Morphism::identity(&zt(&[2, 3])));
    }

    #[test]
    fn braidings() {
        let b = braiding(&zt(&[2]), &zt(&[3, 5])).unwrap();
        assert_eq!(b, zm(&[2, 3, 5], &[3, 5, 2], &[2, 3, 1]));
        assert_eq!(braiding(&zt(&[]), &zt(&[4, 9])).unwrap(), Morphism::identity(&zt(&[4, 9])));
        let back = braiding(&zt(&[3, 5]), &zt(&[2])).unwrap();
        assert_eq!(compose(&back, &b).unwrap(), Morphism::identity(&zt(&[2, 3, 5])));
    }

    #[test]
    fn laws_hold_on_samples() {
        let lc = LawChecker::default();
        let f = zm(&[2], &[6], &[1]);
        let g = zm(&[6, 35], &[2, 3, 5, 7], &[1, 1, 2, 2]);
        let h = zm(&[6], &[12], &[1]);
        let k = zm(&[2, 3, 5, 7], &[7, 3, 10, 55], &[4, 2, 1, 3]);
        lc.bifunctoriality(&f, &g, &h, &k).unwrap();
        lc.associativity(&f, &g, &h).unwrap();
        lc.unit(&g).unwrap();
        lc.braiding_involution(&zt(&[2]), &zt(&[3, 5])).unwrap();
        lc.braiding_naturality(&f, &g).unwrap();
        lc.hexagon(&zt(&[2]), &zt(&[3, 5]), &zt(&[-1])).unwrap();
    }
}
