//! Objects and morphisms of the factorization category.
//!
//! A morphism `(x_1..x_N) -> (y_1..y_M)` is an index function running the
//! other way, `[M] -> [N]`, such that every `x_n` is below the product of
//! the `y_m` sent to `n`. Index functions are 0-based here and 1-based on
//! the wire.

use std::fmt;

use crate::arith;
use crate::error::{Error, Result};
use crate::monoid::{Element, Monoid};

/// Upper bound on the number of candidate index functions `hom_set` will scan.
pub const HOM_CANDIDATE_LIMIT: u128 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FactorTuple {
    monoid: Monoid,
    entries: Vec<Element>,
}

impl FactorTuple {
    pub fn new(monoid: Monoid, entries: Vec<Element>) -> Result<Self> {
        for e in &entries {
            monoid.check(e)?;
        }
        Ok(FactorTuple { monoid, entries })
    }

    pub fn empty(monoid: Monoid) -> Self {
        FactorTuple { monoid, entries: Vec::new() }
    }

    pub fn monoid(&self) -> &Monoid {
        &self.monoid
    }

    pub fn entries(&self) -> &[Element] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn product(&self) -> Result<Element> {
        self.monoid.product(&self.entries)
    }
}

impl fmt::Display for FactorTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return f.write_str("𝔬");
        }
        let parts: Vec<String> = self.entries.iter().map(|e| self.monoid.format(e)).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// A total function `[len] -> [range]`, stored 0-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IndexFunction {
    values: Vec<usize>,
    range: usize,
}

impl IndexFunction {
    pub fn new(values: Vec<usize>, range: usize) -> Result<Self> {
        if let Some(v) = values.iter().find(|&&v| v >= range) {
            return Err(Error::SizeMismatch(format!(
                "index value {} outside [1..{range}]",
                v + 1
            )));
        }
        Ok(IndexFunction { values, range })
    }

    /// Builds from 1-based values.
    pub fn from_one_based(values: &[usize], range: usize) -> Result<Self> {
        if values.contains(&0) {
            return Err(Error::SizeMismatch("index values are 1-based".into()));
        }
        Self::new(values.iter().map(|v| v - 1).collect(), range)
    }

    pub fn identity(n: usize) -> Self {
        IndexFunction { values: (0..n).collect(), range: n }
    }

    pub fn constant(len: usize, value: usize, range: usize) -> Result<Self> {
        Self::new(vec![value; len], range)
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn to_one_based(&self) -> Vec<usize> {
        self.values.iter().map(|v| v + 1).collect()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn range(&self) -> usize {
        self.range
    }

    pub fn apply(&self, i: usize) -> usize {
        self.values[i]
    }

    /// `self ∘ inner`, i.e. `p ↦ self(inner(p))`.
    pub fn after(&self, inner: &IndexFunction) -> Result<IndexFunction> {
        if inner.range != self.values.len() {
            return Err(Error::SizeMismatch("index functions are not composable".into()));
        }
        Ok(IndexFunction {
            values: inner.values.iter().map(|&p| self.values[p]).collect(),
            range: self.range,
        })
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.range];
        self.values.iter().all(|&v| !std::mem::replace(&mut seen[v], true))
    }

    pub fn is_surjective(&self) -> bool {
        let mut seen = vec![false; self.range];
        for &v in &self.values {
            seen[v] = true;
        }
        seen.into_iter().all(|s| s)
    }

    pub fn is_bijective(&self) -> bool {
        self.values.len() == self.range && self.is_injective()
    }

    /// Sorted image.
    pub fn image(&self) -> Vec<usize> {
        let mut seen = vec![false; self.range];
        for &v in &self.values {
            seen[v] = true;
        }
        (0..self.range).filter(|&n| seen[n]).collect()
    }

    /// Inverse of a bijection.
    pub fn inverse(&self) -> Option<IndexFunction> {
        if !self.is_bijective() {
            return None;
        }
        let mut inv = vec![0; self.range];
        for (m, &n) in self.values.iter().enumerate() {
            inv[n] = m;
        }
        Some(IndexFunction { values: inv, range: self.values.len() })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Morphism {
    domain: FactorTuple,
    codomain: FactorTuple,
    map: IndexFunction,
}

/// Products `∏_{m ∈ f⁻¹(n)} y_m` for every `n`.
fn fiber_products(monoid: &Monoid, range: usize, map: &[usize], ys: &[Element]) -> Result<Vec<Element>> {
    let mut out = vec![monoid.identity(); range];
    for (m, &n) in map.iter().enumerate() {
        out[n] = monoid.op(&out[n], &ys[m])?;
    }
    Ok(out)
}

impl Morphism {
    /// Validates the order constraint and returns the morphism.
    pub fn new(domain: FactorTuple, codomain: FactorTuple, map: IndexFunction) -> Result<Self> {
        if domain.monoid != codomain.monoid {
            return Err(Error::MonoidMismatch {
                left: domain.monoid.name(),
                right: codomain.monoid.name(),
            });
        }
        if map.len() != codomain.len() || map.range() != domain.len() {
            return Err(Error::SizeMismatch(format!(
                "map of length {} into [{}] does not fit {} -> {}",
                map.len(),
                map.range(),
                domain,
                codomain
            )));
        }
        let fibers = fiber_products(&domain.monoid, domain.len(), map.values(), codomain.entries())?;
        for (n, (x, p)) in domain.entries.iter().zip(&fibers).enumerate() {
            if !domain.monoid.leq(x, p) {
                return Err(Error::ConstraintViolation { index: n + 1 });
            }
        }
        Ok(Morphism { domain, codomain, map })
    }

    /// Skips validation; for maps produced by [`hom_maps`].
    pub(crate) fn new_unchecked(domain: FactorTuple, codomain: FactorTuple, map: IndexFunction) -> Self {
        Morphism { domain, codomain, map }
    }

    /// Convenience constructor taking a 1-based map.
    pub fn from_one_based(domain: FactorTuple, codomain: FactorTuple, map: &[usize]) -> Result<Self> {
        let f = IndexFunction::from_one_based(map, domain.len())?;
        Self::new(domain, codomain, f)
    }

    pub fn identity(t: &FactorTuple) -> Self {
        Morphism { domain: t.clone(), codomain: t.clone(), map: IndexFunction::identity(t.len()) }
    }

    pub fn domain(&self) -> &FactorTuple {
        &self.domain
    }

    pub fn codomain(&self) -> &FactorTuple {
        &self.codomain
    }

    pub fn map(&self) -> &IndexFunction {
        &self.map
    }

    pub fn monoid(&self) -> &Monoid {
        &self.domain.monoid
    }

    /// `∏_{m ∈ f⁻¹(n)} y_m` for each domain index `n`.
    pub fn fiber_products(&self) -> Result<Vec<Element>> {
        fiber_products(self.monoid(), self.domain.len(), self.map.values(), self.codomain.entries())
    }

    pub fn is_identity(&self) -> bool {
        self.domain == self.codomain && self.map == IndexFunction::identity(self.domain.len())
    }
}

impl fmt::Display for Morphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {} {:?}", self.domain, self.codomain, self.map.to_one_based())
    }
}

/// Signature shared by [`compose`] and substitutes injected by the oracle.
pub type ComposeFn = fn(&Morphism, &Morphism) -> Result<Morphism>;

/// `g ∘ f`: first `f`, then `g`. The index functions compose the other way.
pub fn compose(g: &Morphism, f: &Morphism) -> Result<Morphism> {
    if f.codomain != g.domain {
        return Err(Error::ObjectMismatch(format!(
            "codomain {} of the first morphism is not the domain {} of the second",
            f.codomain, g.domain
        )));
    }
    let map = f.map.after(&g.map)?;
    Morphism::new(f.domain.clone(), g.codomain.clone(), map)
        .map_err(|e| Error::Internal(format!("composite is not order-constrained: {e}")))
}

fn candidate_count(n: usize, m: usize) -> u128 {
    let mut c: u128 = 1;
    for _ in 0..m {
        c = c.saturating_mul(n as u128);
        if c > HOM_CANDIDATE_LIMIT {
            return c;
        }
    }
    c
}

/// All order-constrained index functions `[M] -> [N]`, lexicographic.
pub fn hom_maps(domain: &FactorTuple, codomain: &FactorTuple) -> Result<Vec<IndexFunction>> {
    if domain.monoid != codomain.monoid {
        return Err(Error::MonoidMismatch {
            left: domain.monoid.name(),
            right: codomain.monoid.name(),
        });
    }
    let n = domain.len();
    let m = codomain.len();
    let c = candidate_count(n, m);
    if c > HOM_CANDIDATE_LIMIT {
        return Err(Error::ResourceGuard { candidates: c, limit: HOM_CANDIDATE_LIMIT });
    }
    // Sub-products of ∏y cannot overflow once ∏y itself does not.
    codomain.product()?;
    let mut search = Search {
        monoid: &domain.monoid,
        xs: domain.entries(),
        ys: codomain.entries(),
        growing: domain.monoid.is_divisibility(),
        partial: vec![domain.monoid.identity(); n],
        current: Vec::with_capacity(m),
        out: Vec::new(),
    };
    search.run()?;
    Ok(search.out)
}

struct Search<'a> {
    monoid: &'a Monoid,
    xs: &'a [Element],
    ys: &'a [Element],
    /// Divisibility: fiber products only move up the order as entries join.
    /// Interval: they only move down.
    growing: bool,
    partial: Vec<Element>,
    current: Vec<usize>,
    out: Vec<IndexFunction>,
}

impl Search<'_> {
    fn unsatisfied(&self) -> usize {
        self.xs.iter().zip(&self.partial).filter(|(x, p)| !self.monoid.leq(x, p)).count()
    }

    fn viable(&self) -> bool {
        let bad = self.unsatisfied();
        if self.growing {
            bad <= self.ys.len() - self.current.len()
        } else {
            bad == 0
        }
    }

    fn run(&mut self) -> Result<()> {
        if !self.viable() {
            return Ok(());
        }
        let pos = self.current.len();
        if pos == self.ys.len() {
            if self.unsatisfied() == 0 {
                self.out.push(IndexFunction { values: self.current.clone(), range: self.xs.len() });
            }
            return Ok(());
        }
        for n in 0..self.xs.len() {
            let saved = self.partial[n].clone();
            self.partial[n] = self.monoid.op(&saved, &self.ys[pos])?;
            self.current.push(n);
            self.run()?;
            self.current.pop();
            self.partial[n] = saved;
        }
        Ok(())
    }
}

/// Every morphism `domain -> codomain`, in lexicographic order of the map.
pub fn hom_set(domain: &FactorTuple, codomain: &FactorTuple) -> Result<Vec<Morphism>> {
    Ok(hom_maps(domain, codomain)?
        .into_iter()
        .map(|map| Morphism { domain: domain.clone(), codomain: codomain.clone(), map })
        .collect())
}

pub fn is_epic(m: &Morphism) -> Result<bool> {
    m.monoid().require_divisibility("is_epic")?;
    Ok(m.map.is_injective())
}

pub fn is_monic(m: &Morphism) -> Result<bool> {
    m.monoid().require_divisibility("is_monic")?;
    Ok(m.map.is_surjective())
}

/// Units `u_n` with `u_n · x_n = y_{f⁻¹(n)}` when `m` is an isomorphism.
pub fn iso_units(m: &Morphism) -> Result<Option<Vec<Element>>> {
    let monoid = m.monoid();
    monoid.require_divisibility("is_isomorphism")?;
    if !m.map.is_bijective() {
        return Ok(None);
    }
    let fibers = m.fiber_products()?;
    let mut units = Vec::with_capacity(fibers.len());
    for (x, y) in m.domain.entries.iter().zip(&fibers) {
        match monoid.exact_divide(x, y)? {
            Some(u) if monoid.is_invertible(&u) => units.push(u),
            _ => return Ok(None),
        }
    }
    Ok(Some(units))
}

pub fn is_isomorphism(m: &Morphism) -> Result<bool> {
    Ok(iso_units(m)?.is_some())
}

/// The two-sided inverse, built on the inverse bijection.
pub fn inverse(m: &Morphism) -> Result<Option<Morphism>> {
    if !is_isomorphism(m)? {
        return Ok(None);
    }
    let inv = m.map.inverse().expect("bijective");
    Morphism::new(m.codomain.clone(), m.domain.clone(), inv)
        .map(Some)
        .map_err(|e| Error::Internal(format!("inverse is not order-constrained: {e}")))
}

/// A 1-tuple whose entry is invertible.
pub fn is_initial(t: &FactorTuple) -> Result<bool> {
    t.monoid.require_divisibility("is_initial")?;
    Ok(t.len() == 1 && t.monoid.is_invertible(&t.entries[0]))
}

/// A 1-tuple `(α)` with no morphism `(α) -> t`.
pub fn refute_terminal(t: &FactorTuple) -> Result<FactorTuple> {
    t.monoid.require_divisibility("refute_terminal")?;
    let p = t.product()?;
    let alpha = match (&t.monoid, &p) {
        (Monoid::Integers | Monoid::Naturals, Element::Int(v)) => {
            let a = v.unsigned_abs();
            if a > arith::TRIAL_DIVISION_BOUND as u64 {
                return Err(Error::OutOfRange { value: *v as i128, bound: arith::TRIAL_DIVISION_BOUND });
            }
            Element::Int(arith::next_prime_after(a) as i64)
        }
        (Monoid::Free(_), Element::Free(e)) => {
            let mut e = e.clone();
            e[0] = e[0].checked_add(1).ok_or(Error::Overflow)?;
            Element::Free(e)
        }
        _ => return Err(Error::Capability { op: "refute_terminal", monoid: t.monoid.name() }),
    };
    FactorTuple::new(t.monoid.clone(), vec![alpha])
}

/// The contravariant presheaf to sets, on morphisms.
pub fn underlying_function(m: &Morphism) -> &IndexFunction {
    &m.map
}

/// Sends a tuple to the product of its entries.
pub fn product_functor(t: &FactorTuple) -> Result<Element> {
    t.product()
}

/// Sends an element to the 1-tuple holding it.
pub fn embed_functor(monoid: &Monoid, a: Element) -> Result<FactorTuple> {
    FactorTuple::new(monoid.clone(), vec![a])
}

/// Order-respecting monoid homomorphisms shipped with the library.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Homomorphism {
    Identity,
    /// Inclusion of the positive integers into the nonzero integers.
    NaturalsToIntegers,
    /// Free monoid to nonzero integers, one image per generator.
    FreeToIntegers(Vec<i64>),
}

impl Homomorphism {
    /// Sends the generators of `source` to the first primes.
    pub fn free_to_primes(source: &Monoid) -> Result<Homomorphism> {
        let gens = source.generators().ok_or_else(|| {
            Error::UnsupportedHomomorphism(format!("`{source}` is not a free monoid"))
        })?;
        Ok(Homomorphism::FreeToIntegers(
            arith::first_primes(gens.len()).into_iter().map(|p| p as i64).collect(),
        ))
    }

    pub fn target(&self, source: &Monoid) -> Result<Monoid> {
        match (self, source) {
            (Homomorphism::Identity, _) => Ok(source.clone()),
            (Homomorphism::NaturalsToIntegers, Monoid::Naturals) => Ok(Monoid::Integers),
            (Homomorphism::FreeToIntegers(images), Monoid::Free(gens)) => {
                if images.len() != gens.len() {
                    return Err(Error::UnsupportedHomomorphism(format!(
                        "{} generator images for {} generators",
                        images.len(),
                        gens.len()
                    )));
                }
                if images.contains(&0) {
                    return Err(Error::UnsupportedHomomorphism("generator sent to 0".into()));
                }
                Ok(Monoid::Integers)
            }
            _ => Err(Error::UnsupportedHomomorphism(format!("{self:?} does not apply to `{source}`"))),
        }
    }

    pub fn apply(&self, source: &Monoid, a: &Element) -> Result<Element> {
        let target = self.target(source)?;
        source.check(a)?;
        match (self, a) {
            (Homomorphism::Identity, _) | (Homomorphism::NaturalsToIntegers, _) => Ok(a.clone()),
            (Homomorphism::FreeToIntegers(images), Element::Free(e)) => {
                let mut acc = target.identity();
                for (&img, &k) in images.iter().zip(e) {
                    for _ in 0..k {
                        acc = target.op(&acc, &Element::Int(img))?;
                    }
                }
                Ok(acc)
            }
            _ => Err(Error::UnsupportedHomomorphism(format!("cannot map {a:?}"))),
        }
    }

    pub fn apply_tuple(&self, t: &FactorTuple) -> Result<FactorTuple> {
        let target = self.target(&t.monoid)?;
        let entries = t.entries.iter().map(|a| self.apply(&t.monoid, a)).collect::<Result<_>>()?;
        FactorTuple::new(target, entries)
    }
}

/// Applies `phi` entrywise to both tuples and keeps the index function.
pub fn map_along_hom(phi: &Homomorphism, m: &Morphism) -> Result<Morphism> {
    let d = phi.apply_tuple(&m.domain)?;
    let c = phi.apply_tuple(&m.codomain)?;
    Morphism::new(d, c, m.map.clone())
        .map_err(|e| Error::Internal(format!("image of a morphism is not order-constrained: {e}")))
}
