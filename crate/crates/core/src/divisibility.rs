//! Weak divisibility of morphisms and the factorization probes built on it.

use crate::category::{compose, FactorTuple, IndexFunction, Morphism};
use crate::error::{Error, Result};
use crate::monoid::{Element, Monoid};
use crate::monoidal::tensor_morphisms;
use crate::weq::{decompose_eip, is_weak_equivalence, total_witness};

/// Outcome of a weak divisibility test, with both total witnesses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeakDivision {
    pub holds: bool,
    /// Total witness of the divisor.
    pub s: Element,
    /// Total witness of the dividend.
    pub r: Element,
}

/// `f |_w g` iff the total witness of `f` divides that of `g`.
pub fn weak_division(f: &Morphism, g: &Morphism) -> Result<WeakDivision> {
    same_monoid(f, g)?;
    let s = total_witness(f)?;
    let r = total_witness(g)?;
    let holds = f.monoid().divides(&s, &r)?;
    Ok(WeakDivision { holds, s, r })
}

pub fn weakly_divides(f: &Morphism, g: &Morphism) -> Result<bool> {
    Ok(weak_division(f, g)?.holds)
}

/// The product criterion: for `f: (v) -> (w)` and `g: (x) -> (y)`,
/// `∏x·∏w | ∏v·∏y`. Agrees with [`weakly_divides`].
pub fn weakly_divides_by_products(f: &Morphism, g: &Morphism) -> Result<bool> {
    same_monoid(f, g)?;
    let monoid = f.monoid();
    monoid.require_divisibility("weakly_divides")?;
    let lhs = monoid.op(&g.domain().product()?, &f.codomain().product()?)?;
    let rhs = monoid.op(&f.domain().product()?, &g.codomain().product()?)?;
    monoid.divides(&lhs, &rhs)
}

fn same_monoid(f: &Morphism, g: &Morphism) -> Result<()> {
    if f.monoid() != g.monoid() {
        return Err(Error::MonoidMismatch { left: f.monoid().name(), right: g.monoid().name() });
    }
    Ok(())
}

/// The square witnessing `f |_w g` for `f: (v) -> (w)`, `g: (x) -> (y)`:
///
/// ```text
/// (a)⊗(x) <-mu-- (a·∏x) --alpha--> (b)⊗(v)
///    |id⊗g                            |id⊗f
/// (a)⊗(y) <-beta- (b·∏w) --eta---> (b)⊗(w)
/// ```
///
/// with `a = ∏v`, `b = ∏x`, every horizontal map constant, `mu` and `eta`
/// weak equivalences.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeakDivDiagram {
    pub a: Element,
    pub b: Element,
    pub left: Morphism,
    pub right: Morphism,
    pub mu: Morphism,
    pub alpha: Morphism,
    pub beta: Morphism,
    pub eta: Morphism,
}

fn single(monoid: &Monoid, a: Element) -> Result<FactorTuple> {
    FactorTuple::new(monoid.clone(), vec![a])
}

/// `(c) -> t` with every entry of `t` sent to the single entry.
fn from_single(c: &Element, t: &FactorTuple) -> Result<Morphism> {
    Morphism::new(single(t.monoid(), c.clone())?, t.clone(), IndexFunction::constant(t.len(), 0, 1)?)
}

pub fn weak_div_diagram(f: &Morphism, g: &Morphism) -> Result<WeakDivDiagram> {
    if !weakly_divides(f, g)? {
        return Err(Error::Precondition(format!("{f} does not weakly divide {g}")));
    }
    let monoid = f.monoid();
    let a = f.domain().product()?;
    let b = g.domain().product()?;
    let ida = Morphism::identity(&single(monoid, a.clone())?);
    let idb = Morphism::identity(&single(monoid, b.clone())?);
    let left = tensor_morphisms(&ida, g)?;
    let right = tensor_morphisms(&idb, f)?;

    let internal = |what: &str, e: Error| Error::Internal(format!("{what}: {e}"));
    let top = monoid.op(&a, &b)?;
    let bottom = monoid.op(&b, &f.codomain().product()?)?;
    let mu = from_single(&top, left.domain()).map_err(|e| internal("mu", e))?;
    let alpha = from_single(&top, right.domain()).map_err(|e| internal("alpha", e))?;
    let beta = from_single(&bottom, left.codomain()).map_err(|e| internal("beta", e))?;
    let eta = from_single(&bottom, right.codomain()).map_err(|e| internal("eta", e))?;
    if !is_weak_equivalence(&mu)? || !is_weak_equivalence(&eta)? {
        return Err(Error::Internal("row factorization legs are not weak equivalences".into()));
    }
    Ok(WeakDivDiagram { a, b, left, right, mu, alpha, beta, eta })
}

/// Mutual weak divisibility: the total witnesses are associates.
pub fn weakly_associate(f: &Morphism, g: &Morphism) -> Result<bool> {
    same_monoid(f, g)?;
    f.monoid().are_associates(&total_witness(f)?, &total_witness(g)?)
}

pub fn is_weakly_irreducible(m: &Morphism) -> Result<bool> {
    m.monoid().is_irreducible(&total_witness(m)?)
}

pub fn is_weakly_prime(m: &Morphism) -> Result<bool> {
    m.monoid().is_prime(&total_witness(m)?)
}

/// The morphism `(1) -> t`.
fn from_unit(t: &FactorTuple) -> Result<Morphism> {
    from_single(&t.monoid().identity(), t)
}

pub fn is_weakly_irreducible_tuple(t: &FactorTuple) -> Result<bool> {
    is_weakly_irreducible(&from_unit(t)?)
}

pub fn is_weakly_prime_tuple(t: &FactorTuple) -> Result<bool> {
    is_weakly_prime(&from_unit(t)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StepTag {
    WeakEquivalence,
    WeaklyIrreducible,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AtomicChain {
    /// Applied first to last.
    pub steps: Vec<Morphism>,
    pub tags: Vec<StepTag>,
    pub irr_count: usize,
}

impl AtomicChain {
    pub fn composite(&self) -> Result<Morphism> {
        let mut it = self.steps.iter();
        let first = it.next().ok_or_else(|| Error::Internal("empty chain".into()))?.clone();
        it.try_fold(first, |acc, s| compose(s, &acc))
    }
}

fn tag_of(m: &Morphism) -> Result<Option<StepTag>> {
    Ok(if is_weak_equivalence(m)? {
        Some(StepTag::WeakEquivalence)
    } else if is_weakly_irreducible(m)? {
        Some(StepTag::WeaklyIrreducible)
    } else {
        None
    })
}

/// Writes `m` as: the drop-units step, one identity-indexed step per
/// irreducible factor of each ratio (coordinates ascending, factors in
/// canonical order), then the factorization step with all leftover units
/// folded in. Identity steps are omitted unless nothing else remains.
pub fn atomic_chain(m: &Morphism) -> Result<AtomicChain> {
    let monoid = m.monoid();
    monoid.require_divisibility("atomic_chain")?;
    let mut steps = Vec::new();
    if m.domain().is_empty() || m.codomain().is_empty() {
        steps.push(m.clone());
    } else {
        let d = decompose_eip(m)?;
        if !d.epsilon.is_identity() {
            steps.push(d.epsilon.clone());
        }
        let mut current = d.epsilon.codomain().clone();
        for (p, a) in d.factors.iter().enumerate() {
            for q in monoid.factor_irreducibles(a)?.factors {
                let mut entries = current.entries().to_vec();
                entries[p] = monoid.op(&entries[p], &q)?;
                let next = FactorTuple::new(monoid.clone(), entries)?;
                steps.push(Morphism::new(current, next.clone(), IndexFunction::identity(next.len()))?);
                current = next;
            }
        }
        let last = Morphism::new(current, m.codomain().clone(), d.phi.map().clone())
            .map_err(|e| Error::Internal(format!("final step: {e}")))?;
        if !last.is_identity() || steps.is_empty() {
            steps.push(last);
        }
    }

    let mut tags = Vec::with_capacity(steps.len());
    for s in &steps {
        tags.push(tag_of(s)?.ok_or_else(|| Error::Internal(format!("step {s} is neither kind")))?);
    }
    let irr_count = tags.iter().filter(|&&t| t == StepTag::WeaklyIrreducible).count();
    let chain = AtomicChain { steps, tags, irr_count };
    if chain.composite()? != *m {
        return Err(Error::Internal("chain does not recompose".into()));
    }
    Ok(chain)
}

/// Number of irreducible factors of `a`.
pub fn zeta_elt(monoid: &Monoid, a: &Element) -> Result<usize> {
    Ok(monoid.factor_irreducibles(a)?.factors.len())
}

pub fn zeta_mor(m: &Morphism) -> Result<usize> {
    zeta_elt(m.monoid(), &total_witness(m)?)
}

pub fn zeta_obj(t: &FactorTuple) -> Result<usize> {
    t.monoid().require_divisibility("zeta_obj")?;
    zeta_elt(t.monoid(), &t.product()?)
}

/// Representatives of the weak divisors of `m` up to weak associates: the
/// divisors of its total witness up to associates.
pub fn weak_divisor_classes(m: &Morphism) -> Result<Vec<Element>> {
    m.monoid().divisor_reps(&total_witness(m)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChainStatus {
    /// 1-based position from which every morphism is a weak equivalence.
    StabilizedAt(usize),
    NotStabilized,
}

/// `chain[i]` runs from the `(i+2)`-th object to the `(i+1)`-th, so the
/// chain reads `x_1 <- x_2 <- x_3 <- ...`.
pub fn chain_stabilizes(chain: &[Morphism]) -> Result<ChainStatus> {
    for (i, w) in chain.windows(2).enumerate() {
        if w[1].codomain() != w[0].domain() {
            return Err(Error::ObjectMismatch(format!(
                "morphism {} does not land on the domain of morphism {}",
                i + 2,
                i + 1
            )));
        }
    }
    let mut start = None;
    for (i, m) in chain.iter().enumerate().rev() {
        if is_weak_equivalence(m)? {
            start = Some(i + 1);
        } else {
            break;
        }
    }
    Ok(start.map_or(ChainStatus::NotStabilized, ChainStatus::StabilizedAt))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorizationList {
    /// Each class lists canonical irreducible representatives, ascending.
    pub classes: Vec<Vec<Element>>,
    pub truncated: bool,
}

/// All factorizations of `a` into irreducibles up to order and associates,
/// found by recursing over irreducible divisors. Stops after `max_count`.
pub fn enumerate_irreducible_factorizations(
    monoid: &Monoid,
    a: &Element,
    max_count: usize,
) -> Result<FactorizationList> {
    monoid.require_divisibility("enumerate_irreducible_factorizations")?;
    let mut atoms = Vec::new();
    for d in monoid.divisor_reps(a)? {
        if monoid.is_irreducible(&d)? {
            atoms.push(d);
        }
    }
    let mut out = FactorizationList { classes: Vec::new(), truncated: false };
    let mut current = Vec::new();
    recurse_factorizations(monoid, a, &atoms, 0, &mut current, max_count, &mut out)?;
    Ok(out)
}

fn recurse_factorizations(
    monoid: &Monoid,
    rest: &Element,
    atoms: &[Element],
    from: usize,
    current: &mut Vec<Element>,
    max_count: usize,
    out: &mut FactorizationList,
) -> Result<()> {
    if monoid.is_invertible(rest) {
        if out.classes.len() >= max_count {
            out.truncated = true;
        } else {
            out.classes.push(current.clone());
        }
        return Ok(());
    }
    for (i, atom) in atoms.iter().enumerate().skip(from) {
        if out.truncated {
            break;
        }
        if let Some(q) = monoid.exact_divide(atom, rest)? {
            current.push(atom.clone());
            recurse_factorizations(monoid, &q, atoms, i, current, max_count, out)?;
            current.pop();
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WedgeOutcome {
    /// The irreducible entries are associates: a weak equivalence `(v) -> (w)`.
    WeakEquivalence(Morphism),
    /// `(v) -> (t) <- (w)` with `t` the product of the two irreducible
    /// entries, and `(t) -> (z)`.
    Wedge { t: Element, left: Morphism, right: Morphism, apex: Morphism },
}

fn irreducible_position(t: &FactorTuple) -> Result<usize> {
    if !is_weakly_irreducible_tuple(t)? {
        return Err(Error::Precondition(format!("{t} is not weakly irreducible")));
    }
    let monoid = t.monoid();
    t.entries()
        .iter()
        .position(|e| !monoid.is_invertible(e))
        .ok_or_else(|| Error::Internal("weakly irreducible tuple of units".into()))
}

/// For `f: (v) -> (z)` and `g: (w) -> (z)` out of weakly irreducible tuples
/// in a factorial monoid, relates `(v)` and `(w)` either directly or through
/// a common target that still maps to `(z)`.
pub fn ufd_wedge(f: &Morphism, g: &Morphism) -> Result<WedgeOutcome> {
    same_monoid(f, g)?;
    let monoid = f.monoid();
    monoid.require_divisibility("ufd_wedge")?;
    if f.codomain() != g.codomain() {
        return Err(Error::ObjectMismatch("the two morphisms have different codomains".into()));
    }
    let v = f.domain();
    let w = g.domain();
    let i0 = irreducible_position(v)?;
    let j0 = irreducible_position(w)?;
    let vi = &v.entries()[i0];
    let wj = &w.entries()[j0];
    if monoid.are_associates(vi, wj)? {
        let m = Morphism::new(v.clone(), w.clone(), IndexFunction::constant(w.len(), i0, v.len())?)
            .map_err(|e| Error::Internal(format!("associate case: {e}")))?;
        if !is_weak_equivalence(&m)? {
            return Err(Error::Internal("associate case is not a weak equivalence".into()));
        }
        return Ok(WedgeOutcome::WeakEquivalence(m));
    }
    let t = monoid.op(vi, wj)?;
    let tt = single(monoid, t.clone())?;
    let left = Morphism::new(v.clone(), tt.clone(), IndexFunction::new(vec![i0], v.len())?)
        .map_err(|e| Error::Internal(format!("left leg: {e}")))?;
    let right = Morphism::new(w.clone(), tt.clone(), IndexFunction::new(vec![j0], w.len())?)
        .map_err(|e| Error::Internal(format!("right leg: {e}")))?;
    let apex = from_single(&t, f.codomain())
        .map_err(|e| Error::Internal(format!("product of the irreducible entries does not reach the target: {e}")))?;
    if !is_weakly_irreducible(&left)? || !is_weakly_irreducible(&right)? {
        return Err(Error::Internal("wedge legs are not weakly irreducible".into()));
    }
    Ok(WedgeOutcome::Wedge { t, left, right, apex })
}

#[cfg(test)]
mod tests {
    use super::*;

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
    fn weak_divisibility() {
        let f = zm(&[2], &[6], &[1]);
        let g = zm(&[5], &[105], &[1]);
        assert_eq!(weak_division(&f, &g).unwrap(), WeakDivision { holds: true, s: z(3), r: z(21) });
        assert!(!weakly_divides(&g, &f).unwrap());
        assert!(weakly_divides_by_products(&f, &g).unwrap());
        assert!(!weakly_divides_by_products(&g, &f).unwrap());
        let weq = zm(&[210], &[2, 3, 5, 7], &[1, 1, 1, 1]);
        assert!(weakly_divides(&weq, &g).unwrap());
        assert!(weakly_divides(&weq, &f).unwrap());
    }

    #[test]
    fn weak_divisibility_square() {
        let f = zm(&[2], &[6], &[1]);
        let g = zm(&[5], &[105], &[1]);
        let d = weak_div_diagram(&f, &g).unwrap();
        assert_eq!((d.a.clone(), d.b.clone()), (z(2), z(5)));
        assert_eq!(d.mu, zm(&[10], &[2, 5], &[1, 1]));
        assert_eq!(d.alpha, zm(&[10], &[5, 2], &[1, 1]));
        assert_eq!(d.beta, zm(&[30], &[2, 105], &[1, 1]));
        assert_eq!(d.eta, zm(&[30], &[5, 6], &[1, 1]));
        assert_eq!(d.left, zm(&[2, 5], &[2, 105], &[1, 2]));
        assert_eq!(d.right, zm(&[5, 2], &[5, 6], &[1, 2]));
        assert!(matches!(weak_div_diagram(&g, &f), Err(Error::Precondition(_))));

        let same = weak_div_diagram(&f, &f).unwrap();
        assert_eq!(same.a, same.b);
    }

    #[test]
    fn associates_and_irreducibles() {
        let f = zm(&[2], &[6], &[1]);
        assert!(weakly_associate(&f, &zm(&[10], &[-30], &[1])).unwrap());
        assert!(!weakly_associate(&f, &zm(&[5], &[105], &[1])).unwrap());
        assert!(weakly_associate(&f, &f).unwrap());
        assert!(is_weakly_irreducible(&f).unwrap() && is_weakly_prime(&f).unwrap());
        let four = zm(&[1], &[4], &[1]);
        assert!(!is_weakly_irreducible(&four).unwrap() && !is_weakly_prime(&four).unwrap());
        let weq = zm(&[6, 1, 1], &[6], &[1]);
        assert!(!is_weakly_irreducible(&weq).unwrap() && !is_weakly_prime(&weq).unwrap());
        assert!(is_weakly_irreducible_tuple(&zt(&[3, -1])).unwrap());
        assert!(!is_weakly_irreducible_tuple(&zt(&[2, 3])).unwrap());
        assert!(!is_weakly_irreducible_tuple(&zt(&[])).unwrap());
        assert!(!is_weakly_prime_tuple(&zt(&[])).unwrap());
    }

    #[test]
    fn atomic_chains() {
        let c = atomic_chain(&zm(&[1], &[60], &[1])).unwrap();
        assert_eq!(c.irr_count, 4);
        let ends: Vec<FactorTuple> = c.steps.iter().map(|s| s.codomain().clone()).collect();
        assert_eq!(ends, vec![zt(&[2]), zt(&[4]), zt(&[12]), zt(&[60])]);

        let weq = zm(&[210], &[2, 3, 5, 7], &[1, 1, 1, 1]);
        let c = atomic_chain(&weq).unwrap();
        assert_eq!((c.steps.len(), c.irr_count), (1, 0));
        assert_eq!(c.tags, vec![StepTag::WeakEquivalence]);

        let ex = zm(&[6, 1, 35], &[2, 7, 33, 65], &[1, 3, 1, 3]);
        let c = atomic_chain(&ex).unwrap();
        assert_eq!(c.irr_count, 2);
        assert_eq!(c.composite().unwrap(), ex);

        let units = zm(&[-2], &[-3, 2], &[1, 1]);
        let c = atomic_chain(&units).unwrap();
        assert_eq!(c.irr_count, 1);
        assert_eq!(c.composite().unwrap(), units);

        let id = Morphism::identity(&zt(&[7]));
        assert_eq!(atomic_chain(&id).unwrap().steps, vec![id.clone()]);
        let to_empty = zm(&[-1], &[], &[]);
        assert_eq!(atomic_chain(&to_empty).unwrap().steps, vec![to_empty.clone()]);
    }

    #[test]
    fn zetas() {
        let m = Monoid::Integers;
        assert_eq!(zeta_elt(&m, &z(60)).unwrap(), 4);
        assert_eq!(zeta_elt(&m, &z(1)).unwrap(), 0);
        assert_eq!(zeta_elt(&m, &z(-1)).unwrap(), 0);
        assert_eq!(zeta_obj(&zt(&[6, 35])).unwrap(), 4);
        assert_eq!(zeta_mor(&zm(&[6, 1, 35], &[2, 7, 33, 65], &[1, 3, 1, 3])).unwrap(), 2);
    }

    #[test]
    fn divisor_classes() {
        let m = zm(&[1], &[12], &[1]);
        assert_eq!(weak_divisor_classes(&m).unwrap(), [1, 2, 3, 4, 6, 12].map(z).to_vec());
        assert_eq!(weak_divisor_classes(&Morphism::identity(&zt(&[5]))).unwrap(), vec![z(1)]);
        assert_eq!(weak_divisor_classes(&zm(&[1], &[7], &[1])).unwrap(), vec![z(1), z(7)]);
    }

    #[test]
    fn chains() {
        let chain = vec![
            zm(&[4], &[8], &[1]),
            zm(&[2], &[4], &[1]),
            zm(&[2], &[2], &[1]),
            zm(&[2], &[2], &[1]),
        ];
        assert_eq!(chain_stabilizes(&chain).unwrap(), ChainStatus::StabilizedAt(3));
        let ids = vec![Morphism::identity(&zt(&[3])); 3];
        assert_eq!(chain_stabilizes(&ids).unwrap(), ChainStatus::StabilizedAt(1));
        let desc: Vec<Morphism> =
            (0..5).map(|k| zm(&[1 << (5 - k - 1)], &[1 << (5 - k)], &[1])).collect();
        assert_eq!(chain_stabilizes(&desc).unwrap(), ChainStatus::NotStabilized);
        assert_eq!(chain_stabilizes(&[]).unwrap(), ChainStatus::NotStabilized);
        let broken = vec![zm(&[4], &[8], &[1]), zm(&[3], &[6], &[1])];
        assert!(matches!(chain_stabilizes(&broken), Err(Error::ObjectMismatch(_))));
    }

    #[test]
    fn factorization_lists() {
        let m = Monoid::Integers;
        let l = enumerate_irreducible_factorizations(&m, &z(12), 10).unwrap();
        assert_eq!(l.classes, vec![vec![z(2), z(2), z(3)]]);
        assert!(!l.truncated);
        let l = enumerate_irreducible_factorizations(&m, &z(7), 10).unwrap();
        assert_eq!(l.classes, vec![vec![z(7)]]);
        let l = enumerate_irreducible_factorizations(&m, &z(-1), 10).unwrap();
        assert_eq!(l.classes, vec![Vec::<Element>::new()]);
        let l = enumerate_irreducible_factorizations(&m, &z(12), 0).unwrap();
        assert!(l.truncated && l.classes.is_empty());
        let f = Monoid::parse("free:ab").unwrap();
        let l = enumerate_irreducible_factorizations(&f, &f.parse_element("a^2*b").unwrap(), 10).unwrap();
        let names: Vec<Vec<String>> =
            l.classes.iter().map(|c| c.iter().map(|e| f.format(e)).collect()).collect();
        assert_eq!(names, vec![vec!["a", "a", "b"]]);
    }

    #[test]
    fn wedges() {
        let out = ufd_wedge(&zm(&[2], &[36], &[1]), &zm(&[3], &[36], &[1])).unwrap();
        match out {
            WedgeOutcome::Wedge { t, left, right, apex } => {
                assert_eq!(t, z(6));
                assert_eq!(left, zm(&[2], &[6], &[1]));
                assert_eq!(right, zm(&[3], &[6], &[1]));
                assert_eq!(apex, zm(&[6], &[36], &[1]));
            }
            other => panic!("unexpected {other:?}"),
        }
        let out = ufd_wedge(&zm(&[2], &[6], &[1]), &zm(&[-2], &[6], &[1])).unwrap();
        assert_eq!(out, WedgeOutcome::WeakEquivalence(zm(&[2], &[-2], &[1])));
        let out = ufd_wedge(&zm(&[2], &[6], &[1]), &zm(&[3], &[6], &[1])).unwrap();
        assert!(matches!(out, WedgeOutcome::Wedge { apex, .. } if apex == zm(&[6], &[6], &[1])));
        let out = ufd_wedge(&zm(&[-1, 2], &[6], &[2]), &zm(&[3], &[6], &[1])).unwrap();
        assert!(matches!(out, WedgeOutcome::Wedge { ref left, .. } if left.map().to_one_based() == vec![2]));
        assert!(matches!(
            ufd_wedge(&zm(&[6], &[6], &[1]), &zm(&[3], &[6], &[1])),
            Err(Error::Precondition(_))
        ));
    }
}
