//! Brute-force verification of the structural theorems over a bounded
//! universe of tuples.
//!
//! Every check is a named law applied to a handful of morphisms and tuples.
//! Failures carry those inputs in wire form, so a counterexample can be
//! decoded and re-run with [`Verifier::recheck`].

use std::collections::{HashMap, HashSet};
use std::sync::{Arc, RwLock};

use num_rational::Ratio;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;

use crate::category::{self, compose, hom_maps, ComposeFn, FactorTuple, IndexFunction, Morphism};
use crate::divisibility as dv;
use crate::error::{Error, Result};
use crate::monoid::{Element, Monoid};
use crate::monoidal::{tensor_objects, LawChecker};
use crate::weq;
use crate::wire;

/// Case spaces up to this size are checked exhaustively.
pub const EXHAUSTIVE_LIMIT: u128 = 1_000_000;
/// Largest number of universe tuples accepted.
pub const TUPLE_LIMIT: usize = 2_000;
/// Failures kept per suite; the count covers all of them.
const KEPT_FAILURES: usize = 20;

/// Registered suites and whether they need a divisibility monoid.
pub const SUITES: &[(&str, bool)] = &[
    ("homset_formulas", false),
    ("epic_monic", true),
    ("iso", true),
    ("two_of_three", true),
    ("monoidal_laws", false),
    ("weakdiv", true),
    ("adjunction", false),
    ("category_laws", false),
    ("decompose", true),
    ("zeta_laws", true),
    ("atomic_chains", true),
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniverseSpec {
    pub monoid: Monoid,
    pub pool: Vec<Element>,
    pub max_len: usize,
    /// Longest composition chain checked for associativity.
    pub max_depth: usize,
    pub seed: u64,
    /// Number of cases drawn when a case space is too large to exhaust.
    pub samples: usize,
}

impl UniverseSpec {
    pub fn new(monoid: Monoid) -> Self {
        let pool = default_pool(&monoid);
        UniverseSpec { monoid, pool, max_len: 3, max_depth: 3, seed: 0, samples: 100_000 }
    }

    pub fn with_pool(mut self, pool: Vec<Element>) -> Result<Self> {
        for e in &pool {
            self.monoid.check(e)?;
        }
        self.pool = pool;
        Ok(self)
    }

    pub fn with_max_len(mut self, k: usize) -> Self {
        self.max_len = k;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_samples(mut self, n: usize) -> Self {
        self.samples = n;
        self
    }
}

/// Units of the monoid together with small non-units, including a composite.
pub fn default_pool(monoid: &Monoid) -> Vec<Element> {
    match monoid {
        Monoid::Integers => [-1, 1, 2, 3, 5, 6].map(Element::Int).to_vec(),
        Monoid::Naturals => [1, 2, 3, 6].map(Element::Int).to_vec(),
        Monoid::UnitInterval => vec![Element::Rat(Ratio::new(1, 1)), Element::Rat(Ratio::new(1, 2))],
        Monoid::Free(gens) => {
            let mut out = vec![monoid.identity()];
            out.extend((0..gens.len().min(2)).filter_map(|i| monoid.generator(i)));
            let top = monoid.product(&out).expect("small exponents");
            out.push(top);
            out.dedup();
            out
        }
    }
}

/// Every tuple of length at most `max_len` over the pool, ordered by length
/// and then lexicographically by pool position.
pub fn universe_tuples(spec: &UniverseSpec) -> Result<Vec<FactorTuple>> {
    let k = spec.pool.len() as u128;
    let total: u128 = (0..=spec.max_len as u32).map(|l| k.saturating_pow(l)).sum();
    if total > TUPLE_LIMIT as u128 {
        return Err(Error::ResourceGuard { candidates: total, limit: TUPLE_LIMIT as u128 });
    }
    let mut out = vec![FactorTuple::empty(spec.monoid.clone())];
    let mut layer: Vec<Vec<Element>> = vec![vec![]];
    for _ in 0..spec.max_len {
        let mut next = Vec::new();
        for prefix in &layer {
            for e in &spec.pool {
                let mut t = prefix.clone();
                t.push(e.clone());
                next.push(t);
            }
        }
        for t in &next {
            out.push(FactorTuple::new(spec.monoid.clone(), t.clone())?);
        }
        layer = next;
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub law: String,
    pub detail: String,
    pub morphisms: Vec<Value>,
    pub tuples: Vec<Value>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub name: String,
    pub cases: u64,
    pub failed: u64,
    /// The first few failures, in case order.
    pub failures: Vec<Counterexample>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failed == 0
    }
}

/// Stable 64-bit hash used to derive per-law seeds.
fn fnv(s: &str) -> u64 {
    let mut h: u64 = 0xcbf29ce484222325;
    for b in s.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    h
}

/// Inputs of one check, as ids into the verifier's tables.
#[derive(Debug, Clone)]
struct Case {
    ms: Vec<u32>,
    ts: Vec<u32>,
}

type HomCache = HashMap<(FactorTuple, FactorTuple), Arc<[IndexFunction]>>;

pub struct Verifier {
    spec: UniverseSpec,
    tuples: Vec<FactorTuple>,
    index: HashMap<FactorTuple, usize>,
    /// `homs[i * T + j]` lists the maps `tuples[i] -> tuples[j]`.
    homs: Vec<Arc<[IndexFunction]>>,
    /// Every morphism of the universe as `(domain, codomain, map position)`.
    morphs: Vec<(u32, u32, u32)>,
    /// Morphism ids grouped by domain.
    out_of: Vec<Vec<u32>>,
    /// Hom lists for pairs outside the universe.
    extra: RwLock<HomCache>,
    compose: ComposeFn,
}

impl Verifier {
    pub fn new(spec: UniverseSpec) -> Result<Self> {
        Self::with_compose(spec, compose)
    }

    /// Uses `compose` in place of the real composition everywhere a law
    /// composes morphisms.
    pub fn with_compose(spec: UniverseSpec, compose: ComposeFn) -> Result<Self> {
        let tuples = universe_tuples(&spec)?;
        let t = tuples.len();
        let homs: Vec<Arc<[IndexFunction]>> = (0..t * t)
            .into_par_iter()
            .map(|ij| hom_maps(&tuples[ij / t], &tuples[ij % t]).map(Arc::from))
            .collect::<Result<_>>()?;
        let mut morphs = Vec::new();
        let mut out_of = vec![Vec::new(); t];
        for i in 0..t {
            for j in 0..t {
                for k in 0..homs[i * t + j].len() {
                    out_of[i].push(morphs.len() as u32);
                    morphs.push((i as u32, j as u32, k as u32));
                }
            }
        }
        let index = tuples.iter().cloned().enumerate().map(|(i, x)| (x, i)).collect();
        Ok(Verifier { spec, tuples, index, homs, morphs, out_of, extra: RwLock::default(), compose })
    }

    pub fn spec(&self) -> &UniverseSpec {
        &self.spec
    }

    pub fn tuples(&self) -> &[FactorTuple] {
        &self.tuples
    }

    pub fn morphism_count(&self) -> usize {
        self.morphs.len()
    }

    pub fn morphism(&self, id: usize) -> Morphism {
        let (i, j, k) = self.morphs[id];
        let t = self.tuples.len();
        Morphism::new_unchecked(
            self.tuples[i as usize].clone(),
            self.tuples[j as usize].clone(),
            self.homs[i as usize * t + j as usize][k as usize].clone(),
        )
    }

    /// Maps `a -> b`, from the precomputed table when both are in the universe.
    fn hom_list(&self, a: &FactorTuple, b: &FactorTuple) -> Result<Arc<[IndexFunction]>> {
        if let (Some(&i), Some(&j)) = (self.index.get(a), self.index.get(b)) {
            return Ok(self.homs[i * self.tuples.len() + j].clone());
        }
        let key = (a.clone(), b.clone());
        if let Some(h) = self.extra.read().expect("not poisoned").get(&key) {
            return Ok(h.clone());
        }
        let h: Arc<[IndexFunction]> = hom_maps(a, b)?.into();
        self.extra.write().expect("not poisoned").insert(key, h.clone());
        Ok(h)
    }

    fn compose(&self, g: &Morphism, f: &Morphism) -> Result<Morphism> {
        (self.compose)(g, f)
    }

    fn law_checker(&self) -> LawChecker {
        LawChecker::with_compose(self.compose)
    }

    fn rng(&self, law: &str) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.spec.seed ^ fnv(law))
    }

    // Case generation. Each returns the exhaustive list when the space is
    // small enough and `samples` seeded draws otherwise.

    fn morphism_cases(&self) -> Vec<Case> {
        (0..self.morphs.len() as u32).map(|m| Case { ms: vec![m], ts: vec![] }).collect()
    }

    fn morphism_tuple_cases(&self, law: &str, arity: usize) -> Vec<Case> {
        let n = self.morphs.len() as u128;
        if n.saturating_pow(arity as u32) <= EXHAUSTIVE_LIMIT {
            let mut out = vec![Case { ms: vec![], ts: vec![] }];
            for _ in 0..arity {
                out = out
                    .into_iter()
                    .flat_map(|c| {
                        (0..n as u32).map(move |m| {
                            let mut ms = c.ms.clone();
                            ms.push(m);
                            Case { ms, ts: vec![] }
                        })
                    })
                    .collect();
            }
            out
        } else {
            let mut rng = self.rng(law);
            (0..self.spec.samples)
                .map(|_| Case {
                    ms: (0..arity).map(|_| rng.gen_range(0..n as u32)).collect(),
                    ts: vec![],
                })
                .collect()
        }
    }

    fn chain_count(&self, len: usize) -> u128 {
        let mut counts: Vec<u128> = vec![1; self.morphs.len()];
        for _ in 1..len {
            counts = self
                .morphs
                .iter()
                .map(|&(_, j, _)| {
                    self.out_of[j as usize].iter().map(|&g| counts[g as usize]).fold(0u128, |a, b| a.saturating_add(b))
                })
                .collect();
        }
        counts.iter().fold(0u128, |a, &b| a.saturating_add(b))
    }

    /// Composable chains `m_1, m_2, ...` with `m_{i+1}` leaving the codomain of `m_i`.
    fn chain_cases(&self, law: &str, len: usize) -> Vec<Case> {
        if self.chain_count(len) <= EXHAUSTIVE_LIMIT {
            let mut out: Vec<Vec<u32>> = (0..self.morphs.len() as u32).map(|m| vec![m]).collect();
            for _ in 1..len {
                out = out
                    .into_iter()
                    .flat_map(|c| {
                        let last = *c.last().expect("non-empty");
                        let j = self.morphs[last as usize].1 as usize;
                        self.out_of[j].iter().map(move |&g| {
                            let mut d = c.clone();
                            d.push(g);
                            d
                        })
                    })
                    .collect();
            }
            out.into_iter().map(|ms| Case { ms, ts: vec![] }).collect()
        } else {
            let mut rng = self.rng(law);
            (0..self.spec.samples)
                .map(|_| {
                    let mut ms = vec![rng.gen_range(0..self.morphs.len() as u32)];
                    for _ in 1..len {
                        let j = self.morphs[*ms.last().expect("non-empty") as usize].1 as usize;
                        ms.push(*self.out_of[j].choose(&mut rng).expect("identity exists"));
                    }
                    Case { ms, ts: vec![] }
                })
                .collect()
        }
    }

    fn tuple_cases(&self, law: &str, arity: usize, filter: impl Fn(&[u32]) -> bool) -> Vec<Case> {
        let n = self.tuples.len() as u128;
        if n.saturating_pow(arity as u32) <= EXHAUSTIVE_LIMIT {
            let mut out: Vec<Vec<u32>> = vec![vec![]];
            for _ in 0..arity {
                out = out
                    .into_iter()
                    .flat_map(|c| {
                        (0..n as u32).map(move |t| {
                            let mut d = c.clone();
                            d.push(t);
                            d
                        })
                    })
                    .collect();
            }
            out.into_iter().filter(|ts| filter(ts)).map(|ts| Case { ms: vec![], ts }).collect()
        } else {
            let mut rng = self.rng(law);
            let mut out = Vec::with_capacity(self.spec.samples);
            while out.len() < self.spec.samples {
                let ts: Vec<u32> = (0..arity).map(|_| rng.gen_range(0..n as u32)).collect();
                if filter(&ts) {
                    out.push(Case { ms: vec![], ts });
                }
            }
            out
        }
    }

    /// Pairs `((y), x)` with `(y)` a 1-tuple.
    fn single_tuple_pairs(&self, single_first: bool) -> Vec<Case> {
        let singles: Vec<u32> =
            (0..self.tuples.len() as u32).filter(|&i| self.tuples[i as usize].len() == 1).collect();
        let mut out = Vec::new();
        for &s in &singles {
            for x in 0..self.tuples.len() as u32 {
                let ts = if single_first { vec![s, x] } else { vec![x, s] };
                out.push(Case { ms: vec![], ts });
            }
        }
        out
    }

    fn run_cases(&self, law: &'static str, cases: Vec<Case>, report: &mut SuiteReport) {
        let results: Vec<Option<Counterexample>> = cases
            .par_iter()
            .map(|c| {
                let ms: Vec<Morphism> = c.ms.iter().map(|&m| self.morphism(m as usize)).collect();
                let ts: Vec<FactorTuple> = c.ts.iter().map(|&t| self.tuples[t as usize].clone()).collect();
                let detail = match self.check_law(law, &ms, &ts) {
                    Ok(None) => return None,
                    Ok(Some(d)) => d,
                    Err(e) => format!("error: {e}"),
                };
                Some(Counterexample {
                    law: law.to_string(),
                    detail,
                    morphisms: ms.iter().map(wire::morphism_to_json).collect(),
                    tuples: ts.iter().map(wire::tuple_to_json).collect(),
                })
            })
            .collect();
        report.cases += cases.len() as u64;
        for r in results.into_iter().flatten() {
            report.failed += 1;
            if report.failures.len() < KEPT_FAILURES {
                report.failures.push(r);
            }
        }
    }

    fn run_one(&self, name: &str) -> Result<SuiteReport> {
        let &(_, needs_div) = SUITES
            .iter()
            .find(|(n, _)| *n == name)
            .ok_or_else(|| Error::UnknownSuite(name.to_string()))?;
        if needs_div && !self.spec.monoid.is_divisibility() {
            return Err(Error::Capability { op: "verify", monoid: self.spec.monoid.name() });
        }
        let mut r = SuiteReport { name: name.to_string(), cases: 0, failed: 0, failures: vec![] };
        let all_tuples = |law| self.tuple_cases(law, 1, |_| true);
        match name {
            "homset_formulas" => {
                self.run_cases("hom_to_empty", all_tuples("hom_to_empty"), &mut r);
                self.run_cases("hom_from_empty", all_tuples("hom_from_empty"), &mut r);
                self.run_cases("hom_from_single", self.single_tuple_pairs(true), &mut r);
                self.run_cases("hom_to_single", self.single_tuple_pairs(false), &mut r);
            }
            "epic_monic" => {
                self.run_cases("epic_cancellation", self.morphism_cases(), &mut r);
                self.run_cases("monic_cancellation", self.morphism_cases(), &mut r);
            }
            "iso" => self.run_cases("iso_inverse_search", self.morphism_cases(), &mut r),
            "two_of_three" => {
                self.run_cases("two_of_three", self.chain_cases("two_of_three", 2), &mut r);
                self.run_cases("weq_witness", self.morphism_cases(), &mut r);
            }
            "monoidal_laws" => {
                self.run_cases("tensor_unit", self.morphism_cases(), &mut r);
                self.run_cases("braiding_involution", self.tuple_cases("braiding_involution", 2, |_| true), &mut r);
                self.run_cases("hexagon", self.tuple_cases("hexagon", 3, |_| true), &mut r);
                self.run_cases("braiding_naturality", self.morphism_tuple_cases("braiding_naturality", 2), &mut r);
                self.run_cases("tensor_associativity", self.morphism_tuple_cases("tensor_associativity", 3), &mut r);
                let pairs = self.bifunctor_cases();
                self.run_cases("bifunctoriality", pairs, &mut r);
            }
            "weakdiv" => {
                self.run_cases("weakdiv_criteria", self.morphism_tuple_cases("weakdiv_criteria", 2), &mut r);
                self.run_cases("weakdiv_single", self.morphism_cases(), &mut r);
                self.run_cases("weakdiv_transitivity", self.morphism_tuple_cases("weakdiv_transitivity", 3), &mut r);
            }
            "adjunction" => self.run_cases("adjunction", self.single_tuple_pairs(true), &mut r),
            "category_laws" => {
                self.run_cases("identity_laws", self.morphism_cases(), &mut r);
                for len in 2..=self.spec.max_depth.max(2) {
                    self.run_cases("composition_chain", self.chain_cases(&format!("composition_chain{len}"), len), &mut r);
                }
            }
            "decompose" => self.run_cases("decomposition", self.morphism_cases(), &mut r),
            "zeta_laws" => {
                self.run_cases("zeta_additivity", self.chain_cases("zeta_additivity", 2), &mut r);
                self.run_cases("zeta_tensor", self.tuple_cases("zeta_tensor", 2, |_| true), &mut r);
            }
            "atomic_chains" => self.run_cases("atomic_chain", self.morphism_cases(), &mut r),
            _ => unreachable!("registered above"),
        }
        Ok(r)
    }

    /// Two independent composable pairs `(f, h)` and `(g, k)`.
    fn bifunctor_cases(&self) -> Vec<Case> {
        let a = self.chain_cases("bifunctoriality_a", 2);
        let b = self.chain_cases("bifunctoriality_b", 2);
        let total = (a.len() as u128).saturating_mul(b.len() as u128);
        if total <= EXHAUSTIVE_LIMIT {
            a.iter()
                .flat_map(|x| b.iter().map(move |y| Case { ms: vec![x.ms[0], y.ms[0], x.ms[1], y.ms[1]], ts: vec![] }))
                .collect()
        } else {
            let mut rng = self.rng("bifunctoriality");
            (0..self.spec.samples)
                .map(|_| {
                    let x = a.choose(&mut rng).expect("non-empty");
                    let y = b.choose(&mut rng).expect("non-empty");
                    Case { ms: vec![x.ms[0], y.ms[0], x.ms[1], y.ms[1]], ts: vec![] }
                })
                .collect()
        }
    }

    /// Runs the named suites in order. An empty list yields an empty report.
    pub fn run(&self, names: &[&str]) -> Result<Vec<SuiteReport>> {
        names.iter().map(|n| self.run_one(n)).collect()
    }

    /// Re-runs the law of a counterexample on its decoded inputs. Returns
    /// true when the law still fails.
    pub fn recheck(&self, c: &Counterexample) -> Result<bool> {
        let ms = c.morphisms.iter().map(wire::morphism_from_json).collect::<Result<Vec<_>>>()?;
        let ts = c
            .tuples
            .iter()
            .map(|t| wire::tuple_from_json(&self.spec.monoid, t))
            .collect::<Result<Vec<_>>>()?;
        Ok(!matches!(self.check_law(&c.law, &ms, &ts), Ok(None)))
    }

    /// Applies one law. `Ok(None)` means it holds, `Ok(Some(why))` that it fails.
    pub fn check_law(&self, law: &str, ms: &[Morphism], ts: &[FactorTuple]) -> Result<Option<String>> {
        let fail = |cond: bool, why: String| if cond { None } else { Some(why) };
        let monoid = &self.spec.monoid;
        Ok(match law {
            "hom_to_empty" => {
                let x = &ts[0];
                let got = self.hom_list(x, &FactorTuple::empty(monoid.clone()))?.len();
                let want = if monoid.is_divisibility() {
                    usize::from(x.entries().iter().all(|e| monoid.is_invertible(e)))
                } else {
                    1
                };
                fail(got == want, format!("|hom({x}, 𝔬)| = {got}, formula gives {want}"))
            }
            "hom_from_empty" => {
                let x = &ts[0];
                let got = self.hom_list(&FactorTuple::empty(monoid.clone()), x)?.len();
                let want = usize::from(x.is_empty());
                fail(got == want, format!("|hom(𝔬, {x})| = {got}, formula gives {want}"))
            }
            "hom_from_single" => {
                let (y, x) = (&ts[0], &ts[1]);
                let got = self.hom_list(y, x)?.len();
                let want = usize::from(monoid.leq(&y.entries()[0], &x.product()?));
                fail(got == want, format!("|hom({y}, {x})| = {got}, formula gives {want}"))
            }
            "hom_to_single" => {
                let (x, y) = (&ts[0], &ts[1]);
                let got = self.hom_list(x, y)?.len();
                let one = monoid.identity();
                let xs = x.entries();
                let want = (0..xs.len())
                    .filter(|&n0| {
                        monoid.leq(&xs[n0], &y.entries()[0])
                            && (0..xs.len()).all(|n| n == n0 || monoid.leq(&xs[n], &one))
                    })
                    .count();
                fail(got == want, format!("|hom({x}, {y})| = {got}, formula gives {want}"))
            }
            "adjunction" => {
                let (y, x) = (&ts[0], &ts[1]);
                let a = &y.entries()[0];
                let in_monoid = usize::from(monoid.leq(a, &x.product()?));
                let in_category = self.hom_list(y, x)?.len();
                let round = category::product_functor(&category::embed_functor(monoid, a.clone())?)?;
                if in_category != in_monoid {
                    Some(format!("|hom({y}, {x})| = {in_category} but the monoid hom-set has {in_monoid}"))
                } else {
                    fail(&round == a, format!("product of the embedding of {a:?} is {round:?}"))
                }
            }
            "epic_cancellation" => {
                let m = &ms[0];
                let y = m.codomain();
                let ext = tensor_objects(y, &FactorTuple::new(monoid.clone(), vec![monoid.identity()])?)?;
                // A non-injective map is detected by two maps into `y ⊗ (1)`
                // sending the extra entry to different positions of one fiber.
                let mut found = None;
                let mut seen = HashMap::new();
                for h in self.hom_list(y, &ext)?.iter() {
                    let g = Morphism::new_unchecked(y.clone(), ext.clone(), h.clone());
                    let c = self.compose(&g, m)?;
                    if let Some(prev) = seen.insert(c, g.clone()) {
                        found = Some((prev, g));
                        break;
                    }
                }
                let epic = category::is_epic(m)?;
                match (&found, epic) {
                    (None, true) | (Some(_), false) => None,
                    (Some((g, h)), true) => Some(format!("declared epic but {g} and {h} agree after it")),
                    (None, false) => Some("declared not epic but no cancelling pair exists".into()),
                }
            }
            "monic_cancellation" => {
                let m = &ms[0];
                let x = m.domain();
                let mut sources: Vec<FactorTuple> = Vec::new();
                for e in x.entries() {
                    sources.push(tensor_objects(x, &FactorTuple::new(monoid.clone(), vec![e.clone()])?)?);
                }
                let mut found = None;
                for w in &sources {
                    let hs = self.hom_list(w, x)?;
                    if hs.len() < 2 {
                        continue;
                    }
                    let mut seen = HashMap::new();
                    for h in hs.iter() {
                        let g = Morphism::new_unchecked(w.clone(), x.clone(), h.clone());
                        let c = self.compose(m, &g)?;
                        if let Some(prev) = seen.insert(c, g.clone()) {
                            found = Some((prev, g));
                            break;
                        }
                    }
                    if found.is_some() {
                        break;
                    }
                }
                let monic = category::is_monic(m)?;
                match (&found, monic) {
                    (None, true) | (Some(_), false) => None,
                    (Some((g, h)), true) => Some(format!("declared monic but it agrees after {g} and {h}")),
                    (None, false) => Some("declared not monic but no cancelling pair exists".into()),
                }
            }
            "iso_inverse_search" => {
                let m = &ms[0];
                let (x, y) = (m.domain(), m.codomain());
                let idx = Morphism::identity(x);
                let idy = Morphism::identity(y);
                let mut found = None;
                for h in self.hom_list(y, x)?.iter() {
                    let g = Morphism::new_unchecked(y.clone(), x.clone(), h.clone());
                    if self.compose(&g, m)? == idx && self.compose(m, &g)? == idy {
                        found = Some(g);
                        break;
                    }
                }
                let iso = category::is_isomorphism(m)?;
                let inv = category::inverse(m)?;
                if iso != found.is_some() {
                    Some(format!("predicate says {iso}, inverse search says {}", found.is_some()))
                } else {
                    fail(inv == found, format!("inverse {inv:?} differs from searched {found:?}"))
                }
            }
            "two_of_three" => {
                let (f, g) = (&ms[0], &ms[1]);
                let gf = self.compose(g, f)?;
                let a = weq::is_weak_equivalence(f)?;
                let b = weq::is_weak_equivalence(g)?;
                let c = weq::is_weak_equivalence(&gf)?;
                let ok = !(a && b && !c) && !(a && c && !b) && !(b && c && !a);
                fail(ok, format!("membership f={a}, g={b}, g∘f={c}"))
            }
            "weq_witness" => {
                let m = &ms[0];
                let w = weq::quotient_witnesses(m)?;
                let is_weq = weq::is_weak_equivalence(m)?;
                let total_unit = monoid.is_invertible(&w.total);
                if is_weq != (m.codomain().is_empty() || total_unit) {
                    Some("membership disagrees with the total witness".into())
                } else if !m.codomain().is_empty()
                    && w.per_index.iter().all(|r| monoid.is_invertible(r)) != total_unit
                {
                    Some("per-index witnesses and total witness disagree on invertibility".into())
                } else if is_weq && !monoid.are_associates(&m.domain().product()?, &m.codomain().product()?)? {
                    Some("products of a weak equivalence are not associates".into())
                } else if category::is_isomorphism(m)? && !is_weq {
                    Some("isomorphism outside W".into())
                } else if !m.domain().is_empty() && !m.codomain().is_empty() {
                    let by_delta = weq::classify_by_delta(m)? == weq::DeltaClass::WeakEquivalence;
                    fail(by_delta == is_weq, format!("divisibility part says {by_delta}, witness says {is_weq}"))
                } else {
                    None
                }
            }
            "tensor_unit" => self.law_checker().unit(&ms[0]).err().map(|v| v.to_string()),
            "braiding_involution" => {
                self.law_checker().braiding_involution(&ts[0], &ts[1]).err().map(|v| v.to_string())
            }
            "hexagon" => self.law_checker().hexagon(&ts[0], &ts[1], &ts[2]).err().map(|v| v.to_string()),
            "braiding_naturality" => {
                self.law_checker().braiding_naturality(&ms[0], &ms[1]).err().map(|v| v.to_string())
            }
            "tensor_associativity" => {
                self.law_checker().associativity(&ms[0], &ms[1], &ms[2]).err().map(|v| v.to_string())
            }
            "bifunctoriality" => self
                .law_checker()
                .bifunctoriality(&ms[0], &ms[1], &ms[2], &ms[3])
                .err()
                .map(|v| v.to_string()),
            "weakdiv_criteria" => {
                let (f, g) = (&ms[0], &ms[1]);
                let by_witness = dv::weakly_divides(f, g)?;
                let by_products = dv::weakly_divides_by_products(f, g)?;
                let back = dv::weakly_divides(g, f)?;
                if by_witness != by_products {
                    Some(format!("witness criterion {by_witness}, product criterion {by_products}"))
                } else if dv::weakly_associate(f, g)? != (by_witness && back) {
                    Some("weak associates differ from mutual weak divisibility".into())
                } else if by_witness {
                    check_diagram(f, g, &dv::weak_div_diagram(f, g)?)?
                } else {
                    None
                }
            }
            "weakdiv_single" => {
                let f = &ms[0];
                let is_weq = weq::is_weak_equivalence(f)?;
                let unit = FactorTuple::new(monoid.clone(), vec![monoid.identity()])?;
                let divides_weq = dv::weakly_divides(f, &Morphism::identity(&unit))?;
                if !dv::weakly_divides(f, f)? {
                    Some("not reflexive".into())
                } else if divides_weq != is_weq {
                    Some(format!("divides a weak equivalence: {divides_weq}, is one: {is_weq}"))
                } else if dv::is_weakly_prime(f)? && !dv::is_weakly_irreducible(f)? {
                    Some("weakly prime but not weakly irreducible".into())
                } else {
                    fail(!(is_weq && dv::is_weakly_irreducible(f)?), "weak equivalence classed irreducible".into())
                }
            }
            "weakdiv_transitivity" => {
                let (f, g, h) = (&ms[0], &ms[1], &ms[2]);
                let ok = !(dv::weakly_divides(f, g)? && dv::weakly_divides(g, h)?) || dv::weakly_divides(f, h)?;
                fail(ok, "weak divisibility is not transitive here".into())
            }
            "identity_laws" => {
                let f = &ms[0];
                let left = self.compose(&Morphism::identity(f.codomain()), f)?;
                let right = self.compose(f, &Morphism::identity(f.domain()))?;
                if Morphism::new(f.domain().clone(), f.codomain().clone(), f.map().clone()).is_err() {
                    Some("universe morphism fails validation".into())
                } else {
                    fail(left == *f && right == *f, format!("identity law fails: {left} / {right}"))
                }
            }
            "composition_chain" => {
                let mut left = ms[0].clone();
                for m in &ms[1..] {
                    left = self.compose(m, &left)?;
                }
                let mut right = ms[ms.len() - 1].clone();
                for m in ms[..ms.len() - 1].iter().rev() {
                    right = self.compose(&right, m)?;
                }
                if Morphism::new(left.domain().clone(), left.codomain().clone(), left.map().clone()).is_err() {
                    Some(format!("composite {left} is not order-constrained"))
                } else {
                    fail(left == right, format!("bracketings differ: {left} vs {right}"))
                }
            }
            "decomposition" => {
                let m = &ms[0];
                if m.domain().is_empty() || m.codomain().is_empty() {
                    return Ok(None);
                }
                let d = weq::decompose_eip(m)?;
                let back = self.compose(&d.phi, &self.compose(&d.delta, &d.epsilon)?)?;
                let fibers = d.phi.fiber_products()?;
                let lhs = monoid.op(&m.codomain().product()?, &d.dropped_unit)?;
                let rhs = monoid.op(&monoid.product(&d.factors)?, &m.domain().product()?)?;
                if back != *m {
                    Some(format!("recomposes to {back}"))
                } else if !category::is_epic(&d.epsilon)? || !weq::is_weak_equivalence(&d.epsilon)? {
                    Some("drop-units part is not an epic weak equivalence".into())
                } else if d.delta.map() != &IndexFunction::identity(d.delta.domain().len()) {
                    Some("divisibility part is not identity-indexed".into())
                } else if !category::is_monic(&d.phi)? || fibers.as_slice() != d.phi.domain().entries() {
                    Some("factorization part is not an exact surjective factorization".into())
                } else {
                    fail(lhs == rhs, "product identity fails".into())
                }
            }
            "zeta_additivity" => {
                let (f, g) = (&ms[0], &ms[1]);
                let gf = self.compose(g, f)?;
                let (zf, zg, zgf) = (dv::zeta_mor(f)?, dv::zeta_mor(g)?, dv::zeta_mor(&gf)?);
                if zgf != zf + zg {
                    return Ok(Some(format!("ζ(g∘f) = {zgf}, ζ(g) + ζ(f) = {}", zg + zf)));
                }
                for (m, z) in [(f, zf), (g, zg), (&gf, zgf)] {
                    if (z == 0) != weq::is_weak_equivalence(m)? {
                        return Ok(Some(format!("ζ = {z} disagrees with weak equivalence for {m}")));
                    }
                    if (z == 1) != dv::is_weakly_irreducible(m)? {
                        return Ok(Some(format!("ζ = {z} disagrees with weak irreducibility for {m}")));
                    }
                    if dv::zeta_obj(m.codomain())? != dv::zeta_obj(m.domain())? + z {
                        return Ok(Some(format!("ζ on objects is not monotone along {m}")));
                    }
                }
                None
            }
            "zeta_tensor" => {
                let (s, t) = (&ts[0], &ts[1]);
                let st = dv::zeta_obj(&tensor_objects(s, t)?)?;
                let sum = dv::zeta_obj(s)? + dv::zeta_obj(t)?;
                fail(st == sum, format!("ζ({s}⊗{t}) = {st}, sum {sum}"))
            }
            "atomic_chain" => {
                let m = &ms[0];
                let c = dv::atomic_chain(m)?;
                let mut acc = c.steps[0].clone();
                for s in &c.steps[1..] {
                    acc = self.compose(s, &acc)?;
                }
                let mut witnesses = Vec::new();
                let mut irr = Vec::new();
                for (s, tag) in c.steps.iter().zip(&c.tags) {
                    let r = weq::total_witness(s)?;
                    let ok = match tag {
                        dv::StepTag::WeakEquivalence => weq::is_weak_equivalence(s)?,
                        dv::StepTag::WeaklyIrreducible => {
                            irr.push(r.clone());
                            dv::is_weakly_irreducible(s)?
                        }
                    };
                    if !ok {
                        return Ok(Some(format!("step {s} is mislabelled")));
                    }
                    witnesses.push(r);
                }
                let r = weq::total_witness(m)?;
                if acc != *m {
                    Some(format!("chain recomposes to {acc}"))
                } else if c.irr_count != dv::zeta_mor(m)? {
                    Some(format!("{} irreducible steps, ζ = {}", c.irr_count, dv::zeta_mor(m)?))
                } else if monoid.product(&witnesses)? != r {
                    Some("step witnesses do not multiply to the total witness".into())
                } else {
                    fail(monoid.are_associates(&monoid.product(&irr)?, &r)?, "irreducible steps do not account for r".into())
                }
            }
            other => return Err(Error::Precondition(format!("unknown law `{other}`"))),
        })
    }
}

fn check_diagram(f: &Morphism, g: &Morphism, d: &dv::WeakDivDiagram) -> Result<Option<String>> {
    for (name, m) in [
        ("left", &d.left),
        ("right", &d.right),
        ("mu", &d.mu),
        ("alpha", &d.alpha),
        ("beta", &d.beta),
        ("eta", &d.eta),
    ] {
        if Morphism::new(m.domain().clone(), m.codomain().clone(), m.map().clone()).is_err() {
            return Ok(Some(format!("diagram leg {name} fails validation")));
        }
    }
    if !weq::is_weak_equivalence(&d.mu)? || !weq::is_weak_equivalence(&d.eta)? {
        return Ok(Some("diagram legs mu/eta are not weak equivalences".into()));
    }
    if d.a != f.domain().product()? || d.b != g.domain().product()? {
        return Ok(Some("diagram parameters differ from the domain products".into()));
    }
    let joins = d.mu.codomain() == d.left.domain()
        && d.alpha.codomain() == d.right.domain()
        && d.beta.codomain() == d.left.codomain()
        && d.eta.codomain() == d.right.codomain()
        && d.mu.domain() == d.alpha.domain()
        && d.beta.domain() == d.eta.domain()
        && d.mu.domain().len() == 1
        && d.beta.domain().len() == 1;
    Ok(if joins { None } else { Some("diagram legs do not connect".into()) })
}

/// Runs the named suites over `spec`.
pub fn run_suite(spec: &UniverseSpec, names: &[&str]) -> Result<Vec<SuiteReport>> {
    for n in names {
        if !SUITES.iter().any(|(s, _)| s == n) {
            return Err(Error::UnknownSuite(n.to_string()));
        }
    }
    if names.is_empty() {
        return Ok(Vec::new());
    }
    Verifier::new(spec.clone())?.run(names)
}

/// Suites applicable to `monoid`.
pub fn applicable_suites(monoid: &Monoid) -> Vec<&'static str> {
    SUITES.iter().filter(|(_, div)| !div || monoid.is_divisibility()).map(|(n, _)| *n).collect()
}

/// A random morphism with a domain of `1..=max_domain` entries and a
/// codomain of `0..=max_codomain` entries. Codomain entries come from
/// `pool`; each domain entry is drawn below its fiber product.
pub fn random_morphism<R: Rng>(
    rng: &mut R,
    monoid: &Monoid,
    pool: &[Element],
    max_domain: usize,
    max_codomain: usize,
) -> Result<Morphism> {
    if pool.is_empty() || max_domain == 0 {
        return Err(Error::Precondition("need a non-empty pool and domain".into()));
    }
    let n = rng.gen_range(1..=max_domain);
    let m = rng.gen_range(0..=max_codomain);
    let map: Vec<usize> = (0..m).map(|_| rng.gen_range(0..n)).collect();
    let ys: Vec<Element> = (0..m).map(|_| pool.choose(rng).expect("non-empty").clone()).collect();
    let mut fibers = vec![monoid.identity(); n];
    for (j, &i) in map.iter().enumerate() {
        fibers[i] = monoid.op(&fibers[i], &ys[j])?;
    }
    let units: Vec<Element> = pool.iter().filter(|e| monoid.is_invertible(e)).cloned().collect();
    let units = if units.is_empty() { vec![monoid.identity()] } else { units };
    let mut xs = Vec::with_capacity(n);
    for fiber in &fibers {
        let x = if monoid.is_divisibility() {
            let d = monoid.divisor_reps(fiber)?;
            let base = d.choose(rng).expect("1 divides everything").clone();
            monoid.op(&base, units.choose(rng).expect("non-empty"))?
        } else {
            monoid.op(fiber, pool.choose(rng).expect("non-empty"))?
        };
        xs.push(x);
    }
    let d = FactorTuple::new(monoid.clone(), xs)?;
    let c = FactorTuple::new(monoid.clone(), ys)?;
    Morphism::new(d, c, IndexFunction::new(map, n)?)
}

/// Composition that ignores its inputs' maps and returns the first morphism
/// between the right objects. Used to confirm the suites catch a broken
/// composition.
pub fn corrupt_compose(g: &Morphism, f: &Morphism) -> Result<Morphism> {
    let first = hom_maps(f.domain(), g.codomain())?
        .into_iter()
        .next()
        .ok_or_else(|| Error::Internal("no morphism at all".into()))?;
    Ok(Morphism::new_unchecked(f.domain().clone(), g.codomain().clone(), first))
}

/// Distinct morphism ids sampled uniformly from a verifier's universe.
pub fn sample_ids<R: Rng>(rng: &mut R, v: &Verifier, k: usize) -> Vec<usize> {
    let mut seen = HashSet::new();
    let n = v.morphism_count();
    while seen.len() < k.min(n) {
        seen.insert(rng.gen_range(0..n));
    }
    let mut out: Vec<usize> = seen.into_iter().collect();
    out.sort_unstable();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(pool: &[i64], len: usize) -> UniverseSpec {
        UniverseSpec::new(Monoid::Integers)
            .with_pool(pool.iter().map(|&v| Element::Int(v)).collect())
            .unwrap()
            .with_max_len(len)
    }

    #[test]
    fn universe_order() {
        let spec = small(&[1, 2], 2);
        let names: Vec<String> = universe_tuples(&spec).unwrap().iter().map(|t| t.to_string()).collect();
        assert_eq!(names, vec!["𝔬", "(1)", "(2)", "(1,1)", "(1,2)", "(2,1)", "(2,2)"]);
        assert_eq!(universe_tuples(&small(&[], 3)).unwrap().len(), 1);
    }

    #[test]
    fn every_suite_passes_on_a_small_universe() {
        let spec = small(&[-1, 1, 2, 6], 2);
        let names = applicable_suites(&spec.monoid);
        for r in run_suite(&spec, &names).unwrap() {
            assert!(r.passed(), "{}: {:?}", r.name, r.failures.first());
            assert!(r.cases > 0, "{} ran no cases", r.name);
        }
    }

    #[test]
    fn unknown_and_empty() {
        let spec = small(&[1], 1);
        assert!(run_suite(&spec, &[]).unwrap().is_empty());
        assert!(matches!(run_suite(&spec, &["nope"]), Err(Error::UnknownSuite(_))));
        let interval = UniverseSpec::new(Monoid::UnitInterval);
        assert!(matches!(run_suite(&interval, &["epic_monic"]), Err(Error::Capability { .. })));
    }

    #[test]
    fn broken_composition_is_caught_and_replays() {
        let spec = small(&[1, 2], 2);
        let v = Verifier::with_compose(spec.clone(), corrupt_compose).unwrap();
        let r = v.run(&["category_laws"]).unwrap().remove(0);
        assert!(!r.passed());
        let c = &r.failures[0];
        assert!(v.recheck(c).unwrap());
        assert!(!Verifier::new(spec).unwrap().recheck(c).unwrap());
    }

    #[test]
    fn random_morphisms_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for monoid in [Monoid::Integers, Monoid::Naturals, Monoid::UnitInterval, Monoid::parse("free:ab").unwrap()] {
            let pool = default_pool(&monoid);
            for _ in 0..200 {
                random_morphism(&mut rng, &monoid, &pool, 3, 4).unwrap();
            }
        }
    }
}
