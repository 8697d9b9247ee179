//! Acceptance criteria. Each test prints one line, `criterion N: PASS|FAIL`,
//! with its elapsed time against the pinned limit.

use std::time::{Duration, Instant};

use factcat::category::{hom_maps, is_epic, is_monic};
use factcat::divisibility::{
    atomic_chain, enumerate_irreducible_factorizations, is_weakly_irreducible, is_weakly_prime, weak_div_diagram,
    weak_division, weak_divisor_classes, zeta_mor, zeta_obj,
};
use factcat::monoidal::tensor_objects;
use factcat::oracle::{applicable_suites, random_morphism, universe_tuples, UniverseSpec, Verifier};
use factcat::weq::{decompose_eip, is_weak_equivalence, total_witness};
use factcat::{compose, Element, FactorTuple, Monoid, Morphism};
use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn zt(v: &[i64]) -> FactorTuple {
    FactorTuple::new(Monoid::Integers, v.iter().map(|&x| Element::Int(x)).collect()).unwrap()
}

fn zm(d: &[i64], c: &[i64], map: &[usize]) -> Morphism {
    Morphism::from_one_based(zt(d), zt(c), map).unwrap()
}

fn int(v: i64) -> Element {
    Element::Int(v)
}

/// Runs `body`, prints the criterion line and fails on a false result or
/// an overrun.
fn criterion(n: u32, limit: Duration, body: impl FnOnce() -> Result<(), String>) {
    let start = Instant::now();
    let outcome = body();
    let elapsed = start.elapsed();
    let outcome = outcome.and_then(|()| {
        if elapsed <= limit {
            Ok(())
        } else {
            Err(format!("took {elapsed:?}"))
        }
    });
    match &outcome {
        Ok(()) => println!("criterion {n}: PASS ({:.3}s, limit {}s)", elapsed.as_secs_f64(), limit.as_secs()),
        Err(why) => println!("criterion {n}: FAIL ({why}; limit {}s)", limit.as_secs()),
    }
    if let Err(why) = outcome {
        panic!("criterion {n} failed: {why}");
    }
}

fn ensure(cond: bool, why: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(why.into())
    }
}

#[test]
fn criterion_1_hom_counts() {
    criterion(1, Duration::from_secs(1), || {
        let count = |d: &[i64], c: &[i64]| hom_maps(&zt(d), &zt(c)).unwrap().len();
        ensure(count(&[6, 35], &[2, 3, 5, 7]) == 1, "hom((6,35),(2,3,5,7))")?;
        ensure(count(&[1, 2], &[1, 2]) == 2, "hom((1,2),(1,2))")?;
        ensure(count(&[1, 1], &[3, 3, 3]) == 8, "hom((1,1),(3,3,3))")?;
        ensure(count(&[2, 2], &[3, 3]) == 0, "hom((2,2),(3,3))")?;
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..20 {
            let len = rng.gen_range(0..=5);
            let entries = (0..len)
                .map(|_| {
                    let q = rng.gen_range(1..=50i64);
                    Element::Rat(Ratio::new(rng.gen_range(1..=q), q))
                })
                .collect();
            let x = FactorTuple::new(Monoid::UnitInterval, entries).unwrap();
            let n = hom_maps(&x, &FactorTuple::empty(Monoid::UnitInterval)).unwrap().len();
            ensure(n == 1, format!("|hom({x}, 𝔬)| = {n} in the interval monoid"))?;
        }
        Ok(())
    });
}

#[test]
fn criterion_2_decomposition() {
    criterion(2, Duration::from_secs(1), || {
        let m = zm(&[6, 1, 35], &[2, 7, 33, 65], &[1, 3, 1, 3]);
        let d = decompose_eip(&m).map_err(|e| e.to_string())?;
        ensure(d.epsilon.map().to_one_based() == vec![1, 3], "ε map")?;
        ensure(d.delta.codomain() == &zt(&[66, 455]), "δ target")?;
        ensure(d.phi.map().to_one_based() == vec![1, 2, 1, 2], "φ map")?;
        ensure(d.factors == vec![int(11), int(13)], "witnesses")?;
        let back = compose(&d.phi, &compose(&d.delta, &d.epsilon).unwrap()).unwrap();
        ensure(back == m, "recomposition")
    });
}

#[test]
fn criterion_3_weak_divisibility() {
    criterion(3, Duration::from_secs(1), || {
        let f = zm(&[2], &[6], &[1]);
        let g = zm(&[5], &[105], &[1]);
        let w = weak_division(&f, &g).unwrap();
        ensure(w.holds && w.s == int(3) && w.r == int(21), format!("forward: {w:?}"))?;
        ensure(!weak_division(&g, &f).unwrap().holds, "reverse holds")?;
        let d = weak_div_diagram(&f, &g).map_err(|e| e.to_string())?;
        for leg in [&d.left, &d.right, &d.mu, &d.alpha, &d.beta, &d.eta] {
            Morphism::new(leg.domain().clone(), leg.codomain().clone(), leg.map().clone())
                .map_err(|e| format!("leg {leg}: {e}"))?;
        }
        ensure(is_weak_equivalence(&d.mu).unwrap() && is_weak_equivalence(&d.eta).unwrap(), "μ, η ∉ W")
    });
}

#[test]
fn criterion_4_classification() {
    criterion(4, Duration::from_secs(5), || {
        let f = zm(&[2], &[6], &[1]);
        ensure(is_weakly_irreducible(&f).unwrap() && is_weakly_prime(&f).unwrap(), "(2)->(6)")?;
        ensure(total_witness(&f).unwrap() == int(3), "r of (2)->(6)")?;

        let zx = Monoid::Integers;
        let tuples = universe_tuples(&UniverseSpec::new(zx.clone())).unwrap();
        let (mut fact, mut drop, mut div) = (0, 0, 0);
        for x in &tuples {
            for y in &tuples {
                for map in hom_maps(x, y).unwrap() {
                    let m = Morphism::new(x.clone(), y.clone(), map).unwrap();
                    let fibers = m.fiber_products().unwrap();
                    let v = m.map().values();
                    let factorization = m.map().is_surjective() && fibers.as_slice() == x.entries();
                    let drop_units = m.map().is_injective()
                        && v.iter().enumerate().all(|(j, &i)| x.entries()[i] == y.entries()[j])
                        && (0..x.len()).all(|i| v.contains(&i) || zx.is_invertible(&x.entries()[i]));
                    let weq = is_weak_equivalence(&m).unwrap();
                    if factorization {
                        fact += 1;
                        ensure(weq, format!("factorization morphism {m} not in W"))?;
                    }
                    if drop_units {
                        drop += 1;
                        ensure(weq, format!("drop-unit morphism {m} not in W"))?;
                    }
                    if x.len() == y.len() && v.iter().enumerate().all(|(j, &i)| i == j) && !x.is_empty() {
                        let non_unit = x.entries().iter().zip(y.entries()).any(|(a, b)| {
                            let Some(q) = zx.exact_divide(a, b).unwrap() else { return true };
                            !zx.is_invertible(&q)
                        });
                        if non_unit {
                            div += 1;
                            ensure(!weq, format!("divisibility morphism {m} with a non-unit ratio is in W"))?;
                        }
                    }
                }
            }
        }
        ensure(fact > 0 && drop > 0 && div > 0, "a shape never occurred")
    });
}

#[test]
fn criterion_5_oracle_suites() {
    criterion(5, Duration::from_secs(60), || {
        let spec = UniverseSpec::new(Monoid::Integers);
        let v = Verifier::new(spec).map_err(|e| e.to_string())?;
        let names = applicable_suites(&Monoid::Integers);
        for name in names {
            let t = Instant::now();
            let r = v.run(&[name]).map_err(|e| e.to_string())?.remove(0);
            println!("  {}: {} cases, {} failed, {:.2}s", r.name, r.cases, r.failed, t.elapsed().as_secs_f64());
            ensure(r.passed(), format!("{}: {:?}", r.name, r.failures.first()))?;
        }
        Ok(())
    });
}

#[test]
fn criterion_6_zeta_laws() {
    criterion(6, Duration::from_secs(10), || {
        let zx = Monoid::Integers;
        let tuples = universe_tuples(&UniverseSpec::new(zx.clone())).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let pick = |rng: &mut ChaCha8Rng, x: &FactorTuple| -> Option<Morphism> {
            let y = &tuples[rng.gen_range(0..tuples.len())];
            let maps = hom_maps(x, y).unwrap();
            (!maps.is_empty()).then(|| Morphism::new(x.clone(), y.clone(), maps[rng.gen_range(0..maps.len())].clone()).unwrap())
        };
        let mut pairs = 0;
        while pairs < 500 {
            let x = &tuples[rng.gen_range(0..tuples.len())];
            let Some(f) = pick(&mut rng, x) else { continue };
            let Some(g) = pick(&mut rng, f.codomain()) else { continue };
            pairs += 1;
            let gf = compose(&g, &f).unwrap();
            let (zf, zg, zgf) = (zeta_mor(&f).unwrap(), zeta_mor(&g).unwrap(), zeta_mor(&gf).unwrap());
            ensure(zgf == zf + zg, format!("ζ not additive on {f}, {g}"))?;
            for (m, z) in [(&f, zf), (&g, zg), (&gf, zgf)] {
                ensure((z == 0) == is_weak_equivalence(m).unwrap(), format!("ζ = 0 vs W on {m}"))?;
                ensure((z == 1) == is_weakly_irreducible(m).unwrap(), format!("ζ = 1 vs irreducible on {m}"))?;
            }
            let (s, t) = (f.domain(), g.codomain());
            let st = zeta_obj(&tensor_objects(s, t).unwrap()).unwrap();
            ensure(st == zeta_obj(s).unwrap() + zeta_obj(t).unwrap(), format!("ζ_obj not additive on {s}, {t}"))?;
        }
        Ok(())
    });
}

#[test]
fn criterion_7_atomic_chains() {
    criterion(7, Duration::from_secs(10), || {
        let zx = Monoid::Integers;
        let pool: Vec<Element> = [-1, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 15, 30].map(int).to_vec();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut done = 0;
        while done < 100 {
            let m = random_morphism(&mut rng, &zx, &pool, 3, 4).unwrap();
            let Element::Int(r) = total_witness(&m).unwrap() else { unreachable!() };
            if r.abs() > 10_000 {
                continue;
            }
            done += 1;
            let c = atomic_chain(&m).map_err(|e| format!("{m}: {e}"))?;
            ensure(c.composite().unwrap() == m, format!("chain of {m} does not compose back"))?;
            ensure(c.irr_count == zeta_mor(&m).unwrap(), format!("irr_count of {m}"))?;
        }
        Ok(())
    });
}

#[test]
fn criterion_8_factorization_probes() {
    criterion(8, Duration::from_secs(5), || {
        let m = zm(&[1], &[12], &[1]);
        let classes = weak_divisor_classes(&m).unwrap();
        ensure(classes.len() == 6, format!("{} classes for r = 12", classes.len()))?;
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..50 {
            let a = int(rng.gen_range(2..=1_000_000i64) * if rng.gen_bool(0.5) { 1 } else { -1 });
            let f = enumerate_irreducible_factorizations(&Monoid::Integers, &a, 10).unwrap();
            ensure(f.classes.len() == 1 && !f.truncated, format!("{a:?} has {} classes", f.classes.len()))?;
        }
        ensure(is_epic(&m).unwrap() && is_monic(&m).unwrap(), "(1)->(12) is bijective")
    });
}
