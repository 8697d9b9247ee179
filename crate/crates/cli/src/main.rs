mod graph;

use std::fs;
use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use factcat::category::{hom_maps, inverse, is_epic, is_isomorphism, is_monic, iso_units};
use factcat::divisibility::{
    self as dv, atomic_chain, chain_stabilizes, enumerate_irreducible_factorizations, weak_div_diagram,
    weak_division, weak_divisor_classes, ChainStatus, StepTag, WedgeOutcome,
};
use factcat::monoidal::tensor_morphisms;
use factcat::oracle::{applicable_suites, default_pool, run_suite, UniverseSpec};
use factcat::weq::{decompose_eip, is_weak_equivalence, ore_square, total_witness};
use factcat::wire::{element_from_json, element_to_json, morphism_to_json, parse_morphism, parse_tuple, tuple_to_json};
use factcat::{compose, Element, Error, Monoid, Morphism};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "factcat", version, about = "Compute in the category of factorizations of a monoid")]
struct Cli {
    /// Monoid: zx, nat, interval or free:<generators>.
    #[arg(long, global = true)]
    monoid: Option<String>,
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the morphisms between two tuples.
    Hom { domain: String, codomain: String },
    /// Print G ∘ F (F applied first).
    Compose { g: String, f: String },
    /// Test one property of a morphism; exits 1 when it fails.
    Check {
        morphism: String,
        #[command(flatten)]
        property: Property,
    },
    /// Report every property of a morphism.
    Classify { morphism: String },
    /// Split a morphism into drop-units, divisibility and factorization parts.
    Decompose { morphism: String },
    /// Write a morphism as weak equivalences and weakly irreducible steps.
    /// With --stabilization, read x_1 <- x_2 <- ... and report where the
    /// chain becomes weak equivalences.
    Chain {
        #[arg(required = true)]
        morphisms: Vec<String>,
        #[arg(long)]
        stabilization: bool,
    },
    /// Tensor product of two morphisms.
    Tensor { f: String, g: String },
    /// Does F weakly divide G? Exits 1 when it does not.
    Weakdiv {
        f: String,
        g: String,
        /// Also print the witnessing square.
        #[arg(long)]
        diagram: bool,
    },
    /// Weak divisors of a morphism up to weak associates.
    Divisors { morphism: String },
    /// Factorizations of an element into irreducibles.
    Factorizations {
        element: String,
        #[arg(long, default_value_t = 1000)]
        max: usize,
    },
    /// Complete a weak equivalence F and a morphism G with common codomain
    /// to a commuting square.
    Ore { f: String, g: String },
    /// Relate two weakly irreducible tuples mapping to the same tuple.
    Wedge { f: String, g: String },
    /// DOT graph of all tuples over a pool.
    Graph {
        /// JSON array of elements.
        #[arg(long)]
        pool: Option<String>,
        #[arg(long, default_value_t = 2)]
        max_len: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the verification suites.
    Verify {
        #[arg(long = "suite")]
        suites: Vec<String>,
        #[arg(long)]
        pool: Option<String>,
        #[arg(long, default_value_t = 3)]
        max_len: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Cases drawn per law when a case space is too large to exhaust.
        #[arg(long, default_value_t = 100_000)]
        samples: usize,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Property {
    #[arg(long)]
    iso: bool,
    #[arg(long)]
    epic: bool,
    #[arg(long)]
    monic: bool,
    #[arg(long)]
    weq: bool,
    /// Weakly irreducible.
    #[arg(long)]
    wirr: bool,
    /// Weakly prime.
    #[arg(long)]
    wprime: bool,
}

/// Exit code for a failed command.
fn exit_code(e: &Error) -> u8 {
    match e {
        Error::ResourceGuard { .. } | Error::OutOfRange { .. } | Error::Overflow => 3,
        Error::Capability { .. } => 4,
        Error::Internal(_) => 1,
        _ => 2,
    }
}

struct Output {
    json: Value,
    text: String,
    /// False for a failed check or suite.
    ok: bool,
}

impl Output {
    fn new(json: Value, text: impl Into<String>) -> Self {
        Output { json, text: text.into(), ok: true }
    }

    fn with_ok(mut self, ok: bool) -> Self {
        self.ok = ok;
        self
    }
}

struct Ctx {
    monoid: Option<Monoid>,
}

impl Ctx {
    fn monoid(&self) -> Result<&Monoid, Error> {
        self.monoid.as_ref().ok_or_else(|| Error::Parse("--monoid is required for this command".into()))
    }

    /// Reads a morphism given inline, as `@file`, or as `-` for stdin.
    fn morphism(&self, arg: &str) -> Result<Morphism, Error> {
        let text = if arg == "-" {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).map_err(|e| Error::Parse(e.to_string()))?;
            s
        } else if let Some(path) = arg.strip_prefix('@') {
            fs::read_to_string(path).map_err(|e| Error::Parse(format!("{path}: {e}")))?
        } else {
            arg.to_string()
        };
        let m = parse_morphism(&text)?;
        if let Some(want) = &self.monoid {
            if m.monoid() != want {
                return Err(Error::MonoidMismatch { left: want.name(), right: m.monoid().name() });
            }
        }
        Ok(m)
    }

    fn element(&self, arg: &str) -> Result<Element, Error> {
        let monoid = self.monoid()?;
        match serde_json::from_str::<Value>(arg) {
            Ok(v) => element_from_json(monoid, &v),
            Err(_) => monoid.parse_element(arg),
        }
    }

    fn pool(&self, arg: Option<&str>, monoid: &Monoid) -> Result<Vec<Element>, Error> {
        let Some(arg) = arg else { return Ok(default_pool(monoid)) };
        let v: Value = serde_json::from_str(arg).map_err(|e| Error::Parse(e.to_string()))?;
        let items = v.as_array().ok_or_else(|| Error::Parse("a pool is a JSON array".into()))?;
        items.iter().map(|e| element_from_json(monoid, e)).collect()
    }
}

fn elt(m: &Monoid, a: &Element) -> Value {
    element_to_json(m, a)
}

fn elts(m: &Monoid, a: &[Element]) -> Value {
    Value::Array(a.iter().map(|e| elt(m, e)).collect())
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("values serialize")
}

fn tag_name(t: StepTag) -> &'static str {
    match t {
        StepTag::WeakEquivalence => "weak_equivalence",
        StepTag::WeaklyIrreducible => "weakly_irreducible",
    }
}

fn run(cli: &Cli) -> Result<Output, Error> {
    let ctx = Ctx { monoid: cli.monoid.as_deref().map(Monoid::parse).transpose()? };
    Ok(match &cli.command {
        Command::Hom { domain, codomain } => {
            let monoid = ctx.monoid()?;
            let d = parse_tuple(monoid, domain)?;
            let c = parse_tuple(monoid, codomain)?;
            let maps: Vec<Vec<usize>> = hom_maps(&d, &c)?.iter().map(|f| f.to_one_based()).collect();
            let mut text = format!("count: {}\n", maps.len());
            for m in &maps {
                text.push_str(&format!("{m:?}\n"));
            }
            let json = json!({
                "domain": tuple_to_json(&d),
                "codomain": tuple_to_json(&c),
                "count": maps.len(),
                "maps": maps,
            });
            Output::new(json, text)
        }
        Command::Compose { g, f } => {
            let gf = compose(&ctx.morphism(g)?, &ctx.morphism(f)?)?;
            Output::new(morphism_to_json(&gf), format!("{gf}\n"))
        }
        Command::Tensor { f, g } => {
            let t = tensor_morphisms(&ctx.morphism(f)?, &ctx.morphism(g)?)?;
            Output::new(morphism_to_json(&t), format!("{t}\n"))
        }
        Command::Check { morphism, property } => {
            let m = ctx.morphism(morphism)?;
            let monoid = m.monoid().clone();
            let r = || total_witness(&m).map(|r| elt(&monoid, &r));
            let (name, holds, witness) = if property.iso {
                let units = iso_units(&m)?;
                let w = units.as_ref().map_or(Value::Null, |u| elts(&monoid, u));
                ("iso", units.is_some(), Some(("units", w)))
            } else if property.epic {
                ("epic", is_epic(&m)?, None)
            } else if property.monic {
                ("monic", is_monic(&m)?, None)
            } else if property.weq {
                ("weq", is_weak_equivalence(&m)?, Some(("r", r()?)))
            } else if property.wirr {
                ("wirr", dv::is_weakly_irreducible(&m)?, Some(("r", r()?)))
            } else {
                ("wprime", dv::is_weakly_prime(&m)?, Some(("r", r()?)))
            };
            let mut json = json!({ "property": name, "holds": holds });
            let mut text = format!("{name}: {holds}\n");
            if let Some((key, w)) = witness {
                text.push_str(&format!("{key}: {w}\n"));
                json[key] = w;
            }
            Output::new(json, text).with_ok(holds)
        }
        Command::Classify { morphism } => {
            let m = ctx.morphism(morphism)?;
            let monoid = m.monoid().clone();
            let r = total_witness(&m)?;
            let json = json!({
                "morphism": morphism_to_json(&m),
                "epic": is_epic(&m)?,
                "monic": is_monic(&m)?,
                "iso": is_isomorphism(&m)?,
                "weq": is_weak_equivalence(&m)?,
                "weakly_irreducible": dv::is_weakly_irreducible(&m)?,
                "weakly_prime": dv::is_weakly_prime(&m)?,
                "r": elt(&monoid, &r),
                "zeta": dv::zeta_mor(&m)?,
                "inverse": inverse(&m)?.map_or(Value::Null, |i| morphism_to_json(&i)),
            });
            let mut text = format!("{m}\n");
            for key in ["epic", "monic", "iso", "weq", "weakly_irreducible", "weakly_prime", "r", "zeta"] {
                text.push_str(&format!("{key}: {}\n", json[key]));
            }
            Output::new(json, text)
        }
        Command::Decompose { morphism } => {
            let m = ctx.morphism(morphism)?;
            let monoid = m.monoid().clone();
            let d = decompose_eip(&m)?;
            let json = json!({
                "epsilon": morphism_to_json(&d.epsilon),
                "delta": morphism_to_json(&d.delta),
                "phi": morphism_to_json(&d.phi),
                "factors": elts(&monoid, &d.factors),
                "unit": elt(&monoid, &d.dropped_unit),
            });
            let text = format!(
                "epsilon: {}\ndelta: {}\nphi: {}\nfactors: {}\nunit: {}\n",
                d.epsilon, d.delta, d.phi, json["factors"], json["unit"]
            );
            Output::new(json, text)
        }
        Command::Chain { morphisms, stabilization } => {
            if *stabilization {
                let chain = morphisms.iter().map(|s| ctx.morphism(s)).collect::<Result<Vec<_>, _>>()?;
                let at = match chain_stabilizes(&chain)? {
                    ChainStatus::StabilizedAt(k) => Some(k),
                    ChainStatus::NotStabilized => None,
                };
                let text = match at {
                    Some(k) => format!("stabilizes from morphism {k}\n"),
                    None => "does not stabilize\n".to_string(),
                };
                Output::new(json!({ "stabilizes_at": at }), text).with_ok(at.is_some())
            } else {
                if morphisms.len() != 1 {
                    return Err(Error::Parse("chain takes one morphism unless --stabilization is given".into()));
                }
                let m = ctx.morphism(&morphisms[0])?;
                let c = atomic_chain(&m)?;
                let steps: Vec<Value> = c
                    .steps
                    .iter()
                    .zip(&c.tags)
                    .map(|(s, t)| json!({ "tag": tag_name(*t), "morphism": morphism_to_json(s) }))
                    .collect();
                let mut text = String::new();
                for (s, t) in c.steps.iter().zip(&c.tags) {
                    text.push_str(&format!("{}: {s}\n", tag_name(*t)));
                }
                text.push_str(&format!("irreducible steps: {}\n", c.irr_count));
                Output::new(json!({ "steps": steps, "irr_count": c.irr_count }), text)
            }
        }
        Command::Weakdiv { f, g, diagram } => {
            let (f, g) = (ctx.morphism(f)?, ctx.morphism(g)?);
            let monoid = f.monoid().clone();
            let w = weak_division(&f, &g)?;
            let mut json = json!({ "holds": w.holds, "s": elt(&monoid, &w.s), "r": elt(&monoid, &w.r) });
            let mut text = format!("holds: {}\ns: {}\nr: {}\n", w.holds, json["s"], json["r"]);
            if *diagram && w.holds {
                let d = weak_div_diagram(&f, &g)?;
                let legs = [
                    ("left", &d.left),
                    ("right", &d.right),
                    ("mu", &d.mu),
                    ("alpha", &d.alpha),
                    ("beta", &d.beta),
                    ("eta", &d.eta),
                ];
                let mut obj = serde_json::Map::new();
                obj.insert("a".into(), elt(&monoid, &d.a));
                obj.insert("b".into(), elt(&monoid, &d.b));
                for (name, m) in legs {
                    obj.insert(name.into(), morphism_to_json(m));
                    text.push_str(&format!("{name}: {m}\n"));
                }
                json["diagram"] = Value::Object(obj);
            }
            Output::new(json, text).with_ok(w.holds)
        }
        Command::Divisors { morphism } => {
            let m = ctx.morphism(morphism)?;
            let monoid = m.monoid().clone();
            let classes = weak_divisor_classes(&m)?;
            let json = json!({
                "r": elt(&monoid, &total_witness(&m)?),
                "count": classes.len(),
                "classes": elts(&monoid, &classes),
            });
            let text = format!("r: {}\ncount: {}\nclasses: {}\n", json["r"], classes.len(), json["classes"]);
            Output::new(json, text)
        }
        Command::Factorizations { element, max } => {
            let monoid = ctx.monoid()?;
            let a = ctx.element(element)?;
            let f = enumerate_irreducible_factorizations(monoid, &a, *max)?;
            let classes: Vec<Value> = f.classes.iter().map(|c| elts(monoid, c)).collect();
            let mut text = format!("count: {}\n", classes.len());
            for c in &f.classes {
                let parts: Vec<String> = c.iter().map(|e| monoid.format(e)).collect();
                text.push_str(&format!("{}\n", if parts.is_empty() { "1".into() } else { parts.join(" * ") }));
            }
            if f.truncated {
                text.push_str("(truncated)\n");
            }
            let json = json!({
                "element": elt(monoid, &a),
                "count": classes.len(),
                "classes": classes,
                "truncated": f.truncated,
            });
            Output::new(json, text)
        }
        Command::Ore { f, g } => {
            let sq = ore_square(&ctx.morphism(f)?, &ctx.morphism(g)?)?;
            let json = json!({
                "f_prime": morphism_to_json(&sq.f_prime),
                "g_prime": morphism_to_json(&sq.g_prime),
            });
            Output::new(json, format!("f': {}\ng': {}\n", sq.f_prime, sq.g_prime))
        }
        Command::Wedge { f, g } => {
            let (f, g) = (ctx.morphism(f)?, ctx.morphism(g)?);
            let monoid = f.monoid().clone();
            match dv::ufd_wedge(&f, &g)? {
                WedgeOutcome::WeakEquivalence(m) => Output::new(
                    json!({ "kind": "weak_equivalence", "morphism": morphism_to_json(&m) }),
                    format!("weak equivalence: {m}\n"),
                ),
                WedgeOutcome::Wedge { t, left, right, apex } => Output::new(
                    json!({
                        "kind": "wedge",
                        "t": elt(&monoid, &t),
                        "left": morphism_to_json(&left),
                        "right": morphism_to_json(&right),
                        "apex": morphism_to_json(&apex),
                    }),
                    format!("left: {left}\nright: {right}\napex: {apex}\n"),
                ),
            }
        }
        Command::Graph { pool, max_len, out } => {
            let monoid = ctx.monoid()?.clone();
            let pool = ctx.pool(pool.as_deref(), &monoid)?;
            let spec = UniverseSpec::new(monoid).with_pool(pool)?.with_max_len(*max_len);
            let dot = graph::universe_dot(&spec)?;
            match out {
                Some(path) => {
                    fs::write(path, &dot).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
                    Output::new(json!({ "written": path.display().to_string() }), "")
                }
                None => Output::new(Value::String(dot.clone()), dot),
            }
        }
        Command::Verify { suites, pool, max_len, seed, samples } => {
            let monoid = ctx.monoid.clone().unwrap_or(Monoid::Integers);
            let pool = ctx.pool(pool.as_deref(), &monoid)?;
            let spec = UniverseSpec::new(monoid.clone())
                .with_pool(pool.clone())?
                .with_max_len(*max_len)
                .with_seed(*seed)
                .with_samples(*samples);
            let names: Vec<&str> = if suites.is_empty() {
                applicable_suites(&monoid)
            } else {
                suites.iter().map(String::as_str).collect()
            };
            let reports = run_suite(&spec, &names)?;
            let passed = reports.iter().all(|r| r.passed());
            let mut text = String::new();
            for r in &reports {
                if r.passed() {
                    text.push_str(&format!("{}: PASS ({} cases)\n", r.name, r.cases));
                } else {
                    text.push_str(&format!("{}: FAIL ({} of {} cases)\n", r.name, r.failed, r.cases));
                    for c in &r.failures {
                        text.push_str(&format!("  {}: {}\n", c.law, c.detail));
                    }
                }
            }
            let json = json!({
                "monoid": monoid.name(),
                "pool": elts(&monoid, &pool),
                "max_len": max_len,
                "seed": seed,
                "passed": passed,
                "suites": reports,
            });
            Output::new(json, text).with_ok(passed)
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            let text = if cli.json { format!("{}\n", pretty(&out.json)) } else { out.text };
            // A closed pipe downstream is not an error of ours.
            let _ = std::io::stdout().lock().write_all(text.as_bytes());
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
