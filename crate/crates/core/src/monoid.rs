//! Commutative cancellative pre-ordered monoids and their concrete instances.

use std::fmt;
use std::sync::Arc;

use num_rational::Ratio;
use num_traits::{CheckedMul, One};

use crate::arith;
use crate::error::{Error, Result};

/// A monoid element. Which variant is valid depends on the [`Monoid`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Element {
    /// Nonzero integer (`zx`) or positive integer (`nat`).
    Int(i64),
    /// Exact rational in (0, 1].
    Rat(Ratio<i64>),
    /// Exponent vector over the free monoid's alphabet.
    Free(Vec<u32>),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Monoid {
    /// Nonzero integers under multiplication, ordered by divisibility.
    Integers,
    /// Positive integers under multiplication, ordered by divisibility.
    Naturals,
    /// Rationals in (0, 1] under multiplication, ordered numerically.
    UnitInterval,
    /// Free commutative monoid on a finite alphabet, ordered by divisibility.
    Free(Arc<[String]>),
}

/// `unit * factors[0] * ... = a`, factors irreducible and in canonical order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub unit: Element,
    pub factors: Vec<Element>,
}

impl Monoid {
    /// Parses `zx`, `nat`, `interval` or `free:<alphabet>`. The alphabet is a
    /// comma separated list of names, or a run of single-character names
    /// when it contains no comma.
    pub fn parse(name: &str) -> Result<Monoid> {
        match name {
            "zx" => Ok(Monoid::Integers),
            "nat" => Ok(Monoid::Naturals),
            "interval" => Ok(Monoid::UnitInterval),
            _ => {
                let Some(alpha) = name.strip_prefix("free:") else {
                    return Err(Error::Parse(format!("unknown monoid `{name}`")));
                };
                let gens: Vec<String> = if alpha.contains(',') {
                    alpha.split(',').map(|s| s.trim().to_string()).collect()
                } else {
                    alpha.chars().map(|c| c.to_string()).collect()
                };
                if gens.is_empty() {
                    return Err(Error::Parse("free monoid needs at least one generator".into()));
                }
                for (i, g) in gens.iter().enumerate() {
                    let ok = !g.is_empty()
                        && g.chars().all(|c| c.is_alphanumeric() || c == '_')
                        && !g.chars().all(|c| c.is_ascii_digit());
                    if !ok {
                        return Err(Error::Parse(format!("bad generator name `{g}`")));
                    }
                    if gens[..i].contains(g) {
                        return Err(Error::Parse(format!("duplicate generator `{g}`")));
                    }
                }
                Ok(Monoid::Free(gens.into()))
            }
        }
    }

    pub fn name(&self) -> String {
        match self {
            Monoid::Integers => "zx".into(),
            Monoid::Naturals => "nat".into(),
            Monoid::UnitInterval => "interval".into(),
            Monoid::Free(gens) => {
                if gens.iter().all(|g| g.chars().count() == 1) {
                    format!("free:{}", gens.concat())
                } else {
                    format!("free:{}", gens.join(","))
                }
            }
        }
    }

    /// True when the pre-order is divisibility.
    pub fn is_divisibility(&self) -> bool {
        !matches!(self, Monoid::UnitInterval)
    }

    pub fn generators(&self) -> Option<&[String]> {
        match self {
            Monoid::Free(g) => Some(g),
            _ => None,
        }
    }

    pub(crate) fn require_divisibility(&self, op: &'static str) -> Result<()> {
        if self.is_divisibility() {
            Ok(())
        } else {
            Err(Error::Capability { op, monoid: self.name() })
        }
    }

    pub fn identity(&self) -> Element {
        match self {
            Monoid::Integers | Monoid::Naturals => Element::Int(1),
            Monoid::UnitInterval => Element::Rat(Ratio::one()),
            Monoid::Free(g) => Element::Free(vec![0; g.len()]),
        }
    }

    fn invalid(&self, detail: impl Into<String>) -> Error {
        Error::InvalidElement { monoid: self.name(), detail: detail.into() }
    }

    pub fn check(&self, a: &Element) -> Result<()> {
        match (self, a) {
            (Monoid::Integers, Element::Int(v)) => {
                if *v == 0 {
                    return Err(self.invalid("zero is not an element"));
                }
            }
            (Monoid::Naturals, Element::Int(v)) => {
                if *v <= 0 {
                    return Err(self.invalid(format!("{v} is not positive")));
                }
            }
            (Monoid::UnitInterval, Element::Rat(r)) => {
                if *r.numer() <= 0 || r > &Ratio::one() {
                    return Err(self.invalid(format!("{r} is not in (0,1]")));
                }
            }
            (Monoid::Free(g), Element::Free(e)) => {
                if e.len() != g.len() {
                    return Err(self.invalid("exponent vector has wrong length"));
                }
            }
            _ => return Err(self.invalid(format!("{a:?} has the wrong kind"))),
        }
        Ok(())
    }

    pub fn op(&self, a: &Element, b: &Element) -> Result<Element> {
        self.check(a)?;
        self.check(b)?;
        Ok(match (a, b) {
            (Element::Int(x), Element::Int(y)) => {
                Element::Int(i64::checked_mul(*x, *y).ok_or(Error::Overflow)?)
            }
            (Element::Rat(x), Element::Rat(y)) => {
                Element::Rat(x.checked_mul(y).ok_or(Error::Overflow)?)
            }
            (Element::Free(x), Element::Free(y)) => {
                let mut out = Vec::with_capacity(x.len());
                for (i, j) in x.iter().zip(y) {
                    out.push(i.checked_add(*j).ok_or(Error::Overflow)?);
                }
                Element::Free(out)
            }
            _ => unreachable!("checked above"),
        })
    }

    /// Product of a sequence; the empty product is the identity.
    pub fn product<'a, I>(&self, items: I) -> Result<Element>
    where
        I: IntoIterator<Item = &'a Element>,
    {
        let mut acc = self.identity();
        for x in items {
            acc = self.op(&acc, x)?;
        }
        Ok(acc)
    }

    /// The monoid pre-order. Invalid elements compare as unrelated.
    pub fn leq(&self, a: &Element, b: &Element) -> bool {
        if self.check(a).is_err() || self.check(b).is_err() {
            return false;
        }
        match (a, b) {
            (Element::Int(x), Element::Int(y)) => y.wrapping_rem(*x) == 0,
            (Element::Rat(x), Element::Rat(y)) => x <= y,
            (Element::Free(x), Element::Free(y)) => x.iter().zip(y).all(|(i, j)| i <= j),
            _ => false,
        }
    }

    pub fn is_invertible(&self, a: &Element) -> bool {
        self.inverse(a).is_some()
    }

    pub fn inverse(&self, a: &Element) -> Option<Element> {
        self.check(a).ok()?;
        match a {
            Element::Int(v) if *v == 1 || (*v == -1 && *self == Monoid::Integers) => {
                Some(a.clone())
            }
            Element::Rat(r) if r.is_one() => Some(a.clone()),
            Element::Free(e) if e.iter().all(|&k| k == 0) => Some(a.clone()),
            _ => None,
        }
    }

    /// The unique `q` with `a * q = b`, if `a` divides `b`.
    pub fn exact_divide(&self, a: &Element, b: &Element) -> Result<Option<Element>> {
        self.require_divisibility("exact_divide")?;
        self.check(a)?;
        self.check(b)?;
        Ok(match (a, b) {
            (Element::Int(x), Element::Int(y)) => {
                if y.wrapping_rem(*x) != 0 {
                    None
                } else {
                    Some(Element::Int(y.checked_div(*x).ok_or(Error::Overflow)?))
                }
            }
            (Element::Free(x), Element::Free(y)) => x
                .iter()
                .zip(y)
                .map(|(i, j)| j.checked_sub(*i))
                .collect::<Option<Vec<u32>>>()
                .map(Element::Free),
            _ => unreachable!("checked above"),
        })
    }

    pub fn divides(&self, a: &Element, b: &Element) -> Result<bool> {
        Ok(self.exact_divide(a, b)?.is_some())
    }

    fn bounded_abs(&self, a: &Element) -> Result<u64> {
        match a {
            Element::Int(v) => {
                let m = v.unsigned_abs();
                if m > arith::TRIAL_DIVISION_BOUND as u64 {
                    Err(Error::OutOfRange {
                        value: *v as i128,
                        bound: arith::TRIAL_DIVISION_BOUND,
                    })
                } else {
                    Ok(m)
                }
            }
            _ => Err(self.invalid("expected an integer")),
        }
    }

    pub fn is_irreducible(&self, a: &Element) -> Result<bool> {
        self.require_divisibility("is_irreducible")?;
        self.check(a)?;
        match a {
            Element::Int(_) => Ok(arith::is_prime(self.bounded_abs(a)?)),
            Element::Free(e) => Ok(e.iter().map(|&k| k as u64).sum::<u64>() == 1),
            Element::Rat(_) => unreachable!("interval is not a divisibility monoid"),
        }
    }

    /// In every shipped divisibility instance prime and irreducible coincide.
    pub fn is_prime(&self, a: &Element) -> Result<bool> {
        self.require_divisibility("is_prime")?;
        self.is_irreducible(a)
    }

    pub fn factor_irreducibles(&self, a: &Element) -> Result<Factorization> {
        self.require_divisibility("factor_irreducibles")?;
        self.check(a)?;
        match a {
            Element::Int(v) => {
                let ps = arith::prime_factors(self.bounded_abs(a)?);
                Ok(Factorization {
                    unit: Element::Int(v.signum()),
                    factors: ps.into_iter().map(|p| Element::Int(p as i64)).collect(),
                })
            }
            Element::Free(e) => {
                let mut factors = Vec::new();
                for (i, &k) in e.iter().enumerate() {
                    for _ in 0..k {
                        let mut g = vec![0; e.len()];
                        g[i] = 1;
                        factors.push(Element::Free(g));
                    }
                }
                Ok(Factorization { unit: self.identity(), factors })
            }
            Element::Rat(_) => unreachable!("interval is not a divisibility monoid"),
        }
    }

    pub fn are_associates(&self, a: &Element, b: &Element) -> Result<bool> {
        Ok(self.divides(a, b)? && self.divides(b, a)?)
    }

    /// Canonical representative of the associate class of `a`.
    pub fn associate_rep(&self, a: &Element) -> Result<Element> {
        self.require_divisibility("associate_rep")?;
        self.check(a)?;
        Ok(match a {
            Element::Int(v) => Element::Int(v.abs()),
            _ => a.clone(),
        })
    }

    /// Canonical representatives of the divisors of `a` up to associates.
    /// Integers: positive divisors ascending. Free: by total degree, then
    /// earlier generators first.
    pub fn divisor_reps(&self, a: &Element) -> Result<Vec<Element>> {
        self.require_divisibility("divisor_reps")?;
        self.check(a)?;
        match a {
            Element::Int(_) => {
                let n = self.bounded_abs(a)?;
                Ok(arith::divisors(n).into_iter().map(|d| Element::Int(d as i64)).collect())
            }
            Element::Free(e) => {
                let mut out: Vec<Vec<u32>> = vec![vec![]];
                for &k in e {
                    out = out
                        .into_iter()
                        .flat_map(|p| {
                            (0..=k).map(move |j| {
                                let mut q = p.clone();
                                q.push(j);
                                q
                            })
                        })
                        .collect();
                }
                out.sort_by(|x, y| {
                    let dx: u64 = x.iter().map(|&k| k as u64).sum();
                    let dy: u64 = y.iter().map(|&k| k as u64).sum();
                    dx.cmp(&dy).then_with(|| y.cmp(x))
                });
                Ok(out.into_iter().map(Element::Free).collect())
            }
            Element::Rat(_) => unreachable!("interval is not a divisibility monoid"),
        }
    }

    /// Wire text of an element: `6`, `1/2`, `a^2*b`, identity of free is `1`.
    pub fn format(&self, a: &Element) -> String {
        match (self, a) {
            (_, Element::Int(v)) => v.to_string(),
            (_, Element::Rat(r)) => format!("{}/{}", r.numer(), r.denom()),
            (Monoid::Free(gens), Element::Free(e)) => {
                let parts: Vec<String> = gens
                    .iter()
                    .zip(e)
                    .filter(|(_, &k)| k > 0)
                    .map(|(g, &k)| if k == 1 { g.clone() } else { format!("{g}^{k}") })
                    .collect();
                if parts.is_empty() {
                    "1".into()
                } else {
                    parts.join("*")
                }
            }
            (_, Element::Free(e)) => format!("{e:?}"),
        }
    }

    /// Parses the textual form produced by [`Monoid::format`].
    pub fn parse_element(&self, s: &str) -> Result<Element> {
        let s = s.trim();
        let el = match self {
            Monoid::Integers | Monoid::Naturals => Element::Int(
                s.parse::<i64>().map_err(|_| Error::Parse(format!("bad integer `{s}`")))?,
            ),
            Monoid::UnitInterval => {
                let (p, q) = s.split_once('/').unwrap_or((s, "1"));
                let p: i64 = p.trim().parse().map_err(|_| Error::Parse(format!("bad rational `{s}`")))?;
                let q: i64 = q.trim().parse().map_err(|_| Error::Parse(format!("bad rational `{s}`")))?;
                if q == 0 {
                    return Err(Error::Parse(format!("zero denominator in `{s}`")));
                }
                Element::Rat(Ratio::new(p, q))
            }
            Monoid::Free(gens) => {
                let mut e = vec![0u32; gens.len()];
                if s != "1" {
                    for part in s.split('*') {
                        let part = part.trim();
                        let (g, k) = match part.split_once('^') {
                            Some((g, k)) => (
                                g.trim(),
                                k.trim()
                                    .parse::<u32>()
                                    .map_err(|_| Error::Parse(format!("bad exponent in `{part}`")))?,
                            ),
                            None => (part, 1),
                        };
                        let i = gens
                            .iter()
                            .position(|x| x == g)
                            .ok_or_else(|| self.invalid(format!("unknown generator `{g}`")))?;
                        e[i] = e[i].checked_add(k).ok_or(Error::Overflow)?;
                    }
                }
                Element::Free(e)
            }
        };
        self.check(&el)?;
        Ok(el)
    }

    /// The `i`-th generator of a free monoid.
    pub fn generator(&self, i: usize) -> Option<Element> {
        let gens = self.generators()?;
        (i < gens.len()).then(|| {
            let mut e = vec![0; gens.len()];
            e[i] = 1;
            Element::Free(e)
        })
    }
}

impl fmt::Display for Monoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}
