//! JSON encodings of elements, tuples and morphisms.
//!
//! Integers are JSON numbers, rationals are `"p/q"` strings, free monoid
//! elements are strings such as `"a^2*b"`. A morphism is
//! `{"monoid": .., "domain": [..], "codomain": [..], "map": [..]}` with a
//! 1-based map.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::category::{FactorTuple, Morphism};
use crate::error::{Error, Result};
use crate::monoid::{Element, Monoid};

pub fn element_to_json(monoid: &Monoid, a: &Element) -> Value {
    match a {
        Element::Int(v) => Value::from(*v),
        _ => Value::String(monoid.format(a)),
    }
}

pub fn element_from_json(monoid: &Monoid, v: &Value) -> Result<Element> {
    match v {
        Value::Number(n) => {
            let i = n
                .as_i64()
                .ok_or_else(|| Error::Parse(format!("`{n}` is not an integer")))?;
            match monoid {
                Monoid::Integers | Monoid::Naturals => {
                    let e = Element::Int(i);
                    monoid.check(&e)?;
                    Ok(e)
                }
                // `1` is accepted for the identity of the other monoids.
                _ => monoid.parse_element(&i.to_string()),
            }
        }
        Value::String(s) => match monoid {
            Monoid::Integers | Monoid::Naturals => {
                Err(Error::Parse(format!("integers are JSON numbers, got \"{s}\"")))
            }
            _ => monoid.parse_element(s),
        },
        other => Err(Error::Parse(format!("unexpected element encoding `{other}`"))),
    }
}

pub fn tuple_to_json(t: &FactorTuple) -> Value {
    Value::Array(t.entries().iter().map(|a| element_to_json(t.monoid(), a)).collect())
}

pub fn tuple_from_json(monoid: &Monoid, v: &Value) -> Result<FactorTuple> {
    let arr = v
        .as_array()
        .ok_or_else(|| Error::Parse(format!("a tuple is a JSON array, got `{v}`")))?;
    let entries = arr.iter().map(|e| element_from_json(monoid, e)).collect::<Result<_>>()?;
    FactorTuple::new(monoid.clone(), entries)
}

pub fn parse_tuple(monoid: &Monoid, s: &str) -> Result<FactorTuple> {
    let v: Value = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
    tuple_from_json(monoid, &v)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MorphismWire {
    pub monoid: String,
    pub domain: Vec<Value>,
    pub codomain: Vec<Value>,
    pub map: Vec<usize>,
}

pub fn morphism_to_wire(m: &Morphism) -> MorphismWire {
    let monoid = m.monoid();
    MorphismWire {
        monoid: monoid.name(),
        domain: m.domain().entries().iter().map(|a| element_to_json(monoid, a)).collect(),
        codomain: m.codomain().entries().iter().map(|a| element_to_json(monoid, a)).collect(),
        map: m.map().to_one_based(),
    }
}

pub fn morphism_to_json(m: &Morphism) -> Value {
    serde_json::to_value(morphism_to_wire(m)).expect("plain data serializes")
}

/// Decodes and validates a morphism.
pub fn morphism_from_wire(w: &MorphismWire) -> Result<Morphism> {
    let monoid = Monoid::parse(&w.monoid)?;
    let d = tuple_from_json(&monoid, &Value::Array(w.domain.clone()))?;
    let c = tuple_from_json(&monoid, &Value::Array(w.codomain.clone()))?;
    Morphism::from_one_based(d, c, &w.map)
}

pub fn morphism_from_json(v: &Value) -> Result<Morphism> {
    let w: MorphismWire =
        serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
    morphism_from_wire(&w)
}

pub fn parse_morphism(s: &str) -> Result<Morphism> {
    let w: MorphismWire = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
    morphism_from_wire(&w)
}
