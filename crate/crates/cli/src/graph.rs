//! DOT export of a bounded universe.

use std::fmt::Write;

use factcat::divisibility::is_weakly_irreducible;
use factcat::oracle::{universe_tuples, UniverseSpec};
use factcat::weq::is_weak_equivalence;
use factcat::{hom_set, Result};

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// One node per tuple in universe order and one edge per non-identity
/// morphism. Weak equivalences are dashed, weakly irreducible morphisms bold.
pub fn universe_dot(spec: &UniverseSpec) -> Result<String> {
    let tuples = universe_tuples(spec)?;
    let styled = spec.monoid.is_divisibility();
    let mut out = String::from("digraph factorizations {\n  rankdir=LR;\n");
    for (i, t) in tuples.iter().enumerate() {
        writeln!(out, "  n{i} [label={}];", quote(&t.to_string())).expect("writing to a String");
    }
    for (i, x) in tuples.iter().enumerate() {
        for (j, y) in tuples.iter().enumerate() {
            for m in hom_set(x, y)? {
                if m.is_identity() {
                    continue;
                }
                let label = format!("{:?}", m.map().to_one_based());
                let style = if !styled {
                    ""
                } else if is_weak_equivalence(&m)? {
                    ", style=dashed"
                } else if is_weakly_irreducible(&m)? {
                    ", style=bold"
                } else {
                    ""
                };
                writeln!(out, "  n{i} -> n{j} [label={}{style}];", quote(&label)).expect("writing to a String");
            }
        }
    }
    out.push_str("}\n");
    Ok(out)
}
