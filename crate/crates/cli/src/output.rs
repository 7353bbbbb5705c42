//! Structured output.
//!
//! A [`Doc`] is a tree of maps, arrays, strings and integers. Map keys keep
//! insertion order, and each command inserts them in a fixed order, so two
//! runs of the same command produce byte-identical documents. Rationals are
//! written as `"num/den"` strings.
//!
//! A canonical-form term is written as
//! `{type, coefficient, weight, partition, dlog, expr}`:
//! the coefficient holds the Witt coordinates of ξ as field-element indices,
//! the weight holds `[numerator, denominator]` per variable, and the partition is
//! `{i0, intervals}` over variable names.

use drw_core::drw_rewrite::Engine;
use drw_core::drw_terms::basis::mask_vars;
use drw_core::DRWElement;
use num_rational::Ratio;

use crate::dsl::Dsl;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Doc {
    Int(i128),
    Str(String),
    List(Vec<Doc>),
    Map(Vec<(String, Doc)>),
}

impl Doc {
    pub fn map() -> Doc {
        Doc::Map(Vec::new())
    }

    pub fn str(s: impl Into<String>) -> Doc {
        Doc::Str(s.into())
    }

    pub fn int(v: impl Into<i128>) -> Doc {
        Doc::Int(v.into())
    }

    pub fn bool(b: bool) -> Doc {
        Doc::str(if b { "yes" } else { "no" })
    }

    pub fn ratio(r: Ratio<i64>) -> Doc {
        Doc::Str(format!("{}/{}", r.numer(), r.denom()))
    }

    /// Appends a key; panics on a non-map.
    pub fn with(mut self, key: &str, value: Doc) -> Doc {
        match &mut self {
            Doc::Map(m) => m.push((key.to_string(), value)),
            _ => panic!("with() on a non-map document"),
        }
        self
    }

    pub fn get(&self, key: &str) -> Option<&Doc> {
        match self {
            Doc::Map(m) => m.iter().find(|(k, _)| k == key).map(|(_, v)| v),
            _ => None,
        }
    }

    pub fn to_json(&self) -> String {
        let mut out = String::new();
        self.write_json(&mut out, 0);
        out.push('\n');
        out
    }

    fn write_json(&self, out: &mut String, indent: usize) {
        let pad = |n: usize| "  ".repeat(n);
        match self {
            Doc::Int(v) => out.push_str(&v.to_string()),
            Doc::Str(s) => out.push_str(&serde_json::to_string(s).expect("string serializes")),
            Doc::List(xs) if xs.is_empty() => out.push_str("[]"),
            Doc::Map(m) if m.is_empty() => out.push_str("{}"),
            Doc::List(xs) => {
                let flat = xs.iter().all(|x| matches!(x, Doc::Int(_) | Doc::Str(_)));
                if flat {
                    out.push('[');
                    for (i, x) in xs.iter().enumerate() {
                        if i > 0 {
                            out.push_str(", ");
                        }
                        x.write_json(out, indent);
                    }
                    out.push(']');
                    return;
                }
                out.push_str("[\n");
                for (i, x) in xs.iter().enumerate() {
                    out.push_str(&pad(indent + 1));
                    x.write_json(out, indent + 1);
                    out.push_str(if i + 1 < xs.len() { ",\n" } else { "\n" });
                }
                out.push_str(&pad(indent));
                out.push(']');
            }
            Doc::Map(m) => {
                out.push_str("{\n");
                for (i, (k, v)) in m.iter().enumerate() {
                    out.push_str(&pad(indent + 1));
                    out.push_str(&serde_json::to_string(k).expect("key serializes"));
                    out.push_str(": ");
                    v.write_json(out, indent + 1);
                    out.push_str(if i + 1 < m.len() { ",\n" } else { "\n" });
                }
                out.push_str(&pad(indent));
                out.push('}');
            }
        }
    }

    /// Indented `key: value` rendering.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        self.write_text(&mut out, 0);
        out
    }

    fn inline(&self) -> Option<String> {
        match self {
            Doc::Int(v) => Some(v.to_string()),
            Doc::Str(s) => Some(s.clone()),
            Doc::List(xs) if xs.iter().all(|x| matches!(x, Doc::Int(_) | Doc::Str(_) | Doc::List(_))) => {
                let parts: Option<Vec<String>> = xs.iter().map(|x| x.inline()).collect();
                parts.map(|p| format!("[{}]", p.join(", ")))
            }
            Doc::Map(m) if m.is_empty() => Some("{}".into()),
            _ => None,
        }
    }

    fn write_text(&self, out: &mut String, indent: usize) {
        let pad = "  ".repeat(indent);
        match self {
            Doc::Map(m) => {
                for (k, v) in m {
                    match v.inline() {
                        Some(s) => out.push_str(&format!("{pad}{k}: {s}\n")),
                        None => {
                            out.push_str(&format!("{pad}{k}:\n"));
                            v.write_text(out, indent + 1);
                        }
                    }
                }
            }
            Doc::List(xs) => {
                for x in xs {
                    match x.inline() {
                        Some(s) => out.push_str(&format!("{pad}- {s}\n")),
                        None => {
                            out.push_str(&format!("{pad}-\n"));
                            x.write_text(out, indent + 1);
                        }
                    }
                }
            }
            leaf => out.push_str(&format!("{pad}{}\n", leaf.inline().unwrap_or_default())),
        }
    }
}

fn names(dsl: &Dsl, vars: &[usize]) -> Doc {
    Doc::List(vars.iter().map(|&j| Doc::str(dsl.ring.vars[j].name.clone())).collect())
}

/// Canonical form of an element with one entry per basic differential.
pub fn element(engine: &Engine, dsl: &Dsl, w: &DRWElement) -> Doc {
    let drw = &engine.drw;
    let zq = drw.zq();
    let field = zq.field();
    let p = drw.p();
    let mut terms = Vec::new();
    let mut exprs = Vec::new();
    for (key, c) in &w.terms {
        let coords = zq.witt_coords(c, w.level).iter().map(|x| Doc::int(field.index(x) as i128)).collect();
        let weight = key
            .k
            .0
            .iter()
            .map(|e| Doc::List(vec![Doc::int(e.num as i128), Doc::int((p as i128).pow(e.den))]))
            .collect();
        let partition = Doc::map()
            .with("i0", names(dsl, &key.part.i0))
            .with("intervals", Doc::List(key.part.intervals.iter().map(|iv| names(dsl, iv)).collect()));
        let expr = engine.expr_of_basic(key, c).map(|e| dsl.print_expr(&e)).unwrap_or_default();
        exprs.push(expr.clone());
        terms.push(
            Doc::map()
                .with("type", Doc::str(drw.tag(key).name()))
                .with("coefficient", Doc::List(coords))
                .with("weight", Doc::List(weight))
                .with("partition", partition)
                .with("dlog", names(dsl, &mask_vars(key.z)))
                .with("expr", Doc::str(expr)),
        );
    }
    let sum = if exprs.is_empty() { "0".to_string() } else { exprs.join(" + ") };
    Doc::map()
        .with("level", Doc::int(w.level))
        .with("degree", Doc::int(w.degree as i128))
        .with("sum", Doc::str(sum))
        .with("terms", Doc::List(terms))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_keeps_insertion_order() {
        let d = Doc::map().with("z", Doc::int(1)).with("a", Doc::List(vec![Doc::str("x"), Doc::int(-2)]));
        assert_eq!(d.to_json(), "{\n  \"z\": 1,\n  \"a\": [\"x\", -2]\n}\n");
        let v: serde_json::Value = serde_json::from_str(&d.to_json()).unwrap();
        assert_eq!(v["a"][1], -2);
    }

    #[test]
    fn text_rendering_nests_maps() {
        let d = Doc::map().with("ring", Doc::map().with("p", Doc::int(3))).with("ok", Doc::bool(true));
        assert_eq!(d.to_text(), "ring:\n  p: 3\nok: yes\n");
    }
}
