//! Random expression and symbol sources for round-trip checks.

use drw_core::{FunctionField, LaurentRing};
use rand::Rng;

use crate::dsl::Dsl;

fn poly_text<R: Rng>(ring: &LaurentRing, rng: &mut R, extension: bool) -> String {
    let nterms = rng.gen_range(1..=3);
    let mut parts = Vec::new();
    for _ in 0..nterms {
        let mut factors = Vec::new();
        let c = rng.gen_range(1..10);
        if c != 1 || rng.gen_bool(0.2) {
            factors.push(c.to_string());
        }
        if extension && rng.gen_bool(0.3) {
            factors.push("theta".into());
        }
        for v in &ring.vars {
            let e: i64 = if v.laurent { rng.gen_range(-2..=3) } else { rng.gen_range(0..=3) };
            match e {
                0 => {}
                1 => factors.push(v.name.clone()),
                _ => factors.push(format!("{}^{}", v.name, e)),
            }
        }
        if factors.is_empty() {
            factors.push("1".into());
        }
        parts.push(factors.join("*"));
    }
    let sep = if rng.gen_bool(0.5) { "+" } else { "-" };
    parts.join(sep)
}

fn unit_text<R: Rng>(ring: &LaurentRing, rng: &mut R) -> Option<String> {
    let laurent: Vec<_> = ring.vars.iter().filter(|v| v.laurent).collect();
    if laurent.is_empty() {
        return None;
    }
    let v = &laurent[rng.gen_range(0..laurent.len())];
    let e = [1, 2, -1][rng.gen_range(0..3)];
    Some(if e == 1 { v.name.clone() } else { format!("{}^{}", v.name, e) })
}

/// A random expression in the surface syntax, not necessarily canonical.
pub fn expr_text<R: Rng>(dsl: &Dsl, rng: &mut R, depth: u32) -> String {
    let ext = dsl.zq.degree() > 1;
    let leaf = depth == 0 || rng.gen_bool(0.25);
    if leaf {
        return match rng.gen_range(0..4) {
            0 => rng.gen_range(0..40).to_string(),
            1 if ext => "theta".into(),
            2 => match unit_text(&dsl.ring, rng) {
                Some(u) => format!("dlog({u})"),
                None => format!("[{}]", poly_text(&dsl.ring, rng, ext)),
            },
            _ => format!("[{}]", poly_text(&dsl.ring, rng, ext)),
        };
    }
    let sub = |rng: &mut R| expr_text(dsl, rng, depth - 1);
    match rng.gen_range(0..9) {
        0 => format!("F({})", sub(rng)),
        1 => format!("V({})", sub(rng)),
        2 => format!("d({})", sub(rng)),
        3 => format!("{}*{}", sub(rng), sub(rng)),
        4 => format!("{} + {}", sub(rng), sub(rng)),
        5 => format!("{} - {}", sub(rng), sub(rng)),
        6 => format!("({})^{}", sub(rng), rng.gen_range(0..3)),
        7 => format!("-{}", sub(rng)),
        _ => format!("[{}]^{}", poly_text(&dsl.ring, rng, ext), rng.gen_range(1..4)),
    }
}

/// A random Milnor symbol sum over 𝔽_q(t).
pub fn symbol_text<R: Rng>(dsl: &Dsl, rng: &mut R) -> String {
    let degree = rng.gen_range(1..=3);
    let nterms = rng.gen_range(1..=2);
    let mut out = Vec::new();
    for i in 0..nterms {
        let entries: Vec<String> = (0..degree)
            .map(|_| {
                let num = poly_text(&dsl.ring, rng, dsl.zq.degree() > 1);
                if rng.gen_bool(0.4) {
                    format!("({num})/({})", poly_text(&dsl.ring, rng, false))
                } else {
                    num
                }
            })
            .collect();
        let c = rng.gen_range(1..4);
        let sign = if i == 0 { "" } else if rng.gen_bool(0.5) { " + " } else { " - " };
        out.push(format!("{sign}{c}*{{{}}}", entries.join(", ")));
    }
    out.concat()
}

/// Outcome of one round-trip case.
pub struct RoundTrip {
    pub input: String,
    pub printed: String,
    pub ok: bool,
}

/// print(parse(s)) is a fixed point of print∘parse and parse(print(x)) = x.
pub fn expr_round_trip(dsl: &Dsl, input: &str) -> Option<RoundTrip> {
    let x = dsl.parse_expr(input).ok()?;
    let printed = dsl.print_expr(&x);
    let ok = match dsl.parse_expr(&printed) {
        Ok(y) => y == x && dsl.print_expr(&y) == printed,
        Err(_) => false,
    };
    Some(RoundTrip { input: input.into(), printed, ok })
}

pub fn symbol_round_trip(dsl: &Dsl, k: &FunctionField, input: &str) -> Option<RoundTrip> {
    let x = dsl.parse_symbol(k, input).ok()?;
    let printed = dsl.print_symbol(k, &x);
    let ok = match dsl.parse_symbol(k, &printed) {
        Ok(y) => y == x && dsl.print_symbol(k, &y) == printed,
        Err(_) => false,
    };
    Some(RoundTrip { input: input.into(), printed, ok })
}
