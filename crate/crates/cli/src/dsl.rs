//! Parser and printer for the expression language.
//!
//! Witt-differential expressions:
//!
//! ```text
//! sum     := term (('+' | '-') term)*
//! term    := unary ('*' unary)*
//! unary   := ('F' | 'V' | 'd' | '-') unary | power
//! power   := primary ('^' ['-'] int)?
//! primary := int | 'theta' | '[' poly ']' | 'dlog' ('(' poly ')' | '[' poly ']') | '(' sum ')'
//! ```
//!
//! Milnor symbols are sums of `c*{f, g, ...}` whose entries are rational
//! functions `poly` or `poly/poly`. Scalar subexpressions are folded while
//! parsing and `[f]^k` becomes `[f^k]`, so printing a parsed expression and
//! parsing it again gives back the same tree.

use std::fmt;

use drw_core::ring::CommRing;
use drw_core::{DRWExpr, FiniteField, FqElem, FunctionField, FunctionSymbol, LPoly, LaurentRing, MilnorSymbol};
use drw_core::{RationalFunction, UPoly, Zq, ZqElem};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.col, self.msg)
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(u64),
    Ident(String),
    Sym(char),
    End,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(input: &str) -> Result<Vec<Token>, ParseError> {
    let mut out = Vec::new();
    let (mut line, mut col) = (1, 1);
    let mut chars = input.chars().peekable();
    while let Some(&c) = chars.peek() {
        let (l0, c0) = (line, col);
        if c == '\n' {
            chars.next();
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            chars.next();
            col += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let mut s = String::new();
            while let Some(&d) = chars.peek() {
                if !d.is_ascii_digit() {
                    break;
                }
                s.push(d);
                chars.next();
                col += 1;
            }
            let v = s
                .parse::<u64>()
                .map_err(|_| ParseError { line: l0, col: c0, msg: format!("integer {s} out of range") })?;
            out.push(Token { tok: Tok::Int(v), line: l0, col: c0 });
            continue;
        }
        if c.is_alphabetic() || c == '_' {
            let mut s = String::new();
            while let Some(&d) = chars.peek() {
                if !(d.is_alphanumeric() || d == '_') {
                    break;
                }
                s.push(d);
                chars.next();
                col += 1;
            }
            if s == "θ" {
                s = "theta".into();
            }
            out.push(Token { tok: Tok::Ident(s), line: l0, col: c0 });
            continue;
        }
        if "[](){},+-*^/".contains(c) {
            chars.next();
            col += 1;
            out.push(Token { tok: Tok::Sym(c), line: l0, col: c0 });
            continue;
        }
        return Err(ParseError { line: l0, col: c0, msg: format!("unexpected character '{c}'") });
    }
    out.push(Token { tok: Tok::End, line, col });
    Ok(out)
}

/// Parsing context: the coordinate ring and W(𝔽_q).
pub struct Dsl {
    pub ring: LaurentRing,
    pub zq: Zq,
}

struct Cursor<'a> {
    toks: &'a [Token],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn next(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        let t = &self.toks[self.pos];
        Err(ParseError { line: t.line, col: t.col, msg: msg.into() })
    }

    fn is_sym(&self, c: char) -> bool {
        self.peek() == &Tok::Sym(c)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.is_sym(c) {
            self.next();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected '{c}', found {}", describe(self.peek())))
        }
    }

    fn finish(&self) -> Result<(), ParseError> {
        match self.peek() {
            Tok::End => Ok(()),
            t => self.err(format!("unexpected {} after expression", describe(t))),
        }
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Int(v) => format!("integer {v}"),
        Tok::Ident(s) => format!("'{s}'"),
        Tok::Sym(c) => format!("'{c}'"),
        Tok::End => "end of input".into(),
    }
}

fn signed_int(cur: &mut Cursor) -> Result<i64, ParseError> {
    let neg = cur.eat('-');
    match cur.peek().clone() {
        Tok::Int(v) if v <= i64::MAX as u64 => {
            cur.next();
            Ok(if neg { -(v as i64) } else { v as i64 })
        }
        t => cur.err(format!("expected an integer, found {}", describe(&t))),
    }
}

impl Dsl {
    pub fn new(ring: LaurentRing) -> Self {
        let zq = Zq::new(ring.field.clone());
        Dsl { ring, zq }
    }

    fn field(&self) -> &FiniteField {
        &self.ring.field
    }

    // ---- polynomials ----

    fn poly_sum(&self, cur: &mut Cursor) -> Result<LPoly, ParseError> {
        let r = &self.ring;
        let mut acc = if cur.eat('-') { r.neg(&self.poly_term(cur)?) } else { self.poly_term(cur)? };
        loop {
            if cur.eat('+') {
                acc = r.add(&acc, &self.poly_term(cur)?);
            } else if cur.eat('-') {
                acc = r.sub(&acc, &self.poly_term(cur)?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn poly_term(&self, cur: &mut Cursor) -> Result<LPoly, ParseError> {
        let mut acc = self.poly_factor(cur)?;
        while cur.eat('*') {
            acc = self.ring.mul(&acc, &self.poly_factor(cur)?);
        }
        Ok(acc)
    }

    fn poly_factor(&self, cur: &mut Cursor) -> Result<LPoly, ParseError> {
        let (line, col) = (cur.toks[cur.pos].line, cur.toks[cur.pos].col);
        let base = self.poly_atom(cur)?;
        if !cur.eat('^') {
            return Ok(base);
        }
        let e = signed_int(cur)?;
        self.poly_pow(&base, e).map_err(|msg| ParseError { line, col, msg })
    }

    fn poly_pow(&self, base: &LPoly, e: i64) -> Result<LPoly, String> {
        let r = &self.ring;
        if e >= 0 {
            return Ok(r.pow(base, e as u64));
        }
        let (exps, c) = base.as_monomial().ok_or("negative power of a polynomial that is not a monomial")?;
        for (i, &k) in exps.iter().enumerate() {
            if k != 0 && !r.is_laurent(i) {
                return Err(format!("Laurent inverse of the non-Laurent variable {}", r.vars[i].name));
            }
        }
        let ci = self.field().inv(c).ok_or("zero has no inverse")?;
        let inv = r.monomial(ci, exps.iter().map(|k| -k).collect()).map_err(|e| e.to_string())?;
        Ok(r.pow(&inv, (-e) as u64))
    }

    fn poly_atom(&self, cur: &mut Cursor) -> Result<LPoly, ParseError> {
        let r = &self.ring;
        match cur.peek().clone() {
            Tok::Int(v) => {
                cur.next();
                let c = self.field().from_int((v % self.field().p() as u64) as i64);
                Ok(r.constant(c))
            }
            Tok::Ident(name) if name == "theta" => {
                cur.next();
                Ok(r.constant(self.field().theta()))
            }
            Tok::Ident(name) => match r.var_index(&name) {
                Some(i) => {
                    cur.next();
                    Ok(r.variable(i))
                }
                None => cur.err(format!("undeclared variable '{name}'")),
            },
            Tok::Sym('(') => {
                cur.next();
                let f = self.poly_sum(cur)?;
                cur.expect(')')?;
                Ok(f)
            }
            t => cur.err(format!("expected a polynomial, found {}", describe(&t))),
        }
    }

    pub fn parse_poly(&self, input: &str) -> Result<LPoly, ParseError> {
        let toks = lex(input)?;
        let mut cur = Cursor { toks: &toks, pos: 0 };
        let f = self.poly_sum(&mut cur)?;
        cur.finish()?;
        Ok(f)
    }

    // ---- Witt-differential expressions ----

    fn scalar_int(&self, n: i64) -> DRWExpr {
        DRWExpr::Scalar(self.zq.from_int(n))
    }

    fn negate(&self, e: DRWExpr) -> DRWExpr {
        fold_mul(&self.zq, self.scalar_int(-1), e)
    }

    fn sum(&self, cur: &mut Cursor) -> Result<DRWExpr, ParseError> {
        let mut parts = vec![self.term(cur)?];
        loop {
            if cur.eat('+') {
                parts.push(self.term(cur)?);
            } else if cur.eat('-') {
                let t = self.term(cur)?;
                parts.push(self.negate(t));
            } else {
                break;
            }
        }
        Ok(fold_add(&self.zq, parts))
    }

    fn term(&self, cur: &mut Cursor) -> Result<DRWExpr, ParseError> {
        let mut acc = self.unary(cur)?;
        while cur.eat('*') {
            let rhs = self.unary(cur)?;
            acc = fold_mul(&self.zq, acc, rhs);
        }
        Ok(acc)
    }

    fn unary(&self, cur: &mut Cursor) -> Result<DRWExpr, ParseError> {
        if cur.eat('-') {
            let x = self.unary(cur)?;
            return Ok(self.negate(x));
        }
        if let Tok::Ident(name) = cur.peek().clone() {
            let op: Option<fn(DRWExpr) -> DRWExpr> = match name.as_str() {
                "F" => Some(DRWExpr::f),
                "V" => Some(DRWExpr::v),
                "d" => Some(DRWExpr::d),
                _ => None,
            };
            if let Some(op) = op {
                cur.next();
                return Ok(op(self.unary(cur)?));
            }
        }
        self.power(cur)
    }

    fn power(&self, cur: &mut Cursor) -> Result<DRWExpr, ParseError> {
        let (line, col) = (cur.toks[cur.pos].line, cur.toks[cur.pos].col);
        let base = self.primary(cur)?;
        if !cur.eat('^') {
            return Ok(base);
        }
        let e = signed_int(cur)?;
        let fail = |msg: String| ParseError { line, col, msg };
        match base {
            DRWExpr::Teich(f) => Ok(DRWExpr::Teich(self.poly_pow(&f, e).map_err(fail)?)),
            DRWExpr::Scalar(c) if e >= 0 => Ok(DRWExpr::Scalar(self.zq.pow(&c, e as u64))),
            _ if e < 0 => Err(fail("negative powers apply only to Teichmüller lifts of monomials".into())),
            _ if e == 0 => Ok(self.scalar_int(1)),
            b => Ok((1..e).fold(b.clone(), |acc, _| DRWExpr::mul(acc, b.clone()))),
        }
    }

    fn bracket_poly(&self, cur: &mut Cursor) -> Result<LPoly, ParseError> {
        let close = if cur.eat('[') {
            ']'
        } else if cur.eat('(') {
            ')'
        } else {
            return cur.err("expected '[' or '(' after dlog");
        };
        let f = self.poly_sum(cur)?;
        cur.expect(close)?;
        Ok(f)
    }

    fn primary(&self, cur: &mut Cursor) -> Result<DRWExpr, ParseError> {
        match cur.peek().clone() {
            Tok::Int(v) => {
                cur.next();
                let v = v % self.zq.modulus();
                Ok(DRWExpr::Scalar(self.zq.from_int(v as i64)))
            }
            Tok::Ident(name) if name == "theta" => {
                if self.zq.degree() == 1 {
                    return cur.err("theta needs a proper extension of F_p");
                }
                cur.next();
                Ok(DRWExpr::Scalar(self.zq.from_theta_coords(&[0, 1]).expect("degree ≥ 2")))
            }
            Tok::Ident(name) if name == "dlog" => {
                cur.next();
                let f = self.bracket_poly(cur)?;
                Ok(DRWExpr::Dlog(f))
            }
            Tok::Ident(name) => cur.err(format!("unexpected '{name}' (variables must appear inside [ ])")),
            Tok::Sym('[') => {
                cur.next();
                let f = self.poly_sum(cur)?;
                cur.expect(']')?;
                Ok(DRWExpr::Teich(f))
            }
            Tok::Sym('(') => {
                cur.next();
                let e = self.sum(cur)?;
                cur.expect(')')?;
                Ok(e)
            }
            t => cur.err(format!("expected an expression, found {}", describe(&t))),
        }
    }

    pub fn parse_expr(&self, input: &str) -> Result<DRWExpr, ParseError> {
        let toks = lex(input)?;
        let mut cur = Cursor { toks: &toks, pos: 0 };
        let e = self.sum(&mut cur)?;
        cur.finish()?;
        Ok(e)
    }

    // ---- rational functions and symbols (one variable) ----

    fn to_rational(&self, k: &FunctionField, f: &LPoly) -> RationalFunction {
        let low = f.terms.keys().map(|e| e[0]).min().unwrap_or(0).min(0);
        let deg = f.terms.keys().map(|e| e[0] - low).max().unwrap_or(0);
        let mut c = vec![FqElem::ZERO; (deg + 1) as usize];
        for (e, v) in &f.terms {
            c[(e[0] - low) as usize] = *v;
        }
        let num = k.ring.from_coeffs(c);
        let den = k.ring.pow(&k.ring.x(), (-low) as u64);
        k.make(num, den).expect("monomial denominator")
    }

    fn rational(&self, k: &FunctionField, cur: &mut Cursor) -> Result<RationalFunction, ParseError> {
        let num = self.to_rational(k, &self.poly_sum(cur)?);
        if !cur.eat('/') {
            return Ok(num);
        }
        let (line, col) = (cur.toks[cur.pos].line, cur.toks[cur.pos].col);
        let den = self.to_rational(k, &self.poly_sum(cur)?);
        k.div(&num, &den).map_err(|e| ParseError { line, col, msg: e.to_string() })
    }

    pub fn parse_rational(&self, k: &FunctionField, input: &str) -> Result<RationalFunction, ParseError> {
        self.check_one_variable()?;
        let toks = lex(input)?;
        let mut cur = Cursor { toks: &toks, pos: 0 };
        let f = self.rational(k, &mut cur)?;
        cur.finish()?;
        Ok(f)
    }

    fn check_one_variable(&self) -> Result<(), ParseError> {
        if self.ring.nvars() != 1 {
            return Err(ParseError { line: 1, col: 1, msg: "symbols need exactly one declared variable".into() });
        }
        Ok(())
    }

    fn symbol_term(&self, k: &FunctionField, cur: &mut Cursor, sign: i64) -> Result<(i64, Vec<RationalFunction>), ParseError> {
        let mut c = sign;
        if cur.eat('-') {
            c = -c;
        }
        if let Tok::Int(v) = cur.peek().clone() {
            cur.next();
            cur.expect('*')?;
            c *= v as i64;
        }
        cur.expect('{')?;
        let mut entries = vec![self.rational(k, cur)?];
        while cur.eat(',') {
            entries.push(self.rational(k, cur)?);
        }
        cur.expect('}')?;
        Ok((c, entries))
    }

    pub fn parse_symbol(&self, k: &FunctionField, input: &str) -> Result<FunctionSymbol, ParseError> {
        self.check_one_variable()?;
        let toks = lex(input)?;
        let mut cur = Cursor { toks: &toks, pos: 0 };
        let mut terms = vec![self.symbol_term(k, &mut cur, 1)?];
        loop {
            let sign = if cur.eat('+') {
                1
            } else if cur.eat('-') {
                -1
            } else {
                break;
            };
            let (line, col) = (cur.toks[cur.pos].line, cur.toks[cur.pos].col);
            let t = self.symbol_term(k, &mut cur, sign)?;
            if t.1.len() != terms[0].1.len() {
                return Err(ParseError { line, col, msg: "symbols of different degrees in one sum".into() });
            }
            terms.push(t);
        }
        cur.finish()?;
        Ok(MilnorSymbol { degree: terms[0].1.len(), terms })
    }

    // ---- printing ----

    /// Balanced representative of an integer in ℤ/p^M.
    fn balanced(&self, v: u64) -> i128 {
        let m = self.zq.modulus();
        if v > m / 2 {
            v as i128 - m as i128
        } else {
            v as i128
        }
    }

    pub fn print_scalar(&self, c: &ZqElem) -> String {
        if let Some(v) = self.zq.as_integer(c) {
            return self.balanced(v).to_string();
        }
        let mut parts = Vec::new();
        for (j, &v) in self.zq.theta_coords(c).iter().enumerate() {
            let b = self.balanced(v);
            if b == 0 {
                continue;
            }
            let mono = match j {
                0 => String::new(),
                1 => "theta".into(),
                _ => format!("theta^{j}"),
            };
            parts.push(match (j, b) {
                (0, _) => b.to_string(),
                (_, 1) => mono,
                _ => format!("{b}*{mono}"),
            });
        }
        format!("({})", parts.join(" + "))
    }

    fn print_field(&self, c: &FqElem) -> (String, bool) {
        let f = self.field();
        if f.degree() == 1 {
            return (f.index(c).to_string(), false);
        }
        let mut parts = Vec::new();
        for (k, &v) in c.coeffs().iter().enumerate().take(f.degree() as usize) {
            if v == 0 {
                continue;
            }
            let mono = match k {
                0 => String::new(),
                1 => "theta".into(),
                _ => format!("theta^{k}"),
            };
            parts.push(match (k, v) {
                (0, _) => v.to_string(),
                (_, 1) => mono,
                _ => format!("{v}*{mono}"),
            });
        }
        if parts.is_empty() {
            return ("0".into(), false);
        }
        let compound = parts.len() > 1;
        (parts.join("+"), compound)
    }

    pub fn print_poly(&self, f: &LPoly) -> String {
        if f.is_zero() {
            return "0".into();
        }
        let r = &self.ring;
        let mut parts = Vec::new();
        for (e, c) in &f.terms {
            let mut mono = Vec::new();
            for (i, &k) in e.iter().enumerate() {
                match k {
                    0 => {}
                    1 => mono.push(r.vars[i].name.clone()),
                    _ => mono.push(format!("{}^{}", r.vars[i].name, k)),
                }
            }
            let (cs, compound) = self.print_field(c);
            parts.push(if mono.is_empty() {
                cs
            } else if *c == self.field().one() {
                mono.join("*")
            } else if compound {
                format!("({cs})*{}", mono.join("*"))
            } else {
                format!("{cs}*{}", mono.join("*"))
            });
        }
        parts.join("+")
    }

    pub fn print_expr(&self, e: &DRWExpr) -> String {
        match e {
            DRWExpr::Add(xs) if xs.is_empty() => "0".into(),
            DRWExpr::Add(xs) => xs.iter().map(|x| self.print_term(x)).collect::<Vec<_>>().join(" + "),
            _ => self.print_term(e),
        }
    }

    fn print_term(&self, e: &DRWExpr) -> String {
        match e {
            DRWExpr::Mul(a, b) => format!("{}*{}", self.print_term(a), self.print_unary(b)),
            _ => self.print_unary(e),
        }
    }

    fn print_unary(&self, e: &DRWExpr) -> String {
        match e {
            DRWExpr::Scalar(c) => self.print_scalar(c),
            DRWExpr::Teich(f) => format!("[{}]", self.print_poly(f)),
            DRWExpr::Dlog(f) => format!("dlog({})", self.print_poly(f)),
            DRWExpr::F(x) => format!("F({})", self.print_expr(x)),
            DRWExpr::V(x) => format!("V({})", self.print_expr(x)),
            DRWExpr::D(x) => format!("d({})", self.print_expr(x)),
            DRWExpr::Add(_) | DRWExpr::Mul(..) => format!("({})", self.print_expr(e)),
        }
    }

    fn print_upoly(&self, f: &UPoly) -> String {
        let r = &self.ring;
        let mut l = r.zero();
        for (i, c) in f.0.iter().enumerate() {
            if !c.is_zero() {
                l = r.add(&l, &r.monomial(*c, vec![i as i64]).expect("valid exponent"));
            }
        }
        self.print_poly(&l)
    }

    pub fn print_rational(&self, k: &FunctionField, f: &RationalFunction) -> String {
        let n = self.print_upoly(&f.num);
        if f.den == k.ring.one() {
            return format!("({n})");
        }
        format!("({n})/({})", self.print_upoly(&f.den))
    }

    pub fn print_symbol(&self, k: &FunctionField, s: &FunctionSymbol) -> String {
        let mut out = String::new();
        for (i, (c, entries)) in s.terms.iter().enumerate() {
            let body: Vec<String> = entries.iter().map(|f| self.print_rational(k, f)).collect();
            let body = format!("{{{}}}", body.join(", "));
            let (sign, mag) = if *c < 0 { ("-", -c) } else { ("+", *c) };
            if i == 0 {
                if sign == "-" {
                    out.push('-');
                }
            } else {
                out.push_str(&format!(" {sign} "));
            }
            if mag != 1 {
                out.push_str(&format!("{mag}*"));
            }
            out.push_str(&body);
        }
        out
    }
}

/// Product with scalar folding.
pub fn fold_mul(zq: &Zq, a: DRWExpr, b: DRWExpr) -> DRWExpr {
    match (&a, &b) {
        (DRWExpr::Scalar(x), DRWExpr::Scalar(y)) => DRWExpr::Scalar(zq.mul(x, y)),
        _ => DRWExpr::mul(a, b),
    }
}

/// Flattened sum; an all-scalar sum folds to one scalar.
pub fn fold_add(zq: &Zq, parts: Vec<DRWExpr>) -> DRWExpr {
    let mut flat = Vec::new();
    for p in parts {
        match p {
            DRWExpr::Add(xs) => flat.extend(xs),
            x => flat.push(x),
        }
    }
    if flat.iter().all(|x| matches!(x, DRWExpr::Scalar(_))) {
        let s = flat.iter().fold(zq.zero(), |acc, x| match x {
            DRWExpr::Scalar(c) => zq.add(&acc, c),
            _ => acc,
        });
        return DRWExpr::Scalar(s);
    }
    if flat.len() == 1 {
        return flat.pop().expect("one part");
    }
    DRWExpr::Add(flat)
}
