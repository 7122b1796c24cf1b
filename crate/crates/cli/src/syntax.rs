//! The session language: lexer, parser and canonical printer.
//!
//! Statements end with `;`, `#` starts a comment. Printing a parsed session
//! and parsing the result gives back an equal session.

use std::fmt;

use arcsub_core::arith::rational::{exp, parse_rational};
use arcsub_core::{
    Arc, Exponent, MultiPoly, PuiseuxSeries, Rational, RationalFn, RealAlgebraic, UniPoly,
};
use num_traits::{One, Zero};

/// Words that cannot be used as variable or object names.
const RESERVED: &[&str] = &[
    "t",
    "T",
    "Y",
    "O",
    "root",
    "vars",
    "variety",
    "arc",
    "relation",
    "set",
    "along",
    "at",
    "budget",
    "order",
    "arcs",
    "via",
    "dirs",
    "limit",
    "lift",
    "pointlift",
    "witness",
    "branches",
    "verify",
    "lojprobe",
    "slice",
    "singular",
    "zerocheck",
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "line {}, column {}: {}",
            self.line, self.col, self.message
        )
    }
}

impl std::error::Error for Diagnostic {}

type PResult<T> = std::result::Result<T, Diagnostic>;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Int(String),
    Sym(char),
    Eof,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(text: &str) -> PResult<Vec<Token>> {
    let text = text.replace("\r\n", "\n").replace('\r', "\n");
    let mut out = Vec::new();
    let (mut line, mut col) = (1, 1);
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        let (l0, c0) = (line, col);
        if c == '\n' {
            chars.next();
            line += 1;
            col = 1;
        } else if c.is_ascii_whitespace() {
            chars.next();
            col += 1;
        } else if c == '#' {
            while chars.peek().is_some_and(|&c| c != '\n') {
                chars.next();
            }
        } else if c.is_ascii_alphabetic() || c == '_' {
            let mut s = String::new();
            while let Some(&c) = chars
                .peek()
                .filter(|c| c.is_ascii_alphanumeric() || **c == '_')
            {
                s.push(c);
                chars.next();
                col += 1;
            }
            out.push(Token {
                tok: Tok::Ident(s),
                line: l0,
                col: c0,
            });
        } else if c.is_ascii_digit() {
            let mut s = String::new();
            while let Some(&c) = chars.peek().filter(|c| c.is_ascii_digit()) {
                s.push(c);
                chars.next();
                col += 1;
            }
            out.push(Token {
                tok: Tok::Int(s),
                line: l0,
                col: c0,
            });
        } else if "+-*/^()[],;=".contains(c) {
            chars.next();
            col += 1;
            out.push(Token {
                tok: Tok::Sym(c),
                line: l0,
                col: c0,
            });
        } else {
            return Err(Diagnostic {
                line,
                col,
                message: format!("unexpected character {c:?}"),
            });
        }
    }
    out.push(Token {
        tok: Tok::Eof,
        line,
        col,
    });
    Ok(out)
}

/// Statement-level option changes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Setting {
    Order(i64),
    Budget(usize),
    TowerDepth(usize),
}

#[derive(Clone, Debug, PartialEq)]
pub enum ArcRef {
    Named(String),
    Inline(Vec<PuiseuxSeries>),
}

#[derive(Clone, Debug, PartialEq)]
pub enum RelRef {
    Named(String),
    /// A polynomial in the session variables and `T`, `T` last.
    Inline(MultiPoly),
}

#[derive(Clone, Debug, PartialEq)]
pub enum Query {
    Limit {
        f: RationalFn,
        arc: ArcRef,
    },
    Lift {
        rel: RelRef,
        arc: ArcRef,
    },
    PointLift {
        rel: RelRef,
        point: Vec<RealAlgebraic>,
    },
    Witness {
        f: RationalFn,
        point: Vec<RealAlgebraic>,
        budget: Option<usize>,
    },
    /// A polynomial in `t` (index 0) and `Y` (index 1).
    Branches {
        poly: MultiPoly,
        order: Option<i64>,
    },
    Verify {
        arc: ArcRef,
    },
    LojProbe {
        f: RationalFn,
        point: Vec<RealAlgebraic>,
        arcs: Vec<ArcRef>,
        via: Option<RelRef>,
    },
    Slice {
        point: Vec<RealAlgebraic>,
        d1: Vec<i64>,
        d2: Vec<i64>,
    },
    Singular {
        point: Vec<RealAlgebraic>,
    },
    ZeroCheck {
        f: RationalFn,
        arcs: Vec<ArcRef>,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub enum Item {
    Arc {
        name: String,
        comps: Vec<PuiseuxSeries>,
    },
    Relation {
        name: String,
        poly: MultiPoly,
    },
    Set(Setting),
    Query(Query),
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Session {
    pub vars: Vec<String>,
    /// Defining equations; empty means the whole affine space.
    pub variety: Vec<MultiPoly>,
    pub items: Vec<Item>,
}

impl Session {
    pub fn queries(&self) -> impl Iterator<Item = &Query> {
        self.items.iter().filter_map(|i| match i {
            Item::Query(q) => Some(q),
            _ => None,
        })
    }

    pub fn arc(&self, name: &str) -> Option<&[PuiseuxSeries]> {
        self.items.iter().find_map(|i| match i {
            Item::Arc { name: n, comps } if n == name => Some(comps.as_slice()),
            _ => None,
        })
    }

    pub fn relation(&self, name: &str) -> Option<&MultiPoly> {
        self.items.iter().find_map(|i| match i {
            Item::Relation { name: n, poly } if n == name => Some(poly),
            _ => None,
        })
    }

    fn rel_names(&self) -> Vec<String> {
        let mut v = self.vars.clone();
        v.push("T".into());
        v
    }

    /// A relation printed with `T` leading, highest power first.
    pub fn fmt_relation(&self, p: &MultiPoly) -> String {
        fmt_leading(p, &self.rel_names())
    }
}

/// Print with the last variable leading, highest power first.
fn fmt_leading(p: &MultiPoly, names: &[String]) -> String {
    let n = names.len() - 1;
    let moved = p.terms().map(|(e, c)| {
        let mut e2 = vec![e[n]];
        e2.extend_from_slice(&e[..n]);
        (e2, c.clone())
    });
    let q = MultiPoly::from_terms(n + 1, moved).expect("same arity");
    let mut order = vec![names[n].clone()];
    order.extend(names[..n].iter().cloned());
    q.fmt_with(&order)
}

/// Parse a session, resolving every name.
pub fn parse_session(text: &str) -> PResult<Session> {
    let toks = lex(text)?;
    let mut p = Parser {
        toks,
        pos: 0,
        session: Session::default(),
        saw_vars: false,
        saw_variety: false,
    };
    p.session_body()?;
    Ok(p.session)
}

/// Numerator and denominator while parsing rational expressions.
#[derive(Clone)]
struct Frac {
    num: MultiPoly,
    den: MultiPoly,
}

impl Frac {
    fn poly(p: MultiPoly) -> Self {
        let n = p.arity();
        Frac {
            num: p,
            den: MultiPoly::one(n),
        }
    }
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    session: Session,
    saw_vars: bool,
    saw_variety: bool,
}

fn names(s: &[&str]) -> Vec<String> {
    s.iter().map(|x| x.to_string()).collect()
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn next(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn err_at<T>(&self, tok: &Token, message: impl Into<String>) -> PResult<T> {
        Err(Diagnostic {
            line: tok.line,
            col: tok.col,
            message: message.into(),
        })
    }

    fn err<T>(&self, message: impl Into<String>) -> PResult<T> {
        self.err_at(self.peek(), message)
    }

    fn describe(tok: &Tok) -> String {
        match tok {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Int(s) => format!("`{s}`"),
            Tok::Sym(c) => format!("`{c}`"),
            Tok::Eof => "end of input".into(),
        }
    }

    fn is_sym(&self, c: char) -> bool {
        self.peek().tok == Tok::Sym(c)
    }

    fn is_word(&self, w: &str) -> bool {
        matches!(&self.peek().tok, Tok::Ident(s) if s == w)
    }

    fn eat_sym(&mut self, c: char) -> bool {
        let hit = self.is_sym(c);
        if hit {
            self.next();
        }
        hit
    }

    fn expect_sym(&mut self, c: char) -> PResult<()> {
        if self.eat_sym(c) {
            Ok(())
        } else {
            self.err(format!(
                "expected `{c}`, found {}",
                Self::describe(&self.peek().tok)
            ))
        }
    }

    fn expect_word(&mut self, w: &str) -> PResult<()> {
        if self.is_word(w) {
            self.next();
            Ok(())
        } else {
            self.err(format!(
                "expected `{w}`, found {}",
                Self::describe(&self.peek().tok)
            ))
        }
    }

    fn ident(&mut self) -> PResult<(String, Token)> {
        let tok = self.next();
        match &tok.tok {
            Tok::Ident(s) => Ok((s.clone(), tok.clone())),
            other => self.err_at(
                &tok,
                format!("expected a name, found {}", Self::describe(other)),
            ),
        }
    }

    fn uint(&mut self) -> PResult<u64> {
        let tok = self.next();
        match &tok.tok {
            Tok::Int(s) => s
                .parse()
                .or_else(|_| self.err_at(&tok, format!("number `{s}` is too large"))),
            other => self.err_at(
                &tok,
                format!("expected a number, found {}", Self::describe(other)),
            ),
        }
    }

    fn session_body(&mut self) -> PResult<()> {
        while self.peek().tok != Tok::Eof {
            self.statement()?;
            self.expect_sym(';')?;
        }
        Ok(())
    }

    fn need_vars(&self) -> PResult<()> {
        if self.saw_vars {
            Ok(())
        } else {
            self.err("declare variables with `vars` first")
        }
    }

    fn fresh_name(&mut self) -> PResult<String> {
        let (name, tok) = self.ident()?;
        if RESERVED.contains(&name.as_str()) || self.session.vars.contains(&name) {
            return self.err_at(&tok, format!("`{name}` is reserved or already a variable"));
        }
        if self.session.arc(&name).is_some() || self.session.relation(&name).is_some() {
            return self.err_at(&tok, format!("`{name}` is already declared"));
        }
        Ok(name)
    }

    fn statement(&mut self) -> PResult<()> {
        let (word, tok) = self.ident()?;
        match word.as_str() {
            "vars" => {
                if self.saw_vars {
                    return self.err_at(&tok, "variables are already declared");
                }
                while let Tok::Ident(_) = self.peek().tok {
                    let (v, vt) = self.ident()?;
                    if RESERVED.contains(&v.as_str()) {
                        return self.err_at(&vt, format!("`{v}` is reserved"));
                    }
                    if self.session.vars.contains(&v) {
                        return self.err_at(&vt, format!("variable `{v}` declared twice"));
                    }
                    self.session.vars.push(v);
                    self.eat_sym(',');
                }
                if self.session.vars.is_empty() {
                    return self.err("expected at least one variable");
                }
                self.saw_vars = true;
            }
            "variety" => {
                self.need_vars()?;
                if self.saw_variety {
                    return self.err_at(&tok, "a session has exactly one variety");
                }
                let vars = self.session.vars.clone();
                loop {
                    let p = self.poly(&vars)?;
                    if !p.is_zero() {
                        self.session.variety.push(p);
                    }
                    if !self.eat_sym(',') {
                        break;
                    }
                }
                self.saw_variety = true;
            }
            "arc" => {
                self.need_vars()?;
                let name = self.fresh_name()?;
                self.expect_sym('=')?;
                let comps = self.arc_literal()?;
                self.session.items.push(Item::Arc { name, comps });
            }
            "relation" => {
                self.need_vars()?;
                let name = self.fresh_name()?;
                self.expect_sym('=')?;
                let rn = self.session.rel_names();
                let poly = self.poly(&rn)?;
                self.session.items.push(Item::Relation { name, poly });
            }
            "set" => {
                let (key, kt) = self.ident()?;
                let v = self.uint()?;
                let s = match key.as_str() {
                    "order" if v > 0 && v <= 4096 => Setting::Order(v as i64),
                    "budget" => Setting::Budget(v as usize),
                    "towerdepth" => Setting::TowerDepth(v as usize),
                    "order" => return self.err_at(&kt, "order must lie in 1..=4096"),
                    _ => return self.err_at(&kt, format!("unknown setting `{key}`")),
                };
                self.session.items.push(Item::Set(s));
            }
            _ => {
                self.pos -= 1;
                let q = self.query()?;
                self.session.items.push(Item::Query(q));
            }
        }
        Ok(())
    }

    fn query(&mut self) -> PResult<Query> {
        let (word, tok) = self.ident()?;
        if word != "branches" {
            self.need_vars()?;
        }
        let q = match word.as_str() {
            "limit" => {
                let f = self.function()?;
                self.expect_word("along")?;
                Query::Limit {
                    f,
                    arc: self.arc_ref()?,
                }
            }
            "lift" => {
                let rel = self.rel_ref()?;
                self.expect_word("along")?;
                Query::Lift {
                    rel,
                    arc: self.arc_ref()?,
                }
            }
            "pointlift" => {
                let rel = self.rel_ref()?;
                self.expect_word("at")?;
                Query::PointLift {
                    rel,
                    point: self.point()?,
                }
            }
            "witness" => {
                let f = self.function()?;
                self.expect_word("at")?;
                let point = self.point()?;
                let budget = if self.is_word("budget") {
                    self.next();
                    Some(self.uint()? as usize)
                } else {
                    None
                };
                Query::Witness { f, point, budget }
            }
            "branches" => {
                let poly = self.poly(&names(&["t", "Y"]))?;
                let order = if self.is_word("order") {
                    self.next();
                    let t = self.peek().clone();
                    let n = self.uint()?;
                    if n == 0 || n > 4096 {
                        return self.err_at(&t, "order must lie in 1..=4096");
                    }
                    Some(n as i64)
                } else {
                    None
                };
                Query::Branches { poly, order }
            }
            "verify" => Query::Verify {
                arc: self.arc_ref()?,
            },
            "lojprobe" => {
                let f = self.function()?;
                self.expect_word("at")?;
                let point = self.point()?;
                self.expect_word("arcs")?;
                let arcs = self.arc_list()?;
                let via = if self.is_word("via") {
                    self.next();
                    Some(self.rel_ref()?)
                } else {
                    None
                };
                Query::LojProbe {
                    f,
                    point,
                    arcs,
                    via,
                }
            }
            "slice" => {
                self.expect_word("at")?;
                let point = self.point()?;
                self.expect_word("dirs")?;
                let d1 = self.int_vector()?;
                let d2 = self.int_vector()?;
                Query::Slice { point, d1, d2 }
            }
            "singular" => {
                self.expect_word("at")?;
                Query::Singular {
                    point: self.point()?,
                }
            }
            "zerocheck" => {
                let f = self.function()?;
                self.expect_word("arcs")?;
                Query::ZeroCheck {
                    f,
                    arcs: self.arc_list()?,
                }
            }
            _ => return self.err_at(&tok, format!("unknown statement `{word}`")),
        };
        Ok(q)
    }

    fn arc_list(&mut self) -> PResult<Vec<ArcRef>> {
        let mut arcs = vec![self.arc_ref()?];
        while self.eat_sym(',') {
            arcs.push(self.arc_ref()?);
        }
        Ok(arcs)
    }

    fn arc_ref(&mut self) -> PResult<ArcRef> {
        if self.is_sym('(') {
            return Ok(ArcRef::Inline(self.arc_literal()?));
        }
        let (name, tok) = self.ident()?;
        if self.session.arc(&name).is_none() {
            return self.err_at(&tok, format!("undeclared arc `{name}`"));
        }
        Ok(ArcRef::Named(name))
    }

    fn rel_ref(&mut self) -> PResult<RelRef> {
        if let Tok::Ident(name) = &self.peek().tok {
            if self.session.relation(name).is_some() {
                let name = name.clone();
                self.next();
                return Ok(RelRef::Named(name));
            }
        }
        let rn = self.session.rel_names();
        Ok(RelRef::Inline(self.poly(&rn)?))
    }

    fn int_vector(&mut self) -> PResult<Vec<i64>> {
        let start = self.peek().clone();
        self.expect_sym('(')?;
        let mut out = Vec::new();
        loop {
            let neg = self.eat_sym('-');
            let v = self.uint()? as i64;
            out.push(if neg { -v } else { v });
            if !self.eat_sym(',') {
                break;
            }
        }
        self.expect_sym(')')?;
        if out.len() != self.session.vars.len() {
            return self.err_at(
                &start,
                format!(
                    "arity mismatch: expected {} coordinates, found {}",
                    self.session.vars.len(),
                    out.len()
                ),
            );
        }
        Ok(out)
    }

    fn point(&mut self) -> PResult<Vec<RealAlgebraic>> {
        let start = self.peek().clone();
        self.expect_sym('(')?;
        let mut out = Vec::new();
        loop {
            let t = self.peek().clone();
            let s = self.series()?;
            let is_const = s.is_exact() && s.terms().iter().all(|(e, _)| e.is_zero());
            if !is_const {
                return self.err_at(&t, "point coordinates must be constants");
            }
            out.push(s.constant_term());
            if !self.eat_sym(',') {
                break;
            }
        }
        self.expect_sym(')')?;
        if out.len() != self.session.vars.len() {
            return self.err_at(
                &start,
                format!(
                    "arity mismatch: expected {} coordinates, found {}",
                    self.session.vars.len(),
                    out.len()
                ),
            );
        }
        Ok(out)
    }

    fn arc_literal(&mut self) -> PResult<Vec<PuiseuxSeries>> {
        let start = self.peek().clone();
        self.expect_sym('(')?;
        let mut out = Vec::new();
        loop {
            out.push(self.series()?);
            if !self.eat_sym(',') {
                break;
            }
        }
        self.expect_sym(')')?;
        if out.len() != self.session.vars.len() {
            return self.err_at(
                &start,
                format!(
                    "arity mismatch: expected {} components, found {}",
                    self.session.vars.len(),
                    out.len()
                ),
            );
        }
        if let Err(e) = Arc::new(out.clone()) {
            return self.err_at(&start, e.to_string());
        }
        Ok(out)
    }

    /// `p/q`, or a polynomial (denominator 1).
    fn function(&mut self) -> PResult<RationalFn> {
        let start = self.peek().clone();
        let vars = self.session.vars.clone();
        let f = self.frac(&vars)?;
        match RationalFn::new(f.num, f.den) {
            Ok(f) => Ok(f),
            Err(e) => self.err_at(&start, e.to_string()),
        }
    }

    fn poly(&mut self, vars: &[String]) -> PResult<MultiPoly> {
        let start = self.peek().clone();
        let f = self.frac(vars)?;
        match f.den.as_constant() {
            Some(c) if !c.is_zero() => Ok(f.num.scale(&(Rational::one() / c))),
            _ => self.err_at(&start, "expected a polynomial, found a quotient"),
        }
    }

    fn frac(&mut self, vars: &[String]) -> PResult<Frac> {
        let neg = if self.eat_sym('-') {
            true
        } else {
            self.eat_sym('+');
            false
        };
        let mut acc = self.frac_term(vars)?;
        if neg {
            acc.num = acc.num.neg();
        }
        loop {
            let sub = if self.eat_sym('+') {
                false
            } else if self.eat_sym('-') {
                true
            } else {
                break;
            };
            let r = self.frac_term(vars)?;
            let num = if acc.den == r.den {
                if sub {
                    acc.num.sub(&r.num)
                } else {
                    acc.num.add(&r.num)
                }
            } else {
                let (a, b) = (acc.num.mul(&r.den), r.num.mul(&acc.den));
                let den = acc.den.mul(&r.den);
                acc.den = den;
                if sub {
                    a.sub(&b)
                } else {
                    a.add(&b)
                }
            };
            acc.num = num;
        }
        Ok(acc)
    }

    fn frac_term(&mut self, vars: &[String]) -> PResult<Frac> {
        let mut acc = self.frac_power(vars)?;
        loop {
            if self.eat_sym('*') {
                let r = self.frac_power(vars)?;
                acc = Frac {
                    num: acc.num.mul(&r.num),
                    den: acc.den.mul(&r.den),
                };
            } else if self.is_sym('/') {
                let t = self.next();
                let r = self.frac_power(vars)?;
                if r.num.is_zero() {
                    return self.err_at(&t, "division by zero");
                }
                acc = match r.num.as_constant() {
                    Some(c) => Frac {
                        num: acc.num.mul(&r.den).scale(&(Rational::one() / c)),
                        den: acc.den,
                    },
                    None => Frac {
                        num: acc.num.mul(&r.den),
                        den: acc.den.mul(&r.num),
                    },
                };
            } else {
                return Ok(acc);
            }
        }
    }

    fn frac_power(&mut self, vars: &[String]) -> PResult<Frac> {
        let base = self.frac_atom(vars)?;
        if !self.is_sym('^') {
            return Ok(base);
        }
        self.next();
        let t = self.peek().clone();
        match &t.tok {
            Tok::Int(_) => {
                let k = self.uint()?;
                if k > 1000 {
                    return self.err_at(&t, "exponent too large");
                }
                Ok(Frac {
                    num: base.num.pow(k as u32),
                    den: base.den.pow(k as u32),
                })
            }
            other => self.err_at(
                &t,
                format!(
                    "malformed exponent {}: expected a nonnegative integer",
                    Self::describe(other)
                ),
            ),
        }
    }

    fn frac_atom(&mut self, vars: &[String]) -> PResult<Frac> {
        let n = vars.len();
        let tok = self.next();
        match &tok.tok {
            Tok::Int(s) => Ok(Frac::poly(MultiPoly::constant(
                n,
                parse_rational(s).expect("digits"),
            ))),
            Tok::Ident(name) => match vars.iter().position(|v| v == name) {
                Some(i) => Ok(Frac::poly(MultiPoly::var(n, i))),
                None => self.err_at(&tok, format!("undeclared name `{name}`")),
            },
            Tok::Sym('(') => {
                let inner = self.frac(vars)?;
                self.expect_sym(')')?;
                Ok(inner)
            }
            other => self.err_at(
                &tok,
                format!("expected an expression, found {}", Self::describe(other)),
            ),
        }
    }

    /// A Puiseux series in `t`.
    fn series(&mut self) -> PResult<PuiseuxSeries> {
        let neg = if self.eat_sym('-') {
            true
        } else {
            self.eat_sym('+');
            false
        };
        let mut acc = self.series_term()?;
        if neg {
            acc = acc.neg();
        }
        loop {
            if self.eat_sym('+') {
                acc = acc.add(&self.series_term()?);
            } else if self.eat_sym('-') {
                acc = acc.sub(&self.series_term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn series_term(&mut self) -> PResult<PuiseuxSeries> {
        let mut acc = self.series_factor()?;
        loop {
            if self.eat_sym('*') {
                acc = acc.mul(&self.series_factor()?);
            } else if self.is_sym('/') {
                let t = self.next();
                let d = self.series_factor()?;
                let c = match (d.is_exact(), d.terms()) {
                    (true, [(e, c)]) if e.is_zero() => c.clone(),
                    _ => return self.err_at(&t, "series may only be divided by nonzero constants"),
                };
                acc = acc.scale(&c.inv().expect("nonzero"));
            } else {
                return Ok(acc);
            }
        }
    }

    fn series_factor(&mut self) -> PResult<PuiseuxSeries> {
        let tok = self.next();
        match &tok.tok {
            Tok::Int(s) => Ok(PuiseuxSeries::from_rational(
                parse_rational(s).expect("digits"),
            )),
            Tok::Sym('(') => {
                let inner = self.series()?;
                self.expect_sym(')')?;
                Ok(inner)
            }
            Tok::Ident(w) if w == "t" => {
                let e = self.opt_exponent()?;
                Ok(PuiseuxSeries::monomial(RealAlgebraic::from_int(1), e))
            }
            Tok::Ident(w) if w == "O" => {
                self.expect_sym('(')?;
                let e = if self.is_word("t") {
                    self.next();
                    self.opt_exponent()?
                } else {
                    let t = self.peek().clone();
                    if self.uint()? != 1 {
                        return self.err_at(&t, "expected `t` or `1` inside O(...)");
                    }
                    exp(0, 1)
                };
                self.expect_sym(')')?;
                Ok(PuiseuxSeries::big_o(e))
            }
            Tok::Ident(w) if w == "root" => Ok(PuiseuxSeries::constant(self.root_literal(&tok)?)),
            Tok::Ident(name) => self.err_at(
                &tok,
                format!("undeclared name `{name}` (arc components use `t`)"),
            ),
            other => self.err_at(
                &tok,
                format!("expected a series term, found {}", Self::describe(other)),
            ),
        }
    }

    /// `root(<poly in T>, [lo, hi])`, the unique root in the open interval.
    fn root_literal(&mut self, at: &Token) -> PResult<RealAlgebraic> {
        self.expect_sym('(')?;
        let p = self.poly(&names(&["T"]))?;
        self.expect_sym(',')?;
        self.expect_sym('[')?;
        let lo = self.signed_rational()?;
        self.expect_sym(',')?;
        let hi = self.signed_rational()?;
        self.expect_sym(']')?;
        self.expect_sym(')')?;
        let coeffs: Vec<Rational> = (0..=p.degree_in(0))
            .map(|k| {
                p.terms()
                    .filter(|(e, _)| e[0] == k)
                    .map(|(_, c)| c.clone())
                    .next()
                    .unwrap_or_else(Rational::zero)
            })
            .collect();
        match RealAlgebraic::from_root(&UniPoly::new(coeffs), &lo, &hi) {
            Ok(r) => Ok(r),
            Err(e) => self.err_at(at, e.to_string()),
        }
    }

    fn signed_rational(&mut self) -> PResult<Rational> {
        let neg = self.eat_sym('-');
        let n = self.next();
        let mut r = match &n.tok {
            Tok::Int(s) => parse_rational(s).expect("digits"),
            other => {
                return self.err_at(
                    &n,
                    format!("expected a number, found {}", Self::describe(other)),
                )
            }
        };
        if self.eat_sym('/') {
            let d = self.next();
            match &d.tok {
                Tok::Int(s) if s.trim_start_matches('0').is_empty() => {
                    return self.err_at(&d, "zero denominator")
                }
                Tok::Int(s) => r /= parse_rational(s).expect("digits"),
                other => {
                    return self.err_at(
                        &d,
                        format!("expected a number, found {}", Self::describe(other)),
                    )
                }
            }
        }
        Ok(if neg { -r } else { r })
    }

    /// `^k`, `^-k` or `^(p/q)`; absent means exponent 1.
    fn opt_exponent(&mut self) -> PResult<Exponent> {
        if !self.eat_sym('^') {
            return Ok(exp(1, 1));
        }
        let start = self.peek().clone();
        let bad = |p: &Self, msg: &str| {
            p.err_at::<Exponent>(&start, format!("malformed exponent: {msg}"))
        };
        let paren = self.eat_sym('(');
        let neg = self.eat_sym('-');
        let num = match &self.peek().tok {
            Tok::Int(s) => s.parse::<i64>().ok(),
            _ => return bad(self, "expected an integer or a fraction `(p/q)`"),
        };
        self.next();
        let mut den = Some(1i64);
        if paren && self.eat_sym('/') {
            den = match &self.peek().tok {
                Tok::Int(s) => s.parse::<i64>().ok(),
                _ => return bad(self, "expected a denominator"),
            };
            self.next();
        }
        if paren && !self.eat_sym(')') {
            return bad(self, "expected `)`");
        }
        match (num, den) {
            (Some(_), Some(0)) => bad(self, "zero denominator"),
            (Some(n), Some(d)) if n.abs() <= 1 << 20 && d <= 1 << 20 => {
                Ok(exp(if neg { -n } else { n }, d))
            }
            _ => bad(self, "out of range"),
        }
    }
}

fn fmt_fn(f: &RationalFn, vars: &[String]) -> String {
    match f.q.as_constant() {
        Some(c) if c.is_one() => f.p.fmt_with(vars),
        _ => format!("({})/({})", f.p.fmt_with(vars), f.q.fmt_with(vars)),
    }
}

fn fmt_point(p: &[RealAlgebraic]) -> String {
    format!(
        "({})",
        p.iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .join(", ")
    )
}

fn fmt_ints(p: &[i64]) -> String {
    format!(
        "({})",
        p.iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .join(", ")
    )
}

pub fn fmt_arc(comps: &[PuiseuxSeries]) -> String {
    format!(
        "({})",
        comps
            .iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .join(", ")
    )
}

impl Session {
    fn fmt_arc_ref(&self, a: &ArcRef) -> String {
        match a {
            ArcRef::Named(n) => n.clone(),
            ArcRef::Inline(c) => fmt_arc(c),
        }
    }

    fn fmt_rel_ref(&self, r: &RelRef) -> String {
        match r {
            RelRef::Named(n) => n.clone(),
            RelRef::Inline(p) => self.fmt_relation(p),
        }
    }

    /// Canonical text of a query, without the trailing `;`.
    pub fn fmt_query(&self, q: &Query) -> String {
        let v = &self.vars;
        let arcs = |a: &[ArcRef]| {
            a.iter()
                .map(|x| self.fmt_arc_ref(x))
                .collect::<Vec<_>>()
                .join(", ")
        };
        match q {
            Query::Limit { f, arc } => {
                format!("limit {} along {}", fmt_fn(f, v), self.fmt_arc_ref(arc))
            }
            Query::Lift { rel, arc } => format!(
                "lift {} along {}",
                self.fmt_rel_ref(rel),
                self.fmt_arc_ref(arc)
            ),
            Query::PointLift { rel, point } => format!(
                "pointlift {} at {}",
                self.fmt_rel_ref(rel),
                fmt_point(point)
            ),
            Query::Witness { f, point, budget } => {
                let b = budget.map(|b| format!(" budget {b}")).unwrap_or_default();
                format!("witness {} at {}{b}", fmt_fn(f, v), fmt_point(point))
            }
            Query::Branches { poly, order } => {
                let o = order.map(|n| format!(" order {n}")).unwrap_or_default();
                format!("branches {}{o}", fmt_leading(poly, &names(&["t", "Y"])))
            }
            Query::Verify { arc } => format!("verify {}", self.fmt_arc_ref(arc)),
            Query::LojProbe {
                f,
                point,
                arcs: a,
                via,
            } => {
                let via = via
                    .as_ref()
                    .map(|r| format!(" via {}", self.fmt_rel_ref(r)))
                    .unwrap_or_default();
                format!(
                    "lojprobe {} at {} arcs {}{via}",
                    fmt_fn(f, v),
                    fmt_point(point),
                    arcs(a)
                )
            }
            Query::Slice { point, d1, d2 } => format!(
                "slice at {} dirs {} {}",
                fmt_point(point),
                fmt_ints(d1),
                fmt_ints(d2)
            ),
            Query::Singular { point } => format!("singular at {}", fmt_point(point)),
            Query::ZeroCheck { f, arcs: a } => {
                format!("zerocheck {} arcs {}", fmt_fn(f, v), arcs(a))
            }
        }
    }
}

impl fmt::Display for Session {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.vars.is_empty() {
            writeln!(f, "vars {};", self.vars.join(" "))?;
        }
        if !self.variety.is_empty() {
            let ps: Vec<String> = self
                .variety
                .iter()
                .map(|p| p.fmt_with(&self.vars))
                .collect();
            writeln!(f, "variety {};", ps.join(", "))?;
        }
        for item in &self.items {
            match item {
                Item::Arc { name, comps } => writeln!(f, "arc {name} = {};", fmt_arc(comps))?,
                Item::Relation { name, poly } => {
                    writeln!(f, "relation {name} = {};", self.fmt_relation(poly))?
                }
                Item::Set(Setting::Order(n)) => writeln!(f, "set order {n};")?,
                Item::Set(Setting::Budget(k)) => writeln!(f, "set budget {k};")?,
                Item::Set(Setting::TowerDepth(d)) => writeln!(f, "set towerdepth {d};")?,
                Item::Query(q) => writeln!(f, "{};", self.fmt_query(q))?,
            }
        }
        Ok(())
    }
}
