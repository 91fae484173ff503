//! Hand-reviewed relation files: one rewrite rule `g1*g2 = <expr>` per
//! line, `#` comments allowed. Expressions are sums of products of rational
//! literals, ring parameters (with `^k` powers) and generators, with
//! parentheses; generator words on the right must be canonical.

use std::collections::BTreeMap;
use std::sync::Arc;

use oscgroup_core::algebra::{Element, Gen, Monomial, RewriteSystem};
use oscgroup_core::coeff::{parse_rational, Coeff, Ring};
use oscgroup_core::rmatrix::{is_normal_word, FreeElement};

use crate::error::GoldenError;
use crate::params::canonical_key;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(String),
    Ident(String),
    Op(char),
}

fn lex(s: &str, line: usize) -> Result<Vec<Tok>, GoldenError> {
    let err = |msg: String| GoldenError::Parse { line, msg };
    let cs: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < cs.len() {
        let c = cs[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() || c == '.' {
            let start = i;
            while i < cs.len() && (cs[i].is_ascii_digit() || cs[i] == '.') {
                i += 1;
            }
            // a fraction literal binds tighter than any operator
            if i + 1 < cs.len() && cs[i] == '/' && cs[i + 1].is_ascii_digit() {
                i += 1;
                while i < cs.len() && cs[i].is_ascii_digit() {
                    i += 1;
                }
            }
            out.push(Tok::Num(cs[start..i].iter().collect()));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < cs.len() && (cs[i].is_alphanumeric() || cs[i] == '_') {
                i += 1;
            }
            out.push(Tok::Ident(cs[start..i].iter().collect()));
        } else if "+-*^()=".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(err(format!("unexpected character `{c}`")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: &'a [Tok],
    pos: usize,
    ring: &'a Ring,
    line: usize,
}

impl Parser<'_> {
    fn err(&self, msg: impl Into<String>) -> GoldenError {
        GoldenError::Parse { line: self.line, msg: msg.into() }
    }

    fn peek_op(&self, c: char) -> bool {
        self.toks.get(self.pos) == Some(&Tok::Op(c))
    }

    fn expr(&mut self) -> Result<FreeElement, GoldenError> {
        let mut acc = FreeElement::new();
        let mut sign = Coeff::one();
        if self.peek_op('-') {
            self.pos += 1;
            sign = Coeff::from_int(-1);
        } else if self.peek_op('+') {
            self.pos += 1;
        }
        loop {
            let t = self.term()?;
            add_into(self.ring, &mut acc, &t, &sign);
            if self.peek_op('+') {
                sign = Coeff::one();
            } else if self.peek_op('-') {
                sign = Coeff::from_int(-1);
            } else {
                return Ok(acc);
            }
            self.pos += 1;
        }
    }

    fn term(&mut self) -> Result<FreeElement, GoldenError> {
        let mut acc = self.factor()?;
        while self.peek_op('*') {
            self.pos += 1;
            let f = self.factor()?;
            acc = mul(self.ring, &acc, &f);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<FreeElement, GoldenError> {
        let base = match self.toks.get(self.pos).cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                let r = parse_rational(&n).ok_or_else(|| self.err(format!("bad number `{n}`")))?;
                scalar(Coeff::from_rat(r))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                if let Some(g) = Gen::parse(&name) {
                    let mut e = FreeElement::new();
                    e.insert(vec![g], Coeff::one());
                    e
                } else {
                    let key = canonical_key(&name);
                    let v = self
                        .ring
                        .var(key)
                        .map_err(|_| self.err(format!("unknown symbol `{name}`")))?;
                    scalar(v)
                }
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.peek_op(')') {
                    return Err(self.err("missing `)`"));
                }
                self.pos += 1;
                e
            }
            other => return Err(self.err(format!("unexpected {other:?}"))),
        };
        if self.peek_op('^') {
            self.pos += 1;
            let k: u32 = match self.toks.get(self.pos) {
                Some(Tok::Num(n)) => n.parse().map_err(|_| self.err(format!("bad exponent `{n}`")))?,
                _ => return Err(self.err("missing exponent")),
            };
            self.pos += 1;
            let mut acc = scalar(Coeff::one());
            for _ in 0..k {
                acc = mul(self.ring, &acc, &base);
            }
            return Ok(acc);
        }
        Ok(base)
    }
}

fn scalar(c: Coeff) -> FreeElement {
    let mut e = FreeElement::new();
    if !c.is_zero() {
        e.insert(Vec::new(), c);
    }
    e
}

fn add_into(ring: &Ring, acc: &mut FreeElement, e: &FreeElement, s: &Coeff) {
    for (w, c) in e {
        let v = &acc.get(w).cloned().unwrap_or_default() + &ring.mul(c, s);
        if v.is_zero() {
            acc.remove(w);
        } else {
            acc.insert(w.clone(), v);
        }
    }
}

fn mul(ring: &Ring, a: &FreeElement, b: &FreeElement) -> FreeElement {
    let mut out = FreeElement::new();
    for (w1, c1) in a {
        for (w2, c2) in b {
            let mut w = w1.clone();
            w.extend_from_slice(w2);
            let mut t = FreeElement::new();
            t.insert(w, ring.mul(c1, c2));
            add_into(ring, &mut out, &t, &Coeff::one());
        }
    }
    out
}

fn word_text(w: &[Gen]) -> String {
    w.iter().map(|g| g.name()).collect::<Vec<_>>().join("*")
}

/// Parse a relation file into a rewrite system over `ring`.
pub fn parse_rules(text: &str, ring: Arc<Ring>) -> Result<RewriteSystem, GoldenError> {
    let mut rs = RewriteSystem::new(ring.clone());
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let toks = lex(body, line)?;
        let eq = toks
            .iter()
            .position(|t| *t == Tok::Op('='))
            .ok_or(GoldenError::Parse { line, msg: "missing `=`".into() })?;
        let (lhs, rhs) = (&toks[..eq], &toks[eq + 1..]);
        let pair = match lhs {
            [Tok::Ident(a), Tok::Op('*'), Tok::Ident(b)] => Gen::parse(a).zip(Gen::parse(b)),
            _ => None,
        }
        .ok_or(GoldenError::Parse { line, msg: "left side must be `g1*g2`".into() })?;
        let mut p = Parser { toks: rhs, pos: 0, ring: &ring, line };
        let e = p.expr()?;
        if p.pos != rhs.len() {
            return Err(GoldenError::Parse { line, msg: "trailing input".into() });
        }
        let mut out = Element::zero();
        for (w, c) in &e {
            if !is_normal_word(w) {
                return Err(GoldenError::NonCanonical { line, word: word_text(w) });
            }
            let mut m = Monomial::ONE;
            for g in w {
                m = m.times(*g);
            }
            out.add_term(m, c);
        }
        if rs.get(pair.0, pair.1).is_some() {
            return Err(GoldenError::DuplicateRule { line, lhs: word_text(&[pair.0, pair.1]) });
        }
        rs.insert(pair.0, pair.1, out);
    }
    rs.validate()?;
    Ok(rs)
}

/// Rule-by-rule comparison of a derived system against a golden one.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct GoldenDiff {
    /// Golden rules with no derived counterpart.
    pub missing: Vec<String>,
    /// Derived rules absent from the golden file.
    pub extra: Vec<String>,
    /// `(lhs, golden rhs, derived rhs)`.
    pub differing: Vec<(String, String, String)>,
}

impl GoldenDiff {
    pub fn is_empty(&self) -> bool {
        self.missing.is_empty() && self.extra.is_empty() && self.differing.is_empty()
    }

    pub fn len(&self) -> usize {
        self.missing.len() + self.extra.len() + self.differing.len()
    }
}

pub fn compare(derived: &RewriteSystem, golden: &RewriteSystem) -> GoldenDiff {
    let ring = derived.ring();
    let d: BTreeMap<_, _> = derived.rules().collect();
    let g: BTreeMap<_, _> = golden.rules().collect();
    let mut diff = GoldenDiff::default();
    for (k, ge) in &g {
        let lhs = word_text(&[k.0, k.1]);
        match d.get(k) {
            None => diff.missing.push(lhs),
            Some(de) if de != ge => diff.differing.push((lhs, ge.display(ring), de.display(ring))),
            _ => {}
        }
    }
    for k in d.keys() {
        if !g.contains_key(k) {
            diff.extra.push(word_text(&[k.0, k.1]));
        }
    }
    diff
}
