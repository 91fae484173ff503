//! Exact coefficients: multivariate polynomials with rational coefficients in
//! the deformation parameters, normalized against a small set of monomial
//! reduction rules (`s^2 -> x z` and the product constraints of derived
//! parameters such as `u1 * q -> rho * sigma`).
//!
//! The left-hand sides of all reduction rules are pairwise coprime and their
//! right-hand sides never contain a left-hand-side variable, so the rules form
//! a Gröbner basis (for a lex order with the reduced variables first) and the
//! reduced form is canonical.

use alloc::collections::btree_map::Entry;
use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Write;
use core::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::CoeffError;

pub type Rat = BigRational;

/// Relative tolerance used when checking `s^2 = x z` (and derived-parameter
/// products) on a numeric assignment.
pub const ROOT_TOLERANCE: f64 = 1e-12;

/// Exponent vector, indexed by parameter position in the ring; trailing zeros
/// are always trimmed so that equal monomials compare equal.
type Exps = Vec<u8>;

fn trim(mut e: Exps) -> Exps {
    while e.last() == Some(&0) {
        e.pop();
    }
    e
}

fn exps_mul(a: &[u8], b: &[u8]) -> Exps {
    let n = a.len().max(b.len());
    let mut out = vec![0u8; n];
    for (i, o) in out.iter_mut().enumerate() {
        *o = a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0);
    }
    out
}

fn divides(d: &[u8], e: &[u8]) -> bool {
    d.iter()
        .enumerate()
        .all(|(i, &k)| e.get(i).copied().unwrap_or(0) >= k)
}

fn exps_div(e: &[u8], d: &[u8]) -> Exps {
    let mut out: Exps = e.to_vec();
    for (i, &k) in d.iter().enumerate() {
        out[i] -= k;
    }
    trim(out)
}

/// A polynomial in the ring parameters with exact rational coefficients.
///
/// Addition and negation are ring-independent; multiplication goes through
/// [`Ring::mul`] so that the reduction rules are applied.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Coeff {
    terms: BTreeMap<Exps, Rat>,
}

impl Coeff {
    pub fn zero() -> Self {
        Coeff::default()
    }

    pub fn one() -> Self {
        Coeff::from_rat(Rat::one())
    }

    pub fn from_int(n: i64) -> Self {
        Coeff::from_rat(Rat::from_integer(BigInt::from(n)))
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        Coeff::from_rat(Rat::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn from_rat(r: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !r.is_zero() {
            terms.insert(Vec::new(), r);
        }
        Coeff { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The rational value if this coefficient is a constant.
    pub fn as_constant(&self) -> Option<Rat> {
        match self.terms.len() {
            0 => Some(Rat::zero()),
            1 => self.terms.get(&Vec::new()).cloned(),
            _ => None,
        }
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|r| r.is_one())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Multiply by a rational constant (no reduction needed).
    pub fn scale(&self, r: &Rat) -> Coeff {
        if r.is_zero() {
            return Coeff::zero();
        }
        Coeff {
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * r)).collect(),
        }
    }

    /// Largest exponent of parameter `idx` over all terms.
    pub fn degree_in(&self, idx: usize) -> u8 {
        self.terms
            .keys()
            .map(|e| e.get(idx).copied().unwrap_or(0))
            .max()
            .unwrap_or(0)
    }

    /// Total degree (0 for constants and for zero).
    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|e| e.iter().map(|&k| k as u32).sum())
            .max()
            .unwrap_or(0)
    }

    /// Iterate over `(exponents, rational)` pairs.
    pub fn terms(&self) -> impl Iterator<Item = (&[u8], &Rat)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    fn add_term(&mut self, e: Exps, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(trim(e)) {
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    pub fn add_assign_ref(&mut self, other: &Coeff) {
        for (e, c) in &other.terms {
            self.add_term(e.clone(), c.clone());
        }
    }

    pub fn sub_assign_ref(&mut self, other: &Coeff) {
        for (e, c) in &other.terms {
            self.add_term(e.clone(), -c.clone());
        }
    }
}

impl Add for &Coeff {
    type Output = Coeff;
    fn add(self, rhs: &Coeff) -> Coeff {
        let mut out = self.clone();
        out.add_assign_ref(rhs);
        out
    }
}

impl Sub for &Coeff {
    type Output = Coeff;
    fn sub(self, rhs: &Coeff) -> Coeff {
        let mut out = self.clone();
        out.sub_assign_ref(rhs);
        out
    }
}

impl Neg for &Coeff {
    type Output = Coeff;
    fn neg(self) -> Coeff {
        Coeff {
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl Neg for Coeff {
    type Output = Coeff;
    fn neg(self) -> Coeff {
        -&self
    }
}

#[derive(Clone, Debug)]
struct Reduction {
    /// Monomial that gets replaced.
    lhs: Exps,
    rhs: Coeff,
    /// Name of the parameter the rule is attached to (`s`, `u1`, ...).
    owner: String,
}

/// Parameter context: names plus reduction rules.
#[derive(Clone, Debug)]
pub struct Ring {
    names: Vec<String>,
    rules: Vec<Reduction>,
}

impl Ring {
    /// Build a ring over the given parameter names.
    ///
    /// If `s` is present, `x` and `z` must be too, and the rule `s^2 -> x z`
    /// is installed.
    pub fn new<S: AsRef<str>>(params: &[S]) -> Result<Ring, CoeffError> {
        let mut names: Vec<String> = Vec::new();
        for p in params {
            let p = p.as_ref();
            if !is_identifier(p) {
                return Err(CoeffError::BadName(p.to_string()));
            }
            if names.iter().any(|n| n == p) {
                return Err(CoeffError::DuplicateParameter(p.to_string()));
            }
            names.push(p.to_string());
        }
        let mut ring = Ring {
            names,
            rules: Vec::new(),
        };
        if ring.index("s").is_some() {
            if ring.index("x").is_none() || ring.index("z").is_none() {
                return Err(CoeffError::RootWithoutFactors);
            }
            let s = ring.index("s").unwrap();
            let mut lhs = vec![0u8; s + 1];
            lhs[s] = 2;
            let rhs = ring.monomial(&[("x", 1), ("z", 1)])?;
            ring.rules.push(Reduction {
                lhs,
                rhs,
                owner: "s".into(),
            });
        }
        Ok(ring)
    }

    /// Declare `name` (already a ring parameter) as the quotient
    /// `prod(numerator) / denominator`, i.e. install `name * denominator ->
    /// prod(numerator)`.
    pub fn with_derived(
        mut self,
        name: &str,
        denominator: &str,
        numerator: &[&str],
    ) -> Result<Ring, CoeffError> {
        let i = self.require(name)?;
        let j = self.require(denominator)?;
        let mut lhs = vec![0u8; i.max(j) + 1];
        lhs[i] += 1;
        lhs[j] += 1;
        let factors: Vec<(&str, u8)> = numerator.iter().map(|n| (*n, 1u8)).collect();
        let rhs = self.monomial(&factors)?;
        for r in &self.rules {
            let overlap = r.lhs.iter().zip(&lhs).any(|(a, b)| *a > 0 && *b > 0);
            if overlap {
                return Err(CoeffError::OverlappingReduction(name.to_string()));
            }
        }
        if rhs.terms.keys().any(|e| e.get(i).copied().unwrap_or(0) > 0
            || e.get(j).copied().unwrap_or(0) > 0)
        {
            return Err(CoeffError::OverlappingReduction(name.to_string()));
        }
        self.rules.push(Reduction {
            lhs: trim(lhs),
            rhs,
            owner: name.to_string(),
        });
        Ok(self)
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    fn require(&self, name: &str) -> Result<usize, CoeffError> {
        self.index(name)
            .ok_or_else(|| CoeffError::UnboundParameter(name.to_string()))
    }

    pub fn has(&self, name: &str) -> bool {
        self.index(name).is_some()
    }

    /// The coefficient consisting of the single parameter `name`.
    pub fn var(&self, name: &str) -> Result<Coeff, CoeffError> {
        self.monomial(&[(name, 1)])
    }

    /// A product of parameter powers with coefficient 1, reduced.
    pub fn monomial(&self, factors: &[(&str, u8)]) -> Result<Coeff, CoeffError> {
        let mut e: Exps = vec![0u8; self.names.len()];
        for (n, k) in factors {
            e[self.require(n)?] += *k;
        }
        let mut c = Coeff::zero();
        c.add_term(e, Rat::one());
        Ok(self.normalize(&c))
    }

    /// Reduce an arbitrary coefficient to canonical form.
    pub fn normalize(&self, c: &Coeff) -> Coeff {
        let mut out = Coeff::zero();
        for (e, r) in &c.terms {
            self.reduce_into(e.clone(), r.clone(), &mut out);
        }
        out
    }

    fn reduce_into(&self, e: Exps, r: Rat, out: &mut Coeff) {
        for rule in &self.rules {
            if divides(&rule.lhs, &e) {
                let rest = exps_div(&e, &rule.lhs);
                for (re, rr) in &rule.rhs.terms {
                    self.reduce_into(exps_mul(&rest, re), &r * rr, out);
                }
                return;
            }
        }
        out.add_term(e, r);
    }

    pub fn mul(&self, a: &Coeff, b: &Coeff) -> Coeff {
        let mut out = Coeff::zero();
        if a.is_zero() || b.is_zero() {
            return out;
        }
        for (ea, ra) in &a.terms {
            for (eb, rb) in &b.terms {
                self.reduce_into(exps_mul(ea, eb), ra * rb, &mut out);
            }
        }
        out
    }

    pub fn mul3(&self, a: &Coeff, b: &Coeff, c: &Coeff) -> Coeff {
        if a.num_terms() * b.num_terms() <= b.num_terms() * c.num_terms() {
            self.mul(&self.mul(a, b), c)
        } else {
            self.mul(a, &self.mul(b, c))
        }
    }

    pub fn pow(&self, a: &Coeff, k: u32) -> Coeff {
        let mut out = Coeff::one();
        for _ in 0..k {
            out = self.mul(&out, a);
        }
        out
    }

    /// Check a numeric assignment against the ring's reduction rules.
    pub fn check_assignment(&self, assignment: &Assignment) -> Result<(), CoeffError> {
        for rule in &self.rules {
            let mut involved = false;
            for (i, &k) in rule.lhs.iter().enumerate() {
                if k > 0 && assignment.get(&self.names[i]).is_some() {
                    involved = true;
                }
            }
            if !involved {
                continue;
            }
            let lhs = self.eval_raw(&rule.lhs, assignment)?;
            let mut rhs = 0.0;
            for (e, r) in &rule.rhs.terms {
                rhs += rat_to_f64(r) * self.eval_raw(e, assignment)?;
            }
            let scale = 1.0f64.max(libm::fabs(lhs)).max(libm::fabs(rhs));
            if libm::fabs(lhs - rhs) > ROOT_TOLERANCE * scale {
                return Err(if rule.owner == "s" {
                    CoeffError::InconsistentRoot
                } else {
                    CoeffError::InconsistentDerived(rule.owner.clone())
                });
            }
        }
        Ok(())
    }

    fn eval_raw(&self, e: &[u8], assignment: &Assignment) -> Result<f64, CoeffError> {
        let mut v = 1.0;
        for (i, &k) in e.iter().enumerate() {
            if k == 0 {
                continue;
            }
            let name = &self.names[i];
            let x = assignment
                .get(name)
                .ok_or_else(|| CoeffError::UnboundParameter(name.clone()))?;
            v *= libm::pow(*x, k as f64);
        }
        Ok(v)
    }

    /// Evaluate in floating point after validating the assignment.
    pub fn eval(&self, c: &Coeff, assignment: &Assignment) -> Result<f64, CoeffError> {
        self.check_assignment(assignment)?;
        let mut v = 0.0;
        for (e, r) in &c.terms {
            v += rat_to_f64(r) * self.eval_raw(e, assignment)?;
        }
        Ok(v)
    }

    /// Exact evaluation at rational values; the reduction rules are not
    /// re-checked, so the caller supplies a consistent point.
    pub fn eval_exact(&self, c: &Coeff, values: &BTreeMap<String, Rat>) -> Result<Rat, CoeffError> {
        let mut v = Rat::zero();
        for (e, r) in &c.terms {
            let mut t = r.clone();
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                let x = values
                    .get(&self.names[i])
                    .ok_or_else(|| CoeffError::UnboundParameter(self.names[i].clone()))?;
                for _ in 0..k {
                    t *= x;
                }
            }
            v += t;
        }
        Ok(v)
    }

    /// Substitute `name -> value` (a coefficient) everywhere, then reduce.
    pub fn substitute(&self, c: &Coeff, name: &str, value: &Coeff) -> Result<Coeff, CoeffError> {
        let i = self.require(name)?;
        let mut out = Coeff::zero();
        for (e, r) in &c.terms {
            let k = e.get(i).copied().unwrap_or(0);
            let mut rest = e.clone();
            if k > 0 {
                rest[i] = 0;
            }
            let mut base = Coeff::zero();
            base.add_term(rest, r.clone());
            let term = self.mul(&base, &self.pow(value, k as u32));
            out.add_assign_ref(&term);
        }
        Ok(out)
    }

    /// Human-readable form, e.g. `1/2*x*z - s + 3`.
    pub fn display(&self, c: &Coeff) -> String {
        if c.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        // higher-degree terms first for readability
        let mut terms: Vec<(&Exps, &Rat)> = c.terms.iter().collect();
        terms.sort_by(|a, b| {
            let da: u32 = a.0.iter().map(|&k| k as u32).sum();
            let db: u32 = b.0.iter().map(|&k| k as u32).sum();
            db.cmp(&da).then_with(|| b.0.cmp(a.0))
        });
        for (n, (e, r)) in terms.into_iter().enumerate() {
            let neg = r.is_negative();
            let mag = r.abs();
            if n == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let vars = self.fmt_exps(e);
            if vars.is_empty() {
                let _ = write!(out, "{}", mag);
            } else if mag.is_one() {
                out.push_str(&vars);
            } else {
                let _ = write!(out, "{}*{}", mag, vars);
            }
        }
        out
    }

    fn fmt_exps(&self, e: &[u8]) -> String {
        let mut parts: Vec<String> = Vec::new();
        for (i, &k) in e.iter().enumerate() {
            match k {
                0 => {}
                1 => parts.push(self.names[i].clone()),
                _ => parts.push(alloc::format!("{}^{}", self.names[i], k)),
            }
        }
        parts.join("*")
    }

    /// All parameter names with non-zero exponent somewhere in `c`.
    pub fn support(&self, c: &Coeff) -> Vec<String> {
        let mut seen = vec![false; self.names.len()];
        for e in c.terms.keys() {
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    seen[i] = true;
                }
            }
        }
        self.names
            .iter()
            .zip(seen)
            .filter(|(_, s)| *s)
            .map(|(n, _)| n.clone())
            .collect()
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_alphanumeric() || c == '_')
}

/// A numeric point in parameter space.
pub type Assignment = BTreeMap<String, f64>;

pub fn rat_to_f64(r: &Rat) -> f64 {
    match (r.numer().to_f64(), r.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
        _ => {
            // very large numerators/denominators: scale down in binary
            let shift = r.numer().bits().max(r.denom().bits()) as i64 - 60;
            let n = (r.numer() >> shift.max(0) as usize).to_f64().unwrap_or(0.0);
            let d = (r.denom() >> shift.max(0) as usize).to_f64().unwrap_or(1.0);
            n / d
        }
    }
}

/// Parse a rational literal: integer, `a/b`, or a finite decimal `-1.25e-3`.
pub fn parse_rational(s: &str) -> Option<Rat> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(Rat::new(n, d));
    }
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (neg, mantissa) = match mantissa.strip_prefix('-') {
        Some(m) => (true, m),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int, frac) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if int.is_empty() && frac.is_empty() {
        return None;
    }
    if !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits = alloc::format!("{}{}", int, frac);
    let mut n: BigInt = digits.parse().ok()?;
    if neg {
        n = -n;
    }
    let scale = exp - frac.len() as i32;
    let ten = BigInt::from(10);
    Some(if scale >= 0 {
        Rat::from_integer(n * num_traits::pow(ten, scale as usize))
    } else {
        Rat::new(n, num_traits::pow(ten, (-scale) as usize))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xzs() -> Ring {
        Ring::new(&["x", "z", "s"]).unwrap()
    }

    #[test]
    fn s_squared_reduces() {
        let r = xzs();
        let s = r.var("s").unwrap();
        let ss = r.mul(&s, &s);
        assert_eq!(ss, r.monomial(&[("x", 1), ("z", 1)]).unwrap());
        assert!(s.degree_in(2) == 1 && ss.degree_in(2) == 0);
    }

    #[test]
    fn s_plus_one_times_s_minus_one() {
        let r = xzs();
        let s = r.var("s").unwrap();
        let a = &s + &Coeff::one();
        let b = &s - &Coeff::one();
        let p = r.mul(&a, &b);
        let expect = &r.monomial(&[("x", 1), ("z", 1)]).unwrap() - &Coeff::one();
        assert_eq!(p, expect);
        let mut pt = Assignment::new();
        pt.insert("x".into(), 4.0);
        pt.insert("z".into(), 1.0);
        pt.insert("s".into(), 2.0);
        assert_eq!(r.eval(&p, &pt).unwrap(), 3.0);
    }

    #[test]
    fn cancellation_is_empty() {
        let r = xzs();
        let xz = r.monomial(&[("x", 1), ("z", 1)]).unwrap();
        assert!((&xz - &xz).is_zero());
        assert_eq!((&xz - &xz).terms().count(), 0);
    }

    #[test]
    fn ring_errors() {
        assert_eq!(
            Ring::new(&["x", "x"]).unwrap_err(),
            CoeffError::DuplicateParameter("x".into())
        );
        assert_eq!(Ring::new(&["s"]).unwrap_err(), CoeffError::RootWithoutFactors);
        assert!(Ring::new(&["p", "q"]).unwrap().rules.is_empty());
    }

    #[test]
    fn eval_branches_and_errors() {
        let r = xzs();
        let s = r.var("s").unwrap();
        let mut pt = Assignment::new();
        pt.insert("x".into(), 4.0);
        pt.insert("z".into(), 1.0);
        pt.insert("s".into(), -2.0);
        assert_eq!(r.eval(&s, &pt).unwrap(), -2.0);
        pt.insert("s".into(), 3.0);
        assert_eq!(r.eval(&s, &pt), Err(CoeffError::InconsistentRoot));
        let xz = r.monomial(&[("x", 1), ("z", 1)]).unwrap();
        let mut only_x = Assignment::new();
        only_x.insert("x".into(), 2.0);
        assert_eq!(
            r.eval(&xz, &only_x),
            Err(CoeffError::UnboundParameter("z".into()))
        );
        let mut xz_pt = Assignment::new();
        xz_pt.insert("x".into(), 2.0);
        xz_pt.insert("z".into(), 3.0);
        assert_eq!(r.eval(&xz, &xz_pt).unwrap(), 6.0);
    }

    #[test]
    fn derived_parameter_reduces_and_checks() {
        let r = Ring::new(&["q", "rho", "sigma", "u1"])
            .unwrap()
            .with_derived("u1", "q", &["rho", "sigma"])
            .unwrap();
        let p = r.mul(&r.var("u1").unwrap(), &r.var("q").unwrap());
        assert_eq!(p, r.monomial(&[("rho", 1), ("sigma", 1)]).unwrap());
        let mut pt = Assignment::new();
        pt.insert("q".into(), 2.0);
        pt.insert("rho".into(), 3.0);
        pt.insert("sigma".into(), 1.0);
        pt.insert("u1".into(), 1.5);
        assert!(r.check_assignment(&pt).is_ok());
        pt.insert("u1".into(), 1.0);
        assert_eq!(
            r.check_assignment(&pt),
            Err(CoeffError::InconsistentDerived("u1".into()))
        );
    }

    #[test]
    fn rational_literals() {
        assert_eq!(parse_rational("3/4"), Some(Rat::new(3.into(), 4.into())));
        assert_eq!(parse_rational("-1.25"), Some(Rat::new((-5).into(), 4.into())));
        assert_eq!(parse_rational("2e-2"), Some(Rat::new(1.into(), 50.into())));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("abc"), None);
    }

    #[test]
    fn display_is_readable() {
        let r = xzs();
        let c = &r.monomial(&[("x", 1), ("z", 1)]).unwrap().scale(&Rat::new(1.into(), 2.into()))
            - &r.var("s").unwrap();
        assert_eq!(r.display(&c), "1/2*x*z - s");
    }
}
