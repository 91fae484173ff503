//! The graded algebra on the eight non-unit entries of the 5x5 group element:
//! monomials in canonical order, elements, quadratic rewrite systems, normal
//! ordering and tensor products.

use alloc::collections::BTreeMap;
use alloc::rc::Rc;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::cell::RefCell;
use core::cmp::Ordering;
use core::fmt::Write;

use crate::coeff::{Coeff, Ring};
use crate::error::AlgebraError;

/// Generators, listed in canonical order `beta < eta < alpha < gamma < b < a
/// < d < c`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Gen {
    Beta = 0,
    Eta = 1,
    Alpha = 2,
    Gamma = 3,
    B = 4,
    A = 5,
    D = 6,
    C = 7,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sector {
    Fermionic,
    Bosonic,
}

impl Gen {
    pub const ALL: [Gen; 8] = [
        Gen::Beta,
        Gen::Eta,
        Gen::Alpha,
        Gen::Gamma,
        Gen::B,
        Gen::A,
        Gen::D,
        Gen::C,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Gen {
        Gen::ALL[i]
    }

    /// alpha and gamma are odd, everything else even.
    pub fn is_odd(self) -> bool {
        matches!(self, Gen::Alpha | Gen::Gamma)
    }

    pub fn sector(self) -> Sector {
        if self.index() < 4 {
            Sector::Fermionic
        } else {
            Sector::Bosonic
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Gen::Beta => "beta",
            Gen::Eta => "eta",
            Gen::Alpha => "alpha",
            Gen::Gamma => "gamma",
            Gen::B => "b",
            Gen::A => "a",
            Gen::D => "d",
            Gen::C => "c",
        }
    }

    pub fn parse(s: &str) -> Option<Gen> {
        Some(match s {
            "beta" | "β" => Gen::Beta,
            "eta" | "η" => Gen::Eta,
            "alpha" | "α" => Gen::Alpha,
            "gamma" | "γ" => Gen::Gamma,
            "b" => Gen::B,
            "a" => Gen::A,
            "d" => Gen::D,
            "c" => Gen::C,
            _ => return None,
        })
    }
}

/// `beta^k eta^l alpha^m gamma^n b^r a^s d^t c^u`, stored as the exponent
/// vector in canonical order.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(pub [u8; 8]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0; 8]);

    pub fn gen(g: Gen) -> Monomial {
        let mut e = [0; 8];
        e[g.index()] = 1;
        Monomial(e)
    }

    pub fn exp(&self, g: Gen) -> u8 {
        self.0[g.index()]
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(|&k| k as usize).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0 == [0; 8]
    }

    /// Parity: count of odd letters mod 2.
    pub fn is_odd(&self) -> bool {
        (self.exp(Gen::Alpha) + self.exp(Gen::Gamma)) % 2 == 1
    }

    /// Last letter of the canonical word.
    pub fn last(&self) -> Option<Gen> {
        (0..8).rev().find(|&i| self.0[i] > 0).map(Gen::from_index)
    }

    pub fn times(&self, g: Gen) -> Monomial {
        let mut e = self.0;
        e[g.index()] += 1;
        Monomial(e)
    }

    pub fn without(&self, g: Gen) -> Monomial {
        let mut e = self.0;
        e[g.index()] -= 1;
        Monomial(e)
    }

    /// The canonical word, letter by letter.
    pub fn letters(&self) -> impl Iterator<Item = Gen> + '_ {
        Gen::ALL
            .iter()
            .flat_map(move |&g| core::iter::repeat_n(g, self.exp(g) as usize))
    }

    /// Commutative product of exponent vectors (no rewriting).
    pub fn concat(&self, other: &Monomial) -> Monomial {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(other.0.iter()) {
            *a += b;
        }
        Monomial(e)
    }

    /// Term order: degree first, then lexicographic comparison of the
    /// canonical words.
    pub fn term_cmp(&self, other: &Monomial) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.letters().cmp(other.letters()))
    }

    pub fn fermionic_part(&self) -> Monomial {
        let mut e = self.0;
        e[4..].iter_mut().for_each(|k| *k = 0);
        Monomial(e)
    }

    pub fn bosonic_part(&self) -> Monomial {
        let mut e = self.0;
        e[..4].iter_mut().for_each(|k| *k = 0);
        Monomial(e)
    }

    pub fn display(&self) -> String {
        if self.is_one() {
            return "1".into();
        }
        let mut parts: Vec<String> = Vec::new();
        for g in Gen::ALL {
            match self.exp(g) {
                0 => {}
                1 => parts.push(g.name().into()),
                k => parts.push(alloc::format!("{}^{}", g.name(), k)),
            }
        }
        parts.join("*")
    }
}

/// Word-order comparison used to orient relations: degree, then
/// lexicographic on letter indices.
pub fn word_cmp(a: &[Gen], b: &[Gen]) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

/// Finite sum of canonical monomials with coefficient weights.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Element {
    terms: BTreeMap<Monomial, Coeff>,
}

impl Element {
    pub fn zero() -> Element {
        Element::default()
    }

    pub fn one() -> Element {
        Element::monomial(Monomial::ONE, Coeff::one())
    }

    pub fn gen(g: Gen) -> Element {
        Element::monomial(Monomial::gen(g), Coeff::one())
    }

    pub fn monomial(m: Monomial, c: Coeff) -> Element {
        let mut e = Element::zero();
        e.add_term(m, &c);
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Coeff)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> Coeff {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, m: Monomial, c: &Coeff) {
        if c.is_zero() {
            return;
        }
        let remove = match self.terms.get_mut(&m) {
            Some(v) => {
                v.add_assign_ref(c);
                v.is_zero()
            }
            None => {
                self.terms.insert(m, c.clone());
                false
            }
        };
        if remove {
            self.terms.remove(&m);
        }
    }

    pub fn add_assign(&mut self, other: &Element) {
        for (m, c) in &other.terms {
            self.add_term(*m, c);
        }
    }

    pub fn sub_assign(&mut self, other: &Element) {
        for (m, c) in &other.terms {
            self.add_term(*m, &-c);
        }
    }

    pub fn add(&self, other: &Element) -> Element {
        let mut e = self.clone();
        e.add_assign(other);
        e
    }

    pub fn sub(&self, other: &Element) -> Element {
        let mut e = self.clone();
        e.sub_assign(other);
        e
    }

    pub fn neg(&self) -> Element {
        Element {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }

    /// Multiply every coefficient by `c`.
    pub fn scale(&self, ring: &Ring, c: &Coeff) -> Element {
        let mut e = Element::zero();
        for (m, v) in &self.terms {
            e.add_term(*m, &ring.mul(v, c));
        }
        e
    }

    /// Largest monomial in the term order.
    pub fn leading(&self) -> Option<(&Monomial, &Coeff)> {
        self.terms.iter().max_by(|a, b| a.0.term_cmp(b.0))
    }

    pub fn degree(&self) -> usize {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    /// Whether all terms share one parity (`None` for mixed parity).
    pub fn parity(&self) -> Option<bool> {
        let mut it = self.terms.keys().map(|m| m.is_odd());
        let first = it.next()?;
        if it.all(|p| p == first) {
            Some(first)
        } else {
            None
        }
    }

    /// Terms sorted from the largest monomial down.
    pub fn sorted_terms(&self) -> Vec<(&Monomial, &Coeff)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| b.0.term_cmp(a.0));
        v
    }

    /// Text form, e.g. `beta*alpha - z*eta*gamma`.
    pub fn display(&self, ring: &Ring) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (n, (m, c)) in self.sorted_terms().into_iter().enumerate() {
            let mut cs = ring.display(c);
            let compound = c.num_terms() > 1;
            let neg = !compound && cs.starts_with('-');
            if neg {
                cs.remove(0);
            }
            if n == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let coeff_part = if compound {
                alloc::format!("({})", cs)
            } else {
                cs
            };
            if m.is_one() {
                out.push_str(&coeff_part);
            } else if c.is_one() || (neg && coeff_part == "1") {
                out.push_str(&m.display());
            } else {
                let _ = write!(out, "{}*{}", coeff_part, m.display());
            }
        }
        out
    }
}

/// Quadratic rewrite rules: `g1*g2 -> replacement` for every out-of-order
/// pair, plus optional power rules for `alpha^2` and `gamma^2`.
#[derive(Clone, Debug)]
pub struct RewriteSystem {
    ring: Arc<Ring>,
    rules: BTreeMap<(Gen, Gen), Element>,
}

impl RewriteSystem {
    pub fn new(ring: Arc<Ring>) -> RewriteSystem {
        RewriteSystem {
            ring,
            rules: BTreeMap::new(),
        }
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn insert(&mut self, g1: Gen, g2: Gen, replacement: Element) {
        self.rules.insert((g1, g2), replacement);
    }

    pub fn get(&self, g1: Gen, g2: Gen) -> Option<&Element> {
        self.rules.get(&(g1, g2))
    }

    pub fn rules(&self) -> impl Iterator<Item = (&(Gen, Gen), &Element)> {
        self.rules.iter()
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    /// Plain commutative rules `g1*g2 = g2*g1` for every out-of-order pair.
    pub fn commutative(ring: Arc<Ring>) -> RewriteSystem {
        let mut rs = RewriteSystem::new(ring);
        for g1 in Gen::ALL {
            for g2 in Gen::ALL {
                if g1 > g2 {
                    rs.insert(g1, g2, Element::monomial(Monomial::gen(g1).times(g2), Coeff::one()));
                }
            }
        }
        rs
    }

    /// Check closure and that every replacement is strictly smaller than its
    /// left-hand word.
    pub fn validate(&self) -> Result<(), AlgebraError> {
        for g1 in Gen::ALL {
            for g2 in Gen::ALL {
                if g1 > g2 && !self.rules.contains_key(&(g1, g2)) {
                    return Err(AlgebraError::IncompleteRewriteSystem(g1.name(), g2.name()));
                }
            }
        }
        for (&(g1, g2), rep) in &self.rules {
            if g1 < g2 || (g1 == g2 && !g1.is_odd()) {
                return Err(AlgebraError::NonDecreasingRule(g1.name(), g2.name()));
            }
            let lhs = [g1, g2];
            for m in rep.terms.keys() {
                let w: Vec<Gen> = m.letters().collect();
                if word_cmp(&w, &lhs) != Ordering::Less {
                    return Err(AlgebraError::NonDecreasingRule(g1.name(), g2.name()));
                }
            }
        }
        Ok(())
    }

    /// Rule lines `g1*g2 = replacement`, largest left-hand side first.
    pub fn to_text(&self) -> String {
        let mut keys: Vec<&(Gen, Gen)> = self.rules.keys().collect();
        keys.sort_by(|a, b| word_cmp(&[b.0, b.1], &[a.0, a.1]));
        let mut out = String::new();
        for k in keys {
            let _ = writeln!(
                out,
                "{}*{} = {}",
                k.0.name(),
                k.1.name(),
                self.rules[k].display(&self.ring)
            );
        }
        out
    }
}

impl PartialEq for RewriteSystem {
    fn eq(&self, other: &Self) -> bool {
        self.rules == other.rules && self.ring.names() == other.ring.names()
    }
}

/// Normal-ordering engine for a validated rewrite system. Products of
/// monomials by generators are memoized; the cache makes this type `!Sync`,
/// so concurrent users should each hold their own instance (construction is
/// cheap).
pub struct Algebra {
    rs: RewriteSystem,
    memo: RefCell<BTreeMap<(Monomial, Gen), Rc<Element>>>,
}

impl Clone for Algebra {
    fn clone(&self) -> Self {
        Algebra {
            rs: self.rs.clone(),
            memo: RefCell::new(BTreeMap::new()),
        }
    }
}

impl Algebra {
    pub fn new(rs: RewriteSystem) -> Result<Algebra, AlgebraError> {
        rs.validate()?;
        Ok(Algebra {
            rs,
            memo: RefCell::new(BTreeMap::new()),
        })
    }

    pub fn ring(&self) -> &Ring {
        &self.rs.ring
    }

    pub fn ring_arc(&self) -> &Arc<Ring> {
        &self.rs.ring
    }

    pub fn rewrite_system(&self) -> &RewriteSystem {
        &self.rs
    }

    /// `m * g` in normal form.
    pub fn mono_times_gen(&self, m: &Monomial, g: Gen) -> Rc<Element> {
        if let Some(e) = self.memo.borrow().get(&(*m, g)) {
            return e.clone();
        }
        let result = match m.last() {
            None => Element::gen(g),
            Some(h) if g > h => Element::monomial(m.times(g), Coeff::one()),
            Some(h) if g == h => match self.rs.get(g, g) {
                Some(rule) => self.mono_times_element(&m.without(g), rule),
                None => Element::monomial(m.times(g), Coeff::one()),
            },
            Some(h) => {
                let rule = self.rs.get(h, g).expect("validated rewrite system");
                self.mono_times_element(&m.without(h), rule)
            }
        };
        let rc = Rc::new(result);
        self.memo.borrow_mut().insert((*m, g), rc.clone());
        rc
    }

    /// `m * e` for a monomial `m` and a normal-form element `e`.
    fn mono_times_element(&self, m: &Monomial, e: &Element) -> Element {
        let mut out = Element::zero();
        for (w, c) in &e.terms {
            let prod = self.mono_times_mono(m, w);
            for (mm, cc) in &prod.terms {
                out.add_term(*mm, &self.ring().mul(c, cc));
            }
        }
        out
    }

    pub fn mono_times_mono(&self, m: &Monomial, w: &Monomial) -> Element {
        let mut cur = Element::monomial(*m, Coeff::one());
        for g in w.letters() {
            cur = self.element_times_gen(&cur, g);
        }
        cur
    }

    fn element_times_gen(&self, e: &Element, g: Gen) -> Element {
        let mut out = Element::zero();
        for (m, c) in &e.terms {
            let p = self.mono_times_gen(m, g);
            if c.is_one() {
                out.add_assign(&p);
            } else {
                for (mm, cc) in &p.terms {
                    out.add_term(*mm, &self.ring().mul(c, cc));
                }
            }
        }
        out
    }

    /// Normal form of a word; the empty word gives 1.
    pub fn normal_order(&self, word: &[Gen]) -> Element {
        let mut cur = Element::one();
        for &g in word {
            cur = self.element_times_gen(&cur, g);
        }
        cur
    }

    pub fn multiply(&self, a: &Element, b: &Element) -> Element {
        let mut out = Element::zero();
        for (m1, c1) in &a.terms {
            for (m2, c2) in &b.terms {
                let c = self.ring().mul(c1, c2);
                let p = self.mono_times_mono(m1, m2);
                for (m, cc) in &p.terms {
                    out.add_term(*m, &self.ring().mul(&c, cc));
                }
            }
        }
        out
    }

    /// Normal form of an arbitrary (possibly non-canonical) sum of words.
    pub fn normal_order_sum(&self, words: &[(Vec<Gen>, Coeff)]) -> Element {
        let mut out = Element::zero();
        for (w, c) in words {
            out.add_assign(&self.normal_order(w).scale(self.ring(), c));
        }
        out
    }

    /// `[x, y]` with the super sign: anticommutator iff both are odd.
    pub fn supercommutator(&self, x: &Element, y: &Element) -> Element {
        let xy = self.multiply(x, y);
        let yx = self.multiply(y, x);
        if x.parity() == Some(true) && y.parity() == Some(true) {
            xy.add(&yx)
        } else {
            xy.sub(&yx)
        }
    }

    pub fn tensor_multiply(&self, a: &Tensor, b: &Tensor) -> Tensor {
        let ring = self.ring();
        let mut out = Tensor::zero();
        for ((u1, v1), c1) in &a.terms {
            for ((u2, v2), c2) in &b.terms {
                let c = ring.mul(c1, c2);
                let left = self.mono_times_mono(u1, u2);
                let right = self.mono_times_mono(v1, v2);
                for (l, cl) in &left.terms {
                    let cl = ring.mul(&c, cl);
                    for (r, cr) in &right.terms {
                        out.add_term(*l, *r, &ring.mul(&cl, cr));
                    }
                }
            }
        }
        out
    }

    /// Normal-order both slots of a tensor built from arbitrary monomials.
    pub fn counit(&self, m: &Monomial) -> Coeff {
        counit(m)
    }
}

/// The counit: alpha = beta = gamma = a = b = c = 0, eta = d = 1.
pub fn counit(m: &Monomial) -> Coeff {
    let e = m.0;
    let vanishing = [Gen::Beta, Gen::Alpha, Gen::Gamma, Gen::B, Gen::A, Gen::C];
    if vanishing.iter().all(|g| e[g.index()] == 0) {
        Coeff::one()
    } else {
        Coeff::zero()
    }
}

/// Element of the tensor square, `(u ⊗ v) -> coefficient`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Tensor {
    terms: BTreeMap<(Monomial, Monomial), Coeff>,
}

impl Tensor {
    pub fn zero() -> Tensor {
        Tensor::default()
    }

    pub fn unit() -> Tensor {
        Tensor::simple(Monomial::ONE, Monomial::ONE, Coeff::one())
    }

    pub fn simple(u: Monomial, v: Monomial, c: Coeff) -> Tensor {
        let mut t = Tensor::zero();
        t.add_term(u, v, &c);
        t
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Monomial, Monomial), &Coeff)> {
        self.terms.iter()
    }

    pub fn coeff(&self, u: &Monomial, v: &Monomial) -> Coeff {
        self.terms.get(&(*u, *v)).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, u: Monomial, v: Monomial, c: &Coeff) {
        if c.is_zero() {
            return;
        }
        let key = (u, v);
        let remove = match self.terms.get_mut(&key) {
            Some(x) => {
                x.add_assign_ref(c);
                x.is_zero()
            }
            None => {
                self.terms.insert(key, c.clone());
                false
            }
        };
        if remove {
            self.terms.remove(&key);
        }
    }

    pub fn add_assign(&mut self, other: &Tensor) {
        for ((u, v), c) in &other.terms {
            self.add_term(*u, *v, c);
        }
    }

    pub fn add_scaled(&mut self, ring: &Ring, other: &Tensor, s: &Coeff) {
        for ((u, v), c) in &other.terms {
            self.add_term(*u, *v, &ring.mul(c, s));
        }
    }

    pub fn sub(&self, other: &Tensor) -> Tensor {
        let mut t = self.clone();
        for ((u, v), c) in &other.terms {
            t.add_term(*u, *v, &-c);
        }
        t
    }

    /// `(ε ⊗ id)` or `(id ⊗ ε)` depending on `slot` (0 or 1).
    pub fn apply_counit(&self, ring: &Ring, slot: usize) -> Element {
        let mut e = Element::zero();
        for ((u, v), c) in &self.terms {
            let (k, keep) = if slot == 0 { (u, v) } else { (v, u) };
            let eps = counit(k);
            if !eps.is_zero() {
                e.add_term(*keep, &ring.mul(c, &eps));
            }
        }
        e
    }

    pub fn display(&self, ring: &Ring) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for ((u, v), c) in &self.terms {
            parts.push(alloc::format!(
                "({})*{}⊗{}",
                ring.display(c),
                u.display(),
                v.display()
            ));
        }
        parts.join(" + ")
    }
}

/// n-fold tensor, `(m_1 ⊗ ... ⊗ m_n) -> coefficient`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MultiTensor {
    arity: usize,
    terms: BTreeMap<Vec<Monomial>, Coeff>,
}

impl MultiTensor {
    pub fn from_element(e: &Element) -> MultiTensor {
        let mut t = MultiTensor {
            arity: 1,
            terms: BTreeMap::new(),
        };
        for (m, c) in e.terms() {
            t.add_term(alloc::vec![*m], c);
        }
        t
    }

    pub fn new(arity: usize) -> MultiTensor {
        MultiTensor {
            arity,
            terms: BTreeMap::new(),
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<Monomial>, &Coeff)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, k: Vec<Monomial>, c: &Coeff) {
        debug_assert_eq!(k.len(), self.arity);
        if c.is_zero() {
            return;
        }
        let remove = match self.terms.get_mut(&k) {
            Some(x) => {
                x.add_assign_ref(c);
                x.is_zero()
            }
            None => {
                self.terms.insert(k.clone(), c.clone());
                false
            }
        };
        if remove {
            self.terms.remove(&k);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn ring() -> Arc<Ring> {
        Arc::new(Ring::new(&["x", "z"]).unwrap())
    }

    #[test]
    fn canonical_letters_and_order() {
        let m = Monomial([1, 2, 1, 0, 0, 0, 0, 1]);
        let w: Vec<Gen> = m.letters().collect();
        assert_eq!(w, vec![Gen::Beta, Gen::Eta, Gen::Eta, Gen::Alpha, Gen::C]);
        assert_eq!(m.last(), Some(Gen::C));
        assert!(m.is_odd());
        let ba = Monomial::gen(Gen::Beta).times(Gen::Alpha);
        let eg = Monomial::gen(Gen::Eta).times(Gen::Gamma);
        assert_eq!(ba.term_cmp(&eg), Ordering::Less);
    }

    #[test]
    fn commutative_system_sorts_words() {
        let alg = Algebra::new(RewriteSystem::commutative(ring())).unwrap();
        let e = alg.normal_order(&[Gen::C, Gen::Alpha, Gen::Beta, Gen::Alpha]);
        let m = Monomial([1, 0, 2, 0, 0, 0, 0, 1]);
        assert_eq!(e, Element::monomial(m, Coeff::one()));
        assert_eq!(alg.normal_order(&[]), Element::one());
    }

    #[test]
    fn incomplete_system_is_rejected() {
        let mut rs = RewriteSystem::commutative(ring());
        rs.rules.remove(&(Gen::C, Gen::D));
        assert_eq!(
            Algebra::new(rs).err(),
            Some(AlgebraError::IncompleteRewriteSystem("c", "d"))
        );
    }

    #[test]
    fn increasing_rule_is_rejected() {
        let mut rs = RewriteSystem::commutative(ring());
        rs.insert(Gen::Eta, Gen::Beta, Element::monomial(Monomial::gen(Gen::C).times(Gen::C), Coeff::one()));
        assert!(matches!(
            Algebra::new(rs).err(),
            Some(AlgebraError::NonDecreasingRule(..))
        ));
    }

    #[test]
    fn display_round_trip_shape() {
        let r = ring();
        let mut e = Element::gen(Gen::Beta).scale(&r, &r.var("z").unwrap());
        e.add_term(Monomial::ONE, &Coeff::from_ratio(-1, 2));
        assert_eq!(e.display(&r), "z*beta - 1/2");
    }
}
