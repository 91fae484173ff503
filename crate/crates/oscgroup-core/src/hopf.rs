//! Coproduct, counit, the pairing with the eight dual generators, formal
//! series in `B`/`B̃`, verification of the dual superalgebra relations and
//! the Γ/Δ/Λ expansion tables.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::rc::Rc;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::cell::RefCell;

use num_bigint::BigInt;

use crate::algebra::{counit, Algebra, Element, Gen, Monomial, MultiTensor, Tensor};
use crate::coeff::{Coeff, Rat, Ring};
use crate::error::DualError;
use crate::rmatrix::RMatrixInstance;

/// `Δ` on a generator, read off `Δ t_ij = Σ_k t_ik ⊗ t_kj`.
pub fn generator_coproduct(g: Gen) -> Tensor {
    let one = Monomial::ONE;
    let m = Monomial::gen;
    let mut t = Tensor::zero();
    let mut add = |u: Monomial, v: Monomial| t.add_term(u, v, &Coeff::one());
    match g {
        Gen::Alpha => {
            add(one, m(Gen::Alpha));
            add(m(Gen::Alpha), m(Gen::Eta));
        }
        Gen::Beta => {
            add(one, m(Gen::Beta));
            add(m(Gen::Alpha), m(Gen::Gamma));
            add(m(Gen::Beta), one);
        }
        Gen::Eta => add(m(Gen::Eta), m(Gen::Eta)),
        Gen::Gamma => {
            add(m(Gen::Eta), m(Gen::Gamma));
            add(m(Gen::Gamma), one);
        }
        Gen::B => {
            add(m(Gen::B), one);
            add(m(Gen::A), m(Gen::C));
            add(one, m(Gen::B));
        }
        Gen::A => {
            add(m(Gen::A), m(Gen::D));
            add(one, m(Gen::A));
        }
        Gen::D => add(m(Gen::D), m(Gen::D)),
        Gen::C => {
            add(m(Gen::C), one);
            add(m(Gen::D), m(Gen::C));
        }
    }
    t
}

/// Dual generators. `A` and `C` are odd, the rest even.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DualGen {
    A,
    B,
    C,
    DualH,
    ATilde,
    BTilde,
    CTilde,
    DualHTilde,
}

impl DualGen {
    pub const ALL: [DualGen; 8] = [
        DualGen::A,
        DualGen::B,
        DualGen::C,
        DualGen::DualH,
        DualGen::ATilde,
        DualGen::BTilde,
        DualGen::CTilde,
        DualGen::DualHTilde,
    ];
    pub const UNTILDED: [DualGen; 4] = [DualGen::A, DualGen::B, DualGen::C, DualGen::DualH];
    pub const TILDED: [DualGen; 4] = [
        DualGen::ATilde,
        DualGen::BTilde,
        DualGen::CTilde,
        DualGen::DualHTilde,
    ];

    pub fn is_odd(self) -> bool {
        matches!(self, DualGen::A | DualGen::C)
    }

    pub fn name(self) -> &'static str {
        match self {
            DualGen::A => "A",
            DualGen::B => "B",
            DualGen::C => "C",
            DualGen::DualH => "H",
            DualGen::ATilde => "At",
            DualGen::BTilde => "Bt",
            DualGen::CTilde => "Ct",
            DualGen::DualHTilde => "Ht",
        }
    }
}

/// Kronecker-delta pairing of a dual generator with a canonical monomial.
pub fn pair_generator_int(v: DualGen, m: &Monomial) -> i64 {
    let e = |g: Gen| m.exp(g);
    let (k, l, mm, n) = (e(Gen::Beta), e(Gen::Eta), e(Gen::Alpha), e(Gen::Gamma));
    let (r, s, t, u) = (e(Gen::B), e(Gen::A), e(Gen::D), e(Gen::C));
    let bos_zero = r == 0 && s == 0 && u == 0;
    let fer_zero = k == 0 && mm == 0 && n == 0;
    let hit = match v {
        DualGen::A => k == 0 && mm == 1 && n == 0 && bos_zero,
        DualGen::B => k == 1 && mm == 0 && n == 0 && bos_zero,
        DualGen::C => k == 0 && mm == 0 && n == 1 && bos_zero,
        DualGen::DualH => return if fer_zero && bos_zero { l as i64 } else { 0 },
        DualGen::ATilde => fer_zero && s == 1 && r == 0 && u == 0,
        DualGen::BTilde => fer_zero && r == 1 && s == 0 && u == 0,
        DualGen::CTilde => fer_zero && u == 1 && r == 0 && s == 0,
        DualGen::DualHTilde => return if fer_zero && bos_zero { t as i64 } else { 0 },
    };
    hit as i64
}

pub fn pair_generator(v: DualGen, m: &Monomial) -> Coeff {
    Coeff::from_int(pair_generator_int(v, m))
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::from(1), |a, k| a * BigInt::from(k))
}

fn inv_factorial(n: usize) -> Rat {
    Rat::new(BigInt::from(1), factorial(n))
}

type CoeffFn = Arc<dyn Fn(usize) -> Coeff + Send + Sync>;

/// Formal power series `Σ_n c_n X^n` in one even dual generator.
#[derive(Clone)]
pub struct Series {
    pub var: DualGen,
    pub name: String,
    coeff: CoeffFn,
}

impl core::fmt::Debug for Series {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "Series({} in {})", self.name, self.var.name())
    }
}

impl Series {
    pub fn new(var: DualGen, name: &str, coeff: impl Fn(usize) -> Coeff + Send + Sync + 'static) -> Series {
        Series {
            var,
            name: name.to_string(),
            coeff: Arc::new(coeff),
        }
    }

    pub fn coeff(&self, n: usize) -> Coeff {
        (self.coeff)(n)
    }

    /// `Σ_i scale·u^i/(2i+1)! X^{2i+1}`; with `u = 4xz` this is
    /// `scale·sinh(2X√(xz))/(2√(xz))`.
    pub fn sinh_odd(ring: Arc<Ring>, var: DualGen, u: Coeff, scale: Coeff) -> Series {
        Series::new(var, "sinh", move |n| {
            if n % 2 == 0 {
                return Coeff::zero();
            }
            let i = (n - 1) / 2;
            ring.mul(&scale, &ring.pow(&u, i as u32)).scale(&inv_factorial(n))
        })
    }

    /// `Σ_{i≥1} first·u^{i−1}/(2i)! X^{2i}` (a `cosh − 1` shape).
    pub fn cosh_even(ring: Arc<Ring>, var: DualGen, first: Coeff, u: Coeff) -> Series {
        Series::new(var, "cosh-1", move |n| {
            if n == 0 || n % 2 == 1 {
                return Coeff::zero();
            }
            let i = n / 2;
            ring.mul(&first, &ring.pow(&u, i as u32 - 1)).scale(&inv_factorial(n))
        })
    }

    /// `(e^{vX} − 1)/v = Σ_{n≥1} v^{n−1}/n! X^n`.
    pub fn expm1_over(ring: Arc<Ring>, var: DualGen, v: Coeff) -> Series {
        Series::new(var, "expm1", move |n| {
            if n == 0 {
                return Coeff::zero();
            }
            ring.pow(&v, n as u32 - 1).scale(&inv_factorial(n))
        })
    }

    /// `e^{aX}/(a+b) · ((e^{bX}−1)/b + (e^{−aX}−1)/a)`, expanded with
    /// complete homogeneous sums so no division is needed.
    pub fn shifted_exp(ring: Arc<Ring>, var: DualGen, a: Coeff, b: Coeff) -> Series {
        Series::new(var, "shift", move |n| {
            let neg_a = -&a;
            // h_m(b, −a) = Σ_{i=0}^m b^i (−a)^{m−i}
            let h = |m: usize| {
                let mut acc = Coeff::zero();
                for i in 0..=m {
                    acc.add_assign_ref(&ring.mul(
                        &ring.pow(&b, i as u32),
                        &ring.pow(&neg_a, (m - i) as u32),
                    ));
                }
                acc
            };
            let mut acc = Coeff::zero();
            for j in 2..=n {
                let k = n - j;
                let term = ring
                    .mul(&ring.pow(&a, k as u32), &h(j - 2))
                    .scale(&(inv_factorial(k) * inv_factorial(j)));
                acc.add_assign_ref(&term);
            }
            acc
        })
    }
}

/// `scalar · left · series · right` (series absent means the bare word).
#[derive(Clone, Debug)]
pub struct RhsTerm {
    pub scalar: Coeff,
    pub left: Vec<DualGen>,
    pub series: Option<Series>,
    pub right: Vec<DualGen>,
}

impl RhsTerm {
    pub fn word(scalar: Coeff, w: &[DualGen]) -> RhsTerm {
        RhsTerm {
            scalar,
            left: w.to_vec(),
            series: None,
            right: Vec::new(),
        }
    }

    pub fn series(scalar: Coeff, left: &[DualGen], se: Series, right: &[DualGen]) -> RhsTerm {
        RhsTerm {
            scalar,
            left: left.to_vec(),
            series: Some(se),
            right: right.to_vec(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Lhs {
    /// `[V, W]`, anticommutator iff both odd.
    Super(DualGen, DualGen),
    /// `V^2`.
    Square(DualGen),
}

#[derive(Clone, Debug)]
pub struct DualRelation {
    pub name: String,
    pub lhs: Lhs,
    pub rhs: Vec<RhsTerm>,
}

/// Deformation parameters the dual relations depend on, read off an
/// R-matrix.
#[derive(Clone, Debug)]
pub struct DualParams {
    pub x: Coeff,
    pub z: Coeff,
    pub p: Coeff,
    pub q: Coeff,
    pub rho: Coeff,
    pub tau: Coeff,
}

impl DualParams {
    pub fn from_rmatrix(r: &RMatrixInstance) -> DualParams {
        DualParams {
            x: r.get((2, 3, 2, 3)),
            z: r.get((1, 2, 1, 2)),
            p: r.p_value.clone(),
            q: r.q_value.clone(),
            rho: r.get((5, 3, 4, 3)),
            // the bosonic dual relations are stated with the opposite sign
            // convention for tau than the R-matrix entry r^{54}_{53}
            tau: -&r.get((5, 4, 5, 3)),
        }
    }
}

/// The eight deformed relations: `{A,C}`, `A²`, `C²`, `[H,A]`, `[H,C]`,
/// `[Ã,C̃]`, `[H̃,Ã]`, `[H̃,C̃]`.
pub fn deformed_relations(ring: &Arc<Ring>, par: &DualParams) -> Vec<DualRelation> {
    use DualGen::*;
    let r = ring.clone();
    let u = ring.mul(&ring.mul(&par.x, &par.z), &Coeff::from_int(4));
    let half_u = u.scale(&Rat::new(1.into(), 2.into()));
    let one = Coeff::one;
    let rel = |name: &str, lhs: Lhs, rhs: Vec<RhsTerm>| DualRelation {
        name: name.to_string(),
        lhs,
        rhs,
    };
    vec![
        rel(
            "{A,C}",
            Lhs::Super(A, C),
            vec![RhsTerm::series(one(), &[], Series::sinh_odd(r.clone(), B, u.clone(), one()), &[])],
        ),
        rel(
            "A^2",
            Lhs::Square(A),
            vec![RhsTerm::series(one(), &[], Series::cosh_even(r.clone(), B, -&par.x, u.clone()), &[])],
        ),
        rel(
            "C^2",
            Lhs::Square(C),
            vec![RhsTerm::series(one(), &[], Series::cosh_even(r.clone(), B, -&par.z, u.clone()), &[])],
        ),
        rel(
            "[H,A]",
            Lhs::Super(DualH, A),
            vec![
                RhsTerm::word(Coeff::from_int(-1), &[A]),
                RhsTerm::series(one(), &[A], Series::cosh_even(r.clone(), B, -&half_u, u.clone()), &[]),
                RhsTerm::series(one(), &[], Series::sinh_odd(r.clone(), B, u.clone(), -&par.x), &[C]),
            ],
        ),
        rel(
            "[H,C]",
            Lhs::Super(DualH, C),
            vec![
                RhsTerm::word(one(), &[C]),
                RhsTerm::series(one(), &[C], Series::cosh_even(r.clone(), B, half_u.clone(), u.clone()), &[]),
                RhsTerm::series(one(), &[], Series::sinh_odd(r.clone(), B, u.clone(), par.z.clone()), &[A]),
            ],
        ),
        rel(
            "[At,Ct]",
            Lhs::Super(ATilde, CTilde),
            vec![RhsTerm::series(one(), &[], Series::expm1_over(r.clone(), BTilde, &par.p + &par.q), &[])],
        ),
        rel(
            "[Ht,At]",
            Lhs::Super(DualHTilde, ATilde),
            vec![
                RhsTerm::word(Coeff::from_int(-1), &[ATilde]),
                RhsTerm::series(
                    par.rho.clone(),
                    &[],
                    Series::shifted_exp(r.clone(), BTilde, par.p.clone(), par.q.clone()),
                    &[],
                ),
            ],
        ),
        rel(
            "[Ht,Ct]",
            Lhs::Super(DualHTilde, CTilde),
            vec![
                RhsTerm::word(one(), &[CTilde]),
                RhsTerm::series(
                    par.tau.clone(),
                    &[],
                    Series::shifted_exp(r, BTilde, par.q.clone(), par.p.clone()),
                    &[],
                ),
            ],
        ),
    ]
}

/// Coproduct and pairing engine over one algebra. Memoizes `Δ` of
/// monomials and word pairings; like [`Algebra`] it is `!Sync`.
pub struct Hopf {
    alg: Algebra,
    cop: RefCell<BTreeMap<Monomial, Rc<Tensor>>>,
    pairs: RefCell<BTreeMap<(Vec<DualGen>, Monomial), Coeff>>,
}

impl Hopf {
    pub fn new(alg: Algebra) -> Hopf {
        Hopf {
            alg,
            cop: RefCell::new(BTreeMap::new()),
            pairs: RefCell::new(BTreeMap::new()),
        }
    }

    pub fn algebra(&self) -> &Algebra {
        &self.alg
    }

    pub fn ring(&self) -> &Ring {
        self.alg.ring()
    }

    /// `Δ(m)` as the product of the generator coproducts of its letters.
    pub fn coproduct_monomial(&self, m: &Monomial) -> Rc<Tensor> {
        if let Some(t) = self.cop.borrow().get(m) {
            return t.clone();
        }
        let t = match m.last() {
            None => Tensor::unit(),
            Some(g) => {
                let head = self.coproduct_monomial(&m.without(g));
                self.alg.tensor_multiply(&head, &generator_coproduct(g))
            }
        };
        let rc = Rc::new(t);
        self.cop.borrow_mut().insert(*m, rc.clone());
        rc
    }

    pub fn coproduct(&self, e: &Element) -> Tensor {
        let mut out = Tensor::zero();
        for (m, c) in e.terms() {
            out.add_scaled(self.ring(), &self.coproduct_monomial(m), c);
        }
        out
    }

    /// Apply `Δ` to one slot of a multi-tensor.
    pub fn coproduct_at(&self, t: &MultiTensor, slot: usize) -> MultiTensor {
        let ring = self.ring();
        let mut out = MultiTensor::new(t.arity() + 1);
        for (k, c) in t.terms() {
            let d = self.coproduct_monomial(&k[slot]);
            for ((u, v), cd) in d.terms() {
                let mut key = Vec::with_capacity(k.len() + 1);
                key.extend_from_slice(&k[..slot]);
                key.push(*u);
                key.push(*v);
                key.extend_from_slice(&k[slot + 1..]);
                out.add_term(key, &ring.mul(c, cd));
            }
        }
        out
    }

    /// `(Δ ⊗ id^{n−2}) ∘ … ∘ Δ`, `n − 1` applications, always splitting the
    /// first slot.
    pub fn iterated_coproduct(&self, e: &Element, n: usize) -> MultiTensor {
        assert!(n >= 1, "order must be at least 1");
        let mut t = MultiTensor::from_element(e);
        for _ in 1..n {
            t = self.coproduct_at(&t, 0);
        }
        t
    }

    /// Same as [`Hopf::iterated_coproduct`] but splitting the last slot.
    pub fn iterated_coproduct_right(&self, e: &Element, n: usize) -> MultiTensor {
        assert!(n >= 1, "order must be at least 1");
        let mut t = MultiTensor::from_element(e);
        for k in 1..n {
            t = self.coproduct_at(&t, k - 1);
        }
        t
    }

    pub fn counit(&self, e: &Element) -> Coeff {
        let mut acc = Coeff::zero();
        for (m, c) in e.terms() {
            acc.add_assign_ref(&self.ring().mul(c, &counit(m)));
        }
        acc
    }

    /// `(V_1 ⋯ V_n, m) = (V_1 ⊗ ⋯ ⊗ V_n, Δ^{(n)} m)`; the empty word pairs
    /// through the counit.
    pub fn pair_word_monomial(&self, w: &[DualGen], m: &Monomial) -> Coeff {
        match w.len() {
            0 => return counit(m),
            1 => return pair_generator(w[0], m),
            _ => {}
        }
        let key = (w.to_vec(), *m);
        if let Some(c) = self.pairs.borrow().get(&key) {
            return c.clone();
        }
        let ring = self.ring();
        let mut acc = Coeff::zero();
        let d = self.coproduct_monomial(m);
        for ((u, v), c) in d.terms() {
            let a = pair_generator_int(w[0], u);
            if a == 0 {
                continue;
            }
            let rest = self.pair_word_monomial(&w[1..], v);
            if rest.is_zero() {
                continue;
            }
            acc.add_assign_ref(&ring.mul(c, &rest).scale(&Rat::from_integer(a.into())));
        }
        self.pairs.borrow_mut().insert(key, acc.clone());
        acc
    }

    pub fn pair_word(&self, w: &[DualGen], e: &Element) -> Coeff {
        let mut acc = Coeff::zero();
        for (m, c) in e.terms() {
            let p = self.pair_word_monomial(w, m);
            if !p.is_zero() {
                acc.add_assign_ref(&self.ring().mul(c, &p));
            }
        }
        acc
    }

    /// `(V ⊗ W ∓ W ⊗ V, Δe)`: `+` iff both are odd.
    pub fn pair_supercommutator(&self, v: DualGen, w: DualGen, e: &Element) -> Coeff {
        let vw = self.pair_word(&[v, w], e);
        let wv = self.pair_word(&[w, v], e);
        if v.is_odd() && w.is_odd() {
            &vw + &wv
        } else {
            &vw - &wv
        }
    }

    /// Pair `left · Σ_{n≤K} c_n X^n · right` with `e`. Exact as soon as `K`
    /// reaches the degree of `e`, since `(X^n, m) = 0` for `n > deg m`.
    pub fn pair_series_term(
        &self,
        left: &[DualGen],
        se: &Series,
        right: &[DualGen],
        e: &Element,
        order: usize,
    ) -> Result<Coeff, DualError> {
        let degree = e.degree();
        if order < degree {
            return Err(DualError::TruncationTooSmall { order, degree });
        }
        let mut acc = Coeff::zero();
        for n in 0..=order {
            let c = se.coeff(n);
            if c.is_zero() {
                continue;
            }
            let mut w = left.to_vec();
            w.extend(core::iter::repeat_n(se.var, n));
            w.extend_from_slice(right);
            let p = self.pair_word(&w, e);
            if !p.is_zero() {
                acc.add_assign_ref(&self.ring().mul(&c, &p));
            }
        }
        Ok(acc)
    }

    pub fn pair_series(&self, se: &Series, e: &Element, order: usize) -> Result<Coeff, DualError> {
        self.pair_series_term(&[], se, &[], e, order)
    }

    pub fn pair_lhs(&self, lhs: Lhs, e: &Element) -> Coeff {
        match lhs {
            Lhs::Super(v, w) => self.pair_supercommutator(v, w, e),
            Lhs::Square(v) => self.pair_word(&[v, v], e),
        }
    }

    pub fn pair_rhs(&self, rhs: &[RhsTerm], e: &Element, order: usize) -> Result<Coeff, DualError> {
        let mut acc = Coeff::zero();
        for t in rhs {
            let v = match &t.series {
                Some(se) => self.pair_series_term(&t.left, se, &t.right, e, order)?,
                None => self.pair_word(&t.left, e),
            };
            acc.add_assign_ref(&self.ring().mul(&t.scalar, &v));
        }
        Ok(acc)
    }
}

/// Canonical monomials of total degree `≤ max_degree`. Odd generators are
/// capped at exponent 1 when the algebra rewrites their squares.
pub fn monomial_corpus(alg: &Algebra, max_degree: usize) -> Vec<Monomial> {
    let rs = alg.rewrite_system();
    let cap = |g: Gen| -> u8 {
        if g.is_odd() && rs.get(g, g).is_some() {
            1
        } else {
            u8::MAX
        }
    };
    let mut out = Vec::new();
    let mut cur = [0u8; 8];
    fn rec(
        i: usize,
        left: usize,
        cur: &mut [u8; 8],
        out: &mut Vec<Monomial>,
        cap: &dyn Fn(Gen) -> u8,
    ) {
        if i == 8 {
            out.push(Monomial(*cur));
            return;
        }
        let g = Gen::from_index(i);
        let hi = left.min(cap(g) as usize);
        for k in 0..=hi {
            cur[i] = k as u8;
            rec(i + 1, left - k, cur, out, cap);
        }
        cur[i] = 0;
    }
    rec(0, max_degree, &mut cur, &mut out, &cap);
    out.sort_by(|a, b| a.term_cmp(b));
    out
}

#[derive(Clone, Debug, Default)]
pub struct RelationCheck {
    pub name: String,
    pub checked: usize,
    /// Monomials where the two sides disagree, with `lhs − rhs`.
    pub failures: Vec<(Monomial, Coeff)>,
}

impl RelationCheck {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Clone, Debug, Default)]
pub struct DualReport {
    pub degree: usize,
    pub corpus_size: usize,
    pub deformed: Vec<RelationCheck>,
    pub mixed: Vec<RelationCheck>,
}

impl DualReport {
    pub fn passed(&self) -> bool {
        self.deformed.iter().chain(&self.mixed).all(|c| c.passed())
    }
}

/// Check every deformed relation and every mixed commutator `[V, W̃]`
/// pointwise on all canonical monomials of degree `≤ degree`.
pub fn verify_dual_relations(
    hopf: &Hopf,
    params: &DualParams,
    ring: &Arc<Ring>,
    degree: usize,
) -> Result<DualReport, DualError> {
    let corpus = monomial_corpus(hopf.algebra(), degree);
    let rels = deformed_relations(ring, params);
    let mut rep = DualReport {
        degree,
        corpus_size: corpus.len(),
        ..Default::default()
    };
    for rel in &rels {
        let mut chk = RelationCheck {
            name: rel.name.clone(),
            ..Default::default()
        };
        for m in &corpus {
            let e = Element::monomial(*m, Coeff::one());
            let l = hopf.pair_lhs(rel.lhs, &e);
            let r = hopf.pair_rhs(&rel.rhs, &e, m.degree())?;
            chk.checked += 1;
            let d = &l - &r;
            if !d.is_zero() {
                chk.failures.push((*m, d));
            }
        }
        rep.deformed.push(chk);
    }
    for v in DualGen::UNTILDED {
        for w in DualGen::TILDED {
            let mut chk = RelationCheck {
                name: format!("[{},{}]", v.name(), w.name()),
                ..Default::default()
            };
            for m in &corpus {
                let e = Element::monomial(*m, Coeff::one());
                let d = hopf.pair_supercommutator(v, w, &e);
                chk.checked += 1;
                if !d.is_zero() {
                    chk.failures.push((*m, d));
                }
            }
            rep.mixed.push(chk);
        }
    }
    Ok(rep)
}

// ---------------------------------------------------------------------------
// Expansion tables

/// Γ/Δ split of `Δ(β^k η^l)`: slot 1 `β^v η^{w+l} α^i γ^j`, slot 2
/// `β^{v′} η^{w′+l} α^{i′} γ^{j′}`; Γ collects `(i′, j′) = (i, j)` and Δ
/// collects `(i′, j′) = (1−i, 1−j)`.
#[derive(Clone, Debug, Default)]
pub struct FermionicExpansion {
    pub k: u8,
    pub l: u8,
    pub tensor: Tensor,
    /// `(i, j, v, w, v′, w′) -> Γ^{k,ij}_{vw;v′w′}`
    pub gamma: BTreeMap<(u8, u8, u8, i32, u8, i32), Coeff>,
    /// `(i, j, v, w, v′, w′) -> Δ^{k,ij}_{vw;v′w′}`
    pub delta: BTreeMap<(u8, u8, u8, i32, u8, i32), Coeff>,
}

impl FermionicExpansion {
    /// Reassemble the tensor from the two tables.
    pub fn rebuild(&self) -> Tensor {
        let mut t = Tensor::zero();
        let l = self.l as i32;
        let mono = |v: u8, w: i32, i: u8, j: u8| Monomial([v, (w + l) as u8, i, j, 0, 0, 0, 0]);
        for ((i, j, v, w, v2, w2), c) in &self.gamma {
            t.add_term(mono(*v, *w, *i, *j), mono(*v2, *w2, *i, *j), c);
        }
        for ((i, j, v, w, v2, w2), c) in &self.delta {
            t.add_term(mono(*v, *w, *i, *j), mono(*v2, *w2, 1 - i, 1 - j), c);
        }
        t
    }
}

pub fn fermionic_expansion(hopf: &Hopf, k: u8, l: u8) -> Result<FermionicExpansion, DualError> {
    let mut m = Monomial::ONE;
    m.0[Gen::Beta.index()] = k;
    m.0[Gen::Eta.index()] = l;
    let t = (*hopf.coproduct_monomial(&m)).clone();
    let mut ex = FermionicExpansion {
        k,
        l,
        ..Default::default()
    };
    for ((u, v), c) in t.terms() {
        if !u.bosonic_part().is_one() || !v.bosonic_part().is_one() {
            return Err(DualError::PatternViolation(format!("{} ⊗ {}", u.display(), v.display())));
        }
        let (i, j) = (u.exp(Gen::Alpha), u.exp(Gen::Gamma));
        let (i2, j2) = (v.exp(Gen::Alpha), v.exp(Gen::Gamma));
        let key = (
            i,
            j,
            u.exp(Gen::Beta),
            u.exp(Gen::Eta) as i32 - l as i32,
            v.exp(Gen::Beta),
            v.exp(Gen::Eta) as i32 - l as i32,
        );
        if (i2, j2) == (i, j) {
            ex.gamma.insert(key, c.clone());
        } else if i <= 1 && j <= 1 && (i2, j2) == (1 - i, 1 - j) {
            ex.delta.insert(key, c.clone());
        } else {
            return Err(DualError::PatternViolation(format!("{} ⊗ {}", u.display(), v.display())));
        }
    }
    ex.tensor = t;
    Ok(ex)
}

/// `Δ(α^m γ^n)`.
pub fn alpha_gamma_expansion(hopf: &Hopf, m: u8, n: u8) -> Tensor {
    let mut mono = Monomial::ONE;
    mono.0[Gen::Alpha.index()] = m;
    mono.0[Gen::Gamma.index()] = n;
    (*hopf.coproduct_monomial(&mono)).clone()
}

/// Λ^r from `Δ(b^r)`: slot 1 `b^k̃ a^l̃ d^m̃`, slot 2 `b^k′ a^l′ d^m′ c^j′`.
#[derive(Clone, Debug, Default)]
pub struct LambdaTable {
    pub r: u8,
    /// `(k̃, l̃, m̃, k′, l′, m′, j′) -> Λ^r`
    pub entries: BTreeMap<(u8, u8, u8, u8, u8, u8, u8), Coeff>,
}

pub fn lambda_table(hopf: &Hopf, r: u8) -> Result<LambdaTable, DualError> {
    let mut m = Monomial::ONE;
    m.0[Gen::B.index()] = r;
    let t = hopf.coproduct_monomial(&m);
    let mut tab = LambdaTable {
        r,
        ..Default::default()
    };
    for ((u, v), c) in t.terms() {
        if !u.fermionic_part().is_one() || !v.fermionic_part().is_one() || u.exp(Gen::C) != 0 {
            return Err(DualError::PatternViolation(format!("{} ⊗ {}", u.display(), v.display())));
        }
        tab.entries.insert(
            (
                u.exp(Gen::B),
                u.exp(Gen::A),
                u.exp(Gen::D),
                v.exp(Gen::B),
                v.exp(Gen::A),
                v.exp(Gen::D),
                v.exp(Gen::C),
            ),
            c.clone(),
        );
    }
    Ok(tab)
}

/// `Δ(b^r a^s d^t c^u)`.
pub fn bosonic_expansion(hopf: &Hopf, r: u8, s: u8, t: u8, u: u8) -> Tensor {
    let m = Monomial([0, 0, 0, 0, r, s, t, u]);
    (*hopf.coproduct_monomial(&m)).clone()
}

#[derive(Clone, Debug)]
pub struct IdentityCheck {
    pub name: String,
    pub expected: Coeff,
    pub found: Coeff,
}

impl IdentityCheck {
    pub fn holds(&self) -> bool {
        self.expected == self.found
    }
}

/// The seven Λ sum identities for one `r`.
pub fn lambda_identities(tab: &LambdaTable) -> Vec<IdentityCheck> {
    let sum = |f: &dyn Fn(&(u8, u8, u8, u8, u8, u8, u8)) -> Option<i64>| {
        let mut acc = Coeff::zero();
        for (k, c) in &tab.entries {
            if let Some(w) = f(k) {
                acc.add_assign_ref(&c.scale(&Rat::from_integer(w.into())));
            }
        }
        acc
    };
    let delta_r1 = if tab.r == 1 { Coeff::one() } else { Coeff::zero() };
    let mk = |name: &str, expected: Coeff, found: Coeff| IdentityCheck {
        name: format!("r={}: {}", tab.r, name),
        expected,
        found,
    };
    vec![
        mk(
            "sum L[0,0,m;0,1,m',0] = 0",
            Coeff::zero(),
            sum(&|k| (k.0 == 0 && k.1 == 0 && k.3 == 0 && k.4 == 1 && k.6 == 0).then_some(1)),
        ),
        mk(
            "sum L[0,1,m;0,0,m',0] = 0",
            Coeff::zero(),
            sum(&|k| (k.0 == 0 && k.1 == 1 && k.3 == 0 && k.4 == 0 && k.6 == 0).then_some(1)),
        ),
        mk(
            "sum L[0,0,m;1,0,m',0] = d_r1",
            delta_r1.clone(),
            sum(&|k| (k.0 == 0 && k.1 == 0 && k.3 == 1 && k.4 == 0 && k.6 == 0).then_some(1)),
        ),
        mk(
            "sum L[1,0,m;0,0,m',0] = d_r1",
            delta_r1,
            sum(&|k| (k.0 == 1 && k.1 == 0 && k.3 == 0 && k.4 == 0 && k.6 == 0).then_some(1)),
        ),
        mk(
            "sum L[0,0,m;0,0,m',1] = 0",
            Coeff::zero(),
            sum(&|k| (k.0 == 0 && k.1 == 0 && k.3 == 0 && k.4 == 0 && k.6 == 1).then_some(1)),
        ),
        mk(
            "sum m*L[0,0,m;0,0,m',0] = 0",
            Coeff::zero(),
            sum(&|k| {
                (k.0 == 0 && k.1 == 0 && k.3 == 0 && k.4 == 0 && k.6 == 0).then_some(k.2 as i64)
            }),
        ),
        mk(
            "sum m'*L[0,0,m;0,0,m',0] = 0",
            Coeff::zero(),
            sum(&|k| {
                (k.0 == 0 && k.1 == 0 && k.3 == 0 && k.4 == 0 && k.6 == 0).then_some(k.5 as i64)
            }),
        ),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rmatrix::{bundled, derive_relations, Family};

    fn hopf(f: Family) -> (Hopf, RMatrixInstance) {
        let r = bundled(f);
        let rel = derive_relations(&r).unwrap();
        (Hopf::new(rel.algebra()), r)
    }

    #[test]
    fn generator_pairings() {
        let m = Monomial([0, 3, 1, 0, 0, 0, 0, 0]);
        assert_eq!(pair_generator_int(DualGen::A, &m), 1);
        assert_eq!(pair_generator_int(DualGen::DualH, &Monomial([0, 2, 0, 0, 0, 0, 0, 0])), 2);
        assert_eq!(pair_generator_int(DualGen::DualHTilde, &Monomial([0, 0, 0, 0, 0, 0, 5, 0])), 5);
        assert_eq!(pair_generator_int(DualGen::B, &Monomial::gen(Gen::Beta)), 1);
    }

    #[test]
    fn coproduct_of_beta() {
        let (h, _) = hopf(Family::A);
        let t = h.coproduct_monomial(&Monomial::gen(Gen::Beta));
        assert_eq!(*t, generator_coproduct(Gen::Beta));
    }

    #[test]
    fn word_pairings_on_beta() {
        let (h, _) = hopf(Family::A);
        let beta = Element::gen(Gen::Beta);
        assert!(h.pair_word(&[DualGen::A, DualGen::C], &beta).is_one());
        assert!(h.pair_supercommutator(DualGen::A, DualGen::C, &beta).is_one());
        let b = Element::gen(Gen::B);
        assert!(h.pair_supercommutator(DualGen::ATilde, DualGen::CTilde, &b).is_one());
    }

    #[test]
    fn truncation_too_small() {
        let (h, r) = hopf(Family::A);
        let ring = r.ring().clone();
        let se = Series::expm1_over(ring, DualGen::BTilde, Coeff::one());
        let e = Element::monomial(Monomial([0, 0, 0, 0, 2, 0, 0, 0]), Coeff::one());
        assert_eq!(
            h.pair_series(&se, &e, 1),
            Err(DualError::TruncationTooSmall { order: 1, degree: 2 })
        );
    }
}
