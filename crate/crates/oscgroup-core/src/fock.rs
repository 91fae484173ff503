//! Truncated Fock superspace, the ladder operators, realizations of the
//! deformed superalgebra and their numerical verification.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::error::NumericError;
use crate::linalg::{anticommutator, c, commutator, kron, max_abs, max_abs_window, real, Mat, C64};

pub const DEFAULT_N: usize = 60;
pub const DEFAULT_SAFE_BAND: usize = 5;
pub const DEFAULT_TOL: f64 = 1e-10;

/// Bosonic levels `0..n_boson` times a two-level fermion; basis index of
/// `|n; j⟩` is `2n + j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FockSpace {
    pub n_boson: usize,
    pub safe_band: usize,
}

impl FockSpace {
    pub fn new(n_boson: usize, safe_band: usize) -> Result<FockSpace, NumericError> {
        if n_boson < 8 {
            return Err(NumericError::SpaceTooSmall(n_boson));
        }
        if safe_band >= n_boson {
            return Err(NumericError::InvalidRealization(format!(
                "safe band {safe_band} leaves no levels of {n_boson}"
            )));
        }
        Ok(FockSpace { n_boson, safe_band })
    }

    pub fn dim(&self) -> usize {
        2 * self.n_boson
    }

    pub fn index(&self, n: usize, j: usize) -> usize {
        2 * n + j
    }

    pub fn state(&self, i: usize) -> (usize, usize) {
        (i / 2, i % 2)
    }

    /// Number of bosonic levels trusted by assertions.
    pub fn safe_levels(&self) -> usize {
        self.n_boson - self.safe_band
    }

    /// Dimension of the safe subspace `n < N − safe_band`.
    pub fn safe_dim(&self) -> usize {
        2 * self.safe_levels()
    }

    pub fn identity(&self) -> Mat {
        Mat::identity(self.dim(), self.dim())
    }

    /// Embed an `N × N` bosonic operator as `X ⊗ 1`.
    pub fn boson(&self, m: &Mat) -> Mat {
        kron(m, &Mat::identity(2, 2))
    }

    /// Embed a `2 × 2` fermionic operator as `1 ⊗ F`.
    pub fn fermion(&self, m: &Mat) -> Mat {
        kron(&Mat::identity(self.n_boson, self.n_boson), m)
    }
}

/// Bosonic annihilator on `N` levels.
pub fn boson_a(n: usize) -> Mat {
    let mut a = Mat::zeros(n, n);
    for k in 1..n {
        a[(k - 1, k)] = real(libm::sqrt(k as f64));
    }
    a
}

/// Fermionic annihilator: `b|1⟩ = |0⟩`, `b|0⟩ = 0`.
pub fn fermion_b() -> Mat {
    Mat::from_row_slice(2, 2, &[real(0.0), real(1.0), real(0.0), real(0.0)])
}

/// `α·1 + β·b + γ·b† + δ·b†b` as a 2×2 matrix.
pub fn fermion_combination(k: &[C64; 4]) -> Mat {
    Mat::from_row_slice(2, 2, &[k[0], k[1], k[2], k[0] + k[3]])
}

#[derive(Clone, Debug)]
pub struct Ladder {
    pub a: Mat,
    pub ad: Mat,
    pub b: Mat,
    pub bd: Mat,
    pub id: Mat,
}

pub fn ladder_ops(space: &FockSpace) -> Ladder {
    let a = space.boson(&boson_a(space.n_boson));
    let b = space.fermion(&fermion_b());
    Ladder {
        ad: a.adjoint(),
        bd: b.adjoint(),
        a,
        b,
        id: space.identity(),
    }
}

/// Scalar functions of the deformation parameters, written so that the
/// removable singularities are handled.
pub mod scalar {
    /// `cosh(√u)`, continued to `u < 0` as `cos(√−u)`.
    pub fn cosh_sqrt(u: f64) -> f64 {
        if u >= 0.0 {
            libm::cosh(libm::sqrt(u))
        } else {
            libm::cos(libm::sqrt(-u))
        }
    }

    /// `sinh(√u)/√u`, continued to `u ≤ 0`.
    pub fn sinhc_sqrt(u: f64) -> f64 {
        if u.abs() < 1e-8 {
            return 1.0 + u / 6.0 + u * u / 120.0;
        }
        if u > 0.0 {
            let r = libm::sqrt(u);
            libm::sinh(r) / r
        } else {
            let r = libm::sqrt(-u);
            libm::sin(r) / r
        }
    }

    /// `(e^u − 1)/u`.
    pub fn expm1_over(u: f64) -> f64 {
        if u.abs() < 1e-6 {
            1.0 + u / 2.0 + u * u / 6.0
        } else {
            libm::expm1(u) / u
        }
    }

    /// Divided difference `(E(a) − E(b))/(a − b)` of `E(u) = (e^u − 1)/u`,
    /// i.e. `Σ_{n≥1} h_{n−1}(a, b)/(n+1)!`.
    pub fn expm1_over_divided(a: f64, b: f64) -> f64 {
        let scale = 1.0 + a.abs() + b.abs();
        if (a - b).abs() > 1e-3 * scale {
            return (expm1_over(a) - expm1_over(b)) / (a - b);
        }
        // series around the diagonal
        let mut sum = 0.0;
        let mut fact = 2.0; // (n+1)! for n = 1
        // h_{n-1}(a,b) by the recurrence h_m = a^m + b·h_{m−1}
        let mut h = 1.0;
        let mut apow = 1.0;
        for n in 1..80 {
            if n > 1 {
                apow *= a;
                h = apow + b * h;
                fact *= (n + 1) as f64;
            }
            let term = h / fact;
            sum += term;
            if term.abs() < 1e-18 * sum.abs() && n > 4 {
                break;
            }
        }
        sum
    }

    /// `ω = (e^{p+q} − 1)/(p + q)`.
    pub fn omega(p: f64, q: f64) -> f64 {
        expm1_over(p + q)
    }

    /// `e^q/(p+q)·((e^p − 1)/p + (e^{−q} − 1)/q)`, the factor multiplying
    /// `τ` in the bosonic relation at `B̃ = 1`.
    pub fn tau_factor(p: f64, q: f64) -> f64 {
        libm::exp(q) * expm1_over_divided(p, -q)
    }

    /// `e^p/(p+q)·((e^q − 1)/q + (e^{−p} − 1)/p)`.
    pub fn rho_factor(p: f64, q: f64) -> f64 {
        libm::exp(p) * expm1_over_divided(q, -p)
    }

    pub fn tau_tilde(p: f64, q: f64, tau: f64) -> f64 {
        tau / libm::sqrt(omega(p, q)) * tau_factor(p, q)
    }

    pub fn rho_tilde(p: f64, q: f64, rho: f64) -> f64 {
        rho / libm::sqrt(omega(p, q)) * rho_factor(p, q)
    }
}

/// Numeric values of the right-hand sides of the fermionic relations at
/// `B = 1`.
#[derive(Clone, Copy, Debug)]
pub struct FermionicScalars {
    /// `sinh(2√(xz))/(2√(xz))`
    pub sinh2: f64,
    /// `cosh(2√(xz))`
    pub cosh2: f64,
    /// `(1 − cosh 2√(xz))/(4z)`
    pub a_square: f64,
    /// `(1 − cosh 2√(xz))/(4x)`
    pub c_square: f64,
}

impl FermionicScalars {
    pub fn new(x: f64, z: f64) -> FermionicScalars {
        let u = x * z;
        let shc = scalar::sinhc_sqrt(u);
        FermionicScalars {
            sinh2: scalar::sinhc_sqrt(4.0 * u),
            cosh2: scalar::cosh_sqrt(4.0 * u),
            a_square: -x * shc * shc / 2.0,
            c_square: -z * shc * shc / 2.0,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RealizationFamily {
    HyperbolicDeformed,
    Antisym,
    AppB1,
    AppB2,
    AppB3,
    AppB4,
}

impl RealizationFamily {
    pub const ALL: [RealizationFamily; 6] = [
        RealizationFamily::HyperbolicDeformed,
        RealizationFamily::Antisym,
        RealizationFamily::AppB1,
        RealizationFamily::AppB2,
        RealizationFamily::AppB3,
        RealizationFamily::AppB4,
    ];
    pub const APPENDIX: [RealizationFamily; 4] = [
        RealizationFamily::AppB1,
        RealizationFamily::AppB2,
        RealizationFamily::AppB3,
        RealizationFamily::AppB4,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            RealizationFamily::HyperbolicDeformed => "HYPERBOLIC-DEFORMED",
            RealizationFamily::Antisym => "ANTISYM",
            RealizationFamily::AppB1 => "APPB-1",
            RealizationFamily::AppB2 => "APPB-2",
            RealizationFamily::AppB3 => "APPB-3",
            RealizationFamily::AppB4 => "APPB-4",
        }
    }

    pub fn parse(s: &str) -> Result<RealizationFamily, NumericError> {
        let up = s.trim().to_ascii_uppercase();
        Self::ALL
            .into_iter()
            .find(|f| f.tag() == up || (up == "HYPERBOLIC" && *f == RealizationFamily::HyperbolicDeformed))
            .ok_or_else(|| NumericError::InvalidRealization(format!("unknown realization family `{s}`")))
    }
}

/// Choice of the `±` branch. `Upper` is the first (superior) sign.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sign {
    Upper,
    Lower,
}

impl Sign {
    pub fn value(self) -> f64 {
        match self {
            Sign::Upper => 1.0,
            Sign::Lower => -1.0,
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct RealizationParams {
    pub x: f64,
    pub z: f64,
    pub p: f64,
    pub q: f64,
    pub rho: f64,
    pub tau: f64,
    pub h0: f64,
    pub a2: f64,
    pub c1: f64,
    pub c2: f64,
    pub sign: Sign,
}

impl Default for RealizationParams {
    fn default() -> Self {
        RealizationParams {
            x: 0.0,
            z: 0.0,
            p: 0.0,
            q: 0.0,
            rho: 0.0,
            tau: 0.0,
            h0: 0.0,
            a2: 1.0,
            c1: 1.0,
            c2: 1.0,
            sign: Sign::Upper,
        }
    }
}

/// Coefficients of `A`, `C`, `H` on `(1, b, b†, b†b)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FermionCoeffs {
    pub a: [C64; 4],
    pub c: [C64; 4],
    pub h: [C64; 4],
}

fn require(cond: bool, msg: &str) -> Result<(), NumericError> {
    if cond {
        Ok(())
    } else {
        Err(NumericError::InvalidRealization(msg.to_string()))
    }
}

struct Hyp {
    s: f64,
    ch: f64,
    sh: f64,
}

fn hyp(x: f64, z: f64) -> Hyp {
    let s = libm::sqrt(x * z);
    Hyp {
        s,
        ch: libm::cosh(s),
        sh: libm::sinh(s),
    }
}

fn positive_xz(par: &RealizationParams) -> Result<(), NumericError> {
    require(par.x > 0.0 && par.z > 0.0, "this family needs x > 0 and z > 0")
}

/// Coefficients of the fermionic realization. The APPB families use the
/// solutions of the algebraic system; where the printed closed form does
/// not solve it, the solved form is used (see [`printed_coefficients`]).
pub fn fermion_coefficients(
    family: RealizationFamily,
    par: &RealizationParams,
) -> Result<FermionCoeffs, NumericError> {
    let zero = real(0.0);
    let i = c(0.0, 1.0);
    let sg = par.sign.value();
    let h0 = real(par.h0);
    match family {
        RealizationFamily::HyperbolicDeformed => {
            let u = par.x * par.z;
            let shc = scalar::sinhc_sqrt(u);
            let ch = scalar::cosh_sqrt(u);
            Ok(FermionCoeffs {
                a: [zero, real(1.0), real(-par.x * shc * shc / 2.0), zero],
                c: [zero, real(-par.z * shc / (ch + 1.0)), real((ch + 1.0) * shc / 2.0), zero],
                h: [h0, zero, zero, real(ch)],
            })
        }
        RealizationFamily::Antisym => {
            require(par.x > 0.0, "ANTISYM needs x > 0")?;
            let u = par.x * par.z;
            let shc = scalar::sinhc_sqrt(u);
            let ch = scalar::cosh_sqrt(u);
            let mu = libm::sqrt(par.x / 2.0) * shc;
            let r2x = libm::sqrt(2.0 * par.x);
            Ok(FermionCoeffs {
                a: [zero, real(mu), real(-mu), zero],
                c: [zero, real(-(ch - 1.0) / r2x), real((ch + 1.0) / r2x), zero],
                h: [h0, zero, zero, real(ch)],
            })
        }
        RealizationFamily::AppB1 => {
            positive_xz(par)?;
            require(par.a2 != 0.0, "APPB-1 needs a2 != 0")?;
            let Hyp { ch, sh, .. } = hyp(par.x, par.z);
            let (x, z, a2) = (par.x, par.z, par.a2);
            let a0 = i * (sg * ch / libm::sqrt(2.0 * z));
            let c0 = -i * (sg * sh / libm::sqrt(2.0 * x));
            Ok(FermionCoeffs {
                a: [a0, real(1.0 / (2.0 * z * a2)), real(a2), -a0 * 2.0],
                c: [c0, zero, zero, -c0 * 2.0],
                h: [
                    h0,
                    -i * (sg * ch / (2.0 * libm::sqrt(2.0 * z) * a2)),
                    i * (sg * libm::sqrt(z / 2.0) * a2 * ch),
                    zero,
                ],
            })
        }
        RealizationFamily::AppB2 => {
            positive_xz(par)?;
            require(par.a2 != 0.0, "APPB-2 needs a2 != 0")?;
            let Hyp { s, ch, sh } = hyp(par.x, par.z);
            let (x, z, a2) = (par.x, par.z, par.a2);
            let c0 = -i * (sh / libm::sqrt(2.0 * x));
            Ok(FermionCoeffs {
                a: [zero, real((1.0 - libm::cosh(2.0 * s)) / (4.0 * z * a2)), real(a2), zero],
                c: [c0, real(libm::sinh(2.0 * s) / (2.0 * a2 * s)), zero, -c0 * 2.0],
                h: [
                    h0,
                    i * ((libm::cosh(4.0 * s) - 1.0) / (16.0 * a2 * libm::sqrt(2.0 * z) * ch)),
                    i * (a2 * libm::sqrt(z / 2.0) * ch),
                    real(-(libm::cosh(3.0 * s) + 3.0 * ch) / (4.0 * ch)),
                ],
            })
        }
        RealizationFamily::AppB3 => {
            positive_xz(par)?;
            require(par.c1 != 0.0, "APPB-3 needs c1 != 0")?;
            let Hyp { ch, sh, .. } = hyp(par.x, par.z);
            let (x, z, c1) = (par.x, par.z, par.c1);
            let a0 = i * (sg * sh / libm::sqrt(2.0 * z));
            Ok(FermionCoeffs {
                a: [a0, real(-2.0 * libm::sqrt(x / z) * c1 * ch / sh), zero, -a0 * 2.0],
                c: [zero, real(c1), real(-sh * sh / (2.0 * x * c1)), zero],
                h: [
                    h0,
                    -i * (sg * libm::sqrt(x / 2.0) * c1 * ch),
                    -i * (sg * sh * sh / (2.0 * libm::sqrt(2.0 * x) * c1) * ch),
                    real(ch * ch),
                ],
            })
        }
        RealizationFamily::AppB4 => {
            positive_xz(par)?;
            require(par.c2 != 0.0, "APPB-4 needs c2 != 0")?;
            let Hyp { s, ch, sh } = hyp(par.x, par.z);
            let (x, z, c2) = (par.x, par.z, par.c2);
            // the upper sign contains the hyperbolic and antisymmetric realizations
            Ok(FermionCoeffs {
                a: [
                    zero,
                    real((ch + sg) * sh / (2.0 * c2 * s)),
                    real(-libm::sqrt(x / z) * c2 * (ch - sg) / sh),
                    zero,
                ],
                c: [zero, real(-sh * sh / (2.0 * x * c2)), real(c2), zero],
                h: [h0, zero, zero, real(sg * ch)],
            })
        }
    }
}

/// Closed forms exactly as printed for the two APPB families whose
/// printed form differs from [`fermion_coefficients`]; other families are
/// returned unchanged.
pub fn printed_coefficients(
    family: RealizationFamily,
    par: &RealizationParams,
) -> Result<FermionCoeffs, NumericError> {
    let mut k = fermion_coefficients(family, par)?;
    let i = c(0.0, 1.0);
    match family {
        RealizationFamily::AppB2 => {
            let Hyp { s, ch, sh } = hyp(par.x, par.z);
            k.c[1] = real(sh / (2.0 * par.a2 * s));
            k.h[2] = i * (par.a2 * libm::sqrt(par.z / par.x) * (libm::cosh(4.0 * s) - 1.0)
                / (4.0 * core::f64::consts::SQRT_2 * ch));
        }
        RealizationFamily::AppB4 => {
            let Hyp { s, ch, sh } = hyp(par.x, par.z);
            let sg = par.sign.value();
            let (x, z, c2) = (par.x, par.z, par.c2);
            k.a[1] = real((ch - sg) * sh / (2.0 * c2 * s));
            k.a[2] = real(-libm::sqrt(x / z) * c2 * (ch + sg) / sh);
            k.h[3] = real(ch);
        }
        _ => {}
    }
    Ok(k)
}

/// Residuals of the eleven equations obtained by inserting the linear
/// ansatz into the fermionic relations.
pub fn appendix_b_residual(k: &FermionCoeffs, x: f64, z: f64) -> [C64; 11] {
    let f = FermionicScalars::new(x, z);
    let [a0, a1, a2, a3] = k.a;
    let [c0, c1, c2, c3] = k.c;
    let [_, h1, h2, h3] = k.h;
    let half = real(0.5 * (1.0 + f.cosh2));
    let xs = real(x * f.sinh2);
    // √(z/x)·sinh(2√(xz))/2 = z·sinh(2√(xz))/(2√(xz))
    let zs = real(z * f.sinh2);
    [
        a3 + a0 * 2.0,
        c3 + c0 * 2.0,
        a0 * a0 + a1 * a2 - f.a_square,
        c0 * c0 + c1 * c2 - f.c_square,
        a0 * c0 * 2.0 + a1 * c2 + a2 * c1 - f.sinh2,
        h1 * a2 - h2 * a1 + half * a0 + xs * c0,
        h3 * a1 + h1 * a0 * 2.0 - half * a1 - xs * c1,
        h3 * a2 + h2 * a0 * 2.0 + half * a2 + xs * c2,
        h1 * c2 - h2 * c1 - zs * a0 - half * c0,
        h3 * c1 + h1 * c0 * 2.0 + zs * a1 + half * c1,
        h3 * c2 + h2 * c0 * 2.0 - zs * a2 - half * c2,
    ]
}

pub fn max_residual(r: &[C64]) -> f64 {
    r.iter().fold(0.0, |acc, z| acc.max(z.norm()))
}

/// The eight operators of a realization plus the bosonic scalars used.
#[derive(Clone, Debug)]
pub struct Realization {
    pub family: RealizationFamily,
    pub space: FockSpace,
    pub params: RealizationParams,
    pub omega: f64,
    pub tau_tilde: f64,
    pub rho_tilde: f64,
    pub a: Mat,
    pub b: Mat,
    pub c: Mat,
    pub h: Mat,
    pub at: Mat,
    pub bt: Mat,
    pub ct: Mat,
    pub ht: Mat,
}

impl Realization {
    pub fn operators(&self) -> [(&'static str, &Mat); 8] {
        [
            ("A", &self.a),
            ("B", &self.b),
            ("C", &self.c),
            ("H", &self.h),
            ("At", &self.at),
            ("Bt", &self.bt),
            ("Ct", &self.ct),
            ("Ht", &self.ht),
        ]
    }
}

/// Bosonic realization `Ã = √ω a`, `C̃ = √ω a†`, `H̃ = a†a + τ̃ a − ρ̃ a†`.
pub fn bosonic_operators(space: &FockSpace, p: f64, q: f64, rho: f64, tau: f64) -> (Mat, Mat, Mat, f64, f64, f64) {
    let omega = scalar::omega(p, q);
    let tt = scalar::tau_tilde(p, q, tau);
    let rt = scalar::rho_tilde(p, q, rho);
    let a = boson_a(space.n_boson);
    let ad = a.adjoint();
    let so = real(libm::sqrt(omega));
    let at = space.boson(&(&a * so));
    let ct = space.boson(&(&ad * so));
    let ht = space.boson(&(&ad * &a + &a * real(tt) - &ad * real(rt)));
    (at, ct, ht, omega, tt, rt)
}

pub fn realize_with(
    family: RealizationFamily,
    k: &FermionCoeffs,
    par: &RealizationParams,
    space: &FockSpace,
) -> Realization {
    let (at, ct, ht, omega, tau_tilde, rho_tilde) = bosonic_operators(space, par.p, par.q, par.rho, par.tau);
    Realization {
        family,
        space: *space,
        params: *par,
        omega,
        tau_tilde,
        rho_tilde,
        a: space.fermion(&fermion_combination(&k.a)),
        b: space.identity(),
        c: space.fermion(&fermion_combination(&k.c)),
        h: space.fermion(&fermion_combination(&k.h)),
        at,
        bt: space.identity(),
        ct,
        ht,
    }
}

pub fn realize(
    family: RealizationFamily,
    par: &RealizationParams,
    space: &FockSpace,
) -> Result<Realization, NumericError> {
    let k = fermion_coefficients(family, par)?;
    Ok(realize_with(family, &k, par, space))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Region {
    Full,
    SafeBand,
}

#[derive(Clone, Debug)]
pub struct ResidualEntry {
    pub name: String,
    pub residual: f64,
    pub region: Region,
}

#[derive(Clone, Debug)]
pub struct RelationReport {
    pub entries: Vec<ResidualEntry>,
}

impl RelationReport {
    pub fn max_residual(&self) -> f64 {
        self.entries.iter().fold(0.0, |a, e| a.max(e.residual))
    }

    pub fn max_in(&self, region: Region) -> f64 {
        self.entries
            .iter()
            .filter(|e| e.region == region)
            .fold(0.0, |a, e| a.max(e.residual))
    }

    pub fn passed(&self, tol: f64) -> bool {
        self.entries.iter().all(|e| e.residual <= tol)
    }
}

/// Evaluate every deformed relation (and the vanishing mixed commutators)
/// as a matrix identity. Purely fermionic relations and the mixed ones are
/// measured on the full space; the bosonic ones on the safe band.
pub fn check_relations(r: &Realization) -> RelationReport {
    let par = &r.params;
    let f = FermionicScalars::new(par.x, par.z);
    let id = r.space.identity();
    let half = real(0.5 * (1.0 + f.cosh2));
    let mut entries = Vec::new();
    let mut full = |name: &str, m: Mat| {
        entries.push(ResidualEntry {
            name: name.to_string(),
            residual: max_abs(&m),
            region: Region::Full,
        })
    };
    full("{A,C}", anticommutator(&r.a, &r.c) - &id * real(f.sinh2));
    full("A^2", &r.a * &r.a - &id * real(f.a_square));
    full("C^2", &r.c * &r.c - &id * real(f.c_square));
    full(
        "[H,A]",
        commutator(&r.h, &r.a) + &r.a * half + &r.c * real(par.x * f.sinh2),
    );
    full(
        "[H,C]",
        commutator(&r.h, &r.c) - &r.c * half - &r.a * real(par.z * f.sinh2),
    );
    let untilded = [("A", &r.a), ("B", &r.b), ("C", &r.c), ("H", &r.h)];
    let tilded = [("At", &r.at), ("Bt", &r.bt), ("Ct", &r.ct), ("Ht", &r.ht)];
    for (vn, v) in untilded {
        for (wn, w) in tilded {
            full(&format!("[{vn},{wn}]"), commutator(v, w));
        }
    }
    let k = r.space.safe_dim();
    let mut band = |name: &str, m: Mat| {
        entries.push(ResidualEntry {
            name: name.to_string(),
            residual: max_abs_window(&m, k),
            region: Region::SafeBand,
        })
    };
    band("[At,Ct]", commutator(&r.at, &r.ct) - &id * real(r.omega));
    band(
        "[Ht,At]",
        commutator(&r.ht, &r.at) + &r.at - &id * real(par.rho * scalar::rho_factor(par.p, par.q)),
    );
    band(
        "[Ht,Ct]",
        commutator(&r.ht, &r.ct) - &r.ct - &id * real(par.tau * scalar::tau_factor(par.p, par.q)),
    );
    RelationReport { entries }
}

/// The undeformed operators `A = b, C = b†, H = b†b, Ã = a, C̃ = a†,
/// H̃ = a†a`.
pub fn standard_realization(space: &FockSpace) -> Realization {
    let l = ladder_ops(space);
    Realization {
        family: RealizationFamily::HyperbolicDeformed,
        space: *space,
        params: RealizationParams::default(),
        omega: 1.0,
        tau_tilde: 0.0,
        rho_tilde: 0.0,
        h: &l.bd * &l.b,
        ht: &l.ad * &l.a,
        a: l.b,
        b: l.id.clone(),
        c: l.bd,
        at: l.a,
        bt: l.id,
        ct: l.ad,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn space() -> FockSpace {
        FockSpace::new(12, 3).unwrap()
    }

    #[test]
    fn ladder_matrix_elements() {
        let s = space();
        let l = ladder_ops(&s);
        assert_eq!(l.bd[(s.index(0, 1), s.index(0, 0))], real(1.0));
        assert!((l.a[(s.index(4, 0), s.index(5, 0))] - real(libm::sqrt(5.0))).norm() < 1e-15);
        assert_eq!(max_abs(&(&l.b * &l.b)), 0.0);
        assert_eq!(max_abs(&(anticommutator(&l.b, &l.bd) - &l.id)), 0.0);
    }

    #[test]
    fn omega_removable_point() {
        assert_eq!(scalar::omega(0.3, -0.3), 1.0);
        assert!((scalar::omega(1e-9, 0.0) - 1.0).abs() < 1e-9);
        let d = scalar::expm1_over_divided(0.2, 0.2 + 1e-9);
        let e = scalar::expm1_over_divided(0.2, 0.25);
        assert!((d - e).abs() < 0.05);
    }

    #[test]
    fn divided_difference_matches_direct_formula() {
        for &(a, b) in &[(0.3, -0.7), (0.01, 0.0101), (-0.5, 0.5), (1.0, -0.2)] {
            let series = {
                let mut sum = 0.0;
                let mut fact = 1.0;
                for n in 1..60 {
                    fact *= (n + 1) as f64;
                    let h: f64 = (0..n).map(|i| libm::pow(a, i as f64) * libm::pow(b, (n - 1 - i) as f64)).sum();
                    sum += h / fact;
                }
                sum
            };
            assert!((scalar::expm1_over_divided(a, b) - series).abs() < 1e-13);
        }
    }

    #[test]
    fn undeformed_limit_is_standard() {
        let s = space();
        let par = RealizationParams::default();
        let r = realize(RealizationFamily::HyperbolicDeformed, &par, &s).unwrap();
        let std = standard_realization(&s);
        for ((n, m1), (_, m2)) in r.operators().iter().zip(std.operators().iter()) {
            assert!(max_abs(&(*m1 - *m2)) < 1e-15, "{n}");
        }
    }

    #[test]
    fn antisym_requires_x() {
        let s = space();
        let par = RealizationParams { x: 0.0, z: 0.2, ..Default::default() };
        assert!(matches!(
            realize(RealizationFamily::Antisym, &par, &s),
            Err(NumericError::InvalidRealization(_))
        ));
    }

    #[test]
    fn undeformed_coefficients_solve_system() {
        let k = FermionCoeffs {
            a: [real(0.0), real(1.0), real(0.0), real(0.0)],
            c: [real(0.0), real(0.0), real(1.0), real(0.0)],
            h: [real(0.0), real(0.0), real(0.0), real(1.0)],
        };
        assert!(max_residual(&appendix_b_residual(&k, 0.0, 0.0)) < 1e-15);
    }
}
