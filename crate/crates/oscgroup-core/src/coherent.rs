//! Deformed annihilators, their coherent eigenstates, displacement operators,
//! the doubly degenerate isospectral Hamiltonian and its pseudo-Hermitian
//! transform.

use alloc::format;
use alloc::vec::Vec;

use crate::error::NumericError;
use crate::fock::{boson_a, fermion_b, scalar, FockSpace};
use crate::linalg::{c, commutator, expm, kron, max_abs_window, principal_angles, real, Mat, Vector, C64};

/// Largest fraction of a state's norm allowed above the safe band.
pub const MASS_TOLERANCE: f64 = 1e-4;
/// Singular values below this count towards the numerical kernel.
pub const KERNEL_THRESHOLD: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variant {
    /// Fermionic part deformed from `b`: `b + (1 − cosh 2√(xz))/(4z)·b†`.
    Super,
    /// Fermionic part `sinh√(xz)/√(2z)·(b − b†)`.
    Iso,
}

impl Variant {
    pub fn parse(s: &str) -> Result<Variant, NumericError> {
        match s.trim().to_ascii_lowercase().as_str() {
            "super" => Ok(Variant::Super),
            "iso" => Ok(Variant::Iso),
            other => Err(NumericError::InvalidVariant(format!("unknown variant `{other}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct AnnihilatorSpec {
    pub variant: Variant,
    pub x: f64,
    pub z: f64,
    pub omega: f64,
}

/// The `∓` label of the two solutions; `Upper` is the first sign.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Branch {
    Upper,
    Lower,
}

impl Branch {
    pub const BOTH: [Branch; 2] = [Branch::Upper, Branch::Lower];

    pub fn label(self) -> &'static str {
        match self {
            Branch::Upper => "-",
            Branch::Lower => "+",
        }
    }

    fn sign(self) -> f64 {
        match self {
            Branch::Upper => -1.0,
            Branch::Lower => 1.0,
        }
    }
}

/// `√z` for real `z`, as a complex number.
fn csqrt(v: f64) -> C64 {
    if v >= 0.0 {
        real(libm::sqrt(v))
    } else {
        c(0.0, libm::sqrt(-v))
    }
}

impl AnnihilatorSpec {
    pub fn validate(&self) -> Result<(), NumericError> {
        if !(self.omega > 0.0) || !self.omega.is_finite() {
            return Err(NumericError::InvalidVariant(format!("omega must be positive, got {}", self.omega)));
        }
        if self.variant == Variant::Iso && !(self.x > 0.0) {
            return Err(NumericError::InvalidVariant(format!("ISO needs x > 0, got {}", self.x)));
        }
        Ok(())
    }

    /// The fermionic part `F` as `[[0, f01], [f10, 0]]`.
    pub fn fermion_part(&self) -> (C64, C64) {
        let shc = scalar::sinhc_sqrt(self.x * self.z);
        match self.variant {
            // (1 − cosh 2√(xz))/(4z) = −x·(sinh√(xz)/√(xz))²/2
            Variant::Super => (real(1.0), real(-self.x * shc * shc / 2.0)),
            Variant::Iso => {
                let mu = libm::sqrt(self.x / 2.0) * shc;
                (real(mu), real(-mu))
            }
        }
    }

    /// `sinh√(xz)/√(2z)`, continued through `z = 0` as `√(x/2)·sinh√(xz)/√(xz)`.
    pub fn mu(&self) -> C64 {
        csqrt(self.x / 2.0) * scalar::sinhc_sqrt(self.x * self.z)
    }

    /// Eigenvalue of `F` on the given branch: `∓ i·sinh√(xz)/√(2z)`.
    pub fn fermion_eigenvalue(&self, branch: Branch) -> C64 {
        c(0.0, branch.sign()) * self.mu()
    }

    /// Normalized eigenvector of `F` on the given branch.
    pub fn spinor(&self, branch: Branch) -> [C64; 2] {
        let (f01, _) = self.fermion_part();
        let lower = self.fermion_eigenvalue(branch) / f01;
        let n = libm::sqrt(1.0 + lower.norm_sqr());
        [real(1.0 / n), lower / n]
    }

    /// `F` has a single eigenvector when its off-diagonal product vanishes.
    pub fn is_degenerate(&self) -> bool {
        let (f01, f10) = self.fermion_part();
        (f01 * f10).norm() == 0.0
    }
}

/// `𝔸₀ = √ω a + F`.
pub fn build_annihilator(spec: &AnnihilatorSpec, space: &FockSpace) -> Result<Mat, NumericError> {
    spec.validate()?;
    let (f01, f10) = spec.fermion_part();
    let b = fermion_b();
    let f = &b * f01 + b.adjoint() * f10;
    Ok(space.boson(&(boson_a(space.n_boson) * real(libm::sqrt(spec.omega)))) + space.fermion(&f))
}

/// `D(α) = exp(α a† − ᾱ a)` on the bosonic factor.
pub fn displacement(alpha: C64, space: &FockSpace) -> Mat {
    space.boson(&boson_displacement(alpha, space.n_boson))
}

fn boson_displacement(alpha: C64, n: usize) -> Mat {
    let a = boson_a(n);
    expm(&(a.adjoint() * alpha - a * alpha.conj()))
}

/// `D(α)|0⟩` on `n` bosonic levels.
pub fn displaced_vacuum(alpha: C64, n: usize) -> Vector {
    boson_displacement(alpha, n).column(0).into_owned()
}

/// Product state `|φ⟩ ⊗ χ`.
pub fn product_state(boson: &Vector, spinor: &[C64; 2]) -> Vector {
    let s = Mat::from_column_slice(2, 1, spinor);
    let b = Mat::from_column_slice(boson.len(), 1, boson.as_slice());
    kron(&b, &s).column(0).into_owned()
}

/// Norm fraction carried by levels at or above `N − safe_band`.
pub fn mass_outside(v: &Vector, space: &FockSpace) -> f64 {
    let k = space.safe_dim();
    let total = v.norm_squared();
    if total == 0.0 {
        return 0.0;
    }
    v.iter().skip(k).map(|z| z.norm_sqr()).sum::<f64>() / total
}

fn check_mass(v: &Vector, space: &FockSpace) -> Result<f64, NumericError> {
    let m = mass_outside(v, space);
    if m > MASS_TOLERANCE {
        Err(NumericError::TruncationRisk { mass_outside: m })
    } else {
        Ok(m)
    }
}

/// `‖𝔸v − Zv‖/‖v‖`.
pub fn eigen_residual(op: &Mat, v: &Vector, z: C64) -> f64 {
    (op * v - v * z).norm() / v.norm()
}

/// Which displacement argument is used for the `+` branch.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ShiftConvention {
    /// `(Z − λ)/√ω` with `λ` the fermionic eigenvalue of the branch.
    Solved,
    /// `Z/√ω + i sinh√(xz)/√(2zω)` for both branches, as printed.
    Printed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StateKind {
    Branch(Branch),
    /// The second solution when `F` is nilpotent.
    SuperSymmetric,
}

impl StateKind {
    pub fn label(self) -> &'static str {
        match self {
            StateKind::Branch(b) => b.label(),
            StateKind::SuperSymmetric => "susy",
        }
    }
}

#[derive(Clone, Debug)]
pub struct CoherentState {
    pub kind: StateKind,
    pub displacement: C64,
    pub vector: Vector,
    pub residual: f64,
    pub mass_outside: f64,
}

#[derive(Clone, Debug)]
pub struct CoherentStateResult {
    pub z: C64,
    pub states: Vec<CoherentState>,
}

impl CoherentStateResult {
    pub fn max_residual(&self) -> f64 {
        self.states.iter().fold(0.0, |a, s| a.max(s.residual))
    }

    pub fn vectors(&self) -> Vec<Vector> {
        self.states.iter().map(|s| s.vector.clone()).collect()
    }

    pub fn get(&self, kind: StateKind) -> Option<&CoherentState> {
        self.states.iter().find(|s| s.kind == kind)
    }
}

/// `D(Z/√ω)(|1;0⟩ − √ω|0;1⟩)/√(1+ω)`, the second eigenvector of
/// `√ω a + b`.
pub fn supersymmetric_state(omega: f64, z: C64, space: &FockSpace) -> Vector {
    let mut w = Vector::zeros(space.dim());
    let norm = libm::sqrt(1.0 + omega);
    w[space.index(1, 0)] = real(1.0 / norm);
    w[space.index(0, 1)] = real(-libm::sqrt(omega) / norm);
    displacement(z / libm::sqrt(omega), space) * w
}

/// Closed-form eigenstates of `𝔸₀` for eigenvalue `Z`: for each branch,
/// `D(β)|0⟩ ⊗ χ` with `F χ = λ χ` and `√ω β + λ = Z`. When `F` is nilpotent
/// the branches merge and the supersymmetric state is the second solution.
pub fn coherent_closed_form(
    spec: &AnnihilatorSpec,
    z: C64,
    space: &FockSpace,
    convention: ShiftConvention,
) -> Result<CoherentStateResult, NumericError> {
    let a0 = build_annihilator(spec, space)?;
    let so = libm::sqrt(spec.omega);
    let mut states = Vec::new();
    let branches: &[Branch] = if spec.is_degenerate() { &[Branch::Upper] } else { &Branch::BOTH };
    for &branch in branches {
        let beta = match convention {
            ShiftConvention::Solved => (z - spec.fermion_eigenvalue(branch)) / so,
            ShiftConvention::Printed => (z + c(0.0, 1.0) * spec.mu()) / so,
        };
        let v = product_state(&displaced_vacuum(beta, space.n_boson), &spec.spinor(branch));
        states.push(CoherentState {
            kind: StateKind::Branch(branch),
            displacement: beta,
            residual: eigen_residual(&a0, &v, z),
            mass_outside: check_mass(&v, space)?,
            vector: v,
        });
    }
    if spec.is_degenerate() {
        let v = supersymmetric_state(spec.omega, z, space);
        states.push(CoherentState {
            kind: StateKind::SuperSymmetric,
            displacement: z / so,
            residual: eigen_residual(&a0, &v, z),
            mass_outside: check_mass(&v, space)?,
            vector: v,
        });
    }
    Ok(CoherentStateResult { z, states })
}

/// Null space of `𝔸₀ − Z` compressed to the safe band, from the singular
/// value decomposition. Returned vectors are padded to the full space.
pub fn coherent_numeric_kernel(a0: &Mat, z: C64, space: &FockSpace) -> Result<Vec<Vector>, NumericError> {
    let k = space.safe_dim();
    let m = a0.view((0, 0), (k, k)).into_owned() - Mat::identity(k, k) * z;
    let svd = m.svd(false, true);
    let v_t = svd.v_t.ok_or(NumericError::NoConvergence)?;
    let small: Vec<usize> = (0..svd.singular_values.len())
        .filter(|&i| svd.singular_values[i] < KERNEL_THRESHOLD)
        .collect();
    if small.len() != 2 {
        return Err(NumericError::UnexpectedKernel { found: small.len(), expected: 2 });
    }
    Ok(small
        .into_iter()
        .map(|i| {
            let mut v = Vector::zeros(space.dim());
            for (j, e) in v_t.row(i).iter().enumerate() {
                v[j] = e.conj();
            }
            v
        })
        .collect())
}

/// Largest principal angle between the numeric kernel and the closed forms.
pub fn kernel_angle(numeric: &[Vector], closed: &[Vector]) -> f64 {
    principal_angles(closed, numeric).into_iter().fold(0.0, f64::max)
}

/// Multiply `w` by the phase that makes its largest-magnitude component
/// agree with the same component of `v`.
pub fn phase_align(v: &Vector, w: &Vector) -> Vector {
    let (i, _) = v
        .iter()
        .enumerate()
        .fold((0, 0.0), |(bi, bm), (i, z)| if z.norm() > bm { (i, z.norm()) } else { (bi, bm) });
    if w[i].norm() == 0.0 {
        return w.clone();
    }
    let ph = v[i] / w[i];
    w * (ph / ph.norm())
}

/// Eigenvalues sorted and grouped with gap threshold `gap`.
pub fn cluster(values: &[f64], gap: f64) -> Vec<(f64, usize)> {
    let mut out: Vec<(f64, usize)> = Vec::new();
    let mut last = f64::NEG_INFINITY;
    for &v in values {
        match out.last_mut() {
            Some((sum, n)) if v - last < gap => {
                *sum += v;
                *n += 1;
            }
            _ => out.push((v, 1)),
        }
        last = v;
    }
    out.into_iter().map(|(s, n)| (s / n as f64, n)).collect()
}

#[derive(Clone, Debug)]
pub struct SpectrumReport {
    pub omega: f64,
    pub levels: usize,
    /// The lowest `2(levels + 1)` eigenvalues.
    pub eigenvalues: Vec<f64>,
    /// `max |E_k − ⌊k/2⌋ω|` over the listed eigenvalues.
    pub max_deviation: f64,
    pub clusters: Vec<(f64, usize)>,
    /// `[ℍ₀,𝔸₀] + ω𝔸₀` on the safe band.
    pub ladder_down: f64,
    /// `[ℍ₀,𝔸₀†] − ω𝔸₀†` on the safe band.
    pub ladder_up: f64,
    /// `max ‖ℍ₀|E_n⟩ − nω|E_n⟩‖` over both branches and `n ≤ levels`.
    pub eigenstate_residual: f64,
}

impl SpectrumReport {
    pub fn doubly_degenerate(&self) -> bool {
        self.clusters.len() == self.levels + 1
            && self
                .clusters
                .iter()
                .enumerate()
                .all(|(n, &(e, m))| m == 2 && (e - n as f64 * self.omega).abs() < self.omega / 10.0)
    }
}

/// `|E_n⟩ = (𝔸₀†)ⁿ/√(n!)|0;∓⟩` for `n ≤ levels`.
pub fn ladder_states(a0: &Mat, ground: &Vector, levels: usize) -> Vec<Vector> {
    let ad = a0.adjoint();
    let mut out = Vec::with_capacity(levels + 1);
    let mut v = ground.clone();
    out.push(v.clone());
    for n in 1..=levels {
        v = &ad * v / real(libm::sqrt(n as f64));
        out.push(v.clone());
    }
    out
}

fn ground_states(spec: &AnnihilatorSpec, space: &FockSpace) -> Result<Vec<Vector>, NumericError> {
    Ok(coherent_closed_form(spec, real(0.0), space, ShiftConvention::Solved)?.vectors())
}

/// `ℍ₀ = 𝔸₀†𝔸₀` with its spectrum, ladder relations and eigenstates.
pub fn hamiltonian_h0(
    spec: &AnnihilatorSpec,
    space: &FockSpace,
    levels: usize,
) -> Result<(Mat, SpectrumReport), NumericError> {
    if spec.variant != Variant::Iso {
        return Err(NumericError::InvalidVariant("the isospectral Hamiltonian needs ISO".into()));
    }
    let a0 = build_annihilator(spec, space)?;
    let ad = a0.adjoint();
    let h0 = &ad * &a0;
    let w = spec.omega;
    let mut ev: Vec<f64> = h0.clone().symmetric_eigenvalues().iter().copied().collect();
    ev.sort_by(|a, b| a.partial_cmp(b).unwrap());
    ev.truncate(2 * (levels + 1));
    let max_deviation = ev
        .iter()
        .enumerate()
        .fold(0.0, |m: f64, (k, e)| m.max((e - (k / 2) as f64 * w).abs()));
    let clusters = cluster(&ev, w / 10.0);
    let k = space.safe_dim();
    let ladder_down = max_abs_window(&(commutator(&h0, &a0) + &a0 * real(w)), k);
    let ladder_up = max_abs_window(&(commutator(&h0, &ad) - &ad * real(w)), k);
    let mut eigenstate_residual: f64 = 0.0;
    for g in ground_states(spec, space)? {
        for (n, e) in ladder_states(&a0, &g, levels).iter().enumerate() {
            eigenstate_residual = eigenstate_residual.max(eigen_residual(&h0, e, real(n as f64 * w)));
        }
    }
    Ok((
        h0,
        SpectrumReport {
            omega: w,
            levels,
            eigenvalues: ev,
            max_deviation,
            clusters,
            ladder_down,
            ladder_up,
            eigenstate_residual,
        },
    ))
}

/// Scale of the argument of `𝔻` relative to `Z`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DisplacementScale {
    /// `𝔻(Z/ω)`, which has eigenvalue `Z` since `[𝔸₀,𝔸₀†] = ω`.
    Omega,
    /// `𝔻(Z/√ω)`, as printed.
    SqrtOmega,
}

#[derive(Clone, Debug)]
pub struct DisplacedBranch {
    pub branch: Branch,
    /// `|⟨Z̃|U|Z⟩|`.
    pub overlap: f64,
    /// `‖Z̃ − e^{iφ}U|Z⟩‖` after phase alignment.
    pub aligned_distance: f64,
    /// `‖𝔸₀Z̃ − Z Z̃‖`.
    pub residual: f64,
}

#[derive(Clone, Debug)]
pub struct DisplacedReport {
    pub scale: DisplacementScale,
    pub branches: Vec<DisplacedBranch>,
    /// `‖U − I‖` (max entry).
    pub u_distance_from_identity: f64,
}

/// `𝔻(α) = exp(α𝔸₀† − ᾱ𝔸₀)`.
pub fn deformed_displacement(a0: &Mat, alpha: C64) -> Mat {
    expm(&(a0.adjoint() * alpha - a0 * alpha.conj()))
}

/// `U = exp((√2/ω)·Re Z·(sinh√(xz)/√z)·(b − b†))`.
pub fn u_operator(spec: &AnnihilatorSpec, z: C64, space: &FockSpace) -> Mat {
    let b = fermion_b();
    let k = spec.mu() * (2.0 * z.re / spec.omega);
    space.fermion(&expm(&((&b - b.adjoint()) * k)))
}

/// Compare `𝔻(·)|0;∓⟩` with `U|Z;∓⟩`.
pub fn displaced_coherent_and_u(
    spec: &AnnihilatorSpec,
    z: C64,
    space: &FockSpace,
    scale: DisplacementScale,
) -> Result<DisplacedReport, NumericError> {
    if spec.variant != Variant::Iso {
        return Err(NumericError::InvalidVariant("𝔻 and U are defined for ISO".into()));
    }
    let a0 = build_annihilator(spec, space)?;
    let alpha = match scale {
        DisplacementScale::Omega => z / spec.omega,
        DisplacementScale::SqrtOmega => z / libm::sqrt(spec.omega),
    };
    let dd = deformed_displacement(&a0, alpha);
    let u = u_operator(spec, z, space);
    let grounds = coherent_closed_form(spec, real(0.0), space, ShiftConvention::Solved)?;
    let states = coherent_closed_form(spec, z, space, ShiftConvention::Solved)?;
    let mut branches = Vec::new();
    for branch in Branch::BOTH {
        let kind = StateKind::Branch(branch);
        let g = &grounds.get(kind).expect("ISO has both branches").vector;
        let s = &states.get(kind).expect("ISO has both branches").vector;
        let tilde = &dd * g;
        let us = &u * s;
        let aligned = phase_align(&tilde, &us);
        branches.push(DisplacedBranch {
            branch,
            overlap: tilde.dotc(&us).norm(),
            aligned_distance: (&tilde - aligned).norm(),
            residual: eigen_residual(&a0, &tilde, z),
        });
    }
    let id = space.identity();
    Ok(DisplacedReport {
        scale,
        branches,
        u_distance_from_identity: crate::linalg::max_abs(&(u - id)),
    })
}

#[derive(Clone, Debug)]
pub struct PseudoHermitianBundle {
    pub rho_tilde: f64,
    pub tau_tilde: f64,
    pub t: Mat,
    pub t_inv: Mat,
    pub eta: Mat,
    pub h: Mat,
    pub a: Mat,
    pub a_tilde: Mat,
}

/// `T = e^{τ̃a}e^{ρ̃a†}`, `T⁻¹ = e^{−ρ̃a†}e^{−τ̃a}`, `η = (T⁻¹)†T⁻¹`,
/// `ℍ = Tℍ₀T⁻¹`, `𝔸 = T𝔸₀T⁻¹`, `𝔸̃ = T𝔸₀†T⁻¹`.
pub fn pseudo_hermitian_transform(
    rho_tilde: f64,
    tau_tilde: f64,
    a0: &Mat,
    h0: &Mat,
    space: &FockSpace,
) -> PseudoHermitianBundle {
    let a = boson_a(space.n_boson);
    let ad = a.adjoint();
    let t = space.boson(&(expm(&(&a * real(tau_tilde))) * expm(&(&ad * real(rho_tilde)))));
    let t_inv = space.boson(&(expm(&(&ad * real(-rho_tilde))) * expm(&(&a * real(-tau_tilde)))));
    let eta = t_inv.adjoint() * &t_inv;
    PseudoHermitianBundle {
        rho_tilde,
        tau_tilde,
        h: &t * h0 * &t_inv,
        a: &t * a0 * &t_inv,
        a_tilde: &t * a0.adjoint() * &t_inv,
        t,
        t_inv,
        eta,
    }
}

#[derive(Clone, Debug)]
pub struct TransformReport {
    /// Levels `n < window` are used for every check involving `T`.
    pub window: usize,
    pub comm_a_atilde: f64,
    pub comm_h_a: f64,
    pub comm_h_atilde: f64,
    pub pseudo_hermiticity: f64,
    pub eta_hermiticity: f64,
    pub eta_min_eigenvalue: f64,
    /// `max |E_k(ℍ) − E_k(ℍ₀)|` over the lowest `2(levels + 1)` eigenvalues.
    pub spectrum_deviation: f64,
    /// The lowest eigenvalues of `ℍ`, ordered by real part.
    pub spectrum: Vec<C64>,
    pub eigenstate_residual: f64,
    pub coherent_residual_raw: f64,
    pub coherent_residual_normalized: f64,
    /// `‖T†T − I‖` on the window.
    pub t_unitarity: f64,
    /// `‖T†T − e^{−τ̃²}I‖` on the window.
    pub t_scaled_unitarity: f64,
}

/// Verify the transformed relations, pseudo-Hermiticity, the spectrum and
/// the transformed eigen- and coherent states.
pub fn check_transform(
    bundle: &PseudoHermitianBundle,
    spec: &AnnihilatorSpec,
    space: &FockSpace,
    levels: usize,
    z: C64,
) -> Result<TransformReport, NumericError> {
    let w = spec.omega;
    let a0 = build_annihilator(spec, space)?;
    let (_, spec_report) = hamiltonian_h0(spec, space, levels)?;
    let window = space.n_boson / 2;
    let k = 2 * window;
    let id = space.identity();
    let win = |m: Mat| max_abs_window(&m, k);
    let schur = bundle
        .h
        .clone()
        .try_schur(f64::EPSILON, 0)
        .ok_or(NumericError::NoConvergence)?;
    let (_, tri) = schur.unpack();
    let mut spectrum: Vec<C64> = tri.diagonal().iter().copied().collect();
    spectrum.sort_by(|a, b| a.re.partial_cmp(&b.re).unwrap());
    spectrum.truncate(2 * (levels + 1));
    let spectrum_deviation = spectrum
        .iter()
        .zip(&spec_report.eigenvalues)
        .fold(0.0, |m: f64, (e, e0)| m.max((e - real(*e0)).norm()));
    let eta_window = bundle.eta.view((0, 0), (k, k)).into_owned();
    let eta_min_eigenvalue = eta_window
        .symmetric_eigenvalues()
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min);
    let mut eigenstate_residual: f64 = 0.0;
    for g in ground_states(spec, space)? {
        for (n, e) in ladder_states(&a0, &g, levels).iter().enumerate() {
            let te = &bundle.t * e;
            eigenstate_residual = eigenstate_residual.max(eigen_residual(&bundle.h, &te, real(n as f64 * w)));
        }
    }
    let mut raw: f64 = 0.0;
    let mut normalized: f64 = 0.0;
    for s in coherent_closed_form(spec, z, space, ShiftConvention::Solved)?.states {
        let tv = &bundle.t * &s.vector;
        let r = (&bundle.a * &tv - &tv * z).norm();
        raw = raw.max(r);
        normalized = normalized.max(r / tv.norm());
    }
    let ttt = bundle.t.adjoint() * &bundle.t;
    let scale = libm::exp(-bundle.tau_tilde * bundle.tau_tilde);
    Ok(TransformReport {
        window,
        comm_a_atilde: win(commutator(&bundle.a, &bundle.a_tilde) - &id * real(w)),
        comm_h_a: win(commutator(&bundle.h, &bundle.a) + &bundle.a * real(w)),
        comm_h_atilde: win(commutator(&bundle.h, &bundle.a_tilde) - &bundle.a_tilde * real(w)),
        pseudo_hermiticity: win(bundle.h.adjoint() * &bundle.eta - &bundle.eta * &bundle.h),
        eta_hermiticity: win(&bundle.eta - bundle.eta.adjoint()),
        eta_min_eigenvalue,
        spectrum_deviation,
        spectrum,
        eigenstate_residual,
        coherent_residual_raw: raw,
        coherent_residual_normalized: normalized,
        t_unitarity: win(&ttt - &id),
        t_scaled_unitarity: win(&ttt - &id * real(scale)),
    })
}
