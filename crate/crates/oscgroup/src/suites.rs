//! The verification suites behind each subcommand. Each returns a list of
//! checks; configuration problems surface as [`ConfigError`].

use std::path::Path;

use oscgroup_core::coherent::{
    build_annihilator, coherent_closed_form, coherent_numeric_kernel, displaced_coherent_and_u,
    hamiltonian_h0, kernel_angle, pseudo_hermitian_transform, check_transform, AnnihilatorSpec,
    DisplacementScale, ShiftConvention, Variant,
};
use oscgroup_core::fock::{
    appendix_b_residual, check_relations, fermion_coefficients, max_residual, realize,
    FockSpace, RealizationFamily, RealizationParams, Region, Sign,
};
use oscgroup_core::hopf::{lambda_identities, lambda_table, verify_dual_relations, DualParams, Hopf};
use oscgroup_core::linalg::C64;
use oscgroup_core::rmatrix::{
    bundled, check_consistency, check_qybe, complete_assignment, constrained_entries,
    derive_relations, qybe_numeric, verify_coproduct_compatibility, Family, Index,
};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::error::ConfigError;
use crate::golden;
use crate::params::ParamFile;
use crate::report::Check;

/// Tolerances of the numeric suites.
#[derive(Clone, Copy, Debug)]
pub struct Tolerances {
    /// Bosonic relations on the safe band.
    pub band: f64,
    /// Fermionic and mixed relations on the full space.
    pub full: f64,
    /// Residuals of the algebraic system for the fermionic coefficients.
    pub system: f64,
    pub qybe_numeric: f64,
    pub eigen: f64,
    pub angle: f64,
    pub orthogonality: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            band: 1e-10,
            full: 1e-13,
            system: 1e-12,
            qybe_numeric: 1e-10,
            eigen: 1e-8,
            angle: 1e-6,
            orthogonality: 1e-10,
        }
    }
}

fn index_text(ix: Index) -> String {
    format!("r{}{}_{}{}", ix.0, ix.1, ix.2, ix.3)
}

// ---------------------------------------------------------------------------
// R-matrix suites

pub fn qybe(family: Family, point: Option<&ParamFile>, tol: &Tolerances) -> Result<Vec<Check>, ConfigError> {
    let r = bundled(family);
    let tag = family.tag();
    let rep = check_qybe(&r);
    let sample = rep
        .residuals
        .first()
        .map(|(a, b, c)| format!("{a:?},{b:?}: {}", r.ring().display(c)));
    let mut checks = vec![Check::symbolic(format!("{tag} qybe"), rep.residuals.len(), sample)
        .with_detail(format!("{} non-zero entries", r.nnz()))];
    if let Some(pf) = point {
        let a = complete_assignment(family, &pf.floats())?;
        let v = qybe_numeric(&r, &a)?;
        checks.push(Check::numeric(format!("{tag} qybe at point"), v, tol.qybe_numeric));
    }
    Ok(checks)
}

/// Golden file name of a family inside a golden directory.
pub fn golden_file(family: Family) -> &'static str {
    match family {
        Family::Identity => "identity.txt",
        Family::FbNondef => "fb.txt",
        Family::A => "a.txt",
        Family::B => "b.txt",
        Family::C => "c.txt",
        Family::D => "d.txt",
    }
}

pub fn relations(family: Family, golden_path: Option<&Path>, compat: bool) -> Result<Vec<Check>, ConfigError> {
    let tag = family.tag();
    let r = bundled(family);
    let golden_rs = match golden_path {
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|source| ConfigError::Io {
                path: p.to_path_buf(),
                source,
            })?;
            Some(golden::parse_rules(&text, r.ring().clone())?)
        }
        None => None,
    };
    let rel = match derive_relations(&r) {
        Ok(rel) => rel,
        Err(e) => return Ok(vec![Check::error(format!("{tag} derive relations"), e.to_string())]),
    };
    let rs = rel.rewrite_system();
    let mut checks = vec![Check::count(format!("{tag} derive relations"), rs.len(), 1)
        .with_detail(format!("{} rewrite rules", rs.len()))];
    if let Some(g) = golden_rs {
        let diff = golden::compare(rs, &g);
        let sample = diff
            .differing
            .first()
            .map(|(l, g, d)| format!("{l}: golden `{g}`, derived `{d}`"))
            .or_else(|| diff.missing.first().map(|l| format!("{l} missing")))
            .or_else(|| diff.extra.first().map(|l| format!("{l} extra")));
        let data = json!({
            "missing": diff.missing,
            "extra": diff.extra,
            "differing": diff.differing.iter().map(|(l, g, d)| json!({"lhs": l, "golden": g, "derived": d})).collect::<Vec<_>>(),
        });
        let mut c = Check::symbolic(format!("{tag} golden relations"), diff.len(), sample)
            .with_detail(format!(
                "{} rules: {} missing, {} extra, {} differing",
                g.len(),
                diff.missing.len(),
                diff.extra.len(),
                diff.differing.len()
            ))
            .with_data(data);
        if let Some(p) = golden_path {
            c = c.at(p.display().to_string());
        }
        checks.push(c);
    }
    if compat {
        let rep = verify_coproduct_compatibility(&rel);
        let sample = rep.failures.first().map(|(e, t)| format!("Δ({e}) = {t}"));
        checks.push(
            Check::symbolic(format!("{tag} coproduct compatibility"), rep.failures.len(), sample)
                .with_detail(format!("{} relations checked", rep.checked)),
        );
    }
    Ok(checks)
}

pub fn consistency(family: Family, perturbations: usize, rng: &mut ChaCha8Rng) -> Vec<Check> {
    let tag = family.tag();
    let r = bundled(family);
    let rep = check_consistency(&r);
    let sample = rep
        .violations
        .first()
        .map(|(l, c)| format!("{l}: {}", r.ring().display(c)))
        .or_else(|| rep.outside_template.first().map(|ix| format!("{} outside template", index_text(*ix))))
        .or_else(|| rep.broken_ties.first().map(|(a, b)| format!("{} != {}", index_text(*a), index_text(*b))));
    let mut checks = vec![Check::symbolic(format!("{tag} consistency"), rep.violation_count(), sample)
        .with_detail(format!("{} constraints checked", rep.checked))];
    let entries = constrained_entries();
    let picks = rand::seq::index::sample(rng, entries.len(), perturbations.min(entries.len()));
    for i in picks {
        let ix = entries[i];
        let found = check_consistency(&r.perturbed(ix, &oscgroup_core::Coeff::one())).violation_count();
        checks.push(Check::count(format!("{tag} perturbation detected"), found, 1).at(index_text(ix)));
    }
    checks
}

pub fn dual(family: Family, degree: usize, lambda_r: u8) -> Vec<Check> {
    let tag = family.tag();
    let r = bundled(family);
    let rel = match derive_relations(&r) {
        Ok(rel) => rel,
        Err(e) => return vec![Check::error(format!("{tag} derive relations"), e.to_string())],
    };
    let hopf = Hopf::new(rel.algebra());
    let ring = hopf.ring();
    let mut checks = Vec::new();
    match verify_dual_relations(&hopf, &DualParams::from_rmatrix(&r), r.ring(), degree) {
        Ok(rep) => {
            for c in rep.deformed.iter().chain(&rep.mixed) {
                let sample = c.failures.first().map(|(m, d)| format!("({}): {}", m.display(), ring.display(d)));
                let mut ch = Check::symbolic(format!("{tag} dual {}", c.name), c.failures.len(), sample)
                    .with_detail(format!("{} monomials of degree ≤ {degree}", c.checked));
                if let Some((m, _)) = c.failures.first() {
                    ch = ch.at(m.display());
                }
                checks.push(ch);
            }
        }
        Err(e) => checks.push(Check::error(format!("{tag} dual relations"), e.to_string())),
    }
    for rr in 1..=lambda_r {
        match lambda_table(&hopf, rr) {
            Ok(tab) => {
                let ids = lambda_identities(&tab);
                let bad: Vec<_> = ids.iter().filter(|i| !i.holds()).collect();
                let sample = bad.first().map(|i| format!("{}: found {}", i.name, ring.display(&i.found)));
                checks.push(Check::symbolic(format!("{tag} lambda identities r={rr}"), bad.len(), sample));
            }
            Err(e) => checks.push(Check::error(format!("{tag} lambda identities r={rr}"), e.to_string())),
        }
    }
    checks
}

// ---------------------------------------------------------------------------
// Fock realizations

pub const FOCK_KEYS: [&str; 11] = ["x", "z", "p", "q", "rho", "tau", "h0", "a2", "c1", "c2", "sign"];

pub fn realization_params(pf: &ParamFile) -> Result<RealizationParams, ConfigError> {
    let d = RealizationParams::default();
    let g = |k: &str, def: f64| pf.get(k).unwrap_or(def);
    let sign = match pf.get("sign") {
        None => Sign::Upper,
        Some(s) if s == 1.0 => Sign::Upper,
        Some(s) if s == -1.0 => Sign::Lower,
        Some(s) => {
            return Err(ConfigError::Invalid { field: "sign", reason: format!("{s} is not ±1") });
        }
    };
    Ok(RealizationParams {
        x: pf.require("x")?,
        z: pf.require("z")?,
        p: g("p", d.p),
        q: g("q", d.q),
        rho: g("rho", d.rho),
        tau: g("tau", d.tau),
        h0: g("h0", d.h0),
        a2: g("a2", d.a2),
        c1: g("c1", d.c1),
        c2: g("c2", d.c2),
        sign,
    })
}

fn signed(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    let v = rng.random_range(lo..=hi);
    if rng.random_bool(0.5) {
        v
    } else {
        -v
    }
}

/// A random parameter point with `|param| ≤ 1` that the family accepts.
pub fn random_params(family: RealizationFamily, rng: &mut ChaCha8Rng) -> RealizationParams {
    let (x, z) = match family {
        RealizationFamily::HyperbolicDeformed => (rng.random_range(-1.0..=1.0), rng.random_range(-1.0..=1.0)),
        RealizationFamily::Antisym => (rng.random_range(0.1..=1.0), rng.random_range(-1.0..=1.0)),
        _ => (rng.random_range(0.1..=1.0), rng.random_range(0.1..=1.0)),
    };
    RealizationParams {
        x,
        z,
        p: rng.random_range(-1.0..=1.0),
        q: rng.random_range(-1.0..=1.0),
        rho: rng.random_range(-1.0..=1.0),
        tau: rng.random_range(-1.0..=1.0),
        h0: rng.random_range(-1.0..=1.0),
        a2: signed(rng, 0.2, 1.0),
        c1: signed(rng, 0.2, 1.0),
        c2: signed(rng, 0.2, 1.0),
        sign: if rng.random_bool(0.5) { Sign::Upper } else { Sign::Lower },
    }
}

pub enum FockSource<'a> {
    Fixed(RealizationParams),
    Random { draws: usize, rng: &'a mut ChaCha8Rng },
}

pub fn fock(
    family: RealizationFamily,
    source: FockSource<'_>,
    space: &FockSpace,
    tol: &Tolerances,
) -> Result<Vec<Check>, ConfigError> {
    let points = match source {
        FockSource::Fixed(p) => vec![p],
        FockSource::Random { draws, rng } => (0..draws).map(|_| random_params(family, rng)).collect(),
    };
    let tag = family.tag();
    // (name, region) -> (worst residual, draw index)
    let mut worst: Vec<(String, Region, f64, usize)> = Vec::new();
    let mut system = (0.0f64, 0usize);
    for (i, par) in points.iter().enumerate() {
        let r = realize(family, par, space)?;
        for e in check_relations(&r).entries {
            match worst.iter_mut().find(|w| w.0 == e.name) {
                Some(w) if e.residual > w.2 || e.residual.is_nan() => {
                    w.2 = e.residual;
                    w.3 = i;
                }
                Some(_) => {}
                None => worst.push((e.name, e.region, e.residual, i)),
            }
        }
        let k = fermion_coefficients(family, par)?;
        let s = max_residual(&appendix_b_residual(&k, par.x, par.z));
        if s > system.0 || s.is_nan() {
            system = (s, i);
        }
    }
    let draw = |i: usize| format!("draw {i}: {:?}", points[i]);
    let mut checks: Vec<Check> = worst
        .into_iter()
        .map(|(name, region, v, i)| {
            let (t, where_) = match region {
                Region::Full => (tol.full, "full space"),
                Region::SafeBand => (tol.band, "safe band"),
            };
            Check::numeric(format!("{tag} {name}"), v, t)
                .at(draw(i))
                .with_detail(format!("max over {} draws, {where_}", points.len()))
        })
        .collect();
    checks.push(
        Check::numeric(format!("{tag} coefficient system"), system.0, tol.system)
            .at(draw(system.1))
            .with_detail(format!("max over {} draws", points.len())),
    );
    Ok(checks)
}

// ---------------------------------------------------------------------------
// Coherent states

pub struct CoherentConfig {
    pub spec: AnnihilatorSpec,
    pub z: C64,
    pub transform: Option<(f64, f64)>,
    pub levels: usize,
}

pub fn coherent(cfg: &CoherentConfig, space: &FockSpace, tol: &Tolerances) -> Result<Vec<Check>, ConfigError> {
    let spec = &cfg.spec;
    spec.validate()?;
    if cfg.transform.is_some() && spec.variant != Variant::Iso {
        return Err(ConfigError::Invalid {
            field: "rho-tilde/tau-tilde",
            reason: "the similarity transform needs the iso variant".into(),
        });
    }
    let var = match spec.variant {
        Variant::Iso => "ISO",
        Variant::Super => "SUPER",
    };
    let z = cfg.z;
    let mut checks = Vec::new();
    let a0 = build_annihilator(spec, space)?;
    let closed = match coherent_closed_form(spec, z, space, ShiftConvention::Solved) {
        Ok(c) => c,
        Err(e) => return Ok(vec![Check::error(format!("{var} closed-form states"), e.to_string())]),
    };
    for s in &closed.states {
        checks.push(
            Check::numeric(format!("{var} eigen-residual {}", s.kind.label()), s.residual, tol.eigen)
                .with_data(json!({
                    "displacement": [s.displacement.re, s.displacement.im],
                    "mass_outside_safe_band": s.mass_outside,
                })),
        );
    }
    match coherent_numeric_kernel(&a0, z, space) {
        Ok(kernel) => {
            let ang = kernel_angle(&kernel, &closed.vectors());
            checks.push(Check::numeric(format!("{var} kernel angle"), ang, tol.angle));
        }
        Err(e) => checks.push(Check::error(format!("{var} kernel angle"), e.to_string())),
    }
    if spec.variant == Variant::Iso {
        let v = closed.vectors();
        let ov = v[0].dotc(&v[1]).norm();
        checks.push(Check::numeric("ISO branch orthogonality", ov, tol.orthogonality).with_data(json!({"overlap": ov})));
        let (h0, rep) = hamiltonian_h0(spec, space, cfg.levels)?;
        let table: Vec<_> = rep.clusters.iter().map(|(e, m)| json!({"energy": e, "multiplicity": m})).collect();
        checks.push(
            Check::numeric("ISO H0 spectrum", rep.max_deviation, 1e-8 * spec.omega)
                .with_data(json!({"eigenvalues": rep.eigenvalues, "degeneracy": table})),
        );
        checks.push(Check::count(
            "ISO H0 double degeneracy",
            rep.doubly_degenerate() as usize,
            1,
        ));
        checks.push(Check::numeric("ISO H0 eigenstates", rep.eigenstate_residual, tol.eigen));
        let disp = displaced_coherent_and_u(spec, z, space, DisplacementScale::Omega)?;
        for b in &disp.branches {
            checks.push(
                Check::numeric(format!("ISO displaced ground state {}", b.branch.label()), b.aligned_distance, tol.eigen)
                    .with_data(json!({"overlap": b.overlap, "eigen_residual": b.residual})),
            );
        }
        if let Some((rho, tau)) = cfg.transform {
            let bundle = pseudo_hermitian_transform(rho, tau, &a0, &h0, space);
            let t = check_transform(&bundle, spec, space, cfg.levels, z)?;
            let w = spec.omega;
            checks.push(Check::numeric("transformed [A, At] - omega", t.comm_a_atilde, 1e-9));
            checks.push(Check::numeric("transformed [H, A] + omega A", t.comm_h_a, 1e-9));
            checks.push(Check::numeric("transformed [H, At] - omega At", t.comm_h_atilde, 1e-9));
            checks.push(Check::numeric("pseudo-hermiticity", t.pseudo_hermiticity, 1e-8));
            checks.push(Check::above("metric positivity", t.eta_min_eigenvalue, 0.0));
            checks.push(
                Check::numeric("transformed spectrum", t.spectrum_deviation, 1e-7 * w)
                    .with_data(json!({"spectrum": t.spectrum.iter().map(|e| [e.re, e.im]).collect::<Vec<_>>()})),
            );
            checks.push(Check::numeric("transformed eigenstates", t.eigenstate_residual, tol.eigen));
            checks.push(
                Check::numeric("transformed coherent states", t.coherent_residual_normalized, tol.eigen)
                    .with_data(json!({"raw": t.coherent_residual_raw})),
            );
            if rho == -tau {
                checks.push(Check::numeric("T unitary", t.t_unitarity, 1e-9));
                checks.push(Check::numeric("T unitary up to exp(-tau^2)", t.t_scaled_unitarity, 1e-9));
            } else {
                checks.push(Check::above("T not unitary", t.t_unitarity, 1e-2));
            }
        }
    }
    Ok(checks)
}
