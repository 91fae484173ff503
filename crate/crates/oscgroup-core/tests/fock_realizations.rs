use oscgroup_core::fock::*;
use oscgroup_core::linalg::max_abs;

fn params() -> RealizationParams {
    RealizationParams {
        x: 0.37,
        z: 0.52,
        p: 0.21,
        q: -0.13,
        rho: 0.17,
        tau: 0.29,
        h0: 0.4,
        a2: 0.8,
        c1: 1.3,
        c2: 0.6,
        sign: Sign::Upper,
    }
}

#[test]
fn every_family_satisfies_the_relations() {
    let space = FockSpace::new(DEFAULT_N, DEFAULT_SAFE_BAND).unwrap();
    for sign in [Sign::Upper, Sign::Lower] {
        for fam in RealizationFamily::ALL {
            let par = RealizationParams { sign, ..params() };
            let r = realize(fam, &par, &space).unwrap();
            let rep = check_relations(&r);
            for e in &rep.entries {
                assert!(e.residual < DEFAULT_TOL, "{} {:?} {}: {}", fam.tag(), sign, e.name, e.residual);
            }
        }
    }
}

#[test]
fn appb_coefficients_solve_the_system() {
    for sign in [Sign::Upper, Sign::Lower] {
        for fam in RealizationFamily::ALL {
            let par = RealizationParams { sign, ..params() };
            let k = fermion_coefficients(fam, &par).unwrap();
            let r = max_residual(&appendix_b_residual(&k, par.x, par.z));
            assert!(r < 1e-12, "{} {:?}: {r}", fam.tag(), sign);
        }
    }
}

#[test]
fn printed_closed_forms_that_do_not_solve_the_system() {
    let par = params();
    let k = printed_coefficients(RealizationFamily::AppB2, &par).unwrap();
    assert!(max_residual(&appendix_b_residual(&k, par.x, par.z)) > 1e-3);
    let k = printed_coefficients(RealizationFamily::AppB4, &par).unwrap();
    assert!(max_residual(&appendix_b_residual(&k, par.x, par.z)) > 1e-3);
    // the other sign of the printed fourth family is a solution
    let lower = RealizationParams { sign: Sign::Lower, ..par };
    let k = printed_coefficients(RealizationFamily::AppB4, &lower).unwrap();
    assert!(max_residual(&appendix_b_residual(&k, par.x, par.z)) < 1e-12);
}

#[test]
fn fourth_family_contains_the_hyperbolic_realization() {
    let par = params();
    let s = (par.x * par.z).sqrt();
    let (ch, sh) = (s.cosh(), s.sinh());
    let hyp = fermion_coefficients(RealizationFamily::HyperbolicDeformed, &par).unwrap();
    let p4 = RealizationParams { c2: (ch + 1.0) * sh / (2.0 * s), ..par };
    let k4 = fermion_coefficients(RealizationFamily::AppB4, &p4).unwrap();
    for (u, v) in k4.a.iter().chain(&k4.c).zip(hyp.a.iter().chain(&hyp.c)) {
        assert!((u - v).norm() < 1e-13);
    }
    let p4 = RealizationParams { c2: (ch + 1.0) / (2.0 * par.x).sqrt(), ..par };
    let anti = fermion_coefficients(RealizationFamily::Antisym, &par).unwrap();
    let k4 = fermion_coefficients(RealizationFamily::AppB4, &p4).unwrap();
    for (u, v) in k4.a.iter().chain(&k4.c).zip(anti.a.iter().chain(&anti.c)) {
        assert!((u - v).norm() < 1e-13);
    }
}

#[test]
fn hyperbolic_survives_negative_and_zero_products() {
    let space = FockSpace::new(16, 4).unwrap();
    for (x, z) in [(-0.4, 0.9), (0.0, 0.7), (0.5, 0.0), (-1.2, -0.3)] {
        let par = RealizationParams { x, z, ..params() };
        let r = realize(RealizationFamily::HyperbolicDeformed, &par, &space).unwrap();
        assert!(check_relations(&r).passed(1e-10), "x={x} z={z}");
    }
}

#[test]
fn undeformed_limit_is_continuous() {
    let space = FockSpace::new(12, 3).unwrap();
    let std = standard_realization(&space);
    let mut last = f64::INFINITY;
    for eps in [1e-2, 1e-4, 1e-6, 1e-8] {
        let par = RealizationParams {
            x: 0.7 * eps,
            z: 0.4 * eps,
            p: 0.3 * eps,
            q: -0.6 * eps,
            rho: 0.5 * eps,
            tau: 0.2 * eps,
            ..Default::default()
        };
        let r = realize(RealizationFamily::HyperbolicDeformed, &par, &space).unwrap();
        let d = r
            .operators()
            .iter()
            .zip(std.operators().iter())
            .map(|((_, m1), (_, m2))| max_abs(&(*m1 - *m2)))
            .fold(0.0, f64::max);
        assert!(d < 10.0 * eps, "eps={eps}: {d}");
        assert!(d < last);
        last = d;
    }
}

#[test]
fn small_spaces_are_rejected() {
    assert!(FockSpace::new(7, 1).is_err());
    assert!(FockSpace::new(8, 8).is_err());
}

#[test]
fn family_names_parse() {
    for fam in RealizationFamily::ALL {
        assert_eq!(RealizationFamily::parse(fam.tag()).unwrap(), fam);
    }
    assert!(RealizationFamily::parse("nope").is_err());
}
