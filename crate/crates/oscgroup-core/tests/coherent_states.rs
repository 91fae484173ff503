use oscgroup_core::coherent::*;
use oscgroup_core::fock::{FockSpace, DEFAULT_N, DEFAULT_SAFE_BAND};
use oscgroup_core::linalg::{c, max_abs, real, Vector, C64};
use oscgroup_core::NumericError;

fn space() -> FockSpace {
    FockSpace::new(DEFAULT_N, DEFAULT_SAFE_BAND).unwrap()
}

fn zs() -> Vec<C64> {
    vec![c(0.0, 0.0), c(1.0, 0.0), c(-0.7, 1.1), c(0.0, -2.0), c(1.2, 1.5)]
}

fn iso() -> AnnihilatorSpec {
    AnnihilatorSpec { variant: Variant::Iso, x: 0.45, z: 0.3, omega: 1.4 }
}

fn sup() -> AnnihilatorSpec {
    AnnihilatorSpec { variant: Variant::Super, x: 0.45, z: 0.3, omega: 0.8 }
}

/// Coherent vector from its amplitude series `e^{−|β|²/2} βⁿ/√n!`.
fn series_coherent(beta: C64, n: usize) -> Vector {
    let mut v = Vector::zeros(n);
    let mut amp = real((-beta.norm_sqr() / 2.0).exp());
    for k in 0..n {
        v[k] = amp;
        amp = amp * beta / real(((k + 1) as f64).sqrt());
    }
    v
}

#[test]
fn displacement_basics() {
    let s = space();
    assert!(max_abs(&(displacement(c(0.0, 0.0), &s) - s.identity())) < 1e-15);
    for alpha in [c(0.5, -0.3), c(2.0, 0.0), c(-1.2, 1.4)] {
        let d = displacement(alpha, &s);
        let di = displacement(-alpha, &s);
        let prod = (&d * &di).view((0, 0), (60, 60)).into_owned();
        assert!(max_abs(&(prod - oscgroup_core::linalg::Mat::identity(60, 60))) < 1e-10);
        let overlap = d[(0, 0)].norm();
        assert!((overlap - (-alpha.norm_sqr() / 2.0).exp()).abs() < 1e-8);
        let v = displaced_vacuum(alpha, 60);
        let w = series_coherent(alpha, 60);
        assert!((v.rows(0, 40).into_owned() - w.rows(0, 40).into_owned()).norm() < 1e-10);
    }
}

#[test]
fn closed_forms_are_eigenstates() {
    let s = space();
    for spec in [iso(), sup()] {
        for z in zs() {
            let r = coherent_closed_form(&spec, z, &s, ShiftConvention::Solved).unwrap();
            assert_eq!(r.states.len(), 2);
            for st in &r.states {
                assert!(st.residual <= 1e-8, "{:?} Z={z} {}: {}", spec.variant, st.kind.label(), st.residual);
                assert!((st.vector.norm() - 1.0).abs() < 1e-12);
            }
        }
    }
}

#[test]
fn iso_branches_are_orthogonal() {
    let s = space();
    for z in zs() {
        let r = coherent_closed_form(&iso(), z, &s, ShiftConvention::Solved).unwrap();
        assert!(r.states[0].vector.dotc(&r.states[1].vector).norm() < 1e-10);
    }
}

#[test]
fn printed_shift_fails_on_the_second_branch() {
    let s = space();
    for spec in [iso(), sup()] {
        let r = coherent_closed_form(&spec, c(0.4, 0.2), &s, ShiftConvention::Printed).unwrap();
        let up = r.get(StateKind::Branch(Branch::Upper)).unwrap();
        let low = r.get(StateKind::Branch(Branch::Lower)).unwrap();
        assert!(up.residual < 1e-8);
        assert!(low.residual > 1e-2);
    }
}

#[test]
fn numeric_kernel_matches_closed_forms() {
    let s = space();
    for spec in [iso(), sup(), AnnihilatorSpec { variant: Variant::Super, x: 0.0, z: 0.0, omega: 1.7 }] {
        let a0 = build_annihilator(&spec, &s).unwrap();
        for z in zs() {
            let closed = coherent_closed_form(&spec, z, &s, ShiftConvention::Solved).unwrap();
            let numeric = coherent_numeric_kernel(&a0, z, &s).unwrap();
            let angle = kernel_angle(&numeric, &closed.vectors());
            assert!(angle <= 1e-6, "{:?} Z={z}: {angle}", spec.variant);
        }
    }
}

#[test]
fn undeformed_super_states() {
    let s = space();
    let spec = AnnihilatorSpec { variant: Variant::Super, x: 0.0, z: 0.0, omega: 1.0 };
    let r = coherent_closed_form(&spec, c(1.0, 0.0), &s, ShiftConvention::Solved).unwrap();
    let coh = &r.get(StateKind::Branch(Branch::Upper)).unwrap().vector;
    let expected = displacement(c(1.0, 0.0), &s).column(0).into_owned();
    assert!((coh - expected).norm() < 1e-14);
    let susy = r.get(StateKind::SuperSymmetric).unwrap();
    assert!(susy.residual < 1e-10);
    // at ω = 1 this is the displaced (|1;0⟩ − |0;1⟩)/√2
    let mut w = Vector::zeros(s.dim());
    w[s.index(1, 0)] = real(std::f64::consts::FRAC_1_SQRT_2);
    w[s.index(0, 1)] = real(-std::f64::consts::FRAC_1_SQRT_2);
    assert!((&susy.vector - displacement(c(1.0, 0.0), &s) * w).norm() < 1e-14);
}

#[test]
fn printed_susy_state_needs_unit_omega() {
    let s = space();
    let spec = AnnihilatorSpec { variant: Variant::Super, x: 0.0, z: 0.0, omega: 1.7 };
    let a0 = build_annihilator(&spec, &s).unwrap();
    let z = c(0.3, -0.4);
    let mut w = Vector::zeros(s.dim());
    w[s.index(1, 0)] = real(std::f64::consts::FRAC_1_SQRT_2);
    w[s.index(0, 1)] = real(-std::f64::consts::FRAC_1_SQRT_2);
    let v = displacement(z / 1.7f64.sqrt(), &s) * w;
    assert!(eigen_residual(&a0, &v, z) > 1e-2);
    assert!(eigen_residual(&a0, &supersymmetric_state(1.7, z, &s), z) < 1e-10);
}

#[test]
fn iso_small_x_ground_states() {
    let s = space();
    let spec = AnnihilatorSpec { variant: Variant::Iso, x: 1e-14, z: 0.5, omega: 1.0 };
    let r = coherent_closed_form(&spec, c(0.0, 0.0), &s, ShiftConvention::Solved).unwrap();
    for (st, sign) in r.states.iter().zip([-1.0, 1.0]) {
        assert!((st.vector[0] - real(std::f64::consts::FRAC_1_SQRT_2)).norm() < 1e-7);
        assert!((st.vector[1] - c(0.0, sign * std::f64::consts::FRAC_1_SQRT_2)).norm() < 1e-7);
    }
}

#[test]
fn far_eigenvalue_is_flagged() {
    let s = space();
    let z = c((DEFAULT_N as f64).sqrt(), 0.0);
    assert!(matches!(
        coherent_closed_form(&iso(), z, &s, ShiftConvention::Solved),
        Err(NumericError::TruncationRisk { .. })
    ));
    let a0 = build_annihilator(&iso(), &s).unwrap();
    assert!(coherent_numeric_kernel(&a0, c(9.0, 0.0), &s).is_err());
}

#[test]
fn iso_is_canonical() {
    let s = space();
    let a0 = build_annihilator(&iso(), &s).unwrap();
    let comm = &a0 * a0.adjoint() - a0.adjoint() * &a0 - s.identity() * real(1.4);
    assert!(oscgroup_core::linalg::max_abs_window(&comm, s.safe_dim()) < 1e-12);
}

#[test]
fn isospectral_hamiltonian() {
    let s = space();
    for omega in [1.0, 0.6] {
        let spec = AnnihilatorSpec { omega, ..iso() };
        let (_, rep) = hamiltonian_h0(&spec, &s, 10).unwrap();
        assert!(rep.max_deviation < 1e-8 * omega, "{}", rep.max_deviation);
        assert!(rep.doubly_degenerate());
        assert!(rep.ladder_down < 1e-10 && rep.ladder_up < 1e-10);
        assert!(rep.eigenstate_residual < 1e-9);
        assert!(rep.eigenvalues[0].abs() < 1e-9 && rep.eigenvalues[1].abs() < 1e-9);
    }
}

#[test]
fn displaced_states_agree_up_to_phase() {
    let s = space();
    for z in [c(0.8, 0.0), c(-0.5, 0.9), c(0.0, 0.0)] {
        let rep = displaced_coherent_and_u(&iso(), z, &s, DisplacementScale::Omega).unwrap();
        for b in &rep.branches {
            assert!((b.overlap - 1.0).abs() < 1e-8, "{z}: {}", b.overlap);
            assert!(b.aligned_distance < 1e-8);
            assert!(b.residual < 1e-8);
        }
    }
    let rep = displaced_coherent_and_u(&iso(), c(0.0, 0.0), &s, DisplacementScale::Omega).unwrap();
    assert!(rep.u_distance_from_identity < 1e-15);
    let tiny = AnnihilatorSpec { x: 1e-14, ..iso() };
    let rep = displaced_coherent_and_u(&tiny, c(1.0, 0.5), &s, DisplacementScale::Omega).unwrap();
    assert!(rep.u_distance_from_identity < 1e-6);
}

#[test]
fn printed_displacement_argument_misses_unless_unit_omega() {
    let s = space();
    let wide = AnnihilatorSpec { omega: 2.0, ..iso() };
    let rep = displaced_coherent_and_u(&wide, c(1.5, 0.3), &s, DisplacementScale::SqrtOmega).unwrap();
    assert!(rep.branches.iter().all(|b| b.overlap < 0.95 && b.residual > 1e-2));
    let unit = AnnihilatorSpec { omega: 1.0, ..iso() };
    let rep = displaced_coherent_and_u(&unit, c(0.8, 0.3), &s, DisplacementScale::SqrtOmega).unwrap();
    assert!(rep.branches.iter().all(|b| (b.overlap - 1.0).abs() < 1e-8));
}

#[test]
fn pseudo_hermitian_transform_checks() {
    let s = space();
    let spec = iso();
    let a0 = build_annihilator(&spec, &s).unwrap();
    let (h0, _) = hamiltonian_h0(&spec, &s, 10).unwrap();
    for (rho, tau) in [(0.3, 0.2), (-0.25, 0.25), (0.0, 0.0), (0.5, -0.4)] {
        let b = pseudo_hermitian_transform(rho, tau, &a0, &h0, &s);
        let rep = check_transform(&b, &spec, &s, 10, c(0.5, -0.3)).unwrap();
        let w = spec.omega;
        assert!(rep.comm_a_atilde < 1e-10, "{rho},{tau}: {}", rep.comm_a_atilde);
        assert!(rep.comm_h_a < 1e-9 && rep.comm_h_atilde < 1e-9);
        assert!(rep.pseudo_hermiticity <= 1e-8, "{}", rep.pseudo_hermiticity);
        assert!(rep.eta_hermiticity < 1e-12);
        assert!(rep.eta_min_eigenvalue > 0.0);
        assert!(rep.spectrum_deviation <= 1e-7 * w, "{rho},{tau}: {}", rep.spectrum_deviation);
        assert!(rep.eigenstate_residual < 1e-8);
        assert!(rep.coherent_residual_normalized < 1e-8);
    }
}

#[test]
fn t_unitarity() {
    let s = space();
    let spec = iso();
    let a0 = build_annihilator(&spec, &s).unwrap();
    let (h0, _) = hamiltonian_h0(&spec, &s, 10).unwrap();
    let z = c(0.0, 0.0);
    let generic = check_transform(&pseudo_hermitian_transform(0.3, 0.2, &a0, &h0, &s), &spec, &s, 10, z).unwrap();
    assert!(generic.t_unitarity > 1e-2);
    // with ρ̃ = −τ̃, T is e^{−τ̃²/2} times a displacement
    let special = check_transform(&pseudo_hermitian_transform(-0.2, 0.2, &a0, &h0, &s), &spec, &s, 10, z).unwrap();
    assert!(special.t_scaled_unitarity < 1e-9, "{}", special.t_scaled_unitarity);
    assert!((special.t_unitarity - (1.0 - (-0.04f64).exp())).abs() < 1e-9);
    let trivial = check_transform(&pseudo_hermitian_transform(0.0, 0.0, &a0, &h0, &s), &spec, &s, 10, z).unwrap();
    assert!(trivial.t_unitarity < 1e-15);
}
