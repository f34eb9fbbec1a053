mod common;

use bell4::algebra::{
    expectation, hermitian_eigenvalues, pure_to_density, spectral_radius, permute_qubits,
    PureState, UnitVector3,
};
use bell4::bell::{bell_value, bell_value_raw, build_d4, mermin_b3, omega, Directions, SettingSet};
use common::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn d4_is_hermitian_for_1000_random_settings() {
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    for _ in 0..1000 {
        let (settings, _, _) = rand_settings(&mut rng);
        let i = rng.gen_range(1..=4);
        let op = build_d4(&settings, i).unwrap();
        assert!(op.matrix.hermiticity_deviation() <= 1e-12);
    }
}

#[test]
fn d4_spectral_radius_at_most_two() {
    let mut rng = ChaCha8Rng::seed_from_u64(102);
    let mut worst = 0.0f64;
    for _ in 0..250 {
        let (settings, _, _) = rand_settings(&mut rng);
        for i in 1..=4 {
            let op = build_d4(&settings, i).unwrap();
            let r = spectral_radius(&op.matrix);
            worst = worst.max(r);
            assert!(r <= 2.0 + 1e-9, "radius {r} at i={i}");
        }
    }
    // the bound is attained at the GHZ-optimal settings
    let op = build_d4(&ghz_optimal_settings(), 1).unwrap();
    assert!((spectral_radius(&op.matrix) - 2.0).abs() < 1e-10);
    assert!(worst <= 2.0 + 1e-9);
}

#[test]
fn bell_value_is_affine_in_each_direction() {
    // value at lam*v1 + (1-lam)*v2 (renormalization disabled) interpolates
    let mut rng = ChaCha8Rng::seed_from_u64(103);
    for _ in 0..50 {
        let (settings, _, _) = rand_settings(&mut rng);
        let rho = pure_to_density(&bell4::states::haar_random_pure::<f64>(rng.gen()));
        let i = rng.gen_range(1..=4);
        let dirs = settings.directions();
        for (slot_idx, slot) in bell4::bell::Slot::ALL.iter().enumerate() {
            if slot_idx % 3 != 0 {
                continue;
            }
            let v1 = rand_unit(&mut rng);
            let v2 = rand_unit(&mut rng);
            let lam: f64 = rng.gen_range(0.0..1.0);
            let mut d1 = dirs;
            *d1.slot_mut(*slot) = v1;
            let mut d2 = dirs;
            *d2.slot_mut(*slot) = v2;
            let mut dmix = dirs;
            *dmix.slot_mut(*slot) = [
                lam * v1[0] + (1.0 - lam) * v2[0],
                lam * v1[1] + (1.0 - lam) * v2[1],
                lam * v1[2] + (1.0 - lam) * v2[2],
            ];
            let e1 = bell_value_raw(&rho, &d1, i);
            let e2 = bell_value_raw(&rho, &d2, i);
            let emix = bell_value_raw(&rho, &dmix, i);
            assert!((emix - (lam * e1 + (1.0 - lam) * e2)).abs() < 1e-10);
        }
    }
}

#[test]
fn permutation_covariance() {
    let mut rng = ChaCha8Rng::seed_from_u64(104);
    let perms: [[usize; 4]; 5] = [
        [2, 1, 3, 4],
        [2, 3, 4, 1],
        [4, 3, 2, 1],
        [1, 3, 2, 4],
        [3, 1, 4, 2],
    ];
    for _ in 0..30 {
        let (settings, _, _) = rand_settings(&mut rng);
        let psi = bell4::states::haar_random_pure::<f64>(rng.gen());
        let rho = pure_to_density(&psi);
        let perm = perms[rng.gen_range(0..perms.len())];
        let psi_p = permute_qubits(&psi, perm).unwrap();
        let rho_p = pure_to_density(&psi_p);
        let settings_p = settings.permute(perm).unwrap();
        for i in 1..=4usize {
            // qubit i of the original sits at position inverse_perm(i)
            let new_i = perm.iter().position(|&p| p == i).unwrap() + 1;
            let v = bell_value(&rho, &settings, i).unwrap();
            let vp = bell_value(&rho_p, &settings_p, new_i).unwrap();
            assert!((v - vp).abs() < 1e-10, "perm {perm:?} i={i}: {v} vs {vp}");
        }
    }
}

#[test]
fn swapping_a_and_b_preserves_mermin_spectral_radius() {
    let mut rng = ChaCha8Rng::seed_from_u64(105);
    for _ in 0..40 {
        let (settings, _, _) = rand_settings(&mut rng);
        let swapped = SettingSet::new(settings.b, settings.a);
        let m1 = mermin_b3(&settings, [1, 2, 3]).unwrap();
        let m2 = mermin_b3(&swapped, [1, 2, 3]).unwrap();
        let r1 = hermitian_eigenvalues(&m1)
            .into_iter()
            .map(f64::abs)
            .fold(0.0, f64::max);
        let r2 = hermitian_eigenvalues(&m2)
            .into_iter()
            .map(f64::abs)
            .fold(0.0, f64::max);
        assert!((r1 - r2).abs() < 1e-9, "{r1} vs {r2}");
    }
}

#[test]
fn fully_separable_random_settings_stay_within_one() {
    let mut rng = ChaCha8Rng::seed_from_u64(106);
    let rho = pure_to_density(&PureState::<f64>::basis(4, 0));
    for _ in 0..200 {
        let (settings, _, _) = rand_settings(&mut rng);
        for i in 1..=4 {
            let v = bell_value(&rho, &settings, i).unwrap();
            assert!(v.abs() <= 1.0 + 1e-12);
        }
    }
}

#[test]
fn singleton_times_ghz3_reaches_two() {
    // |0> on qubit 1 with the 3-qubit GHZ on (2,3,4): the D4(1) value at
    // z/x/y settings is -2, which exceeds the sqrt(3) threshold attributed
    // to this product structure
    let ghz3 = {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let mut amps = vec![bell4::C64::new(0.0, 0.0); 8];
        amps[0] = bell4::C64::new(s, 0.0);
        amps[7] = bell4::C64::new(s, 0.0);
        PureState::new(3, amps).unwrap()
    };
    let psi = bell4::states::product(&[
        (PureState::basis(1, 0), vec![1]),
        (ghz3, vec![2, 3, 4]),
    ])
    .unwrap();
    let rho = pure_to_density(&psi);
    let z = UnitVector3::z_axis();
    let x = UnitVector3::x_axis();
    let y = UnitVector3::y_axis();
    let settings = SettingSet::new([z, x, x, x], [z, y, y, y]);
    let v = bell_value(&rho, &settings, 1).unwrap();
    assert!((v + 2.0).abs() < 1e-12);
}

#[test]
fn omega_examples_at_fixed_settings() {
    let rho0 = pure_to_density(&PureState::<f64>::basis(4, 0));
    let all_z = SettingSet::uniform(UnitVector3::z_axis());
    assert!((omega(&rho0, &all_z).unwrap() - 4.0).abs() < 1e-12);

    let rho_ghz = pure_to_density(&ghz4());
    let om = omega(&rho_ghz, &ghz_optimal_settings()).unwrap();
    assert!((om - 7.0).abs() < 1e-10);
}

#[test]
fn raw_path_matches_validated_path() {
    let mut rng = ChaCha8Rng::seed_from_u64(107);
    for _ in 0..50 {
        let (settings, _, _) = rand_settings(&mut rng);
        let rho = pure_to_density(&bell4::states::haar_random_pure::<f64>(rng.gen()));
        let i = rng.gen_range(1..=4);
        let via_expectation = bell_value(&rho, &settings, i).unwrap();
        let via_raw = bell_value_raw(&rho, &settings.directions(), i);
        assert!((via_expectation - via_raw).abs() < 1e-13);
    }
}

#[test]
fn raw_directions_accept_zero_vectors() {
    let rho = pure_to_density(&PureState::<f64>::basis(4, 0));
    let mut dirs = Directions {
        a: [[0.0, 0.0, 1.0]; 4],
        b: [[0.0, 0.0, 1.0]; 4],
    };
    dirs.a[0] = [0.0, 0.0, 0.0];
    let v = bell_value_raw(&rho, &dirs, 1);
    // C_1 = z/2, D-part = -z/2: 1*(1/2) - 1/2 = 0
    assert!(v.abs() < 1e-14);
}

#[test]
fn oracle_equivalence_on_proof_forms() {
    let mut rng = ChaCha8Rng::seed_from_u64(108);
    let rho0 = pure_to_density(&PureState::<f64>::basis(4, 0));
    for _ in 0..200 {
        let (settings, a, b) = rand_settings(&mut rng);
        let alpha: f64 = rng.gen_range(0.0..std::f64::consts::FRAC_PI_2);
        let beta: f64 = rng.gen_range(0.0..std::f64::consts::FRAC_PI_2);

        let dense = bell_value(&rho0, &settings, 1).unwrap();
        assert!((dense - thm1_d41(a, b)).abs() < 1e-10);

        let schmidt = bell4::states::product(&[
            (bell4::states::schmidt_pair(alpha), vec![1, 2]),
            (PureState::basis(1, 0), vec![3]),
            (PureState::basis(1, 0), vec![4]),
        ])
        .unwrap();
        let rho_s = pure_to_density(&schmidt);
        assert!((bell_value(&rho_s, &settings, 1).unwrap() - thm2_d41(a, b, alpha)).abs() < 1e-10);
        assert!((bell_value(&rho_s, &settings, 3).unwrap() - thm2_d43(a, b, alpha)).abs() < 1e-10);

        let two_pairs = bell4::states::product(&[
            (bell4::states::schmidt_pair(alpha), vec![1, 2]),
            (bell4::states::schmidt_pair(beta), vec![3, 4]),
        ])
        .unwrap();
        let rho_p = pure_to_density(&two_pairs);
        assert!(
            (bell_value(&rho_p, &settings, 1).unwrap() - thm3i_d41(a, b, alpha, beta)).abs()
                < 1e-10
        );
    }
}

#[test]
fn linearity_in_the_state() {
    let mut rng = ChaCha8Rng::seed_from_u64(109);
    for _ in 0..30 {
        let (settings, _, _) = rand_settings(&mut rng);
        let psi1 = bell4::states::haar_random_pure::<f64>(rng.gen());
        let psi2 = bell4::states::haar_random_pure::<f64>(rng.gen());
        let p: f64 = rng.gen_range(0.01..0.99);
        let mixed = bell4::algebra::mix(&[(p, psi1.clone()), (1.0 - p, psi2.clone())]).unwrap();
        let i = rng.gen_range(1..=4);
        let op = build_d4(&settings, i).unwrap();
        let e1 = expectation(&pure_to_density(&psi1), &op.matrix).unwrap();
        let e2 = expectation(&pure_to_density(&psi2), &op.matrix).unwrap();
        let em = expectation(&mixed, &op.matrix).unwrap();
        assert!((em - (p * e1 + (1.0 - p) * e2)).abs() < 1e-10);
    }
}
