//! Property tests over seeded random instances.

use num_complex::Complex64;
use proptest::prelude::*;

use quatred::algebra::star::{bicommutant, commutant};
use quatred::dynamics::{evolve, propagator, transition_probs};
use quatred::functors::{components, extend_scalars, reconstruct, restrict_to_plus, split_plus_minus, Field, ScalarMatrix};
use quatred::linalg::embed::{complex_embed, quaternionify_complex, CMatrix};
use quatred::linalg::matrix::outer;
use quatred::linalg::polar::{polar_antiselfadjoint_in, polar_residuals};
use quatred::linalg::spectral::{complex_operator_norm, operator_norm};
use quatred::random::{
    antiselfadjoint, cmatrix, complex64, complex_structure, frame, imaginary_unit, qmatrix, qvector, real_scalar,
    rmatrix, rng, unit_qvector, unitary, Rand,
};
use quatred::{qmul, Hamiltonian, QMatrix, QVector, Quaternion, StarAlgebra, StateFunctional};

fn quat() -> impl Strategy<Value = Quaternion> {
    (-3.0..3.0f64, -3.0..3.0f64, -3.0..3.0f64, -3.0..3.0f64).prop_map(|(w, x, y, z)| Quaternion::new(w, x, y, z))
}

fn conj_by(u: &QMatrix, m: &QMatrix) -> QMatrix {
    &(u * m) * &u.adjoint()
}

/// A random unit vector of `H⁺` for the split of `j` along `i`.
fn plus_vector(g: &mut Rand, s: &quatred::SplitSpace, n: usize) -> QVector {
    let i = s.i;
    s.plus_basis
        .iter()
        .fold(QVector::zeros(n), |acc, b| &acc + &b.mul_right(i.complex(complex64(g))))
        .normalized()
        .expect("nonzero")
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn quaternion_norm_is_multiplicative(p in quat(), q in quat(), r in quat()) {
        let scale = 1.0 + p.norm() * q.norm() * r.norm();
        prop_assert!((qmul(p, q).norm() - p.norm() * q.norm()).abs() <= 1e-12 * scale);
        let assoc = qmul(qmul(p, q), r) - qmul(p, qmul(q, r));
        prop_assert!(assoc.norm() <= 1e-12 * scale);
        prop_assert!((qmul(p, q).conj() - qmul(q.conj(), p.conj())).norm() <= 1e-12 * scale);
    }

    #[test]
    fn embedding_is_a_star_homomorphism(seed in any::<u64>(), n in 1usize..5) {
        let mut g = rng(seed);
        let f = frame(&mut g);
        let (a, b) = (qmatrix(&mut g, n), qmatrix(&mut g, n));
        let (ea, eb) = (complex_embed(&a, &f), complex_embed(&b, &f));
        let scale = a.fro_norm() * b.fro_norm();
        prop_assert!((complex_embed(&(&a * &b), &f) - &ea * &eb).norm() <= 1e-12 * scale);
        prop_assert!((complex_embed(&a.adjoint(), &f) - ea.adjoint()).norm() <= 1e-12 * a.fro_norm());
        let other = frame(&mut g);
        prop_assert!((operator_norm(&a) - complex_operator_norm(&complex_embed(&a, &other))).abs() <= 1e-10 * a.fro_norm());
    }

    #[test]
    fn extension_ledger(seed in any::<u64>(), n in 1usize..5) {
        let mut g = rng(seed);
        let f = frame(&mut g);
        let m = rmatrix(&mut g, n, n);
        let c = extend_scalars(&ScalarMatrix::Real(m.clone()), Field::Complex, &f).unwrap().into_complex().unwrap();
        let q1 = extend_scalars(&ScalarMatrix::Complex(c.clone()), Field::Quaternion, &f).unwrap().into_quaternion().unwrap();
        let q2 = extend_scalars(&ScalarMatrix::Real(m.clone()), Field::Quaternion, &f).unwrap().into_quaternion().unwrap();
        // extension composes and preserves the norm
        prop_assert!((&q1 - &q2).fro_norm() <= 1e-12 * m.norm());
        let norm = m.clone().svd(false, false).singular_values.max();
        prop_assert!((operator_norm(&q1) - norm).abs() <= 1e-9 * (1.0 + norm));
        // complex extension commutes with products and adjoints
        let (x, y) = (cmatrix(&mut g, n, n), cmatrix(&mut g, n, n));
        let ext = |z: &CMatrix| quaternionify_complex(z, &f).unwrap();
        let scale = x.norm() * y.norm();
        prop_assert!((&ext(&(&x * &y)) - &(&ext(&x) * &ext(&y))).fro_norm() <= 1e-12 * scale);
        prop_assert!((&ext(&x.adjoint()) - &ext(&x).adjoint()).fro_norm() <= 1e-12 * x.norm());
        prop_assert!(extend_scalars(&ScalarMatrix::Complex(x), Field::Complex, &f).is_err());
    }

    #[test]
    fn split_round_trips(seed in any::<u64>(), n in 1usize..5) {
        let mut g = rng(seed);
        let f = frame(&mut g);
        let s = split_plus_minus(&complex_structure(&mut g, n), f.i()).unwrap();
        prop_assert_eq!(s.dim(), n);
        prop_assert!(s.j_map_residual() <= 1e-10);
        let v = qvector(&mut g, n);
        let (v1, v2) = components(&v, &s, &f).unwrap();
        prop_assert!((&reconstruct(&v1, &v2, &s, &f).unwrap() - &v).norm() <= 1e-10 * v.norm());
        let m = cmatrix(&mut g, n, n);
        let back = restrict_to_plus(&quatred::functors::extend_from_plus(&m, &s).unwrap(), &s).unwrap();
        prop_assert!((back - &m).norm() <= 1e-10 * m.norm());
    }

    #[test]
    fn polar_postconditions(seed in any::<u64>(), n in 1usize..5) {
        let mut g = rng(seed);
        let a = antiselfadjoint(&mut g, n);
        let p = polar_antiselfadjoint_in(&a, &frame(&mut g)).unwrap();
        for r in polar_residuals(&a, &p) {
            prop_assert!(r <= 1e-9, "{r}");
        }
    }

    #[test]
    fn pure_evolution_is_unitary(seed in any::<u64>(), n in 1usize..5) {
        let mut g = rng(seed);
        let f = frame(&mut g);
        let h = Hamiltonian::new(antiselfadjoint(&mut g, n), f).unwrap();
        let (s, t) = (real_scalar(&mut g), real_scalar(&mut g));
        let u = propagator(&h, s).unwrap();
        prop_assert!((&(&u.adjoint() * &u) - &QMatrix::identity(n)).fro_norm() <= 1e-9);
        let ust = propagator(&h, s + t).unwrap();
        prop_assert!((&ust - &(&u * &propagator(&h, t).unwrap())).fro_norm() <= 1e-9);
    }

    #[test]
    fn complex_evolution_keeps_plus_and_kills_ps(seed in any::<u64>(), n in 1usize..5) {
        let mut g = rng(seed);
        let f = frame(&mut g);
        let u = unitary(&mut g, n);
        let m = cmatrix(&mut g, n, n);
        let anti = (&m - m.adjoint()) * Complex64::new(0.5, 0.0);
        let h = Hamiltonian::new(conj_by(&u, &quaternionify_complex(&anti, &f).unwrap()), f).unwrap();
        let j = conj_by(&u, &QMatrix::scalar(n, f.i().as_quaternion()));
        let s = split_plus_minus(&j, imaginary_unit(&mut g)).unwrap();
        let (v, w) = (plus_vector(&mut g, &s, n), plus_vector(&mut g, &s, n));
        let t = real_scalar(&mut g);
        let vt = evolve(&h, &v, t).unwrap();
        prop_assert!((&j.apply(&vt) - &vt.mul_right(s.i.as_quaternion())).norm() <= 1e-9);
        let p = transition_probs(&vt, &w, &s.frame()).unwrap();
        prop_assert!(p.ps <= 1e-12);
        prop_assert!((p.ph - p.pc).abs() <= 1e-12);
    }

    #[test]
    fn state_is_additive_on_orthogonal_projections(seed in any::<u64>(), n in 1usize..5) {
        let mut g = rng(seed);
        let mu = StateFunctional::new(unit_qvector(&mut g, n)).unwrap();
        let u = unitary(&mut g, n);
        let projections: Vec<QMatrix> = u.columns().iter().map(|c| outer(c, c)).collect();
        let total: f64 = projections.iter().map(|e| mu.prob(e)).sum();
        prop_assert!((total - 1.0).abs() <= 1e-10);
        if n > 1 {
            let pair = &projections[0] + &projections[n - 1];
            let sum = mu.prob(&projections[0]) + mu.prob(&projections[n - 1]);
            prop_assert!((mu.prob(&pair) - sum).abs() <= 1e-10);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn commutant_is_closed(seed in any::<u64>(), n in 1usize..4) {
        let mut g = rng(seed);
        let f = frame(&mut g);
        let u = unitary(&mut g, n);
        let gens = vec![conj_by(&u, &quaternionify_complex(&cmatrix(&mut g, n, n), &f).unwrap())];
        let a = StarAlgebra::new(n, gens).unwrap();
        let c1 = commutant(&a);
        let c3 = commutant(&StarAlgebra::new(n, bicommutant(&a).basis).unwrap());
        prop_assert!(c1.distance(&c3) <= 1e-8);
        prop_assert!(c1.closure_residual() <= 1e-8);
    }
}
