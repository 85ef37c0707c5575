mod support;

use std::f64::consts::PI;

use hexwalk::{
    a_theta, apply_coin, build_coin, delta_weight, evolve_observed, graph_distance,
    limit_return_probability, shift_source, shift_target, support_parity_ok, to_physical,
    asymptotic_origin_amplitude, CoinParams64, CoinState64, Site, Sublattice,
};
use num_complex::Complex64;
use proptest::prelude::*;

fn theta_strategy() -> impl Strategy<Value = f64> {
    (1e-3..PI - 1e-3).prop_union(PI + 1e-3..2.0 * PI - 1e-3)
}

/// Away from the degenerate angles, where boundary amplitudes scale like
/// powers of `sin θ` and eventually drop below the pruning threshold.
fn generic_theta_strategy() -> impl Strategy<Value = f64> {
    (0.05..PI - 0.05).prop_union(PI + 0.05..2.0 * PI - 0.05)
}

fn state_strategy() -> impl Strategy<Value = CoinState64> {
    prop::array::uniform6(-1.0f64..1.0)
        .prop_filter("non-zero", |v| v.iter().map(|x| x * x).sum::<f64>() > 1e-3)
        .prop_map(|v| {
            CoinState64::normalized(
                Complex64::new(v[0], v[1]),
                Complex64::new(v[2], v[3]),
                Complex64::new(v[4], v[5]),
            )
            .unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn coin_symmetric_orthogonal_involutory(theta in theta_strategy()) {
        let m = build_coin(&CoinParams64::new(theta).unwrap()).entries();
        for i in 0..3 {
            for j in 0..3 {
                prop_assert!((m[i][j] - m[j][i]).abs() < 1e-12);
                let sq: f64 = (0..3).map(|k| m[i][k] * m[k][j]).sum();
                let id = if i == j { 1.0 } else { 0.0 };
                prop_assert!((sq - id).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn coin_preserves_norm(theta in theta_strategy(), st in state_strategy()) {
        let out = apply_coin(&build_coin(&CoinParams64::new(theta).unwrap()), &st.amplitudes());
        let n: f64 = out.iter().map(|z| z.norm_sqr()).sum();
        prop_assert!((n - 1.0).abs() < 1e-13);
    }

    #[test]
    fn shift_flips_sublattice_and_parity(x in -50i64..50, y in -50i64..50, j in 0usize..3) {
        for site in [Site::a(x, y), Site::b(x, y)] {
            let t = shift_target(site, j);
            prop_assert_ne!(t.sub, site.sub);
            prop_assert_ne!((t.x + t.y).rem_euclid(2), (x + y).rem_euclid(2));
            prop_assert_eq!(shift_source(t, j), site);
        }
    }

    #[test]
    fn physical_coordinates_injective(
        a in (0u8..2, -30i64..30, -30i64..30),
        b in (0u8..2, -30i64..30, -30i64..30),
    ) {
        let mk = |(s, x, y): (u8, i64, i64)| {
            if s == 0 { Site::a(x, y) } else { Site::b(x, y) }
        };
        let (sa, sb) = (mk(a), mk(b));
        let (pa, pb) = (to_physical::<f64>(sa), to_physical::<f64>(sb));
        let same = (pa.px - pb.px).abs() < 1e-9 && (pa.py - pb.py).abs() < 1e-9;
        prop_assert_eq!(same, sa == sb);
    }

    #[test]
    fn evolution_norm_and_parity(theta in theta_strategy(), st in state_strategy()) {
        let coin = build_coin(&CoinParams64::new(theta).unwrap());
        evolve_observed(&st, 60, &coin, |wf| {
            assert!((wf.norm_sqr() - 1.0).abs() < 1e-10);
            assert!(wf.iter().all(|(site, _)| support_parity_ok(*site, wf.time())));
        });
    }

    // Near θ = 0 or π the coin is almost diagonal and boundary amplitudes
    // decay geometrically, so they are pruned long before t = 40.
    #[test]
    fn light_cone_is_sharp(
        theta in (PI / 4.0..3.0 * PI / 4.0).prop_union(5.0 * PI / 4.0..7.0 * PI / 4.0),
        st in state_strategy().prop_filter("all components present", |st| {
            st.amplitudes().iter().all(|z| z.norm() > 0.1)
        }),
    ) {
        let coin = build_coin(&CoinParams64::new(theta).unwrap());
        evolve_observed(&st, 40, &coin, |wf| {
            let t = wf.time();
            let reach = wf.iter().map(|(s, _)| graph_distance(*s).unwrap()).max().unwrap();
            assert_eq!(reach, t);
        });
    }

    #[test]
    fn limit_is_norm_of_origin_amplitude(theta in theta_strategy(), st in state_strategy()) {
        let p = CoinParams64::new(theta).unwrap();
        let lim = limit_return_probability(&p, &st);
        let amp = asymptotic_origin_amplitude(&p, &st).norm_sqr();
        prop_assert!((lim - amp).abs() < 1e-12);
        prop_assert!((0.0..=1.0).contains(&lim));
        let d = delta_weight(&p, &st);
        prop_assert!((0.0..=1.0 + 1e-12).contains(&d));
        prop_assert!(d + 1e-12 >= lim);
    }

    #[test]
    fn global_phase_invariance(theta in theta_strategy(), st in state_strategy(), phi in -PI..PI) {
        let p = CoinParams64::new(theta).unwrap();
        let rotated = st.with_global_phase(phi);
        prop_assert!(
            (limit_return_probability(&p, &st) - limit_return_probability(&p, &rotated)).abs() < 1e-12
        );
        prop_assert!((delta_weight(&p, &st) - delta_weight(&p, &rotated)).abs() < 1e-12);
    }

    #[test]
    fn a_theta_derivative(theta in generic_theta_strategy()) {
        // A = arcsin(u), u = (1−c)/(3+c): dA/dθ = u'/√(1−u²), u' = 4 sinθ/(3+c)².
        let h = 1e-5;
        let at = |t: f64| a_theta(&CoinParams64::new(t).unwrap());
        let fd = (at(theta + h) - at(theta - h)) / (2.0 * h);
        let c = theta.cos();
        let u = (1.0 - c) / (3.0 + c);
        let exact = 4.0 * theta.sin() / (3.0 + c).powi(2) / (1.0 - u * u).sqrt();
        prop_assert!((fd - exact).abs() < 1e-6, "{fd} vs {exact}");
    }
}

#[test]
fn lattice_is_three_regular_bipartite() {
    for x in -6..=6 {
        for y in -6..=6 {
            for site in [Site::a(x, y), Site::b(x, y)] {
                let images: std::collections::BTreeSet<Site> =
                    (0..3).map(|j| shift_target(site, j)).collect();
                assert_eq!(images.len(), 3);
                let preimages: std::collections::BTreeSet<Site> =
                    (0..3).map(|j| shift_source(site, j)).collect();
                assert_eq!(preimages.len(), 3);
                let other = match site.sub {
                    Sublattice::A => Sublattice::B,
                    Sublattice::B => Sublattice::A,
                };
                assert!(images.iter().chain(&preimages).all(|s| s.sub == other));
            }
        }
    }
}

#[test]
fn long_run_norm_random_states() {
    let mut rng = support::rng(17);
    for _ in 0..2 {
        let p = support::random_params(&mut rng);
        let st = support::random_state(&mut rng);
        let wf = evolve_observed(&st, 1000, &build_coin(&p), |wf| {
            assert!((wf.norm_sqr() - 1.0).abs() < 1e-10, "t = {}", wf.time());
        });
        assert_eq!(wf.time(), 1000);
    }
}

#[test]
fn grover_distribution_shapes_at_t100() {
    let coin = build_coin(&CoinParams64::grover());
    let peak = |st: &CoinState64| {
        let wf = hexwalk::evolve(st, 100, &coin);
        let origin = wf.probability(Site::ORIGIN);
        let max_other = wf
            .iter()
            .filter(|(s, _)| **s != Site::ORIGIN)
            .map(|(s, _)| wf.probability(*s))
            .fold(0.0, f64::max);
        (origin, max_other)
    };
    // Localizing state: the origin carries the largest single-site weight.
    let (o, m) = peak(&CoinState64::basis(1));
    assert!(o > 0.1 && o > 2.0 * m, "origin {o}, elsewhere {m}");
    // Delocalized state: no central peak.
    let (o, m) = peak(&CoinState64::uniform());
    assert!(o < 0.01 && o < m, "origin {o}, elsewhere {m}");
}
