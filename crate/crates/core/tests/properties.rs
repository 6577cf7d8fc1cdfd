use ffdiophantine::algebra::{parse_series, Field, FieldSpec, LaurentSeries, Polynomial};
use ffdiophantine::approx::Witness;
use ffdiophantine::cli::generate::{
    error_caps, plant_pair, plant_witness, q_caps, random_exact_series, random_poly,
    random_poly_of_degree, random_series, random_tuple, sample_plane_matrix, PlantParams,
};
use ffdiophantine::cli::rng::instance_rng;
use ffdiophantine::limsup::{
    intersection_check, plane_identity_check, prop_backward_check, prop_forward_check, tau0,
    ForwardParams, TsetMode, TsetParams,
};
use ffdiophantine::rational::int;
use proptest::prelude::*;
use rand::Rng;

const DIMS: [[usize; 2]; 4] = [[1, 1], [1, 2], [2, 1], [2, 2]];

fn field(spec: &str) -> std::sync::Arc<Field> {
    Field::new(FieldSpec::parse(spec).unwrap()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn planted_pairs_differ_by_a_homogeneous_member(seed in any::<u64>(), d in 0usize..4) {
        let f = Field::prime(2).unwrap();
        let [m, n] = DIMS[d];
        let mut rng = instance_rng(seed, "pair", 0);
        let pair = plant_pair(m, n, int(1), int(1), -60, &f, &mut rng).unwrap();
        let c = intersection_check(&pair.y, &pair.theta, &pair.t, &pair.alpha, &pair.alpha2, pair.tau, &f).unwrap();
        prop_assert!(!c.report.is_hard_failure(), "{:?}", c.report);
    }

    #[test]
    fn forward_membership_maps_back(seed in any::<u64>(), d in 0usize..4, horizon in 4i64..=8) {
        let f = Field::prime(3).unwrap();
        let [m, n] = DIMS[d];
        let (eta, eps) = (int(1), int(1));
        let params = PlantParams { m, n, eta, eps, horizon, floor: -60, exact_hit: false };
        let planted = plant_witness(&params, &f, &mut instance_rng(seed, "plant", 0)).unwrap();
        let tau = tau0(eps, &TsetParams::new(m, n, eta, TsetMode::Multiplicative).unwrap()).unwrap() / int(2);
        let fp = ForwardParams { horizon: planted.horizon, eta, eps, tau, sigma_threshold: 8 };
        let fwd = prop_forward_check(&planted.y, &planted.theta, &planted.alpha, &fp, &f).unwrap();
        prop_assert!(!fwd.report.is_hard_failure(), "{:?}", fwd.report);
        if let (Some(t), Some(true)) = (&fwd.tuple, fwd.standard.as_ref().map(|s| s.member)) {
            let bw = prop_backward_check(&planted.y, &planted.theta, t, &planted.alpha, tau, eta, &f).unwrap();
            prop_assert!(bw.report.holds(), "{:?}", bw.report);
        }
    }

    #[test]
    fn delta_and_plane_memberships_agree(seed in any::<u64>(), d in 0usize..4, structured in any::<bool>()) {
        let f = Field::prime(2).unwrap();
        let [m, n] = DIMS[d];
        let mut rng = instance_rng(seed, "plane", 0);
        let params = TsetParams::new(m, n, int(1), TsetMode::Multiplicative).unwrap();
        let tau = tau0(int(1), &params).unwrap() / int(2);
        let t = random_tuple(&params, tau, &mut rng).unwrap();
        let caps = q_caps(&t, m, tau);
        let k = (0..n).find(|&j| caps[j] >= 0).unwrap();
        let mut q: Vec<Polynomial> = caps.iter().map(|&c| random_poly(&f, c.min(3), &mut rng)).collect();
        q[k] = random_poly_of_degree(&f, rng.gen_range(0..=caps[k].min(3) + 1) as usize, &mut rng);
        let p = (0..m).map(|_| random_poly(&f, 1, &mut rng)).collect();
        let alpha = Witness::new(p, q);
        let theta: Vec<LaurentSeries> = (0..m).map(|_| random_series(&f, -60, &mut rng)).collect();
        let tops: Vec<i64> = error_caps(&t, m, tau).iter().map(|&c| c + rng.gen_range(-2..=1)).collect();
        let y = sample_plane_matrix(&alpha, &theta, structured.then_some(&tops[..]), -60, &f, &mut rng).unwrap();
        let c = plane_identity_check(&y, &theta, &t, &alpha, tau, &f).unwrap();
        prop_assert!(c.report.holds(), "{:?}", c.report);
    }

    #[test]
    fn format_then_parse_round_trips(seed in any::<u64>(), which in 0usize..4, depth in 1i64..30, truncated in any::<bool>()) {
        let f = field(["p=2", "p=3", "p=5", "p=2,d=2"][which]);
        let mut rng = instance_rng(seed, "format", 0);
        let s = if truncated {
            random_series(&f, -depth, &mut rng).shift(rng.gen_range(0..4))
        } else {
            random_exact_series(&f, depth, &mut rng)
        };
        let back = parse_series(&s.format(&f), &f).unwrap();
        prop_assert_eq!(back, s);
    }
}
