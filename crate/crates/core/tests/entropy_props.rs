use deformed_algebra::nonextensive::{
    compose, info_measure, product_dist, shannon_entropy, tsallis_entropy, EntropyParams, ProbDist,
};
use proptest::prelude::*;

const BOLTZMANN: f64 = 1.380649e-23;

fn dist(max_len: usize) -> impl Strategy<Value = ProbDist> {
    prop::collection::vec(1e-6f64..1.0, 1..=max_len).prop_map(|w| {
        let total: f64 = w.iter().sum();
        ProbDist::new(w.iter().map(|x| x / total).collect()).unwrap()
    })
}

fn q_not_one() -> impl Strategy<Value = f64> {
    (0.2f64..3.0).prop_filter("q = 1 is Shannon", |q| (q - 1.0).abs() > 1e-6)
}

fn rel_close(l: f64, r: f64, tol: f64) -> bool {
    (l - r).abs() <= tol * l.abs().max(r.abs()) || l == r
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn pseudo_additive(a in dist(8), b in dist(8), q in q_not_one(), boltz in any::<bool>()) {
        let k = if boltz { BOLTZMANN } else { 1.0 };
        let ep = EntropyParams::new(q, k).unwrap();
        let sa = tsallis_entropy(&a, ep).unwrap();
        let sb = tsallis_entropy(&b, ep).unwrap();
        let joint = tsallis_entropy(&product_dist(&a, &b).unwrap(), ep).unwrap();
        let composed = compose(sa, sb, ep.lambda()).unwrap();
        prop_assert!(rel_close(joint, composed, 1e-10), "q={q} k={k}: {joint} vs {composed}");
    }

    #[test]
    fn non_negative(d in dist(16), q in 0.05f64..5.0) {
        let s = tsallis_entropy(&d, EntropyParams::with_q(q).unwrap()).unwrap();
        prop_assert!(s >= -1e-15, "S_{q} = {s}");
    }

    #[test]
    fn continuous_at_q_one(d in dist(16), dq in 1e-9f64..1e-6, above in any::<bool>()) {
        let q = if above { 1.0 + dq } else { 1.0 - dq };
        let s1 = shannon_entropy(&d, 1.0);
        let sq = tsallis_entropy(&d, EntropyParams::with_q(q).unwrap()).unwrap();
        // S_q - S_1 = O(q - 1); the slope is bounded by the spread of ln p
        let slope = d.probs().iter().map(|p| p.ln().powi(2)).fold(0.0, f64::max);
        prop_assert!((sq - s1).abs() <= dq * slope + 1e-14, "q={q}: {sq} vs {s1}");
    }

    /// The q-weighted information sum equals the entropy with its sign flipped.
    #[test]
    fn weighted_information_sum(d in dist(8), q in q_not_one()) {
        let ep = EntropyParams::with_q(q).unwrap();
        let s = tsallis_entropy(&d, ep).unwrap();
        let weighted: f64 = d
            .probs()
            .iter()
            .map(|&p| p.powf(q) * info_measure(p, ep).unwrap())
            .sum();
        prop_assert!((weighted + s).abs() <= 1e-12 * s.abs().max(1.0), "{weighted} vs {s}");
    }

    #[test]
    fn uniform_closed_form(n in 1usize..64, q in q_not_one()) {
        let s = tsallis_entropy(&ProbDist::uniform(n).unwrap(), EntropyParams::with_q(q).unwrap()).unwrap();
        let want = (1.0 - (n as f64).powf(1.0 - q)) / (q - 1.0);
        prop_assert!((s - want).abs() <= 1e-12 * want.abs().max(1.0));
    }
}

#[test]
fn uniform_four_at_q_two() {
    let s = tsallis_entropy(
        &ProbDist::uniform(4).unwrap(),
        EntropyParams::with_q(2.0).unwrap(),
    )
    .unwrap();
    assert!((s - 0.75).abs() < 1e-15);
}

#[test]
fn certain_outcome_has_no_entropy() {
    let d = ProbDist::new(vec![0.0, 1.0, 0.0]).unwrap();
    for q in [0.3, 1.0, 2.0, 7.5] {
        assert_eq!(
            tsallis_entropy(&d, EntropyParams::with_q(q).unwrap()).unwrap(),
            0.0
        );
    }
}
