use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rngcal::codes::BitString;
use rngcal::oracle::{
    bernoulli_entropy, enumerate_p_values, exhaustive_reject_count, known_mu_log2_p_value,
    known_mu_p_value, known_mu_p_value_by_enumeration,
};
use rngcal::sources::{generate, SourceSpec};

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-9 * b.abs().max(1e-300)
}

#[test]
fn entropy_values() {
    assert_eq!(bernoulli_entropy(0.5).unwrap().bits(), 1.0);
    assert_eq!(bernoulli_entropy(0.0).unwrap().bits(), 0.0);
    assert!((bernoulli_entropy(0.3).unwrap().bits() - 0.881_290_899_230_692_7).abs() < 1e-10);
    assert!((1.0 - bernoulli_entropy(0.2).unwrap().bits() - 0.278_071_905_112_637_7).abs() < 1e-10);
    assert!(bernoulli_entropy(f64::NAN).is_err());
}

#[test]
fn binomial_tail_matches_full_enumeration() {
    for p in [0.1f64, 0.3, 0.45] {
        let mu = |y: &BitString| {
            let w = y.count_ones() as i32;
            p.powi(w) * (1.0 - p).powi(y.len() as i32 - w)
        };
        for n in 1..=14 {
            let ranked = enumerate_p_values(n, mu).unwrap();
            for v in 0..1u64 << n {
                let x = BitString::from_index(v, n);
                let got = known_mu_p_value(&x, p).unwrap();
                assert!(close(got, ranked[v as usize]), "p={p} x={x}: {got}");
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for n in 15..=20 {
            for _ in 0..4 {
                let x: BitString = (0..n).map(|_| rng.random_bool(p)).collect();
                let want = known_mu_p_value_by_enumeration(&x, p).unwrap();
                assert!(close(known_mu_p_value(&x, p).unwrap(), want), "p={p} n={n}");
            }
        }
    }
}

#[test]
fn known_mu_examples() {
    let x: BitString = "111".parse().unwrap();
    assert!(close(known_mu_p_value(&x, 0.9).unwrap(), 0.125));
    assert_eq!(known_mu_p_value_by_enumeration(&x, 0.9).unwrap(), 0.125);
    let y: BitString = "0101101".parse().unwrap();
    assert_eq!(known_mu_p_value(&y, 0.5).unwrap(), 1.0);
    // Ties count against x: "000" under p = 0.1 is most likely, alone.
    let z: BitString = "000".parse().unwrap();
    assert!(close(known_mu_p_value(&z, 0.1).unwrap(), 0.125));
    let one: BitString = "100".parse().unwrap();
    assert!(close(known_mu_p_value(&one, 0.1).unwrap(), 0.5));
}

#[test]
fn rate_for_a_known_source() {
    let target = 1.0 - bernoulli_entropy(0.2).unwrap().bits();
    let n = 10_000;
    let mean = (0..20)
        .map(|seed| {
            let x = generate(&SourceSpec::bernoulli(0.2, seed).unwrap(), n).unwrap();
            -known_mu_log2_p_value(&x, 0.2).unwrap() / n as f64
        })
        .sum::<f64>()
        / 20.0;
    assert!((mean - target).abs() < 0.05, "{mean} vs {target}");
}

#[test]
fn reject_counts() {
    assert_eq!(exhaustive_reject_count(|_| false, 12).unwrap(), 0);
    assert_eq!(
        exhaustive_reject_count(|x| x.count_ones() == 0, 12).unwrap(),
        1
    );
    assert!(exhaustive_reject_count(|_| false, 15).is_err());
    assert!(enumerate_p_values(25, |_| 0.0).is_err());
    assert!(known_mu_p_value_by_enumeration(&BitString::zeros(25), 0.3).is_err());
}
