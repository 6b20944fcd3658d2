use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rngcal::codes::BitString;
use rngcal::sources::{
    duplication_construction, generate, required_base_length, DuplicationLayout, Segment,
    SourceKind, SourceSpec,
};
use sha2::{Digest, Sha256};

fn digest(x: &BitString) -> String {
    let mut h = Sha256::new();
    h.update((x.len() as u64).to_le_bytes());
    h.update(x.to_bytes());
    hex::encode(h.finalize())
}

fn spec(s: &str) -> SourceSpec {
    s.parse().unwrap()
}

const SPECS: [&str; 6] = [
    "bernoulli:0.5:seed=7",
    "bernoulli:0.3:seed=1",
    "markov:0.9,0.1,0.2,0.8:seed=2",
    "drift:0.5,1e-7:seed=3",
    "regime:100@0.1,50@0.9:seed=4",
    "dup:seed=5",
];

#[test]
fn chacha20_reference_vector() {
    // First words of the ChaCha20 keystream for the all-zero key and nonce.
    let mut r = ChaCha20Rng::from_seed([0; 32]);
    let words: Vec<u32> = (0..4).map(|_| r.next_u32()).collect();
    assert_eq!(
        words,
        vec![0xade0_b876, 0x903d_f1a0, 0xe56a_5d40, 0x28bd_8653]
    );
}

#[test]
fn pinned_digests() {
    // sha256 of (bit count as u64 LE || MSB-first packed bits), 4096 bits each.
    let pinned = [
        "a1c7c7325224f20b3e375cf0a0f0e34db1ec147e3628c20eb7f1be73672728bc",
        "94d02782e8ef5756ddc757e76d03ccf0c897d5aaf3ee99bb1b970cac9b9e53f7",
        "8c6d7ba1f48b04574ed4432e1915563a7ce39d218bb8ace53769e9b8257a4252",
        "54f4bd9020e91ae8fbc9ddfb27cde15cc9fd38f2457a4fcd9d06e43c13b5d721",
        "f9a42b1fe40baaa396bf850e76a7003cde19c4226533178c0ae7be96e1d86e60",
        "f43a7fb88fbd1e55b4db98247c48bc34c946da1897b95ba6c6d4f66e84a2ab06",
    ];
    for (s, want) in SPECS.iter().zip(pinned) {
        let x = generate(&spec(s), 4096).unwrap();
        assert_eq!(digest(&x), want, "{s}");
    }
}

#[test]
fn reproducible_and_prefix_consistent() {
    for s in SPECS {
        let long = generate(&spec(s), 5000).unwrap();
        assert_eq!(generate(&spec(s), 5000).unwrap(), long);
        for n in [0, 1, 2, 13, 14, 15, 254, 255, 1000, 4999] {
            assert_eq!(generate(&spec(s), n).unwrap(), long.prefix(n), "{s} n={n}");
        }
    }
    assert_ne!(
        generate(&spec("bernoulli:0.5:seed=1"), 64).unwrap(),
        generate(&spec("bernoulli:0.5:seed=2"), 64).unwrap()
    );
}

#[test]
fn spec_strings_roundtrip() {
    for s in SPECS {
        let parsed = spec(s);
        assert_eq!(spec(&parsed.to_string()), parsed);
    }
    assert_eq!(
        spec("dup"),
        SourceSpec::new(SourceKind::Duplication, 0).unwrap()
    );
    let err = "poisson:3".parse::<SourceSpec>().unwrap_err().to_string();
    assert!(
        err.contains("bernoulli, markov, drift, regime, dup"),
        "{err}"
    );
    for bad in [
        "bernoulli",
        "bernoulli:2",
        "markov:0.5,0.5",
        "markov:0.5,0.6,0.5,0.5",
        "regime:0@0.5",
        "dup:3",
        "bernoulli:0.5:seed=x",
    ] {
        assert!(bad.parse::<SourceSpec>().is_err(), "{bad}");
    }
}

#[test]
fn degenerate_bias() {
    assert_eq!(
        generate(&spec("bernoulli:1.0:seed=1"), 8)
            .unwrap()
            .to_string(),
        "11111111"
    );
}

fn ones_fraction(x: &[bool]) -> f64 {
    x.iter().filter(|&&b| b).count() as f64 / x.len() as f64
}

#[test]
fn drift_reaches_its_target() {
    let n = 1_000_000;
    for seed in 0..20 {
        // 0.5 rising to 0.6 across the stream.
        let s = SourceSpec::new(
            SourceKind::DriftingBias {
                p0: 0.5,
                rate: 0.1 / n as f64,
            },
            seed,
        )
        .unwrap();
        let x = generate(&s, n).unwrap();
        let f = ones_fraction(&x.as_slice()[n * 9 / 10..]);
        assert!(f > 0.58 && f < 0.62, "seed {seed}: {f}");
    }
}

#[test]
fn markov_transition_frequencies() {
    let x = generate(&spec("markov:0.9,0.1,0.3,0.7:seed=9"), 200_000).unwrap();
    let b = x.as_slice();
    let mut counts = [[0usize; 2]; 2];
    for w in b.windows(2) {
        counts[usize::from(w[0])][usize::from(w[1])] += 1;
    }
    let p01 = counts[0][1] as f64 / (counts[0][0] + counts[0][1]) as f64;
    let p10 = counts[1][0] as f64 / (counts[1][0] + counts[1][1]) as f64;
    assert!((p01 - 0.1).abs() < 0.005, "{p01}");
    assert!((p10 - 0.3).abs() < 0.01, "{p10}");
    // Stationary P(1) = 0.1 / (0.1 + 0.3).
    assert!((ones_fraction(b) - 0.25).abs() < 0.01);
}

#[test]
fn regime_segments_follow_their_bias() {
    let s = SourceSpec::new(
        SourceKind::RegimeSwitch {
            segments: vec![Segment { len: 1000, p: 0.1 }, Segment { len: 500, p: 0.9 }],
        },
        11,
    )
    .unwrap();
    let x = generate(&s, 150_000).unwrap();
    let (mut low, mut high) = (Vec::new(), Vec::new());
    for (i, &bit) in x.as_slice().iter().enumerate() {
        if i % 1500 < 1000 {
            low.push(bit);
        } else {
            high.push(bit);
        }
    }
    assert!((ones_fraction(&low) - 0.1).abs() < 0.01);
    assert!((ones_fraction(&high) - 0.9).abs() < 0.01);
}

#[test]
fn duplicated_halves_are_identical() {
    // Blocks u_0..u_3 end at output bit 131068; u_4 would need 2^33 bits.
    let n = 131_068;
    for seed in 0..5 {
        let y = generate(&SourceSpec::new(SourceKind::Duplication, seed).unwrap(), n).unwrap();
        let b = y.as_slice();
        let mut at = 0;
        for k in 0..4 {
            let len = DuplicationLayout::block_len(k).unwrap() as usize;
            let (first, second) = (&b[at..at + len], &b[at + len..at + 2 * len]);
            assert_eq!(first, second, "k={k}");
            assert_eq!(ones_fraction(first), ones_fraction(second));
            at += 2 * len;
        }
        assert_eq!(at, n);
    }
}

#[test]
fn duplication_source_matches_the_construction() {
    for n in [0, 4, 28, 29, 508, 5000] {
        let base = generate(
            &SourceSpec::bernoulli(0.5, 7).unwrap(),
            required_base_length(n),
        )
        .unwrap();
        assert_eq!(
            generate(&spec("dup:seed=7"), n).unwrap(),
            duplication_construction(&base, n).unwrap()
        );
    }
}
