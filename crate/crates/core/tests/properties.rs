//! Invariants over random images, keys and circuits.

mod common;

use neqr_cipher::cipher::{build_encoder, decrypt, encrypt, Compression, EncryptionKey};
use neqr_cipher::metrics::{npcr, uaci};
use neqr_cipher::qimage::GrayImage;
use neqr_cipher::qsim::run_statevector;
use neqr_cipher::synth::factor_shared_controls;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn image_strategy(max_order: u32) -> impl Strategy<Value = GrayImage> {
    (1..=max_order).prop_flat_map(|n| {
        prop::collection::vec(any::<u8>(), 1 << (2 * n)).prop_map(move |px| GrayImage::new(n, px).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn decrypt_inverts_encrypt(img in image_strategy(4), seed in any::<u64>()) {
        let key = EncryptionKey::random(img.order(), &mut ChaCha8Rng::seed_from_u64(seed)).unwrap();
        let c = encrypt(&img, &key).unwrap();
        prop_assert_eq!(decrypt(&c, &key).unwrap(), img);
    }

    #[test]
    fn encryption_matches_oracle_for_order_one(px in prop::collection::vec(any::<u8>(), 4), seed in any::<u64>()) {
        let key = EncryptionKey::random(1, &mut ChaCha8Rng::seed_from_u64(seed)).unwrap();
        let got = encrypt(&GrayImage::new(1, px.clone()).unwrap(), &key).unwrap();
        let want = common::encrypt_oracle(&px, 1, key.p(), key.q(), key.s(), key.t(), key.l0(), key.delta());
        prop_assert_eq!(got.pixels(), want.as_slice());
    }

    #[test]
    fn metrics_match_definitions(a in prop::collection::vec(any::<u8>(), 16), b in prop::collection::vec(any::<u8>(), 16)) {
        let (ia, ib) = (GrayImage::new(2, a.clone()).unwrap(), GrayImage::new(2, b.clone()).unwrap());
        let (n, u) = common::npcr_uaci(&a, &b);
        prop_assert!((npcr(&ia, &ib).unwrap() - n).abs() < 1e-9);
        prop_assert!((uaci(&ia, &ib).unwrap() - u).abs() < 1e-9);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn compressed_encoders_prepare_the_neqr_state(img in image_strategy(2)) {
        let naive = build_encoder(&img, Compression::Naive);
        let reference = run_statevector(&naive, None).unwrap();
        let support: Vec<usize> = common::neqr_support(img.pixels(), img.order()).into_iter().map(|(k, _)| k).collect();
        let mut got = reference.support();
        got.sort_unstable();
        let mut want = support.clone();
        want.sort_unstable();
        prop_assert_eq!(got, want);
        for comp in [Compression::Minimized, Compression::Factored] {
            let c = build_encoder(&img, comp);
            let s = run_statevector(&c, None).unwrap().truncate(reference.width(), 0.0).unwrap();
            prop_assert!(s == reference, "{} differs", comp.name());
        }
    }

    #[test]
    fn factoring_never_adds_multi_controlled_gates(img in image_strategy(2)) {
        let c = build_encoder(&img, Compression::Minimized);
        let f = factor_shared_controls(&c);
        prop_assert!(f.multi_controlled_count() <= c.multi_controlled_count());
        prop_assert_eq!(factor_shared_controls(&f), f);
    }
}
