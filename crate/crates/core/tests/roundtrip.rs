use proptest::prelude::*;
use quasigroup_cipher::cipher::{
    decrypt_nary, devectorize, encrypt_nary, vectorize, BlockCipher, LeaderBlock, LeaderFan,
    MixSchedule, MixedCipher, NaryStream,
};
use quasigroup_cipher::orthogonality::orthogonal_completion;
use quasigroup_cipher::quasigroup::random_quasigroup;
use quasigroup_cipher::rng::SplitMix64;
use quasigroup_cipher::table::Tuples;
use quasigroup_cipher::Symbol;

fn shape() -> impl Strategy<Value = (usize, usize)> {
    (2usize..=5, 2usize..=3)
}

fn message(q: usize, seed: u64, len: usize) -> Vec<Symbol> {
    SplitMix64::new(seed).symbols(q, len)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn stream((q, n) in shape(), key_seed in any::<u64>(), msg_seed in any::<u64>(), len in 0usize..60) {
        let key = random_quasigroup(q, n, key_seed).unwrap();
        let leaders = LeaderBlock::new(n, message(q, key_seed ^ 1, (n - 1) * (n - 1))).unwrap();
        let plain = message(q, msg_seed, len);
        let cipher = encrypt_nary(&key, &leaders, &plain).unwrap();
        prop_assert_eq!(cipher.len(), plain.len());
        prop_assert_eq!(decrypt_nary(&key, &leaders, &cipher).unwrap(), plain);
    }

    #[test]
    fn block_rounds((q, n) in shape(), seed in any::<u64>(), rounds in 1usize..5, len in 0usize..40) {
        let key = random_quasigroup(q, n, seed).unwrap();
        let cipher = BlockCipher::new(orthogonal_completion(&key, seed), rounds).unwrap();
        let plain = message(q, seed.wrapping_add(7), len);
        let c = cipher.encrypt_padded(&plain).unwrap();
        prop_assert_eq!(cipher.decrypt_padded(&c, len).unwrap(), plain);
    }

    #[test]
    fn leader_fan((q, n) in shape(), seed in any::<u64>(), len in 0usize..30) {
        let key = random_quasigroup(q, n, seed).unwrap();
        let fan = LeaderFan::new(orthogonal_completion(&key, seed), message(q, seed, n - 1)).unwrap();
        let plain = message(q, seed.wrapping_mul(3), len);
        let c = fan.encrypt(&plain).unwrap();
        prop_assert_eq!(c.len(), len * n);
        prop_assert_eq!(fan.decrypt(&c).unwrap(), plain);
    }

    #[test]
    fn mixed((q, n) in shape(), seed in any::<u64>(), digits in prop::collection::vec(1usize..7, 1..4), len in 0usize..60) {
        let key = random_quasigroup(q, n, seed).unwrap();
        let stream = NaryStream::new(key.clone(), LeaderBlock::new(n, message(q, seed, (n - 1) * (n - 1))).unwrap()).unwrap();
        let block = BlockCipher::new(orthogonal_completion(&key, seed ^ 5), 2).unwrap();
        let mixed = MixedCipher::new(stream, block, MixSchedule::new(digits).unwrap()).unwrap();
        let plain = message(q, seed.wrapping_add(1), len);
        let (c, _) = mixed.encrypt(&plain).unwrap();
        prop_assert_eq!(c.len(), mixed.cipher_len(len));
        prop_assert_eq!(mixed.decrypt(&c, len).unwrap(), plain);
    }

    #[test]
    fn bytes(q in 2usize..=20, data in prop::collection::vec(any::<u8>(), 0..64)) {
        prop_assert_eq!(devectorize(&vectorize(&data, q), q).unwrap(), data);
    }
}

#[test]
fn every_short_message_round_trips() {
    let key = random_quasigroup(3, 3, 4).unwrap();
    let leaders = LeaderBlock::new(3, vec![2, 0, 1, 1]).unwrap();
    for len in 0..=5 {
        for plain in Tuples::new(3, len) {
            let c = encrypt_nary(&key, &leaders, &plain).unwrap();
            assert_eq!(decrypt_nary(&key, &leaders, &c).unwrap(), plain);
        }
    }
}

#[test]
fn wrong_leaders_only_disturb_the_first_positions() {
    let mut rng = SplitMix64::new(8);
    for n in 2..=4 {
        let key = random_quasigroup(4, n, rng.next_u64()).unwrap();
        let right = LeaderBlock::new(n, rng.symbols(4, (n - 1) * (n - 1))).unwrap();
        let wrong = LeaderBlock::new(n, rng.symbols(4, (n - 1) * (n - 1))).unwrap();
        let plain = rng.symbols(4, 30);
        let cipher = encrypt_nary(&key, &right, &plain).unwrap();
        let garbled = decrypt_nary(&key, &wrong, &cipher).unwrap();
        assert_eq!(garbled[n - 1..], plain[n - 1..]);
    }
}
