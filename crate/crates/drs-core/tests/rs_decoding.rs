//! Decoder correctness: exhaustive minimum-distance checks on small codes,
//! exhaustive correction of every pattern within the error budget, and
//! agreement between the algebraic decoder and the brute-force oracle.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use drs_core::rs::hamming_distance;
use drs_core::{FieldElement, FieldSpec, RSCode};

fn all_messages(code: &RSCode) -> Vec<Vec<FieldElement>> {
    let q = code.spec().q() as u64;
    let total = q.pow(code.k() as u32);
    (0..total)
        .map(|mut idx| {
            (0..code.k())
                .map(|_| {
                    let digit = (idx % q) as u16;
                    idx /= q;
                    code.spec().element(digit as u64).unwrap()
                })
                .collect()
        })
        .collect()
}

/// Every error pattern of weight exactly w over n positions.
fn patterns(n: usize, w: usize, q: u32) -> Vec<Vec<(usize, FieldElement)>> {
    fn positions(n: usize, w: usize, start: usize) -> Vec<Vec<usize>> {
        if w == 0 {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        for p in start..=n.saturating_sub(w) + 1 {
            if p > n {
                break;
            }
            for mut rest in positions(n, w - 1, p + 1) {
                rest.insert(0, p);
                out.push(rest);
            }
        }
        out
    }
    let mut out = Vec::new();
    for pos in positions(n, w, 1) {
        let mut values = vec![1u32; w];
        'odometer: loop {
            out.push(
                pos.iter()
                    .zip(values.iter())
                    .map(|(&p, &v)| (p, FieldElement::new(v as u16)))
                    .collect(),
            );
            let mut i = 0;
            loop {
                if i == w {
                    break 'odometer;
                }
                values[i] += 1;
                if values[i] < q {
                    break;
                }
                values[i] = 1;
                i += 1;
            }
        }
    }
    out
}

#[test]
fn minimum_distance_is_mds_exhaustive() {
    for (m, n, z) in [(3u32, 7usize, 1usize), (3, 7, 2), (2, 3, 1), (3, 5, 1)] {
        let code = RSCode::new(FieldSpec::new(m).unwrap(), n, z).unwrap();
        let min_weight = all_messages(&code)
            .iter()
            .filter(|msg| msg.iter().any(|e| !e.is_zero()))
            .map(|msg| {
                code.encode(msg)
                    .unwrap()
                    .iter()
                    .filter(|e| !e.is_zero())
                    .count()
            })
            .min()
            .unwrap();
        assert_eq!(min_weight, n - code.k() + 1, "[{n},{},?] over GF(2^{m})", code.k());
    }
}

#[test]
fn corrects_all_patterns_within_budget_753() {
    // q^k = 32768 > 4096, so messages are sampled; patterns are exhaustive.
    let code = RSCode::new(FieldSpec::new(3).unwrap(), 7, 1).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let pats: Vec<_> = patterns(7, 0, 8).into_iter().chain(patterns(7, 1, 8)).collect();
    for _ in 0..500 {
        let msg: Vec<FieldElement> = (0..5).map(|_| code.spec().random_element(&mut rng)).collect();
        let clean = code.encode(&msg).unwrap();
        for pat in &pats {
            let mut y = clean.clone();
            for &(pos, val) in pat {
                y[pos - 1] = code.spec().add(y[pos - 1], val);
            }
            assert_eq!(code.decode_bw(&y).unwrap(), msg);
        }
    }
}

#[test]
fn corrects_all_patterns_within_budget_735_exhaustive_messages() {
    // q^k = 512 <= 4096: exhaustive over messages and all patterns of
    // weight <= z = 2.
    let code = RSCode::new(FieldSpec::new(3).unwrap(), 7, 2).unwrap();
    let pats: Vec<_> = (0..=2).flat_map(|w| patterns(7, w, 8)).collect();
    assert_eq!(pats.len(), 1 + 49 + 21 * 49);
    for msg in all_messages(&code) {
        let clean = code.encode(&msg).unwrap();
        for pat in &pats {
            let mut y = clean.clone();
            for &(pos, val) in pat {
                y[pos - 1] = code.spec().add(y[pos - 1], val);
            }
            assert_eq!(code.decode_bw(&y).unwrap(), msg);
        }
    }
}

#[test]
fn bw_agrees_with_bruteforce_on_random_words() {
    for z in [1usize, 2] {
        let code = RSCode::new(FieldSpec::new(3).unwrap(), 7, z).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(99 + z as u64);
        for _ in 0..300 {
            let word: Vec<FieldElement> =
                (0..7).map(|_| code.spec().random_element(&mut rng)).collect();
            match (code.decode_bw(&word), code.decode_bruteforce(&word)) {
                (Ok(a), Ok(b)) => assert_eq!(a, b),
                (Err(_), Err(_)) => {}
                (bw, oracle) => panic!("decoders disagree: bw={bw:?} oracle={oracle:?}"),
            }
        }
    }
}

#[test]
fn decoded_word_is_always_within_z_of_input() {
    let code = RSCode::new(FieldSpec::new(4).unwrap(), 12, 2).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..300 {
        let word: Vec<FieldElement> =
            (0..12).map(|_| code.spec().random_element(&mut rng)).collect();
        if let Ok(msg) = code.decode_bw(&word) {
            let cw = code.encode(&msg).unwrap();
            assert!(hamming_distance(&cw, &word) <= code.z());
        }
    }
}

#[test]
fn near_codeword_words_decode_consistently() {
    // words within z of a random codeword decode back to it, for a larger
    // field and length than the small reference codes
    let code = RSCode::new(FieldSpec::new(5).unwrap(), 20, 3).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for _ in 0..100 {
        let msg: Vec<FieldElement> = (0..code.k())
            .map(|_| code.spec().random_element(&mut rng))
            .collect();
        let mut y = code.encode(&msg).unwrap();
        let weight = rng.random_range(0..=code.z());
        let mut hit = std::collections::BTreeSet::new();
        while hit.len() < weight {
            hit.insert(rng.random_range(0..code.n()));
        }
        for &pos in &hit {
            y[pos] = code.spec().add(y[pos], code.spec().random_nonzero(&mut rng));
        }
        assert_eq!(code.decode_bw(&y).unwrap(), msg);
    }
}
