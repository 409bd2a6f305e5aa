#![allow(dead_code)]

use braidvar::braid::{BraidWord, Letter};
use braidvar::rewrite::{apply_move, Move};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_positive<R: Rng>(r: &mut R, n: usize, max_len: usize) -> BraidWord {
    let len = r.gen_range(0..=max_len);
    let idx: Vec<usize> = (0..len).map(|_| r.gen_range(1..n)).collect();
    BraidWord::positive(n, &idx)
}

/// Inserts `pairs` cancelling pairs σ_iσ_i^{-1} / σ_i^{-1}σ_i through RII moves.
pub fn rii_perturb<R: Rng>(r: &mut R, word: &BraidWord, pairs: usize) -> BraidWord {
    let mut w = word.clone();
    for _ in 0..pairs {
        let m = Move::RiiInsert {
            at: r.gen_range(0..=w.len()),
            index: r.gen_range(1..w.strands),
            positive_first: r.gen_bool(0.5),
        };
        w = apply_move(&w, &m).expect("RII insertion is always legal");
    }
    w
}

pub fn negatives(w: &BraidWord) -> usize {
    w.letters.iter().filter(|l| !l.is_positive()).count()
}

/// Some σ_i^{-1}σ_i^{-1} occurs, reading cyclically.
pub fn has_adjacent_negative_pair(w: &BraidWord) -> bool {
    let l: &[Letter] = &w.letters;
    (0..l.len()).any(|p| {
        let q = (p + 1) % l.len();
        p != q && !l[p].is_positive() && l[p] == l[q]
    })
}
