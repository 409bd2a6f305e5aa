use braidvar::braid::{half_twist, transpose, w_lambda, BraidWord, Perm};
use braidvar::pbraids::{
    juggling_braid_action, juggling_braid_algorithm, juggling_braid_delta, juggling_braid_diagram, le_braid,
    matrix_braid, reverse_family, reverse_family_pair, script_j,
};
use braidvar::positroid::{affine_to_rank, all_positroid_pairs, pair_to_affine, pair_to_le, PositroidPair};
use braidvar::rewrite::{
    apply_move, artin_equal, certify_group_equal, find_equivalence, markov_reduce, Move, SearchOptions,
};

fn sizes(max_n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for n in 2..=max_n {
        for k in 1..n {
            out.push((k, n));
        }
    }
    out
}

fn positive_only() -> SearchOptions {
    SearchOptions { conjugation: false, ..SearchOptions::default() }
}

#[test]
fn markov_reduce_replays_up_to_six() {
    for (k, n) in sizes(6) {
        for p in all_positroid_pairs(k, n) {
            let r = markov_reduce(&p).unwrap_or_else(|e| panic!("{p}: {e}"));
            r.trace.replay().unwrap();
            assert_eq!(r.word.strands, k);
            let lt = transpose(&p.lambda());
            for (i, &g) in r.gamma.iter().enumerate() {
                assert!(g <= lt.get(i).copied().unwrap_or(0), "{p}: gamma too large");
            }
        }
    }
}

#[test]
fn markov_reduce_identity_u() {
    for (k, n) in sizes(6) {
        for lam in braidvar::positroid::partitions_in_box(k, n - k) {
            let p = PositroidPair::new(k, Perm::identity(n), w_lambda(&lam, k, n)).unwrap();
            let lt = transpose(&lam);
            let mut idx = Vec::new();
            for j in (1..=n - k).rev() {
                let c = lt.get(j - 1).copied().unwrap_or(0);
                if c >= 1 {
                    idx.extend((k + 1 - c..k).rev());
                }
            }
            assert_eq!(markov_reduce(&p).unwrap().word, BraidWord::positive(k, &idx), "{p}");
        }
    }
}

#[test]
fn juggling_routes_agree_up_to_riii() {
    for (k, n) in sizes(6) {
        for p in all_positroid_pairs(k, n) {
            let f = pair_to_affine(&p);
            let diag = juggling_braid_diagram(&f);
            let alg = juggling_braid_algorithm(&f);
            let act = juggling_braid_action(&p);
            assert_eq!(diag.len(), alg.len());
            assert_eq!(diag.len(), act.len());
            for other in [&alg, &act] {
                let t = find_equivalence(&diag, other, positive_only()).unwrap_or_else(|e| panic!("{p}: {e}"));
                assert!(t.moves.iter().all(|m| matches!(m, Move::RiiiPos { .. } | Move::Commute { .. })));
            }
            // the unrestricted algorithm prepends the half twist; J·Δ differs by Δ-conjugation
            let jd = juggling_braid_delta(&f);
            let h = half_twist(k.max(1));
            let mut t = find_equivalence(&jd, &h.concat(&alg), positive_only()).unwrap_or_else(|e| panic!("{p}: {e}"));
            t.moves.extend(std::iter::repeat(Move::CyclicRotate { forward: true }).take(h.len()));
            t.end = alg.concat(&h);
            t.replay().unwrap();
        }
    }
}

#[test]
fn le_braid_equals_script_j_up_to_five() {
    for (k, n) in sizes(5) {
        for p in all_positroid_pairs(k, n) {
            let d = le_braid(&pair_to_le(&p));
            let j = script_j(&p);
            assert!(artin_equal(&d, &j), "{p}");
            let t = certify_group_equal(&d, &j, 1_000_000).unwrap_or_else(|| panic!("{p}"));
            t.replay().unwrap();
        }
    }
}

#[test]
fn matrix_braid_conjugate_to_juggling_times_delta() {
    for (k, n) in [(2, 4), (2, 5), (3, 5)] {
        for p in all_positroid_pairs(k, n) {
            let f = pair_to_affine(&p);
            let m = matrix_braid(&affine_to_rank(&f)).unwrap();
            let jd = juggling_braid_diagram(&f).concat(&half_twist(k));
            let t = find_equivalence(&jd, &m, SearchOptions::default()).unwrap_or_else(|e| panic!("{p}: {e}"));
            t.replay().unwrap();
        }
    }
}

#[test]
fn reverse_family_matches_juggling() {
    for (lam, k) in [(vec![2, 1], 3), (vec![1, 1, 1], 2), (vec![2, 2], 3), (vec![3, 1, 1], 4)] {
        let gamma = reverse_family(&lam, k).unwrap();
        let p = reverse_family_pair(&lam, k);
        let j = juggling_braid_diagram(&pair_to_affine(&p));
        let gd = gamma.concat(&half_twist(k));
        find_equivalence(&gd, &j, SearchOptions::default()).unwrap();
    }
}

#[test]
fn destabilization_steps() {
    let r7 = BraidWord::signed(7, &[3, 2, 1, 4, 3, 2, 5, 4, 6, 5, -3, -2]);
    let a = apply_move(&r7, &Move::PosDestabilize { at: 8 }).unwrap();
    assert_eq!(a, BraidWord::signed(6, &[3, 2, 1, 4, 3, 2, 5, 4, 5, -3, -2]));
    let b = apply_move(&a, &Move::RiiiPos { at: 6 }).unwrap();
    let c = apply_move(&b, &Move::PosDestabilize { at: 7 }).unwrap();
    assert_eq!(c, BraidWord::signed(5, &[3, 2, 1, 4, 3, 2, 4, 4, -3, -2]));
}

#[test]
fn intro_certificates() {
    use braidvar::positroid::{affine_to_pair, AffinePerm};
    let f = AffinePerm::new(vec![3, 5, 8, 6, 7, 11, 9]);
    let p = affine_to_pair(&f).unwrap();
    let r = markov_reduce(&p).unwrap();
    assert_eq!(r.trace.start, BraidWord::signed(7, &[3, 2, 1, 4, 3, 2, 5, 4, 6, 5, -3, -2]));
    let target = BraidWord::positive(3, &[2, 2, 1, 1]);
    let tail = find_equivalence(&r.word, &target, SearchOptions::default())
        .or_else(|_| find_equivalence(&r.word, &target, SearchOptions { insertions: true, ..SearchOptions::default() }))
        .unwrap();
    let full = r.trace.clone().then(tail);
    full.replay().unwrap();
    println!("R7 chain: {} moves, markov word {}", full.moves.len(), r.word);

    let j = juggling_braid_diagram(&f);
    let m = matrix_braid(&affine_to_rank(&f)).unwrap();
    let t = find_equivalence(&j.concat(&half_twist(3)), &m, SearchOptions::default()).unwrap();
    assert!(t.moves.len() <= 20, "{} moves", t.moves.len());
}
