//! The four positroid braids: Richardson, juggling (three routes), matrix and Le.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::braid::{
    half_twist, lex_least_reduced_word, positive_lift, transpose, w_lambda, BraidError, BraidWord, Letter,
    LiftStrategy, Perm,
};
use crate::positroid::{pair_to_affine, rank_to_affine, AffinePerm, LeDiagram, PositroidPair, RankMatrix, Violation};

fn strands(k: usize) -> usize {
    k.max(1)
}

/// σ_b σ_{b-1} ⋯ σ_a, empty unless 0 < a ≤ b.
fn push_interval(out: &mut Vec<Letter>, a: i64, b: i64) {
    if 0 < a && a <= b {
        for i in (a..=b).rev() {
            out.push(Letter::pos(i as usize));
        }
    }
}

/// R_n(u,w) = β(w) β(u)^{-1}; β(w) uses `strategy`, β(u) its lex-least reduced word.
pub fn richardson_braid(p: &PositroidPair, strategy: LiftStrategy) -> Result<BraidWord, BraidError> {
    let bw = positive_lift(&p.w, strategy)?;
    let bu = BraidWord::positive(p.n.max(1), &lex_least_reduced_word(&p.u));
    Ok(bw.concat(&bu.inverse()))
}

/// R_n from explicit reduced words of w and u.
pub fn richardson_from_words(n: usize, w_word: &[usize], u_word: &[usize]) -> BraidWord {
    BraidWord::positive(n.max(1), w_word).concat(&BraidWord::positive(n.max(1), u_word).inverse())
}

#[derive(Clone, Copy, Debug)]
struct Q {
    num: i128,
    den: i128,
}

impl Q {
    fn new(num: i128, den: i128) -> Q {
        if den < 0 {
            Q { num: -num, den: -den }
        } else {
            Q { num, den }
        }
    }
}

impl PartialEq for Q {
    fn eq(&self, o: &Q) -> bool {
        self.cmp(o) == Ordering::Equal
    }
}
impl Eq for Q {}
impl PartialOrd for Q {
    fn partial_cmp(&self, o: &Q) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}
impl Ord for Q {
    fn cmp(&self, o: &Q) -> Ordering {
        (self.num * o.den).cmp(&(o.num * self.den))
    }
}

/// Squared height of the semicircle over [a, b] at abscissa x.
fn height2(a: i64, b: i64, x: Q) -> Q {
    let (a, b) = (a as i128, b as i128);
    Q::new((x.num - a * x.den) * (b * x.den - x.num), x.den * x.den)
}

/// J_k(f) read off the arc diagram of A_1, …, A_n, sweeping right to left.
///
/// Every crossing point met by m arcs becomes a half twist on m strands,
/// placed below the arcs passing above it.
pub fn juggling_braid_diagram(f: &AffinePerm) -> BraidWord {
    let n = f.n() as i64;
    let k = f.k();
    let arcs: Vec<(i64, i64)> = (1..=n).map(|i| (i, f.at(i))).filter(|&(i, fi)| fi > i).collect();
    // (x, h², arc indices)
    let mut points: Vec<(Q, Q, Vec<usize>)> = Vec::new();
    for (p, &(a, fa)) in arcs.iter().enumerate() {
        for (q, &(b, fb)) in arcs.iter().enumerate() {
            if a < b && b < fa && fa < fb {
                let x = Q::new((b * fb - a * fa) as i128, ((b + fb) - (a + fa)) as i128);
                let h = height2(a, fa, x);
                match points.iter_mut().find(|(px, ph, _)| *px == x && *ph == h) {
                    Some((_, _, v)) => {
                        for r in [p, q] {
                            if !v.contains(&r) {
                                v.push(r);
                            }
                        }
                    }
                    None => points.push((x, h, vec![p, q])),
                }
            }
        }
    }
    points.sort_by(|l, r| r.0.cmp(&l.0).then(r.1.cmp(&l.1)));
    let mut letters = Vec::new();
    for (x, h, through) in &points {
        let above = arcs
            .iter()
            .filter(|&&(a, fa)| Q::new(a as i128, 1) < *x && *x < Q::new(fa as i128, 1) && height2(a, fa, *x) > *h)
            .count();
        for l in half_twist(through.len()).letters {
            letters.push(Letter::pos(l.index() + above));
        }
    }
    BraidWord { strands: strands(k), letters }
}

fn juggling_by_algorithm(f: &AffinePerm, restrict: bool) -> BraidWord {
    let n = f.n() as i64;
    let k = f.k();
    let mut a: Vec<i64> = (1..=n).filter(|&i| f.at(i) > n).map(|i| f.at(i) - n).collect();
    a.sort_unstable();
    let mut factors: Vec<(i64, i64)> = Vec::new();
    while a.iter().any(|&x| x <= n) {
        let i0 = (0..a.len()).filter(|&i| a[i] <= n).min_by_key(|&i| f.at(a[i])).expect("some a ≤ n");
        let target = f.at(a[i0]);
        let j0 = (0..a.len())
            .filter(|&j| a[j] <= target && (!restrict || a[j] <= n))
            .max()
            .expect("i0 qualifies");
        // σ_{[j0-1, i0]} in 1-based indices is σ_{j0-1} ⋯ σ_{i0}
        factors.push((i0 as i64 + 1, j0 as i64));
        a[i0] = target;
        a.sort_unstable();
    }
    let mut letters = Vec::new();
    for &(lo, hi) in factors.iter().rev() {
        push_interval(&mut letters, lo, hi);
    }
    BraidWord { strands: strands(k), letters }
}

/// J_k(f) by the interval-prepending algorithm.
pub fn juggling_braid_algorithm(f: &AffinePerm) -> BraidWord {
    juggling_by_algorithm(f, true)
}

/// The unrestricted variant of the algorithm, a word for J_k(f)Δ_k.
pub fn juggling_braid_delta(f: &AffinePerm) -> BraidWord {
    juggling_by_algorithm(f, false)
}

/// A point of (ℤ²)^n × ^{n-k}S_n: interval pairs (a_i, b_i) labelled by 𝚠(i).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActionState {
    pub n: usize,
    pub k: usize,
    pub pairs: Vec<(i64, i64)>,
    pub labels: Vec<usize>,
}

impl ActionState {
    /// The starting vector 𝐱_λ.
    pub fn x_lambda(lam: &[usize], k: usize, n: usize) -> ActionState {
        let lt = transpose(lam);
        let col = |j: usize| lt.get(j).copied().unwrap_or(0) as i64;
        let mut pairs = Vec::with_capacity(n);
        let mut labels = Vec::with_capacity(n);
        for j in 0..n - k {
            pairs.push((k as i64 - col(j) + 1, k as i64 - 1));
            labels.push(k + 1 + j);
        }
        for t in 0..k {
            pairs.push((1, k as i64 - 1 - t as i64));
            labels.push(1 + t);
        }
        ActionState { n, k, pairs, labels }
    }

    fn position(&self, label: usize) -> usize {
        self.labels.iter().position(|&l| l == label).expect("labels form a permutation")
    }

    /// Applies σ_i.
    pub fn apply(&mut self, i: usize) {
        assert!(i >= 1 && i < self.n, "σ_{i} out of range");
        let left = self.n - self.k;
        let (j, j2) = (self.position(i), self.position(i + 1));
        if (j < left) == (j2 < left) {
            assert_eq!(j2, j + 1, "unbroken pair must be adjacent");
            let (a1, b1) = self.pairs[j];
            let (a2, b2) = self.pairs[j + 1];
            if j < left {
                self.pairs[j] = (a2 + 1, b2);
                self.pairs[j + 1] = (a1, b1);
            } else {
                self.pairs[j] = (a2 + 1, b1);
                self.pairs[j + 1] = (a1, b2);
            }
        } else {
            self.labels[j] = i + 1;
            self.labels[j2] = i;
            if j2 < j {
                self.pairs[j2].1 -= 1;
            }
        }
    }

    /// σ_{[a_n,b_n]} ⋯ σ_{[a_1,b_1]} restricted to the given positions.
    fn word_of(&self, range: core::ops::Range<usize>) -> BraidWord {
        let mut letters = Vec::new();
        for idx in range.rev() {
            let (a, b) = self.pairs[idx];
            push_interval(&mut letters, a, b);
        }
        BraidWord { strands: strands(self.k), letters }
    }

    pub fn word(&self) -> BraidWord {
        self.word_of(0..self.n)
    }
}

/// β(u^{-1}) · 𝐱_λ.
pub fn juggling_action_state(p: &PositroidPair) -> ActionState {
    let mut st = ActionState::x_lambda(&p.lambda(), p.k, p.n);
    // β(u^{-1}) = σ_{i_r}⋯σ_{i_1} for u = s_{i_1}⋯s_{i_r}; σ_{i_1} acts first
    for i in lex_least_reduced_word(&p.u) {
        st.apply(i);
    }
    st
}

pub fn juggling_braid_action(p: &PositroidPair) -> BraidWord {
    juggling_action_state(p).word()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JugglingDecomposition {
    pub word: BraidWord,
    /// Number of interval factors in J1.
    pub split: usize,
    pub j1: BraidWord,
    pub j2: BraidWord,
}

/// J = J2·J1 with J1 the first n-k interval factors.
pub fn juggling_split(p: &PositroidPair) -> JugglingDecomposition {
    let st = juggling_action_state(p);
    let split = p.n - p.k;
    JugglingDecomposition { word: st.word(), split, j1: st.word_of(0..split), j2: st.word_of(split..p.n) }
}

/// 𝒥_k = J1 Δ^{-1} J2.
pub fn script_j(p: &PositroidPair) -> BraidWord {
    let d = juggling_split(p);
    d.j1.concat(&half_twist(strands(p.k)).inverse()).concat(&d.j2)
}

/// ℓ(w) + C(k,2) − ℓ(u) − (n−k) + #fixed points.
pub fn juggling_length(p: &PositroidPair) -> i64 {
    let s = pair_to_affine(p).fixed_points() as i64;
    let k = p.k as i64;
    p.w.length() as i64 + k * (k - 1) / 2 - p.u.length() as i64 - (p.n as i64 - k) + s
}

/// M_k(r), tracing the level curves of r through the rows 1..n.
///
/// The strand leaving the diagonal in row i runs right to column f(i)
/// and turns down; the crossings of one row are read right to left and
/// the rows bottom to top.
pub fn matrix_braid(r: &RankMatrix) -> Result<BraidWord, Violation> {
    let f = rank_to_affine(r)?;
    let n = f.n() as i64;
    let mut verticals: Vec<i64> = (1 - n..=0).map(|i| f.at(i)).filter(|&c| c >= 1).collect();
    let mut rows: Vec<Vec<Letter>> = Vec::new();
    for i in 1..=n {
        let fi = f.at(i);
        if fi == i {
            continue;
        }
        let p = 1 + verticals.iter().filter(|&&c| c < i).count();
        let m = verticals.iter().filter(|&&c| i < c && c < fi).count();
        rows.push((p..p + m).map(Letter::pos).collect());
        verticals.retain(|&c| c != i);
        verticals.push(fi);
    }
    let letters = rows.into_iter().rev().flat_map(|r| r.into_iter().rev()).collect();
    Ok(BraidWord { strands: strands(r.k), letters })
}

/// τ(c) for the dotted rows δ (row 1 at the bottom); strand positions
/// are counted from the top, so heights h, h+1 meet at σ_{k-h}.
pub fn column_tangle(k: usize, delta: &[usize]) -> BraidWord {
    let mut d: Vec<usize> = delta.to_vec();
    d.sort_unstable();
    d.dedup();
    let mut letters = Vec::new();
    if let (Some(&lo), Some(&hi)) = (d.first(), d.last()) {
        // each S_j slides under nothing and over the horizontals down to m(j)+1
        for t in (1..d.len()).rev() {
            let (mj, j) = (d[t - 1], d[t]);
            for h in (mj + 1..j).rev() {
                letters.push(Letter::neg(k - h));
            }
        }
        // S_0 climbs over everything
        for h in lo..hi {
            letters.push(Letter::pos(k - h));
        }
    }
    BraidWord { strands: strands(k), letters }
}

/// D_k: column tangles concatenated with the rightmost column first.
pub fn le_braid(d: &LeDiagram) -> BraidWord {
    let mut out = BraidWord::identity(strands(d.k));
    for c in (1..=d.n - d.k).rev() {
        out = out.concat(&column_tangle(d.k, &d.column_dots(c)));
    }
    out
}

/// γ = (σ_{k-1}⋯σ_{k-λ_d}) ⋯ (σ_{k-1}⋯σ_{k-λ_1}).
pub fn reverse_family(lam: &[usize], k: usize) -> Result<BraidWord, BraidError> {
    if lam.windows(2).any(|p| p[0] < p[1]) || lam.first().is_some_and(|&l| l >= k) {
        return Err(BraidError::Parse("need k-1 ≥ λ_1 ≥ λ_2 ≥ …".into()));
    }
    let mut letters = Vec::new();
    for &l in lam.iter().rev() {
        push_interval(&mut letters, (k - l) as i64, k as i64 - 1);
    }
    Ok(BraidWord { strands: strands(k), letters })
}

/// The positroid pair (1, w) in S_{k+d} whose juggling braid is Δ_k·γ.
pub fn reverse_family_pair(lam: &[usize], k: usize) -> PositroidPair {
    let d = lam.len();
    let cols: Vec<usize> = lam.iter().map(|&l| l + 1).collect();
    let mu = transpose(&cols);
    let w = w_lambda(&mu, k, k + d);
    PositroidPair { n: k + d, k, u: Perm::identity(k + d), w }
}

/// FT_2^{a_2} ⋯ FT_k^{a_k} (σ_{k-1}⋯σ_1)^s, where `a[0]` is a_2.
pub fn twist_family(a: &[usize], s: usize, k: usize) -> BraidWord {
    let mut letters = Vec::new();
    for (idx, &ai) in a.iter().enumerate() {
        let i = idx + 2;
        for _ in 0..ai * i {
            push_interval(&mut letters, (k + 1 - i) as i64, k as i64 - 1);
        }
    }
    for _ in 0..s {
        push_interval(&mut letters, 1, k as i64 - 1);
    }
    BraidWord { strands: strands(k), letters }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::coxeter_projection;
    use crate::positroid::{affine_to_pair, affine_to_rank, all_positroid_pairs, pair_to_le};

    fn w(k: usize, idx: &[usize]) -> BraidWord {
        BraidWord::positive(k, idx)
    }

    fn intro() -> PositroidPair {
        affine_to_pair(&AffinePerm::new(vec![3, 5, 8, 6, 7, 11, 9])).unwrap()
    }

    fn square_box(u: &[usize]) -> PositroidPair {
        let uu = coxeter_projection(&BraidWord::positive(6, u));
        PositroidPair::new(4, uu, w_lambda(&[2, 2, 2, 2], 4, 6)).unwrap()
    }

    #[test]
    fn richardson_examples() {
        let r = richardson_braid(&intro(), LiftStrategy::ColumnReading { k: 3 }).unwrap();
        assert_eq!(r, BraidWord::signed(7, &[3, 2, 1, 4, 3, 2, 5, 4, 6, 5, -3, -2]));
        let r = richardson_from_words(6, &[4, 3, 2, 1, 5, 4, 3, 2], &[3, 4, 2]);
        assert_eq!(r, BraidWord::signed(6, &[4, 3, 2, 1, 5, 4, 3, 2, -2, -4, -3]));
        let p = square_box(&[3, 4, 2]);
        let r = richardson_braid(&p, LiftStrategy::ColumnReading { k: 4 }).unwrap();
        assert_eq!(r.letters[..8], BraidWord::positive(6, &[4, 3, 2, 1, 5, 4, 3, 2]).letters[..]);
        let id = PositroidPair::new(3, Perm::identity(7), intro().w).unwrap();
        assert!(richardson_braid(&id, LiftStrategy::LexLeast).unwrap().is_positive());
    }

    #[test]
    fn juggling_known_words() {
        let cases: [(&[i64], &[usize]); 3] = [
            (&[3, 5, 8, 6, 7, 11, 9], &[2, 1, 2, 2, 2, 1, 1]),
            (&[3, 4, 9, 6, 7, 12, 8], &[1, 2, 2, 1, 1]),
            (&[8, 9, 10, 4, 5, 6, 7], &[1, 2, 1]),
        ];
        for (f, want) in cases {
            let f = AffinePerm::new(f.to_vec());
            assert_eq!(juggling_braid_diagram(&f), w(3, want));
            assert_eq!(juggling_braid_algorithm(&f), w(3, want));
        }
        let t3 = AffinePerm::translation(3, 7);
        assert_eq!(juggling_braid_delta(&t3).len(), 6);
        // shift by k: the (3,7) torus pattern
        let sh = AffinePerm::new((4..=10).collect());
        assert_eq!(juggling_braid_diagram(&sh).len(), 11);
    }

    #[test]
    fn action_examples() {
        let p = square_box(&[2, 4, 3]);
        let st = juggling_action_state(&p);
        assert_eq!(st.pairs, vec![(1, 1), (1, 3), (1, 3), (2, 2), (1, 1), (1, 0)]);
        assert_eq!(st.labels, vec![3, 6, 1, 2, 4, 5]);
        assert_eq!(st.word(), w(4, &[1, 2, 3, 2, 1, 3, 2, 1, 1]));
        let p = square_box(&[3, 4, 2]);
        let st = juggling_action_state(&p);
        assert_eq!(st.pairs, vec![(1, 2), (1, 3), (1, 3), (3, 2), (1, 1), (1, 0)]);
        assert_eq!(st.word(), w(4, &[1, 3, 2, 1, 3, 2, 1, 2, 1]));
        let p = square_box(&[4, 3, 2]);
        let st = juggling_action_state(&p);
        assert_eq!(st.pairs, vec![(1, 0), (1, 3), (1, 3), (1, 2), (1, 1), (1, 0)]);
        assert_eq!(st.labels, vec![2, 6, 1, 3, 4, 5]);
        assert_eq!(st.word(), w(4, &[1, 2, 1, 3, 2, 1, 3, 2, 1]));
        let x = ActionState::x_lambda(&[2, 2, 2, 2], 4, 6);
        assert_eq!(x.pairs, vec![(1, 3), (1, 3), (1, 3), (1, 2), (1, 1), (1, 0)]);
        assert_eq!(x.labels, vec![5, 6, 1, 2, 3, 4]);
    }

    #[test]
    fn identity_u_formula() {
        for (k, n) in [(2, 4), (3, 6), (2, 5), (4, 6)] {
            for p in all_positroid_pairs(k, n).into_iter().filter(|p| p.u.is_identity()) {
                let lt = transpose(&p.lambda());
                let mut want = half_twist(k).letters;
                for j in (0..n - k).rev() {
                    push_interval(&mut want, (k + 1 - lt.get(j).copied().unwrap_or(0)) as i64, k as i64 - 1);
                }
                assert_eq!(juggling_braid_action(&p).letters, want);
                assert_eq!(juggling_braid_algorithm(&pair_to_affine(&p)).letters, want);
            }
        }
    }

    #[test]
    fn matrix_braid_intro() {
        let r = affine_to_rank(&AffinePerm::new(vec![3, 5, 8, 6, 7, 11, 9]));
        assert_eq!(matrix_braid(&r).unwrap(), w(3, &[1, 2, 1, 1, 1, 2, 1, 2, 1, 1]));
    }

    #[test]
    fn column_tangles() {
        assert_eq!(column_tangle(6, &[1, 3, 5]), BraidWord::signed(6, &[-2, -4, 5, 4, 3, 2]));
        assert!(column_tangle(4, &[]).is_empty());
        assert_eq!(column_tangle(4, &[1, 2, 3, 4]), w(4, &[3, 2, 1]));
        assert_eq!(column_tangle(4, &[2]), BraidWord::identity(4));
    }

    #[test]
    fn le_braid_square_box() {
        let d = pair_to_le(&square_box(&[3, 4, 2]));
        // column 2 has dots {1,3,4}, column 1 has {1,4}
        assert_eq!(le_braid(&d), BraidWord::signed(4, &[-2, 3, 2, 1, -1, -2, 3, 2, 1]));
    }

    #[test]
    fn lengths() {
        assert_eq!(juggling_length(&intro()), 7);
        for (k, n) in [(2, 4), (2, 5), (3, 5), (3, 6)] {
            for p in all_positroid_pairs(k, n) {
                let f = pair_to_affine(&p);
                let l = juggling_length(&p);
                assert_eq!(juggling_braid_diagram(&f).len() as i64, l, "{p}");
                assert_eq!(juggling_braid_algorithm(&f).len() as i64, l);
                assert_eq!(juggling_braid_action(&p).len() as i64, l);
                let m = matrix_braid(&affine_to_rank(&f)).unwrap();
                assert_eq!(m.len() as i64, l + (k * (k - 1) / 2) as i64);
            }
        }
    }

    #[test]
    fn split_factors() {
        let p = affine_to_pair(&AffinePerm::new(vec![3, 4, 9, 6, 7, 12, 8])).unwrap();
        let d = juggling_split(&p);
        assert_eq!(d.j2, w(3, &[1]));
        assert_eq!(d.j2.concat(&d.j1), d.word);
        let p = affine_to_pair(&AffinePerm::new((4..=10).collect())).unwrap();
        assert_eq!(juggling_split(&p).j2, half_twist(3));
        assert_eq!(script_j(&p).len(), juggling_length(&p) as usize + 3);
    }

    #[test]
    fn reverse_and_twist() {
        assert_eq!(reverse_family(&[1, 1, 1], 2).unwrap(), w(2, &[1, 1, 1]));
        assert_eq!(reverse_family(&[2, 1], 3).unwrap(), w(3, &[2, 2, 1]));
        assert!(reverse_family(&[3], 3).is_err());
        assert_eq!(twist_family(&[0, 0], 1, 3), w(3, &[2, 1]));
        assert_eq!(twist_family(&[1], 0, 3), w(3, &[2, 2]));
        for (lam, k) in [(vec![2, 1], 3), (vec![1, 1, 1], 2), (vec![2, 2], 3)] {
            let p = reverse_family_pair(&lam, k);
            let want = half_twist(k).concat(&reverse_family(&lam, k).unwrap());
            assert_eq!(juggling_braid_action(&p), want);
        }
    }
}
