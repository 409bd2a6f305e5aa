//! Braid words, permutations and type-A Coxeter combinatorics.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

/// A signed Artin generator: `+i` is σ_i, `-i` is σ_i^{-1}.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter(pub i16);

impl Letter {
    pub fn pos(i: usize) -> Letter {
        Letter(i as i16)
    }
    pub fn neg(i: usize) -> Letter {
        Letter(-(i as i16))
    }
    pub fn new(i: usize, positive: bool) -> Letter {
        if positive {
            Letter::pos(i)
        } else {
            Letter::neg(i)
        }
    }
    pub fn index(self) -> usize {
        self.0.unsigned_abs() as usize
    }
    pub fn is_positive(self) -> bool {
        self.0 > 0
    }
    pub fn inverse(self) -> Letter {
        Letter(-self.0)
    }
    pub fn with_index(self, i: usize) -> Letter {
        Letter::new(i, self.is_positive())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BraidError {
    Parse(String),
    IndexOutOfRange { index: usize, strands: usize },
    NegativeLetter(usize),
    NotPermutation(String),
    NotGrassmannian,
    DemazureNotLongest,
    BadInterval,
}

impl fmt::Display for BraidError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BraidError::Parse(s) => write!(f, "parse error: {s}"),
            BraidError::IndexOutOfRange { index, strands } => {
                write!(f, "generator s{index} out of range for {strands} strands")
            }
            BraidError::NegativeLetter(p) => write!(f, "negative letter at position {p}"),
            BraidError::NotPermutation(s) => write!(f, "not a permutation: {s}"),
            BraidError::NotGrassmannian => f.write_str("permutation is not k-Grassmannian"),
            BraidError::DemazureNotLongest => f.write_str("Demazure product is not w0"),
            BraidError::BadInterval => f.write_str("interval must satisfy 1 <= a <= b < n"),
        }
    }
}

impl core::error::Error for BraidError {}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BraidWord {
    pub strands: usize,
    pub letters: Vec<Letter>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<Letter>) -> Result<BraidWord, BraidError> {
        for l in &letters {
            if l.index() == 0 || l.index() >= strands {
                return Err(BraidError::IndexOutOfRange { index: l.index(), strands });
            }
        }
        Ok(BraidWord { strands, letters })
    }

    pub fn identity(strands: usize) -> BraidWord {
        BraidWord { strands, letters: Vec::new() }
    }

    /// Positive word from generator indices.
    pub fn positive(strands: usize, idx: &[usize]) -> BraidWord {
        BraidWord::new(strands, idx.iter().map(|&i| Letter::pos(i)).collect()).expect("index in range")
    }

    /// Word from signed indices (`-2` is σ_2^{-1}).
    pub fn signed(strands: usize, idx: &[i32]) -> BraidWord {
        BraidWord::new(strands, idx.iter().map(|&i| Letter(i as i16)).collect()).expect("index in range")
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_positive(&self) -> bool {
        self.letters.iter().all(|l| l.is_positive())
    }

    pub fn writhe(&self) -> i64 {
        self.letters.iter().map(|l| if l.is_positive() { 1 } else { -1 }).sum()
    }

    pub fn num_positive(&self) -> usize {
        self.letters.iter().filter(|l| l.is_positive()).count()
    }

    pub fn concat(&self, other: &BraidWord) -> BraidWord {
        assert_eq!(self.strands, other.strands, "strand counts differ");
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        BraidWord { strands: self.strands, letters }
    }

    /// Group inverse: reversed with flipped signs.
    pub fn inverse(&self) -> BraidWord {
        BraidWord {
            strands: self.strands,
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    /// The word read backwards, signs kept.
    pub fn opposite(&self) -> BraidWord {
        BraidWord {
            strands: self.strands,
            letters: self.letters.iter().rev().copied().collect(),
        }
    }

    /// σ_i ↦ σ_{n-i}, signs kept.
    pub fn flip(&self) -> BraidWord {
        let n = self.strands;
        BraidWord {
            strands: n,
            letters: self.letters.iter().map(|l| l.with_index(n - l.index())).collect(),
        }
    }

    /// Same letters regarded on more strands.
    pub fn widen(&self, strands: usize) -> BraidWord {
        assert!(strands >= self.strands);
        BraidWord { strands, letters: self.letters.clone() }
    }

    /// Indices shifted by `s` on `strands` strands.
    pub fn shift(&self, s: usize, strands: usize) -> BraidWord {
        BraidWord::new(strands, self.letters.iter().map(|l| l.with_index(l.index() + s)).collect())
            .expect("shift stays in range")
    }

    pub fn parse(text: &str) -> Result<BraidWord, BraidError> {
        parse_braid(text)
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={}:", self.strands)?;
        for l in &self.letters {
            if l.is_positive() {
                write!(f, " s{}", l.index())?;
            } else {
                write!(f, " s{}^-1", l.index())?;
            }
        }
        Ok(())
    }
}

impl core::str::FromStr for BraidWord {
    type Err = BraidError;
    fn from_str(s: &str) -> Result<BraidWord, BraidError> {
        parse_braid(s)
    }
}

fn parse_braid(text: &str) -> Result<BraidWord, BraidError> {
    let text = text.trim();
    let rest = text
        .strip_prefix("n=")
        .ok_or_else(|| BraidError::Parse("expected header \"n=<int>:\"".into()))?;
    let (num, body) = rest
        .split_once(':')
        .ok_or_else(|| BraidError::Parse("missing ':' after strand count".into()))?;
    let strands: usize = num
        .trim()
        .parse()
        .map_err(|_| BraidError::Parse(format!("bad strand count {num:?}")))?;
    if strands == 0 {
        return Err(BraidError::Parse("strand count must be positive".into()));
    }
    let mut letters = Vec::new();
    for tok in body.split_whitespace() {
        let bad = || BraidError::Parse(format!("bad token {tok:?}"));
        let t = tok.strip_prefix('s').ok_or_else(bad)?;
        let (idx, positive) = match t.strip_suffix("^-1") {
            Some(i) => (i, false),
            None => (t, true),
        };
        if idx.is_empty() || !idx.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let i: usize = idx.parse().map_err(|_| bad())?;
        letters.push(Letter::new(i, positive));
    }
    BraidWord::new(strands, letters)
}

/// Δ_n = (σ1)(σ2σ1)⋯(σ_{n-1}⋯σ1).
pub fn half_twist(n: usize) -> BraidWord {
    let mut idx = Vec::new();
    for top in 1..n {
        idx.extend((1..=top).rev());
    }
    BraidWord::positive(n, &idx)
}

/// σ_{[a,b]} = σ_b σ_{b-1} ⋯ σ_a, empty unless 0 < a ≤ b.
pub fn interval_word(a: usize, b: usize, n: usize) -> BraidWord {
    if a == 0 || a > b {
        return BraidWord::identity(n);
    }
    BraidWord::positive(n, &(a..=b).rev().collect::<Vec<_>>())
}

/// Checked variant of [`interval_word`] requiring 1 ≤ a ≤ b < n.
pub fn interval_word_checked(a: usize, b: usize, n: usize) -> Result<BraidWord, BraidError> {
    if a == 0 || a > b || b >= n {
        return Err(BraidError::BadInterval);
    }
    Ok(interval_word(a, b, n))
}

/// Permutation of [1,n] in one-line notation.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Perm(Vec<usize>);

impl Perm {
    pub fn identity(n: usize) -> Perm {
        Perm((1..=n).collect())
    }

    pub fn from_images(images: Vec<usize>) -> Result<Perm, BraidError> {
        let n = images.len();
        let mut seen = alloc::vec![false; n + 1];
        for &x in &images {
            if x == 0 || x > n || seen[x] {
                return Err(BraidError::NotPermutation(format!("{images:?}")));
            }
            seen[x] = true;
        }
        Ok(Perm(images))
    }

    /// Longest element w0.
    pub fn longest(n: usize) -> Perm {
        Perm((1..=n).rev().collect())
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    /// w(i), 1-based.
    pub fn at(&self, i: usize) -> usize {
        self.0[i - 1]
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = alloc::vec![0; self.n()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x - 1] = i + 1;
        }
        Perm(inv)
    }

    /// (self ∘ other)(i) = self(other(i)).
    pub fn compose(&self, other: &Perm) -> Perm {
        Perm(other.0.iter().map(|&i| self.0[i - 1]).collect())
    }

    /// w·s_i: swap positions i, i+1.
    pub fn mul_s_right(&self, i: usize) -> Perm {
        let mut v = self.0.clone();
        v.swap(i - 1, i);
        Perm(v)
    }

    /// s_i·w: swap values i, i+1.
    pub fn mul_s_left(&self, i: usize) -> Perm {
        Perm(self
            .0
            .iter()
            .map(|&x| if x == i { i + 1 } else if x == i + 1 { i } else { x })
            .collect())
    }

    /// ℓ(w·s_i) < ℓ(w).
    pub fn has_right_descent(&self, i: usize) -> bool {
        self.0[i - 1] > self.0[i]
    }

    /// ℓ(s_i·w) < ℓ(w).
    pub fn has_left_descent(&self, i: usize) -> bool {
        self.inverse().has_right_descent(i)
    }

    /// Number of inversions.
    pub fn length(&self) -> usize {
        let v = &self.0;
        let mut c = 0;
        for i in 0..v.len() {
            for j in i + 1..v.len() {
                if v[i] > v[j] {
                    c += 1;
                }
            }
        }
        c
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| x == i + 1)
    }

    /// Cycle type, sorted decreasingly; conjugacy class invariant.
    pub fn cycle_type(&self) -> Vec<usize> {
        let n = self.n();
        let mut seen = alloc::vec![false; n + 1];
        let mut out = Vec::new();
        for s in 1..=n {
            if seen[s] {
                continue;
            }
            let mut len = 0;
            let mut x = s;
            while !seen[x] {
                seen[x] = true;
                x = self.0[x - 1];
                len += 1;
            }
            out.push(len);
        }
        out.sort_unstable_by(|a, b| b.cmp(a));
        out
    }

    pub fn parse(text: &str) -> Result<Perm, BraidError> {
        let v = parse_list(text)?;
        let mut out = Vec::with_capacity(v.len());
        for x in v {
            if x <= 0 {
                return Err(BraidError::NotPermutation(text.into()));
            }
            out.push(x as usize);
        }
        Perm::from_images(out)
    }
}

/// Parses "[a,b,…]" (commas or whitespace separate entries).
pub fn parse_list(text: &str) -> Result<Vec<i64>, BraidError> {
    let t = text.trim();
    let inner = t
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(|| BraidError::Parse(format!("expected [..], got {t:?}")))?;
    inner
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<i64>().map_err(|_| BraidError::Parse(format!("bad entry {s:?}"))))
        .collect()
}

pub(crate) fn render_list<T: fmt::Display>(v: &[T]) -> String {
    let mut s = String::from("[");
    for (i, x) in v.iter().enumerate() {
        if i > 0 {
            s.push(',');
        }
        s.push_str(&format!("{x}"));
    }
    s.push(']');
    s
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_list(&self.0))
    }
}

/// s_{i1}⋯s_{iℓ}, ignoring signs.
pub fn coxeter_projection(b: &BraidWord) -> Perm {
    let mut w = Perm::identity(b.strands);
    for l in &b.letters {
        w = w.mul_s_right(l.index());
    }
    w
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LiftStrategy {
    /// Read the k-Grassmannian Young diagram row by row (bottom row first, each row left to right).
    RowReading { k: usize },
    /// Read the diagram column by column (leftmost first, each column bottom to top).
    ColumnReading { k: usize },
    /// Lexicographically least reduced word.
    LexLeast,
}

pub fn positive_lift(w: &Perm, strategy: LiftStrategy) -> Result<BraidWord, BraidError> {
    let n = w.n();
    let idx = match strategy {
        LiftStrategy::LexLeast => lex_least_reduced_word(w),
        LiftStrategy::RowReading { k } => {
            let lam = grassmannian_partition(w, k).ok_or(BraidError::NotGrassmannian)?;
            row_reading(&lam, k)
        }
        LiftStrategy::ColumnReading { k } => {
            let lam = grassmannian_partition(w, k).ok_or(BraidError::NotGrassmannian)?;
            column_reading(&lam, k)
        }
    };
    Ok(BraidWord::positive(n.max(1), &idx))
}

pub fn lex_least_reduced_word(w: &Perm) -> Vec<usize> {
    let mut cur = w.clone();
    let mut out = Vec::new();
    while !cur.is_identity() {
        let i = (1..cur.n()).find(|&i| cur.has_left_descent(i)).expect("non-identity has a descent");
        out.push(i);
        cur = cur.mul_s_left(i);
    }
    out
}

/// Filling k + j - i of the box in row i (bottom = 1), column j; row by row.
pub fn row_reading(lam: &[usize], k: usize) -> Vec<usize> {
    let mut out = Vec::new();
    for (r, &len) in lam.iter().enumerate() {
        let i = r + 1;
        for j in 1..=len {
            out.push(k + j - i);
        }
    }
    out
}

/// Same filling read column by column, each column bottom to top.
pub fn column_reading(lam: &[usize], k: usize) -> Vec<usize> {
    let lt = transpose(lam);
    let mut out = Vec::new();
    for (c, &h) in lt.iter().enumerate() {
        let j = c + 1;
        for i in 1..=h {
            out.push(k + j - i);
        }
    }
    out
}

/// Conjugate partition (trailing zeros dropped).
pub fn transpose(lam: &[usize]) -> Vec<usize> {
    let m = lam.iter().copied().max().unwrap_or(0);
    (1..=m).map(|j| lam.iter().filter(|&&l| l >= j).count()).collect()
}

pub fn is_k_grassmannian(w: &Perm, k: usize) -> bool {
    let inv = w.inverse();
    let v = inv.images();
    k <= v.len() && v[..k].windows(2).all(|p| p[0] < p[1]) && v[k..].windows(2).all(|p| p[0] < p[1])
}

/// λ with w^{-1} = [1+λ_k, 2+λ_{k-1}, …, k+λ_1, …]; `None` unless k-Grassmannian.
pub fn grassmannian_partition(w: &Perm, k: usize) -> Option<Vec<usize>> {
    if !is_k_grassmannian(w, k) {
        return None;
    }
    let inv = w.inverse();
    Some((1..=k).map(|r| inv.at(k + 1 - r) - (k + 1 - r)).collect())
}

/// w_λ for λ ⊆ (n-k)^k given by rows λ_1 ≥ … ≥ λ_k (missing rows are 0).
pub fn w_lambda(lam: &[usize], k: usize, n: usize) -> Perm {
    let l = |i: usize| lam.get(i - 1).copied().unwrap_or(0);
    let lt = transpose(lam);
    let lt_at = |j: usize| lt.get(j - 1).copied().unwrap_or(0);
    let mut inv = Vec::with_capacity(n);
    for i in 1..=k {
        inv.push(i + l(k + 1 - i));
    }
    for j in 1..=n - k {
        inv.push(k + j - lt_at(j));
    }
    Perm(inv).inverse()
}

/// Tableau criterion: u ≤ w iff sorted prefixes are dominated.
pub fn bruhat_leq(u: &Perm, w: &Perm) -> bool {
    assert_eq!(u.n(), w.n());
    let n = u.n();
    for i in 1..n {
        let mut a: Vec<usize> = u.0[..i].to_vec();
        let mut b: Vec<usize> = w.0[..i].to_vec();
        a.sort_unstable();
        b.sort_unstable();
        if a.iter().zip(&b).any(|(x, y)| x > y) {
            return false;
        }
    }
    true
}

/// Subword criterion on the lex-least reduced word of w (slow; for cross-checks).
pub fn bruhat_leq_subword(u: &Perm, w: &Perm) -> bool {
    let word = lex_least_reduced_word(w);
    let target = u.length();
    fn go(word: &[usize], pos: usize, cur: &Perm, target: &Perm, len: usize, need: usize) -> bool {
        if len == need {
            return cur == target;
        }
        if word.len() - pos < need - len {
            return false;
        }
        let i = word[pos];
        if !cur.has_right_descent(i) && go(word, pos + 1, &cur.mul_s_right(i), target, len + 1, need) {
            return true;
        }
        go(word, pos + 1, cur, target, len, need)
    }
    go(&word, 0, &Perm::identity(u.n()), u, 0, target)
}

/// Demazure (0-Hecke) product of a positive word.
pub fn demazure_product(b: &BraidWord) -> Result<Perm, BraidError> {
    demazure_of_indices(b.strands, b.letters.iter().enumerate().map(|(p, l)| {
        if l.is_positive() {
            Ok(l.index())
        } else {
            Err(BraidError::NegativeLetter(p))
        }
    }))
}

pub(crate) fn demazure_of_indices(
    n: usize,
    idx: impl Iterator<Item = Result<usize, BraidError>>,
) -> Result<Perm, BraidError> {
    let mut w = Perm::identity(n);
    for i in idx {
        let i = i?;
        if !w.has_right_descent(i) {
            w = w.mul_s_right(i);
        }
    }
    Ok(w)
}

/// Positions (0-based) of β outside its rightmost reduced subword for w0.
pub fn jump_set(b: &BraidWord) -> Result<BTreeSet<usize>, BraidError> {
    let w0 = Perm::longest(b.strands);
    if demazure_product(b)? != w0 {
        return Err(BraidError::DemazureNotLongest);
    }
    let mut rest = w0;
    let mut jumps = BTreeSet::new();
    for (p, l) in b.letters.iter().enumerate().rev() {
        if rest.has_right_descent(l.index()) {
            rest = rest.mul_s_right(l.index());
        } else {
            jumps.insert(p);
        }
    }
    debug_assert!(rest.is_identity());
    Ok(jumps)
}

/// All permutations of [1,n] in lexicographic order.
pub fn all_perms(n: usize) -> Vec<Perm> {
    let mut out = Vec::new();
    let mut v: Vec<usize> = (1..=n).collect();
    loop {
        out.push(Perm(v.clone()));
        // next permutation
        let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
            break;
        };
        let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).unwrap();
        v.swap(i - 1, j);
        v[i..].reverse();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn b(s: &str) -> BraidWord {
        BraidWord::parse(s).unwrap()
    }

    #[test]
    fn parse_render_examples() {
        let w = b("n=7: s3 s2 s1 s4 s3 s2 s5 s4 s6 s5 s3^-1 s2^-1");
        assert_eq!(w.len(), 12);
        assert_eq!(w.writhe(), 8);
        assert_eq!(w.to_string(), "n=7: s3 s2 s1 s4 s3 s2 s5 s4 s6 s5 s3^-1 s2^-1");
        let e = b("n=2:");
        assert!(e.is_empty());
        assert_eq!(e.to_string(), "n=2:");
        assert_eq!(b("n=3: s1 s2 s1"), half_twist(3));
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(BraidWord::parse("n=3: s3"), Err(BraidError::IndexOutOfRange { .. })));
        assert!(matches!(BraidWord::parse("n=3: x1"), Err(BraidError::Parse(_))));
        assert!(matches!(BraidWord::parse("s1 s2"), Err(BraidError::Parse(_))));
        assert!(matches!(BraidWord::parse("n=3: s1^2"), Err(BraidError::Parse(_))));
    }

    #[test]
    fn half_twist_examples() {
        assert_eq!(half_twist(2), BraidWord::positive(2, &[1]));
        assert_eq!(half_twist(3), BraidWord::positive(3, &[1, 2, 1]));
        assert_eq!(half_twist(4), BraidWord::positive(4, &[1, 2, 1, 3, 2, 1]));
        assert_eq!(half_twist(1).len(), 0);
    }

    #[test]
    fn coxeter_projection_examples() {
        assert_eq!(coxeter_projection(&half_twist(3)), Perm::longest(3));
        let bw = BraidWord::positive(7, &[3, 2, 1, 4, 3, 2, 5, 4, 6, 5]);
        assert_eq!(coxeter_projection(&bw).images(), &[4, 5, 1, 6, 7, 2, 3]);
        assert!(coxeter_projection(&BraidWord::identity(4)).is_identity());
    }

    #[test]
    fn lift_examples() {
        let w = Perm::parse("[4,5,1,6,7,2,3]").unwrap();
        let col = positive_lift(&w, LiftStrategy::ColumnReading { k: 3 }).unwrap();
        assert_eq!(col, BraidWord::positive(7, &[3, 2, 1, 4, 3, 2, 5, 4, 6, 5]));
        assert!(positive_lift(&Perm::identity(5), LiftStrategy::LexLeast).unwrap().is_empty());
        let wl = w_lambda(&[4, 3, 1], 3, 7);
        let col = positive_lift(&wl, LiftStrategy::ColumnReading { k: 3 }).unwrap();
        assert_eq!(col, BraidWord::positive(7, &[3, 2, 1, 4, 3, 5, 4, 6]));
        let row = positive_lift(&wl, LiftStrategy::RowReading { k: 3 }).unwrap();
        assert_eq!(row, BraidWord::positive(7, &[3, 4, 5, 6, 2, 3, 4, 1]));
        assert_eq!(coxeter_projection(&row), wl);
        assert_eq!(
            positive_lift(&Perm::parse("[2,1,3]").unwrap(), LiftStrategy::RowReading { k: 2 }),
            Err(BraidError::NotGrassmannian)
        );
    }

    #[test]
    fn w_lambda_of_intro() {
        assert_eq!(w_lambda(&[4, 4, 2], 3, 7).images(), &[4, 5, 1, 6, 7, 2, 3]);
        assert_eq!(grassmannian_partition(&w_lambda(&[4, 3, 1], 3, 7), 3), Some(alloc::vec![4, 3, 1]));
        // λ=(2,2,2,2), w = (s4s3s2s1)(s5s4s3s2)
        let w = w_lambda(&[2, 2, 2, 2], 4, 6);
        assert_eq!(w, coxeter_projection(&BraidWord::positive(6, &[4, 3, 2, 1, 5, 4, 3, 2])));
    }

    #[test]
    fn bruhat_examples() {
        let u = Perm::parse("[1,3,4,2,5,6,7]").unwrap();
        let w = Perm::parse("[4,5,1,6,7,2,3]").unwrap();
        assert!(bruhat_leq(&u, &w));
        assert!(bruhat_leq(&w, &w));
        assert!(!bruhat_leq(&Perm::parse("[2,1,3]").unwrap(), &Perm::parse("[1,3,2]").unwrap()));
    }

    #[test]
    fn grassmannian_examples() {
        assert!(is_k_grassmannian(&Perm::parse("[4,5,1,6,7,2,3]").unwrap(), 3));
        for k in 0..=4 {
            assert!(is_k_grassmannian(&Perm::identity(4), k));
        }
        assert!(!is_k_grassmannian(&Perm::parse("[2,1,3]").unwrap(), 2));
    }

    #[test]
    fn demazure_examples() {
        assert_eq!(demazure_product(&BraidWord::positive(2, &[1, 1])).unwrap(), Perm::longest(2));
        assert_eq!(demazure_product(&BraidWord::positive(3, &[1, 2, 1, 2])).unwrap(), Perm::longest(3));
        let r = BraidWord::positive(4, &[2, 1, 3, 2]);
        assert_eq!(demazure_product(&r).unwrap(), coxeter_projection(&r));
        assert_eq!(demazure_product(&b("n=2: s1^-1")), Err(BraidError::NegativeLetter(0)));
    }

    #[test]
    fn interval_opposite() {
        assert_eq!(interval_word(2, 4, 6), BraidWord::positive(6, &[4, 3, 2]));
        assert!(interval_word(3, 2, 6).is_empty());
        assert_eq!(interval_word_checked(2, 6, 6), Err(BraidError::BadInterval));
        assert_eq!(b("n=4: s1 s2^-1 s3").opposite(), b("n=4: s3 s2^-1 s1"));
    }

    #[test]
    fn jump_set_of_shuffle_times_delta() {
        // β(w_k) for the big cell of Gr(4,6), followed by Δ_6
        let w = w_lambda(&[2, 2, 2, 2], 4, 6);
        let bw = positive_lift(&w, LiftStrategy::ColumnReading { k: 4 }).unwrap();
        assert_eq!(bw.len(), 8);
        let word = bw.concat(&half_twist(6));
        let js = jump_set(&word).unwrap();
        assert_eq!(js, (0..8).collect());
        assert_eq!(jump_set(&BraidWord::positive(3, &[1, 2])), Err(BraidError::DemazureNotLongest));
    }

    #[test]
    fn perm_basics() {
        assert_eq!(all_perms(4).len(), 24);
        let w = Perm::parse("[3,1,2]").unwrap();
        assert!(w.compose(&w.inverse()).is_identity());
        assert_eq!(w.cycle_type(), alloc::vec![3]);
        assert_eq!(w.to_string(), "[3,1,2]");
        assert!(Perm::parse("[1,1,2]").is_err());
    }
}
