//! The four data types indexing positroid strata and the bijections
//! between them: positroid pairs, bounded affine permutations, cyclic rank
//! matrices and Le diagrams.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::braid::{
    bruhat_leq, column_reading, grassmannian_partition, is_k_grassmannian, parse_list, render_list, transpose,
    w_lambda, Perm,
};

/// A datum failed its validity check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation(pub String);

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl core::error::Error for Violation {}

fn violation<T>(s: String) -> Result<T, Violation> {
    Err(Violation(s))
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PositroidPair {
    pub n: usize,
    pub k: usize,
    pub u: Perm,
    pub w: Perm,
}

impl PositroidPair {
    pub fn new(k: usize, u: Perm, w: Perm) -> Result<PositroidPair, Violation> {
        let p = PositroidPair { n: w.n(), k, u, w };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<(), Violation> {
        if self.u.n() != self.n || self.w.n() != self.n {
            return violation(format!("u and w must lie in S_{}", self.n));
        }
        if self.k > self.n {
            return violation(format!("k={} exceeds n={}", self.k, self.n));
        }
        if !is_k_grassmannian(&self.w, self.k) {
            return violation(format!("w={} is not {}-Grassmannian", self.w, self.k));
        }
        if !bruhat_leq(&self.u, &self.w) {
            return violation(format!("u={} is not below w={} in Bruhat order", self.u, self.w));
        }
        Ok(())
    }

    /// The partition λ of w.
    pub fn lambda(&self) -> Vec<usize> {
        let mut lam = grassmannian_partition(&self.w, self.k).expect("validated pair");
        while lam.last() == Some(&0) {
            lam.pop();
        }
        lam
    }
}

impl fmt::Display for PositroidPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "k={} u={} w={}", self.k, self.u, self.w)
    }
}

/// A bounded affine permutation in window notation [f(1),…,f(n)].
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AffinePerm {
    pub window: Vec<i64>,
}

impl AffinePerm {
    pub fn new(window: Vec<i64>) -> AffinePerm {
        AffinePerm { window }
    }

    pub fn n(&self) -> usize {
        self.window.len()
    }

    /// Average shift Σ(f(i) - i)/n (floor).
    pub fn k(&self) -> usize {
        let n = self.n() as i64;
        let s: i64 = self.window.iter().enumerate().map(|(i, &f)| f - (i as i64 + 1)).sum();
        (s / n).max(0) as usize
    }

    /// f(i) for any integer i.
    pub fn at(&self, i: i64) -> i64 {
        let n = self.n() as i64;
        let r = (i - 1).rem_euclid(n);
        let q = (i - 1).div_euclid(n);
        self.window[r as usize] + q * n
    }

    /// t_k = [1+n, …, k+n, k+1, …, n].
    pub fn translation(k: usize, n: usize) -> AffinePerm {
        AffinePerm::new((1..=n as i64).map(|i| if i <= k as i64 { i + n as i64 } else { i }).collect())
    }

    pub fn fixed_points(&self) -> usize {
        self.window.iter().enumerate().filter(|&(i, &f)| f == i as i64 + 1).count()
    }

    /// Checks bijectivity mod n, i ≤ f(i) ≤ i+n, and Σ(f(i) - i) = nk.
    pub fn validate(&self, k: usize) -> Result<(), Violation> {
        let n = self.n() as i64;
        if n == 0 {
            return violation("empty window".into());
        }
        let mut seen = alloc::vec![false; n as usize];
        for (idx, &f) in self.window.iter().enumerate() {
            let i = idx as i64 + 1;
            if f < i {
                return violation(format!("i ≤ f(i) fails at i={i}"));
            }
            if f > i + n {
                return violation(format!("f(i) ≤ i+n fails at i={i}"));
            }
            let r = f.rem_euclid(n) as usize;
            if seen[r] {
                return violation(format!("window values collide mod n at i={i}"));
            }
            seen[r] = true;
        }
        let s: i64 = self.window.iter().enumerate().map(|(i, &f)| f - (i as i64 + 1)).sum();
        if s != n * k as i64 {
            return violation(format!("Σ(f(i)-i) = {s} but nk = {}", n * k as i64));
        }
        Ok(())
    }

    /// Parses "k=<int> f=[…]" (the k part may be omitted).
    pub fn parse(text: &str) -> Result<(usize, AffinePerm), Violation> {
        let t = text.trim();
        let (kpart, fpart) = match t.find("f=") {
            Some(p) => (t[..p].trim(), t[p + 2..].trim()),
            None => ("", t),
        };
        let window = parse_list(fpart).map_err(|e| Violation(format!("{e}")))?;
        let f = AffinePerm::new(window);
        let k = if kpart.is_empty() {
            f.k()
        } else {
            kpart
                .strip_prefix("k=")
                .and_then(|s| s.trim().parse().ok())
                .ok_or_else(|| Violation(format!("bad k in {t:?}")))?
        };
        f.validate(k)?;
        Ok((k, f))
    }
}

impl fmt::Display for AffinePerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "k={} f={}", self.k(), render_list(&self.window))
    }
}

/// f = u^{-1} t_k w.
pub fn pair_to_affine(p: &PositroidPair) -> AffinePerm {
    let n = p.n as i64;
    let uinv = p.u.inverse();
    let ext = |x: i64| -> i64 {
        let r = (x - 1).rem_euclid(n);
        let q = (x - 1).div_euclid(n);
        uinv.at(r as usize + 1) as i64 + q * n
    };
    AffinePerm::new(
        (1..=p.n)
            .map(|i| {
                let wi = p.w.at(i) as i64;
                let t = if wi <= p.k as i64 { wi + n } else { wi };
                ext(t)
            })
            .collect(),
    )
}

/// Inverse of [`pair_to_affine`] via the explicit w_f^{-1}, u_f^{-1}.
pub fn affine_to_pair(f: &AffinePerm) -> Result<PositroidPair, Violation> {
    let n = f.n();
    let k = f.k();
    f.validate(k)?;
    let big: Vec<usize> = (1..=n).filter(|&i| f.window[i - 1] > n as i64).collect();
    let small: Vec<usize> = (1..=n).filter(|&i| f.window[i - 1] <= n as i64).collect();
    let mut winv = big.clone();
    winv.extend(&small);
    let mut uinv: Vec<usize> = big.iter().map(|&i| (f.window[i - 1] - n as i64) as usize).collect();
    uinv.extend(small.iter().map(|&j| f.window[j - 1] as usize));
    let w = Perm::from_images(winv).map_err(|e| Violation(format!("{e}")))?.inverse();
    let u = Perm::from_images(uinv).map_err(|e| Violation(format!("{e}")))?.inverse();
    PositroidPair::new(k, u, w)
}

/// Cyclic rank matrix stored on the window i ∈ [1,n], j ∈ [i, i+n-1].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RankMatrix {
    pub n: usize,
    pub k: usize,
    rows: Vec<Vec<i64>>,
}

impl RankMatrix {
    pub fn from_window(n: usize, k: usize, rows: Vec<Vec<i64>>) -> RankMatrix {
        RankMatrix { n, k, rows }
    }

    pub fn window(&self) -> &[Vec<i64>] {
        &self.rows
    }

    /// r_{ij} for arbitrary integers, using periodicity and the boundary rules.
    pub fn at(&self, i: i64, j: i64) -> i64 {
        let n = self.n as i64;
        if j < i {
            return 0;
        }
        if j >= i + n - 1 {
            return self.k as i64;
        }
        let s = (i - 1).div_euclid(n);
        let (i0, j0) = (i - s * n, j - s * n);
        self.rows[(i0 - 1) as usize][(j0 - i0) as usize]
    }

    /// Checks conditions (i)–(iii) on one period of the array.
    pub fn validate(&self) -> Result<(), Violation> {
        let n = self.n as i64;
        if self.rows.len() != self.n || self.rows.iter().any(|r| r.len() != self.n) {
            return violation("rank window has the wrong shape".into());
        }
        for (idx, row) in self.rows.iter().enumerate() {
            if let Some(&last) = row.last() {
                if last != self.k as i64 {
                    return violation(format!("r_(i,i+n-1) must equal k at i={}", idx + 1));
                }
            }
        }
        for i in 1..=n {
            for j in i - 1..=i + n {
                let r = self.at(i, j);
                let d1 = r - self.at(i + 1, j);
                let d2 = r - self.at(i, j - 1);
                if !(0..=1).contains(&d1) || !(0..=1).contains(&d2) {
                    return violation(format!("unit-step condition fails at ({i},{j})"));
                }
                let a = self.at(i + 1, j - 1);
                if j > i && a == self.at(i + 1, j) && a == self.at(i, j - 1) && r != a {
                    return violation(format!("corner condition fails at ({i},{j})"));
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for RankMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.rows.iter().enumerate() {
            if i > 0 {
                f.write_str("\n")?;
            }
            f.write_str(&render_list(row))?;
        }
        Ok(())
    }
}

/// r_{ij} = #{a ∈ [i,j] : f(a) > j}.
pub fn affine_to_rank(f: &AffinePerm) -> RankMatrix {
    let n = f.n() as i64;
    let rows = (1..=n)
        .map(|i| (i..i + n).map(|j| (i..=j).filter(|&a| f.at(a) > j).count() as i64).collect())
        .collect();
    RankMatrix { n: f.n(), k: f.k(), rows }
}

/// f(i) = least j ≥ i with r_{ij} = r_{(i+1)j}.
pub fn rank_to_affine(r: &RankMatrix) -> Result<AffinePerm, Violation> {
    r.validate()?;
    let n = r.n as i64;
    let mut window = Vec::with_capacity(r.n);
    for i in 1..=n {
        let j = (i..=i + n)
            .find(|&j| r.at(i, j) == r.at(i + 1, j))
            .ok_or_else(|| Violation(format!("no f({i}) found")))?;
        window.push(j);
    }
    let f = AffinePerm::new(window);
    f.validate(r.k)?;
    Ok(f)
}

/// The four-term condition r_{ij} = r_{(i+1)j} = r_{i(j-1)} = r_{(i+1)(j-1)} + 1
/// characterizing j = f(i) away from fixed points.
pub fn rank_marks(r: &RankMatrix, i: i64, j: i64) -> bool {
    let a = r.at(i, j);
    a == r.at(i + 1, j) && a == r.at(i, j - 1) && a == r.at(i + 1, j - 1) + 1
}

/// Dotted Young diagram in French notation: row 1 is the bottom row.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LeDiagram {
    pub k: usize,
    pub n: usize,
    pub lambda: Vec<usize>,
    /// (row, column), both 1-based.
    pub dots: BTreeSet<(usize, usize)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LeCase {
    EmptyColumn(usize),
    EmptyRow(usize),
    TopAdjustedLastColumn,
    Empty,
}

impl LeDiagram {
    pub fn row_len(&self, r: usize) -> usize {
        self.lambda.get(r - 1).copied().unwrap_or(0)
    }

    pub fn col_height(&self, c: usize) -> usize {
        self.lambda.iter().filter(|&&l| l >= c).count()
    }

    pub fn in_lambda(&self, r: usize, c: usize) -> bool {
        r >= 1 && c >= 1 && r <= self.k && c <= self.row_len(r)
    }

    /// Dotted rows of column c, increasing.
    pub fn column_dots(&self, c: usize) -> Vec<usize> {
        self.dots.iter().filter(|&&(_, cc)| cc == c).map(|&(r, _)| r).collect()
    }

    pub fn validate(&self) -> Result<(), Violation> {
        if self.k > self.n {
            return violation(format!("k={} exceeds n={}", self.k, self.n));
        }
        if self.lambda.len() > self.k {
            return violation("λ has more than k rows".into());
        }
        if self.lambda.windows(2).any(|p| p[0] < p[1]) {
            return violation("λ is not weakly decreasing".into());
        }
        if self.lambda.first().is_some_and(|&l| l > self.n - self.k) {
            return violation("λ does not fit in the k×(n-k) box".into());
        }
        for &(r, c) in &self.dots {
            if !self.in_lambda(r, c) {
                return violation(format!("dot ({r},{c}) lies outside λ"));
            }
        }
        // hooks run up and to the right from each dot
        for &(ra, ca) in &self.dots {
            for &(rb, cb) in &self.dots {
                if rb > ra && cb < ca && self.in_lambda(rb, ca) && !self.dots.contains(&(rb, ca)) {
                    return violation(format!(
                        "Le condition fails: dots ({ra},{ca}) and ({rb},{cb}) but ({rb},{ca}) is empty"
                    ));
                }
            }
        }
        Ok(())
    }

    /// First applicable case: empty column, empty row, last column.
    pub fn inductive_case(&self) -> LeCase {
        let m = self.n - self.k;
        if self.k == 0 || m == 0 {
            return LeCase::Empty;
        }
        if let Some(c) = (1..=m).find(|&c| self.column_dots(c).is_empty()) {
            return LeCase::EmptyColumn(c);
        }
        if let Some(r) = (1..=self.k).find(|&r| !self.dots.iter().any(|&(rr, _)| rr == r)) {
            return LeCase::EmptyRow(r);
        }
        LeCase::TopAdjustedLastColumn
    }

    /// Dots of the last column fill every box above the lowest one.
    pub fn last_column_top_adjusted(&self) -> bool {
        let c = self.n - self.k;
        let d = self.column_dots(c);
        let h = self.col_height(c);
        d.first().is_none_or(|&lo| (lo..=h).all(|r| d.contains(&r)))
    }

    /// One line per row, top row first: '*' dot, '.' empty box.
    pub fn to_ascii(&self) -> String {
        let mut lines = Vec::new();
        for r in (1..=self.k).rev() {
            let s: String = (1..=self.row_len(r))
                .map(|c| if self.dots.contains(&(r, c)) { '*' } else { '.' })
                .collect();
            lines.push(s);
        }
        lines.join("\n")
    }

    /// Inverse of [`LeDiagram::to_ascii`]; k is the number of lines, so
    /// empty bottom rows show up as trailing blank lines.
    pub fn from_ascii(text: &str, n: usize) -> Result<LeDiagram, Violation> {
        let lines: Vec<&str> = text.split('\n').map(|l| l.trim()).collect();
        let k = lines.len();
        let mut lambda = alloc::vec![0; k];
        let mut dots = BTreeSet::new();
        for (idx, line) in lines.iter().enumerate() {
            let r = k - idx;
            lambda[r - 1] = line.chars().count();
            for (c, ch) in line.chars().enumerate() {
                match ch {
                    '*' => {
                        dots.insert((r, c + 1));
                    }
                    '.' => {}
                    other => return violation(format!("unexpected character {other:?}")),
                }
            }
        }
        while lambda.last() == Some(&0) {
            lambda.pop();
        }
        let d = LeDiagram { k, n, lambda, dots };
        d.validate()?;
        Ok(d)
    }
}

/// Boxes of λ in column-reading order (columns left to right, bottom to top).
fn column_cells(lam: &[usize]) -> Vec<(usize, usize)> {
    let lt = transpose(lam);
    let mut out = Vec::new();
    for (c, &h) in lt.iter().enumerate() {
        for r in 1..=h {
            out.push((r, c + 1));
        }
    }
    out
}

/// Undotted boxes spell the leftmost reduced subword for u inside the
/// column-reading word of w_λ.
pub fn pair_to_le(p: &PositroidPair) -> LeDiagram {
    let lam = p.lambda();
    let word = column_reading(&lam, p.k);
    let cells = column_cells(&lam);
    let mut rest = p.u.clone();
    let mut dots = BTreeSet::new();
    for (&i, &cell) in word.iter().zip(&cells) {
        if rest.has_left_descent(i) {
            rest = rest.mul_s_left(i);
        } else {
            dots.insert(cell);
        }
    }
    debug_assert!(rest.is_identity(), "u ≤ w guarantees a subword");
    LeDiagram { k: p.k, n: p.n, lambda: lam, dots }
}

pub fn le_to_pair(d: &LeDiagram) -> Result<PositroidPair, Violation> {
    d.validate()?;
    let w = w_lambda(&d.lambda, d.k, d.n);
    let word = column_reading(&d.lambda, d.k);
    let mut u = Perm::identity(d.n);
    for (&i, cell) in word.iter().zip(column_cells(&d.lambda)) {
        if !d.dots.contains(&cell) {
            u = u.mul_s_right(i);
        }
    }
    PositroidPair::new(d.k, u, w)
}

/// Partitions fitting in the k × m box, as row lengths λ_1 ≥ … (trailing zeros dropped).
pub fn partitions_in_box(k: usize, m: usize) -> Vec<Vec<usize>> {
    fn go(rows: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let mut v = cur.clone();
        while v.last() == Some(&0) {
            v.pop();
        }
        if rows == 0 {
            out.push(v);
            return;
        }
        for x in (0..=max).rev() {
            cur.push(x);
            go(rows - 1, x, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(k, m, &mut Vec::new(), &mut out);
    out
}

/// Every positroid pair for (k, n).
pub fn all_positroid_pairs(k: usize, n: usize) -> Vec<PositroidPair> {
    let mut out = Vec::new();
    let perms = crate::braid::all_perms(n);
    for lam in partitions_in_box(k, n - k) {
        let w = w_lambda(&lam, k, n);
        for u in &perms {
            if bruhat_leq(u, &w) {
                out.push(PositroidPair { n, k, u: u.clone(), w: w.clone() });
            }
        }
    }
    out
}
