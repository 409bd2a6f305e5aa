//! Elementary braid moves, replayable move traces, the sliding / interval
//! exchange moves, Markov reduction of Richardson braids and certificate
//! searches between words.
//!
//! Every move acts on a [`BraidWord`] at an explicit position, so a
//! [`MoveTrace`] is a proof object that can be re-checked with [`replay`].

use alloc::collections::VecDeque;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use hashbrown::HashMap;

use crate::braid::{column_reading, coxeter_projection, interval_word, transpose, BraidWord, Letter, Perm};
use crate::positroid::{PositroidPair, Violation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DeltaDir {
    /// σ_i β → β σ_{n-i}
    LeftToRight,
    /// β σ_i → σ_{n-i} β
    RightToLeft,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Move {
    /// Insert σ_i σ_i^{-1} (`positive_first`) or σ_i^{-1} σ_i before position `at`.
    RiiInsert { at: usize, index: usize, positive_first: bool },
    /// Delete the cancelling pair at `at`, `at + 1`.
    RiiRemove { at: usize },
    /// σ_i σ_j σ_i → σ_j σ_i σ_j, |i - j| = 1.
    RiiiPos { at: usize },
    RiiiNeg { at: usize },
    /// σ_i^e σ_j^e σ_i^{-e} ↔ σ_j^{-e} σ_i^e σ_j^e, |i - j| = 1 (an involution).
    RiiiMixed { at: usize },
    /// Swap two adjacent letters with |i - j| ≥ 2.
    Commute { at: usize },
    DeltaConjugate { dir: DeltaDir },
    /// `forward` moves the first letter to the end.
    CyclicRotate { forward: bool },
    /// Insert σ_n at `at`, adding strand n + 1.
    PosStabilize { at: usize },
    /// Delete the unique σ_{n-1} (positive) at `at`, dropping strand n.
    PosDestabilize { at: usize },
    /// Insert an unused strand at position `strand`.
    AddDisjointStrand { strand: usize },
    RemoveDisjointStrand { strand: usize },
}

impl Move {
    pub fn kind_name(&self) -> &'static str {
        match self {
            Move::RiiInsert { .. } => "RII_insert",
            Move::RiiRemove { .. } => "RII_remove",
            Move::RiiiPos { .. } => "RIII_pos",
            Move::RiiiNeg { .. } => "RIII_neg",
            Move::RiiiMixed { .. } => "RIII_mixed",
            Move::Commute { .. } => "Commute",
            Move::DeltaConjugate { .. } => "DeltaConjugate",
            Move::CyclicRotate { .. } => "CyclicRotate",
            Move::PosStabilize { .. } => "PosStabilize",
            Move::PosDestabilize { .. } => "PosDestabilize",
            Move::AddDisjointStrand { .. } => "AddDisjointStrand",
            Move::RemoveDisjointStrand { .. } => "RemoveDisjointStrand",
        }
    }

    /// RII, RIII and commutations: moves that keep the braid itself.
    pub fn is_local(&self) -> bool {
        matches!(
            self,
            Move::RiiInsert { .. }
                | Move::RiiRemove { .. }
                | Move::RiiiPos { .. }
                | Move::RiiiNeg { .. }
                | Move::RiiiMixed { .. }
                | Move::Commute { .. }
        )
    }

    /// The move undoing `self`, given the word `self` was applied to.
    pub fn inverse_on(&self, before: &BraidWord) -> Move {
        match *self {
            Move::RiiInsert { at, .. } => Move::RiiRemove { at },
            Move::RiiRemove { at } => {
                let l = before.letters[at];
                Move::RiiInsert { at, index: l.index(), positive_first: l.is_positive() }
            }
            Move::DeltaConjugate { dir: DeltaDir::LeftToRight } => Move::DeltaConjugate { dir: DeltaDir::RightToLeft },
            Move::DeltaConjugate { dir: DeltaDir::RightToLeft } => Move::DeltaConjugate { dir: DeltaDir::LeftToRight },
            Move::CyclicRotate { forward } => Move::CyclicRotate { forward: !forward },
            Move::PosStabilize { at } => Move::PosDestabilize { at },
            Move::PosDestabilize { at } => Move::PosStabilize { at },
            Move::AddDisjointStrand { strand } => Move::RemoveDisjointStrand { strand },
            Move::RemoveDisjointStrand { strand } => Move::AddDisjointStrand { strand },
            m => m,
        }
    }

    /// Same move `offset` letters further right (local moves only).
    pub fn shifted(&self, offset: usize) -> Move {
        match *self {
            Move::RiiInsert { at, index, positive_first } => Move::RiiInsert { at: at + offset, index, positive_first },
            Move::RiiRemove { at } => Move::RiiRemove { at: at + offset },
            Move::RiiiPos { at } => Move::RiiiPos { at: at + offset },
            Move::RiiiNeg { at } => Move::RiiiNeg { at: at + offset },
            Move::RiiiMixed { at } => Move::RiiiMixed { at: at + offset },
            Move::Commute { at } => Move::Commute { at: at + offset },
            Move::PosDestabilize { at } => Move::PosDestabilize { at: at + offset },
            Move::PosStabilize { at } => Move::PosStabilize { at: at + offset },
            m => m,
        }
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.kind_name())?;
        match *self {
            Move::RiiInsert { at, index, positive_first } => {
                let order = if positive_first { "+-" } else { "-+" };
                write!(f, " at={at} index={index} order={order}")
            }
            Move::RiiRemove { at }
            | Move::RiiiPos { at }
            | Move::RiiiNeg { at }
            | Move::RiiiMixed { at }
            | Move::Commute { at }
            | Move::PosStabilize { at }
            | Move::PosDestabilize { at } => write!(f, " at={at}"),
            Move::DeltaConjugate { dir } => match dir {
                DeltaDir::LeftToRight => f.write_str(" dir=L2R"),
                DeltaDir::RightToLeft => f.write_str(" dir=R2L"),
            },
            Move::CyclicRotate { forward } => write!(f, " forward={forward}"),
            Move::AddDisjointStrand { strand } | Move::RemoveDisjointStrand { strand } => {
                write!(f, " strand={strand}")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MoveError {
    pub kind: &'static str,
    pub reason: String,
}

impl fmt::Display for MoveError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} not applicable: {}", self.kind, self.reason)
    }
}

impl core::error::Error for MoveError {}

fn adjacent(a: Letter, b: Letter) -> bool {
    a.index().abs_diff(b.index()) == 1
}

/// Core of [`apply_move`] without the invariant assertions.
fn apply_raw(strands: usize, w: &[Letter], m: &Move) -> Result<(usize, Vec<Letter>), MoveError> {
    let fail = |reason: String| Err(MoveError { kind: m.kind_name(), reason });
    let need = |at: usize, len: usize| -> Result<(), MoveError> {
        if at + len > w.len() {
            Err(MoveError { kind: m.kind_name(), reason: format!("position {at} out of range for length {}", w.len()) })
        } else {
            Ok(())
        }
    };
    let mut out = w.to_vec();
    let mut n = strands;
    match *m {
        Move::RiiInsert { at, index, positive_first } => {
            if at > w.len() {
                return fail(format!("position {at} out of range for length {}", w.len()));
            }
            if index == 0 || index >= strands {
                return fail(format!("generator s{index} out of range for {strands} strands"));
            }
            let l = Letter::new(index, positive_first);
            out.splice(at..at, [l, l.inverse()]);
        }
        Move::RiiRemove { at } => {
            need(at, 2)?;
            if w[at + 1] != w[at].inverse() {
                return fail(format!("letters at {at},{} do not cancel", at + 1));
            }
            out.drain(at..at + 2);
        }
        Move::RiiiPos { at } | Move::RiiiNeg { at } => {
            need(at, 3)?;
            let want = matches!(m, Move::RiiiPos { .. });
            let (a, b, c) = (w[at], w[at + 1], w[at + 2]);
            if ![a, b, c].iter().all(|l| l.is_positive() == want) {
                return fail(format!("letters at {at}..{} have the wrong signs", at + 2));
            }
            if a != c || !adjacent(a, b) {
                return fail(format!("no s_i s_j s_i pattern at {at}"));
            }
            out[at] = b;
            out[at + 1] = a;
            out[at + 2] = b;
        }
        Move::RiiiMixed { at } => {
            need(at, 3)?;
            let (a, b, c) = (w[at], w[at + 1], w[at + 2]);
            if a.index() != c.index() || !adjacent(a, b) || a.is_positive() == c.is_positive() {
                return fail(format!("no mixed s_i s_j s_i pattern at {at}"));
            }
            let s = b.is_positive();
            let (x, y) = (a.index(), b.index());
            if a.is_positive() == s {
                // x^s y^s x^{-s} → y^{-s} x^s y^s
                out[at] = Letter::new(y, !s);
                out[at + 1] = Letter::new(x, s);
                out[at + 2] = Letter::new(y, s);
            } else {
                // x^{-s} y^s x^s → y^s x^s y^{-s}
                out[at] = Letter::new(y, s);
                out[at + 1] = Letter::new(x, s);
                out[at + 2] = Letter::new(y, !s);
            }
        }
        Move::Commute { at } => {
            need(at, 2)?;
            if w[at].index().abs_diff(w[at + 1].index()) < 2 {
                return fail(format!("letters at {at},{} do not commute", at + 1));
            }
            out.swap(at, at + 1);
        }
        Move::DeltaConjugate { dir } => {
            if w.is_empty() {
                return fail("empty word".into());
            }
            match dir {
                DeltaDir::LeftToRight => {
                    let l = out.remove(0);
                    out.push(l.with_index(n - l.index()));
                }
                DeltaDir::RightToLeft => {
                    let l = out.pop().expect("non-empty");
                    out.insert(0, l.with_index(n - l.index()));
                }
            }
        }
        Move::CyclicRotate { forward } => {
            if w.is_empty() {
                return fail("empty word".into());
            }
            if forward {
                out.rotate_left(1);
            } else {
                out.rotate_right(1);
            }
        }
        Move::PosStabilize { at } => {
            if at > w.len() {
                return fail(format!("position {at} out of range for length {}", w.len()));
            }
            out.insert(at, Letter::pos(n));
            n += 1;
        }
        Move::PosDestabilize { at } => {
            need(at, 1)?;
            if n < 2 || w[at] != Letter::pos(n - 1) {
                return fail(format!("letter at {at} is not s{}", n.saturating_sub(1)));
            }
            let occ = w.iter().filter(|l| l.index() == n - 1).count();
            if occ != 1 {
                return fail(format!("s{} occurs {occ} times", n - 1));
            }
            out.remove(at);
            n -= 1;
        }
        Move::AddDisjointStrand { strand } => {
            if strand == 0 || strand > n + 1 {
                return fail(format!("strand {strand} out of range"));
            }
            if strand >= 2 && strand <= n && w.iter().any(|l| l.index() == strand - 1) {
                return fail(format!("s{} crosses the insertion point", strand - 1));
            }
            for l in out.iter_mut() {
                if l.index() >= strand {
                    *l = l.with_index(l.index() + 1);
                }
            }
            n += 1;
        }
        Move::RemoveDisjointStrand { strand } => {
            if n < 2 || strand == 0 || strand > n {
                return fail(format!("strand {strand} out of range"));
            }
            if w.iter().any(|l| l.index() + 1 == strand || l.index() == strand) {
                return fail(format!("strand {strand} is used"));
            }
            for l in out.iter_mut() {
                if l.index() > strand {
                    *l = l.with_index(l.index() - 1);
                }
            }
            n -= 1;
        }
    }
    Ok((n, out))
}

fn times_w0(p: &Perm) -> Perm {
    p.compose(&Perm::longest(p.n()))
}

fn check_invariants(before: &BraidWord, after: &BraidWord, m: &Move) {
    let (dw, dn): (i64, i64) = match m {
        Move::PosStabilize { .. } => (1, 1),
        Move::PosDestabilize { .. } => (-1, -1),
        Move::AddDisjointStrand { .. } => (0, 1),
        Move::RemoveDisjointStrand { .. } => (0, -1),
        _ => (0, 0),
    };
    assert_eq!(after.writhe(), before.writhe() + dw, "{m}: writhe changed unexpectedly");
    assert_eq!(after.strands as i64, before.strands as i64 + dn, "{m}: strand count changed unexpectedly");
    let (p, q) = (coxeter_projection(before), coxeter_projection(after));
    match m {
        _ if m.is_local() => assert_eq!(p, q, "{m}: Coxeter projection changed"),
        Move::CyclicRotate { .. } => assert_eq!(p.cycle_type(), q.cycle_type(), "{m}: closure permutation class changed"),
        Move::DeltaConjugate { .. } => assert_eq!(
            times_w0(&p).cycle_type(),
            times_w0(&q).cycle_type(),
            "{m}: class of the projection times w0 changed"
        ),
        _ => {}
    }
}

/// Apply one move; invariants (writhe, strand count, Coxeter projection) are asserted.
pub fn apply_move(b: &BraidWord, m: &Move) -> Result<BraidWord, MoveError> {
    let (strands, letters) = apply_raw(b.strands, &b.letters, m)?;
    let out = BraidWord { strands, letters };
    check_invariants(b, &out, m);
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MoveTrace {
    pub start: BraidWord,
    pub moves: Vec<Move>,
    pub end: BraidWord,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReplayFailure {
    /// Index of the failing move; `moves.len()` when the end word mismatches.
    pub step: usize,
    pub reason: String,
}

impl fmt::Display for ReplayFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "replay failed at step {}: {}", self.step, self.reason)
    }
}

impl core::error::Error for ReplayFailure {}

pub fn replay(trace: &MoveTrace) -> Result<(), ReplayFailure> {
    let mut cur = trace.start.clone();
    for (step, m) in trace.moves.iter().enumerate() {
        cur = apply_move(&cur, m).map_err(|e| ReplayFailure { step, reason: format!("{e}") })?;
    }
    if cur != trace.end {
        return Err(ReplayFailure {
            step: trace.moves.len(),
            reason: format!("reached {cur}, expected {}", trace.end),
        });
    }
    Ok(())
}

impl MoveTrace {
    pub fn identity(word: BraidWord) -> MoveTrace {
        MoveTrace { start: word.clone(), moves: Vec::new(), end: word }
    }

    pub fn replay(&self) -> Result<(), ReplayFailure> {
        replay(self)
    }

    /// Run the moves from `start`, returning every intermediate word (start included).
    pub fn words(&self) -> Result<Vec<BraidWord>, ReplayFailure> {
        let mut out = vec![self.start.clone()];
        for (step, m) in self.moves.iter().enumerate() {
            let next = apply_move(out.last().expect("non-empty"), m)
                .map_err(|e| ReplayFailure { step, reason: format!("{e}") })?;
            out.push(next);
        }
        Ok(out)
    }

    pub fn then(mut self, other: MoveTrace) -> MoveTrace {
        assert_eq!(self.end, other.start, "traces do not compose");
        self.moves.extend(other.moves);
        self.end = other.end;
        self
    }

    pub fn inverse(&self) -> MoveTrace {
        let words = self.words().expect("inverting a valid trace");
        let moves = self.moves.iter().zip(&words).rev().map(|(m, w)| m.inverse_on(w)).collect();
        MoveTrace { start: self.end.clone(), moves, end: self.start.clone() }
    }

    pub fn count(&self, kind: &str) -> usize {
        self.moves.iter().filter(|m| m.kind_name() == kind).count()
    }
}

/// Incremental trace construction; every step is checked.
struct Builder {
    start: BraidWord,
    word: BraidWord,
    moves: Vec<Move>,
}

impl Builder {
    fn new(word: BraidWord) -> Builder {
        Builder { start: word.clone(), word, moves: Vec::new() }
    }

    fn step(&mut self, m: Move) -> Result<(), MoveError> {
        self.word = apply_move(&self.word, &m)?;
        self.moves.push(m);
        Ok(())
    }

    fn finish(self) -> MoveTrace {
        MoveTrace { start: self.start, moves: self.moves, end: self.word }
    }

    fn at(&self, i: usize) -> Letter {
        self.word.letters[i]
    }

    /// σ_{[a,d]} sits at `s..` and is followed by σ_m^{±} with a < m ≤ d.
    /// Afterwards σ_{m-1}^{±} sits at `s` and the interval right after it.
    fn pass_left(&mut self, s: usize, a: usize, d: usize) -> Result<(), MoveError> {
        let len = d + 1 - a;
        let bad = |reason: String| MoveError { kind: "interval exchange", reason };
        if s + len >= self.word.len() {
            return Err(bad(format!("no letter after the interval at {s}")));
        }
        for t in 0..len {
            if self.at(s + t) != Letter::pos(d - t) {
                return Err(bad(format!("expected s{} at {}", d - t, s + t)));
            }
        }
        let x = self.at(s + len);
        let m = x.index();
        if m <= a || m > d {
            return Err(bad(format!("s{m} is not strictly inside [{a},{d}]")));
        }
        let q = s + len;
        for t in 0..m - 1 - a {
            self.step(Move::Commute { at: q - 1 - t })?;
        }
        let tri = s + d - m;
        if x.is_positive() {
            self.step(Move::RiiiPos { at: tri })?;
        } else {
            self.step(Move::RiiiMixed { at: tri })?;
        }
        for t in 0..d - m {
            self.step(Move::Commute { at: tri - 1 - t })?;
        }
        Ok(())
    }

    /// σ_{[b,c]} sits at `s..` followed by `r` inverse letters; slide them through.
    /// Returns (number of υ^{-1} letters now at `s..`, new b).
    fn slide_at(&mut self, s: usize, mut b: usize, c: usize, r: usize) -> Result<(usize, usize), MoveError> {
        let mut v = 0;
        for _ in 0..r {
            let len = (c + 1).saturating_sub(b);
            let p = s + v + len;
            let x = self.at(p);
            let m = x.index();
            if x.is_positive() {
                return Err(MoveError { kind: "slide", reason: format!("positive letter s{m} in u^-1") });
            }
            if len > 0 && m == b {
                self.step(Move::RiiRemove { at: p - 1 })?;
                b += 1;
            } else if b < m && m <= c {
                self.pass_left(s + v, b, c)?;
                v += 1;
            } else {
                return Err(MoveError { kind: "slide", reason: format!("s{m} is not in [{b},{c}]") });
            }
        }
        Ok((v, b))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Slide {
    /// υ, a positive word; the slid form is υ^{-1} σ_{[b,c]}.
    pub upsilon: BraidWord,
    pub b: usize,
    pub trace: MoveTrace,
}

/// Slide u^{-1} through σ_{[a,c]}: σ_{[a,c]} u^{-1} = υ^{-1} σ_{[b,c]}, u a subword of σ_{[a,c]}.
pub fn slide(a: usize, c: usize, u: &BraidWord) -> Result<Slide, MoveError> {
    let n = u.strands;
    let start = interval_word(a, c, n).concat(&u.inverse());
    let mut bld = Builder::new(start);
    let (v, b) = bld.slide_at(0, a, c, u.len())?;
    let upsilon = BraidWord { strands: n, letters: bld.word.letters[..v].iter().rev().map(|l| l.inverse()).collect() };
    Ok(Slide { upsilon, b, trace: bld.finish() })
}

/// σ_{[a,d]} X_{[b,c]} = X_{[b-1,c-1]} σ_{[a,d]} for a < b ≤ c ≤ d, where X is
/// σ_{[b,c]} (`positive`) or its inverse.
pub fn nested_exchange(a: usize, b: usize, c: usize, d: usize, positive: bool, strands: usize) -> Result<MoveTrace, MoveError> {
    if !(1 <= a && a < b && b <= c && c <= d && d < strands) {
        return Err(MoveError {
            kind: "interval exchange",
            reason: format!("needs 1 <= a < b <= c <= d < n, got a={a} b={b} c={c} d={d} n={strands}"),
        });
    }
    let x = interval_word(b, c, strands);
    let x = if positive { x } else { x.inverse() };
    let mut bld = Builder::new(interval_word(a, d, strands).concat(&x));
    for t in 0..x.len() {
        bld.pass_left(t, a, d)?;
    }
    Ok(bld.finish())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarkovReduction {
    /// The k-stranded word v_d^{-1} σ_{[k-γ_d+1,k-1]} ⋯ v_1^{-1} σ_{[k-γ_1+1,k-1]}.
    pub word: BraidWord,
    /// γ_1, …, γ_d.
    pub gamma: Vec<usize>,
    /// From β(w) β(u)^{-1} (β(u) = u_1⋯u_d split along the intervals of β(w)) to `word`.
    pub trace: MoveTrace,
}

/// Split β(u) along the column intervals of β(w_λ): u_j is the part of the
/// rightmost reduced subword lying in column j.
pub fn column_split(p: &PositroidPair) -> Vec<Vec<usize>> {
    let lam = p.lambda();
    let lt = transpose(&lam);
    let word = column_reading(&lam, p.k);
    let mut col_of = Vec::with_capacity(word.len());
    for (j, &h) in lt.iter().enumerate() {
        col_of.extend(core::iter::repeat(j).take(h));
    }
    let mut parts = vec![Vec::new(); p.n - p.k];
    let mut rest = p.u.clone();
    for (&i, &j) in word.iter().zip(&col_of).rev() {
        if rest.has_right_descent(i) {
            rest = rest.mul_s_right(i);
            parts[j].insert(0, i);
        }
    }
    debug_assert!(rest.is_identity());
    parts
}

/// Reduce R_n(u,w) to k strands by sliding, interval exchanges and positive destabilizations.
pub fn markov_reduce(p: &PositroidPair) -> Result<MarkovReduction, Violation> {
    let (k, n) = (p.k, p.n);
    let d = n - k;
    let lt = transpose(&p.lambda());
    let col = |j: usize| lt.get(j - 1).copied().unwrap_or(0);
    let parts = column_split(p);
    let mut start = BraidWord::identity(n);
    for j in 1..=d {
        start = start.concat(&interval_word(k + j - col(j), k + j - 1, n));
    }
    for j in (1..=d).rev() {
        start = start.concat(&BraidWord::positive(n, &parts[j - 1]).inverse());
    }
    let err = |e: MoveError| Violation(format!("Markov reduction: {e}"));
    let mut bld = Builder::new(start);
    let mut gamma = vec![0; d];
    let mut red = 0;
    for e in (1..=d).rev() {
        let top = k + e;
        let before: usize = (1..e).map(col).sum();
        if col(e) == 0 {
            bld.step(Move::RemoveDisjointStrand { strand: top }).map_err(err)?;
            continue;
        }
        let s = red + before;
        let (v, b) = bld.slide_at(s, k + e - col(e), top - 1, parts[e - 1].len()).map_err(err)?;
        let tail = if b < top {
            bld.step(Move::PosDestabilize { at: s + v }).map_err(err)?;
            top - 1 - b
        } else {
            bld.step(Move::RemoveDisjointStrand { strand: top }).map_err(err)?;
            0
        };
        for t in 0..v + tail {
            for i in (1..e).rev() {
                let at = red + t + (1..i).map(col).sum::<usize>();
                bld.pass_left(at, k + i - col(i), k + i - 1).map_err(err)?;
            }
        }
        gamma[e - 1] = top - b;
        red += v + tail;
    }
    let trace = bld.finish();
    Ok(MarkovReduction { word: trace.end.clone(), gamma, trace })
}

// ---------------------------------------------------------------------------
// Group equality: handle reduction and the Artin representation.

/// Dehornoy handle reduction with every step expanded into RII/RIII/commutation moves.
/// `None` when more than `max_moves` moves would be needed.
pub fn handle_reduce(word: &BraidWord, max_moves: usize) -> Option<MoveTrace> {
    let mut bld = Builder::new(word.clone());
    while let Some((p, q)) = leftmost_handle(&bld.word.letters) {
        let x = bld.at(p);
        let (i, e) = (x.index(), x.is_positive());
        let mut pos = p;
        loop {
            if bld.moves.len() > max_moves {
                return None;
            }
            let z = bld.at(pos + 1);
            if z == x.inverse() {
                bld.step(Move::RiiRemove { at: pos }).expect("handle ends cancel");
                break;
            }
            if z.index() >= i + 2 {
                bld.step(Move::Commute { at: pos }).expect("far letters commute");
                pos += 1;
            } else {
                debug_assert_eq!(z.index(), i + 1);
                bld.step(Move::RiiInsert { at: pos, index: i + 1, positive_first: !e }).expect("insert");
                let m = if z.is_positive() != e {
                    Move::RiiiMixed { at: pos + 1 }
                } else if e {
                    Move::RiiiPos { at: pos + 1 }
                } else {
                    Move::RiiiNeg { at: pos + 1 }
                };
                bld.step(m).expect("braid relation inside a handle");
                pos += 3;
            }
        }
        let _ = q;
    }
    Some(bld.finish())
}

/// The handle σ_i^e ⋯ σ_i^{-e} whose end is leftmost (hence permitted).
fn leftmost_handle(w: &[Letter]) -> Option<(usize, usize)> {
    for q in 1..w.len() {
        let i = w[q].index();
        for p in (0..q).rev() {
            let z = w[p];
            if z.index() < i {
                break;
            }
            if z.index() == i {
                if z == w[q].inverse() {
                    return Some((p, q));
                }
                break;
            }
        }
    }
    None
}

/// A trace from `b1` to `b2` when they are equal in the braid group:
/// append β2^{-1}β2 by RII insertions, then handle-reduce β1β2^{-1} to the empty word.
pub fn certify_group_equal(b1: &BraidWord, b2: &BraidWord, max_moves: usize) -> Option<MoveTrace> {
    if b1.strands != b2.strands {
        return None;
    }
    let mut bld = Builder::new(b1.clone());
    let base = b1.len();
    for (t, l) in b2.letters.iter().rev().enumerate() {
        bld.step(Move::RiiInsert { at: base + t, index: l.index(), positive_first: !l.is_positive() })
            .expect("insert");
    }
    let head = BraidWord { strands: b1.strands, letters: bld.word.letters[..base + b2.len()].to_vec() };
    let red = handle_reduce(&head, max_moves)?;
    if !red.end.is_empty() {
        return None;
    }
    for m in red.moves {
        bld.step(m).expect("local moves act on the prefix");
    }
    let trace = bld.finish();
    debug_assert_eq!(&trace.end, b2);
    Some(trace)
}

fn free_reduce(w: &mut Vec<i32>) {
    let mut out: Vec<i32> = Vec::with_capacity(w.len());
    for &x in w.iter() {
        if out.last() == Some(&-x) {
            out.pop();
        } else {
            out.push(x);
        }
    }
    *w = out;
}

/// Images of the free generators x_1..x_n under the Artin action of `b`
/// (σ_i: x_i ↦ x_i x_{i+1} x_i^{-1}, x_{i+1} ↦ x_i); a faithful invariant.
pub fn artin_images(b: &BraidWord) -> Vec<Vec<i32>> {
    let n = b.strands;
    let mut imgs: Vec<Vec<i32>> = (1..=n as i32).map(|j| vec![j]).collect();
    for l in &b.letters {
        let i = l.index() as i32;
        let sub = |x: i32| -> Vec<i32> {
            let (g, s) = (x.abs(), x.signum());
            let img: Vec<i32> = if l.is_positive() {
                if g == i {
                    vec![i, i + 1, -i]
                } else if g == i + 1 {
                    vec![i]
                } else {
                    vec![g]
                }
            } else if g == i {
                vec![i + 1]
            } else if g == i + 1 {
                vec![-(i + 1), i, i + 1]
            } else {
                vec![g]
            };
            if s > 0 {
                img
            } else {
                img.iter().rev().map(|y| -y).collect()
            }
        };
        for w in imgs.iter_mut() {
            let mut next = Vec::with_capacity(w.len() + 2);
            for &x in w.iter() {
                next.extend(sub(x));
            }
            free_reduce(&mut next);
            *w = next;
        }
    }
    imgs
}

pub fn artin_equal(b1: &BraidWord, b2: &BraidWord) -> bool {
    b1.strands == b2.strands && artin_images(b1) == artin_images(b2)
}

// ---------------------------------------------------------------------------
// Bounded bidirectional search.

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    /// Total number of stored words over both directions.
    pub max_states: usize,
    /// Words may grow this many letters beyond the longer input.
    pub extra_length: usize,
    /// Allow RII insertions (large branching).
    pub insertions: bool,
    /// Allow cyclic rotation and Δ-conjugation.
    pub conjugation: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { max_states: 1_000_000, extra_length: 4, insertions: false, conjugation: true }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchError {
    /// An invariant differs, so no certificate exists.
    Invariant(String),
    /// Budget exhausted; this is not a proof of inequivalence.
    NotFound { explored: usize },
}

impl fmt::Display for SearchError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SearchError::Invariant(s) => write!(f, "not found: {s}"),
            SearchError::NotFound { explored } => write!(f, "not found within budget ({explored} words explored)"),
        }
    }
}

impl core::error::Error for SearchError {}

fn neighbors(n: usize, w: &[Letter], opts: &SearchOptions, max_len: usize, out: &mut Vec<(Move, Vec<Letter>)>) {
    out.clear();
    let mut push = |m: Move| {
        if let Ok((_, v)) = apply_raw(n, w, &m) {
            out.push((m, v));
        }
    };
    for at in 0..w.len().saturating_sub(1) {
        let (a, b) = (w[at], w[at + 1]);
        if b == a.inverse() {
            push(Move::RiiRemove { at });
        }
        if a.index().abs_diff(b.index()) >= 2 {
            push(Move::Commute { at });
        }
        if at + 2 < w.len() && w[at + 2].index() == a.index() && adjacent(a, b) {
            let c = w[at + 2];
            if a == c && a.is_positive() == b.is_positive() {
                push(if a.is_positive() { Move::RiiiPos { at } } else { Move::RiiiNeg { at } });
            } else if a == c.inverse() {
                push(Move::RiiiMixed { at });
            }
        }
    }
    if opts.conjugation && !w.is_empty() {
        push(Move::CyclicRotate { forward: true });
        push(Move::CyclicRotate { forward: false });
        push(Move::DeltaConjugate { dir: DeltaDir::LeftToRight });
        push(Move::DeltaConjugate { dir: DeltaDir::RightToLeft });
    }
    if opts.insertions && w.len() + 2 <= max_len {
        for at in 0..=w.len() {
            for index in 1..n {
                for positive_first in [true, false] {
                    push(Move::RiiInsert { at, index, positive_first });
                }
            }
        }
    }
}

type Parents = HashMap<Vec<Letter>, Option<(Vec<Letter>, Move)>>;

/// Search for a move trace from `b1` to `b2` using RII, RIII, commutations and,
/// if enabled, cyclic rotation and Δ-conjugation.
pub fn find_equivalence(b1: &BraidWord, b2: &BraidWord, opts: SearchOptions) -> Result<MoveTrace, SearchError> {
    if b1.strands != b2.strands {
        return Err(SearchError::Invariant(format!("strand counts {} and {}", b1.strands, b2.strands)));
    }
    if b1.writhe() != b2.writhe() {
        return Err(SearchError::Invariant(format!("writhes {} and {}", b1.writhe(), b2.writhe())));
    }
    if !opts.conjugation && coxeter_projection(b1) != coxeter_projection(b2) {
        return Err(SearchError::Invariant("Coxeter projections differ".into()));
    }
    if b1 == b2 {
        return Ok(MoveTrace::identity(b1.clone()));
    }
    let n = b1.strands;
    let max_len = b1.len().max(b2.len()) + opts.extra_length;
    let mut fwd: Parents = HashMap::new();
    let mut bwd: Parents = HashMap::new();
    fwd.insert(b1.letters.clone(), None);
    bwd.insert(b2.letters.clone(), None);
    let mut ff: VecDeque<Vec<Letter>> = VecDeque::from([b1.letters.clone()]);
    let mut bf: VecDeque<Vec<Letter>> = VecDeque::from([b2.letters.clone()]);
    let mut buf = Vec::new();
    let mut meet = None;
    'outer: while !ff.is_empty() && !bf.is_empty() {
        let forward = ff.len() <= bf.len();
        let (frontier, mine, other) = if forward { (&mut ff, &mut fwd, &bwd) } else { (&mut bf, &mut bwd, &fwd) };
        let mut next = VecDeque::new();
        while let Some(w) = frontier.pop_front() {
            neighbors(n, &w, &opts, max_len, &mut buf);
            for (m, v) in buf.drain(..) {
                if v.len() > max_len || mine.contains_key(&v) {
                    continue;
                }
                let link = if forward {
                    (w.clone(), m)
                } else {
                    (w.clone(), m.inverse_on(&BraidWord { strands: n, letters: w.clone() }))
                };
                let hit = other.contains_key(&v);
                mine.insert(v.clone(), Some(link));
                if hit {
                    meet = Some(v);
                    break 'outer;
                }
                if mine.len() + other.len() >= opts.max_states {
                    break 'outer;
                }
                next.push_back(v);
            }
        }
        *frontier = next;
    }
    match meet {
        Some(v) => {
            let trace = assemble(&fwd, &bwd, &v, b1, b2);
            replay(&trace).expect("search produced a valid trace");
            Ok(trace)
        }
        None => Err(SearchError::NotFound { explored: fwd.len() + bwd.len() }),
    }
}

fn assemble(fwd: &Parents, bwd: &Parents, meet: &[Letter], b1: &BraidWord, b2: &BraidWord) -> MoveTrace {
    let mut head = Vec::new();
    let mut cur = meet.to_vec();
    while let Some(Some((prev, m))) = fwd.get(&cur) {
        head.push(*m);
        cur = prev.clone();
    }
    head.reverse();
    let mut cur = meet.to_vec();
    while let Some(Some((next, m))) = bwd.get(&cur) {
        head.push(*m);
        cur = next.clone();
    }
    MoveTrace { start: b1.clone(), moves: head, end: b2.clone() }
}
