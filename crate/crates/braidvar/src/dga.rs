//! The braid DG-algebra 𝒜(β) of an admissible word β = ηΔ_n.
//!
//! Generators: `y_lm` (degree 1), `z_j` on positive crossings (degree 0),
//! `w_k` on negative crossings (degree −1). The algebra is graded
//! commutative; `y` and `w` are odd, `z` and the ground variables `t_l` even,
//! so an element is a sum of polynomial coefficients times exterior
//! monomials in the odd generators.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::braid::{half_twist, BraidWord, Letter};
use crate::matrix::{crossing_vars, word_matrix_with, VarietyPresentation};
use crate::poly::{Poly, Var};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DgaError {
    NoSuchCrossing(Crossing),
    SameCrossing,
    BadLevel { level: usize, strands: usize },
    NoSlice { w: usize },
}

impl fmt::Display for DgaError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DgaError::NoSuchCrossing(c) => write!(f, "word has no crossing {c}"),
            DgaError::SameCrossing => f.write_str("the two crossings must differ"),
            DgaError::BadLevel { level, strands } => write!(f, "level {level} out of range for {strands} strands"),
            DgaError::NoSlice { w } => write!(f, "no slice: V(w{w}) has no unit constant coefficient"),
        }
    }
}

impl core::error::Error for DgaError {}

/// A labelled crossing: `Z(j)` is the j-th positive crossing, `W(k)` the k-th negative one (1-based).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Crossing {
    Z(usize),
    W(usize),
}

impl fmt::Display for Crossing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Crossing::Z(j) => write!(f, "z{j}"),
            Crossing::W(k) => write!(f, "w{k}"),
        }
    }
}

/// Letter position of a labelled crossing.
pub fn crossing_position(beta: &BraidWord, c: Crossing) -> Result<usize, DgaError> {
    let (want_pos, idx) = match c {
        Crossing::Z(j) => (true, j),
        Crossing::W(k) => (false, k),
    };
    beta.letters
        .iter()
        .enumerate()
        .filter(|(_, l)| l.is_positive() == want_pos)
        .nth(idx.wrapping_sub(1))
        .map(|(p, _)| p)
        .ok_or(DgaError::NoSuchCrossing(c))
}

fn ordered(beta: &BraidWord, x: Crossing, y: Crossing) -> Result<(usize, usize), DgaError> {
    let a = crossing_position(beta, x)?;
    let b = crossing_position(beta, y)?;
    if a == b {
        return Err(DgaError::SameCrossing);
    }
    Ok((a.min(b), a.max(b)))
}

fn sub(beta: &BraidWord, range: impl Iterator<Item = usize>) -> BraidWord {
    BraidWord { strands: beta.strands, letters: range.map(|p| beta.letters[p]).collect() }
}

/// Letters strictly between the two crossings.
pub fn between_word(beta: &BraidWord, x: Crossing, y: Crossing) -> Result<BraidWord, DgaError> {
    let (a, b) = ordered(beta, x, y)?;
    Ok(sub(beta, a + 1..b))
}

/// Letters right of the rightmost crossing, then cyclically up to the leftmost one.
pub fn complement_word(beta: &BraidWord, x: Crossing, y: Crossing) -> Result<BraidWord, DgaError> {
    let (a, b) = ordered(beta, x, y)?;
    Ok(sub(beta, (b + 1..beta.len()).chain(0..a)))
}

/// Read backwards with σ_i ↦ σ_{n−i}.
pub fn dotted(b: &BraidWord) -> BraidWord {
    b.opposite().flip()
}

pub fn left_word(beta: &BraidWord, w: usize) -> Result<BraidWord, DgaError> {
    let p = crossing_position(beta, Crossing::W(w))?;
    Ok(sub(beta, 0..p))
}

pub fn right_word(beta: &BraidWord, w: usize) -> Result<BraidWord, DgaError> {
    let p = crossing_position(beta, Crossing::W(w))?;
    Ok(sub(beta, p + 1..beta.len()))
}

// ---------------------------------------------------------------------------
// Regions

/// Which path pairs bound an immersed region.
///
/// A region is swept left to right by a lower path P (its jumps are the
/// monomial of a B-entry) and an upper path Q (the mirrored entry of the
/// dotted word). Both live on strand levels; P jumps by staying on level
/// i+1 at a positive σ_i, Q by staying on level i. The state is "normal"
/// while P < Q and "inverted" after a pinch, where both paths cross through
/// the same crossing. Every accepted step keeps P ≠ Q.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RegionRule {
    /// Pinches through negative crossings (normal ↔ inverted).
    pub negative_pinch: bool,
    /// Pinches through positive crossings.
    pub positive_pinch: bool,
    /// Single jumps while inverted.
    pub inverted_jumps: bool,
    /// Both paths jumping at one positive crossing while inverted (weight −z²).
    pub double_jump: bool,
    /// Each jump of Q contributes −z instead of z.
    pub signed_upper_jumps: bool,
}

impl Default for RegionRule {
    fn default() -> Self {
        RegionRule {
            negative_pinch: true,
            positive_pinch: false,
            inverted_jumps: false,
            double_jump: false,
            signed_upper_jumps: true,
        }
    }
}

impl RegionRule {
    /// Successor states of (p, q) across one letter, with their weights
    /// (a sign and the number of factors of the crossing variable).
    fn steps(&self, l: Letter, p: usize, q: usize, out: &mut Vec<(usize, usize, i32, u32)>) {
        out.clear();
        let i = l.index();
        let positive = l.is_positive();
        let inverted = p > q;
        let on = |x: usize| x == i || x == i + 1;
        if on(p) && on(q) {
            let pinch = if positive { self.positive_pinch } else { self.negative_pinch };
            if pinch {
                out.push((q, p, 1, 0));
            }
            if inverted && positive && self.double_jump {
                out.push((p, q, -1, 2));
            }
            return;
        }
        let jumps_ok = positive && (!inverted || self.inverted_jumps);
        let mut ps: Vec<(usize, i32, u32)> = Vec::with_capacity(2);
        if p == i + 1 {
            ps.push((i, 1, 0));
            if jumps_ok {
                ps.push((i + 1, 1, 1));
            }
        } else if p == i {
            ps.push((i + 1, 1, 0));
        } else {
            ps.push((p, 1, 0));
        }
        let qsign = if self.signed_upper_jumps { -1 } else { 1 };
        let mut qs: Vec<(usize, i32, u32)> = Vec::with_capacity(2);
        if q == i {
            qs.push((i + 1, 1, 0));
            if jumps_ok {
                qs.push((i, qsign, 1));
            }
        } else if q == i + 1 {
            qs.push((i, 1, 0));
        } else {
            qs.push((q, 1, 0));
        }
        for &(a, sa, ea) in &ps {
            for &(b, sb, eb) in &qs {
                if a != b {
                    out.push((a, b, sa * sb, ea + eb));
                }
            }
        }
    }
}

/// Region coefficient over explicit letter variables: P runs `p0 → p1`, Q runs `q0 → q1`.
pub fn region_sum(
    letters: &[Letter],
    vars: &[Option<Var>],
    (p0, q0): (usize, usize),
    (p1, q1): (usize, usize),
    rule: &RegionRule,
) -> Poly {
    // dynamic programming over (p, q) states; each state carries a polynomial
    let mut states: BTreeMap<(usize, usize), Poly> = BTreeMap::new();
    if p0 == q0 {
        return Poly::zero();
    }
    states.insert((p0, q0), Poly::one());
    let mut buf = Vec::new();
    for (l, v) in letters.iter().zip(vars) {
        let mut next: BTreeMap<(usize, usize), Poly> = BTreeMap::new();
        let x = v.map_or_else(Poly::zero, Poly::var);
        for ((p, q), w) in &states {
            rule.steps(*l, *p, *q, &mut buf);
            for &(a, b, s, e) in &buf {
                let mut term = w.scale(&BigInt::from(s));
                for _ in 0..e {
                    term = &term * &x;
                }
                if term.is_zero() {
                    continue;
                }
                next.entry((a, b)).or_default().add_assign_ref(&term);
            }
        }
        next.retain(|_, w| !w.is_zero());
        states = next;
    }
    states.remove(&(p1, q1)).unwrap_or_default()
}

/// ℰ(B(η'); i1u, i1l, i2u, i2l) with the crossings of η' labelled z_1, z_2, … left to right:
/// the upper path runs from level `i1u` to `i2u`, the lower from `i1l` to `i2l`.
pub fn region_coefficient(eta: &BraidWord, i1u: usize, i1l: usize, i2u: usize, i2l: usize) -> Result<Poly, DgaError> {
    region_coefficient_with(eta, i1u, i1l, i2u, i2l, &RegionRule::default())
}

pub fn region_coefficient_with(
    eta: &BraidWord,
    i1u: usize,
    i1l: usize,
    i2u: usize,
    i2l: usize,
    rule: &RegionRule,
) -> Result<Poly, DgaError> {
    for level in [i1u, i1l, i2u, i2l] {
        if level == 0 || level > eta.strands {
            return Err(DgaError::BadLevel { level, strands: eta.strands });
        }
    }
    let vars = crossing_vars(eta, 1);
    Ok(region_sum(&eta.letters, &vars, (i1l, i1u), (i2l, i2u), rule))
}

// ---------------------------------------------------------------------------
// Graded-commutative elements

/// Odd generators, ordered `w` before `y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Odd {
    W(usize),
    Y(usize, usize),
}

impl fmt::Display for Odd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Odd::W(k) => write!(f, "w{k}"),
            Odd::Y(l, m) => write!(f, "y{l}{m}"),
        }
    }
}

/// Σ coefficient·(strictly increasing product of odd generators).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Elem {
    terms: BTreeMap<Vec<Odd>, Poly>,
}

impl Elem {
    pub fn zero() -> Elem {
        Elem::default()
    }

    pub fn poly(p: Poly) -> Elem {
        Elem::term(p, Vec::new())
    }

    pub fn odd(g: Odd) -> Elem {
        Elem::term(Poly::one(), alloc::vec![g])
    }

    /// `p` times the product of `odds` in the given order.
    pub fn term(p: Poly, odds: Vec<Odd>) -> Elem {
        let mut e = Elem::zero();
        if let Some((sign, sorted)) = normalize(odds) {
            e.add(sorted, if sign { -p } else { p });
        }
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<Odd>, &Poly)> {
        self.terms.iter()
    }

    /// Coefficient of a (sorted) odd monomial.
    pub fn coefficient(&self, odds: &[Odd]) -> Poly {
        self.terms.get(odds).cloned().unwrap_or_default()
    }

    /// The part without odd generators.
    pub fn even_part(&self) -> Poly {
        self.coefficient(&[])
    }

    fn add(&mut self, odds: Vec<Odd>, p: Poly) {
        if p.is_zero() {
            return;
        }
        let slot = self.terms.entry(odds.clone()).or_default();
        slot.add_assign_ref(&p);
        if slot.is_zero() {
            self.terms.remove(&odds);
        }
    }

    pub fn add_assign(&mut self, other: &Elem) {
        for (o, p) in &other.terms {
            self.add(o.clone(), p.clone());
        }
    }

    pub fn scale(&self, p: &Poly) -> Elem {
        let mut out = Elem::zero();
        for (o, c) in &self.terms {
            out.add(o.clone(), c * p);
        }
        out
    }

    pub fn mul(&self, other: &Elem) -> Elem {
        let mut out = Elem::zero();
        for (a, pa) in &self.terms {
            for (b, pb) in &other.terms {
                let mut odds = a.clone();
                odds.extend_from_slice(b);
                if let Some((sign, sorted)) = normalize(odds) {
                    let c = pa * pb;
                    out.add(sorted, if sign { -c } else { c });
                }
            }
        }
        out
    }

    pub fn map_polys(&self, f: impl Fn(&Poly) -> Poly) -> Elem {
        let mut out = Elem::zero();
        for (o, p) in &self.terms {
            out.add(o.clone(), f(p));
        }
        out
    }
}

/// Sorts odd generators, returning whether the sign flipped; `None` if one repeats.
fn normalize(mut odds: Vec<Odd>) -> Option<(bool, Vec<Odd>)> {
    let mut flips = false;
    // insertion sort keeps track of the permutation parity
    for i in 1..odds.len() {
        let mut j = i;
        while j > 0 && odds[j - 1] > odds[j] {
            odds.swap(j - 1, j);
            flips = !flips;
            j -= 1;
        }
    }
    if odds.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((flips, odds))
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (odds, p) in &self.terms {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            if odds.is_empty() {
                write!(f, "{p}")?;
                continue;
            }
            if p.is_one() {
            } else if p.num_terms() == 1 && p.as_constant().is_some_and(|c| c == -BigInt::one()) {
                f.write_str("-")?;
            } else {
                write!(f, "({p})*")?;
            }
            for (i, o) in odds.iter().enumerate() {
                if i > 0 {
                    f.write_str("*")?;
                }
                write!(f, "{o}")?;
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// The presentation

/// Generator names.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Gen {
    Y(usize, usize),
    Z(usize),
    W(usize),
}

impl Gen {
    pub fn degree(self) -> i32 {
        match self {
            Gen::Y(..) => 1,
            Gen::Z(_) => 0,
            Gen::W(_) => -1,
        }
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gen::Y(l, m) => write!(f, "y{l}{m}"),
            Gen::Z(j) => write!(f, "z{j}"),
            Gen::W(k) => write!(f, "w{k}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DgaPresentation {
    pub word: BraidWord,
    /// ∂y_lm, row-major, `dy[l-1][m-1]`.
    pub dy: Vec<Vec<Elem>>,
    /// ∂z_j, `dz[j-1]`.
    pub dz: Vec<Elem>,
    pub num_w: usize,
    /// Some ∂y has w-terms, so the presentation is not of first order.
    pub sh_present: bool,
}

impl DgaPresentation {
    pub fn strands(&self) -> usize {
        self.word.strands
    }

    pub fn num_z(&self) -> usize {
        self.dz.len()
    }

    pub fn generators(&self) -> Vec<Gen> {
        let n = self.strands();
        let mut g = Vec::new();
        for l in 1..=n {
            for m in 1..=n {
                g.push(Gen::Y(l, m));
            }
        }
        g.extend((1..=self.num_z()).map(Gen::Z));
        g.extend((1..=self.num_w).map(Gen::W));
        g
    }

    pub fn differential_of(&self, g: Gen) -> Elem {
        match g {
            Gen::Y(l, m) => self.dy[l - 1][m - 1].clone(),
            Gen::Z(j) => self.dz[j - 1].clone(),
            Gen::W(_) => Elem::zero(),
        }
    }

    /// ∂ extended by the graded Leibniz rule.
    pub fn d(&self, e: &Elem) -> Elem {
        let mut out = Elem::zero();
        for (odds, p) in e.terms() {
            let rest = Elem::term(Poly::one(), odds.clone());
            for v in p.vars() {
                if v.is_t() {
                    continue;
                }
                let dp = p.derivative(v);
                let dz = &self.dz[v.index as usize - 1];
                out.add_assign(&dz.scale(&dp).mul(&rest));
            }
            for (i, o) in odds.iter().enumerate() {
                let dodd = match *o {
                    Odd::W(_) => continue,
                    Odd::Y(l, m) => &self.dy[l - 1][m - 1],
                };
                let left = Elem::term(if i % 2 == 1 { -p.clone() } else { p.clone() }, odds[..i].to_vec());
                let right = Elem::term(Poly::one(), odds[i + 1..].to_vec());
                out.add_assign(&left.mul(dodd).mul(&right));
            }
        }
        out
    }

    /// Generators whose ∂² does not vanish, with the offending value.
    pub fn d_squared_failures(&self) -> Vec<(Gen, Elem)> {
        self.generators()
            .into_iter()
            .filter_map(|g| {
                let dd = self.d(&self.differential_of(g));
                (!dd.is_zero()).then_some((g, dd))
            })
            .collect()
    }

    /// ∂ lowers degree by one on every term.
    pub fn grading_ok(&self) -> bool {
        let deg = |odds: &[Odd]| -> i32 {
            odds.iter().map(|o| if matches!(o, Odd::W(_)) { -1 } else { 1 }).sum()
        };
        self.generators()
            .into_iter()
            .all(|g| self.differential_of(g).terms().all(|(o, _)| deg(o) == g.degree() - 1))
    }

    /// Filtration check with h(w)=1, h(z)=2, h(y_lm)=3+2(m−l+n), a term
    /// weighing as much as its heaviest generator.
    pub fn filtration_ok(&self) -> bool {
        let n = self.strands() as i64;
        let hy = |l: usize, m: usize| 3 + 2 * (m as i64 - l as i64 + n);
        let h = |g: Gen| match g {
            Gen::W(_) => 1,
            Gen::Z(_) => 2,
            Gen::Y(l, m) => hy(l, m),
        };
        self.generators().into_iter().all(|g| {
            self.differential_of(g).terms().all(|(odds, p)| {
                let mut top = if p.vars().iter().any(|v| !v.is_t()) { 2 } else { 0 };
                for o in odds {
                    top = top.max(match *o {
                        Odd::W(_) => 1,
                        Odd::Y(l, m) => hy(l, m),
                    });
                }
                top <= h(g)
            })
        })
    }

    /// Degree-0 part of the ∂y: the equations B_β + diag(t).
    pub fn equations(&self) -> Vec<Poly> {
        self.dy.iter().flatten().map(|e| e.even_part()).filter(|p| !p.is_zero()).collect()
    }

    /// Replace the ground variables by values.
    pub fn specialize_t(&self, values: &BTreeMap<Var, Poly>) -> DgaPresentation {
        let sub = |p: &Poly| p.substitute(values).expect("t values are polynomials");
        let mut out = self.clone();
        for row in &mut out.dy {
            for e in row.iter_mut() {
                *e = e.map_polys(sub);
            }
        }
        out
    }

    pub fn derivations(&self) -> DerivationSet {
        let fields = (1..=self.num_w)
            .map(|k| {
                let mut f = BTreeMap::new();
                for (j, dz) in self.dz.iter().enumerate() {
                    let c = dz.coefficient(&[Odd::W(k)]);
                    if !c.is_zero() {
                        f.insert(j + 1, c);
                    }
                }
                f
            })
            .collect();
        DerivationSet { fields, num_z: self.num_z() }
    }

    pub fn describe(&self) -> String {
        format!(
            "{} strands, {} z, {} w{}",
            self.strands(),
            self.num_z(),
            self.num_w,
            if self.sh_present { ", raw (Sh terms present)" } else { "" }
        )
    }
}

/// ℰ for the z–w pair at letter positions `a < b` (left crossing σ_{ia}, right σ_{ib}).
fn pair_coefficient(beta: &BraidWord, vars: &[Option<Var>], a: usize, b: usize, rule: &RegionRule) -> Poly {
    let ia = beta.letters[a].index();
    let ib = beta.letters[b].index();
    let between = region_sum(&beta.letters[a + 1..b], &vars[a + 1..b], (ia, ia + 1), (ib, ib + 1), rule);
    let idx: Vec<usize> = (b + 1..beta.len()).chain(0..a).collect();
    let cl: Vec<Letter> = idx.iter().map(|&p| beta.letters[p]).collect();
    let cv: Vec<Option<Var>> = idx.iter().map(|&p| vars[p]).collect();
    let comp = region_sum(&cl, &cv, (ib, ib + 1), (ia, ia + 1), rule);
    between - comp
}

/// Σ_k Sh(y_lm; w_k)·w_k.
pub fn sha_terms(beta: &BraidWord, l: usize, m: usize) -> Elem {
    sha_terms_with(beta, l, m, &RegionRule::default())
}

pub fn sha_terms_with(beta: &BraidWord, l: usize, m: usize, rule: &RegionRule) -> Elem {
    let n = beta.strands;
    let vars = crossing_vars(beta, 1);
    let mut out = Elem::zero();
    let mut k = 0;
    for (pos, letter) in beta.letters.iter().enumerate() {
        if letter.is_positive() {
            continue;
        }
        k += 1;
        let i = letter.index();
        let left = &beta.letters[..pos];
        let lv = &vars[..pos];
        // upper path starts on the smaller level, ending at the w-corner (i, i+1)
        for p in l + 1..=n {
            let c = region_sum(left, lv, (l, p), (i, i + 1), rule);
            out.add_assign(&Elem::term(c, alloc::vec![Odd::Y(p, m), Odd::W(k)]));
        }
        for p in 1..m {
            let c = region_sum(left, lv, (p, m), (i, i + 1), rule);
            out.add_assign(&Elem::term(c, alloc::vec![Odd::Y(l, p), Odd::W(k)]));
        }
    }
    out
}

/// 𝒜(ηΔ_n).
pub fn build_dga(eta: &BraidWord) -> DgaPresentation {
    build_dga_word(&eta.concat(&half_twist(eta.strands)))
}

/// 𝒜(Δ_nηΔ_n), the form in which the Sh-terms vanish.
pub fn build_dga_delta(eta: &BraidWord) -> DgaPresentation {
    let d = half_twist(eta.strands);
    build_dga_word(&d.concat(eta).concat(&d))
}

/// 𝒜(β) for an admissible word given in full.
pub fn build_dga_word(beta: &BraidWord) -> DgaPresentation {
    build_dga_word_with(beta, &RegionRule::default())
}

pub fn build_dga_word_with(beta: &BraidWord, rule: &RegionRule) -> DgaPresentation {
    let n = beta.strands;
    let vars = crossing_vars(beta, 1);
    let b = word_matrix_with(beta, &vars);
    let mut dy = Vec::with_capacity(n);
    let mut sh_present = false;
    for l in 1..=n {
        let mut row = Vec::with_capacity(n);
        for m in 1..=n {
            let mut p = b.get(l, m).clone();
            if l == m {
                p = &p + &Poly::t(l as u32);
            }
            let mut e = Elem::poly(p);
            let sh = sha_terms_with(beta, l, m, rule);
            sh_present |= !sh.is_zero();
            e.add_assign(&sh);
            row.push(e);
        }
        dy.push(row);
    }
    let zpos: Vec<usize> = (0..beta.len()).filter(|&p| beta.letters[p].is_positive()).collect();
    let wpos: Vec<usize> = (0..beta.len()).filter(|&p| !beta.letters[p].is_positive()).collect();
    let dz = zpos
        .iter()
        .map(|&pz| {
            let mut e = Elem::zero();
            for (k, &pw) in wpos.iter().enumerate() {
                let (a, b) = (pz.min(pw), pz.max(pw));
                let mut c = pair_coefficient(beta, &vars, a, b, rule);
                if pz > pw {
                    c = -c;
                }
                e.add_assign(&Elem::term(c, alloc::vec![Odd::W(k + 1)]));
            }
            e
        })
        .collect();
    DgaPresentation { word: beta.clone(), dy, dz, num_w: wpos.len(), sh_present }
}

// ---------------------------------------------------------------------------
// Vector fields and elimination

/// V(w_k) = Σ_j c_jk ∂/∂z_j, one sparse map j ↦ c_jk per k.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivationSet {
    pub fields: Vec<BTreeMap<usize, Poly>>,
    pub num_z: usize,
}

impl DerivationSet {
    pub fn apply(&self, k: usize, p: &Poly) -> Poly {
        apply_field(&self.fields[k], p)
    }

    /// All pairs (k, l) with [V_k, V_l] ≠ 0.
    pub fn non_commuting(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 0..self.fields.len() {
            for b in a + 1..self.fields.len() {
                let ok = (1..=self.num_z).all(|j| {
                    let z = Poly::z(j as u32);
                    self.apply(a, &self.apply(b, &z)) == self.apply(b, &self.apply(a, &z))
                });
                if !ok {
                    out.push((a + 1, b + 1));
                }
            }
        }
        out
    }
}

fn apply_field(f: &BTreeMap<usize, Poly>, p: &Poly) -> Poly {
    let mut out = Poly::zero();
    for (&j, c) in f {
        let d = p.derivative(Var::z(j as u32));
        if !d.is_zero() {
            out.add_assign_ref(&(&d * c));
        }
    }
    out
}

/// One elimination step: `V(w_k)` sliced by `z_j` with V(z_j) = ±1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SliceStep {
    pub w: usize,
    pub z: usize,
    pub unit: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Elimination {
    pub steps: Vec<SliceStep>,
    /// Equations in the surviving z-variables, original labels.
    pub presentation: VarietyPresentation,
}

/// The affine variety of H⁰ of a first-order presentation: repeatedly pick a slice z_j for the
/// lowest remaining w_k, set z_j = 0 and correct the other fields.
pub fn slice_eliminate(dga: &DgaPresentation) -> Result<Elimination, DgaError> {
    let mut fields = dga.derivations().fields;
    let mut equations = dga.equations();
    let mut alive: Vec<usize> = (1..=dga.num_z()).collect();
    let mut steps = Vec::new();
    for k in 0..fields.len() {
        let vk = fields[k].clone();
        let pick = vk.iter().find_map(|(&j, c)| {
            c.as_constant().filter(|u| u.abs().is_one()).map(|u| (j, if u.is_positive() { 1 } else { -1 }))
        });
        let Some((j, unit)) = pick else {
            return Err(DgaError::NoSlice { w: k + 1 });
        };
        let zero = BTreeMap::from([(Var::z(j as u32), Poly::zero())]);
        let at0 = |p: &Poly| p.substitute(&zero).expect("substituting zero");
        for f in fields.iter_mut().skip(k + 1) {
            // W = V − V(z_j)·unit·V_k kills z_j; restrict its coefficients to z_j = 0
            let vj = f.get(&j).cloned().unwrap_or_default();
            let factor = vj.scale(&BigInt::from(unit));
            let mut g = BTreeMap::new();
            for r in alive.iter().copied().filter(|&r| r != j) {
                let mut c = f.get(&r).cloned().unwrap_or_default();
                if let Some(ck) = vk.get(&r) {
                    c = c - &factor * ck;
                }
                let c = at0(&c);
                if !c.is_zero() {
                    g.insert(r, c);
                }
            }
            *f = g;
        }
        equations = equations.iter().map(at0).filter(|p| !p.is_zero()).collect();
        alive.retain(|&r| r != j);
        steps.push(SliceStep { w: k + 1, z: j, unit });
    }
    Ok(Elimination {
        steps,
        presentation: VarietyPresentation {
            vars: alive.into_iter().map(|j| Var::z(j as u32)).collect(),
            equations,
            braid: dga.word.clone(),
            pi: None,
        },
    })
}

/// Renames surviving variables to z_1, z_2, … in order, as for a positive word.
pub fn compact_labels(v: &VarietyPresentation) -> VarietyPresentation {
    let map: BTreeMap<Var, Var> = v.vars.iter().enumerate().map(|(i, &x)| (x, Var::z(i as u32 + 1))).collect();
    VarietyPresentation {
        vars: (1..=v.vars.len()).map(|i| Var::z(i as u32)).collect(),
        equations: v.equations.iter().map(|e| e.rename(&map)).collect(),
        braid: v.braid.clone(),
        pi: v.pi.clone(),
    }
}

/// Every V(w_k) kills every equation identically; returns the failing (k, equation index) pairs.
pub fn annihilation_failures(dga: &DgaPresentation) -> Vec<(usize, usize)> {
    let ds = dga.derivations();
    let eqs = dga.equations();
    let mut out = Vec::new();
    for k in 0..ds.fields.len() {
        for (e, eq) in eqs.iter().enumerate() {
            if !ds.apply(k, eq).is_zero() {
                out.push((k + 1, e + 1));
            }
        }
    }
    out
}
