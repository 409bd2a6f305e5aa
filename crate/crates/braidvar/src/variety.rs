//! Point counts over F_q by exhaustive search, a flag-variety oracle for open
//! Richardson varieties, brick stratifications and the Markov count checks.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use crate::braid::{
    coxeter_projection, demazure_product, half_twist, positive_lift, BraidError, BraidWord, LiftStrategy, Perm,
};
use crate::matrix::{variety_upper_triangular, VarietyPresentation};
use crate::pbraids::juggling_braid_diagram;
use crate::poly::{Poly, Var};
use crate::positroid::{pair_to_affine, PositroidPair};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CountError {
    NotPrime(u64),
    TooLarge { assignments: u128, bound: u128 },
    /// A t-variable with no braid to read its component from.
    UnspecifiedT(Var),
    Braid(BraidError),
}

impl fmt::Display for CountError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CountError::NotPrime(q) => write!(f, "{q} is not prime"),
            CountError::TooLarge { assignments, bound } => {
                write!(f, "{assignments} assignments exceed the bound {bound}")
            }
            CountError::UnspecifiedT(v) => write!(f, "cannot specialize {v}"),
            CountError::Braid(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for CountError {}

impl From<BraidError> for CountError {
    fn from(e: BraidError) -> Self {
        CountError::Braid(e)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CountMethod {
    Brute,
    ProductSplit,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountReport {
    pub label: String,
    pub q: u64,
    pub count: u64,
    pub method: CountMethod,
}

/// How ground variables are treated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TMode {
    /// ±1 with product −1 on each component of the closure.
    Signs,
    /// Extra variables ranging over F_q^*.
    Range,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CountOptions {
    pub max_assignments: u128,
    pub threads: usize,
    pub t_mode: TMode,
}

impl Default for CountOptions {
    fn default() -> Self {
        CountOptions { max_assignments: 100_000_000, threads: 1, t_mode: TMode::Signs }
    }
}

pub fn is_prime(q: u64) -> bool {
    q >= 2 && (2..).take_while(|d| d * d <= q).all(|d| q % d != 0)
}

/// Components of the closure of β as sets of left-end levels.
pub fn closure_components(beta: &BraidWord) -> Vec<Vec<usize>> {
    let p = coxeter_projection(beta);
    let mut seen = vec![false; beta.strands + 1];
    let mut out = Vec::new();
    for s in 1..=beta.strands {
        if seen[s] {
            continue;
        }
        let mut cyc = Vec::new();
        let mut x = s;
        while !seen[x] {
            seen[x] = true;
            cyc.push(x);
            x = p.at(x);
        }
        out.push(cyc);
    }
    out
}

/// t_l = −1 on the smallest level of each component, +1 elsewhere.
pub fn component_t_signs(beta: &BraidWord) -> BTreeMap<Var, Poly> {
    let mut out = BTreeMap::new();
    for cyc in closure_components(beta) {
        let first = *cyc.iter().min().expect("components are nonempty");
        for &l in &cyc {
            out.insert(Var::t(l as u32), Poly::constant(if l == first { -1 } else { 1 }));
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Compiled equations mod q

struct Term {
    coeff: u64,
    factors: Vec<(usize, i32)>,
}

struct Equation {
    terms: Vec<Term>,
    last: usize,
}

fn pow_mod(mut b: u64, mut e: u64, q: u64) -> u64 {
    let mut r = 1 % q;
    b %= q;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % q;
        }
        b = b * b % q;
        e >>= 1;
    }
    r
}

fn big_mod(c: &BigInt, q: u64) -> u64 {
    let m = c % BigInt::from(q);
    let m = if m.is_negative() { m + BigInt::from(q) } else { m };
    m.to_u64().expect("reduced below q")
}

impl Equation {
    fn eval(&self, vals: &[u64], q: u64) -> u64 {
        let mut s = 0u64;
        for t in &self.terms {
            let mut v = t.coeff;
            for &(x, e) in &t.factors {
                let base = vals[x];
                v = if e >= 0 {
                    v * pow_mod(base, e as u64, q) % q
                } else {
                    v * pow_mod(pow_mod(base, q - 2, q), (-e) as u64, q) % q
                };
                if v == 0 {
                    break;
                }
            }
            s = (s + v) % q;
        }
        s
    }
}

struct Component {
    /// (variable, ranges over nonzero values only)
    vars: Vec<(Var, bool)>,
    eqs: Vec<Equation>,
}

impl Component {
    fn size(&self, q: u64) -> u128 {
        self.vars.iter().map(|&(_, nz)| if nz { q as u128 - 1 } else { q as u128 }).product()
    }

    fn count(&self, q: u64, threads: usize) -> u64 {
        let mut by_level: Vec<Vec<usize>> = vec![Vec::new(); self.vars.len()];
        for (i, e) in self.eqs.iter().enumerate() {
            by_level[e.last].push(i);
        }
        let range = |d: usize| if self.vars[d].1 { 1..q } else { 0..q };
        if self.vars.is_empty() {
            return 1;
        }
        let first: Vec<u64> = range(0).collect();
        let work = |slice: &[u64]| -> u64 {
            let mut vals = vec![0u64; self.vars.len()];
            let mut total = 0;
            for &v in slice {
                vals[0] = v;
                if by_level[0].iter().all(|&e| self.eqs[e].eval(&vals, q) == 0) {
                    total += self.dfs(1, &mut vals, &by_level, q);
                }
            }
            total
        };
        run_blocks(&first, threads, &work)
    }

    fn dfs(&self, d: usize, vals: &mut [u64], by_level: &[Vec<usize>], q: u64) -> u64 {
        if d == self.vars.len() {
            return 1;
        }
        let lo = if self.vars[d].1 { 1 } else { 0 };
        let mut total = 0;
        for v in lo..q {
            vals[d] = v;
            if by_level[d].iter().all(|&e| self.eqs[e].eval(vals, q) == 0) {
                total += self.dfs(d + 1, vals, by_level, q);
            }
        }
        total
    }
}

#[cfg(feature = "std")]
fn run_blocks(first: &[u64], threads: usize, work: &(dyn Fn(&[u64]) -> u64 + Sync)) -> u64 {
    let threads = threads.max(1).min(first.len().max(1));
    if threads == 1 {
        return work(first);
    }
    let chunk = first.len().div_ceil(threads);
    std::thread::scope(|s| {
        let handles: Vec<_> = first.chunks(chunk).map(|c| s.spawn(move || work(c))).collect();
        handles.into_iter().map(|h| h.join().expect("count worker panicked")).sum()
    })
}

#[cfg(not(feature = "std"))]
fn run_blocks(first: &[u64], _threads: usize, work: &(dyn Fn(&[u64]) -> u64 + Sync)) -> u64 {
    work(first)
}

/// Specializes ground variables per `mode`; returns the equations and any t's left as variables.
fn prepare(v: &VarietyPresentation, mode: TMode) -> Result<(Vec<Poly>, Vec<Var>), CountError> {
    let ts = v.t_vars();
    if ts.is_empty() {
        return Ok((v.equations.clone(), Vec::new()));
    }
    match mode {
        TMode::Range => Ok((v.equations.clone(), ts)),
        TMode::Signs => {
            let signs = component_t_signs(&v.braid);
            if let Some(&missing) = ts.iter().find(|t| !signs.contains_key(t)) {
                return Err(CountError::UnspecifiedT(missing));
            }
            let eqs = v
                .equations
                .iter()
                .map(|e| e.substitute(&signs).expect("signs are units"))
                .collect();
            Ok((eqs, Vec::new()))
        }
    }
}

pub fn count_points(v: &VarietyPresentation, q: u64) -> Result<CountReport, CountError> {
    count_points_with(v, q, &CountOptions::default())
}

pub fn count_points_with(v: &VarietyPresentation, q: u64, opts: &CountOptions) -> Result<CountReport, CountError> {
    if !is_prime(q) {
        return Err(CountError::NotPrime(q));
    }
    let (eqs, free_ts) = prepare(v, opts.t_mode)?;
    let mut all: Vec<(Var, bool)> = v.vars.iter().map(|&x| (x, false)).collect();
    all.extend(free_ts.iter().map(|&t| (t, true)));
    // union-find over variables, joined by shared equations
    let index: BTreeMap<Var, usize> = all.iter().enumerate().map(|(i, &(x, _))| (x, i)).collect();
    let mut parent: Vec<usize> = (0..all.len()).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let next = p[y];
            p[y] = r;
            y = next;
        }
        r
    }
    for e in &eqs {
        let vs: Vec<usize> = e.vars().iter().filter_map(|x| index.get(x).copied()).collect();
        for w in vs.windows(2) {
            let (a, b) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
            parent[a] = b;
        }
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..all.len() {
        let r = find(&mut parent, i);
        groups.entry(r).or_default().push(i);
    }
    let mut comp_of = vec![(0usize, 0usize); all.len()];
    let mut comps: Vec<Component> = Vec::new();
    for members in groups.values() {
        let c = comps.len();
        for (slot, &i) in members.iter().enumerate() {
            comp_of[i] = (c, slot);
        }
        comps.push(Component { vars: members.iter().map(|&i| all[i]).collect(), eqs: Vec::new() });
    }
    for e in &eqs {
        let mut target: Option<usize> = None;
        let mut terms = Vec::new();
        let mut last = 0;
        for (m, c) in e.terms() {
            let coeff = big_mod(c, q);
            if coeff == 0 {
                continue;
            }
            let mut factors = Vec::new();
            for &(x, ex) in m.factors() {
                let Some(&i) = index.get(&x) else {
                    return Err(CountError::UnspecifiedT(x));
                };
                let (ci, slot) = comp_of[i];
                target = Some(ci);
                last = last.max(slot);
                factors.push((slot, ex));
            }
            terms.push(Term { coeff, factors });
        }
        match target {
            Some(ci) => comps[ci].eqs.push(Equation { terms, last }),
            None => {
                // constant equation
                let c: u64 = terms.iter().map(|t| t.coeff).sum::<u64>() % q;
                if c != 0 {
                    return Ok(CountReport { label: v.describe(), q, count: 0, method: CountMethod::Brute });
                }
            }
        }
    }
    let split = comps.iter().filter(|c| !c.eqs.is_empty()).count() > 1
        || comps.iter().any(|c| c.eqs.is_empty()) && comps.len() > 1;
    let mut count: u64 = 1;
    for c in &comps {
        if c.eqs.is_empty() {
            count *= c.size(q) as u64;
            continue;
        }
        let size = c.size(q);
        if size > opts.max_assignments {
            return Err(CountError::TooLarge { assignments: size, bound: opts.max_assignments });
        }
        count *= c.count(q, opts.threads);
        if count == 0 {
            break;
        }
    }
    Ok(CountReport {
        label: v.describe(),
        q,
        count,
        method: if split { CountMethod::ProductSplit } else { CountMethod::Brute },
    })
}

// ---------------------------------------------------------------------------
// Flags over F_q

/// Row-reduced basis of a subspace of F_q^n.
type Space = Vec<Vec<u64>>;

fn rref(mut rows: Vec<Vec<u64>>, q: u64) -> Space {
    let n = rows.first().map_or(0, |r| r.len());
    let mut out: Vec<Vec<u64>> = Vec::new();
    let mut col = 0;
    while col < n && !rows.is_empty() {
        if let Some(p) = rows.iter().position(|r| r[col] != 0) {
            let mut piv = rows.swap_remove(p);
            let inv = pow_mod(piv[col], q - 2, q);
            for x in piv.iter_mut() {
                *x = *x * inv % q;
            }
            for r in rows.iter_mut().chain(out.iter_mut()) {
                let f = r[col];
                if f != 0 {
                    for (x, y) in r.iter_mut().zip(&piv) {
                        *x = (*x + q * q - f * y) % q;
                    }
                }
            }
            out.push(piv);
        }
        col += 1;
    }
    out.retain(|r| r.iter().any(|&x| x != 0));
    out.sort();
    out
}

fn dim_sum(a: &Space, b: &Space, q: u64) -> usize {
    let mut rows = a.clone();
    rows.extend(b.iter().cloned());
    if rows.is_empty() {
        return 0;
    }
    rref(rows, q).len()
}

fn dim_cap(a: &Space, b: &Space, q: u64) -> usize {
    a.len() + b.len() - dim_sum(a, b, q)
}

fn all_vectors(n: usize, q: u64) -> Vec<Vec<u64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..q).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}

/// All complete flags F_1 ⊂ … ⊂ F_{n−1} in F_q^n (F_0 and F_n omitted).
pub fn all_flags(n: usize, q: u64) -> Vec<Vec<Space>> {
    let vecs = all_vectors(n, q);
    let mut flags: Vec<Vec<Space>> = vec![Vec::new()];
    for p in 1..n {
        let mut next = Vec::new();
        for f in &flags {
            let prev: Space = if p == 1 { Vec::new() } else { f[p - 2].clone() };
            let mut seen = BTreeSet::new();
            for v in &vecs {
                let mut rows = prev.clone();
                rows.push(v.clone());
                let s = rref(rows, q);
                if s.len() == p && seen.insert(s.clone()) {
                    let mut g = f.clone();
                    g.push(s);
                    next.push(g);
                }
            }
        }
        flags = next;
    }
    flags
}

fn coordinate_space(n: usize, idx: impl Iterator<Item = usize>) -> Space {
    let rows: Vec<Vec<u64>> = idx
        .map(|i| {
            let mut r = vec![0; n];
            r[i - 1] = 1;
            r
        })
        .collect();
    let mut rows = rows;
    rows.sort();
    rows
}

fn flag_space(f: &[Space], p: usize, n: usize) -> Space {
    match p {
        0 => Vec::new(),
        p if p == n => coordinate_space(n, 1..=n),
        p => f[p - 1].clone(),
    }
}

/// Schubert cell condition dim(F^st_p ∩ F_r) = #{i ≤ r : w(i) ≤ p}, so that
/// the coordinate flag (e_{w(1)}, e_{w(2)}, …) lies in the cell of w.
pub fn in_schubert_cell(f: &[Space], w: &Perm, q: u64) -> bool {
    let n = w.n();
    (1..=n).all(|p| {
        let st = coordinate_space(n, 1..=p);
        (1..=n).all(|r| {
            let want = (1..=r).filter(|&i| w.at(i) <= p).count();
            dim_cap(&st, &flag_space(f, r, n), q) == want
        })
    })
}

/// Opposite cell condition dim(F_p ∩ F^ant_r) = #{i ≤ p : w0·u(i) ≤ r}.
pub fn in_opposite_cell(f: &[Space], u: &Perm, q: u64) -> bool {
    let n = u.n();
    let w0u = Perm::longest(n).compose(u);
    (1..=n).all(|p| {
        (1..=n).all(|r| {
            let ant = coordinate_space(n, (n + 1 - r..=n).rev());
            let want = (1..=p).filter(|&i| w0u.at(i) <= r).count();
            dim_cap(&flag_space(f, p, n), &ant, q) == want
        })
    })
}

/// Flags in the open Richardson variety X°_w ∩ X°^u.
pub fn richardson_oracle(u: &Perm, w: &Perm, q: u64) -> u64 {
    all_flags(w.n(), q)
        .iter()
        .filter(|f| in_schubert_cell(f, w, q) && in_opposite_cell(f, u, q))
        .count() as u64
}

/// X(β(w)β(u^{-1}w_0); w_0) with lexicographically least reduced words.
pub fn richardson_braid_variety(u: &Perm, w: &Perm) -> Result<VarietyPresentation, BraidError> {
    let n = w.n();
    let w0 = Perm::longest(n);
    let bw = positive_lift(w, LiftStrategy::LexLeast)?;
    let bu = positive_lift(&u.inverse().compose(&w0), LiftStrategy::LexLeast)?;
    Ok(variety_upper_triangular(&bw.concat(&bu), &w0))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PositroidCountReport {
    pub pair: PositroidPair,
    pub q: u64,
    pub richardson: u64,
    pub juggling: u64,
    pub torus_rank: usize,
    pub holds: bool,
}

/// |X(β(w)β(u^{-1}w_0); w_0)| against |X(J_k(f); w_{0,k})|·(q−1)^{n−s−k}.
pub fn positroid_count_check(p: &PositroidPair, q: u64, opts: &CountOptions) -> Result<PositroidCountReport, CountError> {
    let lhs = count_points_with(&richardson_braid_variety(&p.u, &p.w)?, q, opts)?.count;
    let f = pair_to_affine(p);
    let j = juggling_braid_diagram(&f);
    let k = j.strands;
    let rhs = count_points_with(&variety_upper_triangular(&j, &Perm::longest(k)), q, opts)?.count;
    let torus_rank = p.n - f.fixed_points() - p.k;
    let juggling = rhs * (q - 1).pow(torus_rank as u32);
    Ok(PositroidCountReport { pair: p.clone(), q, richardson: lhs, juggling, torus_rank, holds: lhs == juggling })
}

// ---------------------------------------------------------------------------
// Brick manifolds

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stratum {
    /// Kept letter positions (0-based).
    pub subword: Vec<usize>,
    pub dim: usize,
    pub presentation: VarietyPresentation,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BrickStratification {
    pub word: BraidWord,
    pub demazure: Perm,
    pub strata: Vec<Stratum>,
}

/// Subwords with the Demazure product of β, each with X(opposite(β_I); δ(β)).
pub fn brick_stratify(beta: &BraidWord) -> Result<BrickStratification, BraidError> {
    let delta = demazure_product(beta)?;
    let len = beta.len();
    let mut strata = Vec::new();
    for mask in (0u64..1 << len).rev() {
        let kept: Vec<usize> = (0..len).filter(|&i| mask >> i & 1 == 1).collect();
        if kept.len() < delta.length() {
            continue;
        }
        let sub = BraidWord { strands: beta.strands, letters: kept.iter().map(|&i| beta.letters[i]).collect() };
        if demazure_product(&sub)? != delta {
            continue;
        }
        let presentation = variety_upper_triangular(&sub.opposite(), &delta);
        strata.push(Stratum { dim: kept.len() - delta.length(), subword: kept, presentation });
    }
    strata.sort_by(|a, b| b.dim.cmp(&a.dim).then(a.subword.cmp(&b.subword)));
    Ok(BrickStratification { word: beta.clone(), demazure: delta, strata })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BrickCount {
    pub per_stratum: Vec<(Vec<usize>, usize, u64)>,
    pub total: u64,
}

pub fn brick_count(beta: &BraidWord, q: u64, opts: &CountOptions) -> Result<BrickCount, CountError> {
    let s = brick_stratify(beta)?;
    let mut per_stratum = Vec::new();
    let mut total = 0;
    for st in &s.strata {
        let c = count_points_with(&st.presentation, q, opts)?.count;
        total += c;
        per_stratum.push((st.subword.clone(), st.dim, c));
    }
    Ok(BrickCount { per_stratum, total })
}

/// β·μ with μ the lex-least reduced word of δ(β)^{-1}w_0.
pub fn enlarge_to_w0(beta: &BraidWord) -> Result<BraidWord, BraidError> {
    let delta = demazure_product(beta)?;
    let rest = delta.inverse().compose(&Perm::longest(beta.strands));
    let mu = positive_lift(&rest, LiftStrategy::LexLeast)?;
    Ok(beta.concat(&BraidWord { strands: beta.strands, letters: mu.letters }))
}

// ---------------------------------------------------------------------------
// Markov moves at F_q

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarkovCountReport {
    pub q: u64,
    pub base: u64,
    pub stabilized: u64,
    pub disjoint: u64,
    pub stabilization_holds: bool,
    pub disjoint_holds: bool,
}

/// X(ηΔ_n; w_0) for the Markov checks.
pub fn delta_variety(eta: &BraidWord) -> VarietyPresentation {
    let n = eta.strands;
    variety_upper_triangular(&eta.concat(&half_twist(n)), &Perm::longest(n))
}

/// X(η_{n+1}σ_nΔ_{n+1}) against X(η_nΔ_n)·(q−1), and X(η_{n+1}Δ_{n+1}) against X(η_nΔ_n).
pub fn markov_count_check(eta: &BraidWord, q: u64, opts: &CountOptions) -> Result<MarkovCountReport, CountError> {
    let n = eta.strands;
    let base = count_points_with(&delta_variety(eta), q, opts)?.count;
    let wide = eta.widen(n + 1);
    let stab = wide.concat(&BraidWord::positive(n + 1, &[n]));
    let stabilized = count_points_with(&delta_variety(&stab), q, opts)?.count;
    let disjoint = count_points_with(&delta_variety(&wide), q, opts)?.count;
    Ok(MarkovCountReport {
        q,
        base,
        stabilized,
        disjoint,
        stabilization_holds: stabilized == base * (q - 1),
        disjoint_holds: disjoint == base,
    })
}
