//! Sparse multivariate polynomials over ℤ in `z`-variables and invertible
//! `t`-variables (Laurent in `t`).

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Variable family. `T` sorts before `Z`, so `t1^-1*z3` renders in that order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    T,
    Z,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var {
    pub family: Family,
    pub index: u32,
}

impl Var {
    pub const fn z(index: u32) -> Var {
        Var { family: Family::Z, index }
    }
    pub const fn t(index: u32) -> Var {
        Var { family: Family::T, index }
    }
    pub fn is_t(&self) -> bool {
        self.family == Family::T
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            Family::Z => write!(f, "z{}", self.index),
            Family::T => write!(f, "t{}", self.index),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PolyError {
    Parse(String),
    NegativeZExponent(Var),
    NonInvertibleT(Var),
    Unassigned(Var),
    ZeroT(Var),
}

impl fmt::Display for PolyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolyError::Parse(s) => write!(f, "parse error: {s}"),
            PolyError::NegativeZExponent(v) => write!(f, "negative exponent on {v}"),
            PolyError::NonInvertibleT(v) => write!(f, "{v} bound to a non-invertible polynomial"),
            PolyError::Unassigned(v) => write!(f, "no value for {v}"),
            PolyError::ZeroT(v) => write!(f, "{v} must be nonzero"),
        }
    }
}

impl core::error::Error for PolyError {}

/// A monomial: sorted `(variable, exponent)` pairs with nonzero exponents.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(Vec<(Var, i32)>);

impl Monomial {
    pub fn one() -> Monomial {
        Monomial(Vec::new())
    }

    pub fn var(v: Var) -> Monomial {
        Monomial(alloc::vec![(v, 1)])
    }

    /// Builds a monomial from arbitrary factors, merging repeats.
    pub fn from_factors(factors: &[(Var, i32)]) -> Result<Monomial, PolyError> {
        let mut m = BTreeMap::new();
        for &(v, e) in factors {
            *m.entry(v).or_insert(0) += e;
        }
        let out: Vec<(Var, i32)> = m.into_iter().filter(|&(_, e)| e != 0).collect();
        for &(v, e) in &out {
            if v.family == Family::Z && e < 0 {
                return Err(PolyError::NegativeZExponent(v));
            }
        }
        Ok(Monomial(out))
    }

    pub fn factors(&self) -> &[(Var, i32)] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponent(&self, v: Var) -> i32 {
        self.0.iter().find(|(w, _)| *w == v).map_or(0, |&(_, e)| e)
    }

    pub fn degree(&self) -> i32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                core::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                core::cmp::Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                core::cmp::Ordering::Equal => {
                    let e = a[i].1 + b[j].1;
                    if e != 0 {
                        out.push((a[i].0, e));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (i, (v, e)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Sparse polynomial; zero coefficients are never stored, so derived
/// equality is mathematical equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Poly {
    terms: BTreeMap<Monomial, BigInt>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly::default()
    }

    pub fn one() -> Poly {
        Poly::constant(1)
    }

    pub fn constant(c: i64) -> Poly {
        Poly::from_big(BigInt::from(c))
    }

    pub fn from_big(c: BigInt) -> Poly {
        let mut p = Poly::zero();
        if !c.is_zero() {
            p.terms.insert(Monomial::one(), c);
        }
        p
    }

    pub fn var(v: Var) -> Poly {
        Poly::term(1, Monomial::var(v))
    }

    pub fn z(i: u32) -> Poly {
        Poly::var(Var::z(i))
    }

    pub fn t(i: u32) -> Poly {
        Poly::var(Var::t(i))
    }

    pub fn term(c: i64, m: Monomial) -> Poly {
        let mut p = Poly::zero();
        if c != 0 {
            p.terms.insert(m, BigInt::from(c));
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self.terms.iter().next().is_some_and(|(m, c)| m.is_one() && c.is_one())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    /// The constant term, if the polynomial is constant.
    pub fn as_constant(&self) -> Option<BigInt> {
        match self.terms.len() {
            0 => Some(BigInt::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn coefficient(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// All variables occurring in some term.
    pub fn vars(&self) -> Vec<Var> {
        let mut vs: Vec<Var> = self
            .terms
            .keys()
            .flat_map(|m| m.0.iter().map(|&(v, _)| v))
            .collect();
        vs.sort();
        vs.dedup();
        vs
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use alloc::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_assign_ref(&mut self, other: &Poly) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c.clone());
        }
    }

    pub fn sub_assign_ref(&mut self, other: &Poly) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), -c.clone());
        }
    }

    pub fn scale(&self, c: &BigInt) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, d)| (m.clone(), d * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(n, c)| (n.mul(m), c.clone())).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Partial derivative in a variable.
    pub fn derivative(&self, v: Var) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(v);
            if e == 0 {
                continue;
            }
            let dm = m.mul(&Monomial(alloc::vec![(v, -1)]));
            out.add_term(dm, c * BigInt::from(e));
        }
        out
    }

    /// Units of ℤ[t^±][z] are `±` monomials in the `t`-variables alone.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .all(|(m, c)| c.abs().is_one() && m.0.iter().all(|(v, _)| v.is_t()))
    }

    /// Simultaneous substitution. Unbound variables are kept.
    pub fn substitute(&self, bindings: &BTreeMap<Var, Poly>) -> Result<Poly, PolyError> {
        for (v, p) in bindings {
            if v.is_t() && !p.is_unit() {
                return Err(PolyError::NonInvertibleT(*v));
            }
        }
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mut acc = Poly::from_big(c.clone());
            let mut rest = Vec::new();
            for &(v, e) in &m.0 {
                match bindings.get(&v) {
                    None => rest.push((v, e)),
                    Some(p) if e >= 0 => acc = &acc * &p.pow(e as u32),
                    Some(p) => acc = &acc * &p.unit_inverse().pow((-e) as u32),
                }
            }
            out.add_assign_ref(&acc.mul_monomial(&Monomial(rest)));
        }
        Ok(out)
    }

    fn unit_inverse(&self) -> Poly {
        let (m, c) = self.terms.iter().next().expect("unit");
        let inv = Monomial(m.0.iter().map(|&(v, e)| (v, -e)).collect());
        Poly::from_big(c.clone()).mul_monomial(&inv)
    }

    /// Renames variables according to `map` (others untouched).
    pub fn rename(&self, map: &BTreeMap<Var, Var>) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let f: Vec<(Var, i32)> = m.0.iter().map(|&(v, e)| (*map.get(&v).unwrap_or(&v), e)).collect();
            out.add_term(Monomial::from_factors(&f).expect("renaming keeps signs"), c.clone());
        }
        out
    }

    /// Evaluates in 𝔽_q. `t`-variables must be nonzero.
    pub fn eval_mod_p(&self, assignment: &BTreeMap<Var, u64>, q: u64) -> Result<u64, PolyError> {
        let mut acc: u64 = 0;
        for (m, c) in &self.terms {
            let mut val = big_mod(c, q);
            for &(v, e) in &m.0 {
                let x = *assignment.get(&v).ok_or(PolyError::Unassigned(v))? % q;
                if v.is_t() && x == 0 {
                    return Err(PolyError::ZeroT(v));
                }
                let base = if e < 0 { inv_mod(x, q) } else { x };
                val = mul_mod(val, pow_mod(base, e.unsigned_abs() as u64, q), q);
            }
            acc = (acc + val) % q;
        }
        Ok(acc)
    }

    pub fn parse(s: &str) -> Result<Poly, PolyError> {
        parse_poly(s)
    }
}

pub(crate) fn big_mod(c: &BigInt, q: u64) -> u64 {
    let r = c % BigInt::from(q);
    let r = if r.is_negative() { r + BigInt::from(q) } else { r };
    r.to_u64().unwrap()
}

pub(crate) fn mul_mod(a: u64, b: u64, q: u64) -> u64 {
    ((a as u128 * b as u128) % q as u128) as u64
}

pub(crate) fn pow_mod(mut b: u64, mut e: u64, q: u64) -> u64 {
    let mut r = 1 % q;
    b %= q;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, q);
        }
        b = mul_mod(b, b, q);
        e >>= 1;
    }
    r
}

/// Inverse modulo a prime via Fermat.
pub(crate) fn inv_mod(a: u64, q: u64) -> u64 {
    pow_mod(a, q - 2, q)
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            if m.is_one() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{a}*{m}")?;
            }
        }
        Ok(())
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out.add_assign_ref(rhs);
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out.sub_assign_ref(rhs);
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            for (n, d) in &rhs.terms {
                out.add_term(m.mul(n), c * d);
            }
        }
        out
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        &self + &rhs
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        &self - &rhs
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl core::str::FromStr for Poly {
    type Err = PolyError;
    fn from_str(s: &str) -> Result<Poly, PolyError> {
        parse_poly(s)
    }
}

// grammar: poly := ["-"] term (("+"|"-") term)* ; term := factor ("*" factor)* ;
// factor := integer | ("z"|"t") index ["^" ["-"] integer]
fn parse_poly(s: &str) -> Result<Poly, PolyError> {
    let err = |m: &str| PolyError::Parse(m.to_string());
    let toks: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
    if toks.is_empty() {
        return Err(err("empty input"));
    }
    let mut pos = 0;
    let mut out = Poly::zero();
    let read_int = |pos: &mut usize| -> Option<BigInt> {
        let start = *pos;
        while *pos < toks.len() && toks[*pos].is_ascii_digit() {
            *pos += 1;
        }
        if start == *pos {
            return None;
        }
        let digits: String = toks[start..*pos].iter().collect();
        digits.parse().ok()
    };
    loop {
        let mut sign = BigInt::one();
        while pos < toks.len() && (toks[pos] == '+' || toks[pos] == '-') {
            if toks[pos] == '-' {
                sign = -sign;
            }
            pos += 1;
        }
        let mut coef = sign;
        let mut factors: Vec<(Var, i32)> = Vec::new();
        loop {
            match toks.get(pos) {
                Some(c) if c.is_ascii_digit() => coef *= read_int(&mut pos).unwrap(),
                Some(&c) if c == 'z' || c == 't' => {
                    pos += 1;
                    let idx = read_int(&mut pos)
                        .and_then(|i| i.to_u32())
                        .ok_or_else(|| err("missing variable index"))?;
                    let v = if c == 'z' { Var::z(idx) } else { Var::t(idx) };
                    let mut e = 1i32;
                    if toks.get(pos) == Some(&'^') {
                        pos += 1;
                        let neg = toks.get(pos) == Some(&'-');
                        if neg {
                            pos += 1;
                        }
                        let n = read_int(&mut pos)
                            .and_then(|i| i.to_i32())
                            .ok_or_else(|| err("bad exponent"))?;
                        e = if neg { -n } else { n };
                    }
                    factors.push((v, e));
                }
                Some(c) => return Err(PolyError::Parse(alloc::format!("unexpected '{c}'"))),
                None => return Err(err("unexpected end of input")),
            }
            if toks.get(pos) == Some(&'*') {
                pos += 1;
            } else {
                break;
            }
        }
        out.add_term(Monomial::from_factors(&factors)?, coef);
        match toks.get(pos) {
            None => break,
            Some('+') | Some('-') => continue,
            Some(c) => return Err(PolyError::Parse(alloc::format!("unexpected '{c}'"))),
        }
    }
    Ok(out)
}
