//! Braid matrices B_i(z), word products, paths, and variety presentations.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::braid::{half_twist, BraidWord, Perm};
use crate::poly::{Poly, Var};

/// Square matrix of polynomials, 1-based accessors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    n: usize,
    entries: Vec<Poly>,
}

impl Matrix {
    pub fn identity(n: usize) -> Matrix {
        let mut m = Matrix { n, entries: alloc::vec![Poly::zero(); n * n] };
        for i in 1..=n {
            m.set(i, i, Poly::one());
        }
        m
    }

    /// Permutation matrix with (π)_{π(j), j} = 1.
    pub fn permutation(p: &Perm) -> Matrix {
        let n = p.n();
        let mut m = Matrix { n, entries: alloc::vec![Poly::zero(); n * n] };
        for j in 1..=n {
            m.set(p.at(j), j, Poly::one());
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly {
        &self.entries[(i - 1) * self.n + (j - 1)]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Poly) {
        self.entries[(i - 1) * self.n + (j - 1)] = p;
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut out = Matrix { n, entries: alloc::vec![Poly::zero(); n * n] };
        for i in 1..=n {
            for j in 1..=n {
                let mut acc = Poly::zero();
                for m in 1..=n {
                    let (a, b) = (self.get(i, m), other.get(m, j));
                    if !a.is_zero() && !b.is_zero() {
                        acc.add_assign_ref(&(a * b));
                    }
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    /// Right multiplication by B_i(x): only columns i, i+1 change.
    pub fn mul_generator(&self, i: usize, x: &Poly) -> Matrix {
        let mut out = self.clone();
        for r in 1..=self.n {
            let a = self.get(r, i);
            let b = self.get(r, i + 1);
            out.set(r, i, b.clone());
            out.set(r, i + 1, a + &(b * x));
        }
        out
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 1..=self.n {
            f.write_str("[")?;
            for j in 1..=self.n {
                if j > 1 {
                    f.write_str(", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            f.write_str("]\n")?;
        }
        Ok(())
    }
}

/// B_i(x): identity outside rows/cols i, i+1, block [[0,1],[1,x]].
pub fn generator_matrix(i: usize, x: Poly, n: usize) -> Matrix {
    assert!(i >= 1 && i < n, "generator index out of range");
    let mut m = Matrix::identity(n);
    m.set(i, i, Poly::zero());
    m.set(i, i + 1, Poly::one());
    m.set(i + 1, i, Poly::one());
    m.set(i + 1, i + 1, x);
    m
}

/// Variable attached to each letter: z_j on the j-th positive crossing, `None` on negative ones.
pub fn crossing_vars(b: &BraidWord, first: u32) -> Vec<Option<Var>> {
    let mut j = first;
    b.letters
        .iter()
        .map(|l| {
            l.is_positive().then(|| {
                let v = Var::z(j);
                j += 1;
                v
            })
        })
        .collect()
}

/// B_β with z_1, z_2, … on the positive crossings and 0 on negative ones.
pub fn word_matrix(b: &BraidWord) -> Matrix {
    word_matrix_with(b, &crossing_vars(b, 1))
}

/// B_β with an explicit variable per letter (`None` contributes B_i(0)).
pub fn word_matrix_with(b: &BraidWord, vars: &[Option<Var>]) -> Matrix {
    let mut m = Matrix::identity(b.strands);
    for (l, v) in b.letters.iter().zip(vars) {
        let x = v.map_or_else(Poly::zero, Poly::var);
        m = m.mul_generator(l.index(), &x);
    }
    m
}

/// B_β with arbitrary polynomial entries per letter.
pub fn word_matrix_polys(b: &BraidWord, xs: &[Poly]) -> Matrix {
    let mut m = Matrix::identity(b.strands);
    for (l, x) in b.letters.iter().zip(xs) {
        m = m.mul_generator(l.index(), x);
    }
    m
}

/// A path through the wiring diagram: it jumps (stays on level i+1) exactly at `jumps`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Path {
    pub start: usize,
    pub end: usize,
    /// Letter positions (0-based) where the path jumps.
    pub jumps: Vec<usize>,
    /// Level before each letter and after the last one (`levels.len() == len + 1`).
    pub levels: Vec<usize>,
}

/// Enumerates all paths from strand `i` to strand `j`; their monomials sum to B_β[i,j].
pub fn paths_of_entry(b: &BraidWord, i: usize, j: usize) -> Vec<(Path, Poly)> {
    let vars = crossing_vars(b, 1);
    let mut out = Vec::new();
    let mut levels = alloc::vec![i];
    let mut jumps = Vec::new();
    walk(b, &vars, 0, i, j, &mut levels, &mut jumps, &mut out);
    out
}

#[allow(clippy::too_many_arguments)]
fn walk(
    b: &BraidWord,
    vars: &[Option<Var>],
    pos: usize,
    cur: usize,
    target: usize,
    levels: &mut Vec<usize>,
    jumps: &mut Vec<usize>,
    out: &mut Vec<(Path, Poly)>,
) {
    if pos == b.len() {
        if cur == target {
            let mut mono = Poly::one();
            for &p in jumps.iter() {
                mono = &mono * &Poly::var(vars[p].expect("jumps only at positive crossings"));
            }
            out.push((
                Path { start: levels[0], end: cur, jumps: jumps.clone(), levels: levels.clone() },
                mono,
            ));
        }
        return;
    }
    let l = b.letters[pos];
    let i = l.index();
    let mut step = |next: usize, jump: bool, levels: &mut Vec<usize>, jumps: &mut Vec<usize>| {
        levels.push(next);
        if jump {
            jumps.push(pos);
        }
        walk(b, vars, pos + 1, next, target, levels, jumps, out);
        if jump {
            jumps.pop();
        }
        levels.pop();
    };
    if cur == i {
        step(i + 1, false, levels, jumps);
    } else if cur == i + 1 {
        step(i, false, levels, jumps);
        if l.is_positive() {
            step(i + 1, true, levels, jumps);
        }
    } else {
        step(cur, false, levels, jumps);
    }
}

/// Symbolic presentation: equations in ℤ[t^±][z] over declared ambient variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarietyPresentation {
    pub vars: Vec<Var>,
    pub equations: Vec<Poly>,
    pub braid: BraidWord,
    pub pi: Option<Perm>,
}

impl VarietyPresentation {
    /// Every variable used is ambient or a t-variable.
    pub fn check_vars(&self) -> Result<(), Var> {
        for e in &self.equations {
            for v in e.vars() {
                if !v.is_t() && !self.vars.contains(&v) {
                    return Err(v);
                }
            }
        }
        Ok(())
    }

    /// t-variables occurring in the equations.
    pub fn t_vars(&self) -> Vec<Var> {
        let mut ts: Vec<Var> = self.equations.iter().flat_map(|e| e.vars()).filter(|v| v.is_t()).collect();
        ts.sort();
        ts.dedup();
        ts
    }

    pub fn describe(&self) -> String {
        alloc::format!("{} vars, {} equations", self.vars.len(), self.equations.len())
    }
}

/// X(β;π): strictly lower-triangular entries of B_β·π must vanish.
pub fn variety_upper_triangular(b: &BraidWord, pi: &Perm) -> VarietyPresentation {
    let vars = crossing_vars(b, 1);
    let m = word_matrix_with(b, &vars);
    let n = b.strands;
    let mut equations = Vec::new();
    for i in 1..=n {
        for j in 1..i {
            let e = m.get(i, pi.at(j));
            if !e.is_zero() {
                equations.push(e.clone());
            }
        }
    }
    VarietyPresentation {
        vars: vars.into_iter().flatten().collect(),
        equations,
        braid: b.clone(),
        pi: Some(pi.clone()),
    }
}

/// X(η): β = η·Δ_n, equations B_β[l,m] + δ_{lm} t_l.
pub fn variety_braid_pair(eta: &BraidWord) -> VarietyPresentation {
    let beta = eta.concat(&half_twist(eta.strands));
    let vars = crossing_vars(&beta, 1);
    let m = word_matrix_with(&beta, &vars);
    VarietyPresentation {
        vars: vars.into_iter().flatten().collect(),
        equations: braid_pair_equations(&m),
        braid: beta,
        pi: None,
    }
}

/// Entries of B + diag(t), dropping identically-zero ones, row-major.
pub fn braid_pair_equations(m: &Matrix) -> Vec<Poly> {
    let mut out = Vec::new();
    for l in 1..=m.n() {
        for c in 1..=m.n() {
            let mut e = m.get(l, c).clone();
            if l == c {
                e = &e + &Poly::t(l as u32);
            }
            if !e.is_zero() {
                out.push(e);
            }
        }
    }
    out
}
