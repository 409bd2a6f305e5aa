//! The four positroid data types as CLI inputs and outputs.

use braidvar::braid::Perm;
use braidvar::positroid::*;
use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Kind {
    Pair,
    Affine,
    Rank,
    Le,
}

#[derive(Clone, Debug)]
pub enum Datum {
    Pair(PositroidPair),
    Affine(AffinePerm),
    Rank(RankMatrix),
    Le(LeDiagram),
}

fn viol(e: impl std::fmt::Display) -> String {
    format!("violation: {e}")
}

fn ints(v: &Value, key: &str) -> Result<Vec<i64>, String> {
    v.get(key)
        .and_then(Value::as_array)
        .ok_or_else(|| format!("missing list {key:?}"))?
        .iter()
        .map(|x| x.as_i64().ok_or_else(|| format!("non-integer in {key:?}")))
        .collect()
}

fn uint(v: &Value, key: &str) -> Result<usize, String> {
    v.get(key).and_then(Value::as_u64).map(|x| x as usize).ok_or_else(|| format!("missing integer {key:?}"))
}

fn perm(list: Vec<i64>) -> Result<Perm, String> {
    let imgs = list.into_iter().map(|x| usize::try_from(x).map_err(|_| format!("negative entry {x}"))).collect::<Result<_, _>>()?;
    Perm::from_images(imgs).map_err(viol)
}

/// "k=3 u=[…] w=[…]"
fn parse_pair_text(t: &str) -> Result<PositroidPair, String> {
    let (ku, w) = t.split_once("w=").ok_or("pair needs w=[…]")?;
    let (k, u) = ku.split_once("u=").ok_or("pair needs u=[…]")?;
    let k: usize = k.trim().strip_prefix("k=").and_then(|s| s.trim().parse().ok()).ok_or("pair needs k=<int>")?;
    let u = Perm::parse(u.trim()).map_err(viol)?;
    let w = Perm::parse(w.trim()).map_err(viol)?;
    PositroidPair::new(k, u, w).map_err(viol)
}

/// Rows of the window, one list per line (or separated by ';').
fn parse_rank_text(t: &str) -> Result<RankMatrix, String> {
    let rows = t
        .split(['\n', ';'])
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .map(|l| braidvar::braid::parse_list(l).map_err(viol))
        .collect::<Result<Vec<_>, _>>()?;
    rank_from_rows(rows)
}

fn rank_from_rows(rows: Vec<Vec<i64>>) -> Result<RankMatrix, String> {
    let n = rows.len();
    let k = rows.first().and_then(|r| r.last()).copied().ok_or("empty rank matrix")?;
    if rows.iter().any(|r| r.len() != n) {
        return Err(viol(format!("every window row needs {n} entries")));
    }
    let r = RankMatrix::from_window(n, k as usize, rows);
    r.validate().map_err(viol)?;
    Ok(r)
}

/// "n=<int>" followed by the diagram, rows split by newlines or '/'.
fn parse_le_text(t: &str, n: Option<usize>) -> Result<LeDiagram, String> {
    let t = t.trim_start();
    let (n, body) = match t.strip_prefix("n=") {
        Some(rest) => {
            let end = rest.find(|c: char| !c.is_ascii_digit()).unwrap_or(rest.len());
            let n: usize = rest[..end].parse().map_err(|_| "bad n= header")?;
            (n, rest[end..].trim_start_matches([' ', ':']).trim_start_matches('\n'))
        }
        None => (n.ok_or("a Le diagram needs n (header n=<int> or --n)")?, t),
    };
    let body = body.trim_end_matches('\n').replace('/', "\n");
    LeDiagram::from_ascii(&body, n).map_err(viol)
}

impl Datum {
    pub fn parse(kind: Kind, text: &str, n: Option<usize>) -> Result<Datum, String> {
        let t = text.trim();
        if t.starts_with('{') {
            let v: Value = serde_json::from_str(t).map_err(|e| format!("bad JSON: {e}"))?;
            return Datum::from_json(kind, &v);
        }
        Ok(match kind {
            Kind::Pair => Datum::Pair(parse_pair_text(t)?),
            Kind::Affine => Datum::Affine(AffinePerm::parse(t).map_err(viol)?.1),
            Kind::Rank => Datum::Rank(parse_rank_text(t)?),
            Kind::Le => Datum::Le(parse_le_text(text, n)?),
        })
    }

    pub fn from_json(kind: Kind, v: &Value) -> Result<Datum, String> {
        Ok(match kind {
            Kind::Pair => {
                let p = PositroidPair::new(uint(v, "k")?, perm(ints(v, "u")?)?, perm(ints(v, "w")?)?);
                Datum::Pair(p.map_err(viol)?)
            }
            Kind::Affine => {
                let f = AffinePerm::new(ints(v, "f")?);
                let k = v.get("k").and_then(Value::as_u64).map(|k| k as usize).unwrap_or_else(|| f.k());
                f.validate(k).map_err(viol)?;
                Datum::Affine(f)
            }
            Kind::Rank => {
                let rows = v
                    .get("window")
                    .and_then(Value::as_array)
                    .ok_or("missing \"window\"")?
                    .iter()
                    .map(|r| ints(&json!({ "r": r }), "r"))
                    .collect::<Result<Vec<_>, _>>()?;
                Datum::Rank(rank_from_rows(rows)?)
            }
            Kind::Le => {
                let ascii = v.get("ascii").and_then(Value::as_str).ok_or("missing \"ascii\"")?;
                Datum::Le(LeDiagram::from_ascii(ascii, uint(v, "n")?).map_err(viol)?)
            }
        })
    }

    pub fn to_pair(&self) -> Result<PositroidPair, String> {
        match self {
            Datum::Pair(p) => Ok(p.clone()),
            Datum::Affine(f) => affine_to_pair(f).map_err(viol),
            Datum::Rank(r) => affine_to_pair(&rank_to_affine(r).map_err(viol)?).map_err(viol),
            Datum::Le(d) => le_to_pair(d).map_err(viol),
        }
    }

    pub fn convert(&self, to: Kind) -> Result<Datum, String> {
        let p = self.to_pair()?;
        Ok(match to {
            Kind::Pair => Datum::Pair(p),
            Kind::Affine => Datum::Affine(pair_to_affine(&p)),
            Kind::Rank => Datum::Rank(affine_to_rank(&pair_to_affine(&p))),
            Kind::Le => Datum::Le(pair_to_le(&p)),
        })
    }

    pub fn text(&self) -> String {
        match self {
            Datum::Pair(p) => p.to_string(),
            Datum::Affine(f) => f.to_string(),
            Datum::Rank(r) => r.to_string(),
            Datum::Le(d) => d.to_ascii(),
        }
    }

    pub fn json(&self) -> Value {
        match self {
            Datum::Pair(p) => json!({
                "type": "pair", "k": p.k, "n": p.n,
                "u": p.u.images(), "w": p.w.images(), "text": p.to_string(),
            }),
            Datum::Affine(f) => json!({
                "type": "affine", "k": f.k(), "n": f.n(), "f": f.window, "text": f.to_string(),
            }),
            Datum::Rank(r) => json!({ "type": "rank", "k": r.k, "n": r.n, "window": r.window() }),
            Datum::Le(d) => json!({
                "type": "le", "k": d.k, "n": d.n, "lambda": d.lambda,
                "dots": d.dots.iter().map(|&(r, c)| [r, c]).collect::<Vec<_>>(),
                "ascii": d.to_ascii(),
            }),
        }
    }
}

/// Guess the type of a bare datum: affine has f=, a pair has u= and w=.
pub fn sniff(text: &str) -> Kind {
    let t = text.trim();
    if t.contains("f=") || t.contains("\"f\"") {
        Kind::Affine
    } else if t.contains("window") || t.starts_with('[') {
        Kind::Rank
    } else if t.contains("u=") || t.contains("\"u\"") {
        Kind::Pair
    } else {
        Kind::Le
    }
}
