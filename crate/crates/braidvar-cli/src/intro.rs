//! The 7-strand positroid example end to end.

use braidvar::braid::{half_twist, BraidWord, LiftStrategy};
use braidvar::pbraids::{juggling_braid_diagram, juggling_length, le_braid, matrix_braid, richardson_braid};
use braidvar::positroid::{affine_to_pair, affine_to_rank, pair_to_le, AffinePerm};
use braidvar::rewrite::{find_equivalence, markov_reduce, MoveTrace, SearchOptions};
use serde_json::{json, Value};

use crate::jsonio;

pub const F: [i64; 7] = [3, 5, 8, 6, 7, 11, 9];

struct Check {
    name: &'static str,
    ok: bool,
    detail: String,
}

pub struct IntroReport {
    pub ok: bool,
    pub text: String,
    pub json: Value,
}

fn chain(from: &BraidWord, to: &BraidWord) -> Result<MoveTrace, String> {
    find_equivalence(from, to, SearchOptions::default())
        .or_else(|_| find_equivalence(from, to, SearchOptions { insertions: true, ..SearchOptions::default() }))
        .map_err(|e| e.to_string())
}

pub fn run(window: Vec<i64>) -> IntroReport {
    let mut checks = Vec::new();
    let mut braids = serde_json::Map::new();
    let mut push = |name, ok, detail: String| checks.push(Check { name, ok, detail });

    let f = AffinePerm::new(window);
    match f.validate(f.k()) {
        Ok(()) => push("affine permutation", true, f.to_string()),
        Err(e) => push("affine permutation", false, e.to_string()),
    }
    let pair = affine_to_pair(&f);
    let p = match pair {
        Ok(p) => {
            push("pair", true, p.to_string());
            Some(p)
        }
        Err(e) => {
            push("pair", false, e.to_string());
            None
        }
    };

    if let Some(p) = &p {
        let r7 = BraidWord::signed(7, &[3, 2, 1, 4, 3, 2, 5, 4, 6, 5, -3, -2]);
        let j3 = BraidWord::positive(3, &[2, 1, 2, 2, 2, 1, 1]);
        let m3 = BraidWord::positive(3, &[1, 2, 1, 1, 1, 2, 1, 2, 1, 1]);

        let rich = richardson_braid(p, LiftStrategy::ColumnReading { k: p.k });
        let jug = juggling_braid_diagram(&f);
        let rank = affine_to_rank(&f);
        let mat = matrix_braid(&rank);
        let le = le_braid(&pair_to_le(p));

        match &rich {
            Ok(b) => {
                braids.insert("richardson".into(), b.to_string().into());
                push("richardson braid", *b == r7, b.to_string());
            }
            Err(e) => push("richardson braid", false, e.to_string()),
        }
        braids.insert("juggling".into(), jug.to_string().into());
        push("juggling braid", jug == j3, jug.to_string());
        match &mat {
            Ok(b) => {
                braids.insert("matrix".into(), b.to_string().into());
                push("matrix braid", *b == m3, b.to_string());
            }
            Err(e) => push("matrix braid", false, e.to_string()),
        }
        braids.insert("le".into(), le.to_string().into());

        let spots = [(1, 1, 1), (1, 3, 2), (4, 6, 2), (3, 5, 3)];
        let got: Vec<i64> = spots.iter().map(|&(i, j, _)| rank.at(i, j)).collect();
        let ok = spots.iter().zip(&got).all(|(s, g)| s.2 == *g);
        push("rank spot values", ok, format!("r11,r13,r46,r35 = {got:?}"));

        let terms = [p.w.length() as i64, (p.k * (p.k - 1) / 2) as i64, p.u.length() as i64, (p.n - p.k) as i64];
        let s = f.fixed_points() as i64;
        let len = juggling_length(p);
        let ok = terms == [10, 3, 2, 4] && s == 0 && len == 7 && jug.len() as i64 == len;
        push(
            "length formula",
            ok,
            format!("{}+{}-{}-{}+{} = {len}, J has {} letters", terms[0], terms[1], terms[2], terms[3], s, jug.len()),
        );

        let first = markov_reduce(p).map_err(|e| e.to_string()).and_then(|red| {
            let tail = chain(&red.word, &BraidWord::positive(3, &[2, 2, 1, 1]))?;
            let t = red.trace.then(tail);
            t.replay().map_err(|e| format!("{e:?}"))?;
            Ok(t)
        });
        match &first {
            Ok(t) => push("chain R_n to s2^2 s1^2", t.start == r7, format!("{} moves", t.moves.len())),
            Err(e) => push("chain R_n to s2^2 s1^2", false, e.clone()),
        }
        let second = mat.map_err(|e| e.to_string()).and_then(|m| {
            let t = chain(&jug.concat(&half_twist(p.k)), &m)?;
            t.replay().map_err(|e| format!("{e:?}"))?;
            Ok(t)
        });
        match &second {
            Ok(t) => push("chain J*Delta to M", true, format!("{} moves", t.moves.len())),
            Err(e) => push("chain J*Delta to M", false, e.clone()),
        }
        let traces: Vec<Value> = [first, second].iter().filter_map(|t| t.as_ref().ok().map(jsonio::trace)).collect();
        braids.insert("traces".into(), traces.into());
    }

    let ok = checks.iter().all(|c| c.ok);
    let first_failure = checks.iter().find(|c| !c.ok).map(|c| c.name);
    let mut text = String::new();
    for c in &checks {
        text.push_str(&format!("{} {}: {}\n", if c.ok { "ok  " } else { "FAIL" }, c.name, c.detail));
    }
    if let Some(n) = first_failure {
        text.push_str(&format!("first failing check: {n}\n"));
    }
    let traces = braids.remove("traces").unwrap_or_else(|| json!([]));
    let json = json!({
        "f": f.window,
        "braids": braids,
        "traces": traces,
        "checks": checks.iter().map(|c| json!({ "name": c.name, "ok": c.ok, "detail": c.detail })).collect::<Vec<_>>(),
        "ok": ok,
        "first_failure": first_failure,
    });
    IntroReport { ok, text, json }
}
