mod datum;
mod intro;
mod jsonio;

use std::io::{Read, Write};
use std::process::ExitCode;

use braidvar::braid::{demazure_product, half_twist, BraidWord, LiftStrategy, Perm};
use braidvar::dga::{build_dga, build_dga_delta, compact_labels, slice_eliminate, Elem, Gen};
use braidvar::matrix::{variety_braid_pair, variety_upper_triangular, VarietyPresentation};
use braidvar::pbraids::{
    juggling_braid_algorithm, juggling_braid_diagram, le_braid, matrix_braid, richardson_braid, script_j,
};
use braidvar::positroid::{affine_to_rank, all_positroid_pairs, pair_to_affine, pair_to_le, PositroidPair};
use braidvar::rewrite::{certify_group_equal, find_equivalence, handle_reduce, markov_reduce, MoveTrace, SearchOptions};
use braidvar::variety::{
    brick_count, brick_stratify, count_points_with, enlarge_to_w0, component_t_signs, positroid_count_check,
    richardson_braid_variety, CountOptions, TMode,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use datum::{Datum, Kind};

#[derive(Parser)]
#[command(name = "braidvar", version, about = "Positroid braids, braid varieties and braid DG-algebras")]
struct Cli {
    /// Emit a single JSON document instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for point counting.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Input {
    /// The datum itself; see --input for files.
    datum: Option<String>,
    /// Read the datum from a file ("-" for stdin).
    #[arg(long)]
    input: Option<String>,
}

impl Input {
    fn read(&self) -> Result<String, String> {
        match (&self.datum, &self.input) {
            (Some(d), None) => Ok(d.clone()),
            (None, Some(path)) if path == "-" => {
                let mut s = String::new();
                std::io::stdin().read_to_string(&mut s).map_err(|e| e.to_string())?;
                Ok(s)
            }
            (None, Some(path)) => std::fs::read_to_string(path).map_err(|e| format!("{path}: {e}")),
            (Some(_), Some(_)) => Err("give either a datum or --input, not both".into()),
            (None, None) => Err("missing datum (positional or --input)".into()),
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum BraidKind {
    Richardson,
    Juggling,
    JugglingDelta,
    Matrix,
    Le,
    ScriptJ,
}

#[derive(Clone, Copy, ValueEnum)]
enum Lift {
    Column,
    Row,
    Lex,
}

#[derive(Clone, Copy, ValueEnum)]
enum Theorem {
    #[value(name = "main1-i")]
    Main1I,
    #[value(name = "main1-ii")]
    Main1Ii,
    RichVsJuggling,
    BrickStrata,
}

#[derive(Clone, Copy, ValueEnum)]
enum SetT {
    /// ±1 with product −1 on each closure component.
    Pm1,
}

#[derive(Clone, Copy, ValueEnum)]
enum TModeArg {
    Signs,
    Range,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum VarietySource {
    Word,
    Pair,
    Affine,
    Rank,
    Le,
}

#[derive(Args)]
struct SearchArgs {
    /// Maximum number of stored words in a certificate search.
    #[arg(long, default_value_t = 1_000_000)]
    budget: usize,
    /// Allow RII insertions in the search.
    #[arg(long)]
    insertions: bool,
    /// Forbid cyclic rotation and Δ-conjugation.
    #[arg(long)]
    no_conjugation: bool,
}

impl SearchArgs {
    fn options(&self) -> SearchOptions {
        SearchOptions {
            max_states: self.budget,
            insertions: self.insertions,
            conjugation: !self.no_conjugation,
            ..SearchOptions::default()
        }
    }
}

#[derive(Args)]
struct CountArgs {
    /// Field sizes (primes), comma separated.
    #[arg(short = 'q', value_delimiter = ',', default_value = "2")]
    q: Vec<u64>,
    /// Cap on enumerated assignments per count.
    #[arg(long, default_value_t = 100_000_000)]
    max_assignments: u128,
    /// How ground variables t are handled when counting.
    #[arg(long, value_enum, default_value = "signs")]
    t_mode: TModeArg,
}

impl CountArgs {
    fn options(&self, threads: usize) -> CountOptions {
        let t_mode = match self.t_mode {
            TModeArg::Signs => TMode::Signs,
            TModeArg::Range => TMode::Range,
        };
        CountOptions { max_assignments: self.max_assignments, threads: threads.max(1), t_mode }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Convert between pair, affine permutation, rank matrix and Le diagram.
    Convert {
        #[arg(long, value_enum)]
        from: Kind,
        #[arg(long, value_enum)]
        to: Kind,
        /// n for a Le diagram given without an n= header.
        #[arg(long)]
        n: Option<usize>,
        #[command(flatten)]
        input: Input,
    },
    /// Build one of the positroid braids of a datum.
    Braid {
        #[arg(long, value_enum)]
        from: Kind,
        #[arg(long, value_enum)]
        kind: BraidKind,
        /// Reduced word used for β(w) in the Richardson braid.
        #[arg(long, value_enum, default_value = "column")]
        lift: Lift,
        #[arg(long)]
        n: Option<usize>,
        #[command(flatten)]
        input: Input,
    },
    /// Simplify a word (handle reduction), search a certificate to --to, or Markov-reduce a pair.
    Simplify {
        /// Positroid datum type; the datum is then Markov-reduced.
        #[arg(long, value_enum)]
        from: Option<Kind>,
        /// Target word for a certificate search.
        #[arg(long)]
        to: Option<String>,
        /// Move cap for handle reduction.
        #[arg(long, default_value_t = 100_000)]
        max_moves: usize,
        #[command(flatten)]
        search: SearchArgs,
        #[command(flatten)]
        input: Input,
    },
    /// Run a certificate or count check, or replay a trace file.
    Verify {
        #[arg(long, value_enum, required_unless_present = "trace")]
        theorem: Option<Theorem>,
        /// A positroid datum, "k=<k> n=<n>" for every pair, or a braid word.
        #[arg(long, required_unless_present = "trace")]
        instance: Option<String>,
        /// Trace JSON to replay.
        #[arg(long, conflicts_with_all = ["theorem", "instance"])]
        trace: Option<String>,
        #[command(flatten)]
        count: CountArgs,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Braid DG-algebra of ηΔ (or ΔηΔ with --delta).
    Dga {
        #[arg(long)]
        word: String,
        /// Use ΔηΔ, where the Sh-terms vanish.
        #[arg(long)]
        delta: bool,
        #[arg(long, value_enum)]
        set_t: Option<SetT>,
        /// Also run slice elimination.
        #[arg(long)]
        eliminate: bool,
    },
    /// Presentation and point counts of a braid variety.
    Variety {
        #[arg(long, value_enum, default_value = "word")]
        from: VarietySource,
        /// Permutation π for X(β; π); defaults to w0.
        #[arg(long)]
        pi: Option<String>,
        /// Use the braid-pair form X(η): B_{ηΔ} + diag(t) = 0.
        #[arg(long)]
        braid_pair: bool,
        #[arg(long)]
        count: bool,
        #[arg(long)]
        n: Option<usize>,
        #[command(flatten)]
        counting: CountArgs,
        #[command(flatten)]
        input: Input,
    },
    /// Brick stratification of a positive word and its point counts.
    Brick {
        #[arg(long)]
        stratify: bool,
        #[arg(long)]
        count: bool,
        /// Append letters until the Demazure product is w0 first.
        #[arg(long)]
        enlarge: bool,
        #[command(flatten)]
        counting: CountArgs,
        #[command(flatten)]
        input: Input,
    },
    /// Replay the 7-strand positroid example and check every value.
    ReproduceIntro {
        /// Window of the affine permutation.
        #[arg(long)]
        f: Option<String>,
    },
}

struct Out {
    ok: bool,
    text: String,
    json: Value,
}

impl Out {
    fn ok(text: String, json: Value) -> Out {
        Out { ok: true, text, json }
    }
}

type Res = Result<Out, String>;

fn parse_word(s: &str) -> Result<BraidWord, String> {
    BraidWord::parse(s).map_err(|e| e.to_string())
}

fn lift(l: Lift, k: usize) -> LiftStrategy {
    match l {
        Lift::Column => LiftStrategy::ColumnReading { k },
        Lift::Row => LiftStrategy::RowReading { k },
        Lift::Lex => LiftStrategy::LexLeast,
    }
}

fn convert(from: Kind, to: Kind, n: Option<usize>, input: &Input) -> Res {
    let d = Datum::parse(from, &input.read()?, n)?;
    let out = d.convert(to)?;
    // the round trip back to the input type must be the identity
    let back = out.convert(from)?;
    if back.json() != d.convert(from)?.json() {
        return Err(format!("round trip failed: {}", back.text()));
    }
    Ok(Out::ok(out.text(), json!({ "input": d.json(), "output": out.json() })))
}

fn braid(from: Kind, kind: BraidKind, l: Lift, n: Option<usize>, input: &Input) -> Res {
    let d = Datum::parse(from, &input.read()?, n)?;
    let p = d.to_pair()?;
    let f = pair_to_affine(&p);
    let (b, route) = match kind {
        BraidKind::Richardson => {
            (richardson_braid(&p, lift(l, p.k)).map_err(|e| e.to_string())?, "beta(w) beta(u)^-1")
        }
        BraidKind::Juggling => (juggling_braid_diagram(&f), "juggling diagram"),
        BraidKind::JugglingDelta => (juggling_braid_algorithm(&f).concat(&half_twist(p.k.max(1))), "juggling * Delta"),
        BraidKind::Matrix => (matrix_braid(&affine_to_rank(&f)).map_err(|e| format!("violation: {e}"))?, "rank matrix"),
        BraidKind::Le => (le_braid(&pair_to_le(&p)), "Le diagram"),
        BraidKind::ScriptJ => (script_j(&p), "J1 Delta^-1 J2"),
    };
    Ok(Out::ok(b.to_string(), json!({ "input": d.json(), "route": route, "braid": jsonio::word(&b) })))
}

fn trace_out(t: &MoveTrace, extra: Value) -> Res {
    let replay = t.replay();
    let mut j = json!({ "word": jsonio::word(&t.end), "trace": jsonio::trace(t), "replayed": replay.is_ok() });
    if let (Value::Object(m), Value::Object(e)) = (&mut j, extra) {
        m.extend(e);
    }
    let text = format!("{}\n{} moves{}", t.end, t.moves.len(), if replay.is_ok() { ", replayed" } else { ", REPLAY FAILED" });
    Ok(Out { ok: replay.is_ok(), text, json: j })
}

fn simplify(from: Option<Kind>, to: Option<&str>, max_moves: usize, search: &SearchArgs, input: &Input) -> Res {
    let text = input.read()?;
    if let Some(kind) = from {
        let p = Datum::parse(kind, &text, None)?.to_pair()?;
        let r = markov_reduce(&p).map_err(|e| format!("violation: {e}"))?;
        return trace_out(&r.trace, json!({ "gamma": r.gamma }));
    }
    let w = parse_word(&text)?;
    let t = match to {
        Some(target) => find_equivalence(&w, &parse_word(target)?, search.options()).map_err(|e| e.to_string())?,
        None => handle_reduce(&w, max_moves).ok_or("handle reduction exceeded --max-moves")?,
    };
    trace_out(&t, json!({}))
}

struct Line {
    ok: bool,
    name: String,
    detail: String,
}

fn lines_out(theorem: &str, lines: Vec<Line>, extra: Value) -> Out {
    let ok = lines.iter().all(|l| l.ok);
    let text = lines
        .iter()
        .map(|l| format!("{} {}: {}", if l.ok { "ok  " } else { "FAIL" }, l.name, l.detail))
        .collect::<Vec<_>>()
        .join("\n");
    let checks: Vec<Value> = lines.iter().map(|l| json!({ "name": l.name, "ok": l.ok, "detail": l.detail })).collect();
    Out { ok, text, json: json!({ "theorem": theorem, "checks": checks, "ok": ok, "details": extra }) }
}

fn certificate(name: &str, r: Result<MoveTrace, String>, traces: &mut Vec<Value>) -> Line {
    match r.and_then(|t| t.replay().map(|_| t).map_err(|e| format!("{e:?}"))) {
        Ok(t) => {
            traces.push(jsonio::trace(&t));
            Line { ok: true, name: name.into(), detail: format!("{} moves, replayed", t.moves.len()) }
        }
        Err(e) => Line { ok: false, name: name.into(), detail: e },
    }
}

/// "k=<k> n=<n>" selects every pair of that size.
fn size_instance(s: &str) -> Option<(usize, usize)> {
    let mut k = None;
    let mut n = None;
    for tok in s.split_whitespace() {
        if let Some(v) = tok.strip_prefix("k=") {
            k = v.parse().ok();
        } else if let Some(v) = tok.strip_prefix("n=") {
            n = v.parse().ok();
        } else {
            return None;
        }
    }
    Some((k?, n?))
}

fn instance_pairs(s: &str) -> Result<Vec<PositroidPair>, String> {
    match size_instance(s) {
        Some((k, n)) if k >= 1 && k < n => Ok(all_positroid_pairs(k, n)),
        Some((k, n)) => Err(format!("need 1 ≤ k < n, got k={k} n={n}")),
        None => Ok(vec![Datum::parse(datum::sniff(s), s, None)?.to_pair()?]),
    }
}

fn verify(theorem: Theorem, instance: &str, count: &CountArgs, search: &SearchArgs, threads: usize) -> Res {
    let opts = count.options(threads);
    let mut traces = Vec::new();
    Ok(match theorem {
        Theorem::Main1I => {
            let mut lines = Vec::new();
            for p in instance_pairs(instance)? {
                let f = pair_to_affine(&p);
                let jd = juggling_braid_diagram(&f).concat(&half_twist(p.k).inverse());
                let r = markov_reduce(&p).map_err(|e| format!("violation: {e}")).and_then(|red| {
                    let tail = find_equivalence(&red.word, &jd, search.options())
                        .or_else(|_| {
                            find_equivalence(&red.word, &jd, SearchOptions { insertions: true, ..search.options() })
                        })
                        .map_err(|e| e.to_string())?;
                    Ok(red.trace.then(tail))
                });
                lines.push(certificate(&format!("{p}: R_n to J Delta^-1"), r, &mut traces));
                let d = le_braid(&pair_to_le(&p));
                let sj = script_j(&p);
                let r = certify_group_equal(&d, &sj, search.options().max_states).ok_or_else(|| "not found".to_string());
                lines.push(certificate(&format!("{p}: D to J1 Delta^-1 J2"), r, &mut traces));
            }
            lines_out("main1-i", lines, json!({ "traces": traces }))
        }
        Theorem::Main1Ii => {
            let mut lines = Vec::new();
            for p in instance_pairs(instance)? {
                let f = pair_to_affine(&p);
                let r = matrix_braid(&affine_to_rank(&f)).map_err(|e| format!("violation: {e}")).and_then(|m| {
                    find_equivalence(&juggling_braid_diagram(&f).concat(&half_twist(p.k)), &m, search.options())
                        .map_err(|e| e.to_string())
                });
                lines.push(certificate(&format!("{p}: J Delta to M"), r, &mut traces));
            }
            lines_out("main1-ii", lines, json!({ "traces": traces }))
        }
        Theorem::RichVsJuggling => {
            let mut lines = Vec::new();
            let mut rows = Vec::new();
            for p in instance_pairs(instance)? {
                for &q in &count.q {
                    let r = positroid_count_check(&p, q, &opts).map_err(|e| e.to_string())?;
                    rows.push(json!({
                        "pair": p.to_string(), "q": q, "richardson": r.richardson,
                        "juggling": r.juggling, "torus_rank": r.torus_rank, "holds": r.holds,
                    }));
                    lines.push(Line {
                        ok: r.holds,
                        name: format!("{p} q={q}"),
                        detail: format!("{} = {}·(q-1)^{}", r.richardson, r.juggling, r.torus_rank),
                    });
                }
            }
            lines_out("rich-vs-juggling", lines, json!({ "counts": rows }))
        }
        Theorem::BrickStrata => {
            let beta = parse_word(instance)?;
            let mut lines = Vec::new();
            let mut rows = Vec::new();
            for &q in &count.q {
                let c = brick_count(&beta, q, &opts).map_err(|e| e.to_string())?;
                let parts: Vec<String> = c.per_stratum.iter().map(|x| x.2.to_string()).collect();
                let sum: u64 = c.per_stratum.iter().map(|x| x.2).sum();
                lines.push(Line {
                    ok: sum == c.total,
                    name: format!("q={q} strata"),
                    detail: format!("total {} = {}", c.total, parts.join("+")),
                });
                let big = enlarge_to_w0(&beta).map_err(|e| e.to_string())?;
                let cb = brick_count(&big, q, &opts).map_err(|e| e.to_string())?;
                lines.push(Line {
                    ok: cb.total == c.total,
                    name: format!("q={q} enlarged to w0"),
                    detail: format!("{big}: total {}", cb.total),
                });
                rows.push(json!({ "q": q, "total": c.total, "strata": c.per_stratum.iter().map(|x| x.2).collect::<Vec<_>>() }));
            }
            lines_out("brick-strata", lines, json!({ "counts": rows }))
        }
    })
}

fn verify_trace(path: &str) -> Res {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))?;
    let v: Value = serde_json::from_str(&text).map_err(|e| format!("bad JSON: {e}"))?;
    let v = v.get("trace").cloned().unwrap_or(v);
    let t = jsonio::parse_trace(&v)?;
    let lines = vec![match t.replay() {
        Ok(()) => Line { ok: true, name: "replay".into(), detail: format!("{} moves", t.moves.len()) },
        Err(e) => Line { ok: false, name: "replay".into(), detail: format!("step {}: {}", e.step, e.reason) },
    }];
    Ok(lines_out("trace", lines, jsonio::trace(&t)))
}

fn dga(word: &str, delta: bool, set_t: Option<SetT>, eliminate: bool) -> Res {
    let eta = parse_word(word)?;
    let mut d = if delta { build_dga_delta(&eta) } else { build_dga(&eta) };
    if let Some(SetT::Pm1) = set_t {
        d = d.specialize_t(&component_t_signs(&d.word));
    }
    let mut diffs = serde_json::Map::new();
    let mut text = format!("{}\n{}\n", d.word, d.describe());
    let gens = d.generators();
    for g in &gens {
        let e = match *g {
            Gen::Y(l, m) => d.dy[l - 1][m - 1].clone(),
            Gen::Z(j) => d.dz[j - 1].clone(),
            Gen::W(_) => Elem::zero(),
        };
        text.push_str(&format!("d{g} = {e}\n"));
        diffs.insert(g.to_string(), e.to_string().into());
    }
    let failures = d.d_squared_failures();
    text.push_str(&format!("d^2 = 0: {}\n", if failures.is_empty() { "yes".into() } else { format!("no, on {} generators", failures.len()) }));
    let mut j = json!({
        "word": jsonio::word(&d.word),
        "sh_present": d.sh_present,
        "generators": gens.iter().map(|g| json!({ "name": g.to_string(), "degree": g.degree() })).collect::<Vec<_>>(),
        "differentials": diffs,
        "d_squared_zero": failures.is_empty(),
        "d_squared_failures": failures.iter().map(|(g, e)| json!({ "generator": g.to_string(), "value": e.to_string() })).collect::<Vec<_>>(),
    });
    if eliminate {
        let e = slice_eliminate(&d).map_err(|e| e.to_string())?;
        let v = compact_labels(&e.presentation);
        text.push_str(&format!("eliminated {} pairs:\n", e.steps.len()));
        for eq in &v.equations {
            text.push_str(&format!("  {eq} = 0\n"));
        }
        j["elimination"] = json!({
            "steps": e.steps.iter().map(|s| json!({ "w": s.w, "z": s.z, "unit": s.unit })).collect::<Vec<_>>(),
            "presentation": jsonio::presentation(&v),
        });
    }
    Ok(Out { ok: failures.is_empty(), text: text.trim_end().into(), json: j })
}

fn counts(v: &VarietyPresentation, count: &CountArgs, threads: usize) -> Result<(String, Vec<Value>), String> {
    let opts = count.options(threads);
    let mut text = String::new();
    let mut rows = Vec::new();
    for &q in &count.q {
        let r = count_points_with(v, q, &opts).map_err(|e| e.to_string())?;
        text.push_str(&format!("q={q}: {}\n", r.count));
        rows.push(json!({ "q": q, "count": r.count, "method": format!("{:?}", r.method) }));
    }
    Ok((text, rows))
}

fn variety(src: VarietySource, pi: Option<&str>, braid_pair: bool, count: bool, n: Option<usize>, counting: &CountArgs, input: &Input, threads: usize) -> Res {
    let text = input.read()?;
    let v = match src {
        VarietySource::Word => {
            let b = parse_word(&text)?;
            if braid_pair {
                variety_braid_pair(&b)
            } else {
                let pi = match pi {
                    Some(s) => Perm::parse(s).map_err(|e| e.to_string())?,
                    None => Perm::longest(b.strands),
                };
                if pi.n() != b.strands {
                    return Err(format!("π has {} entries but the word has {} strands", pi.n(), b.strands));
                }
                variety_upper_triangular(&b, &pi)
            }
        }
        other => {
            let kind = match other {
                VarietySource::Pair => Kind::Pair,
                VarietySource::Affine => Kind::Affine,
                VarietySource::Rank => Kind::Rank,
                _ => Kind::Le,
            };
            let p = Datum::parse(kind, &text, n)?.to_pair()?;
            richardson_braid_variety(&p.u, &p.w).map_err(|e| e.to_string())?
        }
    };
    let mut out = format!("{}\n{}\n", v.braid, v.describe());
    for e in &v.equations {
        out.push_str(&format!("  {e} = 0\n"));
    }
    let mut j = json!({ "presentation": jsonio::presentation(&v) });
    if count {
        let (t, rows) = counts(&v, counting, threads)?;
        out.push_str(&t);
        j["counts"] = rows.into();
    }
    Ok(Out::ok(out.trim_end().into(), j))
}

fn brick(stratify: bool, count: bool, enlarge: bool, counting: &CountArgs, input: &Input, threads: usize) -> Res {
    let mut beta = parse_word(&input.read()?)?;
    if enlarge {
        beta = enlarge_to_w0(&beta).map_err(|e| e.to_string())?;
    }
    let s = brick_stratify(&beta).map_err(|e| e.to_string())?;
    let delta = demazure_product(&beta).map_err(|e| e.to_string())?;
    let mut text = format!("{beta}\ndemazure product {delta}, {} strata\n", s.strata.len());
    let mut strata: Vec<Value> = s.strata.iter().map(|x| json!({ "I": x.subword, "dim": x.dim })).collect();
    let mut j = json!({ "word": beta.to_string(), "demazure": delta.to_string() });
    if count {
        let q = match counting.q.as_slice() {
            [q] => *q,
            _ => return Err("brick --count takes a single -q".into()),
        };
        let c = brick_count(&beta, q, &counting.options(threads)).map_err(|e| e.to_string())?;
        for (row, x) in strata.iter_mut().zip(&c.per_stratum) {
            row["count"] = x.2.into();
        }
        j["q"] = q.into();
        j["total"] = c.total.into();
        text.push_str(&format!("q={q}: total {}\n", c.total));
    }
    if stratify || count {
        for row in &strata {
            text.push_str(&format!("  I={} dim={}{}\n", row["I"], row["dim"], row.get("count").map(|c| format!(" count={c}")).unwrap_or_default()));
        }
        j["strata"] = strata.into();
    }
    Ok(Out::ok(text.trim_end().into(), j))
}

fn reproduce(f: Option<&str>) -> Res {
    let window = match f {
        Some(s) => braidvar::braid::parse_list(s).map_err(|e| e.to_string())?,
        None => intro::F.to_vec(),
    };
    let r = intro::run(window);
    Ok(Out { ok: r.ok, text: r.text.trim_end().into(), json: r.json })
}

fn run(cli: &Cli) -> Res {
    let threads = cli.threads;
    match &cli.cmd {
        Cmd::Convert { from, to, n, input } => convert(*from, *to, *n, input),
        Cmd::Braid { from, kind, lift, n, input } => braid(*from, *kind, *lift, *n, input),
        Cmd::Simplify { from, to, max_moves, search, input } => simplify(*from, to.as_deref(), *max_moves, search, input),
        Cmd::Verify { trace: Some(path), .. } => verify_trace(path),
        Cmd::Verify { theorem, instance, count, search, .. } => {
            let (Some(t), Some(i)) = (theorem, instance) else {
                return Err("verify needs --theorem and --instance, or --trace".into());
            };
            verify(*t, i, count, search, threads)
        }
        Cmd::Dga { word, delta, set_t, eliminate } => dga(word, *delta, *set_t, *eliminate),
        Cmd::Variety { from, pi, braid_pair, count, n, counting, input } => {
            variety(*from, pi.as_deref(), *braid_pair, *count, *n, counting, input, threads)
        }
        Cmd::Brick { stratify, count, enlarge, counting, input } => brick(*stratify, *count, *enlarge, counting, input, threads),
        Cmd::ReproduceIntro { f } => reproduce(f.as_deref()),
    }
}

/// Print, ignoring a closed pipe (e.g. `| head`).
fn emit(s: &str) {
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{s}");
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            if cli.json {
                emit(&serde_json::to_string_pretty(&out.json).expect("values serialize"));
            } else {
                emit(&out.text);
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            if cli.json {
                emit(&json!({ "ok": false, "error": e }).to_string());
            }
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
