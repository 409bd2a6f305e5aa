//! JSON shapes shared by several subcommands.

use braidvar::braid::BraidWord;
use braidvar::matrix::VarietyPresentation;
use braidvar::rewrite::{DeltaDir, Move, MoveTrace};
use serde_json::{json, Map, Value};

pub fn word(b: &BraidWord) -> Value {
    let letters: Vec<i64> =
        b.letters.iter().map(|l| if l.is_positive() { l.index() as i64 } else { -(l.index() as i64) }).collect();
    json!({ "text": b.to_string(), "strands": b.strands, "letters": letters, "length": b.len() })
}

pub fn move_json(m: &Move) -> Value {
    let mut o = Map::new();
    o.insert("kind".into(), m.kind_name().into());
    match *m {
        Move::RiiInsert { at, index, positive_first } => {
            o.insert("at".into(), at.into());
            o.insert("index".into(), index.into());
            o.insert("positive_first".into(), positive_first.into());
        }
        Move::RiiRemove { at }
        | Move::RiiiPos { at }
        | Move::RiiiNeg { at }
        | Move::RiiiMixed { at }
        | Move::Commute { at }
        | Move::PosStabilize { at }
        | Move::PosDestabilize { at } => {
            o.insert("at".into(), at.into());
        }
        Move::DeltaConjugate { dir } => {
            let d = if dir == DeltaDir::LeftToRight { "L2R" } else { "R2L" };
            o.insert("dir".into(), d.into());
        }
        Move::CyclicRotate { forward } => {
            o.insert("forward".into(), forward.into());
        }
        Move::AddDisjointStrand { strand } | Move::RemoveDisjointStrand { strand } => {
            o.insert("strand".into(), strand.into());
        }
    }
    Value::Object(o)
}

pub fn parse_move(v: &Value) -> Result<Move, String> {
    let kind = v.get("kind").and_then(Value::as_str).ok_or("move without \"kind\"")?;
    let num = |k: &str| {
        v.get(k).and_then(Value::as_u64).map(|x| x as usize).ok_or_else(|| format!("{kind}: missing {k:?}"))
    };
    let flag = |k: &str| v.get(k).and_then(Value::as_bool).ok_or_else(|| format!("{kind}: missing {k:?}"));
    Ok(match kind {
        "RII_insert" => Move::RiiInsert { at: num("at")?, index: num("index")?, positive_first: flag("positive_first")? },
        "RII_remove" => Move::RiiRemove { at: num("at")? },
        "RIII_pos" => Move::RiiiPos { at: num("at")? },
        "RIII_neg" => Move::RiiiNeg { at: num("at")? },
        "RIII_mixed" => Move::RiiiMixed { at: num("at")? },
        "Commute" => Move::Commute { at: num("at")? },
        "PosStabilize" => Move::PosStabilize { at: num("at")? },
        "PosDestabilize" => Move::PosDestabilize { at: num("at")? },
        "DeltaConjugate" => match v.get("dir").and_then(Value::as_str) {
            Some("L2R") => Move::DeltaConjugate { dir: DeltaDir::LeftToRight },
            Some("R2L") => Move::DeltaConjugate { dir: DeltaDir::RightToLeft },
            _ => return Err("DeltaConjugate: dir must be \"L2R\" or \"R2L\"".into()),
        },
        "CyclicRotate" => Move::CyclicRotate { forward: flag("forward")? },
        "AddDisjointStrand" => Move::AddDisjointStrand { strand: num("strand")? },
        "RemoveDisjointStrand" => Move::RemoveDisjointStrand { strand: num("strand")? },
        other => return Err(format!("unknown move kind {other:?}")),
    })
}

pub fn trace(t: &MoveTrace) -> Value {
    json!({
        "start": t.start.to_string(),
        "end": t.end.to_string(),
        "moves": t.moves.iter().map(move_json).collect::<Vec<_>>(),
    })
}

pub fn parse_trace(v: &Value) -> Result<MoveTrace, String> {
    let w = |k: &str| -> Result<BraidWord, String> {
        let s = v.get(k).and_then(Value::as_str).ok_or_else(|| format!("trace without {k:?}"))?;
        BraidWord::parse(s).map_err(|e| e.to_string())
    };
    let moves = v
        .get("moves")
        .and_then(Value::as_array)
        .ok_or("trace without \"moves\"")?
        .iter()
        .map(parse_move)
        .collect::<Result<_, _>>()?;
    Ok(MoveTrace { start: w("start")?, moves, end: w("end")? })
}

pub fn presentation(v: &VarietyPresentation) -> Value {
    json!({
        "vars": v.vars.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
        "equations": v.equations.iter().map(|e| e.to_string()).collect::<Vec<_>>(),
        "braid": v.braid.to_string(),
        "pi": v.pi.as_ref().map(|p| p.to_string()),
    })
}
