//! JSON encoding of results: rationals as `"a/b"` strings, integers as JSON
//! numbers when they fit in an `i64` and as strings otherwise.

use moduli_core::arith::{parse_rational, qapprox};
use moduli_core::boundary::SemistableStatus;
use moduli_core::classifier::Side;
use moduli_core::kronecker::{Certificate, StabilityStatus, StabilityVerdict, WallCandidate};
use moduli_core::{BigInt, ChernData, Classification, ExceptionalBundle, Error, QuadValue, Rational, Result, Triad};
use serde_json::{json, Map, Value};

/// Digits after the decimal point in `approx` fields.
pub const APPROX_DIGITS: u32 = 20;

pub fn int(n: &BigInt) -> Value {
    match i64::try_from(n) {
        Ok(k) => json!(k),
        Err(_) => json!(n.to_string()),
    }
}

pub fn rational(r: &Rational) -> Value {
    json!(r.to_string())
}

pub fn quad(x: &QuadValue) -> Value {
    json!({
        "a": x.a().to_string(),
        "b": x.b().to_string(),
        "d": int(x.radicand()),
        "approx": qapprox(x, APPROX_DIGITS),
    })
}

pub fn chern(c: &ChernData) -> Value {
    json!([int(&c.rank), int(&c.c1), int(&c.c2)])
}

pub fn bundle(b: &ExceptionalBundle) -> Value {
    let mut v = json!({
        "slope": rational(&b.slope),
        "rank": int(&b.rank),
        "chern": chern(&b.chern),
        "delta": rational(&b.delta),
    });
    if let Some(a) = b.address {
        v["address"] = json!([a.num, a.exp]);
    }
    v
}

fn triad(t: &Triad) -> Value {
    json!({
        "address": [t.address.0, t.address.1],
        "e": bundle(&t.e),
        "f": bundle(&t.f),
        "g": bundle(&t.g),
        "h": bundle(&t.h),
    })
}

fn status(s: &SemistableStatus) -> Value {
    match s {
        SemistableStatus::PositiveDim => json!({ "kind": "positive_dim" }),
        SemistableStatus::ExceptionalPoint { bundle: b, multiplicity } => json!({
            "kind": "exceptional_point",
            "bundle": bundle(b),
            "multiplicity": int(multiplicity),
        }),
        SemistableStatus::Empty => json!({ "kind": "empty" }),
    }
}

pub fn classification(c: &Classification) -> Value {
    let mut fields = match c {
        Classification::NotPrioritary { .. } => json!({}),
        Classification::SemistableExists { status: s, .. } => json!({ "status": status(s) }),
        Classification::Rigid { triad: t, m, n, p, .. } => json!({
            "triad": triad(t),
            "m": int(m),
            "n": int(n),
            "p": int(p),
        }),
        Classification::ExceptionalPlus { f, p, residual, side, center, .. } => json!({
            "f": bundle(f),
            "p": int(p),
            "residual": chern(residual),
            "side": match side { Side::Left => "left", Side::Right => "right" },
            "center": center,
        }),
        Classification::Special01 { rank, .. } => json!({ "rank": int(rank) }),
        Classification::PureExceptional { f, k, .. } => json!({ "f": bundle(f), "k": int(k) }),
    };
    let obj = fields.as_object_mut().expect("object literal");
    let mut out = Map::new();
    out.insert("variant".into(), json!(c.variant_name()));
    out.insert("twist".into(), int(c.twist()));
    out.append(obj);
    Value::Object(out)
}

pub fn verdict(v: &StabilityVerdict) -> Value {
    let status = match v.status {
        StabilityStatus::Stable => "stable",
        StabilityStatus::Semistable => "semistable",
        StabilityStatus::Unstable => "unstable",
        StabilityStatus::Unknown => "unknown",
    };
    let cert = v.certificate.as_ref().map(|c: &Certificate| {
        json!({
            "basis": c.basis.iter().map(|row| row.iter().map(rational).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "subspace_dim": c.subspace_dim,
            "image_dim": c.image_dim,
        })
    });
    json!({ "status": status, "certificate": cert, "note": v.note })
}

pub fn wall(w: &WallCandidate) -> Value {
    json!({
        "triple": [w.triple.0, w.triple.1, w.triple.2],
        "lambda": rational(&w.lambda),
        "rho": rational(&w.rho),
    })
}

// Decoding, used to check that emitted JSON carries the whole result.

fn bad(what: &str) -> Error {
    Error::Parse(format!("malformed classification JSON: {what}"))
}

fn get<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| bad(key))
}

pub fn int_from(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => n.as_i64().map(BigInt::from).ok_or_else(|| bad("integer")),
        Value::String(s) => s.parse().map_err(|_| bad("integer string")),
        _ => Err(bad("integer")),
    }
}

pub fn chern_from(v: &Value) -> Result<ChernData> {
    match v.as_array().map(Vec::as_slice) {
        Some([r, c1, c2]) => Ok(ChernData::new(int_from(r)?, int_from(c1)?, int_from(c2)?)),
        _ => Err(bad("chern triple")),
    }
}

pub fn bundle_from(v: &Value) -> Result<ExceptionalBundle> {
    let b = ExceptionalBundle::from_chern(&chern_from(get(v, "chern")?)?)?;
    let slope = parse_rational(get(v, "slope")?.as_str().ok_or_else(|| bad("slope"))?)?;
    if slope != b.slope {
        return Err(bad("slope disagrees with chern"));
    }
    Ok(b)
}

fn triad_from(v: &Value) -> Result<Triad> {
    let addr = get(v, "address")?.as_array().ok_or_else(|| bad("address"))?;
    let (Some(level), Some(index)) = (addr.first().and_then(Value::as_u64), addr.get(1).and_then(Value::as_u64)) else {
        return Err(bad("address"));
    };
    let level = u32::try_from(level).map_err(|_| bad("address"))?;
    Triad::from_parts(bundle_from(get(v, "e")?)?, bundle_from(get(v, "f")?)?, bundle_from(get(v, "g")?)?, (level, index))
}

/// Inverse of [`classification`] for the decomposition variants.
pub fn classification_from(v: &Value) -> Result<Classification> {
    let twist = int_from(get(v, "twist")?)?;
    let variant = get(v, "variant")?.as_str().ok_or_else(|| bad("variant"))?;
    Ok(match variant {
        "rigid" => Classification::Rigid {
            triad: triad_from(get(v, "triad")?)?,
            m: int_from(get(v, "m")?)?,
            n: int_from(get(v, "n")?)?,
            p: int_from(get(v, "p")?)?,
            twist,
        },
        "exceptional_plus" => Classification::ExceptionalPlus {
            f: bundle_from(get(v, "f")?)?,
            p: int_from(get(v, "p")?)?,
            residual: chern_from(get(v, "residual")?)?,
            side: match get(v, "side")?.as_str() {
                Some("left") => Side::Left,
                Some("right") => Side::Right,
                _ => return Err(bad("side")),
            },
            center: get(v, "center")?.as_bool().ok_or_else(|| bad("center"))?,
            twist,
        },
        "special01" => Classification::Special01 { rank: int_from(get(v, "rank")?)?, twist },
        "pure_exceptional" => Classification::PureExceptional {
            f: bundle_from(get(v, "f")?)?,
            k: int_from(get(v, "k")?)?,
            twist,
        },
        "not_prioritary" => Classification::NotPrioritary { twist },
        other => return Err(bad(other)),
    })
}
