//! JSON encoding of the geometric types: integers become JSON numbers
//! unless they exceed 64 bits, in which case they are decimal strings;
//! rationals are "p/q" strings; fans are rays plus 0-based max-cone
//! index lists.

use serde_json::{json, Map, Value};

use crate::cone::Cone;
use crate::matrix::IntMat;
use crate::fan::Fan;
use crate::pgl2::{BijectionReport, Pgl2Chambers, WallMatching};
use crate::scalar::{Ratio, Scalar};
use crate::toric::{ChamberData, TorusChamber, WeightConfiguration};
use crate::vector::{IntVec, RatVec, Sign};

pub fn int_to_json<S: Scalar>(x: &S) -> Value {
    let s = x.to_string();
    match s.parse::<i64>() {
        Ok(v) => json!(v),
        Err(_) => json!(s),
    }
}

pub fn rat_to_json<S: Scalar>(x: &Ratio<S>) -> Value {
    json!(format!("{}/{}", x.numer(), x.denom()))
}

pub fn intvec_to_json<S: Scalar>(v: &IntVec<S>) -> Value {
    Value::Array(v.iter().map(int_to_json).collect())
}

pub fn ratvec_to_json<S: Scalar>(v: &RatVec<S>) -> Value {
    Value::Array(v.coords().iter().map(rat_to_json).collect())
}

pub fn sign_vector_to_json(signs: &[Sign]) -> Value {
    json!(signs.iter().map(|s| s.as_str()).collect::<String>())
}

pub fn intmat_to_json<S: Scalar>(m: &IntMat<S>) -> Value {
    Value::Array((0..m.rows()).map(|r| intvec_to_json(&m.row(r))).collect())
}

pub fn intmat_from_json<S: Scalar>(v: &Value) -> Result<IntMat<S>, String> {
    let rows = v
        .as_array()
        .ok_or_else(|| format!("expected array of rows, got {v}"))?
        .iter()
        .map(intvec_from_json)
        .collect::<Result<Vec<IntVec<S>>, _>>()?;
    if rows.is_empty() {
        return Err("empty matrix".into());
    }
    Ok(IntMat::from_rows(rows))
}

pub fn fan_to_json<S: Scalar>(f: &Fan<S>) -> Value {
    json!({
        "rays": f.rays().iter().map(intvec_to_json).collect::<Vec<_>>(),
        "max_cones": f.max_cones(),
    })
}

pub fn cone_to_json<S: Scalar>(c: &Cone<S>) -> Value {
    json!({
        "ambient_dim": c.ambient_dim(),
        "generators": c.generators().iter().map(intvec_to_json).collect::<Vec<_>>(),
        "facet_normals": c.facet_normals().iter().map(intvec_to_json).collect::<Vec<_>>(),
        "span_equations": c.span_equations().iter().map(intvec_to_json).collect::<Vec<_>>(),
        "lineality_basis": c.lineality_basis().iter().map(intvec_to_json).collect::<Vec<_>>(),
    })
}

pub fn weights_to_json<S: Scalar>(w: &WeightConfiguration<S>) -> Value {
    json!({
        "n": w.torus_rank(),
        "r": w.affine_dim(),
        "beta": w.beta().iter().map(intvec_to_json).collect::<Vec<_>>(),
        "nu": w.nu().iter().map(intvec_to_json).collect::<Vec<_>>(),
        "c_beta": cone_to_json(w.c_beta()),
        "projective_regime": w.is_projective_regime(),
    })
}

pub fn chamber_data_to_json<S: Scalar>(d: &ChamberData<S>) -> Value {
    json!({
        "character": intvec_to_json(&d.character.chi),
        "lift": intvec_to_json(&d.character.lift),
        "vertices": d.polyhedron.vertices().iter().map(ratvec_to_json).collect::<Vec<_>>(),
        "fan": fan_to_json(&d.fan),
        "i_empty": d.i_empty.iter().collect::<Vec<_>>(),
        "ideal_generators": d.ideal.generators().iter().map(|g| g.iter().collect::<Vec<_>>()).collect::<Vec<_>>(),
        "flags": {
            "semistable_nonempty": d.flags.semistable_nonempty,
            "stable_nonempty": d.flags.stable_nonempty,
            "stable_equals_semistable": d.flags.stable_equals_semistable,
            "projective_regime": d.flags.projective_regime,
        },
    })
}

pub fn torus_chamber_to_json<S: Scalar>(c: &TorusChamber<S>) -> Value {
    let mut obj = Map::new();
    obj.insert("sign_vector".into(), sign_vector_to_json(c.sign_vector()));
    obj.insert("representative_chi".into(), intvec_to_json(&c.chi));
    if let Value::Object(rest) = chamber_data_to_json(&c.data) {
        for (k, v) in rest {
            obj.insert(k, v);
        }
    }
    Value::Object(obj)
}

pub fn pgl2_chambers_to_json<S: Scalar>(p: &Pgl2Chambers<S>) -> Value {
    json!({
        "n": p.n,
        "pair": [p.pair.0 + 1, p.pair.1 + 1],
        "walls": p.walls.iter().map(|w| json!({
            "subset": w.subset.iter().map(|i| i + 1).collect::<Vec<_>>(),
            "normal": intvec_to_json(&w.normal),
        })).collect::<Vec<_>>(),
        "chambers": p.cells.iter().zip(&p.representatives).map(|(cell, rep)| json!({
            "sign_vector": sign_vector_to_json(&cell.sign_vector),
            "representative": intvec_to_json(&rep.a),
        })).collect::<Vec<_>>(),
    })
}

fn matching_to_json<S: Scalar>(m: &WallMatching<S>) -> Value {
    let map_rows = |rows: &Vec<RatVec<S>>| rows.iter().map(ratvec_to_json).collect::<Vec<_>>();
    json!({
        "wall_pairs": m.wall_pairs.iter()
            .map(|&(p, g, s)| json!([p, g, s.as_str()]))
            .collect::<Vec<_>>(),
        "chamber_pairs": m.chamber_pairs,
        "pullback_map": m.pullback_rows.as_ref().map(map_rows),
        "pushforward_map": m.pushforward_rows.as_ref().map(map_rows),
        "pushforward_signs": m.pushforward_signs.as_ref()
            .map(|ss| ss.iter().map(|s| s.as_str()).collect::<Vec<_>>()),
        "reps_land_in_weight_cone": m.reps_land_in_weight_cone,
    })
}

pub fn bijection_report_to_json<S: Scalar>(r: &BijectionReport<S>) -> Value {
    json!({
        "n": r.n,
        "pair": [r.pair.0 + 1, r.pair.1 + 1],
        "pgl2": pgl2_chambers_to_json(&r.pgl2),
        "weights": weights_to_json(&r.weights),
        "gkz_walls": r.gkz_walls.iter().map(intvec_to_json).collect::<Vec<_>>(),
        "gkz_chambers": r.gkz.iter().map(torus_chamber_to_json).collect::<Vec<_>>(),
        "counts": {
            "pgl2": r.pgl2.cells.len(),
            "gkz": r.gkz.len(),
        },
        "counts_match": r.counts_match,
        "matching": r.matching.as_ref().map(matching_to_json),
        "quotient_fans": r.quotient_fans.iter().map(fan_to_json).collect::<Vec<_>>(),
    })
}

pub fn int_from_json<S: Scalar>(v: &Value) -> Result<S, String> {
    match v {
        Value::Number(n) => {
            let i = n.as_i64().ok_or_else(|| format!("not an integer: {n}"))?;
            Ok(S::from(i))
        }
        Value::String(s) => parse_int(s),
        _ => Err(format!("expected integer, got {v}")),
    }
}

/// Parse a (possibly arbitrarily large) decimal integer.
pub fn parse_int<S: Scalar>(s: &str) -> Result<S, String> {
    let t = s.trim();
    let (neg, digits) = match t.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, t.strip_prefix('+').unwrap_or(t)),
    };
    if digits.is_empty() || !digits.chars().all(|c| c.is_ascii_digit()) {
        return Err(format!("invalid integer: {s:?}"));
    }
    let ten = S::from(10);
    let mut acc = S::zero();
    for c in digits.chars() {
        acc = acc * ten.clone() + S::from((c as u8 - b'0') as i64);
    }
    Ok(if neg { -acc } else { acc })
}

pub fn intvec_from_json<S: Scalar>(v: &Value) -> Result<IntVec<S>, String> {
    let arr = v.as_array().ok_or_else(|| format!("expected array, got {v}"))?;
    Ok(IntVec::new(arr.iter().map(int_from_json).collect::<Result<_, _>>()?))
}

pub fn fan_from_json<S: Scalar>(v: &Value) -> Result<Fan<S>, String> {
    let rays = v
        .get("rays")
        .and_then(Value::as_array)
        .ok_or("fan missing rays")?
        .iter()
        .map(intvec_from_json)
        .collect::<Result<Vec<IntVec<S>>, _>>()?;
    let dim = rays.first().map_or(0, |r| r.dim());
    let cones = v
        .get("max_cones")
        .and_then(Value::as_array)
        .ok_or("fan missing max_cones")?
        .iter()
        .map(|c| {
            c.as_array()
                .ok_or_else(|| "max cone must be an array".to_string())?
                .iter()
                .map(|i| i.as_u64().map(|i| i as usize).ok_or_else(|| "bad index".to_string()))
                .collect::<Result<Vec<usize>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Fan::new(dim, rays, cones))
}
