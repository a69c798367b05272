//! JSON interchange formats used by the CLI: pair files, block
//! descriptor lists, and decomposition reports.  Matrices are arrays of
//! arrays of exact scalar strings.

use serde_json::{json, Value};

use crate::canonical_blocks::{BlockSubtype, CanonicalBlock};
use crate::decompose::Decomposition;
use crate::error::{Error, Result};
use crate::matrices::Matrix;
use crate::pair_engine::{AnyPair, IsometricPair, Sign};
use crate::scalars::{
    CaseTag, GaussianRational, Involution, Quaternion, Rational, Scalar, ScalarDomain,
};

fn parse_involution(case: CaseTag, s: Option<&str>) -> Result<Involution> {
    match (case, s) {
        (CaseTag::A | CaseTag::C, None | Some("identity")) => Ok(Involution::Identity),
        (CaseTag::B, None | Some("conjugation")) => Ok(Involution::ComplexConjugation),
        (CaseTag::D, None | Some("conjugation")) => Ok(Involution::QuaternionConjugation),
        (CaseTag::D, Some("semiconjugation")) => Ok(Involution::QuaternionSemiconjugation),
        (_, Some(other)) => Err(Error::parse(format!(
            "involution {other:?} is not valid for case {case}"
        ))),
    }
}

pub fn matrix_to_json<S: Scalar>(m: &Matrix<S>) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|r| {
                Value::Array(
                    (0..m.cols())
                        .map(|c| Value::String(m.at(r, c).to_string()))
                        .collect(),
                )
            })
            .collect(),
    )
}

pub fn matrix_from_json<S: Scalar>(v: &Value) -> Result<Matrix<S>> {
    let rows = v
        .as_array()
        .ok_or_else(|| Error::parse("matrix must be an array of rows"))?;
    let height = rows.len();
    let mut entries = Vec::new();
    let mut width = None;
    for row in rows {
        let cells = row
            .as_array()
            .ok_or_else(|| Error::parse("matrix row must be an array"))?;
        match width {
            None => width = Some(cells.len()),
            Some(w) if w != cells.len() => {
                return Err(Error::parse("ragged matrix rows"));
            }
            _ => {}
        }
        for cell in cells {
            let s = cell
                .as_str()
                .ok_or_else(|| Error::parse("matrix entries must be scalar strings"))?;
            entries.push(S::parse(s)?);
        }
    }
    Matrix::new(height, width.unwrap_or(0), entries)
}

fn get_str<'a>(v: &'a Value, key: &str) -> Result<&'a str> {
    v.get(key)
        .and_then(Value::as_str)
        .ok_or_else(|| Error::parse(format!("missing string field {key:?}")))
}

fn get_i64(v: &Value, key: &str) -> Result<i64> {
    v.get(key)
        .and_then(Value::as_i64)
        .ok_or_else(|| Error::parse(format!("missing integer field {key:?}")))
}

// ---------------------------------------------------------------------------
// Pair files
// ---------------------------------------------------------------------------

pub fn pair_to_json(pair: &AnyPair) -> Value {
    let dom = pair.domain();
    let (a, b) = match pair {
        AnyPair::Rational(p) => (matrix_to_json(p.a()), matrix_to_json(p.b())),
        AnyPair::Gaussian(p) => (matrix_to_json(p.a()), matrix_to_json(p.b())),
        AnyPair::Quaternion(p) => (matrix_to_json(p.a()), matrix_to_json(p.b())),
    };
    json!({
        "case": dom.case.as_str(),
        "involution": dom.involution.as_str(),
        "epsilon": pair.epsilon().to_i64(),
        "A": a,
        "B": b,
    })
}

pub fn pair_from_json(v: &Value) -> Result<AnyPair> {
    let case = CaseTag::from_str(get_str(v, "case")?)?;
    let involution = parse_involution(case, v.get("involution").and_then(Value::as_str))?;
    let domain = ScalarDomain::for_case(case, Some(involution))?;
    let epsilon = Sign::from_i64(get_i64(v, "epsilon")?)?;
    let a = v
        .get("A")
        .ok_or_else(|| Error::parse("missing matrix field \"A\""))?;
    let b = v
        .get("B")
        .ok_or_else(|| Error::parse("missing matrix field \"B\""))?;
    Ok(match case {
        CaseTag::A | CaseTag::B => AnyPair::Gaussian(IsometricPair::validate(
            domain,
            epsilon,
            matrix_from_json::<GaussianRational>(a)?,
            matrix_from_json::<GaussianRational>(b)?,
        )?),
        CaseTag::C => AnyPair::Rational(IsometricPair::validate(
            domain,
            epsilon,
            matrix_from_json::<Rational>(a)?,
            matrix_from_json::<Rational>(b)?,
        )?),
        CaseTag::D => AnyPair::Quaternion(IsometricPair::validate(
            domain,
            epsilon,
            matrix_from_json::<Quaternion>(a)?,
            matrix_from_json::<Quaternion>(b)?,
        )?),
    })
}

// ---------------------------------------------------------------------------
// Block descriptors
// ---------------------------------------------------------------------------

pub fn block_to_json(b: &CanonicalBlock) -> Value {
    json!({
        "case": b.case.as_str(),
        "involution": b.involution.as_str(),
        "subtype": b.subtype.as_str(),
        "n": b.n,
        "lambda": b.lambda.to_string(),
        "sign": b.sign.to_i64(),
        "epsilon": b.epsilon.to_i64(),
        "realified": b.realified,
    })
}

pub fn block_from_json(v: &Value) -> Result<CanonicalBlock> {
    let case = CaseTag::from_str(get_str(v, "case")?)?;
    let involution = parse_involution(case, v.get("involution").and_then(Value::as_str))?;
    let subtype = BlockSubtype::from_str(get_str(v, "subtype")?)?;
    let n = get_i64(v, "n")?;
    if n < 1 {
        return Err(Error::parse("block size must be positive"));
    }
    let lambda = GaussianRational::parse(get_str(v, "lambda")?)?;
    let sign = match v.get("sign") {
        Some(s) => Sign::from_i64(
            s.as_i64()
                .ok_or_else(|| Error::parse("sign must be 1 or -1"))?,
        )?,
        None => Sign::Plus,
    };
    let epsilon = Sign::from_i64(get_i64(v, "epsilon")?)?;
    CanonicalBlock::new(
        case,
        Some(involution),
        subtype,
        n as usize,
        lambda,
        sign,
        epsilon,
    )
}

pub fn blocks_to_json(blocks: &[CanonicalBlock]) -> Value {
    Value::Array(blocks.iter().map(block_to_json).collect())
}

pub fn blocks_from_json(v: &Value) -> Result<Vec<CanonicalBlock>> {
    let arr = v
        .as_array()
        .ok_or_else(|| Error::parse("expected a JSON array of block descriptors"))?;
    if arr.is_empty() {
        return Err(Error::parse("block list is empty"));
    }
    arr.iter().map(block_from_json).collect()
}

// ---------------------------------------------------------------------------
// Decomposition reports
// ---------------------------------------------------------------------------

pub fn decomposition_to_json(pair: &AnyPair, d: &Decomposition) -> Value {
    let dom = pair.domain();
    let jordan: Vec<Value> = d
        .jordan
        .eigenvalues
        .iter()
        .map(|(lambda, sizes)| {
            json!({
                "lambda": lambda.to_string(),
                "sizes": sizes,
            })
        })
        .collect();
    let signs: Vec<Value> = d
        .sign_evidence
        .iter()
        .map(|ev| {
            json!({
                "lambda": ev.lambda.to_string(),
                "size": ev.size,
                "residue_field": ev.residue_field.as_str(),
                "gram": ev.gram,
                "plus": ev.counts.plus,
                "minus": ev.counts.minus,
            })
        })
        .collect();
    json!({
        "case": dom.case.as_str(),
        "involution": dom.involution.as_str(),
        "epsilon": pair.epsilon().to_i64(),
        "dimension": pair.dim(),
        "blocks": blocks_to_json(&d.blocks),
        "certificate": {
            "jordan": jordan,
            "signs": signs,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rat_i64;

    #[test]
    fn pair_roundtrip() {
        let block = CanonicalBlock::new(
            CaseTag::B,
            None,
            BlockSubtype::Unimodular,
            2,
            GaussianRational::new(rat_i64(3, 5), rat_i64(4, 5)),
            Sign::Minus,
            Sign::Plus,
        )
        .unwrap();
        let pair = block.build().unwrap();
        let v = pair_to_json(&pair);
        let back = pair_from_json(&v).unwrap();
        assert_eq!(pair, back);
    }

    #[test]
    fn quaternion_pair_roundtrip() {
        let block = CanonicalBlock::new(
            CaseTag::D,
            Some(Involution::QuaternionSemiconjugation),
            BlockSubtype::Unimodular,
            1,
            GaussianRational::i(),
            Sign::Plus,
            Sign::Minus,
        )
        .unwrap();
        let pair = block.build().unwrap();
        let v = pair_to_json(&pair);
        assert_eq!(v["involution"], "semiconjugation");
        let back = pair_from_json(&v).unwrap();
        assert_eq!(pair, back);
    }

    #[test]
    fn block_descriptor_roundtrip() {
        let text =
            r#"{"case":"B","subtype":"uni","n":2,"lambda":"3/5+4/5*i","sign":1,"epsilon":1}"#;
        let v: Value = serde_json::from_str(text).unwrap();
        let block = block_from_json(&v).unwrap();
        assert_eq!(block.n, 2);
        let back = block_from_json(&block_to_json(&block)).unwrap();
        assert_eq!(block, back);
    }

    #[test]
    fn invalid_pair_rejected() {
        let text =
            r#"{"case":"C","epsilon":1,"A":[["1","0"],["0","1"]],"B":[["1","0"],["0","0"]]}"#;
        let v: Value = serde_json::from_str(text).unwrap();
        let err = pair_from_json(&v).unwrap_err();
        assert!(err.to_string().contains("wild"));
    }
}
