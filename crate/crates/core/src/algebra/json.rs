//! JSON (de)serialization of algebras and modal expansions.
//!
//! Format: `{"size": n, "ops": {name: nested array…}, "consts": {name: i},
//! "box": […], "diamond": […]}` where an op's arity is the nesting depth of
//! its table and element indices are 0-based.

use super::{AlgebraError, FiniteAlgebra, ModalExpansion, OpTable};
use serde_json::{json, Map, Value};

fn flatten_table(name: &str, value: &Value, n: usize) -> Result<OpTable, AlgebraError> {
    // measure nesting depth, then flatten level by level
    let mut arity = 0;
    let mut probe = value;
    while let Some(arr) = probe.as_array() {
        arity += 1;
        probe = arr.first().ok_or_else(|| AlgebraError::InvalidInput(format!(
            "operation `{name}`: empty table level"
        )))?;
    }
    if arity == 0 {
        return Err(AlgebraError::InvalidInput(format!(
            "operation `{name}` must be a (nested) array"
        )));
    }
    let mut table = Vec::with_capacity(n.pow(arity as u32));
    fn walk(name: &str, v: &Value, depth: usize, n: usize, out: &mut Vec<usize>) -> Result<(), AlgebraError> {
        if depth == 0 {
            let entry = v
                .as_u64()
                .ok_or_else(|| AlgebraError::InvalidInput(format!("operation `{name}`: non-integer entry")))?;
            out.push(entry as usize);
            return Ok(());
        }
        let arr = v.as_array().ok_or_else(|| {
            AlgebraError::InvalidInput(format!("operation `{name}`: ragged table"))
        })?;
        if arr.len() != n {
            return Err(AlgebraError::InvalidInput(format!(
                "operation `{name}`: level has {} entries, expected {n}",
                arr.len()
            )));
        }
        for item in arr {
            walk(name, item, depth - 1, n, out)?;
        }
        Ok(())
    }
    walk(name, value, arity, n, &mut table)?;
    Ok(OpTable { arity, table })
}

fn nest_table(op: &OpTable, n: usize) -> Value {
    fn build(slice: &[usize], depth: usize, n: usize) -> Value {
        if depth == 1 {
            return Value::Array(slice.iter().map(|&e| json!(e)).collect());
        }
        let chunk = slice.len() / n;
        Value::Array(slice.chunks(chunk).map(|c| build(c, depth - 1, n)).collect())
    }
    build(&op.table, op.arity, n)
}

pub fn algebra_from_json(value: &Value) -> Result<FiniteAlgebra, AlgebraError> {
    let obj = value
        .as_object()
        .ok_or_else(|| AlgebraError::InvalidInput("expected a JSON object".into()))?;
    let size = obj
        .get("size")
        .and_then(Value::as_u64)
        .ok_or_else(|| AlgebraError::InvalidInput("missing integer field `size`".into()))?
        as usize;
    if size == 0 {
        return Err(AlgebraError::InvalidInput("`size` must be positive".into()));
    }
    let mut algebra = FiniteAlgebra::new(size);
    if let Some(ops) = obj.get("ops") {
        let ops = ops
            .as_object()
            .ok_or_else(|| AlgebraError::InvalidInput("`ops` must be an object".into()))?;
        for (name, table) in ops {
            algebra.ops.insert(name.clone(), flatten_table(name, table, size)?);
        }
    }
    if let Some(consts) = obj.get("consts") {
        let consts = consts
            .as_object()
            .ok_or_else(|| AlgebraError::InvalidInput("`consts` must be an object".into()))?;
        for (name, v) in consts {
            let value = v.as_u64().ok_or_else(|| {
                AlgebraError::InvalidInput(format!("constant `{name}` must be an integer"))
            })? as usize;
            algebra.ops.insert(name.clone(), OpTable::constant(value));
        }
    }
    algebra.check_tables()?;
    Ok(algebra)
}

pub fn algebra_to_json(a: &FiniteAlgebra) -> Value {
    let mut ops = Map::new();
    let mut consts = Map::new();
    for (name, op) in &a.ops {
        if op.arity == 0 {
            consts.insert(name.clone(), json!(op.table[0]));
        } else {
            ops.insert(name.clone(), nest_table(op, a.size));
        }
    }
    let mut out = Map::new();
    out.insert("size".into(), json!(a.size));
    out.insert("ops".into(), Value::Object(ops));
    if !consts.is_empty() {
        out.insert("consts".into(), Value::Object(consts));
    }
    Value::Object(out)
}

/// Same format with required `box`/`diamond` arrays of length `size`.
pub fn expansion_from_json(value: &Value) -> Result<ModalExpansion, AlgebraError> {
    let base = algebra_from_json(value)?;
    let obj = value.as_object().unwrap();
    let unary = |field: &str| -> Result<Vec<usize>, AlgebraError> {
        let arr = obj
            .get(field)
            .and_then(Value::as_array)
            .ok_or_else(|| AlgebraError::InvalidInput(format!("missing array field `{field}`")))?;
        if arr.len() != base.size {
            return Err(AlgebraError::InvalidInput(format!(
                "`{field}` has {} entries, expected {}",
                arr.len(),
                base.size
            )));
        }
        arr.iter()
            .map(|v| {
                let e = v.as_u64().ok_or_else(|| {
                    AlgebraError::InvalidInput(format!("`{field}`: non-integer entry"))
                })? as usize;
                if e >= base.size {
                    return Err(AlgebraError::ElementOutOfRange(e));
                }
                Ok(e)
            })
            .collect()
    };
    let box_table = unary("box")?;
    let diamond_table = unary("diamond")?;
    Ok(ModalExpansion { base, box_table, diamond_table })
}

pub fn expansion_to_json(m: &ModalExpansion) -> Value {
    let mut out = algebra_to_json(&m.base);
    let obj = out.as_object_mut().unwrap();
    obj.insert("box".into(), json!(m.box_table));
    obj.insert("diamond".into(), json!(m.diamond_table));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{boolean2, lukasiewicz3, lukasiewicz3_modal};

    #[test]
    fn algebra_roundtrip_is_identity() {
        for a in [boolean2(), lukasiewicz3()] {
            assert_eq!(algebra_from_json(&algebra_to_json(&a)).unwrap(), a);
        }
    }

    #[test]
    fn expansion_roundtrip_is_identity() {
        let m = lukasiewicz3_modal();
        assert_eq!(expansion_from_json(&expansion_to_json(&m)).unwrap(), m);
    }

    #[test]
    fn hand_written_input_parses() {
        let src = r#"{
            "size": 2,
            "ops": {"meet": [[0,0],[0,1]], "join": [[0,1],[1,1]]},
            "consts": {"e": 1},
            "box": [0, 1],
            "diamond": [0, 1]
        }"#;
        let m = expansion_from_json(&serde_json::from_str(src).unwrap()).unwrap();
        assert_eq!(m.base.size, 2);
        assert_eq!(m.base.constant("e"), Ok(1));
        assert_eq!(m.base.meet(0, 1), 0);
        assert_eq!(m.box_table, vec![0, 1]);
    }

    #[test]
    fn arity_is_inferred_from_nesting() {
        let src = r#"{"size": 2, "ops": {"meet": [[0,0],[0,1]], "join": [[0,1],[1,1]], "neg": [1, 0]}}"#;
        let a = algebra_from_json(&serde_json::from_str(src).unwrap()).unwrap();
        assert_eq!(a.ops["neg"].arity, 1);
        assert_eq!(a.apply("neg", &[0]), Ok(1));
    }

    #[test]
    fn bad_inputs_are_rejected() {
        for src in [
            r#"{"ops": {}}"#,
            r#"{"size": 2, "ops": {"meet": [[0,0],[0]]}}"#,
            r#"{"size": 2, "ops": {"meet": [[0,0],[0,5]]}}"#,
            r#"{"size": 2, "ops": {"meet": [[0,0],[0,1]], "join": [[0,1],[1,1]]}, "box": [0]}"#,
        ] {
            let value: Value = serde_json::from_str(src).unwrap();
            let failed = algebra_from_json(&value).is_err() || expansion_from_json(&value).is_err();
            assert!(failed, "{src}");
        }
    }
}
