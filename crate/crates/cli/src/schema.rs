//! A small JSON Schema checker covering the subset the report schema
//! uses: `type`, `enum`, `required`, `properties`, `additionalProperties`,
//! `items`, and `minimum`. It keeps the emitted report and the shipped
//! schema in lockstep without pulling in a full validator; external tools
//! can still run a complete implementation against the same file.

use serde_json::Value;

/// The schema the `report` command guarantees, compiled into the binary.
pub const REPORT_SCHEMA: &str = include_str!("../schemas/report.schema.json");

pub fn validate(schema: &Value, value: &Value) -> Result<(), String> {
    validate_at(schema, value, "$", schema)
}

/// Parses the shipped schema and checks `value` against it.
pub fn validate_report(value: &Value) -> Result<(), String> {
    let schema: Value =
        serde_json::from_str(REPORT_SCHEMA).map_err(|e| format!("schema file is broken: {e}"))?;
    validate(&schema, value)
}

fn validate_at(schema: &Value, value: &Value, path: &str, root: &Value) -> Result<(), String> {
    let rules = match schema.as_object() {
        Some(rules) => rules,
        None => return Ok(()),
    };
    if let Some(target) = rules.get("$ref").and_then(Value::as_str) {
        let pointer = target
            .strip_prefix('#')
            .ok_or_else(|| format!("{path}: only local $ref targets are supported"))?;
        let resolved = root
            .pointer(pointer)
            .ok_or_else(|| format!("{path}: dangling $ref `{target}`"))?;
        return validate_at(resolved, value, path, root);
    }
    if let Some(ty) = rules.get("type") {
        check_type(ty, value, path)?;
    }
    if let Some(allowed) = rules.get("enum").and_then(Value::as_array) {
        if !allowed.contains(value) {
            return Err(format!("{path}: value is not in the allowed set"));
        }
    }
    if let Some(min) = rules.get("minimum").and_then(Value::as_f64) {
        if let Some(x) = value.as_f64() {
            if x < min {
                return Err(format!("{path}: {x} is below the minimum {min}"));
            }
        }
    }
    // Object keywords apply only when the instance is an object; the
    // `type` keyword is what polices the shape itself.
    if let Some(map) = value.as_object() {
        if let Some(fields) = rules.get("required").and_then(Value::as_array) {
            for field in fields.iter().filter_map(Value::as_str) {
                if !map.contains_key(field) {
                    return Err(format!("{path}: missing required key `{field}`"));
                }
            }
        }
        if let Some(props) = rules.get("properties").and_then(Value::as_object) {
            for (key, sub) in props {
                if let Some(v) = map.get(key) {
                    validate_at(sub, v, &format!("{path}.{key}"), root)?;
                }
            }
            if rules.get("additionalProperties").and_then(Value::as_bool) == Some(false) {
                for key in map.keys() {
                    if !props.contains_key(key) {
                        return Err(format!("{path}: unexpected key `{key}`"));
                    }
                }
            }
        }
    }
    if let Some(items) = rules.get("items") {
        if let Some(arr) = value.as_array() {
            for (i, v) in arr.iter().enumerate() {
                validate_at(items, v, &format!("{path}[{i}]"), root)?;
            }
        }
    }
    Ok(())
}

fn check_type(ty: &Value, value: &Value, path: &str) -> Result<(), String> {
    let matches_name = |name: &str| match name {
        "object" => value.is_object(),
        "array" => value.is_array(),
        "string" => value.is_string(),
        "boolean" => value.is_boolean(),
        "integer" => value.as_i64().is_some() || value.as_u64().is_some(),
        "number" => value.is_number(),
        "null" => value.is_null(),
        _ => false,
    };
    let ok = match ty {
        Value::String(name) => matches_name(name),
        Value::Array(names) => names.iter().filter_map(Value::as_str).any(matches_name),
        _ => true,
    };
    if ok {
        Ok(())
    } else {
        Err(format!("{path}: wrong type, expected {ty}"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn accepts_a_conforming_object() {
        let schema = json!({
            "type": "object",
            "required": ["name", "passed"],
            "properties": {
                "name": {"type": "string"},
                "passed": {"type": "boolean"},
                "scores": {"type": "array", "items": {"type": "number", "minimum": 0}}
            },
            "additionalProperties": false
        });
        let value = json!({"name": "x", "passed": true, "scores": [0.5, 2]});
        assert_eq!(validate(&schema, &value), Ok(()));
    }

    #[test]
    fn rejects_missing_keys_wrong_types_and_extras() {
        let schema = json!({
            "type": "object",
            "required": ["name"],
            "properties": {"name": {"type": "string"}},
            "additionalProperties": false
        });
        assert!(validate(&schema, &json!({})).is_err());
        assert!(validate(&schema, &json!({"name": 3})).is_err());
        assert!(validate(&schema, &json!({"name": "x", "extra": 1})).is_err());
        assert!(validate(&schema, &json!([])).is_err());
    }

    #[test]
    fn union_types_and_enums_work() {
        let schema = json!({"type": ["object", "null"]});
        assert_eq!(validate(&schema, &json!(null)), Ok(()));
        assert!(validate(&schema, &json!(3)).is_err());
        let schema = json!({"enum": ["report"]});
        assert_eq!(validate(&schema, &json!("report")), Ok(()));
        assert!(validate(&schema, &json!("other")).is_err());
    }

    #[test]
    fn local_references_resolve() {
        let schema = json!({
            "type": "object",
            "properties": {"rows": {"$ref": "#/definitions/rows"}},
            "definitions": {"rows": {"type": "array", "items": {"type": "integer"}}}
        });
        assert_eq!(validate(&schema, &json!({"rows": [1, 2]})), Ok(()));
        assert!(validate(&schema, &json!({"rows": ["x"]})).is_err());
        let dangling = json!({"$ref": "#/definitions/missing"});
        assert!(validate(&dangling, &json!(1)).is_err());
    }

    #[test]
    fn nullable_objects_skip_object_keywords() {
        let schema = json!({
            "type": ["object", "null"],
            "required": ["a"],
            "properties": {"a": {"type": "integer"}}
        });
        assert_eq!(validate(&schema, &json!(null)), Ok(()));
        assert_eq!(validate(&schema, &json!({"a": 1})), Ok(()));
        assert!(validate(&schema, &json!({})).is_err());
    }

    #[test]
    fn the_shipped_schema_parses() {
        let schema: Value = serde_json::from_str(REPORT_SCHEMA).unwrap();
        assert_eq!(schema["properties"]["command"]["enum"][0], json!("report"));
    }
}
