use serde_json::{json, Value};

use crate::Topic;

const DEFS: &str = include_str!("../schemas/defs.json");

fn source(topic: Topic) -> (&'static str, &'static str) {
    match topic {
        Topic::Rr => ("rr", include_str!("../schemas/rr.json")),
        Topic::Intersect => ("intersect", include_str!("../schemas/intersect.json")),
        Topic::Canonical => ("canonical", include_str!("../schemas/canonical.json")),
        Topic::Twist => ("twist", include_str!("../schemas/twist.json")),
        Topic::Invariants => ("invariants", include_str!("../schemas/invariants.json")),
        Topic::Walls => ("walls", include_str!("../schemas/walls.json")),
        Topic::Suitable => ("suitable", include_str!("../schemas/suitable.json")),
        Topic::CertifyDv0 => ("certify-dv0", include_str!("../schemas/certify-dv0.json")),
        Topic::FamilyDim => ("family-dim", include_str!("../schemas/family-dim.json")),
        Topic::ModuliDim => ("moduli-dim", include_str!("../schemas/moduli-dim.json")),
        Topic::Classify => ("classify", include_str!("../schemas/classify.json")),
        Topic::Stability => ("stability", include_str!("../schemas/stability.json")),
    }
}

/// Request, result and envelope schemas for one subcommand, with the shared
/// definitions inlined under `$defs`.
pub fn schema_for(topic: Topic) -> Value {
    let (name, text) = source(topic);
    let body: Value = serde_json::from_str(text).expect("bundled schema is valid JSON");
    let defs: Value = serde_json::from_str(DEFS).expect("bundled schema is valid JSON");
    json!({
        "$schema": "https://json-schema.org/draft/2020-12/schema",
        "subcommand": name,
        "request": body["request"],
        "result": body["result"],
        "envelope": {"$ref": "#/$defs/envelope"},
        "$defs": defs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::ValueEnum;

    #[test]
    fn every_schema_parses_and_resolves() {
        for topic in Topic::value_variants() {
            let s = schema_for(*topic);
            assert!(s["request"].is_object());
            assert!(s["result"].is_object());
            let text = s.to_string();
            for piece in text.split("\"#/$defs/").skip(1) {
                let name = piece.split('"').next().unwrap();
                assert!(s["$defs"].get(name).is_some(), "{name} undefined");
            }
        }
    }
}
