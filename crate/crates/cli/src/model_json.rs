//! JSON serialization of surface models: components as tag strings,
//! intersection entries as [idA, idB, "p/q"] triples, singular points as
//! records with type pair and "p/q" multiplicity.

use bdivisor_core::rat::ratio_string;
use bdivisor_core::surface::{ModelKind, SurfaceModel};
use serde_json::{json, Value};

pub fn surface_model_to_json(model: &SurfaceModel) -> Value {
    let components: Vec<String> = model.components.iter().map(|c| c.to_string()).collect();
    let entries: Vec<Value> = model
        .form
        .entries()
        .map(|((a, b), q)| json!([a.to_string(), b.to_string(), ratio_string(q)]))
        .collect();
    let singular: Vec<Value> = model
        .singular_points
        .iter()
        .map(|p| {
            json!({
                "components": [p.at.0.to_string(), p.at.1.to_string()],
                "type": [p.kind.0, p.kind.1],
                "multiplicity": ratio_string(&p.multiplicity),
            })
        })
        .collect();
    let history: Vec<Value> = model
        .blowup_history
        .iter()
        .map(|r| {
            json!({
                "at": [r.point.at.0.to_string(), r.point.at.1.to_string()],
                "type": [r.point.kind.0, r.point.kind.1],
                "exceptional": r.exceptional_serial,
            })
        })
        .collect();
    json!({
        "level": match model.kind {
            ModelKind::Elliptic(l) => Value::from(l.n()),
            ModelKind::Synthetic => Value::Null,
        },
        "blowups": model.blowup_history.len(),
        "components": components,
        "intersection_form": entries,
        "singular_points": singular,
        "blowup_history": history,
    })
}
