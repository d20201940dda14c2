use std::path::Path;

use serde_json::{json, Map, Value};

use super::{ItemKind, Theory, TheoryError};
use crate::kernel::Signature;
use crate::proof::LinearProof;
use crate::syntax::{print_type, Printer, VarContext};

/// Serializes a theory in canonical key order.
pub fn to_json(thy: &Theory) -> Result<Value, TheoryError> {
    let mut content = Vec::new();
    for (i, item) in thy.items().iter().enumerate() {
        let sig = thy.signature_before(i);
        let unprintable = |e| TheoryError::InvalidItem {
            item: item.name.clone(),
            reason: format!("cannot print: {e}"),
        };
        let mut obj = Map::new();
        obj.insert("ty".into(), json!(item.tag()));
        obj.insert("name".into(), json!(item.name));
        match &item.kind {
            ItemKind::TypeDecl { arity } => {
                obj.insert("arity".into(), json!(arity));
            }
            ItemKind::ConstDecl { ty } => {
                obj.insert("type".into(), json!(print_type(ty)));
            }
            ItemKind::Axiom { vars, prop } => {
                obj.insert("vars".into(), vars_json(vars));
                let p = Printer::new(sig).with_ctx(vars).term(prop).map_err(unprintable)?;
                obj.insert("prop".into(), json!(p));
            }
            ItemKind::Definition { ty, prop } => {
                let mut extended = sig.clone();
                if !extended.has_const(&item.name) {
                    extended
                        .add_const(&item.name, ty.clone())
                        .map_err(|e| TheoryError::kernel(&item.name, e))?;
                }
                obj.insert("type".into(), json!(print_type(ty)));
                let p = Printer::new(&extended).term(prop).map_err(unprintable)?;
                obj.insert("prop".into(), json!(p));
            }
            ItemKind::Theorem {
                vars,
                prop,
                proof,
                attributes,
                num_gaps,
            } => {
                obj.insert("vars".into(), vars_json(vars));
                let p = Printer::new(sig).with_ctx(vars).term(prop).map_err(unprintable)?;
                obj.insert("prop".into(), json!(p));
                obj.insert("proof".into(), proof_json(proof, sig, vars).map_err(unprintable)?);
                if let Some(a) = attributes {
                    obj.insert("attributes".into(), json!(a));
                }
                if let Some(n) = num_gaps {
                    obj.insert("num_gaps".into(), json!(n));
                }
            }
        }
        for (k, v) in &item.extra {
            obj.insert(k.clone(), v.clone());
        }
        content.push(Value::Object(obj));
    }
    let mut top = Map::new();
    top.insert("name".into(), json!(thy.name));
    top.insert("imports".into(), json!(thy.imports));
    top.insert("content".into(), Value::Array(content));
    for (k, v) in &thy.extra {
        top.insert(k.clone(), v.clone());
    }
    Ok(Value::Object(top))
}

fn vars_json(vars: &VarContext) -> Value {
    let mut m = Map::new();
    for (n, ty) in vars.iter() {
        m.insert(n.to_string(), json!(print_type(ty)));
    }
    Value::Object(m)
}

fn proof_json(proof: &LinearProof, sig: &Signature, vars: &VarContext) -> Result<Value, crate::syntax::ParseError> {
    let printer = Printer::new(sig).with_ctx(vars);
    let mut steps = Vec::new();
    for item in &proof.items {
        let mut obj = Map::new();
        obj.insert("id".into(), json!(item.id.to_string()));
        obj.insert("rule".into(), json!(item.rule));
        obj.insert("args".into(), json!(item.args));
        let prevs: Vec<String> = item.prevs.iter().map(ToString::to_string).collect();
        obj.insert("prevs".into(), json!(prevs));
        if let Some(th) = &item.th {
            obj.insert("th".into(), json!(printer.sequent(th)?));
        }
        steps.push(Value::Object(obj));
    }
    Ok(Value::Array(steps))
}

/// Canonical text form: two-space indentation and a trailing newline.
pub fn to_json_string(thy: &Theory) -> Result<String, TheoryError> {
    let v = to_json(thy)?;
    let mut s = serde_json::to_string_pretty(&v).expect("JSON values always serialize");
    s.push('\n');
    Ok(s)
}

pub fn save_theory(thy: &Theory, path: &Path) -> Result<(), TheoryError> {
    let s = to_json_string(thy)?;
    std::fs::write(path, s).map_err(|e| TheoryError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}
