use std::collections::HashMap;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde_json::{Map, Value};

use super::{ItemKind, Theory, TheoryError, TheoryItem};
use crate::kernel::{HolType, Signature};
use crate::proof::{LinearProof, LinearProofItem, ProofId};
use crate::syntax::{self, is_identifier, VarContext};

/// Loads theory files and their imports, each at most once.
pub struct Loader {
    search_path: Vec<PathBuf>,
    loaded: HashMap<String, Arc<Theory>>,
    stack: Vec<String>,
}

/// Loads the theory at `path`, resolving imports through `search_path` and
/// then the file's own directory.
pub fn load_theory(path: &Path, search_path: &[PathBuf]) -> Result<Arc<Theory>, TheoryError> {
    Loader::new(search_path.to_vec()).load_file(path)
}

impl Loader {
    pub fn new(search_path: Vec<PathBuf>) -> Self {
        Loader {
            search_path,
            loaded: HashMap::new(),
            stack: Vec::new(),
        }
    }

    /// Theories loaded so far, by name.
    pub fn loaded(&self) -> impl Iterator<Item = &Arc<Theory>> {
        self.loaded.values()
    }

    pub fn load_file(&mut self, path: &Path) -> Result<Arc<Theory>, TheoryError> {
        let text = std::fs::read_to_string(path).map_err(|e| TheoryError::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
        self.load_str(&text, &path.display().to_string(), path.parent())
    }

    /// Loads a theory from JSON text. `file` names it in error messages and
    /// `dir` is searched for imports after the search path.
    pub fn load_str(&mut self, text: &str, file: &str, dir: Option<&Path>) -> Result<Arc<Theory>, TheoryError> {
        let json: Value = serde_json::from_str(text).map_err(|e| TheoryError::Json {
            path: file.to_string(),
            message: e.to_string(),
        })?;
        self.load_value(&json, file, dir)
    }

    fn load_value(&mut self, json: &Value, file: &str, dir: Option<&Path>) -> Result<Arc<Theory>, TheoryError> {
        let r = Reader { file };
        let top = r.object(json, "$")?;
        let name = r.string(r.field(top, "name", "$")?, "$.name")?.to_string();
        if let Some(pos) = self.stack.iter().position(|n| *n == name) {
            let mut chain = self.stack[pos..].to_vec();
            chain.push(name);
            return Err(TheoryError::ImportCycle(chain));
        }
        let imports = r.array(r.field(top, "imports", "$")?, "$.imports")?;
        let content = r.array(r.field(top, "content", "$")?, "$.content")?;
        let mut extra = Map::new();
        for (k, v) in top {
            if !["name", "imports", "content"].contains(&k.as_str()) {
                extra.insert(k.clone(), v.clone());
            }
        }

        self.stack.push(name.clone());
        let deps = (|| {
            let mut deps = Vec::new();
            for (i, imp) in imports.iter().enumerate() {
                let imp = r.string(imp, &format!("$.imports[{i}]"))?;
                deps.push(self.resolve(imp, dir)?);
            }
            Ok(deps)
        })();
        self.stack.pop();
        let mut thy = Theory::new(name.clone(), deps?)?;
        thy.extra = extra;
        for (i, item) in content.iter().enumerate() {
            let item = r.item(item, i, thy.signature())?;
            thy.push(item)?;
        }
        let thy = Arc::new(thy);
        self.loaded.insert(name, thy.clone());
        Ok(thy)
    }

    fn resolve(&mut self, name: &str, dir: Option<&Path>) -> Result<Arc<Theory>, TheoryError> {
        if let Some(t) = self.loaded.get(name) {
            return Ok(t.clone());
        }
        if self.stack.iter().any(|n| n == name) {
            let pos = self.stack.iter().position(|n| n == name).unwrap();
            let mut chain = self.stack[pos..].to_vec();
            chain.push(name.to_string());
            return Err(TheoryError::ImportCycle(chain));
        }
        let file = format!("{name}.json");
        let path = self
            .search_path
            .iter()
            .map(PathBuf::as_path)
            .chain(dir)
            .map(|d| d.join(&file))
            .find(|p| p.is_file())
            .ok_or_else(|| TheoryError::ImportNotFound(name.to_string()))?;
        let thy = self.load_file(&path)?;
        if thy.name != name {
            return Err(TheoryError::Schema {
                file: path.display().to_string(),
                at: "$.name".into(),
                message: format!("imported as `{name}` but declares `{}`", thy.name),
            });
        }
        Ok(thy)
    }
}

struct Reader<'a> {
    file: &'a str,
}

const UNSUPPORTED_TAGS: [&str; 4] = ["type.ind", "def.ind", "def.pred", "inductive"];

impl Reader<'_> {
    fn schema(&self, at: &str, message: impl Into<String>) -> TheoryError {
        TheoryError::Schema {
            file: self.file.to_string(),
            at: at.to_string(),
            message: message.into(),
        }
    }

    fn parse_err(&self, at: &str, error: syntax::ParseError) -> TheoryError {
        TheoryError::Parse {
            file: self.file.to_string(),
            at: at.to_string(),
            error,
        }
    }

    fn object<'v>(&self, v: &'v Value, at: &str) -> Result<&'v Map<String, Value>, TheoryError> {
        v.as_object().ok_or_else(|| self.schema(at, "expected an object"))
    }

    fn array<'v>(&self, v: &'v Value, at: &str) -> Result<&'v Vec<Value>, TheoryError> {
        v.as_array().ok_or_else(|| self.schema(at, "expected an array"))
    }

    fn string<'v>(&self, v: &'v Value, at: &str) -> Result<&'v str, TheoryError> {
        v.as_str().ok_or_else(|| self.schema(at, "expected a string"))
    }

    fn natural(&self, v: &Value, at: &str) -> Result<u64, TheoryError> {
        v.as_u64().ok_or_else(|| self.schema(at, "expected a non-negative integer"))
    }

    fn field<'v>(&self, obj: &'v Map<String, Value>, key: &str, at: &str) -> Result<&'v Value, TheoryError> {
        obj.get(key).ok_or_else(|| self.schema(at, format!("missing key `{key}`")))
    }

    fn ty(&self, v: &Value, at: &str, sig: &Signature) -> Result<HolType, TheoryError> {
        let s = self.string(v, at)?;
        syntax::parse_type(s, sig).map_err(|e| self.parse_err(at, e))
    }

    fn vars(&self, v: &Value, at: &str, sig: &Signature) -> Result<VarContext, TheoryError> {
        let obj = self.object(v, at)?;
        let mut ctx = VarContext::new();
        for (name, ty) in obj {
            let at = format!("{at}.{name}");
            if !is_identifier(name) {
                return Err(self.schema(&at, format!("`{name}` is not a valid variable name")));
            }
            ctx.insert(name.as_str(), self.ty(ty, &at, sig)?);
        }
        Ok(ctx)
    }

    fn item(&self, v: &Value, index: usize, sig: &Signature) -> Result<TheoryItem, TheoryError> {
        let at = format!("$.content[{index}]");
        let obj = self.object(v, &at)?;
        let tag = self.string(self.field(obj, "ty", &at)?, &format!("{at}.ty"))?;
        let known: &[&str] = match tag {
            "type.ax" => &["ty", "name", "arity"],
            "def.ax" => &["ty", "name", "type"],
            "thm.ax" => &["ty", "name", "vars", "prop"],
            "def" => &["ty", "name", "type", "prop"],
            "thm" => &["ty", "name", "vars", "prop", "proof", "attributes", "num_gaps"],
            t if UNSUPPORTED_TAGS.contains(&t) => {
                return Err(TheoryError::UnsupportedItem {
                    file: self.file.to_string(),
                    index,
                    ty: t.to_string(),
                })
            }
            t => return Err(self.schema(&format!("{at}.ty"), format!("unknown item kind `{t}`"))),
        };
        let key = |k: &str| format!("{at}.{k}");
        let get = |k: &str| self.field(obj, k, &at);
        let name = self.string(get("name")?, &key("name"))?.to_string();
        if !is_identifier(&name) {
            return Err(self.schema(&key("name"), format!("`{name}` is not a valid name")));
        }
        let prop_in = |ctx: &VarContext, sig: &Signature| -> Result<_, TheoryError> {
            let s = self.string(get("prop")?, &key("prop"))?;
            syntax::parse_prop(s, ctx, sig).map_err(|e| self.parse_err(&key("prop"), e))
        };
        let kind = match tag {
            "type.ax" => {
                let arity = self.natural(get("arity")?, &key("arity"))?;
                ItemKind::TypeDecl { arity: arity as usize }
            }
            "def.ax" => ItemKind::ConstDecl {
                ty: self.ty(get("type")?, &key("type"), sig)?,
            },
            "thm.ax" => {
                let vars = self.vars(get("vars")?, &key("vars"), sig)?;
                let prop = prop_in(&vars, sig)?;
                ItemKind::Axiom { vars, prop }
            }
            "def" => {
                let ty = self.ty(get("type")?, &key("type"), sig)?;
                let mut extended = sig.clone();
                if !extended.has_const(&name) {
                    extended
                        .add_const(&name, ty.clone())
                        .map_err(|e| super::TheoryError::kernel(&name, e))?;
                }
                let prop = prop_in(&VarContext::new(), &extended)?;
                ItemKind::Definition { ty, prop }
            }
            _ => {
                let vars = self.vars(get("vars")?, &key("vars"), sig)?;
                let prop = prop_in(&vars, sig)?;
                let proof = self.proof(get("proof")?, &key("proof"), &vars, sig)?;
                let attributes = match obj.get("attributes") {
                    None => None,
                    Some(v) => Some(
                        self.array(v, &key("attributes"))?
                            .iter()
                            .enumerate()
                            .map(|(i, a)| self.string(a, &format!("{at}.attributes[{i}]")).map(str::to_string))
                            .collect::<Result<Vec<_>, _>>()?,
                    ),
                };
                let num_gaps = match obj.get("num_gaps") {
                    None => None,
                    Some(v) => Some(self.natural(v, &key("num_gaps"))?),
                };
                ItemKind::Theorem {
                    vars,
                    prop,
                    proof,
                    attributes,
                    num_gaps,
                }
            }
        };
        let mut extra = Map::new();
        for (k, v) in obj {
            if !known.contains(&k.as_str()) {
                extra.insert(k.clone(), v.clone());
            }
        }
        Ok(TheoryItem { name, kind, extra })
    }

    fn proof(&self, v: &Value, at: &str, vars: &VarContext, sig: &Signature) -> Result<LinearProof, TheoryError> {
        let mut items = Vec::new();
        for (i, step) in self.array(v, at)?.iter().enumerate() {
            let at = format!("{at}[{i}]");
            let obj = self.object(step, &at)?;
            for k in obj.keys() {
                if !["id", "rule", "args", "prevs", "th"].contains(&k.as_str()) {
                    return Err(self.schema(&at, format!("unknown key `{k}` in proof step")));
                }
            }
            let id_at = format!("{at}.id");
            let id: ProofId = self
                .string(self.field(obj, "id", &at)?, &id_at)?
                .parse()
                .map_err(|e: String| self.schema(&id_at, e))?;
            let rule = self.string(self.field(obj, "rule", &at)?, &format!("{at}.rule"))?.to_string();
            let args = match obj.get("args") {
                Some(a) => self.string(a, &format!("{at}.args"))?.to_string(),
                None => String::new(),
            };
            let prevs = match obj.get("prevs") {
                Some(p) => self
                    .array(p, &format!("{at}.prevs"))?
                    .iter()
                    .enumerate()
                    .map(|(j, p)| {
                        let pat = format!("{at}.prevs[{j}]");
                        self.string(p, &pat)?.parse().map_err(|e: String| self.schema(&pat, e))
                    })
                    .collect::<Result<Vec<ProofId>, _>>()?,
                None => Vec::new(),
            };
            let th = match obj.get("th") {
                Some(t) => {
                    let th_at = format!("{at}.th");
                    let s = self.string(t, &th_at)?;
                    Some(syntax::parse_sequent(s, vars, sig).map_err(|e| self.parse_err(&th_at, e))?)
                }
                None => None,
            };
            items.push(LinearProofItem {
                id,
                rule,
                args,
                prevs,
                th,
            });
        }
        Ok(LinearProof { items })
    }
}
