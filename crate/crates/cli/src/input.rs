//! Loading JSON inputs with error messages that name the file, the line and
//! the offending field.

use std::path::Path;
use std::sync::Arc;

use serde::de::DeserializeOwned;

use poisset_core::io::{BracketDoc, PosetDoc, SigmaDoc};
use poisset_core::{Bracket, Poset, RingSpec, SigmaMap};

/// A usage, input or I/O problem; reported on stderr with exit status 2.
#[derive(Debug)]
pub struct Failure(pub String);

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure(format!("{}: {e}", path.display())))?;
    let de = &mut serde_json::Deserializer::from_str(&text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let field = e.path().to_string();
        let inner = e.inner();
        Failure(format!(
            "{}:{}:{}: field `{}`: {}",
            path.display(),
            inner.line(),
            inner.column(),
            field,
            inner
        ))
    })
}

fn semantic(path: &Path, e: poisset_core::Error) -> Failure {
    Failure(format!("{}: {e}", path.display()))
}

pub fn load_poset(path: &Path) -> Result<Poset, Failure> {
    let doc: PosetDoc = read_json(path)?;
    doc.to_poset().map_err(|e| semantic(path, e))
}

pub fn load_bracket(path: &Path, p: &Arc<Poset>, ring: &RingSpec, antisymmetric: bool) -> Result<Bracket, Failure> {
    let doc: BracketDoc = read_json(path)?;
    doc.to_bracket(p, ring, antisymmetric).map_err(|e| semantic(path, e))
}

pub fn load_sigma(path: &Path, p: &Arc<Poset>, ring: &RingSpec) -> Result<SigmaMap, Failure> {
    let doc: SigmaDoc = read_json(path)?;
    doc.to_sigma(p, ring).map_err(|e| semantic(path, e))
}
