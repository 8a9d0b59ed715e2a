//! Input resolution: `.dgc` files, `.sset` files, and named builtins.

use std::path::Path;
use std::sync::Arc;

use cohh_core::dgcore::{builtin, DgCoalgebra, DgcDocument};
use cohh_core::simplicial::{aw_coalgebra, aw_coalgebra_unreduced, builtin_sset, parse_sset, FiniteSimplicialSet};
use cohh_core::{FieldSpec, GradedMap, Scalar};

use crate::Failure;

#[derive(Clone, Debug)]
pub enum Source {
    Dgc { name: String, doc: DgcDocument },
    Sset(FiniteSimplicialSet),
    Builtin(String),
}

/// `builtin:NAME` names a dg coalgebra, `sset:NAME` a simplicial set;
/// anything else is a path, read as `.sset` by extension and `.dgc` otherwise.
pub fn load(spec: &str) -> Result<Source, Failure> {
    if let Some(name) = spec.strip_prefix("builtin:") {
        return Ok(Source::Builtin(name.to_string()));
    }
    if let Some(name) = spec.strip_prefix("sset:") {
        return builtin_sset(name).map(Source::Sset).map_err(|e| Failure::Parse(e.to_string()));
    }
    let path = Path::new(spec);
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Io(format!("{spec}: {e}")))?;
    let name = path.file_stem().and_then(|s| s.to_str()).unwrap_or("input").to_string();
    if path.extension().is_some_and(|e| e == "sset") {
        let k = parse_sset(&name, &text).map_err(|e| Failure::Parse(format!("{spec}: {e}")))?;
        Ok(Source::Sset(k))
    } else {
        let doc = DgcDocument::parse(&text).map_err(|e| Failure::Parse(format!("{spec}: {e}")))?;
        Ok(Source::Dgc { name, doc })
    }
}

impl Source {
    pub fn declared_field(&self) -> Option<FieldSpec> {
        match self {
            Source::Dgc { doc, .. } => doc.field,
            _ => None,
        }
    }

    /// Simplicial sets go through the Alexander–Whitney coalgebra; with more
    /// than one vertex it is not coaugmented.
    pub fn coalgebra<S: Scalar>(&self) -> Result<Arc<DgCoalgebra<S>>, Failure> {
        let c = match self {
            Source::Dgc { name, doc } => doc.coalgebra(name).map_err(parse_or_invalid)?,
            Source::Sset(k) if k.vertices().len() == 1 => aw_coalgebra(k).map_err(Failure::from)?,
            Source::Sset(k) => aw_coalgebra_unreduced(k).map_err(Failure::from)?,
            Source::Builtin(name) => return builtin(name).map_err(|e| Failure::Parse(e.to_string())),
        };
        Ok(Arc::new(c))
    }

    pub fn braiding<S: Scalar>(&self, c: &Arc<DgCoalgebra<S>>) -> Result<Option<(GradedMap<S>, GradedMap<S>)>, Failure> {
        match self {
            Source::Dgc { doc, .. } => doc.braiding(c).map_err(parse_or_invalid),
            _ => Ok(None),
        }
    }

    pub fn simplicial_set(&self) -> Option<&FiniteSimplicialSet> {
        match self {
            Source::Sset(k) => Some(k),
            _ => None,
        }
    }
}

fn parse_or_invalid(e: cohh_core::Error) -> Failure {
    match e {
        cohh_core::Error::Parse { .. } | cohh_core::Error::Field(_) => Failure::Parse(e.to_string()),
        e => Failure::Invalid(e.to_string()),
    }
}
