//! Resolving gadget names: built-in catalog, mutation fixtures, then the user library.

use std::path::{Path, PathBuf};

use pushpush::gadgets::{self, parse_gadget_file, BehaviorContract, GadgetTemplate, LibraryError};

pub const GADGET_DIR_VAR: &str = "PUSHPUSH_GADGET_DIR";
pub const GADGET_EXT: &str = "gadget";

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Source {
    Catalog,
    Mutation,
    Library,
    File,
}

#[derive(Debug, Clone)]
pub struct ResolvedGadget {
    pub template: GadgetTemplate,
    pub contract: BehaviorContract,
    pub source: Source,
}

#[derive(Debug, thiserror::Error)]
pub enum GadgetLookupError {
    #[error("unknown gadget {0:?}")]
    Unknown(String),
    #[error("{path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Parse { path: PathBuf, source: LibraryError },
}

pub fn library_dir() -> Option<PathBuf> {
    std::env::var_os(GADGET_DIR_VAR).map(PathBuf::from)
}

fn load_file(path: &Path, source: Source) -> Result<ResolvedGadget, GadgetLookupError> {
    let text = std::fs::read_to_string(path).map_err(|e| GadgetLookupError::Read {
        path: path.to_path_buf(),
        source: e,
    })?;
    let file = parse_gadget_file(&text).map_err(|e| GadgetLookupError::Parse {
        path: path.to_path_buf(),
        source: e,
    })?;
    Ok(ResolvedGadget {
        template: file.template,
        contract: file.contract,
        source,
    })
}

/// Looks `name` up in the catalog, the mutation fixtures, `$PUSHPUSH_GADGET_DIR/<name>.gadget`,
/// and finally as a file path.
pub fn resolve(name: &str) -> Result<ResolvedGadget, GadgetLookupError> {
    match resolve_named(name) {
        Err(GadgetLookupError::Unknown(_)) if Path::new(name).is_file() => load_file(Path::new(name), Source::File),
        other => other,
    }
}

/// [`resolve`] without the file-path fallback.
pub fn resolve_named(name: &str) -> Result<ResolvedGadget, GadgetLookupError> {
    if let Some(e) = gadgets::lookup(name) {
        return Ok(ResolvedGadget {
            template: e.template,
            contract: e.contract,
            source: Source::Catalog,
        });
    }
    if let Some(e) = gadgets::mutation(name) {
        return Ok(ResolvedGadget {
            template: e.template,
            contract: e.contract,
            source: Source::Mutation,
        });
    }
    let plain = !name.is_empty() && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-');
    if plain {
        if let Some(dir) = library_dir() {
            let p = dir.join(format!("{name}.{GADGET_EXT}"));
            if p.is_file() {
                return load_file(&p, Source::Library);
            }
        }
    }
    Err(GadgetLookupError::Unknown(name.to_string()))
}

/// Names offered to clients, in catalog order, then mutations, then sorted library entries.
pub fn list() -> Vec<(String, Source)> {
    let mut out: Vec<(String, Source)> = gadgets::catalog().into_iter().map(|e| (e.template.name, Source::Catalog)).collect();
    out.extend(gadgets::mutations().into_iter().map(|e| (e.template.name, Source::Mutation)));
    if let Some(dir) = library_dir() {
        let mut names: Vec<String> = std::fs::read_dir(dir)
            .into_iter()
            .flatten()
            .flatten()
            .map(|e| e.path())
            .filter(|p| p.extension().is_some_and(|x| x == GADGET_EXT))
            .filter_map(|p| p.file_stem().map(|s| s.to_string_lossy().into_owned()))
            .collect();
        names.sort();
        out.extend(names.into_iter().map(|n| (n, Source::Library)));
    }
    out
}
