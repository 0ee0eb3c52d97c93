//! Reading input files, with line and field diagnostics on malformed JSON.

use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use serde::de::DeserializeOwned;

use fpforge_core::cell::PolygonalFile;
use fpforge_core::constructions::{Cover, CoverFile, DeckAction, DeckFile, VoltageAssignment, VoltageFile};
use fpforge_core::presentation::DirectedLoop;
use fpforge_core::{ComplexFile, PolygonalComplex, Presentation, SimplicialComplex};

pub const CORPUS_ENV: &str = "FPFORGE_CORPUS";

/// `$FPFORGE_CORPUS`, or the `corpus` directory shipped with the sources.
pub fn corpus_dir() -> PathBuf {
    match std::env::var_os(CORPUS_ENV) {
        Some(dir) => PathBuf::from(dir),
        None => Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus"),
    }
}

/// A relative path that does not exist but starts with `corpus/` is looked
/// up in [`corpus_dir`].
pub fn resolve(path: &Path) -> PathBuf {
    if path.exists() || path.is_absolute() {
        return path.to_path_buf();
    }
    match path.strip_prefix("corpus") {
        Ok(rest) => corpus_dir().join(rest),
        Err(_) => path.to_path_buf(),
    }
}

pub fn read_text(path: &Path) -> Result<String> {
    let p = resolve(path);
    std::fs::read_to_string(&p).with_context(|| format!("cannot read {}", p.display()))
}

/// Deserializes JSON, reporting the field path and position of the first error.
pub fn parse_json<T: DeserializeOwned>(text: &str, origin: &str) -> Result<T> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let inner = e.inner();
        let field = e.path().to_string();
        let message = inner.to_string();
        let message = message.rsplit_once(" at line ").map_or(message.as_str(), |(m, _)| m).to_string();
        anyhow!(
            "{origin}: line {} column {}: field `{}`: {}",
            inner.line(),
            inner.column(),
            if field.is_empty() { "." } else { &field },
            message
        )
    })
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    parse_json(&read_text(path)?, &path.display().to_string())
}

pub fn read_complex(path: &Path) -> Result<SimplicialComplex> {
    let file: ComplexFile = read_json(path)?;
    let report = file.validate();
    if !report.is_empty() {
        bail!("{}: invalid complex: {}", path.display(), serde_json::to_string(&report.issues)?);
    }
    SimplicialComplex::from_file(&file).with_context(|| path.display().to_string())
}

pub fn read_polygonal(path: &Path) -> Result<PolygonalComplex> {
    let file: PolygonalFile = read_json(path)?;
    PolygonalComplex::from_file(&file).with_context(|| path.display().to_string())
}

pub enum AnyComplex {
    Simplicial(SimplicialComplex),
    Polygonal(PolygonalComplex),
}

/// Polygonal files are recognised by their `faces` field.
pub fn read_any_complex(path: &Path) -> Result<AnyComplex> {
    let value: serde_json::Value = read_json(path)?;
    if value.get("faces").is_some() {
        Ok(AnyComplex::Polygonal(read_polygonal(path)?))
    } else {
        Ok(AnyComplex::Simplicial(read_complex(path)?))
    }
}

/// JSON `{"generators": [...], "relators": [[1, -2], ...]}` or the text form
/// `⟨a, b | a^2, b^2⟩`.
pub fn parse_presentation(text: &str, origin: &str) -> Result<Presentation> {
    let t = text.trim();
    if t.starts_with('{') {
        let p: Presentation = parse_json(t, origin)?;
        p.checked().with_context(|| origin.to_string())
    } else {
        Presentation::parse(t).with_context(|| origin.to_string())
    }
}

pub fn read_presentation(path: &Path) -> Result<Presentation> {
    parse_presentation(&read_text(path)?, &path.display().to_string())
}

/// `boundary` for the boundary of a cycle, `none` for no loops, otherwise a
/// JSON file listing loops as vertex label sequences.
pub fn read_loops(spec: &str, l: &SimplicialComplex) -> Result<Vec<DirectedLoop>> {
    match spec {
        "boundary" => Ok(vec![boundary_loop(l)?]),
        "none" | "" => Ok(Vec::new()),
        path => read_json(Path::new(path)),
    }
}

/// The loop around a connected complex in which every vertex has degree 2,
/// starting at the first vertex towards its smaller neighbour.
pub fn boundary_loop(l: &SimplicialComplex) -> Result<DirectedLoop> {
    let adj = l.adjacency();
    if l.dimension() != 1 || !l.is_connected() || adj.iter().any(|a| a.len() != 2) {
        bail!("`boundary` needs a cycle graph");
    }
    let mut walk = vec![0, adj[0][0].min(adj[0][1])];
    while walk.len() <= l.num_vertices() {
        let (prev, cur) = (walk[walk.len() - 2], walk[walk.len() - 1]);
        let next = if adj[cur][0] == prev { adj[cur][1] } else { adj[cur][0] };
        walk.push(next);
    }
    Ok(DirectedLoop::new(walk.into_iter().map(|v| l.label(v).to_string()).collect()))
}

pub fn read_voltage(path: &Path, l: &SimplicialComplex) -> Result<VoltageAssignment> {
    let file: VoltageFile = read_json(path)?;
    VoltageAssignment::from_file(l, &file).with_context(|| path.display().to_string())
}

pub fn read_cover(path: &Path, l: &SimplicialComplex) -> Result<Cover> {
    let file: CoverFile = read_json(path)?;
    Cover::from_file(l, &file).with_context(|| path.display().to_string())
}

pub fn read_deck(path: &Path, cover: &SimplicialComplex) -> Result<DeckAction> {
    let file: DeckFile = read_json(path)?;
    DeckAction::from_file(cover, &file).with_context(|| path.display().to_string())
}

#[cfg(test)]
mod tests {
    use super::*;
    use fpforge_core::corpus;

    #[test]
    fn boundary_of_square() {
        assert_eq!(boundary_loop(&corpus::square()).unwrap(), corpus::cycle_loop(4));
        assert!(boundary_loop(&corpus::path3()).is_err());
        assert!(boundary_loop(&corpus::solid_triangle()).is_err());
    }

    #[test]
    fn diagnostics_name_the_field() {
        let err = parse_json::<ComplexFile>("{\"vertices\": [\"a\", 3]}", "x.json").unwrap_err().to_string();
        assert!(err.contains("line 1"), "{err}");
        assert!(err.contains("vertices"), "{err}");
    }

    #[test]
    fn presentations_in_both_forms() {
        let p = parse_presentation("⟨a | a^2⟩", "t").unwrap();
        let json = serde_json::to_string(&p).unwrap();
        assert_eq!(parse_presentation(&json, "t").unwrap(), p);
        assert!(parse_presentation("{\"generators\": [\"a\"], \"relators\": [[2]]}", "t").is_err());
    }
}
