//! The frozen corpus directory: generation from the named constructions and
//! a content-hash manifest that detects drift.

use std::collections::BTreeMap;
use std::path::Path;

use anyhow::{Context, Result};
use serde::Serialize;
use sha2::{Digest, Sha256};

use fpforge_core::constructions::{build_cover, z2_voltages, DeckAction};
use fpforge_core::corpus;
use fpforge_core::presentation::{bb_presentation, HeightSet};

pub const MANIFEST: &str = "MANIFEST";

fn pretty(value: &impl Serialize) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("corpus values serialize");
    s.push('\n');
    s
}

/// File name and contents of every corpus file, in name order.
pub fn contents() -> BTreeMap<String, String> {
    let mut files = BTreeMap::new();
    let mut put = |name: &str, text: String| {
        files.insert(name.to_string(), text);
    };
    for (name, c) in corpus::complexes() {
        put(&format!("{name}.json"), pretty(&c.to_file()));
    }
    put("single_edge.json", pretty(&corpus::edge().to_file()));
    put("higman_polygonal.json", pretty(&corpus::higman_polygonal().to_file()));
    put("higman_loops.json", pretty(&corpus::higman_generator_loops()));
    put("square_loops.json", pretty(&vec![corpus::cycle_loop(4)]));
    for (name, p) in corpus::presentations() {
        put(&format!("{name}.json"), pretty(&p));
    }
    let family = bb_presentation(&corpus::square(), &[corpus::cycle_loop(4)], &HeightSet::new([0, 1, 3]))
        .expect("square family")
        .presentation
        .with_letter_names();
    put("square_family.json", pretty(&family));

    let l = corpus::rp2_barycentric();
    let rho = z2_voltages(&l).remove(0);
    let cover = build_cover(&l, &rho).expect("double cover of RP²");
    let deck = DeckAction::sheet_swap(&cover).expect("two sheets");
    put("rp2_voltage.json", pretty(&rho.to_file(&l)));
    put("rp2_cover.json", pretty(&cover.to_file(&l)));
    put("rp2_deck.json", pretty(&deck.to_file(&cover.complex)));
    files
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// `sha256sum` layout: one `<hash>  <name>` line per file.
pub fn manifest(files: &BTreeMap<String, String>) -> String {
    files.iter().map(|(name, text)| format!("{}  {name}\n", sha256_hex(text.as_bytes()))).collect()
}

pub fn generate(dir: &Path) -> Result<usize> {
    std::fs::create_dir_all(dir).with_context(|| format!("cannot create {}", dir.display()))?;
    let files = contents();
    for (name, text) in &files {
        std::fs::write(dir.join(name), text).with_context(|| format!("cannot write {name}"))?;
    }
    std::fs::write(dir.join(MANIFEST), manifest(&files))?;
    Ok(files.len())
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CorpusCheck {
    /// Files whose hash differs from the manifest, or that are missing.
    pub hash_mismatch: Vec<String>,
    /// Files that no longer match what the constructions produce.
    pub drift: Vec<String>,
    pub checked: usize,
}

impl CorpusCheck {
    pub fn ok(&self) -> bool {
        self.hash_mismatch.is_empty() && self.drift.is_empty()
    }
}

pub fn check(dir: &Path) -> Result<CorpusCheck> {
    let text = std::fs::read_to_string(dir.join(MANIFEST))
        .with_context(|| format!("cannot read {}", dir.join(MANIFEST).display()))?;
    let expected = contents();
    let mut out = CorpusCheck::default();
    for line in text.lines().filter(|l| !l.trim().is_empty()) {
        let (hash, name) = line.split_once("  ").with_context(|| format!("bad manifest line `{line}`"))?;
        out.checked += 1;
        match std::fs::read(dir.join(name)) {
            Ok(bytes) if sha256_hex(&bytes) == hash => {}
            _ => out.hash_mismatch.push(name.to_string()),
        }
        if expected.get(name).map(|t| sha256_hex(t.as_bytes())) != Some(hash.to_string()) {
            out.drift.push(name.to_string());
        }
    }
    for name in expected.keys() {
        if !text.lines().any(|l| l.ends_with(&format!("  {name}"))) {
            out.drift.push(name.clone());
        }
    }
    Ok(out)
}
