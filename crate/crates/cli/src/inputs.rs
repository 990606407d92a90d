//! Input collection: expands paths into `.radl` files, parses them
//! concurrently, and merges the results into one document.

use std::fs;
use std::path::{Path, PathBuf};
use std::thread;

use anyhow::{bail, Context, Result};
use radai_core::{merge_documents, parse, resolve_links, Diagnostic, Document, ParseError};

/// What stopped a document from being loaded; the variants carry the
/// findings so the caller can report them before exiting.
pub enum LoadError {
    /// I/O or syntax problems, per file.
    Parse(Vec<ParseError>),
    /// Cross-file duplicates or dangling references.
    Structure(Vec<Diagnostic>),
}

/// Expands each input into `.radl` files: directories are walked
/// recursively, files are taken as given. The combined list is
/// deduplicated and sorted lexicographically so the merge order — and with
/// it every report — is stable across runs and machines.
pub fn collect_radl_files(inputs: &[PathBuf]) -> Result<Vec<PathBuf>> {
    let mut files: Vec<PathBuf> = Vec::new();
    for input in inputs {
        if input.is_dir() {
            walk(input, &mut files)
                .with_context(|| format!("cannot read directory {}", input.display()))?;
        } else if input.is_file() {
            files.push(input.clone());
        } else {
            bail!("{}: no such file or directory", input.display());
        }
    }
    files.sort();
    files.dedup();
    if files.is_empty() {
        bail!("no .radl files found in the given paths");
    }
    Ok(files)
}

fn walk(dir: &Path, out: &mut Vec<PathBuf>) -> std::io::Result<()> {
    let mut entries: Vec<PathBuf> = fs::read_dir(dir)?
        .map(|e| e.map(|e| e.path()))
        .collect::<std::io::Result<_>>()?;
    entries.sort();
    for path in entries {
        if path.is_dir() {
            walk(&path, out)?;
        } else if path.extension().is_some_and(|x| x == "radl") {
            out.push(path);
        }
    }
    Ok(())
}

/// Parses every file on its own thread and merges the documents in the
/// given (already sorted) order.
pub fn parse_and_merge(files: &[PathBuf]) -> Result<Result<Document, LoadError>> {
    let parsed: Vec<Result<Result<Document, Vec<ParseError>>>> = thread::scope(|scope| {
        let handles: Vec<_> = files
            .iter()
            .map(|path| {
                scope.spawn(move || {
                    let text = fs::read_to_string(path)
                        .with_context(|| format!("cannot read {}", path.display()))?;
                    Ok(parse(&text, &path.display().to_string()))
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("parser threads do not panic"))
            .collect()
    });

    let mut docs = Vec::with_capacity(parsed.len());
    let mut errors: Vec<ParseError> = Vec::new();
    for result in parsed {
        match result? {
            Ok(doc) => docs.push(doc),
            Err(mut file_errors) => errors.append(&mut file_errors),
        }
    }
    if !errors.is_empty() {
        return Ok(Err(LoadError::Parse(errors)));
    }
    match merge_documents(docs) {
        Ok(doc) => Ok(Ok(doc)),
        Err(diags) => Ok(Err(LoadError::Structure(diags))),
    }
}

/// Loads a merged document without resolving references — the linter
/// reports dangling references itself.
pub fn load_unresolved(inputs: &[PathBuf]) -> Result<Result<Document, LoadError>> {
    let files = collect_radl_files(inputs)?;
    parse_and_merge(&files)
}

/// Loads a merged document and requires every reference to resolve.
pub fn load_resolved(inputs: &[PathBuf]) -> Result<Result<Document, LoadError>> {
    Ok(match load_unresolved(inputs)? {
        Ok(doc) => match resolve_links(doc) {
            Ok(doc) => Ok(doc),
            Err(diags) => Err(LoadError::Structure(diags)),
        },
        Err(e) => Err(e),
    })
}
