//! Text formats for polytopes, permissive database ingestion, structured
//! records, and the persistent classification store.
//!
//! The native polytope format is line-oriented:
//!
//! ```text
//! dim 2
//! vertices 3
//! id F.2.5        # optional
//! name P^2        # optional
//! 1 0
//! 0 1
//! -1 -1
//! ```
//!
//! Databases are ingested permissively: native blocks, bare matrix blocks
//! (`R C` header then `R` rows of `C` integers), and single-line records
//! (`[id] R C e11 e12 …`, entries row-major) all work. Matrix orientation
//! is auto-detected by shape: a full-dimensional Fano polytope always has
//! more vertices than coordinates, so the short side is the dimension.

use std::collections::{BTreeMap, HashMap};
use std::fs;
use std::path::{Path, PathBuf};

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::analysis::AnalysisReport;
use crate::classify::{CanonicalForm, ClassificationRow};
use crate::error::{Error, Result};
use crate::linalg::Vector;
use crate::polytope::LatticePolytope;
use crate::scalar::Scalar;

/// A parsed polytope file: the validated polytope plus optional metadata.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolytopeFile<S: Scalar> {
    pub id: Option<String>,
    pub name: Option<String>,
    pub polytope: LatticePolytope<S>,
}

fn content_lines(text: &str) -> Vec<(usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .collect()
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn parse_usize(line: usize, tok: &str, what: &str) -> Result<usize> {
    tok.parse::<usize>()
        .map_err(|_| parse_err(line, format!("expected {what}, found `{tok}`")))
}

fn parse_coord<S: Scalar>(line: usize, tok: &str) -> Result<S> {
    tok.parse::<i64>()
        .map(S::from_i64)
        .map_err(|_| parse_err(line, format!("expected an integer coordinate, found `{tok}`")))
}

/// Validates vertex rows into a polytope, attributing each failure to the
/// source line of the offending row (global failures go to `header_line`).
fn rows_to_polytope<S: Scalar>(
    dim: usize,
    rows: Vec<(usize, Vec<S>)>,
    header_line: usize,
) -> Result<LatticePolytope<S>> {
    let mut seen: HashMap<Vector<S>, usize> = HashMap::new();
    let mut vertices = Vec::with_capacity(rows.len());
    let mut vertex_lines = Vec::with_capacity(rows.len());
    for (line, coords) in rows {
        if coords.len() != dim {
            return Err(parse_err(
                line,
                format!("expected {dim} coordinates, found {}", coords.len()),
            ));
        }
        let v = Vector::new(coords);
        if !v.is_primitive() {
            return Err(parse_err(line, "vertex is not primitive"));
        }
        if let Some(first) = seen.insert(v.clone(), line) {
            return Err(parse_err(
                line,
                format!("duplicate vertex (same as line {first})"),
            ));
        }
        vertices.push(v);
        vertex_lines.push(line);
    }
    let p = LatticePolytope::new(vertices).map_err(|e| match e {
        Error::Degenerate { rank, dim } => parse_err(
            header_line,
            format!("vertices span rank {rank}, expected the full dimension {dim}"),
        ),
        other => parse_err(header_line, other.to_string()),
    })?;
    p.validate().map_err(|e| match e {
        Error::OriginNotInterior => parse_err(
            header_line,
            "the origin is not strictly interior to the hull",
        ),
        Error::NotVertex(i) => parse_err(
            vertex_lines.get(i).copied().unwrap_or(header_line),
            "row is not a vertex of the convex hull",
        ),
        other => parse_err(header_line, other.to_string()),
    })?;
    Ok(p)
}

/// Parses a native block from `lines`, returning the number of content
/// lines consumed (meaningful even on error, so callers can resynchronize).
fn parse_native_block<S: Scalar>(
    lines: &[(usize, &str)],
) -> (usize, Result<PolytopeFile<S>>) {
    let mut used = 0;
    let mut next = |expect: &str| -> Result<(usize, Vec<String>)> {
        let Some(&(ln, l)) = lines.get(used) else {
            let last = lines.last().map(|&(ln, _)| ln).unwrap_or(0);
            return Err(parse_err(last + 1, format!("expected {expect}, found end of input")));
        };
        used += 1;
        Ok((ln, l.split_whitespace().map(str::to_owned).collect()))
    };

    let inner = (|| {
        let (header_line, toks) = next("`dim <n>`")?;
        if toks.len() != 2 || toks[0] != "dim" {
            return Err(parse_err(header_line, "expected `dim <n>`"));
        }
        let dim = parse_usize(header_line, &toks[1], "a dimension")?;
        let (vline, toks) = next("`vertices <m>`")?;
        if toks.len() != 2 || toks[0] != "vertices" {
            return Err(parse_err(vline, "expected `vertices <m>`"));
        }
        let count = parse_usize(vline, &toks[1], "a vertex count")?;
        let mut id = None;
        let mut name = None;
        let mut rows: Vec<(usize, Vec<S>)> = Vec::with_capacity(count);
        while rows.len() < count {
            let (ln, toks) = next("a vertex row")?;
            match toks[0].as_str() {
                "id" if rows.is_empty() => id = Some(toks[1..].join(" ")),
                "name" if rows.is_empty() => name = Some(toks[1..].join(" ")),
                _ => {
                    let coords = toks
                        .iter()
                        .map(|t| parse_coord::<S>(ln, t))
                        .collect::<Result<Vec<S>>>()?;
                    rows.push((ln, coords));
                }
            }
        }
        let polytope = rows_to_polytope(dim, rows, header_line)?;
        Ok(PolytopeFile { id, name, polytope })
    })();
    (used, inner)
}

/// Parses the native single-polytope format; every polytope invariant is
/// enforced here, with failures attributed to source lines.
pub fn parse_polytope_file<S: Scalar>(text: &str) -> Result<PolytopeFile<S>> {
    let lines = content_lines(text);
    if lines.is_empty() {
        return Err(parse_err(1, "empty input"));
    }
    let (used, parsed) = parse_native_block::<S>(&lines);
    let file = parsed?;
    if used < lines.len() {
        let (ln, _) = lines[used];
        return Err(parse_err(ln, "unexpected content after the vertex rows"));
    }
    Ok(file)
}

/// Parses the native format, discarding metadata.
pub fn parse_polytope<S: Scalar>(text: &str) -> Result<LatticePolytope<S>> {
    Ok(parse_polytope_file(text)?.polytope)
}

/// Prints the native format; `parse(print(f)) == f` exactly, and printing
/// a parse normalizes whitespace only.
pub fn print_polytope<S: Scalar>(file: &PolytopeFile<S>) -> String {
    let p = &file.polytope;
    let mut out = format!("dim {}\nvertices {}\n", p.dim(), p.vertex_count());
    if let Some(id) = &file.id {
        out.push_str(&format!("id {id}\n"));
    }
    if let Some(name) = &file.name {
        out.push_str(&format!("name {name}\n"));
    }
    for v in p.vertices() {
        let coords: Vec<String> = v.iter().map(|c| c.to_string()).collect();
        out.push_str(&coords.join(" "));
        out.push('\n');
    }
    out
}

/// One successfully ingested polytope; external identifiers are opaque
/// pass-through strings.
#[derive(Clone, Debug)]
pub struct IngestEntry<S: Scalar> {
    pub external_id: Option<String>,
    pub polytope: LatticePolytope<S>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IngestFailure {
    pub line: usize,
    pub message: String,
}

#[derive(Clone, Debug)]
pub struct IngestReport<S: Scalar> {
    pub dim: usize,
    pub entries: Vec<IngestEntry<S>>,
    pub failures: Vec<IngestFailure>,
}

impl<S: Scalar> IngestReport<S> {
    pub fn summary(&self) -> String {
        let mut s = format!(
            "{} polytope(s) ingested, {} failure(s)",
            self.entries.len(),
            self.failures.len()
        );
        for f in &self.failures {
            s.push_str(&format!("\n  line {}: {}", f.line, f.message));
        }
        s
    }
}

/// Interprets an `R x C` integer grid as a vertex list: the short side is
/// the dimension (a Fano polytope always has more vertices than that), so
/// the orientation is decided by shape alone.
fn grid_to_vertices<S: Scalar>(
    line: usize,
    r: usize,
    c: usize,
    entries: &[S],
) -> Result<Vec<(usize, Vec<S>)>> {
    if r == c {
        return Err(parse_err(
            line,
            "square vertex matrix is ambiguous (a Fano polytope has more vertices than coordinates)",
        ));
    }
    let at = |i: usize, j: usize| entries[i * c + j].clone();
    let rows_are_vertices = r > c;
    let m = if rows_are_vertices { r } else { c };
    Ok((0..m)
        .map(|v| {
            let coords = if rows_are_vertices {
                (0..c).map(|j| at(v, j)).collect()
            } else {
                (0..r).map(|i| at(i, v)).collect()
            };
            (line, coords)
        })
        .collect())
}

fn is_integer_token(tok: &str) -> bool {
    tok.parse::<i64>().is_ok()
}

/// Ingests a concatenated database text. Individual records that fail
/// validation become diagnostics; only unreadable input is fatal upstream.
pub fn ingest_database_text<S: Scalar>(text: &str, dim: usize) -> IngestReport<S> {
    let lines = content_lines(text);
    let mut entries = Vec::new();
    let mut failures = Vec::new();
    let mut i = 0;
    while i < lines.len() {
        let (ln, l) = lines[i];
        let toks: Vec<&str> = l.split_whitespace().collect();
        let fail = |line: usize, message: String, failures: &mut Vec<IngestFailure>| {
            failures.push(IngestFailure { line, message });
        };
        if toks[0] == "dim" {
            let (used, parsed) = parse_native_block::<S>(&lines[i..]);
            i += used.max(1);
            match parsed {
                Ok(file) if file.polytope.dim() == dim => entries.push(IngestEntry {
                    external_id: file.id,
                    polytope: file.polytope,
                }),
                Ok(file) => fail(
                    ln,
                    format!("expected dimension {dim}, found {}", file.polytope.dim()),
                    &mut failures,
                ),
                Err(e) => fail(ln, e.to_string(), &mut failures),
            }
            continue;
        }
        // Matrix record: `[id] R C …` with entries inline (single line) or
        // on the following R lines.
        let (id, header): (Option<String>, &[&str]) = if is_integer_token(toks[0]) {
            (None, &toks[..])
        } else {
            (Some(toks[0].to_owned()), &toks[1..])
        };
        let shape = (|| -> Result<(usize, usize)> {
            if header.len() < 2 {
                return Err(parse_err(ln, "expected a matrix header `R C`"));
            }
            Ok((
                parse_usize(ln, header[0], "a row count")?,
                parse_usize(ln, header[1], "a column count")?,
            ))
        })();
        let (r, c) = match shape {
            Ok(rc) => rc,
            Err(e) => {
                fail(ln, e.to_string(), &mut failures);
                i += 1;
                continue;
            }
        };
        let rest = &header[2..];
        let record = (|| -> Result<Vec<S>> {
            if rest.len() == r * c {
                // Single-line record.
                i += 1;
                rest.iter().map(|t| parse_coord::<S>(ln, t)).collect()
            } else if rest.is_empty() {
                // Multi-line block: the next r content lines hold the rows.
                let mut entries_acc: Vec<S> = Vec::with_capacity(r * c);
                let mut consumed = 1;
                for row in 0..r {
                    let Some(&(rln, rl)) = lines.get(i + 1 + row) else {
                        i += consumed;
                        return Err(parse_err(
                            ln,
                            format!("matrix block declares {r} rows, input ended after {row}"),
                        ));
                    };
                    consumed += 1;
                    let rtoks: Vec<&str> = rl.split_whitespace().collect();
                    if rtoks.len() != c {
                        i += consumed;
                        return Err(parse_err(
                            rln,
                            format!("expected {c} entries in this row, found {}", rtoks.len()),
                        ));
                    }
                    for t in rtoks {
                        entries_acc.push(parse_coord::<S>(rln, t)?);
                    }
                }
                i += consumed;
                Ok(entries_acc)
            } else {
                i += 1;
                Err(parse_err(
                    ln,
                    format!(
                        "matrix record declares {r}x{c} = {} entries, found {} on the line",
                        r * c,
                        rest.len()
                    ),
                ))
            }
        })();
        let parsed = record.and_then(|entries_flat| {
            let rows = grid_to_vertices(ln, r, c, &entries_flat)?;
            let found_dim = r.min(c);
            if found_dim != dim {
                return Err(parse_err(
                    ln,
                    format!("expected dimension {dim}, found {found_dim}"),
                ));
            }
            rows_to_polytope(dim, rows, ln)
        });
        match parsed {
            Ok(polytope) => entries.push(IngestEntry {
                external_id: id,
                polytope,
            }),
            Err(e) => fail(ln, e.to_string(), &mut failures),
        }
    }
    IngestReport {
        dim,
        entries,
        failures,
    }
}

/// Reads and ingests a database file; an unreadable file is fatal, while
/// per-entry validation failures are collected in the report.
pub fn ingest_database<S: Scalar>(path: impl AsRef<Path>, dim: usize) -> Result<IngestReport<S>> {
    let text = fs::read_to_string(path.as_ref())?;
    Ok(ingest_database_text(&text, dim))
}

/// Single-line record for one canonical form: `hash R C entries…` with the
/// canonical matrix written row-major (rows = coordinates, columns =
/// vertices). `ingest_database` reads these back directly.
pub fn canonical_form_line(form: &CanonicalForm) -> String {
    let mut s = format!(
        "{} {} {}",
        form.hash_hex(),
        form.dim(),
        form.vertex_count()
    );
    for row in form.matrix() {
        for e in row {
            s.push(' ');
            s.push_str(&e.to_string());
        }
    }
    s
}

/// Writes one canonical-form record per line, atomically.
pub fn write_canonical_forms(path: impl AsRef<Path>, forms: &[CanonicalForm]) -> Result<()> {
    let mut body = String::new();
    for f in forms {
        body.push_str(&canonical_form_line(f));
        body.push('\n');
    }
    write_atomic(path.as_ref(), body.as_bytes())
}

/// Prints an exact rational without precision loss.
pub fn ratio_string<S: Scalar>(r: &Ratio<S>) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Structured single-polytope record; field order is fixed and rationals
/// are serialized as `"num/den"` strings.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct AnalysisRecord {
    pub dim: usize,
    pub vertex_count: usize,
    pub simplicial: bool,
    pub smooth: bool,
    pub reflexive: bool,
    pub terminal: bool,
    pub picard_rank: Option<usize>,
    pub aut_order: usize,
    pub t: usize,
    pub k: usize,
    pub fibre_like: Option<bool>,
    pub barycentre: Vec<String>,
    pub barycentre_is_zero: bool,
    pub k_stable: Option<bool>,
}

impl AnalysisRecord {
    pub fn from_report<S: Scalar>(r: &AnalysisReport<S>) -> Self {
        AnalysisRecord {
            dim: r.dim,
            vertex_count: r.vertex_count,
            simplicial: r.is_simplicial,
            smooth: r.is_smooth,
            reflexive: r.is_reflexive,
            terminal: r.is_terminal,
            picard_rank: r.picard_rank,
            aut_order: r.aut_order,
            t: r.t,
            k: r.k,
            fibre_like: r.fibre_like,
            barycentre: r.barycentre.iter().map(ratio_string).collect(),
            barycentre_is_zero: r.barycentre_is_zero,
            k_stable: r.k_stable,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("record serialization is infallible")
    }
}

/// One persisted classification record, keyed by canonical-form hash.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct StoreRecord {
    pub key: String,
    pub dim: usize,
    pub vertex_count: usize,
    pub picard_rank: usize,
    pub aut_order: usize,
    pub t: usize,
    pub k: usize,
    pub fibre_like: bool,
    pub barycentre_zero: bool,
    pub catalog_name: Option<String>,
    pub external_id: Option<String>,
    /// Canonical vertex-column matrix, entries as decimal strings.
    pub canonical_matrix: Vec<Vec<String>>,
}

impl StoreRecord {
    pub fn from_row(row: &ClassificationRow) -> Self {
        StoreRecord {
            key: row.canonical.hash_hex().to_owned(),
            dim: row.dim,
            vertex_count: row.vertex_count,
            picard_rank: row.picard_rank,
            aut_order: row.aut_order,
            t: row.t,
            k: row.k,
            fibre_like: row.fibre_like,
            barycentre_zero: row.barycentre_zero,
            catalog_name: row.catalog_name.clone(),
            external_id: row.external_id.clone(),
            canonical_matrix: row
                .canonical
                .matrix()
                .iter()
                .map(|r| r.iter().map(|e| e.to_string()).collect())
                .collect(),
        }
    }
}

fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            fs::create_dir_all(parent)?;
        }
    }
    let tmp = path.with_extension("tmp");
    fs::write(&tmp, bytes)?;
    fs::rename(&tmp, path)?;
    Ok(())
}

/// Append-only-in-effect store of classification records: one line-delimited
/// JSON record per canonical form, kept sorted by key, rewritten atomically.
/// Upserting the same rows twice leaves the file byte-identical.
pub struct ResultStore {
    path: PathBuf,
}

impl ResultStore {
    pub fn at_dir(dir: impl AsRef<Path>, dim: usize) -> Self {
        ResultStore {
            path: dir.as_ref().join(format!("classification-dim{dim}.jsonl")),
        }
    }

    /// Store rooted at the `FANOLATTICE_CACHE` directory, when set.
    pub fn from_env(dim: usize) -> Option<Self> {
        std::env::var_os("FANOLATTICE_CACHE").map(|dir| Self::at_dir(PathBuf::from(dir), dim))
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    /// Loads the store; a missing file is an empty store.
    pub fn load(&self) -> Result<BTreeMap<String, StoreRecord>> {
        let text = match fs::read_to_string(&self.path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(BTreeMap::new()),
            Err(e) => return Err(e.into()),
        };
        let mut map = BTreeMap::new();
        for (i, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let rec: StoreRecord = serde_json::from_str(line).map_err(|e| Error::Parse {
                line: i + 1,
                message: format!("malformed store record: {e}"),
            })?;
            map.insert(rec.key.clone(), rec);
        }
        Ok(map)
    }

    /// Merges the rows into the store and rewrites it sorted by key.
    /// Returns the total number of records now in the store.
    pub fn upsert(&self, rows: &[ClassificationRow]) -> Result<usize> {
        let mut map = self.load()?;
        for row in rows {
            let rec = StoreRecord::from_row(row);
            map.insert(rec.key.clone(), rec);
        }
        let mut body = String::new();
        for rec in map.values() {
            body.push_str(&serde_json::to_string(rec).expect("record serialization"));
            body.push('\n');
        }
        write_atomic(&self.path, body.as_bytes())?;
        Ok(map.len())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::analyze;
    use crate::classify::canonical_form;
    use crate::catalog::{del_pezzo_polytope, dimension_catalog, projective_space};
    use crate::classify::classify_fibre_like;

    const P2: &str = "dim 2\nvertices 3\n1 0\n0 1\n-1 -1\n";

    #[test]
    fn parses_the_plane_example() {
        let p = parse_polytope::<i64>(P2).unwrap();
        assert_eq!(p, projective_space::<i64>(2).unwrap());
    }

    #[test]
    fn metadata_is_preserved_and_printing_round_trips() {
        let text = "dim 2\nvertices 3\nid F.2.0005\nname P^2\n1 0\n0 1\n-1 -1\n";
        let file = parse_polytope_file::<i64>(text).unwrap();
        assert_eq!(file.id.as_deref(), Some("F.2.0005"));
        assert_eq!(file.name.as_deref(), Some("P^2"));
        assert_eq!(print_polytope(&file), text);
        assert_eq!(parse_polytope_file::<i64>(&print_polytope(&file)).unwrap(), file);
    }

    #[test]
    fn printing_normalizes_whitespace_only() {
        let messy = "\n# fan polytope of the plane\n dim   2\nvertices    3\n\n  1    0\n0   1\n -1 -1\n";
        let file = parse_polytope_file::<i64>(messy).unwrap();
        assert_eq!(print_polytope(&file), P2);
    }

    #[test]
    fn duplicate_row_is_reported_with_both_lines() {
        let text = "dim 2\nvertices 4\n1 0\n0 1\n1 0\n-1 -1\n";
        let err = parse_polytope::<i64>(text).unwrap_err();
        match err {
            Error::Parse { line, message } => {
                assert_eq!(line, 5);
                assert!(message.contains("duplicate vertex"));
                assert!(message.contains("line 3"));
            }
            other => panic!("expected a parse error, got {other:?}"),
        }
    }

    #[test]
    fn non_primitive_vertex_is_reported_on_its_line() {
        let text = "dim 2\nvertices 3\n2 0\n0 1\n-1 -1\n";
        let err = parse_polytope::<i64>(text).unwrap_err();
        match err {
            Error::Parse { line, message } => {
                assert_eq!(line, 3);
                assert!(message.contains("not primitive"));
            }
            other => panic!("expected a parse error, got {other:?}"),
        }
    }

    #[test]
    fn wrong_coordinate_count_is_a_dimension_error() {
        let text = "dim 2\nvertices 3\n1 0\n0 1 5\n-1 -1\n";
        let err = parse_polytope::<i64>(text).unwrap_err();
        match err {
            Error::Parse { line, message } => {
                assert_eq!(line, 4);
                assert!(message.contains("expected 2 coordinates"));
            }
            other => panic!("expected a parse error, got {other:?}"),
        }
    }

    #[test]
    fn hull_excluding_the_origin_is_rejected() {
        let text = "dim 2\nvertices 3\n1 0\n0 1\n1 1\n";
        let err = parse_polytope::<i64>(text).unwrap_err();
        match err {
            Error::Parse { line, message } => {
                assert_eq!(line, 1);
                assert!(message.contains("origin"));
            }
            other => panic!("expected a parse error, got {other:?}"),
        }
    }

    #[test]
    fn truncated_input_and_trailing_content_are_rejected() {
        let truncated = "dim 2\nvertices 3\n1 0\n0 1\n";
        assert!(matches!(
            parse_polytope::<i64>(truncated),
            Err(Error::Parse { .. })
        ));
        let trailing = format!("{P2}0 -1\n");
        let err = parse_polytope::<i64>(&trailing).unwrap_err();
        match err {
            Error::Parse { line, message } => {
                assert_eq!(line, 6);
                assert!(message.contains("unexpected content"));
            }
            other => panic!("expected a parse error, got {other:?}"),
        }
    }

    #[test]
    fn ingests_all_three_record_shapes() {
        let text = "\
# mixed-format database
dim 2
vertices 3
id alpha
1 0
0 1
-1 -1

beta 2 4 1 0 -1 0 0 1 0 -1

4 2
1 1
-1 1
1 -1
-1 -1
";
        let report = ingest_database_text::<i64>(text, 2);
        assert_eq!(report.failures, vec![]);
        assert_eq!(report.entries.len(), 3);
        assert_eq!(report.entries[0].external_id.as_deref(), Some("alpha"));
        assert_eq!(report.entries[1].external_id.as_deref(), Some("beta"));
        assert_eq!(report.entries[2].external_id, None);
        assert_eq!(report.entries[0].polytope.vertex_count(), 3);
        assert_eq!(report.entries[1].polytope.vertex_count(), 4);
        assert_eq!(report.entries[2].polytope.vertex_count(), 4);
    }

    #[test]
    fn corrupted_record_is_a_diagnostic_not_a_failure() {
        let text = "\
one 2 3 1 0 -1 0 1 -1
two 2 3 1 0 -1 0 2 -1
three 2 4 1 0 -1 0 0 1 0 -1
";
        let report = ingest_database_text::<i64>(text, 2);
        assert_eq!(report.entries.len(), 2);
        assert_eq!(report.failures.len(), 1);
        assert_eq!(report.failures[0].line, 2);
        assert!(report.failures[0].message.contains("not primitive"));
        assert!(report.summary().contains("2 polytope(s)"));
    }

    #[test]
    fn wrong_dimension_and_square_matrices_are_diagnosed() {
        let text = "2 3 1 0 0 1 -1 -1\n";
        let report = ingest_database_text::<i64>(text, 3);
        assert_eq!(report.entries.len(), 0);
        assert!(report.failures[0].message.contains("expected dimension 3"));

        let square = "3 3 1 0 0 0 1 0 0 0 1\n";
        let report = ingest_database_text::<i64>(square, 3);
        assert!(report.failures[0].message.contains("square"));
    }

    #[test]
    fn canonical_form_lines_round_trip_through_ingestion() {
        let forms: Vec<CanonicalForm> = dimension_catalog::<i64>(2)
            .unwrap()
            .iter()
            .map(|e| canonical_form(&e.polytope).unwrap())
            .collect();
        let text: String = forms
            .iter()
            .map(|f| canonical_form_line(f) + "\n")
            .collect();
        let report = ingest_database_text::<i64>(&text, 2);
        assert_eq!(report.failures, vec![]);
        assert_eq!(report.entries.len(), forms.len());
        for (entry, form) in report.entries.iter().zip(&forms) {
            assert_eq!(entry.external_id.as_deref(), Some(form.hash_hex()));
            assert_eq!(&canonical_form(&entry.polytope).unwrap(), form);
        }
    }

    #[test]
    fn analysis_record_serializes_rationals_as_strings() {
        let p = LatticePolytope::<i64>::from_coords(&[&[1, 0], &[0, 1], &[-1, -1], &[1, 1]])
            .unwrap();
        let record = AnalysisRecord::from_report(&analyze(&p).unwrap());
        assert_eq!(record.barycentre, vec!["1/6".to_string(), "1/6".to_string()]);
        let json = record.to_json();
        assert!(json.contains("\"barycentre\":[\"1/6\",\"1/6\"]"));
        let back: AnalysisRecord = serde_json::from_str(&json).unwrap();
        assert_eq!(back, record);
    }

    #[test]
    fn result_store_upserts_are_idempotent_and_sorted() {
        let dir = tempfile::tempdir().unwrap();
        let store = ResultStore::at_dir(dir.path(), 2);
        let forms: Vec<CanonicalForm> = dimension_catalog::<i64>(2)
            .unwrap()
            .iter()
            .map(|e| canonical_form(&e.polytope).unwrap())
            .collect();
        let rows = classify_fibre_like::<i64>(2, &forms, None).unwrap();
        assert_eq!(store.upsert(&rows).unwrap(), rows.len());
        let first = fs::read(store.path()).unwrap();
        assert_eq!(store.upsert(&rows).unwrap(), rows.len());
        let second = fs::read(store.path()).unwrap();
        assert_eq!(first, second, "re-running the upsert must be byte-identical");

        let keys: Vec<String> = store.load().unwrap().into_keys().collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
        assert_eq!(keys.len(), rows.len());
    }

    #[test]
    fn written_canonical_forms_are_ingestable() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("forms.txt");
        let hexagon = canonical_form(&del_pezzo_polytope::<i64>(2).unwrap()).unwrap();
        write_canonical_forms(&path, std::slice::from_ref(&hexagon)).unwrap();
        let report = ingest_database::<i64>(&path, 2).unwrap();
        assert_eq!(report.entries.len(), 1);
        assert_eq!(
            canonical_form(&report.entries[0].polytope).unwrap(),
            hexagon
        );
        assert!(ingest_database::<i64>(dir.path().join("missing.txt"), 2).is_err());
    }
}
