//! `fanolattice` — exact lattice-polytope analysis from the command line.
//!
//! Exit codes: 0 success, 1 usage error, 2 validation error (bad input,
//! unreadable file, unsupported request), 3 invariant violation (a theorem
//! the suite checks came out false on the processed data).

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};

use fanolattice::analysis::analyze;
use fanolattice::classify::search::{
    completeness_label, enumerate_smooth_fano, EnumerationOptions,
};
use fanolattice::classify::{
    canonical_form, classify_fibre_like, conjecture_check, CanonicalForm, ClassificationRow,
};
use fanolattice::io::{
    canonical_form_line, ingest_database, parse_polytope_file, ratio_string,
    write_canonical_forms, AnalysisRecord, ResultStore,
};
use fanolattice::kstability::main_theorem_check;
use fanolattice::primitive::{primitive_relations, trivial_focus_collections};
use fanolattice::symmetry::{automorphism_group, burnside_check, orbit_collection_cover, orbit_data};
use fanolattice::toric::is_smooth;
use fanolattice::{Error, Int};

#[derive(Parser)]
#[command(
    name = "fanolattice",
    version,
    about = "Smooth toric Fano varieties from lattice polytopes: analysis, enumeration, classification"
)]
struct Cli {
    /// Number of worker threads (defaults to all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Report every invariant of one polytope file (table + JSON record).
    Analyze {
        /// Polytope in the native text format (`dim`, `vertices`, rows).
        file: PathBuf,
    },
    /// Enumerate smooth Fano polytope classes of one dimension.
    Enumerate {
        #[arg(long)]
        dim: usize,
        /// Per-coordinate search bound (default: the dimension).
        #[arg(long)]
        bound: Option<i64>,
        /// Search-node budget.
        #[arg(long)]
        budget: Option<u64>,
        /// Restrict to classes with vertex sum zero (complete for the
        /// fibre-like subset, far cheaper in high dimension).
        #[arg(long)]
        sum_zero: bool,
        /// Restrict to classes with at most this many vertices (still finds
        /// every class within the cap).
        #[arg(long)]
        max_vertices: Option<usize>,
        /// Write canonical-form records here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Tabulate the fibre-like classes of one dimension.
    Classify {
        #[arg(long)]
        dim: usize,
        /// Database file to classify instead of enumerating in-process.
        #[arg(long)]
        source: Option<PathBuf>,
        #[arg(long)]
        bound: Option<i64>,
        #[arg(long)]
        budget: Option<u64>,
        /// Persist rows to this directory (overrides FANOLATTICE_CACHE).
        #[arg(long)]
        cache: Option<PathBuf>,
    },
    /// Run the theorem suite over every class of one dimension.
    Check {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        source: Option<PathBuf>,
        #[arg(long)]
        bound: Option<i64>,
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Verify that the fibre-like classes in an odd prime dimension are
    /// exactly the projective space and the power of the line.
    Conjecture {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        source: Option<PathBuf>,
        #[arg(long)]
        bound: Option<i64>,
        #[arg(long)]
        budget: Option<u64>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(jobs) = cli.jobs {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global();
    }
    let outcome = match cli.command {
        Command::Analyze { file } => cmd_analyze(&file),
        Command::Enumerate {
            dim,
            bound,
            budget,
            sum_zero,
            max_vertices,
            out,
        } => cmd_enumerate(dim, bound, budget, sum_zero, max_vertices, out.as_deref()),
        Command::Classify {
            dim,
            source,
            bound,
            budget,
            cache,
        } => cmd_classify(dim, source.as_deref(), bound, budget, cache),
        Command::Check {
            dim,
            source,
            bound,
            budget,
        } => cmd_check(dim, source.as_deref(), bound, budget),
        Command::Conjecture {
            dim,
            source,
            bound,
            budget,
        } => cmd_conjecture(dim, source.as_deref(), bound, budget),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::InvariantViolation(_) => ExitCode::from(3),
                _ => ExitCode::from(2),
            }
        }
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn cmd_analyze(file: &Path) -> Result<ExitCode, Error> {
    let text = std::fs::read_to_string(file)?;
    let parsed = parse_polytope_file::<Int>(&text)?;
    let report = analyze(&parsed.polytope)?;
    let barycentre = format!(
        "({})",
        report
            .barycentre
            .iter()
            .map(ratio_string)
            .collect::<Vec<_>>()
            .join(", ")
    );
    if let Some(name) = &parsed.name {
        println!("{:<14}{name}", "name");
    }
    if let Some(id) = &parsed.id {
        println!("{:<14}{id}", "id");
    }
    println!("{:<14}{}", "dim", report.dim);
    println!("{:<14}{}", "vertices", report.vertex_count);
    println!("{:<14}{}", "simplicial", yes_no(report.is_simplicial));
    println!("{:<14}{}", "smooth", yes_no(report.is_smooth));
    println!("{:<14}{}", "reflexive", yes_no(report.is_reflexive));
    println!("{:<14}{}", "terminal", yes_no(report.is_terminal));
    match report.picard_rank {
        Some(r) => println!("{:<14}{r}", "picard rank"),
        None => println!("{:<14}n/a (not simplicial)", "picard rank"),
    }
    println!("{:<14}{}", "aut order", report.aut_order);
    println!("{:<14}{}", "orbits t", report.t);
    println!("{:<14}{}", "fixed dim k", report.k);
    match report.fibre_like {
        Some(b) => println!("{:<14}{}", "fibre-like", yes_no(b)),
        None => println!("{:<14}n/a (not smooth)", "fibre-like"),
    }
    println!("{:<14}{barycentre}", "barycentre");
    match report.k_stable {
        Some(b) => println!("{:<14}{}", "k-stable", yes_no(b)),
        None => println!("{:<14}n/a (not reflexive)", "k-stable"),
    }
    println!("{}", AnalysisRecord::from_report(&report).to_json());
    Ok(ExitCode::SUCCESS)
}

fn options_for(dim: usize, bound: Option<i64>, budget: Option<u64>, sum_zero: bool) -> EnumerationOptions {
    let mut opts = EnumerationOptions::for_dimension(dim);
    if let Some(b) = bound {
        opts.bound = b;
    }
    if let Some(n) = budget {
        opts.node_budget = n;
    }
    opts.sum_zero_only = sum_zero;
    opts
}

fn cmd_enumerate(
    dim: usize,
    bound: Option<i64>,
    budget: Option<u64>,
    sum_zero: bool,
    max_vertices: Option<usize>,
    out: Option<&Path>,
) -> Result<ExitCode, Error> {
    let mut opts = options_for(dim, bound, budget, sum_zero);
    opts.max_vertices = max_vertices;
    let run = enumerate_smooth_fano::<i64>(dim, &opts)?;
    match out {
        Some(path) => {
            write_canonical_forms(path, &run.classes)?;
            println!(
                "wrote {} class(es) to {}",
                run.classes.len(),
                path.display()
            );
        }
        None => {
            for form in &run.classes {
                println!("{}", canonical_form_line(form));
            }
        }
    }
    eprintln!(
        "dimension {}: {} class(es), {} node(s), {}",
        run.dim,
        run.classes.len(),
        run.nodes,
        completeness_label(&run)
    );
    Ok(ExitCode::SUCCESS)
}

/// Canonical forms for a dimension: ingested from `source` when given,
/// otherwise enumerated in-process. Dimension 5 in-process restricts to
/// vertex-sum-zero classes, which still contains every fibre-like class
/// (fibre-like polytopes have vertex sum zero), and dimension 6 needs a
/// source file. Returns the forms, per-form external ids, and a provenance
/// label for reports.
fn forms_for(
    dim: usize,
    source: Option<&Path>,
    bound: Option<i64>,
    budget: Option<u64>,
) -> Result<(Vec<CanonicalForm>, Option<Vec<String>>, String), Error> {
    if let Some(path) = source {
        let report = ingest_database::<Int>(path, dim)?;
        if !report.failures.is_empty() {
            eprintln!("{}", report.summary());
        }
        if report.entries.is_empty() {
            return Err(Error::InvalidInput(format!(
                "no valid dimension-{dim} polytopes in {}",
                path.display()
            )));
        }
        // Deduplicate up to lattice equivalence, keeping the first id seen.
        let mut seen: std::collections::BTreeMap<CanonicalForm, String> =
            std::collections::BTreeMap::new();
        for entry in &report.entries {
            let form = canonical_form(&entry.polytope)?;
            seen.entry(form)
                .or_insert_with(|| entry.external_id.clone().unwrap_or_default());
        }
        let label = format!(
            "source {}: {} record(s), {} class(es), {} failure(s)",
            path.display(),
            report.entries.len(),
            seen.len(),
            report.failures.len()
        );
        let (forms, ids): (Vec<_>, Vec<_>) = seen.into_iter().unzip();
        Ok((forms, Some(ids), label))
    } else {
        if dim == 6 {
            return Err(Error::InvalidInput(
                "dimension 6 needs --source FILE; in-process search is not desk-scale here"
                    .into(),
            ));
        }
        let sum_zero = dim == 5;
        let opts = options_for(dim, bound, budget, sum_zero);
        let run = enumerate_smooth_fano::<i64>(dim, &opts)?;
        let label = format!(
            "in-process enumeration: {} class(es), {} node(s), {}",
            run.classes.len(),
            run.nodes,
            completeness_label(&run)
        );
        Ok((run.classes, None, label))
    }
}

fn print_classification_table(rows: &[ClassificationRow]) {
    println!(
        "{:<4} {:<9} {:<4} {:<6} {:<3} {:<3} {:<24} {}",
        "dim", "vertices", "rho", "|Aut|", "t", "k", "description", "class"
    );
    for row in rows {
        let name = row
            .catalog_name
            .clone()
            .or_else(|| row.external_id.clone().filter(|s| !s.is_empty()))
            .unwrap_or_else(|| "-".into());
        println!(
            "{:<4} {:<9} {:<4} {:<6} {:<3} {:<3} {:<24} {}",
            row.dim,
            row.vertex_count,
            row.picard_rank,
            row.aut_order,
            row.t,
            row.k,
            name,
            &row.canonical.hash_hex()[..12]
        );
    }
}

fn cmd_classify(
    dim: usize,
    source: Option<&Path>,
    bound: Option<i64>,
    budget: Option<u64>,
    cache: Option<PathBuf>,
) -> Result<ExitCode, Error> {
    let (forms, ids, label) = forms_for(dim, source, bound, budget)?;
    let mut rows = classify_fibre_like::<Int>(dim, &forms, ids.as_deref())?;
    for row in &mut rows {
        if row.external_id.as_deref() == Some("") {
            row.external_id = None;
        }
    }
    // The classification theorem predicts a zero barycentre for every
    // fibre-like class; a falsifying row must not pass silently.
    if let Some(bad) = rows.iter().find(|r| !r.barycentre_zero) {
        return Err(Error::InvariantViolation(format!(
            "fibre-like class {} has a nonzero barycentre",
            bad.canonical.hash_hex()
        )));
    }
    print_classification_table(&rows);
    println!(
        "{} fibre-like class(es) out of {} analysed [{}]",
        rows.len(),
        forms.len(),
        label
    );
    let store = match cache {
        Some(dir) => Some(ResultStore::at_dir(dir, dim)),
        None => ResultStore::from_env(dim),
    };
    if let Some(store) = store {
        let total = store.upsert(&rows)?;
        println!("store: {} ({} record(s))", store.path().display(), total);
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_check(
    dim: usize,
    source: Option<&Path>,
    bound: Option<i64>,
    budget: Option<u64>,
) -> Result<ExitCode, Error> {
    let (forms, _, label) = forms_for(dim, source, bound, budget)?;
    let mut violations: Vec<String> = Vec::new();
    let mut skipped = 0usize;
    for form in &forms {
        let hash = &form.hash_hex()[..12];
        let p = form.to_polytope::<Int>()?;
        if !is_smooth(&p)? {
            skipped += 1;
            eprintln!("class {hash}: skipped (not smooth; the suite checks smooth Fano classes)");
            continue;
        }
        for relation in primitive_relations(&p)? {
            if relation.degree <= 0 {
                violations.push(format!(
                    "class {hash}: primitive relation with non-positive degree {}",
                    relation.degree
                ));
            }
        }
        match trivial_focus_collections(&p) {
            Ok(_) => {}
            Err(Error::InvariantViolation(msg)) => {
                violations.push(format!("class {hash}: {msg}"));
            }
            Err(e) => return Err(e),
        }
        let g = automorphism_group(&p)?;
        let data = orbit_data(&p, &g);
        if data.invariant_ns_dim < 1 {
            violations.push(format!(
                "class {hash}: t - k = {} < 1",
                data.invariant_ns_dim
            ));
        }
        if !burnside_check(&g) {
            violations.push(format!("class {hash}: Burnside orbit/fixed-space mismatch"));
        }
        if !main_theorem_check(&p)? {
            violations.push(format!(
                "class {hash}: fibre-like but the barycentre is not zero"
            ));
        }
        if data.invariant_ns_dim == 1 {
            if !p.vertex_sum().is_zero() {
                violations.push(format!("class {hash}: fibre-like but vertex sum is not zero"));
            }
            if !orbit_collection_cover(&p, &g)? {
                violations.push(format!(
                    "class {hash}: no trivial-focus collection orbit partitions the vertices"
                ));
            }
        }
    }
    for v in &violations {
        eprintln!("violation: {v}");
    }
    let checked = forms.len() - skipped;
    println!(
        "checked {checked} class(es), {skipped} skipped, {} violation(s) [{label}]",
        violations.len()
    );
    if violations.is_empty() {
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(ExitCode::from(3))
    }
}

fn cmd_conjecture(
    dim: usize,
    source: Option<&Path>,
    bound: Option<i64>,
    budget: Option<u64>,
) -> Result<ExitCode, Error> {
    if !matches!(dim, 3 | 5 | 7) {
        return Err(Error::InvalidInput(format!(
            "conjecture is stated for odd prime dimensions, got {dim}"
        )));
    }
    if dim == 7 && source.is_none() {
        return Err(Error::InvalidInput(
            "dimension 7 is skipped (no source): supply --source FILE with the classes".into(),
        ));
    }
    let (forms, _, label) = forms_for(dim, source, bound, budget)?;
    let holds = conjecture_check::<Int>(dim, &forms)?;
    if holds {
        println!(
            "conjecture holds in dimension {dim}: the fibre-like classes are exactly P^{dim} and (P^1)^{dim} [{label}]"
        );
    } else {
        println!("conjecture FAILS in dimension {dim} on this source [{label}]");
    }
    Ok(ExitCode::SUCCESS)
}
