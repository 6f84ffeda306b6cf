//! `zacyclic` command-line driver.
//!
//! Exit codes: 0 success, 1 a check came back negative (violation, intersecting
//! curves, failed pipeline stage), 2 usage or input errors.

mod report;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};

use zacyclic::collapse::{free_faces, greedy_collapse, CollapseStrategy};
use zacyclic::constructions::{build_named, Built, PolyhedralComplex, NAMED};
use zacyclic::formats::{parse_complex, parse_coordinates, parse_curve, write_complex, write_coordinates, write_polyhedral, ComplexFile};
use zacyclic::geometry::{linking_number, verify_embedding, EmbeddingReport, VerifyOptions};
use zacyclic::homology::{is_z_acyclic, reduced_homology_all};
use zacyclic::pi1::{
    abelianization, coset_enumeration, edge_path_presentation, find_epimorphism, tietze_simplify, CosetOutcome, PermGroup,
    DEFAULT_MAX_COSETS, DEFAULT_MAX_GENERATORS,
};
use zacyclic::realization::{export_model, match_action, search_coordinates, ModelFormat, DEFAULT_BUDGET};
use zacyclic::{Error, SimplicialComplex};

#[derive(Parser)]
#[command(name = "zacyclic", version, about = "Z-acyclic 2-complexes: construction, invariants and exact realization checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write one of the built-in complexes.
    Build {
        name: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Homology, fundamental group or collapsibility of a complex file or built-in name.
    Analyze { complex: String, what: Analysis },
    /// Certify that coordinates realize a complex.
    Verify { complex: String, coords: PathBuf },
    /// Search for integer coordinates invariant under the tetrahedral rotation group.
    Search {
        complex: String,
        #[arg(long = "box", default_value_t = 4)]
        box_bound: u32,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Also write the model as OFF.
        #[arg(long)]
        off: Option<PathBuf>,
    },
    /// Linking number of two closed polygonal curves.
    Link { curve1: PathBuf, curve2: PathBuf },
    /// Run the full pipeline on the 23-vertex complex and write a certificate report.
    Report {
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Search in this box instead of using the stored model.
        #[arg(long = "box")]
        box_bound: Option<u32>,
        /// Directory holding the stored `shaded-r3` model.
        #[arg(long, default_value = "models")]
        models: PathBuf,
        /// Write the complexes and realized models into this directory.
        #[arg(long)]
        emit: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Analysis {
    Homology,
    Pi1,
    Collapse,
}

/// Input or usage problem, reported with exit code 2.
#[derive(Debug)]
struct InputError(anyhow::Error);

fn input<E: Into<anyhow::Error>>(e: E) -> InputError {
    InputError(e.into())
}

type Outcome = std::result::Result<ExitCode, InputError>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Build { name, output } => cmd_build(&name, output.as_deref()),
        Command::Analyze { complex, what } => cmd_analyze(&complex, what),
        Command::Verify { complex, coords } => cmd_verify(&complex, &coords),
        Command::Search { complex, box_bound, budget, output, off } => {
            cmd_search(&complex, box_bound, budget, output.as_deref(), off.as_deref())
        }
        Command::Link { curve1, curve2 } => cmd_link(&curve1, &curve2),
        Command::Report { output, box_bound, models, emit } => {
            report::cmd_report(output.as_deref(), box_bound, &models, emit.as_deref())
        }
    };
    match result {
        Ok(code) => code,
        Err(InputError(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn read(path: &Path) -> std::result::Result<String, InputError> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display())).map_err(input)
}

fn write_or_print(path: Option<&Path>, text: &str) -> std::result::Result<(), InputError> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())).map_err(input),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// A complex file path, or the name of a built-in construction.
fn load(spec: &str) -> std::result::Result<ComplexFile, InputError> {
    let path = Path::new(spec);
    if path.exists() {
        return parse_complex(&read(path)?).with_context(|| format!("parsing {spec}")).map_err(input);
    }
    match build_named(spec) {
        Ok(Built::Simplicial(k)) => Ok(ComplexFile::Simplicial(k)),
        Ok(Built::Polyhedral(p)) => Ok(ComplexFile::Polyhedral(p)),
        Err(Error::UnknownConstruction(_)) => {
            Err(input(anyhow::anyhow!("`{spec}` is neither a file nor one of: {}", NAMED.join(", "))))
        }
        Err(e) => Err(input(e)),
    }
}

fn load_simplicial(spec: &str) -> std::result::Result<SimplicialComplex, InputError> {
    match load(spec)? {
        ComplexFile::Simplicial(k) => Ok(k),
        ComplexFile::Polyhedral(_) => Err(input(anyhow::anyhow!("`{spec}` is polygonal; this command needs a simplicial complex"))),
    }
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

fn cmd_build(name: &str, output: Option<&Path>) -> Outcome {
    let built = build_named(name).map_err(input)?;
    let (text, counts) = match &built {
        Built::Simplicial(k) => (write_complex(k), k.f_vector()),
        Built::Polyhedral(p) => {
            let (v, e, f) = p.counts();
            (write_polyhedral(p), vec![v, e, f])
        }
    };
    write_or_print(output, &text)?;
    let line = format!("f-vector: {}", join(&counts));
    if output.is_some() {
        println!("{line}");
    } else {
        eprintln!("{line}");
    }
    Ok(ExitCode::SUCCESS)
}

fn homology_report(groups: &[zacyclic::homology::HomologyGroup], acyclic: bool) -> String {
    let mut out = String::new();
    for (d, g) in groups.iter().enumerate() {
        out += &format!("reduced H{d}: {g}\n");
    }
    out += &format!("Z-acyclic: {acyclic}\n");
    out
}

fn polyhedral_homology(p: &PolyhedralComplex) -> String {
    let groups = p.chain_complex().homology(true);
    let acyclic = groups.iter().all(|g| g.is_trivial());
    homology_report(&groups, acyclic)
}

fn cmd_analyze(spec: &str, what: Analysis) -> Outcome {
    let file = load(spec)?;
    let k = match (&file, what) {
        (ComplexFile::Polyhedral(p), Analysis::Homology) => {
            print!("{}", polyhedral_homology(p));
            return Ok(ExitCode::SUCCESS);
        }
        (ComplexFile::Polyhedral(_), _) => {
            return Err(input(anyhow::anyhow!("`{spec}` is polygonal; only homology is available")));
        }
        (ComplexFile::Simplicial(k), _) => k,
    };
    match what {
        Analysis::Homology => print!("{}", homology_report(&reduced_homology_all(k), is_z_acyclic(k))),
        Analysis::Pi1 => print!("{}", pi1_report(k).map_err(input)?),
        Analysis::Collapse => {
            let free = free_faces(k).len();
            let out = greedy_collapse(k, &CollapseStrategy::Lexicographic);
            println!("free faces: {free}; collapsed: {}", out.collapsed_to_point);
            println!("elementary collapses: {}", out.log.len());
            println!("remaining f-vector: {}", join(&out.complex.f_vector()));
        }
    }
    Ok(ExitCode::SUCCESS)
}

pub(crate) struct Pi1Summary {
    pub generators: usize,
    pub relators: usize,
    pub length: usize,
    pub abelianization: String,
    pub epimorphism: Option<Vec<String>>,
    pub epimorphism_note: Option<String>,
    pub order: String,
}

pub(crate) fn pi1_summary(k: &SimplicialComplex) -> anyhow::Result<Pi1Summary> {
    let Some(base) = k.vertices().iter().next() else { bail!("empty complex") };
    let p = edge_path_presentation(k, base)?;
    let s = tietze_simplify(&p, 10_000, 1_000).presentation;
    let (epimorphism, epimorphism_note) = match find_epimorphism(&s, &PermGroup::alternating5(), DEFAULT_MAX_GENERATORS) {
        Ok(Some(h)) => (Some(h.images.iter().map(ToString::to_string).collect()), None),
        Ok(None) => (None, None),
        Err(e) => (None, Some(e.to_string())),
    };
    let order = match coset_enumeration(&s, DEFAULT_MAX_COSETS) {
        CosetOutcome::Order(n) => n.to_string(),
        CosetOutcome::Exceeded => "exceeded".to_string(),
    };
    Ok(Pi1Summary {
        generators: s.generator_count(),
        relators: s.relators().len(),
        length: s.total_length(),
        abelianization: abelianization(&s).to_string(),
        epimorphism,
        epimorphism_note,
        order,
    })
}

fn pi1_report(k: &SimplicialComplex) -> anyhow::Result<String> {
    let s = pi1_summary(k)?;
    let mut out = format!("presentation: {} generators, {} relators, total length {}\n", s.generators, s.relators, s.length);
    out += &format!("abelianization: {}\n", s.abelianization);
    out += &match (&s.epimorphism, &s.epimorphism_note) {
        (Some(images), _) => format!("A5 epimorphism: found, images {}\n", images.join(" ")),
        (None, Some(note)) => format!("A5 epimorphism: not searched ({note})\n"),
        (None, None) => "A5 epimorphism: none\n".to_string(),
    };
    out += &format!("order: {}\n", s.order);
    Ok(out)
}

fn cmd_verify(complex: &str, coords: &Path) -> Outcome {
    let k = load_simplicial(complex)?;
    let c = parse_coordinates(&read(coords)?).with_context(|| format!("parsing {}", coords.display())).map_err(input)?;
    match verify_embedding(&k, &c.coords, VerifyOptions::default()).map_err(input)? {
        EmbeddingReport::Certified(cert) => {
            println!("verdict: pass");
            println!("dim: {}", cert.dim);
            println!("faces: {}", cert.faces);
            println!("pairs checked: {}", cert.pairs_checked);
            println!("prefiltered: {}", cert.prefiltered);
            println!("lp calls: {}", cert.lp_calls);
            Ok(ExitCode::SUCCESS)
        }
        EmbeddingReport::Violated(v) => {
            println!("verdict: fail");
            println!("violation: {v}");
            Ok(ExitCode::from(1))
        }
    }
}

fn cmd_search(complex: &str, box_bound: u32, budget: u64, output: Option<&Path>, off: Option<&Path>) -> Outcome {
    let k = load_simplicial(complex)?;
    let action = match_action(&k, None, 3).map_err(input)?;
    let out = search_coordinates(&k, &action, box_bound, budget).map_err(input)?;
    eprintln!(
        "box {}: {} nodes{}",
        out.stats.box_bound,
        out.stats.nodes,
        if out.stats.budget_exhausted { ", budget exhausted" } else { "" }
    );
    let Some((coords, cert)) = out.found else {
        println!("no realization found");
        return Ok(ExitCode::from(1));
    };
    write_or_print(output, &write_coordinates(&coords))?;
    if let Some(path) = off {
        write_or_print(Some(path), &export_model(&k, &coords, ModelFormat::Off).map_err(input)?)?;
    }
    eprintln!("certified: {} face pairs", cert.pairs_checked);
    Ok(ExitCode::SUCCESS)
}

fn cmd_link(curve1: &Path, curve2: &Path) -> Outcome {
    let c1 = parse_curve(&read(curve1)?).with_context(|| format!("parsing {}", curve1.display())).map_err(input)?;
    let c2 = parse_curve(&read(curve2)?).with_context(|| format!("parsing {}", curve2.display())).map_err(input)?;
    match linking_number(&c1, &c2) {
        Ok(lk) => {
            println!("linking number: {lk}");
            Ok(ExitCode::SUCCESS)
        }
        Err(Error::CurvesIntersect) => {
            println!("curves intersect; linking number undefined");
            Ok(ExitCode::from(1))
        }
        Err(e) => Err(input(e)),
    }
}
