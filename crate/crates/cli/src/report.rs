//! The certificate report: one pass over the 23-vertex complex, from
//! combinatorics to the realization in `R^4`.
//!
//! The body is plain `key: value` text in a fixed order with no timestamps, so
//! identical inputs give byte-identical reports.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;
use std::process::ExitCode;

use anyhow::Context;
use sha2::{Digest, Sha256};

use zacyclic::constructions::{apex, shaded_complex, the_23_vertex_complex};
use zacyclic::formats::{parse_coordinates, write_complex, write_coordinates};
use zacyclic::geometry::{find_linked_cycle_pair, verify_embedding, Coordinates, EmbeddingReport, Point, VerifyOptions};
use zacyclic::homology::{is_z_acyclic, reduced_homology_all};
use zacyclic::realization::{cone_realization, export_model, match_action, search_coordinates, ModelFormat, DEFAULT_BUDGET};

use crate::{input, join, pi1_summary, write_or_print, InputError, Outcome};

const DEFAULT_BOX: u32 = 4;
const CYCLE_LENGTH: usize = 16;

fn sha256(text: &str) -> String {
    Sha256::digest(text.as_bytes()).iter().map(|b| format!("{b:02x}")).collect()
}

struct Report {
    body: String,
    hashes: Vec<(String, String)>,
    failure: Option<String>,
}

impl Report {
    fn line(&mut self, indent: usize, key: &str, value: impl std::fmt::Display) {
        let value = value.to_string();
        let sep = if value.is_empty() { "" } else { " " };
        writeln!(self.body, "{:indent$}{key}:{sep}{value}", "", indent = indent * 2).unwrap();
    }

    fn fail(&mut self, stage: &str) {
        self.failure.get_or_insert_with(|| stage.to_string());
    }

    fn finish(mut self) -> (String, bool) {
        self.line(0, "tool version", env!("CARGO_PKG_VERSION"));
        self.line(0, "input hashes", "");
        for (name, hash) in std::mem::take(&mut self.hashes) {
            self.line(1, &name, format!("sha256:{hash}"));
        }
        let ok = self.failure.is_none();
        match &self.failure {
            None => self.line(0, "status", "complete"),
            Some(stage) => self.line(0, "status", format!("incomplete ({stage} failed)")),
        }
        (self.body, ok)
    }
}

/// The stored model when present and no box was requested; otherwise a fresh search.
fn shaded_model(
    r: &mut Report,
    shaded: &zacyclic::SimplicialComplex,
    box_bound: Option<u32>,
    models: &Path,
) -> std::result::Result<Option<Coordinates>, InputError> {
    let action = match_action(shaded, None, 3).map_err(input)?;
    let stored = models.join("shaded-r3");
    if box_bound.is_none() && stored.exists() {
        let text = fs::read_to_string(&stored).with_context(|| format!("reading {}", stored.display())).map_err(input)?;
        let coords = parse_coordinates(&text).with_context(|| format!("parsing {}", stored.display())).map_err(input)?.coords;
        r.hashes.push(("shaded-r3".into(), sha256(&text)));
        r.line(1, "source", "stored model shaded-r3");
        r.line(1, "equivariant", action.is_equivariant(&coords));
        return Ok(Some(coords));
    }
    let b = box_bound.unwrap_or(DEFAULT_BOX);
    let out = search_coordinates(shaded, &action, b, DEFAULT_BUDGET).map_err(input)?;
    r.line(1, "source", format!("search, {} nodes", out.stats.nodes));
    Ok(out.found.map(|(c, _)| c))
}

pub(crate) fn cmd_report(output: Option<&Path>, box_bound: Option<u32>, models: &Path, emit: Option<&Path>) -> Outcome {
    let full = the_23_vertex_complex().map_err(input)?;
    let shaded = shaded_complex().map_err(input)?;
    let mut r = Report { body: String::new(), hashes: Vec::new(), failure: None };
    r.hashes.push(("complex23".into(), sha256(&write_complex(&full))));

    r.line(0, "complex", "complex23");
    r.line(0, "f-vector", join(&full.f_vector()));
    r.line(0, "euler characteristic", full.euler_characteristic());
    let acyclic = is_z_acyclic(&full);
    r.line(0, "acyclic", acyclic);
    r.line(0, "reduced homology", join(&reduced_homology_all(&full)));
    if !acyclic {
        r.fail("homology");
    }

    r.line(0, "pi1", "");
    let pi1 = pi1_summary(&full).map_err(input)?;
    r.line(1, "presentation", format!("{} generators, {} relators, total length {}", pi1.generators, pi1.relators, pi1.length));
    r.line(1, "abelianization", &pi1.abelianization);
    match &pi1.epimorphism {
        Some(images) => r.line(1, "a5 epimorphism", images.join(" ")),
        None => {
            r.line(1, "a5 epimorphism", "none");
            r.fail("pi1");
        }
    }
    r.line(1, "order", &pi1.order);

    r.line(0, "embedding", "");
    r.line(1, "complex", "shaded");
    r.line(1, "f-vector", join(&shaded.f_vector()));
    let model = shaded_model(&mut r, &shaded, box_bound, models)?;
    let mut certified = None;
    match &model {
        None => {
            r.line(1, "verdict", "no realization found");
            r.fail("embedding");
        }
        Some(coords) => {
            r.line(1, "dim", coords.dim());
            r.line(1, "box", coords.max_abs());
            match verify_embedding(&shaded, coords, VerifyOptions::default()).map_err(input)? {
                EmbeddingReport::Certified(cert) => {
                    r.line(1, "pairs checked", cert.pairs_checked);
                    r.line(1, "verdict", "pass");
                    certified = Some(coords.clone());
                }
                EmbeddingReport::Violated(v) => {
                    r.line(1, "verdict", format!("fail: {v}"));
                    r.fail("embedding");
                }
            }
        }
    }

    r.line(0, "cone", "");
    let apex_point = Point::from_ints(&[0, 0, 0, 1]);
    let mut lifted = None;
    match &certified {
        None => r.line(1, "verdict", "skipped"),
        Some(coords) => {
            r.line(1, "apex", format!("{} at {apex_point}", apex()));
            match cone_realization(&full, coords, &apex(), &apex_point) {
                Ok((c, cert)) => {
                    r.line(1, "dim", cert.dim);
                    r.line(1, "pairs checked", cert.pairs_checked);
                    r.line(1, "verdict", "pass");
                    lifted = Some(c);
                }
                Err(e) => {
                    r.line(1, "verdict", format!("fail: {e}"));
                    r.fail("cone");
                }
            }
        }
    }

    match &certified {
        None => r.line(0, "linked pair", "skipped"),
        Some(coords) => {
            let side = full.link(&apex()).map_err(input)?.vertices().clone();
            match find_linked_cycle_pair(&shaded, coords, &side, CYCLE_LENGTH).map_err(input)? {
                None => r.line(0, "linked pair", "none"),
                Some(pair) => {
                    r.line(0, "linked pair", "");
                    r.line(1, "cycle1", join(&pair.cycle1));
                    r.line(1, "cycle2", join(&pair.cycle2));
                    r.line(1, "lk", pair.lk);
                }
            }
        }
    }

    if let Some(dir) = emit {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display())).map_err(input)?;
        let mut files = vec![("complex23", write_complex(&full)), ("shaded", write_complex(&shaded))];
        if let Some(c) = &certified {
            files.push(("shaded-r3", write_coordinates(c)));
            files.push(("shaded-r3.off", export_model(&shaded, c, ModelFormat::Off).map_err(input)?));
        }
        if let Some(c) = &lifted {
            files.push(("full-r4", write_coordinates(c)));
        }
        for (name, text) in files {
            write_or_print(Some(&dir.join(name)), &text)?;
        }
    }

    let (text, ok) = r.finish();
    write_or_print(output, &text)?;
    Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
}
