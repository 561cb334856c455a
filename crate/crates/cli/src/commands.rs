use std::fmt::Write as _;
use std::path::PathBuf;

use serde::Serialize;

use amply::bakry_emery::{
    closed_form_minus, closed_form_plus, is_antibalanced, is_balanced, k_be_sweep, ClosedFormInputs, Signature,
};
use amply::bounds::{format_real, verify_all, Analysis, AnalysisOptions, VerificationReport, DEFAULT_TOLERANCE};
use amply::io::{read_graph, write_graph};
use amply::rational::format_rational;
use amply::transport::lly_sweep;
use amply::{detect_arg, generate, ArgVerdict, Error, Family, Graph};

use crate::Format;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error(transparent)]
    Graph(#[from] Error),
    #[error("{path}: {source}")]
    File { path: PathBuf, source: Error },
}

/// What to print, and the first failed check if any.
#[derive(Debug, Default)]
pub struct Outcome {
    pub stdout: String,
    pub failure: Option<String>,
}

impl From<String> for Outcome {
    fn from(stdout: String) -> Self {
        Outcome { stdout, failure: None }
    }
}

pub enum Source {
    File(PathBuf),
    Family(String, Vec<usize>),
}

struct Loaded {
    graph: Graph,
    signature: Option<Signature>,
}

fn read_file(path: &PathBuf) -> Result<amply::io::GraphFile, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.clone(), source })?;
    read_graph(&text).map_err(|source| CliError::File { path: path.clone(), source })
}

fn load(source: &Source) -> Result<Loaded, CliError> {
    match source {
        Source::File(path) => {
            let file = read_file(path)?;
            Ok(Loaded { graph: file.graph, signature: file.signature })
        }
        Source::Family(name, params) => {
            let graph = generate(&Family::from_args(name, params)?)?;
            Ok(Loaded { graph, signature: None })
        }
    }
}

fn json<T: Serialize + ?Sized>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}

/// Left-aligned columns separated by two spaces.
fn table(headers: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = headers.iter().map(|h| h.len()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let mut out = String::new();
    let mut line = |cells: &mut dyn Iterator<Item = &str>| {
        let parts: Vec<String> = cells.zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
        let _ = writeln!(out, "{}", parts.join("  ").trim_end());
    };
    line(&mut headers.iter().copied());
    for row in rows {
        line(&mut row.iter().map(String::as_str));
    }
    out
}

#[derive(Serialize)]
struct DetectOutput {
    vertices: usize,
    edges: usize,
    #[serde(flatten)]
    verdict: DetectVerdict,
}

#[derive(Serialize)]
#[serde(untagged)]
enum DetectVerdict {
    Decided(ArgVerdict),
    Complete { verdict: &'static str },
}

pub fn detect(source: &Source, format: Format) -> Result<Outcome, CliError> {
    let g = load(source)?.graph;
    let verdict = match detect_arg(&g) {
        Ok(v) => DetectVerdict::Decided(v),
        Err(Error::Complete) => DetectVerdict::Complete { verdict: "complete" },
        Err(e) => return Err(e.into()),
    };
    let out = DetectOutput { vertices: g.vertex_count(), edges: g.edge_count(), verdict };
    Ok(match format {
        Format::Json => json(&out),
        Format::Table => match &out.verdict {
            DetectVerdict::Decided(ArgVerdict::Amply(p)) => {
                table(&["n", "d", "alpha", "beta"], &[vec![p.n.to_string(), p.d.to_string(), p.alpha.to_string(), p.beta.to_string()]])
            }
            DetectVerdict::Decided(ArgVerdict::NotAmply(v)) => format!("not amply regular: {}\n", serde_json::to_string(v).expect("serializes")),
            DetectVerdict::Complete { .. } => "complete graph: no pair at distance 2, beta undefined\n".to_string(),
        },
    }
    .into())
}

#[derive(Serialize)]
struct EdgeCurvature {
    x: usize,
    y: usize,
    kappa: String,
}

pub fn curvature_lly(source: &Source, format: Format) -> Result<Outcome, CliError> {
    let g = load(source)?.graph;
    let rows: Vec<EdgeCurvature> = lly_sweep(&g)?
        .into_iter()
        .map(|((x, y), k)| EdgeCurvature { x, y, kappa: format_rational(&k) })
        .collect();
    Ok(match format {
        Format::Json => json(&rows),
        Format::Table => table(
            &["x", "y", "kappa_lly"],
            &rows.iter().map(|r| vec![r.x.to_string(), r.y.to_string(), r.kappa.clone()]).collect::<Vec<_>>(),
        ),
    }
    .into())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SignatureChoice {
    /// Signature column of the input file, else all `+1`.
    Default,
    Plus,
    Minus,
    File(PathBuf),
}

impl SignatureChoice {
    pub fn parse(words: Option<&[String]>) -> Result<SignatureChoice, CliError> {
        match words {
            None => Ok(SignatureChoice::Default),
            Some([w]) if w == "plus" => Ok(SignatureChoice::Plus),
            Some([w]) if w == "minus" => Ok(SignatureChoice::Minus),
            Some([w, path]) if w == "file" => Ok(SignatureChoice::File(PathBuf::from(path))),
            Some(other) => Err(CliError::Usage(format!(
                "--signature expects plus, minus or file PATH, got {:?}",
                other.join(" ")
            ))),
        }
    }

    fn resolve(&self, loaded: &Loaded) -> Result<Signature, CliError> {
        let g = &loaded.graph;
        match self {
            SignatureChoice::Default => Ok(loaded.signature.clone().unwrap_or_else(|| Signature::all_plus(g))),
            SignatureChoice::Plus => Ok(Signature::all_plus(g)),
            SignatureChoice::Minus => Ok(Signature::all_minus(g)),
            SignatureChoice::File(path) => {
                let file = read_file(path)?;
                if file.graph != *g {
                    return Err(CliError::Usage(format!("{}: graph differs from the input graph", path.display())));
                }
                file.signature
                    .ok_or_else(|| CliError::Usage(format!("{}: no signature column", path.display())))
            }
        }
    }
}

/// Rounds to the 10 significant digits the tables print.
fn round(v: f64) -> f64 {
    format_real(v).parse().unwrap_or(v)
}

#[derive(Serialize)]
struct VertexCurvature {
    x: usize,
    k_be: f64,
    closed_form: Option<f64>,
}

pub fn curvature_be(source: &Source, choice: &SignatureChoice, format: Format) -> Result<Outcome, CliError> {
    let loaded = load(source)?;
    let g = &loaded.graph;
    let sigma = choice.resolve(&loaded)?;
    let values = k_be_sweep(g, &sigma)?;
    // closed forms exist for signatures switching-equivalent to a constant one
    let form: Option<fn(&ClosedFormInputs) -> f64> = if is_balanced(g, &sigma) {
        Some(closed_form_plus)
    } else if is_antibalanced(g, &sigma) {
        Some(closed_form_minus)
    } else {
        None
    };
    let params = match detect_arg(g) {
        Ok(ArgVerdict::Amply(p)) => Some(p),
        _ => None,
    };
    let mut rows = Vec::with_capacity(values.len());
    for (x, &k) in values.iter().enumerate() {
        let closed_form = match (params, form) {
            (Some(p), Some(f)) => Some(f(&ClosedFormInputs::new(g, p, x)?)),
            _ => None,
        };
        rows.push(VertexCurvature { x, k_be: round(k), closed_form: closed_form.map(round) });
    }
    Ok(match format {
        Format::Json => json(&rows),
        Format::Table => {
            let cells: Vec<Vec<String>> = rows
                .iter()
                .map(|r| {
                    let mut row = vec![r.x.to_string(), format_real(r.k_be)];
                    if let Some(c) = r.closed_form {
                        row.push(format_real(c));
                    }
                    row
                })
                .collect();
            if rows.iter().any(|r| r.closed_form.is_some()) {
                table(&["x", "k_be", "closed_form"], &cells)
            } else {
                table(&["x", "k_be"], &cells)
            }
        }
    }
    .into())
}

pub fn verify_options(seed: u64, tolerance: Option<f64>, samples: usize) -> Result<AnalysisOptions, CliError> {
    let tolerance = match tolerance {
        None => DEFAULT_TOLERANCE,
        Some(t) if t.is_finite() && (0.0..=DEFAULT_TOLERANCE).contains(&t) => t,
        Some(t) => {
            return Err(CliError::Usage(format!(
                "--tolerance {t:e} would loosen the default {DEFAULT_TOLERANCE:e}; only tightening is allowed"
            )))
        }
    };
    if samples == 0 {
        return Err(CliError::Usage("--samples must be positive".into()));
    }
    Ok(AnalysisOptions { seed, tolerance, samples })
}

fn render_report(r: &VerificationReport) -> Vec<String> {
    let side = |v: Option<amply::bounds::Value>| v.map_or_else(|| "-".to_string(), |v| v.render());
    vec![
        r.bound_id.to_string(),
        serde_json::to_value(r.hypothesis_status).expect("serializes").as_str().unwrap_or_default().to_string(),
        side(r.lhs),
        r.relation.symbol().to_string(),
        side(r.rhs),
        r.passed.map_or("-".to_string(), |p| if p { "pass" } else { "FAIL" }.to_string()),
        if r.tight { "tight" } else { "" }.to_string(),
    ]
}

pub fn verify(source: &Source, options: AnalysisOptions, format: Format) -> Result<Outcome, CliError> {
    let g = load(source)?.graph;
    let analysis = Analysis::new(&g, options)?;
    let reports = verify_all(&analysis);
    let stdout = match format {
        Format::Json => json(&reports),
        Format::Table => table(
            &["bound", "hypothesis", "lhs", "rel", "rhs", "result", "tight"],
            &reports.iter().map(render_report).collect::<Vec<_>>(),
        ),
    };
    let failure = reports
        .iter()
        .find(|r| r.failed())
        .map(|r| serde_json::to_string(r).expect("serializes"));
    Ok(Outcome { stdout, failure })
}

pub fn gen(family: &str, params: &[usize]) -> Result<Outcome, CliError> {
    let g = generate(&Family::from_args(family, params)?)?;
    Ok(write_graph(&g).into())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn signature_words() {
        let w = |s: &[&str]| s.iter().map(|x| x.to_string()).collect::<Vec<_>>();
        assert_eq!(SignatureChoice::parse(None).unwrap(), SignatureChoice::Default);
        assert_eq!(SignatureChoice::parse(Some(&w(&["minus"]))).unwrap(), SignatureChoice::Minus);
        assert_eq!(SignatureChoice::parse(Some(&w(&["file", "a.txt"]))).unwrap(), SignatureChoice::File("a.txt".into()));
        assert!(SignatureChoice::parse(Some(&w(&["file"]))).is_err());
        assert!(SignatureChoice::parse(Some(&w(&["plus", "x"]))).is_err());
    }

    #[test]
    fn tolerance_only_tightens() {
        assert_eq!(verify_options(1, None, 10).unwrap().tolerance, DEFAULT_TOLERANCE);
        assert_eq!(verify_options(1, Some(1e-10), 10).unwrap().tolerance, 1e-10);
        assert!(verify_options(1, Some(1e-6), 10).is_err());
        assert!(verify_options(1, Some(f64::NAN), 10).is_err());
    }

    #[test]
    fn table_alignment() {
        let t = table(&["a", "bb"], &[vec!["123".into(), "x".into()]]);
        assert_eq!(t, "a    bb\n123  x\n");
    }
}
