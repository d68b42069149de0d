//! Command-line front end. [`run_command`] parses an argument vector, runs
//! one computation and returns a [`Report`]; the binary only prints it and
//! exits with [`Report::exit_code`].

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use obstrukt_core::algebra::{AlgebraElement, PresentedAlgebra};
use obstrukt_core::bockstein::{
    beta_certificate, browder_prediction, e2_page, page_matches, CertificateError, E2Page,
};
use obstrukt_core::models::{bo_algebra, mo_vanishing_check, serre_generators, EilenbergMacLane};
use obstrukt_core::oracle::{SplitPoly, SplittingOracle};
use obstrukt_core::series::{crossing_degree, em_series, mo_series, poly_series, PoincareSeries};
use obstrukt_core::spec::{AlgebraSpec, SpecError};
use obstrukt_core::steenrod::{adem_reduce, SqWord};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Environment variable replacing the built-in default truncation degrees.
pub const MAX_DEGREE_ENV: &str = "OBSTRUKT_MAX_DEGREE";

const DEFAULT_MODEL_DEGREE: u32 = 24;
const DEFAULT_GROWTH_DEGREE: u32 = 60;
const DEFAULT_DIM_BOUND: u32 = 25;

#[derive(Debug, Error)]
pub enum LoadError {
    #[error("cannot read {path}: {message}")]
    Io { path: PathBuf, message: String },
    #[error(transparent)]
    Spec(#[from] SpecError),
}

/// Reads an algebra-spec JSON file and builds the algebra it describes.
pub fn load_algebra_spec(path: impl AsRef<Path>) -> Result<PresentedAlgebra, LoadError> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| LoadError::Io {
        path: path.to_path_buf(),
        message: e.to_string(),
    })?;
    Ok(AlgebraSpec::from_json(&text)?.to_algebra()?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Rejected,
    Failed,
    Usage,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: String,
    pub arguments: Vec<String>,
    pub version: String,
    pub status: Status,
    pub reasons: Vec<String>,
    pub payload: Option<Value>,
    /// The text to print: pretty JSON with `--json`, human-readable otherwise.
    #[serde(skip)]
    pub rendered: String,
}

impl Report {
    pub fn exit_code(&self) -> i32 {
        match self.status {
            Status::Ok => 0,
            Status::Rejected => 1,
            Status::Failed => 2,
            Status::Usage => 3,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "obstrukt",
    version,
    about = "Steenrod-square obstruction computations over F2"
)]
struct Cli {
    /// Emit a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Reduce a Steenrod word to the admissible basis.
    Adem {
        /// Word such as "Sq1 Sq2", "Sq^2Sq^3" or "Sq[2,3]".
        word: String,
    },
    /// List the Serre generators Sq^J(ι_k) of H*(K(Z/2,k)).
    SerreGens(ModelArgs),
    /// Build H*(K(Z/2,k)) with its Steenrod action.
    Em {
        #[command(flatten)]
        model: ModelArgs,
        /// Write the model as an algebra-spec JSON file.
        #[arg(long)]
        export: Option<PathBuf>,
    },
    /// Build H*(BO(k)) with the Wu-formula action.
    Bo {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long)]
        export: Option<PathBuf>,
    },
    /// Check Sq^1 Sq^I(U_k) = 0 on the Thom class for every I of excess k.
    MoCheck {
        #[arg(long)]
        k: u32,
        /// Check classes Sq^I(U_k) with k + |I| + 1 <= this bound.
        #[arg(long)]
        dim_bound: Option<u32>,
    },
    /// Sq^1-cohomology of a model or of an algebra-spec file.
    E2 {
        #[arg(long, conflicts_with = "spec", required_unless_present = "spec")]
        k: Option<u32>,
        #[arg(long)]
        spec: Option<PathBuf>,
        /// Truncation degree of the algebra; the page runs one degree lower.
        #[arg(long)]
        max_degree: Option<u32>,
        /// List cycle representatives of each E2 class.
        #[arg(long)]
        representatives: bool,
    },
    /// Certify that β Sq^I(ι_k) is nonzero for I = (|J| + k, J).
    Certify {
        #[arg(long)]
        k: u32,
        /// The word J, e.g. "" or "Sq[2,1]".
        #[arg(long, default_value = "")]
        tail: String,
        #[arg(long)]
        max_degree: Option<u32>,
    },
    /// Compare the growth of H*(K(Z/2,k)) against MO(k) or a free algebra.
    Growth {
        #[arg(long)]
        k: u32,
        #[arg(long, value_enum, default_value_t = Against::Mo)]
        against: Against,
        /// Generator degrees of the free comparison algebra, e.g. 1,2,3.
        #[arg(long, value_delimiter = ',')]
        degrees: Vec<u32>,
        #[arg(long)]
        max_degree: Option<u32>,
    },
    /// Evaluate on the polynomial algebra F2[t_1..t_m] with |t_i| = 1.
    Oracle {
        /// Number of variables m.
        #[arg(long)]
        vars: usize,
        /// Steenrod word to apply.
        #[arg(long, conflicts_with = "wu", required_unless_present = "wu")]
        word: Option<String>,
        /// Polynomial to act on; defaults to t1*...*tm.
        #[arg(long, requires = "word")]
        input: Option<String>,
        /// Compute Sq^i(e_j) in m variables and compare with the Wu formula.
        #[arg(long, requires = "j")]
        wu: Option<u32>,
        #[arg(long)]
        j: Option<u32>,
    },
}

#[derive(Args, Debug)]
struct ModelArgs {
    #[arg(long)]
    k: u32,
    #[arg(long)]
    max_degree: Option<u32>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Against {
    Mo,
    Degrees,
}

/// Outcome of a subcommand before it is wrapped into a [`Report`].
struct Outcome {
    status: Status,
    reasons: Vec<String>,
    payload: Option<Value>,
    human: String,
}

impl Outcome {
    fn ok(payload: Value, human: String) -> Self {
        Outcome {
            status: Status::Ok,
            reasons: Vec::new(),
            payload: Some(payload),
            human,
        }
    }

    fn rejected(reason: impl Into<String>) -> Self {
        Outcome {
            status: Status::Rejected,
            reasons: vec![reason.into()],
            payload: None,
            human: String::new(),
        }
    }

    fn failed(reason: impl Into<String>) -> Self {
        Outcome {
            status: Status::Failed,
            reasons: vec![reason.into()],
            payload: None,
            human: String::new(),
        }
    }
}

/// Runs with the default truncation taken from `OBSTRUKT_MAX_DEGREE` when set.
pub fn run_command<I, T>(argv: I) -> Report
where
    I: IntoIterator<Item = T>,
    T: Into<String>,
{
    let default = std::env::var(MAX_DEGREE_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok());
    run_command_with(argv, default)
}

/// As [`run_command`], with an explicit replacement for the default
/// truncation instead of reading the environment.
pub fn run_command_with<I, T>(argv: I, default_max_degree: Option<u32>) -> Report
where
    I: IntoIterator<Item = T>,
    T: Into<String>,
{
    let argv: Vec<String> = argv.into_iter().map(Into::into).collect();
    let arguments = argv.iter().skip(1).cloned().collect::<Vec<_>>();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            let status = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Status::Ok,
                _ => Status::Usage,
            };
            let reasons = if status == Status::Usage {
                vec![text.lines().next().unwrap_or_default().to_string()]
            } else {
                Vec::new()
            };
            return Report {
                command: arguments.first().cloned().unwrap_or_default(),
                arguments,
                version: VERSION.into(),
                status,
                reasons,
                payload: None,
                rendered: text,
            };
        }
    };
    let command = command_name(&cli.command).to_string();
    let outcome = dispatch(cli.command, default_max_degree);
    let mut report = Report {
        command,
        arguments,
        version: VERSION.into(),
        status: outcome.status,
        reasons: outcome.reasons,
        payload: outcome.payload,
        rendered: String::new(),
    };
    report.rendered = if cli.json {
        report.to_json() + "\n"
    } else {
        let mut text = String::new();
        for r in &report.reasons {
            let tag = match report.status {
                Status::Rejected => "rejected",
                Status::Failed => "failed",
                _ => "note",
            };
            text.push_str(&format!("{tag}: {r}\n"));
        }
        text.push_str(&outcome.human);
        text
    };
    report
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Adem { .. } => "adem",
        Command::SerreGens(_) => "serre-gens",
        Command::Em { .. } => "em",
        Command::Bo { .. } => "bo",
        Command::MoCheck { .. } => "mo-check",
        Command::E2 { .. } => "e2",
        Command::Certify { .. } => "certify",
        Command::Growth { .. } => "growth",
        Command::Oracle { .. } => "oracle",
    }
}

fn dispatch(command: Command, default: Option<u32>) -> Outcome {
    let model_default = default.unwrap_or(DEFAULT_MODEL_DEGREE);
    match command {
        Command::Adem { word } => adem(&word),
        Command::SerreGens(m) => serre_gens(m.k, m.max_degree.unwrap_or(model_default)),
        Command::Em { model, export } => {
            em(model.k, model.max_degree.unwrap_or(model_default), export)
        }
        Command::Bo { model, export } => {
            bo(model.k, model.max_degree.unwrap_or(model_default), export)
        }
        Command::MoCheck { k, dim_bound } => mo_check(k, dim_bound.unwrap_or(DEFAULT_DIM_BOUND)),
        Command::E2 {
            k,
            spec,
            max_degree,
            representatives,
        } => e2(
            k,
            spec,
            max_degree.unwrap_or(model_default),
            representatives,
        ),
        Command::Certify {
            k,
            tail,
            max_degree,
        } => certify(k, &tail, max_degree.or(default)),
        Command::Growth {
            k,
            against,
            degrees,
            max_degree,
        } => growth(
            k,
            against,
            degrees,
            max_degree.unwrap_or(default.unwrap_or(DEFAULT_GROWTH_DEGREE)),
        ),
        Command::Oracle {
            vars,
            word,
            input,
            wu,
            j,
        } => match (word, wu, j) {
            (Some(w), _, _) => oracle_word(vars, &w, input.as_deref()),
            (None, Some(i), Some(j)) => oracle_wu(vars, i, j),
            _ => Outcome::rejected("oracle needs --word or --wu with --j"),
        },
    }
}

fn word_json(w: &SqWord) -> Value {
    json!(w.entries())
}

fn adem(input: &str) -> Outcome {
    let word: SqWord = match input.parse() {
        Ok(w) => w,
        Err(e) => return Outcome::rejected(e.to_string()),
    };
    let reduced = match adem_reduce(&word) {
        Ok(r) => r,
        Err(e) => return Outcome::failed(e.to_string()),
    };
    let payload = json!({
        "input": word_json(&word),
        "dimension": word.dimension(),
        "admissible": reduced.terms().map(word_json).collect::<Vec<_>>(),
        "display": reduced.to_string(),
    });
    let human = format!(
        "{reduced}\n{} = {}\n",
        word.superscript(),
        reduced.superscript()
    );
    Outcome::ok(payload, human)
}

fn serre_gens(k: u32, max_degree: u32) -> Outcome {
    if k == 0 {
        return Outcome::rejected("k must be at least 1");
    }
    let gens = serre_generators(k, max_degree);
    let payload = json!({
        "k": k,
        "max_degree": max_degree,
        "generators": gens.iter().map(|g| json!({
            "word": word_json(&g.word),
            "degree": g.degree(),
            "excess": g.word.excess().unwrap_or(0),
            "name": g.name(),
        })).collect::<Vec<_>>(),
    });
    let mut human = format!("H*(K(Z/2,{k})) is polynomial on, through degree {max_degree}:\n");
    for g in &gens {
        human.push_str(&format!("  {:>4}  {}\n", g.degree(), g.pretty()));
    }
    Outcome::ok(payload, human)
}

/// Generators, per-degree dimensions and the nonzero `Sq^a` on generators.
fn model_payload(alg: &PresentedAlgebra) -> (Value, String) {
    let dims: Vec<usize> = (0..=alg.truncation())
        .map(|n| alg.monomial_basis(n).map(|b| b.len()).unwrap_or(0))
        .collect();
    let mut action = Vec::new();
    let mut table = String::new();
    for (i, g) in alg.generators().iter().enumerate() {
        let x = AlgebraElement::generator(i);
        for a in 1..=g.degree {
            if g.degree + a > alg.truncation() {
                break;
            }
            let image = alg.sq(a, &x);
            if image.is_zero() {
                continue;
            }
            let text = alg.format_element(&image);
            table.push_str(&format!(
                "  Sq{}({}) = {}\n",
                obstrukt_core::steenrod::superscript_digits(a),
                g.name,
                text
            ));
            action.push(json!({ "generator": g.name, "a": a, "image": text }));
        }
    }
    let generators: Vec<Value> = alg
        .generators()
        .iter()
        .map(|g| json!({ "name": g.name, "degree": g.degree }))
        .collect();
    let human = format!(
        "dimensions by degree 0..={}: {}\nnonzero squares on generators:\n{table}",
        alg.truncation(),
        dims.iter()
            .map(usize::to_string)
            .collect::<Vec<_>>()
            .join(" ")
    );
    (
        json!({ "generators": generators, "dimensions": dims, "action": action }),
        human,
    )
}

fn export(alg: &PresentedAlgebra, path: &Path) -> Result<(), String> {
    fs::write(path, AlgebraSpec::from_algebra(alg).to_json() + "\n")
        .map_err(|e| format!("cannot write {}: {e}", path.display()))
}

fn finish_model(
    title: String,
    k: u32,
    alg: &PresentedAlgebra,
    path: Option<PathBuf>,
    extra: Vec<(&str, Value)>,
) -> Outcome {
    let (mut payload, body) = model_payload(alg);
    let obj = payload.as_object_mut().expect("object");
    obj.insert("k".into(), json!(k));
    obj.insert("max_degree".into(), json!(alg.truncation()));
    for (key, v) in extra {
        obj.insert(key.into(), v);
    }
    let mut human = format!("{title}\n{body}");
    if let Some(path) = path {
        if let Err(e) = export(alg, &path) {
            return Outcome::failed(e);
        }
        obj.insert("exported".into(), json!(path.display().to_string()));
        human.push_str(&format!("exported to {}\n", path.display()));
    }
    Outcome::ok(payload, human)
}

fn em(k: u32, max_degree: u32, path: Option<PathBuf>) -> Outcome {
    let model = match EilenbergMacLane::new(k, max_degree) {
        Ok(m) => m,
        Err(e) => return Outcome::rejected(e.to_string()),
    };
    let pretty: Vec<Value> = model
        .generators()
        .iter()
        .map(|g| json!({ "name": g.name(), "word": word_json(&g.word) }))
        .collect();
    let mut title = format!("H*(K(Z/2,{k})) through degree {max_degree}; generators:");
    for g in model.generators() {
        title.push_str(&format!(
            "\n  {:>4}  {}  [{}]",
            g.degree(),
            g.pretty(),
            g.name()
        ));
    }
    finish_model(
        title,
        k,
        model.algebra(),
        path,
        vec![("serre_words", json!(pretty))],
    )
}

fn bo(k: u32, max_degree: u32, path: Option<PathBuf>) -> Outcome {
    let alg = match bo_algebra(k, max_degree) {
        Ok(a) => a,
        Err(e) => return Outcome::rejected(e.to_string()),
    };
    let title = format!("H*(BO({k})) = F2[w1..w{k}] through degree {max_degree}");
    finish_model(title, k, &alg, path, Vec::new())
}

fn mo_check(k: u32, dim_bound: u32) -> Outcome {
    if k < 2 {
        return Outcome::rejected(format!("k = {k}: the Thom-class check needs k >= 2"));
    }
    let report = match mo_vanishing_check(k, dim_bound) {
        Ok(r) => r,
        Err(e) => return Outcome::rejected(e.to_string()),
    };
    let mut human = format!(
        "Sq¹Sq^I(U{}) for admissible I of excess {k}, k + |I| + 1 <= {dim_bound}:\n",
        sub(k)
    );
    for e in &report.entries {
        human.push_str(&format!(
            "  {:<24} degree {:>3}  Sq¹ = 0: {:<5}  square identity: {:<5} {}\n",
            e.word.superscript(),
            e.degree,
            e.sq1_vanishes,
            e.square_identity,
            if e.passed { "pass" } else { "FAIL" }
        ));
        if let Some(note) = &e.note {
            human.push_str(&format!("      note: {note}\n"));
        }
    }
    human.push_str(&format!(
        "{} classes checked; the step from Sq¹-vanishing to integrality uses that all torsion in H*(BO(k);Z) has order 2 (cited, not verified)\n",
        report.entries.len()
    ));
    let passed = report.passed;
    let mut out = Outcome::ok(serde_json::to_value(&report).expect("serializable"), human);
    if !passed {
        out.status = Status::Failed;
        out.reasons.push("some class failed the check".into());
    }
    out
}

fn page_json(page: &E2Page) -> Value {
    serde_json::to_value(&page.records).expect("serializable")
}

fn e2(k: Option<u32>, spec: Option<PathBuf>, max_degree: u32, reps: bool) -> Outcome {
    let (alg, source) = match (k, &spec) {
        (_, Some(path)) => match load_algebra_spec(path) {
            Ok(a) => (a, path.display().to_string()),
            Err(e) => return Outcome::rejected(e.to_string()),
        },
        (Some(k), None) => match EilenbergMacLane::new(k, max_degree) {
            Ok(m) => (m.into_algebra(), format!("K(Z/2,{k})")),
            Err(e) => return Outcome::rejected(e.to_string()),
        },
        (None, None) => return Outcome::rejected("e2 needs --k or --spec"),
    };
    let top = alg.truncation().min(max_degree);
    if top == 0 {
        return Outcome::rejected("truncation must be at least 1");
    }
    let page = match e2_page(&alg, top - 1, reps) {
        Ok(p) => p,
        Err(e) => return Outcome::failed(e.to_string()),
    };
    let comparison = k
        .filter(|_| spec.is_none())
        .map(|k| page_matches(&page, &browder_prediction(k, top - 1).series));
    let mut human = format!(
        "Sq¹-cohomology of H*({source}) in degrees 0..={}\n",
        top - 1
    );
    human.push_str("     n   dim  cycles  bounds    E2");
    if comparison.is_some() {
        human.push_str("  predicted");
    }
    human.push('\n');
    for (i, r) in page.records.iter().enumerate() {
        human.push_str(&format!(
            "  {:>4}  {:>4}  {:>6}  {:>6}  {:>4}",
            r.degree, r.full_dim, r.cycle_dim, r.boundary_dim, r.e2_dim
        ));
        if let Some(c) = &comparison {
            human.push_str(&format!("  {:>9}", c[i].2));
        }
        if let Some(reps) = &r.representatives {
            if !reps.is_empty() {
                human.push_str(&format!("   {}", reps.join(", ")));
            }
        }
        human.push('\n');
    }
    let matches = comparison.as_ref().map(|c| c.iter().all(|x| x.3));
    let payload = json!({
        "source": source,
        "max_degree": top - 1,
        "records": page_json(&page),
        "prediction": comparison.as_ref().map(|c| c.iter().map(|x| x.2).collect::<Vec<_>>()),
        "matches": matches,
    });
    let mut out = Outcome::ok(payload, human);
    if matches == Some(false) {
        out.status = Status::Failed;
        let bad: Vec<String> = comparison
            .unwrap()
            .iter()
            .filter(|x| !x.3)
            .map(|x| format!("degree {}: computed {}, predicted {}", x.0, x.1, x.2))
            .collect();
        out.reasons.push(format!(
            "page differs from the prediction ({})",
            bad.join("; ")
        ));
    }
    out
}

fn sub(n: u32) -> String {
    obstrukt_core::steenrod::subscript_digits(n)
}

fn certify(k: u32, tail: &str, max_degree: Option<u32>) -> Outcome {
    let tail: SqWord = match tail.parse() {
        Ok(w) => w,
        Err(e) => return Outcome::rejected(e.to_string()),
    };
    let needed = 2 * (k + tail.dimension()) + 2;
    let truncation = max_degree.unwrap_or(needed);
    let cert = match beta_certificate(k, &tail, truncation) {
        Ok(c) => c,
        Err(CertificateError::Rejected(m)) => return Outcome::rejected(m),
        Err(e) => return Outcome::failed(e.to_string()),
    };
    let iota = format!("ι{}", sub(k));
    let mut human = format!(
        "certificate: k = {k}, J = {}\n  y = {}({iota}) = {} in degree {}\n  obstruction: {} ≠ 0 in degree {}\n  realized as a {k}-dimensional class in a closed {}-manifold\n  monomial form: {}\nverified:\n",
        if tail.is_empty() { "()".to_string() } else { tail.superscript() },
        cert.head_word.superscript(),
        cert.class_pretty,
        cert.class_degree,
        cert.obstruction_pretty,
        cert.obstruction_degree,
        cert.ambient_bound,
        cert.class,
    );
    for v in &cert.verified {
        human.push_str(&format!("  - {v}\n"));
    }
    human.push_str("cited:\n");
    for c in &cert.cited {
        human.push_str(&format!("  - {c}\n"));
    }
    Outcome::ok(serde_json::to_value(&cert).expect("serializable"), human)
}

fn series_json(s: &PoincareSeries) -> Value {
    serde_json::to_value(s).expect("serializable")
}

fn growth(k: u32, against: Against, degrees: Vec<u32>, max_degree: u32) -> Outcome {
    if k == 0 {
        return Outcome::rejected("k must be at least 1");
    }
    let (a, b) = match against {
        Against::Mo => (em_series(k, max_degree).reduced(), mo_series(k, max_degree)),
        Against::Degrees => {
            if k < 2 {
                return Outcome::rejected("the finitely generated comparison needs k > 1");
            }
            match poly_series(&degrees, max_degree) {
                Ok(p) => (em_series(k, max_degree), p),
                Err(e) => return Outcome::rejected(e.to_string()),
            }
        }
    };
    let crossing = crossing_degree(&a, &b).expect("same truncation");
    let mut human = format!(
        "comparing {} with {} through degree {max_degree}\n",
        a.label, b.label
    );
    match crossing {
        Some(n) => human.push_str(&format!(
            "first degree where the first is larger: N = {n} ({} > {})\n",
            a.coefficient(n),
            b.coefficient(n)
        )),
        None => human.push_str("no crossing within the truncation\n"),
    }
    let payload = json!({
        "k": k,
        "against": match against { Against::Mo => "mo", Against::Degrees => "degrees" },
        "degrees": (against == Against::Degrees).then_some(&degrees),
        "max_degree": max_degree,
        "crossing": crossing,
        "series_a": series_json(&a),
        "series_b": series_json(&b),
    });
    Outcome::ok(payload, human)
}

fn oracle_word(vars: usize, word: &str, input: Option<&str>) -> Outcome {
    let word: SqWord = match word.parse() {
        Ok(w) => w,
        Err(e) => return Outcome::rejected(e.to_string()),
    };
    let oracle = SplittingOracle::new(vars);
    let p = match input {
        Some(text) => match SplitPoly::parse(vars, text) {
            Ok(p) => p,
            Err(e) => return Outcome::rejected(e.to_string()),
        },
        None => oracle.product_of_variables(),
    };
    let reduced = match adem_reduce(&word) {
        Ok(r) => r,
        Err(e) => return Outcome::failed(e.to_string()),
    };
    let (direct, via) = match (
        oracle.apply_word(&word, &p),
        oracle.apply_element(&reduced, &p),
    ) {
        (Ok(d), Ok(v)) => (d, v),
        (Err(e), _) | (_, Err(e)) => return Outcome::rejected(e.to_string()),
    };
    let agree = direct == via;
    let human = format!(
        "{}({p}) = {direct}\nvia {reduced}: {}\n",
        word.superscript(),
        if agree {
            "agrees".to_string()
        } else {
            format!("DIFFERS: {via}")
        }
    );
    let payload = json!({
        "vars": vars,
        "word": word_json(&word),
        "input": p.to_string(),
        "result": direct.to_string(),
        "admissible": reduced.to_string(),
        "agree": agree,
    });
    let mut out = Outcome::ok(payload, human);
    if !agree {
        out.status = Status::Failed;
        out.reasons
            .push("the word and its Adem reduction act differently".into());
    }
    out
}

fn oracle_wu(vars: usize, i: u32, j: u32) -> Outcome {
    if j == 0 || j as usize > vars {
        return Outcome::rejected(format!("need 1 <= j <= {vars}"));
    }
    let computed = match SplittingOracle::wu_query(i, j as usize, vars) {
        Ok(x) => x,
        Err(e) => return Outcome::rejected(e.to_string()),
    };
    let k = vars as u32;
    let formula = obstrukt_core::models::wu_sq(i, j, k);
    let alg = match bo_algebra(k, i + j) {
        Ok(a) => a,
        Err(e) => return Outcome::rejected(e.to_string()),
    };
    let agree = computed == formula;
    let human = format!(
        "Sq{}(w{j}) in H*(BO({k})): {}\nWu formula: {}\n",
        obstrukt_core::steenrod::superscript_digits(i),
        alg.format_element(&computed),
        if agree {
            "agrees".to_string()
        } else {
            format!("DIFFERS: {}", alg.format_element(&formula))
        }
    );
    let payload = json!({
        "i": i,
        "j": j,
        "k": k,
        "oracle": alg.format_element(&computed),
        "wu_formula": alg.format_element(&formula),
        "agree": agree,
    });
    let mut out = Outcome::ok(payload, human);
    if !agree {
        out.status = Status::Failed;
        out.reasons.push("oracle and Wu formula disagree".into());
    }
    out
}
