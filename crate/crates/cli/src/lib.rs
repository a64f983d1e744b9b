//! The `nahm-p1` command line: argument parsing, dispatch and rendering.

pub mod report;
pub mod weights;

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use clap::{Args, Parser, Subcommand};
use nahm_core::higgs::{check_condition_main, parabolic_degree, validate, HiggsBundle};
use nahm_core::model::{gallery, parse_document, ModelDocument, GALLERY, SCHEMA_VERSION};
use nahm_core::moduli::{moduli_dimension, profile_of, stability_probe, SingularityProfile, StabilityVerdict};
use nahm_core::spectral::{dual_divisor, has_repeated_factor, characteristic_polynomial, naive_curve, standard_curve, transformed_rank};
use nahm_core::transform::{involution_report, nahm_transform, TransformOptions};
use nahm_core::{NahmError, Result};
use num_rational::BigRational;
use serde_json::{json, Value};

use weights::WeightNames;

#[derive(Parser, Debug)]
#[command(name = "nahm-p1", version, about = "Algebraic Nahm transform of parabolic Higgs bundles on P^1")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Emit a JSON record instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Render a weight (or a small multiple or fraction of it) by name.
    #[arg(long = "weights", value_name = "NAME=VALUE", value_parser = weights::parse_pair, global = true)]
    pub weights: Vec<(String, BigRational)>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check a model and its polar weight condition.
    Validate(ModelArgs),
    /// Characteristic polynomial and spectral curves.
    Spectral(ModelArgs),
    /// Run the transform.
    Transform(ModelArgs),
    /// Transform twice and compare with the reflected input.
    InvolutionCheck(ModelArgs),
    /// Dimension of the moduli space for a singularity profile.
    ModuliDim(ModuliArgs),
    /// Probe parabolic stability.
    StabilityProbe(ModelArgs),
    /// List the built-in examples, or print one.
    Gallery { name: Option<String> },
}

#[derive(Args, Debug, Default)]
pub struct ModelArgs {
    /// Model file, or `-` for standard input.
    pub input: Option<PathBuf>,
    /// A built-in example by name.
    #[arg(long, conflicts_with_all = ["input", "batch"])]
    pub example: Option<String>,
    /// Run on every `.json` file in a directory.
    #[arg(long, conflicts_with = "input")]
    pub batch: Option<PathBuf>,
}

#[derive(Args, Debug, Default)]
pub struct ModuliArgs {
    #[arg(long)]
    pub r: Option<usize>,
    /// Ranks of the polar parts, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub res_ranks: Vec<usize>,
    /// Ranks of the transformed polar parts, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub dual_res_ranks: Vec<usize>,
    #[command(flatten)]
    pub model: ModelArgs,
}

/// What a command produced, before it is written out.
#[derive(Debug)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

/// The result of one command on one model.
struct Report {
    text: String,
    json: Value,
    code: i32,
}

impl Report {
    fn ok(text: String, json: Value) -> Self {
        Report { text, json, code: 0 }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct Style {
    pub color: bool,
}

impl Style {
    fn paint(&self, code: &str, s: &str) -> String {
        if self.color {
            format!("\x1b[{}m{}\x1b[0m", code, s)
        } else {
            s.to_string()
        }
    }

    fn pass(&self, s: &str) -> String {
        self.paint("32", s)
    }

    fn fail(&self, s: &str) -> String {
        self.paint("31", s)
    }
}

/// Whether color is allowed by the environment.
pub fn color_from_env() -> bool {
    !matches!(
        std::env::var("NAHM_P1_COLOR").map(|v| v.to_ascii_lowercase()).as_deref(),
        Ok("0" | "no" | "off" | "never" | "false")
    )
}

fn header(command: &str) -> serde_json::Map<String, Value> {
    let mut m = serde_json::Map::new();
    m.insert("schemaVersion".into(), json!(SCHEMA_VERSION));
    m.insert("command".into(), json!(command));
    m
}

fn error_json(e: &NahmError) -> Value {
    json!({ "message": e.to_string(), "exitCode": e.exit_code() })
}

fn load_path(path: &Path) -> Result<ModelDocument> {
    let text = if path == Path::new("-") {
        std::io::read_to_string(std::io::stdin())
            .map_err(|e| NahmError::Input(format!("reading standard input: {}", e)))?
    } else {
        fs::read_to_string(path).map_err(|e| NahmError::Input(format!("reading {}: {}", path.display(), e)))?
    };
    parse_document(&text)
}

fn batch_files(dir: &Path) -> Result<Vec<PathBuf>> {
    let rd = fs::read_dir(dir).map_err(|e| NahmError::Input(format!("reading {}: {}", dir.display(), e)))?;
    let mut files: Vec<PathBuf> = rd
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file() && p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    if files.is_empty() {
        return Err(NahmError::Input(format!("no .json files in {}", dir.display())));
    }
    Ok(files)
}

type ModelCommand = fn(&ModelDocument, &WeightNames, Style) -> Result<Report>;

fn to_bundle(doc: &ModelDocument) -> Result<HiggsBundle> {
    doc.to_bundle()
}

fn cmd_validate(doc: &ModelDocument, names: &WeightNames, style: Style) -> Result<Report> {
    let h = to_bundle(doc)?;
    let rep = validate(&h);
    let mut text = vec![format!("rank {}, twist type {:?}, degree {}", h.rank, h.twist_type, h.degree())];
    let mut record = serde_json::Map::new();
    let mut witnesses = Vec::new();
    let mut holds = rep.ok();
    if rep.ok() {
        text.push(format!("parabolic degree {}", names.render(&parabolic_degree(&h))));
        let (ok, ws) = check_condition_main(&h)?;
        holds = ok;
        for w in &ws {
            let mark = if w.holds { style.pass("holds") } else { style.fail("fails") };
            text.push(format!("polar weight condition {} at z = {}: {}", mark, w.point, w.message));
            witnesses.push(report::witness(w, names));
        }
        record.insert("parabolicDegree".into(), json!(parabolic_degree(&h).to_string()));
    }
    for e in &rep.errors {
        text.push(format!("error: {}", e));
    }
    for w in &rep.warnings {
        text.push(format!("warning: {}", w));
    }
    text.push(if holds { style.pass("VALID") } else { style.fail("INVALID") });
    record.insert("valid".into(), json!(holds));
    record.insert("errors".into(), json!(rep.errors));
    record.insert("warnings".into(), json!(rep.warnings));
    record.insert("condition".into(), Value::Array(witnesses));
    Ok(Report { text: text.join("\n"), json: Value::Object(record), code: if holds { 0 } else { 1 } })
}

fn cmd_spectral(doc: &ModelDocument, _: &WeightNames, _: Style) -> Result<Report> {
    let h = to_bundle(doc)?;
    let rep = validate(&h);
    if !rep.ok() {
        return Err(NahmError::Input(rep.errors.join("; ")));
    }
    let cp = characteristic_polynomial(&h)?;
    let standard = standard_curve(&h)?;
    let naive = naive_curve(&h)?;
    let divisor = dual_divisor(&naive)?;
    let rank = transformed_rank(&h)?;
    let non_reduced = has_repeated_factor(&cp);
    let mut text = vec![
        format!("det(x - θ(z)) = {}", cp.render("x", "z")),
        format!("standard curve: {}", standard.render()),
        format!("naive curve:    {}", naive.render()),
        format!(
            "meets the fiber at infinity over ξ = [{}]",
            divisor.iter().map(|(p, m)| format!("{} (x{})", p, m)).collect::<Vec<_>>().join(", ")
        ),
        format!("transformed rank {}", rank),
    ];
    if non_reduced {
        text.push("warning: the spectral curve is non-reduced".into());
    }
    let json = json!({
        "charPoly": cp.render("x", "z"),
        "standard": standard.render(),
        "naive": naive.render(),
        "dualDivisor": divisor.iter().map(|(p, m)| json!({ "point": p.to_string(), "multiplicity": m })).collect::<Vec<_>>(),
        "transformedRank": rank,
        "nonReduced": non_reduced,
    });
    Ok(Report::ok(text.join("\n"), json))
}

fn options(doc: &ModelDocument) -> Result<TransformOptions> {
    Ok(TransformOptions { param: doc.param()? })
}

fn cmd_transform(doc: &ModelDocument, names: &WeightNames, _: Style) -> Result<Report> {
    let h = to_bundle(doc)?;
    let t = nahm_transform(&h, &options(doc)?)?;
    Ok(Report::ok(report::transformed_text(&t, names), report::transformed(&t, names)))
}

fn cmd_involution(doc: &ModelDocument, names: &WeightNames, style: Style) -> Result<Report> {
    let h = to_bundle(doc)?;
    let t = nahm_transform(&h, &options(doc)?)?;
    let r = involution_report(&h, &t)?;
    let mark = |b: bool| if b { style.pass("ok") } else { style.fail("differs") };
    let mut text = vec![
        format!("rank {} -> {} -> {}", t.source_rank, t.rank, t.side.dual.rank),
        format!("twice transformed curve: {}", r.twice.render()),
        format!("reflected input curve:   {}", r.expected.render()),
        format!("curves: {}", mark(r.char_poly_match)),
        format!("labelled weights: {}", mark(r.entries_match)),
        format!("weight ledger: {}", mark(r.ledger_match)),
        format!("degree: {}", mark(r.degree_match)),
    ];
    if !r.entries_match {
        text.push("  twice:".into());
        text.extend(r.twice_entries.iter().map(|e| format!("    {}", report::entry_text(e, names))));
        text.push("  expected:".into());
        text.extend(r.expected_entries.iter().map(|e| format!("    {}", report::entry_text(e, names))));
    }
    text.push(if r.holds() { style.pass("PASS") } else { style.fail("FAIL") });
    Ok(Report { text: text.join("\n"), json: report::involution(&r, names), code: if r.holds() { 0 } else { 2 } })
}

fn cmd_probe(doc: &ModelDocument, names: &WeightNames, _: Style) -> Result<Report> {
    let h = to_bundle(doc)?;
    let v = stability_probe(&h)?;
    let mut text = vec![format!("parabolic degree {}", names.render(&parabolic_degree(&h))), v.name().to_string()];
    match &v {
        StabilityVerdict::Stable { reason } => text.push(format!("  {}", reason)),
        StabilityVerdict::Unstable { witness, slope } => {
            let basis: Vec<String> = witness
                .basis
                .iter()
                .map(|b| format!("({})", b.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(", ")))
                .collect();
            text.push(format!(
                "  invariant subbundle spanned by {} of degree {} and slope {}",
                basis.join(", "),
                witness.degree,
                names.render(slope)
            ));
        }
        StabilityVerdict::Undetermined { factors, reason } => {
            text.push(format!("  {}", reason));
            for f in factors {
                text.push(format!("  factor: {}", f));
            }
        }
    }
    Ok(Report::ok(text.join("\n"), report::verdict(&v, names)))
}

fn profile_report(p: &SingularityProfile) -> Result<Report> {
    let d = moduli_dimension(p)?;
    let json = json!({
        "r": p.r,
        "dualRank": p.dual_rank(),
        "residueRanks": p.residue_ranks,
        "dualResidueRanks": p.dual_residue_ranks,
        "dimension": d,
    });
    Ok(Report::ok(d.to_string(), json))
}

fn cmd_moduli_of_model(doc: &ModelDocument, _: &WeightNames, _: Style) -> Result<Report> {
    let h = to_bundle(doc)?;
    let t = nahm_transform(&h, &options(doc)?)?;
    profile_report(&profile_of(&h, &t)?)
}

/// Runs `f` on each model, in parallel for a batch.
fn run_models(
    command: &str,
    args: &ModelArgs,
    f: ModelCommand,
    names: &WeightNames,
    style: Style,
    json_out: bool,
) -> Result<Outcome> {
    if let Some(dir) = &args.batch {
        return Ok(run_batch(command, &batch_files(dir)?, f, names, style, json_out));
    }
    let doc = match (&args.example, &args.input) {
        (Some(name), _) => gallery(name)?,
        (None, Some(path)) => load_path(path)?,
        (None, None) => return Err(NahmError::Input("give a model file, --example NAME or --batch DIR".into())),
    };
    let r = f(&doc, names, style)?;
    Ok(single(command, r, json_out))
}

fn single(command: &str, r: Report, json_out: bool) -> Outcome {
    let stdout = if json_out {
        let mut m = header(command);
        m.insert("exitCode".into(), json!(r.code));
        m.insert("result".into(), r.json);
        pretty(&Value::Object(m))
    } else {
        r.text + "\n"
    };
    Outcome { stdout, stderr: String::new(), code: r.code }
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("values serialize") + "\n"
}

fn run_batch(command: &str, files: &[PathBuf], f: ModelCommand, names: &WeightNames, style: Style, json_out: bool) -> Outcome {
    let results: Mutex<Vec<Option<Result<Report>>>> = Mutex::new((0..files.len()).map(|_| None).collect());
    let next = AtomicUsize::new(0);
    let workers = std::thread::available_parallelism().map_or(1, |n| n.get()).min(files.len());
    std::thread::scope(|s| {
        for _ in 0..workers {
            s.spawn(|| loop {
                let k = next.fetch_add(1, Ordering::SeqCst);
                if k >= files.len() {
                    break;
                }
                let r = load_path(&files[k]).and_then(|doc| f(&doc, names, style));
                results.lock().expect("no worker panics while holding the lock")[k] = Some(r);
            });
        }
    });
    let results = results.into_inner().expect("workers finished");
    let mut code = 0;
    let mut text = Vec::new();
    let mut records = Vec::new();
    for (path, r) in files.iter().zip(results) {
        let name = path.file_name().map_or_else(String::new, |n| n.to_string_lossy().into_owned());
        let r = r.expect("every file was processed");
        match r {
            Ok(rep) => {
                code = code.max(rep.code);
                text.push(format!("== {} ==\n{}", name, rep.text));
                records.push(json!({ "file": name, "exitCode": rep.code, "result": rep.json }));
            }
            Err(e) => {
                code = code.max(e.exit_code());
                text.push(format!("== {} ==\n{}", name, style.fail(&format!("error: {}", e))));
                records.push(json!({ "file": name, "exitCode": e.exit_code(), "error": error_json(&e) }));
            }
        }
    }
    let stdout = if json_out {
        let mut m = header(command);
        m.insert("exitCode".into(), json!(code));
        m.insert("results".into(), Value::Array(records));
        pretty(&Value::Object(m))
    } else {
        text.join("\n\n") + "\n"
    };
    Outcome { stdout, stderr: String::new(), code }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Validate(_) => "validate",
        Command::Spectral(_) => "spectral",
        Command::Transform(_) => "transform",
        Command::InvolutionCheck(_) => "involution-check",
        Command::ModuliDim(_) => "moduli-dim",
        Command::StabilityProbe(_) => "stability-probe",
        Command::Gallery { .. } => "gallery",
    }
}

fn dispatch(cli: &Cli, style: Style) -> Result<Outcome> {
    let names = WeightNames::new(cli.weights.clone());
    let name = command_name(&cli.command);
    let model = |args: &ModelArgs, f: ModelCommand| run_models(name, args, f, &names, style, cli.json);
    match &cli.command {
        Command::Validate(a) => model(a, cmd_validate),
        Command::Spectral(a) => model(a, cmd_spectral),
        Command::Transform(a) => model(a, cmd_transform),
        Command::InvolutionCheck(a) => model(a, cmd_involution),
        Command::StabilityProbe(a) => model(a, cmd_probe),
        Command::ModuliDim(a) => match a.r {
            Some(r) => {
                let p = SingularityProfile::new(r, a.res_ranks.clone(), a.dual_res_ranks.clone())?;
                Ok(single(name, profile_report(&p)?, cli.json))
            }
            None if a.res_ranks.is_empty() && a.dual_res_ranks.is_empty() => model(&a.model, cmd_moduli_of_model),
            None => Err(NahmError::Input("--res-ranks and --dual-res-ranks need --r".into())),
        },
        Command::Gallery { name: None } => {
            let names: Vec<&str> = GALLERY.iter().map(|(n, _)| *n).collect();
            let json = json!(names);
            Ok(single(name, Report::ok(names.join("\n"), json), cli.json))
        }
        Command::Gallery { name: Some(example) } => {
            let doc = gallery(example)?;
            let text = serde_json::to_string_pretty(&doc).expect("documents serialize");
            Ok(Outcome { stdout: text + "\n", stderr: String::new(), code: 0 })
        }
    }
}

/// Runs a parsed command line.
pub fn run(cli: &Cli, style: Style) -> Outcome {
    match dispatch(cli, style) {
        Ok(o) => o,
        Err(e) => {
            let code = e.exit_code();
            let stdout = if cli.json {
                let mut m = header(command_name(&cli.command));
                m.insert("exitCode".into(), json!(code));
                m.insert("error".into(), error_json(&e));
                pretty(&Value::Object(m))
            } else {
                String::new()
            };
            Outcome { stdout, stderr: format!("{}\n", style.fail(&format!("error: {}", e))), code }
        }
    }
}

/// Parses and runs; usage errors exit with 1, help and version with 0.
pub fn run_args<I, T>(args: I, style: Style) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli, style),
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let rendered = e.render().to_string();
            if code == 0 {
                Outcome { stdout: rendered, stderr: String::new(), code }
            } else {
                Outcome { stdout: String::new(), stderr: rendered, code }
            }
        }
    }
}
