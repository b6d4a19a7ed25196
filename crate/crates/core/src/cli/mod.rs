//! Batch front end: loads quiver, automorphism and group files, dispatches one
//! computation and renders the result as JSON or as an aligned table.

mod suite;

use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, ValueEnum};
use serde_json::{json, Value};

use crate::algebra::GradedAlgebra;
use crate::automorphism::{AutGroup, ScalingAutomorphism};
use crate::error::{Error, Result};
use crate::fixed_ring::{build_subalgebra_truncation, extract_generators, fixed_basis, generators_json};
use crate::quiver::Quiver;
use crate::ratfun::TruncatedSeries;
use crate::resolution::{gorenstein_verdict, minimal_resolution, simple_module, ExtReport};
use crate::traces::{
    hdet, hilbert_closed, matrix_identity_check, molien, reciprocity_check, vtrace_bruteforce, vtrace_closed, Side,
};

pub use suite::{example_suite, SuiteCheck, SuiteReport};

pub const DEFAULT_CUTOFF: usize = 12;
pub const CUTOFF_ENV: &str = "PPALG_CUTOFF";

/// Exit status for a failed verdict: a closed/brute-force mismatch or a
/// failing example-suite check.
pub const VERDICT_FAILURE: i32 = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Command {
    Hilbert,
    Trace,
    Vtrace,
    Molien,
    Hdet,
    Reciprocity,
    FixedRing,
    Resolve,
    Gorenstein,
    ExampleSuite,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Closed,
    Bruteforce,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

/// One job.  The cutoff falls back to `PPALG_CUTOFF`, then to 12.
#[derive(Clone, Debug, Parser)]
#[command(name = "ppalg", version, about = "Exact invariant theory of preprojective algebras")]
pub struct JobSpec {
    #[arg(value_enum)]
    pub command: Command,
    /// Quiver JSON file, or an inline JSON object.
    #[arg(long)]
    pub quiver: Option<String>,
    /// Automorphism JSON file, or an inline JSON object.
    #[arg(long)]
    pub auto: Option<String>,
    /// Group JSON file ({"generators": [...]}), or an inline JSON object.
    #[arg(long)]
    pub group: Option<String>,
    #[arg(long)]
    pub cutoff: Option<usize>,
    #[arg(long, default_value_t = 3)]
    pub hom_bound: usize,
    #[arg(long, value_enum, default_value_t = Method::Closed)]
    pub method: Method,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Right traces live on e_j A, left traces on A e_j.
    #[arg(long, default_value = "right")]
    pub side: Side,
    /// Restricts `resolve` to one simple module.
    #[arg(long)]
    pub vertex: Option<usize>,
    /// Negative control for `example-suite`: drops the relation at vertex 1.
    #[arg(long)]
    pub corrupt: bool,
}

impl JobSpec {
    pub fn new(command: Command) -> JobSpec {
        JobSpec {
            command,
            quiver: None,
            auto: None,
            group: None,
            cutoff: None,
            hom_bound: 3,
            method: Method::Closed,
            format: Format::Json,
            side: Side::Right,
            vertex: None,
            corrupt: false,
        }
    }

    pub fn effective_cutoff(&self) -> Result<usize> {
        if let Some(d) = self.cutoff {
            return Ok(d);
        }
        match std::env::var(CUTOFF_ENV) {
            Ok(s) => s
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("{CUTOFF_ENV}={s:?} is not a nonnegative integer"))),
            Err(_) => Ok(DEFAULT_CUTOFF),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub output: String,
}

impl Outcome {
    pub fn is_success(&self) -> bool {
        self.code == 0
    }
}

/// Runs a job to completion.  Errors become a one-line message and the exit
/// status of their class.
pub fn run(job: &JobSpec) -> Outcome {
    match dispatch(job) {
        Ok((code, value, table)) => Outcome {
            code,
            output: match job.format {
                Format::Json => serde_json::to_string_pretty(&value).expect("reports serialize") + "\n",
                Format::Table => table,
            },
        },
        Err(e) => Outcome {
            code: e.exit_code(),
            output: format!("error: {e}\n"),
        },
    }
}

fn read_json(arg: &str, what: &str) -> Result<Value> {
    let text = if arg.trim_start().starts_with('{') {
        arg.to_string()
    } else {
        std::fs::read_to_string(Path::new(arg)).map_err(|e| Error::Parse(format!("{what} file {arg}: {e}")))?
    };
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{what} {arg}: {e}")))
}

fn require<'a>(field: &'a Option<String>, flag: &str) -> Result<&'a str> {
    field
        .as_deref()
        .ok_or_else(|| Error::Parse(format!("this command needs --{flag}")))
}

struct Inputs {
    quiver: Quiver,
    cutoff: usize,
}

impl Inputs {
    fn load(job: &JobSpec) -> Result<Inputs> {
        let quiver = Quiver::from_json(&read_json(require(&job.quiver, "quiver")?, "quiver")?)?;
        let quiver = if quiver.is_doubled() { quiver } else { quiver.double()? };
        Ok(Inputs {
            quiver,
            cutoff: job.effective_cutoff()?,
        })
    }

    fn automorphism(&self, job: &JobSpec) -> Result<ScalingAutomorphism> {
        ScalingAutomorphism::from_json(&self.quiver, &read_json(require(&job.auto, "auto")?, "automorphism")?)
    }

    fn group(&self, job: &JobSpec) -> Result<AutGroup> {
        AutGroup::from_json(&self.quiver, &read_json(require(&job.group, "group")?, "group")?)
    }

    fn algebra(&self) -> Result<GradedAlgebra> {
        GradedAlgebra::preprojective(&self.quiver, self.cutoff)
    }

    fn require_family(&self, job: &JobSpec) -> Result<()> {
        if job.method != Method::Bruteforce && self.quiver.family().is_none() {
            return Err(Error::UnsupportedFamily(format!(
                "--method {} needs an A~, D~ or E~ quiver, got {}",
                match job.method {
                    Method::Closed => "closed",
                    _ => "both",
                },
                self.quiver.name()
            )));
        }
        Ok(())
    }
}

type Dispatched = (i32, Value, String);

fn dispatch(job: &JobSpec) -> Result<Dispatched> {
    match job.command {
        Command::ExampleSuite => {
            let report = example_suite(job.effective_cutoff()?, job.corrupt)?;
            let code = if report.all_passed() { 0 } else { VERDICT_FAILURE };
            Ok((code, report.to_json(), report.to_table()))
        }
        Command::Hilbert => {
            let inp = Inputs::load(job)?;
            let g = ScalingAutomorphism::identity(&inp.quiver);
            trace_job(job, &inp, &g, "hilbert", false)
        }
        Command::Trace => {
            let inp = Inputs::load(job)?;
            let g = inp.automorphism(job)?;
            trace_job(job, &inp, &g, "trace", true)
        }
        Command::Vtrace => {
            let inp = Inputs::load(job)?;
            let g = inp.automorphism(job)?;
            trace_job(job, &inp, &g, "vtrace", false)
        }
        Command::Molien => molien_job(job),
        Command::Hdet => {
            let inp = Inputs::load(job)?;
            let g = inp.automorphism(job)?;
            let h = hdet(&inp.quiver, &g)?;
            let diag: Vec<String> = h.diag.iter().map(ToString::to_string).collect();
            let table = format!("Hdet(g) = diag({})\n", diag.join(", "));
            Ok((0, json!({ "quiver": inp.quiver.name(), "hdet": h.to_json() }), table))
        }
        Command::Reciprocity => {
            let inp = Inputs::load(job)?;
            let g = inp.automorphism(job)?;
            let r = reciprocity_check(&inp.quiver, &g)?;
            let m = matrix_identity_check(&inp.quiver, &g)?;
            let rows = vec![
                vec!["vertex trace reciprocity".to_string(), holds_word(r.holds).into(), r.vertex.map_or("-".into(), |v| v.to_string())],
                vec!["matrix identity".to_string(), holds_word(m).into(), "-".into()],
            ];
            let code = if r.holds && m { 0 } else { VERDICT_FAILURE };
            Ok((
                code,
                json!({ "quiver": inp.quiver.name(), "reciprocity": r.to_json(), "matrix_identity": m }),
                table(&["identity", "verdict", "first failing vertex"], &rows),
            ))
        }
        Command::FixedRing => fixed_ring_job(job),
        Command::Resolve => resolve_job(job),
        Command::Gorenstein => {
            let (alg, cutoff) = ring_for(job)?;
            let report = gorenstein_verdict(&alg, job.hom_bound, cutoff)?;
            Ok((0, report.to_json(), ext_table(&report)))
        }
    }
}

fn verdict_word(ok: bool) -> &'static str {
    if ok {
        "MATCH"
    } else {
        "MISMATCH"
    }
}

fn holds_word(ok: bool) -> &'static str {
    if ok {
        "holds"
    } else {
        "fails"
    }
}

fn series_str(s: &TruncatedSeries) -> String {
    let terms: Vec<String> = s.coeffs().iter().map(ToString::to_string).collect();
    format!("[{}]", terms.join(", "))
}

fn sum_series(entries: &[TruncatedSeries], cutoff: usize) -> Result<TruncatedSeries> {
    entries
        .iter()
        .try_fold(TruncatedSeries::zeros(0, cutoff as i64), |acc, e| acc.add(e))
}

/// Shared body of `hilbert`, `trace` and `vtrace`; `total` sums the entries.
fn trace_job(job: &JobSpec, inp: &Inputs, g: &ScalingAutomorphism, name: &str, total: bool) -> Result<Dispatched> {
    inp.require_family(job)?;
    let side = if name == "trace" { Side::Right } else { job.side };
    let d = inp.cutoff;
    let closed = match job.method {
        Method::Bruteforce => None,
        _ if name == "hilbert" => Some(hilbert_closed(&inp.quiver, side)?),
        _ => Some(vtrace_closed(&inp.quiver, g, side)?),
    };
    let brute = match job.method {
        Method::Closed => None,
        _ => Some(vtrace_bruteforce(&inp.algebra()?, g, side, d)?),
    };
    let mut out = json!({ "command": name, "quiver": inp.quiver.name(), "side": side.as_str(), "cutoff": d });
    let mut rows: Vec<Vec<String>> = Vec::new();
    let mut matched = true;
    if total {
        let closed_total = closed.as_ref().map(|c| c.total());
        let brute_total = brute.as_ref().map(|b| sum_series(b, d)).transpose()?;
        if let Some(f) = &closed_total {
            out["closed"] = f.to_json();
            rows.push(vec!["closed".into(), f.render()]);
            rows.push(vec!["closed (expanded)".into(), series_str(&f.series_expand(d)?)]);
        }
        if let Some(s) = &brute_total {
            out["bruteforce"] = s.to_json();
            rows.push(vec!["bruteforce".into(), series_str(s)]);
        }
        if let (Some(f), Some(s)) = (&closed_total, &brute_total) {
            matched = f.series_expand(d)?.agrees_with(s);
        }
    } else {
        let expanded = closed.as_ref().map(|c| c.expand(d)).transpose()?;
        if let Some(c) = &closed {
            out["closed"] = c.to_json();
        }
        if let Some(b) = &brute {
            out["bruteforce"] = Value::Array(b.iter().map(TruncatedSeries::to_json).collect());
        }
        for j in 0..inp.quiver.vertex_count() {
            let mut row = vec![(j + 1).to_string()];
            if let Some(c) = &closed {
                row.push(c.entries[j].render());
            }
            if let Some(b) = &brute {
                row.push(series_str(&b[j]));
            }
            rows.push(row);
        }
        if let (Some(e), Some(b)) = (&expanded, &brute) {
            matched = e.iter().zip(b).all(|(x, y)| x.agrees_with(y));
        }
    }
    let both = job.method == Method::Both;
    if both {
        out["verdict"] = json!(verdict_word(matched));
    }
    let headers: Vec<&str> = if total {
        vec!["pipeline", "series"]
    } else {
        let mut h = vec!["vertex"];
        if closed.is_some() {
            h.push("closed");
        }
        if brute.is_some() {
            h.push("bruteforce");
        }
        h
    };
    let mut text = table(&headers, &rows);
    if both {
        text.push_str(verdict_word(matched));
        text.push('\n');
    }
    Ok((if matched { 0 } else { VERDICT_FAILURE }, out, text))
}

fn molien_job(job: &JobSpec) -> Result<Dispatched> {
    let inp = Inputs::load(job)?;
    inp.require_family(job)?;
    let group = inp.group(job)?;
    let d = inp.cutoff;
    let mut out = json!({ "command": "molien", "quiver": inp.quiver.name(), "group_order": group.order(), "cutoff": d });
    let mut text = String::new();
    let closed = match job.method {
        Method::Bruteforce => None,
        _ => {
            // The closed route never touches the algebra, so a zero cutoff suffices.
            let alg = GradedAlgebra::preprojective(&inp.quiver, 0)?;
            Some(molien(&alg, &group, d)?)
        }
    };
    if let Some(m) = &closed {
        let f = m.molien.as_ref().expect("families have closed forms");
        out["molien"] = f.to_json();
        out["expansion"] = m.expansion.to_json();
        text.push_str(&format!("H_(A^G)(t) = {}\n", f.render()));
        text.push_str(&format!("expansion   {}\n", series_str(&m.expansion)));
    }
    let brute = match job.method {
        Method::Closed => None,
        _ => {
            let alg = inp.algebra()?;
            let dims = fixed_basis(&alg, &group, d)?.dims();
            Some(TruncatedSeries::from_ints(0, &dims.iter().map(|&x| x as i64).collect::<Vec<_>>()))
        }
    };
    if let Some(b) = &brute {
        out["fixed_dims"] = b.to_json();
        text.push_str(&format!("fixed dims  {}\n", series_str(b)));
    }
    let mut code = 0;
    if let (Some(m), Some(b)) = (&closed, &brute) {
        let ok = m.expansion.agrees_with(b);
        out["verdict"] = json!(verdict_word(ok));
        text.push_str(verdict_word(ok));
        text.push('\n');
        if !ok {
            code = VERDICT_FAILURE;
        }
    }
    Ok((code, out, text))
}

fn fixed_ring_job(job: &JobSpec) -> Result<Dispatched> {
    let inp = Inputs::load(job)?;
    let group = inp.group(job)?;
    let alg = inp.algebra()?;
    let fb = fixed_basis(&alg, &group, inp.cutoff)?;
    let gens = extract_generators(&alg, &fb)?;
    let mut out = json!({
        "command": "fixed-ring",
        "quiver": inp.quiver.name(),
        "group_order": group.order(),
        "cutoff": inp.cutoff,
        "dims": fb.dims(),
        "generators": generators_json(&alg, &gens),
    });
    let mut text = format!("fixed dims {:?}\n", fb.dims());
    let rows: Vec<Vec<String>> = gens
        .iter()
        .map(|g| {
            vec![
                g.label.clone(),
                g.degree.to_string(),
                g.source.to_string(),
                g.target.to_string(),
                alg.render_element(&g.element),
            ]
        })
        .collect();
    text.push_str(&table(&["generator", "degree", "source", "target", "element"], &rows));
    let mut code = 0;
    if inp.quiver.family().is_some() {
        let m = molien(&alg, &group, inp.cutoff)?;
        let dims: Vec<i64> = fb.dims().iter().map(|&x| x as i64).collect();
        let ok = m.expansion.agrees_with(&TruncatedSeries::from_ints(0, &dims));
        out["molien_check"] = json!(verdict_word(ok));
        text.push_str(&format!("Molien check: {}\n", verdict_word(ok)));
        if !ok {
            code = VERDICT_FAILURE;
        }
    }
    Ok((code, out, text))
}

/// `Pi(Q)`, or its fixed ring when a group is given.
fn ring_for(job: &JobSpec) -> Result<(GradedAlgebra, usize)> {
    let inp = Inputs::load(job)?;
    let alg = inp.algebra()?;
    if job.group.is_none() {
        return Ok((alg, inp.cutoff));
    }
    let group = inp.group(job)?;
    let fb = fixed_basis(&alg, &group, inp.cutoff)?;
    Ok((build_subalgebra_truncation(Arc::new(alg), &fb)?, inp.cutoff))
}

fn resolve_job(job: &JobSpec) -> Result<Dispatched> {
    let (alg, cutoff) = ring_for(job)?;
    let vertices: Vec<usize> = match job.vertex {
        Some(j) => vec![j],
        None => (1..=alg.vertex_count()).collect(),
    };
    let mut list = Vec::new();
    let mut rows = Vec::new();
    for j in vertices {
        let res = minimal_resolution(&simple_module(&alg, j, Side::Right)?, &alg, job.hom_bound, cutoff)?;
        let steps: Vec<Value> = res
            .shapes()
            .iter()
            .map(|s| Value::Array(s.iter().map(|(v, d)| json!({ "vertex": v, "shift": d })).collect()))
            .collect();
        for (k, s) in res.shapes().iter().enumerate() {
            let terms: Vec<String> = s
                .iter()
                .map(|&(v, d)| if d == 0 { format!("P{v}") } else { format!("P{v}[-{d}]") })
                .collect();
            rows.push(vec![
                format!("S{j}"),
                k.to_string(),
                if terms.is_empty() { "0".into() } else { terms.join(" + ") },
            ]);
        }
        list.push(json!({ "j": j, "steps": steps, "terminates_at": res.terminates_at() }));
    }
    Ok((
        0,
        json!({ "ring": alg.name(), "cutoff": cutoff, "hom_bound": job.hom_bound, "resolutions": list }),
        table(&["module", "step", "term"], &rows),
    ))
}

fn ext_table(report: &ExtReport) -> String {
    let mut rows = Vec::new();
    for (j, groups) in report.ext.iter().enumerate() {
        for g in groups {
            let dims: Vec<String> = g
                .dims
                .iter()
                .map(|(e, by_vertex)| {
                    let parts: Vec<String> = by_vertex.iter().map(|(u, d)| format!("{d}@e{u}")).collect();
                    format!("deg {e}: {}", parts.join(" "))
                })
                .collect();
            rows.push(vec![
                format!("S{}", j + 1),
                g.i.to_string(),
                format!("{}..={}", g.lowest, g.window),
                if dims.is_empty() { "0".into() } else { dims.join("; ") },
            ]);
        }
    }
    let v = &report.verdict;
    let fmt_opt = |x: &Option<i64>| x.map_or("?".to_string(), |y| y.to_string());
    let mut text = table(&["module", "i", "window", "Ext^i(S_j, R)"], &rows);
    text.push_str(&format!(
        "{}: gorenstein={} N={} sigma=[{}] ell=[{}]\n",
        report.ring,
        v.gorenstein,
        v.n.map_or("?".into(), |n| n.to_string()),
        v.sigma.iter().map(|s| fmt_opt(&s.map(|u| u as i64))).collect::<Vec<_>>().join(", "),
        v.ell.iter().map(fmt_opt).collect::<Vec<_>>().join(", "),
    ));
    for msg in &v.violations {
        text.push_str(&format!("violation: {msg}\n"));
    }
    text
}

/// Left-aligned columns separated by two spaces, with a rule under the header.
pub fn table(headers: &[&str], rows: &[Vec<String>]) -> String {
    let mut width: Vec<usize> = headers.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in width.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: &[String]| -> String {
        let padded: Vec<String> = cells.iter().zip(&width).map(|(c, w)| format!("{c:<w$}")).collect();
        padded.join("  ").trim_end().to_string() + "\n"
    };
    let header: Vec<String> = headers.iter().map(|h| h.to_string()).collect();
    let rule: Vec<String> = width.iter().map(|w| "-".repeat(*w)).collect();
    let mut out = line(&header) + &line(&rule);
    for row in rows {
        out.push_str(&line(row));
    }
    out
}

/// Entry point shared by the binary: parses arguments, prints, returns the status.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let job = match JobSpec::try_parse_from(args) {
        Ok(job) => job,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let outcome = run(&job);
    if outcome.code == 0 || outcome.code == VERDICT_FAILURE {
        print!("{}", outcome.output);
    } else {
        eprint!("{}", outcome.output);
    }
    outcome.code
}

/// Path of a bundled data file, for examples and tests.
pub fn data_path(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("examples").join("data").join(name)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn aligned_table() {
        let t = table(&["a", "long header"], &[vec!["xyz".into(), "1".into()]]);
        assert_eq!(t, "a    long header\n---  -----------\nxyz  1\n");
    }

    #[test]
    fn cutoff_precedence() {
        let mut job = JobSpec::new(Command::Hilbert);
        job.cutoff = Some(5);
        assert_eq!(job.effective_cutoff().unwrap(), 5);
    }

    #[test]
    fn missing_flag_is_a_parse_error() {
        let out = run(&JobSpec::new(Command::Hdet));
        assert_eq!(out.code, 2);
        assert!(out.output.contains("--quiver"));
    }

    #[test]
    fn inline_inputs() {
        let mut job = JobSpec::new(Command::Hdet);
        job.quiver = Some(r#"{"family": "A", "parameter": 3}"#.into());
        job.auto = Some(
            r#"{"c": {"a1": 1, "a2": -1, "a3": -1}, "t": {"a1": 1, "a2": -1, "a3": -1}}"#.into(),
        );
        job.format = Format::Table;
        assert_eq!(run(&job).output, "Hdet(g) = diag(1, 1, 1)\n");
    }
}
