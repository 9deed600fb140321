//! Command-line driver: input parsing, command dispatch, text and JSON
//! rendering.
//!
//! Input files are line based. `#` starts a comment line.
//!
//! ```text
//! field Q | field F <p>
//! vars <n>                      (with dim, when a module is given)
//! dim <d>
//! [[a,b];[c,d]]                 (n matrix literals, one per line)
//! vector [a, b]                 (optional; generators of a submodule)
//! tilde <num> [// <den>]        (optional; constant-term-1 polynomials in t)
//! ```

use std::fmt::Write as _;

use clap::{Parser, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::endo::{
    annihilator_ideal, generated_submodule, primary_decomposition, radical_filtration,
    radical_submodule, CommutingTuple, MaximalIdealKey,
};
use crate::error::{parse_error, Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::kzero::{
    free_abelian_to_tilde, k0_class, kelley_spanier_split, lambda_t, tilde_to_free_abelian,
    verify_additivity, GrothendieckClass, TildeClass,
};
use crate::linalg::{Matrix, Vector};
use crate::oracle::{oracle_check, random_vector, DEFAULT_BOUND};
use crate::poly::parse::parse_multi_at;

/// `<tool> <command> <input-file> [--json] [--seed N]`
#[derive(Debug, Parser)]
#[command(name = "commuting-k0", version, about = "K0 classes of modules given by commuting matrices")]
pub struct Args {
    pub command: Command,
    pub input: std::path::PathBuf,
    /// Emit one JSON document instead of text.
    #[arg(long)]
    pub json: bool,
    /// Seed for randomized steps.
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Command {
    Class,
    Charpoly,
    Split,
    Decompose,
    Radical,
    Annihilator,
    VerifyAdditivity,
    TildeMul,
    TildeMap,
    OracleCheck,
}

/// A parsed input file.
#[derive(Clone, Debug)]
pub struct Job {
    pub field: FieldSpec,
    pub tuple: Option<CommutingTuple>,
    pub vectors: Vec<Vector>,
    pub tildes: Vec<TildeClass>,
}

impl Job {
    fn tuple(&self) -> Result<&CommutingTuple> {
        self.tuple
            .as_ref()
            .ok_or_else(|| Error::Precondition("this command needs `vars`, `dim` and matrices".into()))
    }
}

/// Exit status: 0 success, 1 input error, 2 verification failure.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Success = 0,
    InputError = 1,
    VerificationFailure = 2,
}

#[derive(Clone, Debug)]
pub struct Output {
    pub text: String,
    pub json: Value,
    pub status: Status,
}

impl Output {
    fn ok(text: String, json: Value) -> Self {
        Output { text, json, status: Status::Success }
    }

    fn checked(text: String, json: Value, passed: bool) -> Self {
        let status = if passed { Status::Success } else { Status::VerificationFailure };
        Output { text, json, status }
    }
}

fn split_keyword(line: &str) -> (&str, &str, usize) {
    let trimmed = line.trim_start();
    let lead = line.len() - trimmed.len();
    match trimmed.find(char::is_whitespace) {
        Some(i) => {
            let rest = &trimmed[i..];
            let rest_trim = rest.trim_start();
            (&trimmed[..i], rest_trim.trim_end(), lead + i + (rest.len() - rest_trim.len()))
        }
        None => (trimmed.trim_end(), "", line.len()),
    }
}

fn parse_count(text: &str, line: usize, column: usize, what: &str) -> Result<usize> {
    text.parse()
        .map_err(|_| parse_error(line, column + 1, format!("expected a nonnegative integer for `{what}`, found `{text}`")))
}

/// Parses an input file, validating the matrices into a commuting tuple.
pub fn parse_input(text: &str) -> Result<Job> {
    let mut field = None;
    let mut nvars = None;
    let mut dim = None;
    let mut mats: Vec<Matrix> = Vec::new();
    let mut vectors = Vec::new();
    let mut tilde_lines = Vec::new();
    let mut last_line = 0;
    for (index, raw) in text.lines().enumerate() {
        let line = index + 1;
        last_line = line;
        if raw.trim().is_empty() || raw.trim_start().starts_with('#') {
            continue;
        }
        let (keyword, rest, rest_col) = split_keyword(raw);
        let first_col = raw.len() - raw.trim_start().len() + 1;
        if field.is_none() {
            if keyword != "field" {
                return Err(parse_error(line, first_col, "expected `field Q` or `field F <p>`"));
            }
            field = Some(parse_field(rest, line, rest_col + 1)?);
            continue;
        }
        let f = field.expect("set above");
        match keyword {
            "field" => return Err(parse_error(line, first_col, "duplicate `field` line")),
            "vars" => nvars = Some(parse_count(rest, line, rest_col, "vars")?),
            "dim" => dim = Some(parse_count(rest, line, rest_col, "dim")?),
            "vector" => {
                let d = dim.ok_or_else(|| parse_error(line, first_col, "`vector` before `dim`"))?;
                vectors.push(parse_vector(rest, f, d, line, rest_col + 1)?);
            }
            "tilde" => tilde_lines.push((rest.to_string(), line, rest_col + 1)),
            _ if keyword.starts_with('[') => {
                let (Some(n), Some(d)) = (nvars, dim) else {
                    return Err(parse_error(line, first_col, "matrix before `vars` and `dim`"));
                };
                if mats.len() == n {
                    return Err(parse_error(line, first_col, format!("more than {n} matrices")));
                }
                mats.push(parse_matrix(raw.trim_start().trim_end(), f, d, line, first_col)?);
            }
            _ => return Err(parse_error(line, first_col, format!("unknown keyword `{keyword}`"))),
        }
    }
    let field = field.ok_or_else(|| parse_error(1, 1, "empty input: expected a `field` line"))?;
    let tuple = match (nvars, dim) {
        (None, None) if mats.is_empty() => None,
        (Some(n), Some(d)) => {
            if mats.len() != n {
                return Err(parse_error(
                    last_line + 1,
                    1,
                    format!("expected {n} matrices, found {}", mats.len()),
                ));
            }
            Some(CommutingTuple::new(field, n, d, mats)?)
        }
        _ => return Err(parse_error(last_line + 1, 1, "`vars` and `dim` must be given together")),
    };
    let tildes = tilde_lines
        .into_iter()
        .map(|(text, line, col)| parse_tilde(&text, field, line, col))
        .collect::<Result<_>>()?;
    Ok(Job { field, tuple, vectors, tildes })
}

fn parse_field(rest: &str, line: usize, column: usize) -> Result<FieldSpec> {
    let words: Vec<&str> = rest.split_whitespace().collect();
    match words.as_slice() {
        ["Q"] => Ok(FieldSpec::rationals()),
        ["F", p] => {
            let col = column + rest.find(p).unwrap_or(0);
            let p: u64 = p
                .parse()
                .map_err(|_| parse_error(line, col, format!("invalid characteristic `{p}`")))?;
            FieldSpec::prime(p).map_err(|_| parse_error(line, col, format!("{p} is not a prime")))
        }
        _ => Err(parse_error(line, column, "expected `Q` or `F <p>`")),
    }
}

/// Character cursor over one line with absolute column numbers.
struct Cursor<'a> {
    chars: Vec<(usize, char)>,
    pos: usize,
    line: usize,
    base: usize,
    text: &'a str,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str, line: usize, column: usize) -> Self {
        Cursor { chars: text.char_indices().collect(), pos: 0, line, base: column, text }
    }

    fn column(&self) -> usize {
        self.base + self.pos
    }

    fn error(&self, msg: impl Into<String>) -> Error {
        parse_error(self.line, self.column(), msg)
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|(_, c)| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn expect(&mut self, c: char) -> Result<()> {
        match self.peek() {
            Some(x) if x == c => {
                self.pos += 1;
                Ok(())
            }
            Some(x) => Err(self.error(format!("expected `{c}`, found `{x}`"))),
            None => Err(self.error(format!("expected `{c}`, found end of line"))),
        }
    }

    fn scalar(&mut self, field: FieldSpec) -> Result<FieldElement> {
        self.skip_ws();
        let start = self.pos;
        while self
            .chars
            .get(self.pos)
            .is_some_and(|&(_, c)| c.is_ascii_digit() || c == '-' || c == '/' || c == '+')
        {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a number"));
        }
        let from = self.chars[start].0;
        let to = self.chars.get(self.pos).map_or(self.text.len(), |&(i, _)| i);
        let token = &self.text[from..to];
        field
            .parse_scalar(token)
            .map_err(|e| parse_error(self.line, self.base + start, format!("bad scalar `{token}`: {e}")))
    }

    fn finish(&mut self) -> Result<()> {
        match self.peek() {
            None => Ok(()),
            Some(c) => Err(self.error(format!("unexpected `{c}`"))),
        }
    }

    /// `[a, b, ...]`, possibly empty.
    fn row(&mut self, field: FieldSpec) -> Result<Vector> {
        self.expect('[')?;
        let mut out = Vec::new();
        if self.peek() == Some(']') {
            self.pos += 1;
            return Ok(out);
        }
        loop {
            out.push(self.scalar(field)?);
            match self.peek() {
                Some(',') => self.pos += 1,
                _ => break,
            }
        }
        self.expect(']')?;
        Ok(out)
    }
}

/// `[[a,b];[c,d]]`; `[[]]` is the empty matrix.
pub fn parse_matrix(text: &str, field: FieldSpec, dim: usize, line: usize, column: usize) -> Result<Matrix> {
    let mut cur = Cursor::new(text, line, column);
    cur.expect('[')?;
    let mut rows = Vec::new();
    loop {
        let col = cur.column();
        let row = cur.row(field)?;
        if row.len() != dim && !(dim == 0 && row.is_empty()) {
            return Err(parse_error(line, col, format!("row has {} entries, expected {dim}", row.len())));
        }
        if !row.is_empty() {
            rows.push(row);
        }
        match cur.peek() {
            Some(';') => cur.pos += 1,
            _ => break,
        }
    }
    cur.expect(']')?;
    cur.finish()?;
    if rows.len() != dim {
        return Err(parse_error(line, column, format!("matrix has {} rows, expected {dim}", rows.len())));
    }
    Ok(Matrix::from_rows(field, rows).unwrap_or_else(|_| Matrix::zeros(field, 0, 0)))
}

fn parse_vector(text: &str, field: FieldSpec, dim: usize, line: usize, column: usize) -> Result<Vector> {
    let mut cur = Cursor::new(text, line, column);
    let v = cur.row(field)?;
    cur.finish()?;
    if v.len() != dim {
        return Err(parse_error(line, column, format!("vector has {} entries, expected {dim}", v.len())));
    }
    Ok(v)
}

fn parse_tilde(text: &str, field: FieldSpec, line: usize, column: usize) -> Result<TildeClass> {
    let (num_text, den_text, den_col) = match text.find("//") {
        Some(i) => (&text[..i], &text[i + 2..], column + i + 2),
        None => (text, "1", column),
    };
    let num = parse_multi_at(num_text, field, 1, line, column)?.to_uni()?;
    let den = parse_multi_at(den_text, field, 1, line, den_col)?.to_uni()?;
    TildeClass::new(num, den).map_err(|e| parse_error(line, column, e.to_string()))
}

/// One entry of the machine-readable class format.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassEntry {
    pub generators: Vec<String>,
    pub degree: usize,
    pub multiplicity: i64,
}

/// `{field, nvars, dim, class: [{generators, degree, multiplicity}]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassDocument {
    pub field: String,
    pub nvars: usize,
    pub dim: i64,
    pub class: Vec<ClassEntry>,
}

pub fn class_to_json(class: &GrothendieckClass) -> ClassDocument {
    ClassDocument {
        field: class.field().to_string(),
        nvars: class.nvars(),
        dim: class.rank(),
        class: class
            .support()
            .map(|(k, m)| ClassEntry {
                generators: k.generators().to_vec(),
                degree: k.residue_degree(),
                multiplicity: m,
            })
            .collect(),
    }
}

pub fn class_from_json(doc: &ClassDocument) -> Result<GrothendieckClass> {
    let field = parse_field(&doc.field, 1, 1)?;
    let entries = doc
        .class
        .iter()
        .map(|e| {
            let key = MaximalIdealKey::parse(field, doc.nvars, &e.generators)?;
            if key.residue_degree() != e.degree {
                return Err(Error::Precondition(format!(
                    "key {key} has residue degree {}, document says {}",
                    key.residue_degree(),
                    e.degree
                )));
            }
            Ok((key, e.multiplicity))
        })
        .collect::<Result<Vec<_>>>()?;
    GrothendieckClass::from_entries(field, doc.nvars, entries)
}

fn class_value(class: &GrothendieckClass) -> Value {
    serde_json::to_value(class_to_json(class)).expect("serializable")
}

fn tilde_value(a: &TildeClass) -> Value {
    json!({ "num": a.num().render("t"), "den": a.den().render("t") })
}

fn header(t: &CommutingTuple) -> Value {
    json!({ "field": t.field().to_string(), "nvars": t.nvars(), "dim": t.dim() })
}

fn with_header(t: &CommutingTuple, extra: Value) -> Value {
    let mut v = header(t);
    if let (Value::Object(a), Value::Object(b)) = (&mut v, extra) {
        a.extend(b);
    }
    v
}

fn rows_text(vectors: &[Vector], field: FieldSpec) -> String {
    let d = vectors.first().map_or(0, Vec::len);
    Matrix::from_rows(field, vectors.to_vec())
        .unwrap_or_else(|_| Matrix::zeros(field, 0, d))
        .to_string()
}

fn numbered(n: usize, i: usize, name: &str) -> String {
    if n == 1 { name.to_string() } else { format!("{name}[{}]", i + 1) }
}

/// Runs one command on a parsed job.
pub fn run_command(cmd: Command, job: &Job, seed: u64) -> Result<Output> {
    match cmd {
        Command::Class => {
            let t = job.tuple()?;
            let class = k0_class(t)?;
            let mut doc = class_value(&class);
            doc["dim"] = json!(t.dim());
            Ok(Output::ok(class.render(), doc))
        }
        Command::Charpoly => {
            let t = job.tuple()?;
            let mut text = Vec::new();
            let (mut cps, mut lams) = (Vec::new(), Vec::new());
            for (i, m) in t.mats().iter().enumerate() {
                let c = m.charpoly()?.render("t");
                let l = lambda_t(m)?.render("t");
                text.push(format!("{} {c}", numbered(t.nvars(), i, "charpoly")));
                text.push(format!("{} {l}", numbered(t.nvars(), i, "lambda_t")));
                cps.push(c);
                lams.push(l);
            }
            Ok(Output::ok(text.join("\n"), with_header(t, json!({ "charpoly": cps, "lambda_t": lams }))))
        }
        Command::Split => {
            let t = job.tuple()?;
            let (rank, tilde) = kelley_spanier_split(t)?;
            let text = format!("rank {rank}\ntilde {tilde}");
            Ok(Output::ok(text, with_header(t, json!({ "rank": rank, "tilde": tilde_value(&tilde) }))))
        }
        Command::Decompose => {
            let t = job.tuple()?;
            let pieces = primary_decomposition(t)?;
            let mut text = Vec::new();
            let mut values = Vec::new();
            for p in &pieces {
                let basis = rows_text(p.submodule.space().basis(), t.field());
                text.push(format!(
                    "{} dim {} length {} basis {basis}",
                    p.key,
                    p.submodule.dim(),
                    p.length()
                ));
                values.push(json!({
                    "generators": p.key.generators(),
                    "degree": p.key.residue_degree(),
                    "dim": p.submodule.dim(),
                    "length": p.length(),
                    "basis": basis,
                }));
            }
            if text.is_empty() {
                text.push("no pieces".into());
            }
            Ok(Output::ok(text.join("\n"), with_header(t, json!({ "pieces": values }))))
        }
        Command::Radical => {
            let t = job.tuple()?;
            let rad = radical_submodule(t)?;
            let layers: Vec<usize> = radical_filtration(t)?.iter().map(CommutingTuple::dim).collect();
            let basis = rows_text(rad.space().basis(), t.field());
            let text = format!("radical dim {}\nbasis {basis}\nlayers {layers:?}", rad.dim());
            let extra = json!({ "radical_dim": rad.dim(), "basis": basis, "layers": layers });
            Ok(Output::ok(text, with_header(t, extra)))
        }
        Command::Annihilator => {
            let t = job.tuple()?;
            let ideal = annihilator_ideal(t)?;
            let standard: Vec<String> =
                ideal.standard_monomials().iter().map(ToString::to_string).collect();
            let text = format!("ideal {ideal}\nstandard {}", standard.join(", "));
            let extra = json!({ "generators": ideal.rendered_gens(), "standard": standard });
            Ok(Output::ok(text, with_header(t, extra)))
        }
        Command::VerifyAdditivity => {
            let t = job.tuple()?;
            let generators: Vec<Vec<Vector>> = if job.vectors.is_empty() {
                let mut rng = crate::seeded_rng(seed);
                (0..3).map(|_| vec![random_vector(t.field(), t.dim(), &mut rng)]).collect()
            } else {
                vec![job.vectors.clone()]
            };
            let mut all = true;
            let mut text = Vec::new();
            let mut values = Vec::new();
            for g in &generators {
                let s = generated_submodule(t, g)?;
                let ok = verify_additivity(t, &s)?;
                all &= ok;
                let sub = k0_class(&t.restrict(&s)?)?;
                let quo = k0_class(&t.quotient(&s)?)?;
                text.push(format!(
                    "submodule dim {}: {}\n  sub {}\n  quotient {}",
                    s.dim(),
                    if ok { "additive" } else { "NOT additive" },
                    sub.render().replace('\n', "; "),
                    quo.render().replace('\n', "; ")
                ));
                values.push(json!({
                    "dim": s.dim(),
                    "additive": ok,
                    "sub": class_value(&sub),
                    "quotient": class_value(&quo),
                }));
            }
            let whole = k0_class(t)?;
            let text = format!("class {}\n{}", whole.render().replace('\n', "; "), text.join("\n"));
            let extra = json!({ "class": class_value(&whole), "checks": values, "ok": all });
            Ok(Output::checked(text, with_header(t, extra), all))
        }
        Command::TildeMul => {
            if job.tildes.len() < 2 {
                return Err(Error::Precondition("tilde-mul needs at least two `tilde` lines".into()));
            }
            let mut acc = TildeClass::one(job.field);
            for a in &job.tildes {
                acc = acc.checked_mul(a)?;
            }
            let doc = json!({ "field": job.field.to_string(), "tilde": tilde_value(&acc) });
            Ok(Output::ok(format!("tilde {acc}"), doc))
        }
        Command::TildeMap => {
            let [a] = job.tildes.as_slice() else {
                return Err(Error::Precondition("tilde-map needs exactly one `tilde` line".into()));
            };
            let class = tilde_to_free_abelian(a)?;
            let back = free_abelian_to_tilde(&class)?;
            let ok = &back == a;
            let mut text = class.render();
            if !ok {
                let _ = write!(text, "\nround trip FAILED: {back}");
            }
            let mut doc = class_value(&class);
            doc["round_trip"] = json!(ok);
            Ok(Output::checked(text, doc, ok))
        }
        Command::OracleCheck => {
            let t = job.tuple()?;
            let report = oracle_check(t, DEFAULT_BOUND)?;
            let ok = report.agrees();
            let text = format!(
                "fast\n{}\noracle\n{}\n{}",
                report.fast.render(),
                report.oracle.render(),
                if ok { "agree" } else { "MISMATCH" }
            );
            let extra = json!({
                "fast": class_value(&report.fast),
                "oracle": class_value(&report.oracle),
                "agree": ok,
            });
            Ok(Output::checked(text, with_header(t, extra), ok))
        }
    }
}

/// Reads, parses and runs; returns what to print and the exit code.
pub fn execute(args: &Args) -> (String, i32) {
    let text = match std::fs::read_to_string(&args.input) {
        Ok(t) => t,
        Err(e) => return (format!("error: cannot read {}: {e}", args.input.display()), 1),
    };
    run_text(args.command, &text, args.json, args.seed.unwrap_or(crate::DEFAULT_SEED))
}

/// Like [`execute`] on in-memory input.
pub fn run_text(cmd: Command, input: &str, as_json: bool, seed: u64) -> (String, i32) {
    let result = parse_input(input).and_then(|job| run_command(cmd, &job, seed));
    match result {
        Ok(out) => {
            let body = if as_json {
                serde_json::to_string_pretty(&out.json).expect("serializable")
            } else {
                out.text
            };
            (body, out.status as i32)
        }
        Err(e) => (format!("error: {e}"), Status::InputError as i32),
    }
}
