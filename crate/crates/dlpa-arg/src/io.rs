//! Framework files and result documents.
//!
//! The file format is line-oriented:
//!
//! ```text
//! # comment (also %)
//! kind: af|iaf|riaf|ciaf|ciafjm|dargiaf|caf|cciaf
//! universe: a, b, c          # optional; defaults to the mentioned names
//! arg(a).                    # fixed (af/iaf/...) or static (cciaf) argument
//! ?arg(c).                   # uncertain argument
//! carg(b).                   # control argument
//! att(a,b).                  # fixed attack
//! ?att(a,b).                 # uncertain attack
//! <->att(c,e).               # symmetric-uncertain attack (one direction suffices)
//! catt(b,a).                 # control attack
//! constraint: aw(a) & ~att(a,a)
//! dep: choice({c,e})         # also implies({..},{..}), or({..}), nand({..})
//! ```
//!
//! Fact kinds that a framework kind does not support are rejected with the
//! offending line number, as are invariant violations. Result documents
//! serialize canonically: JSON objects come out with sorted keys, and all
//! sets are emitted in canonical order, so output is byte-identical across
//! runs with the same inputs and seed.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use serde_json::{json, Value};

use crate::af::{ArgFramework, Extension};
use crate::control::{Caf, CcIaf};
use crate::error::Error;
use crate::parser::{parse_formula, print_formula};
use crate::syntax::Formula;
use crate::uncertainty::{ArgSet, AttSet, Ciaf, CiafJm, DargIaf, Dependency, Iaf, Riaf, Uncertain};
use crate::universe::Universe;

/// Any parsed framework.
#[derive(Debug, Clone)]
pub enum Framework {
    Uncertain(Uncertain),
    Caf(Caf),
    CcIaf(CcIaf),
}

impl Framework {
    pub fn kind_name(&self) -> &'static str {
        match self {
            Framework::Uncertain(u) => u.kind_name(),
            Framework::Caf(_) => "caf",
            Framework::CcIaf(_) => "cciaf",
        }
    }
}

/// A framework together with its session universe.
#[derive(Debug, Clone)]
pub struct LoadedFramework {
    pub universe: Arc<Universe>,
    pub framework: Framework,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum FactKind {
    Arg,
    UncArg,
    CtrlArg,
    Att,
    UncAtt,
    SymAtt,
    CtrlAtt,
}

impl FactKind {
    fn name(&self) -> &'static str {
        match self {
            FactKind::Arg => "arg",
            FactKind::UncArg => "?arg",
            FactKind::CtrlArg => "carg",
            FactKind::Att => "att",
            FactKind::UncAtt => "?att",
            FactKind::SymAtt => "<->att",
            FactKind::CtrlAtt => "catt",
        }
    }
}

struct FileData {
    kind: Option<(String, usize)>,
    universe: Option<(Vec<String>, usize)>,
    args: Vec<(FactKind, String, usize)>,
    atts: Vec<(FactKind, String, String, usize)>,
    constraints: Vec<(Formula, usize)>,
    deps: Vec<(Dependency, usize)>,
    mention_order: Vec<String>,
}

impl FileData {
    fn mention(&mut self, name: &str) {
        if !self.mention_order.iter().any(|n| n == name) {
            self.mention_order.push(name.to_string());
        }
    }
}

fn line_err(line_no: usize, msg: impl Into<String>) -> Error {
    Error::invariant(format!("line {line_no}: {}", msg.into()))
}

fn is_name(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Parses the inside of `head(...)` facts: one or two comma-separated names.
fn parse_fact_args(body: &str, line_no: usize) -> Result<Vec<String>, Error> {
    let names: Vec<String> = body.split(',').map(|s| s.trim().to_string()).collect();
    for n in &names {
        if !is_name(n) {
            return Err(line_err(line_no, format!("invalid argument name `{n}`")));
        }
    }
    Ok(names)
}

fn parse_braced_set(text: &str, line_no: usize) -> Result<ArgSet, Error> {
    let inner = text
        .trim()
        .strip_prefix('{')
        .and_then(|t| t.strip_suffix('}'))
        .ok_or_else(|| line_err(line_no, format!("expected a braced set, found `{text}`")))?;
    let mut out = ArgSet::new();
    for part in inner.split(',') {
        let name = part.trim();
        if name.is_empty() {
            continue;
        }
        if !is_name(name) {
            return Err(line_err(line_no, format!("invalid argument name `{name}`")));
        }
        out.insert(name.to_string());
    }
    Ok(out)
}

fn parse_dep(text: &str, line_no: usize) -> Result<Dependency, Error> {
    let text = text.trim().trim_end_matches('.').trim();
    let (head, rest) = text
        .split_once('(')
        .ok_or_else(|| line_err(line_no, "expected a dependency like `choice({a,b})`"))?;
    let body = rest
        .strip_suffix(')')
        .ok_or_else(|| line_err(line_no, "expected `)` at the end of the dependency"))?;
    let dep = match head.trim() {
        "implies" => {
            let (x, y) = split_top_level_sets(body, line_no)?;
            Dependency::Implies(x, y)
        }
        "or" => Dependency::Or(parse_braced_set(body, line_no)?),
        "nand" => Dependency::Nand(parse_braced_set(body, line_no)?),
        "choice" => Dependency::Choice(parse_braced_set(body, line_no)?),
        other => {
            return Err(line_err(
                line_no,
                format!("unknown dependency kind `{other}`"),
            ))
        }
    };
    for set in match &dep {
        Dependency::Implies(x, y) => vec![x, y],
        Dependency::Or(x) | Dependency::Nand(x) | Dependency::Choice(x) => vec![x],
    } {
        if set.is_empty() {
            return Err(line_err(line_no, "dependency argument sets must be non-empty"));
        }
    }
    Ok(dep)
}

fn split_top_level_sets(body: &str, line_no: usize) -> Result<(ArgSet, ArgSet), Error> {
    // body looks like `{a,b},{c}`; split at the comma between the braces
    let mut depth = 0;
    for (i, c) in body.char_indices() {
        match c {
            '{' => depth += 1,
            '}' => depth -= 1,
            ',' if depth == 0 => {
                return Ok((
                    parse_braced_set(&body[..i], line_no)?,
                    parse_braced_set(&body[i + 1..], line_no)?,
                ));
            }
            _ => {}
        }
    }
    Err(line_err(line_no, "expected `implies({..},{..})`"))
}

fn parse_file(text: &str) -> Result<FileData, Error> {
    let mut data = FileData {
        kind: None,
        universe: None,
        args: Vec::new(),
        atts: Vec::new(),
        constraints: Vec::new(),
        deps: Vec::new(),
        mention_order: Vec::new(),
    };
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') || line.starts_with('%') {
            continue;
        }
        if let Some(rest) = line.strip_prefix("kind:") {
            if data.kind.is_some() {
                return Err(line_err(line_no, "duplicate `kind:` line"));
            }
            data.kind = Some((rest.trim().to_string(), line_no));
            continue;
        }
        if let Some(rest) = line.strip_prefix("universe:") {
            if data.universe.is_some() {
                return Err(line_err(line_no, "duplicate `universe:` line"));
            }
            let names: Vec<String> = rest
                .split(',')
                .map(|s| s.trim().to_string())
                .filter(|s| !s.is_empty())
                .collect();
            for n in &names {
                if !is_name(n) {
                    return Err(line_err(line_no, format!("invalid argument name `{n}`")));
                }
            }
            data.universe = Some((names, line_no));
            continue;
        }
        if let Some(rest) = line.strip_prefix("constraint:") {
            let formula = parse_formula(rest.trim()).map_err(|e| {
                line_err(line_no, format!("constraint does not parse: {e}"))
            })?;
            for var in formula.vars() {
                match &var {
                    crate::universe::Var::Aw(x) => data.mention(x),
                    crate::universe::Var::Att(x, y) => {
                        data.mention(x);
                        data.mention(y);
                    }
                    _ => {}
                }
            }
            data.constraints.push((formula, line_no));
            continue;
        }
        if let Some(rest) = line.strip_prefix("dep:") {
            let dep = parse_dep(rest, line_no)?;
            for set in match &dep {
                Dependency::Implies(x, y) => vec![x, y],
                Dependency::Or(x) | Dependency::Nand(x) | Dependency::Choice(x) => vec![x],
            } {
                for a in set {
                    data.mention(a);
                }
            }
            data.deps.push((dep, line_no));
            continue;
        }

        // a fact: head(args).
        let fact = line.strip_suffix('.').ok_or_else(|| {
            line_err(line_no, format!("expected a fact ending in `.`, found `{line}`"))
        })?;
        let (head, rest) = fact
            .split_once('(')
            .ok_or_else(|| line_err(line_no, format!("unrecognised fact `{fact}`")))?;
        let body = rest
            .trim_end()
            .strip_suffix(')')
            .ok_or_else(|| line_err(line_no, "expected `)` before the final `.`"))?;
        let kind = match head.trim() {
            "arg" => FactKind::Arg,
            "?arg" => FactKind::UncArg,
            "carg" => FactKind::CtrlArg,
            "att" => FactKind::Att,
            "?att" => FactKind::UncAtt,
            "<->att" => FactKind::SymAtt,
            "catt" => FactKind::CtrlAtt,
            other => {
                return Err(line_err(line_no, format!("unknown fact kind `{other}`")))
            }
        };
        let names = parse_fact_args(body, line_no)?;
        match kind {
            FactKind::Arg | FactKind::UncArg | FactKind::CtrlArg => {
                if names.len() != 1 {
                    return Err(line_err(line_no, "argument facts take one name"));
                }
                data.mention(&names[0]);
                data.args.push((kind, names[0].clone(), line_no));
            }
            _ => {
                if names.len() != 2 {
                    return Err(line_err(line_no, "attack facts take two names"));
                }
                data.mention(&names[0]);
                data.mention(&names[1]);
                data.atts
                    .push((kind, names[0].clone(), names[1].clone(), line_no));
            }
        }
    }
    Ok(data)
}

fn collect_args(data: &FileData, kind: FactKind) -> ArgSet {
    data.args
        .iter()
        .filter(|(k, ..)| *k == kind)
        .map(|(_, a, _)| a.clone())
        .collect()
}

fn collect_atts(data: &FileData, kind: FactKind) -> AttSet {
    data.atts
        .iter()
        .filter(|(k, ..)| *k == kind)
        .map(|(_, x, y, _)| (x.clone(), y.clone()))
        .collect()
}

fn reject_facts(
    data: &FileData,
    file_kind: &str,
    allowed_args: &[FactKind],
    allowed_atts: &[FactKind],
    allow_constraint: bool,
    allow_dep: bool,
) -> Result<(), Error> {
    for (k, _, line) in &data.args {
        if !allowed_args.contains(k) {
            return Err(line_err(
                *line,
                format!("`{}` facts are not allowed in a {file_kind} file", k.name()),
            ));
        }
    }
    for (k, _, _, line) in &data.atts {
        if !allowed_atts.contains(k) {
            return Err(line_err(
                *line,
                format!("`{}` facts are not allowed in a {file_kind} file", k.name()),
            ));
        }
    }
    if !allow_constraint {
        if let Some((_, line)) = data.constraints.first() {
            return Err(line_err(
                *line,
                format!("`constraint:` is not allowed in a {file_kind} file"),
            ));
        }
    }
    if !allow_dep {
        if let Some((_, line)) = data.deps.first() {
            return Err(line_err(
                *line,
                format!("`dep:` is not allowed in a {file_kind} file"),
            ));
        }
    }
    Ok(())
}

fn combined_constraint(data: &FileData) -> Formula {
    match data.constraints.len() {
        0 => Formula::top(),
        1 => data.constraints[0].0.clone(),
        _ => Formula::and(data.constraints.iter().map(|(f, _)| f.clone()).collect()),
    }
}

/// Parses framework file text into a framework and its session universe.
pub fn parse_framework_str(text: &str) -> Result<LoadedFramework, Error> {
    let data = parse_file(text)?;
    let (kind, kind_line) = data
        .kind
        .clone()
        .ok_or_else(|| Error::invariant("missing `kind:` line"))?;

    let framework = match kind.as_str() {
        "af" => {
            reject_facts(&data, "af", &[FactKind::Arg], &[FactKind::Att], false, false)?;
            Framework::Uncertain(Uncertain::Af(ArgFramework::new(
                collect_args(&data, FactKind::Arg),
                collect_atts(&data, FactKind::Att),
            )))
        }
        "iaf" => {
            reject_facts(
                &data,
                "iaf",
                &[FactKind::Arg, FactKind::UncArg],
                &[FactKind::Att, FactKind::UncAtt],
                false,
                false,
            )?;
            Framework::Uncertain(Uncertain::Iaf(Iaf::new(
                collect_args(&data, FactKind::Arg),
                collect_atts(&data, FactKind::Att),
                collect_args(&data, FactKind::UncArg),
                collect_atts(&data, FactKind::UncAtt),
            )?))
        }
        "riaf" => {
            reject_facts(
                &data,
                "riaf",
                &[FactKind::Arg, FactKind::UncArg],
                &[FactKind::Att, FactKind::UncAtt, FactKind::SymAtt],
                false,
                false,
            )?;
            Framework::Uncertain(Uncertain::Riaf(Riaf::new(
                Iaf::new(
                    collect_args(&data, FactKind::Arg),
                    collect_atts(&data, FactKind::Att),
                    collect_args(&data, FactKind::UncArg),
                    collect_atts(&data, FactKind::UncAtt),
                )?,
                collect_atts(&data, FactKind::SymAtt),
            )?))
        }
        "ciaf" => {
            reject_facts(&data, "ciaf", &[FactKind::Arg], &[], true, false)?;
            Framework::Uncertain(Uncertain::Ciaf(Ciaf::new(
                collect_args(&data, FactKind::Arg),
                combined_constraint(&data),
            )?))
        }
        "ciafjm" => {
            reject_facts(
                &data,
                "ciafjm",
                &[FactKind::Arg, FactKind::UncArg],
                &[FactKind::Att, FactKind::UncAtt],
                true,
                false,
            )?;
            Framework::Uncertain(Uncertain::CiafJm(CiafJm::new(
                Iaf::new(
                    collect_args(&data, FactKind::Arg),
                    collect_atts(&data, FactKind::Att),
                    collect_args(&data, FactKind::UncArg),
                    collect_atts(&data, FactKind::UncAtt),
                )?,
                combined_constraint(&data),
            )?))
        }
        "dargiaf" => {
            reject_facts(
                &data,
                "dargiaf",
                &[FactKind::Arg, FactKind::UncArg],
                &[FactKind::Att],
                false,
                true,
            )?;
            Framework::Uncertain(Uncertain::DargIaf(DargIaf::new(
                collect_args(&data, FactKind::Arg),
                collect_args(&data, FactKind::UncArg),
                collect_atts(&data, FactKind::Att),
                data.deps.iter().map(|(d, _)| d.clone()).collect(),
            )?))
        }
        "caf" => {
            reject_facts(
                &data,
                "caf",
                &[FactKind::Arg, FactKind::UncArg, FactKind::CtrlArg],
                &[
                    FactKind::Att,
                    FactKind::UncAtt,
                    FactKind::SymAtt,
                    FactKind::CtrlAtt,
                ],
                false,
                false,
            )?;
            // the symmetric pairs are closed here so the control framework
            // constructor sees the full relation
            let mut sym = collect_atts(&data, FactKind::SymAtt);
            let closed: AttSet = sym
                .iter()
                .map(|(x, y)| (y.clone(), x.clone()))
                .collect();
            sym.extend(closed);
            Framework::Caf(Caf::new(
                collect_args(&data, FactKind::Arg),
                collect_atts(&data, FactKind::Att),
                collect_args(&data, FactKind::UncArg),
                collect_atts(&data, FactKind::UncAtt),
                sym,
                collect_args(&data, FactKind::CtrlArg),
                collect_atts(&data, FactKind::CtrlAtt),
            )?)
        }
        "cciaf" => {
            reject_facts(
                &data,
                "cciaf",
                &[FactKind::Arg, FactKind::CtrlArg],
                &[FactKind::CtrlAtt],
                true,
                false,
            )?;
            Framework::CcIaf(CcIaf::new(
                collect_args(&data, FactKind::CtrlArg),
                collect_atts(&data, FactKind::CtrlAtt),
                collect_args(&data, FactKind::Arg),
                combined_constraint(&data),
            )?)
        }
        other => {
            return Err(line_err(
                kind_line,
                format!("unknown framework kind `{other}`"),
            ))
        }
    };

    let universe = match data.universe {
        Some((names, line)) => {
            for mentioned in &data.mention_order {
                if !names.contains(mentioned) {
                    return Err(line_err(
                        line,
                        format!("`{mentioned}` is mentioned but missing from the universe"),
                    ));
                }
            }
            Universe::new(names)?
        }
        None => {
            if data.mention_order.is_empty() {
                return Err(Error::invariant(
                    "no arguments mentioned and no `universe:` line",
                ));
            }
            Universe::new(data.mention_order.clone())?
        }
    };

    Ok(LoadedFramework {
        universe,
        framework,
    })
}

/// Loads one framework file from disk.
pub fn load_framework(path: &str) -> Result<LoadedFramework, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::domain(format!("cannot read `{path}`: {e}")))?;
    parse_framework_str(&text)
}

fn write_fact_block(out: &mut String, head: &str, args: &ArgSet) {
    for a in args {
        let _ = writeln!(out, "{head}({a}).");
    }
}

fn write_att_block(out: &mut String, head: &str, atts: &AttSet) {
    for (x, y) in atts {
        let _ = writeln!(out, "{head}({x},{y}).");
    }
}

/// Renders a framework back into the file format. Symmetric-uncertain pairs
/// are written once in their canonical direction.
pub fn format_framework_file(loaded: &LoadedFramework) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "kind: {}", loaded.framework.kind_name());
    let _ = writeln!(
        out,
        "universe: {}",
        loaded.universe.args().join(", ")
    );
    match &loaded.framework {
        Framework::Uncertain(Uncertain::Af(af)) => {
            write_fact_block(&mut out, "arg", af.args());
            write_att_block(&mut out, "att", af.attacks());
        }
        Framework::Uncertain(Uncertain::Iaf(iaf)) => {
            write_fact_block(&mut out, "arg", iaf.fixed_args());
            write_fact_block(&mut out, "?arg", iaf.uncertain_args());
            write_att_block(&mut out, "att", iaf.fixed_atts());
            write_att_block(&mut out, "?att", iaf.uncertain_atts());
        }
        Framework::Uncertain(Uncertain::Riaf(riaf)) => {
            write_fact_block(&mut out, "arg", riaf.iaf().fixed_args());
            write_fact_block(&mut out, "?arg", riaf.iaf().uncertain_args());
            write_att_block(&mut out, "att", riaf.iaf().fixed_atts());
            write_att_block(&mut out, "?att", riaf.iaf().uncertain_atts());
            let once: AttSet = riaf
                .sym_atts()
                .iter()
                .filter(|(x, y)| x <= y)
                .cloned()
                .collect();
            write_att_block(&mut out, "<->att", &once);
        }
        Framework::Uncertain(Uncertain::Ciaf(c)) => {
            write_fact_block(&mut out, "arg", c.args());
            let _ = writeln!(out, "constraint: {}", print_formula(c.constraint()));
        }
        Framework::Uncertain(Uncertain::CiafJm(c)) => {
            write_fact_block(&mut out, "arg", c.iaf().fixed_args());
            write_fact_block(&mut out, "?arg", c.iaf().uncertain_args());
            write_att_block(&mut out, "att", c.iaf().fixed_atts());
            write_att_block(&mut out, "?att", c.iaf().uncertain_atts());
            let _ = writeln!(out, "constraint: {}", print_formula(c.constraint()));
        }
        Framework::Uncertain(Uncertain::DargIaf(d)) => {
            write_fact_block(&mut out, "arg", d.fixed_args());
            write_fact_block(&mut out, "?arg", d.uncertain_args());
            write_att_block(&mut out, "att", d.attacks());
            for dep in d.deps() {
                let set = |s: &ArgSet| {
                    let names: Vec<&str> = s.iter().map(String::as_str).collect();
                    format!("{{{}}}", names.join(","))
                };
                let rendered = match dep {
                    Dependency::Implies(x, y) => format!("implies({},{})", set(x), set(y)),
                    Dependency::Or(x) => format!("or({})", set(x)),
                    Dependency::Nand(x) => format!("nand({})", set(x)),
                    Dependency::Choice(x) => format!("choice({})", set(x)),
                };
                let _ = writeln!(out, "dep: {rendered}");
            }
        }
        Framework::Caf(caf) => {
            write_fact_block(&mut out, "arg", caf.fixed_args());
            write_fact_block(&mut out, "?arg", caf.uncertain_args());
            write_fact_block(&mut out, "carg", caf.control_args());
            write_att_block(&mut out, "att", caf.fixed_atts());
            write_att_block(&mut out, "?att", caf.uncertain_atts());
            let once: AttSet = caf
                .sym_atts()
                .iter()
                .filter(|(x, y)| x <= y)
                .cloned()
                .collect();
            write_att_block(&mut out, "<->att", &once);
            write_att_block(&mut out, "catt", caf.control_atts());
        }
        Framework::CcIaf(cc) => {
            write_fact_block(&mut out, "arg", cc.static_args());
            write_fact_block(&mut out, "carg", cc.control_args());
            write_att_block(&mut out, "catt", cc.control_atts());
            let _ = writeln!(out, "constraint: {}", print_formula(cc.constraint()));
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Result documents
// ---------------------------------------------------------------------------

/// JSON value for a framework: argument list plus attack pairs.
pub fn framework_value(af: &ArgFramework) -> Value {
    json!({
        "args": af.args().iter().collect::<Vec<_>>(),
        "attacks": af.attacks().iter().map(|(x, y)| json!([x, y])).collect::<Vec<_>>(),
    })
}

/// JSON value for an extension set.
pub fn extensions_value(exts: &[Extension]) -> Value {
    Value::Array(
        exts.iter()
            .map(|e| Value::Array(e.members.iter().map(|m| Value::String(m.clone())).collect()))
            .collect(),
    )
}

/// A canonical, sorted-key result document.
#[derive(Debug, Clone)]
pub struct ResultDocument {
    fields: BTreeMap<String, Value>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Text,
    Json,
}

impl std::str::FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "text" => Ok(OutputFormat::Text),
            "json" => Ok(OutputFormat::Json),
            other => Err(Error::domain(format!(
                "unknown output format `{other}` (expected text or json)"
            ))),
        }
    }
}

impl ResultDocument {
    pub fn new(command: &str) -> Self {
        let mut fields = BTreeMap::new();
        fields.insert("command".to_string(), json!(command));
        fields.insert("version".to_string(), json!(env!("CARGO_PKG_VERSION")));
        ResultDocument { fields }
    }

    pub fn set(&mut self, key: &str, value: Value) -> &mut Self {
        self.fields.insert(key.to_string(), value);
        self
    }

    pub fn get(&self, key: &str) -> Option<&Value> {
        self.fields.get(key)
    }

    pub fn emit(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Json => {
                let object: serde_json::Map<String, Value> = self
                    .fields
                    .iter()
                    .map(|(k, v)| (k.clone(), v.clone()))
                    .collect();
                let mut s = serde_json::to_string_pretty(&Value::Object(object))
                    .expect("documents contain only plain values");
                s.push('\n');
                s
            }
            OutputFormat::Text => {
                let mut out = String::new();
                for (key, value) in &self.fields {
                    if key == "version" || key == "command" {
                        continue;
                    }
                    let _ = writeln!(out, "{key}: {}", render_text(key, value));
                }
                out
            }
        }
    }
}

/// Key-aware plain-text rendering: extension sets print in set notation,
/// attack pairs as `(x,y)`, frameworks as `(args, attacks)`.
fn render_text(key: &str, value: &Value) -> String {
    match value {
        Value::Null => "none".to_string(),
        Value::Bool(b) => if *b { "yes" } else { "no" }.to_string(),
        Value::Number(n) => n.to_string(),
        Value::String(s) => s.clone(),
        Value::Array(items) => {
            let inner: Vec<String> = items.iter().map(|v| render_text(key, v)).collect();
            match key {
                "attacks" => format!("{{{}}}", inner.join(",")),
                _ => {
                    if items.iter().all(|v| v.is_string()) {
                        format!("{{{}}}", inner.join(","))
                    } else {
                        format!("{{{}}}", inner.join(","))
                    }
                }
            }
        }
        Value::Object(map) => {
            if let (Some(args), Some(attacks)) = (map.get("args"), map.get("attacks")) {
                let atts: Vec<String> = attacks
                    .as_array()
                    .map(|a| {
                        a.iter()
                            .map(|pair| {
                                let p = pair.as_array().expect("attack pairs are arrays");
                                format!(
                                    "({},{})",
                                    p[0].as_str().unwrap_or_default(),
                                    p[1].as_str().unwrap_or_default()
                                )
                            })
                            .collect()
                    })
                    .unwrap_or_default();
                format!(
                    "({},{{{}}})",
                    render_text("args", args),
                    atts.join(",")
                )
            } else {
                let parts: Vec<String> = map
                    .iter()
                    .map(|(k, v)| format!("{k}={}", render_text(k, v)))
                    .collect();
                format!("[{}]", parts.join(" "))
            }
        }
    }
}
