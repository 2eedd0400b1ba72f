use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use unicast_core::field::PrimeField;
use unicast_core::flow::connectivity_level;
use unicast_core::graph::{Embedding, UnicastInstance};
use unicast_core::netcode::{
    assign_133, code_two_session, propagate, route_uniform, verify_code, verify_table, write_code, NetworkCode,
    Verification,
};
use unicast_core::oracle::{
    brute_force_routing, brute_force_scalar, classify_triple, example_text, SearchConfig, Status, Strategy as Plan,
    Witness,
};
use unicast_core::transform::{minimize, structure, EdgeOrigin};

use crate::dot;
use crate::input::{load_code, load_instance, write_file, CliError};
use crate::{CodeStrategy, SearchModeArg};

/// Exit statuses of completed commands.
pub const SUCCESS: u8 = 0;
pub const NEGATIVE: u8 = 1;
pub const OVER_BUDGET: u8 = 2;

/// Report text plus exit status of a command that ran to completion.
pub struct Outcome {
    pub report: String,
    pub status: u8,
}

impl Outcome {
    fn new() -> Self {
        Self { report: String::new(), status: SUCCESS }
    }

    fn line(&mut self, text: impl AsRef<str>) {
        self.report.push_str(text.as_ref());
        self.report.push('\n');
    }

    fn block(&mut self, prefix: &str, text: &str) {
        for l in text.lines() {
            self.line(format!("{prefix}{l}"));
        }
    }
}

fn session_table(out: &mut Outcome, instance: &UnicastInstance) {
    let g = instance.graph();
    let conn = connectivity_level(instance);
    for (i, s) in instance.sessions().iter().enumerate() {
        out.line(format!(
            "session {} {} -> {} rate {} connectivity {}",
            i + 1,
            g.name(s.source),
            g.name(s.terminal),
            s.rate,
            conn.levels()[i]
        ));
    }
}

pub fn analyze(instance: &str) -> Result<Outcome, CliError> {
    let inst = load_instance(instance)?;
    let mut out = Outcome::new();
    out.line(format!("RESULT: connectivity {}", connectivity_level(&inst)));
    out.line(format!("RESULT: nodes {} edges {}", inst.graph().node_count(), inst.graph().edge_count()));
    session_table(&mut out, &inst);
    Ok(out)
}

/// Mapping file: where every input edge went and which input node every
/// output node stands for.
fn mapping(input: &UnicastInstance, output: &UnicastInstance, embedding: &Embedding) -> String {
    let mut text = String::from("# input edge -> output edge\n");
    for (e, image) in embedding.edge_image.iter().enumerate() {
        match image {
            Some(f) => writeln!(text, "edge {e} -> {}", f.0).unwrap(),
            None => writeln!(text, "edge {e} -> removed").unwrap(),
        }
    }
    text.push_str("# output node <- input node\n");
    for v in output.graph().nodes() {
        let c = embedding.node_cluster[v.0];
        writeln!(text, "node {} <- {}", output.graph().name(v), input.graph().name(c)).unwrap();
    }
    text
}

fn map_path(path: &Path) -> PathBuf {
    let mut name = path.as_os_str().to_owned();
    name.push(".map");
    PathBuf::from(name)
}

fn emit_transformed(
    out: &mut Outcome,
    result: &UnicastInstance,
    map: &str,
    output: Option<&Path>,
) -> Result<(), CliError> {
    match output {
        Some(path) => {
            write_file(path, &result.to_string())?;
            let mp = map_path(path);
            write_file(&mp, map)?;
            out.line(format!("RESULT: wrote {} and {}", path.display(), mp.display()));
        }
        None => {
            out.report.push_str(&result.to_string());
            out.block("# ", map);
        }
    }
    Ok(())
}

pub fn minimize_cmd(instance: &str, output: Option<&Path>) -> Result<Outcome, CliError> {
    let inst = load_instance(instance)?;
    let min = minimize(&inst);
    let mut out = Outcome::new();
    out.line(format!("RESULT: removed {}", min.removed.len()));
    out.line(format!("RESULT: connectivity {}", connectivity_level(&min.instance)));
    let map = mapping(&inst, &min.instance, &min.embedding(&inst));
    emit_transformed(&mut out, &min.instance, &map, output)?;
    Ok(out)
}

pub fn structure_cmd(instance: &str, output: Option<&Path>) -> Result<Outcome, CliError> {
    let inst = load_instance(instance)?;
    let st = structure(&inst);
    let gadgets: BTreeSet<_> =
        st.origin.iter().filter_map(|o| if let EdgeOrigin::Gadget(v) = o { Some(*v) } else { None }).collect();
    let mut out = Outcome::new();
    out.line(format!("RESULT: gadgets {}", gadgets.len()));
    out.line(format!("RESULT: max internal degree {}", st.instance.max_internal_degree()));
    out.line(format!("RESULT: connectivity {}", connectivity_level(&st.instance)));
    let map = mapping(&inst, &st.instance, &st.embedding);
    emit_transformed(&mut out, &st.instance, &map, output)?;
    Ok(out)
}

/// Per-terminal verdicts. `carrier` is the instance the code lives on, so
/// symbol and edge names match the code file.
fn report_terminals(out: &mut Outcome, carrier: &UnicastInstance, v: &Verification) {
    for check in &v.terminals {
        let verdict = if check.passes() { "pass" } else { "fail" };
        out.line(format!("RESULT: terminal {} {verdict}", check.session + 1));
        for (unit, decoding) in check.decoding.iter().enumerate() {
            let symbol = carrier.symbols(check.session).start + unit;
            match decoding {
                Some(coeffs) => {
                    let terms: Vec<String> = check
                        .received
                        .iter()
                        .zip(coeffs)
                        .filter(|(_, &c)| c != 0)
                        .map(|(input, c)| format!("{c}*{input}"))
                        .collect();
                    out.line(format!("  x{symbol} = {}", terms.join(" + ")));
                }
                None => out.line(format!("  x{symbol} not decodable")),
            }
        }
    }
}

fn emit_code(
    out: &mut Outcome,
    instance: &UnicastInstance,
    code: &NetworkCode,
    output: Option<&Path>,
) -> Result<(), CliError> {
    let carrier = code.carrier(instance);
    let table = propagate(&carrier, code);
    let text = write_code(code, Some(&table));
    match output {
        Some(path) => {
            write_file(path, &text)?;
            out.line(format!("CODE: wrote {}", path.display()));
        }
        None => out.block("CODE: ", &text),
    }
    Ok(())
}

fn auto_strategy(inst: &UnicastInstance) -> Result<CodeStrategy, String> {
    let n = inst.session_count();
    let rates: Vec<usize> = inst.sessions().iter().map(|s| s.rate).collect();
    let conn = connectivity_level(inst);
    if n == 3 && rates == [1, 1, 1] {
        let levels = conn.levels();
        if levels.contains(&0) {
            return Err(format!("infeasible, a terminal is unreachable (connectivity {conn})"));
        }
        let verdict = classify_triple([0, 1, 2].map(|i| levels[i].min(3))).expect("levels clamped to 1..=3");
        return match verdict.status {
            Status::Feasible(Plan::Routing) => Ok(CodeStrategy::Routing),
            Status::Feasible(_) => Ok(CodeStrategy::Vector133),
            Status::Infeasible(w) => {
                let witness = match w {
                    Witness::Generator(id) => id,
                    Witness::CharacterizationOnly => "characterization-only",
                };
                Err(format!("infeasible per classification {conn} witness={witness}"))
            }
        };
    }
    if n == 2 && rates[0] == 1 && conn.dominates(&[1, rates[1] + 1]) {
        return Ok(CodeStrategy::TwoSession);
    }
    if rates.iter().all(|&r| r == 1) && conn.levels().iter().all(|&k| k >= n) {
        return Ok(CodeStrategy::Routing);
    }
    Err(format!("no constructor applies to rates {rates:?} with connectivity {conn}"))
}

pub fn code_cmd(instance: &str, strategy: CodeStrategy, q: u32, output: Option<&Path>) -> Result<Outcome, CliError> {
    let inst = load_instance(instance)?;
    let field = PrimeField::new(q)?;
    let mut out = Outcome::new();
    let chosen = match strategy {
        CodeStrategy::Auto => match auto_strategy(&inst) {
            Ok(s) => s,
            Err(reason) => {
                out.line(format!("RESULT: {reason}"));
                out.status = NEGATIVE;
                return Ok(out);
            }
        },
        s => s,
    };
    out.line(format!("RESULT: strategy {}", chosen.name()));
    let built = match chosen {
        CodeStrategy::Routing => route_uniform(&inst, field),
        CodeStrategy::TwoSession => code_two_session(&inst, field),
        CodeStrategy::Vector133 => assign_133(&inst, field),
        CodeStrategy::Auto => unreachable!("auto resolves to a concrete strategy"),
    };
    let code = match built {
        Ok(code) => code,
        Err(e) => {
            out.line(format!("RESULT: construction failed: {e}"));
            out.status = NEGATIVE;
            return Ok(out);
        }
    };
    out.line(format!("RESULT: field q={} T={}", q, code.t()));
    let v = verify_code(&inst, &code)?;
    report_terminals(&mut out, &code.carrier(&inst), &v);
    if !v.all_pass() {
        out.status = NEGATIVE;
    }
    emit_code(&mut out, &inst, &code, output)?;
    Ok(out)
}

pub fn verify_cmd(instance: &str, code: &str) -> Result<Outcome, CliError> {
    let inst = load_instance(instance)?;
    let code = load_code(code)?;
    let carrier = code.carrier(&inst);
    code.validate(&carrier)?;
    let v = verify_table(&carrier, &propagate(&carrier, &code), code.field());
    let mut out = Outcome::new();
    out.line(format!("RESULT: {}", if v.all_pass() { "all terminals decode" } else { "decoding fails" }));
    report_terminals(&mut out, &carrier, &v);
    if !v.all_pass() {
        out.status = NEGATIVE;
    }
    Ok(out)
}

pub fn classify_cmd(triple: [usize; 3], emit_witness: bool, output: Option<&Path>) -> Result<Outcome, CliError> {
    let verdict = classify_triple(triple)?;
    let mut out = Outcome::new();
    out.line(format!("RESULT: {verdict}"));
    if !verdict.is_feasible() {
        out.status = NEGATIVE;
    }
    if let Status::Infeasible(w) = verdict.status {
        match (w, verdict.witness_instance()) {
            (Witness::Generator(id), Some(inst)) if emit_witness => {
                let path = output.map(Path::to_path_buf).unwrap_or_else(|| PathBuf::from(format!("{id}.txt")));
                write_file(&path, &inst.to_string())?;
                out.line(format!("WITNESS: {id} wrote {}", path.display()));
            }
            (Witness::Generator(id), _) => out.line(format!("WITNESS: {id}")),
            (Witness::CharacterizationOnly, _) => out.line("WITNESS: none, infeasible by characterization only"),
        }
    }
    Ok(out)
}

pub fn gen_cmd(id: &str, output: Option<&Path>) -> Result<Outcome, CliError> {
    let text = example_text(id).ok_or_else(|| CliError::UnknownExample(id.into()))?;
    let mut out = Outcome::new();
    match output {
        Some(path) => {
            write_file(path, text)?;
            out.line(format!("RESULT: wrote {id} to {}", path.display()));
        }
        None => out.report.push_str(text),
    }
    Ok(out)
}

pub struct SearchArgs<'a> {
    pub instance: &'a str,
    pub q: u32,
    pub t: usize,
    pub mode: SearchModeArg,
    pub budget: u64,
    pub jobs: usize,
    pub output: Option<&'a Path>,
}

pub fn search_cmd(args: SearchArgs<'_>) -> Result<Outcome, CliError> {
    let inst = load_instance(args.instance)?;
    PrimeField::new(args.q)?;
    let config = SearchConfig { q: args.q, t: args.t.max(1), budget: args.budget, jobs: args.jobs.max(1) };
    let report = match args.mode {
        SearchModeArg::Linear => brute_force_scalar(&inst, config),
        SearchModeArg::Routing => brute_force_routing(&inst, config),
    };
    let mut out = Outcome::new();
    out.block("RESULT: ", &report.to_string());
    if let Some(code) = &report.code {
        out.line("RESULT: found");
        emit_code(&mut out, &inst, code, args.output)?;
    } else if report.exhausted {
        out.line("RESULT: exhausted, none");
        out.status = NEGATIVE;
    } else {
        out.line("RESULT: budget exceeded");
        out.status = OVER_BUDGET;
    }
    Ok(out)
}

pub fn export_dot(instance: &str, code: Option<&str>, output: Option<&Path>) -> Result<Outcome, CliError> {
    let inst = load_instance(instance)?;
    let text = match code {
        Some(arg) => {
            let code = load_code(arg)?;
            let carrier = code.carrier(&inst);
            code.validate(&carrier)?;
            let table = propagate(&carrier, &code);
            dot::export(&inst, Some((&code, &table)))
        }
        None => dot::export(&inst, None),
    };
    let mut out = Outcome::new();
    match output {
        Some(path) => {
            write_file(path, &text)?;
            out.line(format!("RESULT: wrote {}", path.display()));
        }
        None => out.report.push_str(&text),
    }
    Ok(out)
}
