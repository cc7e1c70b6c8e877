use std::collections::BTreeMap;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use tsra_core::cocycles::{is_class_function_compatible, regular_classes, Cocycle};
use tsra_core::exact::Cyclotomic;
use tsra_core::groups::{FiniteGroup, GroupError, GroupHom};
use tsra_core::modcat::{
    block_is_u_stable, decompose_blocks, default_candidates, match_block, transfer_parameters, verify_morita, Block,
    Candidate, MatchResult, ModcatError, MoritaReport, StabilityReport, TransferredParameter,
};
use tsra_core::symplectic::{pbw_diamond_check, symplectic_reflections, PbwOutcome, SymplecticAction};
use tsra_core::twisted_algebra::{character_table_with, SpectralOptions, TwistedCharacterTable};

use crate::{sha256_hex, CliError, Report, RunOptions, Scenario, ScenarioSource, Setup};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Characters,
    RegularClasses,
    Blocks,
    Transfer,
    Verify,
    Pbw,
}

impl Command {
    pub const ALL: [Command; 6] =
        [Command::Characters, Command::RegularClasses, Command::Blocks, Command::Transfer, Command::Verify, Command::Pbw];

    pub fn as_str(self) -> &'static str {
        match self {
            Command::Characters => "characters",
            Command::RegularClasses => "regular-classes",
            Command::Blocks => "blocks",
            Command::Transfer => "transfer",
            Command::Verify => "verify",
            Command::Pbw => "pbw",
        }
    }
}

impl FromStr for Command {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Command::ALL.into_iter().find(|c| c.as_str() == s).ok_or_else(|| CliError::UnknownCommand(s.to_string()))
    }
}

struct Timer {
    enabled: bool,
    last: Instant,
    phases: BTreeMap<String, f64>,
}

impl Timer {
    fn new(enabled: bool) -> Self {
        Timer { enabled, last: Instant::now(), phases: BTreeMap::new() }
    }

    fn lap(&mut self, phase: &str) {
        if self.enabled {
            let now = Instant::now();
            self.phases.insert(phase.to_string(), (now - self.last).as_secs_f64());
            self.last = now;
        }
    }

    fn finish(self) -> Option<BTreeMap<String, f64>> {
        self.enabled.then_some(self.phases)
    }
}

#[derive(Serialize)]
struct ClassEntry {
    class: usize,
    label: String,
    size: usize,
}

#[derive(Serialize)]
struct IrregularEntry {
    class: usize,
    label: String,
    size: usize,
    /// Some `h` commuting with the representative with `ψ(g,h) ≠ ψ(h,g)`.
    witness: String,
}

#[derive(Serialize)]
struct RegularityResult {
    group_order: usize,
    cocycle_order: u64,
    regular_count: usize,
    regular: Vec<ClassEntry>,
    non_regular: Vec<IrregularEntry>,
    class_function_compatible: bool,
    class_function_witness: Option<(String, String)>,
}

#[derive(Serialize)]
struct CharactersResult<'a> {
    group_order: usize,
    cocycle_order: u64,
    irreducibles: usize,
    regular_classes: usize,
    sum_of_squared_degrees: u64,
    table: &'a TwistedCharacterTable,
}

#[derive(Serialize)]
struct BlockEntry {
    index: usize,
    members: Vec<usize>,
    degrees: Vec<u64>,
    /// Nonzero coefficients of the central idempotent, by element label.
    idempotent: Vec<(String, Cyclotomic)>,
    fusion: Vec<Vec<Vec<u64>>>,
    matched: MatchResult,
    #[serde(skip_serializing_if = "Option::is_none")]
    stability: Option<StabilityReport>,
}

#[derive(Serialize)]
struct BlocksResult {
    group_order: usize,
    quotient_order: usize,
    kernel: Vec<String>,
    irreducibles: Vec<u64>,
    blocks: Vec<BlockEntry>,
}

#[derive(Serialize)]
struct TransferEntry {
    index: usize,
    candidate: String,
    members: Vec<usize>,
    bijection: Vec<usize>,
    alpha_e: tsra_core::exact::Rational,
    c_prime: TransferredParameter,
}

#[derive(Serialize)]
struct VerifyEntry {
    index: usize,
    candidate: String,
    c_prime: TransferredParameter,
    morita: MoritaReport,
    /// Intertwining bijections re-verified with their own α and `c′`.
    bijections_checked: usize,
    every_bijection_passes: bool,
}

#[derive(Serialize)]
struct ParameterEntry {
    element: String,
    value: Cyclotomic,
}

#[derive(Serialize)]
struct PbwResult {
    dimension: usize,
    reflection_classes: Vec<ClassEntry>,
    non_regular_reflections: Vec<String>,
    parameter: Vec<ParameterEntry>,
    outcome: PbwOutcome,
}

fn spectral_options(scenario: &Scenario, opts: &RunOptions) -> SpectralOptions {
    let mut s = SpectralOptions::default();
    if let Some(seed) = opts.seed.or(scenario.seed) {
        s.seed = seed;
    }
    if let Some(tol) = opts.tolerance.or(scenario.tolerance) {
        s.tolerance = tol;
    }
    s
}

fn per_block<T: Send>(
    jobs: Option<usize>,
    n: usize,
    f: impl Fn(usize) -> Result<T, CliError> + Sync + Send,
) -> Result<Vec<T>, CliError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.unwrap_or(0))
        .build()
        .map_err(|e| CliError::Invalid(format!("cannot start {jobs:?} workers: {e}")))?;
    // Indexed collection keeps block order independent of scheduling.
    pool.install(|| (0..n).into_par_iter().map(f).collect())
}

fn needs_action<'a>(setup: &'a Setup, command: Command) -> Result<&'a SymplecticAction, CliError> {
    setup
        .action
        .as_ref()
        .ok_or_else(|| CliError::Invalid(format!("`{}` needs a representation", command.as_str())))
}

struct Matched {
    g_table: TwistedCharacterTable,
    pi: GroupHom,
    blocks: Vec<Block>,
    matches: Vec<MatchResult>,
}

fn match_all(
    scenario: &Scenario,
    setup: &Setup,
    spectral: &SpectralOptions,
    jobs: Option<usize>,
    timer: &mut Timer,
) -> Result<Matched, CliError> {
    let g_table = character_table_with(&setup.psi, spectral)?;
    let pi = scenario.quotient(setup)?;
    let w = pi.target().clone();
    let w_table = character_table_with(&Cocycle::trivial(w.clone()), spectral)?;
    timer.lap("characters");
    let blocks = decompose_blocks(&g_table, &pi, &w_table)?;
    timer.lap("blocks");
    let mut candidates: Vec<Candidate> = scenario.user_candidates(&w)?;
    if pi.kernel().len() == 1 {
        // π is an isomorphism: (W, ψ) itself.
        let mut to_g = vec![0; w.order()];
        for g in setup.group.elements() {
            to_g[pi.apply(g)] = g;
        }
        let n = w.order();
        let exps = (0..n * n).map(|k| setup.psi.exponent(to_g[k / n], to_g[k % n])).collect();
        let zeta = Cocycle::from_exponents(w.clone(), setup.psi.order(), exps)?;
        let name = if zeta.is_trivial() { "W trivial" } else { "W ψ" };
        candidates.push(Candidate { name: name.into(), group: w.clone(), embedding: (0..n).collect(), zeta });
    }
    match default_candidates(&w) {
        Ok(more) => candidates.extend(more),
        // Subgroup enumeration is bounded; the candidates above may still match.
        Err(ModcatError::Group(GroupError::OrderBound { .. })) if !candidates.is_empty() => {}
        Err(e) => return Err(e.into()),
    }
    let matches = per_block(jobs, blocks.len(), |i| Ok(match_block(&blocks[i], &g_table, &pi, &w_table, &candidates)?))?;
    timer.lap("matching");
    Ok(Matched { g_table, pi, blocks, matches })
}

fn labelled(group: &FiniteGroup, e: &tsra_core::twisted_algebra::AlgebraElement) -> Vec<(String, Cyclotomic)> {
    e.terms().map(|(g, c)| (group.label(g).to_string(), c.clone())).collect()
}

fn to_value<T: Serialize>(value: &T) -> serde_json::Value {
    serde_json::to_value(value).expect("results serialize")
}

/// Runs one command on a scenario and assembles its report.
pub fn run_scenario(command: Command, source: &ScenarioSource, opts: &RunOptions) -> Result<Report, CliError> {
    let mut timer = Timer::new(opts.timings);
    let scenario = Scenario::parse(&source.text)?;
    let spectral = spectral_options(&scenario, opts);
    let setup = scenario.build()?;
    timer.lap("setup");
    let group = &setup.group;

    let (passed, results) = match command {
        Command::RegularClasses => {
            let report = regular_classes(&setup.psi)?;
            let cf = is_class_function_compatible(&setup.psi)?;
            let classes = group.classes();
            let entry = |c: usize| ClassEntry {
                class: c,
                label: group.label(classes.representatives[c]).to_string(),
                size: classes.size(c),
            };
            let non_regular = (0..classes.len())
                .filter(|c| !report.regular_classes.contains(c))
                .map(|c| {
                    let rep = classes.representatives[c];
                    let witness = report.witnesses[rep].expect("irregular elements carry a witness");
                    let e = entry(c);
                    IrregularEntry { class: c, label: e.label, size: e.size, witness: group.label(witness).to_string() }
                })
                .collect();
            let result = RegularityResult {
                group_order: group.order(),
                cocycle_order: setup.psi.order(),
                regular_count: report.regular_classes.len(),
                regular: report.regular_classes.iter().map(|&c| entry(c)).collect(),
                non_regular,
                class_function_compatible: cf.compatible,
                class_function_witness: cf.witness.map(|(g, h)| (group.label(g).to_string(), group.label(h).to_string())),
            };
            timer.lap("regularity");
            (true, to_value(&result))
        }
        Command::Characters => {
            let table = character_table_with(&setup.psi, &spectral)?;
            timer.lap("characters");
            let sum: u64 = table.degrees.iter().map(|d| d * d).sum();
            let result = CharactersResult {
                group_order: group.order(),
                cocycle_order: setup.psi.order(),
                irreducibles: table.len(),
                regular_classes: table.classes.len(),
                sum_of_squared_degrees: sum,
                table: &table,
            };
            let passed = sum == group.order() as u64 && table.len() == table.classes.len();
            (passed, to_value(&result))
        }
        Command::Blocks => {
            let m = match_all(&scenario, &setup, &spectral, opts.jobs, &mut timer)?;
            let stability = match &setup.action {
                Some(a) => per_block(opts.jobs, m.blocks.len(), |i| Ok(Some(block_is_u_stable(&m.blocks[i], &m.g_table, a)?)))?,
                None => vec![None; m.blocks.len()],
            };
            timer.lap("stability");
            let passed = stability.iter().flatten().all(|s| s.stable);
            let blocks = m
                .blocks
                .iter()
                .zip(m.matches)
                .zip(stability)
                .map(|((b, matched), stability)| BlockEntry {
                    index: b.index,
                    members: b.members.clone(),
                    degrees: b.members.iter().map(|&j| m.g_table.degrees[j]).collect(),
                    idempotent: labelled(group, &b.idempotent),
                    fusion: b.fusion.clone(),
                    matched,
                    stability,
                })
                .collect();
            let result = BlocksResult {
                group_order: group.order(),
                quotient_order: m.pi.target().order(),
                kernel: m.pi.kernel().iter().map(|&k| group.label(k).to_string()).collect(),
                irreducibles: m.g_table.degrees.clone(),
                blocks,
            };
            (passed, to_value(&result))
        }
        Command::Transfer => {
            let action = needs_action(&setup, command)?;
            let m = match_all(&scenario, &setup, &spectral, opts.jobs, &mut timer)?;
            let entries = per_block(opts.jobs, m.matches.len(), |i| {
                let r = &m.matches[i];
                Ok(TransferEntry {
                    index: r.block,
                    candidate: r.candidate.clone(),
                    members: r.members.clone(),
                    bijection: r.bijection.clone(),
                    alpha_e: r.alpha.alpha_e.clone(),
                    c_prime: transfer_parameters(r, &setup.c, action)?,
                })
            })?;
            timer.lap("transfer");
            (true, to_value(&entries))
        }
        Command::Verify => {
            let action = needs_action(&setup, command)?;
            let m = match_all(&scenario, &setup, &spectral, opts.jobs, &mut timer)?;
            let entries = per_block(opts.jobs, m.matches.len(), |i| {
                let r = &m.matches[i];
                let c_prime = transfer_parameters(r, &setup.c, action)?;
                let morita = verify_morita(r, &m.g_table, &setup.c, &c_prime, None)?;
                let mut every = true;
                for f in &r.all_bijections {
                    let other = r.with_bijection(&m.g_table, f)?;
                    let cp = transfer_parameters(&other, &setup.c, action)?;
                    every &= verify_morita(&other, &m.g_table, &setup.c, &cp, None)?.passed;
                }
                Ok(VerifyEntry {
                    index: r.block,
                    candidate: r.candidate.clone(),
                    c_prime,
                    morita,
                    bijections_checked: r.all_bijections.len(),
                    every_bijection_passes: every,
                })
            })?;
            timer.lap("verify");
            let passed = entries.iter().all(|e| e.morita.passed && e.every_bijection_passes);
            (passed, to_value(&entries))
        }
        Command::Pbw => {
            let action = needs_action(&setup, command)?;
            let reflections = symplectic_reflections(action, &setup.psi)?;
            let outcome = pbw_diamond_check(action, &setup.psi, &setup.c, None)?;
            timer.lap("pbw");
            let result = PbwResult {
                dimension: action.dimension(),
                reflection_classes: reflections
                    .classes
                    .iter()
                    .map(|c| ClassEntry { class: c.class, label: c.label.clone(), size: c.size })
                    .collect(),
                non_regular_reflections: reflections.non_regular.iter().map(|&g| group.label(g).to_string()).collect(),
                parameter: setup
                    .c
                    .support()
                    .map(|(g, v)| ParameterEntry { element: group.label(g).to_string(), value: v.clone() })
                    .collect(),
                outcome,
            };
            (result.outcome.passed, to_value(&result))
        }
    };

    Ok(Report {
        command: command.as_str().to_string(),
        scenario: source.name.clone(),
        scenario_sha256: sha256_hex(source.text.as_bytes()),
        seed: spectral.seed,
        tolerance: spectral.tolerance,
        inputs: to_value(&scenario),
        passed,
        exact: true,
        results,
        timings: timer.finish(),
    })
}
