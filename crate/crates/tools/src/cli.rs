//! The `scdes` command line.
//!
//! Exit status is 0 on success, 1 when the answer is a negative verdict
//! (blocking, not controllable, empty supervisor, blocked run) and 2 for
//! usage, IO and parse errors. Diagnostics go to stderr.

use std::ffi::OsString;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use scdes_core::runtime::{simulate, ControlledSupervisor, FailureProfile, DEFAULT_MAX_STEPS};
use scdes_core::scenario::{self, ScenarioCatalog, SpecEncoding};
use scdes_core::{
    check_controllability, condat, is_nonblocking, meet, selfloop, supcon, sync_all, trim, Automaton,
    Blocking, Event, EventId,
};

use crate::aut::{parse_with, serialize, ParseOptions};
use crate::condat::{parse_condat, serialize_condat, CondatDocument};
use crate::dot::to_dot;
use crate::trace::{serialize_trace, stop_name};

#[derive(Debug, Parser)]
#[command(name = "scdes", version, about = "Supervisor synthesis for discrete-event systems")]
pub struct Cli {
    /// Accept events that only appear on `trans` lines, using parity controllability
    #[arg(long, global = true)]
    pub implicit_events: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Report size, alphabet and nonblocking status
    Info { file: PathBuf },
    /// Keep the states that are reachable and coreachable
    Trim {
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Product over a common alphabet, trimmed
    Meet {
        a: PathBuf,
        b: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Synchronous composition of two or more automata
    Sync {
        #[arg(num_args = 2.., required = true)]
        inputs: Vec<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Add self-loops on new events at every state
    Selfloop {
        input: PathBuf,
        /// Comma-separated `id` or `id:c` / `id:u`
        #[arg(long, value_delimiter = ',', value_parser = parse_event_spec, required = true)]
        events: Vec<Event>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Synthesize the supervisor for PLANT under SPEC
    Supcon {
        plant: PathBuf,
        spec: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Also write the disablement table
        #[arg(long)]
        condat: Option<PathBuf>,
    },
    /// Check CANDIDATE for controllability with respect to PLANT
    Controllable { plant: PathBuf, candidate: PathBuf },
    /// Graphviz rendering
    Dot {
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Built-in delivery scenario
    Scenario {
        #[command(subcommand)]
        command: ScenarioCommand,
    },
    /// Run a supervisor against the delivery scenario
    Simulate {
        #[arg(long)]
        supervisor: PathBuf,
        #[arg(long)]
        condat: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Per-step probability of the first robot failing
        #[arg(long = "fail-0", default_value_t = 0.0)]
        fail_0: f64,
        /// Per-step probability of the conveyor dropping the box
        #[arg(long = "fail-2", default_value_t = 0.0)]
        fail_2: f64,
        /// Per-step probability of the second robot failing
        #[arg(long = "fail-4", default_value_t = 0.0)]
        fail_4: f64,
        #[arg(long, default_value_t = DEFAULT_MAX_STEPS)]
        max_steps: usize,
        /// Each failure event fires at most this many times
        #[arg(long)]
        max_injections: Option<u32>,
        /// Trace file; the trace goes to stdout when omitted
        #[arg(long)]
        trace: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
pub enum ScenarioCommand {
    /// Write machines, requirements, plant, composite spec, supervisor and condat
    Emit {
        #[arg(long)]
        dir: PathBuf,
        #[arg(long, value_enum, default_value_t = Encoding::Tolerant)]
        encoding: Encoding,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Encoding {
    Literal,
    Tolerant,
}

impl From<Encoding> for SpecEncoding {
    fn from(e: Encoding) -> Self {
        match e {
            Encoding::Literal => SpecEncoding::Literal,
            Encoding::Tolerant => SpecEncoding::Tolerant,
        }
    }
}

fn parse_event_spec(s: &str) -> Result<Event, String> {
    let s = s.trim();
    let (id, flag) = match s.split_once(':') {
        Some((id, flag)) => (id, Some(flag)),
        None => (s, None),
    };
    let id: u32 = id.parse().map_err(|_| format!("bad event id `{id}`"))?;
    match flag {
        None => Ok(Event::new(id)),
        Some("c") => Ok(Event::with_controllability(id, true)),
        Some("u") => Ok(Event::with_controllability(id, false)),
        Some(other) => Err(format!("bad controllability flag `{other}`, expected c or u")),
    }
}

enum Outcome {
    Done,
    /// Negative answer; the message has already been reported.
    Verdict,
}

type CliResult = Result<Outcome, String>;

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(e.exit_code().clamp(0, 255) as u8);
        }
    };
    match execute(cli) {
        Ok(Outcome::Done) => ExitCode::SUCCESS,
        Ok(Outcome::Verdict) => ExitCode::from(1),
        Err(message) => {
            eprintln!("scdes: {message}");
            ExitCode::from(2)
        }
    }
}

fn execute(cli: Cli) -> CliResult {
    let options = ParseOptions { implicit_events: cli.implicit_events };
    let load = |path: &Path| load_automaton(path, options);
    match cli.command {
        Command::Info { file } => info(&load(&file)?),
        Command::Trim { input, output } => {
            emit(output.as_deref(), &serialize(&trim(&load(&input)?)))?;
            Ok(Outcome::Done)
        }
        Command::Meet { a, b, output } => {
            let g = meet(&load(&a)?, &load(&b)?).map_err(|e| e.to_string())?;
            emit(output.as_deref(), &serialize(&g))?;
            Ok(Outcome::Done)
        }
        Command::Sync { inputs, output } => {
            let parts = inputs.iter().map(|p| load(p)).collect::<Result<Vec<_>, _>>()?;
            let g = sync_all(&parts).map_err(|e| e.to_string())?;
            emit(output.as_deref(), &serialize(&g))?;
            Ok(Outcome::Done)
        }
        Command::Selfloop { input, events, output } => {
            let g = selfloop(&load(&input)?, &events).map_err(|e| e.to_string())?;
            emit(output.as_deref(), &serialize(&g))?;
            Ok(Outcome::Done)
        }
        Command::Supcon { plant, spec, output, condat: table } => {
            let plant = load(&plant)?;
            let sup = supcon(&plant, &load(&spec)?).map_err(|e| e.to_string())?;
            emit(output.as_deref(), &serialize(&sup))?;
            if let Some(path) = table {
                let data = condat(&plant, &sup).map_err(|e| e.to_string())?;
                let doc = CondatDocument {
                    name: sup.name().to_string(),
                    states: sup.state_count(),
                    data,
                };
                write_file(&path, &serialize_condat(&doc))?;
            }
            if sup.is_empty() {
                eprintln!("scdes: the specification cannot be enforced; the supervisor is empty");
                return Ok(Outcome::Verdict);
            }
            Ok(Outcome::Done)
        }
        Command::Controllable { plant, candidate } => {
            let verdict = check_controllability(&load(&plant)?, &load(&candidate)?)
                .map_err(|e| e.to_string())?;
            match verdict.counterexample {
                None => {
                    println!("controllable: yes");
                    Ok(Outcome::Done)
                }
                Some(cx) => {
                    println!("controllable: no");
                    println!("witness: {} then {}", word(&cx.prefix), cx.event);
                    Ok(Outcome::Verdict)
                }
            }
        }
        Command::Dot { input, output } => {
            emit(output.as_deref(), &to_dot(&load(&input)?))?;
            Ok(Outcome::Done)
        }
        Command::Scenario { command: ScenarioCommand::Emit { dir, encoding } } => {
            emit_scenario(&dir, encoding.into())
        }
        Command::Simulate {
            supervisor,
            condat: table,
            seed,
            fail_0,
            fail_2,
            fail_4,
            max_steps,
            max_injections,
            trace,
        } => {
            let sup = load(&supervisor)?;
            let doc = parse_condat(&read_file(&table)?).map_err(|e| format!("{}: {e}", table.display()))?;
            if doc.states != sup.state_count() {
                return Err(format!(
                    "{} is for {} states but the supervisor has {}",
                    table.display(),
                    doc.states,
                    sup.state_count()
                ));
            }
            let catalog = ScenarioCatalog::new();
            sup.alphabet()
                .ensure_same(&catalog.full_alphabet)
                .map_err(|e| format!("{} is not a scenario supervisor: {e}", supervisor.display()))?;
            let mut profile = [(0, fail_0), (2, fail_2), (4, fail_4)]
                .into_iter()
                .try_fold(FailureProfile::new(seed), |p, (e, prob)| p.with(EventId(e), prob))
                .map_err(|e| e.to_string())?;
            if let Some(cap) = max_injections {
                profile = profile.with_max_injections(cap);
            }
            let controlled = ControlledSupervisor::new(sup, doc.data);
            let outcome = simulate(&catalog, &controlled, &profile, max_steps).map_err(|e| e.to_string())?;
            let text = serialize_trace(&outcome, seed);
            match &trace {
                Some(path) => {
                    write_file(path, &text)?;
                    let s = &outcome.summary;
                    println!(
                        "delivered: {}, steps: {}, failures: {}, recovered: {}, stop: {}",
                        s.delivered,
                        s.steps,
                        s.failures,
                        s.failures_recovered,
                        stop_name(s.stop)
                    );
                }
                None => emit(None, &text)?,
            }
            if outcome.summary.blocked {
                eprintln!("scdes: run blocked after {} steps", outcome.summary.steps);
                return Ok(Outcome::Verdict);
            }
            Ok(Outcome::Done)
        }
    }
}

fn info(g: &Automaton) -> CliResult {
    let controllable = g.alphabet().controllable().count();
    println!("name: {}", g.name());
    println!("states: {}", g.state_count());
    println!("transitions: {}", g.transition_count());
    println!("marked: {}", g.marked().len());
    println!(
        "events: {} ({controllable} controllable, {} uncontrollable)",
        g.alphabet().len(),
        g.alphabet().len() - controllable
    );
    if g.is_empty() {
        println!("empty: yes");
    }
    match is_nonblocking(g) {
        Blocking::Nonblocking => {
            println!("nonblocking: yes");
            Ok(Outcome::Done)
        }
        Blocking::Blocking { witness } => {
            println!("nonblocking: no (state {witness} cannot reach a marked state)");
            Ok(Outcome::Verdict)
        }
    }
}

fn emit_scenario(dir: &Path, encoding: SpecEncoding) -> CliResult {
    fs::create_dir_all(dir).map_err(|e| format!("{}: {e}", dir.display()))?;
    let put = |file: &str, text: String| write_file(&dir.join(file), &text);
    for m in scenario::machines() {
        put(&format!("{}.aut", m.name()), serialize(&m))?;
    }
    for rule in scenario::spec_rules() {
        put(
            &format!("{}.aut", rule.name),
            serialize(&scenario::enablement_automaton(&rule, encoding)),
        )?;
    }
    put("plant.aut", serialize(&scenario::build_plant()))?;
    put("spec.aut", serialize(&scenario::build_composite_spec(encoding)))?;
    let (sup, data) = scenario::build_supervisor_with(encoding).map_err(|e| e.to_string())?;
    put("supervisor.aut", serialize(&sup))?;
    let doc = CondatDocument {
        name: sup.name().to_string(),
        states: sup.state_count(),
        data,
    };
    put("supervisor.condat", serialize_condat(&doc))?;
    Ok(Outcome::Done)
}

fn word(events: &[EventId]) -> String {
    if events.is_empty() {
        return "(empty string)".into();
    }
    events.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(" ")
}

fn read_file(path: &Path) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn load_automaton(path: &Path, options: ParseOptions) -> Result<Automaton, String> {
    parse_with(&read_file(path)?, options).map_err(|e| format!("{}: {e}", path.display()))
}

fn write_file(path: &Path, text: &str) -> Result<(), String> {
    fs::write(path, text).map_err(|e| format!("{}: {e}", path.display()))
}

fn emit(path: Option<&Path>, text: &str) -> Result<(), String> {
    match path {
        Some(p) => write_file(p, text),
        None => std::io::stdout()
            .lock()
            .write_all(text.as_bytes())
            .map_err(|e| format!("stdout: {e}")),
    }
}
