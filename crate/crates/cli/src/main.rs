use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use asp_core::analysis::{self, build_dependency_graph};
use asp_core::exec::Execution;
use asp_core::ground::{GroundingMode, UniverseBounds};
use asp_core::lexer::{tokenize_with, LexOptions};
use asp_core::pipeline::{self, Config};
use asp_core::rewrite;
use asp_core::solve::{self, QueryAnswer, DEFAULT_BRUTE_FORCE_LIMIT};
use asp_core::syntax::{parse_program_with, pretty_print, ParseOptions};
use asp_core::{Error, ExitStatus};
use clap::{Args, Parser, Subcommand};

const STANDARD: &str = "ASP-Core-2";

#[derive(Parser, Debug)]
#[command(name = "aspcore", about = "Parse, check, ground and solve ASP-Core-2 programs")]
#[command(disable_version_flag = true)]
struct Cli {
    /// Print the implemented language revision.
    #[arg(long)]
    version: bool,

    /// Accept auxiliary names (`__aux_...`), as in `ground` and `check --dump-core` output.
    #[arg(long, global = true)]
    allow_aux: bool,

    /// Run every stage on the calling thread.
    #[arg(long, global = true)]
    sequential: bool,

    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse and print the program in canonical form.
    Parse {
        input: Option<PathBuf>,
        /// Print the syntax tree as JSON instead.
        #[arg(long)]
        ast: bool,
        /// Print one token per line.
        #[arg(long)]
        dump_tokens: bool,
    },
    /// Run the static checks.
    Check {
        input: Option<PathBuf>,
        /// Print the desugared core program.
        #[arg(long)]
        dump_core: bool,
        /// Print the predicate dependency graph.
        #[arg(long)]
        dump_graph: bool,
    },
    /// Print the ground program.
    Ground {
        input: Option<PathBuf>,
        #[command(flatten)]
        grounding: GroundingArgs,
    },
    /// Print answer sets, one per line.
    Solve {
        input: Option<PathBuf>,
        #[command(flatten)]
        grounding: GroundingArgs,
        #[command(flatten)]
        solving: SolvingArgs,
        /// Number of answer sets to print; 0 prints all.
        #[arg(long, default_value_t = 0)]
        models: usize,
        /// Print only optimal answer sets, each followed by its costs.
        #[arg(long)]
        opt: bool,
    },
    /// Answer the program's query under cautious reasoning.
    Query {
        input: Option<PathBuf>,
        #[command(flatten)]
        grounding: GroundingArgs,
        #[command(flatten)]
        solving: SolvingArgs,
    },
}

#[derive(Args, Debug)]
struct GroundingArgs {
    /// Largest absolute integer in the universe.
    #[arg(long, default_value_t = 1000)]
    max_int: u64,
    /// Deepest functional nesting in the universe.
    #[arg(long, default_value_t = 4)]
    max_nesting: usize,
    /// Enumerate every substitution over the bounded universe.
    #[arg(long)]
    naive: bool,
}

#[derive(Args, Debug)]
struct SolvingArgs {
    /// Largest candidate base for the exhaustive search (at most 63).
    #[arg(long, default_value_t = DEFAULT_BRUTE_FORCE_LIMIT)]
    brute_force_limit: usize,
}

struct Ctx {
    name: String,
    config: Config,
}

impl Ctx {
    fn new(cli: &Cli, input: &Option<PathBuf>) -> Self {
        let mut config = Config {
            parse: ParseOptions {
                rewritten: cli.allow_aux,
            },
            ..Config::default()
        };
        if cli.sequential {
            config.solve.exec = Execution::Sequential;
        }
        let name = match input {
            Some(p) if p.as_os_str() != "-" => p.display().to_string(),
            _ => "<stdin>".to_string(),
        };
        Ctx { name, config }
    }

    fn grounding(mut self, g: &GroundingArgs) -> Self {
        self.config.bounds = UniverseBounds::new(g.max_int, g.max_nesting);
        self.config.mode = if g.naive {
            GroundingMode::Naive
        } else {
            GroundingMode::Smart
        };
        self
    }

    fn solving(mut self, s: &SolvingArgs) -> Self {
        self.config.solve.brute_force_limit = s.brute_force_limit;
        self
    }

    fn warn(&self, warnings: &[String]) {
        for w in warnings {
            eprintln!("{}: warning: {w}", self.name);
        }
    }

    fn fail(&self, e: &Error) -> ExitStatus {
        match e {
            Error::Lex(e) => eprintln!("{}:{e}", self.name),
            Error::Parse(e) => eprintln!("{}:{e}", self.name),
            Error::Restriction(errors) => {
                for m in errors {
                    eprintln!("{}: error: {m}", self.name);
                }
            }
            _ => eprintln!("{}: error: {e}", self.name),
        }
        e.exit_status()
    }
}

fn read_input(input: &Option<PathBuf>) -> io::Result<String> {
    let mut text = String::new();
    match input {
        Some(p) if p.as_os_str() != "-" => text = std::fs::read_to_string(p)?,
        _ => {
            io::stdin().read_to_string(&mut text)?;
        }
    }
    Ok(text)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(ExitStatus::Usage.code() as u8)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    if cli.version {
        println!("{STANDARD}");
        return ExitCode::SUCCESS;
    }
    let Some(command) = &cli.command else {
        eprintln!("aspcore: a subcommand is required; see `aspcore --help`");
        return ExitCode::from(ExitStatus::Usage.code() as u8);
    };
    let input = match command {
        Command::Parse { input, .. }
        | Command::Check { input, .. }
        | Command::Ground { input, .. }
        | Command::Solve { input, .. }
        | Command::Query { input, .. } => input,
    };
    let text = match read_input(input) {
        Ok(t) => t,
        Err(e) => {
            let name = Ctx::new(&cli, input).name;
            eprintln!("{name}: error: cannot read input: {e}");
            return ExitCode::from(ExitStatus::Usage.code() as u8);
        }
    };
    let mut out = io::stdout().lock();
    let status = run(&cli, command, input, &text, &mut out);
    let _ = out.flush();
    ExitCode::from(status.code() as u8)
}

fn run(cli: &Cli, command: &Command, input: &Option<PathBuf>, text: &str, out: &mut impl Write) -> ExitStatus {
    let ctx = Ctx::new(cli, input);
    match command {
        Command::Parse {
            ast, dump_tokens, ..
        } => {
            if *dump_tokens {
                let lex = LexOptions {
                    allow_aux: cli.allow_aux,
                };
                match tokenize_with(text, lex) {
                    Ok(tokens) => {
                        for t in tokens {
                            let _ = writeln!(out, "{} {:?} {}", t.kind, t.text, t.span);
                        }
                    }
                    Err(e) => return ctx.fail(&e.into()),
                }
            }
            let program = match parse_program_with(text, ctx.config.parse) {
                Ok(p) => p,
                Err(e) => return ctx.fail(&e),
            };
            if *ast {
                let json = serde_json::to_string_pretty(&program).expect("syntax tree serializes");
                let _ = writeln!(out, "{json}");
            } else if !*dump_tokens {
                let _ = write!(out, "{}", pretty_print(&program));
            }
            ExitStatus::Success
        }
        Command::Check {
            dump_core,
            dump_graph,
            ..
        } => {
            let program = match parse_program_with(text, ctx.config.parse) {
                Ok(p) => p,
                Err(e) => return ctx.fail(&e),
            };
            let core = rewrite::desugar(&program);
            if *dump_core {
                let _ = write!(out, "{}", pretty_print(&core));
            }
            if *dump_graph {
                let _ = write!(out, "{}", build_dependency_graph(&core).dump());
            }
            let report = analysis::analyse(&program, &core, ctx.config.exec());
            ctx.warn(&report.warnings);
            if report.is_ok() {
                ExitStatus::Success
            } else {
                ctx.fail(&Error::Restriction(report.errors))
            }
        }
        Command::Ground { grounding, .. } => {
            let ctx = ctx.grounding(grounding);
            let ground = pipeline::load(text, &ctx.config).and_then(|checked| {
                ctx.warn(&checked.warnings);
                pipeline::ground(&checked, &ctx.config)
            });
            match ground {
                Ok(g) => {
                    let _ = write!(out, "{g}");
                    ExitStatus::Success
                }
                Err(e) => ctx.fail(&e),
            }
        }
        Command::Solve {
            grounding,
            solving,
            models,
            opt,
            ..
        } => {
            let ctx = ctx.grounding(grounding).solving(solving);
            let solution = match pipeline::solve_text(text, *opt, &ctx.config) {
                Ok(s) => s,
                Err(e) => return ctx.fail(&e),
            };
            ctx.warn(&solution.warnings);
            if solution.answer_sets.is_empty() {
                eprintln!("{}: no answer sets", ctx.name);
                return ExitStatus::NoAnswerSets;
            }
            let limit = if *models == 0 { usize::MAX } else { *models };
            for (i, set) in solution.answer_sets.iter().enumerate().take(limit) {
                let _ = writeln!(out, "{}", solve::format_interpretation(set));
                if *opt {
                    let costs = &solution.costs[i];
                    let parts: Vec<String> = solution
                        .levels
                        .iter()
                        .map(|l| format!("{l}={}", costs.at(l)))
                        .collect();
                    let _ = writeln!(out, "COSTS {}", parts.join(" ").trim_end());
                }
            }
            ExitStatus::Success
        }
        Command::Query {
            grounding, solving, ..
        } => {
            let ctx = ctx.grounding(grounding).solving(solving);
            let answer = pipeline::load(text, &ctx.config).and_then(|checked| {
                ctx.warn(&checked.warnings);
                pipeline::query(&checked, &ctx.config)
            });
            match answer {
                Ok(Some(answer)) => {
                    let _ = write!(out, "{answer}");
                    if answer == QueryAnswer::Inconsistent {
                        ExitStatus::NoAnswerSets
                    } else {
                        ExitStatus::Success
                    }
                }
                Ok(None) => {
                    eprintln!("{}: error: the program has no query", ctx.name);
                    ExitStatus::Usage
                }
                Err(e) => ctx.fail(&e),
            }
        }
    }
}
