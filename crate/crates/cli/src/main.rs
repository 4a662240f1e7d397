mod output;

use std::fs;
use std::io::{self, BufRead, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use vwspace::cnfspace::{
    adjacency_graph, check_concentration, degree_stats, gen_random_cnf, parse_pcr_trace, parse_res_trace, tr_encode,
    verify_pcr_trace, verify_res_trace, Cnf, Field, Gf2, Polynomial, SpaceReport,
};
use vwspace::covergame::{
    check_budget, exhaustive_game, init_cover, min_s, parse_user_move, play, verify_transcript, Adversary, GameState,
    GreedyDegreeAdversary, RandomAdversary, Transcript,
};
use vwspace::graph::{find_vw_cover, is_expander, BipartiteGraph};
use vwspace::hall::{
    amplify, check_gadget, check_hall_hypotheses, counterexample, discharge_audit, find_2path_cover, find_base_hypergraph,
    find_gadget, hall_verify, Hypergraph,
};
use vwspace::rational::{format_rational, parse_rational};
use vwspace::strategy::{
    build_certificate, check_k_winning, check_rfree, extract_strategy, to_rfree, verify_certificate, Certificate,
};
use vwspace::{Caps, Error, Rational};

use output::{Format, Out};

#[derive(Parser, Debug, Clone)]
#[command(name = "vwspace", version, about = "VW-matchings, the cover game and space certificates for 3-CNFs")]
struct Cli {
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Search caps, e.g. `members=500000,expander_size=24`.
    #[arg(long, global = true, value_parser = parse_caps)]
    caps: Option<Caps>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug, Clone)]
enum Command {
    /// Random 3-CNF in DIMACS form.
    Gen {
        #[arg(short = 'n', long)]
        n: usize,
        /// Clause density as a rational, e.g. `6` or `17/4`.
        #[arg(short = 'd', long, default_value = "6")]
        delta: String,
        /// Overrides --seed.
        #[arg(short = 's')]
        local_seed: Option<u64>,
        #[arg(short = 'o', long)]
        out: Option<PathBuf>,
    },
    /// Adjacency graph of a CNF (clauses on the left, variables on the right).
    Graph {
        cnf: PathBuf,
        #[arg(short = 'o', long)]
        out: Option<PathBuf>,
    },
    /// Tests (s, delta)-expansion of a graph file.
    Expander {
        graph: PathBuf,
        #[arg(long)]
        s: usize,
        #[arg(long, default_value = "95/48")]
        delta: String,
    },
    /// Searches for a VW-matching covering the given left vertices.
    Vwcover {
        graph: PathBuf,
        /// Left vertices to cover; all of them when omitted.
        #[arg(long, value_delimiter = ',')]
        targets: Option<Vec<usize>>,
        #[arg(long, value_delimiter = ',')]
        ban_left: Vec<usize>,
        #[arg(long, value_delimiter = ',')]
        ban_right: Vec<usize>,
    },
    /// The (2-eps)-Hall criterion: exhaustive check, counterexample, gadget, audit.
    Hall {
        #[command(subcommand)]
        mode: HallMode,
    },
    /// The cover game.
    Covergame {
        #[command(subcommand)]
        mode: GameMode,
    },
    /// Extracts, checks and serializes a k-winning certificate.
    Certify(CertifyArgs),
    /// Verifies a Resolution or PCR trace and reports its space.
    Space {
        cnf: PathBuf,
        trace: PathBuf,
        #[arg(long, value_enum, default_value_t = System::Res)]
        system: System,
        /// Coefficient field for PCR.
        #[arg(long, value_enum, default_value_t = FieldChoice::Q)]
        field: FieldChoice,
    },
    /// Degree table |S_d| and the concentration condition.
    Stats {
        cnf: PathBuf,
        #[arg(long, default_value = "1/24")]
        epsilon: String,
        /// The constant c in 72d/eps (|S_d| + d) + 1 <= c n.
        #[arg(long, default_value = "1")]
        c: String,
    },
}

#[derive(Subcommand, Debug, Clone)]
enum HallMode {
    /// Checks every graph with at most --max-left left vertices.
    Verify {
        #[arg(long, default_value_t = 6)]
        max_left: usize,
        #[arg(long, default_value = "1/24")]
        epsilon: String,
    },
    /// Hypergraph meeting the hypotheses whose full edge set is uncoverable.
    Counterexample {
        #[arg(long)]
        epsilon: String,
        #[arg(short = 'o', long)]
        out: Option<PathBuf>,
    },
    /// The gadget and the base hypergraph amplified n times.
    Gadget {
        #[arg(short = 'n', default_value_t = 1)]
        n: usize,
    },
    /// Discharging audit of a hypergraph file.
    Audit {
        hypergraph: PathBuf,
        #[arg(long, default_value = "1/24")]
        epsilon: String,
    },
}

#[derive(Args, Debug, Clone)]
struct GameParams {
    graph: PathBuf,
    #[arg(long, default_value = "1/24")]
    epsilon: String,
    /// Degree threshold D; the maximum right degree when omitted.
    #[arg(long = "degree")]
    d: Option<usize>,
    /// Size bound s; the least admissible value when omitted.
    #[arg(long)]
    s: Option<usize>,
}

#[derive(Subcommand, Debug, Clone)]
enum GameMode {
    /// Plays Cover against an adversary and writes the transcript.
    Play {
        #[command(flatten)]
        params: GameParams,
        #[arg(long, value_enum, default_value_t = AdversaryChoice::Random)]
        adversary: AdversaryChoice,
        /// Overrides mu = floor(eps s / (144 D)).
        #[arg(long)]
        mu: Option<usize>,
        #[arg(long, default_value_t = 50)]
        max_moves: usize,
        /// Reads Choose's moves from standard input.
        #[arg(long)]
        interactive: bool,
        #[arg(short = 'o', long)]
        out: Option<PathBuf>,
    },
    /// Replays a transcript against the rules.
    Verify {
        graph: PathBuf,
        transcript: PathBuf,
        /// Defaults to the mu recorded in the transcript.
        #[arg(long)]
        mu: Option<usize>,
    },
}

#[derive(Args, Debug, Clone)]
struct CertifyArgs {
    cnf: PathBuf,
    #[arg(short = 'k', long, default_value_t = 2)]
    k: usize,
    #[arg(long, default_value = "1/24")]
    epsilon: String,
    #[arg(long = "degree")]
    d: Option<usize>,
    #[arg(long)]
    s: Option<usize>,
    /// Checks an existing certificate instead of writing one.
    #[arg(long)]
    verify: Option<PathBuf>,
    #[arg(short = 'o', long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum AdversaryChoice {
    Random,
    Greedy,
    Exhaustive,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum System {
    Res,
    Pcr,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FieldChoice {
    Q,
    Gf2,
}

/// Outcome of a command that ran to completion.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Verdict {
    Yes,
    No,
}

fn verdict(ok: bool) -> Verdict {
    if ok {
        Verdict::Yes
    } else {
        Verdict::No
    }
}

fn parse_caps(text: &str) -> Result<Caps, String> {
    let mut caps = Caps::default();
    for item in text.split(',').filter(|s| !s.is_empty()) {
        let (k, v) = item.split_once('=').ok_or_else(|| format!("expected key=value, got {item:?}"))?;
        let v: usize = v.trim().parse().map_err(|_| format!("bad value in {item:?}"))?;
        match k.trim() {
            "cover_targets" => caps.cover_targets = v,
            "expander_size" => caps.expander_size = v,
            "property_subsets" => caps.property_subsets = v,
            "hyper_edges" => caps.hyper_edges = v,
            "members" => caps.members = v,
            other => return Err(format!("unknown cap {other:?}")),
        }
    }
    Ok(caps)
}

fn rational(text: &str) -> Result<Rational, Error> {
    parse_rational(text)
}

fn read(path: &Path) -> Result<String, Error> {
    fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })
}

fn write_file(path: &Path, text: &str) -> Result<(), Error> {
    fs::write(path, text).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })
}

fn read_cnf(path: &Path) -> Result<Cnf, Error> {
    Cnf::parse_dimacs(&read(path)?)
}

fn read_graph(path: &Path) -> Result<BipartiteGraph, Error> {
    BipartiteGraph::parse_text(&read(path)?)
}

/// Machine-readable file output: provenance as `c` comment lines.
fn emit_file(out: &Out, path: Option<&Path>, body: &str) -> Result<(), Error> {
    let text = format!("{}{body}", out.comment_header("c"));
    match path {
        Some(p) => write_file(p, &text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// The parsed command line minus output paths: where a result is written
/// does not change it.
fn config_key(cli: &Cli) -> Cli {
    let mut c = cli.clone();
    match &mut c.command {
        Command::Gen { out, .. } | Command::Graph { out, .. } => *out = None,
        Command::Hall {
            mode: HallMode::Counterexample { out, .. },
        } => *out = None,
        Command::Covergame {
            mode: GameMode::Play { out, .. },
        } => *out = None,
        Command::Certify(a) => a.out = None,
        _ => {}
    }
    c
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Hypotheses(_) => 1,
        Error::Parse { .. } | Error::Invalid(_) | Error::Io { .. } | Error::GameRule(_) => 2,
        Error::ResourceCap { .. } => 3,
        Error::Inconsistency(_) => 4,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = Out::new(&config_key(&cli), cli.seed, cli.format);
    let caps = cli.caps.clone().unwrap_or_default();
    match run(&cli, &out, &caps) {
        Ok(Verdict::Yes) => ExitCode::SUCCESS,
        Ok(Verdict::No) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn run(cli: &Cli, out: &Out, caps: &Caps) -> Result<Verdict, Error> {
    match &cli.command {
        Command::Gen {
            n,
            delta,
            local_seed,
            out: path,
        } => {
            let seed = local_seed.unwrap_or(cli.seed);
            let out = out.with_seed(seed);
            let phi = gen_random_cnf(*n, &rational(delta)?, seed)?;
            emit_file(&out, path.as_deref(), &phi.to_dimacs())?;
            Ok(Verdict::Yes)
        }
        Command::Graph { cnf, out: path } => {
            let g = adjacency_graph(&read_cnf(cnf)?);
            emit_file(out, path.as_deref(), &g.to_text())?;
            Ok(Verdict::Yes)
        }
        Command::Expander { graph, s, delta } => cmd_expander(out, caps, graph, *s, delta),
        Command::Vwcover {
            graph,
            targets,
            ban_left,
            ban_right,
        } => cmd_vwcover(out, caps, graph, targets.as_deref(), ban_left, ban_right),
        Command::Hall { mode } => cmd_hall(out, caps, mode),
        Command::Covergame { mode } => cmd_covergame(out, caps, cli.seed, mode),
        Command::Certify(args) => cmd_certify(out, caps, args),
        Command::Space {
            cnf,
            trace,
            system,
            field,
        } => cmd_space(out, cnf, trace, *system, *field),
        Command::Stats { cnf, epsilon, c } => cmd_stats(out, cnf, epsilon, c),
    }
}

fn cmd_expander(out: &Out, caps: &Caps, graph: &Path, s: usize, delta: &str) -> Result<Verdict, Error> {
    let g = read_graph(graph)?;
    let delta = rational(delta)?;
    let r = is_expander(&g, s, &delta, caps)?;
    let witness = r.witness.as_ref().map(|w| {
        let n = g.neighborhood(w).len();
        let ls: Vec<String> = w.iter().map(|l| format!("L {l}")).collect();
        (ls.join(" "), n)
    });
    match out.format {
        Format::Text => {
            let mut body = format!(
                "expander: {}\nsubset sizes checked: 1..{}\ndelta: {}\n",
                if r.holds { "yes" } else { "no" },
                r.checked_size,
                format_rational(&delta)
            );
            if let Some((w, n)) = &witness {
                body.push_str(&format!("witness: {w} (|N| = {n})\n"));
            }
            out.print_text(&body);
        }
        Format::Csv => out.print_csv(
            &["expander", "checked_size", "delta", "witness", "witness_neighbourhood"],
            &[vec![
                r.holds.to_string(),
                r.checked_size.to_string(),
                format_rational(&delta),
                witness.as_ref().map_or(String::new(), |w| w.0.clone()),
                witness.as_ref().map_or(String::new(), |w| w.1.to_string()),
            ]],
        ),
    }
    Ok(verdict(r.holds))
}

fn cmd_vwcover(
    out: &Out,
    caps: &Caps,
    graph: &Path,
    targets: Option<&[usize]>,
    ban_left: &[usize],
    ban_right: &[usize],
) -> Result<Verdict, Error> {
    let g = read_graph(graph)?;
    let all: Vec<usize> = (0..g.left_count()).collect();
    let targets = targets.unwrap_or(&all);
    let found = find_vw_cover(&g, targets, ban_left, ban_right, caps)?;
    match out.format {
        Format::Text => {
            let body = match &found {
                Some(f) => {
                    let mut s = format!("cover: found ({} components)\n", f.len());
                    for c in &f.components {
                        s.push_str(&format!("f {}\n", c.to_text()));
                    }
                    s
                }
                None => "cover: none\n".to_string(),
            };
            out.print_text(&body);
        }
        Format::Csv => {
            let rows: Vec<Vec<String>> = found
                .iter()
                .flat_map(|f| f.components.iter())
                .enumerate()
                .map(|(i, c)| vec![i.to_string(), c.to_text()])
                .collect();
            out.print_csv(&["component", "path"], &rows);
        }
    }
    Ok(verdict(found.is_some()))
}

fn cmd_hall(out: &Out, caps: &Caps, mode: &HallMode) -> Result<Verdict, Error> {
    match mode {
        HallMode::Verify { max_left, epsilon } => {
            let eps = rational(epsilon)?;
            let r = hall_verify(*max_left, &eps);
            match out.format {
                Format::Text => {
                    let mut body = format!("{} counterexamples, {} graphs checked\n", r.counterexamples.len(), r.checked);
                    for h in &r.counterexamples {
                        body.push_str(&format!("counterexample:\n{}", h.to_text()));
                    }
                    out.print_text(&body);
                }
                Format::Csv => out.print_csv(
                    &["max_left", "epsilon", "checked", "counterexamples"],
                    &[vec![
                        max_left.to_string(),
                        format_rational(&eps),
                        r.checked.to_string(),
                        r.counterexamples.len().to_string(),
                    ]],
                ),
            }
            if r.counterexamples.is_empty() {
                Ok(Verdict::Yes)
            } else {
                Err(Error::Inconsistency(format!("{} Hall counterexamples", r.counterexamples.len())))
            }
        }
        HallMode::Counterexample { epsilon, out: path } => {
            let eps = rational(epsilon)?;
            let cx = counterexample(&eps)?;
            let h = &cx.hypergraph;
            let g = h.incidence_graph();
            let hyp = check_hall_hypotheses(&g, &eps);
            let big = Caps {
                hyper_edges: usize::MAX,
                ..caps.clone()
            };
            let all: Vec<usize> = (0..h.edge_count()).collect();
            let full = find_2path_cover(h, &all, &[], &big)?.is_some();
            let mut proper = true;
            for skip in 0..h.edge_count() {
                let rest: Vec<usize> = all.iter().copied().filter(|&e| e != skip).collect();
                proper &= find_2path_cover(h, &rest, &[], &big)?.is_some();
            }
            let summary = format!(
                "amplifications: {}\nvertices: {}\nedges: {}\nhypotheses:\n{hyp}\nfull edge set coverable: {}\nevery proper subset coverable: {}\n",
                cx.amplifications,
                h.vertex_count(),
                h.edge_count(),
                if full { "yes" } else { "no" },
                if proper { "yes" } else { "no" },
            );
            match path {
                Some(p) => {
                    emit_file(out, Some(p), &h.to_text())?;
                    out.print_text(&summary);
                }
                None => out.print_text(&format!("{summary}{}", h.to_text())),
            }
            if hyp.all_pass && !full && proper {
                Ok(Verdict::Yes)
            } else {
                Err(Error::Inconsistency("amplified hypergraph is not a witness".into()))
            }
        }
        HallMode::Gadget { n } => {
            let gadget = find_gadget()?;
            let check = check_gadget(&gadget);
            let base = find_base_hypergraph()?;
            let amp = amplify(&base, &gadget, *n)?;
            let body = format!(
                "gadget: {} vertices, {} edges, x = {}\ngadget interface: {}\namplified n = {n}: {} vertices, {} edges\n{}",
                gadget.hypergraph.vertex_count(),
                gadget.hypergraph.edge_count(),
                gadget.x,
                if check.ok() { "ok" } else { "FAIL" },
                amp.vertex_count(),
                amp.edge_count(),
                amp.to_text()
            );
            out.print_text(&body);
            Ok(verdict(check.ok()))
        }
        HallMode::Audit { hypergraph, epsilon } => {
            let h = Hypergraph::parse_text(&read(hypergraph)?)?;
            let r = discharge_audit(&h, &rational(epsilon)?)?;
            out.print_text(&format!("{r}\n"));
            Ok(Verdict::Yes)
        }
    }
}

fn game_state(caps: &Caps, p: &GameParams) -> Result<(BipartiteGraph, vwspace::covergame::CoverStrategyState), Error> {
    let g = read_graph(&p.graph)?;
    let eps = rational(&p.epsilon)?;
    let d = p.d.unwrap_or_else(|| g.max_right_degree().max(1));
    let s = p.s.unwrap_or_else(|| min_s(&g, &eps, d));
    let st = init_cover(&g, &eps, d, s, caps)?;
    Ok((g, st))
}

fn cmd_covergame(out: &Out, caps: &Caps, seed: u64, mode: &GameMode) -> Result<Verdict, Error> {
    match mode {
        GameMode::Play {
            params,
            adversary,
            mu,
            max_moves,
            interactive,
            out: path,
        } => {
            let (g, st) = match game_state(caps, params) {
                Ok(x) => x,
                Err(Error::Hypotheses(items)) => {
                    out.print_text(&format!("rejected: hypotheses not met\n{items}\n"));
                    return Ok(Verdict::No);
                }
                Err(e) => return Err(e),
            };
            let (eps, s) = (st.epsilon.clone(), st.s);
            let mut state = GameState::new(st, *mu);
            if matches!(adversary, AdversaryChoice::Exhaustive) && !interactive {
                let r = exhaustive_game(&state.strategy, state.mu)?;
                out.print_text(&format!(
                    "mu: {} ({})\nstates: {}\nchallenges: {}\nremovals: {}\n|Pi| <= 12d: {}\nbudget: {}\ncover wins: yes\n",
                    state.mu, state.mu_source, r.states, r.challenges, r.removals, r.max_pi_ratio_ok, r.budget_ok
                ));
                return Ok(verdict(r.max_pi_ratio_ok && r.budget_ok));
            }
            let t = if *interactive {
                interactive_game(&mut state)?
            } else {
                let mut adv: Box<dyn Adversary> = match adversary {
                    AdversaryChoice::Greedy => Box::new(GreedyDegreeAdversary),
                    _ => Box::new(RandomAdversary::new(seed)),
                };
                play(&mut state, adv.as_mut(), *max_moves)?
            };
            let rep = verify_transcript(&g, &t, t.mu);
            let budget = check_budget(&t, &eps, s);
            let pi_ok = state.pi_log.iter().all(|&(p, d)| p <= 12 * d);
            let mut summary = format!(
                "mu: {} ({})\nmoves: {}\nfinal F: {} components\ntranscript verified: {}\nbudget: {}\n|Pi| <= 12d: {}\n",
                t.mu,
                t.mu_source,
                t.moves.len(),
                state.f.len(),
                if rep.accepted() { "yes" } else { "no" },
                budget.map_or("ok".to_string(), |i| format!("violated at move {i}")),
                if pi_ok { "yes" } else { "no" },
            );
            if let Some((i, why)) = &rep.error {
                summary.push_str(&format!("rejected at move {i}: {why}\n"));
            }
            match path {
                Some(p) => {
                    emit_file(out, Some(p), &t.to_text())?;
                    out.print_text(&summary);
                }
                None => out.print_text(&format!("{summary}{}", t.to_text())),
            }
            if !rep.accepted() || budget.is_some() || !pi_ok {
                return Err(Error::Inconsistency("Cover's play broke a game invariant".into()));
            }
            Ok(Verdict::Yes)
        }
        GameMode::Verify { graph, transcript, mu } => {
            let g = read_graph(graph)?;
            let t = Transcript::parse_text(&read(transcript)?)?;
            let mu = mu.unwrap_or(t.mu);
            let rep = verify_transcript(&g, &t, mu);
            let body = match &rep.error {
                None => format!("transcript: accepted ({} moves, mu {mu})\n", rep.moves),
                Some((i, why)) => format!("transcript: rejected at move {i}: {why}\n"),
            };
            out.print_text(&body);
            Ok(verdict(rep.accepted()))
        }
    }
}

fn interactive_game(state: &mut GameState) -> Result<Transcript, Error> {
    let stdin = io::stdin();
    let mut stdout = io::stdout();
    let prompt = |stdout: &mut io::Stdout| {
        let _ = write!(stdout, "> ");
        let _ = stdout.flush();
    };
    println!("moves: `L i`, `R j`, `remove k`, `quit`; mu = {}", state.mu);
    prompt(&mut stdout);
    for line in stdin.lock().lines() {
        let line = line.map_err(|source| Error::Io {
            path: "<stdin>".into(),
            source,
        })?;
        let line = line.trim();
        if line.is_empty() {
            prompt(&mut stdout);
            continue;
        }
        if line == "quit" || line == "q" {
            break;
        }
        let applied = parse_user_move(line).and_then(|mv| state.apply(mv).map(|_| ()));
        match applied {
            Ok(()) => {
                println!("F ({} components):", state.f.len());
                for (i, c) in state.f.components.iter().enumerate() {
                    println!("  {i}: {}", c.to_text());
                }
            }
            Err(e @ (Error::Parse { .. } | Error::GameRule(_) | Error::Invalid(_))) => println!("rejected: {e}"),
            Err(e) => return Err(e),
        }
        prompt(&mut stdout);
    }
    println!();
    Ok(state.transcript())
}

fn cmd_certify(out: &Out, caps: &Caps, a: &CertifyArgs) -> Result<Verdict, Error> {
    let phi = read_cnf(&a.cnf)?;
    if let Some(cert_path) = &a.verify {
        let cert = Certificate::parse_text(&read(cert_path)?)?;
        let rep = match verify_certificate(&phi, &cert, caps, caps.members) {
            Ok(r) => r,
            Err(Error::Hypotheses(items)) => {
                out.print_text(&format!("certificate: INVALID (parameters fail the hypotheses)\n{items}\n"));
                return Ok(Verdict::No);
            }
            Err(e) => return Err(e),
        };
        out.print_text(&format!("{rep}\n"));
        return Ok(verdict(rep.valid()));
    }
    let g = adjacency_graph(&phi);
    let eps = rational(&a.epsilon)?;
    let d = a.d.unwrap_or_else(|| g.max_right_degree().max(1));
    let s = a.s.unwrap_or_else(|| min_s(&g, &eps, d));
    let st = match init_cover(&g, &eps, d, s, caps) {
        Ok(st) => st,
        Err(Error::Hypotheses(items)) => {
            out.print_text(&format!("rejected: hypotheses not met\n{items}\n"));
            return Ok(Verdict::No);
        }
        Err(e) => return Err(e),
    };
    let strat = extract_strategy(&phi, st, a.k)?;
    let kwin = check_k_winning(&phi, &strat, a.k, caps.members)?;
    let r = a.k.saturating_sub(1);
    let rfree = check_rfree(&phi, &to_rfree(&strat, a.k, caps.members)?, r, caps.members)?;
    let cert = build_certificate(&strat, a.k, caps.members)?;
    if let Some(p) = &a.out {
        emit_file(out, Some(p), &cert.to_text())?;
    }
    let ok = kwin.holds() && rfree.holds();
    let mut body = format!("{kwin}\n{rfree}\n");
    if ok {
        body.push_str(&format!(
            "claimed: monomial space ≥ k/4 = {} (lower bound for k-winning strategies, not re-proved here)\n",
            format_rational(&Rational::new(a.k.into(), 4.into()))
        ));
        body.push_str(&format!(
            "claimed: total space ≥ r²/4 = {} with r = {r} (lower bound for r-free families, not re-proved here)\n",
            format_rational(&Rational::new((r * r).into(), 4.into()))
        ));
    }
    if a.out.is_none() {
        body.push_str(&cert.to_text());
    }
    out.print_text(&body);
    Ok(verdict(ok))
}

fn space_report<F: Field>(phi: &Cnf, trace: &str) -> Result<SpaceReport, Error> {
    let axioms: Vec<Polynomial<F>> = tr_encode::<F>(phi).into_iter().map(|a| a.poly).collect();
    Ok(verify_pcr_trace(&axioms, &parse_pcr_trace::<F>(trace)?))
}

fn cmd_space(out: &Out, cnf: &Path, trace: &Path, system: System, field: FieldChoice) -> Result<Verdict, Error> {
    let phi = read_cnf(cnf)?;
    let text = read(trace)?;
    let rep = match (system, field) {
        (System::Res, _) => verify_res_trace(&phi, &parse_res_trace(&text)?),
        (System::Pcr, FieldChoice::Q) => space_report::<Rational>(&phi, &text)?,
        (System::Pcr, FieldChoice::Gf2) => space_report::<Gf2>(&phi, &text)?,
    };
    match out.format {
        Format::Text => out.print_text(&format!("{rep}\n")),
        Format::Csv => out.print_csv(&SpaceReport::csv_header(), &[rep.csv_row().to_vec()]),
    }
    Ok(verdict(rep.accepted()))
}

fn cmd_stats(out: &Out, cnf: &Path, epsilon: &str, c: &str) -> Result<Verdict, Error> {
    let phi = read_cnf(cnf)?;
    let eps = rational(epsilon)?;
    let c = rational(c)?;
    let stats = degree_stats(&phi);
    let d_found = check_concentration(&phi, &eps, &c);
    let rows: Vec<Vec<String>> = (1..=stats.max_degree())
        .map(|d| vec![d.to_string(), stats.s(d).to_string()])
        .collect();
    match out.format {
        Format::Text => {
            let mut body = format!("variables {}\nclauses {}\nmax degree {}\n d  |S_d|\n", phi.variable_count, phi.clauses.len(), stats.max_degree());
            for r in &rows {
                body.push_str(&format!("{:>2}  {}\n", r[0], r[1]));
            }
            body.push_str(&match d_found {
                Some(d) => format!("concentration: holds from D = {d}\n"),
                None => "concentration: none\n".to_string(),
            });
            out.print_text(&body);
        }
        Format::Csv => out.print_csv(&["d", "s_d"], &rows),
    }
    Ok(verdict(d_found.is_some()))
}
