use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use votelab::experiments::{run_experiment, ExperimentConfig};
use votelab::greedy::{greedy_dodgson, semirandom_dodgson_decision, Decision};
use votelab::io;
use votelab::models::{ModelSpec, ParameterProfile};
use votelab::reductions::{
    algorithm2_efas, efas_bruteforce, exact_kemeny_decider, mcgarvey_profile, x3c_to_dodgson, Answer,
    EfasThresholds, MCGARVEY_MULTIPLIER,
};
use votelab::rules::{
    best_committee, committee_score, dodgson_score_exact, kemeny_best, kemeny_scores, young_score_exact, Committee,
    CommitteeRule, Dpsf,
};
use votelab::{Budget, Profile, WeightedProfile};

use crate::output::render;
use crate::{Cli, Command, ExperimentArgs, ReduceCommand, Rule, RuleArgs, SampleArgs, BUDGET_ENV, EXIT_VERDICT};

pub fn run(cli: &Cli) -> Result<u8> {
    let budget = budget(cli.budget)?;
    let (value, code) = match &cli.command {
        Command::Score(s) => (score(s.rule, &s.args, &budget)?, 0),
        Command::GreedyDodgson(args) => (score(Rule::GreedyDodgson, args, &budget)?, 0),
        Command::Sample(args) => (sample(args)?, 0),
        Command::Reduce(cmd) => (reduce(cmd, &budget)?, 0),
        Command::Experiment(args) => experiment(args, &budget)?,
    };
    println!("{}", render(&value, cli.pretty));
    Ok(code)
}

fn budget(flag: Option<u64>) -> Result<Budget> {
    let states = match flag {
        Some(b) => Some(b),
        None => match std::env::var(BUDGET_ENV) {
            Ok(v) => Some(v.trim().parse().with_context(|| format!("{BUDGET_ENV}={v:?} is not a number"))?),
            Err(_) => None,
        },
    };
    Ok(states.map_or_else(Budget::default, |s| Budget::default().with_max_states(s)))
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn write(path: &Path, body: &str) -> Result<()> {
    fs::write(path, body).with_context(|| format!("cannot write {}", path.display()))
}

fn read_profile(path: &Path) -> Result<Profile> {
    io::parse_profile(&read(path)?).with_context(|| format!("in {}", path.display()))
}

fn sidecar(path: &Path, suffix: &str) -> PathBuf {
    let mut name = path.as_os_str().to_owned();
    name.push(suffix);
    PathBuf::from(name)
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn score(rule: Rule, args: &RuleArgs, budget: &Budget) -> Result<Value> {
    let p = read_profile(&args.profile)?;
    let alternatives: Vec<usize> = match args.alt {
        Some(a) => {
            p.check_alternative(a)?;
            vec![a]
        }
        None => (0..p.m()).collect(),
    };
    match rule {
        Rule::Dodgson | Rule::Young => {
            let f = |a| match rule {
                Rule::Dodgson => dodgson_score_exact(&p, a, budget),
                _ => young_score_exact(&p, a, budget),
            };
            let scores = alternatives.iter().map(|&a| f(a)).collect::<votelab::Result<Vec<_>>>()?;
            // Dodgson: lower is better; Young: higher is better.
            let decide = |s: u64| match (rule, args.threshold) {
                (_, None) => None,
                (Rule::Dodgson, Some(t)) => Some(t >= 0 && s <= t as u64),
                (_, Some(t)) => Some(t <= 0 || s >= t as u64),
            };
            Ok(per_alternative(args.alt, &alternatives, &scores, decide))
        }
        Rule::Kemeny => {
            if let Some(a) = args.alt {
                let s = kemeny_scores(&p, budget)?[a];
                let mut v = json!({"alternative": a, "score": s});
                if let Some(t) = args.threshold {
                    v["decision"] = json!(yes_no(t >= 0 && s <= t as u64));
                }
                return Ok(v);
            }
            let (ranking, min) = kemeny_best(&p, budget)?;
            let mut v = json!({"ranking": ranking.order(), "min_score": min, "scores": kemeny_scores(&p, budget)?});
            if let Some(t) = args.threshold {
                v["decision"] = json!(yes_no(t >= 0 && min <= t as u64));
            }
            Ok(v)
        }
        Rule::Cc | Rule::Monroe => {
            let rule = if rule == Rule::Cc { CommitteeRule::ChamberlinCourant } else { CommitteeRule::Monroe };
            let alpha = Dpsf::NegatedPosition;
            let (committee, s) = match (&args.committee, args.k) {
                (Some(members), k) => {
                    let c = Committee::new(members.clone())?;
                    if k.is_some_and(|k| k != c.k()) {
                        bail!("--k {} disagrees with a committee of {} members", k.unwrap(), c.k());
                    }
                    let s = committee_score(&p, &c, rule, &alpha, args.aggregator)?;
                    (c, s)
                }
                (None, Some(k)) => best_committee(&p, k, rule, &alpha, args.aggregator, budget)?,
                (None, None) => bail!("committee rules need --k or --committee"),
            };
            let mut v = json!({"committee": committee.members(), "score": s});
            if let Some(t) = args.threshold {
                v["decision"] = json!(yes_no(s >= t));
            }
            Ok(v)
        }
        Rule::GreedyDodgson => {
            let results = alternatives
                .iter()
                .map(|&a| {
                    let g = greedy_dodgson(&p, a)?;
                    let mut v = json!({"alternative": a, "score": g.score, "certainty": g.certainty});
                    if let Some(t) = args.threshold {
                        let d = semirandom_dodgson_decision(&p, a, t)?;
                        v["decision"] = json!(match d {
                            Decision::Yes => "yes",
                            Decision::No => "no",
                            Decision::Failure => "failure",
                        });
                    }
                    Ok(v)
                })
                .collect::<votelab::Result<Vec<_>>>()?;
            Ok(if args.alt.is_some() { results[0].clone() } else { json!({"results": results}) })
        }
    }
}

fn per_alternative(
    alt: Option<usize>,
    alternatives: &[usize],
    scores: &[u64],
    decide: impl Fn(u64) -> Option<bool>,
) -> Value {
    let entry = |a: usize, s: u64| {
        let mut v = json!({"alternative": a, "score": s});
        if let Some(d) = decide(s) {
            v["decision"] = json!(yes_no(d));
        }
        v
    };
    if alt.is_some() {
        entry(alternatives[0], scores[0])
    } else {
        json!({"results": alternatives.iter().zip(scores).map(|(&a, &s)| entry(a, s)).collect::<Vec<_>>()})
    }
}

fn sample(args: &SampleArgs) -> Result<Value> {
    let model_text = if args.model.trim_start().starts_with('{') {
        args.model.clone()
    } else {
        read(Path::new(&args.model))?
    };
    let spec: ModelSpec = serde_json::from_str(&model_text)
        .map_err(|e| votelab::Error::InvalidConfig(e.to_string()))
        .context("invalid model spec")?;
    let text = read(&args.parameters)?;
    let weighted: WeightedProfile = if io::looks_weighted(&text) {
        io::parse_weighted_profile(&text)?
    } else {
        WeightedProfile::from(&io::parse_profile(&text)?)
    };
    let params = ParameterProfile::from_weighted(spec.bind(weighted.m())?, &weighted)?;
    let seed = args.seed.unwrap_or_else(rand::random);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = params.sample_profile(&mut rng)?;
    write(&args.out, &io::format_profile(&p))?;
    let seed_file = sidecar(&args.out, ".seed.json");
    let record = json!({"seed": seed, "model": spec, "parameters": args.parameters});
    write(&seed_file, &format!("{}\n", serde_json::to_string_pretty(&record)?))?;
    Ok(json!({"out": args.out, "seed": seed, "seed_file": seed_file, "m": p.m(), "n": p.n()}))
}

fn reduce(cmd: &ReduceCommand, budget: &Budget) -> Result<Value> {
    match cmd {
        ReduceCommand::X3cDodgson { instance, out } => {
            let inst = io::parse_x3c(&read(instance)?)?;
            let r = x3c_to_dodgson(&inst)?;
            write(out, &io::format_profile(&r.profile))?;
            let layout_file = sidecar(out, ".layout.json");
            let layout = json!({"critical": r.critical, "threshold": r.threshold, "layout": r.layout});
            write(&layout_file, &format!("{}\n", serde_json::to_string_pretty(&layout)?))?;
            Ok(json!({
                "out": out,
                "layout_file": layout_file,
                "m": r.profile.m(),
                "n": r.profile.n(),
                "critical": r.critical,
                "threshold": r.threshold,
            }))
        }
        ReduceCommand::Mcgarvey { graph, out } => {
            let g = io::parse_digraph(&read(graph)?)?;
            let p = mcgarvey_profile(&g)?;
            write(out, &io::format_profile(&p))?;
            Ok(json!({"out": out, "m": p.m(), "n": p.n(), "multiplier": MCGARVEY_MULTIPLIER}))
        }
        ReduceCommand::EfasCheck { graph, threshold, verify } => {
            let g = io::parse_digraph(&read(graph)?)?;
            let p = mcgarvey_profile(&g)?;
            let thresholds = EfasThresholds::exact(&p, &g)?;
            let decider = exact_kemeny_decider(*budget);
            let answer = algorithm2_efas(&g, *threshold, &decider, &|h| mcgarvey_profile(h), &thresholds, true)?;
            let mut v = json!({
                "decision": yes_no(answer == Answer::Yes),
                "kemeny_threshold": votelab::rational::format(&thresholds.kemeny_threshold(*threshold)),
            });
            if *verify {
                v["bruteforce"] = json!(yes_no(efas_bruteforce(&g, *threshold, budget)?));
            }
            Ok(v)
        }
    }
}

fn experiment(args: &ExperimentArgs, budget: &Budget) -> Result<(Value, u8)> {
    let cfg = ExperimentConfig::from_json(&read(&args.config)?)
        .with_context(|| format!("in {}", args.config.display()))?;
    let dir = args.out.clone().or_else(|| cfg.output.clone()).unwrap_or_else(|| PathBuf::from("."));
    let report = run_experiment(&cfg, budget)?;
    let files = report.write_to(&dir)?;
    eprintln!("{} trials in {:.2?}", report.trials, report.wall_clock);
    let verdicts: Vec<Value> = report
        .verdicts
        .iter()
        .map(|c| json!({"name": c.name, "verdict": c.verdict, "observed": c.observed, "threshold": c.threshold}))
        .collect();
    let value = json!({
        "claim": report.claim,
        "seed": report.seed,
        "config_hash": report.config_hash,
        "passed": report.passed,
        "verdicts": verdicts,
        "outputs": files,
    });
    Ok((value, if report.passed { 0 } else { EXIT_VERDICT }))
}
