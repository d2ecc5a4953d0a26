//! Greedy Dodgson certification rate and the pairwise tail events behind it.

use std::collections::BTreeMap;

use num_traits::ToPrimitive;
use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;

use crate::error::Result;
use crate::experiments::config::{trial_rng, Adversary, ExperimentConfig};
use crate::experiments::report::{running_rate, Outcomes, TrialReport};
use crate::experiments::stats::{Bound, Check};
use crate::greedy::{greedy_dodgson, Certainty};
use crate::models::PreferenceModel;
use crate::ranking::{Alternative, Profile, Ranking};
use crate::rational::{self, Rational};

struct Setup {
    m: usize,
    n: usize,
    model: PreferenceModel,
    adversary: Adversary,
}

impl Setup {
    fn new(cfg: &ExperimentConfig) -> Result<(Self, Rational)> {
        let (m, n, alpha) = cfg.semirandom_setup()?;
        let model = PreferenceModel::alpha_ic(m, alpha.clone())?;
        Ok((Setup { m, n, model, adversary: cfg.adversary }, alpha))
    }

    /// The queried alternative: bottom of the shared parameter.
    fn target(&self) -> Alternative {
        self.m - 1
    }

    fn sample<R: Rng>(&self, rng: &mut R) -> Result<Profile> {
        let params: Vec<Ranking> = match self.adversary {
            Adversary::SharedBottom => vec![Ranking::identity(self.m); self.n],
            Adversary::Random => (0..self.n)
                .map(|_| {
                    let mut o: Vec<Alternative> = (0..self.m).collect();
                    o.shuffle(rng);
                    Ranking::new(o)
                })
                .collect::<Result<_>>()?,
        };
        let rankings = params.iter().map(|p| self.model.sample(p, rng)).collect::<Result<_>>()?;
        Profile::new(rankings)
    }

    /// Both tail events for every rival `b` of `a`:
    /// E1 "more than n/2 + β agents put b above a" and
    /// E2 "fewer than β agents put b directly above a",
    /// with β = (3m − 2)n / (4m²), compared in integers.
    fn events(&self, p: &Profile, a: Alternative) -> Vec<PairEvents> {
        let (m, n) = (self.m as u64, self.n as u64);
        let mut above = vec![0u64; self.m];
        let mut adjacent = vec![0u64; self.m];
        for r in p.rankings() {
            let pos = r.rank_of(a);
            for &b in &r.order()[..pos] {
                above[b] += 1;
            }
            if pos > 0 {
                adjacent[r.order()[pos - 1]] += 1;
            }
        }
        (0..self.m)
            .filter(|&b| b != a)
            .map(|b| PairEvents {
                above: above[b],
                adjacent: adjacent[b],
                e1: 4 * m * m * above[b] > 2 * m * m * n + (3 * m - 2) * n,
                e2: 4 * m * m * adjacent[b] < (3 * m - 2) * n,
            })
            .collect()
    }

    fn exponent(&self) -> Rational {
        Rational::new((self.n as i64).into(), (72 * self.m * self.m).into())
    }

    fn beta(&self) -> Rational {
        Rational::new(((3 * self.m - 2) * self.n).into(), (4 * self.m * self.m).into())
    }

    fn inputs(&self, alpha: &Rational) -> BTreeMap<String, String> {
        BTreeMap::from([
            ("m".to_string(), self.m.to_string()),
            ("n".to_string(), self.n.to_string()),
            ("alpha".to_string(), rational::format(alpha)),
            ("n/(72m^2)".to_string(), rational::format(&self.exponent())),
            ("beta".to_string(), rational::format(&self.beta())),
        ])
    }

    fn tail_value(&self) -> f64 {
        (-self.exponent().to_f64().expect("finite")).exp()
    }
}

#[derive(Clone, Copy)]
struct PairEvents {
    above: u64,
    adjacent: u64,
    e1: bool,
    e2: bool,
}

fn count(rows: &[Vec<i64>], column: usize) -> u64 {
    rows.iter().filter(|r| r[column] != 0).count() as u64
}

/// Definitely rate of greedy Dodgson against 1 − 2(m−1)e^{−n/(72m²)}, plus the
/// union-bound decomposition over the 2(m−1) pairwise tail events measured
/// on the same profiles.
pub fn run_definitely_rate(cfg: &ExperimentConfig) -> Result<TrialReport> {
    let (setup, alpha) = Setup::new(cfg)?;
    let a = setup.target();
    let rivals: Vec<Alternative> = (0..setup.m).filter(|&b| b != a).collect();

    let rows: Vec<Vec<i64>> = (0..cfg.trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = trial_rng(cfg.seed, 0, t);
            let p = setup.sample(&mut rng)?;
            let g = greedy_dodgson(&p, a)?;
            let ev = setup.events(&p, a);
            let mut row = vec![(g.certainty == Certainty::Definitely) as i64, g.score as i64];
            row.push(ev.iter().any(|e| e.e1 || e.e2) as i64);
            row.extend(ev.iter().map(|e| e.e1 as i64));
            row.extend(ev.iter().map(|e| e.e2 as i64));
            Ok(row)
        })
        .collect::<Result<_>>()?;

    let mut report = TrialReport::new(cfg);
    let mut columns = vec!["definitely".to_string(), "score".to_string(), "any_event".to_string()];
    columns.extend(rivals.iter().map(|b| format!("e1_b{b}")));
    columns.extend(rivals.iter().map(|b| format!("e2_b{b}")));
    report.outcomes = Outcomes::new(columns.clone());
    for (t, row) in rows.iter().enumerate() {
        report.outcomes.push(0, t as u64, row.clone());
    }

    let trials = cfg.trials;
    let definitely = report.frequency("definitely", count(&rows, 0), trials);
    let maybe = report.frequency("maybe", trials - definitely.count, trials);
    report.frequency("any_event", count(&rows, 2), trials);
    let mut max_tail: f64 = 0.0;
    for (j, name) in columns.iter().enumerate().skip(3) {
        let f = report.frequency(name.clone(), count(&rows, j), trials);
        max_tail = max_tail.max(f.value);
    }

    let pairs = 2.0 * (setup.m - 1) as f64;
    let bound = 1.0 - pairs * setup.tail_value();
    report.bounds.push(Bound {
        name: "definitely_rate".into(),
        formula: "1 - 2(m-1) exp(-n/(72m^2))".into(),
        inputs: setup.inputs(&alpha),
        value: bound,
    });
    report.bounds.push(Bound {
        name: "pair_tail".into(),
        formula: "exp(-n/(72m^2))".into(),
        inputs: setup.inputs(&alpha),
        value: setup.tail_value(),
    });

    let check = Check::at_least("definitely_rate", &definitely, bound);
    report.verdicts.push(if bound > 0.0 { check } else { check.vacuous() });
    report
        .verdicts
        .push(Check::at_most("maybe_decomposition", &maybe, (pairs * max_tail).min(1.0)));

    report.flags.insert("bound_vacuous".into(), bound <= 0.0);
    report.flags.insert("clears_theorem_bound".into(), definitely.value >= bound);
    report
        .flags
        .insert("clears_one_over_m".into(), maybe.value <= 1.0 / setup.m as f64);

    report.series = running_rate(rows.iter().map(|r| r[0] != 0));
    report.series_labels = ("trial".into(), "definitely_rate".into());
    Ok(report.finish())
}

/// Empirical probabilities of both tail events for the pair `(a, b)` with
/// `a` the parameter's bottom and `b` its top, against e^{−n/(72m²)}.
pub fn run_claim1_concentration(cfg: &ExperimentConfig) -> Result<TrialReport> {
    let (setup, alpha) = Setup::new(cfg)?;
    let a = setup.target();
    let b_index = 0; // rival 0 is the parameter's top

    let rows: Vec<Vec<i64>> = (0..cfg.trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = trial_rng(cfg.seed, 0, t);
            let p = setup.sample(&mut rng)?;
            let e = setup.events(&p, a)[b_index];
            Ok(vec![e.above as i64, e.adjacent as i64, e.e1 as i64, e.e2 as i64])
        })
        .collect::<Result<_>>()?;

    let mut report = TrialReport::new(cfg);
    report.outcomes = Outcomes::new(["above", "adjacent", "e1", "e2"]);
    for (t, row) in rows.iter().enumerate() {
        report.outcomes.push(0, t as u64, row.clone());
    }

    let tail = setup.tail_value();
    let e1 = report.frequency("e1", count(&rows, 2), cfg.trials);
    let e2 = report.frequency("e2", count(&rows, 3), cfg.trials);
    report.bounds.push(Bound {
        name: "pair_tail".into(),
        formula: "exp(-n/(72m^2))".into(),
        inputs: setup.inputs(&alpha),
        value: tail,
    });
    report.verdicts.push(Check::at_most("e1_tail", &e1, tail));
    report.verdicts.push(Check::at_most("e2_tail", &e2, tail));
    report.flags.insert("e1_clears_bound".into(), e1.value <= tail);
    report.flags.insert("e2_clears_bound".into(), e2.value <= tail);

    report.series = running_rate(rows.iter().map(|r| r[2] != 0 || r[3] != 0));
    report.series_labels = ("trial".into(), "either_tail_rate".into());
    Ok(report.finish())
}
