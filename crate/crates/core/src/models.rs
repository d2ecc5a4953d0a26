//! Single-agent preference models: α-IC and partial alternative
//! randomization, both parameterized by a ranking.

use itertools::Itertools;
use num_traits::{One, ToPrimitive, Zero};
use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::majority::{wmg, Wmg};
use crate::ranking::{check_same_m, Permutation, Profile, Ranking, WeightedProfile};
use crate::rational::{self, Rational};

/// Model family as written in configuration files, before `m` is known:
/// `{"model": "alpha_ic", "alpha": "2/3"}` or `{"model": "partial_alt", "K": 4}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "snake_case", deny_unknown_fields)]
pub enum ModelSpec {
    AlphaIc {
        #[serde(with = "rational::serde_str")]
        alpha: Rational,
    },
    PartialAlt {
        #[serde(rename = "K")]
        k: usize,
    },
}

impl ModelSpec {
    pub fn bind(&self, m: usize) -> Result<PreferenceModel> {
        match self {
            ModelSpec::AlphaIc { alpha } => PreferenceModel::alpha_ic(m, alpha.clone()),
            ModelSpec::PartialAlt { k } => PreferenceModel::partial_alt(m, *k),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Kind {
    /// Bernoulli(α) is drawn as `gen_range(0..den) < num`.
    AlphaIc { alpha: Rational, num: u64, den: u64 },
    PartialAlt { k: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PreferenceModel {
    m: usize,
    kind: Kind,
}

impl PreferenceModel {
    /// With probability α a uniformly random ranking, otherwise the parameter.
    pub fn alpha_ic(m: usize, alpha: Rational) -> Result<Self> {
        if m == 0 {
            return Err(Error::out_of_range("m", 0, "at least 1"));
        }
        if !rational::is_in_unit_interval(&alpha) {
            return Err(Error::InvalidConfig(format!("alpha = {} is not in [0, 1]", rational::format(&alpha))));
        }
        let (num, den) = match (alpha.numer().to_u64(), alpha.denom().to_u64()) {
            (Some(n), Some(d)) => (n, d),
            _ => return Err(Error::InvalidConfig("alpha denominator does not fit in 64 bits".into())),
        };
        Ok(PreferenceModel {
            m,
            kind: Kind::AlphaIc { alpha, num, den },
        })
    }

    /// Keeps the parameter's top `k`, shuffles the remaining `m − k` uniformly.
    pub fn partial_alt(m: usize, k: usize) -> Result<Self> {
        if k == 0 || k > m {
            return Err(Error::out_of_range("K", k, format!("1..={m}")));
        }
        Ok(PreferenceModel {
            m,
            kind: Kind::PartialAlt { k },
        })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn spec(&self) -> ModelSpec {
        match &self.kind {
            Kind::AlphaIc { alpha, .. } => ModelSpec::AlphaIc { alpha: alpha.clone() },
            Kind::PartialAlt { k } => ModelSpec::PartialAlt { k: *k },
        }
    }

    /// Same family over `m` alternatives.
    pub fn with_m(&self, m: usize) -> Result<Self> {
        self.spec().bind(m)
    }

    fn check(&self, r: &Ranking) -> Result<()> {
        check_same_m(self.m, r.m())
    }

    pub fn pmf(&self, parameter: &Ranking, r: &Ranking) -> Result<Rational> {
        self.check(parameter)?;
        self.check(r)?;
        Ok(match &self.kind {
            Kind::AlphaIc { alpha, .. } => {
                let uniform = alpha / Rational::from_integer(rational::factorial(self.m));
                if r == parameter {
                    uniform + (Rational::one() - alpha)
                } else {
                    uniform
                }
            }
            Kind::PartialAlt { k } => {
                if r.order()[..*k] == parameter.order()[..*k] {
                    Rational::new(1.into(), rational::factorial(self.m - k))
                } else {
                    Rational::zero()
                }
            }
        })
    }

    pub fn sample<R: Rng + ?Sized>(&self, parameter: &Ranking, rng: &mut R) -> Result<Ranking> {
        self.check(parameter)?;
        let mut order = parameter.order().to_vec();
        match &self.kind {
            Kind::AlphaIc { num, den, .. } => {
                if rng.gen_range(0..*den) < *num {
                    order.shuffle(rng);
                }
            }
            Kind::PartialAlt { k } => order[*k..].shuffle(rng),
        }
        Ok(Ranking::new(order).expect("shuffling preserves permutations"))
    }

    /// `Pr[Top_k(R) = Top_k(parameter)]` for `R` drawn from the model.
    pub fn top_preservation_probability(&self, k: usize) -> Result<Rational> {
        if k == 0 || k > self.m {
            return Err(Error::out_of_range("k", k, format!("1..={}", self.m)));
        }
        // Shuffling positions `fixed..m` uniformly reproduces positions `fixed..k`
        // with probability 1 / ((m−fixed)(m−fixed−1)…(m−k+1)).
        let uniform_hit = |fixed: usize| Rational::new(1.into(), falling(self.m - fixed, k - fixed));
        Ok(match &self.kind {
            Kind::AlphaIc { alpha, .. } => (Rational::one() - alpha) + alpha * uniform_hit(0),
            Kind::PartialAlt { k: fixed } if k <= *fixed => Rational::one(),
            Kind::PartialAlt { k: fixed } => uniform_hit(*fixed),
        })
    }

    /// Expected margin matrix of one draw, in closed form.
    pub fn wmg_of_distribution(&self, parameter: &Ranking) -> Result<Wmg<Rational>> {
        self.check(parameter)?;
        let point = wmg(&Profile::new(vec![parameter.clone()])?).to_rational();
        Ok(match &self.kind {
            Kind::AlphaIc { alpha, .. } => {
                let keep = Rational::one() - alpha;
                point.map(|v| v * &keep)
            }
            Kind::PartialAlt { k } => {
                // Pairs inside the shuffled tail cancel; everything else is as in the parameter.
                let pos = parameter.positions();
                let mut w = point;
                for a in 0..self.m {
                    for b in 0..self.m {
                        if a != b && pos[a] >= *k && pos[b] >= *k {
                            w.set(a, b, Rational::zero());
                        }
                    }
                }
                w
            }
        })
    }

    /// Expected margin matrix by summing the pmf over all `m!` rankings.
    pub fn wmg_by_enumeration(&self, parameter: &Ranking, budget: &Budget) -> Result<Wmg<Rational>> {
        Ok(crate::majority::weighted_wmg(&self.distribution(parameter, budget)?))
    }

    /// The full distribution as a fractional profile over all `m!` rankings
    /// (zero-mass rankings included).
    pub fn distribution(&self, parameter: &Ranking, budget: &Budget) -> Result<WeightedProfile> {
        budget.check("enumerated alternatives", self.m as u128, budget.enumeration_max_m as u128)?;
        let entries = (0..self.m)
            .permutations(self.m)
            .map(|o| {
                let r = Ranking::new(o)?;
                let p = self.pmf(parameter, &r)?;
                Ok((r, p))
            })
            .collect::<Result<Vec<_>>>()?;
        WeightedProfile::new(entries)
    }

    /// Heaviest directed triangle of the expected margin matrix.
    pub fn three_cycle_max_weight(&self, parameter: &Ranking) -> Result<Rational> {
        if self.m < 3 {
            return Err(Error::TooFewAlternatives(self.m));
        }
        Ok(self
            .wmg_of_distribution(parameter)?
            .max_three_cycle()
            .expect("m >= 3"))
    }
}

/// `n (n−1) … (n−k+1)`.
fn falling(n: usize, k: usize) -> num_bigint::BigInt {
    (n + 1 - k..=n).fold(num_bigint::BigInt::one(), |acc, x| acc * x)
}

/// For both built-in models `σ(π_R) = π_{σ(R)}`.
pub fn permuted_parameter(sigma: &Permutation, parameter: &Ranking) -> Result<Ranking> {
    parameter.permute(sigma)
}

/// Parameters chosen by the adversary, one per agent (with multiplicity
/// given by positive rational weights).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParameterProfile {
    model: PreferenceModel,
    entries: Vec<(Ranking, Rational)>,
}

impl ParameterProfile {
    pub fn new(model: PreferenceModel, entries: Vec<(Ranking, Rational)>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::EmptyProfile);
        }
        for (r, w) in &entries {
            model.check(r)?;
            if *w <= Rational::zero() {
                return Err(Error::InvalidWeight(format!("parameter weight {} is not positive", rational::format(w))));
            }
        }
        Ok(ParameterProfile { model, entries })
    }

    /// One agent per parameter.
    pub fn unit(model: PreferenceModel, parameters: Vec<Ranking>) -> Result<Self> {
        let entries = parameters.into_iter().map(|r| (r, Rational::one())).collect();
        ParameterProfile::new(model, entries)
    }

    /// Reads the parameters of a (weighted) profile.
    pub fn from_weighted(model: PreferenceModel, p: &WeightedProfile) -> Result<Self> {
        ParameterProfile::new(model, p.entries().to_vec())
    }

    pub fn model(&self) -> &PreferenceModel {
        &self.model
    }

    pub fn entries(&self) -> &[(Ranking, Rational)] {
        &self.entries
    }

    pub fn total_weight(&self) -> Rational {
        self.entries.iter().map(|(_, w)| w).sum()
    }

    pub fn as_weighted_profile(&self) -> WeightedProfile {
        WeightedProfile::new(self.entries.clone()).expect("validated on construction")
    }

    /// Integer multiplicities, or an error for fractional weights.
    fn multiplicities(&self) -> Result<Vec<usize>> {
        self.entries
            .iter()
            .map(|(_, w)| {
                w.to_integer()
                    .to_usize()
                    .filter(|_| w.is_integer())
                    .ok_or_else(|| {
                        Error::InvalidWeight(format!(
                            "cannot sample agents from fractional weight {}; scale and round first",
                            rational::format(w)
                        ))
                    })
            })
            .collect()
    }

    /// The parameter of every agent, in order.
    pub fn agents(&self) -> Result<Vec<&Ranking>> {
        let counts = self.multiplicities()?;
        Ok(self
            .entries
            .iter()
            .zip(counts)
            .flat_map(|((r, _), c)| std::iter::repeat(r).take(c))
            .collect())
    }

    /// One independent draw per agent.
    pub fn sample_profile<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<Profile> {
        let rankings = self
            .agents()?
            .into_iter()
            .map(|param| self.model.sample(param, rng))
            .collect::<Result<Vec<_>>>()?;
        Profile::new(rankings)
    }

    /// The induced fractional preference profile: ranking `r` gets weight
    /// `Σ_j w_j · π_j(r)`.
    pub fn induced_profile(&self, budget: &Budget) -> Result<WeightedProfile> {
        let m = self.model.m;
        budget.check("enumerated alternatives", m as u128, budget.enumeration_max_m as u128)?;
        let entries = (0..m)
            .permutations(m)
            .map(|o| {
                let r = Ranking::new(o)?;
                let mut total = Rational::zero();
                for (param, w) in &self.entries {
                    total += w * self.model.pmf(param, &r)?;
                }
                Ok((r, total))
            })
            .collect::<Result<Vec<_>>>()?;
        WeightedProfile::new(entries)
    }

    /// Expected margin matrix of the whole parameter profile.
    pub fn wmg_of_distribution(&self) -> Result<Wmg<Rational>> {
        let mut total = Wmg::zeros(self.model.m);
        for (param, w) in &self.entries {
            let one = self.model.wmg_of_distribution(param)?;
            total = Wmg::from_upper(self.model.m, |a, b| total.margin(a, b) + one.margin(a, b) * w);
        }
        Ok(total)
    }

    /// Scales every weight by `target_total / |pp|` and floors it; entries
    /// that round to zero are dropped.
    pub fn scale_round(&self, target_total: u64) -> Result<ParameterProfile> {
        let total = self.total_weight();
        let target = Rational::from_integer(target_total.into());
        if target < total {
            return Err(Error::InvalidWeight(format!(
                "target total {target_total} is below the current total {}",
                rational::format(&total)
            )));
        }
        let factor = target / total;
        let entries: Vec<_> = self
            .entries
            .iter()
            .map(|(r, w)| (r.clone(), (w * &factor).floor()))
            .filter(|(_, w)| !w.is_zero())
            .collect();
        ParameterProfile::new(self.model.clone(), entries)
    }
}
