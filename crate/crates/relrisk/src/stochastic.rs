//! Outcome distributions induced by decisions under uncertainty.
//!
//! A [`DecisionModel`] fixes a finite probability space of environment
//! states and assigns every (decision, state) pair an outcome taken from a
//! partially ordered outcome set. Each decision then pushes the state
//! probabilities forward to a [`Distribution`] over outcomes. Distinct
//! distributions are compared by first-order dominance over upper sets,
//! which lifts the outcome order to the induced measures. All arithmetic is
//! exact: probabilities are arbitrary-precision rationals.

use num::{BigRational, One, Signed, Zero};
use thiserror::Error;

use crate::game::OrdinalGame;
use crate::order::{Comparison, GroundSet, OrderError, Poset, StrictRelation, StructureProfile};

/// Exact probability type used throughout.
pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StochasticError {
    #[error("state `{0}` is declared twice")]
    DuplicateState(String),
    #[error("negative probability {0}")]
    NegativeProbability(String),
    #[error("probabilities sum to {0}, expected 1")]
    ProbabilitySum(String),
    #[error("decision `{0}` is declared twice")]
    DuplicateDecision(String),
    #[error("a decision model needs at least one decision")]
    NoDecisions,
    #[error("unknown decision `{0}`")]
    UnknownDecision(String),
    #[error("unknown state `{0}`")]
    UnknownState(String),
    #[error("unknown outcome `{0}`")]
    UnknownOutcome(String),
    #[error("outcome for decision `{decision}` in state `{state}` is assigned twice")]
    DuplicateAssignment { decision: String, state: String },
    #[error("no outcome assigned for decision `{decision}` in state `{state}`")]
    MissingAssignment { decision: String, state: String },
    #[error("distribution does not match the outcome ground set")]
    GroundMismatch,
    #[error("expected {expected} entries, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("strategy index {index} out of range for player {player}")]
    StrategyOutOfRange { player: usize, index: usize },
    #[error("override relates `{left}` and `{right}`, which induce the same measure")]
    InconsistentOverride { left: String, right: String },
    #[error(transparent)]
    Order(#[from] OrderError),
}

/// A finite probability space: named states with exact probabilities
/// summing to one. Zero-probability states are allowed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteProbabilitySpace {
    states: Vec<String>,
    probabilities: Vec<Rational>,
}

impl FiniteProbabilitySpace {
    pub fn new<I, S>(states: I) -> Result<Self, StochasticError>
    where
        I: IntoIterator<Item = (S, Rational)>,
        S: Into<String>,
    {
        let mut names = Vec::new();
        let mut probabilities = Vec::new();
        for (name, p) in states {
            let name = name.into();
            if names.contains(&name) {
                return Err(StochasticError::DuplicateState(name));
            }
            if p.is_negative() {
                return Err(StochasticError::NegativeProbability(p.to_string()));
            }
            names.push(name);
            probabilities.push(p);
        }
        let total: Rational = probabilities.iter().sum();
        if !total.is_one() {
            return Err(StochasticError::ProbabilitySum(total.to_string()));
        }
        Ok(FiniteProbabilitySpace { states: names, probabilities })
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn state_index(&self, name: &str) -> Option<usize> {
        self.states.iter().position(|s| s == name)
    }

    pub fn probability(&self, state: usize) -> &Rational {
        &self.probabilities[state]
    }
}

/// An exact probability distribution over the elements of a ground set,
/// stored as one mass per element in ground order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Distribution {
    masses: Vec<Rational>,
}

impl Distribution {
    pub fn new(masses: Vec<Rational>) -> Result<Self, StochasticError> {
        if let Some(bad) = masses.iter().find(|m| m.is_negative()) {
            return Err(StochasticError::NegativeProbability(bad.to_string()));
        }
        let total: Rational = masses.iter().sum();
        if !total.is_one() {
            return Err(StochasticError::ProbabilitySum(total.to_string()));
        }
        Ok(Distribution { masses })
    }

    fn zeroed(len: usize) -> Distribution {
        Distribution { masses: vec![Rational::zero(); len] }
    }

    pub fn len(&self) -> usize {
        self.masses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.masses.is_empty()
    }

    pub fn masses(&self) -> &[Rational] {
        &self.masses
    }

    pub fn mass(&self, element: usize) -> &Rational {
        &self.masses[element]
    }

    /// Element indices carrying nonzero mass, in ground order.
    pub fn support(&self) -> Vec<usize> {
        (0..self.masses.len()).filter(|&i| !self.masses[i].is_zero()).collect()
    }
}

/// Decisions acting on a probability space, with outcomes in a poset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecisionModel {
    space: FiniteProbabilitySpace,
    decisions: Vec<String>,
    order: Poset,
    /// `outcomes[decision][state]` is an element index of `order`'s ground.
    outcomes: Vec<Vec<usize>>,
}

impl DecisionModel {
    /// Builds a model from (decision, state, outcome) assignments. Every
    /// pair of a declared decision and a state must be assigned exactly one
    /// outcome from the order's ground set.
    pub fn new<I, S>(
        space: FiniteProbabilitySpace,
        decisions: Vec<String>,
        order: Poset,
        assignments: I,
    ) -> Result<Self, StochasticError>
    where
        I: IntoIterator<Item = (S, S, S)>,
        S: AsRef<str>,
    {
        if decisions.is_empty() {
            return Err(StochasticError::NoDecisions);
        }
        for (i, name) in decisions.iter().enumerate() {
            if decisions[..i].contains(name) {
                return Err(StochasticError::DuplicateDecision(name.clone()));
            }
        }
        let mut outcomes: Vec<Vec<Option<usize>>> = vec![vec![None; space.len()]; decisions.len()];
        for (decision, state, outcome) in assignments {
            let d = decisions
                .iter()
                .position(|n| n == decision.as_ref())
                .ok_or_else(|| StochasticError::UnknownDecision(decision.as_ref().to_string()))?;
            let s = space
                .state_index(state.as_ref())
                .ok_or_else(|| StochasticError::UnknownState(state.as_ref().to_string()))?;
            let o = order
                .ground()
                .index_of(outcome.as_ref())
                .ok_or_else(|| StochasticError::UnknownOutcome(outcome.as_ref().to_string()))?;
            if outcomes[d][s].is_some() {
                return Err(StochasticError::DuplicateAssignment {
                    decision: decisions[d].clone(),
                    state: space.states[s].clone(),
                });
            }
            outcomes[d][s] = Some(o);
        }
        let mut resolved = Vec::with_capacity(decisions.len());
        for (d, row) in outcomes.into_iter().enumerate() {
            let mut out = Vec::with_capacity(space.len());
            for (s, cell) in row.into_iter().enumerate() {
                out.push(cell.ok_or_else(|| StochasticError::MissingAssignment {
                    decision: decisions[d].clone(),
                    state: space.states[s].clone(),
                })?);
            }
            resolved.push(out);
        }
        Ok(DecisionModel { space, decisions, order, outcomes: resolved })
    }

    pub fn space(&self) -> &FiniteProbabilitySpace {
        &self.space
    }

    pub fn decisions(&self) -> &[String] {
        &self.decisions
    }

    pub fn decision_index(&self, name: &str) -> Option<usize> {
        self.decisions.iter().position(|d| d == name)
    }

    pub fn outcome_order(&self) -> &Poset {
        &self.order
    }

    pub fn outcome_index(&self, decision: usize, state: usize) -> usize {
        self.outcomes[decision][state]
    }

    pub fn outcome_name(&self, decision: usize, state: usize) -> &str {
        self.order.ground().name(self.outcomes[decision][state])
    }

    /// Distribution over outcomes induced by one decision.
    pub fn pushforward(&self, decision: usize) -> Distribution {
        let mut dist = Distribution::zeroed(self.order.ground().len());
        for s in 0..self.space.len() {
            dist.masses[self.outcomes[decision][s]] += self.space.probability(s);
        }
        dist
    }

    /// Groups decisions by the distribution they induce. Classes appear in
    /// the order of their first inducing decision; within a class, decisions
    /// keep declaration order. A single class means every decision faces the
    /// same measure, so only the environment carries risk.
    pub fn measure_set(&self) -> MeasureSet {
        let mut classes: Vec<MeasureClass> = Vec::new();
        for (d, name) in self.decisions.iter().enumerate() {
            let distribution = self.pushforward(d);
            match classes.iter_mut().find(|c| c.distribution == distribution) {
                Some(class) => class.decisions.push(name.clone()),
                None => {
                    classes.push(MeasureClass { distribution, decisions: vec![name.clone()] })
                }
            }
        }
        let environment_risk_only = classes.len() == 1;
        MeasureSet { classes, environment_risk_only }
    }

    /// Orders the measure classes by dominance over upper sets and reports
    /// the structure of the resulting poset together with the decisions
    /// inducing its greatest class, when one exists.
    pub fn measure_order_analysis(&self) -> MeasureAnalysis {
        let measures = self.measure_set();
        let order = lifted_order(&self.order, &measures);
        analysis(measures, order)
    }

    /// Like [`measure_order_analysis`](Self::measure_order_analysis), but the
    /// order on measure classes is prescribed directly: each pair `(a, b)` of
    /// decision names places the class induced by `a` strictly below the one
    /// induced by `b`. Pairs inside one class are inconsistent, and cycles
    /// across classes are rejected like any other order cycle.
    pub fn measure_order_with(
        &self,
        pairs: &[(&str, &str)],
    ) -> Result<MeasureAnalysis, StochasticError> {
        let measures = self.measure_set();
        let class_of = |name: &str| -> Result<usize, StochasticError> {
            self.decision_index(name)
                .ok_or_else(|| StochasticError::UnknownDecision(name.to_string()))?;
            Ok(measures
                .classes
                .iter()
                .position(|c| c.decisions.iter().any(|d| d == name))
                .expect("every decision lies in a class"))
        };
        let labels: Vec<String> = measures.classes.iter().map(MeasureClass::label).collect();
        let mut relation_pairs = Vec::new();
        for &(a, b) in pairs {
            let (ca, cb) = (class_of(a)?, class_of(b)?);
            if ca == cb {
                return Err(StochasticError::InconsistentOverride {
                    left: a.to_string(),
                    right: b.to_string(),
                });
            }
            relation_pairs.push((labels[ca].clone(), labels[cb].clone()));
        }
        let ground = GroundSet::new(labels).expect("class labels are distinct");
        let relation = StrictRelation::new(ground, relation_pairs)?;
        let order = Poset::from_relation(&relation)?;
        Ok(analysis(measures, order))
    }
}

/// A group of decisions inducing one and the same outcome distribution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MeasureClass {
    pub distribution: Distribution,
    /// Inducing decisions in declaration order; never empty.
    pub decisions: Vec<String>,
}

impl MeasureClass {
    /// Display label: `P_` followed by the first inducing decision.
    pub fn label(&self) -> String {
        format!("P_{}", self.decisions[0])
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MeasureSet {
    pub classes: Vec<MeasureClass>,
    pub environment_risk_only: bool,
}

/// Measure classes together with their dominance order and the decisions
/// that are optimal under it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MeasureAnalysis {
    pub measures: MeasureSet,
    /// Poset over class labels.
    pub order: Poset,
    pub profile: StructureProfile,
    /// Index into `measures.classes` of the greatest class, if any.
    pub greatest_class: Option<usize>,
    /// Decisions inducing the greatest class, declaration order.
    pub optimal_decisions: Vec<String>,
}

fn analysis(measures: MeasureSet, order: Poset) -> MeasureAnalysis {
    let profile = order.structure_profile();
    let greatest_class = profile.extremes.greatest.as_ref().map(|label| {
        measures
            .classes
            .iter()
            .position(|c| &c.label() == label)
            .expect("greatest label names a class")
    });
    let optimal_decisions = greatest_class
        .map(|c| measures.classes[c].decisions.clone())
        .unwrap_or_default();
    MeasureAnalysis { measures, order, profile, greatest_class, optimal_decisions }
}

fn lifted_order(outcome_order: &Poset, measures: &MeasureSet) -> Poset {
    let labels: Vec<String> = measures.classes.iter().map(MeasureClass::label).collect();
    let mut pairs = Vec::new();
    for i in 0..measures.classes.len() {
        for j in 0..measures.classes.len() {
            if i == j {
                continue;
            }
            let cmp = dominance_lift(
                outcome_order,
                &measures.classes[i].distribution,
                &measures.classes[j].distribution,
            )
            .expect("class distributions live on the outcome ground");
            if cmp == Comparison::Less {
                pairs.push((labels[i].clone(), labels[j].clone()));
            }
        }
    }
    let ground = GroundSet::new(labels).expect("class labels are distinct");
    let relation = StrictRelation::new(ground, pairs).expect("labels are in the ground");
    Poset::from_relation(&relation).expect("strict dominance between distinct measures is acyclic")
}

/// Compares two distributions by dominance over the upper sets of `order`:
/// `p` is below `q` when `q` assigns at least as much mass to every upper
/// set. Distinct distributions agreeing on all upper sets cannot exist, so
/// `Equal` is returned exactly for identical mass vectors.
pub fn dominance_lift(
    order: &Poset,
    p: &Distribution,
    q: &Distribution,
) -> Result<Comparison, StochasticError> {
    let n = order.ground().len();
    if p.masses.len() != n || q.masses.len() != n {
        return Err(StochasticError::GroundMismatch);
    }
    assert!(n < usize::BITS as usize, "outcome ground too large for upper-set enumeration");
    let up_masks: Vec<usize> = (0..n)
        .map(|i| (0..n).filter(|&j| order.leq_idx(i, j)).fold(0usize, |m, j| m | (1 << j)))
        .collect();
    let mut all_leq = true;
    let mut all_geq = true;
    for mask in 0usize..(1 << n) {
        let closed =
            (0..n).filter(|&i| mask & (1 << i) != 0).fold(0usize, |m, i| m | up_masks[i]);
        if closed != mask {
            continue;
        }
        let mut pu = Rational::zero();
        let mut qu = Rational::zero();
        for i in 0..n {
            if mask & (1 << i) != 0 {
                pu += &p.masses[i];
                qu += &q.masses[i];
            }
        }
        if pu < qu {
            all_geq = false;
        } else if pu > qu {
            all_leq = false;
        }
        if !all_leq && !all_geq {
            return Ok(Comparison::Incomparable);
        }
    }
    Ok(match (all_leq, all_geq) {
        (true, true) => Comparison::Equal,
        (true, false) => Comparison::Less,
        (false, true) => Comparison::Greater,
        (false, false) => unreachable!("early return covers this case"),
    })
}

/// Independent randomization over each player's strategies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MixedProfile {
    rows: Vec<Vec<Rational>>,
}

impl MixedProfile {
    /// One probability row per player; each row must be a distribution over
    /// that player's strategies.
    pub fn new(rows: Vec<Vec<Rational>>) -> Result<Self, StochasticError> {
        for row in &rows {
            if let Some(bad) = row.iter().find(|p| p.is_negative()) {
                return Err(StochasticError::NegativeProbability(bad.to_string()));
            }
            let total: Rational = row.iter().sum();
            if !total.is_one() {
                return Err(StochasticError::ProbabilitySum(total.to_string()));
            }
        }
        Ok(MixedProfile { rows })
    }

    /// Degenerate profile putting all mass on one pure strategy per player.
    pub fn pure(game: &OrdinalGame, profile: &[usize]) -> Result<Self, StochasticError> {
        if profile.len() != game.num_players() {
            return Err(StochasticError::DimensionMismatch {
                expected: game.num_players(),
                found: profile.len(),
            });
        }
        let mut rows = Vec::with_capacity(profile.len());
        for (player, &choice) in profile.iter().enumerate() {
            let count = game.strategies(player).len();
            if choice >= count {
                return Err(StochasticError::StrategyOutOfRange { player, index: choice });
            }
            let mut row = vec![Rational::zero(); count];
            row[choice] = Rational::one();
            rows.push(row);
        }
        Ok(MixedProfile { rows })
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.rows
    }
}

/// Distribution over one player's payoff poset induced by independent
/// mixing: each profile's probability is the product of its strategy
/// probabilities, pushed forward through the payoff table.
pub fn product_pushforward(
    game: &OrdinalGame,
    profile: &MixedProfile,
    player: usize,
) -> Result<Distribution, StochasticError> {
    if profile.rows.len() != game.num_players() {
        return Err(StochasticError::DimensionMismatch {
            expected: game.num_players(),
            found: profile.rows.len(),
        });
    }
    for (i, row) in profile.rows.iter().enumerate() {
        if row.len() != game.strategies(i).len() {
            return Err(StochasticError::DimensionMismatch {
                expected: game.strategies(i).len(),
                found: row.len(),
            });
        }
    }
    if player >= game.num_players() {
        return Err(StochasticError::DimensionMismatch {
            expected: game.num_players(),
            found: player,
        });
    }
    let mut dist = Distribution::zeroed(game.payoff_poset(player).ground().len());
    for pure in game.profiles() {
        let mut weight = Rational::one();
        for (i, &s) in pure.iter().enumerate() {
            weight *= &profile.rows[i][s];
        }
        dist.masses[game.payoff_index(player, &pure)] += weight;
    }
    Ok(dist)
}
