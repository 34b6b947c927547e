//! Noncooperative games with partially ordered payoffs.
//!
//! Payoffs live in a per-player [`Poset`] rather than in the reals, so the
//! classical solution notions are rebuilt on order structure alone:
//! dominance comparisons may come out incomparable, security levels are
//! infima that may fail to exist, and best responses are defined through the
//! greatest element of a restriction image. Strategies and profiles are
//! handled as indices into the declared strategy lists; reports map them back
//! to names.

use std::collections::BTreeSet;

use itertools::Itertools;
use thiserror::Error;

use crate::order::{Comparison, Poset};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GameError {
    #[error("a game needs at least two players")]
    TooFewPlayers,
    #[error("player {0} has no strategies")]
    EmptyStrategySet(usize),
    #[error("player {player} lists strategy `{name}` twice")]
    DuplicateStrategy { player: usize, name: String },
    #[error("payoff table of player {player} has {found} entries, expected {expected}")]
    PayoffTableSize { player: usize, expected: usize, found: usize },
    #[error("payoff table of player {player} references element index {index} out of range")]
    PayoffOutOfRange { player: usize, index: usize },
    #[error("player index {0} out of range")]
    PlayerOutOfRange(usize),
    #[error("profile has wrong length or an out-of-range strategy index")]
    MalformedProfile,
}

/// A finite n-player game with poset-valued payoffs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrdinalGame {
    strategies: Vec<Vec<String>>,
    payoff_posets: Vec<Poset>,
    /// `payoffs[player][profile_rank]` is an element index of that player's poset.
    payoffs: Vec<Vec<usize>>,
}

/// A full strategy profile: one strategy index per player.
pub type Profile = Vec<usize>;

impl OrdinalGame {
    /// Builds a game from per-player payoff tables in row-major profile order
    /// (player 0 varies slowest).
    pub fn from_tables(
        strategies: Vec<Vec<String>>,
        payoff_posets: Vec<Poset>,
        payoffs: Vec<Vec<usize>>,
    ) -> Result<Self, GameError> {
        if strategies.len() < 2 {
            return Err(GameError::TooFewPlayers);
        }
        if payoff_posets.len() != strategies.len() || payoffs.len() != strategies.len() {
            return Err(GameError::PayoffTableSize {
                player: payoff_posets.len().min(payoffs.len()),
                expected: strategies.len(),
                found: payoff_posets.len().min(payoffs.len()),
            });
        }
        for (player, list) in strategies.iter().enumerate() {
            if list.is_empty() {
                return Err(GameError::EmptyStrategySet(player));
            }
            for (i, name) in list.iter().enumerate() {
                if list[..i].contains(name) {
                    return Err(GameError::DuplicateStrategy { player, name: name.clone() });
                }
            }
        }
        let profile_count: usize = strategies.iter().map(Vec::len).product();
        for (player, table) in payoffs.iter().enumerate() {
            if table.len() != profile_count {
                return Err(GameError::PayoffTableSize {
                    player,
                    expected: profile_count,
                    found: table.len(),
                });
            }
            let bound = payoff_posets[player].ground().len();
            if let Some(&bad) = table.iter().find(|&&e| e >= bound) {
                return Err(GameError::PayoffOutOfRange { player, index: bad });
            }
        }
        Ok(OrdinalGame { strategies, payoff_posets, payoffs })
    }

    pub fn num_players(&self) -> usize {
        self.strategies.len()
    }

    pub fn strategies(&self, player: usize) -> &[String] {
        &self.strategies[player]
    }

    pub fn payoff_poset(&self, player: usize) -> &Poset {
        &self.payoff_posets[player]
    }

    pub fn profile_count(&self) -> usize {
        self.strategies.iter().map(Vec::len).product()
    }

    /// All profiles in row-major order.
    pub fn profiles(&self) -> Vec<Profile> {
        self.strategies
            .iter()
            .map(|s| 0..s.len())
            .multi_cartesian_product()
            .collect()
    }

    /// All choices of the players other than `player`, row-major in player
    /// order. Each entry has length `n - 1`.
    pub fn opponent_profiles(&self, player: usize) -> Vec<Vec<usize>> {
        self.strategies
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != player)
            .map(|(_, s)| 0..s.len())
            .multi_cartesian_product()
            .collect()
    }

    /// Full profile obtained by inserting `own` into an opponent profile.
    pub fn compose(&self, player: usize, own: usize, opponents: &[usize]) -> Profile {
        let mut profile = Vec::with_capacity(self.num_players());
        let mut rest = opponents.iter();
        for i in 0..self.num_players() {
            if i == player {
                profile.push(own);
            } else {
                profile.push(*rest.next().expect("opponent profile has n-1 entries"));
            }
        }
        profile
    }

    pub fn profile_rank(&self, profile: &[usize]) -> usize {
        debug_assert_eq!(profile.len(), self.num_players());
        profile
            .iter()
            .zip(&self.strategies)
            .fold(0, |rank, (&s, list)| rank * list.len() + s)
    }

    /// Payoff of a profile as an element index of the player's poset.
    pub fn payoff_index(&self, player: usize, profile: &[usize]) -> usize {
        self.payoffs[player][self.profile_rank(profile)]
    }

    pub fn payoff_name(&self, player: usize, profile: &[usize]) -> &str {
        self.payoff_posets[player].ground().name(self.payoff_index(player, profile))
    }

    /// Sub-poset induced on the payoffs a player can reach by unilateral
    /// deviation, the opponents' choices being fixed.
    pub fn restriction_image(&self, player: usize, opponents: &[usize]) -> Poset {
        let mut image: Vec<usize> = (0..self.strategies[player].len())
            .map(|own| self.payoff_index(player, &self.compose(player, own, opponents)))
            .collect();
        image.sort_unstable();
        image.dedup();
        self.payoff_posets[player].induced(&image)
    }

    /// Checks, player by player, that the payoff order and every restriction
    /// image are upper semilattices.
    pub fn verify_risk_conditions(&self) -> Vec<RiskConditionCheck> {
        (0..self.num_players())
            .map(|player| {
                let payoff_upper =
                    self.payoff_posets[player].structure_profile().is_upper_semilattice;
                let failing: Vec<Vec<usize>> = self
                    .opponent_profiles(player)
                    .into_iter()
                    .filter(|opp| {
                        !self
                            .restriction_image(player, opp)
                            .structure_profile()
                            .is_upper_semilattice
                    })
                    .collect();
                RiskConditionCheck {
                    player,
                    payoff_poset_upper: payoff_upper,
                    restrictions_upper: failing.is_empty(),
                    failing_restrictions: failing,
                }
            })
            .collect()
    }

    /// Pairwise comparison of a player's strategies at every opponent choice.
    pub fn comparison_table(&self, player: usize) -> ComparisonTable {
        let own = self.strategies[player].len();
        let pairs: Vec<(usize, usize)> =
            (0..own).flat_map(|a| ((a + 1)..own).map(move |b| (a, b))).collect();
        let opponents = self.opponent_profiles(player);
        let poset = &self.payoff_posets[player];
        let cells = opponents
            .iter()
            .map(|opp| {
                pairs
                    .iter()
                    .map(|&(a, b)| {
                        let ua = self.payoff_index(player, &self.compose(player, a, opp));
                        let ub = self.payoff_index(player, &self.compose(player, b, opp));
                        poset.compare_idx(ua, ub)
                    })
                    .collect()
            })
            .collect();
        ComparisonTable { player, pairs, opponents, cells }
    }

    fn weakly_dominates(&self, player: usize, a: usize, b: usize) -> bool {
        let mut strict = false;
        for opp in self.opponent_profiles(player) {
            let ua = self.payoff_index(player, &self.compose(player, a, &opp));
            let ub = self.payoff_index(player, &self.compose(player, b, &opp));
            match self.payoff_posets[player].compare_idx(ua, ub) {
                Comparison::Greater => strict = true,
                Comparison::Equal => {}
                Comparison::Less | Comparison::Incomparable => return false,
            }
        }
        strict
    }

    fn strictly_dominates(&self, player: usize, a: usize, b: usize) -> bool {
        self.opponent_profiles(player).into_iter().all(|opp| {
            let ua = self.payoff_index(player, &self.compose(player, a, &opp));
            let ub = self.payoff_index(player, &self.compose(player, b, &opp));
            self.payoff_posets[player].compare_idx(ua, ub) == Comparison::Greater
        })
    }

    /// Dominance verdicts for one player. "Dominated" means weakly dominated;
    /// a single-strategy player is vacuously dominant and undominated.
    pub fn dominance_report(&self, player: usize) -> DominanceReport {
        let own = self.strategies[player].len();
        let weakly_dominated: Vec<usize> = (0..own)
            .filter(|&b| (0..own).any(|a| a != b && self.weakly_dominates(player, a, b)))
            .collect();
        let strictly_dominated: Vec<usize> = (0..own)
            .filter(|&b| (0..own).any(|a| a != b && self.strictly_dominates(player, a, b)))
            .collect();
        let dominant: Vec<usize> = (0..own)
            .filter(|&a| (0..own).all(|b| b == a || self.weakly_dominates(player, a, b)))
            .collect();
        let undominated: Vec<usize> =
            (0..own).filter(|s| !weakly_dominated.contains(s)).collect();
        DominanceReport { player, dominant, weakly_dominated, strictly_dominated, undominated }
    }

    /// Security level of each strategy: the infimum of the payoffs it can
    /// receive over all opponent choices, when that infimum exists.
    pub fn security_levels(&self, player: usize) -> Vec<Option<usize>> {
        let opponents = self.opponent_profiles(player);
        (0..self.strategies[player].len())
            .map(|own| {
                let mut values: Vec<usize> = opponents
                    .iter()
                    .map(|opp| self.payoff_index(player, &self.compose(player, own, opp)))
                    .collect();
                values.sort_unstable();
                values.dedup();
                self.payoff_posets[player].inf_idx(&values)
            })
            .collect()
    }

    pub fn cautious_strategies(&self, player: usize) -> CautiousReport {
        self.cautious_strategies_with(player, CautiousRule::GreatestSecurity)
    }

    /// Cautious strategies under a configurable selection rule.
    pub fn cautious_strategies_with(&self, player: usize, rule: CautiousRule) -> CautiousReport {
        let security_levels = self.security_levels(player);
        let poset = &self.payoff_posets[player];
        let existing: Vec<usize> = security_levels.iter().flatten().copied().collect();
        let cautious: Vec<usize> = security_levels
            .iter()
            .enumerate()
            .filter_map(|(own, level)| level.map(|m| (own, m)))
            .filter(|&(_, m)| match rule {
                CautiousRule::GreatestSecurity => {
                    existing.iter().all(|&other| poset.leq_idx(other, m))
                }
                CautiousRule::MaximalSecurity => {
                    existing.iter().all(|&other| !poset.lt_idx(m, other))
                }
            })
            .map(|(own, _)| own)
            .collect();
        CautiousReport { player, security_levels, cautious }
    }

    /// Best-response profiles per player: a profile belongs to `BR_i` when
    /// player i's payoff is the greatest element of the restriction image at
    /// the opponents' choices. An image without a greatest element
    /// contributes nothing.
    pub fn best_responses(&self) -> Vec<BTreeSet<Profile>> {
        (0..self.num_players())
            .map(|player| {
                let mut set = BTreeSet::new();
                for opp in self.opponent_profiles(player) {
                    let image: Vec<usize> = (0..self.strategies[player].len())
                        .map(|own| self.payoff_index(player, &self.compose(player, own, &opp)))
                        .collect();
                    let greatest = image
                        .iter()
                        .copied()
                        .find(|&u| image.iter().all(|&v| self.payoff_posets[player].leq_idx(v, u)));
                    if let Some(g) = greatest {
                        for (own, &u) in image.iter().enumerate() {
                            if u == g {
                                set.insert(self.compose(player, own, &opp));
                            }
                        }
                    }
                }
                set
            })
            .collect()
    }

    /// Profiles that are best responses for every player simultaneously.
    pub fn nash_equilibria(&self) -> BTreeSet<Profile> {
        let mut responses = self.best_responses().into_iter();
        let first = responses.next().expect("games have at least two players");
        responses.fold(first, |acc, set| acc.intersection(&set).cloned().collect())
    }

    /// Full solution: risk conditions, comparison tables, dominance,
    /// cautious strategies, best responses, and equilibria, in player order.
    pub fn solve(&self) -> SolutionReport {
        let best_responses = self.best_responses();
        let nash = {
            let mut iter = best_responses.iter();
            let first = iter.next().expect("games have at least two players").clone();
            iter.fold(first, |acc, set| acc.intersection(set).cloned().collect())
        };
        SolutionReport {
            risk_conditions: self.verify_risk_conditions(),
            comparison_tables: (0..self.num_players())
                .map(|p| self.comparison_table(p))
                .collect(),
            dominance: (0..self.num_players()).map(|p| self.dominance_report(p)).collect(),
            cautious: (0..self.num_players()).map(|p| self.cautious_strategies(p)).collect(),
            best_responses,
            nash,
        }
    }
}

/// How the set of cautious strategies is selected from security levels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CautiousRule {
    /// Keep strategies whose security level is greatest among all existing
    /// levels; empty when no level dominates the others.
    #[default]
    GreatestSecurity,
    /// Keep strategies whose security level is maximal (not strictly below
    /// any other existing level).
    MaximalSecurity,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RiskConditionCheck {
    pub player: usize,
    pub payoff_poset_upper: bool,
    pub restrictions_upper: bool,
    /// Opponent profiles whose restriction image is not an upper semilattice.
    pub failing_restrictions: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComparisonTable {
    pub player: usize,
    /// Own-strategy index pairs `(a, b)` with `a < b`, lexicographic.
    pub pairs: Vec<(usize, usize)>,
    /// Opponent profiles, row-major; one table row each.
    pub opponents: Vec<Vec<usize>>,
    /// `cells[row][pair]` compares the payoff of `a` against `b`.
    pub cells: Vec<Vec<Comparison>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DominanceReport {
    pub player: usize,
    pub dominant: Vec<usize>,
    pub weakly_dominated: Vec<usize>,
    pub strictly_dominated: Vec<usize>,
    pub undominated: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CautiousReport {
    pub player: usize,
    /// Per own strategy, the element index of its security level if it exists.
    pub security_levels: Vec<Option<usize>>,
    pub cautious: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolutionReport {
    pub risk_conditions: Vec<RiskConditionCheck>,
    pub comparison_tables: Vec<ComparisonTable>,
    pub dominance: Vec<DominanceReport>,
    pub cautious: Vec<CautiousReport>,
    pub best_responses: Vec<BTreeSet<Profile>>,
    pub nash: BTreeSet<Profile>,
}
