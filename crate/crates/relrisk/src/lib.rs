//! Order-theoretic risk analysis over finite strict partial orders.
//!
//! The crate has four layers. [`order`] provides the foundation: ground
//! sets, strict relations with transitive closure and cover reduction,
//! posets with joins, meets, extremes and quotients. [`risk`] classifies a
//! poset of adverse outcomes by its semilattice structure and names the
//! elements worth guarding against. [`game`] treats noncooperative games
//! whose payoffs live in such posets, with dominance, cautious strategies,
//! best responses and equilibria defined through order structure alone.
//! [`stochastic`] adds uncertainty: decisions push a finite probability
//! space forward to exact-rational outcome distributions, compared by
//! dominance over upper sets.
//!
//! Everything is deterministic. Elements keep their declaration order, and
//! every derived set is reported in that order, so equal inputs produce
//! byte-equal reports downstream.

pub mod game;
pub mod order;
pub mod risk;
pub mod stochastic;

pub use game::{
    CautiousReport, CautiousRule, ComparisonTable, DominanceReport, GameError, OrdinalGame,
    Profile, RiskConditionCheck, SolutionReport,
};
pub use order::{
    preorder_reduce, transitive_closure, Comparison, Extremes, GroundSet, OrderError, Partition,
    Poset, StrictRelation, StructureProfile,
};
pub use risk::{classify, classify_quotient, target_set, Finding, RiskClassification, RiskKind};
pub use stochastic::{
    dominance_lift, product_pushforward, DecisionModel, Distribution, FiniteProbabilitySpace,
    MeasureAnalysis, MeasureClass, MeasureSet, MixedProfile, Rational, StochasticError,
};
