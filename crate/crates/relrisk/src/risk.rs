//! Classification of preference orders into risk situations.
//!
//! The kind of development a preference order admits depends on its shape:
//! a trivial ground set means no development at all, a total order or a
//! semilattice supports a direct notion of risk, and anything else is only
//! analysable after factoring or with caveats.

use std::fmt;

use crate::order::{OrderError, Partition, Poset};

/// The five recognized situation kinds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RiskKind {
    /// At most one outcome: nothing can develop.
    NoDevelopment,
    /// Every pair of outcomes has a join; a single best outcome exists.
    RiskUpper,
    /// Every pair of outcomes has a meet; the target is the maximal set.
    RiskLower,
    /// Outcomes form a chain.
    RiskTotal,
    /// No semilattice structure; results carry a caveat.
    NotDirectRisk,
}

impl fmt::Display for RiskKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            RiskKind::NoDevelopment => "NoDevelopment",
            RiskKind::RiskUpper => "RiskUpper",
            RiskKind::RiskLower => "RiskLower",
            RiskKind::RiskTotal => "RiskTotal",
            RiskKind::NotDirectRisk => "NotDirectRisk",
        };
        f.write_str(name)
    }
}

/// A single observation attached to a classification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Finding {
    /// The element is incomparable with every other element.
    Isolated(String),
    /// A connected component of the comparability graph with two or more members.
    Component(Vec<String>),
    /// An upper-semilattice order that is simultaneously a lower semilattice.
    AlsoLowerSemilattice { least: Option<String> },
}

impl fmt::Display for Finding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Finding::Isolated(name) => {
                write!(f, "{name} is incomparable with every other element")
            }
            Finding::Component(members) => {
                write!(f, "comparability component: {{ {} }}", members.join(", "))
            }
            Finding::AlsoLowerSemilattice { least } => match least {
                Some(name) => write!(f, "also a lower semilattice; least element {name}"),
                None => write!(f, "also a lower semilattice"),
            },
        }
    }
}

/// Result of classifying a preference order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RiskClassification {
    pub kind: RiskKind,
    /// Outcomes development tends toward, in declaration order.
    pub target_set: Vec<String>,
    /// Set for [`RiskKind::NotDirectRisk`]: the target is only indicative.
    pub caveat: bool,
    pub diagnostics: Vec<Finding>,
}

/// Classifies a preference order.
///
/// Precedence: a trivial ground set is `NoDevelopment`; a chain is
/// `RiskTotal`; an upper semilattice is `RiskUpper` (with a note if it is a
/// lower semilattice as well); a lower semilattice is `RiskLower`; everything
/// else is `NotDirectRisk` with diagnostics describing the incomparability.
pub fn classify(poset: &Poset) -> RiskClassification {
    let kind = kind_of(poset);
    let mut diagnostics = Vec::new();
    match kind {
        RiskKind::RiskUpper => {
            let profile = poset.structure_profile();
            if profile.is_lower_semilattice {
                diagnostics.push(Finding::AlsoLowerSemilattice {
                    least: profile.extremes.least,
                });
            }
        }
        RiskKind::NotDirectRisk => {
            diagnostics.extend(comparability_findings(poset));
        }
        _ => {}
    }
    let (target, caveat) = target_for(poset, kind);
    RiskClassification { kind, target_set: target, caveat, diagnostics }
}

/// Classifies the order induced on the blocks of a partition.
pub fn classify_quotient(
    poset: &Poset,
    partition: &Partition,
) -> Result<RiskClassification, OrderError> {
    Ok(classify(&poset.quotient(partition)?))
}

/// Target outcomes for a classification of this poset.
pub fn target_set(poset: &Poset, classification: &RiskClassification) -> Vec<String> {
    target_for(poset, classification.kind).0
}

fn kind_of(poset: &Poset) -> RiskKind {
    if poset.ground().len() <= 1 {
        return RiskKind::NoDevelopment;
    }
    let profile = poset.structure_profile();
    if profile.is_total_order {
        RiskKind::RiskTotal
    } else if profile.is_upper_semilattice {
        RiskKind::RiskUpper
    } else if profile.is_lower_semilattice {
        RiskKind::RiskLower
    } else {
        RiskKind::NotDirectRisk
    }
}

fn target_for(poset: &Poset, kind: RiskKind) -> (Vec<String>, bool) {
    let extremes = poset.extremes();
    match kind {
        RiskKind::NoDevelopment => (Vec::new(), false),
        RiskKind::RiskTotal | RiskKind::RiskUpper => {
            let greatest = extremes
                .greatest
                .expect("a nonempty upper semilattice has a greatest element");
            (vec![greatest], false)
        }
        RiskKind::RiskLower => (extremes.maximal, false),
        RiskKind::NotDirectRisk => (extremes.maximal, true),
    }
}

/// Connected components of the comparability graph, walked in declaration
/// order. Singleton components surface as isolated elements.
fn comparability_findings(poset: &Poset) -> Vec<Finding> {
    let ground = poset.ground();
    let n = ground.len();
    let mut component = vec![usize::MAX; n];
    let mut count = 0;
    for start in 0..n {
        if component[start] != usize::MAX {
            continue;
        }
        let mut stack = vec![start];
        component[start] = count;
        while let Some(i) = stack.pop() {
            for (j, mark) in component.iter_mut().enumerate() {
                if *mark == usize::MAX && (poset.lt_idx(i, j) || poset.lt_idx(j, i)) {
                    *mark = count;
                    stack.push(j);
                }
            }
        }
        count += 1;
    }
    let mut findings = Vec::new();
    for c in 0..count {
        let members: Vec<String> = (0..n)
            .filter(|&i| component[i] == c)
            .map(|i| ground.name(i).to_string())
            .collect();
        if members.len() == 1 {
            findings.push(Finding::Isolated(members.into_iter().next().unwrap()));
        } else {
            findings.push(Finding::Component(members));
        }
    }
    findings
}
