//! Parsed model files and their canonical text form.
//!
//! A model file holds named posets, partitions, games, and stochastic
//! models. Entries keep the position of their declaration so commands can
//! point back into the source. [`to_text`] renders a file in a canonical
//! layout; parsing that text again yields the same objects, which makes the
//! serializer a fixed point of the parser.

use num::{BigInt, BigRational, One, Signed, Zero};
use relrisk::{DecisionModel, OrdinalGame, Partition, Poset};

use crate::parse::Pos;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PosetEntry {
    pub name: String,
    pub poset: Poset,
    pub pos: Pos,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionEntry {
    pub name: String,
    pub poset_name: String,
    pub partition: Partition,
    pub pos: Pos,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GameEntry {
    pub name: String,
    pub payoff_poset_names: Vec<String>,
    pub game: OrdinalGame,
    pub pos: Pos,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StochEntry {
    pub name: String,
    pub outcome_poset_name: String,
    pub model: DecisionModel,
    pub pos: Pos,
}

/// All named objects of one document, grouped by kind in declaration order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ModelFile {
    pub posets: Vec<PosetEntry>,
    pub partitions: Vec<PartitionEntry>,
    pub games: Vec<GameEntry>,
    pub stochs: Vec<StochEntry>,
}

impl ModelFile {
    pub fn poset(&self, name: &str) -> Option<&PosetEntry> {
        self.posets.iter().find(|e| e.name == name)
    }

    pub fn partition(&self, name: &str) -> Option<&PartitionEntry> {
        self.partitions.iter().find(|e| e.name == name)
    }

    pub fn game(&self, name: &str) -> Option<&GameEntry> {
        self.games.iter().find(|e| e.name == name)
    }

    pub fn stoch(&self, name: &str) -> Option<&StochEntry> {
        self.stochs.iter().find(|e| e.name == name)
    }
}

/// Parses a plain decimal literal (`0.25`, `1`) into an exact rational.
/// Signs, exponents, and bare fractions like `.5` are rejected.
pub fn parse_decimal(text: &str) -> Option<BigRational> {
    let (integer, fraction) = match text.split_once('.') {
        Some((i, f)) => (i, f),
        None => (text, ""),
    };
    if integer.is_empty() || !integer.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    if text.contains('.') && (fraction.is_empty() || !fraction.bytes().all(|b| b.is_ascii_digit()))
    {
        return None;
    }
    let digits: String = format!("{integer}{fraction}");
    let numerator: BigInt = digits.parse().ok()?;
    let denominator = BigInt::from(10u32).pow(fraction.len() as u32);
    Some(BigRational::new(numerator, denominator))
}

/// Renders a nonnegative rational whose denominator divides a power of ten
/// back into its shortest decimal form. Probabilities in a model file always
/// satisfy that, since they came from decimal literals.
pub fn decimal_string(value: &BigRational) -> String {
    assert!(!value.is_negative(), "probabilities are nonnegative");
    let mut denom = value.denom().clone();
    let mut scale = 0u32;
    for factor in [2u32, 5u32] {
        let factor = BigInt::from(factor);
        let mut count = 0u32;
        while (&denom % &factor).is_zero() {
            denom /= &factor;
            count += 1;
        }
        scale = scale.max(count);
    }
    assert!(
        denom.is_one(),
        "denominator {} does not divide a power of ten",
        value.denom()
    );
    let scaled = value.numer() * BigInt::from(10u32).pow(scale) / value.denom();
    let digits = scaled.to_string();
    if scale == 0 {
        return digits;
    }
    let digits = format!("{:0>width$}", digits, width = scale as usize + 1);
    let split = digits.len() - scale as usize;
    let (integer, fraction) = digits.split_at(split);
    let fraction = fraction.trim_end_matches('0');
    if fraction.is_empty() {
        integer.to_string()
    } else {
        format!("{integer}.{fraction}")
    }
}

fn comma_list<'a, I: IntoIterator<Item = &'a str>>(items: I) -> String {
    items.into_iter().collect::<Vec<_>>().join(", ")
}

/// Canonical text of a model file: objects grouped by kind in declaration
/// order, covers taken from the Hasse diagram, one mapping per line.
pub fn to_text(model: &ModelFile) -> String {
    let mut blocks: Vec<String> = Vec::new();
    for entry in &model.posets {
        let mut out = format!("poset {} {{\n", entry.name);
        out.push_str(&format!(
            "  elements: {};\n",
            comma_list(entry.poset.ground().iter())
        ));
        let covers: Vec<String> =
            entry.poset.hasse().pairs().map(|(a, b)| format!("{a} < {b}")).collect();
        if !covers.is_empty() {
            out.push_str(&format!("  covers: {};\n", covers.join(", ")));
        }
        out.push('}');
        blocks.push(out);
    }
    for entry in &model.partitions {
        let mut out = format!("partition {} on {} {{\n", entry.name, entry.poset_name);
        let rendered: Vec<String> = entry
            .partition
            .blocks()
            .iter()
            .map(|block| format!("({})", comma_list(block.iter().copied())))
            .collect();
        out.push_str(&format!("  blocks: {};\n", rendered.join(", ")));
        out.push('}');
        blocks.push(out);
    }
    for entry in &model.games {
        let game = &entry.game;
        let mut out = format!("game {} {{\n", entry.name);
        for player in 0..game.num_players() {
            out.push_str(&format!(
                "  player {} strategies: {};\n",
                player + 1,
                comma_list(game.strategies(player).iter().map(String::as_str))
            ));
        }
        for (player, poset_name) in entry.payoff_poset_names.iter().enumerate() {
            out.push_str(&format!("  payoff {}: poset {};\n", player + 1, poset_name));
        }
        for profile in game.profiles() {
            let names: Vec<&str> = profile
                .iter()
                .enumerate()
                .map(|(i, &s)| game.strategies(i)[s].as_str())
                .collect();
            out.push_str(&format!(
                "  outcome ({}) -> {};\n",
                names.join(", "),
                game.payoff_name(0, &profile)
            ));
        }
        out.push('}');
        blocks.push(out);
    }
    for entry in &model.stochs {
        let model = &entry.model;
        let space = model.space();
        let mut out = format!("stoch {} {{\n", entry.name);
        let states: Vec<String> = (0..space.len())
            .map(|s| format!("{} prob {}", space.states()[s], decimal_string(space.probability(s))))
            .collect();
        out.push_str(&format!("  states: {};\n", states.join(", ")));
        out.push_str(&format!(
            "  decisions: {};\n",
            comma_list(model.decisions().iter().map(String::as_str))
        ));
        out.push_str(&format!("  outcomes: poset {};\n", entry.outcome_poset_name));
        for d in 0..model.decisions().len() {
            for s in 0..space.len() {
                out.push_str(&format!(
                    "  map ({}, {}) -> {};\n",
                    model.decisions()[d],
                    space.states()[s],
                    model.outcome_name(d, s)
                ));
            }
        }
        out.push('}');
        blocks.push(out);
    }
    let mut text = blocks.join("\n\n");
    if !text.is_empty() {
        text.push('\n');
    }
    text
}
