//! Plain-text reports.
//!
//! Every report has a stable section order and prints set contents in
//! declaration order, so repeated runs over the same input are
//! byte-identical. Strategy profiles print as the concatenation of the
//! chosen strategy names, matching the usual compact notation for small
//! games ("22" for the second strategy of each player).

use std::fmt::Write;

use num::Zero;
use relrisk::{
    DecisionModel, Distribution, MeasureAnalysis, OrdinalGame, Poset, Profile,
    RiskClassification, SolutionReport,
};

fn yes_no(flag: bool) -> &'static str {
    if flag {
        "yes"
    } else {
        "no"
    }
}

/// `{ a, b }`, or `{ }` when empty.
pub fn fmt_set<I, S>(items: I) -> String
where
    I: IntoIterator<Item = S>,
    S: AsRef<str>,
{
    let names: Vec<String> = items.into_iter().map(|s| s.as_ref().to_owned()).collect();
    if names.is_empty() {
        "{ }".to_owned()
    } else {
        format!("{{ {} }}", names.join(", "))
    }
}

fn option_name(name: &Option<String>) -> &str {
    name.as_deref().unwrap_or("none")
}

fn profile_name(game: &OrdinalGame, profile: &Profile) -> String {
    profile
        .iter()
        .enumerate()
        .map(|(player, &s)| game.strategies(player)[s].as_str())
        .collect()
}

/// Structural summary of one poset.
pub fn check_report(name: &str, poset: &Poset) -> String {
    let profile = poset.structure_profile();
    let mut out = String::new();
    writeln!(out, "poset {name}").unwrap();
    writeln!(out, "  elements: {}", poset.ground().len()).unwrap();
    writeln!(out, "  relation pairs: {}", poset.closure().len()).unwrap();
    writeln!(out, "  cover pairs: {}", poset.hasse().len()).unwrap();
    writeln!(out, "  upper semilattice: {}", yes_no(profile.is_upper_semilattice)).unwrap();
    writeln!(out, "  lower semilattice: {}", yes_no(profile.is_lower_semilattice)).unwrap();
    writeln!(out, "  total order: {}", yes_no(profile.is_total_order)).unwrap();
    writeln!(out, "  greatest: {}", option_name(&profile.extremes.greatest)).unwrap();
    writeln!(out, "  least: {}", option_name(&profile.extremes.least)).unwrap();
    writeln!(out, "  maximal = {}", fmt_set(&profile.extremes.maximal)).unwrap();
    writeln!(out, "  minimal = {}", fmt_set(&profile.extremes.minimal)).unwrap();
    out
}

/// Risk classification of a poset, optionally through a partition.
pub fn classify_report(
    poset_name: &str,
    partition: Option<(&str, usize)>,
    result: &RiskClassification,
) -> String {
    let mut out = String::new();
    writeln!(out, "poset {poset_name}").unwrap();
    if let Some((partition_name, classes)) = partition {
        writeln!(out, "  partition: {partition_name}").unwrap();
        writeln!(out, "  classes: {classes}").unwrap();
    }
    writeln!(out, "  kind: {}", result.kind).unwrap();
    writeln!(out, "  target = {}", fmt_set(&result.target_set)).unwrap();
    if result.caveat {
        writeln!(out, "  caveat: yes").unwrap();
    }
    for finding in &result.diagnostics {
        writeln!(out, "  note: {finding}").unwrap();
    }
    out
}

/// Label for an opponent sub-profile: `p2=1`, or `p1=a,p3=b` with more
/// than two players.
fn opponent_label(game: &OrdinalGame, player: usize, opponents: &[usize]) -> String {
    let mut parts = Vec::new();
    let mut rest = opponents.iter();
    for other in 0..game.num_players() {
        if other == player {
            continue;
        }
        let &s = rest.next().expect("opponent profile matches player count");
        parts.push(format!("p{}={}", other + 1, game.strategies(other)[s]));
    }
    parts.join(",")
}

fn comparison_table_section(game: &OrdinalGame, player: usize, out: &mut String) {
    let table = game.comparison_table(player);
    let own = game.strategies(player);
    writeln!(out, "comparison table, player {}:", player + 1).unwrap();
    let mut header = vec!["opponent".to_owned()];
    header.extend(table.pairs.iter().map(|&(a, b)| format!("{} vs {}", own[a], own[b])));
    let mut rows = vec![header];
    for (row, opponents) in table.opponents.iter().enumerate() {
        let mut cells = vec![opponent_label(game, player, opponents)];
        for (column, &(a, b)) in table.pairs.iter().enumerate() {
            let left = game.payoff_name(player, &game.compose(player, a, opponents));
            let right = game.payoff_name(player, &game.compose(player, b, opponents));
            cells.push(format!("{left} {} {right}", table.cells[row][column]));
        }
        rows.push(cells);
    }
    let columns = rows[0].len();
    let widths: Vec<usize> = (0..columns)
        .map(|c| rows.iter().map(|r| r[c].chars().count()).max().unwrap_or(0))
        .collect();
    for row in &rows {
        let mut line = String::from(" ");
        for (c, cell) in row.iter().enumerate() {
            line.push(' ');
            line.push_str(cell);
            if c + 1 < columns {
                for _ in cell.chars().count()..widths[c] {
                    line.push(' ');
                }
                line.push(' ');
            }
        }
        writeln!(out, "{line}").unwrap();
    }
}

/// Ordered by opponent profile, then own strategy; this follows the
/// best-response arrows column by column through the game table.
fn best_response_set(game: &OrdinalGame, player: usize, report: &SolutionReport) -> Vec<String> {
    let mut names = Vec::new();
    for opponents in game.opponent_profiles(player) {
        for own in 0..game.strategies(player).len() {
            let profile = game.compose(player, own, &opponents);
            if report.best_responses[player].contains(&profile) {
                names.push(profile_name(game, &profile));
            }
        }
    }
    names
}

/// Full solution report: risk conditions, comparison tables, dominance,
/// cautious strategies, best responses, and the Nash set.
pub fn solve_report(name: &str, game: &OrdinalGame) -> String {
    let report = game.solve();
    let mut out = String::new();
    writeln!(out, "game {name}").unwrap();

    writeln!(out).unwrap();
    writeln!(out, "risk conditions:").unwrap();
    for check in &report.risk_conditions {
        let mut line = format!(
            "  player {}: payoff poset upper semilattice: {}; restriction images upper semilattices: {}",
            check.player + 1,
            yes_no(check.payoff_poset_upper),
            yes_no(check.restrictions_upper),
        );
        if !check.failing_restrictions.is_empty() {
            let failing: Vec<String> = check
                .failing_restrictions
                .iter()
                .map(|opponents| opponent_label(game, check.player, opponents))
                .collect();
            write!(line, " (failing: {})", failing.join(", ")).unwrap();
        }
        writeln!(out, "{line}").unwrap();
    }

    for player in 0..game.num_players() {
        writeln!(out).unwrap();
        comparison_table_section(game, player, &mut out);
    }

    for dominance in &report.dominance {
        let own = game.strategies(dominance.player);
        let names = |set: &[usize]| fmt_set(set.iter().map(|&s| own[s].as_str()));
        writeln!(out).unwrap();
        writeln!(out, "dominance, player {}:", dominance.player + 1).unwrap();
        writeln!(out, "  dominant = {}", names(&dominance.dominant)).unwrap();
        writeln!(out, "  weakly dominated = {}", names(&dominance.weakly_dominated)).unwrap();
        writeln!(out, "  strictly dominated = {}", names(&dominance.strictly_dominated)).unwrap();
        writeln!(out, "  undominated = {}", names(&dominance.undominated)).unwrap();
    }

    for cautious in &report.cautious {
        let own = game.strategies(cautious.player);
        let ground = game.payoff_poset(cautious.player).ground();
        writeln!(out).unwrap();
        writeln!(out, "cautious strategies, player {}:", cautious.player + 1).unwrap();
        let levels: Vec<String> = cautious
            .security_levels
            .iter()
            .enumerate()
            .map(|(s, level)| {
                let level = level.map(|e| ground.name(e)).unwrap_or("none");
                format!("{} -> {level}", own[s])
            })
            .collect();
        writeln!(out, "  security levels: {}", levels.join(", ")).unwrap();
        writeln!(out, "  cautious = {}", fmt_set(cautious.cautious.iter().map(|&s| own[s].as_str())))
            .unwrap();
    }

    writeln!(out).unwrap();
    writeln!(out, "best responses:").unwrap();
    for player in 0..game.num_players() {
        writeln!(out, "  BR{} = {}", player + 1, fmt_set(best_response_set(game, player, &report)))
            .unwrap();
    }

    writeln!(out).unwrap();
    let nash: Vec<String> = game
        .profiles()
        .into_iter()
        .filter(|p| report.nash.contains(p))
        .map(|p| profile_name(game, &p))
        .collect();
    writeln!(out, "NE = {}", fmt_set(nash)).unwrap();
    out
}

/// `lo -> 1/2, hi -> 1/2`: nonzero masses in outcome declaration order.
fn distribution_entry(order: &Poset, distribution: &Distribution) -> String {
    let entries: Vec<String> = distribution
        .masses()
        .iter()
        .enumerate()
        .filter(|(_, mass)| !mass.is_zero())
        .map(|(i, mass)| format!("{} -> {mass}", order.ground().name(i)))
        .collect();
    entries.join(", ")
}

/// Pushforwards, the deduplicated measure set, the lifted dominance order,
/// and the optimal decisions.
pub fn push_report(name: &str, model: &DecisionModel) -> String {
    let MeasureAnalysis { measures, order, profile, greatest_class, optimal_decisions } =
        model.measure_order_analysis();
    let outcome_order = model.outcome_order();
    let mut out = String::new();
    writeln!(out, "stoch {name}").unwrap();

    writeln!(out).unwrap();
    writeln!(out, "pushforwards:").unwrap();
    let decision_width =
        model.decisions().iter().map(|d| d.chars().count()).max().unwrap_or(0);
    for (d, decision) in model.decisions().iter().enumerate() {
        let entry = distribution_entry(outcome_order, &model.pushforward(d));
        writeln!(out, "  {decision:<decision_width$} : {entry}").unwrap();
    }

    writeln!(out).unwrap();
    let plural = if measures.classes.len() == 1 { "class" } else { "classes" };
    writeln!(out, "measure set: {} {plural}", measures.classes.len()).unwrap();
    for class in &measures.classes {
        writeln!(
            out,
            "  {} <- {} : {}",
            class.label(),
            fmt_set(&class.decisions),
            distribution_entry(outcome_order, &class.distribution),
        )
        .unwrap();
    }
    writeln!(out, "  environment risk only: {}", yes_no(measures.environment_risk_only)).unwrap();

    writeln!(out).unwrap();
    writeln!(out, "measure order:").unwrap();
    let covers: Vec<String> =
        order.hasse().pairs().map(|(p, q)| format!("{p} < {q}")).collect();
    if covers.is_empty() {
        writeln!(out, "  covers: none").unwrap();
    } else {
        writeln!(out, "  covers: {}", covers.join(", ")).unwrap();
    }
    writeln!(out, "  upper semilattice: {}", yes_no(profile.is_upper_semilattice)).unwrap();
    writeln!(out, "  lower semilattice: {}", yes_no(profile.is_lower_semilattice)).unwrap();
    writeln!(out, "  total order: {}", yes_no(profile.is_total_order)).unwrap();
    let greatest = greatest_class.map(|c| measures.classes[c].label());
    writeln!(out, "  greatest: {}", greatest.as_deref().unwrap_or("none")).unwrap();

    writeln!(out).unwrap();
    if optimal_decisions.is_empty() {
        writeln!(out, "optimal decisions: none").unwrap();
    } else {
        writeln!(out, "optimal decisions: {}", fmt_set(&optimal_decisions)).unwrap();
    }
    out
}
