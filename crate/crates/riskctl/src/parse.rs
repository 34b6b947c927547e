//! The model-definition language.
//!
//! The grammar is whitespace-insensitive, `#` starts a comment running to
//! the end of the line, identifiers match `[A-Za-z0-9_]+`, and punctuation
//! is limited to `{ } : ; , < ( ) ->`. Four block forms exist:
//!
//! ```text
//! poset NAME { elements: a, b; covers: a < b; }
//! partition NAME on POSET { blocks: (a), (b); }
//! game NAME { player 1 strategies: s, t; payoff 1: poset P;
//!             outcome (s, s) -> a; ... }
//! stoch NAME { states: w prob 0.5, v prob 0.5; decisions: d;
//!              outcomes: poset P; map (d, w) -> a; ... }
//! ```
//!
//! Parsing runs in two passes: a syntactic pass producing raw blocks with
//! source positions, and a semantic pass resolving names and building the
//! library objects. Errors are collected as [`Diagnostic`]s rather than
//! aborting, with recovery at statement and block boundaries, so one run
//! reports every problem it can find. The model is returned only when no
//! error-severity diagnostic was produced.

use std::collections::BTreeSet;

use num::{BigRational, Zero};
use relrisk::{
    DecisionModel, FiniteProbabilitySpace, GroundSet, OrderError, OrdinalGame, Partition, Poset,
};

use crate::model::{
    parse_decimal, GameEntry, ModelFile, PartitionEntry, PosetEntry, StochEntry,
};

/// 1-based source position.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Severity {
    Error,
    Warning,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub severity: Severity,
    pub pos: Pos,
    pub message: String,
    pub hint: Option<String>,
    /// True when the input is well-formed text describing an invalid
    /// structure (an order cycle); false for syntactic and reference errors.
    pub structural: bool,
}

impl Diagnostic {
    fn error(pos: Pos, message: impl Into<String>) -> Self {
        Diagnostic {
            severity: Severity::Error,
            pos,
            message: message.into(),
            hint: None,
            structural: false,
        }
    }

    fn warning(pos: Pos, message: impl Into<String>) -> Self {
        Diagnostic { severity: Severity::Warning, ..Diagnostic::error(pos, message) }
    }

    fn with_hint(mut self, hint: impl Into<String>) -> Self {
        self.hint = Some(hint.into());
        self
    }

    fn structural(mut self) -> Self {
        self.structural = true;
        self
    }
}

/// Result of a parse: diagnostics always, the model only when error-free.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseOutcome {
    pub model: Option<ModelFile>,
    pub diagnostics: Vec<Diagnostic>,
}

impl ParseOutcome {
    pub fn has_errors(&self) -> bool {
        self.diagnostics.iter().any(|d| d.severity == Severity::Error)
    }

    /// True when every error is structural (cycles) rather than syntactic.
    pub fn errors_are_structural(&self) -> bool {
        let errors: Vec<_> =
            self.diagnostics.iter().filter(|d| d.severity == Severity::Error).collect();
        !errors.is_empty() && errors.iter().all(|d| d.structural)
    }
}

pub fn parse(text: &str) -> ParseOutcome {
    let mut diagnostics = Vec::new();
    let (tokens, eof) = lex(text, &mut diagnostics);
    let raw = Parser::run(&tokens, eof, &mut diagnostics);
    let model = build(raw, &mut diagnostics);
    diagnostics.sort_by_key(|d| (d.pos, d.severity == Severity::Warning));
    if diagnostics.iter().any(|d| d.severity == Severity::Error) {
        ParseOutcome { model: None, diagnostics }
    } else {
        ParseOutcome { model: Some(model), diagnostics }
    }
}

// ---------------------------------------------------------------- lexing

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Word(String),
    LBrace,
    RBrace,
    Colon,
    Semi,
    Comma,
    Lt,
    LParen,
    RParen,
    Arrow,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Word(w) => format!("`{w}`"),
            Tok::LBrace => "`{`".into(),
            Tok::RBrace => "`}`".into(),
            Tok::Colon => "`:`".into(),
            Tok::Semi => "`;`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Lt => "`<`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Arrow => "`->`".into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Token {
    tok: Tok,
    pos: Pos,
}

fn is_word_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '.'
}

fn lex(text: &str, diagnostics: &mut Vec<Diagnostic>) -> (Vec<Token>, Pos) {
    fn advance(c: char, line: &mut usize, col: &mut usize) {
        if c == '\n' {
            *line += 1;
            *col = 1;
        } else {
            *col += 1;
        }
    }
    let mut tokens = Vec::new();
    let mut line = 1usize;
    let mut col = 1usize;
    let mut chars = text.chars().peekable();
    while let Some(c) = chars.next() {
        let pos = Pos { line, col };
        match c {
            '\n' | ' ' | '\t' | '\r' => advance(c, &mut line, &mut col),
            '#' => {
                advance(c, &mut line, &mut col);
                while let Some(&next) = chars.peek() {
                    if next == '\n' {
                        break;
                    }
                    chars.next();
                    advance(next, &mut line, &mut col);
                }
            }
            '{' | '}' | ':' | ';' | ',' | '<' | '(' | ')' => {
                let tok = match c {
                    '{' => Tok::LBrace,
                    '}' => Tok::RBrace,
                    ':' => Tok::Colon,
                    ';' => Tok::Semi,
                    ',' => Tok::Comma,
                    '<' => Tok::Lt,
                    '(' => Tok::LParen,
                    _ => Tok::RParen,
                };
                tokens.push(Token { tok, pos });
                advance(c, &mut line, &mut col);
            }
            '-' => {
                advance(c, &mut line, &mut col);
                if chars.peek() == Some(&'>') {
                    chars.next();
                    advance('>', &mut line, &mut col);
                    tokens.push(Token { tok: Tok::Arrow, pos });
                } else {
                    diagnostics.push(
                        Diagnostic::error(pos, "unexpected character `-`")
                            .with_hint("mappings use `->`"),
                    );
                }
            }
            c if is_word_char(c) => {
                let mut word = String::new();
                word.push(c);
                advance(c, &mut line, &mut col);
                while let Some(&next) = chars.peek() {
                    if !is_word_char(next) {
                        break;
                    }
                    word.push(next);
                    chars.next();
                    advance(next, &mut line, &mut col);
                }
                tokens.push(Token { tok: Tok::Word(word), pos });
            }
            other => {
                diagnostics.push(Diagnostic::error(
                    pos,
                    format!("unexpected character `{other}`"),
                ));
                advance(other, &mut line, &mut col);
            }
        }
    }
    (tokens, Pos { line, col })
}

// ------------------------------------------------------------- raw items

#[derive(Debug, Clone, PartialEq, Eq)]
struct Spanned<T> {
    value: T,
    pos: Pos,
}

#[derive(Debug)]
struct RawPoset {
    name: Spanned<String>,
    elements: Vec<Spanned<String>>,
    covers: Vec<(Spanned<String>, Spanned<String>)>,
}

#[derive(Debug)]
struct RawPartition {
    name: Spanned<String>,
    poset: Spanned<String>,
    blocks: Vec<(Pos, Vec<Spanned<String>>)>,
}

#[derive(Debug)]
struct RawGame {
    name: Spanned<String>,
    players: Vec<(Spanned<usize>, Vec<Spanned<String>>)>,
    payoffs: Vec<(Spanned<usize>, Spanned<String>)>,
    outcomes: Vec<(Pos, Vec<Spanned<String>>, Spanned<String>)>,
}

/// One `(decision, state) -> outcome` mapping with its source position.
type RawStochMap = (Pos, Spanned<String>, Spanned<String>, Spanned<String>);

#[derive(Debug)]
struct RawStoch {
    name: Spanned<String>,
    states: Vec<(Spanned<String>, Spanned<String>)>,
    decisions: Vec<Spanned<String>>,
    outcome_poset: Option<Spanned<String>>,
    maps: Vec<RawStochMap>,
}

#[derive(Debug, Default)]
struct RawModel {
    posets: Vec<RawPoset>,
    partitions: Vec<RawPartition>,
    games: Vec<RawGame>,
    stochs: Vec<RawStoch>,
}

// --------------------------------------------------------- syntactic pass

struct Parser<'a> {
    tokens: &'a [Token],
    index: usize,
    eof: Pos,
    diagnostics: &'a mut Vec<Diagnostic>,
}

impl<'a> Parser<'a> {
    fn run(tokens: &'a [Token], eof: Pos, diagnostics: &'a mut Vec<Diagnostic>) -> RawModel {
        let mut parser = Parser { tokens, index: 0, eof, diagnostics };
        let mut raw = RawModel::default();
        while let Some(token) = parser.peek() {
            let pos = token.pos;
            match &token.tok {
                Tok::Word(w) => match w.as_str() {
                    "poset" => {
                        parser.advance();
                        if let Some(p) = parser.poset_block() {
                            raw.posets.push(p);
                        }
                    }
                    "partition" => {
                        parser.advance();
                        if let Some(p) = parser.partition_block() {
                            raw.partitions.push(p);
                        }
                    }
                    "game" => {
                        parser.advance();
                        if let Some(g) = parser.game_block() {
                            raw.games.push(g);
                        }
                    }
                    "stoch" => {
                        parser.advance();
                        if let Some(s) = parser.stoch_block() {
                            raw.stochs.push(s);
                        }
                    }
                    other => {
                        parser.error(
                            pos,
                            format!(
                                "expected `poset`, `partition`, `game`, or `stoch`, found `{other}`"
                            ),
                        );
                        parser.advance();
                        parser.recover_top();
                    }
                },
                other => {
                    parser.error(pos, format!("expected a declaration, found {}", other.describe()));
                    parser.advance();
                    parser.recover_top();
                }
            }
        }
        raw
    }

    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.index)
    }

    fn advance(&mut self) -> Option<&Token> {
        let token = self.tokens.get(self.index);
        if token.is_some() {
            self.index += 1;
        }
        token
    }

    fn here(&self) -> Pos {
        self.peek().map(|t| t.pos).unwrap_or(self.eof)
    }

    fn error(&mut self, pos: Pos, message: impl Into<String>) {
        self.diagnostics.push(Diagnostic::error(pos, message));
    }

    /// Consumes the expected punctuation or reports what stood in its place.
    fn expect(&mut self, tok: Tok) -> bool {
        match self.peek() {
            Some(t) if t.tok == tok => {
                self.advance();
                true
            }
            Some(t) => {
                let (pos, found) = (t.pos, t.tok.describe());
                self.error(pos, format!("expected {}, found {}", tok.describe(), found));
                false
            }
            None => {
                let pos = self.eof;
                self.error(pos, format!("expected {}, found end of file", tok.describe()));
                false
            }
        }
    }

    /// Consumes an identifier word. Words with `.` are lexed for decimal
    /// literals and are not identifiers.
    fn ident(&mut self, what: &str) -> Option<Spanned<String>> {
        match self.peek() {
            Some(Token { tok: Tok::Word(w), pos }) => {
                let (word, pos) = (w.clone(), *pos);
                if word.contains('.') {
                    self.error(pos, format!("invalid identifier `{word}`"));
                    self.advance();
                    return None;
                }
                self.advance();
                Some(Spanned { value: word, pos })
            }
            Some(t) => {
                let (pos, found) = (t.pos, t.tok.describe());
                self.error(pos, format!("expected {what}, found {found}"));
                None
            }
            None => {
                let pos = self.eof;
                self.error(pos, format!("expected {what}, found end of file"));
                None
            }
        }
    }

    fn number(&mut self, what: &str) -> Option<Spanned<usize>> {
        let word = self.ident(what)?;
        match word.value.parse::<usize>() {
            Ok(n) => Some(Spanned { value: n, pos: word.pos }),
            Err(_) => {
                self.error(word.pos, format!("expected {what}, found `{}`", word.value));
                None
            }
        }
    }

    /// Skips past the next `;`, stopping short of `}` and end of file.
    /// Balanced braces encountered on the way are skipped whole.
    fn recover_statement(&mut self) {
        loop {
            match self.peek().map(|t| t.tok.clone()) {
                None => return,
                Some(Tok::Semi) => {
                    self.advance();
                    return;
                }
                Some(Tok::RBrace) => return,
                Some(Tok::LBrace) => {
                    self.advance();
                    self.skip_braces(1);
                }
                Some(_) => {
                    self.advance();
                }
            }
        }
    }

    /// Skips to the next top-level declaration keyword.
    fn recover_top(&mut self) {
        loop {
            match self.peek().map(|t| t.tok.clone()) {
                None => return,
                Some(Tok::Word(w))
                    if matches!(w.as_str(), "poset" | "partition" | "game" | "stoch") =>
                {
                    return
                }
                Some(Tok::LBrace) => {
                    self.advance();
                    self.skip_braces(1);
                }
                Some(_) => {
                    self.advance();
                }
            }
        }
    }

    fn skip_braces(&mut self, mut depth: usize) {
        while depth > 0 {
            match self.advance().map(|t| t.tok.clone()) {
                None => return,
                Some(Tok::LBrace) => depth += 1,
                Some(Tok::RBrace) => depth -= 1,
                Some(_) => {}
            }
        }
    }

    /// Parses a block body, dispatching each statement on its keyword.
    /// Returns false when the closing brace never arrived.
    fn block<F: FnMut(&mut Self, Spanned<String>)>(&mut self, mut statement: F) -> bool {
        if !self.expect(Tok::LBrace) {
            self.recover_top();
            return false;
        }
        loop {
            match self.peek() {
                None => {
                    let pos = self.eof;
                    self.error(pos, "unexpected end of file inside a block");
                    return false;
                }
                Some(t) if t.tok == Tok::RBrace => {
                    self.advance();
                    return true;
                }
                Some(Token { tok: Tok::Word(w), pos }) => {
                    let keyword = Spanned { value: w.clone(), pos: *pos };
                    self.advance();
                    statement(self, keyword);
                }
                Some(t) => {
                    let (pos, found) = (t.pos, t.tok.describe());
                    self.error(pos, format!("expected a section keyword, found {found}"));
                    self.advance();
                    self.recover_statement();
                }
            }
        }
    }

    /// Comma-separated list closed by `;`. The item parser returns false to
    /// abort the whole statement (recovery already done).
    fn list<F: FnMut(&mut Self) -> bool>(&mut self, mut item: F) {
        if self.peek().map(|t| t.tok == Tok::Semi).unwrap_or(false) {
            self.advance();
            return;
        }
        loop {
            if !item(self) {
                return;
            }
            match self.peek().map(|t| t.tok.clone()) {
                Some(Tok::Comma) => {
                    self.advance();
                }
                Some(Tok::Semi) => {
                    self.advance();
                    return;
                }
                Some(other) => {
                    let pos = self.here();
                    self.error(pos, format!("expected `,` or `;`, found {}", other.describe()));
                    self.recover_statement();
                    return;
                }
                None => {
                    let pos = self.eof;
                    self.error(pos, "expected `,` or `;`, found end of file");
                    return;
                }
            }
        }
    }

    fn poset_block(&mut self) -> Option<RawPoset> {
        let name = match self.ident("a poset name") {
            Some(n) => n,
            None => {
                self.recover_top();
                return None;
            }
        };
        let mut elements = Vec::new();
        let mut covers = Vec::new();
        self.block(|p, keyword| match keyword.value.as_str() {
            "elements" => {
                if !p.expect(Tok::Colon) {
                    p.recover_statement();
                    return;
                }
                p.list(|p| match p.ident("an element name") {
                    Some(e) => {
                        elements.push(e);
                        true
                    }
                    None => {
                        p.recover_statement();
                        false
                    }
                });
            }
            "covers" => {
                if !p.expect(Tok::Colon) {
                    p.recover_statement();
                    return;
                }
                p.list(|p| {
                    let a = match p.ident("an element name") {
                        Some(a) => a,
                        None => {
                            p.recover_statement();
                            return false;
                        }
                    };
                    if !p.expect(Tok::Lt) {
                        p.recover_statement();
                        return false;
                    }
                    let b = match p.ident("an element name") {
                        Some(b) => b,
                        None => {
                            p.recover_statement();
                            return false;
                        }
                    };
                    covers.push((a, b));
                    true
                });
            }
            other => {
                p.error(
                    keyword.pos,
                    format!("expected `elements` or `covers`, found `{other}`"),
                );
                p.recover_statement();
            }
        });
        Some(RawPoset { name, elements, covers })
    }

    fn partition_block(&mut self) -> Option<RawPartition> {
        let name = match self.ident("a partition name") {
            Some(n) => n,
            None => {
                self.recover_top();
                return None;
            }
        };
        match self.peek() {
            Some(Token { tok: Tok::Word(w), .. }) if w == "on" => {
                self.advance();
            }
            _ => {
                let pos = self.here();
                self.error(pos, "expected `on` after the partition name");
                self.recover_top();
                return None;
            }
        }
        let poset = match self.ident("a poset name") {
            Some(p) => p,
            None => {
                self.recover_top();
                return None;
            }
        };
        let mut blocks = Vec::new();
        self.block(|p, keyword| match keyword.value.as_str() {
            "blocks" => {
                if !p.expect(Tok::Colon) {
                    p.recover_statement();
                    return;
                }
                p.list(|p| {
                    let open = p.here();
                    if !p.expect(Tok::LParen) {
                        p.recover_statement();
                        return false;
                    }
                    let mut members = Vec::new();
                    loop {
                        if p.peek().map(|t| t.tok == Tok::RParen).unwrap_or(false) {
                            p.advance();
                            break;
                        }
                        match p.ident("an element name") {
                            Some(e) => members.push(e),
                            None => {
                                p.recover_statement();
                                return false;
                            }
                        }
                        match p.peek().map(|t| t.tok.clone()) {
                            Some(Tok::Comma) => {
                                p.advance();
                            }
                            Some(Tok::RParen) => {
                                p.advance();
                                break;
                            }
                            other => {
                                let pos = p.here();
                                let found = other
                                    .map(|t| t.describe())
                                    .unwrap_or_else(|| "end of file".into());
                                p.error(pos, format!("expected `,` or `)`, found {found}"));
                                p.recover_statement();
                                return false;
                            }
                        }
                    }
                    blocks.push((open, members));
                    true
                });
            }
            other => {
                p.error(keyword.pos, format!("expected `blocks`, found `{other}`"));
                p.recover_statement();
            }
        });
        Some(RawPartition { name, poset, blocks })
    }

    fn game_block(&mut self) -> Option<RawGame> {
        let name = match self.ident("a game name") {
            Some(n) => n,
            None => {
                self.recover_top();
                return None;
            }
        };
        let mut players = Vec::new();
        let mut payoffs = Vec::new();
        let mut outcomes = Vec::new();
        self.block(|p, keyword| match keyword.value.as_str() {
            "player" => {
                let index = match p.number("a player number") {
                    Some(k) => k,
                    None => {
                        p.recover_statement();
                        return;
                    }
                };
                match p.peek() {
                    Some(Token { tok: Tok::Word(w), .. }) if w == "strategies" => {
                        p.advance();
                    }
                    _ => {
                        let pos = p.here();
                        p.error(pos, "expected `strategies` after the player number");
                        p.recover_statement();
                        return;
                    }
                }
                if !p.expect(Tok::Colon) {
                    p.recover_statement();
                    return;
                }
                let mut strategies = Vec::new();
                p.list(|p| match p.ident("a strategy name") {
                    Some(s) => {
                        strategies.push(s);
                        true
                    }
                    None => {
                        p.recover_statement();
                        false
                    }
                });
                players.push((index, strategies));
            }
            "payoff" => {
                let index = match p.number("a player number") {
                    Some(k) => k,
                    None => {
                        p.recover_statement();
                        return;
                    }
                };
                if !p.expect(Tok::Colon) {
                    p.recover_statement();
                    return;
                }
                match p.peek() {
                    Some(Token { tok: Tok::Word(w), .. }) if w == "poset" => {
                        p.advance();
                    }
                    _ => {
                        let pos = p.here();
                        p.error(pos, "expected `poset` naming the payoff order");
                        p.recover_statement();
                        return;
                    }
                }
                let poset = match p.ident("a poset name") {
                    Some(n) => n,
                    None => {
                        p.recover_statement();
                        return;
                    }
                };
                if !p.expect(Tok::Semi) {
                    p.recover_statement();
                    return;
                }
                payoffs.push((index, poset));
            }
            "outcome" => {
                let open = p.here();
                if !p.expect(Tok::LParen) {
                    p.recover_statement();
                    return;
                }
                let mut profile = Vec::new();
                loop {
                    match p.ident("a strategy name") {
                        Some(s) => profile.push(s),
                        None => {
                            p.recover_statement();
                            return;
                        }
                    }
                    match p.peek().map(|t| t.tok.clone()) {
                        Some(Tok::Comma) => {
                            p.advance();
                        }
                        Some(Tok::RParen) => {
                            p.advance();
                            break;
                        }
                        other => {
                            let pos = p.here();
                            let found = other
                                .map(|t| t.describe())
                                .unwrap_or_else(|| "end of file".into());
                            p.error(pos, format!("expected `,` or `)`, found {found}"));
                            p.recover_statement();
                            return;
                        }
                    }
                }
                if !p.expect(Tok::Arrow) {
                    p.recover_statement();
                    return;
                }
                let element = match p.ident("an outcome element") {
                    Some(e) => e,
                    None => {
                        p.recover_statement();
                        return;
                    }
                };
                if !p.expect(Tok::Semi) {
                    p.recover_statement();
                    return;
                }
                outcomes.push((open, profile, element));
            }
            other => {
                p.error(
                    keyword.pos,
                    format!("expected `player`, `payoff`, or `outcome`, found `{other}`"),
                );
                p.recover_statement();
            }
        });
        Some(RawGame { name, players, payoffs, outcomes })
    }

    fn stoch_block(&mut self) -> Option<RawStoch> {
        let name = match self.ident("a stoch name") {
            Some(n) => n,
            None => {
                self.recover_top();
                return None;
            }
        };
        let mut states = Vec::new();
        let mut decisions = Vec::new();
        let mut outcome_poset = None;
        let mut maps = Vec::new();
        self.block(|p, keyword| match keyword.value.as_str() {
            "states" => {
                if !p.expect(Tok::Colon) {
                    p.recover_statement();
                    return;
                }
                p.list(|p| {
                    let state = match p.ident("a state name") {
                        Some(s) => s,
                        None => {
                            p.recover_statement();
                            return false;
                        }
                    };
                    match p.peek() {
                        Some(Token { tok: Tok::Word(w), .. }) if w == "prob" => {
                            p.advance();
                        }
                        _ => {
                            let pos = p.here();
                            p.error(pos, "expected `prob` after the state name");
                            p.recover_statement();
                            return false;
                        }
                    }
                    let prob = match p.peek() {
                        Some(Token { tok: Tok::Word(w), pos }) => {
                            let spanned = Spanned { value: w.clone(), pos: *pos };
                            p.advance();
                            spanned
                        }
                        _ => {
                            let pos = p.here();
                            p.error(pos, "expected a probability");
                            p.recover_statement();
                            return false;
                        }
                    };
                    states.push((state, prob));
                    true
                });
            }
            "decisions" => {
                if !p.expect(Tok::Colon) {
                    p.recover_statement();
                    return;
                }
                p.list(|p| match p.ident("a decision name") {
                    Some(d) => {
                        decisions.push(d);
                        true
                    }
                    None => {
                        p.recover_statement();
                        false
                    }
                });
            }
            "outcomes" => {
                if !p.expect(Tok::Colon) {
                    p.recover_statement();
                    return;
                }
                match p.peek() {
                    Some(Token { tok: Tok::Word(w), .. }) if w == "poset" => {
                        p.advance();
                    }
                    _ => {
                        let pos = p.here();
                        p.error(pos, "expected `poset` naming the outcome order");
                        p.recover_statement();
                        return;
                    }
                }
                let poset = match p.ident("a poset name") {
                    Some(n) => n,
                    None => {
                        p.recover_statement();
                        return;
                    }
                };
                if !p.expect(Tok::Semi) {
                    p.recover_statement();
                    return;
                }
                outcome_poset = Some(poset);
            }
            "map" => {
                let open = p.here();
                if !p.expect(Tok::LParen) {
                    p.recover_statement();
                    return;
                }
                let decision = match p.ident("a decision name") {
                    Some(d) => d,
                    None => {
                        p.recover_statement();
                        return;
                    }
                };
                if !p.expect(Tok::Comma) {
                    p.recover_statement();
                    return;
                }
                let state = match p.ident("a state name") {
                    Some(s) => s,
                    None => {
                        p.recover_statement();
                        return;
                    }
                };
                if !p.expect(Tok::RParen) {
                    p.recover_statement();
                    return;
                }
                if !p.expect(Tok::Arrow) {
                    p.recover_statement();
                    return;
                }
                let outcome = match p.ident("an outcome element") {
                    Some(o) => o,
                    None => {
                        p.recover_statement();
                        return;
                    }
                };
                if !p.expect(Tok::Semi) {
                    p.recover_statement();
                    return;
                }
                maps.push((open, decision, state, outcome));
            }
            other => {
                p.error(
                    keyword.pos,
                    format!(
                        "expected `states`, `decisions`, `outcomes`, or `map`, found `{other}`"
                    ),
                );
                p.recover_statement();
            }
        });
        Some(RawStoch { name, states, decisions, outcome_poset, maps })
    }
}

// --------------------------------------------------------- semantic pass

fn build(raw: RawModel, diagnostics: &mut Vec<Diagnostic>) -> ModelFile {
    let mut model = ModelFile::default();
    for raw_poset in &raw.posets {
        build_poset(raw_poset, &mut model, diagnostics);
    }
    for raw_partition in &raw.partitions {
        build_partition(raw_partition, &mut model, diagnostics);
    }
    for raw_game in &raw.games {
        build_game(raw_game, &mut model, diagnostics);
    }
    for raw_stoch in &raw.stochs {
        build_stoch(raw_stoch, &mut model, diagnostics);
    }
    model
}

fn build_poset(raw: &RawPoset, model: &mut ModelFile, diagnostics: &mut Vec<Diagnostic>) {
    if model.poset(&raw.name.value).is_some() {
        diagnostics.push(Diagnostic::error(
            raw.name.pos,
            format!("poset `{}` is declared twice", raw.name.value),
        ));
        return;
    }
    let mut ok = true;
    for (i, element) in raw.elements.iter().enumerate() {
        if raw.elements[..i].iter().any(|e| e.value == element.value) {
            diagnostics.push(Diagnostic::error(
                element.pos,
                format!("duplicate element `{}`", element.value),
            ));
            ok = false;
        }
    }
    if !ok {
        return;
    }
    let ground = GroundSet::new(raw.elements.iter().map(|e| e.value.clone()))
        .expect("duplicates were checked");
    for (a, b) in &raw.covers {
        for side in [a, b] {
            if !ground.contains(&side.value) {
                diagnostics.push(
                    Diagnostic::error(side.pos, format!("unknown element `{}`", side.value))
                        .with_hint("declare it in the `elements:` list"),
                );
                ok = false;
            }
        }
        if a.value == b.value && ground.contains(&a.value) {
            diagnostics.push(
                Diagnostic::error(
                    a.pos,
                    format!("element `{}` related to itself", a.value),
                )
                .structural(),
            );
            ok = false;
        }
    }
    if !ok {
        return;
    }
    let poset = Poset::from_covers(
        ground,
        raw.covers.iter().map(|(a, b)| (a.value.as_str(), b.value.as_str())),
    );
    match poset {
        Ok(poset) => {
            model.posets.push(PosetEntry {
                name: raw.name.value.clone(),
                poset,
                pos: raw.name.pos,
            });
        }
        Err(err @ OrderError::Cycle(_)) => {
            diagnostics.push(
                Diagnostic::error(raw.name.pos, err.to_string())
                    .with_hint("remove one of the covers along the cycle")
                    .structural(),
            );
        }
        Err(err) => {
            diagnostics.push(Diagnostic::error(raw.name.pos, err.to_string()));
        }
    }
}

fn build_partition(raw: &RawPartition, model: &mut ModelFile, diagnostics: &mut Vec<Diagnostic>) {
    if model.partition(&raw.name.value).is_some() {
        diagnostics.push(Diagnostic::error(
            raw.name.pos,
            format!("partition `{}` is declared twice", raw.name.value),
        ));
        return;
    }
    let poset = match model.poset(&raw.poset.value) {
        Some(entry) => entry.poset.clone(),
        None => {
            diagnostics.push(Diagnostic::error(
                raw.poset.pos,
                format!("unknown poset `{}`", raw.poset.value),
            ));
            return;
        }
    };
    let ground = poset.ground();
    let mut ok = true;
    let mut seen: BTreeSet<&str> = BTreeSet::new();
    for (open, members) in &raw.blocks {
        if members.is_empty() {
            diagnostics.push(Diagnostic::error(*open, "partition block is empty"));
            ok = false;
        }
        for member in members {
            if !ground.contains(&member.value) {
                diagnostics.push(Diagnostic::error(
                    member.pos,
                    format!("unknown element `{}`", member.value),
                ));
                ok = false;
            } else if !seen.insert(member.value.as_str()) {
                diagnostics.push(Diagnostic::error(
                    member.pos,
                    format!("element `{}` appears in more than one block", member.value),
                ));
                ok = false;
            }
        }
    }
    for element in ground.iter() {
        if !seen.contains(element) {
            diagnostics.push(
                Diagnostic::error(
                    raw.name.pos,
                    format!("element `{element}` is missing from every block"),
                )
                .with_hint("every element must appear in exactly one block"),
            );
            ok = false;
        }
    }
    if !ok {
        return;
    }
    let partition = Partition::new(
        ground.clone(),
        raw.blocks.iter().map(|(_, members)| members.iter().map(|m| m.value.as_str())),
    )
    .expect("blocks were checked");
    model.partitions.push(PartitionEntry {
        name: raw.name.value.clone(),
        poset_name: raw.poset.value.clone(),
        partition,
        pos: raw.name.pos,
    });
}

fn build_game(raw: &RawGame, model: &mut ModelFile, diagnostics: &mut Vec<Diagnostic>) {
    if model.game(&raw.name.value).is_some() {
        diagnostics.push(Diagnostic::error(
            raw.name.pos,
            format!("game `{}` is declared twice", raw.name.value),
        ));
        return;
    }
    let players = raw.players.len();
    if players < 2 {
        diagnostics.push(Diagnostic::error(
            raw.name.pos,
            "a game needs at least two players",
        ));
        return;
    }
    let mut ok = true;
    let mut strategies: Vec<Vec<String>> = vec![Vec::new(); players];
    let mut seen_players = vec![false; players];
    for (index, list) in &raw.players {
        if index.value == 0 || index.value > players {
            diagnostics.push(Diagnostic::error(
                index.pos,
                format!(
                    "player numbers must run from 1 to {players}, found {}",
                    index.value
                ),
            ));
            ok = false;
            continue;
        }
        let slot = index.value - 1;
        if seen_players[slot] {
            diagnostics.push(Diagnostic::error(
                index.pos,
                format!("player {} is declared twice", index.value),
            ));
            ok = false;
            continue;
        }
        seen_players[slot] = true;
        let mut names = Vec::new();
        for (i, strategy) in list.iter().enumerate() {
            if list[..i].iter().any(|s| s.value == strategy.value) {
                diagnostics.push(Diagnostic::error(
                    strategy.pos,
                    format!("duplicate strategy `{}`", strategy.value),
                ));
                ok = false;
            } else {
                names.push(strategy.value.clone());
            }
        }
        if names.is_empty() {
            diagnostics.push(Diagnostic::error(
                index.pos,
                format!("player {} has no strategies", index.value),
            ));
            ok = false;
        }
        strategies[slot] = names;
    }
    let mut payoff_names: Vec<Option<Spanned<String>>> = vec![None; players];
    for (index, poset) in &raw.payoffs {
        if index.value == 0 || index.value > players {
            diagnostics.push(Diagnostic::error(
                index.pos,
                format!(
                    "player numbers must run from 1 to {players}, found {}",
                    index.value
                ),
            ));
            ok = false;
            continue;
        }
        let slot = index.value - 1;
        if payoff_names[slot].is_some() {
            diagnostics.push(Diagnostic::error(
                index.pos,
                format!("payoff for player {} is declared twice", index.value),
            ));
            ok = false;
            continue;
        }
        payoff_names[slot] = Some(poset.clone());
    }
    let mut payoff_posets: Vec<Poset> = Vec::new();
    let mut poset_names: Vec<String> = Vec::new();
    for (slot, name) in payoff_names.iter().enumerate() {
        match name {
            Some(spanned) => match model.poset(&spanned.value) {
                Some(entry) => {
                    payoff_posets.push(entry.poset.clone());
                    poset_names.push(spanned.value.clone());
                }
                None => {
                    diagnostics.push(Diagnostic::error(
                        spanned.pos,
                        format!("unknown poset `{}`", spanned.value),
                    ));
                    ok = false;
                }
            },
            None => {
                if seen_players[slot] {
                    diagnostics.push(Diagnostic::error(
                        raw.name.pos,
                        format!("no payoff poset for player {}", slot + 1),
                    ));
                }
                ok = false;
            }
        }
    }
    if !ok || seen_players.iter().any(|&s| !s) {
        for (slot, seen) in seen_players.iter().enumerate() {
            if !seen {
                diagnostics.push(Diagnostic::error(
                    raw.name.pos,
                    format!("no strategies declared for player {}", slot + 1),
                ));
            }
        }
        return;
    }

    let counts: Vec<usize> = strategies.iter().map(Vec::len).collect();
    let profile_count: usize = counts.iter().product();
    let rank_of = |profile: &[usize]| -> usize {
        profile.iter().zip(&counts).fold(0, |rank, (&s, &c)| rank * c + s)
    };
    let mut tables: Vec<Vec<Option<usize>>> = vec![vec![None; profile_count]; players];
    let mut first_pos: Vec<Option<Pos>> = vec![None; profile_count];
    for (open, profile, element) in &raw.outcomes {
        if profile.len() != players {
            diagnostics.push(Diagnostic::error(
                *open,
                format!("profile has {} entries, expected {players}", profile.len()),
            ));
            ok = false;
            continue;
        }
        let mut indices = Vec::with_capacity(players);
        let mut resolved = true;
        for (player, strategy) in profile.iter().enumerate() {
            match strategies[player].iter().position(|s| *s == strategy.value) {
                Some(i) => indices.push(i),
                None => {
                    diagnostics.push(Diagnostic::error(
                        strategy.pos,
                        format!(
                            "unknown strategy `{}` for player {}",
                            strategy.value,
                            player + 1
                        ),
                    ));
                    ok = false;
                    resolved = false;
                }
            }
        }
        if !resolved {
            continue;
        }
        let rank = rank_of(&indices);
        if first_pos[rank].is_some() {
            let names: Vec<&str> = profile.iter().map(|s| s.value.as_str()).collect();
            diagnostics.push(Diagnostic::error(
                *open,
                format!("profile ({}) is mapped twice", names.join(", ")),
            ));
            ok = false;
            continue;
        }
        first_pos[rank] = Some(*open);
        for (player, poset) in payoff_posets.iter().enumerate() {
            match poset.ground().index_of(&element.value) {
                Some(e) => tables[player][rank] = Some(e),
                None => {
                    diagnostics.push(Diagnostic::error(
                        element.pos,
                        format!(
                            "outcome `{}` is not an element of poset `{}`",
                            element.value, poset_names[player]
                        ),
                    ));
                    ok = false;
                }
            }
        }
    }
    for (rank, seen) in first_pos.iter().enumerate() {
        if seen.is_none() {
            let mut remainder = rank;
            let mut names = vec![""; players];
            for player in (0..players).rev() {
                names[player] = &strategies[player][remainder % counts[player]];
                remainder /= counts[player];
            }
            diagnostics.push(
                Diagnostic::error(
                    raw.name.pos,
                    format!("no outcome for profile ({})", names.join(", ")),
                )
                .with_hint("every strategy profile must be mapped exactly once"),
            );
            ok = false;
        }
    }
    if !ok {
        return;
    }
    let payoffs: Vec<Vec<usize>> = tables
        .into_iter()
        .map(|t| t.into_iter().map(|e| e.expect("profiles were checked")).collect())
        .collect();
    let game = OrdinalGame::from_tables(strategies, payoff_posets, payoffs)
        .expect("tables were checked");
    model.games.push(GameEntry {
        name: raw.name.value.clone(),
        payoff_poset_names: poset_names,
        game,
        pos: raw.name.pos,
    });
}

fn build_stoch(raw: &RawStoch, model: &mut ModelFile, diagnostics: &mut Vec<Diagnostic>) {
    if model.stoch(&raw.name.value).is_some() {
        diagnostics.push(Diagnostic::error(
            raw.name.pos,
            format!("stoch `{}` is declared twice", raw.name.value),
        ));
        return;
    }
    let mut ok = true;
    let mut states: Vec<(String, BigRational)> = Vec::new();
    for (state, prob) in &raw.states {
        if states.iter().any(|(s, _)| *s == state.value) {
            diagnostics.push(Diagnostic::error(
                state.pos,
                format!("state `{}` is declared twice", state.value),
            ));
            ok = false;
            continue;
        }
        match parse_decimal(&prob.value) {
            Some(value) => {
                if value.is_zero() {
                    diagnostics.push(Diagnostic::warning(
                        state.pos,
                        format!("state `{}` has probability 0", state.value),
                    ));
                }
                states.push((state.value.clone(), value));
            }
            None => {
                diagnostics.push(
                    Diagnostic::error(
                        prob.pos,
                        format!("invalid probability `{}`", prob.value),
                    )
                    .with_hint("use a plain decimal like 0.25"),
                );
                ok = false;
            }
        }
    }
    if ok {
        let sum: BigRational = states.iter().map(|(_, p)| p).sum();
        if sum != BigRational::from_integer(1.into()) {
            diagnostics.push(Diagnostic::error(
                raw.name.pos,
                format!("probabilities sum to {sum}, expected 1"),
            ));
            ok = false;
        }
    }
    for (i, decision) in raw.decisions.iter().enumerate() {
        if raw.decisions[..i].iter().any(|d| d.value == decision.value) {
            diagnostics.push(Diagnostic::error(
                decision.pos,
                format!("decision `{}` is declared twice", decision.value),
            ));
            ok = false;
        }
    }
    if raw.decisions.is_empty() {
        diagnostics.push(Diagnostic::error(
            raw.name.pos,
            "a decision model needs at least one decision",
        ));
        ok = false;
    }
    let poset = match &raw.outcome_poset {
        Some(name) => match model.poset(&name.value) {
            Some(entry) => Some((name.value.clone(), entry.poset.clone())),
            None => {
                diagnostics.push(Diagnostic::error(
                    name.pos,
                    format!("unknown poset `{}`", name.value),
                ));
                None
            }
        },
        None => {
            diagnostics.push(Diagnostic::error(
                raw.name.pos,
                "missing `outcomes:` section",
            ));
            None
        }
    };
    let (poset_name, poset) = match poset {
        Some(pair) if ok => pair,
        _ => return,
    };

    let decision_names: Vec<&str> = raw.decisions.iter().map(|d| d.value.as_str()).collect();
    let state_names: Vec<&str> = states.iter().map(|(s, _)| s.as_str()).collect();
    let mut assigned: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut triples = Vec::new();
    for (open, decision, state, outcome) in &raw.maps {
        let d = decision_names.iter().position(|n| *n == decision.value);
        if d.is_none() {
            diagnostics.push(Diagnostic::error(
                decision.pos,
                format!("unknown decision `{}`", decision.value),
            ));
            ok = false;
        }
        let s = state_names.iter().position(|n| *n == state.value);
        if s.is_none() {
            diagnostics.push(Diagnostic::error(
                state.pos,
                format!("unknown state `{}`", state.value),
            ));
            ok = false;
        }
        if !poset.ground().contains(&outcome.value) {
            diagnostics.push(Diagnostic::error(
                outcome.pos,
                format!(
                    "outcome `{}` is not an element of poset `{poset_name}`",
                    outcome.value
                ),
            ));
            ok = false;
        }
        if let (Some(d), Some(s)) = (d, s) {
            if !assigned.insert((d, s)) {
                diagnostics.push(Diagnostic::error(
                    *open,
                    format!(
                        "outcome for decision `{}` in state `{}` is assigned twice",
                        decision.value, state.value
                    ),
                ));
                ok = false;
            }
        }
        triples.push((decision.value.clone(), state.value.clone(), outcome.value.clone()));
    }
    for (d, decision) in decision_names.iter().enumerate() {
        for (s, state) in state_names.iter().enumerate() {
            if !assigned.contains(&(d, s)) {
                diagnostics.push(
                    Diagnostic::error(
                        raw.name.pos,
                        format!(
                            "no outcome assigned for decision `{decision}` in state `{state}`"
                        ),
                    )
                    .with_hint("every (decision, state) pair must be mapped exactly once"),
                );
                ok = false;
            }
        }
    }
    if !ok {
        return;
    }
    let space = FiniteProbabilitySpace::new(states).expect("states were checked");
    let decisions = raw.decisions.iter().map(|d| d.value.clone()).collect();
    let model_obj = DecisionModel::new(space, decisions, poset, triples)
        .expect("assignments were checked");
    model.stochs.push(StochEntry {
        name: raw.name.value.clone(),
        outcome_poset_name: poset_name,
        model: model_obj,
        pos: raw.name.pos,
    });
}
