//! Declarative experiment definitions.
//!
//! A definition file is line-based text: a `version 1` statement, then
//! sections opened by `[kind name]` headers holding `key = value` lines.
//! Definition sections (`list`, `stringset`, `set`, `pairing`) declare named
//! objects; step sections (`diagonal`, `induction`, `census`, `profiles`,
//! `audit`) reference earlier definitions and become the runnable plan, in
//! file order. `#` starts a comment; names are kebab-case. The full grammar
//! lives in `docs/DEFINITIONS.md`.
//!
//! Parsing and resolution happen in one pass, so every error names the line
//! and token it came from, and references only resolve to definitions made
//! earlier in the file.

use std::collections::{BTreeMap, BTreeSet};

use crate::census::{ends_in_three_equal, enumerate_strings, FiniteString, FiniteStringSet};
use crate::diagonal::DiagonalRule;
use crate::digits::{Digit, PeriodicDigitString};
use crate::error::{Error, Result};
use crate::list::{GeneratorFamily, ListSpec, TransfiniteList};
use crate::numerosity::{LabelledSet, MapExpr, PairingMap, SetExpr};

/// The definition-format version this parser accepts.
pub const FORMAT_VERSION: u64 = 1;

/// Default window for diagonal steps.
pub const DEFAULT_HORIZON: u64 = 256;
/// Default cutoff for induction steps.
pub const DEFAULT_N_MAX: u64 = 1_000;
/// Default cutoff for profile comparisons and audit count windows.
pub const DEFAULT_COUNT_WINDOW: u64 = 10_000;
/// Default cutoff for pairing audits.
pub const DEFAULT_AUDIT_WINDOW: u64 = 200;
/// Default sample count for sampled censuses.
pub const DEFAULT_SAMPLES: u64 = 100_000;

/// Which census walk a census step requests.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CensusModeChoice {
    /// Full enumeration when it fits the budget, prefix walk otherwise.
    Auto,
    Full,
    Prefixes,
    Sampled,
}

impl CensusModeChoice {
    pub fn parse(text: &str) -> Option<Self> {
        match text {
            "auto" => Some(CensusModeChoice::Auto),
            "full" => Some(CensusModeChoice::Full),
            "prefix" => Some(CensusModeChoice::Prefixes),
            "sampled" => Some(CensusModeChoice::Sampled),
            _ => None,
        }
    }
}

/// Command-line parameter overrides, applied to every step they fit.
#[derive(Debug, Clone, Copy, Default)]
pub struct Overrides {
    pub horizon: Option<u64>,
    pub n_max: Option<u64>,
    pub samples: Option<u64>,
    pub seed: Option<u64>,
    pub search_bound: Option<u64>,
    pub mode: Option<CensusModeChoice>,
}

/// One runnable step, fully resolved.
pub enum PlannedStep {
    Diagonal {
        name: String,
        list: TransfiniteList,
        rule: DiagonalRule,
        horizon: u64,
    },
    Induction {
        name: String,
        list: TransfiniteList,
        rule: DiagonalRule,
        n_max: u64,
        search_bound: Option<u64>,
    },
    Census {
        name: String,
        set: FiniteStringSet,
        rule: DiagonalRule,
        mode: CensusModeChoice,
        samples: u64,
        seed: u64,
    },
    Profiles {
        name: String,
        left: LabelledSet,
        right: LabelledSet,
        n_max: u64,
    },
    Audit {
        name: String,
        map: PairingMap,
        from: LabelledSet,
        to: LabelledSet,
        n_max: u64,
        compare_counts: bool,
        count_window: u64,
    },
}

impl PlannedStep {
    pub fn name(&self) -> &str {
        match self {
            PlannedStep::Diagonal { name, .. }
            | PlannedStep::Induction { name, .. }
            | PlannedStep::Census { name, .. }
            | PlannedStep::Profiles { name, .. }
            | PlannedStep::Audit { name, .. } => name,
        }
    }
}

/// A parsed and resolved definition file: the steps to run, in order.
pub struct ExperimentPlan {
    pub steps: Vec<PlannedStep>,
}

/// Parses a definition file and resolves it into a runnable plan.
pub fn parse_plan(text: &str, overrides: &Overrides) -> Result<ExperimentPlan> {
    Parser::new(overrides).run(text)
}

fn fail<T>(line: usize, token: &str, message: impl Into<String>) -> Result<T> {
    Err(Error::Definition {
        line,
        token: token.to_string(),
        message: message.into(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum SectionKind {
    List,
    StringSet,
    Set,
    Pairing,
    Diagonal,
    Induction,
    Census,
    Profiles,
    Audit,
}

impl SectionKind {
    fn parse(text: &str) -> Option<Self> {
        match text {
            "list" => Some(SectionKind::List),
            "stringset" => Some(SectionKind::StringSet),
            "set" => Some(SectionKind::Set),
            "pairing" => Some(SectionKind::Pairing),
            "diagonal" => Some(SectionKind::Diagonal),
            "induction" => Some(SectionKind::Induction),
            "census" => Some(SectionKind::Census),
            "profiles" => Some(SectionKind::Profiles),
            "audit" => Some(SectionKind::Audit),
            _ => None,
        }
    }
}

struct Section {
    kind: SectionKind,
    name: String,
    line: usize,
    entries: Vec<(String, String, usize)>,
}

impl Section {
    /// The value of `key`, consuming it so leftovers can be reported.
    fn take(&mut self, key: &str) -> Option<(String, usize)> {
        let index = self.entries.iter().position(|(k, _, _)| k == key)?;
        let (_, value, line) = self.entries.remove(index);
        Some((value, line))
    }

    fn require(&mut self, key: &str) -> Result<(String, usize)> {
        self.take(key).map_or_else(
            || {
                fail(
                    self.line,
                    &self.name,
                    format!("section is missing the '{key}' key"),
                )
            },
            Ok,
        )
    }

    fn reject_leftovers(&self) -> Result<()> {
        if let Some((key, _, line)) = self.entries.first() {
            return fail(*line, key, "unknown key for this section kind");
        }
        Ok(())
    }
}

struct Parser<'a> {
    overrides: &'a Overrides,
    lists: BTreeMap<String, TransfiniteList>,
    stringsets: BTreeMap<String, FiniteStringSet>,
    sets: BTreeMap<String, LabelledSet>,
    pairings: BTreeMap<String, PairingMap>,
    steps: Vec<PlannedStep>,
    defined: BTreeSet<(SectionKind, String)>,
}

impl<'a> Parser<'a> {
    fn new(overrides: &'a Overrides) -> Self {
        Parser {
            overrides,
            lists: BTreeMap::new(),
            stringsets: BTreeMap::new(),
            sets: BTreeMap::new(),
            pairings: BTreeMap::new(),
            steps: Vec::new(),
            defined: BTreeSet::new(),
        }
    }

    fn run(mut self, text: &str) -> Result<ExperimentPlan> {
        let mut section: Option<Section> = None;
        let mut version_seen = false;
        let mut last_line = 0;
        for (index, raw) in text.lines().enumerate() {
            let line = index + 1;
            last_line = line;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            if !version_seen {
                let Some(rest) = content.strip_prefix("version") else {
                    return fail(line, content, "the file must start with 'version 1'");
                };
                let number = rest.trim();
                if number != FORMAT_VERSION.to_string() {
                    return fail(line, number, format!("only version {FORMAT_VERSION} is supported"));
                }
                version_seen = true;
                continue;
            }
            if let Some(header) = content.strip_prefix('[') {
                let Some(header) = header.strip_suffix(']') else {
                    return fail(line, content, "section header must end with ']'");
                };
                if let Some(open) = section.take() {
                    self.finish(open)?;
                }
                section = Some(self.open_section(header, line)?);
                continue;
            }
            let Some((key, value)) = content.split_once('=') else {
                return fail(line, content, "expected 'key = value' or a section header");
            };
            let Some(open) = section.as_mut() else {
                return fail(line, content, "key-value line before any section");
            };
            let key = key.trim().to_string();
            if open.entries.iter().any(|(k, _, _)| *k == key) {
                return fail(line, &key, "duplicate key in this section");
            }
            open.entries.push((key, value.trim().to_string(), line));
        }
        if let Some(open) = section.take() {
            self.finish(open)?;
        }
        if !version_seen {
            return fail(1, "", "the file must start with 'version 1'");
        }
        if self.steps.is_empty() {
            return fail(last_line.max(1), "", "the file defines no runnable steps");
        }
        Ok(ExperimentPlan { steps: self.steps })
    }

    fn open_section(&mut self, header: &str, line: usize) -> Result<Section> {
        let mut parts = header.split_whitespace();
        let kind_text = parts.next().unwrap_or("");
        let Some(kind) = SectionKind::parse(kind_text) else {
            return fail(line, kind_text, "unknown section kind");
        };
        let Some(name) = parts.next() else {
            return fail(line, header, "section header needs a name: [kind name]");
        };
        if parts.next().is_some() {
            return fail(line, header, "section header takes exactly one name");
        }
        if !name
            .chars()
            .all(|c| c.is_ascii_lowercase() || c.is_ascii_digit() || c == '-')
        {
            return fail(line, name, "names use lowercase letters, digits, and '-'");
        }
        if !self.defined.insert((kind, name.to_string())) {
            return fail(line, name, "this kind already has a section with this name");
        }
        Ok(Section {
            kind,
            name: name.to_string(),
            line,
            entries: Vec::new(),
        })
    }

    fn finish(&mut self, section: Section) -> Result<()> {
        match section.kind {
            SectionKind::List => self.finish_list(section),
            SectionKind::StringSet => self.finish_stringset(section),
            SectionKind::Set => self.finish_set(section),
            SectionKind::Pairing => self.finish_pairing(section),
            SectionKind::Diagonal => self.finish_diagonal(section),
            SectionKind::Induction => self.finish_induction(section),
            SectionKind::Census => self.finish_census(section),
            SectionKind::Profiles => self.finish_profiles(section),
            SectionKind::Audit => self.finish_audit(section),
        }
    }

    fn finish_list(&mut self, mut section: Section) -> Result<()> {
        let base = match section.take("base") {
            Some((value, line)) => parse_number(&value, line)? as u32,
            None => 10,
        };
        let alphabet = match section.take("alphabet") {
            Some((value, line)) => parse_alphabet(&value, base, line)?,
            None => [Digit::ZERO, Digit::ONE].into_iter().collect(),
        };
        let prefix = match section.take("prefix") {
            Some((value, line)) => parse_entry_list(&value, base, line)?,
            None => Vec::new(),
        };
        let tail = match section.take("tail") {
            Some((value, line)) => parse_entry_list(&value, base, line)?,
            None => Vec::new(),
        };
        let (generator_text, generator_line) = section.require("generator")?;
        let generator = parse_generator(&generator_text, base, generator_line)?;
        let horizon = match section.take("horizon") {
            Some((value, line)) => parse_number(&value, line)?,
            None => DEFAULT_HORIZON,
        };
        section.reject_leftovers()?;
        let list = TransfiniteList::build(ListSpec {
            name: section.name.clone(),
            base,
            alphabet,
            prefix,
            generator,
            tail,
            horizon,
        })?;
        self.lists.insert(section.name, list);
        Ok(())
    }

    fn finish_stringset(&mut self, mut section: Section) -> Result<()> {
        let elements = section.take("elements");
        let length = section.take("length");
        let filter = section.take("where");
        let set = match (elements, length) {
            (Some((value, line)), None) => {
                if filter.is_some() {
                    return fail(line, "where", "'where' needs 'length', not 'elements'");
                }
                let mut strings = Vec::new();
                for word in value.split_whitespace() {
                    strings.push(parse_finite_string(word, line)?);
                }
                FiniteStringSet::new(&section.name, strings)?
            }
            (None, Some((value, line))) => {
                let length = parse_number(&value, line)? as u8;
                match filter {
                    None => enumerate_strings(length, &section.name, |_| true)?,
                    Some((predicate, predicate_line)) => match predicate.as_str() {
                        "any" => enumerate_strings(length, &section.name, |_| true)?,
                        "ends-in-three-equal" => {
                            enumerate_strings(length, &section.name, ends_in_three_equal)?
                        }
                        other => {
                            return fail(
                                predicate_line,
                                other,
                                "known predicates: any, ends-in-three-equal",
                            )
                        }
                    },
                }
            }
            (Some(_), Some((_, line))) => {
                return fail(line, "length", "give either 'elements' or 'length', not both")
            }
            (None, None) => {
                return fail(
                    section.line,
                    &section.name,
                    "a stringset needs 'length' or 'elements'",
                )
            }
        };
        section.reject_leftovers()?;
        self.stringsets.insert(section.name, set);
        Ok(())
    }

    fn finish_set(&mut self, mut section: Section) -> Result<()> {
        let (value, line) = section.require("members")?;
        section.reject_leftovers()?;
        let expr = parse_set_expr(&value, line)?;
        let set = LabelledSet::new(&section.name, expr)?;
        self.sets.insert(section.name, set);
        Ok(())
    }

    fn finish_pairing(&mut self, mut section: Section) -> Result<()> {
        let (value, line) = section.require("forward")?;
        section.reject_leftovers()?;
        let forward = parse_map_expr(&value, line)?;
        self.pairings.insert(
            section.name.clone(),
            PairingMap {
                name: section.name,
                forward,
            },
        );
        Ok(())
    }

    fn lookup_list(&self, key_value: (String, usize)) -> Result<TransfiniteList> {
        let (name, line) = key_value;
        self.lists
            .get(&name)
            .cloned()
            .map_or_else(|| fail(line, &name, "no list with this name defined above"), Ok)
    }

    fn resolve_rule(&self, section: &mut Section, list: &TransfiniteList) -> Result<DiagonalRule> {
        match section.take("rule") {
            Some((value, line)) => {
                let pairs = parse_rule_pairs(&value, list.base(), line)?;
                DiagonalRule::new(&pairs, list.alphabet())
            }
            None => {
                let binary: BTreeSet<Digit> = [Digit::ZERO, Digit::ONE].into_iter().collect();
                if *list.alphabet() == binary {
                    Ok(DiagonalRule::swap_zero_one())
                } else {
                    fail(
                        section.line,
                        &section.name,
                        "a 'rule' key is required for non-binary alphabets",
                    )
                }
            }
        }
    }

    fn finish_diagonal(&mut self, mut section: Section) -> Result<()> {
        let list = self.lookup_list(section.require("list")?)?;
        let rule = self.resolve_rule(&mut section, &list)?;
        let horizon = match (self.overrides.horizon, section.take("horizon")) {
            (Some(value), _) => value,
            (None, Some((value, line))) => parse_number(&value, line)?,
            (None, None) => DEFAULT_HORIZON,
        };
        section.reject_leftovers()?;
        self.steps.push(PlannedStep::Diagonal {
            name: section.name,
            list,
            rule,
            horizon,
        });
        Ok(())
    }

    fn finish_induction(&mut self, mut section: Section) -> Result<()> {
        let list = self.lookup_list(section.require("list")?)?;
        let rule = self.resolve_rule(&mut section, &list)?;
        let n_max = match (self.overrides.n_max, section.take("n-max")) {
            (Some(value), _) => value,
            (None, Some((value, line))) => parse_number(&value, line)?,
            (None, None) => DEFAULT_N_MAX,
        };
        let search_bound = match (self.overrides.search_bound, section.take("search-bound")) {
            (Some(value), _) => Some(value),
            (None, Some((value, line))) => Some(parse_number(&value, line)?),
            (None, None) => None,
        };
        section.reject_leftovers()?;
        self.steps.push(PlannedStep::Induction {
            name: section.name,
            list,
            rule,
            n_max,
            search_bound,
        });
        Ok(())
    }

    fn finish_census(&mut self, mut section: Section) -> Result<()> {
        let (set_name, set_line) = section.require("stringset")?;
        let Some(set) = self.stringsets.get(&set_name).cloned() else {
            return fail(set_line, &set_name, "no stringset with this name defined above");
        };
        let mode = match (self.overrides.mode, section.take("mode")) {
            (Some(value), _) => value,
            (None, Some((value, line))) => CensusModeChoice::parse(&value).map_or_else(
                || fail(line, &value, "known modes: auto, full, prefix, sampled"),
                Ok,
            )?,
            (None, None) => CensusModeChoice::Auto,
        };
        let samples = match (self.overrides.samples, section.take("samples")) {
            (Some(value), _) => value,
            (None, Some((value, line))) => parse_number(&value, line)?,
            (None, None) => DEFAULT_SAMPLES,
        };
        let seed = match (self.overrides.seed, section.take("seed")) {
            (Some(value), _) => value,
            (None, Some((value, line))) => parse_number(&value, line)?,
            (None, None) => 0,
        };
        section.reject_leftovers()?;
        self.steps.push(PlannedStep::Census {
            name: section.name,
            set,
            rule: DiagonalRule::swap_zero_one(),
            mode,
            samples,
            seed,
        });
        Ok(())
    }

    fn lookup_set(&self, key_value: (String, usize)) -> Result<LabelledSet> {
        let (name, line) = key_value;
        self.sets
            .get(&name)
            .cloned()
            .map_or_else(|| fail(line, &name, "no set with this name defined above"), Ok)
    }

    fn finish_profiles(&mut self, mut section: Section) -> Result<()> {
        let left = self.lookup_set(section.require("left")?)?;
        let right = self.lookup_set(section.require("right")?)?;
        let n_max = match (self.overrides.n_max, section.take("n-max")) {
            (Some(value), _) => value,
            (None, Some((value, line))) => parse_number(&value, line)?,
            (None, None) => DEFAULT_COUNT_WINDOW,
        };
        section.reject_leftovers()?;
        self.steps.push(PlannedStep::Profiles {
            name: section.name,
            left,
            right,
            n_max,
        });
        Ok(())
    }

    fn finish_audit(&mut self, mut section: Section) -> Result<()> {
        let (map_name, map_line) = section.require("map")?;
        let Some(map) = self.pairings.get(&map_name).cloned() else {
            return fail(map_line, &map_name, "no pairing with this name defined above");
        };
        let from = self.lookup_set(section.require("from")?)?;
        let to = self.lookup_set(section.require("to")?)?;
        let n_max = match (self.overrides.n_max, section.take("n-max")) {
            (Some(value), _) => value,
            (None, Some((value, line))) => parse_number(&value, line)?,
            (None, None) => DEFAULT_AUDIT_WINDOW,
        };
        let compare_counts = match section.take("compare-counts") {
            Some((value, line)) => parse_bool(&value, line)?,
            None => true,
        };
        let count_window = match section.take("count-window") {
            Some((value, line)) => parse_number(&value, line)?,
            None => DEFAULT_COUNT_WINDOW,
        };
        section.reject_leftovers()?;
        self.steps.push(PlannedStep::Audit {
            name: section.name,
            map,
            from,
            to,
            n_max,
            compare_counts,
            count_window,
        });
        Ok(())
    }
}

fn parse_number(text: &str, line: usize) -> Result<u64> {
    text.parse::<u64>()
        .map_or_else(|_| fail(line, text, "expected a nonnegative integer"), Ok)
}

fn parse_bool(text: &str, line: usize) -> Result<bool> {
    match text {
        "true" => Ok(true),
        "false" => Ok(false),
        _ => fail(line, text, "expected true or false"),
    }
}

fn parse_alphabet(text: &str, base: u32, line: usize) -> Result<BTreeSet<Digit>> {
    let mut alphabet = BTreeSet::new();
    for word in text.split_whitespace() {
        let value = parse_number(word, line)? as u8;
        alphabet.insert(Digit::new(value, base)?);
    }
    Ok(alphabet)
}

fn parse_entry_list(text: &str, base: u32, line: usize) -> Result<Vec<PeriodicDigitString>> {
    let mut entries = Vec::new();
    for part in text.split(',') {
        let part = part.trim();
        if part.is_empty() {
            return fail(line, text, "empty entry in a comma-separated list");
        }
        entries.push(parse_notation(part, base, line)?);
    }
    Ok(entries)
}

fn parse_notation(text: &str, base: u32, line: usize) -> Result<PeriodicDigitString> {
    PeriodicDigitString::parse(text, base)
        .map_err(|error| Error::Definition {
            line,
            token: text.to_string(),
            message: error.to_string(),
        })
}

fn parse_finite_string(text: &str, line: usize) -> Result<FiniteString> {
    if text.is_empty() || text.len() > 24 || !text.bytes().all(|b| b == b'0' || b == b'1') {
        return fail(line, text, "expected a binary string of 1 to 24 digits");
    }
    let bits = u32::from_str_radix(text, 2).expect("validated binary text");
    FiniteString::from_bits(bits, text.len() as u8)
}

fn parse_rule_pairs(text: &str, base: u32, line: usize) -> Result<Vec<(Digit, Digit)>> {
    let mut pairs = Vec::new();
    for word in text.split_whitespace() {
        let Some((from, to)) = word.split_once("->") else {
            return fail(line, word, "rule entries look like 0->1");
        };
        let from = Digit::new(parse_number(from, line)? as u8, base)?;
        let to = Digit::new(parse_number(to, line)? as u8, base)?;
        pairs.push((from, to));
    }
    if pairs.is_empty() {
        return fail(line, text, "the rule needs at least one pair");
    }
    Ok(pairs)
}

// Expression tokens shared by the generator and set grammars.
#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Ident(String),
    Number(u64),
    Notation(String),
    Open,
    Close,
    Comma,
}

fn tokenize(text: &str, line: usize) -> Result<Vec<Token>> {
    let mut tokens = Vec::new();
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            ' ' | '\t' => {
                chars.next();
            }
            '(' => {
                chars.next();
                tokens.push(Token::Open);
            }
            ')' => {
                chars.next();
                tokens.push(Token::Close);
            }
            ',' => {
                chars.next();
                tokens.push(Token::Comma);
            }
            '0'..='9' => {
                let mut word = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_ascii_digit() || c == '.' || c == '[' || c == ']' {
                        word.push(c);
                        chars.next();
                    } else {
                        break;
                    }
                }
                if word.contains('.') || word.contains('[') {
                    tokens.push(Token::Notation(word));
                } else {
                    tokens.push(Token::Number(parse_number(&word, line)?));
                }
            }
            'a'..='z' | '-' => {
                let mut word = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_ascii_lowercase() || c.is_ascii_digit() || c == '-' {
                        word.push(c);
                        chars.next();
                    } else {
                        break;
                    }
                }
                tokens.push(Token::Ident(word));
            }
            other => return fail(line, &other.to_string(), "unexpected character"),
        }
    }
    Ok(tokens)
}

struct TokenStream<'a> {
    tokens: &'a [Token],
    position: usize,
    line: usize,
    source: &'a str,
}

impl<'a> TokenStream<'a> {
    fn next(&mut self) -> Result<&'a Token> {
        let token = self.tokens.get(self.position).map_or_else(
            || fail(self.line, self.source, "expression ends too early"),
            Ok,
        )?;
        self.position += 1;
        Ok(token)
    }

    fn expect(&mut self, expected: &Token, what: &str) -> Result<()> {
        let token = self.next()?;
        if token != expected {
            return fail(self.line, self.source, format!("expected {what}"));
        }
        Ok(())
    }

    fn at_end(&self) -> bool {
        self.position >= self.tokens.len()
    }

    fn peek_is(&self, token: &Token) -> bool {
        self.tokens.get(self.position) == Some(token)
    }
}

/// Parses a generator expression such as
/// `interleave(strided(spaced-pair, 1, 2), geometric-ones)`.
pub fn parse_generator(text: &str, base: u32, line: usize) -> Result<GeneratorFamily> {
    let tokens = tokenize(text, line)?;
    let mut stream = TokenStream {
        tokens: &tokens,
        position: 0,
        line,
        source: text,
    };
    let generator = parse_generator_expr(&mut stream, base)?;
    if !stream.at_end() {
        return fail(line, text, "trailing tokens after the generator expression");
    }
    Ok(generator)
}

fn parse_generator_expr(stream: &mut TokenStream, base: u32) -> Result<GeneratorFamily> {
    let line = stream.line;
    let source = stream.source;
    let token = stream.next()?.clone();
    let Token::Ident(name) = token else {
        return fail(line, source, "expected a generator family name");
    };
    match name.as_str() {
        "geometric-ones" => Ok(GeneratorFamily::GeometricOnes),
        "spaced-pair" => Ok(GeneratorFamily::SpacedPair),
        "spike" => {
            stream.expect(&Token::Open, "'(' after spike")?;
            let gap = parse_number_token(stream)?;
            stream.expect(&Token::Close, "')' after the spike gap")?;
            Ok(GeneratorFamily::Spike { gap })
        }
        "constant" => {
            stream.expect(&Token::Open, "'(' after constant")?;
            let value = parse_notation_token(stream, base)?;
            stream.expect(&Token::Close, "')' after the constant value")?;
            Ok(GeneratorFamily::Constant(value))
        }
        "interleave" => {
            stream.expect(&Token::Open, "'(' after interleave")?;
            let odd = parse_generator_expr(stream, base)?;
            stream.expect(&Token::Comma, "',' between the interleaved families")?;
            let even = parse_generator_expr(stream, base)?;
            stream.expect(&Token::Close, "')' after the interleaved families")?;
            Ok(GeneratorFamily::Interleave(Box::new(odd), Box::new(even)))
        }
        "shifted" => {
            stream.expect(&Token::Open, "'(' after shifted")?;
            let inner = parse_generator_expr(stream, base)?;
            stream.expect(&Token::Comma, "',' before the offset")?;
            let offset = parse_number_token(stream)?;
            stream.expect(&Token::Close, "')' after the offset")?;
            Ok(GeneratorFamily::Shifted {
                inner: Box::new(inner),
                offset,
            })
        }
        "strided" => {
            stream.expect(&Token::Open, "'(' after strided")?;
            let inner = parse_generator_expr(stream, base)?;
            stream.expect(&Token::Comma, "',' before the start index")?;
            let start = parse_number_token(stream)?;
            stream.expect(&Token::Comma, "',' before the step")?;
            let step = parse_number_token(stream)?;
            stream.expect(&Token::Close, "')' after the step")?;
            Ok(GeneratorFamily::Strided {
                inner: Box::new(inner),
                start,
                step,
            })
        }
        "table" => {
            stream.expect(&Token::Open, "'(' after table")?;
            let mut entries = vec![parse_notation_token(stream, base)?];
            while stream.peek_is(&Token::Comma) {
                stream.next()?;
                entries.push(parse_notation_token(stream, base)?);
            }
            stream.expect(&Token::Close, "')' after the table entries")?;
            Ok(GeneratorFamily::Table(entries))
        }
        other => fail(line, other, "unknown generator family"),
    }
}

fn parse_number_token(stream: &mut TokenStream) -> Result<u64> {
    let line = stream.line;
    let source = stream.source;
    match stream.next()? {
        Token::Number(value) => Ok(*value),
        _ => fail(line, source, "expected a number"),
    }
}

fn parse_notation_token(stream: &mut TokenStream, base: u32) -> Result<PeriodicDigitString> {
    let line = stream.line;
    let source = stream.source;
    match stream.next()? {
        Token::Notation(text) => parse_notation(text, base, line),
        _ => fail(line, source, "expected a digit-string like 0.01[0]"),
    }
}

/// Parses a set expression such as `remove(naturals, 1 2 3 4 5)`.
pub fn parse_set_expr(text: &str, line: usize) -> Result<SetExpr> {
    let tokens = tokenize(text, line)?;
    let mut stream = TokenStream {
        tokens: &tokens,
        position: 0,
        line,
        source: text,
    };
    let expr = parse_set_inner(&mut stream)?;
    if !stream.at_end() {
        return fail(line, text, "trailing tokens after the set expression");
    }
    Ok(expr)
}

fn parse_set_inner(stream: &mut TokenStream) -> Result<SetExpr> {
    let line = stream.line;
    let source = stream.source;
    let token = stream.next()?.clone();
    let Token::Ident(name) = token else {
        return fail(line, source, "expected a set expression");
    };
    match name.as_str() {
        "naturals" => Ok(SetExpr::Naturals),
        "squares" => Ok(SetExpr::Squares),
        "residue" => {
            stream.expect(&Token::Open, "'(' after residue")?;
            let modulus = parse_number_token(stream)?;
            stream.expect(&Token::Comma, "',' between modulus and residue")?;
            let residue = parse_number_token(stream)?;
            stream.expect(&Token::Close, "')' after the residue")?;
            Ok(SetExpr::Residue { modulus, residue })
        }
        "remove" | "add" => {
            stream.expect(&Token::Open, "'(' after the edit")?;
            let inner = parse_set_inner(stream)?;
            stream.expect(&Token::Comma, "',' before the elements")?;
            let mut elements = BTreeSet::new();
            elements.insert(parse_number_token(stream)?);
            while !stream.peek_is(&Token::Close) {
                elements.insert(parse_number_token(stream)?);
            }
            stream.expect(&Token::Close, "')' after the elements")?;
            let inner = Box::new(inner);
            Ok(if name == "remove" {
                SetExpr::Remove { inner, elements }
            } else {
                SetExpr::Add { inner, elements }
            })
        }
        other => fail(line, other, "unknown set expression"),
    }
}

/// Parses an arithmetic map expression in `n`, e.g. `n / 2` or `2 * n + 1`.
pub fn parse_map_expr(text: &str, line: usize) -> Result<MapExpr> {
    let mut tokens = Vec::new();
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            ' ' | '\t' => {
                chars.next();
            }
            '+' | '-' | '*' | '/' | '(' | ')' => {
                chars.next();
                tokens.push(MapToken::Symbol(c));
            }
            'n' => {
                chars.next();
                tokens.push(MapToken::Variable);
            }
            '0'..='9' => {
                let mut word = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_ascii_digit() {
                        word.push(c);
                        chars.next();
                    } else {
                        break;
                    }
                }
                tokens.push(MapToken::Number(parse_number(&word, line)?));
            }
            other => return fail(line, &other.to_string(), "unexpected character in map"),
        }
    }
    let mut stream = MapStream {
        tokens: &tokens,
        position: 0,
        line,
        source: text,
    };
    let expr = parse_map_sum(&mut stream)?;
    if stream.position < tokens.len() {
        return fail(line, text, "trailing tokens after the map expression");
    }
    Ok(expr)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum MapToken {
    Variable,
    Number(u64),
    Symbol(char),
}

struct MapStream<'a> {
    tokens: &'a [MapToken],
    position: usize,
    line: usize,
    source: &'a str,
}

impl MapStream<'_> {
    fn peek(&self) -> Option<MapToken> {
        self.tokens.get(self.position).copied()
    }
}

fn parse_map_sum(stream: &mut MapStream) -> Result<MapExpr> {
    let mut left = parse_map_product(stream)?;
    while let Some(MapToken::Symbol(op @ ('+' | '-'))) = stream.peek() {
        stream.position += 1;
        let right = parse_map_product(stream)?;
        left = if op == '+' {
            MapExpr::Add(Box::new(left), Box::new(right))
        } else {
            MapExpr::Sub(Box::new(left), Box::new(right))
        };
    }
    Ok(left)
}

fn parse_map_product(stream: &mut MapStream) -> Result<MapExpr> {
    let mut left = parse_map_atom(stream)?;
    while let Some(MapToken::Symbol(op @ ('*' | '/'))) = stream.peek() {
        stream.position += 1;
        let right = parse_map_atom(stream)?;
        left = if op == '*' {
            MapExpr::Mul(Box::new(left), Box::new(right))
        } else {
            MapExpr::Div(Box::new(left), Box::new(right))
        };
    }
    Ok(left)
}

fn parse_map_atom(stream: &mut MapStream) -> Result<MapExpr> {
    let token = stream.peek().map_or_else(
        || fail(stream.line, stream.source, "map expression ends too early"),
        Ok,
    )?;
    stream.position += 1;
    match token {
        MapToken::Variable => Ok(MapExpr::Value),
        MapToken::Number(value) => Ok(MapExpr::Constant(value)),
        MapToken::Symbol('(') => {
            let inner = parse_map_sum(stream)?;
            if stream.peek() != Some(MapToken::Symbol(')')) {
                return fail(stream.line, stream.source, "missing ')'");
            }
            stream.position += 1;
            Ok(inner)
        }
        MapToken::Symbol(other) => fail(
            stream.line,
            &other.to_string(),
            "expected n, a number, or '('",
        ),
    }
}
