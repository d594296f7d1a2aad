//! Formula syntax: AST, text parser, and minimal-parenthesis printer.
//!
//! The surface grammar is ASCII: atoms `[a-z][A-Za-z0-9_]*`, constants `true` and
//! `false`, unary `!`, `nextF`, `nextP`, `boxF`, `boxP`, `box*`, `diaF`, `diaP`,
//! `dia*`, binary `U`, `S`, `&`, `|`, `->`, and parentheses. `#` starts a line
//! comment. Binding strength, from tightest: unary, `U`/`S`, `&`, `|`, `->`.
//! `U`/`S` and `->` associate to the right, `&` and `|` to the left.
//!
//! `U` and `S` are strict: `p U q` requires `q` at some moment strictly in the
//! future and `p` at every moment strictly in between. The `box`/`dia` operators
//! are likewise strict in each direction; `box*`/`dia*` quantify over *every*
//! moment of the timeline, past, present and future.

use std::collections::BTreeSet;
use std::fmt;

/// A temporal formula over the integer timeline.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    Var(String),
    True,
    False,
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    /// Strict until: at some future moment the second operand holds, and the
    /// first holds at every moment strictly between now and then.
    Until(Box<Formula>, Box<Formula>),
    /// Strict since: the past mirror image of `Until`.
    Since(Box<Formula>, Box<Formula>),
    /// Truth at the next moment.
    NextF(Box<Formula>),
    /// Truth at the previous moment.
    NextP(Box<Formula>),
    /// Truth at every strictly later moment.
    BoxF(Box<Formula>),
    /// Truth at every strictly earlier moment.
    BoxP(Box<Formula>),
    /// Truth at every moment of the timeline.
    BoxAll(Box<Formula>),
    /// Truth at some strictly later moment.
    DiaF(Box<Formula>),
    /// Truth at some strictly earlier moment.
    DiaP(Box<Formula>),
    /// Truth at some moment of the timeline.
    DiaAll(Box<Formula>),
}

impl Formula {
    pub fn var(name: &str) -> Formula {
        Formula::Var(name.to_owned())
    }

    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn and(f: Formula, g: Formula) -> Formula {
        Formula::And(Box::new(f), Box::new(g))
    }

    pub fn or(f: Formula, g: Formula) -> Formula {
        Formula::Or(Box::new(f), Box::new(g))
    }

    pub fn implies(f: Formula, g: Formula) -> Formula {
        Formula::Implies(Box::new(f), Box::new(g))
    }

    pub fn until(f: Formula, g: Formula) -> Formula {
        Formula::Until(Box::new(f), Box::new(g))
    }

    pub fn since(f: Formula, g: Formula) -> Formula {
        Formula::Since(Box::new(f), Box::new(g))
    }

    pub fn next_f(f: Formula) -> Formula {
        Formula::NextF(Box::new(f))
    }

    pub fn next_p(f: Formula) -> Formula {
        Formula::NextP(Box::new(f))
    }

    pub fn box_f(f: Formula) -> Formula {
        Formula::BoxF(Box::new(f))
    }

    pub fn box_p(f: Formula) -> Formula {
        Formula::BoxP(Box::new(f))
    }

    pub fn box_all(f: Formula) -> Formula {
        Formula::BoxAll(Box::new(f))
    }

    pub fn dia_f(f: Formula) -> Formula {
        Formula::DiaF(Box::new(f))
    }

    pub fn dia_p(f: Formula) -> Formula {
        Formula::DiaP(Box::new(f))
    }

    pub fn dia_all(f: Formula) -> Formula {
        Formula::DiaAll(Box::new(f))
    }

    /// Conjunction of a nonempty sequence, folded to the left.
    pub fn conjoin(mut parts: Vec<Formula>) -> Formula {
        let mut acc = if parts.is_empty() {
            Formula::True
        } else {
            parts.remove(0)
        };
        for p in parts {
            acc = Formula::and(acc, p);
        }
        acc
    }

    /// All atom names occurring in the formula, sorted.
    pub fn atoms(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms(&self, out: &mut BTreeSet<String>) {
        match self {
            Formula::Var(name) => {
                out.insert(name.clone());
            }
            Formula::True | Formula::False => {}
            Formula::Not(f)
            | Formula::NextF(f)
            | Formula::NextP(f)
            | Formula::BoxF(f)
            | Formula::BoxP(f)
            | Formula::BoxAll(f)
            | Formula::DiaF(f)
            | Formula::DiaP(f)
            | Formula::DiaAll(f) => f.collect_atoms(out),
            Formula::And(f, g)
            | Formula::Or(f, g)
            | Formula::Implies(f, g)
            | Formula::Until(f, g)
            | Formula::Since(f, g) => {
                f.collect_atoms(out);
                g.collect_atoms(out);
            }
        }
    }

    /// Number of AST nodes.
    pub fn node_count(&self) -> usize {
        match self {
            Formula::Var(_) | Formula::True | Formula::False => 1,
            Formula::Not(f)
            | Formula::NextF(f)
            | Formula::NextP(f)
            | Formula::BoxF(f)
            | Formula::BoxP(f)
            | Formula::BoxAll(f)
            | Formula::DiaF(f)
            | Formula::DiaP(f)
            | Formula::DiaAll(f) => 1 + f.node_count(),
            Formula::And(f, g)
            | Formula::Or(f, g)
            | Formula::Implies(f, g)
            | Formula::Until(f, g)
            | Formula::Since(f, g) => 1 + f.node_count() + g.node_count(),
        }
    }

    /// Splits a top-level conjunction into its conjuncts.
    pub fn conjuncts(&self) -> Vec<&Formula> {
        let mut out = Vec::new();
        fn walk<'a>(f: &'a Formula, out: &mut Vec<&'a Formula>) {
            if let Formula::And(a, b) = f {
                walk(a, out);
                walk(b, out);
            } else {
                out.push(f);
            }
        }
        walk(self, &mut out);
        out
    }
}

/// A parse failure, carrying the 1-based source position.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("line {line}, column {col}: {msg}")]
    Lex { line: usize, col: usize, msg: String },
    #[error("line {line}, column {col}: expected {expected}, found {found}")]
    Syntax {
        line: usize,
        col: usize,
        expected: String,
        found: String,
    },
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    True,
    False,
    Bang,
    Amp,
    Pipe,
    Arrow,
    UntilOp,
    SinceOp,
    NextF,
    NextP,
    BoxF,
    BoxP,
    BoxAll,
    DiaF,
    DiaP,
    DiaAll,
    LParen,
    RParen,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "identifier '{}'", s),
            Tok::True => write!(f, "'true'"),
            Tok::False => write!(f, "'false'"),
            Tok::Bang => write!(f, "'!'"),
            Tok::Amp => write!(f, "'&'"),
            Tok::Pipe => write!(f, "'|'"),
            Tok::Arrow => write!(f, "'->'"),
            Tok::UntilOp => write!(f, "'U'"),
            Tok::SinceOp => write!(f, "'S'"),
            Tok::NextF => write!(f, "'nextF'"),
            Tok::NextP => write!(f, "'nextP'"),
            Tok::BoxF => write!(f, "'boxF'"),
            Tok::BoxP => write!(f, "'boxP'"),
            Tok::BoxAll => write!(f, "'box*'"),
            Tok::DiaF => write!(f, "'diaF'"),
            Tok::DiaP => write!(f, "'diaP'"),
            Tok::DiaAll => write!(f, "'dia*'"),
            Tok::LParen => write!(f, "'('"),
            Tok::RParen => write!(f, "')'"),
            Tok::Eof => write!(f, "end of input"),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, usize, usize)>, ParseError> {
    let mut toks = Vec::new();
    let mut line = 1usize;
    let mut col = 1usize;
    let mut chars = text.chars().peekable();

    macro_rules! bump {
        () => {{
            let c = chars.next().unwrap();
            if c == '\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
            c
        }};
    }

    while let Some(&c) = chars.peek() {
        if c.is_whitespace() {
            bump!();
        } else if c == '#' {
            while let Some(&c) = chars.peek() {
                if c == '\n' {
                    break;
                }
                bump!();
            }
        } else if c == '(' {
            toks.push((Tok::LParen, line, col));
            bump!();
        } else if c == ')' {
            toks.push((Tok::RParen, line, col));
            bump!();
        } else if c == '!' {
            toks.push((Tok::Bang, line, col));
            bump!();
        } else if c == '&' {
            toks.push((Tok::Amp, line, col));
            bump!();
        } else if c == '|' {
            toks.push((Tok::Pipe, line, col));
            bump!();
        } else if c == '-' {
            let (l, co) = (line, col);
            bump!();
            if chars.peek() == Some(&'>') {
                bump!();
                toks.push((Tok::Arrow, l, co));
            } else {
                return Err(ParseError::Lex {
                    line: l,
                    col: co,
                    msg: "expected '>' after '-'".to_owned(),
                });
            }
        } else if c.is_ascii_alphabetic() {
            let (l, co) = (line, col);
            let mut word = String::new();
            while let Some(&c) = chars.peek() {
                if c.is_ascii_alphanumeric() || c == '_' {
                    word.push(c);
                    bump!();
                } else {
                    break;
                }
            }
            let tok = match word.as_str() {
                "true" => Tok::True,
                "false" => Tok::False,
                "U" => Tok::UntilOp,
                "S" => Tok::SinceOp,
                "nextF" => Tok::NextF,
                "nextP" => Tok::NextP,
                "boxF" => Tok::BoxF,
                "boxP" => Tok::BoxP,
                "diaF" => Tok::DiaF,
                "diaP" => Tok::DiaP,
                "box" | "dia" => {
                    if chars.peek() == Some(&'*') {
                        bump!();
                        if word == "box" {
                            Tok::BoxAll
                        } else {
                            Tok::DiaAll
                        }
                    } else {
                        return Err(ParseError::Lex {
                            line: l,
                            col: co,
                            msg: format!("expected '*' after '{}'", word),
                        });
                    }
                }
                _ => {
                    if word.starts_with(|c: char| c.is_ascii_lowercase()) {
                        Tok::Ident(word)
                    } else {
                        return Err(ParseError::Lex {
                            line: l,
                            col: co,
                            msg: format!("unknown token '{}'", word),
                        });
                    }
                }
            };
            toks.push((tok, l, co));
        } else {
            return Err(ParseError::Lex {
                line,
                col,
                msg: format!("unexpected character '{}'", c),
            });
        }
    }
    toks.push((Tok::Eof, line, col));
    Ok(toks)
}

struct Parser {
    toks: Vec<(Tok, usize, usize)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn err(&self, expected: &str) -> ParseError {
        let (tok, line, col) = &self.toks[self.pos];
        ParseError::Syntax {
            line: *line,
            col: *col,
            expected: expected.to_owned(),
            found: tok.to_string(),
        }
    }

    fn advance(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    // ->, right-associative, loosest
    fn parse_implies(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.parse_or()?;
        if *self.peek() == Tok::Arrow {
            self.advance();
            let rhs = self.parse_implies()?;
            Ok(Formula::implies(lhs, rhs))
        } else {
            Ok(lhs)
        }
    }

    // |, left-associative
    fn parse_or(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.parse_and()?;
        while *self.peek() == Tok::Pipe {
            self.advance();
            let rhs = self.parse_and()?;
            lhs = Formula::or(lhs, rhs);
        }
        Ok(lhs)
    }

    // &, left-associative
    fn parse_and(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.parse_binary_temporal()?;
        while *self.peek() == Tok::Amp {
            self.advance();
            let rhs = self.parse_binary_temporal()?;
            lhs = Formula::and(lhs, rhs);
        }
        Ok(lhs)
    }

    // U and S, right-associative, tighter than & but looser than unary
    fn parse_binary_temporal(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.parse_unary()?;
        match self.peek() {
            Tok::UntilOp => {
                self.advance();
                let rhs = self.parse_binary_temporal()?;
                Ok(Formula::until(lhs, rhs))
            }
            Tok::SinceOp => {
                self.advance();
                let rhs = self.parse_binary_temporal()?;
                Ok(Formula::since(lhs, rhs))
            }
            _ => Ok(lhs),
        }
    }

    fn parse_unary(&mut self) -> Result<Formula, ParseError> {
        let wrap: fn(Formula) -> Formula = match self.peek() {
            Tok::Bang => Formula::not,
            Tok::NextF => Formula::next_f,
            Tok::NextP => Formula::next_p,
            Tok::BoxF => Formula::box_f,
            Tok::BoxP => Formula::box_p,
            Tok::BoxAll => Formula::box_all,
            Tok::DiaF => Formula::dia_f,
            Tok::DiaP => Formula::dia_p,
            Tok::DiaAll => Formula::dia_all,
            _ => return self.parse_atom(),
        };
        self.advance();
        let inner = self.parse_unary()?;
        Ok(wrap(inner))
    }

    fn parse_atom(&mut self) -> Result<Formula, ParseError> {
        match self.peek().clone() {
            Tok::Ident(name) => {
                self.advance();
                Ok(Formula::Var(name))
            }
            Tok::True => {
                self.advance();
                Ok(Formula::True)
            }
            Tok::False => {
                self.advance();
                Ok(Formula::False)
            }
            Tok::LParen => {
                self.advance();
                let inner = self.parse_implies()?;
                if *self.peek() == Tok::RParen {
                    self.advance();
                    Ok(inner)
                } else {
                    Err(self.err("')'"))
                }
            }
            _ => Err(self.err("a formula")),
        }
    }
}

/// Parses a formula, identifying `nextF !x` with `!nextF x` (and likewise for
/// `nextP`): negation is hoisted out of the next-operators so downstream passes
/// see one canonical shape.
pub fn parse(text: &str) -> Result<Formula, ParseError> {
    let toks = lex(text)?;
    let mut parser = Parser { toks, pos: 0 };
    let f = parser.parse_implies()?;
    if *parser.peek() != Tok::Eof {
        return Err(parser.err("end of input"));
    }
    Ok(hoist_not_over_next(f))
}

/// Rewrites `nextF !x` to `!nextF x` (and `nextP` likewise), bottom-up, until no
/// next-operator directly wraps a negation.
fn hoist_not_over_next(f: Formula) -> Formula {
    fn wrap(next_f: bool, g: Formula) -> Formula {
        match g {
            Formula::Not(h) => Formula::not(wrap(next_f, *h)),
            other => {
                if next_f {
                    Formula::next_f(other)
                } else {
                    Formula::next_p(other)
                }
            }
        }
    }
    match f {
        Formula::NextF(g) => wrap(true, hoist_not_over_next(*g)),
        Formula::NextP(g) => wrap(false, hoist_not_over_next(*g)),
        Formula::Var(_) | Formula::True | Formula::False => f,
        Formula::Not(g) => Formula::not(hoist_not_over_next(*g)),
        Formula::And(g, h) => Formula::and(hoist_not_over_next(*g), hoist_not_over_next(*h)),
        Formula::Or(g, h) => Formula::or(hoist_not_over_next(*g), hoist_not_over_next(*h)),
        Formula::Implies(g, h) => {
            Formula::implies(hoist_not_over_next(*g), hoist_not_over_next(*h))
        }
        Formula::Until(g, h) => Formula::until(hoist_not_over_next(*g), hoist_not_over_next(*h)),
        Formula::Since(g, h) => Formula::since(hoist_not_over_next(*g), hoist_not_over_next(*h)),
        Formula::BoxF(g) => Formula::box_f(hoist_not_over_next(*g)),
        Formula::BoxP(g) => Formula::box_p(hoist_not_over_next(*g)),
        Formula::BoxAll(g) => Formula::box_all(hoist_not_over_next(*g)),
        Formula::DiaF(g) => Formula::dia_f(hoist_not_over_next(*g)),
        Formula::DiaP(g) => Formula::dia_p(hoist_not_over_next(*g)),
        Formula::DiaAll(g) => Formula::dia_all(hoist_not_over_next(*g)),
    }
}

// Precedence levels used by the printer; larger binds tighter.
const PREC_IMPLIES: u8 = 1;
const PREC_OR: u8 = 2;
const PREC_AND: u8 = 3;
const PREC_TEMPORAL: u8 = 4;
const PREC_UNARY: u8 = 5;
const PREC_ATOM: u8 = 6;

fn precedence(f: &Formula) -> u8 {
    match f {
        Formula::Var(_) | Formula::True | Formula::False => PREC_ATOM,
        Formula::Not(_)
        | Formula::NextF(_)
        | Formula::NextP(_)
        | Formula::BoxF(_)
        | Formula::BoxP(_)
        | Formula::BoxAll(_)
        | Formula::DiaF(_)
        | Formula::DiaP(_)
        | Formula::DiaAll(_) => PREC_UNARY,
        Formula::Until(_, _) | Formula::Since(_, _) => PREC_TEMPORAL,
        Formula::And(_, _) => PREC_AND,
        Formula::Or(_, _) => PREC_OR,
        Formula::Implies(_, _) => PREC_IMPLIES,
    }
}

fn fmt_prec(f: &Formula, ctx: u8, out: &mut fmt::Formatter<'_>) -> fmt::Result {
    let prec = precedence(f);
    if prec < ctx {
        write!(out, "(")?;
        fmt_prec(f, 0, out)?;
        return write!(out, ")");
    }
    match f {
        Formula::Var(name) => write!(out, "{}", name),
        Formula::True => write!(out, "true"),
        Formula::False => write!(out, "false"),
        Formula::Not(g) => {
            write!(out, "!")?;
            fmt_prec(g, PREC_UNARY, out)
        }
        Formula::NextF(g) => fmt_word_unary("nextF", g, out),
        Formula::NextP(g) => fmt_word_unary("nextP", g, out),
        Formula::BoxF(g) => fmt_word_unary("boxF", g, out),
        Formula::BoxP(g) => fmt_word_unary("boxP", g, out),
        Formula::BoxAll(g) => fmt_word_unary("box*", g, out),
        Formula::DiaF(g) => fmt_word_unary("diaF", g, out),
        Formula::DiaP(g) => fmt_word_unary("diaP", g, out),
        Formula::DiaAll(g) => fmt_word_unary("dia*", g, out),
        Formula::Until(g, h) => {
            fmt_prec(g, PREC_TEMPORAL + 1, out)?;
            write!(out, " U ")?;
            fmt_prec(h, PREC_TEMPORAL, out)
        }
        Formula::Since(g, h) => {
            fmt_prec(g, PREC_TEMPORAL + 1, out)?;
            write!(out, " S ")?;
            fmt_prec(h, PREC_TEMPORAL, out)
        }
        Formula::And(g, h) => {
            fmt_prec(g, PREC_AND, out)?;
            write!(out, " & ")?;
            fmt_prec(h, PREC_AND + 1, out)
        }
        Formula::Or(g, h) => {
            fmt_prec(g, PREC_OR, out)?;
            write!(out, " | ")?;
            fmt_prec(h, PREC_OR + 1, out)
        }
        Formula::Implies(g, h) => {
            fmt_prec(g, PREC_IMPLIES + 1, out)?;
            write!(out, " -> ")?;
            fmt_prec(h, PREC_IMPLIES, out)
        }
    }
}

// A word operator is followed by a space unless the operand is parenthesized
// anyway: `boxF q` but `box*(!p | q)`.
fn fmt_word_unary(word: &str, g: &Formula, out: &mut fmt::Formatter<'_>) -> fmt::Result {
    write!(out, "{}", word)?;
    if precedence(g) >= PREC_UNARY {
        write!(out, " ")?;
    }
    fmt_prec(g, PREC_UNARY, out)
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_prec(self, 0, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn v(name: &str) -> Formula {
        Formula::var(name)
    }

    #[test]
    fn parses_conjunction_with_boxed_clause() {
        let f = parse("p & box*(!p | boxF q)").unwrap();
        let expected = Formula::and(
            v("p"),
            Formula::box_all(Formula::or(Formula::not(v("p")), Formula::box_f(v("q")))),
        );
        assert_eq!(f, expected);
    }

    #[test]
    fn parses_until() {
        assert_eq!(parse("p U q").unwrap(), Formula::until(v("p"), v("q")));
    }

    #[test]
    fn rejects_dangling_operator() {
        match parse("p &&") {
            Err(ParseError::Syntax { line, col, .. }) => {
                assert_eq!(line, 1);
                assert_eq!(col, 4);
            }
            other => panic!("expected syntax error, got {:?}", other),
        }
    }

    #[test]
    fn rejects_unknown_uppercase_word() {
        assert!(matches!(parse("p U Qx"), Err(ParseError::Lex { .. })));
    }

    #[test]
    fn rejects_bare_box_without_star() {
        assert!(matches!(parse("box p"), Err(ParseError::Lex { .. })));
    }

    #[test]
    fn precedence_and_associativity() {
        // -> loosest and right-associative
        assert_eq!(
            parse("p -> q -> r").unwrap(),
            Formula::implies(v("p"), Formula::implies(v("q"), v("r")))
        );
        // & binds tighter than |
        assert_eq!(
            parse("p & q | r").unwrap(),
            Formula::or(Formula::and(v("p"), v("q")), v("r"))
        );
        // U tighter than &, right-associative, unary tighter still
        assert_eq!(
            parse("!p U q U r & s").unwrap(),
            Formula::and(
                Formula::until(
                    Formula::not(v("p")),
                    Formula::until(v("q"), v("r"))
                ),
                v("s")
            )
        );
    }

    #[test]
    fn comments_and_whitespace_are_skipped() {
        let f = parse("# header\n  p\n  & q # trailing\n").unwrap();
        assert_eq!(f, Formula::and(v("p"), v("q")));
    }

    #[test]
    fn negation_is_hoisted_out_of_next() {
        assert_eq!(
            parse("nextF !p").unwrap(),
            Formula::not(Formula::next_f(v("p")))
        );
        assert_eq!(
            parse("nextP nextF !p").unwrap(),
            Formula::not(Formula::next_p(Formula::next_f(v("p"))))
        );
    }

    #[test]
    fn prints_minimal_parentheses() {
        assert_eq!(Formula::and(v("p"), v("q")).to_string(), "p & q");
        assert_eq!(
            Formula::box_all(Formula::or(Formula::not(v("p")), Formula::box_f(v("q"))))
                .to_string(),
            "box*(!p | boxF q)"
        );
        assert_eq!(
            Formula::or(v("p"), Formula::or(v("q"), v("r"))).to_string(),
            "p | (q | r)"
        );
        assert_eq!(
            Formula::implies(Formula::implies(v("p"), v("q")), v("r")).to_string(),
            "(p -> q) -> r"
        );
        assert_eq!(
            Formula::until(Formula::next_f(v("p")), v("q")).to_string(),
            "nextF p U q"
        );
        assert_eq!(Formula::box_all(v("p")).to_string(), "box* p");
    }

    fn random_formula(rng: &mut ChaCha8Rng, budget: usize) -> Formula {
        let atoms = ["p", "q", "r", "s1", "tick"];
        if budget == 0 || rng.gen_range(0..10) < 2 {
            return match rng.gen_range(0..7) {
                0 => Formula::True,
                1 => Formula::False,
                _ => v(atoms[rng.gen_range(0..atoms.len())]),
            };
        }
        let sub = budget / 2;
        match rng.gen_range(0..14) {
            0 => Formula::not(random_formula(rng, budget - 1)),
            1 => Formula::and(random_formula(rng, sub), random_formula(rng, sub)),
            2 => Formula::or(random_formula(rng, sub), random_formula(rng, sub)),
            3 => Formula::implies(random_formula(rng, sub), random_formula(rng, sub)),
            4 => Formula::until(random_formula(rng, sub), random_formula(rng, sub)),
            5 => Formula::since(random_formula(rng, sub), random_formula(rng, sub)),
            6 => Formula::next_f(random_formula(rng, budget - 1)),
            7 => Formula::next_p(random_formula(rng, budget - 1)),
            8 => Formula::box_f(random_formula(rng, budget - 1)),
            9 => Formula::box_p(random_formula(rng, budget - 1)),
            10 => Formula::box_all(random_formula(rng, budget - 1)),
            11 => Formula::dia_f(random_formula(rng, budget - 1)),
            12 => Formula::dia_p(random_formula(rng, budget - 1)),
            _ => Formula::dia_all(random_formula(rng, budget - 1)),
        }
    }

    #[test]
    fn print_parse_round_trip_on_random_asts() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        for _ in 0..1000 {
            // The parser hoists negation out of next-operators, so round-trip
            // on the hoisted form.
            let f = hoist_not_over_next(random_formula(&mut rng, 12));
            let text = f.to_string();
            let reparsed = parse(&text)
                .unwrap_or_else(|e| panic!("failed to reparse '{}': {}", text, e));
            assert_eq!(reparsed, f, "round trip changed '{}'", text);
        }
    }
}
