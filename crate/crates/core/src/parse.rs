//! Text format for extended logic programs.
//!
//! ```text
//! atom    = [a-z][A-Za-z0-9_]*
//! literal = atom | "not" atom | "not" "not" atom
//! head    = atom ("|" atom)* | ε
//! body    = literal ("," literal)*
//! rule    = head "." | head ":-" body "." | ":-" body "."
//! ```
//!
//! `%` starts a comment running to the end of the line. Longer `not` chains
//! are accepted and folded with `not not not p = not p`. The printer emits
//! the canonical form used everywhere else (see [`Program`]'s `Display`), and
//! `parse_program(&p.to_string()) == p` for every program without an
//! explicit signature widening.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::ht::HtModelSet;
use crate::program::{is_valid_atom_name, Atom, AtomSet, BodyLiteral, Program, Rule};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub struct ParseError {
    /// 1-based.
    pub line: usize,
    /// 1-based, counted in characters.
    pub column: usize,
    pub message: String,
    pub snippet: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.column, self.message)?;
        if !self.snippet.is_empty() {
            write!(f, " (at `{}`)", self.snippet)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Not,
    Pipe,
    If,
    Comma,
    Dot,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("atom `{s}`"),
            Tok::Not => "`not`".into(),
            Tok::Pipe => "`|`".into(),
            Tok::If => "`:-`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Dot => "`.`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
    text: String,
}

fn lex(input: &str) -> Result<Vec<Spanned>, ParseError> {
    let chars: Vec<char> = input.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    while i < chars.len() {
        let c = chars[i];
        let (start_line, start_col) = (line, col);
        let push = |out: &mut Vec<Spanned>, tok: Tok, text: String| {
            out.push(Spanned { tok, line: start_line, column: start_col, text })
        };
        match c {
            '\n' => {
                i += 1;
                line += 1;
                col = 1;
            }
            c if c.is_whitespace() => {
                i += 1;
                col += 1;
            }
            '%' => {
                while i < chars.len() && chars[i] != '\n' {
                    i += 1;
                }
            }
            '|' => {
                push(&mut out, Tok::Pipe, "|".into());
                i += 1;
                col += 1;
            }
            ',' => {
                push(&mut out, Tok::Comma, ",".into());
                i += 1;
                col += 1;
            }
            '.' => {
                push(&mut out, Tok::Dot, ".".into());
                i += 1;
                col += 1;
            }
            ':' => {
                if chars.get(i + 1) == Some(&'-') {
                    push(&mut out, Tok::If, ":-".into());
                    i += 2;
                    col += 2;
                } else {
                    return Err(ParseError {
                        line,
                        column: col,
                        message: "expected `:-`".into(),
                        snippet: snippet_at(&chars, i),
                    });
                }
            }
            c if c.is_ascii_alphanumeric() || c == '_' => {
                let begin = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                let word: String = chars[begin..i].iter().collect();
                col += i - begin;
                if word == "not" {
                    push(&mut out, Tok::Not, word);
                } else if is_valid_atom_name(&word) {
                    push(&mut out, Tok::Ident(word.clone()), word);
                } else {
                    return Err(ParseError {
                        line: start_line,
                        column: start_col,
                        message: "atoms must start with a lowercase ASCII letter".into(),
                        snippet: word,
                    });
                }
            }
            other => {
                return Err(ParseError {
                    line,
                    column: col,
                    message: format!("unexpected character `{other}`"),
                    snippet: snippet_at(&chars, i),
                });
            }
        }
    }
    out.push(Spanned { tok: Tok::Eof, line, column: col, text: String::new() });
    Ok(out)
}

fn snippet_at(chars: &[char], i: usize) -> String {
    chars[i..].iter().take_while(|c| **c != '\n').take(16).collect()
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Spanned {
        &self.toks[self.pos]
    }

    fn bump(&mut self) -> Spanned {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, at: &Spanned, message: impl Into<String>) -> ParseError {
        ParseError { line: at.line, column: at.column, message: message.into(), snippet: at.text.clone() }
    }

    fn expect(&mut self, want: Tok, context: &str) -> Result<(), ParseError> {
        let t = self.bump();
        if t.tok == want {
            Ok(())
        } else {
            Err(self.error(&t, format!("expected {} {context}, found {}", want.describe(), t.tok.describe())))
        }
    }

    fn atom(&mut self, context: &str) -> Result<Atom, ParseError> {
        let t = self.bump();
        match &t.tok {
            Tok::Ident(name) => Ok(Atom::new(name)),
            Tok::Not => Err(self.error(&t, "`not` is reserved and cannot be used as an atom")),
            other => Err(self.error(&t, format!("expected an atom {context}, found {}", other.describe()))),
        }
    }

    fn rule(&mut self) -> Result<Rule, ParseError> {
        let mut head = Vec::new();
        match self.peek().tok {
            Tok::If | Tok::Dot => {}
            _ => {
                head.push(self.atom("in rule head")?);
                while self.peek().tok == Tok::Pipe {
                    self.bump();
                    head.push(self.atom("after `|`")?);
                }
            }
        }
        let t = self.bump();
        match &t.tok {
            Tok::Dot => Ok(Rule::from_literals(head, [])),
            Tok::If => {
                let mut body = vec![self.literal()?];
                while self.peek().tok == Tok::Comma {
                    self.bump();
                    body.push(self.literal()?);
                }
                self.expect(Tok::Dot, "to end the rule")?;
                Ok(Rule::from_literals(head, body))
            }
            other => Err(self.error(&t, format!("expected `.` or `:-`, found {}", other.describe()))),
        }
    }

    fn literal(&mut self) -> Result<BodyLiteral, ParseError> {
        let mut depth = 0;
        while self.peek().tok == Tok::Not {
            self.bump();
            depth += 1;
        }
        let atom = self.atom("in rule body")?;
        Ok(BodyLiteral::with_negations(atom, depth))
    }
}

/// Parses a whole program. Duplicate rules collapse.
pub fn parse_program(text: &str) -> Result<Program, ParseError> {
    let mut parser = Parser { toks: lex(text)?, pos: 0 };
    let mut program = Program::new();
    while parser.peek().tok != Tok::Eof {
        program.insert(parser.rule()?);
    }
    Ok(program)
}

/// Parses exactly one rule.
pub fn parse_rule(text: &str) -> Result<Rule, ParseError> {
    let mut parser = Parser { toks: lex(text)?, pos: 0 };
    let rule = parser.rule()?;
    let rest = parser.peek().clone();
    if rest.tok != Tok::Eof {
        return Err(parser.error(&rest, "trailing input after rule"));
    }
    Ok(rule)
}

/// Canonical text of `program`; the same as its `Display`.
pub fn print_program(program: &Program) -> String {
    program.to_string()
}

impl std::str::FromStr for Program {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_program(s)
    }
}

impl std::str::FromStr for Rule {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_rule(s)
    }
}

fn names(set: &AtomSet) -> Vec<&'static str> {
    set.iter().map(Atom::name).collect()
}

#[derive(Serialize)]
struct AnswerSetsJson {
    signature: Vec<&'static str>,
    answer_sets: Vec<Vec<&'static str>>,
}

#[derive(Serialize)]
struct HtModelsJson {
    signature: Vec<&'static str>,
    ht_models: Vec<[Vec<&'static str>; 2]>,
}

/// `{"signature":[..],"answer_sets":[[..],..]}` with every array sorted.
pub fn answer_sets_to_json(signature: &AtomSet, answer_sets: &BTreeSet<AtomSet>) -> String {
    let doc = AnswerSetsJson {
        signature: names(signature),
        answer_sets: answer_sets.iter().map(names).collect(),
    };
    serde_json::to_string(&doc).expect("plain data serializes")
}

/// `{"signature":[..],"ht_models":[[X,Y],..]}` with every array sorted.
pub fn ht_models_to_json(models: &HtModelSet) -> String {
    let doc = HtModelsJson {
        signature: names(models.signature()),
        ht_models: models.iter().map(|m| [names(&m.here), names(&m.there)]).collect(),
    };
    serde_json::to_string(&doc).expect("plain data serializes")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::program::atom_set;

    #[test]
    fn example_one() {
        let p = parse_program("t :- q. v :- not q. q :- s. q :- w.").unwrap();
        assert_eq!(p.len(), 4);
        assert_eq!(print_program(&p), "q :- s.\nq :- w.\nt :- q.\nv :- not q.\n");
    }

    #[test]
    fn disjunctive_head() {
        let r = parse_rule("q | u :- w.").unwrap();
        assert_eq!(r.head(), &atom_set(["q", "u"]));
        assert_eq!(r.pos(), &atom_set(["w"]));
        assert!(r.neg().is_empty() && r.nneg().is_empty());
    }

    #[test]
    fn negation_forms() {
        let r = parse_rule("a :- not not a.").unwrap();
        assert_eq!(r.nneg(), &atom_set(["a"]));
        let r = parse_rule("a :- not not not b, not not not not c.").unwrap();
        assert_eq!(r.neg(), &atom_set(["b"]));
        assert_eq!(r.nneg(), &atom_set(["c"]));
        let c = parse_rule(":- a, not b.").unwrap();
        assert!(c.is_constraint());
        assert_eq!(c.neg(), &atom_set(["b"]));
    }

    #[test]
    fn comments_and_whitespace() {
        let p = parse_program("% header\n a :- b. % trailing\n\n  c.\n").unwrap();
        assert_eq!(print_program(&p), "a :- b.\nc.\n");
    }

    #[test]
    fn empty_program() {
        let p = parse_program("  % nothing\n").unwrap();
        assert!(p.is_empty());
        assert_eq!(print_program(&p), "");
    }

    #[test]
    fn sorted_head() {
        let p = parse_program("u | t :- a.").unwrap();
        assert_eq!(print_program(&p), "t | u :- a.\n");
    }

    #[test]
    fn empty_constraint_round_trips() {
        // empty head, no body: the grammar spells it as a bare dot
        let p = parse_program(".").unwrap();
        assert_eq!(p.len(), 1);
        assert_eq!(print_program(&p), ".\n");
        assert!(parse_program(":-.").is_err());
        assert!(parse_program("a :- .").is_err());
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_program("a :- b.\nc :- not.").unwrap_err();
        assert_eq!((e.line, e.column), (2, 9));
        let e = parse_program("a :- b").unwrap_err();
        assert_eq!(e.line, 1);
        assert!(e.message.contains("expected `.`"));
        let e = parse_program("not :- a.").unwrap_err();
        assert!(e.message.contains("reserved"));
        let e = parse_program("a :- B.").unwrap_err();
        assert_eq!((e.line, e.column), (1, 6));
        assert_eq!(e.snippet, "B");
        let e = parse_program("a :- b;").unwrap_err();
        assert_eq!(e.column, 7);
        let e = parse_program("a : b.").unwrap_err();
        assert!(e.message.contains(":-"));
        let e = parse_program("a ∨ b.").unwrap_err();
        assert_eq!(e.column, 3);
    }

    #[test]
    fn json_documents() {
        let sig = atom_set(["a"]);
        let sets: BTreeSet<AtomSet> = [atom_set(["a"])].into_iter().collect();
        assert_eq!(answer_sets_to_json(&sig, &sets), r#"{"signature":["a"],"answer_sets":[["a"]]}"#);
        let empty: BTreeSet<AtomSet> = [AtomSet::new()].into_iter().collect();
        assert_eq!(answer_sets_to_json(&AtomSet::new(), &empty), r#"{"signature":[],"answer_sets":[[]]}"#);
    }
}
