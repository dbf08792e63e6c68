//! Surface syntax: lexer, recursive-descent parser, and pretty-printer.
//!
//! Grammar (whitespace-insensitive):
//!
//! ```text
//! atom    := aw(x) | in(x) | in'(x) | att(x,y) | aux(n)
//! formula := T | F | atom | ~f | f & f | f "|" f | f -> f | f <-> f
//!          | [p]f | <p>f | (f)
//! program := +atom | -atom | f? | p ; p | p U p | p^ | skip | (p)
//! ```
//!
//! Precedence: `~` and the modalities bind tightest, then `&`, `|`, `->`
//! (right-associative), `<->`. For programs, postfix `^` binds tightest,
//! then `;`, then `U`. Argument names match `[a-zA-Z_][a-zA-Z0-9_]*`.
//! Unknown argument names are accepted here and validated against the
//! universe later.
//!
//! Printing produces minimal parentheses and round-trips: parsing the printed
//! form of any tree yields a structurally equal tree.

use std::fmt;

use crate::syntax::{skip, Formula, FormulaKind, Program, ProgramKind};
use crate::universe::Var;

/// Byte and line/column extent of a token or error.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SourceSpan {
    pub byte_start: usize,
    pub byte_end: usize,
    /// 1-based.
    pub line: u32,
    /// 1-based.
    pub column: u32,
}

#[derive(Debug, Clone)]
pub struct ParseError {
    pub span: SourceSpan,
    pub expected: Vec<String>,
    pub found: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "parse error at line {}, column {}: expected {}, found {}",
            self.span.line,
            self.span.column,
            self.expected.join(" or "),
            self.found
        )
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Number(u32),
    LParen,
    RParen,
    Comma,
    Tilde,
    Amp,
    Pipe,
    Arrow,
    DArrow,
    LBracket,
    RBracket,
    Less,
    Greater,
    Plus,
    Minus,
    Question,
    Semi,
    Caret,
    Prime,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Number(n) => format!("`{n}`"),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Tilde => "`~`".into(),
            Tok::Amp => "`&`".into(),
            Tok::Pipe => "`|`".into(),
            Tok::Arrow => "`->`".into(),
            Tok::DArrow => "`<->`".into(),
            Tok::LBracket => "`[`".into(),
            Tok::RBracket => "`]`".into(),
            Tok::Less => "`<`".into(),
            Tok::Greater => "`>`".into(),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Question => "`?`".into(),
            Tok::Semi => "`;`".into(),
            Tok::Caret => "`^`".into(),
            Tok::Prime => "`'`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

fn lex(src: &str) -> Result<Vec<(Tok, SourceSpan)>, ParseError> {
    let bytes = src.as_bytes();
    let mut tokens = Vec::new();
    let mut i = 0;
    let mut line = 1u32;
    let mut col = 1u32;
    while i < bytes.len() {
        let start = i;
        let (sl, sc) = (line, col);
        let c = bytes[i] as char;
        let tok = match c {
            ' ' | '\t' | '\r' => {
                i += 1;
                col += 1;
                continue;
            }
            '\n' => {
                i += 1;
                line += 1;
                col = 1;
                continue;
            }
            '(' => Some((Tok::LParen, 1)),
            ')' => Some((Tok::RParen, 1)),
            ',' => Some((Tok::Comma, 1)),
            '~' => Some((Tok::Tilde, 1)),
            '&' => Some((Tok::Amp, 1)),
            '|' => Some((Tok::Pipe, 1)),
            '[' => Some((Tok::LBracket, 1)),
            ']' => Some((Tok::RBracket, 1)),
            '>' => Some((Tok::Greater, 1)),
            '+' => Some((Tok::Plus, 1)),
            '?' => Some((Tok::Question, 1)),
            ';' => Some((Tok::Semi, 1)),
            '^' => Some((Tok::Caret, 1)),
            '\'' => Some((Tok::Prime, 1)),
            '<' => {
                if src[i..].starts_with("<->") {
                    Some((Tok::DArrow, 3))
                } else {
                    Some((Tok::Less, 1))
                }
            }
            '-' => {
                if src[i..].starts_with("->") {
                    Some((Tok::Arrow, 2))
                } else {
                    Some((Tok::Minus, 1))
                }
            }
            _ if c.is_ascii_alphabetic() || c == '_' => {
                let mut j = i + 1;
                while j < bytes.len()
                    && ((bytes[j] as char).is_ascii_alphanumeric() || bytes[j] == b'_')
                {
                    j += 1;
                }
                let ident = src[i..j].to_string();
                let n = j - i;
                Some((Tok::Ident(ident), n))
            }
            _ if c.is_ascii_digit() => {
                let mut j = i + 1;
                while j < bytes.len() && (bytes[j] as char).is_ascii_digit() {
                    j += 1;
                }
                let n: u32 = src[i..j].parse().map_err(|_| ParseError {
                    span: SourceSpan {
                        byte_start: i,
                        byte_end: j,
                        line: sl,
                        column: sc,
                    },
                    expected: vec!["a small nonnegative integer".into()],
                    found: format!("`{}`", &src[i..j]),
                })?;
                Some((Tok::Number(n), j - i))
            }
            _ => {
                return Err(ParseError {
                    span: SourceSpan {
                        byte_start: i,
                        byte_end: i + c.len_utf8(),
                        line: sl,
                        column: sc,
                    },
                    expected: vec!["a token".into()],
                    found: format!("`{c}`"),
                })
            }
        };
        let (tok, len) = tok.unwrap();
        i += len;
        col += len as u32;
        tokens.push((
            tok,
            SourceSpan {
                byte_start: start,
                byte_end: i,
                line: sl,
                column: sc,
            },
        ));
    }
    tokens.push((
        Tok::Eof,
        SourceSpan {
            byte_start: src.len(),
            byte_end: src.len(),
            line,
            column: col,
        },
    ));
    Ok(tokens)
}

struct Parser {
    tokens: Vec<(Tok, SourceSpan)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.tokens[self.pos].0
    }

    fn span(&self) -> SourceSpan {
        self.tokens[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.tokens[self.pos].0.clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn err<T>(&self, expected: &[&str]) -> Result<T, ParseError> {
        Err(ParseError {
            span: self.span(),
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: self.peek().describe(),
        })
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), ParseError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            self.err(&[what])
        }
    }

    // ----- atoms -----

    fn parse_atom(&mut self) -> Result<Var, ParseError> {
        let head = match self.peek().clone() {
            Tok::Ident(s) => {
                self.bump();
                s
            }
            _ => return self.err(&["`aw`", "`in`", "`in'`", "`att`", "`aux`"])?,
        };
        let primed = if head == "in" && *self.peek() == Tok::Prime {
            self.bump();
            true
        } else {
            false
        };
        self.expect(Tok::LParen, "`(`")?;
        let var = match (head.as_str(), primed) {
            ("aw", _) => Var::Aw(self.parse_name()?),
            ("in", true) => Var::InPrime(self.parse_name()?),
            ("in", false) => Var::In(self.parse_name()?),
            ("att", _) => {
                let x = self.parse_name()?;
                self.expect(Tok::Comma, "`,`")?;
                let y = self.parse_name()?;
                Var::Att(x, y)
            }
            ("aux", _) => match self.peek().clone() {
                Tok::Number(n) => {
                    self.bump();
                    Var::Aux(n)
                }
                _ => return self.err(&["a nonnegative integer"]),
            },
            _ => {
                return Err(ParseError {
                    span: self.span(),
                    expected: vec![
                        "`aw`".into(),
                        "`in`".into(),
                        "`in'`".into(),
                        "`att`".into(),
                        "`aux`".into(),
                    ],
                    found: format!("`{head}`"),
                })
            }
        };
        self.expect(Tok::RParen, "`)`")?;
        Ok(var)
    }

    fn parse_name(&mut self) -> Result<String, ParseError> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.bump();
                Ok(s)
            }
            _ => self.err(&["an argument name"]),
        }
    }

    // ----- formulas -----

    fn parse_formula(&mut self) -> Result<Formula, ParseError> {
        self.parse_iff()
    }

    fn parse_iff(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.parse_implies()?;
        if *self.peek() == Tok::DArrow {
            self.bump();
            let rhs = self.parse_iff()?;
            Ok(lhs.iff(rhs))
        } else {
            Ok(lhs)
        }
    }

    fn parse_implies(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.parse_or()?;
        if *self.peek() == Tok::Arrow {
            self.bump();
            let rhs = self.parse_implies()?;
            Ok(lhs.implies(rhs))
        } else {
            Ok(lhs)
        }
    }

    fn parse_or(&mut self) -> Result<Formula, ParseError> {
        let first = self.parse_and()?;
        if *self.peek() != Tok::Pipe {
            return Ok(first);
        }
        let mut parts = vec![first];
        while *self.peek() == Tok::Pipe {
            self.bump();
            parts.push(self.parse_and()?);
        }
        Ok(Formula::or(parts))
    }

    fn parse_and(&mut self) -> Result<Formula, ParseError> {
        let first = self.parse_unary()?;
        if *self.peek() != Tok::Amp {
            return Ok(first);
        }
        let mut parts = vec![first];
        while *self.peek() == Tok::Amp {
            self.bump();
            parts.push(self.parse_unary()?);
        }
        Ok(Formula::and(parts))
    }

    fn parse_unary(&mut self) -> Result<Formula, ParseError> {
        match self.peek().clone() {
            Tok::Tilde => {
                self.bump();
                Ok(self.parse_unary()?.not())
            }
            Tok::LBracket => {
                self.bump();
                let p = self.parse_program()?;
                self.expect(Tok::RBracket, "`]`")?;
                let f = self.parse_unary()?;
                Ok(Formula::boxed(p, f))
            }
            Tok::Less => {
                self.bump();
                let p = self.parse_program()?;
                self.expect(Tok::Greater, "`>`")?;
                let f = self.parse_unary()?;
                Ok(Formula::diamond(p, f))
            }
            Tok::LParen => {
                self.bump();
                let f = self.parse_formula()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(f)
            }
            Tok::Ident(s) if s == "T" => {
                self.bump();
                Ok(Formula::top())
            }
            Tok::Ident(s) if s == "F" => {
                self.bump();
                Ok(Formula::bot())
            }
            Tok::Ident(_) => Ok(Formula::atom(self.parse_atom()?)),
            _ => self.err(&["a formula"]),
        }
    }

    // ----- programs -----

    fn parse_program(&mut self) -> Result<Program, ParseError> {
        self.parse_choice()
    }

    fn parse_choice(&mut self) -> Result<Program, ParseError> {
        let mut lhs = self.parse_seq()?;
        while matches!(self.peek(), Tok::Ident(s) if s == "U") {
            self.bump();
            let rhs = self.parse_seq()?;
            lhs = lhs.choice(rhs);
        }
        Ok(lhs)
    }

    fn parse_seq(&mut self) -> Result<Program, ParseError> {
        let mut lhs = self.parse_postfix()?;
        while *self.peek() == Tok::Semi {
            self.bump();
            let rhs = self.parse_postfix()?;
            lhs = lhs.seq(rhs);
        }
        Ok(lhs)
    }

    fn parse_postfix(&mut self) -> Result<Program, ParseError> {
        let mut p = self.parse_program_primary()?;
        while *self.peek() == Tok::Caret {
            self.bump();
            p = p.converse();
        }
        Ok(p)
    }

    fn parse_program_primary(&mut self) -> Result<Program, ParseError> {
        match self.peek().clone() {
            Tok::Plus => {
                self.bump();
                Ok(Program::assign_true(self.parse_atom()?))
            }
            Tok::Minus => {
                self.bump();
                Ok(Program::assign_false(self.parse_atom()?))
            }
            Tok::Ident(s) if s == "skip" => {
                self.bump();
                Ok(skip())
            }
            Tok::LParen => {
                // Either a parenthesised program or a parenthesised formula
                // followed by `?`. Try the program reading first and fall
                // back on failure or when a test marker follows.
                let snapshot = self.pos;
                self.bump();
                let as_program = self
                    .parse_program()
                    .and_then(|p| self.expect(Tok::RParen, "`)`").map(|_| p));
                match as_program {
                    Ok(p) if *self.peek() != Tok::Question => Ok(p),
                    _ => {
                        self.pos = snapshot;
                        self.bump();
                        let f = self.parse_formula()?;
                        self.expect(Tok::RParen, "`)`")?;
                        self.expect(Tok::Question, "`?`")?;
                        Ok(Program::test(f))
                    }
                }
            }
            _ => {
                // A test: formula followed by `?`.
                let f = self.parse_formula()?;
                self.expect(Tok::Question, "`?`")?;
                Ok(Program::test(f))
            }
        }
    }
}

/// Parses a formula from the surface syntax.
pub fn parse_formula(text: &str) -> Result<Formula, ParseError> {
    let mut parser = Parser {
        tokens: lex(text)?,
        pos: 0,
    };
    let f = parser.parse_formula()?;
    parser.expect(Tok::Eof, "end of input")?;
    Ok(f)
}

/// Parses a program from the surface syntax.
pub fn parse_program(text: &str) -> Result<Program, ParseError> {
    let mut parser = Parser {
        tokens: lex(text)?,
        pos: 0,
    };
    let p = parser.parse_program()?;
    parser.expect(Tok::Eof, "end of input")?;
    Ok(p)
}

/// Parses a comma-separated list of variable atoms, optionally braced:
/// `{aw(a), in(b), att(a,b)}`. The empty string is the empty list.
pub fn parse_var_list(text: &str) -> Result<Vec<Var>, ParseError> {
    let trimmed = text.trim();
    let inner = match (trimmed.strip_prefix('{'), trimmed) {
        (Some(rest), _) => rest.strip_suffix('}').unwrap_or(rest),
        (None, t) => t,
    };
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    let mut parser = Parser {
        tokens: lex(inner)?,
        pos: 0,
    };
    let mut vars = vec![parser.parse_atom()?];
    while *parser.peek() == Tok::Comma {
        parser.bump();
        vars.push(parser.parse_atom()?);
    }
    parser.expect(Tok::Eof, "end of input")?;
    Ok(vars)
}

// ----- printing -----

fn print_var(var: &Var, out: &mut String) {
    use std::fmt::Write;
    let _ = write!(out, "{var}");
}

// Formula precedence levels, loosest first.
const PREC_IFF: u8 = 0;
const PREC_IMPLIES: u8 = 1;
const PREC_OR: u8 = 2;
const PREC_AND: u8 = 3;
const PREC_UNARY: u8 = 4;

fn formula_prec(f: &Formula) -> u8 {
    match f.kind() {
        FormulaKind::Iff(..) => PREC_IFF,
        FormulaKind::Implies(..) => PREC_IMPLIES,
        FormulaKind::Or(..) => PREC_OR,
        FormulaKind::And(..) => PREC_AND,
        _ => PREC_UNARY,
    }
}

fn print_formula_prec(f: &Formula, min: u8, out: &mut String) {
    let prec = formula_prec(f);
    let parens = prec < min;
    if parens {
        out.push('(');
    }
    match f.kind() {
        FormulaKind::Atom(v) => print_var(v, out),
        FormulaKind::Top => out.push('T'),
        FormulaKind::Bot => out.push('F'),
        FormulaKind::Not(g) => {
            out.push('~');
            print_formula_prec(g, PREC_UNARY, out);
        }
        FormulaKind::And(gs) => {
            for (i, g) in gs.iter().enumerate() {
                if i > 0 {
                    out.push_str(" & ");
                }
                // same-precedence children keep their own parentheses so that
                // reparsing does not flatten them into this conjunction
                print_formula_prec(g, PREC_AND + 1, out);
            }
        }
        FormulaKind::Or(gs) => {
            for (i, g) in gs.iter().enumerate() {
                if i > 0 {
                    out.push_str(" | ");
                }
                print_formula_prec(g, PREC_OR + 1, out);
            }
        }
        FormulaKind::Implies(a, b) => {
            print_formula_prec(a, PREC_IMPLIES + 1, out);
            out.push_str(" -> ");
            print_formula_prec(b, PREC_IMPLIES, out);
        }
        FormulaKind::Iff(a, b) => {
            print_formula_prec(a, PREC_IFF + 1, out);
            out.push_str(" <-> ");
            print_formula_prec(b, PREC_IFF, out);
        }
        FormulaKind::Box(p, g) => {
            out.push('[');
            print_program_prec(p, 0, out);
            out.push(']');
            print_formula_prec(g, PREC_UNARY, out);
        }
        FormulaKind::Diamond(p, g) => {
            out.push('<');
            print_program_prec(p, 0, out);
            out.push('>');
            print_formula_prec(g, PREC_UNARY, out);
        }
    }
    if parens {
        out.push(')');
    }
}

const PREC_CHOICE: u8 = 0;
const PREC_SEQ: u8 = 1;
const PREC_POSTFIX: u8 = 2;

fn program_prec(p: &Program) -> u8 {
    match p.kind() {
        ProgramKind::Choice(..) => PREC_CHOICE,
        ProgramKind::Seq(..) => PREC_SEQ,
        _ => PREC_POSTFIX,
    }
}

fn is_skip(p: &Program) -> bool {
    matches!(p.kind(), ProgramKind::Test(f) if matches!(f.kind(), FormulaKind::Top))
}

fn print_program_prec(p: &Program, min: u8, out: &mut String) {
    let prec = program_prec(p);
    let parens = prec < min;
    if parens {
        out.push('(');
    }
    match p.kind() {
        ProgramKind::AssignTrue(v) => {
            out.push('+');
            print_var(v, out);
        }
        ProgramKind::AssignFalse(v) => {
            out.push('-');
            print_var(v, out);
        }
        ProgramKind::Test(f) => {
            if is_skip(p) {
                out.push_str("skip");
            } else {
                // Tests with non-atomic bodies keep parentheses so that `?`
                // unambiguously attaches to the whole formula.
                if formula_prec(f) == PREC_UNARY {
                    print_formula_prec(f, PREC_UNARY, out);
                } else {
                    out.push('(');
                    print_formula_prec(f, 0, out);
                    out.push(')');
                }
                out.push('?');
            }
        }
        ProgramKind::Seq(a, b) => {
            print_program_prec(a, PREC_SEQ, out);
            out.push_str(" ; ");
            print_program_prec(b, PREC_SEQ + 1, out);
        }
        ProgramKind::Choice(a, b) => {
            print_program_prec(a, PREC_CHOICE, out);
            out.push_str(" U ");
            print_program_prec(b, PREC_CHOICE + 1, out);
        }
        ProgramKind::Converse(inner) => {
            print_program_prec(inner, PREC_POSTFIX, out);
            out.push('^');
        }
    }
    if parens {
        out.push(')');
    }
}

/// Prints a formula; `parse_formula(print_formula(f))` is structurally `f`.
pub fn print_formula(f: &Formula) -> String {
    let mut out = String::new();
    print_formula_prec(f, 0, &mut out);
    out
}

/// Prints a program; `parse_program(print_program(p))` is structurally `p`.
pub fn print_program(p: &Program) -> String {
    let mut out = String::new();
    print_program_prec(p, 0, &mut out);
    out
}
