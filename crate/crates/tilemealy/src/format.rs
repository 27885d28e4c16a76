//! Text file formats for Mealy automata and tile sets.
//!
//! Automaton format, one machine per file:
//!
//! ```text
//! # comment
//! states: s1 s2 ...
//! alphabet: x1 x2 ...
//! s , x -> s' / y
//! ```
//!
//! Tile set format:
//!
//! ```text
//! palette: c0 c1 ...
//! name: N S E W
//! ```
//!
//! Both are whitespace-insensitive, `#` starts a comment, totality and
//! duplicates are checked, and printing is canonical so that parse ∘ print
//! is the identity.

use thiserror::Error;

use crate::mealy::{MealyAutomaton, MealyBuilder, MealyError};
use crate::wang::{TileSet, WangError};
use crate::words::Alphabet;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}, column {col}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl ParseError {
    fn new(line: usize, col: usize, message: impl Into<String>) -> ParseError {
        ParseError {
            line,
            col,
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Token<'a> {
    Name(&'a str),
    Comma,
    Arrow,
    Slash,
    Colon,
}

impl<'a> Token<'a> {
    fn describe(&self) -> String {
        match self {
            Token::Name(n) => format!("`{n}`"),
            Token::Comma => "`,`".into(),
            Token::Arrow => "`->`".into(),
            Token::Slash => "`/`".into(),
            Token::Colon => "`:`".into(),
        }
    }
}

/// Tokenizes one line, returning `(1-based column, token)` pairs. The `#`
/// comment marker and everything after it is ignored. Names are maximal
/// runs not containing whitespace or the punctuation `, / : #`; a `-`
/// immediately followed by `>` is the arrow token.
fn tokenize(line: &str) -> Result<Vec<(usize, Token<'_>)>, ParseError> {
    let bytes = line.as_bytes();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c == '#' {
            break;
        }
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let col = i + 1;
        match c {
            ',' => {
                tokens.push((col, Token::Comma));
                i += 1;
            }
            '/' => {
                tokens.push((col, Token::Slash));
                i += 1;
            }
            ':' => {
                tokens.push((col, Token::Colon));
                i += 1;
            }
            '-' if i + 1 < bytes.len() && bytes[i + 1] == b'>' => {
                tokens.push((col, Token::Arrow));
                i += 2;
            }
            _ => {
                let start = i;
                while i < bytes.len() {
                    let c = bytes[i] as char;
                    if c.is_whitespace() || matches!(c, ',' | '/' | ':' | '#') {
                        break;
                    }
                    if c == '-' && i + 1 < bytes.len() && bytes[i + 1] == b'>' {
                        break;
                    }
                    i += 1;
                }
                tokens.push((col, Token::Name(&line[start..i])));
            }
        }
    }
    Ok(tokens)
}

/// A header line `keyword: name name ...`; returns the names.
fn parse_header<'a>(
    lineno: usize,
    tokens: &[(usize, Token<'a>)],
    keyword: &str,
) -> Result<Vec<&'a str>, ParseError> {
    match tokens.first() {
        Some((_, Token::Name(n))) if *n == keyword => {}
        Some((col, t)) => {
            return Err(ParseError::new(
                lineno,
                *col,
                format!("expected `{keyword}:`, found {}", t.describe()),
            ))
        }
        None => return Err(ParseError::new(lineno, 1, format!("expected `{keyword}:`"))),
    }
    match tokens.get(1) {
        Some((_, Token::Colon)) => {}
        _ => {
            return Err(ParseError::new(
                lineno,
                tokens[0].0,
                format!("expected `:` after `{keyword}`"),
            ))
        }
    }
    let mut names = Vec::new();
    for (col, t) in &tokens[2..] {
        match t {
            Token::Name(n) => names.push(*n),
            other => {
                return Err(ParseError::new(
                    lineno,
                    *col,
                    format!("expected a name, found {}", other.describe()),
                ))
            }
        }
    }
    if names.is_empty() {
        return Err(ParseError::new(
            lineno,
            tokens[1].0,
            format!("`{keyword}:` needs at least one name"),
        ));
    }
    Ok(names)
}

fn meaningful_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| {
            let before_comment = l.split('#').next().unwrap_or("");
            !before_comment.trim().is_empty()
        })
}

/// Parses the automaton text format.
pub fn parse_automaton(text: &str) -> Result<MealyAutomaton, ParseError> {
    let mut lines = meaningful_lines(text);

    let (states_lineno, states_line) = lines
        .next()
        .ok_or_else(|| ParseError::new(1, 1, "empty file: expected `states:`"))?;
    let state_names = parse_header(states_lineno, &tokenize(states_line)?, "states")?;

    let (alpha_lineno, alpha_line) = lines
        .next()
        .ok_or_else(|| ParseError::new(states_lineno + 1, 1, "expected `alphabet:`"))?;
    let letter_names = parse_header(alpha_lineno, &tokenize(alpha_line)?, "alphabet")?;

    let states = Alphabet::new(state_names.iter().copied())
        .map_err(|e| ParseError::new(states_lineno, 1, e.to_string()))?;
    let alphabet = Alphabet::new(letter_names.iter().copied())
        .map_err(|e| ParseError::new(alpha_lineno, 1, e.to_string()))?;
    let mut builder = MealyBuilder::new(states, alphabet);

    let mut last_lineno = alpha_lineno;
    for (lineno, line) in lines {
        last_lineno = lineno;
        let tokens = tokenize(line)?;
        // Grammar: NAME , NAME -> NAME / NAME
        let expect_shape = "expected `state , letter -> state / letter`";
        if tokens.len() != 7 {
            let col = tokens.first().map(|(c, _)| *c).unwrap_or(1);
            return Err(ParseError::new(lineno, col, expect_shape));
        }
        let name_at = |i: usize| -> Result<(usize, &str), ParseError> {
            match tokens[i] {
                (col, Token::Name(n)) => Ok((col, n)),
                (col, t) => Err(ParseError::new(
                    lineno,
                    col,
                    format!("expected a name, found {}", t.describe()),
                )),
            }
        };
        let punct_at = |i: usize, want: Token<'_>| -> Result<(), ParseError> {
            if tokens[i].1 == want {
                Ok(())
            } else {
                Err(ParseError::new(
                    lineno,
                    tokens[i].0,
                    format!("expected {}, found {}", want.describe(), tokens[i].1.describe()),
                ))
            }
        };
        let (scol, s) = name_at(0)?;
        punct_at(1, Token::Comma)?;
        let (xcol, x) = name_at(2)?;
        punct_at(3, Token::Arrow)?;
        let (s2col, s2) = name_at(4)?;
        punct_at(5, Token::Slash)?;
        let (ycol, y) = name_at(6)?;

        let lookup_state = |name: &str, col: usize| {
            builder
                .states()
                .symbol(name)
                .ok_or_else(|| ParseError::new(lineno, col, format!("undeclared state `{name}`")))
        };
        let lookup_letter = |name: &str, col: usize| {
            builder
                .alphabet()
                .symbol(name)
                .ok_or_else(|| ParseError::new(lineno, col, format!("undeclared letter `{name}`")))
        };
        let s = lookup_state(s, scol)?;
        let x = lookup_letter(x, xcol)?;
        let s2 = lookup_state(s2, s2col)?;
        let y = lookup_letter(y, ycol)?;
        builder
            .set(s, x, s2, y)
            .map_err(|e| ParseError::new(lineno, scol, e.to_string()))?;
    }

    builder.build().map_err(|errors| {
        let first = errors
            .first()
            .map(MealyError::to_string)
            .unwrap_or_else(|| "invalid machine".into());
        ParseError::new(last_lineno + 1, 1, first)
    })
}

/// Canonical printing of a machine: headers, then one rule line per
/// (state, letter) pair in declaration order.
pub fn print_automaton(m: &MealyAutomaton) -> String {
    let mut out = String::new();
    out.push_str("states:");
    for n in m.states().names() {
        out.push(' ');
        out.push_str(n);
    }
    out.push('\n');
    out.push_str("alphabet:");
    for n in m.alphabet().names() {
        out.push(' ');
        out.push_str(n);
    }
    out.push('\n');
    for a in m.states().symbols() {
        for x in m.alphabet().symbols() {
            out.push_str(&format!(
                "{} , {} -> {} / {}\n",
                m.states().name(a),
                m.alphabet().name(x),
                m.states().name(m.delta(a, x)),
                m.alphabet().name(m.sigma(a, x)),
            ));
        }
    }
    out
}

struct ParsedTile {
    lineno: usize,
    col: usize,
    name: String,
    colors: [String; 4],
}

/// Parses the tile set text format.
pub fn parse_tileset(text: &str) -> Result<TileSet, ParseError> {
    let mut lines = meaningful_lines(text);
    let (pal_lineno, pal_line) = lines
        .next()
        .ok_or_else(|| ParseError::new(1, 1, "empty file: expected `palette:`"))?;
    let palette = parse_header(pal_lineno, &tokenize(pal_line)?, "palette")?;

    let mut tiles: Vec<ParsedTile> = Vec::new();
    for (lineno, line) in lines {
        let tokens = tokenize(line)?;
        let expect_shape = "expected `name: N S E W`";
        if tokens.len() != 6 {
            let col = tokens.first().map(|(c, _)| *c).unwrap_or(1);
            return Err(ParseError::new(lineno, col, expect_shape));
        }
        let Token::Name(name) = tokens[0].1 else {
            return Err(ParseError::new(lineno, tokens[0].0, expect_shape));
        };
        if tokens[1].1 != Token::Colon {
            return Err(ParseError::new(lineno, tokens[1].0, "expected `:` after the tile name"));
        }
        let mut colors: [String; 4] = Default::default();
        for (slot, (col, token)) in colors.iter_mut().zip(&tokens[2..6]) {
            match token {
                Token::Name(c) => *slot = (*c).to_owned(),
                _ => return Err(ParseError::new(lineno, *col, "expected a color name")),
            }
        }
        tiles.push(ParsedTile {
            lineno,
            col: tokens[0].0,
            name: name.to_owned(),
            colors,
        });
    }

    let tile_refs: Vec<(&str, &str, &str, &str, &str)> = tiles
        .iter()
        .map(|t| {
            (
                t.name.as_str(),
                t.colors[0].as_str(),
                t.colors[1].as_str(),
                t.colors[2].as_str(),
                t.colors[3].as_str(),
            )
        })
        .collect();
    TileSet::new(&palette, &tile_refs).map_err(|e| match &e {
        WangError::UnknownColor(color) => {
            // Point at the offending tile line when possible.
            for t in &tiles {
                if t.colors.contains(color) {
                    return ParseError::new(t.lineno, t.col, e.to_string());
                }
            }
            ParseError::new(pal_lineno, 1, e.to_string())
        }
        WangError::DuplicateTile(name) | WangError::BadName(name, _) => {
            for t in tiles.iter().rev() {
                if &t.name == name {
                    return ParseError::new(t.lineno, t.col, e.to_string());
                }
            }
            ParseError::new(pal_lineno, 1, e.to_string())
        }
        _ => ParseError::new(pal_lineno, 1, e.to_string()),
    })
}

/// Canonical printing of a tile set.
pub fn print_tileset(ts: &TileSet) -> String {
    let mut out = String::new();
    out.push_str("palette:");
    for c in ts.palette() {
        out.push(' ');
        out.push_str(c);
    }
    out.push('\n');
    for i in 0..ts.len() {
        let t = ts.tile(i);
        out.push_str(&format!(
            "{}: {} {} {} {}\n",
            ts.tile_name(i),
            ts.color_name(t.north),
            ts.color_name(t.south),
            ts.color_name(t.east),
            ts.color_name(t.west),
        ));
    }
    out
}
