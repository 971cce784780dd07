//! Text grammar for words and presentations.
//!
//! ```text
//! presentation := "fp" ("<" | "⟨") names "|" relations (">" | "⟩")
//! names        := ident ("," ident)*
//! relations    := relation ("," relation)*      (may be empty)
//! relation     := word ("=" word)?
//! word         := term (("*")? term)*
//! term         := factor ("^" integer)*
//! factor       := ident | "1" | "(" word ")" | "[" word "," word "]"
//! ident        := letter (digit | "_" | "'")*
//! ```
//!
//! Juxtaposition is product, so `xy` is `x*y` and `x1y` is `x1*y`.
//! `[a,b]` is the commutator `a^-1 b^-1 a b`. Positions in errors are
//! 0-based character offsets.

use super::word::Word;
use super::FpGroup;
use crate::error::ParseError;

pub(crate) struct Cursor<'a> {
    chars: Vec<char>,
    pub pos: usize,
    names: &'a [String],
}

type PResult<T> = std::result::Result<T, ParseError>;

impl<'a> Cursor<'a> {
    fn new(text: &str, names: &'a [String]) -> Self {
        Cursor {
            chars: text.chars().collect(),
            pos: 0,
            names,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> PResult<()> {
        if self.eat(c) {
            Ok(())
        } else {
            let found = self.peek().map(|x| format!("{:?}", x)).unwrap_or_else(|| "end of input".into());
            Err(ParseError::new(self.pos, format!("expected {:?}, found {}", c, found))
                .expecting(&[&c.to_string()]))
        }
    }

    fn ident(&mut self) -> Option<String> {
        self.skip_ws();
        let start = self.pos;
        match self.chars.get(self.pos) {
            Some(c) if c.is_ascii_alphabetic() => self.pos += 1,
            _ => return None,
        }
        while let Some(&c) = self.chars.get(self.pos) {
            if c.is_ascii_digit() || c == '_' || c == '\'' {
                self.pos += 1;
            } else {
                break;
            }
        }
        Some(self.chars[start..self.pos].iter().collect())
    }

    fn integer(&mut self) -> PResult<i64> {
        self.skip_ws();
        let start = self.pos;
        if self.chars.get(self.pos) == Some(&'-') {
            self.pos += 1;
        }
        let digits = self.pos;
        while matches!(self.chars.get(self.pos), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == digits {
            return Err(ParseError::new(self.pos, "expected an integer exponent").expecting(&["integer"]));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse()
            .map_err(|_| ParseError::new(start, format!("exponent {} out of range", s)))
    }

    fn starts_factor(&mut self) -> bool {
        matches!(self.peek(), Some(c) if c.is_ascii_alphabetic() || c == '(' || c == '[' || c == '1')
    }

    fn factor(&mut self) -> PResult<Word> {
        let at = {
            self.skip_ws();
            self.pos
        };
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let w = self.word()?;
                if !self.eat(')') {
                    return Err(ParseError::new(at, "unclosed parenthesis").expecting(&[")"]));
                }
                Ok(w)
            }
            Some('[') => {
                self.pos += 1;
                let a = self.word()?;
                self.expect(',')?;
                let b = self.word()?;
                if !self.eat(']') {
                    return Err(ParseError::new(at, "unclosed commutator bracket").expecting(&["]"]));
                }
                Ok(a.inverse().concat(&b.inverse()).concat(&a).concat(&b))
            }
            Some('1') => {
                self.pos += 1;
                Ok(Word::empty())
            }
            _ => {
                let name = self.ident().ok_or_else(|| {
                    ParseError::new(at, "expected a generator, '(' or '['").expecting(&["generator", "(", "[", "1"])
                })?;
                let i = self
                    .names
                    .iter()
                    .position(|n| *n == name)
                    .ok_or_else(|| ParseError::new(at, format!("unknown generator {:?}", name)).expecting(&["generator"]))?;
                Ok(Word::generator(i))
            }
        }
    }

    fn term(&mut self) -> PResult<Word> {
        let mut w = self.factor()?;
        while self.eat('^') {
            let e = self.integer()?;
            w = w.pow(e);
        }
        Ok(w)
    }

    pub(crate) fn word(&mut self) -> PResult<Word> {
        let mut w = self.term()?;
        loop {
            // juxtaposition also multiplies
            if self.eat('*') || self.starts_factor() {
                w = w.concat(&self.term()?);
            } else {
                return Ok(w);
            }
        }
    }

    fn relation(&mut self) -> PResult<Word> {
        let lhs = self.word()?;
        if self.eat('=') {
            let rhs = self.word()?;
            Ok(lhs.concat(&rhs.inverse()))
        } else {
            Ok(lhs)
        }
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }
}

/// Parses a word over the given generator names.
pub fn parse_word(text: &str, names: &[String]) -> Result<Word, ParseError> {
    let mut c = Cursor::new(text, names);
    let w = c.word()?;
    if !c.at_end() {
        return Err(ParseError::new(c.pos, "unexpected trailing input").expecting(&["*", "^", "end of input"]));
    }
    Ok(w)
}

/// Parses a comma-separated list of words (used for subgroup generators).
pub fn parse_word_list(text: &str, names: &[String]) -> Result<Vec<Word>, ParseError> {
    let mut c = Cursor::new(text, names);
    let mut out = Vec::new();
    if c.at_end() {
        return Ok(out);
    }
    loop {
        out.push(c.word()?);
        if c.at_end() {
            return Ok(out);
        }
        c.expect(',')?;
    }
}

/// Parses `fp<x,y| x^3*y^-2>` (or with `⟨ ⟩`).
pub fn parse_presentation(text: &str) -> Result<FpGroup, ParseError> {
    let empty: Vec<String> = Vec::new();
    let mut c = Cursor::new(text, &empty);
    c.skip_ws();
    let rest: String = c.chars[c.pos..].iter().take(2).collect();
    if rest != "fp" {
        return Err(ParseError::new(c.pos, "presentation must start with \"fp\"").expecting(&["fp"]));
    }
    c.pos += 2;
    let open = match c.peek() {
        Some('<') => '>',
        Some('⟨') => '⟩',
        _ => return Err(ParseError::new(c.pos, "expected '<'").expecting(&["<", "⟨"])),
    };
    let open_pos = c.pos;
    c.pos += 1;
    let mut names: Vec<String> = Vec::new();
    if c.peek() != Some('|') {
        loop {
            let at = {
                c.skip_ws();
                c.pos
            };
            let n = c
                .ident()
                .ok_or_else(|| ParseError::new(at, "expected a generator name").expecting(&["generator name"]))?;
            if names.contains(&n) {
                return Err(ParseError::new(at, format!("duplicate generator {:?}", n)));
            }
            names.push(n);
            if !c.eat(',') {
                break;
            }
        }
    }
    c.expect('|')?;
    let mut relators = Vec::new();
    let names_ref = names.clone();
    let mut rc = Cursor {
        chars: c.chars.clone(),
        pos: c.pos,
        names: &names_ref,
    };
    if rc.peek() != Some(open) {
        loop {
            relators.push(rc.relation()?);
            if !rc.eat(',') {
                break;
            }
        }
    }
    if !rc.eat(open) {
        if rc.at_end() {
            return Err(ParseError::new(open_pos, "unclosed presentation bracket").expecting(&[&open.to_string()]));
        }
        return Err(ParseError::new(rc.pos, "expected ',' or closing bracket").expecting(&[",", &open.to_string()]));
    }
    if !rc.at_end() {
        return Err(ParseError::new(rc.pos, "unexpected trailing input"));
    }
    Ok(FpGroup::new(names, relators).expect("parsed words use declared generators"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xy() -> Vec<String> {
        vec!["x".into(), "y".into()]
    }

    #[test]
    fn trefoil_expands_to_five_letters() {
        let g = parse_presentation("fp<x,y| x^3*y^-2>").unwrap();
        assert_eq!(g.generators(), &["x".to_string(), "y".to_string()]);
        assert_eq!(g.relators().len(), 1);
        assert_eq!(g.relators()[0].len(), 5);
        assert_eq!(g.relators()[0].letters(), &[1, 1, 1, -2, -2]);
        let u = parse_presentation("fp⟨x, y | x^3 y^-2⟩").unwrap();
        assert_eq!(u, g);
    }

    #[test]
    fn grammar_features() {
        let n = xy();
        assert_eq!(parse_word("xy", &n).unwrap().letters(), &[1, 2]);
        assert_eq!(parse_word("(xy)^2", &n).unwrap().letters(), &[1, 2, 1, 2]);
        assert_eq!(parse_word("x^-1", &n).unwrap().letters(), &[-1]);
        assert_eq!(parse_word("[x,y]", &n).unwrap().letters(), &[-1, -2, 1, 2]);
        assert_eq!(parse_word("1", &n).unwrap().letters(), &[] as &[i32]);
        let g = parse_presentation("fp<a,b | a^2, b^3, a*b = b*a>").unwrap();
        assert_eq!(g.relators()[2].letters(), &[1, 2, -1, -2]);
        let free = parse_presentation("fp<a|>").unwrap();
        assert!(free.relators().is_empty());
    }

    #[test]
    fn errors_carry_positions() {
        let n = xy();
        let e = parse_word("x*(y", &n).unwrap_err();
        assert_eq!(e.position, 2);
        let e = parse_word("x*z", &n).unwrap_err();
        assert_eq!(e.position, 2);
        let e = parse_word("x^", &n).unwrap_err();
        assert_eq!(e.position, 2);
        assert!(parse_presentation("fp<x|x^2").is_err());
        assert!(parse_presentation("<x|x^2>").is_err());
    }
}
