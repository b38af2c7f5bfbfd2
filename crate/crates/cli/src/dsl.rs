//! Parser for the family DSL, e.g. `supernova(cycles=3,4; arms=2,2,5)`.
//!
//! ```text
//! spec  := path(N) | cycle(N) | paths(N,..) | star(N,..) | bouquet(N,..)
//!        | supernova(novaargs) | kbip(N,N) | kbipjoin(N,N,N,N,CASE)
//!        | pulsar(nova, nova, bridge=N, gap=N) | binarystar(nova, nova, w=N)
//!        | join(spec[@N], spec[@N]) | union(spec, ..)
//! nova  := nova(novaargs)
//! novaargs := cycles=[N,..] ; arms=[N,..]
//! ```
//!
//! Whitespace is allowed between tokens. Printing a spec with `Display`
//! gives text that parses back to the same spec.

use inertia_core::algebra::{AlgebraError, InertiaSet};
use inertia_core::graphs::{BipartiteCase, FamilySpec, GraphError, Nova};
use thiserror::Error;

/// A syntax error at a 1-based line and column.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {col}: expected {expected}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub expected: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpecError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Invalid(#[from] GraphError),
}

pub fn parse_family_spec(text: &str) -> Result<FamilySpec, SpecError> {
    let mut p = Parser { src: text, pos: 0 };
    let spec = p.spec()?;
    p.skip_ws();
    if p.pos != text.len() {
        return Err(p.error("end of input").into());
    }
    spec.validate()?;
    Ok(spec)
}

/// T-notation with errors located by line and column.
pub fn parse_t_notation(text: &str) -> Result<InertiaSet, ParseError> {
    inertia_core::algebra::parse_t_notation(text).map_err(|e| match e {
        AlgebraError::Parse { pos, expected } => {
            let (line, col) = line_col(text, pos);
            ParseError { line, col, expected }
        }
        other => ParseError { line: 1, col: 1, expected: other.to_string() },
    })
}

fn line_col(text: &str, pos: usize) -> (usize, usize) {
    let before = &text[..pos.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let col = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, col)
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, expected: &str) -> ParseError {
        let (line, col) = line_col(self.src, self.pos);
        ParseError { line, col, expected: expected.to_string() }
    }

    fn rest(&self) -> &str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn eat(&mut self, tok: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(tok) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: &str) -> Result<(), ParseError> {
        if self.eat(tok) {
            Ok(())
        } else {
            Err(self.error(&format!("`{tok}`")))
        }
    }

    fn ident(&mut self) -> Result<&str, ParseError> {
        self.skip_ws();
        let len = self.rest().bytes().take_while(|b| b.is_ascii_alphabetic()).count();
        if len == 0 {
            return Err(self.error("a family name"));
        }
        let start = self.pos;
        self.pos += len;
        Ok(&self.src[start..self.pos])
    }

    fn number(&mut self) -> Result<usize, ParseError> {
        self.skip_ws();
        let len = self.rest().bytes().take_while(u8::is_ascii_digit).count();
        if len == 0 {
            return Err(self.error("a nonnegative integer"));
        }
        let value = self.rest()[..len].parse().map_err(|_| self.error("an integer that fits in usize"))?;
        self.pos += len;
        Ok(value)
    }

    /// `N (, N)*`, possibly empty when `allow_empty`.
    fn numbers(&mut self, allow_empty: bool) -> Result<Vec<usize>, ParseError> {
        self.skip_ws();
        if allow_empty && !self.rest().starts_with(|c: char| c.is_ascii_digit()) {
            return Ok(Vec::new());
        }
        let mut out = vec![self.number()?];
        while self.eat(",") {
            out.push(self.number()?);
        }
        Ok(out)
    }

    fn keyword_value(&mut self, key: &str) -> Result<usize, ParseError> {
        self.expect(key)?;
        self.expect("=")?;
        self.number()
    }

    fn nova_args(&mut self) -> Result<Nova, ParseError> {
        self.expect("cycles")?;
        self.expect("=")?;
        let cycles = self.numbers(true)?;
        self.expect(";")?;
        self.expect("arms")?;
        self.expect("=")?;
        let arms = self.numbers(true)?;
        Ok(Nova::new(cycles, arms))
    }

    fn nova(&mut self) -> Result<Nova, ParseError> {
        self.expect("nova")?;
        self.expect("(")?;
        let nova = self.nova_args()?;
        self.expect(")")?;
        Ok(nova)
    }

    fn case(&mut self) -> Result<BipartiteCase, ParseError> {
        self.skip_ws();
        for case in BipartiteCase::ALL {
            if self.eat(&case.to_string()) {
                return Ok(case);
            }
        }
        Err(self.error("one of AC, AD, BC, BD"))
    }

    fn anchor(&mut self) -> Result<usize, ParseError> {
        if self.eat("@") {
            self.number()
        } else {
            Ok(0)
        }
    }

    fn spec(&mut self) -> Result<FamilySpec, ParseError> {
        self.skip_ws();
        let name_at = self.pos;
        let name = self.ident()?.to_string();
        self.expect("(")?;
        let spec = match name.as_str() {
            "path" => FamilySpec::Path(self.number()?),
            "cycle" => FamilySpec::Cycle(self.number()?),
            "paths" => FamilySpec::DisjointPaths(self.numbers(false)?),
            "star" => FamilySpec::GeneralizedStar(self.numbers(false)?),
            "bouquet" => FamilySpec::Bouquet(self.numbers(false)?),
            "supernova" => FamilySpec::Supernova(self.nova_args()?),
            "kbip" => {
                let a = self.number()?;
                self.expect(",")?;
                FamilySpec::CompleteBipartite(a, self.number()?)
            }
            "kbipjoin" => {
                let mut sides = [0; 4];
                for s in &mut sides {
                    *s = self.number()?;
                    self.expect(",")?;
                }
                let [a, b, c, d] = sides;
                FamilySpec::BipartiteJoin { a, b, c, d, case: self.case()? }
            }
            "pulsar" => {
                let first = self.nova()?;
                self.expect(",")?;
                let second = self.nova()?;
                self.expect(",")?;
                let bridge = self.keyword_value("bridge")?;
                self.expect(",")?;
                let gap = self.keyword_value("gap")?;
                FamilySpec::Pulsar { first, second, bridge, gap }
            }
            "binarystar" => {
                let first = self.nova()?;
                self.expect(",")?;
                let second = self.nova()?;
                self.expect(",")?;
                let w = self.keyword_value("w")?;
                FamilySpec::BinaryStar { first, second, w }
            }
            "join" => {
                let left = Box::new(self.spec()?);
                let left_at = self.anchor()?;
                self.expect(",")?;
                let right = Box::new(self.spec()?);
                let right_at = self.anchor()?;
                FamilySpec::Join { left, left_at, right, right_at }
            }
            "union" => {
                let mut parts = vec![self.spec()?];
                while self.eat(",") {
                    parts.push(self.spec()?);
                }
                FamilySpec::DisjointUnion(parts)
            }
            _ => {
                self.pos = name_at;
                return Err(self.error(
                    "one of path, cycle, paths, star, bouquet, supernova, pulsar, binarystar, kbip, kbipjoin, join, union",
                ));
            }
        };
        self.expect(")")?;
        Ok(spec)
    }
}
