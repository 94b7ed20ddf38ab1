//! Parser for element expressions such as `E[2,1] + E[4,3]`,
//! `e_{r,r-1}`-style sums `E[3,2] - E[-2,-3]`, or `2*H[1] - 1/2*(x)`.
//!
//! ```text
//! expr  := ['+' | '-'] term (('+' | '-') term)*
//! term  := [coef '*'] atom
//! coef  := int ['/' int]
//! atom  := 'E[' int ',' int ']' | '(' expr ')' | label
//! label := [A-Za-z_][A-Za-z0-9_]* ['[' chars ']']
//! ```
//!
//! `E[i,j]` is the elementary matrix in the defining representation when the
//! algebra has one; only the whole sum has to lie in the algebra. Without a
//! realization `E[i,j]` is looked up as a basis label.

use num_traits::Zero;
use thiserror::Error;

use crate::exactlin::{parse_ratio, vector, Matrix, Ratio};
use crate::liecore::{Element, LieAlgebra, LieError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExprError {
    #[error("syntax error at offset {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error(transparent)]
    Lie(#[from] LieError),
}

struct Formal {
    matrix: Option<Matrix>,
    coords: Vec<Ratio>,
}

impl Formal {
    fn zero(g: &LieAlgebra) -> Self {
        Formal {
            matrix: g.realization().map(|r| Matrix::zeros(r.size(), r.size())),
            coords: vector::zeros(g.dim()),
        }
    }

    fn add_scaled(&mut self, c: &Ratio, other: &Formal) {
        vector::axpy(&mut self.coords, c, &other.coords);
        if let (Some(a), Some(b)) = (self.matrix.as_mut(), other.matrix.as_ref()) {
            for r in 0..a.rows() {
                for col in 0..a.cols() {
                    let x = b.get(r, col);
                    if !x.is_zero() {
                        let v = a.get(r, col) + c * x;
                        a.set(r, col, v);
                    }
                }
            }
        }
    }
}

struct Parser<'a> {
    g: &'a LieAlgebra,
    text: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ExprError> {
        Err(ExprError::Syntax {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek(&self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ExprError> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected `{c}`"))
        }
    }

    fn integer(&mut self) -> Result<i64, ExprError> {
        self.skip_ws();
        let start = self.pos;
        if matches!(self.peek(), Some('-') | Some('+')) {
            self.pos += 1;
        }
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        match self.text[start..self.pos].parse() {
            Ok(v) => Ok(v),
            Err(_) => {
                self.pos = start;
                self.err("expected an integer")
            }
        }
    }

    fn expr(&mut self) -> Result<Formal, ExprError> {
        let mut acc = Formal::zero(self.g);
        self.skip_ws();
        let mut sign = Ratio::from_integer(1.into());
        if self.eat('-') {
            sign = -sign;
        } else {
            self.eat('+');
        }
        loop {
            let (c, atom) = self.term()?;
            acc.add_scaled(&(&sign * c), &atom);
            if self.eat('+') {
                sign = Ratio::from_integer(1.into());
            } else if self.eat('-') {
                sign = Ratio::from_integer((-1).into());
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<(Ratio, Formal), ExprError> {
        self.skip_ws();
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit() || c == '/') {
            self.pos += 1;
        }
        if self.pos > start {
            let Some(c) = parse_ratio(&self.text[start..self.pos]) else {
                self.pos = start;
                return self.err("bad coefficient");
            };
            self.expect('*')?;
            return Ok((c, self.atom()?));
        }
        Ok((Ratio::from_integer(1.into()), self.atom()?))
    }

    fn atom(&mut self) -> Result<Formal, ExprError> {
        self.skip_ws();
        if self.eat('(') {
            let inner = self.expr()?;
            self.expect(')')?;
            return Ok(inner);
        }
        let start = self.pos;
        match self.peek() {
            Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
            _ => return self.err("expected a basis element"),
        }
        while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == '_') {
            self.pos += 1;
        }
        let name = &self.text[start..self.pos];
        if name == "E" && self.g.realization().is_some() && self.peek() == Some('[') {
            self.pos += 1;
            let i = self.integer()?;
            self.expect(',')?;
            let j = self.integer()?;
            self.expect(']')?;
            let real = self.g.realization().expect("checked above");
            let Some(m) = real.elementary(i, j) else {
                return Err(LieError::UnknownLabel(format!("E[{i},{j}]")).into());
            };
            return Ok(Formal {
                matrix: Some(m),
                coords: vector::zeros(self.g.dim()),
            });
        }
        if self.peek() == Some('[') {
            match self.text[self.pos..].find(']') {
                Some(end) => self.pos += end + 1,
                None => return self.err("unclosed `[`"),
            }
        }
        let label: String = self.text[start..self.pos].chars().filter(|c| !c.is_whitespace()).collect();
        let index = self.g.index_of(&label).ok_or(LieError::UnknownLabel(label))?;
        let mut atom = Formal::zero(self.g);
        atom.coords[index] = Ratio::from_integer(1.into());
        Ok(atom)
    }
}

/// Parses an element expression in the basis of `g`.
pub fn parse_element(g: &LieAlgebra, text: &str) -> Result<Element, ExprError> {
    let mut p = Parser { g, text, pos: 0 };
    let value = p.expr()?;
    p.skip_ws();
    if p.pos != text.len() {
        return p.err("unexpected trailing input");
    }
    let mut coords = value.coords;
    if let Some(m) = value.matrix {
        if !m.is_zero() {
            let x = g.element_from_matrix(&m)?;
            coords = vector::add(&coords, x.coords());
        }
    }
    Ok(Element(coords))
}
