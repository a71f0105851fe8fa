//! Parser for free-algebra expressions such as `x1 x2 - v^-1 x2 x1`,
//! `x(1 2 1)`, `serre(1,2)` or `(x1 + x2)*x1`.

use feigin_core::coeff::QScalar;
use feigin_core::freealg::{FreeAlg, FreeElement};
use feigin_core::sparse::Sparse;
use feigin_core::{Error, Result};

pub fn parse(fa: &FreeAlg, text: &str) -> Result<FreeElement> {
    let mut p = Parser {
        fa,
        chars: text.chars().collect(),
        pos: 0,
    };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != p.chars.len() {
        return Err(p.error("unexpected input"));
    }
    Ok(e)
}

struct Parser<'a, 'b> {
    fa: &'a FreeAlg<'b>,
    chars: Vec<char>,
    pos: usize,
}

impl Parser<'_, '_> {
    fn error(&self, msg: &str) -> Error {
        let rest: String = self.chars[self.pos.min(self.chars.len())..]
            .iter()
            .collect();
        Error::Parse(format!("{msg} at column {}: {rest:?}", self.pos + 1))
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

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&format!("expected {c:?}")))
        }
    }

    fn scalar(&self, c: QScalar) -> FreeElement {
        Sparse::single(vec![], c)
    }

    fn expr(&mut self) -> Result<FreeElement> {
        let mut neg = false;
        if self.eat('-') {
            neg = true;
        } else {
            self.eat('+');
        }
        let mut acc = self.term()?;
        if neg {
            acc = acc.scale(&QScalar::from_int(-1, self.fa.q));
        }
        loop {
            if self.eat('+') {
                acc = acc.plus(&self.term()?);
            } else if self.eat('-') {
                acc = acc.minus(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<FreeElement> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    acc = self.fa.product(&acc, &self.factor()?);
                }
                Some(c) if c.is_ascii_alphanumeric() || c == '(' => {
                    acc = self.fa.product(&acc, &self.factor()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn integer(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        if matches!(self.chars.get(self.pos), Some('-') | Some('+')) {
            self.pos += 1;
        }
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse().map_err(|_| {
            self.pos = start;
            self.error("expected an integer")
        })
    }

    fn vertex(&mut self) -> Result<usize> {
        let k = self.integer()?;
        if k < 1 || k as usize > self.fa.rd.n {
            return Err(self.error(&format!("vertex {k} outside 1..{}", self.fa.rd.n)));
        }
        Ok(k as usize - 1)
    }

    fn ident(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_alphabetic() {
            self.pos += 1;
        }
        self.chars[start..self.pos].iter().collect()
    }

    fn factor(&mut self) -> Result<FreeElement> {
        let q = self.fa.q;
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.integer()?;
                let den = if self.eat('/') { self.integer()? } else { 1 };
                if den == 0 {
                    return Err(self.error("zero denominator"));
                }
                Ok(self.scalar(QScalar::from_ratio(num, den, q)))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                let name = self.ident();
                match name.as_str() {
                    "v" => {
                        let k = if self.eat('^') {
                            if self.eat('(') {
                                let k = self.integer()?;
                                self.expect(')')?;
                                k
                            } else {
                                self.integer()?
                            }
                        } else {
                            1
                        };
                        Ok(self.scalar(QScalar::v_pow(q, k)))
                    }
                    "x" => {
                        if self.eat('(') {
                            let mut w = Vec::new();
                            while !self.eat(')') {
                                w.push(self.vertex()?);
                                self.eat(',');
                            }
                            Ok(self.fa.word(&w))
                        } else {
                            let i = self.vertex()?;
                            Ok(self.fa.gen(i))
                        }
                    }
                    "serre" => {
                        self.expect('(')?;
                        let i = self.vertex()?;
                        self.expect(',')?;
                        let j = self.vertex()?;
                        self.expect(')')?;
                        if i == j {
                            return Err(self.error("serre needs two distinct vertices"));
                        }
                        self.fa.serre_element(i, j)
                    }
                    _ => {
                        self.pos = start;
                        Err(self.error("unknown symbol"))
                    }
                }
            }
            _ => Err(self.error("expected a term")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use feigin_core::cartan::RootDatum;

    #[test]
    fn parses_examples() {
        let rd = RootDatum::preset("a2").unwrap();
        let fa = FreeAlg::new(&rd, 2);
        let e = parse(&fa, "x1 x2 - v^-1 x2*x1").unwrap();
        assert_eq!(fa.render_free(&e), "x(1 2) - v^-1 x(2 1)");
        assert_eq!(parse(&fa, "x(1 2)").unwrap(), fa.word(&[0, 1]));
        assert_eq!(
            parse(&fa, "serre(1,2)").unwrap(),
            fa.serre_element(0, 1).unwrap()
        );
        assert_eq!(parse(&fa, "1").unwrap(), fa.one());
        assert_eq!(
            parse(&fa, "(x1 + x2) x1").unwrap(),
            fa.word(&[0, 0]).plus(&fa.word(&[1, 0]))
        );
        assert!(parse(&fa, "x3").is_err());
        assert!(parse(&fa, "x1 +").is_err());
        assert!(parse(&fa, "y1").is_err());
    }
}
