use crate::ast::{BinOp, Constant, Expr, Func, Var};
use crate::error::DslError;

/// Parses a Lagrangian expression in `t`, `u`, `v`, `w`.
pub fn parse(text: &str) -> Result<Expr, DslError> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error(format!("unexpected '{}'", p.src[p.pos] as char)));
    }
    Ok(e)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, message: impl Into<String>) -> DslError {
        DslError::Syntax { offset: self.pos, message: message.into() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Expr, DslError> {
        let mut lhs = self.term()?;
        loop {
            let op = match self.peek() {
                Some(b'+') => BinOp::Add,
                Some(b'-') => BinOp::Sub,
                _ => return Ok(lhs),
            };
            self.pos += 1;
            let rhs = self.term()?;
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn term(&mut self) -> Result<Expr, DslError> {
        let mut lhs = self.unary()?;
        loop {
            let op = match self.peek() {
                Some(b'*') => BinOp::Mul,
                Some(b'/') => BinOp::Div,
                _ => return Ok(lhs),
            };
            self.pos += 1;
            let rhs = self.unary()?;
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn unary(&mut self) -> Result<Expr, DslError> {
        if self.eat(b'-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        if self.eat(b'+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, DslError> {
        let base = self.primary()?;
        if self.eat(b'^') {
            let exp = self.unary()?;
            return Ok(Expr::Bin(BinOp::Pow, Box::new(base), Box::new(exp)));
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<Expr, DslError> {
        match self.peek() {
            None => Err(self.error("expected expression, found end of input")),
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.error("expected ')'"));
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() || c == b'.' => self.number(),
            Some(c) if c.is_ascii_alphabetic() => self.ident(),
            Some(c) => Err(self.error(format!("expected expression, found '{}'", c as char))),
        }
    }

    fn number(&mut self) -> Result<Expr, DslError> {
        let start = self.pos;
        let digits = |p: &mut Self| {
            let s = p.pos;
            while p.pos < p.src.len() && p.src[p.pos].is_ascii_digit() {
                p.pos += 1;
            }
            p.pos - s
        };
        let mut n = digits(self);
        if self.src.get(self.pos) == Some(&b'.') {
            self.pos += 1;
            n += digits(self);
        }
        if n == 0 {
            self.pos = start;
            return Err(self.error("malformed number"));
        }
        if matches!(self.src.get(self.pos), Some(b'e' | b'E')) {
            let save = self.pos;
            self.pos += 1;
            if matches!(self.src.get(self.pos), Some(b'+' | b'-')) {
                self.pos += 1;
            }
            if digits(self) == 0 {
                // Not an exponent: leave `e` for the caller, which will reject it.
                self.pos = save;
            }
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap_or("");
        text.parse::<f64>().map(Expr::Num).map_err(|_| DslError::Syntax {
            offset: start,
            message: format!("malformed number '{text}'"),
        })
    }

    fn ident(&mut self) -> Result<Expr, DslError> {
        let start = self.pos;
        while self.pos < self.src.len() && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_') {
            self.pos += 1;
        }
        let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap_or("");
        let simple = match name {
            "t" => Some(Expr::Var(Var::T)),
            "u" => Some(Expr::Var(Var::U)),
            "v" => Some(Expr::Var(Var::V)),
            "w" => Some(Expr::Var(Var::W)),
            "pi" => Some(Expr::Const(Constant::Pi)),
            "e" => Some(Expr::Const(Constant::E)),
            _ => None,
        };
        if let Some(e) = simple {
            return Ok(e);
        }
        let Some(func) = Func::from_name(name) else {
            return Err(DslError::Syntax { offset: start, message: format!("unknown identifier '{name}'") });
        };
        if !self.eat(b'(') {
            return Err(self.error(format!("expected '(' after {name}")));
        }
        let arg = self.expr()?;
        if !self.eat(b')') {
            return Err(self.error("expected ')'"));
        }
        Ok(Expr::Call(func, Box::new(arg)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn syntax_offset(s: &str) -> usize {
        match parse(s) {
            Err(DslError::Syntax { offset, .. }) => offset,
            other => panic!("expected syntax error, got {other:?}"),
        }
    }

    #[test]
    fn precedence_and_associativity() {
        let e = parse("2^3^2").unwrap();
        assert_eq!(e.to_string(), "(2 ^ (3 ^ 2))");
        let e = parse("1 - 2 - 3").unwrap();
        assert_eq!(e.to_string(), "((1 - 2) - 3)");
        let e = parse("-v^2").unwrap();
        assert_eq!(e.to_string(), "(-(v ^ 2))");
        let e = parse("u*v+w/2").unwrap();
        assert_eq!(e.to_string(), "((u * v) + (w / 2))");
        assert_eq!(parse("2^-1").unwrap().to_string(), "(2 ^ (-1))");
    }

    #[test]
    fn errors_carry_offsets() {
        assert_eq!(syntax_offset("ln("), 3);
        assert_eq!(syntax_offset("v +"), 3);
        assert_eq!(syntax_offset("(u"), 2);
        assert_eq!(syntax_offset("theta*w"), 0);
        assert_eq!(syntax_offset("u v"), 2);
        assert_eq!(syntax_offset("sin u"), 4);
        assert_eq!(syntax_offset("3 # 4"), 2);
    }

    #[test]
    fn numbers_and_constants() {
        assert_eq!(parse("1.5e-3").unwrap(), Expr::Num(1.5e-3));
        assert_eq!(parse(".25").unwrap(), Expr::Num(0.25));
        assert_eq!(parse("pi").unwrap(), Expr::Const(Constant::Pi));
        assert!(parse("2e").is_err());
        assert_eq!(parse("2*e").unwrap().to_string(), "(2 * e)");
    }
}
