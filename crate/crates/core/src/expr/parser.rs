use super::{Expr, Func};
use crate::{re, Error, Result, Scalar};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(f64),
    Imag(f64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    Comma,
    Eof,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Syntax { line, column, message: message.into() }
}

fn lex(text: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, col);
        let single = match c {
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            ',' => Some(Tok::Comma),
            _ => None,
        };
        if let Some(tok) = single {
            out.push(Token { tok, line: l0, col: c0 });
            i += 1;
            col += 1;
            continue;
        }
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c.is_ascii_digit() || c == '.' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                i += 1;
            }
            if i < chars.len() && (chars[i] == 'e' || chars[i] == 'E') {
                let mut j = i + 1;
                if j < chars.len() && (chars[j] == '+' || chars[j] == '-') {
                    j += 1;
                }
                if j < chars.len() && chars[j].is_ascii_digit() {
                    i = j;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                }
            }
            let s: String = chars[start..i].iter().collect();
            let v: f64 = s.parse().map_err(|_| syntax(l0, c0, format!("malformed number `{s}`")))?;
            col += i - start;
            let imaginary = i < chars.len() && chars[i] == 'i' && !chars.get(i + 1).is_some_and(|d| d.is_alphanumeric() || *d == '_');
            if imaginary {
                i += 1;
                col += 1;
                out.push(Token { tok: Tok::Imag(v), line: l0, col: c0 });
            } else {
                out.push(Token { tok: Tok::Num(v), line: l0, col: c0 });
            }
            continue;
        }
        if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            col += i - start;
            out.push(Token { tok: Tok::Ident(chars[start..i].iter().collect()), line: l0, col: c0 });
            continue;
        }
        return Err(syntax(l0, c0, format!("unexpected character `{c}`")));
    }
    out.push(Token { tok: Tok::Eof, line, col });
    Ok(out)
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn next(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if t.tok != Tok::Eof {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<()> {
        let t = self.next();
        if t.tok == want {
            Ok(())
        } else {
            Err(syntax(t.line, t.col, format!("expected {what}, found {}", describe(&t.tok))))
        }
    }

    // a +- b +- c ... folded from the right, so each partial sum keeps the
    // sign of the operator in front of it: a - b - c = a + -(b + c)
    fn expr(&mut self) -> Result<Expr> {
        let mut terms = vec![(false, self.term()?)];
        loop {
            let neg = match self.peek().tok {
                Tok::Plus => false,
                Tok::Minus => true,
                _ => break,
            };
            self.next();
            terms.push((neg, self.term()?));
        }
        let (mut sign, mut acc) = terms.pop().expect("nonempty");
        while let Some((s, t)) = terms.pop() {
            let rest = if s == sign { acc } else { Expr::neg(acc) };
            acc = Expr::add(t, rest);
            sign = s;
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Expr> {
        let mut acc = self.unary()?;
        while self.peek().tok == Tok::Star {
            self.next();
            acc = Expr::mul(acc, self.unary()?);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.peek().tok == Tok::Minus {
            self.next();
            return Ok(Expr::neg(self.unary()?));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.primary()?;
        if self.peek().tok != Tok::Caret {
            return Ok(base);
        }
        self.next();
        let at = self.peek().clone();
        let e = self.unary()?;
        let c = e.constant().ok_or_else(|| syntax(at.line, at.col, "exponent must be a constant"))?;
        Ok(Expr::pow(base, c))
    }

    fn primary(&mut self) -> Result<Expr> {
        let t = self.next();
        match t.tok {
            Tok::Num(v) => Ok(Expr::Const(re(v))),
            Tok::Imag(v) => Ok(Expr::Const(Scalar::new(0.0, v))),
            Tok::LParen => {
                let e = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(e)
            }
            Tok::Ident(name) => match name.as_str() {
                "z" => Ok(Expr::Z),
                "i" => Ok(Expr::Const(Scalar::new(0.0, 1.0))),
                _ => self.call(name, t.line, t.col),
            },
            other => Err(syntax(t.line, t.col, format!("expected an operand, found {}", describe(&other)))),
        }
    }

    fn call(&mut self, name: String, line: usize, column: usize) -> Result<Expr> {
        let known = Func::from_name(&name).is_some() || name == "sqrt" || name == "pow";
        if !known || self.peek().tok != Tok::LParen {
            return Err(Error::UnknownIdentifier { name, line, column });
        }
        self.next();
        let mut args = vec![(self.peek().clone(), self.expr()?)];
        while self.peek().tok == Tok::Comma {
            self.next();
            args.push((self.peek().clone(), self.expr()?));
        }
        self.expect(Tok::RParen, "`)` or `,`")?;
        let want = match name.as_str() {
            "sqrt" => 1,
            "pow" => 2,
            _ => Func::from_name(&name).expect("known").n_params() + 1,
        };
        if args.len() != want {
            return Err(syntax(line, column, format!("{name} takes {want} argument(s), got {}", args.len())));
        }
        let constant = |(t, e): &(Token, Expr)| {
            e.constant().ok_or_else(|| syntax(t.line, t.col, format!("parameter of {name} must be a constant")))
        };
        let (arg_tok, arg) = args.pop().expect("nonempty");
        match name.as_str() {
            "sqrt" => Ok(Expr::pow(arg, re(0.5))),
            "pow" => {
                let base = args.pop().expect("two args").1;
                let c = constant(&(arg_tok, arg))?;
                Ok(Expr::pow(base, c))
            }
            _ => {
                let params = args.iter().map(constant).collect::<Result<Vec<_>>>()?;
                let func = Func::from_name(&name).expect("known");
                Ok(Expr::Call { func, params, arg: Box::new(arg) })
            }
        }
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Num(v) => format!("number {v}"),
        Tok::Imag(v) => format!("number {v}i"),
        Tok::Ident(s) => format!("`{s}`"),
        Tok::Plus => "`+`".into(),
        Tok::Minus => "`-`".into(),
        Tok::Star => "`*`".into(),
        Tok::Caret => "`^`".into(),
        Tok::LParen => "`(`".into(),
        Tok::RParen => "`)`".into(),
        Tok::Comma => "`,`".into(),
        Tok::Eof => "end of input".into(),
    }
}

/// Parse an expression in `z`. Constant subexpressions are folded.
pub fn parse(text: &str) -> Result<Expr> {
    let mut p = Parser { toks: lex(text)?, pos: 0 };
    let e = p.expr()?;
    let t = p.peek().clone();
    if t.tok != Tok::Eof {
        return Err(syntax(t.line, t.col, format!("unexpected {}", describe(&t.tok))));
    }
    Ok(e)
}
