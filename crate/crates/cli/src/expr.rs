//! Field elements written as small arithmetic expressions:
//! integers, `pi` (`pi_s`), `pi_j` (`pi_0`, `pi_1`, ...), `zeta`,
//! `dwork_pi`, with `+ - * / ^` and parentheses.

use padic_field::{Field, PAdic};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Tok {
    Num(i64),
    Ident(usize, usize),
    Op(u8),
}

fn lex(s: &str) -> Result<Vec<Tok>, String> {
    let b = s.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < b.len() {
        let c = b[i];
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let st = i;
            while i < b.len() && b[i].is_ascii_digit() {
                i += 1;
            }
            let n = s[st..i].parse::<i64>().map_err(|e| format!("{}: {e}", &s[st..i]))?;
            out.push(Tok::Num(n));
        } else if c.is_ascii_alphabetic() || c == b'_' {
            let st = i;
            while i < b.len() && (b[i].is_ascii_alphanumeric() || b[i] == b'_') {
                i += 1;
            }
            out.push(Tok::Ident(st, i));
        } else if b"+-*/^()".contains(&c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(format!("unexpected character {:?}", c as char));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    src: &'a str,
    toks: Vec<Tok>,
    pos: usize,
    f: &'a Field,
}

impl Parser<'_> {
    fn peek(&self) -> Option<Tok> {
        self.toks.get(self.pos).copied()
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.peek();
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<PAdic, String> {
        let mut acc = match self.peek() {
            Some(Tok::Op(b'-')) => {
                self.pos += 1;
                -&self.term()?
            }
            Some(Tok::Op(b'+')) => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        while let Some(Tok::Op(o @ (b'+' | b'-'))) = self.peek() {
            self.pos += 1;
            let t = self.term()?;
            acc = if o == b'+' { &acc + &t } else { &acc - &t };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<PAdic, String> {
        let mut acc = self.factor()?;
        while let Some(Tok::Op(o @ (b'*' | b'/'))) = self.peek() {
            self.pos += 1;
            let t = self.factor()?;
            acc = if o == b'*' { &acc * &t } else { acc.div(&t).map_err(|_| "division by zero".to_string())? };
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<PAdic, String> {
        let base = self.atom()?;
        if let Some(Tok::Op(b'^')) = self.peek() {
            self.pos += 1;
            let neg = matches!(self.peek(), Some(Tok::Op(b'-')));
            if neg {
                self.pos += 1;
            }
            let Some(Tok::Num(k)) = self.next() else { return Err("exponent must be an integer".into()) };
            return base.powi(if neg { -k } else { k }).map_err(|_| "zero to a negative power".to_string());
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<PAdic, String> {
        match self.next() {
            Some(Tok::Num(n)) => Ok(PAdic::from_int(self.f, n)),
            Some(Tok::Op(b'(')) => {
                let v = self.expr()?;
                match self.next() {
                    Some(Tok::Op(b')')) => Ok(v),
                    _ => Err("missing )".into()),
                }
            }
            Some(Tok::Ident(a, b)) => self.constant(&self.src[a..b]),
            Some(t) => Err(format!("unexpected {t:?}")),
            None => Err("unexpected end".into()),
        }
    }

    fn constant(&self, name: &str) -> Result<PAdic, String> {
        let f = self.f;
        let missing = || format!("{name} is not in a field of level {}", f.level());
        match name {
            "pi" => PAdic::pi_s(f).ok_or_else(missing),
            "zeta" => PAdic::zeta(f).ok_or_else(missing),
            "dwork_pi" => PAdic::dwork_pi(f).ok_or_else(missing),
            _ => {
                let j = name.strip_prefix("pi_").and_then(|x| x.parse::<i32>().ok()).ok_or_else(|| format!("unknown name {name}"))?;
                PAdic::pi_j(f, j).ok_or_else(missing)
            }
        }
    }
}

pub fn parse_element(s: &str, f: &Field) -> Result<PAdic, String> {
    let toks = lex(s)?;
    let mut p = Parser { src: s, toks, pos: 0, f };
    let v = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(format!("trailing input in {s:?}"));
    }
    Ok(v)
}
