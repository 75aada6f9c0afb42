use super::lexer::{error_at, tokenize, Spanned, Tok};
use super::{BinOp, Formula, FormulaError, FormulaErrorKind, Operator, Relation};

struct Parser<'a> {
    input: &'a str,
    toks: Vec<Spanned>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn bump(&mut self) -> Spanned {
        let t = self.toks[self.pos].clone();
        if t.tok != Tok::Eof {
            self.pos += 1;
        }
        t
    }

    fn unexpected(&self, expected: &str) -> FormulaError {
        let t = &self.toks[self.pos];
        error_at(
            self.input,
            FormulaErrorKind::Syntax,
            t.offset,
            t.tok.text(),
            format!("unexpected {}, expected {expected}", t.tok.describe()),
        )
    }

    fn expect(&mut self, tok: Tok, expected: &str) -> Result<(), FormulaError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.unexpected(expected))
        }
    }

    fn pred(&mut self) -> Result<Formula, FormulaError> {
        let left = self.expr()?;
        let rel = match self.peek() {
            Tok::Eq => Relation::Equal,
            Tok::Le => Relation::Subset,
            Tok::Lt => Relation::ProperSubset,
            _ => return Ok(left),
        };
        self.bump();
        let right = self.expr()?;
        Ok(Formula::predicate(rel, left, right))
    }

    fn expr(&mut self) -> Result<Formula, FormulaError> {
        let mut left = self.term()?;
        while *self.peek() == Tok::Pipe {
            self.bump();
            let right = self.term()?;
            left = Formula::binary(BinOp::Union, left, right);
        }
        Ok(left)
    }

    fn term(&mut self) -> Result<Formula, FormulaError> {
        let mut left = self.factor()?;
        loop {
            let op = match self.peek() {
                Tok::Amp => BinOp::Intersect,
                Tok::Backslash => BinOp::Difference,
                _ => return Ok(left),
            };
            self.bump();
            let right = self.factor()?;
            left = Formula::binary(op, left, right);
        }
    }

    fn factor(&mut self) -> Result<Formula, FormulaError> {
        let op = match self.peek() {
            Tok::Tilde => {
                self.bump();
                return Ok(Formula::complement(self.factor()?));
            }
            Tok::Primed(p) if p == "K" => Operator::KPrime,
            Tok::Primed(_) => Operator::UPrime,
            Tok::Ident(w) => match w.as_str() {
                "K" => Operator::K,
                "U" => Operator::U,
                "A" => Operator::A,
                "Uiter" => Operator::UIter,
                _ => return self.atom(),
            },
            _ => return self.atom(),
        };
        self.bump();
        self.expect(Tok::LParen, "`(` after operator")?;
        let child = self.expr()?;
        self.expect(Tok::RParen, "`)`")?;
        Ok(Formula::apply(op, child))
    }

    fn atom(&mut self) -> Result<Formula, FormulaError> {
        match self.peek().clone() {
            Tok::Ident(w) => {
                self.bump();
                Ok(match w.as_str() {
                    "omega" => Formula::Omega,
                    "empty" => Formula::Empty,
                    _ => Formula::Var(w),
                })
            }
            Tok::LBrace => {
                self.bump();
                self.setlit()
            }
            Tok::LParen => {
                self.bump();
                let inner = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(inner)
            }
            _ => Err(self.unexpected("an expression")),
        }
    }

    fn setlit(&mut self) -> Result<Formula, FormulaError> {
        let mut labels = Vec::new();
        loop {
            match self.peek().clone() {
                Tok::RBrace => {
                    self.bump();
                    return Ok(Formula::SetLit(labels));
                }
                Tok::Ident(l) => {
                    self.bump();
                    labels.push(l);
                    match self.peek() {
                        Tok::Comma => {
                            self.bump();
                            if !matches!(self.peek(), Tok::Ident(_)) {
                                return Err(self.unexpected("a state label"));
                            }
                        }
                        Tok::Ident(_) | Tok::RBrace => {}
                        _ => return Err(self.unexpected("`,`, a state label or `}`")),
                    }
                }
                _ => return Err(self.unexpected("a state label or `}`")),
            }
        }
    }
}

pub fn parse_formula(input: &str) -> Result<Formula, FormulaError> {
    let toks = tokenize(input)?;
    let mut p = Parser {
        input,
        toks,
        pos: 0,
    };
    let f = p.pred()?;
    if *p.peek() != Tok::Eof {
        let what = if f.is_predicate() {
            "end of input (predicates do not chain)"
        } else {
            "an operator or end of input"
        };
        return Err(p.unexpected(what));
    }
    Ok(f)
}
