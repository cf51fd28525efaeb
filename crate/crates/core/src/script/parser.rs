use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;

use crate::kernel::{CnotClause, Derivation, JoinConnective, Param, RuleTag};
use crate::syntax::{Convention, Degree, Formula, QubitRef, Sequent, Symbol};

use super::lexer::{tokenize, Tok, Token};
use super::{ParseError, ProofScript, SourceSpan, Step, Theorem};

const KEYWORDS: [&str; 5] = ["atoms", "theorem", "qed", "by", "premise"];

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    /// Declared atoms; `None` accepts any name.
    atoms: Option<Vec<String>>,
}

type PResult<T> = Result<T, ParseError>;

impl Parser {
    fn new(src: &str, atoms: Option<Vec<String>>) -> PResult<Self> {
        Ok(Parser {
            toks: tokenize(src)?,
            pos: 0,
            atoms,
        })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn span(&self) -> SourceSpan {
        self.toks[self.pos].span
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&self, message: impl Into<String>) -> PResult<T> {
        Err(ParseError::SyntaxError {
            message: message.into(),
            span: self.span(),
        })
    }

    fn unexpected<T>(&self, wanted: &str) -> PResult<T> {
        self.error(format!(
            "expected {wanted}, found {}",
            self.peek().describe()
        ))
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == tok {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: Tok) -> PResult<SourceSpan> {
        if self.peek() == &tok {
            Ok(self.bump().span)
        } else {
            self.unexpected(&tok.describe())
        }
    }

    fn is_keyword(&self, kw: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == kw)
    }

    fn expect_keyword(&mut self, kw: &str) -> PResult<SourceSpan> {
        if self.is_keyword(kw) {
            Ok(self.bump().span)
        } else {
            self.unexpected(&format!("`{kw}`"))
        }
    }

    fn ident(&mut self, what: &str) -> PResult<(String, SourceSpan)> {
        match self.peek().clone() {
            Tok::Ident(s) if !KEYWORDS.contains(&s.as_str()) => {
                let span = self.bump().span;
                Ok((s, span))
            }
            _ => self.unexpected(what),
        }
    }

    fn step_id(&mut self) -> PResult<(u32, SourceSpan)> {
        match self.peek().clone() {
            Tok::Number(_, text) => match text.parse::<u32>() {
                Ok(id) => Ok((id, self.bump().span)),
                Err(_) => self.error(format!("step ids are whole numbers, found `{text}`")),
            },
            _ => self.unexpected("a step number"),
        }
    }

    fn check_atom(&self, name: &str, span: SourceSpan) -> PResult<()> {
        match &self.atoms {
            Some(list) if !list.iter().any(|a| a == name) => Err(ParseError::UnknownAtom {
                name: name.to_string(),
                span,
            }),
            _ => Ok(()),
        }
    }

    // formula := ent ; ent := and (("@" | "@~") and)* ; and := par ("&" degrees? par)* ;
    // par := unary ("#" unary)*
    fn formula(&mut self) -> PResult<Formula> {
        let mut left = self.and()?;
        loop {
            let convention = match self.peek() {
                Tok::At => Convention::Phi,
                Tok::AtTilde => Convention::Psi,
                _ => return Ok(left),
            };
            self.bump();
            let right = self.and()?;
            left = Formula::ent_with(left, right, convention);
        }
    }

    fn and(&mut self) -> PResult<Formula> {
        let mut left = self.par()?;
        while self.eat(&Tok::Amp) {
            let degrees = if self.eat(&Tok::LBrace) {
                let a = self.degree()?;
                self.expect(Tok::Comma)?;
                let b = self.degree()?;
                self.expect(Tok::RBrace)?;
                Some((a, b))
            } else {
                None
            };
            let right = self.par()?;
            left = Formula::And {
                left: Box::new(left),
                right: Box::new(right),
                degrees,
            };
        }
        Ok(left)
    }

    fn par(&mut self) -> PResult<Formula> {
        let mut left = self.primary()?;
        while self.eat(&Tok::Hash) {
            let right = self.primary()?;
            left = Formula::par(left, right);
        }
        Ok(left)
    }

    fn primary(&mut self) -> PResult<Formula> {
        match self.peek().clone() {
            Tok::LParen => {
                self.bump();
                let f = self.formula()?;
                self.expect(Tok::RParen)?;
                if self.peek() == &Tok::Caret {
                    return self.error("negation applies to atoms only");
                }
                Ok(f)
            }
            Tok::Number(0.0, _) => {
                self.bump();
                Ok(Formula::Null)
            }
            Tok::Ident(s) if s.starts_with("Q_") => {
                let span = self.bump().span;
                let name = &s[2..];
                if name.is_empty() {
                    return Err(ParseError::SyntaxError {
                        message: "`Q_` needs an atom name".into(),
                        span,
                    });
                }
                self.check_atom(
                    name,
                    SourceSpan {
                        column: span.column + 2,
                        length: span.length - 2,
                        ..span
                    },
                )?;
                let degrees = if self.eat(&Tok::LBrace) {
                    let a = self.degree()?;
                    self.expect(Tok::Comma)?;
                    let b = self.degree()?;
                    self.expect(Tok::RBrace)?;
                    Some((a, b))
                } else {
                    None
                };
                if self.peek() == &Tok::Caret {
                    return self.error("negation applies to atoms only");
                }
                Ok(Formula::Qubit(QubitRef {
                    name: name.to_string(),
                    degrees,
                }))
            }
            Tok::Ident(_) => {
                let (name, span) = self.ident("a formula")?;
                self.check_atom(&name, span)?;
                if self.eat(&Tok::Caret) {
                    Ok(Formula::neg_atom(&name))
                } else {
                    Ok(Formula::atom(&name))
                }
            }
            _ => self.unexpected("a formula"),
        }
    }

    // degree := "-"? (real ("+"|"-") imag | imag | real ("/" "sqrt2")? ) | "alpha" | "beta"
    fn degree(&mut self) -> PResult<Degree> {
        match self.peek() {
            Tok::Ident(s) if s == "alpha" => {
                self.bump();
                return Ok(Degree::Symbol(Symbol::Alpha));
            }
            Tok::Ident(s) if s == "beta" => {
                self.bump();
                return Ok(Degree::Symbol(Symbol::Beta));
            }
            _ => {}
        }
        let sign = if self.eat(&Tok::Minus) { -1.0 } else { 1.0 };
        match self.peek().clone() {
            Tok::Imag(y) => {
                self.bump();
                Ok(Degree::Value(Complex64::new(0.0, sign * y)))
            }
            Tok::Number(x, _) => {
                self.bump();
                if self.eat(&Tok::Slash) {
                    self.expect_keyword("sqrt2")?;
                    let v = if x == 1.0 {
                        FRAC_1_SQRT_2
                    } else {
                        x * FRAC_1_SQRT_2
                    };
                    return Ok(Degree::Value(Complex64::new(sign * v, 0.0)));
                }
                let im_sign = match self.peek() {
                    Tok::Plus => 1.0,
                    Tok::Minus => -1.0,
                    _ => return Ok(Degree::Value(Complex64::new(sign * x, 0.0))),
                };
                self.bump();
                match self.peek().clone() {
                    Tok::Imag(y) => {
                        self.bump();
                        Ok(Degree::Value(Complex64::new(sign * x, im_sign * y)))
                    }
                    _ => self.unexpected("an imaginary part such as `0.5i`"),
                }
            }
            _ => self.unexpected("a degree"),
        }
    }

    fn formula_list(&mut self) -> PResult<Vec<Formula>> {
        let mut out = Vec::new();
        if !self.starts_formula() {
            return Ok(out);
        }
        out.push(self.formula()?);
        while self.eat(&Tok::Comma) {
            out.push(self.formula()?);
        }
        Ok(out)
    }

    fn starts_formula(&self) -> bool {
        match self.peek() {
            Tok::LParen => true,
            Tok::Number(x, _) => *x == 0.0,
            Tok::Ident(s) => !KEYWORDS.contains(&s.as_str()),
            _ => false,
        }
    }

    fn sequent(&mut self) -> PResult<Sequent> {
        let antecedent = self.formula_list()?;
        self.expect(Tok::Turnstile)?;
        let degree = if self.eat(&Tok::LBrace) {
            let d = self.degree()?;
            self.expect(Tok::RBrace)?;
            Some(d)
        } else {
            None
        };
        let consequent = self.formula_list()?;
        Ok(Sequent {
            antecedent,
            consequent,
            degree,
        })
    }

    fn rule(&mut self) -> PResult<(RuleTag, Option<Param>)> {
        let (name, span) = match self.peek().clone() {
            Tok::Ident(s) => (s, self.bump().span),
            _ => return self.unexpected("a rule name"),
        };
        let bracket = self.eat(&Tok::LBracket);
        if name == "par_join" {
            if !bracket {
                return self.unexpected("`[and]` or `[at]` after par_join");
            }
            let join = match self.ident("`and` or `at`")?.0.as_str() {
                "and" => JoinConnective::And,
                "at" => JoinConnective::At,
                other => {
                    return Err(ParseError::SyntaxError {
                        message: format!("par_join joins by `and` or `at`, not `{other}`"),
                        span: self.toks[self.pos - 1].span,
                    })
                }
            };
            self.expect(Tok::RBracket)?;
            return Ok((RuleTag::ParallelJoin(join), None));
        }
        let Some(rule) = RuleTag::ALL
            .iter()
            .copied()
            .find(|r| r.script_name() == name && *r != RuleTag::Premise)
        else {
            return Err(ParseError::UnknownRule { name, span });
        };
        if !bracket {
            return Ok((rule, None));
        }
        let param_span = self.span();
        let param = match rule {
            RuleTag::Cut => Param::Formula(self.formula()?),
            RuleTag::AtForm | RuleTag::AtImplRefl | RuleTag::AtExplRefl | RuleTag::AtAxiom => {
                match self.ident("`phi` or `psi`")?.0.as_str() {
                    "phi" => Param::Convention(Convention::Phi),
                    "psi" => Param::Convention(Convention::Psi),
                    _ => return Err(bad_param(param_span, "`phi` or `psi`")),
                }
            }
            RuleTag::CnotRule => {
                let (mut clause, _) = self.ident("a CNOT clause")?;
                if self.eat(&Tok::Prime) {
                    clause.push('\'');
                }
                Param::Clause(
                    CnotClause::from_name(&clause)
                        .ok_or_else(|| bad_param(param_span, "a, b, a' or b'"))?,
                )
            }
            RuleTag::NegForm | RuleTag::NegRefl => {
                if self.ident("`carry`")?.0 != "carry" {
                    return Err(bad_param(param_span, "`carry`"));
                }
                Param::Carry
            }
            _ => {
                return Err(ParseError::SyntaxError {
                    message: format!("rule {name} takes no parameter"),
                    span: param_span,
                })
            }
        };
        self.expect(Tok::RBracket)?;
        Ok((rule, Some(param)))
    }

    fn id_list(&mut self) -> PResult<Vec<(u32, SourceSpan)>> {
        self.expect(Tok::LParen)?;
        let mut ids = Vec::new();
        if self.eat(&Tok::RParen) {
            return Ok(ids);
        }
        loop {
            ids.push(self.step_id()?);
            if self.eat(&Tok::RParen) {
                return Ok(ids);
            }
            self.expect(Tok::Comma)?;
        }
    }

    fn theorem(&mut self) -> PResult<Theorem> {
        let start = self.expect_keyword("theorem")?;
        let (name, _) = self.ident("a theorem name")?;
        self.expect(Tok::Colon)?;
        let mut steps: Vec<Step> = Vec::new();
        let mut built: Vec<(u32, Derivation)> = Vec::new();
        while !self.is_keyword("qed") {
            let (id, id_span) = self.step_id()?;
            if steps.iter().any(|s| s.id == id) {
                return Err(ParseError::DuplicateStepId { id, span: id_span });
            }
            self.expect(Tok::Colon)?;
            let sequent = self.sequent()?;
            let (rule, param, refs) = if self.is_keyword("premise") {
                self.bump();
                (RuleTag::Premise, None, Vec::new())
            } else if self.is_keyword("by") {
                self.bump();
                let (rule, param) = self.rule()?;
                (rule, param, self.id_list()?)
            } else {
                return self.unexpected("`by` or `premise`");
            };
            let end = self.toks[self.pos - 1].span;
            let span = SourceSpan {
                line: id_span.line,
                column: id_span.column,
                length: if end.line == id_span.line {
                    end.column + end.length - id_span.column
                } else {
                    id_span.length
                },
            };
            let mut premises = Vec::with_capacity(refs.len());
            for (r, r_span) in &refs {
                match built.iter().find(|(i, _)| i == r) {
                    Some((_, d)) => premises.push(d.clone()),
                    None => {
                        return Err(ParseError::DanglingReference {
                            id: *r,
                            span: *r_span,
                        })
                    }
                }
            }
            let node = Derivation {
                rule,
                param: param.clone(),
                premises,
                conclusion: sequent.clone(),
                step: Some(id),
            };
            built.push((id, node));
            steps.push(Step {
                id,
                sequent,
                rule,
                param,
                premises: refs.iter().map(|r| r.0).collect(),
                span,
            });
        }
        let qed = self.bump().span;
        let Some((_, tree)) = built.pop() else {
            return Err(ParseError::SyntaxError {
                message: format!("theorem {name} has no steps"),
                span: qed,
            });
        };
        let mut used = Vec::new();
        tree.walk(|_, d| used.extend(d.step));
        if let Some(idle) = steps.iter().find(|s| !used.contains(&s.id)) {
            return Err(ParseError::SyntaxError {
                message: format!(
                    "step {} does not contribute to the last step of {name}",
                    idle.id
                ),
                span: idle.span,
            });
        }
        Ok(Theorem {
            name,
            steps,
            tree,
            span: start,
        })
    }

    fn script(&mut self) -> PResult<ProofScript> {
        self.expect_keyword("atoms")?;
        let mut atoms = Vec::new();
        while matches!(self.peek(), Tok::Ident(s) if s != "theorem") {
            let (name, span) = self.ident("an atom name")?;
            if name.starts_with("Q_") || ["alpha", "beta", "sqrt2"].contains(&name.as_str()) {
                return Err(ParseError::SyntaxError {
                    message: format!("`{name}` is reserved"),
                    span,
                });
            }
            if atoms.contains(&name) {
                return Err(ParseError::SyntaxError {
                    message: format!("atom `{name}` declared twice"),
                    span,
                });
            }
            atoms.push(name);
        }
        self.atoms = Some(atoms.clone());
        let mut theorems = Vec::new();
        while self.peek() != &Tok::Eof {
            let t = self.theorem()?;
            if theorems.iter().any(|o: &Theorem| o.name == t.name) {
                return Err(ParseError::SyntaxError {
                    message: format!("theorem `{}` defined twice", t.name),
                    span: t.span,
                });
            }
            theorems.push(t);
        }
        if theorems.is_empty() {
            return self.error("a script needs at least one theorem");
        }
        Ok(ProofScript { atoms, theorems })
    }

    fn finish(&self) -> PResult<()> {
        if self.peek() == &Tok::Eof {
            Ok(())
        } else {
            self.unexpected("end of input")
        }
    }
}

fn bad_param(span: SourceSpan, wanted: &str) -> ParseError {
    ParseError::SyntaxError {
        message: format!("expected {wanted} as rule parameter"),
        span,
    }
}

/// Parse a whole script file.
pub fn parse_script(src: &str) -> Result<ProofScript, ParseError> {
    let mut p = Parser::new(src, None)?;
    let script = p.script()?;
    p.finish()?;
    Ok(script)
}

/// Parse one formula; any atom name is accepted.
pub fn parse_formula(src: &str) -> Result<Formula, ParseError> {
    let mut p = Parser::new(src, None)?;
    let f = p.formula()?;
    p.finish()?;
    Ok(f)
}

/// Parse a degree literal such as `0.6`, `-1/sqrt2`, `0.6+0.8i` or `alpha`.
pub fn parse_degree(src: &str) -> Result<Degree, ParseError> {
    let mut p = Parser::new(src, None)?;
    let d = p.degree()?;
    p.finish()?;
    Ok(d)
}

/// Parse one sequent; any atom name is accepted.
pub fn parse_sequent(src: &str) -> Result<Sequent, ParseError> {
    let mut p = Parser::new(src, None)?;
    let s = p.sequent()?;
    p.finish()?;
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::Formula as F;

    #[test]
    fn negated_atom() {
        assert_eq!(parse_formula("A^").unwrap(), F::neg_atom("A"));
    }

    #[test]
    fn degreed_conjunction() {
        let f = parse_formula("A^ &{0.6, 0.8} A").unwrap();
        assert_eq!(
            f,
            F::and_deg(
                F::neg_atom("A"),
                Degree::real(0.6),
                Degree::real(0.8),
                F::atom("A")
            )
        );
        let g = parse_formula("A^ &{1/sqrt2, -1/sqrt2} A").unwrap();
        assert_eq!(
            g,
            F::and_deg(
                F::neg_atom("A"),
                Degree::inv_sqrt2(),
                Degree::neg_inv_sqrt2(),
                F::atom("A")
            )
        );
    }

    #[test]
    fn bell_body() {
        let f = parse_formula("(A # B) & (A^ # B^)").unwrap();
        let expected = F::and(
            F::par(F::atom("A"), F::atom("B")),
            F::par(F::neg_atom("A"), F::neg_atom("B")),
        );
        assert_eq!(f, expected);
        assert_eq!(parse_formula("A # B & A^ # B^").unwrap(), expected);
    }

    #[test]
    fn precedence_and_associativity() {
        let f = parse_formula("Q_A @ Q_B @~ Q_C").unwrap();
        let expected = F::ent_with(
            F::ent(F::qubit("A"), F::qubit("B")),
            F::qubit("C"),
            Convention::Psi,
        );
        assert_eq!(f, expected);
        let g = parse_formula("A & B @ C # D").unwrap();
        assert_eq!(
            g,
            F::ent(
                F::and(F::atom("A"), F::atom("B")),
                F::par(F::atom("C"), F::atom("D"))
            )
        );
    }

    #[test]
    fn complex_and_symbolic_degrees() {
        let s = parse_sequent("|-{0.6-0.8i} Q_C{alpha, beta}, 0").unwrap();
        assert_eq!(s.degree, Some(Degree::Value(Complex64::new(0.6, -0.8))));
        assert_eq!(s.consequent[1], F::Null);
        assert_eq!(
            s.consequent[0],
            F::Qubit(QubitRef {
                name: "C".into(),
                degrees: Some((Degree::Symbol(Symbol::Alpha), Degree::Symbol(Symbol::Beta)))
            })
        );
        assert_eq!(
            parse_sequent("|-{-0.5i} A").unwrap().degree,
            Some(Degree::Value(Complex64::new(0.0, -0.5)))
        );
    }

    #[test]
    fn compound_negation_is_rejected() {
        assert!(matches!(
            parse_formula("(A & B)^"),
            Err(ParseError::SyntaxError { .. })
        ));
        assert!(matches!(
            parse_formula("Q_A^"),
            Err(ParseError::SyntaxError { .. })
        ));
    }

    const SMALL: &str = "atoms A\ntheorem t:\n  1: |- A & A^ premise\n  2: A |- A by axiom()\n  3: A & A^ |- A by and_refl(2)\n  4: |- A by cut(1, 3)\nqed\n";

    #[test]
    fn script_builds_tree() {
        let s = parse_script(SMALL).unwrap();
        let t = &s.theorems[0];
        assert_eq!(t.steps.len(), 4);
        assert_eq!(t.tree.rule, RuleTag::Cut);
        assert_eq!(t.tree.size(), 4);
        assert_eq!(
            t.step(4).unwrap().span,
            SourceSpan {
                line: 6,
                column: 3,
                length: 20
            }
        );
    }

    #[test]
    fn script_errors() {
        let e = parse_script("").unwrap_err();
        assert!(matches!(e, ParseError::SyntaxError { .. }));
        let e = parse_script("atoms A\n").unwrap_err();
        assert!(matches!(e, ParseError::SyntaxError { .. }));
        let e = parse_script(&SMALL.replace("and_refl(2)", "contraction(2)")).unwrap_err();
        assert!(
            matches!(e, ParseError::UnknownRule { ref name, span } if name == "contraction" && span.line == 5)
        );
        let e = parse_script(&SMALL.replace("cut(1, 3)", "cut(1, 7)")).unwrap_err();
        assert!(matches!(e, ParseError::DanglingReference { id: 7, .. }));
        let e = parse_script(&SMALL.replace("3: A & A^ |- A", "2: A & A^ |- A")).unwrap_err();
        assert!(matches!(e, ParseError::DuplicateStepId { id: 2, .. }));
        let e = parse_script(&SMALL.replace("  4: |- A by", "  5: |- A premise\n  4: |- A by"))
            .unwrap_err();
        assert!(matches!(e, ParseError::SyntaxError { span, .. } if span.line == 6));
        let e = parse_script(&SMALL.replace("2: A |- A", "2: B |- B")).unwrap_err();
        assert!(matches!(e, ParseError::UnknownAtom { ref name, .. } if name == "B"));
    }

    #[test]
    fn rule_parameters() {
        let src = "atoms A B\ntheorem p:\n 1: |- B, A premise\n 2: |- B, A^ by cnot[a](1)\n 3: |- B, A^ by neg_form[carry](2)\n 4: |- A by cut[A](3, 3)\n 5: |- Q_A @~ Q_B by at_form[psi](4, 4)\nqed";
        let s = parse_script(src).unwrap();
        let t = &s.theorems[0];
        assert_eq!(t.step(2).unwrap().param, Some(Param::Clause(CnotClause::A)));
        assert_eq!(t.step(3).unwrap().param, Some(Param::Carry));
        assert_eq!(t.step(4).unwrap().param, Some(Param::Formula(F::atom("A"))));
        assert_eq!(
            t.step(5).unwrap().param,
            Some(Param::Convention(Convention::Psi))
        );
        let e = parse_script(&src.replace("cnot[a]", "cnot[c]")).unwrap_err();
        assert!(matches!(e, ParseError::SyntaxError { .. }));
        let p = parse_script(&src.replace("cnot[a]", "cnot[b']")).unwrap();
        assert_eq!(
            p.theorems[0].step(2).unwrap().param,
            Some(Param::Clause(CnotClause::BPrime))
        );
    }
}
