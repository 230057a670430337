//! Prefix expression grammar for functions on a chart.
//!
//! ```text
//! expr  := atom | "(" op expr* ")"
//! op    := "+" | "*" | "-" | "/" | "^"
//! atom  := integer | generator | parameter
//! ```
//!
//! `(- a)` negates, `(- a b c)` is `a - b - c`, `(/ a k)` divides by a nonzero
//! constant and `(^ a n)` takes a non-negative integer power. Generators are
//! affine coordinate names and `cos_t` / `sin_t` for a circular coordinate `t`.

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::chart::Chart;
use crate::error::{Error, Result};
use crate::function::ChartFunction;
use crate::scalar::{ParamPoly, Scalar};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Node {
    Int(BigInt, usize),
    Sym(String, usize),
    List(Vec<Node>, usize),
}

struct Lexer<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn skip_ws(&mut self) {
        while let Some(c) = self.src[self.pos..].chars().next() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn node(&mut self) -> Result<Node> {
        self.skip_ws();
        let start = self.pos;
        match self.src[self.pos..].chars().next() {
            None => Err(Error::Parse {
                pos: start,
                msg: "unexpected end of input".into(),
            }),
            Some(')') => Err(Error::Parse {
                pos: start,
                msg: "unbalanced `)`".into(),
            }),
            Some('(') => {
                self.pos += 1;
                let mut items = Vec::new();
                loop {
                    self.skip_ws();
                    match self.src[self.pos..].chars().next() {
                        Some(')') => {
                            self.pos += 1;
                            return Ok(Node::List(items, start));
                        }
                        None => {
                            return Err(Error::Parse {
                                pos: start,
                                msg: "unclosed `(`".into(),
                            })
                        }
                        _ => items.push(self.node()?),
                    }
                }
            }
            Some(_) => {
                let len = self.src[self.pos..]
                    .find(|c: char| c.is_whitespace() || c == '(' || c == ')')
                    .unwrap_or(self.src.len() - self.pos);
                let tok = &self.src[self.pos..self.pos + len];
                self.pos += len;
                let digits = tok.strip_prefix('-').unwrap_or(tok);
                if !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit()) {
                    Ok(Node::Int(tok.parse().expect("integer token"), start))
                } else {
                    Ok(Node::Sym(tok.to_string(), start))
                }
            }
        }
    }
}

fn parse_tree(src: &str) -> Result<Node> {
    let mut lx = Lexer { src, pos: 0 };
    let node = lx.node()?;
    lx.skip_ws();
    if lx.pos != src.len() {
        return Err(Error::Parse {
            pos: lx.pos,
            msg: "trailing input".into(),
        });
    }
    Ok(node)
}

fn eval(node: &Node, chart: &Chart, params: &[String]) -> Result<ChartFunction> {
    match node {
        Node::Int(n, _) => Ok(ChartFunction::constant(chart, Scalar::from_bigint(n.clone()))),
        Node::Sym(s, pos) => {
            if let Some(g) = chart.gen_index(s) {
                Ok(chart.gen(g))
            } else if params.iter().any(|p| p == s) {
                Ok(ChartFunction::constant(chart, Scalar::param(s)))
            } else if chart.coord_index(s).is_some() {
                Err(Error::Parse {
                    pos: *pos,
                    msg: format!("circular coordinate `{s}` must be used as cos_{s} / sin_{s}"),
                })
            } else {
                Err(Error::UnknownSymbol(s.clone()))
            }
        }
        Node::List(items, pos) => {
            let pos = *pos;
            let (op, args) = match items.split_first() {
                Some((Node::Sym(op, _), args)) => (op.as_str(), args),
                _ => {
                    return Err(Error::Parse {
                        pos,
                        msg: "expected an operator".into(),
                    })
                }
            };
            let vals = || -> Result<Vec<ChartFunction>> {
                args.iter().map(|a| eval(a, chart, params)).collect()
            };
            match op {
                "+" => Ok(vals()?
                    .iter()
                    .fold(ChartFunction::zero(chart), |acc, v| &acc + v)),
                "*" => Ok(vals()?
                    .iter()
                    .fold(ChartFunction::one(chart), |acc, v| &acc * v)),
                "-" => {
                    let v = vals()?;
                    match v.split_first() {
                        None => Err(Error::Parse {
                            pos,
                            msg: "`-` needs at least one argument".into(),
                        }),
                        Some((first, [])) => Ok(-first),
                        Some((first, rest)) => {
                            Ok(rest.iter().fold(first.clone(), |acc, r| &acc - r))
                        }
                    }
                }
                "/" => {
                    let v = vals()?;
                    if v.len() != 2 {
                        return Err(Error::Parse {
                            pos,
                            msg: "`/` takes exactly two arguments".into(),
                        });
                    }
                    if !v[1].is_constant() || v[1].is_zero() {
                        return Err(Error::Parse {
                            pos,
                            msg: "divisor must be a nonzero constant".into(),
                        });
                    }
                    let k = v[1].constant_term().inv().expect("nonzero");
                    Ok(v[0].scale(&k))
                }
                "^" => {
                    if args.len() != 2 {
                        return Err(Error::Parse {
                            pos,
                            msg: "`^` takes exactly two arguments".into(),
                        });
                    }
                    let e = match &args[1] {
                        Node::Int(n, _) if !n.is_negative() && n.bits() < 16 => {
                            u32::try_from(n).expect("small exponent")
                        }
                        _ => {
                            return Err(Error::Parse {
                                pos,
                                msg: "exponent must be a small non-negative integer".into(),
                            })
                        }
                    };
                    Ok(eval(&args[0], chart, params)?.pow(e))
                }
                other => Err(Error::Parse {
                    pos,
                    msg: format!("unknown operator `{other}`"),
                }),
            }
        }
    }
}

/// Parses `src` as a function on `chart`; `params` lists the formal parameters
/// that may appear as symbols.
pub fn parse(src: &str, chart: &Chart, params: &[String]) -> Result<ChartFunction> {
    eval(&parse_tree(src)?, chart, params)
}

fn print_int(n: &BigInt) -> String {
    n.to_string()
}

fn print_param_poly(p: &ParamPoly) -> String {
    let mut terms: Vec<String> = p
        .terms()
        .map(|(m, c)| {
            let mut factors = Vec::new();
            if !c.is_one() || m.is_one() {
                factors.push(print_int(c));
            }
            for (s, e) in m.factors() {
                factors.push(power(s, *e));
            }
            product(factors)
        })
        .collect();
    match terms.len() {
        0 => "0".into(),
        1 => terms.pop().unwrap(),
        _ => format!("(+ {})", terms.join(" ")),
    }
}

fn power(base: &str, e: u32) -> String {
    if e == 1 {
        base.to_string()
    } else {
        format!("(^ {base} {e})")
    }
}

fn product(mut factors: Vec<String>) -> String {
    match factors.len() {
        0 => "1".into(),
        1 => factors.pop().unwrap(),
        _ => format!("(* {})", factors.join(" ")),
    }
}

/// Prefix form of an exact scalar.
pub fn print_scalar(k: &Scalar) -> String {
    if let Some(q) = k.as_rational() {
        return if q.denom().is_one() {
            print_int(q.numer())
        } else {
            format!("(/ {} {})", q.numer(), q.denom())
        };
    }
    let (num, den) = k.numerator_denominator();
    let n = print_param_poly(&num);
    if den.as_constant().map_or(false, |d| d.is_one()) {
        n
    } else {
        format!("(/ {} {})", n, print_param_poly(&den))
    }
}

/// Prefix form of a function; `parse(print(f)) == f`.
pub fn print(f: &ChartFunction) -> String {
    let chart = f.chart();
    let mut terms: Vec<String> = f
        .terms()
        .map(|(m, c)| {
            let mut factors = Vec::new();
            if !c.is_one() || m.is_one() {
                factors.push(print_scalar(c));
            }
            for (g, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    factors.push(power(&chart.gen_names()[g], e as u32));
                }
            }
            product(factors)
        })
        .collect();
    match terms.len() {
        0 => "0".into(),
        1 => terms.pop().unwrap(),
        _ => format!("(+ {})", terms.join(" ")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chart() -> Chart {
        Chart::new("M", &["x", "y"], &["t"]).unwrap()
    }

    #[test]
    fn parses_operators() {
        let c = chart();
        let f = parse("(- (* 2 x y) (^ sin_t 2) 1)", &c, &[]).unwrap();
        let expected = &(&(&c.var("x") * &c.var("y")).scale(&Scalar::int(2))
            + &c.cos("t").pow(2))
            - &ChartFunction::int(&c, 2);
        assert_eq!(f, expected);
        assert_eq!(parse("(- x)", &c, &[]).unwrap(), -&c.var("x"));
        assert_eq!(
            parse("(/ x 2)", &c, &[]).unwrap(),
            c.var("x").scale(&Scalar::ratio(1, 2))
        );
    }

    #[test]
    fn parameters_and_errors() {
        let c = chart();
        let ps = vec!["l0".to_string()];
        let f = parse("(* l0 x)", &c, &ps).unwrap();
        assert_eq!(f, c.var("x").scale(&Scalar::param("l0")));
        assert_eq!(
            parse("(* l1 x)", &c, &ps),
            Err(Error::UnknownSymbol("l1".into()))
        );
        assert!(matches!(parse("(+ x", &c, &[]), Err(Error::Parse { .. })));
        assert!(matches!(parse("(/ x y)", &c, &[]), Err(Error::Parse { .. })));
        assert!(matches!(parse("t", &c, &[]), Err(Error::Parse { .. })));
        assert!(matches!(parse("x y", &c, &[]), Err(Error::Parse { pos: 2, .. })));
    }

    #[test]
    fn round_trip_with_parametric_coefficients() {
        let c = chart();
        let ps = vec!["l0".to_string(), "l1".to_string()];
        let k = &Scalar::param("l1") / &(&Scalar::param("l0") + &Scalar::int(3));
        let f = &c.var("x").scale(&k) + &c.sin("t").scale(&Scalar::ratio(-2, 5));
        let printed = print(&f);
        assert_eq!(parse(&printed, &c, &ps).unwrap(), f);
        assert_eq!(print(&ChartFunction::zero(&c)), "0");
        assert_eq!(print(&ChartFunction::int(&c, -4)), "-4");
    }
}
