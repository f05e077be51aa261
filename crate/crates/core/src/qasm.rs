//! OpenQASM 2.0 subset: one quantum register and the circuit gate set.
//!
//! `u1` is read as `rz`. `rx(pi/2)` and `rx(-pi/2)` with bit-exact angles are
//! read as `V` and `Vdg`, which is also how those gates are written.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt::Write;

use crate::circuit::{Circuit, Gate};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Num(f64),
    Str(String),
    Sym(char),
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn err<T>(line: usize, column: usize, message: impl Into<String>) -> Result<T> {
    Err(Error::Parse {
        line,
        column,
        message: message.into(),
    })
}

fn lex(text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    for (ln, line) in text.lines().enumerate() {
        let line_no = ln + 1;
        let chars: Vec<char> = line.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let column = i + 1;
            if c.is_whitespace() {
                i += 1;
            } else if c == '/' && chars.get(i + 1) == Some(&'/') {
                break;
            } else if c.is_ascii_alphabetic() || c == '_' {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                let word: String = chars[start..i].iter().collect();
                out.push(Token {
                    tok: Tok::Ident(word),
                    line: line_no,
                    column,
                });
            } else if c.is_ascii_digit() || c == '.' {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                    i += 1;
                }
                if i < chars.len() && (chars[i] == 'e' || chars[i] == 'E') {
                    i += 1;
                    if i < chars.len() && (chars[i] == '+' || chars[i] == '-') {
                        i += 1;
                    }
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                }
                let lit: String = chars[start..i].iter().collect();
                let Ok(v) = lit.parse::<f64>() else {
                    return err(line_no, column, format!("bad number {lit:?}"));
                };
                out.push(Token {
                    tok: Tok::Num(v),
                    line: line_no,
                    column,
                });
            } else if c == '"' {
                let start = i + 1;
                i += 1;
                while i < chars.len() && chars[i] != '"' {
                    i += 1;
                }
                if i == chars.len() {
                    return err(line_no, column, "unterminated string");
                }
                out.push(Token {
                    tok: Tok::Str(chars[start..i].iter().collect()),
                    line: line_no,
                    column,
                });
                i += 1;
            } else if "[]();,+-*/>{}".contains(c) {
                out.push(Token {
                    tok: Tok::Sym(c),
                    line: line_no,
                    column,
                });
                i += 1;
            } else {
                return err(line_no, column, format!("unexpected character {c:?}"));
            }
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    /// Position reported for errors at end of input.
    end: (usize, usize),
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.toks.get(self.pos)
    }

    fn here(&self) -> (usize, usize) {
        self.peek().map_or(self.end, |t| (t.line, t.column))
    }

    fn fail<T>(&self, message: impl Into<String>) -> Result<T> {
        let (l, c) = self.here();
        err(l, c, message)
    }

    fn next(&mut self) -> Result<Token> {
        match self.toks.get(self.pos) {
            Some(t) => {
                self.pos += 1;
                Ok(t.clone())
            }
            None => self.fail("unexpected end of input"),
        }
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek().is_some_and(|t| t.tok == Tok::Sym(c)) {
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
            self.fail(format!("expected '{c}'"))
        }
    }

    fn ident(&mut self) -> Result<String> {
        match self.next()?.tok {
            Tok::Ident(s) => Ok(s),
            _ => {
                self.pos -= 1;
                self.fail("expected identifier")
            }
        }
    }

    fn integer(&mut self) -> Result<usize> {
        let (l, c) = self.here();
        match self.next()?.tok {
            Tok::Num(v) if v >= 0.0 && v.fract() == 0.0 => Ok(v as usize),
            _ => err(l, c, "expected non-negative integer"),
        }
    }

    fn expr(&mut self) -> Result<f64> {
        let mut v = self.term()?;
        loop {
            if self.eat('+') {
                v += self.term()?;
            } else if self.eat('-') {
                v -= self.term()?;
            } else {
                return Ok(v);
            }
        }
    }

    fn term(&mut self) -> Result<f64> {
        let mut v = self.unary()?;
        loop {
            if self.eat('*') {
                v *= self.unary()?;
            } else if self.eat('/') {
                v /= self.unary()?;
            } else {
                return Ok(v);
            }
        }
    }

    fn unary(&mut self) -> Result<f64> {
        if self.eat('-') {
            return Ok(-self.unary()?);
        }
        if self.eat('+') {
            return self.unary();
        }
        if self.eat('(') {
            let v = self.expr()?;
            self.expect(')')?;
            return Ok(v);
        }
        let (l, c) = self.here();
        match self.next()?.tok {
            Tok::Num(v) => Ok(v),
            Tok::Ident(s) if s == "pi" => Ok(PI),
            _ => err(l, c, "expected angle expression"),
        }
    }
}

struct Register {
    name: String,
    size: usize,
}

fn qubit(p: &mut Parser, reg: &Option<Register>) -> Result<usize> {
    let (l, c) = p.here();
    let name = p.ident()?;
    let Some(reg) = reg else {
        return err(l, c, "gate before qreg declaration");
    };
    if name != reg.name {
        return err(l, c, format!("unknown register {name:?}"));
    }
    p.expect('[')?;
    let (il, ic) = p.here();
    let i = p.integer()?;
    p.expect(']')?;
    if i >= reg.size {
        return err(
            il,
            ic,
            format!("index {i} out of range for {}[{}]", reg.name, reg.size),
        );
    }
    Ok(i)
}

pub fn parse(text: &str) -> Result<Circuit> {
    let toks = lex(text)?;
    let end = (text.lines().count().max(1), 1);
    let mut p = Parser { toks, pos: 0, end };
    let mut reg: Option<Register> = None;
    let mut gates = Vec::new();

    while p.peek().is_some() {
        let (l, c) = p.here();
        let word = p.ident()?;
        match word.as_str() {
            "OPENQASM" => {
                let (vl, vc) = p.here();
                match p.next()?.tok {
                    Tok::Num(2.0) => {}
                    _ => return err(vl, vc, "only OPENQASM 2.0 is supported"),
                }
            }
            "include" => match p.next()?.tok {
                Tok::Str(_) => {}
                _ => return err(l, c, "expected file name after include"),
            },
            "qreg" => {
                let name = p.ident()?;
                p.expect('[')?;
                let size = p.integer()?;
                p.expect(']')?;
                if let Some(r) = &reg {
                    let msg = if r.name == name {
                        format!("register {name:?} redeclared")
                    } else {
                        format!("second quantum register {name:?}; only one is supported")
                    };
                    return err(l, c, msg);
                }
                if size == 0 {
                    return err(l, c, "register size must be positive");
                }
                reg = Some(Register { name, size });
            }
            "creg" => {
                p.ident()?;
                p.expect('[')?;
                p.integer()?;
                p.expect(']')?;
            }
            "h" | "x" | "z" | "s" | "sdg" => {
                let q = qubit(&mut p, &reg)?;
                gates.push(match word.as_str() {
                    "h" => Gate::H(q),
                    "x" => Gate::X(q),
                    "z" => Gate::Z(q),
                    "s" => Gate::S(q),
                    _ => Gate::Sdg(q),
                });
            }
            "rx" | "rz" | "u1" => {
                p.expect('(')?;
                let a = p.expr()?;
                p.expect(')')?;
                let q = qubit(&mut p, &reg)?;
                gates.push(match word.as_str() {
                    "rx" if a == FRAC_PI_2 => Gate::V(q),
                    "rx" if a == -FRAC_PI_2 => Gate::Vdg(q),
                    "rx" => Gate::Rx(q, a),
                    _ => Gate::Rz(q, a),
                });
            }
            "cx" | "CX" => {
                let a = qubit(&mut p, &reg)?;
                p.expect(',')?;
                let (bl, bc) = p.here();
                let b = qubit(&mut p, &reg)?;
                if a == b {
                    return err(bl, bc, "cx control and target coincide");
                }
                gates.push(Gate::CX(a, b));
            }
            "u2" | "u3" | "u" | "U" | "measure" | "barrier" | "reset" | "gate" | "if"
            | "opaque" => {
                return err(l, c, format!("unsupported statement {word:?}"));
            }
            other => return err(l, c, format!("unknown gate {other:?}")),
        }
        p.expect(';')?;
    }
    let Some(reg) = reg else {
        return p.fail("missing qreg declaration");
    };
    Circuit::from_gates(reg.size, gates)
}

/// Evaluates a standalone angle expression such as `-3*pi/4`.
pub fn parse_angle(text: &str) -> Result<f64> {
    let toks = lex(text)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end: (1, text.len() + 1),
    };
    let v = p.expr()?;
    if p.peek().is_some() {
        return p.fail("trailing input after angle");
    }
    Ok(v)
}

/// `x` with 17 significant digits in plain decimal notation.
pub fn format_angle(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    let sci = format!("{:.16e}", x);
    let (mantissa, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("exponent");
    let negative = mantissa.starts_with('-');
    let digits: String = mantissa.chars().filter(|c| c.is_ascii_digit()).collect();
    let point = exp + 1;
    let mut s = if point <= 0 {
        format!("0.{}{}", "0".repeat((-point) as usize), digits)
    } else if point as usize >= digits.len() {
        format!("{}{}", digits, "0".repeat(point as usize - digits.len()))
    } else {
        format!(
            "{}.{}",
            &digits[..point as usize],
            &digits[point as usize..]
        )
    };
    if s.contains('.') {
        let trimmed = s.trim_end_matches('0').trim_end_matches('.').len();
        s.truncate(trimmed);
    }
    if negative {
        s.insert(0, '-');
    }
    s
}

pub fn emit(c: &Circuit) -> String {
    let mut out = String::from("OPENQASM 2.0;\ninclude \"qelib1.inc\";\n");
    writeln!(out, "qreg q[{}];", c.width()).unwrap();
    for g in c.gates() {
        match *g {
            Gate::H(q) => writeln!(out, "h q[{q}];"),
            Gate::X(q) => writeln!(out, "x q[{q}];"),
            Gate::Z(q) => writeln!(out, "z q[{q}];"),
            Gate::S(q) => writeln!(out, "s q[{q}];"),
            Gate::Sdg(q) => writeln!(out, "sdg q[{q}];"),
            Gate::V(q) => writeln!(out, "rx({}) q[{q}];", format_angle(FRAC_PI_2)),
            Gate::Vdg(q) => writeln!(out, "rx({}) q[{q}];", format_angle(-FRAC_PI_2)),
            Gate::Rx(q, a) => writeln!(out, "rx({}) q[{q}];", format_angle(a)),
            Gate::Rz(q, a) => writeln!(out, "rz({}) q[{q}];", format_angle(a)),
            Gate::CX(a, b) => writeln!(out, "cx q[{a}],q[{b}];"),
        }
        .unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::random_circuit;
    use proptest::prelude::*;

    fn parse_err(text: &str) -> (usize, usize, String) {
        match parse(text) {
            Err(Error::Parse {
                line,
                column,
                message,
            }) => (line, column, message),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    /// Rx by exactly +-pi/2 reads back as V/Vdg.
    fn normalized(c: &Circuit) -> Vec<Gate> {
        c.gates()
            .iter()
            .map(|g| match *g {
                Gate::Rx(q, a) if a == FRAC_PI_2 => Gate::V(q),
                Gate::Rx(q, a) if a == -FRAC_PI_2 => Gate::Vdg(q),
                g => g,
            })
            .collect()
    }

    #[test]
    fn parse_examples() {
        let c = parse("qreg q[1]; rz(pi/2) q[0];").unwrap();
        assert_eq!(c.width(), 1);
        assert_eq!(c.gates(), &[Gate::Rz(0, FRAC_PI_2)]);
        let c = parse("OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[2];\ncx q[0],q[1];").unwrap();
        assert_eq!(c.gates(), &[Gate::CX(0, 1)]);
        let c = parse("qreg q[1]; u1(-2*pi/4) q[0]; rx(-0.5e-1) q[0]; // note\n").unwrap();
        assert_eq!(c.gates(), &[Gate::Rz(0, -FRAC_PI_2), Gate::Rx(0, -0.05)]);
    }

    #[test]
    fn errors_carry_positions() {
        let (l, c, m) = parse_err("qreg q[2];\nh q[2];");
        assert_eq!((l, c), (2, 5));
        assert!(m.contains("out of range"));
        let (l, _, m) = parse_err("qreg q[2];\nqreg r[1];");
        assert_eq!(l, 2);
        assert!(m.contains("one is supported"));
        assert!(parse_err("qreg q[2]; qreg q[3];").2.contains("redeclared"));
        assert!(parse_err("qreg q[1]; u3(0,0,0) q[0];")
            .2
            .contains("unsupported"));
        assert!(parse_err("qreg q[1]; measure q[0] -> c[0];")
            .2
            .contains("unsupported"));
        assert!(parse_err("qreg q[1]; foo q[0];").2.contains("unknown gate"));
        assert!(parse_err("qreg q[1]; h q[0]").2.contains("';'"));
        assert!(parse_err("h q[0];").2.contains("before qreg"));
    }

    #[test]
    fn emit_examples() {
        assert_eq!(
            emit(&Circuit::new(2)),
            "OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[2];\n"
        );
        let c = Circuit::from_gates(1, vec![Gate::V(0)]).unwrap();
        assert!(emit(&c).ends_with("rx(1.5707963267948966) q[0];\n"));
        assert_eq!(format_angle(0.3), "0.29999999999999999");
        assert_eq!(format_angle(-1234.5), "-1234.5");
        assert_eq!(format_angle(1e-5), "0.000010000000000000001");
    }

    #[test]
    fn standalone_angles() {
        assert_eq!(parse_angle("-3*pi/4").unwrap(), -3.0 * PI / 4.0);
        assert_eq!(parse_angle("0.25").unwrap(), 0.25);
        assert!(parse_angle("pi pi").is_err());
    }

    proptest! {
        #[test]
        fn round_trip(seed in 0u64..100_000, width in 1usize..6) {
            let c = random_circuit(width, 100, seed);
            let back = parse(&emit(&c)).unwrap();
            prop_assert_eq!(back.width(), c.width());
            prop_assert_eq!(back.gates().to_vec(), normalized(&c));
        }

        #[test]
        fn angles_round_trip(x in proptest::num::f64::NORMAL) {
            prop_assert_eq!(format_angle(x).parse::<f64>().unwrap(), x);
        }
    }
}
