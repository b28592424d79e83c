//! Plain-text cochain syntax.
//!
//! Terms are joined by `+` (or `-`), with integer coefficients and the
//! symbolic parameter written `a` (both attach with `*`).  The tensor sign is
//! written `(x)`, the wedge `^`, and differentials `d<name>`; a name
//! containing arithmetic (a matrix-unit combination, say) is parenthesized:
//! `d(E(1,2)-E(5,4))`.  Quadratic 2-cochain components are written
//! `(d<name>)^2`.  Underscores in names are optional: `y_1` and `y1` both
//! resolve.  Examples:
//!
//! ```text
//! 2*y_1(x)dx_2+y_2(x)dx_1        degree -3 adjoint 1-cochain
//! dx2^dx6+dx4^dx5                2-cochain, trivial coefficients
//! (dx1)^2+dx2^dx3                quadratic component at p = 2
//! h1(x)dh4+a*h3(x)dh4            symbolic coefficient
//! ```

use crate::algebra::SuperAlgebra;
use crate::cohomology::{Cochain, Coeffs};
use crate::scalar::K;

#[derive(Clone, Debug)]
pub struct ParseError {
    pub offset: usize,
    pub msg: String,
}

impl ParseError {
    /// Two-line caret diagnostic pointing at the failing byte.
    pub fn diagnostic(&self, input: &str) -> String {
        let off = self.offset.min(input.len());
        format!("{input}\n{}^ {}", " ".repeat(off), self.msg)
    }
}

struct Scan<'a> {
    b: &'a [u8],
    i: usize,
}

impl<'a> Scan<'a> {
    fn new(s: &'a str) -> Self {
        Scan { b: s.as_bytes(), i: 0 }
    }

    fn ws(&mut self) {
        while self.i < self.b.len() && (self.b[self.i] as char).is_whitespace() {
            self.i += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.b.get(self.i).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.i += 1;
            true
        } else {
            false
        }
    }

    fn starts_with(&self, s: &str) -> bool {
        self.b[self.i..].starts_with(s.as_bytes())
    }

    fn err(&self, msg: impl Into<String>) -> ParseError {
        ParseError {
            offset: self.i,
            msg: msg.into(),
        }
    }
}

fn is_ident(c: u8) -> bool {
    c.is_ascii_alphanumeric() || c == b'_' || c == b'\''
}

/// A bare name: identifier characters plus attached balanced groups, so
/// `Pi(x1)` and `E(1,2)` read as single tokens.  The tensor marker `(x)` is
/// never absorbed.
fn read_bare_name(s: &mut Scan) -> Result<String, ParseError> {
    let start = s.i;
    loop {
        match s.peek() {
            Some(c) if is_ident(c) => {
                s.i += 1;
            }
            Some(b'(') if !s.starts_with("(x)") => {
                read_balanced(s)?;
            }
            _ => break,
        }
    }
    if s.i == start {
        return Err(s.err("expected a basis element name"));
    }
    Ok(std::str::from_utf8(&s.b[start..s.i]).unwrap().to_string())
}

/// Consume a balanced `(...)` group, returning the inner text and its offset.
fn read_balanced(s: &mut Scan) -> Result<(String, usize), ParseError> {
    if !s.eat(b'(') {
        return Err(s.err("expected '('"));
    }
    let start = s.i;
    let mut depth = 1usize;
    while let Some(c) = s.peek() {
        match c {
            b'(' => depth += 1,
            b')' => {
                depth -= 1;
                if depth == 0 {
                    let inner = std::str::from_utf8(&s.b[start..s.i]).unwrap().to_string();
                    s.i += 1;
                    return Ok((inner, start));
                }
            }
            _ => {}
        }
        s.i += 1;
    }
    Err(s.err("unclosed '('"))
}

fn lookup(g: &SuperAlgebra, name: &str, offset: usize) -> Result<usize, ParseError> {
    if let Some(i) = g.index_of(name) {
        return Ok(i);
    }
    let strip = |s: &str| -> String { s.chars().filter(|&c| c != '_').collect() };
    let stripped = strip(name);
    if let Some(i) = g.basis.iter().position(|b| strip(&b.name) == stripped) {
        return Ok(i);
    }
    Err(ParseError {
        offset,
        msg: format!("unknown basis element `{name}` of {}", g.name),
    })
}

/// `d<name>` or `d(<name>)`; the cursor sits on the `d`.
fn parse_dfactor(s: &mut Scan, g: &SuperAlgebra) -> Result<usize, ParseError> {
    if !s.eat(b'd') {
        return Err(s.err("expected a differential 'd<name>'"));
    }
    if s.peek() == Some(b'(') && !s.starts_with("(x)") {
        let (inner, off) = read_balanced(s)?;
        lookup(g, &inner, off)
    } else {
        let off = s.i;
        let name = read_bare_name(s)?;
        lookup(g, &name, off)
    }
}

enum Body {
    /// 1-cochain with adjoint (true) or coadjoint (false) coefficients.
    Tensor { adjoint: bool, t: usize, a: usize },
    /// 1-cochain with trivial coefficients: a single `d<name>`.
    Linear { a: usize },
    /// 2-cochain `d<a> ^ d<b>` with trivial coefficients.
    Wedge { a: usize, b: usize },
    /// Quadratic key `(d<a>)^2`.
    Square { a: usize },
}

/// Coefficient: any `*`-joined product of integers and the symbol `a`
/// (also accepted as `alpha` or `t`), e.g. `2`, `a`, `2*a`.  A trailing `*`
/// before the body is optional after an integer (`2h1(x)dh3`).
fn parse_coeff(s: &mut Scan, p: u32) -> Result<K, ParseError> {
    let mut c = K::one(p);
    loop {
        s.ws();
        match s.peek() {
            Some(d) if d.is_ascii_digit() => {
                let mut v: i64 = 0;
                while let Some(d) = s.peek() {
                    if !d.is_ascii_digit() {
                        break;
                    }
                    v = v
                        .checked_mul(10)
                        .and_then(|v| v.checked_add((d - b'0') as i64))
                        .ok_or_else(|| s.err("coefficient overflows"))?;
                    s.i += 1;
                }
                c = c.mul(&K::fp(v, p));
                s.ws();
                if !s.eat(b'*') {
                    return Ok(c);
                }
            }
            _ => {
                for sym in ["alpha", "a", "t"] {
                    if s.starts_with(sym) {
                        let after = s.b.get(s.i + sym.len()).copied();
                        let tied = matches!(after, Some(b'*'))
                            || matches!(after, Some(c) if (c as char).is_whitespace());
                        if tied || (sym != "a" && sym != "t" && after.is_none()) {
                            s.i += sym.len();
                            s.ws();
                            s.eat(b'*');
                            c = c.mul(&K::t(p));
                            continue;
                        }
                    }
                }
                return Ok(c);
            }
        }
    }
}

fn parse_body(s: &mut Scan, g: &SuperAlgebra) -> Result<Body, ParseError> {
    s.ws();
    // A leading balanced group is either a parenthesized tensor target
    // `(name)(x)d...` or the square `(d...)^2`; decide by what follows it.
    if s.peek() == Some(b'(') && !s.starts_with("(x)") {
        let save = s.i;
        let (inner, inner_off) = read_balanced(s)?;
        s.ws();
        if s.starts_with("^2") {
            s.i += 2;
            let mut inner_scan = Scan::new(&inner);
            let a = parse_dfactor(&mut inner_scan, g).map_err(|mut e| {
                e.offset += inner_off;
                e
            })?;
            inner_scan.ws();
            if inner_scan.peek().is_some() {
                return Err(ParseError {
                    offset: inner_off + inner_scan.i,
                    msg: "trailing input inside (d<name>)^2".into(),
                });
            }
            return Ok(Body::Square { a });
        }
        if s.starts_with("(x)") {
            s.i += 3;
            return parse_tensor_rhs(s, g, &inner, inner_off);
        }
        // neither: re-read as a bare name starting at the '('
        s.i = save;
    }
    if s.peek() == Some(b'd') {
        // could be a differential, or an element whose name begins with 'd'
        let save = s.i;
        if let Ok(a) = parse_dfactor(s, g) {
            s.ws();
            if s.starts_with("(x)") {
                // coadjoint target: d<name>(x)d<arg>
                s.i += 3;
                s.ws();
                let arg = parse_dfactor(s, g)?;
                return Ok(Body::Tensor {
                    adjoint: false,
                    t: a,
                    a: arg,
                });
            }
            if s.eat(b'^') {
                s.ws();
                let b = parse_dfactor(s, g)?;
                return Ok(Body::Wedge { a, b });
            }
            return Ok(Body::Linear { a });
        }
        s.i = save;
    }
    let off = s.i;
    let name = read_bare_name(s)?;
    s.ws();
    if !s.starts_with("(x)") {
        return Err(s.err(format!("expected '(x)' after target `{name}`")));
    }
    s.i += 3;
    parse_tensor_rhs(s, g, &name, off)
}

fn parse_tensor_rhs(
    s: &mut Scan,
    g: &SuperAlgebra,
    target: &str,
    target_off: usize,
) -> Result<Body, ParseError> {
    s.ws();
    let arg = parse_dfactor(s, g)?;
    // `d<name>` targets are coadjoint when `<name>` resolves; plain names win.
    if let Ok(t) = lookup(g, target, target_off) {
        return Ok(Body::Tensor {
            adjoint: true,
            t,
            a: arg,
        });
    }
    if let Some(rest) = target.strip_prefix('d') {
        let inner = rest
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .unwrap_or(rest);
        if let Ok(t) = lookup(g, inner, target_off) {
            return Ok(Body::Tensor {
                adjoint: false,
                t,
                a: arg,
            });
        }
    }
    lookup(g, target, target_off).map(|_| unreachable!())
}

/// Parse a cochain expression against the basis names of `g`.
pub fn parse_cochain(g: &SuperAlgebra, input: &str) -> Result<Cochain, ParseError> {
    let mut s = Scan::new(input);
    s.ws();
    if s.peek().is_none() || s.starts_with("0") && s.b.len() == s.i + 1 {
        // "0" or an empty string: the zero cochain, reported as a 1-cochain
        // with trivial coefficients (any block-compatible use accepts it).
        return Ok(Cochain::new(1, Coeffs::Trivial));
    }
    let mut terms: Vec<(K, Body)> = vec![];
    let mut sign = K::one(g.p);
    if s.eat(b'-') {
        sign = sign.neg();
    } else {
        s.eat(b'+');
    }
    loop {
        let coeff = parse_coeff(&mut s, g.p)?.mul(&sign);
        let body = parse_body(&mut s, g)?;
        terms.push((coeff, body));
        s.ws();
        match s.peek() {
            None => break,
            Some(b'+') => {
                s.i += 1;
                sign = K::one(g.p);
            }
            Some(b'-') => {
                s.i += 1;
                sign = K::one(g.p).neg();
            }
            _ => return Err(s.err("expected '+', '-', or end of expression")),
        }
    }
    let shape = |b: &Body| match b {
        Body::Tensor { adjoint: true, .. } => (1u8, Coeffs::Adjoint),
        Body::Tensor { adjoint: false, .. } => (1, Coeffs::Coadjoint),
        Body::Linear { .. } => (1, Coeffs::Trivial),
        Body::Wedge { .. } | Body::Square { .. } => (2, Coeffs::Trivial),
    };
    let (q, coeffs) = shape(&terms[0].1);
    for (_, b) in &terms {
        if shape(b) != (q, coeffs) {
            return Err(ParseError {
                offset: 0,
                msg: format!(
                    "mixed term shapes: expression is not a single ({q}, {coeffs}) cochain"
                ),
            });
        }
    }
    let mut c = Cochain::new(q, coeffs);
    for (coeff, body) in terms {
        match body {
            Body::Tensor { t, a, .. } => c.add_term(g, Some(t), &[a], coeff),
            Body::Linear { a } => c.add_term(g, None, &[a], coeff),
            Body::Wedge { a, b } => c.add_term(g, None, &[a, b], coeff),
            Body::Square { a } => c.add_term(g, None, &[a, a], coeff),
        }
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Parity;
    use crate::cartan::{build_ga, CartanSpec};
    use crate::cohomology::CKey;
    use crate::families::{gl, hei2};

    fn osp12(p: u32) -> SuperAlgebra {
        let spec = CartanSpec::new(p, &[vec![1]], &[Parity::Odd]);
        build_ga(&spec, "osp(1|2)").unwrap().g
    }

    #[test]
    fn adjoint_terms_round_trip() {
        let g = osp12(3);
        let c = parse_cochain(&g, "2*y_1(x)dx_2 + y_2(x)dx_1").unwrap();
        assert_eq!(c.q, 1);
        assert_eq!(c.coeffs, Coeffs::Adjoint);
        assert_eq!(c.terms.len(), 2);
        let text = c.render(&g);
        let c2 = parse_cochain(&g, &text).unwrap();
        assert_eq!(c.terms, c2.terms);
        // underscores optional, '*' optional after integers
        let c3 = parse_cochain(&g, "2y1(x)dx2+y2(x)dx1").unwrap();
        assert_eq!(c.terms, c3.terms);
    }

    #[test]
    fn wedge_square_and_trivial() {
        let g = hei2(2);
        let c = parse_cochain(&g, "dx1^dy1").unwrap();
        assert_eq!((c.q, c.coeffs), (2, Coeffs::Trivial));
        let lin = parse_cochain(&g, "dh1").unwrap();
        assert_eq!((lin.q, lin.coeffs), (1, Coeffs::Trivial));

        let q = osp12(2);
        let sq = parse_cochain(&q, "(dx1)^2 + dx1^dx2").unwrap();
        assert!(sq.terms.contains_key(&CKey {
            t: None,
            args: vec![0, 0]
        }));
        let text = sq.render(&q);
        let back = parse_cochain(&q, &text).unwrap();
        assert_eq!(sq.terms, back.terms);
    }

    #[test]
    fn compound_names_and_coadjoint() {
        let g = gl(2, 0, 3);
        let c = parse_cochain(&g, "E(1,2)(x)d(E(2,1)) - 2*E(1,1)(x)d(E(2,2))").unwrap();
        assert_eq!(c.terms.len(), 2);
        let text = c.render(&g);
        assert_eq!(parse_cochain(&g, &text).unwrap().terms, c.terms);

        let co = parse_cochain(&g, "d(E(1,2))(x)d(E(2,1))").unwrap();
        assert_eq!(co.coeffs, Coeffs::Coadjoint);
        assert_eq!(parse_cochain(&g, &co.render(&g)).unwrap().terms, co.terms);
    }

    #[test]
    fn symbolic_coefficient() {
        let spec = CartanSpec::from_tokens(
            2,
            &[
                vec!["ev", "a", "0"],
                vec!["a", "ev", "1"],
                vec!["0", "1", "ev"],
            ],
            &[Parity::Even; 3],
        )
        .unwrap()
        .with_words(&["[x_1,x_2]", "[x_2,x_3]", "[x_3,[x_1,x_2]]", "[[x_1,x_2],[x_2,x_3]]"])
        .unwrap();
        let g = build_ga(&spec, "wk(3;a)").unwrap().g;
        let c = parse_cochain(&g, "h1(x)dh4 + a*h3(x)dh4").unwrap();
        assert_eq!(c.terms.len(), 2);
        let key = CKey {
            t: Some(g.index_of("h3").unwrap()),
            args: vec![g.index_of("h4").unwrap()],
        };
        assert_eq!(c.terms[&key], K::t(2));
        assert_eq!(parse_cochain(&g, &c.render(&g)).unwrap().terms, c.terms);
    }

    #[test]
    fn errors_carry_offsets() {
        let g = hei2(3);
        let e = parse_cochain(&g, "y1(x)dx9").unwrap_err();
        assert!(e.msg.contains("unknown basis element"));
        assert_eq!(e.offset, 6);
        let d = e.diagnostic("y1(x)dx9");
        assert!(d.contains('^'));

        let e = parse_cochain(&g, "dx1 ^").unwrap_err();
        assert!(e.offset >= 5);
        let e = parse_cochain(&g, "y1(x)dx1 & y2").unwrap_err();
        assert!(e.msg.contains("expected '+'"));
        let e = parse_cochain(&g, "dx1^dy1 + y1(x)dx1").unwrap_err();
        assert!(e.msg.contains("mixed term shapes"));
    }
}
