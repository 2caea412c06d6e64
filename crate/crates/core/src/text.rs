//! Canonical text rendering and parsing for keys and elements.
//!
//! The grammar is context-free; every key form starts with an unambiguous
//! prefix:
//!
//! ```text
//! p2, p[2,1], p[]        partitions
//! H3, H[2,1], M[1,2]     compositions (letters H and M)
//! S{1,3}                 finite sets
//! w[{1,2}|{3}], w[]      set words
//! x^2, z^-2              generator powers
//! g(a)                   monoid elements
//! e(2,3)                 matrix cells
//! t(k1,k2)               tensor pairs
//! inl(k), inr(k)         direct-sum sides
//! cls(3)                 quotient classes
//! anything else          named points (identifiers)
//! ```
//!
//! Elements render as signed sums in canonical key order, e.g.
//! `p2 + 3/2*p[2,1] - 2*H[1,1]`; the zero element renders as `0`.
//! A bare identifier is a point name; the single letters `p`, `H`, `M`,
//! `S`, `w`, `x`, `z`, `e`, `t`, `g` only open their structured form when
//! followed by the matching bracket, brace, caret, digit or parenthesis,
//! so point names such as `pt` or `x1` stay unambiguous.

use crate::basis::{BasisKey, CompositionLetter, PowerLetter};
use crate::element::Element;
use crate::error::{AlgebraError, Result};
use crate::scalar::Scalar;

pub fn render_key(key: &BasisKey) -> String {
    match key {
        BasisKey::Partition(parts) => render_indexed("p", parts),
        BasisKey::Composition(CompositionLetter::H, parts) => render_indexed("H", parts),
        BasisKey::Composition(CompositionLetter::M, parts) => render_indexed("M", parts),
        BasisKey::FinSet(elems) => format!("S{{{}}}", join(elems)),
        BasisKey::SetWord(blocks) => {
            let inner: Vec<String> = blocks.iter().map(|b| format!("{{{}}}", join(b))).collect();
            format!("w[{}]", inner.join("|"))
        }
        BasisKey::IntPower(PowerLetter::X, n) => format!("x^{n}"),
        BasisKey::IntPower(PowerLetter::Z, n) => format!("z^{n}"),
        BasisKey::MonoidElem(s) => format!("g({s})"),
        BasisKey::MatrixCell(i, j) => format!("e({i},{j})"),
        BasisKey::Point(name) => name.clone(),
        BasisKey::Tensor(a, b) => format!("t({},{})", render_key(a), render_key(b)),
        BasisKey::Summand(0, k) => format!("inl({})", render_key(k)),
        BasisKey::Summand(_, k) => format!("inr({})", render_key(k)),
        BasisKey::Class(i) => format!("cls({i})"),
    }
}

fn join(xs: &[u32]) -> String {
    xs.iter()
        .map(u32::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

fn render_indexed(letter: &str, parts: &[u32]) -> String {
    if parts.len() == 1 {
        format!("{letter}{}", parts[0])
    } else {
        format!("{letter}[{}]", join(parts))
    }
}

pub fn render_element(x: &Element) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (key, coeff)) in x.iter().enumerate() {
        let mag = coeff.abs();
        if i == 0 {
            if coeff.is_negative() {
                out.push('-');
            }
        } else if coeff.is_negative() {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        if !mag.is_one() {
            out.push_str(&mag.to_string());
            out.push('*');
        }
        out.push_str(&render_key(key));
    }
    out
}

pub fn parse_key(s: &str) -> Result<BasisKey> {
    let mut p = Parser::new(s);
    let key = p.key()?;
    p.skip_ws();
    if !p.at_end() {
        return Err(p.err("trailing input after key"));
    }
    Ok(key)
}

pub fn parse_element(s: &str) -> Result<Element> {
    let mut p = Parser::new(s);
    let e = p.element()?;
    p.skip_ws();
    if !p.at_end() {
        return Err(p.err("trailing input after element"));
    }
    Ok(e)
}

struct Parser<'a> {
    src: &'a str,
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser {
            src,
            bytes: src.as_bytes(),
            pos: 0,
        }
    }

    fn err(&self, msg: &str) -> AlgebraError {
        AlgebraError::Parse(format!("{msg} at byte {} of `{}`", self.pos, self.src))
    }

    fn at_end(&self) -> bool {
        self.pos == self.bytes.len()
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn peek_at(&self, off: usize) -> Option<u8> {
        self.bytes.get(self.pos + off).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(b' ' | b'\t')) {
            self.pos += 1;
        }
    }

    fn expect(&mut self, b: u8) -> Result<()> {
        if self.peek() == Some(b) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(&format!("expected `{}`", b as char)))
        }
    }

    fn nat(&mut self) -> Result<u32> {
        let start = self.pos;
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected a number"));
        }
        self.src[start..self.pos]
            .parse()
            .map_err(|_| self.err("number out of range"))
    }

    fn int(&mut self) -> Result<i64> {
        let start = self.pos;
        if self.peek() == Some(b'-') {
            self.pos += 1;
        }
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        if self.pos == start || (self.pos == start + 1 && self.bytes[start] == b'-') {
            return Err(self.err("expected an integer"));
        }
        self.src[start..self.pos]
            .parse()
            .map_err(|_| self.err("integer out of range"))
    }

    /// Comma-separated numbers up to (not consuming) the closing byte.
    fn nat_list(&mut self, close: u8) -> Result<Vec<u32>> {
        let mut out = Vec::new();
        if self.peek() == Some(close) {
            return Ok(out);
        }
        loop {
            out.push(self.nat()?);
            if self.peek() == Some(b',') {
                self.pos += 1;
            } else {
                return Ok(out);
            }
        }
    }

    fn ident(&mut self) -> Result<String> {
        let start = self.pos;
        match self.peek() {
            Some(b) if b.is_ascii_alphabetic() || b == b'_' => self.pos += 1,
            _ => return Err(self.err("expected an identifier")),
        }
        while matches!(self.peek(), Some(b) if b.is_ascii_alphanumeric() || b == b'_') {
            self.pos += 1;
        }
        Ok(self.src[start..self.pos].to_string())
    }

    fn key(&mut self) -> Result<BasisKey> {
        self.skip_ws();
        let Some(b) = self.peek() else {
            return Err(self.err("expected a key"));
        };
        let next = self.peek_at(1);
        match (b, next) {
            (b'p', Some(b'[')) | (b'p', Some(b'0'..=b'9')) => {
                self.pos += 1;
                BasisKey::partition(self.index_parts()?)
            }
            (b'H', Some(b'[')) | (b'H', Some(b'0'..=b'9')) => {
                self.pos += 1;
                BasisKey::composition(CompositionLetter::H, self.index_parts()?)
            }
            (b'M', Some(b'[')) | (b'M', Some(b'0'..=b'9')) => {
                self.pos += 1;
                BasisKey::composition(CompositionLetter::M, self.index_parts()?)
            }
            (b'S', Some(b'{')) => {
                self.pos += 2;
                let elems = self.nat_list(b'}')?;
                self.expect(b'}')?;
                BasisKey::finset(elems)
            }
            (b'w', Some(b'[')) => {
                self.pos += 2;
                let mut blocks = Vec::new();
                if self.peek() != Some(b']') {
                    loop {
                        self.expect(b'{')?;
                        let elems = self.nat_list(b'}')?;
                        self.expect(b'}')?;
                        blocks.push(elems);
                        if self.peek() == Some(b'|') {
                            self.pos += 1;
                        } else {
                            break;
                        }
                    }
                }
                self.expect(b']')?;
                BasisKey::set_word(blocks)
            }
            (b'x', Some(b'^')) => {
                self.pos += 2;
                Ok(BasisKey::IntPower(PowerLetter::X, self.int()?))
            }
            (b'z', Some(b'^')) => {
                self.pos += 2;
                Ok(BasisKey::IntPower(PowerLetter::Z, self.int()?))
            }
            (b'g', Some(b'(')) => {
                self.pos += 2;
                let name = self.ident()?;
                self.expect(b')')?;
                Ok(BasisKey::MonoidElem(name))
            }
            (b'e', Some(b'(')) => {
                self.pos += 2;
                let i = self.nat()?;
                self.expect(b',')?;
                let j = self.nat()?;
                self.expect(b')')?;
                Ok(BasisKey::MatrixCell(i, j))
            }
            (b't', Some(b'(')) => {
                self.pos += 2;
                let a = self.key()?;
                self.skip_ws();
                self.expect(b',')?;
                let b = self.key()?;
                self.skip_ws();
                self.expect(b')')?;
                Ok(BasisKey::tensor(a, b))
            }
            _ => {
                let name = self.ident()?;
                match name.as_str() {
                    "inl" | "inr" if self.peek() == Some(b'(') => {
                        self.pos += 1;
                        let inner = self.key()?;
                        self.skip_ws();
                        self.expect(b')')?;
                        let side = if name == "inl" { 0 } else { 1 };
                        Ok(BasisKey::Summand(side, Box::new(inner)))
                    }
                    "cls" if self.peek() == Some(b'(') => {
                        self.pos += 1;
                        let i = self.nat()?;
                        self.expect(b')')?;
                        Ok(BasisKey::Class(i as usize))
                    }
                    _ => Ok(BasisKey::Point(name)),
                }
            }
        }
    }

    /// Index part of `p2` / `p[2,1]` / `p[]`, letter already consumed.
    fn index_parts(&mut self) -> Result<Vec<u32>> {
        if self.peek() == Some(b'[') {
            self.pos += 1;
            let parts = self.nat_list(b']')?;
            self.expect(b']')?;
            Ok(parts)
        } else {
            Ok(vec![self.nat()?])
        }
    }

    /// Optional `coeff*` prefix of a term; bare rationals are not terms.
    fn coefficient(&mut self) -> Result<Option<Scalar>> {
        self.skip_ws();
        if !matches!(self.peek(), Some(b'0'..=b'9')) {
            return Ok(None);
        }
        let start = self.pos;
        while matches!(self.peek(), Some(b'0'..=b'9' | b'/')) {
            self.pos += 1;
        }
        let c: Scalar = self.src[start..self.pos]
            .parse()
            .map_err(|_| self.err("invalid coefficient"))?;
        self.skip_ws();
        self.expect(b'*')
            .map_err(|_| self.err("expected `*` after coefficient"))?;
        Ok(Some(c))
    }

    fn element(&mut self) -> Result<Element> {
        self.skip_ws();
        if self.peek() == Some(b'0') && !matches!(self.peek_at(1), Some(b'0'..=b'9' | b'/' | b'*'))
        {
            self.pos += 1;
            return Ok(Element::zero());
        }
        let mut out = Element::zero();
        let mut sign = Scalar::one();
        if self.peek() == Some(b'-') {
            self.pos += 1;
            sign = -&sign;
        } else if self.peek() == Some(b'+') {
            self.pos += 1;
        }
        loop {
            let coeff = match self.coefficient()? {
                Some(c) => &sign * &c,
                None => sign.clone(),
            };
            self.skip_ws();
            let key = self.key()?;
            out.add_term(key, coeff);
            self.skip_ws();
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    sign = Scalar::one();
                }
                Some(b'-') => {
                    self.pos += 1;
                    sign = -&Scalar::one();
                }
                _ => return Ok(out),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rt_key(s: &str) {
        let k = parse_key(s).unwrap();
        assert_eq!(render_key(&k), s);
    }

    #[test]
    fn key_examples_round_trip() {
        for s in [
            "p2",
            "p[2,1]",
            "p[]",
            "H3",
            "H[2,1]",
            "M[1,2]",
            "S{1,3}",
            "w[{1,2}|{3}]",
            "w[]",
            "x^2",
            "z^-2",
            "g(a)",
            "e(2,3)",
            "t(p1,H2)",
            "inl(p1)",
            "inr(H[1,1])",
            "cls(3)",
            "pt",
            "x1",
        ] {
            rt_key(s);
        }
    }

    #[test]
    fn single_part_indices_render_without_brackets() {
        assert_eq!(render_key(&parse_key("p[2]").unwrap()), "p2");
        assert_eq!(render_key(&parse_key("H[3]").unwrap()), "H3");
    }

    #[test]
    fn structured_prefixes_need_their_marker() {
        assert!(matches!(parse_key("pt").unwrap(), BasisKey::Point(n) if n == "pt"));
        assert!(matches!(parse_key("x1").unwrap(), BasisKey::Point(n) if n == "x1"));
        assert!(matches!(parse_key("e").unwrap(), BasisKey::Point(n) if n == "e"));
        assert!(matches!(parse_key("z").unwrap(), BasisKey::Point(n) if n == "z"));
    }

    #[test]
    fn malformed_keys_are_rejected() {
        assert!(parse_key("p[1,2]").is_err()); // increasing parts
        assert!(parse_key("S{3,1}").is_err());
        assert!(parse_key("w[{}]").is_err());
        assert!(parse_key("t(p1)").is_err());
        assert!(parse_key("p2 junk").is_err());
        assert!(parse_key("").is_err());
    }

    #[test]
    fn element_examples_round_trip() {
        for s in [
            "0",
            "p2",
            "-p2",
            "p2 + 3/2*p[2,1] - 2*H[1,1]",
            "t(p1,p1) + 2*t(p2,p[])",
            "z^-1 - z^2",
        ] {
            let e = parse_element(s).unwrap();
            assert_eq!(render_element(&e), s);
        }
    }

    #[test]
    fn like_terms_merge_when_parsing() {
        let e = parse_element("p1 + p1").unwrap();
        assert_eq!(render_element(&e), "2*p1");
        let z = parse_element("p1 - p1").unwrap();
        assert!(z.is_zero());
    }

    fn arb_key() -> impl Strategy<Value = BasisKey> {
        let leaf = prop_oneof![
            proptest::collection::vec(1u32..5, 0..4).prop_map(|mut v| {
                v.sort_unstable_by(|a, b| b.cmp(a));
                BasisKey::partition(v).unwrap()
            }),
            proptest::collection::vec(1u32..5, 0..4)
                .prop_map(|v| BasisKey::composition(crate::basis::CompositionLetter::M, v).unwrap()),
            proptest::collection::btree_set(1u32..6, 0..4)
                .prop_map(|s| BasisKey::finset(s.into_iter().collect()).unwrap()),
            proptest::collection::vec(proptest::collection::btree_set(1u32..5, 1..3), 0..3)
                .prop_map(|blocks| BasisKey::set_word(
                    blocks.into_iter().map(|b| b.into_iter().collect()).collect()
                )
                .unwrap()),
            (-9i64..9).prop_map(|n| BasisKey::IntPower(crate::basis::PowerLetter::Z, n)),
            "[a-z][a-z0-9_]{0,5}".prop_map(BasisKey::MonoidElem),
            (1u32..5, 1u32..5).prop_map(|(i, j)| BasisKey::MatrixCell(i, j)),
            (0usize..40).prop_map(BasisKey::Class),
            // Second character alphabetic so names never collide with the
            // letter-digit forms such as `p2`.
            "[a-w][a-z_][a-z0-9_]{0,5}".prop_map(BasisKey::Point),
        ];
        leaf.prop_recursive(2, 8, 2, |inner| {
            prop_oneof![
                (inner.clone(), inner.clone())
                    .prop_map(|(a, b)| BasisKey::tensor(a, b)),
                (0u8..2, inner).prop_map(|(s, k)| BasisKey::Summand(s, Box::new(k))),
            ]
        })
    }

    proptest! {
        #[test]
        fn every_key_round_trips(k in arb_key()) {
            let txt = render_key(&k);
            prop_assert_eq!(parse_key(&txt).unwrap(), k);
        }

        #[test]
        fn every_element_round_trips(
            terms in proptest::collection::vec((arb_key(), -20i64..20, 1i64..6), 0..5)
        ) {
            let e = Element::from_terms(
                terms.into_iter().map(|(k, n, d)| (k, Scalar::new(n, d)))
            );
            let txt = render_element(&e);
            prop_assert_eq!(parse_element(&txt).unwrap(), e);
        }
    }
}
