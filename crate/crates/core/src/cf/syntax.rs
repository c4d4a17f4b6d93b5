//! Text syntax: `quad:(P,D,Q)` for `(P + √D)/Q` and
//! `cf:[a0; a1, a2, (p1, p2)]` for continued fractions, where the
//! parenthesized group is the period. A trailing `...` marks a stream whose
//! continuation is unknown: `cf:[0; 1, 2, ...]`.
//!
//! Only canonical continued fractions are accepted, so every value has
//! exactly one spelling.

use num_bigint::BigInt;

use super::{primitive_len, PartialQuotients};
use crate::error::{Error, Result};
use crate::quad::{is_perfect_square, QuadIrr};

struct Scanner {
    chars: Vec<char>,
    pos: usize,
}

impl Scanner {
    fn new(src: &str) -> Self {
        Scanner {
            chars: src.chars().collect(),
            pos: 0,
        }
    }

    fn column(&self) -> usize {
        self.pos + 1
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn describe(&mut self) -> String {
        match self.peek() {
            Some(c) => format!("`{c}`"),
            None => "end of input".to_string(),
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            let found = self.describe();
            Err(Error::syntax(self.column(), format!("expected `{c}`, found {found}")))
        }
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn eat_str(&mut self, s: &str) -> bool {
        self.skip_ws();
        let n = s.chars().count();
        if self.chars.len() >= self.pos + n && self.chars[self.pos..self.pos + n].iter().copied().eq(s.chars()) {
            self.pos += n;
            true
        } else {
            false
        }
    }

    /// Signed decimal integer; returns its value and starting column.
    fn integer(&mut self) -> Result<(BigInt, usize)> {
        self.skip_ws();
        let start = self.pos;
        if matches!(self.chars.get(self.pos), Some('-') | Some('+')) {
            self.pos += 1;
        }
        let digits_start = self.pos;
        while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == digits_start {
            self.pos = start;
            let found = self.describe();
            return Err(Error::syntax(start + 1, format!("expected an integer, found {found}")));
        }
        let text: String = self.chars[start..self.pos].iter().collect();
        let value = text.parse::<BigInt>().expect("validated digits");
        Ok((value, start + 1))
    }

    fn quotient(&mut self) -> Result<(u64, usize)> {
        let (v, col) = self.integer()?;
        if v < BigInt::from(1) {
            return Err(Error::syntax(col, format!("partial quotient {v} must be >= 1")));
        }
        let v = u64::try_from(&v).map_err(|_| Error::QuotientOverflow(v.to_string()))?;
        Ok((v, col))
    }

    fn finish(&mut self) -> Result<()> {
        if self.peek().is_some() {
            let found = self.describe();
            return Err(Error::syntax(self.column(), format!("unexpected {found} after the number")));
        }
        Ok(())
    }
}

/// Parses either accepted form into a continued fraction.
pub fn parse_number(src: &str) -> Result<PartialQuotients> {
    let trimmed = src.trim_start();
    if trimmed.starts_with("cf:") {
        parse_cf(src)
    } else if trimmed.starts_with("quad:") {
        super::expand(&parse_quad(src)?)
    } else {
        let col = src.len() - trimmed.len() + 1;
        Err(Error::syntax(col, "expected `cf:[...]` or `quad:(P,D,Q)`"))
    }
}

/// Parses `quad:(P,D,Q)`, the value `(P + √D)/Q`.
///
/// `Q` must be nonzero and `D` nonnegative; a nonzero perfect square `D`
/// is rejected because the value is then rational and should be written
/// with `D = 0`.
pub fn parse_quad(src: &str) -> Result<QuadIrr> {
    let mut s = Scanner::new(src);
    if !s.eat_str("quad:") {
        return Err(Error::syntax(s.column(), "expected `quad:`"));
    }
    s.expect('(')?;
    let (p, _) = s.integer()?;
    s.expect(',')?;
    let (d, dcol) = s.integer()?;
    s.expect(',')?;
    let (q, qcol) = s.integer()?;
    s.expect(')')?;
    s.finish()?;
    if q == BigInt::from(0) {
        return Err(Error::syntax(qcol, "denominator Q must be nonzero"));
    }
    if d < BigInt::from(0) {
        return Err(Error::syntax(dcol, format!("radicand D = {d} must be nonnegative")));
    }
    if d != BigInt::from(0) && is_perfect_square(&d) {
        return Err(Error::syntax(
            dcol,
            format!("radicand D = {d} is a perfect square; write rational values with D = 0"),
        ));
    }
    QuadIrr::new(p, d, q)
}

/// Parses `cf:[a0; a1, …]` and checks that the expansion is canonical.
pub fn parse_cf(src: &str) -> Result<PartialQuotients> {
    let mut s = Scanner::new(src);
    if !s.eat_str("cf:") {
        return Err(Error::syntax(s.column(), "expected `cf:`"));
    }
    s.expect('[')?;
    let (a0, _) = s.integer()?;
    let mut quotients: Vec<(u64, usize)> = Vec::new();
    let mut period: Vec<(u64, usize)> = Vec::new();
    let mut stream = false;
    if s.eat(';') {
        loop {
            if s.peek() == Some('(') {
                s.pos += 1;
                loop {
                    period.push(s.quotient()?);
                    if !s.eat(',') {
                        break;
                    }
                }
                s.expect(')')?;
                if s.peek() != Some(']') {
                    return Err(Error::syntax(s.column(), "the period must be the last item"));
                }
                break;
            }
            if s.eat_str("...") {
                stream = true;
                if s.peek() != Some(']') {
                    return Err(Error::syntax(s.column(), "`...` must be the last item"));
                }
                break;
            }
            quotients.push(s.quotient()?);
            if !s.eat(',') {
                break;
            }
        }
        if quotients.is_empty() && period.is_empty() && !stream {
            return Err(Error::syntax(s.column(), "expected quotients after `;`"));
        }
    }
    s.expect(']')?;
    s.finish()?;

    let pre: Vec<u64> = quotients.iter().map(|&(a, _)| a).collect();
    if stream {
        return PartialQuotients::stream(a0, pre);
    }
    if period.is_empty() {
        if let Some(&(1, col)) = quotients.last() {
            return Err(Error::syntax(
                col,
                "a finite expansion may not end in 1; merge it into the previous quotient",
            ));
        }
        return PartialQuotients::finite(a0, pre);
    }
    let per: Vec<u64> = period.iter().map(|&(a, _)| a).collect();
    let d = primitive_len(&per);
    if d < per.len() {
        return Err(Error::syntax(
            period[d].1,
            format!("period is not primitive; it repeats its first {d} quotient(s)"),
        ));
    }
    if let (Some(&(x, col)), Some(&y)) = (quotients.last(), per.last()) {
        if x == y {
            return Err(Error::syntax(
                col,
                "preperiod can be shortened; its last quotient equals the period's last quotient",
            ));
        }
    }
    PartialQuotients::periodic(a0, pre, per)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn syntax_column(r: Result<PartialQuotients>) -> usize {
        match r {
            Err(Error::Syntax { column, .. }) => column,
            other => panic!("expected a syntax error, got {other:?}"),
        }
    }

    #[test]
    fn round_trips() {
        for text in [
            "cf:[1; (1)]",
            "cf:[2; (2)]",
            "cf:[0; 2, 2, 1, (2)]",
            "cf:[-3; 4, 5]",
            "cf:[7]",
            "cf:[0; 1, 2, ...]",
            "cf:[1; (2, 1)]",
        ] {
            let x = parse_cf(text).unwrap();
            assert_eq!(x.to_string(), text);
            assert_eq!(parse_number(text).unwrap(), x);
        }
    }

    #[test]
    fn whitespace_is_free() {
        let x = parse_cf("  cf: [ 0 ;2,2 , 1,( 2 ) ]  ").unwrap();
        assert_eq!(x.to_string(), "cf:[0; 2, 2, 1, (2)]");
    }

    #[test]
    fn quad_form() {
        let x = parse_quad("quad:(1,5,2)").unwrap();
        assert_eq!(x, QuadIrr::golden());
        assert_eq!(parse_number("quad:(1,5,2)").unwrap(), PartialQuotients::golden());
        assert_eq!(parse_quad("quad:(3,0,4)").unwrap().to_string(), "3/4");
        assert_eq!(QuadIrr::golden().to_syntax(), "quad:(1,5,2)");
    }

    #[test]
    fn non_canonical_inputs_are_located() {
        assert_eq!(syntax_column(parse_cf("cf:[0; 2, 1]")), 11);
        assert_eq!(syntax_column(parse_cf("cf:[0; 0, 3]")), 8);
        assert_eq!(syntax_column(parse_cf("cf:[1; (1, 1)]")), 12);
        assert_eq!(syntax_column(parse_cf("cf:[1; 2, (1, 2)]")), 8);
        assert_eq!(syntax_column(parse_cf("cf:[1; (2), 3]")), 11);
        assert_eq!(syntax_column(parse_cf("cf:[1; ]")), 8);
        assert_eq!(syntax_column(parse_cf("cf:[1; 2")), 9);
        assert_eq!(syntax_column(parse_cf("cf:[1; 2] x")), 11);
        assert_eq!(syntax_column(parse_number("  1.5")), 3);
    }

    #[test]
    fn quad_rejections() {
        for (text, col) in [("quad:(1,5,0)", 11), ("quad:(1,-5,2)", 9), ("quad:(1,9,2)", 9)] {
            match parse_quad(text) {
                Err(Error::Syntax { column, .. }) => assert_eq!(column, col, "{text}"),
                other => panic!("{text}: {other:?}"),
            }
        }
    }

    #[test]
    fn huge_quotient_reports_overflow() {
        assert!(matches!(
            parse_cf("cf:[0; 99999999999999999999999]"),
            Err(Error::QuotientOverflow(_))
        ));
    }
}
