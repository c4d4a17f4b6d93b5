//! The word over `{B, Q, T}` recording how the convergent denominators of
//! two numbers interleave.
//!
//! Denominators of both numbers are merged in increasing order. A value
//! that is a denominator of only the first number gives `Q^n`, only the
//! second gives `T_s`, both give `B^n_s`. A value attained by two indices
//! (the `q_0 = q_1 = 1` case) is recorded once with the larger index.

use std::fmt;

use num_bigint::BigInt;

use crate::cf::PartialQuotients;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LetterKind {
    B,
    Q,
    T,
}

impl LetterKind {
    pub fn symbol(self) -> char {
        match self {
            LetterKind::B => 'B',
            LetterKind::Q => 'Q',
            LetterKind::T => 'T',
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WordLetter {
    pub kind: LetterKind,
    pub value: BigInt,
    pub alpha_index: Option<usize>,
    pub beta_index: Option<usize>,
}

impl fmt::Display for WordLetter {
    /// `B n s value`, `Q n value` or `T s value`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            LetterKind::B => write!(
                f,
                "B {} {} {}",
                self.alpha_index.unwrap(),
                self.beta_index.unwrap(),
                self.value
            ),
            LetterKind::Q => write!(f, "Q {} {}", self.alpha_index.unwrap(), self.value),
            LetterKind::T => write!(f, "T {} {}", self.beta_index.unwrap(), self.value),
        }
    }
}

/// A finite prefix of the word: every letter with value at most the limit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Word {
    pub letters: Vec<WordLetter>,
}

/// Denominators `≤ limit` as `(largest index, value)`, strictly increasing.
pub(crate) fn distinct_denominators(x: &PartialQuotients, limit: &BigInt) -> Result<Vec<(usize, BigInt)>> {
    let mut out: Vec<(usize, BigInt)> = Vec::new();
    for (n, q) in x.denominators_up_to(limit)? {
        match out.last_mut() {
            Some(last) if last.1 == q => last.0 = n,
            _ => out.push((n, q)),
        }
    }
    Ok(out)
}

/// Merges two increasing `(index, value)` lists into word letters.
pub(crate) fn merge(xs: &[(usize, BigInt)], ys: &[(usize, BigInt)]) -> Vec<WordLetter> {
    let mut letters = Vec::with_capacity(xs.len() + ys.len());
    let (mut i, mut j) = (0, 0);
    while i < xs.len() || j < ys.len() {
        let letter = match (xs.get(i), ys.get(j)) {
            (Some((n, q)), Some((s, t))) if q == t => {
                i += 1;
                j += 1;
                WordLetter {
                    kind: LetterKind::B,
                    value: q.clone(),
                    alpha_index: Some(*n),
                    beta_index: Some(*s),
                }
            }
            (Some((n, q)), Some((_, t))) if q < t => {
                i += 1;
                WordLetter {
                    kind: LetterKind::Q,
                    value: q.clone(),
                    alpha_index: Some(*n),
                    beta_index: None,
                }
            }
            (Some((n, q)), None) => {
                i += 1;
                WordLetter {
                    kind: LetterKind::Q,
                    value: q.clone(),
                    alpha_index: Some(*n),
                    beta_index: None,
                }
            }
            (_, Some((s, t))) => {
                j += 1;
                WordLetter {
                    kind: LetterKind::T,
                    value: t.clone(),
                    alpha_index: None,
                    beta_index: Some(*s),
                }
            }
            (None, None) => unreachable!(),
        };
        letters.push(letter);
    }
    letters
}

/// The prefix of the word of `(x, y)` with all letters of value `≤ value_limit`.
pub fn build_word(x: &PartialQuotients, y: &PartialQuotients, value_limit: &BigInt) -> Result<Word> {
    if value_limit < &BigInt::from(1) {
        return Err(Error::InvalidArgument("value limit must be >= 1".into()));
    }
    let xs = distinct_denominators(x, value_limit)?;
    let ys = distinct_denominators(y, value_limit)?;
    Ok(Word {
        letters: merge(&xs, &ys),
    })
}

impl Word {
    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Single-string form such as `BBQBQTQQT`.
    pub fn compact(&self) -> String {
        self.letters.iter().map(|l| l.kind.symbol()).collect()
    }

    /// One letter per line; see [`WordLetter`]'s `Display`.
    pub fn to_lines(&self) -> String {
        let mut s = String::new();
        for l in &self.letters {
            s.push_str(&l.to_string());
            s.push('\n');
        }
        s
    }

    /// Parses the output of [`Word::to_lines`].
    pub fn parse_lines(text: &str) -> Result<Word> {
        let mut letters = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let bad = |msg: &str| Error::InvalidArgument(format!("line {}: {msg}", lineno + 1));
            let fields: Vec<&str> = line.split_whitespace().collect();
            let num = |s: &str| s.parse::<usize>().map_err(|_| bad("expected an index"));
            let val = |s: &str| s.parse::<BigInt>().map_err(|_| bad("expected a value"));
            let letter = match fields.as_slice() {
                ["B", n, s, v] => WordLetter {
                    kind: LetterKind::B,
                    value: val(v)?,
                    alpha_index: Some(num(n)?),
                    beta_index: Some(num(s)?),
                },
                ["Q", n, v] => WordLetter {
                    kind: LetterKind::Q,
                    value: val(v)?,
                    alpha_index: Some(num(n)?),
                    beta_index: None,
                },
                ["T", s, v] => WordLetter {
                    kind: LetterKind::T,
                    value: val(v)?,
                    alpha_index: None,
                    beta_index: Some(num(s)?),
                },
                _ => return Err(bad("expected `B n s value`, `Q n value` or `T s value`")),
            };
            letters.push(letter);
        }
        Ok(Word { letters })
    }

    fn positions(&self, pattern: &[LetterKind]) -> Vec<usize> {
        if self.letters.len() < pattern.len() {
            return Vec::new();
        }
        (0..=self.letters.len() - pattern.len())
            .filter(|&i| pattern.iter().enumerate().all(|(k, p)| self.letters[i + k].kind == *p))
            .collect()
    }

    /// Letter position holding `Q^r`, if any.
    pub fn find_q(&self, r: usize) -> Option<usize> {
        self.letters
            .iter()
            .position(|l| l.kind == LetterKind::Q && l.alpha_index == Some(r))
    }
}

/// Starting positions of adjacent `BB`.
pub fn scan_bb(w: &Word) -> Vec<usize> {
    w.positions(&[LetterKind::B, LetterKind::B])
}

/// Starting positions of `B Q^n B` with `a_{n+1} = 1`.
pub fn scan_bqb(w: &Word, x: &PartialQuotients) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for i in w.positions(&[LetterKind::B, LetterKind::Q, LetterKind::B]) {
        let n = w.letters[i + 1].alpha_index.expect("Q letters carry an index");
        if x.quotient(n + 1)? == Some(1) {
            out.push(i);
        }
    }
    Ok(out)
}

/// Starting positions of adjacent `QQ`.
pub fn scan_qq(w: &Word) -> Vec<usize> {
    w.positions(&[LetterKind::Q, LetterKind::Q])
}

/// Starting positions of `T Q Q` and `B Q Q`.
pub fn scan_xqq(w: &Word) -> Vec<usize> {
    let mut out = w.positions(&[LetterKind::T, LetterKind::Q, LetterKind::Q]);
    out.extend(w.positions(&[LetterKind::B, LetterKind::Q, LetterKind::Q]));
    out.sort_unstable();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_silver_prefix() {
        let w = build_word(
            &PartialQuotients::golden(),
            &PartialQuotients::silver(),
            &BigInt::from(30),
        )
        .unwrap();
        assert_eq!(w.compact(), "BBQBQTQQT");
        let values: Vec<u32> = w.letters.iter().map(|l| u32::try_from(&l.value).unwrap()).collect();
        assert_eq!(values, [1, 2, 3, 5, 8, 12, 13, 21, 29]);
        // value 1 is q_0 = q_1 for τ: the larger index is kept
        assert_eq!(w.letters[0].alpha_index, Some(1));
        assert_eq!(w.letters[0].beta_index, Some(0));
        assert_eq!(scan_bb(&w), [0]);
        assert_eq!(scan_qq(&w), [6]);
        assert_eq!(scan_xqq(&w), [5]);
    }

    #[test]
    fn identical_numbers_give_only_b() {
        let tau = PartialQuotients::golden();
        let w = build_word(&tau, &tau, &BigInt::from(1000)).unwrap();
        assert!(w.letters.iter().all(|l| l.kind == LetterKind::B));
        assert_eq!(scan_bb(&w).len(), w.len() - 1);
        assert!(scan_qq(&w).is_empty());
    }

    #[test]
    fn lines_round_trip() {
        let omega = PartialQuotients::periodic(0, vec![2, 2, 1], vec![2]).unwrap();
        let w = build_word(&PartialQuotients::silver(), &omega, &BigInt::from(10_000)).unwrap();
        let compact = w.compact();
        assert!(compact.contains('Q') && compact.contains('T'));
        assert_eq!(Word::parse_lines(&w.to_lines()).unwrap(), w);
        assert!(w.to_lines().starts_with("B 0 0 1\nB 1 1 2\nB 2 2 5\nT 3 7\nQ 3 12\n"));
    }
}
