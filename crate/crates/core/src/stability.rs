//! Hamming-distance defects of permutation tuples against group relators.

use std::fmt;

use num_rational::Rational64;
use serde::Serialize;

use crate::permsearch::Perm;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum StabilityError {
    #[error("degrees differ: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("generator a{} needs a tuple of length {}, got {}", .index + 1, .index + 1, .len)]
    GeneratorOutOfRange { index: usize, len: usize },
    #[error("relator syntax error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("degrees must be strictly increasing and the sample nonempty")]
    BadSample,
}

/// Letters `(generator, ±1)`; the empty word is the identity.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word(pub Vec<(usize, i8)>);

impl Word {
    pub fn power(generator: usize, e: u32) -> Word {
        Word(vec![(generator, 1); e as usize])
    }

    pub fn max_generator(&self) -> Option<usize> {
        self.0.iter().map(|l| l.0).max()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let mut i = 0;
        let mut first = true;
        while i < self.0.len() {
            let l = self.0[i];
            let run = self.0[i..].iter().take_while(|&&x| x == l).count() as i64;
            if !first {
                write!(f, " ")?;
            }
            first = false;
            let e = run * l.1 as i64;
            if e == 1 {
                write!(f, "a{}", l.0 + 1)?;
            } else {
                write!(f, "a{}^{}", l.0 + 1, e)?;
            }
            i += run as usize;
        }
        Ok(())
    }
}

/// Parses one word, e.g. `a1^2 a3^-1 a2`; `1` is the empty word.
pub fn parse_word(text: &str) -> Result<Word, StabilityError> {
    parse_word_at(text, 0)
}

fn parse_word_at(text: &str, offset: usize) -> Result<Word, StabilityError> {
    let b = text.as_bytes();
    let err = |pos: usize, msg: &str| StabilityError::Parse { pos: offset + pos, msg: msg.into() };
    let mut pos = 0;
    let mut letters = Vec::new();
    let number = |pos: &mut usize| -> Option<u64> {
        let start = *pos;
        while *pos < b.len() && b[*pos].is_ascii_digit() {
            *pos += 1;
        }
        text[start..*pos].parse().ok()
    };
    loop {
        while pos < b.len() && (b[pos].is_ascii_whitespace() || b[pos] == b'*') {
            pos += 1;
        }
        if pos == b.len() {
            break;
        }
        if b[pos] == b'1' && letters.is_empty() && text[pos + 1..].trim().is_empty() {
            return Ok(Word::default());
        }
        if b[pos] != b'a' {
            return Err(err(pos, "expected a generator 'a<i>'"));
        }
        pos += 1;
        let at = pos;
        let g = number(&mut pos).filter(|&g| g >= 1).ok_or_else(|| err(at, "expected a generator index ≥ 1"))?;
        let mut e: i64 = 1;
        if pos < b.len() && b[pos] == b'^' {
            pos += 1;
            let neg = pos < b.len() && b[pos] == b'-';
            if neg {
                pos += 1;
            }
            let at = pos;
            let v = number(&mut pos).ok_or_else(|| err(at, "expected an exponent"))? as i64;
            e = if neg { -v } else { v };
        }
        let sign = if e < 0 { -1 } else { 1 };
        letters.extend(std::iter::repeat_n(((g - 1) as usize, sign), e.unsigned_abs() as usize));
    }
    Ok(Word(letters))
}

/// Comma-separated relators, e.g. `a1^2, a2^2, a3^2, a4^2, a1 a2 a3 a4`.
pub fn parse_relators(text: &str) -> Result<Vec<Word>, StabilityError> {
    let mut out = Vec::new();
    let mut offset = 0;
    for part in text.split(',') {
        out.push(parse_word_at(part, offset)?);
        offset += part.len() + 1;
    }
    Ok(out)
}

/// `a_i^{k_i}` for every `i`, followed by `a_1 a_2 … a_r`.
pub fn triangle_relators(base: &[u32]) -> Vec<Word> {
    let mut out: Vec<Word> = base.iter().enumerate().map(|(i, &k)| Word::power(i, k)).collect();
    out.push(Word((0..base.len()).map(|i| (i, 1)).collect()));
    out
}

/// Fraction of points moved differently by `p` and `q`.
pub fn hamming(p: &Perm, q: &Perm) -> Result<Rational64, StabilityError> {
    if p.degree() != q.degree() {
        return Err(StabilityError::DegreeMismatch(p.degree(), q.degree()));
    }
    if p.degree() == 0 {
        return Ok(Rational64::from_integer(0));
    }
    let diff = p.images().iter().zip(q.images()).filter(|(a, b)| a != b).count();
    Ok(Rational64::new(diff as i64, p.degree() as i64))
}

/// The word read as a composition `x_{g_1}^{±1} ∘ x_{g_2}^{±1} ∘ …`.
pub fn eval_word(w: &Word, tuple: &[Perm]) -> Result<Perm, StabilityError> {
    let n = tuple.first().map_or(0, Perm::degree);
    if let Some(p) = tuple.iter().find(|p| p.degree() != n) {
        return Err(StabilityError::DegreeMismatch(n, p.degree()));
    }
    if let Some(g) = w.max_generator().filter(|&g| g >= tuple.len()) {
        return Err(StabilityError::GeneratorOutOfRange { index: g, len: tuple.len() });
    }
    let inverses: Vec<Perm> = tuple.iter().map(Perm::inverse).collect();
    let mut acc: Vec<u32> = (0..n as u32).collect();
    // acc ∘ letter, applied point by point
    for &(g, e) in &w.0 {
        let p = if e > 0 { &tuple[g] } else { &inverses[g] };
        acc = p.images().iter().map(|&y| acc[y as usize]).collect();
    }
    Ok(Perm::from_images(acc).expect("composition of bijections"))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeltaReport {
    pub ok: bool,
    /// `d_H(ξ(tuple), 1)` per relator, as `"p/q"` strings in the JSON form.
    #[serde(serialize_with = "ratios")]
    pub defects: Vec<Rational64>,
}

fn ratios<S: serde::Serializer>(v: &[Rational64], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|r| r.to_string()))
}

/// Whether every relator moves fewer than a `δ` fraction of the points.
pub fn is_delta_solution(relators: &[Word], tuple: &[Perm], delta: Rational64) -> Result<DeltaReport, StabilityError> {
    let n = tuple.first().map_or(0, Perm::degree);
    let id = Perm::identity(n);
    let defects = relators.iter().map(|w| hamming(&eval_word(w, tuple)?, &id)).collect::<Result<Vec<_>, _>>()?;
    Ok(DeltaReport { ok: defects.iter().all(|d| *d < delta), defects })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct QuasiLocalVerdict {
    pub max_ratio: f64,
    /// Least-squares slope of `k_i/n_i` against `n_i` over the later half of the sample.
    pub tail_slope: f64,
    pub tail_decreasing: bool,
    pub note: &'static str,
}

/// Finite-sample look at whether `k_i / n_i` tends to 0.
pub fn quasi_local_rate(changes: &[(u64, u64)]) -> Result<QuasiLocalVerdict, StabilityError> {
    if changes.is_empty() || changes.windows(2).any(|w| w[0].0 >= w[1].0) || changes[0].0 == 0 {
        return Err(StabilityError::BadSample);
    }
    let pts: Vec<(f64, f64)> = changes.iter().map(|&(n, k)| (n as f64, k as f64 / n as f64)).collect();
    let max_ratio = pts.iter().map(|p| p.1).fold(f64::MIN, f64::max);
    let tail = &pts[pts.len() / 2..];
    let slope = if tail.len() < 2 {
        0.0
    } else {
        let len = tail.len() as f64;
        let mx = tail.iter().map(|p| p.0).sum::<f64>() / len;
        let my = tail.iter().map(|p| p.1).sum::<f64>() / len;
        let sxy: f64 = tail.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
        let sxx: f64 = tail.iter().map(|p| (p.0 - mx).powi(2)).sum();
        sxy / sxx
    };
    Ok(QuasiLocalVerdict {
        max_ratio,
        tail_slope: slope,
        tail_decreasing: slope < -1e-12,
        note: "finite-sample proxy; not a limit statement",
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: usize, s: &str) -> Perm {
        Perm::parse(n, s).unwrap()
    }

    #[test]
    fn hamming_examples() {
        let x = p(4, "(0 1)");
        assert_eq!(hamming(&x, &x).unwrap(), Rational64::from_integer(0));
        assert_eq!(hamming(&p(2, "(0 1)"), &Perm::identity(2)).unwrap(), Rational64::from_integer(1));
        let sq = p(8, "(0 1 2)(3 4)(5 6)").pow(2);
        assert_eq!(hamming(&sq, &Perm::identity(8)).unwrap(), Rational64::new(3, 8));
        assert!(hamming(&x, &Perm::identity(3)).is_err());
    }

    #[test]
    fn word_parsing_and_display() {
        let w = parse_word("a1^2 a3^-1 a2").unwrap();
        assert_eq!(w.0, vec![(0, 1), (0, 1), (2, -1), (1, 1)]);
        assert_eq!(w.to_string(), "a1^2 a3^-1 a2");
        assert_eq!(parse_word("1").unwrap(), Word::default());
        let rs = parse_relators("a1^2, a2^2, a3^2, a4^2, a1 a2 a3 a4").unwrap();
        assert_eq!(rs, triangle_relators(&[2, 2, 2, 2]));
        let e = parse_relators("a1^2, b2").unwrap_err();
        assert_eq!(e, StabilityError::Parse { pos: 6, msg: "expected a generator 'a<i>'".into() });
    }

    #[test]
    fn evaluation_order() {
        let s1 = p(5, "(0 1)(2 3 4)");
        let s2 = p(5, "(0 2)(1 3 4)");
        let w = parse_word("a1 a2").unwrap();
        assert_eq!(eval_word(&w, &[s1.clone(), s2.clone()]).unwrap(), s1.compose(&s2));
        assert!(eval_word(&Word::default(), std::slice::from_ref(&s1)).unwrap().is_identity());
        let w = parse_word("a1 a1^-1").unwrap();
        assert!(eval_word(&w, std::slice::from_ref(&s1)).unwrap().is_identity());
        assert!(eval_word(&parse_word("a3").unwrap(), &[s1, s2]).is_err());
    }

    #[test]
    fn delta_solutions() {
        let t = [p(3, "(0 1 2)"), p(3, "(0 1 2)"), p(3, "(0 1 2)")];
        let rel = triangle_relators(&[3, 3, 3]);
        let rep = is_delta_solution(&rel, &t, Rational64::new(1, 100)).unwrap();
        assert!(rep.ok);
        assert!(rep.defects.iter().all(|d| *d == Rational64::from_integer(0)));
        assert!(!is_delta_solution(&rel, &t, Rational64::from_integer(0)).unwrap().ok);
    }

    #[test]
    fn quasi_local_examples() {
        let ns: Vec<u64> = (1..=20).map(|i| 10 * i).collect();
        let c = quasi_local_rate(&ns.iter().map(|&n| (n, 4)).collect::<Vec<_>>()).unwrap();
        assert!(c.tail_decreasing);
        assert!((c.max_ratio - 0.4).abs() < 1e-12);
        let full = quasi_local_rate(&ns.iter().map(|&n| (n, n)).collect::<Vec<_>>()).unwrap();
        assert!(!full.tail_decreasing);
        assert_eq!(full.max_ratio, 1.0);
        let sq =
            quasi_local_rate(&ns.iter().map(|&n| (n, (n as f64).sqrt().ceil() as u64)).collect::<Vec<_>>()).unwrap();
        assert!(sq.tail_decreasing);
        assert!(quasi_local_rate(&[(5, 1), (5, 1)]).is_err());
    }
}
