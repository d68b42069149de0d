//! Words in the Steenrod squares and reduction to the admissible basis.
//!
//! A [`SqWord`] is a composite `Sq^{i_1} Sq^{i_2} ... Sq^{i_r}`, applied right to
//! left. A [`SteenrodElement`] is an F2-sum of admissible words; every element
//! of the mod 2 Steenrod algebra has exactly one such form, reached by
//! rewriting with the Adem relations
//!
//! ```text
//! Sq^a Sq^b = sum_{c=0}^{a/2} binom(b - c - 1, a - 2c) Sq^{a+b-c} Sq^c     (a < 2b)
//! ```

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SteenrodError {
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("word {0} is not admissible")]
    NotAdmissible(SqWord),
    #[error("internal limit: Adem rewriting of {word} exceeded depth {limit}")]
    InternalLimit { word: SqWord, limit: usize },
}

/// Parity of the binomial coefficient `C(n, k)`, by Lucas' theorem.
///
/// `C(n, 0)` is odd for every `n`, including the negative upper index that
/// the Wu formula produces for `Sq^j w_j`.
pub fn binomial_is_odd(n: i64, k: i64) -> bool {
    if k == 0 {
        return true;
    }
    if k < 0 || n < 0 || k > n {
        return false;
    }
    k & !n == 0
}

/// A composable word `Sq^{i_1} ... Sq^{i_r}`. Zero entries are removed on
/// construction, so the empty word is the identity.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(into = "Vec<u32>", from = "Vec<u32>")]
pub struct SqWord(Vec<u32>);

impl From<Vec<u32>> for SqWord {
    fn from(v: Vec<u32>) -> Self {
        SqWord::new(v)
    }
}

impl From<SqWord> for Vec<u32> {
    fn from(w: SqWord) -> Self {
        w.0
    }
}

impl SqWord {
    pub fn new(entries: impl IntoIterator<Item = u32>) -> Self {
        SqWord(entries.into_iter().filter(|&e| e != 0).collect())
    }

    pub fn identity() -> Self {
        SqWord(Vec::new())
    }

    pub fn single(i: u32) -> Self {
        SqWord::new([i])
    }

    /// Normalizes raw integer input: zeros (Sq^0) are deleted, negatives rejected.
    pub fn normalize(raw: &[i64]) -> Result<Self, SteenrodError> {
        let mut entries = Vec::with_capacity(raw.len());
        for &r in raw {
            if r < 0 {
                return Err(SteenrodError::Malformed(format!("negative entry {r}")));
            }
            let r = u32::try_from(r)
                .map_err(|_| SteenrodError::Malformed(format!("entry {r} out of range")))?;
            entries.push(r);
        }
        Ok(SqWord::new(entries))
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn dimension(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_admissible(&self) -> bool {
        self.0.windows(2).all(|p| p[0] >= 2 * p[1])
    }

    /// `(excess, dimension)` of an admissible word. The excess is computed as
    /// `2 i_1 - |I|` and cross-checked against the telescoping sum.
    pub fn excess_and_dimension(&self) -> Result<(u32, u32), SteenrodError> {
        if !self.is_admissible() {
            return Err(SteenrodError::NotAdmissible(self.clone()));
        }
        let dim = self.dimension();
        let Some(&first) = self.0.first() else {
            return Ok((0, 0));
        };
        let excess = 2 * first - dim;
        let telescoped: u32 = self
            .0
            .iter()
            .enumerate()
            .map(|(j, &i)| i - 2 * self.0.get(j + 1).copied().unwrap_or(0))
            .sum();
        debug_assert_eq!(excess, telescoped);
        Ok((excess, dim))
    }

    /// Excess of an admissible word; `None` if the word is not admissible.
    pub fn excess(&self) -> Option<u32> {
        self.excess_and_dimension().ok().map(|(e, _)| e)
    }

    pub fn first(&self) -> Option<u32> {
        self.0.first().copied()
    }

    /// The word with its leftmost square removed.
    pub fn tail(&self) -> SqWord {
        SqWord(self.0.iter().skip(1).copied().collect())
    }

    /// `Sq^a` composed on the left: `Sq^a Sq^I`.
    pub fn prepend(&self, a: u32) -> SqWord {
        let mut v = Vec::with_capacity(self.0.len() + 1);
        v.push(a);
        v.extend_from_slice(&self.0);
        SqWord::new(v)
    }

    pub fn concat(&self, other: &SqWord) -> SqWord {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        SqWord(v)
    }

    /// Renders with superscripts, e.g. `Sq⁶Sq²Sq¹`; the identity renders as `1`.
    pub fn superscript(&self) -> String {
        if self.0.is_empty() {
            return "1".to_string();
        }
        self.0
            .iter()
            .map(|i| format!("Sq{}", superscript_digits(*i)))
            .collect()
    }
}

pub fn superscript_digits(n: u32) -> String {
    const SUP: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    n.to_string()
        .chars()
        .map(|c| SUP[c.to_digit(10).unwrap() as usize])
        .collect()
}

pub fn subscript_digits(n: u32) -> String {
    const SUB: [char; 10] = ['₀', '₁', '₂', '₃', '₄', '₅', '₆', '₇', '₈', '₉'];
    n.to_string()
        .chars()
        .map(|c| SUB[c.to_digit(10).unwrap() as usize])
        .collect()
}

impl fmt::Display for SqWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        write!(f, "Sq[")?;
        for (n, i) in self.0.iter().enumerate() {
            if n > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "]")
    }
}

/// Accepts `Sq3 Sq1`, `Sq^3 Sq^1`, `Sq[3,1]`, juxtapositions of these, and
/// `1` or the empty string for the identity.
impl FromStr for SqWord {
    type Err = SteenrodError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let malformed = || SteenrodError::Malformed(format!("cannot parse word {s:?}"));
        let mut rest = s.trim();
        let mut raw = Vec::new();
        if rest == "1" {
            return Ok(SqWord::identity());
        }
        while !rest.is_empty() {
            rest = rest.strip_prefix("Sq").ok_or_else(malformed)?;
            if let Some(after) = rest.strip_prefix('[') {
                let close = after.find(']').ok_or_else(malformed)?;
                let inner = after[..close].trim();
                if !inner.is_empty() {
                    for part in inner.split(',') {
                        raw.push(part.trim().parse::<i64>().map_err(|_| malformed())?);
                    }
                }
                rest = &after[close + 1..];
            } else {
                rest = rest.strip_prefix('^').unwrap_or(rest);
                let (digits, after) = split_leading(rest, |c| c.is_ascii_digit() || c == '-');
                raw.push(digits.parse::<i64>().map_err(|_| malformed())?);
                rest = after;
            }
            rest = rest.trim_start();
        }
        SqWord::normalize(&raw)
    }
}

fn split_leading(s: &str, pred: impl Fn(char) -> bool) -> (&str, &str) {
    let end = s.find(|c: char| !pred(c)).unwrap_or(s.len());
    s.split_at(end)
}

/// An F2-linear combination of admissible words, stored as a set.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SteenrodElement {
    terms: BTreeSet<SqWord>,
}

impl SteenrodElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_admissible(SqWord::identity()).unwrap()
    }

    pub fn from_admissible(word: SqWord) -> Result<Self, SteenrodError> {
        if !word.is_admissible() {
            return Err(SteenrodError::NotAdmissible(word));
        }
        Ok(SteenrodElement {
            terms: BTreeSet::from([word]),
        })
    }

    /// Builds an element from arbitrary words by reducing each one.
    pub fn from_words<'a>(
        words: impl IntoIterator<Item = &'a SqWord>,
    ) -> Result<Self, SteenrodError> {
        let mut out = SteenrodElement::zero();
        for w in words {
            out.add_assign(&adem_reduce(w)?);
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = &SqWord> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn contains(&self, w: &SqWord) -> bool {
        self.terms.contains(w)
    }

    /// Common dimension of all terms, `None` for zero or mixed dimensions.
    pub fn dimension(&self) -> Option<u32> {
        let mut dims = self.terms.iter().map(SqWord::dimension);
        let d = dims.next()?;
        dims.all(|e| e == d).then_some(d)
    }

    fn toggle(&mut self, w: SqWord) {
        if !self.terms.remove(&w) {
            self.terms.insert(w);
        }
    }

    pub fn add_assign(&mut self, other: &SteenrodElement) {
        for w in &other.terms {
            self.toggle(w.clone());
        }
    }

    pub fn add(&self, other: &SteenrodElement) -> SteenrodElement {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    /// Composition `self ∘ other`, reduced to admissible form.
    pub fn product(&self, other: &SteenrodElement) -> Result<SteenrodElement, SteenrodError> {
        let mut reducer = AdemReducer::default();
        let mut out = SteenrodElement::zero();
        for u in &self.terms {
            for v in &other.terms {
                out.add_assign(&reducer.reduce(&u.concat(v))?);
            }
        }
        Ok(out)
    }

    pub fn superscript(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        self.terms
            .iter()
            .map(SqWord::superscript)
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl fmt::Display for SteenrodElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (n, w) in self.terms.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{w}")?;
        }
        Ok(())
    }
}

/// Parses a `+`-separated sum of words (`0` for the empty sum) and reduces it.
impl FromStr for SteenrodElement {
    type Err = SteenrodError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "0" {
            return Ok(SteenrodElement::zero());
        }
        let words = s
            .split('+')
            .map(str::parse::<SqWord>)
            .collect::<Result<Vec<_>, _>>()?;
        SteenrodElement::from_words(&words)
    }
}

/// Rewrites a word to the admissible basis.
pub fn adem_reduce(word: &SqWord) -> Result<SteenrodElement, SteenrodError> {
    AdemReducer::default().reduce(word)
}

/// The right-hand side of the Adem relation for `Sq^a Sq^b`, `a < 2b`, as a
/// list of (not necessarily admissible) two-letter words.
pub fn adem_relation(a: u32, b: u32) -> Vec<SqWord> {
    debug_assert!(a < 2 * b);
    (0..=a / 2)
        .filter(|&c| binomial_is_odd(b as i64 - c as i64 - 1, a as i64 - 2 * c as i64))
        .map(|c| SqWord::new([a + b - c, c]))
        .collect()
}

/// Leftmost-pair Adem rewriting with a per-call memo table.
#[derive(Default)]
struct AdemReducer {
    memo: HashMap<SqWord, SteenrodElement>,
}

impl AdemReducer {
    fn reduce(&mut self, word: &SqWord) -> Result<SteenrodElement, SteenrodError> {
        let limit = 10 * word.dimension() as usize + 10;
        self.reduce_at(word, 0, limit, word)
    }

    fn reduce_at(
        &mut self,
        word: &SqWord,
        depth: usize,
        limit: usize,
        root: &SqWord,
    ) -> Result<SteenrodElement, SteenrodError> {
        if let Some(done) = self.memo.get(word) {
            return Ok(done.clone());
        }
        if depth > limit {
            return Err(SteenrodError::InternalLimit {
                word: root.clone(),
                limit,
            });
        }
        let e = word.entries();
        let Some(j) = (0..e.len().saturating_sub(1)).find(|&j| e[j] < 2 * e[j + 1]) else {
            let out = SteenrodElement {
                terms: BTreeSet::from([word.clone()]),
            };
            return Ok(out);
        };
        let mut out = SteenrodElement::zero();
        for pair in adem_relation(e[j], e[j + 1]) {
            let rewritten = SqWord::new(
                e[..j]
                    .iter()
                    .chain(pair.entries())
                    .chain(&e[j + 2..])
                    .copied(),
            );
            out.add_assign(&self.reduce_at(&rewritten, depth + 1, limit, root)?);
        }
        self.memo.insert(word.clone(), out.clone());
        Ok(out)
    }
}

/// All admissible words of dimension exactly `dim`, in lexicographic order.
pub fn admissible_words(dim: u32) -> Vec<SqWord> {
    fn extend(remaining: u32, max_next: u32, prefix: &mut Vec<u32>, out: &mut Vec<SqWord>) {
        if remaining == 0 {
            out.push(SqWord(prefix.clone()));
            return;
        }
        for i in 1..=remaining.min(max_next) {
            prefix.push(i);
            extend(remaining - i, i / 2, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    extend(dim, dim, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// Admissible words with excess strictly below `bound` and dimension at most
/// `max_dim`, ordered by (dimension, lex). This set is closed under taking
/// tails, so it is grown by prepending.
pub fn admissible_with_excess_below(bound: u32, max_dim: u32) -> Vec<SqWord> {
    let mut out = Vec::new();
    if bound == 0 {
        return out;
    }
    let mut frontier = vec![SqWord::identity()];
    while let Some(w) = frontier.pop() {
        let dim = w.dimension();
        let lo = 2 * w.first().unwrap_or(0);
        // e(i, w) = i - |w| < bound
        let hi = (bound + dim).saturating_sub(1);
        for i in lo.max(1)..=hi {
            if dim + i > max_dim {
                break;
            }
            frontier.push(w.prepend(i));
        }
        out.push(w);
    }
    out.sort_by(|a, b| (a.dimension(), a).cmp(&(b.dimension(), b)));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(v: &[u32]) -> SqWord {
        SqWord::new(v.iter().copied())
    }

    #[test]
    fn normalize_drops_zeros() {
        assert_eq!(SqWord::normalize(&[3, 0, 1]).unwrap(), w(&[3, 1]));
        assert_eq!(SqWord::normalize(&[]).unwrap(), SqWord::identity());
        assert_eq!(SqWord::normalize(&[0, 0]).unwrap(), SqWord::identity());
        assert!(matches!(
            SqWord::normalize(&[2, -1]),
            Err(SteenrodError::Malformed(_))
        ));
    }

    #[test]
    fn admissibility() {
        assert!(w(&[2, 1]).is_admissible());
        assert!(!w(&[1, 2]).is_admissible());
        assert!(w(&[6, 2, 1]).is_admissible());
        assert!(SqWord::identity().is_admissible());
        assert!(w(&[5]).is_admissible());
    }

    #[test]
    fn excess_examples() {
        assert_eq!(w(&[2]).excess_and_dimension().unwrap(), (2, 2));
        assert_eq!(w(&[2, 1]).excess_and_dimension().unwrap(), (1, 3));
        assert_eq!(SqWord::identity().excess_and_dimension().unwrap(), (0, 0));
        assert!(w(&[1, 2]).excess_and_dimension().is_err());
    }

    #[test]
    fn excess_parity_matches_dimension() {
        for dim in 0..=20 {
            for word in admissible_words(dim) {
                let (e, d) = word.excess_and_dimension().unwrap();
                assert_eq!(e % 2, d % 2, "{word}");
            }
        }
    }

    #[test]
    fn adem_examples() {
        assert!(adem_reduce(&w(&[1, 1])).unwrap().is_zero());
        assert_eq!(adem_reduce(&w(&[1, 2])).unwrap().to_string(), "Sq[3]");
        assert_eq!(adem_reduce(&w(&[2, 2])).unwrap().to_string(), "Sq[3,1]");
        assert_eq!(
            adem_reduce(&w(&[2, 3])).unwrap().to_string(),
            "Sq[4,1] + Sq[5]"
        );
        assert_eq!(adem_reduce(&w(&[3, 1])).unwrap().to_string(), "Sq[3,1]");
    }

    #[test]
    fn product_examples() {
        let one = SteenrodElement::one();
        let s31: SteenrodElement = "Sq[3,1]".parse().unwrap();
        assert_eq!(one.product(&s31).unwrap(), s31);
        let s1: SteenrodElement = "Sq1".parse().unwrap();
        let s2: SteenrodElement = "Sq2".parse().unwrap();
        let s3: SteenrodElement = "Sq3".parse().unwrap();
        assert_eq!(s1.product(&s2).unwrap(), s3);
        assert!(s1.product(&s3).unwrap().is_zero());
    }

    #[test]
    fn bockstein_relations_for_small_m() {
        let s1: SteenrodElement = "Sq1".parse().unwrap();
        for m in 1..=10u32 {
            let even = SteenrodElement::from_admissible(SqWord::single(2 * m)).unwrap();
            let odd = SteenrodElement::from_admissible(SqWord::single(2 * m + 1)).unwrap();
            assert_eq!(s1.product(&even).unwrap(), odd);
            assert!(s1.product(&odd).unwrap().is_zero());
        }
    }

    #[test]
    fn parsing_forms() {
        assert_eq!("Sq3 Sq1".parse::<SqWord>().unwrap(), w(&[3, 1]));
        assert_eq!("Sq[3,1]".parse::<SqWord>().unwrap(), w(&[3, 1]));
        assert_eq!("Sq^3Sq^1".parse::<SqWord>().unwrap(), w(&[3, 1]));
        assert_eq!("".parse::<SqWord>().unwrap(), SqWord::identity());
        assert_eq!("Sq[]".parse::<SqWord>().unwrap(), SqWord::identity());
        assert!("Sq[-1]".parse::<SqWord>().is_err());
        assert!("Tq3".parse::<SqWord>().is_err());
        let e: SteenrodElement = "Sq[4] + Sq[3,1]".parse().unwrap();
        assert_eq!(e.to_string(), "Sq[3,1] + Sq[4]");
        assert_eq!("0".parse::<SteenrodElement>().unwrap().to_string(), "0");
        assert_eq!(
            "Sq1 Sq1".parse::<SteenrodElement>().unwrap().to_string(),
            "0"
        );
    }

    #[test]
    fn superscripts() {
        assert_eq!(w(&[6, 2, 1]).superscript(), "Sq⁶Sq²Sq¹");
        assert_eq!(w(&[12]).superscript(), "Sq¹²");
    }

    #[test]
    fn lucas() {
        assert!(binomial_is_odd(5, 1));
        assert!(!binomial_is_odd(4, 1));
        assert!(binomial_is_odd(-1, 0));
        assert!(!binomial_is_odd(2, 3));
        for n in 0..40i64 {
            let mut row = vec![1u64];
            for k in 1..=n {
                let prev = row[k as usize - 1];
                row.push(prev * (n - k + 1) as u64 / k as u64);
            }
            for k in 0..=n {
                assert_eq!(
                    binomial_is_odd(n, k),
                    row[k as usize] % 2 == 1,
                    "C({n},{k})"
                );
            }
        }
    }

    #[test]
    fn excess_bounded_enumeration() {
        let k2 = admissible_with_excess_below(2, 20);
        let dims: Vec<u32> = k2.iter().map(SqWord::dimension).collect();
        assert_eq!(dims, vec![0, 1, 3, 7, 15]);
        assert_eq!(
            admissible_with_excess_below(1, 30),
            vec![SqWord::identity()]
        );
        for bound in 1..5 {
            let got = admissible_with_excess_below(bound, 16);
            let brute: Vec<SqWord> = (0..=16)
                .flat_map(admissible_words)
                .filter(|w| w.excess().unwrap() < bound)
                .collect();
            assert_eq!(got, brute);
        }
    }
}
