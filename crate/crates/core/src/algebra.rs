//! Truncated graded-commutative polynomial algebras over F2 carrying an
//! unstable action of the Steenrod squares.
//!
//! An algebra is presented by its generators, each with a degree and a table
//! of `Sq^a(g)` for `1 <= a <= deg g`. The action on arbitrary elements is the
//! F2-linear extension of that table through the Cartan formula. Everything is
//! truncated at a global degree `D`: monomials above `D` are dropped and the
//! result is marked as truncated.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use thiserror::Error;

use crate::linalg::{BitMatrix, BitVec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("degree {degree} exceeds the truncation degree {truncation}")]
    Truncation { degree: u32, truncation: u32 },
    #[error("duplicate generator name {0:?}")]
    DuplicateName(String),
    #[error("generator {0:?} must have positive degree")]
    ZeroDegree(String),
    #[error("unknown generator {0:?}")]
    UnknownGenerator(String),
    #[error("Sq^{a} of {name}: {reason}")]
    BadAction {
        name: String,
        a: u32,
        reason: String,
    },
    #[error("instability violated for {name}: Sq^{degree}({name}) must equal {name}^2")]
    Instability { name: String, degree: u32 },
    #[error("element is not homogeneous")]
    Inhomogeneous,
    #[error("expected degree {expected}, found degree {found}")]
    DegreeMismatch { expected: u32, found: u32 },
    #[error("cannot parse element {input:?}: {reason}")]
    Parse { input: String, reason: String },
}

/// A monomial, stored sparsely as `(generator index, exponent)` pairs sorted by
/// index with positive exponents.
///
/// The ordering is lexicographic on dense exponent vectors with larger
/// exponents first, so `w1^4 < w1^2 w2 < w2^2`. Within one degree this is the
/// basis order.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<(u32, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn generator(index: usize) -> Self {
        Monomial(vec![(index as u32, 1)])
    }

    pub fn power(index: usize, exp: u32) -> Self {
        if exp == 0 {
            Monomial::one()
        } else {
            Monomial(vec![(index as u32, exp)])
        }
    }

    /// Builds from `(index, exponent)` pairs in any order; zero exponents are dropped.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (usize, u32)>) -> Self {
        let mut map: BTreeMap<u32, u32> = BTreeMap::new();
        for (i, e) in pairs {
            *map.entry(i as u32).or_default() += e;
        }
        Monomial(map.into_iter().filter(|&(_, e)| e > 0).collect())
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponents(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.0.iter().map(|&(i, e)| (i as usize, e))
    }

    pub fn exponent(&self, index: usize) -> u32 {
        self.0
            .iter()
            .find(|&&(i, _)| i as usize == index)
            .map_or(0, |&(_, e)| e)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut a, mut b) = (self.0.iter().peekable(), other.0.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some(&&(i, e)), Some(&&(j, f))) => match i.cmp(&j) {
                    Ordering::Less => {
                        out.push((i, e));
                        a.next();
                    }
                    Ordering::Greater => {
                        out.push((j, f));
                        b.next();
                    }
                    Ordering::Equal => {
                        out.push((i, e + f));
                        a.next();
                        b.next();
                    }
                },
                (Some(&&p), None) => {
                    out.push(p);
                    a.next();
                }
                (None, Some(&&p)) => {
                    out.push(p);
                    b.next();
                }
                (None, None) => break,
            }
        }
        Monomial(out)
    }

    pub fn square(&self) -> Monomial {
        Monomial(self.0.iter().map(|&(i, e)| (i, 2 * e)).collect())
    }

    /// Splits off the lowest-index generator: `(index, exponent, rest)`.
    fn split_first(&self) -> Option<(usize, u32, Monomial)> {
        let (&(i, e), rest) = self.0.split_first()?;
        Some((i as usize, e, Monomial(rest.to_vec())))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        for (&(i, e), &(j, f)) in self.0.iter().zip(&other.0) {
            match i.cmp(&j) {
                Ordering::Equal => match f.cmp(&e) {
                    Ordering::Equal => continue,
                    o => return o,
                },
                o => return o,
            }
        }
        other.0.len().cmp(&self.0.len())
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// An F2-linear combination of monomials.
///
/// Equality compares monomials only; `truncated` records that some monomials
/// above the truncation degree were dropped while producing this value.
#[derive(Debug, Clone, Default)]
pub struct AlgebraElement {
    monomials: BTreeSet<Monomial>,
    truncated: bool,
}

impl PartialEq for AlgebraElement {
    fn eq(&self, other: &Self) -> bool {
        self.monomials == other.monomials
    }
}

impl Eq for AlgebraElement {}

impl AlgebraElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_monomial(Monomial::one())
    }

    pub fn from_monomial(m: Monomial) -> Self {
        AlgebraElement {
            monomials: BTreeSet::from([m]),
            truncated: false,
        }
    }

    pub fn generator(index: usize) -> Self {
        Self::from_monomial(Monomial::generator(index))
    }

    pub fn from_monomials(ms: impl IntoIterator<Item = Monomial>) -> Self {
        let mut out = Self::zero();
        for m in ms {
            out.toggle(m);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn is_truncated(&self) -> bool {
        self.truncated
    }

    pub fn mark_truncated(&mut self) {
        self.truncated = true;
    }

    pub fn monomials(&self) -> impl Iterator<Item = &Monomial> {
        self.monomials.iter()
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.monomials.contains(m)
    }

    pub fn toggle(&mut self, m: Monomial) {
        if !self.monomials.remove(&m) {
            self.monomials.insert(m);
        }
    }

    pub fn add_assign(&mut self, other: &AlgebraElement) {
        for m in &other.monomials {
            self.toggle(m.clone());
        }
        self.truncated |= other.truncated;
    }

    pub fn add(&self, other: &AlgebraElement) -> AlgebraElement {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }
}

/// A generator with its degree and stored `Sq^a` images, `1 <= a <= degree`.
/// Missing entries are zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorSpec {
    pub name: String,
    pub degree: u32,
    pub sq: BTreeMap<u32, AlgebraElement>,
}

/// A free graded-commutative algebra over F2, truncated at `truncation`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PresentedAlgebra {
    generators: Vec<GeneratorSpec>,
    truncation: u32,
    by_name: BTreeMap<String, usize>,
}

/// Collects generators first so that action tables can refer to them by index.
#[derive(Debug, Clone)]
pub struct AlgebraBuilder {
    truncation: u32,
    generators: Vec<GeneratorSpec>,
}

impl AlgebraBuilder {
    pub fn new(truncation: u32) -> Self {
        AlgebraBuilder {
            truncation,
            generators: Vec::new(),
        }
    }

    pub fn generator(&mut self, name: impl Into<String>, degree: u32) -> usize {
        self.generators.push(GeneratorSpec {
            name: name.into(),
            degree,
            sq: BTreeMap::new(),
        });
        self.generators.len() - 1
    }

    pub fn set_sq(&mut self, index: usize, a: u32, image: AlgebraElement) {
        self.generators[index].sq.insert(a, image);
    }

    pub fn generators(&self) -> &[GeneratorSpec] {
        &self.generators
    }

    /// Validates names, degrees, homogeneity of images and the instability
    /// conditions, then fills a missing top square with `g^2`.
    pub fn build(self) -> Result<PresentedAlgebra, AlgebraError> {
        let mut by_name = BTreeMap::new();
        for (n, g) in self.generators.iter().enumerate() {
            if g.degree == 0 {
                return Err(AlgebraError::ZeroDegree(g.name.clone()));
            }
            if by_name.insert(g.name.clone(), n).is_some() {
                return Err(AlgebraError::DuplicateName(g.name.clone()));
            }
        }
        let mut alg = PresentedAlgebra {
            generators: self.generators,
            truncation: self.truncation,
            by_name,
        };
        for n in 0..alg.generators.len() {
            let (name, degree) = (alg.generators[n].name.clone(), alg.generators[n].degree);
            let entries: Vec<(u32, AlgebraElement)> = std::mem::take(&mut alg.generators[n].sq)
                .into_iter()
                .collect();
            let explicit_top = entries.iter().any(|(a, _)| *a == degree);
            let mut table = BTreeMap::new();
            for (a, image) in entries {
                let bad = |reason: String| AlgebraError::BadAction {
                    name: name.clone(),
                    a,
                    reason,
                };
                if a == 0 || a > degree {
                    if image.is_zero() {
                        continue;
                    }
                    return Err(bad(format!("exponent must lie in 1..={degree}")));
                }
                for m in image.monomials() {
                    if alg.monomial_degree(m) != degree + a {
                        return Err(bad(format!(
                            "image is not homogeneous of degree {}",
                            degree + a
                        )));
                    }
                }
                if degree + a > alg.truncation {
                    continue;
                }
                if !image.is_zero() {
                    table.insert(a, image);
                }
            }
            if 2 * degree <= alg.truncation {
                let square = AlgebraElement::from_monomial(Monomial::power(n, 2));
                match table.get(&degree) {
                    Some(top) if *top != square => {
                        return Err(AlgebraError::Instability { name, degree })
                    }
                    Some(_) => {}
                    None if explicit_top => return Err(AlgebraError::Instability { name, degree }),
                    None => {
                        table.insert(degree, square);
                    }
                }
            }
            alg.generators[n].sq = table;
        }
        Ok(alg)
    }
}

impl PresentedAlgebra {
    pub fn truncation(&self) -> u32 {
        self.truncation
    }

    pub fn generators(&self) -> &[GeneratorSpec] {
        &self.generators
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.by_name.get(name).copied()
    }

    pub fn generator_degrees(&self) -> Vec<u32> {
        self.generators.iter().map(|g| g.degree).collect()
    }

    pub fn monomial_degree(&self, m: &Monomial) -> u32 {
        m.exponents()
            .map(|(i, e)| e * self.generators[i].degree)
            .sum()
    }

    /// `Ok(None)` for zero, `Ok(Some(n))` for nonzero homogeneous elements.
    pub fn homogeneous_degree(&self, x: &AlgebraElement) -> Result<Option<u32>, AlgebraError> {
        let mut degrees = x.monomials().map(|m| self.monomial_degree(m));
        let Some(d) = degrees.next() else {
            return Ok(None);
        };
        if degrees.all(|e| e == d) {
            Ok(Some(d))
        } else {
            Err(AlgebraError::Inhomogeneous)
        }
    }

    fn check_degree(&self, n: u32) -> Result<(), AlgebraError> {
        if n > self.truncation {
            Err(AlgebraError::Truncation {
                degree: n,
                truncation: self.truncation,
            })
        } else {
            Ok(())
        }
    }

    /// All monomials of degree `n`, in basis order.
    pub fn monomial_basis(&self, n: u32) -> Result<DegreeBasis, AlgebraError> {
        self.check_degree(n)?;
        let degrees: Vec<(usize, u32)> = self
            .generators
            .iter()
            .enumerate()
            .filter(|(_, g)| g.degree <= n)
            .map(|(i, g)| (i, g.degree))
            .collect();
        let mut out = Vec::new();
        fn walk(
            gens: &[(usize, u32)],
            remaining: u32,
            prefix: &mut Vec<(u32, u32)>,
            out: &mut Vec<Monomial>,
        ) {
            if remaining == 0 {
                out.push(Monomial(prefix.clone()));
                return;
            }
            let Some((&(index, degree), rest)) = gens.split_first() else {
                return;
            };
            for e in (0..=remaining / degree).rev() {
                if e > 0 {
                    prefix.push((index as u32, e));
                }
                walk(rest, remaining - e * degree, prefix, out);
                if e > 0 {
                    prefix.pop();
                }
            }
        }
        walk(&degrees, n, &mut Vec::new(), &mut out);
        Ok(DegreeBasis::new(n, out))
    }

    fn within(&self, m: Monomial, out: &mut AlgebraElement) {
        if self.monomial_degree(&m) > self.truncation {
            out.truncated = true;
        } else {
            out.toggle(m);
        }
    }

    pub fn multiply(&self, x: &AlgebraElement, y: &AlgebraElement) -> AlgebraElement {
        let mut out = AlgebraElement::zero();
        out.truncated = x.truncated || y.truncated;
        for a in &x.monomials {
            for b in &y.monomials {
                self.within(a.mul(b), &mut out);
            }
        }
        out
    }

    /// Frobenius: `(sum m)^2 = sum m^2` over F2.
    pub fn square(&self, x: &AlgebraElement) -> AlgebraElement {
        let mut out = AlgebraElement::zero();
        out.truncated = x.truncated;
        for m in &x.monomials {
            self.within(m.square(), &mut out);
        }
        out
    }

    /// `Sq^a(x)`, extended linearly from the generator tables by the Cartan formula.
    pub fn sq(&self, a: u32, x: &AlgebraElement) -> AlgebraElement {
        let mut engine = SqEngine {
            alg: self,
            memo: HashMap::new(),
        };
        let mut out = AlgebraElement::zero();
        out.truncated = x.truncated;
        for m in &x.monomials {
            out.add_assign(&engine.monomial(a, m));
        }
        out
    }

    /// Applies a word right to left, factor by factor.
    pub fn apply_word(&self, word: &crate::steenrod::SqWord, x: &AlgebraElement) -> AlgebraElement {
        word.entries()
            .iter()
            .rev()
            .fold(x.clone(), |acc, &a| self.sq(a, &acc))
    }

    pub fn coordinates(
        &self,
        x: &AlgebraElement,
        basis: &DegreeBasis,
    ) -> Result<BitVec, AlgebraError> {
        let mut v = BitVec::zeros(basis.len());
        for m in x.monomials() {
            let Some(i) = basis.index_of(m) else {
                return Err(AlgebraError::DegreeMismatch {
                    expected: basis.degree,
                    found: self.monomial_degree(m),
                });
            };
            v.set(i, true);
        }
        Ok(v)
    }

    /// Matrix (columns = images), rank, kernel and image dimensions of a
    /// linear map given by the images of a domain basis.
    pub fn linear_map_data(
        &self,
        images: &[AlgebraElement],
        target: &DegreeBasis,
    ) -> Result<LinearMapData, AlgebraError> {
        let columns = images
            .iter()
            .map(|x| match self.homogeneous_degree(x)? {
                Some(d) if d != target.degree => Err(AlgebraError::DegreeMismatch {
                    expected: target.degree,
                    found: d,
                }),
                _ => self.coordinates(x, target),
            })
            .collect::<Result<Vec<_>, _>>()?;
        let matrix = BitMatrix::from_columns(&columns, target.len());
        let rank = matrix.rank();
        Ok(LinearMapData {
            rank,
            kernel_dim: images.len() - rank,
            image_dim: rank,
            matrix,
        })
    }

    pub fn element_from_coordinates(&self, v: &BitVec, basis: &DegreeBasis) -> AlgebraElement {
        AlgebraElement::from_monomials(v.ones().map(|i| basis.monomials[i].clone()))
    }

    pub fn format_monomial(&self, m: &Monomial) -> String {
        if m.is_one() {
            return "1".to_string();
        }
        m.exponents()
            .map(|(i, e)| {
                let name = &self.generators[i].name;
                if e == 1 {
                    name.clone()
                } else {
                    format!("{name}^{e}")
                }
            })
            .collect::<Vec<_>>()
            .join("*")
    }

    /// Renders in the expression grammar accepted by [`PresentedAlgebra::parse_element`].
    pub fn format_element(&self, x: &AlgebraElement) -> String {
        if x.is_zero() {
            return "0".to_string();
        }
        let mut ms: Vec<&Monomial> = x.monomials().collect();
        ms.sort_by(|a, b| (self.monomial_degree(a), *a).cmp(&(self.monomial_degree(b), *b)));
        ms.into_iter()
            .map(|m| self.format_monomial(m))
            .collect::<Vec<_>>()
            .join(" + ")
    }

    pub fn display<'a>(&'a self, x: &'a AlgebraElement) -> ElementDisplay<'a> {
        ElementDisplay { alg: self, x }
    }

    /// Parses `+`-separated products of `name` or `name^e` factors, with `0`
    /// and `1` as constants. Names may contain any character other than
    /// whitespace, `+`, `*` and `^`.
    pub fn parse_element(&self, input: &str) -> Result<AlgebraElement, AlgebraError> {
        parse_with(input, |name| self.generator_index(name))
    }
}

pub(crate) fn parse_with(
    input: &str,
    lookup: impl Fn(&str) -> Option<usize>,
) -> Result<AlgebraElement, AlgebraError> {
    let err = |reason: String| AlgebraError::Parse {
        input: input.to_string(),
        reason,
    };
    let mut out = AlgebraElement::zero();
    for term in input.split('+') {
        let term = term.trim();
        if term.is_empty() {
            return Err(err("empty term".into()));
        }
        let mut pairs = Vec::new();
        let mut zero = false;
        for factor in term.split('*') {
            let factor = factor.trim();
            let (base, exp) = match factor.split_once('^') {
                Some((b, e)) => (
                    b.trim(),
                    e.trim()
                        .parse::<u32>()
                        .map_err(|_| err(format!("bad exponent in {factor:?}")))?,
                ),
                None => (factor, 1),
            };
            match base {
                "" => return Err(err("empty factor".into())),
                "1" => {}
                "0" => zero = true,
                name => {
                    let i = lookup(name)
                        .ok_or_else(|| AlgebraError::UnknownGenerator(name.to_string()))?;
                    pairs.push((i, exp));
                }
            }
        }
        if !zero {
            out.toggle(Monomial::from_pairs(pairs));
        }
    }
    Ok(out)
}

pub struct ElementDisplay<'a> {
    alg: &'a PresentedAlgebra,
    x: &'a AlgebraElement,
}

impl fmt::Display for ElementDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.alg.format_element(self.x))
    }
}

struct SqEngine<'a> {
    alg: &'a PresentedAlgebra,
    memo: HashMap<(u32, Monomial), AlgebraElement>,
}

impl SqEngine<'_> {
    fn monomial(&mut self, a: u32, m: &Monomial) -> AlgebraElement {
        if a == 0 {
            return AlgebraElement::from_monomial(m.clone());
        }
        let deg = self.alg.monomial_degree(m);
        if a > deg {
            return AlgebraElement::zero();
        }
        if deg + a > self.alg.truncation {
            let mut z = AlgebraElement::zero();
            z.truncated = true;
            return z;
        }
        let key = (a, m.clone());
        if let Some(done) = self.memo.get(&key) {
            return done.clone();
        }
        let (g, e, rest) = m.split_first().expect("nonzero degree");
        let out = if rest.is_one() {
            self.power(a, g, e)
        } else {
            let rest_deg = self.alg.monomial_degree(&rest);
            let head_deg = deg - rest_deg;
            let mut acc = AlgebraElement::zero();
            for i in a.saturating_sub(rest_deg)..=a.min(head_deg) {
                let left = self.power(i, g, e);
                if left.is_zero() {
                    acc.truncated |= left.truncated;
                    continue;
                }
                let right = self.monomial(a - i, &rest);
                acc.add_assign(&self.alg.multiply(&left, &right));
            }
            acc
        };
        self.memo.insert(key, out.clone());
        out
    }

    /// `Sq^i(g^e)`.
    fn power(&mut self, i: u32, g: usize, e: u32) -> AlgebraElement {
        let gen = &self.alg.generators[g];
        if i == 0 {
            return AlgebraElement::from_monomial(Monomial::power(g, e));
        }
        if i > gen.degree * e {
            return AlgebraElement::zero();
        }
        if gen.degree * e + i > self.alg.truncation {
            let mut z = AlgebraElement::zero();
            z.truncated = true;
            return z;
        }
        if e == 1 {
            return gen.sq.get(&i).cloned().unwrap_or_default();
        }
        if e.is_multiple_of(2) {
            // Sq(x^2) = Sq(x)^2
            if i % 2 == 1 {
                return AlgebraElement::zero();
            }
            let half = self.power(i / 2, g, e / 2);
            return self.alg.square(&half);
        }
        let mut acc = AlgebraElement::zero();
        for j in 0..=i.min(gen.degree) {
            let left = self.power(j, g, 1);
            if left.is_zero() {
                continue;
            }
            let right = self.power(i - j, g, e - 1);
            acc.add_assign(&self.alg.multiply(&left, &right));
        }
        acc
    }
}

/// The monomials of one degree in basis order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeBasis {
    pub degree: u32,
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl DegreeBasis {
    fn new(degree: u32, monomials: Vec<Monomial>) -> Self {
        let index = monomials
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        DegreeBasis {
            degree,
            monomials,
            index,
        }
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }
}

#[derive(Debug, Clone)]
pub struct LinearMapData {
    pub matrix: BitMatrix,
    pub rank: usize,
    pub kernel_dim: usize,
    pub image_dim: usize,
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Z2[w1, w2] with the Wu action, written out by hand.
    fn w12(truncation: u32) -> PresentedAlgebra {
        let mut b = AlgebraBuilder::new(truncation);
        let w1 = b.generator("w1", 1);
        let w2 = b.generator("w2", 2);
        b.set_sq(w1, 1, AlgebraElement::from_monomial(Monomial::power(w1, 2)));
        b.set_sq(
            w2,
            1,
            AlgebraElement::from_monomial(Monomial::from_pairs([(w1, 1), (w2, 1)])),
        );
        b.build().unwrap()
    }

    #[test]
    fn basis_order_and_size() {
        let a = w12(10);
        let b4 = a.monomial_basis(4).unwrap();
        let names: Vec<String> = b4
            .monomials()
            .iter()
            .map(|m| a.format_monomial(m))
            .collect();
        assert_eq!(names, ["w1^4", "w1^2*w2", "w2^2"]);
        assert_eq!(a.monomial_basis(0).unwrap().len(), 1);
        assert!(matches!(
            a.monomial_basis(11),
            Err(AlgebraError::Truncation { .. })
        ));
        let mut sorted = b4.monomials().to_vec();
        sorted.sort();
        assert_eq!(sorted, b4.monomials());
    }

    #[test]
    fn multiply_and_frobenius() {
        let a = w12(10);
        let x = a.parse_element("w1 + w2").unwrap();
        assert_eq!(a.multiply(&x, &x), a.parse_element("w1^2 + w2^2").unwrap());
        let high = a.parse_element("w2^5").unwrap();
        let p = a.multiply(&high, &a.parse_element("w1").unwrap());
        assert!(p.is_zero() && p.is_truncated());
    }

    #[test]
    fn sq_top_and_derivation() {
        let a = w12(12);
        let w1sq = a.parse_element("w1^2").unwrap();
        assert!(a.sq(1, &w1sq).is_zero());
        let w2 = a.parse_element("w2").unwrap();
        assert_eq!(a.sq(2, &w2), a.parse_element("w2^2").unwrap());
        assert!(a.sq(3, &w2).is_zero());
        let x = a.parse_element("w1*w2").unwrap();
        // Sq^1(w1 w2) = w1^2 w2 + w1 (w1 w2)
        assert!(a.sq(1, &x).is_zero());
        assert_eq!(a.sq(3, &x), a.parse_element("w1^2*w2^2").unwrap());
    }

    #[test]
    fn coordinates_lookup() {
        let a = w12(10);
        let b4 = a.monomial_basis(4).unwrap();
        let x = a.parse_element("w1^4 + w2^2").unwrap();
        let v = a.coordinates(&x, &b4).unwrap();
        assert_eq!(v, BitVec::from_bits(&[true, false, true]));
        assert!(a
            .coordinates(&AlgebraElement::zero(), &b4)
            .unwrap()
            .is_zero());
        assert_eq!(a.element_from_coordinates(&v, &b4), x);
        let wrong = a.parse_element("w2").unwrap();
        assert!(matches!(
            a.coordinates(&wrong, &b4),
            Err(AlgebraError::DegreeMismatch {
                expected: 4,
                found: 2
            })
        ));
    }

    #[test]
    fn linear_map_examples() {
        let a = w12(10);
        let b3 = a.monomial_basis(3).unwrap();
        let zero = vec![AlgebraElement::zero(); 3];
        let d = a.linear_map_data(&zero, &b3).unwrap();
        assert_eq!((d.rank, d.kernel_dim), (0, 3));
        let ident: Vec<AlgebraElement> = b3
            .monomials()
            .iter()
            .map(|m| AlgebraElement::from_monomial(m.clone()))
            .collect();
        assert_eq!(a.linear_map_data(&ident, &b3).unwrap().rank, b3.len());
        let bad = vec![a.parse_element("w1 + w2").unwrap()];
        assert!(a.linear_map_data(&bad, &b3).is_err());
    }

    #[test]
    fn builder_rejects_bad_specs() {
        let mut b = AlgebraBuilder::new(6);
        let g = b.generator("x", 1);
        b.set_sq(
            g,
            1,
            AlgebraElement::zero().add(&AlgebraElement::generator(g)),
        );
        assert!(matches!(b.build(), Err(AlgebraError::BadAction { .. })));

        let mut b = AlgebraBuilder::new(6);
        let g = b.generator("x", 2);
        let h = b.generator("y", 4);
        b.set_sq(g, 2, AlgebraElement::generator(h));
        assert!(matches!(b.build(), Err(AlgebraError::Instability { .. })));

        let mut b = AlgebraBuilder::new(6);
        let g = b.generator("x", 2);
        b.set_sq(g, 2, AlgebraElement::zero());
        assert!(matches!(b.build(), Err(AlgebraError::Instability { .. })));

        let mut b = AlgebraBuilder::new(6);
        b.generator("x", 1);
        b.generator("x", 2);
        assert!(matches!(b.build(), Err(AlgebraError::DuplicateName(_))));
    }

    #[test]
    fn parse_errors() {
        let a = w12(10);
        assert!(matches!(
            a.parse_element("w3"),
            Err(AlgebraError::UnknownGenerator(_))
        ));
        assert!(a.parse_element("w1 + ").is_err());
        assert!(a.parse_element("w1^x").is_err());
        assert!(a.parse_element("0").unwrap().is_zero());
        assert_eq!(a.parse_element("1").unwrap(), AlgebraElement::one());
        assert!(a.parse_element("w1 + w1").unwrap().is_zero());
    }
}
