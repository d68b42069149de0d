//! Concrete unstable algebras: the cohomology of `K(Z/2, k)`, of `BO(k)`, and
//! the Thom module of `MO(k)`.

use std::collections::HashMap;

use thiserror::Error;

use crate::algebra::{
    AlgebraBuilder, AlgebraElement, AlgebraError, DegreeBasis, Monomial, PresentedAlgebra,
};
use crate::steenrod::{
    adem_reduce, admissible_with_excess_below, binomial_is_odd, subscript_digits, SqWord,
    SteenrodError,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error(transparent)]
    Steenrod(#[from] SteenrodError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("{0}")]
    Domain(String),
}

/// A polynomial generator `Sq^J(ι_k)` with `J` admissible of excess below `k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SerreGenerator {
    pub k: u32,
    pub word: SqWord,
}

impl SerreGenerator {
    pub fn degree(&self) -> u32 {
        self.k + self.word.dimension()
    }

    /// ASCII name, `i_3` or `Sq[2,1](i_3)`.
    pub fn name(&self) -> String {
        fundamental_name(self.k, &self.word)
    }

    /// `ι₃` or `Sq²Sq¹(ι₃)`.
    pub fn pretty(&self) -> String {
        if self.word.is_empty() {
            format!("ι{}", subscript_digits(self.k))
        } else {
            format!("{}(ι{})", self.word.superscript(), subscript_digits(self.k))
        }
    }
}

fn fundamental_name(k: u32, word: &SqWord) -> String {
    if word.is_empty() {
        format!("i_{k}")
    } else {
        format!("{word}(i_{k})")
    }
}

/// Polynomial generators of `H^*(K(Z/2, k))` through degree `max_degree`,
/// ordered by (degree, lex).
pub fn serre_generators(k: u32, max_degree: u32) -> Vec<SerreGenerator> {
    if k == 0 || max_degree < k {
        return Vec::new();
    }
    admissible_with_excess_below(k, max_degree - k)
        .into_iter()
        .map(|word| SerreGenerator { k, word })
        .collect()
}

/// Evaluates `Sq^I(ι_k)` for admissible `I` using only the Serre presentation:
/// excess below `k` is a generator, excess `k` is the square of the tail,
/// larger excess vanishes.
struct SerreEvaluator<'a> {
    k: u32,
    truncation: u32,
    index: &'a HashMap<SqWord, usize>,
}

impl SerreEvaluator<'_> {
    fn eval(&self, word: &SqWord) -> Result<AlgebraElement, ModelError> {
        let (excess, dim) = word.excess_and_dimension()?;
        if self.k + dim > self.truncation {
            let mut z = AlgebraElement::zero();
            z.mark_truncated();
            return Ok(z);
        }
        if excess < self.k {
            let g = self
                .index
                .get(word)
                .ok_or_else(|| ModelError::Domain(format!("missing generator for {word}")))?;
            Ok(AlgebraElement::generator(*g))
        } else if excess == self.k {
            let tail = self.eval(&word.tail())?;
            Ok(AlgebraElement::from_monomials(
                tail.monomials().map(Monomial::square),
            ))
        } else {
            Ok(AlgebraElement::zero())
        }
    }

    fn straighten(&self, a: u32, word: &SqWord) -> Result<AlgebraElement, ModelError> {
        let mut out = AlgebraElement::zero();
        for term in adem_reduce(&word.prepend(a))?.terms() {
            out.add_assign(&self.eval(term)?);
        }
        Ok(out)
    }
}

/// `H^*(K(Z/2, k))` truncated at degree `D`, with its generators and the
/// straightened action.
#[derive(Debug, Clone)]
pub struct EilenbergMacLane {
    k: u32,
    algebra: PresentedAlgebra,
    generators: Vec<SerreGenerator>,
    index: HashMap<SqWord, usize>,
}

impl EilenbergMacLane {
    pub fn new(k: u32, truncation: u32) -> Result<Self, ModelError> {
        if k == 0 {
            return Err(ModelError::Domain("k must be at least 1".into()));
        }
        let generators = serre_generators(k, truncation);
        let index: HashMap<SqWord, usize> = generators
            .iter()
            .enumerate()
            .map(|(n, g)| (g.word.clone(), n))
            .collect();
        let eval = SerreEvaluator {
            k,
            truncation,
            index: &index,
        };
        let mut builder = AlgebraBuilder::new(truncation);
        for g in &generators {
            builder.generator(g.name(), g.degree());
        }
        for (n, g) in generators.iter().enumerate() {
            for a in 1..=g.degree() {
                if g.degree() + a > truncation {
                    break;
                }
                let image = eval.straighten(a, &g.word)?;
                if !image.is_zero() {
                    builder.set_sq(n, a, image);
                }
            }
        }
        Ok(EilenbergMacLane {
            k,
            algebra: builder.build()?,
            generators,
            index,
        })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn algebra(&self) -> &PresentedAlgebra {
        &self.algebra
    }

    pub fn into_algebra(self) -> PresentedAlgebra {
        self.algebra
    }

    pub fn generators(&self) -> &[SerreGenerator] {
        &self.generators
    }

    pub fn generator_index(&self, word: &SqWord) -> Option<usize> {
        self.index.get(word).copied()
    }

    /// The fundamental class `ι_k`.
    pub fn fundamental_class(&self) -> AlgebraElement {
        match self.generator_index(&SqWord::identity()) {
            Some(i) => AlgebraElement::generator(i),
            None => {
                let mut z = AlgebraElement::zero();
                z.mark_truncated();
                z
            }
        }
    }

    fn evaluator(&self) -> SerreEvaluator<'_> {
        SerreEvaluator {
            k: self.k,
            truncation: self.algebra.truncation(),
            index: &self.index,
        }
    }

    /// `Sq^I(ι_k)` for admissible `I`, read off the Serre presentation.
    pub fn evaluate_admissible(&self, word: &SqWord) -> Result<AlgebraElement, ModelError> {
        self.evaluator().eval(word)
    }

    /// `Sq^a` applied to the generator `Sq^J(ι_k)`, by Adem reduction of
    /// `(a, J)` and [`EilenbergMacLane::evaluate_admissible`] on each summand.
    pub fn straighten(&self, a: u32, word: &SqWord) -> Result<AlgebraElement, ModelError> {
        if !word.is_admissible() || word.excess().unwrap() >= self.k {
            return Err(ModelError::Domain(format!(
                "{word} does not name a generator of H*(K(Z/2,{}))",
                self.k
            )));
        }
        self.evaluator().straighten(a, word)
    }

    /// `Sq^I(ι_k)` computed factor by factor through the algebra's action.
    pub fn apply_word(&self, word: &SqWord) -> AlgebraElement {
        self.algebra.apply_word(word, &self.fundamental_class())
    }
}

pub fn em_algebra(k: u32, truncation: u32) -> Result<PresentedAlgebra, ModelError> {
    Ok(EilenbergMacLane::new(k, truncation)?.into_algebra())
}

/// `Sq^i(w_j)` in `F2[w_1, ..., w_k]` by the Wu formula
/// `sum_t C(j - i + t - 1, t) w_{i-t} w_{j+t}`, with `w_0 = 1` and `w_m = 0`
/// for `m > k`. Generator `w_m` has index `m - 1`.
pub fn wu_sq(i: u32, j: u32, k: u32) -> AlgebraElement {
    let mut out = AlgebraElement::zero();
    if j == 0 || j > k || i > j {
        return out;
    }
    for t in 0..=i {
        let coeff = binomial_is_odd(j as i64 - i as i64 + t as i64 - 1, t as i64);
        if !coeff || j + t > k {
            continue;
        }
        let mut pairs = vec![((j + t - 1) as usize, 1)];
        if i > t {
            pairs.push(((i - t - 1) as usize, 1));
        }
        out.toggle(Monomial::from_pairs(pairs));
    }
    out
}

/// `H^*(BO(k)) = F2[w_1, ..., w_k]` truncated at `D`, acted on by the Wu formula.
pub fn bo_algebra(k: u32, truncation: u32) -> Result<PresentedAlgebra, ModelError> {
    if k == 0 {
        return Err(ModelError::Domain("k must be at least 1".into()));
    }
    let mut builder = AlgebraBuilder::new(truncation);
    for j in 1..=k {
        builder.generator(format!("w{j}"), j);
    }
    for j in 1..=k {
        for i in 1..=j {
            if i + j > truncation {
                break;
            }
            let image = wu_sq(i, j, k);
            if !image.is_zero() {
                builder.set_sq((j - 1) as usize, i, image);
            }
        }
    }
    Ok(builder.build()?)
}

/// A class `c · U_k` in the reduced cohomology of `MO(k)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThomElement {
    pub coefficient: AlgebraElement,
}

impl ThomElement {
    pub fn thom_class() -> Self {
        ThomElement {
            coefficient: AlgebraElement::one(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coefficient.is_zero()
    }
}

/// The reduced cohomology of `MO(k)` through degree `D`, as the free rank-one
/// module over `H^*(BO(k))` on `U_k`, with `Sq^i(U_k) = w_i U_k`.
#[derive(Debug, Clone)]
pub struct ThomModule {
    k: u32,
    truncation: u32,
    bo: PresentedAlgebra,
}

impl ThomModule {
    pub fn new(k: u32, truncation: u32) -> Result<Self, ModelError> {
        if truncation < k {
            return Err(ModelError::Domain(format!(
                "truncation {truncation} is below the Thom class degree {k}"
            )));
        }
        Ok(ThomModule {
            k,
            truncation,
            bo: bo_algebra(k, truncation - k)?,
        })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn truncation(&self) -> u32 {
        self.truncation
    }

    pub fn base(&self) -> &PresentedAlgebra {
        &self.bo
    }

    /// `w_i` as an element of the base, with `w_0 = 1`.
    pub fn stiefel_whitney(&self, i: u32) -> AlgebraElement {
        match i {
            0 => AlgebraElement::one(),
            i if i <= self.k => AlgebraElement::generator((i - 1) as usize),
            _ => AlgebraElement::zero(),
        }
    }

    pub fn degree(&self, x: &ThomElement) -> Result<Option<u32>, ModelError> {
        Ok(self
            .bo
            .homogeneous_degree(&x.coefficient)?
            .map(|d| d + self.k))
    }

    /// Basis of the degree-`n` part: `m · U_k` for `m` in the base basis of
    /// degree `n - k`.
    pub fn basis(&self, n: u32) -> Result<Option<DegreeBasis>, ModelError> {
        if n < self.k {
            return Ok(None);
        }
        Ok(Some(self.bo.monomial_basis(n - self.k)?))
    }

    pub fn dimension(&self, n: u32) -> Result<usize, ModelError> {
        Ok(self.basis(n)?.map_or(0, |b| b.len()))
    }

    /// Cartan: `Sq^a(c U) = sum_j Sq^j(c) w_{a-j} U`.
    pub fn sq(&self, a: u32, x: &ThomElement) -> ThomElement {
        let mut out = AlgebraElement::zero();
        for j in 0..=a {
            let w = self.stiefel_whitney(a - j);
            if w.is_zero() {
                continue;
            }
            let sc = self.bo.sq(j, &x.coefficient);
            out.add_assign(&self.bo.multiply(&sc, &w));
        }
        ThomElement { coefficient: out }
    }

    /// `Sq^I(U_k)`.
    pub fn thom_sq(&self, word: &SqWord) -> ThomElement {
        word.entries()
            .iter()
            .rev()
            .fold(ThomElement::thom_class(), |acc, &a| self.sq(a, &acc))
    }

    /// `(c U)^2 = c^2 U^2 = c^2 w_k U`.
    pub fn square(&self, x: &ThomElement) -> ThomElement {
        let c2 = self.bo.square(&x.coefficient);
        ThomElement {
            coefficient: self.bo.multiply(&c2, &self.stiefel_whitney(self.k)),
        }
    }

    pub fn format(&self, x: &ThomElement) -> String {
        if x.is_zero() {
            return "0".into();
        }
        if x.coefficient == AlgebraElement::one() {
            return format!("U_{}", self.k);
        }
        format!("({})*U_{}", self.bo.format_element(&x.coefficient), self.k)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct MoCheckEntry {
    pub word: SqWord,
    pub degree: u32,
    pub sq1_vanishes: bool,
    pub square_identity: bool,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct MoCheckReport {
    pub k: u32,
    pub dim_bound: u32,
    pub entries: Vec<MoCheckEntry>,
    pub passed: bool,
}

/// Every admissible `I` of excess `k` with `k + |I| + 1 <= dim_bound`. These
/// are exactly `(k + |J|, J)` for admissible `J` of excess at most `k`.
pub fn excess_exactly(k: u32, max_dim: u32) -> Vec<SqWord> {
    let mut out: Vec<SqWord> = admissible_with_excess_below(k + 1, max_dim)
        .into_iter()
        .map(|j| j.prepend(k + j.dimension()))
        .filter(|i| i.dimension() <= max_dim)
        .collect();
    out.sort_by(|a, b| (a.dimension(), a).cmp(&(b.dimension(), b)));
    out
}

/// Checks `Sq^1 Sq^I(U_k) = 0` and `Sq^I(U_k) = [Sq^J(U_k)]^2` for every
/// admissible `I = (i_1, J)` of excess `k` in range.
pub fn mo_vanishing_check(k: u32, dim_bound: u32) -> Result<MoCheckReport, ModelError> {
    if k < 1 {
        return Err(ModelError::Domain("k must be at least 1".into()));
    }
    let module = ThomModule::new(k, dim_bound)?;
    let max_dim = dim_bound.saturating_sub(k + 1);
    let mut entries = Vec::new();
    for word in excess_exactly(k, max_dim) {
        let value = module.thom_sq(&word);
        let sq1_vanishes = module.sq(1, &value).is_zero();
        let tail = module.thom_sq(&word.tail());
        let square_identity = module.square(&tail) == value;
        let note = (word.len() == 1 && k % 2 == 1).then(|| {
            format!(
                "Sq^{k} = Sq^1 Sq^{}, so beta Sq^{k} vanishes identically",
                k - 1
            )
        });
        entries.push(MoCheckEntry {
            degree: k + word.dimension(),
            passed: sq1_vanishes && square_identity,
            word,
            sq1_vanishes,
            square_identity,
            note,
        });
    }
    Ok(MoCheckReport {
        k,
        dim_bound,
        passed: entries.iter().all(|e| e.passed),
        entries,
    })
}
