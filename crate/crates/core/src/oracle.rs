//! The splitting-principle oracle: the Steenrod action on `F2[t_1, ..., t_m]`
//! with every `t_i` of degree one.
//!
//! The action is determined by `Sq(t) = t + t^2` and the Cartan formula, which
//! on a single variable gives `Sq^a(t^e) = C(e, a) t^{e+a}`. Nothing here goes
//! through the Adem relations or the Wu formula, so it serves as an
//! independent check of both. Elementary symmetric polynomials `e_j` stand in
//! for the Stiefel-Whitney classes `w_j`.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::algebra::{AlgebraElement, Monomial};
use crate::steenrod::{SqWord, SteenrodElement};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("input of degree {degree} needs at least {degree} variables, oracle has {vars}")]
    TooFewVariables { degree: u32, vars: usize },
    #[error("polynomial is not symmetric")]
    NotSymmetric,
    #[error("variable index {0} out of range")]
    BadVariable(usize),
    #[error("cannot parse {input:?}: {reason}")]
    Parse { input: String, reason: String },
}

/// A polynomial over F2 in a fixed number of variables, as a set of dense
/// exponent vectors.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct SplitPoly {
    vars: usize,
    terms: BTreeSet<Vec<u16>>,
}

impl SplitPoly {
    pub fn zero(vars: usize) -> Self {
        SplitPoly {
            vars,
            terms: BTreeSet::new(),
        }
    }

    pub fn monomial(exps: Vec<u16>) -> Self {
        SplitPoly {
            vars: exps.len(),
            terms: BTreeSet::from([exps]),
        }
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = &Vec<u16>> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest total degree among the terms; 0 for the zero polynomial.
    pub fn degree(&self) -> u32 {
        self.terms
            .iter()
            .map(|t| t.iter().map(|&e| e as u32).sum())
            .max()
            .unwrap_or(0)
    }

    fn toggle(&mut self, t: Vec<u16>) {
        if !self.terms.remove(&t) {
            self.terms.insert(t);
        }
    }

    pub fn add_assign(&mut self, other: &SplitPoly) {
        for t in &other.terms {
            self.toggle(t.clone());
        }
    }

    pub fn mul(&self, other: &SplitPoly) -> SplitPoly {
        let mut out = SplitPoly::zero(self.vars);
        for a in &self.terms {
            for b in &other.terms {
                out.toggle(a.iter().zip(b).map(|(x, y)| x + y).collect());
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> SplitPoly {
        let mut out = SplitPoly::monomial(vec![0; self.vars]);
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }
}

impl fmt::Display for SplitPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl SplitPoly {
    /// Parses sums of products of `t<i>` and `t<i>^<e>` (1-based indices),
    /// plus the constants `0` and `1`.
    pub fn parse(vars: usize, input: &str) -> Result<SplitPoly, OracleError> {
        let err = |reason: String| OracleError::Parse {
            input: input.to_string(),
            reason,
        };
        let mut out = SplitPoly::zero(vars);
        for term in input.split('+') {
            let term = term.trim();
            if term.is_empty() {
                return Err(err("empty summand".into()));
            }
            if term == "0" {
                continue;
            }
            let mut exps = vec![0u16; vars];
            if term != "1" {
                for factor in term.split('*') {
                    let factor = factor.trim();
                    let (name, e) = match factor.split_once('^') {
                        Some((n, e)) => (
                            n.trim(),
                            e.trim()
                                .parse::<u16>()
                                .map_err(|_| err(format!("bad exponent in {factor:?}")))?,
                        ),
                        None => (factor, 1),
                    };
                    let i: usize = name
                        .strip_prefix('t')
                        .and_then(|d| d.parse().ok())
                        .filter(|&i| i >= 1)
                        .ok_or_else(|| err(format!("unknown variable {name:?}")))?;
                    if i > vars {
                        return Err(OracleError::BadVariable(i));
                    }
                    exps[i - 1] += e;
                }
            }
            out.toggle(exps);
        }
        Ok(out)
    }
}

impl fmt::Debug for SplitPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|t| {
                let factors: Vec<String> = t
                    .iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(i, &e)| match e {
                        1 => format!("t{}", i + 1),
                        _ => format!("t{}^{}", i + 1, e),
                    })
                    .collect();
                if factors.is_empty() {
                    "1".to_string()
                } else {
                    factors.join("*")
                }
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SplittingOracle {
    vars: usize,
}

impl SplittingOracle {
    pub fn new(vars: usize) -> Self {
        SplittingOracle { vars }
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn one(&self) -> SplitPoly {
        SplitPoly::monomial(vec![0; self.vars])
    }

    pub fn variable(&self, i: usize) -> Result<SplitPoly, OracleError> {
        if i >= self.vars {
            return Err(OracleError::BadVariable(i));
        }
        let mut e = vec![0; self.vars];
        e[i] = 1;
        Ok(SplitPoly::monomial(e))
    }

    /// `t_1 t_2 ... t_m`.
    pub fn product_of_variables(&self) -> SplitPoly {
        SplitPoly::monomial(vec![1; self.vars])
    }

    /// The elementary symmetric polynomial `e_j(t_1, ..., t_m)`.
    pub fn elementary(&self, j: usize) -> SplitPoly {
        let mut out = SplitPoly::zero(self.vars);
        if j > self.vars {
            return out;
        }
        fn choose(start: usize, left: usize, cur: &mut Vec<u16>, out: &mut SplitPoly) {
            if left == 0 {
                out.toggle(cur.clone());
                return;
            }
            for i in start..=cur.len() - left {
                cur[i] = 1;
                choose(i + 1, left - 1, cur, out);
                cur[i] = 0;
            }
        }
        choose(0, j, &mut vec![0; self.vars], &mut out);
        out
    }

    /// Every monomial of degree at most `max_degree` whose exponents are
    /// non-increasing. Since the action commutes with permuting variables, two
    /// operations agree on all monomials iff they agree on these.
    pub fn sorted_monomials(&self, max_degree: u32) -> Vec<SplitPoly> {
        let mut out = Vec::new();
        for d in 0..=max_degree {
            partitions_into(d, self.vars, &mut |parts| {
                let mut exps = vec![0u16; self.vars];
                for (slot, &p) in exps.iter_mut().zip(parts) {
                    *slot = p as u16;
                }
                out.push(SplitPoly::monomial(exps));
            });
        }
        out
    }

    /// `Sq^a(p)`; no variable-count guard.
    pub fn sq(&self, a: u32, p: &SplitPoly) -> SplitPoly {
        let mut out = SplitPoly::zero(p.vars);
        for t in &p.terms {
            let mut cur = t.clone();
            let mut room: Vec<u32> = vec![0; t.len() + 1];
            for i in (0..t.len()).rev() {
                room[i] = room[i + 1] + t[i] as u32;
            }
            distribute(t, &room, 0, a, &mut cur, &mut out);
        }
        out
    }

    fn guard(&self, p: &SplitPoly) -> Result<(), OracleError> {
        let degree = p.degree();
        if degree as usize > self.vars || p.vars != self.vars {
            return Err(OracleError::TooFewVariables {
                degree,
                vars: self.vars,
            });
        }
        Ok(())
    }

    /// Applies `Sq^{i_1} ... Sq^{i_r}` right to left.
    pub fn apply_word(&self, w: &SqWord, p: &SplitPoly) -> Result<SplitPoly, OracleError> {
        self.guard(p)?;
        Ok(w.entries()
            .iter()
            .rev()
            .fold(p.clone(), |acc, &a| self.sq(a, &acc)))
    }

    pub fn apply_element(
        &self,
        x: &SteenrodElement,
        p: &SplitPoly,
    ) -> Result<SplitPoly, OracleError> {
        self.guard(p)?;
        let mut out = SplitPoly::zero(self.vars);
        for w in x.terms() {
            out.add_assign(&self.apply_word(w, p)?);
        }
        Ok(out)
    }

    /// Rewrites a symmetric polynomial in the elementary symmetric
    /// polynomials; `e_j` becomes generator index `j - 1`.
    pub fn to_elementary(&self, p: &SplitPoly) -> Result<AlgebraElement, OracleError> {
        let mut rest = p.clone();
        let mut out = AlgebraElement::zero();
        while let Some(lead) = rest.terms.iter().next_back().cloned() {
            if lead.windows(2).any(|w| w[0] < w[1]) {
                return Err(OracleError::NotSymmetric);
            }
            let mut pairs = Vec::new();
            let mut product = self.one();
            for j in 0..lead.len() {
                let next = lead.get(j + 1).copied().unwrap_or(0);
                let e = (lead[j] - next) as u32;
                if e > 0 {
                    pairs.push((j, e));
                    product = product.mul(&self.elementary(j + 1).pow(e));
                }
            }
            debug_assert!(product.terms.contains(&lead));
            rest.add_assign(&product);
            out.toggle(Monomial::from_pairs(pairs));
        }
        Ok(out)
    }

    /// `Sq^i(w_j)` in `H^*(BO(k))` computed as `Sq^i(e_j(t_1..t_k))` and
    /// re-expressed in elementary symmetric polynomials.
    pub fn wu_query(i: u32, j: usize, k: usize) -> Result<AlgebraElement, OracleError> {
        let oracle = SplittingOracle::new(k);
        let ej = oracle.elementary(j);
        let image = oracle.apply_word(&SqWord::single(i), &ej)?;
        oracle.to_elementary(&image)
    }
}

/// Calls `f` with each partition of `n` into at most `max_parts` parts, parts
/// listed in non-increasing order.
fn partitions_into(n: u32, max_parts: usize, f: &mut dyn FnMut(&[u32])) {
    fn walk(n: u32, cap: u32, max_parts: usize, cur: &mut Vec<u32>, f: &mut dyn FnMut(&[u32])) {
        if n == 0 {
            f(cur);
            return;
        }
        if cur.len() == max_parts {
            return;
        }
        for p in (1..=n.min(cap)).rev() {
            cur.push(p);
            walk(n - p, p, max_parts, cur, f);
            cur.pop();
        }
    }
    walk(n, n, max_parts, &mut Vec::new(), f);
}

/// Spreads `a` over the variables with `a_i` a bit-submask of `e_i`, which is
/// exactly when `C(e_i, a_i)` is odd.
fn distribute(t: &[u16], room: &[u32], i: usize, a: u32, cur: &mut Vec<u16>, out: &mut SplitPoly) {
    if a == 0 {
        out.toggle(cur.clone());
        return;
    }
    if i == t.len() || room[i] < a {
        return;
    }
    let e = t[i];
    // iterate over submasks s of e with s <= a
    let mut s = e;
    loop {
        if (s as u32) <= a {
            cur[i] = e + s;
            distribute(t, room, i + 1, a - s as u32, cur, out);
            cur[i] = e;
        }
        if s == 0 {
            break;
        }
        s = (s - 1) & e;
    }
}
