//! The `Sq^1` differential, its cohomology (the second page of the mod 2
//! Bockstein spectral sequence), and non-integrality certificates for classes
//! `Sq^I(ι_k)` with `e(I) = k`.

use serde::Serialize;
use thiserror::Error;

use crate::algebra::{AlgebraElement, AlgebraError, DegreeBasis, PresentedAlgebra};
use crate::linalg::{BitMatrix, EchelonSpan};
use crate::models::{serre_generators, EilenbergMacLane, ModelError, SerreGenerator};
use crate::series::{exterior_series, poly_series, PoincareSeries};
use crate::steenrod::{subscript_digits, SqWord};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BocksteinError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("Sq^1 Sq^1 is nonzero from degree {0}")]
    NotADifferential(u32),
}

/// Matrix of `Sq^1` from degree `n` to `n + 1` in the monomial bases.
pub fn sq1_matrix(alg: &PresentedAlgebra, n: u32) -> Result<BitMatrix, BocksteinError> {
    let source = alg.monomial_basis(n)?;
    let target = alg.monomial_basis(n + 1)?;
    sq1_between(alg, &source, &target)
}

fn sq1_between(
    alg: &PresentedAlgebra,
    source: &DegreeBasis,
    target: &DegreeBasis,
) -> Result<BitMatrix, BocksteinError> {
    let images: Vec<AlgebraElement> = source
        .monomials()
        .iter()
        .map(|m| alg.sq(1, &AlgebraElement::from_monomial(m.clone())))
        .collect();
    Ok(alg.linear_map_data(&images, target)?.matrix)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct E2Record {
    pub degree: u32,
    pub full_dim: usize,
    pub cycle_dim: usize,
    pub boundary_dim: usize,
    pub e2_dim: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub representatives: Option<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct E2Page {
    pub records: Vec<E2Record>,
}

impl E2Page {
    pub fn dimensions(&self) -> Vec<usize> {
        self.records.iter().map(|r| r.e2_dim).collect()
    }

    pub fn max_degree(&self) -> u32 {
        self.records.last().map_or(0, |r| r.degree)
    }
}

/// `Sq^1`-cohomology in degrees `0..=max_degree`; needs `max_degree < D`.
pub fn e2_dimensions(alg: &PresentedAlgebra, max_degree: u32) -> Result<E2Page, BocksteinError> {
    e2_page(alg, max_degree, false)
}

/// As [`e2_dimensions`], optionally with cycle representatives completing the
/// boundaries to a basis of the cycles.
pub fn e2_page(
    alg: &PresentedAlgebra,
    max_degree: u32,
    representatives: bool,
) -> Result<E2Page, BocksteinError> {
    let bases = (0..=max_degree + 1)
        .map(|n| alg.monomial_basis(n))
        .collect::<Result<Vec<_>, _>>()?;
    let matrices = (0..=max_degree as usize)
        .map(|n| sq1_between(alg, &bases[n], &bases[n + 1]))
        .collect::<Result<Vec<_>, _>>()?;
    for n in 1..matrices.len() {
        if !matrices[n].mul(&matrices[n - 1]).is_zero() {
            return Err(BocksteinError::NotADifferential(n as u32 - 1));
        }
    }
    let mut records = Vec::with_capacity(matrices.len());
    for (n, m) in matrices.iter().enumerate() {
        let full_dim = bases[n].len();
        let cycle_dim = full_dim - m.rank();
        let boundary_dim = if n == 0 { 0 } else { matrices[n - 1].rank() };
        let reps = representatives.then(|| {
            let mut span = EchelonSpan::new(full_dim);
            if n > 0 {
                for j in 0..matrices[n - 1].ncols() {
                    span.insert(&matrices[n - 1].column(j));
                }
            }
            m.kernel_basis()
                .into_iter()
                .filter(|z| span.insert(z))
                .map(|z| alg.format_element(&alg.element_from_coordinates(&z, &bases[n])))
                .collect()
        });
        records.push(E2Record {
            degree: n as u32,
            full_dim,
            cycle_dim,
            boundary_dim,
            e2_dim: cycle_dim - boundary_dim,
            representatives: reps,
        });
    }
    Ok(E2Page { records })
}

/// Whether `y` (homogeneous of degree `n >= 1`) lies in `Sq^1(H^{n-1})`.
pub fn is_sq1_boundary(
    alg: &PresentedAlgebra,
    y: &AlgebraElement,
    n: u32,
) -> Result<bool, BocksteinError> {
    if n == 0 {
        return Ok(y.is_zero());
    }
    let source = alg.monomial_basis(n - 1)?;
    let target = alg.monomial_basis(n)?;
    let m = sq1_between(alg, &source, &target)?;
    let mut span = EchelonSpan::new(target.len());
    for j in 0..m.ncols() {
        span.insert(&m.column(j));
    }
    Ok(span.contains(&alg.coordinates(y, &target)?))
}

/// Generators `G = Sq^J(ι_k)` of even degree with `J` not starting with 1.
pub fn qualifying_generators(k: u32, max_generator_degree: u32) -> Vec<SerreGenerator> {
    serre_generators(k, max_generator_degree)
        .into_iter()
        .filter(|g| g.degree() % 2 == 0 && g.word.first() != Some(1))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BrowderPrediction {
    pub k: u32,
    pub qualifying: Vec<SerreGenerator>,
    pub series: PoincareSeries,
}

/// Series of the free graded-commutative algebra on `{G^2}` (degree `2|G|`)
/// and `d{G^2}` (degree `2|G| + 1`) over the qualifying generators. The odd
/// classes square to zero on this page, so they contribute exterior factors.
pub fn browder_prediction(k: u32, max_degree: u32) -> BrowderPrediction {
    let qualifying = qualifying_generators(k, max_degree / 2);
    let even: Vec<u32> = qualifying.iter().map(|g| 2 * g.degree()).collect();
    let odd: Vec<u32> = even.iter().map(|d| d + 1).collect();
    let series = poly_series(&even, max_degree)
        .and_then(|p| p.mul(&exterior_series(&odd, max_degree)?))
        .expect("positive degrees")
        .with_label(format!("predicted E2(K(Z/2,{k}))"));
    BrowderPrediction {
        k,
        qualifying,
        series,
    }
}

/// Degree-by-degree comparison of a computed page with the prediction.
pub fn page_matches(page: &E2Page, prediction: &PoincareSeries) -> Vec<(u32, usize, u64, bool)> {
    page.records
        .iter()
        .filter(|r| r.degree <= prediction.truncation())
        .map(|r| {
            let predicted = prediction.to_u64().expect("small")[r.degree as usize];
            (r.degree, r.e2_dim, predicted, r.e2_dim as u64 == predicted)
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertificateError {
    #[error("rejected: {0}")]
    Rejected(String),
    #[error("verification failed: {0}")]
    Failed(String),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Bockstein(#[from] BocksteinError),
}

/// A checked report that `β Sq^I(ι_k) != 0`, where `I = (|J| + k, J)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ObstructionCertificate {
    pub k: u32,
    pub tail: SqWord,
    pub head_word: SqWord,
    /// Representative of `y = Sq^I(ι_k)` in the monomial basis.
    pub class: String,
    pub class_degree: u32,
    pub obstruction_degree: u32,
    pub ambient_bound: u32,
    pub verified: Vec<String>,
    pub cited: Vec<String>,
    #[serde(skip)]
    pub class_pretty: String,
    #[serde(skip)]
    pub obstruction_pretty: String,
}

pub fn beta_certificate(
    k: u32,
    tail: &SqWord,
    truncation: u32,
) -> Result<ObstructionCertificate, CertificateError> {
    let reject = |msg: String| Err(CertificateError::Rejected(msg));
    let fail = |msg: String| Err(CertificateError::Failed(msg));
    if k < 2 {
        return reject(format!("k = {k}: the obstruction needs k > 1"));
    }
    let Some(tail_excess) = tail.excess() else {
        return reject(format!("tail {tail} is not admissible"));
    };
    if tail_excess >= k {
        return reject(format!(
            "tail {tail} has excess {tail_excess}, not below k = {k}"
        ));
    }
    if tail.first() == Some(1) {
        return reject(format!("tail {tail} starts with 1: Sq^1(i_k) is excluded"));
    }
    let g_degree = k + tail.dimension();
    if g_degree % 2 == 1 {
        return reject(format!("|J| + k = {g_degree} is odd"));
    }
    let obstruction_degree = 2 * g_degree + 1;
    if truncation < obstruction_degree + 1 {
        return reject(format!(
            "truncation {truncation} is below the required {}",
            obstruction_degree + 1
        ));
    }

    let head = tail.prepend(g_degree);
    let class_degree = k + head.dimension();
    let mut verified = Vec::new();
    match head.excess() {
        Some(e) if e == k => verified.push(format!("I = {head} is admissible with excess {k}")),
        _ => return fail(format!("{head} is not admissible of excess {k}")),
    }
    if class_degree + 1 != obstruction_degree {
        return fail("degree bookkeeping is inconsistent".into());
    }

    let em = EilenbergMacLane::new(k, truncation)?;
    let alg = em.algebra();
    let g_index = em
        .generator_index(tail)
        .ok_or_else(|| CertificateError::Failed(format!("no generator for {tail}")))?;
    let generator = SerreGenerator {
        k,
        word: tail.clone(),
    };
    let g = AlgebraElement::generator(g_index);
    let y = em.apply_word(&head);
    let square = alg.square(&g);
    if y.is_zero() || y != square {
        return fail(format!(
            "Sq^I(i_k) = {} differs from the square of {}",
            alg.format_element(&y),
            generator.name()
        ));
    }
    if alg.homogeneous_degree(&y).map_err(BocksteinError::from)? != Some(class_degree) {
        return fail("y is not homogeneous of the expected degree".into());
    }
    verified.push(format!(
        "y = Sq^I(i_{k}) applied factor by factor equals ({})^2, a nonzero class of degree {class_degree}",
        generator.name()
    ));

    if !alg.sq(1, &y).is_zero() {
        return fail("Sq^1 y is nonzero".into());
    }
    verified.push("Sq^1 y = 0".into());

    if is_sq1_boundary(alg, &y, class_degree)? {
        return fail("y is a Sq^1-boundary".into());
    }
    verified.push(format!(
        "y is not in the image of Sq^1: H^{} -> H^{class_degree}",
        class_degree - 1
    ));

    let page = e2_dimensions(alg, obstruction_degree)?;
    let prediction = browder_prediction(k, obstruction_degree);
    let comparison = page_matches(&page, &prediction.series);
    if let Some((n, got, want, _)) = comparison.iter().find(|c| !c.3) {
        return fail(format!(
            "E2 dimension {got} in degree {n}, predicted {want}"
        ));
    }
    verified.push(format!(
        "Sq^1-cohomology matches the free algebra on {{G^2}}, d{{G^2}} in degrees 0..={obstruction_degree}"
    ));

    if !prediction.qualifying.contains(&generator) {
        return fail(format!(
            "{} is not among the qualifying generators",
            generator.name()
        ));
    }
    verified.push(format!(
        "{{y}} = {{G^2}} for the qualifying generator G = {}",
        generator.name()
    ));

    let ambient_bound = 2 * obstruction_degree + 1;
    let cited = vec![
        "the second Bockstein page of K(Z/2,k) is the polynomial algebra on {G^2} and d2{G^2} (Browder), so d2{y} != 0".to_string(),
        "for a Sq^1-cycle y, d2{y} != 0 implies beta(y) != 0".to_string(),
        format!(
            "the {}-skeleton of K(Z/2,{k}) thickened in R^(n+1) has boundary an n-manifold with H^{obstruction_degree}(;Z) injecting once n >= {ambient_bound}",
            obstruction_degree + 1
        ),
    ];
    let iota = format!("ι{}", subscript_digits(k));
    let class_pretty = if tail.is_empty() {
        format!("{iota}²")
    } else {
        format!("({})²", generator.pretty())
    };
    Ok(ObstructionCertificate {
        k,
        tail: tail.clone(),
        class: alg.format_element(&y),
        class_degree,
        obstruction_degree,
        ambient_bound,
        verified,
        cited,
        class_pretty,
        obstruction_pretty: format!("β {}({iota})", head.superscript()),
        head_word: head,
    })
}
