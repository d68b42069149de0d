//! Truncated Poincaré series with arbitrary-precision coefficients.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::models::serre_generators;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("truncation mismatch: {0} vs {1}")]
    TruncationMismatch(u32, u32),
    #[error("generator degrees must be positive")]
    ZeroDegree,
}

/// Dimensions per degree `0..=D` of a graded vector space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PoincareSeries {
    pub label: String,
    coefficients: Vec<BigUint>,
}

impl PoincareSeries {
    pub fn zero(label: impl Into<String>, truncation: u32) -> Self {
        PoincareSeries {
            label: label.into(),
            coefficients: vec![BigUint::zero(); truncation as usize + 1],
        }
    }

    pub fn unit(truncation: u32) -> Self {
        let mut s = Self::zero("1", truncation);
        s.coefficients[0] = BigUint::one();
        s
    }

    pub fn from_coefficients(label: impl Into<String>, coefficients: Vec<BigUint>) -> Self {
        assert!(!coefficients.is_empty());
        PoincareSeries {
            label: label.into(),
            coefficients,
        }
    }

    pub fn from_u64(label: impl Into<String>, coefficients: &[u64]) -> Self {
        Self::from_coefficients(
            label,
            coefficients.iter().map(|&c| BigUint::from(c)).collect(),
        )
    }

    pub fn truncation(&self) -> u32 {
        (self.coefficients.len() - 1) as u32
    }

    pub fn coefficients(&self) -> &[BigUint] {
        &self.coefficients
    }

    pub fn coefficient(&self, n: u32) -> &BigUint {
        &self.coefficients[n as usize]
    }

    /// Coefficients as `u64`, `None` if any overflows.
    pub fn to_u64(&self) -> Option<Vec<u64>> {
        self.coefficients.iter().map(ToPrimitive::to_u64).collect()
    }

    /// The same series with the degree-0 coefficient cleared.
    pub fn reduced(&self) -> Self {
        let mut out = self.clone();
        out.coefficients[0] = BigUint::zero();
        out.label = format!("{} (reduced)", self.label);
        out
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    fn check(&self, other: &Self) -> Result<(), SeriesError> {
        if self.truncation() != other.truncation() {
            return Err(SeriesError::TruncationMismatch(
                self.truncation(),
                other.truncation(),
            ));
        }
        Ok(())
    }

    /// Coefficient convolution: the series of a tensor product.
    pub fn mul(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check(other)?;
        let d = self.coefficients.len();
        let mut out = vec![BigUint::zero(); d];
        for (i, a) in self.coefficients.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coefficients[..d - i].iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Ok(Self::from_coefficients(
            format!("{} ⊗ {}", self.label, other.label),
            out,
        ))
    }

    /// Pointwise sum: the series of a direct sum.
    pub fn add(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check(other)?;
        let out = self
            .coefficients
            .iter()
            .zip(&other.coefficients)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Self::from_coefficients(
            format!("{} ⊕ {}", self.label, other.label),
            out,
        ))
    }

    /// Multiplies by `t^k`, dropping what falls past the truncation.
    pub fn shift(&self, k: u32) -> Self {
        let mut out = vec![BigUint::zero(); self.coefficients.len()];
        for (n, c) in self.coefficients.iter().enumerate() {
            if let Some(slot) = out.get_mut(n + k as usize) {
                *slot = c.clone();
            }
        }
        Self::from_coefficients(format!("t^{k}·{}", self.label), out)
    }
}

impl Serialize for PoincareSeries {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = serializer.serialize_seq(Some(self.coefficients.len()))?;
        for c in &self.coefficients {
            match c.to_u64() {
                Some(v) => seq.serialize_element(&v)?,
                None => seq.serialize_element(&c.to_string())?,
            }
        }
        seq.end()
    }
}

/// Series of the free graded-commutative F2-algebra on generators of the given
/// degrees: `prod 1/(1 - t^d)`.
pub fn poly_series(degrees: &[u32], truncation: u32) -> Result<PoincareSeries, SeriesError> {
    if degrees.contains(&0) {
        return Err(SeriesError::ZeroDegree);
    }
    let mut s = PoincareSeries::unit(truncation);
    for &d in degrees {
        let d = d as usize;
        for n in d..s.coefficients.len() {
            let prev = s.coefficients[n - d].clone();
            s.coefficients[n] += prev;
        }
    }
    let label = format!(
        "F2[{}]",
        degrees
            .iter()
            .map(u32::to_string)
            .collect::<Vec<_>>()
            .join(",")
    );
    Ok(s.with_label(label))
}

/// Series of the exterior algebra on classes of the given degrees:
/// `prod (1 + t^d)`.
pub fn exterior_series(degrees: &[u32], truncation: u32) -> Result<PoincareSeries, SeriesError> {
    if degrees.contains(&0) {
        return Err(SeriesError::ZeroDegree);
    }
    let mut s = PoincareSeries::unit(truncation);
    for &d in degrees {
        let d = d as usize;
        for n in (d..s.coefficients.len()).rev() {
            let prev = s.coefficients[n - d].clone();
            s.coefficients[n] += prev;
        }
    }
    let label = format!(
        "Λ[{}]",
        degrees
            .iter()
            .map(u32::to_string)
            .collect::<Vec<_>>()
            .join(",")
    );
    Ok(s.with_label(label))
}

pub fn em_series(k: u32, truncation: u32) -> PoincareSeries {
    let degrees: Vec<u32> = serre_generators(k, truncation)
        .iter()
        .map(|g| g.degree())
        .collect();
    poly_series(&degrees, truncation)
        .expect("generator degrees are positive")
        .with_label(format!("H*(K(Z/2,{k}))"))
}

/// Reduced series of `MO(k)`: `t^k` times the series of `F2[w_1..w_k]`.
pub fn mo_series(k: u32, truncation: u32) -> PoincareSeries {
    let degrees: Vec<u32> = (1..=k).collect();
    poly_series(&degrees, truncation)
        .expect("positive degrees")
        .shift(k)
        .with_label(format!("H~*(MO({k}))"))
}

/// Least `N` with `a[N] > b[N]`, if one occurs within the truncation.
pub fn crossing_degree(a: &PoincareSeries, b: &PoincareSeries) -> Result<Option<u32>, SeriesError> {
    a.check(b)?;
    Ok(a.coefficients
        .iter()
        .zip(&b.coefficients)
        .position(|(x, y)| x > y)
        .map(|n| n as u32))
}

/// First degree where `H^*(K(Z/2,k))` outgrows the free algebra on
/// `bound_degrees`, an upper bound for any algebra with generators in those
/// degrees.
pub fn fg_bound_crossing(
    k: u32,
    bound_degrees: &[u32],
    truncation: u32,
) -> Result<Option<u32>, SeriesError> {
    crossing_degree(
        &em_series(k, truncation),
        &poly_series(bound_degrees, truncation)?,
    )
}
