//! Least-squares extraction of expansion coefficients from a ladder of
//! certified samples `E(u p^j)`.

use super::oscillatory::ZValue;
use super::{psi, CertifiedComplex};
use crate::exactalg::scalar::Rational;
use crate::Error;
use num_complex::Complex64;
use serde::Serialize;
use std::collections::BTreeMap;

#[derive(Clone, Copy, Debug, Serialize)]
pub struct Sample {
    pub z: ZValueRow,
    pub value: CertifiedComplex,
}

/// `z = unit · p^val`, serializable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ZValueRow {
    pub val: i64,
    pub unit: i64,
}

impl From<ZValue> for ZValueRow {
    fn from(z: ZValue) -> Self {
        ZValueRow { val: z.val, unit: z.unit }
    }
}

impl Sample {
    pub fn new(z: ZValue, value: CertifiedComplex) -> Self {
        Sample { z: z.into(), value }
    }
}

/// A term `Ψ(c z) |z|^γ (ln|z|)^{m−1}`, times `(−1)^{ord z}` if `twist`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PredictedTerm {
    #[serde(serialize_with = "ser_rat")]
    pub c: Rational,
    #[serde(serialize_with = "ser_rat")]
    pub gamma: Rational,
    pub m: u32,
    pub twist: bool,
}

fn ser_rat<S: serde::Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&crate::exactalg::scalar::fmt_rat(r))
}

impl PredictedTerm {
    pub fn new(c: Rational, gamma: Rational, m: u32, twist: bool) -> Self {
        PredictedTerm { c, gamma, m, twist }
    }

    /// Value of the basis function at `z`.
    pub fn basis(&self, z: ZValueRow, p: u64) -> Complex64 {
        let zr = ZValue::new(z.val, z.unit).to_rational(p);
        let ph = psi(&(&self.c * zr), p);
        let lnz = -(z.val as f64) * (p as f64).ln();
        let mag = (-(z.val as f64) * crate::exactalg::scalar::rat_to_f64(&self.gamma) * (p as f64).ln()).exp();
        let lg = if self.m > 1 { lnz.powi(self.m as i32 - 1) } else { 1.0 };
        let sign = if self.twist && z.val.rem_euclid(2) == 1 { -1.0 } else { 1.0 };
        ph * mag * lg * sign
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FittedTerm {
    pub term: PredictedTerm,
    /// `u mod p^conductor`.
    pub uclass: i64,
    pub re: f64,
    pub im: f64,
    /// Propagated sample error.
    pub err: f64,
}

impl FittedTerm {
    pub fn abs(&self) -> f64 {
        Complex64::new(self.re, self.im).norm()
    }

    /// Whether the coefficient is distinguishable from zero.
    pub fn significant(&self) -> bool {
        self.abs() > self.err
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FitReport {
    pub p: u64,
    pub conductor: u32,
    pub terms: Vec<FittedTerm>,
    /// Largest `|E − fit|` over the samples.
    pub residual: f64,
    /// Largest sample error radius.
    pub sample_err: f64,
}

impl FitReport {
    /// Whether every residual is explained by the sample and coefficient
    /// errors.
    pub fn consistent(&self) -> bool {
        self.residual <= self.sample_err * (1.0 + self.terms.len() as f64) + self.terms.iter().map(|t| t.err).fold(0.0, f64::max) * 4.0 + 1e-12
    }

    /// Terms with the given `(c, γ)`.
    pub fn of<'a>(&'a self, c: &'a Rational, gamma: &'a Rational) -> impl Iterator<Item = &'a FittedTerm> + 'a {
        self.terms.iter().filter(move |t| &t.term.c == c && &t.term.gamma == gamma)
    }
}

fn class_of(u: i64, p: u64, e: u32) -> i64 {
    u.rem_euclid((p as i64).pow(e))
}

/// Smallest `e ≤ max` such that samples with equal `val` and equal
/// `u mod p^e` agree within their errors. Empirical only.
pub fn conductor_estimate(samples: &[Sample], p: u64, max: u32) -> u32 {
    for e in 1..max {
        let mut ok = true;
        let mut seen: BTreeMap<(i64, i64), CertifiedComplex> = BTreeMap::new();
        for s in samples {
            let key = (s.z.val, class_of(s.z.unit, p, e));
            if let Some(o) = seen.get(&key) {
                if o.distance(s.value.value()) > o.err + s.value.err + 1e-12 {
                    ok = false;
                    break;
                }
            } else {
                seen.insert(key, s.value);
            }
        }
        if ok {
            return e;
        }
    }
    max
}

/// Pseudo-inverse of a tall complex matrix by modified Gram–Schmidt with one
/// reorthogonalisation pass. `None` when the columns are numerically
/// dependent.
fn pseudo_inverse(a: &[Vec<Complex64>]) -> Option<Vec<Vec<Complex64>>> {
    let rows = a.len();
    let cols = a[0].len();
    // column scaling
    let scale: Vec<f64> = (0..cols).map(|j| (0..rows).map(|i| a[i][j].norm()).fold(0.0, f64::max)).collect();
    if scale.iter().any(|&s| s == 0.0) {
        return None;
    }
    let mut q: Vec<Vec<Complex64>> = (0..cols).map(|j| (0..rows).map(|i| a[i][j] / scale[j]).collect()).collect();
    let mut r = vec![vec![Complex64::new(0.0, 0.0); cols]; cols];
    for j in 0..cols {
        let before: f64 = q[j].iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        for _ in 0..2 {
            for k in 0..j {
                let dot: Complex64 = (0..rows).map(|i| q[k][i].conj() * q[j][i]).sum();
                r[k][j] += dot;
                for i in 0..rows {
                    let qk = q[k][i];
                    q[j][i] -= dot * qk;
                }
            }
        }
        let nrm: f64 = q[j].iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        if nrm <= 1e-10 * before.max(1.0) {
            return None;
        }
        r[j][j] = Complex64::new(nrm, 0.0);
        for x in q[j].iter_mut() {
            *x /= nrm;
        }
    }
    // P = S^{-1} R^{-1} Q*
    let mut p = vec![vec![Complex64::new(0.0, 0.0); rows]; cols];
    for i in 0..rows {
        // back substitution for column i of Q*
        let mut x = vec![Complex64::new(0.0, 0.0); cols];
        for j in (0..cols).rev() {
            let mut s = q[j][i].conj();
            for k in j + 1..cols {
                s -= r[j][k] * x[k];
            }
            x[j] = s / r[j][j];
        }
        for j in 0..cols {
            p[j][i] = x[j] / scale[j];
        }
    }
    Some(p)
}

/// Fits the predicted terms separately on every class `u mod p^conductor`.
/// Coefficient errors are the sample errors propagated through the
/// pseudo-inverse (with a relative floating-point allowance).
pub fn expansion_fit(samples: &[Sample], predicted: &[PredictedTerm], p: u64, conductor: u32) -> Result<FitReport, Error> {
    if predicted.is_empty() {
        return Err(Error::Invalid("no predicted terms".into()));
    }
    let mut classes: BTreeMap<i64, Vec<&Sample>> = BTreeMap::new();
    for s in samples {
        classes.entry(class_of(s.z.unit, p, conductor)).or_default().push(s);
    }
    let mut terms = Vec::new();
    let mut residual: f64 = 0.0;
    let mut sample_err: f64 = 0.0;
    for (uc, ss) in &classes {
        if ss.len() < predicted.len() {
            return Err(Error::IllConditioned(format!(
                "class {} has {} samples for {} predicted terms",
                uc,
                ss.len(),
                predicted.len()
            )));
        }
        let a: Vec<Vec<Complex64>> = ss.iter().map(|s| predicted.iter().map(|t| t.basis(s.z, p)).collect()).collect();
        let pinv = pseudo_inverse(&a).ok_or_else(|| Error::IllConditioned(format!("ladder for class {} does not separate the predicted terms", uc)))?;
        let b: Vec<Complex64> = ss.iter().map(|s| s.value.value()).collect();
        let x: Vec<Complex64> = pinv.iter().map(|row| row.iter().zip(&b).map(|(pi, bi)| pi * bi).sum()).collect();
        for (k, t) in predicted.iter().enumerate() {
            let prop: f64 = pinv[k].iter().zip(ss).map(|(pi, s)| pi.norm() * s.value.err).sum();
            let fl: f64 = pinv[k].iter().zip(&b).map(|(pi, bi)| pi.norm() * bi.norm()).sum::<f64>() * 1e-13;
            terms.push(FittedTerm { term: t.clone(), uclass: *uc, re: x[k].re, im: x[k].im, err: prop + fl });
        }
        for (row, s) in a.iter().zip(ss) {
            let fitv: Complex64 = row.iter().zip(&x).map(|(ai, xi)| ai * xi).sum();
            residual = residual.max((fitv - s.value.value()).norm());
            sample_err = sample_err.max(s.value.err);
        }
    }
    Ok(FitReport { p, conductor, terms, residual, sample_err })
}
