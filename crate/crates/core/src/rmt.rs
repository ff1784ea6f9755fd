//! Monte-Carlo estimates of expected characteristic polynomials of
//! A + UBU*, AUBU* and i(AUBU* - UBU*A) over Haar unitaries U.

use std::fmt;
use std::str::FromStr;

use nalgebra::{DMatrix, Schur, SymmetricEigen};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numeric::rational_to_f64;
use crate::poly::MonicPoly;

pub const DEFAULT_Z_THRESHOLD: f64 = 4.0;
const CHUNK: usize = 1024;
/// Floor on the standard error when scoring, for coefficients that are
/// deterministic (e.g. traces of a sum).
const STDERR_FLOOR: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Word {
    Sum,
    Product,
    Commutator,
}

impl FromStr for Word {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sum" => Ok(Word::Sum),
            "product" => Ok(Word::Product),
            "commutator" => Ok(Word::Commutator),
            _ => Err(Error::Parse(format!(
                "unknown word {s:?} (sum, product, commutator)"
            ))),
        }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Word::Sum => "sum",
            Word::Product => "product",
            Word::Commutator => "commutator",
        })
    }
}

/// Ginibre matrix, QR, then the phases of diag(R) moved into Q.
pub fn sample_haar_unitary(n: usize, rng: &mut ChaCha8Rng) -> DMatrix<Complex64> {
    let scale = std::f64::consts::FRAC_1_SQRT_2;
    let g = DMatrix::from_fn(n, n, |_, _| {
        let re: f64 = StandardNormal.sample(rng);
        let im: f64 = StandardNormal.sample(rng);
        Complex64::new(re * scale, im * scale)
    });
    let qr = g.qr();
    let mut q = qr.q();
    let r = qr.r();
    for j in 0..n {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 {
            d / d.norm()
        } else {
            Complex64::new(1.0, 0.0)
        };
        for i in 0..n {
            q[(i, j)] *= phase;
        }
    }
    q
}

/// Mean of e_0..e_n over the trials, with standard errors.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct McEstimate {
    pub word: Word,
    pub degree: usize,
    pub mean_coeffs: Vec<f64>,
    pub stderr: Vec<f64>,
    pub trials: usize,
    pub seed: u64,
}

fn diag(v: &[f64]) -> DMatrix<Complex64> {
    DMatrix::from_fn(v.len(), v.len(), |i, j| {
        if i == j {
            Complex64::new(v[i], 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    })
}

/// e_0..e_n of the multiset of eigenvalues.
fn elementary(eigs: &[Complex64]) -> Vec<Complex64> {
    let mut e = vec![Complex64::new(0.0, 0.0); eigs.len() + 1];
    e[0] = Complex64::new(1.0, 0.0);
    for (i, l) in eigs.iter().enumerate() {
        for k in (1..=i + 1).rev() {
            let prev = e[k - 1];
            e[k] += prev * l;
        }
    }
    e
}

fn hermitian_eigs(m: DMatrix<Complex64>) -> Vec<Complex64> {
    SymmetricEigen::new(m)
        .eigenvalues
        .iter()
        .map(|&x| Complex64::new(x, 0.0))
        .collect()
}

fn trial_coeffs(
    a: &DMatrix<Complex64>,
    b: &DMatrix<Complex64>,
    word: Word,
    rng: &mut ChaCha8Rng,
) -> Vec<f64> {
    let n = a.nrows();
    let u = sample_haar_unitary(n, rng);
    let bu = &u * b * u.adjoint();
    let eigs = match word {
        Word::Sum => hermitian_eigs(a + &bu),
        Word::Product => Schur::new(a * &bu)
            .unpack()
            .1
            .diagonal()
            .iter()
            .copied()
            .collect(),
        Word::Commutator => {
            let c = (a * &bu - &bu * a) * Complex64::new(0.0, 1.0);
            // symmetrize away rounding so the eigensolver sees an exactly Hermitian input
            hermitian_eigs((&c + c.adjoint()) * Complex64::new(0.5, 0.0))
        }
    };
    elementary(&eigs).iter().map(|z| z.re).collect()
}

/// Averages the e_k of the requested word over `trials` Haar samples. Trial t
/// draws from ChaCha8 stream t of `seed`, so results do not depend on threading.
pub fn mc_expected_charpoly(
    a_roots: &[f64],
    b_roots: &[f64],
    word: Word,
    trials: usize,
    seed: u64,
) -> Result<McEstimate> {
    if a_roots.len() != b_roots.len() {
        return Err(Error::LengthMismatch(a_roots.len(), b_roots.len()));
    }
    if a_roots.is_empty() {
        return Err(Error::EmptyRoots);
    }
    if trials == 0 {
        return Err(Error::ZeroTrials);
    }
    let n = a_roots.len();
    let (a, b) = (diag(a_roots), diag(b_roots));
    let chunks: Vec<(Vec<f64>, Vec<f64>)> = (0..trials.div_ceil(CHUNK))
        .into_par_iter()
        .map(|c| {
            let mut s = vec![0.0; n + 1];
            let mut s2 = vec![0.0; n + 1];
            for t in c * CHUNK..((c + 1) * CHUNK).min(trials) {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(t as u64);
                for (k, x) in trial_coeffs(&a, &b, word, &mut rng).into_iter().enumerate() {
                    s[k] += x;
                    s2[k] += x * x;
                }
            }
            (s, s2)
        })
        .collect();
    let mut s = vec![0.0; n + 1];
    let mut s2 = vec![0.0; n + 1];
    for (cs, cs2) in &chunks {
        for k in 0..=n {
            s[k] += cs[k];
            s2[k] += cs2[k];
        }
    }
    let t = trials as f64;
    let mean: Vec<f64> = s.iter().map(|x| x / t).collect();
    let stderr = (0..=n)
        .map(|k| {
            if trials < 2 {
                return 0.0;
            }
            let var = ((s2[k] - t * mean[k] * mean[k]) / (t - 1.0)).max(0.0);
            (var / t).sqrt()
        })
        .collect();
    Ok(McEstimate {
        word,
        degree: n,
        mean_coeffs: mean,
        stderr,
        trials,
        seed,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct CoeffScore {
    pub k: usize,
    pub mean: f64,
    pub stderr: f64,
    pub exact: f64,
    pub z: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct McReport {
    pub word: Word,
    pub trials: usize,
    pub seed: u64,
    pub coeffs: Vec<CoeffScore>,
    pub z_threshold: f64,
    pub pass: bool,
}

impl McReport {
    pub fn max_z(&self) -> f64 {
        self.coeffs.iter().map(|c| c.z).fold(0.0, f64::max)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }
}

/// Per-coefficient z-scores |mean - exact| / stderr.
pub fn mc_compare(est: &McEstimate, exact: &MonicPoly, z_threshold: f64) -> Result<McReport> {
    if est.trials == 0 {
        return Err(Error::ZeroTrials);
    }
    if est.degree != exact.degree() {
        return Err(Error::DegreeMismatch(est.degree, exact.degree()));
    }
    let coeffs: Vec<CoeffScore> = (0..=est.degree)
        .map(|k| {
            let ex = rational_to_f64(exact.e(k));
            let mean = est.mean_coeffs[k];
            let se = est.stderr[k];
            CoeffScore {
                k,
                mean,
                stderr: se,
                exact: ex,
                z: (mean - ex).abs() / se.max(STDERR_FLOOR),
            }
        })
        .collect();
    let pass = coeffs.iter().all(|c| c.z <= z_threshold);
    Ok(McReport {
        word: est.word,
        trials: est.trials,
        seed: est.seed,
        coeffs,
        z_threshold,
        pass,
    })
}
