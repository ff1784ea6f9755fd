//! Classical polynomial families expressed through `H_n[b; a]`.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::hypergeom::{hgp, hgp_even, lower_is_valid};
use crate::numeric::{from_usize, parse_rational, Rational};
use crate::poly::{DilationScale, MonicPoly};

fn invalid(msg: String) -> Error {
    Error::InvalidParameter(msg)
}

fn half_degree(n: usize, name: &str) -> Result<usize> {
    if n == 0 || n % 2 == 1 {
        return Err(invalid(format!(
            "{name} needs a positive even degree, got {n}"
        )));
    }
    Ok(n / 2)
}

/// H_n[b; .].
pub fn laguerre(n: usize, b: &Rational) -> Result<MonicPoly> {
    hgp(n, &[b.clone()], &[])
}

/// L_n^(λ) = Dil_{1/n} H_n[λ; .], λ >= 1/2.
pub fn laguerre_scaled(n: usize, lambda: &Rational) -> Result<MonicPoly> {
    if *lambda < Rational::new(1.into(), 2.into()) {
        return Err(invalid(format!(
            "laguerre_scaled needs lambda >= 1/2, got {lambda}"
        )));
    }
    hgp(n, &[lambda.clone()], &[])?.dilate_by(&(Rational::one() / from_usize(n)))
}

/// H_{2m} = Dil_{sqrt(1/m)} H^E_m[1 - 1/(2m); .].
pub fn hermite(n: usize) -> Result<MonicPoly> {
    let m = half_degree(n, "hermite")?;
    let mm = from_usize(m);
    let b = Rational::one() - Rational::one() / (from_usize(2) * &mm);
    hgp_even(m, &[b], &[])?.dilate(&DilationScale::SqrtRational(Rational::one() / mm))
}

/// C_n^(a) = Dil_{-n} H_n[.; a], a < 0.
pub fn bessel(n: usize, a: &Rational) -> Result<MonicPoly> {
    if !a.is_negative() {
        return Err(invalid(format!("bessel needs a < 0, got {a}")));
    }
    hgp(n, &[], &[a.clone()])?.dilate_by(&-from_usize(n))
}

/// H_n[b; a].
pub fn jacobi(n: usize, a: &Rational, b: &Rational) -> Result<MonicPoly> {
    hgp(n, &[b.clone()], &[a.clone()])
}

/// R_n^(r) = (x-1)^r x^(n-r).
pub fn projection(n: usize, r: usize) -> Result<MonicPoly> {
    if n == 0 || r > n {
        return Err(invalid(format!(
            "projection needs 0 <= r <= n, n >= 1; got n={n}, r={r}"
        )));
    }
    let mut roots = vec![Rational::one(); r];
    roots.resize(n, Rational::zero());
    MonicPoly::from_roots(&roots)
}

/// B_{2m} = (x^2 - 1)^m.
pub fn bernoulli(n: usize) -> Result<MonicPoly> {
    let m = half_degree(n, "bernoulli")?;
    hgp_even(m, &[], &[])
}

/// Builds a family by name from string parameters (degree first).
///
/// Names: laguerre n,b; laguerre-scaled n,λ; hermite n; bessel n,a;
/// jacobi n,a,b; projection n,r; bernoulli n.
pub fn family(name: &str, params: &[&str]) -> Result<MonicPoly> {
    let want = |k: usize| {
        if params.len() != k {
            Err(invalid(format!(
                "{name} takes {k} parameter(s), got {}",
                params.len()
            )))
        } else {
            Ok(())
        }
    };
    let nat = |s: &str| -> Result<usize> {
        s.trim()
            .parse()
            .map_err(|_| invalid(format!("not a natural number: {s:?}")))
    };
    match name.replace('_', "-").as_str() {
        "laguerre" => {
            want(2)?;
            laguerre(nat(params[0])?, &parse_rational(params[1])?)
        }
        "laguerre-scaled" => {
            want(2)?;
            laguerre_scaled(nat(params[0])?, &parse_rational(params[1])?)
        }
        "hermite" => {
            want(1)?;
            hermite(nat(params[0])?)
        }
        "bessel" => {
            want(2)?;
            bessel(nat(params[0])?, &parse_rational(params[1])?)
        }
        "jacobi" => {
            want(3)?;
            jacobi(
                nat(params[0])?,
                &parse_rational(params[1])?,
                &parse_rational(params[2])?,
            )
        }
        "projection" => {
            want(2)?;
            projection(nat(params[0])?, nat(params[1])?)
        }
        "bernoulli" => {
            want(1)?;
            bernoulli(nat(params[0])?)
        }
        other => Err(invalid(format!("unknown family {other:?}"))),
    }
}

/// Root location known from the parameter windows of the classical families.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RootWindow {
    /// Nonnegative roots with 0 of the given multiplicity.
    NonNegative {
        zero_multiplicity: usize,
    },
    Real,
    Positive,
    Negative,
    /// Roots in [0, 1].
    UnitInterval,
    Unknown,
}

/// Window for H_n[b; .].
pub fn laguerre_window(n: usize, b: &Rational) -> RootWindow {
    let nn = from_usize(n);
    let nb = b * &nn;
    if nb.is_integer() && nb > Rational::zero() && nb < nn {
        let j = nb.to_integer();
        let z: usize = (n as i64 - i64::try_from(j).unwrap_or(0)) as usize;
        return RootWindow::NonNegative {
            zero_multiplicity: z,
        };
    }
    let hi = Rational::one() - Rational::one() / &nn;
    let lo = Rational::one() - from_usize(2) / &nn;
    if *b > hi {
        RootWindow::Positive
    } else if *b > lo && *b < hi {
        RootWindow::Real
    } else {
        RootWindow::Unknown
    }
}

/// Window for H_n[.; a].
pub fn bessel_window(n: usize, a: &Rational) -> RootWindow {
    if a.is_negative() {
        RootWindow::Negative
    } else if a.is_positive() && *a < Rational::one() / from_usize(n) {
        RootWindow::Real
    } else {
        RootWindow::Unknown
    }
}

/// Window for H_n[b; a].
pub fn jacobi_window(n: usize, a: &Rational, b: &Rational) -> RootWindow {
    if !lower_is_valid(a, n) {
        return RootWindow::Unknown;
    }
    let t = Rational::one() - Rational::one() / from_usize(n);
    if *b > t && *a > b + &t {
        RootWindow::UnitInterval
    } else if *b > t && a.is_negative() {
        RootWindow::Negative
    } else if a.is_negative() && *b < a - &t {
        RootWindow::Positive
    } else {
        RootWindow::Unknown
    }
}
