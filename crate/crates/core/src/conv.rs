//! Finite free convolutions and the even-part identities.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::hypergeom::hgp;
use crate::numeric::{
    convolve, factorial, falling_factorial, from_usize, rat, rising_factorial, FactorialTable,
    Rational,
};
use crate::poly::MonicPoly;

fn same_degree(p: &MonicPoly, q: &MonicPoly) -> Result<usize> {
    if p.degree() != q.degree() {
        return Err(Error::DegreeMismatch(p.degree(), q.degree()));
    }
    Ok(p.degree())
}

/// Weighted additive convolution: e_k = w_k sum_{i+j=k} e_i(p) e_j(q) / (w_i w_j).
fn weighted_boxplus(p: &MonicPoly, q: &MonicPoly, w: &[Rational]) -> MonicPoly {
    let n = p.degree();
    let u: Vec<Rational> = (0..=n).map(|i| p.e(i) / &w[i]).collect();
    let v: Vec<Rational> = (0..=n).map(|i| q.e(i) / &w[i]).collect();
    let c = convolve(&u, &v, n + 1);
    let e = c.into_iter().zip(w).map(|(x, wk)| x * wk).collect();
    MonicPoly::new(e).expect("e_0 stays 1")
}

/// p ⊞_n q.
pub fn boxplus(p: &MonicPoly, q: &MonicPoly) -> Result<MonicPoly> {
    let n = same_degree(p, q)?;
    let t = FactorialTable::new(n);
    let w: Vec<Rational> = t.falling.into_iter().map(Rational::from_integer).collect();
    Ok(weighted_boxplus(p, q, &w))
}

/// p ⊠_n q.
pub fn boxtimes(p: &MonicPoly, q: &MonicPoly) -> Result<MonicPoly> {
    let n = same_degree(p, q)?;
    let t = FactorialTable::new(n);
    let e = (0..=n)
        .map(|k| p.e(k) * q.e(k) / Rational::from_integer(t.binomial[k].clone()))
        .collect();
    Ok(MonicPoly::new(e).expect("e_0 stays 1"))
}

/// The r with h ⊠_n r = p.
pub fn boxtimes_divide(p: &MonicPoly, h: &MonicPoly) -> Result<MonicPoly> {
    let n = same_degree(p, h)?;
    let t = FactorialTable::new(n);
    let mut e = Vec::with_capacity(n + 1);
    for k in 0..=n {
        if h.e(k).is_zero() {
            return Err(Error::ZeroCoefficientDivisor(k));
        }
        e.push(Rational::from_integer(t.binomial[k].clone()) * p.e(k) / h.e(k));
    }
    Ok(MonicPoly::new(e).expect("e_0 stays 1"))
}

/// Rejects alpha in {-1, ..., -m}.
pub fn check_alpha(alpha: &Rational, m: usize) -> Result<()> {
    if alpha.is_integer() {
        let a = alpha.to_integer();
        if a < BigInt::zero() && a >= BigInt::from(-(m as i64)) {
            return Err(Error::ForbiddenAlpha(alpha.to_string(), m));
        }
    }
    Ok(())
}

/// p ⊞_m^α q.
pub fn rect_boxplus(p: &MonicPoly, q: &MonicPoly, alpha: &Rational) -> Result<MonicPoly> {
    let m = same_degree(p, q)?;
    check_alpha(alpha, m)?;
    let ma = from_usize(m) + alpha;
    let w: Vec<Rational> = (0..=m)
        .map(|k| falling_factorial(&from_usize(m), k) * falling_factorial(&ma, k))
        .collect();
    Ok(weighted_boxplus(p, q, &w))
}

/// Sym(p) = p ⊞_n Dil_{-1} p.
pub fn symmetrize(p: &MonicPoly) -> MonicPoly {
    let r = p.dilate_by(&-Rational::one()).expect("nonzero scale");
    boxplus(p, &r).expect("same degree")
}

/// The degree-lm polynomial
/// `sum_k rising(-mb,k)/rising(-ma,k) c^k/k! falling(lm,lk) x^(lm-lk)`.
pub fn from_differential_series(
    c: &Rational,
    l: usize,
    m: usize,
    a: &[Rational],
    b: &[Rational],
) -> Result<MonicPoly> {
    if l == 0 || m == 0 {
        return Err(Error::InvalidParameter("l and m must be positive".into()));
    }
    let n = l * m;
    let mm = from_usize(m);
    let mut e = vec![Rational::zero(); n + 1];
    let mut ck = Rational::one();
    for k in 0..=m {
        let mut t = ck.clone() / Rational::from_integer(factorial(k));
        for bt in b {
            t *= rising_factorial(&(-&mm * bt), k);
        }
        for s in a {
            let d = rising_factorial(&(-&mm * s), k);
            if d.is_zero() {
                return Err(Error::DegenerateParameter(format!(
                    "rising(-{m}*{s}, {k}) vanishes"
                )));
            }
            t /= d;
        }
        t *= falling_factorial(&from_usize(n), l * k);
        e[l * k] = if (l * k).is_multiple_of(2) { t } else { -t };
        ck *= c;
    }
    MonicPoly::new(e)
}

fn halve_kernel(m: usize) -> MonicPoly {
    let mm = from_usize(m);
    let a = rat(-1, 1) / (from_usize(2) * &mm);
    hgp(m, &[a.clone()], &[Rational::one() + a]).expect("1 - 1/(2m) is a valid lower parameter")
}

/// Q_m(p ⊠_{2m} q) = Q_m(p) ⊠_m Q_m(q) ⊠_m H_m[-1/(2m); 1-1/(2m)].
pub fn halve_boxtimes_identity_check(p: &MonicPoly, q: &MonicPoly) -> Result<bool> {
    let n = same_degree(p, q)?;
    if n % 2 == 1 {
        return Err(Error::OddDegree(n));
    }
    let lhs = boxtimes(p, q)?.halve()?;
    let rhs = boxtimes(&boxtimes(&p.halve()?, &q.halve()?)?, &halve_kernel(n / 2))?;
    Ok(lhs == rhs)
}

/// Q_m(p ⊞_{2m} q) = Q_m(p) ⊞_m^{-1/2} Q_m(q) for even p, q.
pub fn halve_boxplus_identity_check(p: &MonicPoly, q: &MonicPoly) -> Result<bool> {
    let n = same_degree(p, q)?;
    for s in [p, q] {
        if let Some(k) = (1..=n).step_by(2).find(|&k| !s.e(k).is_zero()) {
            return Err(Error::NonEvenInput(k));
        }
    }
    if n % 2 == 1 {
        return Err(Error::OddDegree(n));
    }
    let lhs = boxplus(p, q)?.halve()?;
    let rhs = rect_boxplus(&p.halve()?, &q.halve()?, &rat(-1, 2))?;
    Ok(lhs == rhs)
}
