//! Hypergeometric polynomials `H_n[b; a]`, their even doubles and the `z_n` kernel.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::{
    factorial, falling_factorial, falling_int, from_usize, parse_rational, FactorialTable, Rational,
};
use crate::poly::{DilationScale, MonicPoly};

/// Degree together with upper (b) and lower (a) parameter tuples.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "SpecJson", into = "SpecJson")]
pub struct HgpSpec {
    pub degree: usize,
    pub upper: Vec<Rational>,
    pub lower: Vec<Rational>,
}

#[derive(Serialize, Deserialize)]
struct SpecJson {
    degree: usize,
    upper: Vec<String>,
    lower: Vec<String>,
}

impl TryFrom<SpecJson> for HgpSpec {
    type Error = Error;

    fn try_from(j: SpecJson) -> Result<Self> {
        let parse = |v: &[String]| {
            v.iter()
                .map(|s| parse_rational(s))
                .collect::<Result<Vec<_>>>()
        };
        Ok(HgpSpec {
            degree: j.degree,
            upper: parse(&j.upper)?,
            lower: parse(&j.lower)?,
        })
    }
}

impl From<HgpSpec> for SpecJson {
    fn from(s: HgpSpec) -> Self {
        let show = |v: &[Rational]| v.iter().map(|r| r.to_string()).collect();
        SpecJson {
            degree: s.degree,
            upper: show(&s.upper),
            lower: show(&s.lower),
        }
    }
}

impl HgpSpec {
    pub fn new(degree: usize, upper: &[Rational], lower: &[Rational]) -> Self {
        HgpSpec {
            degree,
            upper: upper.to_vec(),
            lower: lower.to_vec(),
        }
    }

    pub fn build(&self) -> Result<MonicPoly> {
        hgp(self.degree, &self.upper, &self.lower)
    }
}

/// True when `a` avoids {0, 1/n, ..., (n-1)/n}.
pub fn lower_is_valid(a: &Rational, n: usize) -> bool {
    let na = a * from_usize(n);
    !(na.is_integer() && na >= Rational::zero() && na < from_usize(n))
}

pub fn validate_lower(lower: &[Rational], n: usize) -> Result<()> {
    match lower.iter().find(|a| !lower_is_valid(a, n)) {
        Some(a) => Err(Error::InvalidLowerParameter {
            value: a.to_string(),
            degree: n,
        }),
        None => Ok(()),
    }
}

/// H_n[b; a]: e_k = binom(n,k) prod falling(n b_t, k) / prod falling(n a_s, k).
pub fn hgp(n: usize, upper: &[Rational], lower: &[Rational]) -> Result<MonicPoly> {
    if n == 0 {
        return Err(Error::InvalidParameter("degree must be at least 1".into()));
    }
    validate_lower(lower, n)?;
    let nn = from_usize(n);
    let t = FactorialTable::new(n);
    let up: Vec<Rational> = upper.iter().map(|b| b * &nn).collect();
    let lo: Vec<Rational> = lower.iter().map(|a| a * &nn).collect();
    let mut num = vec![Rational::one(); up.len()];
    let mut den = vec![Rational::one(); lo.len()];
    let mut e = Vec::with_capacity(n + 1);
    for k in 0..=n {
        if k > 0 {
            for (acc, b) in num.iter_mut().zip(&up) {
                *acc *= b - from_usize(k - 1);
            }
            for (acc, a) in den.iter_mut().zip(&lo) {
                *acc *= a - from_usize(k - 1);
            }
        }
        let mut c = Rational::from_integer(t.binomial[k].clone());
        for x in &num {
            c *= x;
        }
        for x in &den {
            c /= x;
        }
        e.push(c);
    }
    MonicPoly::new(e)
}

/// H^E_m[b; a] = S_m(H_m[b; a]).
pub fn hgp_even(m: usize, upper: &[Rational], lower: &[Rational]) -> Result<MonicPoly> {
    Ok(hgp(m, upper, lower)?.double())
}

/// Concatenates the tuples of two specs of equal degree.
pub fn boxtimes_hgp_merge(s1: &HgpSpec, s2: &HgpSpec) -> Result<HgpSpec> {
    if s1.degree != s2.degree {
        return Err(Error::DegreeMismatch(s1.degree, s2.degree));
    }
    let mut upper = s1.upper.clone();
    upper.extend(s2.upper.iter().cloned());
    let mut lower = s1.lower.clone();
    lower.extend(s2.lower.iter().cloned());
    Ok(HgpSpec {
        degree: s1.degree,
        upper,
        lower,
    })
}

/// The even kernel z_n with coefficient of x^(n-2k) equal to
/// `(-1)^k binom(n,2k) falling(n,k) k!/(2k)! (n+1-k)/(n+1)`.
pub fn z_kernel(n: usize) -> Result<MonicPoly> {
    if n == 0 {
        return Err(Error::InvalidParameter("degree must be at least 1".into()));
    }
    let t = FactorialTable::new(n);
    let mut e = vec![Rational::zero(); n + 1];
    for k in 0..=n / 2 {
        let num: BigInt =
            &t.binomial[2 * k] * falling_int(n, k) * factorial(k) * BigInt::from(n + 1 - k);
        let den: BigInt = factorial(2 * k) * BigInt::from(n + 1);
        let c = Rational::new(num, den);
        e[2 * k] = if k % 2 == 0 { c } else { -c };
    }
    MonicPoly::new(e)
}

/// Closed form of z_{2m} as a dilated even hypergeometric polynomial.
pub fn z_kernel_closed_form(m: usize) -> Result<MonicPoly> {
    let mm = from_usize(m);
    let h = Rational::one() / (from_usize(2) * &mm);
    let two = from_usize(2);
    let upper = [two.clone(), two.clone(), Rational::one() - &h];
    let lower = [-h.clone(), -h, two + Rational::one() / mm];
    hgp_even(m, &upper, &lower)?.dilate(&DilationScale::Rational(Rational::new(1.into(), 2.into())))
}

/// H_n[b; b + r/n] = (x-1)^(n-r) H_r[(n/r)(b-1)+1; (n/r)b+1].
pub fn zeros_on_one_factorization_check(n: usize, r: usize, b: &Rational) -> Result<bool> {
    if r > n || n == 0 {
        return Err(Error::InvalidParameter(format!(
            "need 0 <= r <= n, n >= 1; got n={n}, r={r}"
        )));
    }
    let nn = from_usize(n);
    let lhs = hgp(n, &[b.clone()], &[b + from_usize(r) / &nn])?;
    let ones = MonicPoly::point(&Rational::one(), n.max(1));
    if r == 0 {
        return Ok(lhs == ones);
    }
    let ratio = nn / from_usize(r);
    let right = hgp(
        r,
        &[&ratio * (b - Rational::one()) + Rational::one()],
        &[&ratio * b + Rational::one()],
    )?;
    let rhs = if r == n {
        right
    } else {
        MonicPoly::point(&Rational::one(), n - r).mul(&right)
    };
    Ok(lhs == rhs)
}

/// e_k of H_n[b; a] through falling factorials directly, used as a cross-check.
pub fn hgp_coefficient(n: usize, k: usize, upper: &[Rational], lower: &[Rational]) -> Rational {
    let nn = from_usize(n);
    let mut c = Rational::from_integer(crate::numeric::binomial(n, k));
    for b in upper {
        c *= falling_factorial(&(b * &nn), k);
    }
    for a in lower {
        c /= falling_factorial(&(a * &nn), k);
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conv::boxtimes;
    use crate::numeric::{int, rat};
    use proptest::prelude::*;

    fn p(e: &[Rational]) -> MonicPoly {
        MonicPoly::new(e.to_vec()).unwrap()
    }

    #[test]
    fn hgp_examples() {
        assert_eq!(
            hgp(2, &[int(1)], &[]).unwrap(),
            p(&[int(1), int(4), int(2)])
        );
        let a = rat(7, 3);
        assert_eq!(
            hgp(5, &[a.clone()], &[a.clone()]).unwrap(),
            MonicPoly::point(&int(1), 5)
        );
        assert_eq!(hgp(5, &[int(0)], &[a]).unwrap(), MonicPoly::x_pow(5));
        assert_eq!(
            hgp(2, &[], &[int(-1)]).unwrap(),
            p(&[int(1), int(-1), rat(1, 6)])
        );
        assert!(matches!(
            hgp(4, &[], &[rat(1, 2)]),
            Err(Error::InvalidLowerParameter { .. })
        ));
        assert!(hgp(4, &[], &[rat(1, 3)]).is_ok());
    }

    #[test]
    fn hgp_even_examples() {
        assert_eq!(
            hgp_even(1, &[rat(1, 2)], &[]).unwrap(),
            p(&[int(1), int(0), rat(-1, 2)])
        );
        for m in 1..5 {
            let b = MonicPoly::from_roots(&[vec![int(1); m], vec![int(-1); m]].concat()).unwrap();
            assert_eq!(hgp_even(m, &[], &[]).unwrap(), b);
        }
        assert_eq!(
            hgp_even(1, &[int(1), int(1)], &[rat(1, 2), int(3)]).unwrap(),
            p(&[int(1), int(0), rat(-2, 3)])
        );
    }

    #[test]
    fn z_kernel_examples() {
        assert_eq!(z_kernel(2).unwrap(), p(&[int(1), int(0), rat(-2, 3)]));
        for m in 1..=6 {
            assert_eq!(
                z_kernel(2 * m).unwrap(),
                z_kernel_closed_form(m).unwrap(),
                "m = {m}"
            );
        }
        assert!(z_kernel(5).unwrap().is_even());
    }

    #[test]
    fn merge_examples() {
        let s = HgpSpec::new(2, &[int(1)], &[]);
        let merged = boxtimes_hgp_merge(&s, &s).unwrap();
        assert_eq!(merged, HgpSpec::new(2, &[int(1), int(1)], &[]));
        assert_eq!(
            merged.build().unwrap(),
            boxtimes(&s.build().unwrap(), &s.build().unwrap()).unwrap()
        );
        let id = HgpSpec::new(2, &[rat(3, 5)], &[rat(3, 5)]);
        assert_eq!(
            boxtimes_hgp_merge(&s, &id).unwrap().build().unwrap(),
            s.build().unwrap()
        );
        assert!(boxtimes_hgp_merge(&s, &HgpSpec::new(3, &[], &[])).is_err());
    }

    #[test]
    fn factorization_examples() {
        assert!(zeros_on_one_factorization_check(3, 3, &rat(5, 2)).unwrap());
        assert!(zeros_on_one_factorization_check(2, 1, &int(2)).unwrap());
        assert!(zeros_on_one_factorization_check(4, 2, &rat(3, 2)).unwrap());
        assert!(zeros_on_one_factorization_check(4, 0, &rat(3, 2)).unwrap());
    }

    #[test]
    fn spec_json() {
        let s: HgpSpec = serde_json::from_str(r#"{"degree":2,"upper":["1"],"lower":[]}"#).unwrap();
        assert_eq!(s, HgpSpec::new(2, &[int(1)], &[]));
        assert_eq!(
            serde_json::to_string(&s).unwrap(),
            r#"{"degree":2,"upper":["1"],"lower":[]}"#
        );
    }

    fn small_rat() -> impl Strategy<Value = Rational> {
        (-20i64..20, 1i64..7).prop_map(|(n, d)| rat(n, d))
    }

    fn tuple() -> impl Strategy<Value = Vec<Rational>> {
        proptest::collection::vec(small_rat(), 0..3)
    }

    proptest! {
        #[test]
        fn coefficients_match_falling_form(n in 1usize..9, b in tuple(), a in tuple()) {
            prop_assume!(a.iter().all(|x| lower_is_valid(x, n)));
            let h = hgp(n, &b, &a).unwrap();
            for k in 0..=n {
                prop_assert_eq!(h.e(k), &hgp_coefficient(n, k, &b, &a));
            }
        }

        #[test]
        fn merge_law(n in 1usize..11, b1 in tuple(), a1 in tuple(), b2 in tuple(), a2 in tuple()) {
            prop_assume!(a1.iter().chain(&a2).all(|x| lower_is_valid(x, n)));
            let s1 = HgpSpec::new(n, &b1, &a1);
            let s2 = HgpSpec::new(n, &b2, &a2);
            let lhs = boxtimes_hgp_merge(&s1, &s2).unwrap().build().unwrap();
            prop_assert_eq!(lhs, boxtimes(&s1.build().unwrap(), &s2.build().unwrap()).unwrap());
        }

        #[test]
        fn even_merge(m in 1usize..7, b1 in tuple(), a1 in tuple(), b2 in tuple(), a2 in tuple()) {
            prop_assume!(a1.iter().chain(&a2).all(|x| lower_is_valid(x, m)));
            let lhs = boxtimes(&hgp_even(m, &b1, &a1).unwrap(), &hgp_even(m, &b2, &a2).unwrap()).unwrap();
            let mm = from_usize(m);
            let h = Rational::one() / (from_usize(2) * &mm);
            let upper = [vec![-h.clone()], b1, b2].concat();
            let lower = [vec![Rational::one() - h], a1, a2].concat();
            prop_assert_eq!(lhs, hgp_even(m, &upper, &lower).unwrap());
        }

        #[test]
        fn identities_and_cancellation(n in 1usize..13, a in small_rat(), b in small_rat(), c in small_rat()) {
            prop_assume!(lower_is_valid(&a, n) && lower_is_valid(&c, n));
            prop_assert_eq!(hgp(n, &[a.clone()], &[a.clone()]).unwrap(), MonicPoly::point(&int(1), n));
            prop_assert_eq!(hgp(n, &[int(0)], &[a.clone()]).unwrap(), MonicPoly::x_pow(n));
            prop_assert_eq!(
                hgp(n, &[b.clone(), c.clone()], &[a.clone(), c]).unwrap(),
                hgp(n, &[b], &[a]).unwrap()
            );
        }

        #[test]
        fn zeros_on_one(n in 1usize..9, r in 0usize..9, b in small_rat()) {
            prop_assume!(r <= n);
            let nn = from_usize(n);
            prop_assume!(lower_is_valid(&(&b + from_usize(r) / &nn), n));
            prop_assume!(r == 0 || lower_is_valid(&(&nn / from_usize(r) * &b + Rational::one()), r));
            prop_assert!(zeros_on_one_factorization_check(n, r, &b).unwrap());
        }
    }
}
