//! Monic polynomials in the signed elementary-symmetric basis
//! `p(x) = sum_k x^(n-k) (-1)^k e_k`.

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::{from_usize, parse_rational, Rational};

/// Monic polynomial of degree n >= 1 stored as (e_0, ..., e_n) with e_0 = 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "PolyJson", into = "PolyJson")]
pub struct MonicPoly {
    e: Vec<Rational>,
}

#[derive(Serialize, Deserialize)]
struct PolyJson {
    degree: usize,
    coeffs_e: Vec<String>,
}

impl TryFrom<PolyJson> for MonicPoly {
    type Error = Error;

    fn try_from(j: PolyJson) -> Result<Self> {
        if j.coeffs_e.len() != j.degree + 1 {
            return Err(Error::LengthMismatch(j.coeffs_e.len(), j.degree + 1));
        }
        let e = j
            .coeffs_e
            .iter()
            .map(|s| parse_rational(s))
            .collect::<Result<Vec<_>>>()?;
        MonicPoly::new(e)
    }
}

impl From<MonicPoly> for PolyJson {
    fn from(p: MonicPoly) -> Self {
        PolyJson {
            degree: p.degree(),
            coeffs_e: p.e.iter().map(|c| c.to_string()).collect(),
        }
    }
}

/// Scale of a dilation `Dil_alpha`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DilationScale {
    /// alpha = r.
    Rational(Rational),
    /// alpha = sqrt(r), r > 0; even polynomials only.
    SqrtRational(Rational),
    /// alpha = i r; even polynomials only.
    ImaginaryRational(Rational),
}

impl MonicPoly {
    pub fn new(e: Vec<Rational>) -> Result<Self> {
        if e.len() < 2 {
            return Err(Error::InvalidParameter("degree must be at least 1".into()));
        }
        if !e[0].is_one() {
            return Err(Error::InvalidParameter("e_0 must be 1".into()));
        }
        Ok(MonicPoly { e })
    }

    /// x^n.
    pub fn x_pow(n: usize) -> Self {
        let mut e = vec![Rational::zero(); n + 1];
        e[0] = Rational::one();
        MonicPoly { e }
    }

    /// (x - alpha)^n.
    pub fn point(alpha: &Rational, n: usize) -> Self {
        let t = crate::numeric::FactorialTable::new(n);
        let mut pow = Rational::one();
        let e = (0..=n)
            .map(|k| {
                let c = Rational::from_integer(t.binomial[k].clone()) * &pow;
                pow *= alpha;
                c
            })
            .collect();
        MonicPoly { e }
    }

    pub fn from_roots(roots: &[Rational]) -> Result<Self> {
        if roots.is_empty() {
            return Err(Error::EmptyRoots);
        }
        let mut e = vec![Rational::one()];
        for r in roots {
            e.push(Rational::zero());
            for k in (1..e.len()).rev() {
                let add = &e[k - 1] * r;
                e[k] += add;
            }
        }
        Ok(MonicPoly { e })
    }

    pub fn degree(&self) -> usize {
        self.e.len() - 1
    }

    pub fn e(&self, k: usize) -> &Rational {
        &self.e[k]
    }

    pub fn coeffs_e(&self) -> &[Rational] {
        &self.e
    }

    /// Monomial coefficients, lowest power first: c_j multiplies x^j.
    pub fn monomial(&self) -> Vec<Rational> {
        let n = self.degree();
        (0..=n)
            .map(|j| {
                let k = n - j;
                if k.is_multiple_of(2) {
                    self.e[k].clone()
                } else {
                    -self.e[k].clone()
                }
            })
            .collect()
    }

    pub fn is_even(&self) -> bool {
        self.first_odd_nonzero().is_none()
    }

    fn first_odd_nonzero(&self) -> Option<usize> {
        (1..=self.degree())
            .step_by(2)
            .find(|&k| !self.e[k].is_zero())
    }

    pub fn dilate(&self, alpha: &DilationScale) -> Result<Self> {
        let check_even = || match self.first_odd_nonzero() {
            Some(k) => Err(Error::NonEvenInput(k)),
            None => Ok(()),
        };
        let mut e = self.e.clone();
        match alpha {
            DilationScale::Rational(r) => {
                if r.is_zero() {
                    return Err(Error::ZeroScale);
                }
                let mut pow = Rational::one();
                for c in e.iter_mut().skip(1) {
                    pow *= r;
                    *c *= &pow;
                }
            }
            DilationScale::SqrtRational(r) | DilationScale::ImaginaryRational(r) => {
                if r.is_zero() {
                    return Err(Error::ZeroScale);
                }
                check_even()?;
                // factor applied to e_{2k} per k
                let step = match alpha {
                    DilationScale::SqrtRational(r) => {
                        if r.is_negative() {
                            return Err(Error::InvalidParameter(format!(
                                "sqrt dilation needs r > 0, got {r}"
                            )));
                        }
                        r.clone()
                    }
                    _ => -(r * r),
                };
                let mut pow = Rational::one();
                for k in (2..e.len()).step_by(2) {
                    pow *= &step;
                    e[k] *= &pow;
                }
            }
        }
        Ok(MonicPoly { e })
    }

    /// Convenience for rational dilation.
    pub fn dilate_by(&self, r: &Rational) -> Result<Self> {
        self.dilate(&DilationScale::Rational(r.clone()))
    }

    /// Q_m: degree 2m to degree m, e_k = (-1)^k e_{2k}.
    pub fn halve(&self) -> Result<Self> {
        let n = self.degree();
        if n % 2 == 1 {
            return Err(Error::OddDegree(n));
        }
        let e = (0..=n / 2)
            .map(|k| {
                let c = self.e[2 * k].clone();
                if k % 2 == 0 {
                    c
                } else {
                    -c
                }
            })
            .collect();
        Ok(MonicPoly { e })
    }

    /// S_m: p(x) to p(x^2).
    pub fn double(&self) -> Self {
        let n = self.degree();
        let mut e = vec![Rational::zero(); 2 * n + 1];
        for k in 0..=n {
            e[2 * k] = if k % 2 == 0 {
                self.e[k].clone()
            } else {
                -self.e[k].clone()
            };
        }
        MonicPoly { e }
    }

    /// p_1..p_K by Newton's identities.
    pub fn power_sums(&self, k_max: usize) -> Vec<Rational> {
        let n = self.degree();
        let mut p: Vec<Rational> = Vec::with_capacity(k_max);
        for j in 1..=k_max {
            let mut s = if j <= n {
                let t = from_usize(j) * &self.e[j];
                if j % 2 == 1 {
                    t
                } else {
                    -t
                }
            } else {
                Rational::zero()
            };
            for i in 1..j.min(n + 1) {
                let t = &self.e[i] * &p[j - i - 1];
                if i % 2 == 1 {
                    s += t;
                } else {
                    s -= t;
                }
            }
            p.push(s);
        }
        p
    }

    pub fn evaluate(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for (k, c) in self.e.iter().enumerate() {
            acc *= x;
            if k % 2 == 0 {
                acc += c;
            } else {
                acc -= c;
            }
        }
        acc
    }

    /// Ordinary product; the root multisets are concatenated.
    pub fn mul(&self, other: &Self) -> Self {
        let (n, m) = (self.degree(), other.degree());
        let mut e = vec![Rational::zero(); n + m + 1];
        for i in 0..=n {
            for j in 0..=m {
                e[i + j] += &self.e[i] * &other.e[j];
            }
        }
        MonicPoly { e }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("polynomial serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }
}

impl fmt::Display for MonicPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (j, c) in self.monomial().iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a: BigRational = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show_c = !a.is_one() || j == 0;
            if show_c {
                if j > 0 && !a.is_integer() {
                    write!(f, "({a})")?;
                } else {
                    write!(f, "{a}")?;
                }
            }
            match j {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{j}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{int, rat};
    use proptest::prelude::*;

    fn p(e: &[Rational]) -> MonicPoly {
        MonicPoly::new(e.to_vec()).unwrap()
    }

    #[test]
    fn from_roots_examples() {
        assert_eq!(
            MonicPoly::from_roots(&[int(1), int(-1)]).unwrap(),
            p(&[int(1), int(0), int(-1)])
        );
        assert_eq!(
            MonicPoly::from_roots(&[int(2), int(2)]).unwrap(),
            p(&[int(1), int(4), int(4)])
        );
        assert_eq!(
            MonicPoly::from_roots(&[int(0), int(0), int(1)]).unwrap(),
            p(&[int(1), int(1), int(0), int(0)])
        );
        assert_eq!(MonicPoly::from_roots(&[]), Err(Error::EmptyRoots));
    }

    #[test]
    fn dilate_examples() {
        let x2m1 = p(&[int(1), int(0), int(-1)]);
        assert_eq!(
            x2m1.dilate_by(&int(2)).unwrap(),
            p(&[int(1), int(0), int(-4)])
        );
        let half = p(&[int(1), int(0), rat(-1, 2)]);
        assert_eq!(
            half.dilate(&DilationScale::SqrtRational(int(2))).unwrap(),
            x2m1
        );
        assert_eq!(
            x2m1.dilate(&DilationScale::ImaginaryRational(int(1)))
                .unwrap(),
            p(&[int(1), int(0), int(1)])
        );
        let sq = p(&[int(1), int(2), int(1)]);
        assert_eq!(
            sq.dilate(&DilationScale::SqrtRational(int(2))),
            Err(Error::NonEvenInput(1))
        );
        assert_eq!(x2m1.dilate_by(&int(0)), Err(Error::ZeroScale));
    }

    #[test]
    fn even_examples() {
        assert!(p(&[int(1), int(0), int(-1)]).is_even());
        assert!(!p(&[int(1), int(2), int(1)]).is_even());
        assert!(p(&[int(1), int(0), int(-1), int(0)]).is_even());
    }

    #[test]
    fn halve_double_examples() {
        assert_eq!(
            p(&[int(1), int(0), int(-4)]).halve().unwrap(),
            p(&[int(1), int(4)])
        );
        assert_eq!(
            p(&[int(1), int(0), int(-2), int(0), int(1)])
                .halve()
                .unwrap(),
            p(&[int(1), int(2), int(1)])
        );
        assert_eq!(
            p(&[int(1), int(0), rat(-1, 2)]).halve().unwrap(),
            p(&[int(1), rat(1, 2)])
        );
        assert_eq!(
            p(&[int(1), int(0), int(0), int(0)]).halve(),
            Err(Error::OddDegree(3))
        );
        assert_eq!(p(&[int(1), int(1)]).double(), p(&[int(1), int(0), int(-1)]));
        assert_eq!(
            p(&[int(1), rat(1, 2)]).double(),
            p(&[int(1), int(0), rat(-1, 2)])
        );
        assert_eq!(
            p(&[int(1), int(4), int(2)]).double(),
            p(&[int(1), int(0), int(-4), int(0), int(2)])
        );
    }

    #[test]
    fn power_sum_examples() {
        assert_eq!(
            p(&[int(1), int(4), int(2)]).power_sums(2),
            vec![int(4), int(12)]
        );
        assert_eq!(
            p(&[int(1), int(0), int(-1)]).power_sums(3),
            vec![int(0), int(2), int(0)]
        );
        assert_eq!(p(&[int(1), int(4), int(4)]).power_sums(1), vec![int(4)]);
    }

    #[test]
    fn evaluate_examples() {
        assert_eq!(p(&[int(1), int(0), int(-1)]).evaluate(&int(1)), int(0));
        assert_eq!(p(&[int(1), int(4), int(2)]).evaluate(&int(0)), int(2));
        assert_eq!(
            p(&[int(1), int(0), rat(-2, 3)]).evaluate(&int(1)),
            rat(1, 3)
        );
    }

    #[test]
    fn product() {
        let a = MonicPoly::from_roots(&[int(1), rat(1, 2)]).unwrap();
        let b = MonicPoly::from_roots(&[int(-3)]).unwrap();
        assert_eq!(
            a.mul(&b),
            MonicPoly::from_roots(&[int(1), rat(1, 2), int(-3)]).unwrap()
        );
    }

    #[test]
    fn json_round_trip() {
        let q = p(&[int(1), rat(-3, 4), int(2)]);
        let s = q.to_json();
        assert_eq!(s, r#"{"degree":2,"coeffs_e":["1","-3/4","2"]}"#);
        assert_eq!(MonicPoly::from_json(&s).unwrap(), q);
        assert!(MonicPoly::from_json(r#"{"degree":2,"coeffs_e":["1","2"]}"#).is_err());
        assert!(MonicPoly::from_json(r#"{"degree":1,"coeffs_e":["2","2"]}"#).is_err());
    }

    #[test]
    fn display() {
        assert_eq!(p(&[int(1), int(4), int(2)]).to_string(), "x^2 - 4x + 2");
        assert_eq!(p(&[int(1), int(0), rat(-2, 3)]).to_string(), "x^2 - 2/3");
        assert_eq!(
            p(&[int(1), int(0), rat(-27, 8), int(0)]).to_string(),
            "x^3 - (27/8)x"
        );
    }

    fn small_rat() -> impl Strategy<Value = Rational> {
        (-12i64..12, 1i64..6).prop_map(|(n, d)| rat(n, d))
    }

    fn poly() -> impl Strategy<Value = MonicPoly> {
        proptest::collection::vec(small_rat(), 1..9)
            .prop_map(|r| MonicPoly::from_roots(&r).unwrap())
    }

    proptest! {
        #[test]
        fn halve_inverts_double(q in poly()) {
            prop_assert_eq!(q.double().halve().unwrap(), q);
        }

        #[test]
        fn dilation_inverse(q in poly(), r in small_rat()) {
            prop_assume!(!r.is_zero());
            prop_assert_eq!(q.dilate_by(&r).unwrap().dilate_by(&r.recip()).unwrap(), q);
        }

        #[test]
        fn power_sums_match_roots(roots in proptest::collection::vec(small_rat(), 1..10)) {
            let q = MonicPoly::from_roots(&roots).unwrap();
            let ps = q.power_sums(6);
            for j in 1..=6 {
                let direct: Rational = roots.iter().map(|r| num_traits::pow(r.clone(), j)).sum();
                prop_assert_eq!(&ps[j - 1], &direct);
            }
        }

        #[test]
        fn imaginary_twice_is_reflection(q in poly()) {
            let s = q.double();
            let i1 = DilationScale::ImaginaryRational(int(1));
            let twice = s.dilate(&i1).unwrap().dilate(&i1).unwrap();
            prop_assert_eq!(&twice, &s.dilate_by(&int(-1)).unwrap());
            prop_assert_eq!(&twice, &s);
        }

        #[test]
        fn evaluate_vanishes_at_roots(roots in proptest::collection::vec(small_rat(), 1..8)) {
            let q = MonicPoly::from_roots(&roots).unwrap();
            for r in &roots {
                prop_assert!(q.evaluate(r).is_zero());
            }
        }
    }
}
