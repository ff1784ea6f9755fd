//! Exact scalar primitives and truncated power series over the rationals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational, always kept in lowest terms with a positive denominator.
pub type Rational = BigRational;

/// Default truncation order of the measure engine.
pub const DEFAULT_SERIES_ORDER: usize = 12;

/// Truncation order, overridable through `FINFREE_SERIES_ORDER`.
pub fn series_order_from_env() -> usize {
    std::env::var("FINFREE_SERIES_ORDER")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_SERIES_ORDER)
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn from_usize(n: usize) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"p"` or `"p/q"` (surrounding whitespace allowed). No decimals.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    match t.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(t.parse().map_err(|_| bad())?)),
    }
}

/// Parses a comma-separated tuple; the empty string is the empty tuple.
pub fn parse_tuple(s: &str) -> Result<Vec<Rational>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(parse_rational).collect()
}

pub fn rational_to_f64(r: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

/// a(a-1)...(a-k+1).
pub fn falling_factorial(a: &Rational, k: usize) -> Rational {
    let mut acc = Rational::one();
    let mut t = a.clone();
    for _ in 0..k {
        acc *= &t;
        t -= Rational::one();
    }
    acc
}

/// a(a+1)...(a+k-1).
pub fn rising_factorial(a: &Rational, k: usize) -> Rational {
    let mut acc = Rational::one();
    let mut t = a.clone();
    for _ in 0..k {
        acc *= &t;
        t += Rational::one();
    }
    acc
}

pub fn factorial(k: usize) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// n(n-1)...(n-k+1) over the integers.
pub fn falling_int(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    ((n - k + 1)..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Rows `falling(n, k)` and `binomial(n, k)` for k = 0..=n.
#[derive(Debug, Clone)]
pub struct FactorialTable {
    pub falling: Vec<BigInt>,
    pub binomial: Vec<BigInt>,
}

impl FactorialTable {
    pub fn new(n: usize) -> Self {
        let mut falling = Vec::with_capacity(n + 1);
        let mut binomial = Vec::with_capacity(n + 1);
        let mut f = BigInt::one();
        let mut b = BigInt::one();
        for k in 0..=n {
            falling.push(f.clone());
            binomial.push(b.clone());
            if k < n {
                f *= BigInt::from(n - k);
                b = b * BigInt::from(n - k) / BigInt::from(k + 1);
            }
        }
        FactorialTable { falling, binomial }
    }
}

/// Cauchy product of two rational sequences, truncated to `len` terms.
///
/// Each input is brought to a common denominator first so the inner loop runs
/// over integers and only `len` reductions are performed.
pub fn convolve(u: &[Rational], v: &[Rational], len: usize) -> Vec<Rational> {
    let (du, nu) = common_denominator(u);
    let (dv, nv) = common_denominator(v);
    let d = du * dv;
    (0..len)
        .map(|k| {
            let mut acc = BigInt::zero();
            for i in 0..=k {
                if i < nu.len() && k - i < nv.len() {
                    acc += &nu[i] * &nv[k - i];
                }
            }
            Rational::new(acc, d.clone())
        })
        .collect()
}

fn common_denominator(u: &[Rational]) -> (BigInt, Vec<BigInt>) {
    let d = u.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let nums = u.iter().map(|x| x.numer() * (&d / x.denom())).collect();
    (d, nums)
}

/// Formal power series truncated at a fixed order K (K+1 coefficients).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<Rational>,
}

impl TruncatedSeries {
    /// Pads with zeros or truncates so that the series has the given order.
    pub fn new(mut coeffs: Vec<Rational>, order: usize) -> Self {
        coeffs.resize(order + 1, Rational::zero());
        TruncatedSeries { coeffs }
    }

    pub fn from_ints(c: &[i64], order: usize) -> Self {
        Self::new(c.iter().map(|&x| int(x)).collect(), order)
    }

    pub fn constant(c: Rational, order: usize) -> Self {
        Self::new(vec![c], order)
    }

    /// The series `z` at the given order.
    pub fn identity(order: usize) -> Self {
        Self::new(vec![Rational::zero(), Rational::one()], order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::new(self.coeffs[..=order.min(self.order())].to_vec(), order)
    }

    pub fn add(&self, other: &Self) -> Self {
        let k = self.order().min(other.order());
        Self::new(
            (0..=k)
                .map(|i| &self.coeffs[i] + &other.coeffs[i])
                .collect(),
            k,
        )
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect(), self.order())
    }

    /// 1/f, requiring f(0) != 0.
    pub fn reciprocal(&self) -> Result<Self> {
        let k = self.order();
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            return Err(Error::PoleAtOrigin);
        }
        let inv0 = c0.recip();
        let mut out = vec![inv0.clone()];
        for n in 1..=k {
            let mut s = Rational::zero();
            for i in 1..=n {
                s += &self.coeffs[i] * &out[n - i];
            }
            out.push(-s * &inv0);
        }
        Ok(Self::new(out, k))
    }

    /// f(g(z)) where g(0) = 0.
    pub fn compose(&self, g: &Self) -> Result<Self> {
        if !g.coeffs[0].is_zero() {
            return Err(Error::ConstantTermNonzero);
        }
        let k = self.order().min(g.order());
        let mut out = Self::constant(self.coeffs[0].clone(), k);
        let mut pow = Self::constant(Rational::one(), k);
        for i in 1..=k {
            pow = series_mul(&pow, g);
            out = out.add(&pow.scale(&self.coeffs[i]));
        }
        Ok(out)
    }
}

/// Cauchy product truncated to the smaller order.
pub fn series_mul(f: &TruncatedSeries, g: &TruncatedSeries) -> TruncatedSeries {
    let k = f.order().min(g.order());
    TruncatedSeries::new(convolve(&f.coeffs, &g.coeffs, k + 1), k)
}

/// Compositional inverse by Lagrange inversion:
/// `[z^n] g = (1/n) [w^(n-1)] (w/f(w))^n`.
pub fn series_revert(f: &TruncatedSeries) -> Result<TruncatedSeries> {
    let k = f.order();
    if !f.coeffs[0].is_zero() {
        return Err(Error::ConstantTermNonzero);
    }
    if k == 0 {
        return Ok(TruncatedSeries::new(vec![], 0));
    }
    if f.coeffs[1].is_zero() {
        return Err(Error::ZeroLinearTerm);
    }
    // f(w)/w truncated at order k-1, then its reciprocal h = w/f(w).
    let shifted = TruncatedSeries::new(f.coeffs[1..].to_vec(), k - 1);
    let h = shifted.reciprocal()?;
    let mut out = vec![Rational::zero()];
    let mut pow = TruncatedSeries::constant(Rational::one(), k - 1);
    for n in 1..=k {
        pow = series_mul(&pow, &h);
        out.push(pow.coeff(n - 1) / from_usize(n));
    }
    Ok(TruncatedSeries::new(out, k))
}

/// Expansion of `prod (z + a_r) / prod (z + b_s)` about z = 0.
pub fn series_rational(
    num_roots: &[Rational],
    den_roots: &[Rational],
    order: usize,
) -> Result<TruncatedSeries> {
    let mut num = TruncatedSeries::constant(Rational::one(), order);
    for a in num_roots {
        num = series_mul(
            &num,
            &TruncatedSeries::new(vec![a.clone(), Rational::one()], order),
        );
    }
    let mut den = TruncatedSeries::constant(Rational::one(), order);
    for b in den_roots {
        if b.is_zero() {
            return Err(Error::PoleAtOrigin);
        }
        den = series_mul(
            &den,
            &TruncatedSeries::new(vec![b.clone(), Rational::one()], order),
        );
    }
    Ok(series_mul(&num, &den.reciprocal()?))
}

/// |x| as a rational.
pub fn abs(x: &Rational) -> Rational {
    x.abs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn falling_examples() {
        assert_eq!(falling_factorial(&int(3), 2), int(6));
        assert_eq!(falling_factorial(&rat(7, 3), 0), int(1));
        assert_eq!(falling_factorial(&rat(1, 2), 2), rat(-1, 4));
    }

    #[test]
    fn rising_examples() {
        assert_eq!(rising_factorial(&int(2), 3), int(24));
        assert_eq!(falling_factorial(&int(3), 2), rising_factorial(&int(-3), 2));
        let lhs = falling_factorial(&int(6), 2);
        let rhs = int(4) * falling_factorial(&int(3), 1) * falling_factorial(&rat(5, 2), 1);
        assert_eq!(lhs, int(30));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn integer_tables() {
        let t = FactorialTable::new(6);
        for k in 0..=6 {
            assert_eq!(t.falling[k], falling_int(6, k));
            assert_eq!(t.binomial[k], binomial(6, k));
        }
        assert_eq!(binomial(10, 3), BigInt::from(120));
        assert_eq!(factorial(5), BigInt::from(120));
    }

    #[test]
    fn mul_examples() {
        let a = TruncatedSeries::from_ints(&[1, 1], 2);
        let b = TruncatedSeries::from_ints(&[1, -1], 2);
        assert_eq!(
            series_mul(&a, &b),
            TruncatedSeries::from_ints(&[1, 0, -1], 2)
        );
        let one = TruncatedSeries::from_ints(&[1], 2);
        assert_eq!(series_mul(&a, &one), a);
        let c = TruncatedSeries::from_ints(&[1, 1, 1], 2);
        assert_eq!(
            series_mul(&c, &c),
            TruncatedSeries::from_ints(&[1, 2, 3], 2)
        );
        // mismatched orders truncate to the smaller
        let d = TruncatedSeries::from_ints(&[1, 1], 5);
        assert_eq!(series_mul(&c, &d).order(), 2);
    }

    #[test]
    fn revert_examples() {
        let z = TruncatedSeries::identity(6);
        assert_eq!(series_revert(&z).unwrap(), z);
        // z/(z+1)^2 reverts to the Catalan series
        let f = series_mul(&z, &series_rational(&[], &[int(1), int(1)], 4).unwrap());
        let g = series_revert(&f).unwrap();
        assert_eq!(g, TruncatedSeries::from_ints(&[0, 1, 2, 5, 14], 4));
        assert_eq!(f.compose(&g).unwrap(), TruncatedSeries::identity(4));
        let two = TruncatedSeries::from_ints(&[0, 2], 3);
        assert_eq!(
            series_revert(&two).unwrap(),
            TruncatedSeries::new(vec![int(0), rat(1, 2)], 3)
        );
    }

    #[test]
    fn revert_errors() {
        assert_eq!(
            series_revert(&TruncatedSeries::from_ints(&[0, 0, 1], 3)),
            Err(Error::ZeroLinearTerm)
        );
        assert_eq!(
            series_revert(&TruncatedSeries::from_ints(&[1, 1], 3)),
            Err(Error::ConstantTermNonzero)
        );
    }

    #[test]
    fn rational_examples() {
        assert_eq!(
            series_rational(&[], &[int(1)], 2).unwrap(),
            TruncatedSeries::from_ints(&[1, -1, 1], 2)
        );
        assert_eq!(
            series_rational(&[int(2)], &[int(1)], 1).unwrap(),
            TruncatedSeries::from_ints(&[2, -1], 1)
        );
        let a = rat(3, 7);
        assert_eq!(
            series_rational(&[a.clone()], &[a], 5).unwrap(),
            TruncatedSeries::from_ints(&[1], 5)
        );
        assert_eq!(series_rational(&[], &[int(0)], 3), Err(Error::PoleAtOrigin));
    }

    #[test]
    fn parsing() {
        assert_eq!(parse_rational(" -3/6 ").unwrap(), rat(-1, 2));
        assert_eq!(parse_rational("7").unwrap(), int(7));
        assert!(parse_rational("0.5").is_err());
        assert!(parse_rational("1/0").is_err());
        assert_eq!(parse_tuple("").unwrap(), vec![]);
        assert_eq!(parse_tuple("1, 1/2").unwrap(), vec![int(1), rat(1, 2)]);
        assert_eq!(rat(-2, 4).to_string(), "-1/2");
    }

    fn small_rat() -> impl Strategy<Value = Rational> {
        (-30i64..30, 1i64..8).prop_map(|(n, d)| rat(n, d))
    }

    proptest! {
        #[test]
        fn falling_splits(a in small_rat(), k in 0usize..8, j in 0usize..8) {
            let lhs = falling_factorial(&a, k) * falling_factorial(&(&a - from_usize(k)), j);
            prop_assert_eq!(lhs, falling_factorial(&a, k + j));
        }

        #[test]
        fn falling_duplication(a in small_rat(), k in 0usize..7) {
            let lhs = falling_factorial(&(int(2) * &a), 2 * k);
            let rhs = Rational::from_integer(BigInt::from(4).pow(k as u32))
                * falling_factorial(&a, k)
                * falling_factorial(&(&a - rat(1, 2)), k);
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn rising_falling_reflection(a in small_rat(), k in 0usize..8) {
            let sign = if k % 2 == 0 { int(1) } else { int(-1) };
            prop_assert_eq!(falling_factorial(&a, k), sign * rising_factorial(&-a, k));
        }

        #[test]
        fn revert_is_involution(c in proptest::collection::vec(small_rat(), 6), lead in small_rat()) {
            prop_assume!(!lead.is_zero());
            let mut coeffs = vec![Rational::zero(), lead];
            coeffs.extend(c);
            let f = TruncatedSeries::new(coeffs, 7);
            let g = series_revert(&f).unwrap();
            prop_assert_eq!(f.compose(&g).unwrap(), TruncatedSeries::identity(7));
            prop_assert_eq!(series_revert(&g).unwrap(), f);
        }

        #[test]
        fn lowest_terms(a in small_rat(), b in small_rat()) {
            let s = &a * &b + &a;
            prop_assert!(s.numer().gcd(s.denom()).is_one());
            prop_assert!(s.denom().is_positive());
        }
    }
}
