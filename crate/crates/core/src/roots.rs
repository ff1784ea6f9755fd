//! Real-root certificates by Sturm sequences, and numeric roots.
//!
//! Exact work happens on primitive integer polynomials (lowest power first).
//! The square-free chain `g_0 = p`, `g_{i+1} = gcd(g_i, g_i')` gives square-free
//! `h_i = g_{i-1} / g_i` holding the roots of multiplicity at least `i`, so
//! counts with multiplicity are sums of Sturm counts over the `h_i`.

use num_bigint::{BigInt, Sign};
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::numeric::Rational;
use crate::poly::MonicPoly;

/// Default degree cap for [`numeric_roots`].
pub const DEFAULT_DEGREE_CAP: usize = 256;

#[derive(Debug, Clone, PartialEq, Eq)]
struct IntPoly(Vec<BigInt>);

impl IntPoly {
    fn from_rational(c: &[Rational]) -> Self {
        let d = c.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let v = c.iter().map(|x| x.numer() * (&d / x.denom())).collect();
        IntPoly(v).primitive()
    }

    fn degree(&self) -> usize {
        self.0.len() - 1
    }

    fn lead(&self) -> &BigInt {
        self.0.last().expect("nonempty")
    }

    fn is_zero(&self) -> bool {
        self.0.iter().all(|c| c.is_zero())
    }

    fn trim(mut self) -> Self {
        while self.0.len() > 1 && self.0.last().is_some_and(|c| c.is_zero()) {
            self.0.pop();
        }
        self
    }

    /// Divides by the positive content.
    fn primitive(self) -> Self {
        let s = self.trim();
        let g = s.0.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if g.is_zero() || g.is_one() {
            return s;
        }
        IntPoly(s.0.into_iter().map(|c| c / &g).collect())
    }

    fn derivative(&self) -> Self {
        if self.degree() == 0 {
            return IntPoly(vec![BigInt::zero()]);
        }
        IntPoly(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(j, c)| c * BigInt::from(j))
                .collect(),
        )
    }

    /// Pseudo-division: lc(b)^(deg a - deg b + 1) a = q b + r, with the
    /// multiplier made positive so signs of r match those of rem(a, b).
    fn pseudo_divmod(a: &Self, b: &Self) -> (Self, Self) {
        let db = b.degree();
        if a.degree() < db {
            return (IntPoly(vec![BigInt::zero()]), a.clone());
        }
        let lb = b.lead().clone();
        let steps = a.degree() - db + 1;
        let mut r = a.0.clone();
        let mut q = vec![BigInt::zero(); steps];
        for s in (0..steps).rev() {
            let top = r[s + db].clone();
            for c in q.iter_mut() {
                *c *= &lb;
            }
            for c in r.iter_mut() {
                *c *= &lb;
            }
            q[s] += &top;
            for (j, bc) in b.0.iter().enumerate() {
                r[s + j] -= &top * bc;
            }
        }
        let mut qp = IntPoly(q);
        let mut rp = IntPoly(r).trim();
        if lb.is_negative() && steps % 2 == 1 {
            qp = qp.neg();
            rp = rp.neg();
        }
        (qp.trim(), rp)
    }

    fn neg(self) -> Self {
        IntPoly(self.0.into_iter().map(|c| -c).collect())
    }

    fn gcd(a: &Self, b: &Self) -> Self {
        let (mut x, mut y) = if a.degree() >= b.degree() {
            (a.clone(), b.clone())
        } else {
            (b.clone(), a.clone())
        };
        while !y.is_zero() {
            let (_, r) = Self::pseudo_divmod(&x, &y);
            x = y;
            y = r.primitive();
        }
        let g = x.primitive();
        if g.lead().is_negative() {
            g.neg()
        } else {
            g
        }
    }

    /// Exact quotient up to a positive constant.
    fn div_exact(a: &Self, b: &Self) -> Self {
        let (q, r) = Self::pseudo_divmod(a, b);
        debug_assert!(r.is_zero());
        q.primitive()
    }

    /// Sign of the polynomial at p/q (q > 0).
    fn sign_at(&self, x: &Rational) -> Sign {
        let (p, q) = (x.numer(), x.denom());
        let mut acc = BigInt::zero();
        let mut qpow = BigInt::one();
        for c in self.0.iter().rev() {
            acc = acc * p + c * &qpow;
            qpow *= q;
        }
        acc.sign()
    }

    fn sign_at_inf(&self, negative: bool) -> Sign {
        let s = self.lead().sign();
        if negative && self.degree() % 2 == 1 {
            -s
        } else {
            s
        }
    }
}

/// Point at which a Sturm sequence is evaluated.
#[derive(Debug, Clone)]
enum At<'a> {
    NegInf,
    PosInf,
    Point(&'a Rational),
}

#[derive(Debug, Clone)]
struct SturmChain(Vec<IntPoly>);

impl SturmChain {
    fn new(h: &IntPoly) -> Self {
        let mut chain = vec![h.clone()];
        if h.degree() == 0 {
            return SturmChain(chain);
        }
        chain.push(h.derivative().primitive());
        loop {
            let n = chain.len();
            let (_, r) = IntPoly::pseudo_divmod(&chain[n - 2], &chain[n - 1]);
            if r.is_zero() {
                break;
            }
            chain.push(r.neg().primitive());
        }
        SturmChain(chain)
    }

    fn variations(&self, at: &At) -> usize {
        let mut count = 0;
        let mut last = Sign::NoSign;
        for s in &self.0 {
            let sg = match at {
                At::NegInf => s.sign_at_inf(true),
                At::PosInf => s.sign_at_inf(false),
                At::Point(x) => s.sign_at(x),
            };
            if sg == Sign::NoSign {
                continue;
            }
            if last != Sign::NoSign && sg != last {
                count += 1;
            }
            last = sg;
        }
        count
    }

    /// Distinct roots in (lo, hi].
    fn count(&self, lo: &At, hi: &At) -> usize {
        self.variations(lo).saturating_sub(self.variations(hi))
    }
}

/// Square-free layers h_1, h_2, ... of a polynomial.
fn squarefree_layers(p: &IntPoly) -> Vec<IntPoly> {
    let mut layers = Vec::new();
    let mut g = p.clone();
    while g.degree() > 0 {
        let next = IntPoly::gcd(&g, &g.derivative());
        layers.push(IntPoly::div_exact(&g, &next));
        g = next;
    }
    layers
}

/// Exact real-root census of a polynomial.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct RootCertificate {
    pub degree: usize,
    pub distinct_real: usize,
    pub total_real_with_multiplicity: usize,
    pub count_positive: usize,
    pub count_negative: usize,
    pub count_zero: usize,
    pub squarefree_applied: bool,
}

impl RootCertificate {
    pub fn is_real_rooted(&self) -> bool {
        self.total_real_with_multiplicity == self.degree
    }

    pub fn is_nonnegative_rooted(&self) -> bool {
        self.is_real_rooted() && self.count_negative == 0
    }

    pub fn is_positive_rooted(&self) -> bool {
        self.is_real_rooted() && self.count_negative == 0 && self.count_zero == 0
    }

    pub fn is_nonpositive_rooted(&self) -> bool {
        self.is_real_rooted() && self.count_positive == 0
    }

    pub fn is_negative_rooted(&self) -> bool {
        self.is_real_rooted() && self.count_positive == 0 && self.count_zero == 0
    }
}

fn chains(p: &MonicPoly) -> Vec<SturmChain> {
    let ip = IntPoly::from_rational(&p.monomial());
    squarefree_layers(&ip).iter().map(SturmChain::new).collect()
}

pub fn sturm_certificate(p: &MonicPoly) -> RootCertificate {
    let cs = chains(p);
    let zero = Rational::zero();
    let z = At::Point(&zero);
    let mut cert = RootCertificate {
        degree: p.degree(),
        distinct_real: 0,
        total_real_with_multiplicity: 0,
        count_positive: 0,
        count_negative: 0,
        count_zero: 0,
        squarefree_applied: cs.len() > 1,
    };
    for (i, c) in cs.iter().enumerate() {
        let neg_and_zero = c.count(&At::NegInf, &z);
        let pos = c.count(&z, &At::PosInf);
        let at_zero = usize::from(c.0[0].sign_at(&zero) == Sign::NoSign);
        if i == 0 {
            cert.distinct_real = neg_and_zero + pos;
        }
        cert.total_real_with_multiplicity += neg_and_zero + pos;
        cert.count_positive += pos;
        cert.count_negative += neg_and_zero - at_zero;
        cert.count_zero += at_zero;
    }
    cert
}

/// Real roots in (lo, hi], counted with multiplicity.
pub fn roots_in_window(p: &MonicPoly, lo: &Rational, hi: &Rational) -> Result<usize> {
    if lo >= hi {
        return Err(Error::InvalidParameter(format!(
            "empty window ({lo}, {hi}]"
        )));
    }
    Ok(chains(p)
        .iter()
        .map(|c| c.count(&At::Point(lo), &At::Point(hi)))
        .sum())
}

/// Floating-point roots with multiplicity hints and a residual report.
#[derive(Debug, Clone)]
pub struct NumericRootSet {
    /// One entry per root counted with multiplicity.
    pub roots: Vec<Complex64>,
    /// Multiplicity of the square-free layer each root was found in.
    pub multiplicity: Vec<usize>,
    /// max |p(z)| with p scaled so its largest coefficient has modulus 1.
    pub max_residual: f64,
}

impl NumericRootSet {
    pub fn to_csv(&self) -> String {
        let mut s = String::new();
        for (z, m) in self.roots.iter().zip(&self.multiplicity) {
            s.push_str(&format!("{},{},{}\n", z.re, z.im, m));
        }
        s
    }
}

pub fn numeric_roots(p: &MonicPoly) -> Result<NumericRootSet> {
    numeric_roots_with_cap(p, DEFAULT_DEGREE_CAP)
}

pub fn numeric_roots_with_cap(p: &MonicPoly, cap: usize) -> Result<NumericRootSet> {
    if p.degree() > cap {
        return Err(Error::DegreeCap {
            degree: p.degree(),
            cap,
        });
    }
    let ip = IntPoly::from_rational(&p.monomial());
    let layers = squarefree_layers(&ip);
    let mut roots = Vec::with_capacity(p.degree());
    let mut multiplicity = Vec::with_capacity(p.degree());
    for (i, h) in layers.iter().enumerate() {
        // roots of multiplicity exactly i+1
        let f = match layers.get(i + 1) {
            Some(next) => IntPoly::div_exact(h, next),
            None => h.clone(),
        };
        if f.degree() == 0 {
            continue;
        }
        for z in aberth(&f) {
            let z = polish(&f, z);
            for _ in 0..=i {
                roots.push(z);
                multiplicity.push(i + 1);
            }
        }
    }
    let max_residual = roots.iter().map(|z| residual(&ip, *z)).fold(0.0, f64::max);
    Ok(NumericRootSet {
        roots,
        multiplicity,
        max_residual,
    })
}

fn big_to_f64(x: &BigInt) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Simultaneous Aberth-Ehrlich iteration on the monic f64 image of `f`.
fn aberth(f: &IntPoly) -> Vec<Complex64> {
    let d = f.degree();
    let lead = Rational::from_integer(f.lead().clone());
    let c: Vec<f64> =
        f.0.iter()
            .map(|x| {
                (Rational::from_integer(x.clone()) / &lead)
                    .to_f64()
                    .unwrap_or(f64::NAN)
            })
            .collect();
    if d == 1 {
        return vec![Complex64::new(-c[0], 0.0)];
    }
    // Cauchy-type radius from the coefficient magnitudes
    let radius = (0..d)
        .map(|j| c[j].abs().powf(1.0 / (d - j) as f64))
        .fold(0.0f64, f64::max)
        .max(1e-3);
    let mut z: Vec<Complex64> = (0..d)
        .map(|k| {
            Complex64::from_polar(
                radius,
                2.0 * std::f64::consts::PI * k as f64 / d as f64 + 0.4,
            )
        })
        .collect();
    let eval = |x: Complex64| {
        let mut p = Complex64::new(1.0, 0.0);
        let mut dp = Complex64::new(0.0, 0.0);
        for j in (0..d).rev() {
            dp = dp * x + p;
            p = p * x + c[j];
        }
        (p, dp)
    };
    let mut converged = vec![false; d];
    for _ in 0..1000 {
        let mut all = true;
        for k in 0..d {
            if converged[k] {
                continue;
            }
            let (p, dp) = eval(z[k]);
            let ratio = p / dp;
            let mut s = Complex64::new(0.0, 0.0);
            for j in 0..d {
                if j != k {
                    s += (z[k] - z[j]).inv();
                }
            }
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * s);
            if !w.re.is_finite() || !w.im.is_finite() {
                continue;
            }
            z[k] -= w;
            if w.norm() <= 1e-15 * z[k].norm().max(1e-300) {
                converged[k] = true;
            } else {
                all = false;
            }
        }
        if all {
            break;
        }
    }
    z
}

/// Exact evaluation of `f` and `f'` at the dyadic point `z`, returning the
/// Newton step f(z)/f'(z) in double precision.
fn newton_step(f: &IntPoly, z: Complex64) -> Option<Complex64> {
    let (re, e1) = dyadic(z.re);
    let (im, e2) = dyadic(z.im);
    // common exponent: z = (a + ib) / 2^s
    let s = e1.max(e2);
    let a = re << (s - e1) as usize;
    let b = im << (s - e2) as usize;
    // Horner on scaled values: P = 2^{sd} f(z), D = 2^{s(d-1)} f'(z)
    let (mut pr, mut pi) = (BigInt::zero(), BigInt::zero());
    let (mut dr, mut di) = (BigInt::zero(), BigInt::zero());
    for (k, c) in f.0.iter().rev().enumerate() {
        if k > 0 {
            // D <- D * z_scaled + P * 2^{s (k-1)}
            let scale = BigInt::one() << (s as usize * (k - 1));
            let ndr = &dr * &a - &di * &b + &pr * &scale;
            let ndi = &dr * &b + &di * &a + &pi * &scale;
            dr = ndr;
            di = ndi;
        }
        let scale = BigInt::one() << (s as usize * k);
        let npr = &pr * &a - &pi * &b + c * &scale;
        let npi = &pr * &b + &pi * &a;
        pr = npr;
        pi = npi;
    }
    // f/f' = (P / D) / 2^s
    let den = &dr * &dr + &di * &di;
    if den.is_zero() {
        return None;
    }
    let nr = &pr * &dr + &pi * &di;
    let ni = &pi * &dr - &pr * &di;
    let scale = den << s as usize;
    let to = |n: BigInt| Rational::new(n, scale.clone()).to_f64().unwrap_or(f64::NAN);
    Some(Complex64::new(to(nr), to(ni)))
}

/// x = m / 2^e with integer m and e >= 0.
fn dyadic(x: f64) -> (BigInt, u32) {
    if x == 0.0 || !x.is_finite() {
        return (BigInt::zero(), 0);
    }
    let r = Rational::from_float(x).expect("finite");
    let e = r.denom().bits() as u32 - 1;
    (r.numer().clone(), e)
}

fn polish(f: &IntPoly, mut z: Complex64) -> Complex64 {
    for _ in 0..8 {
        match newton_step(f, z) {
            Some(step) if step.re.is_finite() && step.im.is_finite() => {
                let next = z - step;
                if step.norm() <= 1e-17 * z.norm() || next == z {
                    return next;
                }
                z = next;
            }
            _ => return z,
        }
    }
    z
}

fn residual(f: &IntPoly, z: Complex64) -> f64 {
    let maxc = f.0.iter().map(|c| c.abs()).max().expect("nonempty");
    let scale = big_to_f64(&maxc);
    let mut acc = Complex64::new(0.0, 0.0);
    for c in f.0.iter().rev() {
        acc = acc * z + big_to_f64(c) / scale;
    }
    acc.norm()
}
