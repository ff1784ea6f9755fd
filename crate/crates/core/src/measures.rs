//! Truncated moment sequences: free cumulants, free additive convolution,
//! symmetrization, the square and square-root pushforwards, S-rational
//! measures and convergence diagnostics for polynomial sequences.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::{
    from_usize, rational_to_f64, series_rational, series_revert, Rational, TruncatedSeries,
};
use crate::poly::{DilationScale, MonicPoly};

/// Moments m_0..m_K of a (formal) measure, with m_0 = 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MomentSeq {
    moments: Vec<Rational>,
}

#[derive(Serialize, Deserialize)]
struct MomentJson {
    order: usize,
    moments: Vec<String>,
}

impl MomentSeq {
    pub fn new(moments: Vec<Rational>) -> Result<Self> {
        if moments.first() != Some(&Rational::one()) {
            return Err(Error::InvalidParameter(
                "moment sequence must start with m_0 = 1".into(),
            ));
        }
        Ok(MomentSeq { moments })
    }

    /// Point mass at `alpha`.
    pub fn point(alpha: &Rational, order: usize) -> Self {
        let mut m = vec![Rational::one()];
        for k in 1..=order {
            m.push(&m[k - 1] * alpha);
        }
        MomentSeq { moments: m }
    }

    pub fn order(&self) -> usize {
        self.moments.len() - 1
    }

    pub fn moments(&self) -> &[Rational] {
        &self.moments
    }

    pub fn moment(&self, j: usize) -> &Rational {
        &self.moments[j]
    }

    pub fn truncate(&self, order: usize) -> Self {
        MomentSeq {
            moments: self.moments[..=order.min(self.order())].to_vec(),
        }
    }

    pub fn is_symmetric(&self) -> bool {
        self.moments.iter().skip(1).step_by(2).all(Zero::is_zero)
    }

    pub fn to_json(&self) -> String {
        let j = MomentJson {
            order: self.order(),
            moments: self.moments.iter().map(|m| m.to_string()).collect(),
        };
        serde_json::to_string(&j).expect("serializable")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let j: MomentJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        if j.moments.len() != j.order + 1 {
            return Err(Error::LengthMismatch(j.moments.len(), j.order + 1));
        }
        let m = j
            .moments
            .iter()
            .map(|s| crate::numeric::parse_rational(s))
            .collect::<Result<Vec<_>>>()?;
        Self::new(m)
    }
}

/// Coefficients of M(z)^s up to z^k, where M(z) = sum m_i z^i.
fn moment_power_table(m: &[Rational], k: usize) -> Vec<TruncatedSeries> {
    let ms = TruncatedSeries::new(m.to_vec(), k);
    let mut pows = vec![TruncatedSeries::constant(Rational::one(), k)];
    for s in 1..=k {
        pows.push(crate::numeric::series_mul(&pows[s - 1], &ms));
    }
    pows
}

/// Free cumulants kappa_1..kappa_K (index j-1 holds kappa_j), from
/// `m_n = sum_s kappa_s [z^(n-s)] M(z)^s`.
pub fn moments_to_cumulants(m: &MomentSeq) -> Vec<Rational> {
    let k = m.order();
    let pows = moment_power_table(&m.moments, k);
    let mut kappa: Vec<Rational> = Vec::with_capacity(k);
    for n in 1..=k {
        let mut s = m.moments[n].clone();
        for (i, ks) in kappa.iter().enumerate() {
            let sidx = i + 1;
            s -= ks * pows[sidx].coeff(n - sidx);
        }
        kappa.push(s);
    }
    kappa
}

/// Inverse of [`moments_to_cumulants`].
pub fn cumulants_to_moments(kappa: &[Rational]) -> MomentSeq {
    let k = kappa.len();
    let mut m = vec![Rational::one()];
    for n in 1..=k {
        // [z^(n-s)] M^s only involves m_1..m_(n-1) for s >= 1.
        let pows = moment_power_table(&m, n);
        let mut s = Rational::zero();
        for sidx in 1..=n {
            s += &kappa[sidx - 1] * pows[sidx].coeff(n - sidx);
        }
        m.push(s);
    }
    MomentSeq { moments: m }
}

pub fn free_add(mu: &MomentSeq, nu: &MomentSeq) -> Result<MomentSeq> {
    if mu.order() != nu.order() {
        return Err(Error::OrderMismatch(mu.order(), nu.order()));
    }
    let a = moments_to_cumulants(mu);
    let b = moments_to_cumulants(nu);
    Ok(cumulants_to_moments(
        &a.iter().zip(&b).map(|(x, y)| x + y).collect::<Vec<_>>(),
    ))
}

/// m_j -> alpha^j m_j.
pub fn dilate_measure(mu: &MomentSeq, alpha: &Rational) -> MomentSeq {
    let mut pow = Rational::one();
    let mut out = Vec::with_capacity(mu.moments.len());
    for m in &mu.moments {
        out.push(m * &pow);
        pow *= alpha;
    }
    MomentSeq { moments: out }
}

/// Dilation by a possibly irrational or imaginary scale. The non-rational
/// scales need a symmetric input and act as m_2j -> (alpha^2)^j m_2j.
pub fn dilate_measure_by(mu: &MomentSeq, scale: &DilationScale) -> Result<MomentSeq> {
    let sq = match scale {
        DilationScale::Rational(a) => return Ok(dilate_measure(mu, a)),
        DilationScale::SqrtRational(r) => r.clone(),
        DilationScale::ImaginaryRational(r) => -(r * r),
    };
    if !mu.is_symmetric() {
        return Err(Error::NonSymmetricInput(mu.order()));
    }
    Ok(dilate_even(mu, &sq))
}

fn dilate_even(mu: &MomentSeq, alpha_sq: &Rational) -> MomentSeq {
    let mut pow = Rational::one();
    let mut out = Vec::with_capacity(mu.moments.len());
    for (j, m) in mu.moments.iter().enumerate() {
        if j % 2 == 0 {
            out.push(m * &pow);
            pow *= alpha_sq;
        } else {
            out.push(m.clone());
        }
    }
    MomentSeq { moments: out }
}

/// Free symmetrization mu ⊞ Dil_{-1} mu.
pub fn sym_measure(mu: &MomentSeq) -> MomentSeq {
    free_add(mu, &dilate_measure(mu, &-Rational::one())).expect("equal orders")
}

/// Pushforward along t -> t^2 of a symmetric measure.
pub fn q_measure(mu: &MomentSeq) -> Result<MomentSeq> {
    if !mu.is_symmetric() {
        let j = mu
            .moments
            .iter()
            .enumerate()
            .skip(1)
            .step_by(2)
            .find(|(_, m)| !m.is_zero())
            .map(|(j, _)| j);
        return Err(Error::NonSymmetricInput(j.unwrap_or(0)));
    }
    Ok(MomentSeq {
        moments: mu.moments.iter().step_by(2).cloned().collect(),
    })
}

/// The symmetric measure whose square is `nu`.
pub fn sqrt_measure(nu: &MomentSeq) -> MomentSeq {
    let mut out = Vec::with_capacity(2 * nu.moments.len() - 1);
    for (j, m) in nu.moments.iter().enumerate() {
        if j > 0 {
            out.push(Rational::zero());
        }
        out.push(m.clone());
    }
    MomentSeq { moments: out }
}

/// Parameters of the measure with S-transform prod(z + lower) / prod(z + upper).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SRationalSpec {
    pub upper: Vec<Rational>,
    pub lower: Vec<Rational>,
}

impl SRationalSpec {
    pub fn new(upper: Vec<Rational>, lower: Vec<Rational>) -> Self {
        SRationalSpec { upper, lower }
    }

    /// Spec of the free multiplicative convolution: S-transforms multiply.
    pub fn concat(&self, other: &Self) -> Self {
        SRationalSpec {
            upper: self.upper.iter().chain(&other.upper).cloned().collect(),
            lower: self.lower.iter().chain(&other.lower).cloned().collect(),
        }
    }
}

/// Moments m_0..m_K by reverting M^{<-1>}(z) = z S(z) / (z + 1).
pub fn s_rational_moments(spec: &SRationalSpec, order: usize) -> Result<MomentSeq> {
    if order == 0 {
        return Ok(MomentSeq {
            moments: vec![Rational::one()],
        });
    }
    let mut den = spec.upper.clone();
    den.push(Rational::one());
    let ratio = series_rational(&spec.lower, &den, order - 1)?;
    let mut shifted = vec![Rational::zero()];
    shifted.extend_from_slice(ratio.coeffs());
    let inv = TruncatedSeries::new(shifted, order);
    let m = series_revert(&inv)?;
    let mut moments = m.coeffs().to_vec();
    moments[0] = Rational::one();
    Ok(MomentSeq { moments })
}

/// Moments up to `order` of the symmetric square root of the S-rational measure.
pub fn s_rational_even_moments(spec: &SRationalSpec, order: usize) -> Result<MomentSeq> {
    Ok(sqrt_measure(&s_rational_moments(spec, order / 2)?).truncate(order))
}

/// Moments of the empirical root distribution: power sums over the degree.
pub fn empirical_moments(p: &MonicPoly, order: usize) -> MomentSeq {
    let n = from_usize(p.degree());
    let mut m = vec![Rational::one()];
    m.extend(p.power_sums(order).into_iter().map(|s| s / &n));
    MomentSeq { moments: m }
}

#[derive(Debug, Clone, Serialize)]
pub struct LimitRow {
    pub degree: usize,
    pub j: usize,
    pub empirical: f64,
    pub target: f64,
    pub gap: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct LimitReport {
    pub rows: Vec<LimitRow>,
    /// Some moment gap grew from one degree to the next.
    pub non_monotone: bool,
}

impl LimitReport {
    pub fn to_csv(&self) -> String {
        let mut s = String::from("degree,j,empirical,target,gap\n");
        for r in &self.rows {
            s.push_str(&format!(
                "{},{},{},{},{}\n",
                r.degree, r.j, r.empirical, r.target, r.gap
            ));
        }
        s
    }

    /// Largest gap at the final degree.
    pub fn final_max_gap(&self) -> f64 {
        let last = self.rows.last().map(|r| r.degree);
        self.rows
            .iter()
            .filter(|r| Some(r.degree) == last)
            .map(|r| r.gap)
            .fold(0.0, f64::max)
    }

    pub fn gaps(&self, j: usize) -> Vec<f64> {
        self.rows
            .iter()
            .filter(|r| r.j == j)
            .map(|r| r.gap)
            .collect()
    }
}

/// Compares exact empirical moments m_1..m_K of each polynomial with `target`.
pub fn limit_compare<I>(polys: I, target: &MomentSeq, order: usize) -> Result<LimitReport>
where
    I: IntoIterator<Item = MonicPoly>,
{
    if target.order() < order {
        return Err(Error::OrderMismatch(target.order(), order));
    }
    let mut rows = Vec::new();
    let mut prev: Option<(usize, Vec<f64>)> = None;
    let mut non_monotone = false;
    for p in polys {
        let d = p.degree();
        if let Some((pd, _)) = &prev {
            if d <= *pd {
                return Err(Error::InvalidParameter(format!(
                    "degrees must increase: {pd} then {d}"
                )));
            }
        }
        let emp = empirical_moments(&p, order);
        let mut gaps = Vec::with_capacity(order);
        for j in 1..=order {
            let gap = rational_to_f64(&(emp.moment(j) - target.moment(j))).abs();
            rows.push(LimitRow {
                degree: d,
                j,
                empirical: rational_to_f64(emp.moment(j)),
                target: rational_to_f64(target.moment(j)),
                gap,
            });
            gaps.push(gap);
        }
        if let Some((_, pg)) = &prev {
            non_monotone |= gaps
                .iter()
                .zip(pg)
                .any(|(g, h)| *g > *h * (1.0 + 1e-12) + 1e-300);
        }
        prev = Some((d, gaps));
    }
    Ok(LimitReport { rows, non_monotone })
}

/// alpha^2 with m_2j(lhs) = (alpha^2)^j m_2j(rhs) for all j, both symmetric.
pub fn solve_even_dilation(lhs: &MomentSeq, rhs: &MomentSeq) -> Option<Rational> {
    if !lhs.is_symmetric() || !rhs.is_symmetric() || lhs.order() != rhs.order() {
        return None;
    }
    let j0 = (1..=lhs.order() / 2).find(|&j| !rhs.moment(2 * j).is_zero())?;
    if j0 != 1 {
        return None;
    }
    let a = lhs.moment(2) / rhs.moment(2);
    (dilate_even(rhs, &a) == *lhs).then_some(a)
}

/// Symmetrization of an S-rational measure against an even S-rational
/// closed form, with the dilation factor (squared) printed alongside it.
#[derive(Debug, Clone)]
pub struct SymMeasureCase {
    pub name: &'static str,
    pub mu: SRationalSpec,
    pub sym: SRationalSpec,
    pub printed_alpha_sq: Rational,
}

/// Symmetrizations of MP, reversed MP, free beta and their products.
pub fn sym_measure_cases(
    a: &Rational,
    b: &Rational,
    c: &Rational,
    d: &Rational,
) -> Vec<SymMeasureCase> {
    let one = Rational::one;
    let two = || from_usize(2);
    let ac23 = (a + c) * Rational::new(2.into(), 3.into());
    vec![
        SymMeasureCase {
            name: "MP",
            mu: SRationalSpec::new(vec![b.clone()], vec![]),
            sym: SRationalSpec::new(vec![two() * b, one()], vec![]),
            printed_alpha_sq: from_usize(4),
        },
        SymMeasureCase {
            name: "RMP",
            mu: SRationalSpec::new(vec![], vec![a.clone()]),
            sym: SRationalSpec::new(vec![one()], vec![two() * a, a.clone(), a.clone()]),
            printed_alpha_sq: -one(),
        },
        SymMeasureCase {
            name: "free beta",
            mu: SRationalSpec::new(vec![b.clone()], vec![a.clone()]),
            sym: SRationalSpec::new(
                vec![one(), two() * b, two() * a - two() * b],
                vec![two() * a, a.clone(), a.clone()],
            ),
            printed_alpha_sq: one(),
        },
        SymMeasureCase {
            name: "MP x MP",
            mu: SRationalSpec::new(vec![b.clone(), d.clone()], vec![]),
            sym: SRationalSpec::new(
                vec![one(), two() * b, two() * d, b + d, b + d],
                vec![two() * b + two() * d],
            ),
            printed_alpha_sq: from_usize(16),
        },
        SymMeasureCase {
            name: "RMP x RMP",
            mu: SRationalSpec::new(vec![], vec![a.clone(), c.clone()]),
            sym: SRationalSpec::new(
                vec![ac23.clone(), ac23.clone(), ac23, one()],
                vec![
                    two() * a,
                    two() * c,
                    a.clone(),
                    c.clone(),
                    a.clone(),
                    c.clone(),
                    a + c,
                    a + c,
                ],
            ),
            printed_alpha_sq: Rational::new((-64).into(), 27.into()),
        },
    ]
}

/// Solved alpha^2 with Sym(mu) = Dil_alpha sym, or None if no single factor fits.
pub fn solve_sym_measure_case(case: &SymMeasureCase, order: usize) -> Result<Option<Rational>> {
    let lhs = sym_measure(&s_rational_moments(&case.mu, order)?);
    let rhs = s_rational_even_moments(&case.sym, order)?;
    Ok(solve_even_dilation(&lhs, &rhs))
}

/// Even measure Dil_{sqrt(scale_sq)} of the square root of an S-rational measure.
#[derive(Debug, Clone)]
pub struct EvenMeasure {
    pub scale_sq: Rational,
    pub spec: SRationalSpec,
}

impl EvenMeasure {
    pub fn plain(upper: Vec<Rational>, lower: Vec<Rational>) -> Self {
        EvenMeasure {
            scale_sq: Rational::one(),
            spec: SRationalSpec::new(upper, lower),
        }
    }

    pub fn moments(&self, order: usize) -> Result<MomentSeq> {
        Ok(dilate_even(
            &s_rational_even_moments(&self.spec, order)?,
            &self.scale_sq,
        ))
    }
}

#[derive(Debug, Clone)]
pub struct EvenSumCase {
    pub name: &'static str,
    pub mu: EvenMeasure,
    pub nu: EvenMeasure,
    pub sum: EvenMeasure,
}

/// Free additive convolutions of even S-rational measures.
pub fn even_sum_cases(
    a: &Rational,
    a1: &Rational,
    a2: &Rational,
    b1: &Rational,
    b2: &Rational,
    c1: &Rational,
    c2: &Rational,
) -> Vec<EvenSumCase> {
    let one = Rational::one;
    let two = || from_usize(2);
    let h = (a1 + a2) / two();
    vec![
        EvenSumCase {
            name: "row 1",
            mu: EvenMeasure::plain(vec![one()], vec![a1.clone()]),
            nu: EvenMeasure::plain(vec![one()], vec![a2.clone()]),
            sum: EvenMeasure {
                scale_sq: from_usize(4),
                spec: SRationalSpec::new(
                    vec![h.clone(), h, one()],
                    vec![a1.clone(), a2.clone(), a1 + a2],
                ),
            },
        },
        EvenSumCase {
            name: "row 2",
            mu: EvenMeasure {
                scale_sq: c1.clone(),
                spec: SRationalSpec::new(vec![one()], vec![]),
            },
            nu: EvenMeasure {
                scale_sq: c2.clone(),
                spec: SRationalSpec::new(vec![one()], vec![]),
            },
            sum: EvenMeasure {
                scale_sq: c1 + c2,
                spec: SRationalSpec::new(vec![one()], vec![]),
            },
        },
        EvenSumCase {
            name: "row 3",
            mu: EvenMeasure::plain(vec![b1.clone(), one()], vec![]),
            nu: EvenMeasure::plain(vec![b2.clone(), one()], vec![]),
            sum: EvenMeasure::plain(vec![b1 + b2, one()], vec![]),
        },
        EvenSumCase {
            name: "row 4",
            mu: EvenMeasure::plain(vec![b1 + b2 - a, one()], vec![]),
            nu: EvenMeasure::plain(vec![a - b1, a - b2, one()], vec![a.clone()]),
            sum: EvenMeasure::plain(vec![b1.clone(), b2.clone(), one()], vec![a.clone()]),
        },
        EvenSumCase {
            name: "row 5",
            mu: EvenMeasure::plain(vec![b1.clone(), b2.clone(), one()], vec![b1 + b2]),
            nu: EvenMeasure::plain(vec![b1.clone(), b2.clone(), one()], vec![b1 + b2]),
            sum: EvenMeasure::plain(vec![two() * b1, two() * b2, one()], vec![two() * (b1 + b2)]),
        },
    ]
}

pub fn verify_even_sum_case(case: &EvenSumCase, order: usize) -> Result<bool> {
    let lhs = free_add(&case.mu.moments(order)?, &case.nu.moments(order)?)?;
    Ok(lhs == case.sum.moments(order)?)
}
