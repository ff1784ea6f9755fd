//! The finite free commutator `p □_n q = Sym(p) ⊠ Sym(q) ⊠ z_n`.

use num_traits::One;

use crate::conv::{boxtimes, boxtimes_divide, symmetrize};
use crate::error::{Error, Result};
use crate::families::{bernoulli, bessel, hermite, laguerre_scaled, projection};
use crate::hypergeom::{hgp, hgp_even, z_kernel};
use crate::numeric::{from_usize, int, rat, Rational};
use crate::poly::{DilationScale, MonicPoly};
use crate::roots::sturm_certificate;

pub fn box_square(p: &MonicPoly, q: &MonicPoly) -> Result<MonicPoly> {
    if p.degree() != q.degree() {
        return Err(Error::DegreeMismatch(p.degree(), q.degree()));
    }
    let z = z_kernel(p.degree())?;
    boxtimes(&boxtimes(&symmetrize(p), &symmetrize(q))?, &z)
}

fn h(m: usize) -> Rational {
    Rational::one() / (from_usize(2) * from_usize(m))
}

/// Dil_{1/4} H_m[2, 2; 1 - 1/(2m), 2 + 1/m].
fn even_part_kernel(m: usize) -> Result<MonicPoly> {
    let lower = [
        Rational::one() - h(m),
        int(2) + Rational::one() / from_usize(m),
    ];
    hgp(m, &[int(2), int(2)], &lower)?.dilate_by(&rat(1, 4))
}

/// Q_m(Sym p) ⊠_m Q_m(Sym q) ⊠_m Dil_{1/4} H_m[2,2; 1-1/(2m), 2+1/m].
pub fn commutator_even_part(p: &MonicPoly, q: &MonicPoly) -> Result<MonicPoly> {
    if p.degree() != q.degree() {
        return Err(Error::DegreeMismatch(p.degree(), q.degree()));
    }
    let n = p.degree();
    if n % 2 == 1 {
        return Err(Error::OddDegree(n));
    }
    let a = symmetrize(p).halve()?;
    let b = symmetrize(q).halve()?;
    boxtimes(&boxtimes(&a, &b)?, &even_part_kernel(n / 2)?)
}

/// Outcome of the factorization test Q_m(Sym q) = H_m[1 - 1/(2m); .] ⊠_m r.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Hypothesis58 {
    /// The quotient r, certified nonnegative-rooted.
    Holds(MonicPoly),
    Fails(String),
}

impl Hypothesis58 {
    pub fn holds(&self) -> bool {
        matches!(self, Hypothesis58::Holds(_))
    }
}

/// Divides Q_m(Sym q) by H_m[1 - 1/(2m); .] and certifies the quotient.
///
/// The divisor has no vanishing coefficient, so a `Fails` result always
/// comes from the positivity test or from an odd degree.
pub fn check_hypothesis_58(q: &MonicPoly) -> Hypothesis58 {
    let n = q.degree();
    if n % 2 == 1 {
        return Hypothesis58::Fails(format!("degree {n} is odd"));
    }
    let m = n / 2;
    let target = symmetrize(q).halve().expect("even degree");
    let divisor = hgp(m, &[Rational::one() - h(m)], &[]).expect("no lower parameters");
    match boxtimes_divide(&target, &divisor) {
        Err(e) => Hypothesis58::Fails(e.to_string()),
        Ok(r) => {
            let c = sturm_certificate(&r);
            if c.is_nonnegative_rooted() {
                Hypothesis58::Holds(r)
            } else {
                Hypothesis58::Fails(format!(
                    "quotient has {} real roots of {} ({} negative)",
                    c.total_real_with_multiplicity, c.degree, c.count_negative
                ))
            }
        }
    }
}

/// Commutator together with its certificate data.
#[derive(Debug, Clone)]
pub struct CommutatorReport {
    pub result: MonicPoly,
    pub real_rooted: bool,
    pub hypothesis_58: Hypothesis58,
}

pub fn commutator_report(p: &MonicPoly, q: &MonicPoly) -> Result<CommutatorReport> {
    let result = box_square(p, q)?;
    let real_rooted = sturm_certificate(&result).is_real_rooted();
    let hp = check_hypothesis_58(p);
    let hypothesis_58 = if hp.holds() {
        hp
    } else {
        check_hypothesis_58(q)
    };
    Ok(CommutatorReport {
        result,
        real_rooted,
        hypothesis_58,
    })
}

/// Worked commutator examples; each yields (computed, closed form).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CommutatorExample {
    /// Table row: R_{2m}^{(m)} with itself.
    TableProjection,
    /// Table row: H^E_m[1 - 1/(2m); .] with itself.
    TableEvenLaguerre,
    /// Table row: H^E_m[1 - 1/(2m); .] with R_{2m}^{(m)}.
    TableEvenLaguerreProjection,
    /// Table row: H_{2m}[b; .] with H_{2m}[d; .].
    TableLaguerre(Rational, Rational),
    /// Table row: H_{2m}[1; 2] with itself.
    TableJacobi,
    Hermite,
    HermiteProjection,
    LaguerreScaled(Rational, Rational),
    Bessel(Rational, Rational),
    Projections(usize, usize),
    Bernoulli,
    /// H_{2m}[b; a] with H_{2m}[d; c], given as (a, b, c, d).
    Jacobi(Rational, Rational, Rational, Rational),
}

/// Returns (box_square of the inputs, closed form) for an example at degree 2m.
pub fn table3_catalog(row: &CommutatorExample, m: usize) -> Result<(MonicPoly, MonicPoly)> {
    use CommutatorExample as E;
    if m == 0 {
        return Err(Error::InvalidParameter("m must be positive".into()));
    }
    let n = 2 * m;
    let mm = from_usize(m);
    let hh = h(m);
    let one_h = Rational::one() - &hh;
    let two_m = int(2) + Rational::one() / &mm;
    let dil = |p: MonicPoly, r: Rational| p.dilate_by(&r);
    let (p, q, rhs) = match row {
        E::TableProjection => {
            let r = projection(n, m)?;
            let rhs = dil(hgp_even(m, &[int(1), int(1)], &[one_h, two_m])?, rat(1, 2))?;
            (r.clone(), r, rhs)
        }
        E::TableEvenLaguerre => {
            let a = hgp_even(m, &[one_h.clone()], &[])?;
            let rhs = hgp_even(m, &[one_h, int(2), int(2)], &[two_m])?;
            (a.clone(), a, rhs)
        }
        E::TableEvenLaguerreProjection => {
            let a = hgp_even(m, &[one_h], &[])?;
            let r = hgp(n, &[rat(1, 2)], &[int(1)])?;
            let rhs = hgp_even(m, &[int(1), int(2)], &[two_m])?
                .dilate(&DilationScale::SqrtRational(rat(1, 2)))?;
            (a, r, rhs)
        }
        E::TableLaguerre(b, d) => {
            let p = hgp(n, &[b.clone()], &[])?;
            let q = hgp(n, &[d.clone()], &[])?;
            let up = [int(2) * b, int(2) * d, int(2), int(2), one_h];
            let rhs = dil(hgp_even(m, &up, &[two_m])?, int(2))?;
            (p, q, rhs)
        }
        E::TableJacobi => {
            let p = hgp(n, &[int(1)], &[int(2)])?;
            let two_h = int(2) - &hh;
            let up = [int(2), int(2), int(2), int(2), one_h];
            let lo = [int(4), int(4), two_h.clone(), two_h, two_m];
            let rhs = dil(hgp_even(m, &up, &lo)?, rat(1, 2))?;
            (p.clone(), p, rhs)
        }
        E::Hermite => {
            let p = hermite(n)?;
            let rhs = dil(
                hgp_even(m, &[one_h, int(2), int(2)], &[two_m])?,
                Rational::one() / &mm,
            )?;
            (p.clone(), p, rhs)
        }
        E::HermiteProjection => {
            let rhs = hgp_even(m, &[int(1), int(2)], &[two_m])?.dilate(
                &DilationScale::SqrtRational(Rational::one() / (int(2) * &mm)),
            )?;
            (hermite(n)?, projection(n, m)?, rhs)
        }
        E::LaguerreScaled(l, u) => {
            let up = [int(2) * l, int(2) * u, int(2), int(2), one_h];
            let rhs = dil(
                hgp_even(m, &up, &[two_m])?,
                Rational::one() / (int(2) * &mm * &mm),
            )?;
            (laguerre_scaled(n, l)?, laguerre_scaled(n, u)?, rhs)
        }
        E::Bessel(a, b) => {
            let lo = [
                int(2) * a,
                a.clone(),
                a - &hh,
                int(2) * b,
                b.clone(),
                b - &hh,
                two_m,
            ];
            let rhs = dil(
                hgp_even(m, &[one_h, int(2), int(2)], &lo)?,
                int(2) * &mm * &mm,
            )?;
            (bessel(n, a)?, bessel(n, b)?, rhs)
        }
        E::Projections(r, s) => {
            let (r, s) = (*r, *s);
            let (rm, sm) = (from_usize(r) / &mm, from_usize(s) / &mm);
            let up = [rm.clone(), int(2) - rm, sm.clone(), int(2) - sm];
            let lo = [int(1), int(1), one_h, two_m];
            let rhs = dil(hgp_even(m, &up, &lo)?, rat(1, 2))?;
            (projection(n, r)?, projection(n, s)?, rhs)
        }
        E::Bernoulli => {
            let b = bernoulli(n)?;
            let rhs = dil(hgp_even(m, &[int(1), int(1)], &[one_h, two_m])?, int(2))?;
            (b.clone(), b, rhs)
        }
        E::Jacobi(a, b, c, d) => {
            let p = hgp(n, &[b.clone()], &[a.clone()])?;
            let q = hgp(n, &[d.clone()], &[c.clone()])?;
            let up = [
                int(2) * b,
                int(2) * a - int(2) * b,
                int(2) * d,
                int(2) * c - int(2) * d,
                int(2),
                int(2),
                one_h,
            ];
            let lo = [
                int(2) * a,
                a.clone(),
                a - &hh,
                int(2) * c,
                c.clone(),
                c - &hh,
                two_m,
            ];
            let rhs = dil(hgp_even(m, &up, &lo)?, rat(1, 2))?;
            (p, q, rhs)
        }
    };
    Ok((box_square(&p, &q)?, rhs))
}

/// The five table rows with fixed sample parameters for the Laguerre row.
pub fn table3_rows() -> Vec<(String, CommutatorExample)> {
    use CommutatorExample as E;
    vec![
        ("projection □ projection".into(), E::TableProjection),
        ("even Laguerre □ even Laguerre".into(), E::TableEvenLaguerre),
        (
            "even Laguerre □ projection".into(),
            E::TableEvenLaguerreProjection,
        ),
        (
            "Laguerre(b=3/2) □ Laguerre(d=5/3)".into(),
            E::TableLaguerre(rat(3, 2), rat(5, 3)),
        ),
        ("Jacobi[1;2] □ Jacobi[1;2]".into(), E::TableJacobi),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(e: &[Rational]) -> MonicPoly {
        MonicPoly::new(e.to_vec()).unwrap()
    }

    #[test]
    fn box_square_examples() {
        let h2 = hermite(2).unwrap();
        assert_eq!(
            box_square(&h2, &h2).unwrap(),
            p(&[int(1), int(0), rat(-2, 3)])
        );
        let b2 = bernoulli(2).unwrap();
        assert_eq!(
            box_square(&b2, &b2).unwrap(),
            p(&[int(1), int(0), rat(-8, 3)])
        );
        let c = MonicPoly::point(&rat(3, 2), 4);
        let q = MonicPoly::from_roots(&[int(1), int(-2), rat(1, 3), int(5)]).unwrap();
        assert_eq!(box_square(&q, &c).unwrap(), MonicPoly::x_pow(4));
    }

    #[test]
    fn even_part_examples() {
        let h2 = hermite(2).unwrap();
        assert_eq!(
            commutator_even_part(&h2, &h2).unwrap(),
            p(&[int(1), rat(2, 3)])
        );
        let r = projection(2, 1).unwrap();
        assert_eq!(
            commutator_even_part(&r, &r).unwrap(),
            box_square(&r, &r).unwrap().halve().unwrap()
        );
    }

    #[test]
    fn hypothesis_examples() {
        for m in 1..=6 {
            assert!(check_hypothesis_58(&hermite(2 * m).unwrap()).holds());
            assert!(check_hypothesis_58(&laguerre_scaled(2 * m, &rat(1, 2)).unwrap()).holds());
            assert!(check_hypothesis_58(&laguerre_scaled(2 * m, &int(3)).unwrap()).holds());
            assert!(check_hypothesis_58(&bessel(2 * m, &rat(-3, 2)).unwrap()).holds());
        }
        assert!(!check_hypothesis_58(&projection(4, 2).unwrap()).holds());
        assert!(!check_hypothesis_58(&projection(3, 1).unwrap()).holds());
    }

    #[test]
    fn catalog_anchors() {
        let (l, r) = table3_catalog(&CommutatorExample::Hermite, 1).unwrap();
        assert_eq!(l, p(&[int(1), int(0), rat(-2, 3)]));
        assert_eq!(l, r);
        let (l, r) = table3_catalog(&CommutatorExample::Bernoulli, 1).unwrap();
        assert_eq!(l, p(&[int(1), int(0), rat(-8, 3)]));
        assert_eq!(l, r);
        for m in 1..=3 {
            let (l, r) =
                table3_catalog(&CommutatorExample::LaguerreScaled(int(1), int(1)), m).unwrap();
            assert_eq!(l, r, "m = {m}");
        }
    }

    #[test]
    fn remark_positive_rooted() {
        for m in 1..=12usize {
            let mm = from_usize(m);
            let lo = [Rational::one() - h(m), int(2) + Rational::one() / mm];
            let q = hgp(m, &[int(1), int(1)], &lo).unwrap();
            assert!(sturm_certificate(&q).is_positive_rooted(), "m = {m}");
        }
    }
}
