//! Data-driven identity checks for the symmetrization, even-sum and commutator
//! tables and for the series product identities. See `fixtures/README.md`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;

use crate::commutator::box_square;
use crate::conv::{boxplus, from_differential_series, symmetrize};
use crate::error::{Error, Result};
use crate::hypergeom::{hgp, hgp_even};
use crate::numeric::{from_usize, Rational};
use crate::poly::{DilationScale, MonicPoly};

pub type Bindings = BTreeMap<String, Rational>;

/// Evaluates an arithmetic expression over exact rationals.
pub fn eval_expr(src: &str, vars: &Bindings) -> Result<Rational> {
    let mut p = Parser {
        s: src.as_bytes(),
        i: 0,
        vars,
        src,
    };
    let v = p.expr()?;
    p.skip_ws();
    if p.i != p.s.len() {
        return Err(p.err("trailing input"));
    }
    Ok(v)
}

struct Parser<'a> {
    s: &'a [u8],
    i: usize,
    vars: &'a Bindings,
    src: &'a str,
}

impl Parser<'_> {
    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at offset {} in {:?}", self.i, self.src))
    }

    fn skip_ws(&mut self) {
        while self.i < self.s.len() && self.s[self.i].is_ascii_whitespace() {
            self.i += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.i).copied()
    }

    fn expr(&mut self) -> Result<Rational> {
        let mut v = self.term()?;
        while let Some(c @ (b'+' | b'-')) = self.peek() {
            self.i += 1;
            let t = self.term()?;
            if c == b'+' {
                v += t;
            } else {
                v -= t;
            }
        }
        Ok(v)
    }

    fn term(&mut self) -> Result<Rational> {
        let mut v = self.unary()?;
        while let Some(c @ (b'*' | b'/')) = self.peek() {
            self.i += 1;
            let t = self.unary()?;
            if c == b'*' {
                v *= t;
            } else {
                if t.is_zero() {
                    return Err(Error::DegenerateParameter(format!(
                        "division by zero in {:?}",
                        self.src
                    )));
                }
                v /= t;
            }
        }
        Ok(v)
    }

    fn unary(&mut self) -> Result<Rational> {
        if self.peek() == Some(b'-') {
            self.i += 1;
            return Ok(-self.unary()?);
        }
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.i += 1;
            self.skip_ws();
            let start = self.i;
            while self.i < self.s.len() && self.s[self.i].is_ascii_digit() {
                self.i += 1;
            }
            let e: i32 = std::str::from_utf8(&self.s[start..self.i])
                .ok()
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| self.err("expected integer exponent"))?;
            return Ok(num_traits::pow(base, e as usize));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Rational> {
        match self.peek() {
            Some(b'(') => {
                self.i += 1;
                let v = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.i += 1;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.i;
                while self.i < self.s.len() && self.s[self.i].is_ascii_digit() {
                    self.i += 1;
                }
                let t = std::str::from_utf8(&self.s[start..self.i]).expect("ascii");
                Ok(Rational::from_integer(t.parse::<BigInt>().expect("digits")))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.i;
                while self.i < self.s.len()
                    && (self.s[self.i].is_ascii_alphanumeric() || self.s[self.i] == b'_')
                {
                    self.i += 1;
                }
                let name = std::str::from_utf8(&self.s[start..self.i]).expect("ascii");
                self.vars
                    .get(name)
                    .cloned()
                    .ok_or_else(|| self.err(&format!("unknown variable {name:?}")))
            }
            _ => Err(self.err("expected a number, variable or '('")),
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
pub struct ParamRange {
    pub min: String,
    pub max: String,
}

#[derive(Debug, Clone, Deserialize)]
pub struct DilationSpec {
    pub kind: String,
    pub value: String,
}

#[derive(Debug, Clone, Deserialize)]
pub struct Term {
    pub kind: String,
    pub degree: String,
    pub upper: Vec<String>,
    pub lower: Vec<String>,
    #[serde(default)]
    pub dilations: Vec<DilationSpec>,
}

fn eval_all(v: &[String], b: &Bindings) -> Result<Vec<Rational>> {
    v.iter().map(|s| eval_expr(s, b)).collect()
}

fn eval_natural(s: &str, b: &Bindings) -> Result<usize> {
    let v = eval_expr(s, b)?;
    if !v.is_integer() || v < Rational::one() {
        return Err(Error::InvalidParameter(format!(
            "degree {s:?} evaluates to {v}"
        )));
    }
    v.to_integer()
        .try_into()
        .map_err(|_| Error::InvalidParameter(format!("degree {v} too large")))
}

impl Term {
    pub fn build(&self, b: &Bindings) -> Result<MonicPoly> {
        let d = eval_natural(&self.degree, b)?;
        let up = eval_all(&self.upper, b)?;
        let lo = eval_all(&self.lower, b)?;
        let mut p = match self.kind.as_str() {
            "plain" => hgp(d, &up, &lo)?,
            "even" => hgp_even(d, &up, &lo)?,
            k => return Err(Error::Parse(format!("unknown term kind {k:?}"))),
        };
        for dil in &self.dilations {
            let v = eval_expr(&dil.value, b)?;
            let scale = match dil.kind.as_str() {
                "rational" => DilationScale::Rational(v),
                "sqrt_rational" => DilationScale::SqrtRational(v),
                "imaginary_rational" => DilationScale::ImaginaryRational(v),
                k => return Err(Error::Parse(format!("unknown dilation kind {k:?}"))),
            };
            p = p.dilate(&scale)?;
        }
        Ok(p)
    }
}

/// Row of the symmetrization table.
#[derive(Debug, Clone, Deserialize)]
pub struct SymRow {
    pub name: String,
    #[serde(default)]
    pub params: BTreeMap<String, ParamRange>,
    pub lhs: Term,
    pub rhs: Term,
}

/// Row with two inputs and a closed form (even sums, commutators).
#[derive(Debug, Clone, Deserialize)]
pub struct PairRow {
    pub name: String,
    #[serde(default)]
    pub params: BTreeMap<String, ParamRange>,
    pub p: Term,
    pub q: Term,
    pub rhs: Term,
}

#[derive(Debug, Clone, Deserialize)]
pub struct SeriesSpec {
    pub c: String,
    pub l: usize,
    pub upper: Vec<String>,
    pub lower: Vec<String>,
}

/// Product identity of three series at total degree `degree`.
#[derive(Debug, Clone, Deserialize)]
pub struct ProductIdentityFixture {
    pub name: String,
    #[serde(default)]
    pub params: BTreeMap<String, ParamRange>,
    pub degree: String,
    pub series: [SeriesSpec; 3],
}

#[derive(Deserialize)]
struct Table<T> {
    rows: Vec<T>,
}

fn load<T: for<'de> Deserialize<'de>>(src: &str) -> Vec<T> {
    serde_json::from_str::<Table<T>>(src)
        .expect("bundled fixture parses")
        .rows
}

pub fn table1() -> Vec<SymRow> {
    load(include_str!("../fixtures/table1.json"))
}

pub fn table2() -> Vec<PairRow> {
    load(include_str!("../fixtures/table2.json"))
}

pub fn table3() -> Vec<PairRow> {
    load(include_str!("../fixtures/table3.json"))
}

pub fn product_identities() -> Vec<ProductIdentityFixture> {
    load(include_str!("../fixtures/product_identities.json"))
}

fn with_m(bindings: &Bindings, m: usize) -> Bindings {
    let mut b = bindings.clone();
    b.insert("m".into(), from_usize(m));
    b
}

/// Sym(lhs) = rhs under the bindings at half degree m.
pub fn verify_symmetrization_row(row: &SymRow, bindings: &Bindings, m: usize) -> Result<bool> {
    let b = with_m(bindings, m);
    Ok(symmetrize(&row.lhs.build(&b)?) == row.rhs.build(&b)?)
}

/// p ⊞ q = rhs.
pub fn verify_sum_row(row: &PairRow, bindings: &Bindings, m: usize) -> Result<bool> {
    let b = with_m(bindings, m);
    Ok(boxplus(&row.p.build(&b)?, &row.q.build(&b)?)? == row.rhs.build(&b)?)
}

/// p □ q = rhs.
pub fn verify_commutator_row(row: &PairRow, bindings: &Bindings, m: usize) -> Result<bool> {
    let b = with_m(bindings, m);
    Ok(box_square(&row.p.build(&b)?, &row.q.build(&b)?)? == row.rhs.build(&b)?)
}

/// Builds the three polynomials of a product identity.
pub fn product_identity_polys(
    fixture: &ProductIdentityFixture,
    bindings: &Bindings,
    m: usize,
) -> Result<[MonicPoly; 3]> {
    let b = with_m(bindings, m);
    let n = eval_natural(&fixture.degree, &b)?;
    let build = |s: &SeriesSpec| -> Result<MonicPoly> {
        if s.l == 0 || n % s.l != 0 {
            return Err(Error::InvalidParameter(format!(
                "power {} does not divide degree {n}",
                s.l
            )));
        }
        let c = eval_expr(&s.c, &b)?;
        let lower = eval_all(&s.lower, &b)?;
        let upper = eval_all(&s.upper, &b)?;
        let p = from_differential_series(&c, s.l, n / s.l, &lower, &upper)?;
        if p.degree() != n {
            return Err(Error::DegreeMismatch(p.degree(), n));
        }
        Ok(p)
    };
    Ok([
        build(&fixture.series[0])?,
        build(&fixture.series[1])?,
        build(&fixture.series[2])?,
    ])
}

/// p1 ⊞ p2 = p3 for the three series of a product identity.
pub fn verify_product_identity(
    fixture: &ProductIdentityFixture,
    bindings: &Bindings,
    m: usize,
) -> Result<bool> {
    let [p1, p2, p3] = product_identity_polys(fixture, bindings, m)?;
    Ok(boxplus(&p1, &p2)? == p3)
}

/// Random rational p/q (q in 1..=6) in [min, max].
pub fn sample_binding(
    params: &BTreeMap<String, ParamRange>,
    rng: &mut impl Rng,
) -> Result<Bindings> {
    let empty = Bindings::new();
    let mut out = Bindings::new();
    for (name, range) in params {
        let lo = eval_expr(&range.min, &empty)?;
        let hi = eval_expr(&range.max, &empty)?;
        let d: i64 = rng.gen_range(1..=6);
        let dd = Rational::from_integer(d.into());
        let nlo = (&lo * &dd).ceil().to_integer();
        let nhi = (&hi * &dd).floor().to_integer();
        let nlo: i64 = nlo
            .try_into()
            .map_err(|_| Error::InvalidParameter("range too wide".into()))?;
        let nhi: i64 = nhi
            .try_into()
            .map_err(|_| Error::InvalidParameter("range too wide".into()))?;
        if nlo > nhi {
            return Err(Error::InvalidParameter(format!("empty range for {name}")));
        }
        let n = rng.gen_range(nlo..=nhi);
        out.insert(name.clone(), Rational::new(n.into(), d.into()));
    }
    Ok(out)
}

/// Result of running one fixture row at one m.
#[derive(Debug, Clone)]
pub struct RowOutcome {
    pub table: String,
    pub row: String,
    pub m: usize,
    pub checked: usize,
    pub skipped: usize,
    pub failed: usize,
    pub first_failure: Option<String>,
}

impl RowOutcome {
    pub fn passed(&self) -> bool {
        self.failed == 0 && self.checked > 0
    }
}

fn skippable(e: &Error) -> bool {
    matches!(
        e,
        Error::InvalidLowerParameter { .. } | Error::DegenerateParameter(_) | Error::ZeroScale
    )
}

fn show(b: &Bindings) -> String {
    b.iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect::<Vec<_>>()
        .join(", ")
}

/// Runs `check` on up to `per_m` valid random bindings per m.
fn run_row(
    table: &str,
    name: &str,
    params: &BTreeMap<String, ParamRange>,
    ms: &[usize],
    per_m: usize,
    seed: u64,
    check: impl Fn(&Bindings, usize) -> Result<bool>,
) -> Vec<RowOutcome> {
    let mut out = Vec::new();
    for &m in ms {
        let mut rng =
            ChaCha8Rng::seed_from_u64(seed ^ (m as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
        let mut o = RowOutcome {
            table: table.into(),
            row: name.into(),
            m,
            checked: 0,
            skipped: 0,
            failed: 0,
            first_failure: None,
        };
        let want = if params.is_empty() { 1 } else { per_m };
        let mut attempts = 0;
        while o.checked < want && attempts < 50 * want {
            attempts += 1;
            let b = match sample_binding(params, &mut rng) {
                Ok(b) => b,
                Err(e) => {
                    o.failed += 1;
                    o.first_failure.get_or_insert(e.to_string());
                    break;
                }
            };
            match check(&b, m) {
                Ok(true) => o.checked += 1,
                Ok(false) => {
                    o.checked += 1;
                    o.failed += 1;
                    o.first_failure
                        .get_or_insert(format!("mismatch at m={m} [{}]", show(&b)));
                }
                Err(e) if skippable(&e) => o.skipped += 1,
                Err(e) => {
                    o.checked += 1;
                    o.failed += 1;
                    o.first_failure
                        .get_or_insert(format!("error at m={m} [{}]: {e}", show(&b)));
                }
            }
        }
        out.push(o);
    }
    out
}

pub fn run_table1(ms: &[usize], per_m: usize, seed: u64) -> Vec<RowOutcome> {
    table1()
        .iter()
        .flat_map(|r| {
            run_row("table1", &r.name, &r.params, ms, per_m, seed, |b, m| {
                verify_symmetrization_row(r, b, m)
            })
        })
        .collect()
}

pub fn run_table2(ms: &[usize], per_m: usize, seed: u64) -> Vec<RowOutcome> {
    table2()
        .iter()
        .flat_map(|r| {
            run_row("table2", &r.name, &r.params, ms, per_m, seed, |b, m| {
                verify_sum_row(r, b, m)
            })
        })
        .collect()
}

pub fn run_table3(ms: &[usize], per_m: usize, seed: u64) -> Vec<RowOutcome> {
    table3()
        .iter()
        .flat_map(|r| {
            run_row("table3", &r.name, &r.params, ms, per_m, seed, |b, m| {
                verify_commutator_row(r, b, m)
            })
        })
        .collect()
}

pub fn run_product_identities(ms: &[usize], per_m: usize, seed: u64) -> Vec<RowOutcome> {
    product_identities()
        .iter()
        .flat_map(|r| {
            run_row("products", &r.name, &r.params, ms, per_m, seed, |b, m| {
                verify_product_identity(r, b, m)
            })
        })
        .collect()
}
