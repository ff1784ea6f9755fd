//! Verification suites with one pass/fail line per identity.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::commutator::{
    box_square, check_hypothesis_58, commutator_even_part, table3_catalog, CommutatorExample,
};
use crate::conv::{boxplus, boxtimes, halve_boxplus_identity_check, halve_boxtimes_identity_check};
use crate::error::{Error, Result};
use crate::families::{bernoulli, bessel, hermite, laguerre_scaled};
use crate::fixtures::{run_product_identities, run_table1, run_table2, run_table3, RowOutcome};
use crate::hypergeom::{
    boxtimes_hgp_merge, lower_is_valid, z_kernel, z_kernel_closed_form,
    zeros_on_one_factorization_check, HgpSpec,
};
use crate::measures::{
    cumulants_to_moments, empirical_moments, even_sum_cases, free_add, moments_to_cumulants,
    q_measure, s_rational_moments, solve_sym_measure_case, sqrt_measure, sym_measure,
    sym_measure_cases, verify_even_sum_case, MomentSeq, SRationalSpec,
};
use crate::numeric::{int, rat, Rational};
use crate::poly::MonicPoly;
use crate::rmt::{mc_compare, mc_expected_charpoly, Word, DEFAULT_Z_THRESHOLD};
use crate::roots::sturm_certificate;

pub const DEFAULT_SEED: u64 = 0x5eed_f1f0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Tables1,
    Tables2,
    Tables3,
    Thm216,
    Prop38,
    Prop312,
    Measures,
    Roots,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::Tables1,
        Suite::Tables2,
        Suite::Tables3,
        Suite::Thm216,
        Suite::Prop38,
        Suite::Prop312,
        Suite::Measures,
        Suite::Roots,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Tables1 => "tables1",
            Suite::Tables2 => "tables2",
            Suite::Tables3 => "tables3",
            Suite::Thm216 => "thm216",
            Suite::Prop38 => "prop38",
            Suite::Prop312 => "prop312",
            Suite::Measures => "measures",
            Suite::Roots => "roots",
        }
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckLine {
    pub suite: &'static str,
    pub identity: String,
    pub pass: bool,
    pub detail: String,
}

impl CheckLine {
    fn new(
        suite: &'static str,
        identity: impl Into<String>,
        pass: bool,
        detail: impl Into<String>,
    ) -> Self {
        CheckLine {
            suite,
            identity: identity.into(),
            pass,
            detail: detail.into(),
        }
    }
}

impl fmt::Display for CheckLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.pass { "PASS" } else { "FAIL" };
        write!(f, "{tag}  {:<9} {}", self.suite, self.identity)?;
        if !self.detail.is_empty() {
            write!(f, "  ({})", self.detail)?;
        }
        Ok(())
    }
}

pub fn first_failure(lines: &[CheckLine]) -> Option<&CheckLine> {
    lines.iter().find(|l| !l.pass)
}

pub fn run_suite(suite: Suite, seed: u64) -> Vec<CheckLine> {
    match suite {
        Suite::Tables1 => tables1(seed),
        Suite::Tables2 => tables2(seed),
        Suite::Tables3 => tables3(seed),
        Suite::Thm216 => merge_law(seed),
        Suite::Prop38 => halving_boxtimes(seed),
        Suite::Prop312 => halving_boxplus(seed),
        Suite::Measures => measures(seed),
        Suite::Roots => roots(seed),
    }
}

pub fn run_all(seed: u64) -> Vec<CheckLine> {
    Suite::ALL
        .iter()
        .flat_map(|&s| run_suite(s, seed))
        .collect()
}

const MS: [usize; 6] = [1, 2, 3, 4, 5, 6];
const BINDINGS_PER_M: usize = 20;

fn outcome_lines(suite: &'static str, v: Vec<RowOutcome>) -> Vec<CheckLine> {
    v.into_iter()
        .map(|o| {
            let mut detail = format!("{} checked, {} skipped", o.checked, o.skipped);
            if let Some(f) = &o.first_failure {
                detail.push_str(&format!("; {f}"));
            }
            CheckLine::new(suite, format!("{} m={}", o.row, o.m), o.passed(), detail)
        })
        .collect()
}

fn tables1(seed: u64) -> Vec<CheckLine> {
    let mut v = outcome_lines("tables1", run_table1(&MS, BINDINGS_PER_M, seed));
    let products = run_product_identities(&MS, BINDINGS_PER_M, seed);
    v.extend(outcome_lines("tables1", products));
    v
}

fn tables2(seed: u64) -> Vec<CheckLine> {
    let mut v = outcome_lines("tables2", run_table2(&MS, BINDINGS_PER_M, seed));
    let b = bernoulli(2).and_then(|b| boxplus(&b, &b));
    let want = MonicPoly::new(vec![int(1), int(0), int(-2)]).expect("monic");
    v.push(CheckLine::new(
        "tables2",
        "Bernoulli ⊞ Bernoulli m=1 is x^2 - 2",
        b.as_ref() == Ok(&want),
        show(&b),
    ));
    v
}

fn catalog_examples() -> Vec<(String, CommutatorExample)> {
    use CommutatorExample as E;
    vec![
        ("Hermite □ Hermite".into(), E::Hermite),
        ("Hermite □ projection".into(), E::HermiteProjection),
        (
            "Laguerre(1/2) □ Laguerre(3)".into(),
            E::LaguerreScaled(rat(1, 2), int(3)),
        ),
        (
            "Bessel(-3/2) □ Bessel(-5/2)".into(),
            E::Bessel(rat(-3, 2), rat(-5, 2)),
        ),
        ("Bernoulli □ Bernoulli".into(), E::Bernoulli),
        (
            "Jacobi[3/2;7/2] □ Jacobi[2;9/2]".into(),
            E::Jacobi(rat(7, 2), rat(3, 2), rat(9, 2), int(2)),
        ),
    ]
}

fn tables3(seed: u64) -> Vec<CheckLine> {
    let mut v = outcome_lines("tables3", run_table3(&MS, BINDINGS_PER_M, seed));
    for (name, ex) in catalog_examples() {
        for &m in &MS {
            let r = table3_catalog(&ex, m);
            let pass = matches!(&r, Ok((l, r)) if l == r);
            v.push(CheckLine::new(
                "tables3",
                format!("{name} m={m}"),
                pass,
                err_detail(&r),
            ));
        }
    }
    for m in MS {
        for r in 0..=m {
            for s in r..=m {
                let res = table3_catalog(&CommutatorExample::Projections(r, s), m);
                let pass = matches!(&res, Ok((l, r)) if l == r);
                if !pass || (r, s) == (1, m) {
                    v.push(CheckLine::new(
                        "tables3",
                        format!("projection({r}) □ projection({s}) m={m}"),
                        pass,
                        err_detail(&res),
                    ));
                }
            }
        }
    }
    for m in MS {
        let a = z_kernel(2 * m);
        let b = z_kernel_closed_form(m);
        let pass = matches!((&a, &b), (Ok(x), Ok(y)) if x == y);
        v.push(CheckLine::new(
            "tables3",
            format!("z kernel sum = closed form n={}", 2 * m),
            pass,
            "",
        ));
    }
    let anchors = [
        ("Hermite □ Hermite m=1 is x^2 - 2/3", hermite(2), rat(-2, 3)),
        (
            "Bernoulli □ Bernoulli m=1 is x^2 - 8/3",
            bernoulli(2),
            rat(-8, 3),
        ),
    ];
    for (name, p, c) in anchors {
        let got = p.and_then(|p| box_square(&p, &p));
        let want = MonicPoly::new(vec![int(1), int(0), c]).expect("monic");
        v.push(CheckLine::new(
            "tables3",
            name,
            got.as_ref() == Ok(&want),
            show(&got),
        ));
    }
    v
}

fn show(r: &Result<MonicPoly>) -> String {
    match r {
        Ok(p) => p.to_string(),
        Err(e) => e.to_string(),
    }
}

fn err_detail<T>(r: &Result<T>) -> String {
    match r {
        Err(e) => e.to_string(),
        Ok(_) => String::new(),
    }
}

fn rand_rat(rng: &mut ChaCha8Rng, span: i64) -> Rational {
    rat(rng.gen_range(-span..=span), rng.gen_range(1..=6))
}

fn rand_tuple(rng: &mut ChaCha8Rng, max_len: usize) -> Vec<Rational> {
    let len = rng.gen_range(0..=max_len);
    (0..len).map(|_| rand_rat(rng, 12)).collect()
}

fn rand_valid_lower(rng: &mut ChaCha8Rng, n: usize, max_len: usize) -> Vec<Rational> {
    let len = rng.gen_range(0..=max_len);
    (0..len)
        .map(|_| loop {
            let a = rand_rat(rng, 12);
            if lower_is_valid(&a, n) {
                break a;
            }
        })
        .collect()
}

fn rand_poly(rng: &mut ChaCha8Rng, n: usize) -> MonicPoly {
    let mut e = vec![Rational::one()];
    e.extend((1..=n).map(|_| rand_rat(rng, 9)));
    MonicPoly::new(e).expect("monic")
}

fn rand_even_poly(rng: &mut ChaCha8Rng, n: usize) -> MonicPoly {
    let mut e = vec![Rational::one()];
    e.extend((1..=n).map(|k| {
        if k % 2 == 0 {
            rand_rat(rng, 9)
        } else {
            Rational::zero()
        }
    }));
    MonicPoly::new(e).expect("monic")
}

#[derive(Clone, Copy)]
enum Sign {
    Any,
    NonNeg,
    NonPos,
}

fn rand_rooted(rng: &mut ChaCha8Rng, n: usize, sign: Sign) -> MonicPoly {
    let roots: Vec<Rational> = (0..n)
        .map(|_| {
            let r = rat(rng.gen_range(0..=12), rng.gen_range(1..=4));
            match sign {
                Sign::NonNeg => r,
                Sign::NonPos => -r,
                Sign::Any => {
                    if rng.gen_bool(0.5) {
                        r
                    } else {
                        -r
                    }
                }
            }
        })
        .collect();
    MonicPoly::from_roots(&roots).expect("nonempty")
}

fn merge_law(seed: u64) -> Vec<CheckLine> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x216);
    let trials = 200;
    let mut fails = Vec::new();
    for _ in 0..trials {
        let n = rng.gen_range(1..=10);
        let s1 = HgpSpec::new(
            n,
            &rand_tuple(&mut rng, 2),
            &rand_valid_lower(&mut rng, n, 2),
        );
        let s2 = HgpSpec::new(
            n,
            &rand_tuple(&mut rng, 2),
            &rand_valid_lower(&mut rng, n, 2),
        );
        let ok = (|| -> Result<bool> {
            let merged = boxtimes_hgp_merge(&s1, &s2)?.build()?;
            Ok(boxtimes(&s1.build()?, &s2.build()?)? == merged)
        })();
        if ok != Ok(true) {
            fails.push(format!("{s1:?} {s2:?}: {ok:?}"));
        }
    }
    let mut v = vec![CheckLine::new(
        "thm216",
        format!("H_n[b;a] ⊠ H_n[d;c] = H_n[b,d;a,c] on {trials} random specs, n <= 10"),
        fails.is_empty(),
        fails.first().cloned().unwrap_or_default(),
    )];
    let bs = [rat(1, 3), rat(5, 2), int(-3), rat(-7, 4), int(4)];
    let (mut checked, mut skipped, mut bad) = (0, 0, Vec::new());
    for n in 1..=8 {
        for r in 0..=n {
            for b in &bs {
                match zeros_on_one_factorization_check(n, r, b) {
                    Ok(true) => checked += 1,
                    Ok(false) => {
                        checked += 1;
                        bad.push(format!("n={n} r={r} b={b}"));
                    }
                    Err(Error::InvalidLowerParameter { .. }) => skipped += 1,
                    Err(e) => bad.push(format!("n={n} r={r} b={b}: {e}")),
                }
            }
        }
    }
    v.push(CheckLine::new(
        "thm216",
        "H_n[b; b+r/n] = (x-1)^(n-r) H_r[...] for n <= 8",
        bad.is_empty() && checked > 0,
        format!(
            "{checked} checked, {skipped} skipped{}",
            bad.first().map(|s| format!("; {s}")).unwrap_or_default()
        ),
    ));
    v
}

fn pair_identity(
    suite: &'static str,
    name: &str,
    seed: u64,
    gen: impl Fn(&mut ChaCha8Rng, usize) -> MonicPoly,
    check: impl Fn(&MonicPoly, &MonicPoly) -> Result<bool>,
) -> CheckLine {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let trials = 200;
    let mut fail = None;
    for _ in 0..trials {
        let n = 2 * rng.gen_range(1..=6);
        let (p, q) = (gen(&mut rng, n), gen(&mut rng, n));
        let r = check(&p, &q);
        if r != Ok(true) && fail.is_none() {
            fail = Some(format!("p = {p}, q = {q}: {r:?}"));
        }
    }
    CheckLine::new(
        suite,
        format!("{name} on {trials} random pairs, degree <= 12"),
        fail.is_none(),
        fail.unwrap_or_default(),
    )
}

fn halving_boxtimes(seed: u64) -> Vec<CheckLine> {
    vec![
        pair_identity(
            "prop38",
            "Q(p ⊠ q) = Q(p) ⊠ Q(q) ⊠ H_m[-1/(2m); 1-1/(2m)]",
            seed ^ 0x38,
            rand_poly,
            halve_boxtimes_identity_check,
        ),
        pair_identity(
            "prop38",
            "Q(p □ q) = even-part formula",
            seed ^ 0x56,
            rand_poly,
            |p, q| Ok(box_square(p, q)?.halve()? == commutator_even_part(p, q)?),
        ),
    ]
}

fn halving_boxplus(seed: u64) -> Vec<CheckLine> {
    vec![pair_identity(
        "prop312",
        "Q(p ⊞ q) = Q(p) ⊞^(-1/2) Q(q) for even p, q",
        seed ^ 0x312,
        rand_even_poly,
        halve_boxplus_identity_check,
    )]
}

fn measures(seed: u64) -> Vec<CheckLine> {
    let mut v = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x6);
    let mut rt = true;
    for _ in 0..20 {
        let mut m = vec![Rational::one()];
        m.extend((0..12).map(|_| rand_rat(&mut rng, 9)));
        let m = MomentSeq::new(m).expect("m_0 = 1");
        rt &= cumulants_to_moments(&moments_to_cumulants(&m)) == m;
        rt &= q_measure(&sqrt_measure(&m)).as_ref() == Ok(&m);
    }
    v.push(CheckLine::new(
        "measures",
        "moment/cumulant and square/root round trips, order 12",
        rt,
        "",
    ));

    let mut ok = true;
    for _ in 0..10 {
        let mu = MomentSeq::new(
            std::iter::once(Rational::one())
                .chain((0..12).map(|_| rand_rat(&mut rng, 9)))
                .collect(),
        )
        .expect("m_0");
        let nu = MomentSeq::new(
            std::iter::once(Rational::one())
                .chain((0..12).map(|_| rand_rat(&mut rng, 9)))
                .collect(),
        )
        .expect("m_0");
        ok &= sym_measure(&free_add(&mu, &nu).expect("orders"))
            == free_add(&sym_measure(&mu), &sym_measure(&nu)).expect("orders");
    }
    v.push(CheckLine::new(
        "measures",
        "Sym(mu ⊞ nu) = Sym(mu) ⊞ Sym(nu), order 12",
        ok,
        "",
    ));

    let mp = s_rational_moments(&SRationalSpec::new(vec![int(1)], vec![]), 10);
    let pass = mp.as_ref().ok() == Some(&cumulants_to_moments(&vec![int(1); 10]));
    v.push(CheckLine::new(
        "measures",
        "reversion of rho[1;.] = cumulants all 1 (Catalan)",
        pass,
        "",
    ));
    let sym2 = sym_measure(&cumulants_to_moments(&vec![int(1); 4]))
        .moment(2)
        .clone();
    v.push(CheckLine::new(
        "measures",
        "m_2(Sym MP(1)) = 2",
        sym2 == int(2),
        sym2.to_string(),
    ));

    let mut compat = Vec::new();
    for m in 1..=32 {
        let mut polys = vec![hermite(2 * m).expect("even degree")];
        if m <= 8 {
            let roots: Vec<Rational> = (0..m).map(|_| rand_rat(&mut rng, 9)).collect();
            let all: Vec<Rational> = roots
                .iter()
                .cloned()
                .chain(roots.iter().map(|r| -r))
                .collect();
            polys.push(MonicPoly::from_roots(&all).expect("nonempty"));
        }
        for p in polys {
            let lhs = q_measure(&empirical_moments(&p, 12));
            let rhs = p.halve().map(|h| empirical_moments(&h, 6));
            if lhs != rhs {
                compat.push(format!("{p}"));
            }
        }
    }
    v.push(CheckLine::new(
        "measures",
        "Q(rho(p)) = rho(Q(p)) exactly for even p, degree <= 64",
        compat.is_empty(),
        compat.first().cloned().unwrap_or_default(),
    ));

    let params = [
        [
            rat(9, 2),
            rat(3, 2),
            rat(7, 3),
            rat(2, 3),
            rat(5, 4),
            rat(1, 3),
            int(2),
        ],
        [
            int(5),
            int(2),
            rat(11, 4),
            rat(3, 2),
            rat(1, 2),
            rat(5, 6),
            rat(3, 4),
        ],
        [
            rat(7, 3),
            rat(5, 3),
            int(3),
            rat(4, 5),
            rat(2, 7),
            int(4),
            rat(1, 6),
        ],
    ];
    for (i, p) in params.iter().enumerate() {
        for case in even_sum_cases(&p[0], &p[1], &p[2], &p[3], &p[4], &p[5], &p[6]) {
            let r = verify_even_sum_case(&case, 10);
            v.push(CheckLine::new(
                "measures",
                format!("even ⊞ {} (parameter set {})", case.name, i + 1),
                r == Ok(true),
                err_detail(&r),
            ));
        }
    }
    for case in sym_measure_cases(&rat(5, 2), &rat(3, 2), &rat(7, 3), &rat(4, 3)) {
        let r = solve_sym_measure_case(&case, 10);
        let (pass, detail) = match &r {
            Ok(Some(a)) => (
                true,
                format!("solved alpha^2 = {a}, printed {}", case.printed_alpha_sq),
            ),
            Ok(None) => (false, "no single dilation fits".to_string()),
            Err(e) => (false, e.to_string()),
        };
        v.push(CheckLine::new(
            "measures",
            format!("Sym {} up to dilation", case.name),
            pass,
            detail,
        ));
    }
    v
}

/// Random real-rooted pairs: counts of commutators that are not real-rooted.
pub fn commutator_conjecture_sweep(pairs: usize, seed: u64) -> (usize, Vec<String>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x54);
    let mut violations = Vec::new();
    for _ in 0..pairs {
        let n = 2 * rng.gen_range(1..=6);
        let p = rand_rooted(&mut rng, n, Sign::Any);
        let q = rand_rooted(&mut rng, n, Sign::Any);
        match box_square(&p, &q) {
            Ok(r) if sturm_certificate(&r).is_real_rooted() => {}
            other => violations.push(format!("p = {p}, q = {q}: {other:?}")),
        }
    }
    (pairs, violations)
}

fn roots(seed: u64) -> Vec<CheckLine> {
    type Rule = (
        &'static str,
        Sign,
        Sign,
        fn(&MonicPoly, &MonicPoly) -> Result<MonicPoly>,
        fn(&MonicPoly) -> bool,
    );
    let rules: [Rule; 5] = [
        (
            "real ⊞ real is real-rooted",
            Sign::Any,
            Sign::Any,
            boxplus,
            |p| sturm_certificate(p).is_real_rooted(),
        ),
        (
            "real ⊠ nonnegative is real-rooted",
            Sign::Any,
            Sign::NonNeg,
            boxtimes,
            |p| sturm_certificate(p).is_real_rooted(),
        ),
        (
            "nonnegative ⊠ nonnegative is nonnegative-rooted",
            Sign::NonNeg,
            Sign::NonNeg,
            boxtimes,
            |p| sturm_certificate(p).is_nonnegative_rooted(),
        ),
        (
            "nonpositive ⊠ nonpositive is nonnegative-rooted",
            Sign::NonPos,
            Sign::NonPos,
            boxtimes,
            |p| sturm_certificate(p).is_nonnegative_rooted(),
        ),
        (
            "nonpositive ⊠ nonnegative is nonpositive-rooted",
            Sign::NonPos,
            Sign::NonNeg,
            boxtimes,
            |p| sturm_certificate(p).is_nonpositive_rooted(),
        ),
    ];
    let mut v = Vec::new();
    for (i, (name, sp, sq, op, pred)) in rules.into_iter().enumerate() {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (0x29 + i as u64));
        let trials = 100;
        let mut fail = None;
        for _ in 0..trials {
            let n = rng.gen_range(1..=10);
            let (p, q) = (rand_rooted(&mut rng, n, sp), rand_rooted(&mut rng, n, sq));
            let ok = op(&p, &q).map(|r| pred(&r));
            if ok != Ok(true) && fail.is_none() {
                fail = Some(format!("p = {p}, q = {q}: {ok:?}"));
            }
        }
        v.push(CheckLine::new(
            "roots",
            format!("{name} ({trials} pairs, degree <= 10)"),
            fail.is_none(),
            fail.unwrap_or_default(),
        ));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x58);
    type Family = (&'static str, fn(usize) -> Result<MonicPoly>);
    let families: [Family; 5] = [
        ("Hermite", hermite),
        ("Laguerre(1/2)", |n| laguerre_scaled(n, &rat(1, 2))),
        ("Laguerre(3)", |n| laguerre_scaled(n, &int(3))),
        ("Bessel(-3/2)", |n| bessel(n, &rat(-3, 2))),
        ("Bessel(-5/2)", |n| bessel(n, &rat(-5, 2))),
    ];
    for (name, fam) in families {
        for m in MS {
            let q = fam(2 * m);
            let r = q.as_ref().map_err(Clone::clone).and_then(|q| {
                if !check_hypothesis_58(q).holds() {
                    return Ok((false, "factorization hypothesis fails".to_string()));
                }
                let p = rand_rooted(&mut rng, 2 * m, Sign::Any);
                let ok = sturm_certificate(&box_square(&p, q)?).is_real_rooted();
                Ok((
                    ok,
                    if ok {
                        String::new()
                    } else {
                        format!("p = {p}")
                    },
                ))
            });
            let (pass, detail) = r.unwrap_or_else(|e| (false, e.to_string()));
            v.push(CheckLine::new(
                "roots",
                format!("hypothesis holds for {name} m={m} and p □ q is real-rooted"),
                pass,
                detail,
            ));
        }
    }
    v
}

/// Monte-Carlo anchors at degree 2 plus a negative control. Random, so kept
/// out of [`run_all`].
pub fn rmt_anchors(seed: u64, trials: usize) -> Vec<CheckLine> {
    let pm = [1.0, -1.0];
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let x2 = |c: Rational| MonicPoly::new(vec![int(1), int(0), c]).expect("monic");
    let half = x2(rat(-1, 2));
    let cases: [(&str, Word, [f64; 2], Result<MonicPoly>); 3] = [
        (
            "E charpoly(A + UBU*) = (x^2-1) ⊞ (x^2-1)",
            Word::Sum,
            pm,
            boxplus(&x2(int(-1)), &x2(int(-1))),
        ),
        (
            "E charpoly(AUBU*) = (x^2-1) ⊠ (x^2-1)",
            Word::Product,
            pm,
            boxtimes(&x2(int(-1)), &x2(int(-1))),
        ),
        (
            "E charpoly(i[A, UBU*]) = (x^2-1/2) □ (x^2-1/2)",
            Word::Commutator,
            [h, -h],
            box_square(&half, &half),
        ),
    ];
    let mut v = Vec::new();
    for (name, word, roots, exact) in cases {
        let r = exact.and_then(|e| {
            mc_compare(
                &mc_expected_charpoly(&roots, &roots, word, trials, seed)?,
                &e,
                DEFAULT_Z_THRESHOLD,
            )
        });
        let (pass, detail) = match &r {
            Ok(rep) => (
                rep.pass,
                format!("max z = {:.2}, {trials} trials", rep.max_z()),
            ),
            Err(e) => (false, e.to_string()),
        };
        v.push(CheckLine::new("rmt", name, pass, detail));
    }
    let r = mc_expected_charpoly(&pm, &pm, Word::Sum, trials, seed)
        .and_then(|e| mc_compare(&e, &x2(int(-3)), DEFAULT_Z_THRESHOLD));
    let (pass, detail) = match &r {
        Ok(rep) => (!rep.pass, format!("max z = {:.1}", rep.max_z())),
        Err(e) => (false, e.to_string()),
    };
    v.push(CheckLine::new(
        "rmt",
        "negative control: sum against x^2 - 3 is rejected",
        pass,
        detail,
    ));
    v
}
