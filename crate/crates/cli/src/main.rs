use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use finfree::commutator::{commutator_report, Hypothesis58};
use finfree::conv::{boxplus, boxtimes, rect_boxplus, symmetrize};
use finfree::families::family;
use finfree::hypergeom::{hgp, hgp_even};
use finfree::measures::{
    dilate_measure, dilate_measure_by, empirical_moments, limit_compare, s_rational_even_moments,
    s_rational_moments, SRationalSpec,
};
use finfree::numeric::{parse_rational, parse_tuple, series_order_from_env};
use finfree::rmt::{mc_compare, mc_expected_charpoly, Word};
use finfree::roots::{numeric_roots_with_cap, sturm_certificate, DEFAULT_DEGREE_CAP};
use finfree::verify::{first_failure, rmt_anchors, run_all, run_suite, Suite, DEFAULT_SEED};
use finfree::{DilationScale, MonicPoly};

#[derive(Parser)]
#[command(
    name = "finfree",
    version,
    about = "Exact finite free convolutions of monic polynomials"
)]
struct Cli {
    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

/// A polynomial JSON file, `-` for stdin, or inline JSON.
type PolyArg = String;

#[derive(Subcommand)]
enum Cmd {
    /// p ⊞ q
    ConvAdd { p: PolyArg, q: PolyArg },
    /// p ⊠ q
    ConvMul { p: PolyArg, q: PolyArg },
    /// Rectangular additive convolution with parameter alpha.
    ConvRect {
        p: PolyArg,
        q: PolyArg,
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
    },
    /// p ⊞ Dil_{-1} p
    Sym { p: PolyArg },
    /// p □ q
    Commutator {
        p: PolyArg,
        q: PolyArg,
        /// Emit the certificate report instead of the polynomial.
        #[arg(long)]
        report: bool,
    },
    /// H_n[upper; lower], or H^E_n[upper; lower] with --even.
    Hgp {
        #[arg(long)]
        degree: usize,
        #[arg(long, allow_hyphen_values = true, default_value = "")]
        upper: String,
        #[arg(long, allow_hyphen_values = true, default_value = "")]
        lower: String,
        #[arg(long)]
        even: bool,
    },
    /// Named family; params start with the degree.
    Family {
        #[arg(long)]
        name: String,
        #[arg(long, allow_hyphen_values = true, default_value = "")]
        params: String,
    },
    /// p(x) -> p(x^2)
    Double { p: PolyArg },
    /// Even p(x) = q(x^2) -> q
    Halve { p: PolyArg },
    /// Exact Sturm root census.
    Certify { p: PolyArg },
    /// Numeric roots as CSV "re,im,mult".
    Roots {
        p: PolyArg,
        #[arg(long, default_value_t = DEFAULT_DEGREE_CAP)]
        cap: usize,
    },
    /// Empirical root moments m_0..m_K.
    Moments {
        p: PolyArg,
        #[arg(long)]
        order: Option<usize>,
    },
    /// Moments of the S-rational measure with S(z) = prod(z+lower)/prod(z+upper).
    SrationalMoments {
        #[arg(long, allow_hyphen_values = true, default_value = "")]
        upper: String,
        #[arg(long, allow_hyphen_values = true, default_value = "")]
        lower: String,
        #[arg(long)]
        order: Option<usize>,
        /// Symmetric square root of the measure.
        #[arg(long)]
        even: bool,
    },
    /// CSV of moment gaps between polynomials of increasing degree and an S-rational target.
    LimitCompare {
        /// Polynomials in increasing degree (alternative to --family).
        polys: Vec<PolyArg>,
        #[arg(long)]
        family: Option<String>,
        /// Family parameters after the degree.
        #[arg(long, allow_hyphen_values = true, default_value = "")]
        params: String,
        #[arg(long, default_value = "")]
        degrees: String,
        #[arg(long, value_enum, default_value_t = Transform::None)]
        transform: Transform,
        /// Rational dilation applied to each polynomial after the transform.
        #[arg(long, allow_hyphen_values = true)]
        dilate: Option<String>,
        #[arg(long, allow_hyphen_values = true, default_value = "")]
        target_upper: String,
        #[arg(long, allow_hyphen_values = true, default_value = "")]
        target_lower: String,
        #[arg(long)]
        target_even: bool,
        /// Target dilation m_j -> a^j m_j.
        #[arg(long, allow_hyphen_values = true)]
        target_scale: Option<String>,
        /// Target dilation by sqrt(r) of a symmetric target.
        #[arg(long, allow_hyphen_values = true)]
        target_scale_sq: Option<String>,
        #[arg(long, default_value_t = 4)]
        order: usize,
    },
    /// Runs identity suites; exit 1 on the first failure.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        /// Seed for random bindings; with suite "all" also adds Monte-Carlo anchors.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Monte-Carlo check of an expected characteristic polynomial against the exact convolution.
    RmtValidate {
        p: PolyArg,
        q: PolyArg,
        #[arg(long, value_enum)]
        word: WordArg,
        #[arg(long, default_value_t = 100_000)]
        trials: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = finfree::rmt::DEFAULT_Z_THRESHOLD)]
        z: f64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Transform {
    None,
    Halve,
    Sym,
}

#[derive(Clone, Copy, ValueEnum)]
enum WordArg {
    Sum,
    Product,
    Commutator,
}

enum Failure {
    Usage(String),
    Verify(String),
}

impl From<finfree::Error> for Failure {
    fn from(e: finfree::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Out = std::result::Result<String, Failure>;

fn read_poly(arg: &str) -> std::result::Result<MonicPoly, Failure> {
    let text = if arg.trim_start().starts_with('{') {
        arg.to_string()
    } else if arg == "-" {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::Usage(format!("stdin: {e}")))?;
        s
    } else {
        fs::read_to_string(arg).map_err(|e| Failure::Usage(format!("{arg}: {e}")))?
    };
    Ok(MonicPoly::from_json(&text)?)
}

fn poly_out(p: &MonicPoly) -> Out {
    Ok(p.to_json() + "\n")
}

fn real_parts(p: &MonicPoly) -> std::result::Result<Vec<f64>, Failure> {
    if !sturm_certificate(p).is_real_rooted() {
        return Err(Failure::Usage(format!("{p} is not real-rooted")));
    }
    let r = numeric_roots_with_cap(p, DEFAULT_DEGREE_CAP)?;
    let mut out = Vec::new();
    for (z, &m) in r.roots.iter().zip(&r.multiplicity) {
        out.extend(std::iter::repeat_n(z.re, m.max(1)));
    }
    out.truncate(p.degree());
    Ok(out)
}

fn run(cmd: Cmd) -> Out {
    match cmd {
        Cmd::ConvAdd { p, q } => poly_out(&boxplus(&read_poly(&p)?, &read_poly(&q)?)?),
        Cmd::ConvMul { p, q } => poly_out(&boxtimes(&read_poly(&p)?, &read_poly(&q)?)?),
        Cmd::ConvRect { p, q, alpha } => {
            let alpha = parse_rational(&alpha)?;
            poly_out(&rect_boxplus(&read_poly(&p)?, &read_poly(&q)?, &alpha)?)
        }
        Cmd::Sym { p } => poly_out(&symmetrize(&read_poly(&p)?)),
        Cmd::Commutator { p, q, report } => {
            let r = commutator_report(&read_poly(&p)?, &read_poly(&q)?)?;
            if !report {
                return poly_out(&r.result);
            }
            let hyp = match &r.hypothesis_58 {
                Hypothesis58::Holds(w) => {
                    serde_json::json!({"holds": true, "witness": serde_json::from_str::<serde_json::Value>(&w.to_json()).expect("json")})
                }
                Hypothesis58::Fails(why) => serde_json::json!({"holds": false, "reason": why}),
            };
            let v = serde_json::json!({
                "result": serde_json::from_str::<serde_json::Value>(&r.result.to_json()).expect("json"),
                "real_rooted": r.real_rooted,
                "hypothesis_58": hyp,
            });
            Ok(serde_json::to_string_pretty(&v).expect("json") + "\n")
        }
        Cmd::Hgp {
            degree,
            upper,
            lower,
            even,
        } => {
            let (u, l) = (parse_tuple(&upper)?, parse_tuple(&lower)?);
            poly_out(&if even {
                hgp_even(degree, &u, &l)?
            } else {
                hgp(degree, &u, &l)?
            })
        }
        Cmd::Family { name, params } => {
            let ps: Vec<&str> = if params.trim().is_empty() {
                vec![]
            } else {
                params.split(',').collect()
            };
            poly_out(&family(&name, &ps)?)
        }
        Cmd::Double { p } => poly_out(&read_poly(&p)?.double()),
        Cmd::Halve { p } => poly_out(&read_poly(&p)?.halve()?),
        Cmd::Certify { p } => {
            let p = read_poly(&p)?;
            let c = sturm_certificate(&p);
            let mut v = serde_json::to_value(&c).expect("json");
            v["real_rooted"] = c.is_real_rooted().into();
            v["nonnegative_rooted"] = c.is_nonnegative_rooted().into();
            Ok(serde_json::to_string_pretty(&v).expect("json") + "\n")
        }
        Cmd::Roots { p, cap } => Ok(numeric_roots_with_cap(&read_poly(&p)?, cap)?.to_csv()),
        Cmd::Moments { p, order } => {
            let k = order.unwrap_or_else(series_order_from_env);
            Ok(empirical_moments(&read_poly(&p)?, k).to_json() + "\n")
        }
        Cmd::SrationalMoments {
            upper,
            lower,
            order,
            even,
        } => {
            let spec = SRationalSpec::new(parse_tuple(&upper)?, parse_tuple(&lower)?);
            let k = order.unwrap_or_else(series_order_from_env);
            let m = if even {
                s_rational_even_moments(&spec, k)?
            } else {
                s_rational_moments(&spec, k)?
            };
            Ok(m.to_json() + "\n")
        }
        Cmd::LimitCompare {
            polys,
            family: fam,
            params,
            degrees,
            transform,
            dilate,
            target_upper,
            target_lower,
            target_even,
            target_scale,
            target_scale_sq,
            order,
        } => {
            let mut seq = Vec::new();
            for p in &polys {
                seq.push(read_poly(p)?);
            }
            if let Some(name) = fam {
                for d in degrees.split(',').filter(|s| !s.trim().is_empty()) {
                    let mut ps = vec![d.trim()];
                    ps.extend(params.split(',').filter(|s| !s.trim().is_empty()));
                    seq.push(family(&name, &ps)?);
                }
            }
            if seq.is_empty() {
                return Err(Failure::Usage(
                    "no polynomials: give files or --family with --degrees".into(),
                ));
            }
            let dil = dilate.map(|s| parse_rational(&s)).transpose()?;
            let mut transformed = Vec::new();
            for p in seq {
                let mut t = match transform {
                    Transform::None => p,
                    Transform::Halve => p.halve()?,
                    Transform::Sym => symmetrize(&p),
                };
                if let Some(a) = &dil {
                    t = t.dilate_by(a)?;
                }
                transformed.push(t);
            }
            let spec = SRationalSpec::new(parse_tuple(&target_upper)?, parse_tuple(&target_lower)?);
            let mut target = if target_even {
                s_rational_even_moments(&spec, order)?
            } else {
                s_rational_moments(&spec, order)?
            };
            if let Some(a) = target_scale {
                target = dilate_measure(&target, &parse_rational(&a)?);
            }
            if let Some(r) = target_scale_sq {
                target =
                    dilate_measure_by(&target, &DilationScale::SqrtRational(parse_rational(&r)?))?;
            }
            let rep = limit_compare(transformed, &target, order)?;
            if rep.non_monotone {
                eprintln!("note: some moment gap increased between consecutive degrees");
            }
            Ok(rep.to_csv())
        }
        Cmd::Verify { suite, seed } => {
            let s = seed.unwrap_or(DEFAULT_SEED);
            let lines = if suite == "all" {
                let mut l = run_all(s);
                if seed.is_some() {
                    l.extend(rmt_anchors(s, 100_000));
                }
                l
            } else if suite == "rmt" {
                rmt_anchors(s, 100_000)
            } else {
                run_suite(suite.parse::<Suite>()?, s)
            };
            let mut text = String::new();
            for l in &lines {
                text.push_str(&format!("{l}\n"));
            }
            let passed = lines.iter().filter(|l| l.pass).count();
            text.push_str(&format!("{passed}/{} identities passed\n", lines.len()));
            match first_failure(&lines) {
                None => Ok(text),
                Some(f) => {
                    print!("{text}");
                    Err(Failure::Verify(format!(
                        "first failing identity: [{}] {}",
                        f.suite, f.identity
                    )))
                }
            }
        }
        Cmd::RmtValidate {
            p,
            q,
            word,
            trials,
            seed,
            z,
        } => {
            let (p, q) = (read_poly(&p)?, read_poly(&q)?);
            if p.degree() != q.degree() {
                return Err(Failure::Usage(format!(
                    "degrees differ: {} and {}",
                    p.degree(),
                    q.degree()
                )));
            }
            let (word, exact) = match word {
                WordArg::Sum => (Word::Sum, boxplus(&p, &q)?),
                WordArg::Product => (Word::Product, boxtimes(&p, &q)?),
                WordArg::Commutator => (Word::Commutator, finfree::commutator::box_square(&p, &q)?),
            };
            let est = mc_expected_charpoly(&real_parts(&p)?, &real_parts(&q)?, word, trials, seed)?;
            let rep = mc_compare(&est, &exact, z)?;
            let text = rep.to_json() + "\n";
            if rep.pass {
                Ok(text)
            } else {
                print!("{text}");
                let k = rep.coeffs.iter().find(|c| c.z > z).map_or(0, |c| c.k);
                Err(Failure::Verify(format!(
                    "coefficient e_{k} outside {z} standard errors"
                )))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = cli.out.clone();
    match run(cli.cmd) {
        Ok(text) => {
            let written = match &out {
                Some(path) => fs::write(path, &text),
                None => io::stdout().write_all(text.as_bytes()),
            };
            if let Err(e) = written {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Verify(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(1)
        }
    }
}
