//! Command-line front end: expression parsing, job dispatch and rendering.

pub mod expr;

use crate::curveres::{self, adapted_refine, extract_datum, extract_datum_symbolic, resolve_embedded, BlowupTree, Extraction, PlaneCurvePair, Region, ResidueClass, XY};
use crate::exactalg::scalar::{fmt_rat, int, parse_rat, Rational};
use crate::padicnum::{self, CertifiedComplex, Domain, OscOptions, PredictedTerm, Sample, ZValue};
use crate::resolution::{alpha_beta, candidate_poles_padic, ResolutionDatum};
use crate::zeta::{denef_zeta, motivic_zeta, topological_zeta};
use crate::{Error, MultiPoly, ZetaRat};
use clap::{Args, Parser, Subcommand, ValueEnum};
use expr::parse_poly;
use serde_json::{json, Value};
use std::fmt::Write as _;
use std::ops::RangeInclusive;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Plain,
    Latex,
    Json,
}

/// A validated job.
#[derive(Clone, Debug, Parser)]
#[command(name = "igusa", version, about = "Local zeta functions and oscillatory integrals of f/g")]
pub struct JobSpec {
    #[arg(long, value_enum, default_value_t = Format::Plain, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Debug, Subcommand)]
pub enum Command {
    /// Embedded resolution of f·g and its numerical data.
    Resolve(PairArgs),
    /// Denef's formula for Z(s).
    Zeta(DatumArgs),
    /// Topological zeta function.
    Topzeta(DatumArgs),
    /// Motivic zeta function.
    Motivic(DatumArgs),
    /// Candidate poles from the resolution and the actual poles of Z(s).
    Poles(DatumArgs),
    /// Certified measures of {ord f − ord g = k}.
    Oracle(OracleArgs),
    /// Oscillatory integrals E(z) on a z-ladder.
    Osc(OscArgs),
    /// Unit exponential sums S_{ℓ,u}(h).
    Expsum(ExpsumArgs),
    /// Fit of expansion terms to a z-ladder.
    Fit(FitArgs),
}

#[derive(Clone, Debug, Args)]
pub struct PairArgs {
    #[arg(long)]
    pub f: String,
    #[arg(long)]
    pub g: String,
    /// `Zp2`, `pZp2` or `a,b+pZp2`.
    #[arg(long, default_value = "Zp2")]
    pub region: String,
}

#[derive(Clone, Debug, Args)]
pub struct DatumArgs {
    #[arg(long, requires = "g", conflicts_with = "datum")]
    pub f: Option<String>,
    #[arg(long, requires = "f")]
    pub g: Option<String>,
    #[arg(long, default_value = "Zp2")]
    pub region: String,
    /// Resolution datum in JSON.
    #[arg(long)]
    pub datum: Option<std::path::PathBuf>,
    /// Count points at this prime instead of symbolically.
    #[arg(long)]
    pub p: Option<u64>,
    /// Residue class `r/m` of p for the symbolic counts.
    #[arg(long)]
    pub class: Option<String>,
}

#[derive(Clone, Debug, Args)]
pub struct OracleArgs {
    #[command(flatten)]
    pub pair: PairArgs,
    #[arg(long)]
    pub p: u64,
    #[arg(long)]
    pub ell: u32,
    /// Range `lo..hi` of k.
    #[arg(long, default_value = "-4..4", allow_hyphen_values = true)]
    pub k: String,
    #[arg(long, default_value_t = 10_000_000)]
    pub budget: u64,
    /// Enumerate all classes mod p^ℓ instead of refining adaptively.
    #[arg(long)]
    pub flat: bool,
    /// Compare against the series of the exact zeta function at q = p.
    #[arg(long)]
    pub compare: bool,
}

#[derive(Clone, Debug, Args)]
pub struct OscArgs {
    #[command(flatten)]
    pub pair: PairArgs,
    #[arg(long)]
    pub p: u64,
    /// Valuations of z: a list `a,b,c` or a range `lo..hi`.
    #[arg(long, allow_hyphen_values = true)]
    pub zval: String,
    /// Angular units of z.
    #[arg(long, default_value = "1")]
    pub u: String,
    #[arg(long, default_value_t = 2_000_000)]
    pub budget: u64,
}

#[derive(Clone, Debug, Args)]
pub struct ExpsumArgs {
    /// Laurent polynomial in x, y.
    #[arg(long)]
    pub h: String,
    #[arg(long)]
    pub p: u64,
    #[arg(long)]
    pub ell: u32,
    #[arg(long, default_value_t = 1)]
    pub u: i64,
}

#[derive(Clone, Debug, Args)]
pub struct FitArgs {
    #[command(flatten)]
    pub osc: OscArgs,
    /// Predicted term `c,gamma,m` with an optional `,t` for the (−1)^{ord z} twist; repeatable.
    #[arg(long = "term", required = true, allow_hyphen_values = true)]
    pub terms: Vec<String>,
    #[arg(long, default_value_t = 1)]
    pub conductor: u32,
}

/// Text of a finished job and whether all certified comparisons held.
#[derive(Clone, Debug)]
pub struct Report {
    pub text: String,
    pub ok: bool,
}

impl Report {
    fn ok(text: String) -> Self {
        Report { text, ok: true }
    }
}

/// Remediation hint for an error, when there is one.
pub fn hint(e: &Error) -> Option<&'static str> {
    Some(match e {
        Error::NonRationalCenter { .. } => "the resolver blows up rational points only; translate or choose a region avoiding the non-rational singular point",
        Error::BadPrime { .. } => "choose a prime of good reduction for the resolution, or use the symbolic mode with --class",
        Error::BudgetExceeded { .. } => "raise --budget; the partial value above has an honest error radius",
        Error::MissingEuler(_) => "Euler characteristics are only available for bounded regions; use a polydisc region or supply a datum",
        Error::MissingClasses(_) => "supply Grothendieck classes in the datum or use the symbolic mode",
        Error::MissingCounts(_) => "supply point counts in the datum or pass --p",
        Error::IllConditioned(_) => "lengthen the z-ladder or predict fewer terms",
        Error::NeedsCharacterData(_) => "the case depends on the character beyond its order and conductor",
        Error::SyntaxError { .. } | Error::UnknownVariable(_) => "polynomials use x and y, `*` for products and `^` for integer powers",
        Error::DepthExceeded(_) => "the plane curve needs more blow-ups than allowed; check that f and g are reduced",
        _ => return None,
    })
}

pub fn parse_region(s: &str) -> Result<Region, Error> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    match t.as_str() {
        "Zp2" | "Zp^2" | "full" => return Ok(Region::FullLattice),
        "pZp2" | "(pZp)^2" | "pZp^2" | "origin" => return Ok(Region::origin()),
        _ => {}
    }
    let bad = || Error::Invalid(format!("region `{}`: expected Zp2, pZp2 or a,b+pZp2", s));
    let c = t.strip_suffix("+pZp2").or_else(|| t.strip_suffix("+(pZp)^2")).ok_or_else(bad)?;
    let c = c.trim_start_matches('(').trim_end_matches(')');
    let (a, b) = c.split_once(',').ok_or_else(bad)?;
    Ok(Region::Polydisc { center: (parse_rat(a).ok_or_else(bad)?, parse_rat(b).ok_or_else(bad)?), m: 1 })
}

pub fn parse_class(s: &str) -> Result<ResidueClass, Error> {
    let bad = || Error::Invalid(format!("residue class `{}`: expected r/m", s));
    let (r, m) = s.split_once('/').ok_or_else(bad)?;
    let (residue, modulus) = (r.trim().parse().map_err(|_| bad())?, m.trim().parse().map_err(|_| bad())?);
    if modulus == 0 {
        return Err(bad());
    }
    Ok(ResidueClass { residue, modulus })
}

/// `lo..hi` (inclusive) or a comma-separated list.
pub fn parse_ints(s: &str) -> Result<Vec<i64>, Error> {
    let bad = || Error::Invalid(format!("`{}`: expected a list a,b,c or a range lo..hi", s));
    if let Some((a, b)) = s.split_once("..") {
        let (a, b): (i64, i64) = (a.trim().parse().map_err(|_| bad())?, b.trim().trim_start_matches('=').parse().map_err(|_| bad())?);
        return Ok((a..=b).collect());
    }
    s.split(',').map(|x| x.trim().parse().map_err(|_| bad())).collect()
}

fn parse_range(s: &str) -> Result<RangeInclusive<i64>, Error> {
    let v = parse_ints(s)?;
    match (v.iter().min(), v.iter().max()) {
        (Some(&a), Some(&b)) => Ok(a..=b),
        _ => Err(Error::Invalid("empty range".into())),
    }
}

pub fn parse_term(s: &str) -> Result<PredictedTerm, Error> {
    let bad = || Error::Invalid(format!("term `{}`: expected c,gamma,m[,t]", s));
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() < 3 || parts.len() > 4 || (parts.len() == 4 && parts[3] != "t") {
        return Err(bad());
    }
    Ok(PredictedTerm::new(parse_rat(parts[0]).ok_or_else(bad)?, parse_rat(parts[1]).ok_or_else(bad)?, parts[2].parse().map_err(|_| bad())?, parts.len() == 4))
}

/// `f`, `g` parsed over `x, y`.
pub fn parse_pair(f: &str, g: &str, region: &Region) -> Result<PlaneCurvePair, Error> {
    PlaneCurvePair::new(parse_poly(f, &XY)?, parse_poly(g, &XY)?, region.clone())
}

/// Embedded resolution followed by the adapted refinement.
pub fn pair_tree(pair: &PlaneCurvePair) -> Result<BlowupTree, Error> {
    adapted_refine(resolve_embedded(pair)?)
}

/// How point counts are obtained.
#[derive(Clone, Copy, Debug)]
pub enum CountMode {
    Prime(u64),
    Symbolic(Option<ResidueClass>),
}

pub fn pair_extraction(pair: &PlaneCurvePair, mode: CountMode) -> Result<Extraction, Error> {
    let tree = pair_tree(pair)?;
    match mode {
        CountMode::Prime(p) => extract_datum(&tree, p),
        CountMode::Symbolic(c) => extract_datum_symbolic(&tree, c),
    }
}

/// `Z(s)` of `f/g` on the region.
pub fn pair_zeta(pair: &PlaneCurvePair, mode: CountMode) -> Result<ZetaRat, Error> {
    denef_zeta(&pair_extraction(pair, mode)?.datum)
}

fn datum_of(a: &DatumArgs) -> Result<(ResolutionDatum, Vec<String>), Error> {
    if let Some(path) = &a.datum {
        let src = std::fs::read_to_string(path).map_err(|e| Error::Invalid(format!("{}: {}", path.display(), e)))?;
        let v: Value = serde_json::from_str(&src).map_err(|e| Error::Invalid(format!("{}: {}", path.display(), e)))?;
        return Ok((ResolutionDatum::from_json(&v)?, vec![]));
    }
    let (Some(f), Some(g)) = (&a.f, &a.g) else {
        return Err(Error::Invalid("give --f and --g, or --datum".into()));
    };
    let pair = parse_pair(f, g, &parse_region(&a.region)?)?;
    let mode = match (a.p, &a.class) {
        (Some(_), Some(_)) => return Err(Error::Invalid("--p and --class are exclusive".into())),
        (Some(p), None) => CountMode::Prime(p),
        (None, c) => CountMode::Symbolic(c.as_deref().map(parse_class).transpose()?),
    };
    let e = pair_extraction(&pair, mode)?;
    Ok((e.datum, e.notes))
}

/// Fixed-precision float for deterministic output.
fn fx(x: f64) -> String {
    format!("{:.15e}", x)
}

fn cx(re: f64, im: f64) -> String {
    format!("{} {} {} i", fx(re), if im.is_sign_negative() { '-' } else { '+' }, fx(im.abs()))
}

fn fx_json(x: f64) -> Value {
    fx(x).parse::<f64>().map(Value::from).unwrap_or(Value::Null)
}

fn rat_json(r: &Rational) -> Value {
    Value::String(fmt_rat(r))
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("json") + "\n"
}

fn zeta_text(z: &ZetaRat, fmt: Format, notes: &[String]) -> String {
    match fmt {
        Format::Plain => {
            let mut s = format!("Z(s) = {}\n", z.render_plain());
            for n in notes {
                let _ = writeln!(s, "note: {}", n);
            }
            s
        }
        Format::Latex => format!("Z(s) = {}\n", z.render_latex()),
        Format::Json => pretty(&json!({"zeta": z.render_plain(), "latex": z.render_latex(), "poles": z.poles(None), "notes": notes})),
    }
}

fn run_resolve(a: &PairArgs, fmt: Format) -> Result<Report, Error> {
    let pair = parse_pair(&a.f, &a.g, &parse_region(&a.region)?)?;
    let tree = pair_tree(&pair)?;
    let data = curveres::numerical_data(&tree);
    Ok(Report::ok(match fmt {
        Format::Json => pretty(&json!({
            "blowups": tree.blowup_count(),
            "adapted": tree.adapted,
            "components": data.iter().map(|(id, nf, ng, v)| json!({"id": id, "nf": nf, "ng": ng, "v": v, "n": *nf as i64 - *ng as i64})).collect::<Vec<_>>(),
            "diagnostics": tree.diagnostics.iter().map(|d| d.to_string()).collect::<Vec<_>>(),
        })),
        Format::Plain | Format::Latex => {
            let mut s = tree.render_log();
            let _ = writeln!(s, "{} blow-ups, adapted: {}", tree.blowup_count(), tree.adapted);
            for (id, nf, ng, v) in &data {
                if fmt == Format::Latex {
                    let _ = writeln!(s, "{} & ({}, {}) & {} \\\\", id, nf, ng, v);
                } else {
                    let _ = writeln!(s, "{}: (Nf, Ng, v) = ({}, {}, {}), N = {}", id, nf, ng, v, *nf as i64 - *ng as i64);
                }
            }
            s
        }
    }))
}

fn run_poles(a: &DatumArgs, fmt: Format) -> Result<Report, Error> {
    let (d, _) = datum_of(a)?;
    let cands = candidate_poles_padic(&d);
    let z = denef_zeta(&d)?;
    let poles = z.poles(None);
    let missing: Vec<&Rational> = poles.iter().map(|p| &p.real_part).filter(|r| !cands.iter().any(|c| &c.real_part == *r)).collect();
    let ok = missing.is_empty();
    let text = match fmt {
        Format::Json => pretty(&json!({
            "candidates": cands.iter().map(|c| json!({"realpart": rat_json(&c.real_part), "sources": c.sources, "lattice": [c.lattice.0, c.lattice.1], "chiorders": c.chi_orders()})).collect::<Vec<_>>(),
            "poles": poles,
            "superset": ok,
        })),
        _ => {
            let mut s = String::new();
            for c in &cands {
                let orders: Vec<String> = c.chi_orders().iter().map(|o| o.to_string()).collect();
                let _ = writeln!(s, "candidate Re s = {} from {} (N, v) = ({}, {}), order of chi in {{{}}}", fmt_rat(&c.real_part), c.sources.join(", "), c.lattice.0, c.lattice.1, orders.join(", "));
            }
            for p in &poles {
                let _ = writeln!(s, "pole Re s = {} of order {}", fmt_rat(&p.real_part), p.order);
            }
            let _ = writeln!(s, "candidates contain the poles: {}", ok);
            s
        }
    };
    Ok(Report { text, ok })
}

fn run_oracle(a: &OracleArgs, fmt: Format) -> Result<Report, Error> {
    let region = parse_region(&a.pair.region)?;
    let (f, g) = (parse_poly(&a.pair.f, &XY)?, parse_poly(&a.pair.g, &XY)?);
    let dom = Domain::from(&region);
    let t = if a.flat {
        padicnum::order_measure_table_flat(&f, &g, &dom, a.p, a.ell, a.budget)?
    } else {
        padicnum::order_measure_table(&f, &g, &dom, a.p, a.ell, a.budget)?
    };
    let ks = parse_range(&a.k)?;
    let iv = padicnum::zeta_oracle_coeffs(&t, ks.clone());
    let exact = if a.compare {
        let pair = PlaneCurvePair::new(f.clone(), g.clone(), region)?;
        let d = pair_extraction(&pair, CountMode::Prime(a.p))?.datum;
        let z = denef_zeta(&d)?;
        let ab = alpha_beta(&d);
        Some(z.band_series(ab.beta.as_ref(), ab.alpha.as_ref(), *ks.start(), *ks.end(), &int(a.p as i64))?)
    } else {
        None
    };
    let mut ok = true;
    let mut rows = Vec::new();
    let mut s = String::new();
    for (k, (lo, hi)) in &iv {
        let ex = exact.as_ref().map(|m| m.get(k).cloned().unwrap_or_default());
        let inside = ex.as_ref().map(|e| lo <= e && e <= hi);
        ok &= inside.unwrap_or(true);
        match fmt {
            Format::Json => rows.push(json!({"k": k, "lo": rat_json(lo), "hi": rat_json(hi), "width": fx_json(crate::exactalg::scalar::rat_to_f64(&(hi - lo))), "exact": ex.as_ref().map(rat_json), "contained": inside})),
            Format::Latex => {
                let _ = writeln!(s, "{} & [{}, {}] \\\\", k, fmt_rat(lo), fmt_rat(hi));
            }
            Format::Plain => {
                let _ = write!(s, "k = {}: [{}, {}]", k, fmt_rat(lo), fmt_rat(hi));
                if let (Some(e), Some(inn)) = (&ex, inside) {
                    let _ = write!(s, "  exact {} {}", fmt_rat(e), if inn { "inside" } else { "OUTSIDE" });
                }
                s.push('\n');
            }
        }
    }
    if fmt == Format::Json {
        s = pretty(&json!({"p": a.p, "ell": a.ell, "region": t.region, "undetermined": rat_json(&t.undetermined_mass), "rows": rows, "ok": ok}));
    } else {
        let _ = writeln!(s, "undetermined mass {}", fmt_rat(&t.undetermined_mass));
    }
    Ok(Report { text: s, ok })
}

fn osc_samples(a: &OscArgs) -> Result<Vec<Sample>, Error> {
    let region = parse_region(&a.pair.region)?;
    let (f, g) = (parse_poly(&a.pair.f, &XY)?, parse_poly(&a.pair.g, &XY)?);
    let dom = Domain::from(&region);
    let mut out = Vec::new();
    for u in parse_ints(&a.u)? {
        for v in parse_ints(&a.zval)? {
            let z = ZValue::new(v, u);
            let c = padicnum::oscillatory_eval(&f, &g, &dom, z, a.p, OscOptions { budget: a.budget })?;
            out.push(Sample::new(z, c));
        }
    }
    Ok(out)
}

fn sample_rows(samples: &[Sample], fmt: Format) -> (Vec<Value>, String) {
    let mut s = String::new();
    let rows = samples
        .iter()
        .map(|x| {
            let c: CertifiedComplex = x.value;
            match fmt {
                Format::Latex => {
                    let _ = writeln!(s, "{} & {} & {} & {} & {} \\\\", x.z.val, x.z.unit, fx(c.re), fx(c.im), fx(c.err));
                }
                _ => {
                    let _ = writeln!(s, "zval {} u {}: {}  (err {})", x.z.val, x.z.unit, cx(c.re, c.im), fx(c.err));
                }
            }
            json!({"zval": x.z.val, "uclass": x.z.unit, "re": fx_json(c.re), "im": fx_json(c.im), "err": fx_json(c.err)})
        })
        .collect();
    (rows, s)
}

fn run_osc(a: &OscArgs, fmt: Format) -> Result<Report, Error> {
    let samples = osc_samples(a)?;
    let (rows, s) = sample_rows(&samples, fmt);
    Ok(Report::ok(if fmt == Format::Json { pretty(&Value::Array(rows)) } else { s }))
}

fn run_expsum(a: &ExpsumArgs, fmt: Format) -> Result<Report, Error> {
    let h: MultiPoly = parse_poly(&a.h, &XY)?;
    let c = padicnum::exp_sum_units(&h, a.p, a.ell, a.u)?;
    Ok(Report::ok(match fmt {
        Format::Json => pretty(&json!({"p": a.p, "ell": a.ell, "u": a.u, "re": fx_json(c.re), "im": fx_json(c.im), "err": fx_json(c.err)})),
        _ => format!("S = {}  (err {})\n", cx(c.re, c.im), fx(c.err)),
    }))
}

fn run_fit(a: &FitArgs, fmt: Format) -> Result<Report, Error> {
    let terms: Vec<PredictedTerm> = a.terms.iter().map(|t| parse_term(t)).collect::<Result<_, _>>()?;
    let samples = osc_samples(&a.osc)?;
    let r = padicnum::expansion_fit(&samples, &terms, a.osc.p, a.conductor)?;
    let cond = padicnum::conductor_estimate(&samples, a.osc.p, a.conductor.max(1) + 1);
    let ok = r.consistent();
    let text = match fmt {
        Format::Json => {
            let (rows, _) = sample_rows(&samples, fmt);
            pretty(&json!({
                "samples": rows,
                "terms": r.terms.iter().map(|t| json!({
                    "c": rat_json(&t.term.c), "gamma": rat_json(&t.term.gamma), "m": t.term.m, "twist": t.term.twist,
                    "uclass": t.uclass, "re": fx_json(t.re), "im": fx_json(t.im), "err": fx_json(t.err)
                })).collect::<Vec<_>>(),
                "residual": fx_json(r.residual),
                "sampleerr": fx_json(r.sample_err),
                "conductor": cond,
                "consistent": ok,
            }))
        }
        _ => {
            let mut s = String::new();
            for t in &r.terms {
                let _ = writeln!(
                    s,
                    "u = {} mod p^{}: c = {}, gamma = {}, m = {}{}: {}  (err {})",
                    t.uclass,
                    r.conductor,
                    fmt_rat(&t.term.c),
                    fmt_rat(&t.term.gamma),
                    t.term.m,
                    if t.term.twist { ", twisted" } else { "" },
                    cx(t.re, t.im),
                    fx(t.err)
                );
            }
            let _ = writeln!(s, "residual {}, largest sample error {}, empirical conductor {}", fx(r.residual), fx(r.sample_err), cond);
            s
        }
    };
    Ok(Report { text, ok })
}

/// Runs a job.
pub fn run(job: &JobSpec) -> Result<Report, Error> {
    let fmt = job.format;
    match &job.command {
        Command::Resolve(a) => run_resolve(a, fmt),
        Command::Zeta(a) => {
            let (d, notes) = datum_of(a)?;
            Ok(Report::ok(zeta_text(&denef_zeta(&d)?, fmt, &notes)))
        }
        Command::Topzeta(a) => {
            let z = topological_zeta(&datum_of(a)?.0)?;
            Ok(Report::ok(match fmt {
                Format::Plain => format!("Z_top(s) = {}\n", z.render_plain()),
                Format::Latex => format!("Z_{{top}}(s) = {}\n", z.render_latex()),
                Format::Json => pretty(&json!({"topzeta": z.render_plain(), "latex": z.render_latex()})),
            }))
        }
        Command::Motivic(a) => {
            let z = motivic_zeta(&datum_of(a)?.0)?;
            Ok(Report::ok(match fmt {
                Format::Plain => format!("Z_mot(T) = {}\n", z.render_plain()),
                Format::Latex => format!("Z_{{mot}}(T) = {}\n", z.render_latex()),
                Format::Json => pretty(&json!({"motivic": z.render_plain(), "latex": z.render_latex()})),
            }))
        }
        Command::Poles(a) => run_poles(a, fmt),
        Command::Oracle(a) => run_oracle(a, fmt),
        Command::Osc(a) => run_osc(a, fmt),
        Command::Expsum(a) => run_expsum(a, fmt),
        Command::Fit(a) => run_fit(a, fmt),
    }
}

/// Renders an error with its hint; budget errors show the partial value.
pub fn render_error(e: &Error) -> String {
    let mut s = format!("error: {}\n", e);
    if let Error::BudgetExceeded { partial: Some(c), .. } = e {
        let _ = writeln!(s, "partial: {}  (err {})", cx(c.re, c.im), fx(c.err));
    }
    if let Some(h) = hint(e) {
        let _ = writeln!(s, "hint: {}", h);
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn job(args: &[&str]) -> Report {
        let mut v = vec!["igusa"];
        v.extend_from_slice(args);
        run(&JobSpec::try_parse_from(v).unwrap()).unwrap()
    }

    #[test]
    fn regions_and_lists() {
        assert_eq!(parse_region("Zp2").unwrap(), Region::FullLattice);
        assert_eq!(parse_region("pZp2").unwrap(), Region::origin());
        assert_eq!(parse_region("(1,-2)+pZp2").unwrap(), Region::Polydisc { center: (int(1), int(-2)), m: 1 });
        assert!(parse_region("Qp").is_err());
        assert_eq!(parse_ints("-3..-1").unwrap(), vec![-3, -2, -1]);
        assert_eq!(parse_ints("1,4").unwrap(), vec![1, 4]);
        let t = parse_term("1,-5/2,1,t").unwrap();
        assert!(t.twist && t.gamma == crate::exactalg::scalar::rat(-5, 2));
        assert_eq!(parse_class("3/4").unwrap().residue, 3);
    }

    #[test]
    fn zeta_command() {
        let r = job(&["zeta", "--f", "x^2-y^2", "--g", "x^2", "--region", "Zp2"]);
        let z = expr::parse_zeta(r.text.trim().trim_start_matches("Z(s) = ").lines().next().unwrap()).unwrap();
        let e = expr::parse_zeta("(q^(1+s)+q^2*(q-2)*q^(-s)+q^(2-2*s)-2*q+1)/((q+1)*(q^(1+s)-1)*(q^(1-2*s)-1))").unwrap();
        assert!(z.equals(&e));
        let l = job(&["zeta", "--f", "x^2-y^2", "--g", "x^2", "--format", "latex"]);
        assert!(l.text.contains("\\frac"));
    }

    #[test]
    fn oracle_command() {
        let r = job(&["oracle", "--f", "x^2+y^2", "--g", "x^4+y^4", "--region", "pZp2", "--p", "3", "--ell", "6", "--k", "-4..0", "--compare", "--format", "json"]);
        assert!(r.ok);
        let v: Value = serde_json::from_str(&r.text).unwrap();
        let row = |k: i64| v["rows"].as_array().unwrap().iter().find(|x| x["k"] == k).unwrap().clone();
        assert_eq!(row(-2)["lo"], "8/81");
        assert_eq!(row(-4)["lo"], "8/729");
    }

    #[test]
    fn json_is_deterministic() {
        let a = ["osc", "--f", "x^2-y^2", "--g", "x^2", "--p", "3", "--zval", "-2..-1", "--u", "1,2", "--format", "json", "--budget", "200000"];
        let (r1, r2) = (job(&a), job(&a));
        assert_eq!(r1.text, r2.text);
        let v: Value = serde_json::from_str(&r1.text).unwrap();
        assert_eq!(v.as_array().unwrap().len(), 4);
        assert!(v[0].get("uclass").is_some());
    }

    #[test]
    fn expsum_command() {
        let r = job(&["expsum", "--h", "1-y^2*x^-2", "--p", "3", "--ell", "1", "--u", "1", "--format", "json"]);
        let v: Value = serde_json::from_str(&r.text).unwrap();
        // x, y units mod 3: y²/x² = 1, h ≡ 0
        assert_eq!(v["re"].as_f64().unwrap(), 4.0 / 9.0);
    }

    #[test]
    fn poles_superset() {
        let r = job(&["poles", "--f", "x^2-y^2", "--g", "x^2"]);
        assert!(r.ok, "{}", r.text);
        assert!(r.text.contains("order of chi in {1, 2}"));
    }

    #[test]
    fn hints() {
        assert!(hint(&Error::NonRationalCenter { minpoly: "x^2+1".into() }).is_some());
        let e = Error::BudgetExceeded { budget: 3, partial: Some(CertifiedComplex { re: 0.5, im: 0.0, err: 0.5 }) };
        assert!(render_error(&e).contains("partial"));
    }
}
