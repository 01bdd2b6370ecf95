//! `bpw`: recomputes singular vectors, Zhu-algebra data, classifications and
//! free-field checks, and compares them with the bundled reference data.
//!
//! Exit codes: 0 success, 1 a verification failed, 2 usage error.

use anyhow::Context;
use bpw::arith::{parse_rational, Rational};
use bpw::classify::{classify_level, fmt_weight, level_inputs, Classification, Weight};
use bpw::freefield::{symplectic_in_clifford, weyl_charge_decomposition, Embedding, LemmaLine};
use bpw::golden;
use bpw::modes::{convert_convention, BaseTag, Convention, Generator, Mode};
use bpw::singular::{find_singular, verify_singular, AnnihilatorSet};
use bpw::verma::enumerate_basis;
use bpw::zhu::{smith_relation, zero_mode_poly, Reducer};
use bpw::{Error, State, DEFAULT_WEIGHT_BOUND};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "bpw", version, about = "Exact computations in the Bershadsky-Polyakov algebra")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Singular vectors of a vacuum weight space.
    Singular {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        space: Space,
    },
    /// Zhu-algebra relations and zero-mode projections.
    Zhu {
        #[command(flatten)]
        common: Common,
    },
    /// Classification of highest weights.
    Classify {
        #[command(flatten)]
        common: Common,
    },
    /// Free-field realization checks.
    Freefield {
        #[command(flatten)]
        common: Common,
    },
    /// PBW basis of a vacuum weight space.
    Basis {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        space: Space,
    },
}

#[derive(Args)]
struct Common {
    /// Level k as an exact rational such as -5/3.
    #[arg(long, allow_hyphen_values = true)]
    level: String,
    #[arg(long, value_enum, default_value_t = Format::Md)]
    format: Format,
    /// Weight bound; overrides BPW_WEIGHT_BOUND.
    #[arg(long)]
    bound: Option<u32>,
    /// Also print the comparison with the bundled reference data.
    #[arg(long)]
    check: bool,
}

#[derive(Args)]
struct Space {
    /// Conformal weight, possibly half-integral in the omega grading.
    #[arg(long, allow_hyphen_values = true)]
    weight: String,
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    charge: i64,
    #[arg(long, value_enum, default_value_t = Grading::Omega)]
    grading: Grading,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    #[value(alias = "markdown")]
    Md,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Grading {
    Omega,
    #[value(alias = "omegabar", alias = "bar")]
    OmegaBar,
}

impl From<Grading> for Convention {
    fn from(g: Grading) -> Self {
        match g {
            Grading::Omega => Convention::Omega,
            Grading::OmegaBar => Convention::OmegaBar,
        }
    }
}

/// A finished command: its report and whether every check passed.
struct Report {
    md: String,
    json: Value,
    ok: bool,
}

enum Failure {
    Usage(String),
    Internal(anyhow::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::UnsupportedLevel(_) | Error::WeightBound { .. } | Error::ParseRational(_) => {
                Failure::Usage(e.to_string())
            }
            other => Failure::Internal(other.into()),
        }
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Internal(e)
    }
}

type Out = std::result::Result<Report, Failure>;

struct Config {
    k: Rational,
    bound: u32,
    check: bool,
}

fn config(c: &Common) -> std::result::Result<Config, Failure> {
    let k = parse_rational(&c.level)?;
    let bound = match c.bound {
        Some(b) => b,
        None => match std::env::var("BPW_WEIGHT_BOUND") {
            Ok(v) => v.trim().parse().map_err(|_| Failure::Usage(format!("BPW_WEIGHT_BOUND={v:?} is not a number")))?,
            Err(_) => DEFAULT_WEIGHT_BOUND,
        },
    };
    Ok(Config { k, bound, check: c.check })
}

fn mark(ok: bool) -> &'static str {
    if ok {
        "yes"
    } else {
        "NO"
    }
}

fn state_table(s: &State<Rational>) -> String {
    let mut out = String::from("| coefficient | monomial |\n|---|---|\n");
    for (m, c) in &s.terms {
        let m = if m.is_empty() { "1".to_string() } else { m.to_string() };
        let _ = writeln!(out, "| {c} | {m} |");
    }
    out
}

fn conv_name(c: Convention) -> &'static str {
    match c {
        Convention::Omega => "omega",
        Convention::OmegaBar => "omega-bar",
    }
}

fn cmd_singular(cfg: Config, space: &Space) -> Out {
    let k = &cfg.k;
    let w = parse_rational(&space.weight)?;
    let conv: Convention = space.grading.into();
    let sol = find_singular(k, &w, space.charge, conv, conv, &AnnihilatorSet::default(), cfg.bound)?;
    let reference = (space.charge == 0)
        .then(|| golden::singular_for_level(k, conv))
        .flatten()
        .filter(|g| g.state.grading().map(|(w2, _)| Rational::from_integer(w2.into()) / Rational::from_integer(2.into())) == Some(w.clone()));
    let mut md = format!(
        "# Singular vectors at k = {k}, weight {w}, charge {} ({} grading)\n\nweight-space dimension: {}\nkernel dimension: {}\n\n",
        space.charge,
        conv_name(conv),
        sol.basis_dim,
        sol.dim()
    );
    let mut ok = true;
    let mut json_solutions = Vec::new();
    if sol.dim() == 0 {
        md += "no singular vector\n";
    }
    let gm0 = AnnihilatorSet { modes: vec![Mode::bar(Generator::Gm, 0)] };
    for (i, s) in sol.solutions.iter().enumerate() {
        // normalize like the reference, when there is one
        let s = reference
            .as_ref()
            .and_then(|g| {
                let (m, c) = g.state.terms.iter().next()?;
                s.normalized_to(m, c)
            })
            .unwrap_or_else(|| s.clone());
        let other = convert_convention(&s, k, conv.other());
        let killed_by_gm0 = verify_singular(k, &s, &gm0)?.passed();
        let _ = write!(
            md,
            "## solution {}\n\n{}\nin the {} convention:\n\n{}\nannihilated by G-(0): {}\n\n",
            i + 1,
            state_table(&s),
            conv_name(conv.other()),
            state_table(&other),
            mark(killed_by_gm0)
        );
        json_solutions.push(json!({
            "state": s.to_json(),
            "converted": other.to_json(),
            "annihilated_by_gm0": killed_by_gm0,
        }));
    }
    let mut golden_json = Value::Null;
    if let Some(g) = &reference {
        let matches = sol.dim() == 1 && {
            let (m, c) = g.state.terms.iter().next().expect("nonzero reference");
            sol.solutions[0].normalized_to(m, c).as_ref() == Some(&g.state)
        };
        ok &= matches;
        let _ = writeln!(md, "reference {}: {}", g.name, if matches { "exact match" } else { "MISMATCH" });
        if cfg.check && !matches {
            let _ = write!(md, "\nreference state:\n\n{}", state_table(&g.state));
        }
        golden_json = json!({ "name": g.name, "match": matches });
    }
    let json = json!({
        "level": k.to_string(),
        "weight": w.to_string(),
        "charge": space.charge,
        "grading": conv,
        "basis_dim": sol.basis_dim,
        "kernel_dim": sol.dim(),
        "solutions": json_solutions,
        "reference": golden_json,
    });
    Ok(Report { md, json, ok })
}

fn cmd_basis(cfg: Config, space: &Space) -> Out {
    let w = parse_rational(&space.weight)?;
    let conv: Convention = space.grading.into();
    let b = enumerate_basis(&cfg.k, BaseTag::Vacuum, conv, conv, &w, space.charge, cfg.bound)?;
    let mut md = format!(
        "# Vacuum weight space at k = {}, weight {w}, charge {} ({} grading)\n\ndimension: {}\n\n",
        cfg.k,
        space.charge,
        conv_name(conv),
        b.dim()
    );
    for m in &b.basis {
        let _ = writeln!(md, "- {}", if m.is_empty() { "1".to_string() } else { m.to_string() });
    }
    let json = serde_json::to_value(&b).context("serializing basis")?;
    Ok(Report { md, json, ok: true })
}

fn cmd_zhu(cfg: Config) -> Out {
    let k = &cfg.k;
    let r = Reducer::new(k.clone());
    let mut ok = true;
    let mut md = format!("# Zhu algebra at k = {k}\n\n| relation | computed | ok |\n|---|---|---|\n");
    let mut rel_json = Vec::new();
    for (name, got, want) in r.generator_relations()? {
        let good = got == want;
        ok &= good;
        let _ = writeln!(md, "| {name} | {got} | {} |", mark(good));
        rel_json.push(json!({ "relation": name, "computed": got.to_string(), "ok": good }));
    }
    let mut json = json!({ "level": k.to_string(), "relations": rel_json });
    let with_vector = golden::singular_for_level(k, Convention::Omega).is_some();
    if !with_vector {
        md += "\nno singular vector is supplied at this level; only the generator relations are checked\n";
        return Ok(Report { md, json, ok });
    }
    let inputs = level_inputs(k, cfg.bound)?;
    // the engine's vector is monic; rescale it to the reference normalization
    let reference_bar = golden::singular_for_level(k, Convention::OmegaBar).context("reference vector")?.state;
    let (lead, lead_c) = reference_bar.terms.iter().next().context("nonzero reference")?;
    let singular = inputs.singular.normalized_to(lead, lead_c).context("reference monomial missing")?;
    let same_vector = singular == reference_bar;
    let filter = zero_mode_poly(&singular, k, Convention::Omega)?;
    let name = if *k == bpw::arith::rat(-5, 3) { "U" } else { "V" };
    let (_, _, reference) = golden::zero_mode_reference(name)?;
    let filter_ok = filter == reference;
    let pure = r.reduce(&singular)?;
    let (_, rel) = smith_relation(k, &singular, inputs.power)?;
    let frozen = golden::smith_constant(k)?;
    let relation_ok = frozen.as_ref().map_or(false, |(p, c, y0)| {
        let want = bpw::zhu::ZhuWord::from_part(
            0,
            *p,
            bpw::Poly2::from_terms([(0, 1, c.clone()), (0, 0, c * y0)]),
        );
        *p == inputs.power && rel == want
    });
    ok &= same_vector;
    ok &= filter_ok && relation_ok;
    let _ = write!(
        md,
        "\nsingular vector of weight {}\n\nzero-mode polynomial {name}(x, y) = {} (omega grading), reference: {}\n\n\
         [singular vector] = {pure}\n\n[G+(0)^{} singular vector] = {}, frozen constant: {}\n",
        inputs.weight,
        filter,
        mark(filter_ok),
        inputs.power,
        rel.factored(),
        mark(relation_ok)
    );
    let mut expansion_ok = Value::Null;
    if *k == bpw::arith::rat(-5, 3) {
        let g = golden::gplus0_sq_omega4bar();
        let (t, _) = smith_relation(k, &singular, 2)?;
        let good = t == g.state;
        ok &= good;
        let _ = write!(md, "\nG+(0)^2 applied to the omega-bar singular vector:\n\n{}\nreference: {}\n", state_table(&t), mark(good));
        expansion_ok = json!(good);
    }
    if cfg.check && !filter_ok {
        let _ = writeln!(md, "\nreference polynomial: {reference}");
    }
    json["singular_weight"] = json!(inputs.weight);
    json["zero_mode"] = json!({ "name": name, "poly": filter.to_string(), "match": filter_ok });
    json["reduction"] = pure.to_json();
    json["relation"] = json!({ "power": inputs.power, "word": rel.to_json(), "match": relation_ok });
    json["expansion_match"] = expansion_ok;
    Ok(Report { md, json, ok })
}

fn weight_list(ws: &[Weight]) -> String {
    ws.iter().map(fmt_weight).collect::<Vec<_>>().join(", ")
}

fn classification_md(c: &Classification) -> String {
    let mut md = format!("# Classification at k = {}\n\n", c.k);
    if let Some(i) = &c.inputs {
        let _ = write!(
            md,
            "singular vector of weight {}, zero-mode filter {} = 0, relation {}\n\n",
            i.weight, i.filter, i.relation
        );
    }
    if !c.finite.is_empty() || !c.infinite.is_empty() {
        md += "| weight | top level | branch |\n|---|---|---|\n";
        for m in &c.finite {
            let dim = m.top_dim.map_or("finite".to_string(), |d| d.to_string());
            let _ = writeln!(md, "| {} | {dim} | {} |", fmt_weight(&m.weight), m.branch);
        }
        for m in &c.infinite {
            let _ = writeln!(md, "| {} | infinite | {} |", fmt_weight(&m.weight), m.branch);
        }
        md += "\n";
    }
    if !c.certificates.is_empty() {
        md += "| weight | h_i as a polynomial in i | rational roots | no positive integer root |\n|---|---|---|---|\n";
        for cert in &c.certificates {
            let _ = writeln!(
                md,
                "| {} | {} | {} | {} |",
                fmt_weight(&cert.weight),
                cert.h,
                cert.rational_roots.join(", "),
                mark(cert.infinite_top)
            );
        }
        md += "\n";
    }
    for f in &c.families {
        let _ = writeln!(md, "- {}: y = {}; {} ({})", f.description, f.y_of_x, f.identity, mark(f.holds));
    }
    for f in &c.flags {
        let _ = writeln!(md, "- flag: {f}");
    }
    if !c.audit.is_empty() {
        md += "\n## audit\n\n";
        for a in &c.audit {
            let _ = writeln!(md, "- {}: {}", a.branch, a.system.join(", "));
            for (w, v) in a.solutions.iter().zip(&a.verdicts) {
                let _ = writeln!(md, "  - {}: {v}", fmt_weight(w));
            }
            if !a.complete {
                md += "  - irrational common zeros not ruled out\n";
            }
        }
    }
    md
}

fn cmd_classify(cfg: Config) -> Out {
    let c = classify_level(&cfg.k, cfg.bound)?;
    let mut md = classification_md(&c);
    let closure = c.closure_holds();
    let families = c.families.iter().all(|f| f.holds);
    let certs = c.certificates.iter().all(|x| x.infinite_top);
    let mut ok = closure && families && certs;
    let _ = writeln!(md, "\nclosed under contragredient and spectral flow: {}", mark(closure));
    let mut reference = Value::Null;
    if let Some((fin, inf)) = golden::classification_reference(&cfg.k)? {
        let set = |v: Vec<Weight>| v.into_iter().collect::<BTreeSet<_>>();
        let fin_ok = set(c.finite_weights()) == set(fin.clone());
        let inf_ok = set(c.infinite_weights()) == set(inf.clone());
        ok &= fin_ok && inf_ok;
        let _ = writeln!(md, "reference weight lists: {}", mark(fin_ok && inf_ok));
        if cfg.check {
            let _ = writeln!(md, "\nreference finite: {}\nreference infinite: {}", weight_list(&fin), weight_list(&inf));
        }
        reference = json!({ "finite": fin_ok, "infinite": inf_ok });
    }
    let mut json = serde_json::to_value(&c).context("serializing classification")?;
    json["closure"] = json!(closure);
    json["reference"] = reference;
    Ok(Report { md, json, ok })
}

fn lines_md(title: &str, lines: &[LemmaLine]) -> String {
    let mut s = format!("| {title} | expected | computed | ok |\n|---|---|---|---|\n");
    for l in lines {
        let _ = writeln!(s, "| {} | {} | {} | {} |", l.identity, l.expected, l.computed, mark(l.ok));
    }
    s
}

fn cmd_freefield(cfg: Config) -> Out {
    let e = Embedding::for_level(&cfg.k)?;
    let report = e.check_embedding()?;
    let mut ok = report.passed();
    let mut md = format!("# Free-field realization at k = {}\n\n{}", cfg.k, report.to_markdown());
    let mut json = json!({ "level": cfg.k.to_string(), "report": report });
    if e.alg.gens.len() == 2 {
        // the Weyl realization: compare the two ways of seeing the weight-4 kernel
        let (dim, ker) = e.kernel_on_weight_space(&bpw::arith::int(4), 0)?;
        let sectors = weyl_charge_decomposition(4)?;
        let w40 = sectors
            .iter()
            .find(|s| s.weight == bpw::arith::int(4) && s.charge == bpw::arith::int(0))
            .map_or(0, |s| s.dim);
        let omega4 = golden::omega4().state.monic();
        let kernel_ok = ker.len() == 1 && ker[0] == omega4;
        let hw: Vec<_> = [0u8, 1]
            .iter()
            .map(|&g| e.highest_weight(&e.alg.field(g)))
            .collect::<bpw::Result<_>>()?;
        let hw_ok = hw
            == vec![
                Some((bpw::arith::rat(1, 3), bpw::arith::rat(1, 3))),
                Some((bpw::arith::rat(-1, 3), bpw::arith::rat(2, 3))),
            ];
        ok &= kernel_ok && w40 == 12 && hw_ok;
        let _ = write!(
            md,
            "\ndim of the weight-4 charge-0 space: {dim} in W^k, {w40} in the Weyl algebra\n\
             kernel of the map there: dimension {}, spanned by the singular vector: {}\n\
             highest weights of a+, a-: {}, {} ({})\n",
            ker.len(),
            mark(kernel_ok),
            hw[0].as_ref().map_or("not highest weight".to_string(), fmt_weight),
            hw[1].as_ref().map_or("not highest weight".to_string(), fmt_weight),
            mark(hw_ok)
        );
        md += "\n| weight | J(0) charge | class | dim |\n|---|---|---|---|\n";
        for s in &sectors {
            let _ = writeln!(md, "| {} | {} | {} | {} |", s.weight, s.charge, s.class, s.dim);
        }
        json["weight4"] = json!({ "bp_dim": dim, "weyl_dim": w40, "kernel_dim": ker.len(), "kernel_is_singular": kernel_ok });
        json["sectors"] = serde_json::to_value(&sectors).context("serializing sectors")?;
        json["highest_weights"] = json!(hw_ok);
    } else {
        let lines = symplectic_in_clifford();
        let good = lines.iter().all(|l| l.ok);
        ok &= good;
        let _ = write!(md, "\nsymplectic fermions inside the Clifford algebra (b = -D psi+, c = psi-):\n\n{}", lines_md("identity", &lines));
        json["symplectic_in_clifford"] = serde_json::to_value(&lines).context("serializing checks")?;
    }
    Ok(Report { md, json, ok })
}

fn run(cli: Cli) -> Out {
    match cli.cmd {
        Cmd::Singular { common, space } => {
            let f = common.format;
            with_format(cmd_singular(config(&common)?, &space), f)
        }
        Cmd::Basis { common, space } => {
            let f = common.format;
            with_format(cmd_basis(config(&common)?, &space), f)
        }
        Cmd::Zhu { common } => {
            let f = common.format;
            with_format(cmd_zhu(config(&common)?), f)
        }
        Cmd::Classify { common } => {
            let f = common.format;
            with_format(cmd_classify(config(&common)?), f)
        }
        Cmd::Freefield { common } => {
            let f = common.format;
            with_format(cmd_freefield(config(&common)?), f)
        }
    }
}

fn with_format(r: Out, f: Format) -> Out {
    let mut r = r?;
    if let Format::Json = f {
        r.md = serde_json::to_string_pretty(&json!({ "ok": r.ok, "result": r.json })).expect("json") + "\n";
    }
    Ok(r)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(r) => {
            print!("{}", r.md);
            if r.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
