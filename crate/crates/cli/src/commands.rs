//! One function per subcommand. Each returns the result document together
//! with its human-readable rendering.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use anyhow::{anyhow, bail, Context, Result};
use serde_json::{json, Value};
use wspec_core::bounds::{self, sandwich_check};
use wspec_core::constructions::{self, ColumnMultiset};
use wspec_core::search::{self, min_mws_length, optimal_spectrum, SearchSpec};
use wspec_core::spectra;
use wspec_core::tables::{self, RowStatus, TableOptions, TableReport};
use wspec_core::{
    BoundReport, EnumerationOrder, GeneratorMatrix, PrimeField, WeightFunction, WeightSpectrum,
};

use crate::document::ResultDocument;
use crate::matrix_file;

pub struct Outcome {
    pub document: ResultDocument,
    pub text: String,
    /// False when the command ran but found something that should fail the
    /// process, such as an unexpected table mismatch.
    pub success: bool,
}

impl Outcome {
    fn ok(document: ResultDocument, text: String) -> Self {
        Self {
            document,
            text,
            success: true,
        }
    }
}

/// `hamming`, `lee`, `manhattan` or `custom:FILE`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WeightSpec {
    Named(String),
    Custom(PathBuf),
}

impl FromStr for WeightSpec {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "hamming" | "lee" | "manhattan" => Ok(WeightSpec::Named(s.to_string())),
            _ => match s.strip_prefix("custom:") {
                Some(path) if !path.is_empty() => Ok(WeightSpec::Custom(PathBuf::from(path))),
                _ => Err(format!(
                    "unknown weight `{s}` (expected hamming, lee, manhattan or custom:FILE)"
                )),
            },
        }
    }
}

impl WeightSpec {
    pub fn label(&self) -> String {
        match self {
            WeightSpec::Named(n) => n.clone(),
            WeightSpec::Custom(p) => format!("custom:{}", p.display()),
        }
    }

    /// Builds the weight function. A custom table fixes `q` itself; a
    /// conflicting `q` is an error.
    pub fn resolve(&self, q: Option<u64>) -> Result<WeightFunction> {
        match self {
            WeightSpec::Named(name) => {
                let q = q.ok_or_else(|| anyhow!("--q is required with --weight {name}"))?;
                Ok(WeightFunction::builtin(name, PrimeField::new(q)?)?)
            }
            WeightSpec::Custom(path) => {
                let text = read(path)?;
                let wf = WeightFunction::parse_custom(&text)
                    .with_context(|| format!("reading weight table {}", path.display()))?;
                if let Some(q) = q {
                    if u64::from(wf.field().q()) != q {
                        bail!(
                            "weight table {} is over Z_{}, but q = {q}",
                            path.display(),
                            wf.field().q()
                        );
                    }
                }
                Ok(wf)
            }
        }
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn field(q: u64) -> Result<PrimeField> {
    Ok(PrimeField::new(q)?)
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// Size, extremes, verdicts and the sandwich check of a spectrum.
fn spectrum_values(s: &WeightSpectrum, wf: &WeightFunction) -> Result<Value> {
    let m = wf.constants().m;
    let code_size = s.codeword_count();
    let r = s.max_multiplicity();
    let observed = s.size() as u64;
    Ok(json!({
        "n": s.n,
        "k": s.k,
        "q": s.q,
        "weight": s.weight_name,
        "size": observed,
        "min": s.min(),
        "max": s.max(),
        "weights": s.weights,
        "distribution": s.distribution.iter().map(|(w, c)| [*w, *c]).collect::<Vec<_>>(),
        "fws": s.is_fws(wf)?,
        "mws": s.is_mws(wf)?,
        "mws_size": spectra::mws_spectrum_size(wf, s.k)?,
        "sandwich": {
            "code_size": code_size,
            "max_multiplicity": r,
            "lower": (code_size - 1).div_ceil(r.max(1)),
            "upper": m.saturating_mul(s.n as u64),
            "observed": observed,
            "holds": sandwich_check(code_size, r, m, s.n as u64, observed),
        },
    }))
}

fn spectrum_text(out: &mut String, v: &Value) {
    let _ = writeln!(
        out,
        "spectrum size {} (MWS size {})",
        v["size"], v["mws_size"]
    );
    let _ = writeln!(out, "weights       {}", v["weights"]);
    let _ = writeln!(out, "min / max     {} / {}", v["min"], v["max"]);
    let _ = writeln!(
        out,
        "FWS {}  MWS {}",
        yes_no(v["fws"].as_bool() == Some(true)),
        yes_no(v["mws"].as_bool() == Some(true))
    );
    let sw = &v["sandwich"];
    let _ = writeln!(
        out,
        "sandwich      {} <= {} <= {}: {}",
        sw["lower"],
        sw["observed"],
        sw["upper"],
        if sw["holds"].as_bool() == Some(true) {
            "holds"
        } else {
            "VIOLATED"
        }
    );
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Family {
    GeneralFws,
    LeeMws,
    ManhattanMws,
    ManhattanFws,
}

impl Family {
    fn name(self) -> &'static str {
        match self {
            Family::GeneralFws => "general-fws",
            Family::LeeMws => "lee-mws",
            Family::ManhattanMws => "manhattan-mws",
            Family::ManhattanFws => "manhattan-fws",
        }
    }

    fn description(self) -> &'static str {
        match self {
            Family::GeneralFws => {
                "unit vectors e_i with multiplicities a_i <= m*(a_1+...+a_{i-1}) + 1; FWS for k <= n <= ((m+1)^k-1)/m"
            }
            Family::LeeMws => {
                "e_i and e_i+e_j (i<j) with multiplicities 1, a, a^2, ..., a = (q+1)/2; Lee-MWS"
            }
            Family::ManhattanMws => "e_i with multiplicity q^(i-1); Manhattan MWS and FWS at n = (q^k-1)/(q-1)",
            Family::ManhattanFws => "general FWS construction under the Manhattan weight",
        }
    }

    fn natural_weight(self) -> Option<&'static str> {
        match self {
            Family::GeneralFws => None,
            Family::LeeMws => Some("lee"),
            Family::ManhattanMws | Family::ManhattanFws => Some("manhattan"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum OutFormat {
    Matrix,
    Multiset,
}

pub struct ConstructArgs {
    pub family: Family,
    pub k: usize,
    pub q: Option<u64>,
    pub n: Option<u64>,
    pub weight: Option<WeightSpec>,
    pub out_format: OutFormat,
    pub out: Option<PathBuf>,
}

pub fn construct(a: &ConstructArgs) -> Result<Outcome> {
    let weight = match (&a.weight, a.family.natural_weight()) {
        (Some(w), _) => w.clone(),
        (None, Some(name)) => WeightSpec::Named(name.to_string()),
        (None, None) => bail!("--weight is required for {}", a.family.name()),
    };
    let wf = weight.resolve(a.q)?;
    let f = wf.field();
    let needs_n = matches!(a.family, Family::GeneralFws | Family::ManhattanFws);
    let n = match (needs_n, a.n) {
        (true, Some(n)) => Some(n),
        (true, None) => bail!("--n is required for {}", a.family.name()),
        (false, Some(_)) => bail!("{} has a fixed length; drop --n", a.family.name()),
        (false, None) => None,
    };
    let code = match a.family {
        Family::GeneralFws => constructions::general_fws(a.k, &wf, n.unwrap_or_default())?,
        Family::LeeMws => constructions::lee_mws(a.k, f)?,
        Family::ManhattanMws => constructions::manhattan_mws(a.k, f)?,
        Family::ManhattanFws => constructions::manhattan_fws(a.k, f, n.unwrap_or_default())?,
    };
    let s = code.spectrum(&wf)?;
    let summary = spectrum_values(&s, &wf)?;
    let body = match a.out_format {
        OutFormat::Matrix => matrix_file::render(&code.expand()?),
        OutFormat::Multiset => code.to_string(),
    };
    if let Some(path) = &a.out {
        std::fs::write(path, &body).with_context(|| format!("cannot write {}", path.display()))?;
    }

    let mut doc = ResultDocument::new("construct")
        .param("family", a.family.name())
        .param("k", a.k)
        .param("q", f.q())
        .param("n", n)
        .param("weight", weight.label())
        .param("out_format", format!("{:?}", a.out_format).to_lowercase());
    doc.citation.push(a.family.description().to_string());
    doc.values = json!({
        "n": code.n()?,
        "spectrum": summary,
        "matrix": if a.out_format == OutFormat::Matrix { Value::String(body.clone()) } else { Value::Null },
    });
    doc.witnesses.push(code.lines());

    let mut text = format!(
        "{} k={} q={} n={} weight={}\n",
        a.family.name(),
        a.k,
        f.q(),
        code.n()?,
        wf.name()
    );
    spectrum_text(&mut text, &summary);
    match &a.out {
        Some(path) => {
            let _ = writeln!(text, "written to {}", path.display());
        }
        None => {
            text.push('\n');
            text.push_str(&body);
        }
    }
    Ok(Outcome::ok(doc, text))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum InputFormat {
    Matrix,
    Multiset,
}

pub fn spectrum(
    path: &Path,
    input: InputFormat,
    q: Option<u64>,
    weight: &WeightSpec,
) -> Result<Outcome> {
    let text = read(path)?;
    let g: GeneratorMatrix = match input {
        InputFormat::Matrix => {
            matrix_file::parse(&text).with_context(|| format!("reading {}", path.display()))?
        }
        InputFormat::Multiset => {
            let q = q.ok_or_else(|| anyhow!("--q is required for multiset input"))?;
            ColumnMultiset::parse(field(q)?, &text)
                .with_context(|| format!("reading {}", path.display()))?
                .expand()?
        }
    };
    if let Some(q) = q {
        if u64::from(g.q()) != q {
            bail!("matrix is over Z_{}, but --q {q} was given", g.q());
        }
    }
    let wf = weight.resolve(Some(u64::from(g.q())))?;
    let s = spectra::spectrum(&g, &wf)?;
    let values = spectrum_values(&s, &wf)?;

    let mut doc = ResultDocument::new("spectrum")
        .param("file", path.display().to_string())
        .param("input_format", format!("{input:?}").to_lowercase())
        .param("weight", weight.label());
    doc.citation
        .push("weight spectrum by enumerating all q^k codewords".to_string());
    doc.citation.push(
        "sandwich: ceil((q^k-1)/r) <= |spectrum| <= m*n, r = largest weight multiplicity"
            .to_string(),
    );
    doc.values = values.clone();

    let mut out = format!(
        "[{},{}]_{} code, weight {}\n",
        g.n(),
        g.k(),
        g.q(),
        wf.name()
    );
    spectrum_text(&mut out, &values);
    out.push_str("distribution\n");
    for (w, count) in &s.distribution {
        let _ = writeln!(out, "  {w:>6}  {count}");
    }
    Ok(Outcome::ok(doc, out))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Order {
    Forward,
    Reverse,
}

impl From<Order> for EnumerationOrder {
    fn from(o: Order) -> Self {
        match o {
            Order::Forward => EnumerationOrder::Forward,
            Order::Reverse => EnumerationOrder::Reverse,
        }
    }
}

pub struct SearchArgs {
    pub n: usize,
    pub k: usize,
    pub q: Option<u64>,
    pub weight: WeightSpec,
    pub jobs: usize,
    pub budget: u64,
    pub order: Order,
}

pub fn search(a: &SearchArgs) -> Result<Outcome> {
    let wf = a.weight.resolve(a.q)?;
    let spec = SearchSpec::new(a.n, a.k, wf.clone())
        .with_workers(a.jobs)
        .with_budget(a.budget)
        .with_order(a.order.into());
    let r = optimal_spectrum(&spec)?;

    let mut doc = ResultDocument::new("search")
        .param("n", a.n)
        .param("k", a.k)
        .param("q", wf.field().q())
        .param("weight", a.weight.label())
        .param("jobs", a.jobs)
        .param("budget", a.budget)
        .param("order", format!("{:?}", a.order).to_lowercase());
    doc.citation.push(
        "exhaustive search over multisets of canonical columns, one per orbit of weight-preserving scalars"
            .to_string(),
    );
    doc.values = json!({
        "l_value": r.l_value,
        "mws_attained": r.is_mws_attained,
        "fws_attained": r.is_fws_attained,
        "multisets_examined": r.multisets_examined,
        "full_rank_multisets": r.full_rank_multisets,
        "exhaustive": r.exhaustive,
        "witness_cap": search::WITNESS_CAP,
    });
    doc.witnesses = r.witnesses.iter().map(ColumnMultiset::lines).collect();

    let mut out = format!(
        "L({},{},{}) = {} under {}\n",
        a.n,
        a.k,
        wf.field().q(),
        r.l_value,
        wf.name()
    );
    let _ = writeln!(
        out,
        "MWS attained {}  FWS attained {}",
        yes_no(r.is_mws_attained),
        yes_no(r.is_fws_attained)
    );
    let _ = writeln!(
        out,
        "multisets examined {} (full rank {})",
        r.multisets_examined, r.full_rank_multisets
    );
    for (i, w) in r.witnesses.iter().enumerate() {
        let _ = writeln!(out, "witness {}", i + 1);
        for line in w.lines() {
            let _ = writeln!(out, "  {line}");
        }
    }
    Ok(Outcome::ok(doc, out))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum QuantityArg {
    #[value(name = "L")]
    L,
    #[value(name = "M")]
    M,
    #[value(name = "N")]
    N,
}

pub fn bounds(
    quantity: QuantityArg,
    weight: &WeightSpec,
    k: usize,
    q: Option<u64>,
    n: Option<u64>,
) -> Result<Outcome> {
    let wf = weight.resolve(q)?;
    let report: BoundReport = match quantity {
        QuantityArg::L => bounds::spectrum_ceiling(&wf, k, n)?,
        QuantityArg::M | QuantityArg::N if n.is_some() => bail!("--n only applies to L"),
        QuantityArg::M => bounds::mws_min_length(&wf, k)?,
        QuantityArg::N => bounds::fws_max_length(&wf, k)?,
    };
    let mut doc = ResultDocument::new("bounds")
        .param("quantity", format!("{quantity:?}"))
        .param("weight", weight.label())
        .param("k", k)
        .param("q", wf.field().q())
        .param("n", n);
    for b in [&report.lower, &report.upper, &report.exact]
        .into_iter()
        .flatten()
    {
        doc.citation.push(b.source.clone());
    }
    doc.values = serde_json::to_value(&report)?;

    let mut out = format!(
        "{} for {} weight, k={}, q={}\n",
        report.quantity, report.weight, k, report.q
    );
    if let Some(n) = n {
        let _ = writeln!(out, "n = {n}");
    }
    let _ = writeln!(out, "{}", report.summary());
    for (label, b) in [
        ("lower", &report.lower),
        ("upper", &report.upper),
        ("exact", &report.exact),
    ] {
        if let Some(b) = b {
            let _ = writeln!(out, "  {label:<5} {:>8}  {}", b.value, b.source);
        }
    }
    for note in &report.notes {
        let _ = writeln!(out, "  note: {note}");
    }
    Ok(Outcome::ok(doc, out))
}

fn status_label(s: RowStatus) -> &'static str {
    match s {
        RowStatus::Match => "MATCH",
        RowStatus::Mismatch => "MISMATCH",
        RowStatus::ExpectedMismatch => "MISMATCH (documented)",
        RowStatus::CeilingConsistent => "CEILING OK",
        RowStatus::CeilingInconsistent => "CEILING MISMATCH",
    }
}

fn flag(b: Option<bool>) -> &'static str {
    match b {
        Some(true) => "y",
        Some(false) => "n",
        None => "-",
    }
}

pub fn render_table(report: &TableReport) -> String {
    let mut out = format!("table {}\n", report.name);
    let _ = writeln!(
        out,
        "{:<14} {:<10} {:>9} {:>9}  {:>7}  {:>7}  status",
        "entry", "weight", "published", "computed", "MWS p/c", "FWS p/c"
    );
    for r in &report.rows {
        let computed = r
            .computed
            .map_or_else(|| "-".to_string(), |c| c.to_string());
        let _ = writeln!(
            out,
            "{:<14} {:<10} {:>9} {:>9}  {:>7}  {:>7}  {}",
            r.label,
            r.weight,
            r.published,
            computed,
            format!("{}/{}", flag(r.published_mws), flag(r.computed_mws)),
            format!("{}/{}", flag(r.published_fws), flag(r.computed_fws)),
            status_label(r.status)
        );
        if let Some(note) = &r.note {
            let _ = writeln!(out, "{:<14} {note}", "");
        }
    }
    let _ = writeln!(out, "unexpected mismatches: {}", report.unexpected());
    out
}

pub fn table(name: &str, jobs: usize, budget: u64) -> Result<Outcome> {
    let opts = TableOptions {
        workers: jobs,
        budget,
    };
    let report = tables::by_name(name, opts).ok_or_else(|| {
        anyhow!(
            "unknown table `{name}` (expected one of {})",
            tables::TABLE_NAMES.join(", ")
        )
    })??;
    let mut doc = ResultDocument::new("table")
        .param("name", name)
        .param("jobs", jobs)
        .param("budget", budget);
    doc.citation
        .push(format!("published optimal spectrum sizes, {name} subset"));
    doc.values = serde_json::to_value(&report)?;
    let text = render_table(&report);
    Ok(Outcome {
        document: doc,
        text,
        success: report.unexpected() == 0,
    })
}

pub struct MinMwsArgs {
    pub k: usize,
    pub q: Option<u64>,
    pub weight: WeightSpec,
    pub n_max: usize,
    pub jobs: usize,
    pub budget: u64,
    pub order: Order,
}

pub fn min_mws(a: &MinMwsArgs) -> Result<Outcome> {
    let wf = a.weight.resolve(a.q)?;
    let o = min_mws_length(a.k, &wf, a.n_max, a.budget, a.jobs, a.order.into())?;
    let mut doc = ResultDocument::new("min-mws")
        .param("k", a.k)
        .param("q", wf.field().q())
        .param("weight", a.weight.label())
        .param("n_max", a.n_max)
        .param("jobs", a.jobs)
        .param("budget", a.budget)
        .param("order", format!("{:?}", a.order).to_lowercase());
    doc.citation
        .push("exhaustive search at each length from the MWS lower bound upward".to_string());
    let per_n: Vec<Value> = o
        .per_n
        .iter()
        .map(|r| json!({"n": r.n, "l_value": r.l_value, "mws_attained": r.is_mws_attained, "multisets_examined": r.multisets_examined}))
        .collect();
    doc.values = json!({
        "found_n": o.found_n,
        "per_n": per_n,
        "budget_exceeded": o.budget_exceeded,
    });
    if let Some(last) = o.per_n.last().filter(|r| r.is_mws_attained) {
        doc.witnesses = last.witnesses.iter().map(ColumnMultiset::lines).collect();
    }

    let mut out = String::new();
    for r in &o.per_n {
        let _ = writeln!(
            out,
            "n={:<4} L={:<6} MWS {}",
            r.n,
            r.l_value,
            yes_no(r.is_mws_attained)
        );
    }
    match (o.found_n, &o.budget_exceeded) {
        (Some(n), _) => {
            let _ = writeln!(out, "shortest MWS length: {n}");
        }
        (None, Some(stop)) => {
            let _ = writeln!(
                out,
                "stopped at n={}: needs {} multisets, budget {}",
                stop.n, stop.required, stop.budget
            );
        }
        (None, None) => {
            let _ = writeln!(out, "no MWS code up to n={}", a.n_max);
        }
    }
    Ok(Outcome::ok(doc, out))
}
