use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use expcomb::{
    addr_from_angled, angled_internal, bifurcate, bifurcate_at_height, classify, compare, component_from_boundary,
    enumerate_intermediate, essential_orbit_count, exhaustive_check, internal_address, itinerary, kneading, kneading_from_internal,
    lowest_period_on_arc, sector_boundary, sector_info, tune, Address, AngledInternalAddress, ArcQuery, Classification,
    EnumerationBounds, Entry, EssentialOrbits, Height, HyperbolicComponent, InfiniteAddress, InternalAddress, Rational64,
    SectorKey, SectorRef, TuningBlockTable, TuningVariant,
};
use serde_json::{json, Value};
use thiserror::Error;

#[derive(Parser)]
#[command(name = "expcomb", version, about = "Exact combinatorics of hyperbolic components of exp(z) + k")]
struct Cli {
    /// Print a JSON record instead of the plain literal.
    #[arg(long, global = true)]
    json: bool,
    /// Print nothing on success; the exit code carries the result.
    #[arg(long, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Kneading sequence of an address.
    Kneading {
        #[arg(allow_hyphen_values = true)]
        address: String,
    },
    /// Itinerary of an address with respect to a base address.
    Itinerary {
        #[arg(allow_hyphen_values = true)]
        address: String,
        #[arg(allow_hyphen_values = true)]
        base: String,
    },
    /// Internal address of an address.
    Internal {
        #[arg(allow_hyphen_values = true)]
        address: String,
    },
    /// Angled internal address of an intermediate address.
    Angled {
        #[arg(allow_hyphen_values = true)]
        address: String,
    },
    /// Characteristic addresses of a component.
    Char {
        #[arg(allow_hyphen_values = true)]
        component: String,
    },
    /// Sector boundary of a component with the given n-th entry.
    SectorBoundary {
        #[arg(allow_hyphen_values = true)]
        component: String,
        #[arg(allow_hyphen_values = true)]
        entry: String,
    },
    /// All labels and the bounding addresses of one sector.
    Sector {
        #[arg(allow_hyphen_values = true)]
        component: String,
        #[command(flatten)]
        key: SectorKeyArgs,
    },
    /// Child component at a sector label and rotation number, or at a height.
    Bifurcate {
        #[arg(allow_hyphen_values = true)]
        component: String,
        #[arg(long, allow_hyphen_values = true, requires = "angle", conflicts_with = "height")]
        label: Option<String>,
        #[arg(long)]
        angle: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        height: Option<String>,
    },
    /// Primitive or satellite, with parent and rotation number.
    Classify {
        #[arg(allow_hyphen_values = true)]
        component: String,
    },
    /// Parent address of a satellite component.
    Parent {
        #[arg(allow_hyphen_values = true)]
        component: String,
    },
    /// Lexicographic comparison of two addresses.
    Compare {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    /// Whether an address lies in the wake of a component.
    WakeContains {
        #[arg(allow_hyphen_values = true)]
        component: String,
        #[arg(allow_hyphen_values = true)]
        address: String,
    },
    /// Kneading sequence with the given internal address.
    FromInternal {
        #[arg(allow_hyphen_values = true)]
        internal: String,
    },
    /// Intermediate address with the given angled internal address.
    FromAngled {
        #[arg(allow_hyphen_values = true)]
        angled: String,
    },
    /// Component having a periodic address as a sector boundary.
    FromBoundary {
        #[arg(allow_hyphen_values = true)]
        boundary: String,
    },
    /// Image of an address under a tuning map.
    Tune {
        #[arg(allow_hyphen_values = true)]
        base: String,
        #[arg(allow_hyphen_values = true)]
        address: String,
        #[arg(long, value_enum, default_value_t = VariantArg::Upper)]
        variant: VariantArg,
    },
    /// Component of lowest period between a sector and an address in its wake.
    Arc {
        #[arg(allow_hyphen_values = true)]
        component: String,
        #[arg(allow_hyphen_values = true)]
        target: String,
        #[command(flatten)]
        key: SectorKeyArgs,
    },
    /// Number of essential periodic orbits of a component.
    Orbits {
        #[arg(allow_hyphen_values = true)]
        component: String,
    },
    /// Bifurcation tree of all components within bounds.
    Tree {
        #[arg(long, default_value_t = 3)]
        max: usize,
        #[arg(long, default_value_t = 1)]
        bound: i64,
        #[arg(long, value_enum, default_value_t = TreeFormat::Dot)]
        format: TreeFormat,
    },
    /// Run an exhaustive property suite.
    Check {
        suite: String,
        #[arg(long, default_value_t = 5)]
        max: usize,
        #[arg(long, default_value_t = 2)]
        bound: i64,
    },
    /// Every description of a component in one record.
    Describe {
        #[arg(allow_hyphen_values = true)]
        component: String,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct SectorKeyArgs {
    #[arg(long, allow_hyphen_values = true)]
    height_index: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    label: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    kneading_entry: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    number: Option<i64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    Upper,
    Lower,
}

#[derive(Clone, Copy, ValueEnum)]
enum TreeFormat {
    Dot,
    Json,
}

#[derive(Debug, Error)]
enum CliError {
    #[error(transparent)]
    Domain(#[from] expcomb::Error),
    #[error("{0}")]
    Usage(String),
    #[error("{failed} of {cases} cases failed")]
    CheckFailed { failed: usize, cases: usize },
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Domain(e) if e.is_parse() => 2,
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }
}

type CliResult<T> = Result<T, CliError>;

/// What a command prints: a plain literal and the matching JSON record, plus
/// an error for commands that report a failure after printing.
struct Output {
    text: String,
    json: Value,
    failure: Option<CliError>,
}

impl Output {
    fn new(text: impl Into<String>, json: Value) -> Self {
        Output { text: text.into(), json, failure: None }
    }
}

fn address(s: &str) -> CliResult<Address> {
    Ok(s.parse()?)
}

fn component(s: &str) -> CliResult<HyperbolicComponent> {
    Ok(s.parse()?)
}

fn rational(s: &str) -> CliResult<Rational64> {
    s.parse().map_err(|_| CliError::Usage(format!("`{s}` is not a fraction p/q")))
}

fn sector_key(k: &SectorKeyArgs) -> CliResult<SectorKey> {
    Ok(match (k.height_index, &k.label, k.kneading_entry, k.number) {
        (Some(h), ..) => SectorKey::HeightIndex(h),
        (_, Some(l), ..) => SectorKey::Label(l.parse::<Entry>()?),
        (_, _, Some(u), _) => SectorKey::KneadingEntry(u),
        (.., Some(m)) => SectorKey::SectorNumber(m),
        _ => return Err(CliError::Usage("a sector key is required".into())),
    })
}

fn pair_json(lo: &InfiniteAddress, hi: &InfiniteAddress) -> Value {
    json!({ "lower": lo.to_string(), "upper": hi.to_string() })
}

fn sector_json(s: &SectorRef) -> Value {
    json!({
        "component": s.component.addr().to_string(),
        "height_index": s.height_index,
        "label": s.label.to_string(),
        "kneading_entry": s.kneading_entry,
        "sector_number": s.sector_number,
        "kneading": s.kneading().to_string(),
        "wake": pair_json(&s.wake.lower, &s.wake.upper),
    })
}

fn classification_json(c: &Classification) -> Value {
    match c {
        Classification::Primitive => json!({ "type": "primitive" }),
        Classification::Satellite { parent, rotation } => {
            json!({ "type": "satellite", "parent": parent.to_string(), "rotation": rotation.to_string() })
        }
    }
}

fn classification_text(c: &Classification) -> String {
    match c {
        Classification::Primitive => "primitive".into(),
        Classification::Satellite { parent, rotation } => format!("satellite parent={parent} rotation={rotation}"),
    }
}

fn classify_any(w: &HyperbolicComponent) -> CliResult<Option<Classification>> {
    if w.period() == 1 {
        return Ok(None);
    }
    Ok(Some(classify(w.addr())?))
}

fn describe(w: &HyperbolicComponent) -> CliResult<Value> {
    let characteristic = match w.characteristic() {
        Ok((lo, hi)) => pair_json(&lo, &hi),
        Err(_) => Value::Null,
    };
    let forbidden = w.forbidden_kneading().ok().map(|k| k.to_string());
    let classification = match classify_any(w)? {
        Some(c) => classification_json(&c),
        None => json!({ "type": "primitive" }),
    };
    Ok(json!({
        "address": w.addr().to_string(),
        "period": w.period(),
        "kneading": w.kneading().to_string(),
        "forbidden_kneading": forbidden,
        "characteristic": characteristic,
        "internal_address": w.internal_address().to_string(),
        "angled_internal_address": angled_internal(w.addr())?.to_string(),
        "classification": classification,
    }))
}

fn tree(bounds: EnumerationBounds, format: TreeFormat) -> CliResult<Output> {
    let nodes: Vec<HyperbolicComponent> = enumerate_intermediate(bounds).into_iter().map(HyperbolicComponent::new).collect();
    let mut edges = Vec::new();
    for w in &nodes {
        if let Some(Classification::Satellite { parent, rotation }) = classify_any(w)? {
            edges.push((parent.to_string(), w.addr().to_string(), rotation));
        }
    }
    let text = match format {
        TreeFormat::Dot => {
            let mut out = String::from("digraph bifurcations {\n");
            for w in &nodes {
                let a = w.addr().to_string();
                let _ = writeln!(out, "  \"{a}\" [label=\"{a}\\nperiod {}\\n{}\"];", w.period(), w.internal_address());
            }
            for (p, c, r) in &edges {
                let _ = writeln!(out, "  \"{p}\" -> \"{c}\" [label=\"{r}\"];");
            }
            out.push('}');
            out
        }
        TreeFormat::Json => String::new(),
    };
    let json_nodes: Vec<Value> = nodes
        .iter()
        .map(|w| {
            let a = w.addr().to_string();
            let children: Vec<&String> = edges.iter().filter(|e| e.0 == a).map(|e| &e.1).collect();
            json!({
                "address": a,
                "period": w.period(),
                "internal_address": w.internal_address().to_string(),
                "children": children,
            })
        })
        .collect();
    let json_edges: Vec<Value> =
        edges.iter().map(|(p, c, r)| json!({ "parent": p, "child": c, "rotation": r.to_string() })).collect();
    let json = json!({ "nodes": json_nodes, "edges": json_edges });
    let text = match format {
        TreeFormat::Dot => text,
        TreeFormat::Json => serde_json::to_string_pretty(&json).expect("serializable"),
    };
    Ok(Output::new(text, json))
}

fn run(command: &Command) -> CliResult<Output> {
    Ok(match command {
        Command::Kneading { address: a } => {
            let k = kneading(&address(a)?)?;
            Output::new(k.to_string(), json!({ "address": a, "kneading": k.to_string() }))
        }
        Command::Itinerary { address: a, base } => {
            let it = itinerary(&address(a)?, &address(base)?);
            Output::new(it.to_string(), json!({ "address": a, "base": base, "itinerary": it.to_string() }))
        }
        Command::Internal { address: a } => {
            let ia = internal_address(&address(a)?)?;
            Output::new(ia.to_string(), json!({ "address": a, "internal_address": ia.to_string() }))
        }
        Command::Angled { address: a } => {
            let w = component(a)?;
            let ang = angled_internal(w.addr())?;
            Output::new(ang.to_string(), json!({ "address": a, "angled_internal_address": ang.to_string() }))
        }
        Command::Char { component: c } => {
            let (lo, hi) = component(c)?.characteristic()?;
            Output::new(format!("lower={lo} upper={hi}"), pair_json(&lo, &hi))
        }
        Command::SectorBoundary { component: c, entry } => {
            let r = sector_boundary(&component(c)?, entry.parse::<Entry>()?)?;
            Output::new(r.to_string(), json!({ "component": c, "entry": entry, "boundary": r.to_string() }))
        }
        Command::Sector { component: c, key } => {
            let s = sector_info(&component(c)?, sector_key(key)?)?;
            let text = format!(
                "height-index={} label={} kneading-entry={} sector-number={} lower={} upper={}",
                s.height_index, s.label, s.kneading_entry, s.sector_number, s.wake.lower, s.wake.upper
            );
            Output::new(text, sector_json(&s))
        }
        Command::Bifurcate { component: c, label, angle, height } => {
            let w = component(c)?;
            let child = match (label, angle, height) {
                (Some(l), Some(a), None) => bifurcate(&w, l.parse::<Entry>()?, rational(a)?)?,
                (None, None, Some(h)) => match h.parse::<Height>()? {
                    Height::Angle(h) => bifurcate_at_height(&w, h)?,
                    Height::Infinity => return Err(CliError::Usage("height must be finite".into())),
                },
                _ => return Err(CliError::Usage("give either --label with --angle, or --height".into())),
            };
            Output::new(child.to_string(), json!({ "parent": c, "child": child.to_string(), "period": child.len() }))
        }
        Command::Classify { component: c } => {
            let cls = classify(component(c)?.addr())?;
            Output::new(classification_text(&cls), classification_json(&cls))
        }
        Command::Parent { component: c } => match classify(component(c)?.addr())? {
            Classification::Satellite { parent, .. } => {
                Output::new(parent.to_string(), json!({ "address": c, "parent": parent.to_string() }))
            }
            Classification::Primitive => Output::new("none", json!({ "address": c, "parent": null })),
        },
        Command::Compare { a, b } => {
            let word = match compare(&address(a)?, &address(b)?)? {
                std::cmp::Ordering::Less => "less",
                std::cmp::Ordering::Equal => "equal",
                std::cmp::Ordering::Greater => "greater",
            };
            Output::new(word, json!({ "a": a, "b": b, "order": word }))
        }
        Command::WakeContains { component: c, address: a } => {
            let inside = component(c)?.wake_contains(&address(a)?);
            Output::new(inside.to_string(), json!({ "component": c, "address": a, "contains": inside }))
        }
        Command::FromInternal { internal } => {
            let ia: InternalAddress = internal.parse()?;
            let k = kneading_from_internal(&ia)?;
            Output::new(k.to_string(), json!({ "internal_address": internal, "kneading": k.to_string() }))
        }
        Command::FromAngled { angled } => {
            let a: AngledInternalAddress = angled.parse()?;
            let s = addr_from_angled(&a)?;
            Output::new(s.to_string(), json!({ "angled_internal_address": angled, "address": s.to_string() }))
        }
        Command::FromBoundary { boundary } => {
            let Address::Infinite(r) = address(boundary)? else {
                return Err(CliError::Usage(format!("`{boundary}` is not a periodic address")));
            };
            let w = component_from_boundary(&r)?;
            Output::new(w.addr().to_string(), json!({ "boundary": boundary, "component": w.addr().to_string() }))
        }
        Command::Tune { base, address: a, variant } => {
            let table = TuningBlockTable::new(component(base)?)?;
            let v = match variant {
                VariantArg::Upper => TuningVariant::Upper,
                VariantArg::Lower => TuningVariant::Lower,
            };
            let t = tune(&table, &address(a)?, v)?;
            Output::new(t.to_string(), json!({ "base": base, "address": a, "image": t.to_string() }))
        }
        Command::Arc { component: c, target, key } => {
            let sector = sector_info(&component(c)?, sector_key(key)?)?;
            match lowest_period_on_arc(&sector, &address(target)?)? {
                ArcQuery::Found { period, component, sector_kneading_entry } => {
                    let entry = sector_kneading_entry.map_or("*".to_string(), |e| e.to_string());
                    Output::new(
                        format!("period={period} component={} sector-entry={entry}", component.addr()),
                        json!({
                            "period": period,
                            "component": component.addr().to_string(),
                            "sector_kneading_entry": sector_kneading_entry,
                        }),
                    )
                }
                ArcQuery::NoneBelow => Output::new("none", json!({ "period": null })),
            }
        }
        Command::Orbits { component: c } => match essential_orbit_count(&component(c)?) {
            EssentialOrbits::Finite(k) => Output::new(format!("finite {k}"), json!({ "finite": true, "count": k })),
            EssentialOrbits::Infinite => Output::new("infinite", json!({ "finite": false, "count": null })),
        },
        Command::Tree { max, bound, format } => {
            if *max == 0 || *bound < 0 {
                return Err(CliError::Usage("bounds must be positive".into()));
            }
            tree(EnumerationBounds::new(*max, *bound), *format)?
        }
        Command::Check { suite, max, bound } => {
            let report = exhaustive_check(suite, EnumerationBounds::new(*max, *bound))?;
            let mut text = format!("{suite}: {} cases, {} counterexamples", report.cases, report.counterexamples.len());
            for c in &report.counterexamples {
                let _ = write!(text, "\n  {c}");
            }
            let json = json!({
                "suite": suite,
                "max": max,
                "bound": bound,
                "cases": report.cases,
                "counterexamples": report.counterexamples,
            });
            let mut out = Output::new(text, json);
            if !report.passed() {
                out.failure = Some(CliError::CheckFailed { failed: report.counterexamples.len(), cases: report.cases });
            }
            out
        }
        Command::Describe { component: c } => {
            let record = describe(&component(c)?)?;
            Output::new(serde_json::to_string_pretty(&record).expect("serializable"), record)
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = match run(&cli.command) {
        Ok(out) => out,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.exit_code());
        }
    };
    if !cli.quiet {
        if cli.json {
            println!("{}", out.json);
        } else {
            println!("{}", out.text);
        }
    }
    match out.failure {
        Some(e) => {
            if !cli.quiet {
                eprintln!("error: {e}");
            }
            ExitCode::from(e.exit_code())
        }
        None => ExitCode::SUCCESS,
    }
}
