use std::io::Read;
use std::path::Path;

use geoprog::eliminator::{decide_membership_in, eliminate_bounded_in, OpenBox, Status, DEFAULT_DEPTH_BUDGET};
use geoprog::logic::{parse_formula, Assignment, Formula};
use geoprog::numeric::parse_rational;
use geoprog::oracle::{brute_esat, brute_member_at, brute_window, BruteSat, Depth};
use geoprog::progression::{enumerate_window, esystem_sat, separation_radius, CoeffVector, EConstraintSystem, SatResult};
use geoprog::quasiperiodic::{detect_cycle, residues as residue_trace, CycleReport};
use geoprog::{Error, ExactRational, GeoBase};
use serde_json::{json, Value};

use crate::config::FileConfig;
use crate::{CliError, Format, GlobalArgs};

const DEFAULT_ORACLE_DEPTH: u32 = 10;

/// Flags merged over the config file over built-in defaults.
#[derive(Debug)]
pub struct Settings {
    pub base: GeoBase,
    pub format: Format,
    pub depth_budget: u32,
    radius: Option<String>,
    depth: Option<u32>,
}

impl Settings {
    pub fn resolve(args: &GlobalArgs) -> Result<Self, CliError> {
        let file = match &args.config {
            Some(p) => FileConfig::load(p)?,
            None => FileConfig::default(),
        };
        let rho = args.rho.clone().or(file.rho).unwrap_or_else(|| "2".into());
        let base = GeoBase::new(parse_rational(&rho)?)?;
        let format = match args.format {
            Some(f) => f,
            None => match file.format.as_deref() {
                None | Some("text") => Format::Text,
                Some("machine") => Format::Machine,
                Some(other) => return Err(CliError::Usage(format!("unknown format `{other}` in config"))),
            },
        };
        Ok(Settings {
            base,
            format,
            depth_budget: args.depth_budget.or(file.depth_budget).unwrap_or(DEFAULT_DEPTH_BUDGET),
            radius: file.radius,
            depth: file.depth,
        })
    }

    fn radius(&self, flag: Option<&str>) -> Result<ExactRational, CliError> {
        let text = flag
            .or(self.radius.as_deref())
            .ok_or_else(|| CliError::Usage("--radius is required (or set `radius` in the config file)".into()))?;
        Ok(parse_rational(text)?)
    }

    fn depth(&self, flag: Option<u32>) -> Depth {
        Depth(flag.or(self.depth).unwrap_or(DEFAULT_ORACLE_DEPTH))
    }
}

/// What a subcommand produced, in both renderings.
pub struct Outcome {
    pub text: String,
    pub doc: Value,
    pub undecided: bool,
}

impl Outcome {
    fn decided(text: String, doc: Value) -> Self {
        Outcome {
            text,
            doc,
            undecided: false,
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text if self.text.is_empty() => String::new(),
            Format::Text => format!("{}\n", self.text.trim_end()),
            Format::Machine => format!("{}\n", serde_json::to_string_pretty(&self.doc).expect("json")),
        }
    }
}

fn read_input(path: &Path) -> Result<String, CliError> {
    let io = |source| CliError::Io {
        path: path.display().to_string(),
        source,
    };
    if path == Path::new("-") {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(io)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(io)
    }
}

fn rational_list(text: &str) -> Result<Vec<ExactRational>, CliError> {
    if text.trim().is_empty() {
        return Err(CliError::Usage("empty list".into()));
    }
    text.split(',').map(|t| Ok(parse_rational(t)?)).collect()
}

fn name_list(text: &str) -> Vec<String> {
    text.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect()
}

fn strings<'a>(qs: impl IntoIterator<Item = &'a ExactRational>) -> Vec<String> {
    qs.into_iter().map(ToString::to_string).collect()
}

fn join<T: ToString>(xs: &[T], sep: &str) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(sep)
}

fn formula_and_vars(file: &Path, vars: Option<&str>) -> Result<(Formula, Vec<String>), CliError> {
    let f = parse_formula(&read_input(file)?)?;
    let vars = match vars {
        Some(v) => name_list(v),
        None => f.free_vars().into_iter().collect(),
    };
    Ok((f, vars))
}

fn assignment(vars: &[String], point: &[ExactRational]) -> Result<Assignment, CliError> {
    if vars.len() != point.len() {
        return Err(Error::DimensionMismatch(format!("{} coordinates for variables {vars:?}", point.len())).into());
    }
    Ok(vars.iter().cloned().zip(point.iter().cloned()).collect())
}

pub fn enumerate(s: &Settings, coeffs: &str, radius: Option<&str>) -> Result<Outcome, CliError> {
    let c = CoeffVector::new(rational_list(coeffs)?);
    let r = s.radius(radius)?;
    let w = enumerate_window(&s.base, &c, &r)?;
    let mut text: Vec<String> = w
        .witnesses
        .iter()
        .map(|(v, ks)| format!("{v}\t{}", join(&ks[0], " ")))
        .collect();
    text.push(format!("# {} value(s), depth bound {}", w.len(), w.depth_bound));
    let values: Vec<Value> = w
        .witnesses
        .iter()
        .map(|(v, ks)| json!({ "value": v.to_string(), "witnesses": ks }))
        .collect();
    let doc = json!({
        "rho": s.base.to_string(),
        "coeffs": strings(c.iter()),
        "radius": r.to_string(),
        "depth_bound": w.depth_bound,
        "values": values,
    });
    Ok(Outcome::decided(text.join("\n"), doc))
}

pub fn separation(s: &Settings, coeffs: &str) -> Result<Outcome, CliError> {
    let c = CoeffVector::new(rational_list(coeffs)?);
    let r = separation_radius(&s.base, &c);
    let doc = json!({ "rho": s.base.to_string(), "coeffs": strings(c.iter()), "radius": r.to_string() });
    Ok(Outcome::decided(r.to_string(), doc))
}

pub fn sat(s: &Settings, file: &Path) -> Result<Outcome, CliError> {
    let system = EConstraintSystem::parse(&read_input(file)?)?;
    let result = esystem_sat(&s.base, &system, s.depth_budget)?;
    let (text, doc) = match &result {
        SatResult::Sat { witness } => (
            format!("sat\nwitness: {}", join(witness, " ")),
            json!({ "verdict": "sat", "witness": witness }),
        ),
        SatResult::Unsat { certificate } => (
            format!("unsat\n{certificate}"),
            json!({ "verdict": "unsat", "certificate": certificate.to_string() }),
        ),
        SatResult::Unknown {
            depth_budget,
            open_cases,
        } => (
            format!("unknown\n{open_cases} open case(s) at depth budget {depth_budget}"),
            json!({ "verdict": "unknown", "depth_budget": depth_budget, "open_cases": open_cases }),
        ),
    };
    let mut doc = doc;
    doc["rho"] = json!(s.base.to_string());
    doc["m"] = json!(system.m());
    Ok(Outcome {
        text,
        doc,
        undecided: result.is_unknown(),
    })
}

pub fn eliminate(s: &Settings, file: &Path, radius: Option<&str>, vars: Option<&str>) -> Result<Outcome, CliError> {
    let (f, vars) = formula_and_vars(file, vars)?;
    let bx = OpenBox::new(vars.len(), s.radius(radius)?)?;
    let res = eliminate_bounded_in(&f, &vars, &bx, &s.base, s.depth_budget)?;
    let mut text = vec![
        format!("status: {}", res.status.as_str()),
        format!("vars: {}", vars.join(", ")),
        format!("box: (-{r}, {r})^{}", vars.len(), r = bx.radius()),
        format!("cells: {}", res.set.cells().len()),
        res.set.render(),
    ];
    for d in &res.diagnostics {
        text.push(format!("# undecided system:\n{}", d.system.trim_end()));
    }
    let mut doc = res.to_json();
    doc["rho"] = json!(s.base.to_string());
    Ok(Outcome {
        text: text.join("\n"),
        doc,
        undecided: res.status == Status::UnderApprox,
    })
}

pub fn member(s: &Settings, file: &Path, point: &str, vars: Option<&str>) -> Result<Outcome, CliError> {
    let (f, vars) = formula_and_vars(file, vars)?;
    let p = rational_list(point)?;
    assignment(&vars, &p)?;
    let mut doc = json!({ "rho": s.base.to_string(), "vars": vars, "point": strings(&p) });
    match decide_membership_in(&f, &vars, &p, &s.base, s.depth_budget) {
        Ok(b) => {
            doc["member"] = json!(b);
            Ok(Outcome::decided(b.to_string(), doc))
        }
        Err(Error::Unknown(why)) => {
            doc["member"] = Value::Null;
            doc["reason"] = json!(why);
            Ok(Outcome {
                text: format!("unknown\n{why}"),
                doc,
                undecided: true,
            })
        }
        Err(e) => Err(e.into()),
    }
}

pub fn residues(s: &Settings, modulus: &str, max_k: u32) -> Result<Outcome, CliError> {
    let r = parse_rational(modulus)?;
    let trace = residue_trace(&s.base, &r, max_k)?;
    let cycle = detect_cycle(&trace);
    let rows = trace.rows();
    let mut text = vec!["k\trho^k\tresidue\tdenominator".to_string()];
    text.extend(
        rows.iter()
            .map(|row| format!("{}\t{}\t{}\t{}", row.k, row.power, row.residue, row.denominator)),
    );
    text.push(format!("distinct: {}", trace.distinct_count));
    text.push(format!("cycle: {cycle}"));
    let cycle_doc = match cycle {
        CycleReport::Cycle { preperiod, period } => json!({ "preperiod": preperiod, "period": period }),
        CycleReport::NoCycleWithin(_) => Value::Null,
    };
    let row_docs: Vec<Value> = rows
        .iter()
        .map(|row| {
            json!({
                "k": row.k,
                "power": row.power.to_string(),
                "residue": row.residue.to_string(),
                "denominator": row.denominator.to_string(),
            })
        })
        .collect();
    let doc = json!({
        "rho": s.base.to_string(),
        "modulus": r.to_string(),
        "max_k": max_k,
        "rows": row_docs,
        "distinct": trace.distinct_count,
        "cycle": cycle_doc,
    });
    Ok(Outcome::decided(text.join("\n"), doc))
}

pub fn oracle_window(s: &Settings, coeffs: &str, radius: Option<&str>, depth: Option<u32>) -> Result<Outcome, CliError> {
    let c = CoeffVector::new(rational_list(coeffs)?);
    let r = s.radius(radius)?;
    let d = s.depth(depth);
    let values = brute_window(&s.base, &c, &r, d)?;
    let mut text = strings(&values);
    text.push(format!("# {} value(s) at depth {}", values.len(), d.0));
    let doc = json!({
        "rho": s.base.to_string(),
        "coeffs": strings(c.iter()),
        "radius": r.to_string(),
        "depth": d.0,
        "values": strings(&values),
    });
    Ok(Outcome::decided(text.join("\n"), doc))
}

pub fn oracle_esat(s: &Settings, file: &Path, depth: Option<u32>) -> Result<Outcome, CliError> {
    let system = EConstraintSystem::parse(&read_input(file)?)?;
    let d = s.depth(depth);
    let res = brute_esat(&s.base, &system, d);
    let doc = match &res {
        BruteSat::Sat(w) => json!({ "verdict": "sat", "witness": w }),
        BruteSat::NoWitnessWithin(_) => json!({ "verdict": "no_witness" }),
    };
    let mut doc = doc;
    doc["rho"] = json!(s.base.to_string());
    doc["depth"] = json!(d.0);
    let text = match &res {
        BruteSat::Sat(w) => format!("sat\nwitness: {}", join(w, " ")),
        other => other.to_string(),
    };
    Ok(Outcome::decided(text, doc))
}

pub fn oracle_member(
    s: &Settings,
    file: &Path,
    point: &str,
    vars: Option<&str>,
    depth: Option<u32>,
) -> Result<Outcome, CliError> {
    let (f, vars) = formula_and_vars(file, vars)?;
    let p = rational_list(point)?;
    let d = s.depth(depth);
    let b = brute_member_at(&f, &assignment(&vars, &p)?, &s.base, d)?;
    let doc = json!({
        "rho": s.base.to_string(),
        "vars": vars,
        "point": strings(&p),
        "depth": d.0,
        "member": b,
    });
    Ok(Outcome::decided(b.to_string(), doc))
}
