use std::fmt::Write as _;

use serde_json::{json, Value};

use euclid_core::counting::{
    count_coprime_bruteforce, count_coprime_formula, count_reduced_bruteforce_with,
    count_reduced_formula, sequence_with, write_bfile, SequenceKind,
};
use euclid_core::enumeration::{enumerate_solutions_with, orbit_decomposition, Solution};
use euclid_core::gaussian::{search_solutions_with, GaussInt};
use euclid_core::lattice::{enumerate_sublattices, Sublattice2, Vec2};
use euclid_core::mat2::Mat2;
use euclid_core::sail::{classify_sublattices, compute_sail};
use euclid_core::verify::{self, CheckResult, VerifyOptions};
use euclid_core::{Execution, Result as CoreResult};

use crate::{svg, CmdResult, Format, Output, UsageError};

const SCHEMA: u32 = 1;

fn require(format: Format, allowed: &[Format], command: &str) -> Result<(), UsageError> {
    if allowed.contains(&format) {
        Ok(())
    } else {
        let name = format!("{format:?}").to_lowercase();
        Err(UsageError(format!(
            "format {name} is not available for {command}"
        )))
    }
}

fn json_text(mut value: Value) -> String {
    if let Value::Object(map) = &mut value {
        map.insert("schema".into(), json!(SCHEMA));
    }
    let mut text = serde_json::to_string_pretty(&value).expect("JSON values always serialize");
    text.push('\n');
    text
}

fn tuple(s: &Solution) -> [u64; 4] {
    [s.a, s.b, s.c, s.d]
}

fn point(p: &Vec2) -> [i64; 2] {
    [p.x, p.y]
}

pub fn count(n: u64, brute: bool, coprime: bool, exec: Execution) -> CmdResult {
    let formula = if coprime {
        count_coprime_formula(n)?
    } else {
        count_reduced_formula(n)?
    };
    if !brute {
        return Ok(Output::ok(format!("{formula}\n")));
    }
    let oracle = if coprime {
        count_coprime_bruteforce(n)?
    } else {
        count_reduced_bruteforce_with(n, exec)?
    };
    Ok(Output {
        text: format!("{formula} {oracle}\n"),
        passed: formula == oracle,
    })
}

pub fn seq(n_max: u64, coprime: bool, format: Format, exec: Execution) -> CmdResult {
    require(format, &[Format::Bfile, Format::Tsv, Format::Json], "seq")?;
    let kind = if coprime {
        SequenceKind::Coprime
    } else {
        SequenceKind::Reduced
    };
    let terms = sequence_with(kind, n_max, exec)?;
    let text = match format {
        Format::Bfile => {
            let mut buf = Vec::new();
            write_bfile(&mut buf, &terms).map_err(|e| UsageError(e.to_string()))?;
            String::from_utf8(buf).expect("b-file output is ASCII")
        }
        Format::Tsv => terms
            .iter()
            .zip(1u64..)
            .map(|(t, n)| format!("{n}\t{t}\n"))
            .collect(),
        _ => json_text(json!({ "kind": kind, "terms": terms })),
    };
    Ok(Output::ok(text))
}

pub fn enumerate(n: u64, orbits: bool, format: Format, exec: Execution) -> CmdResult {
    require(format, &[Format::Tsv, Format::Json], "enumerate")?;
    let mut text = String::new();
    if orbits {
        let orbits = orbit_decomposition(n)?;
        let total: usize = orbits.iter().map(|o| o.size).sum();
        if format == Format::Json {
            let list: Vec<Value> = orbits
                .iter()
                .map(|o| {
                    json!({
                        "representative": tuple(&o.representative),
                        "size": o.size,
                        "members": o.members.iter().map(tuple).collect::<Vec<_>>(),
                    })
                })
                .collect();
            return Ok(Output::ok(json_text(
                json!({ "n": n, "orbits": list, "total": total }),
            )));
        }
        for o in &orbits {
            let [a, b, c, d] = tuple(&o.representative);
            writeln!(text, "{a}\t{b}\t{c}\t{d}\t{}", o.size).unwrap();
        }
        writeln!(text, "total\t{total}").unwrap();
    } else {
        let solutions = enumerate_solutions_with(n, exec)?;
        if format == Format::Json {
            let list: Vec<_> = solutions.iter().map(tuple).collect();
            return Ok(Output::ok(json_text(json!({ "n": n, "solutions": list }))));
        }
        for s in &solutions {
            writeln!(text, "{}\t{}\t{}\t{}", s.a, s.b, s.c, s.d).unwrap();
        }
    }
    Ok(Output::ok(text))
}

pub fn sublattices(n: u64, bad: bool, sails: bool, format: Format, exec: Execution) -> CmdResult {
    require(format, &[Format::Tsv, Format::Json], "sublattices")?;
    let lattices: Vec<Sublattice2> = if bad {
        classify_sublattices(n, exec)?
            .into_iter()
            .filter(|(_, central)| central.is_none())
            .map(|(l, _)| l)
            .collect()
    } else {
        enumerate_sublattices(n)?
    };
    let sail_points = |l: &Sublattice2| -> CoreResult<Vec<Vec2>> { Ok(compute_sail(l)?.points) };
    if format == Format::Json {
        let mut list = Vec::with_capacity(lattices.len());
        for l in &lattices {
            let mut obj = json!({ "d": l.d, "a": l.a, "m": l.m });
            if sails {
                let pts: Vec<_> = sail_points(l)?.iter().map(point).collect();
                obj["sail"] = json!(pts);
            }
            list.push(obj);
        }
        return Ok(Output::ok(json_text(
            json!({ "n": n, "sublattices": list }),
        )));
    }
    let mut text = String::new();
    for l in &lattices {
        write!(text, "{}\t{}\t{}", l.d, l.a, l.m).unwrap();
        if sails {
            let pts: Vec<String> = sail_points(l)?
                .iter()
                .map(|p| format!("{},{}", p.x, p.y))
                .collect();
            write!(text, "\t{}", pts.join(" ")).unwrap();
        }
        text.push('\n');
    }
    Ok(Output::ok(text))
}

pub fn sail(d: u64, a: u64, m: u64, format: Format) -> CmdResult {
    require(format, &[Format::Tsv, Format::Json, Format::Svg], "sail")?;
    let lattice = Sublattice2::new(d, a, m)?;
    let sail = compute_sail(&lattice)?;
    let text = match format {
        Format::Svg => svg::render_sail(&lattice, &sail),
        Format::Json => json_text(json!({
            "lattice": lattice,
            "points": sail.points.iter().map(point).collect::<Vec<_>>(),
        })),
        _ => sail
            .points
            .iter()
            .map(|p| format!("{}\t{}\n", p.x, p.y))
            .collect(),
    };
    Ok(Output::ok(text))
}

fn matrix_row(label: &str, m: &Mat2) -> String {
    format!("{label}\t{}\t{}\t{}\t{}\n", m.a, m.b, m.c, m.d)
}

pub fn reduce(entries: [u64; 4], trace: bool, all_normal_forms: bool, format: Format) -> CmdResult {
    require(format, &[Format::Tsv, Format::Json], "reduce")?;
    let [a, b, c, d] = entries;
    let start = Mat2::new(a, b, c, d);
    let result = start.reduce()?;
    let forms = if all_normal_forms {
        Some(start.all_normal_forms()?)
    } else {
        None
    };
    if format == Format::Json {
        let moves = result.move_count();
        let mut obj = json!({
            "start": start,
            "result": result.result,
            "moves": u64::try_from(moves).map(Value::from).unwrap_or_else(|_| moves.to_string().into()),
        });
        if trace {
            obj["steps"] = json!(result.steps);
        }
        if let Some(forms) = &forms {
            obj["normal_forms"] = json!(forms);
        }
        return Ok(Output::ok(json_text(obj)));
    }
    let mut text = String::new();
    if trace {
        text.push_str(&matrix_row("start", &start));
        for step in &result.steps {
            let label = if step.repeat == 1 {
                step.kind.to_string()
            } else {
                format!("{}^{}", step.kind, step.repeat)
            };
            text.push_str(&matrix_row(&label, &step.matrix));
        }
    }
    text.push_str(&matrix_row("result", &result.result));
    for m in forms.iter().flatten() {
        text.push_str(&matrix_row("normal_form", m));
    }
    Ok(Output::ok(text))
}

pub fn gauss_search(
    re: i64,
    im: i64,
    bound: u64,
    canonical: bool,
    format: Format,
    exec: Execution,
) -> CmdResult {
    require(format, &[Format::Tsv, Format::Json], "gauss search")?;
    let z = GaussInt::new(re, im);
    let solutions = search_solutions_with(&z, bound, canonical, exec)?;
    if format == Format::Json {
        let list: Vec<Value> = solutions
            .iter()
            .map(|s| json!({ "a": s.a, "b": s.b, "c": s.c, "d": s.d }))
            .collect();
        return Ok(Output::ok(json_text(
            json!({ "z": z, "bound": bound, "solutions": list }),
        )));
    }
    let text = solutions
        .iter()
        .map(|s| format!("{}\t{}\t{}\t{}\n", s.a, s.b, s.c, s.d))
        .collect();
    Ok(Output::ok(text))
}

fn report(checks: &[CheckResult]) -> String {
    checks
        .iter()
        .map(|c| {
            let status = if c.passed { "PASS" } else { "FAIL" };
            format!("{status}\t{}\t{}\n", c.name, c.detail)
        })
        .collect()
}

pub fn gauss_identities(m_max: i64, n_max: i64, exec: Execution) -> CmdResult {
    if m_max < 0 || n_max < 1 {
        return Err(UsageError("need --m-max ≥ 0 and --n-max ≥ 1".into()));
    }
    let checks = verify::check_gaussian_families(m_max, n_max, exec);
    Ok(Output {
        text: report(&checks),
        passed: checks.iter().all(|c| c.passed),
    })
}

fn off_by_one(n: u64) -> CoreResult<u64> {
    Ok(count_reduced_formula(n)? + 1)
}

pub fn verify(n_max: u64, inject_fault: bool, format: Format, exec: Execution) -> CmdResult {
    require(format, &[Format::Tsv, Format::Json], "verify")?;
    let mut opts = VerifyOptions::new(n_max);
    opts.exec = exec;
    if inject_fault {
        opts.reduced_formula = off_by_one;
    }
    let result = verify::run(&opts);
    let passed = result.all_passed();
    let text = if format == Format::Json {
        json_text(json!({ "n_max": n_max, "passed": passed, "checks": result.checks }))
    } else {
        report(&result.checks)
    };
    Ok(Output { text, passed })
}
