//! One function per subcommand. Each returns the text to print; errors are
//! domain errors (exit status 1).

use std::fmt::Write as _;

use f2curves::curves::{divisor_of, parse_function, places_of_degree, ArtinSchreierModel};
use f2curves::parse::parse_int_poly;
use f2curves::rayclass::{parse_place_list, witness_search, ConductorSpec, RayClassResult};
use f2curves::weilenum::{enumerate_candidates, SearchSpec};
use f2curves::zeta::{zeta_report, RealWeilPoly};

use crate::registry::Registry;
use crate::verify::verify;

pub type CmdResult = Result<String, String>;

fn err<E: ToString>(e: E) -> String {
    e.to_string()
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter().map(T::to_string).collect::<Vec<_>>().join(", ")
}

pub fn zeta(h: &str, q: u64, dmax: usize, json: bool) -> CmdResult {
    let h = RealWeilPoly::new(parse_int_poly(h).map_err(err)?, q).map_err(err)?;
    let r = zeta_report(&h, dmax).map_err(err)?;
    if json {
        return Ok(serde_json::to_string(&r).map_err(err)? + "\n");
    }
    Ok(format!(
        "q = {}\ng = {}\nh = {}\nL = {}\nN = [{}]\na = [{}]\n",
        r.q,
        r.g,
        r.h,
        r.l,
        join(&r.n),
        join(&r.a)
    ))
}

pub fn enumerate(genus: usize, points: i64, dmax: Option<usize>, json: bool) -> CmdResult {
    let mut spec = SearchSpec::new(genus, points);
    spec.dmax = dmax;
    let e = enumerate_candidates(&spec).map_err(err)?;
    if json {
        return Ok(serde_json::to_string_pretty(&e.candidates).map_err(err)? + "\n");
    }
    let mut out = String::new();
    let _ = writeln!(out, "genus {genus}, N_1 = {points}: {} candidates", e.candidates.len());
    for (i, c) in e.candidates.iter().enumerate() {
        let factors: Vec<String> = c
            .factors
            .iter()
            .map(|(f, k)| if *k == 1 { format!("({f})") } else { format!("({f})^{k}") })
            .collect();
        let _ = writeln!(out, "({}) h = {} = {}", i + 1, c.h, factors.concat());
        let _ = writeln!(out, "    a = [{}]", join(&c.a.a));
        if c.excluded_by_feasibility() {
            let _ = writeln!(out, "    excluded: no double cover meets the conductor bound");
        }
    }
    if !e.rejected_res1.is_empty() {
        let _ = writeln!(out, "rejected by the resultant filter: {}", e.rejected_res1.len());
    }
    if let Some(flag) = &e.flag {
        let _ = writeln!(out, "note: {flag}");
    }
    Ok(out)
}

pub fn load_model(path: &str) -> Result<ArtinSchreierModel, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))?;
    ArtinSchreierModel::parse_model_file(&text).map_err(err)
}

pub fn count(model: &ArtinSchreierModel, n: u32) -> CmdResult {
    let c = model.count_points(n).map_err(err)?;
    Ok(format!("N_{n} = {c}\n"))
}

pub fn places(model: &ArtinSchreierModel, degree: u32, coords: bool) -> CmdResult {
    let ps = places_of_degree(model, degree).map_err(err)?;
    let mut out = format!("a_{degree} = {}\n", ps.len());
    if coords {
        for p in &ps {
            let _ = writeln!(out, "{p}");
        }
    }
    Ok(out)
}

pub fn divisor(model: &ArtinSchreierModel, function: &str) -> CmdResult {
    let f = parse_function(model, function).map_err(err)?;
    let d = divisor_of(model, &f).map_err(err)?;
    Ok(format!("div({function}) = {d}\ndegree {}\n", d.degree()))
}

/// `name: expression` lines; blank lines and `#` comments are skipped.
pub fn parse_sunits(text: &str) -> Result<Vec<(String, String)>, String> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (name, expr) = line
            .split_once(':')
            .ok_or_else(|| format!("line {}: expected 'name: expression'", i + 1))?;
        out.push((name.trim().to_string(), expr.trim().to_string()));
    }
    if out.is_empty() {
        return Err("no S-units given".into());
    }
    Ok(out)
}

pub fn rayclass(
    model: &ArtinSchreierModel,
    conductor: &str,
    split: &str,
    sunits: &[(String, String)],
    verdicts: Option<&str>,
) -> CmdResult {
    let spec = ConductorSpec::parse(model, conductor, split).map_err(err)?;
    let r = RayClassResult::compute(model, spec, sunits).map_err(err)?;
    let mut out = String::new();
    for (j, (t, g)) in r.spec.terms.iter().zip(&r.groups).enumerate() {
        let _ = writeln!(
            out,
            "{}: {}*{} uniformizer {} unit group orders [{}]",
            r.t_name(j),
            t.mult,
            t.place,
            t.uniformizer,
            join(&g.orders)
        );
    }
    let _ = writeln!(out, "unit | function | image");
    for img in &r.images {
        let _ = writeln!(out, "{} | {} | {}", img.name, img.function, r.format_image(&img.per_place));
    }
    let _ = writeln!(out, "quotient: {} (order {})", r.quotient, r.quotient.order());
    if let Some(list) = verdicts {
        let _ = writeln!(out, "place | witness | image | verdict");
        for p in parse_place_list(model, list).map_err(err)? {
            let w = (1..=6)
                .find_map(|b| witness_search(model, &p, &r.spec.split, b).transpose())
                .transpose()
                .map_err(err)?
                .ok_or_else(|| format!("no witness for {p} up to degree 6"))?;
            let v = r.artin_split_verdict(model, &[], &p, &w).map_err(err)?;
            let _ = writeln!(
                out,
                "{p} | {} | {} | {}",
                v.witness,
                r.format_image(&v.per_place),
                if v.splits { "splits" } else { "inert" }
            );
        }
    }
    Ok(out)
}

/// Report text and whether every computed check passed.
pub fn verify_paper(fixtures: Option<&str>, only: Option<&str>, json: bool) -> Result<(String, bool), String> {
    let reg = match fixtures {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))?;
            Registry::from_json(&text)?
        }
        None => Registry::embedded(),
    };
    let report = verify(&reg, only);
    if report.entries.is_empty() {
        return Err(format!("no check matches {}", only.unwrap_or("")));
    }
    let ok = report.count(crate::verify::Status::Fail) == 0;
    let text = if json { report.render_json() } else { report.render_text() };
    Ok((text, ok))
}
