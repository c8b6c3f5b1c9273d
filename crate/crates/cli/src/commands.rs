use std::fmt::Write as _;
use std::path::Path;

use anyhow::Context;
use heiscalc_core::contact::{built_in_maps, commute_check, subspace_preservation};
use heiscalc_core::rumin::{
    basis_i, basis_j, dims as dims_at, quotient_complement, verify_complex, verify_dc, verify_lift, CheckResult,
    SubspaceBasis,
};
use heiscalc_core::surface::{find_characteristic_points, mobius_predicted_point, mobius_surface, scan_table};
use heiscalc_core::SmoothMap;
use serde_json::json;

use crate::report::{checks_report, Report};
use crate::{Common, Precondition};

fn pre<T, E: std::fmt::Display>(r: Result<T, E>) -> anyhow::Result<T> {
    r.map_err(|e| Precondition(e.to_string()).into())
}

fn require(ok: bool, msg: impl FnOnce() -> String) -> anyhow::Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Precondition(msg()).into())
    }
}

fn parse_range(spec: &str) -> anyhow::Result<(usize, usize)> {
    let num = |s: &str| pre(s.trim().parse::<usize>().map_err(|_| format!("invalid n `{s}`")));
    let (a, b) = match spec.split_once("..") {
        Some((a, b)) => (num(a)?, num(b.trim_start_matches('='))?),
        None => {
            let v = num(spec)?;
            (v, v)
        }
    };
    require(1 <= a && a <= b && b <= 8, || format!("n must lie in 1..8 with start ≤ end, got `{spec}`"))?;
    Ok((a, b))
}

pub fn dims(spec: &str) -> anyhow::Result<Report> {
    let (a, b) = parse_range(spec)?;
    let mut rows = Vec::new();
    let mut entries = Vec::new();
    let mut text = format!("{:>3} {:>3} {:>8} {:>8} {:>8}\n", "n", "k", "Omega", "I", "quotient");
    for n in a..=b {
        for k in 1..=n {
            let d = dims_at(k, n)?;
            let _ = writeln!(text, "{n:>3} {k:>3} {:>8} {:>8} {:>8}", d.dim_omega, d.dim_i, d.dim_quotient);
            rows.push(vec![n, k, d.dim_omega as usize, d.dim_i as usize, d.dim_quotient as usize]
                .into_iter()
                .map(|v| v.to_string())
                .collect());
            entries.push(json!({
                "n": n, "k": k, "dim_omega": d.dim_omega, "dim_i": d.dim_i, "dim_quotient": d.dim_quotient,
            }));
        }
    }
    Ok(Report {
        json: json!({ "rows": entries }),
        header: vec!["n", "k", "dim_omega", "dim_i", "dim_quotient"],
        rows,
        text,
        passed: true,
    })
}

pub fn complex(n: usize, k: Option<usize>) -> anyhow::Result<Report> {
    require((1..=3).contains(&n), || format!("complex supports n = 1, 2, 3 (got {n})"))?;
    let top = 2 * n + 1;
    if let Some(k) = k {
        require(k <= top, || format!("k must lie in 0..={top} for n = {n} (got {k})"))?;
    }
    let degrees: Vec<usize> = match k {
        Some(k) => vec![k],
        None => (0..=top).collect(),
    };
    let mut text = String::new();
    let mut rows = Vec::new();
    let mut entries = Vec::new();
    for k in degrees {
        let mut spaces: Vec<(String, std::sync::Arc<SubspaceBasis>)> = Vec::new();
        if k <= n {
            if k >= 1 {
                spaces.push((format!("I^{k}"), basis_i(k, n)?));
            }
            spaces.push((format!("Omega^{k}/I^{k}"), quotient_complement(k, n)?));
        } else {
            spaces.push((format!("J^{k}"), basis_j(k, n)?));
        }
        let mut js = Vec::new();
        for (name, basis) in &spaces {
            let _ = writeln!(text, "k = {k}: {name} (dimension {})", basis.len());
            for (i, e) in basis.elements().iter().enumerate() {
                let _ = writeln!(text, "  {e}");
                rows.push(vec![k.to_string(), name.clone(), i.to_string(), e.to_string()]);
            }
            let mut v = basis.to_json();
            v["space"] = json!(name);
            js.push(v);
        }
        entries.push(json!({ "k": k, "spaces": js }));
    }
    Ok(Report {
        json: json!({ "n": n, "degrees": entries }),
        header: vec!["k", "space", "index", "form"],
        rows,
        text,
        passed: true,
    })
}

pub fn verify(n: usize, c: &Common) -> anyhow::Result<Report> {
    require((1..=2).contains(&n), || format!("verify supports n = 1, 2 (got {n})"))?;
    let mut checks: Vec<CheckResult> = verify_complex(n, c.trials, c.seed, c.degree)?.checks;
    checks.push(verify_lift(n, c.trials, c.seed, c.degree));
    for (lit, f) in built_in_maps(n, c.seed)? {
        for mut r in subspace_preservation(&f)? {
            r.name = format!("{} [{lit}]", r.name);
            checks.push(r);
        }
    }
    checks.extend(verify_dc(n, c.trials, c.seed, c.degree)?);
    let passed = checks.iter().all(|r| r.passed);
    let js = json!({
        "n": n, "trials": c.trials, "seed": c.seed, "degree": c.degree, "passed": passed, "checks": checks,
    });
    Ok(checks_report(js, &checks))
}

pub fn commute(literal: &str, n: usize, c: &Common) -> anyhow::Result<Report> {
    require((1..=3).contains(&n), || format!("commute supports n = 1, 2, 3 (got {n})"))?;
    let f = pre(SmoothMap::parse(n, literal))?;
    let bad: Vec<String> = (1..=2 * n)
        .filter_map(|j| {
            let a = f.a_coefficient(j).expect("valid index");
            (!a.is_zero()).then(|| format!("A({j},f) = {a}"))
        })
        .collect();
    require(bad.is_empty(), || format!("map is not contact: {}", bad.join(", ")))?;
    let mut checks = Vec::new();
    for k in 0..=2 * n {
        checks.push(commute_check(&f, k, c.trials, c.seed, c.degree)?.check);
    }
    let passed = checks.iter().all(|r| r.passed);
    let js = json!({
        "map": literal, "n": n, "trials": c.trials, "seed": c.seed, "degree": c.degree,
        "passed": passed, "checks": checks,
    });
    Ok(checks_report(js, &checks))
}

fn parse_grid(spec: &str) -> anyhow::Result<(usize, usize)> {
    let parsed = spec
        .split_once(['x', 'X'])
        .and_then(|(a, b)| Some((a.trim().parse().ok()?, b.trim().parse().ok()?)));
    pre(parsed.ok_or_else(|| format!("grid must look like 1024x512, got `{spec}`")))
}

pub fn mobius(radius: f64, half_width: f64, grid: &str, tol: f64, out: Option<&Path>) -> anyhow::Result<Report> {
    let grid = parse_grid(grid)?;
    let surface = pre(mobius_surface(radius, half_width))?;
    let scan = pre(find_characteristic_points(&surface, grid, tol))?;
    let predicted = mobius_predicted_point(radius).map(|(r, s)| json!({ "r": r, "s": s }));
    let js = json!({
        "radius": radius,
        "half_width": half_width,
        "grid": [grid.0, grid.1],
        "tol": tol,
        "predicted": predicted,
        "candidates": scan.candidates,
        "points": scan.points,
        "failures": scan.failures,
        "rejected": scan.rejected,
    });
    if let Some(dir) = out {
        std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        let mut w = csv::Writer::from_path(dir.join("scan.csv"))?;
        for row in scan_table(&surface, grid) {
            w.serialize(row)?;
        }
        w.flush()?;
        std::fs::write(dir.join("points.json"), serde_json::to_string_pretty(&js)? + "\n")?;
    }
    let mut text = format!(
        "R = {radius}, w = {half_width}, grid {}x{}: {} characteristic point(s)\n",
        grid.0,
        grid.1,
        scan.points.len()
    );
    let mut rows = Vec::new();
    for p in &scan.points {
        let _ = writeln!(
            text,
            "  (r, s) = ({}, {})  point = ({}, {}, {})  residual = {:e}{}",
            p.r,
            p.s,
            p.ambient[0],
            p.ambient[1],
            p.ambient[2],
            p.residual,
            if p.boundary { "  [boundary]" } else { "" }
        );
        rows.push(
            [p.r, p.s, p.ambient[0], p.ambient[1], p.ambient[2], p.residual, p.n3]
                .iter()
                .map(|v| v.to_string())
                .chain(std::iter::once(p.boundary.to_string()))
                .collect(),
        );
    }
    for f in &scan.failures {
        let _ = writeln!(text, "  no convergence near (r, s) = ({}, {}), residual {:e}", f.r, f.s, f.residual);
    }
    Ok(Report {
        json: js,
        header: vec!["r", "s", "x", "y", "t", "residual", "N3", "boundary"],
        rows,
        text,
        passed: scan.failures.is_empty(),
    })
}
