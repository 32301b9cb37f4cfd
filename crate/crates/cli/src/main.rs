mod args;
mod output;

use std::process::ExitCode;

use clap::Parser;
use hdepth::identities::{verify, VerifyRange};
use hdepth::multigrade::{
    fine_series_formula, fine_series_oracle, hilbert_function_oracle, MAX_BOX_BOUND, MAX_BOX_VARS,
};
use hdepth::IdealSpec;

use args::{
    Cli, Command, Family, IdealArgs, OracleArgs, SeriesArgs, SweepRange, TableArgs, TableFamily,
    VerifyArgs,
};
use output::{Cell, Report};

/// Invalid parameters; reported with exit code 2.
#[derive(Debug)]
struct UsageError(String);

impl<E: std::error::Error> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

type CmdResult = Result<Report, UsageError>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = match &cli.command {
        Command::Series(a) => series(a),
        Command::Depth(a) => depth(a),
        Command::Verify(a) => verify_cmd(a),
        Command::Table(a) => table(a),
        Command::Oracle(a) => oracle(a),
    };
    match report {
        Ok(report) => {
            if let Err(e) = report.write(cli.format, cli.quiet) {
                eprintln!("hdepth: {e}");
                return ExitCode::from(2);
            }
            ExitCode::from(exit_status(&report))
        }
        Err(UsageError(msg)) => {
            eprintln!("hdepth: {msg}");
            ExitCode::from(2)
        }
    }
}

/// 0 when every check passed, 1 otherwise.
fn exit_status(report: &Report) -> u8 {
    match report.pass {
        Some(false) => 1,
        _ => 0,
    }
}

fn family_name(f: Family) -> &'static str {
    match f {
        Family::Veronese => "veronese",
        Family::MaxPower => "max-power",
        Family::HatPower => "hat-power",
        Family::GeneratedHatPower => "generated-hat-power",
    }
}

fn ideal_params(a: &IdealArgs) -> Vec<(&'static str, String)> {
    let mut params = vec![("ideal", family_name(a.ideal).to_string()), ("n", a.n.to_string())];
    for (name, value) in [("d", a.d), ("t", a.t), ("s", a.s)] {
        if let Some(v) = value {
            params.push((name, v.to_string()));
        }
    }
    params
}

/// Expands the sweep in lexicographic parameter order. `d` and `t` are
/// clipped to `1..=n`; an explicit `s` is taken as given.
fn specs(a: &IdealArgs) -> Result<Vec<IdealSpec>, UsageError> {
    let unused = |name: &str, v: Option<SweepRange>| match v {
        Some(_) => Err(UsageError(format!(
            "--{name} does not apply to --ideal {}",
            family_name(a.ideal)
        ))),
        None => Ok(()),
    };
    let powers = |n: u32| -> Vec<u32> { a.s.unwrap_or(SweepRange { lo: 1, hi: n }).iter().collect() };
    let mut out = Vec::new();
    match a.ideal {
        Family::Veronese => {
            unused("s", a.s)?;
            unused("t", a.t)?;
            for n in a.n.iter() {
                for d in a.d.unwrap_or(SweepRange { lo: 1, hi: n }).clipped(1, n) {
                    out.push(IdealSpec::Veronese { n, d });
                }
            }
        }
        Family::MaxPower => {
            unused("d", a.d)?;
            unused("t", a.t)?;
            for n in a.n.iter() {
                for s in powers(n) {
                    out.push(IdealSpec::MaxPower { n, s });
                }
            }
        }
        Family::HatPower | Family::GeneratedHatPower => {
            unused("d", a.d)?;
            for n in a.n.iter() {
                for t in a.t.unwrap_or(SweepRange { lo: 1, hi: n }).clipped(1, n) {
                    for s in powers(n) {
                        out.push(match a.ideal {
                            Family::HatPower => IdealSpec::HatPower { n, t, s },
                            _ => IdealSpec::GeneratedHatPower { n, t, s },
                        });
                    }
                }
            }
        }
    }
    if out.is_empty() {
        return Err(UsageError("no valid parameters in the requested range".into()));
    }
    for spec in &out {
        spec.validate()?;
    }
    Ok(out)
}

/// Leading columns naming the ideal: family, n and its own parameters.
fn spec_cells(spec: &IdealSpec) -> Vec<(&'static str, Cell)> {
    let mut cells = vec![
        ("family", Cell::Text(spec.family().to_string())),
        ("n", Cell::int(spec.n())),
    ];
    match *spec {
        IdealSpec::Veronese { d, .. } => cells.push(("d", Cell::int(d))),
        IdealSpec::MaxPower { s, .. } => cells.push(("s", Cell::int(s))),
        IdealSpec::HatPower { t, s, .. } | IdealSpec::GeneratedHatPower { t, s, .. } => {
            cells.push(("t", Cell::int(t)));
            cells.push(("s", Cell::int(s)));
        }
    }
    cells
}

fn series(a: &SeriesArgs) -> CmdResult {
    let mut params = ideal_params(&a.ideal);
    params.push(("upto", a.upto.to_string()));
    let mut report = Report::new("series", params);
    for spec in specs(&a.ideal)? {
        let h = spec.series()?;
        let mut row = spec_cells(&spec);
        row.push(("numerator", Cell::List(h.numer().coeffs().to_vec())));
        row.push(("den_pow", Cell::int(h.den_pow())));
        row.push(("coefficients", Cell::List(h.coefficients(a.upto as usize))));
        report.push(row);
    }
    Ok(report)
}

fn depth(a: &IdealArgs) -> CmdResult {
    let mut report = Report::new("depth", ideal_params(a));
    let mut all_agree = true;
    for spec in specs(a)? {
        let r = spec.depth_report()?;
        all_agree &= r.agree;
        let mut row = spec_cells(&spec);
        row.push(("depth", Cell::int(r.computed_depth)));
        row.push(("closed_form", Cell::int(r.closed_form_depth)));
        row.push(("agree", Cell::Bool(r.agree)));
        report.push(row);
    }
    report.pass = (!all_agree).then_some(false);
    Ok(report)
}

fn verify_cmd(a: &VerifyArgs) -> CmdResult {
    let n = match (a.n, a.n_max) {
        (Some(r), _) => r,
        (None, Some(max)) if max >= 1 => SweepRange { lo: 1, hi: max },
        (None, Some(_)) => return Err(UsageError("--n-max must be at least 1".into())),
        (None, None) => return Err(UsageError("verify needs --n or --n-max".into())),
    };
    let range = VerifyRange {
        n: (n.lo, n.hi),
        d: a.d.map(|d| (d.lo, d.hi)),
        k_max: a.k_max,
    };
    let mut params = vec![("identity", a.identity.to_string()), ("n", n.to_string())];
    if let Some(d) = a.d {
        params.push(("d", d.to_string()));
    }
    if let Some(k) = a.k_max {
        params.push(("k_max", k.to_string()));
    }

    let result = verify(a.identity, &range);
    let mut report = Report::new("verify", params);
    report.push(vec![
        ("identity", Cell::Text(result.identity.to_string())),
        ("range", Cell::Text(result.params.clone())),
        ("cases", Cell::int(result.cases)),
        ("pass", Cell::Bool(result.passed())),
        (
            "counterexample",
            result
                .counterexample
                .as_ref()
                .map_or(Cell::Null, |c| Cell::Text(c.to_string())),
        ),
    ]);
    report.pass = Some(result.passed());
    report.summary = Some(match &result.counterexample {
        None => format!("PASS {} over {} ({} cases)", result.identity, result.params, result.cases),
        Some(c) => format!("FAIL {} over {}: {c}", result.identity, result.params),
    });
    Ok(report)
}

fn table(a: &TableArgs) -> CmdResult {
    let (family, param_name, param) = match a.family {
        TableFamily::Veronese => {
            if a.s.is_some() {
                return Err(UsageError("--s does not apply to --family veronese".into()));
            }
            (Family::Veronese, "d", a.d)
        }
        TableFamily::MaxPower => {
            if a.d.is_some() {
                return Err(UsageError("--d does not apply to --family max-power".into()));
            }
            (Family::MaxPower, "s", a.s)
        }
    };
    let ideal = IdealArgs {
        ideal: family,
        n: a.n,
        d: a.d,
        s: a.s,
        t: None,
    };
    let mut params = vec![("family", family_name(family).to_string()), ("n", a.n.to_string())];
    if let Some(p) = param {
        params.push((param_name, p.to_string()));
    }
    let mut report = Report::new("table", params);
    let mut all_agree = true;
    for spec in specs(&ideal)? {
        let r = spec.depth_report()?;
        all_agree &= r.agree;
        let p = match spec {
            IdealSpec::Veronese { d, .. } => d,
            IdealSpec::MaxPower { s, .. } => s,
            _ => unreachable!("table sweeps only veronese and max-power"),
        };
        let degree = r.series.numer().degree().map_or(Cell::Null, Cell::int);
        report.push(vec![
            ("family", Cell::Text(spec.family().to_string())),
            ("n", Cell::int(spec.n())),
            ("param", Cell::int(p)),
            ("numer_degree", degree),
            ("den_pow", Cell::int(r.series.den_pow())),
            ("depth", Cell::int(r.computed_depth)),
            ("closed_form", Cell::int(r.closed_form_depth)),
            ("agree", Cell::Bool(r.agree)),
        ]);
    }
    report.pass = (!all_agree).then_some(false);
    Ok(report)
}

fn oracle(a: &OracleArgs) -> CmdResult {
    if a.bound > MAX_BOX_BOUND {
        return Err(UsageError(format!(
            "--box {} exceeds the limit of {MAX_BOX_BOUND}",
            a.bound
        )));
    }
    let mut params = ideal_params(&a.ideal);
    if let Some(k) = a.k_max {
        params.push(("k_max", k.to_string()));
    }
    params.push(("box", a.bound.to_string()));
    let mut report = Report::new("oracle", params);
    let mut pass = true;
    let mut checked = 0u64;
    let mut skipped = 0u64;
    for spec in specs(&a.ideal)? {
        let series = spec.series()?;
        let mut mismatch = None;
        for k in 0..=a.k_max.unwrap_or(spec.n() + 10) {
            let count = hilbert_function_oracle(&spec, k)?;
            let coeff = series.coefficient(k as usize);
            if count != coeff {
                mismatch = Some(format!("k={k}: enumeration {count}, series {coeff}"));
                break;
            }
        }
        let coarse_agree = mismatch.is_none();

        let fine_agree = if spec.ambient_vars() as usize > MAX_BOX_VARS {
            skipped += 1;
            Cell::Null
        } else {
            let formula = fine_series_formula(&spec, a.bound)?;
            let oracle = fine_series_oracle(&spec, a.bound)?;
            let mut ok = formula == oracle;
            if !ok && mismatch.is_none() {
                mismatch = Some("fine series formula differs from enumeration".into());
            }
            for k in 0..=a.bound {
                if ok && formula.total_degree_sum(k as u64) != series.coefficient(k as usize) {
                    ok = false;
                    mismatch.get_or_insert_with(|| format!("fine total-degree sum differs at k={k}"));
                }
            }
            Cell::Bool(ok)
        };
        let agree = coarse_agree && fine_agree != Cell::Bool(false);
        pass &= agree;
        checked += 1;

        let mut row = spec_cells(&spec);
        row.push(("coarse_agree", Cell::Bool(coarse_agree)));
        row.push(("fine_agree", fine_agree));
        row.push(("agree", Cell::Bool(agree)));
        row.push(("mismatch", mismatch.map_or(Cell::Null, Cell::Text)));
        report.push(row);
    }
    report.pass = Some(pass);
    let fine_note = if skipped > 0 {
        format!(", fine check skipped for {skipped} ideals in more than {MAX_BOX_VARS} variables")
    } else {
        String::new()
    };
    report.summary = Some(format!(
        "{} {checked} ideals, coefficients k <= {}, box {}{fine_note}",
        if pass { "PASS" } else { "FAIL" },
        a.k_max.map_or("n+10".to_string(), |k| k.to_string()),
        a.bound
    ));
    Ok(report)
}
