use qbern_core::approx::{approximation_errors, Builtin, OperatorKind};
use qbern_core::interp::{s_q_closed, InterpPoint};
use qbern_core::qbernstein::{phillips_operator, y_poly};
use qbern_core::verify::{self, Suite};
use qbern_core::{bernstein, QParam};
use serde_json::json;

use crate::args::{ApproxArgs, TableArgs, VerifyArgs};
use crate::eval::{qparam, unit_x};
use crate::output::{self, Table};
use crate::{parse, CliError, CliResult};

fn required<'a>(v: &'a Option<String>, flag: &str, quantity: &str) -> CliResult<&'a str> {
    v.as_deref()
        .ok_or_else(|| CliError::Usage(format!("table `{quantity}` needs --{flag}")))
}

fn qs(list: &[f64]) -> CliResult<Vec<QParam>> {
    list.iter().map(|&q| qparam(q)).collect()
}

fn builtins(s: &str) -> CliResult<Vec<Builtin>> {
    let mut fs = s
        .split(',')
        .map(|f| f.trim().parse::<Builtin>())
        .collect::<Result<Vec<_>, _>>()?;
    fs.sort_by_key(|f| f.name());
    fs.dedup();
    Ok(fs)
}

/// Index list, or `0..=n` when the flag is absent.
fn indices(list: &Option<Vec<u32>>, n: u32) -> Vec<u32> {
    list.clone().unwrap_or_else(|| (0..=n).collect())
}

pub fn run_table(a: &TableArgs) -> CliResult<u8> {
    let qn = a.quantity.as_str();
    let grid = || parse::real_list(required(&a.grid, "grid", qn)?, "--grid");
    let ns = || parse::uint_list(required(&a.n, "n", qn)?, "--n");
    let qlist = || qs(&parse::real_list(required(&a.q, "q", qn)?, "--q")?);
    let opt_uints =
        |v: &Option<String>, flag| v.as_deref().map(|s| parse::uint_list(s, flag)).transpose();

    let table = match qn {
        "basis" => {
            let js = opt_uints(&a.j, "--j")?;
            let xs = grid()?;
            let mut t = Table::new(vec!["n", "j", "x", "value"]);
            for n in ns()? {
                for j in indices(&js, n) {
                    for &x in &xs {
                        t.push(vec![n.into(), j.into(), x.into(), bernstein::basis(i64::from(j), n, unit_x(x)?).into()]);
                    }
                }
            }
            t
        }
        "y" | "y_poly" => {
            let ks = opt_uints(&a.k, "--k")?;
            let (xs, qv) = (grid()?, qlist()?);
            let mut t = Table::new(vec!["n", "k", "q", "x", "value"]);
            for n in ns()? {
                for k in indices(&ks, n) {
                    for &q in &qv {
                        for &x in &xs {
                            t.push(vec![n.into(), k.into(), q.value().into(), x.into(), y_poly(n, k, x, q)?.into()]);
                        }
                    }
                }
            }
            t
        }
        "s_q" => {
            let zs = parse::complex_list(required(&a.z, "z", qn)?, "--z")?;
            let ks = parse::uint_list(required(&a.k, "k", qn)?, "--k")?;
            let (xs, qv) = (grid()?, qlist()?);
            let mut t = Table::new(vec!["z", "k", "q", "x", "re", "im"]);
            for &z in &zs {
                for &k in &ks {
                    for &q in &qv {
                        for &x in &xs {
                            let s = s_q_closed(&InterpPoint::new(z, k, x, q))?;
                            t.push(vec![
                                output::complex(z, None).into(),
                                k.into(),
                                q.value().into(),
                                x.into(),
                                s.re.into(),
                                s.im.into(),
                            ]);
                        }
                    }
                }
            }
            t
        }
        "phillips" => {
            let fs = builtins(required(&a.func, "fn", qn)?)?;
            let (xs, qv, nv) = (grid()?, qlist()?, ns()?);
            let mut t = Table::new(vec!["fn", "n", "q", "x", "value"]);
            for &f in &fs {
                for &n in &nv {
                    for &q in &qv {
                        for &x in &xs {
                            let v = phillips_operator(&|s| f.eval(s), n, x, q)?;
                            t.push(vec![f.name().into(), n.into(), q.value().into(), x.into(), v.into()]);
                        }
                    }
                }
            }
            t
        }
        "operator-error" => {
            let fs = builtins(required(&a.func, "fn", qn)?)?;
            let op: OperatorKind = a.operator.as_deref().unwrap_or("classical").parse()?;
            let qv = match &a.q {
                Some(s) => qs(&parse::real_list(s, "--q")?)?,
                None => vec![QParam::ONE],
            };
            let (xs, nv) = (grid()?, ns()?);
            let mut t = Table::new(vec!["fn", "operator", "n", "q", "x", "value", "error"]);
            for &f in &fs {
                for &n in &nv {
                    for &q in &qv {
                        for &x in &xs {
                            let v = op.apply(f, n, x, q)?;
                            t.push(vec![
                                f.name().into(),
                                op.name().into(),
                                n.into(),
                                q.value().into(),
                                x.into(),
                                v.into(),
                                (v - f.eval(x)).abs().into(),
                            ]);
                        }
                    }
                }
            }
            t
        }
        "moment" => {
            let ms = opt_uints(&a.m, "--m")?.unwrap_or_else(|| (0..=4).collect());
            let (xs, nv) = (grid()?, ns()?);
            let mut t = Table::new(vec!["n", "m", "x", "value"]);
            for &n in &nv {
                for &m in &ms {
                    for &x in &xs {
                        t.push(vec![n.into(), m.into(), x.into(), bernstein::binomial_moment(n, unit_x(x)?, m).into()]);
                    }
                }
            }
            t
        }
        _ => {
            return Err(CliError::Usage(format!(
                "unknown table `{qn}` (expected basis, y, y_poly, s_q, phillips, operator-error or moment)"
            )))
        }
    };
    output::emit(&table.render(a.format, a.precision)?, a.out.as_deref())?;
    Ok(0)
}

pub fn run_approx(a: &ApproxArgs) -> CliResult<u8> {
    let f: Builtin = a.func.parse()?;
    let op: OperatorKind = a.operator.parse()?;
    let q = qparam(a.q)?;
    let ns = parse::uint_list(&a.n, "--n")?;
    let xs = parse::real_list(&a.grid, "--grid")?;
    for &x in &xs {
        unit_x(x)?;
    }
    let rows = approximation_errors(f, op, &ns, q, &xs)?;
    let mut t = Table::new(vec![
        "fn",
        "operator",
        "q",
        "n",
        "max_error",
        "min_margin",
        "monotone_margin",
    ]);
    for r in rows {
        t.push(vec![
            f.name().into(),
            op.name().into(),
            q.value().into(),
            r.n.into(),
            r.max_error.into(),
            r.min_margin.into(),
            r.monotone_margin.into(),
        ]);
    }
    output::emit(&t.render(a.format, a.precision)?, a.out.as_deref())?;
    Ok(0)
}

pub fn run_verify(a: &VerifyArgs) -> CliResult<u8> {
    let suite: Suite = a.suite.parse()?;
    if let Some(t) = a.tol {
        if !(t.is_finite() && t >= 0.0) {
            return Err(CliError::Usage(format!(
                "--tol {t} must be a finite nonnegative number"
            )));
        }
    }
    let reports = verify::run(suite, a.tol);
    let summary = verify::summarize(&reports);
    let mut text = String::new();
    for r in &reports {
        text.push_str(&serde_json::to_string(r).expect("reports serialize"));
        text.push('\n');
    }
    let line = json!({
        "summary": {
            "suite": suite.name(),
            "total": summary.total,
            "passed": summary.passed,
            "failed": summary.failed,
            "diagnostics": summary.diagnostics,
            "all_passed": summary.all_passed(),
        }
    });
    text.push_str(&line.to_string());
    text.push('\n');
    output::emit(&text, a.out.as_deref())?;
    Ok(if summary.all_passed() { 0 } else { 1 })
}
