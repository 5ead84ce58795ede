use num_complex::Complex64;
use qbern_core::approx::Builtin;
use qbern_core::interp::{s_derivative, s_q_closed, s_q_series, InterpPoint};
use qbern_core::qbernstein::{
    gen_fun, gen_fun_series, hermite_sum, phillips_operator, q_operator, y_poly, y_poly_sumform,
    GenFunPoint,
};
use qbern_core::qnum::{gauss_binomial, q_integer};
use qbern_core::special::{bernoulli_higher, hermite, stirling2};
use qbern_core::{bernstein, QParam, SeriesTruncation};

use crate::args::EvalArgs;
use crate::{output, parse, CliError, CliResult};

pub const QUANTITIES: [&str; 19] = [
    "basis",
    "y",
    "y-sum",
    "genfun",
    "genfun-series",
    "s_q",
    "s_q-series",
    "s-derivative",
    "hermite",
    "bernoulli",
    "stirling2",
    "gauss-binomial",
    "q-int",
    "moment",
    "phillips",
    "operator",
    "q-operator",
    "beta-density",
    "hermite-sum",
];

fn need<T: Copy>(v: Option<T>, flag: &str, quantity: &str) -> CliResult<T> {
    v.ok_or_else(|| CliError::Usage(format!("`{quantity}` needs --{flag}")))
}

pub fn unit_x(x: f64) -> CliResult<f64> {
    if (0.0..=1.0).contains(&x) {
        Ok(x)
    } else {
        Err(CliError::Usage(format!("x = {x} must lie in [0, 1]")))
    }
}

pub fn qparam(q: f64) -> CliResult<QParam> {
    Ok(QParam::new(q)?)
}

pub fn truncation(terms: Option<usize>, default: usize) -> CliResult<SeriesTruncation> {
    Ok(SeriesTruncation::with_terms(terms.unwrap_or(default))?)
}

pub fn builtin(name: Option<&str>, quantity: &str) -> CliResult<Builtin> {
    let name = name.ok_or_else(|| CliError::Usage(format!("`{quantity}` needs --fn")))?;
    Ok(name.parse()?)
}

enum Value {
    Real(f64),
    Complex(Complex64),
    Exact(String),
}

pub fn run(a: &EvalArgs) -> CliResult<u8> {
    let qn = a.quantity.as_str();
    let n = || need(a.n, "n", qn);
    let k = || need(a.k, "k", qn);
    let x = || need(a.x, "x", qn);
    let q = || need(a.q, "q", qn).and_then(qparam);
    let z = || {
        let s =
            a.z.as_deref()
                .ok_or_else(|| CliError::Usage(format!("`{qn}` needs --z")))?;
        parse::complex(s, "--z")
    };
    let value = match qn {
        "basis" => Value::Real(bernstein::basis(need(a.j, "j", qn)?, n()?, unit_x(x()?)?)),
        "y" => Value::Real(y_poly(n()?, k()?, x()?, q()?)?),
        "y-sum" => Value::Real(y_poly_sumform(n()?, k()?, x()?, q()?)?),
        "genfun" | "genfun-series" => {
            let t =
                a.t.as_deref()
                    .ok_or_else(|| CliError::Usage(format!("`{qn}` needs --t")))?;
            let p = GenFunPoint::new(
                parse::complex(t, "--t")?,
                x()?,
                q()?,
                truncation(a.terms, 64)?,
            )?;
            Value::Complex(if qn == "genfun" {
                gen_fun(&p, k()?)?
            } else {
                gen_fun_series(&p, k()?)?
            })
        }
        "s_q" => Value::Complex(s_q_closed(&InterpPoint::new(z()?, k()?, x()?, q()?))?),
        "s_q-series" => Value::Complex(s_q_series(
            &InterpPoint::new(z()?, k()?, x()?, q()?),
            truncation(a.terms, 1000)?,
        )?),
        "s-derivative" => Value::Complex(s_derivative(need(a.m, "m", qn)?, z()?, k()?, x()?)?),
        "hermite" => Value::Real(hermite(n()?, z()?.re)),
        "bernoulli" => Value::Real(bernoulli_higher(n()?, need(a.v, "v", qn)?, z()?.re)),
        "stirling2" => Value::Exact(stirling2(n()?, k()?).to_string()),
        "gauss-binomial" => {
            Value::Real(gauss_binomial(i64::from(n()?), need(a.r, "r", qn)?, q()?)?)
        }
        "q-int" => Value::Real(q_integer(x()?, q()?)?),
        "moment" => Value::Real(bernstein::binomial_moment(
            n()?,
            unit_x(x()?)?,
            need(a.m, "m", qn)?,
        )),
        "phillips" | "operator" | "q-operator" => {
            let f = builtin(a.func.as_deref(), qn)?;
            let g = |t| f.eval(t);
            Value::Real(match qn {
                "phillips" => phillips_operator(&g, n()?, x()?, q()?)?,
                "operator" => bernstein::operator(&g, n()?, x()?)?,
                _ => q_operator(&g, n()?, x()?, q()?)?,
            })
        }
        "beta-density" => Value::Real(bernstein::beta_density(need(a.j, "j", qn)?, n()?, x()?)?),
        "hermite-sum" => Value::Real(hermite_sum(
            k()?,
            need(a.y, "y", qn)?,
            truncation(a.terms, 40)?,
        )?),
        _ => {
            return Err(CliError::Usage(format!(
                "unknown quantity `{qn}` (expected one of: {})",
                QUANTITIES.join(", ")
            )))
        }
    };
    let text = match value {
        Value::Real(v) => output::real(v, a.precision),
        Value::Complex(c) => output::complex(c, a.precision),
        Value::Exact(s) => s,
    };
    output::emit(&format!("{text}\n"), None)?;
    Ok(0)
}
