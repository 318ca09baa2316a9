use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::Path;

use merodec::decoder::{
    analyze as analyze_fn, conjecture_probe, dual_decoder_identity, mero_decoder, mero_decoder_multi, DistillReport,
    FixedFactor, FixedPoint, ProbePoint,
};
use merodec::projective::{octahedral_e7, same_orbit};
use merodec::stabcode::{weight_enumerator, WeightEnumerator};
use merodec::zxw::{eval_pointwise, eval_symbolic, SpiderExpr};
use merodec::{Error, ExtScalar, MeroFn, MultiMeroFn, PointedScalar, StabCode};
use serde::{Deserialize, Serialize};

pub const EXIT_INVALID_CODE: u8 = 1;
pub const EXIT_PARSE: u8 = 2;
pub const EXIT_INTERNAL: u8 = 3;

#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn internal(message: String) -> Self {
        Self {
            code: EXIT_INTERNAL,
            message,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse { .. } | Error::Unbound(_) | Error::DivisionByZero => EXIT_PARSE,
            Error::InvalidCode(_) | Error::Domain(_) | Error::Dimension(_) | Error::TooLarge(_) => EXIT_INVALID_CODE,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

fn load(path: &Path) -> Result<StabCode, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure {
        code: EXIT_INVALID_CODE,
        message: format!("cannot read {}: {e}", path.display()),
    })?;
    text.parse::<StabCode>().map_err(|e| {
        let mut f = Failure::from(e);
        f.message = format!("{}: {}", path.display(), f.message);
        f
    })
}

fn emit<T: Serialize>(json: bool, value: &T, text: impl FnOnce() -> String) -> Result<(), Failure> {
    if json {
        let s = serde_json::to_string_pretty(value).map_err(|e| Failure::internal(e.to_string()))?;
        println!("{s}");
    } else {
        print!("{}", text());
    }
    Ok(())
}

fn signature(vars: &[String]) -> String {
    format!("f({})", vars.join(", "))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecodeOutput {
    pub f: MeroFn,
    pub text: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub multi: Option<MultiMeroFn>,
}

pub fn decode(path: &Path, multi: bool, json: bool) -> Result<(), Failure> {
    let code = load(path)?;
    let f = mero_decoder(&code)?;
    let multi = if multi { Some(mero_decoder_multi(&code)?) } else { None };
    let out = DecodeOutput {
        text: f.to_string(),
        f,
        multi,
    };
    emit(json, &out, || {
        let mut s = format!("f(z) = {}\n", out.f);
        if let Some(m) = &out.multi {
            let _ = writeln!(s, "{} = {m}", signature(m.vars()));
        }
        s
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalyzeOutput {
    pub report: DistillReport,
    pub derivative: MeroFn,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub probe: Option<Vec<ProbePoint>>,
}

fn point_rows(s: &mut String, rows: &[FixedPoint], factors: &[FixedFactor]) {
    for p in rows {
        let _ = writeln!(
            s,
            "  {:<24} {:<10} order {}",
            p.point.to_string(),
            p.class.to_string(),
            p.order
        );
    }
    for f in factors {
        let _ = writeln!(
            s,
            "  {:<24} {:<10} order {}",
            f.factor.to_string(),
            f.class.to_string(),
            f.order
        );
    }
    if rows.is_empty() && factors.is_empty() {
        s.push_str("  none\n");
    }
}

fn analyze_text(out: &AnalyzeOutput) -> String {
    let r = &out.report;
    let mut s = String::new();
    let _ = writeln!(s, "f(z)  = {}", r.f);
    let _ = writeln!(s, "f'(z) = {}", out.derivative);
    let _ = writeln!(s, "r(z)  = {}", r.r);
    let _ = writeln!(s, "W(z)  = {}", r.wronskian);
    let _ = writeln!(
        s,
        "degree {}; Riemann-Hurwitz {} = {} ({})",
        r.f.degree(),
        r.rh.lhs,
        r.rh.rhs,
        if r.rh.ok { "ok" } else { "FAILED" }
    );
    s.push_str("branch points (factor, ramification index):\n");
    for (mu, e) in &r.branch.finite {
        let _ = writeln!(s, "  {:<24} {}", mu.to_string(), e + 1);
    }
    if r.branch.infinity_order > 0 {
        let _ = writeln!(s, "  {:<24} {}", "inf", r.branch.infinity_order + 1);
    }
    s.push_str("fixed points (distilled):\n");
    point_rows(&mut s, &r.fixed_rational, &r.fixed_algebraic);
    if r.infinity.fixed {
        let _ = writeln!(s, "  {:<24} {:<10} order {}", "inf", "stabilizer", r.infinity.order);
    } else {
        let _ = writeln!(s, "  f(inf) = {}", r.infinity.image);
    }
    s.push_str("coherent (fixed and stationary):\n");
    point_rows(&mut s, &r.coherent, &r.coherent_algebraic);
    s.push_str("distilled up to Clifford (catalog factors):\n");
    for c in &r.clifford_distilled {
        let _ = writeln!(
            s,
            "  {:<24} {:<10} order {}  witness {}",
            c.factor.to_string(),
            c.class.to_string(),
            c.order,
            c.witness
        );
    }
    if let Some(probe) = &out.probe {
        s.push_str("probe against the declared distance:\n");
        for p in probe {
            let _ = writeln!(
                s,
                "  z = {:<4} f(z) = {:<4} order {}  {}",
                p.point.to_string(),
                p.image.to_string(),
                p.order,
                if p.pass { "pass" } else { "fail" }
            );
        }
    }
    s
}

pub fn analyze(path: &Path, json: bool) -> Result<(), Failure> {
    let code = load(path)?;
    let f = mero_decoder(&code)?;
    let out = AnalyzeOutput {
        derivative: f.deriv(),
        report: analyze_fn(&f)?,
        probe: conjecture_probe(&code).ok(),
    };
    emit(json, &out, || analyze_text(&out))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DualOutput {
    pub code: StabCode,
    pub f: MeroFn,
    pub f_dual: MeroFn,
    pub hadamard_identity: bool,
}

pub fn dual(path: &Path, json: bool) -> Result<(), Failure> {
    let code = load(path)?;
    let dual = code.dual();
    let out = DualOutput {
        f: mero_decoder(&code)?,
        f_dual: mero_decoder(&dual)?,
        hadamard_identity: dual_decoder_identity(&code)?,
        code: dual,
    };
    emit(json, &out, || {
        format!(
            "{}# f(z) = {}\n# dual f(z) = {}\n# f = H f_dual H: {}\n",
            out.code.to_file_string(),
            out.f,
            out.f_dual,
            out.hadamard_identity
        )
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConcatOutput {
    pub code: StabCode,
}

pub fn concat(outer: &Path, inner: &Path, out: Option<&Path>, json: bool) -> Result<(), Failure> {
    let code = StabCode::concat(&load(outer)?, &load(inner)?)?;
    let result = ConcatOutput { code };
    if let Some(path) = out {
        std::fs::write(path, result.code.to_file_string())
            .map_err(|e| Failure::internal(format!("cannot write {}: {e}", path.display())))?;
        return emit(json, &result, String::new);
    }
    emit(json, &result, || result.code.to_file_string())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WenumOutput {
    pub enumerator: WeightEnumerator,
    pub text: String,
}

pub fn wenum(path: &Path, xtype: bool, json: bool) -> Result<(), Failure> {
    let code = load(path)?;
    let gens = if xtype {
        code.css_split()
            .ok_or_else(|| Failure::from(Error::domain("not a CSS code")))?
            .0
    } else {
        code.generators().to_vec()
    };
    let w = weight_enumerator(code.n(), &gens)?;
    let out = WenumOutput {
        text: w.to_string(),
        enumerator: w,
    };
    emit(json, &out, || format!("{}\n", out.text))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrbitOutput {
    pub same: bool,
    pub e7_w: ExtScalar,
    pub e7_z: ExtScalar,
}

pub fn orbit(w: &str, z: &str, json: bool) -> Result<(), Failure> {
    let w: ExtScalar = w.parse()?;
    let z: ExtScalar = z.parse()?;
    let e7 = octahedral_e7();
    let out = OrbitOutput {
        same: same_orbit(&w, &z),
        e7_w: e7.eval(&w),
        e7_z: e7.eval(&z),
    };
    emit(json, &out, || {
        if out.same {
            format!("same orbit: true (E7 = {})\n", out.e7_w)
        } else {
            format!("same orbit: false (E7(w) = {}, E7(z) = {})\n", out.e7_w, out.e7_z)
        }
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZxwOutput {
    pub expr: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<PointedScalar>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub symbolic: Option<MultiMeroFn>,
}

fn parse_binding(s: &str) -> Result<(String, PointedScalar), Failure> {
    let (name, value) = s.split_once('=').ok_or_else(|| Failure {
        code: EXIT_PARSE,
        message: format!("expected NAME=VALUE, got `{s}`"),
    })?;
    Ok((name.trim().to_string(), value.parse()?))
}

pub fn zxw_eval(expr: &str, at: &[String], symbolic: bool, json: bool) -> Result<(), Failure> {
    let e: SpiderExpr = expr.parse()?;
    let env: HashMap<String, PointedScalar> = at.iter().map(|s| parse_binding(s)).collect::<Result<_, _>>()?;
    let value = if !symbolic || !at.is_empty() {
        Some(eval_pointwise(&e, &env)?)
    } else {
        None
    };
    let symbolic = if symbolic { Some(eval_symbolic(&e)?) } else { None };
    let out = ZxwOutput {
        expr: e.to_string(),
        value,
        symbolic,
    };
    emit(json, &out, || {
        let mut s = String::new();
        if let Some(f) = &out.symbolic {
            let _ = writeln!(s, "{} = {f}", signature(f.vars()));
        }
        if let Some(v) = &out.value {
            let _ = writeln!(s, "{v}");
        }
        s
    })
}
