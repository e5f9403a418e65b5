use std::fmt::Write as _;
use std::time::Instant;

use dmod_core::drinfeld::{det_module, j_invariants, make_module, psi_of, torsion_seeded};
use dmod_core::galois::{certify, frobenius_matrix, SampleRecord, DEFAULT_BUDGET};
use dmod_core::groups::{
    abelianization_order, gl_order, kernel_factorization_check, kernel_subgroup, special_linear, KernelKind,
    DEFAULT_GROUP_CAP,
};
use dmod_core::moore::{moore_det, moore_interpolate, weil_t};
use dmod_core::parse::{parse_elem, parse_elem_list, parse_operator};
use dmod_core::poly::operator_field;
use dmod_core::suites::{run_case, run_grid, Suite};
use dmod_core::{construct_field, AdditivePoly, DrinfeldModule, Error, FieldDesc, OperatorPoly, Result};
use serde::Serialize;
use serde_json::{json, Value};

use crate::{Command, Opts, Report};

const POINT_LIST_LIMIT: usize = 4096;

pub fn dispatch(cmd: Command, o: &Opts) -> Result<Report> {
    match cmd {
        Command::Field => field(o),
        Command::Psi => psi(o),
        Command::Torsion => torsion(o),
        Command::Moore => moore(o),
        Command::Verify => verify(o),
        Command::Group => group(o),
        Command::Frobenius => frobenius(o),
        Command::Certify => certify_cmd(o),
    }
}

fn missing(flag: &str) -> Error {
    Error::Parse(format!("missing --{flag}"))
}

fn to_json<T: Serialize>(x: &T) -> Result<Value> {
    serde_json::to_value(x).map_err(|e| Error::CapExceeded(format!("value does not fit in JSON: {e}")))
}

fn q_of(o: &Opts) -> Result<u64> {
    o.q.ok_or_else(|| missing("q"))
}

fn base_field(o: &Opts) -> Result<FieldDesc> {
    let q = q_of(o)?;
    let (p, f) = dmod_core::ff::prime_power(q)?;
    let m = o.m.unwrap_or(1);
    if m == 0 {
        return Err(Error::DegreeZero);
    }
    construct_field(p, f * m)
}

fn level(o: &Opts) -> Result<OperatorPoly> {
    let fq = operator_field(q_of(o)?)?;
    parse_operator(o.n.as_deref().ok_or_else(|| missing("n"))?, &fq)
}

fn module(o: &Opts) -> Result<DrinfeldModule> {
    let field = base_field(o)?;
    let theta = parse_elem(o.theta.as_deref().ok_or_else(|| missing("theta"))?, &field)?;
    let mut a = match o.coeffs.as_deref() {
        Some(s) => parse_elem_list(s, &field)?,
        None => Vec::new(),
    };
    let r = match o.r {
        Some(r) => {
            if a.len() + 1 == r {
                a.push(field.one());
            }
            r
        }
        None => a.len(),
    };
    let mut image = vec![theta];
    image.extend(a);
    make_module(&field, q_of(o)?, r, &image)
}

fn field_name(f: &FieldDesc) -> String {
    if f.e() == 1 {
        format!("F_{}", f.p())
    } else {
        format!("F_{}^{}", f.p(), f.e())
    }
}

fn additive_json(f: &AdditivePoly) -> Value {
    json!({ "q": f.q(), "coeffs": f.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>() })
}

fn field(o: &Opts) -> Result<Report> {
    let f = base_field(o)?;
    let size = f.size().map(|s| s.to_string()).unwrap_or_else(|| format!("{}^{}", f.p(), f.e()));
    let json = json!({
        "p": f.p(),
        "e": f.e(),
        "q": q_of(o)?,
        "m": o.m.unwrap_or(1),
        "modulus": f.modulus(),
        "size": size,
        "generator": f.generator().to_string(),
    });
    let text = format!(
        "{} = F_p[x]/(modulus), p = {}, e = {}, modulus coefficients {:?}\n",
        field_name(&f),
        f.p(),
        f.e(),
        f.modulus()
    );
    Ok(Report { json, text, ok: true })
}

fn psi(o: &Opts) -> Result<Report> {
    let psi = module(o)?;
    let js = j_invariants(&psi)?;
    let rho = det_module(&psi);
    let mut json = json!({
        "module": to_json(&psi.to_record())?,
        "t_image": psi.t_image().display(),
        "j_invariants": js.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
        "det_module": to_json(&rho.to_record())?,
    });
    let mut text = format!("psi_t = {}\n", psi.t_image().display());
    if !js.is_empty() {
        let _ = writeln!(text, "J = {}", js.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", "));
    }
    let _ = writeln!(text, "rho_t = {}", rho.t_image().display());
    if o.n.is_some() {
        let n = level(o)?;
        let pn = psi_of(&psi, &n)?;
        json["n"] = json!(n.to_string());
        json["psi_n"] = additive_json(&pn);
        let _ = writeln!(text, "psi_{{{n}}} = {}", pn.display());
    }
    Ok(Report { json, text, ok: true })
}

fn torsion(o: &Opts) -> Result<Report> {
    let psi = module(o)?;
    let n = level(o)?;
    let t = torsion_seeded(&psi, &n, None, o.seed)?;
    let basis: Vec<String> = t.basis().iter().map(|x| x.to_string()).collect();
    let mut json = json!({
        "n": n.to_string(),
        "ambient": { "p": t.ambient().p(), "e": t.ambient().e() },
        "ext_degree": t.ext_degree(),
        "count": t.points().len(),
        "basis": basis,
    });
    if t.points().len() <= POINT_LIST_LIMIT {
        json["points"] = json!(t.points().iter().map(|x| x.to_string()).collect::<Vec<_>>());
    }
    let text = format!(
        "psi[{n}]: {} points in {} (degree {} over the base), basis {}\n",
        t.points().len(),
        field_name(t.ambient()),
        t.ext_degree(),
        basis.join(" ")
    );
    Ok(Report { json, text, ok: true })
}

fn moore(o: &Opts) -> Result<Report> {
    if o.theta.is_some() {
        return moore_module(o);
    }
    let field = base_field(o)?;
    let q = q_of(o)?;
    let xs = parse_elem_list(o.coeffs.as_deref().ok_or_else(|| missing("coeffs"))?, &field)?;
    let det = moore_det(&xs, q)?;
    let interp = if det.is_zero() { None } else { Some(moore_interpolate(&xs, q)?) };
    let json = json!({
        "tuple": xs.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
        "det": det.to_string(),
        "independent": !det.is_zero(),
        "interpolation": interp.as_ref().map(additive_json),
    });
    let mut text = format!("M = {det}\n");
    if let Some(f) = &interp {
        let _ = writeln!(text, "M(v, X) / M(v) = {}", f.display());
    }
    Ok(Report { json, text, ok: true })
}

/// The pairing on a basis of `psi[t]` and the reconstruction of `psi_t`.
fn moore_module(o: &Opts) -> Result<Report> {
    let psi = module(o)?;
    let t = OperatorPoly::var(&psi.operator_field());
    let tors = torsion_seeded(&psi, &t, None, o.seed)?;
    let value = weil_t(&psi, tors.basis())?;
    let interp = moore_interpolate(tors.basis(), psi.q())?;
    let lifted = psi.base_change(tors.ambient())?;
    let top = lifted.a(psi.rank()).inv()?;
    let monic: Vec<_> = lifted.t_image().coeffs().iter().map(|c| c * &top).collect();
    let matches = interp == AdditivePoly::new(tors.ambient(), psi.q(), monic)?;
    let json = json!({
        "basis": tors.basis().iter().map(|x| x.to_string()).collect::<Vec<_>>(),
        "weil_t": value.to_string(),
        "interpolation": additive_json(&interp),
        "reproduces_psi_t": matches,
    });
    let text = format!(
        "basis {}\nM(basis) = {value}\ninterpolation {} ({})\n",
        tors.basis().iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "),
        interp.display(),
        if matches { "matches a_r^-1 psi_t" } else { "MISMATCH" }
    );
    Ok(Report { json, text, ok: matches })
}

fn verify(o: &Opts) -> Result<Report> {
    let suite: Suite = o.suite.as_deref().ok_or_else(|| missing("suite"))?.parse()?;
    let report = match (o.q, o.r, o.n.as_deref()) {
        (Some(q), Some(r), Some(_)) => {
            let n = level(o)?;
            dmod_core::modring::SuiteReport { suite: suite.name().into(), cases: vec![run_case(suite, q, r, &n, o.seed)] }
        }
        (None, None, None) => run_grid(suite, o.samples.unwrap_or(5) as u64)?,
        _ => return Err(Error::Parse("give all of --q, --r, --n for one case, or none for the grid".into())),
    };
    let mut text = String::new();
    for c in &report.cases {
        let _ = write!(text, "{} q={} r={} n={} seed={}", if c.pass { "PASS" } else { "FAIL" }, c.q, c.r, c.n, c.seed);
        match &c.detail {
            Some(d) => {
                let _ = writeln!(text, " ({d})");
            }
            None => text.push('\n'),
        }
    }
    let _ = writeln!(text, "{}: {} of {} cases passed", report.suite, report.cases.len() - report.failures(), report.cases.len());
    Ok(Report { json: to_json(&report)?, ok: report.all_pass(), text })
}

fn group(o: &Opts) -> Result<Report> {
    let q = q_of(o)?;
    let r = o.r.ok_or_else(|| missing("r"))?;
    let n = level(o)?;
    let op = o.op.as_deref().unwrap_or("order");
    let (value, extra, ok) = match op {
        "order" => (gl_order(q, r, &n)?, Value::Null, true),
        "kernelG" | "kernelS" => {
            let kind = if op == "kernelG" { KernelKind::G } else { KernelKind::S };
            let g = kernel_subgroup(kind, q, r, &n, DEFAULT_GROUP_CAP)?;
            (g.order() as u128, Value::Null, true)
        }
        "abelianization" => {
            let g = special_linear(q, r, &n, DEFAULT_GROUP_CAP)?;
            (abelianization_order(&g)?, json!({ "group": "SL", "order": g.order() }), true)
        }
        "factorcheck" => {
            let k = kernel_factorization_check(q, r, &n)?;
            (k.g_order, to_json(&k)?, k.holds)
        }
        other => return Err(Error::Parse(format!("unknown --op {other:?}"))),
    };
    let json = json!({ "q": q, "r": r, "n": n.to_string(), "op": op, "value": to_json(&value)?, "detail": extra });
    let text = if op == "factorcheck" {
        format!("{}\n", if ok { "holds" } else { "FAILS" })
    } else {
        format!("{value}\n")
    };
    Ok(Report { json, text, ok })
}

fn frobenius(o: &Opts) -> Result<Report> {
    let psi = module(o)?;
    let n = level(o)?;
    let s = frobenius_matrix(&psi, &n, o.seed)?;
    let rec = SampleRecord::from_sample(&s);
    let consistent = s.order as usize == s.splitting_degree;
    let rows: Vec<String> = rec.matrix.iter().map(|r| format!("[{}]", r.join(", "))).collect();
    let text = format!(
        "Frobenius on psi[{n}]: [{}]\ncharpoly (low first) {}\norder {}, splitting degree {}\n",
        rows.join(", "),
        rec.charpoly.join(", "),
        s.order,
        s.splitting_degree
    );
    Ok(Report { json: to_json(&rec)?, text, ok: consistent })
}

fn certify_cmd(o: &Opts) -> Result<Report> {
    let q = q_of(o)?;
    let r = o.r.ok_or_else(|| missing("r"))?;
    let n = level(o)?;
    let start = Instant::now();
    let rep = certify(q, r, &n, o.samples.unwrap_or(DEFAULT_BUDGET), o.seed)?;
    eprintln!("wall time {:.3}s", start.elapsed().as_secs_f64());
    let text = format!(
        "{} (|GL_{r}(A/nA)| = {}, method {}, {} samples{})\n",
        if rep.certified() { "certified" } else { "inconclusive" },
        rep.group_order,
        serde_json::to_value(rep.method).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default(),
        rep.samples.len(),
        if rep.note.is_empty() { String::new() } else { format!("; {}", rep.note) }
    );
    Ok(Report { json: to_json(&rep)?, ok: rep.certified(), text })
}
