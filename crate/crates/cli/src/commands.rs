use serde_json::{json, Value};

use torelli::arrangements::{
    is_snc, nc_outside_finite, sigma_points, torelli_threshold, SectionConfig, ThresholdVariety,
};
use torelli::invariants::{
    bott_kunneth_h1_tangent, euler_char, is_acm_q2, line_arrangement_splitting, log_chern, residue_euler_check,
    twist_chern,
};
use torelli::quadrics::{apolar_point, section_is_smooth};
use torelli::torelli::{
    distinguish, jacobian_space, pencil_singular_members, recover_split_normal_form, restrict_and_compare,
    smooth_on_p1xp1, smooth_on_p1xp1_with, PencilParameter, SingularWitness, SmoothOptions, Smoothness, SplitForm,
    Verdict,
};
use torelli::{HArrangement, MPoly, MultiDegree, Shape};

use crate::input::{self, CliError, CliResult};
use crate::report::{matrix, quad, rational, rationals, Report};
use crate::{Command, ThresholdKind, MAX_SUBSET_CAP};

const EXACT: &str = "exact";

fn probabilistic(primes: &[u64]) -> String {
    let list: Vec<String> = primes.iter().map(u64::to_string).collect();
    format!("probabilistic (primes {})", list.join(", "))
}

pub fn run(command: Command) -> CliResult<Report> {
    match command {
        Command::Distinguish { f, g, trials, seed } => {
            distinguish_cmd(&input::poly(&f)?, &input::poly(&g)?, trials, seed)
        }
        Command::Recover { f, g } => recover_cmd(&input::poly(&f)?, &input::poly(&g)?),
        Command::Jacobian { f, factor } => jacobian_cmd(&input::poly(&f)?, factor),
        Command::Smooth { f, modular, primes } => smooth_cmd(&input::poly(&f)?, modular, primes),
        Command::Pencil { f, g } => pencil_cmd(&input::poly(&f)?, &input::poly(&g)?),
        Command::Apolar { quadric, hyperplane } => {
            let (q, h) = (input::quadric(&quadric)?, input::hyperplane(&hyperplane)?);
            let p = apolar_point(&q, &h)?;
            Ok(Report::new("apolar")
                .with("point", rationals(&p.coords))
                .with("section_smooth", section_is_smooth(&q, &h)?)
                .with("provenance", EXACT))
        }
        Command::Tame { quadric, sections, max_subset } => {
            let config = SectionConfig::new(input::quadric(&quadric)?, input::sections(&sections)?)?;
            check_size(config.sections().len(), max_subset)?;
            let report = torelli::arrangements::is_tame(&config)?;
            Ok(Report::new("tame")
                .with("tame", report.snc)
                .with("witness", json!(report.witness))
                .with("provenance", EXACT))
        }
        Command::Snc { arrangement, max_subset } => {
            let a = input::arrangement(&arrangement)?;
            check_size(a.len(), max_subset)?;
            snc_cmd(&a)
        }
        Command::Sigma { arrangement, max_subset } => {
            let a = input::arrangement(&arrangement)?;
            check_size(a.len(), max_subset)?;
            let points = sigma_points(&a)?;
            Ok(Report::new("sigma")
                .with("count", points.len())
                .with("points", Value::Array(points.iter().map(|p| rationals(p)).collect()))
                .with("provenance", EXACT))
        }
        Command::Chern { curves } => {
            let e = log_chern(&input::curves(&curves)?)?;
            Ok(Report::new("chern")
                .with("rank", e.rank)
                .with("c1", json!([e.c1.0, e.c1.1]))
                .with("c2", e.c2)
                .with("chi", euler_char(&e)))
        }
        Command::Chi { curves, twist } => {
            if twist.len() != 2 {
                return Err(CliError::Input("--twist takes two integers s,t".into()));
            }
            let e = log_chern(&input::curves(&curves)?)?;
            let t = twist_chern(&e, twist[0], twist[1]);
            Ok(Report::new("chi").with("twist", json!(twist)).with("chi", euler_char(&t)))
        }
        Command::Splitting { a, b } => {
            let (l1, l2) = line_arrangement_splitting(a, b)?;
            Ok(Report::new("splitting")
                .with("summands", json!([[l1.0, l1.1], [l2.0, l2.1]]))
                .with("text", format!("O({}, {}) + O({}, {})", l1.0, l1.1, l2.0, l2.1)))
        }
        Command::Acm { curves } => Ok(Report::new("acm").with("acm", is_acm_q2(&input::curves(&curves)?))),
        Command::Vanishing { shape, degree } => {
            let shape = Shape::new(shape)?;
            let report = bott_kunneth_h1_tangent(&shape, &MultiDegree::new(degree))?;
            Ok(Report::new("vanishing").with("h1", report.h1).with("vanishes", report.vanishes))
        }
        Command::Threshold { kind, n, d } => {
            let v = match kind {
                ThresholdKind::Pn => ThresholdVariety::Pn { n },
                ThresholdKind::Quadric => ThresholdVariety::Quadric { n, d },
                ThresholdKind::QuadricHyperplane => ThresholdVariety::QuadricHyperplane { n },
            };
            Ok(Report::new("threshold").with("threshold", torelli_threshold(v)?))
        }
        Command::ResidueCheck { curves } => {
            let r = residue_euler_check(&input::curves(&curves)?)?;
            Ok(Report::new("residue-check").with("lhs", r.lhs).with("rhs", r.rhs).with("equal", r.equal))
        }
    }
}

/// Subset enumeration is exponential in the number of hyperplanes.
fn check_size(m: usize, max_subset: usize) -> CliResult<()> {
    if max_subset > MAX_SUBSET_CAP {
        return Err(CliError::Input(format!("--max-subset is capped at {MAX_SUBSET_CAP}")));
    }
    if m > max_subset {
        return Err(CliError::Input(format!("{m} hyperplanes exceed --max-subset {max_subset}")));
    }
    Ok(())
}

fn smoothness_value(s: &Smoothness) -> Value {
    match s {
        Smoothness::Smooth => json!({"verdict": "Smooth", "provenance": EXACT}),
        Smoothness::ProbabilisticSmooth { primes } => {
            json!({"verdict": "ProbabilisticSmooth", "provenance": probabilistic(primes)})
        }
        Smoothness::Singular(SingularWitness::Point { x, y }) => json!({
            "verdict": "Singular",
            "point": [rationals(x), rationals(y)],
            "provenance": EXACT,
        }),
        Smoothness::Singular(SingularWitness::Algebraic { chart, t_factor, s_factor }) => json!({
            "verdict": "Singular",
            "chart": chart,
            "t_factor": t_factor,
            "s_factor": s_factor,
            "provenance": EXACT,
        }),
    }
}

fn distinguish_cmd(f: &MPoly, g: &MPoly, trials: usize, seed: u64) -> CliResult<Report> {
    let d = distinguish(f, g)?;
    let (verdict, witness) = match d.verdict {
        Verdict::DistinctBundles { witness_factor } => ("DistinctBundles", json!(witness_factor)),
        Verdict::JacobianIndistinguishable => ("JacobianIndistinguishable", Value::Null),
    };
    let spans: Vec<Value> =
        d.spans.iter().map(|(jf, jg)| json!({"f": matrix(jf.basis()), "g": matrix(jg.basis())})).collect();
    let mut report = Report::new("distinguish")
        .with("verdict", verdict)
        .with("witness_factor", witness)
        .with("h1", d.h1)
        .with("hypothesis_verified", d.hypothesis_verified);
    // smoothness is decided only on P1 x P1
    let smooth = if f.shape().dims() == [1, 1] {
        let (sf, sg) = (smooth_on_p1xp1(f)?, smooth_on_p1xp1(g)?);
        let both = sf == Smoothness::Smooth && sg == Smoothness::Smooth;
        report = report.with("smooth", json!({"f": smoothness_value(&sf), "g": smoothness_value(&sg)}));
        Some(both)
    } else {
        report = report.with("smooth", "unchecked");
        None
    };
    let proven = matches!(d.verdict, Verdict::DistinctBundles { .. }) && d.hypothesis_verified && smooth == Some(true);
    report = report.with("bundles_proven_distinct", proven).with("spans", spans).with("provenance", EXACT);
    if trials > 0 {
        let r = restrict_and_compare(f, g, trials, seed)?;
        let rows: Vec<Value> = r
            .trials
            .iter()
            .map(|t| {
                json!({
                    "point": t.point.iter().map(|p| rationals(p)).collect::<Vec<_>>(),
                    "spans_equal": t.spans_equal,
                    "proportional": t.proportional,
                })
            })
            .collect();
        report = report.with(
            "restrictions",
            json!({"seed": seed, "all_spans_equal": r.all_spans_equal, "all_proportional": r.all_proportional, "trials": rows}),
        );
    }
    Ok(report)
}

fn split_form_value(s: &SplitForm) -> Value {
    json!({
        "u": rational(&s.u),
        "v": rational(&s.v),
        "exponents": [s.exponents.0, s.exponents.1],
        "changes": s.changes.iter().map(|c| json!({"factor": c.factor + 1, "matrix": matrix(&c.matrix)})).collect::<Vec<_>>(),
    })
}

fn recover_cmd(f: &MPoly, g: &MPoly) -> CliResult<Report> {
    let report = Report::new("recover");
    let Some(rec) = recover_split_normal_form(f, g)? else {
        return Ok(report.with("split", false).with("provenance", EXACT));
    };
    let member = rec
        .singular_member
        .as_ref()
        .map(|(param, poly)| json!({"parameter": rationals(param), "polynomial": poly.to_string()}));
    let points: Vec<Value> = rec.singular_points.iter().map(|(x, y)| json!([rationals(x), rationals(y)])).collect();
    Ok(report
        .with("split", true)
        .with("lambda", rational(&rec.lambda))
        .with("f_form", split_form_value(&rec.f_form))
        .with("g_form", split_form_value(&rec.g_form))
        .with("singular_member", member.unwrap_or(Value::Null))
        .with("singular_points", points)
        .with("provenance", EXACT))
}

fn jacobian_cmd(f: &MPoly, factor: usize) -> CliResult<Report> {
    if factor == 0 || factor > f.shape().factors() {
        return Err(CliError::Input(format!("factor {factor} outside 1..={}", f.shape().factors())));
    }
    let span = jacobian_space(f, factor - 1)?;
    let polys: Vec<Value> = span.basis_polys().iter().map(|p| Value::String(p.to_string())).collect();
    Ok(Report::new("jacobian")
        .with("factor", factor)
        .with("dim", span.dim())
        .with("basis", polys)
        .with("rref", matrix(span.basis())))
}

fn smooth_cmd(f: &MPoly, modular: bool, primes: Vec<u64>) -> CliResult<Report> {
    if let Some(p) =
        primes.iter().find(|&&p| !(3..1 << 31).contains(&p) || !(2..p).take_while(|d| d * d <= p).all(|d| p % d != 0))
    {
        return Err(CliError::Input(format!("{p} is not an odd prime below 2^31")));
    }
    let opts = SmoothOptions { exact: !modular, primes, ..SmoothOptions::default() };
    let s = smooth_on_p1xp1_with(f, &opts)?;
    let mut report = Report::new("smooth");
    let value = smoothness_value(&s);
    for key in ["verdict", "point", "chart", "t_factor", "s_factor", "provenance"] {
        if let Some(v) = value.get(key) {
            report = report.with(key, v.clone());
        }
    }
    Ok(report)
}

fn pencil_cmd(f: &MPoly, g: &MPoly) -> CliResult<Report> {
    let r = pencil_singular_members(f, g)?;
    let members: Vec<Value> = r
        .members
        .iter()
        .map(|m| {
            let parameter = match &m.parameter {
                PencilParameter::Rational(p) => rationals(p),
                PencilParameter::Quadratic(p) => quad(p),
                PencilParameter::Symbolic { factor } => json!({"roots_of": factor.to_string()}),
            };
            json!({
                "parameter": parameter,
                "multiplicity": m.multiplicity,
                "verified": m.verified,
                "polynomial": m.polynomial.as_ref().map(MPoly::to_string),
            })
        })
        .collect();
    Ok(Report::new("pencil")
        .with("members", members)
        .with("eliminant", r.eliminant.as_ref().map(|p| p.to_string()))
        .with("complete", r.complete)
        .with("multiplicity_exact", r.multiplicity_exact)
        .with("provenance", EXACT))
}

fn snc_cmd(a: &HArrangement) -> CliResult<Report> {
    let report = is_snc(a);
    let mut out = Report::new("snc").with("snc", report.snc).with("witness", json!(report.witness));
    if a.r() >= 3 {
        out = out.with("nc_outside_finite", nc_outside_finite(a)?);
    }
    Ok(out.with("provenance", EXACT))
}
