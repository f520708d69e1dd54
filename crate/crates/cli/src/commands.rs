//! One function per subcommand. Each returns the JSON document, its text
//! rendering and the exit status.

use std::path::Path;

use num_traits::Zero;
use recipchow::algebra::{sylvester_resultant, to_short, FloatPoly, MultiPoly, RatMatrix};
use recipchow::detrep::{chow_form, chow_form_cleared, phi_symbolic, v_vectors, Convention, LinearSpace};
use recipchow::entropic::{sos_certificate, trace_form_disc, SosMode, SosOptions, SosTerms};
use recipchow::exterior::{orthocomplement, PlueckerVector, Subset};
use recipchow::hadamard::{bichow_form, expected_degree, hadamard_surface, hadamard_symbolic, membership_check};
use recipchow::io::{matrix_json, parse_space, pluecker_json, rational_json, SpaceInput};
use recipchow::matroid::Matroid;
use recipchow::random::rng_from_seed;
use recipchow::simplicial::{fiber_forms, forest_expansion, spanning_forests, tree_resultant, AlphaSpec};
use recipchow::verify::run_suite;
use recipchow::{Error, Result};
use serde_json::{json, Value};

use crate::render::Text;
use crate::Vars;

/// Products `a ⋆ b` sampled by the membership self-check.
const MEMBERSHIP_SAMPLES: usize = 10;

pub struct Report {
    pub json: Value,
    pub text: String,
    pub status: u8,
}

impl Report {
    fn ok(json: Value, text: Text) -> Self {
        Self { json, text: text.finish(), status: 0 }
    }
}

fn read_space(path: &Path) -> Result<SpaceInput> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    parse_space(&text).map_err(|e| match e {
        Error::Parse(m) => Error::Parse(format!("{}: {m}", path.display())),
        other => other,
    })
}

fn read_matrix(path: &Path) -> Result<RatMatrix> {
    read_space(path)?.matrix()
}

fn labels(sets: &[Subset]) -> Vec<String> {
    sets.iter().map(Subset::label).collect()
}

fn poly_json(p: &MultiPoly) -> Value {
    p.to_json_value()
}

fn float_poly_json(p: &FloatPoly, vars: &[String]) -> Value {
    let terms: Vec<Value> = p.terms.iter().rev().map(|(e, c)| json!({"coeff": c, "exps": e})).collect();
    json!({"vars": vars, "terms": terms})
}

fn matrix_rows(m: &RatMatrix) -> Vec<Vec<String>> {
    (0..m.rows()).map(|r| m.row(r).iter().map(to_short).collect()).collect()
}

/// `(n, d)` from a space if given, else from the flags; they must agree.
fn shape(space: Option<&RatMatrix>, n: Option<usize>, d: Option<usize>) -> Result<(usize, usize)> {
    let (n, d) = match space {
        Some(m) => {
            if n.is_some_and(|v| v != m.cols()) || d.is_some_and(|v| v != m.rows()) {
                return Err(Error::Precondition("--n/--d disagree with the input space".into()));
            }
            (m.cols(), m.rows())
        }
        None => match (n, d) {
            (Some(n), Some(d)) => (n, d),
            _ => return Err(Error::Precondition("give --input or both --n and --d".into())),
        },
    };
    if d == 0 || d >= n {
        return Err(Error::Precondition(format!("need 1 ≤ d < n, got d = {d}, n = {n}")));
    }
    Ok((n, d))
}

pub fn pluecker(input: &Path) -> Result<Report> {
    let m = read_matrix(input)?;
    let p = PlueckerVector::from_matrix(&m)?;
    let mut json = json!({
        "command": "pluecker",
        "n": p.n(),
        "d": p.d(),
        "coordinates": pluecker_json(&p),
        "support_size": p.support().len(),
    });
    let mut text = Text::new("Plücker coordinates");
    text.field("n", p.n()).field("d", p.d()).field("support", p.support().len());
    if p.d() == 2 {
        let ok = p.satisfies_three_term_relations();
        json["three_term_relations"] = json!(ok);
        text.field("three-term relations", ok);
    }
    text.lines(
        "coordinates",
        p.subsets().iter().zip(p.coeffs()).map(|(s, c)| format!("p_{:<6} {}", s.label(), to_short(c))),
    );
    Ok(Report::ok(json, text))
}

pub fn matroid(input: &Path) -> Result<Report> {
    let m = read_matrix(input)?;
    let mat = Matroid::from_support(&PlueckerVector::from_matrix(&m)?)?;
    let loops = mat.loops();
    let bases: Vec<Subset> = mat.bases().cloned().collect();
    let mut json = json!({
        "command": "matroid",
        "n": mat.n(),
        "rank": mat.rank(),
        "loops": loops,
        "bases": labels(&bases),
    });
    let mut text = Text::new("Matroid");
    text.field("n", mat.n()).field("rank", mat.rank()).field("bases", bases.len());
    text.field("loops", format!("{loops:?}"));
    if loops.is_empty() {
        let bcc = mat.bcc()?;
        json["circuits"] = json!(labels(&bcc.circuits));
        json["broken_circuits"] = json!(labels(&bcc.broken_circuits));
        json["bcc_facets"] = json!(labels(&bcc.facets));
        json["degree"] = json!(bcc.degree());
        text.field("degree", bcc.degree());
        text.lines("circuits", labels(&bcc.circuits));
        text.lines("broken circuits", labels(&bcc.broken_circuits));
        text.lines("BCC facets", labels(&bcc.facets));
    }
    text.lines("bases", labels(&bases));
    Ok(Report::ok(json, text))
}

pub fn chow(input: &Path, vars: Vars, cleared: bool) -> Result<Report> {
    let space = LinearSpace::new(read_matrix(input)?)?;
    let conv = match vars {
        Vars::Gamma => Convention::Gamma,
        Vars::Beta => Convention::Beta,
    };
    let table = v_vectors(space.matroid())?;
    let phi = phi_symbolic(&space, conv)?;
    let det = if cleared { chow_form_cleared(&space, conv)? } else { chow_form(&space, conv)? };
    let vectors: serde_json::Map<String, Value> = table
        .labels
        .iter()
        .zip(&table.vectors)
        .map(|(l, v)| (l.label(), Value::Array(v.iter().map(rational_json).collect())))
        .collect();
    let json = json!({
        "command": "chow",
        "n": space.n(),
        "d": space.d(),
        "k": table.k,
        "convention": match vars { Vars::Gamma => "gamma", Vars::Beta => "beta" },
        "cleared": cleared,
        "facets": labels(&table.facets),
        "vectors": vectors,
        "variables": phi.vars,
        "matrix": phi.entries.iter().map(|r| r.iter().map(poly_json).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "determinant": poly_json(&det),
    });
    let mut text = Text::new("Determinantal representation");
    text.field("n", space.n()).field("d", space.d()).field("k", table.k);
    text.field("facets", labels(&table.facets).join(" "));
    text.lines(
        "vectors",
        table.labels.iter().zip(&table.vectors).map(|(l, v)| {
            format!("v_{:<6} ({})", l.label(), v.iter().map(to_short).collect::<Vec<_>>().join(", "))
        }),
    );
    let cells: Vec<Vec<String>> = phi.entries.iter().map(|r| r.iter().map(|p| p.to_string()).collect()).collect();
    text.grid("matrix", &cells);
    text.lines(if cleared { "cleared determinant" } else { "determinant" }, [det.to_string()]);
    Ok(Report::ok(json, text))
}

pub fn expand(input: Option<&Path>, n: Option<usize>, d: Option<usize>) -> Result<Report> {
    let m = input.map(read_matrix).transpose()?;
    let (n, d) = shape(m.as_ref(), n, d)?;
    let alpha = match &m {
        Some(m) => AlphaSpec::Numeric(PlueckerVector::from_matrix(m)?.coeffs().to_vec()),
        None => AlphaSpec::Symbolic,
    };
    let forests = spanning_forests(n, d)?;
    let poly = forest_expansion(n, d, &alpha)?;
    let json = json!({
        "command": "expand",
        "n": n,
        "d": d,
        "symbolic_alpha": m.is_none(),
        "forests": forests.len(),
        "polynomial": poly_json(&poly),
    });
    let mut text = Text::new("Spanning-forest expansion");
    text.field("n", n).field("d", d).field("forests", forests.len()).field("terms", poly.num_terms());
    text.lines("polynomial", [poly.to_string()]);
    Ok(Report::ok(json, text))
}

pub fn bichow(input: Option<&Path>, input2: Option<&Path>, n: Option<usize>, d: Option<usize>) -> Result<Report> {
    if input.is_none() && input2.is_some() {
        return Err(Error::Precondition("--input2 needs --input".into()));
    }
    let l = input.map(read_matrix).transpose()?;
    let (n, d) = shape(l.as_ref(), n, d)?;
    let form = bichow_form(n, d)?;
    let bideg = form.bidegree()?;
    let mut json = json!({"command": "bichow", "n": n, "d": d, "bidegree": bideg.map(|(a, b)| [a, b])});
    let mut text = Text::new("Bi-Chow form");
    text.field("n", n).field("d", d);
    if let Some((a, b)) = bideg {
        text.field("bidegree", format!("({a}, {b})"));
    }
    let poly = match &l {
        Some(l) => form.specialize_alpha(PlueckerVector::from_matrix(l)?.coeffs())?,
        None => form.poly.clone(),
    };
    json["polynomial"] = poly_json(&poly);
    if let Some(path) = input2 {
        let m = read_matrix(path)?;
        if m.cols() != n || m.rows() + d != n {
            return Err(Error::Dimension(format!("M must be {}x{n}", n - d)));
        }
        let (_, mperp) = orthocomplement(&m)?;
        let value = poly.eval(mperp.coeffs())?;
        json["value"] = rational_json(&value);
        json["vanishes"] = json!(value.is_zero());
        text.field("value", to_short(&value));
    }
    text.field("terms", poly.num_terms());
    text.lines("polynomial", [poly.to_string()]);
    Ok(Report::ok(json, text))
}

pub fn hadamard(
    input: Option<&Path>,
    input2: Option<&Path>,
    n: Option<usize>,
    d: Option<usize>,
    seed: u64,
) -> Result<Report> {
    match (input, input2) {
        (Some(a), Some(b)) => {
            let (l, m) = (read_matrix(a)?, read_matrix(b)?);
            let poly = hadamard_surface(&l, &m)?;
            let (n, d) = (l.cols(), l.rows());
            let mut rng = rng_from_seed(seed);
            let member = membership_check(&poly, &l, &m, MEMBERSHIP_SAMPLES, &mut rng)?;
            if !member {
                return Err(Error::Internal("sampled product point off the Hadamard hypersurface".into()));
            }
            let degree = poly.total_degree().unwrap_or(0);
            let json = json!({
                "command": "hadamard",
                "n": n,
                "d": d,
                "degree": degree,
                "expected_degree": expected_degree(n, d),
                "polynomial": poly_json(&poly),
                "membership": {"seed": seed, "samples": MEMBERSHIP_SAMPLES, "passed": member},
            });
            let mut text = Text::new("Hadamard product hypersurface");
            text.field("n", n).field("d", d).field("degree", degree).field("expected degree", expected_degree(n, d));
            text.field("membership samples", MEMBERSHIP_SAMPLES);
            text.lines("polynomial", [poly.to_string()]);
            Ok(Report::ok(json, text))
        }
        (None, None) => {
            let (n, d) = shape(None, n, d)?;
            let poly = hadamard_symbolic(n, d)?;
            let json = json!({
                "command": "hadamard",
                "n": n,
                "d": d,
                "symbolic": true,
                "polynomial": poly_json(&poly),
            });
            let mut text = Text::new("Hadamard product hypersurface (symbolic)");
            text.field("n", n).field("d", d).field("terms", poly.num_terms());
            text.lines("polynomial", [poly.to_string()]);
            Ok(Report::ok(json, text))
        }
        _ => Err(Error::Precondition("give both --input and --input2, or neither".into())),
    }
}

pub fn entropic(input: &Path, tolerance: f64, force_floating: bool, no_sos: bool) -> Result<Report> {
    if !(tolerance > 0.0 && tolerance.is_finite()) {
        return Err(Error::Precondition(format!("tolerance must be positive, got {tolerance}")));
    }
    let given = read_space(input)?;
    let space = LinearSpace::new(given.matrix()?)?;
    let complement = given.complement.as_ref();
    let (mm, tf, cert) = if no_sos {
        let (mm, tf) = trace_form_disc(&space, complement)?;
        (mm, tf, None)
    } else {
        let opts = SosOptions { tolerance, force_floating, factor: given.factor.clone(), ..SosOptions::default() };
        let (mm, tf, cert) = sos_certificate(&space, complement, &opts)?;
        (mm, tf, Some(cert))
    };
    let vars = &mm.vars;
    let full = mm.frame.full();
    let comp_rows: Vec<usize> = (space.d()..space.n()).collect();
    let traces: Vec<MultiPoly> = mm.mats.iter().map(|m| m.trace(vars)).collect();
    let mut json = json!({
        "command": "entropic",
        "n": space.n(),
        "d": space.d(),
        "k": mm.k,
        "complement": matrix_json(&full.select_rows(&comp_rows)),
        "gram": matrix_json(&mm.gram),
        "traces": traces.iter().map(poly_json).collect::<Vec<_>>(),
        "basis": tf.labels,
        "trace_form": tf.h.iter().map(|r| r.iter().map(poly_json).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "det_raw": poly_json(&tf.det_raw),
        "det_normalized": poly_json(&tf.det_normalized),
    });
    let mut text = Text::new("Entropic discriminant");
    text.field("n", space.n()).field("d", space.d()).field("k", mm.k);
    text.grid("G", &matrix_rows(&mm.gram));
    text.lines(
        "traces",
        traces.iter().enumerate().map(|(i, t)| format!("tr(M{}) = {t}", space.d() + 1 + i)),
    );
    text.field("basis", tf.labels.join(" "));
    let cells: Vec<Vec<String>> = tf.h.iter().map(|r| r.iter().map(|p| p.to_string()).collect()).collect();
    text.grid("H", &cells);
    text.lines("det(H)", [tf.det_raw.to_string()]);
    text.lines("det(H), primitive", [tf.det_normalized.to_string()]);
    if let Some(cert) = cert {
        let mode = match cert.mode {
            SosMode::Exact => "exact",
            SosMode::Floating => "floating",
        };
        let squares: Vec<Value> = match &cert.terms {
            SosTerms::Exact(qs) => qs.iter().map(poly_json).collect(),
            SosTerms::Floating(qs) => qs.iter().map(|q| float_poly_json(q, vars)).collect(),
        };
        json["sos"] = json!({
            "mode": mode,
            "source": format!("{:?}", cert.source).to_lowercase(),
            "factor": cert.factor.as_ref().map(matrix_json),
            "count": cert.terms.len(),
            "residual": cert.residual,
            "squares": squares,
        });
        text.field("certificate", mode);
        text.field("factor source", format!("{:?}", cert.source).to_lowercase());
        text.field("squares", cert.terms.len());
        if cert.mode == SosMode::Floating {
            text.field("residual", format!("{:.3e}", cert.residual));
        }
        if let Some(q) = &cert.factor {
            text.grid("Q", &matrix_rows(q));
        }
    }
    Ok(Report::ok(json, text))
}

pub fn resultant(input: &Path, input2: &Path) -> Result<Report> {
    let (a, c) = (read_matrix(input)?, read_matrix(input2)?);
    let (f, g) = fiber_forms(&a, &c)?;
    let tree = tree_resultant(&a, &c)?;
    let res = sylvester_resultant(&f, &g)?;
    if tree.is_zero() != res.is_zero() {
        return Err(Error::Internal("tree sum and resultant disagree on vanishing".into()));
    }
    let ratio = (!res.is_zero()).then(|| &tree / &res);
    let json = json!({
        "command": "resultant",
        "n": a.cols(),
        "fiber_forms": [
            f.coeffs.iter().map(rational_json).collect::<Vec<_>>(),
            g.coeffs.iter().map(rational_json).collect::<Vec<_>>(),
        ],
        "tree_sum": rational_json(&tree),
        "sylvester_resultant": rational_json(&res),
        "ratio": ratio.as_ref().map(rational_json),
        "vanishes": tree.is_zero(),
    });
    let forms = |b: &recipchow::algebra::BinaryForm| b.coeffs.iter().map(to_short).collect::<Vec<_>>().join(", ");
    let mut text = Text::new("Tree sum and resultant");
    text.field("n", a.cols());
    text.field("f", format!("[{}]", forms(&f))).field("g", format!("[{}]", forms(&g)));
    text.field("tree sum", to_short(&tree)).field("resultant", to_short(&res));
    text.field("ratio", ratio.as_ref().map_or("undefined".to_string(), to_short));
    Ok(Report::ok(json, text))
}

pub fn verify(suite: &str, seed: u64) -> Result<Report> {
    let out = run_suite(suite, seed).ok_or_else(|| {
        Error::Precondition(format!(
            "unknown suite {suite:?}; expected all or one of {}",
            recipchow::verify::SUITES.join(", ")
        ))
    })?;
    let failed = out.iter().filter(|o| !o.passed).count();
    let checks: Vec<Value> = out
        .iter()
        .map(|o| json!({"suite": o.suite, "name": o.name, "passed": o.passed, "detail": o.detail}))
        .collect();
    let json = json!({
        "command": "verify",
        "suite": suite,
        "seed": seed,
        "passed": out.len() - failed,
        "failed": failed,
        "checks": checks,
    });
    let mut text = Text::new("Self-checks");
    text.field("suite", suite).field("seed", seed).field("passed", out.len() - failed).field("failed", failed);
    text.lines(
        "checks",
        out.iter().map(|o| {
            format!("{} {:<10} {} ({})", if o.passed { "PASS" } else { "FAIL" }, o.suite, o.name, o.detail)
        }),
    );
    Ok(Report { json, text: text.finish(), status: if failed == 0 { 0 } else { 2 } })
}
