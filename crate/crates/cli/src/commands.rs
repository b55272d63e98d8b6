use std::fmt::Write as _;

use serde_json::json;

use prodreg::betti::{betti_table, default_cap, inequality_report, taylor_degree_cap};
use prodreg::fixtures::run_fixtures;
use prodreg::hankel::{canonical_decomposition, certify_product, omega, ChainProductSpec};
use prodreg::linforms::{
    associated_prime_check, is_linearly_general, primary_components, product_checks,
    product_regularity, product_saturation, random_family, reduced_components,
    verify_decomposition, LinearIdeal,
};
use prodreg::monomial::variable_index;
use prodreg::parse::{parse_family, parse_generator_list, parse_input, parse_monomial_ideal, ParsedInput};
use prodreg::polymatroid::{
    is_polymatroidal, polymatroidal_product, revlex_certificate, squarefree_product,
    transversal_ideal, PolymatroidCheck,
};
use prodreg::quotients::{
    check_order, monomial_colon, regularity_from_certificate, search_order_with_guard, OrderCheck,
    SearchOutcome,
};
use prodreg::{Characteristic, Field, GradedIdeal, PrimeField, Rationals, VariableSet};

use crate::report::{Failure, Report};
use crate::{
    ChainArgs, Cli, Command, FamilySource, Global, HankelCommand, LinformsCommand,
    PolymatroidCommand, QuotientsCommand, Source,
};

type Outcome = Result<Report, Failure>;

/// Runs `$body` with `$field` bound to the field of characteristic `$ch`.
macro_rules! with_field {
    ($ch:expr, $field:ident => $body:expr) => {
        match $ch {
            Characteristic::Zero => {
                let $field = Rationals;
                $body
            }
            Characteristic::Prime(p) => {
                let $field = PrimeField::new(p)?;
                $body
            }
        }
    };
}

pub fn run(cli: &Cli) -> Outcome {
    let g = &cli.global;
    let ch = Characteristic::from_u64(g.characteristic)?;
    if g.cap == Some(0) {
        return Err(Failure("--cap must be at least 1".into()));
    }
    match &cli.command {
        Command::Betti(s) => with_field!(ch, f => betti(&f, &read(s)?, g)),
        Command::Reg(s) => with_field!(ch, f => reg(&f, &read(s)?, g)),
        Command::Sat(s) => with_field!(ch, f => sat(&f, &read(s)?, g)),
        Command::Colon { source, by } => colon(&read(source)?, by),
        Command::Inequality { source, other } => {
            with_field!(ch, f => inequality(&f, &read(source)?, other, g))
        }
        Command::Quotients(q) => quotients(q),
        Command::Polymatroid(p) => polymatroid(p),
        Command::Linforms(l) => {
            if ch != Characteristic::Zero {
                return Err(Failure(
                    "linear-form products are computed over the rationals only; drop --char".into(),
                ));
            }
            linforms(l, g)
        }
        Command::Hankel(h) => hankel(h),
        Command::Fixtures { only } => fixtures(only.as_deref()),
    }
}

fn read(source: &Source) -> Result<String, Failure> {
    match (&source.ideal, &source.file) {
        (Some(text), _) => Ok(text.clone()),
        (None, Some(path)) => std::fs::read_to_string(path)
            .map_err(|e| Failure(format!("cannot read {}: {e}", path.display()))),
        (None, None) => Err(Failure("an input is required: --ideal <TEXT> or --file <PATH>".into())),
    }
}

fn graded<F: Field>(field: &F, text: &str) -> Result<GradedIdeal<F>, Failure> {
    graded_in(field, parse_input(text)?, 0)
}

/// The parsed ideal over `field`, in at least `n` variables.
fn graded_in<F: Field>(field: &F, parsed: ParsedInput, n: usize) -> Result<GradedIdeal<F>, Failure> {
    match parsed {
        ParsedInput::Monomial(i) => Ok(i.extend(n.max(i.n()))?.to_graded(field)),
        ParsedInput::Polynomial(p) => Ok(p.extend(n.max(p.n()))?.to_graded(field)?),
        ParsedInput::LinearForms(_) => Err(Failure(
            "expected ideal(...); for linear-form families use the linforms commands".into(),
        )),
    }
}

fn ambient(parsed: &ParsedInput) -> usize {
    match parsed {
        ParsedInput::Monomial(i) => i.n(),
        ParsedInput::Polynomial(p) => p.n(),
        ParsedInput::LinearForms(f) => f.first().map_or(0, LinearIdeal::n),
    }
}

fn describe<F: Field>(field: &F, ideal: &GradedIdeal<F>) -> String {
    let kind = if ideal.as_monomial().is_some() { "monomial" } else { "polynomial" };
    let ch = match field.characteristic() {
        0 => "QQ".to_string(),
        p => format!("GF({p})"),
    };
    let k = ideal.gens().len();
    let plural = if k == 1 { "" } else { "s" };
    format!("{kind} ideal with {k} generator{plural} in {} variables over {ch}", ideal.n())
}

/// The Taylor bound for monomial ideals, where it certifies the result.
fn cap_for<F: Field>(ideal: &GradedIdeal<F>, g: &Global) -> u32 {
    g.cap.unwrap_or_else(|| match ideal.as_monomial() {
        Some(m) => taylor_degree_cap(m).max(1),
        None => default_cap(ideal),
    })
}

fn certification<F: Field>(ideal: &GradedIdeal<F>, cap: u32, certified: bool) -> String {
    match ideal.as_monomial() {
        Some(m) if certified => format!("certified (cap {cap} >= Taylor bound {})", taylor_degree_cap(m)),
        Some(m) => format!("within cap {cap} (not certified; Taylor bound {})", taylor_degree_cap(m)),
        None => format!("within cap {cap} (not certified)"),
    }
}

fn betti<F: Field>(field: &F, text: &str, g: &Global) -> Outcome {
    let ideal = graded(field, text)?;
    let cap = cap_for(&ideal, g);
    let table = betti_table(&ideal, cap)?;
    let r = table.regularity()?;
    let mut out = format!("{}\nBetti numbers of R/I in degrees <= {cap}:\n", describe(field, &ideal));
    out.push_str(&table.render());
    let _ = writeln!(out, "reg(I) = {}", r.value);
    let _ = writeln!(out, "{}", certification(&ideal, cap, table.certified()));
    Ok(Report::new("betti", out, json!({ "table": table, "regularity": r }), true))
}

fn reg<F: Field>(field: &F, text: &str, g: &Global) -> Outcome {
    let ideal = graded(field, text)?;
    let cap = cap_for(&ideal, g);
    let r = betti_table(&ideal, cap)?.regularity()?;
    let out = format!(
        "{}\nreg(I) = {}\n{}\n",
        describe(field, &ideal),
        r.value,
        certification(&ideal, cap, r.certified)
    );
    Ok(Report::new("reg", out, json!(r), true))
}

fn sat<F: Field>(field: &F, text: &str, g: &Global) -> Outcome {
    let ideal = graded(field, text)?;
    let cap = cap_for(&ideal, g);
    let report = ideal.saturation(cap);
    let mut out = format!("{}\n", describe(field, &ideal));
    let _ = writeln!(out, "dim (I^sat / I)_e for e = 0..{cap}: {:?}", report.profile);
    let verdict = match report.sat {
        Some(s) => {
            let _ = writeln!(out, "sat(I) = {s}");
            true
        }
        None => {
            let _ = writeln!(out, "sat(I) > {cap}: I^sat and I still differ in degree {cap}");
            false
        }
    };
    Ok(Report::new("sat", out, json!(report), verdict))
}

fn colon(text: &str, by: &str) -> Outcome {
    let ideal = parse_monomial_ideal(text)?;
    let u = monomial(by, ideal.n())?;
    let gens = monomial_colon(ideal.gens(), &u)?;
    let names: Vec<String> = gens.iter().map(ToString::to_string).collect();
    let body = if names.iter().any(|g| g == "1") { "(1)".to_string() } else { format!("({})", names.join(", ")) };
    let out = format!("{} : {u} = {body}\n", ideal.to_text());
    Ok(Report::new("colon", out, json!({ "ideal": ideal.to_text(), "by": u.to_string(), "generators": names }), true))
}

/// A single monomial, read in `n` variables.
fn monomial(text: &str, n: usize) -> Result<prodreg::Monomial, Failure> {
    let parsed = parse_monomial_ideal(&format!("ideal({text})"))?;
    if parsed.len() != 1 {
        return Err(Failure(format!("'{text}' is not a single monomial")));
    }
    if parsed.n() > n {
        return Err(Failure(format!("'{text}' uses variables beyond the {n} of the ideal")));
    }
    Ok(parsed.gens()[0].extend(n))
}

fn inequality<F: Field>(field: &F, text: &str, other: &str, g: &Global) -> Outcome {
    let (i, j) = (parse_input(text)?, parse_input(other)?);
    let n = ambient(&i).max(ambient(&j));
    let (i, j) = (graded_in(field, i, n)?, graded_in(field, j, n)?);
    let r = inequality_report(&i, &j, g.cap)?;
    let out = format!(
        "reg(I) = {}\nreg(J) = {}\nreg(IJ) = {}\nreg(IJ) <= reg(I) + reg(J): {}\n",
        r.reg_i.value,
        r.reg_j.value,
        r.reg_product.value,
        if r.holds { "holds" } else { "fails" }
    );
    Ok(Report::new("inequality", out, json!(r), r.holds))
}

fn quotients(cmd: &QuotientsCommand) -> Outcome {
    match cmd {
        QuotientsCommand::Check(source) => {
            let gens = parse_generator_list(&read(source)?)?;
            match check_order(&gens)? {
                OrderCheck::Certificate(c) => {
                    let out = format!("{}reg(I) = {}\n", c.to_text(), regularity_from_certificate(&c));
                    Ok(Report::new("quotients check", out, json!({ "certificate": c }), true))
                }
                OrderCheck::Failure(f) => {
                    let out = format!(
                        "not linear quotients: at step {} ({}) the colon ({}) has generator {} of degree >= 2\n",
                        f.step + 1,
                        f.generator,
                        f.colon.join(", "),
                        f.offending
                    );
                    Ok(Report::new("quotients check", out, json!({ "failure": f }), false))
                }
            }
        }
        QuotientsCommand::Search { source, guard } => {
            let ideal = parse_monomial_ideal(&read(source)?)?;
            match search_order_with_guard(ideal.gens(), *guard)? {
                SearchOutcome::Found(c) => {
                    let out = format!("{}reg(I) = {}\n", c.to_text(), regularity_from_certificate(&c));
                    Ok(Report::new("quotients search", out, json!({ "certificate": c }), true))
                }
                SearchOutcome::NoOrder => {
                    let out = format!("no order exists: none of the orders of the {} generators has linear quotients\n", ideal.len());
                    Ok(Report::new("quotients search", out, json!({ "certificate": null }), false))
                }
            }
        }
    }
}

fn check_text(check: &PolymatroidCheck) -> String {
    match check.reason() {
        None => "polymatroidal".to_string(),
        Some(r) => format!("not polymatroidal: {r}"),
    }
}

fn polymatroid(cmd: &PolymatroidCommand) -> Outcome {
    match cmd {
        PolymatroidCommand::Check(source) => {
            let ideal = parse_monomial_ideal(&read(source)?)?;
            let check = is_polymatroidal(&ideal)?;
            let mut out = format!("{}\n{}\n", ideal.to_text(), check_text(&check));
            if check.holds() {
                let c = revlex_certificate(&ideal)?;
                let _ = writeln!(out, "revlex order has linear quotients: {}", c.colon_texts().join(" "));
            }
            Ok(Report::new("polymatroid check", out, json!(check), check.holds()))
        }
        PolymatroidCommand::Product { source, other, squarefree } => {
            let i = parse_monomial_ideal(&read(source)?)?;
            let j = parse_monomial_ideal(other)?;
            let n = i.n().max(j.n());
            let (i, j) = (i.extend(n)?, j.extend(n)?);
            let product = if *squarefree { squarefree_product(&i, &j)? } else { polymatroidal_product(&i, &j)? };
            let c = revlex_certificate(&product)?;
            let out = format!(
                "{} = {}\n{} generators, polymatroidal{}\nrevlex order has linear quotients, reg = {}\n",
                if *squarefree { "I * J (squarefree)" } else { "IJ" },
                product.to_text(),
                product.len(),
                if *squarefree { " and squarefree (matroidal)" } else { "" },
                regularity_from_certificate(&c)
            );
            let data = json!({ "product": product.to_text(), "certificate": c });
            Ok(Report::new("polymatroid product", out, data, true))
        }
        PolymatroidCommand::Transversal { sets, vars } => {
            let parsed = parse_sets(sets)?;
            let used = parsed.iter().flatten().map(|&i| i + 1).max().unwrap_or(0);
            let n = vars.unwrap_or(used);
            if n < used {
                return Err(Failure(format!("--vars {n} is smaller than the variables used")));
            }
            let sets: Vec<VariableSet> = parsed
                .into_iter()
                .map(|s| VariableSet::new(s, n))
                .collect::<prodreg::Result<_>>()?;
            let t = transversal_ideal(n, &sets)?;
            let out = format!("{}\n{} bases, matroidal\n", t.to_text(), t.len());
            Ok(Report::new("polymatroid transversal", out, json!({ "ideal": t.to_text(), "bases": t.len() }), true))
        }
    }
}

fn parse_sets(text: &str) -> Result<Vec<Vec<usize>>, Failure> {
    text.split(';')
        .map(|set| {
            set.split(',')
                .map(str::trim)
                .filter(|v| !v.is_empty())
                .map(|v| variable_index(v).ok_or_else(|| Failure(format!("unknown variable '{v}'"))))
                .collect::<Result<Vec<_>, _>>()
                .and_then(|s| if s.is_empty() { Err(Failure("empty set".into())) } else { Ok(s) })
        })
        .collect()
}

fn family(source: &FamilySource, g: &Global) -> Result<(Vec<LinearIdeal>, Option<u64>), Failure> {
    match &source.random {
        Some(spec) => {
            let parts: Vec<usize> = spec
                .split(',')
                .map(|p| p.trim().parse::<usize>())
                .collect::<Result<_, _>>()
                .map_err(|_| Failure(format!("--random expects N,D, got '{spec}'")))?;
            let [n, d] = parts[..] else {
                return Err(Failure(format!("--random expects N,D, got '{spec}'")));
            };
            let seed = g.seed.unwrap_or(0);
            Ok((random_family(n, d, seed)?, Some(seed)))
        }
        None => Ok((parse_family(&read(&source.source)?)?, None)),
    }
}

fn family_header(family: &[LinearIdeal]) -> String {
    let mut out = format!("{} ideals in {} variables:\n", family.len(), family[0].n());
    for (k, v) in family.iter().enumerate() {
        let _ = writeln!(out, "  I{} = {}", k + 1, v.forms_text());
    }
    out
}

fn subset_text(subset: &[usize]) -> String {
    let s: Vec<String> = subset.iter().map(|i| (i + 1).to_string()).collect();
    format!("{{{}}}", s.join(","))
}

fn linforms(cmd: &LinformsCommand, g: &Global) -> Outcome {
    let source = match cmd {
        LinformsCommand::Decompose(s)
        | LinformsCommand::Verify(s)
        | LinformsCommand::General(s)
        | LinformsCommand::Sat(s)
        | LinformsCommand::Reg(s)
        | LinformsCommand::Check(s) => s,
        LinformsCommand::Assoc { family, .. } => family,
    };
    let (fam, seed) = family(source, g)?;
    let d = fam.len() as u32;
    let n = fam[0].n() as u32;
    let mut out = family_header(&fam);
    let mut report = match cmd {
        LinformsCommand::Decompose(_) => {
            let comps = primary_components(&fam)?;
            let _ = writeln!(out, "I1...I{d} = intersection of I_A^|A| over nonempty A:");
            for c in &comps {
                let _ = writeln!(out, "  A = {:<12} {}^{}", subset_text(&c.subset), c.ideal.forms_text(), c.exponent);
            }
            let general = is_linearly_general(&fam)?;
            let reduced = if general { reduced_components(&fam).ok() } else { None };
            match &reduced {
                Some(r) => {
                    let _ = writeln!(out, "linearly general: the {} singletons and m^{d} suffice", r.len() - 1);
                }
                None => {
                    let _ = writeln!(out, "linearly general: {general}");
                }
            }
            Report::new("linforms decompose", out, json!({ "components": comps, "linearly_general": general, "reduced": reduced }), true)
        }
        LinformsCommand::Verify(_) => {
            let cap = g.cap.unwrap_or(d + 3);
            let r = verify_decomposition(&fam, cap)?;
            let _ = writeln!(out, "degree  dim product  dim intersection");
            for c in &r.comparisons {
                let _ = writeln!(out, "{:>6}  {:>11}  {:>16}", c.degree, c.product, c.intersection);
            }
            let _ = writeln!(
                out,
                "product {} the intersection in degrees <= {cap} ({})",
                if r.equal { "equals" } else { "differs from" },
                r.certificate
            );
            let equal = r.equal;
            Report::new("linforms verify", out, json!(r), equal)
        }
        LinformsCommand::General(_) => {
            let general = is_linearly_general(&fam)?;
            let _ = writeln!(out, "linearly general: {general}");
            Report::new("linforms general", out, json!({ "linearly_general": general }), general)
        }
        LinformsCommand::Sat(_) => {
            let cap = g.cap.unwrap_or(d + 3);
            let s = product_saturation(&fam, cap)?;
            let _ = writeln!(out, "dim (J^sat / J)_e for e = 0..{cap}: {:?}", s.report.profile);
            let ok = s.report.sat.is_some_and(|v| v <= d);
            match s.report.sat {
                Some(v) => {
                    let _ = writeln!(out, "sat(J) = {v} ({}), sat(J) <= {d}: {ok}", s.certificate);
                }
                None => {
                    let _ = writeln!(out, "sat(J) > {cap}");
                }
            }
            Report::new("linforms sat", out, json!(s), ok)
        }
        LinformsCommand::Reg(_) => {
            let cap = g.cap.unwrap_or(d + n);
            let r = product_regularity(&fam, cap)?;
            let ok = r.result.value == d as i64;
            let _ = writeln!(out, "reg(J) = {} within cap {cap} ({}); reg(J) = {d}: {ok}", r.result.value, r.certificate);
            Report::new("linforms reg", out, json!(r), ok)
        }
        LinformsCommand::Check(_) => {
            let cap = g.cap;
            let checks = product_checks(&fam, cap.unwrap_or(d + 3), cap.unwrap_or(d + 3), cap.unwrap_or(d + n))?;
            let eq = checks.decomposition.equal;
            let sat_ok = checks.saturation.report.sat.is_some_and(|v| v <= d);
            let reg_ok = checks.regularity.result.value == d as i64;
            let _ = writeln!(out, "product = intersection of components: {eq}");
            let _ = writeln!(out, "sat(J) = {:?} <= {d}: {sat_ok}", checks.saturation.report.sat);
            let _ = writeln!(out, "reg(J) = {} = {d}: {reg_ok}", checks.regularity.result.value);
            Report::new("linforms check", out, json!(checks), eq && sat_ok && reg_ok)
        }
        LinformsCommand::Assoc { subset, .. } => {
            let subset: Vec<usize> = subset
                .split(',')
                .map(|s| s.trim().parse::<usize>())
                .collect::<Result<_, _>>()
                .map_err(|_| Failure(format!("--subset expects positions like 1,3, got '{subset}'")))?;
            if subset.iter().any(|&i| i == 0 || i > fam.len()) {
                return Err(Failure(format!("--subset positions must lie in 1..={}", fam.len())));
            }
            let zero_based: Vec<usize> = subset.iter().map(|i| i - 1).collect();
            let cap = g.cap.unwrap_or(d + 1);
            let r = associated_prime_check(&fam, &zero_based, cap)?;
            let _ = writeln!(
                out,
                "J : {} {} I_A = {} in degrees <= {cap}",
                r.witness,
                if r.holds { "=" } else { "!=" },
                r.component.forms_text()
            );
            let holds = r.holds;
            Report::new("linforms assoc", out, json!(r), holds)
        }
    };
    report.seed = seed;
    Ok(report)
}

fn spec(args: &ChainArgs) -> Result<ChainProductSpec, Failure> {
    let t: Vec<u32> = args
        .t
        .split(',')
        .map(|s| s.trim().parse::<u32>())
        .collect::<Result<_, _>>()
        .map_err(|_| Failure(format!("--t expects sizes like 2,2, got '{}'", args.t)))?;
    Ok(ChainProductSpec::new(args.n, t)?)
}

fn hankel(cmd: &HankelCommand) -> Outcome {
    match cmd {
        HankelCommand::Omega(args) => {
            let spec = spec(args)?;
            let o = omega(&spec)?;
            let mut out = format!("{spec}: {} generators (sigma-descending), equal to the product generators\n", o.len());
            for m in o.members() {
                let _ = writeln!(out, "  {m}");
            }
            let members: Vec<String> = o.members().iter().map(ToString::to_string).collect();
            Ok(Report::new("hankel omega", out, json!({ "spec": spec, "members": members }), true))
        }
        HankelCommand::Decompose { monomial } => {
            let m = parse_monomial_ideal(&format!("ideal({monomial})"))?;
            if m.len() != 1 {
                return Err(Failure(format!("'{monomial}' is not a single monomial")));
            }
            let dec = canonical_decomposition(&m.gens()[0])?;
            let shape = dec.shape();
            let top = shape.first().copied().unwrap_or(0);
            let gammas: Vec<u32> = (1..=top + 1).map(|t| dec.gamma(t)).collect();
            let out = format!("{} = {dec}\nshape {:?}\ngamma_1.. = {:?}\n", m.gens()[0], shape, gammas);
            let chains: Vec<String> = dec.chains().iter().map(ToString::to_string).collect();
            Ok(Report::new("hankel decompose", out, json!({ "chains": chains, "shape": shape, "gamma": gammas }), true))
        }
        HankelCommand::Certify(args) => {
            let spec = spec(args)?;
            let c = certify_product(&spec)?;
            let reg = regularity_from_certificate(&c);
            let out = format!(
                "{spec}: {} generators have linear quotients in sigma-descending order\nreg = {reg} (linear resolution)\n",
                c.order().len()
            );
            Ok(Report::new("hankel certify", out, json!({ "spec": spec, "regularity": reg, "certificate": c }), true))
        }
    }
}

fn fixtures(only: Option<&str>) -> Outcome {
    let results = run_fixtures(only)?;
    let width = results.iter().map(|r| r.topic.len() + r.name.len() + 1).max().unwrap_or(0);
    let mut out = String::new();
    for r in &results {
        let id = format!("{}/{}", r.topic, r.name);
        let _ = writeln!(out, "{} {id:<width$}  {}", if r.passed { "PASS" } else { "FAIL" }, r.detail);
    }
    let failed = results.iter().filter(|r| !r.passed).count();
    let _ = writeln!(out, "{} passed, {failed} failed", results.len() - failed);
    Ok(Report::new("fixtures", out, json!(results), failed == 0))
}
