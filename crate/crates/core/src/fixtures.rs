//! Worked examples with known answers, grouped by topic.

use serde::Serialize;

use crate::betti::{betti_table, inequality_report, regularity, taylor_degree_cap, BettiTable};
use crate::error::{Error, Result};
use crate::field::{PrimeField, Rationals};
use crate::hankel::{
    canonical_decomposition, certify_product, is_chain, sigma_compare, ChainProductSpec,
};
use crate::ideal::MonomialIdeal;
use crate::linforms::{
    associated_prime_check, example_pair_family, primary_components, product_generators,
    product_regularity, product_saturation, verify_decomposition, LinearIdeal,
};
use crate::monomial::{Monomial, VariableSet};
use crate::parse::parse_monomial_ideal;
use crate::polymatroid::{is_polymatroidal, revlex_certificate, transversal_ideal, PolymatroidCheck};
use crate::quotients::{check_order, regularity_from_certificate, search_order, OrderCheck, SearchOutcome};

pub const TOPICS: &[&str] = &["products", "quotients", "linforms", "polymatroid", "hankel", "charp"];

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FixtureResult {
    pub topic: &'static str,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

type Check = fn() -> std::result::Result<String, String>;

const FIXTURES: &[(&str, &str, Check)] = &[
    ("products", "j-betti", j_betti),
    ("products", "bc-j-betti", bc_j_betti),
    ("products", "bc-j-generators", bc_j_generators),
    ("products", "bc-j-inequality", bc_j_inequality),
    ("products", "m-j-inequality", m_j_inequality),
    ("products", "two-linear-ideals", two_linear_ideals),
    ("quotients", "j-colons", j_colons),
    ("quotients", "five-generator-colons", five_generator_colons),
    ("quotients", "square-no-order", square_no_order),
    ("quotients", "square-betti", square_betti),
    ("quotients", "bc-j-no-order", bc_j_no_order),
    ("linforms", "pair-generators", pair_generators),
    ("linforms", "pair-components", pair_components),
    ("linforms", "pair-decomposition", pair_decomposition),
    ("linforms", "pair-saturation", pair_saturation),
    ("linforms", "pair-witnesses", pair_witnesses),
    ("linforms", "pair-irredundant", pair_irredundant),
    ("linforms", "pair-regularity", pair_regularity),
    ("polymatroid", "variable-subsets", variable_subsets),
    ("polymatroid", "j-exchange-failure", j_exchange_failure),
    ("polymatroid", "subset-products", subset_products),
    ("polymatroid", "transversal", transversal),
    ("hankel", "decomposition", hankel_decomposition),
    ("hankel", "chains", hankel_chains),
    ("hankel", "sigma-versus-lex", sigma_versus_lex),
    ("hankel", "certificates", hankel_certificates),
    ("charp", "projective-plane", projective_plane),
];

/// Runs the fixtures whose topic or name equals `only` (all when `None`).
pub fn run_fixtures(only: Option<&str>) -> Result<Vec<FixtureResult>> {
    let selected: Vec<_> = FIXTURES
        .iter()
        .filter(|(topic, name, _)| only.is_none_or(|f| f == *topic || f == *name))
        .collect();
    if selected.is_empty() {
        return Err(Error::Precondition(format!(
            "unknown fixture filter '{}' (topics: {})",
            only.unwrap_or_default(),
            TOPICS.join(", ")
        )));
    }
    Ok(selected
        .into_iter()
        .map(|(topic, name, check)| {
            let (passed, detail) = match check() {
                Ok(d) => (true, d),
                Err(d) => (false, d),
            };
            FixtureResult {
                topic,
                name,
                passed,
                detail,
            }
        })
        .collect())
}

pub fn fixture_names() -> Vec<(&'static str, &'static str)> {
    FIXTURES.iter().map(|(t, n, _)| (*t, *n)).collect()
}

type Outcome = std::result::Result<String, String>;

fn err(e: Error) -> String {
    e.to_string()
}

fn ensure(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn ideal(text: &str) -> std::result::Result<MonomialIdeal, String> {
    parse_monomial_ideal(text).map_err(err)
}

pub fn example_j() -> MonomialIdeal {
    parse_monomial_ideal("ideal(a^2*b, a*b*c, b*c*d, c*d^2)").expect("valid")
}

pub fn example_five_generators() -> MonomialIdeal {
    parse_monomial_ideal("ideal(a^2*b, a^2*c, a*c^2, b*c^2, a*c*d)").expect("valid")
}

fn example_bc_j() -> MonomialIdeal {
    let bc = parse_monomial_ideal("ideal(b, c; vars=4)").expect("valid");
    bc.product(&example_j()).expect("same ambient")
}

/// Stanley–Reisner ideal of the six-vertex triangulation of the real
/// projective plane: the ten triangles that are not faces.
pub fn projective_plane_ideal() -> MonomialIdeal {
    const FACETS: [[usize; 3]; 10] = [
        [0, 1, 3],
        [0, 1, 5],
        [0, 2, 4],
        [0, 2, 5],
        [0, 3, 4],
        [1, 2, 3],
        [1, 2, 4],
        [1, 4, 5],
        [2, 3, 5],
        [3, 4, 5],
    ];
    let mut gens = Vec::new();
    for a in 0..6 {
        for b in a + 1..6 {
            for c in b + 1..6 {
                if !FACETS.contains(&[a, b, c]) {
                    let vars = VariableSet::new(vec![a, b, c], 6).expect("in range");
                    gens.push(Monomial::from_vars(6, &vars));
                }
            }
        }
    }
    MonomialIdeal::new(6, gens).expect("nonempty")
}

fn entries(t: &BettiTable) -> Vec<(usize, u32, usize)> {
    t.ideal_entries().iter().map(|e| (e.i, e.j, e.value)).collect()
}

fn table_check(ideal: &MonomialIdeal, cap: u32, expected: &[(usize, u32, usize)], reg: i64) -> Outcome {
    let t = betti_table(&ideal.to_graded(&Rationals), cap).map_err(err)?;
    let got = entries(&t);
    let r = t.regularity().map_err(err)?;
    ensure(
        got == expected && r.value == reg && t.certified(),
        format!("entries {got:?}, reg {} (certified: {})", r.value, t.certified()),
    )
}

fn j_betti() -> Outcome {
    table_check(&example_j(), 6, &[(0, 3, 4), (1, 4, 3)], 3)
}

fn bc_j_betti() -> Outcome {
    let expected = [(0, 4, 8), (1, 5, 10), (1, 6, 1), (2, 6, 3), (2, 7, 2), (3, 8, 1)];
    table_check(&example_bc_j(), 8, &expected, 5)
}

fn bc_j_generators() -> Outcome {
    let p = example_bc_j();
    ensure(
        p.len() == 8 && p.is_equigenerated() && p.min_degree() == 4,
        format!("{} generators: {}", p.len(), p.to_text()),
    )
}

fn bc_j_inequality() -> Outcome {
    let q = Rationals;
    let bc = ideal("ideal(b, c; vars=4)")?.to_graded(&q);
    let r = inequality_report(&bc, &example_j().to_graded(&q), None).map_err(err)?;
    let regs = (r.reg_i.value, r.reg_j.value, r.reg_product.value);
    ensure(
        regs == (1, 3, 5) && !r.holds,
        format!("reg I = {}, reg J = {}, reg IJ = {}, holds: {}", regs.0, regs.1, regs.2, r.holds),
    )
}

fn m_j_inequality() -> Outcome {
    let q = Rationals;
    let m = MonomialIdeal::maximal(4).to_graded(&q);
    let r = inequality_report(&m, &example_j().to_graded(&q), None).map_err(err)?;
    ensure(
        r.holds && r.reg_product.value <= r.reg_j.value + 1,
        format!("reg mJ = {}, reg J = {}", r.reg_product.value, r.reg_j.value),
    )
}

fn two_linear_ideals() -> Outcome {
    let family = [LinearIdeal::from_integer_rows(3, &[vec![1, 1, 0], vec![0, 1, -1]]).map_err(err)?,
        LinearIdeal::from_integer_rows(3, &[vec![2, 0, 1]]).map_err(err)?];
    let q = Rationals;
    let i = family[0].to_graded(&q).map_err(err)?;
    let j = family[1].to_graded(&q).map_err(err)?;
    let r = inequality_report(&i, &j, None).map_err(err)?;
    ensure(
        r.reg_product.value == 2 && r.holds,
        format!("reg IJ = {}, holds: {}", r.reg_product.value, r.holds),
    )
}

fn colons(ideal: &MonomialIdeal, order: &[&str]) -> std::result::Result<(Vec<String>, u32), String> {
    let n = ideal.n();
    let gens: Vec<Monomial> = order
        .iter()
        .map(|t| parse_monomial_ideal(&format!("ideal({t}; vars={n})")).map(|i| i.gens()[0].clone()))
        .collect::<Result<_>>()
        .map_err(err)?;
    match check_order(&gens).map_err(err)? {
        OrderCheck::Certificate(c) => Ok((c.colon_texts(), regularity_from_certificate(&c))),
        OrderCheck::Failure(f) => Err(format!("step {} fails at {}", f.step + 1, f.offending)),
    }
}

fn j_colons() -> Outcome {
    let (texts, reg) = colons(&example_j(), &["a^2*b", "a*b*c", "b*c*d", "c*d^2"])?;
    ensure(
        texts == ["(0)", "(a)", "(a)", "(b)"] && reg == 3,
        format!("colons {}, reg {reg}", texts.join(" ")),
    )
}

fn five_generator_colons() -> Outcome {
    let order = ["a^2*b", "a^2*c", "a*c^2", "b*c^2", "a*c*d"];
    let (texts, _) = colons(&example_five_generators(), &order)?;
    ensure(
        texts == ["(0)", "(b)", "(a)", "(a)", "(a, c)"],
        format!("colons {}", texts.join(" ")),
    )
}

fn no_order(ideal: &MonomialIdeal) -> Outcome {
    match search_order(ideal.gens()).map_err(err)? {
        SearchOutcome::NoOrder => Ok(format!("no order exists for {} generators", ideal.len())),
        SearchOutcome::Found(c) => Err(format!("found an order: {}", c.colon_texts().join(" "))),
    }
}

fn square_no_order() -> Outcome {
    no_order(&example_five_generators().power(2))
}

fn square_betti() -> Outcome {
    let sq = example_five_generators().power(2);
    let cap = taylor_degree_cap(&sq);
    let t = betti_table(&sq.to_graded(&Rationals), cap).map_err(err)?;
    let got: Vec<_> = entries(&t).into_iter().filter(|e| e.0 <= 1).collect();
    ensure(
        got == [(0, 6, 15), (1, 7, 24), (1, 8, 1)],
        format!("first two columns {got:?} (cap {cap})"),
    )
}

fn bc_j_no_order() -> Outcome {
    no_order(&example_bc_j())
}

fn pair_generators() -> Outcome {
    let q = Rationals;
    let family = example_pair_family(2).map_err(err)?;
    let gens = product_generators(&q, &family).map_err(err)?;
    let expected = ideal("ideal(a*b, a*c, b*c, c^2)")?.to_graded(&q);
    let same = gens.degree_piece(2).dim() == 4
        && gens.degree_piece(2).is_subspace_of(&expected.degree_piece(2))
        && expected.degree_piece(2).is_subspace_of(&gens.degree_piece(2));
    let texts: Vec<String> = gens.gens().iter().map(ToString::to_string).collect();
    ensure(same, format!("generators {}", texts.join(", ")))
}

fn pair_components() -> Outcome {
    let comps = primary_components(&example_pair_family(2).map_err(err)?).map_err(err)?;
    let got: Vec<String> = comps
        .iter()
        .map(|c| format!("{}^{}", c.ideal.forms_text(), c.exponent))
        .collect();
    ensure(got == ["(a, c)^1", "(b, c)^1", "(a, b, c)^2"], got.join(" "))
}

fn pair_decomposition() -> Outcome {
    let r = verify_decomposition(&example_pair_family(2).map_err(err)?, 4).map_err(err)?;
    ensure(
        r.equal && r.containment,
        format!("equal in degrees 0..=4: {} ({})", r.equal, r.certificate),
    )
}

fn pair_saturation() -> Outcome {
    let s = product_saturation(&example_pair_family(2).map_err(err)?, 4).map_err(err)?;
    ensure(
        s.report.sat.is_some_and(|v| v <= 2),
        format!("sat = {:?}, profile {:?}", s.report.sat, s.report.profile),
    )
}

fn pair_witnesses() -> Outcome {
    let cases: [(usize, &[usize], &str); 3] = [(2, &[0], "b"), (3, &[0, 1, 2], "d^2"), (2, &[0, 1], "c")];
    let mut out = Vec::new();
    for (d, subset, witness) in cases {
        let r = associated_prime_check(&example_pair_family(d).map_err(err)?, subset, d as u32 + 1)
            .map_err(err)?;
        if !r.holds || r.witness != witness {
            return Err(format!("d = {d}, A = {subset:?}: witness {}, holds {}", r.witness, r.holds));
        }
        out.push(format!("{} -> {}", r.witness, r.component.forms_text()));
    }
    Ok(out.join("; "))
}

fn pair_irredundant() -> Outcome {
    let mut checked = 0;
    for d in 2..=3usize {
        let family = example_pair_family(d).map_err(err)?;
        for mask in 1u32..1 << d {
            let subset: Vec<usize> = (0..d).filter(|i| mask >> i & 1 == 1).collect();
            let r = associated_prime_check(&family, &subset, d as u32 + 1).map_err(err)?;
            if !r.holds {
                return Err(format!("d = {d}, A = {subset:?} fails"));
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} subsets are associated primes"))
}

fn pair_regularity() -> Outcome {
    let mut out = Vec::new();
    for d in 1..=3usize {
        let r = product_regularity(&example_pair_family(d).map_err(err)?, 2 * d as u32 + 1).map_err(err)?;
        if r.result.value != d as i64 {
            return Err(format!("d = {d}: reg {}", r.result.value));
        }
        out.push(format!("d = {d}: reg {}", r.result.value));
    }
    Ok(out.join(", "))
}

fn variable_subsets() -> Outcome {
    let i = ideal("ideal(a, c, d; vars=5)")?;
    ensure(
        is_polymatroidal(&i).map_err(err)?.holds(),
        format!("{} is polymatroidal", i.to_text()),
    )
}

fn j_exchange_failure() -> Outcome {
    let j = example_j();
    match is_polymatroidal(&j).map_err(err)? {
        PolymatroidCheck::Failure { witness } => ensure(
            witness.u.to_string() == "a^2*b" && witness.v.to_string() == "c*d^2" && witness.i == 1 && witness.verify(&j),
            witness.describe(),
        ),
        other => Err(format!("expected a failure, got {other:?}")),
    }
}

fn subset_products() -> Outcome {
    let (ab, bcd, ad) = (ideal("ideal(a, b; vars=4)")?, ideal("ideal(b, c, d)")?, ideal("ideal(a, d)")?);
    let p = ab.product(&bcd).and_then(|p| p.product(&ad)).map_err(err)?;
    let c = revlex_certificate(&p).map_err(err)?;
    ensure(
        c.verify().is_ok() && regularity_from_certificate(&c) == 3,
        format!("{} generators, revlex order has linear quotients", p.len()),
    )
}

fn transversal() -> Outcome {
    let sets = [
        VariableSet::new(vec![0, 1], 3).map_err(err)?,
        VariableSet::new(vec![1, 2], 3).map_err(err)?,
    ];
    let t = transversal_ideal(3, &sets).map_err(err)?;
    let matroidal = t.is_squarefree() && is_polymatroidal(&t).map_err(err)?.holds();
    ensure(t == ideal("ideal(a*b, a*c, b*c)")? && matroidal, t.to_text())
}

fn hankel_decomposition() -> Outcome {
    let m = ideal("ideal(x1^2*x2^3*x3^2*x5^3*x6*x7*x8^3)")?.gens()[0].clone();
    let dec = canonical_decomposition(&m).map_err(err)?;
    let gammas: Vec<u32> = (1..=5).map(|t| dec.gamma(t)).collect();
    ensure(
        dec.to_string() == "(a*c*e*g)(a*c*e*h)(b*e*h)(b*f*h)(b)"
            && dec.shape() == [4, 4, 3, 3, 1]
            && gammas == [15, 10, 6, 2, 0],
        format!("{dec}, shape {:?}, gamma {gammas:?}", dec.shape()),
    )
}

fn hankel_chains() -> Outcome {
    let m = ideal("ideal(x1*x3*x5*x7)")?.gens()[0].clone();
    ensure(is_chain(&m).map_err(err)?, format!("{m} is a chain"))
}

fn sigma_versus_lex() -> Outcome {
    let x13 = ideal("ideal(a*c)")?.gens()[0].clone();
    let x11 = ideal("ideal(a^2; vars=3)")?.gens()[0].clone();
    let sigma = sigma_compare(&x13, &x11).map_err(err)?;
    let tau = x11.compare_tau(&x13);
    ensure(
        sigma.is_gt() && tau.is_gt(),
        format!("a*c > a^2 in sigma: {}, a^2 > a*c in lex: {}", sigma.is_gt(), tau.is_gt()),
    )
}

fn hankel_certificates() -> Outcome {
    let mut out = Vec::new();
    for (n, t) in [(4usize, vec![2u32]), (5, vec![2, 2])] {
        let spec = ChainProductSpec::new(n, t).map_err(err)?;
        let c = certify_product(&spec).map_err(err)?;
        let reg = regularity_from_certificate(&c);
        if reg != spec.degree() {
            return Err(format!("{spec}: reg {reg}"));
        }
        out.push(format!("{spec}: {} generators, reg {reg}", c.order().len()));
    }
    Ok(out.join("; "))
}

fn projective_plane() -> Outcome {
    let i = projective_plane_ideal();
    let cap = taylor_degree_cap(&i);
    let reg0 = regularity(&i.to_graded(&Rationals), cap).map_err(err)?;
    let reg2 = regularity(&i.to_graded(&PrimeField::new(2).map_err(err)?), cap).map_err(err)?;
    let none = matches!(search_order(i.gens()).map_err(err)?, SearchOutcome::NoOrder);
    ensure(
        reg0.value < reg2.value && reg0.certified && reg2.certified && none,
        format!(
            "reg over QQ = {}, over GF(2) = {}, linear quotients: {}",
            reg0.value,
            reg2.value,
            if none { "none" } else { "found" }
        ),
    )
}
