//! One line per acceptance criterion, then a single assertion that all hold.

mod common;

use lagrange3_core::report::{run_all, Config, Status, VerificationReport};

struct Criterion {
    number: u8,
    title: &'static str,
    holds: bool,
    detail: String,
}

fn entries_hold(r: &VerificationReport, ids: &[&str], allowed: &[Status]) -> (bool, String) {
    let mut missing = Vec::new();
    for id in ids {
        match r.entry(id) {
            Some(e) if allowed.contains(&e.status) => {}
            Some(e) => missing.push(format!("{id} is {}", e.status)),
            None => missing.push(format!("{id} missing")),
        }
    }
    if missing.is_empty() {
        (true, format!("{} entries", ids.len()))
    } else {
        (false, missing.join("; "))
    }
}

fn from_report(r: &VerificationReport, number: u8, title: &'static str, pass: &[&str], notes: &[&str]) -> Criterion {
    let (p, pd) = entries_hold(r, pass, &[Status::Pass]);
    let (n, nd) = entries_hold(r, notes, &[Status::AuditNote]);
    let detail = if notes.is_empty() { pd } else { format!("{pd}, audit-notes: {nd}") };
    Criterion { number, title, holds: p && n, detail }
}

fn property_suites() -> Criterion {
    let checks: [(&str, common::Check); 10] = [
        ("A commutative/associative", common::frobenius_algebra(101, 200)),
        ("comultiply adjoint", common::comultiply_adjoint()),
        ("pullback adjoint", common::pullback_adjoint(102, 100)),
        ("associativity", common::ring_associativity(103, 100)),
        ("commutativity", common::ring_commutativity(104, 100)),
        ("equivariance", common::ring_equivariance(105, 100)),
        ("curve group laws", common::curve_group_laws(106, 50)),
        ("doubling formula", common::doubling_formula(107, 40)),
        ("reduction", common::reduction_homomorphism(108, 25)),
        ("p-adic vs search", common::padic_oracle(109, 40)),
    ];
    let mut parts = Vec::new();
    let mut holds = true;
    for (name, res) in checks {
        match res {
            Ok(n) => parts.push(format!("{name} {n}")),
            Err(e) => {
                holds = false;
                parts.push(format!("{name} FAILED ({e})"));
            }
        }
    }
    Criterion { number: 10, title: "property suites", holds, detail: parts.join(", ") }
}

#[test]
fn acceptance() {
    let r = run_all(&Config::default()).expect("report runs");
    let products: Vec<String> = (1..=11).map(|k| format!("ring.product_{k}")).collect();
    let products: Vec<&str> = products.iter().map(String::as_str).collect();
    let criteria = vec![
        from_report(&r, 1, "ring product table", &products, &[]),
        from_report(&r, 2, "delta^6 and Fujiki relation", &["ring.delta_sixth", "ring.fujiki_random"], &[]),
        from_report(&r, 3, "eta^2 = -1329 two ways", &["hodge.eta_squared_ring", "hodge.eta_squared_gram"], &[]),
        from_report(&r, 4, "Riemann-Roch constants", &["fujiki.constants", "fujiki.egl_relation", "fujiki.constant_term"], &[]),
        from_report(
            &r,
            5,
            "elimination and back-substitution",
            &["eliminate.elliptic_model", "eliminate.a_b", "eliminate.line_square", "eliminate.rho_square", "eliminate.rho_coefficients"],
            &["eliminate.eta_squared_variant"],
        ),
        from_report(
            &r,
            6,
            "elliptic curve facts",
            &["curve.generator_on_curve", "curve.discriminant", "curve.count_f3", "curve.count_f19", "curve.torsion", "curve.x_p_plus_q"],
            &[],
        ),
        from_report(
            &r,
            7,
            "descent",
            &[
                "descent.survivors_c",
                "descent.local_c_prime",
                "descent.mordell_weil_mod_2",
                "descent.ladder_11",
                "descent.ladder_443",
                "descent.ladder_4873",
                "descent.odd_saturation",
            ],
            &[],
        ),
        from_report(
            &r,
            8,
            "integral points",
            &[
                "integral.e_p",
                "integral.e_p_plus_q",
                "integral.e_2p_plus_q",
                "integral.alpha_4p_mod_7",
                "integral.good_reduction_4p",
                "integral.x_2p_mod_32",
                "integral.v2_x_4p",
                "integral.bounded_scan",
            ],
            &[],
        ),
        from_report(
            &r,
            9,
            "enumerative",
            &[
                "enumerative.q_1",
                "enumerative.q_2",
                "enumerative.q_3",
                "enumerative.cokernels",
                "enumerative.weyl_odd",
                "enumerative.weyl_even",
                "enumerative.branch_1",
                "enumerative.branch_2",
                "enumerative.branch_3",
                "enumerative.h4_h6_values",
            ],
            &[],
        ),
        property_suites(),
    ];
    for c in &criteria {
        println!("criterion {:>2} {}: {} ({})", c.number, if c.holds { "PASS" } else { "FAIL" }, c.title, c.detail);
    }
    let failed: Vec<u8> = criteria.iter().filter(|c| !c.holds).map(|c| c.number).collect();
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}
