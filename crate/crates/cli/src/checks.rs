//! Orchestration of the verification suites. Engine failures are folded
//! into failing records; this layer never panics on bad mathematics.

use serde_json::{json, Value};

use udist_core::anderson::{build_l, first_filtration_e1, split_differential, verify_acyclicity};
use udist_core::cohomology::{
    cohomology_z_closed_form, cohomology_z_snf, cup_closed_form, cup_via_diagonal,
    evaluation_structure, explicit_prime_cocycle, lift_cocycle, verify_mod_m_counts,
    verify_quasi_iso, verify_slice_degeneration, verify_theorem_a,
};
use udist_core::distribution::{
    basis, level_inclusion_matrix, verify_theorem_b, xg_basis_matrix, BasisVariant, OrderIdeal,
};
use udist_core::exactlin::smith_normal_form;
use udist_core::galois::{MultiIndex, PrimeConfig};
use udist_core::EngineError;

use crate::config::{CheckKind, ConfigError, RunConfig};
use crate::report::{CheckRecord, Report};

pub fn run_checks(cfg: &RunConfig) -> Result<Report, ConfigError> {
    let pc = cfg.prime_config()?;
    let ideal = cfg.order_ideal()?;
    let mut records = Vec::new();
    for check in cfg.effective_checks() {
        match run_one(&check, &pc, ideal.as_ref(), cfg) {
            Ok(mut rs) => records.append(&mut rs),
            Err(e) => records.push(CheckRecord {
                name: format!("{}/error", check.name()),
                inputs: json!({ "primes": cfg.primes, "modulus": cfg.modulus }),
                computed: json!(e.to_string()),
                expected: json!("no engine error"),
                provenance: "engine".into(),
                pass: false,
            }),
        }
    }
    Ok(Report::new(cfg, records))
}

fn run_one(
    check: &CheckKind,
    pc: &PrimeConfig,
    ideal: Option<&OrderIdeal>,
    cfg: &RunConfig,
) -> Result<Vec<CheckRecord>, EngineError> {
    match check {
        CheckKind::Anderson => anderson_records(pc, ideal),
        CheckKind::TheoremA => theorem_a_records(pc, ideal, cfg.n_max),
        CheckKind::TheoremB => theorem_b_records(pc, cfg.modulus),
        CheckKind::Cup => cup_records(pc, cfg.modulus),
        CheckKind::QuasiIso => quasi_iso_records(pc, cfg.modulus, cfg.n_max),
        CheckKind::Lift => lift_records(pc, cfg.modulus),
        CheckKind::Appendix => appendix_records(pc),
        CheckKind::All => unreachable!("expanded by effective_checks"),
    }
}

fn base_inputs(pc: &PrimeConfig) -> Value {
    json!({ "primes": pc.primes(), "modulus": pc.modulus() })
}

fn homology_table(rows: &[(i64, udist_core::exactlin::CohomologyGroup)]) -> Value {
    Value::Array(
        rows.iter()
            .map(|(n, h)| json!({ "degree": n, "group": h.to_string() }))
            .collect(),
    )
}

fn anderson_records(
    pc: &PrimeConfig,
    ideal: Option<&OrderIdeal>,
) -> Result<Vec<CheckRecord>, EngineError> {
    let mut out = Vec::new();
    let full = OrderIdeal::full(pc.s());
    let mut targets = vec![("full", full)];
    if let Some(i) = ideal {
        targets.push(("ideal", i.clone()));
    }
    for (tag, target) in targets {
        let l = build_l(pc, &target)?;
        let split_ok = split_differential(&l).is_ok();
        out.push(CheckRecord {
            name: format!("anderson/split-identities/{tag}"),
            inputs: base_inputs(pc),
            computed: json!(if split_ok {
                "d = d1 + d2, squares and anticommutator vanish"
            } else {
                "mismatch"
            }),
            expected: json!("d = d1 + d2, squares and anticommutator vanish"),
            provenance: "exact matrix identities".into(),
            pass: split_ok,
        });
        let acyc = verify_acyclicity(&l)?;
        out.push(CheckRecord {
            name: format!("anderson/acyclicity/{tag}"),
            inputs: base_inputs(pc),
            computed: homology_table(&acyc.homology),
            expected: json!({
                "degree 0": format!("Z^{}", acyc.expected_rank),
                "elsewhere": "0"
            }),
            provenance: "normal-form homology vs basis count".into(),
            pass: acyc.pass,
        });
        let rows = first_filtration_e1(&l)?;
        out.push(CheckRecord {
            name: format!("anderson/first-filtration/{tag}"),
            inputs: base_inputs(pc),
            computed: Value::Array(
                rows.iter()
                    .map(|r| {
                        json!({
                            "p2": r.p2,
                            "rank": r.expected_rank,
                            "concentrated": r.pass
                        })
                    })
                    .collect(),
            ),
            expected: json!("row homology concentrated on the antidiagonal with filtration ranks"),
            provenance: "row homology vs support-count differences".into(),
            pass: rows.iter().all(|r| r.pass),
        });
    }
    Ok(out)
}

fn theorem_a_records(
    pc: &PrimeConfig,
    ideal: Option<&OrderIdeal>,
    n_max: u64,
) -> Result<Vec<CheckRecord>, EngineError> {
    let mut out = Vec::new();
    let closed = cohomology_z_closed_form(pc, pc.full_mask(), n_max);
    let snf = cohomology_z_snf(pc, pc.full_mask(), n_max)?;
    let agree = closed == snf;
    out.push(CheckRecord {
        name: "theorem-a/z-coefficients".into(),
        inputs: base_inputs(pc),
        computed: Value::Array(snf.iter().map(|h| json!(h.to_string())).collect()),
        expected: Value::Array(closed.iter().map(|h| json!(h.to_string())).collect()),
        provenance: "normal form vs closed form".into(),
        pass: agree,
    });
    let mut targets = vec![("full", None)];
    if ideal.is_some() {
        targets.push(("ideal", ideal));
    }
    for (tag, target) in targets {
        let report = verify_theorem_a(pc, n_max, target)?;
        out.push(CheckRecord {
            name: format!("theorem-a/distribution/{tag}"),
            inputs: base_inputs(pc),
            computed: Value::Array(
                report
                    .rows
                    .iter()
                    .map(|r| json!({ "degree": r.degree, "group": r.computed.to_string() }))
                    .collect(),
            ),
            expected: Value::Array(
                report
                    .rows
                    .iter()
                    .map(|r| json!({ "degree": r.degree, "group": r.predicted.to_string() }))
                    .collect(),
            ),
            provenance: "normal form vs closed form".into(),
            pass: report.pass(),
        });
    }
    Ok(out)
}

fn theorem_b_records(pc: &PrimeConfig, m: u64) -> Result<Vec<CheckRecord>, EngineError> {
    let report = verify_theorem_b(pc, m)?;
    let family: Vec<String> = report.family.iter().map(|v| format!("{v:?}")).collect();
    Ok(vec![CheckRecord {
        name: "theorem-b/fixed-point-basis".into(),
        inputs: base_inputs(pc),
        computed: json!({
            "family": family,
            "all_fixed": report.all_fixed,
            "independent": report.independent,
            "spans": report.spans,
            "fixed_points": report.fixed_point_group.to_string(),
        }),
        expected: json!({
            "count": report.expected_count,
            "fixed_points": format!("(Z/{m})^{}", report.expected_count),
        }),
        provenance: "kernel computation and independence by normal form".into(),
        pass: report.pass(),
    }])
}

fn cup_records(pc: &PrimeConfig, m: u64) -> Result<Vec<CheckRecord>, EngineError> {
    let s = pc.s();
    let mut pairs = 0usize;
    let mut mismatches = Vec::new();
    let mut samples = Vec::new();
    for de in 0..=2u64 {
        for dep in 0..=2u64 {
            for e in MultiIndex::all_of_degree(s, de) {
                for ep in MultiIndex::all_of_degree(s, dep) {
                    let a = cup_closed_form(pc, m, &e, &ep);
                    let b = cup_via_diagonal(pc, m, &e, &ep);
                    pairs += 1;
                    if a != b {
                        mismatches.push(format!("{:?} cup {:?}", e, ep));
                    } else if samples.len() < 6 && a.coefficient != num_bigint::BigInt::from(0) {
                        samples.push(format!(
                            "{:?} cup {:?} = {} [{:?}]",
                            e.components(),
                            ep.components(),
                            a.coefficient,
                            a.index.components()
                        ));
                    }
                }
            }
        }
    }
    let pass = mismatches.is_empty();
    Ok(vec![CheckRecord {
        name: "cup/oracle".into(),
        inputs: base_inputs(pc),
        computed: json!({ "pairs": pairs, "mismatches": mismatches, "samples": samples }),
        expected: json!("closed form equals diagonal composition on every pair"),
        provenance: "diagonal-map composition".into(),
        pass,
    }])
}

fn quasi_iso_records(
    pc: &PrimeConfig,
    m: u64,
    n_max: u64,
) -> Result<Vec<CheckRecord>, EngineError> {
    let mut out = Vec::new();
    for modulus in [0u64, m] {
        let report = verify_quasi_iso(pc, modulus, n_max)?;
        out.push(CheckRecord {
            name: format!("quasi-iso/m={modulus}"),
            inputs: base_inputs(pc),
            computed: Value::Array(
                report
                    .rows
                    .iter()
                    .map(|r| json!({ "degree": r.degree, "total": r.computed.to_string() }))
                    .collect(),
            ),
            expected: Value::Array(
                report
                    .rows
                    .iter()
                    .map(|r| json!({ "degree": r.degree, "hom": r.predicted.to_string() }))
                    .collect(),
            ),
            provenance: "normal forms on both complexes".into(),
            pass: report.pass(),
        });
    }
    let counts = verify_mod_m_counts(pc, m, n_max, None)?;
    out.push(CheckRecord {
        name: "quasi-iso/mod-m-counts".into(),
        inputs: base_inputs(pc),
        computed: Value::Array(
            counts
                .rows
                .iter()
                .map(|r| json!({ "degree": r.degree, "group": r.group.to_string() }))
                .collect(),
        ),
        expected: Value::Array(
            counts
                .rows
                .iter()
                .map(|r| json!({ "degree": r.degree, "rank": r.count }))
                .collect(),
        ),
        provenance: "index-set enumeration vs normal form".into(),
        pass: counts.pass(),
    });
    let mut slice_rows = Vec::new();
    let mut slice_pass = true;
    for n in 0..=n_max.min(2) as i64 {
        let rep = verify_slice_degeneration(pc, m, n)?;
        slice_pass &= rep.pass();
        slice_rows.push(json!({
            "degree": n,
            "slices": rep.slices.iter().map(|r| json!({"p2": r.p2, "count": r.expected_count})).collect::<Vec<_>>(),
            "total": rep.total.to_string(),
        }));
    }
    out.push(CheckRecord {
        name: "quasi-iso/slice-degeneration".into(),
        inputs: base_inputs(pc),
        computed: Value::Array(slice_rows),
        expected: json!("slice ranks equal pair counts and add up to the total"),
        provenance: "slice normal forms vs enumeration".into(),
        pass: slice_pass,
    });
    Ok(out)
}

fn lift_records(pc: &PrimeConfig, m: u64) -> Result<Vec<CheckRecord>, EngineError> {
    let mut out = Vec::new();
    for t_mask in 0..=pc.full_mask() {
        let divisor = pc.r_of(t_mask);
        let closed = explicit_prime_cocycle(pc, m, t_mask).is_ok();
        let e_t = MultiIndex::indicator(pc.s(), t_mask);
        let (lift_ok, structure, sign, eval) = match lift_cocycle(pc, m, t_mask, &e_t) {
            Ok(lift) => {
                let st = evaluation_structure(pc, m, &lift)?;
                let eval = lift
                    .evaluation
                    .components
                    .values()
                    .map(|d| format!("{d:?}"))
                    .collect::<Vec<_>>();
                (true, st.pass(), st.realized_sign, eval)
            }
            Err(_) => (false, false, None, Vec::new()),
        };
        out.push(CheckRecord {
            name: format!("lift/divisor-{divisor}"),
            inputs: json!({ "primes": pc.primes(), "modulus": m, "divisor": divisor }),
            computed: json!({
                "slice_cocycle_closed": closed,
                "total_lift": lift_ok,
                "realized_sign": sign,
                "evaluation": eval,
            }),
            expected: json!(
                "closed slice cocycle; total lift evaluating to the derivative element plus lower-order terms"
            ),
            provenance: "filtration-level coboundary solves".into(),
            pass: closed && lift_ok && structure,
        });
    }
    Ok(out)
}

fn appendix_records(pc: &PrimeConfig) -> Result<Vec<CheckRecord>, EngineError> {
    let mut out = Vec::new();
    let mut levels: Vec<u64> = (1..=12).collect();
    let r = pc.level();
    if r <= 30 && !levels.contains(&r) {
        levels.push(r);
    }
    let mut failures = Vec::new();
    for &f in &levels {
        for variant in [BasisVariant::X, BasisVariant::Y] {
            let mmat = xg_basis_matrix(f, variant);
            let square = mmat.rows() == f as usize && mmat.cols() == f as usize;
            let s = smith_normal_form(&mmat);
            let unimodular = s.rank() == f as usize
                && s.invariant_factors
                    .iter()
                    .all(|d| *d == num_bigint::BigInt::from(1));
            if !square || !unimodular {
                failures.push(format!("f={f} {variant:?}"));
            }
        }
    }
    out.push(CheckRecord {
        name: "appendix/word-basis-unimodular".into(),
        inputs: json!({ "levels": levels }),
        computed: json!({ "failures": failures }),
        expected: json!("square of size f with unit invariant factors"),
        provenance: "normal form".into(),
        pass: failures.is_empty(),
    });
    let mut bad_inclusions = Vec::new();
    for g in 1..=r {
        if r % g != 0 {
            continue;
        }
        let incl = level_inclusion_matrix(g, r);
        let s = smith_normal_form(&incl);
        let ok = s.rank() == basis(g).len()
            && s.invariant_factors
                .iter()
                .all(|d| *d == num_bigint::BigInt::from(1));
        if !ok {
            bad_inclusions.push(g);
        }
    }
    out.push(CheckRecord {
        name: "appendix/level-inclusion-split".into(),
        inputs: json!({ "level": r }),
        computed: json!({ "failures": bad_inclusions }),
        expected: json!("unit invariant factors for every divisor"),
        provenance: "normal form".into(),
        pass: bad_inclusions.is_empty(),
    });
    let mut non_acyclic = Vec::new();
    for f in 1..=12u64 {
        if !udist_core::anderson::verify_general_acyclicity(f)? {
            non_acyclic.push(f);
        }
    }
    out.push(CheckRecord {
        name: "appendix/general-level-acyclicity".into(),
        inputs: json!({ "levels": (1..=12u64).collect::<Vec<_>>() }),
        computed: json!({ "failures": non_acyclic }),
        expected: json!("acyclic away from degree 0, free of rank phi(f) there"),
        provenance: "normal-form homology vs basis count".into(),
        pass: non_acyclic.is_empty(),
    });
    Ok(out)
}
