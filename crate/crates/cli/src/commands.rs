use std::fs;
use std::path::Path;

use anyhow::{Context, Result};
use serde_json::{json, Value};

use reflection_sperner::budget::Budget;
use reflection_sperner::flow::{
    lift_flow_from_quotient, normalized_flow, sperner_report, verify_flow, FlowCertificate,
    SpernerVerdict, Witness,
};
use reflection_sperner::gmpn::GmpnGroup;
use reflection_sperner::group::{conjugacy_classes, AnyGroup, GroupSpec, ReflectionGroup};
use reflection_sperner::orders::{
    build_order, claw_embedding, claw_partition_search, orders_agree, OrderKind,
    PAIRWISE_ELEMENT_LIMIT,
};
use reflection_sperner::poset::{
    log_concavity_failure, partition_to_json, rank_weights, weights_from_json, Poset, PosetFile,
    RankPolynomial, WeightFunction,
};
use reflection_sperner::reproduce::{self, ClaimId, ReproduceOptions};

use crate::{
    CheckArgs, CheckKind, ClawArgs, NoInput, QuotientArgs, ReproduceArgs, EXIT_HOLDS,
    EXIT_INCONCLUSIVE, EXIT_REFUTED,
};

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| NoInput(format!("cannot read {}: {e}", path.display())).into())
}

fn write(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).with_context(|| format!("cannot write {}", path.display()))
}

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("reports serialize"));
}

fn build_group(spec: &str, budget: &Budget) -> Result<AnyGroup> {
    let spec: GroupSpec = spec.parse()?;
    Ok(AnyGroup::build(spec, budget)?)
}

fn coeffs(p: &RankPolynomial) -> Vec<Value> {
    p.coeffs()
        .iter()
        .map(|c| serde_json::from_str(&c.to_string()).expect("integers are JSON numbers"))
        .collect()
}

pub fn group_info(spec: &str, as_json: bool) -> Result<u8> {
    let budget = Budget::from_env()?;
    let g = build_group(spec, &budget)?;
    let classes = conjugacy_classes(&g).len();
    let agree = if g.order() <= PAIRWISE_ELEMENT_LIMIT {
        Some(orders_agree(&g, &budget)?)
    } else {
        None
    };
    let prefix = match &agree {
        Some(cmp) => cmp.prefix.clone(),
        None => build_order(&g, OrderKind::Prefix, &budget)?,
    };
    let poly = prefix.rank_polynomial()?;
    let exponents = poly.factor_exponents();
    if as_json {
        print_json(&json!({
            "group": g.name(),
            "order": g.order(),
            "dimension": g.dimension(),
            "reflections": g.reflections().len(),
            "conjugacy_classes": classes,
            "prefix_rank_polynomial": coeffs(&poly),
            "exponents": exponents,
            "orders_agree": agree.as_ref().map(|c| c.agree()),
        }));
    } else {
        println!("group: {}", g.name());
        println!("order: {}", g.order());
        println!("dimension: {}", g.dimension());
        println!("reflections: {}", g.reflections().len());
        println!("conjugacy classes: {classes}");
        println!("prefix rank polynomial: {poly}");
        match &exponents {
            Some(e) => println!(
                "exponents: {}",
                e.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
            ),
            None => println!("exponents: none (rank polynomial does not factor into linear terms)"),
        }
        match &agree {
            Some(c) if c.agree() => println!("prefix = codim: yes (absolute order)"),
            Some(_) => println!("prefix = codim: no"),
            None => println!("prefix = codim: not checked (above {PAIRWISE_ELEMENT_LIMIT} elements)"),
        }
    }
    Ok(EXIT_HOLDS)
}

pub fn order_build(group: &str, kind: &str, out: Option<&Path>) -> Result<u8> {
    let budget = Budget::from_env()?;
    let g = build_group(group, &budget)?;
    let kind: OrderKind = kind.parse()?;
    let p = build_order(&g, kind, &budget)?;
    let text = PosetFile::new(p.clone(), None).to_json();
    match out {
        Some(path) => {
            write(path, &text)?;
            eprintln!(
                "{} order on {}: {} elements, {} covers, {}",
                kind,
                g.name(),
                p.len(),
                p.covers().len(),
                if p.ranks().is_some() { "ranked" } else { "not ranked" }
            );
        }
        None => print!("{text}"),
    }
    Ok(EXIT_HOLDS)
}

fn choose_weights(file: &PosetFile, choice: Option<&str>) -> Result<WeightFunction> {
    let n = file.poset.len();
    let w = match choice {
        None => file.weights.clone().unwrap_or_else(|| WeightFunction::unit(n)),
        Some("unit") => WeightFunction::unit(n),
        Some("file") => file
            .weights
            .clone()
            .ok_or_else(|| reflection_sperner::error::Error::Schema("the poset file has no weights".into()))?,
        Some(path) => weights_from_json(&read(Path::new(path))?)?,
    };
    w.validate(&file.poset)?;
    Ok(w)
}

struct Outcome {
    code: u8,
    report: serde_json::Map<String, Value>,
    certificate: Option<FlowCertificate>,
    witness: Option<Witness>,
    summary: String,
}

impl Outcome {
    fn new(code: u8, summary: impl Into<String>) -> Self {
        Self {
            code,
            report: serde_json::Map::new(),
            certificate: None,
            witness: None,
            summary: summary.into(),
        }
    }
}

pub fn check(args: &CheckArgs) -> Result<u8> {
    let file = PosetFile::from_json(&read(&args.file)?)
        .with_context(|| format!("in {}", args.file.display()))?;
    let p = &file.poset;
    let kind = match args.check {
        CheckKind::Flow => "flow",
        CheckKind::Sperner => "sperner",
        CheckKind::Ranked => "ranked",
        CheckKind::LogConcave => "log-concave",
    };
    let mut out = if let Some(path) = &args.certificate {
        let cert = FlowCertificate::from_json(&read(path)?)
            .with_context(|| format!("in {}", path.display()))?;
        let w = choose_weights(&file, args.weights.as_deref())?;
        if !verify_flow(p, &w, &cert) {
            return Err(reflection_sperner::error::Error::Domain(format!(
                "certificate {} does not verify",
                path.display()
            ))
            .into());
        }
        Outcome::new(EXIT_HOLDS, "certificate verifies: normalized flow exists")
    } else if let Some(path) = &args.witness {
        let witness =
            Witness::from_json(&read(path)?).with_context(|| format!("in {}", path.display()))?;
        let w = match &witness {
            Witness::Cut(_) => choose_weights(&file, args.weights.as_deref())?,
            _ => WeightFunction::unit(p.len()),
        };
        if !witness.verify(p, &w) {
            return Err(reflection_sperner::error::Error::Domain(format!(
                "witness {} does not verify",
                path.display()
            ))
            .into());
        }
        Outcome::new(EXIT_REFUTED, format!("{} witness verifies", witness.kind()))
    } else {
        match args.check {
            CheckKind::Flow => check_flow(p, &choose_weights(&file, args.weights.as_deref())?)?,
            CheckKind::Sperner => check_sperner(p)?,
            CheckKind::Ranked => check_ranked(p)?,
            CheckKind::LogConcave => {
                check_log_concave(p, &choose_weights(&file, args.weights.as_deref())?)?
            }
        }
    };
    if let (Some(path), Some(cert)) = (&args.cert_out, &out.certificate) {
        write(path, &cert.to_json())?;
    }
    if let (Some(path), Some(w)) = (&args.witness_out, &out.witness) {
        write(path, &w.to_json())?;
    }
    let verdict = match out.code {
        EXIT_HOLDS => "holds",
        EXIT_REFUTED => "refuted",
        _ => "inconclusive",
    };
    if args.json {
        out.report.insert("check".into(), json!(kind));
        out.report.insert("result".into(), json!(verdict));
        out.report.insert("exit_code".into(), json!(out.code));
        out.report.insert("summary".into(), json!(out.summary));
        if let Some(c) = &out.certificate {
            out.report.insert("certificate".into(), c.to_json_value());
        }
        if let Some(w) = &out.witness {
            out.report.insert("witness".into(), w.to_json_value());
        }
        print_json(&Value::Object(out.report));
    } else {
        println!("{kind}: {verdict}");
        println!("{}", out.summary);
    }
    Ok(out.code)
}

fn check_flow(p: &Poset, w: &WeightFunction) -> Result<Outcome> {
    Ok(match normalized_flow(p, w)? {
        Ok(cert) => {
            let edges: usize = cert.layers.iter().map(|l| l.edges.len()).sum();
            let mut o = Outcome::new(
                EXIT_HOLDS,
                format!("normalized flow on {} layers, {edges} nonzero edges", cert.layers.len()),
            );
            o.certificate = Some(cert);
            o
        }
        Err(cut) => {
            let mut o = Outcome::new(
                EXIT_REFUTED,
                format!(
                    "no normalized flow: in layer {}, {} elements have weight share {} but their upper covers only {}",
                    cut.rank,
                    cut.subset.len(),
                    cut.lhs,
                    cut.rhs
                ),
            );
            o.witness = Some(Witness::Cut(cut));
            o
        }
    })
}

fn check_sperner(p: &Poset) -> Result<Outcome> {
    let r = sperner_report(p)?;
    let code = match r.verdict {
        SpernerVerdict::Positive => EXIT_HOLDS,
        SpernerVerdict::Negative => EXIT_REFUTED,
        SpernerVerdict::Inconclusive => EXIT_INCONCLUSIVE,
    };
    let summary = match (&r.verdict, &r.witness) {
        (SpernerVerdict::Positive, _) => "normalized flow found: strongly Sperner".to_string(),
        (SpernerVerdict::Negative, Some(w)) => {
            let (lhs, rhs) = w.comparison();
            format!("{} witness of size {lhs} beats the rank bound {rhs}", w.kind())
        }
        _ => "no normalized flow and no violation found".to_string(),
    };
    let mut o = Outcome::new(code, summary);
    o.report.insert("verdict".into(), json!(r.verdict.to_string()));
    o.report.insert("rank_sizes".into(), json!(r.rank_sizes));
    o.report.insert("max_antichain".into(), json!(r.max_antichain));
    o.report.insert(
        "k_families".into(),
        json!(r
            .k_families
            .iter()
            .map(|row| json!({"k": row.k, "family": row.family, "bound": row.bound}))
            .collect::<Vec<_>>()),
    );
    if let Some(cut) = &r.cut {
        o.report.insert("cut".into(), Witness::Cut(cut.clone()).to_json_value());
    }
    o.certificate = r.certificate;
    o.witness = match r.verdict {
        SpernerVerdict::Inconclusive => r.cut.map(Witness::Cut),
        _ => r.witness,
    };
    Ok(o)
}

fn check_ranked(p: &Poset) -> Result<Outcome> {
    if p.minimal_elements().len() != 1 {
        return Ok(match p.ranks() {
            Some(_) => Outcome::new(EXIT_HOLDS, "ranked (every component)"),
            None => Outcome::new(
                EXIT_INCONCLUSIVE,
                "not ranked from its minima, and no single minimum to anchor a witness",
            ),
        });
    }
    Ok(match p.is_ranked()? {
        Ok(ranks) => {
            let mut o = Outcome::new(EXIT_HOLDS, format!("ranked, rank {}", ranks.iter().max().unwrap_or(&0)));
            o.report.insert("ranks".into(), json!(ranks));
            o
        }
        Err(conflict) => {
            let mut o = Outcome::new(
                EXIT_REFUTED,
                format!(
                    "element {} is reached by cover paths of lengths {} and {}",
                    p.label(conflict.element),
                    conflict.first_path.len() - 1,
                    conflict.second_path.len() - 1
                ),
            );
            o.witness = Some(Witness::RankConflict(conflict));
            o
        }
    })
}

fn check_log_concave(p: &Poset, w: &WeightFunction) -> Result<Outcome> {
    let totals = rank_weights(p, w)?;
    let mut o = match log_concavity_failure(p, w)? {
        None => Outcome::new(EXIT_HOLDS, "weighted rank sizes are log-concave"),
        Some(i) => {
            let lhs = &totals[i] * &totals[i];
            let rhs = &totals[i - 1] * &totals[i + 1];
            let mut o = Outcome::new(
                EXIT_REFUTED,
                format!("at rank {i}: {lhs} < {rhs}"),
            );
            o.report.insert("failing_rank".into(), json!(i));
            o
        }
    };
    o.report.insert(
        "rank_weights".into(),
        json!(totals.iter().map(ToString::to_string).collect::<Vec<_>>()),
    );
    Ok(o)
}

pub fn quotient(args: &QuotientArgs) -> Result<u8> {
    let budget = Budget::from_env()?;
    let g = build_group(&args.group, &budget)?;
    let kind: OrderKind = args.kind.parse()?;
    let p = build_order(&g, kind, &budget)?;
    let classes = conjugacy_classes(&g);
    let (q, qw) = p.quotient(&classes)?;
    if let Some(path) = &args.out {
        write(path, &PosetFile::new(q.clone(), Some(qw.clone())).to_json())?;
    }
    if let Some(path) = &args.orbits_out {
        write(path, &partition_to_json(&classes))?;
    }
    let mut code = EXIT_HOLDS;
    let mut flow = Value::Null;
    if let Some(path) = &args.cert_out {
        match normalized_flow(&q, &qw)? {
            Ok(qcert) => {
                let lifted = lift_flow_from_quotient(&p, &classes, &qcert)?;
                write(path, &lifted.to_json())?;
                flow = json!("lifted");
            }
            Err(cut) => {
                code = EXIT_REFUTED;
                flow = Witness::Cut(cut).to_json_value();
            }
        }
    }
    if args.json {
        print_json(&json!({
            "group": g.name(),
            "order": kind.to_string(),
            "elements": p.len(),
            "orbits": q.len(),
            "quotient_covers": q.covers().len(),
            "flow": flow,
        }));
    } else {
        println!(
            "{} order on {}: {} elements, {} orbits under conjugation, {} quotient covers",
            kind,
            g.name(),
            p.len(),
            q.len(),
            q.covers().len()
        );
        if args.out.is_none() {
            print!("{}", PosetFile::new(q, Some(qw)).to_json());
        }
        match code {
            EXIT_REFUTED => println!("quotient has no normalized flow"),
            _ if args.cert_out.is_some() => println!("lifted certificate written"),
            _ => {}
        }
    }
    Ok(code)
}

pub fn claw(args: &ClawArgs) -> Result<u8> {
    let budget = Budget::from_env()?;
    let spec: GroupSpec = args.group.parse()?;
    let GroupSpec::Gmpn { m, p, n } = spec else {
        return Err(reflection_sperner::error::Error::Parameter(format!(
            "claw needs g(m,1,n) or g(2,2,n), got {spec}"
        ))
        .into());
    };
    let g = GmpnGroup::new(m, p, n, &budget)?;
    if p == 1 {
        let e = claw_embedding(&g)?;
        let sizes: Vec<usize> = e.blocks.iter().map(Vec::len).collect();
        if args.json {
            let labels: Vec<Value> = (0..g.order())
                .map(|u| {
                    json!({
                        "element": g.label(u),
                        "factors": e.factors[u].iter().map(|f| match f {
                            Some(t) => g.label(*t),
                            None => "id".to_string(),
                        }).collect::<Vec<_>>(),
                    })
                })
                .collect();
            print_json(&json!({
                "group": g.name(),
                "block_sizes": sizes,
                "product_elements": e.product.len(),
                "verified": true,
                "labels": labels,
            }));
        } else {
            let factors: Vec<String> = sizes
                .iter()
                .filter(|&&s| s > 0)
                .map(|s| format!("C_{}", s + 1))
                .collect();
            println!("{}: claw product {}", g.name(), factors.join(" x "));
            println!("block sizes |T_j|: {sizes:?}");
            println!(
                "verified: {} elements, bijective, rank- and order-preserving",
                e.product.len()
            );
        }
        return Ok(EXIT_HOLDS);
    }
    if m == 2 && p == 2 {
        let found = claw_partition_search(&g)?;
        if args.json {
            print_json(&json!({
                "group": g.name(),
                "partition": found.as_ref().map(|c| json!({
                    "blocks": c.blocks.iter().map(|b| b.iter().map(|&t| g.label(t)).collect::<Vec<_>>()).collect::<Vec<_>>(),
                    "product_order": c.product_order,
                })),
            }));
        } else {
            match &found {
                Some(c) => {
                    println!("{}: claw partition found", g.name());
                    for b in &c.blocks {
                        let ls: Vec<String> = b.iter().map(|&t| g.label(t)).collect();
                        println!("  {}", ls.join(" "));
                    }
                }
                None => println!("{}: no claw partition exists", g.name()),
            }
        }
        return Ok(if found.is_some() { EXIT_HOLDS } else { EXIT_REFUTED });
    }
    Err(reflection_sperner::error::Error::Parameter(format!(
        "claw needs g(m,1,n) or g(2,2,n), got {}",
        g.name()
    ))
    .into())
}

pub fn reproduce(args: &ReproduceArgs) -> Result<u8> {
    let claims: Vec<ClaimId> = if args.claim == "all" {
        ClaimId::ALL.to_vec()
    } else {
        vec![args.claim.parse()?]
    };
    let options = ReproduceOptions {
        big: args.big,
        n: args.n,
        budget: Budget::from_env()?,
    };
    if let Some(dir) = &args.out_dir {
        fs::create_dir_all(dir).with_context(|| format!("cannot create {}", dir.display()))?;
    }
    let mut reports = Vec::new();
    let mut code = EXIT_HOLDS;
    for claim in claims {
        let report = reproduce::reproduce(claim, &options)
            .with_context(|| format!("reproducing {claim}"))?;
        if let Some(dir) = &args.out_dir {
            for a in &report.artifacts {
                write(&dir.join(&a.file_name), &a.contents)?;
            }
        }
        if !report.status.passed() {
            code = EXIT_REFUTED;
        }
        if !args.json {
            print!("{}", report.render());
        }
        reports.push(report.to_json_value());
    }
    if args.json {
        print_json(&if reports.len() == 1 {
            reports.pop().unwrap()
        } else {
            Value::Array(reports)
        });
    }
    Ok(code)
}
