use anyhow::{anyhow, bail, Context, Result};
use hurwitz_core::dessin::Dessin;
use hurwitz_core::permsearch::{
    check_nonexistence, involution_product_profile, realize, verify, Constellation, Perm, SearchConfig, SearchError,
    SearchOutcome, Verdict,
};
use hurwitz_core::ramcore::{enumerate_families, parse_family, parse_ram_data, DegreeProgression, FamilySpec, RamData};
use hurwitz_core::stability::{hamming, is_delta_solution, parse_relators, quasi_local_rate, triangle_relators};
use hurwitz_core::tiling::{max_disk_radius, tile_torus, tile_torus_for_base, Shape};
use hurwitz_core::transform::{add_edges, add_edges_witness, compose, split_2222, BaseMap, SplitOutcome};
use num_rational::Rational64;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::report::{Emitter, Outcome, Record};
use crate::{Command, Global, StabilityCommand};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Status {
    Ok = 0,
    Failed = 1,
    InputError = 2,
    Unsat = 3,
    Unknown = 4,
}

/// Tables reproduced by `reproduce-tables`, with their largest error.
const TABLE_BASES: [(&[u32], u32); 4] = [(&[3, 3, 3], 10), (&[2, 3, 6], 6), (&[2, 4, 4], 6), (&[2, 2, 2, 2], 10)];

/// Families checked exhaustively by `reproduce-tables --nonexistence`.
const NONEXISTENCE: [(&str, &str, &[u32]); 5] = [
    ("A", "[1,3|2*][2*][2*][2*]", &[4, 6, 8, 10]),
    ("B", "[3*][3*][2,4|3*]", &[6, 9, 12]),
    ("C", "[2*][3,5|4*][4*]", &[8, 12]),
    ("D", "[2*][3*][5,7|6*]", &[12]),
    ("genus-0 (29)", "[2*][1|3*][2,2|6*]", &[4, 10]),
];

enum Input {
    Data(RamData),
    Family(FamilySpec),
}

fn parse_input(s: &str) -> Result<Input> {
    if s.contains('*') {
        Ok(Input::Family(parse_family(s)?))
    } else {
        Ok(Input::Data(parse_ram_data(s)?))
    }
}

/// Concrete data from either form; a family needs a degree or uses its smallest valid one.
fn concrete(s: &str, degree: Option<u32>) -> Result<RamData> {
    match parse_input(s)? {
        Input::Data(d) => {
            if let Some(n) = degree.filter(|&n| n != d.degree()) {
                bail!("data has degree {}, not {n}", d.degree());
            }
            Ok(d)
        }
        Input::Family(f) => {
            let n = match degree {
                Some(n) => n,
                None => first_degree(&f)?,
            };
            Ok(f.member(n)?)
        }
    }
}

fn first_degree(f: &FamilySpec) -> Result<u32> {
    Ok(f.valid_degrees().ok_or_else(|| anyhow!("{f} has no valid degree"))?.first)
}

fn progression(p: Option<DegreeProgression>) -> Value {
    p.map_or(Value::Null, |p| json!({ "first": p.first, "step": p.step }))
}

fn search_config(g: &Global) -> SearchConfig {
    SearchConfig { budget: g.budget, threads: g.threads, ..SearchConfig::default() }
}

pub fn run(g: &Global, command: Command) -> Result<Status> {
    match command {
        Command::Genus { input, degree } => genus(g, &input, degree),
        Command::Enumerate { base, genus, eps, count, degree } => enumerate(g, &base, genus, eps, count, degree),
        Command::Realize { input, degree, degrees } => realize_cmd(g, &input, degree, degrees),
        Command::Verify { data, constellation } => verify_cmd(g, &data, &constellation),
        Command::Tile { n, shape, base } => tile(g, n, shape, base),
        Command::Compose { input, at, map, degree } => compose_cmd(g, &input, &at, &map, degree),
        Command::AddEdges { input, slots, entries, k, witness, degree } => {
            if slots.len() != 2 || entries.len() != 2 {
                bail!("--slots and --entries take two values each");
            }
            add_edges_cmd(g, &input, (slots[0], slots[1]), (entries[0], entries[1]), k, witness.as_deref(), degree)
        }
        Command::Split { input, k, m } => split(g, input.as_deref(), k, m),
        Command::Stability { command } => stability(g, command),
        Command::ReproduceTables { genus, witnesses, nonexistence } => reproduce(g, genus, witnesses, nonexistence),
    }
}

fn genus(g: &Global, input: &str, degree: Option<u32>) -> Result<Status> {
    let out = Emitter::new(g.format, "genus", json!({ "input": input, "degree": degree }));
    match parse_input(input)? {
        Input::Data(d) => {
            if degree.is_some_and(|n| n != d.degree()) {
                bail!("data has degree {}", d.degree());
            }
            let genus = d.genus()?;
            out.emit(Record::value(
                json!({ "data": d.to_string(), "degree": d.degree(), "genus": genus }),
                format!("{d} degree {} genus {genus}", d.degree()),
            ));
        }
        Input::Family(f) => {
            let genus = f.genus()?;
            let member = degree.map(|n| f.member(n)).transpose()?;
            let degrees = f.valid_degrees();
            let text = match degrees {
                Some(p) => format!("{f} genus {genus} error {} degrees {}+{}k", f.error(), p.first, p.step),
                None => format!("{f} genus {genus} error {} no valid degree", f.error()),
            };
            out.emit(Record::value(
                json!({
                    "family": f.to_string(),
                    "genus": genus,
                    "error": f.error(),
                    "valid_degrees": progression(degrees),
                    "member": member.as_ref().map(RamData::to_string),
                }),
                match &member {
                    Some(m) => format!("{text}\n{m}"),
                    None => text,
                },
            ));
        }
    }
    Ok(Status::Ok)
}

fn enumerate(g: &Global, base: &[u32], genus: u32, eps: u32, count: bool, degree: Option<u32>) -> Result<Status> {
    let families = enumerate_families(base, genus, eps)?;
    let out = Emitter::new(
        g.format,
        "enumerate",
        json!({ "base": base, "genus": genus, "eps": eps, "count": count, "degree": degree }),
    );
    if count {
        out.emit(Record::value(json!({ "count": families.len() }), families.len().to_string()));
        return Ok(Status::Ok);
    }
    for (i, f) in families.iter().enumerate() {
        let member = degree.and_then(|n| f.member(n).ok());
        let mut text = format!("{} {f} eps={}", i + 1, f.error());
        if let Some(m) = &member {
            text.push_str(&format!(" {m}"));
        }
        out.emit(Record::value(
            json!({
                "index": i + 1,
                "family": f.to_string(),
                "error": f.error(),
                "valid_degrees": progression(f.valid_degrees()),
                "member": member.as_ref().map(RamData::to_string),
            }),
            text,
        ));
    }
    Ok(Status::Ok)
}

/// Runs the search and renders its outcome.
fn search_record(data: &RamData, cfg: &SearchConfig) -> Result<(Record, Status)> {
    let outcome = match realize(data, cfg) {
        Ok(o) => o,
        Err(SearchError::ThreadPool(e)) => {
            eprintln!("error: {e}");
            return Ok((Record::value(Value::Null, "thread pool failure"), Status::Failed));
        }
        Err(e) => return Err(e.into()),
    };
    Ok(render_outcome(data, &outcome))
}

fn render_outcome(data: &RamData, outcome: &SearchOutcome) -> (Record, Status) {
    let n = data.degree();
    match outcome {
        SearchOutcome::Witness { constellation, nodes } => {
            let report = verify(constellation, data);
            assert!(report.ok, "search returned an unverified tuple for {data}: {:?}", report.violation);
            let dessin = Dessin::from_verified(constellation.clone(), data).expect("verified above");
            let euler = dessin.euler();
            let digest = dessin.canonical_form().digest;
            let record = Record {
                outcome: Outcome::Witness,
                nodes: Some(*nodes),
                result: json!({
                    "data": data.to_string(),
                    "degree": n,
                    "cycles": constellation.to_string(),
                    "perms": constellation,
                    "genus": euler.genus,
                    "euler": euler,
                    "digest": digest,
                }),
                text: format!("witness {data} n={n}: {constellation}"),
                dot: Some(dessin.export_dot()),
            };
            (record, Status::Ok)
        }
        SearchOutcome::Unsat(cert) => (
            Record {
                outcome: Outcome::Unsat,
                nodes: Some(cert.nodes),
                result: json!({ "data": data.to_string(), "degree": n, "search_space": cert.search_space }),
                text: format!("unsat {data} n={n} nodes={} space={}", cert.nodes, cert.search_space),
                dot: None,
            },
            Status::Unsat,
        ),
        SearchOutcome::Unknown { budget } => (
            Record {
                outcome: Outcome::Unknown,
                nodes: Some(*budget),
                result: json!({ "data": data.to_string(), "degree": n, "budget": budget }),
                text: format!("unknown {data} n={n} budget={budget}"),
                dot: None,
            },
            Status::Unknown,
        ),
    }
}

/// A witness anywhere wins; otherwise an exhausted budget anywhere; otherwise unsat.
fn combine(statuses: &[Status]) -> Status {
    if statuses.contains(&Status::Failed) {
        Status::Failed
    } else if statuses.contains(&Status::Ok) {
        Status::Ok
    } else if statuses.contains(&Status::Unknown) {
        Status::Unknown
    } else {
        Status::Unsat
    }
}

fn realize_cmd(g: &Global, input: &str, degree: Option<u32>, degrees: Option<(u32, u32)>) -> Result<Status> {
    let targets = match (parse_input(input)?, degrees) {
        (Input::Family(f), Some((a, b))) => {
            let p = f.valid_degrees().ok_or_else(|| anyhow!("{f} has no valid degree"))?;
            let ns: Vec<u32> = (a..=b).filter(|&n| p.contains(n)).collect();
            if ns.is_empty() {
                bail!("no valid degree of {f} in {a}..{b}");
            }
            ns.into_iter().map(|n| f.member(n)).collect::<Result<Vec<_>, _>>()?
        }
        (Input::Data(_), Some(_)) => bail!("--degrees needs a family"),
        _ => vec![concrete(input, degree)?],
    };
    let range = degrees.map(|(a, b)| format!("{a}..{b}"));
    let out = Emitter::new(
        g.format,
        "realize",
        json!({ "input": input, "degree": degree, "degrees": range, "budget": g.budget }),
    );
    let cfg = search_config(g);
    let mut statuses = Vec::new();
    for d in &targets {
        let (record, status) = search_record(d, &cfg)?;
        out.emit(record);
        statuses.push(status);
    }
    Ok(combine(&statuses))
}

fn verify_cmd(g: &Global, data: &str, constellation: &str) -> Result<Status> {
    let d = parse_ram_data(data)?;
    let c = Constellation::parse(d.degree() as usize, constellation)?;
    let report = verify(&c, &d);
    let out = Emitter::new(g.format, "verify", json!({ "data": data, "constellation": constellation }));
    if !report.ok {
        let why = report.violation.as_ref().map_or(String::new(), ToString::to_string);
        out.emit(Record::value(json!({ "ok": false, "violation": report.violation }), format!("rejected: {why}")));
        return Ok(Status::Failed);
    }
    let dessin = Dessin::from_verified(c, &d)?;
    let euler = dessin.euler();
    out.emit(Record {
        outcome: Outcome::Value,
        nodes: None,
        result: json!({ "ok": true, "euler": euler, "digest": dessin.canonical_form().digest }),
        text: format!("ok genus {} digest {}", euler.genus, dessin.canonical_form().digest),
        dot: Some(dessin.export_dot()),
    });
    Ok(Status::Ok)
}

fn tile(g: &Global, n: u64, shape: Shape, base: Option<Vec<u32>>) -> Result<Status> {
    if n == 0 {
        bail!("a tiling needs at least one polygon");
    }
    let t = match &base {
        Some(b) => tile_torus_for_base(n, b)?,
        None => tile_torus(n, shape),
    };
    let [u, v] = t.basis.columns;
    let out = Emitter::new(g.format, "tile", json!({ "n": n, "shape": shape, "base": base }));
    let radius = max_disk_radius(&t);
    out.emit(Record::value(
        json!({
            "shape": t.shape,
            "basis": [u, v],
            "det": t.basis.det(),
            "column_lengths": t.basis.column_lengths(),
            "angle_cosine": t.basis.angle_cosine(),
            "min_norm": t.basis.min_norm(t.shape),
            "max_disk_radius": radius,
            "regular_degree": t.regular_degree(),
        }),
        format!("basis ({},{}),({},{}) det {} radius {radius}", u[0], u[1], v[0], v[1], t.basis.det()),
    ));
    Ok(Status::Ok)
}

fn compose_cmd(g: &Global, input: &str, at: &[String], map: &str, degree: Option<u32>) -> Result<Status> {
    let f = concrete(input, degree)?;
    let base_map = BaseMap::builtin(map).ok_or_else(|| anyhow!("unknown map '{map}' (x^2, x^3 or x)"))?;
    let c = compose(&f, at, &base_map)?;
    let genus = c.genus()?;
    let out = Emitter::new(g.format, "compose", json!({ "input": input, "at": at, "map": map, "degree": degree }));
    out.emit(Record::value(
        json!({
            "source": f.to_string(),
            "map": base_map.name,
            "composite": c.to_string(),
            "degree": c.degree(),
            "genus": genus,
        }),
        c.to_string(),
    ));
    Ok(Status::Ok)
}

fn add_edges_cmd(
    g: &Global,
    input: &str,
    slots: (usize, usize),
    entries: (u32, u32),
    k: u32,
    witness: Option<&str>,
    degree: Option<u32>,
) -> Result<Status> {
    let t = concrete(input, degree)?;
    let grown = add_edges(&t, slots.0, entries.0, slots.1, entries.1, k)?;
    let surgery = witness
        .map(|w| -> Result<Constellation> {
            let c = Constellation::parse(t.degree() as usize, w)?;
            if !verify(&c, &t).ok {
                bail!("the witness does not realize {t}");
            }
            let out = add_edges_witness(&c, slots.0, entries.0, slots.1, entries.1, k)?;
            assert!(verify(&out, &grown).ok, "edge surgery broke the witness");
            Ok(out)
        })
        .transpose()?;
    let out = Emitter::new(
        g.format,
        "add-edges",
        json!({ "input": input, "slots": [slots.0, slots.1], "entries": [entries.0, entries.1], "k": k,
                "witness": witness, "degree": degree }),
    );
    let mut text = grown.to_string();
    if let Some(c) = &surgery {
        text.push_str(&format!("\n{c}"));
    }
    out.emit(Record::value(
        json!({
            "source": t.to_string(),
            "result": grown.to_string(),
            "genus": grown.genus()?,
            "witness": surgery.as_ref().map(ToString::to_string),
        }),
        text,
    ));
    Ok(Status::Ok)
}

/// Numbers of entries 1 and 3 per slot of a family over `[2,2,2,2]`.
fn ones_and_threes(f: &FamilySpec) -> Result<([u32; 4], [u32; 4])> {
    if f.base() != [2, 2, 2, 2] {
        bail!("{f} is not over [2,2,2,2]");
    }
    let mut k = [0; 4];
    let mut m = [0; 4];
    for (i, a) in f.irregular().iter().enumerate() {
        for &e in a {
            match e {
                1 => k[i] += 1,
                3 => m[i] += 1,
                _ => bail!("entry {e} in slot {i}: only 1 and 3 can be split"),
            }
        }
    }
    Ok((k, m))
}

fn split(g: &Global, input: Option<&str>, k: Option<Vec<u32>>, m: Option<Vec<u32>>) -> Result<Status> {
    let (k, m) = match (input, k, m) {
        (Some(s), None, None) => ones_and_threes(&parse_family(s)?)?,
        (None, Some(k), Some(m)) => {
            let arr =
                |v: Vec<u32>| -> Result<[u32; 4]> { v.try_into().map_err(|_| anyhow!("--k and --m take four values")) };
            (arr(k)?, arr(m)?)
        }
        _ => bail!("give either a family or --k and --m"),
    };
    let out = Emitter::new(g.format, "split", json!({ "input": input, "k": k, "m": m }));
    let (result, text) = match split_2222(k, m)? {
        SplitOutcome::Split { case, halves: (a, b) } => (
            json!({ "result": "split", "case": case.to_string(), "halves": [a.to_string(), b.to_string()] }),
            format!("case ({case}): {a} + {b}"),
        ),
        SplitOutcome::Exceptional { id } => {
            (json!({ "result": "exceptional", "id": id }), format!("exceptional type {id}"))
        }
        SplitOutcome::NotApplicable => {
            (json!({ "result": "not_applicable" }), "error at most 10: already tabulated".to_string())
        }
    };
    out.emit(Record::value(result, text));
    Ok(Status::Ok)
}

fn parse_tuple(s: &str, n: usize) -> Result<Vec<Perm>> {
    Ok(Constellation::parse(n, s)
        .map(|c| c.perms().to_vec())
        .or_else(|_| s.split('|').map(|p| Perm::parse(n, p)).collect::<Result<Vec<_>, _>>())?)
}

fn random_perm(n: usize, rng: &mut ChaCha8Rng) -> Perm {
    let mut v: Vec<u32> = (0..n as u32).collect();
    v.shuffle(rng);
    Perm::from_images(v).expect("shuffle of 0..n")
}

fn random_involution(n: usize, rng: &mut ChaCha8Rng) -> Perm {
    let mut v: Vec<u32> = (0..n as u32).collect();
    v.shuffle(rng);
    let mut images = vec![0; n];
    for pair in v.chunks(2) {
        images[pair[0] as usize] = pair[1];
        images[pair[1] as usize] = pair[0];
    }
    Perm::from_images(images).expect("pairs cover 0..n")
}

fn stability(g: &Global, command: StabilityCommand) -> Result<Status> {
    match command {
        StabilityCommand::Delta { tuple, degree, relators, base, delta } => {
            let perms = parse_tuple(&tuple, degree)?;
            let words = match (&relators, &base) {
                (Some(r), None) => parse_relators(r)?,
                (None, Some(b)) => triangle_relators(b),
                _ => bail!("give --relators or --base"),
            };
            let threshold: Rational64 = delta.parse().map_err(|e| anyhow!("--delta '{delta}': {e}"))?;
            let report = is_delta_solution(&words, &perms, threshold)?;
            let out = Emitter::new(
                g.format,
                "stability delta",
                json!({ "tuple": tuple, "degree": degree, "relators": relators, "base": base, "delta": delta }),
            );
            let defects: Vec<String> = report.defects.iter().map(ToString::to_string).collect();
            out.emit(Record::value(
                serde_json::to_value(&report)?,
                format!("{} defects {}", if report.ok { "ok" } else { "not a solution" }, defects.join(" ")),
            ));
            Ok(if report.ok { Status::Ok } else { Status::Failed })
        }
        StabilityCommand::Hamming { p, q, degree } => {
            let d = hamming(&Perm::parse(degree, &p)?, &Perm::parse(degree, &q)?)?;
            let out = Emitter::new(g.format, "stability hamming", json!({ "p": p, "q": q, "degree": degree }));
            out.emit(Record::value(json!({ "distance": d.to_string() }), d.to_string()));
            Ok(Status::Ok)
        }
        StabilityCommand::QuasiLocal { changes } => {
            let sample = changes
                .split(',')
                .map(|pair| -> Result<(u64, u64)> {
                    let (n, k) = pair.split_once(':').with_context(|| format!("expected n:k, got '{pair}'"))?;
                    Ok((n.trim().parse()?, k.trim().parse()?))
                })
                .collect::<Result<Vec<_>>>()?;
            let v = quasi_local_rate(&sample)?;
            let out = Emitter::new(g.format, "stability quasi-local", json!({ "changes": changes }));
            out.emit(Record::value(
                serde_json::to_value(&v)?,
                format!("max ratio {:.6} tail slope {:.3e} ({})", v.max_ratio, v.tail_slope, v.note),
            ));
            Ok(Status::Ok)
        }
        StabilityCommand::HammingAxioms { trials, max_degree } => {
            if max_degree == 0 {
                bail!("--max-degree must be positive");
            }
            let mut rng = ChaCha8Rng::seed_from_u64(g.seed);
            let mut failures = 0u32;
            for _ in 0..trials {
                let n = rng.gen_range(1..=max_degree);
                let [p, q, t, s] = std::array::from_fn(|_| random_perm(n, &mut rng));
                let d = |a: &Perm, b: &Perm| hamming(a, b).expect("same degree");
                let zero = Rational64::from_integer(0);
                let holds = d(&p, &p) == zero
                    && (d(&p, &q) == zero) == (p == q)
                    && d(&p, &q) == d(&q, &p)
                    && d(&p, &t) <= d(&p, &q) + d(&q, &t)
                    && d(&p.compose(&s), &q.compose(&s)) == d(&p, &q);
                failures += u32::from(!holds);
            }
            property_report(g, "stability hamming-axioms", trials, max_degree, failures)
        }
        StabilityCommand::InvolutionParity { trials, max_degree } => {
            if max_degree < 2 {
                bail!("--max-degree must be at least 2");
            }
            let mut rng = ChaCha8Rng::seed_from_u64(g.seed);
            let mut failures = 0u32;
            for _ in 0..trials {
                let n = 2 * rng.gen_range(1..=max_degree / 2);
                let x = random_involution(n, &mut rng);
                let y = random_involution(n, &mut rng);
                let profile = involution_product_profile(&x, &y)?;
                let even = profile.entries().iter().all(|&len| profile.count(len) % 2 == 0);
                failures += u32::from(!even);
            }
            property_report(g, "stability involution-parity", trials, max_degree, failures)
        }
    }
}

fn property_report(g: &Global, command: &'static str, trials: u32, max_degree: usize, failures: u32) -> Result<Status> {
    let out = Emitter::new(g.format, command, json!({ "trials": trials, "max_degree": max_degree, "seed": g.seed }));
    out.emit(Record::value(
        json!({ "trials": trials, "failures": failures }),
        format!("{trials} trials, {failures} failures"),
    ));
    Ok(if failures == 0 { Status::Ok } else { Status::Failed })
}

fn reproduce(g: &Global, genus: Option<u32>, witnesses: bool, nonexistence: bool) -> Result<Status> {
    let genera: Vec<u32> = match genus {
        Some(x) => vec![x],
        None => vec![1, 0],
    };
    let cfg = search_config(g);
    let out = Emitter::new(
        g.format,
        "reproduce-tables",
        json!({ "genus": genus, "witnesses": witnesses, "nonexistence": nonexistence, "budget": g.budget }),
    );
    let mut statuses = vec![Status::Ok];
    for &genus in &genera {
        for (base, eps) in TABLE_BASES {
            let families = enumerate_families(base, genus, eps)?;
            let names: Vec<String> = families.iter().map(ToString::to_string).collect();
            out.emit(Record::value(
                json!({ "genus": genus, "base": base, "eps": eps, "count": families.len(), "families": names }),
                format!("genus {genus} base {base:?} eps {eps}: {} families\n  {}", families.len(), names.join("\n  ")),
            ));
            if !witnesses {
                continue;
            }
            for f in &families {
                let data = f.member(first_degree(f)?)?;
                let (mut record, status) = search_record(&data, &cfg)?;
                if let Value::Object(map) = &mut record.result {
                    map.insert("family".into(), json!(f.to_string()));
                }
                record.text = format!("{f}: {}", record.text);
                record.dot = None;
                out.emit(record);
                if status == Status::Failed {
                    statuses.push(status);
                }
            }
        }
    }
    if nonexistence {
        for (label, family, degrees) in NONEXISTENCE {
            let f = parse_family(family)?;
            let report = check_nonexistence(&f, degrees, &cfg)?;
            let per_degree: Vec<Value> = report
                .per_degree
                .iter()
                .map(|(n, o)| {
                    let (r, _) = render_outcome(&f.member(*n).expect("checked above"), o);
                    json!({ "degree": n, "outcome": r.outcome, "nodes": r.nodes })
                })
                .collect();
            let verdict = serde_json::to_value(report.verdict)?;
            out.emit(Record::value(
                json!({ "label": label, "family": family, "verdict": verdict, "per_degree": per_degree }),
                format!("({label}) {family} degrees {degrees:?}: {}", verdict.as_str().unwrap_or("?")),
            ));
            match report.verdict {
                Verdict::AllUnsat => {}
                Verdict::Unknown => statuses.push(Status::Unknown),
                Verdict::Realized => statuses.push(Status::Failed),
            }
        }
    }
    Ok(*statuses.iter().max().expect("nonempty"))
}
