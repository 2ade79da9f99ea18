use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use gassmann_core::fp::{
    abelianized_relation_matrix, hom_search, parse_presentation, parse_words, reidemeister_schreier, todd_coxeter,
    Presentation,
};
use gassmann_core::gassmann::{almost_conjugate, search_gassmann_pairs, ClassMode, GassmannCertificate};
use gassmann_core::obstruction::{
    build_q8abc, csinv, demo_m23, demo_s16, verify_cs_finite, CsReport, CsVerification, GroupDescription, NamedGroup,
    Phi, Pi, PiInput, DEFAULT_M23_PATH,
};
use gassmann_core::perm::text::{parse_generators, parse_perm_group};
use gassmann_core::perm::{abelian_invariants_of_perm_group, PermGroup};
use gassmann_core::snf::{abelian_invariants, s_invariant, AbelianInvariants};
use serde_json::{json, Value};

use crate::config::RunConfig;
use crate::{CliError, Command, DemoName, ModeArg};

/// What a command produced: the exit code and the same content as text and JSON.
pub struct Outcome {
    pub exit: u8,
    pub text: String,
    pub json: Value,
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn load_group(path: &Path) -> Result<PermGroup, CliError> {
    parse_perm_group(&read(path)?).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn load_presentation(path: &Path) -> Result<Presentation, CliError> {
    parse_presentation(&read(path)?).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn is_presentation(path: &Path) -> bool {
    path.extension().is_some_and(|e| e == "fp")
}

fn stem(path: &Path) -> String {
    path.file_stem().map_or_else(|| path.display().to_string(), |s| s.to_string_lossy().into_owned())
}

fn class_mode(m: ModeArg) -> ClassMode<'static> {
    match m {
        ModeArg::Auto => ClassMode::Auto,
        ModeArg::Explicit => ClassMode::Explicit,
        ModeArg::CycleType => ClassMode::CycleType,
    }
}

fn to_json<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable report")
}

fn describe(label: &str, g: &GroupDescription) -> String {
    format!("{label}: {} (order {}, degree {})\n", g.name, g.order, g.degree)
}

fn certificate_text(cert: &GassmannCertificate) -> String {
    let mut out = format!("almost conjugate in {}: {}\n", cert.ambient, cert.verdict);
    for c in &cert.classes {
        let _ = writeln!(out, "  class {}: |C∩H| = {}, |C∩K| = {}", c.key, c.in_h, c.in_k);
    }
    out
}

fn report_text(r: &CsReport) -> String {
    let mut out = format!("pi: {}\n", r.pi);
    match serde_json::to_value(&r.phi).expect("serializable") {
        Value::String(s) => {
            let _ = writeln!(out, "phi: {s}");
        }
        other => {
            let _ = writeln!(out, "phi: {}", other["images"]);
        }
    }
    out.push_str(&describe("G", &r.g));
    out.push_str(&describe("H", &r.h));
    out.push_str(&describe("K", &r.k));
    out.push_str(&certificate_text(&r.certificate));
    let _ = writeln!(out, "S(H) = {}", r.s_h);
    let _ = writeln!(out, "S(K) = {}", r.s_k);
    let _ = writeln!(out, "csinv = {}", r.csinv);
    let _ = writeln!(out, "verdict: {}", r.verdict.as_str());
    let _ = writeln!(out, "notes: {}", r.budget_notes);
    out
}

fn report_exit(r: &CsReport) -> u8 {
    match r.verdict {
        gassmann_core::obstruction::Verdict::Obstructed => 1,
        gassmann_core::obstruction::Verdict::Consistent => 0,
        gassmann_core::obstruction::Verdict::Unknown => 3,
    }
}

fn verification_outcome(v: &CsVerification) -> Outcome {
    let mut text = format!(
        "pi: {}\nverdict: {}\nquotients examined: {}\npairs examined: {}\nnotes: {}\n",
        v.pi, v.verdict, v.quotients_examined, v.pairs_examined, v.budget_notes
    );
    for (i, r) in v.reports.iter().enumerate() {
        let _ = writeln!(text, "-- report {}", i + 1);
        text.push_str(&report_text(r));
    }
    let exit = if v.is_obstructed() {
        1
    } else if v.is_unknown() {
        3
    } else {
        0
    };
    Outcome {
        exit,
        text,
        json: to_json(v),
    }
}

fn invariants_outcome(inv: &AbelianInvariants, extra: Vec<(&str, Value)>, extra_text: String) -> Outcome {
    let s = s_invariant(inv);
    let mut json = json!({ "abelianization": inv.to_string(), "invariants": inv, "S": s });
    for (k, v) in extra {
        json[k] = v;
    }
    Outcome {
        exit: 0,
        text: format!("{extra_text}abelianization = {inv}\nS = {s}\n"),
        json,
    }
}

fn s_invariant_cmd(file: &Path, subgroup: Option<&str>, config: &RunConfig) -> Result<Outcome, CliError> {
    if !is_presentation(file) {
        if subgroup.is_some() {
            return Err(CliError::Input("--subgroup applies to presentations only".into()));
        }
        let g = load_group(file)?;
        let inv = abelian_invariants_of_perm_group(&g);
        return Ok(invariants_outcome(&inv, vec![("order", json!(g.order().to_string()))], String::new()));
    }
    let p = load_presentation(file)?;
    let (sub, extra, text) = match subgroup {
        None => (p.clone(), vec![("index", json!(1))], String::new()),
        Some(words) => {
            let words = parse_words(&p, words)?;
            let table = todd_coxeter(&p, &words, config.limits.max_cosets)?;
            let n = table.num_cosets();
            let sub = reidemeister_schreier(&p, &table)?;
            (sub, vec![("index", json!(n))], format!("index = {n}\n"))
        }
    };
    let m = abelianized_relation_matrix(&sub);
    let inv = abelian_invariants(&m, sub.num_generators()).map_err(|e| CliError::Input(e.to_string()))?;
    Ok(invariants_outcome(&inv, extra, text))
}

fn coset_enum_cmd(file: &Path, subgroup: Option<&str>, config: &RunConfig) -> Result<Outcome, CliError> {
    let p = load_presentation(file)?;
    let words = match subgroup {
        Some(w) => parse_words(&p, w)?,
        None => Vec::new(),
    };
    let table = todd_coxeter(&p, &words, config.limits.max_cosets)?;
    let n = table.num_cosets();
    Ok(Outcome {
        exit: 0,
        text: format!("index = {n}\n"),
        json: json!({ "index": n, "generators": p.num_generators(), "max_cosets": config.limits.max_cosets }),
    })
}

fn hom_search_cmd(pres: &Path, group: &Path, surjective: bool, config: &RunConfig) -> Result<Outcome, CliError> {
    let p = load_presentation(pres)?;
    let g = load_group(group)?;
    let search = hom_search(&p, &g, surjective, config.limits.hom_node_budget)?;
    let homs: Vec<Vec<String>> = search
        .homs
        .iter()
        .map(|h| h.images().iter().map(|x| x.to_cycle_string()).collect())
        .collect();
    let mut text = format!(
        "homomorphisms = {}\nexhaustive = {}\nnodes = {}\n",
        homs.len(),
        search.exhaustive,
        search.nodes
    );
    for h in &homs {
        let _ = writeln!(text, "  {}", h.join(", "));
    }
    Ok(Outcome {
        exit: if search.exhaustive { 0 } else { 3 },
        text,
        json: json!({
            "count": homs.len(),
            "exhaustive": search.exhaustive,
            "nodes": search.nodes,
            "surjective_only": surjective,
            "homomorphisms": homs,
        }),
    })
}

fn check_gassmann_cmd(g: &Path, h: &Path, k: &Path, mode: ModeArg) -> Result<Outcome, CliError> {
    let (g, h, k) = (load_group(g)?, load_group(h)?, load_group(k)?);
    let (ok, cert) = almost_conjugate(&g, &h, &k, class_mode(mode))?;
    Ok(Outcome {
        exit: if ok { 0 } else { 1 },
        text: certificate_text(&cert),
        json: to_json(&cert),
    })
}

fn search_pairs_cmd(path: &Path) -> Result<Outcome, CliError> {
    let g = load_group(path)?;
    let pairs = search_gassmann_pairs(&g)?;
    let mut text = format!("group order = {}\npairs = {}\n", g.order(), pairs.len());
    let mut list = Vec::new();
    for (i, pair) in pairs.iter().enumerate() {
        let h = GroupDescription::of("H", &pair.h);
        let k = GroupDescription::of("K", &pair.k);
        let _ = writeln!(text, "-- pair {}", i + 1);
        text.push_str(&describe("H", &h));
        let _ = writeln!(text, "   generators: {}", h.generators.join(", "));
        text.push_str(&describe("K", &k));
        let _ = writeln!(text, "   generators: {}", k.generators.join(", "));
        text.push_str(&certificate_text(&pair.certificate));
        list.push(json!({ "H": h, "K": k, "certificate": pair.certificate }));
    }
    Ok(Outcome {
        exit: 0,
        text,
        json: json!({ "group_order": g.order().to_string(), "pairs": list }),
    })
}

fn csinv_cmd(pi: &Path, phi: &str, triple: &[PathBuf], mode: ModeArg, config: &RunConfig) -> Result<Outcome, CliError> {
    let [g, h, k] = triple else {
        return Err(CliError::Input("--triple needs G, H and K".into()));
    };
    let group = if is_presentation(pi) {
        Pi::Fp(load_presentation(pi)?)
    } else {
        Pi::Perm(load_group(pi)?)
    };
    let phi = if phi == "identity" {
        Phi::Identity
    } else {
        let text = read(Path::new(phi))?;
        let (_, images) = parse_generators(&text).map_err(|e| CliError::Input(format!("{phi}: {e}")))?;
        Phi::Images(images)
    };
    let input = PiInput {
        name: stem(pi),
        group,
    };
    let named = |p: &PathBuf| -> Result<NamedGroup, CliError> { Ok(NamedGroup::new(stem(p), load_group(p)?)) };
    let report = csinv(
        &input,
        &phi,
        &named(g)?,
        &named(h)?,
        &named(k)?,
        class_mode(mode),
        &config.limits,
    )?;
    Ok(Outcome {
        exit: report_exit(&report),
        text: report_text(&report),
        json: to_json(&report),
    })
}

fn demo_cmd(which: DemoName, n: usize, data: Option<&Path>, config: &RunConfig) -> Result<Outcome, CliError> {
    match which {
        DemoName::S16 => {
            let report = demo_s16(n, &config.limits)?;
            Ok(Outcome {
                exit: report_exit(&report),
                text: report_text(&report),
                json: to_json(&report),
            })
        }
        DemoName::M23 => {
            let path = data.map_or_else(|| PathBuf::from(DEFAULT_M23_PATH), Path::to_path_buf);
            let d = demo_m23(&path, &config.limits)?;
            let text = format!(
                "|M23| = {}\n4-transitive: {}\nheptads = {}\npair action transitive: {}\nheptad action transitive: {}\n\
                 |heptad stabilizer| = {}\n|pair stabilizer| = {}\npermutation characters equal: {}\n{}",
                d.order,
                d.four_transitive,
                d.heptads,
                d.pair_action_transitive,
                d.heptad_action_transitive,
                d.heptad_stabilizer_order,
                d.pair_stabilizer_order,
                d.equivalent,
                report_text(&d.report)
            );
            Ok(Outcome {
                exit: report_exit(&d.report),
                text,
                json: json!({
                    "order": d.order,
                    "four_transitive": d.four_transitive,
                    "heptads": d.heptads,
                    "pair_action_transitive": d.pair_action_transitive,
                    "heptad_action_transitive": d.heptad_action_transitive,
                    "heptad_stabilizer_order": d.heptad_stabilizer_order,
                    "pair_stabilizer_order": d.pair_stabilizer_order,
                    "equivalent": d.equivalent,
                    "report": d.report,
                }),
            })
        }
    }
}

pub(crate) fn dispatch(command: Command, config: &RunConfig) -> Result<Outcome, CliError> {
    match command {
        Command::Demo { which, n, data } => demo_cmd(which, n, data.as_deref(), config),
        Command::CheckGassmann { g, h, k, mode } => check_gassmann_cmd(&g, &h, &k, mode),
        Command::SInvariant { file, subgroup } => s_invariant_cmd(&file, subgroup.as_deref(), config),
        Command::Csinv { pi, phi, triple, mode } => csinv_cmd(&pi, &phi, &triple, mode, config),
        Command::VerifyCs { group } => {
            let g = load_group(&group)?;
            Ok(verification_outcome(&verify_cs_finite(&NamedGroup::new(stem(&group), g), &config.limits)?))
        }
        Command::VerifyCsQ8abc { a, b, c } => {
            let g = build_q8abc(a, b, c)?;
            let name = format!("Q({},{b},{c})", 8 * a);
            Ok(verification_outcome(&verify_cs_finite(&NamedGroup::new(name, g), &config.limits)?))
        }
        Command::SearchPairs { group } => search_pairs_cmd(&group),
        Command::CosetEnum { presentation, subgroup } => coset_enum_cmd(&presentation, subgroup.as_deref(), config),
        Command::HomSearch {
            presentation,
            group,
            surjective,
        } => hom_search_cmd(&presentation, &group, surjective, config),
    }
}
