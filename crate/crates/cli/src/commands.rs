use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::io::Read;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use anyonic::anyon::{fusion_paths, path_count_transfer, Label};
use anyonic::compiler::{compile, sk_refine, CompilationResult, GateTarget, GateTargetJson};
use anyonic::constants::{kauffman_a, BQP_ACCEPT, BQP_REJECT};
use anyonic::kcode::{is_k_code_with, max_k, OperatorBasis, Subspace, SubspaceJson};
use anyonic::link::{
    count_components, count_minima, insert_measurement_loop, jones_at, kauffman_bracket, plat_closure,
    plat_conjugate, writhe, DiagramJson, LinkDiagram, Orientation,
};
use anyonic::qc::{gate_library, prob_first_qubit_one, Circuit, Gate};
use anyonic::topo::{initialize, prob_via_jones};
use anyonic::BraidWord;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::format::{complex, letters, real};
use crate::{BasisArg, Command, LinkInput, WordInput};

/// A check that ran but did not pass.
#[derive(Debug)]
struct CheckFailed(String);

impl std::fmt::Display for CheckFailed {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for CheckFailed {}

pub fn exit_code(e: &anyhow::Error) -> u8 {
    if e.downcast_ref::<CheckFailed>().is_some() {
        return 2;
    }
    match e.downcast_ref::<anyonic::Error>() {
        Some(
            anyonic::Error::CrossingBudget { .. }
            | anyonic::Error::ResourceLimit { .. }
            | anyonic::Error::LeakageUnsatisfied { .. },
        ) => 2,
        _ => 1,
    }
}

fn read_text(path: &Path) -> Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text = read_text(path)?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

fn read_word(input: &WordInput) -> Result<BraidWord> {
    match (&input.file, &input.letters, input.strands) {
        (Some(path), _, _) => Ok(read_text(path)?.parse::<BraidWord>()?),
        (None, Some(l), Some(n)) => Ok(format!("n={n}\n{l}").parse::<BraidWord>()?),
        (None, None, Some(n)) => Ok(BraidWord::identity(n)),
        _ => Err(anyhow!(anyonic::Error::Parse(
            "give a word file, or --strands (with optional --letters)".into()
        ))),
    }
}

fn read_link(input: &LinkInput) -> Result<LinkDiagram> {
    let d = if let Some(path) = &input.diagram {
        LinkDiagram::from_json(&read_json::<DiagramJson>(path)?)?
    } else {
        let w = read_word(&input.word)?;
        match input.measure {
            Some(pair) => insert_measurement_loop(&plat_conjugate(&w)?, pair)?,
            None => plat_closure(&w)?,
        }
    };
    if let Some(path) = &input.export {
        fs::write(path, serde_json::to_string_pretty(&d.to_json())? + "\n")
            .with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(d)
}

fn emit(json_mode: bool, doc: Value, text: String) -> Result<String> {
    if json_mode {
        Ok(serde_json::to_string_pretty(&doc)? + "\n")
    } else {
        Ok(text)
    }
}

pub fn run(cmd: Command, json_mode: bool) -> Result<String> {
    match cmd {
        Command::Dims { anyons, sector } => {
            let s = Label::new(sector)?;
            let enumerated = fusion_paths(anyons, s).len() as u64;
            let transfer = path_count_transfer(anyons, s);
            if enumerated != transfer {
                bail!(CheckFailed(format!("enumeration {enumerated} ≠ transfer count {transfer}")));
            }
            emit(
                json_mode,
                json!({"anyons": anyons, "sector": sector, "dimension": enumerated}),
                format!("{enumerated}\n"),
            )
        }
        Command::Bracket(input) => {
            let d = read_link(&input)?;
            let a = kauffman_a();
            let b = kauffman_bracket(&d, a)?;
            emit(
                json_mode,
                json!({"a": a, "bracket": b, "crossings": d.crossing_count(),
                       "components": count_components(&d)}),
                format!(
                    "bracket   {}\ncrossings {}\ncomponents {}\n",
                    complex(b),
                    d.crossing_count(),
                    count_components(&d)
                ),
            )
        }
        Command::Jones(input) => {
            let d = read_link(&input)?;
            let o = Orientation::default_for(&d);
            let v = jones_at(&d, &o)?;
            let (c, w, m) = (count_components(&d), writhe(&d, &o), count_minima(&d));
            emit(
                json_mode,
                json!({"jones": v, "t": anyonic::constants::jones_t(), "components": c, "writhe": w, "minima": m}),
                format!("V(e^(2πi/5)) {}\nc {c}\nw {w}\nm {m}\n", complex(v)),
            )
        }
        Command::Simulate { word, pair } => {
            let w = read_word(&word)?;
            let r = initialize(w.strands())?.execute_braid(&w)?;
            let p = r.measure_pair(pair)?.prob0;
            let leak = r.leakage();
            let readout: BTreeMap<String, f64> =
                r.readout_distribution().into_iter().map(|(k, v)| (k.to_string(), v)).collect();
            let mut text = format!("prob(0) {}\nleakage {}\n", real(p), real(leak));
            for (k, v) in &readout {
                let _ = writeln!(text, "  {k} {}", real(*v));
            }
            emit(
                json_mode,
                json!({"strands": w.strands(), "letters": w.letters(), "pair": pair,
                       "prob0": p, "leakage": leak, "readout": readout}),
                text,
            )
        }
        Command::Verify {
            files,
            random,
            strands,
            len,
            seed,
            tol,
        } => {
            let words = match random {
                Some(count) => {
                    let (n, l, s) = (strands.unwrap(), len.unwrap(), seed.unwrap());
                    let mut rng = ChaCha8Rng::seed_from_u64(s);
                    (0..count).map(|_| BraidWord::random(n, l, &mut rng)).collect::<Vec<_>>()
                }
                None if files.is_empty() => bail!(anyonic::Error::Parse(
                    "give word files or --random N --strands S --len L --seed X".into()
                )),
                None => files
                    .iter()
                    .map(|f| Ok(read_text(f)?.parse::<BraidWord>()?))
                    .collect::<Result<Vec<_>>>()?,
            };
            verify(&words, tol, json_mode)
        }
        Command::Compile {
            target,
            depth,
            leakage_tol,
            sk_levels,
            out,
            sidecar,
        } => {
            let t = GateTarget::from_json(&read_json::<GateTargetJson>(&target)?)?;
            let base = compile(&t, depth, leakage_tol)?;
            let r = sk_refine(&t, &base, sk_levels)?;
            if let Some(path) = out {
                fs::write(&path, r.word.to_text()).with_context(|| format!("writing {}", path.display()))?;
            }
            if let Some(path) = sidecar {
                fs::write(&path, serde_json::to_string_pretty(&r.sidecar())? + "\n")
                    .with_context(|| format!("writing {}", path.display()))?;
            }
            emit(
                json_mode,
                json!({"strands": r.word.strands(), "letters": r.word.letters(),
                       "distance": r.distance, "leakage_bound": r.leakage_bound,
                       "depth_searched": r.depth_searched}),
                format!(
                    "{}distance {}\nleakage_bound {}\ndepth_searched {}\n",
                    r.word.to_text(),
                    real(r.distance),
                    real(r.leakage_bound),
                    r.depth_searched
                ),
            )
        }
        Command::Kcode { subspace, k, tol, basis } => {
            let w = Subspace::from_json(&read_json::<SubspaceJson>(&subspace)?)?;
            let basis = match basis {
                BasisArg::MatrixUnits => OperatorBasis::MatrixUnits,
                BasisArg::Weyl => OperatorBasis::Weyl,
            };
            match k {
                Some(k) => {
                    let v = is_k_code_with(&w, k, tol, basis)?;
                    let witness = v.witness.as_ref().map(|wit| {
                        json!({"operator": wit.operator.to_json(), "deviation": wit.deviation})
                    });
                    let mut text = format!("{k}-code: {}\n", if v.holds { "yes" } else { "no" });
                    if let Some(wit) = &v.witness {
                        let _ = writeln!(
                            text,
                            "witness {} on factors {:?} (deviation {})",
                            wit.operator.label,
                            wit.operator.support,
                            real(wit.deviation)
                        );
                    }
                    emit(json_mode, json!({"k": k, "holds": v.holds, "witness": witness}), text)
                }
                None => {
                    let m = max_k(&w, tol)?;
                    emit(json_mode, json!({"max_k": m}), format!("max k {m}\n"))
                }
            }
        }
        Command::Demo { gates, depth } => demo(&gates, depth, json_mode),
    }
}

fn verify(words: &[BraidWord], tol: f64, json_mode: bool) -> Result<String> {
    let mut cases = Vec::new();
    let mut agreed = 0;
    let mut text = String::new();
    for w in words {
        let sim = initialize(w.strands())?.execute_braid(w)?.measure_pair(1)?.prob0;
        let formula = prob_via_jones(w)?.prob0;
        let diff = (sim - formula).abs();
        let ok = diff <= tol;
        agreed += usize::from(ok);
        let _ = writeln!(
            text,
            "{:<5} sim {} formula {} |Δ| {:.3e}  [{}]",
            if ok { "ok" } else { "FAIL" },
            real(sim),
            real(formula),
            diff,
            letters(w.letters())
        );
        cases.push(json!({"strands": w.strands(), "letters": w.letters(),
                          "simulated": sim, "formula": formula, "difference": diff, "agree": ok}));
    }
    let _ = writeln!(text, "{agreed}/{} agree ≤ {tol:e}", words.len());
    let out = emit(
        json_mode,
        json!({"cases": cases, "agreed": agreed, "total": words.len(), "tolerance": tol}),
        text,
    )?;
    if agreed != words.len() {
        print!("{out}");
        bail!(CheckFailed(format!("{} of {} words disagree", words.len() - agreed, words.len())));
    }
    Ok(out)
}

fn classify(p: f64) -> &'static str {
    if p >= BQP_ACCEPT {
        "accept"
    } else if p <= BQP_REJECT {
        "reject"
    } else {
        "undecided"
    }
}

/// For each gate G: p_qc = |G₁₀|² from the circuit model, p_topo = weight of
/// pair channel 2 after the compiled braid; |p_topo − p_qc| ≤ 2·distance.
fn demo(gates: &[String], depth: usize, json_mode: bool) -> Result<String> {
    let lib = gate_library();
    let mut rows = Vec::new();
    let mut text = String::from("gate   p(circuit)      p(anyons)       distance        verdict    word\n");
    let mut all_ok = true;
    for name in gates {
        let m = lib
            .get(name.as_str())
            .ok_or_else(|| anyhow!(anyonic::Error::Parse(format!("unknown gate {name:?}"))))?;
        if m.nrows() != 2 {
            bail!(anyonic::Error::Parse(format!("demo gates act on one qubit; {name} does not")));
        }
        let p_qc = prob_first_qubit_one(&Circuit::new(1, vec![Gate::named(name, vec![0])?])?);
        let target = GateTarget::single(m.clone())?;
        let r: CompilationResult = compile(&target, depth, 1e-2)?;
        let reg = initialize(4)?.execute_braid(&r.word)?;
        let p_topo = 1.0 - reg.measure_pair(1)?.prob0 - reg.leakage();
        let within = (p_topo - p_qc).abs() <= 2.0 * r.distance + 1e-12;
        all_ok &= within;
        let (cq, ct) = (classify(p_qc), classify(p_topo));
        let _ = writeln!(
            text,
            "{:<6} {} {} {} {:<10} {}{}",
            name,
            real(p_qc),
            real(p_topo),
            real(r.distance),
            ct,
            letters(r.word.letters()),
            if within { "" } else { "  (bound violated)" }
        );
        rows.push(json!({"gate": name, "letters": r.word.letters(), "distance": r.distance,
                         "p_circuit": p_qc, "p_anyons": p_topo, "within_bound": within,
                         "circuit_verdict": cq, "anyon_verdict": ct}));
    }
    let _ = writeln!(text, "thresholds: accept ≥ 2/3, reject ≤ 1/3");
    let out = emit(json_mode, json!({"depth": depth, "gates": rows}), text)?;
    if !all_ok {
        print!("{out}");
        bail!(CheckFailed("perturbation bound violated".into()));
    }
    Ok(out)
}
