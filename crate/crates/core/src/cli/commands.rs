use std::fs;
use std::io::Read;

use serde::Serialize;
use serde_json::{json, Value};

use super::manifest::{bigint_value, sha256_hex, store, InputDigest, Manifest};
use super::{Cli, CliError, Command, FibreKind, EXIT_INCONCLUSIVE, EXIT_NEGATIVE, EXIT_SUCCESS};
use crate::constructions::{
    acyclic_subdirect, attached_free_product, conjugacy_gadget, fibre_membership, gadget_conjugate,
    kill_finite_quotients, rips_wise, s_generators, super_perfectify, theta_tilde_generators,
    u_generators, Attachment, GeneratingSet, PairWord, SuperPerfectError,
};
use crate::freewords::{conjugacy_test, parse_word, Alphabet, Word};
use crate::homology::{h1, h2_aspherical, H1Report};
use crate::oracle::{AutoOracle, Decision, WordOracle};
use crate::presentations::{
    direct_product_presentation, kill_generators, FinitePresentation, Justification,
    PresentationMorphism,
};
use crate::quotients::{finite_quotient_certificate, todd_coxeter, EnumerationStatus};
use crate::smallcancel::{metric_certificate, Ratio, Verdict};
use crate::uce::{miller_uce, UceError, UcePresentation, WitnessStrategy};

fn input_err(e: impl std::fmt::Display) -> CliError {
    CliError::Input(e.to_string())
}

fn to_value(v: impl Serialize) -> Value {
    serde_json::to_value(v).expect("report values serialise")
}

fn decision_code(d: &Decision) -> i32 {
    match d {
        Decision::Trivial => EXIT_SUCCESS,
        Decision::Nontrivial => EXIT_NEGATIVE,
        Decision::Inconclusive(_) => EXIT_INCONCLUSIVE,
    }
}

struct Job<'a> {
    cli: &'a Cli,
    manifest: Manifest,
    files: Vec<(String, String)>,
}

impl<'a> Job<'a> {
    fn load(&mut self, name: &str, stdin: &mut dyn Read) -> Result<FinitePresentation, CliError> {
        let bytes = if name == "-" {
            let mut b = Vec::new();
            stdin.read_to_end(&mut b)?;
            b
        } else {
            fs::read(name).map_err(|e| CliError::Input(format!("cannot read {name}: {e}")))?
        };
        self.manifest.inputs.push(InputDigest {
            name: name.to_string(),
            sha256: sha256_hex(&bytes),
            bytes: bytes.len(),
        });
        let text = String::from_utf8(bytes)
            .map_err(|_| CliError::Input(format!("{name} is not valid UTF-8")))?;
        let p = FinitePresentation::parse(&text)
            .map_err(|e| CliError::Input(format!("{name}: {e}")))?;
        self.count_pres("input", &p);
        Ok(match &self.cli.assert_aspherical {
            Some(note) => p.with_asphericity(note.clone()),
            None => p,
        })
    }

    fn count(&mut self, key: &str, v: impl Serialize) {
        self.manifest.counts.insert(key.to_string(), to_value(v));
    }

    fn count_pres(&mut self, prefix: &str, p: &FinitePresentation) {
        self.count(&format!("{prefix}_generators"), p.num_generators());
        self.count(&format!("{prefix}_relators"), p.num_relators());
    }

    fn certificate(&mut self, key: &str, v: impl Serialize) {
        self.manifest
            .certificates
            .insert(key.to_string(), to_value(v));
    }

    fn budget(&mut self, key: &str, v: impl Serialize) {
        self.manifest.budgets.insert(key.to_string(), to_value(v));
    }

    fn note(&mut self, s: &str) {
        self.manifest.provenance.push(s.to_string());
    }

    fn file(&mut self, name: &str, content: String) {
        self.files.push((name.to_string(), content));
    }

    fn presentation(&mut self, name: &str, p: &FinitePresentation) {
        self.file(name, format!("{p}\n"));
    }

    fn json_file(&mut self, name: &str, v: &Value) {
        let mut s = serde_json::to_string_pretty(v).expect("json");
        s.push('\n');
        self.file(name, s);
    }
}

pub(super) fn execute(
    cli: &Cli,
    command_line: String,
    stdin: &mut dyn Read,
) -> Result<Manifest, CliError> {
    let mut job = Job {
        cli,
        manifest: Manifest::new(command_line),
        files: Vec::new(),
    };
    job.budget("steps", cli.budget);
    job.budget("max_cosets", cli.max_cosets);
    let (code, result) = match &cli.command {
        Command::Homology { file } => homology(&mut job, file, stdin)?,
        Command::Uce { file, search } => uce(&mut job, file, *search, stdin)?,
        Command::Rips { file } => rips(&mut job, file, stdin)?,
        Command::Killfq { file } => killfq(&mut job, file, stdin)?,
        Command::Superperfectify { file, search } => superperfect(&mut job, file, *search, stdin)?,
        Command::Fibre { kind, file } => fibre(&mut job, *kind, file, stdin)?,
        Command::Gadget {
            file,
            word,
            generator,
        } => gadget(&mut job, file, word, generator.as_deref(), stdin)?,
        Command::Word { file, word } => word_problem(&mut job, file, word, stdin)?,
        Command::VerifySc { file, lambda } => verify_sc(&mut job, file, *lambda, stdin)?,
        Command::Homsearch {
            file,
            max_degree,
            no_prune,
            shards,
        } => homsearch(&mut job, file, *max_degree, !*no_prune, *shards, stdin)?,
        Command::Order { file, subgroup } => order(&mut job, file, subgroup, stdin)?,
        Command::BgPipeline { file } => bg_pipeline(&mut job, file, stdin)?,
    };
    let Job {
        mut manifest,
        files,
        ..
    } = job;
    manifest.exit_code = code;
    manifest.result = result;
    manifest.outputs = store(cli.out.as_deref(), &files)?;
    if let Some(dir) = &cli.out {
        fs::write(dir.join("manifest.json"), manifest.to_json())?;
    }
    Ok(manifest)
}

type Outcome = Result<(i32, Value), CliError>;

fn h1_json(p: &FinitePresentation, r: &H1Report) -> Value {
    json!({
        "rank": r.group.rank,
        "torsion": r.group.torsion.iter().map(bigint_value).collect::<Vec<_>>(),
        "generator_images": r.generator_images.iter().enumerate().map(|(g, img)| json!({
            "generator": p.alphabet().name(g),
            "image": img.iter().map(bigint_value).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
    })
}

fn render(w: &Word, a: &Alphabet) -> String {
    w.display(a).to_string()
}

fn word_in(p: &FinitePresentation, text: &str) -> Result<Word, CliError> {
    parse_word(text, p.alphabet()).map_err(|e| CliError::Input(format!("word {text:?}: {e}")))
}

fn homology(job: &mut Job, file: &str, stdin: &mut dyn Read) -> Outcome {
    let p = job.load(file, stdin)?;
    let r = h1(&p);
    let h2 = match h2_aspherical(&p) {
        Ok(h) => json!({"rank": h.group.rank, "provenance": h.provenance}),
        Err(_) => json!("unavailable: not flagged aspherical"),
    };
    job.note("first homology from the Smith normal form of the relator exponent matrix");
    if p.asphericity().is_some() {
        job.note("second homology as the kernel of the relator exponent matrix, valid for aspherical presentations");
    }
    Ok((EXIT_SUCCESS, json!({"h1": h1_json(&p, &r), "h2": h2})))
}

fn strategy(job: &Job, search: bool) -> WitnessStrategy {
    if search {
        WitnessStrategy::Search {
            budget: job.cli.budget,
        }
    } else {
        WitnessStrategy::Constructive
    }
}

fn witnesses_json(u: &UcePresentation) -> Value {
    let p = &u.base;
    json!({
        "witnesses": u.witnesses.iter().map(|w| json!({
            "generator": p.alphabet().name(w.generator),
            "c": p.render_word(&w.c),
            "rho": w.rho.factors.iter().map(|f| json!({
                "conjugator": p.render_word(&f.conjugator),
                "relator": f.relator,
                "sign": f.sign,
            })).collect::<Vec<_>>(),
            "expanded": p.render_word(&w.rho.expanded),
            "verified": w.verify(p),
        })).collect::<Vec<_>>(),
        "kernel_generators": u.kernel_generators.iter().map(|z| u.result.render_word(z)).collect::<Vec<_>>(),
        "dropped": u.dropped.iter().map(|d| json!({
            "generator": p.alphabet().name(d.generator),
            "relator": d.relator,
        })).collect::<Vec<_>>(),
    })
}

fn record_uce(job: &mut Job, u: &UcePresentation, name: &str) -> Value {
    let w = witnesses_json(u);
    job.presentation(name, &u.result);
    job.json_file("witnesses.json", &w);
    job.count_pres("extension", &u.result);
    job.count("dropped_commutators", u.dropped.len());
    let all = u.witnesses.iter().all(|w| w.verify(&u.base));
    job.certificate("witnesses_verified", all);
    job.note("universal central extension: relators x*c_x and [x, r] for every generator x and relator r, freely trivial commutators omitted");
    json!({
        "generators": u.result.num_generators(),
        "relators": u.result.num_relators(),
        "dropped": u.dropped.len(),
        "witnesses_verified": all,
    })
}

fn uce_failure(p: &FinitePresentation, e: UceError) -> (i32, Value) {
    match e {
        UceError::NotPerfect(r) => (
            EXIT_NEGATIVE,
            json!({"perfect": false, "h1": h1_json(p, &r)}),
        ),
        UceError::BudgetExhausted { generator, steps } => (
            EXIT_INCONCLUSIVE,
            json!({
                "inconclusive": "witness search ran out of budget",
                "generator": p.alphabet().name(generator),
                "steps": steps,
            }),
        ),
        UceError::CoefficientOverflow { generator } => (
            EXIT_INCONCLUSIVE,
            json!({
                "inconclusive": "witness exponent too large to expand",
                "generator": p.alphabet().name(generator),
            }),
        ),
    }
}

fn uce(job: &mut Job, file: &str, search: bool, stdin: &mut dyn Read) -> Outcome {
    let p = job.load(file, stdin)?;
    job.budget(
        "witness_search",
        if search {
            "enumeration"
        } else {
            "linear algebra"
        },
    );
    match miller_uce(&p, strategy(job, search)) {
        Ok(u) => Ok((EXIT_SUCCESS, record_uce(job, &u, "uce.pres"))),
        Err(e) => Ok(uce_failure(&p, e)),
    }
}

fn rips(job: &mut Job, file: &str, stdin: &mut dyn Read) -> Outcome {
    let p = job.load(file, stdin)?;
    let out = rips_wise(&p);
    let gamma = &out.gamma;
    job.presentation("gamma.pres", gamma);
    let names: Vec<&str> = out
        .kernel_generators
        .iter()
        .map(|&a| gamma.alphabet().name(a))
        .collect();
    let images: Vec<Value> = out
        .p
        .images
        .iter()
        .enumerate()
        .map(|(g, w)| json!({"generator": gamma.alphabet().name(g), "image": p.render_word(w)}))
        .collect();
    job.json_file(
        "rips.json",
        &json!({"kernel_generators": names, "images": images, "window": out.window}),
    );
    job.count_pres("gamma", gamma);
    let (killed, _) = kill_generators(gamma, &out.kernel_generators).map_err(input_err)?;
    let h1_ok = h1(&killed).group == h1(&p).group;
    job.certificate("metric", &out.certificate);
    job.certificate("kernel_quotient_h1_matches", h1_ok);
    job.certificate(
        "morphism_verified",
        out.p.justification == Justification::Verified,
    );
    job.note("Rips-Wise transform: fillers are disjoint windows of a ternary de Bruijn sequence on three new letters");
    let code = if out.certificate.passed {
        EXIT_SUCCESS
    } else {
        EXIT_NEGATIVE
    };
    Ok((code, to_value(out.counts())))
}

fn killfq(job: &mut Job, file: &str, stdin: &mut dyn Read) -> Outcome {
    let p = job.load(file, stdin)?;
    let k = kill_finite_quotients(&p, &Attachment::default()).map_err(input_err)?;
    job.presentation("full.pres", &k.full);
    job.presentation("simplified.pres", &k.simplified);
    job.count_pres("full", &k.full);
    job.count_pres("simplified", &k.simplified);
    let hf = h1(&k.full);
    let same = hf.group == h1(&k.simplified).group;
    job.certificate("full_h1", &hf.group);
    job.certificate("simplified_h1_matches", same);
    job.note("one copy of Higman's group per input generator, the generator identified with the copy's d");
    job.note("simplified form: input generators eliminated through the identifying relators");
    Ok((
        EXIT_SUCCESS,
        json!({"copies": k.copies.len(), "perfect": hf.group.is_trivial()}),
    ))
}

fn superperfect(job: &mut Job, file: &str, search: bool, stdin: &mut dyn Read) -> Outcome {
    let p = job.load(file, stdin)?;
    match super_perfectify(&p, &Attachment::default(), strategy(job, search)) {
        Ok(o) => {
            job.presentation("killed.pres", &o.killed.full);
            job.count_pres("killed", &o.killed.full);
            job.note("one copy of Higman's group per input generator, the generator identified with the copy's d");
            let mut summary = record_uce(job, &o.uce, "superperfect.pres");
            let h = h1(o.presentation());
            job.certificate("h1", &h.group);
            summary["h1_trivial"] = json!(h.group.is_trivial());
            Ok((EXIT_SUCCESS, summary))
        }
        Err(SuperPerfectError::Presentation(e)) => Err(input_err(e)),
        Err(SuperPerfectError::NotPerfect(r)) => {
            Ok((EXIT_NEGATIVE, json!({"perfect": false, "h1": r.group})))
        }
        Err(SuperPerfectError::Uce(e)) => Ok(uce_failure(&p, e)),
    }
}

fn generating_set_json(set: &GeneratingSet, factor: &Alphabet) -> Value {
    json!({
        "kind": set.kind,
        "ambient_generators": set.ambient.alphabet().symbols(),
        "elements": set.elements.iter().map(|w| set.ambient.render_word(w)).collect::<Vec<_>>(),
        "pairs": set.pairs.iter().map(|pw| json!([render(&pw.left, factor), render(&pw.right, factor)])).collect::<Vec<_>>(),
    })
}

fn identity_morphism(p: &FinitePresentation) -> Result<PresentationMorphism, CliError> {
    let f = FinitePresentation::free(p.alphabet().clone());
    let images = (0..p.num_generators()).map(Word::generator).collect();
    PresentationMorphism::new(f, p.clone(), images, "quotient map").map_err(input_err)
}

/// Checks every pair against the fibre of `q`, returning the exit code and
/// per-element report.
fn check_members(
    set: &GeneratingSet,
    q: &PresentationMorphism,
    oracle: &AutoOracle<'_>,
    factor: &Alphabet,
) -> (i32, Vec<Value>) {
    let mut code = EXIT_SUCCESS;
    let rows: Vec<Value> = set
        .pairs
        .iter()
        .enumerate()
        .map(|(i, pw)| {
            let d = match fibre_membership(pw, q, oracle) {
                Ok(true) => Decision::Trivial,
                Ok(false) => Decision::Nontrivial,
                Err(why) => Decision::Inconclusive(why),
            };
            code = code.max(match d {
                Decision::Trivial => EXIT_SUCCESS,
                Decision::Nontrivial => EXIT_NEGATIVE,
                Decision::Inconclusive(_) => EXIT_INCONCLUSIVE,
            });
            json!({
                "index": i,
                "pair": [render(&pw.left, factor), render(&pw.right, factor)],
                "member": match d {
                    Decision::Trivial => json!(true),
                    Decision::Nontrivial => json!(false),
                    Decision::Inconclusive(why) => json!(format!("inconclusive: {why}")),
                },
            })
        })
        .collect();
    // A non-member outranks an inconclusive element.
    let code = if rows.iter().any(|r| r["member"] == json!(false)) {
        EXIT_NEGATIVE
    } else {
        code
    };
    (code, rows)
}

fn fibre(job: &mut Job, kind: FibreKind, file: &str, stdin: &mut dyn Read) -> Outcome {
    let p = job.load(file, stdin)?;
    let (set, q, factor) = match kind {
        FibreKind::S => {
            job.note("S: diagonal generators and (r, 1) for each relator, in the square of the free group");
            (
                s_generators(&p).map_err(input_err)?,
                identity_morphism(&p)?,
                p.alphabet().clone(),
            )
        }
        FibreKind::U => {
            let r = rips_wise(&p);
            job.note("U: kernel letters of the Rips group on either side plus diagonal generators");
            job.certificate("rips_metric", &r.certificate);
            (
                u_generators(&r).map_err(input_err)?,
                r.p.clone(),
                r.gamma.alphabet().clone(),
            )
        }
        FibreKind::Theta => {
            let k = kill_finite_quotients(&p, &Attachment::default()).map_err(input_err)?;
            let a = acyclic_subdirect(&k).map_err(input_err)?;
            job.note("theta: diagonal generators of the attached free product plus (v, 1) for each rewritten input relator");
            job.certificate("predicted_h1", &a.predicted_h1);
            let f = a.h.alphabet().clone();
            (a.theta, a.q, f)
        }
        FibreKind::ThetaTilde => {
            let k = kill_finite_quotients(&p, &Attachment::default()).map_err(input_err)?;
            let a = acyclic_subdirect(&k).map_err(input_err)?;
            let r = rips_wise(&attached_free_product(&k));
            let set = theta_tilde_generators(&k, &r).map_err(input_err)?;
            let images =
                r.p.images
                    .iter()
                    .map(|w| a.q.apply(w))
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(input_err)?;
            let q = PresentationMorphism::new(
                r.gamma.clone(),
                k.simplified.clone(),
                images,
                "Rips map followed by the labelling of the attached copies",
            )
            .map_err(input_err)?;
            job.note("theta-tilde: theta read in the Rips group of the attached free product plus its kernel letters on either side");
            job.certificate("rips_metric", &r.certificate);
            (set, q, r.gamma.alphabet().clone())
        }
    };
    let oracle = AutoOracle::select(&q.target, job.cli.max_cosets);
    let (code, rows) = check_members(&set, &q, &oracle, &factor);
    job.presentation("ambient.pres", &set.ambient);
    job.json_file("generators.json", &generating_set_json(&set, &factor));
    job.count_pres("ambient", &set.ambient);
    job.count("elements", set.len());
    Ok((
        code,
        json!({"kind": set.kind, "oracle": oracle.kind(), "membership": rows}),
    ))
}

fn gadget(
    job: &mut Job,
    file: &str,
    word: &str,
    generator: Option<&str>,
    stdin: &mut dyn Read,
) -> Outcome {
    let p = job.load(file, stdin)?;
    let w = word_in(&p, word)?;
    let a = match generator {
        Some(name) => p.generator(name).map_err(input_err)?,
        None if p.num_generators() > 0 => 0,
        None => return Err(CliError::Input("presentation has no generators".into())),
    };
    let (conj, diag) = conjugacy_gadget(&w, a);
    let identity = gadget_conjugate(&w, a) == conj;
    let conj_free = conjugacy_test(
        &[conj.left.clone(), conj.right.clone()],
        &[diag.left.clone(), diag.right.clone()],
    )
    .map_err(input_err)?
    .is_some();
    let q = identity_morphism(&p)?;
    let oracle = AutoOracle::select(&p, job.cli.max_cosets);
    let member = match fibre_membership(&PairWord::new(w.clone(), Word::empty()), &q, &oracle) {
        Ok(true) => Decision::Trivial,
        Ok(false) => Decision::Nontrivial,
        Err(why) => Decision::Inconclusive(why),
    };
    job.certificate("gadget_identity", identity);
    job.note("conjugacy gadget: (w,1)^-1 (a,a) (w,1) in the square of the free group, conjugator tested against the fibre over the input group");
    let a_ = p.alphabet();
    let code = if identity {
        decision_code(&member)
    } else {
        EXIT_INCONCLUSIVE
    };
    Ok((
        code,
        json!({
            "conjugate": [render(&conj.left, a_), render(&conj.right, a_)],
            "diagonal": [render(&diag.left, a_), render(&diag.right, a_)],
            "identity_holds": identity,
            "conjugate_in_free_square": conj_free,
            "conjugator_in_fibre": member,
            "oracle": oracle.kind(),
        }),
    ))
}

fn word_problem(job: &mut Job, file: &str, word: &str, stdin: &mut dyn Read) -> Outcome {
    let p = job.load(file, stdin)?;
    let w = word_in(&p, word)?;
    let oracle = AutoOracle::select(&p, job.cli.max_cosets);
    let (decision, trace) = match &oracle {
        AutoOracle::Dehn(d) => {
            let o = d.reduce(&w);
            let sound =
                o.certificate.verify(&p) && o.certificate.expanded.mul(&o.residue) == w.reduced();
            job.certificate("reduction_certificate_verified", sound);
            job.note("Dehn's algorithm over a C'(1/6) presentation, leftmost longest replacement");
            let d = match o.verdict {
                Verdict::Trivial => Decision::Trivial,
                Verdict::Nontrivial => Decision::Nontrivial,
            };
            let trace = json!({
                "residue": p.render_word(&o.residue),
                "steps": o.steps,
                "certificate_factors": o.certificate.factors.len(),
            });
            (d, trace)
        }
        other => (other.decide(&w), Value::Null),
    };
    Ok((
        decision_code(&decision),
        json!({
            "word": p.render_word(&w),
            "oracle": oracle.kind(),
            "decision": decision,
            "trace": trace,
        }),
    ))
}

fn verify_sc(job: &mut Job, file: &str, lambda: Ratio, stdin: &mut dyn Read) -> Outcome {
    let p = job.load(file, stdin)?;
    let c = metric_certificate(&p, lambda);
    job.certificate("metric", &c);
    job.note("exhaustive piece comparison over all rotations of relators and their inverses");
    let code = if c.passed {
        EXIT_SUCCESS
    } else {
        EXIT_NEGATIVE
    };
    Ok((code, to_value(&c)))
}

fn homsearch(
    job: &mut Job,
    file: &str,
    max_degree: usize,
    prune: bool,
    shards: usize,
    stdin: &mut dyn Read,
) -> Outcome {
    if max_degree < 2 {
        return Err(CliError::Input("--max-degree must be at least 2".into()));
    }
    let p = job.load(file, stdin)?;
    job.budget("max_degree", max_degree);
    job.budget("prune", prune);
    job.budget("shards", shards.max(1));
    let r = finite_quotient_certificate(&p, max_degree, prune, shards);
    job.certificate("finite_quotients", &r);
    job.note(
        "exhaustive backtracking over assignments into symmetric groups, checked on every relator",
    );
    let mut v = to_value(&r);
    let code = match &r.outcome {
        crate::quotients::CertificateOutcome::Certified { .. } => EXIT_SUCCESS,
        crate::quotients::CertificateOutcome::Counterexample { assignment, .. } => {
            v["verified"] = json!(assignment.verify(&p));
            v["image_order"] = json!(assignment.image_order());
            EXIT_NEGATIVE
        }
    };
    Ok((code, v))
}

fn order(job: &mut Job, file: &str, subgroup: &[String], stdin: &mut dyn Read) -> Outcome {
    let p = job.load(file, stdin)?;
    let gens = subgroup
        .iter()
        .map(|s| word_in(&p, s))
        .collect::<Result<Vec<_>, _>>()?;
    let t = todd_coxeter(&p, &gens, job.cli.max_cosets);
    job.note("HLT coset enumeration; complete tables are re-checked against every relator");
    let code = match t.status {
        EnumerationStatus::Complete { .. } => EXIT_SUCCESS,
        EnumerationStatus::Overflow { .. } => EXIT_INCONCLUSIVE,
    };
    Ok((
        code,
        json!({"status": t.status, "cosets_defined": t.defined, "subgroup_generators": subgroup.len()}),
    ))
}

fn bg_pipeline(job: &mut Job, file: &str, stdin: &mut dyn Read) -> Outcome {
    let p = job.load(file, stdin)?;
    let r = rips_wise(&p);
    let t = direct_product_presentation(&r.gamma, &r.gamma).map_err(input_err)?;
    let u = u_generators(&r).map_err(input_err)?;
    let oracle = AutoOracle::select(&p, job.cli.max_cosets);
    let (code, rows) = check_members(&u, &r.p, &oracle, r.gamma.alphabet());
    job.presentation("gamma.pres", &r.gamma);
    job.presentation("t.pres", &t.presentation);
    job.json_file("u.json", &generating_set_json(&u, r.gamma.alphabet()));
    job.count_pres("gamma", &r.gamma);
    job.count_pres("t", &t.presentation);
    job.count("u_elements", u.len());
    let input_metric = metric_certificate(&p, Ratio::SIXTH);
    job.certificate("input_metric", &input_metric);
    job.certificate("gamma_metric", &r.certificate);
    job.certificate("input_h1", &h1(&p).group);
    job.note(
        "Rips-Wise transform of the input, its direct square, and the fibre product generators",
    );
    Ok((
        code,
        json!({
            "gamma": r.counts(),
            "u_members": rows.iter().filter(|v| v["member"] == json!(true)).count(),
            "u_elements": u.len(),
            "oracle": oracle.kind(),
        }),
    ))
}
