use std::fs;
use std::path::Path;

use serde_json::{json, Value};

use steiner_core::automorphism::Endomorphism;
use steiner_core::multgroup::{schreier_rewrite, stab_factor, MultElement};
use steiner_core::relations::{
    cayley_bfs, conjecture_scan, constrained_search, elementary_family, layer_reports,
    verify_known_relations, Conjecture, GroupLetter, Involution,
};
use steiner_core::sts::{
    aut_coincidence, automorphism_group, s_decomposition_check, t4_finite_check, FiniteLoop, Sts,
};
use steiner_core::subloop::{closure, is_irreducible, nielsen_reduce};
use steiner_core::words::{nucleus_scan, validate};
use steiner_core::{Alphabet, Error, GenTuple, Limits, SWord};

use crate::args::{Cli, Command, Images, RelationsCommand, StsCommand, TableKind};

/// What a command produced: text lines, the equivalent JSON document, and
/// whether the answer was a mathematical negative.
pub struct Output {
    pub lines: Vec<String>,
    pub json: Value,
    pub negative: bool,
}

impl Output {
    fn ok(lines: Vec<String>, json: Value) -> Self {
        Output {
            lines,
            json,
            negative: false,
        }
    }

    fn negative(lines: Vec<String>, json: Value) -> Self {
        Output {
            lines,
            json,
            negative: true,
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] Error),
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(Error::CapExceeded { .. }) => 3,
            CliError::Core(
                Error::Precondition(_) | Error::NotAutomorphism(_) | Error::Invariant(_),
            ) => 1,
            CliError::Core(_) | CliError::Io { .. } | CliError::Usage(_) => 2,
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

pub fn limits(cli: &Cli) -> Limits {
    let mut l = Limits::default();
    if let Some(m) = cli.max_len {
        l.max_word_len = m;
    }
    if let Some(m) = cli.max_elements {
        l.max_elements = m;
    }
    l
}

pub fn run(cli: &Cli) -> Result<Output> {
    let alphabet = Alphabet::standard(cli.generators)?;
    let limits = limits(cli);
    match &cli.command {
        Command::Eval { word } => {
            let w = alphabet.parse(word)?;
            let r = alphabet.render(&w);
            Ok(Output::ok(
                vec![r.clone()],
                json!({ "word": r, "length": w.len() }),
            ))
        }
        Command::Normalize { word } => {
            let raw = alphabet.parse_raw(word)?;
            let canonical = validate(&raw);
            let r = alphabet.render(&raw.normalize());
            let note = if canonical {
                "input was canonical"
            } else {
                "input was rewritten"
            };
            Ok(Output::ok(
                vec![r.clone(), note.into()],
                json!({ "word": r, "was_canonical": canonical }),
            ))
        }
        Command::Closure { words } => {
            cmd_closure(&alphabet, words, cli.max_len.unwrap_or(6), &limits)
        }
        Command::Reduce { words } => cmd_reduce(&alphabet, words),
        Command::IsAut(images) => {
            let f = endomorphism(&alphabet, images)?;
            match f.tame_decompose() {
                Ok(_) => Ok(Output::ok(
                    vec!["automorphism".into()],
                    json!({ "automorphism": true }),
                )),
                Err(Error::NotAutomorphism(reason)) => Ok(Output::negative(
                    vec![format!("not an automorphism: {reason}")],
                    json!({ "automorphism": false, "reason": reason }),
                )),
                Err(e) => Err(e.into()),
            }
        }
        Command::Decompose(images) => {
            let f = endomorphism(&alphabet, images)?;
            let word = f.tame_decompose()?;
            let rendered = word.render(&alphabet);
            let ok = word.evaluate() == f;
            let status = if ok { "OK" } else { "FAILED" };
            let out = vec![rendered.clone(), format!("recomposition: {status}")];
            let doc = json!({ "word": rendered, "letters": word.len(), "recomposition": ok });
            Ok(if ok {
                Output::ok(out, doc)
            } else {
                Output::negative(out, doc)
            })
        }
        Command::Invert(images) => {
            let f = endomorphism(&alphabet, images)?;
            let inv = f.invert()?;
            let rendered: Vec<String> = inv.images().iter().map(|w| alphabet.render(w)).collect();
            let lines = rendered
                .iter()
                .enumerate()
                .map(|(i, w)| format!("x{} -> {w}", i + 1))
                .collect();
            Ok(Output::ok(lines, json!({ "images": rendered })))
        }
        Command::MultRewrite { element } => cmd_mult_rewrite(&alphabet, element),
        Command::Relations(sub) => cmd_relations(cli.generators, sub, &limits),
        Command::NucleusScan => cmd_nucleus(cli.generators, cli.max_len.unwrap_or(3), &limits),
        Command::Sts(sub) => cmd_sts(sub, &limits),
    }
}

fn endomorphism(alphabet: &Alphabet, images: &Images) -> Result<Endomorphism> {
    Ok(Endomorphism::parse(alphabet, &images.images)?)
}

fn tuple(alphabet: &Alphabet, words: &[String]) -> Result<GenTuple> {
    let entries = words
        .iter()
        .map(|w| alphabet.parse(w))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    Ok(GenTuple::new(entries))
}

fn cmd_closure(
    alphabet: &Alphabet,
    words: &[String],
    max_len: usize,
    limits: &Limits,
) -> Result<Output> {
    let t = tuple(alphabet, words)?;
    let members = closure(&t, max_len, limits)?;
    let irreducible = !t.entries().iter().any(SWord::is_identity) && is_irreducible(&t)?;
    let rendered: Vec<String> = members.iter().map(|w| alphabet.render(w)).collect();
    let mut lines = vec![format!("{} elements of length ≤ {max_len}", rendered.len())];
    if !irreducible {
        lines.push("note: tuple is reducible; longer intermediates may be missing".into());
    }
    lines.extend(rendered.iter().cloned());
    Ok(Output::ok(
        lines,
        json!({ "max_len": max_len, "irreducible": irreducible, "elements": rendered }),
    ))
}

fn cmd_reduce(alphabet: &Alphabet, words: &[String]) -> Result<Output> {
    let t = tuple(alphabet, words)?;
    let r = nielsen_reduce(&t)?;
    let mut lines = Vec::new();
    let mut steps = Vec::new();
    for s in &r.steps {
        let line = format!(
            "y{}: {} -> {} (times {} = {})",
            s.index + 1,
            alphabet.render(&s.before),
            alphabet.render(&s.after),
            s.reducer_parse,
            alphabet.render(&s.reducer_word)
        );
        lines.push(line);
        steps.push(json!({
            "index": s.index + 1,
            "before": alphabet.render(&s.before),
            "after": alphabet.render(&s.after),
            "reducer": s.reducer_parse.to_string(),
            "reducer_word": alphabet.render(&s.reducer_word),
        }));
    }
    let reduced: Vec<String> = r
        .reduced
        .entries()
        .iter()
        .map(|w| alphabet.render(w))
        .collect();
    lines.push(format!("reduced: {{{}}}", reduced.join(", ")));
    if !r.dropped.is_empty() {
        let dropped: Vec<String> = r.dropped.iter().map(|i| format!("y{}", i + 1)).collect();
        lines.push(format!("dropped: {}", dropped.join(", ")));
    }
    Ok(Output::ok(
        lines,
        json!({
            "steps": steps,
            "reduced": reduced,
            "dropped": r.dropped.iter().map(|i| i + 1).collect::<Vec<_>>(),
            "weight_before": t.weight(),
            "weight_after": r.reduced.weight(),
        }),
    ))
}

fn cmd_mult_rewrite(alphabet: &Alphabet, text: &str) -> Result<Output> {
    let g = MultElement::parse(alphabet, text)?;
    let f = stab_factor(&g);
    let rewrite = schreier_rewrite(&f.h)?;
    let factors: Vec<String> = rewrite
        .factors
        .iter()
        .map(|(s, e)| {
            if *e > 0 {
                s.to_string()
            } else {
                format!("{s}^-1")
            }
        })
        .collect();
    let ok = rewrite.product() == f.h;
    let rep = f.rep.as_ref().map(|r| alphabet.render(r.word()));
    let mut lines = vec![
        format!("g = {}", g.render(alphabet)),
        format!("h = {}", f.h.render(alphabet)),
        format!(
            "coset representative: {}",
            rep.as_ref().map_or("1".into(), |r| format!("R[{r}]"))
        ),
        format!(
            "h = {}",
            if factors.is_empty() {
                "1".to_string()
            } else {
                factors.join(" ")
            }
        ),
    ];
    lines.push(format!("round trip: {}", if ok { "OK" } else { "FAILED" }));
    let doc = json!({
        "g": g.render(alphabet),
        "h": f.h.render(alphabet),
        "representative": rep,
        "schreier_factors": factors,
        "degenerate_skipped": rewrite.degenerate,
        "round_trip": ok,
    });
    Ok(if ok {
        Output::ok(lines, doc)
    } else {
        Output::negative(lines, doc)
    })
}

fn require_three(n: usize) -> Result<()> {
    if n != 3 {
        return Err(
            Error::Precondition(format!("relations are defined for n = 3, not {n}")).into(),
        );
    }
    Ok(())
}

fn cmd_relations(n: usize, sub: &RelationsCommand, limits: &Limits) -> Result<Output> {
    match sub {
        RelationsCommand::VerifyKnown => {
            require_three(n)?;
            let checks = verify_known_relations();
            let lines = checks
                .iter()
                .map(|c| format!("{}  {}", if c.holds { "PASS" } else { "FAIL" }, c.name))
                .collect();
            let all = checks.iter().all(|c| c.holds);
            let doc = json!({ "all_hold": all, "checks": checks });
            Ok(if all {
                Output::ok(lines, doc)
            } else {
                Output::negative(lines, doc)
            })
        }
        RelationsCommand::Bfs {
            letters,
            free_family,
            family_len,
            depth,
            max_image_len,
        } => {
            let mut limits = *limits;
            if let Some(m) = max_image_len {
                limits.max_image_len = *m;
            }
            let gens: Vec<Involution> = match free_family {
                Some(family) => {
                    let target = family
                        .strip_prefix('e')
                        .and_then(|i| i.parse::<usize>().ok())
                        .filter(|&i| (1..=n).contains(&i))
                        .ok_or_else(|| {
                            CliError::Usage(format!(
                                "--free-family expects e1..e{n}, got `{family}`"
                            ))
                        })?;
                    elementary_family(n, target - 1, *family_len, &limits)?
                }
                None => {
                    require_three(n)?;
                    let names: &[String] = letters;
                    let letters: Vec<GroupLetter> = if names.is_empty() {
                        vec![GroupLetter::Phi, GroupLetter::S12, GroupLetter::S13]
                    } else {
                        names
                            .iter()
                            .map(|s| s.parse())
                            .collect::<std::result::Result<_, _>>()?
                    };
                    letters.iter().map(|l| l.involution()).collect()
                }
            };
            let bfs = cayley_bfs(&gens, *depth, &limits)?;
            let layers = layer_reports(&bfs, &gens, None);
            let labels: Vec<&str> = gens.iter().map(|g| g.label.as_str()).collect();
            let mut lines = vec![
                format!("generators: {}", labels.join(", ")),
                format!("spheres: {:?}", bfs.profile.sizes),
            ];
            for layer in layers.iter().filter(|l| !l.new_relators.is_empty()) {
                for r in &layer.new_relators {
                    lines.push(format!("relator (depth {}): {r}", layer.depth));
                }
            }
            Ok(Output::ok(
                lines,
                json!({ "generators": labels, "spheres": bfs.profile.sizes, "layers": layers,
                        "elements": bfs.report.element_count }),
            ))
        }
        RelationsCommand::Conjecture { target, depth } => {
            require_three(n)?;
            let target = match target {
                1 => Conjecture::Coxeter,
                2 => Conjecture::StabilizerFreeProduct,
                other => {
                    return Err(CliError::Usage(format!(
                        "--target must be 1 or 2, got {other}"
                    )))
                }
            };
            let report = conjecture_scan(target, *depth, limits)?;
            let mut lines = vec![
                format!("cayley:       {:?}", report.cayley.sizes),
                format!("presentation: {:?}", report.oracle.sizes),
            ];
            match report.first_divergence {
                None => lines.push(format!("spheres match to depth {depth}")),
                Some(d) => {
                    lines.push(format!("!!! DIVERGENCE at depth {d}: the group satisfies a relation outside the presentation"));
                    for r in &report.layers[d].new_relators {
                        lines.push(format!("relator: {r}"));
                    }
                }
            }
            let negative = !report.matches();
            let doc = serde_json::to_value(&report).expect("serializable");
            Ok(Output {
                lines,
                json: doc,
                negative,
            })
        }
        RelationsCommand::Constrained { blocks } => {
            require_three(n)?;
            let hits = constrained_search(*blocks, limits)?;
            let mut lines = vec![format!(
                "{} identities among words of ≤ {blocks} blocks",
                hits.len()
            )];
            lines.extend(
                hits.iter()
                    .map(|h| format!("phi {}", h.sigmas.join(" phi "))),
            );
            Ok(Output::ok(lines, json!({ "blocks": blocks, "hits": hits })))
        }
    }
}

fn cmd_nucleus(n: usize, max_len: usize, limits: &Limits) -> Result<Output> {
    let scan = nucleus_scan(n, max_len, limits)?;
    let witnesses: Vec<Value> = scan
        .witnesses
        .iter()
        .map(|w| json!({ "u": w.u.to_string(), "x": w.x.to_string(), "y": w.y.to_string() }))
        .collect();
    let survivors: Vec<String> = scan.survivors.iter().map(ToString::to_string).collect();
    let doc = json!({
        "candidates": scan.candidates,
        "eliminated": scan.witnesses.len(),
        "survivors": survivors,
        "witnesses": witnesses,
    });
    if scan.all_eliminated() {
        Ok(Output::ok(
            vec![format!("all {} candidates eliminated", scan.candidates)],
            doc,
        ))
    } else {
        Ok(Output::negative(
            vec![format!(
                "no associativity witness for: {}",
                survivors.join(", ")
            )],
            doc,
        ))
    }
}

fn read_sts(path: &Path) -> Result<Sts> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })?;
    Ok(Sts::parse(&text).map_err(Error::from)?)
}

fn build_loop(sts: &Sts, kind: TableKind, base: usize) -> Result<FiniteLoop> {
    Ok(match kind {
        TableKind::Quasigroup => FiniteLoop::quasigroup(sts),
        TableKind::Exterior => FiniteLoop::exterior(sts),
        TableKind::Interior => {
            FiniteLoop::interior(sts, sts.check_point(base).map_err(Error::from)?)
                .map_err(Error::from)?
        }
    })
}

fn cmd_sts(sub: &StsCommand, limits: &Limits) -> Result<Output> {
    match sub {
        StsCommand::Validate { file } => {
            let sts = read_sts(file)?;
            Ok(Output::ok(
                vec![format!("valid STS({})", sts.points())],
                json!({ "valid": true, "points": sts.points(), "blocks": sts.blocks().len() }),
            ))
        }
        StsCommand::Tables { file, kind, base } => {
            let l = build_loop(&read_sts(file)?, *kind, *base)?;
            let text = l.to_string();
            let table: Vec<Vec<String>> = l
                .table()
                .iter()
                .map(|row| row.iter().map(|&v| l.label(v)).collect())
                .collect();
            let identities: Vec<Value> = l
                .check_identities()
                .iter()
                .map(|(name, ok)| json!({ "identity": name, "holds": ok }))
                .collect();
            Ok(Output::ok(
                text.lines().map(String::from).collect(),
                json!({ "kind": l.kind(), "order": l.order(), "table": table, "identities": identities }),
            ))
        }
        StsCommand::Aut { file } => {
            let sts = read_sts(file)?;
            let c = aut_coincidence(&sts, limits)?;
            let group = automorphism_group(&sts, limits)?;
            let gens: Vec<String> = group.generators().iter().map(ToString::to_string).collect();
            let lines = vec![
                format!(
                    "|Aut(STS)| = {} (plain backtracking found {})",
                    c.sts_order, c.naive_count
                ),
                format!("|Aut(quasigroup)| = {}", c.quasigroup_order),
                format!("|Aut(exterior loop)| = {}", c.exterior_order),
                format!(
                    "groups coincide: {}",
                    if c.all_equal { "yes" } else { "NO" }
                ),
                format!("generators: {}", gens.join(" ")),
            ];
            let doc = json!({ "report": c, "generators": gens });
            Ok(if c.all_equal {
                Output::ok(lines, doc)
            } else {
                Output::negative(lines, doc)
            })
        }
        StsCommand::Sdecomp { file, kind, base } => {
            let l = build_loop(&read_sts(file)?, *kind, *base)?;
            let report = s_decomposition_check(&l)?;
            let mut lines = vec![format!(
                "|G| = {}, |H| = {}, |B0| = {}",
                report.mult_order, report.inner_order, report.loop_order
            )];
            for c in &report.checks {
                let mut line = format!("{}  {}", if c.holds { "PASS" } else { "FAIL" }, c.name);
                if let Some(d) = &c.detail {
                    line.push_str(&format!(" ({d})"));
                }
                lines.push(line);
            }
            let doc = serde_json::to_value(&report).expect("serializable");
            Ok(if report.all_pass() {
                Output::ok(lines, doc)
            } else {
                Output::negative(lines, doc)
            })
        }
        StsCommand::T4 { file, base } => {
            let sts = read_sts(file)?;
            let a = sts.check_point(*base).map_err(Error::from)?;
            let r = t4_finite_check(&sts, a, limits)?;
            let verdict = if r.equal { "EQUAL" } else { "DIFFERENT" };
            let line = if r.interior_order == r.stabilizer_order {
                format!("|Aut(IS)| = |Stab| = {}: {verdict}", r.interior_order)
            } else {
                format!(
                    "|Aut(IS)| = {}, |Stab| = {}: {verdict}",
                    r.interior_order, r.stabilizer_order
                )
            };
            let doc = serde_json::to_value(&r).expect("serializable");
            Ok(if r.equal {
                Output::ok(vec![line], doc)
            } else {
                Output::negative(vec![line], doc)
            })
        }
    }
}
