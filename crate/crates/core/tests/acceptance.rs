//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs as a plain binary (`harness = false`). The process fails if any
//! criterion fails unexpectedly, or if a criterion listed in
//! `EXPECTED_FAILURES` starts passing.

use std::collections::HashSet;
use std::process::ExitCode;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use steiner_core::automorphism::{lemma_l2_classify, ElementaryAut, TameWord};
use steiner_core::multgroup::{schreier_rewrite, stab_factor, MultElement, TranslationLetter};
use steiner_core::relations::{
    cayley_bfs, conjecture_scan, elementary_family, evaluate_letters, verify_known_relations,
    Conjecture,
};
use steiner_core::sts::{
    aut_coincidence, loop_automorphisms, s_decomposition_check, t4_finite_check, FiniteLoop, Sts,
};
use steiner_core::subloop::{closure, is_free_isometric_upto, is_irreducible};
use steiner_core::words::{enumerate_swords, nucleus_scan, validate};
use steiner_core::{GenTuple, Limits, SWord};

/// Criteria whose stated outcome is mathematically unattainable. Each is
/// still run and reported as FAIL, with its evidence.
///
/// 8: `ξτξτξτξτ = 1` holds (`τξτ = e2(x3)` commutes with `ξ = e1(x3)`), so
///    `⟨φ, τ, ξ⟩` is a proper quotient of `S3 * C2` and the spheres differ
///    from depth 4 on.
const EXPECTED_FAILURES: &[u32] = &[8];

type Outcome = Result<String, String>;
type Criterion = (u32, &'static str, fn(&Limits) -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn loop_axioms(l: &Limits) -> Outcome {
    let words = enumerate_swords(3, 5, l).map_err(err)?;
    let e = SWord::identity();
    let mut pairs = 0usize;
    for x in &words {
        ensure(x.mul(x) == e, || format!("{x}·{x} ≠ e"))?;
        for y in &words {
            let xy = x.mul(y);
            ensure(xy == y.mul(x), || format!("{x}·{y} not commutative"))?;
            ensure(&x.mul(&xy) == y, || format!("{x}({x}{y}) ≠ {y}"))?;
            ensure(validate(&xy.to_raw()), || {
                format!("{x}·{y} = {xy} is not canonical")
            })?;
            pairs += 1;
        }
    }
    Ok(format!("{} words, {pairs} ordered pairs", words.len()))
}

fn diassociativity(l: &Limits) -> Outcome {
    let words: Vec<SWord> = enumerate_swords(3, 4, l)
        .map_err(err)?
        .into_iter()
        .filter(|w| !w.is_identity())
        .collect();
    let mut subsets = 0usize;
    for (i, x) in words.iter().enumerate() {
        for y in &words[i + 1..] {
            let c = closure(&GenTuple::new([x.clone(), y.clone()]), 16, l).map_err(err)?;
            ensure(c.len() <= 4, || {
                format!("<{x}, {y}> has {} elements", c.len())
            })?;
            subsets += 1;
        }
    }
    Ok(format!("{subsets} subsets, each closure ≤ 4"))
}

fn irreducible_iff_isometric(l: &Limits) -> Outcome {
    let words: Vec<SWord> = enumerate_swords(3, 3, l)
        .map_err(err)?
        .into_iter()
        .filter(|w| !w.is_identity())
        .collect();
    let (mut tuples, mut irreducible) = (0usize, 0usize);
    for x in &words {
        for y in &words {
            let t = GenTuple::new([x.clone(), y.clone()]);
            let a = is_irreducible(&t).map_err(err)?;
            let b = is_free_isometric_upto(&t, 2 * (x.len() + y.len()), l).map_err(err)?;
            ensure(a == b, || {
                format!("{t}: irreducible = {a}, free isometric = {b}")
            })?;
            tuples += 1;
            irreducible += a as usize;
        }
    }
    Ok(format!("{tuples} tuples agree ({irreducible} irreducible)"))
}

fn random_elementary(rng: &mut ChaCha8Rng, n: usize, factors: &[SWord]) -> ElementaryAut {
    let target = rng.gen_range(0..n);
    let others: Vec<SWord> = (0..n)
        .filter(|&j| j != target)
        .map(SWord::generator)
        .collect();
    let v = factors.choose(rng).expect("nonempty").substitute(&others);
    ElementaryAut::new(n, target, v).expect("valid letter")
}

fn tame_round_trip(l: &Limits) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0004);
    let mut total_letters = 0;
    for trial in 0..100 {
        let n = if trial % 2 == 0 { 3 } else { 4 };
        let factors: Vec<SWord> = enumerate_swords(n - 1, 3, l)
            .map_err(err)?
            .into_iter()
            .filter(|w| !w.is_identity())
            .collect();
        let k = rng.gen_range(1..=8);
        let letters: Vec<ElementaryAut> = (0..k)
            .map(|_| random_elementary(&mut rng, n, &factors))
            .collect();
        total_letters += k;
        let word = TameWord::new(n, letters).map_err(err)?;
        let f = word.evaluate();
        ensure(f.is_automorphism().map_err(err)?, || {
            format!("{word} evaluates to a non-automorphism")
        })?;
        let d = f.tame_decompose().map_err(err)?;
        ensure(d.evaluate() == f, || {
            format!("{word}: decomposition {d} does not recompose")
        })?;
        let inv = f.invert().map_err(err)?;
        ensure(f.compose(&inv).map_err(err)?.is_identity(), || {
            format!("{word}: inverse wrong")
        })?;
    }
    Ok(format!(
        "100 automorphisms, {total_letters} letters, seed fixed"
    ))
}

fn lemma_dichotomy(l: &Limits) -> Outcome {
    let words: Vec<SWord> = enumerate_swords(3, 6, l)
        .map_err(err)?
        .into_iter()
        .filter(|w| w.as_pair().is_some())
        .collect();
    let factors: Vec<SWord> = enumerate_swords(2, 3, l)
        .map_err(err)?
        .into_iter()
        .filter(|w| !w.is_identity())
        .collect();
    let mut autos = Vec::new();
    for i in 0..3 {
        let others: Vec<SWord> = (0..3).filter(|&j| j != i).map(SWord::generator).collect();
        for v in &factors {
            autos.push(ElementaryAut::new(3, i, v.substitute(&others)).map_err(err)?);
        }
    }
    let (mut preserved, mut collapsed) = (0usize, 0usize);
    for u in &words {
        for e in &autos {
            match lemma_l2_classify(u, e).map_err(|x| format!("{u} under {e}: {x}"))? {
                steiner_core::SplitBehaviour::SplitPreserved => preserved += 1,
                steiner_core::SplitBehaviour::CollapsedToGenerator => collapsed += 1,
            }
        }
    }
    Ok(format!(
        "{} words × {} automorphisms: {preserved} split preserved, {collapsed} collapsed",
        words.len(),
        autos.len()
    ))
}

fn known_relations(_: &Limits) -> Outcome {
    let checks = verify_known_relations();
    if let Some(bad) = checks.iter().find(|c| !c.holds) {
        return Err(format!("{} fails: {} vs {}", bad.name, bad.lhs, bad.rhs));
    }
    Ok(format!("{} identities hold", checks.len()))
}

fn conjecture(target: Conjecture, l: &Limits) -> Outcome {
    let report = conjecture_scan(target, 8, l).map_err(err)?;
    match report.first_divergence {
        None => Ok(format!(
            "spheres match to depth 8: {:?}",
            report.cayley.sizes
        )),
        Some(d) => {
            let layer = &report.layers[d];
            Err(format!(
                "diverges at depth {d}: Cayley {:?} vs presentation {:?}; new relators at depth {d}: {:?}",
                report.cayley.sizes, report.oracle.sizes, layer.new_relators
            ))
        }
    }
}

fn no_relation_family(l: &Limits) -> Outcome {
    let gens = elementary_family(3, 0, 2, l).map_err(err)?;
    ensure(gens.len() == 3, || {
        format!("expected 3 generators, got {}", gens.len())
    })?;
    let bfs = cayley_bfs(&gens, 8, l).map_err(err)?;
    for d in 1..=8 {
        let expected = 3 << (d - 1);
        ensure(bfs.profile.sizes[d] == expected, || {
            format!("sphere {d}: {} ≠ {expected}", bfs.profile.sizes[d])
        })?;
    }
    ensure(bfs.report.relators.is_empty(), || {
        "unexpected relator".into()
    })?;
    Ok(format!("spheres {:?}", bfs.profile.sizes))
}

fn reduced_words(letters: &[TranslationLetter], max_len: usize) -> Vec<MultElement> {
    let mut out = Vec::new();
    let mut layer = vec![Vec::<usize>::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for i in 0..letters.len() {
                if w.last() != Some(&i) {
                    let mut v = w.clone();
                    v.push(i);
                    next.push(v);
                }
            }
        }
        out.extend(
            next.iter()
                .map(|w| MultElement::from_letters(w.iter().map(|&i| letters[i].clone()))),
        );
        layer = next;
    }
    out
}

fn multiplication_group(l: &Limits) -> Outcome {
    let short: Vec<SWord> = enumerate_swords(3, 2, l)
        .map_err(err)?
        .into_iter()
        .filter(|w| !w.is_identity())
        .collect();
    let letters: Vec<TranslationLetter> = short
        .iter()
        .map(|w| TranslationLetter::new(w.clone()))
        .collect::<Result<_, _>>()
        .map_err(err)?;

    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0010);
    let mut nontrivial = 0;
    for _ in 0..200 {
        let len = rng.gen_range(1..=10);
        let g =
            MultElement::from_letters((0..len).map(|_| letters.choose(&mut rng).unwrap().clone()));
        let h = stab_factor(&g).h;
        ensure(h.act(&SWord::identity()).is_identity(), || {
            format!("{h} does not fix e")
        })?;
        let rewrite = schreier_rewrite(&h).map_err(err)?;
        ensure(rewrite.product() == h, || {
            format!("rewrite of {h} does not round-trip")
        })?;
        nontrivial += !h.is_identity() as usize;
    }

    let probes = enumerate_swords(3, 3, l).map_err(err)?;
    let elements = reduced_words(&letters, 6);
    for g in &elements {
        ensure(probes.iter().any(|w| &g.act(w) != w), || {
            format!("{g} fixes every probe word")
        })?;
    }
    Ok(format!(
        "200 round trips ({nontrivial} nontrivial); {} reduced words each move a probe",
        elements.len()
    ))
}

fn nucleus(l: &Limits) -> Outcome {
    let scan = nucleus_scan(3, 4, l).map_err(err)?;
    if !scan.all_eliminated() {
        return Err(format!("no witness for {:?}", scan.survivors));
    }
    let distinct: HashSet<_> = scan.witnesses.iter().map(|w| &w.u).collect();
    ensure(distinct.len() == scan.candidates, || {
        "duplicate candidates".into()
    })?;
    Ok(format!("all {} candidates eliminated", scan.candidates))
}

fn fixture_battery(
    name: &str,
    sts: &Sts,
    expected_aut: Option<u128>,
    l: &Limits,
) -> Result<String, String> {
    let ext = FiniteLoop::exterior(sts);
    ensure(ext.order() == sts.points() + 1, || {
        format!("{name}: exterior order {}", ext.order())
    })?;
    if let Some((id, _)) = ext.check_identities().into_iter().find(|(_, ok)| !ok) {
        return Err(format!("{name}: exterior identity {id} fails"));
    }
    ensure(ext.to_sts().map_err(err)? == *sts, || {
        format!("{name}: exterior round trip")
    })?;

    let coincidence = aut_coincidence(sts, l).map_err(err)?;
    ensure(coincidence.all_equal, || {
        format!("{name}: automorphism groups differ: {coincidence:?}")
    })?;
    ensure(
        coincidence.naive_count as u128 == coincidence.sts_order,
        || {
            format!(
                "{name}: naive count {} vs chain {}",
                coincidence.naive_count, coincidence.sts_order
            )
        },
    )?;
    if let Some(n) = expected_aut {
        ensure(coincidence.sts_order == n, || {
            format!("{name}: |Aut| = {} ≠ {n}", coincidence.sts_order)
        })?;
    }

    let mut stab_orders = Vec::new();
    for a in 0..sts.points() {
        let interior = FiniteLoop::interior(sts, a).map_err(err)?;
        if let Some((id, _)) = interior.check_identities().into_iter().find(|(_, ok)| !ok) {
            return Err(format!(
                "{name}: interior identity {id} fails at base {}",
                a + 1
            ));
        }
        ensure(interior.to_sts().map_err(err)? == *sts, || {
            format!("{name}: interior round trip at {}", a + 1)
        })?;
        let t4 = t4_finite_check(sts, a, l).map_err(err)?;
        let naive = loop_automorphisms(&interior, l).map_err(err)?.len() as u128;
        ensure(
            t4.equal && t4.interior_order == t4.stabilizer_order && naive == t4.interior_order,
            || format!("{name}: base {}: {t4:?}, naive count {naive}", a + 1),
        )?;
        stab_orders.push(t4.stabilizer_order);
    }

    let sd = s_decomposition_check(&ext).map_err(err)?;
    if let Some(c) = sd.checks.iter().find(|c| !c.holds) {
        return Err(format!(
            "{name}: S-decomposition check {} fails: {:?}",
            c.name, c.detail
        ));
    }
    Ok(format!(
        "{name}: |Aut| = {} (naive {}), |Stab| = |Aut(IS)| = {:?}, |Mult| = {}",
        coincidence.sts_order,
        coincidence.naive_count,
        stab_orders.iter().collect::<HashSet<_>>(),
        sd.mult_order
    ))
}

fn finite_fixtures(l: &Limits) -> Outcome {
    let fano = fixture_battery("Fano", &Sts::fano(), Some(168), l)?;
    let t4 = t4_finite_check(&Sts::fano(), 0, l).map_err(err)?;
    ensure(t4.stabilizer_order == 24, || {
        format!("Fano stabilizer order {}", t4.stabilizer_order)
    })?;
    let ext = FiniteLoop::exterior(&Sts::fano());
    ensure(ext.order() == 8, || "Fano exterior order".into())?;
    let ag = fixture_battery("STS(9)", &Sts::affine_plane_3(), None, l)?;
    let tri = fixture_battery("STS(3)", &Sts::trivial(), Some(6), l)?;
    Ok(format!("{fano}; {ag}; {tri}"))
}

fn acknowledged(_: &Limits) -> Outcome {
    Ok(
        "non-finite generation for |X| > 3 and the conjecture implication have no runnable check; \
        documented in the README"
            .into(),
    )
}

fn main() -> ExitCode {
    let l = Limits::default();
    let criteria: Vec<Criterion> = vec![
        (1, "loop axioms, words of length ≤ 5", loop_axioms),
        (2, "diassociativity, pairs of length ≤ 4", diassociativity),
        (
            3,
            "irreducible ⟺ free isometric, 2-tuples of length ≤ 3",
            irreducible_iff_isometric,
        ),
        (
            4,
            "tame decomposition round trip, 100 random automorphisms",
            tame_round_trip,
        ),
        (
            5,
            "split dichotomy, pairs of length ≤ 6, |v| ≤ 3",
            lemma_dichotomy,
        ),
        (6, "known relations", known_relations),
        (7, "Coxeter growth match to depth 8", |l| {
            conjecture(Conjecture::Coxeter, l)
        }),
        (8, "S3 * C2 growth match to depth 8", |l| {
            conjecture(Conjecture::StabilizerFreeProduct, l)
        }),
        (
            9,
            "no relations in the e1 family to depth 8",
            no_relation_family,
        ),
        (
            10,
            "multiplication group rewriting and faithfulness",
            multiplication_group,
        ),
        (11, "nucleus scan, words of length ≤ 4", nucleus),
        (12, "finite fixtures", finite_fixtures),
        (13, "non-reproducible items acknowledged", acknowledged),
    ];

    let mut unexpected = Vec::new();
    for (id, name, run) in criteria {
        let start = Instant::now();
        let outcome = run(&l);
        let secs = start.elapsed().as_secs_f64();
        let expected_fail = EXPECTED_FAILURES.contains(&id);
        match &outcome {
            Ok(detail) => println!("PASS  {id:>2}. {name} [{secs:.2}s]: {detail}"),
            Err(detail) => {
                let tag = if expected_fail {
                    " (expected, see EXPECTED_FAILURES)"
                } else {
                    ""
                };
                println!("FAIL  {id:>2}. {name} [{secs:.2}s]{tag}: {detail}");
            }
        }
        if outcome.is_ok() == expected_fail {
            unexpected.push(id);
        }
    }

    // Relators reported for criterion 8 must themselves be identities.
    let gens: Vec<_> = Conjecture::StabilizerFreeProduct
        .letters()
        .iter()
        .map(|g| g.involution())
        .collect();
    if let Ok(bfs) = cayley_bfs(&gens, 4, &l) {
        let ok = bfs
            .report
            .relators
            .iter()
            .all(|r| evaluate_letters(&gens, &r.letters).is_ok_and(|f| f.is_identity()));
        println!(
            "note: {} relators up to depth 4 all evaluate to the identity: {ok}",
            bfs.report.relators.len()
        );
    }

    if unexpected.is_empty() {
        ExitCode::SUCCESS
    } else {
        println!("unexpected outcomes for criteria {unexpected:?}");
        ExitCode::FAILURE
    }
}
