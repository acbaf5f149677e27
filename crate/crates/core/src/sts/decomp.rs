use serde::Serialize;

use super::{FiniteLoop, Perm, PermGroup, StsError};
use crate::error::{Error, Result};

/// The multiplication group of a loop and its inner mapping group.
#[derive(Debug, Clone)]
pub struct MultGroup {
    /// Right translations `R_x: y ↦ y·x`, indexed by `x`.
    pub translations: Vec<Perm>,
    pub group: PermGroup,
    /// Stabilizer of the identity element.
    pub inner: PermGroup,
    pub identity: usize,
}

/// Generates `Mult(L)` from the translations of a loop with identity.
pub fn mult_group(l: &FiniteLoop) -> Result<MultGroup> {
    let identity = l.identity().ok_or_else(|| {
        Error::precondition("the multiplication group needs a loop with identity")
    })?;
    let n = l.order();
    let translations = (0..n)
        .map(|x| {
            Perm::from_images((0..n).map(|y| l.mul(y, x)).collect()).map_err(|_| {
                Error::from(StsError::BadTable {
                    kind: l.kind().name(),
                    message: format!("right translation by {} is not a bijection", l.label(x)),
                })
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let group = PermGroup::new(n, translations.clone())?;
    let inner = group.stabilizer(identity)?;
    Ok(MultGroup {
        translations,
        group,
        inner,
        identity,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub holds: bool,
    /// First counterexample, when the check fails.
    pub detail: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SDecompositionReport {
    pub loop_order: usize,
    pub mult_order: u128,
    pub inner_order: u128,
    pub checks: Vec<Check>,
}

impl SDecompositionReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

fn first_failure(n: usize, mut f: impl FnMut(usize, usize) -> Option<String>) -> Check {
    for x in 0..n {
        for y in 0..n {
            if let Some(d) = f(x, y) {
                return Check {
                    name: "",
                    holds: false,
                    detail: Some(d),
                };
            }
        }
    }
    Check {
        name: "",
        holds: true,
        detail: None,
    }
}

fn named(name: &'static str, c: Check) -> Check {
    Check { name, ..c }
}

/// Exhaustively checks that `G = Mult(L)`, `H = Inn(L)` and the translation
/// set `B0` form an S-decomposition `G = B0·H` of exponent-2 translations,
/// and that the product induced on `B0` reproduces the table.
pub fn s_decomposition_check(l: &FiniteLoop) -> Result<SDecompositionReport> {
    let mg = mult_group(l)?;
    let n = l.order();
    let e = mg.identity;
    let r = &mg.translations;
    let h = &mg.inner;
    let lbl = |x: usize| l.label(x);

    let square = (0..n).find(|&x| !r[x].then(&r[x]).is_identity());
    let involutions = Check {
        name: "b^2 = 1",
        holds: square.is_none(),
        detail: square.map(|x| format!("R_{} squared is not 1", lbl(x))),
    };

    let transversal = named(
        "R_b R_c^-1 in H iff b = c",
        first_failure(n, |b, c| {
            let inside = h.contains(&r[b].then(&r[c].inverse()));
            (inside != (b == c)).then(|| format!("b = {}, c = {}", lbl(b), lbl(c)))
        }),
    );

    let order = Check {
        name: "|G| = |B0|·|H|",
        holds: mg.group.order() == n as u128 * h.order(),
        detail: None,
    };

    // b1 ∗ b2 is the unique b3 with R_b1 R_b2 ∈ H R_b3.
    let mut star = vec![vec![usize::MAX; n]; n];
    let closure = named(
        "R_b1 R_b2 in H R_b3 for exactly one b3 = b1·b2",
        first_failure(n, |b1, b2| {
            let g = r[b1].then(&r[b2]);
            let hits: Vec<usize> = (0..n)
                .filter(|&b3| h.contains(&g.then(&r[b3].inverse())))
                .collect();
            match hits.as_slice() {
                [b3] if *b3 == l.mul(b1, b2) => {
                    star[b1][b2] = *b3;
                    None
                }
                _ => Some(format!(
                    "b1 = {}, b2 = {}: cosets {:?}, table gives {}",
                    lbl(b1),
                    lbl(b2),
                    hits.iter().map(|&b| lbl(b)).collect::<Vec<_>>(),
                    lbl(l.mul(b1, b2))
                )),
            }
        }),
    );

    let star_law = if closure.holds {
        named(
            "(b1∗b2)∗b2 = b1",
            first_failure(n, |b1, b2| {
                (star[star[b1][b2]][b2] != b1)
                    .then(|| format!("b1 = {}, b2 = {}", lbl(b1), lbl(b2)))
            }),
        )
    } else {
        Check {
            name: "(b1∗b2)∗b2 = b1",
            holds: false,
            detail: Some("induced product undefined".into()),
        }
    };

    let mut gens = Vec::new();
    for a in 0..n {
        for b in 0..n {
            gens.push(r[a].then(&r[b]).then(&r[l.mul(a, b)]));
        }
    }
    let generated = PermGroup::new(n, gens)?;
    let inner_gens = Check {
        name: "H = <R_a R_b R_ab>",
        holds: generated.same_group(h),
        detail: None,
    };

    let identity_fixed = Check {
        name: "B0 ∩ H = {1}",
        holds: (0..n).all(|b| h.contains(&r[b]) == r[b].is_identity()) && r[e].is_identity(),
        detail: None,
    };

    Ok(SDecompositionReport {
        loop_order: n,
        mult_order: mg.group.order(),
        inner_order: h.order(),
        checks: vec![
            involutions,
            identity_fixed,
            transversal,
            order,
            closure,
            star_law,
            inner_gens,
        ],
    })
}
