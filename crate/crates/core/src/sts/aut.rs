//! Automorphism searches for triple systems and their loops.

use serde::Serialize;

use super::{FiniteLoop, Perm, PermGroup, Sts};
use crate::error::{Error, Result};
use crate::limits::Limits;

fn check_size(n: usize, limits: &Limits) -> Result<()> {
    if n > limits.max_points + 1 {
        return Err(Error::cap(
            "points for automorphism search",
            limits.max_points,
        ));
    }
    Ok(())
}

/// Every block-preserving permutation, by plain backtracking: points are
/// assigned in order and a block is checked once all its points are mapped.
pub fn sts_automorphisms_naive(sts: &Sts, limits: &Limits) -> Result<Vec<Perm>> {
    let m = sts.points();
    check_size(m, limits)?;
    // Blocks become checkable when their largest point is assigned.
    let mut ready: Vec<Vec<[usize; 3]>> = vec![Vec::new(); m];
    for b in sts.blocks() {
        ready[b[2]].push(*b);
    }
    let mut image = vec![usize::MAX; m];
    let mut used = vec![false; m];
    let mut found = Vec::new();

    fn go(
        k: usize,
        sts: &Sts,
        ready: &[Vec<[usize; 3]>],
        image: &mut [usize],
        used: &mut [bool],
        found: &mut Vec<Perm>,
    ) {
        let m = image.len();
        if k == m {
            found.push(Perm::from_images(image.to_vec()).expect("bijection"));
            return;
        }
        for t in 0..m {
            if used[t] {
                continue;
            }
            image[k] = t;
            let ok = ready[k]
                .iter()
                .all(|b| sts.third(image[b[0]], image[b[1]]) == image[b[2]]);
            if ok {
                used[t] = true;
                go(k + 1, sts, ready, image, used, found);
                used[t] = false;
            }
        }
        image[k] = usize::MAX;
    }

    go(0, sts, &ready, &mut image, &mut used, &mut found);
    Ok(found)
}

/// Assigns `x ↦ t` and closes under `π(x·y) = π(x)·π(y)`; false on conflict.
fn propagate(
    table: &[Vec<usize>],
    image: &mut [usize],
    used: &mut [bool],
    x: usize,
    t: usize,
) -> bool {
    let n = table.len();
    let mut assigned: Vec<usize> = (0..n).filter(|&p| image[p] != usize::MAX).collect();
    let mut pending = vec![(x, t)];
    while let Some((x, t)) = pending.pop() {
        if image[x] != usize::MAX {
            if image[x] != t {
                return false;
            }
            continue;
        }
        if used[t] {
            return false;
        }
        image[x] = t;
        used[t] = true;
        assigned.push(x);
        for &y in &assigned {
            for (a, b) in [(x, y), (y, x)] {
                let z = table[a][b];
                let w = table[image[a]][image[b]];
                if image[z] == usize::MAX {
                    pending.push((z, w));
                } else if image[z] != w {
                    return false;
                }
            }
        }
    }
    true
}

/// Every permutation `π` of the elements with `π(x·y) = π(x)·π(y)`.
pub fn loop_automorphisms(l: &FiniteLoop, limits: &Limits) -> Result<Vec<Perm>> {
    let table = l.table();
    let n = table.len();
    check_size(n, limits)?;
    let mut found = Vec::new();

    fn go(table: &[Vec<usize>], image: Vec<usize>, used: Vec<bool>, found: &mut Vec<Perm>) {
        let Some(x) = image.iter().position(|&v| v == usize::MAX) else {
            found.push(Perm::from_images(image).expect("bijection"));
            return;
        };
        for t in 0..table.len() {
            if used[t] {
                continue;
            }
            let (mut im, mut us) = (image.clone(), used.clone());
            if propagate(table, &mut im, &mut us, x, t) {
                go(table, im, us, found);
            }
        }
    }

    go(table, vec![usize::MAX; n], vec![false; n], &mut found);
    Ok(found)
}

/// Builds a group from an element list, keeping only elements not already
/// generated.
fn group_from_elements(degree: usize, elements: &[Perm]) -> Result<PermGroup> {
    let mut gens = Vec::new();
    let mut group = PermGroup::trivial(degree);
    for p in elements {
        if !group.contains(p) {
            gens.push(p.clone());
            group = PermGroup::new(degree, gens.clone())?;
        }
    }
    Ok(group)
}

/// `Aut` of the system, found through its quasigroup table.
pub fn automorphism_group(sts: &Sts, limits: &Limits) -> Result<PermGroup> {
    let auts = loop_automorphisms(&FiniteLoop::quasigroup(sts), limits)?;
    group_from_elements(sts.points(), &auts)
}

/// Restricts permutations of an exterior loop to the points.
fn restrict_exterior(p: &Perm) -> Perm {
    debug_assert_eq!(p.image(0), 0);
    Perm::from_images(p.images()[1..].iter().map(|&x| x - 1).collect()).expect("fixes e")
}

fn exterior_group(sts: &Sts, limits: &Limits) -> Result<PermGroup> {
    let auts = loop_automorphisms(&FiniteLoop::exterior(sts), limits)?;
    let restricted: Vec<Perm> = auts.iter().map(restrict_exterior).collect();
    group_from_elements(sts.points(), &restricted)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AutCoincidence {
    pub sts_order: u128,
    pub quasigroup_order: u128,
    pub exterior_order: u128,
    /// Size of the element list found by plain backtracking.
    pub naive_count: usize,
    pub all_equal: bool,
}

/// Computes `Aut` of the system, its quasigroup and its exterior loop by
/// separate searches and compares them as groups on the points.
pub fn aut_coincidence(sts: &Sts, limits: &Limits) -> Result<AutCoincidence> {
    let naive = sts_automorphisms_naive(sts, limits)?;
    let sts_group = group_from_elements(sts.points(), &naive)?;
    let q = automorphism_group(sts, limits)?;
    let ext = exterior_group(sts, limits)?;
    let all_equal = sts_group.order() == naive.len() as u128
        && sts_group.same_group(&q)
        && q.same_group(&ext)
        && naive.iter().all(|p| sts.preserves(p));
    Ok(AutCoincidence {
        sts_order: sts_group.order(),
        quasigroup_order: q.order(),
        exterior_order: ext.order(),
        naive_count: naive.len(),
        all_equal,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct T4Report {
    /// 1-based base point.
    pub base: usize,
    pub interior_order: u128,
    pub stabilizer_order: u128,
    pub exterior_order: u128,
    pub equal: bool,
}

/// Compares `Aut` of the interior loop at `base` (0-based) with the
/// stabilizer of `base` in `Aut` of the exterior loop.
pub fn t4_finite_check(sts: &Sts, base: usize, limits: &Limits) -> Result<T4Report> {
    let interior = FiniteLoop::interior(sts, base)?;
    let inner = group_from_elements(sts.points(), &loop_automorphisms(&interior, limits)?)?;
    let ext = exterior_group(sts, limits)?;
    let stab = ext.stabilizer(base)?;
    Ok(T4Report {
        base: base + 1,
        interior_order: inner.order(),
        stabilizer_order: stab.order(),
        exterior_order: ext.order(),
        equal: inner.same_group(&stab),
    })
}
