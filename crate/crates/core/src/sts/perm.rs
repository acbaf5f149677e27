//! Permutations and permutation groups with stabilizer chains.
//!
//! Permutations act on the right: `p.then(&q)` applies `p` first, and the
//! image of a point `x` under `p` is `p[x]`.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Vec<usize>);

impl Perm {
    pub fn identity(degree: usize) -> Self {
        Perm((0..degree).collect())
    }

    /// Builds a permutation from its image list.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &x in &images {
            if x >= images.len() || std::mem::replace(&mut seen[x], true) {
                return Err(Error::precondition(format!(
                    "{images:?} is not a permutation"
                )));
            }
        }
        Ok(Perm(images))
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn image(&self, x: usize) -> usize {
        self.0[x]
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Perm) -> Perm {
        Perm(self.0.iter().map(|&x| other.0[x]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x] = i;
        }
        Perm(inv)
    }

    fn first_moved(&self) -> Option<usize> {
        self.0
            .iter()
            .enumerate()
            .find(|&(i, &x)| i != x)
            .map(|(i, _)| i)
    }
}

impl fmt::Display for Perm {
    /// Cycle notation with 1-based points; `()` for the identity.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut seen = vec![false; self.0.len()];
        let mut any = false;
        for start in 0..self.0.len() {
            if seen[start] || self.0[start] == start {
                continue;
            }
            any = true;
            write!(f, "(")?;
            let mut x = start;
            let mut first = true;
            while !seen[x] {
                seen[x] = true;
                if !first {
                    write!(f, " ")?;
                }
                write!(f, "{}", x + 1)?;
                first = false;
                x = self.0[x];
            }
            write!(f, ")")?;
        }
        if !any {
            write!(f, "()")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
struct Level {
    base: usize,
    /// Strong generators first introduced at this level.
    gens: Vec<Perm>,
    /// `transversal[p]` maps the base point to `p`.
    transversal: HashMap<usize, Perm>,
}

/// A permutation group stored as a base and strong generating set.
#[derive(Debug, Clone)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Perm>,
    levels: Vec<Level>,
}

impl PermGroup {
    pub fn new(degree: usize, generators: Vec<Perm>) -> Result<Self> {
        Self::with_base(degree, generators, &[])
    }

    /// Builds the stabilizer chain with `base_prefix` as the first base points.
    pub fn with_base(degree: usize, generators: Vec<Perm>, base_prefix: &[usize]) -> Result<Self> {
        if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
            return Err(Error::precondition(format!(
                "generator {g} has degree {} not {degree}",
                g.degree()
            )));
        }
        if let Some(&b) = base_prefix.iter().find(|&&b| b >= degree) {
            return Err(Error::precondition(format!("base point {b} out of range")));
        }
        let generators: Vec<Perm> = generators
            .into_iter()
            .filter(|g| !g.is_identity())
            .collect();
        let mut group = PermGroup {
            degree,
            generators: generators.clone(),
            levels: Vec::new(),
        };
        for &b in base_prefix {
            if !group.levels.iter().any(|l| l.base == b) {
                group.levels.push(Level {
                    base: b,
                    gens: Vec::new(),
                    transversal: HashMap::new(),
                });
            }
        }
        for i in 0..group.levels.len() {
            group.rebuild_transversal(i);
        }
        for g in generators {
            group.insert(g, 0);
        }
        group.complete();
        Ok(group)
    }

    pub fn trivial(degree: usize) -> Self {
        PermGroup {
            degree,
            generators: Vec::new(),
            levels: Vec::new(),
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base).collect()
    }

    /// Strong generators fixing the first `k` base points.
    fn gens_from(&self, k: usize) -> Vec<Perm> {
        self.levels[k..]
            .iter()
            .flat_map(|l| l.gens.iter().cloned())
            .collect()
    }

    fn rebuild_transversal(&mut self, k: usize) {
        let gens = self.gens_from(k);
        let base = self.levels[k].base;
        let mut transversal = HashMap::from([(base, Perm::identity(self.degree))]);
        let mut queue = VecDeque::from([base]);
        while let Some(p) = queue.pop_front() {
            for s in &gens {
                let q = s.image(p);
                if !transversal.contains_key(&q) {
                    let u = transversal[&p].then(s);
                    transversal.insert(q, u);
                    queue.push_back(q);
                }
            }
        }
        self.levels[k].transversal = transversal;
    }

    /// Sifts `g` from level `k`; returns the residue and the level where it stopped.
    fn sift_from(&self, mut g: Perm, k: usize) -> (Perm, usize) {
        for (i, level) in self.levels.iter().enumerate().skip(k) {
            let p = g.image(level.base);
            match level.transversal.get(&p) {
                Some(u) => g = g.then(&u.inverse()),
                None => return (g, i),
            }
        }
        (g, self.levels.len())
    }

    fn insert(&mut self, g: Perm, k: usize) -> bool {
        let (residue, j) = self.sift_from(g, k);
        if residue.is_identity() {
            return false;
        }
        if j == self.levels.len() {
            let base = residue.first_moved().expect("non-identity residue");
            self.levels.push(Level {
                base,
                gens: Vec::new(),
                transversal: HashMap::new(),
            });
        }
        self.levels[j].gens.push(residue);
        for i in 0..=j {
            self.rebuild_transversal(i);
        }
        true
    }

    /// Adds sifted Schreier generators until every level is closed.
    fn complete(&mut self) {
        for i in 0..self.levels.len() {
            self.rebuild_transversal(i);
        }
        'restart: loop {
            for k in (0..self.levels.len()).rev() {
                let gens = self.gens_from(k);
                let mut points: Vec<usize> = self.levels[k].transversal.keys().copied().collect();
                points.sort_unstable();
                for p in points {
                    for s in &gens {
                        let u_p = &self.levels[k].transversal[&p];
                        let u_q = &self.levels[k].transversal[&s.image(p)];
                        let schreier = u_p.then(s).then(&u_q.inverse());
                        if self.insert(schreier, k + 1) {
                            continue 'restart;
                        }
                    }
                }
            }
            break;
        }
    }

    /// Product of the fundamental orbit sizes.
    pub fn order(&self) -> u128 {
        self.levels
            .iter()
            .map(|l| l.transversal.len() as u128)
            .product()
    }

    pub fn contains(&self, g: &Perm) -> bool {
        g.degree() == self.degree && self.sift_from(g.clone(), 0).0.is_identity()
    }

    pub fn orbit(&self, x: usize) -> Vec<usize> {
        let mut seen = HashSet::from([x]);
        let mut queue = VecDeque::from([x]);
        while let Some(p) = queue.pop_front() {
            for s in &self.generators {
                if seen.insert(s.image(p)) {
                    queue.push_back(s.image(p));
                }
            }
        }
        let mut orbit: Vec<usize> = seen.into_iter().collect();
        orbit.sort_unstable();
        orbit
    }

    /// The subgroup fixing `x`.
    pub fn stabilizer(&self, x: usize) -> Result<PermGroup> {
        let chain = PermGroup::with_base(self.degree, self.generators.clone(), &[x])?;
        let gens = if chain.levels.len() > 1 {
            chain.gens_from(1)
        } else {
            Vec::new()
        };
        PermGroup::new(self.degree, gens)
    }

    /// Equal as sets of permutations.
    pub fn same_group(&self, other: &PermGroup) -> bool {
        self.degree == other.degree
            && self.order() == other.order()
            && other.generators.iter().all(|g| self.contains(g))
    }

    /// Every element, by breadth-first closure over the generators.
    ///
    /// Independent of the stabilizer chain; used to cross-check it.
    pub fn elements_by_closure(&self, cap: usize) -> Result<Vec<Perm>> {
        naive_closure(self.degree, &self.generators, cap)
    }
}

/// Breadth-first closure of a generating set.
pub fn naive_closure(degree: usize, generators: &[Perm], cap: usize) -> Result<Vec<Perm>> {
    let id = Perm::identity(degree);
    let mut seen = HashSet::from([id.clone()]);
    let mut elements = vec![id];
    let mut i = 0;
    while i < elements.len() {
        for s in generators {
            let h = elements[i].then(s);
            if seen.insert(h.clone()) {
                if elements.len() >= cap {
                    return Err(Error::cap("group order", cap));
                }
                elements.push(h);
            }
        }
        i += 1;
    }
    Ok(elements)
}
