//! Finite permutation groups materialized as dense Cayley tables, plus the
//! structural pieces the walk analysis needs: conjugacy classes, square roots,
//! generated subgroups and the commutator subgroup.

use std::collections::{HashMap, VecDeque};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::GroupError;
use crate::perm::{Permutation, MAX_DEGREE};

/// Default cap on `|G|`; the multiplication table then has at most 25·10⁶ entries.
pub const DEFAULT_MAX_ORDER: usize = 5000;

/// Groups up to this order get an exhaustive associativity check.
pub const EXHAUSTIVE_CHECK_ORDER: usize = 200;

/// A finite group with elements indexed `0..order`, index 0 being the identity.
///
/// Elements are numbered in breadth-first discovery order from the identity,
/// right-multiplying by the generators in the order they were given.
#[derive(Clone, Debug)]
pub struct GroupTable {
    degree: usize,
    elements: Vec<Permutation>,
    mul: Vec<u32>,
    inv: Vec<u32>,
    generator_indices: Vec<usize>,
}

/// Closure of `generators` under composition.
///
/// With no generators the result is the trivial group on one point.
pub fn generate_group(
    generators: &[Permutation],
    max_order: usize,
) -> Result<GroupTable, GroupError> {
    let degree = generators.first().map_or(1, Permutation::degree);
    generate_group_on(degree, generators, max_order)
}

/// Like [`generate_group`] but with an explicit degree, so that an empty
/// generator list still fixes the point set.
pub fn generate_group_on(
    degree: usize,
    generators: &[Permutation],
    max_order: usize,
) -> Result<GroupTable, GroupError> {
    if degree > MAX_DEGREE {
        return Err(GroupError::DegreeLimitExceeded {
            degree,
            limit: MAX_DEGREE,
        });
    }
    if max_order == 0 {
        return Err(GroupError::OrderCapExceeded { max_order });
    }
    for g in generators {
        if g.degree() != degree {
            return Err(GroupError::DegreeMismatch(degree, g.degree()));
        }
    }

    let identity = Permutation::identity(degree);
    let mut elements = vec![identity.clone()];
    let mut index: HashMap<Permutation, usize> = HashMap::from([(identity, 0)]);
    // right_gen[i * ngens + s] = index of elements[i] · generators[s]
    let ngens = generators.len();
    let mut right_gen: Vec<usize> = Vec::new();
    // every non-identity element is parent · generator for an earlier parent
    let mut parent: Vec<(usize, usize)> = vec![(0, 0)];

    let mut queue = VecDeque::from([0usize]);
    while let Some(x) = queue.pop_front() {
        for (s, gen) in generators.iter().enumerate() {
            let y = elements[x].compose(gen);
            let idx = match index.get(&y) {
                Some(&idx) => idx,
                None => {
                    if elements.len() == max_order {
                        return Err(GroupError::OrderCapExceeded { max_order });
                    }
                    let idx = elements.len();
                    index.insert(y.clone(), idx);
                    elements.push(y);
                    parent.push((x, s));
                    queue.push_back(idx);
                    idx
                }
            };
            right_gen.push(idx);
        }
    }

    let order = elements.len();
    let mut mul = vec![0u32; order * order];
    for i in 0..order {
        let row = i * order;
        mul[row] = i as u32;
        for j in 1..order {
            let (p, s) = parent[j];
            let ip = mul[row + p] as usize;
            mul[row + j] = right_gen[ip * ngens + s] as u32;
        }
    }
    let mut inv = vec![0u32; order];
    for i in 0..order {
        let j = (0..order)
            .find(|&j| mul[i * order + j] == 0)
            .expect("every element of a finite permutation group has an inverse");
        inv[i] = j as u32;
    }
    let generator_indices = generators.iter().map(|g| index[g]).collect();

    Ok(GroupTable {
        degree,
        elements,
        mul,
        inv,
        generator_indices,
    })
}

impl GroupTable {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Permutation {
        &self.elements[i]
    }

    pub fn generator_indices(&self) -> &[usize] {
        &self.generator_indices
    }

    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        self.elements.iter().position(|e| e == p)
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order() + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    /// `g⁻¹ · x · g`
    #[inline]
    pub fn conjugate(&self, x: usize, g: usize) -> usize {
        self.mul(self.mul(self.inv(g), x), g)
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (a + 1..n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Checks the group axioms on the table. Associativity is exhaustive up to
    /// [`EXHAUSTIVE_CHECK_ORDER`] and sampled on `samples` random triples above it.
    pub fn verify_axioms(&self, samples: usize, seed: u64) -> Result<(), String> {
        let n = self.order();
        for i in 0..n {
            if self.mul(0, i) != i || self.mul(i, 0) != i {
                return Err(format!("identity law fails at {i}"));
            }
            if self.mul(i, self.inv(i)) != 0 {
                return Err(format!("inverse law fails at {i}"));
            }
        }
        let composes = |i: usize, j: usize| {
            self.elements[self.mul(i, j)] == self.elements[i].compose(&self.elements[j])
        };
        let assoc = |a: usize, b: usize, c: usize| {
            self.mul(self.mul(a, b), c) == self.mul(a, self.mul(b, c))
        };
        if n <= EXHAUSTIVE_CHECK_ORDER {
            for i in 0..n {
                for j in 0..n {
                    if !composes(i, j) {
                        return Err(format!("table entry ({i}, {j}) disagrees with composition"));
                    }
                }
            }
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if !assoc(a, b, c) {
                            return Err(format!("associativity fails at ({a}, {b}, {c})"));
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..samples {
                let (a, b, c) = (
                    rng.random_range(0..n),
                    rng.random_range(0..n),
                    rng.random_range(0..n),
                );
                if !composes(a, b) {
                    return Err(format!("table entry ({a}, {b}) disagrees with composition"));
                }
                if !assoc(a, b, c) {
                    return Err(format!("associativity fails at ({a}, {b}, {c})"));
                }
            }
        }
        Ok(())
    }
}

/// Conjugacy classes, identity class first, then by (size, smallest member).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassPartition {
    pub class_of: Vec<usize>,
    pub class_sizes: Vec<usize>,
    /// Smallest element index in each class.
    pub representatives: Vec<usize>,
    members: Vec<Vec<usize>>,
}

impl ClassPartition {
    pub fn num_classes(&self) -> usize {
        self.class_sizes.len()
    }

    /// Sorted element indices of class `c`.
    pub fn members(&self, c: usize) -> &[usize] {
        &self.members[c]
    }

    pub fn order(&self) -> usize {
        self.class_of.len()
    }
}

pub fn conjugacy_classes(group: &GroupTable) -> ClassPartition {
    let n = group.order();
    let gens = group.generator_indices();
    let mut seen = vec![false; n];
    let mut orbits: Vec<Vec<usize>> = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut orbit = vec![start];
        let mut head = 0;
        while head < orbit.len() {
            let x = orbit[head];
            head += 1;
            for &g in gens {
                let y = group.conjugate(x, g);
                if !seen[y] {
                    seen[y] = true;
                    orbit.push(y);
                }
            }
        }
        orbit.sort_unstable();
        orbits.push(orbit);
    }
    // the identity orbit {0} has size 1 and minimal index, so it sorts first
    orbits.sort_by_key(|o| (o.len(), o[0]));

    let mut class_of = vec![0; n];
    for (c, orbit) in orbits.iter().enumerate() {
        for &x in orbit {
            class_of[x] = c;
        }
    }
    ClassPartition {
        class_of,
        class_sizes: orbits.iter().map(Vec::len).collect(),
        representatives: orbits.iter().map(|o| o[0]).collect(),
        members: orbits,
    }
}

/// Number of square roots of every element, and the set `T` of squares.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquaringProfile {
    pub r: Vec<usize>,
    pub support_indices: Vec<usize>,
}

pub fn squaring_profile(group: &GroupTable) -> SquaringProfile {
    let mut r = vec![0; group.order()];
    for h in 0..group.order() {
        r[group.mul(h, h)] += 1;
    }
    let support_indices = (0..r.len()).filter(|&g| r[g] > 0).collect();
    SquaringProfile { r, support_indices }
}

/// Subgroup generated by `subset` (and the identity), as sorted element indices.
pub fn subgroup_generated(group: &GroupTable, subset: &[usize]) -> Vec<usize> {
    let n = group.order();
    let mut member = vec![false; n];
    member[0] = true;
    let mut elements = vec![0usize];
    let mut gens: Vec<usize> = Vec::new();
    for &s in subset {
        if member[s] {
            continue;
        }
        // Extend the current subgroup by s. Right-multiplying the existing
        // elements and every new one by all generators closes it again.
        gens.push(s);
        let mut head = 0;
        while head < elements.len() {
            let x = elements[head];
            head += 1;
            for &g in &gens {
                let y = group.mul(x, g);
                if !member[y] {
                    member[y] = true;
                    elements.push(y);
                }
            }
        }
    }
    elements.sort_unstable();
    elements
}

/// Subgroup generated by all commutators `g⁻¹h⁻¹gh`, as sorted element indices.
pub fn commutator_subgroup(group: &GroupTable) -> Vec<usize> {
    let n = group.order();
    let mut is_commutator = vec![false; n];
    for g in 0..n {
        for h in 0..n {
            let c = group.mul(group.mul(group.inv(g), group.inv(h)), group.mul(g, h));
            is_commutator[c] = true;
        }
    }
    let commutators: Vec<usize> = (0..n).filter(|&c| is_commutator[c]).collect();
    subgroup_generated(group, &commutators)
}

/// `G₁ = ⟨g² : g ∈ G⟩`
pub fn squares_subgroup(group: &GroupTable, profile: &SquaringProfile) -> Vec<usize> {
    subgroup_generated(group, &profile.support_indices)
}
