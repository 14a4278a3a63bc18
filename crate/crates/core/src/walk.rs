//! Spectral analysis of convolution powers of class probabilities.
//!
//! A class probability expands in the irreducible characters as
//! `P = U + Σ_j m_j χ_j`. The elements `(d_j/|G|) Σ_g χ_j(g) g` are orthogonal
//! central idempotents of the group algebra, so convolution acts on the
//! `j`-th component by the scalar `b_j = |G| m_j / d_j` and
//!
//! ```text
//! P^(n) − U = (1/|G|) Σ_j d_j b_j^n χ_j,
//! ‖P^(n) − U‖ = (1/|G|) sqrt(Σ_j d_j² |b_j|^{2n}).
//! ```
//!
//! For the squaring walk `P(g) = r(g)/|G|` the Frobenius–Schur indicator gives
//! `|G| m_j = ν(χ_j)`, so `b_j ∈ {0, ±1/d_j}` and the distance depends only on
//! the degrees of the real nonprincipal characters.

use serde::Serialize;

use crate::character::{linear_real, real_nonprincipal, CharacterTable, C64, LATTICE_TOL};
use crate::error::WalkError;
use crate::group::{
    commutator_subgroup, squares_subgroup, ClassPartition, GroupTable, SquaringProfile,
};
use crate::oracle::DenseProbability;

const SUM_TOL: f64 = 1e-12;
const RECONSTRUCTION_TOL: f64 = 1e-10;

/// A probability constant on conjugacy classes, stored as the value taken on
/// each element of each class.
#[derive(Clone, Debug, PartialEq)]
pub struct ClassProbability {
    pub per_class: Vec<f64>,
}

impl ClassProbability {
    pub fn new(per_class: Vec<f64>, classes: &ClassPartition) -> Result<Self, WalkError> {
        if per_class.len() != classes.num_classes() {
            return Err(WalkError::InvalidProbability(format!(
                "{} values for {} classes",
                per_class.len(),
                classes.num_classes()
            )));
        }
        if let Some(c) = per_class.iter().position(|&p| p < 0.0 || !p.is_finite()) {
            return Err(WalkError::InvalidProbability(format!(
                "value {} on class {c}",
                per_class[c]
            )));
        }
        let total: f64 = per_class
            .iter()
            .zip(&classes.class_sizes)
            .map(|(p, &s)| p * s as f64)
            .sum();
        if (total - 1.0).abs() > SUM_TOL {
            return Err(WalkError::InvalidProbability(format!("total mass {total}")));
        }
        Ok(Self { per_class })
    }

    /// Normalizes nonnegative class weights so that `Σ_c |C_c| P(c) = 1`.
    pub fn from_weights(weights: &[f64], classes: &ClassPartition) -> Result<Self, WalkError> {
        let total: f64 = weights
            .iter()
            .zip(&classes.class_sizes)
            .map(|(w, &s)| w * s as f64)
            .sum();
        if total <= 0.0 || !total.is_finite() {
            return Err(WalkError::InvalidProbability(format!("total weight {total}")));
        }
        Self::new(weights.iter().map(|w| w / total).collect(), classes)
    }

    pub fn uniform(classes: &ClassPartition) -> Self {
        Self {
            per_class: vec![1.0 / classes.order() as f64; classes.num_classes()],
        }
    }

    pub fn point_mass_identity(classes: &ClassPartition) -> Self {
        let mut per_class = vec![0.0; classes.num_classes()];
        per_class[0] = 1.0;
        Self { per_class }
    }

    /// Collapses a per-element probability that is constant on classes.
    pub fn from_dense(dense: &DenseProbability, classes: &ClassPartition) -> Result<Self, WalkError> {
        let mut per_class = Vec::with_capacity(classes.num_classes());
        for c in 0..classes.num_classes() {
            let members = classes.members(c);
            let value = dense.per_element[members[0]];
            if members
                .iter()
                .any(|&g| (dense.per_element[g] - value).abs() > SUM_TOL)
            {
                return Err(WalkError::NotClassFunction { class: c });
            }
            per_class.push(value);
        }
        Self::new(per_class, classes)
    }

    pub fn to_dense(&self, classes: &ClassPartition) -> DenseProbability {
        DenseProbability {
            per_element: classes.class_of.iter().map(|&c| self.per_class[c]).collect(),
        }
    }
}

/// A real class function given per class, e.g. `P^(n) − U`.
#[derive(Clone, Debug, PartialEq)]
pub struct SignedClassFunction {
    pub per_class: Vec<f64>,
}

/// Eigen-data of convolution by a class probability, one entry per
/// nonprincipal character.
#[derive(Clone, Debug, PartialEq)]
pub struct WalkSpectrum {
    pub order: usize,
    /// Row indices into the character table.
    pub characters: Vec<usize>,
    /// Expansion coefficients `m_j`.
    pub m: Vec<C64>,
    /// Eigenvalues `b_j = |G| m_j / d_j`.
    pub b: Vec<C64>,
    pub d: Vec<usize>,
    /// `|G| m_j` snapped to `{−1, 0, 1}`; only set for the squaring walk.
    pub fs: Option<Vec<i8>>,
}

/// `P(g) = r(g) / |G|` with `r(g)` the number of square roots of `g`.
pub fn square_walk_probability(
    profile: &SquaringProfile,
    classes: &ClassPartition,
) -> Result<ClassProbability, WalkError> {
    class_probability_from_counts(&profile.r, classes)
}

/// `P(g) = |f⁻¹(g)| / |G|` for an arbitrary map `f` on element indices.
pub fn induced_walk_probability(
    group: &GroupTable,
    classes: &ClassPartition,
    f: &[usize],
) -> Result<ClassProbability, WalkError> {
    let n = group.order();
    if f.len() != n {
        return Err(WalkError::InvalidProbability(format!(
            "map has {} entries for a group of order {n}",
            f.len()
        )));
    }
    let mut r = vec![0usize; n];
    for &t in f {
        if t >= n {
            return Err(WalkError::InvalidProbability(format!("map value {t} out of range")));
        }
        r[t] += 1;
    }
    class_probability_from_counts(&r, classes)
}

fn class_probability_from_counts(
    r: &[usize],
    classes: &ClassPartition,
) -> Result<ClassProbability, WalkError> {
    let order = classes.order() as f64;
    let mut per_class = Vec::with_capacity(classes.num_classes());
    for c in 0..classes.num_classes() {
        let members = classes.members(c);
        let value = r[members[0]];
        if members.iter().any(|&g| r[g] != value) {
            return Err(WalkError::NotClassFunction { class: c });
        }
        per_class.push(value as f64 / order);
    }
    ClassProbability::new(per_class, classes)
}

/// Expands `P` in the character basis and checks that the expansion
/// reproduces `P` on every class.
pub fn fourier_coefficients(
    p: &ClassProbability,
    table: &CharacterTable,
) -> Result<WalkSpectrum, WalkError> {
    let order = table.order as f64;
    let k = table.class_sizes.len();
    if p.per_class.len() != k {
        return Err(WalkError::InvalidProbability(format!(
            "{} class values for a table with {k} classes",
            p.per_class.len()
        )));
    }
    // (P, χ) with the conjugate on the basis side, so that P = Σ_χ (P, χ) χ
    let coefficient = |row: &[C64]| -> C64 {
        let sum: C64 = (0..k)
            .map(|c| row[c].conj() * (p.per_class[c] * table.class_sizes[c] as f64))
            .sum();
        sum / order
    };
    let all: Vec<C64> = table.values.iter().map(|row| coefficient(row)).collect();

    let mut residual: f64 = 0.0;
    for c in 0..k {
        let rebuilt: C64 = all.iter().zip(&table.values).map(|(m, row)| m * row[c]).sum();
        residual = residual.max((rebuilt - C64::new(p.per_class[c], 0.0)).norm());
    }
    if residual >= RECONSTRUCTION_TOL {
        return Err(WalkError::ReconstructionFailure { residual });
    }

    let characters: Vec<usize> = (0..table.num_characters())
        .filter(|&j| j != table.principal_index)
        .collect();
    let m: Vec<C64> = characters.iter().map(|&j| all[j]).collect();
    let d: Vec<usize> = characters.iter().map(|&j| table.degrees[j]).collect();
    let b = m
        .iter()
        .zip(&d)
        .map(|(m, &d)| m * (order / d as f64))
        .collect();
    Ok(WalkSpectrum {
        order: table.order,
        characters,
        m,
        b,
        d,
        fs: None,
    })
}

/// Spectrum of the squaring walk, with `|G| m_j` checked against and snapped
/// to `{−1, 0, 1}`.
pub fn square_walk_spectrum(
    table: &CharacterTable,
    classes: &ClassPartition,
    profile: &SquaringProfile,
) -> Result<WalkSpectrum, WalkError> {
    let p = square_walk_probability(profile, classes)?;
    let mut spectrum = fourier_coefficients(&p, table)?;
    let mut fs = Vec::with_capacity(spectrum.m.len());
    for (i, m) in spectrum.m.iter().enumerate() {
        let scaled = m * table.order as f64;
        let snapped = scaled.re.round();
        if (scaled - C64::new(snapped, 0.0)).norm() >= LATTICE_TOL || snapped.abs() > 1.0 {
            return Err(WalkError::IndicatorOffLattice {
                character: spectrum.characters[i],
                value: scaled.re,
            });
        }
        fs.push(snapped as i8);
    }
    spectrum.fs = Some(fs);
    Ok(spectrum)
}

/// `P^(n) − U` on every class.
pub fn deviation(spectrum: &WalkSpectrum, table: &CharacterTable, n: u32) -> SignedClassFunction {
    assert!(n >= 1, "step count must be at least 1");
    let order = spectrum.order as f64;
    let powers: Vec<C64> = spectrum
        .b
        .iter()
        .zip(&spectrum.d)
        .map(|(b, &d)| b.powu(n) * d as f64)
        .collect();
    let per_class = (0..table.class_sizes.len())
        .map(|c| {
            let sum: C64 = spectrum
                .characters
                .iter()
                .zip(&powers)
                .map(|(&j, w)| w * table.values[j][c])
                .sum();
            sum.re / order
        })
        .collect();
    SignedClassFunction { per_class }
}

/// `‖P^(n) − U‖ = (1/|G|) sqrt(Σ_j d_j² |b_j|^{2n})`
pub fn exact_l2_distance(spectrum: &WalkSpectrum, n: u32) -> f64 {
    assert!(n >= 1, "step count must be at least 1");
    let sum: f64 = spectrum
        .b
        .iter()
        .zip(&spectrum.d)
        .map(|(b, &d)| (d * d) as f64 * b.norm_sqr().powi(n as i32))
        .sum();
    sum.sqrt() / spectrum.order as f64
}

/// Distance of the squaring walk from uniform after `n` steps, from the
/// degrees of the real nonprincipal characters alone:
/// `(1/|G|) sqrt(Σ_{χ ∈ R(G)} d_χ^{2(1−n)})`.
pub fn theorem1_distance(table: &CharacterTable, n: u32) -> f64 {
    assert!(n >= 1, "step count must be at least 1");
    let sum: f64 = real_nonprincipal(table)
        .into_iter()
        .map(|j| (table.degrees[j] as f64).powi(-2 * (n as i32 - 1)))
        .fold(0.0, |acc, x| acc + x);
    sum.sqrt() / table.order as f64
}

/// Leading behaviour of the squaring walk's distance to uniform.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum AsymptoticRate {
    /// `R(G)` is empty: `P = U` and every distance is zero.
    ExactlyUniform,
    /// distance ∼ `leading_coefficient · base^n` with `base = 1/d`,
    /// `leading_coefficient = √t · d / |G|`.
    Leading {
        leading_coefficient: f64,
        base: f64,
        d: usize,
        t: usize,
        /// `√t / |G|` when `d = 1`: the walk does not converge to uniform.
        limit: Option<f64>,
    },
}

impl AsymptoticRate {
    pub fn converges(&self) -> bool {
        match self {
            AsymptoticRate::ExactlyUniform => true,
            AsymptoticRate::Leading { d, .. } => *d > 1,
        }
    }
}

pub fn asymptotic_rate(table: &CharacterTable) -> AsymptoticRate {
    let degrees: Vec<usize> = real_nonprincipal(table)
        .into_iter()
        .map(|j| table.degrees[j])
        .collect();
    let Some(&d) = degrees.iter().min() else {
        return AsymptoticRate::ExactlyUniform;
    };
    let t = degrees.iter().filter(|&&x| x == d).count();
    let order = table.order as f64;
    let root_t = (t as f64).sqrt();
    AsymptoticRate::Leading {
        leading_coefficient: root_t * d as f64 / order,
        base: 1.0 / d as f64,
        d,
        t,
        limit: (d == 1).then(|| root_t / order),
    }
}

/// The four equivalent non-convergence conditions, each computed on its own.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConvergenceReport {
    /// `P^(n)` does not converge to `U` on `G`.
    pub predicate_a: bool,
    /// `R₁(G)` is nonempty.
    pub predicate_b: bool,
    /// `G ≠ G₁ = ⟨g²⟩`.
    pub predicate_c: bool,
    /// `|G / G′|` is even.
    pub predicate_d: bool,
    /// Smallest degree in `R(G)`.
    pub min_real_degree: Option<usize>,
    /// Number of characters in `R(G)` of that degree.
    pub multiplicity: usize,
    pub g1_order: usize,
    pub commutator_order: usize,
}

impl ConvergenceReport {
    pub fn converges(&self) -> bool {
        !self.predicate_a
    }
}

pub fn convergence_report(
    group: &GroupTable,
    table: &CharacterTable,
    profile: &SquaringProfile,
) -> Result<ConvergenceReport, WalkError> {
    let rate = asymptotic_rate(table);
    let (min_real_degree, multiplicity) = match rate {
        AsymptoticRate::ExactlyUniform => (None, 0),
        AsymptoticRate::Leading { d, t, .. } => (Some(d), t),
    };
    let g1_order = squares_subgroup(group, profile).len();
    let commutator_order = commutator_subgroup(group).len();

    let a = !rate.converges();
    let b = !linear_real(table).is_empty();
    let c = g1_order != group.order();
    let d = (group.order() / commutator_order).is_multiple_of(2);
    if !(a == b && b == c && c == d) {
        return Err(WalkError::EquivalenceViolation { a, b, c, d });
    }
    Ok(ConvergenceReport {
        predicate_a: a,
        predicate_b: b,
        predicate_c: c,
        predicate_d: d,
        min_real_degree,
        multiplicity,
        g1_order,
        commutator_order,
    })
}

/// Convergence of the squaring walk on `G₁`, witnessed by the identity lying
/// in the support (the identity is its own square), which keeps the support
/// out of every nontrivial coset of a normal subgroup of `G₁`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct G1Convergence {
    pub converges: bool,
    pub identity_in_support: bool,
    pub g1_order: usize,
}

pub fn converges_on_g1(group: &GroupTable, profile: &SquaringProfile) -> G1Convergence {
    let identity_in_support = profile.support_indices.first() == Some(&0);
    G1Convergence {
        converges: identity_in_support,
        identity_in_support,
        g1_order: squares_subgroup(group, profile).len(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::character::character_table;
    use crate::group::{conjugacy_classes, squaring_profile, DEFAULT_MAX_ORDER};
    use crate::zoo::ZooSpec;

    struct Fixture {
        group: GroupTable,
        classes: ClassPartition,
        table: CharacterTable,
        profile: SquaringProfile,
    }

    fn fixture(spec: &str) -> Fixture {
        let group = ZooSpec::parse(spec).unwrap().build(DEFAULT_MAX_ORDER).unwrap();
        let classes = conjugacy_classes(&group);
        let table = character_table(&group, &classes).unwrap();
        let profile = squaring_profile(&group);
        Fixture {
            group,
            classes,
            table,
            profile,
        }
    }

    #[test]
    fn square_walk_probabilities() {
        let c2 = fixture("C2");
        let p = square_walk_probability(&c2.profile, &c2.classes).unwrap();
        assert_eq!(p.per_class, vec![1.0, 0.0]);

        // S3 classes: identity, 3-cycles, transpositions
        let s3 = fixture("S3");
        let p = square_walk_probability(&s3.profile, &s3.classes).unwrap();
        assert_eq!(p.per_class, vec![4.0 / 6.0, 1.0 / 6.0, 0.0]);

        let c5 = fixture("C5");
        let p = square_walk_probability(&c5.profile, &c5.classes).unwrap();
        assert!(p.per_class.iter().all(|&x| x == 0.2));
    }

    #[test]
    fn induced_walks() {
        let s3 = fixture("S3");
        let n = s3.group.order();
        let identity: Vec<usize> = (0..n).collect();
        assert_eq!(
            induced_walk_probability(&s3.group, &s3.classes, &identity).unwrap(),
            ClassProbability::uniform(&s3.classes)
        );
        let squares: Vec<usize> = (0..n).map(|h| s3.group.mul(h, h)).collect();
        assert_eq!(
            induced_walk_probability(&s3.group, &s3.classes, &squares).unwrap(),
            square_walk_probability(&s3.profile, &s3.classes).unwrap()
        );
        assert_eq!(
            induced_walk_probability(&s3.group, &s3.classes, &vec![0; n]).unwrap(),
            ClassProbability::point_mass_identity(&s3.classes)
        );
        // everything onto one transposition is not a class function
        let one = s3.classes.members(2)[0];
        assert_eq!(
            induced_walk_probability(&s3.group, &s3.classes, &vec![one; n]),
            Err(WalkError::NotClassFunction { class: 2 })
        );
        assert!(induced_walk_probability(&s3.group, &s3.classes, &[0]).is_err());
    }

    #[test]
    fn invalid_class_probabilities() {
        let s3 = fixture("S3");
        assert!(ClassProbability::new(vec![0.5, 0.5], &s3.classes).is_err());
        assert!(ClassProbability::new(vec![1.0, 0.1, -0.15], &s3.classes).is_err());
        assert!(ClassProbability::new(vec![0.5, 0.0, 0.0], &s3.classes).is_err());
        assert!(ClassProbability::from_weights(&[0.0, 0.0, 0.0], &s3.classes).is_err());
    }

    #[test]
    fn uniform_and_point_mass_spectra() {
        let q8 = fixture("Q8");
        let uniform = fourier_coefficients(&ClassProbability::uniform(&q8.classes), &q8.table).unwrap();
        assert!(uniform.m.iter().chain(&uniform.b).all(|x| x.norm() < 1e-15));
        for n in [1, 4] {
            assert!(exact_l2_distance(&uniform, n) < 1e-15);
            assert!(deviation(&uniform, &q8.table, n).per_class.iter().all(|x| x.abs() < 1e-15));
        }

        let delta = ClassProbability::point_mass_identity(&q8.classes);
        let spectrum = fourier_coefficients(&delta, &q8.table).unwrap();
        assert!(spectrum.b.iter().all(|b| (b - C64::new(1.0, 0.0)).norm() < 1e-12));
        // ‖δ_e − U‖² = (1/|G|)((1 − 1/|G|)² + (|G| − 1)/|G|²) = (|G| − 1)/|G|²
        let expect = 7f64.sqrt() / 8.0;
        for n in [1, 3, 10] {
            assert!((exact_l2_distance(&spectrum, n) - expect).abs() < 1e-12);
        }
    }

    #[test]
    fn s3_square_walk_spectrum() {
        let s3 = fixture("S3");
        let spectrum = square_walk_spectrum(&s3.table, &s3.classes, &s3.profile).unwrap();
        // sign character and the degree-2 character are both real: indicator 1
        assert_eq!(spectrum.fs, Some(vec![1, 1]));
        assert!((spectrum.b[0] - C64::new(1.0, 0.0)).norm() < 1e-12);
        assert!((spectrum.b[1] - C64::new(0.5, 0.0)).norm() < 1e-12);
        assert!((exact_l2_distance(&spectrum, 1) - 2f64.sqrt() / 6.0).abs() < 1e-12);
    }

    #[test]
    fn deviation_at_one_step_is_p_minus_u() {
        let s4 = fixture("S4");
        let p = ClassProbability::from_weights(&[3.0, 0.0, 1.0, 2.0, 0.5], &s4.classes).unwrap();
        let spectrum = fourier_coefficients(&p, &s4.table).unwrap();
        let dev = deviation(&spectrum, &s4.table, 1);
        for (x, p) in dev.per_class.iter().zip(&p.per_class) {
            assert!((x - (p - 1.0 / 24.0)).abs() < 1e-10);
        }
    }

    #[test]
    fn closed_form_distances() {
        let c2 = fixture("C2");
        let a4 = fixture("A4");
        let q8 = fixture("Q8");
        for n in 1..=10 {
            assert!((theorem1_distance(&c2.table, n) - 0.5).abs() < 1e-12);
            let a4_expect = 3f64.powi(1 - n as i32) / 12.0;
            assert!((theorem1_distance(&a4.table, n) - a4_expect).abs() < 1e-12);
            let q8_expect = (3.0 + 4f64.powi(1 - n as i32)).sqrt() / 8.0;
            assert!((theorem1_distance(&q8.table, n) - q8_expect).abs() < 1e-12);
        }
    }

    #[test]
    fn asymptotics() {
        match asymptotic_rate(&fixture("A4").table) {
            AsymptoticRate::Leading { d, t, base, leading_coefficient, limit } => {
                assert_eq!((d, t), (3, 1));
                assert!((base - 1.0 / 3.0).abs() < 1e-15);
                assert!((leading_coefficient - 0.25).abs() < 1e-15);
                assert_eq!(limit, None);
            }
            other => panic!("{other:?}"),
        }
        let s3 = fixture("S3");
        match asymptotic_rate(&s3.table) {
            AsymptoticRate::Leading { d, t, limit, .. } => {
                assert_eq!((d, t), (1, 1));
                assert!((limit.unwrap() - 1.0 / 6.0).abs() < 1e-15);
            }
            other => panic!("{other:?}"),
        }
        assert!((theorem1_distance(&s3.table, 30) - 1.0 / 6.0).abs() < 1e-9);
        assert_eq!(asymptotic_rate(&fixture("C7").table), AsymptoticRate::ExactlyUniform);
    }

    #[test]
    fn convergence_reports() {
        for (spec, nonconvergent, g1) in [("S3", true, 3), ("A4", false, 12), ("C2", true, 1)] {
            let f = fixture(spec);
            let report = convergence_report(&f.group, &f.table, &f.profile).unwrap();
            assert_eq!(report.predicate_a, nonconvergent, "{spec}");
            assert_eq!(report.g1_order, g1, "{spec}");
        }
    }

    #[test]
    fn g1_convergence_witness() {
        for (spec, g1) in [("Q8", 2), ("S3", 3), ("C7", 7)] {
            let f = fixture(spec);
            let w = converges_on_g1(&f.group, &f.profile);
            assert!(w.converges && w.identity_in_support);
            assert_eq!(w.g1_order, g1);
        }
    }
}
