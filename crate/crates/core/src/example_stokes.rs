//! The two-factor example: exponential factors `0` and `1/t`, the coverings
//! `𝔄`, `𝔄̃` and their common refinement `𝔅` of the fibre, the gluing matrices
//! `N_π`, `N_0` and the resulting Stokes data.
//!
//! At `ϑ = π` the curves `α₂, α₄` carry the basis of `H¹` coming from `𝔄`, the
//! rotated curves `α̃₁, α̃₃` the one coming from `𝔄̃`; at `ϑ = 0` the roles are
//! exchanged. The refinement `𝔅` is frozen below as a table of incidences. Its
//! zero cells are the pieces `B_j`, `j ∈ J′`, its one cells are labelled by
//! pairs of `K′`, and crossing a leak picks up `S` or `T`.
//!
//! The `ϑ = 0` refinement is the `ϑ = π` one with the two leaks exchanged.

use crate::angle::Angle;
use crate::cech::ring::{ring_diag, ring_matmul};
use crate::cech::{
    change_of_basis, refinement_map, BasisChange, CechDatum, CopyId, Generator, GroupWord, Incidence,
    MatrixRep, MonodromyRep, OneCell, RatMatrix, RingElement,
};
use crate::divisor_config::{validate, DivisorConfig};
use crate::error::{Error, Result};
use crate::exponent_order::ExponentialFactor;
use crate::fiber::b_set;

pub const J_PRIME: [u32; 5] = [2, 3, 9, 10, 11];

pub const K_PRIME: [(u32, u32); 20] = [
    (1, 2),
    (1, 9),
    (1, 11),
    (2, 3),
    (2, 8),
    (2, 9),
    (2, 10),
    (2, 11),
    (3, 9),
    (3, 10),
    (3, 11),
    (4, 9),
    (4, 10),
    (4, 11),
    (5, 9),
    (5, 10),
    (6, 9),
    (8, 9),
    (9, 10),
    (10, 11),
];

/// Number of connected components of `B_i ∩ B_j`.
pub fn k(i: u32, j: u32) -> usize {
    match (i, j) {
        (3, 9) | (6, 9) => 2,
        _ => 1,
    }
}

// One cells of the frozen refinement, all drawn from K′.
const B_ONE_CELLS: [(u32, u32); 7] = [(1, 11), (2, 9), (2, 10), (3, 9), (3, 10), (3, 11), (4, 11)];

// (one cell, zero cell, sign, word) at ϑ = π.
const B_INCIDENCES: [((u32, u32), u32, i8, &str); 12] = [
    ((4, 11), 11, 1, "1"),
    ((3, 11), 11, -1, "1"),
    ((1, 11), 11, 1, "1"),
    ((3, 11), 3, 1, "1"),
    ((3, 9), 3, -1, "1"),
    ((3, 10), 3, -1, "1"),
    ((2, 10), 2, 1, "1"),
    ((2, 9), 2, 1, "S"),
    ((2, 9), 9, 1, "1"),
    ((3, 9), 9, -1, "T^-1"),
    ((3, 10), 10, 1, "1"),
    ((2, 10), 10, -1, "1"),
];

fn pair_label((i, j): (u32, u32)) -> String {
    format!("({i},{j})")
}

fn b_datum_pi() -> CechDatum {
    let one_cells: Vec<OneCell> = B_ONE_CELLS
        .iter()
        .map(|p| OneCell { id: pair_label(*p), multiplicity: 1 })
        .collect();
    let zero_cells: Vec<String> = J_PRIME.iter().map(|j| format!("B{j}")).collect();
    let cell = |p: (u32, u32)| B_ONE_CELLS.iter().position(|q| *q == p).expect("listed one cell");
    let zero = |j: u32| J_PRIME.iter().position(|q| *q == j).expect("listed zero cell");
    let incidences = B_INCIDENCES
        .iter()
        .map(|(p, j, sign, w)| Incidence {
            copy: CopyId::new(cell(*p), 0),
            zero_cell: zero(*j),
            sign: *sign,
            word: w.parse().expect("frozen word"),
        })
        .collect();
    CechDatum {
        zero_cells,
        one_cells,
        incidences,
        basis_cells: vec![CopyId::new(cell((1, 11)), 0), CopyId::new(cell((3, 9)), 0)],
    }
}

fn swap_leaks(d: &CechDatum) -> CechDatum {
    let mut out = d.clone();
    for inc in &mut out.incidences {
        inc.word = inc.word.swap_generators(Generator::S, Generator::T);
    }
    out
}

/// One-cell-only covering of the fibre by the curves `α_i` (or `α̃_i`) that
/// meet the support. There are no zero cells, so `H¹ = C¹`.
fn curve_datum(prefix: &str, labels: &[u32]) -> CechDatum {
    CechDatum {
        zero_cells: vec![],
        one_cells: labels
            .iter()
            .map(|i| OneCell { id: format!("{prefix}{i}"), multiplicity: 1 })
            .collect(),
        incidences: vec![],
        basis_cells: (0..labels.len()).map(|i| CopyId::new(i, 0)).collect(),
    }
}

/// The comparison of the two coverings at one direction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GluingData {
    pub theta: Angle,
    /// Coverings `𝔄` and `𝔄̃` restricted to the full support.
    pub coarse: CechDatum,
    pub coarse_rotated: CechDatum,
    pub refined: CechDatum,
    /// Fine copy hit by each curve of `coarse` / `coarse_rotated`, with the transport word.
    pub coarse_assignment: Vec<(CopyId, GroupWord)>,
    pub rotated_assignment: Vec<(CopyId, GroupWord)>,
}

impl GluingData {
    /// `ref_{𝔄→𝔅}` of the basis, the reduction targets.
    pub fn targets(&self) -> Result<Vec<Vec<RingElement>>> {
        let map = refinement_map(&self.coarse, &self.refined, &self.coarse_assignment)?;
        self.coarse
            .copies()
            .into_iter()
            .map(|c| Ok(map.apply(&self.coarse.unit_cochain(c)?)))
            .collect()
    }

    /// `ref_{𝔄̃→𝔅}` of the rotated basis.
    pub fn sources(&self) -> Result<Vec<Vec<RingElement>>> {
        let map = refinement_map(&self.coarse_rotated, &self.refined, &self.rotated_assignment)?;
        self.coarse_rotated
            .copies()
            .into_iter()
            .map(|c| Ok(map.apply(&self.coarse_rotated.unit_cochain(c)?)))
            .collect()
    }

    pub fn change_of_basis(&self, rep: &MonodromyRep) -> Result<BasisChange> {
        change_of_basis(&self.refined, rep, &self.targets()?, &self.sources()?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExampleBundle {
    pub config: DivisorConfig,
    pub at_pi: GluingData,
    pub at_zero: GluingData,
    /// Continuation from `ϑ = 0` to `ϑ = π`, and back.
    pub mu_zero_pi: GroupWord,
    pub mu_pi_zero: GroupWord,
}

impl ExampleBundle {
    /// `#K′` counted with the multiplicities `k(i, j)`.
    pub fn k_prime_copy_count() -> usize {
        K_PRIME.iter().map(|(i, j)| k(*i, *j)).sum()
    }

    /// The full circle `μ₀^π ∘ μ_π⁰`.
    pub fn rotation_composite(&self) -> GroupWord {
        self.mu_zero_pi.mul(&self.mu_pi_zero)
    }
}

/// Curves `α_i` of `𝔄` inside the support `B_ψ^ϑ` at `ϑ ∈ {0, π}`: the regular
/// puncture gives `α₁` (at 0) or `α₂` (at π), the puncture at infinity `α₃` or `α₄`.
pub fn covering_a(config: &DivisorConfig, psi: &ExponentialFactor, theta: Angle) -> Result<CechDatum> {
    let offset = if theta == Angle::ZERO {
        1
    } else if theta == Angle::pi() {
        2
    } else {
        return Err(Error::UnsupportedTwist(format!(
            "the coverings are only modelled at 0 and π, not {theta}"
        )));
    };
    let b = b_set(config, psi, theta)?;
    let mut labels: Vec<u32> = b
        .punctures
        .iter()
        .map(|p| if p.label.starts_with('~') { offset } else { offset + 2 })
        .collect();
    labels.sort_unstable();
    Ok(curve_datum("α", &labels))
}

pub fn build_bundle() -> ExampleBundle {
    let config = DivisorConfig::worked_example(1);
    let refined_pi = b_datum_pi();
    let refined_zero = swap_leaks(&refined_pi);
    let at = |d: &CechDatum, p: (u32, u32)| {
        CopyId::new(d.find_one_cell(&pair_label(p)).expect("frozen cell"), 0)
    };
    let id = GroupWord::identity;
    let at_pi = GluingData {
        theta: Angle::pi(),
        coarse: curve_datum("α", &[2, 4]),
        coarse_rotated: curve_datum("~α", &[1, 3]),
        coarse_assignment: vec![(at(&refined_pi, (1, 11)), id()), (at(&refined_pi, (3, 9)), id())],
        rotated_assignment: vec![(at(&refined_pi, (4, 11)), id()), (at(&refined_pi, (2, 10)), id())],
        refined: refined_pi,
    };
    let at_zero = GluingData {
        theta: Angle::ZERO,
        coarse: curve_datum("α", &[1, 3]),
        coarse_rotated: curve_datum("~α", &[2, 4]),
        coarse_assignment: vec![(at(&refined_zero, (3, 9)), id()), (at(&refined_zero, (1, 11)), id())],
        rotated_assignment: vec![(at(&refined_zero, (2, 10)), id()), (at(&refined_zero, (4, 11)), id())],
        refined: refined_zero,
    };
    ExampleBundle {
        config,
        at_pi,
        at_zero,
        mu_zero_pi: GroupWord::gen(Generator::U),
        mu_pi_zero: GroupWord::identity(),
    }
}

/// `N_π`: the rotated basis `(ã₁, ã₃)` in terms of `(a₂, a₄)`.
pub fn compute_n_pi(rep: &MonodromyRep) -> Result<BasisChange> {
    build_bundle().at_pi.change_of_basis(rep)
}

/// `N_0`: the rotated basis `(ã₂, ã₄)` in terms of `(a₁, a₃)`.
pub fn compute_n_zero(rep: &MonodromyRep) -> Result<BasisChange> {
    build_bundle().at_zero.change_of_basis(rep)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedPiece {
    pub factor: ExponentialFactor,
    pub dim: usize,
}

/// Graded spaces `(G_φ)` at `θ₀ = π`, `(H_φ)` at `θ₁ = 0`, and the gluing
/// matrices `S = S₀¹ : G → H` and `S′ = S₁⁰ : H → G`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StokesDatum {
    pub rank: Option<usize>,
    pub g: Vec<GradedPiece>,
    pub h: Vec<GradedPiece>,
    pub s: BasisChange,
    pub s_prime: BasisChange,
}

fn graded(config: &DivisorConfig, r: usize) -> Result<Vec<GradedPiece>> {
    validate(config)?;
    Ok(vec![
        GradedPiece { factor: ExponentialFactor::Zero, dim: r },
        GradedPiece { factor: ExponentialFactor::inverse_t(), dim: r },
    ])
}

fn matmul(a: &BasisChange, b: &BasisChange) -> Result<BasisChange> {
    match (a, b) {
        (BasisChange::Symbolic(x), BasisChange::Symbolic(y)) => Ok(BasisChange::Symbolic(ring_matmul(x, y))),
        (BasisChange::Matrix(x), BasisChange::Matrix(y)) => Ok(BasisChange::Matrix(x * y)),
        _ => Err(Error::DimensionMismatch("mixing symbolic and matrix blocks".into())),
    }
}

fn rotation_matrix(rep: &MonodromyRep, w: &GroupWord) -> BasisChange {
    let d = ring_diag(&[RingElement::word(w.clone()), RingElement::word(w.clone())]);
    match rep {
        MonodromyRep::Symbolic => BasisChange::Symbolic(d),
        MonodromyRep::Matrix(m) => BasisChange::Matrix(m.eval_matrix(&d)),
    }
}

pub fn stokes_data(rep: &MonodromyRep) -> Result<StokesDatum> {
    let bundle = build_bundle();
    let r = rep.matrix().map(MatrixRep::rank);
    let s = bundle.at_pi.change_of_basis(rep)?;
    let n0 = bundle.at_zero.change_of_basis(rep)?;
    let s_prime = matmul(&rotation_matrix(rep, &bundle.rotation_composite()), &n0)?;
    let dims = r.unwrap_or(1);
    Ok(StokesDatum {
        rank: r,
        g: graded(&bundle.config, dims)?,
        h: graded(&bundle.config, dims)?,
        s,
        s_prime,
    })
}

/// `S₁⁰ · S₀¹`, the composition once around the circle.
pub fn total_monodromy(sd: &StokesDatum) -> Result<BasisChange> {
    matmul(&sd.s_prime, &sd.s)
}

fn evaluated(m: &BasisChange, rep: &MatrixRep) -> RatMatrix {
    match m {
        BasisChange::Symbolic(x) => rep.eval_matrix(x),
        BasisChange::Matrix(x) => x.clone(),
    }
}

/// Checks the clauses of a Stokes datum: matching gradings of dimension `r`,
/// `S` block upper and `S′` block lower triangular, invertible diagonal
/// blocks, `S` and `S′` invertible.
pub fn validate_stokes_datum(sd: &StokesDatum, rep: &MonodromyRep) -> Result<()> {
    let m = rep.matrix().ok_or(Error::NeedsMatrixBackend)?;
    let r = m.rank();
    let violation = |s: &str| Err(Error::StokesDatumViolation(s.to_string()));
    if sd.g.len() != sd.h.len() {
        return violation("G and H have different numbers of graded pieces");
    }
    for (g, h) in sd.g.iter().zip(&sd.h) {
        if g.factor != h.factor || g.dim != h.dim {
            return violation("dim G_φ differs from dim H_φ");
        }
        if g.dim != r {
            return violation("graded pieces must have dimension r");
        }
    }
    let s = evaluated(&sd.s, m);
    let sp = evaluated(&sd.s_prime, m);
    let n = sd.g.len();
    if s.rows() != n * r || s.cols() != n * r || sp.rows() != n * r || sp.cols() != n * r {
        return violation("matrix size does not match the gradings");
    }
    let lower = |i: usize, j: usize| i > j;
    let upper = |i: usize, j: usize| i < j;
    for (m, name, forbidden, clause) in [
        (&s, "S", &lower as &dyn Fn(usize, usize) -> bool, "S upper-triangularity"),
        (&sp, "S'", &upper as &dyn Fn(usize, usize) -> bool, "S' lower-triangularity"),
    ] {
        for i in 0..n {
            for j in 0..n {
                if forbidden(i, j) && !m.block(i, j, r).is_zero() {
                    return violation(clause);
                }
            }
            if !m.block(i, i, r).is_invertible() {
                return violation(&format!("{name} diagonal block invertibility"));
            }
        }
    }
    if !s.is_invertible() {
        return violation("S invertibility");
    }
    if !sp.is_invertible() {
        return violation("S' invertibility");
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cech::ratmat::rat;
    use crate::cech::ring::render_matrix;

    fn symbolic(m: BasisChange) -> Vec<Vec<String>> {
        match m {
            BasisChange::Symbolic(x) => render_matrix(&x),
            BasisChange::Matrix(_) => panic!("expected symbolic"),
        }
    }

    fn scalars() -> MonodromyRep {
        MonodromyRep::Matrix(MatrixRep::scalars(rat(2, 1), rat(3, 1), rat(5, 1)).unwrap())
    }

    #[test]
    fn index_sets() {
        assert_eq!(K_PRIME.len(), 20);
        assert_eq!(ExampleBundle::k_prime_copy_count(), 22);
        let b = build_bundle();
        assert_eq!(b.at_pi.refined.zero_cells, vec!["B2", "B3", "B9", "B10", "B11"]);
        for (i, j) in B_ONE_CELLS {
            assert!(K_PRIME.contains(&(i, j)));
        }
        assert_eq!(b.rotation_composite(), GroupWord::gen(Generator::U));
    }

    #[test]
    fn n_pi_symbolic() {
        let n = symbolic(compute_n_pi(&MonodromyRep::Symbolic).unwrap());
        assert_eq!(n, vec![vec!["-1", "1 - S·T^-1"], vec!["0", "-S·T^-1"]]);
    }

    #[test]
    fn n_zero_symbolic() {
        let n = symbolic(compute_n_zero(&MonodromyRep::Symbolic).unwrap());
        assert_eq!(n, vec![vec!["-T·S^-1", "0"], vec!["1 - T·S^-1", "-1"]]);
    }

    #[test]
    fn scalar_substitution() {
        let rep = scalars();
        let f = |n: i64, d: i64| rat(n, d);
        let expect = |rows: [[(i64, i64); 2]; 2]| {
            BasisChange::Matrix(RatMatrix::from_rows(
                rows.iter().map(|r| r.iter().map(|(n, d)| f(*n, *d)).collect()).collect(),
            )
            .unwrap())
        };
        assert_eq!(compute_n_pi(&rep).unwrap(), expect([[(-1, 1), (1, 3)], [(0, 1), (-2, 3)]]));
        assert_eq!(compute_n_zero(&rep).unwrap(), expect([[(-3, 2), (0, 1)], [(-1, 2), (-1, 1)]]));
        let sd = stokes_data(&rep).unwrap();
        assert_eq!(sd.s_prime, expect([[(-15, 2), (0, 1)], [(-5, 2), (-5, 1)]]));
        validate_stokes_datum(&sd, &rep).unwrap();
    }

    #[test]
    fn trivial_rep() {
        let rep = MonodromyRep::Matrix(MatrixRep::identity(2));
        let minus = BasisChange::Matrix(&RatMatrix::zeros(4, 4) - &RatMatrix::identity(4));
        let sd = stokes_data(&rep).unwrap();
        assert_eq!(sd.s, minus);
        assert_eq!(sd.s_prime, minus);
        assert_eq!(total_monodromy(&sd).unwrap(), BasisChange::Matrix(RatMatrix::identity(4)));
    }

    #[test]
    fn swapped_triangularity_is_rejected() {
        let rep = scalars();
        let mut sd = stokes_data(&rep).unwrap();
        std::mem::swap(&mut sd.s, &mut sd.s_prime);
        assert_eq!(
            validate_stokes_datum(&sd, &rep),
            Err(Error::StokesDatumViolation("S upper-triangularity".into()))
        );
    }

    #[test]
    fn curves_in_the_support() {
        let cfg = DivisorConfig::worked_example(2);
        let t = ExponentialFactor::inverse_t();
        let ids = |d: CechDatum| d.one_cells.into_iter().map(|c| c.id).collect::<Vec<_>>();
        assert_eq!(ids(covering_a(&cfg, &ExponentialFactor::Zero, Angle::ZERO).unwrap()), ["α1"]);
        assert_eq!(ids(covering_a(&cfg, &t, Angle::ZERO).unwrap()), ["α1", "α3"]);
        assert_eq!(ids(covering_a(&cfg, &t, Angle::pi()).unwrap()), ["α4"]);
        assert_eq!(ids(covering_a(&cfg, &ExponentialFactor::Zero, Angle::pi()).unwrap()), ["α2", "α4"]);
    }

    #[test]
    fn backends_agree_on_random_reps() {
        use rand::SeedableRng;
        let ns = compute_n_pi(&MonodromyRep::Symbolic).unwrap();
        let nz = compute_n_zero(&MonodromyRep::Symbolic).unwrap();
        for rank in 1..=3 {
            for seed in 0..4 {
                let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
                let m = MatrixRep::random(rank, &mut rng);
                let rep = MonodromyRep::Matrix(m.clone());
                assert_eq!(compute_n_pi(&rep).unwrap(), BasisChange::Matrix(evaluated(&ns, &m)));
                assert_eq!(compute_n_zero(&rep).unwrap(), BasisChange::Matrix(evaluated(&nz, &m)));
                validate_stokes_datum(&stokes_data(&rep).unwrap(), &rep).unwrap();
            }
        }
    }
}
