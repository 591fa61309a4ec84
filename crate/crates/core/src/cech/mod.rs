//! Two-term Čech complexes `C⁰ → C¹` for extension-by-zero local systems.
//!
//! A [`CechDatum`] lists the zero cells carrying sections, the one cells (each
//! with a number of copies, one per connected component of the overlap), and
//! how a section on a zero cell restricts to each copy: a sign and the transport
//! word picked up by analytic continuation. Cochains take values in the group
//! algebra, so a one-cochain is a vector of [`RingElement`]s indexed by copies.
//!
//! The group algebra acts on values from the right, so a word reads as a path
//! traversed left to right. In the matrix backend a value `v` transported along
//! `w` is `v · ρ(w)` with `v` a row vector; the linear algebra below works with
//! the transposed blocks `ρ(w)ᵀ` acting on columns.

pub mod ratmat;
pub mod rep;
pub mod ring;
pub mod word;

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

pub use ratmat::RatMatrix;
pub use rep::{MatrixRep, MonodromyRep};
pub use ring::{RingElement, RingMatrix};
pub use word::{Generator, GroupWord};

use crate::error::{Error, Result};

/// Copy `copy` (0-based) of the one cell with index `cell`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CopyId {
    pub cell: usize,
    pub copy: usize,
}

impl CopyId {
    pub fn new(cell: usize, copy: usize) -> Self {
        Self { cell, copy }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OneCell {
    pub id: String,
    pub multiplicity: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Incidence {
    pub copy: CopyId,
    pub zero_cell: usize,
    /// `+1` or `-1`.
    pub sign: i8,
    pub word: GroupWord,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CechDatum {
    pub zero_cells: Vec<String>,
    pub one_cells: Vec<OneCell>,
    pub incidences: Vec<Incidence>,
    pub basis_cells: Vec<CopyId>,
}

impl CechDatum {
    /// All one-cell copies, cell by cell.
    pub fn copies(&self) -> Vec<CopyId> {
        self.one_cells
            .iter()
            .enumerate()
            .flat_map(|(i, c)| (0..c.multiplicity).map(move |k| CopyId::new(i, k)))
            .collect()
    }

    pub fn copy_count(&self) -> usize {
        self.one_cells.iter().map(|c| c.multiplicity).sum()
    }

    pub fn copy_index(&self, id: CopyId) -> Option<usize> {
        let cell = self.one_cells.get(id.cell)?;
        if id.copy >= cell.multiplicity {
            return None;
        }
        let before: usize = self.one_cells[..id.cell].iter().map(|c| c.multiplicity).sum();
        Some(before + id.copy)
    }

    /// `"(1,11)"` for a single copy, `"(3,9)#2"` for the second of several.
    pub fn copy_label(&self, id: CopyId) -> String {
        let cell = &self.one_cells[id.cell];
        if cell.multiplicity == 1 {
            cell.id.clone()
        } else {
            format!("{}#{}", cell.id, id.copy + 1)
        }
    }

    pub fn find_one_cell(&self, id: &str) -> Option<usize> {
        self.one_cells.iter().position(|c| c.id == id)
    }

    pub fn find_zero_cell(&self, id: &str) -> Option<usize> {
        self.zero_cells.iter().position(|c| c == id)
    }

    pub fn validate(&self) -> Result<()> {
        let mut seen = BTreeSet::new();
        for z in &self.zero_cells {
            if !seen.insert(z) {
                return Err(Error::MalformedDatum(format!("duplicate zero cell {z}")));
            }
        }
        let mut seen = BTreeSet::new();
        for c in &self.one_cells {
            if c.multiplicity == 0 {
                return Err(Error::MalformedDatum(format!("one cell {} has multiplicity 0", c.id)));
            }
            if !seen.insert(&c.id) {
                return Err(Error::MalformedDatum(format!("duplicate one cell {}", c.id)));
            }
        }
        for inc in &self.incidences {
            if self.copy_index(inc.copy).is_none() {
                return Err(Error::MalformedDatum(format!("incidence on unknown copy {:?}", inc.copy)));
            }
            if inc.zero_cell >= self.zero_cells.len() {
                return Err(Error::MalformedDatum(format!(
                    "incidence on unknown zero cell {}",
                    inc.zero_cell
                )));
            }
            if inc.sign != 1 && inc.sign != -1 {
                return Err(Error::MalformedDatum(format!("sign {} is not ±1", inc.sign)));
            }
        }
        let mut seen = BTreeSet::new();
        for b in &self.basis_cells {
            if self.copy_index(*b).is_none() {
                return Err(Error::MalformedDatum(format!("basis cell {b:?} does not exist")));
            }
            if !seen.insert(b) {
                return Err(Error::MalformedDatum(format!("basis cell {b:?} listed twice")));
            }
        }
        Ok(())
    }

    /// The same complex with every incidence sign reversed.
    pub fn with_flipped_signs(&self) -> CechDatum {
        let mut out = self.clone();
        for inc in &mut out.incidences {
            inc.sign = -inc.sign;
        }
        out
    }

    /// Cochain with value 1 on one copy.
    pub fn unit_cochain(&self, id: CopyId) -> Result<Vec<RingElement>> {
        let idx = self
            .copy_index(id)
            .ok_or_else(|| Error::MalformedDatum(format!("unknown copy {id:?}")))?;
        let mut c = vec![RingElement::zero(); self.copy_count()];
        c[idx] = RingElement::one();
        Ok(c)
    }
}

/// `d₀` with rows indexed by copies and columns by zero cells.
pub fn d0_matrix(datum: &CechDatum) -> Result<RingMatrix> {
    datum.validate()?;
    let mut m = vec![vec![RingElement::zero(); datum.zero_cells.len()]; datum.copy_count()];
    for inc in &datum.incidences {
        let row = datum.copy_index(inc.copy).expect("validated");
        let term = RingElement::term(ratmat::rat(inc.sign as i64, 1), inc.word.clone());
        m[row][inc.zero_cell] = &m[row][inc.zero_cell] + &term;
    }
    Ok(m)
}

// One step of unit-pivot elimination: the column of d0 (already reduced by the
// earlier steps) and the inverse of its entry in the pivot row.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Pivot {
    row: usize,
    column: Vec<RingElement>,
    inverse: RingElement,
}

/// `C¹ / im d₀` with a designated basis of copies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CohomologyPresentation {
    pub datum: CechDatum,
    pub d0: RingMatrix,
    pub basis_rows: Vec<usize>,
    pub backend: MonodromyRep,
    /// `#copies · r − rank d₀`; only known in the matrix backend.
    pub dim: Option<usize>,
    pub rank_d0: Option<usize>,
    pivots: Vec<Pivot>,
    // Matrix backend: independent columns of the evaluated d0.
    image: Option<RatMatrix>,
}

impl CohomologyPresentation {
    /// Dimension of `H¹` as a count of basis copies (times `r` in the matrix backend).
    pub fn basis_len(&self) -> usize {
        self.basis_rows.len()
    }
}

fn eliminate(d0: &RingMatrix, basis_rows: &[usize], rows: usize, cols: usize) -> Result<Vec<Pivot>> {
    let mut columns: Vec<Option<Vec<RingElement>>> =
        (0..cols).map(|j| Some((0..rows).map(|i| d0[i][j].clone()).collect())).collect();
    let mut remaining: Vec<usize> = (0..rows).filter(|i| !basis_rows.contains(i)).collect();
    let mut pivots = Vec::new();
    while !remaining.is_empty() {
        let found = remaining.iter().enumerate().find_map(|(pos, &k)| {
            columns.iter().enumerate().find_map(|(j, col)| {
                let col = col.as_ref()?;
                col[k].unit_inverse().map(|inv| (pos, k, j, inv))
            })
        });
        let Some((pos, k, j, inverse)) = found else {
            let stuck = remaining.iter().all(|&k| {
                columns.iter().flatten().all(|col| col[k].is_zero())
            });
            return Err(if stuck { Error::BasisNotTransverse } else { Error::PivotNotUnit });
        };
        let column = columns[j].take().expect("active column");
        for other in columns.iter_mut().flatten() {
            let f = &other[k] * &inverse;
            if !f.is_zero() {
                for (x, y) in other.iter_mut().zip(&column) {
                    *x = &*x - &(&f * y);
                }
            }
        }
        pivots.push(Pivot { row: k, column, inverse });
        remaining.remove(pos);
    }
    // Surviving columns live on basis rows only; any nonzero one is a relation
    // among the basis cells.
    if columns.iter().flatten().any(|c| c.iter().any(|x| !x.is_zero())) {
        return Err(Error::BasisNotTransverse);
    }
    Ok(pivots)
}

/// Presents `H¹ = C¹ / im d₀`.
///
/// The symbolic backend runs unit-pivot elimination of the non-basis copies.
/// The matrix backend evaluates `d₀` and checks that the basis copies
/// complement its image.
pub fn h1(datum: &CechDatum, rep: &MonodromyRep) -> Result<CohomologyPresentation> {
    let d0 = d0_matrix(datum)?;
    let rows = datum.copy_count();
    let cols = datum.zero_cells.len();
    let mut basis_rows: Vec<usize> = datum
        .basis_cells
        .iter()
        .map(|b| datum.copy_index(*b).expect("validated"))
        .collect();
    basis_rows.sort_unstable();
    let mut pres = CohomologyPresentation {
        datum: datum.clone(),
        d0,
        basis_rows,
        backend: rep.clone(),
        dim: None,
        rank_d0: None,
        pivots: Vec::new(),
        image: None,
    };
    match rep {
        MonodromyRep::Symbolic => {
            pres.pivots = eliminate(&pres.d0, &pres.basis_rows, rows, cols)?;
        }
        MonodromyRep::Matrix(m) => {
            let r = m.rank();
            let d = act_matrix(m, &pres.d0, rows, cols);
            let indep = d.pivot_columns();
            let image = d.select_columns(&indep);
            let rank = indep.len();
            let dim = rows * r - rank;
            let full = image.hstack(&basis_embedding(rows, &pres.basis_rows, r));
            if dim != pres.basis_rows.len() * r || full.rank() != rows * r {
                return Err(Error::BasisNotTransverse);
            }
            pres.dim = Some(dim);
            pres.rank_d0 = Some(rank);
            pres.image = Some(image);
        }
    }
    Ok(pres)
}

fn basis_embedding(rows: usize, basis_rows: &[usize], r: usize) -> RatMatrix {
    let mut b = RatMatrix::zeros(rows * r, basis_rows.len() * r);
    for (l, &row) in basis_rows.iter().enumerate() {
        for i in 0..r {
            b[(row * r + i, l * r + i)] = num_traits::One::one();
        }
    }
    b
}

/// Representative of `cocycle` mod `im d₀` supported on the basis copies
/// (symbolic backend).
pub fn reduce_mod_image(pres: &CohomologyPresentation, cocycle: &[RingElement]) -> Result<Vec<RingElement>> {
    if !matches!(pres.backend, MonodromyRep::Symbolic) {
        return Err(Error::DimensionMismatch(
            "symbolic reduction on a matrix presentation; use reduce_mod_image_matrix".into(),
        ));
    }
    if cocycle.len() != pres.d0.len() {
        return Err(Error::DimensionMismatch(format!(
            "cochain has {} entries, complex has {} copies",
            cocycle.len(),
            pres.d0.len()
        )));
    }
    let mut c = cocycle.to_vec();
    for p in &pres.pivots {
        let f = &c[p.row] * &p.inverse;
        if f.is_zero() {
            continue;
        }
        for (x, y) in c.iter_mut().zip(&p.column) {
            *x = &*x - &(&f * y);
        }
    }
    Ok(c)
}

/// Coefficients of a reduced cochain on the basis copies, in `basis_cells` order.
pub fn basis_coordinates(pres: &CohomologyPresentation, reduced: &[RingElement]) -> Vec<RingElement> {
    pres.datum
        .basis_cells
        .iter()
        .map(|b| reduced[pres.datum.copy_index(*b).expect("validated")].clone())
        .collect()
}

/// Matrix backend: for an evaluated cochain (one `r x r` block per copy,
/// stacked), the blocks of its class on the basis cells, in `basis_cells` order.
pub fn reduce_mod_image_matrix(pres: &CohomologyPresentation, cochain: &RatMatrix) -> Result<Vec<RatMatrix>> {
    let (Some(image), MonodromyRep::Matrix(m)) = (&pres.image, &pres.backend) else {
        return Err(Error::NeedsMatrixBackend);
    };
    let r = m.rank();
    let rows = pres.d0.len();
    if cochain.rows() != rows * r {
        return Err(Error::DimensionMismatch("cochain does not match the complex".into()));
    }
    let system = image.hstack(&basis_embedding(rows, &pres.basis_rows, r));
    let sol = system.solve(cochain)?;
    let offset = image.cols();
    let by_row: Vec<RatMatrix> = (0..pres.basis_rows.len())
        .map(|l| sol.row_range(offset + l * r, offset + (l + 1) * r))
        .collect();
    // basis_rows is sorted; report in basis_cells order.
    Ok(pres
        .datum
        .basis_cells
        .iter()
        .map(|b| {
            let row = pres.datum.copy_index(*b).expect("validated");
            let pos = pres.basis_rows.iter().position(|&x| x == row).expect("basis row");
            by_row[pos].clone()
        })
        .collect())
}

fn act(rep: &MatrixRep, e: &RingElement) -> RatMatrix {
    rep.eval(e).transpose()
}

fn act_matrix(rep: &MatrixRep, m: &RingMatrix, rows: usize, cols: usize) -> RatMatrix {
    let r = rep.rank();
    let mut out = RatMatrix::zeros(rows * r, cols * r);
    for (i, row) in m.iter().enumerate() {
        for (j, e) in row.iter().enumerate() {
            if e.is_zero() {
                continue;
            }
            let b = act(rep, e);
            for a in 0..r {
                for c in 0..r {
                    out[(i * r + a, j * r + c)] = b[(a, c)].clone();
                }
            }
        }
    }
    out
}

/// Evaluates a symbolic cochain at a representation: one block per copy,
/// stacked, each acting on column vectors.
pub fn eval_cochain(rep: &MatrixRep, cochain: &[RingElement]) -> RatMatrix {
    let col: RingMatrix = cochain.iter().map(|e| vec![e.clone()]).collect();
    act_matrix(rep, &col, cochain.len(), 1)
}

/// Linear map `C¹(coarse) → C¹(fine)`: column `a` holds the image of the unit
/// cochain on coarse copy `a`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RefinementMap {
    pub matrix: RingMatrix,
}

impl RefinementMap {
    pub fn apply(&self, cochain: &[RingElement]) -> Vec<RingElement> {
        self.matrix
            .iter()
            .map(|row| {
                row.iter()
                    .zip(cochain)
                    .fold(RingElement::zero(), |acc, (m, c)| &acc + &(m * c))
            })
            .collect()
    }
}

/// Builds the refinement map from an assignment of one fine copy and a
/// transport word to every coarse copy (in `coarse.copies()` order).
pub fn refinement_map(
    coarse: &CechDatum,
    fine: &CechDatum,
    assignment: &[(CopyId, GroupWord)],
) -> Result<RefinementMap> {
    coarse.validate()?;
    fine.validate()?;
    let n = coarse.copy_count();
    if assignment.len() != n {
        return Err(Error::MalformedDatum(format!(
            "assignment covers {} of {n} coarse copies",
            assignment.len()
        )));
    }
    let mut matrix = vec![vec![RingElement::zero(); n]; fine.copy_count()];
    for (a, (target, w)) in assignment.iter().enumerate() {
        let row = fine
            .copy_index(*target)
            .ok_or_else(|| Error::MalformedDatum(format!("unknown fine copy {target:?}")))?;
        matrix[row][a] = &matrix[row][a] + &RingElement::word(w.clone());
    }
    Ok(RefinementMap { matrix })
}

/// Change of basis in either backend.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BasisChange {
    Symbolic(RingMatrix),
    /// Block `(i, l)` is the coefficient of target `l` in source `i`.
    Matrix(RatMatrix),
}

impl fmt::Display for BasisChange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisChange::Symbolic(m) => {
                for row in ring::render_matrix(m) {
                    writeln!(f, "[{}]", row.join(", "))?;
                }
                Ok(())
            }
            BasisChange::Matrix(m) => write!(f, "{m}"),
        }
    }
}

/// Matrix `N` with `source_i ≡ Σ_l N[i][l] · target_l` mod `im d₀`.
pub fn change_of_basis(
    fine: &CechDatum,
    rep: &MonodromyRep,
    targets: &[Vec<RingElement>],
    sources: &[Vec<RingElement>],
) -> Result<BasisChange> {
    let pres = h1(fine, rep)?;
    match rep {
        MonodromyRep::Symbolic => change_of_basis_symbolic(&pres, targets, sources).map(BasisChange::Symbolic),
        MonodromyRep::Matrix(_) => change_of_basis_matrix(&pres, targets, sources).map(BasisChange::Matrix),
    }
}

/// Symbolic route. The reduced targets must be monomial in the basis
/// coordinates (one unit per row and per column), which is what refinements
/// of basis cochains give.
pub fn change_of_basis_symbolic(
    pres: &CohomologyPresentation,
    targets: &[Vec<RingElement>],
    sources: &[Vec<RingElement>],
) -> Result<RingMatrix> {
    let n = pres.basis_len();
    if targets.len() != n || sources.len() != n {
        return Err(Error::NotABasis(format!(
            "expected {n} targets and sources, got {} and {}",
            targets.len(),
            sources.len()
        )));
    }
    let p: Vec<Vec<RingElement>> = targets
        .iter()
        .map(|t| reduce_mod_image(pres, t).map(|c| basis_coordinates(pres, &c)))
        .collect::<Result<_>>()?;
    // For each target l, the unique basis slot it occupies and the inverse weight.
    let mut slots = Vec::with_capacity(n);
    let mut used = BTreeSet::new();
    for (l, row) in p.iter().enumerate() {
        let nonzero: Vec<usize> = (0..n).filter(|&j| !row[j].is_zero()).collect();
        let [j] = nonzero[..] else {
            return Err(Error::NotABasis(format!("target {l} is not a monomial class")));
        };
        let inv = row[j]
            .unit_inverse()
            .ok_or_else(|| Error::NotABasis(format!("target {l} has a non-unit coefficient")))?;
        if !used.insert(j) {
            return Err(Error::NotABasis("two targets share a basis slot".into()));
        }
        slots.push((j, inv));
    }
    sources
        .iter()
        .map(|s| {
            let q = basis_coordinates(pres, &reduce_mod_image(pres, s)?);
            // Q_j = Σ_l P_lj N_il with P monomial gives N_il = P_lj⁻¹ Q_j.
            Ok(slots.iter().map(|(j, inv)| inv * &q[*j]).collect())
        })
        .collect()
}

/// Matrix route: evaluates the cochains and solves the block system exactly.
pub fn change_of_basis_matrix(
    pres: &CohomologyPresentation,
    targets: &[Vec<RingElement>],
    sources: &[Vec<RingElement>],
) -> Result<RatMatrix> {
    let MonodromyRep::Matrix(m) = &pres.backend else {
        return Err(Error::NeedsMatrixBackend);
    };
    let r = m.rank();
    let n = pres.basis_len();
    if targets.len() != n || sources.len() != n {
        return Err(Error::NotABasis(format!(
            "expected {n} targets and sources, got {} and {}",
            targets.len(),
            sources.len()
        )));
    }
    let coords = |c: &Vec<RingElement>| reduce_mod_image_matrix(pres, &eval_cochain(m, c));
    let p: Vec<Vec<RatMatrix>> = targets.iter().map(coords).collect::<Result<_>>()?;
    // In transposed form the coordinates satisfy Q_i = N_i · P with P block (l, j) = P_lj.
    let pmat = RatMatrix::from_blocks(&p, r);
    if !pmat.is_invertible() {
        return Err(Error::NotABasis("targets are linearly dependent in H¹".into()));
    }
    let pmat_t = pmat.transpose();
    let mut blocks = Vec::with_capacity(n);
    for s in sources {
        let q = coords(s)?;
        let qrow_t = RatMatrix::from_blocks(&q.iter().map(|b| vec![b.transpose()]).collect::<Vec<_>>(), r);
        // (N_i P)ᵀ = Pᵀ N_iᵀ, and the blocks of N_iᵀ are the untransposed ρ(N_il).
        let nrow_t = pmat_t.solve(&qrow_t)?;
        blocks.push(
            (0..n)
                .map(|l| nrow_t.row_range(l * r, (l + 1) * r))
                .collect::<Vec<_>>(),
        );
    }
    let nmat = RatMatrix::from_blocks(&blocks, r);
    if !nmat.is_invertible() {
        return Err(Error::NotABasis("sources are linearly dependent in H¹".into()));
    }
    Ok(nmat)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn e(s: &str) -> RingElement {
        s.parse().unwrap()
    }

    fn two_copy_datum() -> CechDatum {
        CechDatum {
            zero_cells: vec!["z".into()],
            one_cells: vec![
                OneCell { id: "a".into(), multiplicity: 1 },
                OneCell { id: "b".into(), multiplicity: 1 },
            ],
            incidences: vec![
                Incidence { copy: CopyId::new(0, 0), zero_cell: 0, sign: 1, word: GroupWord::identity() },
                Incidence {
                    copy: CopyId::new(1, 0),
                    zero_cell: 0,
                    sign: -1,
                    word: GroupWord::gen(Generator::S),
                },
            ],
            basis_cells: vec![CopyId::new(1, 0)],
        }
    }

    #[test]
    fn empty_datum() {
        let d = CechDatum::default();
        assert!(d0_matrix(&d).unwrap().is_empty());
        let p = h1(&d, &MonodromyRep::Matrix(MatrixRep::identity(2))).unwrap();
        assert_eq!(p.dim, Some(0));
    }

    #[test]
    fn no_zero_cells_means_h1_is_c1() {
        let d = CechDatum {
            one_cells: vec![OneCell { id: "a".into(), multiplicity: 2 }],
            basis_cells: vec![CopyId::new(0, 0), CopyId::new(0, 1)],
            ..Default::default()
        };
        let p = h1(&d, &MonodromyRep::Matrix(MatrixRep::identity(3))).unwrap();
        assert_eq!(p.dim, Some(6));
        let c = vec![e("S"), e("1 - T")];
        let p = h1(&d, &MonodromyRep::Symbolic).unwrap();
        assert_eq!(reduce_mod_image(&p, &c).unwrap(), c);
    }

    #[test]
    fn column_of_two_incidences() {
        let d = two_copy_datum();
        let m = d0_matrix(&d).unwrap();
        assert_eq!(m, vec![vec![e("1")], vec![e("-S")]]);
    }

    #[test]
    fn malformed_data_are_rejected() {
        let mut d = two_copy_datum();
        d.incidences[0].zero_cell = 4;
        assert!(matches!(d0_matrix(&d), Err(Error::MalformedDatum(_))));
        let mut d = two_copy_datum();
        d.one_cells[0].multiplicity = 0;
        assert!(matches!(d.validate(), Err(Error::MalformedDatum(_))));
    }

    #[test]
    fn reduction_moves_classes_onto_the_basis() {
        let d = two_copy_datum();
        let p = h1(&d, &MonodromyRep::Symbolic).unwrap();
        // (1, 0) ≡ (0, S) since (1, -S) is a coboundary.
        let r = reduce_mod_image(&p, &[e("1"), e("0")]).unwrap();
        assert_eq!(r, vec![e("0"), e("S")]);
        let col: Vec<RingElement> = p.d0.iter().map(|row| row[0].clone()).collect();
        assert!(reduce_mod_image(&p, &col).unwrap().iter().all(|x| x.is_zero()));
        let again = reduce_mod_image(&p, &r).unwrap();
        assert_eq!(again, r);
    }

    #[test]
    fn reduction_is_linear() {
        let d = two_copy_datum();
        let p = h1(&d, &MonodromyRep::Symbolic).unwrap();
        let a = vec![e("T"), e("U")];
        let b = vec![e("1 - S"), e("2")];
        let sum: Vec<RingElement> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
        let ra = reduce_mod_image(&p, &a).unwrap();
        let rb = reduce_mod_image(&p, &b).unwrap();
        let rs = reduce_mod_image(&p, &sum).unwrap();
        let expect: Vec<RingElement> = ra.iter().zip(&rb).map(|(x, y)| x + y).collect();
        assert_eq!(rs, expect);
    }

    #[test]
    fn sign_flip_leaves_classes_unchanged() {
        let d = two_copy_datum();
        let c = vec![e("T"), e("1")];
        let p = h1(&d, &MonodromyRep::Symbolic).unwrap();
        let q = h1(&d.with_flipped_signs(), &MonodromyRep::Symbolic).unwrap();
        assert_eq!(reduce_mod_image(&p, &c).unwrap(), reduce_mod_image(&q, &c).unwrap());
    }

    #[test]
    fn non_transverse_basis() {
        let mut d = two_copy_datum();
        d.basis_cells = vec![CopyId::new(0, 0), CopyId::new(1, 0)];
        assert_eq!(h1(&d, &MonodromyRep::Symbolic), Err(Error::BasisNotTransverse));
        assert_eq!(
            h1(&d, &MonodromyRep::Matrix(MatrixRep::identity(1))),
            Err(Error::BasisNotTransverse)
        );
        d.basis_cells.clear();
        assert_eq!(h1(&d, &MonodromyRep::Symbolic), Err(Error::BasisNotTransverse));
    }

    #[test]
    fn non_unit_pivot() {
        let mut d = two_copy_datum();
        d.incidences.push(Incidence {
            copy: CopyId::new(0, 0),
            zero_cell: 0,
            sign: 1,
            word: GroupWord::gen(Generator::T),
        });
        assert_eq!(h1(&d, &MonodromyRep::Symbolic), Err(Error::PivotNotUnit));
    }

    #[test]
    fn refinement_maps() {
        let d = two_copy_datum();
        let id = refinement_map(
            &d,
            &d,
            &[(CopyId::new(0, 0), GroupWord::identity()), (CopyId::new(1, 0), GroupWord::identity())],
        )
        .unwrap();
        let c = vec![e("S"), e("T")];
        assert_eq!(id.apply(&c), c);
        let tw = refinement_map(
            &d,
            &d,
            &[(CopyId::new(0, 0), GroupWord::gen(Generator::S)), (CopyId::new(1, 0), GroupWord::identity())],
        )
        .unwrap();
        assert_eq!(tw.apply(&c), vec![e("S·S"), e("T")]);
    }

    #[test]
    fn identical_bases_give_identity() {
        let d = two_copy_datum();
        let t = vec![d.unit_cochain(CopyId::new(1, 0)).unwrap()];
        let n = change_of_basis(&d, &MonodromyRep::Symbolic, &t, &t).unwrap();
        assert_eq!(n, BasisChange::Symbolic(vec![vec![e("1")]]));
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let rep = MonodromyRep::Matrix(MatrixRep::random(2, &mut rng));
        let n = change_of_basis(&d, &rep, &t, &t).unwrap();
        assert_eq!(n, BasisChange::Matrix(RatMatrix::identity(2)));
    }

    #[test]
    fn backends_agree_on_a_small_complex() {
        let d = two_copy_datum();
        let targets = vec![d.unit_cochain(CopyId::new(1, 0)).unwrap()];
        let sources = vec![vec![e("T"), e("U")]];
        let BasisChange::Symbolic(n) = change_of_basis(&d, &MonodromyRep::Symbolic, &targets, &sources).unwrap()
        else {
            unreachable!()
        };
        assert_eq!(n, vec![vec![e("U + T·S")]]);
        for seed in 0..5 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let m = MatrixRep::random(2, &mut rng);
            let got = change_of_basis(&d, &MonodromyRep::Matrix(m.clone()), &targets, &sources);
            // T·S + U may be singular for some draws; only compare invertible cases.
            let expect = m.eval_matrix(&n);
            match got {
                Ok(BasisChange::Matrix(x)) => assert_eq!(x, expect),
                Err(Error::NotABasis(_)) => assert!(!expect.is_invertible()),
                other => panic!("{other:?}"),
            }
        }
    }
}
