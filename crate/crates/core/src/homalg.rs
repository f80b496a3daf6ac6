//! Presented abelian groups, homomorphisms on generators, homology of
//! complexes, exactness of six-term cyclic sequences, and the folding
//! construction that collapses a six-cycle to a three-cycle.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::abgroup::{cokernel, FgAbGroup};
use crate::error::Error;
use crate::matrix::{kernel_basis, IntMatrix, SnfSolver};
use crate::Result;

/// An abelian group given by generators and a relation matrix whose
/// columns span the relation lattice inside Z^n_gens.
#[derive(Clone, PartialEq, Eq)]
pub struct PresentedGroup {
    n_gens: usize,
    relations: IntMatrix,
    structure: FgAbGroup,
}

impl PresentedGroup {
    pub fn new(n_gens: usize, relations: IntMatrix) -> Result<Self> {
        if relations.rows() != n_gens {
            return Err(Error::DimensionMismatch(format!(
                "presentation on {n_gens} generators needs a relation matrix with {n_gens} rows, got {}",
                relations.rows()
            )));
        }
        let structure = cokernel(&relations);
        Ok(PresentedGroup { n_gens, relations, structure })
    }

    pub fn trivial() -> Self {
        Self::new(0, IntMatrix::zero(0, 0)).expect("trivial presentation")
    }

    /// Canonical presentation of a group: free generators first, then one
    /// generator per invariant factor.
    pub fn from_group(g: &FgAbGroup) -> Self {
        let (n, rel) = g.presentation();
        Self::new(n, rel).expect("canonical presentation is consistent")
    }

    pub fn n_gens(&self) -> usize {
        self.n_gens
    }

    pub fn relations(&self) -> &IntMatrix {
        &self.relations
    }

    /// Canonical form of the presented group.
    pub fn structure(&self) -> &FgAbGroup {
        &self.structure
    }

    pub fn direct_sum(&self, other: &PresentedGroup) -> PresentedGroup {
        PresentedGroup::new(
            self.n_gens + other.n_gens,
            self.relations.block_diag(&other.relations),
        )
        .expect("block sum of consistent presentations")
    }
}

impl std::fmt::Debug for PresentedGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "PresentedGroup(gens={}, {} ~ {})", self.n_gens, self.relations.cols(), self.structure)
    }
}

/// Homomorphism between presented groups, acting on chosen generators.
/// Construction checks well-definedness: the matrix must carry every
/// relation of the source into the relation lattice of the target.
#[derive(Clone, PartialEq, Eq)]
pub struct GroupHom {
    source: PresentedGroup,
    target: PresentedGroup,
    matrix: IntMatrix,
}

/// Exact well-definedness test; errors on shape mismatch.
pub fn hom_well_defined(
    source: &PresentedGroup,
    target: &PresentedGroup,
    matrix: &IntMatrix,
) -> Result<bool> {
    if matrix.rows() != target.n_gens() || matrix.cols() != source.n_gens() {
        return Err(Error::DimensionMismatch(format!(
            "hom matrix must be {}x{}, got {}x{}",
            target.n_gens(),
            source.n_gens(),
            matrix.rows(),
            matrix.cols()
        )));
    }
    let solver = SnfSolver::new(target.relations());
    for j in 0..source.relations().cols() {
        let image = matrix.mul_vec(&source.relations().column(j));
        if solver.solve(&image)?.is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}

impl GroupHom {
    pub fn new(source: PresentedGroup, target: PresentedGroup, matrix: IntMatrix) -> Result<Self> {
        if !hom_well_defined(&source, &target, &matrix)? {
            return Err(Error::IllDefinedHom(format!(
                "matrix {matrix:?} does not preserve the source relations"
            )));
        }
        Ok(GroupHom { source, target, matrix })
    }

    pub fn zero(source: PresentedGroup, target: PresentedGroup) -> Self {
        let m = IntMatrix::zero(target.n_gens(), source.n_gens());
        GroupHom { source, target, matrix: m }
    }

    pub fn identity(g: PresentedGroup) -> Self {
        let m = IntMatrix::identity(g.n_gens());
        GroupHom { source: g.clone(), target: g, matrix: m }
    }

    pub fn source(&self) -> &PresentedGroup {
        &self.source
    }

    pub fn target(&self) -> &PresentedGroup {
        &self.target
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    /// Block-diagonal sum f + g on the direct sums of sources and targets.
    pub fn direct_sum(&self, other: &GroupHom) -> GroupHom {
        GroupHom {
            source: self.source.direct_sum(&other.source),
            target: self.target.direct_sum(&other.target),
            matrix: self.matrix.block_diag(&other.matrix),
        }
    }

    /// Whether the composite `outgoing . self` is the zero map, i.e. the
    /// image of `self` lies inside the relation lattice of the final target.
    pub fn composes_to_zero(&self, outgoing: &GroupHom) -> Result<bool> {
        if self.target != outgoing.source {
            return Err(Error::NotComposable(
                "target presentation does not match the next source".into(),
            ));
        }
        let composite = outgoing.matrix.mul(&self.matrix);
        let solver = SnfSolver::new(outgoing.target.relations());
        for j in 0..composite.cols() {
            if solver.solve(&composite.column(j))?.is_none() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

impl std::fmt::Debug for GroupHom {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "GroupHom({} -> {}, {:?})", self.source.structure(), self.target.structure(), self.matrix)
    }
}

/// Homology ker(outgoing)/im(incoming) at the middle group, in canonical
/// form. Errors if the maps do not compose or the composite is nonzero.
pub fn homology_at(incoming: &GroupHom, outgoing: &GroupHom) -> Result<FgAbGroup> {
    if incoming.target() != outgoing.source() {
        return Err(Error::NotComposable(
            "incoming.target and outgoing.source presentations differ".into(),
        ));
    }
    if !incoming.composes_to_zero(outgoing)? {
        return Err(Error::NotComposable("composite map is not zero; not a complex".into()));
    }
    let h_gens = incoming.target().n_gens();

    // Kernel of the induced map: lattice L = { y : M_out y in span(R_K) },
    // obtained by projecting ker[M_out | R_K] onto the y-coordinates.
    let stacked = outgoing.matrix().hstack(outgoing.target().relations());
    let ker = kernel_basis(&stacked);
    let numerator = IntMatrix::from_fn(h_gens, ker.len(), |i, j| ker[j][i].clone());

    // Denominator: image of the incoming generators plus the relations of
    // the middle group.
    let denominator = incoming.matrix().hstack(incoming.target().relations());

    // Express the denominator in numerator coordinates; quotient out the
    // kernel of the numerator's generating map as well.
    let solver = SnfSolver::new(&numerator);
    let mut cols: Vec<Vec<BigInt>> = Vec::new();
    for j in 0..denominator.cols() {
        let x = solver
            .solve(&denominator.column(j))?
            .expect("complex condition guarantees denominator lies in the kernel lattice");
        cols.push(x);
    }
    for v in kernel_basis(&numerator) {
        cols.push(v);
    }
    let m = numerator.cols();
    let rel = IntMatrix::from_fn(m, cols.len(), |i, j| cols[j][i].clone());
    Ok(cokernel(&rel))
}

/// A six-term cyclic sequence G1 -> G2 -> ... -> G6 -> G1.
#[derive(Clone, Debug)]
pub struct CyclicSequence {
    groups: [PresentedGroup; 6],
    maps: [GroupHom; 6],
}

/// What a single position of a cyclic sequence looks like homologically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PositionCheck {
    /// The two maps at this position do not compose to zero.
    NotComplex,
    /// Homology group at this position; trivial means exact here.
    Homology(FgAbGroup),
}

/// Tags naming the built-in additive functions on fg abelian groups.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AdditiveTag {
    /// Free rank.
    Rank,
    /// log_p of the order of the p-primary torsion part.
    PPrimaryLog(u64),
    /// Rank after tensoring with Q (equals the free rank on fg groups).
    QDim,
}

impl AdditiveTag {
    pub fn eval(&self, g: &FgAbGroup) -> Result<i64> {
        Ok(match self {
            AdditiveTag::Rank => g.rank() as i64,
            AdditiveTag::PPrimaryLog(p) => g.p_primary_log(*p)? as i64,
            AdditiveTag::QDim => g.tensor_q_dim() as i64,
        })
    }
}

impl std::fmt::Display for AdditiveTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            AdditiveTag::Rank => write!(f, "rank"),
            AdditiveTag::PPrimaryLog(p) => write!(f, "p_primary_log({p})"),
            AdditiveTag::QDim => write!(f, "q_dim"),
        }
    }
}

impl CyclicSequence {
    /// maps[i] must go groups[i] -> groups[(i+1) % 6], presentation-exactly.
    pub fn new(groups: [PresentedGroup; 6], maps: [GroupHom; 6]) -> Result<Self> {
        for i in 0..6 {
            if maps[i].source() != &groups[i] || maps[i].target() != &groups[(i + 1) % 6] {
                return Err(Error::NotComposable(format!(
                    "map {} does not chain group {} to group {}",
                    i + 1,
                    i + 1,
                    (i + 1) % 6 + 1
                )));
            }
        }
        Ok(CyclicSequence { groups, maps })
    }

    pub fn groups(&self) -> &[PresentedGroup; 6] {
        &self.groups
    }

    pub fn maps(&self) -> &[GroupHom; 6] {
        &self.maps
    }

    /// Homology (or complex failure) at each of the six positions.
    pub fn check_positions(&self) -> Result<Vec<PositionCheck>> {
        let mut out = Vec::with_capacity(6);
        for i in 0..6 {
            let incoming = &self.maps[(i + 5) % 6];
            let outgoing = &self.maps[i];
            if !incoming.composes_to_zero(outgoing)? {
                out.push(PositionCheck::NotComplex);
            } else {
                out.push(PositionCheck::Homology(homology_at(incoming, outgoing)?));
            }
        }
        Ok(out)
    }

    /// Exact iff every position is a complex with trivial homology.
    pub fn is_exact(&self) -> Result<bool> {
        Ok(self
            .check_positions()?
            .iter()
            .all(|c| matches!(c, PositionCheck::Homology(h) if h.is_trivial())))
    }

    /// First failing position (1-based) with a description, if any.
    pub fn first_failure(&self) -> Result<Option<(usize, String)>> {
        for (i, check) in self.check_positions()?.into_iter().enumerate() {
            match check {
                PositionCheck::NotComplex => {
                    return Ok(Some((i + 1, "maps do not compose to zero".into())))
                }
                PositionCheck::Homology(h) if !h.is_trivial() => {
                    return Ok(Some((i + 1, format!("homology {h}"))))
                }
                _ => {}
            }
        }
        Ok(None)
    }

    /// Alternating sum S(G1) - S(G2) + S(G3) - S(G4) + S(G5) - S(G6).
    /// Zero for every exact sequence and built-in additive S.
    pub fn alternating_sum(&self, s: AdditiveTag) -> Result<i64> {
        let mut total = 0i64;
        for (i, g) in self.groups.iter().enumerate() {
            let v = s.eval(g.structure())?;
            total += if i % 2 == 0 { v } else { -v };
        }
        Ok(total)
    }
}

/// The fold of a six-cycle: groups G1+G4, G2+G5, G3+G6 with maps
/// f1+f4, f2+f5 and (f3+f6) composed with the summand flip.
#[derive(Clone, Debug)]
pub struct FoldedSequence {
    pub groups: [PresentedGroup; 3],
    pub maps: [GroupHom; 3],
}

impl FoldedSequence {
    /// The 3-cycle read as a 6-cycle with repeated blocks.
    pub fn as_cyclic(&self) -> CyclicSequence {
        CyclicSequence::new(
            [
                self.groups[0].clone(),
                self.groups[1].clone(),
                self.groups[2].clone(),
                self.groups[0].clone(),
                self.groups[1].clone(),
                self.groups[2].clone(),
            ],
            [
                self.maps[0].clone(),
                self.maps[1].clone(),
                self.maps[2].clone(),
                self.maps[0].clone(),
                self.maps[1].clone(),
                self.maps[2].clone(),
            ],
        )
        .expect("folded blocks chain by construction")
    }

    pub fn is_exact(&self) -> Result<bool> {
        self.as_cyclic().is_exact()
    }
}

/// Fold a six-term cyclic sequence into its 3-periodic form. Folding
/// preserves exactness in both directions.
pub fn fold(seq: &CyclicSequence) -> FoldedSequence {
    let g = seq.groups();
    let m = seq.maps();
    let g14 = g[0].direct_sum(&g[3]);
    let g25 = g[1].direct_sum(&g[4]);
    let g36 = g[2].direct_sum(&g[5]);

    let psi1 = m[0].direct_sum(&m[3]);
    let psi2 = m[1].direct_sum(&m[4]);

    // (f3 + f6) o flip : G3 + G6 -> G1 + G4, sending (x3, x6) to
    // (f6 x6, f3 x3).
    let m3 = m[2].matrix();
    let m6 = m[5].matrix();
    let rows = g14.n_gens();
    let cols = g36.n_gens();
    let g1n = g[0].n_gens();
    let g3n = g[2].n_gens();
    let mat = IntMatrix::from_fn(rows, cols, |i, j| {
        if i < g1n {
            if j >= g3n {
                m6[(i, j - g3n)].clone()
            } else {
                BigInt::zero()
            }
        } else if j < g3n {
            m3[(i - g1n, j)].clone()
        } else {
            BigInt::zero()
        }
    });
    let psi3 = GroupHom::new(g36.clone(), g14.clone(), mat)
        .expect("block assembly of well-defined maps is well defined");

    FoldedSequence { groups: [g14, g25, g36], maps: [psi1, psi2, psi3] }
}

/// Pad a short exact sequence 0 -> A -> B -> C -> 0 into a six-cycle
/// A -> B -> C -> 0 -> 0 -> 0 -> A.
pub fn six_cycle_from_ses(
    a: PresentedGroup,
    b: PresentedGroup,
    c: PresentedGroup,
    ab: GroupHom,
    bc: GroupHom,
) -> Result<CyclicSequence> {
    let z = PresentedGroup::trivial;
    let groups = [a.clone(), b, c.clone(), z(), z(), z()];
    let maps = [
        ab,
        bc,
        GroupHom::zero(c, z()),
        GroupHom::zero(z(), z()),
        GroupHom::zero(z(), z()),
        GroupHom::zero(z(), a),
    ];
    CyclicSequence::new(groups, maps)
}
