//! Graded subspaces, subalgebra/ideal tests, and quotients by graded ideals.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::algebra::{AlgebraError, StratifiedAlgebra};
use crate::rational::{zero_vec, Rational, RationalMatrix};

/// A per-stratum rational span inside a stratified algebra. Each stratum
/// basis is kept in reduced row echelon form, so equality of subspaces is
/// structural equality.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GradedSubspace {
    strata_dims: Vec<usize>,
    bases: Vec<RationalMatrix>,
}

impl GradedSubspace {
    pub fn zero(parent: &StratifiedAlgebra) -> Self {
        GradedSubspace {
            strata_dims: parent.strata_dims().to_vec(),
            bases: parent
                .strata_dims()
                .iter()
                .map(|&d| RationalMatrix::empty(d))
                .collect(),
        }
    }

    pub fn full(parent: &StratifiedAlgebra) -> Self {
        GradedSubspace {
            strata_dims: parent.strata_dims().to_vec(),
            bases: parent
                .strata_dims()
                .iter()
                .map(|&d| RationalMatrix::identity(d))
                .collect(),
        }
    }

    /// Build from per-stratum spanning vectors `(stratum, coords in g_a)`.
    pub fn from_vectors(
        parent: &StratifiedAlgebra,
        vectors: &[(usize, Vec<Rational>)],
    ) -> Result<Self, AlgebraError> {
        let mut sub = Self::zero(parent);
        for (a, v) in vectors {
            if *a >= parent.step() {
                return Err(AlgebraError::BadStratum { stratum: *a });
            }
            if v.len() != parent.stratum_dim(*a) {
                return Err(AlgebraError::DimensionMismatch {
                    expected: parent.stratum_dim(*a),
                    got: v.len(),
                });
            }
            sub.bases[*a].push_row(v.clone());
        }
        sub.canonicalize();
        Ok(sub)
    }

    /// Replace the stratum bases by their reduced echelon forms.
    fn canonicalize(&mut self) {
        for b in &mut self.bases {
            let (r, _) = b.rref();
            *b = r;
        }
    }

    pub fn step(&self) -> usize {
        self.strata_dims.len()
    }

    pub fn basis(&self, a: usize) -> &RationalMatrix {
        &self.bases[a]
    }

    pub fn dim_stratum(&self, a: usize) -> usize {
        self.bases[a].rows()
    }

    pub fn dim(&self) -> usize {
        self.bases.iter().map(|b| b.rows()).sum()
    }

    pub fn codim_stratum(&self, a: usize) -> usize {
        self.strata_dims[a] - self.dim_stratum(a)
    }

    /// Stratum-`a` membership test.
    pub fn contains(&self, a: usize, v: &[Rational]) -> bool {
        self.bases[a].row_span_contains(v)
    }

    /// Membership of a full coordinate vector, stratum by stratum.
    pub fn contains_full(&self, parent: &StratifiedAlgebra, v: &[Rational]) -> bool {
        (0..self.step()).all(|a| self.contains(a, &parent.project_stratum(a, v)))
    }

    pub fn contains_subspace(&self, other: &GradedSubspace) -> bool {
        (0..self.step()).all(|a| {
            (0..other.bases[a].rows()).all(|r| self.contains(a, other.bases[a].row(r)))
        })
    }

    /// Stratum-wise sum of two graded subspaces.
    pub fn sum(&self, other: &GradedSubspace) -> GradedSubspace {
        let mut out = self.clone();
        for a in 0..out.step() {
            for r in 0..other.bases[a].rows() {
                out.bases[a].push_row(other.bases[a].row(r).to_vec());
            }
        }
        out.canonicalize();
        out
    }

    /// All basis vectors as full coordinate vectors of the parent.
    pub fn full_basis_vectors(&self, parent: &StratifiedAlgebra) -> Vec<Vec<Rational>> {
        let mut out = Vec::new();
        for a in 0..self.step() {
            for r in 0..self.bases[a].rows() {
                out.push(parent.embed(a, self.bases[a].row(r)));
            }
        }
        out
    }
}

/// True iff `[W, W] ⊆ W` stratum-wise.
pub fn is_graded_subalgebra(a: &StratifiedAlgebra, w: &GradedSubspace) -> bool {
    let basis = w.full_basis_vectors(a);
    for x in &basis {
        for y in &basis {
            let b = a.bracket(x, y).expect("dims");
            if !w.contains_full(a, &b) {
                return false;
            }
        }
    }
    true
}

/// True iff `[g, W] ⊆ W`.
pub fn is_graded_ideal(a: &StratifiedAlgebra, w: &GradedSubspace) -> bool {
    let basis = w.full_basis_vectors(a);
    for i in 0..a.dim() {
        let ei = crate::rational::basis_vec(a.dim(), i);
        for y in &basis {
            let b = a.bracket(&ei, y).expect("dims");
            if !w.contains_full(a, &b) {
                return false;
            }
        }
    }
    true
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QuotientError {
    NotAnIdeal,
    /// The quotient has a zero stratum followed by a nonzero one, so it
    /// cannot be bracket generated. Unreachable for genuine graded ideals;
    /// reported rather than silently dropped.
    GenerationLost { stratum: usize },
}

impl core::fmt::Display for QuotientError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            QuotientError::NotAnIdeal => write!(f, "subspace is not a graded ideal"),
            QuotientError::GenerationLost { stratum } => {
                write!(f, "quotient loses bracket generation at stratum {stratum}")
            }
        }
    }
}

/// Quotient of `a` by the graded ideal `h`, with the projection matrix
/// from `a`-coordinates to quotient coordinates.
///
/// Complements are chosen deterministically: in each stratum the standard
/// basis vectors avoiding the pivot columns of the echelon basis of `h_a`.
/// Trailing zero strata of the quotient are trimmed (e.g. Engel modulo its
/// center is Heisenberg with strata `[2, 1]`).
pub fn quotient_algebra(
    a: &StratifiedAlgebra,
    h: &GradedSubspace,
) -> Result<(StratifiedAlgebra, RationalMatrix), QuotientError> {
    if !is_graded_ideal(a, h) {
        return Err(QuotientError::NotAnIdeal);
    }
    let s = a.step();

    // per-stratum complement columns (non-pivot standard vectors)
    let mut comp_cols: Vec<Vec<usize>> = Vec::with_capacity(s);
    for st in 0..s {
        let (_, pivots) = h.basis(st).rref();
        let cols = (0..a.stratum_dim(st))
            .filter(|c| !pivots.contains(c))
            .collect();
        comp_cols.push(cols);
    }

    let q_strata_full: Vec<usize> = comp_cols.iter().map(|c| c.len()).collect();
    // trim trailing zero strata; an interior zero stratum cannot be
    // bracket-generated and is reported
    let mut q_step = s;
    while q_step > 0 && q_strata_full[q_step - 1] == 0 {
        q_step -= 1;
    }
    if q_step == 0 {
        // quotient by the whole algebra: represent as a 1-dim abelian? No —
        // the zero algebra has no strata; forbid via GenerationLost.
        return Err(QuotientError::GenerationLost { stratum: 0 });
    }
    if let Some(z) = q_strata_full[..q_step].iter().position(|&d| d == 0) {
        return Err(QuotientError::GenerationLost { stratum: z });
    }
    let q_strata = &q_strata_full[..q_step];
    let nq: usize = q_strata.iter().sum();

    // projection: per stratum solve [C^T | H^T] * (coeffs) = x, keep the
    // complement coefficients
    let mut projection = RationalMatrix::zero(nq, a.dim());
    let mut qrow = 0usize;
    let mut stratum_proj: Vec<RationalMatrix> = Vec::with_capacity(q_step);
    for st in 0..q_step {
        let d = a.stratum_dim(st);
        let hmat = h.basis(st);
        let k = comp_cols[st].len();
        // columns: complements then h-basis
        let mut m = RationalMatrix::zero(d, k + hmat.rows());
        for (ci, &c) in comp_cols[st].iter().enumerate() {
            m.set(c, ci, Rational::from_integer(1.into()));
        }
        for r in 0..hmat.rows() {
            for cc in 0..d {
                m.set(cc, k + r, hmat.get(r, cc).clone());
            }
        }
        // proj block: for each standard basis vector of the stratum
        let mut block = RationalMatrix::zero(k, d);
        for col in 0..d {
            let mut rhs = zero_vec(d);
            rhs[col] = Rational::from_integer(1.into());
            let sol = m.solve(&rhs).expect("complement plus ideal spans stratum");
            for row in 0..k {
                block.set(row, col, sol[row].clone());
            }
        }
        for row in 0..k {
            for (colofs, gcol) in a.stratum_range(st).enumerate() {
                projection.set(qrow + row, gcol, block.get(row, colofs).clone());
            }
        }
        qrow += k;
        stratum_proj.push(block);
    }

    // quotient basis representatives as full vectors of `a`
    let mut reps: Vec<Vec<Rational>> = Vec::with_capacity(nq);
    for st in 0..q_step {
        for &c in &comp_cols[st] {
            let mut v = zero_vec(a.stratum_dim(st));
            v[c] = Rational::from_integer(1.into());
            reps.push(a.embed(st, &v));
        }
    }

    // structure constants via projection of representative brackets
    let mut brackets: Vec<(usize, usize, Vec<(usize, Rational)>)> = Vec::new();
    for alpha in 0..nq {
        for beta in (alpha + 1)..nq {
            let b = a.bracket(&reps[alpha], &reps[beta]).expect("dims");
            let coords = projection.mul_vec(&b);
            let terms: Vec<(usize, Rational)> = coords
                .into_iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .collect();
            if !terms.is_empty() {
                brackets.push((alpha, beta, terms));
            }
        }
    }
    let name: String = format!("{}/h", a.name());
    let q = StratifiedAlgebra::from_brackets(&name, q_strata, &brackets)
        .expect("quotient construction is structurally sound");
    let rep = q.validate();
    if !rep.generation_ok {
        // defensive: cannot happen for graded ideals of a valid algebra
        return Err(QuotientError::GenerationLost { stratum: 0 });
    }
    debug_assert!(rep.is_ok());
    Ok((q, projection))
}
