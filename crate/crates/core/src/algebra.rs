//! Stratified Lie algebras presented by exact structure constants.
//!
//! A stratified algebra is stored as a dense table `c[i][j][k]` over a
//! basis ordered stratum by stratum; the stratum of index `i` is derived
//! from the prefix sums of `strata_dims`. Indices are 0-based throughout
//! the API (the text file format of the companion crate is 1-based).

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::rational::{
    basis_vec, is_zero_vec, zero_vec, Rational, RationalMatrix,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    DimensionMismatch { expected: usize, got: usize },
    BadStratum { stratum: usize },
    GradingViolation { vstratum: usize, src: usize, dst: usize },
    EmptyStrata,
    IndexOutOfRange { index: usize, dim: usize },
}

impl core::fmt::Display for AlgebraError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            AlgebraError::DimensionMismatch { expected, got } => {
                write!(f, "vector length {got}, algebra dimension {expected}")
            }
            AlgebraError::BadStratum { stratum } => write!(f, "no stratum {stratum}"),
            AlgebraError::GradingViolation { vstratum, src, dst } => write!(
                f,
                "ad of a stratum-{vstratum} vector maps stratum {src} to {}, not {dst}",
                vstratum + src + 1
            ),
            AlgebraError::EmptyStrata => write!(f, "strata list is empty or has a zero entry"),
            AlgebraError::IndexOutOfRange { index, dim } => {
                write!(f, "basis index {index} out of range for dimension {dim}")
            }
        }
    }
}

/// Where validation first failed, if it did.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// `c[i][j][k] + c[j][i][k] != 0` (or a nonzero diagonal entry).
    Antisymmetry { i: usize, j: usize, k: usize },
    /// Jacobi identity fails on basis quadruple `(i, j, k, l)`.
    Jacobi { i: usize, j: usize, k: usize, l: usize },
    /// `c[i][j][k] != 0` with `stratum(k) != stratum(i) + stratum(j)`.
    Grading { i: usize, j: usize, k: usize },
    /// `[g_1, g_a]` does not span `g_{a+1}` (`a` is 0-based).
    Generation { stratum: usize },
}

/// Outcome of the four exact structure checks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub antisymmetry_ok: bool,
    pub jacobi_ok: bool,
    pub grading_ok: bool,
    pub generation_ok: bool,
    pub first_violation: Option<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.antisymmetry_ok && self.jacobi_ok && self.grading_ok && self.generation_ok
    }
}

/// A stratified Lie algebra `g = g_1 ⊕ … ⊕ g_s` with rational structure
/// constants in a basis ordered stratum by stratum.
#[derive(Clone, PartialEq, Eq)]
pub struct StratifiedAlgebra {
    name: String,
    strata_dims: Vec<usize>,
    offsets: Vec<usize>,
    n: usize,
    /// Dense table, index `(i*n + j)*n + k`.
    c: Vec<Rational>,
}

impl core::fmt::Debug for StratifiedAlgebra {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(
            f,
            "StratifiedAlgebra({}, strata {:?})",
            self.name, self.strata_dims
        )
    }
}

impl StratifiedAlgebra {
    /// Build from a list of brackets `[e_i, e_j] = Σ_k coeff·e_k` given for
    /// `i < j` only; the antisymmetric completion is implied and diagonal
    /// brackets are zero. Omitted pairs are zero.
    pub fn from_brackets(
        name: &str,
        strata_dims: &[usize],
        brackets: &[(usize, usize, Vec<(usize, Rational)>)],
    ) -> Result<Self, AlgebraError> {
        if strata_dims.is_empty() || strata_dims.iter().any(|&d| d == 0) {
            return Err(AlgebraError::EmptyStrata);
        }
        let n: usize = strata_dims.iter().sum();
        let mut offsets = Vec::with_capacity(strata_dims.len() + 1);
        let mut acc = 0;
        for &d in strata_dims {
            offsets.push(acc);
            acc += d;
        }
        offsets.push(acc);
        let mut c = zero_vec(n * n * n);
        for (i, j, terms) in brackets {
            let (i, j) = (*i, *j);
            for idx in [i, j] {
                if idx >= n {
                    return Err(AlgebraError::IndexOutOfRange { index: idx, dim: n });
                }
            }
            assert!(i < j, "brackets must be given with i < j");
            for (k, coeff) in terms {
                if *k >= n {
                    return Err(AlgebraError::IndexOutOfRange { index: *k, dim: n });
                }
                c[(i * n + j) * n + k] = coeff.clone();
                c[(j * n + i) * n + k] = -coeff.clone();
            }
        }
        Ok(StratifiedAlgebra {
            name: String::from(name),
            strata_dims: strata_dims.to_vec(),
            offsets,
            n,
            c,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// Number of strata.
    pub fn step(&self) -> usize {
        self.strata_dims.len()
    }

    /// Dimension of the first stratum.
    pub fn rank(&self) -> usize {
        self.strata_dims[0]
    }

    pub fn strata_dims(&self) -> &[usize] {
        &self.strata_dims
    }

    pub fn stratum_dim(&self, a: usize) -> usize {
        self.strata_dims[a]
    }

    /// 0-based stratum of a 0-based global index.
    pub fn stratum_of(&self, i: usize) -> usize {
        debug_assert!(i < self.n);
        // offsets is sorted; find the last offset <= i
        let mut s = 0;
        while self.offsets[s + 1] <= i {
            s += 1;
        }
        s
    }

    /// Global index range of stratum `a` (0-based).
    pub fn stratum_range(&self, a: usize) -> core::ops::Range<usize> {
        self.offsets[a]..self.offsets[a + 1]
    }

    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.c[(i * self.n + j) * self.n + k]
    }

    /// `[e_i, e_j]` as a full coordinate vector.
    pub fn bracket_basis(&self, i: usize, j: usize) -> Vec<Rational> {
        let start = (i * self.n + j) * self.n;
        self.c[start..start + self.n].to_vec()
    }

    /// Bilinear extension `[v, w] = Σ_{i,j} v_i w_j c[i][j][·]`, exact.
    pub fn bracket(&self, v: &[Rational], w: &[Rational]) -> Result<Vec<Rational>, AlgebraError> {
        if v.len() != self.n {
            return Err(AlgebraError::DimensionMismatch { expected: self.n, got: v.len() });
        }
        if w.len() != self.n {
            return Err(AlgebraError::DimensionMismatch { expected: self.n, got: w.len() });
        }
        let mut out = zero_vec(self.n);
        for i in 0..self.n {
            if v[i].is_zero() {
                continue;
            }
            for j in 0..self.n {
                if w[j].is_zero() {
                    continue;
                }
                let coeff = &v[i] * &w[j];
                let base = (i * self.n + j) * self.n;
                for k in 0..self.n {
                    if !self.c[base + k].is_zero() {
                        out[k] += &coeff * &self.c[base + k];
                    }
                }
            }
        }
        Ok(out)
    }

    /// Embed stratum-`a` coordinates into a full vector.
    pub fn embed(&self, a: usize, v: &[Rational]) -> Vec<Rational> {
        debug_assert_eq!(v.len(), self.strata_dims[a]);
        let mut out = zero_vec(self.n);
        out[self.stratum_range(a)].clone_from_slice(v);
        out
    }

    /// Extract the stratum-`a` block of a full vector.
    pub fn project_stratum(&self, a: usize, v: &[Rational]) -> Vec<Rational> {
        v[self.stratum_range(a)].to_vec()
    }

    /// Exact validation of the four structural invariants.
    pub fn validate(&self) -> ValidationReport {
        let n = self.n;
        let mut report = ValidationReport {
            antisymmetry_ok: true,
            jacobi_ok: true,
            grading_ok: true,
            generation_ok: true,
            first_violation: None,
        };
        let record = |report: &mut ValidationReport, v: Violation| {
            if report.first_violation.is_none() {
                report.first_violation = Some(v);
            }
        };

        'anti: for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let sum = self.structure_constant(i, j, k) + self.structure_constant(j, i, k);
                    if !sum.is_zero() {
                        report.antisymmetry_ok = false;
                        record(&mut report, Violation::Antisymmetry { i, j, k });
                        break 'anti;
                    }
                }
            }
        }

        'grading: for i in 0..n {
            for j in 0..n {
                let target = self.stratum_of(i) + self.stratum_of(j) + 1;
                for k in 0..n {
                    if self.structure_constant(i, j, k).is_zero() {
                        continue;
                    }
                    if target >= self.step() || self.stratum_of(k) != target {
                        report.grading_ok = false;
                        record(&mut report, Violation::Grading { i, j, k });
                        break 'grading;
                    }
                }
            }
        }

        'jacobi: for i in 0..n {
            for j in (i + 1)..n {
                let bij = self.bracket_basis(i, j);
                for k in (j + 1)..n {
                    let bjk = self.bracket_basis(j, k);
                    let bki = self.bracket_basis(k, i);
                    let ek = basis_vec(n, k);
                    let ei = basis_vec(n, i);
                    let ej = basis_vec(n, j);
                    let t1 = self.bracket(&bij, &ek).expect("dims");
                    let t2 = self.bracket(&bjk, &ei).expect("dims");
                    let t3 = self.bracket(&bki, &ej).expect("dims");
                    for l in 0..n {
                        let sum = &t1[l] + &t2[l] + &t3[l];
                        if !sum.is_zero() {
                            report.jacobi_ok = false;
                            record(&mut report, Violation::Jacobi { i, j, k, l });
                            break 'jacobi;
                        }
                    }
                }
            }
        }

        for a in 0..self.step().saturating_sub(1) {
            let mut images = RationalMatrix::empty(self.strata_dims[a + 1]);
            for i in self.stratum_range(0) {
                for j in self.stratum_range(a) {
                    images.push_row(self.project_stratum(a + 1, &self.bracket_basis(i, j)));
                }
            }
            if images.rank() != self.strata_dims[a + 1] {
                report.generation_ok = false;
                record(&mut report, Violation::Generation { stratum: a });
                break;
            }
        }

        report
    }

    /// Matrix of `X ↦ [v, X]` from stratum `src` to stratum `dst`, where
    /// `v` must be homogeneous; requires `stratum(v) + src + 1 = dst`
    /// (0-based strata).
    pub fn ad_matrix(
        &self,
        v: &[Rational],
        src: usize,
        dst: usize,
    ) -> Result<RationalMatrix, AlgebraError> {
        if v.len() != self.n {
            return Err(AlgebraError::DimensionMismatch { expected: self.n, got: v.len() });
        }
        if src >= self.step() || dst >= self.step() {
            return Err(AlgebraError::BadStratum { stratum: src.max(dst) });
        }
        // stratum of v: the unique stratum carrying nonzero coordinates
        let mut vstrat: Option<usize> = None;
        for (i, x) in v.iter().enumerate() {
            if !x.is_zero() {
                let s = self.stratum_of(i);
                match vstrat {
                    None => vstrat = Some(s),
                    Some(prev) if prev != s => {
                        return Err(AlgebraError::GradingViolation { vstratum: prev, src, dst })
                    }
                    _ => {}
                }
            }
        }
        if let Some(vs) = vstrat {
            if vs + src + 1 != dst {
                return Err(AlgebraError::GradingViolation { vstratum: vs, src, dst });
            }
        }
        let mut m = RationalMatrix::zero(self.strata_dims[dst], self.strata_dims[src]);
        for (col, j) in self.stratum_range(src).enumerate() {
            let img = self.bracket(v, &basis_vec(self.n, j))?;
            for (row, k) in self.stratum_range(dst).enumerate() {
                m.set(row, col, img[k].clone());
            }
        }
        Ok(m)
    }

    /// True iff the algebra validates and has strata dimensions `[2, 1, 1]`
    /// (any such algebra is isomorphic to the Engel algebra).
    pub fn is_engel_type(&self) -> bool {
        self.strata_dims == [2, 1, 1] && self.validate().is_ok()
    }

    // ----- named families -------------------------------------------------

    /// Abelian algebra of dimension `n` (single stratum).
    pub fn abelian(n: usize) -> Self {
        Self::from_brackets(&format!("abelian_{n}"), &[n], &[]).expect("valid")
    }

    /// Heisenberg algebra: strata (2,1), `[e1,e2] = e3`.
    pub fn heisenberg() -> Self {
        Self::from_brackets("Heis", &[2, 1], &[(0, 1, alloc::vec![(2, Rational::one())])])
            .expect("valid")
    }

    /// Engel algebra: strata (2,1,1), `[X1,X2] = Y`, `[X1,Y] = Z`.
    pub fn engel() -> Self {
        Self::from_brackets(
            "N_4_2",
            &[2, 1, 1],
            &[
                (0, 1, alloc::vec![(2, Rational::one())]),
                (0, 2, alloc::vec![(3, Rational::one())]),
            ],
        )
        .expect("valid")
    }

    /// Model filiform algebra of the given step (strata `2,1,…,1`):
    /// `[e1,e2] = e3`, `[e1,e_j] = e_{j+1}`. Step 2 is Heisenberg,
    /// step 3 is Engel.
    pub fn filiform(step: usize) -> Self {
        assert!(step >= 2, "filiform needs step >= 2");
        let mut strata = alloc::vec![1usize; step];
        strata[0] = 2;
        let n = step + 1;
        let mut brackets = Vec::new();
        for j in 1..n - 1 {
            brackets.push((0, j, alloc::vec![(j + 1, Rational::one())]));
        }
        Self::from_brackets(&format!("filiform_{step}"), &strata, &brackets).expect("valid")
    }

    /// Free stratified algebra of rank `k` and step 3. The `g_3` basis is
    /// chosen greedily from the vectors `[e_a, [e_i, e_j]]` in
    /// lexicographic order of `(a, i, j)`, reduced inside the weight-3
    /// component of the tensor algebra, so structure constants are exact
    /// and reproducible.
    pub fn free_step3(k: usize) -> Self {
        assert!(k >= 2, "free step-3 algebra needs rank >= 2");
        let n1 = k;
        let n2 = k * (k - 1) / 2;
        let n3 = (k * k * k - k) / 3;

        // pairs (i,j), i<j, lexicographic: basis of g_2
        let mut pairs = Vec::new();
        for i in 0..k {
            for j in (i + 1)..k {
                pairs.push((i, j));
            }
        }

        // weight-3 tensors live in R^{k^3}; [a,[i,j]] expands to
        // a⊗i⊗j − a⊗j⊗i − i⊗j⊗a + j⊗i⊗a
        let tensor = |a: usize, i: usize, j: usize| -> Vec<Rational> {
            let mut t = zero_vec(k * k * k);
            let idx = |x: usize, y: usize, z: usize| (x * k + y) * k + z;
            t[idx(a, i, j)] += Rational::one();
            t[idx(a, j, i)] -= Rational::one();
            t[idx(i, j, a)] -= Rational::one();
            t[idx(j, i, a)] += Rational::one();
            t
        };

        // greedy independent set = basis of g_3, tracked in echelon form
        let mut basis_meta: Vec<(usize, usize, usize)> = Vec::new();
        let mut basis_mat = RationalMatrix::empty(k * k * k);
        for a in 0..k {
            for &(i, j) in &pairs {
                if basis_meta.len() == n3 {
                    break;
                }
                let t = tensor(a, i, j);
                let mut trial = basis_mat.clone();
                trial.push_row(t);
                if trial.rank() > basis_meta.len() {
                    basis_meta.push((a, i, j));
                    basis_mat = trial;
                }
            }
        }
        assert_eq!(basis_meta.len(), n3, "free g_3 dimension mismatch");

        // expand an arbitrary [e_a, Y_{ij}] in the chosen g_3 basis
        let basis_t = basis_mat.transpose(); // (k^3) x n3
        let coords = |a: usize, i: usize, j: usize| -> Vec<Rational> {
            basis_t.solve(&tensor(a, i, j)).expect("weight-3 span")
        };

        let mut brackets: Vec<(usize, usize, Vec<(usize, Rational)>)> = Vec::new();
        // [e_i, e_j] = Y_{ij}
        for (p, &(i, j)) in pairs.iter().enumerate() {
            brackets.push((i, j, alloc::vec![(n1 + p, Rational::one())]));
        }
        // [e_a, Y_{ij}] in g_3
        for (p, &(i, j)) in pairs.iter().enumerate() {
            for a in 0..k {
                let cs = coords(a, i, j);
                let terms: Vec<(usize, Rational)> = cs
                    .iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .map(|(q, v)| (n1 + n2 + q, v.clone()))
                    .collect();
                if !terms.is_empty() {
                    brackets.push((a, n1 + p, terms));
                }
            }
        }
        Self::from_brackets(&format!("free_{k}_3"), &[n1, n2, n3], &brackets).expect("valid")
    }
}

/// Dimension of the free stratified algebra of rank `k` and step 3
/// by the Witt formula: `k + k(k−1)/2 + (k³−k)/3`.
pub fn free_step3_dim(k: usize) -> usize {
    k + k * (k - 1) / 2 + (k * k * k - k) / 3
}

/// `[v, v] = 0` sanity helper used in tests and property checks.
pub fn bracket_self_is_zero(a: &StratifiedAlgebra, v: &[Rational]) -> bool {
    a.bracket(v, v).map(|b| is_zero_vec(&b)).unwrap_or(false)
}
