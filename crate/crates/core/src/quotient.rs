//! The Engel/Martinet quotient criterion, its constructive certificate,
//! the stratum-enlarging factorization tower, and the generic dimension
//! bound.
//!
//! A stratified algebra of step ≥ 3 admits a quotient to the Martinet
//! structure iff there is a codimension-1 subspace `h_3 ⊂ g_3` such that
//! `h_2 = {Y ∈ g_2 : [g_1, Y] ⊆ h_3}` has codimension 1 in `g_2`. The
//! hyperplane is encoded by a primitive covector on `g_3`.

use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::algebra::StratifiedAlgebra;
use crate::rational::{
    basis_vec, is_zero_vec, normalize_primitive, rat_i, zero_vec, Rational, RationalMatrix,
};
use crate::subspace::{is_graded_ideal, is_graded_subalgebra, quotient_algebra, GradedSubspace};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QuotientLabError {
    StepTooSmall { step: usize },
    ZeroCovector,
    CovectorLength { expected: usize, got: usize },
    CertificateRejected,
    /// An assertion from the constructive proof failed; with exact
    /// arithmetic this signals inconsistent structure constants.
    ConstructionFailed(&'static str),
    TowerPrecondition(&'static str),
    RankTooSmall { rank: usize },
}

impl core::fmt::Display for QuotientLabError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            QuotientLabError::StepTooSmall { step } => {
                write!(f, "criterion needs step >= 3, algebra has step {step}")
            }
            QuotientLabError::ZeroCovector => write!(f, "hyperplane covector must be nonzero"),
            QuotientLabError::CovectorLength { expected, got } => {
                write!(f, "covector length {got}, dim g_3 is {expected}")
            }
            QuotientLabError::CertificateRejected => {
                write!(f, "certificate does not verify the quotient criterion")
            }
            QuotientLabError::ConstructionFailed(what) => {
                write!(f, "construction invariant failed: {what}")
            }
            QuotientLabError::TowerPrecondition(what) => write!(f, "tower precondition: {what}"),
            QuotientLabError::RankTooSmall { rank } => {
                write!(f, "bound needs rank >= 2, got {rank}")
            }
        }
    }
}

/// A rational covector on `g_3`, normalized to a primitive integer vector
/// whose first nonzero entry is positive. Its kernel is the hyperplane
/// `h_3 ⊂ g_3`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HyperplaneCertificate {
    lambda: Vec<Rational>,
}

impl HyperplaneCertificate {
    pub fn new(a: &StratifiedAlgebra, lambda: &[Rational]) -> Result<Self, QuotientLabError> {
        if a.step() < 3 {
            return Err(QuotientLabError::StepTooSmall { step: a.step() });
        }
        let n3 = a.stratum_dim(2);
        if lambda.len() != n3 {
            return Err(QuotientLabError::CovectorLength { expected: n3, got: lambda.len() });
        }
        let lambda = normalize_primitive(lambda).ok_or(QuotientLabError::ZeroCovector)?;
        Ok(HyperplaneCertificate { lambda })
    }

    pub fn lambda(&self) -> &[Rational] {
        &self.lambda
    }

    /// `λ(v)` for `v` in `g_3` coordinates.
    pub fn pair(&self, v: &[Rational]) -> Rational {
        crate::rational::dot(&self.lambda, v)
    }

    /// Echelon basis of `ker λ ⊂ g_3` as a graded subspace (codim 1).
    pub fn h3(&self, a: &StratifiedAlgebra) -> GradedSubspace {
        let row = RationalMatrix::from_rows(alloc::vec![self.lambda.clone()]);
        let ki = row.kernel_image();
        let vectors: Vec<(usize, Vec<Rational>)> =
            ki.kernel.row_vecs().into_iter().map(|v| (2usize, v)).collect();
        GradedSubspace::from_vectors(a, &vectors).expect("kernel vectors live in g_3")
    }
}

fn require_step3(a: &StratifiedAlgebra) -> Result<(), QuotientLabError> {
    if a.step() < 3 {
        Err(QuotientLabError::StepTooSmall { step: a.step() })
    } else {
        Ok(())
    }
}

/// `h_2 = {Y ∈ g_2 : λ([X, Y]) = 0 for all X ∈ g_1}`, as an echelon basis
/// inside stratum 2. Exact kernel computation; independent of the scale
/// of `λ`.
pub fn h2_of_h3(
    a: &StratifiedAlgebra,
    cert: &HyperplaneCertificate,
) -> Result<GradedSubspace, QuotientLabError> {
    require_step3(a)?;
    let n1 = a.stratum_dim(0);
    let n2 = a.stratum_dim(1);
    let mut t = RationalMatrix::zero(n1, n2);
    for (row, i) in a.stratum_range(0).enumerate() {
        for (col, j) in a.stratum_range(1).enumerate() {
            let b = a.bracket_basis(i, j);
            t.set(row, col, cert.pair(&a.project_stratum(2, &b)));
        }
    }
    let ki = t.kernel_image();
    let vectors: Vec<(usize, Vec<Rational>)> =
        ki.kernel.row_vecs().into_iter().map(|v| (1usize, v)).collect();
    Ok(GradedSubspace::from_vectors(a, &vectors).expect("kernel vectors live in g_2"))
}

/// True iff `h_2` has codimension exactly 1 in `g_2` (the codimension of
/// `ker λ` in `g_3` is 1 automatically since `λ ≠ 0`).
pub fn verify_martinet_certificate(
    a: &StratifiedAlgebra,
    cert: &HyperplaneCertificate,
) -> Result<bool, QuotientLabError> {
    let h2 = h2_of_h3(a, cert)?;
    Ok(h2.codim_stratum(1) == 1)
}

/// Primitive integer vectors of length `d` with sup-norm up to `bound`,
/// ordered by increasing sup-norm then lexicographically, first nonzero
/// entry positive (one representative per line through the origin).
pub(crate) fn primitive_grid(d: usize, bound: i64) -> Vec<Vec<Rational>> {
    if d == 0 || bound < 1 {
        return Vec::new();
    }
    let mut raw: Vec<Vec<i64>> = alloc::vec![Vec::new()];
    for _ in 0..d {
        let mut next = Vec::new();
        for prefix in &raw {
            for x in -bound..=bound {
                let mut v = prefix.clone();
                v.push(x);
                next.push(v);
            }
        }
        raw = next;
    }
    let mut kept: Vec<Vec<i64>> = raw
        .into_iter()
        .filter(|v| {
            let rv: Vec<Rational> = v.iter().map(|&x| rat_i(x)).collect();
            match normalize_primitive(&rv) {
                Some(p) => p == rv,
                None => false,
            }
        })
        .collect();
    kept.sort_by(|a, b| {
        let na = a.iter().map(|x| x.abs()).max().unwrap();
        let nb = b.iter().map(|x| x.abs()).max().unwrap();
        na.cmp(&nb).then_with(|| a.cmp(b))
    });
    kept.into_iter()
        .map(|v| v.into_iter().map(rat_i).collect())
        .collect()
}

/// Exhaustive certificate decision for `dim g_3 = 1` (the unique
/// hyperplane is tested), bounded primitive-covector enumeration
/// otherwise. `None` is **inconclusive** when `dim g_3 ≥ 2`.
pub fn search_martinet_certificate(
    a: &StratifiedAlgebra,
    bound: i64,
) -> Result<Option<HyperplaneCertificate>, QuotientLabError> {
    require_step3(a)?;
    let n3 = a.stratum_dim(2);
    if n3 == 1 {
        let cert = HyperplaneCertificate::new(a, &[Rational::one()])?;
        return Ok(if verify_martinet_certificate(a, &cert)? {
            Some(cert)
        } else {
            None
        });
    }
    for lambda in primitive_grid(n3, bound) {
        let cert = HyperplaneCertificate::new(a, &lambda)?;
        if verify_martinet_certificate(a, &cert)? {
            return Ok(Some(cert));
        }
    }
    Ok(None)
}

/// The data produced by the constructive proof of the quotient criterion:
/// a graded ideal `h` together with adapted vectors whose images span the
/// Engel quotient.
#[derive(Debug, Clone)]
pub struct EngelQuotientWitness {
    pub h: GradedSubspace,
    /// Adapted vectors, full coordinates in the ambient algebra.
    pub x1: Vec<Rational>,
    pub x2: Vec<Rational>,
    /// `Y' = [X1, X2]`.
    pub yp: Vec<Rational>,
    /// `Z' = [X1, Y']`.
    pub zp: Vec<Rational>,
    pub quotient: StratifiedAlgebra,
    pub projection: RationalMatrix,
}

/// Run the constructive proof: split `g_3 = ℝZ ⊕ h_3`, find `[X1, Y] = Z`,
/// take `X2` in `ker P` with `[X1, X2] = Y mod h_2`, set `h_1 = ker Q`,
/// and assemble `h = h_1 ⊕ h_2 ⊕ h_3 ⊕ g_4 ⊕ … ⊕ g_s`. All the proof's
/// intermediate claims are asserted exactly.
pub fn build_engel_ideal(
    a: &StratifiedAlgebra,
    cert: &HyperplaneCertificate,
) -> Result<EngelQuotientWitness, QuotientLabError> {
    if !verify_martinet_certificate(a, cert)? {
        return Err(QuotientLabError::CertificateRejected);
    }
    let n = a.dim();
    let h2 = h2_of_h3(a, cert)?;
    let h3 = cert.h3(a);

    // (X1, Y) with λ([X1, Y]) ≠ 0, scanning basis pairs; Z := [X1, Y] is a
    // complement of h_3 by construction.
    let mut found = None;
    'scan: for i in a.stratum_range(0) {
        for j in a.stratum_range(1) {
            let b = a.bracket_basis(i, j);
            if !cert.pair(&a.project_stratum(2, &b)).is_zero() {
                found = Some((i, j));
                break 'scan;
            }
        }
    }
    let (i1, j1) = found.ok_or(QuotientLabError::ConstructionFailed(
        "no basis pair with lambda([X,Y]) nonzero despite accepted certificate",
    ))?;
    let x1 = basis_vec(n, i1);
    let y = basis_vec(n, j1);
    let z = a.bracket(&x1, &y).expect("dims");
    debug_assert!(!cert.pair(&a.project_stratum(2, &z)).is_zero());

    // P = proj_Z ∘ ad_Y restricted to g_1: P(X) = λ([Y, X]) / λ(Z).
    // Its kernel does not depend on the normalization by λ(Z).
    let n1 = a.stratum_dim(0);
    let mut p_row = RationalMatrix::zero(1, n1);
    for (col, i) in a.stratum_range(0).enumerate() {
        let b = a.bracket(&y, &basis_vec(n, i)).expect("dims");
        p_row.set(0, col, cert.pair(&a.project_stratum(2, &b)));
    }
    let ker_p = p_row.kernel_image().kernel; // rows: g_1 coordinates
    if ker_p.rows() != n1 - 1 {
        return Err(QuotientLabError::ConstructionFailed("P does not have rank 1"));
    }

    // Proof claim: [ker P, ker P] ⊆ h_2, exactly.
    for r in 0..ker_p.rows() {
        for q in 0..ker_p.rows() {
            let xr = a.embed(0, ker_p.row(r));
            let xq = a.embed(0, ker_p.row(q));
            let b = a.bracket(&xr, &xq).expect("dims");
            if !h2.contains(1, &a.project_stratum(1, &b)) {
                return Err(QuotientLabError::ConstructionFailed(
                    "[ker P, ker P] not contained in h_2",
                ));
            }
        }
    }

    // The functional f on g_2 with ker f = h_2 and f(Y) = 1 defines
    // proj_Y; build it by solving on the basis [h_2 | Y].
    let n2 = a.stratum_dim(1);
    let y2 = a.project_stratum(1, &y);
    let f = {
        // f as a row vector: f·h2_basis^T = 0, f·y2 = 1
        let mut sys = RationalMatrix::zero(h2.dim_stratum(1) + 1, n2);
        for r in 0..h2.dim_stratum(1) {
            for c in 0..n2 {
                sys.set(r, c, h2.basis(1).get(r, c).clone());
            }
        }
        for c in 0..n2 {
            sys.set(h2.dim_stratum(1), c, y2[c].clone());
        }
        let mut rhs = zero_vec(h2.dim_stratum(1) + 1);
        rhs[h2.dim_stratum(1)] = Rational::one();
        // sys * f = rhs with f the unknown coefficient vector of the
        // functional; solvable iff Y is independent of h_2
        sys.solve(&rhs)
            .ok_or(QuotientLabError::ConstructionFailed("Y lies in h_2"))?
    };
    let proj_y = |v: &[Rational]| -> Rational { crate::rational::dot(&f, v) };

    // X2 ∈ ker P with [X1, X2] ∉ h_2, echelon vector with smallest pivot,
    // rescaled so that [X1, X2] = Y mod h_2.
    let mut x2 = None;
    for r in 0..ker_p.rows() {
        let cand = a.embed(0, ker_p.row(r));
        let b = a.bracket(&x1, &cand).expect("dims");
        let beta = proj_y(&a.project_stratum(1, &b));
        if !beta.is_zero() {
            let scaled: Vec<Rational> = cand.iter().map(|v| v / &beta).collect();
            x2 = Some(scaled);
            break;
        }
    }
    let x2 = x2.ok_or(QuotientLabError::ConstructionFailed(
        "no X2 in ker P with [X1, X2] outside h_2",
    ))?;

    let yp = a.bracket(&x1, &x2).expect("dims");
    let zp = a.bracket(&x1, &yp).expect("dims");
    if cert.pair(&a.project_stratum(2, &zp)).is_zero() {
        return Err(QuotientLabError::ConstructionFailed("Z' fell into h_3"));
    }

    // h_1 = ker Q where Q(X) = proj_Y([X1, X]) on ker P.
    let mut q_row = RationalMatrix::zero(1, ker_p.rows());
    for r in 0..ker_p.rows() {
        let cand = a.embed(0, ker_p.row(r));
        let b = a.bracket(&x1, &cand).expect("dims");
        q_row.set(0, r, proj_y(&a.project_stratum(1, &b)));
    }
    let ker_q_coeffs = q_row.kernel_image().kernel; // combinations of ker P rows
    let mut h1_vectors: Vec<(usize, Vec<Rational>)> = Vec::new();
    for r in 0..ker_q_coeffs.rows() {
        let mut v = zero_vec(n1);
        for (c, coeff) in ker_q_coeffs.row(r).iter().enumerate() {
            if !coeff.is_zero() {
                for (idx, x) in ker_p.row(c).iter().enumerate() {
                    v[idx] += coeff * x;
                }
            }
        }
        h1_vectors.push((0, v));
    }

    // assemble h = h_1 ⊕ h_2 ⊕ h_3 ⊕ g_4 ⊕ … ⊕ g_s
    let mut h = GradedSubspace::from_vectors(a, &h1_vectors).expect("h_1 vectors in g_1");
    h = h.sum(&h2).sum(&h3);
    let mut upper: Vec<(usize, Vec<Rational>)> = Vec::new();
    for st in 3..a.step() {
        for c in 0..a.stratum_dim(st) {
            upper.push((st, basis_vec(a.stratum_dim(st), c)));
        }
    }
    if !upper.is_empty() {
        h = h.sum(&GradedSubspace::from_vectors(a, &upper).expect("upper strata"));
    }

    if !is_graded_ideal(a, &h) {
        return Err(QuotientLabError::ConstructionFailed("assembled h is not an ideal"));
    }
    let (quotient, projection) = quotient_algebra(a, &h)
        .map_err(|_| QuotientLabError::ConstructionFailed("quotient by h failed"))?;
    if !quotient.is_engel_type() {
        return Err(QuotientLabError::ConstructionFailed("quotient is not Engel-type"));
    }

    Ok(EngelQuotientWitness { h, x1, x2, yp, zp, quotient, projection })
}

/// Intermediate subalgebras of the stratum-enlarging tower between `h`
/// and `h̃`, with the normality flags of consecutive levels.
#[derive(Debug, Clone)]
pub struct TowerResult {
    pub levels: Vec<GradedSubspace>,
    /// `normal[i]` = levels[i] is an ideal inside levels[i+1].
    pub normal: Vec<bool>,
    /// `subalgebra[i]` = levels[i] is a graded subalgebra.
    pub subalgebra: Vec<bool>,
}

/// Level `i` is `h_1 ⊕ … ⊕ h_{s−i} ⊕ h̃_{s−i+1} ⊕ … ⊕ h̃_s` for
/// `i = 0..s`: the lower subalgebra is enlarged to the upper one, one
/// stratum at a time from the top.
pub fn build_tower(
    a: &StratifiedAlgebra,
    h: &GradedSubspace,
    htilde: &GradedSubspace,
) -> Result<TowerResult, QuotientLabError> {
    if !htilde.contains_subspace(h) {
        return Err(QuotientLabError::TowerPrecondition("h not contained in htilde"));
    }
    if !is_graded_subalgebra(a, h) {
        return Err(QuotientLabError::TowerPrecondition("h is not a graded subalgebra"));
    }
    if !is_graded_subalgebra(a, htilde) {
        return Err(QuotientLabError::TowerPrecondition("htilde is not a graded subalgebra"));
    }
    // h must be an ideal of htilde
    let hb = h.full_basis_vectors(a);
    let tb = htilde.full_basis_vectors(a);
    for x in &tb {
        for y in &hb {
            let b = a.bracket(x, y).expect("dims");
            if !h.contains_full(a, &b) {
                return Err(QuotientLabError::TowerPrecondition("h is not an ideal in htilde"));
            }
        }
    }

    let s = a.step();
    let mut levels = Vec::with_capacity(s + 1);
    for i in 0..=s {
        let mut vectors: Vec<(usize, Vec<Rational>)> = Vec::new();
        for st in 0..s {
            let source = if st < s - i { h.basis(st) } else { htilde.basis(st) };
            for r in 0..source.rows() {
                vectors.push((st, source.row(r).to_vec()));
            }
        }
        levels.push(GradedSubspace::from_vectors(a, &vectors).expect("tower level"));
    }
    let subalgebra: Vec<bool> = levels.iter().map(|l| is_graded_subalgebra(a, l)).collect();
    let mut normal = Vec::with_capacity(s);
    for i in 0..s {
        let lower = levels[i].full_basis_vectors(a);
        let upper = levels[i + 1].full_basis_vectors(a);
        let mut ok = true;
        'out: for x in &upper {
            for y in &lower {
                let b = a.bracket(x, y).expect("dims");
                if !levels[i].contains_full(a, &b) {
                    ok = false;
                    break 'out;
                }
            }
        }
        normal.push(ok);
    }
    Ok(TowerResult { levels, normal, subalgebra })
}

/// The generic lower bound `(k−1)(k²/3 + 5k/6 + 1)`, exactly. One less
/// than the Witt dimension of the free rank-`k` step-3 algebra.
pub fn generic_dim_bound(k: i64) -> Result<Rational, QuotientLabError> {
    if k < 2 {
        return Err(QuotientLabError::RankTooSmall { rank: k.max(0) as usize });
    }
    let kq = rat_i(k);
    let bound = (kq.clone() - rat_i(1))
        * (&kq * &kq / rat_i(3) + kq * crate::rational::rat(5, 6) + rat_i(1));
    Ok(bound)
}

/// Convenience check used by higher layers: does a full vector lie in the
/// span of the listed full vectors (exact).
pub fn in_span(vectors: &[Vec<Rational>], v: &[Rational]) -> bool {
    if vectors.is_empty() {
        return is_zero_vec(v);
    }
    RationalMatrix::from_rows(vectors.to_vec()).row_span_contains(v)
}
