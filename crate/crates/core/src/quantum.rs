//! SU(2) strategies, state vectors and projective measurement.
//!
//! Outcomes of an `n`-player game are indexed in binary with player 1 as the
//! most significant bit and `N = 0`, `F = 1`, so `NNN = 0`, `NNF = 1`, ...,
//! `FFF = 7`. Tensor products use the same order (player 1 outermost).

use nalgebra::{DMatrix, DVector, Matrix2};
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::algebra::Quaternion;
use crate::{Error, Result};

/// Tolerance on `|A|² + |B|² = 1`.
pub const UNIT_TOLERANCE: f64 = 1e-12;
/// Largest normalized Gram off-diagonal accepted by [`measure_in_basis`].
pub const ORTHOGONALITY_TOLERANCE: f64 = 1e-10;

const NEGATIVE_CLAMP: f64 = 1e-15;

/// A pure quantum strategy `[[A, B], [-B̄, Ā]]` in SU(2).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SU2Strategy {
    a: Complex64,
    b: Complex64,
}

impl SU2Strategy {
    pub fn new(a: Complex64, b: Complex64) -> Result<Self> {
        let norm_sqr = a.norm_sqr() + b.norm_sqr();
        if !norm_sqr.is_finite() || (norm_sqr - 1.0).abs() > UNIT_TOLERANCE {
            return Err(Error::NonUnitStrategy { norm_sqr });
        }
        Ok(Self { a, b })
    }

    /// Rescales `(A, B)` onto the unit sphere.
    pub fn normalized(a: Complex64, b: Complex64) -> Result<Self> {
        let n = (a.norm_sqr() + b.norm_sqr()).sqrt();
        if n == 0.0 || !n.is_finite() {
            return Err(Error::NonUnitStrategy { norm_sqr: n * n });
        }
        Ok(Self { a: a / n, b: b / n })
    }

    /// From `(a0, a1, b0, b1)` with `A = a0 + a1 i`, `B = b0 + b1 i`.
    pub fn from_coefficients(c: [f64; 4]) -> Result<Self> {
        Self::new(Complex64::new(c[0], c[1]), Complex64::new(c[2], c[3]))
    }

    /// `A = cos(θ/2) e^{iφ}`, `B = sin(θ/2) e^{iψ}`.
    pub fn from_angles(theta: f64, phi: f64, psi: f64) -> Self {
        let (s, c) = (theta / 2.0).sin_cos();
        Self {
            a: Complex64::from_polar(c, phi),
            b: Complex64::from_polar(s, psi),
        }
    }

    /// The classical "no flip" action, the identity.
    pub fn no_flip() -> Self {
        Self {
            a: Complex64::new(1.0, 0.0),
            b: Complex64::new(0.0, 0.0),
        }
    }

    /// The classical "flip" action `[[0, η], [-η̄, 0]]`.
    pub fn flip(eta: Complex64) -> Self {
        Self {
            a: Complex64::new(0.0, 0.0),
            b: eta / eta.norm(),
        }
    }

    pub fn a(&self) -> Complex64 {
        self.a
    }

    pub fn b(&self) -> Complex64 {
        self.b
    }

    pub fn coefficients(&self) -> [f64; 4] {
        [self.a.re, self.a.im, self.b.re, self.b.im]
    }

    pub fn matrix(&self) -> Matrix2<Complex64> {
        su2_matrix(self)
    }

    pub fn to_quaternion(&self) -> Quaternion {
        su2_to_quaternion(self)
    }

    /// Inverse of [`su2_to_quaternion`]; the quaternion must be unit.
    pub fn from_quaternion(q: Quaternion) -> Result<Self> {
        Self::from_coefficients(q.coeffs())
    }
}

pub fn su2_matrix(s: &SU2Strategy) -> Matrix2<Complex64> {
    Matrix2::new(s.a, s.b, -s.b.conj(), s.a.conj())
}

/// `(a0, a1, b0, b1) ↦ a0 + a1 i + b0 j + b1 k`; a group isomorphism
/// from SU(2) onto the unit quaternions.
pub fn su2_to_quaternion(s: &SU2Strategy) -> Quaternion {
    Quaternion::from_coeffs(s.coefficients())
}

/// Haar-random element of SU(2): four standard normals, normalized.
pub fn haar_sample<R: Rng + ?Sized>(rng: &mut R) -> SU2Strategy {
    loop {
        let v: [f64; 4] = std::array::from_fn(|_| rng.sample(StandardNormal));
        let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if n > 1e-300 {
            let v = v.map(|x| x / n);
            return SU2Strategy {
                a: Complex64::new(v[0], v[1]),
                b: Complex64::new(v[2], v[3]),
            };
        }
    }
}

/// Kronecker product of 2 or 3 single-qubit matrices, player 1 outermost.
pub fn tensor(mats: &[Matrix2<Complex64>]) -> Result<DMatrix<Complex64>> {
    if !(2..=3).contains(&mats.len()) {
        return Err(Error::UnsupportedPlayers(mats.len()));
    }
    let mut out = DMatrix::from_element(1, 1, Complex64::new(1.0, 0.0));
    for m in mats {
        out = out.kronecker(m);
    }
    Ok(out)
}

/// A non-zero vector of amplitudes, meaningful up to a non-zero scalar.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector(DVector<Complex64>);

impl StateVector {
    pub fn new(amplitudes: DVector<Complex64>) -> Result<Self> {
        if amplitudes.iter().all(|z| z.norm_sqr() == 0.0) {
            return Err(Error::ZeroState);
        }
        Ok(Self(amplitudes))
    }

    pub fn from_slice(amplitudes: &[Complex64]) -> Result<Self> {
        Self::new(DVector::from_column_slice(amplitudes))
    }

    /// The computational basis state `|index⟩` on `n_qubits` qubits.
    pub fn basis_state(n_qubits: usize, index: usize) -> Self {
        let mut v = DVector::from_element(1 << n_qubits, Complex64::new(0.0, 0.0));
        v[index] = Complex64::new(1.0, 0.0);
        Self(v)
    }

    pub fn amplitudes(&self) -> &DVector<Complex64> {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn norm(&self) -> f64 {
        self.0.norm()
    }

    pub fn normalized(&self) -> Self {
        Self(self.0.unscale(self.0.norm()))
    }

    pub fn scaled(&self, by: Complex64) -> Result<Self> {
        Self::new(self.0.map(|z| z * by))
    }

    /// `⟨self|other⟩`, conjugate-linear in `self`.
    pub fn inner(&self, other: &StateVector) -> Complex64 {
        self.0.dotc(&other.0)
    }

    /// `op · self`. Fails if the result is the zero vector.
    pub fn apply(&self, op: &DMatrix<Complex64>) -> Result<Self> {
        Self::new(op * &self.0)
    }
}

/// Gram matrix of the normalized vectors.
pub fn gram_matrix(vectors: &[StateVector]) -> DMatrix<Complex64> {
    let normalized: Vec<StateVector> = vectors.iter().map(StateVector::normalized).collect();
    DMatrix::from_fn(vectors.len(), vectors.len(), |r, c| {
        normalized[r].inner(&normalized[c])
    })
}

/// Largest `|G_rc|` with `r != c` for a Gram matrix.
pub fn max_off_diagonal(gram: &DMatrix<Complex64>) -> f64 {
    let mut worst: f64 = 0.0;
    for r in 0..gram.nrows() {
        for c in 0..gram.ncols() {
            if r != c {
                worst = worst.max(gram[(r, c)].norm());
            }
        }
    }
    worst
}

/// Projective measurement of `psi` with respect to an orthogonal basis.
///
/// Basis vectors may be unnormalized and carry arbitrary phases; only the
/// rays they span matter.
pub fn measure_in_basis(psi: &StateVector, basis: &[StateVector]) -> Result<OutcomeDistribution> {
    if basis.iter().any(|b| b.dim() != psi.dim()) {
        return Err(Error::Arity {
            expected: psi.dim(),
            got: basis.iter().map(StateVector::dim).find(|&d| d != psi.dim()).unwrap_or(0),
        });
    }
    let worst = max_off_diagonal(&gram_matrix(basis));
    if worst > ORTHOGONALITY_TOLERANCE {
        return Err(Error::NonOrthogonalBasis {
            max_off_diagonal: worst,
        });
    }
    let weights: Vec<f64> = basis
        .iter()
        .map(|b| b.inner(psi).norm_sqr() / b.0.norm_squared())
        .collect();
    OutcomeDistribution::from_weights(weights)
}

/// Probabilities over outcomes in the binary order described at module level.
#[derive(Debug, Clone, PartialEq)]
pub struct OutcomeDistribution(Vec<f64>);

impl OutcomeDistribution {
    /// Normalizes non-negative weights; entries down to `-1e-15` are clamped to 0.
    pub fn from_weights(weights: Vec<f64>) -> Result<Self> {
        if weights.iter().any(|w| !w.is_finite() || *w < -NEGATIVE_CLAMP) {
            return Err(Error::InvalidMixture(weights.iter().sum()));
        }
        let clamped: Vec<f64> = weights.into_iter().map(|w| w.max(0.0)).collect();
        let total: f64 = clamped.iter().sum();
        if total <= 0.0 {
            return Err(Error::ZeroProjection);
        }
        Ok(Self(clamped.into_iter().map(|w| w / total).collect()))
    }

    /// Wraps probabilities as computed, without renormalizing.
    pub(crate) fn from_raw(probs: Vec<f64>) -> Self {
        Self(probs)
    }

    pub fn point_mass(n_players: usize, outcome: usize) -> Self {
        let mut p = vec![0.0; 1 << n_players];
        p[outcome] = 1.0;
        Self(p)
    }

    pub fn probs(&self) -> &[f64] {
        &self.0
    }

    pub fn into_probs(self) -> Vec<f64> {
        self.0
    }

    pub fn n_players(&self) -> usize {
        self.0.len().trailing_zeros() as usize
    }

    pub fn total(&self) -> f64 {
        self.0.iter().sum()
    }

    pub fn linf_distance(&self, other: &OutcomeDistribution) -> f64 {
        self.0
            .iter()
            .zip(other.0.iter())
            .map(|(a, b)| (a - b).abs())
            .fold(if self.0.len() == other.0.len() { 0.0 } else { f64::INFINITY }, f64::max)
    }
}

/// Outcome label such as `"NFN"` for `index` in an `n_players` game.
pub fn outcome_label(index: usize, n_players: usize) -> String {
    (0..n_players)
        .map(|p| if (index >> (n_players - 1 - p)) & 1 == 1 { 'F' } else { 'N' })
        .collect()
}

/// Inverse of [`outcome_label`]; `None` for anything but a string over `{N, F}`.
pub fn parse_outcome_label(label: &str) -> Option<usize> {
    label.chars().try_fold(0usize, |acc, ch| match ch {
        'N' => Some(acc << 1),
        'F' => Some((acc << 1) | 1),
        _ => None,
    })
}

/// A player's mixed quantum strategy.
#[derive(Debug, Clone, PartialEq)]
pub enum MixedQuantumStrategy {
    /// Finitely many pure strategies with probabilities summing to 1.
    Finite(Vec<(f64, SU2Strategy)>),
    /// The Haar (uniform) distribution on SU(2).
    HaarUniform,
}

impl MixedQuantumStrategy {
    pub fn finite(support: Vec<(f64, SU2Strategy)>) -> Result<Self> {
        let total: f64 = support.iter().map(|(w, _)| *w).sum();
        if support.is_empty()
            || support.iter().any(|(w, _)| !w.is_finite() || *w < 0.0)
            || (total - 1.0).abs() > UNIT_TOLERANCE
        {
            return Err(Error::InvalidMixture(total));
        }
        Ok(Self::Finite(support))
    }

    pub fn pure(s: SU2Strategy) -> Self {
        Self::Finite(vec![(1.0, s)])
    }

    /// The classical mixture that flips with probability `flip_prob`.
    pub fn classical(flip_prob: f64, eta: Complex64) -> Result<Self> {
        if !(0.0..=1.0).contains(&flip_prob) {
            return Err(Error::ProbabilityOutOfRange(flip_prob));
        }
        Ok(Self::Finite(vec![
            (1.0 - flip_prob, SU2Strategy::no_flip()),
            (flip_prob, SU2Strategy::flip(eta)),
        ]))
    }

    pub fn is_haar(&self) -> bool {
        matches!(self, Self::HaarUniform)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn presets_match_flip_and_identity() {
        assert_eq!(SU2Strategy::no_flip().matrix(), Matrix2::identity());
        let eta = c(0.5, 3f64.sqrt() / 2.0);
        let f = SU2Strategy::flip(eta).matrix();
        assert!((f[(0, 1)] - eta).norm() < 1e-15);
        assert!((f[(1, 0)] + eta.conj()).norm() < 1e-15);
        assert_eq!(f[(0, 0)], c(0.0, 0.0));
    }

    #[test]
    fn non_unit_rejected() {
        assert!(matches!(
            SU2Strategy::new(c(1.0, 0.0), c(0.1, 0.0)),
            Err(Error::NonUnitStrategy { .. })
        ));
        assert!(SU2Strategy::from_coefficients([0.6, 0.0, 0.0, 0.8]).is_ok());
    }

    #[test]
    fn determinant_is_one() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            let m = haar_sample(&mut rng).matrix();
            assert!((m.determinant() - c(1.0, 0.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn quaternion_correspondence() {
        assert_eq!(SU2Strategy::no_flip().to_quaternion(), Quaternion::ONE);
        let s = SU2Strategy::new(c(0.0, 1.0), c(0.0, 0.0)).unwrap();
        assert_eq!(s.to_quaternion(), Quaternion::I);
    }

    #[test]
    fn tensor_arity() {
        let i = Matrix2::identity();
        assert_eq!(tensor(&[i, i, i]).unwrap(), DMatrix::identity(8, 8));
        assert_eq!(tensor(&[i]), Err(Error::UnsupportedPlayers(1)));
        assert_eq!(tensor(&[i; 4]), Err(Error::UnsupportedPlayers(4)));
    }

    #[test]
    fn tensor_flip_on_zero_zero() {
        let eta = c(1.0, 1.0) / 2f64.sqrt();
        let f = SU2Strategy::flip(eta).matrix();
        let out = StateVector::basis_state(2, 0)
            .apply(&tensor(&[f, Matrix2::identity()]).unwrap())
            .unwrap();
        let mut expected = vec![c(0.0, 0.0); 4];
        expected[0b10] = -eta.conj();
        for (got, want) in out.amplitudes().iter().zip(expected) {
            assert!((got - want).norm() < 1e-15);
        }
    }

    #[test]
    fn measurement_of_two_term_superposition() {
        let (alpha, beta) = (c(1.0, 2.0), c(-0.5, 0.25));
        let mut amps = vec![c(0.0, 0.0); 4];
        amps[0] = alpha;
        amps[3] = beta;
        let psi = StateVector::from_slice(&amps).unwrap();
        let basis: Vec<_> = (0..4).map(|k| StateVector::basis_state(2, k)).collect();
        let d = measure_in_basis(&psi, &basis).unwrap();
        let total = alpha.norm_sqr() + beta.norm_sqr();
        assert!((d.probs()[0] - alpha.norm_sqr() / total).abs() < 1e-15);
        assert!((d.probs()[3] - beta.norm_sqr() / total).abs() < 1e-15);
        assert_eq!(d.probs()[1], 0.0);

        let scaled = measure_in_basis(&psi.scaled(c(0.0, 7.0)).unwrap(), &basis).unwrap();
        assert!(scaled.linf_distance(&d) < 1e-15);

        let point = measure_in_basis(&basis[3], &basis).unwrap();
        assert_eq!(point, OutcomeDistribution::point_mass(2, 3));
    }

    #[test]
    fn measurement_rejects_bad_bases() {
        let psi = StateVector::basis_state(2, 0);
        let mut basis: Vec<_> = (0..4).map(|k| StateVector::basis_state(2, k)).collect();
        basis[1] = StateVector::from_slice(&[c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)])
            .unwrap();
        assert!(matches!(
            measure_in_basis(&psi, &basis),
            Err(Error::NonOrthogonalBasis { .. })
        ));

        let partial: Vec<_> = (1..3).map(|k| StateVector::basis_state(2, k)).collect();
        assert_eq!(measure_in_basis(&psi, &partial), Err(Error::ZeroProjection));
        assert_eq!(StateVector::from_slice(&[c(0.0, 0.0); 4]), Err(Error::ZeroState));
    }

    #[test]
    fn labels_round_trip() {
        assert_eq!(outcome_label(0b011, 3), "NFF");
        assert_eq!(outcome_label(0b10, 2), "FN");
        for n in 2..=3 {
            for k in 0..(1 << n) {
                assert_eq!(parse_outcome_label(&outcome_label(k, n)), Some(k));
            }
        }
        assert_eq!(parse_outcome_label("NXN"), None);
    }

    #[test]
    fn mixture_validation() {
        let n = SU2Strategy::no_flip();
        assert!(MixedQuantumStrategy::finite(vec![(0.5, n), (0.5, n)]).is_ok());
        assert!(MixedQuantumStrategy::finite(vec![(0.5, n), (0.6, n)]).is_err());
        assert!(MixedQuantumStrategy::finite(vec![(1.5, n), (-0.5, n)]).is_err());
        assert!(MixedQuantumStrategy::finite(vec![]).is_err());
        assert_eq!(
            MixedQuantumStrategy::classical(1.5, c(1.0, 0.0)),
            Err(Error::ProbabilityOutOfRange(1.5))
        );
    }

    #[test]
    fn haar_samples_are_unit() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..1000 {
            let s = haar_sample(&mut rng);
            assert!((s.a().norm_sqr() + s.b().norm_sqr() - 1.0).abs() <= 1e-12);
        }
    }
}
