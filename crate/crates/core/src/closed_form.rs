//! Closed-form outcome distributions.
//!
//! Three players: each SU(2) strategy `(A, B)` becomes a unit octonion
//! `A + B η̄ i_m` in its own quaternionic subalgebra (`m = 4, 6, 7` for players
//! 1, 2, 3), with the complex numbers read inside the common line `{1, i1}`.
//! Sign variants `s_{ab}` negate `a0` (first flag) and/or `a1` (second flag).
//! The eight outcome probabilities are then squared projections of
//!
//! ```text
//! X± = ((s10 t10) u01 ± (s01 t10) u01) / 2
//! Y± = ((s01 t00) u00 ± (s10 t00) u00) / 2
//! ```
//!
//! with `NNN, FFF, FFN, NNF` read off `X±` at `i0, i1, i3, i7` and
//! `NFF, FNN, FNF, NFN` read off `Y±` at `i2, i4, i5, i6`. Triple products are
//! always left-associated.
//!
//! Two players: with `η = (1+i)/√2`, player 1 maps to `p = A + B η̄ j` and player
//! 2 to `q = P − Q̄ η̄ j`; the squared coefficients of `p q` on `(1, k, j, i)`
//! are the probabilities of `(NN, NF, FN, FF)`.

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;

use crate::algebra::{Octonion, Quaternion, SubalgebraId};
use crate::quantum::{OutcomeDistribution, SU2Strategy};
use crate::{Error, Result};

const HALF_SQRT3: f64 = 0.866_025_403_784_438_6;

/// Real and imaginary parts of a player's `(A, B)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StrategyCoefficients {
    pub a0: f64,
    pub a1: f64,
    pub b0: f64,
    pub b1: f64,
}

impl From<&SU2Strategy> for StrategyCoefficients {
    fn from(s: &SU2Strategy) -> Self {
        let [a0, a1, b0, b1] = s.coefficients();
        Self { a0, a1, b0, b1 }
    }
}

impl From<SU2Strategy> for StrategyCoefficients {
    fn from(s: SU2Strategy) -> Self {
        (&s).into()
    }
}

/// The two-bit subscript on `s`, `t`, `u`: which of `a0`, `a1` are negated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SignFlags {
    pub flip_first: bool,
    pub flip_second: bool,
}

impl SignFlags {
    pub const S00: SignFlags = SignFlags::new(false, false);
    pub const S01: SignFlags = SignFlags::new(false, true);
    pub const S10: SignFlags = SignFlags::new(true, false);
    pub const S11: SignFlags = SignFlags::new(true, true);

    pub const fn new(flip_first: bool, flip_second: bool) -> Self {
        Self {
            flip_first,
            flip_second,
        }
    }
}

/// Unit octonion for `player` (1, 2 or 3) in `H1`, `H2` or `H3`.
pub fn embed_player(player: usize, c: StrategyCoefficients, flags: SignFlags) -> Result<Octonion> {
    let id = match player {
        1 => SubalgebraId::H1,
        2 => SubalgebraId::H2,
        3 => SubalgebraId::H3,
        _ => return Err(Error::PlayerOutOfRange { player, n_players: 3 }),
    };
    let [one, i1, u, v] = id.basis();
    let mut e = [0.0; 8];
    e[one] = if flags.flip_first { -c.a0 } else { c.a0 };
    e[i1] = if flags.flip_second { -c.a1 } else { c.a1 };
    e[u] = HALF_SQRT3 * c.b0 - 0.5 * c.b1;
    e[v] = 0.5 * c.b0 + HALF_SQRT3 * c.b1;
    Ok(Octonion::new(e))
}

/// The four octonions the three-player probabilities are read from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Theorem1Terms {
    pub x_plus: Octonion,
    pub x_minus: Octonion,
    pub y_plus: Octonion,
    pub y_minus: Octonion,
}

/// Projections of `X±` that carry probability, in outcome order NNN, FFF, FFN, NNF.
pub const X_PROJECTIONS: [(usize, usize); 4] = [(0b000, 0), (0b111, 1), (0b110, 3), (0b001, 7)];
/// Projections of `Y±` that carry probability, in outcome order NFF, FNN, FNF, NFN.
pub const Y_PROJECTIONS: [(usize, usize); 4] = [(0b011, 2), (0b100, 4), (0b101, 5), (0b010, 6)];

pub fn theorem1_terms(
    c1: StrategyCoefficients,
    c2: StrategyCoefficients,
    c3: StrategyCoefficients,
) -> Theorem1Terms {
    let s = |f| embed_player(1, c1, f).expect("player 1");
    let t = |f| embed_player(2, c2, f).expect("player 2");
    let u = |f| embed_player(3, c3, f).expect("player 3");

    let x_first = (s(SignFlags::S10) * t(SignFlags::S10)) * u(SignFlags::S01);
    let x_second = (s(SignFlags::S01) * t(SignFlags::S10)) * u(SignFlags::S01);
    let y_first = (s(SignFlags::S01) * t(SignFlags::S00)) * u(SignFlags::S00);
    let y_second = (s(SignFlags::S10) * t(SignFlags::S00)) * u(SignFlags::S00);

    Theorem1Terms {
        x_plus: (x_first + x_second).scale(0.5),
        x_minus: (x_first - x_second).scale(0.5),
        y_plus: (y_first + y_second).scale(0.5),
        y_minus: (y_first - y_second).scale(0.5),
    }
}

/// Three-player outcome distribution from the octonionic closed form.
pub fn theorem1_distribution(s1: &SU2Strategy, s2: &SU2Strategy, s3: &SU2Strategy) -> OutcomeDistribution {
    distribution_from_terms(&theorem1_terms(s1.into(), s2.into(), s3.into()))
}

pub fn distribution_from_terms(terms: &Theorem1Terms) -> OutcomeDistribution {
    let mut probs = vec![0.0; 8];
    for (outcome, j) in X_PROJECTIONS {
        probs[outcome] = terms.x_plus.0[j].powi(2) + terms.x_minus.0[j].powi(2);
    }
    for (outcome, j) in Y_PROJECTIONS {
        probs[outcome] = terms.y_plus.0[j].powi(2) + terms.y_minus.0[j].powi(2);
    }
    OutcomeDistribution::from_raw(probs)
}

/// Unit quaternions `(p, q)` of the two-player map.
pub fn landsburg_quaternions(p: &SU2Strategy, q: &SU2Strategy) -> (Quaternion, Quaternion) {
    let eta_bar = Complex64::new(FRAC_1_SQRT_2, -FRAC_1_SQRT_2);
    let pb = p.b() * eta_bar;
    let qb = -(q.b().conj() * eta_bar);
    (
        Quaternion::new(p.a().re, p.a().im, pb.re, pb.im),
        Quaternion::new(q.a().re, q.a().im, qb.re, qb.im),
    )
}

/// Two-player outcome distribution `(NN, NF, FN, FF)` from the quaternion `p q`.
pub fn landsburg_distribution(p: &SU2Strategy, q: &SU2Strategy) -> OutcomeDistribution {
    let (p, q) = landsburg_quaternions(p, q);
    let r = p * q;
    OutcomeDistribution::from_raw(vec![r.w * r.w, r.z * r.z, r.y * r.y, r.x * r.x])
}

/// Closed-form distribution for 2 or 3 players.
pub fn closed_form_distribution(strategies: &[SU2Strategy]) -> Result<OutcomeDistribution> {
    match strategies {
        [p, q] => Ok(landsburg_distribution(p, q)),
        [s, t, u] => Ok(theorem1_distribution(s, t, u)),
        other => Err(Error::UnsupportedPlayers(other.len())),
    }
}

/// How much weight the three-player terms put on coordinates that never
/// enter a probability, plus the two norm identities.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VanishingProjectionReport {
    /// max over j ∈ {2,4,5,6} of |π_j(X±)|.
    pub x_unused_max: f64,
    /// max over j ∈ {0,1,3,7} of |π_j(Y±)|.
    pub y_unused_max: f64,
    /// |X+|² + |X−|².
    pub x_norm_sqr: f64,
    /// |Y+|² + |Y−|².
    pub y_norm_sqr: f64,
    /// Squared weight on all unused projections of both groups. Each group
    /// has norm² 1 while the probabilities sum to 1, so this is always 1.
    pub unused_weight: f64,
}

impl VanishingProjectionReport {
    pub fn max_unused(&self) -> f64 {
        self.x_unused_max.max(self.y_unused_max)
    }

    pub fn max_parallelogram_defect(&self) -> f64 {
        (self.x_norm_sqr - 1.0).abs().max((self.y_norm_sqr - 1.0).abs())
    }
}

pub fn vanishing_projection_report(
    s1: &SU2Strategy,
    s2: &SU2Strategy,
    s3: &SU2Strategy,
) -> VanishingProjectionReport {
    let terms = theorem1_terms(s1.into(), s2.into(), s3.into());
    let weight = |a: &Octonion, b: &Octonion, slots: [usize; 4]| -> f64 {
        slots.iter().map(|&j| a.0[j].powi(2) + b.0[j].powi(2)).sum()
    };
    let unused = |a: &Octonion, b: &Octonion, slots: [usize; 4]| {
        slots
            .iter()
            .map(|&j| a.0[j].abs().max(b.0[j].abs()))
            .fold(0.0, f64::max)
    };
    VanishingProjectionReport {
        x_unused_max: unused(&terms.x_plus, &terms.x_minus, [2, 4, 5, 6]),
        y_unused_max: unused(&terms.y_plus, &terms.y_minus, [0, 1, 3, 7]),
        x_norm_sqr: terms.x_plus.norm_sqr() + terms.x_minus.norm_sqr(),
        y_norm_sqr: terms.y_plus.norm_sqr() + terms.y_minus.norm_sqr(),
        unused_weight: weight(&terms.x_plus, &terms.x_minus, [2, 4, 5, 6])
            + weight(&terms.y_plus, &terms.y_minus, [0, 1, 3, 7]),
    }
}
