//! Cayley–Dickson doubling of the quaternions, used as an independent check
//! of the Fano multiplication table.
//!
//! An octonion is a pair `(a, b)` of quaternions standing for `a + b ℓ`, with
//! `(a, b)(c, d) = (a c − d̄ b, d a + b c̄)`. The Fano basis corresponds to the
//! doubled basis as
//!
//! | Fano | `i1` | `i2` | `i3` | `i4` | `i5` | `i6`  | `i7` |
//! |------|------|------|------|------|------|-------|------|
//! | CD   | `i`  | `j`  | `ℓ`  | `k`  | `jℓ` | `−kℓ` | `iℓ` |
//!
//! where the doubled basis is ordered `(1, i, j, k, ℓ, iℓ, jℓ, kℓ)`.

use super::{Octonion, Quaternion};

/// `(cd slot, sign)` for each Fano basis index.
const FANO_TO_CD: [(usize, f64); 8] = [
    (0, 1.0),
    (1, 1.0),
    (2, 1.0),
    (4, 1.0),
    (3, 1.0),
    (6, 1.0),
    (7, -1.0),
    (5, 1.0),
];

/// Doubled-basis coordinates of a Fano-basis octonion.
pub fn to_cayley_dickson(x: &Octonion) -> (Quaternion, Quaternion) {
    let mut cd = [0.0; 8];
    for (j, &(slot, sign)) in FANO_TO_CD.iter().enumerate() {
        cd[slot] = sign * x.0[j];
    }
    (
        Quaternion::new(cd[0], cd[1], cd[2], cd[3]),
        Quaternion::new(cd[4], cd[5], cd[6], cd[7]),
    )
}

pub fn from_cayley_dickson(a: Quaternion, b: Quaternion) -> Octonion {
    let cd = [a.w, a.x, a.y, a.z, b.w, b.x, b.y, b.z];
    let mut e = [0.0; 8];
    for (j, &(slot, sign)) in FANO_TO_CD.iter().enumerate() {
        e[j] = sign * cd[slot];
    }
    Octonion::new(e)
}

/// Octonion product computed by the doubling formula.
pub fn cayley_dickson_mul(x: &Octonion, y: &Octonion) -> Octonion {
    let (a, b) = to_cayley_dickson(x);
    let (c, d) = to_cayley_dickson(y);
    from_cayley_dickson(a * c - d.conj() * b, d * a + b * c.conj())
}
