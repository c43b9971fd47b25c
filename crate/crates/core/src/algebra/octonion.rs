use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::{Error, Result};

/// Oriented Fano lines `(a, b, c)` with `i_a i_b = i_c`.
pub const FANO_LINES: [(usize, usize, usize); 7] = fano_lines();

const fn fano_lines() -> [(usize, usize, usize); 7] {
    let mut lines = [(0, 0, 0); 7];
    let mut n = 0;
    while n < 7 {
        lines[n] = (n + 1, (n + 1) % 7 + 1, (n + 3) % 7 + 1);
        n += 1;
    }
    lines
}

/// `TABLE[j][k] = (sign, l)` such that `e_j e_k = sign * e_l`, with `e_0 = 1`.
const TABLE: [[(f64, usize); 8]; 8] = mul_table();

const fn mul_table() -> [[(f64, usize); 8]; 8] {
    let mut t = [[(0.0, 0); 8]; 8];
    let mut j = 0;
    while j < 8 {
        t[0][j] = (1.0, j);
        t[j][0] = (1.0, j);
        if j > 0 {
            t[j][j] = (-1.0, 0);
        }
        j += 1;
    }
    let mut n = 0;
    while n < 7 {
        let (a, b, c) = FANO_LINES[n];
        let cyc = [(a, b, c), (b, c, a), (c, a, b)];
        let mut m = 0;
        while m < 3 {
            let (x, y, z) = cyc[m];
            t[x][y] = (1.0, z);
            t[y][x] = (-1.0, z);
            m += 1;
        }
        n += 1;
    }
    t
}

/// `e[0] + Σ e[j] i_j`.
#[derive(Clone, Copy, PartialEq, Default)]
pub struct Octonion(pub [f64; 8]);

impl Octonion {
    pub const ONE: Octonion = Octonion::basis(0);

    pub const fn new(e: [f64; 8]) -> Self {
        Self(e)
    }

    /// The basis element `i_j` (`i_0 = 1`). Panics if `j > 7`.
    pub const fn basis(j: usize) -> Self {
        let mut e = [0.0; 8];
        e[j] = 1.0;
        Self(e)
    }

    pub const fn real(r: f64) -> Self {
        let mut e = [0.0; 8];
        e[0] = r;
        Self(e)
    }

    pub const fn coeffs(&self) -> &[f64; 8] {
        &self.0
    }

    /// Coefficient of `i_j`, treating the real unit as `i_0`.
    pub fn project(&self, j: usize) -> Result<f64> {
        self.0.get(j).copied().ok_or(Error::IndexOutOfRange(j))
    }

    pub fn conj(&self) -> Self {
        let mut e = self.0.map(|x| -x);
        e[0] = self.0[0];
        Self(e)
    }

    pub fn norm_sqr(&self) -> f64 {
        self.0.iter().map(|x| x * x).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn scale(&self, s: f64) -> Self {
        Self(self.0.map(|x| x * s))
    }

    /// Largest componentwise absolute difference.
    pub fn max_abs_diff(&self, other: &Octonion) -> f64 {
        self.0
            .iter()
            .zip(other.0.iter())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

impl fmt::Debug for Octonion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Octonion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0[0])?;
        for (j, c) in self.0.iter().enumerate().skip(1) {
            if *c != 0.0 {
                let sign = if *c < 0.0 { '-' } else { '+' };
                write!(f, " {} {} i{}", sign, c.abs(), j)?;
            }
        }
        Ok(())
    }
}

impl Mul for Octonion {
    type Output = Octonion;

    /// Bilinear product under the Fano table.
    fn mul(self, rhs: Octonion) -> Octonion {
        let mut out = [0.0; 8];
        for (j, &a) in self.0.iter().enumerate() {
            if a == 0.0 {
                continue;
            }
            for (k, &b) in rhs.0.iter().enumerate() {
                let (sign, l) = TABLE[j][k];
                out[l] += sign * a * b;
            }
        }
        Octonion(out)
    }
}

impl Add for Octonion {
    type Output = Octonion;

    fn add(self, rhs: Octonion) -> Octonion {
        Octonion(std::array::from_fn(|j| self.0[j] + rhs.0[j]))
    }
}

impl Sub for Octonion {
    type Output = Octonion;

    fn sub(self, rhs: Octonion) -> Octonion {
        Octonion(std::array::from_fn(|j| self.0[j] - rhs.0[j]))
    }
}

impl Neg for Octonion {
    type Output = Octonion;

    fn neg(self) -> Octonion {
        self.scale(-1.0)
    }
}
