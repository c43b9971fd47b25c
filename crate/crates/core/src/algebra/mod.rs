//! Quaternion and octonion algebra.
//!
//! Octonions use the Fano-plane table with oriented lines
//! `(n, n+1, n+3) mod 7`, i.e. `(1,2,4), (2,3,5), (3,4,6), (4,5,7), (5,6,1),
//! (6,7,2), (7,1,3)`. Along a line `i_a i_b = i_c` and cyclic shifts; reversing
//! the order flips the sign. Three of the lines through `i1` give the
//! quaternionic subalgebras used for the player embeddings:
//! `H1 = {1,i1,i2,i4}`, `H2 = {1,i1,i5,i6}`, `H3 = {1,i1,i3,i7}`.

mod cayley_dickson;
mod octonion;
mod quaternion;

pub use cayley_dickson::{cayley_dickson_mul, from_cayley_dickson, to_cayley_dickson};
pub use octonion::{Octonion, FANO_LINES};
pub use quaternion::{quat_mul, Quaternion};

/// One of the three quaternionic subalgebras sharing the complex line `{1, i1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SubalgebraId {
    H1,
    H2,
    H3,
}

impl SubalgebraId {
    pub const ALL: [SubalgebraId; 3] = [SubalgebraId::H1, SubalgebraId::H2, SubalgebraId::H3];

    /// Octonion basis indices that `1, i, j, k` map to.
    pub const fn basis(self) -> [usize; 4] {
        match self {
            SubalgebraId::H1 => [0, 1, 2, 4],
            SubalgebraId::H2 => [0, 1, 5, 6],
            SubalgebraId::H3 => [0, 1, 3, 7],
        }
    }
}

/// Linear injection of the quaternions onto the chosen subalgebra.
pub fn embed_subalgebra(q: Quaternion, id: SubalgebraId) -> Octonion {
    let mut e = [0.0; 8];
    for (slot, value) in id.basis().into_iter().zip(q.coeffs()) {
        e[slot] = value;
    }
    Octonion::new(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embedding_basis_correspondence() {
        assert_eq!(embed_subalgebra(Quaternion::I, SubalgebraId::H1), Octonion::basis(1));
        assert_eq!(embed_subalgebra(Quaternion::J, SubalgebraId::H2), Octonion::basis(5));
        assert_eq!(embed_subalgebra(Quaternion::K, SubalgebraId::H3), Octonion::basis(7));
        assert_eq!(Octonion::basis(1) * Octonion::basis(3), Octonion::basis(7));
    }

    #[test]
    fn subalgebras_share_complex_line() {
        for id in SubalgebraId::ALL {
            assert_eq!(&id.basis()[..2], &[0, 1]);
        }
    }

    #[test]
    fn embedding_is_multiplicative_on_basis() {
        let units = [Quaternion::ONE, Quaternion::I, Quaternion::J, Quaternion::K];
        for id in SubalgebraId::ALL {
            for p in units {
                for q in units {
                    assert_eq!(
                        embed_subalgebra(p * q, id),
                        embed_subalgebra(p, id) * embed_subalgebra(q, id),
                        "{id:?} {p:?} {q:?}"
                    );
                }
            }
        }
    }
}
