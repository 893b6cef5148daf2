//! The quadratic extension GF(q^2) = GF(q)[z]/(z^2 + z + k), Tr(k) = 1.
//!
//! Elements are written u + v*z. The defining relation gives z^q = z + 1, so
//! Frobenius and the norm x -> x^(q+1) have closed forms that never leave the
//! coefficient pair.

use super::{Elem, Field, FieldArith, FieldError};
use std::sync::OnceLock;

/// An element u + v*z of the tower, as a pair over the base field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct TowerElem {
    pub u: Elem,
    pub v: Elem,
}

impl TowerElem {
    pub const ZERO: TowerElem = TowerElem {
        u: Elem::ZERO,
        v: Elem::ZERO,
    };
    pub const ONE: TowerElem = TowerElem {
        u: Elem::ONE,
        v: Elem::ZERO,
    };

    pub fn is_zero(self) -> bool {
        self.u.is_zero() && self.v.is_zero()
    }

    /// Whether the element lies in the embedded base field.
    pub fn is_base(self) -> bool {
        self.v.is_zero()
    }
}

/// GF(q^2) over a base field, with the tower constant k fixed at construction.
#[derive(Debug, Clone)]
pub struct Tower {
    base: Field,
    k: Elem,
    mu: OnceLock<Vec<TowerElem>>,
}

impl Tower {
    /// Tower with the deterministic default k: the smallest-encoding element
    /// of trace 1 (k = 1 whenever n is odd). Classification results must not
    /// depend on this choice; a property test re-runs them under another k.
    pub fn new(base: Field) -> Tower {
        let k = base
            .smallest_with_trace(1)
            .expect("every GF(2^n) has trace-1 elements");
        Tower {
            base,
            k,
            mu: OnceLock::new(),
        }
    }

    /// Tower with an explicit k; rejects Tr(k) = 0 (z^2 + z + k would split).
    pub fn with_k(base: Field, k: Elem) -> Result<Tower, FieldError> {
        if base.trace_to_f2(k) != 1 {
            return Err(FieldError::NoSuchTrace { n: base.n(), want: 1 });
        }
        Ok(Tower {
            base,
            k,
            mu: OnceLock::new(),
        })
    }

    pub fn base(&self) -> &Field {
        &self.base
    }

    pub fn k(&self) -> Elem {
        self.k
    }

    /// Base field size q.
    pub fn q(&self) -> u32 {
        self.base.q()
    }

    /// Tower size q^2.
    pub fn order(&self) -> u64 {
        (self.base.q() as u64) * (self.base.q() as u64)
    }

    pub fn embed(&self, x: Elem) -> TowerElem {
        TowerElem { u: x, v: Elem::ZERO }
    }

    pub fn z(&self) -> TowerElem {
        TowerElem {
            u: Elem::ZERO,
            v: Elem::ONE,
        }
    }

    /// Packed index u | v << n, covering 0..q^2.
    pub fn index(&self, x: TowerElem) -> u32 {
        x.u.bits() as u32 | (x.v.bits() as u32) << self.base.n()
    }

    pub fn elem_at(&self, index: u32) -> TowerElem {
        let mask = self.base.q() - 1;
        TowerElem {
            u: Elem((index & mask) as u16),
            v: Elem((index >> self.base.n()) as u16),
        }
    }

    /// All q^2 elements in increasing index order.
    pub fn elems(&self) -> impl Iterator<Item = TowerElem> + '_ {
        (0..self.order() as u32).map(|i| self.elem_at(i))
    }

    pub fn add(&self, x: TowerElem, y: TowerElem) -> TowerElem {
        TowerElem {
            u: self.base.add(x.u, y.u),
            v: self.base.add(x.v, y.v),
        }
    }

    /// (u1 + v1 z)(u2 + v2 z) with z^2 = z + k folded in.
    pub fn mul(&self, x: TowerElem, y: TowerElem) -> TowerElem {
        let f = &self.base;
        let uu = f.mul(x.u, y.u);
        let vv = f.mul(x.v, y.v);
        let cross = f.add(f.mul(x.u, y.v), f.mul(x.v, y.u));
        TowerElem {
            u: f.add(uu, f.mul(self.k, vv)),
            v: f.add(cross, vv),
        }
    }

    pub fn square(&self, x: TowerElem) -> TowerElem {
        let f = &self.base;
        let u2 = f.square(x.u);
        let v2 = f.square(x.v);
        TowerElem {
            u: f.add(u2, f.mul(self.k, v2)),
            v: v2,
        }
    }

    /// Frobenius x -> x^q: (u + vz)^q = (u + v) + vz, from z^q = z + 1.
    pub fn frobenius(&self, x: TowerElem) -> TowerElem {
        TowerElem {
            u: self.base.add(x.u, x.v),
            v: x.v,
        }
    }

    /// Norm x -> x^(q+1) = u^2 + uv + k v^2, always in the base field.
    pub fn norm(&self, x: TowerElem) -> Elem {
        let f = &self.base;
        f.add(
            f.add(f.square(x.u), f.mul(x.u, x.v)),
            f.mul(self.k, f.square(x.v)),
        )
    }

    /// x^(-1) = x^q / norm(x).
    pub fn inv(&self, x: TowerElem) -> Result<TowerElem, FieldError> {
        let n = self.norm(x);
        let ninv = self.base.inv(n)?;
        let c = self.frobenius(x);
        Ok(TowerElem {
            u: self.base.mul(c.u, ninv),
            v: self.base.mul(c.v, ninv),
        })
    }

    pub fn div(&self, x: TowerElem, y: TowerElem) -> Result<TowerElem, FieldError> {
        Ok(self.mul(x, self.inv(y)?))
    }

    pub fn pow(&self, x: TowerElem, mut e: u64) -> TowerElem {
        if x.is_zero() {
            return if e == 0 { TowerElem::ONE } else { TowerElem::ZERO };
        }
        let mut base = x;
        let mut r = TowerElem::ONE;
        while e != 0 {
            if e & 1 == 1 {
                r = self.mul(r, base);
            }
            base = self.square(base);
            e >>= 1;
        }
        r
    }

    /// The subgroup mu_{q+1} of norm-1 elements, by brute filter over all of
    /// GF(q^2) in index order. Cached; generator-power construction must agree
    /// (tested). Size is always q + 1.
    pub fn mu_subgroup(&self) -> &[TowerElem] {
        self.mu.get_or_init(|| {
            let mu: Vec<TowerElem> = self
                .elems()
                .filter(|&x| !x.is_zero() && self.norm(x) == Elem::ONE)
                .collect();
            assert_eq!(mu.len() as u32, self.q() + 1);
            mu
        })
    }

    /// The bijection GF(q) + {infinity} -> mu_{q+1}:
    /// phi(x) = (x + z + 1)/(x + z) = (x + z)^(q-1), phi(None) = 1.
    pub fn phi(&self, x: Option<Elem>) -> TowerElem {
        let Some(x) = x else {
            return TowerElem::ONE;
        };
        let den = TowerElem { u: x, v: Elem::ONE };
        let num = TowerElem {
            u: self.base.add(x, Elem::ONE),
            v: Elem::ONE,
        };
        self.div(num, den)
            .expect("x + z has nonzero z-component, hence nonzero norm")
    }
}

impl FieldArith for Tower {
    type El = TowerElem;

    fn zero(&self) -> TowerElem {
        TowerElem::ZERO
    }

    fn one(&self) -> TowerElem {
        TowerElem::ONE
    }

    fn add(&self, x: TowerElem, y: TowerElem) -> TowerElem {
        Tower::add(self, x, y)
    }

    fn mul(&self, x: TowerElem, y: TowerElem) -> TowerElem {
        Tower::mul(self, x, y)
    }

    fn inv(&self, x: TowerElem) -> Option<TowerElem> {
        Tower::inv(self, x).ok()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tower(n: u32) -> Tower {
        Tower::new(Field::new(n).unwrap())
    }

    #[test]
    fn default_k_selection() {
        // n odd: Tr(1) = n mod 2 = 1, and 0 has trace 0, so k = 1.
        for n in [1u32, 3, 5, 7] {
            assert_eq!(tower(n).k(), Elem::ONE);
        }
        // GF(4): first trace-1 element in encoding order 0,1,omega,omega^2 is omega.
        assert_eq!(tower(2).k().bits(), 2);
    }

    #[test]
    fn with_k_rejects_trace_zero() {
        let f = Field::new(2).unwrap();
        assert!(Tower::with_k(f, Elem::ONE).is_err()); // Tr(1) = 0 in GF(4)
    }

    #[test]
    fn frobenius_closed_form_and_involution() {
        for n in 1..=6 {
            let t = tower(n);
            for x in t.elems() {
                let fr = t.frobenius(x);
                // (u + vz)^q computed by plain exponentiation must agree.
                assert_eq!(fr, t.pow(x, t.q() as u64));
                assert_eq!(t.frobenius(fr), x);
            }
        }
    }

    #[test]
    fn frobenius_fixes_exactly_the_base_field() {
        let t = tower(3);
        for x in t.elems() {
            assert_eq!(t.frobenius(x) == x, x.is_base());
        }
    }

    #[test]
    fn norm_is_multiplicative_and_matches_power() {
        for n in 1..=5 {
            let t = tower(n);
            for x in t.elems() {
                let nx = t.norm(x);
                assert_eq!(t.embed(nx), t.pow(x, (t.q() + 1) as u64));
                for y in t.elems().take(20) {
                    assert_eq!(
                        t.norm(t.mul(x, y)),
                        t.base().mul(nx, t.norm(y))
                    );
                }
            }
        }
    }

    #[test]
    fn tower_inverse_and_axioms() {
        for n in 1..=4 {
            let t = tower(n);
            for x in t.elems() {
                if x.is_zero() {
                    assert!(t.inv(x).is_err());
                    continue;
                }
                assert_eq!(t.mul(x, t.inv(x).unwrap()), TowerElem::ONE);
            }
        }
    }

    #[test]
    fn mu_subgroup_is_norm_kernel_and_closed() {
        for n in 1..=4 {
            let t = tower(n);
            let mu = t.mu_subgroup();
            assert_eq!(mu.len() as u32, t.q() + 1);
            assert!(mu.contains(&TowerElem::ONE));
            for &x in mu {
                assert_eq!(t.norm(x), Elem::ONE);
                assert!(mu.contains(&t.inv(x).unwrap()));
                for &y in mu {
                    assert!(mu.contains(&t.mul(x, y)));
                }
            }
            // Kernel property: nothing of norm 1 is missing.
            let count = t
                .elems()
                .filter(|&x| !x.is_zero() && t.norm(x) == Elem::ONE)
                .count();
            assert_eq!(count, mu.len());
        }
    }

    #[test]
    fn mu_subgroup_matches_generator_powers() {
        // mu_{q+1} = powers of g^(q-1) for a generator g of GF(q^2)^*.
        for n in 2..=4 {
            let t = tower(n);
            let g = t
                .elems()
                .find(|&x| {
                    !x.is_zero() && {
                        let ord_candidates: Vec<u64> = {
                            let o = t.order() - 1;
                            (1..=o).filter(|d| o % d == 0 && *d < o).collect()
                        };
                        ord_candidates.iter().all(|&d| t.pow(x, d) != TowerElem::ONE)
                    }
                })
                .expect("GF(q^2)* is cyclic");
            let step = t.pow(g, (t.q() - 1) as u64);
            let mut from_powers: Vec<TowerElem> = (0..=t.q() as u64)
                .map(|i| t.pow(step, i))
                .collect();
            from_powers.sort_by_key(|&x| t.index(x));
            let mut mu = t.mu_subgroup().to_vec();
            mu.sort_by_key(|&x| t.index(x));
            assert_eq!(from_powers, mu);
        }
    }

    #[test]
    fn phi_maps_onto_mu_bijectively() {
        for n in 1..=4 {
            let t = tower(n);
            assert_eq!(t.phi(None), TowerElem::ONE);
            let mut images: Vec<TowerElem> = t
                .base()
                .elems()
                .map(|x| t.phi(Some(x)))
                .chain(std::iter::once(t.phi(None)))
                .collect();
            for &im in &images {
                assert_eq!(t.norm(im), Elem::ONE);
            }
            images.sort_by_key(|&x| t.index(x));
            images.dedup();
            assert_eq!(images.len() as u32, t.q() + 1);
        }
    }

    #[test]
    fn phi_in_gf4_has_five_distinct_images() {
        let t = tower(2);
        let mut images: Vec<u32> = t
            .base()
            .elems()
            .map(|x| t.index(t.phi(Some(x))))
            .chain(std::iter::once(t.index(t.phi(None))))
            .collect();
        images.sort_unstable();
        images.dedup();
        assert_eq!(images.len(), 5);
    }
}
