//! Binary field arithmetic for GF(2^n), 1 <= n <= 16.
//!
//! Elements are coefficient vectors of polynomials over GF(2) reduced modulo
//! an irreducible polynomial: bit `i` of an [`Elem`] is the coefficient of
//! `t^i`. Addition is xor; multiplication and inversion go through log/antilog
//! tables built once per [`Field`]. Exhaustive sweeps dominate the runtime of
//! everything downstream, so table lookups are the right trade at these sizes.

mod poly;
mod tower;

pub use poly::{root_count_in_field, Poly, PolyError};
pub use tower::{Tower, TowerElem};

use std::fmt;
use thiserror::Error;

/// Errors raised by field construction and arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("extension degree {0} outside the supported range 1..=16")]
    UnsupportedDegree(u32),
    #[error("modulus {modulus:#x} does not have degree {n}")]
    ModulusDegreeMismatch { modulus: u32, n: u32 },
    #[error("modulus {modulus:#x} is reducible: divisible by {factor:#x}")]
    ReducibleModulus { modulus: u32, factor: u32 },
    #[error("value {value:#x} has bits at or above position {n}")]
    ValueOutOfRange { value: u32, n: u32 },
    #[error("inverse of zero")]
    ZeroInverse,
    #[error("no element of GF(2^{n}) has trace {want}")]
    NoSuchTrace { n: u32, want: u8 },
}

/// An element of GF(2^n), valid only together with the [`Field`] that made it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Elem(u16);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    /// Coefficient vector of the element, bit `i` = coefficient of `t^i`.
    pub fn bits(self) -> u16 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::LowerHex for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::LowerHex::fmt(&self.0, f)
    }
}

/// Degree of a GF(2)[t] polynomial in bit encoding; -1 for the zero polynomial.
fn bitpoly_deg(p: u32) -> i32 {
    31 - p.leading_zeros() as i32
}

/// Remainder of `a` modulo `b` in GF(2)[t] bit encoding. `b` must be nonzero.
fn bitpoly_rem(mut a: u32, b: u32) -> u32 {
    let db = bitpoly_deg(b);
    while bitpoly_deg(a) >= db {
        a ^= b << (bitpoly_deg(a) - db);
    }
    a
}

/// Smallest-degree nontrivial factor of `m` (degree n), or `None` if irreducible.
///
/// Scanning encodings in increasing order visits candidate divisors in
/// increasing degree, so the first hit is itself irreducible.
fn find_factor(m: u32, n: u32) -> Option<u32> {
    let half = n / 2;
    for d in 2..(1u32 << (half + 1)) {
        if bitpoly_deg(d) < 1 {
            continue;
        }
        if bitpoly_rem(m, d) == 0 {
            return Some(d);
        }
    }
    None
}

/// Precomputed row-echelon solver for the GF(2)-linear map x -> x^2 + x.
///
/// The map has kernel {0, 1}; its image is the trace-zero hyperplane. Solving
/// through the linear system works uniformly for every n (a half-trace formula
/// would need n odd).
#[derive(Debug, Clone)]
struct ArtinSchreierSolver {
    /// Pivot rows in reduced echelon form: (solution bit, rhs mask).
    /// `x` bit `col` = parity of `c & rhs_mask`.
    pivots: Vec<(u32, u32)>,
    /// Masks whose parity against `c` must be zero for solvability.
    constraints: Vec<u32>,
}

impl ArtinSchreierSolver {
    fn build(field: &Field) -> ArtinSchreierSolver {
        let n = field.n;
        // images[j] = e_j^2 + e_j where e_j = t^j
        let images: Vec<u32> = (0..n)
            .map(|j| {
                let e = Elem(1 << j);
                (field.mul(e, e).bits() ^ e.bits()) as u32
            })
            .collect();
        // Row i: sum_j images[j][i] * x_j = c_i
        let mut rows: Vec<(u32, u32)> = (0..n)
            .map(|i| {
                let mut coeffs = 0u32;
                for (j, img) in images.iter().enumerate() {
                    if (img >> i) & 1 == 1 {
                        coeffs |= 1 << j;
                    }
                }
                (coeffs, 1u32 << i)
            })
            .collect();

        let mut pivots = Vec::new();
        let mut rank = 0usize;
        for col in 0..n {
            let Some(pos) = (rank..rows.len()).find(|&r| (rows[r].0 >> col) & 1 == 1) else {
                continue;
            };
            rows.swap(rank, pos);
            let pivot_row = rows[rank];
            for (r, row) in rows.iter_mut().enumerate() {
                if r != rank && (row.0 >> col) & 1 == 1 {
                    row.0 ^= pivot_row.0;
                    row.1 ^= pivot_row.1;
                }
            }
            pivots.push((col, rank as u32));
            rank += 1;
        }
        let constraints = rows[rank..].iter().map(|&(_, m)| m).collect();
        let pivots = pivots
            .into_iter()
            .map(|(col, r)| (col, rows[r as usize].1))
            .collect();
        ArtinSchreierSolver {
            pivots,
            constraints,
        }
    }

    fn solve(&self, c: u32) -> Option<u16> {
        for &mask in &self.constraints {
            if (c & mask).count_ones() & 1 == 1 {
                return None;
            }
        }
        let mut x = 0u16;
        for &(col, mask) in &self.pivots {
            if (c & mask).count_ones() & 1 == 1 {
                x |= 1 << col;
            }
        }
        Some(x)
    }
}

/// GF(2^n) with its modulus and multiplication tables.
#[derive(Debug, Clone)]
pub struct Field {
    n: u32,
    q: u32,
    modulus: u32,
    generator: Elem,
    log: Vec<u16>,
    alog: Vec<u16>,
    artin_schreier: ArtinSchreierSolver,
}

impl Field {
    /// Build GF(2^n) from an explicit degree-n modulus, verifying irreducibility.
    pub fn with_modulus(n: u32, modulus: u32) -> Result<Field, FieldError> {
        if !(1..=16).contains(&n) {
            return Err(FieldError::UnsupportedDegree(n));
        }
        if bitpoly_deg(modulus) != n as i32 {
            return Err(FieldError::ModulusDegreeMismatch { modulus, n });
        }
        if let Some(factor) = find_factor(modulus, n) {
            return Err(FieldError::ReducibleModulus { modulus, factor });
        }
        Ok(Field::build(n, modulus))
    }

    /// Build GF(2^n) with the default modulus: the irreducible degree-n
    /// polynomial of smallest integer encoding.
    pub fn new(n: u32) -> Result<Field, FieldError> {
        if !(1..=16).contains(&n) {
            return Err(FieldError::UnsupportedDegree(n));
        }
        let modulus = (1u32 << n..1u32 << (n + 1))
            .find(|&m| find_factor(m, n).is_none())
            .expect("an irreducible polynomial of every degree exists");
        Ok(Field::build(n, modulus))
    }

    fn build(n: u32, modulus: u32) -> Field {
        let q = 1u32 << n;

        // Bootstrap multiplication without tables.
        let mul_nt = |x: u32, y: u32| -> u32 {
            let mut r = 0u32;
            let mut x = x;
            let mut y = y;
            while y != 0 {
                if y & 1 == 1 {
                    r ^= x;
                }
                y >>= 1;
                x <<= 1;
                if (x >> n) & 1 == 1 {
                    x ^= modulus;
                }
            }
            r
        };
        let pow_nt = |x: u32, mut e: u32| -> u32 {
            let mut base = x;
            let mut r = 1u32;
            while e != 0 {
                if e & 1 == 1 {
                    r = mul_nt(r, base);
                }
                base = mul_nt(base, base);
                e >>= 1;
            }
            r
        };

        let group_order = q - 1;
        let mut prime_factors = Vec::new();
        let mut rest = group_order;
        let mut p = 2u32;
        while p * p <= rest {
            if rest % p == 0 {
                prime_factors.push(p);
                while rest % p == 0 {
                    rest /= p;
                }
            }
            p += 1;
        }
        if rest > 1 {
            prime_factors.push(rest);
        }

        let generator = if group_order == 1 {
            1u32
        } else {
            (2..q)
                .find(|&g| {
                    prime_factors
                        .iter()
                        .all(|&p| pow_nt(g, group_order / p) != 1)
                })
                .expect("the multiplicative group of a finite field is cyclic")
        };

        let mut log = vec![0u16; q as usize];
        let mut alog = vec![0u16; group_order.max(1) as usize];
        let mut acc = 1u32;
        for i in 0..group_order.max(1) {
            alog[i as usize] = acc as u16;
            log[acc as usize] = i as u16;
            acc = mul_nt(acc, generator);
        }

        let mut field = Field {
            n,
            q,
            modulus,
            generator: Elem(generator as u16),
            log,
            alog,
            artin_schreier: ArtinSchreierSolver {
                pivots: Vec::new(),
                constraints: Vec::new(),
            },
        };
        field.artin_schreier = ArtinSchreierSolver::build(&field);
        field
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Field size q = 2^n.
    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    /// A fixed generator of the multiplicative group.
    pub fn generator(&self) -> Elem {
        self.generator
    }

    /// Checked construction of an element from its coefficient bits.
    pub fn elem(&self, bits: u32) -> Result<Elem, FieldError> {
        if bits >= self.q {
            return Err(FieldError::ValueOutOfRange { value: bits, n: self.n });
        }
        Ok(Elem(bits as u16))
    }

    /// All q elements in increasing encoding order.
    pub fn elems(&self) -> impl Iterator<Item = Elem> {
        (0..self.q).map(|b| Elem(b as u16))
    }

    pub fn add(&self, x: Elem, y: Elem) -> Elem {
        Elem(x.0 ^ y.0)
    }

    pub fn mul(&self, x: Elem, y: Elem) -> Elem {
        if x.0 == 0 || y.0 == 0 {
            return Elem::ZERO;
        }
        let mut s = self.log[x.0 as usize] as u32 + self.log[y.0 as usize] as u32;
        if s >= self.q - 1 {
            s -= self.q - 1;
        }
        Elem(self.alog[s as usize])
    }

    pub fn square(&self, x: Elem) -> Elem {
        self.mul(x, x)
    }

    pub fn inv(&self, x: Elem) -> Result<Elem, FieldError> {
        if x.0 == 0 {
            return Err(FieldError::ZeroInverse);
        }
        let l = self.log[x.0 as usize] as u32;
        let s = if l == 0 { 0 } else { self.q - 1 - l };
        Ok(Elem(self.alog[s as usize]))
    }

    /// x / y for nonzero y.
    pub fn div(&self, x: Elem, y: Elem) -> Result<Elem, FieldError> {
        Ok(self.mul(x, self.inv(y)?))
    }

    /// Square-and-multiply exponentiation; 0^0 = 1.
    pub fn pow(&self, x: Elem, mut e: u64) -> Elem {
        if x.0 == 0 {
            return if e == 0 { Elem::ONE } else { Elem::ZERO };
        }
        let mut base = x;
        let mut r = Elem::ONE;
        while e != 0 {
            if e & 1 == 1 {
                r = self.mul(r, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        r
    }

    /// The unique square root, x^(2^(n-1)). Squaring is the Frobenius
    /// automorphism in characteristic 2, so this is total.
    pub fn sqrt(&self, x: Elem) -> Elem {
        self.pow(x, 1u64 << (self.n - 1))
    }

    /// Absolute trace x + x^2 + x^4 + ... + x^(2^(n-1)), as a bit.
    pub fn trace_to_f2(&self, x: Elem) -> u8 {
        let mut acc = Elem::ZERO;
        let mut y = x;
        for _ in 0..self.n {
            acc = self.add(acc, y);
            y = self.square(y);
        }
        debug_assert!(acc.0 <= 1, "trace landed outside GF(2)");
        acc.0 as u8
    }

    /// Both roots of x^2 + x = c when Tr(c) = 0; `None` when Tr(c) = 1.
    /// The two roots differ by 1.
    pub fn solve_artin_schreier(&self, c: Elem) -> Option<(Elem, Elem)> {
        let x = self.artin_schreier.solve(c.0 as u32)?;
        Some((Elem(x), Elem(x ^ 1)))
    }

    /// Smallest-encoding element with the requested trace bit.
    pub fn smallest_with_trace(&self, want: u8) -> Result<Elem, FieldError> {
        self.elems()
            .find(|&x| self.trace_to_f2(x) == want)
            .ok_or(FieldError::NoSuchTrace { n: self.n, want })
    }
}

/// Field operations over an opaque element type, so polynomial code can run
/// over both the base field and its quadratic extension.
pub trait FieldArith {
    type El: Copy + Eq + fmt::Debug;

    fn zero(&self) -> Self::El;
    fn one(&self) -> Self::El;
    fn add(&self, x: Self::El, y: Self::El) -> Self::El;
    fn mul(&self, x: Self::El, y: Self::El) -> Self::El;
    /// `None` exactly for the zero element.
    fn inv(&self, x: Self::El) -> Option<Self::El>;

    fn is_zero(&self, x: Self::El) -> bool {
        x == self.zero()
    }

    fn pow(&self, x: Self::El, mut e: u64) -> Self::El {
        if self.is_zero(x) {
            return if e == 0 { self.one() } else { self.zero() };
        }
        let mut base = x;
        let mut r = self.one();
        while e != 0 {
            if e & 1 == 1 {
                r = self.mul(r, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        r
    }
}

impl FieldArith for Field {
    type El = Elem;

    fn zero(&self) -> Elem {
        Elem::ZERO
    }

    fn one(&self) -> Elem {
        Elem::ONE
    }

    fn add(&self, x: Elem, y: Elem) -> Elem {
        Field::add(self, x, y)
    }

    fn mul(&self, x: Elem, y: Elem) -> Elem {
        Field::mul(self, x, y)
    }

    fn inv(&self, x: Elem) -> Option<Elem> {
        Field::inv(self, x).ok()
    }
}
