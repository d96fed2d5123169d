//! Scalars for Plücker computations: `f64` and the prime field `GF(2^61 - 1)`.

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use rand::Rng;

/// Field operations needed by determinants and dual bases.
pub trait Scalar:
    Copy
    + Debug
    + PartialEq
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    /// Multiplicative inverse; `None` for zero.
    fn inv(self) -> Option<Self>;
    /// Pivot preference for elimination. Larger is better; zero means unusable.
    fn pivot_weight(self) -> f64;
    fn is_zero(self) -> bool {
        self == Self::zero()
    }
}

impl Scalar for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_i64(v: i64) -> Self {
        v as f64
    }
    fn inv(self) -> Option<Self> {
        (self != 0.0).then(|| 1.0 / self)
    }
    fn pivot_weight(self) -> f64 {
        self.abs()
    }
}

/// Element of `GF(p)` with `p = 2^61 - 1`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Fp(u64);

impl Fp {
    pub const MODULUS: u64 = (1 << 61) - 1;

    pub fn new(v: u64) -> Self {
        Fp(v % Self::MODULUS)
    }

    pub fn value(self) -> u64 {
        self.0
    }

    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        Fp(rng.random_range(0..Self::MODULUS))
    }

    fn reduce(x: u128) -> u64 {
        // 2^61 ≡ 1 (mod p)
        let p = Self::MODULUS as u128;
        let folded = (x & p) + (x >> 61);
        let folded = (folded & p) + (folded >> 61);
        let v = folded as u64;
        if v >= Self::MODULUS {
            v - Self::MODULUS
        } else {
            v
        }
    }

    pub fn pow(self, mut e: u64) -> Self {
        let mut base = self;
        let mut acc = Fp(1);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }
}

impl Debug for Fp {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Fp({})", self.0)
    }
}

impl Add for Fp {
    type Output = Fp;
    fn add(self, rhs: Fp) -> Fp {
        let s = self.0 + rhs.0;
        Fp(if s >= Self::MODULUS { s - Self::MODULUS } else { s })
    }
}

impl Sub for Fp {
    type Output = Fp;
    fn sub(self, rhs: Fp) -> Fp {
        if self.0 >= rhs.0 {
            Fp(self.0 - rhs.0)
        } else {
            Fp(self.0 + Self::MODULUS - rhs.0)
        }
    }
}

impl Mul for Fp {
    type Output = Fp;
    fn mul(self, rhs: Fp) -> Fp {
        Fp(Self::reduce(self.0 as u128 * rhs.0 as u128))
    }
}

impl Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        Fp::zero() - self
    }
}

impl Scalar for Fp {
    fn zero() -> Self {
        Fp(0)
    }
    fn one() -> Self {
        Fp(1)
    }
    fn from_i64(v: i64) -> Self {
        let r = v.rem_euclid(Self::MODULUS as i64);
        Fp(r as u64)
    }
    fn inv(self) -> Option<Self> {
        (self.0 != 0).then(|| self.pow(Self::MODULUS - 2))
    }
    fn pivot_weight(self) -> f64 {
        if self.0 == 0 {
            0.0
        } else {
            1.0
        }
    }
}

/// Determinant of a square matrix given as rows.
///
/// Orders up to 3 use cofactor expansion, which is exact on integer-valued
/// `f64` input; larger orders use elimination with maximal-weight pivots.
pub fn determinant<T: Scalar>(rows: &[Vec<T>]) -> T {
    let n = rows.len();
    debug_assert!(rows.iter().all(|r| r.len() == n));
    match n {
        0 => T::one(),
        1 => rows[0][0],
        2 => rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0],
        3 => {
            let a = &rows[0];
            let b = &rows[1];
            let c = &rows[2];
            a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0])
                + a[2] * (b[0] * c[1] - b[1] * c[0])
        }
        _ => eliminate_det(rows.to_vec()),
    }
}

fn eliminate_det<T: Scalar>(mut a: Vec<Vec<T>>) -> T {
    let n = a.len();
    let mut det = T::one();
    for col in 0..n {
        let (piv, w) = (col..n)
            .map(|i| (i, a[i][col].pivot_weight()))
            .fold((col, 0.0), |best, cur| if cur.1 > best.1 { cur } else { best });
        if w == 0.0 {
            return T::zero();
        }
        if piv != col {
            a.swap(piv, col);
            det = -det;
        }
        let p = a[col][col];
        det = det * p;
        let p_inv = p.inv().expect("nonzero pivot");
        for i in col + 1..n {
            let factor = a[i][col] * p_inv;
            if factor.is_zero() {
                continue;
            }
            subtract_row(&mut a, col, i, col, factor);
        }
    }
    det
}

/// `a[target][from..] -= factor * a[pivot][from..]`, with `pivot < target`.
fn subtract_row<T: Scalar>(a: &mut [Vec<T>], pivot: usize, target: usize, from: usize, factor: T) {
    let (top, bottom) = a.split_at_mut(target);
    for (x, &v) in bottom[0][from..].iter_mut().zip(&top[pivot][from..]) {
        *x = *x - factor * v;
    }
}

/// Exact rank by elimination. Meant for [`Fp`]; on `f64` it treats only
/// exact zeros as zero.
pub fn exact_rank<T: Scalar>(rows: &[Vec<T>]) -> usize {
    let mut a = rows.to_vec();
    let nrows = a.len();
    let ncols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(piv) = (rank..nrows).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(piv, rank);
        let p_inv = a[rank][col].inv().expect("nonzero pivot");
        for i in rank + 1..nrows {
            let factor = a[i][col] * p_inv;
            if factor.is_zero() {
                continue;
            }
            subtract_row(&mut a, rank, i, col, factor);
        }
        rank += 1;
        if rank == nrows {
            break;
        }
    }
    rank
}
