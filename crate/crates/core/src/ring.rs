//! Exact arithmetic in `Z[ζ, 1/2]` with `ζ = e^{iπ/4}`.
//!
//! Every entry of a Clifford matrix over H, P and CNOT lives in this ring.
//! Elements are stored as `(a0 + a1 ζ + a2 ζ² + a3 ζ³) / 2^k` using the
//! single reduction `ζ⁴ = -1`, always in lowest terms.
//!
//! Coefficients take an `i64` fast path and overflow into `BigInt`; the
//! representation is shrunk back to `i64` whenever it fits, so structural
//! equality is value equality.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Error;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Coeffs {
    Small([i64; 4]),
    Big(Box<[BigInt; 4]>),
}

/// Element of `Z[ζ8, 1/2]` in normal form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cyclo8 {
    coeffs: Coeffs,
    k: u32,
}

fn to_big(c: &[i64; 4]) -> [BigInt; 4] {
    [
        BigInt::from(c[0]),
        BigInt::from(c[1]),
        BigInt::from(c[2]),
        BigInt::from(c[3]),
    ]
}

impl Coeffs {
    fn big(&self) -> [BigInt; 4] {
        match self {
            Coeffs::Small(c) => to_big(c),
            Coeffs::Big(b) => (**b).clone(),
        }
    }

    fn shrink(big: [BigInt; 4]) -> Coeffs {
        let small: Option<Vec<i64>> = big.iter().map(|b| b.to_i64()).collect();
        match small {
            Some(v) => Coeffs::Small([v[0], v[1], v[2], v[3]]),
            None => Coeffs::Big(Box::new(big)),
        }
    }
}

impl Cyclo8 {
    pub fn zero() -> Self {
        Self::from_small([0; 4], 0)
    }

    pub fn one() -> Self {
        Self::from_small([1, 0, 0, 0], 0)
    }

    /// `ζ^m` for any integer `m`.
    pub fn zeta_pow(m: i64) -> Self {
        Self::one().mul_zeta_pow(m)
    }

    pub fn i() -> Self {
        Self::from_small([0, 0, 1, 0], 0)
    }

    /// `√2 = ζ - ζ³`.
    pub fn sqrt2() -> Self {
        Self::from_small([0, 1, 0, -1], 0)
    }

    /// `1/√2 = (ζ - ζ³)/2`.
    pub fn inv_sqrt2() -> Self {
        Self::from_small([0, 1, 0, -1], 1)
    }

    pub fn from_int(v: i64) -> Self {
        Self::from_small([v, 0, 0, 0], 0)
    }

    /// Builds `(a0 + a1ζ + a2ζ² + a3ζ³)/2^k`, reducing to normal form.
    pub fn from_small(coeffs: [i64; 4], k: u32) -> Self {
        let mut x = Cyclo8 {
            coeffs: Coeffs::Small(coeffs),
            k,
        };
        x.normalize();
        x
    }

    pub fn from_big(coeffs: [BigInt; 4], k: u32) -> Self {
        let mut x = Cyclo8 {
            coeffs: Coeffs::shrink(coeffs),
            k,
        };
        x.normalize();
        x
    }

    pub fn denominator_exp(&self) -> u32 {
        self.k
    }

    pub fn coeffs(&self) -> [BigInt; 4] {
        self.coeffs.big()
    }

    pub fn is_zero(&self) -> bool {
        match &self.coeffs {
            Coeffs::Small(c) => c.iter().all(|&a| a == 0),
            Coeffs::Big(b) => b.iter().all(|a| a.is_zero()),
        }
    }

    fn normalize(&mut self) {
        if self.is_zero() {
            self.coeffs = Coeffs::Small([0; 4]);
            self.k = 0;
            return;
        }
        match &mut self.coeffs {
            Coeffs::Small(c) => {
                if self.k == 0 {
                    return;
                }
                let tz = c
                    .iter()
                    .filter(|&&a| a != 0)
                    .map(|a| a.trailing_zeros())
                    .min()
                    .unwrap_or(0);
                let shift = tz.min(self.k);
                if shift > 0 {
                    for a in c.iter_mut() {
                        *a >>= shift;
                    }
                    self.k -= shift;
                }
            }
            Coeffs::Big(b) => {
                let tz = b
                    .iter()
                    .filter(|a| !a.is_zero())
                    .filter_map(|a| a.trailing_zeros())
                    .min()
                    .unwrap_or(0);
                let shift = (tz.min(self.k as u64)) as u32;
                let mut big = (**b).clone();
                if shift > 0 {
                    for a in big.iter_mut() {
                        *a = &*a >> shift;
                    }
                    self.k -= shift;
                }
                self.coeffs = Coeffs::shrink(big);
            }
        }
    }

    /// Multiplication by `ζ^m`: a signed rotation of the coefficients.
    pub fn mul_zeta_pow(&self, m: i64) -> Self {
        let m = m.rem_euclid(8) as usize;
        let rotate = |c: [BigInt; 4]| -> [BigInt; 4] {
            let mut out = c;
            for _ in 0..m {
                let [a0, a1, a2, a3] = out;
                out = [-a3, a0, a1, a2];
            }
            out
        };
        match &self.coeffs {
            Coeffs::Small(c) if c.iter().all(|&a| a != i64::MIN) => {
                let mut out = *c;
                for _ in 0..m {
                    out = [-out[3], out[0], out[1], out[2]];
                }
                Cyclo8 {
                    coeffs: Coeffs::Small(out),
                    k: self.k,
                }
            }
            _ => Cyclo8 {
                coeffs: Coeffs::shrink(rotate(self.coeffs.big())),
                k: self.k,
            },
        }
    }

    /// Complex conjugate, `ζ ↦ ζ⁻¹ = -ζ³`.
    pub fn conj(&self) -> Self {
        match &self.coeffs {
            Coeffs::Small(c) if c.iter().all(|&a| a != i64::MIN) => Cyclo8 {
                coeffs: Coeffs::Small([c[0], -c[3], -c[2], -c[1]]),
                k: self.k,
            },
            _ => {
                let [a0, a1, a2, a3] = self.coeffs.big();
                Cyclo8::from_big([a0, -a3, -a2, -a1], self.k)
            }
        }
    }

    pub fn to_complex(&self) -> Complex64 {
        let [a0, a1, a2, a3] = match &self.coeffs {
            Coeffs::Small(c) => [c[0] as f64, c[1] as f64, c[2] as f64, c[3] as f64],
            Coeffs::Big(b) => {
                let f = |x: &BigInt| x.to_f64().unwrap_or(f64::NAN);
                [f(&b[0]), f(&b[1]), f(&b[2]), f(&b[3])]
            }
        };
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let scale = 0.5f64.powi(self.k as i32);
        Complex64::new(
            (a0 + (a1 - a3) * h) * scale,
            (a2 + (a1 + a3) * h) * scale,
        )
    }

    fn add_impl(&self, other: &Self) -> Self {
        let k = self.k.max(other.k);
        if let (Coeffs::Small(a), Coeffs::Small(b)) = (&self.coeffs, &other.coeffs) {
            let (sa, sb) = (k - self.k, k - other.k);
            if sa < 63 && sb < 63 {
                let mut out = [0i64; 4];
                let mut ok = true;
                for i in 0..4 {
                    let x = a[i].checked_mul(1i64 << sa);
                    let y = b[i].checked_mul(1i64 << sb);
                    match (x, y) {
                        (Some(x), Some(y)) => match x.checked_add(y) {
                            Some(s) => out[i] = s,
                            None => ok = false,
                        },
                        _ => ok = false,
                    }
                }
                if ok {
                    return Cyclo8::from_small(out, k);
                }
            }
        }
        let a = self.coeffs.big();
        let b = other.coeffs.big();
        let (sa, sb) = (k - self.k, k - other.k);
        let out = [
            (&a[0] << sa) + (&b[0] << sb),
            (&a[1] << sa) + (&b[1] << sb),
            (&a[2] << sa) + (&b[2] << sb),
            (&a[3] << sa) + (&b[3] << sb),
        ];
        Cyclo8::from_big(out, k)
    }

    fn mul_impl(&self, other: &Self) -> Self {
        let k = self.k + other.k;
        if let (Coeffs::Small(a), Coeffs::Small(b)) = (&self.coeffs, &other.coeffs) {
            let mut acc = [0i128; 4];
            for i in 0..4 {
                for j in 0..4 {
                    let p = a[i] as i128 * b[j] as i128;
                    let d = i + j;
                    if d < 4 {
                        acc[d] += p;
                    } else {
                        acc[d - 4] -= p;
                    }
                }
            }
            if acc.iter().all(|&v| i64::try_from(v).is_ok()) {
                return Cyclo8::from_small(
                    [acc[0] as i64, acc[1] as i64, acc[2] as i64, acc[3] as i64],
                    k,
                );
            }
            let out = [
                BigInt::from(acc[0]),
                BigInt::from(acc[1]),
                BigInt::from(acc[2]),
                BigInt::from(acc[3]),
            ];
            return Cyclo8::from_big(out, k);
        }
        let a = self.coeffs.big();
        let b = other.coeffs.big();
        let mut acc: [BigInt; 4] = Default::default();
        for i in 0..4 {
            for j in 0..4 {
                let p = &a[i] * &b[j];
                let d = i + j;
                if d < 4 {
                    acc[d] += p;
                } else {
                    acc[d - 4] -= p;
                }
            }
        }
        Cyclo8::from_big(acc, k)
    }

    /// Sort key `(k, a0, a1, a2, a3)` used for phase canonicalization.
    pub fn cmp_key(&self, other: &Self) -> Ordering {
        self.k.cmp(&other.k).then_with(|| match (&self.coeffs, &other.coeffs) {
            (Coeffs::Small(a), Coeffs::Small(b)) => a.cmp(b),
            _ => self.coeffs.big().cmp(&other.coeffs.big()),
        })
    }

    /// True when the value is real (equal to its own conjugate).
    pub fn is_real(&self) -> bool {
        *self == self.conj()
    }
}

impl Ord for Cyclo8 {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cmp_key(other)
    }
}

impl PartialOrd for Cyclo8 {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Default for Cyclo8 {
    fn default() -> Self {
        Self::zero()
    }
}

impl Add for &Cyclo8 {
    type Output = Cyclo8;
    fn add(self, rhs: &Cyclo8) -> Cyclo8 {
        self.add_impl(rhs)
    }
}

impl Add for Cyclo8 {
    type Output = Cyclo8;
    fn add(self, rhs: Cyclo8) -> Cyclo8 {
        self.add_impl(&rhs)
    }
}

impl Mul for &Cyclo8 {
    type Output = Cyclo8;
    fn mul(self, rhs: &Cyclo8) -> Cyclo8 {
        self.mul_impl(rhs)
    }
}

impl Mul for Cyclo8 {
    type Output = Cyclo8;
    fn mul(self, rhs: Cyclo8) -> Cyclo8 {
        self.mul_impl(&rhs)
    }
}

impl Neg for &Cyclo8 {
    type Output = Cyclo8;
    fn neg(self) -> Cyclo8 {
        self.mul_zeta_pow(4)
    }
}

impl Neg for Cyclo8 {
    type Output = Cyclo8;
    fn neg(self) -> Cyclo8 {
        self.mul_zeta_pow(4)
    }
}

impl Sub for &Cyclo8 {
    type Output = Cyclo8;
    fn sub(self, rhs: &Cyclo8) -> Cyclo8 {
        self.add_impl(&-rhs)
    }
}

impl Sub for Cyclo8 {
    type Output = Cyclo8;
    fn sub(self, rhs: Cyclo8) -> Cyclo8 {
        self.add_impl(&-rhs)
    }
}

impl Zero for Cyclo8 {
    fn zero() -> Self {
        Cyclo8::zero()
    }
    fn is_zero(&self) -> bool {
        Cyclo8::is_zero(self)
    }
}

impl One for Cyclo8 {
    fn one() -> Self {
        Cyclo8::one()
    }
}

/// Serialized as `(a0,a1,a2,a3,k)`.
impl fmt::Display for Cyclo8 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a0, a1, a2, a3] = self.coeffs.big();
        write!(f, "({a0},{a1},{a2},{a3},{})", self.k)
    }
}

impl FromStr for Cyclo8 {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let bad = || Error::Parse(format!("invalid ring element `{s}`"));
        let inner = s
            .trim()
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(bad)?;
        let parts: Vec<&str> = inner.split(',').map(str::trim).collect();
        if parts.len() != 5 {
            return Err(bad());
        }
        let mut coeffs: [BigInt; 4] = Default::default();
        for (c, p) in coeffs.iter_mut().zip(&parts[..4]) {
            *c = p.parse().map_err(|_| bad())?;
        }
        let k: u32 = parts[4].parse().map_err(|_| bad())?;
        if k > 0 && coeffs.iter().all(|c| !c.is_odd_value()) {
            return Err(Error::Parse(format!("ring element `{s}` is not reduced")));
        }
        Ok(Cyclo8::from_big(coeffs, k))
    }
}

trait OddValue {
    fn is_odd_value(&self) -> bool;
}

impl OddValue for BigInt {
    fn is_odd_value(&self) -> bool {
        (self.abs() % 2u32) == BigInt::one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_is_additive_identity() {
        let x = Cyclo8::from_small([3, -1, 4, 1], 2);
        assert_eq!(&Cyclo8::zero() + &x, x);
    }

    #[test]
    fn halves_of_root_two_sum_to_root_two() {
        let h = Cyclo8::inv_sqrt2();
        let s = &h + &h;
        assert_eq!(s, Cyclo8::from_small([0, 1, 0, -1], 0));
        assert!((s.to_complex().re - 2f64.sqrt()).abs() < 1e-12);
        assert!(s.to_complex().im.abs() < 1e-12);
    }

    #[test]
    fn coefficientwise_addition() {
        let z = Cyclo8::zeta_pow(1);
        let z3 = Cyclo8::zeta_pow(3);
        assert_eq!(&z3 + &z, Cyclo8::from_small([0, 1, 0, 1], 0));
    }

    #[test]
    fn products() {
        assert_eq!(
            &Cyclo8::zeta_pow(1) * &Cyclo8::zeta_pow(3),
            Cyclo8::from_int(-1)
        );
        let half = &Cyclo8::inv_sqrt2() * &Cyclo8::inv_sqrt2();
        assert_eq!(half, Cyclo8::from_small([1, 0, 0, 0], 1));
        let w = Cyclo8::zeta_pow(1);
        let mut acc = Cyclo8::one();
        for _ in 0..8 {
            acc = &acc * &w;
        }
        assert_eq!(acc, Cyclo8::one());
    }

    #[test]
    fn conjugation() {
        let r = Cyclo8::from_small([5, 0, 0, 0], 3);
        assert_eq!(r.conj(), r);
        assert_eq!(Cyclo8::zeta_pow(1).conj(), Cyclo8::from_small([0, 0, 0, -1], 0));
        assert_eq!(Cyclo8::i().conj(), Cyclo8::from_small([0, 0, -1, 0], 0));
    }

    #[test]
    fn numeric_evaluation() {
        let one = Cyclo8::one().to_complex();
        assert_eq!((one.re, one.im), (1.0, 0.0));
        let z = Cyclo8::zeta_pow(1).to_complex();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!((z.re - h).abs() < 1e-15 && (z.im - h).abs() < 1e-15);
        let x = Cyclo8::from_small([0, 1, 0, -1], 1).to_complex();
        assert!((x.re - h).abs() < 1e-15 && x.im.abs() < 1e-15);
    }

    #[test]
    fn normal_form_cancels_twos() {
        let x = Cyclo8::from_small([4, 8, -12, 0], 3);
        assert_eq!(x, Cyclo8::from_small([1, 2, -3, 0], 1));
        assert_eq!(x.denominator_exp(), 1);
        assert_eq!(Cyclo8::from_small([0, 0, 0, 0], 5).denominator_exp(), 0);
    }

    #[test]
    fn overflow_falls_back_to_bigint() {
        let big = Cyclo8::from_small([i64::MAX, 1, 0, 0], 0);
        let sq = &big * &big;
        let back = Cyclo8::from_big(sq.coeffs(), 0);
        assert_eq!(sq, back);
        let sum = &big + &big;
        assert_eq!(sum.coeffs()[0], BigInt::from(i64::MAX) * 2);
        let diff = &sum - &big;
        assert_eq!(diff, big);
    }

    #[test]
    fn text_round_trip() {
        let x = Cyclo8::from_small([0, 1, 0, -1], 1);
        assert_eq!(x.to_string(), "(0,1,0,-1,1)");
        assert_eq!("(0,1,0,-1,1)".parse::<Cyclo8>().unwrap(), x);
        assert!("(2,0,0,0,1)".parse::<Cyclo8>().is_err());
        assert!("(1,2,3)".parse::<Cyclo8>().is_err());
    }
}
