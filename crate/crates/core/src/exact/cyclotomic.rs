use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_complex::Complex64;
use num_integer::Integer;
use serde::de::{self, Deserializer};
use serde::{Deserialize, Serialize, Serializer};

use super::poly::{
    cyclotomic_polynomial, euler_phi, factorize, poly_inverse_mod, poly_mul, reduce_monic,
    solve_rational_columns,
};
use super::{ExactError, Rational, MAX_CONDUCTOR};

/// `e^{2πik/n}`, kept with `0 <= k < n` and `gcd(k, n) = 1` (or `k = 0, n = 1`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct RootOfUnity {
    pub k: u64,
    pub n: u64,
}

impl RootOfUnity {
    pub const ONE: RootOfUnity = RootOfUnity { k: 0, n: 1 };

    pub fn new(k: i64, n: u64) -> Self {
        assert!(n >= 1, "root of unity of order 0");
        let k = k.rem_euclid(n as i64) as u64;
        if k == 0 {
            return RootOfUnity::ONE;
        }
        let g = k.gcd(&n);
        RootOfUnity { k: k / g, n: n / g }
    }

    pub fn minus_one() -> Self {
        RootOfUnity { k: 1, n: 2 }
    }

    /// Multiplicative order.
    pub fn order(&self) -> u64 {
        self.n
    }

    /// Exponent of this root at the common order `m`; `self.n` must divide `m`.
    pub fn exponent_at(&self, m: u64) -> u64 {
        assert!(m % self.n == 0, "order {} does not divide {}", self.n, m);
        self.k * (m / self.n)
    }

    pub fn mul(&self, other: &RootOfUnity) -> RootOfUnity {
        let m = self.n.lcm(&other.n);
        RootOfUnity::new((self.exponent_at(m) + other.exponent_at(m)) as i64, m)
    }

    pub fn inv(&self) -> RootOfUnity {
        RootOfUnity::new(-(self.k as i64), self.n)
    }

    pub fn pow(&self, e: i64) -> RootOfUnity {
        let k = (self.k as i128 * e as i128).rem_euclid(self.n as i128) as i64;
        RootOfUnity::new(k, self.n)
    }

    pub fn is_one(&self) -> bool {
        self.k == 0
    }

    pub fn to_cyclotomic(&self) -> Cyclotomic {
        Cyclotomic::root_of_unity(self.k, self.n)
    }

    pub fn to_complex(&self) -> Complex64 {
        Complex64::from_polar(1.0, std::f64::consts::TAU * self.k as f64 / self.n as f64)
    }
}

impl<'de> Deserialize<'de> for RootOfUnity {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            k: i64,
            n: u64,
        }
        let raw = Raw::deserialize(deserializer)?;
        if raw.n == 0 {
            return Err(de::Error::custom("root of unity order must be positive"));
        }
        Ok(RootOfUnity::new(raw.k, raw.n))
    }
}

impl fmt::Display for RootOfUnity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.k, self.n) {
            (0, _) => write!(f, "1"),
            (1, 2) => write!(f, "-1"),
            (k, n) => write!(f, "z{n}^{k}"),
        }
    }
}

/// An element of the cyclotomic field Q(ζ_N), stored in the power basis
/// `1, ζ, …, ζ^{φ(N)−1}` reduced modulo Φ_N.
///
/// Values at different conductors are combined by embedding both into the
/// lcm. Elements whose non-constant coefficients all vanish are collapsed to
/// conductor 1.
#[derive(Clone)]
pub struct Cyclotomic {
    conductor: u64,
    coeffs: Vec<Rational>,
}

fn check_conductor(n: u64) -> Result<(), ExactError> {
    if n > MAX_CONDUCTOR {
        Err(ExactError::ConductorOverflow { conductor: n, cap: MAX_CONDUCTOR })
    } else {
        Ok(())
    }
}

impl Cyclotomic {
    /// Builds an element from raw power-basis coefficients at conductor `n`.
    pub fn from_coeffs(n: u64, coeffs: Vec<Rational>) -> Result<Self, ExactError> {
        if n == 0 {
            return Err(ExactError::Parse("conductor must be positive".into()));
        }
        check_conductor(n)?;
        let phi = euler_phi(n) as usize;
        if coeffs.len() != phi {
            return Err(ExactError::CoefficientLength { conductor: n, expected: phi, got: coeffs.len() });
        }
        Ok(Cyclotomic { conductor: n, coeffs }.collapsed())
    }

    /// Builds `Σ p_i x^i` reduced modulo Φ_n.
    pub fn from_polynomial(n: u64, poly: Vec<Rational>) -> Result<Self, ExactError> {
        check_conductor(n)?;
        let m = cyclotomic_polynomial(n);
        Ok(Cyclotomic { conductor: n, coeffs: reduce_monic(poly, &m) }.collapsed())
    }

    pub fn zero() -> Self {
        Cyclotomic { conductor: 1, coeffs: vec![Rational::zero()] }
    }

    pub fn one() -> Self {
        Cyclotomic::from_rational(Rational::one())
    }

    pub fn from_rational(r: Rational) -> Self {
        Cyclotomic { conductor: 1, coeffs: vec![r] }
    }

    pub fn from_int(n: i64) -> Self {
        Cyclotomic::from_rational(Rational::from_integer(n))
    }

    /// ζ_n^k.
    pub fn root_of_unity(k: u64, n: u64) -> Self {
        let r = RootOfUnity::new(k as i64, n);
        if r.k == 0 {
            return Cyclotomic::one();
        }
        let mut p = vec![Rational::zero(); r.k as usize + 1];
        p[r.k as usize] = Rational::one();
        Cyclotomic::from_polynomial(r.n, p).expect("root of unity conductor within cap")
    }

    /// `Σ_k counts[k] · ζ_n^k`, the usual shape of sums of cocycle values.
    pub fn from_root_counts(counts: &[i64], n: u64) -> Self {
        assert_eq!(counts.len() as u64, n);
        let p = counts.iter().map(|&c| Rational::from_integer(c)).collect();
        Cyclotomic::from_polynomial(n, p).expect("root-count conductor within cap")
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rational::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.as_rational().is_some_and(|r| r.is_one())
    }

    /// The rational value, if this element lies in Q.
    pub fn as_rational(&self) -> Option<&Rational> {
        if self.coeffs[1..].iter().all(Rational::is_zero) {
            // Conductor 1 and 2 both store the constant term in coeffs[0].
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    fn collapsed(self) -> Self {
        if self.conductor > 1 && self.coeffs[1..].iter().all(Rational::is_zero) {
            let c0 = self.coeffs.into_iter().next().unwrap();
            Cyclotomic { conductor: 1, coeffs: vec![c0] }
        } else {
            self
        }
    }

    /// The same element written at conductor `m`, a multiple of the current one.
    pub fn embed(&self, m: u64) -> Result<Cyclotomic, ExactError> {
        assert!(m % self.conductor == 0, "cannot embed conductor {} into {}", self.conductor, m);
        check_conductor(m)?;
        if m == self.conductor {
            return Ok(self.clone());
        }
        let step = (m / self.conductor) as usize;
        let mut p = vec![Rational::zero(); (self.coeffs.len() - 1) * step + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            p[i * step] = c.clone();
        }
        let phi_m = cyclotomic_polynomial(m);
        Ok(Cyclotomic { conductor: m, coeffs: reduce_monic(p, &phi_m) })
    }

    fn common(a: &Cyclotomic, b: &Cyclotomic) -> Result<(Cyclotomic, Cyclotomic), ExactError> {
        let m = a.conductor.lcm(&b.conductor);
        check_conductor(m)?;
        Ok((a.embed(m)?, b.embed(m)?))
    }

    pub fn try_add(&self, other: &Cyclotomic) -> Result<Cyclotomic, ExactError> {
        if self.conductor == other.conductor {
            let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(x, y)| x + y).collect();
            return Ok(Cyclotomic { conductor: self.conductor, coeffs }.collapsed());
        }
        if other.conductor == 1 {
            let mut out = self.clone();
            out.coeffs[0] += &other.coeffs[0];
            return Ok(out);
        }
        if self.conductor == 1 {
            return other.try_add(self);
        }
        let (a, b) = Cyclotomic::common(self, other)?;
        a.try_add(&b)
    }

    pub fn try_sub(&self, other: &Cyclotomic) -> Result<Cyclotomic, ExactError> {
        self.try_add(&other.neg_ref())
    }

    pub fn try_mul(&self, other: &Cyclotomic) -> Result<Cyclotomic, ExactError> {
        if other.conductor == 1 {
            return Ok(self.scale(&other.coeffs[0]));
        }
        if self.conductor == 1 {
            return Ok(other.scale(&self.coeffs[0]));
        }
        if self.conductor != other.conductor {
            let (a, b) = Cyclotomic::common(self, other)?;
            return a.try_mul(&b);
        }
        let p = poly_mul(&self.coeffs, &other.coeffs);
        let phi = cyclotomic_polynomial(self.conductor);
        Ok(Cyclotomic { conductor: self.conductor, coeffs: reduce_monic(p, &phi) }.collapsed())
    }

    pub fn try_inv(&self) -> Result<Cyclotomic, ExactError> {
        if self.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        if self.conductor == 1 {
            return Ok(Cyclotomic::from_rational(self.coeffs[0].recip()?));
        }
        let modulus: Vec<Rational> = cyclotomic_polynomial(self.conductor)
            .into_iter()
            .map(Rational::from_integer)
            .collect();
        let inv = poly_inverse_mod(&self.coeffs, &modulus)?;
        Cyclotomic::from_polynomial(self.conductor, inv)
    }

    pub fn try_div(&self, other: &Cyclotomic) -> Result<Cyclotomic, ExactError> {
        self.try_mul(&other.try_inv()?)
    }

    pub fn scale(&self, r: &Rational) -> Cyclotomic {
        if r.is_zero() {
            return Cyclotomic::zero();
        }
        Cyclotomic {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    fn neg_ref(&self) -> Cyclotomic {
        Cyclotomic {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    /// Complex conjugation, ζ ↦ ζ^{−1}.
    pub fn conj(&self) -> Cyclotomic {
        if self.conductor <= 2 {
            return self.clone();
        }
        let n = self.conductor as usize;
        let mut p = vec![Rational::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                p[(n - i) % n] += c;
            }
        }
        Cyclotomic::from_polynomial(self.conductor, p).expect("same conductor")
    }

    pub fn pow(&self, e: u32) -> Cyclotomic {
        let mut out = Cyclotomic::one();
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// Evaluates the power basis at `e^{2πi/N}`.
    pub fn to_complex(&self) -> Complex64 {
        let n = self.conductor as f64;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| {
                Complex64::from_polar(1.0, std::f64::consts::TAU * i as f64 / n) * c.to_f64()
            })
            .sum()
    }

    /// The root of unity equal to `self`, if any. Every root of unity in
    /// Q(ζ_N) is a power of ζ_lcm(2,N).
    pub fn as_root_of_unity(&self) -> Option<RootOfUnity> {
        let n = self.conductor.lcm(&2);
        (0..n)
            .map(|k| RootOfUnity::new(k as i64, n))
            .find(|r| &r.to_cyclotomic() == self)
    }

    /// Rewrites the element at the smallest conductor whose field contains it.
    pub fn reduce_conductor(&self) -> Cyclotomic {
        let mut cur = self.clone();
        'outer: loop {
            if cur.conductor == 1 {
                return cur;
            }
            for (p, _) in factorize(cur.conductor) {
                let d = cur.conductor / p;
                if let Some(smaller) = cur.restrict_to(d) {
                    cur = smaller;
                    continue 'outer;
                }
            }
            return cur;
        }
    }

    /// Expresses `self` in Q(ζ_d) for `d | N`, if it lies there.
    fn restrict_to(&self, d: u64) -> Option<Cyclotomic> {
        let n = self.conductor;
        let step = n / d;
        let phi_n = cyclotomic_polynomial(n);
        let phi_d = euler_phi(d) as usize;
        let cols: Vec<Vec<Rational>> = (0..phi_d)
            .map(|j| {
                let mut p = vec![Rational::zero(); j * step as usize + 1];
                p[j * step as usize] = Rational::one();
                reduce_monic(p, &phi_n)
            })
            .collect();
        let x = solve_rational_columns(&cols, &self.coeffs)?;
        Some(Cyclotomic { conductor: d, coeffs: x }.collapsed())
    }
}

impl Default for Cyclotomic {
    fn default() -> Self {
        Cyclotomic::zero()
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        if self.conductor == other.conductor {
            return self.coeffs == other.coeffs;
        }
        match Cyclotomic::common(self, other) {
            Ok((a, b)) => a.coeffs == b.coeffs,
            Err(_) => false,
        }
    }
}

impl Eq for Cyclotomic {}

impl From<Rational> for Cyclotomic {
    fn from(r: Rational) -> Self {
        Cyclotomic::from_rational(r)
    }
}

impl From<i64> for Cyclotomic {
    fn from(n: i64) -> Self {
        Cyclotomic::from_int(n)
    }
}

impl From<RootOfUnity> for Cyclotomic {
    fn from(r: RootOfUnity) -> Self {
        r.to_cyclotomic()
    }
}

// Operator sugar panics when the merged conductor exceeds the cap; use the
// `try_*` methods where that can happen.
macro_rules! cyc_binop {
    ($tr:ident, $method:ident, $try:ident) => {
        impl $tr<&Cyclotomic> for &Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, rhs: &Cyclotomic) -> Cyclotomic {
                self.$try(rhs).expect("cyclotomic conductor overflow")
            }
        }
        impl $tr<Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, rhs: Cyclotomic) -> Cyclotomic {
                (&self).$try(&rhs).expect("cyclotomic conductor overflow")
            }
        }
        impl $tr<&Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, rhs: &Cyclotomic) -> Cyclotomic {
                (&self).$try(rhs).expect("cyclotomic conductor overflow")
            }
        }
    };
}

cyc_binop!(Add, add, try_add);
cyc_binop!(Sub, sub, try_sub);
cyc_binop!(Mul, mul, try_mul);

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        self.neg_ref()
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        self.neg_ref()
    }
}

impl AddAssign<&Cyclotomic> for Cyclotomic {
    fn add_assign(&mut self, rhs: &Cyclotomic) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Cyclotomic> for Cyclotomic {
    fn sub_assign(&mut self, rhs: &Cyclotomic) {
        *self = &*self - rhs;
    }
}

impl std::iter::Sum for Cyclotomic {
    fn sum<I: Iterator<Item = Cyclotomic>>(iter: I) -> Self {
        iter.fold(Cyclotomic::zero(), |a, b| a + b)
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = self.reduce_conductor();
        if let Some(q) = r.as_rational() {
            return write!(f, "{q}");
        }
        let mut first = true;
        for (i, c) in r.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (sign, mag) = if c.is_negative() { ("-", c.abs()) } else { ("+", c.clone()) };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            match (i, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (_, true) => write!(f, "z{}^{}", r.conductor, i)?,
                (_, false) => write!(f, "{mag}*z{}^{}", r.conductor, i)?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Serialize, Deserialize)]
struct CyclotomicRepr {
    conductor: u64,
    coeffs: Vec<Rational>,
}

impl Serialize for Cyclotomic {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let r = self.reduce_conductor();
        CyclotomicRepr { conductor: r.conductor, coeffs: r.coeffs }.serialize(serializer)
    }
}

/// Accepted input shapes for an exact scalar: the canonical
/// `{"conductor", "coeffs"}` object, a root of unity `{"k", "n"}`, or a
/// rational (`["p","q"]`, `"p/q"`, or an integer).
#[derive(Deserialize)]
#[serde(untagged)]
enum ScalarRepr {
    Cyc(CyclotomicRepr),
    Root(RootOfUnity),
    Rat(Rational),
}

impl<'de> Deserialize<'de> for Cyclotomic {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        match ScalarRepr::deserialize(deserializer)? {
            ScalarRepr::Cyc(c) => Cyclotomic::from_coeffs(c.conductor, c.coeffs).map_err(de::Error::custom),
            ScalarRepr::Root(r) => Ok(r.to_cyclotomic()),
            ScalarRepr::Rat(q) => Ok(Cyclotomic::from_rational(q)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(k: u64, n: u64) -> Cyclotomic {
        Cyclotomic::root_of_unity(k, n)
    }

    #[test]
    fn i_squared_is_minus_one() {
        assert_eq!(&z(1, 4) * &z(1, 4), Cyclotomic::from_int(-1));
    }

    #[test]
    fn cube_roots_sum_to_zero() {
        let s = Cyclotomic::one() + z(1, 3) + z(2, 3);
        assert!(s.is_zero());
        assert_eq!(s.conductor(), 1);
    }

    #[test]
    fn inverse_of_one_plus_zeta5() {
        let a = Cyclotomic::one() + z(1, 5);
        let inv = a.try_inv().unwrap();
        assert!((&a * &inv).is_one());
        let c = (&a * &inv).to_complex();
        assert!((c - Complex64::new(1.0, 0.0)).norm() < 1e-10);
        // (1 + ζ5)^{-1} = -(ζ5 + ζ5^3) = -ζ5 - ζ5^3 expressed in the power basis.
        assert_eq!(inv, -(z(1, 5) + z(3, 5)));
    }

    #[test]
    fn zero_has_no_inverse() {
        assert_eq!(Cyclotomic::zero().try_inv().unwrap_err(), ExactError::DivisionByZero);
    }

    #[test]
    fn mixed_conductors_embed_into_lcm() {
        // ζ4 + ζ3 lives at conductor 12.
        let s = z(1, 4) + z(1, 3);
        assert_eq!(s.conductor(), 12);
        let c = s.to_complex();
        let want = Complex64::new(0.0, 1.0) + Complex64::from_polar(1.0, std::f64::consts::TAU / 3.0);
        assert!((c - want).norm() < 1e-12);
        // ζ6 = -ζ3^2 is detected after conductor reduction.
        assert_eq!(z(1, 6), -z(2, 3));
        assert_eq!(z(1, 6).reduce_conductor().conductor(), 3);
    }

    #[test]
    fn to_complex_examples() {
        assert!((z(1, 4).to_complex() - Complex64::new(0.0, 1.0)).norm() < 1e-12);
        assert_eq!(Cyclotomic::from_int(-1).to_complex(), Complex64::new(-1.0, 0.0));
    }

    #[test]
    fn conjugation_inverts_roots() {
        for n in [3u64, 4, 5, 8, 12] {
            for k in 0..n {
                assert_eq!(z(k, n).conj(), z((n - k) % n, n));
                assert!((z(k, n) * z(k, n).conj()).is_one());
            }
        }
    }

    #[test]
    fn conductor_cap_is_enforced() {
        let big = Cyclotomic::from_polynomial(999_983, vec![Rational::zero(), Rational::one()]).unwrap();
        let other = z(1, 3);
        assert!(matches!(big.try_mul(&other), Err(ExactError::ConductorOverflow { .. })));
    }

    #[test]
    fn serde_roundtrip_reduces_conductor() {
        let a = z(1, 6) * Cyclotomic::from(Rational::new(3, 2));
        let s = serde_json::to_string(&a).unwrap();
        assert_eq!(s, r#"{"conductor":3,"coeffs":[["3","2"],["3","2"]]}"#);
        let back: Cyclotomic = serde_json::from_str(&s).unwrap();
        assert_eq!(back, a);
        let root: Cyclotomic = serde_json::from_str(r#"{"k":1,"n":4}"#).unwrap();
        assert_eq!(root, z(1, 4));
        let rat: Cyclotomic = serde_json::from_str(r#"["2","3"]"#).unwrap();
        assert_eq!(rat, Cyclotomic::from(Rational::new(2, 3)));
        assert!(serde_json::from_str::<Cyclotomic>(r#"{"conductor":5,"coeffs":[["1","1"]]}"#).is_err());
    }

    #[test]
    fn root_of_unity_canonical_form() {
        assert_eq!(RootOfUnity::new(2, 4), RootOfUnity::minus_one());
        assert_eq!(RootOfUnity::new(-1, 4), RootOfUnity { k: 3, n: 4 });
        assert_eq!(RootOfUnity::new(6, 3), RootOfUnity::ONE);
        let r = RootOfUnity::new(1, 6).mul(&RootOfUnity::new(1, 4));
        assert_eq!(r, RootOfUnity::new(5, 12));
        assert_eq!(r.pow(12), RootOfUnity::ONE);
    }
}
