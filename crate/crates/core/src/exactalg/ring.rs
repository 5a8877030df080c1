use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Base ring of every matrix and group: the integers or a prime field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RingTag {
    Integers,
    PrimeField(u64),
}

impl RingTag {
    /// Builds `F_p`, rejecting non-primes.
    pub fn prime_field(p: u64) -> Option<RingTag> {
        if is_prime(p) {
            Some(RingTag::PrimeField(p))
        } else {
            None
        }
    }

    pub fn is_field(&self) -> bool {
        matches!(self, RingTag::PrimeField(_))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            RingTag::Integers => 0,
            RingTag::PrimeField(p) => *p,
        }
    }

    pub fn reduce(&self, x: BigInt) -> BigInt {
        match self {
            RingTag::Integers => x,
            RingTag::PrimeField(p) => x.mod_floor(&BigInt::from(*p)),
        }
    }

    pub fn reduce_ref(&self, x: &BigInt) -> BigInt {
        self.reduce(x.clone())
    }

    /// Pivot size: absolute value over Z, 0/1 over a field.
    pub fn size(&self, x: &BigInt) -> BigInt {
        match self {
            RingTag::Integers => x.abs(),
            RingTag::PrimeField(_) => {
                if x.is_zero() {
                    BigInt::zero()
                } else {
                    BigInt::one()
                }
            }
        }
    }

    /// Quotient with small remainder. Over Z the remainder satisfies |r| <= |b|/2.
    pub fn div_rem(&self, a: &BigInt, b: &BigInt) -> (BigInt, BigInt) {
        match self {
            RingTag::Integers => {
                let (mut q, mut r) = a.div_mod_floor(b);
                let twice: BigInt = &r * 2;
                // the floor remainder carries the sign of b
                if twice.abs() > b.abs() {
                    q += 1;
                    r -= b;
                }
                (q, r)
            }
            RingTag::PrimeField(_) => {
                let inv = self.inverse(b).expect("division by zero in prime field");
                (self.reduce(a * inv), BigInt::zero())
            }
        }
    }

    pub fn divides(&self, a: &BigInt, b: &BigInt) -> bool {
        if a.is_zero() {
            return b.is_zero();
        }
        match self {
            RingTag::Integers => (b % a).is_zero(),
            RingTag::PrimeField(_) => true,
        }
    }

    pub fn is_unit(&self, x: &BigInt) -> bool {
        match self {
            RingTag::Integers => x.abs().is_one(),
            RingTag::PrimeField(_) => !self.reduce_ref(x).is_zero(),
        }
    }

    pub fn inverse(&self, x: &BigInt) -> Option<BigInt> {
        match self {
            RingTag::Integers => {
                if x.is_one() {
                    Some(BigInt::one())
                } else if (-x).is_one() {
                    Some(-BigInt::one())
                } else {
                    None
                }
            }
            RingTag::PrimeField(p) => {
                let p = BigInt::from(*p);
                let x = x.mod_floor(&p);
                if x.is_zero() {
                    return None;
                }
                let e = x.extended_gcd(&p);
                Some(e.x.mod_floor(&p))
            }
        }
    }

    /// Unit `u` such that `u * x` is the canonical associate (positive over Z, 1 over a field).
    pub fn normalizing_unit(&self, x: &BigInt) -> BigInt {
        match self {
            RingTag::Integers => {
                if x.is_negative() {
                    -BigInt::one()
                } else {
                    BigInt::one()
                }
            }
            RingTag::PrimeField(_) => self.inverse(x).unwrap_or_else(BigInt::one),
        }
    }
}

impl fmt::Display for RingTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingTag::Integers => write!(f, "Z"),
            RingTag::PrimeField(p) => write!(f, "F{p}"),
        }
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounded_division() {
        let z = RingTag::Integers;
        let (q, r) = z.div_rem(&BigInt::from(7), &BigInt::from(4));
        assert_eq!((q, r), (BigInt::from(2), BigInt::from(-1)));
        let (q, r) = z.div_rem(&BigInt::from(-7), &BigInt::from(3));
        assert_eq!(&q * 3 + &r, BigInt::from(-7));
        assert!(r.abs() <= BigInt::from(1));
        for (a, b) in [(6, -5), (-6, -5), (9, -4), (-9, 4), (3, -6)] {
            let (a, b) = (BigInt::from(a), BigInt::from(b));
            let (q, r) = z.div_rem(&a, &b);
            assert_eq!(&q * &b + &r, a);
            assert!(&r.abs() * 2 <= b.abs());
        }
    }

    #[test]
    fn field_inverse() {
        let f = RingTag::prime_field(7).unwrap();
        assert_eq!(f.inverse(&BigInt::from(3)), Some(BigInt::from(5)));
        assert_eq!(f.inverse(&BigInt::from(14)), None);
        assert!(RingTag::prime_field(9).is_none());
    }
}
