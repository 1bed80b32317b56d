//! Laurent polynomials in q, the Kauffman bracket and the Jones polynomial.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::links::{resolve, Bitstring, Diagram};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, i64>,
}

impl LaurentPoly {
    pub fn zero() -> LaurentPoly {
        LaurentPoly::default()
    }

    pub fn one() -> LaurentPoly {
        LaurentPoly::monomial(1, 0)
    }

    pub fn monomial(coeff: i64, exp: i64) -> LaurentPoly {
        let mut p = LaurentPoly::zero();
        p.add_term(exp, coeff);
        p
    }

    /// q + q⁻¹
    pub fn circle() -> LaurentPoly {
        LaurentPoly::monomial(1, 1) + LaurentPoly::monomial(1, -1)
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i64, i64)>) -> LaurentPoly {
        let mut p = LaurentPoly::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn add_term(&mut self, exp: i64, coeff: i64) {
        if coeff == 0 {
            return;
        }
        let e = self.terms.entry(exp).or_insert(0);
        *e = e.checked_add(coeff).expect("coefficient overflow");
        if *e == 0 {
            self.terms.remove(&exp);
        }
    }

    pub fn coeff(&self, exp: i64) -> i64 {
        self.terms.get(&exp).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// (exponent, coefficient) pairs, ascending exponent.
    pub fn terms(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.terms.iter().map(|(&e, &c)| (e, c))
    }

    pub fn shift(&self, k: i64) -> LaurentPoly {
        LaurentPoly { terms: self.terms.iter().map(|(&e, &c)| (e + k, c)).collect() }
    }

    pub fn pow(&self, n: usize) -> LaurentPoly {
        let mut out = LaurentPoly::one();
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    pub fn scale(&self, k: i64) -> LaurentPoly {
        let mut p = LaurentPoly::zero();
        for (e, c) in self.terms() {
            p.add_term(e, c.checked_mul(k).expect("coefficient overflow"));
        }
        p
    }

    /// Exact division; `None` when the divisor does not divide.
    pub fn div_exact(&self, divisor: &LaurentPoly) -> Option<LaurentPoly> {
        let (&dlo, &dc) = divisor.terms.iter().next()?;
        let dhi = *divisor.terms.keys().next_back()?;
        let Some(&shi) = self.terms.keys().next_back() else {
            return Some(LaurentPoly::zero());
        };
        let mut rem = self.clone();
        let mut quot = LaurentPoly::zero();
        while let Some((&lo, &c)) = rem.terms.iter().next() {
            if lo - dlo > shi - dhi || c % dc != 0 {
                return None;
            }
            let m = LaurentPoly::monomial(c / dc, lo - dlo);
            rem = &rem - &(&m * divisor);
            quot = &quot + &m;
        }
        Some(quot)
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, o: &LaurentPoly) -> LaurentPoly {
        let mut p = self.clone();
        for (e, c) in o.terms() {
            p.add_term(e, c);
        }
        p
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, o: LaurentPoly) -> LaurentPoly {
        &self + &o
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, o: &LaurentPoly) -> LaurentPoly {
        self + &(-o)
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, o: LaurentPoly) -> LaurentPoly {
        &self - &o
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(-1)
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, o: &LaurentPoly) -> LaurentPoly {
        let mut p = LaurentPoly::zero();
        for (e1, c1) in self.terms() {
            for (e2, c2) in o.terms() {
                p.add_term(e1 + e2, c1.checked_mul(c2).expect("coefficient overflow"));
            }
        }
        p
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, o: LaurentPoly) -> LaurentPoly {
        &self * &o
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms.iter().rev().map(|(&e, &c)| (e, c)).enumerate() {
            let mag = c.unsigned_abs();
            if k == 0 {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c < 0 { '-' } else { '+' })?;
            }
            match (e, mag) {
                (0, m) => write!(f, "{m}")?,
                (1, 1) => write!(f, "q")?,
                (1, m) => write!(f, "{m}q")?,
                (e, 1) => write!(f, "q^{e}")?,
                (e, m) => write!(f, "{m}q^{e}")?,
            }
        }
        Ok(())
    }
}

/// Σ_u (−q)^{|u|} (q+q⁻¹)^{|D_u|}, grouped by (|u|, |D_u|) before expanding.
pub fn kauffman_bracket(d: &Diagram) -> LaurentPoly {
    let n = d.n();
    let mut counts: BTreeMap<(usize, usize), i64> = BTreeMap::new();
    for bits in 0..(1u64 << n) {
        let u = Bitstring::new(bits, n);
        let k = resolve(d, &u).num_circles;
        *counts.entry((u.weight(), k)).or_insert(0) += 1;
    }
    let mut out = LaurentPoly::zero();
    for ((w, k), m) in counts {
        let sign = if w % 2 == 0 { 1 } else { -1 };
        let term = &LaurentPoly::monomial(sign * m, w as i64) * &LaurentPoly::circle().pow(k);
        out = &out + &term;
    }
    out
}

/// Ĵ = (−1)^{n₋} q^{n₊−2n₋} ⟨D⟩
pub fn unnormalized_jones(d: &Diagram) -> LaurentPoly {
    let np = d.n_plus() as i64;
    let nm = d.n_minus() as i64;
    let sign = if nm % 2 == 0 { 1 } else { -1 };
    kauffman_bracket(d).shift(np - 2 * nm).scale(sign)
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("Ĵ is not divisible by q + q⁻¹")]
pub struct NotDivisible;

/// Ĵ / (q + q⁻¹), so that the unknot has value 1.
pub fn normalized_jones(d: &Diagram) -> Result<LaurentPoly, NotDivisible> {
    unnormalized_jones(d).div_exact(&LaurentPoly::circle()).ok_or(NotDivisible)
}
