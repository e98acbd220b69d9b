//! Exact coefficient tables: Dirichlet coefficients a_n of L(s,E) and the
//! Möbius coefficients μ_E(n) of 1/L(s+1/2,E).
//!
//! μ_E(n) is kept exactly as c/√s with integer c and squarefree s, so
//! multiplicativity and the case table can be tested without rounding.

use crate::curve::{CurveError, CurveSpec};

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum CoeffError {
    #[error("n_max must be at least 1")]
    EmptyRange,
    #[error(transparent)]
    Curve(#[from] CurveError),
}

/// μ_E(n) in exact form: value = numer / √sqfree.
///
/// `numer = 0` encodes μ_E(n) = 0 (with sqfree = 1). Otherwise `sqfree` is
/// the product of the primes appearing to the first power in n, and
/// `numer` the product of the corresponding -a_p.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MoebiusCoeff {
    pub numer: i64,
    pub sqfree: u64,
}

impl MoebiusCoeff {
    pub const ZERO: MoebiusCoeff = MoebiusCoeff { numer: 0, sqfree: 1 };
    pub const ONE: MoebiusCoeff = MoebiusCoeff { numer: 1, sqfree: 1 };

    pub fn is_zero(&self) -> bool {
        self.numer == 0
    }

    pub fn value(&self) -> f64 {
        self.numer as f64 / (self.sqfree as f64).sqrt()
    }

    fn mul(self, other: MoebiusCoeff) -> MoebiusCoeff {
        if self.is_zero() || other.is_zero() {
            return MoebiusCoeff::ZERO;
        }
        MoebiusCoeff { numer: self.numer * other.numer, sqfree: self.sqfree * other.sqfree }
    }
}

/// How each prime contributes to the coefficient recurrences.
///
/// * `euler_bad`: p | N — Euler factor (1 - a_p p^{-s}), so a_{p^k} = a_p^k.
/// * `mu_square_zero`: p | Δ — the μ_E case table sends p² to zero.
///
/// These conditions differ only for non-minimal models; the discriminant
/// rule is used for μ and the conductor rule for the Euler factors.
pub trait ApSource {
    fn ap(&self, p: u64) -> Result<i64, CurveError>;
    fn euler_bad(&self, p: u64) -> bool;
    fn mu_square_zero(&self, p: u64) -> bool;
}

impl ApSource for CurveSpec {
    fn ap(&self, p: u64) -> Result<i64, CurveError> {
        CurveSpec::ap(self, p)
    }
    fn euler_bad(&self, p: u64) -> bool {
        self.conductor % p == 0
    }
    fn mu_square_zero(&self, p: u64) -> bool {
        self.divides_discriminant(p)
    }
}

/// Exact a_n and μ_E(n) for n = 1..=n_max.
#[derive(Debug, Clone)]
pub struct CoefficientTable {
    pub n_max: usize,
    /// a[n] valid for 1 ≤ n ≤ n_max; a[0] is unused.
    a: Vec<i64>,
    mu: Vec<MoebiusCoeff>,
}

impl CoefficientTable {
    pub fn build(source: &impl ApSource, n_max: usize) -> Result<Self, CoeffError> {
        if n_max == 0 {
            return Err(CoeffError::EmptyRange);
        }
        // smallest-prime-factor sieve for the multiplicative fill
        let mut spf = vec![0u32; n_max + 1];
        for i in 2..=n_max {
            if spf[i] == 0 {
                let mut j = i;
                while j <= n_max {
                    if spf[j] == 0 {
                        spf[j] = i as u32;
                    }
                    j += i;
                }
            }
        }

        let mut a = vec![0i64; n_max + 1];
        let mut mu = vec![MoebiusCoeff::ZERO; n_max + 1];
        a[1] = 1;
        mu[1] = MoebiusCoeff::ONE;

        // prime powers first
        for p in 2..=n_max {
            if spf[p] != p as u32 {
                continue;
            }
            let pu = p as u64;
            let ap = source.ap(pu)?;
            let bad = source.euler_bad(pu);
            // a_{p^k}
            let mut pk = p;
            let mut prev2 = 1i64; // a_{p^{k-1}}
            let mut prev = ap; // a_{p^k}
            a[pk] = ap;
            loop {
                match pk.checked_mul(p) {
                    Some(next) if next <= n_max => {
                        let cur = if bad {
                            prev * ap
                        } else {
                            ap * prev - p as i64 * prev2
                        };
                        a[next] = cur;
                        prev2 = prev;
                        prev = cur;
                        pk = next;
                    }
                    _ => break,
                }
            }
            // μ_E(p^k): -a_p/√p at k = 1; at k = 2 either 1 (p ∤ Δ) or 0;
            // zero from k = 3 on.
            mu[p] = MoebiusCoeff { numer: -ap, sqfree: pu };
            if p * p <= n_max && !source.mu_square_zero(pu) {
                mu[p * p] = MoebiusCoeff::ONE;
            }
        }

        // multiplicative fill over the smallest-prime-factor decomposition
        for n in 2..=n_max {
            let p = spf[n] as usize;
            let mut m = n;
            let mut pk = 1;
            while m % p == 0 {
                m /= p;
                pk *= p;
            }
            if m != 1 {
                a[n] = a[pk] * a[m];
                mu[n] = mu[pk].mul(mu[m]);
            }
        }

        Ok(CoefficientTable { n_max, a, mu })
    }

    pub fn a(&self, n: usize) -> i64 {
        self.a[n]
    }

    pub fn mu(&self, n: usize) -> MoebiusCoeff {
        self.mu[n]
    }

    pub fn a_slice(&self) -> &[i64] {
        &self.a[1..]
    }

    /// (n, μ_E(n)) for the nonzero entries, ascending in n.
    pub fn mu_support(&self) -> impl Iterator<Item = (usize, MoebiusCoeff)> + '_ {
        self.mu
            .iter()
            .enumerate()
            .skip(1)
            .filter(|(_, m)| !m.is_zero())
            .map(|(n, &m)| (n, m))
    }

    /// Σ_{n ≤ n_max} |μ_E(n)| n^{-σ} plus an integral-comparison estimate of
    /// the dropped tail (|μ_E(n)| ≤ d(n) ≤ 2√n).
    pub fn mu_abs_sum(&self, sigma: f64) -> f64 {
        let head: f64 = self
            .mu_support()
            .map(|(n, m)| m.value().abs() * (n as f64).powf(-sigma))
            .sum();
        let m = self.n_max as f64;
        let tail = if sigma > 1.5 { 2.0 * m.powf(1.5 - sigma) / (sigma - 1.5) } else { f64::INFINITY };
        head + tail
    }
}

/// Max over n ≤ n_max of |Σ_{d|n} μ_E(d) a_{n/d} / √(n/d) − [n=1]|.
///
/// This is the Dirichlet-inverse identity between the two tables; it must
/// vanish up to rounding.
pub fn convolution_check(table: &CoefficientTable, n_max: usize) -> f64 {
    let n_max = n_max.min(table.n_max);
    // accumulate divisor sums sieve-style: for each d, push into multiples
    let mut acc = vec![0.0f64; n_max + 1];
    for (d, m) in table.mu_support() {
        if d > n_max {
            break;
        }
        let mu = m.value();
        let mut n = d;
        while n <= n_max {
            let q = n / d;
            acc[n] += mu * table.a(q) as f64 / (q as f64).sqrt();
            n += d;
        }
    }
    let mut worst = (acc[1] - 1.0).abs();
    for &v in acc.iter().skip(2) {
        worst = worst.max(v.abs());
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::RootNumber;
    use proptest::prelude::*;
    use std::collections::BTreeMap;

    fn e32() -> CurveSpec {
        let mut o = BTreeMap::new();
        o.insert(2, 0);
        CurveSpec::new(-1, 0, 32, RootNumber::Undetermined, None, o).unwrap()
    }

    fn table(n_max: usize) -> CoefficientTable {
        CoefficientTable::build(&e32(), n_max).unwrap()
    }

    #[test]
    fn a_table_examples() {
        let t = table(30);
        assert_eq!(t.a(1), 1);
        assert_eq!(t.a(25), -1); // a₅² - 5 = 4 - 5
        assert_eq!(t.a(15), 0); // a₃·a₅ with a₃ = 0
        assert_eq!(t.a(5), -2);
        assert_eq!(t.a(13), 6);
        // bad prime rule at 2: a_{2^k} = a₂^k = 0
        assert_eq!(t.a(2), 0);
        assert_eq!(t.a(4), 0);
        assert_eq!(t.a(8), 0);
    }

    #[test]
    fn rejects_empty_range() {
        assert_eq!(CoefficientTable::build(&e32(), 0).unwrap_err(), CoeffError::EmptyRange);
    }

    #[test]
    fn mu_table_examples() {
        let t = table(200);
        assert_eq!(t.mu(1), MoebiusCoeff::ONE);
        // 2 | Δ = 64, so μ_E(4) = 0
        assert!(t.mu(4).is_zero());
        assert_eq!(t.mu(5), MoebiusCoeff { numer: 2, sqfree: 5 });
        // good p = 3: μ_E(9) = 1
        assert_eq!(t.mu(9), MoebiusCoeff::ONE);
        // cubes vanish
        assert!(t.mu(125).is_zero());
        assert!(t.mu(8).is_zero());
        // μ_E(p²m) = μ_E(m) for good p ∤ m
        assert_eq!(t.mu(45), t.mu(5));
        // exact value agrees with float form
        let m = t.mu(5);
        assert!((m.value() - 2.0 / 5.0f64.sqrt()).abs() < 1e-16);
    }

    #[test]
    fn convolution_identity_small() {
        let t = table(1000);
        let defect = convolution_check(&t, 1000);
        assert!(defect <= 1e-12, "defect {defect}");
    }

    #[test]
    fn convolution_detects_corruption() {
        let mut t = table(500);
        t.a[7] += 1; // corrupt a₇
        let defect = convolution_check(&t, 500);
        assert!(defect > 1e-3, "corruption not detected: {defect}");
    }

    #[test]
    fn ramanujan_bound_numerically() {
        // |μ_E(n)| ≤ d(n), and in this range comfortably below 4·n^{1/4}
        let t = table(5000);
        for (n, m) in t.mu_support() {
            assert!(m.value().abs() <= 4.0 * (n as f64).powf(0.25), "n = {n}");
        }
    }

    fn shared_table() -> &'static CoefficientTable {
        use std::sync::OnceLock;
        static TABLE: OnceLock<CoefficientTable> = OnceLock::new();
        TABLE.get_or_init(|| table(62_500))
    }

    proptest! {
        #[test]
        fn mu_multiplicative(m in 2usize..250, n in 2usize..250) {
            prop_assume!(gcd(m, n) == 1);
            let t = shared_table();
            let lhs = t.mu(m * n);
            let rhs = t.mu(m).mul(t.mu(n));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn a_multiplicative(m in 2usize..250, n in 2usize..250) {
            prop_assume!(gcd(m, n) == 1);
            let t = shared_table();
            prop_assert_eq!(t.a(m * n), t.a(m) * t.a(n));
        }
    }

    fn gcd(a: usize, b: usize) -> usize {
        if b == 0 { a } else { gcd(b, a % b) }
    }
}
