//! Supernatural numbers, UHF K-theory, and classification of complex and
//! real UHF algebras. A UHF algebra is pinned down exactly by its
//! supernatural number s via K_0 = Z[1/s], so classification questions
//! reduce to supernatural arithmetic and membership oracles.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::One;

use crate::abgroup::{is_prime, FgAbGroup};
use crate::error::Error;
use crate::folner::ExtGroup;
use crate::kchar::KData;
use crate::Result;

/// Exponent of a prime in a supernatural number.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Exp {
    Finite(u32),
    Infinite,
}

/// Formal product of primes with exponents in N union {infinity}. The
/// universal supernatural number (all primes infinite) is stored as a
/// distinguished flag.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Supernatural {
    universal: bool,
    exponents: BTreeMap<u64, Exp>,
}

impl Supernatural {
    /// s = 1: the trivial supernatural number (matrix-algebra limit).
    pub fn one() -> Self {
        Supernatural { universal: false, exponents: BTreeMap::new() }
    }

    /// All primes with infinite multiplicity.
    pub fn universal() -> Self {
        Supernatural { universal: true, exponents: BTreeMap::new() }
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (u64, Exp)>) -> Result<Self> {
        let mut exponents = BTreeMap::new();
        for (p, e) in pairs {
            if !is_prime(p) {
                return Err(Error::NotPrime(p));
            }
            if e == Exp::Finite(0) {
                continue;
            }
            match exponents.insert(p, e) {
                None => {}
                Some(_) => return Err(Error::Invalid(format!("prime {p} listed twice"))),
            }
        }
        Ok(Supernatural { universal: false, exponents })
    }

    pub fn is_universal(&self) -> bool {
        self.universal
    }

    pub fn is_one(&self) -> bool {
        !self.universal && self.exponents.is_empty()
    }

    /// Exponent of p (0 for primes not present; infinite if universal).
    pub fn exponent(&self, p: u64) -> Exp {
        if self.universal {
            return Exp::Infinite;
        }
        self.exponents.get(&p).copied().unwrap_or(Exp::Finite(0))
    }

    /// No infinite exponents: s is an ordinary natural number.
    pub fn is_finite(&self) -> bool {
        !self.universal && self.exponents.values().all(|e| matches!(e, Exp::Finite(_)))
    }

    pub fn finite_value(&self) -> Option<BigUint> {
        if !self.is_finite() {
            return None;
        }
        let mut v = BigUint::one();
        for (&p, &e) in &self.exponents {
            let Exp::Finite(k) = e else { unreachable!() };
            v *= BigUint::from(p).pow(k);
        }
        Some(v)
    }

    /// Primes carried with infinite multiplicity, None meaning "all".
    pub fn infinite_primes(&self) -> Option<Vec<u64>> {
        if self.universal {
            return None;
        }
        Some(
            self.exponents
                .iter()
                .filter(|(_, e)| matches!(e, Exp::Infinite))
                .map(|(&p, _)| p)
                .collect(),
        )
    }

    /// Exponent-wise product; infinity absorbs, universal absorbs.
    pub fn multiply(&self, other: &Supernatural) -> Supernatural {
        if self.universal || other.universal {
            return Supernatural::universal();
        }
        let mut exponents = self.exponents.clone();
        for (&p, &e) in &other.exponents {
            let entry = exponents.entry(p).or_insert(Exp::Finite(0));
            *entry = match (*entry, e) {
                (Exp::Finite(a), Exp::Finite(b)) => Exp::Finite(a + b),
                _ => Exp::Infinite,
            };
        }
        exponents.retain(|_, e| *e != Exp::Finite(0));
        Supernatural { universal: false, exponents }
    }

    /// Idempotent under multiplication iff every nonzero exponent is
    /// infinite (the UHF_infinity type of the idempotent catalog).
    pub fn is_idempotent(&self) -> bool {
        self.universal || self.exponents.values().all(|e| matches!(e, Exp::Infinite))
    }

    /// Membership oracle for Z[1/s]: a reduced fraction r/q lies in the
    /// subgroup iff q | s, i.e. v_p(q) <= s_p for every prime p.
    pub fn admits_denominator(&self, q: u64) -> bool {
        if self.universal {
            return q > 0;
        }
        let mut q = q;
        let mut p = 2u64;
        while p * p <= q {
            if q % p == 0 {
                let mut v = 0u32;
                while q % p == 0 {
                    q /= p;
                    v += 1;
                }
                match self.exponent(p) {
                    Exp::Infinite => {}
                    Exp::Finite(k) if k >= v => {}
                    _ => return false,
                }
            }
            p += 1;
        }
        if q > 1 {
            match self.exponent(q) {
                Exp::Infinite => {}
                Exp::Finite(k) if k >= 1 => {}
                _ => return false,
            }
        }
        true
    }

    /// Remove from d every prime that s inverts (infinite exponent);
    /// this is the torsion that survives tensoring with Z[1/s].
    pub fn strip_inverted(&self, d: &BigUint) -> BigUint {
        if self.universal {
            return BigUint::one();
        }
        let mut d = d.clone();
        for (&p, &e) in &self.exponents {
            if e == Exp::Infinite {
                let p = BigUint::from(p);
                while (&d % &p) == BigUint::ZERO {
                    d /= &p;
                }
            }
        }
        d
    }
}

impl std::fmt::Display for Supernatural {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.universal {
            return write!(f, "universal");
        }
        if self.exponents.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .exponents
            .iter()
            .map(|(p, e)| match e {
                Exp::Infinite => format!("{p}^inf"),
                Exp::Finite(1) => format!("{p}"),
                Exp::Finite(k) => format!("{p}^{k}"),
            })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// Parse a supernatural literal: `universal`, `1`, or `2^inf*3^2*7`.
pub fn parse_supernatural(input: &str) -> Result<Supernatural> {
    let compact: String = input.chars().filter(|c| !c.is_whitespace()).collect();
    match compact.as_str() {
        "" => return Err(Error::Invalid("empty supernatural literal".into())),
        "universal" => return Ok(Supernatural::universal()),
        "1" => return Ok(Supernatural::one()),
        _ => {}
    }
    let mut pairs = Vec::new();
    for factor in compact.split('*') {
        let (p_str, e) = match factor.split_once('^') {
            Some((p, "inf")) => (p, Exp::Infinite),
            Some((p, k)) => {
                let k: u32 = k
                    .parse()
                    .map_err(|_| Error::Invalid(format!("bad exponent `{k}` in supernatural literal")))?;
                (p, Exp::Finite(k))
            }
            None => (factor, Exp::Finite(1)),
        };
        let p: u64 = p_str
            .parse()
            .map_err(|_| Error::Invalid(format!("bad prime `{p_str}` in supernatural literal")))?;
        pairs.push((p, e));
    }
    Supernatural::from_pairs(pairs)
}

/// Glimm's classification: UHF algebras are isomorphic iff their pointed
/// K_0 groups agree, i.e. iff the supernatural numbers coincide.
pub fn glimm_classify(a: &Supernatural, b: &Supernatural) -> bool {
    a == b
}

/// Real UHF algebras are classified by K_0 alone, so by the same test.
pub fn real_uhf_classify(a: &Supernatural, b: &Supernatural) -> bool {
    a == b
}

/// Complex K-theory of the UHF algebra with supernatural number s:
/// K_0 = Z[1/s] (Q in the universal case, Z when s is finite), K_1 = 0.
pub fn complex_uhf_kdata(s: &Supernatural) -> KData {
    KData::new(ExtGroup::zloc(s.clone()), ExtGroup::zero())
}

/// KO groups of the real UHF algebra with supernatural number s:
/// KO_0 = KO_4 = Z[1/s]; KO_1 = KO_2 = Z/2 exactly when 2 has finite
/// multiplicity in s; everything else vanishes.
pub fn real_uhf_kdata(s: &Supernatural) -> [ExtGroup; 8] {
    let two_torsion = if s.exponent(2) == Exp::Infinite {
        ExtGroup::zero()
    } else {
        ExtGroup::from_fg(FgAbGroup::cyclic(2))
    };
    [
        ExtGroup::zloc(s.clone()),
        two_torsion.clone(),
        two_torsion,
        ExtGroup::zero(),
        ExtGroup::zloc(s.clone()),
        ExtGroup::zero(),
        ExtGroup::zero(),
        ExtGroup::zero(),
    ]
}

/// One line of the idempotent self-check report.
#[derive(Clone, Debug)]
pub struct CheckLine {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

/// Verifies that the universal UHF algebras are tensor idempotents at the
/// K-data level, in both the complex and real settings, and notes the
/// general UHF_infinity family.
pub fn universal_uhf_idempotent_check() -> Vec<CheckLine> {
    let u = Supernatural::universal();
    let q = ExtGroup::q();
    let mut lines = Vec::new();

    let qq = q.tensor(&q);
    lines.push(CheckLine {
        name: "complex: Q (x) Q = Q".into(),
        pass: qq == q,
        detail: format!("Q (x) Q = {qq}"),
    });

    let uu = u.multiply(&u);
    lines.push(CheckLine {
        name: "supernatural: universal * universal = universal".into(),
        pass: uu == u,
        detail: format!("product = {uu}"),
    });

    let real_u = real_uhf_kdata(&u);
    let real_uu = real_uhf_kdata(&uu);
    let degreewise = real_u
        .iter()
        .zip(real_uu.iter())
        .all(|(a, b)| a == b && &a.tensor(a) == a);
    lines.push(CheckLine {
        name: "real: KO row of U_r stable under tensor".into(),
        pass: degreewise,
        detail: format!("KO_0 = {}, KO_0 (x) KO_0 = {}", real_u[0], real_u[0].tensor(&real_u[0])),
    });

    let s = parse_supernatural("2^inf").expect("literal");
    lines.push(CheckLine {
        name: "note: UHF_infinity-type idempotents".into(),
        pass: s.multiply(&s) == s && s.is_idempotent(),
        detail: "s = 2^inf satisfies s*s = s; every all-infinite supernatural number is idempotent".into(),
    });

    lines
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sn(s: &str) -> Supernatural {
        parse_supernatural(s).unwrap()
    }

    #[test]
    fn multiply_examples() {
        assert_eq!(sn("2^inf*3^2").multiply(&sn("2*3^inf")), sn("2^inf*3^inf"));
        assert_eq!(sn("2^3*5").multiply(&Supernatural::one()), sn("2^3*5"));
        assert_eq!(Supernatural::universal().multiply(&sn("7^2")), Supernatural::universal());
    }

    #[test]
    fn multiply_laws() {
        let cases = [sn("1"), sn("2^inf"), sn("2*3^2"), sn("universal"), sn("5^inf*7")];
        for a in &cases {
            assert_eq!(&a.multiply(&Supernatural::one()), a, "identity");
            assert_eq!(a.multiply(&Supernatural::universal()), Supernatural::universal());
            for b in &cases {
                assert_eq!(a.multiply(b), b.multiply(a), "commutativity");
                for c in &cases {
                    assert_eq!(a.multiply(b).multiply(c), a.multiply(&b.multiply(c)), "associativity");
                }
            }
        }
    }

    #[test]
    fn idempotents_are_the_all_infinite_ones() {
        assert!(Supernatural::universal().is_idempotent());
        assert!(sn("2^inf*5^inf").is_idempotent());
        assert!(sn("1").is_idempotent());
        assert!(!sn("2^inf*3").is_idempotent());
        assert!(!sn("2*3").is_idempotent());
    }

    #[test]
    fn classification_and_membership() {
        assert!(glimm_classify(&sn("2^inf"), &sn("2^inf")));
        assert!(!glimm_classify(&sn("2^inf"), &sn("2^inf*3")));
        assert!(glimm_classify(&Supernatural::universal(), &Supernatural::universal()));

        // membership oracle distinguishes them: 1/3 in one, not the other
        assert!(!sn("2^inf").admits_denominator(3));
        assert!(sn("2^inf*3").admits_denominator(3));
        assert!(sn("2^inf*3").admits_denominator(12));
        assert!(!sn("2^inf*3").admits_denominator(9));
        assert!(Supernatural::universal().admits_denominator(7560));
        assert!(sn("1").admits_denominator(1));
        assert!(!sn("1").admits_denominator(2));
    }

    #[test]
    fn classify_equivalence_matches_membership_oracle() {
        let cases = [sn("2^inf"), sn("2^inf*3"), sn("3^inf"), sn("5^inf"), sn("universal"), sn("1")];
        let sample: Vec<u64> = vec![1, 2, 3, 4, 5, 6, 8, 9, 10, 12, 15, 25, 27, 30];
        for a in &cases {
            for b in &cases {
                let same_by_oracle = sample.iter().all(|&q| a.admits_denominator(q) == b.admits_denominator(q));
                if glimm_classify(a, b) {
                    assert!(same_by_oracle);
                } else {
                    // distinguished by some denominator in the sample
                    assert!(!same_by_oracle, "{a} vs {b} not separated by sample");
                }
            }
        }
    }

    #[test]
    fn uhf_kdata() {
        let u = complex_uhf_kdata(&Supernatural::universal());
        assert_eq!(u.k0, ExtGroup::q());
        assert!(u.k1.is_zero());

        let one = complex_uhf_kdata(&Supernatural::one());
        assert_eq!(one.k0, ExtGroup::from_fg(FgAbGroup::free(1)));

        let half = complex_uhf_kdata(&sn("2^inf"));
        assert_eq!(half.k0, ExtGroup::zloc(sn("2^inf")));
    }

    #[test]
    fn real_uhf_rows() {
        // odd supernatural number: Z/2 at degrees 1 and 2
        let row = real_uhf_kdata(&sn("3^inf"));
        assert_eq!(row[1], ExtGroup::from_fg(FgAbGroup::cyclic(2)));
        assert_eq!(row[2], ExtGroup::from_fg(FgAbGroup::cyclic(2)));
        // two inverted: even maps kill the Z/2
        let row = real_uhf_kdata(&sn("2^inf*3^inf"));
        assert!(row[1].is_zero() && row[2].is_zero());
        // universal: Q at 0 and 4, everything else zero
        let row = real_uhf_kdata(&Supernatural::universal());
        assert_eq!(row[0], ExtGroup::q());
        assert_eq!(row[4], ExtGroup::q());
        for i in [1, 2, 3, 5, 6, 7] {
            assert!(row[i].is_zero(), "degree {i}");
        }
    }

    #[test]
    fn idempotent_check_passes() {
        let lines = universal_uhf_idempotent_check();
        assert!(lines.iter().all(|l| l.pass), "{lines:?}");
    }

    #[test]
    fn display_round_trip() {
        for s in ["universal", "1", "2^inf*3^2*7^inf", "5"] {
            let v = sn(s);
            assert_eq!(parse_supernatural(&v.to_string()).unwrap(), v);
        }
        assert!(parse_supernatural("4^2").is_err());
        assert!(parse_supernatural("2^x").is_err());
    }
}
