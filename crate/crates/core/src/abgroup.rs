//! Canonical finitely generated abelian groups.
//!
//! A group is stored as its free rank together with the chain of invariant
//! factors d_1 | d_2 | ... | d_k, every entry >= 2. The representation is
//! unique, so equality of values is equality of groups. Canonicalization
//! works by gcd/lcm folding and never needs to factor anything.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::Error;
use crate::matrix::{smith_normal_form, IntMatrix};
use crate::Result;

/// Finitely generated abelian group in invariant-factor canonical form.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FgAbGroup {
    rank: u64,
    torsion: Vec<BigUint>,
}

impl FgAbGroup {
    pub fn trivial() -> Self {
        FgAbGroup { rank: 0, torsion: Vec::new() }
    }

    pub fn free(rank: u64) -> Self {
        FgAbGroup { rank, torsion: Vec::new() }
    }

    /// Cyclic group Z/d. By the usual convention d = 0 denotes Z and
    /// d = 1 the trivial group.
    pub fn cyclic(d: u64) -> Self {
        Self::from_parts(0, [BigUint::from(d)])
    }

    /// Build from a free rank and an arbitrary list of cyclic moduli.
    /// Modulus 0 contributes a Z summand, modulus 1 nothing.
    pub fn from_parts(rank: u64, moduli: impl IntoIterator<Item = BigUint>) -> Self {
        let mut rank = rank;
        let mut torsion: Vec<BigUint> = Vec::new();
        for d in moduli {
            if d.is_zero() {
                rank += 1;
            } else if !d.is_one() {
                torsion.push(d);
            }
        }
        canonicalize(&mut torsion);
        FgAbGroup { rank, torsion }
    }

    pub fn rank(&self) -> u64 {
        self.rank
    }

    /// Invariant factors d_1 | d_2 | ... | d_k.
    pub fn torsion(&self) -> &[BigUint] {
        &self.torsion
    }

    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    pub fn is_free(&self) -> bool {
        self.torsion.is_empty()
    }

    /// Order of the torsion subgroup.
    pub fn torsion_order(&self) -> BigUint {
        self.torsion.iter().product()
    }

    /// Order of the group itself, when finite.
    pub fn order(&self) -> Option<BigUint> {
        (self.rank == 0).then(|| self.torsion_order())
    }

    pub fn direct_sum(&self, other: &FgAbGroup) -> FgAbGroup {
        let moduli = self.torsion.iter().chain(&other.torsion).cloned();
        FgAbGroup::from_parts(self.rank + other.rank, moduli)
    }

    /// Ordinary tensor product over Z:
    /// Z^a (x) Z^b = Z^{ab}, Z (x) Z/d = Z/d, Z/d (x) Z/e = Z/gcd(d, e).
    pub fn tensor(&self, other: &FgAbGroup) -> FgAbGroup {
        let mut moduli: Vec<BigUint> = Vec::new();
        for d in &self.torsion {
            for _ in 0..other.rank {
                moduli.push(d.clone());
            }
        }
        for e in &other.torsion {
            for _ in 0..self.rank {
                moduli.push(e.clone());
            }
        }
        for d in &self.torsion {
            for e in &other.torsion {
                moduli.push(d.gcd(e));
            }
        }
        FgAbGroup::from_parts(self.rank * other.rank, moduli)
    }

    /// Tor_1 over Z: free parts are flat, Tor(Z/d, Z/e) = Z/gcd(d, e).
    pub fn tor(&self, other: &FgAbGroup) -> FgAbGroup {
        let mut moduli = Vec::new();
        for d in &self.torsion {
            for e in &other.torsion {
                moduli.push(d.gcd(e));
            }
        }
        FgAbGroup::from_parts(0, moduli)
    }

    /// dim_Q of the group tensored with Q; torsion dies.
    pub fn tensor_q_dim(&self) -> u64 {
        self.rank
    }

    /// log_p of the order of the p-primary torsion subgroup, i.e. the sum
    /// of p-adic valuations of the invariant factors.
    pub fn p_primary_log(&self, p: u64) -> Result<u64> {
        require_prime(p)?;
        let p = BigUint::from(p);
        let mut total = 0u64;
        for d in &self.torsion {
            let mut d = d.clone();
            while (&d % &p).is_zero() {
                d /= &p;
                total += 1;
            }
        }
        Ok(total)
    }

    /// Alternate chi_p mode: log_p |G (x) Z/p| = rank + #{d_i : p | d_i}.
    /// Unlike the p-primary part, this also counts the free rank.
    pub fn tensor_zp_log(&self, p: u64) -> Result<u64> {
        require_prime(p)?;
        let p = BigUint::from(p);
        let hit = self.torsion.iter().filter(|d| (*d % &p).is_zero()).count() as u64;
        Ok(self.rank + hit)
    }

    /// Natural logarithm of the torsion order, for estimate error bounds.
    pub fn ln_torsion_order(&self) -> f64 {
        ln_biguint(&self.torsion_order())
    }

    /// Presentation of the group on rank + torsion generators: free
    /// generators first, then one generator per invariant factor with
    /// relation d_i * g_i = 0. Returns (n_gens, relation matrix).
    pub fn presentation(&self) -> (usize, IntMatrix) {
        let n = self.rank as usize + self.torsion.len();
        let mut rel = IntMatrix::zero(n, self.torsion.len());
        for (j, d) in self.torsion.iter().enumerate() {
            rel[(self.rank as usize + j, j)] = BigInt::from(d.clone());
        }
        (n, rel)
    }
}

impl std::fmt::Debug for FgAbGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{self}")
    }
}

impl std::fmt::Display for FgAbGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for d in &self.torsion {
            parts.push(format!("Z/{d}"));
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// Canonicalize a modulus list into the invariant-factor chain. Small
/// moduli go through prime factorization; anything larger falls back to
/// gcd/lcm folding. Both routes produce the unique chain.
fn canonicalize(torsion: &mut Vec<BigUint>) {
    torsion.retain(|d| !d.is_one());
    debug_assert!(torsion.iter().all(|d| !d.is_zero()));
    let small_bound = BigUint::from(1u64 << 20);
    if torsion.iter().all(|d| *d < small_bound) {
        canonicalize_by_factoring(torsion);
    } else {
        canonicalize_by_folding(torsion);
    }
    torsion.retain(|d| !d.is_one());
    torsion.sort();
}

/// Bucket prime-power parts per prime; the j-th largest exponents across
/// all primes recombine into the j-th-from-last invariant factor.
fn canonicalize_by_factoring(torsion: &mut Vec<BigUint>) {
    use std::collections::BTreeMap;
    let mut exponents: BTreeMap<u64, Vec<u32>> = BTreeMap::new();
    for d in torsion.iter() {
        let mut m = d.to_u64().expect("bounded by the small-modulus cutoff");
        let mut p = 2u64;
        while p * p <= m {
            if m % p == 0 {
                let mut e = 0;
                while m % p == 0 {
                    m /= p;
                    e += 1;
                }
                exponents.entry(p).or_default().push(e);
            }
            p += 1;
        }
        if m > 1 {
            exponents.entry(m).or_default().push(1);
        }
    }
    let chain_len = exponents.values().map(Vec::len).max().unwrap_or(0);
    let mut chain = vec![BigUint::one(); chain_len];
    for (p, mut exps) in exponents {
        exps.sort_unstable_by(|a, b| b.cmp(a));
        for (j, e) in exps.into_iter().enumerate() {
            // largest exponent joins the last factor
            let slot = chain_len - 1 - j;
            chain[slot] *= BigUint::from(p).pow(e);
        }
    }
    *torsion = chain;
}

/// gcd/lcm folding: replace non-dividing pairs by (gcd, lcm) until the
/// chain stabilizes. No factorization needed.
fn canonicalize_by_folding(torsion: &mut Vec<BigUint>) {
    let n = torsion.len();
    loop {
        let mut changed = false;
        for i in 0..n {
            for j in i + 1..n {
                if (&torsion[j] % &torsion[i]).is_zero() {
                    continue;
                }
                let g = torsion[i].gcd(&torsion[j]);
                let l = &torsion[i] / &g * &torsion[j];
                torsion[i] = g;
                torsion[j] = l;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
}

/// Cokernel of an integer matrix presenting Z^rows / column-span.
pub fn cokernel(m: &IntMatrix) -> FgAbGroup {
    let snf = smith_normal_form(m);
    let rank = (m.rows() - snf.rank()) as u64;
    let moduli = snf
        .diag
        .iter()
        .map(|d| d.to_biguint().expect("snf diagonal is non-negative"));
    FgAbGroup::from_parts(rank, moduli)
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p % 2 == 0 {
        return p == 2;
    }
    let mut d = 3;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

fn require_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

/// ln of a positive big integer, stable for arbitrarily large values.
pub fn ln_biguint(n: &BigUint) -> f64 {
    if n.is_zero() {
        return f64::NEG_INFINITY;
    }
    if let Some(v) = n.to_f64() {
        if v.is_finite() {
            return v.ln();
        }
    }
    let bits = n.bits();
    let shift = bits.saturating_sub(53);
    let top = (n >> shift).to_f64().unwrap_or(f64::MAX);
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// Result of parsing a group literal; `canonical` records whether the
/// written torsion list was already a divisibility chain.
#[derive(Clone, Debug)]
pub struct GroupLiteral {
    pub group: FgAbGroup,
    pub canonical: bool,
}

/// Parse the literal syntax `Z^r + Z/d1 + Z/d2 + ...` (whitespace
/// insensitive; `0` denotes the trivial group, bare `Z` means `Z^1`).
pub fn parse_group(input: &str) -> Result<GroupLiteral> {
    let compact: String = input.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(Error::Invalid("empty group literal".into()));
    }
    if compact == "0" {
        return Ok(GroupLiteral { group: FgAbGroup::trivial(), canonical: true });
    }
    let mut rank: u64 = 0;
    let mut written: Vec<BigUint> = Vec::new();
    for term in compact.split('+') {
        if term == "Z" {
            rank += 1;
        } else if let Some(exp) = term.strip_prefix("Z^") {
            let r: u64 = exp
                .parse()
                .map_err(|_| Error::Invalid(format!("bad rank exponent `{exp}` in group literal")))?;
            rank += r;
        } else if let Some(modulus) = term.strip_prefix("Z/") {
            let d: BigUint = modulus
                .parse()
                .map_err(|_| Error::Invalid(format!("bad torsion modulus `{modulus}` in group literal")))?;
            if d < BigUint::from(2u32) {
                return Err(Error::Invalid(format!(
                    "torsion modulus must be >= 2, got `{modulus}`"
                )));
            }
            written.push(d);
        } else if term == "0" {
            // trivial summand, allowed inside sums
        } else {
            return Err(Error::Invalid(format!("unrecognized group term `{term}`")));
        }
    }
    let group = FgAbGroup::from_parts(rank, written.clone());
    let canonical = group.torsion() == written.as_slice();
    Ok(GroupLiteral { group, canonical })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(rank: u64, torsion: &[u64]) -> FgAbGroup {
        FgAbGroup::from_parts(rank, torsion.iter().map(|&d| BigUint::from(d)))
    }

    /// Independent canonicalization oracle: SNF of the diagonal relation
    /// matrix recovers the invariant factors.
    fn snf_oracle(rank: u64, moduli: &[u64]) -> FgAbGroup {
        let k = moduli.len();
        let m = IntMatrix::from_fn(k + rank as usize, k, |i, j| {
            if i == j {
                BigInt::from(moduli[j])
            } else {
                BigInt::zero()
            }
        });
        cokernel(&m)
    }

    #[test]
    fn cokernel_examples() {
        // Z/2
        let m = IntMatrix::from_rows(vec![vec![2]]);
        assert_eq!(cokernel(&m), g(0, &[2]));
        // free of rank 2 (2x0 presentation)
        assert_eq!(cokernel(&IntMatrix::zero(2, 0)), g(2, &[]));
        // from the SNF example
        let m = IntMatrix::from_rows(vec![vec![2, 4], vec![6, 8]]);
        assert_eq!(cokernel(&m), g(0, &[2, 4]));
    }

    #[test]
    fn direct_sum_examples() {
        assert_eq!(g(2, &[]).direct_sum(&g(3, &[])), g(5, &[]));
        // Z/2 + Z/3 = Z/6 (brute: unique abelian group of order 6)
        assert_eq!(g(0, &[2]).direct_sum(&g(0, &[3])), g(0, &[6]));
        assert_eq!(g(0, &[2]).direct_sum(&g(0, &[4])), g(0, &[2, 4]));
    }

    #[test]
    fn canonicalization_matches_snf_oracle() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let rank = rng.gen_range(0..3);
            let k = rng.gen_range(0..5);
            let moduli: Vec<u64> = (0..k).map(|_| rng.gen_range(1..40)).collect();
            let built = FgAbGroup::from_parts(rank, moduli.iter().map(|&d| BigUint::from(d)));
            assert_eq!(built, snf_oracle(rank, &moduli), "moduli {moduli:?}");
        }
    }

    #[test]
    fn both_canonicalization_routes_agree() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
        for _ in 0..300 {
            let k = rng.gen_range(0..6);
            let moduli: Vec<BigUint> = (0..k).map(|_| BigUint::from(rng.gen_range(2u64..200))).collect();
            let mut by_factoring = moduli.clone();
            canonicalize_by_factoring(&mut by_factoring);
            by_factoring.retain(|d| !d.is_one());
            by_factoring.sort();
            let mut by_folding = moduli.clone();
            canonicalize_by_folding(&mut by_folding);
            by_folding.retain(|d| !d.is_one());
            by_folding.sort();
            assert_eq!(by_factoring, by_folding, "moduli {moduli:?}");
        }
    }

    #[test]
    fn canonicalization_idempotent() {
        let a = g(1, &[6, 2, 8, 3]);
        let again = FgAbGroup::from_parts(a.rank(), a.torsion().to_vec());
        assert_eq!(a, again);
        // chain holds
        for w in a.torsion().windows(2) {
            assert!((&w[1] % &w[0]).is_zero());
        }
    }

    #[test]
    fn tensor_examples() {
        assert_eq!(g(2, &[]).tensor(&g(3, &[])), g(6, &[]));
        // Z/4 (x) Z/6 = Z/2 (brute-force bilinear quotient on 24 pairs)
        assert_eq!(g(0, &[4]).tensor(&g(0, &[6])), g(0, &[2]));
        // (Z + Z/2) (x) (Z + Z/3) = Z + Z/2 + Z/3 = Z + Z/6
        assert_eq!(g(1, &[2]).tensor(&g(1, &[3])), g(1, &[6]));
    }

    #[test]
    fn tor_examples() {
        assert_eq!(g(3, &[]).tor(&g(1, &[2, 4])), FgAbGroup::trivial());
        // kernel of multiplication-by-6 on Z/4, enumerated: {0, 2} = Z/2
        assert_eq!(g(0, &[4]).tor(&g(0, &[6])), g(0, &[2]));
        assert_eq!(g(0, &[2, 4]).tor(&g(0, &[8])), g(0, &[2, 4]));
    }

    #[test]
    fn q_dim_and_p_log() {
        assert_eq!(g(3, &[9]).tensor_q_dim(), 3);
        assert_eq!(FgAbGroup::trivial().tensor_q_dim(), 0);
        assert_eq!(g(0, &[2, 4, 8]).tensor_q_dim(), 0);

        assert_eq!(g(0, &[4]).p_primary_log(2).unwrap(), 2);
        assert_eq!(g(5, &[]).p_primary_log(3).unwrap(), 0);
        assert_eq!(g(0, &[6, 12]).p_primary_log(3).unwrap(), 2);
        assert!(g(0, &[4]).p_primary_log(4).is_err());

        assert_eq!(g(1, &[2, 6]).tensor_zp_log(2).unwrap(), 3);
        assert_eq!(g(1, &[2, 6]).tensor_zp_log(3).unwrap(), 2);
    }

    #[test]
    fn display_and_parse_round_trip() {
        let cases = [g(0, &[]), g(1, &[]), g(2, &[2, 4]), g(0, &[3])];
        for c in &cases {
            let lit = parse_group(&c.to_string()).unwrap();
            assert_eq!(&lit.group, c);
            assert!(lit.canonical);
        }
        // wrong chain order parses with a canonicalization notice
        let lit = parse_group("Z/4 + Z/2").unwrap();
        assert_eq!(lit.group, g(0, &[2, 4]));
        assert!(!lit.canonical);
        // whitespace insensitive
        assert_eq!(parse_group("  Z ^ 2 ").is_err(), false);
        assert_eq!(parse_group("Z^2+Z/6").unwrap().group, g(2, &[6]));
        assert!(parse_group("Z/1").is_err());
        assert!(parse_group("W").is_err());
    }

    #[test]
    fn prime_check() {
        assert!(is_prime(2));
        assert!(is_prime(97));
        assert!(!is_prime(1));
        assert!(!is_prime(91));
    }
}
