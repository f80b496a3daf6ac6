//! Built-in algebra catalog: the scalars C, R, H, the self-conjugate
//! algebra T, the universal UHF algebras U and U_r, and M_2(R). Each
//! entry carries a derivation note, and `startup_cross_checks` re-derives
//! every table from an independent route so a corrupted entry cannot
//! survive startup.

use num_bigint::BigUint;

use crate::abgroup::FgAbGroup;
use crate::crt::{
    complexification, kt_from_conjugation_sequence, quaternionify, validate_rank_consistency,
    CrtData, RationalCrt, RealKData,
};
use crate::error::Error;
use crate::folner::ExtGroup;
use crate::kchar::{AlgebraDescriptor, DescriptorKData, FieldBase, Flags, KData};
use crate::uhf::{real_uhf_kdata, CheckLine, Supernatural};
use crate::Result;

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub descriptor: AlgebraDescriptor,
    /// Where the table comes from: transcribed or derived.
    pub note: &'static str,
}

fn z() -> FgAbGroup {
    FgAbGroup::free(1)
}

fn z2() -> FgAbGroup {
    FgAbGroup::cyclic(2)
}

fn zero() -> FgAbGroup {
    FgAbGroup::trivial()
}

fn fg_flags() -> Flags {
    Flags { ktp_class: true, finitely_generated_k: true, nuclear: true, separable: true, n_real: false }
}

fn real_fg_flags() -> Flags {
    Flags { ktp_class: false, finitely_generated_k: true, nuclear: true, separable: true, n_real: true }
}

/// CRT of the reals: the standard KO row, KU = K(C), and KT derived from
/// the conjugation sequence.
pub fn crt_of_reals() -> CrtData {
    CrtData {
        ko: [z(), z2(), z2(), zero(), z(), zero(), zero(), zero()],
        ku: [z(), zero()],
        kt: [z(), z2(), zero(), z()],
    }
}

/// CRT of C regarded as a real algebra: KO_n = K_{n mod 2},
/// KU_n = 2 K_n, KT_n = K_n + K_{n+1}.
pub fn crt_of_complex_as_real() -> CrtData {
    CrtData {
        ko: [z(), zero(), z(), zero(), z(), zero(), z(), zero()],
        ku: [z().direct_sum(&z()), zero()],
        kt: [z(), z(), z(), z()],
    }
}

/// CRT of the quaternions, transcribed from the K/KU/KT tables.
pub fn crt_of_quaternions() -> CrtData {
    CrtData {
        ko: [z(), zero(), zero(), zero(), z(), z2(), z2(), zero()],
        ku: [z(), zero()],
        kt: [z(), z2(), zero(), z()],
    }
}

/// CRT of the self-conjugate algebra T: KO from KT of the reals (T (x) R
/// = T), KU from K(C(S^1)), KT from the conjugation sequence with the
/// sign flip on K_1.
pub fn crt_of_t() -> CrtData {
    CrtData {
        ko: [z(), z2(), zero(), z(), z(), z2(), zero(), z()],
        ku: [z(), z()],
        kt: [
            z().direct_sum(&z2()),
            z2(),
            z(),
            z().direct_sum(&z()),
        ],
    }
}

/// The united K-theory of U_r: Q-dimensions transcribed from the table.
pub fn rational_crt_of_ur() -> RationalCrt {
    RationalCrt { ko: [1, 0, 0, 0, 1, 0, 0, 0], ku: [1, 0], kt: [1, 0, 0, 1] }
}

/// All shipped entries in a stable order.
pub fn entries() -> Vec<CatalogEntry> {
    let complex = |name: &'static str, k0: ExtGroup, k1: ExtGroup, flags: Flags, note| CatalogEntry {
        name,
        descriptor: AlgebraDescriptor::complex(name, KData::new(k0, k1), flags)
            .expect("catalog entry is well formed"),
        note,
    };
    let real = |name: &'static str, base: FieldBase, crt: CrtData, note| CatalogEntry {
        name,
        descriptor: AlgebraDescriptor::new(name, base, DescriptorKData::Real(RealKData::Fg(crt)), real_fg_flags())
            .expect("catalog entry is well formed"),
        note,
    };

    vec![
        complex(
            "C",
            ExtGroup::from_fg(z()),
            ExtGroup::zero(),
            fg_flags(),
            "complex numbers; K = (Z, 0); unit of the complex ring",
        ),
        complex(
            "U",
            ExtGroup::q(),
            ExtGroup::zero(),
            Flags { ktp_class: true, nuclear: true, separable: true, ..Flags::default() },
            "universal complex UHF algebra; K_0 = Q, K_1 = 0; tensor idempotent",
        ),
        real("R", FieldBase::Real, crt_of_reals(), "reals; KO row standard, KT derived from the conjugation sequence"),
        real(
            "C_real",
            FieldBase::Real,
            crt_of_complex_as_real(),
            "C as a real algebra; KO_n = K_{n mod 2}, KU_n = 2 K_n, KT_n = K_n + K_{n+1}",
        ),
        real(
            "H",
            FieldBase::Quaternion,
            crt_of_quaternions(),
            "quaternions; K row transcribed, KU via H (x) C = M_2(C), KT via the conjugation sequence",
        ),
        real(
            "T",
            FieldBase::Real,
            crt_of_t(),
            "self-conjugate algebra T = C(T,n_1); KO = KT(R), KU = K(C(S^1)), KT from the conjugation sequence",
        ),
        real(
            "M2R",
            FieldBase::Real,
            crt_of_reals(),
            "2x2 real matrices; united K-theory agrees with R (stable isomorphism)",
        ),
        CatalogEntry {
            name: "Ur",
            descriptor: AlgebraDescriptor::new(
                "Ur",
                FieldBase::Real,
                DescriptorKData::Real(RealKData::Rational(rational_crt_of_ur())),
                Flags { nuclear: true, separable: true, n_real: true, ..Flags::default() },
            )
            .expect("catalog entry is well formed"),
            note: "universal real UHF algebra; Q-dimension table transcribed; tensor idempotent",
        },
    ]
}

/// Look up a catalog entry; `U_r` and `M2(R)` aliases are accepted.
pub fn lookup(name: &str) -> Option<CatalogEntry> {
    let canonical = match name {
        "U_r" => "Ur",
        "M2(R)" => "M2R",
        other => other,
    };
    entries().into_iter().find(|e| e.name == canonical)
}

/// The fg united K-theory table of a real catalog entry.
pub fn crt_table(name: &str) -> Option<CrtData> {
    match lookup(name)?.descriptor.kdata {
        DescriptorKData::Real(RealKData::Fg(c)) => Some(c),
        _ => None,
    }
}

/// The rational united K-theory table of a catalog entry.
pub fn rational_crt_table(name: &str) -> Option<RationalCrt> {
    match lookup(name)?.descriptor.kdata {
        DescriptorKData::Real(RealKData::Rational(r)) => Some(r),
        DescriptorKData::Real(RealKData::Fg(c)) => Some(c.rationalize()),
        _ => None,
    }
}

/// Re-derive every shipped table through an independent route.
pub fn startup_cross_checks() -> Vec<CheckLine> {
    let mut lines = Vec::new();
    let mut push = |name: &str, pass: bool, detail: String| {
        lines.push(CheckLine { name: name.into(), pass, detail });
    };

    // H from R by Wood-Karoubi
    let h = crt_table("H").expect("H shipped");
    let derived = quaternionify(&crt_of_reals());
    push(
        "CRT(H) = quaternionify(CRT(R))",
        h == derived,
        format!("KO(H)[5] = {}, derived {}", h.ko[5], derived.ko[5]),
    );

    // KU(H) equals the K-theory pattern of M_2(C)
    push(
        "KU(H) = K(M2(C))",
        h.ku == [z(), zero()],
        format!("KU(H) = ({}, {})", h.ku[0], h.ku[1]),
    );

    // C-as-real from the complexification formulas, including
    // KT_n = K_n + K_{n+1}
    let c_entry = lookup("C").expect("C shipped");
    let c_real = crt_table("C_real").expect("C_real shipped");
    let derived = complexification(&c_entry.descriptor).expect("C is fg complex");
    push(
        "CRT(C_real) = complexification(C)",
        c_real == derived,
        format!("KT row = [{}, {}, {}, {}]", c_real.kt[0], c_real.kt[1], c_real.kt[2], c_real.kt[3]),
    );

    // U_r table against the real UHF K-theory of the universal
    // supernatural number
    let ur = rational_crt_of_ur();
    let row = real_uhf_kdata(&Supernatural::universal());
    let ko_matches = (0..8).all(|i| {
        let dim = if row[i] == ExtGroup::q() {
            1
        } else if row[i].is_zero() {
            0
        } else {
            u64::MAX
        };
        dim == ur.ko[i]
    });
    push(
        "U_r KO row = real_uhf_kdata(universal)",
        ko_matches,
        format!("KO_0 = {}, KO_1 = {}", row[0], row[1]),
    );

    // KT rows from the conjugation sequence
    let r = crt_of_reals();
    let kt = kt_from_conjugation_sequence([1, 0], [1, 1]);
    push("KT(R) from the conjugation sequence", r.kt == kt, format!("derived [{} {} {} {}]", kt[0], kt[1], kt[2], kt[3]));
    let t = crt_of_t();
    let kt = kt_from_conjugation_sequence([1, 1], [1, -1]);
    push("KT(T) from the conjugation sequence", t.kt == kt, format!("derived [{} {} {} {}]", kt[0], kt[1], kt[2], kt[3]));

    // rank identities of every real entry
    for name in ["R", "C_real", "H", "T", "M2R", "Ur"] {
        let rc = rational_crt_table(name).expect("real entry");
        let ok = validate_rank_consistency(&rc).is_ok();
        push(
            &format!("rank consistency of CRT({name})"),
            ok,
            validate_rank_consistency(&rc).err().map(|e| e.to_string()).unwrap_or_else(|| "ok".into()),
        );
    }

    // M2R is the R table
    push(
        "CRT(M2R) = CRT(R)",
        crt_table("M2R") == Some(crt_of_reals()),
        "stable isomorphism".into(),
    );

    // torsion sanity: the Z/2 entries of KO(R) sit at degrees 1 and 2
    let two = BigUint::from(2u32);
    push(
        "KO(R) torsion placement",
        r.ko[1].torsion() == [two.clone()] && r.ko[2].torsion() == [two],
        format!("KO_1 = {}, KO_2 = {}", r.ko[1], r.ko[2]),
    );

    lines
}

/// Fails if any shipped table disagrees with its derivation.
pub fn verify_catalog() -> Result<()> {
    for line in startup_cross_checks() {
        if !line.pass {
            return Err(Error::Invalid(format!("catalog check failed: {} ({})", line.name, line.detail)));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_cross_checks_pass() {
        let lines = startup_cross_checks();
        for line in &lines {
            assert!(line.pass, "{}: {}", line.name, line.detail);
        }
        assert!(lines.len() >= 10);
        verify_catalog().unwrap();
    }

    #[test]
    fn lookup_and_aliases() {
        assert!(lookup("C").is_some());
        assert_eq!(lookup("U_r").unwrap().name, "Ur");
        assert_eq!(lookup("M2(R)").unwrap().name, "M2R");
        assert!(lookup("nope").is_none());
        // stable order
        let names: Vec<&str> = entries().iter().map(|e| e.name).collect();
        assert_eq!(names, vec!["C", "U", "R", "C_real", "H", "T", "M2R", "Ur"]);
    }
}
