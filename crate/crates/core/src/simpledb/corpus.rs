use std::sync::OnceLock;

use num_bigint::BigUint;

use super::DbError;

/// A small permutation group shipped with the crate.
#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub label: &'static str,
    pub file: &'static str,
    pub source: &'static str,
    pub expected_order: u64,
    pub provenance: &'static str,
}

impl CorpusEntry {
    pub fn expected_order_big(&self) -> BigUint {
        BigUint::from(self.expected_order)
    }
}

macro_rules! entry {
    ($label:expr, $file:expr, $order:expr, $prov:expr) => {
        CorpusEntry {
            label: $label,
            file: $file,
            source: include_str!(concat!("../../data/groups/", $file)),
            expected_order: $order,
            provenance: $prov,
        }
    };
}

/// All corpus entries, ascending by order.
pub fn corpus() -> &'static [CorpusEntry] {
    static C: OnceLock<Vec<CorpusEntry>> = OnceLock::new();
    C.get_or_init(|| {
        vec![
    entry!("trivial", "trivial.grp", 1, "trivial group"),
    entry!("Z2", "z2.grp", 2, "regular representation"),
    entry!("Z3", "z3.grp", 3, "regular representation"),
    entry!("Z2xZ2", "z2xz2.grp", 4, "Klein four-group on 4 points"),
    entry!("Z4", "z4.grp", 4, "regular representation"),
    entry!("S3", "s3.grp", 6, "natural action"),
    entry!("Z6", "z6.grp", 6, "regular representation"),
    entry!("D8", "d8.grp", 8, "symmetries of the square"),
    entry!("Q8", "q8.grp", 8, "regular representation"),
    entry!("D10", "d10.grp", 10, "symmetries of the pentagon"),
    entry!("A4", "a4.grp", 12, "natural action"),
    entry!("D12", "d12.grp", 12, "symmetries of the hexagon"),
    entry!("Z12", "z12.grp", 12, "regular representation"),
    entry!("Q16", "q16.grp", 16, "regular representation"),
    entry!("F20", "f20.grp", 20, "affine maps x -> ax+b on F5"),
    entry!("Z7:Z3", "z7_z3.grp", 21, "affine maps x -> 2^i x + b on Z7"),
    entry!("S4", "s4.grp", 24, "natural action"),
    entry!("S4 (degree 8)", "s4_doubled.grp", 24, "diagonal action on two copies of the natural set"),
    entry!("SL2(3)", "sl2_3.grp", 24, "action on nonzero vectors of F3^2"),
    entry!("Z7:Z3:Z2", "z7_z3_z2.grp", 42, "AGL(1,7)"),
    entry!("A5", "a5.grp", 60, "natural action"),
    entry!("(Z3xZ3):Q8", "z3xz3_q8.grp", 72, "affine maps of F3^2"),
    entry!("S5", "s5.grp", 120, "natural action"),
    entry!("SL2(5)", "sl2_5.grp", 120, "action on nonzero vectors of F5^2"),
    entry!("(Z5xZ5):S3", "z5xz5_s3.grp", 150, "affine maps of F5^2"),
    entry!("AGammaL(1,8)", "agaml18.grp", 168, "semilinear affine maps of F8"),
    entry!("L2(7)", "l2_7.grp", 168, "Fano plane"),
    entry!("A6", "a6.grp", 360, "natural action"),
    entry!("S6", "s6.grp", 720, "natural action"),
    entry!("L3(3)", "l3_3.grp", 5616, "points of PG(2,3)"),
    entry!("U3(3)", "u3_3.grp", 6048, "isotropic points of the Hermitian unital"),
    entry!("M11", "m11.grp", 7920, "standard generators on 11 points"),
    entry!("Aut(L3(3))", "aut_l3_3.grp", 11232, "points and lines of PG(2,3)"),
    entry!("(Z11xZ11):SL2(5)", "z11xz11_sl2_5.grp", 14520, "affine maps of F11^2"),
    entry!("L3(4)", "l3_4.grp", 20160, "points of PG(2,4)"),
    entry!("U4(2)", "u4_2.grp", 25920, "points of PG(3,3) under symplectic transvections"),
    entry!("M12", "m12.grp", 95040, "standard generators on 12 points"),
    entry!("J2", "j2.grp", 604800, "vertices of the Hall-Janko graph"),
        ]
    })
}

/// Looks up an entry by label or file stem.
pub fn corpus_entry(name: &str) -> Result<&'static CorpusEntry, DbError> {
    corpus()
        .iter()
        .find(|e| e.label == name || e.file.trim_end_matches(".grp") == name)
        .ok_or_else(|| DbError::UnknownEntry(name.to_string()))
}
