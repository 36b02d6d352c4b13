//! Embedded reference data: classical coverings of 12 and 120, the
//! three counterexample coverings with lcms `2^8·11·13`, `2^14·17·19`,
//! and `2^16·19·23`, and the minimal moduli set of all divisors > 1
//! of 80.

use crate::types::{CongruenceSet, FactoredInteger, ModuliSet};

#[derive(Clone, Debug)]
pub enum CorpusPayload {
    Covering(CongruenceSet),
    Moduli(ModuliSet),
}

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub name: &'static str,
    pub payload: CorpusPayload,
    pub lcm: FactoredInteger,
    pub provenance: &'static str,
}

impl CorpusEntry {
    pub fn covering(&self) -> Option<&CongruenceSet> {
        match &self.payload {
            CorpusPayload::Covering(c) => Some(c),
            CorpusPayload::Moduli(_) => None,
        }
    }

    pub fn moduli(&self) -> Option<&ModuliSet> {
        match &self.payload {
            CorpusPayload::Covering(_) => None,
            CorpusPayload::Moduli(m) => Some(m),
        }
    }
}

const ERDOS_12: &[(i64, i64)] = &[(0, 2), (0, 3), (1, 4), (1, 6), (11, 12)];

const EXAMPLE_B: &[(i64, i64)] = &[
    (0, 3), (0, 4), (0, 5), (1, 6), (6, 8), (3, 10),
    (5, 12), (11, 15), (7, 20), (10, 24), (2, 30), (34, 40),
    (59, 60), (98, 120),
];

const EXAMPLE_C: &[(i64, i64)] = &[
    (2, 3), (0, 4), (0, 5), (3, 6), (2, 8), (7, 10),
    (6, 12), (1, 15), (19, 20), (22, 24), (13, 30), (0, 40),
    (49, 60), (0, 120),
];

const C1_DATA: &[(i64, i64)] = &[
    (1, 2), (0, 4), (2, 8), (0, 11), (2, 13), (6, 16),
    (20, 22), (20, 26), (30, 32), (34, 44), (6, 52), (46, 64),
    (14, 88), (38, 104), (14, 128), (138, 143), (62, 176), (30, 208),
    (78, 256), (94, 286), (142, 352), (206, 416), (226, 572), (654, 704),
    (14, 832), (1062, 1144), (206, 1408), (78, 1664), (1214, 2288), (2510, 2816),
    (2766, 3328), (334, 4576), (4558, 9152), (7374, 18304),
];

const C2_DATA: &[(i64, i64)] = &[
    (1, 2), (0, 4), (2, 8), (14, 16), (0, 17), (1, 19),
    (22, 32), (14, 34), (8, 38), (6, 64), (54, 68), (38, 76),
    (102, 128), (94, 136), (6, 152), (38, 256), (70, 272), (262, 304),
    (245, 323), (422, 512), (486, 544), (230, 608), (678, 1024), (358, 1088),
    (358, 1216), (1078, 1292), (1190, 2048), (934, 2176), (1318, 2432), (1662, 2584),
    (2214, 4096), (4262, 4352), (4774, 4864), (2070, 5168), (166, 8192), (2214, 8704),
    (678, 9728), (12454, 16384), (8358, 17408), (15526, 19456), (32934, 34816), (30886, 38912),
    (2982, 41344), (28838, 69632), (41126, 77824), (20646, 139264), (102566, 155648), (95910, 165376),
    (200870, 278528), (20646, 311296), (129190, 330752), (166, 661504),
];

const C3_DATA: &[(i64, i64)] = &[
    (1, 2), (0, 4), (2, 8), (6, 16), (4, 19), (13, 23),
    (14, 32), (16, 38), (24, 46), (62, 64), (62, 76), (18, 92),
    (30, 128), (150, 152), (30, 184), (222, 256), (238, 304), (238, 368),
    (350, 512), (382, 608), (318, 736), (94, 1024), (286, 1216), (1438, 1472),
    (1630, 2048), (478, 2432), (1758, 2944), (1510, 3496), (606, 4096), (4446, 4864),
    (4190, 5888), (5822, 6992), (6750, 8192), (3166, 9728), (5726, 11776), (2654, 16384),
    (11870, 19456), (7774, 23552), (15646, 27968), (10846, 32768), (29278, 38912), (25182, 47104),
    (59998, 65536), (23134, 77824), (2654, 94208), (29534, 111872), (141918, 155648), (182878, 188416),
    (72798, 223744), (59998, 311296), (207454, 376832), (326238, 447488), (158302, 622592), (289374, 753664),
    (676446, 894976), (813662, 1245184), (813662, 1507328), (977502, 1789952), (404062, 3579904), (1288798, 7159808),
    (12544606, 14319616), (9071198, 28639232),
];

const M80: &[i64] = &[2, 4, 5, 8, 10, 16, 20, 40, 80];

fn covering_entry(
    name: &'static str,
    pairs: &[(i64, i64)],
    lcm: i64,
    provenance: &'static str,
) -> CorpusEntry {
    let covering = CongruenceSet::from_pairs(pairs).expect("embedded corpus data is valid");
    CorpusEntry {
        name,
        payload: CorpusPayload::Covering(covering),
        lcm: FactoredInteger::factorize(lcm).expect("embedded lcm is valid"),
        provenance,
    }
}

/// All embedded entries.
pub fn corpus() -> Vec<CorpusEntry> {
    let c_hat: Vec<(i64, i64)> = EXAMPLE_C
        .iter()
        .copied()
        .filter(|&p| p != (0, 40) && p != (0, 120))
        .collect();
    vec![
        covering_entry("erdos12", ERDOS_12, 12, "Erdős's covering of the divisors of 12"),
        covering_entry("exampleB", EXAMPLE_B, 120, "Erdős's covering with lcm 120"),
        covering_entry(
            "exampleC",
            EXAMPLE_C,
            120,
            "Krukenberg's covering of 120 padded with two redundant congruences",
        ),
        covering_entry("exampleC_hat", &c_hat, 120, "Krukenberg's minimal covering of 120"),
        covering_entry("C1", C1_DATA, 2i64.pow(8) * 11 * 13, "reference covering of 2^8·11·13"),
        covering_entry("C2", C2_DATA, 2i64.pow(14) * 17 * 19, "reference covering of 2^14·17·19"),
        covering_entry("C3", C3_DATA, 2i64.pow(16) * 19 * 23, "reference covering of 2^16·19·23"),
        CorpusEntry {
            name: "M80",
            payload: CorpusPayload::Moduli(
                ModuliSet::new(M80.to_vec()).expect("embedded moduli are valid"),
            ),
            lcm: FactoredInteger::factorize(80).expect("embedded lcm is valid"),
            provenance: "minimal moduli set of all divisors > 1 of 80",
        },
    ]
}

/// Looks an entry up by name (case-sensitive).
pub fn corpus_entry(name: &str) -> Option<CorpusEntry> {
    corpus().into_iter().find(|e| e.name == name)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::{self, Strategy};

    #[test]
    fn entry_sizes() {
        let sizes: Vec<(&str, usize)> = corpus()
            .iter()
            .filter_map(|e| e.covering().map(|c| (e.name, c.len())))
            .collect();
        assert_eq!(
            sizes,
            vec![
                ("erdos12", 5),
                ("exampleB", 14),
                ("exampleC", 14),
                ("exampleC_hat", 12),
                ("C1", 34),
                ("C2", 52),
                ("C3", 62),
            ]
        );
    }

    #[test]
    fn lcms_match_the_moduli() {
        for entry in corpus() {
            match &entry.payload {
                CorpusPayload::Covering(c) => {
                    assert_eq!(c.period().unwrap(), entry.lcm, "{}", entry.name);
                }
                CorpusPayload::Moduli(m) => {
                    assert_eq!(m.lcm().unwrap(), entry.lcm, "{}", entry.name);
                }
            }
        }
    }

    #[test]
    fn small_covering_entries_verify() {
        for name in ["erdos12", "exampleB", "exampleC", "exampleC_hat", "C1"] {
            let entry = corpus_entry(name).unwrap();
            let report = verify::is_covering(entry.covering().unwrap(), Strategy::Bitset).unwrap();
            assert!(report.is_covering, "{name} failed to verify");
        }
    }

    #[test]
    fn minimality_of_the_lcm_120_entries() {
        let b = corpus_entry("exampleB").unwrap();
        assert!(verify::is_minimal(b.covering().unwrap()).unwrap().is_minimal);

        let c = corpus_entry("exampleC").unwrap();
        let report = verify::is_minimal(c.covering().unwrap()).unwrap();
        assert!(!report.is_minimal);
        let removable: Vec<(i64, i64)> = report
            .removable
            .iter()
            .map(|k| (k.residue(), k.modulus()))
            .collect();
        assert_eq!(removable, vec![(0, 40), (0, 120)]);

        let c_hat = corpus_entry("exampleC_hat").unwrap();
        assert!(verify::is_minimal(c_hat.covering().unwrap()).unwrap().is_minimal);
    }

    #[test]
    fn lookup_by_name() {
        assert!(corpus_entry("C1").is_some());
        assert!(corpus_entry("M80").unwrap().moduli().is_some());
        assert!(corpus_entry("nope").is_none());
    }
}
