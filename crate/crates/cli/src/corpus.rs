//! The shipped example corpus: parameter modules spanning d in {1, 2},
//! r in {1, 2, 3}, Cohen-Macaulay and not, each file carrying its
//! independently derived expected values.

pub struct CorpusEntry {
    pub name: &'static str,
    pub text: &'static str,
}

pub fn entries() -> Vec<CorpusEntry> {
    vec![
        CorpusEntry { name: "cm_kx_r1", text: include_str!("../corpus/cm_kx_r1.br") },
        CorpusEntry { name: "cm_kxy_r1", text: include_str!("../corpus/cm_kxy_r1.br") },
        CorpusEntry { name: "noncm_kxy_r1", text: include_str!("../corpus/noncm_kxy_r1.br") },
        CorpusEntry {
            name: "cm_hypersurface_r1",
            text: include_str!("../corpus/cm_hypersurface_r1.br"),
        },
        CorpusEntry { name: "noncm_kxyz_r1", text: include_str!("../corpus/noncm_kxyz_r1.br") },
        CorpusEntry { name: "cm_kx_r2", text: include_str!("../corpus/cm_kx_r2.br") },
        CorpusEntry { name: "cm_kxy_r2", text: include_str!("../corpus/cm_kxy_r2.br") },
        CorpusEntry { name: "cm_kx_r3", text: include_str!("../corpus/cm_kx_r3.br") },
        CorpusEntry { name: "noncm_kxy_r2", text: include_str!("../corpus/noncm_kxy_r2.br") },
        CorpusEntry { name: "cm_kx_r2_skew", text: include_str!("../corpus/cm_kx_r2_skew.br") },
    ]
}

/// Entries whose base ring is Cohen-Macaulay, by their expect metadata.
pub fn cm_names() -> Vec<&'static str> {
    vec!["cm_kx_r1", "cm_kxy_r1", "cm_hypersurface_r1", "cm_kx_r2", "cm_kxy_r2", "cm_kx_r3", "cm_kx_r2_skew"]
}
