//! Embedded reference datasets.
//!
//! `table1` is a 30-row, 3-part artificial dataset used throughout the test
//! suite as ground truth; it is compiled in verbatim (as the printed decimal
//! strings) so regression checks do not depend on run-time files and CSV
//! export is byte-stable. `synthetic_recovery` is a seeded dataset that is
//! exactly multivariate normal in the isometric α = 0.5 coordinates, used to
//! exercise α selection.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::composition::{Composition, CompositionDataset};
use crate::helmert::HelmertBasis;
use crate::transforms::inverse_alpha_isometric;

/// Row ids and printed values of the embedded artificial dataset.
pub const TABLE1: [(&str, [&str; 3]); 30] = [
    ("A1", ["0.4355095", "0.3392920924", "0.2251984"]),
    ("A2", ["0.4388882", "0.2135973967", "0.3475144"]),
    ("A3", ["0.4266460", "0.0305602623", "0.5427937"]),
    ("A4", ["0.4225122", "0.4097265913", "0.1677612"]),
    ("A5", ["0.4240518", "0.3024372049", "0.2735110"]),
    ("A6", ["0.4315424", "0.3605322539", "0.2079254"]),
    ("A7", ["0.4337943", "0.2779268820", "0.2882788"]),
    ("A8", ["0.4358406", "0.0006831432", "0.5634762"]),
    ("A9", ["0.4300394", "0.1057353415", "0.4642253"]),
    ("A10", ["0.4279817", "0.2512896242", "0.3207287"]),
    ("A11", ["0.4310879", "0.1469908804", "0.4219212"]),
    ("A12", ["0.4206820", "0.2268498575", "0.3524682"]),
    ("A13", ["0.4396177", "0.3852283802", "0.1751539"]),
    ("A14", ["0.4265380", "0.1160721475", "0.4573898"]),
    ("A15", ["0.4371975", "0.2550170900", "0.3077854"]),
    ("A16", ["0.4244092", "0.0314046749", "0.5441861"]),
    ("A17", ["0.4320087", "0.1992476493", "0.3687437"]),
    ("A18", ["0.4394902", "0.2748886793", "0.2856211"]),
    ("A19", ["0.4283819", "0.0134845902", "0.5581335"]),
    ("A20", ["0.4319368", "0.0743081935", "0.4937550"]),
    ("A21", ["0.4232230", "0.2074545214", "0.3693225"]),
    ("A22", ["0.4309724", "0.3602299476", "0.2087976"]),
    ("A23", ["0.4272409", "0.2970880808", "0.2756710"]),
    ("A24", ["0.4359625", "0.0453307017", "0.5187068"]),
    ("A25", ["0.4267075", "0.4053411348", "0.1679513"]),
    ("A26", ["0.4396363", "0.1278193992", "0.4325443"]),
    ("A27", ["0.4355290", "0.0837220492", "0.4807489"]),
    ("A28", ["0.4226007", "0.0204375902", "0.5569617"]),
    ("A29", ["0.4366681", "0.2144233973", "0.3489085"]),
    ("A30", ["0.4242957", "0.3395783944", "0.2361259"]),
];

/// The 30×3 artificial dataset, components A, B, C and row ids A1..A30.
///
/// The printed values are rounded and do not sum exactly to 1; rows are
/// re-closed on load.
pub fn load_fixture_table1() -> CompositionDataset {
    let mut rows = Vec::with_capacity(TABLE1.len());
    let mut ids = Vec::with_capacity(TABLE1.len());
    for (id, vals) in TABLE1 {
        let parsed: Vec<f64> = vals
            .iter()
            .map(|s| s.parse().expect("fixture values parse"))
            .collect();
        rows.push(Composition::closure(&parsed).expect("fixture rows are valid"));
        ids.push(id.to_string());
    }
    CompositionDataset::new(rows, vec!["A".into(), "B".into(), "C".into()], ids)
        .expect("fixture is well-formed")
}

/// The dataset as CSV with header and row ids, byte-stable.
pub fn table1_csv() -> String {
    let mut out = String::from("id,A,B,C\n");
    for (id, vals) in TABLE1 {
        out.push_str(id);
        for v in vals {
            out.push(',');
            out.push_str(v);
        }
        out.push('\n');
    }
    out
}

/// Names of the fixtures [`fixture_csv`] knows about.
pub const FIXTURE_NAMES: [&str; 2] = ["table1", "recovery"];

/// CSV text of a named fixture, or `None` for an unknown name.
pub fn fixture_csv(name: &str) -> Option<String> {
    match name {
        "table1" => Some(table1_csv()),
        "recovery" => {
            let ds = synthetic_recovery_dataset();
            let mut out = String::from("id,c1,c2,c3\n");
            for (id, row) in ds.row_ids().iter().zip(ds.rows()) {
                out.push_str(id);
                for p in row.parts() {
                    out.push_str(&format!(",{p:.17}"));
                }
                out.push('\n');
            }
            Some(out)
        }
        _ => None,
    }
}

/// Seed and true α of the shipped recovery dataset.
pub const RECOVERY_SEED: u64 = 20110531;
pub const RECOVERY_ALPHA: f64 = 0.5;
pub const RECOVERY_N: usize = 500;

/// 500 three-part compositions whose α = 0.5 isometric coordinates are drawn
/// from a fixed bivariate normal (seeded; draws that would leave the simplex
/// are rejected and redrawn).
pub fn synthetic_recovery_dataset() -> CompositionDataset {
    let h = HelmertBasis::new(3).expect("D = 3");
    let mut rng = ChaCha8Rng::seed_from_u64(RECOVERY_SEED);
    // lower-triangular factor of the z-space covariance
    let chol = [[0.5, 0.0], [0.15, 0.45]];
    let mean = [0.1, -0.05];
    let mut rows = Vec::with_capacity(RECOVERY_N);
    while rows.len() < RECOVERY_N {
        let e1: f64 = StandardNormal.sample(&mut rng);
        let e2: f64 = StandardNormal.sample(&mut rng);
        let z = [
            mean[0] + chol[0][0] * e1,
            mean[1] + chol[1][0] * e1 + chol[1][1] * e2,
        ];
        if let Ok(x) = inverse_alpha_isometric(&z, RECOVERY_ALPHA, &h) {
            rows.push(x);
        }
    }
    CompositionDataset::from_rows(rows).expect("generated rows are valid")
}
