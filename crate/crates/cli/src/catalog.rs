use serde::Serialize;
use tsra_core::cocycles::admissible_tuples;

use crate::{sha256_hex, Report, Scenario};

macro_rules! bundled {
    ($($file:literal),* $(,)?) => {
        &[$(($file, include_str!(concat!("../scenarios/", $file)))),*]
    };
}

/// Scenarios shipped with the binary, by file name.
pub const BUNDLED: &[(&str, &str)] = bundled!(
    "dihedral_m2.json",
    "dihedral_m3.json",
    "dihedral_m4.json",
    "i2_6.json",
    "s3_cherednik.json",
    "s3_cherednik_bad_c.json",
    "z2_cherednik.json",
    "identity.json",
    "s4_over_s3.json",
    "z4_over_z2.json",
    "g214_trivial.json",
    "g412_mu.json",
);

/// Looks up a bundled scenario by file name, with or without `.json`.
pub fn bundled_scenario(name: &str) -> Option<(&'static str, &'static str)> {
    let stem = name.strip_suffix(".json").unwrap_or(name);
    BUNDLED.iter().copied().find(|(file, _)| file.strip_suffix(".json") == Some(stem))
}

#[derive(Serialize)]
struct Constructor {
    #[serde(rename = "type")]
    kind: &'static str,
    parameters: &'static [&'static str],
    description: &'static str,
}

#[derive(Serialize)]
struct AdmissibleRow {
    m_parity: &'static str,
    n: &'static str,
    /// `(γ, λ, μ)`, each ±1.
    tuples: Vec<(i8, i8, i8)>,
}

#[derive(Serialize)]
struct CocycleFamily {
    #[serde(rename = "type")]
    kind: &'static str,
    parameters: &'static [&'static str],
    description: &'static str,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    admissible: Vec<AdmissibleRow>,
}

#[derive(Serialize)]
struct BundledEntry {
    file: &'static str,
    name: String,
    description: Option<String>,
    sha256: String,
}

#[derive(Serialize)]
struct Catalog {
    groups: Vec<Constructor>,
    cocycles: Vec<CocycleFamily>,
    coboundaries: Vec<Constructor>,
    representations: Vec<Constructor>,
    scenarios: Vec<BundledEntry>,
}

fn admissible_rows() -> Vec<AdmissibleRow> {
    let mut rows = Vec::new();
    for (m, parity) in [(2, "even"), (1, "odd")] {
        for (n, label) in [(1, "1"), (2, "2"), (3, "3"), (4, ">= 4")] {
            rows.push(AdmissibleRow { m_parity: parity, n: label, tuples: admissible_tuples(m, n) });
        }
    }
    rows
}

/// Group constructors, cocycle families with their admissible parameters,
/// and the bundled scenarios.
pub fn list_catalog() -> Report {
    let groups = vec![
        Constructor { kind: "cyclic", parameters: &["n"], description: "Z/n with generator g" },
        Constructor { kind: "dihedral", parameters: &["k"], description: "symmetries of the k-gon, order 2k, reflections s1, s2" },
        Constructor { kind: "symmetric", parameters: &["n"], description: "S_n with adjacent transpositions s1..s{n-1}" },
        Constructor {
            kind: "generalized_symmetric",
            parameters: &["m", "n"],
            description: "G(m,1,n) of order n!·m^n with generators s1..s{n-1}, w1..wn",
        },
        Constructor { kind: "product", parameters: &["factors"], description: "direct product of catalog groups" },
        Constructor {
            kind: "generators",
            parameters: &["degree", "permutations", "names"],
            description: "permutation group from 1-based cycle notation",
        },
        Constructor { kind: "matrices", parameters: &["matrices", "names"], description: "matrix group of finite order" },
        Constructor { kind: "table", parameters: &["rows", "labels"], description: "explicit Cayley table" },
    ];
    let cocycles = vec![
        CocycleFamily { kind: "trivial", parameters: &[], description: "ψ ≡ 1", admissible: Vec::new() },
        CocycleFamily {
            kind: "dihedral_nontrivial",
            parameters: &["m"],
            description: "on the dihedral group with k = 2m: ψ(r^i s^a, r^j s^b) = ε^{a·j}, ε = e^{2πi/2m}",
            admissible: Vec::new(),
        },
        CocycleFamily {
            kind: "generalized_symmetric",
            parameters: &["m", "n", "gamma", "lambda", "mu"],
            description: "class (γ,λ,μ) on G(m,1,n) from the twisted presentation; each parameter is ±1",
            admissible: admissible_rows(),
        },
        CocycleFamily {
            kind: "table",
            parameters: &["rows"],
            description: "row-major table of roots of unity {\"k\",\"n\"}",
            admissible: Vec::new(),
        },
    ];
    let coboundaries = vec![
        Constructor { kind: "trivial", parameters: &[], description: "δ ≡ 1" },
        Constructor {
            kind: "dihedral_class_function",
            parameters: &[],
            description: "makes dihedral_nontrivial class-function compatible without changing regularity",
        },
    ];
    let representations = vec![
        Constructor {
            kind: "matrices",
            parameters: &["conductor", "form", "matrices"],
            description: "generator images on U; standard form unless given",
        },
        Constructor {
            kind: "cherednik_double",
            parameters: &["h_rep"],
            description: "U = h ⊕ h* from generator images on h",
        },
    ];
    let scenarios = BUNDLED
        .iter()
        .map(|(file, text)| {
            let parsed = Scenario::parse(text).expect("bundled scenarios parse");
            BundledEntry { file, name: parsed.name, description: parsed.description, sha256: sha256_hex(text.as_bytes()) }
        })
        .collect();
    let catalog = Catalog { groups, cocycles, coboundaries, representations, scenarios };
    let bundle: String = BUNDLED.iter().map(|(_, t)| *t).collect();
    Report {
        command: "catalog".into(),
        scenario: String::new(),
        scenario_sha256: sha256_hex(bundle.as_bytes()),
        seed: 0,
        tolerance: tsra_core::twisted_algebra::SpectralOptions::default().tolerance,
        inputs: serde_json::Value::Null,
        passed: true,
        exact: true,
        results: serde_json::to_value(catalog).expect("catalog serializes"),
        timings: None,
    }
}
