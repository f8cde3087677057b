#![allow(dead_code)]

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

use rand::rngs::StdRng;
use rand::Rng;
use sepflux::{CurveShadow, MappingWord, SeparatingClass, SurfaceSpec};

pub fn random_shadow(rng: &mut StdRng, s: &SurfaceSpec) -> CurveShadow {
    let mut levels = BTreeMap::new();
    for arm in 0..s.arm_count() {
        if rng.gen_bool(0.5) {
            levels.insert(arm, rng.gen_range(0..6));
        }
    }
    CurveShadow::arms(s, levels)
        .unwrap()
        .with_core_handles(s, rng.gen_range(0..=s.core_genus()))
        .unwrap()
}

fn random_exponent(rng: &mut StdRng, budget: u64) -> i64 {
    let k = rng.gen_range(1..=budget.min(3)) as i64;
    if rng.gen_bool(0.5) {
        k
    } else {
        -k
    }
}

/// Random word of total weight at most `max_weight`, mixing twists and shifts.
pub fn random_word(rng: &mut StdRng, s: &SurfaceSpec, max_weight: u64) -> MappingWord {
    let target = rng.gen_range(0..=max_weight);
    let mut w = MappingWord::identity();
    while w.weight() < target {
        let k = random_exponent(rng, target - w.weight());
        let letter = if s.arm_count() >= 2 && rng.gen_bool(0.7) {
            let from = rng.gen_range(0..s.arm_count());
            let mut to = rng.gen_range(0..s.arm_count() - 1);
            if to >= from {
                to += 1;
            }
            MappingWord::shift(from, to, k).unwrap()
        } else {
            MappingWord::twist(random_shadow(rng, s), k).unwrap()
        };
        w = w.compose(&letter);
    }
    w
}

pub fn random_twist_word(rng: &mut StdRng, s: &SurfaceSpec, max_weight: u64) -> MappingWord {
    let target = rng.gen_range(1..=max_weight);
    let mut w = MappingWord::identity();
    while w.weight() < target {
        let k = random_exponent(rng, target - w.weight());
        w = w.compose(&MappingWord::twist(random_shadow(rng, s), k).unwrap());
    }
    w
}

/// Every nonzero class of the form `class(P)`, one per partition `P`.
pub fn simple_nonzero_classes(n: usize) -> Vec<(Vec<usize>, SeparatingClass)> {
    let s = SurfaceSpec::with_arms(0, n);
    (1u32..(1 << n) - 1)
        .map(|mask| {
            let p: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
            let v = sepflux::homology::class_of_partition(&s, &sepflux::EndPartition::new(p.iter().copied())).unwrap();
            (p, v)
        })
        .collect()
}

/// All set partitions of `items` into nonempty blocks.
pub fn set_partitions(items: &[usize]) -> Vec<Vec<Vec<usize>>> {
    let Some((&first, rest)) = items.split_first() else {
        return vec![vec![]];
    };
    let mut out = Vec::new();
    for partition in set_partitions(rest) {
        for i in 0..partition.len() {
            let mut p = partition.clone();
            p[i].insert(0, first);
            out.push(p);
        }
        let mut p = partition;
        p.push(vec![first]);
        out.push(p);
    }
    out
}

pub struct GoldenCase {
    pub name: &'static str,
    pub args: &'static [&'static str],
    pub exit: i32,
    /// Graph file written by `slice`, compared against `<name>.graph`.
    pub graph: bool,
}

const fn case(name: &'static str, args: &'static [&'static str], exit: i32) -> GoldenCase {
    GoldenCase {
        name,
        args,
        exit,
        graph: false,
    }
}

pub const GOLDEN_CASES: &[GoldenCase] = &[
    case("classify_ladder", &["classify", "ladder.json"], 0),
    case("classify_z5", &["classify", "z5.json"], 0),
    case("classify_genus1", &["classify", "genus1.json"], 0),
    case("classify_malformed", &["classify", "malformed.json"], 2),
    case("classify_unknown_key", &["classify", "unknown_key.json"], 2),
    case("classify_duplicate_ids", &["classify", "duplicate_ids.json"], 3),
    case("rank_ladder", &["rank", "ladder.json"], 0),
    case("rank_z5", &["rank", "z5.json"], 0),
    case("rank_three_arms", &["rank", "three_arms.json"], 0),
    case("rank_genus1", &["rank", "genus1.json"], 4),
    case(
        "eval_ladder_dual_shift",
        &["eval", "ladder.json", "--partition", "e1", "--word", "S(2,1)"],
        0,
    ),
    case(
        "eval_ladder_identity",
        &["eval", "ladder.json", "--partition", "e1", "--word", "1"],
        0,
    ),
    case(
        "eval_ladder_inverse",
        &["eval", "ladder.json", "--class", "-1", "--word", "S(2,1)^3 * S(1,2)"],
        0,
    ),
    case(
        "eval_three_arms_linear",
        &["eval", "three_arms.json", "--class", "2,-1", "--word", "S(3,1)"],
        0,
    ),
    case(
        "eval_z5_identity",
        &["eval", "z5.json", "--partition", "e1", "--word", "1"],
        0,
    ),
    case(
        "eval_unknown_end",
        &["eval", "ladder.json", "--partition", "e9", "--word", "S(2,1)"],
        5,
    ),
    case(
        "eval_wrong_dimension",
        &["eval", "ladder.json", "--class", "1,0", "--word", "S(2,1)"],
        5,
    ),
    case(
        "eval_bad_word",
        &["eval", "ladder.json", "--partition", "e1", "--word", "S(2,"],
        2,
    ),
    case(
        "eval_malformed_surface",
        &["eval", "malformed.json", "--partition", "e1", "--word", "1"],
        2,
    ),
    case("pair_ladder", &["pair", "ladder.json"], 0),
    case("pair_four_arms", &["pair", "four_arms.json"], 0),
    case("pair_z5", &["pair", "z5.json"], 4),
    case("factor_ladder_shift", &["factor", "ladder.json", "--word", "S(1,2)"], 0),
    case("factor_ladder_dual", &["factor", "ladder.json", "--word", "S(2,1)"], 0),
    case(
        "factor_ladder_twist",
        &["factor", "ladder.json", "--word", "T(P={e1}; l=2; h=0)^3"],
        0,
    ),
    case(
        "factor_ladder_mixed",
        &["factor", "ladder.json", "--word", "S(1,2)*T(P={e1}; l=2; h=0)"],
        0,
    ),
    case("factor_z5_identity", &["factor", "z5.json", "--word", "1"], 0),
    case("factor_bad_word", &["factor", "ladder.json", "--word", "S(1,2)^0"], 2),
    GoldenCase {
        name: "slice_ladder_m3",
        args: &["slice", "ladder.json", "--partition", "e1", "--depth", "3"],
        exit: 0,
        graph: true,
    },
    GoldenCase {
        name: "slice_ladder_m0",
        args: &["slice", "ladder.json", "--partition", "e1", "--depth", "0"],
        exit: 0,
        graph: true,
    },
    GoldenCase {
        name: "slice_core1_m1",
        args: &["slice", "ladder_core1.json", "--partition", "e1", "--depth", "1"],
        exit: 0,
        graph: true,
    },
    case(
        "slice_zero_class",
        &["slice", "ladder.json", "--partition", "e1,e2", "--depth", "2"],
        5,
    ),
    case(
        "slice_z5",
        &["slice", "z5.json", "--partition", "e1", "--depth", "2"],
        5,
    ),
];

pub fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests").join("golden")
}

/// Run one golden case against the built binary. With `UPDATE_GOLDEN=1` the
/// expected files are rewritten instead of compared.
pub fn run_golden(case: &GoldenCase) -> Result<(), String> {
    let dir = golden_dir();
    let tmp = tempfile::tempdir().map_err(|e| e.to_string())?;
    let graph_path = tmp.path().join("slice.graph");
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_sepflux"));
    cmd.current_dir(&dir).args(case.args);
    if case.args[0] == "slice" {
        cmd.arg("--out").arg(&graph_path);
    }
    let output = cmd.output().map_err(|e| e.to_string())?;
    let code = output.status.code().unwrap_or(-1);
    let stdout = String::from_utf8_lossy(&output.stdout).into_owned();
    let stderr = String::from_utf8_lossy(&output.stderr).into_owned();

    let expected_stdout = dir.join(format!("{}.stdout", case.name));
    let expected_graph = dir.join(format!("{}.graph", case.name));
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    if update {
        fs::write(&expected_stdout, &stdout).map_err(|e| e.to_string())?;
        if case.graph {
            fs::copy(&graph_path, &expected_graph).map_err(|e| e.to_string())?;
        }
    }

    if code != case.exit {
        return Err(format!(
            "{}: exit {code}, expected {} (stderr: {stderr})",
            case.name, case.exit
        ));
    }
    if case.exit != 0 && !stderr.starts_with("error: ") {
        return Err(format!("{}: missing diagnostic on stderr", case.name));
    }
    let want = fs::read_to_string(&expected_stdout).map_err(|e| format!("{}: {e}", case.name))?;
    if stdout != want {
        return Err(format!("{}: stdout {stdout:?}, expected {want:?}", case.name));
    }
    if case.graph {
        let got = fs::read_to_string(&graph_path).map_err(|e| e.to_string())?;
        let want = fs::read_to_string(&expected_graph).map_err(|e| format!("{}: {e}", case.name))?;
        if got != want {
            return Err(format!("{}: graph differs:\n{got}\nexpected:\n{want}", case.name));
        }
    }
    Ok(())
}
