use std::collections::BTreeMap;

use chronos_core::{LinearSystem64, Mat64, TimeScale64};

/// Names accepted by `--system builtin:<name>`.
pub const NAMES: [&str; 3] = ["eq22", "r24", "nonhom"];

pub fn system(name: &str) -> Option<LinearSystem64> {
    let (ts, a, b): (TimeScale64, [[f64; 2]; 2], Vec<Vec<f64>>) = match name {
        "eq22" => (
            TimeScale64::integers(0, 2).ok()?,
            [[-1.0, 1.0], [1.0, 0.0]],
            vec![vec![1.0, 1.0], vec![0.0, 1.0]],
        ),
        "r24" => (
            TimeScale64::custom(vec![(0.0, 0.0), (1.0, 2.0), (3.0, 3.0)]).ok()?,
            [[-1.0, 0.0], [1.0, -1.0]],
            vec![vec![1.0], vec![0.0]],
        ),
        "nonhom" => (
            TimeScale64::points(&[0.0, 1.0, 2.0, 4.0]).ok()?,
            [[-0.5, 0.0], [1.0, -0.5]],
            vec![vec![1.0], vec![0.0]],
        ),
        _ => return None,
    };
    LinearSystem64::new(ts, Mat64::from_rows(&a).ok()?, Mat64::from_rows(&b).ok()?).ok()
}

pub fn all() -> BTreeMap<&'static str, LinearSystem64> {
    NAMES
        .iter()
        .map(|&n| (n, system(n).expect("built-in systems are valid")))
        .collect()
}
