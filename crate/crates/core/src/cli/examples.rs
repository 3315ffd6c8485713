//! Built-in varieties with known projective ED degrees.

use crate::topology::StratumDatum;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BuiltinExample {
    pub name: &'static str,
    /// Row label in the suite table.
    pub suite_label: &'static str,
    pub polynomial: &'static str,
    pub variables: &'static [&'static str],
    pub expected_ped: i64,
    /// Expected number of distinct points of `X ∩ Q`, for plane curves.
    pub expected_xq: Option<usize>,
    strata: &'static [(&'static str, i64, i64)],
}

impl BuiltinExample {
    /// Hand-computed strata of `X ∩ U`, when the automated topology does not apply.
    pub fn strata(&self) -> Vec<StratumDatum> {
        self.strata
            .iter()
            .map(|&(label, chi, eu)| StratumDatum {
                label: label.to_string(),
                chi,
                eu,
            })
            .collect()
    }

    pub fn variables(&self) -> Vec<String> {
        self.variables.iter().map(|v| v.to_string()).collect()
    }
}

const PLANE: &[&str] = &["x0", "x1", "x2"];

pub const EXAMPLES: &[BuiltinExample] = &[
    BuiltinExample {
        name: "nodal-cubic-1",
        suite_label: "example-4.1",
        polynomial: "x0^2*x2 - x1^2*(x1+x2)",
        variables: PLANE,
        expected_ped: 7,
        expected_xq: Some(6),
        strata: &[],
    },
    BuiltinExample {
        name: "nodal-cubic-2",
        suite_label: "example-4.2",
        polynomial: "x0^2*x1 - (x1 - i*x2)^2*x2",
        variables: PLANE,
        expected_ped: 7,
        expected_xq: Some(5),
        strata: &[],
    },
    BuiltinExample {
        name: "tangent-cubic",
        suite_label: "example-4.3",
        polynomial: "x0^3 - (i*x0^2 + x1^2)*x2",
        variables: PLANE,
        expected_ped: 6,
        expected_xq: Some(5),
        strata: &[],
    },
    BuiltinExample {
        name: "whitney-surface",
        suite_label: "example-4.4",
        polynomial: "x0^2*x1 - x2*x3^2",
        variables: &["x0", "x1", "x2", "x3"],
        expected_ped: 10,
        expected_xq: None,
        strata: &[("X-cap-U", 13, 1), ("S2-cap-U", -3, 1)],
    },
    BuiltinExample {
        name: "hyperplane",
        suite_label: "hyperplane",
        polynomial: "x0 + 2*x1 + 3*x2",
        variables: PLANE,
        expected_ped: 1,
        expected_xq: Some(2),
        strata: &[],
    },
    BuiltinExample {
        name: "smooth-conic",
        suite_label: "smooth-conic",
        polynomial: "x0^2 + 2*x1^2 + 5*x2^2",
        variables: PLANE,
        expected_ped: 4,
        expected_xq: Some(4),
        strata: &[],
    },
];

pub fn find_example(name: &str) -> Option<&'static BuiltinExample> {
    EXAMPLES.iter().find(|e| e.name == name)
}

pub fn example_names() -> Vec<&'static str> {
    EXAMPLES.iter().map(|e| e.name).collect()
}
