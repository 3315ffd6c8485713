use serde::{Deserialize, Serialize};

use super::{CurveSingularity, TopologyError};

/// Genus of the normalization of a reduced plane curve of degree `d`, from
/// the delta invariants of its singular points. For a curve with `k`
/// components this is `Σ g_i - (k - 1)`, so it can be negative.
pub fn genus(degree: u32, singularities: &[CurveSingularity]) -> i64 {
    let d = degree as i64;
    let arithmetic = (d - 1) * (d - 2) / 2;
    arithmetic - singularities.iter().map(|s| s.delta as i64).sum::<i64>()
}

/// `χ(X) = 2 - 2g - Σ (r_p - 1)` for a reduced plane curve.
pub fn euler_characteristic_curve(
    degree: u32,
    singularities: &[CurveSingularity],
) -> Result<i64, TopologyError> {
    let g = genus(degree, singularities);
    // At most `d` components, each of genus at least zero.
    if g < 1 - degree as i64 {
        return Err(TopologyError::NegativeGenus(g));
    }
    let branches: i64 = singularities
        .iter()
        .map(|s| s.branch_count as i64 - 1)
        .sum();
    Ok(2 - 2 * g - branches)
}

/// One stratum of a Whitney stratification with its Euler characteristic
/// and the value of the Euler obstruction on it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StratumDatum {
    pub label: String,
    pub chi: i64,
    pub eu: i64,
}

/// `Σ χ(S)·Eu(S)` over the strata.
pub fn weighted_euler_characteristic(strata: &[StratumDatum]) -> i64 {
    strata.iter().map(|s| s.chi * s.eu).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smooth_curves() {
        assert_eq!(euler_characteristic_curve(1, &[]).unwrap(), 2);
        assert_eq!(euler_characteristic_curve(2, &[]).unwrap(), 2);
        assert_eq!(euler_characteristic_curve(3, &[]).unwrap(), 0);
        assert_eq!(euler_characteristic_curve(4, &[]).unwrap(), -4);
    }

    #[test]
    fn nodal_and_cuspidal_cubics_are_rational() {
        let node = CurveSingularity::node(vec![]);
        let cusp = CurveSingularity::cusp(vec![]);
        assert_eq!(genus(3, &[node.clone()]), 0);
        assert_eq!(euler_characteristic_curve(3, &[node.clone()]).unwrap(), 1);
        assert_eq!(euler_characteristic_curve(3, &[cusp]).unwrap(), 2);
        // A conic and a secant line: two spheres glued at two points.
        assert_eq!(euler_characteristic_curve(3, &[node.clone(), node.clone()]).unwrap(), 2);
        // Three general lines meet in three nodes; four nodes is impossible.
        assert_eq!(euler_characteristic_curve(3, &vec![node.clone(); 3]).unwrap(), 3);
        assert!(matches!(
            euler_characteristic_curve(3, &vec![node; 4]),
            Err(TopologyError::NegativeGenus(-3))
        ));
    }

    #[test]
    fn weighted_sum() {
        let strata = vec![
            StratumDatum { label: "smooth".into(), chi: -1, eu: 1 },
            StratumDatum { label: "node".into(), chi: 1, eu: 2 },
        ];
        assert_eq!(weighted_euler_characteristic(&strata), 1);
        assert_eq!(weighted_euler_characteristic(&[]), 0);
    }
}
