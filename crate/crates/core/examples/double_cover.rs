//! The sphere-section system counts every critical point twice, in antipodal pairs.

use peddeg::ed::{
    count_cone_critical_points, count_double_cover_critical_points, sample_generic_beta,
    CountOptions,
};
use peddeg::homotopy::TrackerConfig;
use peddeg::poly::parse_polynomial;

fn main() {
    let f = parse_polynomial("x0^2*x2 - x1^2*(x1+x2)", &["x0", "x1", "x2"]).unwrap();
    let g = sample_generic_beta(2, 11, false).unwrap();
    let cfg = TrackerConfig::with_seed(11);
    let opts = CountOptions::default();

    let cone = count_cone_critical_points(&f, &g, &cfg, &opts).unwrap();
    let cover = count_double_cover_critical_points(&f, &g, &cfg, &opts).unwrap();
    println!("cone: {}   cover: {}   cover / 2 = {}", cone.count, cover.count, cover.count / 2);

    let paired = cover.witnesses.iter().all(|x| {
        cover.witnesses.iter().any(|y| {
            x.iter().zip(y).map(|(a, b)| (a + b).norm()).fold(0.0, f64::max) < 1e-8
        })
    });
    println!("every witness has its antipode: {paired}");
}
