//! Moment test on classical configurations. Points of the spheres S^1, S^2 and
//! S^4 correspond to lines in R^2, C^2 and H^2, so spherical designs give
//! projective ones; several of them meet the linear programming bound.

use projbound::verifier::{default_tolerance, orthonormal_basis};
use projbound::{circle_design, line_from_sphere, verify, Field, PointSet, Quaternion, Result};

fn normalize(v: &[f64]) -> Vec<f64> {
    let r = v.iter().map(|c| c * c).sum::<f64>().sqrt();
    v.iter().map(|c| c / r).collect()
}

fn lines(field: Field, points: &[Vec<f64>]) -> Result<PointSet> {
    let nodes = points
        .iter()
        .map(|p| line_from_sphere(field, &normalize(p)))
        .collect::<Result<Vec<_>>>()?;
    PointSet::equal_weights(field, 2, nodes)
}

fn icosahedron() -> Vec<Vec<f64>> {
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    let mut v = Vec::new();
    for s1 in [-1.0, 1.0] {
        for s2 in [-1.0, 1.0] {
            v.push(vec![0.0, s1, s2 * phi]);
            v.push(vec![s1, s2 * phi, 0.0]);
            v.push(vec![s2 * phi, 0.0, s1]);
        }
    }
    v
}

/// Regular simplex with 6 vertices on S^4, as rows of a centred identity in R^6
/// rotated into the hyperplane orthogonal to (1, ..., 1).
fn simplex_s4() -> Vec<Vec<f64>> {
    let n = 6;
    let centred: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 } - 1.0 / n as f64).collect())
        .collect();
    // Gram–Schmidt basis of the hyperplane
    let mut basis: Vec<Vec<f64>> = Vec::new();
    for v in &centred {
        let mut w = v.clone();
        for b in &basis {
            let d: f64 = w.iter().zip(b).map(|(x, y)| x * y).sum();
            w.iter_mut().zip(b).for_each(|(x, y)| *x -= d * y);
        }
        let r = w.iter().map(|x| x * x).sum::<f64>().sqrt();
        if r > 1e-9 {
            basis.push(w.iter().map(|x| x / r).collect());
        }
    }
    centred
        .iter()
        .map(|v| basis.iter().map(|b| v.iter().zip(b).map(|(x, y)| x * y).sum()).collect())
        .collect()
}

fn cross_polytope(dim: usize) -> Vec<Vec<f64>> {
    (0..dim)
        .flat_map(|i| {
            [1.0, -1.0].map(|s| (0..dim).map(|j| if i == j { s } else { 0.0 }).collect())
        })
        .collect()
}

fn report(name: &str, ps: &PointSet, p: usize) -> Result<()> {
    let r = verify(ps, p, default_tolerance(ps.len()))?;
    println!(
        "{name:<34} {}  p = {p:>2}  n = {:>2}  max|M_k| = {:.2e}  lp = {:>2}  yudin = {:>2}  {}",
        if r.pass { "PASS" } else { "FAIL" },
        r.n,
        r.max_abs_moment,
        r.lp_bound,
        r.yudin_bound,
        if r.tight_lp { "tight" } else { "" }
    );
    Ok(())
}

fn main() -> Result<()> {
    report("circle, 6 lines in R^2", &circle_design(6)?, 10)?;
    report("circle, 6 lines in R^2", &circle_design(6)?, 12)?;

    let tetra = vec![vec![1.0, 1.0, 1.0], vec![1.0, -1.0, -1.0], vec![-1.0, 1.0, -1.0], vec![-1.0, -1.0, 1.0]];
    report("tetrahedron in C^2", &lines(Field::C, &tetra)?, 4)?;
    report("octahedron in C^2", &lines(Field::C, &cross_polytope(3))?, 6)?;
    report("icosahedron in C^2", &lines(Field::C, &icosahedron())?, 10)?;
    report("icosahedron in C^2", &lines(Field::C, &icosahedron())?, 12)?;
    report("simplex in H^2", &lines(Field::H, &simplex_s4())?, 4)?;
    report("cross-polytope in H^2", &lines(Field::H, &cross_polytope(5))?, 6)?;

    // The 6 diagonals of the icosahedron as lines in R^3.
    let diagonals: Vec<Vec<Quaternion>> = icosahedron()
        .iter()
        .filter(|v| v.iter().find(|c| **c != 0.0).is_some_and(|c| *c > 0.0))
        .map(|v| normalize(v).into_iter().map(Quaternion::real).collect())
        .collect();
    report("icosahedron diagonals in R^3", &PointSet::equal_weights(Field::R, 3, diagonals)?, 4)?;

    for field in Field::ALL {
        report(&format!("orthonormal basis of {field}^3"), &orthonormal_basis(field, 3)?, 2)?;
        report(&format!("orthonormal basis of {field}^3"), &orthonormal_basis(field, 3)?, 4)?;
    }
    Ok(())
}
