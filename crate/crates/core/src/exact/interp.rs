
use super::{Rat, TPoly};
use crate::error::ExactError;

/// Interpolates the unique polynomial of degree <= `degree_bound` through
/// the given points, using Newton's divided differences on the first
/// `degree_bound + 1` points and checking the remainder against the result.
///
/// A point that the interpolant misses means no polynomial of the stated
/// degree fits, which signals a wrong degree bound upstream.
pub fn lagrange_interpolate(
    points: &[(Rat, Rat)],
    degree_bound: usize,
) -> Result<TPoly, ExactError> {
    let need = degree_bound + 1;
    if points.len() < need {
        return Err(ExactError::NotEnoughPoints {
            have: points.len(),
            need,
        });
    }
    for i in 0..points.len() {
        for j in (i + 1)..points.len() {
            if points[i].0 == points[j].0 {
                return Err(ExactError::DuplicateAbscissa(points[i].0.to_string()));
            }
        }
    }

    // Newton divided differences over the first `need` points.
    let base = &points[..need];
    let mut table: Vec<Rat> = base.iter().map(|(_, y)| y.clone()).collect();
    let mut coeffs = vec![table[0].clone()];
    for level in 1..need {
        for i in 0..(need - level) {
            let dx = &base[i + level].0 - &base[i].0;
            table[i] = (&table[i + 1] - &table[i]) / dx;
        }
        coeffs.push(table[0].clone());
    }
    // Expand the Newton form.
    let mut poly = TPoly::zero();
    let mut basis = TPoly::one();
    for (i, c) in coeffs.iter().enumerate() {
        poly.add_assign(&basis.scale(c));
        if i + 1 < need {
            basis = basis.mul(&TPoly::from_coeffs(vec![-&base[i].0, Rat::from_integer(1.into())]));
        }
    }

    for (x, y) in points {
        if &poly.eval(x) != y {
            return Err(ExactError::InconsistentDegree {
                bound: degree_bound,
                at: x.to_string(),
            });
        }
    }
    debug_assert!(poly.degree().unwrap_or(0) <= degree_bound);
    Ok(poly)
}
