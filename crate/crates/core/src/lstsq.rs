//! Tiny dense least squares via modified Gram-Schmidt.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::math::sqrt;

/// Relative norm below which a column counts as dependent on earlier ones.
const RANK_TOLERANCE: f64 = 1e-10;

/// Minimizes `|sum_j x_j columns[j] - rhs|` over `x`.
///
/// `names[j]` labels column `j` in rank-deficiency errors.
pub(crate) fn solve(columns: &[Vec<f64>], names: &[&'static str], rhs: &[f64]) -> Result<Vec<f64>> {
    let k = columns.len();
    debug_assert_eq!(names.len(), k);
    debug_assert!(columns.iter().all(|c| c.len() == rhs.len()));
    let mut q: Vec<Vec<f64>> = columns.to_vec();
    let mut r = alloc::vec![0.0; k * k];
    for j in 0..k {
        let original = norm(&columns[j]);
        if original == 0.0 {
            return Err(Error::RankDeficient(names[j]));
        }
        for i in 0..j {
            let proj = dot(&q[i], &q[j]);
            r[i * k + j] = proj;
            let (head, tail) = q.split_at_mut(j);
            for (t, h) in tail[0].iter_mut().zip(&head[i]) {
                *t -= proj * h;
            }
        }
        let len = norm(&q[j]);
        if len <= RANK_TOLERANCE * original {
            return Err(Error::RankDeficient(names[j]));
        }
        r[j * k + j] = len;
        q[j].iter_mut().for_each(|v| *v /= len);
    }
    let mut x: Vec<f64> = q.iter().map(|col| dot(col, rhs)).collect();
    for j in (0..k).rev() {
        for i in j + 1..k {
            x[j] -= r[j * k + i] * x[i];
        }
        x[j] /= r[j * k + j];
    }
    Ok(x)
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    sqrt(dot(a, a))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn recovers_exact_combination() {
        let c0 = vec![1.0, 2.0, 3.0, 4.0];
        let c1 = vec![1.0, -1.0, 0.5, 2.0];
        let rhs: Vec<f64> = c0.iter().zip(&c1).map(|(a, b)| 2.5 * a - 0.75 * b).collect();
        let x = solve(&[c0, c1], &["a", "b"], &rhs).unwrap();
        assert!((x[0] - 2.5).abs() < 1e-13 && (x[1] + 0.75).abs() < 1e-13);
    }

    #[test]
    fn single_column_is_projection() {
        let x = solve(&[vec![1.0, 1.0]], &["a"], &[1.0, 3.0]).unwrap();
        assert!((x[0] - 2.0).abs() < 1e-15);
    }

    #[test]
    fn collinear_columns_are_named() {
        let c0 = vec![1.0, 2.0, 3.0];
        let c1 = vec![2.0, 4.0, 6.0];
        assert_eq!(
            solve(&[c0, c1], &["folding", "buckling"], &[1.0, 1.0, 1.0]),
            Err(Error::RankDeficient("buckling"))
        );
        assert_eq!(solve(&[vec![0.0; 3]], &["zero"], &[1.0; 3]), Err(Error::RankDeficient("zero")));
    }
}
