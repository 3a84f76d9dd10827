//! Exact integer vector arithmetic for direction and chamber computations.
//! All operations are checked; overflow is an error, never a wraparound.

use num_integer::Integer;

use crate::error::{Error, Result};

pub type IVec = Vec<i128>;

pub fn dot(a: &[i128], b: &[i128]) -> Result<i128> {
    a.iter().zip(b).try_fold(0i128, |acc, (&x, &y)| {
        x.checked_mul(y)
            .and_then(|t| acc.checked_add(t))
            .ok_or(Error::Overflow("exact dot product"))
    })
}

/// `alpha * a + beta * b`
pub fn combine(alpha: i128, a: &[i128], beta: i128, b: &[i128]) -> Result<IVec> {
    a.iter()
        .zip(b)
        .map(|(&x, &y)| {
            alpha
                .checked_mul(x)
                .zip(beta.checked_mul(y))
                .and_then(|(s, t)| s.checked_add(t))
                .ok_or(Error::Overflow("exact vector combination"))
        })
        .collect()
}

pub fn is_zero(v: &[i128]) -> bool {
    v.iter().all(|&x| x == 0)
}

/// Divides by the gcd of the entries, keeping the sign. Zero stays zero.
pub fn reduce(mut v: IVec) -> IVec {
    let g = v.iter().fold(0i128, |g, &x| g.gcd(&x));
    if g > 1 {
        v.iter_mut().for_each(|x| *x /= g);
    }
    v
}

/// Primitive form: gcd-reduced with the first nonzero entry positive.
/// Two nonzero vectors are parallel iff their primitive forms agree.
pub fn primitive(v: IVec) -> IVec {
    let mut v = reduce(v);
    if v.iter().find(|&&x| x != 0).is_some_and(|&x| x < 0) {
        v.iter_mut().for_each(|x| *x = -*x);
    }
    v
}

/// Rank over the rationals, by fraction-free elimination with gcd reduction.
pub fn rank(rows: &[IVec]) -> Result<usize> {
    let mut rows: Vec<IVec> = rows.iter().filter(|r| !is_zero(r)).cloned().collect();
    let Some(width) = rows.first().map(Vec::len) else {
        return Ok(0);
    };
    let mut rank = 0;
    for col in 0..width {
        let Some(pivot) = (rank..rows.len()).find(|&i| rows[i][col] != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let p = rows[rank].clone();
        for row in rows.iter_mut().skip(rank + 1) {
            if row[col] != 0 {
                *row = reduce(combine(p[col], row, -row[col], &p)?);
            }
        }
        rank += 1;
    }
    Ok(rank)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primitive_normalizes_sign_and_scale() {
        assert_eq!(primitive(vec![0, -4, 6]), vec![0, 2, -3]);
        assert_eq!(primitive(vec![2, 2]), vec![1, 1]);
        assert_eq!(primitive(vec![0, 0]), vec![0, 0]);
    }

    #[test]
    fn rank_small_cases() {
        assert_eq!(rank(&[]).unwrap(), 0);
        assert_eq!(rank(&[vec![0, 0]]).unwrap(), 0);
        assert_eq!(rank(&[vec![1, 1], vec![2, 2]]).unwrap(), 1);
        assert_eq!(rank(&[vec![1, 0, 1], vec![0, 1, 1], vec![1, 1, 2]]).unwrap(), 2);
        assert_eq!(rank(&[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 5]]).unwrap(), 3);
    }

    #[test]
    fn overflow_is_detected() {
        assert!(dot(&[i128::MAX, 1], &[2, 1]).is_err());
    }
}
