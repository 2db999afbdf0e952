//! Exact dense linear algebra over rational functions.

use crate::coeff::RatFn;
use crate::{Error, Result};

fn weight(r: &RatFn) -> usize {
    r.num().nterms() + r.den().nterms()
}

/// Solve `a x = b` for a possibly overdetermined consistent system.
///
/// Returns `Ok(None)` if the system is inconsistent and `Err(Underdetermined)` if the
/// solution is not unique.
pub fn solve(mut a: Vec<Vec<RatFn>>, mut b: Vec<RatFn>) -> Result<Option<Vec<RatFn>>> {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut piv_cols = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let best = (r..rows).filter(|i| !a[*i][c].is_zero()).min_by_key(|i| weight(&a[*i][c]));
        let Some(p) = best else { continue };
        a.swap(r, p);
        b.swap(r, p);
        let inv = a[r][c].inv()?;
        for j in c..cols {
            a[r][j] = a[r][j].mul(&inv);
        }
        b[r] = b[r].mul(&inv);
        for i in 0..rows {
            if i == r || a[i][c].is_zero() {
                continue;
            }
            let f = a[i][c].clone();
            for j in c..cols {
                if !a[r][j].is_zero() {
                    let t = f.mul(&a[r][j]);
                    a[i][j] = a[i][j].sub(&t);
                }
            }
            let t = f.mul(&b[r]);
            b[i] = b[i].sub(&t);
        }
        piv_cols.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    if b[r..].iter().any(|x| !x.is_zero()) {
        return Ok(None);
    }
    if piv_cols.len() < cols {
        return Err(Error::Underdetermined(format!("rank {} < {}", piv_cols.len(), cols)));
    }
    let mut x = vec![RatFn::zero(); cols];
    for (i, c) in piv_cols.iter().enumerate() {
        x[*c] = b[i].clone();
    }
    Ok(Some(x))
}

/// Determinant by fraction-based elimination.
pub fn det(mut a: Vec<Vec<RatFn>>) -> Result<RatFn> {
    let n = a.len();
    let mut d = RatFn::one();
    for c in 0..n {
        let Some(p) = (c..n).filter(|i| !a[*i][c].is_zero()).min_by_key(|i| weight(&a[*i][c])) else {
            return Ok(RatFn::zero());
        };
        if p != c {
            a.swap(p, c);
            d = d.neg();
        }
        let pv = a[c][c].clone();
        d = d.mul(&pv);
        let inv = pv.inv()?;
        for i in c + 1..n {
            if a[i][c].is_zero() {
                continue;
            }
            let f = a[i][c].mul(&inv);
            for j in c..n {
                if !a[c][j].is_zero() {
                    let t = f.mul(&a[c][j]);
                    a[i][j] = a[i][j].sub(&t);
                }
            }
        }
    }
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::Sym;

    #[test]
    fn small_systems() {
        let x = RatFn::var(Sym::Delta);
        let a = vec![vec![x.clone(), RatFn::one()], vec![RatFn::one(), RatFn::int(-1)], vec![RatFn::int(2), RatFn::int(-2)]];
        let b = vec![x.add(&RatFn::one()), RatFn::zero(), RatFn::zero()];
        let s = solve(a, b).unwrap().unwrap();
        assert_eq!(s, vec![RatFn::one(), RatFn::one()]);
        let a = vec![vec![RatFn::one()], vec![RatFn::one()]];
        assert!(solve(a, vec![RatFn::one(), RatFn::int(2)]).unwrap().is_none());
        let m = vec![vec![x.clone(), RatFn::int(2)], vec![RatFn::int(3), x.clone()]];
        assert_eq!(det(m).unwrap(), x.mul(&x).sub(&RatFn::int(6)));
    }
}
