//! Exact rational arithmetic and small dense linear algebra over `Q` and `Z`.

use num_rational::Ratio;
use num_traits::{One, Zero};

pub type Rational = Ratio<i128>;

pub fn rat(n: i128) -> Rational {
    Rational::from_integer(n)
}

/// Parses `p/q` or a bare integer `p`. Rejects zero denominators.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: i128 = p.trim().parse().ok()?;
            let q: i128 = q.trim().parse().ok()?;
            if q == 0 {
                return None;
            }
            Some(Rational::new(p, q))
        }
        None => s.parse::<i128>().ok().map(rat),
    }
}

/// Always `p/q` in lowest terms with a positive denominator.
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn to_rational_matrix(m: &[Vec<i64>]) -> Vec<Vec<Rational>> {
    m.iter()
        .map(|row| row.iter().map(|&x| rat(x as i128)).collect())
        .collect()
}

pub fn determinant(m: &[Vec<Rational>]) -> Rational {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m.to_vec();
    let mut det = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
            return Rational::zero();
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        let pivot = a[c][c];
        det *= pivot;
        for r in c + 1..n {
            if a[r][c].is_zero() {
                continue;
            }
            let f = a[r][c] / pivot;
            for k in c..n {
                let t = a[c][k];
                a[r][k] -= f * t;
            }
        }
    }
    det
}

/// Reduced row echelon form in place; returns pivot columns.
fn rref(a: &mut [Vec<Rational>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for c in 0..cols {
        if row == a.len() {
            break;
        }
        let Some(p) = (row..a.len()).find(|&r| !a[r][c].is_zero()) else {
            continue;
        };
        a.swap(p, row);
        let inv = a[row][c].recip();
        for k in 0..a[row].len() {
            a[row][k] *= inv;
        }
        for r in 0..a.len() {
            if r != row && !a[r][c].is_zero() {
                let f = a[r][c];
                for k in 0..a[r].len() {
                    let t = a[row][k];
                    a[r][k] -= f * t;
                }
            }
        }
        pivots.push(c);
        row += 1;
    }
    pivots
}

pub fn rank(rows: &[Vec<Rational>]) -> usize {
    let Some(cols) = rows.first().map(Vec::len) else {
        return 0;
    };
    let mut a = rows.to_vec();
    rref(&mut a, cols).len()
}

pub fn rank_int(rows: &[Vec<i64>]) -> usize {
    rank(&to_rational_matrix(rows))
}

/// Solves `a x = b` (equations as rows of `a`). `None` unless the system is
/// consistent with a unique solution.
pub fn solve_unique(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    assert_eq!(a.len(), b.len());
    let cols = a.first().map(Vec::len).unwrap_or(0);
    let mut aug: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, &rhs)| {
            let mut r = row.clone();
            r.push(rhs);
            r
        })
        .collect();
    let pivots = rref(&mut aug, cols + 1);
    if pivots.contains(&cols) || pivots.len() != cols {
        return None;
    }
    Some((0..cols).map(|i| aug[i][cols]).collect())
}

pub fn inverse(m: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = m.len();
    let mut aug: Vec<Vec<Rational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            r
        })
        .collect();
    let pivots = rref(&mut aug, n);
    if pivots.len() != n {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn mat_mul(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let inner = b.len();
    let cols = b.first().map(Vec::len).unwrap_or(0);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).fold(Rational::zero(), |acc, k| acc + row[k] * b[k][j]))
                .collect()
        })
        .collect()
}

pub fn transpose<T: Clone>(m: &[Vec<T>]) -> Vec<Vec<T>> {
    let cols = m.first().map(Vec::len).unwrap_or(0);
    (0..cols)
        .map(|j| m.iter().map(|row| row[j].clone()).collect())
        .collect()
}

/// Converts a rational matrix to integers if every entry is integral.
pub fn to_integer_matrix(m: &[Vec<Rational>]) -> Option<Vec<Vec<i64>>> {
    m.iter()
        .map(|row| {
            row.iter()
                .map(|x| {
                    if x.is_integer() {
                        i64::try_from(*x.numer()).ok()
                    } else {
                        None
                    }
                })
                .collect()
        })
        .collect()
}

/// Index of the `Z`-span of `rows` inside `Z^dim`, or `None` if the span has
/// rank below `dim`.
pub fn lattice_index(rows: &[Vec<i64>], dim: usize) -> Option<u128> {
    let mut a: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let mut index: u128 = 1;
    let mut top = 0;
    for c in 0..dim {
        loop {
            let nonzero: Vec<usize> = (top..a.len()).filter(|&r| a[r][c] != 0).collect();
            if nonzero.is_empty() {
                return None;
            }
            let &p = nonzero.iter().min_by_key(|&&r| a[r][c].abs()).unwrap();
            a.swap(p, top);
            let mut done = true;
            for r in top + 1..a.len() {
                if a[r][c] != 0 {
                    let q = a[r][c].div_euclid(a[top][c]);
                    for k in c..dim {
                        let t = a[top][k];
                        a[r][k] -= q * t;
                    }
                    if a[r][c] != 0 {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        index *= a[top][c].unsigned_abs();
        top += 1;
    }
    Some(index)
}


#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("6/4"), Some(Rational::new(3, 2)));
        assert_eq!(parse_rational("-7"), Some(rat(-7)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("x"), None);
        assert_eq!(format_rational(&rat(2)), "2/1");
        assert_eq!(format_rational(&Rational::new(2, -4)), "-1/2");
    }

    #[test]
    fn determinant_and_inverse() {
        let m = to_rational_matrix(&[vec![2, -1], vec![-1, 2]]);
        assert_eq!(determinant(&m), rat(3));
        let inv = inverse(&m).unwrap();
        let id = mat_mul(&m, &inv);
        assert_eq!(id, to_rational_matrix(&[vec![1, 0], vec![0, 1]]));
        assert!(inverse(&to_rational_matrix(&[vec![1, 2], vec![2, 4]])).is_none());
    }

    #[test]
    fn index_of_sublattice() {
        assert_eq!(lattice_index(&[vec![1, 0], vec![0, 1]], 2), Some(1));
        assert_eq!(lattice_index(&[vec![2, 0], vec![0, 1], vec![1, 1]], 2), Some(1));
        assert_eq!(lattice_index(&[vec![2, 0], vec![0, 3]], 2), Some(6));
        assert_eq!(lattice_index(&[vec![1, 1], vec![2, 2]], 2), None);
    }

    #[test]
    fn unique_solutions() {
        let a = to_rational_matrix(&[vec![1, 1], vec![1, -1], vec![2, 0]]);
        let x = solve_unique(&a, &[rat(3), rat(1), rat(4)]).unwrap();
        assert_eq!(x, vec![rat(2), rat(1)]);
        assert!(solve_unique(&a, &[rat(3), rat(1), rat(5)]).is_none());
    }
}
