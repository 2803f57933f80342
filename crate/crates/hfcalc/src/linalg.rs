//! Exact integer and rational linear algebra.
//!
//! Integer matrices are `Vec<Vec<i64>>` in row-major order. Everything here is
//! exact; overflow is treated as a bug and panics.

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

pub type Rat = Ratio<i64>;
pub type IMat = Vec<Vec<i64>>;
pub type QMat = Vec<Vec<Rat>>;

/// Serializes a rational in lowest terms, `"n"` or `"n/d"`.
pub fn ser_rat<S: serde::Serializer>(r: &Rat, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

pub fn ser_rats<S: serde::Serializer>(r: &[Rat], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(r.iter().map(|x| x.to_string()))
}

pub fn zeros(rows: usize, cols: usize) -> IMat {
    vec![vec![0; cols]; rows]
}

pub fn identity(n: usize) -> IMat {
    let mut m = zeros(n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 1;
    }
    m
}

pub fn transpose(m: &IMat, cols: usize) -> IMat {
    let mut t = zeros(cols, m.len());
    for (i, row) in m.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            t[j][i] = v;
        }
    }
    t
}

pub fn mat_mul(a: &IMat, b: &IMat, inner: usize, cols: usize) -> IMat {
    let mut c = zeros(a.len(), cols);
    for (i, row) in a.iter().enumerate() {
        for k in 0..inner {
            let v = row[k];
            if v == 0 {
                continue;
            }
            for j in 0..cols {
                c[i][j] += v * b[k][j];
            }
        }
    }
    c
}

pub fn mat_vec(a: &IMat, x: &[i64]) -> Vec<i64> {
    a.iter()
        .map(|row| row.iter().zip(x).map(|(p, q)| p * q).sum())
        .collect()
}

pub fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(p, q)| p * q).sum()
}

pub fn gcd_vec(v: &[i64]) -> i64 {
    v.iter().fold(0i64, |g, &x| g.gcd(&x))
}

/// Divides by the gcd of the entries; the zero vector is returned unchanged.
pub fn primitive(v: &[i64]) -> Vec<i64> {
    let g = gcd_vec(v);
    if g == 0 {
        v.to_vec()
    } else {
        v.iter().map(|x| x / g).collect()
    }
}

/// Makes the first nonzero entry positive.
pub fn sign_normalize(v: &mut [i64]) {
    if let Some(&f) = v.iter().find(|&&x| x != 0) {
        if f < 0 {
            v.iter_mut().for_each(|x| *x = -*x);
        }
    }
}

/// Smith normal form `U * M * V = D` with unimodular `U`, `V`.
#[derive(Clone, Debug)]
pub struct Smith {
    pub rows: usize,
    pub cols: usize,
    pub u: IMat,
    pub d: IMat,
    pub v: IMat,
    pub v_inv: IMat,
    /// Nonzero diagonal entries, positive, each dividing the next.
    pub divisors: Vec<i64>,
}

impl Smith {
    pub fn rank(&self) -> usize {
        self.divisors.len()
    }

    /// Saturated basis of the integer kernel, as columns of `V` past the rank.
    pub fn kernel(&self) -> Vec<Vec<i64>> {
        (self.rank()..self.cols)
            .map(|j| (0..self.cols).map(|i| self.v[i][j]).collect())
            .collect()
    }

    /// Coordinates of a kernel vector in the basis returned by [`Smith::kernel`].
    pub fn kernel_coords(&self, x: &[i64]) -> Vec<i64> {
        mat_vec(&self.v_inv, x)[self.rank()..].to_vec()
    }

    /// Integer solution of `M x = b`, if any.
    pub fn solve(&self, b: &[i64]) -> Option<Vec<i64>> {
        let c = mat_vec(&self.u, b);
        let r = self.rank();
        let mut y = vec![0i64; self.cols];
        for i in 0..self.rows {
            if i < r {
                if c[i] % self.divisors[i] != 0 {
                    return None;
                }
                y[i] = c[i] / self.divisors[i];
            } else if c[i] != 0 {
                return None;
            }
        }
        Some(mat_vec(&self.v, &y))
    }

    /// Class of `b` in the cokernel of `M`: torsion coordinates first (one per
    /// divisor greater than one, reduced), then free coordinates.
    pub fn cokernel_class(&self, b: &[i64]) -> Vec<i64> {
        let c = mat_vec(&self.u, b);
        let mut out = Vec::new();
        for (i, &d) in self.divisors.iter().enumerate() {
            if d > 1 {
                out.push(c[i].rem_euclid(d));
            }
        }
        out.extend_from_slice(&c[self.rank()..self.rows]);
        out
    }

    /// Invariant factors of the cokernel: torsion orders then zeros for free summands.
    pub fn cokernel_orders(&self) -> Vec<i64> {
        let mut out: Vec<i64> = self.divisors.iter().copied().filter(|&d| d > 1).collect();
        out.extend(std::iter::repeat(0).take(self.rows - self.rank()));
        out
    }
}

pub fn smith(m: &IMat, cols: usize) -> Smith {
    let rows = m.len();
    let mut a = m.clone();
    let mut u = identity(rows);
    let mut v = identity(cols);
    let mut vi = identity(cols);
    let n = rows.min(cols);
    let mut t = 0;
    while t < n {
        // smallest nonzero entry of the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if a[i][j] != 0 && best.map_or(true, |(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        u.swap(t, pi);
        if pj != t {
            for row in a.iter_mut() {
                row.swap(t, pj);
            }
            for row in v.iter_mut() {
                row.swap(t, pj);
            }
            vi.swap(t, pj);
        }
        loop {
            let p = a[t][t];
            let mut dirty = false;
            for i in t + 1..rows {
                let q = a[i][t].div_euclid(p);
                if q != 0 {
                    for j in 0..cols {
                        a[i][j] -= q * a[t][j];
                    }
                    for j in 0..rows {
                        u[i][j] -= q * u[t][j];
                    }
                }
                if a[i][t] != 0 {
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                let q = a[t][j].div_euclid(p);
                if q != 0 {
                    for row in a.iter_mut() {
                        row[j] -= q * row[t];
                    }
                    for row in v.iter_mut() {
                        row[j] -= q * row[t];
                    }
                    for k in 0..cols {
                        vi[t][k] += q * vi[j][k];
                    }
                }
                if a[t][j] != 0 {
                    dirty = true;
                }
            }
            if !dirty {
                // divisibility of the remaining block
                let mut bad = None;
                'outer: for i in t + 1..rows {
                    for j in t + 1..cols {
                        if a[i][j] % p != 0 {
                            bad = Some(i);
                            break 'outer;
                        }
                    }
                }
                match bad {
                    None => break,
                    Some(i) => {
                        for j in 0..cols {
                            a[t][j] += a[i][j];
                        }
                        for j in 0..rows {
                            u[t][j] += u[i][j];
                        }
                        continue;
                    }
                }
            }
            // move the smallest entry of row t / column t to the pivot
            let mut bi = (t, t);
            for i in t..rows {
                if a[i][t] != 0 && a[i][t].abs() < a[bi.0][bi.1].abs() {
                    bi = (i, t);
                }
            }
            for j in t..cols {
                if a[t][j] != 0 && a[t][j].abs() < a[bi.0][bi.1].abs() {
                    bi = (t, j);
                }
            }
            if bi.0 != t {
                a.swap(t, bi.0);
                u.swap(t, bi.0);
            } else if bi.1 != t {
                let j = bi.1;
                for row in a.iter_mut() {
                    row.swap(t, j);
                }
                for row in v.iter_mut() {
                    row.swap(t, j);
                }
                vi.swap(t, j);
            }
        }
        if a[t][t] < 0 {
            for j in 0..cols {
                a[t][j] = -a[t][j];
            }
            for j in 0..rows {
                u[t][j] = -u[t][j];
            }
        }
        t += 1;
    }
    let divisors = (0..n).map(|i| a[i][i]).take_while(|&d| d != 0).collect();
    Smith { rows, cols, u, d: a, v, v_inv: vi, divisors }
}

/// Row-style Hermite normal form of the lattice spanned by `rows`; zero rows dropped.
pub fn hermite(rows_in: &[Vec<i64>], cols: usize) -> Vec<Vec<i64>> {
    let mut a: Vec<Vec<i64>> = rows_in.to_vec();
    let mut r = 0;
    for c in 0..cols {
        if r == a.len() {
            break;
        }
        loop {
            let piv = (r..a.len())
                .filter(|&i| a[i][c] != 0)
                .min_by_key(|&i| a[i][c].abs());
            let Some(p) = piv else { break };
            a.swap(r, p);
            let mut done = true;
            for i in r + 1..a.len() {
                let q = a[i][c].div_euclid(a[r][c]);
                if q != 0 {
                    for j in 0..cols {
                        a[i][j] -= q * a[r][j];
                    }
                }
                if a[i][c] != 0 {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if r < a.len() && a[r][c] != 0 {
            if a[r][c] < 0 {
                a[r].iter_mut().for_each(|x| *x = -*x);
            }
            for i in 0..r {
                let q = a[i][c].div_euclid(a[r][c]);
                if q != 0 {
                    for j in 0..cols {
                        a[i][j] -= q * a[r][j];
                    }
                }
            }
            r += 1;
        }
    }
    a.truncate(r);
    a.retain(|row| row.iter().any(|&x| x != 0));
    a
}

/// Integer rank.
pub fn rank(m: &IMat, cols: usize) -> usize {
    q_rank(&to_q(m), cols)
}

pub fn to_q(m: &IMat) -> QMat {
    m.iter()
        .map(|r| r.iter().map(|&x| Rat::from_integer(x)).collect())
        .collect()
}

/// Reduced row echelon form in place; returns pivot columns.
pub fn rref(a: &mut QMat, cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x *= inv;
        }
        for i in 0..a.len() {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c];
                for j in 0..cols {
                    let t = a[r][j] * f;
                    a[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == a.len() {
            break;
        }
    }
    pivots
}

pub fn q_rank(m: &QMat, cols: usize) -> usize {
    let mut a = m.clone();
    rref(&mut a, cols).len()
}

/// Rational solution of `A x = b`, if one exists.
pub fn q_solve(a: &QMat, cols: usize, b: &[Rat]) -> Option<Vec<Rat>> {
    let mut aug: QMat = a
        .iter()
        .zip(b)
        .map(|(r, &bi)| {
            let mut r = r.clone();
            r.push(bi);
            r
        })
        .collect();
    let piv = rref(&mut aug, cols + 1);
    if piv.last() == Some(&cols) {
        return None;
    }
    let mut x = vec![Rat::zero(); cols];
    for (i, &c) in piv.iter().enumerate() {
        x[c] = aug[i][cols];
    }
    Some(x)
}

/// Rational nullspace basis.
pub fn q_nullspace(a: &QMat, cols: usize) -> Vec<Vec<Rat>> {
    let mut m = a.clone();
    let piv = rref(&mut m, cols);
    let free: Vec<usize> = (0..cols).filter(|c| !piv.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![Rat::zero(); cols];
            x[f] = Rat::one();
            for (i, &c) in piv.iter().enumerate() {
                x[c] = -m[i][f];
            }
            x
        })
        .collect()
}

/// Clears denominators and divides out the content.
pub fn q_to_primitive(v: &[Rat]) -> Vec<i64> {
    let l = v.iter().fold(1i64, |l, x| l.lcm(x.denom()));
    let iv: Vec<i64> = v.iter().map(|x| (x * Rat::from_integer(l)).to_integer()).collect();
    primitive(&iv)
}

/// Inertia `(positive, negative, zero)` of a symmetric matrix by congruent
/// diagonalization.
pub fn inertia(q: &IMat) -> (usize, usize, usize) {
    q_inertia(to_q(q))
}

pub fn q_inertia(mut s: QMat) -> (usize, usize, usize) {
    let n = s.len();
    let (mut pos, mut neg) = (0, 0);
    let mut k = 0;
    while k < n {
        let piv = (k..n).find(|&i| !s[i][i].is_zero());
        let piv = match piv {
            Some(p) => p,
            None => {
                let off = (k..n)
                    .flat_map(|i| (k..n).map(move |j| (i, j)))
                    .find(|&(i, j)| i != j && !s[i][j].is_zero());
                let Some((i, j)) = off else { break };
                // row_i += row_j and col_i += col_j
                for c in 0..n {
                    let t = s[j][c];
                    s[i][c] += t;
                }
                for r in 0..n {
                    let t = s[r][j];
                    s[r][i] += t;
                }
                i
            }
        };
        s.swap(k, piv);
        for row in s.iter_mut() {
            row.swap(k, piv);
        }
        let p = s[k][k];
        if p > Rat::zero() {
            pos += 1;
        } else {
            neg += 1;
        }
        for i in k + 1..n {
            let f = s[i][k] / p;
            if f.is_zero() {
                continue;
            }
            for c in 0..n {
                let t = s[k][c] * f;
                s[i][c] -= t;
            }
            for r in 0..n {
                let t = s[r][k] * f;
                s[r][i] -= t;
            }
        }
        k += 1;
    }
    (pos, neg, n - pos - neg)
}

/// Abs-value of a rational, kept here so callers do not need num-traits.
pub fn q_abs(x: Rat) -> Rat {
    x.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_smith(m: &IMat, cols: usize) -> Smith {
        let s = smith(m, cols);
        let umv = mat_mul(&mat_mul(&s.u, m, m.len(), cols), &s.v, cols, cols);
        assert_eq!(umv, s.d);
        assert_eq!(mat_mul(&s.v, &s.v_inv, cols, cols), identity(cols));
        for w in s.divisors.windows(2) {
            assert_eq!(w[1] % w[0], 0);
        }
        for i in 0..m.len() {
            for j in 0..cols {
                if i != j {
                    assert_eq!(s.d[i][j], 0);
                }
            }
        }
        s
    }

    #[test]
    fn smith_small_cases() {
        assert_eq!(check_smith(&vec![vec![2, 0], vec![0, 3]], 2).divisors, vec![1, 6]);
        assert!(check_smith(&vec![vec![0]], 1).divisors.is_empty());
        assert_eq!(check_smith(&vec![vec![2, 4], vec![6, 8]], 2).divisors, vec![2, 4]);
    }

    #[test]
    fn kernel_and_solve() {
        let m = vec![vec![1, 2, 3], vec![2, 4, 6]];
        let s = check_smith(&m, 3);
        let k = s.kernel();
        assert_eq!(k.len(), 2);
        for v in &k {
            assert_eq!(mat_vec(&m, v), vec![0, 0]);
        }
        assert!(s.solve(&[1, 2]).is_some());
        assert!(s.solve(&[1, 3]).is_none());
    }

    #[test]
    fn cokernel_of_two() {
        let s = smith(&vec![vec![2]], 1);
        assert_eq!(s.cokernel_class(&[1]), vec![1]);
        assert_eq!(s.cokernel_class(&[4]), vec![0]);
    }

    #[test]
    fn hermite_is_canonical() {
        let a = hermite(&[vec![2, 4], vec![1, 1]], 2);
        let b = hermite(&[vec![3, 5], vec![1, 1]], 2);
        assert_eq!(a, vec![vec![1, 1], vec![0, 2]]);
        assert_eq!(a, b);
    }

    #[test]
    fn inertia_examples() {
        assert_eq!(inertia(&vec![vec![-1]]), (0, 1, 0));
        assert_eq!(inertia(&vec![vec![1, 0], vec![0, -1]]), (1, 1, 0));
        assert_eq!(inertia(&vec![vec![0, 1], vec![1, 0]]), (1, 1, 0));
        assert_eq!(inertia(&vec![vec![0]]), (0, 0, 1));
    }
}
