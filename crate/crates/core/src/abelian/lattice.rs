//! Lattices `L` with `m Z^n <= L <= Z^n`, i.e. subgroups of `(Z/m)^n`, kept in
//! upper-triangular Hermite form with entries reduced modulo `m`.

use super::matrix::IntMatrix;
use super::snf::smith;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModLattice {
    m: i128,
    /// `rows[i][i]` is the positive pivot (a divisor of `m`); `rows[i][j] == 0` for `j < i`.
    rows: Vec<Vec<i128>>,
    /// Columns where `rows[i]` is nonzero.
    support: Vec<Vec<usize>>,
}

impl ModLattice {
    /// The lattice `m Z^n` (the zero subgroup of `(Z/m)^n`).
    pub fn zero(n: usize, m: i128) -> Self {
        let rows = (0..n)
            .map(|i| {
                let mut r = vec![0; n];
                r[i] = m;
                r
            })
            .collect();
        let support = (0..n).map(|i| vec![i]).collect();
        ModLattice { m, rows, support }
    }

    pub fn generated_by<I: IntoIterator<Item = Vec<i128>>>(n: usize, m: i128, gens: I) -> Self {
        let mut l = Self::zero(n, m);
        for g in gens {
            l.insert(g);
        }
        l
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn modulus(&self) -> i128 {
        self.m
    }

    pub fn rows(&self) -> &[Vec<i128>] {
        &self.rows
    }

    pub fn pivot(&self, i: usize) -> i128 {
        self.rows[i][i]
    }

    /// Adds a generator. Entries may be arbitrary integers.
    pub fn insert(&mut self, mut v: Vec<i128>) {
        let m = self.m;
        let n = self.rows.len();
        for x in v.iter_mut() {
            *x = x.rem_euclid(m);
        }
        for i in 0..n {
            if v[i] == 0 {
                continue;
            }
            let a = self.rows[i][i];
            let b = v[i];
            if b % a == 0 {
                let k = b / a;
                for &j in &self.support[i] {
                    v[j] = (v[j] - k * self.rows[i][j]).rem_euclid(m);
                }
                continue;
            }
            let (g, s, t) = ext_gcd(a, b);
            let (ag, bg) = (a / g, b / g);
            let row = &mut self.rows[i];
            for j in i..n {
                let rj = row[j];
                let vj = v[j];
                row[j] = (s * rj + t * vj).rem_euclid(m);
                v[j] = (bg * rj - ag * vj).rem_euclid(m);
            }
            // The pivot is g itself (g divides m, so reduction may have sent it to 0).
            row[i] = g;
            v[i] = 0;
            self.support[i] = (i..n).filter(|&j| row[j] != 0).collect();
        }
    }

    pub fn contains(&self, v: &[i128]) -> bool {
        let r = self.reduce(v);
        r.iter().all(|&x| x == 0)
    }

    /// Lexicographically least representative of `v + L` with entries in `[0, m)`.
    pub fn reduce(&self, v: &[i128]) -> Vec<i128> {
        let m = self.m;
        let mut x: Vec<i128> = v.iter().map(|a| a.rem_euclid(m)).collect();
        for i in 0..self.rows.len() {
            let p = self.rows[i][i];
            let q = x[i] / p;
            if q != 0 {
                for j in i..x.len() {
                    x[j] = (x[j] - q * self.rows[i][j]).rem_euclid(m);
                }
            }
        }
        x
    }

    /// `|L / m Z^n|`, saturating at `u128::MAX`.
    pub fn quotient_order(&self) -> u128 {
        self.rows.iter().enumerate().fold(1u128, |acc, (i, r)| acc.saturating_mul((self.m / r[i]) as u128))
    }

    /// True when `L = Z^n`, i.e. the subgroup is all of `(Z/m)^n`.
    pub fn is_full(&self) -> bool {
        self.rows.iter().enumerate().all(|(i, r)| r[i] == 1)
    }

    /// Enumerates every element of `L / m Z^n` as a reduced vector, in the
    /// order of the coefficient odometer (not sorted).
    pub fn elements(&self, cap: u64) -> Result<Vec<Vec<i128>>> {
        let order = self.quotient_order();
        if order > cap as u128 {
            return Err(Error::cap(format!("subgroup of order {order} exceeds enumeration cap {cap}")));
        }
        let n = self.rows.len();
        let ranges: Vec<i128> = (0..n).map(|i| self.m / self.rows[i][i]).collect();
        let mut coeffs = vec![0i128; n];
        let mut out = Vec::with_capacity(order as usize);
        loop {
            let mut v = vec![0i128; n];
            for (i, &c) in coeffs.iter().enumerate() {
                if c != 0 {
                    for j in i..n {
                        v[j] = (v[j] + c * self.rows[i][j]).rem_euclid(self.m);
                    }
                }
            }
            out.push(v);
            let mut k = n;
            loop {
                if k == 0 {
                    return Ok(out);
                }
                k -= 1;
                coeffs[k] += 1;
                if coeffs[k] < ranges[k] {
                    break;
                }
                coeffs[k] = 0;
            }
        }
    }
}

/// `(g, s, t)` with `g = gcd(a, b) > 0` and `s a + t b = g`.
pub fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut old_r, mut r) = (a, b);
    let (mut old_s, mut s) = (1i128, 0i128);
    let (mut old_t, mut t) = (0i128, 1i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    if old_r < 0 {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

/// Solves `M x = b` componentwise modulo `target_moduli[i]` for row `i`.
///
/// Unknowns live in `Z/L` with `L = lcm(target_moduli)`; the returned solution
/// is the lexicographically least vector in `[0, L)^cols`, or `None`.
pub fn solve_affine(m: &IntMatrix, target_moduli: &[u64], b: &[i128]) -> Result<Option<Vec<i128>>> {
    let (rows, cols) = (m.rows(), m.cols());
    if target_moduli.len() != rows || b.len() != rows {
        return Err(Error::Dimension(format!(
            "{rows} equations but {} moduli and {} right-hand sides",
            target_moduli.len(),
            b.len()
        )));
    }
    if target_moduli.contains(&0) {
        return Err(Error::invalid("target modulus must be positive"));
    }
    let l = target_moduli.iter().fold(1u64, |a, &q| super::group::lcm_u64(a, q)) as i128;
    // Scale every equation to the common modulus L.
    let mut ms = IntMatrix::zeros(rows, cols);
    let mut bs = vec![0i128; rows];
    for i in 0..rows {
        let f = l / target_moduli[i] as i128;
        for j in 0..cols {
            ms.set(i, j, (m.get(i, j) * f).rem_euclid(l));
        }
        bs[i] = (b[i] * f).rem_euclid(l);
    }
    // Particular solution through the Smith form: D y = U b, x = V y.
    let s = smith(&ms)?;
    let ub = s.u.mul_vec(&bs)?;
    let mut y = vec![0i128; cols];
    for i in 0..rows {
        let rhs = ub[i].rem_euclid(l);
        if i < s.rank {
            let d = s.d.get(i, i);
            let (g, inv, _) = ext_gcd(d.rem_euclid(l), l);
            if rhs % g != 0 {
                return Ok(None);
            }
            y[i] = ((rhs / g) * inv).rem_euclid(l / g);
        } else if rhs != 0 {
            return Ok(None);
        }
    }
    let x0: Vec<i128> = s.v.mul_vec(&y)?.into_iter().map(|v| v.rem_euclid(l)).collect();
    // Kernel lattice {x : M x = 0 mod L} = V diag(L / gcd(d_i, L)) Z^cols.
    let kernel_gens = (0..cols).map(|j| {
        let k = if j < s.rank {
            let d = s.d.get(j, j).rem_euclid(l);
            l / ext_gcd(d, l).0
        } else {
            1
        };
        (0..cols).map(|i| s.v.get(i, j) * k).collect::<Vec<_>>()
    });
    let kernel = ModLattice::generated_by(cols, l, kernel_gens);
    Ok(Some(kernel.reduce(&x0)))
}
