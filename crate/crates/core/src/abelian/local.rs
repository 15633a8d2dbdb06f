//! Linear algebra over the local ring `Z/p^e`. Every ideal is `(p^v)`, so an
//! entry of minimal valuation divides its whole row and column and Smith
//! elimination never needs gcd steps or entry growth.

use super::lattice::ext_gcd;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LocalRing {
    pub p: u64,
    pub e: u32,
    pub q: i128,
}

impl LocalRing {
    pub fn new(p: u64, e: u32) -> Self {
        LocalRing { p, e, q: (p as i128).pow(e) }
    }

    /// p-adic valuation of `x` in `Z/p^e`; `e` for zero.
    pub fn valuation(&self, x: i128) -> u32 {
        let mut x = x.rem_euclid(self.q);
        if x == 0 {
            return self.e;
        }
        let p = self.p as i128;
        let mut v = 0;
        while x % p == 0 {
            x /= p;
            v += 1;
        }
        v
    }

    pub fn pow_p(&self, v: u32) -> i128 {
        (self.p as i128).pow(v)
    }

    /// Inverse of a unit.
    pub fn unit_inverse(&self, u: i128) -> i128 {
        let (g, s, _) = ext_gcd(u.rem_euclid(self.q), self.q);
        debug_assert_eq!(g, 1);
        s.rem_euclid(self.q)
    }
}

/// Smith form over `Z/p^e`: `D = U A V` with `D_ii = p^{vals[i]}` (value `e`
/// meaning zero). Only `V` and `V^-1` are tracked.
#[derive(Clone, Debug)]
pub struct LocalSmith {
    pub vals: Vec<u32>,
    pub v: Vec<Vec<i128>>,
    pub v_inv: Vec<Vec<i128>>,
}

/// Smith form of a `rows x cols` matrix over `ring`; `vals` has length `cols`
/// (columns beyond the row count get valuation `e`).
pub fn local_smith(a: &[Vec<i128>], cols: usize, ring: LocalRing, track_v: bool) -> LocalSmith {
    let q = ring.q;
    let mut a: Vec<Vec<i128>> = a.iter().map(|r| r.iter().map(|x| x.rem_euclid(q)).collect()).collect();
    let rows = a.len();
    let ident = |n: usize| -> Vec<Vec<i128>> {
        (0..n).map(|i| (0..n).map(|j| i128::from(i == j)).collect()).collect()
    };
    let (mut v, mut v_inv) = if track_v { (ident(cols), ident(cols)) } else { (Vec::new(), Vec::new()) };
    let mut vals = vec![ring.e; cols];
    for t in 0..rows.min(cols) {
        // Pivot of minimal valuation in the trailing block.
        let mut best: Option<(u32, usize, usize)> = None;
        'search: for (i, row) in a.iter().enumerate().skip(t) {
            for (j, &x) in row.iter().enumerate().skip(t) {
                if x != 0 {
                    let val = ring.valuation(x);
                    if best.is_none_or(|(b, _, _)| val < b) {
                        best = Some((val, i, j));
                        if val == 0 {
                            break 'search;
                        }
                    }
                }
            }
        }
        let Some((val, pi, pj)) = best else { break };
        a.swap(t, pi);
        if pj != t {
            for row in a.iter_mut() {
                row.swap(t, pj);
            }
            if track_v {
                for row in v.iter_mut() {
                    row.swap(t, pj);
                }
                v_inv.swap(t, pj);
            }
        }
        // Normalize the pivot to exactly p^val by scaling row t with a unit.
        let pk = ring.pow_p(val);
        let unit = a[t][t] / pk;
        let uinv = ring.unit_inverse(unit);
        for x in a[t].iter_mut() {
            *x = (*x * uinv).rem_euclid(q);
        }
        // Clear column t below the pivot with row operations.
        let pivot_row = a[t].clone();
        for row in a.iter_mut().skip(t + 1) {
            let x = row[t];
            if x != 0 {
                let f = x / pk;
                for (j, y) in row.iter_mut().enumerate().skip(t) {
                    *y = (*y - f * pivot_row[j]).rem_euclid(q);
                }
            }
        }
        // Clear row t to the right with column operations.
        for j in t + 1..cols {
            let x = a[t][j];
            if x == 0 {
                continue;
            }
            let f = x / pk;
            for row in a.iter_mut() {
                let s = row[t];
                if s != 0 {
                    row[j] = (row[j] - f * s).rem_euclid(q);
                }
            }
            if track_v {
                // col_j -= f col_t on V; row_t += f row_j on V^-1.
                for row in v.iter_mut() {
                    row[j] = (row[j] - f * row[t]).rem_euclid(q);
                }
                let rj = v_inv[j].clone();
                for (k, y) in v_inv[t].iter_mut().enumerate() {
                    *y = (*y + f * rj[k]).rem_euclid(q);
                }
            }
        }
        vals[t] = val;
    }
    LocalSmith { vals, v, v_inv }
}
