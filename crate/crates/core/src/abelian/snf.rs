use super::matrix::IntMatrix;
use super::FiniteAbelianGroup;
use crate::{Error, Result};

/// Result of a Smith normal form computation: `d = u * m * v`, with `v_inv`
/// the inverse of `v` (kept because kernels and coordinates need it).
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
    pub rank: usize,
}

impl SmithForm {
    /// Diagonal entries `d_1 | d_2 | ...` of length `min(rows, cols)`.
    pub fn diagonal(&self) -> Vec<i128> {
        (0..self.d.rows().min(self.d.cols())).map(|i| self.d.get(i, i)).collect()
    }
}

/// Smith normal form `(U, D, V)` with `D = U M V`, `U` and `V` unimodular,
/// positive diagonal entries forming a divisibility chain.
pub fn smith_normal_form(m: &IntMatrix) -> Result<(IntMatrix, IntMatrix, IntMatrix)> {
    let s = smith(m)?;
    Ok((s.u, s.d, s.v))
}

pub fn smith(m: &IntMatrix) -> Result<SmithForm> {
    reduce(m, true)
}

/// Invariant factors and rank only; skips the transforms, so it runs on
/// matrices whose square identities would not fit in memory.
pub fn smith_diagonal(m: &IntMatrix) -> Result<(Vec<i128>, usize)> {
    let s = reduce(m, false)?;
    Ok((s.diagonal(), s.rank))
}

fn reduce(m: &IntMatrix, track: bool) -> Result<SmithForm> {
    let (r, c) = (m.rows(), m.cols());
    let mut a = m.clone();
    let ident = |k: usize| if track { IntMatrix::identity(k) } else { IntMatrix::zeros(0, 0) };
    let mut u = ident(r);
    let mut v = ident(c);
    let mut v_inv = ident(c);
    let mut t = 0;
    while t < r.min(c) {
        let Some((pi, pj)) = min_abs_entry(&a, t..r, t..c) else { break };
        swap_rows(&mut a, &mut u, t, pi);
        swap_cols(&mut a, &mut v, &mut v_inv, t, pj);
        loop {
            let p = a.get(t, t);
            let mut clean = true;
            for i in t + 1..r {
                let x = a.get(i, t);
                if x != 0 {
                    let q = x / p;
                    add_row(&mut a, &mut u, i, t, -q)?;
                    clean &= a.get(i, t) == 0;
                }
            }
            for j in t + 1..c {
                let x = a.get(t, j);
                if x != 0 {
                    let q = x / p;
                    add_col(&mut a, &mut v, &mut v_inv, j, t, -q)?;
                    clean &= a.get(t, j) == 0;
                }
            }
            if !clean {
                // A remainder smaller than the pivot survived; make it the pivot.
                let (pi, pj) = min_abs_entry_cross(&a, t, r, c);
                swap_rows(&mut a, &mut u, t, pi);
                swap_cols(&mut a, &mut v, &mut v_inv, t, pj);
                continue;
            }
            let p = a.get(t, t);
            if p.abs() == 1 {
                break;
            }
            let bad = (t + 1..r).find(|&i| (t + 1..c).any(|j| a.get(i, j) % p != 0));
            match bad {
                Some(i) => add_row(&mut a, &mut u, t, i, 1)?,
                None => break,
            }
        }
        if a.get(t, t) < 0 {
            a.negate_row(t);
            if u.rows() > 0 {
                u.negate_row(t);
            }
        }
        t += 1;
    }
    Ok(SmithForm { u, d: a, v, v_inv, rank: t })
}

fn min_abs_entry(a: &IntMatrix, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Option<(usize, usize)> {
    let mut best: Option<(i128, usize, usize)> = None;
    for i in rows {
        for j in cols.clone() {
            let x = a.get(i, j).abs();
            if x == 1 {
                return Some((i, j));
            }
            if x != 0 && best.is_none_or(|(b, _, _)| x < b) {
                best = Some((x, i, j));
            }
        }
    }
    best.map(|(_, i, j)| (i, j))
}

fn min_abs_entry_cross(a: &IntMatrix, t: usize, r: usize, c: usize) -> (usize, usize) {
    let mut best = (a.get(t, t).abs(), t, t);
    for i in t + 1..r {
        let x = a.get(i, t).abs();
        if x != 0 && x < best.0 {
            best = (x, i, t);
        }
    }
    for j in t + 1..c {
        let x = a.get(t, j).abs();
        if x != 0 && x < best.0 {
            best = (x, t, j);
        }
    }
    (best.1, best.2)
}

// Empty transform matrices (0x0) mean the transforms are not tracked.

fn swap_rows(a: &mut IntMatrix, u: &mut IntMatrix, i: usize, j: usize) {
    a.swap_rows(i, j);
    if u.rows() > 0 {
        u.swap_rows(i, j);
    }
}

fn swap_cols(a: &mut IntMatrix, v: &mut IntMatrix, v_inv: &mut IntMatrix, i: usize, j: usize) {
    a.swap_cols(i, j);
    if v.rows() > 0 {
        v.swap_cols(i, j);
        v_inv.swap_rows(i, j);
    }
}

fn add_row(a: &mut IntMatrix, u: &mut IntMatrix, dst: usize, src: usize, q: i128) -> Result<()> {
    a.add_row_multiple(dst, src, q)?;
    if u.rows() == 0 {
        return Ok(());
    }
    u.add_row_multiple(dst, src, q)
}

fn add_col(a: &mut IntMatrix, v: &mut IntMatrix, v_inv: &mut IntMatrix, dst: usize, src: usize, q: i128) -> Result<()> {
    a.add_col_multiple(dst, src, q)?;
    if v.rows() == 0 {
        return Ok(());
    }
    v.add_col_multiple(dst, src, q)?;
    // V <- V E with E = I + q e_src e_dst^T, so V^-1 <- E^-1 V^-1.
    v_inv.add_row_multiple(src, dst, -q)
}

/// Cokernel `Z^rows / column-span(m)`, split into its finite part and free rank.
pub fn cokernel(m: &IntMatrix) -> Result<HomologyGroup> {
    let (diag, rank) = smith_diagonal(m)?;
    let mut moduli: Vec<u64> = diag
        .iter()
        .filter(|&&d| d > 1)
        .map(|&d| u64::try_from(d).map_err(|_| Error::Overflow("invariant factor")))
        .collect::<Result<_>>()?;
    moduli.sort_unstable();
    let free_rank = m.rows() - rank;
    Ok(HomologyGroup { finite: FiniteAbelianGroup::new(moduli)?.canonical_form(), free_rank })
}

/// A finitely generated abelian group reported as `Z^free_rank + finite`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyGroup {
    pub finite: FiniteAbelianGroup,
    pub free_rank: usize,
}

impl HomologyGroup {
    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.finite.is_trivial()
    }

    pub fn literal(&self) -> String {
        match (self.free_rank, self.finite.is_trivial()) {
            (0, _) => self.finite.literal(),
            (r, true) => free_literal(r),
            (r, false) => format!("{}x{}", free_literal(r), self.finite.literal()),
        }
    }
}

fn free_literal(r: usize) -> String {
    if r == 1 {
        "Z".to_string()
    } else {
        format!("Z^{r}")
    }
}

/// Homology `ker(d_out) / im(d_in)` of a pair of consecutive integer differentials.
pub fn homology_of_pair(d_out: &IntMatrix, d_in: &IntMatrix) -> Result<HomologyGroup> {
    if d_out.cols() != d_in.rows() {
        return Err(Error::Dimension(format!(
            "d_out is {}x{} but d_in is {}x{}",
            d_out.rows(),
            d_out.cols(),
            d_in.rows(),
            d_in.cols()
        )));
    }
    if !d_out.mul(d_in)?.is_zero() {
        return Err(Error::invalid("d_out * d_in is not zero"));
    }
    // ker(d_out) is saturated in Z^k, so Z^k / im(d_in) splits as
    // ker(d_out) / im(d_in) plus the free group Z^k / ker(d_out).
    let (_, rank_out) = smith_diagonal(d_out)?;
    let coker = cokernel(d_in)?;
    let free_rank = coker.free_rank - rank_out;
    Ok(HomologyGroup { finite: coker.finite, free_rank })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[Vec<i128>]) -> IntMatrix {
        IntMatrix::from_rows(rows).unwrap()
    }

    #[test]
    fn homology_of_small_complexes() {
        // Z --2--> Z --> 0
        let h = homology_of_pair(&IntMatrix::zeros(0, 1), &m(&[vec![2]])).unwrap();
        assert_eq!(h.literal(), "Z2");
        // Z --(1,-1)--> Z^2 --(1 1)--> Z
        let h = homology_of_pair(&m(&[vec![1, 1]]), &m(&[vec![1], vec![-1]])).unwrap();
        assert!(h.is_trivial());
        let h = homology_of_pair(&m(&[vec![1, 1]]), &m(&[vec![2], vec![-2]])).unwrap();
        assert_eq!(h.literal(), "Z2");
        let h = homology_of_pair(&m(&[vec![0, 0]]), &m(&[vec![3], vec![0]])).unwrap();
        assert_eq!((h.finite.literal(), h.free_rank), ("Z3".to_string(), 1));
    }

    #[test]
    fn homology_rejects_bad_pairs() {
        assert!(matches!(homology_of_pair(&m(&[vec![1, 1]]), &m(&[vec![1]])), Err(Error::Dimension(_))));
        assert!(homology_of_pair(&m(&[vec![1, 1]]), &m(&[vec![1], vec![1]])).is_err());
    }
}
