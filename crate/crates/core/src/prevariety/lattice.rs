//! Integer lattices: echelon (Hermite-style) bases and canonical reduction.

/// Sublattice of `Z^k` spanned by a finite set of integer vectors, kept as a
/// row echelon basis with positive pivots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    dim: usize,
    rows: Vec<(usize, Vec<i128>)>,
}

impl Lattice {
    pub fn span<I, V>(dim: usize, generators: I) -> Lattice
    where
        I: IntoIterator<Item = V>,
        V: AsRef<[i128]>,
    {
        let mut work: Vec<Vec<i128>> = generators
            .into_iter()
            .map(|v| {
                let v = v.as_ref();
                assert_eq!(v.len(), dim, "generator dimension");
                v.to_vec()
            })
            .filter(|v| v.iter().any(|&x| x != 0))
            .collect();
        let mut rows = Vec::new();
        for col in 0..dim {
            // Euclid on column `col` until a single row has a nonzero entry.
            loop {
                let mut nz: Vec<usize> = (0..work.len()).filter(|&i| work[i][col] != 0).collect();
                if nz.len() <= 1 {
                    break;
                }
                nz.sort_by_key(|&i| work[i][col].abs());
                let piv = nz[0];
                let pv = work[piv][col];
                for &i in &nz[1..] {
                    let q = work[i][col].div_euclid(pv);
                    let prow = work[piv].clone();
                    for (x, y) in work[i].iter_mut().zip(&prow) {
                        *x -= q * y;
                    }
                }
            }
            if let Some(i) = (0..work.len()).find(|&i| work[i][col] != 0) {
                let mut row = work.swap_remove(i);
                if row[col] < 0 {
                    row.iter_mut().for_each(|x| *x = -*x);
                }
                rows.push((col, row));
            }
            work.retain(|v| v.iter().any(|&x| x != 0));
        }
        Lattice { dim, rows }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Canonical representative of `v` modulo the lattice.
    pub fn reduce(&self, v: &[i128]) -> Vec<i128> {
        assert_eq!(v.len(), self.dim);
        let mut v = v.to_vec();
        for (col, row) in &self.rows {
            let q = v[*col].div_euclid(row[*col]);
            if q != 0 {
                for (x, y) in v.iter_mut().zip(row) {
                    *x -= q * y;
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[i128]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }
}

/// Membership of `v` in the integer span of `periods`.
pub fn lattice_contains(v: &[i64], periods: &[Vec<i64>]) -> bool {
    let to128 = |x: &[i64]| x.iter().map(|&y| y as i128).collect::<Vec<_>>();
    Lattice::span(v.len(), periods.iter().map(|p| to128(p))).contains(&to128(v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn examples() {
        assert!(lattice_contains(&[1, 1], &[vec![2, 0], vec![1, 1]]));
        assert!(!lattice_contains(&[1, 0], &[vec![2, 0], vec![0, 2]]));
        assert!(lattice_contains(&[0, 0], &[]));
        assert!(!lattice_contains(&[1, 0], &[]));
        assert!(lattice_contains(&[3, -3], &[vec![1, -1]]));
        assert!(lattice_contains(&[1, 0], &[vec![3, 0], vec![5, 0]]));
    }

    /// Brute-force span membership with bounded coefficients.
    fn brute(v: &[i64], periods: &[Vec<i64>], bound: i64) -> bool {
        fn rec(i: usize, acc: Vec<i64>, v: &[i64], p: &[Vec<i64>], b: i64) -> bool {
            if i == p.len() {
                return acc == v;
            }
            (-b..=b).any(|c| {
                let next: Vec<i64> = acc.iter().zip(&p[i]).map(|(x, y)| x + c * y).collect();
                rec(i + 1, next, v, p, b)
            })
        }
        rec(0, vec![0; v.len()], v, periods, bound)
    }

    proptest! {
        #[test]
        fn agrees_with_bounded_search(
            periods in prop::collection::vec(prop::collection::vec(-3i64..=3, 2), 0..3),
            c in prop::collection::vec(-2i64..=2, 3),
        ) {
            // Vectors in the span by construction.
            let mut v = vec![0i64; 2];
            for (p, k) in periods.iter().zip(&c) {
                for j in 0..2 { v[j] += k * p[j]; }
            }
            prop_assert!(lattice_contains(&v, &periods));
        }

        #[test]
        fn small_vectors_match_brute(
            periods in prop::collection::vec(prop::collection::vec(-2i64..=2, 2), 1..3),
            v in prop::collection::vec(-2i64..=2, 2),
        ) {
            // With at most two generators of norm <= 2 and targets of norm <= 2,
            // coefficients of absolute value <= 8 suffice.
            prop_assert_eq!(lattice_contains(&v, &periods), brute(&v, &periods, 8));
        }

        #[test]
        fn reduction_is_canonical(
            periods in prop::collection::vec(prop::collection::vec(-4i64..=4, 3), 0..4),
            v in prop::collection::vec(-6i64..=6, 3),
            c in prop::collection::vec(-3i64..=3, 4),
        ) {
            let lat = Lattice::span(3, periods.iter().map(|p| p.iter().map(|&x| x as i128).collect::<Vec<_>>()));
            let mut w: Vec<i128> = v.iter().map(|&x| x as i128).collect();
            for (p, k) in periods.iter().zip(&c) {
                for j in 0..3 { w[j] += (*k as i128) * (p[j] as i128); }
            }
            let vv: Vec<i128> = v.iter().map(|&x| x as i128).collect();
            prop_assert_eq!(lat.reduce(&vv), lat.reduce(&w));
        }
    }
}
