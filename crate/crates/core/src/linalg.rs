//! Small dense linear algebra over F_2 on bit-packed vectors (at most 64 coordinates).

/// Row-echelon basis keyed by leading bit, tracking which inputs combine into each row.
#[derive(Debug, Clone)]
pub(crate) struct XorBasis {
    rows: Vec<Option<(u64, u64)>>,
}

impl XorBasis {
    pub(crate) fn new() -> Self {
        XorBasis {
            rows: vec![None; 64],
        }
    }

    /// Reduces `v` (with combination tag `tag`) against the basis.
    fn reduce(&self, mut v: u64, mut tag: u64) -> (u64, u64) {
        while v != 0 {
            let lead = 63 - v.leading_zeros() as usize;
            match self.rows[lead] {
                Some((r, t)) => {
                    v ^= r;
                    tag ^= t;
                }
                None => break,
            }
        }
        (v, tag)
    }

    /// Inserts `v`; returns the dependency tag when `v` is already in the span.
    pub(crate) fn insert(&mut self, v: u64, tag: u64) -> Option<u64> {
        let (v, tag) = self.reduce(v, tag);
        if v == 0 {
            return Some(tag);
        }
        let lead = 63 - v.leading_zeros() as usize;
        self.rows[lead] = Some((v, tag));
        None
    }

    /// Expresses `v` as a combination of inserted vectors.
    pub(crate) fn express(&self, v: u64) -> Option<u64> {
        let mut v = v;
        let mut tag = 0u64;
        for lead in (0..64).rev() {
            if v >> lead & 1 == 1 {
                let (r, t) = self.rows[lead]?;
                v ^= r;
                tag ^= t;
            }
        }
        Some(tag)
    }
}

pub(crate) fn rank(vectors: &[u64]) -> usize {
    let mut basis = XorBasis::new();
    vectors
        .iter()
        .filter(|&&v| basis.insert(v, 0).is_none())
        .count()
}

pub(crate) fn is_independent(vectors: &[u64]) -> bool {
    rank(vectors) == vectors.len()
}

/// Solves `sum_i x_i * columns[i] = target` and returns the solution with the
/// smallest integer value, or `None` if the target is outside the image.
pub(crate) fn solve_min(columns: &[u64], target: u64) -> Option<u64> {
    let mut basis = XorBasis::new();
    let mut kernel = Vec::new();
    for (i, &c) in columns.iter().enumerate() {
        if let Some(dep) = basis.insert(c, 1 << i) {
            kernel.push(dep);
        }
    }
    let particular = basis.express(target)?;
    Some(minimize_coset(particular, &kernel))
}

/// Smallest element of `p + span(kernel)`.
pub(crate) fn minimize_coset(p: u64, kernel: &[u64]) -> u64 {
    let mut echelon = XorBasis::new();
    for &k in kernel {
        echelon.insert(k, 0);
    }
    let mut p = p;
    for lead in (0..64).rev() {
        if let Some((r, _)) = echelon.rows[lead] {
            if p >> lead & 1 == 1 {
                p ^= r;
            }
        }
    }
    p
}

/// Square bit matrix: `rows[r]` bit `c` is entry (r, c). Acts on column vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitMatrix {
    rows: Vec<u64>,
}

impl BitMatrix {
    pub fn from_rows(rows: Vec<u64>) -> Self {
        BitMatrix { rows }
    }

    pub fn identity(dim: usize) -> Self {
        BitMatrix {
            rows: (0..dim).map(|r| 1u64 << r).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r] >> c & 1 == 1
    }

    pub fn apply(&self, v: u64) -> u64 {
        self.rows.iter().enumerate().fold(0, |acc, (r, &row)| {
            acc | (((row & v).count_ones() as u64) & 1) << r
        })
    }

    pub fn is_invertible(&self) -> bool {
        is_independent(&self.rows)
    }

    /// Gauss-Jordan inverse.
    pub fn inverse(&self) -> Option<BitMatrix> {
        let n = self.rows.len();
        let mut a = self.rows.clone();
        let mut inv: Vec<u64> = (0..n).map(|r| 1u64 << r).collect();
        for col in 0..n {
            let pivot = (col..n).find(|&r| a[r] >> col & 1 == 1)?;
            a.swap(col, pivot);
            inv.swap(col, pivot);
            for r in 0..n {
                if r != col && a[r] >> col & 1 == 1 {
                    a[r] ^= a[col];
                    inv[r] ^= inv[col];
                }
            }
        }
        Some(BitMatrix { rows: inv })
    }
}
