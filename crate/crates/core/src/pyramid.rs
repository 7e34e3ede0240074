//! Left-justified pyramids `π = (p_1, …, p_n)` and the cell index set they induce.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tableau::TriIndex;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "PyramidDoc", into = "PyramidDoc")]
pub struct Pyramid {
    rows: Vec<usize>,
    cells: Vec<TriIndex>,
    row_start: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct PyramidDoc {
    rows: Vec<usize>,
}

impl TryFrom<PyramidDoc> for Pyramid {
    type Error = Error;
    fn try_from(d: PyramidDoc) -> Result<Self> {
        Pyramid::new(d.rows)
    }
}

impl From<Pyramid> for PyramidDoc {
    fn from(p: Pyramid) -> Self {
        PyramidDoc { rows: p.rows }
    }
}

impl Pyramid {
    pub fn new(rows: Vec<usize>) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::InvalidPyramid("no rows".into()));
        }
        if rows[0] == 0 {
            return Err(Error::InvalidPyramid("row lengths must be positive".into()));
        }
        if rows.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidPyramid(format!(
                "row lengths {rows:?} are not non-decreasing"
            )));
        }
        let n = rows.len();
        let mut cells = Vec::new();
        let mut row_start = Vec::with_capacity(n + 1);
        for i in 1..=n {
            row_start.push(cells.len());
            for j in 1..=i {
                for k in 1..=rows[j - 1] {
                    cells.push(TriIndex::new(k, i, j));
                }
            }
        }
        row_start.push(cells.len());
        Ok(Pyramid {
            rows,
            cells,
            row_start,
        })
    }

    /// The one-column pyramid of `gl_n`.
    pub fn gl(n: usize) -> Result<Self> {
        Pyramid::new(vec![1; n])
    }

    pub fn rows(&self) -> &[usize] {
        &self.rows
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }

    /// `p_i`, 1-based.
    pub fn p(&self, i: usize) -> usize {
        self.rows[i - 1]
    }

    /// `N = p_1 + … + p_n`.
    pub fn total(&self) -> usize {
        self.rows.iter().sum()
    }

    pub fn is_one_column(&self) -> bool {
        self.rows.iter().all(|&p| p == 1)
    }

    /// Column heights `q_1 ≥ … ≥ q_l`, `l = p_n`.
    pub fn columns(&self) -> Vec<usize> {
        let n = self.n();
        (1..=self.p(n))
            .map(|k| self.rows.iter().filter(|&&p| p >= k).count())
            .collect()
    }

    /// Least superscript of `e_i^{(r)}`: `p_{i+1} − p_i + 1`.
    pub fn e_min_degree(&self, i: usize) -> Result<usize> {
        if i == 0 || i >= self.n() {
            return Err(Error::IndexOutOfRange(format!(
                "row {i} has no e-generators for n = {}",
                self.n()
            )));
        }
        Ok(self.p(i + 1) - self.p(i) + 1)
    }

    /// Number of cells in row `r`: `p_1 + … + p_r`.
    pub fn row_len(&self, r: usize) -> usize {
        self.rows[..r].iter().sum()
    }

    /// All cells of the index set, ordered by row, then position, then layer.
    pub fn cells(&self) -> &[TriIndex] {
        &self.cells
    }

    pub fn num_cells(&self) -> usize {
        self.cells.len()
    }

    /// Dense indices of the cells of row `r` (1-based row).
    pub fn row_range(&self, r: usize) -> std::ops::Range<usize> {
        self.row_start[r - 1]..self.row_start[r]
    }

    pub fn contains(&self, t: &TriIndex) -> bool {
        t.i >= 1 && t.i <= self.n() && t.j >= 1 && t.j <= t.i && t.k >= 1 && t.k <= self.p(t.j)
    }

    pub fn index_of(&self, t: &TriIndex) -> Result<usize> {
        if !self.contains(t) {
            return Err(Error::InvalidTriple(*t));
        }
        let mut idx = self.row_start[t.i - 1];
        idx += self.rows[..t.j - 1].iter().sum::<usize>();
        Ok(idx + t.k - 1)
    }
}

/// Row lengths recovered from column heights.
pub fn rows_from_columns(columns: &[usize]) -> Vec<usize> {
    let n = columns.first().copied().unwrap_or(0);
    (1..=n)
        .map(|i| columns.iter().filter(|&&q| q > n - i).count())
        .collect()
}
