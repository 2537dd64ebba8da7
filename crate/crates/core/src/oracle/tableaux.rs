//! Littlewood-Richardson coefficients by direct tableau enumeration.

use crate::lr::Partition;

/// Number of semistandard skew tableaux of shape `nu / lambda` and content
/// `mu` whose reverse reading word is a lattice word.
pub fn lr_coefficient(lambda: &Partition, mu: &Partition, nu: &Partition) -> u64 {
    if nu.size() != lambda.size() + mu.size() || !lambda.fits_in(nu) {
        return 0;
    }
    let rows = nu.len();
    let width = nu.part(0) as usize;
    // cells in reverse reading order: rows top to bottom, right to left
    let cells: Vec<(usize, usize)> = (0..rows)
        .flat_map(|i| (lambda.part(i) as usize..nu.part(i) as usize).rev().map(move |c| (i, c)))
        .collect();
    let mut state = Fill {
        lambda,
        nu,
        content: mu.parts().iter().map(|&x| x as u32).collect(),
        grid: vec![vec![0u32; width]; rows],
        counts: vec![0; mu.len()],
        cells,
    };
    state.count(0)
}

struct Fill<'a> {
    lambda: &'a Partition,
    nu: &'a Partition,
    content: Vec<u32>,
    grid: Vec<Vec<u32>>,
    counts: Vec<u32>,
    cells: Vec<(usize, usize)>,
}

impl Fill<'_> {
    fn in_skew(&self, i: usize, c: usize) -> bool {
        (self.lambda.part(i) as usize) <= c && c < self.nu.part(i) as usize
    }

    fn count(&mut self, k: usize) -> u64 {
        let Some(&(i, c)) = self.cells.get(k) else {
            return 1;
        };
        // entries are 1-based; 0 marks an empty cell
        let upper = if self.in_skew(i, c + 1) {
            self.grid[i][c + 1]
        } else {
            self.content.len() as u32
        };
        let lower = if i > 0 && self.in_skew(i - 1, c) {
            self.grid[i - 1][c] + 1
        } else {
            1
        };
        let mut total = 0;
        for v in lower..=upper {
            let j = v as usize - 1;
            if self.counts[j] == self.content[j] || (j > 0 && self.counts[j] == self.counts[j - 1]) {
                continue;
            }
            self.counts[j] += 1;
            self.grid[i][c] = v;
            total += self.count(k + 1);
            self.counts[j] -= 1;
        }
        self.grid[i][c] = 0;
        total
    }
}
