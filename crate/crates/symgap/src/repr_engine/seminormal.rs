use std::collections::HashMap;

use num_traits::{One, Zero};

use super::matrix::RationalMatrix;
use super::partition::Partition;
use crate::group_algebra::{q, qf, Q};
use crate::symmetric_core::Permutation;

/// A standard Young tableau stored as the `(row, col)` cell of each entry `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Tableau {
    cells: Vec<(u8, u8)>,
}

impl Tableau {
    pub fn cell(&self, entry: usize) -> (usize, usize) {
        let (r, c) = self.cells[entry - 1];
        (r as usize, c as usize)
    }

    /// Content `col − row` of the cell holding `entry`.
    pub fn content(&self, entry: usize) -> i64 {
        let (r, c) = self.cell(entry);
        c as i64 - r as i64
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        let nrows = self.cells.iter().map(|&(r, _)| r as usize + 1).max().unwrap_or(0);
        let mut rows = vec![Vec::new(); nrows];
        for (i, &(r, _)) in self.cells.iter().enumerate() {
            rows[r as usize].push(i + 1);
        }
        rows
    }

    fn swapped(&self, i: usize) -> Tableau {
        let mut cells = self.cells.clone();
        cells.swap(i - 1, i);
        Tableau { cells }
    }
}

/// Standard tableaux of shape `μ`, grouped by the corner holding `n`
/// (corners top to bottom), recursively. Restricting to `Sym_{n−1}` is then
/// block diagonal with the blocks of `remove_corner_squares(μ)` in order.
pub fn standard_tableaux(mu: &Partition) -> Vec<Tableau> {
    let n = mu.size();
    if n == 1 {
        return vec![Tableau { cells: vec![(0, 0)] }];
    }
    let mut out = Vec::new();
    for r in mu.corner_rows() {
        let sub = mu.remove_box(r);
        let col = mu.parts()[r] - 1;
        for t in standard_tableaux(&sub) {
            let mut cells = t.cells;
            cells.push((r as u8, col as u8));
            out.push(Tableau { cells });
        }
    }
    out
}

/// Action of one adjacent transposition on a basis vector:
/// `ρ(s_i) e_T = diag·e_T + weight·e_partner`.
#[derive(Clone, Debug)]
pub(crate) struct Slot {
    pub diag: Q,
    pub partner: Option<(usize, Q)>,
}

/// Young's seminormal form of `V_μ`.
#[derive(Clone, Debug)]
pub struct IrrepMatrices {
    shape: Partition,
    tableaux: Vec<Tableau>,
    /// `gens[i-1][t]` describes `ρ(s_i) e_t`.
    gens: Vec<Vec<Slot>>,
}

/// Builds `V_μ` on the standard tableaux basis with the axial-distance rule.
pub fn seminormal_irrep(mu: &Partition) -> IrrepMatrices {
    let tableaux = standard_tableaux(mu);
    let index: HashMap<&Tableau, usize> = tableaux.iter().enumerate().map(|(k, t)| (t, k)).collect();
    let n = mu.size();
    let mut gens = Vec::with_capacity(n.saturating_sub(1));
    for i in 1..n {
        let slots = tableaux
            .iter()
            .map(|t| {
                let (ri, ci) = t.cell(i);
                let (rj, cj) = t.cell(i + 1);
                if ri == rj {
                    Slot { diag: Q::one(), partner: None }
                } else if ci == cj {
                    Slot { diag: -Q::one(), partner: None }
                } else {
                    let r = t.content(i + 1) - t.content(i);
                    let partner = index[&t.swapped(i)];
                    let weight = if r < 0 { Q::one() } else { Q::one() - qf(1, r * r) };
                    Slot { diag: qf(1, r), partner: Some((partner, weight)) }
                }
            })
            .collect();
        gens.push(slots);
    }
    IrrepMatrices { shape: mu.clone(), tableaux, gens }
}

impl IrrepMatrices {
    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn dimension(&self) -> usize {
        self.tableaux.len()
    }

    pub fn degree(&self) -> usize {
        self.shape.size()
    }

    pub fn tableaux(&self) -> &[Tableau] {
        &self.tableaux
    }

    pub(crate) fn slots(&self, i: usize) -> &[Slot] {
        &self.gens[i - 1]
    }

    /// Dense matrix of `ρ(s_i)`, `1 ≤ i < n`.
    pub fn generator(&self, i: usize) -> RationalMatrix {
        let d = self.dimension();
        let mut m = RationalMatrix::zeros(d);
        for (col, slot) in self.gens[i - 1].iter().enumerate() {
            m[(col, col)] = slot.diag.clone();
            if let Some((row, w)) = &slot.partner {
                m[(*row, col)] = w.clone();
            }
        }
        m
    }

    /// `X ← X·ρ(s_i)` as sparse column operations.
    pub(crate) fn right_multiply_generator(&self, x: &mut RationalMatrix, i: usize) {
        let d = self.dimension();
        let slots = &self.gens[i - 1];
        let mut done = vec![false; d];
        for c in 0..d {
            if done[c] {
                continue;
            }
            let slot = &slots[c];
            match &slot.partner {
                None => {
                    if slot.diag != Q::one() {
                        for r in 0..d {
                            let v = -&x[(r, c)];
                            x[(r, c)] = v;
                        }
                    }
                    done[c] = true;
                }
                Some((p, wc)) => {
                    let p = *p;
                    let (dp, wp) = (&slots[p].diag, &slots[p].partner.as_ref().expect("paired").1);
                    for r in 0..d {
                        let (xc, xp) = (&x[(r, c)], &x[(r, p)]);
                        if xc.is_zero() && xp.is_zero() {
                            continue;
                        }
                        let new_c = &slot.diag * xc + wc * xp;
                        let new_p = wp * xc + dp * xp;
                        x[(r, c)] = new_c;
                        x[(r, p)] = new_p;
                    }
                    done[c] = true;
                    done[p] = true;
                }
            }
        }
    }

    /// `ρ(π)` through a reduced word.
    pub fn matrix_of(&self, p: &Permutation) -> RationalMatrix {
        let mut m = RationalMatrix::identity(self.dimension());
        for &i in &p.reduced_word() {
            self.right_multiply_generator(&mut m, i);
        }
        m
    }

    /// `χ_μ(π)`.
    pub fn character(&self, p: &Permutation) -> Q {
        self.matrix_of(p).trace()
    }
}

/// `χ_μ((1 2)) / χ_μ(id)` from the first generator's trace.
pub(crate) fn transposition_ratio(rep: &IrrepMatrices) -> Q {
    if rep.degree() < 2 {
        return Q::one();
    }
    let tr = rep.slots(1).iter().fold(Q::zero(), |acc, s| acc + &s.diag);
    tr / q(rep.dimension() as i64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::repr_engine::partition::partitions_of;

    #[test]
    fn coxeter_relations_hold() {
        for n in 1..=6 {
            for mu in partitions_of(n).unwrap() {
                let rep = seminormal_irrep(&mu);
                assert_eq!(rep.dimension() as u64, mu.dimension(), "{mu}");
                let d = rep.dimension();
                let id = RationalMatrix::identity(d);
                let g: Vec<RationalMatrix> = (1..n).map(|i| rep.generator(i)).collect();
                for i in 0..g.len() {
                    assert_eq!(&g[i] * &g[i], id, "s{} squared on {mu}", i + 1);
                    if i + 1 < g.len() {
                        let lhs = &(&g[i] * &g[i + 1]) * &g[i];
                        let rhs = &(&g[i + 1] * &g[i]) * &g[i + 1];
                        assert_eq!(lhs, rhs, "braid {} on {mu}", i + 1);
                    }
                    for j in i + 2..g.len() {
                        assert_eq!(&g[i] * &g[j], &g[j] * &g[i], "commute {} {} on {mu}", i + 1, j + 1);
                    }
                }
            }
        }
    }

    #[test]
    fn trivial_and_sign_representations() {
        let rep = seminormal_irrep(&Partition::new(vec![5]).unwrap());
        assert_eq!(rep.dimension(), 1);
        for i in 1..5 {
            assert_eq!(rep.generator(i), RationalMatrix::identity(1));
        }
        let sign = seminormal_irrep(&Partition::new(vec![1, 1, 1]).unwrap());
        assert_eq!(sign.generator(2), RationalMatrix::scalar(1, &-Q::one()));
    }

    #[test]
    fn restriction_is_block_diagonal() {
        let mu = Partition::new(vec![3, 2, 1]).unwrap();
        let rep = seminormal_irrep(&mu);
        let mut blocks = Vec::new();
        for r in mu.corner_rows() {
            blocks.push(seminormal_irrep(&mu.remove_box(r)));
        }
        for i in 1..5 {
            let expected = RationalMatrix::block_diag(&blocks.iter().map(|b| b.generator(i)).collect::<Vec<_>>());
            assert_eq!(rep.generator(i), expected);
        }
    }
}
