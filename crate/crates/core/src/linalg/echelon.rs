use crate::field::{FieldElement, FieldSpec};

/// Incremental row echelon basis that remembers how every stored row was
/// formed from the vectors inserted so far ("generators").
///
/// Dependency detection returns the coefficients expressing the rejected
/// vector in the accepted generators, which is exactly what both the Krylov
/// minimal polynomial and the monomial BFS for annihilator ideals need.
#[derive(Clone, Debug)]
pub(crate) struct TrackedEchelon {
    field: FieldSpec,
    rows: Vec<Row>,
    generators: usize,
}

#[derive(Clone, Debug)]
struct Row {
    pivot: usize,
    vec: Vec<FieldElement>,
    comb: Vec<FieldElement>,
}

impl TrackedEchelon {
    pub(crate) fn new(field: FieldSpec) -> Self {
        TrackedEchelon { field, rows: Vec::new(), generators: 0 }
    }

    pub(crate) fn generators(&self) -> usize {
        self.generators
    }

    /// `v - sum(comb_j g_j)` after elimination, together with `comb`.
    fn reduce(&self, v: &[FieldElement]) -> (Vec<FieldElement>, Vec<FieldElement>) {
        let mut v = v.to_vec();
        let mut comb = vec![self.field.zero(); self.generators];
        for row in &self.rows {
            let c = v[row.pivot].clone();
            if c.is_zero() {
                continue;
            }
            for (x, y) in v.iter_mut().zip(&row.vec) {
                if !y.is_zero() {
                    *x = &*x - &(&c * y);
                }
            }
            for (x, y) in comb.iter_mut().zip(&row.comb) {
                if !y.is_zero() {
                    *x = &*x + &(&c * y);
                }
            }
        }
        (v, comb)
    }

    /// Coefficients of `v` in the generators, if `v` lies in their span.
    pub(crate) fn express(&self, v: &[FieldElement]) -> Option<Vec<FieldElement>> {
        let (rest, comb) = self.reduce(v);
        rest.iter().all(FieldElement::is_zero).then_some(comb)
    }

    /// Returns `Some(comb)` with `v = sum(comb_j g_j)` when `v` is dependent;
    /// otherwise stores `v` as generator number `generators()` and returns
    /// `None`.
    pub(crate) fn insert(&mut self, v: &[FieldElement]) -> Option<Vec<FieldElement>> {
        let (rest, comb) = self.reduce(v);
        let pivot = match rest.iter().position(|x| !x.is_zero()) {
            None => return Some(comb),
            Some(p) => p,
        };
        let inv = rest[pivot].inv().expect("nonzero pivot");
        let vec = rest.iter().map(|x| x * &inv).collect();
        let mut row_comb: Vec<FieldElement> = comb.iter().map(|c| -&(c * &inv)).collect();
        row_comb.push(inv);
        for row in &mut self.rows {
            row.comb.push(self.field.zero());
        }
        self.rows.push(Row { pivot, vec, comb: row_comb });
        self.generators += 1;
        None
    }
}
