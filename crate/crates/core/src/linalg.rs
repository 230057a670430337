//! Sparse exact elimination over the scalar field.
//!
//! Vectors are `BTreeMap`s from ordered keys to nonzero scalars. The
//! reducer keeps its pivot rows fully reduced, so a single pass reduces any
//! vector; pivots are chosen as the smallest key, which makes every result
//! independent of scheduling.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::scalar::{ParamPoly, Scalar};

pub type SVec<K> = BTreeMap<K, Scalar>;

/// `v += c * w`, dropping zeros.
pub fn axpy<K: Ord + Clone>(v: &mut SVec<K>, c: &Scalar, w: &SVec<K>) {
    if c.is_zero() {
        return;
    }
    for (k, x) in w {
        let add = c * x;
        match v.get_mut(k) {
            Some(y) => {
                let s = &*y + &add;
                if s.is_zero() {
                    v.remove(k);
                } else {
                    *y = s;
                }
            }
            None => {
                v.insert(k.clone(), add);
            }
        }
    }
}

pub fn scaled<K: Ord + Clone>(v: &SVec<K>, c: &Scalar) -> SVec<K> {
    if c.is_zero() {
        return SVec::new();
    }
    v.iter().map(|(k, x)| (k.clone(), x * c)).collect()
}

pub fn dot<K: Ord>(a: &SVec<K>, b: &SVec<K>) -> Scalar {
    let (small, big) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    let mut s = Scalar::zero();
    for (k, x) in small {
        if let Some(y) = big.get(k) {
            s = &s + &(x * y);
        }
    }
    s
}

#[derive(Clone, Debug)]
struct Pivot<K> {
    key: K,
    vec: SVec<K>,
    /// Combination of pushed columns equal to `vec`.
    combo: SVec<usize>,
}

/// Outcome of [`Reducer::solve`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Solution<K> {
    /// `target = sum_j c_j col_j`.
    Witness(SVec<usize>),
    /// A functional vanishing on every column, with its value on the target.
    Obstruction { functional: SVec<K>, value: Scalar },
}

/// Incremental column reduction tracking combinations.
#[derive(Clone, Debug)]
pub struct Reducer<K> {
    pivots: Vec<Pivot<K>>,
    by_key: BTreeMap<K, usize>,
    ncols: usize,
    kernel: Vec<SVec<usize>>,
}

impl<K: Ord + Clone> Default for Reducer<K> {
    fn default() -> Self {
        Reducer {
            pivots: Vec::new(),
            by_key: BTreeMap::new(),
            ncols: 0,
            kernel: Vec::new(),
        }
    }
}

impl<K: Ord + Clone> Reducer<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_columns<'a>(cols: impl IntoIterator<Item = &'a SVec<K>>) -> Self
    where
        K: 'a,
    {
        let mut r = Self::new();
        for c in cols {
            r.push(c);
        }
        r
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    /// Kernel vectors found so far: for each dependent column `j`, `e_j`
    /// minus its expression in earlier pivot columns.
    pub fn kernel(&self) -> &[SVec<usize>] {
        &self.kernel
    }

    /// Reduces `v` against the pivots; returns the residual and the
    /// combination that was subtracted.
    pub fn reduce(&self, v: &SVec<K>) -> (SVec<K>, SVec<usize>) {
        let mut w = v.clone();
        let mut used = SVec::new();
        let hits: Vec<(usize, Scalar)> = v
            .iter()
            .filter_map(|(k, c)| self.by_key.get(k).map(|&p| (p, c.clone())))
            .collect();
        for (p, c) in hits {
            let piv = &self.pivots[p];
            axpy(&mut w, &-c.clone(), &piv.vec);
            axpy(&mut used, &c, &piv.combo);
        }
        (w, used)
    }

    pub fn contains(&self, v: &SVec<K>) -> bool {
        self.reduce(v).0.is_empty()
    }

    /// Adds a column; returns `true` if it raised the rank.
    pub fn push(&mut self, col: &SVec<K>) -> bool {
        let j = self.ncols;
        self.ncols += 1;
        let (mut w, used) = self.reduce(col);
        let mut combo: SVec<usize> = SVec::new();
        combo.insert(j, Scalar::one());
        axpy(&mut combo, &-Scalar::one(), &used);
        let Some((key, lead)) = w.iter().next().map(|(k, c)| (k.clone(), c.clone())) else {
            self.kernel.push(combo);
            return false;
        };
        let inv = lead.inv().expect("nonzero pivot");
        w = scaled(&w, &inv);
        combo = scaled(&combo, &inv);
        for p in &mut self.pivots {
            if let Some(c) = p.vec.get(&key).cloned() {
                let c = -c;
                axpy(&mut p.vec, &c, &w);
                axpy(&mut p.combo, &c, &combo);
            }
        }
        self.by_key.insert(key.clone(), self.pivots.len());
        self.pivots.push(Pivot { key, vec: w, combo });
        true
    }

    pub fn solve(&self, target: &SVec<K>) -> Solution<K> {
        let (w, used) = self.reduce(target);
        let Some((q, value)) = w.iter().next().map(|(k, c)| (k.clone(), c.clone())) else {
            return Solution::Witness(used);
        };
        // y(v) = v[q] - sum_p P_p[q] v[key_p]
        let mut functional = SVec::new();
        functional.insert(q.clone(), Scalar::one());
        for p in &self.pivots {
            if let Some(c) = p.vec.get(&q) {
                functional.insert(p.key.clone(), -c.clone());
            }
        }
        Solution::Obstruction { functional, value }
    }
}

/// Groups columns into connected components of the "shares a key" graph;
/// components are listed by first column, columns in increasing order.
fn blocks<K: Ord>(cols: &[SVec<K>]) -> Vec<Vec<usize>> {
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        let mut y = x;
        while parent[y] != r {
            let next = parent[y];
            parent[y] = r;
            y = next;
        }
        r
    }
    let mut parent: Vec<usize> = (0..cols.len()).collect();
    let mut owner: BTreeMap<&K, usize> = BTreeMap::new();
    for (j, c) in cols.iter().enumerate() {
        for k in c.keys() {
            match owner.get(k) {
                Some(&o) => {
                    let (a, b) = (find(&mut parent, o), find(&mut parent, j));
                    if a != b {
                        parent[a.max(b)] = a.min(b);
                    }
                }
                None => {
                    owner.insert(k, j);
                }
            }
        }
    }
    let mut out: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for j in 0..cols.len() {
        let r = find(&mut parent, j);
        out.entry(r).or_default().push(j);
    }
    out.into_values().collect()
}

/// Kernel of the map sending column index `j` to `cols[j]`.
///
/// Eliminates each block of key-sharing columns on its own; the result is
/// the same as one pass over all columns (dependencies never cross
/// blocks), but fill-in stays inside the blocks.
pub fn kernel<K: Ord + Clone>(cols: &[SVec<K>]) -> Vec<SVec<usize>> {
    let mut found: Vec<(usize, SVec<usize>)> = Vec::new();
    for b in blocks(cols) {
        let red = Reducer::from_columns(b.iter().map(|&j| &cols[j]));
        for k in red.kernel() {
            let v: SVec<usize> = k.iter().map(|(i, c)| (b[*i], c.clone())).collect();
            let last = *v.keys().next_back().expect("kernel vectors are nonzero");
            found.push((last, v));
        }
    }
    found.sort_by_key(|(j, _)| *j);
    found.into_iter().map(|(_, v)| v).collect()
}

pub fn rank<K: Ord + Clone>(cols: &[SVec<K>]) -> usize {
    Reducer::from_columns(cols).rank()
}

/// Representatives of `span(ker) / (span(ker) ∩ span(im))`.
///
/// Prefers representatives orthogonal to `im` under the coordinate pairing
/// (canonical, and a complement whenever the pairing is anisotropic, as it
/// is over the rationals and rational functions); otherwise falls back to a
/// greedy choice among `ker`.
pub fn quotient<K: Ord + Clone>(ker: &[SVec<K>], im: &[SVec<K>]) -> (usize, Vec<SVec<K>>) {
    let mut red = Reducer::from_columns(im);
    let base = red.rank();
    let mut greedy = Vec::new();
    for k in ker {
        if red.push(k) {
            greedy.push(k.clone());
        }
    }
    let dim = red.rank() - base;
    if dim == 0 {
        return (0, Vec::new());
    }
    // c in ker(c -> (<sum_i c_i ker_i, im_j>)_j)
    let gram: Vec<SVec<usize>> = ker
        .iter()
        .map(|k| {
            im.iter()
                .enumerate()
                .filter_map(|(j, i)| {
                    let d = dot(k, i);
                    (!d.is_zero()).then_some((j, d))
                })
                .collect()
        })
        .collect();
    let combos = kernel(&gram);
    let mut ortho: Vec<SVec<K>> = Vec::new();
    let mut check = Reducer::from_columns(im);
    for c in &combos {
        let mut v = SVec::new();
        for (i, x) in c {
            axpy(&mut v, x, &ker[*i]);
        }
        if !v.is_empty() && check.push(&v) {
            ortho.push(v);
        }
    }
    let reps = if ortho.len() == dim { ortho } else { greedy };
    (dim, reps.into_iter().map(|v| normalize(&v)).collect())
}

/// Clears denominators, divides out the numerator gcd and makes the last
/// coefficient look positive.
pub fn normalize<K: Ord + Clone>(v: &SVec<K>) -> SVec<K> {
    let mut w = v.clone();
    loop {
        let den = w.values().map(|c| c.numerator_denominator().1).find(|d| *d != ParamPoly::constant(1));
        match den {
            Some(d) => w = scaled(&w, &Scalar::from_polys(d, ParamPoly::constant(1))),
            None => break,
        }
    }
    let mut g: Option<ParamPoly> = None;
    for c in w.values() {
        let n = c.numerator_denominator().0;
        g = Some(match g {
            None => n,
            Some(h) => h.gcd(&n),
        });
    }
    if let Some(g) = g {
        if !g.is_zero() && g != ParamPoly::constant(1) {
            if let Some(inv) = Scalar::from_polys(g, ParamPoly::constant(1)).inv() {
                w = scaled(&w, &inv);
            }
        }
    }
    if w.values().next_back().is_some_and(|c| c.looks_negative()) {
        w = scaled(&w, &-Scalar::one());
    }
    w
}

/// A sparse matrix with labelled rows and columns and exact entries
/// printed as strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SparseMatrix {
    pub name: String,
    pub rows: Vec<String>,
    pub cols: Vec<String>,
    pub entries: Vec<(usize, usize, String)>,
}

impl SparseMatrix {
    pub fn from_columns<K: Ord + Clone>(
        name: &str,
        cols: &[SVec<K>],
        col_labels: Vec<String>,
        row_label: impl Fn(&K) -> String,
    ) -> Self {
        let mut keys: Vec<K> = cols.iter().flat_map(|c| c.keys().cloned()).collect();
        keys.sort();
        keys.dedup();
        let index: BTreeMap<&K, usize> = keys.iter().enumerate().map(|(i, k)| (k, i)).collect();
        let mut entries = Vec::new();
        for (j, c) in cols.iter().enumerate() {
            for (k, x) in c {
                entries.push((index[k], j, x.to_string()));
            }
        }
        entries.sort();
        SparseMatrix {
            name: name.to_string(),
            rows: keys.iter().map(row_label).collect(),
            cols: col_labels,
            entries,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(items: &[(u32, i64)]) -> SVec<u32> {
        items.iter().map(|&(k, c)| (k, Scalar::int(c))).collect()
    }

    #[test]
    fn kernel_of_dependent_columns() {
        let cols = vec![v(&[(0, 1), (1, 2)]), v(&[(0, 2), (1, 4)]), v(&[(1, 1)]), v(&[])];
        let k = kernel(&cols);
        assert_eq!(k.len(), 2);
        assert_eq!(k[0], [(0, Scalar::int(-2)), (1, Scalar::one())].into_iter().collect());
        assert_eq!(k[1], [(3, Scalar::one())].into_iter().collect());
        assert_eq!(rank(&cols), 2);
    }

    proptest::proptest! {
        #[test]
        fn blockwise_kernel_matches_one_pass(
            raw in proptest::collection::vec(proptest::collection::vec((0u32..12, -2i64..=2), 0..4), 0..14)
        ) {
            let cols: Vec<SVec<u32>> = raw
                .iter()
                .map(|c| c.iter().filter(|(_, x)| *x != 0).map(|&(k, x)| (k, Scalar::int(x))).collect())
                .collect();
            proptest::prop_assert_eq!(kernel(&cols), Reducer::from_columns(&cols).kernel().to_vec());
        }
    }

    #[test]
    fn solve_returns_witness_or_separating_functional() {
        let cols = vec![v(&[(0, 1), (1, 1)]), v(&[(1, 1), (2, 1)])];
        let r = Reducer::from_columns(&cols);
        match r.solve(&v(&[(0, 1), (2, -1)])) {
            Solution::Witness(c) => {
                assert_eq!(c, [(0, Scalar::one()), (1, Scalar::int(-1))].into_iter().collect())
            }
            other => panic!("{other:?}"),
        }
        let t = v(&[(0, 1)]);
        match r.solve(&t) {
            Solution::Obstruction { functional, value } => {
                for c in &cols {
                    assert!(dot(&functional, c).is_zero());
                }
                assert_eq!(dot(&functional, &t), value);
                assert!(!value.is_zero());
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn quotient_prefers_orthogonal_representatives() {
        let l0 = Scalar::param("l0");
        let l1 = Scalar::param("l1");
        let ker = vec![
            [(0u32, Scalar::one())].into_iter().collect(),
            [(1u32, Scalar::one())].into_iter().collect(),
        ];
        let im = vec![[(0u32, l0.clone()), (1u32, l1.clone())].into_iter().collect()];
        let (dim, reps) = quotient(&ker, &im);
        assert_eq!(dim, 1);
        let expect: SVec<u32> = [(0, -l1), (1, l0)].into_iter().collect();
        assert_eq!(reps, vec![expect]);
    }
}
