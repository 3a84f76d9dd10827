//! Dynamic program over an elimination forest.
//!
//! Every edge joins a vertex to one of its ancestors, so it is decided at
//! its lower endpoint. Once the subtree of `v` is processed, the degrees of
//! all its vertices are final and the rest of the graph only sees:
//!
//! * `delta[a]`, the number of chosen edges between the subtree and each
//!   strict ancestor `a` of `v`;
//! * `kappa[k]`, the number of chosen edges of color `k` decided so far.
//!
//! A table maps `(delta, kappa)` to the best partial objective. At `v` the
//! children's tables (keyed over the ancestors of `v` plus `v`) are merged
//! by max-plus convolution, each up-edge of `v` is chosen or not, `f_v` is
//! charged at the now-final degree of `v`, and `v`'s coordinate is dropped.
//! A virtual root merges the trees and keeps `kappa = m`.
//!
//! Tables are sparse in `delta` and dense in `kappa`: each `delta` key owns
//! an array over the window of color counts that can still reach `m`.
//! Optimal edge sets are recovered by searching the stored stages from the
//! top down for entries whose values add up.

use rayon::prelude::*;
use rustc_hash::FxHashMap;

use crate::error::{Error, Result};
use crate::graph::{EdgeColoring, EdgeSubset, Graph};
use crate::objective::SeparableObjective;
use crate::treedepth::{check_forest, EliminationForest};

use super::ColoredSolution;

const ABSENT: i64 = i64::MIN;
const CELL_LIMIT: usize = 1 << 26;

/// Feasible color counts after some edges of each color are decided:
/// `max(0, m_k - undecided_k) ..= min(m_k, decided_k)`.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Window {
    lo: Vec<u32>,
    dims: Vec<u32>,
    strides: Vec<usize>,
    cells: usize,
}

impl Window {
    fn new(counts: &[u32], sizes: &[u32], decided: &[u32]) -> Result<Self> {
        let mut lo = Vec::with_capacity(counts.len());
        let mut dims = Vec::with_capacity(counts.len());
        for ((&want, &size), &done) in counts.iter().zip(sizes).zip(decided) {
            let low = (want + done).saturating_sub(size);
            let high = want.min(done);
            lo.push(low);
            dims.push((high + 1).saturating_sub(low));
        }
        let mut strides = vec![0; dims.len()];
        let mut cells = 1usize;
        for k in (0..dims.len()).rev() {
            strides[k] = cells;
            cells = cells.saturating_mul(dims[k] as usize);
            if cells > CELL_LIMIT {
                return Err(Error::Limit {
                    what: "color-count window size",
                    actual: cells,
                    limit: CELL_LIMIT,
                    hint: "; too many colors with large counts",
                });
            }
        }
        Ok(Window {
            lo,
            dims,
            strides,
            cells,
        })
    }

    /// Absolute color counts of every cell.
    fn coordinates(&self) -> Vec<u32> {
        let p = self.dims.len();
        let mut out = vec![0u32; self.cells * p];
        for cell in 0..self.cells {
            for k in 0..p {
                out[cell * p + k] = self.lo[k] + (cell / self.strides[k]) as u32 % self.dims[k];
            }
        }
        out
    }

    fn cell(&self, kappa: &[u32]) -> Option<usize> {
        let mut idx = 0;
        for (k, &x) in kappa.iter().enumerate().take(self.dims.len()) {
            let off = x.checked_sub(self.lo[k])?;
            if off >= self.dims[k] {
                return None;
            }
            idx += off as usize * self.strides[k];
        }
        Some(idx)
    }
}

#[derive(Debug)]
struct Table {
    window: Window,
    deltas: Vec<Box<[u32]>>,
    values: Vec<Vec<i64>>,
    index: FxHashMap<Box<[u32]>, usize>,
}

impl Table {
    fn new(window: Window) -> Self {
        Table {
            window,
            deltas: Vec::new(),
            values: Vec::new(),
            index: FxHashMap::default(),
        }
    }

    fn unit(delta_len: usize, window: Window) -> Self {
        let mut t = Table::new(window);
        if t.window.cells > 0 {
            let b = t.block(&vec![0; delta_len]);
            t.values[b][0] = 0;
        }
        t
    }

    fn block(&mut self, delta: &[u32]) -> usize {
        if let Some(&b) = self.index.get(delta) {
            return b;
        }
        let b = self.deltas.len();
        self.deltas.push(delta.into());
        self.values.push(vec![ABSENT; self.window.cells]);
        self.index.insert(delta.into(), b);
        b
    }

    fn find(&self, delta: &[u32]) -> Option<usize> {
        self.index.get(delta).copied()
    }

    fn get(&self, delta: &[u32], kappa: &[u32]) -> Option<i64> {
        let b = self.find(delta)?;
        let c = self.window.cell(kappa)?;
        Some(self.values[b][c]).filter(|&v| v != ABSENT)
    }
}

fn offer(slot: &mut i64, value: i64) -> Result<()> {
    if value == ABSENT {
        return Err(Error::Overflow("colored objective"));
    }
    if value > *slot {
        *slot = value;
    }
    Ok(())
}

fn add(a: i64, b: i64) -> Result<i64> {
    a.checked_add(b).ok_or(Error::Overflow("colored objective"))
}

struct Problem<'a> {
    objective: &'a SeparableObjective,
    children: Vec<Vec<usize>>,
    /// Root-first strict ancestors.
    ancestors: Vec<Vec<usize>>,
    /// `(position in ancestors, edge index)` for each edge to an ancestor.
    up_edges: Vec<Vec<(usize, usize)>>,
    colors: Option<&'a [usize]>,
    counts: Vec<u32>,
    class_sizes: Vec<u32>,
}

/// Solved subtree: merge stages over children, one stage per up-edge, and
/// the final table keyed over strict ancestors.
struct Node {
    vertex: usize,
    merges: Vec<Table>,
    choices: Vec<Table>,
    result: Table,
    decided: Vec<u32>,
    children: Vec<Node>,
}

/// One entry of a table: `delta` key, absolute color counts, value.
#[derive(Debug, Clone)]
struct Entry {
    delta: Vec<u32>,
    kappa: Vec<u32>,
    value: i64,
}

impl Problem<'_> {
    fn window(&self, decided: &[u32]) -> Result<Window> {
        Window::new(&self.counts, &self.class_sizes, decided)
    }

    fn merge(&self, acc: &Table, child: &Table, window: Window) -> Result<Table> {
        let p = self.counts.len();
        let mut out = Table::new(window);
        if out.window.cells == 0 || child.window.cells == 0 {
            return Ok(out);
        }
        let ca = acc.window.coordinates();
        let (bw, ow) = (&child.window, out.window.clone());
        // For a fixed cell of `acc`, the usable cells of `child` form a box;
        // it is walked with an odometer, and the output cell moves by the
        // output stride of whichever coordinate advanced.
        let mut lo = vec![0u32; p];
        let mut hi = vec![0u32; p];
        let mut at = vec![0u32; p];
        let mut delta = Vec::new();
        for (da, va) in acc.deltas.iter().zip(&acc.values) {
            for (db, vb) in child.deltas.iter().zip(&child.values) {
                delta.clear();
                delta.extend(da.iter().zip(db.iter()).map(|(x, y)| x + y));
                let ob = out.block(&delta);
                let target = &mut out.values[ob];
                'cells: for (i, &x) in va.iter().enumerate() {
                    if x == ABSENT {
                        continue;
                    }
                    let ka = &ca[i * p..(i + 1) * p];
                    let mut bstart = 0usize;
                    let mut ostart = 0usize;
                    for k in 0..p {
                        let b_hi = bw.lo[k] + bw.dims[k] - 1;
                        let o_lo = ow.lo[k];
                        let o_hi = ow.lo[k] + ow.dims[k] - 1;
                        lo[k] = bw.lo[k].max(o_lo.saturating_sub(ka[k]));
                        let Some(top) = o_hi.checked_sub(ka[k]) else {
                            continue 'cells;
                        };
                        hi[k] = b_hi.min(top);
                        if lo[k] > hi[k] {
                            continue 'cells;
                        }
                        at[k] = lo[k];
                        bstart += (lo[k] - bw.lo[k]) as usize * bw.strides[k];
                        ostart += (ka[k] + lo[k] - o_lo) as usize * ow.strides[k];
                    }
                    let (mut j, mut c) = (bstart, ostart);
                    loop {
                        let y = vb[j];
                        if y != ABSENT {
                            offer(&mut target[c], add(x, y)?)?;
                        }
                        let mut k = p;
                        loop {
                            if k == 0 {
                                continue 'cells;
                            }
                            k -= 1;
                            if at[k] < hi[k] {
                                at[k] += 1;
                                j += bw.strides[k];
                                c += ow.strides[k];
                                break;
                            }
                            let span = (at[k] - lo[k]) as usize;
                            j -= span * bw.strides[k];
                            c -= span * ow.strides[k];
                            at[k] = lo[k];
                        }
                    }
                }
            }
        }
        out.retain_nonempty();
        Ok(out)
    }

    /// Choose or skip edge `e` (to the ancestor at `pos`) for every entry.
    fn choice(&self, prev: &Table, pos: usize, t: usize, color: Option<usize>, window: Window) -> Result<Table> {
        let p = self.counts.len();
        let mut out = Table::new(window);
        if out.window.cells == 0 {
            return Ok(out);
        }
        let coords = prev.window.coordinates();
        let mut kappa = vec![0u32; p];
        for (d, vals) in prev.deltas.iter().zip(&prev.values) {
            let skip = out.block(d);
            let mut taken = d.to_vec();
            taken[pos] += 1;
            taken[t] += 1;
            let take = out.block(&taken);
            for (i, &x) in vals.iter().enumerate() {
                if x == ABSENT {
                    continue;
                }
                kappa.copy_from_slice(&coords[i * p..(i + 1) * p]);
                if let Some(c) = out.window.cell(&kappa) {
                    offer(&mut out.values[skip][c], x)?;
                }
                if let Some(c) = color {
                    kappa[c] += 1;
                }
                if let Some(c) = out.window.cell(&kappa) {
                    offer(&mut out.values[take][c], x)?;
                }
            }
        }
        out.retain_nonempty();
        Ok(out)
    }

    /// Charges `f_v` at coordinate `t` and drops it.
    fn charge(&self, v: usize, last: &Table, t: usize) -> Result<Table> {
        let mut out = Table::new(last.window.clone());
        for (d, vals) in last.deltas.iter().zip(&last.values) {
            let fv = self.objective.value(v, d[t] as usize)?;
            let b = out.block(&d[..t]);
            for (c, &x) in vals.iter().enumerate() {
                if x != ABSENT {
                    offer(&mut out.values[b][c], add(x, fv)?)?;
                }
            }
        }
        out.retain_nonempty();
        Ok(out)
    }

    fn solve(&self, v: usize) -> Result<Node> {
        let children: Vec<Node> = if self.children[v].len() > 1 {
            self.children[v]
                .par_iter()
                .map(|&c| self.solve(c))
                .collect::<Result<_>>()?
        } else {
            self.children[v].iter().map(|&c| self.solve(c)).collect::<Result<_>>()?
        };
        let t = self.ancestors[v].len();
        let mut decided = vec![0u32; self.counts.len()];
        let mut merges = vec![Table::unit(t + 1, self.window(&decided)?)];
        for child in &children {
            for (d, c) in decided.iter_mut().zip(&child.decided) {
                *d += c;
            }
            let next = self.merge(merges.last().unwrap(), &child.result, self.window(&decided)?)?;
            merges.push(next);
        }
        let mut choices: Vec<Table> = Vec::with_capacity(self.up_edges[v].len());
        for &(pos, e) in &self.up_edges[v] {
            let color = self.colors.map(|c| c[e]);
            if let Some(c) = color {
                decided[c] += 1;
            }
            let prev = choices.last().unwrap_or_else(|| merges.last().unwrap());
            let next = self.choice(prev, pos, t, color, self.window(&decided)?)?;
            choices.push(next);
        }
        let last = choices.last().unwrap_or_else(|| merges.last().unwrap());
        let result = self.charge(v, last, t)?;
        Ok(Node {
            vertex: v,
            merges,
            choices,
            result,
            decided,
            children,
        })
    }

    /// Splits a merged entry into an entry of `acc` and one of `child`.
    fn split(&self, acc: &Table, child: &Table, target: &Entry) -> (Entry, Entry) {
        let p = self.counts.len();
        let ca = acc.window.coordinates();
        for (da, va) in acc.deltas.iter().zip(&acc.values) {
            let Some(db) = da
                .iter()
                .zip(&target.delta)
                .map(|(a, t)| t.checked_sub(*a))
                .collect::<Option<Vec<u32>>>()
            else {
                continue;
            };
            if child.find(&db).is_none() {
                continue;
            }
            for (i, &x) in va.iter().enumerate() {
                if x == ABSENT {
                    continue;
                }
                let ka = &ca[i * p..(i + 1) * p];
                let Some(kb) = ka
                    .iter()
                    .zip(&target.kappa)
                    .map(|(a, t)| t.checked_sub(*a))
                    .collect::<Option<Vec<u32>>>()
                else {
                    continue;
                };
                if let Some(y) = child.get(&db, &kb) {
                    if x.checked_add(y) == Some(target.value) {
                        let a = Entry {
                            delta: da.to_vec(),
                            kappa: ka.to_vec(),
                            value: x,
                        };
                        let b = Entry {
                            delta: db,
                            kappa: kb,
                            value: y,
                        };
                        return (a, b);
                    }
                }
            }
        }
        unreachable!("every stored entry is the sum of two stored entries")
    }

    /// Marks the chosen edges of the subtree whose final entry is `entry`.
    fn reconstruct(&self, node: &Node, entry: Entry, subset: &mut EdgeSubset) {
        let v = node.vertex;
        let t = self.ancestors[v].len();
        let last = node.choices.last().unwrap_or_else(|| node.merges.last().unwrap());
        let mut cur = (0..self.objective.table(v).len() as u32)
            .find_map(|z| {
                let mut delta = entry.delta.clone();
                delta.push(z);
                let fv = self.objective.value(v, z as usize).ok()?;
                let x = last.get(&delta, &entry.kappa)?;
                (x.checked_add(fv) == Some(entry.value)).then_some(Entry {
                    delta,
                    kappa: entry.kappa.clone(),
                    value: x,
                })
            })
            .expect("charged entry has a source");
        for (s, &(pos, e)) in self.up_edges[v].iter().enumerate().rev() {
            let prev = if s == 0 {
                node.merges.last().unwrap()
            } else {
                &node.choices[s - 1]
            };
            if prev.get(&cur.delta, &cur.kappa) == Some(cur.value) {
                continue;
            }
            subset.insert(e);
            cur.delta[pos] -= 1;
            cur.delta[t] -= 1;
            if let Some(colors) = self.colors {
                cur.kappa[colors[e]] -= 1;
            }
            debug_assert_eq!(prev.get(&cur.delta, &cur.kappa), Some(cur.value));
        }
        for (k, child) in node.children.iter().enumerate().rev() {
            let (a, b) = self.split(&node.merges[k], &child.result, &cur);
            self.reconstruct(child, b, subset);
            cur = a;
        }
    }
}

impl Table {
    fn retain_nonempty(&mut self) {
        let keep: Vec<bool> = self.values.iter().map(|v| v.iter().any(|&x| x != ABSENT)).collect();
        if keep.iter().all(|&k| k) {
            return;
        }
        let mut deltas = Vec::new();
        let mut values = Vec::new();
        for ((d, v), k) in self.deltas.drain(..).zip(self.values.drain(..)).zip(keep) {
            if k {
                deltas.push(d);
                values.push(v);
            }
        }
        self.index = deltas.iter().enumerate().map(|(i, d)| (d.clone(), i)).collect();
        self.deltas = deltas;
        self.values = values;
    }
}

/// Exact optimum of `sum_i f_i(d_i(G))` subject to the color counts (none
/// when `coloring` is absent), over an elimination forest valid for the
/// graph. Cost grows with the forest height.
pub fn solve_colored_dp(
    graph: &Graph,
    forest: &EliminationForest,
    coloring: Option<&EdgeColoring>,
    objective: &SeparableObjective,
) -> Result<ColoredSolution> {
    check_forest(graph, forest)?;
    super::check_inputs(graph, coloring, objective)?;
    let n = graph.n();
    let ancestors: Vec<Vec<usize>> = (0..n).map(|v| forest.ancestors(v)).collect();
    let mut up_edges = vec![Vec::new(); n];
    for (e, &(a, b)) in graph.edges().iter().enumerate() {
        let (lo, hi) = if forest.depth(a) > forest.depth(b) {
            (a, b)
        } else {
            (b, a)
        };
        let pos = forest.depth(hi) - 1;
        debug_assert_eq!(ancestors[lo][pos], hi);
        up_edges[lo].push((pos, e));
    }
    let problem = Problem {
        objective,
        children: forest.children(),
        ancestors,
        up_edges,
        colors: coloring.map(|c| c.colors()),
        counts: coloring.map_or(Vec::new(), |c| c.counts().iter().map(|&m| m as u32).collect()),
        class_sizes: coloring.map_or(Vec::new(), |c| c.class_sizes().iter().map(|&m| m as u32).collect()),
    };
    let p = problem.counts.len();
    let trees: Vec<Node> = forest
        .roots()
        .par_iter()
        .map(|&r| problem.solve(r))
        .collect::<Result<_>>()?;
    let mut decided = vec![0u32; p];
    let mut merges = vec![Table::unit(0, problem.window(&decided)?)];
    for tree in &trees {
        for (d, c) in decided.iter_mut().zip(&tree.decided) {
            *d += c;
        }
        let next = problem.merge(merges.last().unwrap(), &tree.result, problem.window(&decided)?)?;
        merges.push(next);
    }
    let Some(value) = merges.last().unwrap().get(&[], &problem.counts) else {
        return Ok(ColoredSolution::infeasible(p));
    };
    let mut subset = EdgeSubset::empty(graph.num_edges());
    let mut cur = Entry {
        delta: Vec::new(),
        kappa: problem.counts.clone(),
        value,
    };
    for (k, tree) in trees.iter().enumerate().rev() {
        let (a, b) = problem.split(&merges[k], &tree.result, &cur);
        problem.reconstruct(tree, b, &mut subset);
        cur = a;
    }
    Ok(ColoredSolution::found(coloring, subset, value))
}
