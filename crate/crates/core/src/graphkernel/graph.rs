//! Decorated graphs with external and internal vertices, their orientation
//! data and canonical forms.
//!
//! Vertices `0..ext.len()` are the external vertices (labelled by `ext`, in
//! increasing order); the remaining `internal` vertices are unlabelled.
//! Edges and degree-one decorations are odd; the orientation of a graph is
//! the order of its edge list followed by the order of its odd decorations.
//! Internal vertices have even degree (−2), so permuting them costs no sign.

use crate::error::{EngineError, Result};
use crate::mogmodel::HClass;
use std::collections::BTreeSet;
use std::fmt;

/// An odd or even datum of a graph in orientation order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Item {
    /// An edge between two vertices (a tadpole when both are equal).
    Edge(usize, usize),
    /// A decoration of a vertex by a nonunit cohomology class.
    Deco(usize, HClass),
}

impl Item {
    /// True for odd data (edges and degree-one decorations).
    pub fn is_odd(self) -> bool {
        match self {
            Item::Edge(..) => true,
            Item::Deco(_, c) => c.is_odd(),
        }
    }
}

/// A graph with numbered external vertices, unlabelled internal vertices,
/// undirected edges and cohomology decorations.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DecoratedGraph {
    genus: u32,
    ext: Vec<u32>,
    internal: usize,
    edges: Vec<(usize, usize)>,
    decos: Vec<(usize, HClass)>,
}

/// Parity of the permutation that sorts `v` (all entries distinct).
fn inversion_parity<T: Ord>(v: &[T]) -> bool {
    let mut odd = false;
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            if v[i] > v[j] {
                odd = !odd;
            }
        }
    }
    odd
}

impl DecoratedGraph {
    /// Builds a graph from items in orientation order, validating vertex
    /// indices, decoration classes and tadpoles. Returns the sign of the
    /// reordering into the stored "edges, then decorations" order.
    pub fn from_items(genus: u32, ext: &[u32], internal: usize, items: &[Item]) -> Result<(bool, DecoratedGraph)> {
        let mut sorted_ext = ext.to_vec();
        sorted_ext.sort_unstable();
        sorted_ext.dedup();
        if sorted_ext.len() != ext.len() {
            return Err(EngineError::InvalidGraph(format!("repeated external label in {ext:?}")));
        }
        let g = DecoratedGraph { genus, ext: sorted_ext, internal, edges: vec![], decos: vec![] };
        let n = g.vertex_count();
        let mut odd = false;
        let mut edges = Vec::new();
        let mut decos = Vec::new();
        let mut odd_decos_seen = 0usize;
        for &it in items {
            match it {
                Item::Edge(u, v) => {
                    if u >= n || v >= n {
                        return Err(EngineError::InvalidGraph(format!("edge ({u},{v}) out of range")));
                    }
                    if u == v && !g.is_external(u) {
                        return Err(EngineError::InvalidGraph("internal vertices carry no tadpoles".into()));
                    }
                    // the edge moves left past all odd decorations already placed
                    odd ^= odd_decos_seen % 2 == 1;
                    edges.push((u, v));
                }
                Item::Deco(v, c) => {
                    if v >= n {
                        return Err(EngineError::InvalidGraph(format!("decoration on missing vertex {v}")));
                    }
                    if let HClass::A(k) | HClass::B(k) = c {
                        if k == 0 || k as u32 > genus {
                            return Err(EngineError::InvalidGraph(format!(
                                "class {c} does not exist in genus {genus}"
                            )));
                        }
                    }
                    if c.is_odd() {
                        odd_decos_seen += 1;
                    }
                    decos.push((v, c));
                }
            }
        }
        Ok((odd, DecoratedGraph { edges, decos, ..g }))
    }

    /// The graph with no edges and no decorations.
    pub fn empty(genus: u32, ext: &[u32]) -> DecoratedGraph {
        DecoratedGraph::from_items(genus, ext, 0, &[]).expect("empty graph is valid").1
    }

    /// The genus of the surface.
    pub fn genus(&self) -> u32 {
        self.genus
    }

    /// External labels in increasing order.
    pub fn ext(&self) -> &[u32] {
        &self.ext
    }

    /// Number of internal vertices.
    pub fn internal(&self) -> usize {
        self.internal
    }

    /// Total number of vertices.
    pub fn vertex_count(&self) -> usize {
        self.ext.len() + self.internal
    }

    /// True if vertex `v` is external.
    pub fn is_external(&self, v: usize) -> bool {
        v < self.ext.len()
    }

    /// Edges in orientation order.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Decorations in orientation order.
    pub fn decos(&self) -> &[(usize, HClass)] {
        &self.decos
    }

    /// The orientation data as a single item list.
    pub fn items(&self) -> Vec<Item> {
        self.edges
            .iter()
            .map(|&(u, v)| Item::Edge(u, v))
            .chain(self.decos.iter().map(|&(v, c)| Item::Deco(v, c)))
            .collect()
    }

    /// Cohomological degree: edges and decorations count with their degree,
    /// internal vertices with −2.
    pub fn degree(&self) -> i64 {
        self.edges.len() as i64 + self.decos.iter().map(|(_, c)| c.degree() as i64).sum::<i64>()
            - 2 * self.internal as i64
    }

    /// Parity of the degree.
    pub fn is_odd(&self) -> bool {
        self.degree().rem_euclid(2) == 1
    }

    /// Decorations at a vertex, in orientation order.
    pub fn decorations_at(&self, v: usize) -> Vec<HClass> {
        self.decos.iter().filter(|(w, _)| *w == v).map(|(_, c)| *c).collect()
    }

    /// Connected components as vertex sets.
    pub fn components(&self) -> Vec<BTreeSet<usize>> {
        let n = self.vertex_count();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            if p[x] != x {
                let r = find(p, p[x]);
                p[x] = r;
            }
            p[x]
        }
        for &(u, v) in &self.edges {
            let (a, b) = (find(&mut parent, u), find(&mut parent, v));
            parent[a] = b;
        }
        let mut comps: std::collections::BTreeMap<usize, BTreeSet<usize>> = Default::default();
        for v in 0..n {
            let r = find(&mut parent, v);
            comps.entry(r).or_default().insert(v);
        }
        comps.into_values().collect()
    }

    /// True if every connected component contains an external vertex.
    pub fn is_connected_to_external(&self) -> bool {
        self.components().iter().all(|c| c.iter().any(|&v| self.is_external(v)))
    }

    /// True if the graph is connected.
    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Checks the connectivity condition for graphs with external vertices.
    pub fn validate(&self) -> Result<()> {
        if !self.is_connected_to_external() {
            return Err(EngineError::InvalidGraph(format!("a component of `{self}` has no external vertex")));
        }
        Ok(())
    }

    /// A per-vertex isomorphism invariant used to restrict the search for
    /// canonical forms to permutations within invariant classes.
    fn invariant(&self, v: usize) -> (usize, Vec<HClass>, Vec<Option<u32>>) {
        let mut decos = self.decorations_at(v);
        decos.sort_unstable();
        let mut nbrs: Vec<Option<u32>> = Vec::new();
        for &(a, b) in &self.edges {
            if a == v {
                nbrs.push(self.ext.get(b).copied());
            }
            if b == v {
                nbrs.push(self.ext.get(a).copied());
            }
        }
        nbrs.sort_unstable();
        (nbrs.len(), decos, nbrs)
    }

    /// Relabels vertices by `map` and sorts the orientation data. Returns
    /// `None` if two odd data coincide (the graph is then zero).
    fn relabelled(&self, map: &[usize]) -> Option<(bool, DecoratedGraph)> {
        let mut edges: Vec<((usize, usize), usize)> = self
            .edges
            .iter()
            .enumerate()
            .map(|(i, &(u, v))| {
                let (a, b) = (map[u], map[v]);
                ((a.min(b), a.max(b)), i)
            })
            .collect();
        edges.sort();
        if edges.windows(2).any(|w| w[0].0 == w[1].0) {
            return None;
        }
        let mut odd = inversion_parity(&edges.iter().map(|e| e.1).collect::<Vec<_>>());
        let mut decos: Vec<((usize, HClass), usize)> =
            self.decos.iter().enumerate().map(|(i, &(v, c))| ((map[v], c), i)).collect();
        decos.sort();
        if decos.windows(2).any(|w| w[0].0 == w[1].0 && w[0].0 .1.is_odd()) {
            return None;
        }
        let odd_order: Vec<usize> = decos.iter().filter(|d| d.0 .1.is_odd()).map(|d| d.1).collect();
        odd ^= inversion_parity(&odd_order);
        Some((
            odd,
            DecoratedGraph {
                genus: self.genus,
                ext: self.ext.clone(),
                internal: self.internal,
                edges: edges.into_iter().map(|e| e.0).collect(),
                decos: decos.into_iter().map(|d| d.0).collect(),
            },
        ))
    }

    /// The canonical representative of the isomorphism class (internal
    /// vertices unlabelled) with the sign relating it to `self`; `None` when
    /// the graph vanishes because of repeated odd data or an odd automorphism.
    pub fn canonicalize(&self) -> Option<(bool, DecoratedGraph)> {
        let n_ext = self.ext.len();
        // Internal vertices sorted by invariant; permutations only act inside
        // blocks of equal invariants.
        let mut order: Vec<usize> = (n_ext..self.vertex_count()).collect();
        let inv: Vec<_> = (0..self.vertex_count()).map(|v| self.invariant(v)).collect();
        order.sort_by(|&a, &b| inv[a].cmp(&inv[b]));
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        for &v in &order {
            match blocks.last_mut() {
                Some(b) if inv[b[0]] == inv[v] => b.push(v),
                _ => blocks.push(vec![v]),
            }
        }
        let mut best: Option<(bool, DecoratedGraph)> = None;
        let mut map: Vec<usize> = (0..self.vertex_count()).collect();
        let mut zero = false;
        let mut visit = |assignment: &[usize]| {
            for (pos, &v) in assignment.iter().enumerate() {
                map[v] = n_ext + pos;
            }
            match self.relabelled(&map) {
                None => zero = true,
                Some((s, g)) => match &best {
                    Some((bs, bg)) if *bg == g => {
                        if *bs != s {
                            zero = true;
                        }
                    }
                    Some((_, bg)) if *bg <= g => {}
                    _ => best = Some((s, g)),
                },
            }
        };
        for_each_block_permutation(&blocks, &mut Vec::new(), &mut visit);
        if zero {
            return None;
        }
        best
    }

    /// Renders the text format
    /// `genus=g; ext=[..]; int=k; edges=[(u,v),..]; deco={v:[..],..}`.
    pub fn to_text(&self) -> String {
        let name = |v: usize| self.vertex_name(v).to_string();
        let edges: Vec<String> = self.edges.iter().map(|&(u, v)| format!("({},{})", name(u), name(v))).collect();
        let mut groups: Vec<(usize, Vec<String>)> = Vec::new();
        for &(v, c) in &self.decos {
            match groups.last_mut() {
                Some((w, cs)) if *w == v => cs.push(c.to_string()),
                _ => groups.push((v, vec![c.to_string()])),
            }
        }
        let decos: Vec<String> = groups.iter().map(|(v, cs)| format!("{}:[{}]", name(*v), cs.join(","))).collect();
        format!(
            "genus={}; ext=[{}]; int={}; edges=[{}]; deco={{{}}}",
            self.genus,
            self.ext.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","),
            self.internal,
            edges.join(","),
            decos.join(",")
        )
    }

    /// The printed name of a vertex: its label if external, otherwise a
    /// number following the largest external label.
    pub fn vertex_name(&self, v: usize) -> u32 {
        if v < self.ext.len() {
            self.ext[v]
        } else {
            self.ext.last().copied().unwrap_or(0) + 1 + (v - self.ext.len()) as u32
        }
    }

    /// Parses the text format of [`DecoratedGraph::to_text`].
    pub fn parse(text: &str) -> Result<DecoratedGraph> {
        let bad = |m: &str| EngineError::Parse(format!("{m} in graph `{text}`"));
        let mut genus = None;
        let mut ext: Option<Vec<u32>> = None;
        let mut internal = None;
        let mut edge_txt = None;
        let mut deco_txt = None;
        for field in text.split(';') {
            let field = field.trim();
            if field.is_empty() {
                continue;
            }
            let (key, value) = field.split_once('=').ok_or_else(|| bad("missing `=`"))?;
            let value = value.trim();
            match key.trim() {
                "genus" => genus = Some(value.parse::<u32>().map_err(|_| bad("bad genus"))?),
                "ext" => {
                    let inner =
                        value.strip_prefix('[').and_then(|v| v.strip_suffix(']')).ok_or_else(|| bad("bad ext"))?;
                    ext = Some(
                        inner
                            .split(',')
                            .map(str::trim)
                            .filter(|s| !s.is_empty())
                            .map(|s| s.parse::<u32>().map_err(|_| bad("bad external label")))
                            .collect::<Result<_>>()?,
                    );
                }
                "int" => internal = Some(value.parse::<usize>().map_err(|_| bad("bad int"))?),
                "edges" => edge_txt = Some(value.to_string()),
                "deco" => deco_txt = Some(value.to_string()),
                other => return Err(bad(&format!("unknown field `{other}`"))),
            }
        }
        let genus = genus.ok_or_else(|| bad("missing genus"))?;
        let ext = ext.ok_or_else(|| bad("missing ext"))?;
        let internal = internal.unwrap_or(0);
        let mut sorted = ext.clone();
        sorted.sort_unstable();
        let base = sorted.last().copied().unwrap_or(0);
        let vertex = |name: u32| -> Result<usize> {
            if let Ok(i) = sorted.binary_search(&name) {
                Ok(i)
            } else if name > base && ((name - base) as usize) <= internal {
                Ok(sorted.len() + (name - base - 1) as usize)
            } else {
                Err(bad(&format!("unknown vertex {name}")))
            }
        };
        let mut items = Vec::new();
        if let Some(e) = edge_txt {
            let inner = e.strip_prefix('[').and_then(|v| v.strip_suffix(']')).ok_or_else(|| bad("bad edges"))?;
            for pair in inner.split(')').map(str::trim).filter(|s| !s.is_empty()) {
                let pair = pair.trim_start_matches(',').trim().strip_prefix('(').ok_or_else(|| bad("bad edge"))?;
                let (u, v) = pair.split_once(',').ok_or_else(|| bad("bad edge"))?;
                let u = u.trim().parse::<u32>().map_err(|_| bad("bad edge endpoint"))?;
                let v = v.trim().parse::<u32>().map_err(|_| bad("bad edge endpoint"))?;
                items.push(Item::Edge(vertex(u)?, vertex(v)?));
            }
        }
        if let Some(d) = deco_txt {
            let inner = d.strip_prefix('{').and_then(|v| v.strip_suffix('}')).ok_or_else(|| bad("bad deco"))?;
            for group in inner.split(']').map(str::trim).filter(|s| !s.is_empty()) {
                let group = group.trim_start_matches(',').trim();
                let (v, list) = group.split_once(':').ok_or_else(|| bad("bad deco group"))?;
                let v = vertex(v.trim().parse::<u32>().map_err(|_| bad("bad deco vertex"))?)?;
                let list = list.trim().strip_prefix('[').ok_or_else(|| bad("bad deco list"))?;
                for c in list.split(',').map(str::trim).filter(|s| !s.is_empty()) {
                    items.push(Item::Deco(v, parse_class(c).ok_or_else(|| bad(&format!("bad class `{c}`")))?));
                }
            }
        }
        let (odd, g) = DecoratedGraph::from_items(genus, &ext, internal, &items)?;
        debug_assert!(!odd, "parsed items are already in stored order");
        Ok(g)
    }
}

fn parse_class(c: &str) -> Option<HClass> {
    if c == "nu" {
        return Some(HClass::Nu);
    }
    let (head, k) = c.split_at(1);
    let k: u8 = k.parse().ok()?;
    match head {
        "a" => Some(HClass::A(k)),
        "b" => Some(HClass::B(k)),
        _ => None,
    }
}

/// Calls `f` on every arrangement obtained by permuting inside each block.
fn for_each_block_permutation(blocks: &[Vec<usize>], prefix: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
    let Some((first, rest)) = blocks.split_first() else {
        f(prefix);
        return;
    };
    let mut items = first.clone();
    permute(&mut items, 0, &mut |perm| {
        let n = prefix.len();
        prefix.extend_from_slice(perm);
        for_each_block_permutation(rest, prefix, f);
        prefix.truncate(n);
    });
}

fn permute(v: &mut Vec<usize>, k: usize, f: &mut dyn FnMut(&[usize])) {
    if k == v.len() {
        f(v);
        return;
    }
    for i in k..v.len() {
        v.swap(k, i);
        permute(v, k + 1, f);
        v.swap(k, i);
    }
}

impl fmt::Display for DecoratedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}
