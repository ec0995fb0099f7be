//! Planarity testing and embedding (Demoucron–Malgrange–Pertuiset on each
//! biconnected block), face tracing, Euler checks and planar duals.

use std::collections::{HashMap, HashSet, VecDeque};

use super::{Dart, GraphError, Rotation, WeightedMultigraph};

/// A planar rotation system for `g`, or `None` if `g` is not planar.
pub fn planarity_embed(g: &WeightedMultigraph) -> Option<Rotation> {
    let n = g.vertex_count();
    let mut reps: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    let mut loops: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, e) in g.edges().iter().enumerate() {
        if e.is_loop() {
            loops[e.u].push(i);
        } else {
            reps.entry((e.u.min(e.v), e.u.max(e.v))).or_default().push(i);
        }
    }
    let mut adj = vec![Vec::new(); n];
    let mut pairs: Vec<_> = reps.keys().copied().collect();
    pairs.sort_unstable();
    for &(a, b) in &pairs {
        adj[a].push(b);
        adj[b].push(a);
    }

    let mut seq: Vec<Vec<usize>> = vec![Vec::new(); n];
    for block in biconnected_blocks(&adj) {
        if block.len() == 1 {
            let (a, b) = block[0];
            seq[a].push(b);
            seq[b].push(a);
            continue;
        }
        let mut local: HashMap<usize, usize> = HashMap::new();
        let mut global = Vec::new();
        for &(a, b) in &block {
            for x in [a, b] {
                local.entry(x).or_insert_with(|| {
                    global.push(x);
                    global.len() - 1
                });
            }
        }
        let ledges: Vec<_> = block.iter().map(|&(a, b)| (local[&a], local[&b])).collect();
        let rot = dmp(global.len(), &ledges)?;
        for (lv, cyc) in rot.into_iter().enumerate() {
            seq[global[lv]].extend(cyc.into_iter().map(|lw| global[lw]));
        }
    }

    let edges = g.edges();
    let mut cycles: Vec<Vec<Dart>> = vec![Vec::new(); n];
    for v in 0..n {
        for &w in &seq[v] {
            let ids = &reps[&(v.min(w), v.max(w))];
            let side = |e: usize| if edges[e].u == v { 0 } else { 1 };
            if v < w {
                cycles[v].extend(ids.iter().map(|&e| Dart::new(e, side(e))));
            } else {
                cycles[v].extend(ids.iter().rev().map(|&e| Dart::new(e, side(e))));
            }
        }
        for &l in &loops[v] {
            cycles[v].push(Dart::new(l, 0));
            cycles[v].push(Dart::new(l, 1));
        }
    }
    let rot = Rotation { cycles };
    debug_assert!(g.validate_rotation(&rot).is_ok());
    debug_assert!(euler_check(g, &rot));
    Some(rot)
}

pub fn is_planar(g: &WeightedMultigraph) -> bool {
    planarity_embed(g).is_some()
}

/// Edge lists of the biconnected blocks of a simple graph.
fn biconnected_blocks(adj: &[Vec<usize>]) -> Vec<Vec<(usize, usize)>> {
    let n = adj.len();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut time = 0;
    let mut estack: Vec<(usize, usize)> = Vec::new();
    let mut blocks = Vec::new();
    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        disc[root] = time;
        low[root] = time;
        time += 1;
        let mut frames: Vec<(usize, usize, usize)> = vec![(root, usize::MAX, 0)];
        while let Some(&mut (v, parent, ref mut next)) = frames.last_mut() {
            if *next < adj[v].len() {
                let w = adj[v][*next];
                *next += 1;
                if disc[w] == usize::MAX {
                    estack.push((v, w));
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    frames.push((w, v, 0));
                } else if w != parent && disc[w] < disc[v] {
                    estack.push((v, w));
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                frames.pop();
                if let Some(&(u, _, _)) = frames.last() {
                    low[u] = low[u].min(low[v]);
                    if low[v] >= disc[u] {
                        let mut block = Vec::new();
                        while let Some(e) = estack.pop() {
                            block.push(e);
                            if e == (u, v) {
                                break;
                            }
                        }
                        blocks.push(block);
                    }
                }
            }
        }
    }
    blocks
}

/// DMP on a biconnected simple graph with at least one cycle. Returns the
/// cyclic neighbour order per vertex.
fn dmp(nv: usize, edges: &[(usize, usize)]) -> Option<Vec<Vec<usize>>> {
    let mut adj = vec![Vec::new(); nv];
    for &(a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    let key = |a: usize, b: usize| (a.min(b), a.max(b));

    let cycle = find_cycle(&adj)?;
    let mut emb_v = vec![false; nv];
    let mut emb_e: HashSet<(usize, usize)> = HashSet::new();
    for (i, &v) in cycle.iter().enumerate() {
        emb_v[v] = true;
        emb_e.insert(key(v, cycle[(i + 1) % cycle.len()]));
    }
    let mut faces: Vec<Vec<usize>> = vec![cycle.clone(), cycle.iter().rev().copied().collect()];

    while emb_e.len() < edges.len() {
        // Fragments: (attachments, path-finder seed).
        let mut frags: Vec<(Vec<usize>, Fragment)> = Vec::new();
        for &(a, b) in edges {
            if emb_v[a] && emb_v[b] && !emb_e.contains(&key(a, b)) {
                let mut att = vec![a, b];
                att.sort_unstable();
                frags.push((att, Fragment::Edge(a, b)));
            }
        }
        let mut seen = vec![false; nv];
        for s in 0..nv {
            if emb_v[s] || seen[s] {
                continue;
            }
            let mut comp = vec![s];
            seen[s] = true;
            let mut att = Vec::new();
            let mut i = 0;
            while i < comp.len() {
                let x = comp[i];
                i += 1;
                for &y in &adj[x] {
                    if emb_v[y] {
                        att.push(y);
                    } else if !seen[y] {
                        seen[y] = true;
                        comp.push(y);
                    }
                }
            }
            att.sort_unstable();
            att.dedup();
            frags.push((att, Fragment::Component(comp)));
        }

        let in_face: Vec<Vec<bool>> = faces
            .iter()
            .map(|f| {
                let mut m = vec![false; nv];
                for &v in f {
                    m[v] = true;
                }
                m
            })
            .collect();
        let mut choice: Option<(usize, usize)> = None;
        for (fi, (att, _)) in frags.iter().enumerate() {
            let adm: Vec<usize> = (0..faces.len()).filter(|&f| att.iter().all(|&a| in_face[f][a])).collect();
            match adm.len() {
                0 => return None,
                1 => {
                    choice = Some((fi, adm[0]));
                    break;
                }
                _ => {
                    if choice.is_none() {
                        choice = Some((fi, adm[0]));
                    }
                }
            }
        }
        let (fi, face_idx) = choice.expect("at least one fragment");
        let path = match &frags[fi].1 {
            Fragment::Edge(a, b) => vec![*a, *b],
            Fragment::Component(comp) => fragment_path(&adj, &emb_v, comp, &frags[fi].0),
        };
        for w in path.windows(2) {
            emb_e.insert(key(w[0], w[1]));
        }
        for &v in &path {
            emb_v[v] = true;
        }
        let face = faces.swap_remove(face_idx);
        let (f1, f2) = split_face(&face, &path);
        faces.push(f1);
        faces.push(f2);
    }

    // Corner (u, v, w) on a face means w follows u in v's rotation.
    let mut next: Vec<HashMap<usize, usize>> = vec![HashMap::new(); nv];
    for f in &faces {
        let l = f.len();
        for i in 0..l {
            let (u, v, w) = (f[(i + l - 1) % l], f[i], f[(i + 1) % l]);
            next[v].insert(u, w);
        }
    }
    let mut rot = Vec::with_capacity(nv);
    for v in 0..nv {
        let start = adj[v][0];
        let mut cyc = vec![start];
        let mut cur = next[v][&start];
        while cur != start {
            cyc.push(cur);
            cur = next[v][&cur];
        }
        if cyc.len() != adj[v].len() {
            return None;
        }
        rot.push(cyc);
    }
    Some(rot)
}

enum Fragment {
    Edge(usize, usize),
    Component(Vec<usize>),
}

fn find_cycle(adj: &[Vec<usize>]) -> Option<Vec<usize>> {
    let n = adj.len();
    let mut parent = vec![usize::MAX; n];
    let mut depth = vec![usize::MAX; n];
    depth[0] = 0;
    let mut queue = VecDeque::from([0]);
    while let Some(v) = queue.pop_front() {
        for &w in &adj[v] {
            if depth[w] == usize::MAX {
                depth[w] = depth[v] + 1;
                parent[w] = v;
                queue.push_back(w);
            } else if parent[v] != w && parent[w] != v {
                let (mut a, mut b) = (v, w);
                let (mut left, mut right) = (vec![a], vec![b]);
                while a != b {
                    if depth[a] >= depth[b] {
                        a = parent[a];
                        left.push(a);
                    } else {
                        b = parent[b];
                        right.push(b);
                    }
                }
                right.pop();
                right.reverse();
                left.extend(right);
                return Some(left);
            }
        }
    }
    None
}

/// Path through a component fragment between two distinct attachments.
fn fragment_path(adj: &[Vec<usize>], emb_v: &[bool], comp: &[usize], att: &[usize]) -> Vec<usize> {
    let a1 = att[0];
    let in_comp: HashSet<usize> = comp.iter().copied().collect();
    let mut parent: HashMap<usize, usize> = HashMap::new();
    let mut queue = VecDeque::new();
    for &c in &adj[a1] {
        if in_comp.contains(&c) && !parent.contains_key(&c) {
            parent.insert(c, usize::MAX);
            queue.push_back(c);
        }
    }
    while let Some(x) = queue.pop_front() {
        if let Some(&a2) = adj[x].iter().find(|&&y| emb_v[y] && y != a1) {
            let mut path = vec![a2, x];
            let mut cur = x;
            while parent[&cur] != usize::MAX {
                cur = parent[&cur];
                path.push(cur);
            }
            path.push(a1);
            path.reverse();
            return path;
        }
        for &y in &adj[x] {
            if in_comp.contains(&y) && !parent.contains_key(&y) {
                parent.insert(y, x);
                queue.push_back(y);
            }
        }
    }
    unreachable!("fragment of a biconnected graph has two attachments")
}

/// Split an oriented face cycle by a path between two of its vertices, keeping
/// every face consistently oriented.
fn split_face(face: &[usize], path: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let (a, b) = (path[0], *path.last().unwrap());
    let ia = face.iter().position(|&v| v == a).unwrap();
    let l = face.len();
    let rotated: Vec<usize> = (0..l).map(|i| face[(ia + i) % l]).collect();
    let ib = rotated.iter().position(|&v| v == b).unwrap();
    let inner = &path[1..path.len() - 1];
    let mut f1: Vec<usize> = rotated[..=ib].to_vec();
    f1.extend(inner.iter().rev());
    let mut f2: Vec<usize> = rotated[ib..].to_vec();
    f2.push(a);
    f2.extend(inner.iter());
    (f1, f2)
}

/// Faces of a rotation system as dart orbits of `d ↦ σ(rev d)`.
pub fn faces(g: &WeightedMultigraph, rot: &Rotation) -> Vec<Vec<Dart>> {
    let nd = 2 * g.edge_count();
    let mut succ = vec![Dart::new(0, 0); nd];
    for cyc in &rot.cycles {
        for (i, &d) in cyc.iter().enumerate() {
            succ[d.index()] = cyc[(i + 1) % cyc.len()];
        }
    }
    let mut seen = vec![false; nd];
    let mut out = Vec::new();
    for start in 0..nd {
        if seen[start] {
            continue;
        }
        let mut orbit = Vec::new();
        let mut d = Dart::new(start / 2, (start % 2) as u8);
        while !seen[d.index()] {
            seen[d.index()] = true;
            orbit.push(d);
            d = succ[d.rev().index()];
        }
        out.push(orbit);
    }
    out
}

/// `V − E + F = 2` for every component that has an edge.
pub fn euler_check(g: &WeightedMultigraph, rot: &Rotation) -> bool {
    if g.validate_rotation(rot).is_err() {
        return false;
    }
    let (label, k) = g.components();
    let mut v = vec![0i64; k];
    let mut e = vec![0i64; k];
    let mut f = vec![0i64; k];
    for &l in &label {
        v[l] += 1;
    }
    for edge in g.edges() {
        e[label[edge.u]] += 1;
    }
    for face in faces(g, rot) {
        f[label[g.tail(face[0])]] += 1;
    }
    (0..k).all(|c| e[c] == 0 || v[c] - e[c] + f[c] == 2)
}

/// Planar dual: one vertex per face, one edge per primal edge (weights copied).
pub fn planar_dual(g: &WeightedMultigraph) -> Result<WeightedMultigraph, GraphError> {
    let rot = g.rotation().ok_or(GraphError::NoRotation)?;
    if !g.is_connected() {
        return Err(GraphError::Disconnected);
    }
    if !euler_check(g, rot) {
        return Err(GraphError::NotPlanar);
    }
    if g.edge_count() == 0 {
        return Ok(WeightedMultigraph::new(1)
            .with_rotation(Rotation { cycles: vec![Vec::new()] })
            .expect("trivial rotation"));
    }
    let fs = faces(g, rot);
    let mut face_of = vec![0; 2 * g.edge_count()];
    for (fi, f) in fs.iter().enumerate() {
        for d in f {
            face_of[d.index()] = fi;
        }
    }
    let mut dual = WeightedMultigraph::new(fs.len());
    for (i, e) in g.edges().iter().enumerate() {
        dual.add_edge(face_of[Dart::new(i, 0).index()], face_of[Dart::new(i, 1).index()], e.weight.clone())
            .expect("faces in range");
    }
    let cycles = fs.into_iter().collect();
    dual.with_rotation(Rotation { cycles })
}
