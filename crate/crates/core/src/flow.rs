//! Integer max-flow and feasible flow with lower bounds.
//!
//! Augmentation follows shortest residual paths (breadth-first level graphs),
//! so all arithmetic stays integral and results depend only on arc order.

use std::collections::VecDeque;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Arc {
    pub from: usize,
    pub to: usize,
    pub lower: u64,
    pub upper: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowNetwork {
    pub node_count: usize,
    pub arcs: Vec<Arc>,
    pub source: usize,
    pub sink: usize,
}

impl FlowNetwork {
    pub fn new(node_count: usize, source: usize, sink: usize) -> Self {
        assert!(source < node_count && sink < node_count && source != sink);
        FlowNetwork {
            node_count,
            arcs: Vec::new(),
            source,
            sink,
        }
    }

    /// Adds an arc and returns its index.
    pub fn add_arc(&mut self, from: usize, to: usize, lower: u64, upper: u64) -> usize {
        assert!(
            from < self.node_count && to < self.node_count,
            "arc endpoint out of range"
        );
        assert!(lower <= upper, "lower bound exceeds upper bound");
        self.arcs.push(Arc {
            from,
            to,
            lower,
            upper,
        });
        self.arcs.len() - 1
    }

    /// Net flow out of `node` under `flows` (negative means net inflow).
    pub fn net_outflow(&self, node: usize, flows: &[u64]) -> i128 {
        self.arcs
            .iter()
            .zip(flows)
            .map(|(a, &f)| {
                let f = i128::from(f);
                match (a.from == node, a.to == node) {
                    (true, false) => f,
                    (false, true) => -f,
                    _ => 0,
                }
            })
            .sum()
    }

    /// Bounds and conservation at every non-terminal node.
    pub fn is_feasible(&self, flows: &[u64]) -> bool {
        flows.len() == self.arcs.len()
            && self
                .arcs
                .iter()
                .zip(flows)
                .all(|(a, &f)| a.lower <= f && f <= a.upper)
            && (0..self.node_count)
                .filter(|&v| v != self.source && v != self.sink)
                .all(|v| self.net_outflow(v, flows) == 0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaxFlow {
    pub value: u64,
    pub arc_flows: Vec<u64>,
}

#[derive(Debug, Clone, Copy)]
struct Edge {
    to: usize,
    cap: u64,
    rev: usize,
}

/// Residual graph with Dinic-style blocking flows.
struct Residual {
    graph: Vec<Vec<Edge>>,
    level: Vec<u32>,
    iter: Vec<usize>,
}

impl Residual {
    fn new(n: usize) -> Self {
        Residual {
            graph: vec![Vec::new(); n],
            level: vec![0; n],
            iter: vec![0; n],
        }
    }

    /// Returns the (node, position) handle of the forward edge.
    fn add_edge(&mut self, from: usize, to: usize, cap: u64) -> (usize, usize) {
        let fwd = self.graph[from].len();
        let back = self.graph[to].len() + usize::from(from == to);
        self.graph[from].push(Edge { to, cap, rev: back });
        self.graph[to].push(Edge {
            to: from,
            cap: 0,
            rev: fwd,
        });
        (from, fwd)
    }

    fn flow_on(&self, handle: (usize, usize)) -> u64 {
        let e = self.graph[handle.0][handle.1];
        self.graph[e.to][e.rev].cap
    }

    fn bfs(&mut self, s: usize, t: usize) -> bool {
        self.level.iter_mut().for_each(|l| *l = u32::MAX);
        self.level[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for e in &self.graph[v] {
                if e.cap > 0 && self.level[e.to] == u32::MAX {
                    self.level[e.to] = self.level[v] + 1;
                    queue.push_back(e.to);
                }
            }
        }
        self.level[t] != u32::MAX
    }

    fn dfs(&mut self, v: usize, t: usize, pushed: u64) -> u64 {
        if v == t {
            return pushed;
        }
        while self.iter[v] < self.graph[v].len() {
            let Edge { to, cap, rev } = self.graph[v][self.iter[v]];
            if cap > 0 && self.level[to] == self.level[v] + 1 {
                let d = self.dfs(to, t, pushed.min(cap));
                if d > 0 {
                    self.graph[v][self.iter[v]].cap -= d;
                    self.graph[to][rev].cap += d;
                    return d;
                }
            }
            self.iter[v] += 1;
        }
        0
    }

    fn max_flow(&mut self, s: usize, t: usize) -> u64 {
        let mut total = 0;
        while self.bfs(s, t) {
            self.iter.iter_mut().for_each(|i| *i = 0);
            loop {
                let f = self.dfs(s, t, u64::MAX);
                if f == 0 {
                    break;
                }
                total += f;
            }
        }
        total
    }
}

/// Maximum source-to-sink flow. All lower bounds must be zero.
pub fn max_flow(network: &FlowNetwork) -> MaxFlow {
    assert!(
        network.arcs.iter().all(|a| a.lower == 0),
        "max_flow expects zero lower bounds"
    );
    let mut residual = Residual::new(network.node_count);
    let handles: Vec<_> = network
        .arcs
        .iter()
        .map(|a| residual.add_edge(a.from, a.to, a.upper))
        .collect();
    let value = residual.max_flow(network.source, network.sink);
    MaxFlow {
        value,
        arc_flows: handles.into_iter().map(|h| residual.flow_on(h)).collect(),
    }
}

/// Some flow with `lower <= flow <= upper` on every arc and conservation at
/// every non-terminal node, or `None` if no such flow exists.
///
/// Source and sink are joined by uncapacitated arcs both ways so that any
/// flow value is allowed; lower bounds become node excesses served from an
/// auxiliary source and drained to an auxiliary sink.
pub fn feasible_flow_with_lower_bounds(network: &FlowNetwork) -> Option<Vec<u64>> {
    let n = network.node_count;
    let (aux_source, aux_sink) = (n, n + 1);
    let mut residual = Residual::new(n + 2);
    let mut excess = vec![0i128; n];

    let handles: Vec<_> = network
        .arcs
        .iter()
        .map(|a| {
            excess[a.to] += i128::from(a.lower);
            excess[a.from] -= i128::from(a.lower);
            residual.add_edge(a.from, a.to, a.upper - a.lower)
        })
        .collect();
    let unbounded = network
        .arcs
        .iter()
        .map(|a| a.upper)
        .fold(1u64, u64::saturating_add);
    residual.add_edge(network.sink, network.source, unbounded);
    residual.add_edge(network.source, network.sink, unbounded);

    let mut required = 0u64;
    for (v, &e) in excess.iter().enumerate() {
        if e > 0 {
            let e = e as u64;
            residual.add_edge(aux_source, v, e);
            required += e;
        } else if e < 0 {
            residual.add_edge(v, aux_sink, e.unsigned_abs() as u64);
        }
    }

    if residual.max_flow(aux_source, aux_sink) < required {
        return None;
    }
    Some(
        network
            .arcs
            .iter()
            .zip(handles)
            .map(|(a, h)| a.lower + residual.flow_on(h))
            .collect(),
    )
}
