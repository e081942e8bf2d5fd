"""The bi-dominant linkage graph and its glicci component.

Nodes are the point counts 1..47; an edge d--e (with an h-vector label)
exists when a verified certificate links d and e points through a
Gorenstein scheme with that h-vector.  Two different h-vectors linking
the same pair give parallel edges.  A node is glicci exactly when it
lies in the connected component of node 1.
"""

from .store import load_certificates
from .tangent import replay_certificate
from .hvectors import MAX_LINK_DEGREE

__all__ = ["UnionFind", "LinkageGraph", "build_graph", "glicci_component", "emit_dot"]


class UnionFind:
    def __init__(self, size):
        self.parent = list(range(size))

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


class LinkageGraph:
    """Nodes 1..d_max plus a multiset of labelled undirected edges."""

    def __init__(self, edges=(), d_max=MAX_LINK_DEGREE):
        self.d_max = d_max
        self.nodes = tuple(range(1, d_max + 1))
        cleaned = []
        for d, e, h_csv in edges:
            a, b = max(d, e), min(d, e)
            cleaned.append((a, b, h_csv))
        self.edges = tuple(sorted(set(cleaned), key=lambda t: (t[1], t[0], t[2])))

    def __eq__(self, other):
        return isinstance(other, LinkageGraph) and self.edges == other.edges

    def __repr__(self):
        return "LinkageGraph(%d edges)" % len(self.edges)


def build_graph(store_dir, replay=False):
    """Graph of all verified certificates in the store.

    With replay=True every certificate is recomputed from its witness and
    dropped (with a report entry) if the replay disagrees.  Returns
    (graph, report) where report lists skipped files/certificates.
    """
    certs, errors = load_certificates(store_dir)
    report = ["unparsed %s: %s" % (name, err) for name, err in errors]
    edges = []
    for cert in certs:
        if cert.verdict != "verified":
            continue
        if replay:
            ok, _, _ = replay_certificate(cert)
            if not ok:
                report.append(
                    "replay mismatch: d=%d e=%d h=%s seed=%d"
                    % (cert.d, cert.e, cert.h.csv(), cert.seed)
                )
                continue
        edges.append((cert.d, cert.e, cert.h.csv()))
    return LinkageGraph(edges), report


def glicci_component(graph):
    """The connected component of node 1 (these point counts are glicci)."""
    uf = UnionFind(graph.d_max + 1)
    for a, b, _ in graph.edges:
        if a <= graph.d_max and b >= 1:
            uf.union(a, b)
    root = uf.find(1)
    return {n for n in graph.nodes if uf.find(n) == root}


def emit_dot(graph):
    """Deterministic DOT text: nodes ascending, edges by (min, max, label)."""
    lines = ["graph linkage {"]
    for n in graph.nodes:
        lines.append("  %d;" % n)
    for a, b, h_csv in sorted(graph.edges, key=lambda t: (t[1], t[0], t[2])):
        lines.append('  %d -- %d [label="%s"];' % (b, a, h_csv))
    lines.append("}")
    return "\n".join(lines) + "\n"
