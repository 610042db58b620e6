"""Level-by-level clustering of linked pages into a navigational tree.

The tree is built depth-first from the root page.  Expanding a node
means extracting the links of its member pages: targets seen for the
first time are clustered (clone pairs + transitive closure, per parent
page) and attached as child nodes; targets owned by an earlier node
become back-references.  Clustering is strictly per level: linked
pages are only ever compared with the other pages linked from the same
node, never with the whole corpus.

Refinement then walks the tree root-down and, for every node with two
or more member pages, re-clusters the union of the members' outgoing
pages jointly, replacing the per-page child sets.  Reduction finally
picks one representative per node (the largest member page), which
turns the refined tree into the simplified navigational path used for
differencing.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import schema as schema_mod
from .corpus import Corpus, PageId
from .normalize import pretty_print
from .similarity import Partition, clone_pair, similarity, transclos

METHODS = ("MMS", "STS")


@dataclass
class NavNode:
    members: tuple[PageId, ...]  # discovery order
    level: int
    children: list[NavNode] = field(default_factory=list)
    backrefs: tuple[PageId, ...] = ()  # link targets owned by other nodes
    representative: PageId | None = None

    @property
    def member_set(self) -> frozenset[PageId]:
        return frozenset(self.members)


@dataclass
class NavTree:
    root: NavNode
    corpus: Corpus
    method: str
    threshold: float
    max_depth: int
    # per-page discovery records from the build, reused by refinement
    page_children: dict[PageId, list[tuple[PageId, ...]]] = field(default_factory=dict)
    page_backrefs: dict[PageId, tuple[PageId, ...]] = field(default_factory=dict)

    def nodes(self) -> list[NavNode]:
        out: list[NavNode] = []
        stack = [self.root]
        while stack:
            node = stack.pop()
            out.append(node)
            stack.extend(reversed(node.children))
        return out


def token_seq(corpus: Corpus, page_id: PageId, method: str):
    """Distance substrate for one page, cached on the corpus."""
    key = ("tokens", method, page_id)
    seq = corpus.memo.get(key)
    if seq is None:
        doc = corpus.document(page_id)
        if method == "MMS":
            seq = schema_mod.serialize_schema(schema_mod.extract_schema(doc))
        else:
            seq = schema_mod.sts_serialize(doc)
        corpus.memo[key] = seq
    return seq


def pair_similarity(corpus: Corpus, method: str, a: PageId, b: PageId) -> float:
    """Similarity of two pages, cached per unordered pair for the whole run."""
    key = ("sim", method, clone_pair(a, b))
    value = corpus.memo.get(key)
    if value is None:
        value = similarity(token_seq(corpus, a, method), token_seq(corpus, b, method))
        corpus.memo[key] = value
    return value


def page_size(corpus: Corpus, page_id: PageId) -> int:
    """Byte length of the pretty-printed normalized page."""
    key = ("size", page_id)
    size = corpus.memo.get(key)
    if size is None:
        size = len(pretty_print(corpus.document(page_id)).text.encode("utf-8"))
        corpus.memo[key] = size
    return size


def _cluster_ordered(corpus, method, pages, threshold) -> list[tuple[PageId, ...]]:
    """Clone-pair clustering of ``pages``, clusters and members kept in
    discovery order."""
    if not pages:
        return []
    order = {p: i for i, p in enumerate(pages)}
    pairs = set()
    for i, p in enumerate(pages):
        for q in pages[i + 1:]:
            if pair_similarity(corpus, method, p, q) >= threshold:
                pairs.add(clone_pair(p, q))
    partition = transclos(pairs, set(pages))
    clusters = [tuple(sorted(c, key=order.__getitem__)) for c in partition.clusters]
    clusters.sort(key=lambda c: order[c[0]])
    return clusters


def _node_backrefs(members, page_backrefs) -> tuple[PageId, ...]:
    member_set = set(members)
    targets = {t for p in members for t in page_backrefs.get(p, ()) if t not in member_set}
    return tuple(sorted(targets))


def build_nav_tree(root: PageId, corpus: Corpus, threshold: float,
                   method: str = "MMS", max_depth: int = 10) -> NavTree:
    """Depth-first construction of the navigational tree.

    A page's links are expanded only on its first visit; later
    appearances anywhere in the tree are recorded as back-references.
    """
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}")
    if root not in corpus.pages:
        raise ValueError(f"root {root!r} not in corpus")

    visited = {root}
    page_children: dict[PageId, list[tuple[PageId, ...]]] = {}
    page_backrefs: dict[PageId, tuple[PageId, ...]] = {}

    def expand_page(page_id: PageId, level: int):
        new: list[PageId] = []
        back: list[PageId] = []
        if level < max_depth:
            for link in corpus.links(page_id):
                target = link.target
                if target not in corpus.pages:
                    continue  # dangling or beyond the crawl depth, logged at load
                if target in visited:
                    back.append(target)
                else:
                    visited.add(target)
                    new.append(target)
        page_backrefs[page_id] = tuple(back)
        page_children[page_id] = _cluster_ordered(corpus, method, new, threshold)

    def expand_node(node: NavNode):
        for page_id in node.members:
            expand_page(page_id, node.level)
        for page_id in node.members:
            for cluster in page_children[page_id]:
                node.children.append(NavNode(cluster, node.level + 1))
        node.backrefs = _node_backrefs(node.members, page_backrefs)
        for child in node.children:
            expand_node(child)

    root_node = NavNode((root,), 0)
    expand_node(root_node)
    return NavTree(root_node, corpus, method, threshold, max_depth,
                   page_children, page_backrefs)


def refine_clusters(tree: NavTree, threshold: float, method: str) -> NavTree:
    """Root-down refinement: the union of a multi-page node's outgoing
    pages is re-clustered jointly and replaces its per-page child sets."""
    corpus = tree.corpus

    def rebuild(members: tuple[PageId, ...], level: int) -> NavNode:
        node = NavNode(members, level)
        if len(members) >= 2:
            union = [q for p in members for c in tree.page_children.get(p, []) for q in c]
            clusters = _cluster_ordered(corpus, method, union, threshold)
        else:
            clusters = tree.page_children.get(members[0], [])
        node.children = [rebuild(c, level + 1) for c in clusters]
        node.backrefs = _node_backrefs(members, tree.page_backrefs)
        return node

    root = rebuild(tree.root.members, 0)
    return NavTree(root, corpus, method, threshold, tree.max_depth,
                   tree.page_children, tree.page_backrefs)


def reduce_to_snp(tree: NavTree) -> NavTree:
    """Pick each node's representative: the largest member page, ties
    broken towards the lexicographically smaller id.  Shape, members
    and children stay untouched."""
    corpus = tree.corpus

    def visit(node: NavNode):
        node.representative = min(node.members,
                                  key=lambda p: (-page_size(corpus, p), p))
        for child in node.children:
            visit(child)

    visit(tree.root)
    return tree


def collect_partition(tree: NavTree) -> Partition:
    """All node member sets across the tree, as one corpus partition."""
    clusters = [node.member_set for node in tree.nodes()]
    universe = frozenset().union(*clusters) if clusters else frozenset()
    clusters.sort(key=lambda c: sorted(c))
    return Partition(tuple(clusters), universe)
