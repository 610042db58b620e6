"""Candidate UI components: one-sided line diffs along the reduced tree.

Going from page A to page B usually changes only a fraction of the
markup.  After stripping text and pretty-printing, a longest-common-
subsequence alignment of the two line lists isolates exactly the lines
that are new on the B side: those contiguous runs are the fragments of
a candidate component.  Lines that only exist on the A side are
discarded; the question is what *appears*, not what goes away.

Line equality ignores leading whitespace, so indentation depth
differences between the two pages never register as change.
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass, field

from .corpus import Corpus, PageId
from .navmodel import NavTree
from .normalize import LineText, stripped_lines

logger = logging.getLogger(__name__)

KINDS = ("Button", "Text", "Textarea", "Select", "Link", "Image", "Table", "Form", "Other")


@dataclass
class Fragment:
    source: PageId
    target: PageId
    start: int  # line index into the target's stripped pretty-print
    lines: tuple[str, ...]


@dataclass
class CandidateComponent:
    source: PageId
    target: PageId
    fragments: list[Fragment]
    inventory: dict[str, int] = field(default_factory=dict)


def lcs_pairs(a: list[str], b: list[str]) -> list[tuple[int, int]]:
    """Longest-common-subsequence alignment as (index-in-a, index-in-b)
    pairs, with leading whitespace ignored for equality.

    The backtrack is canonical and symmetric: running it on (b, a)
    yields the mirrored pair set, which keeps the two one-sided diffs of
    a page pair consistent with a single alignment.
    """
    ka = [line.lstrip() for line in a]
    kb = [line.lstrip() for line in b]
    la, lb = len(ka), len(kb)
    start = 0
    while start < la and start < lb and ka[start] == kb[start]:
        start += 1
    end = 0
    while end < la - start and end < lb - start and ka[la - 1 - end] == kb[lb - 1 - end]:
        end += 1

    ma = ka[start:la - end]
    mb = kb[start:lb - end]
    n, m = len(ma), len(mb)
    dp = [[0] * (m + 1) for _ in range(n + 1)]
    for i in range(1, n + 1):
        row = dp[i]
        above = dp[i - 1]
        ai = ma[i - 1]
        for j in range(1, m + 1):
            if ai == mb[j - 1]:
                row[j] = above[j - 1] + 1
            else:
                up = above[j]
                left = row[j - 1]
                row[j] = up if up >= left else left

    middle: list[tuple[int, int]] = []
    i, j = n, m
    while i > 0 and j > 0:
        if ma[i - 1] == mb[j - 1]:
            middle.append((i - 1, j - 1))
            i -= 1
            j -= 1
        elif dp[i - 1][j] > dp[i][j - 1]:
            i -= 1
        elif dp[i - 1][j] < dp[i][j - 1]:
            j -= 1
        elif ma[i - 1] > mb[j - 1]:  # tie: drop the larger line, keeps it symmetric
            i -= 1
        else:
            j -= 1
    middle.reverse()

    pairs = [(k, k) for k in range(start)]
    pairs.extend((start + pi, start + pj) for pi, pj in middle)
    pairs.extend((la - end + k, lb - end + k) for k in range(end))
    return pairs


def diff_oneway(a: LineText, b: LineText, source: PageId = "", target: PageId = "") -> list[Fragment]:
    """Maximal runs of b-lines that are not part of the alignment with a."""
    aligned_b = {j for _, j in lcs_pairs(a.lines, b.lines)}
    fragments: list[Fragment] = []
    run_start = None
    for j in range(len(b.lines) + 1):
        inserted = j < len(b.lines) and j not in aligned_b
        if inserted and run_start is None:
            run_start = j
        elif not inserted and run_start is not None:
            fragments.append(Fragment(source, target, run_start,
                                      tuple(b.lines[run_start:j])))
            run_start = None
    return fragments


_TAG_LINE = re.compile(r"^<([a-zA-Z][a-zA-Z0-9:-]*)((?:\s[^<>]*)?)(/?)>$")
_TYPE_ATTR = re.compile(r'\btype="([^"]*)"')


def _classify_tag(name: str, attrs_text: str) -> str | None:
    """Map one opening tag to its inventory kind; None means not counted."""
    name = name.lower()
    if name == "input":
        match = _TYPE_ATTR.search(attrs_text)
        input_type = (match.group(1) if match else "text").lower()
        if input_type in ("submit", "button", "reset"):
            return "Button"
        if input_type == "hidden":
            return None  # non-visual
        if input_type in ("text", "password"):
            return "Text"
        return "Other"
    return {
        "button": "Button",
        "textarea": "Textarea",
        "select": "Select",
        "a": "Link",
        "img": "Image",
        "table": "Table",
        "form": "Form",
    }.get(name, "Other")


def identify_elements(component: CandidateComponent) -> dict[str, int]:
    """Tally the opening/self-closed tags of the component's fragments."""
    counts = {kind: 0 for kind in KINDS}
    for fragment in component.fragments:
        for line in fragment.lines:
            stripped = line.strip()
            if stripped.startswith("</"):
                continue
            match = _TAG_LINE.match(stripped)
            if match is None:
                logger.warning("unparseable fragment line %r", stripped)
                counts["Other"] += 1
                continue
            kind = _classify_tag(match.group(1), match.group(2))
            if kind is not None:
                counts[kind] += 1
    return counts


def extract_candidates(snp: NavTree, corpus: Corpus | None = None) -> list[CandidateComponent]:
    """One candidate component per edge of the reduced tree, walking the
    tree depth-first and diffing parent representative -> child
    representative."""
    corpus = corpus or snp.corpus

    def lines_of(page_id: PageId) -> LineText:
        key = ("lines", page_id)
        cached = corpus.memo.get(key)
        if cached is None:
            cached = stripped_lines(corpus.document(page_id))
            corpus.memo[key] = cached
        return cached

    out: list[CandidateComponent] = []

    def visit(node):
        if node.representative is None:
            raise ValueError("tree is not reduced: representative missing")
        for child in node.children:
            if child.representative is None:
                raise ValueError("tree is not reduced: representative missing")
            fragments = diff_oneway(lines_of(node.representative),
                                    lines_of(child.representative),
                                    source=node.representative,
                                    target=child.representative)
            component = CandidateComponent(node.representative,
                                           child.representative, fragments)
            component.inventory = identify_elements(component)
            out.append(component)
            visit(child)

    visit(snp.root)
    return out
