"""Per-page content-model inference and token serialization.

A page's schema records, for every element name, how its children are
arranged and which attributes it carries.  Runs of a repeated child
collapse to a single item, so a table with two rows and a table with
seven rows of the same shape produce the *same* schema.  That is the
property the structural distance relies on: pages that render the same
kind of screen with different amounts of repeated content compare as
identical.

Inference rules, applied per element name over all of its instances in
one document:

* no children and no text anywhere      -> EMPTY
* text but never element children      -> PCDATA
* both text and element children       -> MIXED over the child-name set
* element children only                -> collapse each instance's child
  sequence (consecutive identical names become one item, flagged
  ``plus``); if all collapsed sequences agree, declare SEQUENCE; if they
  agree except for items missing from some instances (unambiguous
  alignment), missing items are flagged ``star``; otherwise fall back to
  CHOICE-STAR over the union of child names.

An attribute is REQUIRED when every instance of the element carries it,
IMPLIED otherwise.  Attribute *values* never enter the schema.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

from .normalize import Document, Element, Text

EMPTY = "EMPTY"
PCDATA = "PCDATA"
MIXED = "MIXED"
SEQUENCE = "SEQUENCE"
CHOICE_STAR = "CHOICE-STAR"

ONE = "one"
PLUS = "plus"
OPTIONAL = "optional"
STAR = "star"

REQUIRED = "REQUIRED"
IMPLIED = "IMPLIED"

TokenSeq = tuple  # ordered atomic symbols; only built here


@dataclass(frozen=True)
class ContentModel:
    kind: str
    items: tuple[tuple[str, str], ...] = ()  # (child name, repetition flag)


@dataclass
class Schema:
    declarations: dict[str, ContentModel] = field(default_factory=dict)
    # element name -> ((attribute name, REQUIRED|IMPLIED), ...) sorted by name
    attributes: dict[str, tuple[tuple[str, str], ...]] = field(default_factory=dict)


def _collapse(seq: tuple[str, ...]) -> tuple[str, ...]:
    out: list[str] = []
    for child in seq:
        if not out or out[-1] != child:
            out.append(child)
    return tuple(out)


def _is_subsequence(needle, haystack) -> bool:
    it = iter(haystack)
    return all(item in it for item in needle)


def _embed_left(seq, spine):
    positions = []
    k = 0
    for item in seq:
        while k < len(spine) and spine[k] != item:
            k += 1
        if k == len(spine):
            return None
        positions.append(k)
        k += 1
    return positions


def _embed_right(seq, spine):
    positions = []
    k = len(spine) - 1
    for item in reversed(seq):
        while k >= 0 and spine[k] != item:
            k -= 1
        if k < 0:
            return None
        positions.append(k)
        k -= 1
    positions.reverse()
    return positions


def _infer_model(seqs: list[tuple[str, ...]], has_text: bool) -> ContentModel:
    child_names = sorted({c for s in seqs for c in s})
    if not child_names:
        return ContentModel(PCDATA) if has_text else ContentModel(EMPTY)
    if has_text:
        return ContentModel(MIXED, tuple((n, STAR) for n in child_names))
    collapsed = {_collapse(s) for s in seqs}
    if len(collapsed) == 1:
        seq = next(iter(collapsed))
        return ContentModel(SEQUENCE, tuple((n, PLUS) for n in seq))
    # one observed sequence may contain all the others: use it as the
    # spine and mark items missing from some instances as star
    spines = [s for s in collapsed if all(_is_subsequence(t, s) for t in collapsed)]
    if len(spines) == 1:
        spine = spines[0]
        covered = [0] * len(spine)
        for seq in collapsed:
            left = _embed_left(seq, spine)
            right = _embed_right(seq, spine)
            if left != right:
                break  # ambiguous alignment
            for k in left:
                covered[k] += 1
        else:
            items = tuple(
                (name, PLUS if covered[k] == len(collapsed) else STAR)
                for k, name in enumerate(spine)
            )
            return ContentModel(SEQUENCE, items)
    return ContentModel(CHOICE_STAR, tuple((n, STAR) for n in child_names))


def extract_schema(doc: Document) -> Schema:
    """Infer the schema of one well-formed document."""
    sequences: dict[str, list[tuple[str, ...]]] = {}
    has_text: dict[str, bool] = {}
    attr_counts: dict[str, Counter] = {}
    instances: Counter = Counter()

    def walk(element: Element):
        name = element.name
        instances[name] += 1
        seq = tuple(c.name for c in element.children if isinstance(c, Element))
        sequences.setdefault(name, []).append(seq)
        if any(isinstance(c, Text) for c in element.children):
            has_text[name] = True
        counts = attr_counts.setdefault(name, Counter())
        for attr_name, _ in element.attrs:
            counts[attr_name] += 1
        for child in element.children:
            if isinstance(child, Element):
                walk(child)

    walk(doc.root)

    schema = Schema()
    for name in sorted(sequences):
        schema.declarations[name] = _infer_model(sequences[name], has_text.get(name, False))
        specs = tuple(
            (attr, REQUIRED if count == instances[name] else IMPLIED)
            for attr, count in sorted(attr_counts[name].items())
        )
        if specs:
            schema.attributes[name] = specs
    return schema


def is_closed(schema: Schema) -> bool:
    """Every child name mentioned by a content model has a declaration."""
    declared = set(schema.declarations)
    return all(
        child in declared
        for model in schema.declarations.values()
        for child, _ in model.items
    )


def serialize_schema(schema: Schema) -> TokenSeq:
    """Canonical token stream: declarations in lexicographic name order.

    Token granularity is one token per name or marker, so the distance
    between two schemas counts structural differences rather than
    character counts.  Each attribute contributes exactly two tokens.
    """
    tokens: list[str] = []
    for name in sorted(schema.declarations):
        model = schema.declarations[name]
        tokens.append("elem:" + name)
        tokens.append("model:" + model.kind)
        for child, flag in model.items:
            tokens.append("child:" + child)
            tokens.append("rep:" + flag)
        for attr, use in schema.attributes.get(name, ()):
            tokens.append("attr:" + attr)
            tokens.append("use:" + use)
    return tuple(tokens)


def sts_serialize(doc: Document) -> TokenSeq:
    """Baseline substrate: the tag tree as open/close tokens, text ignored."""
    tokens: list[str] = []

    def walk(element: Element):
        tokens.append("open:" + element.name)
        for child in element.children:
            if isinstance(child, Element):
                walk(child)
        tokens.append("close:" + element.name)

    walk(doc.root)
    return tuple(tokens)


_FLAG_SUFFIX = {ONE: "", PLUS: "+", OPTIONAL: "?", STAR: "*"}


def dtd_text(schema: Schema) -> str:
    """DTD-flavoured dump of a schema, for the verbose debug output."""
    lines = []
    for name in sorted(schema.declarations):
        model = schema.declarations[name]
        if model.kind == EMPTY:
            body = "EMPTY"
        elif model.kind == PCDATA:
            body = "(#PCDATA)"
        elif model.kind == MIXED:
            body = "(#PCDATA | " + " | ".join(c for c, _ in model.items) + ")*"
        elif model.kind == SEQUENCE:
            body = "(" + ", ".join(c + _FLAG_SUFFIX[f] for c, f in model.items) + ")"
        else:
            body = "(" + " | ".join(c for c, _ in model.items) + ")*"
        lines.append(f"<!ELEMENT {name} {body}>")
        for attr, use in schema.attributes.get(name, ()):
            lines.append(f"<!ATTLIST {name} {attr} CDATA #{use}>")
    return "\n".join(lines) + ("\n" if lines else "")
