"""Shared fixtures: demo mirror paths, tiny mirror writer, random documents."""

from __future__ import annotations

import random
from copy import deepcopy
from pathlib import Path

import pytest

from navminer.normalize import Document, Element, Text

REPO_ROOT = Path(__file__).resolve().parent.parent
DEMO_CORPUS = REPO_ROOT / "demo" / "corpus"
DEMO_REFERENCE = REPO_ROOT / "demo" / "reference.txt"

# the threshold the bundled mirror is documented to be perfect at (MMS)
DEMO_THRESHOLD = 0.95
DEMO_PAGE_COUNT = 29


@pytest.fixture(scope="session")
def demo_root() -> Path:
    return DEMO_CORPUS / "index.html"


@pytest.fixture(scope="session")
def demo_reference() -> Path:
    return DEMO_REFERENCE


@pytest.fixture(scope="session")
def demo_corpus():
    from navminer import load_corpus

    return load_corpus(DEMO_CORPUS / "index.html", max_depth=10)


def write_mirror(root: Path, pages: dict[str, str]) -> Path:
    """Write a throwaway mirror; returns the root page path."""
    for name, text in pages.items():
        path = root / name
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8")
    return root / "index.html"


# ---------------------------------------------------------------------------
# random document machinery (seeded; used by several property suites)

_TAGS = ("div", "p", "span", "ul", "li", "table", "tr", "td", "b", "i", "a", "h2", "form")
_ATTR_NAMES = ("class", "id", "role", "href")
_WORDS = ("alpha", "beta", "gamma", "delta", "omega")


def random_element(rng: random.Random, depth: int) -> Element:
    element = Element(rng.choice(_TAGS))
    if rng.random() < 0.4:
        element.attrs.append((rng.choice(_ATTR_NAMES), rng.choice(_WORDS)))
    if depth > 0:
        for _ in range(rng.randint(0, 3)):
            if rng.random() < 0.3:
                element.children.append(Text(rng.choice(_WORDS)))
            else:
                element.children.append(random_element(rng, depth - 1))
    return element


def random_document(rng: random.Random, depth: int = 3) -> Document:
    root = Element("html")
    for _ in range(rng.randint(1, 4)):
        root.children.append(random_element(rng, depth))
    return Document(root)


def all_elements(root: Element) -> list[Element]:
    out = [root]
    for child in root.children:
        if isinstance(child, Element):
            out.extend(all_elements(child))
    return out


def mutate_document(rng: random.Random, doc: Document) -> Document:
    """A structurally related copy: a few random inserts/deletes/edits."""
    copy = deepcopy(doc)
    for _ in range(rng.randint(1, 4)):
        parent = rng.choice(all_elements(copy.root))
        roll = rng.random()
        if roll < 0.45:
            parent.children.insert(rng.randint(0, len(parent.children)),
                                   random_element(rng, 1))
        elif roll < 0.7 and parent.children:
            del parent.children[rng.randrange(len(parent.children))]
        elif roll < 0.85:
            parent.attrs.append((rng.choice(_ATTR_NAMES), rng.choice(_WORDS)))
        else:
            parent.children.append(Text(rng.choice(_WORDS)))
    return copy


def _element_paths(root: Element) -> list[list[int]]:
    paths: list[list[int]] = [[]]

    def walk(element: Element, path: list[int]):
        for index, child in enumerate(element.children):
            if isinstance(child, Element):
                paths.append(path + [index])
                walk(child, path + [index])

    walk(root, [])
    return paths


def _at_path(root: Element, path: list[int]) -> Element:
    node = root
    for index in path:
        node = node.children[index]
    return node


def twin_docs_with_repeated_block(rng: random.Random) -> tuple[Document, Document]:
    """Two documents identical except that a k-repeated identical child
    block occurs k times in the first and k+1 times in the second."""
    base = random_document(rng, 2)
    path = rng.choice(_element_paths(base.root))
    block = random_element(rng, 2)
    k = rng.randint(1, 3)
    position = rng.randint(0, len(_at_path(base.root, path).children))

    doc_k = deepcopy(base)
    doc_k1 = deepcopy(base)
    for copies, doc in ((k, doc_k), (k + 1, doc_k1)):
        parent = _at_path(doc.root, path)
        for _ in range(copies):
            parent.children.insert(position, deepcopy(block))
    return doc_k, doc_k1
