"""Pipeline orchestration and artifact emission.

One run goes mirror -> normalized pages -> per-page schemas -> clustered
navigational tree -> refined + reduced tree -> per-edge candidate
components -> (optional) evaluation against a reference classification.
Artifacts land in the output directory:

    navmodel.dot              cluster tree for Graphviz
    navmodel.xml              machine-readable model + components + scores
    components/edge-NNN.html  one browsable fragment file per tree edge
    report/index.html         static index over the component files
    dangling.txt              unresolvable link targets, one per line
    schemas/*.dtd             per-page schema dumps (verbose mode only)

Everything set-like is sorted before emission, so identical inputs and
configuration produce byte-identical artifacts.
"""

from __future__ import annotations

import html as html_escape
import logging
import shutil
import xml.etree.ElementTree as ET
from dataclasses import dataclass, field
from pathlib import Path

from . import navmodel, schema as schema_mod
from .components import KINDS, CandidateComponent, extract_candidates
from .corpus import Corpus, CorpusError, load_corpus
from .evaluate import EvaluationResult, evaluate, load_reference
from .navmodel import NavTree, build_nav_tree, collect_partition, reduce_to_snp, refine_clusters

logger = logging.getLogger(__name__)


class ConfigError(ValueError):
    pass


@dataclass
class Config:
    root: str
    threshold: float = 0.95
    max_depth: int = 10
    method: str = "MMS"
    out_dir: str = "out"
    reference: str | None = None
    verbose: bool = False
    http_delay: float = 0.1

    def validate(self):
        if not self.root:
            raise ConfigError("root locator is required")
        if not 0.0 <= self.threshold <= 1.0:
            raise ConfigError(f"threshold {self.threshold} outside [0, 1]")
        if self.max_depth < 0:
            raise ConfigError(f"max_depth {self.max_depth} is negative")
        if self.method not in navmodel.METHODS:
            raise ConfigError(f"method must be one of {', '.join(navmodel.METHODS)}")
        if self.http_delay < 0:
            raise ConfigError("http delay is negative")


@dataclass
class PipelineResult:
    corpus: Corpus
    tree: NavTree
    components: list[CandidateComponent]
    evaluation: EvaluationResult | None
    out_dir: Path
    files: list[Path] = field(default_factory=list)


def _dot_quote(label: str) -> str:
    return '"' + label.replace("\\", "\\\\").replace('"', '\\"') + '"'


def emit_dot(tree: NavTree) -> str:
    """Graphviz digraph: one box per node labeled with its representative
    and member count; solid edges follow the tree, dashed edges are
    back-references."""
    ids: dict[int, str] = {}
    owner: dict[str, str] = {}
    lines = ["digraph navmodel {", "  node [shape=box];"]
    order = tree.nodes()
    for index, node in enumerate(order):
        if node.representative is None:
            raise ValueError("tree is not reduced: representative missing")
        ids[id(node)] = f"n{index}"
        for page in node.members:
            owner[page] = f"n{index}"
        label = f"{node.representative} ({len(node.members)})"
        lines.append(f"  n{index} [label={_dot_quote(label)}];")
    solid = set()
    for node in order:
        for child in node.children:
            solid.add((ids[id(node)], ids[id(child)]))
            lines.append(f"  {ids[id(node)]} -> {ids[id(child)]};")
    dashed = set()
    for node in order:
        for target in node.backrefs:
            if target in owner:
                dashed.add((ids[id(node)], owner[target]))
    # a back-reference that retraces a tree edge adds nothing visually
    for source, target in sorted(dashed - solid):
        lines.append(f"  {source} -> {target} [style=dashed];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _component_file(index: int) -> str:
    return f"components/edge-{index:03d}.html"


def emit_xml(tree: NavTree, components: list[CandidateComponent],
             evaluation: EvaluationResult | None = None) -> str:
    """Well-formed XML with the node tree, the per-edge components and
    the optional evaluation block."""
    root = ET.Element("navmodel")

    def add_node(node, parent):
        elem = ET.SubElement(parent, "node", {
            "representative": node.representative or "",
            "members": " ".join(sorted(node.members)),
        })
        for child in node.children:
            add_node(child, elem)
        for target in node.backrefs:
            ET.SubElement(elem, "backref", {"target": target})

    add_node(tree.root, root)

    comps = ET.SubElement(root, "components")
    for index, component in enumerate(components):
        elem = ET.SubElement(comps, "component", {
            "source": component.source,
            "target": component.target,
            "file": _component_file(index),
            "fragments": str(len(component.fragments)),
        })
        ET.SubElement(elem, "inventory",
                      {kind.lower(): str(component.inventory.get(kind, 0)) for kind in KINDS})

    if evaluation is not None:
        ET.SubElement(root, "evaluation", {
            "rcr": str(evaluation.rcr),
            "icr": str(evaluation.icr),
            "precision": str(evaluation.precision),
            "recall": str(evaluation.recall),
        })

    ET.indent(root, space="  ")
    return '<?xml version="1.0" encoding="UTF-8"?>\n' + ET.tostring(root, encoding="unicode") + "\n"


def _edge_html(index: int, component: CandidateComponent) -> str:
    title = f"edge {index:03d}: {component.source} -> {component.target}"
    body: list[str] = []
    for number, fragment in enumerate(component.fragments, 1):
        body.append(f"<!-- fragment {number}: target lines "
                    f"{fragment.start + 1}-{fragment.start + len(fragment.lines)} -->")
        body.extend(fragment.lines)
    joined = "\n".join(body)
    return (f"<html>\n<head>\n<title>{html_escape.escape(title)}</title>\n</head>\n"
            f"<body>\n{joined}\n</body>\n</html>\n")


def _inventory_summary(component: CandidateComponent) -> str:
    parts = [f"{kind}: {component.inventory[kind]}"
             for kind in KINDS if component.inventory.get(kind)]
    return ", ".join(parts) if parts else "empty"


def _report_index(components: list[CandidateComponent], evaluation) -> str:
    rows = []
    for index, component in enumerate(components):
        rows.append(
            "<tr>"
            f'<td><a href="../{_component_file(index)}">edge-{index:03d}</a></td>'
            f"<td>{html_escape.escape(component.source)}</td>"
            f"<td>{html_escape.escape(component.target)}</td>"
            f"<td>{len(component.fragments)}</td>"
            f"<td>{html_escape.escape(_inventory_summary(component))}</td>"
            "</tr>"
        )
    eval_block = ""
    if evaluation is not None:
        eval_block = (f"<p>Evaluation: RCR {evaluation.rcr}, ICR {evaluation.icr}, "
                      f"precision {evaluation.precision}%, recall {evaluation.recall}%</p>\n")
    table = ("<table border=\"1\">\n<tr><th>Component</th><th>Source</th>"
             "<th>Target</th><th>Fragments</th><th>Inventory</th></tr>\n"
             + "\n".join(rows) + "\n</table>\n")
    return ("<html>\n<head>\n<title>Navigational model report</title>\n</head>\n<body>\n"
            "<h1>Candidate components along the navigational path</h1>\n"
            + eval_block + table + "</body>\n</html>\n")


def _safe_name(page_id: str) -> str:
    return "".join(c if c.isalnum() or c in "._-" else "_" for c in page_id)


def _build_artifacts(cfg: Config, result: PipelineResult) -> dict[str, str]:
    artifacts = {
        "navmodel.dot": emit_dot(result.tree),
        "navmodel.xml": emit_xml(result.tree, result.components, result.evaluation),
        "dangling.txt": "".join(line + "\n" for line in sorted(set(result.corpus.dangling))),
        "report/index.html": _report_index(result.components, result.evaluation),
    }
    for index, component in enumerate(result.components):
        artifacts[_component_file(index)] = _edge_html(index, component)
    if cfg.verbose:
        for page_id in sorted(result.corpus.pages):
            doc = result.corpus.document(page_id)
            artifacts[f"schemas/{_safe_name(page_id)}.dtd"] = \
                schema_mod.dtd_text(schema_mod.extract_schema(doc))
    return artifacts


def _write_artifacts(out_dir: Path, artifacts: dict[str, str]) -> list[Path]:
    out_dir.mkdir(parents=True, exist_ok=True)
    for stale in ("components", "report", "schemas"):
        shutil.rmtree(out_dir / stale, ignore_errors=True)
    written: list[Path] = []
    try:
        for rel_path in sorted(artifacts):
            path = out_dir / rel_path
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_text(artifacts[rel_path], encoding="utf-8")
            written.append(path)
    except OSError:
        for path in written:  # no partial artifacts
            path.unlink(missing_ok=True)
        raise
    return written


def run_pipeline(cfg: Config) -> PipelineResult:
    """Execute the whole pipeline and write all artifacts.

    Raises ConfigError for a bad configuration and CorpusError when the
    mirror cannot be loaded; nothing is written in either case.
    """
    cfg.validate()
    corpus = load_corpus(cfg.root, max_depth=cfg.max_depth, delay=cfg.http_delay)
    logger.info("loaded %d page(s), %d dangling link(s)",
                len(corpus.pages), len(corpus.dangling))

    tree = build_nav_tree(corpus.root, corpus, cfg.threshold, cfg.method, cfg.max_depth)
    tree = refine_clusters(tree, cfg.threshold, cfg.method)
    tree = reduce_to_snp(tree)
    components = extract_candidates(tree)

    evaluation = None
    if cfg.reference:
        reference = load_reference(cfg.reference)
        evaluation = evaluate(collect_partition(tree), reference)
        logger.info("evaluation: rcr=%d icr=%d precision=%d%% recall=%d%%",
                    evaluation.rcr, evaluation.icr, evaluation.precision, evaluation.recall)

    result = PipelineResult(corpus, tree, components, evaluation, Path(cfg.out_dir))
    result.files = _write_artifacts(result.out_dir, _build_artifacts(cfg, result))
    return result


__all__ = [
    "Config", "ConfigError", "CorpusError", "PipelineResult",
    "emit_dot", "emit_xml", "run_pipeline",
]
