"""Repair, pretty-printing and text stripping."""

import random

import pytest

from navminer.normalize import (EmptyDocumentError, Element, Text, parse_html,
                                pretty_print, remove_textual_content,
                                serialize, to_xhtml)

from conftest import all_elements, random_document


def test_unclosed_tag_equals_closed_form():
    assert to_xhtml("<p>hello") == to_xhtml("<p>hello</p>")


def test_wellformed_page_is_fixpoint():
    text = '<html><body><p class="x">hi</p><ul><li>a</li></ul></body></html>'
    doc = to_xhtml(text)
    assert to_xhtml(serialize(doc)) == doc


def test_misnested_tags_repair_to_wellformed_fixpoint():
    doc = to_xhtml("<b><i>x</b></i>")
    # single root, properly nested, and repair is idempotent
    assert doc.root.name == "b"
    inner = doc.root.children[0]
    assert isinstance(inner, Element) and inner.name == "i"
    assert to_xhtml(serialize(doc)) == doc


def test_stray_close_tag_dropped():
    assert to_xhtml("<div></span>x</div>") == to_xhtml("<div>x</div>")


def test_implied_end_keeps_rows_as_siblings():
    doc = to_xhtml("<table><tr><td>a<td>b<tr><td>c</table>")
    table = doc.root
    rows = [c for c in table.children if isinstance(c, Element)]
    assert [r.name for r in rows] == ["tr", "tr"]
    assert [c.name for c in rows[0].children] == ["td", "td"]


def test_unclosed_paragraph_closed_by_next_paragraph():
    doc = to_xhtml("<div><p>one<p>two</p></div>")
    names = [c.name for c in doc.root.children if isinstance(c, Element)]
    assert names == ["p", "p"]


def test_void_elements_do_not_swallow_siblings():
    doc = to_xhtml('<div><img src="x.gif"><p>text</p></div>')
    names = [c.name for c in doc.root.children if isinstance(c, Element)]
    assert names == ["img", "p"]
    img = doc.root.children[0]
    assert img.self_closing


def test_duplicate_attributes_keep_first():
    doc = to_xhtml('<div class="a" class="b"></div>')
    assert doc.root.attrs == [("class", "a")]


def test_bare_attribute_value_is_empty_string():
    doc = to_xhtml("<input disabled>")
    assert ("disabled", "") in doc.root.attrs


def test_script_and_comment_bodies_dropped():
    doc = to_xhtml("<div><script>var x = '<p>';</script><!-- note -->ok</div>")
    kinds = [type(c).__name__ for c in doc.root.children]
    assert kinds == ["Element", "Text"]
    assert doc.root.children[1].content == "ok"


def test_no_markup_raises():
    with pytest.raises(EmptyDocumentError):
        parse_html("just plain words, no tags at all")


def test_multiple_top_level_elements_get_single_root():
    doc = to_xhtml("<div>a</div><div>b</div>")
    assert doc.root.name == "html"
    assert len([c for c in doc.root.children if isinstance(c, Element)]) == 2
    assert to_xhtml(serialize(doc)) == doc


def test_pretty_print_empty_html_two_lines():
    assert pretty_print(to_xhtml("<html></html>")).lines == ["<html>", "</html>"]


def test_pretty_print_table_five_lines():
    lines = pretty_print(to_xhtml("<table><tr><td/></tr></table>")).lines
    assert lines == ["<table>", "  <tr>", "    <td/>", "  </tr>", "</table>"]


def test_pretty_print_deterministic():
    text = '<div id="d"><p>one</p><p>two</p></div>'
    assert pretty_print(to_xhtml(text)).lines == pretty_print(to_xhtml(text)).lines


def test_pretty_print_roundtrip_up_to_whitespace():
    text = '<div class="c"><p>hello <b>bold</b> tail</p><ul><li>x</li></ul></div>'
    doc = to_xhtml(text)
    assert to_xhtml(pretty_print(doc).text) == doc


def test_strip_examples():
    doc = to_xhtml("<p>hello<b>x</b></p>")
    stripped = remove_textual_content(doc)
    assert stripped == to_xhtml("<p><b></b></p>")
    # a text-free document is a fixpoint
    assert remove_textual_content(stripped) == stripped


def _count_elements(root):
    return len(all_elements(root))


def _count_texts(root):
    total = 0
    for element in all_elements(root):
        total += sum(isinstance(c, Text) for c in element.children)
    return total


def test_strip_preserves_elements_and_attributes_random():
    rng = random.Random(200)
    for _ in range(30):
        doc = random_document(rng)
        stripped = remove_textual_content(doc)
        assert _count_texts(stripped.root) == 0
        assert _count_elements(stripped.root) == _count_elements(doc.root)
        for before, after in zip(all_elements(doc.root), all_elements(stripped.root)):
            assert before.attrs == after.attrs


def test_line_count_equals_tag_count_after_stripping():
    rng = random.Random(201)
    for _ in range(20):
        doc = remove_textual_content(random_document(rng))
        lines = pretty_print(doc).lines
        tags = sum(1 if e.self_closing and not e.children else 2
                   for e in all_elements(doc.root))
        assert len(lines) == tags


def test_idempotent_repair_random():
    rng = random.Random(202)
    for _ in range(25):
        text = serialize(random_document(rng))
        doc = to_xhtml(text)
        assert to_xhtml(serialize(doc)) == doc


def test_latin1_fallback():
    from navminer.normalize import decode_markup

    data = "<p>caf\xe9</p>".encode("latin-1")
    assert "caf\xe9" in decode_markup(data)
