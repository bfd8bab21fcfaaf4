"""Algebraic graph rewriting with AGREE, SqPO and PSqPO rules.

Documents are plain dicts in the JSON formats read by the `agree` CLI.
"""

import json

from . import _core
from ._core import AgreeError, ParseError

__all__ = [
    "AgreeError",
    "ParseError",
    "apply",
    "check_rule",
    "classifier",
    "complement",
    "fpbc",
    "graph_dot",
    "law_names",
    "matches",
    "run_law",
]


def _text(doc):
    return doc if isinstance(doc, str) else json.dumps(doc)


def _opt(doc):
    return None if doc is None else _text(doc)


def matches(rule, graph):
    """All matches of the rule's left-hand side in graph."""
    return json.loads(_core.matches(_text(rule), _text(graph)))


def apply(rule, graph, match=None, match_index=0):
    """One rewrite step; returns {"H": ..., "trace": ...}."""
    return json.loads(_core.apply(_text(rule), _text(graph), _opt(match), match_index))


def classifier(graph, typegraph=None):
    """T(graph), the unit eta and the star items, plus a DOT rendering."""
    return json.loads(_core.classifier(_text(graph), _opt(typegraph)))


def fpbc(l, m, verify=False, bound=None):
    return json.loads(_core.fpbc(_text(l), _text(m), verify, bound))


def complement(m):
    return json.loads(_core.complement(_text(m)))


def check_rule(rule):
    return json.loads(_core.check_rule(_text(rule)))


def run_law(law, category="gr", seed=0, bound=None, instances=0, inject_nonlocal=False):
    return json.loads(_core.run_law(law, category, seed, bound, instances, inject_nonlocal))


def graph_dot(graph, typegraph=None):
    return _core.graph_dot(_text(graph), _opt(typegraph))


def law_names():
    return list(_core.law_names())
