"""Exact dd^c curvature and metric classification on Lie algebras with complex structure."""

import json as _json

from . import _core
from ._core import InadmissibleMetric, InadmissibleParameters, UnknownFamily, __version__, family_ids

__all__ = [
    "InadmissibleMetric",
    "InadmissibleParameters",
    "UnknownFamily",
    "__version__",
    "check_structure",
    "classify",
    "ddc",
    "epsilon_bound",
    "family",
    "family_ids",
    "ledger",
    "verify",
]


def _doc(document):
    if document is None or isinstance(document, str):
        return document
    return _json.dumps(document)


def family(family_id):
    """The catalog family as an AlgebraDocument dict."""
    return _json.loads(_core.family_document(family_id))


def ledger():
    return _json.loads(_core.ledger_document())


def ddc(family=None, document=None, power=1, set="", metric="default", format="text"):
    """dd^c(omega^power) rendered as text, latex, canonical, or a list of terms for format="json"."""
    out = _core.ddc(family, _doc(document), power, set, metric, format)
    return _json.loads(out) if format == "json" else out


def classify(family=None, document=None, set="", metric="default", mode="symbolic", eps=None, seed=1, samples=200):
    return _json.loads(_core.classify(family, _doc(document), set, metric, mode, eps, seed, samples))


def check_structure(family=None, document=None, set=""):
    return _json.loads(_core.check_structure(family, _doc(document), set))


def epsilon_bound(family=None, document=None, set="", metric="default"):
    return _json.loads(_core.epsilon_bound(family, _doc(document), set, metric))


def verify(family="", seed=1):
    """Replays the expected-verdict ledger; returns one dict per claim."""
    return _json.loads(_core.verify(family, seed))
