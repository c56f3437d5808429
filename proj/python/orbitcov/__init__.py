"""Orbit categories, pushdown functors and G-precovering checks over F_p."""

import json

from ._core import (
    Arrow,
    CapExceeded,
    DimensionMismatch,
    Error,
    FieldTooSmall,
    Fixture,
    Module,
    ParseError,
    ValidationError,
    arrow_hom_dim,
    canonicalize,
    decompose,
    fixture_hash,
    fp_hom_dim,
    hom_dim,
    is_indecomposable,
    isomorphic,
    load_fixture,
    load_fixture_text,
    nat_oracle,
    random_fixture,
    run_command,
    stable_hom_dim,
    u_ideal_dim,
)


def report(fixture, only=(), seed=None, timing=False):
    """Run the verification battery and return the report as a dict."""
    return json.loads(fixture.report_json(list(only), seed, timing))


def check(fixture, only=(), seed=None):
    """True iff every executed check passes."""
    return report(fixture, only, seed)["verdict"] == "PASS"


__all__ = [name for name in dir() if not name.startswith("_") and name != "json"]
