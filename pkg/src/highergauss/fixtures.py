"""Bundled data files: the D(S3) modular data, the H27 Gauss-sum pair, TY reference rows."""

from __future__ import annotations

import json
from importlib import resources

from .cyclo import CycloNum, from_json
from .moddata import PremodularData, loads


def _text(name: str) -> str:
    return resources.files("highergauss.data").joinpath(name).read_text(encoding="utf-8")


FIXTURES = ("ds3", "h27", "ty_table")


def ds3() -> PremodularData:
    """Modular data of the double of S3 (labels A..H)."""
    return loads(_text("ds3.json"))


def ds3_text() -> str:
    return _text("ds3.json")


def h27() -> tuple[int, CycloNum, CycloNum]:
    """(n, tau_n, tau_-n) for the center of Rep(H_27)."""
    obj = json.loads(_text("h27.json"))
    return int(obj["n"]), from_json(obj["tau"]), from_json(obj["tau_minus"])


def ty_table() -> dict:
    return json.loads(_text("ty_table.json"))
