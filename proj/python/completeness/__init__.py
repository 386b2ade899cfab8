"""Exact completeness computations for the sequences floor(t * alpha^n)."""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Iterable, Optional, Union

from . import _core
from ._core import ParseError, PreconditionError

Number = Union[int, str, Fraction]

__all__ = [
    "ParseError",
    "PreconditionError",
    "canonical",
    "classify",
    "corollary_witness",
    "find_run",
    "folkman_chain",
    "naive_subset_sums",
    "prefix",
    "run_cli",
    "subset_sums",
    "term",
    "tile",
    "verify",
]


def _q(x: Number) -> str:
    if isinstance(x, float):
        raise TypeError("floats are not exact; pass a str, int or Fraction")
    return str(x)


def canonical(x: Number) -> str:
    return _core.canonical(_q(x))


def term(t: Number, alpha: Number, n: int) -> int:
    return _core.term(_q(t), _q(alpha), n)


def prefix(t: Number, alpha: Number, n: int = 64) -> list[int]:
    return _core.prefix(_q(t), _q(alpha), n)


def subset_sums(values: Iterable[int], bound: Optional[int] = None) -> list[int]:
    return _core.subset_sums(list(values), bound)


def naive_subset_sums(values: Iterable[int]) -> list[int]:
    return _core.naive_subset_sums(list(values))


def find_run(values: Iterable[int], length: int, limit: Optional[int] = None) -> Optional[int]:
    return _core.find_run(list(values), length, limit)


def classify(t: Number, alpha: Number) -> dict:
    return json.loads(_core.classify_json(_q(t), _q(alpha)))


def corollary_witness(t: Number, alpha: Number, n: int = 64) -> Optional[tuple[int, int]]:
    return _core.corollary_witness(_q(t), _q(alpha), n)


def folkman_chain(t: Number, alpha: Number, m: int, r: int, k: int) -> list[int]:
    return _core.folkman_chain(_q(t), _q(alpha), str(m), r, k)


def tile(region: str, max_depth: int = 12, prefix_length: int = 40, jobs: int = 1) -> dict:
    return json.loads(_core.tile(region, max_depth, prefix_length, jobs))


def verify(certificate: Union[dict, str], region: str) -> dict:
    text = certificate if isinstance(certificate, str) else json.dumps(certificate)
    return json.loads(_core.verify(text, region))


def run_cli(*args: str) -> tuple[int, str, str]:
    return _core.run_cli(list(args))
