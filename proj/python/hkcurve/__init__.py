# Copyright 2026 The hkcurve Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Hilbert-Kunz functions and multiplicities of plane curves over finite fields."""

import json
from fractions import Fraction

from . import _hkcurve
from ._hkcurve import (
    DomainError,
    HKError,
    ParseError,
    ResourceError,
    colength,
    colength_naive,
    d_lambda,
    field_spec,
    hk_sequence,
    m_alpha,
    normalize_poly,
    smooth_check,
)

__all__ = [
    "DomainError",
    "HKError",
    "ParseError",
    "ResourceError",
    "candidate_set",
    "classify",
    "colength",
    "colength_naive",
    "d_lambda",
    "field_spec",
    "hk_sequence",
    "m_alpha",
    "normalize_poly",
    "singular_prediction",
    "smooth_check",
]


def _fraction(pair):
    num, den = pair
    return Fraction(int(num), int(den))


def _rational(node):
    if node is None:
        return None
    return Fraction(int(node["num"]), int(node["den"]))


def _with_fractions(report):
    for key in ("estimate", "radius", "margin", "hkm", "alpha"):
        report[key] = _rational(report[key])
    if report["hn_slopes"] is not None:
        report["hn_slopes"] = {k: _rational(v) for k, v in report["hn_slopes"].items()}
    for cand in [report["chosen"], *report["contenders"]]:
        if cand is not None:
            cand["mu"] = _rational(cand["mu"])
            for alt in cand.get("alternatives", []):
                alt["mu"] = _rational(alt["mu"])
    return report


def classify(field, poly, n_max, smooth=None, slack="1", s_cut=None, irreducible=False, threads=0):
    """Classify a plane curve; rationals in the returned report are Fractions."""
    raw = _hkcurve.classify_json(field, poly, n_max, smooth, str(slack), s_cut, irreducible, threads)
    return _with_fractions(json.loads(raw))


def candidate_set(d, p, s_cut, smooth=None):
    """All admissible HK multiplicities for degree d in characteristic p."""
    out = _hkcurve.candidate_set(d, p, s_cut, smooth)
    for cand in out:
        cand["mu"] = _fraction(cand["mu"])
    return out


def singular_prediction(d, r):
    """3d/4 + (2r - d)^2 / 4d for a curve with a point of multiplicity r >= d/2."""
    return _fraction(_hkcurve.singular_prediction(d, r))
