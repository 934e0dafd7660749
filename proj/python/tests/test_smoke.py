# Copyright 2026 The binlb Authors
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

import os
from fractions import Fraction

import pytest

import binlb

DATA = os.environ.get(
    "BINLB_DATA_DIR",
    os.path.join(os.path.dirname(__file__), "..", "..", "data"))


def path(name):
    return os.path.join(DATA, name)


def test_closed_form():
    assert binlb.closed_form_bound(2) == "97/48"
    assert binlb.to_fraction(binlb.closed_form_bound(1)) == Fraction(19, 12)


def test_inequalities():
    assert binlb.ineq1(2, "2", "1/3") == "43/24"
    assert binlb.ineq2(2, "2", "1/3", "2/5") == "1309/600"
    assert binlb.ineq3(2, "1/3") == "13/6"
    with pytest.raises(ValueError):
        binlb.ineq3(2, "1/4")


def test_class_optima():
    b1 = binlb.b1_optimize()
    assert b1["alpha_exact"] == "(197 - sqrt(36541))/27"
    lo, hi = (Fraction(v) for v in b1["alpha"])
    assert hi - lo <= Fraction(1, 10**9)
    assert Fraction(b1["bound"][0]) > Fraction(20043, 10000)
    assert Fraction(binlb.b2_optimize()["bound"][0]) > Fraction(20954, 10000)


def test_grid_capacity():
    assert binlb.grid_capacity(5) == 83 * 83


def test_rect_dual_and_lp():
    r = binlb.verify_dual(path("rect-1p859.json"), path("rect-cert.json"))
    assert r["status"] == "Proven"
    assert r["bound"] == "768/413"
    assert [c["verdict"] in ("Exact", "Pruned-Exact") for c in r["classes"]] == [True] * 9
    lp = binlb.solve_lp(path("rect-1p859.json"), path("rect-patterns.json"))
    assert lp["primal"] == lp["dual"] == "768/413"


def test_squares_certificate_refuted():
    r = binlb.verify_dual(path("squares-1p68.json"), path("squares-cert.json"))
    assert r["status"] == "Refuted"
    assert r["reason"].startswith("class 2:")
    assert r["classes"][1]["verdict"] == "Violated"


def test_schemes_and_primal():
    assert binlb.verify_opt(path("rect-1p859.json"), path("rect-scheme.json"))["status"] == "Proven"
    lit = binlb.verify_opt(path("squares-1p68.json"), path("squares-scheme-literal.json"))
    assert lit["status"] == "Refuted"
    assert lit["prefix_ok"][4] is False
    primal = binlb.verify_primal(path("rect-1p859.json"), path("rect-primal.json"))
    assert primal["status"] == "Proven" and primal["all_tight"]


def test_schema_errors():
    with pytest.raises(Exception):
        binlb.verify_dual(path("no-such-file.json"), path("rect-cert.json"))
