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

"""Exact lower-bound verification for online bin packing.

Rationals are returned as exact "p/q" strings; `to_fraction` converts them.
Relative file names are resolved against $BINLB_DATA_DIR when it is set.
"""

import os
from fractions import Fraction

from . import _binlb
from ._binlb import (
    AmbiguousComparison,
    SchemaError,
    b1_optimize,
    b2_optimize,
    closed_form_bound,
    equalize,
    grid_capacity,
    ineq1,
    ineq2,
    ineq3,
)

__all__ = [
    "AmbiguousComparison",
    "SchemaError",
    "b1_optimize",
    "b2_optimize",
    "closed_form_bound",
    "data_path",
    "equalize",
    "grid_capacity",
    "ineq1",
    "ineq2",
    "ineq3",
    "solve_lp",
    "to_fraction",
    "verify_dual",
    "verify_opt",
    "verify_primal",
]


def to_fraction(value):
    """Converts an exact "p/q" string to a Fraction."""
    return Fraction(value)


def data_path(name):
    """Resolves `name` against $BINLB_DATA_DIR unless it exists as given."""
    if os.path.exists(name):
        return name
    base = os.environ.get("BINLB_DATA_DIR")
    return os.path.join(base, name) if base else name


def verify_dual(instance, certificate):
    return _binlb.verify_dual(data_path(instance), data_path(certificate))


def verify_opt(instance, scheme):
    return _binlb.verify_opt(data_path(instance), data_path(scheme))


def verify_primal(instance, primal):
    return _binlb.verify_primal(data_path(instance), data_path(primal))


def solve_lp(instance, patterns):
    return _binlb.solve_lp(data_path(instance), data_path(patterns))
