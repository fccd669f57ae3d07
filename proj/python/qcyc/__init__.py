# Copyright 2026 The qcyc Authors
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

"""Elliptic curves over Q(i) and Q(sqrt(-3))."""

from ._qcyc import (
    BoundExceeded,
    Curve,
    InputError,
    QuadElem,
    factor_profile,
    isogeny_report,
    run,
    splitting_class,
    torsion,
    torsion_over_ext,
    twist_spectrum,
    verify_tables,
    witness_prime,
)

__all__ = [
    "BoundExceeded",
    "Curve",
    "InputError",
    "QuadElem",
    "factor_profile",
    "isogeny_report",
    "run",
    "splitting_class",
    "torsion",
    "torsion_over_ext",
    "twist_spectrum",
    "verify_tables",
    "witness_prime",
]
