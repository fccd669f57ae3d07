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

import json
from fractions import Fraction

import pytest

import qcyc


def test_quad_arithmetic():
    w = qcyc.QuadElem("w", -3)
    assert str(w * w) == "-3"
    x = qcyc.QuadElem("1/2 + 1/2*w", -3)
    assert x * x * x == qcyc.QuadElem("-1", -3)
    assert Fraction(x.norm()) == 1
    with pytest.raises(ValueError):
        qcyc.QuadElem("1/", -3)


def test_torsion_of_x0_27():
    E = qcyc.Curve(["0", "0", "1", "0", "-7"], -3)
    T = qcyc.torsion(E)
    assert T["structure"] == "C3 x C3"
    assert len(T["points"]) == 9
    assert all(p == "O" or E.contains(p) for p in T["points"])
    assert qcyc.torsion(qcyc.Curve(["0", "0", "1", "0", "-7"], -1))["structure"] == "C3"


def test_growth_to_fifteen():
    E = qcyc.Curve(["-87/20", "-421/100"], -1)
    assert qcyc.torsion_over_ext(E.twist("-6"), "5")["structure"] == "C15"


def test_curve_json_round_trip():
    E = qcyc.Curve.from_json('{"D": -3, "coeffs": ["0","-1","1","217","-282"]}')
    assert E.to_json() == {"D": -3, "coeffs": ["0", "-1", "1", "217", "-282"]}
    with pytest.raises(ValueError):
        qcyc.Curve.from_json('{"coeffs": [0, 0, 0, 0, 1]}')


def test_factor_and_split():
    f = ["-139/20", "1", "1"]
    assert qcyc.factor_profile(f, -1) == [2]
    assert qcyc.splitting_class(f, -1) == "5"


def test_witness():
    c = qcyc.witness_prime(0, 5)
    assert c["p"] == 11
    assert c["p"] % 3 == 2 and (c["p"] + 1) % 5 == 2
    assert not c["q_divides_count"]


def test_verify_tables_level_20():
    rows = qcyc.verify_tables(20)
    profiled = [r for r in rows if r["provenance"] != "witness"]
    assert len(profiled) == 4
    assert all(r["computed_profile"] == [1, 1, 2, 2, 4] and r["match"] for r in profiled)


def test_cli_entry():
    code, out, err = qcyc.run(["witness", "--j", "1728", "--q", "5", "--json"])
    assert code == 0, err
    assert json.loads(out)["p"] % 4 == 3
    code, _, err = qcyc.run(["torsion", "--D", "-3", "--curve", "{"])
    assert code == 1 and "malformed" in err
