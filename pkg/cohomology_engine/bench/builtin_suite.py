# Copyright (2025) Bytedance Ltd. and/or its affiliates

# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at

#     https://www.apache.org/licenses/LICENSE-2.0

# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""The builtin benchmark table.

Additive rows use DERIVED expected values (canonical-coordinate arithmetic);
the cup-product rows for the torus, the wedge S^2 v S^1 v S^1, RP^2 and CP^2
carry the published values.
"""

from typing import List

from cohomology_engine.bench.bench_case import BenchCase

WEDGE = "wedge:s2,s1,s1"


def _cyclic_rows(space: str, coeff: str, degree: int) -> List[BenchCase]:
    order = 0 if coeff == "Z" else int(coeff.split("/")[1])

    def red(v: int) -> int:
        return v % order if order else v

    return [
        BenchCase(space, coeff, degree, "g", (1,)),
        BenchCase(space, coeff, degree, "g + g", (red(2),)),
        BenchCase(space, coeff, degree, "-g", (red(-1),)),
    ]


def _rank_two_rows(space: str, coeff: str) -> List[BenchCase]:
    minus = -1 if coeff == "Z" else 1
    return [
        BenchCase(space, coeff, 1, "g1 + g2", (1, 1)),
        BenchCase(space, coeff, 1, "g1 - g2", (1, minus)),
    ]


def builtin_suite() -> List[BenchCase]:
    cases: List[BenchCase] = []
    for n in (1, 2, 3):
        for coeff in ("Z", "Z/2"):
            cases.extend(_cyclic_rows(f"s{n}", coeff, n))

    for space in ("torus", WEDGE):
        for coeff in ("Z", "Z/2"):
            cases.extend(_rank_two_rows(space, coeff))

    cases.extend([
        BenchCase("torus", "Z", 2, "g(2)", (1,)),
        BenchCase("torus", "Z", 2, "g1(1) * g2(1)", (1,), up_to_sign=True, source="PUBLISHED"),
        BenchCase("torus", "Z", 2, "(g1(1) + g1(1)) * g2(1)", (2,), up_to_sign=True),
        BenchCase("torus", "Z/2", 2, "g(2)", (1,)),
        BenchCase("torus", "Z/2", 2, "g1(1) * g2(1)", (1,)),
        BenchCase("torus", "Z/2", 2, "(g1(1) + g1(1)) * g2(1)", (0,)),
        BenchCase(WEDGE, "Z", 2, "g(2)", (1,)),
        BenchCase(WEDGE, "Z", 2, "g1(1) * g2(1)", (0,), source="PUBLISHED"),
        BenchCase(WEDGE, "Z", 2, "(g1(1) + g1(1)) * g2(1)", (0,)),
        BenchCase(WEDGE, "Z/2", 2, "g(2)", (1,)),
        BenchCase(WEDGE, "Z/2", 2, "g1(1) * g2(1)", (0,)),
        BenchCase(WEDGE, "Z/2", 2, "(g1(1) + g1(1)) * g2(1)", (0,)),
    ])

    cases.extend(_cyclic_rows("rp2", "Z/2", 1))
    cases.extend([
        BenchCase("rp2", "Z", 2, "g", (1,)),
        BenchCase("rp2", "Z", 2, "g + g", (0,)),
        BenchCase("rp2", "Z", 2, "-g", (1,)),
        BenchCase("rp2", "Z/2", 2, "g(2)", (1,)),
        BenchCase("rp2", "Z/2", 2, "g(1) * g(1)", (1,), source="PUBLISHED"),
    ])

    cases.extend(_cyclic_rows("klein", "Z", 1))
    cases.extend(_rank_two_rows("klein", "Z/2"))
    cases.extend([
        BenchCase("klein", "Z", 2, "g", (1,)),
        BenchCase("klein", "Z", 2, "g(1) * g(1)", (0,)),
        BenchCase("klein", "Z/2", 2, "g(2)", (1,)),
        # a^2 + b^2 + ab vanishes for every basis a, b of H^1(K; Z/2)
        BenchCase("klein", "Z/2", 2, "g1(1) * g1(1) + g2(1) * g2(1) + g1(1) * g2(1)", (0,)),
        BenchCase("klein", "Z/2", 2, "(g1(1) + g1(1)) * g2(1)", (0,)),
    ])

    cases.extend(_cyclic_rows("rpN:5", "Z/2", 1))
    cases.append(BenchCase("cp2", "Z", 4, "g(2) * g(2)", (1,), up_to_sign=True, source="PUBLISHED"))
    return cases


def torus_wedge_pair() -> List[BenchCase]:
    """The degree-(1,1) cup product that separates T^2 from S^2 v S^1 v S^1."""
    return [
        BenchCase("torus", "Z", 2, "g1(1) * g2(1)", (1,), up_to_sign=True, source="PUBLISHED"),
        BenchCase(WEDGE, "Z", 2, "g1(1) * g2(1)", (0,), source="PUBLISHED"),
    ]
