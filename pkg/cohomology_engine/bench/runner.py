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

"""Evaluate benchmark expressions in computed cohomology groups and rings."""

import logging
import time
from functools import lru_cache
from multiprocessing.pool import ThreadPool
from typing import List, Optional, Sequence, Union

from tqdm import tqdm

from cohomology_engine.algebra.abgroup import FgAbGroup, parse_group, ring_modulus
from cohomology_engine.bench.bench_case import ERROR, MISMATCH, PASS, UNCHECKED, BenchCase, CaseResult, RunReport
from cohomology_engine.config import bench_threads
from cohomology_engine.errors import UnsupportedSpaceError
from cohomology_engine.topology import sequences, spaces
from cohomology_engine.topology.complex import cohomology
from cohomology_engine.topology.cup import GradedRing, HomogeneousElement, cohomology_ring
from cohomology_engine.topology.spaces import SpaceId
from cohomology_engine.utils.parser.parse_expression import BinOp, Generator, Neg, Node, Number, parse_expression
from cohomology_engine.utils.show_msg import read_json

logger = logging.getLogger(__name__)

Value = Union[int, HomogeneousElement]


@lru_cache(maxsize=None)
def ring_for(space: SpaceId, modulus: int) -> GradedRing:
    """Cohomology ring by the simplicial route, or by the Gysin route for cp2 and RP^n with n >= 3."""
    try:
        return cohomology_ring(spaces.simplicial(space), modulus)
    except UnsupportedSpaceError:
        pass
    if space == spaces.cp(2) and modulus == 0:
        solved = sequences.solve(sequences.cp2_gysin(4))
        return sequences.gysin_ring(solved, 2, 4, 0)
    if space.kind == "rp" and modulus == 2:
        n = space.params[0]
        solved = sequences.solve(sequences.rp_infinity_gysin(n))
        return sequences.gysin_ring(solved, 1, n, 2)
    raise UnsupportedSpaceError(f"Cup products are not available for {space} over {'Z' if not modulus else f'Z/{modulus}'}")


class _GroupContext:
    """Additive structure only; used when an expression has no cup product."""

    def __init__(self, space: SpaceId, coefficients: FgAbGroup):
        self.complex = spaces.cellular(space)
        self.coefficients = coefficients

    def group(self, degree: int) -> FgAbGroup:
        return cohomology(self.complex, degree, self.coefficients).group

    def multiply(self, x: HomogeneousElement, y: HomogeneousElement) -> HomogeneousElement:
        raise ValueError("Cup products need a ring context")


def _has_cup(node: Node) -> bool:
    if isinstance(node, BinOp):
        if node.op == "*" and _mentions_generator(node.left) and _mentions_generator(node.right):
            return True
        return _has_cup(node.left) or _has_cup(node.right)
    if isinstance(node, Neg):
        return _has_cup(node.operand)
    return False


def _mentions_generator(node: Node) -> bool:
    if isinstance(node, Generator):
        return True
    if isinstance(node, Neg):
        return _mentions_generator(node.operand)
    if isinstance(node, BinOp):
        return _mentions_generator(node.left) or _mentions_generator(node.right)
    return False


def _generator(ctx, node: Generator, default_degree: int) -> HomogeneousElement:
    degree = default_degree if node.degree is None else node.degree
    group = ctx.group(degree)
    if node.index is None:
        if group.ngens != 1:
            raise ValueError(f"{node} is ambiguous or missing: H^{degree} = {group} has {group.ngens} generators")
        index = 0
    else:
        index = node.index - 1
        if index >= group.ngens:
            raise ValueError(f"{node} does not exist: H^{degree} = {group} has {group.ngens} generators")
    return HomogeneousElement(degree, group.generators()[index])


def evaluate(node: Node, ctx, default_degree: int) -> Value:
    if isinstance(node, Number):
        return node.value
    if isinstance(node, Generator):
        return _generator(ctx, node, default_degree)
    if isinstance(node, Neg):
        return -evaluate(node.operand, ctx, default_degree)
    left = evaluate(node.left, ctx, default_degree)
    right = evaluate(node.right, ctx, default_degree)
    if node.op == "*":
        if isinstance(left, int) and isinstance(right, int):
            return left * right
        if isinstance(left, int):
            return right.scale(left)
        if isinstance(right, int):
            return left.scale(right)
        return ctx.multiply(left, right)
    if isinstance(left, int) != isinstance(right, int):
        raise ValueError(f"Cannot add an integer to a class in {node.op!r}")
    if not isinstance(left, int) and left.degree != right.degree:
        raise ValueError(f"Cannot add classes of degrees {left.degree} and {right.degree}")
    return left + right if node.op == "+" else left - right


def _matches(value, expected, group: FgAbGroup, up_to_sign: bool) -> bool:
    if len(expected) != group.ngens:
        return False
    target = group.reduce(expected)
    if value == target:
        return True
    return up_to_sign and value == group.reduce([-v for v in expected])


def run_case(case: BenchCase) -> CaseResult:
    start = time.perf_counter()
    try:
        space = spaces.parse_space(case.space)
        coefficients = parse_group(case.coeff)
        tree = parse_expression(case.expression)
        ctx = ring_for(space, ring_modulus(coefficients)) if _has_cup(tree) else _GroupContext(space, coefficients)
        value = evaluate(tree, ctx, case.degree)
        if isinstance(value, int):
            raise ValueError("Expression evaluates to an integer, not a class")
        if value.degree != case.degree:
            raise ValueError(f"Expression lands in degree {value.degree}, expected {case.degree}")
        group = ctx.group(case.degree)
    except (ValueError, IndexError) as e:
        elapsed = time.perf_counter() - start
        logger.warning("Bench case %r failed: %s", case.name, e)
        return CaseResult(case, ERROR, elapsed=elapsed, message=str(e))
    elapsed = time.perf_counter() - start
    if case.expected is None:
        status = UNCHECKED
    elif _matches(value.coords, case.expected, group, case.up_to_sign):
        status = PASS
    else:
        status = MISMATCH
    return CaseResult(case, status, value.coords, str(group), elapsed)


def run_suite(cases: Sequence[BenchCase], threads: Optional[int] = None, progress: bool = True) -> RunReport:
    """Run every case; the report keeps suite order whatever the thread count."""
    threads = threads or bench_threads()
    results: List[CaseResult] = []
    with ThreadPool(processes=threads) as pool:
        with tqdm(total=len(cases), desc="Running bench cases", unit="case", disable=not progress) as pbar:
            for result in pool.imap(run_case, cases):
                results.append(result)
                pbar.update(1)
    report = RunReport(tuple(results))
    logger.info("Bench finished: %d pass, %d mismatch, %d unchecked, %d error",
                report.count(PASS), report.count(MISMATCH), report.count(UNCHECKED), report.count(ERROR))
    return report


def load_suite(path: str) -> List[BenchCase]:
    data = read_json(path)
    if not isinstance(data, list):
        raise ValueError(f"{path}: a suite file holds a JSON array of cases")
    return [BenchCase.from_dict(item) for item in data]
