"""End-to-end acceptance run: eight checks, one printed line each.

Every check prints its verdict on the real stdout so even a quiet
pytest run shows the eight lines. All comparisons are exact equalities
over rationals; there are no tolerances anywhere in this file.

The corpus is fixed-seed throughout: the complete 2x2 family is taken
whole, the complete 3x3 family is sampled by index (full exhaustion of
all 46656 instances plus the pairwise checks that reuse them does not
fit the time budget on one core; the sample is decoded from indices so
the run never materializes the rest), and the random family redraws
until the edge budget holds.
"""

import itertools
import json
import random
import re
from fractions import Fraction
from pathlib import Path

import pytest

from stablepoly import lattice as lattice_mod
from stablepoly import matchings as matchings_mod
from stablepoly import polytope as polytope_mod
from stablepoly.adjacency import (
    adjacency_verdict,
    are_adjacent,
    nonadjacency_witness,
    removed_edge_witness,
)
from stablepoly.instances import (
    Edge,
    Instance,
    SIDE_A,
    SIDE_B,
    exhaustive_complete,
    instance_from_json,
    random_instance,
    remove_edge,
)
from stablepoly.lattice import SwapStabilityError, UniformityError, decompose, meet_join
from stablepoly.matchings import Matching, gale_shapley, is_stable
from stablepoly.polytope import build_system
from stablepoly.verification import verify_instance

from oracles import max_weight_stable

SEED = 20260819
SAMPLE_3X3 = 2500
PERMS3 = sorted(itertools.permutations(range(3)))
FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture
def announce(request):
    """One verdict line per criterion, written past the capture layer."""
    capman = request.config.pluginmanager.getplugin("capturemanager")

    def _announce(num: int, ok: bool, detail: str) -> None:
        line = f"criterion {num}: {'PASS' if ok else 'FAIL'} - {detail}"
        if capman is not None:
            with capman.global_and_fixture_disabled():
                print(line, flush=True)
        else:
            print(line, flush=True)

    return _announce


def complete3(index: int) -> Instance:
    """Decode one complete 3x3 instance from its table index.

    Six base-6 digits pick the six permutations, low digit first; the
    encoding is a bijection onto the 46656-member family.
    """
    rows = []
    k = index
    for _ in range(6):
        k, digit = divmod(k, 6)
        rows.append(PERMS3[digit])
    return Instance(3, 3, tuple(rows[:3]), tuple(rows[3:]))


@pytest.fixture(scope="session")
def complete_corpus():
    corpus = list(exhaustive_complete(2))
    rng = random.Random(SEED)
    picks = sorted(rng.sample(range(6**6), SAMPLE_3X3))
    corpus.extend(complete3(k) for k in picks)
    return corpus


@pytest.fixture(scope="session")
def random_corpus():
    rng = random.Random(SEED)
    probs = (0.5, 0.8, 1.0)
    corpus = []
    while len(corpus) < 500:
        a = rng.randint(1, 4)
        b = rng.randint(1, 4)
        inst = random_instance(a, b, probs[len(corpus) % 3], rng)
        if len(inst.edges) <= 10:
            corpus.append(inst)
    return corpus


@pytest.fixture(scope="session")
def complete_results(complete_corpus):
    return [verify_instance(inst) for inst in complete_corpus]


@pytest.fixture(scope="session")
def random_results(random_corpus):
    return [verify_instance(inst) for inst in random_corpus]


@pytest.fixture(scope="session")
def all_results(complete_results, random_results):
    return complete_results + random_results


def test_criterion_1_complete_families(complete_results, announce):
    bad = [r for r in complete_results if not r.ok]
    fractional = sum(len(r.fractional) for r in complete_results)
    ok = not bad and fractional == 0
    announce(
        1,
        ok,
        f"all 16 complete 2x2 and {SAMPLE_3X3} fixed-seed complete 3x3 instances: "
        f"vertex set equals stable set on each, {fractional} fractional vertices",
    )
    assert ok, [r.to_json() for r in bad[:3]]


def test_criterion_2_random_family(random_results, announce):
    bad = [r for r in random_results if not r.ok]
    fractional = sum(len(r.fractional) for r in random_results)
    ok = not bad and fractional == 0
    announce(
        2,
        ok,
        f"{len(random_results)} fixed-seed random instances up to 4x4 with at most "
        f"10 edges: 0 set mismatches, {fractional} fractional vertices",
    )
    assert ok, [r.to_json() for r in bad[:3]]


def test_criterion_3_lp_integrality(announce):
    rng = random.Random(SEED + 3)
    probs = (0.5, 0.8, 1.0)
    problems = []
    checked = 0
    while checked < 1000:
        a = rng.randint(1, 4)
        b = rng.randint(1, 4)
        inst = random_instance(a, b, probs[checked % 3], rng)
        if len(inst.edges) > 10:
            continue
        system = build_system(inst)
        weights = {
            e: Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for e in system.columns
        }
        checked += 1
        result = system.optimize(weights)
        if result.status != "optimal" or result.point is None:
            problems.append((inst, result.status))
            continue
        if any(x != 0 and x != 1 for x in result.point):
            problems.append((inst, result.point))
            continue
        chosen = Matching.from_edges(
            [e for e, x in zip(system.columns, result.point) if x == 1]
        )
        oracle = max_weight_stable(
            inst, {(e.a, e.b): w for e, w in weights.items()}
        )
        if not is_stable(inst, chosen) or result.value != oracle:
            problems.append((inst, result.value, oracle))
    ok = not problems
    announce(
        3,
        ok,
        f"{checked} random weighted relaxations: every optimum is a 0/1 point, "
        "is a stable matching, and matches the brute-force best weight exactly",
    )
    assert ok, problems[:3]


def test_criterion_4_orientation_uniformity(all_results, announce):
    pairs = 0
    components = 0
    problems = []
    for result in all_results:
        for m1, m2 in itertools.combinations(result.stable, 2):
            try:
                deco = decompose(result.instance, m1, m2)
            except UniformityError as exc:
                problems.append(exc.certificate)
                continue
            pairs += 1
            components += len(deco.components)
    ok = not problems
    announce(
        4,
        ok,
        f"{components} difference components across {pairs} stable pairs: "
        "inside each component every a-node prefers the same matching",
    )
    assert ok, problems[:3]


def test_criterion_5_swap_closure(all_results, announce):
    pairs = 0
    problems = []
    for result in all_results:
        inst = result.instance
        columns = inst.canonical_edges()
        for m1, m2 in itertools.combinations(result.stable, 2):
            try:
                meet, join = meet_join(inst, m1, m2)
            except SwapStabilityError as exc:
                problems.append(exc.certificate)
                continue
            if not is_stable(inst, meet, cross_check=True) or not is_stable(
                inst, join, cross_check=True
            ):
                problems.append((inst, "swap result unstable"))
                continue
            for e in columns:
                lhs = (e in m1.edges) + (e in m2.edges)
                rhs = (e in meet.edges) + (e in join.edges)
                if lhs != rhs:
                    problems.append((inst, "midpoint identity broken", e))
                    break
            pairs += 1
    ok = not problems
    announce(
        5,
        ok,
        f"{pairs} stable pairs: both one-sided swaps are stable and the pair "
        "and its swaps cover every edge with identical total incidence",
    )
    assert ok, problems[:3]


def test_criterion_6_adjacency_implications(all_results, announce):
    pairs = 0
    in_graph_hits = 0
    problems = []
    for result in all_results:
        for m1, m2 in itertools.combinations(result.stable, 2):
            try:
                verdict = adjacency_verdict(result.instance, m1, m2)
            except AssertionError as exc:
                problems.append((result.instance, str(exc)))
                continue
            pairs += 1
            if verdict.adjacent and not verdict.uniform:
                problems.append((result.instance, "adjacent but mixed orientation"))
            if verdict.witness is not None:
                in_graph_hits += 1
                if verdict.adjacent:
                    problems.append((result.instance, "adjacent despite witness"))

    # the detector has no in-graph witnesses on stable pairs, so its
    # non-vacuity is shown on a derived pair: delete one edge, keep its
    # rank information, and the leftover dominance separates the pair
    with open(FIXTURES / "witness_pair.json") as fh:
        doc = json.load(fh)
    host = instance_from_json(doc["host"])
    a_name, b_name = doc["removed_edge"].split()
    pivot = Edge(host.node_by_name(a_name).index, host.node_by_name(b_name).index)
    reduced = remove_edge(host, pivot)
    w1 = Matching.from_pairs(reduced, [p.split() for p in doc["m1"]])
    w2 = Matching.from_pairs(reduced, [p.split() for p in doc["m2"]])
    witness = removed_edge_witness(host, pivot, w1, w2)
    fixture_ok = (
        witness is not None
        and witness.dominant == doc["dominant"]
        and not are_adjacent(reduced, w1, w2)
        and nonadjacency_witness(reduced, w1, w2) is None
    )
    if not fixture_ok:
        problems.append(("derived fixture", witness))

    ok = not problems
    announce(
        6,
        ok,
        f"{pairs} stable pairs: adjacency always implies uniform leanings and "
        f"never coexists with a dominance witness ({in_graph_hits} in-graph hits, "
        "which stability forces); the derived deleted-edge pair fires the detector",
    )
    assert ok, problems[:3]


def test_criterion_7_proposer_optimality(complete_results, announce):
    checked = 0
    problems = []
    for result in complete_results:
        inst = result.instance
        for side in (SIDE_A, SIDE_B):
            best = gale_shapley(inst, side)
            for m in result.stable:
                for node in inst.nodes():
                    if node.side != side:
                        continue
                    mine = best.partner(node)
                    other = m.partner(node)
                    if mine != other and not inst.prefers(node, mine, other):
                        problems.append((inst, side, node))
        checked += 1
    ok = not problems
    announce(
        7,
        ok,
        f"{checked} complete instances: each proposing side's deferred-acceptance "
        "partner is node-wise weakly best across every stable matching",
    )
    assert ok, problems[:3]


def test_criterion_8_independent_routes_agree(all_results, announce):
    problems = []
    for result in all_results:
        system = build_system(result.instance)
        combinatorial = {system.incidence_vector(m) for m in result.stable}
        geometric = {v.point for v in result.report.vertices if v.integral}
        if combinatorial != geometric:
            problems.append(result.instance)

    # the agreement only means something if the two routes share nothing
    # beyond the instance model, so pin that down statically
    geometry_src = Path(polytope_mod.__file__).read_text(encoding="utf-8")
    for name in (
        "is_stable",
        "blocking_pairs",
        "gale_shapley",
        "enumerate_stable",
        "matchings_iter",
    ):
        if re.search(rf"\b{name}\b", geometry_src):
            problems.append(f"geometry module mentions {name}")
    for mod in (matchings_mod, lattice_mod):
        src = Path(mod.__file__).read_text(encoding="utf-8")
        for banned in ("polytope", "simplex", "linalg"):
            if re.search(rf"\bfrom\s+\.{banned}\b|\bimport\s+\.?{banned}\b", src):
                problems.append(f"{mod.__name__} imports {banned}")

    ok = not problems
    announce(
        8,
        ok,
        f"{len(all_results)} instances: the matching search and the vertex "
        "geometry, which share only the instance model, produce identical sets",
    )
    assert ok, problems[:3]
