"""When do two stable matchings span an edge of the matching region?

Three routes of different strength, kept deliberately separate:

* a necessary test: every difference component must lean the same way;
* a sufficient test: one graph edge that one matching beats at both
  endpoints while the other matching beats it at neither;
* the exact test: the segment midpoint admits no convex combination of
  stable matchings other than the trivial half-half one.

The exact route never consults the other two, so the implications can be
checked against each other instead of being true by construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence

from .instances import Edge, Instance, remove_edge
from .lattice import decompose, enumerate_stable
from .matchings import Matching
from .simplex import solve_lp

ZERO = Fraction(0)
ONE = Fraction(1)
HALF = Fraction(1, 2)


class Witness(NamedTuple):
    """A graph edge certifying non-adjacency.

    ``dominant`` names the matching (1 or 2) that strictly out-ranks the
    edge at both of its endpoints; the other matching out-ranks it at
    neither endpoint.
    """

    edge: Edge
    dominant: int


def uniformly_oriented(instance: Instance, m1: Matching, m2: Matching) -> bool:
    """True when all difference components lean toward the same matching.

    Mixed leanings already rule out adjacency: flipping each group of
    components separately writes the midpoint as a combination of two
    other stable matchings.
    """
    components = decompose(instance, m1, m2).components
    return len({c.a_prefers for c in components}) <= 1


def _dominated_by(host: Instance, edge: Edge, m1: Matching, m2: Matching) -> int | None:
    """Which matching out-ranks ``edge`` at both endpoints while the other
    out-ranks it at neither, judged by ``host``'s preference lists.

    Returns 1, 2, or None. The strict cutoffs mean the pivot edge never
    counts as beating itself.
    """
    at_a = host.better_edges(at=edge.a_node, than=edge.b_node)
    at_b = host.better_edges(at=edge.b_node, than=edge.a_node)
    for dominant, strong, weak in ((1, m1, m2), (2, m2, m1)):
        if (
            strong.edges & at_a
            and strong.edges & at_b
            and not (weak.edges & (at_a | at_b))
        ):
            return dominant
    return None


def nonadjacency_witness(instance: Instance, m1: Matching, m2: Matching) -> Witness | None:
    """Scan for an edge one matching dominates twice and the other never.

    Returns the first hit in canonical edge order, trying the first
    matching in the dominant role before the second; None when no edge
    qualifies. Both inputs must be stable for the certificate to mean
    anything, which decompose() enforces.

    For two matchings that are both stable on the scanned instance this
    always returns None: stability of the weak matching forces it to
    contain any edge it beats at neither endpoint, and then both of the
    edge's nodes sit in one difference component preferring the strong
    matching, which the orientation lemma forbids. The scan is kept so
    that the vacuity is checked rather than assumed; the productive form
    of the certificate lives in removed_edge_witness.
    """
    decompose(instance, m1, m2)
    for edge in sorted(instance.edges):
        dominant = _dominated_by(instance, edge, m1, m2)
        if dominant is not None:
            return Witness(edge, dominant)
    return None


def removed_edge_witness(
    host: Instance, edge: Edge, m1: Matching, m2: Matching
) -> Witness | None:
    """Certify non-adjacency in ``host`` minus ``edge`` using host ranks.

    The deleted edge keeps its position in both endpoints' preference
    lists even though neither matching may use it, and that leftover rank
    information can separate the pair: if one matching beats the deleted
    edge at both endpoints while the other beats it at neither, the two
    endpoints lie in distinct difference components leaning opposite
    ways, so the matchings are not adjacent in the reduced instance.

    Both matchings must be stable in ``host`` minus ``edge`` (checked);
    stability in ``host`` itself is not required and typically fails for
    one of them.
    """
    if edge not in host.edges:
        raise ValueError(f"{host.edge_name(edge)} is not an edge")
    reduced = remove_edge(host, edge)
    decompose(reduced, m1, m2)
    dominant = _dominated_by(host, edge, m1, m2)
    if dominant is None:
        return None
    return Witness(edge, dominant)


def convex_decompose(
    instance: Instance,
    point: Sequence[Fraction],
    forbidden: Iterable[Matching] = (),
    candidates: Sequence[Matching] | None = None,
    max_edges: int = 16,
) -> dict[Matching, Fraction] | None:
    """Write a point as a convex combination of stable matchings.

    Only matchings outside ``forbidden`` may carry weight. Returns the
    weights found, or None when no combination exists. ``candidates``
    overrides the stable enumeration when the caller already has it.
    """
    if candidates is None:
        candidates = enumerate_stable(instance, max_edges)
    banned = {m for m in forbidden}
    allowed = [m for m in candidates if m not in banned]
    columns = instance.canonical_edges()
    if len(point) != len(columns):
        raise ValueError("point dimension does not match the edge count")
    constraints = _decomposition_rows(columns, allowed, point)
    result = solve_lp(len(allowed), constraints, [ZERO] * len(allowed), "min")
    if result.status != "optimal":
        return None
    assert result.point is not None
    return {m: w for m, w in zip(allowed, result.point) if w != 0}


def _decomposition_rows(
    columns: Sequence[Edge], pool: Sequence[Matching], point: Sequence[Fraction]
) -> list[tuple[list[tuple[int, Fraction]], str, Fraction]]:
    rows: list[tuple[list[tuple[int, Fraction]], str, Fraction]] = []
    for j, edge in enumerate(columns):
        terms = [(k, ONE) for k, m in enumerate(pool) if edge in m.edges]
        rows.append((terms, "=", Fraction(point[j])))
    rows.append(([(k, ONE) for k in range(len(pool))], "=", ONE))
    return rows


def _midpoint(columns: Sequence[Edge], m1: Matching, m2: Matching) -> tuple[Fraction, ...]:
    return tuple(
        HALF * ((e in m1.edges) + (e in m2.edges)) for e in columns
    )


def _exact_adjacency(
    instance: Instance, m1: Matching, m2: Matching, max_edges: int
) -> tuple[bool, list[tuple[Matching, Fraction]], dict[Matching, Fraction] | None]:
    """The midpoint test: maximise each rival's weight in turn.

    The pair spans an edge exactly when every rival matching is forced to
    weight zero in every decomposition of the midpoint.
    """
    if m1 == m2:
        raise ValueError("adjacency needs two distinct matchings")
    stable = enumerate_stable(instance, max_edges)
    if m1 not in stable or m2 not in stable:
        raise ValueError("adjacency is defined between stable matchings only")
    columns = instance.canonical_edges()
    midpoint = _midpoint(columns, m1, m2)
    constraints = _decomposition_rows(columns, stable, midpoint)
    maxima: list[tuple[Matching, Fraction]] = []
    alternative: dict[Matching, Fraction] | None = None
    for k, rival in enumerate(stable):
        if rival == m1 or rival == m2:
            continue
        objective = [ONE if i == k else ZERO for i in range(len(stable))]
        result = solve_lp(len(stable), constraints, objective, "max")
        if result.status != "optimal":
            raise AssertionError(
                "midpoint of two stable matchings must be decomposable"
            )
        assert result.value is not None and result.point is not None
        maxima.append((rival, result.value))
        if result.value > 0 and alternative is None:
            alternative = {
                stable[i]: w for i, w in enumerate(result.point) if w != 0
            }
    adjacent = all(v == 0 for _, v in maxima)
    return adjacent, maxima, alternative


def are_adjacent(
    instance: Instance, m1: Matching, m2: Matching, max_edges: int = 16
) -> bool:
    adjacent, _, _ = _exact_adjacency(instance, m1, m2, max_edges)
    return adjacent


@dataclass(frozen=True)
class AdjacencyVerdict:
    """All three routes on one pair, with their agreement enforced.

    ``alternative`` is a decomposition of the midpoint that gives weight
    to some rival matching, present exactly when the pair is not
    adjacent and at least one rival can take weight.
    """

    adjacent: bool
    uniform: bool
    witness: Witness | None
    maxima: tuple[tuple[Matching, Fraction], ...]
    alternative: dict[Matching, Fraction] | None

    def __post_init__(self) -> None:
        if self.adjacent and not self.uniform:
            raise AssertionError(
                "pair is adjacent yet its difference components disagree; "
                "one of the two routes is wrong"
            )
        if self.adjacent and self.witness is not None:
            raise AssertionError(
                "pair is adjacent yet a domination witness exists; "
                "one of the two routes is wrong"
            )

    def to_json(self, instance: Instance) -> dict:
        def label(m: Matching) -> str:
            return ", ".join(instance.edge_name(e) for e in m.sorted_edges()) or "(empty)"

        return {
            "adjacent": self.adjacent,
            "uniformly_oriented": self.uniform,
            "witness": None
            if self.witness is None
            else {
                "edge": instance.edge_name(self.witness.edge),
                "dominant": self.witness.dominant,
            },
            "rival_maxima": {label(m): str(v) for m, v in self.maxima},
            "alternative": None
            if self.alternative is None
            else {label(m): str(w) for m, w in self.alternative.items()},
        }


def adjacency_verdict(
    instance: Instance, m1: Matching, m2: Matching, max_edges: int = 16
) -> AdjacencyVerdict:
    adjacent, maxima, alternative = _exact_adjacency(instance, m1, m2, max_edges)
    return AdjacencyVerdict(
        adjacent=adjacent,
        uniform=uniformly_oriented(instance, m1, m2),
        witness=nonadjacency_witness(instance, m1, m2),
        maxima=tuple(maxima),
        alternative=alternative,
    )
