"""Eulerian cycles on Cayley graphs of (F_q^k, +) and Eulerian orthogonal arrays.

The Cayley graph used throughout has vertex set F_q^k and the full group as
generating set: one directed edge (v, v + s) per generator s, including the
s = 0 self-loop (downstream it becomes an identity-realizing control
segment).  An Eulerian cycle therefore has length q^{2k}.

An Eulerian OA of strength t is an array whose every t-row projection,
read as a cyclic vertex sequence, is an Eulerian cycle (with some
multiplicity) in the Cayley graph of G^{x t} with some generating set --
which also makes it a plain OA of strength t.

The transition convention is additive: s_j = c_{j+1} - c_j, cyclically
(the wrap-around transition from the last column to the first is counted,
since control actions are cyclic).
"""

from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import config
from .codes import LinearCode, gf_matmul
from .gf import FieldTable, field_from_order
from .oa import (OrthogonalArray, StrengthViolation, parse_oa_header,
                 verify_strength)


@dataclass(frozen=True)
class EulerianCycle:
    """Cyclic vertex list (m_0, ..., m_{N-1}) over F_q^k starting at 0.

    vertices has shape (N, k); row j holds the symbol digits of m_j.
    Every directed edge (v, v + s) is traversed exactly `multiplicity`
    times by the transitions m_{j+1} - m_j (indices mod N).
    """

    q: int
    k: int
    vertices: np.ndarray
    multiplicity: int

    def __post_init__(self):
        self.vertices.setflags(write=False)

    @property
    def length(self) -> int:
        return self.vertices.shape[0]


@dataclass(frozen=True)
class EulerianViolation:
    """Why a t-row projection is not an Eulerian cycle."""

    rows: tuple[int, ...]
    kind: str                       # "pair-count" | "not-generating"
    vertex: tuple[int, ...] | None
    transition: tuple[int, ...] | None
    count: int | None
    expected: float | None

    def __str__(self) -> str:
        if self.kind == "not-generating":
            return f"rows {self.rows}: transition set does not generate the group"
        return (f"rows {self.rows}: (vertex {self.vertex}, transition "
                f"{self.transition}) occurs {self.count} times, expected "
                f"{self.expected:g}")


@dataclass(frozen=True)
class EulerianCertificate:
    """Per-subset generating sets and the common edge multiplicity."""

    edge_multiplicity: int
    gensets: dict[tuple[int, ...], tuple[tuple[int, ...], ...]]

    def genset_is_full_group(self, rows: tuple[int, ...], q: int) -> bool:
        return len(self.gensets[rows]) == q ** len(rows)


@dataclass(frozen=True)
class EulerianOA:
    """Orthogonal array that also passes the Eulerian verifier at strength t."""

    oa: OrthogonalArray
    t: int
    edge_multiplicity: int
    gensets: dict[tuple[int, ...], tuple[tuple[int, ...], ...]]

    @property
    def entries(self) -> np.ndarray:
        return self.oa.entries

    def __repr__(self) -> str:
        return (f"EulerianOA({self.oa.N}, {self.oa.n}, {self.oa.q}, {self.t}; "
                f"edge multiplicity {self.edge_multiplicity})")


def _vector_add_table(field: FieldTable, k: int) -> np.ndarray:
    """q^k x q^k table of componentwise sums of base-q encoded vectors."""
    q = field.q
    count = q**k
    encoded = np.arange(count)
    digits = np.array(np.unravel_index(encoded, (q,) * k)).T  # (count, k)
    table = np.zeros((count, count), dtype=np.int64)
    weights = q ** np.arange(k - 1, -1, -1)
    for s in range(count):
        summed = field.add_table[digits, digits[s][None, :]]
        table[:, s] = summed @ weights
    return table


def euler_cycle_full(field: FieldTable, k: int) -> EulerianCycle:
    """Deterministic Eulerian cycle on the Cayley graph of F_q^k with S = F_q^k.

    Hierholzer's algorithm; at every vertex the unused generators are
    consumed in lexicographic order, and the walk starts at the identity.
    Any Eulerian cycle would do, so determinism is imposed by convention.
    Output length is exactly q^{2k}.
    """
    q = field.q
    n_edges = q ** (2 * k)
    if n_edges > config.EULER_EDGE_CAP:
        raise ValueError(f"q^(2k) = {n_edges} exceeds cap {config.EULER_EDGE_CAP}")
    n_vertices = q**k
    vadd = _vector_add_table(field, k)

    next_gen = np.zeros(n_vertices, dtype=np.int64)
    stack = [0]
    trail: list[int] = []
    while stack:
        v = stack[-1]
        if next_gen[v] < n_vertices:
            s = int(next_gen[v])
            next_gen[v] += 1
            stack.append(int(vadd[v, s]))
        else:
            trail.append(stack.pop())
    trail.reverse()
    assert len(trail) == n_edges + 1 and trail[0] == 0 and trail[-1] == 0
    encoded = np.array(trail[:-1], dtype=np.int64)
    vertices = np.array(np.unravel_index(encoded, (q,) * k)).T
    return EulerianCycle(q, k, vertices, 1)


def _check_euler_rows(entries: np.ndarray, field: FieldTable, t: int,
                      rows: tuple[int, ...]):
    """Eulerian-cycle check of one t-row projection.

    Returns (sorted transition tuples, lambda) or an EulerianViolation.
    """
    q = field.q
    N = entries.shape[1]
    if q ** (2 * t) > config.EULER_EDGE_CAP:
        raise ValueError(f"projection group squared, {q**(2 * t)}, exceeds "
                         f"cap {config.EULER_EDGE_CAP}")
    sub = entries[list(rows)]                       # t x N
    nxt = np.roll(sub, -1, axis=1)
    diff = field.add_table[nxt, field.neg_table[sub]]

    weights = q ** np.arange(t - 1, -1, -1)
    vkey = weights @ sub
    skey = weights @ diff
    group_size = q**t
    counts = np.bincount(vkey * group_size + skey,
                         minlength=group_size * group_size)
    counts = counts.reshape(group_size, group_size)

    used = np.nonzero(counts.sum(axis=0))[0]
    block = counts[:, used]
    expected = N / (group_size * len(used))
    # uniform pair counts force lam = N / (|G^t| |S|); compare against that
    # when it is integral, else against the first pair (uniformity is then
    # impossible and any mismatch witnesses it)
    target = int(expected) if expected == int(expected) else int(block[0, 0])
    if not np.all(block == target):
        v, si = np.argwhere(block != target)[0]
        s = used[si]
        return EulerianViolation(
            rows, "pair-count",
            tuple(int(x) for x in np.unravel_index(int(v), (q,) * t)),
            tuple(int(x) for x in np.unravel_index(int(s), (q,) * t)),
            int(block[v, si]), expected)
    lam = target

    # additive closure of the transition set from 0 must be the whole group
    vadd_row = {}
    reached = {0}
    frontier = [0]
    digits = np.array(np.unravel_index(np.arange(group_size), (q,) * t)).T
    while frontier:
        v = frontier.pop()
        for s in used:
            key = int(v)
            if key not in vadd_row:
                vadd_row[key] = field.add_table[digits[key][None, :], digits] @ weights
            w = int(vadd_row[key][s])
            if w not in reached:
                reached.add(w)
                frontier.append(w)
    if len(reached) != group_size:
        return EulerianViolation(rows, "not-generating", None, None, None, None)

    gens = tuple(tuple(int(x) for x in np.unravel_index(int(s), (q,) * t))
                 for s in used)
    return gens, lam


def verify_eulerian(entries: np.ndarray, field: FieldTable,
                    t: int) -> EulerianCertificate | EulerianViolation:
    """Eulerian-OA check at strength t over the additive group of GF(q).

    For every t-row subset: project the columns to t-tuples, take the
    cyclic transitions, and require (a) each (vertex, transition) pair to
    occur the same number of times for every vertex and every transition
    that occurs at all, and (b) the transition set to generate the full
    group by additive closure from 0.  Violations are return values.
    """
    entries = np.asarray(entries)
    n, _ = entries.shape
    if not 1 <= t <= n:
        raise ValueError(f"strength t = {t} out of range for {n} rows")
    q = field.q
    if entries.min() < 0 or entries.max() >= q:
        raise ValueError("entries must be symbols in [0, q)")
    combos = list(itertools.combinations(range(n), t))
    workers = config.worker_count()
    if workers > 1 and len(combos) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(
                lambda rows: _check_euler_rows(entries, field, t, rows), combos))
    else:
        results = [_check_euler_rows(entries, field, t, rows) for rows in combos]

    gensets: dict[tuple[int, ...], tuple[tuple[int, ...], ...]] = {}
    lam = None
    for rows, res in zip(combos, results):
        if isinstance(res, EulerianViolation):
            return res
        gens, sub_lam = res
        gensets[rows] = gens
        if lam is None:
            lam = sub_lam
        elif sub_lam != lam:
            return EulerianViolation(rows, "pair-count", None, None, sub_lam, lam)
    assert lam is not None
    return EulerianCertificate(lam, gensets)


def eulerian_oa_from_code(code: LinearCode, cycle: EulerianCycle,
                          t: int) -> EulerianOA:
    """Eulerian OA whose column j is the codeword G m_j along the cycle.

    Requires the cycle to live over the code's message space.  Both the
    strength and the Eulerian verifier run before returning, and every
    t-row generating set is checked to be the full product group, which
    the construction guarantees.
    """
    if cycle.q != code.q or cycle.k != code.k:
        raise ValueError(f"cycle over F_{cycle.q}^{cycle.k} does not match "
                         f"code message space F_{code.q}^{code.k}")
    entries = gf_matmul(code.gen, cycle.vertices.T, code.field)
    N = entries.shape[1]

    strength = verify_strength(entries, code.q, t)
    if isinstance(strength, StrengthViolation):
        raise ValueError(f"strength-{t} verification failed: {strength}")
    euler = verify_eulerian(entries, code.field, t)
    if isinstance(euler, EulerianViolation):
        raise ValueError(f"Eulerian verification failed: {euler}")
    full = code.q**t
    for rows, gens in euler.gensets.items():
        if len(gens) != full:
            raise ValueError(f"rows {rows}: generating set has {len(gens)} "
                             f"elements, expected the full group ({full})")
    oa = OrthogonalArray(code.q, code.n, N, t, strength, entries)
    return EulerianOA(oa, t, euler.edge_multiplicity, euler.gensets)


# ---------------------------------------------------------------------------
# Eulerian OA file format: the OA format plus a trailing line
# "EULER t lambda_edge".
# ---------------------------------------------------------------------------

def write_eulerian_oa(path, eoa: EulerianOA) -> None:
    lines = [f"OA {eoa.oa.N} {eoa.oa.n} {eoa.oa.q} {eoa.oa.t} {eoa.oa.lam}"]
    for row in eoa.entries:
        lines.append(" ".join(str(int(v)) for v in row))
    lines.append(f"EULER {eoa.t} {eoa.edge_multiplicity}")
    Path(path).write_text("\n".join(lines) + "\n")


def read_eulerian_oa(path) -> EulerianOA:
    """Load and fully re-verify an Eulerian OA file."""
    lines = [ln for ln in Path(path).read_text().splitlines() if ln.strip()]
    if len(lines) < 3 or not lines[-1].startswith("EULER"):
        raise ValueError(f"{path}: missing EULER trailer")
    N, n, q, t_claim, lam_claim = parse_oa_header(lines[0])
    trailer = lines[-1].split()
    if len(trailer) != 3:
        raise ValueError(f"{path}: malformed EULER trailer")
    t_euler, lam_edge_claim = int(trailer[1]), int(trailer[2])
    entries = np.array([[int(v) for v in ln.split()] for ln in lines[1:-1]],
                       dtype=np.int64)
    if entries.shape != (n, N):
        raise ValueError(f"{path}: array shape {entries.shape} != ({n}, {N})")
    field = field_from_order(q)
    strength = verify_strength(entries, q, t_claim)
    if isinstance(strength, StrengthViolation) or strength != lam_claim:
        raise ValueError(f"{path}: strength claim failed ({strength})")
    euler = verify_eulerian(entries, field, t_euler)
    if isinstance(euler, EulerianViolation):
        raise ValueError(f"{path}: Eulerian claim failed ({euler})")
    if euler.edge_multiplicity != lam_edge_claim:
        raise ValueError(f"{path}: edge multiplicity claim {lam_edge_claim}, "
                         f"counted {euler.edge_multiplicity}")
    oa = OrthogonalArray(q, n, N, t_claim, lam_claim, entries)
    return EulerianOA(oa, t_euler, euler.edge_multiplicity, euler.gensets)
