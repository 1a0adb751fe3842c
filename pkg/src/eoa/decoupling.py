"""Schedules from arrays, bang-bang and bounded-strength averaging, and
exact finite-cycle-time evolution.

Conventions (hbar = 1 throughout):

* A drift Hamiltonian is a list of few-body terms, each a traceless
  Hermitian system block on a qudit support tensored with a Hermitian
  environment block (the identity for pure system terms), plus an
  environment-only part.

* Control is per-qudit.  Bang-bang schedules hold the array column's Weyl
  unitary fixed on each subinterval; Eulerian schedules ramp the column
  *transition* with a constant (square-pulse) control Hamiltonian h, the
  principal logarithm of the target Weyl unitary, so exp(-i h delta)
  reaches it at the end of the subinterval and ||h|| <= pi/delta.
  Square pulses admit a closed-form subinterval integral; Gauss-Legendre
  quadrature is kept as an independent cross-check backend.

* First-order averages are computed term by term on each term's support
  (dimension d^t), mirroring the reduction used by the decoupling
  theorems; the reported residual is still the exact full-space Frobenius
  norm of the averaged Hamiltonian minus its environment-only component,
  assembled from pairwise Hilbert-Schmidt inner products on union
  supports so that wide arrays stay tractable.

* Unitaries are only ever compared modulo a global phase (the Weyl
  representation is projective).
"""

from __future__ import annotations

import itertools
import json
import warnings
from dataclasses import dataclass
from pathlib import Path

import numpy as np
import scipy.linalg

from . import config
from .euler import EulerianCycle, EulerianOA
from .gf import FieldTable, field_from_order
from .oa import OrthogonalArray
from .weyl import aligned_distance, embed, frob, is_hermitian, is_unitary, \
    matrix_from_pairs, matrix_to_pairs, weyl, weyl_from_field


# ---------------------------------------------------------------------------
# Drift Hamiltonians
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DriftTerm:
    """One few-body term: sys_block on `support`, tensored with env_block."""

    support: tuple[int, ...]
    sys_block: np.ndarray
    env_block: np.ndarray


@dataclass(frozen=True)
class DriftHamiltonian:
    """Drift of n qudits of dimension d coupled to a d_env environment.

    Every sys_block must be traceless Hermitian (the environment-only part
    carries whatever identity component the physics has); env_only is the
    bare environment Hamiltonian, a d_env x d_env Hermitian matrix
    ([[0.]] for d_env = 1).
    """

    n: int
    d: int
    d_env: int
    terms: tuple[DriftTerm, ...]
    env_only: np.ndarray

    def __post_init__(self):
        for term in self.terms:
            t = len(term.support)
            if list(term.support) != sorted(set(term.support)):
                raise ValueError(f"support {term.support} not strictly increasing")
            if any(not 0 <= k < self.n for k in term.support):
                raise ValueError(f"support {term.support} out of range")
            if term.sys_block.shape != (self.d**t, self.d**t):
                raise ValueError("system block dimension does not match support")
            if not is_hermitian(term.sys_block):
                raise ValueError("system blocks must be Hermitian")
            if abs(np.trace(term.sys_block)) > config.EPS_MAT * self.d**t:
                raise ValueError("system blocks must be traceless")
            if term.env_block.shape != (self.d_env, self.d_env):
                raise ValueError("environment block dimension mismatch")
            if not is_hermitian(term.env_block):
                raise ValueError("environment blocks must be Hermitian")
        if self.env_only.shape != (self.d_env, self.d_env):
            raise ValueError("env_only dimension mismatch")
        if not is_hermitian(self.env_only):
            raise ValueError("env_only must be Hermitian")

    @property
    def max_arity(self) -> int:
        return max(len(term.support) for term in self.terms) if self.terms else 0

    def total_matrix(self) -> np.ndarray:
        """The full d^n * d_env Hamiltonian (capped; used by exact evolution)."""
        dim = self.d**self.n * self.d_env
        if dim > config.EVOLUTION_DIM_CAP:
            raise ValueError(f"total dimension {dim} exceeds cap "
                             f"{config.EVOLUTION_DIM_CAP}")
        h = np.zeros((dim, dim), dtype=complex)
        for term in self.terms:
            sys_full = embed(term.sys_block, term.support, self.n, self.d)
            h += np.kron(sys_full, term.env_block)
        h += np.kron(np.eye(self.d**self.n), self.env_only)
        return h


def random_drift(n: int, d: int, arity: int, d_env: int, seed: int) -> DriftHamiltonian:
    """Seeded drift with every size-`arity` support populated.

    Each support gets an independent traceless Hermitian system block of
    unit Frobenius norm; with d_env > 1 each support additionally gets a
    coupling term with its own random unit-norm Hermitian environment
    block, and env_only is a random unit-norm Hermitian as well.
    """
    rng = np.random.default_rng(seed)

    def hermitian(dim):
        a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
        h = (a + a.conj().T) / 2
        return h / frob(h)

    def traceless(dim):
        h = hermitian(dim)
        h = h - np.trace(h) / dim * np.eye(dim)
        return h / frob(h)

    ident = np.eye(d_env, dtype=complex)
    terms = []
    for support in itertools.combinations(range(n), arity):
        terms.append(DriftTerm(support, traceless(d**arity), ident))
        if d_env > 1:
            terms.append(DriftTerm(support, traceless(d**arity), hermitian(d_env)))
    env_only = hermitian(d_env) if d_env > 1 else np.zeros((1, 1), dtype=complex)
    return DriftHamiltonian(n, d, d_env, tuple(terms), env_only)


# ---------------------------------------------------------------------------
# Schedules
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Schedule:
    """N equal subintervals of per-qudit control.

    In bang-bang mode labels[j, k] is the Z_d x Z_d label of the unitary
    held on qudit k during subinterval j (hams is None; the jumps between
    subintervals are idealized kicks).  In eulerian mode labels[j, k] is
    the generator ramped during subinterval j and hams[j, k] the constant
    control Hamiltonian realizing it.
    """

    n: int
    d: int
    N: int
    delta: float
    mode: str
    labels: np.ndarray                 # (N, n, 2)
    hams: np.ndarray | None            # (N, n, d, d) for eulerian

    def __post_init__(self):
        if self.mode not in ("bangbang", "eulerian"):
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.labels.shape != (self.N, self.n, 2):
            raise ValueError("labels shape mismatch")
        if self.mode == "eulerian":
            if self.hams is None or self.hams.shape != (self.N, self.n, self.d, self.d):
                raise ValueError("eulerian schedule needs per-segment Hamiltonians")

    @property
    def cycle_time(self) -> float:
        return self.N * self.delta


def generator_hamiltonian(u: np.ndarray, delta: float) -> np.ndarray:
    """Constant Hamiltonian h with exp(-i h delta) = u and ||h|| <= pi/delta.

    h is the principal Hermitian logarithm of the unitary: eigenphases are
    taken in (-pi, pi] on the Schur (eigen)basis, so h is a spectral
    function of u and therefore lies in the span of powers of u -- inside
    the decoupling group algebra whenever u represents a group element.
    """
    u = np.asarray(u, dtype=complex)
    if not is_unitary(u):
        raise ValueError("input is not unitary")
    tri, vec = scipy.linalg.schur(u, output="complex")
    phases = np.angle(np.diag(tri))
    h = (vec * (-phases / delta)) @ vec.conj().T
    return (h + h.conj().T) / 2


def _label_hamiltonians(field: FieldTable, delta: float) -> dict[int, np.ndarray]:
    """Control Hamiltonian for each field symbol's Weyl unitary."""
    hams = {}
    for e in range(field.q):
        u = weyl_from_field(field, e)
        h = generator_hamiltonian(u, delta)
        hams[e] = h
    return hams


def _coords_array(field: FieldTable, symbols: np.ndarray) -> np.ndarray:
    """(..., 2) array of Z_d x Z_d coordinates for an array of symbols."""
    d = field.coord_dim()
    return np.stack([symbols % d, symbols // d], axis=-1)


def _transitions(entries: np.ndarray, field: FieldTable) -> np.ndarray:
    """Cyclic per-row transitions s[k, j] = g[k, j+1] - g[k, j]."""
    nxt = np.roll(entries, -1, axis=1)
    return field.add_table[nxt, field.neg_table[entries]]


def _array_entries(m) -> tuple[np.ndarray, int, int | None]:
    """(entries, q, declared strength) from an OA, Eulerian OA, or raw pair.

    A raw (entries, q) pair carries no strength claim; averaging on one
    skips the strength-sufficiency warning.
    """
    if isinstance(m, EulerianOA):
        return m.entries, m.oa.q, m.t
    if isinstance(m, OrthogonalArray):
        return m.entries, m.q, m.t
    if isinstance(m, tuple) and len(m) == 2:
        entries = np.asarray(m[0], dtype=np.int64)
        return entries, int(m[1]), None
    raise TypeError(f"expected an orthogonal array, got {type(m).__name__}")


def bangbang_schedule(m, delta: float) -> Schedule:
    """Bang-bang schedule: subinterval j holds the column-j Weyl unitaries."""
    entries, q, _ = _array_entries(m)
    field = field_from_order(q)
    n, N = entries.shape
    labels = _coords_array(field, entries.T)      # (N, n, 2)
    return Schedule(n, field.coord_dim(), N, delta, "bangbang", labels, None)


def euler_schedule(m, delta: float) -> Schedule:
    """Bounded-strength schedule along the array's cyclic column transitions.

    Qudit k ramps s_{kj} = g_{k,j+1} - g_{kj} during subinterval j with the
    constant Hamiltonian whose endpoint is the transition's Weyl unitary;
    the running propagator starts at the identity and revisits the
    bang-bang propagators (up to per-qudit phases) at subinterval ends.
    """
    entries, q, _ = _array_entries(m)
    field = field_from_order(q)
    d = field.coord_dim()
    n, N = entries.shape
    diff = _transitions(entries, field)
    labels = _coords_array(field, diff.T)
    hams_by_symbol = _label_hamiltonians(field, delta)
    for e, h in hams_by_symbol.items():
        u = _expm_hermitian(h, delta)
        if aligned_distance(u, weyl_from_field(field, e)) > config.EPS_MAT * d:
            raise AssertionError("control Hamiltonian does not realize its unitary")
    hams = np.zeros((N, n, d, d), dtype=complex)
    for k in range(n):
        for j in range(N):
            hams[j, k] = hams_by_symbol[int(diff[k, j])]
    return Schedule(n, d, N, delta, "eulerian", labels, hams)


# ---------------------------------------------------------------------------
# Subinterval averaging
# ---------------------------------------------------------------------------

def _expm_hermitian(h: np.ndarray, t: float) -> np.ndarray:
    """exp(-i h t) for Hermitian h via eigendecomposition."""
    lam, vec = np.linalg.eigh(h)
    return (vec * np.exp(-1j * lam * t)) @ vec.conj().T


def _phase_filter(lam: np.ndarray, delta: float) -> np.ndarray:
    """Matrix of (1/Delta) int_0^Delta exp(i (lam_a - lam_b) delta) ddelta."""
    theta = (lam[:, None] - lam[None, :]) * delta
    return np.exp(0.5j * theta) * np.sinc(theta / (2 * np.pi))


def segment_average(x: np.ndarray, h: np.ndarray, v: np.ndarray, delta: float,
                    method: str = "exact",
                    order: int = config.DEFAULT_QUAD_ORDER) -> np.ndarray:
    """(1/Delta) int_0^Delta (u(delta) v)^dag x (u(delta) v) ddelta.

    u(delta) = exp(-i h delta) with h the constant control Hamiltonian and
    v the accumulated control prefix at the subinterval start.

    "exact" diagonalizes h and applies the closed-form phase average;
    "quadrature" evaluates the integrand at Gauss-Legendre nodes through
    an independent matrix-exponential route, as a cross-check.
    """
    x = np.asarray(x, dtype=complex)
    if x.shape != h.shape or x.shape != v.shape:
        raise ValueError("dimension mismatch between operator, control, and prefix")
    if method == "exact":
        lam, vec = np.linalg.eigh(h)
        xh = vec.conj().T @ x @ vec
        core = vec @ (xh * _phase_filter(lam, delta)) @ vec.conj().T
        return v.conj().T @ core @ v
    if method == "quadrature":
        nodes, weights = np.polynomial.legendre.leggauss(order)
        acc = np.zeros_like(x)
        for node, weight in zip(nodes, weights):
            u = scipy.linalg.expm(-1j * h * ((node + 1) * delta / 2))
            uv = u @ v
            acc += weight * (uv.conj().T @ x @ uv)
        return acc / 2
    raise ValueError(f"unknown method {method!r}")


# ---------------------------------------------------------------------------
# Averaging reports
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AverageReport:
    """First-order average of a drift under a control action.

    residual_norm is the full-space Frobenius norm of the averaged
    Hamiltonian minus its environment-only component; env_shift_norm is
    how far that component moved from the declared env_only part.
    """

    residual_norm: float
    per_term_norms: tuple[tuple[tuple[int, ...], float], ...]
    method: str
    env_shift_norm: float

    @property
    def max_term_norm(self) -> float:
        return max((norm for _, norm in self.per_term_norms), default=0.0)


def _embedded_sum_norm(parts: list[tuple[tuple[int, ...], np.ndarray, np.ndarray]],
                       n: int, d: int) -> float:
    """Frobenius norm of sum_i embed(Y_i, K_i) kron E_i without building d^n.

    <A_i, A_j> = d^(n - |K_i u K_j|) tr(Y_i~^dag Y_j~) tr(E_i^dag E_j) with
    the blocks embedded into the union support.
    """
    total = 0.0
    for i, (ki, yi, ei) in enumerate(parts):
        for j in range(i, len(parts)):
            kj, yj, ej = parts[j]
            env_ip = np.trace(ei.conj().T @ ej).real
            if env_ip == 0.0:
                continue
            union = sorted(set(ki) | set(kj))
            pos = {qudit: idx for idx, qudit in enumerate(union)}
            yi_u = embed(yi, tuple(pos[k] for k in ki), len(union), d)
            yj_u = embed(yj, tuple(pos[k] for k in kj), len(union), d)
            sys_ip = np.trace(yi_u.conj().T @ yj_u).real
            ip = d ** (n - len(union)) * sys_ip * env_ip
            total += ip if i == j else 2 * ip
    return float(np.sqrt(max(total, 0.0)))


def _assemble_report(averaged, drift: DriftHamiltonian, method: str) -> AverageReport:
    parts = []
    per_term = []
    env_shift = np.zeros_like(drift.env_only)
    for support, avg, env_block in averaged:
        dim = drift.d ** len(support)
        trace_part = np.trace(avg) / dim
        centered = avg - trace_part * np.eye(dim)
        env_shift = env_shift + trace_part * env_block
        per_term.append((support, frob(centered) * frob(env_block)))
        parts.append((support, centered, env_block))
    residual = _embedded_sum_norm(parts, drift.n, drift.d)
    return AverageReport(residual, tuple(per_term), method, frob(env_shift))


def _check_strength(m, drift: DriftHamiltonian) -> None:
    _, _, declared_t = _array_entries(m)
    if declared_t is not None and declared_t < drift.max_arity:
        warnings.warn(f"array strength {declared_t} is below the drift's "
                      f"maximum term arity {drift.max_arity}; residual will "
                      f"generally not vanish", stacklevel=3)


def bangbang_average(m, drift: DriftHamiltonian) -> AverageReport:
    """First-order average under the bang-bang control action of an array.

    Each term is conjugated by the tensor Weyl unitaries of the array
    columns restricted to the term's support and averaged over columns.
    """
    entries, q, _ = _array_entries(m)
    field = field_from_order(q)
    d = field.coord_dim()
    if d != drift.d or entries.shape[0] != drift.n:
        raise ValueError("array does not match the drift's qudit layout")
    _check_strength(m, drift)
    N = entries.shape[1]
    unitaries = {e: weyl_from_field(field, e) for e in range(q)}

    averaged = []
    for term in drift.terms:
        cols = entries[list(term.support)]
        tensor_cache: dict[tuple[int, ...], np.ndarray] = {}
        acc = np.zeros_like(term.sys_block)
        for j in range(N):
            key = tuple(int(s) for s in cols[:, j])
            w = tensor_cache.get(key)
            if w is None:
                w = unitaries[key[0]]
                for sym in key[1:]:
                    w = np.kron(w, unitaries[sym])
                tensor_cache[key] = w
            acc += w.conj().T @ term.sys_block @ w
        averaged.append((term.support, acc / N, term.env_block))
    return _assemble_report(averaged, drift, "bangbang")


def eulerian_average(m, drift: DriftHamiltonian, delta: float,
                     method: str = "exact",
                     order: int = config.DEFAULT_QUAD_ORDER) -> AverageReport:
    """First-order average under the bounded-strength (Eulerian) action.

    Walks the subintervals accumulating the per-qudit control prefixes and
    sums each term's subinterval averages on its own support; the
    environment factor of every term passes through untouched.
    """
    entries, q, _ = _array_entries(m)
    field = field_from_order(q)
    d = field.coord_dim()
    if d != drift.d or entries.shape[0] != drift.n:
        raise ValueError("array does not match the drift's qudit layout")
    _check_strength(m, drift)
    n, N = entries.shape
    diff = _transitions(entries, field)
    hams = _label_hamiltonians(field, delta)
    steps = {e: _expm_hermitian(h, delta) for e, h in hams.items()}

    # per-qudit control prefixes V_k(j) = U_c restricted to qudit k
    prefixes = np.zeros((N, n, d, d), dtype=complex)
    for k in range(n):
        v = np.eye(d, dtype=complex)
        for j in range(N):
            prefixes[j, k] = v
            v = steps[int(diff[k, j])] @ v

    if method == "quadrature":
        nodes, node_weights = np.polynomial.legendre.leggauss(order)
    averaged = []
    for term in drift.terms:
        support = term.support
        t = len(support)
        dim = d**t
        sub_diff = diff[list(support)]
        core_cache: dict[tuple[int, ...], np.ndarray] = {}
        node_cache: dict[tuple[int, ...], list[np.ndarray]] = {}
        acc = np.zeros((dim, dim), dtype=complex)
        for j in range(N):
            key = tuple(int(s) for s in sub_diff[:, j])
            v_seg = prefixes[j, support[0]]
            for k in support[1:]:
                v_seg = np.kron(v_seg, prefixes[j, k])
            if method == "exact":
                core = core_cache.get(key)
                if core is None:
                    h_seg = sum(embed(hams[key[i]], (i,), t, d) for i in range(t))
                    lam, vec = np.linalg.eigh(h_seg)
                    xh = vec.conj().T @ term.sys_block @ vec
                    core = vec @ (xh * _phase_filter(lam, delta)) @ vec.conj().T
                    core_cache[key] = core
                acc += v_seg.conj().T @ core @ v_seg
            elif method == "quadrature":
                node_us = node_cache.get(key)
                if node_us is None:
                    h_seg = sum(embed(hams[key[i]], (i,), t, d) for i in range(t))
                    node_us = [scipy.linalg.expm(-1j * h_seg * ((x + 1) * delta / 2))
                               for x in nodes]
                    node_cache[key] = node_us
                for u_node, weight in zip(node_us, node_weights):
                    uv = u_node @ v_seg
                    acc += (weight / 2) * (uv.conj().T @ term.sys_block @ uv)
            else:
                raise ValueError(f"unknown method {method!r}")
        averaged.append((support, acc / N, term.env_block))
    label = "exact" if method == "exact" else f"quadrature({order})"
    return _assemble_report(averaged, drift, label)


def single_cycle_average(cycle: EulerianCycle, x: np.ndarray, delta: float,
                         method: str = "exact",
                         order: int = config.DEFAULT_QUAD_ORDER) -> np.ndarray:
    """The control action Q_C of a single-qudit Eulerian cycle.

    The cycle lives over GF(d^2) (one row, k = 1); square pulses realize
    each transition.  By the Eulerian decoupling theorem the result equals
    the plain group average of x.
    """
    if cycle.k != 1:
        raise ValueError("single-qudit average needs a k = 1 cycle")
    field = field_from_order(cycle.q)
    d = field.coord_dim()
    x = np.asarray(x, dtype=complex)
    if x.shape != (d, d):
        raise ValueError(f"operator shape {x.shape} does not match d = {d}")
    symbols = cycle.vertices[:, 0]
    nxt = np.roll(symbols, -1)
    diff = field.add_table[nxt, field.neg_table[symbols]]
    hams = _label_hamiltonians(field, delta)
    steps = {e: _expm_hermitian(h, delta) for e, h in hams.items()}
    v = np.eye(d, dtype=complex)
    acc = np.zeros_like(x)
    for s in diff:
        acc += segment_average(x, hams[int(s)], v, delta, method, order)
        v = steps[int(s)] @ v
    return acc / len(diff)


def fs_map(d: int, labels, x: np.ndarray, delta: float, method: str = "exact",
           order: int = config.DEFAULT_QUAD_ORDER) -> np.ndarray:
    """Average over generators and the control subinterval (no group walk).

    labels is an iterable of Z_d x Z_d labels; each contributes the
    subinterval average of its square pulse from the identity prefix.
    Composing the group average after this map reproduces a cycle's
    control action.
    """
    x = np.asarray(x, dtype=complex)
    labels = list(labels)
    if not labels:
        raise ValueError("need at least one generator label")
    eye = np.eye(d, dtype=complex)
    acc = np.zeros_like(x)
    for a, b in labels:
        h = generator_hamiltonian(weyl(d, a, b), delta)
        acc += segment_average(x, h, eye, delta, method, order)
    return acc / len(labels)


# ---------------------------------------------------------------------------
# Exact evolution
# ---------------------------------------------------------------------------

def exact_evolution(drift: DriftHamiltonian, sched: Schedule,
                    substeps: int = 1) -> np.ndarray:
    """Propagator over one control cycle, on the full d^n * d_env space.

    Eulerian mode: time-ordered product of exp(-i (H + H_c) dt) with the
    control Hamiltonian constant on each subinterval.  Bang-bang mode:
    toggling-frame product of exp(-i U_j^dag H U_j Delta), which equals
    the lab propagator whenever the first column's unitary is the
    identity (true for every code-built array: column 0 is the zero
    codeword).
    """
    if sched.n != drift.n or sched.d != drift.d:
        raise ValueError("schedule does not match the drift's qudit layout")
    if substeps < 1:
        raise ValueError("substeps must be >= 1")
    h_total = drift.total_matrix()
    dim = h_total.shape[0]
    d_env = drift.d_env
    u = np.eye(dim, dtype=complex)
    dt = sched.delta / substeps
    for j in range(sched.N):
        if sched.mode == "bangbang":
            w = np.eye(1, dtype=complex)
            for k in range(sched.n):
                a, b = sched.labels[j, k]
                w = np.kron(w, weyl(sched.d, int(a), int(b)))
            w_full = np.kron(w, np.eye(d_env))
            h_seg = w_full.conj().T @ h_total @ w_full
        else:
            h_ctrl = np.zeros((drift.d**drift.n,) * 2, dtype=complex)
            for k in range(sched.n):
                h_ctrl += embed(sched.hams[j, k], (k,), sched.n, sched.d)
            h_seg = h_total + np.kron(h_ctrl, np.eye(d_env))
        step = _expm_hermitian(h_seg, dt)
        for _ in range(substeps):
            u = step @ u
    return u


# ---------------------------------------------------------------------------
# JSON serialization: schedules, reports, drifts
# ---------------------------------------------------------------------------

def schedule_to_json(sched: Schedule) -> dict:
    segments = []
    for j in range(sched.N):
        seg = {"labels": [[int(a), int(b)] for a, b in sched.labels[j]]}
        if sched.mode == "eulerian":
            seg["hamiltonians"] = [matrix_to_pairs(sched.hams[j, k])
                                   for k in range(sched.n)]
        segments.append(seg)
    return {"n": sched.n, "d": sched.d, "N": sched.N, "delta": sched.delta,
            "mode": sched.mode, "segments": segments}


def schedule_from_json(data: dict) -> Schedule:
    n, d, N = data["n"], data["d"], data["N"]
    labels = np.array([[seg["labels"][k] for k in range(n)]
                       for seg in data["segments"]], dtype=np.int64)
    hams = None
    if data["mode"] == "eulerian":
        hams = np.array([[matrix_from_pairs(seg["hamiltonians"][k], d)
                          for k in range(n)] for seg in data["segments"]])
    return Schedule(n, d, N, float(data["delta"]), data["mode"], labels, hams)


def write_schedule(path, sched: Schedule) -> None:
    Path(path).write_text(json.dumps(schedule_to_json(sched), indent=1) + "\n")


def read_schedule(path) -> Schedule:
    return schedule_from_json(json.loads(Path(path).read_text()))


def verify_schedule(sched: Schedule) -> float:
    """Largest phase-aligned distance of exp(-i h Delta) from the labeled Weyl.

    Re-verifies an (imported) eulerian schedule: each segment Hamiltonian
    must reproduce its segment unitary up to a global phase.
    """
    if sched.mode != "eulerian":
        raise ValueError("only eulerian schedules carry Hamiltonians to verify")
    worst = 0.0
    for j in range(sched.N):
        for k in range(sched.n):
            u = _expm_hermitian(sched.hams[j, k], sched.delta)
            a, b = sched.labels[j, k]
            worst = max(worst, aligned_distance(u, weyl(sched.d, int(a), int(b))))
    return worst


def report_to_json(report: AverageReport, tolerance: float, extra: dict | None = None) -> dict:
    data = {
        "residual_norm": report.residual_norm,
        "env_shift_norm": report.env_shift_norm,
        "method": report.method,
        "tolerance": tolerance,
        "passed": report.residual_norm <= tolerance,
        "per_term_norms": [{"support": list(sup), "norm": norm}
                           for sup, norm in report.per_term_norms],
    }
    if extra:
        data.update(extra)
    return data


def drift_to_json(drift: DriftHamiltonian) -> dict:
    return {
        "n": drift.n, "d": drift.d, "d_env": drift.d_env,
        "env_only": matrix_to_pairs(drift.env_only),
        "terms": [{"support": list(t.support),
                   "sys": matrix_to_pairs(t.sys_block),
                   "env": matrix_to_pairs(t.env_block)} for t in drift.terms],
    }


def drift_from_json(data: dict) -> DriftHamiltonian:
    n, d, d_env = data["n"], data["d"], data["d_env"]
    terms = []
    for entry in data["terms"]:
        support = tuple(int(k) for k in entry["support"])
        sys_block = matrix_from_pairs(entry["sys"], d ** len(support))
        env_block = matrix_from_pairs(entry["env"], d_env)
        terms.append(DriftTerm(support, sys_block, env_block))
    env_only = matrix_from_pairs(data["env_only"], d_env)
    return DriftHamiltonian(n, d, d_env, tuple(terms), env_only)


def write_drift(path, drift: DriftHamiltonian) -> None:
    Path(path).write_text(json.dumps(drift_to_json(drift), indent=1) + "\n")


def read_drift(path) -> DriftHamiltonian:
    return drift_from_json(json.loads(Path(path).read_text()))
