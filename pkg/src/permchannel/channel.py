"""Permutation-channel simulation, decoding, and zero-error certification.

The channel applies an element of the group to the positions of the carriers;
the element is unknown to the receiver.  Classical decoding maps a received
string to its orbit; quantum decoding projects onto the message basis.  Both
are certified zero-error by exhausting every (message, element) pair, and the
ancilla-assisted protocol is simulated sector by sector with clock-shift
unitaries on the multiplicity index.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple

import numpy as np

from . import kernels
from .characters import unit_root
from .encoding import MessageBasis, StateVector, message_basis_cyclic
from .errors import AmbiguousDecodingError, DegreeMismatchError
from .perms import (
    DEFAULT_MAX_STATES,
    ColoredString,
    Permutation,
    PermutationGroup,
    act_on_index,
    act_on_string,
    orbit_rep_array,
)

EXHAUSTIVE = "exhaustive"
UNIFORM_RANDOM = "uniform_random"
FIXED = "fixed"


@dataclass(frozen=True)
class ChannelSpec:
    """A permutation channel: a group plus an element-selection policy."""

    group: PermutationGroup
    selection: str = EXHAUSTIVE
    sigma: Permutation | None = None
    seed: int | None = None

    def __post_init__(self):
        if self.selection not in (EXHAUSTIVE, UNIFORM_RANDOM, FIXED):
            raise ValueError(f"unknown selection policy {self.selection!r}")
        if self.selection == FIXED:
            if self.sigma is None or self.sigma not in self.group:
                raise ValueError("fixed selection requires an element of the group")

    @staticmethod
    def exhaustive(group: PermutationGroup) -> "ChannelSpec":
        return ChannelSpec(group, EXHAUSTIVE)

    @staticmethod
    def fixed(group: PermutationGroup, sigma: Permutation) -> "ChannelSpec":
        return ChannelSpec(group, FIXED, sigma=sigma)

    @staticmethod
    def uniform_random(group: PermutationGroup, seed: int) -> "ChannelSpec":
        return ChannelSpec(group, UNIFORM_RANDOM, seed=seed)

    def draw_elements(self, rng: np.random.Generator | None = None) -> list[Permutation]:
        """Elements the channel may apply under this policy (one draw if random)."""
        if self.selection == EXHAUSTIVE:
            return list(self.group.elements)
        if self.selection == FIXED:
            return [self.sigma]
        rng = rng if rng is not None else np.random.default_rng(self.seed)
        return [self.group.elements[int(rng.integers(len(self.group)))]]


def apply_channel_classical(
    spec: ChannelSpec, x: ColoredString, rng: np.random.Generator | None = None
) -> list[tuple[Permutation, ColoredString]]:
    """(element, output) pairs: the whole image set when exhaustive, else one draw."""
    if spec.group.degree != x.n:
        raise DegreeMismatchError(f"group degree {spec.group.degree} != string length {x.n}")
    return [(sigma, act_on_string(sigma, x)) for sigma in spec.draw_elements(rng)]


def apply_permutation_state(sigma: Permutation, psi: StateVector) -> StateVector:
    """U(sigma)|psi>: amplitudes permute across basis indices, no arithmetic."""
    if sigma.degree != psi.n:
        raise DegreeMismatchError(f"permutation degree {sigma.degree} != state length {psi.n}")
    moved = {act_on_index(sigma, ix, psi.d): amp for ix, amp in psi.amplitudes.items()}
    return StateVector(psi.n, psi.d, moved)


def apply_channel_quantum(
    spec: ChannelSpec, psi: StateVector, rng: np.random.Generator | None = None
) -> list[tuple[Permutation, StateVector]]:
    """(element, output state) pairs under the selection policy."""
    if spec.group.degree != psi.n:
        raise DegreeMismatchError(f"group degree {spec.group.degree} != state length {psi.n}")
    return [(sigma, apply_permutation_state(sigma, psi)) for sigma in spec.draw_elements(rng)]


@lru_cache(maxsize=16)
def _decode_table(group: PermutationGroup, d: int, max_states: int):
    rep = orbit_rep_array(group, d, max_states=max_states)
    return rep, np.unique(rep)


def decode_classical(
    group: PermutationGroup, y: ColoredString, *, max_states: int = DEFAULT_MAX_STATES
) -> int:
    """Index of the orbit containing y, in canonical (representative) order."""
    if group.degree != y.n:
        raise DegreeMismatchError(f"group degree {group.degree} != string length {y.n}")
    rep, reps = _decode_table(group, y.d, max_states)
    return int(np.searchsorted(reps, rep[y.index]))


def decode_quantum(
    basis: MessageBasis, psi: StateVector, *, tie_tol: float = 1e-6
) -> tuple[int, int, float]:
    """(mu, alpha, probability) of the basis entry with the largest overlap.

    A runner-up within ``tie_tol`` of the maximum raises
    AmbiguousDecodingError: channel outputs of genuine basis states decode
    with probability 1, so ties indicate a non-basis input.
    """
    probs = [abs(state.inner(psi)) ** 2 for _mu, _alpha, state in basis.entries]
    order = sorted(range(len(probs)), key=probs.__getitem__, reverse=True)
    best = order[0]
    if len(order) > 1 and probs[order[1]] > probs[best] - tie_tol:
        raise AmbiguousDecodingError(
            f"overlap tie: {probs[best]:.6f} vs {probs[order[1]]:.6f}"
        )
    mu, alpha, _state = basis.entries[best]
    return mu, alpha, probs[best]


@dataclass(frozen=True)
class ZeroErrorReport:
    """Outcome of exhausting every (message, group element) pair."""

    messages_tested: int
    group_elements_tested: int
    failures: tuple[tuple[int, tuple[int, ...]], ...]  # (message index, element images)
    max_offdiag_overlap: float

    @property
    def zero_error(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {
            "messages": self.messages_tested,
            "elements": self.group_elements_tested,
            "failures": [
                {"message": m, "element": list(images)} for m, images in self.failures
            ],
            "max_offdiag_overlap": self.max_offdiag_overlap,
        }


def verify_zero_error(
    group: PermutationGroup,
    basis: MessageBasis,
    *,
    exhaustive: bool = True,
    tol: float = 1e-9,
) -> ZeroErrorReport:
    """Decode U(sigma)|u_m> for every message m and element sigma.

    With ``exhaustive`` False only the generators are applied (a quick smoke
    pass); certification uses the default exhaustive sweep.
    """
    if group.degree != basis.n:
        raise DegreeMismatchError("group degree does not match the basis")
    matrix = basis.dense_matrix()
    elements = group.elements if exhaustive else (group.generators or (group.identity,))
    failures = []
    max_offdiag = 0.0
    count = len(basis.entries)
    for sigma in elements:
        table = kernels.action_table(sigma.inverse().images, basis.d)
        permuted = np.zeros_like(matrix)
        permuted[table, :] = matrix
        probs = np.abs(matrix.conj().T @ permuted) ** 2
        offdiag = probs - np.diag(np.diag(probs))
        max_offdiag = max(max_offdiag, float(offdiag.max()))
        decoded = np.argmax(probs, axis=0)
        for message in range(count):
            if decoded[message] != message or probs[message, message] < 1.0 - tol:
                failures.append((message, sigma.images))
    return ZeroErrorReport(
        messages_tested=count,
        group_elements_tested=len(elements),
        failures=tuple(failures),
        max_offdiag_overlap=max_offdiag,
    )


def weyl_operators(m: int) -> list[np.ndarray]:
    """Clock-shift family X**a Z**b, ordered by (a, b); trace-orthogonal."""
    if m < 1:
        raise ValueError("m must be >= 1")
    shift = np.zeros((m, m), dtype=complex)
    for j in range(m):
        shift[(j + 1) % m, j] = 1.0
    clock = np.diag([unit_root(m, j) for j in range(m)])
    out = []
    x_power = np.eye(m, dtype=complex)
    for _a in range(m):
        z_power = np.eye(m, dtype=complex)
        for _b in range(m):
            out.append(x_power @ z_power)
            z_power = z_power @ clock
        x_power = shift @ x_power
    return out


def sector_matrix(basis: MessageBasis, mu: int) -> np.ndarray:
    """d**n x m_mu matrix of the sector-mu basis states (columns)."""
    columns = [state.dense() for m, _alpha, state in basis.entries if m == mu]
    if not columns:
        raise ValueError(f"sector {mu} is empty")
    return np.stack(columns, axis=1)


def sector_unitary(basis: MessageBasis, mu: int, sigma: Permutation) -> np.ndarray:
    """U(sigma) restricted to the span of sector mu (m x m matrix)."""
    block = sector_matrix(basis, mu)
    table = kernels.action_table(sigma.inverse().images, basis.d)
    permuted = np.zeros_like(block)
    permuted[table, :] = block
    return block.conj().T @ permuted


@dataclass(frozen=True, eq=False)
class DenseCodingInstance:
    """The m**2 entangled signal states of one sector, message (x) ancilla."""

    mu: int
    m: int
    entangled: np.ndarray  # (m**2, d**n * m), rows are flattened states
    weyl_index: tuple[tuple[int, int], ...]


def dense_coding_instance(basis: MessageBasis, mu: int) -> DenseCodingInstance:
    block = sector_matrix(basis, mu)
    m = block.shape[1]
    rows = [(block @ w).reshape(-1) / math.sqrt(m) for w in weyl_operators(m)]
    entangled = np.stack(rows, axis=0)
    gram = entangled.conj() @ entangled.T
    if float(np.abs(gram - np.eye(m * m)).max()) > 1e-9:
        raise ValueError("entangled signal states are not orthonormal")
    index = tuple((a, b) for a in range(m) for b in range(m))
    return DenseCodingInstance(mu=mu, m=m, entangled=entangled, weyl_index=index)


class DenseCodingResult(NamedTuple):
    a: int
    b: int
    probability: float


def dense_coding_roundtrip(
    n: int,
    d: int,
    mu: int,
    a: int,
    b: int,
    sigma: Permutation,
    *,
    basis: MessageBasis | None = None,
) -> DenseCodingResult:
    """Send (a, b) through sector mu under channel element sigma and decode.

    The sender applies the (a, b) clock-shift on the message half of the
    shared maximally entangled state; the channel permutes the carriers; the
    receiver measures in the entangled basis.  For cyclic groups the channel
    is a global phase on each sector, so decoding succeeds with probability 1.
    """
    if basis is None:
        basis = message_basis_cyclic(n, d)
    if basis.group.kind != "cyclic":
        raise ValueError("dense coding is implemented for cyclic groups only")
    if sigma not in basis.group:
        raise ValueError("sigma is not an element of the channel group")
    instance = dense_coding_instance(basis, mu)
    if not (0 <= a < instance.m and 0 <= b < instance.m):
        raise ValueError(f"(a, b) = ({a}, {b}) out of range for m = {instance.m}")
    sent = instance.entangled[instance.weyl_index.index((a, b))].reshape(d**n, instance.m)
    table = kernels.action_table(sigma.inverse().images, d)
    received = np.zeros_like(sent)
    received[table, :] = sent
    probs = np.abs(instance.entangled.conj() @ received.reshape(-1)) ** 2
    best = int(np.argmax(probs))
    decoded_a, decoded_b = instance.weyl_index[best]
    return DenseCodingResult(decoded_a, decoded_b, float(probs[best]))


def dense_coding_certify(
    n: int, d: int, *, basis: MessageBasis | None = None, tol: float = 1e-9
) -> dict:
    """Round-trip every (mu, a, b) under every channel element.

    Returns the number of triples that survive all elements; it equals the
    ancilla-assisted message count when the construction is sound.
    """
    if basis is None:
        basis = message_basis_cyclic(n, d)
    failures = []
    triples = 0
    for mu, m in enumerate(basis.multiplicities):
        if m == 0:
            continue
        instance = dense_coding_instance(basis, mu)
        table_cache = {
            sigma: kernels.action_table(sigma.inverse().images, d)
            for sigma in basis.group.elements
        }
        for pos, (a, b) in enumerate(instance.weyl_index):
            ok = True
            sent = instance.entangled[pos].reshape(d**n, m)
            for sigma, table in table_cache.items():
                received = np.zeros_like(sent)
                received[table, :] = sent
                probs = np.abs(instance.entangled.conj() @ received.reshape(-1)) ** 2
                best = int(np.argmax(probs))
                if instance.weyl_index[best] != (a, b) or probs[best] < 1.0 - tol:
                    failures.append({"mu": mu, "a": a, "b": b, "element": list(sigma.images)})
                    ok = False
            if ok:
                triples += 1
    return {"triples": triples, "failures": failures}
