"""Dominant weights for Sp(n), bundle labels, and the Weyl dimension oracle.

An Sp(n) weight is an integer tuple (r1, ..., rn); it is dominant integral
when the entries are non-increasing and the last one is nonnegative.
Shifted weights r + mu_nu (one entry bumped by +-1) may leave the dominant
cone; they are kept and flagged rather than dropped, because downstream
product formulas need to know which candidates were excluded.
"""

from __future__ import annotations

import os
import threading
from dataclasses import dataclass
from fractions import Fraction
from math import comb

__all__ = [
    "NonDominantError",
    "SpnWeight",
    "BundleLabel",
    "NuDecomposition",
    "mu_shift",
    "weyl_dim",
    "decompose_rho_tensor_E",
    "spinor_decomposition",
    "lambda2_decomposition",
    "parse_weight",
    "parse_weight_text",
]


class NonDominantError(ValueError):
    """A dominant integral weight was required but not supplied."""


@dataclass(frozen=True)
class SpnWeight:
    """Integer weight for Sp(n), n >= 2.  Immutable and hashable."""

    entries: tuple

    def __post_init__(self):
        entries = tuple(int(e) for e in self.entries)
        object.__setattr__(self, "entries", entries)
        if len(entries) < 2:
            raise ValueError(f"rank must be at least 2, got n={len(entries)}")

    @property
    def n(self) -> int:
        return len(self.entries)

    @property
    def is_dominant(self) -> bool:
        e = self.entries
        return all(e[i] >= e[i + 1] for i in range(len(e) - 1)) and e[-1] >= 0

    def total(self) -> int:
        return sum(self.entries)

    def require_dominant(self) -> "SpnWeight":
        if not self.is_dominant:
            raise NonDominantError(f"weight {self} is not dominant integral")
        return self

    def lambda_ab_shape(self):
        """Return (a, b) if the weight is of the form (2_b, 1_{a-b}, 0...), else None."""
        if not self.is_dominant or any(e > 2 for e in self.entries):
            return None
        b = sum(1 for e in self.entries if e == 2)
        a = b + sum(1 for e in self.entries if e == 1)
        return (a, b)

    def __str__(self) -> str:
        return ",".join(str(e) for e in self.entries)

    def __repr__(self) -> str:
        return f"SpnWeight(({self}))"


def lambda_ab_weight(a: int, b: int, n: int) -> SpnWeight:
    """The weight (2_b, 1_{a-b}, 0_{n-a}) labelling the primitive-form module."""
    if not 0 <= b <= a <= n:
        raise ValueError(f"need 0 <= b <= a <= n, got a={a}, b={b}, n={n}")
    return SpnWeight((2,) * b + (1,) * (a - b) + (0,) * (n - a))


@dataclass(frozen=True)
class BundleLabel:
    """Label (k, rho) of an irreducible Sp(1)Sp(n) bundle.

    k is the Sp(1) highest weight (a nonnegative integer), rho the Sp(n)
    one.  When k + sum(rho) is odd the label does not factor through
    Sp(1)Sp(n) itself; that is permitted (local computations go through
    unchanged) but flagged via ``parity_warning``.
    """

    k: int
    rho: SpnWeight

    def __post_init__(self):
        if self.k < 0:
            raise ValueError(f"Sp(1) weight must be nonnegative, got k={self.k}")
        self.rho.require_dominant()

    @property
    def n(self) -> int:
        return self.rho.n

    @property
    def parity_warning(self) -> bool:
        """True when k + sum(rho) is odd (not a genuine Sp(1)Sp(n) module)."""
        return (self.k + self.rho.total()) % 2 == 1

    def __str__(self) -> str:
        return f"S^{self.k}(H) (x) V_({self.rho}) [n={self.n}]"


def mu_shift(rho: SpnWeight, nu: int) -> SpnWeight:
    """Shift rho by mu_nu: +1 at position nu (nu > 0) or -1 at position -nu.

    The result may be non-dominant; callers test ``.is_dominant``.
    """
    n = rho.n
    if nu == 0 or abs(nu) > n:
        raise ValueError(f"shift index must satisfy 1 <= |nu| <= {n}, got {nu}")
    i = abs(nu) - 1
    delta = 1 if nu > 0 else -1
    entries = list(rho.entries)
    entries[i] += delta
    return SpnWeight(tuple(entries))


def nu_indices(n: int):
    """Canonical ordering of the shift indices: 1..n then -1..-n."""
    return list(range(1, n + 1)) + [-i for i in range(1, n + 1)]


class _WeylDimCache:
    """Memo for Weyl dimensions, optionally persisted to QKBW_CACHE_DIR.

    The persistent file holds one ``n;rho;dim`` line per entry.  In-memory
    reads are plain dict lookups (safe under CPython); file appends are
    serialized with a lock.
    """

    def __init__(self):
        self._mem: dict = {}
        self._lock = threading.Lock()
        self._path = None
        cache_dir = os.environ.get("QKBW_CACHE_DIR")
        if cache_dir:
            self._path = os.path.join(cache_dir, "weyl_dims.txt")
            self._load()

    def _load(self):
        try:
            with open(self._path, "r", encoding="ascii") as fh:
                for line in fh:
                    line = line.strip()
                    if not line:
                        continue
                    n_str, rho_str, dim_str = line.split(";")
                    key = (int(n_str), tuple(int(e) for e in rho_str.split(",")))
                    self._mem[key] = int(dim_str)
        except FileNotFoundError:
            pass

    def get(self, key):
        return self._mem.get(key)

    def put(self, key, value: int):
        self._mem[key] = value
        if self._path is not None:
            with self._lock:
                os.makedirs(os.path.dirname(self._path), exist_ok=True)
                with open(self._path, "a", encoding="ascii") as fh:
                    n, entries = key
                    fh.write(f"{n};{','.join(map(str, entries))};{value}\n")


_dim_cache = _WeylDimCache()


def weyl_dim(rho: SpnWeight) -> int:
    """Dimension of the irreducible Sp(n) module with highest weight rho.

    Uses the Weyl dimension product for the C_n root system: with
    l_i = rho^i + n - i + 1 and m_i = n - i + 1,

        dim = prod_i l_i/m_i * prod_{i<j} (l_i^2 - l_j^2)/(m_i^2 - m_j^2).

    Exact; raises on non-dominant input.
    """
    rho.require_dominant()
    key = (rho.n, rho.entries)
    cached = _dim_cache.get(key)
    if cached is not None:
        return cached
    n = rho.n
    l = [rho.entries[i] + n - i for i in range(n)]  # i is 0-based: n - (i+1) + 1
    m = [n - i for i in range(n)]
    dim = Fraction(1)
    for i in range(n):
        dim *= Fraction(l[i], m[i])
        for j in range(i + 1, n):
            dim *= Fraction(l[i] ** 2 - l[j] ** 2, m[i] ** 2 - m[j] ** 2)
    assert dim.denominator == 1 and dim > 0
    value = dim.numerator
    _dim_cache.put(key, value)
    return value


def primitive_form_dim(a: int, n: int) -> int:
    """Hand-countable check value: dim of the (1_a) module is C(2n,a) - C(2n,a-2)."""
    return comb(2 * n, a) - (comb(2 * n, a - 2) if a >= 2 else 0)


@dataclass(frozen=True)
class NuCandidate:
    nu: int
    weight: SpnWeight
    dominant: bool


@dataclass(frozen=True)
class NuDecomposition:
    """Decomposition of V_rho (x) E into the 2n shift candidates rho + mu_nu."""

    rho: SpnWeight
    candidates: tuple

    @property
    def summand_count(self) -> int:
        return sum(1 for c in self.candidates if c.dominant)

    @property
    def dominant_nus(self) -> tuple:
        return tuple(c.nu for c in self.candidates if c.dominant)

    def parity_consistent(self) -> bool:
        """Summand count is odd exactly when the last entry of rho is zero."""
        return (self.summand_count % 2 == 1) == (self.rho.entries[-1] == 0)


def decompose_rho_tensor_E(rho: SpnWeight) -> NuDecomposition:
    """List all 2n candidates rho + mu_nu with dominance flags."""
    rho.require_dominant()
    cands = []
    for nu in nu_indices(rho.n):
        w = mu_shift(rho, nu)
        cands.append(NuCandidate(nu, w, w.is_dominant))
    table = NuDecomposition(rho, tuple(cands))
    assert table.parity_consistent(), f"summand-count parity violated for {rho}"
    return table


def spinor_decomposition(n: int):
    """The n+1 bundle labels (k, (1_{n-k})) the spinor bundle splits into."""
    if n < 2:
        raise ValueError(f"rank must be at least 2, got n={n}")
    return [BundleLabel(k, lambda_ab_weight(n - k, 0, n)) for k in range(n + 1)]


def lambda2_decomposition(n: int):
    """The three bundle labels of the 2-form bundle: (2,(0)), (2,(1,1)), (0,(2))."""
    if n < 2:
        raise ValueError(f"rank must be at least 2, got n={n}")
    return [
        BundleLabel(2, lambda_ab_weight(0, 0, n)),
        BundleLabel(2, lambda_ab_weight(2, 0, n)),
        BundleLabel(0, lambda_ab_weight(1, 1, n)),
    ]


def parse_weight_text(text: str, n=None) -> SpnWeight:
    """Parse a weight from "2,1,0" or the shorthand "2^b 1^(a-b) @ n".

    The shorthand lists value^count tokens and pads with zeros up to the
    rank given after "@" (or the ``n`` argument).  Canonical output is
    always the explicit comma-separated list.
    """
    text = text.strip()
    if "^" in text or "@" in text:
        body, _, rank_part = text.partition("@")
        rank = int(rank_part.strip()) if rank_part.strip() else None
        if rank is not None and n is not None and rank != n:
            raise ValueError(f"shorthand rank {rank} conflicts with n={n}")
        rank = rank if rank is not None else n
        if rank is None:
            raise ValueError("shorthand weight needs a rank: '... @ n'")
        entries = []
        for token in body.split():
            value_str, _, count_str = token.partition("^")
            count_str = count_str.strip().lstrip("(").rstrip(")")
            count = int(count_str) if count_str else 1
            entries.extend([int(value_str)] * count)
        if len(entries) > rank:
            raise ValueError(f"shorthand expands to {len(entries)} entries > rank {rank}")
        entries.extend([0] * (rank - len(entries)))
        return SpnWeight(tuple(entries))
    entries = tuple(int(tok) for tok in text.split(","))
    if n is not None:
        if len(entries) > n:
            raise ValueError(f"weight has {len(entries)} entries > rank {n}")
        entries = entries + (0,) * (n - len(entries))
    return SpnWeight(entries)


# Short alias used throughout the CLI.
parse_weight = parse_weight_text
