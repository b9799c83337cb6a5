"""Conformal weights, relative dimensions, and Casimir eigenvalues for Sp(n).

Each summand V_{rho+mu_nu} of V_rho (x) E carries a conformal weight

    w_i  = -(rho^i - i + 1)          (nu = i > 0)
    w_-i = rho^i - i + 2n + 1        (nu = -i < 0)

and a translated weight w_hat = w - (n + 1/2).  Casimir eigenvalues are
moments of the conformal weights against the relative dimensions
dim V_{rho+mu_nu} / dim V_rho:

    c_q     = sum_nu w_nu^q     * reldim(nu)
    c_hat_q = sum_nu w_hat_nu^q * reldim(nu)

Relative dimensions come from two independent routes: the Weyl dimension
oracle (always the source of truth) and a product formula over translated
weights whose prefactor convention is calibrated against the oracle.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .rationals import format_rational
from .weights import (
    BundleLabel,
    SpnWeight,
    decompose_rho_tensor_E,
    lambda_ab_weight,
    mu_shift,
    nu_indices,
    weyl_dim,
)

__all__ = [
    "FormulaDegeneracyError",
    "PrefactorShift",
    "conformal_weight",
    "conformal_weight_hat",
    "sp1_conformal_weight",
    "relative_dimension_weyl",
    "relative_dimension_product",
    "casimir_eigenvalue",
    "casimir_hat",
    "closed_form_c2_lambda_ab",
    "closed_form_c4_lambda_ab",
    "table1_row",
    "verify_recursion",
    "CasimirReport",
    "casimir_report",
    "GradientTarget",
    "DecompositionTable",
    "decompose_bundle",
]

DEFAULT_Q_CAP = 12  # Casimir generators stop at c_{2n}; no practical need beyond.


class FormulaDegeneracyError(ArithmeticError):
    """Two dominant summands share a translated conformal weight."""


def conformal_weight(rho: SpnWeight, nu: int) -> Fraction:
    """Integer-valued conformal weight attached to the summand rho + mu_nu.

    Defined for every shift index, including those whose target is
    non-dominant.
    """
    rho.require_dominant()
    n = rho.n
    if nu == 0 or abs(nu) > n:
        raise ValueError(f"shift index must satisfy 1 <= |nu| <= {n}, got {nu}")
    i = abs(nu)
    if nu > 0:
        return Fraction(-(rho.entries[i - 1] - i + 1))
    return Fraction(rho.entries[i - 1] - i + 2 * n + 1)


def conformal_weight_hat(rho: SpnWeight, nu: int) -> Fraction:
    """Translated weight w_hat = w - (n + 1/2); always a half-integer."""
    return conformal_weight(rho, nu) - (rho.n + Fraction(1, 2))


def sp1_conformal_weight(k: int, N: int) -> Fraction:
    """Sp(1) conformal weight of the summand k+N:  W_1 = -k,  W_-1 = k+2."""
    if k < 0:
        raise ValueError(f"Sp(1) weight must be nonnegative, got k={k}")
    if N == 1:
        return Fraction(-k)
    if N == -1:
        return Fraction(k + 2)
    raise ValueError(f"N must be +1 or -1, got {N}")


def relative_dimension_weyl(rho: SpnWeight, nu: int) -> Fraction:
    """dim V_{rho+mu_nu} / dim V_rho via the Weyl oracle; 0 if non-dominant."""
    shifted = mu_shift(rho, nu)
    if not shifted.is_dominant:
        return Fraction(0)
    return Fraction(weyl_dim(shifted), weyl_dim(rho))


class PrefactorShift(enum.Enum):
    """The two readings of the product-formula prefactor -2*(w_hat_nu - s).

    FULL reads s = (-1)^N, HALF reads s = (-1)^N / 2, where N is the number
    of dominant summands of V_rho (x) E.  HALF is the convention that
    reproduces the Weyl oracle on the calibration corpus and is the default.
    """

    FULL = "full"
    HALF = "half"


def relative_dimension_product(
    rho: SpnWeight, nu: int, convention: PrefactorShift = PrefactorShift.HALF
) -> Fraction:
    """Relative dimension via the translated-weight product formula.

        reldim(nu) = -2 (w_hat_nu - s) *
                     prod over dominant nu' != nu of
                         (w_hat_nu + w_hat_nu') / (w_hat_nu - w_hat_nu')

    Returns 0 for a non-dominant target.  Raises FormulaDegeneracyError if
    two dominant summands share a translated weight (never observed for
    dominant pairs, but guarded rather than silently dividing by zero).
    """
    table = decompose_rho_tensor_E(rho)
    if not mu_shift(rho, nu).is_dominant:
        return Fraction(0)
    count = table.summand_count
    parity = Fraction(-1) ** count
    shift = parity if convention is PrefactorShift.FULL else parity / 2
    wh = conformal_weight_hat(rho, nu)
    value = -2 * (wh - shift)
    for cand in table.candidates:
        if cand.nu == nu or not cand.dominant:
            continue
        other = conformal_weight_hat(rho, cand.nu)
        if other == wh:
            raise FormulaDegeneracyError(
                f"degenerate translated weights at nu={nu}, nu'={cand.nu} for rho={rho}"
            )
        value *= (wh + other) / (wh - other)
    return value


def casimir_eigenvalue(rho: SpnWeight, q: int) -> Fraction:
    """Eigenvalue of the q-th Casimir trace on V_rho (Weyl-oracle reldims)."""
    if q < 0:
        raise ValueError(f"q must be nonnegative, got {q}")
    return sum(
        conformal_weight(rho, nu) ** q * relative_dimension_weyl(rho, nu)
        for nu in nu_indices(rho.n)
    )


def casimir_hat(rho: SpnWeight, q: int) -> Fraction:
    """Eigenvalue of the translated q-th Casimir trace on V_rho."""
    if q < 0:
        raise ValueError(f"q must be nonnegative, got {q}")
    return sum(
        conformal_weight_hat(rho, nu) ** q * relative_dimension_weyl(rho, nu)
        for nu in nu_indices(rho.n)
    )


def sp1_casimir(k: int) -> Fraction:
    """Quadratic Sp(1) Casimir eigenvalue on the weight-k module: 2k(k+2)."""
    return Fraction(2 * k * (k + 2))


def _check_ab_range(a: int, b: int, n: int):
    if not 0 <= b <= a <= n:
        raise ValueError(f"need 0 <= b <= a <= n, got a={a}, b={b}, n={n}")


def closed_form_c2_lambda_ab(a: int, b: int, n: int) -> Fraction:
    """c_2 on the (2_b, 1_{a-b}) module:  2a(2n-a+2) + 2b(2n-b+4)."""
    _check_ab_range(a, b, n)
    return Fraction(2 * a * (2 * n - a + 2) + 2 * b * (2 * n - b + 4))


def closed_form_c4_lambda_ab(a: int, b: int, n: int) -> Fraction:
    """c_4 on the (2_b, 1_{a-b}) module (quartic closed form)."""
    _check_ab_range(a, b, n)
    ta = 2 * a * (2 * n - a + 2)
    tb = 2 * b * (2 * n - b + 4)
    value = (
        ta * (2 * n + 3) * (n + 1)
        - 2 * a**2 * (2 * n - a + 2) ** 2
        + tb * (2 * n + 3) * (n + 3)
        - 2 * b**2 * (2 * n - b + 4) ** 2
    )
    return Fraction(value)


# The five-row table of (conformal weight, relative dimension) on the
# (2_b, 1_{a-b}) module, keyed by shift index.  Valid as printed for
# 0 < b < a < n; boundary shapes collapse rows and are handled by the
# oracle instead.
def table1_row(a: int, b: int, n: int, nu: int):
    """Closed-form (w, reldim) for one of the five generic rows on (2_b,1_{a-b}).

    nu must be one of 1, b+1, a+1, -b, -a.  Entries are the printed rational
    functions of (a, b, n), instantiated exactly.
    """
    _check_ab_range(a, b, n)
    F = Fraction
    if nu == 1:
        return F(-2), F(
            2 * b * (a + 1) * (2 * n - a + 3) * (2 * n - b + 4) * (n + 2),
            (a + 2) * (b + 1) * (2 * n - a + 4) * (2 * n - b + 5),
        )
    if nu == b + 1:
        return F(b - 1), F(
            (a - b) * (2 * n - b + 4) * (2 * n - a - b + 2) * (n - b + 1),
            (b + 1) * (a - b + 1) * (2 * n - a - b + 3) * (n - b + 2),
        )
    if nu == a + 1:
        return F(a), F(
            (a - b + 2) * (2 * n - a + 3) * (2 * n - a - b + 2) * (n - a),
            (a + 2) * (a - b + 1) * (2 * n - a - b + 3) * (n - a + 1),
        )
    if nu == -b:
        return F(2 * n - b + 3), F(
            b * (a - b + 2) * (2 * n - a - b + 4) * (n - b + 3),
            (a - b + 1) * (2 * n - b + 5) * (2 * n - a - b + 3) * (n - b + 2),
        )
    if nu == -a:
        return F(2 * n - a + 2), F(
            (a + 1) * (a - b) * (2 * n - a - b + 4) * (n - a + 2),
            (a - b + 1) * (2 * n - a + 4) * (2 * n - a - b + 3) * (n - a + 1),
        )
    raise ValueError(f"nu={nu} is not one of the five tabulated rows for a={a}, b={b}")


def verify_recursion(rho: SpnWeight, q_max: int = 6):
    """Check the translated-Casimir recursion and the binomial translation.

    Recursion: 2*c_hat_{2q+1} = -c_hat_{2q} - sum_{p=0}^{2q} (-1)^p c_hat_{2q-p} c_hat_p,
    for every odd index 2q+1 <= q_max.
    Translation: c_hat_q = sum_p C(q,p) (-n-1/2)^{q-p} c_p for q <= q_max.

    Returns a list of (kind, q) failures; empty means everything holds.
    """
    failures = []
    n = rho.n
    c = [casimir_eigenvalue(rho, q) for q in range(q_max + 1)]
    ch = [casimir_hat(rho, q) for q in range(q_max + 1)]
    for q in range(0, (q_max - 1) // 2 + 1):
        lhs = 2 * ch[2 * q + 1]
        rhs = -ch[2 * q] - sum((-1) ** p * ch[2 * q - p] * ch[p] for p in range(2 * q + 1))
        if lhs != rhs:
            failures.append(("recursion", 2 * q + 1))
    m = -(n + Fraction(1, 2))
    for q in range(q_max + 1):
        translated = sum(comb(q, p) * m ** (q - p) * c[p] for p in range(q + 1))
        if translated != ch[q]:
            failures.append(("binomial", q))
    return failures


@dataclass(frozen=True)
class CasimirReport:
    """Casimir eigenvalues c_q, c_hat_q for one module, q = 0..q_max."""

    rho: SpnWeight
    values: tuple  # of (q, c_q, c_hat_q)

    @property
    def n(self) -> int:
        return self.rho.n

    def to_json_dict(self):
        return {
            "n": self.n,
            "rho": str(self.rho),
            "values": [
                {"q": q, "c": format_rational(c), "c_hat": format_rational(ch)}
                for q, c, ch in self.values
            ],
        }

    def to_markdown(self) -> str:
        lines = [
            f"Casimir eigenvalues on V_({self.rho}), n={self.n}",
            "",
            "| q | c_q | c_hat_q |",
            "|---|-----|---------|",
        ]
        for q, c, ch in self.values:
            lines.append(f"| {q} | {_md_frac(c)} | {_md_frac(ch)} |")
        return "\n".join(lines)


def _md_frac(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def casimir_report(rho: SpnWeight, q_max: int = 4) -> CasimirReport:
    if not 0 <= q_max <= DEFAULT_Q_CAP:
        raise ValueError(f"q_max must lie in 0..{DEFAULT_Q_CAP}, got {q_max}")
    values = tuple(
        (q, casimir_eigenvalue(rho, q), casimir_hat(rho, q)) for q in range(q_max + 1)
    )
    return CasimirReport(rho, values)


@dataclass(frozen=True)
class GradientTarget:
    """One summand (N, nu) of V_{k,rho} (x) (H (x) E) with its scalar data.

    reldim is the nu-level relative dimension: positive exactly when
    rho + mu_nu is dominant, regardless of whether k + N >= 0.
    """

    N: int
    nu: int
    target_k: int
    target_rho: SpnWeight
    valid: bool
    w: Fraction
    w_hat: Fraction
    W: Fraction
    reldim: Fraction

    @property
    def key(self) -> str:
        return f"{self.N:+d},{self.nu:+d}"


@dataclass(frozen=True)
class DecompositionTable:
    """All (N, nu) gradient targets on a bundle, valid ones flagged."""

    bundle: BundleLabel
    targets: tuple

    @property
    def valid_targets(self) -> tuple:
        return tuple(t for t in self.targets if t.valid)

    @property
    def summand_count(self) -> int:
        return len(self.valid_targets)

    def to_json_dict(self):
        return {
            "n": self.bundle.n,
            "k": self.bundle.k,
            "rho": str(self.bundle.rho),
            "parity_warning": self.bundle.parity_warning,
            "summand_count": self.summand_count,
            "targets": [
                {
                    "N": t.N,
                    "nu": t.nu,
                    "k": t.target_k,
                    "rho": str(t.target_rho),
                    "valid": t.valid,
                    "w": format_rational(t.w),
                    "w_hat": format_rational(t.w_hat),
                    "W": format_rational(t.W),
                    "reldim": format_rational(t.reldim),
                }
                for t in self.targets
            ],
        }

    def to_markdown(self) -> str:
        b = self.bundle
        lines = [
            f"Gradient targets on {b} (valid summands: {self.summand_count})",
        ]
        if b.parity_warning:
            lines.append(
                "warning: k + sum(rho) is odd; label does not factor through Sp(1)Sp(n)"
            )
        lines += [
            "",
            "| N | nu | target (k, rho) | valid | w | w_hat | W | reldim |",
            "|---|----|-----------------|-------|---|-------|---|--------|",
        ]
        for t in self.targets:
            lines.append(
                f"| {t.N:+d} | {t.nu:+d} | ({t.target_k}, ({t.target_rho})) | "
                f"{'yes' if t.valid else 'no'} | {_md_frac(t.w)} | {_md_frac(t.w_hat)} | "
                f"{_md_frac(t.W)} | {_md_frac(t.reldim)} |"
            )
        return "\n".join(lines)


def decompose_bundle(bundle: BundleLabel) -> DecompositionTable:
    """Enumerate all 4n candidates (N, nu); valid means k+N >= 0 and
    rho + mu_nu dominant.  Ordering is canonical: N = +1 then -1, shift
    indices 1..n, -1..-n within each.
    """
    rho, k = bundle.rho, bundle.k
    targets = []
    for N in (1, -1):
        for nu in nu_indices(rho.n):
            shifted = mu_shift(rho, nu)
            valid = (k + N >= 0) and shifted.is_dominant
            targets.append(
                GradientTarget(
                    N=N,
                    nu=nu,
                    target_k=k + N,
                    target_rho=shifted,
                    valid=valid,
                    w=conformal_weight(rho, nu),
                    w_hat=conformal_weight_hat(rho, nu),
                    W=sp1_conformal_weight(k, N),
                    reldim=relative_dimension_weyl(rho, nu),
                )
            )
    return DecompositionTable(bundle, tuple(targets))


def lambda_ab_bundle(k: int, a: int, b: int, n: int) -> BundleLabel:
    """Bundle label S^k(H) (x) primitive-form module (2_b, 1_{a-b})."""
    return BundleLabel(k, lambda_ab_weight(a, b, n))
