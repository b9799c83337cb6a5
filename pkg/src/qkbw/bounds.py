"""Eigenvalue lower bounds via exact LP over the pure-kappa identity span.

Writing a second-order operator as

    sum c_t B_t + c * kappa,        c_t >= 0,

proves the eigenvalue lower bound c * kappa, because each gradient square
B_t is a nonnegative operator on a compact manifold.  Subtracting rational
multiples of the pure-kappa identities from the operator's B-expansion
trades B-coefficients for kappa; the optimizer maximizes the resulting
bound (sign(kappa) * c) by exact simplex and returns the full certificate
so the rewriting is machine-checkable.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .casimir import decompose_bundle
from .identities import (
    InconsistencyError,
    OperatorSpec,
    operator_coeffs,
    pure_kappa_identities,
)
from .rationals import format_rational
from .simplex import LPInfeasibleError, LPUnboundedError, simplex_maximize, solve_linear_system
from .weights import BundleLabel, SpnWeight

__all__ = [
    "ParameterRangeError",
    "BoundCertificate",
    "lp_max_bound",
    "bound_for",
    "closed_form_bound",
    "connection_laplacian_bound",
    "dirac_bound",
    "hpn_first_eigenvalue",
    "harmonic_classification",
    "KernelAnalysis",
    "kernel_analysis",
    "twistor_kernel_analysis",
    "TWISTOR_KERNEL",
]


class ParameterRangeError(ValueError):
    """Arguments left the parameter range the closed form is stated for."""


def _normalize_sign(kappa_sign) -> int:
    if kappa_sign in (1, "+", "positive"):
        return 1
    if kappa_sign in (-1, "-", "negative"):
        return -1
    raise ValueError(f"kappa_sign must be '+' or '-', got {kappa_sign!r}")


@dataclass(frozen=True)
class BoundCertificate:
    """Multipliers and nonnegative residuals witnessing a bound c * kappa."""

    bundle: BundleLabel
    operator: str
    kappa_sign: int
    multipliers: tuple  # of (identity_id, Fraction)
    residuals: tuple  # of ((N, nu), Fraction)
    bound: Fraction
    matched_closed_form: str = None

    def verify(self, operator: OperatorSpec, identities) -> None:
        """Re-check the reconstruction identity and nonnegativity exactly."""
        ids = dict(self.multipliers)
        res = dict(self.residuals)
        for key, value in res.items():
            if value < 0:
                raise InconsistencyError(f"negative residual at {key}: {value}")
        by_id = dict(zip(_identity_ids(identities), identities))
        for key, op_coeff in operator.coeffs:
            combined = res.get(key, Fraction(0)) + sum(
                ids[i] * by_id[i].coeff_map().get(key, Fraction(0)) for i in ids
            )
            if combined != op_coeff:
                raise InconsistencyError(f"reconstruction fails at {key}")
        bound = operator.constant_kappa + sum(
            ids[i] * by_id[i].kappa_coeff for i in ids
        )
        if bound != self.bound:
            raise InconsistencyError("bound does not match multiplier combination")

    def to_json_dict(self):
        return {
            "n": self.bundle.n,
            "k": self.bundle.k,
            "rho": str(self.bundle.rho),
            "operator": self.operator,
            "kappa_sign": "+" if self.kappa_sign > 0 else "-",
            "bound": format_rational(self.bound),
            "multipliers": {i: format_rational(v) for i, v in self.multipliers},
            "residuals": {
                f"{N:+d},{nu:+d}": format_rational(v) for (N, nu), v in self.residuals
            },
            "matched_closed_form": self.matched_closed_form,
        }

    def to_markdown(self) -> str:
        sign = "+" if self.kappa_sign > 0 else "-"
        lines = [
            f"Lower bound on {self.operator} over {self.bundle} (kappa {sign})",
            "",
            f"bound: ({_md(self.bound)}) * kappa",
            "",
            "| identity | multiplier |",
            "|----------|-----------|",
        ]
        for ident, v in self.multipliers:
            lines.append(f"| {ident} | {_md(v)} |")
        lines += ["", "| target | residual |", "|--------|----------|"]
        for (N, nu), v in self.residuals:
            lines.append(f"| B({N:+d},{nu:+d}) | {_md(v)} |")
        if self.matched_closed_form:
            lines += ["", f"matches closed form: {self.matched_closed_form}"]
        return "\n".join(lines)


def _md(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _identity_ids(identities):
    ids = []
    seen = {}
    for ident in identities:
        tag = ident.provenance
        count = seen.get(tag, 0)
        seen[tag] = count + 1
        ids.append(tag if count == 0 else f"{tag}#{count}")
    return ids


def lp_max_bound(operator: OperatorSpec, identities, kappa_sign) -> BoundCertificate:
    """Best certificate bound over the span of the given pure-kappa identities.

    Maximizes sign(kappa) * c subject to the residual coefficients staying
    nonnegative.  Deterministic: exact simplex with Bland's rule over the
    canonically ordered variables, followed by an L1-minimal cleanup of the
    multipliers at the fixed optimum (dependent identities would otherwise
    leave free directions).
    """
    sign = _normalize_sign(kappa_sign)
    for ident in identities:
        if ident.bundle != operator.bundle:
            raise ValueError("identities and operator must live on one bundle")
        if not ident.is_pure_kappa:
            raise ValueError(f"identity {ident.provenance} is not pure kappa")
    target_keys = [key for key, _ in operator.coeffs]
    op_vec = [c for _, c in operator.coeffs]
    m = len(identities)
    t = len(target_keys)
    rows = [[ident.coeff_map().get(key, Fraction(0)) for ident in identities] for key in target_keys]
    kappas = [ident.kappa_coeff for ident in identities]

    # Variables: lambda+ (m), lambda- (m), residuals (t).
    def run(objective, extra_row=None, extra_rhs=None):
        constraints = []
        rhs = []
        for i in range(t):
            constraints.append(
                rows[i] + [-v for v in rows[i]] + [Fraction(int(i == j)) for j in range(t)]
            )
            rhs.append(op_vec[i])
        if extra_row is not None:
            constraints.append(extra_row)
            rhs.append(extra_rhs)
        try:
            return simplex_maximize(objective, constraints, rhs)
        except LPUnboundedError as exc:
            raise InconsistencyError(
                "unbounded bound optimum; identity generation is inconsistent"
            ) from exc
        except LPInfeasibleError as exc:
            raise InconsistencyError(
                f"no nonnegative rewriting of {operator.name} exists over this identity span"
            ) from exc

    objective = (
        [sign * kp for kp in kappas] + [-sign * kp for kp in kappas] + [Fraction(0)] * t
    )
    value, _ = run(objective)
    # Cleanup pass: among optimal multipliers pick the L1-smallest, again by
    # deterministic Bland pivoting.
    l1_objective = [Fraction(-1)] * (2 * m) + [Fraction(0)] * t
    _, x = run(l1_objective, extra_row=objective, extra_rhs=value)
    lambdas = [x[j] - x[m + j] for j in range(m)]
    residuals = [x[2 * m + i] for i in range(t)]

    bound = operator.constant_kappa + sum(l * kp for l, kp in zip(lambdas, kappas))
    cert = BoundCertificate(
        bundle=operator.bundle,
        operator=operator.name,
        kappa_sign=sign,
        multipliers=tuple(zip(_identity_ids(identities), lambdas)),
        residuals=tuple(zip(target_keys, residuals)),
        bound=bound,
    )
    cert.verify(operator, identities)
    return cert


def bound_for(
    operator_name: str,
    bundle: BundleLabel,
    kappa_sign,
    hpn: bool = False,
) -> BoundCertificate:
    """Convenience wrapper: rule-driven identity set, then lp_max_bound."""
    operator = operator_coeffs(operator_name, bundle)
    identities = pure_kappa_identities(bundle, hpn=hpn)
    return lp_max_bound(operator, identities, kappa_sign)


def closed_form_bound(k: int, a: int, b: int, n: int, kappa_sign) -> Fraction:
    """Closed-form Laplace bound coefficient on S^k(H) (x) (2_b,1_{a-b}).

    Positive scalar curvature:
        k = 0:   (a-b)(2n-a-b+4) / (8n(n+2))
        k != 0:  (a-b+k)(2n-a-b+k+2) / (8n(n+2))
    Negative scalar curvature:
        a = b = 0:  -(k+2)(2n-k) / (8n(n+2))  for k >= 1, and 0 for k = 0
        a = b > 0:  -k(2n-2a-k+4)/(8n(n+2))      for k <= (2n-2a)/3
                    -(k+2)(2n-2a-k)/(8n(n+2))    above
        a > b >= 0: -(a-b+k)(2n-a-b-k+2)/(8n(n+2))   for k <= n-a
                    -(a-b+k+2)(2n-a-b-k)/(8n(n+2))   above

    Branch boundaries are inclusive on the left as stated; the cubic split
    point is compared over the rationals when (2n-2a)/3 is not an integer.
    The trivial bundle (k = a = b = 0) carries harmonic constants, so its
    bound is 0 for both signs.
    """
    sign = _normalize_sign(kappa_sign)
    if not 0 <= b <= a <= n:
        raise ParameterRangeError(f"need 0 <= b <= a <= n, got a={a}, b={b}, n={n}")
    if not 0 <= k <= 2 * n - a - b:
        raise ParameterRangeError(f"need 0 <= k <= 2n-a-b, got k={k}")
    denom = 8 * n * (n + 2)
    if sign > 0:
        if k == 0:
            return Fraction((a - b) * (2 * n - a - b + 4), denom)
        return Fraction((a - b + k) * (2 * n - a - b + k + 2), denom)
    if a == b == 0:
        if k == 0:
            return Fraction(0)
        return Fraction(-(k + 2) * (2 * n - k), denom)
    if a == b:
        if Fraction(k) <= Fraction(2 * n - 2 * a, 3):
            return Fraction(-k * (2 * n - 2 * a - k + 4), denom)
        return Fraction(-(k + 2) * (2 * n - 2 * a - k), denom)
    if k <= n - a:
        return Fraction(-(a - b + k) * (2 * n - a - b - k + 2), denom)
    return Fraction(-(a - b + k + 2) * (2 * n - a - b - k), denom)


def connection_laplacian_bound(k: int, a: int, n: int, kappa_sign) -> Fraction:
    """Closed-form bound coefficient for the connection Laplacian on
    S^k(H) (x) (1_a).

    Positive scalar curvature: a/(4n(n+2)) for k = 0, k/(4(n+2)) otherwise.
    Negative: -(2an+kn-a^2-ka+2a+2k)/(4n(n+2)) for k <= n-a, and
    -(-ka-a^2+2n+kn+2an)/(4n(n+2)) above.
    """
    sign = _normalize_sign(kappa_sign)
    if not 0 <= a <= n:
        raise ParameterRangeError(f"need 0 <= a <= n, got a={a}, n={n}")
    if not 0 <= k <= 2 * n - a:
        raise ParameterRangeError(f"need 0 <= k <= 2n-a, got k={k}")
    if sign > 0:
        if k == 0:
            return Fraction(a, 4 * n * (n + 2))
        return Fraction(k, 4 * (n + 2))
    denom = 4 * n * (n + 2)
    if k <= n - a:
        return Fraction(-(2 * a * n + k * n - a**2 - k * a + 2 * a + 2 * k), denom)
    return Fraction(-(-k * a - a**2 + 2 * n + k * n + 2 * a * n), denom)


def dirac_bound(k: int, n: int) -> Fraction:
    """Bound coefficient for the squared Dirac operator on the spinor summand
    S^k(H) (x) (1_{n-k}), positive scalar curvature.

    Equals the connection-Laplacian bound plus 1/4.
    """
    if not 0 <= k <= n:
        raise ParameterRangeError(f"need 0 <= k <= n, got k={k}")
    if k == 0:
        return Fraction(n + 3, 4 * (n + 2))
    return Fraction(n + k + 2, 4 * (n + 2))


def hpn_first_eigenvalue(k: int, a: int, b: int, n: int) -> Fraction:
    """First Laplace eigenvalue on the quaternionic projective space (with
    the scalar curvature normalized to 2n), stated for k >= 2:

        ( k(k+2n+2) + a(2n-a+2) + b(2n-b+4) ) / (4(n+2)).
    """
    if k < 2:
        raise ParameterRangeError(f"first-eigenvalue formula is stated for k >= 2, got k={k}")
    if not 0 <= b <= a <= n:
        raise ParameterRangeError(f"need 0 <= b <= a <= n, got a={a}, b={b}, n={n}")
    return Fraction(
        k * (k + 2 * n + 2) + a * (2 * n - a + 2) + b * (2 * n - b + 4), 4 * (n + 2)
    )


def harmonic_classification(n: int, kappa_sign):
    """All (k, a, b) whose Laplace bound coefficient is exactly zero.

    Positive scalar curvature: (0, a, a) only.  Negative: those plus the
    top-symmetric-power labels (2n-a-b, a, b).
    """
    sign = _normalize_sign(kappa_sign)
    if n < 2:
        raise ParameterRangeError(f"rank must be at least 2, got n={n}")
    out = {(0, a, a) for a in range(n + 1)}
    if sign < 0:
        for a in range(n + 1):
            for b in range(a + 1):
                out.add((2 * n - a - b, a, b))
    return sorted(out)


# Kernel set of the twistor-cohomology system on S^{k+1}(H) (x) E.
TWISTOR_KERNEL = ((1, 2), (1, -1), (-1, -1))


@dataclass(frozen=True)
class KernelAnalysis:
    """Solved norm ratios on the complement of an assumed kernel.

    solved_ratios maps each remaining target to the coefficient c with
    ||D phi||^2 = c * kappa * ||phi||^2 for sections killed by the kernel
    set.  A ratio that forces a squared norm negative proves the section
    space vanishes for that sign of the scalar curvature.
    """

    bundle: BundleLabel
    kernel_set: tuple
    solved_ratios: tuple  # of ((N, nu), Fraction); empty when undetermined
    rank_deficit: int
    verdicts: tuple  # of (sign, verdict, witness-or-None)

    @property
    def determined(self) -> bool:
        return self.rank_deficit == 0

    def nabla_ratio(self) -> Fraction:
        """Expectation of the connection Laplacian implied by the base row."""
        return sum(v for _, v in self.solved_ratios)

    def to_json_dict(self):
        return {
            "n": self.bundle.n,
            "k": self.bundle.k,
            "rho": str(self.bundle.rho),
            "kernel": [f"{N:+d},{nu:+d}" for N, nu in self.kernel_set],
            "determined": self.determined,
            "rank_deficit": self.rank_deficit,
            "ratios": {
                f"{N:+d},{nu:+d}": format_rational(v)
                for (N, nu), v in self.solved_ratios
            },
            "nabla_ratio": format_rational(self.nabla_ratio())
            if self.determined
            else None,
            "verdicts": {
                ("+" if s > 0 else "-"): {
                    "verdict": verdict,
                    "witness": f"{w[0]:+d},{w[1]:+d}" if w else None,
                }
                for s, verdict, w in self.verdicts
            },
        }

    def to_markdown(self) -> str:
        lines = [f"Kernel analysis on {self.bundle}"]
        lines.append(
            "assumed kernel: "
            + ", ".join(f"D({N:+d},{nu:+d})" for N, nu in self.kernel_set)
        )
        if not self.determined:
            lines.append(f"system undetermined (rank deficit {self.rank_deficit})")
            return "\n".join(lines)
        lines += ["", "| target | ||D phi||^2 / ||phi||^2 |", "|--------|------------|"]
        for (N, nu), v in self.solved_ratios:
            lines.append(f"| D({N:+d},{nu:+d}) | ({_md(v)}) * kappa |")
        for s, verdict, w in self.verdicts:
            sign = "positive" if s > 0 else "negative"
            if w:
                lines.append(
                    f"kappa {sign}: {verdict} (witness D({w[0]:+d},{w[1]:+d}))"
                )
            else:
                lines.append(f"kappa {sign}: {verdict}")
        return "\n".join(lines)


def kernel_analysis(bundle: BundleLabel, kernel_set, hpn: bool = False) -> KernelAnalysis:
    """Solve the pure-kappa identities on the complement of a kernel set.

    The system must be exactly determined (unique solution); a rank-deficient
    system yields ``undetermined`` verdicts with the deficit reported, and an
    inconsistent one raises (it would signal an identity-generation bug).
    """
    table = decompose_bundle(bundle)
    valid_keys = [(t.N, t.nu) for t in table.valid_targets]
    kernel = tuple(kernel_set)
    for key in kernel:
        if key not in valid_keys:
            raise ValueError(f"kernel target {key} is not a valid gradient target")
    unknown = [key for key in valid_keys if key not in kernel]
    identities = pure_kappa_identities(bundle, hpn=hpn)
    matrix = [
        [ident.coeff_map().get(key, Fraction(0)) for key in unknown]
        for ident in identities
    ]
    rhs = [ident.kappa_coeff for ident in identities]
    try:
        solution, rank = solve_linear_system(matrix, rhs)
    except ArithmeticError as exc:
        raise InconsistencyError("kernel system is inconsistent") from exc
    if solution is None:
        deficit = len(unknown) - rank
        verdicts = ((1, "undetermined", None), (-1, "undetermined", None))
        return KernelAnalysis(bundle, kernel, (), deficit, verdicts)
    ratios = tuple(zip(unknown, solution))
    verdicts = []
    for s in (1, -1):
        witness = next((key for key, v in ratios if s * v < 0), None)
        verdicts.append((s, "vanishes" if witness else "undetermined", witness))
    return KernelAnalysis(bundle, kernel, ratios, 0, tuple(verdicts))


def twistor_kernel_analysis(k: int, n: int) -> KernelAnalysis:
    """The twistor-cohomology vanishing system: bundle S^{k+1}(H) (x) E with
    the three-gradient kernel set, for k >= 0."""
    if k < 0:
        raise ParameterRangeError(f"need k >= 0, got k={k}")
    rho = SpnWeight((1,) + (0,) * (n - 1))
    bundle = BundleLabel(k + 1, rho)
    return kernel_analysis(bundle, TWISTOR_KERNEL)
