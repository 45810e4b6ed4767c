"""Exact structured spectra of complete multipartite graphs.

For K_{n1,...,nr} the adjacency spectrum splits into three groups:

  * the roots of the secular equation  sum_i n_i / (lam + n_i) = 1,
    one positive and one in each open interval between consecutive
    distinct poles -p_k;
  * the poles -p_k themselves, with multiplicity t_k - 1 when the distinct
    size p_k occurs t_k times;
  * zero, with multiplicity n - r, spanned by within-part difference
    vectors.

Repeated part sizes are collapsed to distinct sizes before root finding so
every pole of the rational function is simple and every bracket is clean;
the collapsed poles re-enter as explicit eigenvalues.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt, sqrt

from .graphs import PartSizes
from .spectra import Spectrum

ROOT_ATOL = 1e-12
_WIDTH_FACTOR = 1e-13
_POLE_GUARD = 1e-9


def _distinct_terms(parts: PartSizes) -> list[tuple[int, int]]:
    return parts.distinct()


def multipartite_edge_count(parts: PartSizes) -> int:
    n = parts.n
    return (n * n - sum(s * s for s in parts.sizes)) // 2


def secular_value(parts: PartSizes, lam: float) -> float:
    """Evaluate sum_i n_i / (lam + n_i); lam must not be a pole."""
    total = 0.0
    for p, t in _distinct_terms(parts):
        d = lam + p
        if d == 0.0:
            raise ValueError(f"lambda = {lam} is a pole")
        total += t * p / d
    return total


def _secular_derivative(parts: PartSizes, lam: float) -> float:
    return -sum(t * p / (lam + p) ** 2 for p, t in _distinct_terms(parts))


def _bisect_root(parts: PartSizes, lo: float, hi: float) -> float:
    """Root of f(lam) = 1 in (lo, hi); f is strictly decreasing there."""
    flo = secular_value(parts, lo) - 1.0
    fhi = secular_value(parts, hi) - 1.0
    if flo <= 0.0 or fhi >= 0.0:
        raise ValueError(f"bracket ({lo}, {hi}) does not enclose a root")
    width_tol = _WIDTH_FACTOR * max(1.0, abs(lo), abs(hi))
    while hi - lo > width_tol:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if secular_value(parts, mid) - 1.0 > 0.0:
            lo = mid
        else:
            hi = mid
    root = 0.5 * (lo + hi)
    # One Newton polish; the bisection endpoint is already inside the basin.
    deriv = _secular_derivative(parts, root)
    polished = root - (secular_value(parts, root) - 1.0) / deriv
    if lo < polished < hi or abs(polished - root) < width_tol:
        root = polished
    return root


def secular_roots(parts: PartSizes) -> tuple[float, ...]:
    """All s roots of the secular equation, in descending order.

    The first is the unique positive root (bracketed by (0, n], since the
    value at 0 is r > 1 and at n is below 1); the rest lie strictly between
    consecutive distinct poles.
    """
    dist = _distinct_terms(parts)
    roots = [_bisect_root(parts, 0.0, float(parts.n))]
    for k in range(len(dist) - 2, -1, -1):
        p_lo, p_hi = dist[k][0], dist[k + 1][0]  # p_lo > p_hi
        eps_lo = max(1e-12, 1e-12 * p_lo)
        eps_hi = max(1e-12, 1e-12 * p_hi)
        roots.append(_bisect_root(parts, -p_lo + eps_lo, -p_hi - eps_hi))
    return tuple(roots)


@dataclass(frozen=True)
class SecularSpectrum:
    """Structured exact spectrum of a complete multipartite graph."""

    parts: PartSizes
    distinct: tuple[tuple[int, int], ...]
    secular_roots: tuple[float, ...]
    pole_eigenvalues: tuple[tuple[float, int], ...]
    zero_multiplicity: int

    @property
    def lambda1(self) -> float:
        return self.secular_roots[0]

    @property
    def lambda2(self) -> float:
        return 0.0 if self.zero_multiplicity >= 1 else -1.0

    def flatten(self) -> tuple[float, ...]:
        values = list(self.secular_roots)
        values.extend([0.0] * self.zero_multiplicity)
        for val, mult in self.pole_eigenvalues:
            values.extend([val] * mult)
        values.sort(reverse=True)
        return tuple(values)


def multipartite_spectrum(parts: PartSizes) -> SecularSpectrum:
    dist = tuple(_distinct_terms(parts))
    poles = tuple(
        (float(-p), t - 1) for p, t in dist if t >= 2
    )
    return SecularSpectrum(
        parts=parts,
        distinct=dist,
        secular_roots=secular_roots(parts),
        pole_eigenvalues=poles,
        zero_multiplicity=parts.n - parts.r,
    )


def lambda2_multipartite(parts: PartSizes) -> float:
    """Second largest eigenvalue: 0 whenever n > r, else -1 (complete graph)."""
    return 0.0 if parts.n > parts.r else -1.0


@dataclass(frozen=True)
class ZeroBasisVector:
    """A +1/-1 difference vector inside one part, annihilated by the adjacency."""

    part_index: int
    member_index: int
    coefficients: tuple[int, ...]

    def __post_init__(self) -> None:
        if sum(self.coefficients) != 0:
            raise ValueError("coefficients must sum to zero")


def zero_eigenbasis(parts: PartSizes) -> list[ZeroBasisVector]:
    """The n - r within-part difference vectors spanning the zero eigenspace.

    Vector (i, k) has +1 at the k-th vertex of part i and -1 at the last
    vertex of that part; vectors from distinct parts have disjoint supports.
    """
    n = parts.n
    offsets = parts.offsets()
    out = []
    for i, (size, start) in enumerate(zip(parts.sizes, offsets)):
        last = start + size - 1
        for k in range(size - 1):
            coeffs = [0] * n
            coeffs[start + k] = 1
            coeffs[last] = -1
            out.append(ZeroBasisVector(i, k, tuple(coeffs)))
    return out


def quotient_eigenvector(parts: PartSizes, root: float) -> tuple[float, ...]:
    """Part-constant coefficients c_i = 1/(root + n_i) of a secular root.

    Normalized so that sum_i n_i c_i = 1; lifting c to the full vertex set
    (value c_i on every vertex of part i) gives an eigenvector for `root`.
    """
    for p, _ in _distinct_terms(parts):
        if abs(root + p) <= _POLE_GUARD:
            raise ValueError(f"root {root} is within {_POLE_GUARD} of pole {-p}")
    return tuple(1.0 / (root + s) for s in parts.sizes)


def closed_forms(parts: PartSizes) -> Spectrum | None:
    """Exact spectrum for the closed-form families, without root finding.

    Covers complete bipartite graphs (+-sqrt(ab) and zeros), complete graphs
    (r-1 and -1 repeated), and balanced r-partite graphs ((r-1)p, zeros, -p
    repeated); returns None for anything else.
    """
    sizes = parts.sizes
    n, r = parts.n, parts.r
    m = multipartite_edge_count(parts)
    if r == 2:
        a, b = sizes
        lam = float(isqrt(a * b)) if isqrt(a * b) ** 2 == a * b else sqrt(a * b)
        values = (lam,) + (0.0,) * (n - 2) + (-lam,)
        return Spectrum(values, m)
    if all(s == sizes[0] for s in sizes):
        p = sizes[0]
        values = (float((r - 1) * p),) + (0.0,) * (n - r) + (float(-p),) * (r - 1)
        return Spectrum(values, m)
    return None
