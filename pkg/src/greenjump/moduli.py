"""Boundary and tautological class bookkeeping on the moduli of pointed curves.

Classes are formal exact-rational combinations of symbols on a fixed ambient
(g, n): the kappa class, the psi classes, the boundary classes delta_0,
delta_0^P (|P| >= 2) and delta_h^P (1 <= h <= g-1, stored canonically under
delta_h^P = delta_{g-h}^{P^c}), and the two pairing symbols <R,R> and
<x_i,R> used before conversion to the kappa/psi basis.

Marks are the integers 1..n.  The closed-form boundary coefficients

    a(P, d)    = (m + sum_{i in P} d_i)^2
    a(P, h, d) = (-(2h-1)m + sum_{i in P} d_i)^2

agree with the Green's pairing of the corresponding weight divisors on the
two-vertex one-edge graph; that identity is enforced by the test suite
rather than assumed here.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from .blocks import canonical_pair
from .errors import ConstraintError
from .graphs import Divisor, MultiGraph

# Symbol encodings.  Tuples keep PicClass hashable and cheap to compare.
KAPPA1 = ("kappa1",)
DELTA_ZERO = ("delta0",)
PAIR_RR = ("pairRR",)


def psi(i: int) -> tuple:
    return ("psi", int(i))


def pair_xi_r(i: int) -> tuple:
    return ("pairXiR", int(i))


def delta_zero_p(marks: Iterable[int]) -> tuple:
    p = tuple(sorted(int(i) for i in marks))
    if len(p) < 2:
        raise ConstraintError("delta_0^P needs at least two marks")
    return ("delta0P", p)


def delta_h(g: int, n: int, h: int, marks: Iterable[int]) -> tuple:
    if not 1 <= h <= g - 1:
        raise ConstraintError(f"h must lie in [1, g-1], got {h}")
    p = tuple(int(i) for i in marks)
    return ("deltaH",) + canonical_pair_marks(g, n, h, p)


_SYMBOL_ORDER = {"kappa1": 0, "psi": 1, "pairRR": 2, "pairXiR": 3,
                 "delta0": 4, "delta0P": 5, "deltaH": 6}


def symbol_name(sym: tuple) -> str:
    """Stable JSON name: kappa1, psi_2, pair_RR, pair_x2_R, delta_0,
    delta_0_{1,2}, delta_1, delta_1_{2}."""
    kind = sym[0]
    if kind == "kappa1":
        return "kappa1"
    if kind == "psi":
        return f"psi_{sym[1]}"
    if kind == "pairRR":
        return "pair_RR"
    if kind == "pairXiR":
        return f"pair_x{sym[1]}_R"
    if kind == "delta0":
        return "delta_0"
    if kind == "delta0P":
        return "delta_0_{%s}" % ",".join(str(i) for i in sym[1])
    if kind == "deltaH":
        h, p = sym[1], sym[2]
        return f"delta_{h}" + ("_{%s}" % ",".join(str(i) for i in p) if p else "")
    raise ValueError(f"unknown symbol {sym!r}")


def _sort_key(sym: tuple):
    return (_SYMBOL_ORDER[sym[0]],) + sym[1:]


class PicClass:
    """Formal Q-combination of class symbols on a fixed ambient (g, n)."""

    __slots__ = ("g", "n", "_coeffs")

    def __init__(self, g: int, n: int, coeffs: Mapping[tuple, object] = ()):
        self.g = int(g)
        self.n = int(n)
        clean: dict[tuple, Fraction] = {}
        for sym, c in dict(coeffs).items():
            c = Fraction(c)
            if c == 0:
                continue
            self._check_symbol(sym)
            clean[sym] = c
        self._coeffs = clean

    def _check_symbol(self, sym: tuple) -> None:
        kind = sym[0]
        if kind in ("psi", "pairXiR") and not 1 <= sym[1] <= self.n:
            raise ConstraintError(f"mark index {sym[1]} outside 1..{self.n}")
        if kind == "delta0P":
            if len(sym[1]) < 2 or any(not 1 <= i <= self.n for i in sym[1]):
                raise ConstraintError(f"bad subset in {sym!r}")
        if kind == "deltaH":
            h, p = sym[1], sym[2]
            if not 1 <= h <= self.g - 1 or any(not 1 <= i <= self.n for i in p):
                raise ConstraintError(f"bad boundary symbol {sym!r}")
            if canonical_pair_marks(self.g, self.n, h, p) != (h, p):
                raise ConstraintError(f"non-canonical boundary symbol {sym!r}")

    def coeff(self, sym: tuple) -> Fraction:
        return self._coeffs.get(sym, Fraction(0))

    def items(self):
        return sorted(self._coeffs.items(), key=lambda kv: _sort_key(kv[0]))

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, PicClass)
            and (self.g, self.n) == (other.g, other.n)
            and self._coeffs == other._coeffs
        )

    def __add__(self, other: "PicClass") -> "PicClass":
        if (self.g, self.n) != (other.g, other.n):
            raise ConstraintError("ambient (g, n) mismatch")
        out = dict(self._coeffs)
        for sym, c in other._coeffs.items():
            out[sym] = out.get(sym, Fraction(0)) + c
        return PicClass(self.g, self.n, out)

    def __sub__(self, other: "PicClass") -> "PicClass":
        return self + other.scale(-1)

    def scale(self, c) -> "PicClass":
        c = Fraction(c)
        return PicClass(self.g, self.n, {s: c * v for s, v in self._coeffs.items()})

    def __repr__(self) -> str:
        body = " + ".join(f"{c}*{symbol_name(s)}" for s, c in self.items())
        return f"PicClass(g={self.g}, n={self.n}: {body or '0'})"

    def to_json(self) -> dict[str, str]:
        return {
            symbol_name(s): f"{c.numerator}/{c.denominator}" for s, c in self.items()
        }


def canonical_pair_marks(g: int, n: int, h: int, marks: Iterable[int]) -> tuple[int, tuple]:
    """Shared canon for (h, P) over the mark set 1..n."""
    return canonical_pair(g, h, tuple(marks), range(1, n + 1))


def _check_inputs(g: int, n: int, d: Sequence[int], m: int) -> tuple[int, ...]:
    d = tuple(int(x) for x in d)
    if g < 2 or n < 1:
        raise ConstraintError("need g >= 2 and n >= 1")
    if len(d) != n:
        raise ConstraintError(f"{n} weights expected, got {len(d)}")
    if sum(d) != (2 * g - 2) * int(m):
        raise ConstraintError(
            f"total weight {sum(d)} != (2g-2)*m = {(2 * g - 2) * int(m)}"
        )
    return d


def _sum_over(P: Iterable[int], d: Sequence[int]) -> int:
    total = 0
    for i in P:
        i = int(i)
        if not 1 <= i <= len(d):
            raise ConstraintError(f"mark index {i} outside 1..{len(d)}")
        total += d[i - 1]
    return total


def a_coeff_zero(P: Iterable[int], d: Sequence[int], m: int) -> int:
    """(m + sum_{i in P} d_i)^2 for |P| >= 2."""
    P = tuple(P)
    if len(set(P)) < 2:
        raise ConstraintError("a(P, d) needs |P| >= 2")
    return (int(m) + _sum_over(P, d)) ** 2


def a_coeff(g: int, h: int, P: Iterable[int], d: Sequence[int], m: int) -> int:
    """(-(2h-1)m + sum_{i in P} d_i)^2 for 1 <= h <= g-1."""
    if not 1 <= h <= g - 1:
        raise ConstraintError(f"h must lie in [1, g-1], got {h}")
    return (-(2 * h - 1) * int(m) + _sum_over(P, d)) ** 2


_ONE_EDGE = MultiGraph(("C1", "C2"), (("C1", "C2"),))


def one_edge_graph() -> MultiGraph:
    """The two-vertex, one-edge graph carrying the boundary weight divisors."""
    return _ONE_EDGE


def stratum_divisor_zero(g: int, P: Iterable[int], d: Sequence[int], m: int) -> Divisor:
    """Weight divisor of a genus-zero/genus-g one-node degeneration."""
    s = _sum_over(P, d)
    total = sum(int(x) for x in d)
    return Divisor({"C1": int(m) + s, "C2": -(2 * g - 1) * int(m) + total - s})


def stratum_divisor(g: int, h: int, P: Iterable[int], d: Sequence[int], m: int) -> Divisor:
    """Weight divisor of a genus-h/genus-(g-h) one-node degeneration."""
    s = _sum_over(P, d)
    total = sum(int(x) for x in d)
    return Divisor({
        "C1": -(2 * h - 1) * int(m) + s,
        "C2": -(2 * (g - h) - 1) * int(m) + total - s,
    })


def deligne_self_pairing_expansion(g: int, n: int, d: Sequence[int], m: int) -> PicClass:
    """<D,D> over the pairing symbols: -(d_i^2 + 2 m d_i) <x_i,R> + m^2 <R,R>."""
    d = _check_inputs(g, n, d, m)
    coeffs: dict[tuple, Fraction] = {PAIR_RR: Fraction(int(m) ** 2)}
    for i in range(1, n + 1):
        coeffs[pair_xi_r(i)] = Fraction(-(d[i - 1] ** 2 + 2 * int(m) * d[i - 1]))
    return PicClass(g, n, coeffs)


def _subsets(n: int, min_size: int = 0):
    pool = range(1, n + 1)
    for size in range(min_size, n + 1):
        yield from combinations(pool, size)


def _delta_h_total(g: int, n: int, d: Sequence[int], m: int) -> dict[tuple, Fraction]:
    """Half-weighted double sum over (h, P), aggregated on canonical symbols.

    Each unordered stratum appears twice with equal coefficients, so after
    halving it carries its full integer coefficient.
    """
    acc: dict[tuple, Fraction] = {}
    for h in range(1, g):
        for P in _subsets(n):
            sym = ("deltaH",) + canonical_pair_marks(g, n, h, P)
            acc[sym] = acc.get(sym, Fraction(0)) + a_coeff(g, h, P, d, m)
    return {sym: -val / 2 for sym, val in acc.items()}


def lear_class_deligne_basis(g: int, n: int, d: Sequence[int], m: int) -> PicClass:
    """Extension class over the pairing symbols and boundary classes.

    -<D,D> minus the boundary corrections; the coefficient of delta_0 is
    zero and is therefore never stored.
    """
    d = _check_inputs(g, n, d, m)
    out = deligne_self_pairing_expansion(g, n, d, m).scale(-1)
    coeffs: dict[tuple, Fraction] = {}
    for P in _subsets(n, min_size=2):
        coeffs[delta_zero_p(P)] = Fraction(-a_coeff_zero(P, d, m))
    coeffs.update(_delta_h_total(g, n, d, m))
    return out + PicClass(g, n, coeffs)


def convert_to_kappa_psi(cls: PicClass) -> PicClass:
    """Rewrite the pairing symbols via

        <R,R>   = kappa1 - sum_{|P| >= 2} delta_0^P
        <x_i,R> = psi_i  + sum_{P  containing i, |P| >= 2} delta_0^P
    """
    g, n = cls.g, cls.n
    coeffs: dict[tuple, Fraction] = {}

    def add(sym: tuple, c: Fraction) -> None:
        coeffs[sym] = coeffs.get(sym, Fraction(0)) + c

    for sym, c in cls.items():
        kind = sym[0]
        if kind == "pairRR":
            add(KAPPA1, c)
            for P in _subsets(n, min_size=2):
                add(delta_zero_p(P), -c)
        elif kind == "pairXiR":
            i = sym[1]
            add(psi(i), c)
            for P in _subsets(n, min_size=2):
                if i in P:
                    add(delta_zero_p(P), c)
        else:
            add(sym, c)
    return PicClass(g, n, coeffs)


def lear_class_kappa_psi(g: int, n: int, d: Sequence[int], m: int) -> PicClass:
    """Extension class in the kappa/psi basis, computed directly.

    -m^2 kappa1 + sum (d_i^2 + 2 m d_i) psi_i
    - sum_P 2 (sum_{j<k in P} d_j d_k) delta_0^P
    - the half-weighted (h, P) sum on canonical symbols.
    """
    d = _check_inputs(g, n, d, m)
    m = int(m)
    coeffs: dict[tuple, Fraction] = {KAPPA1: Fraction(-m * m)}
    for i in range(1, n + 1):
        coeffs[psi(i)] = Fraction(d[i - 1] ** 2 + 2 * m * d[i - 1])
    for P in _subsets(n, min_size=2):
        cross = sum(d[j - 1] * d[k - 1] for j, k in combinations(P, 2))
        coeffs[delta_zero_p(P)] = Fraction(-2 * cross)
    for sym, val in _delta_h_total(g, n, d, m).items():
        coeffs[sym] = val
    return PicClass(g, n, coeffs)
