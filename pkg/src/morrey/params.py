from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational, Real

import gmpy2

from .errors import MorreyError


@dataclass(frozen=True)
class MorreyParams:
    """Exponents ``1 <= p <= q < inf`` and lattice/space dimension ``d``."""

    p: Real
    q: Real
    d: int = 1

    def __post_init__(self):
        p, q = _tidy(self.p), _tidy(self.q)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)
        if not (1 <= p <= q):
            raise MorreyError(f"need 1 <= p <= q, got p={p}, q={q}")
        if q == float("inf"):
            raise MorreyError("q must be finite")
        if int(self.d) != self.d or self.d < 1:
            raise MorreyError(f"dimension must be a positive integer, got {self.d}")
        object.__setattr__(self, "d", int(self.d))

    @property
    def exponent(self) -> float:
        """``1/q - 1/p``; nonpositive, zero exactly when ``p == q``."""
        if self.p == self.q:
            return 0.0
        return 1.0 / self.q - 1.0 / self.p

    @property
    def integer_exponents(self) -> bool:
        return isinstance(self.p, int) and isinstance(self.q, int)

    def as_dict(self) -> dict:
        return {"p": self.p, "q": self.q, "d": self.d}


def _tidy(x):
    if isinstance(x, bool):
        raise MorreyError("exponent must be numeric")
    if isinstance(x, int):
        return x
    if isinstance(x, Rational):
        return int(x) if x.denominator == 1 else Fraction(x)
    x = float(x)
    return int(x) if x.is_integer() else x


def is_exact_scalar(v) -> bool:
    return isinstance(v, Rational)


def exact_root(x: Fraction, k: int) -> Fraction | None:
    """Return the nonnegative rational ``k``-th root of ``x`` if it exists."""
    x = Fraction(x)
    if x < 0:
        return None
    num, ok_n = gmpy2.iroot(x.numerator, k)
    if not ok_n:
        return None
    den, ok_d = gmpy2.iroot(x.denominator, k)
    if not ok_d:
        return None
    return Fraction(int(num), int(den))


def format_scalar(v):
    """JSON-friendly scalar: ints stay ints, non-integral rationals become "p/q"."""
    if isinstance(v, bool):
        return v
    if isinstance(v, int):
        return v
    if isinstance(v, Rational):
        v = Fraction(v)
        return v.numerator if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    return float(v)


def parse_scalar(v, *, exact: bool = False):
    if isinstance(v, bool):
        raise MorreyError(f"not a number: {v!r}")
    if isinstance(v, int):
        return v
    if isinstance(v, float):
        return Fraction(str(v)) if exact else v
    if isinstance(v, str):
        try:
            f = Fraction(v.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise MorreyError(f"bad rational literal {v!r}") from exc
        return f if (exact or f.denominator == 1 or "/" in v) else float(f)
    raise MorreyError(f"not a number: {v!r}")
