"""Signed-permutation Weyl groups, Kazhdan-Lusztig polynomials and transition matrices.

Elements of W(B_n) = W(C_n) and W(D_n) are stored as windows: ``window[i]``
is the signed image of ``i + 1``.  The group acts on coordinate vectors by
``(w y)_{|w(i)|} = sign(w(i)) * y_i``.  Positive roots are ``e_j - e_i``
(``i < j``), ``e_i + e_j`` and, outside type D, ``e_i``; generator 0 is the
reflection in ``e_1`` (type D: ``e_1 + e_2``) and generator ``i >= 1`` swaps
coordinates ``i`` and ``i + 1``.

Kazhdan-Lusztig polynomials are computed in the Hecke-module normalisation
``h_{x,w}(v) = v^{l(w)-l(x)} P_{x,w}(v^{-2})`` by an on-demand memoised
recursion that works equally for the regular module (``J`` empty) and the two
parabolic modules over minimal right-coset representatives ``W_J \\ W``:

* ``kind="sign"``   generators in J act by ``-v`` (Deodhar's ``u = -1``);
* ``kind="trivial"`` generators in J act by ``v^{-1}`` (Deodhar's ``u = q``).
"""

from __future__ import annotations

import json
import logging
import os
import threading
from collections.abc import Iterable, Iterator, Mapping, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import permutations, product
from pathlib import Path

from .errors import DomainError, NonIntegralError, SingularBlockError
from .rootdata import DominantTuple, RootSystemSpec, Weight, make_weight_g
from .partitions import Partition

log = logging.getLogger(__name__)

Window = tuple[int, ...]

TYPES = ("B", "C", "D")
CACHE_VERSION = 1
CACHE_ENV = "SUPERDUAL_CACHE_DIR"


# ----- Laurent polynomials -----

@dataclass(frozen=True)
class LaurentPoly:
    """Integer Laurent polynomial in one variable, stored as sorted (exponent, coeff)."""

    terms: tuple[tuple[int, int], ...] = ()

    @classmethod
    def make(cls, coeffs: Mapping[int, int] | Iterable[tuple[int, int]] = ()) -> LaurentPoly:
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        acc: dict[int, int] = {}
        for e, c in items:
            acc[e] = acc.get(e, 0) + c
        return cls(tuple(sorted((e, c) for e, c in acc.items() if c)))

    @classmethod
    def monomial(cls, exponent: int = 0, coeff: int = 1) -> LaurentPoly:
        return cls(((exponent, coeff),) if coeff else ())

    @classmethod
    def from_list(cls, coeffs: Sequence[int]) -> LaurentPoly:
        """Coefficients of q^0, q^1, ... ."""
        return cls.make(enumerate(coeffs))

    def as_dict(self) -> dict[int, int]:
        return dict(self.terms)

    def coeff(self, e: int) -> int:
        for k, c in self.terms:
            if k == e:
                return c
        return 0

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __add__(self, other: LaurentPoly) -> LaurentPoly:
        return LaurentPoly.make(self.terms + other.terms)

    def __neg__(self) -> LaurentPoly:
        return LaurentPoly(tuple((e, -c) for e, c in self.terms))

    def __sub__(self, other: LaurentPoly) -> LaurentPoly:
        return self + (-other)

    def __mul__(self, other: LaurentPoly | int) -> LaurentPoly:
        if isinstance(other, int):
            return LaurentPoly(tuple((e, c * other) for e, c in self.terms)) if other else LaurentPoly()
        return LaurentPoly.make((e1 + e2, c1 * c2) for e1, c1 in self.terms for e2, c2 in other.terms)

    __rmul__ = __mul__

    def shift(self, k: int) -> LaurentPoly:
        return LaurentPoly(tuple((e + k, c) for e, c in self.terms))

    def bar(self) -> LaurentPoly:
        return LaurentPoly(tuple(sorted((-e, c) for e, c in self.terms)))

    def evaluate(self, x: int = 1) -> int | Fraction:
        return sum(c * Fraction(x) ** e for e, c in self.terms) if self.terms else 0

    def at_one(self) -> int:
        return sum(c for _, c in self.terms)

    @property
    def degree(self) -> int | None:
        return self.terms[-1][0] if self.terms else None

    def coefficients(self) -> list[int]:
        """Dense list from q^0 upwards; requires no negative exponents."""
        if not self.terms:
            return []
        if self.terms[0][0] < 0:
            raise ValueError("polynomial has negative exponents")
        out = [0] * (self.terms[-1][0] + 1)
        for e, c in self.terms:
            out[e] = c
        return out

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.terms:
            mono = "" if e == 0 else "q" if e == 1 else f"q^{e}"
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append(f"-{mono}")
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


ONE = LaurentPoly.monomial(0)
ZERO = LaurentPoly()
V = LaurentPoly.monomial(1)
V_INV = LaurentPoly.monomial(-1)


# ----- signed permutations -----

def _check_type(tag: str) -> str:
    tag = tag.upper()
    if tag not in TYPES:
        raise DomainError("bad-type", f"Weyl group type must be one of {TYPES}, got {tag!r}")
    return tag


@dataclass(frozen=True, order=True)
class SignedPerm:
    """A signed permutation of 1..n tagged with its Weyl group type."""

    window: Window
    type_tag: str = "B"

    def __post_init__(self) -> None:
        tag = _check_type(self.type_tag)
        object.__setattr__(self, "type_tag", tag)
        object.__setattr__(self, "window", tuple(int(x) for x in self.window))
        n = len(self.window)
        if sorted(abs(x) for x in self.window) != list(range(1, n + 1)):
            raise DomainError("bad-element", f"{list(self.window)} is not a signed permutation")
        if tag == "D" and sum(1 for x in self.window if x < 0) % 2:
            raise DomainError("bad-element", f"{list(self.window)} has an odd number of sign changes")

    @classmethod
    def identity(cls, n: int, type_tag: str = "B") -> SignedPerm:
        return cls(tuple(range(1, n + 1)), type_tag)

    @classmethod
    def longest(cls, n: int, type_tag: str = "B") -> SignedPerm:
        return cls(_longest(_check_type(type_tag), n), type_tag)

    @classmethod
    def from_word(cls, word: Iterable[int], n: int, type_tag: str = "B") -> SignedPerm:
        tag = _check_type(type_tag)
        w = tuple(range(1, n + 1))
        for s in word:
            w = _right(tag, w, s)
        return cls(w, tag)

    @property
    def rank(self) -> int:
        return len(self.window)

    def __len__(self) -> int:
        return len(self.window)

    def __mul__(self, other: SignedPerm) -> SignedPerm:
        _same_group(self, other)
        return SignedPerm(_compose(self.window, other.window), self.type_tag)

    def inverse(self) -> SignedPerm:
        return SignedPerm(_inverse(self.window), self.type_tag)

    def act(self, y: Sequence) -> tuple:
        """The vector w(y)."""
        return _act(self.window, y)

    def length(self) -> int:
        return _length(self.type_tag, self.window)

    def to_json(self) -> dict:
        return {"type": self.type_tag, "window": list(self.window)}

    def __str__(self) -> str:
        return f"{self.type_tag}[{' '.join(map(str, self.window))}]"


def _same_group(x: SignedPerm, w: SignedPerm) -> None:
    if x.type_tag != w.type_tag or x.rank != w.rank:
        raise DomainError("mixed-types", f"{x} and {w} live in different groups")


def _compose(a: Window, b: Window) -> Window:
    """(a b)(i) = a(b(i)) on signed letters."""
    return tuple(a[abs(x) - 1] if x > 0 else -a[abs(x) - 1] for x in b)


def _inverse(w: Window) -> Window:
    out = [0] * len(w)
    for i, x in enumerate(w, start=1):
        out[abs(x) - 1] = i if x > 0 else -i
    return tuple(out)


def _act(w: Window, y: Sequence) -> tuple:
    out = [0] * len(w)
    for i, x in enumerate(w):
        out[abs(x) - 1] = y[i] if x > 0 else -y[i]
    return tuple(out)


def _longest(tag: str, n: int) -> Window:
    if tag == "D" and n % 2:
        return (1,) + tuple(-i for i in range(2, n + 1))
    return tuple(-i for i in range(1, n + 1))


@lru_cache(maxsize=1 << 20)
def _length(tag: str, w: Window) -> int:
    n = len(w)
    total = 0 if tag == "D" else sum(1 for x in w if x < 0)
    for i in range(n):
        a = w[i]
        for j in range(i + 1, n):
            b = w[j]
            if a > b:
                total += 1
            if a + b < 0:
                total += 1
    return total


def _right_descent(tag: str, w: Window, s: int) -> bool:
    if s == 0:
        return (w[0] + w[1] < 0) if tag == "D" else w[0] < 0
    return w[s] < w[s - 1]


def _right(tag: str, w: Window, s: int) -> Window:
    """w * s_s (acts on positions)."""
    if s == 0:
        if tag == "D":
            return (-w[1], -w[0]) + w[2:]
        return (-w[0],) + w[1:]
    return w[: s - 1] + (w[s], w[s - 1]) + w[s + 1:]


def _left(tag: str, s: int, w: Window) -> Window:
    """s_s * w (acts on values)."""
    if s == 0:
        if tag == "D":
            swap = {1: -2, -1: 2, 2: -1, -2: 1}
            return tuple(swap.get(x, x) for x in w)
        return tuple(-x if abs(x) == 1 else x for x in w)

    def f(x: int) -> int:
        a = abs(x)
        if a == s:
            return x + (1 if x > 0 else -1)
        if a == s + 1:
            return x - (1 if x > 0 else -1)
        return x

    return tuple(f(x) for x in w)


def _left_descent(tag: str, s: int, w: Window) -> bool:
    return _right_descent(tag, _inverse(w), s)


def generators(type_tag: str, n: int) -> tuple[int, ...]:
    tag = _check_type(type_tag)
    if tag == "D" and n < 2:
        raise DomainError("bad-rank", "type D needs rank >= 2")
    return tuple(range(n))


def length(w: SignedPerm) -> int:
    return w.length()


def reduced_word(w: SignedPerm) -> list[int]:
    """Canonical reduced word: strip the smallest right descent repeatedly."""
    tag, cur = w.type_tag, w.window
    word: list[int] = []
    while True:
        for s in range(len(cur)):
            if _right_descent(tag, cur, s):
                word.append(s)
                cur = _right(tag, cur, s)
                break
        else:
            break
    return word[::-1]


@lru_cache(maxsize=1 << 22)
def _bruhat(tag: str, x: Window, w: Window) -> bool:
    if x == w:
        return True
    lx, lw = _length(tag, x), _length(tag, w)
    if lx >= lw:
        return False
    if lx == 0:
        return True
    for s in range(len(w)):
        if _right_descent(tag, w, s):
            ws = _right(tag, w, s)
            if _right_descent(tag, x, s):
                return _bruhat(tag, _right(tag, x, s), ws)
            return _bruhat(tag, x, ws)
    raise AssertionError("non-identity element without descents")


def bruhat_leq(x: SignedPerm, w: SignedPerm) -> bool:
    _same_group(x, w)
    return _bruhat(x.type_tag, x.window, w.window)


def elements(type_tag: str, n: int) -> list[SignedPerm]:
    """All group elements, sorted by length then window."""
    tag = _check_type(type_tag)
    out = []
    for perm in permutations(range(1, n + 1)):
        for signs in product((1, -1), repeat=n):
            if tag == "D" and signs.count(-1) % 2:
                continue
            out.append(tuple(p * s for p, s in zip(perm, signs)))
    out.sort(key=lambda w: (_length(tag, w), w))
    return [SignedPerm(w, tag) for w in out]


def _reflections(tag: str, n: int) -> list[tuple[str, int, int]]:
    refl = []
    for i in range(n):
        for j in range(i + 1, n):
            refl.append(("swap", i, j))
            refl.append(("negswap", i, j))
        if tag != "D":
            refl.append(("neg", i, i))
    return refl


def _apply_reflection(w: Window, r: tuple[str, int, int]) -> Window:
    kind, i, j = r
    lst = list(w)
    if kind == "swap":
        lst[i], lst[j] = lst[j], lst[i]
    elif kind == "negswap":
        lst[i], lst[j] = -lst[j], -lst[i]
    else:
        lst[i] = -lst[i]
    return tuple(lst)


# ----- the memoised recursion -----

def _q_form(h: LaurentPoly, diff: int) -> LaurentPoly:
    """Convert v-normalised h_{x,w} back to P_{x,w}(q)."""
    out = {}
    for e, c in h.terms:
        if (diff - e) % 2:
            raise AssertionError("parity mismatch in KL normalisation")
        out[(diff - e) // 2] = c
    return LaurentPoly.make(out)


def _v_form(p: LaurentPoly, diff: int) -> LaurentPoly:
    return LaurentPoly.make((diff - 2 * e, c) for e, c in p.terms)


class KLEngine:
    """Memoised KL polynomials for one (type, rank, J, kind).

    Lookups are lock-free; insertions take a lock, so several threads may
    share one engine.  Values do not depend on the order of computation.
    """

    def __init__(self, type_tag: str, n: int, J: Iterable[int] = (), kind: str = "trivial",
                 cache: KLCache | None = None) -> None:
        self.tag = _check_type(type_tag)
        self.n = n
        self.J = frozenset(J)
        generators(self.tag, n)
        if not self.J <= set(range(n)):
            raise DomainError("bad-parabolic", f"J={sorted(self.J)} not a subset of 0..{n - 1}")
        if kind not in ("trivial", "sign"):
            raise DomainError("bad-kind", f"kind must be 'trivial' or 'sign', got {kind!r}")
        self.kind = kind if self.J else "trivial"
        self._memo: dict[tuple[Window, Window], LaurentPoly] = {}
        self._covers: dict[Window, tuple[Window, ...]] = {}
        self._lock = threading.Lock()
        self._fresh: list[tuple[Window, Window]] = []
        self._refl = _reflections(self.tag, n)
        self.cache = cache
        if cache is not None:
            for (x, w), poly in cache.load(self.key).items():
                self._memo[(x, w)] = _v_form(poly, _length(self.tag, w) - _length(self.tag, x))

    @property
    def key(self) -> tuple:
        return (self.tag, self.n, tuple(sorted(self.J)), self.kind)

    # -- coset combinatorics --
    def is_minimal(self, w: Window) -> bool:
        return not any(_left_descent(self.tag, s, w) for s in self.J)

    def minimal_rep(self, w: Window) -> Window:
        changed = True
        while changed:
            changed = False
            for s in self.J:
                if _left_descent(self.tag, s, w):
                    w = _left(self.tag, s, w)
                    changed = True
        return w

    def maximal_rep(self, w: Window) -> Window:
        changed = True
        while changed:
            changed = False
            for s in self.J:
                if not _left_descent(self.tag, s, w):
                    w = _left(self.tag, s, w)
                    changed = True
        return w

    def _down_covers(self, w: Window) -> tuple[Window, ...]:
        got = self._covers.get(w)
        if got is None:
            lw = _length(self.tag, w)
            seen = set()
            for r in self._refl:
                u = _apply_reflection(w, r)
                if u not in seen and _length(self.tag, u) == lw - 1 and self.is_minimal(u):
                    seen.add(u)
            got = tuple(sorted(seen))
            self._covers[w] = got
        return got

    def interval(self, x: Window, w: Window) -> list[Window]:
        """Minimal representatives z with x <= z <= w, longest first."""
        if not _bruhat(self.tag, x, w):
            return []
        lx = _length(self.tag, x)
        out, layer = [w], [w]
        while layer:
            nxt = set()
            for z in layer:
                if _length(self.tag, z) <= lx:
                    continue
                for u in self._down_covers(z):
                    if u not in nxt and _bruhat(self.tag, x, u):
                        nxt.add(u)
            layer = sorted(nxt)
            out.extend(layer)
        return out

    # -- polynomials --
    def h(self, x: Window, w: Window) -> LaurentPoly:
        key = (x, w)
        got = self._memo.get(key)
        if got is not None:
            return got
        val = self._compute(x, w)
        with self._lock:
            if key not in self._memo:
                self._memo[key] = val
                self._fresh.append(key)
        return val

    def _compute(self, x: Window, w: Window) -> LaurentPoly:
        tag = self.tag
        if x == w:
            return ONE
        if not _bruhat(tag, x, w):
            return ZERO
        s = next(t for t in range(self.n) if _right_descent(tag, w, t))
        v = _right(tag, w, s)
        xs = _right(tag, x, s)
        xs_in = self.is_minimal(xs)
        if xs_in and not _right_descent(tag, x, s):
            return V * self.h(xs, w)
        if not xs_in:
            if self.kind == "sign":
                return ZERO
            total = (V + V_INV) * self.h(x, v)
        else:
            total = self.h(xs, v) + V_INV * self.h(x, v)
        lv = _length(tag, v)
        for z in self.interval(x, v)[1:]:
            if (lv - _length(tag, z)) % 2 == 0:
                continue
            zs = _right(tag, z, s)
            if self.is_minimal(zs):
                if not _right_descent(tag, z, s):
                    continue
            elif self.kind == "sign":
                continue
            mu = self.h(z, v).coeff(1)
            if mu:
                total = total - self.h(x, z) * mu
        return total

    def polynomial(self, x: Window, w: Window) -> LaurentPoly:
        """P_{x,w}(q) for minimal representatives x, w."""
        for name, el in (("x", x), ("w", w)):
            if not self.is_minimal(el):
                raise DomainError("not-minimal", f"{name}={list(el)} is not minimal in its W_J coset")
        return _q_form(self.h(x, w), _length(self.tag, w) - _length(self.tag, x))

    def flush(self) -> None:
        if self.cache is None or not self._fresh:
            return
        with self._lock:
            fresh, self._fresh = self._fresh, []
            records = []
            for x, w in fresh:
                poly = _q_form(self._memo[(x, w)], _length(self.tag, w) - _length(self.tag, x))
                records.append((x, w, poly))
        self.cache.append(self.key, records)


# ----- disk cache -----

class KLCache:
    """Versioned JSON-lines store of computed polynomials, one file per engine key."""

    def __init__(self, directory: str | os.PathLike) -> None:
        self.directory = Path(directory)

    @classmethod
    def from_env(cls) -> KLCache | None:
        path = os.environ.get(CACHE_ENV)
        return cls(path) if path else None

    def _path(self, key: tuple) -> Path:
        tag, n, J, kind = key
        jtxt = "-".join(map(str, J)) or "none"
        return self.directory / f"kl_{tag}{n}_J{jtxt}_{kind}.jsonl"

    def load(self, key: tuple) -> dict[tuple[Window, Window], LaurentPoly]:
        path = self._path(key)
        out: dict[tuple[Window, Window], LaurentPoly] = {}
        if not path.exists():
            return out
        with path.open() as fh:
            header = fh.readline()
            try:
                meta = json.loads(header)
            except json.JSONDecodeError:
                meta = None
            if not isinstance(meta, dict) or meta.get("format") != "superdual-kl" \
                    or meta.get("version") != CACHE_VERSION:
                log.warning("ignoring KL cache %s with unknown format or version", path)
                fh.close()
                path.replace(path.with_suffix(".jsonl.stale"))
                return out
            for number, line in enumerate(fh, start=2):
                try:
                    rec = json.loads(line)
                    pair = (tuple(int(v) for v in rec["x"]), tuple(int(v) for v in rec["w"]))
                    poly = LaurentPoly.from_list([int(c) for c in rec["coeffs"]])
                except (json.JSONDecodeError, KeyError, TypeError, ValueError):
                    log.warning("skipping malformed record on line %d of %s", number, path)
                    continue
                out[pair] = poly
        return out

    def append(self, key: tuple, records: Iterable[tuple[Window, Window, LaurentPoly]]) -> None:
        self.directory.mkdir(parents=True, exist_ok=True)
        path = self._path(key)
        tag, n, J, kind = key
        new = not path.exists()
        with path.open("a") as fh:
            if new:
                fh.write(json.dumps({"format": "superdual-kl", "version": CACHE_VERSION,
                                     "type": tag, "rank": n, "J": list(J), "kind": kind}) + "\n")
            for x, w, poly in records:
                fh.write(json.dumps({"type": tag, "rank": n, "x": list(x), "w": list(w),
                                     "coeffs": poly.coefficients()}) + "\n")


_ENGINES: dict[tuple, KLEngine] = {}
_ENGINES_LOCK = threading.Lock()
_default_cache: KLCache | None = None
_cache_configured = False


def set_cache_dir(path: str | os.PathLike | None) -> None:
    """Persist polynomials under ``path`` (None disables persistence)."""
    global _default_cache, _cache_configured
    _default_cache = KLCache(path) if path else None
    _cache_configured = True
    with _ENGINES_LOCK:
        _ENGINES.clear()


def _cache() -> KLCache | None:
    return _default_cache if _cache_configured else KLCache.from_env()


def engine(type_tag: str, n: int, J: Iterable[int] = (), kind: str = "trivial") -> KLEngine:
    key = (_check_type(type_tag), n, tuple(sorted(set(J))), kind if J else "trivial")
    with _ENGINES_LOCK:
        eng = _ENGINES.get(key)
        if eng is None:
            eng = KLEngine(key[0], n, key[2], key[3], cache=_cache())
            _ENGINES[key] = eng
    return eng


def flush_caches() -> None:
    for eng in list(_ENGINES.values()):
        eng.flush()


def kl_polynomial(type_tag: str, rank: int, x: SignedPerm, w: SignedPerm) -> LaurentPoly:
    """The ordinary Kazhdan-Lusztig polynomial P_{x,w}(q)."""
    _same_group(x, w)
    if x.rank != rank or _check_type(type_tag) != x.type_tag:
        raise DomainError("mixed-types", f"elements are not in {type_tag}_{rank}")
    return engine(type_tag, rank).polynomial(x.window, w.window)


def parabolic_kl(type_tag: str, rank: int, J: Iterable[int], x: SignedPerm, w: SignedPerm,
                 kind: str = "sign") -> LaurentPoly:
    """Deodhar's parabolic polynomial for minimal representatives of W_J \\ W.

    ``kind="sign"`` (u = -1) equals sum_{z in W_J} (-1)^{l(z)} P_{zx,w};
    ``kind="trivial"`` (u = q) equals P_{w_J x, w_J w}.
    """
    _same_group(x, w)
    if x.rank != rank or _check_type(type_tag) != x.type_tag:
        raise DomainError("mixed-types", f"elements are not in {type_tag}_{rank}")
    return engine(type_tag, rank, J, kind).polynomial(x.window, w.window)


def parabolic_subgroup(type_tag: str, n: int, J: Iterable[int]) -> list[SignedPerm]:
    """Elements of W_J, by closure under the generators in J."""
    tag = _check_type(type_tag)
    start = tuple(range(1, n + 1))
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for w in frontier:
            for s in J:
                u = _right(tag, w, s)
                if u not in seen:
                    seen.add(u)
                    nxt.append(u)
        frontier = nxt
    return [SignedPerm(w, tag) for w in sorted(seen, key=lambda w: (_length(tag, w), w))]


# ----- independent oracle through R-polynomials -----

class RPolynomialOracle:
    """P_{x,w} from R-polynomials and q^{l(w)-l(x)} P(q^{-1}) = sum_y R_{x,y} P_{y,w}."""

    def __init__(self, type_tag: str, n: int) -> None:
        self.tag = _check_type(type_tag)
        self.n = n
        self._r: dict[tuple[Window, Window], LaurentPoly] = {}
        self._p: dict[tuple[Window, Window], LaurentPoly] = {}
        self._elements = [w.window for w in elements(self.tag, n)]

    def r(self, x: Window, w: Window) -> LaurentPoly:
        key = (x, w)
        if key in self._r:
            return self._r[key]
        tag = self.tag
        if not _bruhat(tag, x, w):
            val = ZERO
        elif x == w:
            val = ONE
        else:
            s = next(t for t in range(self.n) if _right_descent(tag, w, t))
            ws, xs = _right(tag, w, s), _right(tag, x, s)
            if _right_descent(tag, x, s):
                val = self.r(xs, ws)
            else:
                q = LaurentPoly.monomial(1)
                val = (q - ONE) * self.r(x, ws) + q * self.r(xs, ws)
        self._r[key] = val
        return val

    def p(self, x: Window, w: Window) -> LaurentPoly:
        key = (x, w)
        if key in self._p:
            return self._p[key]
        tag = self.tag
        if x == w:
            val = ONE
        elif not _bruhat(tag, x, w):
            val = ZERO
        else:
            diff = _length(tag, w) - _length(tag, x)
            rhs = ZERO
            for y in self._elements:
                if y != x and _bruhat(tag, x, y) and _bruhat(tag, y, w):
                    rhs = rhs + self.r(x, y) * self.p(y, w)
            # q^d P(1/q) - P(q) = rhs; P has degree <= (d-1)/2, the other side is higher
            val = LaurentPoly.make((e, -c) for e, c in rhs.terms if 2 * e <= diff - 1)
        self._p[key] = val
        return val


# ----- linkage and transition matrices -----

WEYL_TYPE = {"b": "B", "b_bullet": "B", "c": "C", "d": "D"}
CONVENTIONS = ("kl", "inverse")


def rho(spec: RootSystemSpec) -> Weight:
    """Half the even positive roots minus half the odd ones."""
    total = Weight()
    for a in spec.positive_roots:
        total = total + (a if spec.parity(a) == 0 else -a)
    return total * Fraction(1, 2)


def _true_value(spec: RootSystemSpec, k: int, value, level) -> Fraction:
    """Coordinate after the central-extension shift (head indices are unshifted)."""
    if k < 0:
        return Fraction(value)
    return Fraction(value) - level if k % 2 == 0 else Fraction(value) + level


def y_coordinates(spec: RootSystemSpec, lam: Weight) -> tuple[Fraction, ...]:
    """y = -(lambda + rho) in index order, the vector the Weyl group acts on."""
    r = rho(spec)
    return tuple(-(_true_value(spec, k, lam[k], lam.level) + r[k]) for k in spec.indices)


def _from_y(spec: RootSystemSpec, y: Sequence[Fraction], level) -> dict[int, Fraction]:
    r = rho(spec)
    out = {}
    for k, yk in zip(spec.indices, y):
        true = -yk - r[k]
        out[k] = true if k < 0 else (true + level if k % 2 == 0 else true - level)
    return out


def _check_block(tag: str, y: Sequence[Fraction]) -> None:
    doubled = [2 * v for v in y]
    if any(d.denominator != 1 for d in doubled):
        raise NonIntegralError(f"lambda+rho has non-half-integral coordinates {[str(v) for v in y]}")
    whole = [d.numerator % 2 == 0 for d in doubled]
    if tag == "C" and not all(whole):
        raise NonIntegralError(f"type C needs integral lambda+rho, got {[str(v) for v in y]}")
    if len(set(whole)) > 1:
        raise NonIntegralError(f"lambda+rho mixes integers and half-integers: {[str(v) for v in y]}")
    absolute = [abs(v) for v in y]
    if len(set(absolute)) != len(absolute) or (tag != "D" and 0 in absolute):
        raise SingularBlockError(f"lambda+rho = {[str(-v) for v in y]} is singular")


def _dominant_y(tag: str, y: Sequence[Fraction]) -> tuple[Fraction, ...]:
    vals = sorted(abs(v) for v in y)
    if tag == "D" and vals[0] != 0 and sum(1 for v in y if v < 0) % 2:
        vals[0] = -vals[0]
    return tuple(vals)


def _element_to(tag: str, source: Sequence[Fraction], target: Sequence[Fraction]) -> Window | None:
    """The w with w(source) = target, for regular source; None if not in the group."""
    where = {abs(v): j for j, v in enumerate(target)}
    window = []
    zero_at = None
    for i, v in enumerate(source):
        j = where[abs(v)]
        if v == 0:
            zero_at = i
            window.append(j + 1)
        else:
            window.append((j + 1) if target[j] == v else -(j + 1))
    if tag == "D" and sum(1 for x in window if x < 0) % 2:
        if zero_at is None:
            return None
        window[zero_at] = -window[zero_at]
    return tuple(window)


def levi_generators(spec: RootSystemSpec) -> frozenset[int]:
    """Generators of the Weyl group of the Levi, in y-coordinates."""
    pos = {k: i for i, k in enumerate(spec.indices)}
    out = set()
    for a in spec.levi_simple:
        out.add(_generator_of(spec, a, pos))
    return frozenset(out)


def _generator_of(spec: RootSystemSpec, a: Weight, pos: Mapping[int, int]) -> int:
    coeffs = dict(a.coeffs)
    if sorted(coeffs.values()) == [-1, 1]:
        lo = min(coeffs, key=lambda k: pos[k])
        hi = max(coeffs, key=lambda k: pos[k])
        if coeffs[lo] == 1 and pos[hi] == pos[lo] + 1:
            return pos[lo] + 1
    if pos[min(coeffs, key=lambda k: pos[k])] == 0:
        return 0
    raise DomainError("bad-root", f"{a} is not a simple root of the classical system")


@dataclass(frozen=True)
class LinkedWeight:
    """A dominant tuple in the linkage class with its Weyl group data."""

    tuple: DominantTuple
    weight: Weight
    element: SignedPerm
    minimal: SignedPerm
    height: int

    @property
    def length(self) -> int:
        return self.element.length()


@dataclass(frozen=True)
class ClassicalBlock:
    """The integral regular block of lambda for the rank-N classical algebra."""

    spec: RootSystemSpec
    lam: DominantTuple
    type_tag: str
    J: frozenset[int]
    y: tuple[Fraction, ...]
    y_antidominant: tuple[Fraction, ...]

    @classmethod
    def build(cls, t: DominantTuple, spec: RootSystemSpec, N: int) -> ClassicalBlock:
        if spec.tail != "even":
            raise DomainError("bad-spec", "linkage is computed on the classical (even) tail")
        spec_n = spec.with_rank(N)
        lam = make_weight_g(t, spec_n)
        if any(k > max(spec_n.indices) for k in lam.support):
            raise DomainError("rank-too-small", f"{t} does not fit rank N={N}")
        tag = WEYL_TYPE[spec.head]
        y = y_coordinates(spec_n, lam)
        _check_block(tag, y)
        dom = _dominant_y(tag, y)
        anti = _act(_longest(tag, len(y)), dom)
        return cls(spec_n, t, tag, levi_generators(spec_n), y, anti)

    @property
    def rank(self) -> int:
        return len(self.y)

    def element_of(self, y: Sequence[Fraction]) -> Window | None:
        return _element_to(self.type_tag, self.y_antidominant, y)

    def candidates(self) -> Iterator[tuple[DominantTuple, tuple[Fraction, ...]]]:
        """Every dominant tuple whose y-vector is a signed rearrangement of ours."""
        m, size = self.spec.m, self.rank
        values = sorted(abs(v) for v in self.y)
        r = rho(self.spec)
        level = self.lam.level
        for head_pick in permutations(range(size), m):
            rest = [values[i] for i in range(size) if i not in head_pick]
            for head_signs in product((1, -1), repeat=m):
                if any(values[i] == 0 and sg < 0 for i, sg in zip(head_pick, head_signs)):
                    continue
                head_y = [values[i] * sg for i, sg in zip(head_pick, head_signs)]
                for tail_signs in product((1, -1), repeat=len(rest)):
                    if any(v == 0 and sg < 0 for v, sg in zip(rest, tail_signs)):
                        continue
                    tail_y = sorted(v * sg for v, sg in zip(rest, tail_signs))
                    y = tuple(head_y + tail_y)
                    coords = _from_y(self.spec, y, level)
                    head = [coords[k] for k in self.spec.head_indices]
                    tail = [coords[k] for k in self.spec.tail_indices]
                    if any(v.denominator != 1 or v < 0 for v in tail):
                        continue
                    if any(a < b for a, b in zip(tail, tail[1:])):
                        continue
                    mu = DominantTuple(head, Partition(int(v) for v in tail), level)
                    try:
                        mu.check(self.spec)
                    except DomainError:
                        continue
                    yield mu, y


def stable_rank(t: DominantTuple, depth: int) -> int:
    """Smallest ambient rank at which depth-limited data has stabilised."""
    return max(len(t.lam_plus) + depth, 1)


def linkage(t: DominantTuple, spec: RootSystemSpec, N: int, depth: int) -> list[LinkedWeight]:
    """Dominant mu linked to lambda with lambda - mu in the root cone, height <= depth."""
    block = ClassicalBlock.build(t, spec, N)
    lam_w = make_weight_g(t, block.spec)
    eng = engine(block.type_tag, block.rank, block.J, "trivial")
    out = []
    for mu, y in block.candidates():
        mu_w = make_weight_g(mu, block.spec)
        diff = lam_w - mu_w
        coords = block.spec.simple_coordinates(diff)
        if any(not isinstance(c, int) or c < 0 for c in coords):
            continue
        height = sum(coords)
        if height > depth:
            continue
        w = block.element_of(y)
        if w is None:
            continue
        el = SignedPerm(w, block.type_tag)
        out.append(LinkedWeight(mu, mu_w, el, SignedPerm(eng.minimal_rep(w), block.type_tag), height))
    out.sort(key=lambda e: (e.height, str(e.tuple)))
    return out


@dataclass
class TransitionMatrix:
    """Column lambda of a_{mu,lambda}: ch L(lambda) = sum_mu a_{mu,lambda} ch Delta(mu)."""

    spec: RootSystemSpec
    lam: DominantTuple
    N: int
    depth: int
    convention: str
    entries: dict[DominantTuple, int] = field(default_factory=dict)
    heights: dict[DominantTuple, int] = field(default_factory=dict)

    def __getitem__(self, key: tuple[DominantTuple, DominantTuple] | DominantTuple) -> int:
        if isinstance(key, tuple) and len(key) == 2 and isinstance(key[0], DominantTuple):
            mu, lam = key
            if lam != self.lam:
                raise KeyError(f"column {lam} not computed")
        else:
            mu = key
        return self.entries.get(mu, 0)

    def items(self) -> Iterator[tuple[DominantTuple, int]]:
        return iter(self.entries.items())

    def nonzero(self) -> dict[DominantTuple, int]:
        return {mu: a for mu, a in self.entries.items() if a}

    def is_unitriangular(self) -> bool:
        return self.entries.get(self.lam) == 1 and all(
            self.heights[mu] > 0 for mu in self.entries if mu != self.lam)

    def to_json(self) -> dict:
        return {
            "spec": self.spec.to_json(), "lambda": str(self.lam), "N": self.N, "depth": self.depth,
            "convention": self.convention,
            "entries": [{"mu": str(mu), "height": self.heights[mu], "a": a} for mu, a in self.entries.items()],
        }


def kl_coefficients(t: DominantTuple, spec: RootSystemSpec, N: int, mus: Iterable[DominantTuple],
                    convention: str = "kl") -> dict[DominantTuple, int]:
    """a_{mu,lambda} at ambient rank N for each mu; unlinked mu get no entry."""
    if convention not in CONVENTIONS:
        raise DomainError("bad-convention", f"convention must be one of {CONVENTIONS}")
    block = ClassicalBlock.build(t, spec, N)
    eng = engine(block.type_tag, block.rank, block.J, "trivial")
    target = sorted(abs(v) for v in block.y)
    data: dict[DominantTuple, tuple[Window, int]] = {}
    for mu in mus:
        if len(mu.lam_plus) > N:
            continue
        y = y_coordinates(block.spec, make_weight_g(mu, block.spec))
        if sorted(abs(v) for v in y) != target:
            continue
        w = block.element_of(y)
        if w is None:
            continue
        if eng.maximal_rep(w) != w:
            raise AssertionError(f"{mu} is dominant but its Weyl group element is not maximal")
        data[mu] = (eng.minimal_rep(w), _length(block.type_tag, w))
    if t not in data:
        raise AssertionError("lambda is missing from its own linkage class")
    top, top_len = data[t]
    out: dict[DominantTuple, int] = {}
    if convention == "kl":
        for mu, (x, lx) in data.items():
            sign = -1 if (top_len - lx) % 2 else 1
            out[mu] = sign * eng.polynomial(x, top).at_one()
    else:
        # back substitution in the unitriangular matrix of values P_{x,w}(1)
        order = sorted(data, key=lambda mu: -data[mu][1])
        for mu in order:
            if mu == t:
                out[mu] = 1
                continue
            x, lx = data[mu]
            acc = 0
            for nu, a in out.items():
                if a and data[nu][1] > lx:
                    acc += eng.polynomial(x, data[nu][0]).at_one() * a
            out[mu] = -acc
        out = {mu: out.get(mu, 0) for mu in data}
    eng.flush()
    return out


def transition_matrix(t: DominantTuple, spec: RootSystemSpec, N: int, depth: int,
                      convention: str = "kl", check_stable: bool | None = None) -> TransitionMatrix:
    """a_{mu,lambda} for every mu in the depth-limited linkage class.

    ``convention="kl"``: a = (-1)^{l(w)-l(x)} P_{x,w}(1) with x, w the longest
    elements of their W_J cosets.  ``convention="inverse"``: read P_{x,w}(1)
    as Verma multiplicities [Delta(mu) : L(nu)] and invert that matrix.
    """
    linked = linkage(t, spec, N, depth)
    coeffs = kl_coefficients(t, spec, N, [e.tuple for e in linked], convention)
    tm = TransitionMatrix(spec, t, N, depth, convention)
    for e in linked:
        tm.entries[e.tuple] = coeffs[e.tuple]
        tm.heights[e.tuple] = e.height
    if check_stable is None:
        check_stable = bool(os.environ.get("SUPERDUAL_DEBUG"))
    if check_stable and N >= stable_rank(t, depth):
        other = transition_matrix(t, spec, N + 1, depth, convention, check_stable=False)
        if other.nonzero() != tm.nonzero():
            raise AssertionError(f"transition matrix for {t} not stable at N={N}")
    return tm
