"""Index sets, weights, root systems and dominant weight constructors.

Indices are stored doubled: the integer ``k`` stands for ``r = k/2``.
Head indices are -2m..-2 (step 2), integer tail indices are even and
positive, half-integer tail indices are odd and positive. The natural
order of the doubled integers is the order -m < ... < -1 < 1/2 < 1 < ...
"""

from __future__ import annotations

import json
from collections.abc import Iterable, Iterator, Mapping, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Union

from .errors import DomainError
from .partitions import Partition, as_partition, conjugate, theta

Number = Union[int, Fraction]

HEADS = ("b", "b_bullet", "c", "d")
TAILS = ("even", "super", "full")
HEAD_ALIASES = {"b": "b", "b_bullet": "b_bullet", "b*": "b_bullet", "bbullet": "b_bullet", "c": "c", "d": "d"}
TAIL_ALIASES = {
    "even": "even", "T": "even",
    "super": "super", "Tbar": "super",
    "full": "full", "Ttilde": "full",
}


def _norm(v: Number) -> Number:
    """Store integral values as int so hashing and arithmetic stay cheap."""
    if isinstance(v, Fraction):
        return v.numerator if v.denominator == 1 else v
    return int(v)


def idx_str(k: int) -> str:
    """Doubled index to its printed form: -2 -> '-1', 1 -> '1/2'."""
    return str(k // 2) if k % 2 == 0 else f"{k}/2"


def parse_idx(text: str) -> int:
    value = Fraction(text.strip())
    if (2 * value).denominator != 1:
        raise DomainError("bad-index", f"{text!r} is not a half-integer")
    return int(2 * value)


def is_odd_index(k: int) -> bool:
    return k > 0 and k % 2 == 1


def form(k: int, l: int) -> int:
    """(eps_r | eps_s) = (-1)^{2r} delta_rs, arguments doubled."""
    if k != l:
        return 0
    return -1 if k % 2 else 1


def bilinear_form(r: int, s: int) -> int:
    return form(r, s)


@dataclass(frozen=True)
class Weight:
    """Finitely supported rational combination of eps_r plus a level."""

    coeffs: tuple[tuple[int, Number], ...] = ()
    level: Number = 0

    @classmethod
    def make(cls, coeffs: Mapping[int, Number] | Iterable[tuple[int, Number]] = (), level: Number = 0) -> Weight:
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        acc: dict[int, Number] = {}
        for k, v in items:
            acc[k] = acc.get(k, 0) + v
        return cls(tuple(sorted((k, _norm(v)) for k, v in acc.items() if v)), _norm(level))

    @classmethod
    def eps(cls, k: int, coeff: Number = 1) -> Weight:
        return cls.make({k: coeff})

    def as_dict(self) -> dict[int, Fraction]:
        return dict(self.coeffs)

    def __getitem__(self, k: int) -> Number:
        for key, v in self.coeffs:
            if key == k:
                return v
        return 0

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(k for k, _ in self.coeffs)

    def __add__(self, other: Weight) -> Weight:
        d = dict(self.coeffs)
        for k, v in other.coeffs:
            d[k] = d.get(k, 0) + v
        return Weight(tuple(sorted((k, _norm(v)) for k, v in d.items() if v)), _norm(self.level + other.level))

    def __neg__(self) -> Weight:
        return Weight(tuple((k, -v) for k, v in self.coeffs), -self.level)

    def __sub__(self, other: Weight) -> Weight:
        return self + (-other)

    def __mul__(self, c: Number) -> Weight:
        return Weight.make({k: v * c for k, v in self.coeffs}, self.level * c)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not self.coeffs and self.level == 0

    def is_integral(self) -> bool:
        return all(isinstance(v, int) for _, v in self.coeffs)

    def restrict(self, keep) -> Weight:
        """Drop coefficients whose index fails ``keep``; the level stays."""
        return Weight(tuple((k, v) for k, v in self.coeffs if keep(k)), self.level)

    def to_json(self) -> dict:
        return {"eps": {idx_str(k): str(v) for k, v in self.coeffs}, "level": str(self.level)}

    @classmethod
    def from_json(cls, data: Mapping | str) -> Weight:
        if isinstance(data, str):
            data = json.loads(data)
        return cls.make({parse_idx(k): Fraction(v) for k, v in data.get("eps", {}).items()},
                        Fraction(data.get("level", "0")))

    def __str__(self) -> str:
        parts = []
        for k, v in self.coeffs:
            name = f"e({idx_str(k)})"
            parts.append(name if v == 1 else f"-{name}" if v == -1 else f"{v}*{name}")
        if self.level:
            lv = self.level
            parts.append("L0" if lv == 1 else "-L0" if lv == -1 else f"{lv}*L0")
        return " + ".join(parts).replace("+ -", "- ") if parts else "0"


def inner(w: Weight, v: Weight) -> Number:
    """The invariant form; Lambda_0 pairs trivially with every eps_r."""
    vd = dict(v.coeffs)
    return sum(c * vd[k] * form(k, k) for k, c in w.coeffs if k in vd)


def coroot_pairing(w: Weight, alpha: Weight) -> Fraction:
    """<w, h_alpha>: 2(w|a)/(a|a), or (w|a) when a is isotropic."""
    if not alpha.coeffs:
        raise DomainError("zero-root", "coroot of the zero vector")
    norm = inner(alpha, alpha)
    if norm == 0:
        return inner(w, alpha)
    return _norm(Fraction(2 * inner(w, alpha), norm))


def root_label(alpha: Weight) -> str:
    return str(alpha)


def _algebra(head: str) -> str:
    return "spo" if head in ("b_bullet", "c") else "osp"


def _tail_indices(tail: str, n: int) -> tuple[int, ...]:
    if tail == "even":
        return tuple(range(2, 2 * n + 1, 2))
    if tail == "super":
        return tuple(range(1, 2 * n, 2))
    return tuple(range(1, 2 * n + 1))


@dataclass(frozen=True)
class _RootData:
    indices: tuple[int, ...]
    positive: tuple[Weight, ...]
    simple: tuple[Weight, ...]
    inverse: tuple[tuple[Fraction, ...], ...] | None


@lru_cache(maxsize=None)
def _root_data(head: str, m: int, tail: str, n: int) -> _RootData:
    idx = tuple(range(-2 * m, 0, 2)) + _tail_indices(tail, n)
    algebra = _algebra(head)
    has_v0 = head in ("b", "b_bullet")
    vecs: list[tuple[int, ...]] = []
    size = len(idx)

    for a, r in enumerate(idx):
        for b in range(a + 1, size):
            v = [0] * size
            v[a], v[b] = 1, -1
            vecs.append(tuple(v))
            v = [0] * size
            v[a], v[b] = -1, -1
            vecs.append(tuple(v))
        if has_v0:
            v = [0] * size
            v[a] = -1
            vecs.append(tuple(v))
        odd = 1 if is_odd_index(r) else 0
        if (odd == 1) if algebra == "osp" else (odd == 0):
            v = [0] * size
            v[a] = -2
            vecs.append(tuple(v))
    sums = {tuple(x + y for x, y in zip(p, q)) for i, p in enumerate(vecs) for q in vecs[i:]}
    simple_vecs = [v for v in vecs if v not in sums]

    def to_weight(v: tuple[int, ...]) -> Weight:
        return Weight(tuple((idx[i], c) for i, c in enumerate(v) if c), 0)

    def key(v: tuple[int, ...]) -> tuple:
        nz = [i for i, c in enumerate(v) if c]
        return (nz[0], nz[-1], sum(v))

    simple_vecs.sort(key=key)
    inverse = None
    if len(simple_vecs) == size:
        from sympy import Matrix

        mat = Matrix([[sv[i] for sv in simple_vecs] for i in range(size)])
        inv = mat.inv()
        inverse = tuple(tuple(Fraction(int(inv[i, j].p), int(inv[i, j].q)) for j in range(size))
                        for i in range(size))
    return _RootData(idx, tuple(to_weight(v) for v in vecs), tuple(to_weight(v) for v in simple_vecs), inverse)


@dataclass(frozen=True)
class RootSystemSpec:
    """Head type, head rank m, tail flavour and tail rank n, plus Y0."""

    head: str
    m: int
    tail: str
    n: int
    Y0: frozenset[str] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        head = HEAD_ALIASES.get(self.head)
        tail = TAIL_ALIASES.get(self.tail)
        if head is None:
            raise DomainError("bad-spec", f"unknown head {self.head!r}")
        if tail is None:
            raise DomainError("bad-spec", f"unknown tail {self.tail!r}")
        object.__setattr__(self, "head", head)
        object.__setattr__(self, "tail", tail)
        object.__setattr__(self, "Y0", frozenset(self.Y0))
        if self.m < 0 or self.n < 0 or (self.n == 0 and tail != "even"):
            raise DomainError("bad-spec", f"ranks m={self.m}, n={self.n} out of range")
        if self.m + self.n == 0:
            raise DomainError("bad-spec", "empty index set")
        if self._data.inverse is None:
            raise DomainError(
                "degenerate-spec",
                f"head {head} m={self.m} tail {tail} n={self.n} has no distinguished simple system",
            )
        unknown = self.Y0 - set(self.head_labels)
        if unknown:
            raise DomainError("bad-spec", f"Y0 labels {sorted(unknown)} are not head simple roots "
                              f"(available: {sorted(self.head_labels)})")

    @property
    def _data(self) -> _RootData:
        return _root_data(self.head, self.m, self.tail, self.n)

    # ----- structural data -----
    @property
    def algebra(self) -> str:
        return _algebra(self.head)

    @property
    def has_v0(self) -> bool:
        return self.head in ("b", "b_bullet")

    @property
    def v0_parity(self) -> int:
        return 1 if self.head == "b_bullet" else 0

    @property
    def head_indices(self) -> tuple[int, ...]:
        return self._data.indices[: self.m]

    @property
    def tail_indices(self) -> tuple[int, ...]:
        return self._data.indices[self.m:]

    @property
    def indices(self) -> tuple[int, ...]:
        return self._data.indices

    def index_parity(self, k: int) -> int:
        return 1 if is_odd_index(k) else 0

    @property
    def positive_roots(self) -> tuple[Weight, ...]:
        return self._data.positive

    @property
    def simple_roots(self) -> tuple[Weight, ...]:
        return self._data.simple

    def parity(self, alpha: Weight) -> int:
        total = sum(abs(c) for _, c in alpha.coeffs)
        if total == 1:
            k = alpha.coeffs[0][0]
            return (self.index_parity(k) + self.v0_parity) % 2
        return int(sum(abs(c) * self.index_parity(k) for k, c in alpha.coeffs)) % 2

    def is_isotropic(self, alpha: Weight) -> bool:
        return inner(alpha, alpha) == 0

    def is_odd_nonisotropic(self, alpha: Weight) -> bool:
        return self.parity(alpha) == 1 and inner(alpha, alpha) != 0

    @property
    def head_simple(self) -> dict[str, Weight]:
        """Head simple roots keyed by label: 'alpha_j' or 'alpha_0' (leftmost)."""
        return _head_simple(self.head, self.m, self.tail, self.n)

    @property
    def head_labels(self) -> tuple[str, ...]:
        return tuple(self.head_simple)

    @property
    def tail_levi_roots(self) -> tuple[Weight, ...]:
        """Tail simple roots of the form eps_r - eps_s with r, s both in the tail."""
        return tuple(
            a for a in self.simple_roots
            if all(k > 0 for k in a.support) and sorted(c for _, c in a.coeffs) == [-1, 1]
        )

    @property
    def levi_simple(self) -> tuple[Weight, ...]:
        chosen = {self.head_simple[y] for y in self.Y0}
        tail = set(self.tail_levi_roots)
        return tuple(a for a in self.simple_roots if a in chosen or a in tail)

    # ----- simple-root coordinates and heights -----
    def simple_coordinates(self, gamma: Weight) -> tuple[Number, ...]:
        """Coefficients of gamma in the simple-root basis (level ignored)."""
        idx = self.indices
        pos = {k: i for i, k in enumerate(idx)}
        inv = self._data.inverse
        out = [0] * len(idx)
        for k, c in gamma.coeffs:
            if k not in pos:
                raise DomainError("bad-weight", f"index {idx_str(k)} not in {self.describe()}")
            j = pos[k]
            for i in range(len(idx)):
                out[i] += inv[i][j] * c
        return tuple(_norm(x) for x in out)

    @property
    def height_vector(self) -> dict[int, Number]:
        """ht(eps_r), so that ht(gamma) = sum_r gamma_r * ht(eps_r)."""
        return _height_vector(self.head, self.m, self.tail, self.n)

    def height(self, gamma: Weight) -> Number:
        hv = self.height_vector
        return _norm(sum(c * hv[k] for k, c in gamma.coeffs))

    def in_root_cone(self, gamma: Weight) -> bool:
        """True iff gamma is a nonnegative integral combination of simple roots."""
        return all(isinstance(c, int) and c >= 0 for c in self.simple_coordinates(gamma))

    @property
    def levi_positive(self) -> tuple[Weight, ...]:
        return _levi_positive(self)

    @property
    def nilradical_negative(self) -> tuple[Weight, ...]:
        """Roots of u^-: negatives of positive roots outside the Levi."""
        return _nilradical_negative(self)

    # ----- presentation -----
    def describe(self) -> str:
        y0 = ",".join(sorted(self.Y0))
        return f"{self.head}/m={self.m}/{self.tail}/n={self.n}" + (f"/Y0={y0}" if y0 else "")

    def with_tail(self, tail: str, n: int | None = None) -> RootSystemSpec:
        return RootSystemSpec(self.head, self.m, tail, self.n if n is None else n, self.Y0)

    def with_rank(self, n: int) -> RootSystemSpec:
        return RootSystemSpec(self.head, self.m, self.tail, n, self.Y0)

    def to_json(self) -> dict:
        return {"head": self.head, "m": self.m, "tail": self.tail, "n": self.n, "Y0": sorted(self.Y0)}

    @classmethod
    def from_json(cls, data: Mapping | str) -> RootSystemSpec:
        if isinstance(data, str):
            data = json.loads(data)
        return cls(data["head"], int(data["m"]), data["tail"], int(data["n"]), frozenset(data.get("Y0", ())))


@lru_cache(maxsize=None)
def _head_simple(head: str, m: int, tail: str, n: int) -> dict[str, Weight]:
    out: dict[str, Weight] = {}
    for a in _root_data(head, m, tail, n).simple:
        if all(k < 0 for k in a.support):
            coeffs = dict(a.coeffs)
            if sum(coeffs.values()) < 0:
                out["alpha_0"] = a
            else:
                out[f"alpha_{min(coeffs) // 2}"] = a
    return out


@lru_cache(maxsize=None)
def _height_vector(head: str, m: int, tail: str, n: int) -> dict[int, Number]:
    data = _root_data(head, m, tail, n)
    size = len(data.indices)
    return {k: _norm(sum(data.inverse[i][j] for i in range(size))) for j, k in enumerate(data.indices)}


@lru_cache(maxsize=None)
def _levi_positive(spec: RootSystemSpec) -> tuple[Weight, ...]:
    levi = set(spec.levi_simple)
    outside = [i for i, a in enumerate(spec.simple_roots) if a not in levi]
    return tuple(a for a in spec.positive_roots
                 if all(spec.simple_coordinates(a)[i] == 0 for i in outside))


@lru_cache(maxsize=None)
def _nilradical_negative(spec: RootSystemSpec) -> tuple[Weight, ...]:
    levi = set(spec.levi_positive)
    return tuple(-a for a in spec.positive_roots if a not in levi)


def simple_roots(spec: RootSystemSpec) -> list[Weight]:
    return list(spec.simple_roots)


def positive_roots(spec: RootSystemSpec) -> list[Weight]:
    return list(spec.positive_roots)


# ----- dominant tuples -----

@dataclass(frozen=True)
class DominantTuple:
    """(lambda_{-m}, ..., lambda_{-1}; lambda^+; d)."""

    head_coeffs: tuple[Fraction, ...]
    lam_plus: Partition
    level: Fraction = Fraction(0)

    def __init__(self, head_coeffs: Sequence[Number] = (), lam_plus: Partition | Sequence[int] = (),
                 level: Number = 0) -> None:
        object.__setattr__(self, "head_coeffs", tuple(Fraction(c) for c in head_coeffs))
        object.__setattr__(self, "lam_plus", as_partition(lam_plus))
        object.__setattr__(self, "level", Fraction(level))

    @property
    def m(self) -> int:
        return len(self.head_coeffs)

    def head_weight(self) -> Weight:
        m = self.m
        return Weight.make({-2 * (m - i): c for i, c in enumerate(self.head_coeffs)})

    def check(self, spec: RootSystemSpec) -> None:
        if self.m != spec.m:
            raise DomainError("bad-tuple", f"tuple has {self.m} head entries, spec has m={spec.m}")
        hw = self.head_weight()
        for label in sorted(spec.Y0):
            alpha = spec.head_simple[label]
            if not spec.is_isotropic(alpha) and spec.parity(alpha) and sum(abs(c) for _, c in alpha.coeffs) == 1:
                alpha = alpha * 2
            value = coroot_pairing(hw, alpha)
            if value < 0 or not isinstance(value, int):
                raise DomainError("not-dominant", f"<lambda, h_{label}> = {value} is not in Z_+")

    def __str__(self) -> str:
        head = ",".join(str(c) for c in self.head_coeffs)
        return f"({head}|{','.join(map(str, self.lam_plus.parts))};d={self.level})"


def parse_tuple(text: str, level: Number = 0) -> DominantTuple:
    """Parse 'h_{-m},...,h_{-1}|p_1,p_2,...'; either side may be empty."""
    head, _, tail = text.partition("|") if "|" in text else ("", "", text)
    hs = [Fraction(x) for x in head.split(",") if x.strip()]
    ps = [int(x) for x in tail.split(",") if x.strip()]
    try:
        return DominantTuple(hs, Partition(ps), level)
    except ValueError as exc:
        raise DomainError("bad-partition", str(exc)) from exc


def make_weight_g(t: DominantTuple, spec: RootSystemSpec | None = None) -> Weight:
    if spec is not None:
        t.check(spec)
    tail = {2 * j: p for j, p in enumerate(t.lam_plus.parts, start=1)}
    return t.head_weight() + Weight.make(tail, t.level)


def make_weight_gbar(t: DominantTuple, spec: RootSystemSpec | None = None) -> Weight:
    if spec is not None:
        t.check(spec)
    conj = conjugate(t.lam_plus)
    tail = {2 * s - 1: p for s, p in enumerate(conj.parts, start=1)}
    return t.head_weight() + Weight.make(tail, t.level)


def make_weight_gtilde(t: DominantTuple, spec: RootSystemSpec | None = None) -> Weight:
    if spec is not None:
        t.check(spec)
    return t.head_weight() + Weight.make(theta(t.lam_plus), t.level)


def make_weight(spec: RootSystemSpec, t: DominantTuple, check: bool = True) -> Weight:
    """The weight attached to ``t`` on the flavour of ``spec``, checked to fit the rank."""
    maker = {"even": make_weight_g, "super": make_weight_gbar, "full": make_weight_gtilde}[spec.tail]
    w = maker(t, spec if check else None)
    top = max(spec.indices)
    if any(k > top for k in w.support):
        raise DomainError("rank-too-small", f"{t} does not fit tail rank n={spec.n}")
    return w


def fits(spec: RootSystemSpec, t: DominantTuple) -> bool:
    """Whether the transferred weight of ``t`` is supported in the indices of ``spec``."""
    lam = t.lam_plus
    if spec.tail == "even":
        return len(lam) <= spec.n
    if spec.tail == "super":
        return lam[0] <= spec.n
    return all((k + 1) // 2 <= spec.n for k in theta(lam))


def tuple_from_weight(spec: RootSystemSpec, w: Weight) -> DominantTuple:
    """Recover the dominant tuple from a transferred weight."""
    from .partitions import from_theta

    head = [w[-2 * (spec.m - i)] for i in range(spec.m)]
    tail = {k: v for k, v in w.coeffs if k > 0}
    if any(not isinstance(v, int) or v < 0 for v in tail.values()):
        raise DomainError("bad-weight", f"{w} has a non-partition tail")
    tail_i = {k: int(v) for k, v in tail.items()}
    try:
        if spec.tail == "even":
            lam = Partition(tail_i.get(2 * j, 0) for j in range(1, spec.n + 1))
        elif spec.tail == "super":
            lam = conjugate([tail_i.get(2 * s - 1, 0) for s in range(1, spec.n + 1)])
        else:
            lam = from_theta(tail_i)
    except ValueError as exc:
        raise DomainError("bad-weight", f"{w} has a non-partition tail") from exc
    t = DominantTuple(head, lam, w.level)
    if make_weight(spec, t, check=False) != w:
        raise DomainError("bad-weight", f"{w} is not a transferred dominant weight")
    return t


def iter_specs(heads: Iterable[str] = HEADS, ms: Iterable[int] = (0, 1, 2), tail: str = "even",
               ns: Iterable[int] = (1, 2, 3, 4)) -> Iterator[RootSystemSpec]:
    """All non-degenerate specs over the given ranges, with Y0 empty."""
    for h in heads:
        for m in ms:
            for n in ns:
                try:
                    yield RootSystemSpec(h, m, tail, n)
                except DomainError:
                    continue
