"""Truncated formal characters and the symmetric functions that build them.

A :class:`FormalCharacter` stores multiplicities as integer offset vectors
from an apex weight.  When it is attached to a root system, offsets are
root-lattice vectors and every term sits at a finite depth: the total
simple-root coefficient of ``apex - weight``.  Terms deeper than the
character's ``depth`` are discarded by every operation.
"""

from __future__ import annotations

from collections.abc import Callable, Iterable, Iterator, Mapping, Sequence
from fractions import Fraction
from functools import lru_cache
from itertools import permutations

from .errors import DomainError
from .partitions import Partition, as_partition, conjugate
from .rootdata import (
    DominantTuple,
    RootSystemSpec,
    Weight,
    coroot_pairing,
    idx_str,
    inner,
    make_weight,
    make_weight_g,
    tuple_from_weight,
)

Offset = tuple[int, ...]
Monomials = dict[tuple[int, ...], int]


class FormalCharacter:
    """Finite sum of m_w e^w, kept relative to an apex weight.

    ``indices`` names the coordinates of the offset vectors.  ``spec`` may be
    None for plain polynomials in named variables; such characters carry no
    depth and are never truncated.
    """

    __slots__ = ("spec", "apex", "depth", "indices", "terms", "_ht2")

    def __init__(self, spec: RootSystemSpec | None, apex: Weight, depth: int | None,
                 terms: Mapping[Offset, int] | None = None, indices: Sequence[int] | None = None) -> None:
        self.spec = spec
        self.apex = apex
        self.depth = depth
        self.indices = tuple(spec.indices if spec is not None else (indices or ()))
        if spec is not None:
            hv = spec.height_vector
            self._ht2 = tuple(int(2 * hv[k]) for k in self.indices)
        else:
            self._ht2 = None
        self.terms: dict[Offset, int] = {}
        for off, c in (terms or {}).items():
            if c and self._keeps(off):
                self.terms[off] = c

    # ----- construction -----
    @classmethod
    def zero(cls, spec: RootSystemSpec | None, apex: Weight, depth: int | None,
             indices: Sequence[int] | None = None) -> FormalCharacter:
        return cls(spec, apex, depth, {}, indices)

    @classmethod
    def one(cls, spec: RootSystemSpec | None, apex: Weight | None = None, depth: int | None = None,
            indices: Sequence[int] | None = None) -> FormalCharacter:
        ch = cls(spec, apex or Weight(), depth, {}, indices)
        ch.terms[(0,) * len(ch.indices)] = 1
        return ch

    @classmethod
    def from_weights(cls, spec: RootSystemSpec | None, weights: Mapping[Weight, int], apex: Weight,
                     depth: int | None, indices: Sequence[int] | None = None) -> FormalCharacter:
        ch = cls(spec, apex, depth, {}, indices)
        for w, c in weights.items():
            off = ch.offset_of(w)
            if c and ch._keeps(off):
                ch.terms[off] = ch.terms.get(off, 0) + c
        ch.terms = {o: c for o, c in ch.terms.items() if c}
        return ch

    def _like(self, terms: Mapping[Offset, int], apex: Weight | None = None,
              depth: int | None | str = "same") -> FormalCharacter:
        out = FormalCharacter.__new__(FormalCharacter)
        out.spec, out.indices, out._ht2 = self.spec, self.indices, self._ht2
        out.apex = self.apex if apex is None else apex
        out.depth = self.depth if depth == "same" else depth
        out.terms = {o: c for o, c in terms.items() if c and out._keeps(o)}
        return out

    # ----- geometry -----
    def offset_of(self, w: Weight) -> Offset:
        if w.level != self.apex.level:
            raise DomainError("bad-weight", f"level of {w} differs from the apex level {self.apex.level}")
        pos = set(self.indices)
        stray = [k for k in w.support + self.apex.support if k not in pos]
        if stray:
            raise DomainError("bad-weight", f"index {idx_str(stray[0])} is outside the character's index set")
        off = tuple(w[k] - self.apex[k] for k in self.indices)
        if any(not isinstance(c, int) for c in off):
            raise DomainError("bad-weight", f"{w} is not in apex + integer lattice")
        return off

    def weight_of(self, off: Offset) -> Weight:
        return self.apex + Weight.make(zip(self.indices, off))

    def depth_of(self, off: Offset) -> int:
        if self._ht2 is None:
            return 0
        return -sum(o * h for o, h in zip(off, self._ht2)) // 2

    def _keeps(self, off: Offset) -> bool:
        return self.depth is None or self._ht2 is None or self.depth_of(off) <= self.depth

    # ----- inspection -----
    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self) -> Iterator[tuple[Weight, int]]:
        for off, c in self.terms.items():
            yield self.weight_of(off), c

    def as_dict(self) -> dict[Weight, int]:
        return {self.weight_of(o): c for o, c in self.terms.items()}

    def multiplicity(self, w: Weight) -> int:
        try:
            return self.terms.get(self.offset_of(w), 0)
        except DomainError:
            return 0

    @property
    def apex_multiplicity(self) -> int:
        return self.terms.get((0,) * len(self.indices), 0)

    def min_multiplicity(self) -> int:
        return min(self.terms.values(), default=0)

    def is_nonnegative(self) -> bool:
        return all(c > 0 for c in self.terms.values())

    def layers(self) -> dict[int, dict[Weight, int]]:
        out: dict[int, dict[Weight, int]] = {}
        for off, c in self.terms.items():
            out.setdefault(self.depth_of(off), {})[self.weight_of(off)] = c
        return dict(sorted(out.items()))

    def dimension(self) -> int:
        return sum(self.terms.values())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FormalCharacter):
            return NotImplemented
        return self.as_dict() == other.as_dict()

    def __repr__(self) -> str:
        where = self.spec.describe() if self.spec is not None else "vars"
        return f"FormalCharacter({where}, apex={self.apex}, depth={self.depth}, terms={len(self.terms)})"

    # ----- arithmetic -----
    def _check_compatible(self, other: FormalCharacter) -> None:
        if self.indices != other.indices or self.spec != other.spec:
            raise DomainError("mismatch", "characters live on different index sets")

    def rebase(self, apex: Weight, depth: int | None = "same") -> FormalCharacter:
        """Same terms, offsets measured from ``apex``."""
        shift = tuple(self.apex[k] - apex[k] for k in self.indices)
        if self.apex.level != apex.level:
            raise DomainError("bad-weight", "rebasing across levels")
        terms = {tuple(a + b for a, b in zip(o, shift)): c for o, c in self.terms.items()}
        return self._like(terms, apex=apex, depth=self.depth if depth == "same" else depth)

    def _aligned(self, other: FormalCharacter) -> FormalCharacter:
        self._check_compatible(other)
        return other if other.apex == self.apex else other.rebase(self.apex, None)

    def __add__(self, other: FormalCharacter) -> FormalCharacter:
        other = self._aligned(other)
        terms = dict(self.terms)
        for o, c in other.terms.items():
            terms[o] = terms.get(o, 0) + c
        return self._like(terms, depth=_min_depth(self.depth, other.depth))

    def __neg__(self) -> FormalCharacter:
        return self._like({o: -c for o, c in self.terms.items()})

    def __sub__(self, other: FormalCharacter) -> FormalCharacter:
        return self + (-other)

    def scale(self, k: int) -> FormalCharacter:
        return self._like({o: k * c for o, c in self.terms.items()})

    def __mul__(self, other: FormalCharacter | int) -> FormalCharacter:
        if isinstance(other, int):
            return self.scale(other)
        self._check_compatible(other)
        depth = _min_depth(self.depth, other.depth)
        apex = self.apex + other.apex
        out = self._like({}, apex=apex, depth=depth)
        terms: dict[Offset, int] = {}
        for o1, c1 in self.terms.items():
            d1 = out.depth_of(o1)
            if depth is not None and d1 > depth:
                continue
            for o2, c2 in other.terms.items():
                o = tuple(a + b for a, b in zip(o1, o2))
                if depth is not None and out._ht2 is not None and out.depth_of(o) > depth:
                    continue
                terms[o] = terms.get(o, 0) + c1 * c2
        out.terms = {o: c for o, c in terms.items() if c}
        return out

    __rmul__ = __mul__

    def truncate_depth(self, depth: int) -> FormalCharacter:
        new = depth if self.depth is None else min(depth, self.depth)
        return self._like(self.terms, depth=new)

    def filter(self, keep: Callable[[Weight], bool]) -> FormalCharacter:
        return self._like({o: c for o, c in self.terms.items() if keep(self.weight_of(o))})

    # ----- products with root factors -----
    def times_geometric(self, gamma: Weight) -> FormalCharacter:
        """Multiply by (1 - e^gamma)^{-1} = 1 + e^gamma + e^{2 gamma} + ..."""
        step = tuple(gamma[k] for k in self.indices)
        if self.depth_of(step) <= 0:
            raise DomainError("bad-root", f"{gamma} does not lower the depth")
        if self.depth is None:
            raise DomainError("untruncated", "geometric series needs a depth bound")
        by_layer: dict[int, list[Offset]] = {}
        terms = dict(self.terms)
        for o in terms:
            by_layer.setdefault(self.depth_of(o), []).append(o)
        for d in range(0, self.depth + 1):
            for o in by_layer.get(d, ()):
                c = terms.get(o, 0)
                if not c:
                    continue
                nxt = tuple(a + b for a, b in zip(o, step))
                nd = self.depth_of(nxt)
                if nd > self.depth:
                    continue
                if nxt not in terms:
                    by_layer.setdefault(nd, []).append(nxt)
                    terms[nxt] = 0
                terms[nxt] += c
        return self._like(terms)

    def times_binomial(self, gamma: Weight, sign: int = 1) -> FormalCharacter:
        """Multiply by (1 + sign * e^gamma)."""
        step = tuple(gamma[k] for k in self.indices)
        terms = dict(self.terms)
        for o, c in self.terms.items():
            nxt = tuple(a + b for a, b in zip(o, step))
            terms[nxt] = terms.get(nxt, 0) + sign * c
        return self._like(terms)

    def to_json(self) -> dict:
        rows = []
        for d, layer in self.layers().items():
            for w, c in sorted(layer.items(), key=lambda item: item[0].coeffs):
                rows.append([w.to_json(), c, d])
        return {"apex": self.apex.to_json(), "depth": self.depth,
                "spec": self.spec.to_json() if self.spec is not None else None, "terms": rows}


def _min_depth(a: int | None, b: int | None) -> int | None:
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


# ----- symmetric functions in named variables -----

def _interlacing(lam: tuple[int, ...], inner_bound: tuple[int, ...] = ()) -> Iterator[tuple[int, ...]]:
    """Partitions mu with lam_{i+1} <= mu_i <= lam_i and mu containing ``inner_bound``."""
    n = len(lam)

    def rec(i: int) -> Iterator[tuple[int, ...]]:
        if i == n:
            yield ()
            return
        lo = lam[i + 1] if i + 1 < n else 0
        lo = max(lo, inner_bound[i] if i < len(inner_bound) else 0)
        for v in range(lo, lam[i] + 1):
            for rest in rec(i + 1):
                if not rest or rest[0] <= v:
                    yield (v,) + rest

    for mu in rec(0):
        while mu and mu[-1] == 0:
            mu = mu[:-1]
        yield mu


@lru_cache(maxsize=None)
def _skew_schur_exps(lam: tuple[int, ...], nu: tuple[int, ...], k: int) -> tuple[tuple[tuple[int, ...], int], ...]:
    """Semistandard tableaux of shape lam/nu in k letters, grouped by content."""
    if any(nu[i] > lam[i] if i < len(lam) else nu[i] > 0 for i in range(len(nu))):
        return ()
    if k == 0:
        return (((), 1),) if lam == nu else ()
    out: dict[tuple[int, ...], int] = {}
    size = sum(lam)
    for mu in _interlacing(lam, nu):
        # cells of lam/mu form a horizontal strip filled with the letter k
        for exps, c in _skew_schur_exps(mu, nu, k - 1):
            key = exps + (size - sum(mu),)
            out[key] = out.get(key, 0) + c
    return tuple(sorted(out.items()))


def skew_schur_monomials(lam: Partition | Sequence[int], nu: Partition | Sequence[int], k: int) -> Monomials:
    lam, nu = as_partition(lam), as_partition(nu)
    if not lam.contains(nu):
        return {}
    if len(conjugate(lam).parts) and max((conjugate(lam)[j] - conjugate(nu)[j] for j in range(lam[0])), default=0) > k:
        return {}
    return dict(_skew_schur_exps(lam.parts, nu.parts, k))


def schur_monomials(lam: Partition | Sequence[int], k: int) -> Monomials:
    return skew_schur_monomials(lam, (), k)


def _h_monomials(r: int, k: int) -> Monomials:
    """Complete homogeneous symmetric polynomial h_r in k variables."""
    if r < 0:
        return {}
    out: Monomials = {}

    def rec(i: int, left: int, acc: tuple[int, ...]) -> None:
        if i == k - 1:
            out[acc + (left,)] = 1
            return
        for a in range(left + 1):
            rec(i + 1, left - a, acc + (a,))

    if k == 0:
        return {(): 1} if r == 0 else {}
    rec(0, r, ())
    return out


def _poly_mul(a: Monomials, b: Monomials) -> Monomials:
    out: Monomials = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            e = tuple(x + y for x, y in zip(e1, e2))
            out[e] = out.get(e, 0) + c1 * c2
    return {e: c for e, c in out.items() if c}


def jacobi_trudi_monomials(lam: Partition | Sequence[int], nu: Partition | Sequence[int], k: int) -> Monomials:
    """s_{lam/nu} as det(h_{lam_i - nu_j - i + j}) by Leibniz expansion."""
    lam, nu = as_partition(lam), as_partition(nu)
    size = len(lam)
    if size == 0:
        return {(0,) * k: 1}
    h_cache: dict[int, Monomials] = {}

    def h(r: int) -> Monomials:
        if r not in h_cache:
            h_cache[r] = _h_monomials(r, k)
        return h_cache[r]

    total: Monomials = {}
    for perm in permutations(range(size)):
        sign = 1
        for i in range(size):
            for j in range(i + 1, size):
                if perm[i] > perm[j]:
                    sign = -sign
        prod: Monomials = {(0,) * k: 1}
        for i in range(size):
            j = perm[i]
            factor = h(lam[i] - nu[j] - i + j)
            if not factor:
                prod = {}
                break
            prod = _poly_mul(prod, factor)
        for e, c in prod.items():
            total[e] = total.get(e, 0) + sign * c
    return {e: c for e, c in total.items() if c}


TABLEAU_LIMIT = 12


def _variables_character(mono: Monomials, variables: Sequence[int]) -> FormalCharacter:
    return FormalCharacter(None, Weight(), None, dict(mono), indices=variables)


def schur(lam: Partition | Sequence[int], variables: Sequence[int], method: str = "auto") -> FormalCharacter:
    """Schur polynomial s_lam(x_v : v in variables), x_v = e^{eps_v}."""
    return skew_schur(lam, (), variables, method)


def skew_schur(lam: Partition | Sequence[int], nu: Partition | Sequence[int], variables: Sequence[int],
               method: str = "auto") -> FormalCharacter:
    lam, nu = as_partition(lam), as_partition(nu)
    if not lam.contains(nu):
        raise DomainError("not-contained", f"{list(nu.parts)} is not contained in {list(lam.parts)}")
    k = len(variables)
    if method == "auto":
        method = "tableaux" if lam.size <= TABLEAU_LIMIT else "jacobi-trudi"
    if method == "tableaux":
        mono = skew_schur_monomials(lam, nu, k)
    elif method == "jacobi-trudi":
        mono = jacobi_trudi_monomials(lam, nu, k)
    else:
        raise DomainError("bad-method", f"unknown method {method!r}")
    return _variables_character(mono, variables)


def hook_schur_monomials(lam: Partition | Sequence[int], n_odd: int, n_even: int) -> Monomials:
    """hs_lam = sum_{mu in lam} s_mu(odd) s_{lam'/mu'}(even); exponents odd first."""
    lam = as_partition(lam)
    lam_c = conjugate(lam)
    out: Monomials = {}
    for mu in _subpartitions(lam):
        a = schur_monomials(mu, n_odd)
        if not a:
            continue
        b = skew_schur_monomials(lam_c, conjugate(mu), n_even)
        for e1, c1 in a.items():
            for e2, c2 in b.items():
                key = e1 + e2
                out[key] = out.get(key, 0) + c1 * c2
    return {e: c for e, c in out.items() if c}


def hook_schur(lam: Partition | Sequence[int], odd_vars: Sequence[int], even_vars: Sequence[int]) -> FormalCharacter:
    mono = hook_schur_monomials(lam, len(odd_vars), len(even_vars))
    return _variables_character(mono, tuple(odd_vars) + tuple(even_vars))


def _subpartitions(lam: Partition) -> Iterator[Partition]:
    def rec(i: int, cap: int) -> Iterator[tuple[int, ...]]:
        if i == len(lam):
            yield ()
            return
        for v in range(min(cap, lam[i]), -1, -1):
            if v == 0:
                yield ()
                continue
            for rest in rec(i + 1, v):
                yield (v,) + rest

    for parts in rec(0, lam[0] if len(lam) else 0):
        yield Partition(parts)


def specialize(ch: FormalCharacter, zero_vars: Iterable[int]) -> FormalCharacter:
    """Set x_v = 0 for the given variables (drop every term that uses them)."""
    zero = {i for i, k in enumerate(ch.indices) if k in set(zero_vars)}
    return ch._like({o: c for o, c in ch.terms.items() if all(o[i] == 0 for i in zero)})


def swap_variables(ch: FormalCharacter, a: int, b: int) -> FormalCharacter:
    i, j = ch.indices.index(a), ch.indices.index(b)
    terms = {}
    for o, c in ch.terms.items():
        lst = list(o)
        lst[i], lst[j] = lst[j], lst[i]
        terms[tuple(lst)] = c
    return ch._like(terms)


# ----- Lie-theoretic characters -----

def _tail_character(spec: RootSystemSpec, t: DominantTuple, apex_tail: Weight, depth: int) -> FormalCharacter:
    tail = spec.tail_indices
    lam = t.lam_plus
    if spec.tail == "even":
        variables = tail
        mono = schur_monomials(lam, len(tail))
    elif spec.tail == "super":
        variables = tail
        mono = schur_monomials(conjugate(lam), len(tail))
    else:
        odd = tuple(k for k in tail if k % 2)
        even = tuple(k for k in tail if k % 2 == 0)
        variables = odd + even
        mono = hook_schur_monomials(conjugate(lam), len(odd), len(even))
    out = FormalCharacter(spec, apex_tail, depth)
    pos = {k: i for i, k in enumerate(out.indices)}
    base = [0] * len(out.indices)
    for k in variables:
        base[pos[k]] = apex_tail[k]
    for exps, c in mono.items():
        off = list(-b for b in base)
        for k, e in zip(variables, exps):
            off[pos[k]] += e
        off_t = tuple(off)
        if out.depth_of(off_t) < 0:
            raise AssertionError(f"tail factor has a term above the apex: {exps}")
        if out._keeps(off_t):
            out.terms[off_t] = out.terms.get(off_t, 0) + c
    return out


def _reflection_roots(spec: RootSystemSpec, roots: Iterable[Weight]) -> list[Weight]:
    """Roots whose reflections generate the even Weyl group (2a for odd non-isotropic a)."""
    out = []
    for a in roots:
        if spec.parity(a) == 0:
            out.append(a)
        elif inner(a, a) != 0:
            out.append(a * 2)
    return out


def _orbit_with_signs(start: Weight, simple: Sequence[Weight]) -> dict[Weight, int]:
    signs = {start: 1}
    frontier = [start]
    while frontier:
        nxt = []
        for v in frontier:
            for a in simple:
                u = v - a * coroot_pairing(v, a)
                if u == v:
                    raise DomainError("singular", f"{v} is fixed by the reflection in {a}")
                if u not in signs:
                    signs[u] = -signs[v]
                    nxt.append(u)
                elif signs[u] != -signs[v]:
                    raise DomainError("singular", "orbit signs are inconsistent")
        frontier = nxt
    return signs


def _rho(spec: RootSystemSpec, positive: Iterable[Weight]) -> Weight:
    total = Weight()
    for a in positive:
        total = total + (a if spec.parity(a) == 0 else -a)
    return total * Fraction(1, 2)


def _true_weight(spec: RootSystemSpec, w: Weight) -> Weight:
    """Undo the central-extension shift: integer tail coordinates lose d, half-integer gain d."""
    d = w.level
    shift = {k: (-d if k % 2 == 0 else d) for k in spec.tail_indices}
    return Weight.make(list(w.coeffs) + list(shift.items()), 0)


def _ext_weight(spec: RootSystemSpec, w: Weight, level) -> Weight:
    shift = {k: (level if k % 2 == 0 else -level) for k in spec.tail_indices}
    return Weight.make(list(w.coeffs) + list(shift.items()), level)


def _weyl_kac(spec: RootSystemSpec, apex: Weight, positive: Sequence[Weight], simple: Sequence[Weight],
              depth: int, shifted: bool = False) -> FormalCharacter:
    """sum_w sgn(w) e^{w(lam+rho)-rho} * prod(1+e^{-a}) / prod(1-e^{-a}), to depth.

    With ``shifted`` the Weyl group acts on the level-corrected coordinates.
    """
    start = _true_weight(spec, apex) if shifted else apex
    rho = _rho(spec, positive)
    orbit = _orbit_with_signs(start + rho, _reflection_roots(spec, simple))
    numer = {}
    for v, sg in orbit.items():
        numer[_ext_weight(spec, v - rho, apex.level) if shifted else v - rho] = sg
    ch = FormalCharacter.from_weights(spec, numer, apex, depth)
    for a in positive:
        if spec.parity(a) == 0:
            ch = ch.times_geometric(-a)
        else:
            ch = ch.times_binomial(-a)
    return ch


def _head_character(spec: RootSystemSpec, t: DominantTuple, depth: int) -> FormalCharacter:
    apex = t.head_weight() + Weight.make((), t.level)
    simple = [spec.head_simple[y] for y in sorted(spec.Y0)]
    if not simple:
        ch = FormalCharacter(spec, apex, depth)
        ch.terms[(0,) * len(ch.indices)] = 1
        return ch
    head_positive = [a for a in spec.levi_positive if all(k < 0 for k in a.support)]
    return _weyl_kac(spec, apex, head_positive, simple, depth)


def levi_character(spec: RootSystemSpec, t: DominantTuple, depth: int = 0) -> FormalCharacter:
    """Character of the irreducible Levi module of highest weight t, to depth."""
    t.check(spec)
    lam = make_weight(spec, t)
    head = _head_character(spec, t, depth)
    tail_apex = Weight.make(((k, v) for k, v in lam.coeffs if k > 0), 0)
    tail = _tail_character(spec, t, tail_apex, depth)
    out = head * tail
    if out.apex != lam:
        raise AssertionError(f"Levi apex {out.apex} differs from {lam}")
    return out


def verma_character(spec: RootSystemSpec, t: DominantTuple, depth: int) -> FormalCharacter:
    """Levi character times prod_{u^-}(1 - e^g)^{-1} (even) and (1 + e^g) (odd)."""
    ch = levi_character(spec, t, depth)
    for g in spec.nilradical_negative:
        if spec.parity(g) == 0:
            ch = ch.times_geometric(g)
        else:
            ch = ch.times_binomial(g)
    return ch


def weyl_character_formula(spec: RootSystemSpec, t: DominantTuple, depth: int) -> FormalCharacter:
    """Finite-dimensional character over the whole Weyl group, to depth (oracle)."""
    if spec.tail != "even":
        raise DomainError("bad-spec", "the Weyl character formula oracle needs a classical spec")
    lam = make_weight_g(t, spec)
    true = _true_weight(spec, lam)
    for a in spec.simple_roots:
        b = a * 2 if spec.parity(a) and inner(a, a) != 0 else a
        val = coroot_pairing(true, b)
        if not isinstance(val, int) or val < 0:
            raise DomainError("not-dominant", f"<lambda, {b}^vee> = {val} is not in Z_+")
    return _weyl_kac(spec, lam, spec.positive_roots, spec.simple_roots, depth, shifted=True)


# ----- irreducible characters -----

def _cone_elements(spec: RootSystemSpec, depth: int) -> Iterator[tuple[Weight, int]]:
    """gamma in Z_+ Pi of height <= depth, with the height."""
    simple = spec.simple_roots

    def rec(i: int, left: int, acc: Weight, used: int) -> Iterator[tuple[Weight, int]]:
        if i == len(simple):
            yield acc, used
            return
        a = simple[i]
        cur = acc
        for c in range(left + 1):
            yield from rec(i + 1, left - c, cur, used + c)
            cur = cur + a

    yield from rec(0, depth, Weight(), 0)


def linked_candidates(spec: RootSystemSpec, t: DominantTuple, depth: int) -> list[tuple[DominantTuple, int]]:
    """Dominant tuples mu whose weight is lambda minus a cone element of height <= depth."""
    lam = make_weight(spec, t)
    out = []
    for gamma, height in _cone_elements(spec, depth):
        mu_w = lam - gamma
        try:
            mu = tuple_from_weight(spec, mu_w)
            mu.check(spec)
        except DomainError:
            continue
        out.append((mu, height))
    out.sort(key=lambda item: (item[1], str(item[0])))
    return out


def classical_partner(spec: RootSystemSpec, N: int) -> RootSystemSpec:
    return RootSystemSpec(spec.head, spec.m, "even", N, spec.Y0)


def irreducible_character(spec: RootSystemSpec, t: DominantTuple, depth: int,
                          convention: str = "kl") -> FormalCharacter:
    """ch L(lambda) = sum_mu a_{mu,lambda} ch Delta(mu), to depth, for any tail flavour."""
    from .coxeter_kl import kl_coefficients

    t.check(spec)
    cands = linked_candidates(spec, t, depth)
    if spec.tail == "even":
        N = spec.n
    else:
        N = max([1, len(t.lam_plus)] + [len(mu.lam_plus) for mu, _ in cands])
    coeffs = kl_coefficients(t, classical_partner(spec, N), N, [mu for mu, _ in cands], convention)
    lam = make_weight(spec, t)
    total = FormalCharacter.zero(spec, lam, depth)
    for mu, height in cands:
        a = coeffs.get(mu, 0)
        if a:
            part = verma_character(spec, mu, depth - height).rebase(lam, depth)
            total = total + part.scale(a)
    return total


# ----- projections and truncation -----

def _retag(ch: FormalCharacter, spec: RootSystemSpec, keep_index: Callable[[int], bool],
           apex: Weight | None) -> FormalCharacter:
    kept = {}
    for w, c in ch:
        if all(keep_index(k) for k in w.support):
            kept[w] = kept.get(w, 0) + c
    if apex is None:
        apex = ch.apex.restrict(keep_index)
    return FormalCharacter.from_weights(spec, kept, apex, None)


def project_T(ch: FormalCharacter, apex: Weight | None = None) -> FormalCharacter:
    """Keep the terms supported on head and integer indices; result lives on the even tail."""
    spec = _require_full(ch)
    return _retag(ch, spec.with_tail("even"), lambda k: k < 0 or k % 2 == 0, apex)


def project_Tbar(ch: FormalCharacter, apex: Weight | None = None) -> FormalCharacter:
    """Keep the terms supported on head and half-integer indices; result lives on the super tail."""
    spec = _require_full(ch)
    return _retag(ch, spec.with_tail("super"), lambda k: k < 0 or k % 2 == 1, apex)


def _require_full(ch: FormalCharacter) -> RootSystemSpec:
    if ch.spec is None or ch.spec.tail != "full":
        raise DomainError("bad-spec", "projections act on characters of the full tail")
    return ch.spec


def truncate_character(ch: FormalCharacter, target_n: int) -> FormalCharacter:
    """tr_n: keep terms with no eps_j for tail indices j > target_n."""
    spec = ch.spec
    if spec is None:
        raise DomainError("bad-spec", "truncation needs a root system")
    if target_n > spec.n:
        raise DomainError("bad-rank", f"cannot truncate rank {spec.n} to larger rank {target_n}")
    new_spec = spec.with_rank(target_n)
    top = 2 * target_n

    def fits(k: int) -> bool:
        return k < 0 or k <= top

    if not all(fits(k) for k in ch.apex.support):
        return FormalCharacter.zero(new_spec, ch.apex.restrict(fits), ch.depth)
    kept = {w: c for w, c in ch if all(fits(k) for k in w.support)}
    return FormalCharacter.from_weights(new_spec, kept, ch.apex, ch.depth)


def transfer_tuple_weight(spec: RootSystemSpec, t: DominantTuple) -> Weight:
    return make_weight(spec, t)
