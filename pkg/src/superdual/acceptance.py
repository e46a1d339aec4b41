"""The acceptance suite, shared by ``superdual selftest`` and the test-suite.

Each check returns a :class:`CheckResult`; none of them raise on a
mathematical mismatch, so a report always lists every item.
"""

from __future__ import annotations

import random
import time
from collections.abc import Callable
from dataclasses import dataclass, field

from . import characters as chars
from . import coxeter_kl as kl
from . import extremal as ex
from . import oddreflect as odd
from .errors import DomainError
from .partitions import Partition, conjugate, partitions_up_to
from .rootdata import (HEADS, DominantTuple, RootSystemSpec, Weight, fits, inner, make_weight, make_weight_g,
                       make_weight_gbar, make_weight_gtilde)


@dataclass
class CheckResult:
    number: int
    title: str
    ok: bool
    detail: str
    seconds: float = 0.0
    budget: float = 0.0

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        return f"[{status}] {self.number:2d}. {self.title}: {self.detail}"


@dataclass
class _Emitted:
    """Irreducible characters produced by suites 7 and 8, consumed by 10."""

    items: list[tuple[str, chars.FormalCharacter]] = field(default_factory=list)


EMITTED = _Emitted()

EXAMPLE_BOREL = "d2+,d1-,e1-,e2+,d3+,d4+,e4+,e3+,d5-"
EXAMPLE_LAMBDA = (14, 11, 8, 8, 7, 4, 3, 2)
EXAMPLE_P = (14, 11, 6, 6, 3)
EXAMPLE_Q = (6, 6, 3, 2)
EXAMPLE_WEIGHT = ex.SignedWeight((-11, 14, 6, 6, -3), (-6, 6, 2, 3))


def check_example() -> tuple[bool, str]:
    family, n, m = ex.parse_algebra("osp(9|10)")
    seq = ex.parse_borel(EXAMPLE_BOREL, family, n, m)
    frob = ex.block_frobenius(EXAMPLE_LAMBDA, seq)
    weight = ex.extremal_weight_B(EXAMPLE_LAMBDA, seq)
    blocks_ok = seq.blocks == ((2, 2, 1), (2, 2, 0)) and seq.xi == (1, -1, 1, 1, -1) and seq.eta == (-1, 1, 1, 1)
    ok = blocks_ok and frob.p == EXAMPLE_P and frob.q == EXAMPLE_Q and weight == EXAMPLE_WEIGHT
    return ok, f"p={frob.p} q={frob.q} weight {weight}"


def check_path_independence(pairs: int = 120, seed: int = 2024) -> tuple[bool, str]:
    rng = random.Random(seed)
    done = bad = 0
    families = ("odd", "even", "gl")
    while done < pairs:
        family = families[done % 3]
        n, m = rng.randint(1, 5), rng.randint(1, 5)
        seq = ex.random_borel(n, m, family, rng)
        lam = ex.random_hook(n, m, 14, rng)
        variant = "plus"
        if family == "even":
            variant = ex.pipe_variant(seq) if seq.shape == "pipe" else rng.choice(ex.VARIANTS)
        closed = ex.extremal_weight(lam, seq, variant).to_epsilon()
        walk = ex.reflection_walk(lam, seq, variant)
        done += 1
        if walk.weight != closed or not walk.borel_matches:
            bad += 1
    return bad == 0, f"{done} random (hook, Borel) pairs, {bad} mismatches"


def _specs_for_sweep(tail: str, n: int, heads=HEADS, ms=(0, 1, 2)):
    for head in heads:
        for m in ms:
            try:
                yield RootSystemSpec(head, m, tail, n)
            except DomainError:
                continue


def _clean(tr: odd.Trace) -> bool:
    return tr.state.is_positive_system() and odd.nilradical_preserved(tr.state)


def check_odd_sequences(max_size: int = 8) -> tuple[bool, str]:
    count = bad = 0
    for n in range(1, 5):
        for spec in _specs_for_sweep("full", n + 1):
            for lam in partitions_up_to(max_size):
                t = DominantTuple([0] * spec.m, lam, 0)
                start = make_weight_gtilde(t)
                if len(lam) <= n:
                    tr = odd.trace_sequence(spec, start, odd.btilde_c_sequence(n))
                    count += 1
                    if tr.result != make_weight_g(t) or not _clean(tr):
                        bad += 1
                if lam[0] <= n:
                    tr = odd.trace_sequence(spec, start, odd.btilde_s_sequence(n))
                    count += 1
                    if tr.result != make_weight_gbar(t) or not _clean(tr):
                        bad += 1
    return bad == 0, f"{count} sequence applications, {bad} mismatches"


def check_hook_schur(max_size: int = 6) -> tuple[bool, str]:
    odd_vars, even_vars = (1, 3, 5), (2, 4, 6)
    count = bad = 0
    for lam in partitions_up_to(max_size):
        hs = chars.hook_schur(lam, odd_vars, even_vars)
        lam_c = conjugate(lam)
        expect = chars.schur(lam_c, even_vars, "tableaux")
        jt = chars.schur(lam_c, even_vars, "jacobi-trudi")
        got = chars.specialize(hs, odd_vars)
        ok = got.as_dict() == expect.as_dict() == jt.as_dict()
        for group in (odd_vars, even_vars):
            for a, b in zip(group, group[1:]):
                ok = ok and chars.swap_variables(hs, a, b) == hs
        count += 1
        bad += not ok
    return bad == 0, f"{count} partitions in 3+3 variables, {bad} failures"


def check_projection_shadow(max_size: int = 4, depth: int = 6) -> tuple[bool, str]:
    count = bad = 0
    for head in HEADS:
        for m in (0, 1, 2):
            for lam in partitions_up_to(max_size):
                n = max(len(lam), lam[0], 2)
                try:
                    full = RootSystemSpec(head, m, "full", n)
                    even = RootSystemSpec(head, m, "even", n)
                    sup = RootSystemSpec(head, m, "super", n)
                except DomainError:
                    continue
                t = DominantTuple([0] * m, lam, 0)
                apex = make_weight_gtilde(t)

                def shallow(w: Weight) -> bool:
                    return full.height(apex - w) <= depth

                verma = chars.verma_character(full, t, depth)
                ok = (chars.project_T(verma).as_dict()
                      == chars.verma_character(even, t, depth).filter(shallow).as_dict())
                ok = ok and (chars.project_Tbar(verma).as_dict()
                             == chars.verma_character(sup, t, depth).filter(shallow).as_dict())
                count += 1
                bad += not ok
    return bad == 0, f"{count} (head, m, lambda) cases at depth {depth}, {bad} mismatches"


def check_kl_oracle(random_pairs: int = 1000, seed: int = 7) -> tuple[bool, str]:
    bad = 0
    checked = 0
    for tag, n, sample in (("B", 3, None), ("D", 4, random_pairs)):
        els = [e.window for e in kl.elements(tag, n)]
        oracle = kl.RPolynomialOracle(tag, n)
        eng = kl.engine(tag, n)
        if sample is None:
            pairs = [(x, w) for x in els for w in els]
        else:
            rng = random.Random(seed)
            pairs = [(rng.choice(els), rng.choice(els)) for _ in range(sample)]
        for x, w in pairs:
            p = eng.polynomial(x, w)
            checked += 1
            if p != oracle.p(x, w):
                bad += 1
                continue
            lx, lw = kl.SignedPerm(x, tag).length(), kl.SignedPerm(w, tag).length()
            if x == w and p != kl.ONE:
                bad += 1
            if x != w and p.degree is not None and 2 * p.degree > lw - lx - 1:
                bad += 1
        eng.flush()
    return bad == 0, f"{checked} pairs (B3 exhaustive, D4 random), {bad} failures"


def _wcf_cases() -> list[tuple[str, RootSystemSpec]]:
    out = []
    for head, rank in (("b", 2), ("c", 2), ("b", 3), ("c", 3)):
        name = f"{head.upper()}{rank}"
        plain = RootSystemSpec(head, rank, "even", 0)
        out.append((name, plain))
        labels = sorted(plain.head_labels)
        out.append((name, RootSystemSpec(head, rank, "even", 0, {labels[0]})))
        out.append((name, RootSystemSpec(head, 0, "even", rank)))
    return out


def _dominant_samples(spec: RootSystemSpec, want: int) -> list[DominantTuple]:
    found = []
    if spec.m:
        rank = spec.m
        pool = []
        for total in range(0, 4 * rank + 1):
            for parts in partitions_up_to(total):
                if len(parts) <= rank and parts.size == total:
                    pool.append(tuple(-p for p in parts.parts) + (0,) * (rank - len(parts)))
        for head in pool:
            for order in (head, head[::-1]):
                t = DominantTuple(order, (), 0)
                if t not in found and _wcf_ok(spec, t):
                    found.append(t)
                if len(found) >= want:
                    return found
    else:
        for total in range(0, 8):
            for lam in partitions_up_to(total):
                if lam.size != total or len(lam) > spec.n:
                    continue
                for level in range(lam[0], lam[0] + 4):
                    t = DominantTuple((), lam, level)
                    if _wcf_ok(spec, t):
                        found.append(t)
                        break
                if len(found) >= want:
                    return found
    return found


def _wcf_ok(spec: RootSystemSpec, t: DominantTuple) -> bool:
    try:
        chars.weyl_character_formula(spec, t, 0)
    except DomainError:
        return False
    return True


def check_wcf(depth: int = 8, per_spec: int = 10) -> tuple[bool, str]:
    count = bad = 0
    short = []
    for name, spec in _wcf_cases():
        samples = _dominant_samples(spec, per_spec)
        if len(samples) < per_spec:
            short.append(f"{name}/{spec.describe()}")
        for t in samples:
            wcf = chars.weyl_character_formula(spec, t, depth)
            irr = chars.irreducible_character(spec, t, depth)
            EMITTED.items.append((f"{spec.describe()} {t}", irr))
            count += 1
            bad += irr != wcf
    ok = bad == 0 and not short
    detail = f"{count} characters over B2, C2, B3, C3 with 3 Levi choices each, {bad} mismatches"
    if short:
        detail += f"; too few dominant weights for {short}"
    return ok, detail


OSP12_LEVELS = ((0, 0), (1, 0), (0, 1), (1, 1), (2, 1), (3, 2), (0, 2), (4, 3))


def _osp12_brute(spec: RootSystemSpec, t: DominantTuple, depth: int) -> dict[Weight, int]:
    """Singular vectors in the rank-one Verma module, found layer by layer.

    With f the odd root vector, h f^j v = (c - j a) f^j v and
    e f^j v = k_j f^{j-1} v where k_j = (c - (j-1) a) - k_{j-1}; the
    irreducible quotient stops at the first j with k_j = 0.
    """
    lam = make_weight(spec, t)
    alpha = spec.simple_roots[0]
    c = inner(Weight.make({1: lam[1] + lam.level}), alpha)
    a = inner(alpha, alpha)
    out = {lam: 1}
    k = 0
    for j in range(1, depth + 1):
        k = (c - (j - 1) * a) - k
        if k == 0:
            break
        out[lam + Weight.make({1: j})] = 1
    return out


def check_osp12(depth: int = 10) -> tuple[bool, str]:
    spec = RootSystemSpec("b", 0, "super", 1)
    count = bad = 0
    for k, level in OSP12_LEVELS:
        t = DominantTuple((), (1,) * k, level)
        irr = chars.irreducible_character(spec, t, depth)
        EMITTED.items.append((f"osp(1|2) {t}", irr))
        count += 1
        bad += irr.as_dict() != _osp12_brute(spec, t, depth)
    return bad == 0 and count >= 5, f"{count} dominant weights to depth {depth}, {bad} mismatches"


STABLE_CASES = (
    ("b", 1, (0,), (1, 1), 1),
    ("c", 1, (-1,), (2, 1), 1),
    ("d", 1, (-1,), (1, 1), 2),
    ("b_bullet", 0, (), (2, 1), 0),
    ("c", 0, (), (1, 1), 1),
    ("d", 0, (), (1,), 1),
)


def _random_character(spec: RootSystemSpec, t: DominantTuple, depth: int, rng: random.Random):
    verma = chars.verma_character(spec, t, depth)
    weights = {w: rng.randint(-3, 3) or 1 for w, _ in verma}
    return chars.FormalCharacter.from_weights(spec, weights, verma.apex, depth)


def check_stabilization(depth: int = 3, seed: int = 11) -> tuple[bool, str]:
    notes = []
    bad = 0
    for head, m, hc, lam, level in STABLE_CASES:
        spec = RootSystemSpec(head, m, "even", max(len(lam), 2))
        t = DominantTuple(hc, lam, level)
        N = kl.stable_rank(t, depth)
        mats = [kl.transition_matrix(t, spec, k, depth, check_stable=False).nonzero() for k in (N, N + 1, N + 2)]
        if not mats[0] == mats[1] == mats[2]:
            bad += 1
    notes.append(f"{len(STABLE_CASES)} matrices stable over N, N+1, N+2")
    rng = random.Random(seed)
    comp = 0
    for tail in ("even", "super", "full"):
        for head in ("b", "c", "d"):
            try:
                spec = RootSystemSpec(head, 1, tail, 4)
            except DomainError:
                continue
            ch = _random_character(spec, DominantTuple([0], (1,), 3), 3, rng)
            for l_, k_, n_ in ((4, 3, 1), (4, 2, 1), (3, 2, 2)):
                base = chars.truncate_character(ch, l_)
                two = chars.truncate_character(chars.truncate_character(base, k_), n_)
                one = chars.truncate_character(base, n_)
                comp += 1
                bad += two.as_dict() != one.as_dict()
    notes.append(f"{comp} truncation compositions")
    branches = 0
    for tail in ("even", "super", "full"):
        for head in ("b", "c", "d"):
            for lam in ((1,), (2, 1), (3,), (1, 1, 1)):
                try:
                    big = RootSystemSpec(head, 1, tail, 4)
                except DomainError:
                    continue
                t = DominantTuple([0], lam, 4)
                verma = chars.verma_character(big, t, 3)
                for k in (1, 2, 3):
                    try:
                        small = RootSystemSpec(head, 1, tail, k)
                    except DomainError:
                        continue
                    got = chars.truncate_character(verma, k)
                    if fits(small, t):
                        want = chars.verma_character(small, t, 3).as_dict()
                    else:
                        want = {}
                    branches += 1
                    bad += got.as_dict() != want
    notes.append(f"{branches} truncation branches")
    return bad == 0, ", ".join(notes) + f", {bad} failures"


def check_positivity() -> tuple[bool, str]:
    if not EMITTED.items:
        check_wcf()
        check_osp12()
    bad = [name for name, ch in EMITTED.items if ch.apex_multiplicity != 1 or ch.min_multiplicity() < 0]
    return not bad, f"{len(EMITTED.items)} irreducible characters, {len(bad)} violations"


CHECKS: tuple[tuple[int, str, Callable[[], tuple[bool, str]], float], ...] = (
    (1, "worked osp(9|10) example", check_example, 1),
    (2, "path independence of extremal weights", check_path_independence, 60),
    (3, "odd reflection sequences", check_odd_sequences, 60),
    (4, "hook Schur specialisation and symmetry", check_hook_schur, 60),
    (5, "projection of full-tail Verma characters", check_projection_shadow, 300),
    (6, "KL recursion against R-polynomials", check_kl_oracle, 600),
    (7, "Weyl character formula oracle", check_wcf, 900),
    (8, "rank-one osp(1|2) oracle", check_osp12, 60),
    (9, "stabilisation and truncation", check_stabilization, 120),
    (10, "positivity gate", check_positivity, 0),
)


def run_check(number: int) -> CheckResult:
    for num, title, fn, budget in CHECKS:
        if num == number:
            start = time.perf_counter()
            try:
                ok, detail = fn()
            except Exception as exc:  # a crash is reported as a failure
                ok, detail = False, f"raised {type(exc).__name__}: {exc}"
            seconds = time.perf_counter() - start
            if budget and seconds > budget:
                ok, detail = False, detail + f" (took {seconds:.1f}s, budget {budget:.0f}s)"
            return CheckResult(num, title, ok, detail, seconds, budget)
    raise KeyError(number)


def run_all(numbers=None) -> list[CheckResult]:
    EMITTED.items.clear()
    wanted = [c[0] for c in CHECKS] if numbers is None else list(numbers)
    return [run_check(k) for k in wanted]
