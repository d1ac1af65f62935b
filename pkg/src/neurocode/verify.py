"""Batch verifiers: exhaustive and randomized sweeps over code space that
exercise the library's propositions and report violations with replayable
counterexamples."""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .codes import (
    ADD_TRIVIAL_OFF,
    ADD_TRIVIAL_ON,
    DELETE,
    DUPLICATE,
    INCLUSION,
    PERMUTATION,
    Code,
    ElementaryMap,
    apply_elementary_map,
    cc_family,
    complete_iso,
    cr_family,
    is_isomorphism,
    submasks,
    union_closure_condition,
)
from .graphs import ccg, diameter, grg, is_connected, is_complete, is_regular
from .ideal import canonical_form, predict_cf
from .realization import (
    AMBIENT_LINE,
    AMBIENT_UNION,
    IntervalCover,
    cc_m_intervals,
    cf_from_intervals,
    code_of_intervals,
    code_of_segments,
    cr_k_polygon,
)
from fractions import Fraction

DEFAULT_SEED = 1729
EXHAUSTIVE_MAX_NEURONS = 4


@dataclass
class Check:
    name: str
    passed: bool
    detail: str
    counterexample: dict | None = None


@dataclass
class SuiteResult:
    suite: str
    params: dict
    checks: list[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)


def _code_from_index(n: int, idx: int) -> Code:
    masks = [p for p in range(1 << n) if idx >> p & 1]
    return Code.from_masks(n, masks)


def _map_flag(spec: ElementaryMap) -> str:
    if spec.kind == PERMUTATION:
        return "--permute %s" % ",".join(str(i) for i in spec.perm)
    if spec.kind == ADD_TRIVIAL_ON:
        return "--add-on"
    if spec.kind == ADD_TRIVIAL_OFF:
        return "--add-off"
    if spec.kind == DUPLICATE:
        return f"--duplicate {spec.neuron}"
    if spec.kind == DELETE:
        return f"--delete {spec.neuron}"
    return f"--include '{spec.target.to_text()}'"


def _code_counterexample(code: Code, suite: str) -> dict:
    return {
        "code": code.to_text(),
        "rerun": f'neurocode graph ccg "{code.to_text()}"',
        "suite": suite,
    }


def _map_counterexample(code: Code, spec: ElementaryMap) -> dict:
    return {
        "code": code.to_text(),
        "map": spec.describe(),
        "rerun": f'neurocode map {_map_flag(spec)} "{code.to_text()}"',
    }


def _parity_violation(code: Code) -> bool:
    if len(code) <= 3 or len(code) % 2 == 0:
        return False
    g = ccg(code)
    return is_regular(g, 2) and is_connected(g)


def _union_closure_violation(code: Code) -> bool:
    if not union_closure_condition(code):
        return False
    g = ccg(code)
    return not (is_connected(g) and diameter(g) <= 2)


_SWEEP_PREDICATES = {
    "parity": _parity_violation,
    "union-closure": _union_closure_violation,
}


def _sweep_chunk(args: tuple[str, int, int, int]) -> list[int]:
    suite, n, lo, hi = args
    violation = _SWEEP_PREDICATES[suite]
    return [idx for idx in range(lo, hi) if violation(_code_from_index(n, idx))]


def _run_sweep(suite: str, n: int, exhaustive: bool, sample: int | None,
               seed: int, jobs: int) -> tuple[int, list[int]]:
    """Run an all-codes sweep; returns (scanned, violating code indices)."""
    total = 1 << (1 << n)
    if exhaustive:
        if n > EXHAUSTIVE_MAX_NEURONS:
            raise ValueError(f"exhaustive sweeps are capped at n={EXHAUSTIVE_MAX_NEURONS}; "
                             f"use sampling for n={n}")
        indices = range(1, total)
    else:
        count = sample if sample is not None else 10000
        rng = random.Random(seed)
        indices = [rng.randrange(1, total) for _ in range(count)]
    if jobs > 1 and exhaustive:
        chunk = max(1024, (total - 1) // (jobs * 8) + 1)
        tasks = [(suite, n, lo, min(lo + chunk, total))
                 for lo in range(1, total, chunk)]
        bad: list[int] = []
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for part in pool.map(_sweep_chunk, tasks):
                bad.extend(part)
        return total - 1, sorted(bad)
    violation = _SWEEP_PREDICATES[suite]
    bad = [idx for idx in indices if violation(_code_from_index(n, idx))]
    return len(indices), sorted(bad)


def parity_suite(n: int = 3, exhaustive: bool = True, sample: int | None = None,
                 seed: int = DEFAULT_SEED, jobs: int = 1) -> SuiteResult:
    """Connected 2-regular containment graphs on more than 3 codewords must
    have evenly many codewords."""
    scanned, bad = _run_sweep("parity", n, exhaustive, sample, seed, jobs)
    counter = _code_counterexample(_code_from_index(n, bad[0]), "parity") if bad else None
    result = SuiteResult("parity", {"n": n, "exhaustive": exhaustive, "sample": sample,
                                    "seed": seed})
    result.checks.append(Check(
        f"parity-n{n}", not bad,
        f"{scanned} codes scanned, {len(bad)} violations", counter))
    return result


def union_closure_suite(n: int = 3, exhaustive: bool = True, sample: int | None = None,
                        seed: int = DEFAULT_SEED, jobs: int = 1) -> SuiteResult:
    """Pairwise unions landing in the code's complex force a connected
    containment graph of diameter at most 2."""
    scanned, bad = _run_sweep("union-closure", n, exhaustive, sample, seed, jobs)
    counter = _code_counterexample(_code_from_index(n, bad[0]), "union-closure") if bad else None
    result = SuiteResult("union-closure", {"n": n, "exhaustive": exhaustive,
                                           "sample": sample, "seed": seed})
    result.checks.append(Check(
        f"union-closure-n{n}", not bad,
        f"{scanned} codes scanned, {len(bad)} violations", counter))
    return result


def _random_code(rng: random.Random, n: int) -> Code:
    m = rng.randint(1, 1 << n)
    return Code.from_masks(n, rng.sample(range(1 << n), m))


def _random_chain_code(rng: random.Random, n: int) -> Code:
    order = list(range(n))
    rng.shuffle(order)
    m = rng.randint(1, n + 1)
    sizes = sorted(rng.sample(range(n + 1), m))
    masks = []
    for s in sizes:
        mask = 0
        for i in order[:s]:
            mask |= 1 << i
        masks.append(mask)
    return Code.from_masks(n, masks)


def _random_spec(rng: random.Random, code: Code,
                 kinds: list[str] | None = None) -> ElementaryMap:
    n = code.n
    if kinds is None:
        kinds = [PERMUTATION, ADD_TRIVIAL_ON, ADD_TRIVIAL_OFF, DUPLICATE, INCLUSION]
        if n >= 2:
            kinds.append(DELETE)
    kind = rng.choice(kinds)
    if kind == PERMUTATION:
        perm = list(range(1, n + 1))
        rng.shuffle(perm)
        return ElementaryMap.permutation(perm)
    if kind == ADD_TRIVIAL_ON:
        return ElementaryMap.add_trivial_on()
    if kind == ADD_TRIVIAL_OFF:
        return ElementaryMap.add_trivial_off()
    if kind == DUPLICATE:
        return ElementaryMap.duplicate(rng.randint(1, n))
    if kind == DELETE:
        return ElementaryMap.delete(rng.randint(1, n))
    extra = rng.sample(range(1 << n), min(1 << n, rng.randint(1, 4)))
    words = set(code.masks) | set(extra)
    return ElementaryMap.inclusion(Code.from_masks(n, words))


def preserve_connected_suite(trials: int = 250, seed: int = DEFAULT_SEED,
                             max_n: int = 6) -> SuiteResult:
    """Elementary maps are morphisms, so connected containment graphs must
    stay connected in the image."""
    rng = random.Random(seed)
    hits = 0
    counter = None
    bad = 0
    for _ in range(trials):
        code = _random_code(rng, rng.randint(1, max_n))
        spec = _random_spec(rng, code)
        if not is_connected(ccg(code)):
            continue
        hits += 1
        image, _ = apply_elementary_map(code, spec)
        if not is_connected(ccg(image)):
            bad += 1
            if counter is None:
                counter = _map_counterexample(code, spec)
    result = SuiteResult("preserve-connected", {"trials": trials, "seed": seed,
                                                "max_n": max_n})
    result.checks.append(Check(
        "preserve-connected", bad == 0,
        f"{trials} pairs, {hits} with connected domain, {bad} violations", counter))
    return result


def preserve_complete_suite(trials: int = 250, seed: int = DEFAULT_SEED,
                            max_n: int = 6) -> SuiteResult:
    """Images of complete codes under elementary maps stay complete."""
    rng = random.Random(seed)
    counter = None
    bad = 0
    for _ in range(trials):
        code = _random_chain_code(rng, rng.randint(1, max_n))
        spec = _random_spec(rng, code)
        assert is_complete(ccg(code))
        image, _ = apply_elementary_map(code, spec)
        if not is_complete(ccg(image)):
            bad += 1
            if counter is None:
                counter = _map_counterexample(code, spec)
    result = SuiteResult("preserve-complete", {"trials": trials, "seed": seed,
                                               "max_n": max_n})
    result.checks.append(Check(
        "preserve-complete", bad == 0,
        f"{trials} complete codes mapped, {bad} violations", counter))
    return result


def _all_chain_codes(n: int):
    """Every strictly increasing sequence of subsets of [n], as a code on n."""
    full = (1 << n) - 1
    stack = [(mask, (mask,)) for mask in range(full + 1)]
    while stack:
        last, chain = stack.pop()
        yield Code.from_masks(n, chain)
        rest = full ^ last
        for t in submasks(rest):
            if t:
                stack.append((last | t, chain + (last | t,)))


def complete_iso_suite(max_n: int = 5) -> SuiteResult:
    """Every complete code is isomorphic to the chain code of its size via
    the constructed sorting map."""
    counter = None
    scanned = 0
    bad = 0
    for n in range(1, max_n + 1):
        for code in _all_chain_codes(n):
            scanned += 1
            f = complete_iso(code)
            if not is_isomorphism(f):
                bad += 1
                if counter is None:
                    counter = _code_counterexample(code, "complete-iso")
    result = SuiteResult("complete-iso", {"max_n": max_n})
    result.checks.append(Check(
        f"complete-iso-n{max_n}", bad == 0,
        f"{scanned} complete codes enumerated, {bad} failures", counter))
    return result


CF_THEOREM_KINDS = (PERMUTATION, ADD_TRIVIAL_ON, ADD_TRIVIAL_OFF, DUPLICATE, DELETE)


def cf_theorems_suite(trials: int = 200, seed: int = DEFAULT_SEED,
                      max_n: int = 6) -> SuiteResult:
    """The five canonical-form transformation rules, replayed against the
    canonical form of the actual image code."""
    result = SuiteResult("cf-theorems", {"trials": trials, "seed": seed, "max_n": max_n})
    for kind in CF_THEOREM_KINDS:
        rng = random.Random(f"{seed}:{kind}")
        bad = 0
        counter = None
        min_n = 2 if kind == DELETE else 1
        for _ in range(trials):
            code = _random_code(rng, rng.randint(min_n, max_n))
            spec = _random_spec(rng, code, kinds=[kind])
            predicted = predict_cf(canonical_form(code), spec)
            image, _ = apply_elementary_map(code, spec)
            if predicted != canonical_form(image):
                bad += 1
                if counter is None:
                    counter = _map_counterexample(code, spec)
        result.checks.append(Check(
            f"cf-{kind}", bad == 0, f"{trials} trials, {bad} mismatches", counter))
    return result


def grg_families_suite(max_m: int = 10, max_k: int = 10) -> SuiteResult:
    """Relationship graphs of the named families: edgeless for chains,
    a single cycle for the cyclic codes."""
    result = SuiteResult("grg-families", {"max_m": max_m, "max_k": max_k})
    bad_m = []
    for m in range(3, max_m + 1):
        g = grg(canonical_form(cc_family(m)))
        if g.edges or list(g.vertices) != list(range(1, m)):
            bad_m.append(m)
    result.checks.append(Check(
        "chain-grg-disconnected", not bad_m,
        f"m=3..{max_m}: edgeless graph on m-1 vertices",
        {"m": bad_m[0], "rerun": f"neurocode graph grg --family cc:{bad_m[0]}"} if bad_m else None))
    bad_k = []
    for k in range(4, max_k + 1):
        g = grg(canonical_form(cr_family(k)))
        if not (len(g.vertices) == k and is_connected(g) and is_regular(g, 2)):
            bad_k.append(k)
    result.checks.append(Check(
        "cycle-grg-2regular", not bad_k,
        f"k=4..{max_k}: connected 2-regular graph on k vertices",
        {"k": bad_k[0], "rerun": f"neurocode graph grg --family cr:{bad_k[0]}"} if bad_k else None))
    return result


def _random_interval_cover(rng: random.Random, max_n: int = 6) -> IntervalCover:
    n = rng.randint(1, max_n)
    intervals = []
    for _ in range(n):
        a = Fraction(rng.randint(-16, 16), rng.randint(1, 4))
        width = Fraction(rng.randint(1, 12), rng.randint(1, 4))
        intervals.append((a, a + width))
    ambient = rng.choice((AMBIENT_LINE, AMBIENT_UNION))
    return IntervalCover(tuple(intervals), ambient)


def realizations_suite(max_family: int = 12, random_covers: int = 100,
                       seed: int = DEFAULT_SEED) -> SuiteResult:
    """Exact realized codes of the two constructive families, plus the
    cover-to-canonical-form theorem on random interval covers."""
    result = SuiteResult("realizations", {"max_family": max_family,
                                          "random_covers": random_covers, "seed": seed})
    bad_m = [m for m in range(2, max_family + 1)
             if code_of_intervals(cc_m_intervals(m)) != cc_family(m)]
    result.checks.append(Check(
        "interval-chain-family", not bad_m,
        f"m=2..{max_family}: interval covers realize the chain codes",
        {"m": bad_m[0]} if bad_m else None))
    bad_k = [k for k in range(3, max_family + 1)
             if code_of_segments(cr_k_polygon(k)) != cr_family(k)]
    result.checks.append(Check(
        "segment-cycle-family", not bad_k,
        f"k=3..{max_family}: polygon edges realize the cyclic codes",
        {"k": bad_k[0]} if bad_k else None))
    rng = random.Random(seed)
    bad = 0
    counter = None
    for _ in range(random_covers):
        cover = _random_interval_cover(rng)
        realized = code_of_intervals(cover)
        if cf_from_intervals(cover) != canonical_form(realized):
            bad += 1
            if counter is None:
                counter = {"cover": [[str(a), str(b)] for a, b in cover.intervals],
                           "ambient": cover.ambient, "code": realized.to_text()}
    result.checks.append(Check(
        "random-interval-cf", bad == 0,
        f"{random_covers} random covers, {bad} canonical-form mismatches", counter))
    return result


SUITES = {
    "parity": parity_suite,
    "union-closure": union_closure_suite,
    "preserve-connected": preserve_connected_suite,
    "preserve-complete": preserve_complete_suite,
    "complete-iso": complete_iso_suite,
    "cf-theorems": cf_theorems_suite,
    "grg-families": grg_families_suite,
    "realizations": realizations_suite,
}
