"""Acceptance suite: ten criteria, one test each, one PASS/FAIL line each.

Run alone with ``pytest tests/test_acceptance.py -s`` (or execute this file)
to see the criterion lines interleaved; they are also repeated in the
terminal summary.
"""

import random
import time
from fractions import Fraction
from functools import lru_cache
from itertools import product

import pytest

from gradedsim import (
    INF,
    FixpointConfig,
    FixpointNotConverged,
    GradeDomain,
    MinGradeMatrix,
    Pseudometric,
    Relation,
    check_eps_bisimulation,
    check_metric_bisimulation,
    dawr_graded_similarity,
    final_language_check,
    flow_dominance,
    galois_L,
    galois_R,
    glued_from_graded,
    graded_bisimilarity,
    metric_bisimilarity,
    random_system,
    star_condition_probe,
    subset_dominance,
)
from gradedsim.dawr import check_da_simulation, check_dawr_graded_simulation, da_similarity
from gradedsim.grades import is_lax_monoidal, lax_monoidal_closure, slice
from gradedsim.ltsr import amortised_bisimilarity, check_amortised_bisimulation, check_lts_bisimulation, lts_bisimilarity
from gradedsim.mdp import check_mdp_simulation, mdp_similarity, shrink_to_graded_simulation
from gradedsim.corpus import mdp_seed_grades
from gradedsim.systems import Dawr, SizeParams

from oracles import as_floats, dawr_brute, naive_closure, post_fixed_union, random_pseudometric

UNIT = GradeDomain.UNIT
RESULTS = {}


def report(n, ok, detail):
    line = f"criterion {n:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
    RESULTS[n] = line
    print(line)
    assert ok, line


# ---------------------------------------------------------------- corpora


@lru_cache(maxsize=None)
def exhaustive_dawrs():
    """Every DAwR with at most 3 states, one symbol and rewards in {0, 1, 2}."""
    out = []
    for n in range(1, 4):
        states = tuple(f"s{i}" for i in range(n))
        for delta in product(range(n), repeat=n):
            for acc in range(1 << n):
                for rew in product(range(3), repeat=n):
                    out.append(Dawr(states, ("a",), tuple((t,) for t in delta),
                                    frozenset(i for i in range(n) if acc >> i & 1), tuple((r,) for r in rew)))
    return out


@lru_cache(maxsize=None)
def random_dawrs(count=200, n_max=5, k_max=2, r_max=3, base=1000):
    out = []
    for seed in range(base, base + count):
        rng = random.Random(seed)
        out.append(random_system("dawr", SizeParams(states=rng.randint(1, n_max), alphabet=rng.randint(1, k_max),
                                                    max_reward=r_max), seed))
    return out


def sized(kind, seed, n_max, **kw):
    rng = random.Random(f"{kind}:{seed}")
    return random_system(kind, SizeParams(states=rng.randint(1, n_max), alphabet=rng.randint(1, 2), **kw), seed)


@lru_cache(maxsize=None)
def criterion1_outcome():
    start = time.perf_counter()
    corpus = exhaustive_dawrs() + random_dawrs()
    bad = [a for a in corpus if as_floats(dawr_graded_similarity(a)) != dawr_brute(a)]
    return corpus, bad, time.perf_counter() - start


# ---------------------------------------------------------------- criteria


def test_c01_dawr_exactness():
    corpus, bad, elapsed = criterion1_outcome()
    n_ex = len(exhaustive_dawrs())
    report(1, not bad and elapsed < 30,
           f"DAwR similarity = brute force on {n_ex} exhaustive + {len(corpus) - n_ex} random systems, "
           f"{len(bad)} mismatches, {elapsed:.1f}s (limit 30s)")


def _perturbed(check, g, rng, domain=GradeDomain.NAT):
    # raise some finite grades, then delete failing pairs until the check passes
    rows = [[v if v is INF or rng.random() < 0.6 else v + rng.randint(1, 3) for v in row] for row in g.entries]
    while (w := check(MinGradeMatrix(rows, domain))) is not None:
        rows[w.pair[0]][w.pair[1]] = INF
    return MinGradeMatrix(rows, domain)


def test_c02_soundness_all_kinds():
    start = time.perf_counter()
    failures, checked = [], 0

    def sound(g, system):
        nonlocal checked
        checked += 1
        try:
            glued_from_graded(g, system)
        except Exception as exc:  # any failure counts against the criterion
            failures.append((system.kind, repr(exc)))

    for seed in range(200):
        rng = random.Random(seed)
        a = random_dawrs()[seed]
        g = dawr_graded_similarity(a)
        sound(g, a)
        sound(_perturbed(lambda m: check_dawr_graded_simulation(a, m), g, rng), a)

        l = sized("ltsr", seed, 4, max_reward=3, max_branching=3)
        g = amortised_bisimilarity(l)
        sound(g, l)
        sound(_perturbed(lambda m: check_amortised_bisimulation(l, m), g, rng), l)

        m = sized("mdp", seed, 4, max_denominator=8)
        sound(shrink_to_graded_simulation(m, mdp_seed_grades(m, seed)), m)

        p = sized("lmp", seed, 5, max_denominator=8)
        sound(graded_bisimilarity(p), p)
    elapsed = time.perf_counter() - start
    report(2, not failures and elapsed < 60,
           f"collapse passes the ungraded checker for {checked - len(failures)}/{checked} graded simulations "
           f"(200 systems per kind), {elapsed:.1f}s (limit 60s)")


def test_c03_star_condition_sound_direction():
    corpus, _, _ = criterion1_outcome()
    start = time.perf_counter()
    pairs, bad = 0, []
    for a in corpus:
        g = dawr_graded_similarity(a)
        for s, t in product(range(a.size), repeat=2):
            if g[s, t] is INF:
                continue
            pairs += 1
            w = star_condition_probe(a, s, t, g[s, t], 12)
            if w is not None:
                bad.append((a, s, t, w))
    report(3, not bad, f"{pairs} finite pairs over {len(corpus)} systems pass the word-length-12 probe, "
                       f"{len(bad)} violations, {time.perf_counter() - start:.1f}s")


def test_c04_closure_matches_rule_iteration():
    start = time.perf_counter()
    rng = random.Random(4)
    bad = 0
    for _ in range(100):
        m = MinGradeMatrix([[rng.choice([INF, INF, rng.randint(0, 20)]) for _ in range(6)] for _ in range(6)])
        bad += as_floats(lax_monoidal_closure(m)) != naive_closure(as_floats(m))
    elapsed = time.perf_counter() - start
    report(4, bad == 0 and elapsed < 5, f"100 random 6x6 closures, {bad} mismatches, {elapsed:.2f}s (limit 5s)")


def test_c05_galois_laws():
    rng = random.Random(5)
    lr_bad = mono_bad = unit_bad = 0
    for _ in range(100):
        d = Pseudometric(random_pseudometric(rng, rng.randint(1, 8)))
        lr_bad += galois_L(galois_R(d)) != d
        mono_bad += not is_lax_monoidal(galois_R(d))
    radii = [Fraction(k, 24) for k in range(25)]
    for _ in range(100):
        n = rng.randint(1, 6)
        raw = [[INF] * n for _ in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                raw[i][j] = raw[j][i] = rng.choice([INF, Fraction(rng.randint(0, 8), 8)])
        m = lax_monoidal_closure(MinGradeMatrix(raw, UNIT))
        back = galois_R(galois_L(m))
        unit_bad += not all(slice(m, r) <= slice(back, r) for r in radii)
    ok = lr_bad == mono_bad == unit_bad == 0
    report(5, ok, f"L.R = id failures {lr_bad}/100, non-monoidal R outputs {mono_bad}/100, "
                  f"unit containment failures {unit_bad}/100")


@lru_cache(maxsize=None)
def translation_lmps():
    return [sized("lmp", seed, 5, max_denominator=8) for seed in range(5000, 5100)]


def _metric_candidates(l, rng):
    n = l.size
    bis = metric_bisimilarity(l)
    found = [bis, Pseudometric.discrete(n)]
    for _ in range(4):
        r = random_pseudometric(rng, n)
        found.append(Pseudometric([[max(u, v) for u, v in zip(ru, rv)] for ru, rv in zip(bis.d, r)]))
        found.append(Pseudometric(r))
    return [d for d in found if check_metric_bisimulation(l, d) is None]


def _eps_candidates(l, rng):
    n = l.size
    found = [graded_bisimilarity(l), MinGradeMatrix.diagonal(n, UNIT)]
    for _ in range(4):
        raw = [[INF] * n for _ in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                raw[i][j] = raw[j][i] = rng.choice([INF, Fraction(rng.randint(0, 8), 8)])
        found.append(lax_monoidal_closure(MinGradeMatrix(raw, UNIT)))
    return [m for m in found if check_eps_bisimulation(l, m) is None]


def test_c06_metric_and_graded_correspondence():
    rng = random.Random(6)
    r_checked = r_bad = l_checked = l_bad = 0
    for l in translation_lmps():
        for d in _metric_candidates(l, rng):
            r_checked += 1
            r_bad += check_eps_bisimulation(l, galois_R(d)) is not None
        for m in _eps_candidates(l, rng):
            l_checked += 1
            l_bad += check_metric_bisimulation(l, galois_L(m)) is not None
    report(6, r_bad == l_bad == 0 and r_checked >= 100 and l_checked >= 100,
           f"R(metric bisimulation) passes: {r_checked - r_bad}/{r_checked}; "
           f"L(eps-bisimulation) passes: {l_checked - l_bad}/{l_checked} over 100 LMPs")


def test_c07_bisimilarities_coincide():
    corpus = list(translation_lmps()) + [sized("lmp", seed, 5, max_denominator=8) for seed in range(200)]
    cfg = FixpointConfig(iteration_cap=64)
    overruns = mismatches = 0
    for l in corpus:
        try:
            d = metric_bisimilarity(l, cfg)
        except FixpointNotConverged:
            overruns += 1
            continue
        mismatches += galois_R(d) != graded_bisimilarity(l, cfg)
    report(7, overruns == 0 and mismatches == 0,
           f"R(metric bisimilarity) = graded bisimilarity on {len(corpus) - overruns} LMPs, "
           f"{mismatches} mismatches, {overruns} cap overruns at 64 iterations")


def test_c08_flow_matches_subsets():
    rng = random.Random(8)
    start = time.perf_counter()
    disagree = violated = 0
    for _ in range(500):
        n = rng.randint(1, 10)
        vecs = []
        for _side in range(2):
            den = rng.randint(1, 16)
            w = [0] * n
            for _unit in range(rng.randint(0, den)):
                w[rng.randrange(n)] += 1
            vecs.append([Fraction(x, den) for x in w])
        rel = Relation([[rng.random() < 0.25 for _ in range(n)] for _ in range(n)])
        a = subset_dominance(vecs[0], vecs[1], rel) is None
        b = flow_dominance(vecs[0], vecs[1], rel) is None
        disagree += a != b
        violated += not a
    elapsed = time.perf_counter() - start
    report(8, disagree == 0 and elapsed < 10,
           f"500 instances ({violated} violated), {disagree} disagreements, {elapsed:.2f}s (limit 10s)")


def test_c09_language_sanity():
    bad = []
    for seed in range(100):
        rng = random.Random(seed)
        a = random_system("da", SizeParams(states=rng.randint(1, 6), alphabet=rng.randint(1, 2)), seed)
        if not final_language_check(a).ok:
            bad.append(seed)
    report(9, not bad, f"mutual similarity = language equality (length |S|^2) on {100 - len(bad)}/100 DAs")


def test_c10_relation_fixpoints_exhaustive():
    counts, bad = {}, []
    engines = {
        "da": (da_similarity, check_da_simulation),
        "ltsr": (lts_bisimilarity, check_lts_bisimulation),
        "mdp": (mdp_similarity, check_mdp_simulation),
    }
    for kind, (engine, check) in engines.items():
        counts[kind] = 0
        for n in (1, 2, 3):
            for seed in range(12):
                s = random_system(kind, SizeParams(states=n, alphabet=1 + seed % 2, max_branching=2), seed)
                union = post_fixed_union(lambda bits: check(s, Relation(bits)) is None, n)
                counts[kind] += 1
                if engine(s).bits.tolist() != union.tolist():
                    bad.append((kind, n, seed))
    report(10, not bad, "fixpoint = union of all post-fixed relations (2^(n^2) enumeration, n <= 3): "
                        + ", ".join(f"{k} {v - sum(b[0] == k for b in bad)}/{v}" for k, v in counts.items()))


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-s", "-q"]))
