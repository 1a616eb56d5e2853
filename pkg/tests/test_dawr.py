import json
import random
from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from gradedsim import (
    INF,
    MinGradeMatrix,
    Relation,
    ShapeError,
    accumulated_reward,
    check_da_simulation,
    check_dawr_graded_simulation,
    da_similarity,
    dawr_graded_similarity,
    from_family,
    parse,
    random_system,
    star_condition_probe,
)
from gradedsim.grades import slice
from gradedsim.systems import SizeParams

from oracles import as_floats, dawr_brute, language_inclusion, reward_along, words


def da(states, accepting, delta, rewards=None):
    syms = sorted({x for row in delta.values() for x in row})
    d = {"kind": "dawr" if rewards else "da", "states": states, "alphabet": syms, "accepting": accepting,
         "transitions": []}
    for s, row in delta.items():
        for x, t in row.items():
            tr = {"from": s, "symbol": x, "to": t}
            if rewards:
                tr["reward"] = rewards[s][x]
            d["transitions"].append(tr)
    return parse(json.dumps(d))


def rand_dawr(seed, n_max=5, k_max=2, r_max=3):
    r = random.Random(seed)
    return random_system("dawr", SizeParams(states=r.randint(1, n_max), alphabet=r.randint(1, k_max),
                                            max_reward=r_max), seed)


# ---------------------------------------------------------------- ungraded


def test_identity_is_simulation():
    for seed in range(20):
        a = random_system("da", SizeParams(states=4, alphabet=2), seed)
        assert check_da_simulation(a, Relation.identity(4)) is None


def test_acceptance_witness():
    a = da(["s", "t"], ["s"], {"s": {"a": "s"}, "t": {"a": "t"}})
    w = check_da_simulation(a, Relation.from_pairs(2, [(0, 1)]))
    assert w.kind == "acceptance" and w.pair == (0, 1)


def test_carrier_mismatch():
    a = da(["s"], ["s"], {"s": {"a": "s"}})
    with pytest.raises(ShapeError):
        check_da_simulation(a, Relation.identity(2))


def test_all_accepting_self_loops_full():
    a = da(["s", "t", "u"], ["s", "t", "u"], {x: {"a": x} for x in "stu"})
    assert da_similarity(a) == Relation.full(3)


def test_two_state_language_example():
    a = da(["s0", "s1"], ["s0"], {"s0": {"a": "s0"}, "s1": {"a": "s1"}})
    sim = da_similarity(a)
    assert (1, 0) in sim and (0, 1) not in sim


@pytest.mark.parametrize("seed", range(40))
def test_similarity_equals_bounded_language_inclusion(seed):
    r = random.Random(seed)
    k = r.randint(1, 2)
    n = r.randint(1, 5 if k == 1 else 4)
    a = random_system("da", SizeParams(states=n, alphabet=k), seed)
    sim = da_similarity(a)
    assert check_da_simulation(a, sim) is None
    assert sim.bits.tolist() == language_inclusion(a, n * n).tolist()


# ---------------------------------------------------------------- rewards


def test_accumulated_reward_empty_word():
    a = da(["s", "t"], ["s"], {"s": {"a": "t"}, "t": {"a": "s"}}, {"s": {"a": 2}, "t": {"a": 2}})
    assert accumulated_reward(a, 0, "") == 0
    assert accumulated_reward(a, 1, "") is None


def test_accumulated_reward_two_state_loop():
    a = da(["s", "t"], ["s", "t"], {"s": {"a": "t"}, "t": {"a": "s"}}, {"s": {"a": 2}, "t": {"a": 2}})
    assert accumulated_reward(a, 0, "aa") == 4


def test_accumulated_reward_unknown_symbol():
    a = da(["s"], ["s"], {"s": {"a": "s"}}, {"s": {"a": 1}})
    with pytest.raises(ValueError):
        accumulated_reward(a, 0, "b")


@given(st.integers(0, 10**6), st.lists(st.integers(0, 1), max_size=8))
def test_accumulated_reward_matches_recurrence(seed, word):
    a = random_system("dawr", SizeParams(states=4, alphabet=2, max_reward=5), seed)
    total, end = reward_along(a, 0, word)
    got = accumulated_reward(a, 0, [a.alphabet[x] for x in word])
    assert got == (total if end in a.accepting else None)


# ---------------------------------------------------------------- graded check


def test_diagonal_passes(pq):
    assert check_dawr_graded_simulation(pq, MinGradeMatrix.diagonal(2)) is None


def test_pq_zero_grade_fails_on_successor(pq):
    w = check_dawr_graded_simulation(pq, MinGradeMatrix([[0, 0], [INF, 0]]))
    assert w.kind == "successor" and w.pair == (0, 1) and w.symbol == "a"
    assert "-1" in w.detail


def test_graded_domain_mismatch(pq):
    from gradedsim import GradeDomain

    with pytest.raises(ShapeError):
        check_dawr_graded_simulation(pq, MinGradeMatrix.diagonal(2, GradeDomain.RATIONAL))


def test_pq_similarity(pq):
    assert dawr_graded_similarity(pq) == MinGradeMatrix([[0, INF], [0, 0]])


@pytest.mark.parametrize("seed", range(60))
def test_similarity_self_consistent_and_exact(seed):
    a = rand_dawr(seed)
    g = dawr_graded_similarity(a)
    assert all(g[s, s] == 0 for s in range(a.size))
    assert check_dawr_graded_simulation(a, g) is None
    assert as_floats(g) == dawr_brute(a)


def _clauses_at(a, fam, n, s, t):
    # fam(m) -> set of pairs at grade m
    if s in a.accepting and t not in a.accepting:
        return False
    for x in range(len(a.alphabet)):
        r0, r1 = a.rewards[s][x], a.rewards[t][x]
        if r0 > n + r1 or (a.delta[s][x], a.delta[t][x]) not in fam(n - r0 + r1):
            return False
    return True


@pytest.mark.parametrize("seed", range(20))
def test_clauses_hold_at_every_grade_above_minimal(seed):
    a = rand_dawr(seed, n_max=4)
    g = dawr_graded_similarity(a)
    top = max(g.finite_values()) + 4

    def fam(m):
        return set(slice(g, m).pairs())

    for n in range(top):
        for s, t in fam(n):
            assert _clauses_at(a, fam, n, s, t)


@pytest.mark.parametrize("seed", range(30))
def test_envelope_of_explicit_simulation_passes(seed):
    a = rand_dawr(seed, n_max=4, r_max=2)
    rng = random.Random(seed)
    n, top = a.size, 6
    fam = {m: {p for p in product(range(n), repeat=2) if rng.random() < 0.8} for m in range(top + 1)}
    changed = True
    while changed:
        changed = False
        for m in fam:
            for s, t in list(fam[m]):
                if not _clauses_at(a, lambda k: fam.get(k, set()), m, s, t):
                    fam[m].discard((s, t))
                    changed = True
    pairs = [(m, Relation.from_pairs(n, rel)) for m, rel in fam.items()]
    assert check_dawr_graded_simulation(a, from_family(pairs)) is None


# ---------------------------------------------------------------- probe


def test_probe_pq_example(pq):
    assert star_condition_probe(pq, 0, 1, 3, 6) == ("a",) * 4


def test_probe_same_state_ok(pq):
    assert star_condition_probe(pq, 1, 1, 0, 10) is None


def test_probe_at_minimal_grades(pq):
    g = dawr_graded_similarity(pq)
    assert star_condition_probe(pq, 1, 0, g[1, 0], 12) is None


def _probe_brute(a, s, t, n, max_len):
    for w in words(len(a.alphabet), max_len):
        end_s, end_t = s, t
        deficit, over = 0, False
        for x in w:
            deficit += a.rewards[end_s][x] - a.rewards[end_t][x]
            over = over or deficit > n
            end_s, end_t = a.delta[end_s][x], a.delta[end_t][x]
        if end_s in a.accepting and (over or end_t not in a.accepting):
            return tuple(a.alphabet[x] for x in w)
    return None


@pytest.mark.parametrize("seed", range(40))
def test_probe_matches_word_enumeration(seed):
    a = rand_dawr(seed, n_max=4)
    rng = random.Random(seed)
    for _ in range(4):
        s, t = rng.randrange(a.size), rng.randrange(a.size)
        n = rng.randint(0, 4)
        assert star_condition_probe(a, s, t, n, 6) == _probe_brute(a, s, t, n, 6)


def test_probe_rejects_negative_length(pq):
    with pytest.raises(ValueError):
        star_condition_probe(pq, 0, 1, 0, -1)
