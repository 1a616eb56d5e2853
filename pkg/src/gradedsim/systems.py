"""The five finite system kinds, their JSON format, and a seeded generator.

States and symbols are referenced by name in documents and by dense index in
memory.  Probabilities and MDP rewards are exact fractions written as
``"p/q"`` strings; DAwR and LTS rewards are JSON integers.  See
``docs/format.md`` for the normative description of the file format.
"""

from __future__ import annotations

import hashlib
import json
import random
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import ParameterError, ParseError, ValidationError

KINDS = ("da", "dawr", "ltsr", "mdp", "lmp")

# (target, weight) pairs sorted by target; zero weights are dropped
SubDist = tuple


@dataclass(frozen=True)
class Da:
    states: tuple
    alphabet: tuple
    delta: tuple  # delta[s][a] -> state index
    accepting: frozenset

    kind = "da"

    @property
    def size(self) -> int:
        return len(self.states)

    def run(self, s: int, word) -> int:
        for a in word:
            s = self.delta[s][a]
        return s

    def accepts(self, s: int, word) -> bool:
        return self.run(s, word) in self.accepting

    def underlying(self) -> Da:
        return Da(self.states, self.alphabet, self.delta, self.accepting)


@dataclass(frozen=True)
class Dawr(Da):
    rewards: tuple = ()  # rewards[s][a] -> natural

    kind = "dawr"


@dataclass(frozen=True)
class Ltsr:
    states: tuple
    alphabet: tuple
    trans: tuple  # trans[s][a] -> frozenset of (target, reward)

    kind = "ltsr"

    @property
    def size(self) -> int:
        return len(self.states)


@dataclass(frozen=True)
class Lmp:
    states: tuple
    alphabet: tuple
    delta: tuple  # delta[s][a] -> SubDist

    kind = "lmp"

    @property
    def size(self) -> int:
        return len(self.states)

    def masses(self, s: int, a: int) -> tuple:
        """Dense weight vector of ``delta[s][a]``."""
        vec = [Fraction(0)] * self.size
        for t, w in self.delta[s][a]:
            vec[t] = w
        return tuple(vec)


@dataclass(frozen=True)
class Mdp(Lmp):
    rewards: tuple = ()  # rewards[s][a] -> non-negative Fraction

    kind = "mdp"

    def underlying(self) -> Lmp:
        return Lmp(self.states, self.alphabet, self.delta)


SystemDescription = Union[Da, Dawr, Ltsr, Mdp, Lmp]


# ---------------------------------------------------------------- parsing

_FIELDS = {
    "da": {"kind", "states", "alphabet", "accepting", "transitions"},
    "dawr": {"kind", "states", "alphabet", "accepting", "transitions"},
    "ltsr": {"kind", "states", "alphabet", "transitions"},
    "mdp": {"kind", "states", "alphabet", "transitions"},
    "lmp": {"kind", "states", "alphabet", "transitions"},
}
_TRANS_FIELDS = {
    "da": {"from", "symbol", "to"},
    "dawr": {"from", "symbol", "to", "reward"},
    "ltsr": {"from", "symbol", "to", "reward"},
    "mdp": {"from", "symbol", "distribution", "reward"},
    "lmp": {"from", "symbol", "distribution"},
}
_RATIONAL = re.compile(r"\s*(\d+)\s*(?:/\s*(\d+)\s*)?$")


def parse_rational(text, where="value") -> Fraction:
    """Parse a non-negative ``"p/q"`` (or ``"p"``) string exactly."""
    if not isinstance(text, str):
        raise ValidationError(f"{where}: rationals must be strings like \"1/2\", got {text!r}")
    m = _RATIONAL.match(text)
    if not m:
        raise ValidationError(f"{where}: malformed rational {text!r}")
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise ValidationError(f"{where}: zero denominator in {text!r}")
    return Fraction(int(m.group(1)), den)


def format_rational(q: Fraction) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def _natural(v, where):
    if isinstance(v, bool) or not isinstance(v, int) or v < 0:
        raise ValidationError(f"{where}: expected a natural number, got {v!r}")
    return v


def _names(doc, key, allow_empty=False):
    v = doc.get(key)
    if not isinstance(v, list) or not all(isinstance(x, str) for x in v):
        raise ValidationError(f"field {key!r} must be a list of names")
    if not v and not allow_empty:
        raise ValidationError(f"field {key!r} must not be empty")
    if len(set(v)) != len(v):
        dup = next(x for x in v if v.count(x) > 1)
        raise ValidationError(f"duplicate name {dup!r} in {key!r}")
    return tuple(v)


def load_json(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from exc


def parse(text: str) -> SystemDescription:
    """Parse and validate a system document."""
    return from_document(load_json(text))


def from_document(doc) -> SystemDescription:
    if not isinstance(doc, dict):
        raise ValidationError("a system document must be a JSON object")
    kind = doc.get("kind")
    if kind not in KINDS:
        raise ValidationError(f"unknown system kind {kind!r}; expected one of {KINDS}")
    unknown = set(doc) - _FIELDS[kind]
    if unknown:
        raise ValidationError(f"unknown field(s) {sorted(unknown)} for kind {kind!r}")
    missing = _FIELDS[kind] - set(doc)
    if missing:
        raise ValidationError(f"missing field(s) {sorted(missing)}")
    states = _names(doc, "states")
    alphabet = _names(doc, "alphabet", allow_empty=True)
    sidx = {s: i for i, s in enumerate(states)}
    aidx = {a: i for i, a in enumerate(alphabet)}
    trans = doc["transitions"]
    if not isinstance(trans, list):
        raise ValidationError("field 'transitions' must be a list")

    def state(name, where):
        if name not in sidx:
            raise ValidationError(f"{where}: unknown state {name!r}")
        return sidx[name]

    def symbol(name, where):
        if name not in aidx:
            raise ValidationError(f"{where}: unknown symbol {name!r}")
        return aidx[name]

    n, k = len(states), len(alphabet)
    entries = {}
    ltsr = [[set() for _ in range(k)] for _ in range(n)]
    for pos, t in enumerate(trans):
        where = f"transitions[{pos}]"
        if not isinstance(t, dict):
            raise ValidationError(f"{where}: expected an object")
        extra = set(t) - _TRANS_FIELDS[kind]
        if extra:
            raise ValidationError(f"{where}: unknown field(s) {sorted(extra)}")
        absent = _TRANS_FIELDS[kind] - set(t)
        if absent:
            raise ValidationError(f"{where}: missing field(s) {sorted(absent)}")
        s = state(t["from"], where)
        a = symbol(t["symbol"], where)
        if kind == "ltsr":
            edge = (state(t["to"], where), _natural(t["reward"], where))
            if edge in ltsr[s][a]:
                raise ValidationError(f"{where}: duplicate transition")
            ltsr[s][a].add(edge)
            continue
        if (s, a) in entries:
            raise ValidationError(f"{where}: duplicate transition for ({t['from']!r}, {t['symbol']!r})")
        if kind in ("da", "dawr"):
            target = state(t["to"], where)
            entries[s, a] = (target, _natural(t["reward"], where) if kind == "dawr" else None)
        else:
            dist = t["distribution"]
            if not isinstance(dist, dict):
                raise ValidationError(f"{where}: 'distribution' must be an object")
            weights = []
            for name, w in dist.items():
                q = parse_rational(w, f"{where} weight of {name!r}")
                if q:
                    weights.append((state(name, where), q))
            mass = sum((w for _, w in weights), Fraction(0))
            if mass > 1:
                raise ValidationError(
                    f"{where}: mass exceeds 1 ({format_rational(mass)}) for "
                    f"({t['from']!r}, {t['symbol']!r})"
                )
            rew = parse_rational(t["reward"], f"{where} reward") if kind == "mdp" else None
            entries[s, a] = (tuple(sorted(weights)), rew)

    if kind == "ltsr":
        return Ltsr(states, alphabet, tuple(tuple(frozenset(x) for x in row) for row in ltsr))
    if kind != "lmp":
        for s in range(n):
            for a in range(k):
                if (s, a) not in entries:
                    raise ValidationError(f"missing transition for ({states[s]!r}, {alphabet[a]!r})")
    if kind in ("da", "dawr"):
        acc = doc["accepting"]
        if not isinstance(acc, list):
            raise ValidationError("field 'accepting' must be a list of names")
        accepting = frozenset(state(x, "accepting") for x in acc)
        delta = tuple(tuple(entries[s, a][0] for a in range(k)) for s in range(n))
        if kind == "da":
            return Da(states, alphabet, delta, accepting)
        rewards = tuple(tuple(entries[s, a][1] for a in range(k)) for s in range(n))
        return Dawr(states, alphabet, delta, accepting, rewards)
    delta = tuple(tuple(entries.get((s, a), ((), None))[0] for a in range(k)) for s in range(n))
    if kind == "lmp":
        return Lmp(states, alphabet, delta)
    rewards = tuple(tuple(entries[s, a][1] for a in range(k)) for s in range(n))
    return Mdp(states, alphabet, delta, rewards)


def to_document(system: SystemDescription) -> dict:
    st, al = system.states, system.alphabet
    doc = {"kind": system.kind, "states": list(st), "alphabet": list(al)}
    if isinstance(system, Da):
        doc["accepting"] = [st[i] for i in sorted(system.accepting)]
    trans = []
    for s in range(len(st)):
        for a in range(len(al)):
            if isinstance(system, Da):
                t = {"from": st[s], "symbol": al[a], "to": st[system.delta[s][a]]}
                if isinstance(system, Dawr):
                    t["reward"] = system.rewards[s][a]
                trans.append(t)
            elif isinstance(system, Ltsr):
                for target, r in sorted(system.trans[s][a]):
                    trans.append({"from": st[s], "symbol": al[a], "to": st[target], "reward": r})
            else:
                t = {
                    "from": st[s],
                    "symbol": al[a],
                    "distribution": {st[x]: format_rational(w) for x, w in system.delta[s][a]},
                }
                if isinstance(system, Mdp):
                    t["reward"] = format_rational(system.rewards[s][a])
                trans.append(t)
    doc["transitions"] = trans
    return doc


def serialize(system: SystemDescription) -> str:
    return json.dumps(to_document(system), indent=2) + "\n"


def system_hash(system: SystemDescription) -> str:
    canon = json.dumps(to_document(system), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canon.encode()).hexdigest()


def summary(system: SystemDescription) -> str:
    return f"{system.kind} with {len(system.states)} states over {len(system.alphabet)} symbols"


# ---------------------------------------------------------------- generation

CAPS = {"states": 16, "alphabet": 4, "max_reward": 8, "max_denominator": 16, "max_branching": 4}


@dataclass(frozen=True)
class SizeParams:
    """Upper limits for :func:`random_system`.

    ``states`` and ``alphabet`` are exact sizes.  ``max_reward`` bounds
    natural rewards (and MDP reward numerators), ``max_denominator`` bounds
    probability denominators, and ``max_branching`` bounds LTS transitions
    per state and symbol.
    """

    states: int = 3
    alphabet: int = 1
    max_reward: int = 2
    max_denominator: int = 4
    max_branching: int = 2

    def validate(self):
        if self.states < 1:
            raise ParameterError("states must be >= 1")
        if self.alphabet < 0:
            raise ParameterError("alphabet must be >= 0")
        if self.max_reward < 0 or self.max_denominator < 1 or self.max_branching < 0:
            raise ParameterError("reward, denominator and branching bounds must be non-negative")
        for key, cap in CAPS.items():
            if getattr(self, key) > cap:
                raise ParameterError(f"{key}={getattr(self, key)} exceeds cap {cap}")


def _subdist(rng: random.Random, n: int, max_den: int) -> SubDist:
    den = rng.randint(1, max_den)
    total = rng.randint(0, den)
    weights = [0] * n
    for _ in range(total):
        weights[rng.randrange(n)] += 1
    return tuple((t, Fraction(w, den)) for t, w in enumerate(weights) if w)


def random_system(kind: str, size_params: SizeParams = SizeParams(), seed: int = 0) -> SystemDescription:
    """Deterministic pseudo-random system of the given kind."""
    if kind not in KINDS:
        raise ParameterError(f"unknown kind {kind!r}")
    p = size_params
    p.validate()
    rng = random.Random(f"{kind}:{seed}")
    n, k = p.states, p.alphabet
    states = tuple(f"s{i}" for i in range(n))
    alphabet = tuple("abcd"[:k])
    if kind in ("da", "dawr"):
        delta = tuple(tuple(rng.randrange(n) for _ in range(k)) for _ in range(n))
        accepting = frozenset(i for i in range(n) if rng.random() < 0.6)
        if kind == "da":
            return Da(states, alphabet, delta, accepting)
        rewards = tuple(tuple(rng.randint(0, p.max_reward) for _ in range(k)) for _ in range(n))
        return Dawr(states, alphabet, delta, accepting, rewards)
    if kind == "ltsr":
        trans = tuple(
            tuple(
                frozenset(
                    (rng.randrange(n), rng.randint(0, p.max_reward))
                    for _ in range(rng.randint(0, p.max_branching))
                )
                for _ in range(k)
            )
            for _ in range(n)
        )
        return Ltsr(states, alphabet, trans)
    delta = tuple(tuple(_subdist(rng, n, p.max_denominator) for _ in range(k)) for _ in range(n))
    if kind == "lmp":
        return Lmp(states, alphabet, delta)
    rewards = tuple(
        tuple(Fraction(rng.randint(0, p.max_reward), rng.randint(1, p.max_denominator)) for _ in range(k))
        for _ in range(n)
    )
    return Mdp(states, alphabet, delta, rewards)


def validate(system: SystemDescription) -> None:
    """Re-check the type invariants of an in-memory system."""
    from_document(to_document(system))
    n, k = len(system.states), len(system.alphabet)
    if isinstance(system, Lmp):
        for s in range(n):
            for a in range(k):
                d = system.delta[s][a]
                if sum((w for _, w in d), Fraction(0)) > 1 or any(w <= 0 for _, w in d):
                    raise ValidationError(f"bad subdistribution at ({s}, {a})")
                if list(d) != sorted(d) or len({t for t, _ in d}) != len(d):
                    raise ValidationError(f"non-canonical subdistribution at ({s}, {a})")
