"""Membership deciders for the subregular language families.

Each decider evaluates a language relative to its declared alphabet and
returns a three-valued verdict.  Families without a known complete
decision procedure (SYDEF, 2COM, UF) may answer Unknown; their Yes
answers always carry a certificate that re-verifies against the defining
equation.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field, fields

from . import automata, regex as rx
from .automata import (
    CardinalityClass,
    Dfa,
    cardinality_class,
    complement,
    concat_nfa,
    determinize,
    determinize_minimize,
    dfa_to_regex,
    enumerate_words,
    epsilon_dfa,
    equivalent,
    intersect,
    left_word_quotient,
    minimize,
    residual,
    reverse_nfa,
    star_nfa,
    subset,
    to_nfa,
    transition_monoid,
    universe_dfa,
)
from .language import LanguageHandle


class Family(enum.Enum):
    MON = "MON"
    FIN = "FIN"
    NIL = "NIL"
    COMB = "COMB"
    DEF = "DEF"
    SYDEF = "SYDEF"
    SUF = "SUF"
    ORD = "ORD"
    COMM = "COMM"
    CIRC = "CIRC"
    NC = "NC"
    SF = "SF"
    PS = "PS"
    UF = "UF"
    STAR = "STAR"
    LCOM = "LCOM"
    RCOM = "RCOM"
    TWOCOM = "2COM"

    def __str__(self) -> str:
        return self.value


def family_from_name(name: str) -> Family:
    for f in Family:
        if f.value == name or f.name == name:
            return f
    raise ValueError(f"unknown family {name!r}")


class Outcome(enum.Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"


@dataclass
class Verdict:
    family: Family
    outcome: Outcome
    certificate: dict | None = None
    reason: str | None = None

    def to_json(self) -> dict:
        out = {"family": self.family.value, "outcome": self.outcome.value}
        if self.certificate is not None:
            out["certificate"] = self.certificate
        if self.reason is not None:
            out["reason"] = self.reason
        return out


@dataclass
class ClassifierConfig:
    ord_state_cap: int = 10          # order search on the minimal DFA
    ord_split_extra: int = 2         # extra states tried beyond minimal
    ord_search_budget: int = 60000   # shared node budget for all order searches
    twocom_bound: int = 2
    twocom_subset_cap: int = 4096
    sydef_bound: int = 2
    sydef_state_cap: int = 4096
    def_iteration_cap: int = 4096
    def_word_cap: int = 1 << 16
    monoid_cap: int = 10 ** 6

    def replace(self, **kw) -> "ClassifierConfig":
        vals = {f.name: getattr(self, f.name) for f in fields(self)}
        vals.update(kw)
        return ClassifierConfig(**vals)


DEFAULT_CONFIG = ClassifierConfig()


class CertificateError(Exception):
    pass


class ConsistencyError(Exception):
    """A family implication required by the hierarchy was violated."""


def _yes(family, certificate=None, reason=None):
    return Verdict(family, Outcome.YES, certificate, reason)


def _no(family, reason=None):
    return Verdict(family, Outcome.NO, None, reason)


def _unknown(family, reason):
    return Verdict(family, Outcome.UNKNOWN, None, reason)


# ---------------------------------------------------------------------------
# Individual deciders


def _classify_mon(l, config):
    ok = equivalent(l.dfa, universe_dfa(l.alphabet))
    return _yes(Family.MON) if ok else _no(Family.MON)


def _classify_fin(l, config):
    ok = cardinality_class(l.dfa) is not CardinalityClass.INFINITE
    return _yes(Family.FIN) if ok else _no(Family.FIN)


def _classify_nil(l, config):
    if cardinality_class(l.dfa) is not CardinalityClass.INFINITE:
        return _yes(Family.NIL)
    if cardinality_class(complement(l.dfa)) is not CardinalityClass.INFINITE:
        return _yes(Family.NIL)
    return _no(Family.NIL)


def _classify_comb(l, config):
    x = [a for a in l.alphabet if l.accepts(a)]
    target = rx.cat(rx.star(rx.finite_language_regex(l.alphabet)),
                    rx.finite_language_regex(x))
    if equivalent(l.dfa, automata.dfa_of(target, l.alphabet)):
        return _yes(Family.COMB, {"X": x})
    return _no(Family.COMB)


def _def_window(dfa: Dfa, iteration_cap: int):
    """Minimal k such that acceptance of length-k continuations agrees on
    every state pair, or None if no such k exists."""
    n = dfa.n_states
    pairs = [(p, q) for p in range(n) for q in range(p + 1, n)]
    bad = frozenset((p, q) for p, q in pairs
                    if (p in dfa.finals) != (q in dfa.finals))
    seen = set()
    k = 0
    while bad:
        if bad in seen or k > iteration_cap:
            return None
        seen.add(bad)
        nxt = set()
        for p, q in pairs:
            for i in range(len(dfa.alphabet)):
                tp, tq = dfa.transitions[p][i], dfa.transitions[q][i]
                if tp != tq and (min(tp, tq), max(tp, tq)) in bad:
                    nxt.add((p, q))
                    break
        bad = frozenset(nxt)
        k += 1
    return k


def _classify_def(l, config):
    dfa = l.dfa
    k = _def_window(dfa, config.def_iteration_cap)
    if k is None:
        return _no(Family.DEF)
    cert = {"window": k}
    if len(l.alphabet) ** k <= config.def_word_cap:
        a_part = enumerate_words(dfa, k - 1) if k > 0 else []
        b_part = []
        n = dfa.n_states
        idx = {a: i for i, a in enumerate(dfa.alphabet)}
        for w in itertools.product(dfa.alphabet, repeat=k):
            states = range(n)
            img = set(states)
            for a in w:
                img = {dfa.transitions[s][idx[a]] for s in img}
            if img <= dfa.finals:
                b_part.append("".join(w))
        cert["A"] = a_part
        cert["B"] = b_part
    return _yes(Family.DEF, cert)


def _classify_suf(l, config):
    dfa = l.dfa
    nfa = to_nfa(dfa)
    nfa.initials = frozenset(range(dfa.n_states))
    closure = determinize(nfa)
    ok = subset(closure, dfa)
    return _yes(Family.SUF) if ok else _no(Family.SUF)


class _SearchCapHit(Exception):
    pass


def _monotone_order(rows, n: int, n_letters: int, budget=None):
    """Backtracking search for a total state order preserved by every
    letter; returns the order (smallest first) or None.

    `budget` is a single-element list of remaining backtracking nodes,
    shared between calls; exhausting it raises _SearchCapHit.
    """
    pos = {}
    if budget is None:
        budget = [50000]

    def consistent():
        placed = list(pos)
        for p in placed:
            for q in placed:
                if pos[p] >= pos[q]:
                    continue
                for i in range(n_letters):
                    tp, tq = rows[p][i], rows[q][i]
                    if tp == tq:
                        continue
                    if tp in pos and tq in pos:
                        if pos[tp] > pos[tq]:
                            return False
                    elif tp not in pos and tq in pos:
                        return False  # tp will be placed above tq
        return True

    order = []

    def extend():
        if len(order) == n:
            return True
        budget[0] -= 1
        if budget[0] < 0:
            raise _SearchCapHit
        for s in range(n):
            if s in pos:
                continue
            pos[s] = len(order)
            order.append(s)
            if consistent() and extend():
                return True
            order.pop()
            del pos[s]
        return False

    return list(order) if extend() else None


def _split_order_search(dfa: Dfa, extra_cap: int, budget):
    """Search for an ordered automaton for L obtained by duplicating
    states of the minimal DFA.

    Copies of a state keep its residual, so any transition assignment
    among copies accepts the same language; only the order has to be
    found.  Returns (order, split_dfa), None when the space is exhausted,
    or raises _SearchCapHit when the shared budget runs out.
    """
    m = dfa.n_states
    n_letters = len(dfa.alphabet)
    split_cost = 8  # examining one candidate split counts as this many nodes
    for extra in range(1, extra_cap + 1):
        for dup in itertools.combinations_with_replacement(range(m), extra):
            mult = [1] * m
            for c in dup:
                mult[c] += 1
            offsets = [0] * m
            total = 0
            for c in range(m):
                offsets[c] = total
                total += mult[c]

            slots = [(c, i, a) for c in range(m) for i in range(mult[c])
                     for a in range(n_letters)]
            option_ranges = [range(mult[dfa.transitions[c][a]])
                             for (c, i, a) in slots]
            for choice in itertools.product(*option_ranges):
                budget[0] -= split_cost
                if budget[0] < 0:
                    raise _SearchCapHit
                rows = [[0] * n_letters for _ in range(total)]
                for (c, i, a), j in zip(slots, choice):
                    t = dfa.transitions[c][a]
                    rows[offsets[c] + i][a] = offsets[t] + j
                rows = [tuple(r) for r in rows]
                start = offsets[dfa.start]
                # restrict to the reachable part
                reach = {start}
                stack = [start]
                while stack:
                    s = stack.pop()
                    for t in rows[s]:
                        if t not in reach:
                            reach.add(t)
                            stack.append(t)
                if len(reach) <= m:
                    continue  # no effective duplication
                remap = {s: i for i, s in enumerate(sorted(reach))}
                sub = [tuple(remap[rows[s][a]] for a in range(n_letters))
                       for s in sorted(reach)]
                finals = set()
                for c in range(m):
                    if c in dfa.finals:
                        for i in range(mult[c]):
                            g = offsets[c] + i
                            if g in remap:
                                finals.add(remap[g])
                order = _monotone_order(sub, len(sub), n_letters, budget)
                if order is not None:
                    split = Dfa(dfa.alphabet, tuple(sub), remap[start],
                                frozenset(finals))
                    return order, split
    return None


def _classify_ord(l, config):
    dfa = l.dfa
    if dfa.n_states > config.ord_state_cap:
        return _unknown(Family.ORD,
                        f"state cap {config.ord_state_cap} exceeded")
    # an ordered automaton has an aperiodic transition monoid, so a
    # non-counting failure rules the family out immediately
    if aperiodicity_bound(dfa, cap=config.monoid_cap) is None:
        return _no(Family.ORD, "transition monoid is not aperiodic")
    budget = [config.ord_search_budget]
    try:
        order = _monotone_order(dfa.transitions, dfa.n_states,
                                len(dfa.alphabet), budget)
        if order is not None:
            return _yes(Family.ORD, {"order": order})
        found = _split_order_search(dfa, config.ord_split_extra, budget)
    except _SearchCapHit:
        return _unknown(Family.ORD, "order search budget exceeded")
    if found is not None:
        order, split = found
        return _yes(Family.ORD, {
            "order": order,
            "automaton": automata.dfa_to_text(split),
        })
    return _no(Family.ORD,
               "no monotone order on the minimal DFA or its bounded splits")


def _one_swap_image(dfa: Dfa):
    """NFA for {u y x v : u x y v in L} (one adjacent transposition)."""
    n = dfa.n_states
    k = len(dfa.alphabet)
    # phase 0: s ; phase 1: n + s*k + letter ; phase 2: n + n*k + s
    nfa = automata.Nfa(n + n * k + n, dfa.alphabet)
    for s in range(n):
        for i, a in enumerate(dfa.alphabet):
            nfa.add(s, a, dfa.transitions[s][i])           # copy
            nfa.add(s, a, n + s * k + i)                   # guess swap, remember y=a
            nfa.add(n + n * k + s, a,
                    n + n * k + dfa.transitions[s][i])     # after swap
    for s in range(n):
        for yi in range(k):
            for xi, x in enumerate(dfa.alphabet):
                mid = dfa.transitions[s][xi]
                tgt = dfa.transitions[mid][yi]
                nfa.add(n + s * k + yi, x, n + n * k + tgt)
    nfa.initials = frozenset({dfa.start})
    nfa.finals = frozenset(dfa.finals) | frozenset(n + n * k + f for f in dfa.finals)
    return nfa


def _classify_comm(l, config):
    image = determinize(_one_swap_image(l.dfa))
    ok = subset(image, l.dfa)
    return _yes(Family.COMM) if ok else _no(Family.COMM)


def _rotate_image(dfa: Dfa):
    """NFA for {x a : a x in L} (cyclic shift by one letter)."""
    n = dfa.n_states
    k = len(dfa.alphabet)
    accept = n * k
    nfa = automata.Nfa(n * k + 1, dfa.alphabet)
    inits = set()
    for gi, g in enumerate(dfa.alphabet):
        inits.add(gi * n + dfa.step(dfa.start, g))
        for s in range(n):
            for i, a in enumerate(dfa.alphabet):
                nfa.add(gi * n + s, a, gi * n + dfa.transitions[s][i])
            if s in dfa.finals:
                nfa.add(gi * n + s, g, accept)
    nfa.initials = frozenset(inits)
    nfa.finals = frozenset({accept})
    return nfa


def _classify_circ(l, config):
    image = determinize(_rotate_image(l.dfa))
    ok = subset(image, l.dfa)
    return _yes(Family.CIRC) if ok else _no(Family.CIRC)


def _power_profile(mapping, start):
    """Orbit of `start` under repeated application: returns (sequence,
    preperiod, period)."""
    seq = []
    seen = {}
    s = start
    while True:
        s = mapping[s]
        if s in seen:
            pre = seen[s]
            return seq, pre, len(seq) - pre
        seen[s] = len(seq)
        seq.append(s)


def aperiodicity_bound(dfa: Dfa, monoid=None, cap: int = 10 ** 6):
    """Smallest k with t^k = t^(k+1) for every transition-monoid element,
    or None if some element is not eventually idempotent (i.e. the monoid
    is not aperiodic)."""
    if monoid is None:
        monoid = transition_monoid(dfa, cap)
    n = dfa.n_states
    bound = 1
    for elem in monoid:
        powers = {}
        t = elem.mapping
        power = t
        i = 1
        while power not in powers:
            powers[power] = i
            power = tuple(t[power[s]] for s in range(n))
            i += 1
        first = powers[power]
        cycle = i - first
        if cycle != 1:
            return None
        bound = max(bound, first)
    return bound


def is_aperiodic(dfa: Dfa, cap: int = 10 ** 6) -> bool:
    return aperiodicity_bound(dfa, cap=cap) is not None


def _classify_nc(l, config, family=Family.NC):
    bound = aperiodicity_bound(l.dfa, cap=config.monoid_cap)
    if bound is None:
        return _no(family)
    return _yes(family, {"bound": bound})


def _classify_ps(l, config):
    dfa = l.dfa
    monoid = transition_monoid(dfa, config.monoid_cap)
    worst = 0
    for elem in monoid:
        seq, pre, period = _power_profile(elem.mapping, dfa.start)
        cycle_states = seq[pre:]
        accept = [s in dfa.finals for s in cycle_states]
        if any(accept) and not all(accept):
            return _no(Family.PS)
        worst = max(worst, pre)
    return _yes(Family.PS, {"bound": worst + 1})


def _classify_star(l, config):
    starred = determinize(star_nfa(l.dfa))
    if equivalent(l.dfa, starred):
        return _yes(Family.STAR, {"H": rx.render(l.regex)})
    return _no(Family.STAR)


def _stabilizer_word(dfa: Dfa):
    """Shortest non-empty word g with g.L <= L, or None."""
    good = {p for p in range(dfa.n_states)
            if subset(dfa, residual(dfa, p))}
    frontier = [("", dfa.start)]
    visited = set()
    while frontier:
        nxt = []
        for word, s in frontier:
            for i, a in enumerate(dfa.alphabet):
                t = dfa.transitions[s][i]
                w = word + a
                if t in good:
                    return w
                if t not in visited:
                    visited.add(t)
                    nxt.append((w, t))
        frontier = nxt
    return None


def _classify_rcom(l, config):
    g = _stabilizer_word(l.dfa)
    if g is None:
        return _no(Family.RCOM)
    return _yes(Family.RCOM, {"g": g, "G": rx.render(rx.word_regex(g)),
                              "H": rx.render(l.regex)})


def _classify_lcom(l, config):
    rev = determinize_minimize(reverse_nfa(l.dfa))
    g = _stabilizer_word(rev)
    if g is None:
        return _no(Family.LCOM)
    g = g[::-1]  # orient for L = E G^*: L.g <= L
    return _yes(Family.LCOM, {"g": g, "E": rx.render(l.regex),
                              "G": rx.render(rx.word_regex(g))})


def _prefixes_of_language(dfa: Dfa, bound: int):
    """Words of length <= bound that are prefixes of some word in L."""
    useful = automata.useful_states(dfa)
    out = []
    frontier = [("", dfa.start)]
    for _ in range(bound + 1):
        nxt = []
        for word, s in frontier:
            if s in useful:
                out.append(word)
                for i, a in enumerate(dfa.alphabet):
                    nxt.append((word + a, dfa.transitions[s][i]))
        frontier = nxt
    return [w for w in out if len(w) <= bound]


def decide_2com_bounded(l: LanguageHandle, bound: int,
                        config: ClassifierConfig = DEFAULT_CONFIG) -> Verdict:
    """Bounded search for a two-sided comet decomposition E G^* H with a
    finite E of short prefixes and a single-word G."""
    if bound < 1:
        raise ValueError("bound must be >= 1")
    dfa = l.dfa
    card = cardinality_class(dfa)
    if card is CardinalityClass.EMPTY:
        return _yes(Family.TWOCOM,
                    {"E": "0", "G": l.alphabet[0], "H": "1"})
    if card is CardinalityClass.FINITE_NONEMPTY:
        return _no(Family.TWOCOM, "finite non-empty languages are not comets")

    prefixes = _prefixes_of_language(dfa, bound)
    gs = [w for w in automata.all_words(l.alphabet, bound) if w]
    tried = 0
    for size in range(1, len(prefixes) + 1):
        for e_set in itertools.combinations(prefixes, size):
            tried += 1
            if tried > config.twocom_subset_cap:
                return _unknown(Family.TWOCOM, "subset cap exhausted")
            mid = left_word_quotient(dfa, e_set[0])
            for e in e_set[1:]:
                mid = intersect(mid, left_word_quotient(dfa, e))
            mid = minimize(mid)
            pieces = None
            for e in e_set:
                piece = concat_nfa(
                    automata.compile_regex(rx.word_regex(e), l.alphabet), mid)
                pieces = piece if pieces is None else _union_nfa(pieces, piece)
            recombined = determinize(pieces)
            if not equivalent(recombined, dfa):
                continue
            for g in gs:
                shifted = determinize(concat_nfa(
                    automata.compile_regex(rx.word_regex(g), l.alphabet), mid))
                if subset(shifted, mid):
                    return _yes(Family.TWOCOM, {
                        "E": list(e_set),
                        "G": g,
                        "H": rx.render(dfa_to_regex(mid)),
                    })
    return _unknown(Family.TWOCOM, f"no certificate within bound {bound}")


def _union_nfa(a, b):
    out = automata.Nfa(a.n_states + b.n_states, a.alphabet)
    out.moves = {k: set(v) for k, v in a.moves.items()}
    out.eps = {k: set(v) for k, v in a.eps.items()}
    shift = a.n_states
    for (s, letter), ts in b.moves.items():
        out.moves[(s + shift, letter)] = {t + shift for t in ts}
    for s, ts in b.eps.items():
        out.eps[s + shift] = {t + shift for t in ts}
    out.initials = a.initials | frozenset(i + shift for i in b.initials)
    out.finals = a.finals | frozenset(f + shift for f in b.finals)
    return out


def _classify_twocom(l, config):
    card = cardinality_class(l.dfa)
    if card is CardinalityClass.EMPTY:
        return _yes(Family.TWOCOM, {"E": "0", "G": l.alphabet[0], "H": "1"})
    if card is CardinalityClass.FINITE_NONEMPTY:
        return _no(Family.TWOCOM, "finite non-empty languages are not comets")
    r = _classify_rcom(l, config)
    if r.outcome is Outcome.YES:
        return _yes(Family.TWOCOM, {"E": "1", "G": r.certificate["g"],
                                    "H": rx.render(l.regex)})
    lv = _classify_lcom(l, config)
    if lv.outcome is Outcome.YES:
        return _yes(Family.TWOCOM, {"E": rx.render(l.regex),
                                    "G": lv.certificate["g"], "H": "1"})
    return decide_2com_bounded(l, config.twocom_bound, config)


def _reach_from(dfa: Dfa, state: int) -> set[int]:
    seen = {state}
    stack = [state]
    while stack:
        s = stack.pop()
        for t in dfa.transitions[s]:
            if t not in seen:
                seen.add(t)
                stack.append(t)
    return seen


def _universal_suffix_dfa(dfa: Dfa, states, cap: int):
    """DFA of {h : delta(q, h) accepting for every q in `states`}, or None
    if the subset construction exceeds `cap` states."""
    start = frozenset(states)
    ids = {start: 0}
    rows = []
    finals = set()
    queue = [start]
    while queue:
        cur = queue.pop(0)
        row = []
        for i in range(len(dfa.alphabet)):
            nxt = frozenset(dfa.transitions[s][i] for s in cur)
            if nxt not in ids:
                if len(ids) >= cap:
                    return None
                ids[nxt] = len(ids)
                queue.append(nxt)
            row.append(ids[nxt])
        rows.append(row)
    for sub, i in ids.items():
        if sub <= dfa.finals:
            finals.add(i)
    return Dfa(dfa.alphabet, tuple(tuple(r) for r in rows), 0, frozenset(finals))


def _classify_sydef(l, config):
    dfa = l.dfa
    card = cardinality_class(dfa)
    if card is CardinalityClass.FINITE_NONEMPTY:
        return _no(Family.SYDEF, "E V* H is either empty or infinite")
    if _classify_ps(l, config).outcome is Outcome.NO:
        return _no(Family.SYDEF, "not power-separating")
    universe = universe_dfa(l.alphabet)
    for e in automata.all_words(l.alphabet, config.sydef_bound):
        p = dfa.run(e)
        span = _reach_from(dfa, p)
        h_dfa = _universal_suffix_dfa(dfa, span, config.sydef_state_cap)
        if h_dfa is None:
            continue
        lhs = determinize(concat_nfa(
            concat_nfa(automata.compile_regex(rx.word_regex(e), l.alphabet),
                       universe),
            h_dfa))
        if equivalent(lhs, dfa):
            h_regex = dfa_to_regex(minimize(h_dfa))
            e_regex = rx.word_regex(e)
            return _yes(Family.SYDEF, {"E": rx.render(e_regex),
                                       "H": rx.render(h_regex)})
    return _unknown(Family.SYDEF,
                    f"no single-word E within bound {config.sydef_bound}")


def _classify_uf(l, config):
    if rx.is_syntactically_union_free(l.regex):
        return _yes(Family.UF, {"regex": rx.render(l.regex)})
    components = rx.union_normal_form(l.regex)
    if len(components) == 1:
        return _yes(Family.UF, {"regex": rx.render(components[0])})
    return _unknown(Family.UF, "source regex contains unions")


_DECIDERS = {
    Family.MON: _classify_mon,
    Family.FIN: _classify_fin,
    Family.NIL: _classify_nil,
    Family.COMB: _classify_comb,
    Family.DEF: _classify_def,
    Family.SYDEF: _classify_sydef,
    Family.SUF: _classify_suf,
    Family.ORD: _classify_ord,
    Family.COMM: _classify_comm,
    Family.CIRC: _classify_circ,
    Family.NC: _classify_nc,
    Family.SF: lambda l, c: _classify_nc(l, c, Family.SF),
    Family.PS: _classify_ps,
    Family.UF: _classify_uf,
    Family.STAR: _classify_star,
    Family.LCOM: _classify_lcom,
    Family.RCOM: _classify_rcom,
    Family.TWOCOM: _classify_twocom,
}


def classify(l: LanguageHandle, family: Family,
             config: ClassifierConfig = DEFAULT_CONFIG) -> Verdict:
    return _DECIDERS[family](l, config)


# Proper inclusions of Figure 1 among the classifiable families; a Yes on
# the left forces a Yes on the right.
IMPLICATIONS = [
    (Family.MON, Family.STAR),
    (Family.MON, Family.SYDEF),
    (Family.MON, Family.NIL),
    (Family.MON, Family.SUF),
    (Family.MON, Family.COMM),
    (Family.FIN, Family.NIL),
    (Family.NIL, Family.DEF),
    (Family.COMB, Family.DEF),
    (Family.COMB, Family.SYDEF),
    (Family.DEF, Family.ORD),
    (Family.ORD, Family.NC),
    (Family.NC, Family.PS),
    (Family.SUF, Family.PS),
    (Family.SYDEF, Family.LCOM),
    (Family.SYDEF, Family.RCOM),
    (Family.SYDEF, Family.PS),
    (Family.LCOM, Family.TWOCOM),
    (Family.RCOM, Family.TWOCOM),
    (Family.COMM, Family.CIRC),
]


def classify_all(l: LanguageHandle,
                 config: ClassifierConfig = DEFAULT_CONFIG) -> dict[Family, Verdict]:
    verdicts = {f: classify(l, f, config) for f in Family}
    if verdicts[Family.NC].outcome != verdicts[Family.SF].outcome:
        raise ConsistencyError("NC and SF verdicts differ")
    for x, y in IMPLICATIONS:
        if (verdicts[x].outcome is Outcome.YES
                and verdicts[y].outcome is Outcome.NO):
            raise ConsistencyError(
                f"{x} = yes but {y} = no for {rx.render(l.regex)}")
    if verdicts[Family.UF].outcome is Outcome.NO:
        raise ConsistencyError("UF can never be decided negatively")
    return verdicts


# ---------------------------------------------------------------------------
# Certificate verification


def _lang_dfa(value, alphabet) -> Dfa:
    """Build a DFA from a certificate language value (regex string or
    explicit word list)."""
    if isinstance(value, str):
        return automata.dfa_of(rx.parse_regex(value, alphabet), alphabet)
    if isinstance(value, (list, tuple, set, frozenset)):
        return automata.dfa_of(rx.finite_language_regex(value), alphabet)
    raise CertificateError(f"cannot interpret language value {value!r}")


def _nontrivial_middle(g_dfa: Dfa, alphabet) -> bool:
    return (cardinality_class(g_dfa) is not CardinalityClass.EMPTY
            and not equivalent(g_dfa, epsilon_dfa(alphabet)))


def verify_certificate(l: LanguageHandle, family: Family, cert: dict,
                       config: ClassifierConfig = DEFAULT_CONFIG) -> bool:
    """Re-derive the family's defining equation from the certificate and
    check it against L."""
    if not isinstance(cert, dict):
        raise CertificateError("certificate must be a mapping")
    V = l.alphabet
    dfa = l.dfa
    try:
        if family is Family.COMB:
            x = cert["X"]
            if any(a not in V for a in x):
                raise CertificateError("X must contain alphabet letters")
            target = rx.cat(rx.star(rx.finite_language_regex(V)),
                            rx.finite_language_regex(x))
            return equivalent(dfa, automata.dfa_of(target, V))
        if family is Family.DEF:
            a_part = cert["A"]
            b_part = cert["B"]
            target = rx.union(
                rx.finite_language_regex(a_part),
                rx.cat(rx.star(rx.finite_language_regex(V)),
                       rx.finite_language_regex(b_part)))
            return equivalent(dfa, automata.dfa_of(target, V))
        if family is Family.SYDEF:
            e = _lang_dfa(cert["E"], V)
            h = _lang_dfa(cert["H"], V)
            lhs = determinize(concat_nfa(concat_nfa(e, universe_dfa(V)), h))
            return equivalent(lhs, dfa)
        if family is Family.ORD:
            if "automaton" in cert:
                machine = automata.dfa_from_text(cert["automaton"])
                if machine.alphabet != V or not equivalent(machine, dfa):
                    return False
            else:
                machine = dfa
            order = cert["order"]
            if sorted(order) != list(range(machine.n_states)):
                raise CertificateError("order must list every state once")
            pos = {s: i for i, s in enumerate(order)}
            for i in range(len(V)):
                for p in range(machine.n_states):
                    for q in range(machine.n_states):
                        if pos[p] <= pos[q]:
                            tp = machine.transitions[p][i]
                            tq = machine.transitions[q][i]
                            if pos[tp] > pos[tq]:
                                return False
            return True
        if family in (Family.NC, Family.SF):
            k = cert["bound"]
            n = dfa.n_states
            for elem in transition_monoid(dfa, config.monoid_cap):
                t = elem.mapping
                power = tuple(range(n))
                for _ in range(k):
                    power = tuple(t[power[s]] for s in range(n))
                nxt = tuple(t[power[s]] for s in range(n))
                if power != nxt:
                    return False
            return True
        if family is Family.PS:
            m = cert["bound"]
            for elem in transition_monoid(dfa, config.monoid_cap):
                seq, pre, period = _power_profile(elem.mapping, dfa.start)
                tail = seq[min(m - 1, len(seq) - period):]
                accept = [s in dfa.finals for s in tail]
                if any(accept) and not all(accept):
                    return False
                if pre + 1 > m and len({s in dfa.finals for s in seq[m - 1:]}) > 1:
                    return False
            return True
        if family is Family.STAR:
            h = _lang_dfa(cert["H"], V)
            return equivalent(determinize(star_nfa(h)), dfa)
        if family is Family.RCOM:
            g = _lang_dfa(cert.get("G", cert.get("g")), V)
            h = _lang_dfa(cert["H"], V) if "H" in cert else dfa
            if not _nontrivial_middle(g, V):
                return False
            lhs = determinize(concat_nfa(star_nfa(g), h))
            return equivalent(lhs, dfa)
        if family is Family.LCOM:
            g = _lang_dfa(cert.get("G", cert.get("g")), V)
            e = _lang_dfa(cert["E"], V) if "E" in cert else dfa
            if not _nontrivial_middle(g, V):
                return False
            lhs = determinize(concat_nfa(e, star_nfa(g)))
            return equivalent(lhs, dfa)
        if family is Family.TWOCOM:
            e = _lang_dfa(cert["E"], V)
            g = _lang_dfa(cert["G"], V)
            h = _lang_dfa(cert["H"], V)
            if not _nontrivial_middle(g, V):
                return False
            lhs = determinize(concat_nfa(concat_nfa(e, star_nfa(g)), h))
            return equivalent(lhs, dfa)
        if family is Family.UF:
            r = rx.parse_regex(cert["regex"], V)
            return (rx.is_syntactically_union_free(r)
                    and equivalent(automata.dfa_of(r, V), dfa))
    except KeyError as exc:
        raise CertificateError(f"missing certificate field {exc}") from exc
    raise CertificateError(f"family {family} carries no certificate")
