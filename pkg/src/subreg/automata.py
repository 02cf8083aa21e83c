"""Finite automata: construction, boolean algebra, minimization, queries.

DFAs are always complete (an explicit sink is added where needed) and,
after ``minimize``, canonically numbered by breadth-first order over the
sorted alphabet, so equal languages yield structurally identical values.
"""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass, field

from .regex import (
    EMPTY,
    EPSILON,
    Cat,
    Empty,
    Regex,
    Star,
    Sym,
    Union,
    cat,
    letters_of,
    star,
    union,
)


class AutomataError(Exception):
    pass


class AlphabetMismatchError(AutomataError):
    pass


class ResourceCapExceeded(AutomataError):
    pass


def _check_same_alphabet(a, b):
    if a.alphabet != b.alphabet:
        raise AlphabetMismatchError(f"{a.alphabet} != {b.alphabet}")


# ---------------------------------------------------------------------------
# NFA


@dataclass
class Nfa:
    """Nondeterministic automaton with epsilon moves.

    States are dense integers 0..n_states-1.
    """

    n_states: int
    alphabet: tuple[str, ...]
    moves: dict[tuple[int, str], set[int]] = field(default_factory=dict)
    eps: dict[int, set[int]] = field(default_factory=dict)
    initials: frozenset[int] = frozenset()
    finals: frozenset[int] = frozenset()

    def add(self, src: int, letter: str, dst: int) -> None:
        self.moves.setdefault((src, letter), set()).add(dst)

    def add_eps(self, src: int, dst: int) -> None:
        self.eps.setdefault(src, set()).add(dst)

    def eps_closure(self, states) -> frozenset[int]:
        out = set(states)
        stack = list(states)
        while stack:
            s = stack.pop()
            for t in self.eps.get(s, ()):
                if t not in out:
                    out.add(t)
                    stack.append(t)
        return frozenset(out)

    def accepts(self, word: str) -> bool:
        current = self.eps_closure(self.initials)
        for a in word:
            if a not in self.alphabet:
                return False
            nxt = set()
            for s in current:
                nxt |= self.moves.get((s, a), set())
            current = self.eps_closure(nxt)
        return bool(current & self.finals)


def compile_regex(r: Regex, alphabet: tuple[str, ...]) -> Nfa:
    """Thompson construction; L(result) follows the inductive semantics."""
    missing = letters_of(r) - set(alphabet)
    if missing:
        raise AlphabetMismatchError(f"letters {sorted(missing)} not in alphabet")
    nfa = Nfa(0, alphabet)

    def fresh():
        nfa.n_states += 1
        return nfa.n_states - 1

    def build(node) -> tuple[int, int]:
        s, t = fresh(), fresh()
        if isinstance(node, Empty):
            pass
        elif isinstance(node, Sym):
            nfa.add(s, node.letter, t)
        elif isinstance(node, Cat):
            ls, lt = build(node.left)
            rs, rt = build(node.right)
            nfa.add_eps(s, ls)
            nfa.add_eps(lt, rs)
            nfa.add_eps(rt, t)
        elif isinstance(node, Union):
            ls, lt = build(node.left)
            rs, rt = build(node.right)
            nfa.add_eps(s, ls)
            nfa.add_eps(s, rs)
            nfa.add_eps(lt, t)
            nfa.add_eps(rt, t)
        elif isinstance(node, Star):
            is_, it = build(node.inner)
            nfa.add_eps(s, is_)
            nfa.add_eps(s, t)
            nfa.add_eps(it, is_)
            nfa.add_eps(it, t)
        else:
            raise TypeError(f"not a regex node: {node!r}")
        return s, t

    s, t = build(r)
    nfa.initials = frozenset({s})
    nfa.finals = frozenset({t})
    return nfa


# ---------------------------------------------------------------------------
# DFA


@dataclass(frozen=True)
class Dfa:
    """Complete deterministic automaton over dense integer states."""

    alphabet: tuple[str, ...]
    transitions: tuple[tuple[int, ...], ...]  # transitions[state][letter_index]
    start: int
    finals: frozenset[int]

    @property
    def n_states(self) -> int:
        return len(self.transitions)

    def letter_index(self, a: str) -> int:
        try:
            return self.alphabet.index(a)
        except ValueError:
            raise AlphabetMismatchError(f"letter {a!r} not in alphabet") from None

    def step(self, state: int, a: str) -> int:
        return self.transitions[state][self.letter_index(a)]

    def run(self, word: str) -> int:
        state = self.start
        idx = {a: i for i, a in enumerate(self.alphabet)}
        for a in word:
            state = self.transitions[state][idx[a]]
        return state

    def accepts(self, word: str) -> bool:
        if any(a not in self.alphabet for a in word):
            return False
        return self.run(word) in self.finals


def to_nfa(dfa: Dfa) -> Nfa:
    nfa = Nfa(dfa.n_states, dfa.alphabet)
    for s, row in enumerate(dfa.transitions):
        for i, t in enumerate(row):
            nfa.add(s, dfa.alphabet[i], t)
    nfa.initials = frozenset({dfa.start})
    nfa.finals = dfa.finals
    return nfa


def determinize(nfa: Nfa) -> Dfa:
    """Subset construction; the result is complete (the empty subset acts
    as the sink)."""
    start = nfa.eps_closure(nfa.initials)
    ids: dict[frozenset[int], int] = {start: 0}
    rows: list[list[int]] = []
    finals = set()
    queue = deque([start])
    order = [start]
    while queue:
        cur = queue.popleft()
        row = []
        for a in nfa.alphabet:
            nxt = set()
            for s in cur:
                nxt |= nfa.moves.get((s, a), set())
            nxt = nfa.eps_closure(nxt)
            if nxt not in ids:
                ids[nxt] = len(ids)
                order.append(nxt)
                queue.append(nxt)
            row.append(ids[nxt])
        rows.append(row)
    for subset, i in ids.items():
        if subset & nfa.finals:
            finals.add(i)
    return Dfa(nfa.alphabet, tuple(tuple(r) for r in rows), 0, frozenset(finals))


def minimize(dfa: Dfa) -> Dfa:
    """Partition-refinement minimization plus canonical BFS renumbering."""
    # restrict to the reachable part
    reach = _reachable(dfa)
    states = sorted(reach)
    remap = {s: i for i, s in enumerate(states)}
    trans = [[remap[dfa.transitions[s][i]] for i in range(len(dfa.alphabet))]
             for s in states]
    finals = {remap[s] for s in reach & dfa.finals}
    n = len(states)
    start = remap[dfa.start]

    # Moore refinement
    block = [1 if s in finals else 0 for s in range(n)]
    while True:
        sigs = {}
        new_block = [0] * n
        for s in range(n):
            sig = (block[s], tuple(block[t] for t in trans[s]))
            if sig not in sigs:
                sigs[sig] = len(sigs)
            new_block[s] = sigs[sig]
        if new_block == block:
            break
        block = new_block

    n_blocks = max(block) + 1
    reps = [None] * n_blocks
    for s in range(n):
        if reps[block[s]] is None:
            reps[block[s]] = s

    # canonical numbering: BFS from the start block over sorted letters
    bfs_id = {block[start]: 0}
    queue = deque([block[start]])
    while queue:
        b = queue.popleft()
        rep = reps[b]
        for i in range(len(dfa.alphabet)):
            tb = block[trans[rep][i]]
            if tb not in bfs_id:
                bfs_id[tb] = len(bfs_id)
                queue.append(tb)
    rows = [None] * len(bfs_id)
    final_blocks = set()
    for b, i in bfs_id.items():
        rep = reps[b]
        rows[i] = tuple(bfs_id[block[trans[rep][j]]] for j in range(len(dfa.alphabet)))
        if rep in finals:
            final_blocks.add(i)
    return Dfa(dfa.alphabet, tuple(rows), 0, frozenset(final_blocks))


def determinize_minimize(nfa: Nfa) -> Dfa:
    return minimize(determinize(nfa))


def dfa_of(r: Regex, alphabet: tuple[str, ...]) -> Dfa:
    """Minimal canonical DFA of a regex."""
    return determinize_minimize(compile_regex(r, alphabet))


def _reachable(dfa: Dfa) -> set[int]:
    seen = {dfa.start}
    queue = deque([dfa.start])
    while queue:
        s = queue.popleft()
        for t in dfa.transitions[s]:
            if t not in seen:
                seen.add(t)
                queue.append(t)
    return seen


# ---------------------------------------------------------------------------
# Comparisons


def _product_walk(a: Dfa, b: Dfa):
    """Yield all reachable state pairs of the synchronized product."""
    _check_same_alphabet(a, b)
    seen = {(a.start, b.start)}
    queue = deque(seen)
    while queue:
        p, q = queue.popleft()
        yield p, q
        for i in range(len(a.alphabet)):
            nxt = (a.transitions[p][i], b.transitions[q][i])
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)


def subset(a: Dfa, b: Dfa) -> bool:
    """L(a) <= L(b)."""
    for p, q in _product_walk(a, b):
        if p in a.finals and q not in b.finals:
            return False
    return True


def equivalent(a: Dfa, b: Dfa) -> bool:
    for p, q in _product_walk(a, b):
        if (p in a.finals) != (q in b.finals):
            return False
    return True


class CardinalityClass(enum.Enum):
    EMPTY = "empty"
    FINITE_NONEMPTY = "finite-nonempty"
    INFINITE = "infinite"


def useful_states(dfa: Dfa) -> set[int]:
    """States both reachable and able to reach an accepting state."""
    reach = _reachable(dfa)
    # reverse reachability from finals
    preds: dict[int, set[int]] = {}
    for s in range(dfa.n_states):
        for t in dfa.transitions[s]:
            preds.setdefault(t, set()).add(s)
    co = set(dfa.finals)
    queue = deque(co)
    while queue:
        s = queue.popleft()
        for p in preds.get(s, ()):
            if p not in co:
                co.add(p)
                queue.append(p)
    return reach & co


def cardinality_class(dfa: Dfa) -> CardinalityClass:
    useful = useful_states(dfa)
    if dfa.start not in useful:
        return CardinalityClass.EMPTY
    # cycle detection restricted to useful states
    color = {}

    def has_cycle(s):
        color[s] = 1
        for t in dfa.transitions[s]:
            if t not in useful:
                continue
            c = color.get(t, 0)
            if c == 1:
                return True
            if c == 0 and has_cycle(t):
                return True
        color[s] = 2
        return False

    for s in useful:
        if color.get(s, 0) == 0 and has_cycle(s):
            return CardinalityClass.INFINITE
    return CardinalityClass.FINITE_NONEMPTY


# ---------------------------------------------------------------------------
# Boolean and rational operations


def complement(dfa: Dfa) -> Dfa:
    return Dfa(dfa.alphabet, dfa.transitions, dfa.start,
               frozenset(range(dfa.n_states)) - dfa.finals)


def _product(a: Dfa, b: Dfa, keep) -> Dfa:
    _check_same_alphabet(a, b)
    ids = {(a.start, b.start): 0}
    rows = []
    finals = set()
    queue = deque([(a.start, b.start)])
    while queue:
        p, q = queue.popleft()
        row = []
        for i in range(len(a.alphabet)):
            nxt = (a.transitions[p][i], b.transitions[q][i])
            if nxt not in ids:
                ids[nxt] = len(ids)
                queue.append(nxt)
            row.append(ids[nxt])
        rows.append(row)
    for (p, q), i in ids.items():
        if keep(p in a.finals, q in b.finals):
            finals.add(i)
    return Dfa(a.alphabet, tuple(tuple(r) for r in rows), 0, frozenset(finals))


def intersect(a: Dfa, b: Dfa) -> Dfa:
    return _product(a, b, lambda x, y: x and y)


def union_dfa(a: Dfa, b: Dfa) -> Dfa:
    return _product(a, b, lambda x, y: x or y)


def difference(a: Dfa, b: Dfa) -> Dfa:
    return _product(a, b, lambda x, y: x and not y)


def concat_nfa(a: Nfa | Dfa, b: Nfa | Dfa) -> Nfa:
    a = to_nfa(a) if isinstance(a, Dfa) else a
    b = to_nfa(b) if isinstance(b, Dfa) else b
    _check_same_alphabet(a, b)
    shift = a.n_states
    out = Nfa(a.n_states + b.n_states, a.alphabet)
    out.moves = {k: set(v) for k, v in a.moves.items()}
    out.eps = {k: set(v) for k, v in a.eps.items()}
    for (s, l), ts in b.moves.items():
        out.moves[(s + shift, l)] = {t + shift for t in ts}
    for s, ts in b.eps.items():
        out.eps[s + shift] = {t + shift for t in ts}
    for f in a.finals:
        for i in b.initials:
            out.add_eps(f, i + shift)
    out.initials = a.initials
    out.finals = frozenset(t + shift for t in b.finals)
    return out


def star_nfa(a: Nfa | Dfa) -> Nfa:
    a = to_nfa(a) if isinstance(a, Dfa) else a
    out = Nfa(a.n_states + 1, a.alphabet)
    out.moves = {k: set(v) for k, v in a.moves.items()}
    out.eps = {k: set(v) for k, v in a.eps.items()}
    hub = a.n_states
    for i in a.initials:
        out.add_eps(hub, i)
    for f in a.finals:
        out.add_eps(f, hub)
    out.initials = frozenset({hub})
    out.finals = frozenset({hub})
    return out


def reverse_nfa(a: Nfa | Dfa) -> Nfa:
    a = to_nfa(a) if isinstance(a, Dfa) else a
    out = Nfa(a.n_states, a.alphabet)
    for (s, l), ts in a.moves.items():
        for t in ts:
            out.add(t, l, s)
    for s, ts in a.eps.items():
        for t in ts:
            out.add_eps(t, s)
    out.initials = a.finals
    out.finals = a.initials
    return out


def universe_dfa(alphabet: tuple[str, ...]) -> Dfa:
    return Dfa(alphabet, ((0,) * len(alphabet),), 0, frozenset({0}))


def epsilon_dfa(alphabet: tuple[str, ...]) -> Dfa:
    k = len(alphabet)
    return Dfa(alphabet, ((1,) * k, (1,) * k), 0, frozenset({0}))


def empty_dfa(alphabet: tuple[str, ...]) -> Dfa:
    return Dfa(alphabet, ((0,) * len(alphabet),), 0, frozenset())


# ---------------------------------------------------------------------------
# Enumeration and quotients


def all_words(alphabet: tuple[str, ...], n: int):
    """All words of length <= n in length-then-lexicographic order."""
    layer = [""]
    yield ""
    for _ in range(n):
        layer = [w + a for w in layer for a in alphabet]
        yield from layer


def enumerate_words(dfa: Dfa, n: int, cap: int = 32) -> list[str]:
    """Exactly L(dfa) restricted to length <= n, length-lex ordered."""
    if n > cap:
        raise ResourceCapExceeded(f"enumeration bound {n} exceeds cap {cap}")
    # min distance from each state to an accepting state, for pruning
    dist = {f: 0 for f in dfa.finals}
    preds: dict[int, set[int]] = {}
    for s in range(dfa.n_states):
        for t in dfa.transitions[s]:
            preds.setdefault(t, set()).add(s)
    queue = deque(dfa.finals)
    while queue:
        s = queue.popleft()
        for p in preds.get(s, ()):
            if p not in dist:
                dist[p] = dist[s] + 1
                queue.append(p)

    out = []
    frontier = [("", dfa.start)]
    for length in range(n + 1):
        nxt = []
        for word, state in frontier:
            if state in dfa.finals:
                out.append(word)
            if length < n:
                for i, a in enumerate(dfa.alphabet):
                    t = dfa.transitions[state][i]
                    if dist.get(t, n + 2) <= n - length - 1:
                        nxt.append((word + a, t))
        frontier = nxt
    return out


def residual(dfa: Dfa, state: int) -> Dfa:
    """The language read from the given state onwards."""
    if not 0 <= state < dfa.n_states:
        raise AutomataError(f"unknown state {state}")
    return Dfa(dfa.alphabet, dfa.transitions, state, dfa.finals)


def left_word_quotient(dfa: Dfa, word: str) -> Dfa:
    return residual(dfa, dfa.run(word))


def left_stabilizer(dfa: Dfa) -> Dfa:
    """The regular language {g : g . L <= L}, as a minimal DFA.

    A word g stabilizes L exactly when L is contained in the residual of
    the state it reaches, so the stabilizer is the given automaton with
    those states accepting.
    """
    good = frozenset(
        p for p in range(dfa.n_states) if subset(dfa, residual(dfa, p))
    )
    return minimize(Dfa(dfa.alphabet, dfa.transitions, dfa.start, good))


# ---------------------------------------------------------------------------
# Transition monoid


@dataclass(frozen=True)
class TransitionMonoidElement:
    """A state map induced by some word, with a shortest representative."""

    mapping: tuple[int, ...]
    word: str

    def apply(self, state: int) -> int:
        return self.mapping[state]


def transition_monoid(dfa: Dfa, cap: int = 10 ** 6) -> list[TransitionMonoidElement]:
    """All distinct state maps induced by words, closed under composition.

    BFS over words in length-lex order, so the stored representative of
    each map is shortest (ties broken lexicographically).
    """
    n = dfa.n_states
    identity = tuple(range(n))
    letter_maps = [
        tuple(dfa.transitions[s][i] for s in range(n))
        for i in range(len(dfa.alphabet))
    ]
    seen = {identity: ""}
    queue = deque([identity])
    while queue:
        m = queue.popleft()
        w = seen[m]
        for i, lm in enumerate(letter_maps):
            comp = tuple(lm[m[s]] for s in range(n))
            if comp not in seen:
                if len(seen) >= cap:
                    raise ResourceCapExceeded(f"transition monoid exceeds cap {cap}")
                seen[comp] = w + dfa.alphabet[i]
                queue.append(comp)
    return [TransitionMonoidElement(m, w) for m, w in seen.items()]


# ---------------------------------------------------------------------------
# Regex extraction (state elimination)


def dfa_to_regex(dfa: Dfa) -> Regex:
    """A regex for L(dfa), by state elimination over a generalized NFA."""
    useful = useful_states(dfa)
    if dfa.start not in useful:
        return EMPTY
    START, END = -1, -2
    edges: dict[tuple[int, int], Regex] = {}

    def add(i, j, r):
        if r == EMPTY:
            return
        prev = edges.get((i, j), EMPTY)
        edges[(i, j)] = union(prev, r)

    for s in useful:
        for i, t in enumerate(dfa.transitions[s]):
            if t in useful:
                add(s, t, Sym(dfa.alphabet[i]))
    add(START, dfa.start, EPSILON)
    for f in dfa.finals & useful:
        add(f, END, EPSILON)

    remaining = set(useful)
    while remaining:
        # eliminate the state with the fewest in*out edges first
        def weight(s):
            ins = sum(1 for (i, j) in edges if j == s and i != s)
            outs = sum(1 for (i, j) in edges if i == s and j != s)
            return ins * outs

        s = min(remaining, key=weight)
        remaining.discard(s)
        loop = edges.pop((s, s), EMPTY)
        ins = [(i, r) for (i, j), r in list(edges.items()) if j == s]
        outs = [(j, r) for (i, j), r in list(edges.items()) if i == s]
        for (i, j) in list(edges):
            if i == s or j == s:
                del edges[(i, j)]
        mid = star(loop)
        for i, ri in ins:
            for j, rj in outs:
                add(i, j, cat(cat(ri, mid), rj))
    return edges.get((START, END), EMPTY)


# ---------------------------------------------------------------------------
# Serialization


def to_dot(obj: Dfa | Nfa, name: str = "automaton") -> str:
    """Graphviz DOT rendering with stable node ordering."""
    lines = [f"digraph {name} {{", "  rankdir=LR;", '  node [shape=circle];']
    if isinstance(obj, Dfa):
        finals = obj.finals
        lines.append('  __start [shape=point];')
        lines.append(f"  __start -> q{obj.start};")
        for s in range(obj.n_states):
            shape = "doublecircle" if s in finals else "circle"
            lines.append(f"  q{s} [shape={shape}];")
        grouped: dict[tuple[int, int], list[str]] = {}
        for s, row in enumerate(obj.transitions):
            for i, t in enumerate(row):
                grouped.setdefault((s, t), []).append(obj.alphabet[i])
        for (s, t), labels in sorted(grouped.items()):
            lines.append(f'  q{s} -> q{t} [label="{",".join(labels)}"];')
    else:
        lines.append('  __start [shape=point];')
        for s in sorted(obj.initials):
            lines.append(f"  __start -> q{s};")
        for s in range(obj.n_states):
            shape = "doublecircle" if s in obj.finals else "circle"
            lines.append(f"  q{s} [shape={shape}];")
        grouped = {}
        for (s, l), ts in obj.moves.items():
            for t in ts:
                grouped.setdefault((s, t), []).append(l)
        for s, ts in obj.eps.items():
            for t in ts:
                grouped.setdefault((s, t), []).append("ε")
        for (s, t), labels in sorted(grouped.items()):
            lines.append(f'  q{s} -> q{t} [label="{",".join(sorted(labels))}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def dfa_to_text(dfa: Dfa) -> str:
    """Line-oriented fixture format: header then one transition per line."""
    lines = [
        "alphabet " + "".join(dfa.alphabet),
        f"states {dfa.n_states}",
        f"initial {dfa.start}",
        "accepting " + " ".join(str(s) for s in sorted(dfa.finals)),
    ]
    for s, row in enumerate(dfa.transitions):
        for i, t in enumerate(row):
            lines.append(f"{s} {dfa.alphabet[i]} {t}")
    return "\n".join(lines) + "\n"


def dfa_from_text(text: str) -> Dfa:
    lines = [l.strip() for l in text.strip().splitlines() if l.strip()]
    if len(lines) < 4:
        raise AutomataError("truncated DFA text")
    alphabet = tuple(sorted(lines[0].split()[1]))
    n = int(lines[1].split()[1])
    start = int(lines[2].split()[1])
    acc_parts = lines[3].split()[1:]
    finals = frozenset(int(x) for x in acc_parts)
    rows = [[None] * len(alphabet) for _ in range(n)]
    for line in lines[4:]:
        s, a, t = line.split()
        rows[int(s)][alphabet.index(a)] = int(t)
    for s, row in enumerate(rows):
        if any(t is None for t in row):
            raise AutomataError(f"state {s} has missing transitions")
    return Dfa(alphabet, tuple(tuple(r) for r in rows), start, finals)
