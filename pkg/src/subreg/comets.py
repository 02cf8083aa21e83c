"""Normal forms for two-sided comet decompositions E G* H.

The pipeline splits the first tail E into union-free parts, reduces each
part to an explicit finite word set (pushing any infinite remainder into
the last tail), and recombines the parts into a single comet when their
middles and last tails coincide.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import automata, regex as rx
from .automata import cardinality_class, CardinalityClass, Dfa


class CometError(Exception):
    pass


def _dfa(r: rx.Regex, alphabet) -> Dfa:
    return automata.dfa_of(r, alphabet)


def _is_valid_middle(g: rx.Regex, alphabet) -> bool:
    d = _dfa(g, alphabet)
    return (cardinality_class(d) is not CardinalityClass.EMPTY
            and not automata.equivalent(d, automata.epsilon_dfa(alphabet)))


@dataclass(frozen=True)
class CometDecomposition:
    """A language presented as E G* H with G not empty and not {λ}."""

    alphabet: tuple[str, ...]
    first: rx.Regex    # E
    middle: rx.Regex   # G
    last: rx.Regex     # H

    def __post_init__(self):
        object.__setattr__(self, "alphabet", rx.make_alphabet(self.alphabet))
        for part in (self.first, self.middle, self.last):
            extra = rx.letters_of(part) - set(self.alphabet)
            if extra:
                raise rx.UnknownSymbolError(sorted(extra)[0])
        if not _is_valid_middle(self.middle, self.alphabet):
            raise CometError("middle language must not be empty or {λ}")

    @property
    def regex(self) -> rx.Regex:
        return rx.cat(self.first, rx.cat(rx.star(self.middle), self.last))

    def language_dfa(self) -> Dfa:
        return _dfa(self.regex, self.alphabet)

    def to_json(self) -> dict:
        return {
            "E": rx.render(self.first),
            "G": rx.render(self.middle),
            "H": rx.render(self.last),
        }


@dataclass(frozen=True)
class Component:
    """One comet component; exactly one tail is an explicit word set."""

    first_words: tuple[str, ...] | None
    first: rx.Regex
    middle: rx.Regex
    last: rx.Regex
    last_words: tuple[str, ...] | None = None

    def regex(self) -> rx.Regex:
        return rx.cat(self.first, rx.cat(rx.star(self.middle), self.last))

    def to_json(self) -> dict:
        out = {}
        out["E"] = (list(self.first_words) if self.first_words is not None
                    else rx.render(self.first))
        out["G"] = rx.render(self.middle)
        out["H"] = (list(self.last_words) if self.last_words is not None
                    else rx.render(self.last))
        return out


@dataclass(frozen=True)
class NormalFormResult:
    alphabet: tuple[str, ...]
    components: tuple[Component, ...]
    single_comet: bool
    verified: bool
    finite_side: str  # "left" or "right"

    def to_json(self) -> dict:
        return {
            "components": [c.to_json() for c in self.components],
            "finite_side": self.finite_side,
            "single_comet": self.single_comet,
            "verified": self.verified,
        }


def decompose_first_tail(d: CometDecomposition) -> list[CometDecomposition]:
    """Split E into union-free parts, one decomposition per part."""
    return [CometDecomposition(d.alphabet, e, d.middle, d.last)
            for e in rx.union_normal_form(d.first)]


def _finite_words(r: rx.Regex, alphabet) -> list[str]:
    """Explicit word list of a finite language; words in a finite
    language's minimal DFA are shorter than its state count."""
    d = _dfa(r, alphabet)
    if cardinality_class(d) is CardinalityClass.INFINITE:
        raise CometError(f"{rx.render(r)} is not finite")
    return automata.enumerate_words(d, d.n_states, cap=max(32, d.n_states))


def finite_first_tail(d: CometDecomposition) -> tuple[list[str], rx.Regex, rx.Regex]:
    """Rewrite one union-free-E decomposition so the first tail is an
    explicit finite word set; verified against the input language."""
    if not rx.is_syntactically_union_free(d.first):
        raise CometError("first tail must be union-free")
    if cardinality_class(d.language_dfa()) is CardinalityClass.EMPTY:
        result = ([], rx.Sym(d.alphabet[0]), rx.EMPTY)
    else:
        e_dfa = _dfa(d.first, d.alphabet)
        if cardinality_class(e_dfa) is not CardinalityClass.INFINITE:
            result = (_finite_words(d.first, d.alphabet), d.middle, d.last)
        else:
            e_left, e_mid, e_right = rx.star_decomposition(d.first)
            new_last = rx.cat(e_right, rx.cat(rx.star(d.middle), d.last))
            result = (_finite_words(e_left, d.alphabet), e_mid, new_last)
    words, mid, last = result
    rebuilt = rx.cat(rx.finite_language_regex(words),
                     rx.cat(rx.star(mid), last))
    if not automata.equivalent(_dfa(rebuilt, d.alphabet), d.language_dfa()):
        raise CometError("first-tail reduction failed verification")
    return result


def left_normal_form(d: CometDecomposition) -> NormalFormResult:
    parts = decompose_first_tail(d)
    components = []
    for part in parts:
        words, mid, last = finite_first_tail(part)
        components.append(Component(tuple(words), rx.finite_language_regex(words),
                                    mid, last))
    # drop empty components when something non-empty remains
    nonempty = [c for c in components
                if cardinality_class(_dfa(c.regex(), d.alphabet))
                is not CardinalityClass.EMPTY]
    if nonempty:
        components = nonempty

    single = False
    if len(components) == 1:
        single = True
    else:
        keys = [(_dfa(c.middle, d.alphabet), _dfa(c.last, d.alphabet))
                for c in components]
        if all(k == keys[0] for k in keys[1:]):
            merged = sorted({w for c in components for w in c.first_words},
                            key=lambda w: (len(w), w))
            components = [Component(tuple(merged),
                                    rx.finite_language_regex(merged),
                                    components[0].middle,
                                    components[0].last)]
            single = True

    union = rx.EMPTY
    for c in components:
        union = rx.union(union, c.regex())
    verified = automata.equivalent(_dfa(union, d.alphabet), d.language_dfa())
    return NormalFormResult(d.alphabet, tuple(components), single, verified,
                            "left")


def right_normal_form(d: CometDecomposition) -> NormalFormResult:
    reversed_input = CometDecomposition(
        d.alphabet,
        rx.reverse_regex(d.last),
        rx.reverse_regex(d.middle),
        rx.reverse_regex(d.first),
    )
    left = left_normal_form(reversed_input)
    components = []
    for c in left.components:
        words = tuple(sorted((w[::-1] for w in c.first_words),
                             key=lambda w: (len(w), w)))
        components.append(Component(
            None,
            rx.reverse_regex(c.last),
            rx.reverse_regex(c.middle),
            rx.finite_language_regex(words),
            last_words=words,
        ))
    union = rx.EMPTY
    for c in components:
        union = rx.union(union, c.regex())
    verified = automata.equivalent(_dfa(union, d.alphabet), d.language_dfa())
    return NormalFormResult(d.alphabet, tuple(components), left.single_comet,
                            verified, "right")
