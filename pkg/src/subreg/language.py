"""Language handles: alphabet + regex + lazily computed minimal DFA.

The alphabet is part of a language's identity; every family predicate is
evaluated with respect to it.
"""

from __future__ import annotations

from . import automata, regex as rx


class LanguageHandle:
    """An immutable regular language over a declared alphabet."""

    __slots__ = ("alphabet", "regex", "_dfa")

    def __init__(self, alphabet, regex_ast: rx.Regex, check: bool = True):
        self.alphabet = rx.make_alphabet(alphabet)
        extra = rx.letters_of(regex_ast) - set(self.alphabet)
        if extra:
            raise rx.UnknownSymbolError(sorted(extra)[0])
        self.regex = regex_ast
        self._dfa = None
        if check:
            self._cross_check()

    @classmethod
    def from_text(cls, text: str, alphabet, check: bool = True) -> "LanguageHandle":
        alphabet = rx.make_alphabet(alphabet)
        return cls(alphabet, rx.parse_regex(text, alphabet), check=check)

    @property
    def dfa(self) -> automata.Dfa:
        if self._dfa is None:
            self._dfa = automata.dfa_of(self.regex, self.alphabet)
        return self._dfa

    def _cross_check(self, depth: int = 4) -> None:
        # the cached DFA must agree with the direct set semantics of the regex
        expected = rx.words_up_to(self.regex, depth)
        got = set(automata.enumerate_words(self.dfa, depth))
        if got != set(expected):
            raise automata.AutomataError(
                f"DFA/regex mismatch for {rx.render(self.regex)}: "
                f"{sorted(got ^ set(expected))}"
            )

    def words(self, n: int) -> list[str]:
        return automata.enumerate_words(self.dfa, n)

    def accepts(self, word: str) -> bool:
        return self.dfa.accepts(word)

    def reversed(self) -> "LanguageHandle":
        return LanguageHandle(self.alphabet, rx.reverse_regex(self.regex), check=False)

    def __repr__(self) -> str:
        return f"LanguageHandle({rx.render(self.regex)!r}, alphabet={''.join(self.alphabet)})"

    def __eq__(self, other) -> bool:
        return (isinstance(other, LanguageHandle)
                and self.alphabet == other.alphabet
                and self.regex == other.regex)

    def __hash__(self) -> int:
        return hash((self.alphabet, self.regex))
