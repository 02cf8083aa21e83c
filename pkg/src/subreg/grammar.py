"""External contextual grammars with regular selection.

A grammar (V, components, axioms) derives x => u x v whenever x lies in
a component's selection language and (u, v) is one of its contexts.
Contexts satisfy uv != λ, so every step strictly lengthens the word;
bounded enumeration and backward membership search both rest on that.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import automata, classify as cls, regex as rx
from .classify import ClassifierConfig, DEFAULT_CONFIG, Family, Outcome
from .language import LanguageHandle


class GrammarError(Exception):
    pass


FRESH_LETTER_POOL = "XYZWVUTSRQPONMLKJIHGFEDCBA"


@dataclass(frozen=True)
class Context:
    u: str
    v: str

    def to_json(self) -> dict:
        return {"u": self.u, "v": self.v}


@dataclass(frozen=True)
class SelectionComponent:
    selection: LanguageHandle          # over a sub-alphabet U of V
    contexts: tuple[Context, ...]
    # optional pre-supplied family certificates for the selection language
    certificates: dict = field(default_factory=dict, compare=False)


@dataclass(frozen=True)
class ContextualGrammar:
    alphabet: tuple[str, ...]
    components: tuple[SelectionComponent, ...]
    axioms: tuple[str, ...]
    metadata: dict = field(default_factory=dict, compare=False)

    def to_json(self) -> dict:
        out = {
            "alphabet": list(self.alphabet),
            "axioms": list(self.axioms),
            "components": [],
        }
        for comp in self.components:
            entry = {
                "selection": {
                    "alphabet": list(comp.selection.alphabet),
                    "regex": rx.render(comp.selection.regex),
                },
                "contexts": [c.to_json() for c in comp.contexts],
            }
            if comp.certificates:
                entry["certificates"] = {
                    fam.value: cert for fam, cert in sorted(
                        comp.certificates.items(), key=lambda kv: kv[0].value)
                }
            out["components"].append(entry)
        return out


def grammar_from_json(data: dict) -> ContextualGrammar:
    try:
        alphabet = rx.make_alphabet(data["alphabet"])
        components = []
        for entry in data["components"]:
            sel = entry["selection"]
            handle = LanguageHandle.from_text(sel["regex"], sel["alphabet"])
            contexts = tuple(Context(c["u"], c["v"])
                             for c in entry["contexts"])
            certificates = {
                cls.family_from_name(name): cert
                for name, cert in entry.get("certificates", {}).items()
            }
            components.append(SelectionComponent(handle, contexts,
                                                 certificates))
        return ContextualGrammar(alphabet, tuple(components),
                                 tuple(data["axioms"]))
    except (KeyError, TypeError) as exc:
        raise GrammarError(f"malformed grammar description: {exc}") from exc


def validate(g: ContextualGrammar) -> None:
    """Raise GrammarError naming the first violated invariant."""
    letters = set(g.alphabet)
    if not g.axioms:
        raise GrammarError("axiom set must be non-empty")
    for w in g.axioms:
        if any(a not in letters for a in w):
            raise GrammarError(f"axiom {w!r} is not over the alphabet")
    for i, comp in enumerate(g.components):
        if not set(comp.selection.alphabet) <= letters:
            raise GrammarError(
                f"component {i}: selection alphabet not a subset of V")
        if not comp.contexts:
            raise GrammarError(f"component {i}: context set must be non-empty")
        for ctx in comp.contexts:
            if ctx.u == "" and ctx.v == "":
                raise GrammarError(
                    f"component {i}: context requires uv != λ")
            if any(a not in letters for a in ctx.u + ctx.v):
                raise GrammarError(
                    f"component {i}: context ({ctx.u!r},{ctx.v!r}) "
                    f"is not over the alphabet")


@dataclass(frozen=True)
class Measures:
    l_a: int
    l_c: int

    @property
    def l(self) -> int:
        return self.l_a + self.l_c + 1

    def to_json(self) -> dict:
        return {"l": self.l, "l_A": self.l_a, "l_C": self.l_c}


def measures(g: ContextualGrammar) -> Measures:
    validate(g)
    l_a = max(len(w) for w in g.axioms)
    l_c = max(len(ctx.u) + len(ctx.v)
              for comp in g.components for ctx in comp.contexts)
    return Measures(l_a, l_c)


def derive_step(g: ContextualGrammar, word: str) -> list[str]:
    out = set()
    for comp in g.components:
        if comp.selection.accepts(word):
            for ctx in comp.contexts:
                out.add(ctx.u + word + ctx.v)
    return sorted(out, key=lambda w: (len(w), w))


def enumerate_language(g: ContextualGrammar, n: int) -> list[str]:
    """Exactly L(g) restricted to length <= n, length-lex ordered."""
    seen = {w for w in g.axioms if len(w) <= n}
    frontier = sorted(seen, key=len)
    while frontier:
        nxt = []
        for w in frontier:
            for y in derive_step(g, w):
                if len(y) <= n and y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return sorted(seen, key=lambda w: (len(w), w))


def member(g: ContextualGrammar, word: str, _memo: dict | None = None) -> bool:
    """Backward search: word is an axiom, or some context peels off to a
    shorter derivable word inside the matching selection."""
    if _memo is None:
        _memo = {}
    if word in _memo:
        return _memo[word]
    _memo[word] = False  # guards nothing (lengths decrease) but is cheap
    if word in g.axioms:
        _memo[word] = True
        return True
    for comp in g.components:
        for ctx in comp.contexts:
            if len(ctx.u) + len(ctx.v) > len(word):
                continue
            if not (word.startswith(ctx.u) and word.endswith(ctx.v)):
                continue
            inner = word[len(ctx.u):len(word) - len(ctx.v)]
            if comp.selection.accepts(inner) and member(g, inner, _memo):
                _memo[word] = True
                return True
    return False


def classify_selections(g: ContextualGrammar,
                        config: ClassifierConfig = DEFAULT_CONFIG):
    """One Family -> Verdict map per component, each evaluated over the
    component's own selection alphabet."""
    return [cls.classify_all(comp.selection, config) for comp in g.components]


def _fresh_letter(g: ContextualGrammar) -> str:
    used = set(g.alphabet)
    for comp in g.components:
        used |= set(comp.selection.alphabet)
    for letter in FRESH_LETTER_POOL:
        if letter not in used:
            return letter
    raise GrammarError("no fresh letter available in the pool")


def _with_middle_star(g: ContextualGrammar, on_left: bool) -> ContextualGrammar:
    x = _fresh_letter(g)
    components = []
    for comp in g.components:
        u = tuple(sorted(set(comp.selection.alphabet) | {x}))
        if on_left:
            new_regex = rx.cat(rx.star(rx.Sym(x)), comp.selection.regex)
        else:
            new_regex = rx.cat(comp.selection.regex, rx.star(rx.Sym(x)))
        handle = LanguageHandle(u, new_regex, check=False)
        components.append(SelectionComponent(handle, comp.contexts))
    alphabet = tuple(sorted(set(g.alphabet) | {x}))
    meta = dict(g.metadata)
    meta["fresh_letter"] = x
    return ContextualGrammar(alphabet, tuple(components), g.axioms, meta)


def transform_to_rcom(g: ContextualGrammar) -> ContextualGrammar:
    """Prefix every selection with {X}* for a fresh letter X; the result
    generates the same language and all selections are right comets."""
    validate(g)
    return _with_middle_star(g, on_left=True)


def transform_to_lcom(g: ContextualGrammar) -> ContextualGrammar:
    validate(g)
    return _with_middle_star(g, on_left=False)


def _selection_is_lambda(comp: SelectionComponent) -> bool:
    return automata.equivalent(comp.selection.dfa,
                               automata.epsilon_dfa(comp.selection.alphabet))


def eliminate_empty_word_selection(g: ContextualGrammar) -> ContextualGrammar:
    """Remove components whose selection is {λ}; if λ is derivable, their
    context words uv become axioms, preserving the generated language."""
    validate(g)
    lam = [c for c in g.components if _selection_is_lambda(c)]
    rest = tuple(c for c in g.components if not _selection_is_lambda(c))
    if not lam:
        return g
    axioms = list(g.axioms)
    if member(g, ""):
        for comp in lam:
            for ctx in comp.contexts:
                w = ctx.u + ctx.v
                if w not in axioms:
                    axioms.append(w)
    return ContextualGrammar(g.alphabet, rest,
                             tuple(sorted(axioms, key=lambda w: (len(w), w))),
                             dict(g.metadata))


def definite_to_sydef(g: ContextualGrammar,
                      config: ClassifierConfig = DEFAULT_CONFIG) -> ContextualGrammar:
    """Turn a grammar with definite selections A ∪ U*B into one with
    symmetric definite selections U*B, moving the finitely many words
    derived through A into the axioms."""
    validate(g)
    verdicts = [cls.classify(comp.selection, Family.DEF, config)
                for comp in g.components]
    for i, v in enumerate(verdicts):
        if v.outcome is not Outcome.YES:
            raise GrammarError(f"component {i}: selection is not definite")
        if "A" not in v.certificate:
            raise GrammarError(
                f"component {i}: definite split too large to materialize")

    axioms = list(g.axioms)
    components = []
    for comp, verdict in zip(g.components, verdicts):
        u_alpha = comp.selection.alphabet
        a_part, b_part = verdict.certificate["A"], verdict.certificate["B"]
        for w in a_part:
            if member(g, w):
                for ctx in comp.contexts:
                    grown = ctx.u + w + ctx.v
                    if grown not in axioms:
                        axioms.append(grown)
        if not b_part:
            continue  # empty U*B side: the component derives nothing more
        sydef_regex = rx.cat(rx.star(rx.finite_language_regex(u_alpha)),
                             rx.finite_language_regex(b_part))
        handle = LanguageHandle(u_alpha, sydef_regex, check=False)
        cert = {Family.SYDEF: {
            "E": "1",
            "H": rx.render(rx.finite_language_regex(b_part)),
        }}
        components.append(SelectionComponent(handle, comp.contexts, cert))
    return ContextualGrammar(g.alphabet, tuple(components),
                             tuple(sorted(set(axioms),
                                          key=lambda w: (len(w), w))),
                             dict(g.metadata))


# ---------------------------------------------------------------------------
# Fixture corpus


def _handle(text: str, alphabet: str) -> LanguageHandle:
    return LanguageHandle.from_text(text, tuple(alphabet))


def _grammar(alphabet, components, axioms) -> ContextualGrammar:
    g = ContextualGrammar(rx.make_alphabet(alphabet), tuple(components),
                          tuple(axioms))
    validate(g)
    return g


def _ctx(*pairs) -> tuple[Context, ...]:
    return tuple(Context(u, v) for u, v in pairs)


def fixtures() -> dict[str, ContextualGrammar]:
    """Named grammar corpus; closed forms live in fixture_words."""
    ex1 = _grammar("abc", [
        SelectionComponent(_handle("(a|b)*", "ab"), _ctx(("", "a"), ("", "b"))),
        SelectionComponent(_handle("(ab)*", "ab"), _ctx(("c", "c"))),
    ], ["" ])

    out = {
        "ex1": ex1,
        "nil_o_star": _grammar("ab", [
            SelectionComponent(
                _handle("(a|b)(a|b)(a|b)(a|b)(a|b)*", "ab"),
                _ctx(("a", ""))),
        ], ["abbb", ""]),
        "comb_o_pre_star": _grammar("ab", [
            SelectionComponent(_handle("(a|b)*a", "ab"), _ctx(("b", ""))),
        ], ["", "a"]),
        "suf_o_star": _grammar("abc", [
            SelectionComponent(_handle("(a|b)*", "ab"),
                               _ctx(("a", ""), ("b", ""), ("", "b"))),
            SelectionComponent(_handle("a*bb*|1", "ab"), _ctx(("c", "c"))),
        ], ["ab"]),
        "star_o_ps": _grammar("ab", [
            SelectionComponent(_handle("a*", "a"), _ctx(("", "a"))),
            SelectionComponent(_handle("(aa)*", "a"), _ctx(("b", "b"))),
        ], ["aa"]),
        "star_o_circ": _grammar("ab", [
            SelectionComponent(_handle("(aa*bb*)*", "ab"), _ctx(("a", "b"))),
            SelectionComponent(_handle("(bb*aa*)*", "ab"), _ctx(("b", "a"))),
        ], ["ab", "ba"]),
        "ord_o_sydef": ex1,
        "suf_o_sydef": _grammar("abc", [
            SelectionComponent(_handle("(a|b)*", "ab"),
                               _ctx(("", "a"), ("", "b"))),
            SelectionComponent(_handle("(1|b)(ab)*", "ab"), _ctx(("c", "c"))),
        ], [""]),
        "sydef_o_nc": _grammar("abc", [
            SelectionComponent(_handle("a(a|b|c)*", "abc"),
                               _ctx(("", "a"), ("b", "b"))),
            SelectionComponent(
                _handle("baa(aa)*b(a|b|c)*", "abc"), _ctx(("c", "c")),
                certificates={Family.SYDEF: {"E": "baa(aa)*b", "H": "1"}}),
        ], ["a"]),
    }
    return out


# Closed forms of the fixture languages. Most are regular; star_o_circ is
# {a^n b^n} ∪ {b^n a^n} which no regex captures, so it gets a generator.
FIXTURE_CLOSED_REGEX = {
    "ex1": ("(a|b)*|c(ab)*c", "abc"),
    "nil_o_star": ("aa*bbb|1", "ab"),
    "comb_o_pre_star": ("b*a|1", "ab"),
    "suf_o_star": ("(a|b)*aa*bb*|caa*bb*c", "abc"),
    "star_o_ps": ("aaa*|baa(aa)*b", "ab"),
    "ord_o_sydef": ("(a|b)*|c(ab)*c", "abc"),
    "suf_o_sydef": ("(a|b)*|c(1|b)(ab)*c", "abc"),
    "sydef_o_nc": ("aa*|baa*b|cbaa(aa)*bc", "abc"),
}


def fixture_words(name: str, n: int) -> set[str]:
    """The fixture's published closed-form language, cut at length n."""
    if name == "star_o_circ":
        out = set()
        for k in range(1, n // 2 + 1):
            out.add("a" * k + "b" * k)
            out.add("b" * k + "a" * k)
        return out
    text, alphabet = FIXTURE_CLOSED_REGEX[name]
    handle = _handle(text, alphabet)
    return set(handle.words(n))
