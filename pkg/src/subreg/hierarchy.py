"""Inclusion hierarchies of the subregular families and of the families
generated by external contextual grammars with restricted selection.

Two graphs are shipped: FIG1 relates the language families themselves,
FIG2 relates the families EC(F) of languages generated by grammars whose
selections lie in F.  Edges are proper inclusions.  A witness registry
pins the propernesses that can be machine-checked; claims resting on
external literature or on non-membership arguments that cannot be
re-verified are carried as provenance-only entries.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass, field

from . import classify as cls, grammar as gr, regex as rx
from .classify import ClassifierConfig, DEFAULT_CONFIG, Family, Outcome
from .language import LanguageHandle


class HierarchyError(Exception):
    pass


class Relation(enum.Enum):
    PROPER_SUBSET = "proper-subset"
    PROPER_SUPERSET = "proper-superset"
    EQUAL = "equal"
    INCOMPARABLE = "incomparable"


@dataclass(frozen=True)
class Edge:
    src: str
    dst: str
    provenance: str  # "witness:<id>" or "literature"


class HierarchyGraph:
    def __init__(self, name: str, nodes, edges, equalities=()):
        self.name = name
        self.nodes = tuple(nodes)
        self.edges = tuple(edges)
        self.equalities = tuple(frozenset(e) for e in equalities)
        self._canon = {}
        for node in self.nodes:
            self._canon[node] = node
        for group in self.equalities:
            rep = min(group)
            for node in group:
                if node not in self._canon:
                    raise HierarchyError(f"unknown node {node!r} in equality")
                self._canon[node] = rep
        self._succ: dict[str, set[str]] = {}
        for e in self.edges:
            if e.src not in self._canon or e.dst not in self._canon:
                raise HierarchyError(f"edge {e} references unknown node")
            self._succ.setdefault(self.canon(e.src), set()).add(self.canon(e.dst))
        if self._has_cycle():
            raise HierarchyError(f"{name}: inclusion graph has a cycle")

    def canon(self, node: str) -> str:
        if node not in self._canon:
            raise HierarchyError(f"unknown node {node!r}")
        return self._canon[node]

    def _has_cycle(self) -> bool:
        color = {}

        def visit(v):
            color[v] = 1
            for w in self._succ.get(v, ()):
                c = color.get(w, 0)
                if c == 1 or (c == 0 and visit(w)):
                    return True
            color[v] = 2
            return False

        return any(color.get(v, 0) == 0 and visit(v)
                   for v in set(self._canon.values()))

    def reachable(self, src: str, dst: str) -> bool:
        src, dst = self.canon(src), self.canon(dst)
        if src == dst:
            return False
        stack, seen = [src], {src}
        while stack:
            v = stack.pop()
            for w in self._succ.get(v, ()):
                if w == dst:
                    return True
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return False

    def query(self, x: str, y: str) -> Relation:
        if self.canon(x) == self.canon(y):
            return Relation.EQUAL
        if self.reachable(x, y):
            return Relation.PROPER_SUBSET
        if self.reachable(y, x):
            return Relation.PROPER_SUPERSET
        return Relation.INCOMPARABLE

    def to_dot(self) -> str:
        lines = [f"digraph {self.name} {{", "  rankdir=BT;"]
        groups = {g: sorted(g) for g in self.equalities}
        label = {}
        for node in self.nodes:
            rep = self.canon(node)
            members = next((m for g, m in groups.items() if node in g), [node])
            label[rep] = " = ".join(members)
        for rep in sorted(set(self._canon.values())):
            lines.append(f'  "{rep}" [label="{label.get(rep, rep)}"];')
        for e in sorted(self.edges, key=lambda e: (e.src, e.dst)):
            style = ' [style=dashed]' if e.provenance == "literature" else ""
            lines.append(f'  "{self.canon(e.src)}" -> "{self.canon(e.dst)}"{style};')
        lines.append("}")
        return "\n".join(lines) + "\n"


def _edges(pairs):
    return [Edge(s, d, p) for s, d, p in pairs]


FIG1 = HierarchyGraph(
    "fig1",
    nodes=[f.value for f in Family] + ["REG"],
    edges=_edges([
        ("MON", "STAR", "witness:even_a"),
        ("MON", "SYDEF", "witness:sydef_not_sf"),
        ("MON", "NIL", "witness:lambda_a"),
        ("MON", "SUF", "witness:lambda_a"),
        ("MON", "COMM", "witness:lambda_a"),
        ("FIN", "NIL", "witness:a_star"),
        ("NIL", "DEF", "witness:ends_b"),
        ("COMB", "DEF", "witness:lambda_a"),
        ("COMB", "SYDEF", "witness:sydef_not_sf"),
        ("DEF", "ORD", "witness:ab_star"),
        ("ORD", "NC", "literature"),
        ("NC", "PS", "literature"),
        ("SUF", "PS", "witness:ends_b"),
        ("SYDEF", "LCOM", "witness:even_a"),
        ("SYDEF", "RCOM", "witness:even_a"),
        ("SYDEF", "PS", "witness:lambda_a"),
        ("LCOM", "2COM", "witness:a_star_b"),
        ("RCOM", "2COM", "witness:b_a_star"),
        ("2COM", "REG", "witness:lambda_a"),
        ("STAR", "UF", "witness:single_a"),
        ("UF", "REG", "literature"),
        ("COMM", "CIRC", "witness:rotations_abc"),
        ("CIRC", "REG", "witness:ab_star"),
        ("PS", "REG", "witness:even_a"),
    ]),
    equalities=[("NC", "SF")],
)


def _ec(name: str) -> str:
    return f"EC({name})"


FIG2 = HierarchyGraph(
    "fig2",
    nodes=[_ec(n) for n in ("FIN", "MON", "NIL", "COMB", "DEF", "SYDEF",
                            "SUF", "ORD", "COMM", "CIRC", "NC", "PS",
                            "STAR", "REG", "UF", "LCOM", "RCOM", "2COM")],
    edges=_edges([
        (_ec("FIN"), _ec("MON"), "literature"),
        (_ec("MON"), _ec("NIL"), "literature"),
        (_ec("MON"), _ec("COMB"), "literature"),
        (_ec("MON"), _ec("SUF"), "literature"),
        (_ec("MON"), _ec("STAR"), "witness:star_o_ps"),
        (_ec("COMB"), _ec("DEF"), "literature"),
        (_ec("NIL"), _ec("COMM"), "literature"),
        (_ec("NIL"), _ec("DEF"), "literature"),
        (_ec("DEF"), _ec("ORD"), "literature"),
        (_ec("DEF"), _ec("SYDEF"), "witness:sydef_o_nc"),
        (_ec("ORD"), _ec("NC"), "literature"),
        (_ec("NC"), _ec("PS"), "literature"),
        (_ec("SUF"), _ec("PS"), "literature"),
        (_ec("SYDEF"), _ec("PS"), "witness:ord_o_sydef"),
        (_ec("COMM"), _ec("CIRC"), "literature"),
        (_ec("CIRC"), _ec("REG"), "literature"),
        (_ec("STAR"), _ec("REG"), "witness:comb_o_pre_star"),
        (_ec("PS"), _ec("REG"), "witness:star_o_ps"),
    ]),
    equalities=[(_ec("REG"), _ec("UF"), _ec("LCOM"), _ec("RCOM"), _ec("2COM"))],
)

GRAPHS = {"fig1": FIG1, "fig2": FIG2}


# ---------------------------------------------------------------------------
# Witness registry


@dataclass(frozen=True)
class Claim:
    family: str          # family tag, or EC(F) tag for grammar witnesses
    expected: str        # "yes" or "no"
    verifiable: bool
    provenance: str = "witness"
    certificate: dict | None = None


@dataclass(frozen=True)
class WitnessEntry:
    id: str
    kind: str                                # "language" or "grammar"
    claims: tuple[Claim, ...]
    regex: str | None = None
    alphabet: str | None = None
    fixture: str | None = None

    def language(self) -> LanguageHandle:
        return LanguageHandle.from_text(self.regex, tuple(self.alphabet))


def _lang_entry(wid, regex, alphabet, yes=(), no=(), unverifiable_no=(),
                supplied=None):
    claims = []
    supplied = supplied or {}
    for fam in yes:
        claims.append(Claim(fam, "yes", True,
                            certificate=supplied.get(fam)))
    for fam in no:
        claims.append(Claim(fam, "no", True))
    for fam in unverifiable_no:
        claims.append(Claim(fam, "no", False,
                            provenance="no exact decider for this family"))
    return WitnessEntry(wid, "language", tuple(claims), regex, alphabet)


def _grammar_entry(wid, fixture, member_of, not_member_of=()):
    claims = [Claim(_ec(f), "yes", True) for f in member_of]
    claims += [Claim(_ec(f), "no", False,
                     provenance="non-membership argument is not mechanizable")
               for f in not_member_of]
    return WitnessEntry(wid, "grammar", tuple(claims), fixture=fixture)


def registry() -> list[WitnessEntry]:
    entries = [
        _lang_entry("even_a", "(aa)*", "a",
                    yes=["STAR", "LCOM", "RCOM", "2COM", "UF", "REG"],
                    no=["PS", "NC", "SF", "MON", "SYDEF", "DEF", "ORD"]),
        _lang_entry("lambda_only", "1", "a",
                    yes=["STAR", "UF", "NIL", "FIN", "DEF", "SUF", "COMM",
                         "CIRC", "NC", "PS"],
                    no=["2COM", "LCOM", "RCOM", "MON"]),
        _lang_entry("lambda_a", "1|a", "a",
                    yes=["FIN", "NIL", "DEF", "SUF", "COMM", "CIRC", "PS",
                         "NC", "ORD", "REG"],
                    no=["STAR", "2COM", "LCOM", "RCOM", "MON", "COMB"]),
        _lang_entry("a_star_b", "a*b", "ab",
                    yes=["RCOM", "2COM", "UF"],
                    no=["LCOM", "STAR", "SUF", "DEF", "NIL"]),
        _lang_entry("b_a_star", "ba*", "ab",
                    yes=["LCOM", "2COM", "UF"],
                    no=["RCOM", "STAR"]),
        _lang_entry("ab_star", "(ab)*", "ab",
                    yes=["STAR", "LCOM", "RCOM", "2COM", "UF", "ORD", "NC",
                         "PS", "REG"],
                    no=["CIRC", "COMM", "DEF", "MON"]),
        _lang_entry("comb_abc", "(a|b|c)*(a|b)", "abc",
                    yes=["COMB", "DEF", "SYDEF", "ORD", "NC", "PS"],
                    unverifiable_no=["UF"]),
        _lang_entry("sydef_not_sf", "(a|b)*bab*(aab*)*", "ab",
                    yes=["SYDEF", "LCOM", "RCOM", "2COM", "PS"],
                    no=["NC", "SF", "MON", "COMB"],
                    supplied={"SYDEF": {"E": "1", "H": "bab*(aab*)*"}}),
        _lang_entry("single_a", "a", "a",
                    yes=["UF", "FIN", "NIL", "DEF"],
                    no=["STAR", "MON", "2COM"]),
        _lang_entry("a_star", "a*", "a",
                    yes=["NIL", "MON", "STAR", "SYDEF", "DEF", "SUF"],
                    no=["FIN"]),
        _lang_entry("ends_b", "(a|b)*b", "ab",
                    yes=["COMB", "DEF", "SYDEF", "ORD", "NC", "PS", "RCOM",
                         "LCOM", "2COM"],
                    no=["NIL", "SUF", "CIRC", "COMM", "STAR"]),
        _lang_entry("rotations_abc", "abc|bca|cab", "abc",
                    yes=["CIRC", "FIN", "NIL", "DEF"],
                    no=["COMM", "STAR", "2COM"]),
        _grammar_entry("ex1", "ex1", ["ORD"]),
        _grammar_entry("nil_o_star", "nil_o_star", ["NIL"], ["STAR"]),
        _grammar_entry("comb_o_pre_star", "comb_o_pre_star",
                       ["COMB", "REG"], ["STAR"]),
        _grammar_entry("suf_o_star", "suf_o_star", ["SUF"], ["STAR"]),
        _grammar_entry("star_o_ps", "star_o_ps", ["STAR", "REG"],
                       ["PS", "MON"]),
        _grammar_entry("star_o_circ", "star_o_circ", ["STAR"], ["CIRC"]),
        _grammar_entry("ord_o_sydef", "ord_o_sydef", ["ORD", "PS"],
                       ["SYDEF"]),
        _grammar_entry("suf_o_sydef", "suf_o_sydef", ["SUF"], ["SYDEF"]),
        _grammar_entry("sydef_o_nc", "sydef_o_nc", ["SYDEF"], ["NC", "DEF"]),
    ]
    return entries


def _verify_language_claim(handle, claim, config):
    if claim.family == "REG":
        return True, "regular by construction"
    family = cls.family_from_name(claim.family)
    verdict = cls.classify(handle, family, config)
    if claim.expected == "yes":
        if verdict.outcome is Outcome.YES:
            if verdict.certificate is not None:
                ok = cls.verify_certificate(handle, family,
                                            verdict.certificate, config)
                return ok, "decided yes" if ok else "certificate rejected"
            return True, "decided yes"
        if verdict.outcome is Outcome.UNKNOWN and claim.certificate:
            ok = cls.verify_certificate(handle, family, claim.certificate,
                                        config)
            return ok, ("supplied certificate verified" if ok
                        else "supplied certificate rejected")
        return False, f"expected yes, got {verdict.outcome.value}"
    if verdict.outcome is Outcome.NO:
        return True, "decided no"
    return False, f"expected no, got {verdict.outcome.value}"


def _verify_grammar_claim(entry, claim, config, enum_bound=8):
    fix = gr.fixtures()[entry.fixture]
    gr.validate(fix)
    generated = set(gr.enumerate_language(fix, enum_bound))
    expected_words = gr.fixture_words(entry.fixture, enum_bound)
    if generated != expected_words:
        return False, "fixture enumeration deviates from its closed form"
    if claim.family == _ec("REG"):
        return True, "grammar generates the closed form; selections regular"
    family = cls.family_from_name(claim.family[3:-1])
    for i, comp in enumerate(fix.components):
        verdict = cls.classify(comp.selection, family, config)
        if verdict.outcome is Outcome.YES:
            if verdict.certificate is not None and not cls.verify_certificate(
                    comp.selection, family, verdict.certificate, config):
                return False, f"component {i}: certificate rejected"
            continue
        supplied = comp.certificates.get(family)
        if (verdict.outcome is Outcome.UNKNOWN and supplied is not None
                and cls.verify_certificate(comp.selection, family, supplied,
                                           config)):
            continue
        return False, (f"component {i}: selection not certified "
                       f"in {family.value}")
    return True, "grammar generates the closed form with certified selections"


def verify_witnesses(entries=None,
                     config: ClassifierConfig = DEFAULT_CONFIG) -> dict:
    """Check every verifiable registry claim; provenance-only claims are
    reported as skipped with their reason."""
    if entries is None:
        entries = registry()
    passed, failed, skipped = [], [], []
    for entry in entries:
        handle = entry.language() if entry.kind == "language" else None
        for claim in entry.claims:
            tag = {"witness": entry.id, "family": claim.family,
                   "expected": claim.expected}
            if not claim.verifiable:
                skipped.append({**tag, "reason": claim.provenance})
                continue
            if entry.kind == "language":
                ok, reason = _verify_language_claim(handle, claim, config)
            else:
                ok, reason = _verify_grammar_claim(entry, claim, config)
            (passed if ok else failed).append({**tag, "reason": reason})
    return {
        "failed": failed,
        "n_failed": len(failed),
        "n_passed": len(passed),
        "n_skipped": len(skipped),
        "passed": passed,
        "skipped": skipped,
    }


# ---------------------------------------------------------------------------
# Random corpus and edge consistency


def random_regex(rng: random.Random, alphabet, depth: int) -> rx.Regex:
    if depth <= 0:
        roll = rng.random()
        if roll < 0.08:
            return rx.EMPTY
        return rx.Sym(rng.choice(alphabet))
    roll = rng.random()
    if roll < 0.30:
        return rx.Union(random_regex(rng, alphabet, depth - 1),
                        random_regex(rng, alphabet, depth - 1))
    if roll < 0.62:
        return rx.Cat(random_regex(rng, alphabet, depth - 1),
                      random_regex(rng, alphabet, depth - 1))
    if roll < 0.85:
        return rx.Star(random_regex(rng, alphabet, depth - 1))
    return rx.Sym(rng.choice(alphabet))


def random_corpus(count: int = 1000, seed: int = 20240811,
                  alphabet=("a", "b"), depth: int = 4) -> list[LanguageHandle]:
    rng = random.Random(seed)
    seen = set()
    out = []
    while len(out) < count:
        r = random_regex(rng, tuple(alphabet), depth)
        handle = LanguageHandle(tuple(alphabet), r, check=False)
        if handle.regex in seen:
            continue
        seen.add(handle.regex)
        out.append(handle)
    return out


CORPUS_CONFIG = DEFAULT_CONFIG.replace(ord_search_budget=8000,
                                       twocom_subset_cap=400)


def edge_consistency_check(graph: HierarchyGraph = FIG1, corpus=None,
                           config: ClassifierConfig = CORPUS_CONFIG) -> dict:
    """Check every Fig. 1 edge X ⊂ Y against the corpus: X=yes forces
    Y=yes among decided verdicts; also report how each edge's properness
    is covered by the registry."""
    if corpus is None:
        corpus = random_corpus()
    family_tags = {f.value for f in Family}
    checkable = [(e.src, e.dst) for e in graph.edges
                 if e.src in family_tags and e.dst in family_tags]
    violations = []
    for handle in corpus:
        verdicts = cls.classify_all(handle, config)
        by_tag = {f.value: v.outcome for f, v in verdicts.items()}
        for src, dst in checkable:
            if (by_tag[src] is Outcome.YES and by_tag[dst] is Outcome.NO):
                violations.append({
                    "edge": f"{src} -> {dst}",
                    "language": rx.render(handle.regex),
                })
    claims_by_witness = {}
    for entry in registry():
        claims_by_witness[entry.id] = {
            (c.family, c.expected) for c in entry.claims
        }
    properness = []
    for e in graph.edges:
        status = "provenance-only"
        if e.provenance.startswith("witness:"):
            wid = e.provenance.split(":", 1)[1]
            have = claims_by_witness.get(wid, set())
            if (e.dst, "yes") in have and (e.src, "no") in have:
                status = f"witnessed by {wid}"
            else:
                status = f"witness {wid} lacks the required claims"
        properness.append({"edge": f"{e.src} -> {e.dst}", "status": status})
    return {
        "corpus_size": len(corpus),
        "n_violations": len(violations),
        "properness": properness,
        "violations": violations,
    }


def hierarchy_report(config: ClassifierConfig = DEFAULT_CONFIG,
                     corpus_size: int = 1000) -> dict:
    witnesses = verify_witnesses(config=config)
    edges = edge_consistency_check(corpus=random_corpus(corpus_size))
    return {
        "edge_consistency": edges,
        "ok": witnesses["n_failed"] == 0 and edges["n_violations"] == 0,
        "witnesses": witnesses,
    }
