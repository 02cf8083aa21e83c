import itertools

import pytest

from subreg import classify as cl
from subreg.automata import Dfa
from subreg.classify import DEFAULT_CONFIG, Family, Outcome
from subreg.language import LanguageHandle


def lang(text, alphabet="ab"):
    return LanguageHandle.from_text(text, tuple(alphabet))


def outcome(text, family, alphabet="ab", config=DEFAULT_CONFIG):
    v = cl.classify(lang(text, alphabet), family, config)
    if v.outcome is Outcome.YES and v.certificate is not None:
        assert cl.verify_certificate(lang(text, alphabet), family,
                                     v.certificate, config), (text, family)
    return v.outcome


# (regex, alphabet, yes-families, no-families)
BATTERY = [
    ("(aa)*", "a",
     ["STAR", "LCOM", "RCOM", "2COM", "UF", "COMM", "CIRC"],
     ["MON", "FIN", "NIL", "COMB", "DEF", "ORD", "NC", "SF", "PS", "SUF"]),
    ("1", "a",
     ["STAR", "FIN", "NIL", "DEF", "ORD", "SUF", "COMM", "CIRC",
      "NC", "SF", "PS", "UF"],
     ["2COM", "LCOM", "RCOM", "MON", "COMB"]),
    ("1|a", "a",
     ["FIN", "NIL", "SUF", "COMM", "CIRC", "PS", "DEF", "ORD", "NC", "SF"],
     ["STAR", "2COM", "LCOM", "RCOM", "MON"]),
    ("a*b", "ab",
     ["RCOM", "2COM", "ORD", "NC", "SF", "PS", "UF"],
     ["LCOM", "STAR", "MON", "FIN", "NIL", "SUF", "COMM", "CIRC", "DEF"]),
    ("ba*", "ab",
     ["LCOM", "2COM", "NC", "SF", "PS", "UF"],
     ["RCOM", "STAR", "MON", "FIN", "NIL", "SUF", "COMM", "CIRC", "DEF"]),
    ("(ab)*", "ab",
     ["STAR", "LCOM", "RCOM", "2COM", "UF", "ORD", "NC", "SF", "PS"],
     ["CIRC", "COMM", "MON", "FIN", "NIL", "COMB", "DEF", "SUF"]),
    ("(a|b|c)*(a|b)", "abc",
     ["COMB", "DEF", "ORD", "NC", "SF", "PS", "SYDEF", "LCOM",
      "RCOM", "2COM"],
     ["MON", "FIN", "NIL", "STAR", "SUF", "COMM", "CIRC"]),
    ("(a|b)*bab*(aab*)*", "ab",
     ["SYDEF", "PS", "LCOM", "RCOM", "2COM"],
     ["NC", "SF", "MON", "FIN", "NIL", "STAR", "SUF", "COMM", "CIRC"]),
    ("(a|b)*", "ab",
     ["MON", "STAR", "SYDEF", "SUF", "COMM", "CIRC", "NIL", "DEF",
      "ORD", "NC", "SF", "PS", "UF", "LCOM", "RCOM", "2COM"],
     ["FIN", "COMB"]),
    # the empty language conventions
    ("0", "ab",
     ["FIN", "NIL", "COMB", "DEF", "SUF", "COMM", "CIRC", "NC", "SF",
      "PS", "LCOM", "RCOM", "2COM", "ORD", "SYDEF", "UF"],
     ["MON", "STAR"]),
]


@pytest.mark.parametrize("text,alphabet,yes,no",
                         BATTERY, ids=[b[0] for b in BATTERY])
def test_battery(text, alphabet, yes, no):
    assert not set(yes) & set(no)
    for name in yes:
        assert outcome(text, Family(name), alphabet) is Outcome.YES, name
    for name in no:
        assert outcome(text, Family(name), alphabet) is Outcome.NO, name


class TestCertificates:
    def test_def_certificate_contents(self):
        v = cl.classify(lang("(a|b)*b|1|a"), Family.DEF)
        assert v.outcome is Outcome.YES
        assert set(v.certificate) >= {"A", "B"}
        assert cl.verify_certificate(lang("(a|b)*b|1|a"), Family.DEF,
                                     v.certificate)

    def test_sydef_certificate(self):
        h = lang("(a|b)*b")
        v = cl.classify(h, Family.SYDEF)
        assert v.outcome is Outcome.YES
        assert cl.verify_certificate(h, Family.SYDEF, v.certificate)

    def test_wrong_certificate_rejected(self):
        h = lang("a*b")
        assert not cl.verify_certificate(h, Family.RCOM,
                                         {"g": "b", "G": "b", "H": "b"})
        assert not cl.verify_certificate(h, Family.COMB, {"X": ["a"]})

    def test_malformed_certificate_raises(self):
        h = lang("a*b")
        with pytest.raises(cl.CertificateError):
            cl.verify_certificate(h, Family.RCOM, {"nonsense": 1})
        with pytest.raises(cl.CertificateError):
            cl.verify_certificate(h, Family.RCOM, "not a dict")
        with pytest.raises(cl.CertificateError):
            cl.verify_certificate(h, Family.COMB, {"X": ["z"]})

    def test_trivial_middle_rejected(self):
        h = lang("1", "a")
        assert not cl.verify_certificate(
            h, Family.TWOCOM, {"E": ["" ], "G": "1", "H": "1"})

    def test_ord_certificate_monotone(self):
        h = lang("(ab)*")
        v = cl.classify(h, Family.ORD)
        assert v.outcome is Outcome.YES
        assert cl.verify_certificate(h, Family.ORD, v.certificate)
        # some permutation of the states is not monotone and must fail
        import itertools as it
        n = len(v.certificate["order"])
        failures = 0
        for perm in it.permutations(range(n)):
            bad = dict(v.certificate)
            bad["order"] = list(perm)
            if not cl.verify_certificate(h, Family.ORD, bad):
                failures += 1
        assert failures > 0


class TestBoundedDeciders:
    def test_2com_finds_decomposition(self):
        h = lang("c(ab)*c", "abc")
        v = cl.decide_2com_bounded(h, 2, DEFAULT_CONFIG)
        assert v.outcome is Outcome.YES
        assert cl.verify_certificate(h, Family.TWOCOM, v.certificate)

    def test_2com_unknown_when_bound_too_small(self):
        # needs a first part with words of length 3
        h = lang("aab(ab)*", "ab")
        v = cl.decide_2com_bounded(h, 1, DEFAULT_CONFIG)
        assert v.outcome in (Outcome.YES, Outcome.UNKNOWN)

    def test_sydef_unknown_only_when_allowed(self):
        # ORD resource caps aside, Unknown may appear only for the
        # families without an exact decision procedure
        allowed = {Family.SYDEF, Family.TWOCOM, Family.UF, Family.ORD}
        for text in ("(ab)*", "a*b", "(a|b)*b", "1|a"):
            for f in Family:
                v = cl.classify(lang(text), f)
                if v.outcome is Outcome.UNKNOWN:
                    assert f in allowed, (text, f)


class TestAperiodicity:
    def test_counting_language_is_not_aperiodic(self):
        assert not cl.is_aperiodic(lang("(aa)*", "a").dfa)

    def test_aperiodic_language(self):
        assert cl.is_aperiodic(lang("(a|b)*b").dfa)

    def test_brute_force_agreement_sample(self):
        # acceptance of x y^k z must equal x y^{k+1} z for aperiodic DFAs
        for text in ("(a|b)*b", "(aa)*", "a*b", "(ab)*"):
            d = lang(text).dfa
            assert cl.is_aperiodic(d) == _brute_force_noncounting(d)


def _brute_force_noncounting(dfa: Dfa, word_len: int = 3) -> bool:
    from subreg.automata import transition_monoid
    k = len(transition_monoid(dfa))
    words = [
        "".join(t) for n in range(word_len + 1)
        for t in itertools.product(dfa.alphabet, repeat=n)
    ]
    for x in words:
        for y in words:
            if not y:
                continue
            for z in words:
                a = dfa.accepts(x + y * k + z)
                b = dfa.accepts(x + y * (k + 1) + z)
                if a != b:
                    return False
    return True


class TestClassifyAll:
    def test_consistency_enforced(self):
        for text in ("(ab)*", "(a|b)*", "0", "1", "a*b|b*a"):
            verdicts = cl.classify_all(lang(text))
            assert set(verdicts) == set(Family)
            assert verdicts[Family.NC].outcome is verdicts[Family.SF].outcome

    def test_uf_never_no(self):
        for text in ("(a|b)*a", "a|b", "(aa)*"):
            v = cl.classify(lang(text), Family.UF)
            assert v.outcome is not Outcome.NO

    def test_state_cap_gives_unknown(self):
        cfg = DEFAULT_CONFIG.replace(ord_state_cap=1)
        v = cl.classify(lang("(ab)*"), Family.ORD, cfg)
        assert v.outcome is Outcome.UNKNOWN
