import random

import pytest

from subreg import automata as au, comets, regex as rx

AB = ("a", "b")


def deco(e, g, h, alphabet=AB):
    return comets.CometDecomposition(
        alphabet,
        rx.parse_regex(e, alphabet),
        rx.parse_regex(g, alphabet),
        rx.parse_regex(h, alphabet),
    )


class TestDecomposition:
    def test_trivial_middle_rejected(self):
        with pytest.raises(comets.CometError):
            deco("a", "0", "b")
        with pytest.raises(comets.CometError):
            deco("a", "1", "b")
        with pytest.raises(comets.CometError):
            deco("a", "0*", "b")

    def test_unknown_letter_rejected(self):
        with pytest.raises(rx.UnknownSymbolError):
            deco("c", "a", "b")

    def test_regex_property(self):
        d = deco("a", "ab", "b")
        assert au.equivalent(d.language_dfa(),
                             au.dfa_of(rx.parse_regex("a(ab)*b", AB), AB))

    def test_decompose_first_tail_is_union_free(self):
        d = deco("a|b|ab", "ab", "b")
        parts = comets.decompose_first_tail(d)
        assert len(parts) == 3
        assert all(rx.is_syntactically_union_free(p.first) for p in parts)


class TestFiniteFirstTail:
    def test_finite_first_is_listed(self):
        d = deco("a|ba", "ab", "b")
        parts = comets.decompose_first_tail(d)
        for p in parts:
            words, mid, last = comets.finite_first_tail(p)
            assert all(isinstance(w, str) for w in words)

    def test_infinite_first_pushes_into_last(self):
        d = deco("a*b", "ab", "b")
        parts = comets.decompose_first_tail(d)
        words, mid, last = comets.finite_first_tail(parts[0])
        # a* contributes the star, so the explicit first tail is {λ}
        assert words == [""]
        rebuilt = rx.cat(rx.finite_language_regex(words),
                         rx.cat(rx.star(mid), last))
        assert au.equivalent(au.dfa_of(rebuilt, AB), d.language_dfa())

    def test_empty_language_component(self):
        d = deco("0", "ab", "b")
        words, mid, last = comets.finite_first_tail(d)
        assert words == [] and last == rx.EMPTY


class TestLeftNormalForm:
    def test_simple_merge_to_single_comet(self):
        res = comets.left_normal_form(deco("a|b", "ab", "b"))
        assert res.verified and res.single_comet
        assert res.finite_side == "left"
        (c,) = res.components
        assert set(c.first_words) == {"a", "b"}

    def test_distinct_middles_stay_separate(self):
        res = comets.left_normal_form(deco("a(aa)*|b(bb)*", "ab", "b"))
        assert res.verified
        assert len(res.components) == 2
        assert not res.single_comet

    def test_language_preserved(self):
        for e, g, h in (("(a|b)(a|b)", "ba", "1"),
                        ("a*|b", "a|b", "ab"),
                        ("1", "a", "b*")):
            d = deco(e, g, h)
            res = comets.left_normal_form(d)
            assert res.verified, (e, g, h)
            union = rx.EMPTY
            for c in res.components:
                union = rx.union(union, c.regex())
            assert au.equivalent(au.dfa_of(union, AB), d.language_dfa())

    def test_first_tails_always_finite_word_sets(self):
        res = comets.left_normal_form(deco("a*b|b*a", "ab", "1"))
        for c in res.components:
            assert c.first_words is not None
            assert c.last_words is None

    def test_json_shape(self):
        res = comets.left_normal_form(deco("a", "ab", "b"))
        data = res.to_json()
        assert set(data) == {"components", "finite_side", "single_comet",
                             "verified"}
        assert isinstance(data["components"][0]["E"], list)


class TestRightNormalForm:
    def test_mirrors_left(self):
        d = deco("a*", "ab", "b|a")
        res = comets.right_normal_form(d)
        assert res.verified
        assert res.finite_side == "right"
        for c in res.components:
            assert c.last_words is not None
            assert c.first_words is None
        union = rx.EMPTY
        for c in res.components:
            union = rx.union(union, c.regex())
        assert au.equivalent(au.dfa_of(union, AB), d.language_dfa())


def _random_regex(rng, depth):
    if depth == 0 or rng.random() < 0.3:
        return rng.choice([rx.Sym("a"), rx.Sym("b"), rx.EPSILON])
    kind = rng.random()
    if kind < 0.4:
        return rx.Cat(_random_regex(rng, depth - 1), _random_regex(rng, depth - 1))
    if kind < 0.75:
        return rx.Union(_random_regex(rng, depth - 1), _random_regex(rng, depth - 1))
    return rx.Star(_random_regex(rng, depth - 1))


def test_random_round_trips():
    rng = random.Random(7)
    done = 0
    while done < 60:
        e = _random_regex(rng, 2)
        g = _random_regex(rng, 2)
        h = _random_regex(rng, 2)
        try:
            d = comets.CometDecomposition(AB, e, g, h)
        except comets.CometError:
            continue
        res = comets.left_normal_form(d)
        assert res.verified, (rx.render(e), rx.render(g), rx.render(h))
        res = comets.right_normal_form(d)
        assert res.verified, (rx.render(e), rx.render(g), rx.render(h))
        done += 1
