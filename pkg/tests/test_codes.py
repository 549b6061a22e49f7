import pytest

from turaev import (
    GaussCode,
    Passage,
    canonicalize,
    connectivity,
    is_reduced,
    parse,
    render,
    subcodes,
    validate,
)
from turaev.errors import CodeSyntaxError, PairingError, SignMismatch, ValidationError
from turaev.generators import random_code

from oracles import brute_subcodes, word_code

SEED = 20260801


class TestParse:
    def test_trefoil(self, trefoil):
        assert trefoil.size() == 3
        assert not trefoil.generalized
        assert validate(trefoil).valid

    def test_four_crossing_example_input(self):
        code = parse("O1+O2-U3+U1+O4-U2-O3+U4-")
        assert code.size() == 4
        assert not code.generalized

    def test_sign_and_pairing_violations(self):
        with pytest.raises(ValidationError) as exc:
            parse("O1+U2+O1-")
        rules = {(v.rule, v.subject) for v in exc.value.violations}
        assert ("sign", 1) in rules
        assert ("pairing", 2) in rules

    def test_pairing_error_class(self):
        with pytest.raises(PairingError):
            parse("O1+ U1+ O2+")  # label 2 occurs once

    def test_sign_mismatch_class(self):
        with pytest.raises(SignMismatch):
            parse("O1+U1-")

    def test_generalized_flag(self):
        code = parse("O1+O2-O1+U2-")
        assert code.generalized

    def test_zero_component(self):
        code = parse("0")
        assert len(code.components) == 1
        assert code.components[0] == ()

    def test_empty_text_is_empty_code(self):
        assert parse("") == GaussCode()

    def test_whitespace_comments_case(self):
        code = parse("o1 + u2+ O3+\nU1+ o2+ U3+ # trailing comment")
        assert render(code) == "O1+ U2+ O3+ U1+ O2+ U3+"

    @pytest.mark.parametrize(
        "text",
        [";", "O1+;", "O1", "O0+", "X1+", "O1*", "0 O1+", "O1+ 0"],
    )
    def test_syntax_errors(self, text):
        with pytest.raises(CodeSyntaxError):
            parse(text)


class TestRender:
    def test_trefoil(self, trefoil):
        assert render(trefoil) == "O1+ U2+ O3+ U1+ O2+ U3+"

    def test_hopf(self, hopf):
        assert render(hopf) == "O1+ U2+; U1+ O2+"

    def test_empty(self):
        assert render(GaussCode()) == ""

    def test_zero(self):
        assert render(parse("0")) == "0"

    def test_roundtrip_random(self, rng):
        for _ in range(500):
            code = random_code(rng, rng.randint(1, 10), components=rng.choice((1, 1, 1, 2, 3)))
            assert parse(render(code)) == code


class TestCanonicalize:
    def test_kink_relabel_rotation(self):
        assert render(canonicalize(parse("U7- O7-"))) == "O1- U1-"

    def test_idempotent(self, rng):
        for _ in range(300):
            code = random_code(rng, rng.randint(1, 8), components=rng.choice((1, 1, 2)))
            c1 = canonicalize(code)
            assert canonicalize(c1) == c1

    def test_cyclic_shift_invariance(self, rng):
        for _ in range(300):
            code = random_code(rng, rng.randint(1, 8))
            comp = code.components[0]
            r = rng.randrange(len(comp))
            shifted = GaussCode((comp[r:] + comp[:r],), code.generalized)
            assert canonicalize(shifted) == canonicalize(code)

    def test_relabel_invariance(self, rng):
        for _ in range(300):
            code = random_code(rng, rng.randint(1, 8), components=rng.choice((1, 2)))
            labels = sorted(code.labels())
            perm = labels[:]
            rng.shuffle(perm)
            mapping = dict(zip(labels, perm))
            relabeled = GaussCode(
                tuple(
                    tuple(Passage(mapping[p.label], p.strand, p.sign) for p in comp)
                    for comp in code.components
                ),
                code.generalized,
            )
            assert canonicalize(relabeled) == canonicalize(code)

    def test_component_order_invariance(self, rng):
        for _ in range(200):
            code = random_code(rng, rng.randint(2, 8), components=2)
            swapped = GaussCode(tuple(reversed(code.components)), code.generalized)
            assert canonicalize(swapped) == canonicalize(code)

    def test_zero_component_sorts_first(self):
        code = parse("O1+ U1+; 0")
        assert render(canonicalize(code)) == "0; O1+ U1+"


class TestSubcodes:
    def test_paper_word(self):
        code = word_code([1, 2, 3, 4, 5, 3, 5, 4, 2, 1])
        words = {"".join(str(x) for x in s.run_labels(code)) for s in subcodes(code)}
        assert words == {"345354", "2112"}

    def test_trefoil_empty(self, trefoil):
        assert subcodes(trefoil) == []

    def test_connected_sum_word(self):
        code = word_code([1, 2, 3, 1, 2, 3, 4, 5, 6, 4, 5, 6])
        spans = {(s.start, s.length) for s in subcodes(code)}
        assert (0, 6) in spans and (6, 6) in spans

    def test_complement_closed(self, rng):
        for _ in range(150):
            code = random_code(rng, rng.randint(2, 7), components=rng.choice((1, 1, 2)))
            subs = subcodes(code)
            keyset = {(s.component, s.start, s.length, s.absorbed_components) for s in subs}
            total_comps = set(range(len(code.components)))
            for s in subs:
                n = len(code.components[s.component])
                comp_start = (s.start + s.length) % n
                comp_absorbed = frozenset(
                    total_comps - {s.component} - s.absorbed_components
                )
                assert (
                    s.component,
                    comp_start,
                    n - s.length,
                    comp_absorbed,
                ) in keyset

    def test_matches_bruteforce(self, rng):
        for _ in range(120):
            code = random_code(rng, rng.randint(1, 5), components=rng.choice((1, 1, 2, 3)))
            got = {
                (s.component, s.start, s.length, s.absorbed_components)
                for s in subcodes(code)
            }
            assert got == brute_subcodes(code)


class TestStructure:
    def test_is_reduced(self, trefoil, kink):
        assert is_reduced(trefoil)
        assert not is_reduced(kink)
        assert not is_reduced(parse("O1+ U2+ O3+ U1+ O2+ U3+ O4- U4-"))

    def test_connectivity(self, trefoil, hopf):
        assert connectivity(trefoil) == [frozenset({0})]
        assert connectivity(hopf) == [frozenset({0, 1})]
        assert connectivity(parse("O1+ U1+; O2+ U2+")) == [
            frozenset({0}),
            frozenset({1}),
        ]
        assert connectivity(parse("0; O1+ U1+")) == [frozenset({0}), frozenset({1})]
