import pytest

from turaev import (
    ArcRef,
    ExceptionalCase,
    canonicalize,
    carrier_genus,
    code_hash,
    compose,
    exceptional_case,
    hyperbolicity_certificate,
    is_reduced,
    is_connected,
    is_two_braid,
    make_turaev_prime,
    parse,
    primeness_certificate,
    replay,
    subcodes,
    surface_report,
    virtualize,
)
from turaev.errors import NotConnected, NotReduced
from turaev.generators import random_code, random_realizable_code

from oracles import word_code


class TestPrimenessCertificate:
    def test_trefoil_subcode_free(self, trefoil):
        cert = primeness_certificate(trefoil)
        assert cert.status == "SubcodeFree"
        assert cert.witnesses == ()

    def test_composite_obstructed(self, trefoil):
        cc = compose(trefoil, trefoil, ArcRef(0, 2), ArcRef(0, 0))
        cert = primeness_certificate(cc)
        assert cert.status == "Obstructed"
        assert any(w.length == 6 for w in cert.witnesses)

    def test_paper_word_witnesses(self):
        code = word_code([1, 2, 3, 4, 5, 3, 5, 4, 2, 1])
        # the word has a monogon (label 1), so reduce it first for the
        # certificate; the raw subcode scan still shows both witnesses
        words = {"".join(map(str, s.run_labels(code))) for s in subcodes(code)}
        assert words == {"345354", "2112"}
        with pytest.raises(NotReduced):
            primeness_certificate(code)

    def test_preconditions(self):
        with pytest.raises(NotConnected):
            primeness_certificate(parse("O1+ U1+; O2+ U2+"))


class TestExceptionalCase:
    def test_trefoil_two_braid(self, trefoil):
        assert is_two_braid(trefoil)
        assert exceptional_case(trefoil) is ExceptionalCase.SPHERE_2BRAID

    def test_hopf_two_braid(self, hopf):
        assert exceptional_case(hopf) is ExceptionalCase.SPHERE_2BRAID

    def test_cinquefoil_two_braid(self):
        code = word_code(
            [1, 2, 3, 4, 5, 1, 2, 3, 4, 5],
            letters=["O", "U"] * 5,
        )
        assert exceptional_case(code) is ExceptionalCase.SPHERE_2BRAID

    def test_figure_eight_none(self, figure_eight):
        assert exceptional_case(figure_eight) is ExceptionalCase.NONE

    def test_virtual_trefoil_suspect(self, virtual_trefoil):
        assert exceptional_case(virtual_trefoil) is ExceptionalCase.PROJECTIVE_PLANE_SUSPECT

    def test_virtualized_two_braid(self, virtual_trefoil):
        # virtualizing both crossings mirrors the diagram: still the
        # projective-plane pattern
        both = virtualize(virtualize(virtual_trefoil, 1), 2)
        assert exceptional_case(both) is ExceptionalCase.PROJECTIVE_PLANE_SUSPECT
        # a single virtualization moves the Turaev surface to a Klein
        # bottle, which is not an excepted case
        one = virtualize(virtual_trefoil, 2)
        assert surface_report(one).twice_genus == 2
        assert exceptional_case(one) is ExceptionalCase.NONE

    def test_genus_half_nonpattern_unknown(self, figure_eight):
        from turaev.codes import GaussCode

        comps = [[p for p in figure_eight.components[0] if p.label != 1]]
        virtual_fig8 = GaussCode.from_components(comps)
        assert exceptional_case(virtual_fig8) is ExceptionalCase.UNKNOWN

    def test_switched_trefoil_none(self, switched_trefoil):
        assert exceptional_case(switched_trefoil) is ExceptionalCase.NONE


class TestHyperbolicityCertificate:
    def test_figure_eight_certified(self, figure_eight):
        assert hyperbolicity_certificate(figure_eight).certified

    def test_trefoil_not_certified(self, trefoil):
        verdict = hyperbolicity_certificate(trefoil)
        assert not verdict.certified
        assert "exceptional:Sphere2Braid" in verdict.reasons

    def test_virtual_trefoil_not_certified(self, virtual_trefoil):
        verdict = hyperbolicity_certificate(virtual_trefoil)
        assert not verdict.certified

    def test_unknown_genus_half_never_certified(self, figure_eight):
        from turaev.codes import GaussCode

        for lab in (1, 2, 3, 4):
            comps = [[p for p in figure_eight.components[0] if p.label != lab]]
            verdict = hyperbolicity_certificate(GaussCode.from_components(comps))
            assert not verdict.certified

    def test_failures_are_reasons_not_errors(self):
        assert not hyperbolicity_certificate(parse("0")).certified
        assert not hyperbolicity_certificate(parse("O1+ U1+; O2+ U2+")).certified
        generalized = hyperbolicity_certificate(parse("O1+ O2- O1+ U2-"))
        assert not generalized.certified
        assert "generalized_code" in generalized.reasons

    def test_stable_under_canonicalize_and_rotation(self, rng):
        from turaev.codes import GaussCode

        for _ in range(80):
            code = random_code(rng, rng.randint(1, 7))
            v1 = hyperbolicity_certificate(code)
            assert hyperbolicity_certificate(canonicalize(code)).verdict == v1.verdict
            comp = code.components[0]
            r = rng.randrange(len(comp))
            rotated = GaussCode((comp[r:] + comp[:r],), code.generalized)
            assert hyperbolicity_certificate(rotated).verdict == v1.verdict


class TestMakeTuraevPrime:
    def test_unknot_becomes_switched_trefoil(self, switched_trefoil):
        out, log = make_turaev_prime(parse("0"))
        assert canonicalize(out) == canonicalize(switched_trefoil)
        assert surface_report(out).twice_genus == 2
        assert len(log) == 2

    def test_fixed_point(self, figure_eight):
        out, log = make_turaev_prime(figure_eight)
        assert out == figure_eight
        assert len(log) == 0

    def test_composite(self, trefoil):
        cc = compose(trefoil, trefoil, ArcRef(0, 1), ArcRef(0, 3))
        out, log = make_turaev_prime(cc)
        assert subcodes(out) == []
        assert is_reduced(out) and is_connected(out)
        assert exceptional_case(out) not in (
            ExceptionalCase.SPHERE_2BRAID,
            ExceptionalCase.PROJECTIVE_PLANE_SUSPECT,
        )
        assert carrier_genus(out)[1]
        assert replay(cc, log) == out

    def test_two_braid_poked(self, trefoil):
        out, _ = make_turaev_prime(trefoil)
        assert not is_two_braid(out)
        assert subcodes(out) == []
        assert carrier_genus(out)[1]

    def test_disconnected_connected_first(self):
        code = parse("O1+ U1+; O2+ U2+")
        out, log = make_turaev_prime(code)
        assert is_connected(out) and is_reduced(out)
        assert subcodes(out) == []
        assert replay(code, log) == out

    def test_split_trivial_link(self):
        out, _ = make_turaev_prime(parse("0; 0"))
        assert is_connected(out)
        assert out.size() == 2

    def test_projective_suspect_fixed(self, virtual_trefoil):
        out, _ = make_turaev_prime(virtual_trefoil)
        assert exceptional_case(out) not in (
            ExceptionalCase.SPHERE_2BRAID,
            ExceptionalCase.PROJECTIVE_PLANE_SUSPECT,
        )

    def test_random_composites(self, rng):
        for trial in range(120):
            parts = [
                random_realizable_code(rng, max_crossings=4)
                if trial % 2 == 0
                else random_code(rng, rng.randint(1, 4))
                for _ in range(rng.randint(2, 3))
            ]
            acc = parts[0]
            for p in parts[1:]:
                if acc.size() + p.size() > 12:
                    break
                acc = compose(
                    acc,
                    p,
                    ArcRef(0, rng.randrange(max(len(acc.components[0]), 1))),
                    ArcRef(0, rng.randrange(max(len(p.components[0]), 1))),
                )
            realizable_in = False
            try:
                realizable_in = carrier_genus(acc)[1]
            except Exception:
                pass
            out, log = make_turaev_prime(acc)
            assert subcodes(out) == []
            assert is_reduced(out) and is_connected(out)
            assert exceptional_case(out) is not ExceptionalCase.SPHERE_2BRAID
            assert code_hash(replay(acc, log)) == code_hash(out)
            if realizable_in:
                assert carrier_genus(out)[1]
