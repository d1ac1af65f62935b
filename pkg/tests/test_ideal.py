"""Neural ideal: pseudo-monomial arithmetic, canonical forms, transforms."""

import random

import pytest

from neurocode.codes import Code, Codeword, ElementaryMap, apply_elementary_map, cc_family, cr_family, permute_mask
from neurocode.ideal import (
    ZERO,
    CanonicalForm,
    PseudoMonomial,
    canonical_form,
    canonical_form_naive,
    canonical_form_oracle,
    cf_cc_formula,
    cf_cr_formula,
    predict_cf,
    rho,
)


def pm(n, plus=(), minus=()):
    return PseudoMonomial.from_indices(n, plus, minus)


def cf_of(n, *elements):
    return CanonicalForm.from_indices(n, elements)


def random_code(rng, n):
    return Code.from_masks(n, rng.sample(range(1 << n), rng.randint(1, 1 << n)))


class TestPseudoMonomial:
    def test_validation(self):
        with pytest.raises(ValueError):
            PseudoMonomial(2, 0b01, 0b01)
        with pytest.raises(ValueError):
            PseudoMonomial(2, 0b100, 0)

    def test_degree_and_support(self):
        f = pm(3, (1,), (2, 3))
        assert f.degree == 3
        assert f.support == 0b111

    def test_text(self):
        assert pm(3, (2,), (1, 3)).to_text() == "(1-x1)*x2*(1-x3)"
        assert pm(3, (1, 3)).to_text() == "x1*x3"
        assert PseudoMonomial(3, 0, 0).to_text() == "1"


class TestRho:
    def test_empty_word(self):
        assert rho(Codeword(2, 0)) == pm(2, (), (1, 2))

    def test_partial_word(self):
        assert rho(Codeword.from_indices(3, (1, 2))) == pm(3, (1, 2), (3,))

    def test_full_word(self):
        assert rho(Codeword(3, 0b111)) == pm(3, (1, 2, 3))

    def test_characteristic_property(self):
        rng = random.Random(1)
        for _ in range(50):
            n = rng.randint(1, 6)
            v = rng.randrange(1 << n)
            f = rho(Codeword(n, v))
            for c in range(1 << n):
                assert f.evaluate(c) == (1 if c == v else 0)


class TestEvaluate:
    def test_direct_substitution(self):
        f = pm(2, (1,), (2,))
        assert f.evaluate(0b01) == 1
        assert f.evaluate(0b11) == 0

    def test_three_variable(self):
        f = pm(3, (2,), (1, 3))
        assert f.evaluate(0b010) == 1

    def test_codeword_argument(self):
        f = pm(2, (1,))
        assert f.evaluate(Codeword.from_indices(2, (1,))) == 1


class TestDividesMultiply:
    def test_divides(self):
        assert pm(3, (1, 2)).divides(pm(3, (1, 2, 3)))
        f = pm(3, (1,), (2,))
        assert f.divides(f)
        assert not pm(3, (1,)).divides(pm(3, (), (1,)))

    def test_multiply(self):
        assert pm(2, (1,)) * pm(2, (), (2,)) == pm(2, (1,), (2,))
        assert pm(2, (1,)) * pm(2, (1,)) == pm(2, (1,))
        assert (pm(2, (1,)) * pm(2, (), (1,))) is ZERO


class TestCanonicalForm:
    def test_section41_example(self):
        c = Code.from_indices(3, [(), (1, 2), (2, 3)])
        expected = cf_of(3,
                         ((1,), (2,)),
                         ((1, 3), ()),
                         ((3,), (2,)),
                         ((2,), (1, 3)))
        assert canonical_form(c) == expected

    def test_full_code_zero_ideal(self):
        c = Code.from_masks(2, range(4))
        assert canonical_form(c) == CanonicalForm(2, frozenset())

    def test_chain_code_four(self):
        expected = cf_of(3, ((2,), (1,)), ((3,), (1,)), ((3,), (2,)))
        assert canonical_form(cc_family(4)) == expected

    def test_degree_two_example(self):
        # the cyclic code plus the empty word; its canonical form is the two
        # diagonal products (the word {2,4} in place of {3,4} would break
        # vanishing of x2*x4, so the cyclic word list is the right one)
        c = Code.from_indices(4, [(), (1,), (2,), (3,), (4,),
                                  (1, 2), (2, 3), (3, 4), (1, 4)])
        got = canonical_form(c)
        assert got == cf_of(4, ((1, 3), ()), ((2, 4), ()))
        assert got == canonical_form_oracle(c)

    def test_singleton_empty_code(self):
        c = Code.from_masks(2, [0])
        assert canonical_form_oracle(c) == cf_of(2, ((1,), ()), ((2,), ()))

    def test_incremental_matches_naive(self):
        rng = random.Random(7)
        for _ in range(150):
            c = random_code(rng, rng.randint(1, 4))
            assert canonical_form(c) == canonical_form_naive(c)

    def test_incremental_matches_oracle_sample(self):
        rng = random.Random(9)
        for _ in range(100):
            c = random_code(rng, rng.randint(1, 5))
            assert canonical_form(c) == canonical_form_oracle(c)

    def test_oracle_neuron_cap(self):
        with pytest.raises(ValueError):
            canonical_form_oracle(Code.from_masks(13, [0]))

    def test_elements_vanish_and_cover_missing_words(self):
        rng = random.Random(13)
        for _ in range(100):
            c = random_code(rng, rng.randint(1, 5))
            cf = canonical_form(c)
            for f in cf.elements:
                assert all(f.evaluate(m) == 0 for m in c.masks)
            in_code = set(c.masks)
            for v in range(1 << c.n):
                if v not in in_code:
                    r = rho(Codeword(c.n, v))
                    assert any(f.divides(r) for f in cf.elements)

    def test_antichain(self):
        rng = random.Random(15)
        for _ in range(100):
            cf = canonical_form(random_code(rng, rng.randint(1, 5)))
            for f in cf.elements:
                for g in cf.elements:
                    assert f == g or not f.divides(g)

    def test_permutation_equivariance(self):
        rng = random.Random(19)
        for _ in range(60):
            n = rng.randint(1, 5)
            c = random_code(rng, n)
            perm = list(range(1, n + 1))
            rng.shuffle(perm)
            image, _ = apply_elementary_map(c, ElementaryMap.permutation(perm))
            moved = CanonicalForm(n, frozenset(
                PseudoMonomial(n, permute_mask(f.plus, perm), permute_mask(f.minus, perm))
                for f in canonical_form(c).elements))
            assert canonical_form(image) == moved


class TestCanonicalFormContainer:
    def test_rejects_constant(self):
        with pytest.raises(ValueError):
            CanonicalForm(2, frozenset({PseudoMonomial(2, 0, 0)}))

    def test_rejects_mixed_n(self):
        with pytest.raises(ValueError):
            CanonicalForm(2, frozenset({pm(3, (1,))}))

    def test_allows_redundant_generators(self):
        # non-minimal generating sets are accepted so the relationship
        # complex can be built from them
        cf = cf_of(3, ((1, 2, 3), ()), ((1, 2), ()))
        assert len(cf) == 2

    def test_json_roundtrip(self):
        cf = cf_of(3, ((2,), (1, 3)), ((1, 3), ()))
        assert CanonicalForm.from_json_obj(cf.to_json_obj()) == cf

    def test_sorted_rendering(self):
        cf = cf_of(3, ((2,), (1, 3)), ((1, 3), ()), ((1,), (2,)))
        assert cf.to_text_lines() == ["x1*(1-x2)", "x1*x3", "(1-x1)*x2*(1-x3)"]


class TestPredictCf:
    def test_add_on_example(self):
        cf = cf_of(2, ((2,), (1,)))
        assert predict_cf(cf, ElementaryMap.add_trivial_on()) == \
            cf_of(3, ((2,), (1,)), ((), (3,)))

    def test_add_off(self):
        cf = cf_of(2, ((2,), (1,)))
        assert predict_cf(cf, ElementaryMap.add_trivial_off()) == \
            cf_of(3, ((2,), (1,)), ((3,), ()))

    def test_duplicate_example(self):
        cf = cf_of(2, ((2,), (1,)))
        got = predict_cf(cf, ElementaryMap.duplicate(1))
        want = cf_of(3, ((2,), (1,)), ((2,), (3,)), ((1,), (3,)), ((3,), (1,)))
        assert got == want
        image, _ = apply_elementary_map(cc_family(3), ElementaryMap.duplicate(1))
        assert got == canonical_form_oracle(image)

    def test_projection_example(self):
        cf = canonical_form(cr_family(4))
        got = predict_cf(cf, ElementaryMap.delete(4))
        assert got == cf_of(3, ((1, 3), ()))
        image, _ = apply_elementary_map(cr_family(4), ElementaryMap.delete(4))
        assert got == canonical_form_oracle(image)

    def test_permutation(self):
        cf = cf_of(2, ((2,), (1,)))
        assert predict_cf(cf, ElementaryMap.permutation([2, 1])) == cf_of(2, ((1,), (2,)))

    def test_inclusion_rejected(self):
        cf = cf_of(2, ((2,), (1,)))
        with pytest.raises(ValueError):
            predict_cf(cf, ElementaryMap.inclusion(cc_family(3)))

    def test_delete_middle_neuron(self):
        # deleting an inner neuron relabels the ones above it
        rng = random.Random(23)
        for _ in range(100):
            n = rng.randint(2, 5)
            c = random_code(rng, n)
            i = rng.randint(1, n)
            predicted = predict_cf(canonical_form(c), ElementaryMap.delete(i))
            image, _ = apply_elementary_map(c, ElementaryMap.delete(i))
            assert predicted == canonical_form(image)

    def test_duplicate_prunes_redundant_parts(self):
        # duplicating the only neuron of {∅}: the rule's degree-two parts
        # are multiples of the linear survivors
        cf = canonical_form(Code.from_masks(1, [0]))
        got = predict_cf(cf, ElementaryMap.duplicate(1))
        assert got == cf_of(2, ((1,), ()), ((2,), ()))


class TestClosedForms:
    def test_cc_formula_small(self):
        assert cf_cc_formula(3) == cf_of(2, ((2,), (1,)))
        assert cf_cc_formula(5) == cf_of(4,
                                         ((2,), (1,)), ((3,), (1,)), ((3,), (2,)),
                                         ((4,), (1,)), ((4,), (2,)), ((4,), (3,)))

    def test_cr_formula_small(self):
        assert cf_cr_formula(4) == cf_of(4, ((), (1, 2, 3, 4)),
                                         ((1, 3), ()), ((2, 4), ()))
        assert cf_cr_formula(3) == cf_of(3, ((), (1, 2, 3)), ((1, 2, 3), ()))

    def test_formulas_match_computation(self):
        for m in range(3, 8):
            assert cf_cc_formula(m) == canonical_form(cc_family(m))
        for k in range(3, 8):
            assert cf_cr_formula(k) == canonical_form(cr_family(k))

    def test_bounds(self):
        with pytest.raises(ValueError):
            cf_cc_formula(2)
        with pytest.raises(ValueError):
            cf_cr_formula(2)
