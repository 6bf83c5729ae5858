import random

from rankvar.fields import FiniteField
from rankvar.modules import AlgebraSpec
from rankvar.corpus import build_corpus, random_module


def _spec(p, r):
    return AlgebraSpec(p, r, FiniteField(p, 1), "grouplike")


def test_random_module_invariants():
    rng = random.Random(3)
    for p, r in ((2, 2), (3, 2), (2, 3)):
        spec = _spec(p, r)
        m = random_module(spec, 5, rng)
        assert m.dim == 5
        for i in range(r):
            assert m.actions[i].mat_pow(p).is_zero()
            for j in range(i + 1, r):
                assert m.actions[i] @ m.actions[j] == m.actions[j] @ m.actions[i]


def test_corpus_is_deterministic_and_bounded():
    spec = _spec(2, 2)
    a = build_corpus(spec, 25, seed=4)
    b = build_corpus(spec, 25, seed=4)
    assert len(a) == 25
    assert [m.actions for m in a] == [m.actions for m in b]
    assert all(0 < m.dim <= 16 for m in a)
    c = build_corpus(spec, 25, seed=5)
    assert [m.actions for m in c] != [m.actions for m in a]


def test_corpus_mixes_projective_and_not():
    from rankvar.modules import is_projective

    mods = build_corpus(_spec(2, 2), 40, seed=0)
    verdicts = {is_projective(m) for m in mods}
    assert verdicts == {True, False}
