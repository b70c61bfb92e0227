import random

import pytest

from ott import kernel
from ott.checker import HasType, check
from ott.testing import Generator, default_signature


@pytest.fixture(scope="module")
def both():
    impls = kernel.backends()
    if len(impls) < 2:
        pytest.skip("compiled kernel not built")
    return impls["pure"], impls["compiled"]


def test_backends_share_constants(both):
    pure, fast = both
    assert pure.BINDERS == fast.BINDERS
    assert pure.TAG_NAMES == fast.TAG_NAMES
    assert pure.VAR == fast.VAR and pure.CLO == fast.CLO


def test_backends_agree_on_random_inputs(both):
    pure, fast = both
    gen = Generator(default_signature(), random.Random(5))
    for _ in range(300):
        ctx, term, ty = gen.random_judgement()
        assert pure.size(term) == fast.size(term)
        assert pure.eq_lazy(term, term) == fast.eq_lazy(term, term)
        assert pure.eq_lazy(term, ty) == fast.eq_lazy(term, ty)
        env = ((gen.random_term((), (kernel.NAT,), 3) or (kernel.ZERO,)),)
        assert pure.inst(ty, env, 0, 0) == fast.inst(ty, env, 0, 0)


def test_checker_reports_identical_under_forced_backends(both):
    sig = default_signature()
    gen = Generator(sig, random.Random(11))
    for _ in range(50):
        ctx, term, ty = gen.random_judgement()
        with kernel.forced("pure"):
            pure_report = check(sig, HasType(ctx, term, ty))
        with kernel.forced("compiled"):
            fast_report = check(sig, HasType(ctx, term, ty))
        assert pure_report.verdict == fast_report.verdict
        assert pure_report.steps == fast_report.steps


def test_forced_restores_previous_backend():
    before = kernel.BACKEND
    with kernel.forced("pure"):
        assert kernel.BACKEND == "pure"
    assert kernel.BACKEND == before
