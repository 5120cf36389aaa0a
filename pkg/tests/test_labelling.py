from fractions import Fraction as F

import pytest

from beltlab.dynkin import product_of
from beltlab.errors import TooLargeError
from beltlab.labelling import (
    Classification,
    LabellingProblem,
    VertexStatus,
    classify,
    find_plain,
    find_strict,
    find_weak,
    strict_margin,
)
from beltlab.quiver import Quiver

STRICT = ["A2xA2", "A2xA3", "A1xA3", "A3xA3", "D4xA2"]
PLAIN = ["A3xA1~", "A2xA3~", "A1xA3~", "A2xA1~", "D4xA1~"]
WEAK = ["A1~xA1~", "A1~xA3~"]


def problem(spec):
    left, right = spec.split("x")
    return LabellingProblem(product_of(left, right))


@pytest.mark.parametrize("spec", STRICT)
def test_finite_products_are_strict(spec):
    p = problem(spec)
    res = classify(p)
    assert res.classification is Classification.STRICT
    assert p.is_strict(res.certificate)
    assert strict_margin(p) > 0


@pytest.mark.parametrize("spec", PLAIN)
def test_finite_by_affine_is_plain_only(spec):
    p = problem(spec)
    res = classify(p)
    assert res.classification is Classification.PLAIN_ONLY
    assert p.is_plain(res.certificate) and not p.is_strict(res.certificate)
    assert strict_margin(p) == 0
    assert res.tight_pattern == p.pattern_of(res.certificate)


@pytest.mark.parametrize("spec", WEAK)
def test_affine_by_affine_is_weak_only(spec):
    p = problem(spec)
    res = classify(p)
    assert res.classification is Classification.WEAK_ONLY
    assert p.is_weak(res.certificate)
    assert find_plain(p) is None


def test_kronecker_square_labels_are_forced_uniform():
    p = problem("A1~xA1~")
    weak = find_weak(p)
    assert len(set(weak)) == 1


def test_direct_checks_on_hand_labels():
    # oriented 4-cycle A2xA2 with uniform labels: in = out = label, strict holds
    p = problem("A2xA2")
    labels = [F(1, 4)] * 4
    assert p.is_strict(labels) and p.pattern_of(labels) == (VertexStatus.SLACK,) * 4
    assert not p.is_weak([F(1), F(0), F(1), F(1)])


def test_none_classification():
    # a vertex with a triple arrow out to a single neighbour cannot be balanced
    q = Quiver.from_arrows(2, [(0, 1, 3)])
    res = classify(LabellingProblem(q))
    assert res.classification is Classification.NONE
    assert find_strict(LabellingProblem(q)) is None


def test_rejects_frozen_and_empty():
    with pytest.raises(ValueError):
        LabellingProblem(Quiver.from_arrows(2, [(0, 1)], frozen=[1]))
    with pytest.raises(ValueError):
        LabellingProblem(Quiver(()))


def test_non_recurrent_quiver_warns():
    q = Quiver.from_arrows(3, [(0, 1), (1, 2), (2, 0)])
    with pytest.warns(UserWarning):
        classify(LabellingProblem(q))


def test_plain_search_is_capped():
    q = product_of("A1~", "D8~")
    assert q.n > 16
    with pytest.raises(TooLargeError):
        find_plain(LabellingProblem(q))


def test_result_json():
    js = classify(problem("A3xA1~")).to_json()
    assert js["classification"] == "PlainOnly"
    assert all("/" in x or x.isdigit() for x in js["labels"])
