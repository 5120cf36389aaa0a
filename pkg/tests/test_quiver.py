import json
from fractions import Fraction as F

import pytest

from beltlab.errors import BadVertexError, FrozenVertexError
from beltlab.quiver import (
    Quiver,
    Seed,
    mutate_many,
    mutate_quiver,
    mutate_seed,
    parse_rational,
    quiver_from_json,
    quiver_to_json,
    seed_from_json,
    seed_to_json,
)


def a3_linear():
    return Quiver.from_arrows(3, [(0, 1), (1, 2)])


def test_from_arrows_builds_skew_matrix():
    q = Quiver.from_arrows(3, [(0, 1, 2), (1, 2)])
    assert q.B == ((0, 2, 0), (-2, 0, 1), (0, -1, 0))
    assert q.arrows() == [(0, 1, 2), (1, 2, 1)]
    assert q.arrow_count() == 3


def test_opposite_arrows_cancel():
    q = Quiver.from_arrows(2, [(0, 1, 2), (1, 0)])
    assert q.B[0][1] == 1


def test_invalid_matrices_rejected():
    with pytest.raises(ValueError):
        Quiver(((0, 1), (1, 0)))
    with pytest.raises(ValueError):
        Quiver(((1,),))
    with pytest.raises(BadVertexError):
        Quiver.from_arrows(2, [(0, 5)])


def test_mutation_at_middle_of_a3():
    # 0 -> 1 -> 2: mutating 1 reverses both arrows and adds 0 -> 2
    q = mutate_quiver(a3_linear(), 1)
    assert sorted(q.arrows()) == [(0, 2, 1), (1, 0, 1), (2, 1, 1)]


def test_mutation_at_source_only_reverses():
    q = mutate_quiver(a3_linear(), 0)
    assert sorted(q.arrows()) == [(1, 0, 1), (1, 2, 1)]


def test_markov_quiver_is_mutation_invariant_up_to_reversal():
    markov = Quiver.from_arrows(3, [(0, 1, 2), (1, 2, 2), (2, 0, 2)])
    for z in range(3):
        r = mutate_quiver(markov, z)
        assert sorted(abs(x) for row in r.B for x in row) == sorted(abs(x) for row in markov.B for x in row)


def test_kronecker_mutation_values():
    # x' x = 1 + y^2 on the double arrow
    q = Quiver.from_arrows(2, [(0, 1, 2)])
    s = mutate_seed(Seed.of(q, [1, 1]), 0)
    assert s.values == (F(2), F(1))
    s = mutate_seed(s, 1)
    assert s.values == (F(2), F(5))
    s = mutate_seed(s, 0)
    assert s.values == (F(13), F(5))


def test_a2_pentagon_recurrence():
    # alternating mutations on A2 return the initial cluster after five steps (with a swap)
    q = Quiver.from_arrows(2, [(0, 1)])
    s = Seed.of(q, [F(3), F(7)])
    seen = [s.values]
    for k in range(5):
        s = mutate_seed(s, k % 2)
        seen.append(s.values)
    assert set(seen[5]) == {F(3), F(7)}
    assert seen[1][0] == (1 + F(7)) / 3


def test_frozen_vertex_enters_exchange_but_cannot_mutate():
    q = Quiver.from_arrows(2, [(0, 1)], frozen=[1])
    s = mutate_seed(Seed.of(q, [2, 5]), 0)
    assert s.values == (F(3), F(5))
    with pytest.raises(FrozenVertexError):
        mutate_seed(s, 1)
    with pytest.raises(BadVertexError):
        mutate_quiver(q, 7)


def test_mutate_many_reports_position():
    q = Quiver.from_arrows(2, [(0, 1)], frozen=[1])
    with pytest.raises(FrozenVertexError) as info:
        mutate_many(Seed.ones(q), [0, 0, 1])
    assert info.value.position == 2
    assert "word position 2" in str(info.value)


def test_seed_rejects_zero_and_wrong_length():
    q = a3_linear()
    with pytest.raises(ValueError):
        Seed.of(q, [1, 0, 1])
    with pytest.raises(ValueError):
        Seed.of(q, [1, 1])


def test_parse_rational():
    assert parse_rational("3/4") == F(3, 4)
    assert parse_rational("-7") == F(-7)
    with pytest.raises(ValueError):
        parse_rational("0.5")


def test_json_roundtrip_keeps_frozen_and_labels():
    q = Quiver.from_arrows(3, [(0, 1, 2), (2, 1)], frozen=[2], labels=["a", "b", "c"])
    text = json.dumps(quiver_to_json(q))
    assert quiver_from_json(json.loads(text)) == q
    s = Seed.of(q, ["1/3", 2, "-5/7"])
    back = seed_from_json(json.loads(json.dumps(seed_to_json(s))))
    assert back == s
    assert seed_to_json(s)["values"] == ["1/3", "2", "-5/7"]


def test_json_rejects_bad_input():
    with pytest.raises(ValueError):
        quiver_from_json({"vertices": [{"id": 1}], "arrows": []})
    with pytest.raises(ValueError):
        quiver_from_json({"vertices": [{"id": 0}, {"id": 1}], "arrows": [[0, 1, 1], [1, 0, 1]]})
    with pytest.raises(ValueError):
        quiver_from_json({"vertices": [{"id": 0}, {"id": 1}], "arrows": [[0, 1, 0]]})
