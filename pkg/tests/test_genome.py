import itertools

import pytest

from permpatterns import genome
from permpatterns.genome import BlockOp
from permpatterns.pegperm import peg, polyclass_enumerate


def naive_neighbours(kind, p):
    # direct definitions on index ranges
    n = len(p)
    out = set()
    for i in range(n):
        for j in range(i + 1, n + 1):
            if kind == "block_reversal":
                out.add(p[:i] + p[i:j][::-1] + p[j:])
            if kind == "prefix_reversal" and i == 0:
                out.add(p[:j][::-1] + p[j:])
            for k in range(j + 1, n + 1):
                if kind in ("block_transposition", "cut_paste"):
                    out.add(p[:i] + p[j:k] + p[i:j] + p[k:])
                if kind == "cut_paste":
                    out.add(p[:i] + p[j:k] + p[i:j][::-1] + p[k:])
                    out.add(p[:i] + p[j:k][::-1] + p[i:j] + p[k:])
                if kind == "prefix_transposition" and i == 0:
                    out.add(p[j:k] + p[:j] + p[k:])
            if kind == "block_interchange":
                # swap p[i:j] and p[k:m]; the middle block p[j:k] may be empty
                for k in range(j, n + 1):
                    for m in range(k + 1, n + 1):
                        out.add(p[:i] + p[k:m] + p[j:k] + p[i:j] + p[m:])
    out.discard(p)
    return out


@pytest.mark.parametrize("kind", genome.KINDS)
def test_neighbours_match_direct_definition(kind):
    for n in range(1, 6):
        for p in itertools.permutations(range(1, n + 1)):
            assert genome.neighbours(kind, p) == naive_neighbours(kind, p)


def test_unknown_kind():
    with pytest.raises(ValueError):
        BlockOp("shuffle")


def test_single_move_pegsets():
    assert genome.ball_pegs("block_reversal", 1) == frozenset({peg("+1 -2 +3")})
    assert genome.ball_pegs("prefix_reversal", 1) == frozenset({peg("-1 +2")})
    assert genome.ball_pegs("block_transposition", 1) == frozenset({peg("+1 +3 +2 +4")})


def test_two_block_reversals_pegset():
    assert genome.ball_pegs("block_reversal", 2) == frozenset(
        peg(t) for t in ("+1 -4 +3 -2 +5", "+1 -2 +3 -4 +5", "+1 +4 -2 -3 +5", "+1 -3 -4 +2 +5"))


@pytest.mark.parametrize("kind", genome.KINDS)
def test_ball_polynomials_match_bfs(kind):
    for k in (0, 1, 2):
        res = polyclass_enumerate(genome.ball_pegs(kind, k))
        want = [genome.bfs_ball(kind, k, n) for n in range(1, 8)]
        assert res.counts(7) == want


def test_frozen_small_balls():
    # frozen from the BFS above
    assert [genome.bfs_ball("block_reversal", 1, n) for n in range(1, 8)] == [1, 2, 4, 7, 11, 16, 22]
    assert [genome.bfs_ball("prefix_reversal", 2, n) for n in range(1, 8)] == [1, 2, 5, 10, 17, 26, 37]


def test_distance():
    assert genome.distance((1, 2, 3), "block_reversal") == 0
    assert genome.distance((3, 2, 1), "block_reversal") == 1
    assert genome.distance((2, 3, 1), "block_transposition") == 1
    assert genome.distance((3, 1, 2), "prefix_reversal") == 2
    levels = genome.bfs_levels("prefix_reversal", 4, 10)
    for d, level in enumerate(levels):
        for p in level:
            assert genome.distance(p, "prefix_reversal") == d


def test_blowup_cap():
    with pytest.raises(genome.BlowupError):
        genome.ball_pegs("cut_paste", 2, cap=5)
