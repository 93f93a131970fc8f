import itertools

import pytest


def naive_contains(p, q):
    # q occurs in p: some subsequence of p is order-isomorphic to q
    k = len(q)
    for idx in itertools.combinations(range(len(p)), k):
        sub = [p[i] for i in idx]
        if all((sub[a] < sub[b]) == (q[a] < q[b]) for a in range(k) for b in range(a + 1, k)):
            return True
    return False


def naive_count(p, q):
    k = len(q)
    total = 0
    for idx in itertools.combinations(range(len(p)), k):
        sub = [p[i] for i in idx]
        if all((sub[a] < sub[b]) == (q[a] < q[b]) for a in range(k) for b in range(a + 1, k)):
            total += 1
    return total


def naive_class(basis, n):
    return [p for p in itertools.permutations(range(1, n + 1))
            if not any(naive_contains(p, b) for b in basis)]


@pytest.fixture
def brute():
    return type("Brute", (), {"contains": staticmethod(naive_contains),
                              "count": staticmethod(naive_count),
                              "klass": staticmethod(naive_class)})


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for r in sorted(RESULTS, key=lambda r: r.number):
        terminalreporter.write_line(r.line())
        for f in r.failures:
            terminalreporter.write_line(f"      {f}")
