"""Random solution builders shared by the test modules."""

from fractions import Fraction

from robustflow import PiecewiseConstantFlow, Triple, TripleSolution, enumerate_paths

RATES = (Fraction(1), Fraction(1, 2), Fraction(2), Fraction(1, 3))


def random_triples(rng, inst, max_triples=4):
    paths = enumerate_paths(inst)
    if not paths:
        return TripleSolution()
    out = []
    for _ in range(rng.randint(0, max_triples)):
        a = rng.randint(0, inst.T - 1)
        b = rng.randint(a + 1, inst.T)
        out.append(Triple(rng.choice(paths), rng.choice(RATES), a, b))
    return TripleSolution(out)


def random_pcf(rng, inst, max_paths=3, max_pieces=4, denominator=3):
    """Random piecewise-constant rates with rational breakpoints inside ``[0, T)``."""
    paths = enumerate_paths(inst)
    segments = {}
    for p in rng.sample(paths, min(len(paths), rng.randint(1, max_paths))):
        grid = range(0, inst.T * denominator)
        points = sorted(rng.sample(grid, min(len(grid), rng.randint(1, max_pieces))))
        segs = [(Fraction(x, denominator), rng.choice((0,) + RATES)) for x in points]
        segments[p] = segs
    return PiecewiseConstantFlow(segments)
