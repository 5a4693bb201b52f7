"""Pure-Python homomorphism-counting kernels.

Fallback for the compiled module of the same interface.  Both enumerate all
relator instances by plain nested loops over a flat Cayley table, carrying
the partial relator product down the recursion.
"""


def hom_count_orientable(cayley, inverse, order, identity, genus):
    """Number of 2g-tuples (a1,b1,..,ag,bg) with [a1,b1]..[ag,bg] = 1."""
    if genus == 0:
        return 1
    n = order

    def rec(pairs_left, prod):
        total = 0
        if pairs_left == 1:
            for a in range(n):
                ia = inverse[a]
                pa = cayley[prod * n + a]
                for b in range(n):
                    if cayley[cayley[cayley[pa * n + b] * n + ia] * n + inverse[b]] == identity:
                        total += 1
            return total
        for a in range(n):
            ia = inverse[a]
            pa = cayley[prod * n + a]
            for b in range(n):
                total += rec(
                    pairs_left - 1,
                    cayley[cayley[cayley[pa * n + b] * n + ia] * n + inverse[b]])
        return total

    return rec(genus, identity)


def hom_count_nonorientable(cayley, inverse, order, identity, crosscaps):
    """Number of k-tuples (a1,..,ak) with a1^2 .. ak^2 = 1."""
    if crosscaps == 0:
        return 1
    n = order
    squares = [cayley[a * n + a] for a in range(n)]

    def rec(left, prod):
        if left == 1:
            target = inverse[prod]
            return sum(1 for a in range(n) if squares[a] == target)
        return sum(rec(left - 1, cayley[prod * n + squares[a]]) for a in range(n))

    return rec(crosscaps, identity)
