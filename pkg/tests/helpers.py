import numpy as np

from fusionkit.ring import FusionRing


def relabel(ring: FusionRing, perm) -> FusionRing:
    """Ring with basic element i renamed perm[i]; perm[0] must be 0."""
    perm = list(perm)
    t = np.zeros_like(ring.tensor)
    p = np.array(perm)
    t[np.ix_(p, p, p)] = ring.tensor
    dual = [0] * ring.rank
    for i in range(ring.rank):
        dual[perm[i]] = perm[ring.dual[i]]
    return FusionRing.from_tensor(t, dual)


def group_center(g):
    return [a for a in range(g.order) if all(g.mul(a, b) == g.mul(b, a) for b in range(g.order))]
