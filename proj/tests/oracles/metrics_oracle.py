"""Reference values for the metrics tests, computed by brute force.

Run: python3 tests/oracles/metrics_oracle.py
The printed numbers are frozen into tests/test_metrics.cpp.
"""
from collections import Counter
from itertools import product


def ngrams(toks, n):
    return Counter(tuple(toks[i:i + n]) for i in range(len(toks) - n + 1))


def f1(p, r):
    return 0.0 if p + r == 0 else 2 * p * r / (p + r)


def sari(src, ref, pred):
    if ref == pred:
        return 1.0
    keep = dele = add = 0.0
    for n in range(1, 5):
        s, c, r = ngrams(src, n), ngrams(pred, n), ngrams(ref, n)
        k = s & c
        kg = k & r
        ka = s & r
        kp = sum(kg[g] / k[g] for g in k) / len(k) if k else 0.0
        kr = sum(kg[g] / ka[g] for g in ka) / len(ka) if ka else 0.0
        keep += f1(kp, kr)
        d = s - c
        dg = d - r
        dele += sum(dg[g] / d[g] for g in d) / len(d) if d else 0.0
        a = set(c) - set(s)
        aa = set(r) - set(s)
        ap = len(a & aa) / len(a) if a else 0.0
        ar = len(a & aa) / len(aa) if aa else 0.0
        add += f1(ap, ar)
    return (keep / 4 + dele / 4 + add / 4) / 3


def norm(tok):
    return "#REF" if tok.startswith("#") and len(tok) > 1 else tok.lower()


def align(u, v):
    if not u and not v:
        return 1.0
    a, b = Counter(map(norm, u)), Counter(map(norm, v))
    return 2 * sum((a & b).values()) / (len(u) + len(v))


def graph(text):
    steps = [s.split() for s in text.split(";")]
    edges = set()
    for i, s in enumerate(steps):
        for t in s:
            if t.startswith("#") and t[1:].isdigit():
                edges.add((int(t[1:]) - 1, i))
    return steps, edges


def crossings(pairs):
    return sum(1 for (u1, v1) in pairs for (u2, v2) in pairs
               if u1 < u2 and v1 > v2)


def relation_cost(g1, g2, rel):
    """rel: frozenset of (u, v). Returns None if the relation is not a
    disjoint union of stars (1:1, 1:n split, n:1 merge)."""
    (n1, e1), (n2, e2) = g1, g2
    out = {u: sorted(v for (x, v) in rel if x == u) for u in range(len(n1))}
    inn = {v: sorted(u for (u, y) in rel if y == v) for v in range(len(n2))}
    for u, vs in out.items():
        if len(vs) > 1 and any(len(inn[v]) > 1 for v in vs):
            return None
    cost = sum(1 for u in out if not out[u]) + sum(1 for v in inn if not inn[v])
    comp_a, comp_b = {}, {}
    seen = set()
    cid = 0
    for u in range(len(n1)):
        if not out[u] or u in seen:
            continue
        if len(out[u]) > 1:
            left, right = [u], out[u]
        else:
            left, right = inn[out[u][0]], out[u]
        seen.update(left)
        for x in left:
            comp_a[x] = cid
        for y in right:
            comp_b[y] = cid
        cid += 1
        if len(left) == 1 and len(right) == 1:
            cost += 1 - align(n1[left[0]], n2[right[0]])
        elif len(right) == 1:
            cost += len(left) * (1 - align(n2[right[0]], sum((n1[x] for x in left), [])))
        else:
            cost += len(right) * (1 - align(n1[left[0]], sum((n2[y] for y in right), [])))
    ida = lambda x: comp_a.get(x, ("a", x))
    idb = lambda y: comp_b.get(y, ("b", y))
    c1 = {(ida(x), ida(y)) for (x, y) in e1 if ida(x) != ida(y)}
    c2 = {(idb(x), idb(y)) for (x, y) in e2 if idb(x) != idb(y)}
    cost += len(c1 ^ c2)
    cost += crossings(list(rel))
    return cost


def ged_brute(g1, g2, merges):
    n1, n2 = len(g1[0]), len(g2[0])
    best = float("inf")
    subsets = [frozenset(v for v in range(n2) if m >> v & 1) for m in range(1 << n2)]
    for choice in product(subsets, repeat=n1):
        rel = frozenset((u, v) for u, vs in enumerate(choice) for v in vs)
        if not merges:
            if any(len(vs) > 1 for vs in choice):
                continue
            if len({v for vs in choice for v in vs}) != sum(len(vs) for vs in choice):
                continue
        c = relation_cost(g1, g2, rel)
        if c is not None:
            best = min(best, c)
    return best


if __name__ == "__main__":
    print("sari(a b | a c | a b) =", repr(sari("a b".split(), "a c".split(), "a b".split())))
    d1 = "flights ; #1 from atlanta ; #2 to baltimore ; #3 on thursday ; #4 from any airline"
    d2 = "flights from atlanta to baltimore ; #1 on any airline ; #2 on thursday"
    g1, g2 = graph(d1), graph(d2)
    cost = ged_brute(g1, g2, merges=False)
    size = max(len(g1[0]) + len(g1[1]), len(g2[0]) + len(g2[1]))
    print("flights pair ged_cost =", repr(cost))
    print("flights pair ged =", repr(min(1.0, cost / size)))
    print("flights pair ged_plus =", repr(ged_brute(g1, g2, merges=True)))
    print("single vs pair ged =", repr(ged_brute(graph("a"), graph("a b"), False) / 1))
