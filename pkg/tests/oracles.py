"""Second implementations used to cross-check the library.

Each one is written in the most literal way possible and shares no code
with the package beyond its data types.
"""
import itertools

from freesem.syntax import And, Bot, Imp, Or, Top, Var


def naive_coend(T):
    """Partition of the diagonal elements, by relabelling to the least
    reachable label until nothing changes."""
    D = T.base
    elems = [(d, t) for d in D.objects for t in range(T.size(d, d))]
    label = {e: e for e in elems}
    edges = []
    for p in D.morphisms:
        d, d1 = D.dom[p], D.cod[p]
        for t in range(T.size(d1, d)):
            edges.append(((d, T.left(p, d, t)), (d1, T.right(d1, p, t))))
    changed = True
    while changed:
        changed = False
        for a, b in edges:
            low = min(label[a], label[b])
            for e in (a, b):
                if label[e] != low:
                    label[e] = low
                    changed = True
        for e in elems:
            if label[label[e]] != label[e]:
                label[e] = label[label[e]]
                changed = True
    groups = {}
    for e in elems:
        groups.setdefault(label[e], set()).add(e)
    return sorted((frozenset(g) for g in groups.values()), key=min)


def brute_end(T):
    D = T.base
    diag = [range(T.size(d, d)) for d in D.objects]
    out = []
    for fam in itertools.product(*diag):
        if all(T.right(D.dom[p], p, fam[D.dom[p]]) == T.left(p, D.cod[p], fam[D.cod[p]])
               for p in D.morphisms):
            out.append(fam)
    return out


def brute_nat_count(F, G):
    """Natural transformations between presheaves by filtering all families."""
    C = F.base
    per_object = [list(itertools.product(range(G.sizes[x]), repeat=F.sizes[x]))
                  for x in C.objects]
    count = 0
    for comps in itertools.product(*per_object):
        ok = True
        for u in C.morphisms:
            x1, x = C.dom[u], C.cod[u]
            for s in range(F.sizes[x]):
                if G.maps[u][comps[x][s]] != comps[x1][F.maps[u][s]]:
                    ok = False
                    break
            if not ok:
                break
        count += ok
    return count


def iterative_fold(f, var, top, bot, ops):
    """Post-order evaluation with an explicit stack."""
    stack = [(f, False)]
    values = []
    while stack:
        node, expanded = stack.pop()
        if isinstance(node, Var):
            values.append(var(node.name))
        elif isinstance(node, Top):
            values.append(top)
        elif isinstance(node, Bot):
            values.append(bot)
        elif expanded:
            r = values.pop()
            l = values.pop()
            values.append(ops[type(node)](l, r))
        else:
            stack.append((node, True))
            stack.append((node.right, False))
            stack.append((node.left, False))
    (result,) = values
    return result


def set_conv(size, triples, f, g):
    return frozenset(x for (x, a, b) in triples if a in f and b in g)


def set_left_residual(size, triples, f, g):
    return frozenset(a for a in range(size)
                     if all(x in g for (x, a1, b) in triples if a1 == a and b in f))


def set_right_residual(size, triples, f, g):
    return frozenset(b for b in range(size)
                     if all(x in g for (x, a, b1) in triples if b1 == b and a in f))


def set_kripke(size, leq, v, phi):
    """Forcing clauses written out over sets, one world at a time."""
    S = range(size)

    def force(p, psi):
        if isinstance(psi, Var):
            return p in v[psi.name]
        if isinstance(psi, Top):
            return True
        if isinstance(psi, Bot):
            return False
        if isinstance(psi, And):
            return force(p, psi.left) and force(p, psi.right)
        if isinstance(psi, Or):
            return force(p, psi.left) or force(p, psi.right)
        if isinstance(psi, Imp):
            return all(not force(q, psi.left) or force(q, psi.right)
                       for q in S if (p, q) in leq)
        raise TypeError(psi)

    return frozenset(p for p in S if force(p, phi))


def boolean_value(valuation, phi):
    """Two-valued truth table semantics."""
    if isinstance(phi, Var):
        return valuation[phi.name]
    if isinstance(phi, Top):
        return True
    if isinstance(phi, Bot):
        return False
    l, r = boolean_value(valuation, phi.left), boolean_value(valuation, phi.right)
    if isinstance(phi, And):
        return l and r
    if isinstance(phi, Or):
        return l or r
    if isinstance(phi, Imp):
        return (not l) or r
    raise TypeError(phi)


def loop_consequence(matrix, gamma, psi):
    """Premise and conclusion indices against a list-of-rows matrix."""
    for row in matrix:
        if all(row[j] for j in gamma) and not row[psi]:
            return False
    return True


