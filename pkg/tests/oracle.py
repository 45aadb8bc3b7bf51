"""Brute-force reference metrics.

Deliberately written against the raw entity mappings only, scanning every
entity instead of using the model's query helpers, so it can serve as an
independent check of flawdetect.metrics.
"""

from fractions import Fraction


def _owner_from_id(entity_id):
    qualname = entity_id.split(":", 1)[1]
    return "class:" + qualname.rsplit(".", 1)[0]


def _methods_of(model, c):
    return [m for m in model.methods.values() if m.owner == c]


def _attrs_of(model, c):
    return [a for a in model.attributes.values() if a.owner == c]


def _parents(model, c):
    out = []
    cur = model.classes[c].superclass
    while cur is not None:
        out.append(cur)
        cur = model.classes[cur].superclass
    return out


def cc(model, m):
    return model.methods[m].cyclomatic


def mloc(model, m):
    return model.methods[m].statement_count


def nopa(model, c):
    return len([a for a in _attrs_of(model, c) if a.visibility == "public"])


def wmc(model, c):
    total = 0
    for m in _methods_of(model, c):
        total += m.cyclomatic
    return total


def dit(model, c):
    return len(_parents(model, c))


def noc(model, c):
    return len([k for k in model.classes.values() if k.superclass == c])


def cbo(model, c):
    owners = set()
    for m in _methods_of(model, c):
        for t in list(m.calls) + list(m.accesses):
            owners.add(_owner_from_id(t))
    owners.discard(c)
    return len(owners)


def rfc(model, c):
    response = set()
    for m in _methods_of(model, c):
        response.add(m.id)
        response.update(m.calls)
    return len(response)


def _pairs(model, c):
    own = {a.id for a in _attrs_of(model, c)}
    ms = _methods_of(model, c)
    for i in range(len(ms)):
        for j in range(i + 1, len(ms)):
            shared = set(ms[i].accesses) & set(ms[j].accesses) & own
            yield len(shared) > 0


def lcom(model, c):
    pairs = list(_pairs(model, c))
    p = pairs.count(False)
    q = pairs.count(True)
    return p - q if p > q else 0


def tcc(model, c):
    pairs = list(_pairs(model, c))
    if not pairs:
        return Fraction(1)
    return Fraction(pairs.count(True), len(pairs))


def atfd(model, c):
    related = {c} | set(_parents(model, c))
    foreign = set()
    for m in _methods_of(model, c):
        for a in m.accesses:
            foreign.add(_owner_from_id(a))
        for callee in m.calls:
            if callee in model.methods and model.methods[callee].accessor_of:
                foreign.add(model.methods[callee].owner)
    return len([k for k in foreign if k not in related])


ORACLES = {
    "CC": cc, "MLOC": mloc, "NOPA": nopa, "WMC": wmc, "DIT": dit, "NOC": noc,
    "CBO": cbo, "RFC": rfc, "LCOM": lcom, "TCC": tcc, "ATFD": atfd,
}


def reference_table(model, metric_name):
    fn = ORACLES[metric_name]
    if metric_name in ("CC", "MLOC"):
        keys = list(model.methods)
    else:
        keys = [k for k, e in model.classes.items() if not e.is_external]
    return {k: fn(model, k) for k in keys}
