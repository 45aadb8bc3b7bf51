"""Random design-model generator shared by the property tests."""

import random

from hypothesis import strategies as st

from flawdetect.model import (
    PRIVATE,
    PUBLIC,
    AttributeEntity,
    ClassEntity,
    DesignModel,
    MethodEntity,
    attr_id,
    class_id,
    method_id,
)


def random_model(rng: random.Random, max_classes=8, max_methods=5, max_attrs=4) -> DesignModel:
    n = rng.randint(0, max_classes)
    names = [f"K{i}" for i in range(n)]
    externals = [f"Ext{i}" for i in range(rng.randint(0, 2))]
    # superclasses only point backwards (or to an external), so no cycles
    supers = {}
    for i, name in enumerate(names):
        choices = [None, None] + names[:i] + externals
        supers[name] = rng.choice(choices)
    attrs = {name: [attr_id(name, f"a{j}") for j in range(rng.randint(0, max_attrs))] for name in names}
    methods = {name: [method_id(name, f"m{j}") for j in range(rng.randint(0, max_methods))] for name in names}

    all_methods = [m for ms in methods.values() for m in ms]
    all_attrs = [a for as_ in attrs.values() for a in as_]
    opaque_methods = [method_id(x, f"op{j}") for x in externals for j in range(2)]
    opaque_attrs = [attr_id(x, f"f{j}") for x in externals for j in range(2)]
    call_pool = all_methods + opaque_methods
    access_pool = all_attrs + opaque_attrs

    entities = [ClassEntity(class_id(x), x, is_external=True) for x in externals]
    for name in names:
        sup = supers[name]
        entities.append(ClassEntity(
            class_id(name), name,
            superclass=class_id(sup) if sup else None,
            attributes=attrs[name], methods=methods[name],
        ))
        for a in attrs[name]:
            entities.append(AttributeEntity(a, a.rsplit(".", 1)[1], class_id(name), rng.choice([PUBLIC, PRIVATE])))
        for m in methods[name]:
            calls = rng.sample(call_pool, rng.randint(0, min(3, len(call_pool))))
            own = attrs[name]
            # bias towards own attributes so cohesion metrics see shared accesses
            pool = own * 3 + access_pool
            accesses = set(rng.sample(pool, rng.randint(0, min(4, len(pool)))))
            accessor = rng.choice(own) if own and rng.random() < 0.3 else None
            entities.append(MethodEntity(
                m, m.rsplit(".", 1)[1], class_id(name),
                visibility=rng.choice([PUBLIC, PRIVATE]),
                cyclomatic=rng.randint(1, 8),
                statement_count=rng.randint(0, 30),
                calls=calls, accesses=accesses, accessor_of=accessor,
            ))
    return DesignModel.from_entities(entities)


models = st.randoms(use_true_random=False).map(random_model)
