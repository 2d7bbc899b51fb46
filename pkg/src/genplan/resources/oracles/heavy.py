def get_plan(objects, init, goal):
    items = sorted(name for name, _ in objects)
    heavier = [(a[1], a[2]) for a in init if a[0] == "heavier"]

    # Topological order of the heavier relation, heaviest first. Works for
    # the full pairwise order and for covering pairs alike.
    outgoing = {i: set() for i in items}
    indegree = {i: 0 for i in items}
    for heavy, light in heavier:
        if light not in outgoing[heavy]:
            outgoing[heavy].add(light)
            indegree[light] += 1
    ready = sorted(i for i in items if indegree[i] == 0)
    order = []
    while ready:
        item = ready.pop(0)
        order.append(item)
        for nxt in sorted(outgoing[item]):
            indegree[nxt] -= 1
            if indegree[nxt] == 0:
                ready.append(nxt)
        ready.sort()

    if not order:
        return []
    plan = [f"(put-first {order[0]})"]
    for prev, item in zip(order, order[1:]):
        plan.append(f"(stack {item} {prev})")
    return plan
