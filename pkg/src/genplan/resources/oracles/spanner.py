def get_plan(objects, init, goal):
    link = {a[1]: a[2] for a in init if a[0] == "link"}
    man, here = next((a[1], a[2]) for a in init if a[0] == "at")
    spanners_at = {}
    for a in init:
        if a[0] == "spanner-at":
            spanners_at.setdefault(a[2], []).append(a[1])
    loose = {a[1] for a in init if a[0] == "loose"}
    nuts_at = {}
    for a in init:
        if a[0] == "nut-at" and a[1] in loose:
            nuts_at.setdefault(a[2], []).append(a[1])

    # Walk the one-way chain once, picking up every spanner and tightening
    # every nut encountered along the way.
    plan = []
    carried = []
    while True:
        for s in sorted(spanners_at.get(here, [])):
            plan.append(f"(pickup_spanner {here} {s} {man})")
            carried.append(s)
        for n in sorted(nuts_at.get(here, [])):
            s = carried.pop()
            plan.append(f"(tighten_nut {here} {s} {man} {n})")
        if here not in link:
            break
        nxt = link[here]
        plan.append(f"(walk {here} {nxt} {man})")
        here = nxt
    return plan
