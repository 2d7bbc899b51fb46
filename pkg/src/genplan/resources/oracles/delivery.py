def get_plan(objects, init, goal):
    home = next(a[1] for a in init if a[0] == "ishomebase")
    start = next(a[1] for a in init if a[0] == "at")
    unpacked = sorted(a[1] for a in init if a[0] == "unpacked")
    already = {a[1] for a in init if a[0] == "satisfied"}
    targets = sorted(a[1] for a in goal if a[0] == "satisfied" and a[1] not in already)
    plan = []
    cur = start
    if not targets:
        return plan
    if cur != home:
        plan.append(f"(move {cur} {home})")
        cur = home
    papers = unpacked[: len(targets)]
    for p in papers:
        plan.append(f"(pick-up {p} {home})")
    for p, loc in zip(papers, targets):
        if cur != loc:
            plan.append(f"(move {cur} {loc})")
            cur = loc
        plan.append(f"(deliver {p} {loc})")
    return plan
