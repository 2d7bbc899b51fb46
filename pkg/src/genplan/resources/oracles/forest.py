from collections import deque


def get_plan(objects, init, goal):
    adjacent = {}
    for a in init:
        if a[0] == "adjacent":
            adjacent.setdefault(a[1], []).append(a[2])
    water = {a[1] for a in init if a[0] == "iswater"}
    hills = {a[1] for a in init if a[0] == "ishill"}
    trail = {a[1] for a in init if a[0] == "ontrail"}
    start = next(a[1] for a in init if a[0] == "at")
    target = next(a[1] for a in goal if a[0] == "at")
    # Follow the marked trail: search only trail cells.
    allowed = trail | {start, target}
    prev = {start: None}
    queue = deque([start])
    while queue:
        cell = queue.popleft()
        if cell == target:
            break
        for nxt in sorted(adjacent.get(cell, [])):
            if nxt in prev or nxt in water or nxt not in allowed:
                continue
            prev[nxt] = cell
            queue.append(nxt)
    if target not in prev:
        return []
    path = []
    cell = target
    while cell is not None:
        path.append(cell)
        cell = prev[cell]
    path.reverse()
    plan = []
    for here, there in zip(path, path[1:]):
        op = "climb" if there in hills else "walk"
        plan.append(f"({op} {here} {there})")
    return plan
