def get_plan(objects, init, goal):
    above = {(a[1], a[2]) for a in init if a[0] == "above"}
    origin = {a[1]: a[2] for a in init if a[0] == "origin"}
    destin = {a[1]: a[2] for a in init if a[0] == "destin"}
    served = {a[1] for a in init if a[0] == "served"}

    # Buildings exist only implicitly: floors of one building are exactly
    # the floors connected through the above relation.
    neighbors = {}
    for low, high in above:
        neighbors.setdefault(low, set()).add(high)
        neighbors.setdefault(high, set()).add(low)
    building = {}
    for floor in sorted(neighbors):
        if floor in building:
            continue
        stack = [floor]
        while stack:
            f = stack.pop()
            if f in building:
                continue
            building[f] = floor
            stack.extend(neighbors.get(f, ()))

    lift_floor = {}
    for a in sorted(init):
        if a[0] == "lift-at":
            lift_floor[building.get(a[1], a[1])] = a[1]

    plan = []
    for p in sorted(origin):
        if p in served:
            continue
        o, d = origin[p], destin[p]
        b = building.get(o, o)
        cur = lift_floor[b]
        if cur != o:
            op = "up" if (cur, o) in above else "down"
            plan.append(f"({op} {cur} {o})")
        plan.append(f"(board {o} {p})")
        if o != d:
            op = "up" if (o, d) in above else "down"
            plan.append(f"({op} {o} {d})")
        plan.append(f"(depart {d} {p})")
        lift_floor[b] = d
    return plan
