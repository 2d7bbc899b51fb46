def get_plan(objects, init, goal):
    car_at = {a[1]: a[2] for a in init if a[0] == "at"}
    ferry = next(a[1] for a in init if a[0] == "at-ferry")
    plan = []
    cur = ferry
    for car, dest in sorted((a[1], a[2]) for a in goal if a[0] == "at"):
        src = car_at[car]
        if src == dest:
            continue
        if cur != src:
            plan.append(f"(sail {cur} {src})")
            cur = src
        plan.append(f"(board {car} {src})")
        plan.append(f"(sail {cur} {dest})")
        cur = dest
        plan.append(f"(debark {car} {dest})")
    return plan
