def get_plan(objects, init, goal):
    ball_at = {a[1]: a[2] for a in init if a[0] == "at"}
    robby = next(a[1] for a in init if a[0] == "at-robby")
    gripper = sorted(a[1] for a in init if a[0] == "gripper")[0]
    plan = []
    cur = robby
    for ball, dest in sorted((a[1], a[2]) for a in goal if a[0] == "at"):
        src = ball_at[ball]
        if src == dest:
            continue
        if cur != src:
            plan.append(f"(move {cur} {src})")
            cur = src
        plan.append(f"(pick {ball} {src} {gripper})")
        plan.append(f"(move {cur} {dest})")
        cur = dest
        plan.append(f"(drop {ball} {dest} {gripper})")
    return plan
