def every_third(limit: int) -> int:
    count: int = 0
    for i in range(0, limit, 3):
        count += 1
    return count
