def even_sum(n: int) -> int:
    total: int = 0
    for i in range(0, n):
        if i % 2 == 1:
            continue
        total += i
    return total
