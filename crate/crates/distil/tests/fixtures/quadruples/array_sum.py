def array_sum(values: list[int], n: int) -> int:
    total: int = 0
    for i in range(0, n):
        total = total + values[i]
    return total
