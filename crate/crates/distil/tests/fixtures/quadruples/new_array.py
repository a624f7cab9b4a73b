def squares_total(n: int) -> int:
    squares: list[int] = [0] * n
    for i in range(0, n):
        squares[i] = i * i
    total: int = 0
    for s in squares:
        total += s
    return total
